//! Nabla difference, fractional sum and Riemann-Liouville fractional
//! difference operators on integer grids, plus the closed-form power rules.
//!
//! Conventions fixed here and relied on everywhere else:
//!
//! * grid functions live on contiguous integer grids with an explicit base;
//! * every nabla sum based at `a` is extended by zero for arguments `t ≤ a`
//!   (the empty-sum convention), and outer integer differences may read
//!   those zeros — this is what makes the composition and direct forms of
//!   the fractional difference agree on all of `N_{a+1}`;
//! * convolution weights are accumulated from `s = t` down to `a + 1` with
//!   compensated summation, so results are deterministic.

use crate::error::{Error, Result};
use crate::special::rising;

/// The integer interval pair `(a, b)` defining the grids `N^b_{a+1}` and
/// `N^b_{a+2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Domain {
    a: i64,
    b: i64,
}

impl Domain {
    /// Requires `b − a ≥ 2` so that `N^b_{a+2}` is nonempty. Spectral
    /// operations additionally need `b − a ≥ 3` and check it themselves.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b - a < 2 {
            return Err(Error::DomainTooSmall {
                need: 2,
                got: b - a,
            });
        }
        Ok(Domain { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Number of points in `N^b_{a+1}`.
    pub fn n_interior(&self) -> usize {
        (self.b - self.a) as usize
    }
}

/// Fractional order restricted to the open interval (1, 2), the standing
/// assumption of the focal boundary value problems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    alpha: f64,
}

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(Error::InvalidOrder { alpha });
        }
        Ok(FracOrder { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// A real-valued function on a contiguous integer grid.
///
/// The value at integer `t` is `values[t − base]`. Reads outside the grid
/// yield `None`; the operators in this module additionally treat everything
/// at or below their base point `a` as zero (extension by zero).
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    base: i64,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(base: i64, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParams(
                "grid function needs at least one point".into(),
            ));
        }
        Ok(GridFunction { base, values })
    }

    /// Tabulate `f` on `{base, …, base + len − 1}`.
    pub fn from_fn(base: i64, len: usize, mut f: impl FnMut(i64) -> f64) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidParams(
                "grid function needs at least one point".into(),
            ));
        }
        Ok(GridFunction {
            base,
            values: (0..len).map(|i| f(base + i as i64)).collect(),
        })
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    /// Last grid point.
    pub fn end(&self) -> i64 {
        self.base + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at `t`, or `None` outside the grid.
    pub fn get(&self, t: i64) -> Option<f64> {
        if t < self.base || t > self.end() {
            None
        } else {
            Some(self.values[(t - self.base) as usize])
        }
    }

    /// Iterate over `(t, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.base + i as i64, v))
    }
}

/// Neumaier-compensated accumulator; summation order still matters to the
/// result, which is why operators fix it explicitly.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

pub(crate) fn compensated_sum(it: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Accumulator::default();
    for x in it {
        acc.add(x);
    }
    acc.total()
}

/// Convolution weights of the fractional sum: `v_m = (m+1)^{ν−1} / Γ(ν)
/// = Γ(m+ν)/(Γ(m+1) Γ(ν))`, by the exact rational recurrence.
pub(crate) fn sum_weights(nu: f64, len: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(len);
    if len == 0 {
        return w;
    }
    w.push(1.0);
    for m in 1..len {
        let m = m as f64;
        let next = w[m as usize - 1] * (m - 1.0 + nu) / m;
        w.push(next);
    }
    w
}

/// Convolution weights of the direct fractional difference:
/// `w_m = (m+1)^{−ν−1} / Γ(−ν) = Γ(m−ν)/(Γ(m+1) Γ(−ν))`.
pub(crate) fn diff_weights(nu: f64, len: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(len);
    if len == 0 {
        return w;
    }
    w.push(1.0);
    for m in 1..len {
        let m = m as f64;
        let next = w[m as usize - 1] * (m - 1.0 - nu) / m;
        w.push(next);
    }
    w
}

/// `N`-th order backward difference. The result is based at
/// `u.base + order` and is `order` points shorter.
pub fn nabla_diff(u: &GridFunction, order: u32) -> Result<GridFunction> {
    if order == 0 {
        return Err(Error::InvalidParams(
            "nabla order must be a positive integer".into(),
        ));
    }
    if u.len() < order as usize + 1 {
        return Err(Error::DomainTooSmall {
            need: order as i64 + 1,
            got: u.len() as i64,
        });
    }
    let mut vals = u.values.clone();
    for _ in 0..order {
        vals = vals.windows(2).map(|w| w[1] - w[0]).collect();
    }
    GridFunction::new(u.base + i64::from(order), vals)
}

/// One backward difference with extension by zero below the base; keeps the
/// base and length. Used by the composition form of the fractional
/// difference.
fn nabla_extended(u: &GridFunction) -> GridFunction {
    let mut vals = Vec::with_capacity(u.len());
    let mut prev = 0.0;
    for &v in &u.values {
        vals.push(v - prev);
        prev = v;
    }
    GridFunction {
        base: u.base,
        values: vals,
    }
}

/// Nabla fractional sum `∇^{−ν}_a u` of order `ν ≥ 0` based at `a`.
///
/// `u` must be based at `a + 1`; the result lives on the same grid. Order
/// zero is the identity.
pub fn frac_sum(u: &GridFunction, nu: f64, a: i64) -> Result<GridFunction> {
    if u.base != a + 1 {
        return Err(Error::BaseMismatch {
            expected: a + 1,
            got: u.base,
        });
    }
    if !(nu >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "fractional sum order must be >= 0, got {nu}"
        )));
    }
    if nu == 0.0 {
        return Ok(u.clone());
    }
    let w = sum_weights(nu, u.len());
    convolve(u, &w)
}

/// Which form of the fractional difference to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FracDiffMethod {
    /// `∇^N ∇^{−(N−ν)}_a u` with `N − 1 < ν ≤ N`, the defining composition.
    Composition,
    /// Single convolution with the order `−ν−1` rising kernel; undefined at
    /// positive integer orders.
    Direct,
}

/// Riemann-Liouville nabla fractional difference `∇^ν_a u`, `ν > 0`.
///
/// `u` must be based at `a + 1`. The result is based at `a + 1` as well:
/// under the extension-by-zero convention both methods are defined (and
/// agree) on all of `N_{a+1}`. Integer orders under the composition method
/// reduce to repeated extended backward differences.
pub fn frac_diff(
    u: &GridFunction,
    nu: f64,
    a: i64,
    method: FracDiffMethod,
) -> Result<GridFunction> {
    if u.base != a + 1 {
        return Err(Error::BaseMismatch {
            expected: a + 1,
            got: u.base,
        });
    }
    if !(nu > 0.0) {
        return Err(Error::InvalidParams(format!(
            "fractional difference order must be > 0, got {nu}"
        )));
    }
    let integer_order = (nu - nu.round()).abs() <= crate::special::POLE_TOL && nu.round() >= 1.0;
    match method {
        FracDiffMethod::Direct => {
            if integer_order {
                return Err(Error::IntegerOrderWithDirectMethod { nu });
            }
            let w = diff_weights(nu, u.len());
            convolve(u, &w)
        }
        FracDiffMethod::Composition => {
            if integer_order {
                let mut v = u.clone();
                for _ in 0..nu.round() as u32 {
                    v = nabla_extended(&v);
                }
                return Ok(v);
            }
            let n = nu.floor() as u32 + 1;
            let mut v = frac_sum(u, f64::from(n) - nu, a)?;
            for _ in 0..n {
                v = nabla_extended(&v);
            }
            Ok(v)
        }
    }
}

/// Convolution with lag weights, summed from lag 0 upward (i.e. from
/// `s = t` down to the base) with compensation.
fn convolve(u: &GridFunction, w: &[f64]) -> Result<GridFunction> {
    let vals = (0..u.len())
        .map(|i| compensated_sum((0..=i).map(|m| w[m] * u.values[i - m])))
        .collect();
    GridFunction::new(u.base, vals)
}

/// Which power rule to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerRuleMode {
    /// `∇^{−ν}_a (t−a)^{μ} = Γ(μ+1)/Γ(μ+ν+1) · (t−a)^{μ+ν}`
    Sum,
    /// `∇^{ν}_a (t−a)^{μ} = Γ(μ+1)/Γ(μ−ν+1) · (t−a)^{μ−ν}`
    Diff,
}

/// Closed-form power rule for the rising monomial `(t−a)^{μ}`, evaluated as
/// the joint ratio `Γ(μ+1) · Γ(m+μ∓ν) / (Γ(μ∓ν+1) Γ(m))` so the gamma pole
/// conventions take their limiting values.
///
/// Under this grouping the closed form reproduces the operators everywhere
/// on `N_{a+1}` — including the kernel-mode values the factored form misses:
/// the `Diff` mode with `μ = α−1`, `ν = α` vanishes through `1/Γ(0) = 0` for
/// `t ≥ a+2`, and `μ = α−2`, `ν = α` yields `−Γ(α−1)` at `t = a+2`.
pub fn power_rule(mu: f64, nu: f64, a: i64, mode: PowerRuleMode, t: i64) -> Result<f64> {
    if t < a + 1 {
        return Err(Error::InvalidParams(format!(
            "power rule needs t >= a+1, got t={t}, a={a}"
        )));
    }
    let m = t - a;
    let r = match mode {
        PowerRuleMode::Sum => mu + nu,
        PowerRuleMode::Diff => mu - nu,
    };
    // Γ(μ+1) in the numerator: a pole here is a genuine error
    let g = crate::special::lgamma_signed(mu + 1.0)?;
    Ok(f64::from(g.sign) * g.log_abs.exp() * crate::special::rising_ratio(m, r))
}

/// Sup norm `max_t |u(t)|` over the grid.
pub fn sup_norm(u: &GridFunction) -> f64 {
    u.values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Rising monomial `(t−a)^{μ}` tabulated on `N^b_{a+1}`; the common test
/// input of the power rules and kernel modes.
pub fn monomial_grid(domain: &Domain, mu: f64) -> Result<GridFunction> {
    let a = domain.a();
    let mut vals = Vec::with_capacity(domain.n_interior());
    for t in (a + 1)..=domain.b() {
        vals.push(rising((t - a) as f64, mu)?);
    }
    GridFunction::new(a + 1, vals)
}
