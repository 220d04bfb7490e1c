//! Nabla Mittag-Leffler series with certified truncation, the
//! fractional-difference identity, and the characteristic functions whose
//! real zeros are the eigenvalues of the focal boundary value problems.
//!
//! The series is
//!
//! ```text
//! E_{p,α,β}(t, a) = Σ_{k≥0} p^k (t−a)^{αk+β} / Γ(αk+β+1),   |p| < 1,
//! ```
//!
//! with rising-function powers. Each term is evaluated as a single joint
//! gamma ratio `Γ(m+r)/(Γ(r+1) Γ(m))` (with `m = t−a`, `r = αk+β`) so the
//! limiting conventions apply even when `β` has been shifted below −1 by a
//! fractional difference.

use crate::calculus::{frac_diff, Domain, FracDiffMethod, GridFunction};
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::greens::FocalKind;
use crate::special::{ln_gamma_pos, rising_ratio_dd};

/// Parameters `(p, α, β)` of the nabla Mittag-Leffler series; requires
/// `|p| < 1` and `α > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    p: f64,
    alpha: f64,
    beta: f64,
}

impl MLParams {
    pub fn new(p: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(p.abs() < 1.0) {
            return Err(Error::InvalidParams(format!(
                "Mittag-Leffler needs |p| < 1, got {p}"
            )));
        }
        if !(alpha > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "Mittag-Leffler needs alpha > 0 and finite beta, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(MLParams { p, alpha, beta })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Same `p`, `α` with the order shift `β − ν` of the fractional
    /// difference identity.
    pub fn shifted(&self, nu: f64) -> Result<Self> {
        MLParams::new(self.p, self.alpha, self.beta - nu)
    }
}

/// Evaluate `E_{p,α,β}(t, a)` with remainder below `tol`.
///
/// Summation stops at the first `k ≥ 1` where the tail-ratio envelope
/// `r_k = |p| ((αk+β+m)/(αk+β+1))^α` is below 1 and the geometric tail bound
/// `|term_k| r_k / (1−r_k)` is below `tol`. The envelope dominates the true
/// term ratio and decreases towards `|p|`, so termination is guaranteed.
///
/// Terms and the running sum are carried in compensated double-double
/// arithmetic: for alternating `p` the terms can exceed the sum by many
/// orders of magnitude, and plain `f64` terms would surrender most of the
/// significand to cancellation.
pub fn ml_eval(params: &MLParams, t: i64, a: i64, tol: f64) -> Result<f64> {
    if t < a {
        return Err(Error::InvalidParams(format!(
            "Mittag-Leffler needs t >= a, got t={t}, a={a}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParams(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let m = t - a;
    let (p, alpha, beta) = (params.p, params.alpha, params.beta);
    let mut sum = Dd::default();
    let mut p_pow = Dd::ONE;
    let mut k: u64 = 0;
    loop {
        // r = αk + β, exactly
        let r = Dd::prod(alpha, k as f64).add_f64(beta);
        let rr = rising_ratio_dd(m, r);
        let term = if rr.hi.is_finite() {
            rr.mul(p_pow)
        } else {
            // the p-free factor overflows but the term itself may not:
            // fold p^k in log space (r is large and positive here)
            let rv = r.value();
            let ln_term = k as f64 * p.abs().ln() + ln_gamma_pos(m as f64 + rv)
                - ln_gamma_pos(rv + 1.0)
                - ln_gamma_pos(m as f64);
            let sign = if p < 0.0 && k & 1 == 1 { -1.0 } else { 1.0 };
            Dd::from_f64(sign * ln_term.exp())
        };
        if !term.hi.is_finite() {
            return Err(Error::InvalidParams(format!(
                "Mittag-Leffler term overflows f64 at k = {k} (t−a = {m})"
            )));
        }
        sum = sum.add(term);
        if k >= 1 {
            let rv = r.value();
            let x = rv + m as f64;
            let y = rv + 1.0;
            if x > 0.0 && y > 0.0 {
                let rk = p.abs() * (x / y).powf(alpha);
                if rk < 1.0 && term.value().abs() * rk / (1.0 - rk) < tol {
                    break;
                }
            }
        }
        p_pow = p_pow.mul_f64(p);
        k += 1;
    }
    Ok(sum.value())
}

/// Tabulate `E_{p,α,β}(·, a)` on `N^b_a`; the result is based at `a`.
pub fn ml_grid(params: &MLParams, domain: &Domain, tol: f64) -> Result<GridFunction> {
    let a = domain.a();
    let mut vals = Vec::with_capacity(domain.n_interior() + 1);
    for t in a..=domain.b() {
        vals.push(ml_eval(params, t, a, tol)?);
    }
    GridFunction::new(a, vals)
}

/// Max deviation of `∇^ν_a E_{p,α,β}` from `E_{p,α,β−ν}` over `N^b_{a+3}`.
///
/// The check starts at `a+3` because the `k = 0` series term is a kernel-mode
/// monomial whose fractional difference deviates from the closed form at the
/// left endpoint (see the `calculus` kernel-mode tests).
pub fn ml_frac_diff_deviation(
    params: &MLParams,
    nu: f64,
    domain: &Domain,
    tol: f64,
) -> Result<f64> {
    if !((nu > 0.0 && nu < 1.0) || (nu > 1.0 && nu < 2.0)) {
        return Err(Error::InvalidParams(format!(
            "deviation check needs nu in (0,1) or (1,2), got {nu}"
        )));
    }
    if domain.b() - domain.a() < 4 {
        return Err(Error::DomainTooSmall {
            need: 4,
            got: domain.b() - domain.a(),
        });
    }
    let a = domain.a();
    let grid = ml_grid(params, domain, tol)?;
    // restrict to N^b_{a+1}: the operator never reads u(a)
    let restricted = GridFunction::from_fn(a + 1, domain.n_interior(), |t| grid.get(t).unwrap())?;
    let lhs = frac_diff(&restricted, nu, a, FracDiffMethod::Direct)?;
    let shifted = params.shifted(nu)?;
    let mut dev: f64 = 0.0;
    for t in (a + 3)..=domain.b() {
        let rhs = ml_eval(&shifted, t, a, tol)?;
        dev = dev.max((lhs.get(t).unwrap() - rhs).abs());
    }
    Ok(dev)
}

/// Left-focal characteristic function
/// `Λ_l(λ) = λ E_{−λ,α,α−1}(n, 0) + E_{−λ,α,α−2}(n, 0)`.
///
/// Real zeros of `Λ_l` with `|λ| < 1` are exactly the real eigenvalues of
/// the left-focal problem on `(0, n)`; that reading needs `n ≥ 2`.
pub fn characteristic_left(lambda: f64, alpha: f64, n: i64, tol: f64) -> Result<f64> {
    if !(lambda.abs() < 1.0) {
        return Err(Error::InvalidParams(format!(
            "characteristic function needs |lambda| < 1, got {lambda}"
        )));
    }
    if n < 0 {
        return Err(Error::InvalidParams(format!(
            "characteristic function needs n >= 0, got {n}"
        )));
    }
    let e1 = ml_eval(&MLParams::new(-lambda, alpha, alpha - 1.0)?, n, 0, tol)?;
    let e2 = ml_eval(&MLParams::new(-lambda, alpha, alpha - 2.0)?, n, 0, tol)?;
    Ok(lambda * e1 + e2)
}

/// Right-focal characteristic function
/// `Λ_r(λ) = E_{−λ,α,0}(n, 0) + λ E_{−λ,α,α−1}(n, 0)`.
pub fn characteristic_right(lambda: f64, alpha: f64, n: i64, tol: f64) -> Result<f64> {
    if !(lambda.abs() < 1.0) {
        return Err(Error::InvalidParams(format!(
            "characteristic function needs |lambda| < 1, got {lambda}"
        )));
    }
    if n < 0 {
        return Err(Error::InvalidParams(format!(
            "characteristic function needs n >= 0, got {n}"
        )));
    }
    let e0 = ml_eval(&MLParams::new(-lambda, alpha, 0.0)?, n, 0, tol)?;
    let e1 = ml_eval(&MLParams::new(-lambda, alpha, alpha - 1.0)?, n, 0, tol)?;
    Ok(e0 + lambda * e1)
}

/// Zero-exclusion radius: the characteristic function of the given kind has
/// no real zeros for `|λ|` below this value.
pub fn exclusion_radius(kind: FocalKind, alpha: f64, n: i64) -> Result<f64> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::InvalidOrder { alpha });
    }
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "exclusion radius needs n >= 2, got {n}"
        )));
    }
    let nm1 = (n - 1) as f64;
    Ok(match kind {
        FocalKind::Left => (alpha - 1.0) / (nm1 * nm1),
        // Γ(α) / ((n−1) (n−1)^{α−1})
        FocalKind::Right => {
            (ln_gamma_pos(alpha) - nm1.ln() - (ln_gamma_pos(nm1 + alpha - 1.0) - ln_gamma_pos(nm1)))
                .exp()
        }
    })
}

/// Result of sampling a characteristic function on its exclusion interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroExclusionReport {
    pub kind: FocalKind,
    pub alpha: f64,
    pub n: i64,
    /// Radius of the interval certified free of real zeros.
    pub radius: f64,
    pub samples: u32,
    pub min_abs_value: f64,
    pub sign_changes: u32,
}

/// Sample the characteristic function at `samples` equispaced points of the
/// open interval `(−r, r)` and report the minimum magnitude and the number
/// of sign changes between consecutive samples.
///
/// Sample points are additionally clamped to `|λ| ≤ 0.999`, the validity
/// region of the Mittag-Leffler representation; for the admissible `n ≥ 3`
/// the radius is below 1/2, so the clamp never binds there.
pub fn zero_exclusion_scan(
    kind: FocalKind,
    alpha: f64,
    n: i64,
    samples: u32,
    tol: f64,
) -> Result<ZeroExclusionReport> {
    if n < 3 {
        return Err(Error::InvalidParams(format!(
            "zero-exclusion scan needs n >= 3, got {n}"
        )));
    }
    if samples < 3 {
        return Err(Error::InvalidParams(format!(
            "need at least 3 samples, got {samples}"
        )));
    }
    let radius = exclusion_radius(kind, alpha, n)?;
    let r_scan = radius.min(0.999);
    let step = 2.0 * r_scan / (samples as f64 + 1.0);
    let mut min_abs = f64::INFINITY;
    let mut sign_changes = 0u32;
    let mut prev: Option<f64> = None;
    for i in 0..samples {
        let lambda = -r_scan + (i as f64 + 1.0) * step;
        let v = match kind {
            FocalKind::Left => characteristic_left(lambda, alpha, n, tol)?,
            FocalKind::Right => characteristic_right(lambda, alpha, n, tol)?,
        };
        min_abs = min_abs.min(v.abs());
        if let Some(p) = prev {
            if p * v < 0.0 {
                sign_changes += 1;
            }
        }
        prev = Some(v);
    }
    Ok(ZeroExclusionReport {
        kind,
        alpha,
        n,
        radius,
        samples,
        min_abs_value: min_abs,
        sign_changes,
    })
}
