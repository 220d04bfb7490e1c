//! Closed-form Green's kernels of the left- and right-focal boundary value
//! problems, with their proved extremal quantities.
//!
//! Kernels are materialized densely over `t ∈ N^b_{a+1}`, `s ∈ N^{b+1}_{a+2}`.
//! The extra column `s = b+1` carries the upper-branch value (for the right
//! kernel the row maximum `G_r(t, t+1)`; for the left kernel it is
//! identically zero), so scans see the attained extrema while the Green
//! representation itself only ever sums over `s ∈ N^b_{a+2}`.
//!
//! Each entry is assembled from shared factors evaluated once per row or
//! column in log space, which makes the structural zeros exact: the left
//! kernel's `t = b` row and the right kernel's `t = a+1` row and `s = a+2`
//! column cancel bitwise rather than to roundoff.

use crate::calculus::Domain;
use crate::error::{Error, Result};
use crate::special::ln_gamma_pos;

/// Which focal boundary value problem a kernel (or bound, or scan) refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FocalKind {
    /// `∇^{α−1}u(a+1) = 0`, `u(b) = 0`.
    Left,
    /// `u(a+1) = 0`, `∇^{α−1}u(b) = 0`.
    Right,
}

impl FocalKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FocalKind::Left => "left",
            FocalKind::Right => "right",
        }
    }
}

impl std::str::FromStr for FocalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(FocalKind::Left),
            "right" => Ok(FocalKind::Right),
            other => Err(Error::Parse(format!(
                "unknown kind {other:?}, expected left|right"
            ))),
        }
    }
}

/// Dense focal Green's kernel on `N^b_{a+1} × N^{b+1}_{a+2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GreensKernel {
    kind: FocalKind,
    domain: Domain,
    alpha: f64,
    /// Row-major, rows indexed by `t − (a+1)`, columns by `s − (a+2)`.
    entries: Vec<f64>,
    ncols: usize,
}

impl GreensKernel {
    pub fn kind(&self) -> FocalKind {
        self.kind
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// First row index `a + 1`.
    pub fn t_start(&self) -> i64 {
        self.domain.a() + 1
    }

    /// Last row index `b`.
    pub fn t_end(&self) -> i64 {
        self.domain.b()
    }

    /// First column index `a + 2`.
    pub fn s_start(&self) -> i64 {
        self.domain.a() + 2
    }

    /// Last column index `b + 1` (the upper-branch extension column).
    pub fn s_end(&self) -> i64 {
        self.domain.b() + 1
    }

    pub fn nrows(&self) -> usize {
        (self.t_end() - self.t_start() + 1) as usize
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Entry `G(t, s)`. Panics outside the table.
    pub fn entry(&self, t: i64, s: i64) -> f64 {
        assert!(
            t >= self.t_start() && t <= self.t_end(),
            "t = {t} outside kernel rows"
        );
        assert!(
            s >= self.s_start() && s <= self.s_end(),
            "s = {s} outside kernel columns"
        );
        let i = (t - self.t_start()) as usize;
        let j = (s - self.s_start()) as usize;
        self.entries[i * self.ncols + j]
    }

    /// Row `t` as a slice over `s ∈ N^{b+1}_{a+2}`.
    pub fn row(&self, t: i64) -> &[f64] {
        let i = (t - self.t_start()) as usize;
        &self.entries[i * self.ncols..(i + 1) * self.ncols]
    }
}

/// `(m)^{α−1} / Γ(α)` for integer `m`, in log space; 0 for `m ≤ 0` by the
/// rising-function convention. The single most shared kernel factor.
pub(crate) fn rog(m: i64, alpha: f64) -> f64 {
    if m <= 0 {
        return 0.0;
    }
    // argument formed as (m−1) + α so that rog(1, α) is exactly 1
    let num = (m - 1) as f64 + alpha;
    (ln_gamma_pos(num) - ln_gamma_pos(m as f64) - ln_gamma_pos(alpha)).exp()
}

/// `ln (m)^{α−2} = ln Γ(m+α−2) − ln Γ(m)` for integer `m ≥ 1`.
pub(crate) fn ln_rising_am2(m: i64, alpha: f64) -> f64 {
    ln_gamma_pos((m - 2) as f64 + alpha) - ln_gamma_pos(m as f64)
}

fn validate(alpha: f64) -> Result<()> {
    crate::calculus::FracOrder::new(alpha).map(|_| ())
}

/// Left-focal Green's kernel.
///
/// Upper branch (`t ≤ s−1`): `(b−s+1)^{α−1} (t−a)^{α−2} / (Γ(α) (b−a)^{α−2})`;
/// the lower branch (`t ≥ s`) subtracts `(t−s+1)^{α−1}/Γ(α)`. The branch
/// boundary `t = s` belongs to the lower branch.
pub fn greens_left(domain: &Domain, alpha: f64) -> Result<GreensKernel> {
    validate(alpha)?;
    let (a, b) = (domain.a(), domain.b());
    let ncols = (b - a) as usize;
    let nrows = (b - a) as usize;
    let mut entries = vec![0.0; nrows * ncols];
    // b_factor(t) = (t−a)^{α−2} / (b−a)^{α−2}; exactly 1.0 at t = b because
    // the two log terms are the same floating-point number there.
    let ln_denom = ln_rising_am2(b - a, alpha);
    for (i, t) in ((a + 1)..=b).enumerate() {
        let b_factor = (ln_rising_am2(t - a, alpha) - ln_denom).exp();
        for (j, s) in ((a + 2)..=(b + 1)).enumerate() {
            let upper = rog(b - s + 1, alpha) * b_factor;
            entries[i * ncols + j] = if t < s {
                upper
            } else {
                // at t = b: b_factor = 1 and both rog calls share the same
                // argument, so the difference is exactly zero
                upper - rog(t - s + 1, alpha)
            };
        }
    }
    Ok(GreensKernel {
        kind: FocalKind::Left,
        domain: *domain,
        alpha,
        entries,
        ncols,
    })
}

/// Right-focal Green's kernel.
///
/// The upper branch (`t ≤ s−1`) is the row constant `(t−a−1)^{α−1}/Γ(α)`;
/// the lower branch (`t ≥ s`) subtracts `(t−s+1)^{α−1}/Γ(α)`. Row `a+1` and
/// column `a+2` are exactly zero.
pub fn greens_right(domain: &Domain, alpha: f64) -> Result<GreensKernel> {
    validate(alpha)?;
    let (a, b) = (domain.a(), domain.b());
    let ncols = (b - a) as usize;
    let nrows = (b - a) as usize;
    let mut entries = vec![0.0; nrows * ncols];
    for (i, t) in ((a + 1)..=b).enumerate() {
        let row_const = rog(t - a - 1, alpha);
        for (j, s) in ((a + 2)..=(b + 1)).enumerate() {
            entries[i * ncols + j] = if t < s {
                row_const
            } else {
                // shares rog with the row constant when s = a+2
                row_const - rog(t - s + 1, alpha)
            };
        }
    }
    Ok(GreensKernel {
        kind: FocalKind::Right,
        domain: *domain,
        alpha,
        entries,
        ncols,
    })
}

/// Construct the kernel of either kind.
pub fn greens_kernel(kind: FocalKind, domain: &Domain, alpha: f64) -> Result<GreensKernel> {
    match kind {
        FocalKind::Left => greens_left(domain, alpha),
        FocalKind::Right => greens_right(domain, alpha),
    }
}

/// Extremal quantities of a kernel table, from an exact scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelStats {
    pub min: f64,
    pub max: f64,
    /// Location of the maximum; ties broken toward the lexicographically
    /// smallest `(t, s)`.
    pub argmax: (i64, i64),
    pub rowsum_max: f64,
    pub argmax_row: i64,
}

/// Scan all entries and row sums.
pub fn kernel_stats(kernel: &GreensKernel) -> KernelStats {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut argmax = (kernel.t_start(), kernel.s_start());
    let mut rowsum_max = f64::NEG_INFINITY;
    let mut argmax_row = kernel.t_start();
    for t in kernel.t_start()..=kernel.t_end() {
        let mut rowsum = crate::calculus::Accumulator::default();
        for s in kernel.s_start()..=kernel.s_end() {
            let v = kernel.entry(t, s);
            if v < min {
                min = v;
            }
            if v > max {
                max = v;
                argmax = (t, s);
            }
            rowsum.add(v);
        }
        let rs = rowsum.total();
        if rs > rowsum_max {
            rowsum_max = rs;
            argmax_row = t;
        }
    }
    KernelStats {
        min,
        max,
        argmax,
        rowsum_max,
        argmax_row,
    }
}

/// The paper-level closed forms for the kernel maximum and the maximal row
/// sum.
///
/// For the left kernel both are attained (at `(a+1, a+2)` and row `a+1`).
/// For the right kernel the maximum is attained at `(b, b+1)`, while the
/// row-sum expression is a strict upper bound: the underlying theorem drops
/// a nonnegative term, so no row of the true kernel reaches it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormBounds {
    pub max: f64,
    pub rowsum_max: f64,
}

/// Evaluate the closed forms.
pub fn closed_form_bounds(
    kind: FocalKind,
    domain: &Domain,
    alpha: f64,
) -> Result<ClosedFormBounds> {
    validate(alpha)?;
    let n = (domain.b() - domain.a() - 1) as f64;
    Ok(match kind {
        FocalKind::Left => ClosedFormBounds {
            max: n / (alpha - 1.0),
            rowsum_max: n * (n + alpha - 1.0) / (alpha * (alpha - 1.0)),
        },
        FocalKind::Right => {
            let max = rog(domain.b() - domain.a() - 1, alpha);
            ClosedFormBounds {
                max,
                rowsum_max: max * n,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::lgamma_signed;

    fn gamma(x: f64) -> f64 {
        lgamma_signed(x).unwrap().value()
    }

    fn dom(a: i64, b: i64) -> Domain {
        Domain::new(a, b).unwrap()
    }

    #[test]
    fn left_spot_values() {
        let k = greens_left(&dom(0, 4), 1.5).unwrap();
        assert!((k.entry(1, 2) - 6.0).abs() < 1e-12);
        assert_eq!(k.entry(4, 4), 0.0);
        // whole t = b row is exactly zero
        for s in 2..=5 {
            assert_eq!(k.entry(4, s), 0.0, "left boundary row at s={s}");
        }
        // the extension column s = b+1 is identically zero for the left kind
        for t in 1..=4 {
            assert_eq!(k.entry(t, 5), 0.0);
        }
    }

    #[test]
    fn right_spot_values() {
        let k = greens_right(&dom(0, 4), 1.5).unwrap();
        // row a+1 is exactly zero
        for s in 2..=5 {
            assert_eq!(k.entry(1, s), 0.0);
        }
        // column a+2 is exactly zero
        for t in 1..=4 {
            assert_eq!(k.entry(t, 2), 0.0);
        }
        // G_r(t, t+1) = (t−1)^{1/2} / Γ(3/2); 1.875 at t = 4
        assert!((k.entry(4, 5) - 1.875).abs() < 1e-12);
        // unit gap G_r(t, t) = G_r(t, t+1) − 1, exact
        for t in 2..=4 {
            assert_eq!(k.entry(t, t + 1) - k.entry(t, t), 1.0, "unit gap at t={t}");
        }
    }

    #[test]
    fn branch_boundary_uses_lower_branch() {
        // at t = s the two branch formulas differ by exactly
        // (1)^{α−1}/Γ(α) = 1; the kernel must take the lower branch
        let alpha = 1.5;
        let k = greens_right(&dom(0, 6), alpha).unwrap();
        for t in 2..=6 {
            let upper_value = k.entry(t, t + 1); // row constant
            assert_eq!(
                upper_value - k.entry(t, t),
                1.0,
                "right branch boundary at t={t}"
            );
        }
        let k = greens_left(&dom(0, 6), alpha).unwrap();
        for s in 2..=5 {
            // lower branch at t = s, reconstructed from the neighbour above
            // in the same column: upper(t,s) = upper(s−1,s)·B(t)/B(s−1)
            let upper_at = |t: i64| k.entry(s - 1, s) * rising_ratio(t, s - 1, 0, 6, alpha);
            let expect = upper_at(s) - rog_test(1, alpha);
            assert!((k.entry(s, s) - expect).abs() < 1e-12 * expect.abs().max(1.0));
        }
    }

    fn rog_test(m: i64, alpha: f64) -> f64 {
        if m <= 0 {
            0.0
        } else {
            crate::special::rising(m as f64, alpha - 1.0).unwrap() / gamma(alpha)
        }
    }

    /// (t−a)^{α−2} / (t'−a)^{α−2} via the public rising function.
    fn rising_ratio(t: i64, tp: i64, a: i64, _b: i64, alpha: f64) -> f64 {
        crate::special::rising((t - a) as f64, alpha - 2.0).unwrap()
            / crate::special::rising((tp - a) as f64, alpha - 2.0).unwrap()
    }

    #[test]
    fn closed_forms_at_the_anchor_cell() {
        let cb = closed_form_bounds(FocalKind::Left, &dom(0, 4), 1.5).unwrap();
        assert!((cb.max - 6.0).abs() < 1e-12);
        assert!((cb.rowsum_max - 14.0).abs() < 1e-12);
        let cb = closed_form_bounds(FocalKind::Right, &dom(0, 4), 1.5).unwrap();
        assert!((cb.max - 1.875).abs() < 1e-12);
        assert!((cb.rowsum_max - 5.625).abs() < 1e-12);
        // b − a = 2 degenerate left row sum: 1/(α−1)
        for alpha in [1.1, 1.5, 1.9] {
            let cb = closed_form_bounds(FocalKind::Left, &dom(0, 2), alpha).unwrap();
            assert!((cb.rowsum_max - 1.0 / (alpha - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn stats_match_attained_closed_forms() {
        let k = greens_left(&dom(0, 4), 1.5).unwrap();
        let st = kernel_stats(&k);
        assert!((st.max - 6.0).abs() < 1e-10 * 6.0);
        assert_eq!(st.argmax, (1, 2));
        assert!((st.rowsum_max - 14.0).abs() < 1e-10 * 14.0);
        assert_eq!(st.argmax_row, 1);
        assert!(st.min >= -1e-12);

        let k = greens_right(&dom(0, 4), 1.5).unwrap();
        let st = kernel_stats(&k);
        assert!((st.max - 1.875).abs() < 1e-10 * 1.875);
        assert_eq!(st.argmax, (4, 5));
        assert!(st.min >= -1e-12);
    }

    #[test]
    fn right_rowsums_are_bounded_but_not_tight() {
        // True row sums, frozen from a 50-digit evaluation. The closed-form
        // row-sum expression (5.625 here) is a strict upper bound: the
        // underlying proof drops a nonnegative term before maximizing.
        let k = greens_right(&dom(0, 4), 1.5).unwrap();
        let expect = [0.0, 3.0, 3.5, 3.125];
        for (i, t) in (1..=4).enumerate() {
            let rs: f64 = k.row(t).iter().sum();
            assert!(
                (rs - expect[i]).abs() < 1e-12,
                "row {t}: {rs} vs {}",
                expect[i]
            );
        }
        let st = kernel_stats(&k);
        let cb = closed_form_bounds(FocalKind::Right, &dom(0, 4), 1.5).unwrap();
        assert!(st.rowsum_max <= cb.rowsum_max + 1e-12);
        assert!((st.rowsum_max - 3.5).abs() < 1e-12);
    }

    #[test]
    fn sweep_positivity_max_agreement_and_rowsum_bound() {
        for &alpha in &[1.05, 1.25, 1.5, 1.75, 1.95] {
            for n in 2..=40 {
                let d = dom(0, n);
                for kind in [FocalKind::Left, FocalKind::Right] {
                    let k = greens_kernel(kind, &d, alpha).unwrap();
                    let st = kernel_stats(&k);
                    let cb = closed_form_bounds(kind, &d, alpha).unwrap();
                    assert!(
                        st.min >= -1e-12,
                        "{kind:?} alpha={alpha} n={n}: min {}",
                        st.min
                    );
                    assert!(
                        (st.max - cb.max).abs() <= 1e-10 * cb.max,
                        "{kind:?} alpha={alpha} n={n}: max {} vs {}",
                        st.max,
                        cb.max
                    );
                    assert!(st.rowsum_max <= cb.rowsum_max * (1.0 + 1e-10));
                    if kind == FocalKind::Left {
                        assert!(
                            (st.rowsum_max - cb.rowsum_max).abs() <= 1e-10 * cb.rowsum_max,
                            "left rowsum alpha={alpha} n={n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn left_monotone_in_t_and_ratio_identity() {
        let alpha = 1.5;
        let k = greens_left(&dom(0, 9), alpha).unwrap();
        for s in 2..=9 {
            // nonincreasing along each branch
            for t in 2..=(s - 1) {
                assert!(
                    k.entry(t, s) <= k.entry(t - 1, s) + 1e-12,
                    "upper branch t={t} s={s}"
                );
            }
            for t in (s + 1)..=9 {
                assert!(
                    k.entry(t, s) <= k.entry(t - 1, s) + 1e-12,
                    "lower branch t={t} s={s}"
                );
            }
            // G_l(a+2, s) = (α−1) G_l(a+1, s) on the upper branch
            if s >= 3 {
                let lhs = k.entry(2, s);
                let rhs = (alpha - 1.0) * k.entry(1, s);
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0),
                    "ratio identity s={s}"
                );
            }
        }
    }

    #[test]
    fn right_monotone_in_s() {
        let k = greens_right(&dom(0, 9), 1.3).unwrap();
        for t in 2..=9 {
            for s in 3..=t {
                assert!(k.entry(t, s) >= k.entry(t, s - 1) - 1e-12, "t={t} s={s}");
            }
            for s in (t + 1)..=10 {
                assert_eq!(
                    k.entry(t, s),
                    k.entry(t, t + 1),
                    "constant above diagonal t={t} s={s}"
                );
            }
        }
    }

    #[test]
    fn left_diagonal_maximum() {
        // max_s G_l(s, s) = b − a − 2
        for alpha in [1.1, 1.5, 1.9] {
            for n in [3, 5, 12] {
                let k = greens_left(&dom(0, n), alpha).unwrap();
                let diag_max = (2..=n)
                    .map(|s| k.entry(s, s))
                    .fold(f64::NEG_INFINITY, f64::max);
                let expect = (n - 2) as f64;
                assert!(
                    (diag_max - expect).abs() < 1e-10 * expect.max(1.0),
                    "alpha={alpha} n={n}: {diag_max}"
                );
            }
        }
    }

    #[test]
    fn rejects_bad_order() {
        assert!(greens_left(&dom(0, 4), 2.0).is_err());
        assert!(greens_right(&dom(0, 4), 0.9).is_err());
    }
}
