//! Gamma-function kernel: signed log-gamma, gamma ratios with pole
//! conventions, the generalized rising function and the backward jump.
//!
//! Everything downstream (fractional operators, Green's kernels,
//! Mittag-Leffler series) evaluates gamma expressions through this module,
//! so the pole conventions live in exactly one place:
//!
//! * `1/Γ(z)` vanishes at the poles `z ∈ {0, −1, −2, …}`,
//! * a ratio of two gammas that are both at poles takes its limiting value,
//! * the rising function obeys `0^r = 0` for `r ≠ 0` and `0^0 = 1`.

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Absolute tolerance for deciding that an argument sits on a nonpositive
/// integer. Inputs in this crate are integers plus multiples of a fractional
/// order, so genuine near-pole ambiguity does not occur at that tolerance.
pub const POLE_TOL: f64 = 1e-12;

/// Lanczos parameter g = 7 (n = 9 coefficients).
const LANCZOS_G: f64 = 7.0;

/// Lanczos coefficients (Godfrey's g = 7, n = 9 set), published digits.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

#[allow(clippy::excessive_precision)]
const LN_PI: f64 = 1.1447298858494001741;
#[allow(clippy::excessive_precision)]
const HALF_LN_TWO_PI: f64 = 0.91893853320467274178;

/// A real number stored as `sign · exp(log_abs)`.
///
/// `sign == 0` encodes an exact zero, in which case `log_abs` is ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedMagnitude {
    /// Natural log of the absolute value.
    pub log_abs: f64,
    /// −1, 0 or +1.
    pub sign: i8,
}

impl SignedMagnitude {
    /// An exact zero.
    pub const ZERO: SignedMagnitude = SignedMagnitude {
        log_abs: f64::NEG_INFINITY,
        sign: 0,
    };

    /// The represented value, exponentiated once.
    pub fn value(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_abs.exp()
        }
    }
}

/// Is `x` within [`POLE_TOL`] of a nonpositive integer?
pub(crate) fn is_pole(x: f64) -> bool {
    let r = x.round();
    r <= 0.0 && (x - r).abs() <= POLE_TOL
}

/// sin(πx) with argument reduction, accurate for large |x|.
fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (std::f64::consts::PI * r).sin();
    // sin(π(n + r)) = (−1)^n sin(πr)
    if (n as i64) & 1 == 0 {
        s
    } else {
        -s
    }
}

/// Lanczos series A_g(z) = c0 + c1/(z+1) + c2/(z+2) + …
fn lanczos_sum(z: f64) -> f64 {
    let mut sum = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS[1..].iter().enumerate() {
        sum += c / (z + (i + 1) as f64);
    }
    sum
}

/// ln Γ(x) for x > 0. Callers guarantee positivity.
pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    // Γ(1) = Γ(2) = 1 exactly; several identities downstream rely on
    // ln Γ of these arguments being exactly 0.
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 0.5 {
        // reflection in log space; sin(πx) > 0 on (0, 1/2)
        return LN_PI - sin_pi(x).ln() - ln_gamma_pos(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// Signed log-gamma: `log |Γ(x)|` and the sign of `Γ(x)`.
///
/// On the negative non-integer axis the sign alternates between adjacent
/// poles, `sign Γ(x) = (−1)^⌈−x⌉`. Nonpositive integers (to within
/// [`POLE_TOL`]) are rejected with [`Error::Pole`].
pub fn lgamma_signed(x: f64) -> Result<SignedMagnitude> {
    if !x.is_finite() {
        return Err(Error::InvalidParams(format!(
            "lgamma argument must be finite, got {x}"
        )));
    }
    if is_pole(x) {
        return Err(Error::Pole { x });
    }
    if x > 0.0 {
        return Ok(SignedMagnitude {
            log_abs: ln_gamma_pos(x),
            sign: 1,
        });
    }
    // x < 0, not an integer: reflection Γ(x) = π / (sin(πx) Γ(1−x)).
    let s = sin_pi(x);
    let log_abs = LN_PI - s.abs().ln() - ln_gamma_pos(1.0 - x);
    Ok(SignedMagnitude {
        log_abs,
        sign: if s > 0.0 { 1 } else { -1 },
    })
}

/// Γ(num) / Γ(den) with pole conventions.
///
/// * `den` at a pole, `num` off the pole set: the reciprocal gamma vanishes,
///   so the ratio is 0.
/// * both at poles, `k = num − den` (an integer): the limiting value
///   `(−1)^k Γ(1−den) / Γ(1−num)`, a ratio of factorials of nonnegative
///   integers evaluated in log space.
/// * `num` at a pole alone: [`Error::Pole`].
pub fn gamma_ratio(num: f64, den: f64) -> Result<f64> {
    if num == den {
        return Ok(1.0);
    }
    let num_pole = is_pole(num);
    let den_pole = is_pole(den);
    match (num_pole, den_pole) {
        (false, true) => Ok(0.0),
        (true, false) => Err(Error::Pole { x: num }),
        (true, true) => {
            // num = −p, den = −q with p, q nonnegative integers.
            let p = -num.round();
            let q = -den.round();
            let k = (q - p) as i64; // = num − den
            let sign = if k & 1 == 0 { 1.0 } else { -1.0 };
            Ok(sign * (ln_gamma_pos(q + 1.0) - ln_gamma_pos(p + 1.0)).exp())
        }
        (false, false) => {
            let n = lgamma_signed(num)?;
            let d = lgamma_signed(den)?;
            Ok(f64::from(n.sign * d.sign) * (n.log_abs - d.log_abs).exp())
        }
    }
}

/// Generalized rising function `t^{r} = Γ(t+r)/Γ(t)`.
///
/// Conventions evaluated before the gamma ratio: `rising(0, 0) = 1` and
/// `rising(0, r) = 0` for `r ≠ 0`.
///
/// # Example
///
/// ```
/// use nabla_bvp::rising;
///
/// // 3^(1/2) = Γ(3.5)/Γ(3)
/// assert!((rising(3.0, 0.5).unwrap() - 1.6616754852239213).abs() < 1e-12);
/// // integer exponents reduce to ordinary rising factorials: 3·4 = 12
/// assert!((rising(3.0, 2.0).unwrap() - 12.0).abs() < 1e-12);
/// assert_eq!(rising(0.0, 0.7).unwrap(), 0.0);
/// ```
pub fn rising(t: f64, r: f64) -> Result<f64> {
    if t.abs() <= POLE_TOL {
        return Ok(if r.abs() <= POLE_TOL { 1.0 } else { 0.0 });
    }
    gamma_ratio(t + r, t)
}

/// Backward jump `ρ(t) = max(a, t − 1)` on the grid based at `a`.
pub fn backward_jump(t: i64, a: i64) -> i64 {
    debug_assert!(t >= a);
    a.max(t - 1)
}

/// `(m)^{r} / Γ(r+1) = Γ(m+r)/(Γ(r+1) Γ(m))` for integer `m ≥ 0`, as the
/// telescoped product `Π_{j=1}^{m−1} (r+j)/j` in compensated arithmetic.
///
/// The product realizes the joint limiting conventions exactly: a zero
/// factor is precisely a reciprocal-gamma pole, and the `m = 0` case follows
/// the `0^r` convention. This is the building block of every Mittag-Leffler
/// term and of the generalized power rules, where numerator and denominator
/// gammas can sit on poles simultaneously.
pub(crate) fn rising_ratio_dd(m: i64, r: Dd) -> Dd {
    debug_assert!(m >= 0);
    if m == 0 {
        return if r.value().abs() <= POLE_TOL {
            Dd::ONE
        } else {
            Dd::from_f64(0.0)
        };
    }
    let mut prod = Dd::ONE;
    for j in 1..m {
        prod = prod.mul(r.add_f64(j as f64)).div_f64(j as f64);
    }
    if prod.hi.is_finite() {
        return prod;
    }
    // overflow regime: r is large and positive, all gamma arguments positive
    let rv = r.value();
    Dd::from_f64(
        (ln_gamma_pos(m as f64 + rv) - ln_gamma_pos(rv + 1.0) - ln_gamma_pos(m as f64)).exp(),
    )
}

/// `f64` view of [`rising_ratio_dd`].
pub(crate) fn rising_ratio(m: i64, r: f64) -> f64 {
    rising_ratio_dd(m, Dd::from_f64(r)).value()
}
