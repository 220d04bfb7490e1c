//! Minimal double-double arithmetic for the Mittag-Leffler series.
//!
//! Alternating series with rising-function terms cancel catastrophically:
//! terms peak orders of magnitude above the sum. Carrying each term and the
//! running sum as an unevaluated `hi + lo` pair keeps ~31 significant digits
//! through the cancellation, so the final rounding to `f64` is all that is
//! lost. Products use the fused multiply-add for the exact low part.

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    // requires |a| >= |b|
    let s = a + b;
    Dd {
        hi: s,
        lo: b - (s - a),
    }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd {
        hi: p,
        lo: a.mul_add(b, -p),
    }
}

impl Dd {
    pub(crate) const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub(crate) fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact product of two doubles.
    #[inline]
    pub(crate) fn prod(a: f64, b: f64) -> Dd {
        two_prod(a, b)
    }

    #[inline]
    pub(crate) fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub(crate) fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = self.lo + o.lo + s.lo;
        quick_two_sum(s.hi, t)
    }

    #[inline]
    pub(crate) fn add_f64(self, x: f64) -> Dd {
        let s = two_sum(self.hi, x);
        quick_two_sum(s.hi, s.lo + self.lo)
    }

    #[inline]
    pub(crate) fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.hi, o.hi);
        let t = p.lo + self.hi * o.lo + self.lo * o.hi;
        quick_two_sum(p.hi, t)
    }

    #[inline]
    pub(crate) fn mul_f64(self, x: f64) -> Dd {
        let p = two_prod(self.hi, x);
        quick_two_sum(p.hi, p.lo + self.lo * x)
    }

    #[inline]
    pub(crate) fn div_f64(self, x: f64) -> Dd {
        let q1 = self.hi / x;
        let p = two_prod(q1, x);
        let rem = (self.hi - p.hi) - p.lo + self.lo;
        quick_two_sum(q1, rem / x)
    }
}
