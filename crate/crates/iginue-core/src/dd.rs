//! Double-double ("dd") arithmetic: unevaluated sums hi + lo with ~32
//! significant digits.
//!
//! Used internally where a plain f64 sum would lose too many digits to
//! cancellation (Mittag-Leffler series on the imaginary axis) and as the
//! extended-precision oracle for the stabilized truncated exponentials in
//! tests. Not a public API.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = f64::mul_add(a, b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let s2 = s2 + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd { hi: -other.hi, lo: -other.lo })
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let p2 = p2 + self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p1, p2) = two_prod(q1, b);
        let r = ((self.hi - p1) - p2) + self.lo;
        let q2 = r / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd { re: Dd::ZERO, im: Dd::ZERO };

    #[inline]
    pub fn from_c64(z: Complex64) -> CDd {
        CDd { re: Dd::from(z.re), im: Dd::from(z.im) }
    }

    #[inline]
    pub fn add(self, other: CDd) -> CDd {
        CDd { re: self.re.add(other.re), im: self.im.add(other.im) }
    }

    /// Multiply by an ordinary complex number.
    #[inline]
    pub fn mul_c64(self, b: Complex64) -> CDd {
        CDd {
            re: self.re.mul_f64(b.re).sub(self.im.mul_f64(b.im)),
            im: self.re.mul_f64(b.im).add(self.im.mul_f64(b.re)),
        }
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> CDd {
        CDd { re: self.re.div_f64(b), im: self.im.div_f64(b) }
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Cheap magnitude estimate (hi parts only), for stopping rules.
    #[inline]
    pub fn norm_est(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_recovers_cancelled_digits() {
        // (1 + 1e-20) - 1 is exactly 1e-20 in dd, zero in f64
        let a = Dd::from(1.0).add(Dd::from(1e-20));
        let d = a.sub(Dd::from(1.0));
        assert_eq!(d.to_f64(), 1e-20);
    }

    #[test]
    fn dd_mul_div_roundtrip() {
        let x = Dd::from(std::f64::consts::PI).mul_f64(1.0e7).div_f64(1.0e7);
        assert!((x.to_f64() - std::f64::consts::PI).abs() < 1e-30);
        assert!(x.lo.abs() < 1e-15);
    }

    #[test]
    fn cdd_mul_matches_c64_for_exact_cases() {
        let z = Complex64::new(3.0, -2.0);
        let w = Complex64::new(-1.5, 0.25);
        let p = CDd::from_c64(z).mul_c64(w).to_c64();
        assert_eq!(p, z * w);
    }
}
