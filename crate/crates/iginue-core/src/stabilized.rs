//! Scale-split complex values `mantissa * 2^exp2`.
//!
//! The truncated exponentials grow like e^{|z|} for |z| ~ N while the
//! Gaussian weight ϖ decays just as fast; both overflow f64 long before
//! their product does. A [`StabilizedValue`] keeps the scale in an exact
//! integer power of two, so products and sums of enormously scaled factors
//! collapse to an ordinary f64 only at the very end.
//!
//! The mantissa obeys 0.5 ≤ |m| < 2 after every operation (renormalization
//! uses exact powers of two, so it never rounds), and combining values is
//! associative in exact arithmetic.

use num_complex::Complex64;
use std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilizedValue {
    mantissa: Complex64,
    exp2: i64,
}

/// Multiply by 2^k without rounding (two steps when |k| exceeds f64 range).
#[inline]
fn ldexp(z: Complex64, k: i64) -> Complex64 {
    if k == 0 {
        return z;
    }
    if k.abs() <= 1000 {
        z * 2f64.powi(k as i32)
    } else {
        let half = (k / 2) as i32;
        z * 2f64.powi(half) * 2f64.powi((k - half as i64) as i32)
    }
}

impl StabilizedValue {
    pub const ZERO: StabilizedValue = StabilizedValue { mantissa: Complex64::new(0.0, 0.0), exp2: 0 };

    pub fn new(value: Complex64) -> Self {
        StabilizedValue { mantissa: value, exp2: 0 }.renormalized()
    }

    /// exp(w) for complex w, with the real part split off into the scale.
    pub fn from_exponent(w: Complex64) -> Self {
        let e2 = (w.re / LN_2).floor();
        let frac = w.re - e2 * LN_2;
        let m = frac.exp() * Complex64::new(w.im.cos(), w.im.sin());
        StabilizedValue { mantissa: m, exp2: e2 as i64 }.renormalized()
    }

    fn renormalized(mut self) -> Self {
        let n2 = self.mantissa.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            self.exp2 = 0;
            return self;
        }
        let k = (n2.log2() / 2.0).floor() as i64;
        if k != 0 {
            self.mantissa = ldexp(self.mantissa, -k);
            self.exp2 += k;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == Complex64::new(0.0, 0.0)
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    /// Natural-log scale, value = mantissa * exp(log_scale).
    pub fn log_scale(&self) -> f64 {
        self.exp2 as f64 * LN_2
    }

    pub fn mul(&self, other: &StabilizedValue) -> StabilizedValue {
        StabilizedValue {
            mantissa: self.mantissa * other.mantissa,
            exp2: self.exp2 + other.exp2,
        }
        .renormalized()
    }

    pub fn mul_c(&self, c: Complex64) -> StabilizedValue {
        StabilizedValue { mantissa: self.mantissa * c, exp2: self.exp2 }.renormalized()
    }

    pub fn recip(&self) -> StabilizedValue {
        StabilizedValue { mantissa: self.mantissa.inv(), exp2: -self.exp2 }.renormalized()
    }

    pub fn div(&self, other: &StabilizedValue) -> StabilizedValue {
        self.mul(&other.recip())
    }

    pub fn neg(&self) -> StabilizedValue {
        StabilizedValue { mantissa: -self.mantissa, exp2: self.exp2 }
    }

    pub fn add(&self, other: &StabilizedValue) -> StabilizedValue {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (big, small) = if self.exp2 >= other.exp2 { (self, other) } else { (other, self) };
        let d = big.exp2 - small.exp2;
        if d > 120 {
            return *big;
        }
        StabilizedValue {
            mantissa: big.mantissa + ldexp(small.mantissa, -d),
            exp2: big.exp2,
        }
        .renormalized()
    }

    pub fn sub(&self, other: &StabilizedValue) -> StabilizedValue {
        self.add(&other.neg())
    }

    /// Collapse to a plain complex number; may overflow to infinity or
    /// underflow to zero if the scale is outside f64 range.
    pub fn collapse(&self) -> Complex64 {
        ldexp(self.mantissa, self.exp2)
    }

    /// ln |value|; -inf for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.norm().ln() + self.exp2 as f64 * LN_2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn mantissa_contract_after_ops() {
        let a = StabilizedValue::new(Complex64::new(3.7e12, -1.1e12));
        let b = StabilizedValue::new(Complex64::new(-4.0e-9, 2.0e-9));
        for v in [a, b, a.mul(&b), a.add(&b), a.sub(&b), a.recip()] {
            if !v.is_zero() {
                let m = v.mantissa().norm();
                assert!((0.5..2.0).contains(&m), "mantissa {m}");
            }
        }
    }

    #[test]
    fn matches_plain_arithmetic_at_moderate_scale() {
        let x = Complex64::new(1.25, -0.5);
        let y = Complex64::new(-0.75, 2.0);
        let sx = StabilizedValue::new(x);
        let sy = StabilizedValue::new(y);
        assert!(close(sx.mul(&sy).collapse(), x * y, 1e-15));
        assert!(close(sx.add(&sy).collapse(), x + y, 1e-15));
        assert!(close(sx.div(&sy).collapse(), x / y, 1e-15));
    }

    #[test]
    fn huge_scales_cancel_in_products() {
        // e^{900} * e^{-900} = 1, both factors far beyond f64 range
        let big = StabilizedValue::from_exponent(Complex64::new(900.0, 1.0));
        let small = StabilizedValue::from_exponent(Complex64::new(-900.0, -1.0));
        assert!(close(big.mul(&small).collapse(), Complex64::new(1.0, 0.0), 1e-12));
        assert!(big.collapse().re.is_infinite());
    }

    #[test]
    fn from_exponent_matches_exp() {
        let w = Complex64::new(3.25, -2.0);
        assert!(close(StabilizedValue::from_exponent(w).collapse(), w.exp(), 1e-14));
    }

    #[test]
    fn add_drops_negligible_term() {
        let big = StabilizedValue::from_exponent(Complex64::new(200.0, 0.0));
        let tiny = StabilizedValue::from_exponent(Complex64::new(-200.0, 0.0));
        let s = big.add(&tiny);
        assert!((s.ln_abs() - 200.0).abs() < 1e-10);
    }
}
