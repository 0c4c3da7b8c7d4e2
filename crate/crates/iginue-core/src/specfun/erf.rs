//! Complex complementary error function and the Gaussian band integral.
//!
//! F(x) = (2π)^{-1/2} ∫_x^∞ e^{-s²/2} ds = erfc(x/√2)/2, continued to
//! complex x, and L_ρ(z) = F(z−ρ/2) − F(z+ρ/2).
//!
//! erfc is evaluated through the Faddeeva function w(ζ) = e^{-ζ²} erfc(-iζ)
//! on the upper half-plane, using a trapezoidal lattice sum for the defining
//! Hilbert-type integral plus its pole correction (Matta–Reichel /
//! Hunter–Regan). Two staggered lattices keep the evaluation away from the
//! correction-term poles; the absolute truncation error is O(e^{-π²/h²}),
//! below 1e-17 at h = 1/2.

use num_complex::Complex64;
use std::f64::consts::{FRAC_2_SQRT_PI, PI};

const H: f64 = 0.5;
/// e^{-(kh)²} < 1e-19 beyond this index.
const KMAX: usize = 14;
/// Apply the pole correction only while its residue chain is active.
const CORR_IM_LIMIT: f64 = PI / H;

/// Faddeeva function w(ζ) for Im ζ ≥ 0.
fn faddeeva_upper(zeta: Complex64) -> Complex64 {
    debug_assert!(zeta.im >= 0.0);
    let norm2 = zeta.norm_sqr();
    if norm2 >= 1.0e4 {
        // asymptotic w(ζ) = i/(√π ζ) (1 + 1/(2ζ²) + 3/(4ζ⁴) + ...)
        let inv2 = 1.0 / (zeta * zeta);
        let mut corr = Complex64::new(1.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for k in 1..=5 {
            term = term * inv2 * ((2 * k - 1) as f64 / 2.0);
            corr += term;
        }
        return Complex64::new(0.0, FRAC_2_SQRT_PI / 2.0) / zeta * corr;
    }

    let r = zeta.re.abs() / H;
    let on_integer_lattice = (r - r.round()).abs() >= 0.25;

    let zeta2 = zeta * zeta;
    let mut s = Complex64::new(0.0, 0.0);
    if on_integer_lattice {
        // Σ_k e^{-k²h²}/(ζ-kh) paired as 2ζ/(ζ²-k²h²), plus the k=0 term
        for k in 1..=KMAX {
            let t = k as f64 * H;
            s += (-t * t).exp() / (zeta2 - t * t);
        }
        s = s * 2.0 * zeta + 1.0 / zeta;
    } else {
        // midpoint lattice: nodes (k+1/2)h, no k=0 singularity
        for k in 0..=KMAX {
            let t = (k as f64 + 0.5) * H;
            s += (-t * t).exp() / (zeta2 - t * t);
        }
        s = s * 2.0 * zeta;
    }
    let mut w = Complex64::new(0.0, H / PI) * s;

    if zeta.im < CORR_IM_LIMIT {
        // q = e^{2πiζ/h}, |q| ≤ 1 on the upper half-plane
        let q = (Complex64::new(0.0, 2.0 * PI / H) * zeta).exp();
        let em = (-zeta2).exp();
        if on_integer_lattice {
            w -= 2.0 * em * q / (1.0 - q);
        } else {
            w += 2.0 * em * q / (1.0 + q);
        }
    }
    w
}

/// Complementary error function for complex argument.
pub fn erfc_complex(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return 2.0 - erfc_complex(-z);
    }
    if z.im < 0.0 {
        return erfc_complex(z.conj()).conj();
    }
    // first quadrant: erfc(z) = e^{-z²} w(iz), iz in the upper half-plane
    let izeta = Complex64::new(-z.im, z.re);
    (-z * z).exp() * faddeeva_upper(izeta)
}

/// F(x) = (2π)^{-1/2} ∫_x^∞ e^{-s²/2} ds = erfc(x/√2)/2 for complex x.
pub fn error_f(x: Complex64) -> Complex64 {
    0.5 * erfc_complex(x / std::f64::consts::SQRT_2)
}

use crate::error::{Error, Result};

/// Band integral L_ρ(z) = (2π)^{-1/2} ∫_{-ρ/2}^{ρ/2} e^{-(z-ξ)²/2} dξ,
/// reduced exactly to F(z−ρ/2) − F(z+ρ/2).
pub fn band_error_l(z: Complex64, rho: f64) -> Result<Complex64> {
    if !(rho > 0.0) {
        return Err(Error::domain("band_error_L", format!("rho = {rho} must be > 0")));
    }
    Ok(error_f(z - rho / 2.0) - error_f(z + rho / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: F by adaptive Simpson quadrature of the defining integral
    /// along the horizontal ray x + t, t ∈ [0, T].
    pub(crate) fn error_f_quadrature(x: Complex64) -> Complex64 {
        let g = |t: f64| (-(x + t) * (x + t) / 2.0).exp();
        let t_end = 42.0 + x.norm();
        fn simpson(
            g: &dyn Fn(f64) -> Complex64,
            a: f64,
            b: f64,
            fa: Complex64,
            fm: Complex64,
            fb: Complex64,
            tol: f64,
            depth: u32,
        ) -> Complex64 {
            let m = 0.5 * (a + b);
            let lm = 0.5 * (a + m);
            let rm = 0.5 * (m + b);
            let flm = g(lm);
            let frm = g(rm);
            let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            let delta = left + right - whole;
            if depth == 0 || delta.norm() < 15.0 * tol {
                left + right + delta / 15.0
            } else {
                simpson(g, a, m, fa, flm, fm, tol / 2.0, depth - 1)
                    + simpson(g, m, b, fm, frm, fb, tol / 2.0, depth - 1)
            }
        }
        // split into unit panels so the adaptive recursion starts well-scaled
        let mut acc = Complex64::new(0.0, 0.0);
        let n_panels = t_end.ceil() as usize;
        // panel tolerance scaled to the largest integrand value on the ray
        let peak = (0..=200)
            .map(|i| g(i as f64 * t_end / 200.0).norm())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        for i in 0..n_panels {
            let a = i as f64 * t_end / n_panels as f64;
            let b = (i + 1) as f64 * t_end / n_panels as f64;
            let m = 0.5 * (a + b);
            acc += simpson(&g, a, b, g(a), g(m), g(b), 1e-15 * peak, 24);
        }
        acc / (2.0 * PI).sqrt()
    }

    #[test]
    fn f_at_zero_is_half() {
        let v = error_f(Complex64::new(0.0, 0.0));
        assert!((v - 0.5).norm() < 1e-15);
    }

    #[test]
    fn f_matches_quadrature_on_grid() {
        // covers both lattices, the correction region, and real/imag axes
        let pts = [
            (0.3, 0.0),
            (1.0, 0.0),
            (3.0, 0.0),
            (-2.0, 0.0),
            (0.0, 1.0),
            (0.0, -3.0),
            (2.0, 1.0),
            (-1.5, 2.5),
            (4.0, -4.0),
            (0.7, 6.0),
            (-5.0, 0.3),
            (6.0, 6.0),
            (0.25, 0.125),
            (8.0, 0.01),
            (0.01, 8.0),
        ];
        for &(re, im) in &pts {
            let x = Complex64::new(re, im);
            let approx = error_f(x);
            let exact = error_f_quadrature(x);
            let scale = exact.norm().max(1e-30);
            let rel = (approx - exact).norm() / scale;
            assert!(rel < 5e-13, "x={x}: rel={rel:.3e} approx={approx} exact={exact}");
        }
    }

    #[test]
    fn f_spot_value_at_three() {
        // frozen from the quadrature oracle; agrees with erfc(3/√2)/2
        let v = error_f(Complex64::new(3.0, 0.0));
        let oracle = error_f_quadrature(Complex64::new(3.0, 0.0));
        assert!((v - oracle).norm() < 1e-15);
        assert!((v.re - 1.349_898_031_630_094_5e-3).abs() < 1e-12);
        assert!((v.re - 1.349_898_0e-3).abs() < 5e-11);
        assert!(v.im == 0.0);
    }

    #[test]
    fn reflection_is_exact() {
        // F(x) + F(-x) = 1 bit-for-bit for Re x != 0 by construction
        let x = Complex64::new(0.7, 0.0);
        assert_eq!(error_f(x) + error_f(-x), Complex64::new(1.0, 0.0));
        let x = Complex64::new(2.0, 1.0);
        let s = error_f(x) + error_f(-x);
        assert!((s - 1.0).norm() < 1e-14);
    }

    #[test]
    fn conjugate_symmetry() {
        let x = Complex64::new(1.3, -0.8);
        let a = error_f(x.conj());
        let b = error_f(x).conj();
        assert_eq!(a, b);
    }

    #[test]
    fn band_error_examples() {
        // L_ρ(0) = 1 − 2F(ρ/2) at ρ = 2
        let rho = 2.0;
        let l = band_error_l(Complex64::new(0.0, 0.0), rho).unwrap();
        let expected = 1.0 - 2.0 * error_f(Complex64::new(1.0, 0.0));
        assert!((l - expected).norm() < 1e-14);
        // L_ρ(z) → 1 as ρ → ∞
        let l50 = band_error_l(Complex64::new(0.3, 0.0), 50.0).unwrap();
        assert!((l50 - 1.0).norm() < 1e-10);
        assert!(band_error_l(Complex64::new(0.0, 0.0), 0.0).is_err());
        assert!(band_error_l(Complex64::new(0.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn band_error_against_quadrature() {
        // L_2(1+0.5i) by direct quadrature of the band integral
        let z = Complex64::new(1.0, 0.5);
        let rho = 2.0;
        let viaf = band_error_l(z, rho).unwrap();
        // ∫_{-ρ/2}^{ρ/2} e^{-(z-ξ)²/2} dξ with plain Simpson on a fine grid
        let n = 20_000;
        let hh = rho / n as f64;
        let g = |xi: f64| (-(z - xi) * (z - xi) / 2.0).exp();
        let mut acc = g(-rho / 2.0) + g(rho / 2.0);
        for i in 1..n {
            let xi = -rho / 2.0 + i as f64 * hh;
            acc += g(xi) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let direct = acc * hh / 3.0 / (2.0 * PI).sqrt();
        assert!((viaf - direct).norm() < 1e-10, "viaf={viaf} direct={direct}");
    }
}
