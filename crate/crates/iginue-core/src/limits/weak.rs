//! Weakly non-unitary (almost-circular) limit, built from the band
//! integral L_ρ.

use super::bulk::omega_bulk;
use super::{extrapolate_ray, LIMIT_DELTA_C};
use crate::error::{Error, Result};
use crate::specfun::band_error_l;
use num_complex::Complex64;
use std::f64::consts::PI;

fn check_rho(op: &'static str, rho: f64) -> Result<()> {
    if !(rho > 0.0) {
        return Err(Error::domain(op, format!("rho = {rho} must be > 0")));
    }
    Ok(())
}

/// 𝓛_ρ(x) = (2π)^{-1/2} { (x+ρ/2) e^{−(x−ρ/2)²/2}
///          − (x−ρ/2) [√(2π)(x+ρ/2) L_ρ(x) + e^{−(x+ρ/2)²/2}] }.
pub fn weak_l_script(x: Complex64, rho: f64) -> Result<Complex64> {
    check_rho("weak_L_script", rho)?;
    let h = rho / 2.0;
    let l = band_error_l(x, rho)?;
    let s = (2.0 * PI).sqrt();
    Ok(((x + h) * (-(x - h) * (x - h) / 2.0).exp()
        - (x - h) * (s * (x + h) * l + (-(x + h) * (x + h) / 2.0).exp()))
        / s)
}

fn cal_a(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    f: Complex64,
    rho: f64,
) -> Result<Complex64> {
    let h = rho / 2.0;
    let ef = f.exp();
    Ok((h + a)
        * (h - a)
        * (ef * (f - 1.0) * band_error_l(a, rho)? * band_error_l(d, rho)?
            + band_error_l(b, rho)? * band_error_l(c, rho)?))
}

fn cal_b(a: Complex64, b: Complex64, c: Complex64, rho: f64) -> Result<Complex64> {
    let h = rho / 2.0;
    let s = (2.0 * PI).sqrt();
    Ok(band_error_l(b, rho)?
        * ((a + h) * (-(c - h) * (c - h) / 2.0).exp() / s
            - (a - h) * (-(c + h) * (c + h) / 2.0).exp() / s))
}

fn cal_c(a: Complex64, b: Complex64, rho: f64) -> Complex64 {
    let h = rho / 2.0;
    ((-(a + h) * (a + h) / 2.0 - (b - h) * (b - h) / 2.0).exp()
        + (-(a - h) * (a - h) / 2.0 - (b + h) * (b + h) / 2.0).exp())
        / (2.0 * PI)
}

/// 𝓗_ρ(a,b,c,d,f) = 𝒜 + e^f f 𝓑(a,d,a) + 𝓑(a,b,c) + 𝓑(a,c,b)
///                 − e^f 𝓑(a,d,a) − e^f 𝓑(a,a,d) + 𝓒(b,c) − e^f 𝓒(d,a).
pub fn weak_h_script(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    f: Complex64,
    rho: f64,
) -> Result<Complex64> {
    check_rho("weak_H_script", rho)?;
    let ef = f.exp();
    Ok(cal_a(a, b, c, d, f, rho)?
        + ef * f * cal_b(a, d, a, rho)?
        + cal_b(a, b, c, rho)?
        + cal_b(a, c, b, rho)?
        - ef * cal_b(a, d, a, rho)?
        - ef * cal_b(a, a, d, rho)?
        + cal_c(b, c, rho)
        - ef * cal_c(d, a, rho))
}

/// Reduced weak kernel 𝒦^{(weak)}(ζ̄,η|χ,χ̄) with coincidence handling.
pub fn kappa_weak(
    zeta_bar: Complex64,
    eta: Complex64,
    chi: Complex64,
    chi_bar: Complex64,
    rho: f64,
) -> Result<Complex64> {
    check_rho("weak_kernel", rho)?;
    let denom_l = weak_l_script(chi + chi_bar, rho)?;
    if denom_l.norm() == 0.0 {
        return Err(Error::Degenerate {
            op: "weak_kernel",
            msg: format!("script L vanished at chi+chi_bar = {}", chi + chi_bar),
        });
    }
    let dz = zeta_bar - chi_bar;
    let de = eta - chi;
    if dz.norm() >= LIMIT_DELTA_C && de.norm() >= LIMIT_DELTA_C
        && dz.norm() * de.norm() >= LIMIT_DELTA_C * LIMIT_DELTA_C * 4.0
    {
        let h = weak_h_script(chi + chi_bar, chi + zeta_bar, eta + chi_bar, eta + zeta_bar, dz * de, rho)?;
        return Ok(h / (denom_l * dz * dz * de * de));
    }
    if dz.norm() < de.norm() {
        extrapolate_ray(|off| kappa_weak(chi_bar + off, eta, chi, chi_bar, rho), dz, LIMIT_DELTA_C)
    } else {
        extrapolate_ray(|off| kappa_weak(zeta_bar, chi + off, chi, chi_bar, rho), de, LIMIT_DELTA_C)
    }
}

/// K₁₁^{(weak)} = 𝒦^{(weak)} ω^{(bulk)}.
pub fn weak_kernel(
    zeta: Complex64,
    zeta_bar: Complex64,
    eta: Complex64,
    chi: Complex64,
    chi_bar: Complex64,
    rho: f64,
) -> Result<Complex64> {
    Ok(kappa_weak(zeta_bar, eta, chi, chi_bar, rho)? * omega_bulk(zeta, zeta_bar, chi, chi_bar))
}

/// Ψ₁₁^{(weak)}(ζ₁) = 𝓛_ρ(ζ₁+ζ̄₁).
pub fn weak_psi11(zeta1: Complex64, rho: f64) -> Result<Complex64> {
    weak_l_script(zeta1 + zeta1.conj(), rho)
}

/// Ψ₁₂^{(weak)}(ζ₁,ζ₂) per the weak display; ζ₁ = ζ₂ extrapolated.
pub fn weak_psi12(zeta1: Complex64, zeta2: Complex64, rho: f64) -> Result<Complex64> {
    check_rho("weak_psi12", rho)?;
    let go = |z2: Complex64| -> Result<Complex64> {
        let d = zeta1 - z2;
        let dbar = zeta1.conj() - z2.conj();
        let h = weak_h_script(
            zeta1 + z2.conj(),
            zeta1 + zeta1.conj(),
            z2 + z2.conj(),
            z2 + zeta1.conj(),
            -dbar * d,
            rho,
        )?;
        Ok((-(d * dbar).norm()).exp() * h / (dbar * dbar * d * d))
    };
    let off = zeta2 - zeta1;
    if off.norm() >= LIMIT_DELTA_C {
        go(zeta2)
    } else {
        extrapolate_ray(|o| go(zeta1 + o), off, LIMIT_DELTA_C)
    }
}
