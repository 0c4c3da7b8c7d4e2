//! Singular-origin limit, built from the Mittag-Leffler function E_{1,b+1}.

use super::{extrapolate_ray, LIMIT_DELTA_C};
use crate::error::{Error, Result};
use crate::specfun::{mittag_leffler, reciprocal_gamma};
use num_complex::Complex64;

fn check_b(op: &'static str, b: f64) -> Result<()> {
    if !(b > 0.0) {
        return Err(Error::domain(op, format!("b = {b} must be > 0")));
    }
    Ok(())
}

/// 𝓔_b(z|x) = (x−b) E_{1,b+1}(z) + 1/Γ(b); the one-argument shorthand is
/// 𝓔_b(x) ≡ 𝓔_b(x|x).
pub fn singular_e_script(z: Complex64, x: Complex64, b: f64) -> Result<Complex64> {
    check_b("singular_E_script", b)?;
    Ok((x - b) * mittag_leffler(b + 1.0, z)? + reciprocal_gamma(b))
}

/// 𝒮_b(x,y,z,w,f) = (x−b)[E(y)E(z) − E(w)E(x) + f E(w)E(x)]
///                 + [E(y)+E(z)−E(w)−E(x)+f E(w)]/Γ(b),  E = E_{1,b+1}.
pub fn singular_s(
    x: Complex64,
    y: Complex64,
    z: Complex64,
    w: Complex64,
    f: Complex64,
    b: f64,
) -> Result<Complex64> {
    check_b("singular_S", b)?;
    let e = |arg: Complex64| mittag_leffler(b + 1.0, arg);
    let (ex, ey, ez, ew) = (e(x)?, e(y)?, e(z)?, e(w)?);
    Ok((x - b) * (ey * ez - ew * ex + f * ew * ex)
        + (ey + ez - ew - ex + f * ew) * reciprocal_gamma(b))
}

/// Reduced singular kernel 𝒦^{(sing)}(ζ̄,η|χ,χ̄) =
/// 𝒮_b(χ̄χ, ζ̄χ, χ̄η, ζ̄η, (ζ̄−χ̄)(η−χ)) / [(ζ̄−χ̄)²(η−χ)² 𝓔_b(χχ̄)].
///
/// Slot order (x,y,z,w,f) = (χ̄χ, ζ̄χ, χ̄η, ζ̄η, ·): expanding
/// 𝓔-products of the finite-N bracket in powers of (x−b) shows this is the
/// unique order whose (x−b)-free parts cancel; it also fixes the missing
/// comma in the displayed argument list.
pub fn kappa_singular(
    zeta_bar: Complex64,
    eta: Complex64,
    chi: Complex64,
    chi_bar: Complex64,
    b: f64,
) -> Result<Complex64> {
    check_b("singular_kernel", b)?;
    let denom_e = singular_e_script(chi * chi_bar, chi * chi_bar, b)?;
    if denom_e.norm() == 0.0 {
        return Err(Error::Degenerate {
            op: "singular_kernel",
            msg: format!("script E vanished at chi*chi_bar = {}", chi * chi_bar),
        });
    }
    let dz = zeta_bar - chi_bar;
    let de = eta - chi;
    if dz.norm() >= LIMIT_DELTA_C && de.norm() >= LIMIT_DELTA_C
        && dz.norm() * de.norm() >= LIMIT_DELTA_C * LIMIT_DELTA_C * 4.0
    {
        let s = singular_s(chi_bar * chi, zeta_bar * chi, chi_bar * eta, zeta_bar * eta, dz * de, b)?;
        return Ok(s / (dz * dz * de * de * denom_e));
    }
    if dz.norm() < de.norm() {
        extrapolate_ray(|off| kappa_singular(chi_bar + off, eta, chi, chi_bar, b), dz, LIMIT_DELTA_C)
    } else {
        extrapolate_ray(|off| kappa_singular(zeta_bar, chi + off, chi, chi_bar, b), de, LIMIT_DELTA_C)
    }
}

/// ω^{(sing)}(ζ,ζ̄|χ,χ̄) = (1+(ζ̄−χ̄)(ζ−χ)) |ζ|^{2b} e^{−|ζ|²}.
fn omega_singular(zeta: Complex64, zeta_bar: Complex64, chi: Complex64, chi_bar: Complex64, b: f64) -> Complex64 {
    (Complex64::new(1.0, 0.0) + (zeta_bar - chi_bar) * (zeta - chi))
        * (zeta * zeta_bar).powf(b)
        * (-zeta * zeta_bar).exp()
}

/// K₁₁^{(sing)} = 𝒦^{(sing)} ω^{(sing)}.
pub fn singular_kernel(
    zeta: Complex64,
    zeta_bar: Complex64,
    eta: Complex64,
    chi: Complex64,
    chi_bar: Complex64,
    b: f64,
) -> Result<Complex64> {
    Ok(kappa_singular(zeta_bar, eta, chi, chi_bar, b)? * omega_singular(zeta, zeta_bar, chi, chi_bar, b))
}

/// Ψ₁₁^{(sing)}(ζ₁) = 𝓔_b(|ζ₁|²) |ζ₁|^{2b−2} e^{−|ζ₁|²}.
pub fn singular_psi11(zeta1: Complex64, b: f64) -> Result<Complex64> {
    check_b("singular_psi11", b)?;
    let r2 = zeta1.norm_sqr();
    if r2 == 0.0 && b < 1.0 {
        return Err(Error::domain("singular_psi11", "zeta1 = 0 with b < 1".into()));
    }
    let x = Complex64::new(r2, 0.0);
    Ok(singular_e_script(x, x, b)? * r2.powf(b - 1.0) * (-r2).exp())
}

/// Ψ₁₂^{(sing)}(ζ₁,ζ₂) per the singular display; ζ₁ = ζ₂ extrapolated.
pub fn singular_psi12(zeta1: Complex64, zeta2: Complex64, b: f64) -> Result<Complex64> {
    check_b("singular_psi12", b)?;
    let go = |z2: Complex64| -> Result<Complex64> {
        let dbar = zeta1.conj() - z2.conj();
        let d21 = z2 - zeta1;
        let s = singular_s(
            z2.conj() * zeta1,
            zeta1.conj() * zeta1,
            z2.conj() * z2,
            zeta1.conj() * z2,
            dbar * d21,
            b,
        )?;
        let r1 = zeta1.norm_sqr();
        let r2 = z2.norm_sqr();
        Ok(s / (zeta1 * z2.conj() * dbar * dbar * d21 * d21)
            * r1.powf(b)
            * r2.powf(b)
            * (-(r1 + r2)).exp())
    };
    let off = zeta2 - zeta1;
    if off.norm() >= LIMIT_DELTA_C {
        go(zeta2)
    } else {
        extrapolate_ray(|o| go(zeta1 + o), off, LIMIT_DELTA_C)
    }
}
