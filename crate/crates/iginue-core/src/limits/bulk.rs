//! Bulk limit in the strongly non-unitary regime.

use crate::error::{Error, Result};
use num_complex::Complex64;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Ψ₁₁^{(bulk)} = Ψ₁₂^{(bulk)} = (|p|²−b)(1+b−|p|²)/|p|² on the open annulus.
pub fn bulk_psi11(p: Complex64, b: f64) -> Result<f64> {
    let p2 = p.norm_sqr();
    if !(p2 > b && p2 < 1.0 + b) {
        return Err(Error::domain(
            "bulk_psi11",
            format!("|p|^2 = {p2} outside the open annulus ({b}, {})", 1.0 + b),
        ));
    }
    Ok((p2 - b) * (1.0 + b - p2) / p2)
}

/// d/dt[(e^t−1)/t] = (t e^t − e^t + 1)/t², by series for small |t|.
fn phi_prime(t: Complex64) -> Complex64 {
    if t.norm() < 0.25 {
        // Σ_{k≥1} k t^{k−1}/(k+1)!
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pow = ONE;
        let mut fact = 1.0; // (k+1)!
        for k in 1..=24 {
            fact *= (k + 1) as f64;
            sum += k as f64 * pow / fact;
            pow *= t;
        }
        sum
    } else {
        let et = t.exp();
        (t * et - et + 1.0) / (t * t)
    }
}

/// Reduced bulk kernel 𝒦^{(bulk)}(ζ̄,η|χ,χ̄).
pub fn kappa_bulk(zeta_bar: Complex64, eta: Complex64, chi: Complex64, chi_bar: Complex64) -> Complex64 {
    phi_prime((zeta_bar - chi_bar) * (eta - chi))
}

/// ω^{(bulk)}(ζ,ζ̄|χ,χ̄) = (1+(ζ−χ)(ζ̄−χ̄)) e^{−(ζ−χ)(ζ̄−χ̄)}.
pub fn omega_bulk(zeta: Complex64, zeta_bar: Complex64, chi: Complex64, chi_bar: Complex64) -> Complex64 {
    let s = (zeta - chi) * (zeta_bar - chi_bar);
    (ONE + s) * (-s).exp()
}

/// K₁₁^{(bulk)} = 𝒦^{(bulk)} ω^{(bulk)}.
pub fn bulk_kernel(
    zeta: Complex64,
    zeta_bar: Complex64,
    eta: Complex64,
    chi: Complex64,
    chi_bar: Complex64,
) -> Complex64 {
    kappa_bulk(zeta_bar, eta, chi, chi_bar) * omega_bulk(zeta, zeta_bar, chi, chi_bar)
}
