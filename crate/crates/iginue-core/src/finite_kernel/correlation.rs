//! Weighted correlation functions: D₁₁ (on-diagonal overlap intensity),
//! D₁₂ (off-diagonal, via the Palm-type kernel), and the decoupling-route
//! oracle for D₁₂.

use super::kernel::{kappa11_stab, kappa11_value};
use super::{f_alpha_stab, omega_stab, varpi_analytic_stab, varpi_stab, w_proof_bracket, ONE, ZERO};
use crate::error::{Error, Result};
use crate::types::{AlphaParam, ConditionPoint, ModelParams};
use crate::types::det_complex;
use ndarray::Array2;
use num_complex::Complex64;

/// D₁₁^{(N,k)}(z₁,…,z_k) = f_{N−1}(z₁z̄₁) ϖ(z̄₁,z₁)
/// det_{2≤i,j≤k} K₁₁^{(N−1)}(z_i,z̄_i,z_j,z̄_j|z₁,z̄₁).
pub fn d11(k: usize, params: &ModelParams, points: &[Complex64]) -> Result<Complex64> {
    if points.len() != k {
        return Err(Error::domain("d11", format!("expected {k} points, got {}", points.len())));
    }
    if k < 1 || k > params.n - 1 {
        return Err(Error::domain("d11", format!("need 1 <= k <= N-1, got k={k}, N={}", params.n)));
    }
    let pairs: Vec<(Complex64, Complex64)> = points.iter().map(|&z| (z, z.conj())).collect();
    d11_formal(params, &pairs)
}

/// D₁₁ on formal (z, z̄) pairs; the decoupling map acts on these.
pub(crate) fn d11_formal(
    params: &ModelParams,
    pairs: &[(Complex64, Complex64)],
) -> Result<Complex64> {
    let alpha = params.alpha;
    let n = params.n;
    let (z1, z1bar) = pairs[0];
    let cond = ConditionPoint::formal(z1, z1bar);
    // the front ϖ must be the analytic form so that T̂ acts correctly on it
    let front = f_alpha_stab(n as i64 - 1, alpha, z1 * z1bar)?
        .mul(&varpi_analytic_stab(z1bar, z1, alpha)?);
    let k = pairs.len();
    let mut entries = Array2::from_elem((k - 1, k - 1), ZERO);
    for i in 1..k {
        for j in 1..k {
            let (zi, zibar) = pairs[i];
            let (zj, zjbar) = pairs[j];
            let kappa = kappa11_stab(n - 1, alpha, zibar, zj, &cond)?;
            let omega = omega_stab(zibar, zi, cond.lambda_bar, cond.lambda, alpha)?;
            let _ = zjbar; // K₁₁ does not read the w̄ slot
            entries[[i - 1, j - 1]] = kappa.mul(&omega).collapse();
        }
    }
    Ok(front.collapse() * det_complex(&entries))
}

/// D₁₂^{(N,k)} via the simplified kernel route (Eq.-free of the |z₁−z₂|=1
/// decoupling pole): −f_{N−1}(z₁z̄₂) ϖ(z₁,z̄₂) ϖ(z̄₁,z₂) 𝒦₁₁^{(N−1)}(z̄₁,z₂|z₁,z̄₂)
/// times the Palm-type determinant for k ≥ 3.
pub fn d12(k: usize, params: &ModelParams, points: &[Complex64]) -> Result<Complex64> {
    if points.len() != k {
        return Err(Error::domain("d12", format!("expected {k} points, got {}", points.len())));
    }
    if k < 2 || k > params.n - 1 {
        return Err(Error::domain("d12", format!("need 2 <= k <= N-1, got k={k}, N={}", params.n)));
    }
    let alpha = params.alpha;
    let n = params.n;
    let z1 = points[0];
    let z2 = points[1];
    // conditioning pair (λ, λ̄) = (z₁, z̄₂): a non-physical pair by design
    let cond = ConditionPoint::formal(z1, z2.conj());
    let front = f_alpha_stab(n as i64 - 1, alpha, z1 * z2.conj())?
        .mul(&varpi_stab(z1, z2.conj(), alpha)?)
        .mul(&varpi_stab(z1.conj(), z2, alpha)?);
    let kappa_base = kappa11_stab(n - 1, alpha, z1.conj(), z2, &cond)?;
    let prefactor = front.mul(&kappa_base).collapse();

    if k == 2 {
        return Ok(-prefactor);
    }
    // K₁₂ matrix over points 3..k
    let kappa_base_v = kappa_base.collapse();
    if kappa_base_v == ZERO {
        return Err(Error::Degenerate {
            op: "d12",
            msg: "kappa11(z1bar, z2 | z1, z2bar) vanished".into(),
        });
    }
    let m = k - 2;
    let mut entries = Array2::from_elem((m, m), ZERO);
    for i in 2..k {
        for j in 2..k {
            let zi = points[i];
            let zj = points[j];
            let om = omega_stab(zi, zi.conj(), z1, z2.conj(), alpha)?.collapse();
            let k_uv = kappa_base_v;
            let k_uj = kappa11_value(n - 1, alpha, z1.conj(), zj, &cond)?;
            let k_iv = kappa11_value(n - 1, alpha, zi.conj(), z2, &cond)?;
            let k_ij = kappa11_value(n - 1, alpha, zi.conj(), zj, &cond)?;
            entries[[i - 2, j - 2]] = om / k_uv * (k_uv * k_ij - k_uj * k_iv);
        }
    }
    Ok(-prefactor * det_complex(&entries))
}

/// Decoupling-route oracle: D₁₂ = −e^{−|z₁−z₂|²}/(1−|z₁−z₂|²) · T̂ D₁₁,
/// where T̂ swaps z̄₁ ↔ z̄₂. Pole at |z₁−z₂| = 1 is an artifact of the
/// factorization; the production route is [`d12`].
pub fn d12_decoupled(k: usize, params: &ModelParams, points: &[Complex64]) -> Result<Complex64> {
    if points.len() != k || k < 2 || k > params.n - 1 {
        return Err(Error::domain("d12_decoupled", format!("bad k = {k}")));
    }
    let sep_sq = (points[0] - points[1]).norm_sqr();
    if (sep_sq - 1.0).abs() < 1e-12 {
        return Err(Error::Pole {
            op: "d12_decoupled",
            msg: format!("|z1-z2|^2 = {sep_sq} at the decoupling pole"),
        });
    }
    let mut pairs: Vec<(Complex64, Complex64)> = points.iter().map(|&z| (z, z.conj())).collect();
    let z1bar = pairs[0].1;
    pairs[0].1 = pairs[1].1;
    pairs[1].1 = z1bar;
    let swapped = d11_formal(params, &pairs)?;
    Ok(-(-sep_sq).exp() / (1.0 - sep_sq) * swapped)
}

/// W_N^{(α)}(x,y,z) from the simplification proof (test oracle for the
/// shift identity).
pub fn w_oracle(
    n: i64,
    alpha: AlphaParam,
    x: Complex64,
    y: Complex64,
    z: Complex64,
) -> Result<Complex64> {
    w_proof_bracket(n, alpha, x, y, z)
}

/// One-sided shift-identity residual of the proof:
/// W_N − [W_{N+1} − corrections] relative to the W scale.
pub fn w_shift_residual(
    n: i64,
    alpha: AlphaParam,
    x: Complex64,
    y: Complex64,
    z: Complex64,
) -> Result<f64> {
    use crate::specfun::{frak_e, ln_gamma};
    let w_n = w_proof_bracket(n, alpha, x, y, z)?;
    let w_n1 = w_proof_bracket(n + 1, alpha, x, y, z)?;
    let g = (-ln_gamma(n as f64 + alpha.value() + 2.0)).exp();
    let fe = |arg: Complex64| frak_e(n + 1, alpha, arg, x);
    let p = (n + 1) as i32;
    let corr = -(x * z).powi(p) * fe(x * y)? * g - (x * y).powi(p) * fe(x * z)? * g
        + x * (ONE - y) * (ONE - z) * (x * x * y * z).powi(p) * g * g
        + (ONE - x * (ONE - y) * (ONE - z))
            * ((x.powi(p) * fe(x * y * z)? + (x * y * z).powi(p) * fe(x)?) * g);
    let rebuilt = w_n1 + corr;
    let scale = w_n.norm().max(w_n1.norm()).max(corr.norm()).max(1e-300);
    Ok((w_n - rebuilt).norm() / scale)
}
