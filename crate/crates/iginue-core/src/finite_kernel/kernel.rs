//! The simplified finite-N kernel: I_n, the three reduced terms, the
//! regularized 𝒦₁₁ with coincidence-limit handling, and K₁₁ = 𝒦₁₁·ω.

use super::{f_alpha_stab, omega_stab, varpi_stab, ONE, ZERO};
use crate::error::{Error, Result};
use crate::specfun::{frak_e_stab_pair, ln_gamma, reciprocal_gamma};
use crate::stabilized::StabilizedValue;
use crate::types::{AlphaParam, ConditionPoint, KernelMatrix};
use ndarray::Array2;
use num_complex::Complex64;

/// Coincidence window below which kernels switch to limit evaluation.
pub(crate) const DELTA_C: f64 = 1e-4;

/// I-brackets without their ϖ factors: B_n = 𝔢_n(λz̄|x)𝔢_n(wλ̄|x) −
/// (1−(z̄−λ̄)(w−λ)) 𝔢_n(wz̄|x)𝔢_n(x|x), returned for n and n+1.
fn i_bracket_pair(
    n: i64,
    alpha: AlphaParam,
    zbar: Complex64,
    w: Complex64,
    cond: &ConditionPoint,
) -> Result<(StabilizedValue, StabilizedValue)> {
    let x = cond.x();
    let (a1, a1n) = frak_e_stab_pair(n, alpha, cond.lambda * zbar, x)?;
    let (a2, a2n) = frak_e_stab_pair(n, alpha, w * cond.lambda_bar, x)?;
    let (a3, a3n) = frak_e_stab_pair(n, alpha, w * zbar, x)?;
    let (a4, a4n) = frak_e_stab_pair(n, alpha, x, x)?;
    let cross = ONE - (zbar - cond.lambda_bar) * (w - cond.lambda);
    let b_n = a1.mul(&a2).sub(&a3.mul(&a4).mul_c(cross));
    let b_n1 = a1n.mul(&a2n).sub(&a3n.mul(&a4n).mul_c(cross));
    Ok((b_n, b_n1))
}

/// I_n^{(α)}(z̄,w|λ̄,λ): the bracket times ϖ(z̄,λ)ϖ(λ̄,w), collapsed.
pub fn kernel_i(
    n: i64,
    alpha: AlphaParam,
    zbar: Complex64,
    w: Complex64,
    cond: &ConditionPoint,
) -> Result<Complex64> {
    let (b_n, _) = i_bracket_pair(n, alpha, zbar, w, cond)?;
    let weights = varpi_stab(zbar, cond.lambda, alpha)?
        .mul(&varpi_stab(cond.lambda_bar, w, alpha)?);
    Ok(b_n.mul(&weights).collapse())
}

/// The three reduced kernel terms (𝔦_N, 𝔦𝔦_N, 𝔦𝔦𝔦_N) in stabilized form.
///
/// The ϖ-ratio of the 𝔦 term is cancelled symbolically (its exponentials
/// are identical and the α-powers multiply to equal products), which is what
/// makes the Theorem-3.3 identity exact for every α > −1.
fn term_triple_stab(
    n: usize,
    alpha: AlphaParam,
    zbar: Complex64,
    w: Complex64,
    cond: &ConditionPoint,
) -> Result<(StabilizedValue, StabilizedValue, StabilizedValue)> {
    let a = alpha.value();
    let x = cond.x();
    if x == ZERO {
        return Err(Error::Pole { op: "simplified_kernel_terms", msg: "lambda*lambda_bar = 0".into() });
    }
    let dz = zbar - cond.lambda_bar;
    let dw = w - cond.lambda;
    let scale = zbar.norm().max(w.norm()).max(cond.lambda.norm()).max(1.0);
    if dz.norm() < 1e-13 * scale || dw.norm() < 1e-13 * scale {
        return Err(Error::Coincidence {
            op: "simplified_kernel_terms",
            msg: format!("zbar-lambda_bar = {dz}, w-lambda = {dw}"),
        });
    }
    let nf = n as f64;
    let f_n = f_alpha_stab(n as i64, alpha, x)?;

    let (b_n, b_n1) = i_bracket_pair(n as i64, alpha, zbar, w, cond)?;
    let numer = b_n1.mul_c(Complex64::new(nf + a + 1.0, 0.0)).sub(&b_n.mul_c(x));
    let term_i = numer
        .div(&f_n)
        .mul_c((x - a) / (x * dz * dz * dw * dw));

    let zw = zbar * w;
    let term_ii = if zw == ZERO {
        StabilizedValue::ZERO
    } else {
        let power = StabilizedValue::from_exponent(
            (nf + 1.0) * zw.ln() - ln_gamma(nf + a + 1.0),
        );
        let (_, fe_next) = frak_e_stab_pair(n as i64, alpha, x, x)?;
        power
            .mul(&fe_next)
            .div(&f_n)
            .mul_c(-(x - a) / (x * dz * dw))
    };

    let rg = reciprocal_gamma(a);
    let term_iii = if rg == 0.0 {
        StabilizedValue::ZERO
    } else {
        if x == Complex64::new(a, 0.0) {
            return Err(Error::Pole {
                op: "simplified_kernel_terms",
                msg: format!("x = alpha = {a}"),
            });
        }
        StabilizedValue::new(-rg / ((x - a) * dz * dw))
    };
    Ok((term_i, term_ii, term_iii))
}

/// (𝔦_N, 𝔦𝔦_N, 𝔦𝔦𝔦_N); their sum is the reduced kernel 𝒦₁₁^{(N)}(z̄,w|λ,λ̄).
pub fn simplified_kernel_terms(
    n: usize,
    alpha: AlphaParam,
    zbar: Complex64,
    w: Complex64,
    cond: &ConditionPoint,
) -> Result<(Complex64, Complex64, Complex64)> {
    let (a, b, c) = term_triple_stab(n, alpha, zbar, w, cond)?;
    Ok((a.collapse(), b.collapse(), c.collapse()))
}

fn kappa11_direct(
    n: usize,
    alpha: AlphaParam,
    zbar: Complex64,
    w: Complex64,
    cond: &ConditionPoint,
) -> Result<StabilizedValue> {
    let (a, b, c) = term_triple_stab(n, alpha, zbar, w, cond)?;
    Ok(a.add(&b).add(&c))
}

/// Stabilized evaluation of G_{N−1}^{(α)}(x|y,z) through the prefix-sum
/// identity G = Σ_k T_k μ_k(y) μ_k(z), T_k = x^k/(Γ(k+α+2) f_k f_{k+1}).
///
/// Entire in (y, z), so it is exact on the coincidence set where the
/// three-term split degenerates into 0/0 cancellations. O(N·max-series-len).
fn g_prefix_stab(
    n: usize,
    alpha: AlphaParam,
    x: Complex64,
    y: Complex64,
    z: Complex64,
) -> Result<StabilizedValue> {
    let a = alpha.value();
    if x == ZERO {
        return Err(Error::Pole { op: "kappa11", msg: "lambda*lambda_bar = 0".into() });
    }
    let lnx = x.ln();
    let mut total = StabilizedValue::ZERO;
    let mut mu_y = StabilizedValue::ZERO;
    let mut mu_z = StabilizedValue::ZERO;
    let mut ypow = StabilizedValue::new(ONE);
    let mut zpow = StabilizedValue::new(ONE);
    let mut f_prev = f_alpha_stab(0, alpha, x)?;
    for k in 0..n {
        let kf = k as f64;
        mu_y = mu_y.add(&f_prev.mul(&ypow));
        mu_z = mu_z.add(&f_prev.mul(&zpow));
        let f_next = f_alpha_stab(k as i64 + 1, alpha, x)?;
        let t_k = StabilizedValue::from_exponent(kf * lnx - ln_gamma(kf + a + 2.0))
            .div(&f_prev.mul(&f_next));
        total = total.add(&t_k.mul(&mu_y).mul(&mu_z));
        f_prev = f_next;
        ypow = ypow.mul_c(y);
        zpow = zpow.mul_c(z);
    }
    Ok(total)
}

/// Regularized reduced kernel 𝒦₁₁^{(N)}: the three-term split away from the
/// coincidence set; inside |z̄−λ̄| or |w−λ| < δ_c it switches to the
/// entire-function double-sum route, which has no singularity to cancel.
pub(crate) fn kappa11_stab(
    n: usize,
    alpha: AlphaParam,
    zbar: Complex64,
    w: Complex64,
    cond: &ConditionPoint,
) -> Result<StabilizedValue> {
    let dz = zbar - cond.lambda_bar;
    let dw = w - cond.lambda;
    // the split cancels like 1/(dz·dw), so the window is on the product too
    if dz.norm() >= DELTA_C && dw.norm() >= DELTA_C && dz.norm() * dw.norm() >= DELTA_C {
        return kappa11_direct(n, alpha, zbar, w, cond);
    }
    g_prefix_stab(n, alpha, cond.x(), zbar / cond.lambda_bar, w / cond.lambda)
}

/// K₁₁^{(N)}(z,z̄,w,w̄|λ,λ̄) = 𝒦₁₁^{(N)}(z̄,w|λ,λ̄) ω(z̄,z|λ̄,λ).
///
/// The w̄ slot does not enter the formula; it is kept for signature symmetry
/// with the determinantal usage.
pub fn k11_finite(
    n: usize,
    alpha: AlphaParam,
    z: Complex64,
    zbar: Complex64,
    w: Complex64,
    _wbar: Complex64,
    cond: &ConditionPoint,
) -> Result<Complex64> {
    let kappa = kappa11_stab(n, alpha, zbar, w, cond)?;
    let omega = omega_stab(zbar, z, cond.lambda_bar, cond.lambda, alpha)?;
    Ok(kappa.mul(&omega).collapse())
}

/// Matrix of K₁₁^{(N)} values over physical points, with determinant.
pub fn build_k11_matrix(
    n: usize,
    alpha: AlphaParam,
    cond: &ConditionPoint,
    points: &[Complex64],
) -> Result<KernelMatrix> {
    let k = points.len();
    let mut entries = Array2::from_elem((k, k), ZERO);
    for (i, &zi) in points.iter().enumerate() {
        for (j, &zj) in points.iter().enumerate() {
            entries[[i, j]] = k11_finite(n, alpha, zi, zi.conj(), zj, zj.conj(), cond)?;
        }
    }
    Ok(KernelMatrix::from_entries(entries))
}

/// ω-free reduced kernel, collapsed (test and D₁₂ plumbing).
pub(crate) fn kappa11_value(
    n: usize,
    alpha: AlphaParam,
    zbar: Complex64,
    w: Complex64,
    cond: &ConditionPoint,
) -> Result<Complex64> {
    Ok(kappa11_stab(n, alpha, zbar, w, cond)?.collapse())
}
