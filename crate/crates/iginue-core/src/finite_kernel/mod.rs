//! Finite-N overlap-weighted kernel machinery: the weights ω and ϖ, the
//! f/Φ/μ families from the moment-method construction, the raw double-sum
//! kernel G_{N−1}, the simplified three-term kernel, and the weighted
//! correlation functions D₁₁ and D₁₂.

mod correlation;
mod kernel;

pub use correlation::{d11, d12, d12_decoupled, w_oracle, w_shift_residual};
pub use kernel::{build_k11_matrix, k11_finite, kernel_i, simplified_kernel_terms};



use crate::error::{Error, Result};
use crate::specfun::{frak_pole_term, ln_gamma, reciprocal_gamma, trunc_exp, trunc_exp_stab_pair};
use crate::stabilized::StabilizedValue;
use crate::types::AlphaParam;
use num_complex::Complex64;

pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_power_branch(op: &'static str, base: Complex64, alpha: AlphaParam) -> Result<()> {
    if !alpha.is_integer() && base.im == 0.0 && base.re < 0.0 {
        return Err(Error::BranchCut {
            op,
            msg: format!("({base})^alpha with non-integer alpha = {}", alpha.value()),
        });
    }
    Ok(())
}

/// Principal-branch power (zw)^α; integer α reduces to exact powi.
pub(crate) fn alpha_power(base: Complex64, alpha: AlphaParam) -> Complex64 {
    let a = alpha.value();
    if alpha.is_integer() && a.abs() <= 64.0 {
        base.powi(a as i32)
    } else {
        base.powf(a)
    }
}

/// Overlap-deformed weight ω(z,w|u,v) = (1+(z−u)(w−v)) (zw)^α e^{−zw}.
pub fn weight_omega(
    z: Complex64,
    w: Complex64,
    u: Complex64,
    v: Complex64,
    alpha: AlphaParam,
) -> Result<Complex64> {
    check_power_branch("weight_omega", z * w, alpha)?;
    Ok((ONE + (z - u) * (w - v)) * alpha_power(z * w, alpha) * (-z * w).exp())
}

/// Symmetrized Gaussian weight ϖ(z,w) = (zw)^α e^{−(|z|²+|w|²)/2}.
pub fn weight_varpi(z: Complex64, w: Complex64, alpha: AlphaParam) -> Result<Complex64> {
    Ok(varpi_stab(z, w, alpha)?.collapse())
}

pub(crate) fn varpi_stab(z: Complex64, w: Complex64, alpha: AlphaParam) -> Result<StabilizedValue> {
    let zw = z * w;
    check_power_branch("weight_varpi", zw, alpha)?;
    if zw == ZERO {
        let a = alpha.value();
        return if a > 0.0 {
            Ok(StabilizedValue::ZERO)
        } else if a == 0.0 {
            Ok(StabilizedValue::from_exponent(Complex64::new(
                -(z.norm_sqr() + w.norm_sqr()) / 2.0,
                0.0,
            )))
        } else {
            Err(Error::domain("weight_varpi", format!("zw = 0 with alpha = {a} < 0")))
        };
    }
    let expo = alpha.value() * zw.ln() - (z.norm_sqr() + w.norm_sqr()) / 2.0;
    Ok(StabilizedValue::from_exponent(expo))
}

/// Analytic continuation of ϖ in the independent-variable convention:
/// (zw)^α e^{−zw}. Coincides with ϖ on physical pairs (w = conj z), and is
/// the form the decoupling map T̂ acts on.
pub(crate) fn varpi_analytic_stab(
    z: Complex64,
    w: Complex64,
    alpha: AlphaParam,
) -> Result<StabilizedValue> {
    let zw = z * w;
    check_power_branch("weight_varpi", zw, alpha)?;
    if zw == ZERO {
        return varpi_stab(z, w, alpha);
    }
    Ok(StabilizedValue::from_exponent(alpha.value() * zw.ln() - zw))
}

/// ω(z̄,z|λ̄,λ) in stabilized form; this is the SK1 weight factor.
pub(crate) fn omega_stab(
    zbar: Complex64,
    z: Complex64,
    lambda_bar: Complex64,
    lambda: Complex64,
    alpha: AlphaParam,
) -> Result<StabilizedValue> {
    let zw = zbar * z;
    check_power_branch("weight_omega", zw, alpha)?;
    if zw == ZERO {
        return Ok(StabilizedValue::new(
            weight_omega(zbar, z, lambda_bar, lambda, alpha).unwrap_or(ZERO),
        ));
    }
    let expo = alpha.value() * zw.ln() - zw;
    Ok(StabilizedValue::from_exponent(expo)
        .mul_c(ONE + (zbar - lambda_bar) * (z - lambda)))
}

/// f_n^{(α)}(x), the norm ratio of the overlap-deformed planar polynomials.
///
/// Evaluated in the rearranged form
/// f_n = ((x−α)/x)[(n+α+1) x^n/Γ(n+α+1) + (n+α+1−x) e_{n−1}(x)]
///       + (n+α+1−x)/(x Γ(α)),
/// which is finite through x = α and keeps the x ≈ n+α+1 cancellation
/// explicit. Only pole: x = 0.
pub fn f_alpha(n: i64, alpha: AlphaParam, x: Complex64) -> Result<Complex64> {
    if x == ZERO {
        return Err(Error::Pole { op: "f_alpha", msg: "x = 0".into() });
    }
    if n < 0 {
        return Err(Error::domain("f_alpha", format!("n = {n} must be >= 0")));
    }
    let a = alpha.value();
    if n == 0 {
        return Ok(Complex64::new(reciprocal_gamma(a + 1.0), 0.0));
    }
    let nf = n as f64;
    let c = nf + a + 1.0;
    let top = x.powi(n as i32) * reciprocal_gamma(nf + a + 1.0) * c
        + (c - x) * trunc_exp(n - 1, alpha, x);
    Ok((x - a) / x * top + (c - x) / x * reciprocal_gamma(a))
}

/// Stabilized f_n^{(α)}(x) for arguments where e_{n−1}(x) overflows.
pub(crate) fn f_alpha_stab(n: i64, alpha: AlphaParam, x: Complex64) -> Result<StabilizedValue> {
    if x == ZERO {
        return Err(Error::Pole { op: "f_alpha", msg: "x = 0".into() });
    }
    let a = alpha.value();
    if n == 0 {
        return Ok(StabilizedValue::from_exponent(Complex64::new(-ln_gamma(a + 1.0), 0.0)));
    }
    let nf = n as f64;
    let c = nf + a + 1.0;
    let power = StabilizedValue::from_exponent(nf * x.ln() - ln_gamma(nf + a + 1.0)).mul_c(c.into());
    let (e_prev, _) = trunc_exp_stab_pair(n - 1, alpha, x);
    let top = power.add(&e_prev.mul_c(c - x));
    let tail = StabilizedValue::new((c - x) / x * reciprocal_gamma(a));
    Ok(top.mul_c((x - a) / x).add(&tail))
}

/// Literal Eq.-(fa) form of f_n through 𝔢; pole at x = α. Oracle for the
/// production rearrangement.
pub fn f_alpha_raw(n: i64, alpha: AlphaParam, x: Complex64) -> Result<Complex64> {
    if x == ZERO {
        return Err(Error::Pole { op: "f_alpha_raw", msg: "x = 0".into() });
    }
    let a = alpha.value();
    let pole = frak_pole_term(alpha, x).map_err(|_| Error::Pole {
        op: "f_alpha_raw",
        msg: format!("x = alpha = {a}"),
    })?;
    let nf = n as f64;
    let fe_n = trunc_exp(n, alpha, x) + pole;
    let fe_prev = trunc_exp(n - 1, alpha, x) + pole;
    Ok((x - a) / x * ((nf + a + 1.0) * fe_n - x * fe_prev))
}

const F_DEGENERATE_EPS: f64 = 1e-280;

fn f_sequence(n_max: i64, alpha: AlphaParam, x: Complex64, op: &'static str) -> Result<Vec<Complex64>> {
    let mut fs = Vec::with_capacity(n_max as usize + 1);
    for k in 0..=n_max {
        let f = f_alpha(k, alpha, x)?;
        if f.norm() < F_DEGENERATE_EPS {
            return Err(Error::Degenerate { op, msg: format!("f_{k}({x}) vanished") });
        }
        fs.push(f);
    }
    Ok(fs)
}

/// Φ_n^{(α)}(x) by the closed form; Φ_{−1} = 0.
pub fn phi_alpha(n: i64, alpha: AlphaParam, x: Complex64) -> Result<Complex64> {
    if n < 0 {
        return Ok(ZERO);
    }
    let a = alpha.value();
    if x == ZERO {
        return Err(Error::Pole { op: "phi_alpha", msg: "x = 0".into() });
    }
    // the closed form has a removable singularity at x = α; fall back to the
    // direct sum in a small window around it
    if (x - a).norm() < 1e-8 * x.norm().max(1.0) {
        return phi_alpha_direct(n, alpha, x);
    }
    let f_next = f_alpha(n + 1, alpha, x)?;
    if f_next.norm() < F_DEGENERATE_EPS {
        return Err(Error::Degenerate { op: "phi_alpha", msg: format!("f_{}({x}) vanished", n + 1) });
    }
    let gamma_a1 = 1.0 / reciprocal_gamma(a + 1.0);
    Ok(gamma_a1 * (x - (a + 1.0)) / ((x - a) * x)
        + (n as f64 + a + 2.0 - x) / (x * (x - a) * f_next))
}

/// Direct-sum Φ_n (oracle): Σ_{k≤n} x^k/(Γ(k+α+2) f_k f_{k+1}).
pub fn phi_alpha_direct(n: i64, alpha: AlphaParam, x: Complex64) -> Result<Complex64> {
    if n < 0 {
        return Ok(ZERO);
    }
    if x == ZERO {
        return Err(Error::Pole { op: "phi_alpha", msg: "x = 0".into() });
    }
    let a = alpha.value();
    let fs = f_sequence(n + 1, alpha, x, "phi_alpha")?;
    let mut term_front = Complex64::new(reciprocal_gamma(a + 2.0), 0.0); // x^k/Γ(k+α+2)
    let mut sum = ZERO;
    for k in 0..=n as usize {
        sum += term_front / (fs[k] * fs[k + 1]);
        term_front = term_front * x / (k as f64 + a + 2.0);
    }
    Ok(sum)
}

/// μ_n^{(α)}(x,t) = Σ_{k=0}^n f_k^{(α)}(x) t^k by direct summation.
pub fn mu_partial(n: i64, alpha: AlphaParam, x: Complex64, t: Complex64) -> Result<Complex64> {
    if n < 0 {
        return Ok(ZERO);
    }
    let mut sum = ZERO;
    let mut tp = ONE;
    for k in 0..=n {
        sum += f_alpha(k, alpha, x)? * tp;
        tp *= t;
    }
    Ok(sum)
}

/// Closed form of μ_{n}^{(α)}(x,t) (oracle); pole at t = 1, needs x ∉ {0, α}.
pub fn mu_partial_closed(
    n: i64,
    alpha: AlphaParam,
    x: Complex64,
    t: Complex64,
) -> Result<Complex64> {
    let a = alpha.value();
    let big_n = n + 1;
    let nf = big_n as f64;
    if (t - ONE).norm() == 0.0 {
        return Err(Error::Pole { op: "mu_partial_closed", msg: "t = 1".into() });
    }
    let pole = frak_pole_term(alpha, x)?;
    let fe = |m: i64, z: Complex64| trunc_exp(m, alpha, z) + pole;
    let omt = ONE - t;
    let xt_pow = (x * t).powi(big_n as i32);
    let term1 = fe(big_n - 1, x * t) / (omt * omt);
    let term2 = xt_pow * reciprocal_gamma(nf + a) / omt;
    let term3 = t.powi(big_n as i32) * ((nf + a + 1.0 - x) - (nf + a - x) * t) / (omt * omt)
        * fe(big_n - 1, x);
    Ok((x - a) / x * (term1 - term2 - term3))
}

/// Closed form of ∂_t μ_n^{(α)}(x,t) (oracle).
pub fn mu_partial_dt(n: i64, alpha: AlphaParam, x: Complex64, t: Complex64) -> Result<Complex64> {
    let a = alpha.value();
    let big_n = n + 1;
    let nf = big_n as f64;
    if (t - ONE).norm() == 0.0 || t == ZERO {
        return Err(Error::Pole { op: "mu_partial_dt", msg: format!("t = {t}") });
    }
    let omt = ONE - t;
    let mu = mu_partial(n, alpha, x, t)?;
    let ca = (x - a) / x;
    let e_xt = trunc_exp(big_n - 1, alpha, x * t);
    let e_x = trunc_exp(big_n - 1, alpha, x);
    let term1 = (nf / t + 2.0 / omt) * mu;
    let term2 = ca * (nf + a - x * t) / (t * omt * omt) * e_xt;
    let term3 = ca * t.powi(big_n as i32) * (nf + a - x) / (omt * omt) * e_x;
    // the (x−α) of the α/Γ(α+1) piece cancels the ca prefactor analytically
    let inner = ca * (x * t).powi(big_n as i32) * reciprocal_gamma(nf + a) * omt
        + reciprocal_gamma(a) * (nf + a - x) * (ONE - t.powi(big_n as i32 + 1)) / x;
    let term4 = inner / (t * omt * omt);
    Ok(term1 - term2 + term3 - term4)
}

/// Raw double-sum kernel G_{N−1}^{(α)}(x|y,z) (O(N²) oracle).
pub fn g_double_sum(
    n: usize,
    alpha: AlphaParam,
    x: Complex64,
    y: Complex64,
    z: Complex64,
) -> Result<Complex64> {
    if n < 1 {
        return Err(Error::domain("g_double_sum", format!("N = {n} must be >= 1")));
    }
    let a = alpha.value();
    let fs = f_sequence(n as i64, alpha, x, "g_double_sum")?;
    // suffix sums S_j = Σ_{k=j}^{N-1} x^k / (Γ(k+α+2) f_k f_{k+1})
    let mut terms = Vec::with_capacity(n);
    let mut front = Complex64::new(reciprocal_gamma(a + 2.0), 0.0);
    for k in 0..n {
        terms.push(front / (fs[k] * fs[k + 1]));
        front = front * x / (k as f64 + a + 2.0);
    }
    let mut suffix = vec![ZERO; n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1] + terms[k];
    }
    let mut ypow = vec![ONE; n];
    let mut zpow = vec![ONE; n];
    for k in 1..n {
        ypow[k] = ypow[k - 1] * y;
        zpow[k] = zpow[k - 1] * z;
    }
    let mut total = ZERO;
    for nn in 0..n {
        for mm in 0..n {
            total += fs[nn] * fs[mm] * ypow[nn] * zpow[mm] * suffix[nn.max(mm)];
        }
    }
    Ok(total)
}

/// W_N^{(α)}(x,y,z) from the simplification proof (test oracle).
pub fn w_proof_bracket(
    n: i64,
    alpha: AlphaParam,
    x: Complex64,
    y: Complex64,
    z: Complex64,
) -> Result<Complex64> {
    let pole = frak_pole_term(alpha, x)?;
    let fe = |m: i64, arg: Complex64| trunc_exp(m, alpha, arg) + pole;
    Ok(fe(n, x * y) * fe(n, x * z) - (ONE - x * (ONE - y) * (ONE - z)) * fe(n, x * y * z) * fe(n, x))
}
