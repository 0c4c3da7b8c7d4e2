//! Truncated generalized exponentials e_n^{(α)}(z) = Σ_{k=0}^n z^k/Γ(k+α+1),
//! their shifted variant 𝔢_n^{(α)}(z|x) = e_n^{(α)}(z) + (1/Γ(α))/(x−α),
//! and overflow-stabilized evaluation for |z| ~ N.

use crate::error::{Error, Result};
use crate::specfun::gamma::{ln_gamma, reciprocal_gamma};
use crate::stabilized::StabilizedValue;
use crate::types::AlphaParam;
use num_complex::Complex64;

/// e_n^{(α)}(z); the empty sum at n = −1 is 0.
pub fn trunc_exp(n: i64, alpha: AlphaParam, z: Complex64) -> Complex64 {
    if n < 0 {
        return Complex64::new(0.0, 0.0);
    }
    let a = alpha.value();
    // term recurrence t_k = t_{k-1} z/(k+α), Kahan-compensated sum
    let mut term = Complex64::new(reciprocal_gamma(a + 1.0), 0.0);
    let mut sum = term;
    let mut comp = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        term = term * z / (k as f64 + a);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Stabilized e_n^{(α)}(z); equal to [`trunc_exp`] wherever that does not
/// overflow, but safe for |z| up to thousands.
pub fn trunc_exp_stabilized(n: i64, alpha: AlphaParam, z: Complex64) -> StabilizedValue {
    trunc_exp_stab_pair(n, alpha, z).0
}

/// (e_n, e_{n+1}) in one pass; the kernels always need both.
pub(crate) fn trunc_exp_stab_pair(
    n: i64,
    alpha: AlphaParam,
    z: Complex64,
) -> (StabilizedValue, StabilizedValue) {
    let a = alpha.value();
    if n < -1 {
        return (StabilizedValue::ZERO, StabilizedValue::ZERO);
    }
    let mut term = StabilizedValue::from_exponent(Complex64::new(-ln_gamma(a + 1.0), 0.0));
    if n == -1 {
        // e_{-1} = 0, e_0 = 1/Γ(α+1)
        return (StabilizedValue::ZERO, term);
    }
    let mut sum = term;
    for k in 1..=n {
        term = term.mul_c(z / (k as f64 + a));
        sum = sum.add(&term);
    }
    let next = sum.add(&term.mul_c(z / ((n + 1) as f64 + a)));
    (sum, next)
}

/// 𝔢_n^{(α)}(z|x) = e_n^{(α)}(z) + (1/Γ(α)) / (x − α).
///
/// Hard error at the pole x = α whenever 1/Γ(α) ≠ 0; callers needing the
/// combined finite quantity go through `finite_kernel::f_alpha`, where the
/// pole cancels.
pub fn frak_e(n: i64, alpha: AlphaParam, z: Complex64, x: Complex64) -> Result<Complex64> {
    Ok(trunc_exp(n, alpha, z) + frak_pole_term(alpha, x)?)
}

pub(crate) fn frak_pole_term(alpha: AlphaParam, x: Complex64) -> Result<Complex64> {
    let a = alpha.value();
    let rg = reciprocal_gamma(a);
    if rg == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let d = x - a;
    if d == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole {
            op: "frak_e",
            msg: format!("x = alpha = {a} with 1/Gamma(alpha) != 0"),
        });
    }
    Ok(rg / d)
}

/// Stabilized 𝔢_n^{(α)}(z|x).
pub(crate) fn frak_e_stab(
    n: i64,
    alpha: AlphaParam,
    z: Complex64,
    x: Complex64,
) -> Result<StabilizedValue> {
    let pole = frak_pole_term(alpha, x)?;
    let (e_n, _) = trunc_exp_stab_pair(n, alpha, z);
    Ok(e_n.add(&StabilizedValue::new(pole)))
}

/// Stabilized (𝔢_n, 𝔢_{n+1}).
pub(crate) fn frak_e_stab_pair(
    n: i64,
    alpha: AlphaParam,
    z: Complex64,
    x: Complex64,
) -> Result<(StabilizedValue, StabilizedValue)> {
    let pole = StabilizedValue::new(frak_pole_term(alpha, x)?);
    let (e_n, e_n1) = trunc_exp_stab_pair(n, alpha, z);
    Ok((e_n.add(&pole), e_n1.add(&pole)))
}
