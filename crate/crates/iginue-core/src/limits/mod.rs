//! The four scaling limits of the overlap-weighted kernel: bulk and
//! outer/inner edge in the strongly non-unitary regime, the weakly
//! non-unitary (almost-circular) regime, and the singular origin. Includes
//! the rescaling maps z = z(ζ; N), the limiting Ψ₁₁/Ψ₁₂ overlap profiles,
//! and finite-N → limit convergence probes.

mod bulk;
mod edge;
mod singular;
mod weak;

pub mod curves;
pub mod probe;

pub use bulk::{bulk_kernel, bulk_psi11, kappa_bulk, omega_bulk};
pub use edge::{edge_f_script, edge_h, edge_kernel, edge_psi11, edge_psi12, kappa_edge, EdgeSide};
pub use singular::{
    kappa_singular, singular_e_script, singular_kernel, singular_psi11, singular_psi12, singular_s,
};
pub use weak::{kappa_weak, weak_h_script, weak_kernel, weak_l_script, weak_psi11, weak_psi12};

pub use probe::{converge_probe, params_for, rescale, ProbeReport, ProbeRow};

use crate::error::{Error, Result};
use crate::types::KernelMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A scaling regime with its parameters. The local coordinate ζ lives in
/// [`RegimePoint`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "kebab-case")]
pub enum Regime {
    /// Strongly non-unitary bulk: base point p inside the annulus
    /// √b < |p| < √(1+b); the edge angle is absorbed into p's phase.
    Bulk { b: f64, p_re: f64, p_im: f64 },
    /// Outer edge of the annulus at angle θ.
    OuterEdge { b: f64, theta: f64 },
    /// Inner edge (requires b > 0) at angle θ.
    InnerEdge { b: f64, theta: f64 },
    /// Weakly non-unitary (almost-circular) regime with band width ρ.
    Weak { rho: f64, theta: f64 },
    /// Singular origin with fixed insertion b > 0.
    Singular { b: f64 },
}

impl Regime {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Regime::Bulk { b, p_re, p_im } => {
                let p2 = p_re * p_re + p_im * p_im;
                if !(b >= 0.0) {
                    return Err(Error::Config(format!("bulk: b = {b} must be >= 0")));
                }
                if !(p2 > b && p2 < 1.0 + b) {
                    return Err(Error::Config(format!(
                        "bulk: |p|^2 = {p2} outside the annulus ({b}, {})",
                        1.0 + b
                    )));
                }
            }
            Regime::OuterEdge { b, .. } => {
                if !(b >= 0.0) {
                    return Err(Error::Config(format!("outer edge: b = {b} must be >= 0")));
                }
            }
            Regime::InnerEdge { b, .. } => {
                if !(b > 0.0) {
                    return Err(Error::Config(format!("inner edge: b = {b} must be > 0")));
                }
            }
            Regime::Weak { rho, .. } => {
                if !(rho > 0.0) {
                    return Err(Error::Config(format!("weak: rho = {rho} must be > 0")));
                }
            }
            Regime::Singular { b } => {
                if !(b > 0.0) {
                    return Err(Error::Config(format!("singular: b = {b} must be > 0")));
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> Complex64 {
        match *self {
            Regime::Bulk { p_re, p_im, .. } => Complex64::new(p_re, p_im),
            _ => Complex64::new(0.0, 0.0),
        }
    }
}

/// A regime together with a local coordinate ζ.
#[derive(Debug, Clone, Copy)]
pub struct RegimePoint {
    pub regime: Regime,
    pub zeta: Complex64,
}

/// Limit-evaluation bundle: Ψ₁₁ at ζ₁, optional Ψ₁₂ at (ζ₁, ζ₂), and the
/// limiting kernel matrix over the remaining points.
#[derive(Debug, Clone)]
pub struct LimitEval {
    pub psi11: Complex64,
    pub psi12: Option<Complex64>,
    pub kernel_matrix: KernelMatrix,
    pub regime: Regime,
}

/// Ψ₁₁^{(∗)}(ζ₁) for any regime.
pub fn limit_psi11(regime: &Regime, zeta1: Complex64) -> Result<Complex64> {
    regime.validate()?;
    match *regime {
        Regime::Bulk { b, .. } => Ok(Complex64::new(bulk_psi11(regime.p(), b)?, 0.0)),
        Regime::OuterEdge { b, .. } => edge_psi11(zeta1, b, EdgeSide::Outer),
        Regime::InnerEdge { b, .. } => edge_psi11(zeta1, b, EdgeSide::Inner),
        Regime::Weak { rho, .. } => weak_psi11(zeta1, rho),
        Regime::Singular { b } => singular_psi11(zeta1, b),
    }
}

/// Ψ₁₂^{(∗)}(ζ₁, ζ₂) for any regime.
pub fn limit_psi12(regime: &Regime, zeta1: Complex64, zeta2: Complex64) -> Result<Complex64> {
    regime.validate()?;
    match *regime {
        Regime::Bulk { b, .. } => Ok(Complex64::new(bulk_psi11(regime.p(), b)?, 0.0)),
        Regime::OuterEdge { b, .. } => edge_psi12(zeta1, zeta2, b, EdgeSide::Outer),
        Regime::InnerEdge { b, .. } => edge_psi12(zeta1, zeta2, b, EdgeSide::Inner),
        Regime::Weak { rho, .. } => weak_psi12(zeta1, zeta2, rho),
        Regime::Singular { b } => singular_psi12(zeta1, zeta2, b),
    }
}

/// Full limiting kernel K₁₁^{(∗)}(ζ,ζ̄,η,η̄|χ,χ̄) = 𝒦^{(∗)} ω^{(∗)} on
/// physical coordinates.
pub fn limit_kernel(
    regime: &Regime,
    zeta: Complex64,
    eta: Complex64,
    chi: Complex64,
) -> Result<Complex64> {
    regime.validate()?;
    let zb = zeta.conj();
    let cb = chi.conj();
    match *regime {
        Regime::Bulk { .. } => Ok(bulk_kernel(zeta, zb, eta, chi, cb)),
        Regime::OuterEdge { .. } | Regime::InnerEdge { .. } => edge_kernel(zeta, zb, eta, chi, cb),
        Regime::Weak { rho, .. } => weak_kernel(zeta, zb, eta, chi, cb, rho),
        Regime::Singular { b } => singular_kernel(zeta, zb, eta, chi, cb, b),
    }
}

/// Kernel matrix over limit coordinates, conditioned at χ.
pub fn limit_kernel_matrix(
    regime: &Regime,
    chi: Complex64,
    zetas: &[Complex64],
) -> Result<KernelMatrix> {
    let k = zetas.len();
    let mut entries = ndarray::Array2::from_elem((k, k), Complex64::new(0.0, 0.0));
    for (i, &zi) in zetas.iter().enumerate() {
        for (j, &zj) in zetas.iter().enumerate() {
            entries[[i, j]] = limit_kernel(regime, zi, zj, chi)?;
        }
    }
    Ok(KernelMatrix::from_entries(entries))
}

/// Ray-extrapolated evaluation of a function with a removable singularity
/// at offset → 0. Nodes sit outside the cancellation zone; a quartic
/// polynomial in the ray parameter is evaluated at the true offset.
pub(crate) fn extrapolate_ray<F>(f: F, offset: Complex64, window: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let dir = if offset == Complex64::new(0.0, 0.0) {
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2)
    } else {
        offset / offset.norm()
    };
    let mut xs = Vec::with_capacity(5);
    let mut vs = Vec::with_capacity(5);
    let mut s = 2.0 * window;
    for _ in 0..5 {
        xs.push(s);
        vs.push(f(s * dir)?);
        s *= 1.5;
    }
    let at = offset.norm();
    let m = vs.len();
    for level in 1..m {
        for i in 0..m - level {
            vs[i] = ((at - xs[i + level]) * vs[i] + (xs[i] - at) * vs[i + 1])
                / (xs[i] - xs[i + level]);
        }
    }
    Ok(vs[0])
}

/// Coincidence window for the limit kernels (their numerators cancel like
/// the fourth power of the offset).
pub(crate) const LIMIT_DELTA_C: f64 = 1e-2;
