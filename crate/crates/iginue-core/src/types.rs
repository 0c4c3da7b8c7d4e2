//! Shared domain types: the insertion exponent α, ensemble parameters, the
//! conditioned point (λ, λ̄) treated as an independent pair, and kernel
//! matrices with their determinants.

use crate::error::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Insertion exponent α > −1 (= b_N; integer when used for matrix sampling).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaParam(f64);

impl AlphaParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::domain("AlphaParam", format!("alpha = {alpha} must be > -1")));
        }
        Ok(AlphaParam(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Whether matrix sampling is possible (α a nonnegative integer, n = N+α).
    pub fn is_matrix_samplable(self) -> bool {
        self.0 >= 0.0 && self.0 == self.0.round()
    }

    pub fn is_integer(self) -> bool {
        self.0 == self.0.round()
    }
}

/// Ensemble parameters: size N, insertion α, and the rescaling σ² = N·a_N.
///
/// All finite-N kernel formulas use the identity scaling σ = 1; σ² is carried
/// for regime bookkeeping and config echo.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub alpha: AlphaParam,
    pub sigma_sq: f64,
}

impl ModelParams {
    pub fn new(n: usize, alpha: AlphaParam, sigma_sq: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("ModelParams", format!("N = {n} must be >= 2")));
        }
        if !(sigma_sq > 0.0) {
            return Err(Error::domain("ModelParams", format!("sigma_sq = {sigma_sq} must be > 0")));
        }
        Ok(ModelParams { n, alpha, sigma_sq })
    }

    /// Identity scaling σ = 1.
    pub fn unit_scale(n: usize, alpha: AlphaParam) -> Result<Self> {
        Self::new(n, alpha, 1.0)
    }
}

/// The conditioned eigenvalue location (λ, λ̄), with λ̄ an independent
/// variable; λ̄ = conj(λ) in the physical case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionPoint {
    pub lambda: Complex64,
    pub lambda_bar: Complex64,
}

impl ConditionPoint {
    pub fn physical(lambda: Complex64) -> Self {
        ConditionPoint { lambda, lambda_bar: lambda.conj() }
    }

    pub fn formal(lambda: Complex64, lambda_bar: Complex64) -> Self {
        ConditionPoint { lambda, lambda_bar }
    }

    pub fn is_physical(&self) -> bool {
        self.lambda_bar == self.lambda.conj()
    }

    /// x = λ λ̄ (= |λ|² in the physical case).
    pub fn x(&self) -> Complex64 {
        self.lambda * self.lambda_bar
    }
}

/// Determinant of a small complex matrix by partially pivoted LU.
pub fn det_complex(m: &Array2<Complex64>) -> Complex64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "det of non-square matrix");
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut a = m.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut pivot = col;
        let mut best = a[[col, col]].norm();
        for row in col + 1..n {
            let v = a[[row, col]].norm();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for k in 0..n {
                let tmp = a[[col, k]];
                a[[col, k]] = a[[pivot, k]];
                a[[pivot, k]] = tmp;
            }
            det = -det;
        }
        let p = a[[col, col]];
        det *= p;
        for row in col + 1..n {
            let factor = a[[row, col]] / p;
            for k in col..n {
                let sub = factor * a[[col, k]];
                a[[row, k]] -= sub;
            }
        }
    }
    det
}

/// k×k matrix of kernel values together with its determinant.
///
/// The determinant is the cocycle-invariant payload: conjugating entries by
/// any nonvanishing φ(i) leaves it unchanged.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub entries: Array2<Complex64>,
    pub det_value: Complex64,
}

impl KernelMatrix {
    pub fn from_entries(entries: Array2<Complex64>) -> Self {
        let det_value = det_complex(&entries);
        KernelMatrix { entries, det_value }
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    /// Relative residual between the stored determinant and a recomputation.
    pub fn det_residual(&self) -> f64 {
        let fresh = det_complex(&self.entries);
        (fresh - self.det_value).norm() / self.det_value.norm().max(1e-300)
    }

    /// Cocycle conjugation entries[i][j] → φ(i)·entries[i][j]/φ(j).
    pub fn conjugated(&self, phi: &[Complex64]) -> Self {
        assert_eq!(phi.len(), self.size());
        let n = self.size();
        let mut entries = self.entries.clone();
        for i in 0..n {
            for j in 0..n {
                entries[[i, j]] = phi[i] * entries[[i, j]] / phi[j];
            }
        }
        KernelMatrix::from_entries(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn alpha_param_validation() {
        assert!(AlphaParam::new(-1.0).is_err());
        assert!(AlphaParam::new(f64::NAN).is_err());
        assert!(AlphaParam::new(-0.5).unwrap().value() == -0.5);
        assert!(AlphaParam::new(3.0).unwrap().is_matrix_samplable());
        assert!(!AlphaParam::new(0.5).unwrap().is_matrix_samplable());
        assert!(!AlphaParam::new(-0.5).unwrap().is_matrix_samplable());
    }

    #[test]
    fn det_matches_closed_form_2x2() {
        let a = array![
            [Complex64::new(1.0, 2.0), Complex64::new(0.0, 1.0)],
            [Complex64::new(3.0, -1.0), Complex64::new(2.0, 0.5)],
        ];
        let d = det_complex(&a);
        let expected = a[[0, 0]] * a[[1, 1]] - a[[0, 1]] * a[[1, 0]];
        assert!((d - expected).norm() < 1e-14);
    }

    #[test]
    fn det_invariant_under_cocycle() {
        let a = array![
            [Complex64::new(1.0, 0.2), Complex64::new(-0.4, 1.0), Complex64::new(0.3, 0.3)],
            [Complex64::new(2.0, -1.0), Complex64::new(0.5, 0.1), Complex64::new(1.0, 0.0)],
            [Complex64::new(0.0, 0.9), Complex64::new(1.5, -0.2), Complex64::new(-0.7, 0.4)],
        ];
        let km = KernelMatrix::from_entries(a);
        let phi =
            [Complex64::new(2.0, 1.0), Complex64::new(-0.3, 0.7), Complex64::new(0.05, -1.4)];
        let conj = km.conjugated(&phi);
        let rel = (conj.det_value - km.det_value).norm() / km.det_value.norm();
        assert!(rel < 1e-10, "rel={rel}");
        assert!(km.det_residual() == 0.0);
    }
}
