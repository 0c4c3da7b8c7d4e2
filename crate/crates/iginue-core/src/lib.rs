//! Overlap-weighted determinantal kernels for the induced Ginibre unitary
//! ensemble: finite-N correlation functions D11/D12 conditioned on
//! eigenvalue locations and weighted by left/right eigenvector overlaps,
//! their four scaling limits (bulk, outer/inner edge, weakly non-unitary,
//! singular origin), and a Monte Carlo sampling oracle that cross-checks
//! every analytic formula.

pub mod error;
pub mod specfun;
pub mod stabilized;
pub mod types;

mod dd;

pub mod finite_kernel;
pub mod orthopoly;

pub use error::{Error, Result};
pub use stabilized::StabilizedValue;
pub use types::{AlphaParam, ConditionPoint, KernelMatrix, ModelParams};

pub use num_complex::Complex64;
