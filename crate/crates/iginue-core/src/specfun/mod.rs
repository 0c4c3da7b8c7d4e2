//! Special functions the kernels are built from: reciprocal gamma,
//! regularized incomplete gamma, the complex error integral F, the band
//! integral L_ρ, the Mittag-Leffler function E_{1,b}, and truncated
//! generalized exponentials (plain, shifted, and overflow-stabilized).
//!
//! All operations are pure; there is no shared state.

mod erf;
mod gamma;
mod mittag;
mod truncexp;

pub use erf::{band_error_l, erfc_complex, error_f};
pub use gamma::{ln_gamma, reciprocal_gamma, regularized_gamma_q, sin_pi};
pub use mittag::mittag_leffler;
pub use truncexp::{frak_e, trunc_exp, trunc_exp_stabilized};

pub(crate) use truncexp::{frak_e_stab_pair, frak_pole_term, trunc_exp_stab_pair};
