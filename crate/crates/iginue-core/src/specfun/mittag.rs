//! Two-parametric Mittag-Leffler function E_{1,b}(z) = Σ_k z^k/Γ(k+b).
//!
//! Three regimes:
//! - |z| small enough that the alternating tail costs at most ~15 digits:
//!   direct series in double-double arithmetic (Kahan would not survive the
//!   e^{|z|} intermediate growth on the imaginary axis);
//! - Re z < 0 with less cancellation after the Kummer transformation
//!   E_{1,b}(z) = e^z (b−1)/Γ(b) Σ_k (−z)^k/((b−1+k) k!): used when it loses
//!   fewer digits than the direct series;
//! - |z| large: the asymptotic form E_{1,b}(z) = e^z z^{1−b} − Σ_{k≥1}
//!   z^{-k}/Γ(b−k), truncated at its smallest term (error ~ e^{-|z|}).

use crate::dd::CDd;
use crate::error::{Error, Result};
use crate::specfun::gamma::reciprocal_gamma;
use num_complex::Complex64;

const SERIES_STOP_REL: f64 = 1e-16;
const SERIES_STOP_RUN: usize = 30;
const SERIES_MAX_TERMS: usize = 4_000;
const ASYMPTOTIC_NORM: f64 = 36.5;

pub fn mittag_leffler(b: f64, z: Complex64) -> Result<Complex64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::domain("mittag_leffler", format!("b = {b} must be > 0")));
    }
    let r = z.norm();
    if r >= ASYMPTOTIC_NORM {
        return Ok(asymptotic(b, z));
    }
    // projected digit loss of each series: (r ∓ Re z) · log10 e
    if z.re >= 0.0 || r + z.re > r - z.re {
        Ok(series_direct(b, z)?)
    } else {
        Ok(series_kummer(b, z)?)
    }
}

/// Direct series in double-double; stops after `SERIES_STOP_RUN` consecutive
/// terms below `SERIES_STOP_REL` of the partial sum.
fn series_direct(b: f64, z: Complex64) -> Result<Complex64> {
    let mut term = CDd::from_c64(Complex64::new(reciprocal_gamma(b), 0.0));
    let mut sum = term;
    let mut small_run = 0usize;
    for k in 0..SERIES_MAX_TERMS {
        term = term.mul_c64(z).div_f64(k as f64 + b);
        sum = sum.add(term);
        if term.norm_est() <= SERIES_STOP_REL * sum.norm_est().max(f64::MIN_POSITIVE) {
            small_run += 1;
            if small_run >= SERIES_STOP_RUN {
                return Ok(sum.to_c64());
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::Convergence {
        op: "mittag_leffler",
        msg: format!("series stalled at b={b}, z={z}"),
    })
}

/// e^z (b−1)/Γ(b) Σ_k (−z)^k/((b−1+k) k!); the sum has Re(−z) > 0 here.
fn series_kummer(b: f64, z: Complex64) -> Result<Complex64> {
    if b == 1.0 {
        return Ok(z.exp());
    }
    let mz = -z;
    // c_k = (−z)^k/k!, accumulated with the (b−1)/(b−1+k) weight
    let mut c = CDd::from_c64(Complex64::new(1.0, 0.0));
    let mut sum = CDd::from_c64(Complex64::new(1.0 / (b - 1.0), 0.0));
    let mut small_run = 0usize;
    let mut done = false;
    for k in 1..SERIES_MAX_TERMS {
        c = c.mul_c64(mz).div_f64(k as f64);
        let term = c.div_f64(b - 1.0 + k as f64);
        sum = sum.add(term);
        if term.norm_est() <= SERIES_STOP_REL * sum.norm_est().max(f64::MIN_POSITIVE) {
            small_run += 1;
            if small_run >= SERIES_STOP_RUN {
                done = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if !done {
        return Err(Error::Convergence {
            op: "mittag_leffler",
            msg: format!("Kummer series stalled at b={b}, z={z}"),
        });
    }
    Ok(z.exp() * (b - 1.0) * reciprocal_gamma(b) * sum.to_c64())
}

/// e^z z^{1−b} − Σ_{k≥1} z^{−k}/Γ(b−k), truncated at the smallest term.
fn asymptotic(b: f64, z: Complex64) -> Complex64 {
    let exp_part = (z + (1.0 - b) * z.ln()).exp();
    let inv = z.inv();
    let mut tail = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..=80 {
        zk *= inv;
        let term = zk * reciprocal_gamma(b - k as f64);
        let mag = term.norm();
        if mag > last {
            break;
        }
        tail += term;
        last = if mag > 0.0 { mag } else { last };
    }
    exp_part - tail
}
