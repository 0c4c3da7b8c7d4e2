//! Independent construction of the bi-orthogonal polynomial system from the
//! moment matrix of the overlap-deformed planar weight, via LDU
//! decomposition. Provides the brute-force kernel oracle and the
//! non-standard three-term-recurrence verifier.
//!
//! Moment matrix (reduced form, M_{i,j} = Γ(i+α+1) μ_{i,j}):
//!   μ_{i,i} = α+i+2+x,  μ_{i,i+1} = −λ(i+α+1),  μ_{i+1,i} = −λ̄,  x = λλ̄.
//! The superdiagonal carries λ and the subdiagonal λ̄, the placement that is
//! forced by the LDU recurrences u_{p+1} = −λ(p+α+1)/d_p, ℓ_{p+1} = −λ̄/d_p
//! and by the triangular inverses behind the polynomial coefficients.

use crate::error::{Error, Result};
use crate::finite_kernel::f_alpha;
use crate::specfun::reciprocal_gamma;
use crate::types::{AlphaParam, ConditionPoint};
use ndarray::Array2;
use num_complex::Complex64;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Tridiagonal moment matrix M_{i,j} = ⟨z^i, z^j⟩_ω and its reduced form μ.
#[derive(Debug, Clone)]
pub struct MomentMatrix {
    pub size: usize,
    pub alpha: AlphaParam,
    pub cond: ConditionPoint,
    pub entries: Array2<Complex64>,
    pub reduced: Array2<Complex64>,
}

/// Bidiagonal LDU factors of the reduced moment matrix.
#[derive(Debug, Clone)]
pub struct LduFactors {
    /// d_p, p = 0..size
    pub d: Vec<Complex64>,
    /// ℓ_p at row p (subdiagonal); ell[0] is unused
    pub ell: Vec<Complex64>,
    /// u_p at column p (superdiagonal); u[0] is unused
    pub u: Vec<Complex64>,
}

/// Coefficient tables of P_k, Q_k and the squared norms D_m.
#[derive(Debug, Clone)]
pub struct PolyPair {
    pub alpha: AlphaParam,
    pub cond: ConditionPoint,
    /// p_coeffs[k][j]: coefficient of z^j in P_k, = λ^{k−j} f_j/f_k
    pub p_coeffs: Vec<Vec<Complex64>>,
    /// q_coeffs[k][j]: coefficient of z^j in Q_k (same λ-power structure)
    pub q_coeffs: Vec<Vec<Complex64>>,
    /// norms[m] = ⟨P_m, Q_m⟩_ω = Γ(m+α+2) f_{m+1}/f_m
    pub norms: Vec<Complex64>,
    /// f_0..f_size at x = λλ̄
    pub fs: Vec<Complex64>,
}

/// f_k(x) sequence with the x = 0 limit f_k(0) = (k+α+1)/Γ(α+2) built in
/// (the public f_alpha treats x = 0 as a pole, but the polynomial system is
/// perfectly regular at λ = 0).
fn f_seq(n_max: usize, alpha: AlphaParam, x: Complex64, op: &'static str) -> Result<Vec<Complex64>> {
    let a = alpha.value();
    let mut fs = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        let f = if x == ZERO {
            Complex64::new((k as f64 + a + 1.0) * reciprocal_gamma(a + 2.0), 0.0)
        } else {
            f_alpha(k as i64, alpha, x)?
        };
        if f.norm() < 1e-280 {
            return Err(Error::Degenerate { op, msg: format!("f_{k}({x}) vanished") });
        }
        fs.push(f);
    }
    Ok(fs)
}

/// Γ(i+α+1) ladder starting at Γ(α+1).
fn gamma_ladder(n: usize, alpha: AlphaParam) -> Vec<f64> {
    let a = alpha.value();
    let mut g = Vec::with_capacity(n + 1);
    let mut cur = 1.0 / reciprocal_gamma(a + 1.0);
    for i in 0..=n {
        g.push(cur);
        cur *= i as f64 + a + 1.0;
    }
    g
}

/// Build the tridiagonal moment matrix of size `size`.
pub fn moment_matrix(size: usize, alpha: AlphaParam, cond: &ConditionPoint) -> Result<MomentMatrix> {
    if size < 1 {
        return Err(Error::domain("moment_matrix", "size must be >= 1"));
    }
    let a = alpha.value();
    let x = cond.x();
    let gam = gamma_ladder(size, alpha);
    let mut reduced = Array2::from_elem((size, size), ZERO);
    let mut entries = Array2::from_elem((size, size), ZERO);
    for i in 0..size {
        reduced[[i, i]] = x + a + i as f64 + 2.0;
        if i + 1 < size {
            reduced[[i, i + 1]] = -cond.lambda * (i as f64 + a + 1.0);
            reduced[[i + 1, i]] = -cond.lambda_bar;
        }
    }
    for i in 0..size {
        for j in 0..size {
            entries[[i, j]] = gam[i] * reduced[[i, j]];
        }
    }
    Ok(MomentMatrix { size, alpha, cond: *cond, entries, reduced })
}

/// LDU-decompose the reduced moment matrix; errors on a vanishing leading
/// minor, reporting its index.
pub fn ldu_decompose(mm: &MomentMatrix) -> Result<LduFactors> {
    let n = mm.size;
    let mut d = Vec::with_capacity(n);
    let mut ell = vec![ZERO; n];
    let mut u = vec![ZERO; n];
    d.push(mm.reduced[[0, 0]]);
    for p in 1..n {
        let dp_prev = d[p - 1];
        if dp_prev.norm() < 1e-280 {
            return Err(Error::SingularMinor { op: "ldu_decompose", index: p - 1 });
        }
        ell[p] = mm.reduced[[p, p - 1]] / dp_prev;
        u[p] = mm.reduced[[p - 1, p]] / dp_prev;
        d.push(mm.reduced[[p, p]] - ell[p] * dp_prev * u[p]);
    }
    if d[n - 1].norm() < 1e-280 {
        return Err(Error::SingularMinor { op: "ldu_decompose", index: n - 1 });
    }
    Ok(LduFactors { d, ell, u })
}

impl LduFactors {
    /// (L·D·U)_{i,j} rebuilt from the bidiagonal factors.
    pub fn reconstruct(&self) -> Array2<Complex64> {
        let n = self.d.len();
        let mut out = Array2::from_elem((n, n), ZERO);
        for i in 0..n {
            // row i of L: 1 at i, ell[i] at i-1; column j of U: 1 at j, u[j] at j-1
            for j in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    let l_ik = if k == i {
                        ONE
                    } else if i >= 1 && k == i - 1 {
                        self.ell[i]
                    } else {
                        ZERO
                    };
                    let u_kj = if k == j {
                        ONE
                    } else if j >= 1 && k == j - 1 {
                        self.u[j]
                    } else {
                        ZERO
                    };
                    acc += l_ik * self.d[k] * u_kj;
                }
                out[[i, j]] = acc;
            }
        }
        out
    }
}

/// Build P_k, Q_k coefficient tables and norms from the closed-form
/// triangular inverses.
pub fn build_polys(size: usize, alpha: AlphaParam, cond: &ConditionPoint) -> Result<PolyPair> {
    if size < 1 {
        return Err(Error::domain("build_polys", "size must be >= 1"));
    }
    let fs = f_seq(size, alpha, cond.x(), "build_polys")?;
    let gam = gamma_ladder(size + 1, alpha);
    let lam = cond.lambda;
    let mut p_coeffs = Vec::with_capacity(size);
    let mut q_coeffs = Vec::with_capacity(size);
    let mut norms = Vec::with_capacity(size);
    for k in 0..size {
        let mut row = Vec::with_capacity(k + 1);
        let mut lam_pow = ONE;
        // fill from j = k down to 0 so λ^{k−j} accumulates, then reverse
        for j in (0..=k).rev() {
            row.push(lam_pow * fs[j] / fs[k]);
            lam_pow *= lam;
        }
        row.reverse();
        p_coeffs.push(row.clone());
        q_coeffs.push(row);
        // D_m = Γ(m+α+2) f_{m+1}/f_m
        norms.push(gam[k + 1] * fs[k + 1] / fs[k]);
    }
    Ok(PolyPair { alpha, cond: *cond, p_coeffs, q_coeffs, norms, fs })
}

fn eval_poly(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = ZERO;
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Reduced polynomial kernel Σ_{k<N} P̄_k(z̄) Q_k(w) / D_k, with z̄ treated as
/// the independent first slot: P̄_k has coefficients λ̄^{k−j} f_j/f_k.
pub fn kernel_from_polys(n: usize, pp: &PolyPair, zbar: Complex64, w: Complex64) -> Result<Complex64> {
    if n > pp.p_coeffs.len() {
        return Err(Error::domain(
            "kernel_from_polys",
            format!("N = {n} exceeds table size {}", pp.p_coeffs.len()),
        ));
    }
    let lam_bar = pp.cond.lambda_bar;
    let mut total = ZERO;
    for k in 0..n {
        // P̄_k(z̄) = Σ_j λ̄^{k−j} (f_j/f_k) z̄^j, built on the fly
        let mut pbar = ZERO;
        let mut lam_pow = ONE;
        let mut row = Vec::with_capacity(k + 1);
        for j in (0..=k).rev() {
            row.push((j, lam_pow));
            lam_pow *= lam_bar;
        }
        for &(j, lp) in &row {
            pbar += lp * pp.fs[j] / pp.fs[k] * zbar.powi(j as i32);
        }
        let q = eval_poly(&pp.q_coeffs[k], w);
        total += pbar * q / pp.norms[k];
    }
    Ok(total)
}

/// Residual of the non-standard three-term recurrence
/// z P_k = P_{k+1} + b_k P_k + c_k z P_{k−1},
/// with b_k = −λ f_k/f_{k+1} and c_k = λ f_{k−1}/f_k.
///
/// (These are the coefficients that the OPweight table actually satisfies;
/// they come out of matching the z^0 and general z^m coefficients.)
pub fn three_term_residual(
    k: usize,
    pp: &PolyPair,
    z: Complex64,
) -> Result<f64> {
    if k < 1 || k + 1 >= pp.p_coeffs.len() {
        return Err(Error::domain(
            "three_term_residual",
            format!("need 1 <= k < size-1, got k = {k}"),
        ));
    }
    let lam = pp.cond.lambda;
    let b_k = -lam * pp.fs[k] / pp.fs[k + 1];
    let c_k = lam * pp.fs[k - 1] / pp.fs[k];
    let p_k = eval_poly(&pp.p_coeffs[k], z);
    let p_k1 = eval_poly(&pp.p_coeffs[k + 1], z);
    let p_km1 = eval_poly(&pp.p_coeffs[k - 1], z);
    Ok((z * p_k - (p_k1 + b_k * p_k + c_k * z * p_km1)).norm())
}

/// Coefficient-level bi-orthogonality: L⁻¹ · M · U⁻¹ with the closed-form
/// triangular inverses must be diag(D_m). Returns the worst absolute
/// deviation scaled by the matching norm.
pub fn biorthogonality_residual(size: usize, alpha: AlphaParam, cond: &ConditionPoint) -> Result<f64> {
    let mm = moment_matrix(size, alpha, cond)?;
    let pp = build_polys(size, alpha, cond)?;
    let lam = cond.lambda;
    let lam_bar = cond.lambda_bar;
    let mut linv = Array2::from_elem((size, size), ZERO);
    let mut uinv = Array2::from_elem((size, size), ZERO);
    for p in 0..size {
        for q in 0..=p {
            linv[[p, q]] = lam_bar.powi((p - q) as i32) * pp.fs[q] / pp.fs[p];
            uinv[[q, p]] = lam.powi((p - q) as i32) * pp.fs[q] / pp.fs[p];
        }
    }
    let prod = linv.dot(&mm.entries).dot(&uinv);
    let mut worst: f64 = 0.0;
    for i in 0..size {
        for j in 0..size {
            let expected = if i == j { pp.norms[i] } else { ZERO };
            let scale = pp.norms[i.min(j)].norm();
            worst = worst.max((prod[[i, j]] - expected).norm() / scale);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_kernel::{g_double_sum, simplified_kernel_terms};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn alpha(a: f64) -> AlphaParam {
        AlphaParam::new(a).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn moment_matrix_examples() {
        // i=j=0, α=0, λ=0 → Γ(1)·2 = 2
        let mm = moment_matrix(3, alpha(0.0), &ConditionPoint::physical(ZERO)).unwrap();
        assert!(rel(mm.entries[[0, 0]], c(2.0, 0.0)) < 1e-15);
        // |i−j| ≥ 2 → 0
        assert_eq!(mm.entries[[0, 2]], ZERO);
        assert_eq!(mm.entries[[2, 0]], ZERO);
        // i=0, j=1, α=1, λ=2: reduced = −λ(0+α+1) = −4, M = Γ(2)·(−4) = −4
        let mm = moment_matrix(2, alpha(1.0), &ConditionPoint::physical(c(2.0, 0.0))).unwrap();
        assert!(rel(mm.reduced[[0, 1]], c(-4.0, 0.0)) < 1e-15);
        assert!(rel(mm.entries[[0, 1]], c(-4.0, 0.0)) < 1e-15);
        // physical λ makes M Hermitian after row scaling is undone:
        // μ_{i,i+1} = −λ(i+α+1), Γ_i μ_{i,i+1} = conj(Γ_{i+1} μ_{i+1,i})·(… )
        let lam = c(0.7, -0.3);
        let mm = moment_matrix(4, alpha(2.0), &ConditionPoint::physical(lam)).unwrap();
        for i in 0..3 {
            let a = mm.entries[[i, i + 1]];
            let b = mm.entries[[i + 1, i]];
            assert!(rel(a, b.conj()) < 1e-13, "i={i}");
        }
    }

    #[test]
    fn ldu_examples_and_reconstruction() {
        // d_0 = α+2+|λ|² at α=1, λ=1 → 4
        let mm = moment_matrix(8, alpha(1.0), &ConditionPoint::physical(c(1.0, 0.0))).unwrap();
        let f = ldu_decompose(&mm).unwrap();
        assert!(rel(f.d[0], c(4.0, 0.0)) < 1e-15);
        // d_p vs (p+α+1) f_{p+1}/f_p at p ≤ 20, α=0.5, x=3
        let lam = c(3f64.sqrt(), 0.0);
        let mm = moment_matrix(22, alpha(0.5), &ConditionPoint::physical(lam)).unwrap();
        let f = ldu_decompose(&mm).unwrap();
        for p in 0..=20usize {
            let expected = (p as f64 + 0.5 + 1.0)
                * f_alpha(p as i64 + 1, alpha(0.5), c(3.0, 0.0)).unwrap()
                / f_alpha(p as i64, alpha(0.5), c(3.0, 0.0)).unwrap();
            assert!(rel(f.d[p], expected) < 1e-12, "p={p}");
        }
        // reconstruction LDU = μ at size 25 for random physical λ
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..5 {
            let lam = c(rng.gen_range(-1.4..1.4), rng.gen_range(-1.4..1.4));
            if lam.norm() < 0.3 {
                continue;
            }
            let mm = moment_matrix(25, alpha(2.0), &ConditionPoint::physical(lam)).unwrap();
            let f = ldu_decompose(&mm).unwrap();
            let rec = f.reconstruct();
            for i in 0..25 {
                for j in 0..25 {
                    let scale = mm.reduced[[i, i]].norm();
                    assert!(
                        (rec[[i, j]] - mm.reduced[[i, j]]).norm() <= 1e-12 * scale,
                        "({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn poly_examples() {
        // α=0, λ=1, x=1: P_1 = z + λ f_0/f_1 = z + 1/3, D_0 = Γ(2) f_1/f_0 = 3
        let pp = build_polys(4, alpha(0.0), &ConditionPoint::physical(c(1.0, 0.0))).unwrap();
        assert_eq!(pp.p_coeffs[0], vec![ONE]);
        assert_eq!(pp.q_coeffs[0], vec![ONE]);
        assert!(rel(pp.p_coeffs[1][0], c(1.0 / 3.0, 0.0)) < 1e-14);
        assert!(rel(pp.p_coeffs[1][1], ONE) < 1e-15);
        assert!(rel(pp.norms[0], c(3.0, 0.0)) < 1e-14);
        // monic by construction
        for k in 0..4 {
            assert!(rel(pp.p_coeffs[k][k], ONE) < 1e-13);
        }
    }

    #[test]
    fn kernel_from_polys_matches_double_sum_and_simplified() {
        // N=1 → 1/D_0
        let pp = build_polys(3, alpha(1.0), &ConditionPoint::physical(c(0.9, 0.4))).unwrap();
        let v = kernel_from_polys(1, &pp, c(0.2, 0.1), c(-0.5, 0.3)).unwrap();
        assert!(rel(v, ONE / pp.norms[0]) < 1e-14);

        let mut rng = StdRng::seed_from_u64(13);
        for &a in &[0.0, 2.0] {
            for _ in 0..8 {
                let lam = c(rng.gen_range(0.4..1.6), rng.gen_range(-1.0..1.0));
                let cond = ConditionPoint::physical(lam);
                let pp = build_polys(12, alpha(a), &cond).unwrap();
                let zb = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
                let w = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
                let kp = kernel_from_polys(12, &pp, zb, w).unwrap();
                let g = g_double_sum(12, alpha(a), cond.x(), zb / cond.lambda_bar, w / lam).unwrap();
                assert!(rel(kp, g) < 1e-10, "a={a} lam={lam} zb={zb} w={w}");
                if (zb - cond.lambda_bar).norm() > 0.05 && (w - lam).norm() > 0.05 {
                    let (t1, t2, t3) =
                        simplified_kernel_terms(12, alpha(a), zb, w, &cond).unwrap();
                    assert!(rel(kp, t1 + t2 + t3) < 1e-9, "a={a}");
                }
            }
        }
    }

    #[test]
    fn three_term_recurrence_contract() {
        // k=1, α=0, λ=1, z=0.5 → residual at machine scale
        let pp = build_polys(4, alpha(0.0), &ConditionPoint::physical(c(1.0, 0.0))).unwrap();
        let r = three_term_residual(1, &pp, c(0.5, 0.0)).unwrap();
        assert!(r < 1e-12, "r={r}");
        // k=10, α=2.5, λ=1.3−0.2i, z=2 → residual ≤ 1e−10 (1+|z|^{k+1})
        let pp = build_polys(13, alpha(2.5), &ConditionPoint::physical(c(1.3, -0.2))).unwrap();
        let z = c(2.0, 0.0);
        let r = three_term_residual(10, &pp, z).unwrap();
        assert!(r <= 1e-10 * (1.0 + z.norm().powi(11)), "r={r}");
        // λ=0 degenerates to z P_k = P_{k+1} exactly
        let pp = build_polys(6, alpha(1.5), &ConditionPoint::physical(ZERO)).unwrap();
        let r = three_term_residual(3, &pp, c(0.7, 0.4)).unwrap();
        assert_eq!(r, 0.0);
        // contract across k < 25
        let pp = build_polys(26, alpha(0.5), &ConditionPoint::physical(c(1.1, 0.5))).unwrap();
        let z = c(1.4, -0.8);
        for k in 1..25 {
            let r = three_term_residual(k, &pp, z).unwrap();
            assert!(r <= 1e-10 * (1.0 + z.norm().powi(k as i32 + 1)), "k={k} r={r}");
        }
    }

    #[test]
    fn biorthogonality_through_moment_matrix() {
        let mut rng = StdRng::seed_from_u64(17);
        for &a in &[0.0, 0.5, 2.0, 7.0] {
            let lam = c(rng.gen_range(0.4..1.5), rng.gen_range(-0.8..0.8));
            let r = biorthogonality_residual(12, alpha(a), &ConditionPoint::physical(lam)).unwrap();
            assert!(r < 1e-11, "a={a} lam={lam} r={r}");
        }
    }

    #[test]
    fn singular_minor_reported() {
        // x = λλ̄ = α makes nothing singular, but a formal pair with
        // f_1 ∝ (x+α+2) = 0 does: x = −(α+2)
        let a = alpha(1.0);
        let x_bad = c(-3.0, 0.0);
        let cond = ConditionPoint::formal(c(1.0, 0.0), x_bad); // λλ̄ = −3
        let mm = moment_matrix(6, a, &cond).unwrap();
        match ldu_decompose(&mm) {
            Err(Error::SingularMinor { index, .. }) => assert_eq!(index, 0),
            other => panic!("expected singular minor, got {other:?}"),
        }
    }
}
