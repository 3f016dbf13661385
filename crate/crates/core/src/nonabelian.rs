//! Uncertainty machinery over arbitrary finite groups: the left-regular
//! representation T_f, the Fourier matrix assembled from an irrep catalog,
//! block diagonalization T̂_f = F T_f F*, the rank-support and min-support
//! notions, and the Meshulam / Kuperberg inequalities with their
//! Schatten-norm formulation.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{bail_invalid, Error, Result};
use crate::group::{matrix_entry_vectors_unchecked, FiniteGroup, IrrepCatalog};
use crate::numerics::{
    hermitian_eigenvalues, lp_norm, matrix_rank, singular_values, support, CMatrix, CVector,
    NormIndex, DEFAULT_RANK_TOL, DEFAULT_SUPPORT_TOL,
};
use crate::report::InequalityReport;

fn reject_zero(f: &CVector) -> Result<()> {
    if f.iter().all(|z| z.norm() == 0.0) {
        bail_invalid!("checks are undefined on the zero function");
    }
    Ok(())
}

fn check_len(group: &FiniteGroup, f: &CVector) -> Result<()> {
    if f.len() != group.order() {
        bail_invalid!(
            "function has {} values but the group has order {}",
            f.len(),
            group.order()
        );
    }
    Ok(())
}

/// Left multiplication by f on the group algebra, in the delta basis:
/// (T_f)_{z,y} = f(z·y⁻¹).
pub fn regular_rep(group: &FiniteGroup, f: &CVector) -> Result<CMatrix> {
    check_len(group, f)?;
    let n = group.order();
    Ok(CMatrix::from_fn(n, n, |z, y| f[group.mul(z, group.inv(y))]))
}

/// Convolution (f ∗ g)(z) = Σ_u f(u) g(u⁻¹·z), so that T_{f∗g} = T_f T_g.
pub fn convolve(group: &FiniteGroup, f: &CVector, g: &CVector) -> Result<CVector> {
    check_len(group, f)?;
    check_len(group, g)?;
    let n = group.order();
    Ok(CVector::from_fn(n, |z, _| {
        (0..n)
            .map(|u| f[u] * g[group.mul(group.inv(u), z)])
            .sum::<Complex64>()
    }))
}

/// Matrix-entry vectors c(i; j, k) with x-coordinate (ρᵢ(x))_{jk}, in the
/// fixed tuple order (rep i, copy k, row j), tagged with the rep index.
pub fn matrix_entry_vectors(
    group: &FiniteGroup,
    cat: &IrrepCatalog,
) -> Result<Vec<(usize, CVector)>> {
    cat.validate(group)?;
    Ok(matrix_entry_vectors_unchecked(cat))
}

/// Fourier matrix of the group: the row for tuple (i; j, k) holds
/// √dᵢ·(ρᵢ(x))_{jk} at column x. Satisfies F F* = F* F = nI, and conjugation
/// by F block-diagonalizes every T_f.
pub fn fourier_matrix_na(group: &FiniteGroup, cat: &IrrepCatalog) -> Result<CMatrix> {
    cat.validate(group)?;
    let n = group.order();
    let mut rows: Vec<CVector> = Vec::with_capacity(n);
    for (i, v) in matrix_entry_vectors_unchecked(cat) {
        let scale = (cat.reps[i].dim as f64).sqrt();
        rows.push(v * Complex64::new(scale, 0.0));
    }
    Ok(CMatrix::from_fn(n, n, |r, x| rows[r][x]))
}

/// Fourier coefficient f̂(ρ) = Σ_x f(x) ρ(x).
pub fn fourier_coefficient(f: &CVector, rep: &crate::group::Irrep) -> CMatrix {
    let d = rep.dim;
    let mut out = CMatrix::zeros(d, d);
    for (x, m) in rep.matrices.iter().enumerate() {
        out += m * f[x];
    }
    out
}

/// T̂_f = F T_f F* as a block-diagonal matrix: for each irrep ρᵢ the block
/// n·f̂(ρᵢ) appears dᵢ times.
#[derive(Clone, Debug)]
pub struct BlockDiagonal {
    /// (multiplicity dᵢ, block n·f̂(ρᵢ)) per irrep.
    pub blocks: Vec<(usize, CMatrix)>,
    pub size: usize,
}

impl BlockDiagonal {
    /// The assembled size-n matrix.
    pub fn assemble(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.size, self.size);
        let mut offset = 0;
        for (mult, block) in &self.blocks {
            let d = block.nrows();
            for _ in 0..*mult {
                out.view_mut((offset, offset), (d, d)).copy_from(block);
                offset += d;
            }
        }
        out
    }

    /// Singular values of the block-diagonal matrix.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let mut sv = Vec::with_capacity(self.size);
        for (mult, block) in &self.blocks {
            let s = singular_values(block)?;
            for _ in 0..*mult {
                sv.extend_from_slice(&s);
            }
        }
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(sv)
    }
}

/// Conjugate T_f by the Fourier matrix and extract the block-diagonal
/// structure, verifying both the off-block decay and that each block equals
/// n·f̂(ρᵢ) computed directly from the catalog.
pub fn hat_tf(group: &FiniteGroup, cat: &IrrepCatalog, f: &CVector) -> Result<BlockDiagonal> {
    check_len(group, f)?;
    let n = group.order();
    let fm = fourier_matrix_na(group, cat)?;
    let t = regular_rep(group, f)?;
    let conj = &fm * t * fm.adjoint();

    let scale = n as f64 * n as f64 * lp_norm(f, NormIndex::infinity()).max(f64::MIN_POSITIVE);
    let mut blocks = Vec::new();
    let mut offset = 0;
    for rep in &cat.reps {
        let d = rep.dim;
        let expected = fourier_coefficient(f, rep) * Complex64::new(n as f64, 0.0);
        for copy in 0..d {
            let block = conj.view((offset, offset), (d, d)).clone_owned();
            let defect = (&block - &expected)
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            if defect > 1e-8 * scale {
                return Err(Error::Inconsistent(format!(
                    "block copy {copy} of a {d}-dim irrep deviates from n·Σ f(x)ρ(x) \
                     by {defect:.3e}"
                )));
            }
            offset += d;
        }
        blocks.push((d, expected));
    }
    // off-block mass
    let assembled = BlockDiagonal {
        blocks: blocks.clone(),
        size: n,
    }
    .assemble();
    let off = (&conj - &assembled)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if off > 1e-8 * scale {
        return Err(Error::Inconsistent(format!(
            "off-block mass {off:.3e} in F T_f F*"
        )));
    }
    Ok(BlockDiagonal { blocks, size: n })
}

/// Rank-support of f̂: the rank of T_f (equivalently Σ dᵢ·rank f̂(ρᵢ)).
pub fn rksupp(group: &FiniteGroup, f: &CVector) -> Result<usize> {
    let t = regular_rep(group, f)?;
    matrix_rank(&t, DEFAULT_RANK_TOL)
}

/// Whether f(x) = conj(f(x⁻¹)) for every x, i.e. T_f is Hermitian.
pub fn is_hermitian_function(group: &FiniteGroup, f: &CVector) -> Result<bool> {
    check_len(group, f)?;
    let max = lp_norm(f, NormIndex::infinity());
    Ok((0..group.order()).all(|x| (f[x] - f[group.inv(x)].conj()).norm() <= 1e-10 * max.max(1.0)))
}

/// For Hermitian f, the minimum over all orthonormal bases of the support
/// size of T̂_f, which equals the number of nonzero eigenvalues of T_f.
pub fn minsupp_hermitian(group: &FiniteGroup, f: &CVector) -> Result<usize> {
    reject_zero(f)?;
    if !is_hermitian_function(group, f)? {
        bail_invalid!(
            "min-support is computed exactly only for Hermitian functions \
             (f(x) = conj(f(x⁻¹))); symmetrize first"
        );
    }
    let t = regular_rep(group, f)?;
    let eig = hermitian_eigenvalues(&t);
    let max = eig.iter().map(|e| e.abs()).fold(0.0, f64::max);
    Ok(eig.iter().filter(|e| e.abs() > 1e-9 * max).count())
}

/// g(x) = f(x) + conj(f(x⁻¹)): a Hermitian function with support at most
/// twice that of f and rank-support at most twice rksupp(f̂).
pub fn symmetrize(group: &FiniteGroup, f: &CVector) -> Result<CVector> {
    check_len(group, f)?;
    let g = CVector::from_fn(group.order(), |x, _| f[x] + f[group.inv(x)].conj());
    debug_assert!(is_hermitian_function(group, &g)?);
    let sf = support(f, DEFAULT_SUPPORT_TOL).size;
    let sg = support(&g, DEFAULT_SUPPORT_TOL).size;
    if sg > 2 * sf {
        return Err(Error::Inconsistent(format!(
            "support of the symmetrization ({sg}) exceeds twice the support of f ({sf})"
        )));
    }
    if sg > 0 {
        let (rf, rg) = (rksupp(group, f)?, rksupp(group, &g)?);
        if rg > 2 * rf {
            return Err(Error::Inconsistent(format!(
                "rank-support of the symmetrization ({rg}) exceeds twice rksupp(f) ({rf})"
            )));
        }
    }
    Ok(g)
}

/// |supp(f)|·rksupp(f̂) ≥ |G|.
pub fn meshulam_check(group: &FiniteGroup, f: &CVector, tol: f64) -> Result<InequalityReport> {
    reject_zero(f)?;
    let s = support(f, DEFAULT_SUPPORT_TOL).size;
    let r = rksupp(group, f)?;
    Ok(InequalityReport::with_tol(
        "meshulam",
        (s * r) as f64,
        group.order() as f64,
        tol,
        vec![
            ("n".into(), group.order() as f64),
            ("supp".into(), s as f64),
            ("rksupp".into(), r as f64),
        ],
    ))
}

/// (‖f‖₁/‖f‖_∞) · (‖T_f‖₁ˢ/‖T_f‖_∞ˢ) ≥ |G|, with Schatten norms of T_f.
pub fn kuperberg_check(group: &FiniteGroup, f: &CVector, tol: f64) -> Result<InequalityReport> {
    reject_zero(f)?;
    let t = regular_rep(group, f)?;
    let sv = singular_values(&t)?;
    let s1: f64 = sv.iter().sum();
    let s_inf = sv[0];
    let lhs = (lp_norm(f, NormIndex::one()) / lp_norm(f, NormIndex::infinity())) * (s1 / s_inf);
    Ok(InequalityReport::with_tol(
        "kuperberg",
        lhs,
        group.order() as f64,
        tol,
        vec![
            ("n".into(), group.order() as f64),
            ("schatten_ratio".into(), s1 / s_inf),
        ],
    ))
}

/// The Fourier matrix is an n²-Hadamard-like operator on the image of
/// f ↦ T_f: over random functions, verify (i) F*(F T_f F*)F = n²·T_f,
/// (ii) the 1→∞ contraction ‖F T_f F*‖_max ≤ Σ|T_f entries|, and (iii) its
/// dual ‖F* M F‖_max ≤ Σ|M entries| for block-diagonal M in the image.
/// The report's rhs is 1 plus the worst relative violation found.
pub fn n2_hadamard_check(
    group: &FiniteGroup,
    cat: &IrrepCatalog,
    trials: usize,
    seed: u64,
) -> Result<InequalityReport> {
    cat.validate(group)?;
    let n = group.order();
    let fm = fourier_matrix_na(group, cat)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let nf = n as f64;
    for trial in 0..trials.max(1) {
        let f = if trial == 0 {
            group.delta(group.identity())
        } else {
            CVector::from_fn(n, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            })
        };
        let t = regular_rep(group, &f)?;
        let conj = &fm * &t * fm.adjoint();
        let back = fm.adjoint() * &conj * &fm;
        let scale = nf * nf * lp_norm(&f, NormIndex::infinity()).max(f64::MIN_POSITIVE);
        let residual = (&back - &t * Complex64::new(nf * nf, 0.0))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
            / scale;
        worst = worst.max(residual);

        let entry_sum: f64 = t.iter().map(|z| z.norm()).sum();
        let max_entry = conj.iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst = worst.max((max_entry - entry_sum) / entry_sum.max(f64::MIN_POSITIVE));

        // dual direction on a block-diagonal input from the image
        let m_sum: f64 = conj.iter().map(|z| z.norm()).sum();
        let dual_max = back.iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst = worst.max((dual_max - m_sum) / m_sum.max(f64::MIN_POSITIVE));
    }
    Ok(InequalityReport::with_tol(
        "n2_hadamard",
        1.0,
        1.0 + worst,
        1e-8,
        vec![("n".into(), nf), ("trials".into(), trials.max(1) as f64)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, quaternion, symmetric_s3};
    use approx::assert_relative_eq;

    const TOL: f64 = 1e-9;

    fn random_f(rng: &mut ChaCha8Rng, n: usize) -> CVector {
        CVector::from_fn(n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    #[test]
    fn regular_rep_of_delta_e_is_identity() {
        let (g, _) = symmetric_s3().unwrap();
        let t = regular_rep(&g, &g.delta(g.identity())).unwrap();
        assert!((t - CMatrix::identity(6, 6)).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn regular_rep_of_delta_is_left_multiplication_permutation() {
        let (g, _) = symmetric_s3().unwrap();
        let x = 3; // the transposition (12)
        let t = regular_rep(&g, &g.delta(x)).unwrap();
        for y in 0..6 {
            for z in 0..6 {
                let expect = if z == g.mul(x, y) { 1.0 } else { 0.0 };
                assert_relative_eq!(t[(z, y)].re, expect);
                assert_relative_eq!(t[(z, y)].im, 0.0);
            }
        }
    }

    #[test]
    fn regular_rep_support_scales_by_n() {
        let (g, _) = dihedral(4).unwrap();
        let mut rng = crate::testrng(41);
        for _ in 0..20 {
            let f = random_f(&mut rng, 8);
            let t = regular_rep(&g, &f).unwrap();
            let sf = support(&f, DEFAULT_SUPPORT_TOL).size;
            let st = t.iter().filter(|z| z.norm() > 1e-12).count();
            assert_eq!(st, 8 * sf);
        }
    }

    #[test]
    fn regular_rep_is_algebra_map() {
        for (g, _) in [symmetric_s3().unwrap(), quaternion().unwrap()] {
            let mut rng = crate::testrng(43);
            let n = g.order();
            for _ in 0..10 {
                let f = random_f(&mut rng, n);
                let h = random_f(&mut rng, n);
                let lhs = regular_rep(&g, &convolve(&g, &f, &h).unwrap()).unwrap();
                let rhs = regular_rep(&g, &f).unwrap() * regular_rep(&g, &h).unwrap();
                let defect = (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(defect < 1e-12 * n as f64);
            }
        }
    }

    #[test]
    fn entry_vectors_gram_s3() {
        let (g, cat) = symmetric_s3().unwrap();
        let vecs = matrix_entry_vectors(&g, &cat).unwrap();
        assert_eq!(vecs.len(), 6);
        let mut diag: Vec<f64> = vecs.iter().map(|(_, v)| v.dotc(v).re).collect();
        diag.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_eq!(diag, vec![6.0, 6.0, 3.0, 3.0, 3.0, 3.0]);
    }

    #[test]
    fn entry_vectors_gram_q8() {
        let (g, cat) = quaternion().unwrap();
        let vecs = matrix_entry_vectors(&g, &cat).unwrap();
        let mut diag: Vec<f64> = vecs.iter().map(|(_, v)| v.dotc(v).re).collect();
        diag.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_eq!(diag, vec![8.0, 8.0, 8.0, 8.0, 4.0, 4.0, 4.0, 4.0]);
    }

    #[test]
    fn entry_vectors_cyclic_are_characters() {
        let (g, cat) = cyclic(3).unwrap();
        let vecs = matrix_entry_vectors(&g, &cat).unwrap();
        assert_eq!(vecs.len(), 3);
        for (a, (_, va)) in vecs.iter().enumerate() {
            for (b, (_, vb)) in vecs.iter().enumerate() {
                let inner = va.dotc(vb);
                let expect = if a == b { 3.0 } else { 0.0 };
                assert!((inner - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn fourier_na_is_scaled_unitary() {
        for (g, cat) in [
            cyclic(5).unwrap(),
            dihedral(4).unwrap(),
            quaternion().unwrap(),
            symmetric_s3().unwrap(),
        ] {
            let n = g.order();
            let fm = fourier_matrix_na(&g, &cat).unwrap();
            let gram = fm.adjoint() * &fm;
            let gram2 = &fm * fm.adjoint();
            for m in [gram, gram2] {
                let defect = (m - CMatrix::identity(n, n) * Complex64::new(n as f64, 0.0))
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                assert!(defect < 1e-9 * n as f64);
            }
        }
    }

    #[test]
    fn fourier_na_s3_max_entry() {
        let (g, cat) = symmetric_s3().unwrap();
        let fm = fourier_matrix_na(&g, &cat).unwrap();
        let max = fm.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert_relative_eq!(max, 2.0f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn fourier_na_cyclic_matches_abelian_up_to_column_order() {
        // the catalog stores χ(x); the abelian construction stores conj(χ(x)),
        // so the two agree after the column relabeling x ↦ -x
        let (g, cat) = cyclic(7).unwrap();
        let fm = fourier_matrix_na(&g, &cat).unwrap();
        let ab = crate::construct::fourier_matrix(
            &crate::construct::FiniteAbelianGroup::cyclic(7).unwrap(),
        );
        for r in 0..7 {
            for x in 0..7 {
                let neg = (7 - x) % 7;
                assert!((fm[(r, x)] - ab[(r, neg)]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn hat_tf_delta_e_gives_n_identity_blocks() {
        let (g, cat) = quaternion().unwrap();
        let bd = hat_tf(&g, &cat, &g.delta(g.identity())).unwrap();
        for (mult, block) in &bd.blocks {
            let d = block.nrows();
            let defect = (block - CMatrix::identity(d, d) * Complex64::new(8.0, 0.0))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(defect < 1e-10);
            assert_eq!(*mult, d);
        }
    }

    #[test]
    fn hat_tf_abelian_is_diagonal_of_dft_values() {
        let (g, cat) = cyclic(6).unwrap();
        let mut rng = crate::testrng(47);
        let f = random_f(&mut rng, 6);
        let bd = hat_tf(&g, &cat, &f).unwrap();
        for (h, (mult, block)) in bd.blocks.iter().enumerate() {
            assert_eq!(*mult, 1);
            let expect: Complex64 = (0..6)
                .map(|x| f[x] * cat.reps[h].matrices[x][(0, 0)])
                .sum::<Complex64>()
                * Complex64::new(6.0, 0.0);
            assert!((block[(0, 0)] - expect).norm() < 1e-10);
        }
    }

    #[test]
    fn hat_tf_s3_a3_indicator() {
        let (g, cat) = symmetric_s3().unwrap();
        let f = g.indicator(&[0, 1, 2]); // the alternating subgroup A3
        let bd = hat_tf(&g, &cat, &f).unwrap();
        // trivial rep: 6·3 = 18; sign rep: 6·3 = 18 (A3 is even); 2-dim: sum
        // of the three rotations vanishes
        assert!((bd.blocks[0].1[(0, 0)] - Complex64::new(18.0, 0.0)).norm() < 1e-10);
        assert!((bd.blocks[1].1[(0, 0)] - Complex64::new(18.0, 0.0)).norm() < 1e-10);
        let two_dim = &bd.blocks[2].1;
        assert!(two_dim.iter().all(|z| z.norm() < 1e-10));
        // rank checks: rank T_f = Σ dᵢ rank(f̂(ρᵢ)) = 1 + 1 = 2 = [G : A3]
        assert_eq!(rksupp(&g, &f).unwrap(), 2);
    }

    #[test]
    fn rksupp_examples() {
        let (g, _) = dihedral(4).unwrap();
        assert_eq!(rksupp(&g, &g.delta(g.identity())).unwrap(), 8);
        let ones = CVector::from_element(8, Complex64::new(1.0, 0.0));
        assert_eq!(rksupp(&g, &ones).unwrap(), 1);
        // subgroup {e, r²}: rank = index = 4
        let f = g.indicator(&g.subgroup_generated(&[2]));
        assert_eq!(rksupp(&g, &f).unwrap(), 4);
    }

    #[test]
    fn rksupp_equals_block_rank_sum() {
        for (g, cat) in [dihedral(4).unwrap(), symmetric_s3().unwrap(), quaternion().unwrap()] {
            let mut rng = crate::testrng(53);
            let n = g.order();
            for _ in 0..10 {
                // sparse random functions have interesting ranks
                let mut f = CVector::zeros(n);
                let s = rng.gen_range(1..=n);
                for _ in 0..s {
                    let i = rng.gen_range(0..n);
                    f[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
                if f.iter().all(|z| z.norm() == 0.0) {
                    continue;
                }
                let direct = rksupp(&g, &f).unwrap();
                let via_blocks: usize = cat
                    .reps
                    .iter()
                    .map(|rep| {
                        rep.dim
                            * matrix_rank(&fourier_coefficient(&f, rep), DEFAULT_RANK_TOL)
                                .unwrap()
                    })
                    .sum();
                assert_eq!(direct, via_blocks);
            }
        }
    }

    #[test]
    fn rksupp_at_most_nonzero_columns_of_hat_tf() {
        let (g, cat) = dihedral(4).unwrap();
        let mut rng = crate::testrng(59);
        for _ in 0..20 {
            let f = random_f(&mut rng, 8);
            let assembled = hat_tf(&g, &cat, &f).unwrap().assemble();
            let nonzero_cols = (0..8)
                .filter(|&j| (0..8).any(|i| assembled[(i, j)].norm() > 1e-9))
                .count();
            assert!(rksupp(&g, &f).unwrap() <= nonzero_cols);
        }
    }

    #[test]
    fn minsupp_hermitian_examples() {
        let (g, _) = symmetric_s3().unwrap();
        assert_eq!(minsupp_hermitian(&g, &g.delta(g.identity())).unwrap(), 6);
        // subgroup indicator: Hermitian, min-support = index
        let f = g.indicator(&[0, 1, 2]);
        assert_eq!(minsupp_hermitian(&g, &f).unwrap(), 2);
        // a transposition is an involution, so its delta is Hermitian
        let d = g.delta(3);
        assert!(is_hermitian_function(&g, &d).unwrap());
        assert_eq!(minsupp_hermitian(&g, &d).unwrap(), 6);
        // non-Hermitian input is rejected with a pointer to symmetrize
        let r = g.delta(1);
        let err = minsupp_hermitian(&g, &r).unwrap_err();
        assert!(err.to_string().contains("symmetrize"), "{err}");
    }

    #[test]
    fn minsupp_equals_rksupp_for_hermitian() {
        let (g, _) = quaternion().unwrap();
        let mut rng = crate::testrng(61);
        for _ in 0..20 {
            let f = random_f(&mut rng, 8);
            let h = symmetrize(&g, &f).unwrap();
            if h.iter().all(|z| z.norm() < 1e-12) {
                continue;
            }
            assert_eq!(
                minsupp_hermitian(&g, &h).unwrap(),
                rksupp(&g, &h).unwrap()
            );
        }
    }

    #[test]
    fn symmetrize_properties() {
        let (g, _) = dihedral(4).unwrap();
        // Hermitian f doubles in place
        let f = g.indicator(&[0, 2]); // e and r² are involutions
        let sym = symmetrize(&g, &f).unwrap();
        assert!((0..8).all(|x| (sym[x] - f[x] * Complex64::new(2.0, 0.0)).norm() < 1e-15));
        // delta of a non-involution spreads to two points
        let d = symmetrize(&g, &g.delta(1)).unwrap();
        assert_eq!(support(&d, DEFAULT_SUPPORT_TOL).size, 2);
        // random functions satisfy all three proof inequalities (checked
        // inside symmetrize, which errors on violation)
        let mut rng = crate::testrng(67);
        for _ in 0..50 {
            let f = random_f(&mut rng, 8);
            let h = symmetrize(&g, &f).unwrap();
            assert!(is_hermitian_function(&g, &h).unwrap());
        }
    }

    #[test]
    fn meshulam_equalities_and_sweep() {
        let (g, _) = symmetric_s3().unwrap();
        // subgroup indicator: equality
        let r = meshulam_check(&g, &g.indicator(&[0, 1, 2]), TOL).unwrap();
        assert_relative_eq!(r.ratio, 1.0);
        // delta: 1·n = n
        let r = meshulam_check(&g, &g.delta(4), TOL).unwrap();
        assert_relative_eq!(r.ratio, 1.0);
        // random sweep on several groups
        for (g, _) in [symmetric_s3().unwrap(), dihedral(4).unwrap(), quaternion().unwrap()] {
            let mut rng = crate::testrng(71);
            for _ in 0..200 {
                let f = random_f(&mut rng, g.order());
                let r = meshulam_check(&g, &f, TOL).unwrap();
                assert!(r.pass, "meshulam violation: {}", r.ratio);
            }
        }
    }

    #[test]
    fn kuperberg_equalities_and_sweep() {
        let (g, _) = quaternion().unwrap();
        // delta: permutation matrix, all singular values 1
        let r = kuperberg_check(&g, &g.delta(3), TOL).unwrap();
        assert_relative_eq!(r.ratio, 1.0, max_relative = 1e-9);
        // subgroup indicator {1, -1}: equality
        let r = kuperberg_check(&g, &g.indicator(&[0, 1]), TOL).unwrap();
        assert_relative_eq!(r.ratio, 1.0, max_relative = 1e-9);
        for (g, _) in [symmetric_s3().unwrap(), dihedral(4).unwrap(), quaternion().unwrap()] {
            let mut rng = crate::testrng(73);
            for _ in 0..200 {
                let f = random_f(&mut rng, g.order());
                let r = kuperberg_check(&g, &f, TOL).unwrap();
                assert!(r.pass, "kuperberg violation: {}", r.ratio);
            }
        }
    }

    #[test]
    fn kuperberg_schatten_identity() {
        // ‖T_f‖_p^S = (1/n)·‖T̂_f‖_p^S
        let (g, cat) = symmetric_s3().unwrap();
        let mut rng = crate::testrng(79);
        let f = random_f(&mut rng, 6);
        let t = regular_rep(&g, &f).unwrap();
        let sv_t = singular_values(&t).unwrap();
        let sv_hat = hat_tf(&g, &cat, &f).unwrap().singular_values().unwrap();
        for (a, b) in sv_t.iter().zip(&sv_hat) {
            assert_relative_eq!(*a, b / 6.0, max_relative = 1e-9);
        }
    }

    #[test]
    fn factor_four_chain() {
        // |supp f|·rksupp(f̂) ≥ n/4 for arbitrary f, through the symmetrize
        // route, consistent with the direct check
        for (g, _) in [symmetric_s3().unwrap(), dihedral(4).unwrap(), quaternion().unwrap()] {
            let mut rng = crate::testrng(83);
            let n = g.order();
            for _ in 0..100 {
                let f = random_f(&mut rng, n);
                let h = symmetrize(&g, &f).unwrap();
                if h.iter().all(|z| z.norm() < 1e-12) {
                    continue;
                }
                let sh = support(&h, DEFAULT_SUPPORT_TOL).size;
                let rh = rksupp(&g, &h).unwrap();
                assert!(sh * rh >= n, "meshulam for the hermitization");
                let sf = support(&f, DEFAULT_SUPPORT_TOL).size;
                let rf = rksupp(&g, &f).unwrap();
                assert!(sh <= 2 * sf && rh <= 2 * rf);
                assert!(4 * sf * rf >= n, "factor-4 conclusion");
                let direct = meshulam_check(&g, &f, TOL).unwrap();
                assert!(direct.ratio >= 0.25 - 1e-12);
            }
        }
    }

    #[test]
    fn n2_hadamard_on_catalog_groups() {
        for (g, cat) in [
            cyclic(6).unwrap(),
            dihedral(4).unwrap(),
            quaternion().unwrap(),
            symmetric_s3().unwrap(),
        ] {
            let r = n2_hadamard_check(&g, &cat, 100, 5).unwrap();
            assert!(r.pass, "group of order {}: rhs {}", g.order(), r.rhs);
        }
    }

    #[test]
    fn hermitian_support_vs_diagonalized_transform() {
        // Hermitian indicator functions of subgroups have T̂_f diagonalizable
        // within the catalog basis on abelian groups; there the support
        // uncertainty |supp f|·|supp f̂| ≥ n is exact
        let (g, cat) = cyclic(6).unwrap();
        for sub in [vec![0], vec![0, 3], vec![0, 2, 4], (0..6).collect::<Vec<_>>()] {
            let f = g.indicator(&sub);
            let bd = hat_tf(&g, &cat, &f).unwrap();
            let supp_hat = bd
                .blocks
                .iter()
                .filter(|(_, b)| b[(0, 0)].norm() > 1e-9)
                .count();
            let sf = support(&f, DEFAULT_SUPPORT_TOL).size;
            assert!(sf * supp_hat >= 6);
            assert_eq!(minsupp_hermitian(&g, &f).unwrap(), supp_hat);
        }
    }
}
