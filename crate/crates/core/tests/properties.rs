//! Randomized invariants for the whole crate: theorem checks must never fail
//! on arbitrary inputs, ratios must be scale-invariant, reductions between
//! checks must be exact, and approximate supports must be monotone.

use khadamard::construct::{certify_k_hadamard, fourier_matrix, FiniteAbelianGroup};
use khadamard::continuous::norm_up_grid_check;
use khadamard::finite::{
    approx_support_l1_check, norm_up_check, p_geq_2_counterexample, primary_up_check,
    supp1_vs_supp2_check, support_up_check,
};
use khadamard::grid::{ft_grid, GridFunction};
use khadamard::nonabelian::{kuperberg_check, meshulam_check, regular_rep};
use khadamard::numerics::{approx_support, lp_norm, support, DEFAULT_SUPPORT_TOL};
use khadamard::{CVector, NormIndex};
use num_complex::Complex64;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn complex_vec(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), n..=n)
}

fn to_cvector(entries: &[(f64, f64)]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&(r, i)| Complex64::new(r, i)))
}

fn nonzero(v: &CVector) -> bool {
    v.iter().any(|z| z.norm() > 1e-6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn primary_and_support_up_hold_on_fourier((n, entries) in (2usize..12)
        .prop_flat_map(|n| (Just(n), complex_vec(n))))
    {
        let v = to_cvector(&entries);
        prop_assume!(nonzero(&v));
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        let a = fourier_matrix(&g);
        let cert = certify_k_hadamard(&a, TOL).unwrap();
        let r = primary_up_check(&a, &cert, &v, TOL).unwrap();
        prop_assert!(r.pass, "primary UP ratio {}", r.ratio);
        let s = support_up_check(&a, &cert, &v, TOL).unwrap();
        prop_assert!(s.pass, "support UP ratio {}", s.ratio);
    }

    #[test]
    fn approx_support_monotone_and_bounded((_n, entries, eps1, eps2) in (2usize..24)
        .prop_flat_map(|n| (Just(n), complex_vec(n), 0.0..1.0f64, 0.0..1.0f64)))
    {
        let v = to_cvector(&entries);
        prop_assume!(nonzero(&v));
        let (lo, hi) = if eps1 <= eps2 { (eps1, eps2) } else { (eps2, eps1) };
        for p in [NormIndex::one(), NormIndex::two()] {
            let s_lo = approx_support(&v, p, lo).unwrap().size;
            let s_hi = approx_support(&v, p, hi).unwrap().size;
            prop_assert!(s_hi <= s_lo, "approx support not monotone in eps");
            prop_assert!(s_lo <= support(&v, DEFAULT_SUPPORT_TOL).size);
        }
    }

    #[test]
    fn supp1_dominates_supp2((_n, entries, eps) in (2usize..32)
        .prop_flat_map(|n| (Just(n), complex_vec(n), 0.01..0.99f64)))
    {
        let v = to_cvector(&entries);
        prop_assume!(nonzero(&v));
        let r = supp1_vs_supp2_check(&v, eps, TOL).unwrap();
        prop_assert!(r.pass, "eps {eps}: {} < {}", r.lhs, r.rhs);
    }

    #[test]
    fn ratios_are_scale_invariant((n, entries, re, im) in (2usize..10)
        .prop_flat_map(|n| (Just(n), complex_vec(n), -5.0..5.0f64, -5.0..5.0f64)))
    {
        let v = to_cvector(&entries);
        let c = Complex64::new(re, im);
        prop_assume!(nonzero(&v) && c.norm() > 1e-3);
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        let a = fourier_matrix(&g);
        let cert = certify_k_hadamard(&a, TOL).unwrap();
        let r1 = primary_up_check(&a, &cert, &v, TOL).unwrap();
        let r2 = primary_up_check(&a, &cert, &(&v * c), TOL).unwrap();
        prop_assert!((r1.ratio - r2.ratio).abs() <= 1e-9 * r1.ratio.max(1.0));
    }

    #[test]
    fn reduction_identities_are_exact((n, entries) in (2usize..10)
        .prop_flat_map(|n| (Just(n), complex_vec(n))))
    {
        let v = to_cvector(&entries);
        prop_assume!(nonzero(&v));
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        let a = fourier_matrix(&g);
        let cert = certify_k_hadamard(&a, TOL).unwrap();
        let approx = approx_support_l1_check(&a, &cert, &v, 0.0, 0.0, TOL).unwrap();
        let exact = support_up_check(&a, &cert, &v, TOL).unwrap();
        prop_assert_eq!(approx.lhs, exact.lhs);
        prop_assert_eq!(approx.rhs, exact.rhs);
        let nu = norm_up_check(&a, &cert, &v, NormIndex::Infinity, TOL).unwrap();
        let pr = primary_up_check(&a, &cert, &v, TOL).unwrap();
        prop_assert_eq!(nu.lhs, pr.lhs);
        prop_assert_eq!(nu.rhs, pr.rhs);
    }

    #[test]
    fn reports_are_internally_consistent((n, entries, q) in (2usize..10)
        .prop_flat_map(|n| (Just(n), complex_vec(n), 1.0..8.0f64)))
    {
        let v = to_cvector(&entries);
        prop_assume!(nonzero(&v));
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        let a = fourier_matrix(&g);
        let cert = certify_k_hadamard(&a, TOL).unwrap();
        let r = norm_up_check(&a, &cert, &v, NormIndex::new(q).unwrap(), TOL).unwrap();
        prop_assert!(r.lhs >= 0.0 && r.rhs >= 0.0);
        prop_assert_eq!(r.pass, r.ratio >= 1.0 - r.tol);
        prop_assert!(r.pass, "norm UP ratio {}", r.ratio);
    }

    #[test]
    fn counterexample_eigen_relation(n in 2usize..=64) {
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        let (v, r) = p_geq_2_counterexample(&g, NormIndex::two(), NormIndex::Infinity).unwrap();
        prop_assert!(r.ratio <= 2.0 + 1e-12);
        prop_assert!((lp_norm(&v, NormIndex::Infinity) - 1.0 - (n as f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn nonabelian_checks_hold_on_random_functions(
        (which, entries) in (0usize..4).prop_flat_map(|w| {
            let n = [6, 8, 8, 6][w];
            (Just(w), complex_vec(n))
        }))
    {
        let (g, _) = match which {
            0 => khadamard::group::cyclic(6).unwrap(),
            1 => khadamard::group::dihedral(4).unwrap(),
            2 => khadamard::group::quaternion().unwrap(),
            _ => khadamard::group::symmetric_s3().unwrap(),
        };
        let f = to_cvector(&entries);
        prop_assume!(nonzero(&f));
        let m = meshulam_check(&g, &f, TOL).unwrap();
        prop_assert!(m.pass, "meshulam ratio {}", m.ratio);
        let k = kuperberg_check(&g, &f, TOL).unwrap();
        prop_assert!(k.pass, "kuperberg ratio {}", k.ratio);
        // the regular representation preserves the L2 mass pattern:
        // every value of f appears exactly n times in T_f
        let t = regular_rep(&g, &f).unwrap();
        let tf_mass: f64 = t.iter().map(|z| z.norm_sqr()).sum();
        let f_mass: f64 = f.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((tf_mass - g.order() as f64 * f_mass).abs() <= 1e-9 * tf_mass.max(1.0));
    }

    #[test]
    fn grid_plancherel_and_primary_up(entries in complex_vec(64)) {
        let v: Vec<Complex64> = entries.iter().map(|&(r, i)| Complex64::new(r, i)).collect();
        prop_assume!(v.iter().any(|z| z.norm() > 1e-6));
        let x0 = -(63.0) * 0.125 / 2.0;
        let f = GridFunction::new(x0, 0.125, v).unwrap();
        let fhat = ft_grid(&f).unwrap();
        let a = f.lp_norm(NormIndex::two());
        let b = fhat.lp_norm(NormIndex::two());
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0), "plancherel drift");
        let r = norm_up_grid_check(&f, &fhat, 1.0, NormIndex::Infinity, 1e-9).unwrap();
        prop_assert!(r.pass, "grid primary UP ratio {}", r.ratio);
    }
}
