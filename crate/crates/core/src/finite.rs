//! Uncertainty-inequality checkers for k-Hadamard matrices acting on C^n:
//! the primary (L¹/L∞) inequality, support-size and approximate-support
//! bounds, norm inequalities for general exponents, the discrete
//! Hausdorff-Young bound, the counterexample family showing no nontrivial
//! bound exists for p ≥ 2, and a search for near-tight witness vectors.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::construct::{fourier_matrix, FiniteAbelianGroup, KHadamardCertificate};
use crate::error::{bail_invalid, Result};
use crate::numerics::{approx_support, lp_norm, support, CMatrix, CVector, NormIndex,
    DEFAULT_SUPPORT_TOL};
use crate::report::InequalityReport;

fn apply(a: &CMatrix, v: &CVector) -> Result<CVector> {
    if a.ncols() != v.len() {
        bail_invalid!("matrix is {}x{} but vector has length {}", a.nrows(), a.ncols(), v.len());
    }
    Ok(a * v)
}

fn reject_zero(v: &CVector) -> Result<()> {
    if v.iter().all(|z| z.norm() == 0.0) {
        bail_invalid!("checks are undefined on the zero vector");
    }
    Ok(())
}

fn require_k(cert: &KHadamardCertificate) -> Result<f64> {
    if cert.singular || cert.k <= 0.0 {
        bail_invalid!("certificate has no positive k (singular Gram matrix?)");
    }
    if !cert.entry_bound_ok {
        bail_invalid!(
            "entry bound {} exceeds 1; matrix is not k-Hadamard",
            cert.entry_bound
        );
    }
    Ok(cert.k)
}

fn require_unitary_scaled(cert: &KHadamardCertificate) -> Result<f64> {
    let k = require_k(cert)?;
    if !cert.is_unitary_scaled {
        bail_invalid!(
            "this inequality needs the stronger hypothesis A*A = kI \
             (unitary defect {:.3e})",
            cert.unitary_defect
        );
    }
    Ok(k)
}

/// ‖v‖₁‖Av‖₁ ≥ k‖v‖_∞‖Av‖_∞.
pub fn primary_up_check(
    a: &CMatrix,
    cert: &KHadamardCertificate,
    v: &CVector,
    tol: f64,
) -> Result<InequalityReport> {
    reject_zero(v)?;
    let k = require_k(cert)?;
    let av = apply(a, v)?;
    let lhs = lp_norm(v, NormIndex::one()) * lp_norm(&av, NormIndex::one());
    let rhs = k * lp_norm(v, NormIndex::infinity()) * lp_norm(&av, NormIndex::infinity());
    Ok(InequalityReport::with_tol(
        "primary_up",
        lhs,
        rhs,
        tol,
        vec![("k".into(), k), ("n".into(), v.len() as f64)],
    ))
}

/// |supp(v)|·|supp(Av)| ≥ k, with supports taken at a relative threshold.
pub fn support_up_check(
    a: &CMatrix,
    cert: &KHadamardCertificate,
    v: &CVector,
    tol: f64,
) -> Result<InequalityReport> {
    reject_zero(v)?;
    let k = require_k(cert)?;
    let av = apply(a, v)?;
    let sv = support(v, DEFAULT_SUPPORT_TOL).size;
    let sav = support(&av, DEFAULT_SUPPORT_TOL).size;
    Ok(InequalityReport::with_tol(
        "support_up",
        (sv * sav) as f64,
        k,
        tol,
        vec![
            ("k".into(), k),
            ("n".into(), v.len() as f64),
            ("supp_v".into(), sv as f64),
            ("supp_av".into(), sav as f64),
        ],
    ))
}

/// |supp¹_ε(v)|·|supp¹_η(Av)| ≥ k(1−ε)(1−η).
pub fn approx_support_l1_check(
    a: &CMatrix,
    cert: &KHadamardCertificate,
    v: &CVector,
    eps: f64,
    eta: f64,
    tol: f64,
) -> Result<InequalityReport> {
    reject_zero(v)?;
    let k = require_k(cert)?;
    let av = apply(a, v)?;
    let sv = approx_support(v, NormIndex::one(), eps)?.size;
    let sav = approx_support(&av, NormIndex::one(), eta)?.size;
    Ok(InequalityReport::with_tol(
        "approx_support_l1",
        (sv * sav) as f64,
        k * (1.0 - eps) * (1.0 - eta),
        tol,
        vec![
            ("k".into(), k),
            ("eps".into(), eps),
            ("eta".into(), eta),
            ("n".into(), v.len() as f64),
        ],
    ))
}

/// |supp²_ε(v)|·|supp²_η(Av)| ≥ k(1−ε−η)², requiring A square with A*A = kI.
/// The right-hand side is clamped at zero when ε+η > 1 (vacuous regime).
pub fn approx_support_l2_check(
    a: &CMatrix,
    cert: &KHadamardCertificate,
    v: &CVector,
    eps: f64,
    eta: f64,
    tol: f64,
) -> Result<InequalityReport> {
    reject_zero(v)?;
    let k = require_unitary_scaled(cert)?;
    if a.nrows() != a.ncols() {
        bail_invalid!("the L2 approximate-support bound needs a square matrix");
    }
    let av = apply(a, v)?;
    let sv = approx_support(v, NormIndex::two(), eps)?.size;
    let sav = approx_support(&av, NormIndex::two(), eta)?.size;
    let slack = (1.0 - eps - eta).max(0.0);
    Ok(InequalityReport::with_tol(
        "approx_support_l2",
        (sv * sav) as f64,
        k * slack * slack,
        tol,
        vec![
            ("k".into(), k),
            ("eps".into(), eps),
            ("eta".into(), eta),
            ("n".into(), v.len() as f64),
        ],
    ))
}

/// |supp¹_{ε²}(v)| ≥ |supp²_ε(v)| for every vector and ε ∈ (0, 1).
pub fn supp1_vs_supp2_check(v: &CVector, eps: f64, tol: f64) -> Result<InequalityReport> {
    reject_zero(v)?;
    if !(0.0..1.0).contains(&eps) || eps == 0.0 {
        bail_invalid!("eps must lie in (0, 1), got {eps}");
    }
    let lhs = approx_support(v, NormIndex::one(), eps * eps)?.size;
    let rhs = approx_support(v, NormIndex::two(), eps)?.size;
    Ok(InequalityReport::with_tol(
        "supp1_vs_supp2",
        lhs as f64,
        rhs as f64,
        tol,
        vec![("eps".into(), eps), ("n".into(), v.len() as f64)],
    ))
}

/// ‖v‖₁‖Av‖₁ ≥ k^{1−1/q}‖v‖_q‖Av‖_q for q ∈ [1, ∞].
pub fn norm_up_check(
    a: &CMatrix,
    cert: &KHadamardCertificate,
    v: &CVector,
    q: NormIndex,
    tol: f64,
) -> Result<InequalityReport> {
    reject_zero(v)?;
    let k = require_k(cert)?;
    let av = apply(a, v)?;
    let exponent = match q {
        NormIndex::Infinity => 1.0,
        NormIndex::Finite(q) => 1.0 - 1.0 / q,
    };
    let lhs = lp_norm(v, NormIndex::one()) * lp_norm(&av, NormIndex::one());
    let rhs = k.powf(exponent) * lp_norm(v, q) * lp_norm(&av, q);
    Ok(InequalityReport::with_tol(
        "norm_up",
        lhs,
        rhs,
        tol,
        vec![
            ("k".into(), k),
            ("q".into(), q.value()),
            ("n".into(), v.len() as f64),
        ],
    ))
}

/// ‖Av‖_{p′} ≤ k^{(p−1)/p}‖v‖_p for 1 < p < 2 and A*A = kI; the report puts
/// the upper bound on the lhs so pass keeps the usual orientation lhs ≥ rhs.
pub fn hausdorff_young_check(
    a: &CMatrix,
    cert: &KHadamardCertificate,
    v: &CVector,
    p: f64,
    tol: f64,
) -> Result<InequalityReport> {
    reject_zero(v)?;
    let k = require_unitary_scaled(cert)?;
    if !(1.0 < p && p < 2.0) {
        bail_invalid!("hausdorff-young needs p in (1, 2), got {p}");
    }
    let av = apply(a, v)?;
    let p_dual = p / (p - 1.0);
    let lhs = k.powf((p - 1.0) / p) * lp_norm(v, NormIndex::new(p)?);
    let rhs = lp_norm(&av, NormIndex::new(p_dual)?);
    Ok(InequalityReport::with_tol(
        "hausdorff_young",
        lhs,
        rhs,
        tol,
        vec![
            ("k".into(), k),
            ("p".into(), p),
            ("n".into(), v.len() as f64),
        ],
    ))
}

/// ‖v‖_p‖Av‖_p ≥ k^{(q−p)/(pq)}‖v‖_q‖Av‖_q for 1 < p < 2, q ∈ [p, p′],
/// requiring A*A = kI.
pub fn norm_up_midrange_check(
    a: &CMatrix,
    cert: &KHadamardCertificate,
    v: &CVector,
    p: f64,
    q: f64,
    tol: f64,
) -> Result<InequalityReport> {
    reject_zero(v)?;
    let k = require_unitary_scaled(cert)?;
    if !(1.0 < p && p < 2.0) {
        bail_invalid!("midrange norm bound needs p in (1, 2), got {p}");
    }
    let p_dual = p / (p - 1.0);
    if !(p..=p_dual).contains(&q) {
        bail_invalid!(
            "midrange norm bound needs q in [p, p'] = [{p}, {p_dual}], got {q}"
        );
    }
    let av = apply(a, v)?;
    let pn = NormIndex::new(p)?;
    let qn = NormIndex::new(q)?;
    let lhs = lp_norm(v, pn) * lp_norm(&av, pn);
    let rhs = k.powf((q - p) / (p * q)) * lp_norm(v, qn) * lp_norm(&av, qn);
    Ok(InequalityReport::with_tol(
        "norm_up_midrange",
        lhs,
        rhs,
        tol,
        vec![
            ("k".into(), k),
            ("p".into(), p),
            ("q".into(), q),
            ("n".into(), v.len() as f64),
        ],
    ))
}

/// The family showing no nontrivial norm uncertainty principle can hold for
/// p ≥ 2: for the group Fourier matrix A (trivial character first, identity
/// element first), v = (1+√n, 1, …, 1) satisfies Av = √n·v, so
/// ‖v‖_p‖Av‖_p ≤ 2‖v‖_q‖Av‖_q for every q while any bound of the form
/// k^{c}‖v‖_q‖Av‖_q with c > 0 grows without limit.
///
/// The returned report records lhs = ‖v‖_p‖Av‖_p and rhs = ‖v‖_q‖Av‖_q; its
/// pass flag is not meaningful here (the point is lhs ≤ 2·rhs, which is
/// verified internally and reported as the ratio).
pub fn p_geq_2_counterexample(
    group: &FiniteAbelianGroup,
    p: NormIndex,
    q: NormIndex,
) -> Result<(CVector, InequalityReport)> {
    if let NormIndex::Finite(pv) = p {
        if pv < 2.0 {
            bail_invalid!("the counterexample family targets p >= 2, got {pv}");
        }
    }
    let n = group.order();
    let a = fourier_matrix(group);
    let sqrt_n = (n as f64).sqrt();
    let mut v = CVector::from_element(n, Complex64::new(1.0, 0.0));
    v[0] += Complex64::new(sqrt_n, 0.0);
    let av = &a * &v;
    let residual = (&av - &v * Complex64::new(sqrt_n, 0.0))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if residual > 1e-9 * sqrt_n * lp_norm(&v, NormIndex::infinity()) {
        return Err(crate::error::Error::NumericalFailure(format!(
            "eigen-relation Av = sqrt(n) v failed with residual {residual:.3e}"
        )));
    }
    let lhs = lp_norm(&v, p) * lp_norm(&av, p);
    let rhs = lp_norm(&v, q) * lp_norm(&av, q);
    if lhs > 2.0 * rhs * (1.0 + 1e-12) {
        return Err(crate::error::Error::NumericalFailure(format!(
            "expected ‖v‖_p‖Av‖_p <= 2‖v‖_q‖Av‖_q, got ratio {}",
            lhs / rhs
        )));
    }
    let report = InequalityReport::new(
        "p_geq_2_counterexample",
        lhs,
        rhs,
        vec![
            ("p".into(), p.value()),
            ("q".into(), q.value()),
            ("n".into(), n as f64),
        ],
    );
    Ok((v, report))
}

/// What `extremal_search` minimizes: the lhs/rhs ratio of the corresponding
/// check, so a result near 1 is a near-tight witness.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SearchObjective {
    SupportProduct,
    L1RatioProduct,
    ApproxSupport { eps: f64, eta: f64 },
}

impl SearchObjective {
    fn evaluate(
        &self,
        a: &CMatrix,
        cert: &KHadamardCertificate,
        v: &CVector,
    ) -> Result<InequalityReport> {
        match *self {
            SearchObjective::SupportProduct => support_up_check(a, cert, v, crate::report::DEFAULT_RATIO_TOL),
            SearchObjective::L1RatioProduct => primary_up_check(a, cert, v, crate::report::DEFAULT_RATIO_TOL),
            SearchObjective::ApproxSupport { eps, eta } => {
                approx_support_l1_check(a, cert, v, eps, eta, crate::report::DEFAULT_RATIO_TOL)
            }
        }
    }
}

/// Search for a vector making the chosen inequality as tight as possible.
/// Candidates: coordinate deltas, the all-ones vector, cyclic-subgroup
/// indicators when `group` describes the column index set, then random
/// nonnegative restarts refined by coordinate descent, within `budget`
/// objective evaluations. Returns the minimizing vector and its report.
pub fn extremal_search(
    a: &CMatrix,
    cert: &KHadamardCertificate,
    objective: SearchObjective,
    budget: usize,
    group: Option<&FiniteAbelianGroup>,
    seed: u64,
) -> Result<(CVector, InequalityReport)> {
    if budget == 0 {
        bail_invalid!("search budget must be positive");
    }
    let n = a.ncols();
    let mut evals = 0usize;
    let mut best: Option<(CVector, InequalityReport)> = None;

    let consider = |v: &CVector,
                        evals: &mut usize,
                        best: &mut Option<(CVector, InequalityReport)>|
     -> Result<f64> {
        *evals += 1;
        if v.iter().all(|z| z.norm() == 0.0) {
            // descent may transiently zero out the vector; just skip it
            return Ok(f64::INFINITY);
        }
        let report = objective.evaluate(a, cert, v)?;
        let ratio = report.ratio;
        let improved = best.as_ref().map_or(true, |(_, b)| ratio < b.ratio);
        if improved {
            *best = Some((v.clone(), report));
        }
        Ok(ratio)
    };

    // structured candidates first: deltas, ones, subgroup indicators
    let one = Complex64::new(1.0, 0.0);
    let mut candidates: Vec<CVector> = Vec::new();
    for i in 0..n {
        let mut d = CVector::zeros(n);
        d[i] = one;
        candidates.push(d);
    }
    candidates.push(CVector::from_element(n, one));
    if let Some(g) = group {
        if g.order() == n {
            let mut seen: Vec<Vec<usize>> = Vec::new();
            for gen in 0..n {
                let sub = g.cyclic_subgroup(gen);
                if !seen.contains(&sub) {
                    candidates.push(g.indicator(&sub));
                    seen.push(sub);
                }
            }
        }
    }
    for c in &candidates {
        if evals >= budget {
            break;
        }
        consider(c, &mut evals, &mut best)?;
    }

    // random nonnegative restarts with coordinate descent over a scale grid
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0];
    while evals < budget {
        let mut v = CVector::from_fn(n, |_, _| Complex64::new(rng.gen_range(0.0..1.0f64), 0.0));
        let mut current = consider(&v, &mut evals, &mut best)?;
        let mut improved = true;
        while improved && evals + grid.len() <= budget {
            improved = false;
            for i in 0..n {
                if evals + grid.len() > budget {
                    break;
                }
                let original = v[i];
                let mut best_here = (current, original);
                for &s in &grid {
                    v[i] = Complex64::new(s * original.re.max(0.1), 0.0);
                    let r = consider(&v, &mut evals, &mut best)?;
                    if r < best_here.0 {
                        best_here = (r, v[i]);
                    }
                }
                if best_here.0 < current {
                    current = best_here.0;
                    improved = true;
                }
                v[i] = best_here.1;
            }
        }
    }

    Ok(best.expect("budget >= 1 guarantees at least one evaluation"))
}
