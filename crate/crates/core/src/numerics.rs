//! Dense complex linear algebra: norms (Lp, operator, Schatten), support and
//! approximate-support measures. Shared substrate for every check in the crate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{bail_invalid, Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Relative threshold below which an entry counts as zero in support
/// computations. All exact constructions in this crate (roots of unity,
/// 0/±1 matrices) keep genuine entries far above this at double precision.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-9;

/// Relative singular-value threshold for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Condition-number threshold beyond which a Gram matrix is declared singular.
pub const CONDITION_LIMIT: f64 = 1e12;

/// A norm index p in [1, ∞]. Infinity is a distinguished value, never a large
/// float, so formulas with q → ∞ can take the algebraic limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormIndex {
    Finite(f64),
    Infinity,
}

impl NormIndex {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            Ok(NormIndex::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(NormIndex::Finite(p))
        } else {
            bail_invalid!("norm index must satisfy p >= 1, got {p}")
        }
    }

    pub fn one() -> Self {
        NormIndex::Finite(1.0)
    }

    pub fn two() -> Self {
        NormIndex::Finite(2.0)
    }

    pub fn infinity() -> Self {
        NormIndex::Infinity
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, NormIndex::Infinity)
    }

    pub fn value(&self) -> f64 {
        match self {
            NormIndex::Finite(p) => *p,
            NormIndex::Infinity => f64::INFINITY,
        }
    }

    /// The conjugate index p' = p/(p-1), with 1 and ∞ dual to each other.
    pub fn conjugate(&self) -> NormIndex {
        match self {
            NormIndex::Infinity => NormIndex::Finite(1.0),
            NormIndex::Finite(p) if *p == 1.0 => NormIndex::Infinity,
            NormIndex::Finite(p) => NormIndex::Finite(p / (p - 1.0)),
        }
    }
}

impl std::fmt::Display for NormIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormIndex::Finite(p) => write!(f, "{p}"),
            NormIndex::Infinity => write!(f, "inf"),
        }
    }
}

/// Lp norm of the magnitudes in `mags` (already nonnegative).
pub fn lp_norm_of_magnitudes(mags: &[f64], p: NormIndex) -> f64 {
    match p {
        NormIndex::Infinity => mags.iter().cloned().fold(0.0, f64::max),
        NormIndex::Finite(p) if p == 1.0 => mags.iter().sum(),
        NormIndex::Finite(p) if p == 2.0 => mags.iter().map(|m| m * m).sum::<f64>().sqrt(),
        NormIndex::Finite(p) => {
            // factor out the max so large p cannot overflow the partial sums
            let max = mags.iter().cloned().fold(0.0, f64::max);
            if max == 0.0 {
                return 0.0;
            }
            max * mags.iter().map(|m| (m / max).powf(p)).sum::<f64>().powf(1.0 / p)
        }
    }
}

/// Lp norm of a complex vector; p = ∞ gives max |v_i|.
pub fn lp_norm(v: &CVector, p: NormIndex) -> f64 {
    let mags: Vec<f64> = v.iter().map(|z| z.norm()).collect();
    lp_norm_of_magnitudes(&mags, p)
}

/// The 1 → ∞ operator norm of a matrix: the maximum entry modulus.
pub fn op_norm_1_to_inf(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The exact ∞ → ∞ operator norm: the maximum absolute row sum.
pub fn op_norm_inf_to_inf(a: &CMatrix) -> f64 {
    (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Singular values of a matrix, sorted in descending order.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    let svd = m
        .clone()
        .try_svd(false, false, f64::EPSILON, 0)
        .ok_or_else(|| Error::NumericalFailure("SVD did not converge".into()))?;
    let mut sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(sv)
}

/// Schatten p-norm: the Lp norm of the singular-value vector.
pub fn schatten_norm(m: &CMatrix, p: NormIndex) -> Result<f64> {
    let sv = singular_values(m)?;
    Ok(lp_norm_of_magnitudes(&sv, p))
}

/// Numerical rank: singular values above `tol` relative to the largest.
pub fn matrix_rank(m: &CMatrix, tol: f64) -> Result<usize> {
    let sv = singular_values(m)?;
    let max = sv.first().cloned().unwrap_or(0.0);
    if max == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > tol * max).count())
}

/// Eigenvalues of a Hermitian matrix, descending by value.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let eig = m.clone().symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    vals
}

/// The Gram matrix A*A.
pub fn gram(a: &CMatrix) -> CMatrix {
    a.adjoint() * a
}

/// Kronecker product A ⊗ B.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Inverse of a square matrix, refusing when the condition number exceeds
/// [`CONDITION_LIMIT`].
pub fn inverse_checked(m: &CMatrix) -> Result<CMatrix> {
    let sv = singular_values(m)?;
    let (max, min) = (
        sv.first().cloned().unwrap_or(0.0),
        sv.last().cloned().unwrap_or(0.0),
    );
    if min <= 0.0 || max / min > CONDITION_LIMIT {
        return Err(Error::SingularGram);
    }
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::NumericalFailure("LU inversion failed".into()))
}

/// Support of a vector under a relative threshold: indices with
/// |v_i| > tol·‖v‖_∞.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportResult {
    pub indices: Vec<usize>,
    pub size: usize,
    pub mass_excluded: f64,
    /// Set when the input was (numerically) the zero vector, so callers that
    /// require v ≠ 0 can reject.
    pub zero_vector: bool,
}

pub fn support(v: &CVector, tol: f64) -> SupportResult {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return SupportResult {
            indices: Vec::new(),
            size: 0,
            mass_excluded: 0.0,
            zero_vector: true,
        };
    }
    let indices: Vec<usize> = (0..v.len()).filter(|&i| v[i].norm() > tol * max).collect();
    let size = indices.len();
    SupportResult {
        indices,
        size,
        mass_excluded: 0.0,
        zero_vector: false,
    }
}

/// Minimum-size (p, ε)-support: the smallest T with ‖v[Tᶜ]‖_p ≤ ε‖v‖_p.
///
/// Computed by sorting magnitudes in descending order and taking the shortest
/// prefix; excluding the smallest-magnitude entries minimizes the excluded
/// p-mass for every p, so the greedy prefix is exact. Ties are broken by
/// ascending original index. Entries at or below the relative zero threshold
/// are treated as exactly zero, so ε = 0 recovers [`support`] with the default
/// tolerance.
pub fn approx_support(v: &CVector, p: NormIndex, eps: f64) -> Result<SupportResult> {
    if !(0.0..=1.0).contains(&eps) {
        bail_invalid!("epsilon must lie in [0, 1], got {eps}");
    }
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        bail_invalid!("approximate support of the zero vector is undefined");
    }
    let ztol = DEFAULT_SUPPORT_TOL * max;
    let mags: Vec<f64> = v
        .iter()
        .map(|z| {
            let m = z.norm();
            if m > ztol {
                m
            } else {
                0.0
            }
        })
        .collect();

    let mut order: Vec<usize> = (0..mags.len()).collect();
    order.sort_by(|&i, &j| mags[j].partial_cmp(&mags[i]).unwrap().then(i.cmp(&j)));

    // slack absorbs roundoff in the suffix sums; the comparison is otherwise
    // exact prefix arithmetic
    let slack = 1.0 + 1e-12;
    let mut indices: Vec<usize> = Vec::new();
    let mass_excluded;
    match p {
        NormIndex::Infinity => {
            let bound = eps * max * slack;
            let mut k = order.len();
            while k > 0 && mags[order[k - 1]] <= bound {
                k -= 1;
            }
            indices.extend_from_slice(&order[..k]);
            mass_excluded = order[k..].iter().map(|&i| mags[i]).fold(0.0, f64::max);
        }
        NormIndex::Finite(pf) => {
            let pm: Vec<f64> = order.iter().map(|&i| mags[i].powf(pf)).collect();
            let total: f64 = pm.iter().sum();
            let budget = eps.powf(pf) * total * slack;
            // largest suffix of the sorted order whose p-mass fits the budget
            let mut tail = 0.0;
            let mut k = order.len();
            while k > 0 && tail + pm[k - 1] <= budget {
                tail += pm[k - 1];
                k -= 1;
            }
            indices.extend_from_slice(&order[..k]);
            mass_excluded = tail.powf(1.0 / pf);
        }
    }
    indices.sort_unstable();
    let size = indices.len();
    Ok(SupportResult {
        indices,
        size,
        mass_excluded,
        zero_vector: false,
    })
}

/// Convenience constructor from (re, im) pairs.
pub fn cvector(entries: &[(f64, f64)]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&(r, i)| Complex64::new(r, i)))
}

/// Real vector as a complex one.
pub fn cvector_real(entries: &[f64]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&r| Complex64::new(r, 0.0)))
}
