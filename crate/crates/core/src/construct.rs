//! The catalog of k-Hadamard matrices (Fourier, Sylvester, Paley, Hadamard
//! code, projective-plane incidence, scaled random orthogonal) and the
//! certifier for the k-Hadamard property of arbitrary matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{bail_invalid, Error, Result};
use crate::numerics::{
    gram, inverse_checked, kron, op_norm_1_to_inf, op_norm_inf_to_inf, CMatrix,
};

/// A finite abelian group G ≅ Z_{n1} × … × Z_{nr}. Elements are indexed in
/// mixed radix over the factors, last factor fastest: the element with
/// coordinates (x_1, …, x_r) has index ((x_1·n_2 + x_2)·n_3 + …) + x_r.
/// Characters use the same indexing.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAbelianGroup {
    factors: Vec<usize>,
    order: usize,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() {
            bail_invalid!("group needs at least one cyclic factor");
        }
        if let Some(f) = factors.iter().find(|&&f| f < 2) {
            bail_invalid!("cyclic factor must be at least 2, got {f}");
        }
        let order = factors.iter().product();
        Ok(FiniteAbelianGroup { factors, order })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index_to_tuple(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, &f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = idx % f;
            idx /= f;
        }
        out
    }

    pub fn tuple_to_index(&self, tuple: &[usize]) -> usize {
        tuple
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&x, &f)| acc * f + x % f)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.index_to_tuple(a), self.index_to_tuple(b));
        let sum: Vec<usize> = ta
            .iter()
            .zip(&tb)
            .zip(&self.factors)
            .map(|((&x, &y), &f)| (x + y) % f)
            .collect();
        self.tuple_to_index(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let t = self.index_to_tuple(a);
        let n: Vec<usize> = t
            .iter()
            .zip(&self.factors)
            .map(|(&x, &f)| (f - x) % f)
            .collect();
        self.tuple_to_index(&n)
    }

    /// The cyclic subgroup generated by element `g`, as sorted indices.
    pub fn cyclic_subgroup(&self, g: usize) -> Vec<usize> {
        let mut members = vec![0];
        let mut cur = g % self.order;
        while cur != 0 {
            members.push(cur);
            cur = self.add(cur, g);
        }
        members.sort_unstable();
        members
    }

    /// Closure of a generating set under the group operation.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add(x, g % self.order);
                if !in_set[y] {
                    in_set[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order).filter(|&i| in_set[i]).collect()
    }

    /// Indicator vector of a set of element indices.
    pub fn indicator(&self, members: &[usize]) -> crate::numerics::CVector {
        let mut v = crate::numerics::CVector::zeros(self.order);
        for &m in members {
            v[m % self.order] = Complex64::new(1.0, 0.0);
        }
        v
    }
}

/// Fourier transform matrix of a finite abelian group: row χ, column x, entry
/// conj(χ(x)) = exp(-2πi Σ_j χ_j x_j / n_j). The trivial character is row 0
/// and the identity element is column 0, so the first row and column are all
/// ones. Satisfies A*A = |G|·I.
pub fn fourier_matrix(group: &FiniteAbelianGroup) -> CMatrix {
    let n = group.order();
    CMatrix::from_fn(n, n, |chi, x| {
        let tc = group.index_to_tuple(chi);
        let tx = group.index_to_tuple(x);
        let phase: f64 = tc
            .iter()
            .zip(&tx)
            .zip(group.factors())
            .map(|((&c, &x), &f)| (c * x % f) as f64 / f as f64)
            .sum();
        Complex64::from_polar(1.0, -TAU * phase)
    })
}

/// Sylvester-Hadamard matrix H_1^{⊗m} with H_1 = [[1, 1], [-1, 1]].
pub fn sylvester_hadamard(m: u32) -> Result<CMatrix> {
    if m > 12 {
        bail_invalid!("sylvester order 2^{m} exceeds the size guard (m <= 12)");
    }
    let one = Complex64::new(1.0, 0.0);
    let h1 = CMatrix::from_row_slice(2, 2, &[one, one, -one, one]);
    let mut h = CMatrix::from_element(1, 1, one);
    for _ in 0..m {
        h = kron(&h, &h1);
    }
    Ok(h)
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Paley type-I Hadamard matrix of order q+1 from the quadratic-residue
/// character of F_q, for primes q ≡ 3 (mod 4).
pub fn paley_hadamard(q: u64) -> Result<CMatrix> {
    if !is_prime(q) {
        bail_invalid!("paley construction needs a prime, got {q}");
    }
    if q % 4 != 3 {
        bail_invalid!("paley type I needs q ≡ 3 (mod 4), got {q} ≡ {} (mod 4)", q % 4);
    }
    if q > 997 {
        bail_invalid!("paley size guard: q <= 997, got {q}");
    }
    let q = q as usize;
    let mut chi = vec![-1.0f64; q];
    chi[0] = 0.0;
    for x in 1..q {
        chi[x * x % q] = 1.0;
    }
    let n = q + 1;
    // H = I + S with S = [[0, 1ᵀ], [-1, Q]], Q the Jacobsthal matrix
    let h = DMatrix::<f64>::from_fn(n, n, |i, j| {
        let s = match (i, j) {
            (0, 0) => 0.0,
            (0, _) => 1.0,
            (_, 0) => -1.0,
            (i, j) => chi[(q + i - j) % q],
        };
        s + if i == j { 1.0 } else { 0.0 }
    });
    Ok(h.map(|x| Complex64::new(x, 0.0)))
}

/// The 2^n × n matrix whose rows are all sign vectors in {-1, 1}^n; the
/// columns are the (±1-valued) Hadamard codewords, and S*S = 2^n·I.
pub fn hadamard_code_matrix(n: u32) -> Result<CMatrix> {
    if n == 0 || n > 16 {
        bail_invalid!("hadamard code matrix needs 1 <= n <= 16, got {n}");
    }
    let rows = 1usize << n;
    Ok(CMatrix::from_fn(rows, n as usize, |r, j| {
        let bit = (r >> j) & 1;
        Complex64::new(if bit == 0 { 1.0 } else { -1.0 }, 0.0)
    }))
}

/// Point-line incidence matrix of the projective plane PG(2, q) for prime q,
/// built from homogeneous coordinates over Z_q with the first nonzero
/// coordinate normalized to 1. Gram matrix is exactly qI + J.
pub fn pg2_incidence(q: u64) -> Result<CMatrix> {
    if !is_prime(q) {
        bail_invalid!("pg2 incidence implemented for prime q only, got {q}");
    }
    if q > 31 {
        bail_invalid!("pg2 size guard: q <= 31, got {q}");
    }
    let q = q as usize;
    let mut points: Vec<[usize; 3]> = Vec::with_capacity(q * q + q + 1);
    for y in 0..q {
        for z in 0..q {
            points.push([1, y, z]);
        }
    }
    for z in 0..q {
        points.push([0, 1, z]);
    }
    points.push([0, 0, 1]);
    let n = points.len();
    debug_assert_eq!(n, q * q + q + 1);
    // lines are the same canonical triples, via the standard duality
    Ok(CMatrix::from_fn(n, n, |p, l| {
        let dot: usize = points[p]
            .iter()
            .zip(&points[l])
            .map(|(&a, &b)| a * b)
            .sum();
        Complex64::new(if dot % q == 0 { 1.0 } else { 0.0 }, 0.0)
    }))
}

/// Haar-distributed orthogonal matrix (QR of a seeded Gaussian matrix with the
/// R diagonal sign-fixed) rescaled by the reciprocal of its largest entry, so
/// the entry bound is exactly 1. Deterministic per seed.
pub fn scaled_random_orthogonal(n: usize, seed: u64) -> Result<CMatrix> {
    if n < 2 {
        bail_invalid!("random orthogonal needs n >= 2, got {n}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gauss = || {
        // Box-Muller
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
    };
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| gauss());
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    let max = q.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    Ok(q.map(|x| Complex64::new(x / max, 0.0)))
}

/// Certificate for the k-Hadamard property of a matrix.
#[derive(Clone, Debug, Serialize)]
pub struct KHadamardCertificate {
    /// 1 / ‖(A*A)⁻¹‖_{∞→∞}; zero when the Gram matrix is singular.
    pub k: f64,
    /// max |A_ij|; must be ≤ 1 (up to tol) for the k-Hadamard definition.
    pub entry_bound: f64,
    pub entry_bound_ok: bool,
    /// ‖A*A − kI‖_{∞→∞} / k.
    pub unitary_defect: f64,
    pub gram_inverse_norm: f64,
    pub is_unitary_scaled: bool,
    pub singular: bool,
}

/// Certify the k-Hadamard property: entry bound and
/// k = 1/‖(A*A)⁻¹‖_{∞→∞}. The k is reported from the Gram inverse even when
/// A*A ≠ kI; the definition only requires the ∞→∞ bound.
pub fn certify_k_hadamard(a: &CMatrix, tol: f64) -> Result<KHadamardCertificate> {
    let entry_bound = op_norm_1_to_inf(a);
    let g = gram(a);
    match inverse_checked(&g) {
        Err(Error::SingularGram) => Ok(KHadamardCertificate {
            k: 0.0,
            entry_bound,
            entry_bound_ok: entry_bound <= 1.0 + tol,
            unitary_defect: f64::INFINITY,
            gram_inverse_norm: f64::INFINITY,
            is_unitary_scaled: false,
            singular: true,
        }),
        Err(e) => Err(e),
        Ok(inv) => {
            let gram_inverse_norm = op_norm_inf_to_inf(&inv);
            let k = 1.0 / gram_inverse_norm;
            let n = g.nrows();
            let defect_mat = &g - CMatrix::identity(n, n) * Complex64::new(k, 0.0);
            let unitary_defect = op_norm_inf_to_inf(&defect_mat) / k;
            Ok(KHadamardCertificate {
                k,
                entry_bound,
                entry_bound_ok: entry_bound <= 1.0 + tol,
                unitary_defect,
                gram_inverse_norm,
                is_unitary_scaled: unitary_defect < tol,
                singular: false,
            })
        }
    }
}
