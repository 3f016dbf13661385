//! Construction and certification of k-Hadamard operators, and executable
//! checks for the uncertainty inequalities they satisfy.
//!
//! An m×n complex matrix A is k-Hadamard when every entry has modulus at most
//! one and ‖(A*A)⁻¹‖_{∞→∞} ≤ 1/k. The crate provides:
//!
//! - a catalog of such matrices ([`construct`]): abelian group Fourier
//!   matrices, Sylvester and Paley Hadamard matrices, the Hadamard code,
//!   projective-plane incidence matrices, scaled random orthogonal matrices;
//! - a certifier computing the largest valid k for an arbitrary matrix;
//! - finite-dimensional uncertainty checks ([`finite`]): support and norm
//!   uncertainty inequalities, approximate-support variants, and a
//!   counterexample generator for the p ≥ 2 regime;
//! - the analogous theory over non-abelian groups ([`group`], [`nonabelian`]),
//!   where the Fourier side is block-diagonal and supports are replaced by
//!   ranks;
//! - discretized transforms on the real line ([`grid`], [`continuous`]):
//!   the Fourier transform, linear canonical transforms, and the
//!   variance/moment uncertainty inequalities they obey.

pub mod construct;
pub mod continuous;
pub mod error;
pub mod finite;
pub mod grid;
pub mod group;
pub mod nonabelian;
pub mod numerics;
pub mod report;

pub use construct::{
    certify_k_hadamard, fourier_matrix, hadamard_code_matrix, paley_hadamard, pg2_incidence,
    scaled_random_orthogonal, sylvester_hadamard, FiniteAbelianGroup, KHadamardCertificate,
};
pub use error::{Error, Result};
pub use numerics::{CMatrix, CVector, NormIndex};
pub use report::InequalityReport;

#[cfg(test)]
pub(crate) fn testrng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
pub(crate) fn random_cmatrix(
    rng: &mut rand_chacha::ChaCha8Rng,
    rows: usize,
    cols: usize,
) -> CMatrix {
    use rand::Rng;
    CMatrix::from_fn(rows, cols, |_, _| {
        num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

#[cfg(test)]
pub(crate) fn random_cvector(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> CVector {
    use rand::Rng;
    CVector::from_fn(n, |_, _| {
        num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}
