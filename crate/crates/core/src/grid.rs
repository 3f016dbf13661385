//! Functions on ℝ discretized on uniform symmetric grids, with the Fourier
//! transform and linear canonical transforms realized as Riemann-sum
//! quadrature operators, plus the variance and higher-moment functionals.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use crate::error::{bail_invalid, Result};
use crate::numerics::{lp_norm_of_magnitudes, NormIndex};

/// Samples of a function on the uniform grid x_m = x0 + m·dx.
#[derive(Clone, Debug)]
pub struct GridFunction {
    pub samples: Vec<Complex64>,
    pub x0: f64,
    pub dx: f64,
}

impl GridFunction {
    pub fn new(x0: f64, dx: f64, samples: Vec<Complex64>) -> Result<Self> {
        if samples.is_empty() {
            bail_invalid!("grid function needs at least one sample");
        }
        if !(dx > 0.0 && dx.is_finite()) {
            bail_invalid!("grid spacing must be positive and finite, got {dx}");
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            bail_invalid!("grid samples must be finite");
        }
        Ok(GridFunction { samples, x0, dx })
    }

    /// Sample f on the symmetric grid of n points with spacing dx
    /// (x0 = -(n-1)·dx/2).
    pub fn from_fn(n: usize, dx: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        if n == 0 {
            bail_invalid!("grid function needs at least one sample");
        }
        let x0 = -((n - 1) as f64) * dx / 2.0;
        let samples = (0..n).map(|m| f(x0 + m as f64 * dx)).collect();
        GridFunction::new(x0, dx, samples)
    }

    /// Sample f on the symmetric grid of half-width l (dx = 2l/n).
    pub fn on_interval(n: usize, l: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        if !(l > 0.0) {
            bail_invalid!("interval half-width must be positive, got {l}");
        }
        Self::from_fn(n, 2.0 * l / n as f64, f)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn x(&self, m: usize) -> f64 {
        self.x0 + m as f64 * self.dx
    }

    /// Whether the grid is symmetric about the origin.
    pub fn is_symmetric(&self) -> bool {
        let center = self.x0 + (self.len() - 1) as f64 * self.dx / 2.0;
        center.abs() < 1e-9 * self.dx
    }

    pub(crate) fn require_symmetric(&self) -> Result<()> {
        if !self.is_symmetric() {
            bail_invalid!(
                "grid must be symmetric about 0 (x0 = -(n-1)dx/2), got x0 = {}",
                self.x0
            );
        }
        Ok(())
    }

    /// Quadrature Lp norm: (dx·Σ|f|^p)^{1/p}, or max |f| for p = ∞.
    pub fn lp_norm(&self, p: NormIndex) -> f64 {
        let mags: Vec<f64> = self.samples.iter().map(|z| z.norm()).collect();
        match p {
            NormIndex::Infinity => lp_norm_of_magnitudes(&mags, p),
            NormIndex::Finite(q) => {
                self.dx.powf(1.0 / q) * lp_norm_of_magnitudes(&mags, p)
            }
        }
    }

    /// Fraction of the L¹ mass lying outside the central 80% of the grid —
    /// a truncation diagnostic.
    pub fn tail_fraction(&self) -> f64 {
        let n = self.len();
        let lo = n / 10;
        let hi = n - n / 10;
        let total: f64 = self.samples.iter().map(|z| z.norm()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let tail: f64 = self
            .samples
            .iter()
            .enumerate()
            .filter(|(m, _)| *m < lo || *m >= hi)
            .map(|(_, z)| z.norm())
            .sum();
        tail / total
    }

    /// Pointwise scaling by a complex constant.
    pub fn scale(&self, c: Complex64) -> GridFunction {
        GridFunction {
            samples: self.samples.iter().map(|z| z * c).collect(),
            x0: self.x0,
            dx: self.dx,
        }
    }

    /// Largest |f - g| over the grid; grids must coincide.
    pub fn max_deviation(&self, other: &GridFunction) -> Result<f64> {
        if self.len() != other.len()
            || (self.dx - other.dx).abs() > 1e-12 * self.dx
            || (self.x0 - other.x0).abs() > 1e-9 * self.dx
        {
            bail_invalid!("grids do not coincide");
        }
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Quadrature Fourier transform f̂(ξ_j) = dx·Σ_m f(x_m)·e^{-2πi·x_m·ξ_j} on
/// the dual symmetric grid with dξ = 1/(n·dx), evaluated exactly (to
/// roundoff) via an FFT with pre- and post-twiddles.
pub fn ft_grid(f: &GridFunction) -> Result<GridFunction> {
    f.require_symmetric()?;
    let n = f.len();
    let dxi = 1.0 / (n as f64 * f.dx);
    let xi0 = -((n - 1) as f64) * dxi / 2.0;

    // x_m ξ_j = x0·ξ_j + m·dx·ξ0 + m·j/n, so
    // f̂_j = dx·e^{-2πi·x0·ξ_j} · DFT[f_m·e^{-2πi·m·dx·ξ0}]_j
    let mut buf: Vec<Complex64> = f
        .samples
        .iter()
        .enumerate()
        .map(|(m, z)| z * Complex64::from_polar(1.0, -2.0 * PI * m as f64 * f.dx * xi0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let samples = buf
        .into_iter()
        .enumerate()
        .map(|(j, z)| {
            let xi = xi0 + j as f64 * dxi;
            z * Complex64::from_polar(f.dx, -2.0 * PI * f.x0 * xi)
        })
        .collect();
    GridFunction::new(xi0, dxi, samples)
}

/// An SL₂(ℝ) parameter matrix [[a, b], [c, d]] with b ≠ 0 for the linear
/// canonical transform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LctParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl LctParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if (det - 1.0).abs() > 1e-12 {
            bail_invalid!("LCT parameters must have determinant 1, got {det}");
        }
        if b == 0.0 {
            bail_invalid!("the b = 0 limit of the LCT is out of scope");
        }
        Ok(LctParams { a, b, c, d })
    }

    pub fn inverse(&self) -> LctParams {
        LctParams {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }
}

/// Linear canonical transform by direct quadrature of
/// e^{-iπ·sgn(b)/4}/√|b| · ∫ f(x)·e^{iπ(dξ² - 2xξ + ax²)/b} dx,
/// on the symmetric output grid with dξ = |b|/(n·dx). O(n²) on purpose: it
/// serves as an oracle independent of the FFT path.
pub fn lct_apply(m: LctParams, f: &GridFunction) -> Result<GridFunction> {
    f.require_symmetric()?;
    let n = f.len();
    let dxi = m.b.abs() / (n as f64 * f.dx);
    let xi0 = -((n - 1) as f64) * dxi / 2.0;
    let prefactor = Complex64::from_polar(
        f.dx / m.b.abs().sqrt(),
        -PI * m.b.signum() / 4.0,
    );
    let samples: Vec<Complex64> = (0..n)
        .map(|j| {
            let xi = xi0 + j as f64 * dxi;
            let mut acc = Complex64::new(0.0, 0.0);
            for (mm, z) in f.samples.iter().enumerate() {
                let x = f.x(mm);
                let phase = PI * (m.d * xi * xi - 2.0 * x * xi + m.a * x * x) / m.b;
                acc += z * Complex64::from_polar(1.0, phase);
            }
            acc * prefactor
        })
        .collect();
    GridFunction::new(xi0, dxi, samples)
}

/// V(f) = dx·Σ x_m²·|f(x_m)|².
pub fn variance(f: &GridFunction) -> Result<f64> {
    f.require_symmetric()?;
    Ok(f.dx
        * f.samples
            .iter()
            .enumerate()
            .map(|(m, z)| {
                let x = f.x(m);
                x * x * z.norm_sqr()
            })
            .sum::<f64>())
}

/// M_r(f) = dx·Σ |x_m|^r·|f(x_m)|², for moment order r > 1.
pub fn moment(f: &GridFunction, r: f64) -> Result<f64> {
    f.require_symmetric()?;
    if !(r > 1.0) {
        bail_invalid!("moment order must exceed 1, got {r}");
    }
    Ok(f.dx
        * f.samples
            .iter()
            .enumerate()
            .map(|(m, z)| f.x(m).abs().powf(r) * z.norm_sqr())
            .sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn gaussian(n: usize, l: f64) -> GridFunction {
        GridFunction::on_interval(n, l, |x| Complex64::new((-PI * x * x).exp(), 0.0)).unwrap()
    }

    #[test]
    fn gaussian_is_its_own_transform() {
        // n = 4L² makes the dual grid coincide with the source grid
        let f = gaussian(256, 8.0);
        let fhat = ft_grid(&f).unwrap();
        assert_relative_eq!(fhat.dx, f.dx, max_relative = 1e-12);
        assert!(f.max_deviation(&fhat).unwrap() < 1e-6);
    }

    #[test]
    fn ft_matches_direct_quadrature() {
        // oracle: O(n²) Riemann sum of the defining integral
        let f = GridFunction::on_interval(64, 4.0, |x| {
            Complex64::new((-x * x).exp(), 0.3 * (-x.abs()).exp())
        })
        .unwrap();
        let fhat = ft_grid(&f).unwrap();
        let n = f.len();
        for j in (0..n).step_by(7) {
            let xi = fhat.x(j);
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..n {
                acc += f.samples[m]
                    * Complex64::from_polar(1.0, -2.0 * PI * f.x(m) * xi);
            }
            acc *= f.dx;
            assert!((acc - fhat.samples[j]).norm() < 1e-10);
        }
    }

    #[test]
    fn complex_gaussian_family_closed_form() {
        // f(x) = e^{-π((a+bi)x)²} transforms to (1/(a+bi))·e^{-π(ξ/(a+bi))²}
        let (a, b) = (2.0, 1.0);
        let w = Complex64::new(a, b);
        let f = GridFunction::on_interval(2048, 8.0, |x| (-PI * (w * x) * (w * x)).exp())
            .unwrap();
        let fhat = ft_grid(&f).unwrap();
        for j in (0..2048).step_by(97) {
            let xi = fhat.x(j);
            let z = Complex64::new(xi, 0.0) / w;
            let expect = (-PI * z * z).exp() / w;
            assert!(
                (fhat.samples[j] - expect).norm() < 1e-5,
                "at ξ = {xi}: {} vs {expect}",
                fhat.samples[j]
            );
        }
    }

    #[test]
    fn double_transform_is_parity() {
        let f = GridFunction::on_interval(256, 6.0, |x| {
            Complex64::new((-PI * x * x).exp() * (1.0 + x), 0.0)
        })
        .unwrap();
        let ff = ft_grid(&ft_grid(&f).unwrap()).unwrap();
        let n = f.len();
        // the symmetric grid maps m ↦ n-1-m under x ↦ -x
        let max_dev = (0..n)
            .map(|m| (ff.samples[m] - f.samples[n - 1 - m]).norm())
            .fold(0.0, f64::max);
        assert!(max_dev < 1e-5, "parity deviation {max_dev}");
    }

    #[test]
    fn plancherel_is_exact_for_the_quadrature() {
        let f = GridFunction::on_interval(128, 5.0, |x| {
            Complex64::new((x * 0.7).sin(), (-x * x).exp())
        })
        .unwrap();
        let fhat = ft_grid(&f).unwrap();
        assert_relative_eq!(
            f.lp_norm(NormIndex::two()),
            fhat.lp_norm(NormIndex::two()),
            max_relative = 1e-12
        );
    }

    #[test]
    fn lp_norm_quadrature_weights() {
        // constant 1 on [-2, 2): ‖f‖₁ = n·dx = 4, ‖f‖₂ = 2, ‖f‖_∞ = 1
        let f = GridFunction::on_interval(400, 2.0, |_| Complex64::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(f.lp_norm(NormIndex::one()), 4.0, max_relative = 1e-12);
        assert_relative_eq!(f.lp_norm(NormIndex::two()), 2.0, max_relative = 1e-12);
        assert_relative_eq!(f.lp_norm(NormIndex::infinity()), 1.0);
    }

    #[test]
    fn asymmetric_grid_rejected() {
        let g = GridFunction::new(0.0, 0.1, vec![Complex64::new(1.0, 0.0); 64]).unwrap();
        assert!(ft_grid(&g).is_err());
        assert!(variance(&g).is_err());
    }

    #[test]
    fn lct_of_rotation_matrix_is_fourier_transform() {
        let f = gaussian(256, 6.0);
        let m = LctParams::new(0.0, 1.0, -1.0, 0.0).unwrap();
        let lct = lct_apply(m, &f).unwrap();
        let fhat = ft_grid(&f).unwrap();
        let phase = Complex64::from_polar(1.0, -PI / 4.0);
        let max_dev = lct
            .samples
            .iter()
            .zip(&fhat.samples)
            .map(|(l, h)| (l - h * phase).norm())
            .fold(0.0, f64::max);
        assert!(max_dev < 1e-5, "deviation {max_dev}");
    }

    #[test]
    fn lct_inversion_on_gaussian() {
        let f = gaussian(512, 8.0);
        for (a, b, c, d) in [
            (0.0, 1.0, -1.0, 0.0),
            (1.0, 1.0, 0.0, 1.0),
            (0.0, 2.0, -0.5, 0.0),
            (0.0, 0.5, -2.0, 0.0),
            (1.0, 2.0, 1.0, 3.0),
        ] {
            let m = LctParams::new(a, b, c, d).unwrap();
            let fwd = lct_apply(m, &f).unwrap();
            let back = lct_apply(m.inverse(), &fwd).unwrap();
            let dev = f.max_deviation(&back).unwrap();
            assert!(dev < 1e-4, "inversion residual {dev} for b = {b}");
        }
    }

    #[test]
    fn lct_one_to_inf_bound() {
        let m = LctParams::new(1.0, 2.0, 1.0, 3.0).unwrap();
        let f = GridFunction::on_interval(200, 5.0, |x| {
            Complex64::new((-PI * x * x / 3.0).exp() * (2.0 * x).cos(), x.sin())
        })
        .unwrap();
        let lf = lct_apply(m, &f).unwrap();
        let bound = f.lp_norm(NormIndex::one()) / m.b.abs().sqrt();
        assert!(lf.lp_norm(NormIndex::infinity()) <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn lct_rejects_bad_params() {
        assert!(LctParams::new(1.0, 1.0, 1.0, 1.0).is_err(), "determinant 0");
        assert!(LctParams::new(1.0, 0.0, 0.0, 1.0).is_err(), "b = 0");
    }

    #[test]
    fn variance_of_unit_gaussian() {
        // ∫ x²e^{-2πx²} dx = 1/(4π)·√(1/2)·2 … oracle: V = 1/(4π)·‖f‖₂²·2π/… ;
        // direct closed form: ∫x²e^{-2πx²}dx = (1/(4π))·(1/√2)
        let f = gaussian(4096, 8.0);
        let v = variance(&f).unwrap();
        let expect = 1.0 / (4.0 * PI) * (0.5f64).sqrt();
        assert_relative_eq!(v, expect, max_relative = 1e-10);
    }

    #[test]
    fn variance_scales_quadratically_under_dilation() {
        let s: f64 = 1.7;
        let f = gaussian(4096, 8.0);
        let g = GridFunction::on_interval(4096, 8.0 * s, |x| {
            Complex64::new((-PI * (x / s) * (x / s)).exp() / s.sqrt(), 0.0)
        })
        .unwrap();
        assert_relative_eq!(
            variance(&g).unwrap(),
            s * s * variance(&f).unwrap(),
            max_relative = 1e-9
        );
    }

    #[test]
    fn moment_two_is_variance() {
        let f = gaussian(1024, 8.0);
        assert_relative_eq!(
            moment(&f, 2.0).unwrap(),
            variance(&f).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn moment_four_of_gaussian() {
        // ∫ x⁴ e^{-2πx²} dx = 3/(16π²)·(1/√2)
        let f = gaussian(4096, 8.0);
        let m4 = moment(&f, 4.0).unwrap();
        let expect = 3.0 / (16.0 * PI * PI) * (0.5f64).sqrt();
        assert_relative_eq!(m4, expect, max_relative = 1e-6);
        assert!(moment(&f, 1.0).is_err());
    }

    #[test]
    fn moments_shrink_with_support() {
        let mut last = f64::INFINITY;
        for w in [1.0, 0.5, 0.25, 0.125] {
            let f = GridFunction::on_interval(2048, 4.0, |x| {
                Complex64::new(if x.abs() < w { 1.0 } else { 0.0 }, 0.0)
            })
            .unwrap();
            let m = moment(&f, 3.0).unwrap();
            assert!(m < last);
            last = m;
        }
    }

    #[test]
    fn tail_fraction_diagnostic() {
        let wide = GridFunction::on_interval(512, 2.0, |x| {
            Complex64::new((-PI * x * x).exp(), 0.0)
        })
        .unwrap();
        assert!(wide.tail_fraction() > 1e-5, "truncated Gaussian has tail mass");
        let narrow = gaussian(512, 16.0);
        assert!(narrow.tail_fraction() < 1e-12);
    }
}
