//! Riesz projection, Hilbert transform, smoothed projection, and the Borel
//! (Cauchy) transform of spectral densities.
//!
//! Fourier convention: `F(w) = integral f(t) exp(-iwt) dt`, so DFT bin k of an
//! N-point grid carries frequency `pi k / L` for k < N/2 and the negative
//! alias for k >= N/2. The Riesz projection keeps strictly positive bins, half
//! of the zero bin, and none of the Nyquist bin; this makes P+ + P- = I exact
//! at the multiplier level and gives H = P+ - P- the multiplier sgn(w) with
//! value 0 at w = 0 only.

use ndarray::prelude::*;
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::discretization::{Grid, SpaceTag, VectorRep};
use crate::error::{GpError, Result};
use crate::measures::SpectralDensity;

/// The fixed Fourier convention of the crate (see module docs): forward sign
/// -1, Hardy rule "keep w >= 0", zero-frequency weight 1/2.
pub struct FourierConvention;

impl FourierConvention {
    pub const FORWARD_SIGN: f64 = -1.0;
    pub const ZERO_FREQUENCY_WEIGHT: f64 = 0.5;

    /// Multiplier of the Riesz projection on the N-point frequency lattice.
    pub fn riesz_multiplier(n: usize) -> Array1<f64> {
        let mut m = Array1::zeros(n);
        m[0] = Self::ZERO_FREQUENCY_WEIGHT;
        for k in 1..n / 2 {
            m[k] = 1.0;
        }
        m
    }

    /// Multiplier sgn(w) of the Hilbert transform: 2 P+ - I.
    pub fn hilbert_multiplier(n: usize) -> Array1<f64> {
        Self::riesz_multiplier(n).mapv(|v| 2.0 * v - 1.0)
    }
}

pub fn forward_fft(f: &Array1<Complex64>) -> Array1<Complex64> {
    let mut buf: Vec<Complex64> = f.to_vec();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    Array1::from_vec(buf)
}

pub fn inverse_fft(f: &Array1<Complex64>) -> Array1<Complex64> {
    let n = f.len();
    let mut buf: Vec<Complex64> = f.to_vec();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    Array1::from_vec(buf).mapv_into(|z| z * scale)
}

fn apply_multiplier(f: &Array1<Complex64>, m: &Array1<f64>) -> Array1<Complex64> {
    let mut spec = forward_fft(f);
    for (z, &w) in spec.iter_mut().zip(m.iter()) {
        *z *= w;
    }
    inverse_fft(&spec)
}

/// Riesz projection P+ onto the Hardy space, as a sharp Fourier multiplier.
pub fn riesz_projection(f: &VectorRep) -> Result<VectorRep> {
    if f.tag != SpaceTag::Flat {
        return Err(GpError::TagMismatch(SpaceTag::Flat, f.tag));
    }
    let m = FourierConvention::riesz_multiplier(f.len());
    Ok(VectorRep::new(apply_multiplier(&f.samples, &m), SpaceTag::Flat))
}

/// Hilbert transform H = P+ - P-, the sgn(w) multiplier.
pub fn hilbert_transform(f: &VectorRep) -> Result<VectorRep> {
    if f.tag != SpaceTag::Flat {
        return Err(GpError::TagMismatch(SpaceTag::Flat, f.tag));
    }
    let m = FourierConvention::hilbert_multiplier(f.len());
    Ok(VectorRep::new(apply_multiplier(&f.samples, &m), SpaceTag::Flat))
}

/// Dense circulant matrix of the Riesz projection on an N-point grid.
pub fn riesz_projection_matrix(n: usize) -> Array2<Complex64> {
    let m = FourierConvention::riesz_multiplier(n);
    let col = inverse_fft(&m.mapv(|v| Complex64::new(v, 0.0)));
    Array2::from_shape_fn((n, n), |(j, l)| col[(j + n - l) % n])
}

/// Smoothed projection by direct midpoint quadrature of the Cauchy kernel:
/// `(P_eps f)(u) = (1/2 pi i) sum_s f(s) dt / (s - u - i eps)`.
///
/// Deliberately O(N^2) and FFT-free: it is the independent oracle for the
/// multiplier route and the building block of the BTB analyzer.
pub fn smoothed_projection(f: &VectorRep, grid: &Grid, eps: f64) -> Result<VectorRep> {
    if f.tag != SpaceTag::Flat {
        return Err(GpError::TagMismatch(SpaceTag::Flat, f.tag));
    }
    if eps <= 0.0 {
        return Err(GpError::NonPositiveEpsilon(eps));
    }
    let vals = smoothed_projection_at(&f.samples, grid, eps, grid.points());
    Ok(VectorRep::new(vals, SpaceTag::Flat))
}

/// Smoothed projection evaluated at arbitrary points `us`.
pub fn smoothed_projection_at(
    samples: &Array1<Complex64>,
    grid: &Grid,
    eps: f64,
    us: &[f64],
) -> Array1<Complex64> {
    let dt = grid.spacing();
    let ts = grid.points();
    // 1/(2 pi i) = -i/(2 pi)
    let pref = Complex64::new(0.0, -1.0 / (2.0 * std::f64::consts::PI));
    Array1::from_shape_fn(us.len(), |i| {
        let u = us[i];
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, &fs) in ts.iter().zip(samples.iter()) {
            if fs != Complex64::new(0.0, 0.0) {
                acc += fs * dt / Complex64::new(s - u, -eps);
            }
        }
        pref * acc
    })
}

/// One Borel-transform evaluation with its quadrature error estimate.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BorelEvaluation {
    pub lambda_re: f64,
    pub lambda_im: f64,
    pub value_re: f64,
    pub value_im: f64,
    /// dt * sup(rho) / dist^2 bound on the midpoint error.
    pub error_estimate: f64,
    /// Imaginary shift applied for evaluations hugging the support.
    pub shift_applied: f64,
}

impl BorelEvaluation {
    pub fn lambda(&self) -> Complex64 {
        Complex64::new(self.lambda_re, self.lambda_im)
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value_re, self.value_im)
    }
}

pub const BOREL_DEFAULT_POINTS: usize = 1 << 13;

/// Borel transform `B rho (lambda) = integral rho(t) / (t - lambda) dt` by
/// midpoint quadrature over the support interval with `n_points` cells.
///
/// Real lambda on the support is rejected. Evaluations with 0 < |Im lambda|
/// below two cell widths (and real part over the support) are shifted away
/// from the axis and the shift is recorded, never silent.
pub fn borel_transform(
    density: &SpectralDensity,
    lambda: Complex64,
    n_points: usize,
) -> Result<BorelEvaluation> {
    let (a, b) = density.support();
    let h = (b - a) / n_points.max(1) as f64;
    let on_axis = lambda.im == 0.0;
    let in_band = lambda.re >= a - h && lambda.re <= b + h;
    if on_axis && lambda.re >= a && lambda.re <= b && density.eval(lambda.re) > 0.0 {
        return Err(GpError::OnSupport(lambda.re));
    }
    let mut eval_at = lambda;
    let mut shift = 0.0;
    if in_band && lambda.im.abs() < 2.0 * h && !on_axis {
        let target = 2.0 * h * lambda.im.signum();
        shift = target - lambda.im;
        eval_at = Complex64::new(lambda.re, target);
    }
    // Conjugate symmetry is enforced by construction for real densities:
    // evaluate in the upper half-plane and conjugate back.
    let flip = eval_at.im < 0.0;
    let z = if flip { eval_at.conj() } else { eval_at };
    let mut acc = Complex64::new(0.0, 0.0);
    let mut sup = 0.0f64;
    let mut dist2 = f64::INFINITY;
    for i in 0..n_points {
        let t = a + (i as f64 + 0.5) * h;
        let r = density.eval(t);
        if r != 0.0 {
            acc += Complex64::new(r * h, 0.0) / (Complex64::new(t, 0.0) - z);
            sup = sup.max(r);
            dist2 = dist2.min((Complex64::new(t, 0.0) - z).norm_sqr());
        }
    }
    let value = if flip { acc.conj() } else { acc };
    let error_estimate = if dist2.is_finite() && dist2 > 0.0 {
        h * sup / dist2
    } else {
        0.0
    };
    Ok(BorelEvaluation {
        lambda_re: lambda.re,
        lambda_im: lambda.im,
        value_re: value.re,
        value_im: value.im,
        error_estimate,
        shift_applied: shift,
    })
}

/// Derivative of the Borel transform, `integral rho(t)/(t - lambda)^2 dt`,
/// by the same midpoint rule. Used by the secular Newton iteration.
pub fn borel_derivative(density: &SpectralDensity, lambda: Complex64, n_points: usize) -> Complex64 {
    let (a, b) = density.support();
    let h = (b - a) / n_points.max(1) as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n_points {
        let t = a + (i as f64 + 0.5) * h;
        let r = density.eval(t);
        if r != 0.0 {
            let d = Complex64::new(t, 0.0) - lambda;
            acc += Complex64::new(r * h, 0.0) / (d * d);
        }
    }
    acc
}

/// Recovers the mass rho([a,b]) from boundary values of the Borel transform:
/// `(1/pi) lim integral_a^b Im B rho(t + i tau) dt`, extrapolated to tau = 0
/// by a least-squares linear fit over the schedule.
pub fn stieltjes_inversion(
    density: &SpectralDensity,
    a: f64,
    b: f64,
    tau_schedule: &[f64],
) -> Result<f64> {
    if tau_schedule.is_empty() {
        return Err(GpError::BadSchedule);
    }
    if a == b {
        return Ok(0.0);
    }
    let n_x = 4096;
    let hx = (b - a) / n_x as f64;
    let n_quad = 1 << 14;
    let mut vals = Vec::with_capacity(tau_schedule.len());
    for &tau in tau_schedule {
        if tau <= 0.0 {
            return Err(GpError::BadSchedule);
        }
        let mut acc = 0.0;
        for i in 0..n_x {
            let x = a + (i as f64 + 0.5) * hx;
            let ev = borel_transform(density, Complex64::new(x, tau), n_quad)?;
            acc += ev.value_im * hx;
        }
        vals.push(acc / std::f64::consts::PI);
    }
    if vals.len() == 1 {
        return Ok(vals[0]);
    }
    // Linear least squares in tau; the intercept is the extrapolated mass.
    let n = vals.len() as f64;
    let sx: f64 = tau_schedule.iter().sum();
    let sy: f64 = vals.iter().sum();
    let sxx: f64 = tau_schedule.iter().map(|t| t * t).sum();
    let sxy: f64 = tau_schedule.iter().zip(vals.iter()).map(|(t, v)| t * v).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return Ok(sy / n);
    }
    let slope = (n * sxy - sx * sy) / denom;
    Ok((sy - slope * sx) / n)
}
