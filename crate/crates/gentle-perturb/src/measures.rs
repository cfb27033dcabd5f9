//! Spectral densities with known closed-form transforms, and the BTB
//! (Borel Transform Boundedness) analyzer.
//!
//! Boundedness of an analytic function cannot be decided from finitely many
//! samples, so [`btb_analyze`] returns an explicit heuristic verdict:
//! stabilized sups over the smoothing schedule mean [`BtbVerdict::Bounded`], a
//! clean logarithmic growth fit means [`BtbVerdict::LogDivergent`], and
//! everything in between stays [`BtbVerdict::Inconclusive`].

use ndarray::prelude::*;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::discretization::{build_space, WeightedSpace};
use crate::error::{GpError, Result};

/// Expected BTB behavior of a density, used to cross-check the analyzer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BtbExpectation {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone)]
enum DensityKind {
    Semicircle,
    Indicator { a: f64, b: f64 },
    CosineBump { width: f64 },
    EndpointPower { exponent: f64, norm: f64 },
    Table { ts: Vec<f64>, vals: Vec<f64> },
}

/// A compactly supported bounded nonnegative density, the spectral measure of
/// the multiplication operator.
#[derive(Debug, Clone)]
pub struct SpectralDensity {
    name: String,
    kind: DensityKind,
    support: (f64, f64),
    support_bound: f64,
    btb_expected: BtbExpectation,
}

const ENDPOINT_TOL: f64 = 1e-12;

impl SpectralDensity {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Support interval [a, b].
    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    /// The bound M with supp(rho) inside (-M, M).
    pub fn support_bound(&self) -> f64 {
        self.support_bound
    }

    pub fn btb_expected(&self) -> BtbExpectation {
        self.btb_expected
    }

    /// Pointwise density value. Jump densities take the Dirichlet value 1/2 at
    /// their endpoints, which keeps midpoint quadrature second order on grids
    /// whose points land exactly on the jump.
    pub fn eval(&self, t: f64) -> f64 {
        match &self.kind {
            DensityKind::Semicircle => {
                if t.abs() <= 1.0 {
                    (2.0 / std::f64::consts::PI) * (1.0 - t * t).max(0.0).sqrt()
                } else {
                    0.0
                }
            }
            DensityKind::Indicator { a, b } => {
                let scale = (b - a).abs().max(1.0);
                if (t - a).abs() <= ENDPOINT_TOL * scale || (t - b).abs() <= ENDPOINT_TOL * scale {
                    0.5
                } else if t > *a && t < *b {
                    1.0
                } else {
                    0.0
                }
            }
            DensityKind::CosineBump { width } => {
                if t.abs() <= *width {
                    (1.0 + (std::f64::consts::PI * t / width).cos()) / (2.0 * width)
                } else {
                    0.0
                }
            }
            DensityKind::EndpointPower { exponent, norm } => {
                if t.abs() < 1.0 {
                    norm * (1.0 - t * t).powf(*exponent)
                } else {
                    0.0
                }
            }
            DensityKind::Table { ts, vals } => {
                if ts.is_empty() || t < ts[0] || t > *ts.last().unwrap() {
                    return 0.0;
                }
                match ts.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
                    Ok(i) => vals[i],
                    Err(i) => {
                        let (t0, t1) = (ts[i - 1], ts[i]);
                        let (v0, v1) = (vals[i - 1], vals[i]);
                        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
                    }
                }
            }
        }
    }

    /// Closed-form Borel transform, where one is known.
    ///
    /// Semicircle: `2(-lambda + sqrt(lambda^2 - 1))` with the branch fixed by
    /// decay at infinity; indicator on [a, b]: `ln((b - lambda)/(a - lambda))`.
    pub fn closed_form_borel(&self, lambda: Complex64) -> Option<Complex64> {
        match &self.kind {
            DensityKind::Semicircle => {
                let w = (lambda - 1.0).sqrt() * (lambda + 1.0).sqrt();
                Some(2.0 * (-lambda + w))
            }
            DensityKind::Indicator { a, b } => {
                let value = if lambda.im < 0.0 {
                    let l = lambda.conj();
                    (((b - l) / (a - l)).ln()).conj()
                } else {
                    ((b - lambda) / (a - lambda)).ln()
                };
                Some(value)
            }
            _ => None,
        }
    }

    /// Total mass of the density (analytic where available, otherwise a fine
    /// fixed midpoint quadrature).
    pub fn mass(&self) -> f64 {
        match &self.kind {
            DensityKind::Semicircle => 1.0,
            DensityKind::Indicator { a, b } => b - a,
            DensityKind::CosineBump { .. } => 1.0,
            DensityKind::EndpointPower { .. } => 1.0,
            DensityKind::Table { .. } => self.quadrature_mass(),
        }
    }

    fn quadrature_mass(&self) -> f64 {
        let (a, b) = self.support;
        if b <= a {
            return 0.0;
        }
        let n = 1 << 20;
        let h = (b - a) / n as f64;
        (0..n).map(|i| self.eval(a + (i as f64 + 0.5) * h) * h).sum()
    }

    /// All-zero table density on [-1, 1].
    pub fn zero_table() -> Self {
        SpectralDensity {
            name: "table".into(),
            kind: DensityKind::Table { ts: vec![-1.0, 1.0], vals: vec![0.0, 0.0] },
            support: (-1.0, 1.0),
            support_bound: 1.5,
            btb_expected: BtbExpectation::Yes,
        }
    }

    pub fn from_table(ts: Vec<f64>, vals: Vec<f64>) -> Result<Self> {
        if ts.len() != vals.len() || ts.len() < 2 {
            return Err(GpError::InvalidDensity("table needs matching ts/vals of length >= 2".into()));
        }
        if ts.windows(2).any(|w| w[1] <= w[0]) {
            return Err(GpError::InvalidDensity("table abscissae must be increasing".into()));
        }
        if vals.iter().any(|&v| !v.is_finite() || v < 0.0) {
            return Err(GpError::InvalidDensity("table values must be finite and nonnegative".into()));
        }
        let support = (ts[0], *ts.last().unwrap());
        let all_zero = vals.iter().all(|&v| v == 0.0);
        let bound = 1.5 * support.0.abs().max(support.1.abs()).max(1e-3);
        Ok(SpectralDensity {
            name: "table".into(),
            kind: DensityKind::Table { ts, vals },
            support,
            support_bound: bound,
            btb_expected: if all_zero { BtbExpectation::Yes } else { BtbExpectation::Unknown },
        })
    }

    pub fn to_spec(&self) -> DensitySpec {
        let mut params = serde_json::Map::new();
        let samples = match &self.kind {
            DensityKind::Indicator { a, b } => {
                params.insert("a".into(), (*a).into());
                params.insert("b".into(), (*b).into());
                None
            }
            DensityKind::CosineBump { width } => {
                params.insert("width".into(), (*width).into());
                None
            }
            DensityKind::EndpointPower { exponent, .. } => {
                params.insert("exponent".into(), (*exponent).into());
                None
            }
            DensityKind::Table { ts, vals } => {
                Some(ts.iter().copied().zip(vals.iter().copied()).collect())
            }
            DensityKind::Semicircle => None,
        };
        DensitySpec {
            name: self.name.clone(),
            params,
            support: Some(self.support),
            samples,
        }
    }

    pub fn from_spec(spec: &DensitySpec) -> Result<Self> {
        if spec.name == "table" {
            let samples = spec
                .samples
                .as_ref()
                .ok_or_else(|| GpError::InvalidDensity("table density needs samples".into()))?;
            let (ts, vals) = samples.iter().copied().unzip();
            SpectralDensity::from_table(ts, vals)
        } else {
            density_library(&spec.name, &spec.params)
        }
    }
}

/// JSON record {name, params, support, samples?} for density round trips.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensitySpec {
    pub name: String,
    #[serde(default)]
    pub params: serde_json::Map<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<(f64, f64)>>,
}

fn param_f64(params: &serde_json::Map<String, serde_json::Value>, key: &str, default: f64) -> f64 {
    params.get(key).and_then(|v| v.as_f64()).unwrap_or(default)
}

/// Builds a density from the library: semicircle, indicator, cosine_bump,
/// endpoint_power, or table (the latter needs [`SpectralDensity::from_table`]
/// or a [`DensitySpec`] with samples).
pub fn density_library(
    name: &str,
    params: &serde_json::Map<String, serde_json::Value>,
) -> Result<SpectralDensity> {
    match name {
        "semicircle" => Ok(SpectralDensity {
            name: name.into(),
            kind: DensityKind::Semicircle,
            support: (-1.0, 1.0),
            support_bound: 1.5,
            btb_expected: BtbExpectation::Yes,
        }),
        "indicator" => {
            let a = param_f64(params, "a", -1.0);
            let b = param_f64(params, "b", 1.0);
            if b <= a {
                return Err(GpError::InvalidDensity(format!("indicator needs a < b, got [{a}, {b}]")));
            }
            Ok(SpectralDensity {
                name: name.into(),
                kind: DensityKind::Indicator { a, b },
                support: (a, b),
                support_bound: 1.5 * a.abs().max(b.abs()),
                btb_expected: BtbExpectation::No,
            })
        }
        "cosine_bump" => {
            let width = param_f64(params, "width", 1.0);
            if width <= 0.0 {
                return Err(GpError::InvalidDensity(format!("cosine_bump width must be positive, got {width}")));
            }
            Ok(SpectralDensity {
                name: name.into(),
                kind: DensityKind::CosineBump { width },
                support: (-width, width),
                support_bound: 1.5 * width,
                btb_expected: BtbExpectation::Yes,
            })
        }
        "endpoint_power" => {
            let p = param_f64(params, "exponent", 0.5);
            if p <= 0.0 {
                return Err(GpError::InvalidDensity(format!("endpoint_power exponent must be positive, got {p}")));
            }
            // unit-mass normalization by fine midpoint quadrature
            let n = 1 << 20;
            let h = 2.0 / n as f64;
            let raw: f64 = (0..n)
                .map(|i| {
                    let t: f64 = -1.0 + (i as f64 + 0.5) * h;
                    (1.0 - t * t).powf(p) * h
                })
                .sum();
            let expected = if p >= 0.1 { BtbExpectation::Yes } else { BtbExpectation::Unknown };
            Ok(SpectralDensity {
                name: name.into(),
                kind: DensityKind::EndpointPower { exponent: p, norm: 1.0 / raw },
                support: (-1.0, 1.0),
                support_bound: 1.5,
                btb_expected: expected,
            })
        }
        "table" => Err(GpError::InvalidDensity(
            "table densities are built from samples; use SpectralDensity::from_table".into(),
        )),
        other => Err(GpError::UnknownDensity(other.into())),
    }
}

/// Verdict of the BTB analyzer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BtbVerdict {
    Bounded,
    LogDivergent,
    Inconclusive,
}

/// Result of a BTB sweep: per-epsilon sups of |P_eps rho| over the line, the
/// log-growth fit, the verdict, and the half-plane sample sup of |B rho|.
#[derive(Debug, Clone, Serialize)]
pub struct BtbReport {
    pub eps_schedule: Vec<f64>,
    pub sup_per_eps: Vec<f64>,
    pub fit_intercept: f64,
    /// Slope of sup against ln(1/eps).
    pub fit_slope: f64,
    pub fit_r_squared: f64,
    pub last_decade_ratio: f64,
    pub verdict: BtbVerdict,
    pub half_plane_sup: f64,
    /// Smallness radius 1/(4 pi sup_eps sup_x |P_eps rho|).
    pub delta_hat: f64,
}

/// Sups stabilize: last-decade ratio at or below this is called Bounded.
pub const BTB_STABILIZATION_FACTOR: f64 = 1.15;
/// Clear growth: ratio at or above this together with a good log fit is
/// called LogDivergent.
pub const BTB_DIVERGENCE_RATIO: f64 = 1.30;
pub const BTB_R2_MIN: f64 = 0.99;

pub fn default_eps_schedule() -> Vec<f64> {
    // 1e-1 down to 1e-3, nine points, geometric
    (0..9).map(|i| 10f64.powf(-1.0 - 0.25 * i as f64)).collect()
}

/// x-mesh for the sup: the grid points plus a four-fold refinement near the
/// support endpoints, where divergence concentrates.
fn sup_mesh(space: &WeightedSpace) -> Vec<f64> {
    let (a, b) = space.density().support();
    let dt = space.grid().spacing();
    let mut xs: Vec<f64> = space.grid().points().to_vec();
    let span = (b - a).max(dt);
    let halo = 0.1 * span;
    for &edge in &[a, b] {
        let lo = edge - halo;
        let m = (2.0 * halo / dt * 4.0) as usize;
        for i in 0..=m {
            xs.push(lo + i as f64 * (2.0 * halo) / m.max(1) as f64);
        }
    }
    xs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    xs.dedup();
    xs
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return (sy / n, 0.0, 0.0);
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let mean = sy / n;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let p = intercept + slope * x;
            (y - p) * (y - p)
        })
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - mean) * (y - mean)).sum();
    let r2 = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    (intercept, slope, r2)
}

/// Runs the BTB sweep on the density attached to `space`.
///
/// Per epsilon this takes `sup_x |P_eps rho(x)|` by direct quadrature of the
/// smoothing kernel over the weighted-space samples (the smoothed-projection
/// path, not the FFT path), then fits the sups against ln(1/eps). It also
/// samples |B rho| on a mesh of the upper half-plane whose lowest level is
/// clamped to two grid spacings, below which the quadrature no longer resolves
/// the kernel.
pub fn btb_analyze(space: &WeightedSpace, eps_schedule: &[f64]) -> Result<BtbReport> {
    if eps_schedule.len() < 5
        || eps_schedule.windows(2).any(|w| w[1] >= w[0])
        || eps_schedule[0] < 99.0 * eps_schedule[eps_schedule.len() - 1]
    {
        return Err(GpError::BadSchedule);
    }
    let xs = sup_mesh(space);
    let rho: Array1<Complex64> = space.density_samples().mapv(|r| Complex64::new(r, 0.0));
    let mut sups = Vec::with_capacity(eps_schedule.len());
    for &eps in eps_schedule {
        if eps <= 0.0 {
            return Err(GpError::BadSchedule);
        }
        let vals = crate::transforms::smoothed_projection_at(&rho, space.grid(), eps, &xs);
        sups.push(vals.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }

    let eps_min = eps_schedule[eps_schedule.len() - 1];
    let last_decade: Vec<f64> = eps_schedule
        .iter()
        .zip(sups.iter())
        .filter(|(&e, _)| e <= 10.0 * eps_min * (1.0 + 1e-12))
        .map(|(_, &s)| s)
        .collect();
    let lo = last_decade.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = last_decade.iter().copied().fold(0.0f64, f64::max);
    let all_zero = sups.iter().all(|&s| s <= 1e-12);
    let last_decade_ratio = if all_zero || lo <= 0.0 { 1.0 } else { hi / lo };

    let ln_inv_eps: Vec<f64> = eps_schedule.iter().map(|e| (1.0 / e).ln()).collect();
    let (fit_intercept, fit_slope, fit_r_squared) = linear_fit(&ln_inv_eps, &sups);

    let verdict = if all_zero || last_decade_ratio <= BTB_STABILIZATION_FACTOR {
        BtbVerdict::Bounded
    } else if last_decade_ratio >= BTB_DIVERGENCE_RATIO
        && fit_r_squared >= BTB_R2_MIN
        && fit_slope > 0.0
    {
        BtbVerdict::LogDivergent
    } else {
        BtbVerdict::Inconclusive
    };

    let half_plane_sup = half_plane_sup(space, eps_min);
    let sup_all = sups.iter().copied().fold(0.0f64, f64::max);
    let delta_hat = if sup_all > 0.0 {
        1.0 / (4.0 * std::f64::consts::PI * sup_all)
    } else {
        f64::INFINITY
    };

    Ok(BtbReport {
        eps_schedule: eps_schedule.to_vec(),
        sup_per_eps: sups,
        fit_intercept,
        fit_slope,
        fit_r_squared,
        last_decade_ratio,
        verdict,
        half_plane_sup,
        delta_hat,
    })
}

/// Max of |B rho| over a Carleson-style mesh of the upper half-plane:
/// log-spaced heights from the quadrature floor up to past the support scale,
/// horizontal lines covering the support with refinement toward the endpoints.
fn half_plane_sup(space: &WeightedSpace, eps_min: f64) -> f64 {
    let (a, b) = space.density().support();
    let dt = space.grid().spacing();
    let span = (b - a).max(dt);
    let y_min = (2.0 * dt).max(eps_min);
    let y_max = 2.0 * space.support_bound();
    let mut xs: Vec<f64> = Vec::new();
    let m = 301;
    for i in 0..m {
        xs.push(a - 0.25 * span + (i as f64 / (m - 1) as f64) * 1.5 * span);
    }
    for k in 0..40 {
        let off = 1e-3 * span * (0.5f64 * span / (1e-3 * span)).powf(k as f64 / 39.0);
        xs.push(a - off);
        xs.push(a + off);
        xs.push(b - off);
        xs.push(b + off);
    }
    let t = space.grid().points();
    let w = space.weights();
    let support = space.support();
    let mut sup: f64 = 0.0;
    let levels = 24;
    for iy in 0..levels {
        let y = y_min * (y_max / y_min).powf(iy as f64 / (levels - 1) as f64);
        for &x in &xs {
            let lam = Complex64::new(x, y);
            let mut acc = Complex64::new(0.0, 0.0);
            for &j in support {
                acc += Complex64::new(w[j], 0.0) / (Complex64::new(t[j], 0.0) - lam);
            }
            sup = sup.max(acc.norm());
        }
    }
    sup
}

/// Convenience: default grid (L = 4 scaled to the support bound, N = 4096) and
/// default schedule.
pub fn btb_analyze_default(density: &SpectralDensity) -> Result<BtbReport> {
    let l = (2.0 * density.support_bound()).max(4.0);
    let space = build_space(density, l, 4096)?;
    btb_analyze(&space, &default_eps_schedule())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_names_and_errors() {
        for name in ["semicircle", "indicator", "cosine_bump", "endpoint_power"] {
            assert!(density_library(name, &Default::default()).is_ok());
        }
        assert!(matches!(
            density_library("gaussian", &Default::default()),
            Err(GpError::UnknownDensity(_))
        ));
        let mut params = serde_json::Map::new();
        params.insert("exponent".into(), (-0.5f64).into());
        assert!(density_library("endpoint_power", &params).is_err());
        params.clear();
        params.insert("a".into(), (2.0f64).into());
        params.insert("b".into(), (1.0f64).into());
        assert!(density_library("indicator", &params).is_err());
    }

    #[test]
    fn semicircle_closed_form_values() {
        let semi = density_library("semicircle", &Default::default()).unwrap();
        let v = semi.closed_form_borel(Complex64::new(1.25, 0.0)).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        // decay at infinity fixes the branch
        let far = semi.closed_form_borel(Complex64::new(0.0, 50.0)).unwrap();
        assert!(far.norm() < 0.03);
        // odd symmetry for the even density
        let v2 = semi.closed_form_borel(Complex64::new(-1.25, 0.0)).unwrap();
        assert!((v2 - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn indicator_closed_form_values() {
        let ind = density_library("indicator", &Default::default()).unwrap();
        let v = ind.closed_form_borel(Complex64::new(0.0, 1.0)).unwrap();
        assert!((v - Complex64::new(0.0, std::f64::consts::PI / 2.0)).norm() < 1e-12);
        let v = ind.closed_form_borel(Complex64::new(2.0, 0.0)).unwrap();
        assert!((v.re - (1.0f64 / 3.0).ln()).abs() < 1e-12 && v.im.abs() < 1e-12);
        // conjugate symmetry across the axis
        let up = ind.closed_form_borel(Complex64::new(0.3, 0.4)).unwrap();
        let dn = ind.closed_form_borel(Complex64::new(0.3, -0.4)).unwrap();
        assert!((up.conj() - dn).norm() < 1e-13);
    }

    #[test]
    fn quadrature_matches_closed_forms_away_from_support() {
        for name in ["semicircle", "indicator"] {
            let d = density_library(name, &Default::default()).unwrap();
            for &(re, im) in &[(1.6, 0.0), (0.0, 0.5), (-2.0, 0.25), (0.7, 1.0)] {
                let lam = Complex64::new(re, im);
                let q = crate::transforms::borel_transform(&d, lam, 4096).unwrap();
                let c = d.closed_form_borel(lam).unwrap();
                assert!(
                    (q.value() - c).norm() < 1e-6,
                    "{name} at {lam}: {} vs {c}",
                    q.value()
                );
            }
        }
    }

    #[test]
    fn table_density_round_trip_and_zero() {
        let zero = SpectralDensity::zero_table();
        assert_eq!(zero.mass(), 0.0);
        let spec = zero.to_spec();
        let back = SpectralDensity::from_spec(&spec).unwrap();
        assert_eq!(back.eval(0.0), 0.0);

        let tab = SpectralDensity::from_table(vec![-1.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]).unwrap();
        assert!((tab.eval(0.5) - 0.5).abs() < 1e-12);
        assert!((tab.mass() - 1.0).abs() < 1e-4);
        let json = serde_json::to_string(&tab.to_spec()).unwrap();
        let spec: DensitySpec = serde_json::from_str(&json).unwrap();
        let back = SpectralDensity::from_spec(&spec).unwrap();
        assert!((back.eval(0.5) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn endpoint_power_is_normalized() {
        let d = density_library("endpoint_power", &Default::default()).unwrap();
        let n = 1 << 16;
        let h = 2.0 / n as f64;
        let mass: f64 = (0..n).map(|i| d.eval(-1.0 + (i as f64 + 0.5) * h) * h).sum();
        assert!((mass - 1.0).abs() < 1e-6);
        assert_eq!(d.btb_expected(), BtbExpectation::Yes);
        let mut params = serde_json::Map::new();
        params.insert("exponent".into(), (0.05f64).into());
        let d = density_library("endpoint_power", &params).unwrap();
        assert_eq!(d.btb_expected(), BtbExpectation::Unknown);
    }

    #[test]
    fn btb_schedule_validation() {
        let semi = density_library("semicircle", &Default::default()).unwrap();
        let space = build_space(&semi, 4.0, 256).unwrap();
        assert!(btb_analyze(&space, &[0.1, 0.05]).is_err());
        assert!(btb_analyze(&space, &[0.1, 0.2, 0.05, 0.01, 0.001]).is_err());
    }

    #[test]
    fn btb_zero_density_is_bounded_with_zero_sup() {
        let zero = SpectralDensity::zero_table();
        let space = build_space(&zero, 4.0, 1024).unwrap();
        let rep = btb_analyze(&space, &default_eps_schedule()).unwrap();
        assert_eq!(rep.verdict, BtbVerdict::Bounded);
        assert!(rep.sup_per_eps.iter().all(|&s| s == 0.0));
        assert_eq!(rep.half_plane_sup, 0.0);
    }
}
