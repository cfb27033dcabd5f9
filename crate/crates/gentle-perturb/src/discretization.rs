//! Uniform grids, midpoint quadrature, and the weighted Hilbert space L2(R, rho).
//!
//! A [`Grid`] discretizes a symmetric window [-L, L) with a power-of-two number
//! of points so that Fourier transforms are available. A [`WeightedSpace`] attaches
//! a spectral density to the grid: vectors tagged [`SpaceTag::Weighted`] live in
//! L2(R, rho) with inner product `sum f conj(h) w_j`, `w_j = rho(t_j) dt`, while
//! [`SpaceTag::Flat`] vectors live in the ambient L2(R). Zero-weight points are
//! kept: the ambient space needs them for transforms, and the rho-inner product
//! ignores them through the support mask.

use ndarray::prelude::*;
use num_complex::Complex64;

use crate::error::{GpError, Result};
use crate::measures::SpectralDensity;

/// Which inner product a vector or operator is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceTag {
    /// Ambient L2(R) with the uniform dt weight.
    Flat,
    /// L2(R, rho) with weights w_j = rho(t_j) dt.
    Weighted,
}

/// Uniform grid t_j = -L + j dt, j = 0..N-1, dt = 2L/N, N a power of two.
#[derive(Debug, Clone)]
pub struct Grid {
    half_width: f64,
    points: Vec<f64>,
    spacing: f64,
}

impl Grid {
    pub fn new(half_width: f64, point_count: usize) -> Result<Self> {
        if !point_count.is_power_of_two() || point_count < 64 {
            return Err(GpError::NonPowerOfTwo(point_count));
        }
        let spacing = 2.0 * half_width / point_count as f64;
        let points = (0..point_count)
            .map(|j| -half_width + j as f64 * spacing)
            .collect();
        Ok(Grid { half_width, points, spacing })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Index of the grid point closest to `t`.
    pub fn nearest_index(&self, t: f64) -> usize {
        let j = ((t + self.half_width) / self.spacing).round() as isize;
        j.clamp(0, self.points.len() as isize - 1) as usize
    }
}

/// Grid samples of a function together with the space they belong to.
#[derive(Debug, Clone)]
pub struct VectorRep {
    pub samples: Array1<Complex64>,
    pub tag: SpaceTag,
}

impl VectorRep {
    pub fn new(samples: Array1<Complex64>, tag: SpaceTag) -> Self {
        VectorRep { samples, tag }
    }

    pub fn from_fn(grid: &Grid, tag: SpaceTag, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = grid.points().iter().map(|&t| f(t)).collect();
        VectorRep { samples: Array1::from_vec(samples), tag }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// A dense matrix acting on grid sample vectors, tagged with the inner product
/// in which adjoints of it are taken.
#[derive(Debug, Clone)]
pub struct OperatorRep {
    pub matrix: Array2<Complex64>,
    pub tag: SpaceTag,
}

impl OperatorRep {
    pub fn new(matrix: Array2<Complex64>, tag: SpaceTag) -> Self {
        OperatorRep { matrix, tag }
    }

    pub fn identity(n: usize, tag: SpaceTag) -> Self {
        OperatorRep { matrix: Array2::eye(n), tag }
    }

    pub fn apply(&self, v: &VectorRep) -> Result<VectorRep> {
        if v.tag != self.tag {
            return Err(GpError::TagMismatch(self.tag, v.tag));
        }
        Ok(VectorRep::new(self.matrix.dot(&v.samples), self.tag))
    }
}

/// Grid discretization of L2(R, rho): points, quadrature weights, support mask.
#[derive(Debug, Clone)]
pub struct WeightedSpace {
    grid: Grid,
    density: SpectralDensity,
    weights: Array1<f64>,
    support: Vec<usize>,
    support_bound: f64,
}

/// Builds the weighted space for `density` on a grid with half-width `half_width`
/// and `point_count` points. Rejects grids that violate the padding rule
/// L >= 2M, which bounds wrap-around of the Cauchy tails in the transforms.
pub fn build_space(density: &SpectralDensity, half_width: f64, point_count: usize) -> Result<WeightedSpace> {
    let m = density.support_bound();
    if half_width < 2.0 * m {
        return Err(GpError::PaddingViolation { half_width, support_bound: m });
    }
    let grid = Grid::new(half_width, point_count)?;
    let dt = grid.spacing();
    let weights: Array1<f64> = grid.points().iter().map(|&t| density.eval(t) * dt).collect();
    let support: Vec<usize> = weights
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0.0)
        .map(|(j, _)| j)
        .collect();
    Ok(WeightedSpace { grid, density: density.clone(), weights, support, support_bound: m })
}

impl WeightedSpace {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn density(&self) -> &SpectralDensity {
        &self.density
    }

    pub fn weights(&self) -> &Array1<f64> {
        &self.weights
    }

    /// Indices of grid points with strictly positive weight.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn support_bound(&self) -> f64 {
        self.support_bound
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Density samples rho(t_j) over the whole grid.
    pub fn density_samples(&self) -> Array1<f64> {
        let dt = self.grid.spacing();
        self.weights.mapv(|w| w / dt)
    }

    /// Midpoint-quadrature mass sum(w_j).
    pub fn total_mass(&self) -> f64 {
        self.weights.sum()
    }

    /// Inner product of two vectors carrying the same tag.
    ///
    /// Weighted vectors pair as `sum f conj(h) w_j`; flat vectors as
    /// `sum f conj(h) dt`. Conjugate-linear in the second argument.
    pub fn inner_product(&self, f: &VectorRep, h: &VectorRep) -> Result<Complex64> {
        if f.tag != h.tag {
            return Err(GpError::TagMismatch(f.tag, h.tag));
        }
        let acc = match f.tag {
            SpaceTag::Weighted => self
                .support
                .iter()
                .map(|&j| f.samples[j] * h.samples[j].conj() * self.weights[j])
                .sum(),
            SpaceTag::Flat => {
                let dt = self.grid.spacing();
                f.samples
                    .iter()
                    .zip(h.samples.iter())
                    .map(|(a, b)| a * b.conj() * dt)
                    .sum()
            }
        };
        Ok(acc)
    }

    pub fn norm(&self, f: &VectorRep) -> f64 {
        self.inner_product(f, f).map(|v| v.re.max(0.0).sqrt()).unwrap_or(0.0)
    }

    /// The constant-one vector representing g (the paper fixes g = 1 rho-a.e.;
    /// extending by 1 off the support keeps it bounded on the whole grid).
    pub fn g_vector(&self) -> VectorRep {
        VectorRep::new(Array1::from_elem(self.len(), Complex64::new(1.0, 0.0)), SpaceTag::Weighted)
    }
}

/// Re-tags flat samples as an element of L2(R, rho). The embedding J changes
/// no sample values; only the inner product changes.
pub fn embed_j(f: &VectorRep) -> Result<VectorRep> {
    if f.tag != SpaceTag::Flat {
        return Err(GpError::TagMismatch(SpaceTag::Flat, f.tag));
    }
    Ok(VectorRep::new(f.samples.clone(), SpaceTag::Weighted))
}

/// The adjoint J* of the embedding: multiplication by rho mapping the weighted
/// space back to L2(R). Satisfies (Jf, h)_rho = (f, J* h)_flat exactly on the grid.
pub fn adjoint_j(space: &WeightedSpace) -> OperatorRep {
    let rho = space.density_samples();
    let n = space.len();
    let mut m = Array2::zeros((n, n));
    for j in 0..n {
        m[[j, j]] = Complex64::new(rho[j], 0.0);
    }
    OperatorRep::new(m, SpaceTag::Flat)
}

/// Diagonal multiplication operator by the zero-continuation of `phi`:
/// phi_0(t) = phi(t) on [-M, M] and 0 outside.
pub fn multiplication_operator(
    phi: impl Fn(f64) -> f64,
    space: &WeightedSpace,
    tag: SpaceTag,
) -> Result<OperatorRep> {
    let n = space.len();
    let m_bound = space.support_bound();
    let mut m = Array2::zeros((n, n));
    for (j, &t) in space.grid().points().iter().enumerate() {
        let v = if t.abs() <= m_bound { phi(t) } else { 0.0 };
        if !v.is_finite() {
            return Err(GpError::NonFiniteValue(t));
        }
        m[[j, j]] = Complex64::new(v, 0.0);
    }
    Ok(OperatorRep::new(m, tag))
}

/// Zero-continuation of a scalar function sampled on the grid.
pub fn zero_continuation(phi: impl Fn(f64) -> f64, space: &WeightedSpace) -> Array1<f64> {
    let m_bound = space.support_bound();
    space
        .grid()
        .points()
        .iter()
        .map(|&t| if t.abs() <= m_bound { phi(t) } else { 0.0 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::density_library;

    #[test]
    fn indicator_mass_within_two_cells() {
        let d = density_library("indicator", &Default::default()).unwrap();
        let space = build_space(&d, 4.0, 1024).unwrap();
        let dt = space.grid().spacing();
        assert!((space.total_mass() - 2.0).abs() <= 2.0 * dt, "mass {}", space.total_mass());
    }

    #[test]
    fn zero_density_gives_zero_weights() {
        let d = SpectralDensity::zero_table();
        let space = build_space(&d, 4.0, 256).unwrap();
        assert!(space.weights().iter().all(|&w| w == 0.0));
        assert!(space.support().is_empty());
    }

    #[test]
    fn semicircle_mass_close_to_one() {
        let d = density_library("semicircle", &Default::default()).unwrap();
        let space = build_space(&d, 4.0, 2048).unwrap();
        assert!((space.total_mass() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn padding_rule_enforced() {
        let d = density_library("semicircle", &Default::default()).unwrap();
        assert!(matches!(
            build_space(&d, 2.0, 256),
            Err(GpError::PaddingViolation { .. })
        ));
        assert!(matches!(build_space(&d, 4.0, 100), Err(GpError::NonPowerOfTwo(100))));
    }

    #[test]
    fn inner_product_examples() {
        let ind = density_library("indicator", &Default::default()).unwrap();
        let space = build_space(&ind, 4.0, 1024).unwrap();
        let g = space.g_vector();
        let gg = space.inner_product(&g, &g).unwrap();
        assert!((gg.re - 2.0).abs() <= 2.0 * space.grid().spacing());
        assert!(gg.im.abs() < 1e-14);

        let zero = VectorRep::new(Array1::zeros(space.len()), SpaceTag::Weighted);
        assert_eq!(space.inner_product(&zero, &zero).unwrap(), Complex64::new(0.0, 0.0));

        let semi = density_library("semicircle", &Default::default()).unwrap();
        let space = build_space(&semi, 4.0, 2048).unwrap();
        let g = space.g_vector();
        let gg = space.inner_product(&g, &g).unwrap();
        assert!((gg.re - 1.0).abs() < 1e-3);
    }

    #[test]
    fn tag_mismatch_rejected() {
        let d = density_library("semicircle", &Default::default()).unwrap();
        let space = build_space(&d, 4.0, 256).unwrap();
        let f = VectorRep::new(Array1::zeros(space.len()), SpaceTag::Flat);
        let h = VectorRep::new(Array1::zeros(space.len()), SpaceTag::Weighted);
        assert!(space.inner_product(&f, &h).is_err());
    }

    #[test]
    fn adjoint_j_matches_semicircle_density_at_zero() {
        let d = density_library("semicircle", &Default::default()).unwrap();
        let space = build_space(&d, 4.0, 1024).unwrap();
        let j_star = adjoint_j(&space);
        let j0 = space.grid().nearest_index(0.0);
        let v = j_star.matrix[[j0, j0]];
        assert!((v.re - 2.0 / std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn adjoint_identity_holds_on_grid() {
        // (Jf, h)_rho = (f, M_rho h)_flat is an exact rearrangement of the sums.
        let d = density_library("semicircle", &Default::default()).unwrap();
        let space = build_space(&d, 4.0, 1024).unwrap();
        let mut rng = crate::panel::seeded_rng(11);
        let f = crate::panel::random_vector(space.len(), SpaceTag::Flat, &mut rng);
        let h = crate::panel::random_vector(space.len(), SpaceTag::Flat, &mut rng);
        let jf = embed_j(&f).unwrap();
        let jh = embed_j(&h).unwrap();
        let lhs = space.inner_product(&jf, &jh).unwrap();
        let j_star = adjoint_j(&space);
        let mh = j_star.apply(&h).unwrap();
        let rhs = space.inner_product(&f, &mh).unwrap();
        assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0));
    }

    #[test]
    fn multiplication_operator_zero_continuation() {
        let d = density_library("semicircle", &Default::default()).unwrap();
        let space = build_space(&d, 4.0, 256).unwrap();
        let one = multiplication_operator(|_| 1.0, &space, SpaceTag::Weighted).unwrap();
        let m_bound = space.support_bound();
        for (j, &t) in space.grid().points().iter().enumerate() {
            let expect = if t.abs() <= m_bound { 1.0 } else { 0.0 };
            assert_eq!(one.matrix[[j, j]].re, expect);
        }
        let abs_op = multiplication_operator(|t| t.abs(), &space, SpaceTag::Weighted).unwrap();
        let j = space.grid().nearest_index(-0.5);
        assert!((abs_op.matrix[[j, j]].re - 0.5).abs() < 1e-12);
        assert!(multiplication_operator(|t| 1.0 / t, &space, SpaceTag::Weighted).is_err());
    }

    #[test]
    fn identity_multiplication_is_selfadjoint_weighted() {
        let d = density_library("semicircle", &Default::default()).unwrap();
        let space = build_space(&d, 4.0, 512).unwrap();
        let a = multiplication_operator(|t| t, &space, SpaceTag::Weighted).unwrap();
        let adj = crate::linalg::weighted_adjoint_support(&a.matrix, &space);
        let blk = crate::linalg::support_block(&a.matrix, &space);
        let diff = &adj - &blk;
        assert!(diff.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-13);
    }
}
