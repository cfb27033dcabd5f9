//! The Friedrichs construction for rank-one perturbations: the transformer
//! Gamma on rank-one operators, the multiplier psi, the wave operators, the
//! functional-calculus representation, and the derivative formula at zero
//! coupling.
//!
//! On a diagonal grid operator A = diag(t_j), the regularized commutator
//! equation `(A + i eps) Z - Z A = R` is solved exactly by entrywise division,
//! which is precisely the integral kernel `r2(x) conj(r1(t)) rho(t)/(x + i eps - t)`
//! sampled by the midpoint rule. Its eps -> 0 limit is the principal-value
//! kernel together with the Sokhotski-Plemelj half-residue on the diagonal;
//! [`gamma_rank_one`] materializes that limit directly. This realization of the
//! Riesz projection (rather than the sharp Fourier multiplier) keeps the
//! commutator collapse exact on the grid: the intertwining defect of the wave
//! operators is exactly gamma * dt * sup|psi rho| and halves with the grid
//! spacing.

use ndarray::prelude::*;
use num_complex::Complex64;

use crate::discretization::{zero_continuation, OperatorRep, SpaceTag, WeightedSpace};
use crate::error::{GpError, Result};
use crate::linalg;
use crate::panel;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
pub const DEFAULT_PANEL_SEED: u64 = 7;

/// Rank-one operator f -> (f, r1)_rho r2 with bounded factors.
#[derive(Debug, Clone)]
pub struct RankOneOperator {
    /// r2, the output direction.
    pub left: Array1<Complex64>,
    /// r1, the functional direction.
    pub right: Array1<Complex64>,
}

impl RankOneOperator {
    pub fn new(left: Array1<Complex64>, right: Array1<Complex64>) -> Self {
        RankOneOperator { left, right }
    }

    /// The perturbation B = (., g) g.
    pub fn b_operator(space: &WeightedSpace) -> Self {
        let g = space.g_vector().samples;
        RankOneOperator { left: g.clone(), right: g }
    }

    pub fn zero(n: usize) -> Self {
        RankOneOperator { left: Array1::zeros(n), right: Array1::zeros(n) }
    }

    /// Dense matrix r2(t_j) conj(r1(t_k)) w_k.
    pub fn materialize(&self, space: &WeightedSpace) -> OperatorRep {
        let w = space.weights();
        let n = self.left.len();
        let m = Array2::from_shape_fn((n, n), |(j, k)| {
            self.left[j] * self.right[k].conj() * w[k]
        });
        OperatorRep::new(m, SpaceTag::Weighted)
    }
}

/// The regularized transformer on a rank-one operator: the integral kernel
/// `r2(x) conj(r1(t)) rho(t) / (x + i eps - t)` sampled on the grid. Solves
/// `(A + i eps I) Z - Z A = R` exactly in the discrete algebra.
pub fn gamma_eps_rank_one(
    r: &RankOneOperator,
    eps: f64,
    space: &WeightedSpace,
) -> Result<OperatorRep> {
    if eps <= 0.0 {
        return Err(GpError::NonPositiveEpsilon(eps));
    }
    let t = space.grid().points();
    let w = space.weights();
    let n = t.len();
    let m = Array2::from_shape_fn((n, n), |(j, k)| {
        r.left[j] * r.right[k].conj() * w[k] / Complex64::new(t[j] - t[k], eps)
    });
    Ok(OperatorRep::new(m, SpaceTag::Weighted))
}

/// The transformer Gamma R: the eps -> 0 strong limit of [`gamma_eps_rank_one`].
/// Off the diagonal the kernel becomes the principal value `R_jk/(t_j - t_k)`;
/// on the diagonal the Plemelj half-residue `-i pi r2 conj(r1) rho(t_j)`.
pub fn gamma_rank_one(r: &RankOneOperator, space: &WeightedSpace) -> OperatorRep {
    let t = space.grid().points();
    let w = space.weights();
    let dt = space.grid().spacing();
    let n = t.len();
    let m = Array2::from_shape_fn((n, n), |(j, k)| {
        let num = r.left[j] * r.right[k].conj() * w[k];
        if j == k {
            num * Complex64::new(0.0, -std::f64::consts::PI / dt)
        } else {
            num / Complex64::new(t[j] - t[k], 0.0)
        }
    });
    OperatorRep::new(m, SpaceTag::Weighted)
}

/// Boundary Riesz projection in the principal-value realization:
/// `(P+ h)_j = h_j/2 + (1/2 pi i) sum_{l != j} h_l dt/(t_l - t_j)`.
/// This is the projection implied by the Gamma kernel; the sharp-multiplier
/// FFT realization lives in [`crate::transforms::riesz_projection`].
pub fn pv_riesz(h: &Array1<Complex64>, space: &WeightedSpace) -> Array1<Complex64> {
    let t = space.grid().points();
    let dt = space.grid().spacing();
    let n = t.len();
    let pref = Complex64::new(0.0, -1.0 / TWO_PI); // 1/(2 pi i)
    Array1::from_shape_fn(n, |j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 0..n {
            if l != j && h[l] != Complex64::new(0.0, 0.0) {
                acc += h[l] * dt / Complex64::new(t[l] - t[j], 0.0);
            }
        }
        0.5 * h[j] + pref * acc
    })
}

/// The multiplier psi_gamma = 1/(1 + 2 pi i gamma P+ rho) with its smallness
/// certificate, plus the holomorphic continuation of conj(psi) used by U-.
#[derive(Debug, Clone)]
pub struct PsiMultiplier {
    pub gamma: Complex64,
    /// psi_gamma samples.
    pub samples: Array1<Complex64>,
    /// 1/(1 - 2 pi i gamma conj(P+ rho)): equals conj(psi_gamma) for real
    /// gamma and is holomorphic in gamma.
    pub samples_tilde: Array1<Complex64>,
    /// Boundary values u = P+ rho.
    pub boundary: Array1<Complex64>,
    /// Smallness certificate 1/(4 pi sup|P+ rho|); |gamma| below it gives
    /// sup|psi| <= 2.
    pub delta_hat: f64,
}

const SINGULAR_COUPLING_MIN: f64 = 1e-8;

/// Builds psi_gamma on the grid. Fails if the denominator nearly vanishes
/// anywhere (singular coupling).
pub fn psi_gamma(gamma: Complex64, space: &WeightedSpace) -> Result<PsiMultiplier> {
    let rho: Array1<Complex64> = space.density_samples().mapv(|r| Complex64::new(r, 0.0));
    let u = pv_riesz(&rho, space);
    let sup_u = u.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let delta_hat = if sup_u > 0.0 {
        1.0 / (4.0 * std::f64::consts::PI * sup_u)
    } else {
        f64::INFINITY
    };
    let c = Complex64::new(0.0, TWO_PI) * gamma;
    let mut samples = Array1::zeros(u.len());
    let mut samples_tilde = Array1::zeros(u.len());
    for (j, &uj) in u.iter().enumerate() {
        let denom = 1.0 + c * uj;
        if denom.norm() < SINGULAR_COUPLING_MIN {
            return Err(GpError::SingularCoupling { min: denom.norm() });
        }
        let denom_t = 1.0 - c * uj.conj();
        if denom_t.norm() < SINGULAR_COUPLING_MIN {
            return Err(GpError::SingularCoupling { min: denom_t.norm() });
        }
        samples[j] = 1.0 / denom;
        samples_tilde[j] = 1.0 / denom_t;
    }
    Ok(PsiMultiplier { gamma, samples, samples_tilde, boundary: u, delta_hat })
}

/// Solutions R+ = gamma (., g) M_psi g and R- = (., conj(gamma psi~) g) g of
/// the Friedrichs fixed-point equations. For real gamma the two vectors
/// coincide: r+ = r- = M_psi g.
pub fn solve_r_pm(gamma: Complex64, space: &WeightedSpace) -> Result<(RankOneOperator, RankOneOperator)> {
    let psi = psi_gamma(gamma, space)?;
    Ok(build_r_pm(&psi, space))
}

fn build_r_pm(psi: &PsiMultiplier, space: &WeightedSpace) -> (RankOneOperator, RankOneOperator) {
    let g = space.g_vector().samples;
    let r_plus_left: Array1<Complex64> =
        psi.samples.iter().zip(g.iter()).map(|(&p, &gv)| psi.gamma * p * gv).collect();
    let r_minus_right: Array1<Complex64> = psi
        .samples_tilde
        .iter()
        .zip(g.iter())
        .map(|(&pt, &gv)| (psi.gamma * pt).conj() * gv)
        .collect();
    (
        RankOneOperator::new(r_plus_left, g.clone()),
        RankOneOperator::new(g, r_minus_right),
    )
}

/// Residuals of the wave-operator identities, both as strict operator norms of
/// the materialized matrices (D^(1/2) similarity on the support subgrid) and
/// on the resolved sector (the seeded band-limited panel). The sharp frequency
/// cutoff of any grid Riesz projection leaves an N-independent artifact at the
/// Nyquist corner, so the strict norms stall at a grid-structure floor while
/// the resolved norms track the continuum identities and halve with dt.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ResidualRecord {
    pub inverse_op_norm: f64,
    pub inverse_resolved: f64,
    pub unitarity_op_norm: Option<f64>,
    pub unitarity_resolved: Option<f64>,
    pub intertwining_op_norm: f64,
    pub intertwining_resolved: f64,
    /// |(U+)* - U-| for real gamma (exact on the grid up to rounding).
    pub adjoint_defect: Option<f64>,
}

/// The pair (U+, U-) at coupling gamma with construction metadata.
#[derive(Debug, Clone)]
pub struct WaveOperatorPair {
    pub gamma: Complex64,
    pub u_plus: OperatorRep,
    pub u_minus: OperatorRep,
    pub psi: PsiMultiplier,
    pub residuals: ResidualRecord,
}

/// U+ = I + Gamma R+ and U- = I - Gamma R-, without residual diagnostics.
pub fn wave_matrices(
    gamma: Complex64,
    space: &WeightedSpace,
) -> Result<(Array2<Complex64>, Array2<Complex64>, PsiMultiplier)> {
    let psi = psi_gamma(gamma, space)?;
    let (r_plus, r_minus) = build_r_pm(&psi, space);
    let n = space.len();
    let mut u_plus = gamma_rank_one(&r_plus, space).matrix;
    let mut u_minus = gamma_rank_one(&r_minus, space).matrix;
    u_minus.mapv_inplace(|z| -z);
    for j in 0..n {
        u_plus[[j, j]] += 1.0;
        u_minus[[j, j]] += 1.0;
    }
    Ok((u_plus, u_minus, psi))
}

/// Full-grid matrix of A_gamma = diag(t) + gamma (., g) g.
pub fn perturbed_operator(gamma: Complex64, space: &WeightedSpace) -> Array2<Complex64> {
    let t = space.grid().points();
    let w = space.weights();
    let n = t.len();
    Array2::from_shape_fn((n, n), |(j, k)| {
        let mut v = gamma * w[k];
        if j == k {
            v += t[j];
        }
        v
    })
}

/// Constructs the wave-operator pair and measures the inverse, unitarity, and
/// intertwining defects.
pub fn wave_operators(gamma: Complex64, space: &WeightedSpace) -> Result<WaveOperatorPair> {
    wave_operators_seeded(gamma, space, DEFAULT_PANEL_SEED)
}

pub fn wave_operators_seeded(
    gamma: Complex64,
    space: &WeightedSpace,
    panel_seed: u64,
) -> Result<WaveOperatorPair> {
    let (u_plus, u_minus, psi) = wave_matrices(gamma, space)?;
    let n = space.len();
    let test_panel = panel::resolved_panel(n, panel_seed);

    let mut prod_pm = u_plus.dot(&u_minus);
    let mut prod_mp = u_minus.dot(&u_plus);
    for j in 0..n {
        prod_pm[[j, j]] -= 1.0;
        prod_mp[[j, j]] -= 1.0;
    }
    let inverse_op_norm = linalg::weighted_operator_norm(&prod_pm, space)
        .max(linalg::weighted_operator_norm(&prod_mp, space));
    let inverse_resolved = panel::panel_operator_norm(&prod_pm, space, &test_panel)
        .max(panel::panel_operator_norm(&prod_mp, space, &test_panel));

    let a_gamma = perturbed_operator(gamma, space);
    let t = space.grid().points();
    // A U+ - U+ A_gamma with A applied as a row scaling
    let mut intw = u_plus.clone();
    for (j, mut row) in intw.rows_mut().into_iter().enumerate() {
        let tj = Complex64::new(t[j], 0.0);
        row.mapv_inplace(|z| z * tj);
    }
    intw -= &u_plus.dot(&a_gamma);
    let intertwining_op_norm = linalg::weighted_operator_norm(&intw, space);
    let intertwining_resolved = panel::panel_operator_norm(&intw, space, &test_panel);

    let real_gamma = gamma.im == 0.0;
    let (unitarity_op_norm, unitarity_resolved, adjoint_defect) = if real_gamma {
        let up_s = linalg::support_block(&u_plus, space);
        let up_adj = linalg::weighted_adjoint_support(&u_plus, space);
        let um_s = linalg::support_block(&u_minus, space);
        let mut q = up_adj.dot(&up_s);
        for j in 0..q.nrows() {
            q[[j, j]] -= 1.0;
        }
        let s = space.support();
        let w = space.weights();
        let ws: Vec<f64> = s.iter().map(|&j| w[j]).collect();
        let sym = Array2::from_shape_fn(q.dim(), |(i, j)| q[[i, j]] * (ws[i] / ws[j]).sqrt());
        let unit_strict = linalg::spectral_norm(&sym);
        let mut unit_resolved: f64 = 0.0;
        for f in &test_panel {
            let fs: Array1<Complex64> = s.iter().map(|&j| f[j]).collect();
            let qf = q.dot(&fs);
            let num: f64 = qf.iter().zip(ws.iter()).map(|(z, &wv)| z.norm_sqr() * wv).sum::<f64>().sqrt();
            let den: f64 = fs.iter().zip(ws.iter()).map(|(z, &wv)| z.norm_sqr() * wv).sum::<f64>().sqrt();
            if den > 0.0 {
                unit_resolved = unit_resolved.max(num / den);
            }
        }
        let adj_diff = &up_adj - &um_s;
        let adj_sym = Array2::from_shape_fn(adj_diff.dim(), |(i, j)| {
            adj_diff[[i, j]] * (ws[i] / ws[j]).sqrt()
        });
        (
            Some(unit_strict),
            Some(unit_resolved),
            Some(linalg::spectral_norm(&adj_sym)),
        )
    } else {
        (None, None, None)
    };

    Ok(WaveOperatorPair {
        gamma,
        u_plus: OperatorRep::new(u_plus, SpaceTag::Weighted),
        u_minus: OperatorRep::new(u_minus, SpaceTag::Weighted),
        psi,
        residuals: ResidualRecord {
            inverse_op_norm,
            inverse_resolved,
            unitarity_op_norm,
            unitarity_resolved,
            intertwining_op_norm,
            intertwining_resolved,
            adjoint_defect,
        },
    })
}

/// Residuals of the transformer product identity
/// `Gamma_eps R1 . Gamma_eps R2 = Gamma_2eps(Gamma_eps R1 . R2 + R1 . Gamma_eps R2)`
/// at finite eps (exact in the discrete algebra) and of its eps -> 0 version
/// through [`gamma_rank_one`].
#[derive(Debug, Clone, serde::Serialize)]
pub struct ProductIdentityResidual {
    pub eps_residual: f64,
    pub limit_residual: f64,
}

pub fn product_identity_residual(
    r_plus: &RankOneOperator,
    r_minus: &RankOneOperator,
    eps: f64,
    space: &WeightedSpace,
) -> Result<ProductIdentityResidual> {
    let r1 = r_plus.materialize(space).matrix;
    let r2 = r_minus.materialize(space).matrix;

    let g1 = gamma_eps_rank_one(r_plus, eps, space)?.matrix;
    let g2 = gamma_eps_rank_one(r_minus, eps, space)?.matrix;
    let lhs = g1.dot(&g2);
    let inner = g1.dot(&r2) + r1.dot(&g2);
    let rhs = gamma_eps_general(&inner, 2.0 * eps, space);
    let eps_residual = linalg::weighted_operator_norm(&(&lhs - &rhs), space);

    let g1 = gamma_rank_one(r_plus, space).matrix;
    let g2 = gamma_rank_one(r_minus, space).matrix;
    let lhs = g1.dot(&g2);
    let inner = g1.dot(&r2) + r1.dot(&g2);
    let rhs = gamma_limit_general(&inner, space);
    let limit_residual = linalg::weighted_operator_norm(&(&lhs - &rhs), space);

    Ok(ProductIdentityResidual { eps_residual, limit_residual })
}

/// Entrywise solution of the regularized commutator equation for a general
/// matrix right-hand side.
fn gamma_eps_general(r: &Array2<Complex64>, eps: f64, space: &WeightedSpace) -> Array2<Complex64> {
    let t = space.grid().points();
    Array2::from_shape_fn(r.dim(), |(j, k)| r[[j, k]] / Complex64::new(t[j] - t[k], eps))
}

fn gamma_limit_general(r: &Array2<Complex64>, space: &WeightedSpace) -> Array2<Complex64> {
    let t = space.grid().points();
    let dt = space.grid().spacing();
    Array2::from_shape_fn(r.dim(), |(j, k)| {
        if j == k {
            r[[j, k]] * Complex64::new(0.0, -std::f64::consts::PI / dt)
        } else {
            r[[j, k]] / Complex64::new(t[j] - t[k], 0.0)
        }
    })
}

/// phi(A_gamma) = U- M_phi0 U+ with phi continued by zero outside [-M, M].
pub fn functional_calculus(
    phi: impl Fn(f64) -> f64,
    gamma: Complex64,
    space: &WeightedSpace,
) -> Result<OperatorRep> {
    let (u_plus, u_minus, _) = wave_matrices(gamma, space)?;
    let phi0 = zero_continuation(&phi, space);
    // U- diag(phi0) U+
    let mut mid = u_plus;
    for (j, mut row) in mid.rows_mut().into_iter().enumerate() {
        let p = Complex64::new(phi0[j], 0.0);
        row.mapv_inplace(|z| z * p);
    }
    Ok(OperatorRep::new(u_minus.dot(&mid), SpaceTag::Weighted))
}

/// Derivative of the operator function at gamma = 0:
/// `pi i M_g [H, M_phi0] M_{conj(g) rho}`, assembled through the divided
/// difference kernel of the commutator,
/// `(phi0(u) - phi0(s))/(u - s) * (1/pi i)`, whose diagonal is phi'(u). For
/// phi(t) = t the kernel collapses to the constant 1/(pi i) on the support and
/// the sandwich reproduces B exactly.
pub fn derivative_at_zero(phi: impl Fn(f64) -> f64, space: &WeightedSpace) -> OperatorRep {
    let t = space.grid().points();
    let w = space.weights();
    let n = t.len();
    let phi0 = zero_continuation(&phi, space);
    let m_bound = space.support_bound();
    let m = Array2::from_shape_fn((n, n), |(j, k)| {
        let dd = if j == k {
            if t[j].abs() <= m_bound {
                let h = 6e-6 * (1.0 + t[j].abs());
                (phi(t[j] + h) - phi(t[j] - h)) / (2.0 * h)
            } else {
                0.0
            }
        } else {
            (phi0[j] - phi0[k]) / (t[j] - t[k])
        };
        Complex64::new(dd * w[k], 0.0)
    });
    OperatorRep::new(m, SpaceTag::Weighted)
}
