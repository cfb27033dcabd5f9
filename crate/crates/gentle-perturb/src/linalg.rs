//! Dense linear-algebra helpers: support-block extraction, weighted adjoints
//! and similarities, operator norms, and guarded eigendecompositions.
//!
//! Weighted-space operator norms are taken after the D^(1/2) similarity on the
//! support subgrid, D = diag(w_j): an operator T on L2(R, rho) has
//! `norm = sigma_max(D^(1/2) T[s,s] D^(-1/2))`. Off-support rows and columns
//! never influence the action on the weighted space, because every operator
//! built here reads off-support input components only through factors of rho.

use ndarray::prelude::*;
use ndarray_linalg::{Eig, Eigh, Inverse, UPLO};
use num_complex::Complex64;

use crate::discretization::WeightedSpace;
use crate::error::{GpError, Result};

/// Restriction of a full-grid matrix to the support subgrid.
pub fn support_block(m: &Array2<Complex64>, space: &WeightedSpace) -> Array2<Complex64> {
    let s = space.support();
    let n = s.len();
    Array2::from_shape_fn((n, n), |(i, j)| m[[s[i], s[j]]])
}

/// Weighted adjoint D^-1 M^H D of the support block.
pub fn weighted_adjoint_support(m: &Array2<Complex64>, space: &WeightedSpace) -> Array2<Complex64> {
    let s = space.support();
    let w = space.weights();
    let n = s.len();
    Array2::from_shape_fn((n, n), |(i, j)| m[[s[j], s[i]]].conj() * (w[s[j]] / w[s[i]]))
}

/// D^(1/2) M[s,s] D^(-1/2): the similarity taking the weighted inner product
/// to the plain one on the support subgrid.
pub fn weighted_similarity(m: &Array2<Complex64>, space: &WeightedSpace) -> Array2<Complex64> {
    let s = space.support();
    let w = space.weights();
    let n = s.len();
    Array2::from_shape_fn((n, n), |(i, j)| {
        m[[s[i], s[j]]] * (w[s[i]] / w[s[j]]).sqrt()
    })
}

/// Largest singular value by power iteration on M^H M, seeded deterministically.
pub fn spectral_norm(m: &Array2<Complex64>) -> f64 {
    let n = m.ncols();
    if n == 0 {
        return 0.0;
    }
    let mut rng = crate::panel::seeded_rng(0x5eed);
    let mut v: Array1<Complex64> = crate::panel::random_vector_raw(n, &mut rng);
    let mut norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.mapv_inplace(|z| z / norm);
    let mh = m.t().mapv(|z| z.conj());
    let mut sigma2 = 0.0;
    for _ in 0..500 {
        let w = mh.dot(&m.dot(&v));
        let new_sigma2 = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if new_sigma2 == 0.0 {
            return 0.0;
        }
        v = w.mapv(|z| z / new_sigma2);
        if (new_sigma2 - sigma2).abs() <= 1e-12 * new_sigma2 {
            sigma2 = new_sigma2;
            break;
        }
        sigma2 = new_sigma2;
    }
    norm = sigma2.sqrt();
    norm
}

/// Operator norm of a full-grid matrix acting on the weighted space.
pub fn weighted_operator_norm(m: &Array2<Complex64>, space: &WeightedSpace) -> f64 {
    spectral_norm(&weighted_similarity(m, space))
}

pub fn frobenius(m: &Array2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian eigendecomposition of the D^(1/2)-symmetrized support block of a
/// real-gamma perturbed operator. Returns eigenvalues ascending and the
/// orthogonal eigenvector matrix, both in the symmetrized frame.
pub fn symmetric_eig(m: &Array2<f64>) -> Result<(Array1<f64>, Array2<f64>)> {
    let (vals, vecs) = m.eigh(UPLO::Lower)?;
    Ok((vals, vecs))
}

/// General complex eigendecomposition with a condition-number guard on the
/// eigenvector matrix. Returns (eigenvalues, V, V^-1, cond(V)).
pub fn guarded_eig(
    m: &Array2<Complex64>,
) -> Result<(Array1<Complex64>, Array2<Complex64>, Array2<Complex64>, f64)> {
    let (vals, vecs) = m.eig()?;
    let vinv = vecs.inv().map_err(|e| GpError::EigFailure(e.to_string()))?;
    let cond = spectral_norm(&vecs) * spectral_norm(&vinv);
    if !cond.is_finite() || cond > 1e8 {
        return Err(GpError::IllConditioned(cond));
    }
    Ok((vals, vecs, vinv, cond))
}

/// Applies a scalar function to a matrix through the given eigendecomposition.
pub fn matrix_function(
    vals: &Array1<Complex64>,
    vecs: &Array2<Complex64>,
    vinv: &Array2<Complex64>,
    f: impl Fn(Complex64) -> Complex64,
) -> Array2<Complex64> {
    let fv: Array1<Complex64> = vals.mapv(f);
    let mut scaled = vecs.clone();
    for (mut col, &fz) in scaled.columns_mut().into_iter().zip(fv.iter()) {
        col.mapv_inplace(|z| z * fz);
    }
    scaled.dot(vinv)
}

/// Real diagonal + rank-one symmetrization diag(t_s) + gamma sqrt(w) sqrt(w)^T
/// on the support subgrid (real gamma).
pub fn symmetrized_perturbed(space: &WeightedSpace, gamma: f64) -> Array2<f64> {
    let s = space.support();
    let w = space.weights();
    let t = space.grid().points();
    let n = s.len();
    let mut m = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            m[[i, j]] = gamma * (w[s[i]] * w[s[j]]).sqrt();
        }
        m[[i, i]] += t[s[i]];
    }
    m
}

/// Complex-symmetric counterpart for complex gamma.
pub fn symmetrized_perturbed_complex(space: &WeightedSpace, gamma: Complex64) -> Array2<Complex64> {
    let s = space.support();
    let w = space.weights();
    let t = space.grid().points();
    let n = s.len();
    let mut m = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            m[[i, j]] = gamma * (w[s[i]] * w[s[j]]).sqrt();
        }
        m[[i, i]] += Complex64::new(t[s[i]], 0.0);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_norm_of_diagonal() {
        let mut m = Array2::<Complex64>::zeros((5, 5));
        for (j, v) in [1.0, -3.0, 2.0, 0.5, 2.9].iter().enumerate() {
            m[[j, j]] = Complex64::new(*v, 0.0);
        }
        assert!((spectral_norm(&m) - 3.0).abs() < 1e-9);
    }

    #[test]
    fn matrix_function_squares() {
        let mut m = Array2::<Complex64>::zeros((3, 3));
        m[[0, 0]] = Complex64::new(2.0, 0.0);
        m[[1, 1]] = Complex64::new(-1.0, 0.0);
        m[[2, 2]] = Complex64::new(0.5, 0.0);
        m[[0, 1]] = Complex64::new(0.3, 0.1);
        let (vals, vecs, vinv, _) = guarded_eig(&m).unwrap();
        let sq = matrix_function(&vals, &vecs, &vinv, |z| z * z);
        let direct = m.dot(&m);
        let diff = &sq - &direct;
        assert!(frobenius(&diff) < 1e-10 * frobenius(&direct));
    }
}
