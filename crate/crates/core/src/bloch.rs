//! Bloch transform, insulator test, and spectral flattening.
//!
//! The Fourier transform of a hopping family is the matrix symbol
//! H(k) = Σ_a H_a e^{2πi k·a} over the momentum torus. The model is an
//! insulator exactly when H(k) is invertible for all k, i.e. when the
//! sampled spectral gap min_k min_i |λ_i(k)| stays positive. For an
//! insulator the sign flattening F = sign(H) is well defined and
//! p = (1 + F)/2 projects onto the positive spectral subspace; the family
//! p(k) is the Bloch bundle of the model.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::MomentumGrid;
use crate::linalg::{eigh, hermitize, CMatrix};
use crate::model::HoppingModel;

/// Refuse to flatten when the sampled gap is at or below this.
pub const DEFAULT_GAP_TOL: f64 = 1e-8;

/// Momentum-grid field of Bloch Hamiltonians with their spectral data.
/// Eigenvalues are ascending; eigenvector columns match them.
#[derive(Debug, Clone)]
pub struct BlochSample {
    pub grid: MomentumGrid,
    pub matrices: Vec<CMatrix>,
    pub eigenvalues: Vec<Vec<f64>>,
    pub eigenvectors: Vec<CMatrix>,
}

/// Grid of flattened projectors p(k) of common rank.
#[derive(Debug, Clone)]
pub struct ProjectorField {
    pub grid: MomentumGrid,
    pub projectors: Vec<CMatrix>,
    pub rank: usize,
}

/// Evaluates H(k) on a grid point given in torus units.
pub fn bloch_matrix(model: &HoppingModel, k: &[f64]) -> CMatrix {
    let bands = model.bands();
    let mut h = CMatrix::zeros(bands, bands);
    for (a, coeff) in model.hoppings() {
        let phase: f64 = TAU * k.iter().zip(a).map(|(ki, &ai)| ki * ai as f64).sum::<f64>();
        let factor = Complex64::new(phase.cos(), phase.sin());
        h += coeff.map(|z| z * factor);
    }
    h
}

/// Samples H(k) over the grid and eigendecomposes every point.
pub fn bloch_transform(model: &HoppingModel, grid: &MomentumGrid) -> Result<BlochSample> {
    if grid.dim() != model.dim() {
        return Err(Error::InvalidInput(format!(
            "grid dimension {} does not match model dimension {}",
            grid.dim(),
            model.dim()
        )));
    }
    let data: Vec<(CMatrix, Vec<f64>, CMatrix)> = (0..grid.len())
        .into_par_iter()
        .map(|flat| {
            let k = grid.point(flat);
            // The raw sum is Hermitian up to roundoff because of the
            // coefficient closure; hermitize before decomposing.
            let h = hermitize(&bloch_matrix(model, &k));
            let (values, vectors) = eigh(&h);
            (h, values, vectors)
        })
        .collect();

    let mut matrices = Vec::with_capacity(data.len());
    let mut eigenvalues = Vec::with_capacity(data.len());
    let mut eigenvectors = Vec::with_capacity(data.len());
    for (h, vals, vecs) in data {
        matrices.push(h);
        eigenvalues.push(vals);
        eigenvectors.push(vecs);
    }
    Ok(BlochSample {
        grid: grid.clone(),
        matrices,
        eigenvalues,
        eigenvectors,
    })
}

/// min over grid points of min over eigenvalues of |λ|. Zero or near zero
/// means "not an insulator at this resolution".
pub fn spectral_gap(sample: &BlochSample) -> f64 {
    sample
        .eigenvalues
        .iter()
        .flat_map(|vals| vals.iter().map(|l| l.abs()))
        .fold(f64::INFINITY, f64::min)
}

fn gap_minimizer(sample: &BlochSample) -> (usize, f64) {
    let mut at = 0;
    let mut smallest = f64::INFINITY;
    for (flat, vals) in sample.eigenvalues.iter().enumerate() {
        for l in vals {
            if l.abs() < smallest {
                smallest = l.abs();
                at = flat;
            }
        }
    }
    (at, smallest)
}

/// Flattens the sample to the positive-subspace projector field
/// p(k) = Σ_{λ_i(k) > 0} v_i(k) v_i(k)†.
///
/// Refuses when the sampled gap is at or below `gap_tol`, reporting the
/// offending grid point, and rejects rank drift across the grid (a sign
/// that `gap_tol` was too small for the data).
pub fn flatten(sample: &BlochSample, gap_tol: f64) -> Result<ProjectorField> {
    let (at, smallest) = gap_minimizer(sample);
    if smallest <= gap_tol {
        return Err(Error::NotAnInsulator {
            point: sample.grid.point(at),
            smallest,
            gap_tol,
        });
    }

    let bands = sample.matrices[0].nrows();
    let projectors: Vec<(CMatrix, usize)> = sample
        .eigenvalues
        .par_iter()
        .zip(sample.eigenvectors.par_iter())
        .map(|(vals, vecs)| {
            let mut p = CMatrix::zeros(bands, bands);
            let mut rank = 0;
            for (i, &l) in vals.iter().enumerate() {
                if l > 0.0 {
                    let v = vecs.column(i);
                    p += v * v.adjoint();
                    rank += 1;
                }
            }
            (p, rank)
        })
        .collect();

    let rank = projectors[0].1;
    for (flat, (_, r)) in projectors.iter().enumerate() {
        if *r != rank {
            return Err(Error::RankInconsistent {
                point: sample.grid.point(flat),
                expected: rank,
                found: *r,
            });
        }
    }
    Ok(ProjectorField {
        grid: sample.grid.clone(),
        projectors: projectors.into_iter().map(|(p, _)| p).collect(),
        rank,
    })
}
