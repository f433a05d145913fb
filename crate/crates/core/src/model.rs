//! Finite-range translation-invariant lattice Hamiltonians.
//!
//! A model stores the coefficient family {H_a}, a ∈ Z^d, of a bounded
//! self-adjoint Hamiltonian acting on l²(Z^d, C^bands) by
//! (H g)(m) = Σ_a H_a g(m - a). Self-adjointness is equivalent to the
//! closure H_{-a} = H_a†, which [`build_model`] enforces exactly by
//! symmetrizing its input.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{max_abs, CMatrix};

/// Finite-range hopping family {H_a}. Immutable after construction; the
/// stored coefficients satisfy H_{-a} = H_a† exactly and zero matrices are
/// dropped from the support.
#[derive(Debug, Clone, PartialEq)]
pub struct HoppingModel {
    dim: usize,
    bands: usize,
    hoppings: BTreeMap<Vec<i64>, CMatrix>,
}

/// Builds a model from (lattice vector, matrix) pairs.
///
/// Duplicate vectors accumulate. The stored family is the Hermitian
/// symmetrization over the closure of the input support: when both a and -a
/// were given, H_a = (given(a) + given(-a)†)/2; when only one side was
/// given, the mirror coefficient defaults to its conjugate transpose. The
/// result is always a valid self-adjoint Hamiltonian, and inputs that
/// already satisfy the closure are reproduced unchanged.
pub fn build_model(
    dim: usize,
    bands: usize,
    hopping_list: &[(Vec<i64>, CMatrix)],
) -> Result<HoppingModel> {
    if dim == 0 {
        return Err(Error::InvalidInput("model dimension must be positive".into()));
    }
    if bands == 0 {
        return Err(Error::InvalidInput("band count must be positive".into()));
    }
    let mut given: BTreeMap<Vec<i64>, CMatrix> = BTreeMap::new();
    for (index, (vector, matrix)) in hopping_list.iter().enumerate() {
        if vector.len() != dim {
            return Err(Error::BadHoppingEntry {
                index,
                reason: format!("lattice vector has length {}, expected {}", vector.len(), dim),
            });
        }
        if matrix.nrows() != bands || matrix.ncols() != bands {
            return Err(Error::BadHoppingEntry {
                index,
                reason: format!(
                    "matrix is {}x{}, expected {}x{}",
                    matrix.nrows(),
                    matrix.ncols(),
                    bands,
                    bands
                ),
            });
        }
        given
            .entry(vector.clone())
            .and_modify(|m| *m += matrix)
            .or_insert_with(|| matrix.clone());
    }

    // Symmetrized support: the union of the given vectors and their
    // negatives. IEEE addition commutes, so H_{-a} == H_a† holds exactly.
    let mut support: Vec<Vec<i64>> = given.keys().cloned().collect();
    support.extend(given.keys().map(|a| negate(a)));
    support.sort();
    support.dedup();

    let mut hoppings = BTreeMap::new();
    for a in support {
        let sym = match (given.get(&a), given.get(&negate(&a))) {
            (Some(direct), Some(mirrored)) => (direct + mirrored.adjoint()).map(|z| z * 0.5),
            (Some(direct), None) => direct.clone(),
            (None, Some(mirrored)) => mirrored.adjoint(),
            (None, None) => unreachable!("support comes from the given keys"),
        };
        if sym.iter().any(|z| *z != Complex64::new(0.0, 0.0)) {
            hoppings.insert(a, sym);
        }
    }

    Ok(HoppingModel { dim, bands, hoppings })
}

fn negate(a: &[i64]) -> Vec<i64> {
    a.iter().map(|&x| -x).collect()
}

impl HoppingModel {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bands(&self) -> usize {
        self.bands
    }

    /// Coefficient H_a, or None if a is outside the support.
    pub fn coefficient(&self, a: &[i64]) -> Option<&CMatrix> {
        self.hoppings.get(a)
    }

    /// Support and coefficients in lexicographic vector order.
    pub fn hoppings(&self) -> impl Iterator<Item = (&Vec<i64>, &CMatrix)> {
        self.hoppings.iter()
    }

    pub fn support_len(&self) -> usize {
        self.hoppings.len()
    }

    /// Hopping range along one axis: max |a_axis| over the support.
    pub fn range_along(&self, axis: usize) -> i64 {
        self.hoppings
            .keys()
            .map(|a| a[axis].abs())
            .max()
            .unwrap_or(0)
    }

    /// Σ_a ‖H_a‖_op, an upper bound for the operator norm of H and of any
    /// compression of it.
    pub fn norm_bound(&self) -> f64 {
        self.hoppings
            .values()
            .map(crate::linalg::operator_norm)
            .sum()
    }

    /// Block-diagonal direct sum: (H ⊕ K)_a = H_a ⊕ K_a over the union of
    /// the supports.
    pub fn direct_sum(&self, other: &HoppingModel) -> Result<HoppingModel> {
        if self.dim != other.dim {
            return Err(Error::InvalidInput(format!(
                "direct sum needs equal dimensions, got {} and {}",
                self.dim, other.dim
            )));
        }
        let bands = self.bands + other.bands;
        let mut support: Vec<Vec<i64>> = self.hoppings.keys().cloned().collect();
        support.extend(other.hoppings.keys().cloned());
        support.sort();
        support.dedup();

        let mut hoppings = BTreeMap::new();
        for a in support {
            let mut block = CMatrix::zeros(bands, bands);
            if let Some(h) = self.hoppings.get(&a) {
                block.view_mut((0, 0), (self.bands, self.bands)).copy_from(h);
            }
            if let Some(k) = other.hoppings.get(&a) {
                block
                    .view_mut((self.bands, self.bands), (other.bands, other.bands))
                    .copy_from(k);
            }
            hoppings.insert(a, block);
        }
        Ok(HoppingModel {
            dim: self.dim,
            bands,
            hoppings,
        })
    }

    /// Entrywise complex conjugation of every coefficient (no transpose).
    /// Preserves the Hermiticity closure since conj(H_a)† = conj(H_{-a}).
    pub fn conjugated(&self) -> HoppingModel {
        HoppingModel {
            dim: self.dim,
            bands: self.bands,
            hoppings: self
                .hoppings
                .iter()
                .map(|(a, h)| (a.clone(), h.map(|z| z.conj())))
                .collect(),
        }
    }

    /// Conjugate every coefficient by a fixed matrix: H_a ↦ V H_a V†.
    /// A gauge transformation when V is unitary.
    pub fn conjugated_by(&self, v: &CMatrix) -> Result<HoppingModel> {
        if v.nrows() != self.bands || v.ncols() != self.bands {
            return Err(Error::InvalidInput(format!(
                "conjugating matrix is {}x{}, expected {}x{}",
                v.nrows(),
                v.ncols(),
                self.bands,
                self.bands
            )));
        }
        Ok(HoppingModel {
            dim: self.dim,
            bands: self.bands,
            hoppings: self
                .hoppings
                .iter()
                .map(|(a, h)| (a.clone(), v * h * v.adjoint()))
                .collect(),
        })
    }

    /// Largest violation of H_{-a} = H_a† over the support; zero by
    /// construction for models from [`build_model`].
    pub fn hermiticity_closure_defect(&self) -> f64 {
        let zero = CMatrix::zeros(self.bands, self.bands);
        self.hoppings
            .iter()
            .map(|(a, h)| {
                let mirror = self.hoppings.get(&negate(a)).unwrap_or(&zero);
                max_abs(&(mirror - h.adjoint()))
            })
            .fold(0.0, f64::max)
    }
}
