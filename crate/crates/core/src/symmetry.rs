//! Time-reversal structure on models and Bloch bundles.
//!
//! Time reversal acts pointwise in position space as θ = U·K with U unitary
//! and K entrywise complex conjugation, so θ² = U·conj(U) = ±1. On Bloch
//! data θ covers the base involution k ↦ -k: a symmetric model satisfies
//! U·conj(H_a)·U† = H_a for every coefficient and its projector field
//! satisfies U·conj(p(k))·U† = p(-k). The sign distinguishes a "real"
//! structure (θ² = +1, bosonic) from a "quaternionic" one (θ² = -1,
//! fermionic); the latter forces even fibre dimension and Kramers pairing
//! of the spectrum at involution-fixed momenta.

use serde::Serialize;

use crate::bloch::{BlochSample, ProjectorField};
use crate::error::{Error, Result};
use crate::linalg::{conj_entrywise, max_abs, unitarity_defect, CMatrix};
use crate::model::HoppingModel;

/// Tolerance ladder: algebraic identities of inputs, per-coefficient model
/// checks, grid-level checks (eigensolver noise accumulates).
pub const UNITARITY_TOL: f64 = 1e-12;
pub const INVOLUTION_TOL: f64 = 1e-10;
pub const MODEL_SYMMETRY_TOL: f64 = 1e-10;
pub const BUNDLE_INVOLUTION_TOL: f64 = 1e-9;
pub const KRAMERS_TOL: f64 = 1e-9;

/// A fixed anti-unitary θ = U·K with θ² = sign.
#[derive(Debug, Clone)]
pub struct TimeReversalDatum {
    pub unitary: CMatrix,
    /// +1 ("real" structure) or -1 ("quaternionic").
    pub sign: i32,
}

/// Classifies a unitary as an involution datum by the sign of U·conj(U).
pub fn classify_datum(unitary: &CMatrix) -> Result<TimeReversalDatum> {
    if unitary.nrows() != unitary.ncols() {
        return Err(Error::InvalidInput(format!(
            "time-reversal unitary must be square, got {}x{}",
            unitary.nrows(),
            unitary.ncols()
        )));
    }
    let defect = unitarity_defect(unitary);
    if defect > UNITARITY_TOL {
        return Err(Error::NotUnitary {
            defect,
            tol: UNITARITY_TOL,
        });
    }
    let square = unitary * conj_entrywise(unitary);
    let eye = CMatrix::identity(unitary.nrows(), unitary.ncols());
    let defect_plus = max_abs(&(&square - &eye));
    let defect_minus = max_abs(&(&square + &eye));
    let sign = if defect_plus <= INVOLUTION_TOL {
        1
    } else if defect_minus <= INVOLUTION_TOL {
        -1
    } else {
        return Err(Error::NotAnInvolution {
            defect_plus,
            defect_minus,
        });
    };
    Ok(TimeReversalDatum {
        unitary: unitary.clone(),
        sign,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryCheck {
    pub holds: bool,
    pub max_violation: f64,
    /// Lattice vector of the worst-violating coefficient.
    pub worst: Option<Vec<i64>>,
}

/// Checks U·conj(H_a)·U† = H_a over the whole support.
pub fn check_model_symmetry(
    model: &HoppingModel,
    trs: &TimeReversalDatum,
) -> Result<SymmetryCheck> {
    if trs.unitary.nrows() != model.bands() {
        return Err(Error::InvalidInput(format!(
            "time-reversal unitary is {}x{}, model has {} bands",
            trs.unitary.nrows(),
            trs.unitary.ncols(),
            model.bands()
        )));
    }
    let u = &trs.unitary;
    let mut max_violation = 0.0;
    let mut worst = None;
    for (a, h) in model.hoppings() {
        let transformed = u * conj_entrywise(h) * u.adjoint();
        let violation = max_abs(&(transformed - h));
        if violation > max_violation {
            max_violation = violation;
            worst = Some(a.clone());
        }
    }
    Ok(SymmetryCheck {
        holds: max_violation <= MODEL_SYMMETRY_TOL,
        max_violation,
        worst,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct InvolutionCheck {
    pub holds: bool,
    pub max_violation: f64,
}

/// Checks the bundle-level statement U·conj(p(k))·U† = p(-k) at every grid
/// point (the grid is closed under k ↦ -k because N is even).
pub fn verify_bundle_involution(
    field: &ProjectorField,
    trs: &TimeReversalDatum,
) -> Result<InvolutionCheck> {
    let bands = field.projectors[0].nrows();
    if trs.unitary.nrows() != bands {
        return Err(Error::InvalidInput(format!(
            "time-reversal unitary is {}x{}, field has {} bands",
            trs.unitary.nrows(),
            trs.unitary.ncols(),
            bands
        )));
    }
    let u = &trs.unitary;
    let mut max_violation = 0.0f64;
    for flat in 0..field.grid.len() {
        let transported = u * conj_entrywise(&field.projectors[flat]) * u.adjoint();
        let mirrored = &field.projectors[field.grid.negate(flat)];
        max_violation = max_violation.max(max_abs(&(transported - mirrored)));
    }
    Ok(InvolutionCheck {
        holds: max_violation <= BUNDLE_INVOLUTION_TOL,
        max_violation,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KramersCheck {
    pub holds: bool,
    pub worst_defect: f64,
}

/// Kramers pairing at the involution-fixed momenta: for a quaternionic
/// datum the sorted eigenvalues there must coincide in pairs. The caller
/// is responsible for having verified model symmetry first.
pub fn kramers_check(sample: &BlochSample, trs: &TimeReversalDatum) -> Result<KramersCheck> {
    if trs.sign != -1 {
        return Err(Error::InvalidInput(
            "Kramers pairing needs a quaternionic datum (sign -1)".into(),
        ));
    }
    let bands = sample.matrices[0].nrows();
    if !bands.is_multiple_of(2) {
        return Err(Error::OddBands { bands });
    }
    let mut worst_defect = 0.0f64;
    for flat in sample.grid.fixed_momenta() {
        let values = &sample.eigenvalues[flat];
        for pair in 0..bands / 2 {
            worst_defect = worst_defect.max((values[2 * pair + 1] - values[2 * pair]).abs());
        }
    }
    Ok(KramersCheck {
        holds: worst_defect <= KRAMERS_TOL,
        worst_defect,
    })
}
