//! Built-in lattice models.
//!
//! The minimal family exercising every analysis path:
//!
//! - `trivial_atomic(bands)`: two-dimensional, on-site only, alternating
//!   ±1 level per band. Flat bands, constant projector, no topology.
//! - `chain_1d(t)`: one-dimensional two-band dimerized chain with real
//!   hoppings (intra-cell hop 1, inter-cell hop t); gapped for |t| ≠ 1 and
//!   "real" time-reversal symmetric with U = identity.
//! - `qwz(m)`: the two-band Chern insulator on the square lattice with
//!   H(k) = sin(2πk₁)σ₁ + sin(2πk₂)σ₂ + (m - cos(2πk₁) - cos(2πk₂))σ₃;
//!   topological for 0 < |m| < 2, critical at |m| ∈ {0, 2}, trivial beyond.
//! - `doubled_qwz(m)`: qwz(m) ⊕ conj(qwz(m)) with the block anti-unitary
//!   U = [[0, -1], [1, 0]] ⊗ 1, a quaternionic (θ² = -1) model with zero
//!   total Chern number.

use crate::linalg::{cplx, CMatrix};
use crate::model::{build_model, HoppingModel};
use crate::symmetry::{classify_datum, TimeReversalDatum};

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(1.0, 0.0), cplx(0.0, 0.0)],
    )
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[cplx(0.0, 0.0), cplx(0.0, -1.0), cplx(0.0, 1.0), cplx(0.0, 0.0)],
    )
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(-1.0, 0.0)],
    )
}

/// Two-dimensional on-site model diag(+1, -1, +1, ...): gap 1, flat bands.
pub fn trivial_atomic(bands: usize) -> HoppingModel {
    let mut onsite = CMatrix::zeros(bands, bands);
    for i in 0..bands {
        onsite[(i, i)] = cplx(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    build_model(2, bands, &[(vec![0, 0], onsite)]).expect("static model data is valid")
}

/// Dimerized two-band chain: H(k) = [[0, 1 + t e^{-2πik}], [1 + t e^{2πik}, 0]].
/// Real hoppings; spectral gap |1 - |t||, attained at k = 1/2 for 0 < t < 1.
pub fn chain_1d(t: f64) -> HoppingModel {
    let intra = pauli_x();
    let inter = CMatrix::from_row_slice(
        2,
        2,
        &[cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(t, 0.0), cplx(0.0, 0.0)],
    );
    build_model(1, 2, &[(vec![0], intra), (vec![1], inter)]).expect("static model data is valid")
}

/// Two-band Chern insulator with mass m: on-site m·σ₃ plus the hopping
/// family H_{±x} = -(σ₃ ± iσ₁)/2, H_{±y} = -(σ₃ ± iσ₂)/2.
pub fn qwz(m: f64) -> HoppingModel {
    let onsite = pauli_z().map(|z| z * m);
    let half = cplx(0.5, 0.0);
    let i = cplx(0.0, 1.0);
    let hop_x = (pauli_z() + pauli_x().map(|z| z * i)).map(|z| -z * half);
    let hop_y = (pauli_z() + pauli_y().map(|z| z * i)).map(|z| -z * half);
    build_model(
        2,
        2,
        &[(vec![0, 0], onsite), (vec![1, 0], hop_x), (vec![0, 1], hop_y)],
    )
    .expect("static model data is valid")
}

/// Doubles a model to H_a ⊕ conj(H_a) and pairs it with the quaternionic
/// block datum U = [[0, -1], [1, 0]] ⊗ 1.
pub fn doubled(base: &HoppingModel) -> (HoppingModel, TimeReversalDatum) {
    let model = base
        .direct_sum(&base.conjugated())
        .expect("dimensions match by construction");
    let b = base.bands();
    let mut u = CMatrix::zeros(2 * b, 2 * b);
    for i in 0..b {
        u[(i, b + i)] = cplx(-1.0, 0.0);
        u[(b + i, i)] = cplx(1.0, 0.0);
    }
    let datum = classify_datum(&u).expect("block datum is an exact involution");
    (model, datum)
}

pub fn doubled_qwz(m: f64) -> (HoppingModel, TimeReversalDatum) {
    doubled(&qwz(m))
}
