//! Rank thresholds: when does stable isomorphism force isomorphism?
//!
//! For a Z/2-CW complex whose trivial cells have dimension at most d₀ and
//! whose free cells have dimension at most d₁, two rank thresholds govern
//! bundles with conjugate-linear involution:
//!
//! - "real" structures (θ² = +1):
//!   k₀ = max{d₀, ⌈(d₁-1)/2⌉}, k₁ = max{d₀+1, ⌈d₁/2⌉};
//! - "quaternionic" structures (θ² = -1):
//!   k₀ = max{⌈(d₀-3)/2⌉, ⌈(d₁-1)/2⌉}, k₁ = max{⌈(d₀-2)/2⌉, ⌈d₁/2⌉}.
//!
//! A bundle of rank ≥ k₀ splits off a trivial summand (in the quaternionic
//! case trivial summands attach in even ranks only); at rank ≥ k₁ stable
//! isomorphism implies isomorphism. The classical complex-bundle baseline
//! over a space of dimension n is k₀ = ⌈(n-1)/2⌉, k₁ = ⌈n/2⌉.
//!
//! Ceilings of negative arguments are evaluated exactly; a negative raw
//! maximum is raised to 0 and flagged, so callers can tell "threshold 0 by
//! clamping" from "threshold 0 by formula".

use serde::Serialize;

use crate::chern::{StableTriviality, StableVerdict};

/// Shape data of a Z/2-CW complex: maximal dimensions of cells with
/// trivial and free involution action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CWShape {
    pub d0: u32,
    pub d1: u32,
}

/// The pair of rank thresholds for one symmetry class over one shape.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdPair {
    /// Rank above which a trivial summand splits off.
    pub k0: i64,
    /// Rank above which stable isomorphism implies isomorphism.
    pub k1: i64,
    /// True when a negative raw value was raised to 0.
    pub clamped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClass {
    Complex,
    Real,
    Quaternionic,
}

/// ⌈n/2⌉ for possibly negative n.
fn ceil_half(n: i64) -> i64 {
    (n + 1).div_euclid(2)
}

fn clamp(raw_k0: i64, raw_k1: i64, note: Option<String>) -> ThresholdPair {
    let clamped = raw_k0 < 0 || raw_k1 < 0;
    ThresholdPair {
        k0: raw_k0.max(0),
        k1: raw_k1.max(0),
        clamped,
        note,
    }
}

/// Thresholds for "real" bundles (θ² = +1) over the shape.
pub fn thresholds_real(shape: CWShape) -> ThresholdPair {
    let d0 = shape.d0 as i64;
    let d1 = shape.d1 as i64;
    let k0 = d0.max(ceil_half(d1 - 1));
    let k1 = (d0 + 1).max(ceil_half(d1));
    clamp(k0, k1, None)
}

/// Thresholds for "quaternionic" bundles (θ² = -1) over the shape.
pub fn thresholds_quaternionic(shape: CWShape) -> ThresholdPair {
    let d0 = shape.d0 as i64;
    let d1 = shape.d1 as i64;
    let k0 = ceil_half(d0 - 3).max(ceil_half(d1 - 1));
    let k1 = ceil_half(d0 - 2).max(ceil_half(d1));
    clamp(
        k0,
        k1,
        Some(
            "trivial quaternionic summands come in even ranks: a rank-k bundle with k >= k0 \
             splits off rank 2*floor((k - k0)/2)"
                .into(),
        ),
    )
}

/// Classical complex-bundle thresholds over a space of the given dimension,
/// the no-symmetry baseline.
pub fn thresholds_complex(dimension: u32) -> ThresholdPair {
    let n = dimension as i64;
    clamp(ceil_half(n - 1), ceil_half(n), None)
}

/// Z/2-CW shape of the d-torus with componentwise conjugation: 2^d fixed
/// 0-cells and free cells up to dimension d. (For d = 1 explicitly: two
/// fixed points ±1 and two free 1-cells, the upper and lower arcs swapped
/// by conjugation; higher d is the d-fold product of that structure.)
pub fn torus_shape(d: u32) -> CWShape {
    CWShape { d0: 0, d1: d }
}

pub fn thresholds_for(class: SymmetryClass, shape: CWShape) -> ThresholdPair {
    match class {
        SymmetryClass::Complex => thresholds_complex(shape.d0.max(shape.d1)),
        SymmetryClass::Real => thresholds_real(shape),
        SymmetryClass::Quaternionic => thresholds_quaternionic(shape),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Triviality {
    Trivial,
    StablyTrivialUndecided,
    Nontrivial,
    Unresolved,
}

/// Combined verdict for an analyzed bundle.
#[derive(Debug, Clone, Serialize)]
pub struct TrivialityReport {
    pub verdict: Triviality,
    pub statement: String,
    pub class: SymmetryClass,
    pub shape: CWShape,
    pub thresholds: ThresholdPair,
    pub rank: usize,
    /// Propagated from the stable-triviality evidence (dim > 3).
    pub necessary_only: bool,
}

/// Combines stable-triviality evidence with the rank thresholds.
///
/// Stably trivial and rank ≥ k₁ means trivial, hence an exponentially
/// localised Wannier basis exists; obstructed means no such basis exists.
/// Inbetween the thresholds are silent and the verdict stays undecided.
pub fn triviality_verdict(
    rank: usize,
    class: SymmetryClass,
    shape: CWShape,
    evidence: &StableTriviality,
) -> TrivialityReport {
    let thresholds = thresholds_for(class, shape);
    let (verdict, statement) = match evidence.verdict {
        StableVerdict::Unresolved => (
            Triviality::Unresolved,
            "unresolved: Chern evidence incomplete".to_string(),
        ),
        StableVerdict::Obstructed => (
            Triviality::Nontrivial,
            "nontrivial: no exponentially localised Wannier basis".to_string(),
        ),
        StableVerdict::StablyTrivial => {
            if rank as i64 >= thresholds.k1 {
                (
                    Triviality::Trivial,
                    "trivial: an exponentially localised Wannier basis exists".to_string(),
                )
            } else {
                (
                    Triviality::StablyTrivialUndecided,
                    format!(
                        "stably trivial: triviality not decided by rank thresholds (rank {} < k1 = {})",
                        rank, thresholds.k1
                    ),
                )
            }
        }
    };
    TrivialityReport {
        verdict,
        statement,
        class,
        shape,
        thresholds,
        rank,
        necessary_only: evidence.necessary_only,
    }
}
