//! Numerical topology of tight-binding insulators.
//!
//! The pipeline: a finite-range translation-invariant lattice Hamiltonian
//! ([`model::HoppingModel`]) is Fourier transformed over a momentum grid
//! ([`bloch::bloch_transform`]); a positive sampled spectral gap certifies
//! an insulator, and sign-flattening yields the Bloch-bundle projector
//! field ([`bloch::flatten`]). Chern numbers of that field are computed by
//! a gauge-invariant plaquette method ([`chern`]), deciding stable
//! triviality over tori. Half-space truncation at finite width exposes the
//! bulk-boundary correspondence as signed edge spectral flow
//! ([`boundary`]). Pointwise anti-unitary time reversal is classified into
//! "real" and "quaternionic" structures ([`symmetry`]), which select the
//! rank thresholds beyond which stable isomorphism of such bundles implies
//! isomorphism ([`stability`]), turning Chern evidence into a verdict on
//! the existence of exponentially localised Wannier bases.

pub mod bloch;
pub mod boundary;
pub mod chern;
pub mod error;
pub mod grid;
pub mod io;
pub mod linalg;
pub mod model;
pub mod presets;
pub mod stability;
pub mod symmetry;

pub use bloch::{bloch_transform, flatten, spectral_gap, BlochSample, ProjectorField, DEFAULT_GAP_TOL};
pub use boundary::{
    bulk_boundary_check, bulk_boundary_check_with, edge_spectral_flow, ribbon_spectrum,
    write_ribbon_csv, BulkBoundaryParams, BulkBoundaryReport, Edge, RibbonSpectrum,
};
pub use chern::{chern_number, chern_number_at, chern_vector, stably_trivial, ChernResult, StableTriviality, StableVerdict};
pub use error::{Error, Result};
pub use grid::MomentumGrid;
pub use linalg::CMatrix;
pub use model::{build_model, HoppingModel};
pub use stability::{
    thresholds_complex, thresholds_for, thresholds_quaternionic, thresholds_real, torus_shape,
    triviality_verdict, CWShape, SymmetryClass, ThresholdPair, Triviality, TrivialityReport,
};
pub use symmetry::{
    check_model_symmetry, classify_datum, kramers_check, verify_bundle_involution,
    TimeReversalDatum,
};
