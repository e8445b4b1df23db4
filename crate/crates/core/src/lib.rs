//! Point canonical transformations for position-dependent-mass Schrodinger
//! equations in `d` dimensions.
//!
//! A radial problem with mass `m(r)` is mapped onto a constant-mass reference
//! problem in `q = Z(r)`, `Z' = sqrt(m)`. The crate provides the mapping, the
//! closed-form spectra of nine worked cases, and a finite-difference verifier
//! that checks them independently.

// `!(x > 0.0)` is used deliberately so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod model;
pub mod pct;
pub mod specfun;
pub mod spectra;
pub mod verify;

pub use error::{PctError, Result};
pub use model::{
    degeneracy_ladder, ell_d, CaseId, CaseParams, CaseSpec, Flag, MassProfile, Parity,
    QuantumNumbers, VerificationReport,
};
pub use pct::{effective_potential_q, lambda_eff, point_of_z, r_of_z, u_d, z_of_r, PctMap, RadialPoint};
pub use spectra::{
    closed_form_energy, closed_form_wavefunction, reference_energy, spiked_reduction_check,
    target_potential, ClosedFormSolution,
};
pub use verify::{
    build_grid, check_degeneracy, discretize, eigen_lowest, residual_norm, verify_energy, Grid,
    GridSettings, Tolerances, TridiagonalOperator,
};
