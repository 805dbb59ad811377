//! Completeness certification for the two gate-set cases.
//!
//! The CNOT case pairs CNOT with an arbitrary single-qubit rotation `S = U_θ`
//! (θ not a multiple of π/4 after squaring); the Toffoli case pairs Toffoli
//! with Hadamard. Each case builds a small witness operator, checks its
//! eigenstructure, certifies that its rotation angle is incommensurate with π
//! (exactly where possible, heuristically otherwise), and probes the
//! stabilizer-escape chain that the density argument needs.

mod charpoly;
mod density;
mod escape;
mod operators;
mod witness;

pub use charpoly::{
    certificate_from_numeric, cnot_analogue_certificate, toffoli_case_certificate,
    CharpolyCertificate, ExactnessError,
};
pub use density::{density_probe, CoverageReport, CoverageRow, DensityError, DensityProbeConfig};
pub use escape::{
    stabilizer_escape_suite, ChainSearch, CompletenessCase, EscapeCheck, EscapeError,
    EscapeSuiteReport, ESCAPE_MARGIN, PRESERVE_TOL,
};
pub use operators::{
    build_cnot_case_operator, build_toffoli_case_operator, cnot_case_angle, toffoli_case_angle,
    toffoli_case_plus_vectors,
};
pub use witness::{rational_witness, IrrationalityWitness, WitnessError, WITNESS_RESIDUAL_TOL};
