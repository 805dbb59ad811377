//! Real-amplitude circuit simulation, gate-set completeness certification,
//! and single-qubit rotation synthesis over the basis {Toffoli, S(θ)}.
//!
//! The crate has three layers:
//!
//! - the simulation core: [`Circuit`] over [`GateKind`]s, dense [`StateVector`]
//!   evolution, operator materialization, the restricted approximation error,
//!   and rotation-plane eigenstructure of orthogonal operators;
//! - [`completeness`]: numeric and exact certificates that the witness
//!   operators built from {CNOT, S} and {Toffoli, H} rotate by an angle
//!   incommensurate with π and escape the required stabilizer chains;
//! - [`synthesis`]: the constructive compiler that approximates an arbitrary
//!   real rotation with circuits over {Toffoli, S(θ)}, with per-stage error
//!   bounds and a lowering pass to the bare basis.

pub mod angle;
pub mod circuit;
pub mod completeness;
pub mod gate;
pub(crate) mod linalg;
pub mod metric;
pub mod operator;
pub mod spectrum;
pub mod state;
pub mod synthesis;

pub use angle::{Angle, ANGLE_TOL};
pub use circuit::{Circuit, CircuitError, GateApp};
pub use gate::GateKind;
pub use metric::{restricted_error, MetricError};
pub use operator::{
    circuit_unitary, circuit_unitary_capped, OperatorError, RealOperator, DEFAULT_MAX_QUBITS,
    ORTHOGONALITY_TOL,
};
pub use spectrum::{rotation_spectrum, EigenSummary, RotationPlane, SpectrumError};
pub use state::{apply_circuit, apply_gate, StateVector, StateError, NORM_TOL};
