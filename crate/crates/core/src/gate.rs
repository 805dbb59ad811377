//! Gate kinds. Every kind denotes a real orthogonal operator on its arity.

use crate::angle::Angle;
use crate::circuit::Circuit;

/// The gate alphabet of the intermediate representation.
///
/// Qubit-list conventions for the variants that carry structure:
/// - `Cnot`: `qubits = [control, target]`.
/// - `Toffoli`: `qubits = [control, control, target]`.
/// - `ReflectZero(m)`: diagonal, −1 on the all-zeros string of the `m` listed
///   qubits, +1 elsewhere.
/// - `MarkNonZeroFlip(m)`: `qubits = [target, r1, …, rm]`; flips `target` iff
///   the register `r1…rm` is not all-zeros.
/// - `ControlledBlock`: `qubits = [control, inner qubits…]`; applies the inner
///   circuit iff the control is |1⟩.
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    Toffoli,
    Cnot,
    X,
    Z,
    H,
    /// The rotation `[[cos θ, −sin θ], [sin θ, cos θ]]`.
    STheta(Angle),
    /// The inverse rotation, i.e. `STheta(−θ)`.
    SThetaInv(Angle),
    ReflectZero(usize),
    MarkNonZeroFlip(usize),
    ControlledBlock(Box<Circuit>),
}

impl GateKind {
    /// Number of qubits the gate acts on.
    pub fn arity(&self) -> usize {
        match self {
            GateKind::Toffoli => 3,
            GateKind::Cnot => 2,
            GateKind::X | GateKind::Z | GateKind::H => 1,
            GateKind::STheta(_) | GateKind::SThetaInv(_) => 1,
            GateKind::ReflectZero(m) => *m,
            GateKind::MarkNonZeroFlip(m) => *m + 1,
            GateKind::ControlledBlock(inner) => inner.n_qubits() + 1,
        }
    }

    /// Snake-case name used in the JSON wire format and in gate counts.
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::Toffoli => "toffoli",
            GateKind::Cnot => "cnot",
            GateKind::X => "x",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::STheta(_) => "s_theta",
            GateKind::SThetaInv(_) => "s_theta_inv",
            GateKind::ReflectZero(_) => "reflect_zero",
            GateKind::MarkNonZeroFlip(_) => "mark_non_zero_flip",
            GateKind::ControlledBlock(_) => "controlled_block",
        }
    }

    /// The inverse gate. Everything in the alphabet is self-inverse except
    /// the rotations.
    pub fn inverse(&self) -> GateKind {
        match self {
            GateKind::STheta(t) => GateKind::SThetaInv(*t),
            GateKind::SThetaInv(t) => GateKind::STheta(*t),
            GateKind::ControlledBlock(inner) => {
                GateKind::ControlledBlock(Box::new(inner.inverted()))
            }
            other => other.clone(),
        }
    }
}
