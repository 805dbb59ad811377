//! Constructive synthesis of single-qubit real rotations over {Toffoli, S(θ)}.
//!
//! The pipeline approximates a target rotation `U_α` in three stages:
//!
//! 1. a sign-flip circuit built from "quantum coin" pairs debiases the basis
//!    gate into an approximate σᶻ ([`build_sigma_z_tilde`]);
//! 2. an amplitude-amplification loop rotates an encoded register state onto
//!    `|φ_{α/2}⟩`, realizing the state-preparation gate `W_{α/2}`
//!    ([`build_w_half_alpha`]);
//! 3. `U_α` is assembled as `W_{α/2} · D · W_{α/2}ᵀ · σᶻ` where `D` negates
//!    everything but the all-zeros ancilla string ([`build_w_alpha`]), and
//!    the whole circuit is lowered to bare {Toffoli, S(θ)} gates
//!    ([`lower_to_basis`]).
//!
//! Every stage carries an explicit error bound; [`synthesize`] picks the
//! stage parameters for a requested total error ε and certifies the result.

mod grover;
mod lower;
mod sigma_z;
mod w_alpha;

pub use grover::{
    build_t_theta, build_w_half_alpha, grover_iteration_count, grover_step_circuit,
    preparation_error_bound, WHalf,
};
pub use lower::{lower_to_basis, LoweredCircuit, SigmaZLowering};
pub use sigma_z::{
    build_sigma_z_tilde, choose_k_sigma_z, phase_ancilla, sigma_z_error_bound,
};
pub use w_alpha::{
    build_w_alpha, oracle_w_alpha_error, reduced_w_alpha_error, reduced_w_half_prep_error,
    synthesize, synthesize_with_options, SigmaZMode, SynthesizeOptions, WAlpha,
};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::angle::Angle;

#[derive(Debug, Error, PartialEq)]
pub enum SynthesisError {
    #[error("theta = {0} radians is a multiple of pi/2: the basis gate must be basis-changing")]
    ThetaMultipleOfHalfPi(f64),
    #[error("theta = {0} radians is a multiple of pi/4, excluded for this use")]
    ThetaMultipleOfQuarterPi(f64),
    #[error("epsilon must lie in (0, 1), got {0}")]
    EpsilonOutOfRange(f64),
    #[error("k must be at least 1")]
    KTooSmallForSigmaZ,
    #[error("gamma = {gamma} does not satisfy gamma < pi/2 - alpha'/2 = {limit}; increase k")]
    GammaTooLarge { gamma: f64, limit: f64 },
    #[error("no iteration count in the search window satisfies the rotation inequality")]
    NoValidIterationCount,
    #[error("estimated circuit size {estimated} exceeds the materialization cap {cap}; the construction scales as 1/eps, so this eps asks for an impractically large circuit")]
    CircuitTooLarge { estimated: usize, cap: usize },
    #[error("gate kind {0} has no lowering rule in this context")]
    UnloweredGate(String),
    #[error("rotation angle {got} does not match the basis angle {expected}")]
    ForeignRotation { got: f64, expected: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AncillaPolicy {
    /// One phase-ancilla register shared by every σᶻ use.
    Shared,
    /// A fresh register per σᶻ use; the per-use error bound applies cleanly.
    Fresh,
}

impl std::fmt::Display for AncillaPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AncillaPolicy::Shared => f.write_str("shared"),
            AncillaPolicy::Fresh => f.write_str("fresh"),
        }
    }
}

/// The basis gate: a rotation `U_θ`, or a reflection normalized to one.
///
/// A basis-changing reflection `S` satisfies `σˣ·S = U_θ` for some rotation
/// angle θ; all internal machinery works with that rotation, and each
/// `S(θ)` occurrence of a reflection basis costs one extra bit flip.
#[derive(Debug, Clone, Copy)]
pub struct BasisSpec {
    s_theta: Angle,
    s_is_reflection: bool,
}

impl BasisSpec {
    /// Validates that the (normalized) gate is basis-changing: θ must not be
    /// a multiple of π/2.
    pub fn new(s_theta: Angle, s_is_reflection: bool) -> Result<Self, SynthesisError> {
        if s_theta.is_multiple_of_half_pi() {
            return Err(SynthesisError::ThetaMultipleOfHalfPi(s_theta.radians()));
        }
        Ok(BasisSpec {
            s_theta,
            s_is_reflection,
        })
    }

    pub fn rotation(s_theta: Angle) -> Result<Self, SynthesisError> {
        BasisSpec::new(s_theta, false)
    }

    /// The working rotation angle after reflection normalization.
    pub fn working_rotation(&self) -> Angle {
        self.s_theta
    }

    pub fn is_reflection(&self) -> bool {
        self.s_is_reflection
    }

    /// Additionally requires θ off the π/4 grid (needed when the squared gate
    /// must stay basis-changing).
    pub fn require_quarter_free(&self) -> Result<(), SynthesisError> {
        if self.s_theta.is_multiple_of_quarter_pi() {
            return Err(SynthesisError::ThetaMultipleOfQuarterPi(
                self.s_theta.radians(),
            ));
        }
        Ok(())
    }

    /// `1 / ln(1/(cos⁴θ + sin⁴θ))`: governs the sign-flip ancilla size.
    pub fn delta_theta(&self) -> f64 {
        let c = self.s_theta.cos();
        let s = self.s_theta.sin();
        let base = c.powi(4) + s.powi(4);
        1.0 / (1.0 / base).ln()
    }

    /// `1 / ln(1/cos²θ)`: governs the state-preparation register size.
    pub fn delta_theta_prime(&self) -> f64 {
        let c2 = self.s_theta.cos().powi(2);
        1.0 / (1.0 / c2).ln()
    }
}

/// Parameters chosen by [`synthesize`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SynthesisParams {
    /// Coin-pair count of the state-preparation register (2·k1 qubits).
    pub k1: usize,
    /// Coin-pair count of the σᶻ phase ancilla (2·k2 qubits per register).
    pub k2: usize,
    /// `arcsin(cos^{2·k1}θ)`.
    pub gamma: f64,
    #[serde(rename = "grover_T")]
    pub grover_t: usize,
    pub policy: AncillaPolicy,
}

/// How the reported error was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerificationMethod {
    /// Full dense simulation of the lowered circuit.
    Dense,
    /// Exact reduced-space evaluation of the rotation stages plus the
    /// analytic per-use σᶻ budget.
    Composite,
    /// Analytic bound only.
    BoundOnly,
}

#[derive(Debug, Clone, Serialize)]
pub struct SynthesisReport {
    pub achieved_error: f64,
    pub bound_error: f64,
    pub verified: bool,
    pub verification: VerificationMethod,
    pub gate_counts: BTreeMap<String, usize>,
    pub ancilla_count: usize,
    pub params: SynthesisParams,
}
