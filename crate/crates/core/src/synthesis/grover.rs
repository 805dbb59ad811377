//! State preparation by amplitude amplification.
//!
//! `T_θ = U_{−θ}[1]·CNOT[1,2]·U_θ[1]` is a self-inverse two-qubit gate with
//! `⟨00|T_θ|00⟩ = cos²θ`. On k pairs, `|1̃⟩ = T_θ^{⊗k}|0…0⟩` makes an angle
//! `π/2 − γ` with the all-zeros string, where `sin γ = cos^{2k}θ`. Two
//! reflections — one about the all-zeros line, one about `|1̃⟩` — advance any
//! state of that plane by 2γ per iteration, so the register can be steered
//! onto an encoded `|φ_{α/2}⟩` to within γ, then decoded back onto a single
//! qubit at a further cost of at most γ.

use crate::angle::Angle;
use crate::circuit::{Circuit, GateApp};
use crate::gate::GateKind;
use crate::synthesis::SynthesisError;
use std::f64::consts::FRAC_PI_2;

/// The two-qubit gate `U_{−θ}[1]·CNOT[1,2]·U_θ[1]` (self-inverse).
pub fn build_t_theta(theta: Angle) -> Circuit {
    Circuit::new(
        2,
        vec![
            GateApp::new(GateKind::STheta(theta), vec![0]),
            GateApp::new(GateKind::Cnot, vec![0, 1]),
            GateApp::new(GateKind::SThetaInv(theta), vec![0]),
        ],
    )
    .expect("static circuit")
}

fn t_theta_triple(theta: Angle, a: usize, b: usize) -> [GateApp; 3] {
    [
        GateApp::new(GateKind::STheta(theta), vec![a]),
        GateApp::new(GateKind::Cnot, vec![a, b]),
        GateApp::new(GateKind::SThetaInv(theta), vec![a]),
    ]
}

/// Smallest-window iteration count: the `T` with
/// `|π/2 − (2T+1)γ − α/2| < γ`, located by rounding plus a local search.
pub fn grover_iteration_count(alpha: Angle, gamma: f64) -> Result<usize, SynthesisError> {
    iteration_count_for_target(alpha.half().radians(), gamma)
}

pub(crate) fn iteration_count_for_target(
    target: f64,
    gamma: f64,
) -> Result<usize, SynthesisError> {
    if !(gamma > 0.0 && gamma < FRAC_PI_2 - target) {
        return Err(SynthesisError::GammaTooLarge {
            gamma,
            limit: FRAC_PI_2 - target,
        });
    }
    let guess = (((FRAC_PI_2 - target) / gamma - 1.0) / 2.0).round() as i64;
    for t in [guess - 1, guess, guess + 1] {
        if t < 0 {
            continue;
        }
        let miss = (FRAC_PI_2 - (2 * t + 1) as f64 * gamma - target).abs();
        if miss < gamma {
            return Ok(t as usize);
        }
    }
    // unreachable for gamma in range; kept as a guard
    Err(SynthesisError::NoValidIterationCount)
}

/// `2γ`: the preparation error bound of [`build_w_half_alpha`].
pub fn preparation_error_bound(gamma: f64) -> f64 {
    2.0 * gamma
}

/// The state-preparation circuit and its chosen geometry.
#[derive(Debug, Clone)]
pub struct WHalf {
    pub circuit: Circuit,
    /// `arcsin(cos^{2k}θ)`.
    pub gamma: f64,
    pub grover_t: usize,
    /// Whether the target was reflected (`α/2 ≥ π/2` case).
    pub reflected: bool,
    /// Coin pairs in the register.
    pub k: usize,
}

impl WHalf {
    /// Data qubit plus 2k register qubits plus the reflection work qubit.
    pub fn n_qubits(&self) -> usize {
        2 * self.k + 2
    }

    pub(crate) fn register_qubits(k: usize) -> Vec<usize> {
        (1..=2 * k).collect()
    }

    pub(crate) fn work_qubit(k: usize) -> usize {
        2 * k + 1
    }
}

/// Negates every register component except the all-zeros string, using the
/// work qubit: mark non-zero into `w`, flip its sign, unmark.
fn negate_outside_zeros(register: &[usize], w: usize) -> [GateApp; 3] {
    let mut qs = vec![w];
    qs.extend_from_slice(register);
    let mark = GateApp::new(GateKind::MarkNonZeroFlip(register.len()), qs);
    [
        mark.clone(),
        GateApp::new(GateKind::Z, vec![w]),
        mark,
    ]
}

/// One amplitude-amplification iteration: reflect about the all-zeros line,
/// then about the encoded-one line. `pairs` lists the register coin pairs.
fn iteration_gates(
    theta: Angle,
    register: &[usize],
    pairs: &[(usize, usize)],
    w: usize,
) -> Vec<GateApp> {
    let mut gates = vec![GateApp::new(
        GateKind::ReflectZero(register.len()),
        register.to_vec(),
    )];
    for &(a, b) in pairs {
        gates.extend(t_theta_triple(theta, a, b));
    }
    gates.extend(negate_outside_zeros(register, w));
    for &(a, b) in pairs {
        gates.extend(t_theta_triple(theta, a, b));
    }
    gates
}

/// The iteration of step 2 as a standalone circuit on 2k+1 qubits (register
/// first, work bit last). Its restriction to the invariant plane is a
/// rotation by `2·arcsin(cos^{2k}θ)`.
pub fn grover_step_circuit(theta: Angle, k: usize) -> Circuit {
    let register: Vec<usize> = (0..2 * k).collect();
    let pairs: Vec<(usize, usize)> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
    let gates = iteration_gates(theta, &register, &pairs, 2 * k);
    Circuit::new(2 * k + 1, gates).expect("static layout")
}

/// Builds the circuit mapping `|0⟩⊗|0^{2k}⟩⊗|0⟩` to within `2γ` of
/// `|φ_{α/2}⟩⊗|0^{2k}⟩⊗|0⟩`.
///
/// Layout: qubit 0 carries the output state, qubits 1..=2k the coin
/// register, qubit 2k+1 a work bit for the reflections. When `α/2 ≥ π/2` the
/// rotation targets the reflected angle `π − α/2` and a reflection about the
/// all-zeros line is appended before decoding.
pub fn build_w_half_alpha(alpha: Angle, theta: Angle, k: usize) -> Result<WHalf, SynthesisError> {
    if theta.is_multiple_of_half_pi() {
        return Err(SynthesisError::ThetaMultipleOfHalfPi(theta.radians()));
    }
    if k < 1 {
        return Err(SynthesisError::KTooSmallForSigmaZ);
    }
    let alpha_half = alpha.half().radians();
    let reflected = alpha_half >= FRAC_PI_2;
    let target = if reflected {
        std::f64::consts::PI - alpha_half
    } else {
        alpha_half
    };
    let gamma = theta.cos().powi(2 * k as i32).asin();
    let grover_t = iteration_count_for_target(target, gamma)?;

    let n = 2 * k + 2;
    let register = WHalf::register_qubits(k);
    let w = WHalf::work_qubit(k);
    let pairs: Vec<(usize, usize)> = (0..k).map(|i| (1 + 2 * i, 2 + 2 * i)).collect();

    let mut gates: Vec<GateApp> = Vec::new();
    let push_t_layer = |gates: &mut Vec<GateApp>| {
        for &(a, b) in &pairs {
            gates.extend(t_theta_triple(theta, a, b));
        }
    };

    // step 1: encode |1̃⟩ in the register
    push_t_layer(&mut gates);
    // step 2: amplitude-amplification iterations, each a rotation by 2γ
    for _ in 0..grover_t {
        gates.extend(iteration_gates(theta, &register, &pairs, w));
    }
    if reflected {
        gates.push(GateApp::new(
            GateKind::ReflectZero(register.len()),
            register.clone(),
        ));
    }
    // step 3: move the non-zero component onto the data qubit
    let mut mnzf = vec![0usize];
    mnzf.extend_from_slice(&register);
    gates.push(GateApp::new(GateKind::MarkNonZeroFlip(register.len()), mnzf));
    // step 4: conditioned on the data qubit, decode the register
    let mut inner_gates = Vec::new();
    for i in 0..k {
        inner_gates.extend(t_theta_triple(theta, 2 * i, 2 * i + 1));
    }
    let inner = Circuit::new(2 * k, inner_gates).expect("register-local indices");
    let mut cb = vec![0usize];
    cb.extend_from_slice(&register);
    gates.push(GateApp::new(GateKind::ControlledBlock(Box::new(inner)), cb));

    Ok(WHalf {
        circuit: Circuit::new(n, gates).expect("indices within 2k+2"),
        gamma,
        grover_t,
        reflected,
        k,
    })
}
