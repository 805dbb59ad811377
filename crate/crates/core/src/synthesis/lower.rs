//! Lowering intermediate-representation circuits to the bare basis.
//!
//! The output contains only Toffoli and S(θ) gates, plus ancilla qubits
//! initialized to |0⟩ or |1⟩. Rules:
//!
//! - `CNOT(c,t)`  → Toffoli with one |1⟩ driver qubit;
//! - `X(t)`       → Toffoli with two |1⟩ drivers;
//! - `S⁻¹(θ)`     → `σˣ·S(θ)·σˣ` (the inverse rotation by conjugation);
//! - `Z(t)`       → the sign-flip network against a phase-ancilla register;
//! - multi-controlled X → a Toffoli chain through clean work bits;
//! - `ReflectZero`, `MarkNonZeroFlip`, and the all-ones phase reduce to
//!   multi-controlled X networks onto a work ancilla (plus Z on it);
//! - `ControlledBlock` adds its control to each inner gate, with the
//!   `S(θ)·CNOT·S⁻¹(θ)` triple expanded per its three factors: the flanking
//!   rotations cancel when the control is clear, so only the CNOT needs the
//!   control.
//!
//! Work bits are returned clean and reused; phase registers are consumed
//! (shared policy reuses one register, fresh policy allocates per use).

use crate::angle::Angle;
use crate::circuit::{Circuit, GateApp};
use crate::gate::GateKind;
use crate::state::StateVector;
use crate::synthesis::{AncillaPolicy, BasisSpec, SynthesisError};

/// Parameters of the Z-gate substitution applied during lowering.
#[derive(Debug, Clone, Copy)]
pub struct SigmaZLowering {
    /// Coin pairs per phase register.
    pub k: usize,
    pub policy: AncillaPolicy,
}

/// A circuit over {Toffoli, S(θ)} with its ancilla initialization.
///
/// The artifact splits into an ancilla `prep` stage (building the phase
/// registers from |0⟩/|1⟩ bits; it touches no data qubit) and the `body`.
/// The approximation metric references the prepared ancilla state: the body
/// approximately preserves it, which is what the restricted error measures.
#[derive(Debug, Clone)]
pub struct LoweredCircuit {
    /// Ancilla-only preparation gates.
    pub prep: Circuit,
    /// The lowered computation.
    pub body: Circuit,
    /// The original circuit's qubits occupy indices `0..n_data`.
    pub n_data: usize,
    /// Ancilla qubits initialized to |1⟩; all other ancillae start in |0⟩.
    pub one_initialized: Vec<usize>,
    /// Number of sign-flip networks emitted: every Z-carrying rule (plain Z,
    /// reflections, controlled phases) contributes one, and each carries the
    /// per-use error budget.
    pub sigma_z_networks: usize,
}

impl LoweredCircuit {
    pub fn n_qubits(&self) -> usize {
        self.body.n_qubits()
    }

    /// The whole artifact: preparation followed by the body.
    pub fn full_circuit(&self) -> Circuit {
        self.prep.chain(&self.body).expect("same register")
    }

    /// The ancilla register's initial bit state.
    pub fn initial_ancilla(&self) -> StateVector {
        let n_anc = self.n_qubits() - self.n_data;
        let mut index = 0usize;
        for &q in &self.one_initialized {
            index |= 1 << (n_anc - 1 - (q - self.n_data));
        }
        StateVector::basis_state(n_anc, index)
    }

    /// The ancilla state after preparation: the reference state for the
    /// restricted error of the body.
    pub fn prepared_ancilla(&self) -> StateVector {
        let n_anc = self.n_qubits() - self.n_data;
        if n_anc == 0 || self.prep.is_empty() {
            return self.initial_ancilla();
        }
        let gates = self
            .prep
            .gates()
            .iter()
            .map(|g| {
                let qubits: Vec<usize> = g.qubits.iter().map(|&q| q - self.n_data).collect();
                GateApp::new(g.kind.clone(), qubits)
            })
            .collect();
        let local = Circuit::new(n_anc, gates).expect("prep is ancilla-local");
        crate::state::apply_circuit(&self.initial_ancilla(), &local)
            .expect("prep register matches")
    }

    /// Ancilla reference state when only the first `r` original qubits are
    /// data: the remaining original qubits start in |0⟩, followed by the
    /// prepared lowering ancillae.
    pub fn ancilla_for_data(&self, r: usize) -> StateVector {
        assert!(r <= self.n_data);
        StateVector::zero_state(self.n_data - r).tensor(&self.prepared_ancilla())
    }

    pub fn size(&self) -> usize {
        self.prep.len() + self.body.len()
    }

    /// Gate counts over the whole artifact.
    pub fn counts_by_kind(&self) -> std::collections::BTreeMap<String, usize> {
        let mut counts = self.prep.counts_by_kind();
        for (k, v) in self.body.counts_by_kind() {
            *counts.entry(k).or_insert(0) += v;
        }
        counts
    }
}

impl serde::Serialize for LoweredCircuit {
    /// Circuit wire format plus the artifact metadata: the first `prep_len`
    /// gates are the ancilla preparation, `one_initialized` lists the |1⟩
    /// ancilla bits.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("LoweredCircuit", 5)?;
        s.serialize_field("n_qubits", &self.n_qubits())?;
        s.serialize_field("n_data", &self.n_data)?;
        s.serialize_field("one_initialized", &self.one_initialized)?;
        s.serialize_field("prep_len", &self.prep.len())?;
        let gates: Vec<&GateApp> = self.prep.gates().iter().chain(self.body.gates()).collect();
        s.serialize_field("gates", &gates)?;
        s.end()
    }
}

struct Lowerer {
    out: Vec<GateApp>,
    prep_out: Vec<GateApp>,
    next_qubit: usize,
    drivers: Vec<usize>,
    free_work: Vec<usize>,
    shared_phase: Option<Vec<usize>>,
    theta: Angle,
    sigma_z: SigmaZLowering,
    sigma_networks: usize,
}

impl Lowerer {
    fn fresh(&mut self) -> usize {
        let q = self.next_qubit;
        self.next_qubit += 1;
        q
    }

    fn driver(&mut self, i: usize) -> usize {
        while self.drivers.len() <= i {
            let q = self.fresh();
            self.drivers.push(q);
        }
        self.drivers[i]
    }

    fn acquire_work(&mut self) -> usize {
        self.free_work.pop().unwrap_or_else(|| self.fresh())
    }

    fn release_work(&mut self, q: usize) {
        self.free_work.push(q);
    }

    fn toffoli(&mut self, a: usize, b: usize, t: usize) {
        self.out.push(GateApp::new(GateKind::Toffoli, vec![a, b, t]));
    }

    fn s_theta(&mut self, t: usize) {
        self.out.push(GateApp::new(GateKind::STheta(self.theta), vec![t]));
    }

    fn x(&mut self, t: usize) {
        let (d0, d1) = (self.driver(0), self.driver(1));
        self.toffoli(d0, d1, t);
    }

    fn cnot(&mut self, c: usize, t: usize) {
        let d0 = self.driver(0);
        self.toffoli(d0, c, t);
    }

    fn s_theta_inv(&mut self, t: usize) {
        self.x(t);
        self.s_theta(t);
        self.x(t);
    }

    /// Multi-controlled X through a Toffoli chain with clean work bits.
    fn mcx(&mut self, controls: &[usize], target: usize) {
        match controls.len() {
            0 => self.x(target),
            1 => self.cnot(controls[0], target),
            2 => self.toffoli(controls[0], controls[1], target),
            m => {
                let works: Vec<usize> = (0..m - 2).map(|_| self.acquire_work()).collect();
                self.toffoli(controls[0], controls[1], works[0]);
                for i in 2..m - 1 {
                    self.toffoli(works[i - 2], controls[i], works[i - 1]);
                }
                self.toffoli(works[m - 3], controls[m - 1], target);
                for i in (2..m - 1).rev() {
                    self.toffoli(works[i - 2], controls[i], works[i - 1]);
                }
                self.toffoli(controls[0], controls[1], works[0]);
                for w in works {
                    self.release_work(w);
                }
            }
        }
    }

    /// Phase −1 exactly when every control is |1⟩: AND into a work bit,
    /// sign-flip it, uncompute.
    fn phase_on_all_ones(&mut self, controls: &[usize]) {
        debug_assert!(!controls.is_empty());
        let w = self.acquire_work();
        self.mcx(controls, w);
        self.sigma_z_on(w);
        self.mcx(controls, w);
        self.release_work(w);
    }

    /// The sign-flip network on `t` against a phase register.
    fn sigma_z_on(&mut self, t: usize) {
        self.sigma_networks += 1;
        let k = self.sigma_z.k;
        let register = match self.sigma_z.policy {
            AncillaPolicy::Shared => {
                if self.shared_phase.is_none() {
                    let reg: Vec<usize> = (0..2 * k).map(|_| self.fresh()).collect();
                    self.prepare_phase_register(&reg);
                    self.shared_phase = Some(reg);
                }
                self.shared_phase.clone().expect("created above")
            }
            AncillaPolicy::Fresh => {
                let reg: Vec<usize> = (0..2 * k).map(|_| self.fresh()).collect();
                self.prepare_phase_register(&reg);
                reg
            }
        };
        let pair = |i: usize| (register[2 * i], register[2 * i + 1]);

        for i in 0..k {
            let (p, q) = pair(i);
            self.cnot(p, q);
        }
        // prefix conjunction chain: works[i] = t ∧ d₁ ∧ … ∧ d_{i+1}
        let works: Vec<usize> = (0..k.saturating_sub(1)).map(|_| self.acquire_work()).collect();
        if k >= 2 {
            self.toffoli(t, pair(0).1, works[0]);
            for i in 1..k - 1 {
                self.toffoli(works[i - 1], pair(i).1, works[i]);
            }
        }
        for i in 0..k {
            let (p, q) = pair(i);
            let head = if i == 0 { t } else { works[i - 1] };
            self.x(q);
            self.toffoli(head, q, p);
            self.x(q);
        }
        if k >= 2 {
            for i in (1..k - 1).rev() {
                self.toffoli(works[i - 1], pair(i).1, works[i]);
            }
            self.toffoli(t, pair(0).1, works[0]);
        }
        for i in 0..k {
            let (p, q) = pair(i);
            self.cnot(p, q);
        }
        for w in works {
            self.release_work(w);
        }
    }

    /// Emits the coin-pair preparation into the prep stage. Preparation acts
    /// only on the freshly allocated register (plus drivers), so hoisting it
    /// ahead of the body leaves the overall operator unchanged.
    fn prepare_phase_register(&mut self, register: &[usize]) {
        let saved = std::mem::take(&mut self.out);
        for i in 0..register.len() / 2 {
            let (p, q) = (register[2 * i], register[2 * i + 1]);
            self.x(q);
            self.s_theta(p);
            self.s_theta(q);
        }
        let prep = std::mem::replace(&mut self.out, saved);
        self.prep_out.extend(prep);
    }

    fn check_angle(&self, beta: &Angle) -> Result<(), SynthesisError> {
        if (beta.radians() - self.theta.radians()).abs() > 1e-12 {
            return Err(SynthesisError::ForeignRotation {
                got: beta.radians(),
                expected: self.theta.radians(),
            });
        }
        Ok(())
    }

    fn lower_list(
        &mut self,
        gates: &[GateApp],
        controls: &[usize],
        map: &[usize],
    ) -> Result<(), SynthesisError> {
        let mut i = 0;
        while i < gates.len() {
            if let Some((a, b, beta)) = match_rotation_triple(&gates[i..]) {
                self.check_angle(&beta)?;
                let (ga, gb) = (map[a], map[b]);
                self.s_theta(ga);
                let mut cs = controls.to_vec();
                cs.push(ga);
                self.mcx(&cs, gb);
                self.s_theta_inv(ga);
                i += 3;
                continue;
            }
            self.lower_single(&gates[i], controls, map)?;
            i += 1;
        }
        Ok(())
    }

    fn lower_single(
        &mut self,
        gate: &GateApp,
        controls: &[usize],
        map: &[usize],
    ) -> Result<(), SynthesisError> {
        let qs: Vec<usize> = gate.qubits.iter().map(|&q| map[q]).collect();
        match &gate.kind {
            GateKind::Toffoli => {
                let mut cs = controls.to_vec();
                cs.extend_from_slice(&qs[..2]);
                self.mcx(&cs, qs[2]);
            }
            GateKind::Cnot => {
                let mut cs = controls.to_vec();
                cs.push(qs[0]);
                self.mcx(&cs, qs[1]);
            }
            GateKind::X => self.mcx(controls, qs[0]),
            GateKind::Z => {
                if controls.is_empty() {
                    self.sigma_z_on(qs[0]);
                } else {
                    let mut cs = controls.to_vec();
                    cs.push(qs[0]);
                    self.phase_on_all_ones(&cs);
                }
            }
            GateKind::STheta(beta) => {
                if !controls.is_empty() {
                    return Err(SynthesisError::UnloweredGate(
                        "controlled rotation outside the T-gate pattern".into(),
                    ));
                }
                self.check_angle(beta)?;
                self.s_theta(qs[0]);
            }
            GateKind::SThetaInv(beta) => {
                if !controls.is_empty() {
                    return Err(SynthesisError::UnloweredGate(
                        "controlled rotation outside the T-gate pattern".into(),
                    ));
                }
                self.check_angle(beta)?;
                self.s_theta_inv(qs[0]);
            }
            GateKind::ReflectZero(_) => {
                for &q in &qs {
                    self.x(q);
                }
                let mut cs = controls.to_vec();
                cs.extend_from_slice(&qs);
                self.phase_on_all_ones(&cs);
                for &q in &qs {
                    self.x(q);
                }
            }
            GateKind::MarkNonZeroFlip(_) => {
                let target = qs[0];
                let register = &qs[1..];
                self.mcx(controls, target);
                for &q in register {
                    self.x(q);
                }
                let mut cs = controls.to_vec();
                cs.extend_from_slice(register);
                self.mcx(&cs, target);
                for &q in register {
                    self.x(q);
                }
            }
            GateKind::ControlledBlock(inner) => {
                let mut cs = controls.to_vec();
                cs.push(qs[0]);
                self.lower_list(inner.gates(), &cs, &qs[1..])?;
            }
            GateKind::H => {
                return Err(SynthesisError::UnloweredGate("h".into()));
            }
        }
        Ok(())
    }
}

/// Matches `[S(β)@a, CNOT(a,b), S⁻¹(β)@a]` at the head of a gate slice.
fn match_rotation_triple(gates: &[GateApp]) -> Option<(usize, usize, Angle)> {
    if gates.len() < 3 {
        return None;
    }
    let GateKind::STheta(beta) = gates[0].kind else {
        return None;
    };
    let a = gates[0].qubits[0];
    if gates[1].kind != GateKind::Cnot || gates[1].qubits[0] != a {
        return None;
    }
    let b = gates[1].qubits[1];
    if gates[2].kind != GateKind::SThetaInv(beta) || gates[2].qubits[0] != a {
        return None;
    }
    Some((a, b, beta))
}

/// Lowers an intermediate-representation circuit to {Toffoli, S(θ)}.
pub fn lower_to_basis(
    circuit: &Circuit,
    basis: &BasisSpec,
    sigma_z: &SigmaZLowering,
) -> Result<LoweredCircuit, SynthesisError> {
    if sigma_z.k < 1 {
        return Err(SynthesisError::KTooSmallForSigmaZ);
    }
    let n_data = circuit.n_qubits();
    let mut lowerer = Lowerer {
        out: Vec::new(),
        prep_out: Vec::new(),
        next_qubit: n_data,
        drivers: Vec::new(),
        free_work: Vec::new(),
        shared_phase: None,
        theta: basis.working_rotation(),
        sigma_z: *sigma_z,
        sigma_networks: 0,
    };
    let identity: Vec<usize> = (0..n_data).collect();
    lowerer.lower_list(circuit.gates(), &[], &identity)?;

    let n = lowerer.next_qubit;
    let prep = Circuit::new(n, lowerer.prep_out).expect("allocator indices are dense");
    let body = Circuit::new(n, lowerer.out).expect("allocator indices are dense");
    Ok(LoweredCircuit {
        prep,
        body,
        n_data,
        one_initialized: lowerer.drivers,
        sigma_z_networks: lowerer.sigma_networks,
    })
}
