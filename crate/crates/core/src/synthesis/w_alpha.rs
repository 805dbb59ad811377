//! Assembling the target rotation from two state preparations, a reflection,
//! and a sign flip, plus parameter selection and error certification.
//!
//! With `W` any unitary sending the all-zeros string to `|φ_{α/2}⟩⊗|0̂⟩`, the
//! product `W · D · Wᵀ · σᶻ[1]` acts as `U_α` on the data qubit exactly, where
//! `D` negates every string but all-zeros: `W·D·Wᵀ` is the reflection about
//! the prepared state, and reflecting about `|φ_{α/2}⟩` after a sign flip is
//! the rotation by α. An imperfect preparation shifts the reflection axis by
//! the preparation error, so each of the two `W` uses contributes at most 2γ.
//!
//! The whole construction, with exact sign flips, confines the data qubit and
//! register to a four-dimensional invariant subspace spanned by the data
//! basis tensored with {all-zeros, encoded-one}. Its restricted error is
//! therefore computable exactly in that subspace for any register size; the
//! dense simulator cross-checks this on small instances.

use nalgebra::{DMatrix, DVector};

use crate::angle::Angle;
use crate::circuit::{Circuit, GateApp};
use crate::gate::GateKind;
use crate::metric::restricted_error;
use crate::operator::RealOperator;
use crate::synthesis::grover::{build_w_half_alpha, WHalf};
use crate::synthesis::lower::{lower_to_basis, LoweredCircuit, SigmaZLowering};
use crate::synthesis::sigma_z::{
    build_sigma_z_tilde, choose_k_sigma_z, sigma_z_error_bound,
};
use crate::synthesis::{
    AncillaPolicy, BasisSpec, SynthesisError, SynthesisParams, SynthesisReport,
    VerificationMethod,
};
use std::f64::consts::{FRAC_PI_2, PI};

/// How σᶻ occurrences are realized inside [`build_w_alpha`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaZMode {
    /// Keep exact Z gates in the intermediate representation.
    Exact,
    /// Substitute each Z with the sign-flip network against one shared phase
    /// register of `k2` coin pairs, prepared at the start of the circuit.
    Approximate { k2: usize },
}

/// The assembled rotation circuit.
#[derive(Debug, Clone)]
pub struct WAlpha {
    pub circuit: Circuit,
    pub gamma: f64,
    pub grover_t: usize,
    pub reflected: bool,
    pub k: usize,
    /// Number of σᶻ occurrences in the exact form.
    pub sigma_z_uses: usize,
}

fn negate_outside_zeros(involved: &[usize], w: usize) -> [GateApp; 3] {
    let mut qs = vec![w];
    qs.extend_from_slice(involved);
    let mark = GateApp::new(GateKind::MarkNonZeroFlip(involved.len()), qs);
    [mark.clone(), GateApp::new(GateKind::Z, vec![w]), mark]
}

/// Builds `W_{α/2} · D · W_{α/2}ᵀ · σᶻ[1]` on 2k+2 qubits (data, register,
/// work bit), optionally substituting the sign flips.
pub fn build_w_alpha(
    alpha: Angle,
    theta: Angle,
    k: usize,
    mode: SigmaZMode,
) -> Result<WAlpha, SynthesisError> {
    let whalf = build_w_half_alpha(alpha, theta, k)?;
    let n = whalf.n_qubits();
    let w = WHalf::work_qubit(k);
    let involved: Vec<usize> = (0..=2 * k).collect();

    let mut gates: Vec<GateApp> = vec![GateApp::new(GateKind::Z, vec![0])];
    gates.extend(whalf.circuit.inverted().gates().iter().cloned());
    gates.extend(negate_outside_zeros(&involved, w));
    gates.extend(whalf.circuit.gates().iter().cloned());
    let circuit = Circuit::new(n, gates).expect("component circuits validated");
    let sigma_z_uses = count_z(&circuit);

    let circuit = match mode {
        SigmaZMode::Exact => circuit,
        SigmaZMode::Approximate { k2 } => approximate_sigma_z(&circuit, theta, k2)?,
    };

    Ok(WAlpha {
        circuit,
        gamma: whalf.gamma,
        grover_t: whalf.grover_t,
        reflected: whalf.reflected,
        k,
        sigma_z_uses,
    })
}

fn count_z(circuit: &Circuit) -> usize {
    circuit
        .counts_by_kind()
        .get("z")
        .copied()
        .unwrap_or_default()
}

/// Replaces every Z gate with the sign-flip network against one shared phase
/// register appended to the circuit, including its preparation.
fn approximate_sigma_z(
    circuit: &Circuit,
    theta: Angle,
    k2: usize,
) -> Result<Circuit, SynthesisError> {
    let network = build_sigma_z_tilde(theta, k2)?;
    let n0 = circuit.n_qubits();
    let n = n0 + 2 * k2;
    let register: Vec<usize> = (n0..n).collect();

    let mut gates: Vec<GateApp> = Vec::new();
    for i in 0..k2 {
        let (p, q) = (register[2 * i], register[2 * i + 1]);
        gates.push(GateApp::new(GateKind::X, vec![q]));
        gates.push(GateApp::new(GateKind::STheta(theta), vec![p]));
        gates.push(GateApp::new(GateKind::STheta(theta), vec![q]));
    }
    for g in circuit.gates() {
        if g.kind == GateKind::Z {
            let data = g.qubits[0];
            for net in network.gates() {
                let qubits: Vec<usize> = net
                    .qubits
                    .iter()
                    .map(|&q| if q == 0 { data } else { register[q - 1] })
                    .collect();
                gates.push(GateApp::new(net.kind.clone(), qubits));
            }
        } else {
            gates.push(g.clone());
        }
    }
    Ok(Circuit::new(n, gates).expect("remapped indices stay in range"))
}

// --- reduced-space evaluation ------------------------------------------------

struct Reduced {
    w: DMatrix<f64>,
    half_target: f64,
}

/// The four-dimensional action of the preparation circuit with exact sign
/// flips, in the basis {|0⟩|0̂⟩, |0⟩|1̂⟩, |1⟩|0̂⟩, |1⟩|1̂⟩}.
fn reduced_w(alpha: Angle, theta: Angle, k: usize) -> Result<Reduced, SynthesisError> {
    if theta.is_multiple_of_half_pi() {
        return Err(SynthesisError::ThetaMultipleOfHalfPi(theta.radians()));
    }
    let alpha_half = alpha.half().radians();
    let reflected = alpha_half >= FRAC_PI_2;
    let target = if reflected { PI - alpha_half } else { alpha_half };
    let gamma = theta.cos().powi(2 * k as i32).asin();
    let grover_t = super::grover::iteration_count_for_target(target, gamma)?;

    let (sg, cg) = (gamma.sin(), gamma.cos());
    // the coin layer swaps the all-zeros and encoded-one lines
    let that = DMatrix::from_row_slice(2, 2, &[sg, cg, cg, -sg]);
    let block = |m: &DMatrix<f64>| {
        let mut b = DMatrix::zeros(4, 4);
        b.view_mut((0, 0), (2, 2)).copy_from(m);
        b.view_mut((2, 2), (2, 2)).copy_from(m);
        b
    };
    let t_full = block(&that);
    let refl0 = DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, 1.0, -1.0, 1.0]));
    let d_reg = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, 1.0, -1.0]));
    let g = &t_full * &d_reg * &t_full * &refl0;

    let mut mnzf = DMatrix::<f64>::identity(4, 4);
    mnzf[(1, 1)] = 0.0;
    mnzf[(3, 3)] = 0.0;
    mnzf[(1, 3)] = 1.0;
    mnzf[(3, 1)] = 1.0;
    let mut cb = DMatrix::<f64>::identity(4, 4);
    cb.view_mut((2, 2), (2, 2)).copy_from(&that);

    let mut w = t_full.clone();
    for _ in 0..grover_t {
        w = &g * &w;
    }
    if reflected {
        w = &refl0 * &w;
    }
    w = &cb * &mnzf * &w;
    Ok(Reduced {
        w,
        half_target: alpha_half,
    })
}

/// Exact preparation error of [`build_w_half_alpha`] for the given geometry,
/// valid at any register size.
pub fn reduced_w_half_prep_error(
    alpha: Angle,
    theta: Angle,
    k: usize,
) -> Result<f64, SynthesisError> {
    let r = reduced_w(alpha, theta, k)?;
    let out = r.w.column(0);
    let mut diff = out.clone_owned();
    diff[0] -= r.half_target.cos();
    diff[2] -= r.half_target.sin();
    Ok(diff.norm())
}

/// Exact restricted error of the assembled rotation with exact sign flips,
/// valid at any register size.
pub fn reduced_w_alpha_error(alpha: Angle, theta: Angle, k: usize) -> Result<f64, SynthesisError> {
    let r = reduced_w(alpha, theta, k)?;
    let d_all = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, -1.0, -1.0]));
    let z = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, -1.0, -1.0]));
    let wa = &r.w * &d_all * r.w.transpose() * z;

    let a = alpha.radians();
    let (c, s) = (a.cos(), a.sin());
    let mut m = DMatrix::zeros(4, 2);
    m.column_mut(0).copy_from(&wa.column(0));
    m[(0, 0)] -= c;
    m[(2, 0)] -= s;
    m.column_mut(1).copy_from(&wa.column(2));
    m[(0, 1)] += s;
    m[(2, 1)] -= c;

    let gram = m.transpose() * m;
    let lmax = crate::linalg::max_eigenvalue(gram);
    Ok(lmax.max(0.0).sqrt())
}

/// Restricted error of the reflection identity with a perfect preparation:
/// `P·D·Pᵀ·σᶻ` against `U_α`, where `P` is an exact orthogonal completion of
/// `|0…0⟩ ↦ |φ_{α/2}⟩⊗|0̂⟩`. Always at floating-point scale.
pub fn oracle_w_alpha_error(alpha: Angle, k: usize) -> f64 {
    let n = 2 * k + 1;
    let dim = 1usize << n;
    let anc_dim = 1usize << (2 * k);
    let half = alpha.half().radians();

    let mut phi = DVector::zeros(dim);
    phi[0] = half.cos();
    phi[anc_dim] = half.sin();
    let mut h = -phi.clone();
    h[0] += 1.0;
    let hn2 = h.norm_squared();
    let p = if hn2 < 1e-24 {
        DMatrix::identity(dim, dim)
    } else {
        DMatrix::identity(dim, dim) - (2.0 / hn2) * (&h * h.transpose())
    };

    let mut d = -DMatrix::<f64>::identity(dim, dim);
    d[(0, 0)] = 1.0;
    let z = DMatrix::from_fn(dim, dim, |i, j| {
        if i != j {
            0.0
        } else if i < anc_dim {
            1.0
        } else {
            -1.0
        }
    });
    let wa = &p * d * p.transpose() * z;

    let a = alpha.radians();
    let (c, s) = (a.cos(), a.sin());
    let targets = [(c, s), (-s, c)];
    let mut worst2: f64 = 0.0;
    let mut m = DMatrix::zeros(dim, 2);
    for (b, &(t0, t1)) in targets.iter().enumerate() {
        let mut col = wa.column(b * anc_dim).clone_owned();
        col[0] -= t0;
        col[anc_dim] -= t1;
        m.column_mut(b).copy_from(&col);
    }
    let gram = m.transpose() * m;
    worst2 = worst2.max(crate::linalg::max_eigenvalue(gram));
    worst2.max(0.0).sqrt()
}

// --- end-to-end synthesis -----------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct SynthesizeOptions {
    pub policy: AncillaPolicy,
    /// Dense verification runs only when the lowered circuit fits this cap.
    pub max_qubits: usize,
    /// Refuse to materialize circuits whose estimated lowered size exceeds
    /// this. The construction scales as ε⁻¹·log(ε⁻¹), so very small ε asks
    /// for circuits in the gigabyte range.
    pub max_gates: usize,
}

impl Default for SynthesizeOptions {
    fn default() -> Self {
        SynthesizeOptions {
            policy: AncillaPolicy::Fresh,
            max_qubits: crate::operator::DEFAULT_MAX_QUBITS,
            max_gates: 5_000_000,
        }
    }
}

fn effective_target(alpha: Angle) -> f64 {
    let h = alpha.half().radians();
    if h < FRAC_PI_2 {
        h
    } else {
        PI - h
    }
}

fn subtract_half_pi(alpha: Angle) -> Angle {
    match alpha.as_pi_fraction() {
        Some((p, q)) => Angle::pi_fraction(2 * p - q, 2 * q),
        None => Angle::from_radians(alpha.radians() - FRAC_PI_2),
    }
}

/// Synthesizes `U_α` over {Toffoli, S(θ)} with certified error at most ε.
pub fn synthesize(
    alpha: Angle,
    theta: Angle,
    eps: f64,
    policy: AncillaPolicy,
) -> Result<(LoweredCircuit, SynthesisReport), SynthesisError> {
    synthesize_with_options(
        alpha,
        theta,
        eps,
        SynthesizeOptions {
            policy,
            ..SynthesizeOptions::default()
        },
    )
}

/// [`synthesize`] with an explicit dense-verification cap.
pub fn synthesize_with_options(
    alpha: Angle,
    theta: Angle,
    eps: f64,
    options: SynthesizeOptions,
) -> Result<(LoweredCircuit, SynthesisReport), SynthesisError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(SynthesisError::EpsilonOutOfRange(eps));
    }
    let basis = BasisSpec::rotation(theta)?;
    let gamma_target = eps / 8.0;

    // Targets too close to π/2 leave no room for γ; peel off exact quarter
    // turns (U_{π/2} = σˣ·σᶻ) until the geometry has slack.
    let mut alpha_eff = alpha;
    let mut prefix: Vec<GateApp> = Vec::new();
    for _ in 0..4 {
        if FRAC_PI_2 - effective_target(alpha_eff) > 2.0 * gamma_target {
            break;
        }
        prefix.push(GateApp::new(GateKind::Z, vec![0]));
        prefix.push(GateApp::new(GateKind::X, vec![0]));
        alpha_eff = subtract_half_pi(alpha_eff);
    }

    // smallest register with arcsin(cos^{2k}θ) ≤ γ_target
    let c2 = theta.cos().powi(2);
    let mut k1 = (gamma_target.sin().ln() / c2.ln()).ceil().max(1.0) as usize;
    while theta.cos().powi(2 * k1 as i32).asin() > gamma_target {
        k1 += 1;
    }

    // Sign-flip uses of the lowered artifact are known before any gate is
    // materialized: each iteration carries two reflections (2 per stage, two
    // stages), plus the reflected-branch reflections, the axis flip, and the
    // final sign flip. Matched against the lowerer's own count below.
    let gamma = theta.cos().powi(2 * k1 as i32).asin();
    let quarter_turn_z = prefix.iter().filter(|g| g.kind == GateKind::Z).count();
    let reflected = alpha_eff.half().radians() >= FRAC_PI_2;
    let grover_t =
        super::grover::iteration_count_for_target(effective_target(alpha_eff), gamma)?;
    let planned_uses = 4 * grover_t + 2 + 2 * usize::from(reflected) + quarter_turn_z;
    let per_use_budget = match options.policy {
        AncillaPolicy::Shared => gamma.powi(3),
        AncillaPolicy::Fresh => (eps / 2.0) / planned_uses as f64,
    };
    let k2 = choose_k_sigma_z(theta, per_use_budget.min(1.9))?;

    let estimated = 2 * grover_t * (26 * k1 + 24 * k2 + 40) + 24 * k2 + 200;
    if estimated > options.max_gates {
        return Err(SynthesisError::CircuitTooLarge {
            estimated,
            cap: options.max_gates,
        });
    }

    let wa = build_w_alpha(alpha_eff, theta, k1, SigmaZMode::Exact)?;
    debug_assert_eq!(wa.grover_t, grover_t);

    let mut ir_gates = prefix;
    ir_gates.extend(wa.circuit.gates().iter().cloned());
    let ir = Circuit::new(wa.circuit.n_qubits(), ir_gates).expect("prefix acts on qubit 0");

    let lowered = lower_to_basis(
        &ir,
        &basis,
        &SigmaZLowering {
            k: k2,
            policy: options.policy,
        },
    )?;

    // certify against the lowerer's own count; the planned count sized the
    // per-use budget
    debug_assert_eq!(lowered.sigma_z_networks, planned_uses);
    let sigma_total = lowered.sigma_z_networks as f64 * sigma_z_error_bound(theta, k2);
    let rotation_err = reduced_w_alpha_error(alpha_eff, theta, k1)?;
    let bound_error = 4.0 * gamma + sigma_total;

    let (achieved_error, verification) = if lowered.n_qubits() <= options.max_qubits {
        let target = u_alpha_operator(alpha);
        let ancilla = lowered.ancilla_for_data(1);
        let measured = restricted_error(&target, &lowered.body, &ancilla)
            .expect("lowered circuit dimensions are consistent");
        (measured, VerificationMethod::Dense)
    } else {
        (rotation_err + sigma_total, VerificationMethod::Composite)
    };

    let report = SynthesisReport {
        achieved_error,
        bound_error,
        verified: achieved_error <= eps,
        verification,
        gate_counts: lowered.counts_by_kind(),
        ancilla_count: lowered.n_qubits() - lowered.n_data,
        params: SynthesisParams {
            k1,
            k2,
            gamma,
            grover_t,
            policy: options.policy,
        },
    };
    Ok((lowered, report))
}

/// The single-qubit rotation `U_α` as an operator.
pub(crate) fn u_alpha_operator(alpha: Angle) -> RealOperator {
    let (c, s) = (alpha.cos(), alpha.sin());
    RealOperator::from_matrix(DMatrix::from_row_slice(2, 2, &[c, -s, s, c]))
        .expect("2x2 is a power of two")
}
