//! Circuits: ordered gate applications over a fixed qubit count.

use serde::de::{self, MapAccess, Visitor};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::angle::Angle;
use crate::gate::GateKind;

#[derive(Debug, Error, PartialEq)]
pub enum CircuitError {
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("duplicate qubit index {index} in one gate application")]
    DuplicateQubit { index: usize },
    #[error("gate {kind} expects {expected} qubits, got {got}")]
    ArityMismatch {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{n_qubits} qubits exceeds the dense simulation cap of {cap}")]
    DimensionCapExceeded { n_qubits: usize, cap: usize },
    #[error("circuit must act on at least one qubit")]
    EmptyRegister,
}

/// One gate applied to an ordered list of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct GateApp {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl GateApp {
    pub fn new(kind: GateKind, qubits: impl Into<Vec<usize>>) -> Self {
        GateApp {
            kind,
            qubits: qubits.into(),
        }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<(), CircuitError> {
        let expected = self.kind.arity();
        if self.qubits.len() != expected {
            return Err(CircuitError::ArityMismatch {
                kind: self.kind.name(),
                expected,
                got: self.qubits.len(),
            });
        }
        for (i, &q) in self.qubits.iter().enumerate() {
            if q >= n_qubits {
                return Err(CircuitError::QubitOutOfRange {
                    index: q,
                    n_qubits,
                });
            }
            if self.qubits[..i].contains(&q) {
                return Err(CircuitError::DuplicateQubit { index: q });
            }
        }
        if let GateKind::ControlledBlock(inner) = &self.kind {
            // The inner circuit is validated against its own register.
            inner.revalidate()?;
        }
        Ok(())
    }
}

/// An ordered list of gate applications on `n_qubits` qubits.
///
/// Qubit 0 is the most significant bit of a basis-state index.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<GateApp>,
}

impl Circuit {
    pub fn new(n_qubits: usize, gates: Vec<GateApp>) -> Result<Self, CircuitError> {
        if n_qubits == 0 {
            return Err(CircuitError::EmptyRegister);
        }
        for g in &gates {
            g.validate(n_qubits)?;
        }
        Ok(Circuit { n_qubits, gates })
    }

    pub fn empty(n_qubits: usize) -> Self {
        Circuit::new(n_qubits, Vec::new()).expect("positive register")
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[GateApp] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: GateApp) -> Result<(), CircuitError> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = GateApp>) -> Result<(), CircuitError> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Concatenation: `self` runs first, then `other`.
    pub fn chain(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        let mut out = self.clone();
        if other.n_qubits != self.n_qubits {
            return Err(CircuitError::ArityMismatch {
                kind: "circuit",
                expected: self.n_qubits,
                got: other.n_qubits,
            });
        }
        out.gates.extend(other.gates.iter().cloned());
        Ok(out)
    }

    /// The inverse circuit: gates reversed, each inverted.
    pub fn inverted(&self) -> Circuit {
        let gates = self
            .gates
            .iter()
            .rev()
            .map(|g| GateApp::new(g.kind.inverse(), g.qubits.clone()))
            .collect();
        Circuit {
            n_qubits: self.n_qubits,
            gates,
        }
    }

    /// Gate count per kind name, including gates nested in controlled blocks.
    pub fn counts_by_kind(&self) -> std::collections::BTreeMap<String, usize> {
        let mut out = std::collections::BTreeMap::new();
        fn walk(c: &Circuit, out: &mut std::collections::BTreeMap<String, usize>) {
            for g in c.gates() {
                *out.entry(g.kind.name().to_string()).or_insert(0) += 1;
                if let GateKind::ControlledBlock(inner) = &g.kind {
                    walk(inner, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    fn revalidate(&self) -> Result<(), CircuitError> {
        for g in &self.gates {
            g.validate(self.n_qubits)?;
        }
        Ok(())
    }
}

// --- JSON wire format -------------------------------------------------------
//
// {"n_qubits": N, "gates": [{"kind": "toffoli", "qubits": [0,1,2]},
//                           {"kind": "s_theta", "theta": 0.523…, "qubits": [3]}]}

impl Serialize for GateApp {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("kind", self.kind.name())?;
        match &self.kind {
            GateKind::STheta(t) | GateKind::SThetaInv(t) => {
                map.serialize_entry("theta", &t.radians())?;
            }
            GateKind::ControlledBlock(inner) => {
                map.serialize_entry("inner", inner.as_ref())?;
            }
            _ => {}
        }
        map.serialize_entry("qubits", &self.qubits)?;
        map.end()
    }
}

impl Serialize for Circuit {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Circuit", 2)?;
        s.serialize_field("n_qubits", &self.n_qubits)?;
        s.serialize_field("gates", &self.gates)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for GateApp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct GateVisitor;

        impl<'de> Visitor<'de> for GateVisitor {
            type Value = GateApp;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a gate application object")
            }

            fn visit_map<M: MapAccess<'de>>(self, mut map: M) -> Result<GateApp, M::Error> {
                let mut kind: Option<String> = None;
                let mut theta: Option<f64> = None;
                let mut inner: Option<Circuit> = None;
                let mut qubits: Option<Vec<usize>> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "kind" => kind = Some(map.next_value()?),
                        "theta" => theta = Some(map.next_value()?),
                        "inner" => inner = Some(map.next_value()?),
                        "qubits" => qubits = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["kind"])),
                    }
                }
                let kind = kind.ok_or_else(|| de::Error::missing_field("kind"))?;
                let qubits = qubits.ok_or_else(|| de::Error::missing_field("qubits"))?;
                let angle = || -> Result<Angle, M::Error> {
                    theta
                        .map(Angle::from_radians)
                        .ok_or_else(|| de::Error::missing_field("theta"))
                };
                let kind = match kind.as_str() {
                    "toffoli" => GateKind::Toffoli,
                    "cnot" => GateKind::Cnot,
                    "x" => GateKind::X,
                    "z" => GateKind::Z,
                    "h" => GateKind::H,
                    "s_theta" => GateKind::STheta(angle()?),
                    "s_theta_inv" => GateKind::SThetaInv(angle()?),
                    "reflect_zero" => GateKind::ReflectZero(qubits.len()),
                    "mark_non_zero_flip" => {
                        if qubits.is_empty() {
                            return Err(de::Error::custom("mark_non_zero_flip needs qubits"));
                        }
                        GateKind::MarkNonZeroFlip(qubits.len() - 1)
                    }
                    "controlled_block" => GateKind::ControlledBlock(Box::new(
                        inner.ok_or_else(|| de::Error::missing_field("inner"))?,
                    )),
                    other => return Err(de::Error::custom(format!("unknown gate kind {other}"))),
                };
                Ok(GateApp { kind, qubits })
            }
        }

        deserializer.deserialize_map(GateVisitor)
    }
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n_qubits: usize,
            gates: Vec<GateApp>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Circuit::new(raw.n_qubits, raw.gates).map_err(de::Error::custom)
    }
}
