//! Gate and circuit types shared by the encoder, the oracles and the diffusers.

use crate::error::{Error, Result};

/// Dense simulation cap. A 24-qubit state is 16M complex amplitudes (256 MiB);
/// everything in this crate stays far below that.
pub const MAX_QUBITS: usize = 24;

/// A gate from the fixed set used by NEQR preparation and Grover search.
///
/// Every gate in this set is its own inverse, which is what makes
/// [`Circuit::inverse`] a plain reversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    /// Pauli X (NOT) on one qubit.
    X(usize),
    /// Hadamard on one qubit.
    H(usize),
    /// Pauli Z (phase flip on the |1> branch) on one qubit.
    Z(usize),
    /// Controlled NOT.
    Cx { control: usize, target: usize },
    /// Doubly controlled NOT (Toffoli).
    Ccx {
        control_a: usize,
        control_b: usize,
        target: usize,
    },
    /// NOT controlled on an arbitrary set of qubits. An empty control set
    /// degenerates to a plain X.
    Mcx { controls: Vec<usize>, target: usize },
    /// Phase flip of the all-ones pattern of `qubits`, identity elsewhere.
    /// One qubit gives Z, two give CZ, and so on.
    Mcz { qubits: Vec<usize> },
}

impl Gate {
    /// Every qubit index the gate touches, in declaration order.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::X(t) | Gate::H(t) | Gate::Z(t) => vec![*t],
            Gate::Cx { control, target } => vec![*control, *target],
            Gate::Ccx {
                control_a,
                control_b,
                target,
            } => vec![*control_a, *control_b, *target],
            Gate::Mcx { controls, target } => {
                let mut qs = controls.clone();
                qs.push(*target);
                qs
            }
            Gate::Mcz { qubits } => qubits.clone(),
        }
    }

    fn validate(&self, qubit_count: usize) -> Result<()> {
        if let Gate::Mcz { qubits } = self {
            if qubits.is_empty() {
                return Err(Error::InvalidArgument(
                    "MCZ needs at least one qubit".into(),
                ));
            }
        }
        let qs = self.qubits();
        let mut seen = 0u32;
        for &q in &qs {
            if q >= qubit_count {
                return Err(Error::InvalidArgument(format!(
                    "qubit index {q} out of range for a {qubit_count}-qubit circuit"
                )));
            }
            if seen & (1 << q) != 0 {
                return Err(Error::InvalidArgument(format!(
                    "qubit index {q} repeated within one gate"
                )));
            }
            seen |= 1 << q;
        }
        Ok(())
    }
}

/// An ordered gate sequence over a fixed qubit register.
///
/// Index convention: qubit 0 is the least significant bit of a basis index,
/// and bitstrings are rendered most significant qubit first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    qubit_count: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// An empty circuit over `qubit_count` qubits (1..=24).
    pub fn new(qubit_count: usize) -> Result<Self> {
        if qubit_count == 0 || qubit_count > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {qubit_count}"
            )));
        }
        Ok(Self {
            qubit_count,
            gates: Vec::new(),
        })
    }

    /// Builds a circuit from a gate list, validating every gate.
    pub fn with_gates(qubit_count: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut circuit = Self::new(qubit_count)?;
        for gate in gates {
            circuit.push(gate)?;
        }
        Ok(circuit)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate after checking index bounds and distinctness.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.qubit_count)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of `other`, which must act on the same register.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.qubit_count != self.qubit_count {
            return Err(Error::InvalidArgument(format!(
                "cannot append a {}-qubit circuit to a {}-qubit circuit",
                other.qubit_count, self.qubit_count
            )));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// The circuit implementing the inverse unitary.
    ///
    /// Every supported gate is self-inverse, so this is the same gates in
    /// reverse order.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            qubit_count: self.qubit_count,
            gates: self.gates.iter().rev().cloned().collect(),
        }
    }
}
