//! Dense statevector simulation of the supported gate set, plus seeded
//! measurement sampling.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate, MAX_QUBITS};
use crate::error::{Error, Result};

const NORM_TOLERANCE: f64 = 1e-10;

/// Renders a basis index as a bitstring, most significant qubit first.
pub fn bitstring(index: usize, qubit_count: usize) -> String {
    format!("{index:0qubit_count$b}")
}

/// Parses a bitstring rendered most significant qubit first back to an index.
pub fn bitstring_index(bits: &str) -> Result<usize> {
    if bits.is_empty() || bits.len() > MAX_QUBITS {
        return Err(Error::InvalidArgument(format!(
            "bitstring length must be in 1..={MAX_QUBITS}, got {}",
            bits.len()
        )));
    }
    let mut index = 0usize;
    for c in bits.chars() {
        index <<= 1;
        match c {
            '0' => {}
            '1' => index |= 1,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "bitstring may contain only 0 and 1, got {c:?}"
                )))
            }
        }
    }
    Ok(index)
}

/// A normalized pure state over `2^qubit_count` complex amplitudes.
///
/// Qubit 0 is the least significant bit of the amplitude index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubit_count: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis state `|basis_index>`.
    pub fn new_basis_state(qubit_count: usize, basis_index: usize) -> Result<Self> {
        if qubit_count == 0 || qubit_count > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {qubit_count}"
            )));
        }
        let dim = 1usize << qubit_count;
        if basis_index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {basis_index} out of range for {qubit_count} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[basis_index] = Complex64::ONE;
        Ok(Self {
            qubit_count,
            amplitudes,
        })
    }

    /// Wraps an explicit amplitude vector. The length must be a power of two
    /// and the vector must be normalized and free of NaN/infinities.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if !dim.is_power_of_two() || !(2..=(1 << MAX_QUBITS)).contains(&dim) {
            return Err(Error::InvalidArgument(format!(
                "amplitude vector length must be a power of two in 2..=2^{MAX_QUBITS}, got {dim}"
            )));
        }
        if amplitudes
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::InvalidArgument("amplitudes must be finite".into()));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "state is not normalized: sum of squared magnitudes is {norm_sq}"
            )));
        }
        Ok(Self {
            qubit_count: dim.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    /// Sum of squared magnitudes. 1 for any reachable state.
    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Measurement probability of every basis state, in index order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Draws `shots` measurements in the computational basis.
    ///
    /// Sampling is a multinomial draw from [`Self::probabilities`], seeded so
    /// that an identical state and seed give a bit-identical histogram.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<Histogram> {
        if shots == 0 {
            return Err(Error::InvalidArgument("shots must be at least 1".into()));
        }
        let weights = self.probabilities();
        let dist = WeightedIndex::new(&weights)
            .map_err(|e| Error::InvalidArgument(format!("cannot sample state: {e}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for _ in 0..shots {
            let index = dist.sample(&mut rng);
            *counts
                .entry(bitstring(index, self.qubit_count))
                .or_insert(0) += 1;
        }
        Ok(Histogram {
            qubit_count: self.qubit_count,
            shots,
            counts,
        })
    }

    pub(crate) fn apply_gate(&mut self, gate: &Gate) {
        match gate {
            Gate::H(t) => self.apply_h(*t),
            Gate::X(t) => self.apply_controlled_not(0, *t),
            Gate::Cx { control, target } => self.apply_controlled_not(1 << control, *target),
            Gate::Ccx {
                control_a,
                control_b,
                target,
            } => self.apply_controlled_not((1 << control_a) | (1 << control_b), *target),
            Gate::Mcx { controls, target } => {
                let mask = controls.iter().fold(0usize, |m, &q| m | (1 << q));
                self.apply_controlled_not(mask, *target);
            }
            Gate::Z(t) => self.apply_phase_flip(1 << t),
            Gate::Mcz { qubits } => {
                let mask = qubits.iter().fold(0usize, |m, &q| m | (1 << q));
                self.apply_phase_flip(mask);
            }
        }
    }

    /// X on `target` wherever every qubit in `control_mask` is 1.
    fn apply_controlled_not(&mut self, control_mask: usize, target: usize) {
        let target_mask = 1usize << target;
        for i in 0..self.amplitudes.len() {
            if i & control_mask == control_mask && i & target_mask == 0 {
                self.amplitudes.swap(i, i | target_mask);
            }
        }
    }

    /// Phase -1 wherever every qubit in `mask` is 1.
    fn apply_phase_flip(&mut self, mask: usize) {
        for (i, amp) in self.amplitudes.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
    }

    fn apply_h(&mut self, target: usize) {
        let step = 1usize << target;
        for block in (0..self.amplitudes.len()).step_by(2 * step) {
            for offset in 0..step {
                let lo = block + offset;
                let hi = lo + step;
                let a = self.amplitudes[lo];
                let b = self.amplitudes[hi];
                self.amplitudes[lo] = FRAC_1_SQRT_2 * (a + b);
                self.amplitudes[hi] = FRAC_1_SQRT_2 * (a - b);
            }
        }
    }
}

/// Applies `circuit` to `state` and returns the resulting state.
pub fn apply_circuit(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    if state.qubit_count() != circuit.qubit_count() {
        return Err(Error::InvalidArgument(format!(
            "state has {} qubits but circuit expects {}",
            state.qubit_count(),
            circuit.qubit_count()
        )));
    }
    let mut out = state.clone();
    for gate in circuit.gates() {
        out.apply_gate(gate);
    }
    Ok(out)
}

/// Measurement counts keyed by bitstring (most significant qubit first).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Histogram {
    qubit_count: usize,
    shots: u64,
    counts: BTreeMap<String, u64>,
}

impl Histogram {
    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    /// Observed outcomes and their counts; absent keys were never drawn.
    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn count(&self, bits: &str) -> u64 {
        self.counts.get(bits).copied().unwrap_or(0)
    }
}
