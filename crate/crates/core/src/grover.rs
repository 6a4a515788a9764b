//! Oracles, diffusers, iteration planning and the three search procedures:
//! uniform-start search for exact bitstrings, amplitude amplification on the
//! NEQR state, and the per-pixel semiclassical run.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use serde::Serialize;

use crate::circuit::{Circuit, Gate, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::image::{classical_scan, GrayImage};
use crate::neqr::{encode_neqr, NeqrLayout};
use crate::state::{apply_circuit, bitstring, bitstring_index, StateVector};

/// Outcomes with exact probability at or above this are always listed in a
/// [`SearchResult`], even when the sampler never drew them.
const LISTED_PROBABILITY_FLOOR: f64 = 1e-6;

/// Darkness predicate: a pixel is dark iff its intensity is strictly below
/// the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdConfig {
    threshold: u16,
}

impl ThresholdConfig {
    /// Threshold in 0..=256. 0 marks nothing, 256 marks everything.
    pub fn new(threshold: u16) -> Result<Self> {
        if threshold > 256 {
            return Err(Error::InvalidArgument(format!(
                "threshold must be in 0..=256, got {threshold}"
            )));
        }
        Ok(Self { threshold })
    }

    pub fn threshold(&self) -> u16 {
        self.threshold
    }

    pub fn is_dark(&self, intensity: u8) -> bool {
        (intensity as u16) < self.threshold
    }
}

/// Which search procedure produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Uniform start over the full register, exact-bitstring oracle for the
    /// classically scanned dark pixels.
    Paper,
    /// NEQR start, threshold oracle on the intensity register, diffuser
    /// reflecting about the prepared state.
    Amplitude,
    /// One small Grover run per dark pixel over the position register only.
    Semiclassical,
}

/// A dark pixel: coordinates plus its intensity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DarkPixel {
    pub x: usize,
    pub y: usize,
    pub intensity: u8,
}

/// Search-space size, marked count and the planned iteration count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroverPlan {
    pub mode: SearchMode,
    pub search_space_size: u64,
    pub marked_count: u64,
    pub iterations: u64,
}

/// One measured basis state with its decoded pixel reading.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedOutcome {
    /// Full-register bitstring, most significant qubit first.
    pub bitstring: String,
    pub x: usize,
    pub y: usize,
    pub intensity: u8,
    /// Whether the decoded intensity satisfies the threshold predicate.
    pub dark: bool,
    pub exact_probability: f64,
    pub sampled_count: u64,
}

/// Outcomes of one search run, ranked by exact probability.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub plan: GroverPlan,
    /// Every outcome that was sampled at least once or carries probability
    /// of at least 1e-6, highest exact probability first.
    pub outcomes: Vec<RankedOutcome>,
    /// Exact probability mass on every basis state whose decoded intensity
    /// is below the threshold.
    pub total_dark_probability: f64,
    /// Oracle applications performed, which equals the planned iterations.
    pub oracle_invocations: u64,
}

/// Phase oracle flipping the sign of every basis state whose intensity
/// register reads a value below the threshold. Position bits are untouched.
///
/// One block per marked value: X conjugation maps the value to the all-ones
/// pattern of the intensity register, where an MCZ applies the flip.
pub fn build_threshold_oracle(layout: &NeqrLayout, config: &ThresholdConfig) -> Circuit {
    let mut circuit = Circuit::new(layout.total_qubits()).expect("layout fits the qubit cap");
    let intensity_qubits: Vec<usize> = layout.intensity_qubits().collect();
    let value_count = 1usize << layout.q();
    let marked = (config.threshold() as usize).min(value_count);
    for value in 0..marked {
        let zeros: Vec<usize> = intensity_qubits
            .iter()
            .enumerate()
            .filter(|(bit, _)| (value >> bit) & 1 == 0)
            .map(|(_, &qubit)| qubit)
            .collect();
        for &qubit in &zeros {
            circuit.push(Gate::X(qubit)).expect("validated layout");
        }
        circuit
            .push(Gate::Mcz {
                qubits: intensity_qubits.clone(),
            })
            .expect("validated layout");
        for &qubit in &zeros {
            circuit.push(Gate::X(qubit)).expect("validated layout");
        }
    }
    circuit
}

/// Phase oracle flipping the sign of exactly the listed basis states.
///
/// Bitstrings are rendered most significant qubit first, matching histogram
/// keys. Duplicates are collapsed.
pub fn build_bitstring_oracle<S: AsRef<str>>(total_qubits: usize, marked: &[S]) -> Result<Circuit> {
    if marked.is_empty() {
        return Err(Error::NoMarkedItems(
            "bitstring oracle needs at least one marked state".into(),
        ));
    }
    let mut indices = BTreeSet::new();
    for bits in marked {
        let bits = bits.as_ref();
        if bits.len() != total_qubits {
            return Err(Error::InvalidArgument(format!(
                "marked bitstring {bits:?} does not have length {total_qubits}"
            )));
        }
        indices.insert(bitstring_index(bits)?);
    }

    let mut circuit = Circuit::new(total_qubits)?;
    let all_qubits: Vec<usize> = (0..total_qubits).collect();
    for index in indices {
        let zeros: Vec<usize> = (0..total_qubits)
            .filter(|bit| (index >> bit) & 1 == 0)
            .collect();
        for &qubit in &zeros {
            circuit.push(Gate::X(qubit))?;
        }
        circuit.push(Gate::Mcz {
            qubits: all_qubits.clone(),
        })?;
        for &qubit in &zeros {
            circuit.push(Gate::X(qubit))?;
        }
    }
    Ok(circuit)
}

/// Reflection about the uniform superposition, up to a global phase:
/// H on all, X on all, MCZ on all, X on all, H on all.
pub fn build_diffuser_uniform(total_qubits: usize) -> Result<Circuit> {
    let mut circuit = Circuit::new(total_qubits)?;
    let all_qubits: Vec<usize> = (0..total_qubits).collect();
    for &q in &all_qubits {
        circuit.push(Gate::H(q))?;
    }
    for &q in &all_qubits {
        circuit.push(Gate::X(q))?;
    }
    circuit.push(Gate::Mcz {
        qubits: all_qubits.clone(),
    })?;
    for &q in &all_qubits {
        circuit.push(Gate::X(q))?;
    }
    for &q in &all_qubits {
        circuit.push(Gate::H(q))?;
    }
    Ok(circuit)
}

/// Reflection about `A|0...0>` for an arbitrary preparation `A`, up to a
/// global phase: undo `A`, reflect about `|0...0>` with an X-conjugated MCZ,
/// redo `A`.
pub fn build_diffuser_about(preparation: &Circuit) -> Circuit {
    let total_qubits = preparation.qubit_count();
    let mut circuit = preparation.inverse();
    let all_qubits: Vec<usize> = (0..total_qubits).collect();
    for &q in &all_qubits {
        circuit.push(Gate::X(q)).expect("same register");
    }
    circuit
        .push(Gate::Mcz {
            qubits: all_qubits.clone(),
        })
        .expect("same register");
    for &q in &all_qubits {
        circuit.push(Gate::X(q)).expect("same register");
    }
    circuit.append(preparation).expect("same register");
    circuit
}

/// Planned Grover iterations: `floor(pi / (4 asin(sqrt(M / N))))`.
///
/// The degenerate cases are reported as computed, never adjusted: marking
/// half the space or more plans one or zero iterations.
pub fn iteration_count(search_space: u64, marked: u64) -> Result<u64> {
    if search_space == 0 {
        return Err(Error::InvalidArgument(
            "search space must be nonempty".into(),
        ));
    }
    if marked == 0 {
        return Err(Error::NoMarkedItems(
            "iteration planning needs at least one marked item".into(),
        ));
    }
    if marked > search_space {
        return Err(Error::InvalidArgument(format!(
            "marked count {marked} exceeds search space {search_space}"
        )));
    }
    let theta = (marked as f64 / search_space as f64).sqrt().asin();
    Ok((PI / (4.0 * theta)).floor() as u64)
}

/// Success probability of measuring a marked state after `iterations`
/// Grover rounds from the uniform start: `sin^2((2k + 1) asin(sqrt(M/N)))`.
pub fn success_probability(search_space: u64, marked: u64, iterations: u64) -> Result<f64> {
    if search_space == 0 {
        return Err(Error::InvalidArgument(
            "search space must be nonempty".into(),
        ));
    }
    if marked == 0 {
        return Err(Error::NoMarkedItems(
            "success probability needs at least one marked item".into(),
        ));
    }
    if marked > search_space {
        return Err(Error::InvalidArgument(format!(
            "marked count {marked} exceeds search space {search_space}"
        )));
    }
    let theta = (marked as f64 / search_space as f64).sqrt().asin();
    Ok(((2 * iterations + 1) as f64 * theta).sin().powi(2))
}

/// Runs a full-register search for the dark pixels of `image` and packages
/// ranked outcomes, exact probabilities and a sampled histogram.
///
/// `SearchMode::Semiclassical` has its own entry point,
/// [`run_semiclassical_search`], and is rejected here.
pub fn run_search(
    image: &GrayImage,
    config: &ThresholdConfig,
    mode: SearchMode,
    shots: u64,
    seed: u64,
) -> Result<SearchResult> {
    let layout = NeqrLayout::for_side(image.side())?;
    let dark = classical_scan(image, config);
    if dark.is_empty() {
        return Err(Error::NoMarkedItems(format!(
            "no pixel is below threshold {}",
            config.threshold()
        )));
    }
    let marked_count = dark.len() as u64;

    let (search_space_size, iterations, circuit) = match mode {
        SearchMode::Paper => {
            let total = layout.total_qubits();
            let search_space = 1u64 << total;
            let marked: Vec<String> = dark
                .iter()
                .map(|p| bitstring(layout.basis_index(p.x, p.y, p.intensity), total))
                .collect();
            let iterations = iteration_count(search_space, marked_count)?;
            let oracle = build_bitstring_oracle(total, &marked)?;
            let diffuser = build_diffuser_uniform(total)?;
            let mut circuit = Circuit::new(total)?;
            for qubit in 0..total {
                circuit.push(Gate::H(qubit))?;
            }
            for _ in 0..iterations {
                circuit.append(&oracle)?;
                circuit.append(&diffuser)?;
            }
            (search_space, iterations, circuit)
        }
        SearchMode::Amplitude => {
            let prepared = encode_neqr(image)?;
            let positions = (image.side() * image.side()) as u64;
            let iterations = iteration_count(positions, marked_count)?;
            let oracle = build_threshold_oracle(&layout, config);
            let diffuser = build_diffuser_about(prepared.circuit());
            let mut circuit = prepared.circuit().clone();
            for _ in 0..iterations {
                circuit.append(&oracle)?;
                circuit.append(&diffuser)?;
            }
            (positions, iterations, circuit)
        }
        SearchMode::Semiclassical => {
            return Err(Error::InvalidArgument(
                "semiclassical runs go through run_semiclassical_search".into(),
            ))
        }
    };

    let zero = StateVector::new_basis_state(layout.total_qubits(), 0)?;
    let state = apply_circuit(&zero, &circuit)?;
    let probabilities = state.probabilities();
    let histogram = state.sample(shots, seed)?;

    let mut listed: BTreeSet<usize> = histogram
        .counts()
        .keys()
        .map(|bits| bitstring_index(bits).expect("histogram keys are valid"))
        .collect();
    for (index, &p) in probabilities.iter().enumerate() {
        if p >= LISTED_PROBABILITY_FLOOR {
            listed.insert(index);
        }
    }

    let mut outcomes: Vec<RankedOutcome> = listed
        .into_iter()
        .map(|index| {
            let bits = bitstring(index, layout.total_qubits());
            let (x, y, intensity) = layout.decode_index(index);
            RankedOutcome {
                sampled_count: histogram.count(&bits),
                bitstring: bits,
                x,
                y,
                intensity,
                dark: config.is_dark(intensity),
                exact_probability: probabilities[index],
            }
        })
        .collect();
    outcomes.sort_by(|a, b| {
        b.exact_probability
            .total_cmp(&a.exact_probability)
            .then_with(|| a.bitstring.cmp(&b.bitstring))
    });

    let total_dark_probability = probabilities
        .iter()
        .enumerate()
        .filter(|(index, _)| {
            let (_, _, intensity) = layout.decode_index(*index);
            config.is_dark(intensity)
        })
        .map(|(_, p)| p)
        .sum();

    Ok(SearchResult {
        plan: GroverPlan {
            mode,
            search_space_size,
            marked_count,
            iterations,
        },
        outcomes,
        total_dark_probability,
        oracle_invocations: iterations,
    })
}

/// Per-pixel search circuit over the position register plus one ancilla.
///
/// Uniform preparation on the `2n` position qubits; the ancilla (the top
/// qubit) is put in the minus state by X then H so the controlled NOT of the
/// oracle kicks a phase onto the marked position pattern; the diffuser acts
/// on the position register alone. For a 2x2 image this is the classic
/// two-qubit search with a Toffoli oracle, and one iteration lands on the
/// marked position with probability exactly 1.
pub fn build_semiclassical_circuit(position_bits: usize, x: usize, y: usize) -> Result<Circuit> {
    if position_bits < 1 {
        return Err(Error::InvalidArgument(
            "position register needs at least one bit per axis".into(),
        ));
    }
    if 2 * position_bits + 1 > MAX_QUBITS {
        return Err(Error::CapacityExceeded(format!(
            "{} qubits needed per run, the simulator caps at {MAX_QUBITS}",
            2 * position_bits + 1
        )));
    }
    let side = 1usize << position_bits;
    if x >= side || y >= side {
        return Err(Error::InvalidArgument(format!(
            "position ({x},{y}) outside a {side}x{side} image"
        )));
    }
    let position_qubits: Vec<usize> = (0..2 * position_bits).collect();
    let ancilla = 2 * position_bits;
    let mut circuit = Circuit::new(ancilla + 1)?;

    for &q in &position_qubits {
        circuit.push(Gate::H(q))?;
    }
    circuit.push(Gate::X(ancilla))?;
    circuit.push(Gate::H(ancilla))?;

    let pattern = (y << position_bits) | x;
    let zeros: Vec<usize> = position_qubits
        .iter()
        .copied()
        .filter(|&q| (pattern >> q) & 1 == 0)
        .collect();
    let iterations = iteration_count(1u64 << (2 * position_bits), 1)?;
    for _ in 0..iterations {
        // Oracle: phase kickback through the ancilla.
        for &q in &zeros {
            circuit.push(Gate::X(q))?;
        }
        if position_qubits.len() == 2 {
            circuit.push(Gate::Ccx {
                control_a: position_qubits[0],
                control_b: position_qubits[1],
                target: ancilla,
            })?;
        } else {
            circuit.push(Gate::Mcx {
                controls: position_qubits.clone(),
                target: ancilla,
            })?;
        }
        for &q in &zeros {
            circuit.push(Gate::X(q))?;
        }
        // Diffuser over the position register only.
        for &q in &position_qubits {
            circuit.push(Gate::H(q))?;
        }
        for &q in &position_qubits {
            circuit.push(Gate::X(q))?;
        }
        circuit.push(Gate::Mcz {
            qubits: position_qubits.clone(),
        })?;
        for &q in &position_qubits {
            circuit.push(Gate::X(q))?;
        }
        for &q in &position_qubits {
            circuit.push(Gate::H(q))?;
        }
    }
    Ok(circuit)
}

/// Finds dark pixels one at a time: a classical scan picks them, then each
/// gets its own position-register Grover run whose measured coordinate is
/// reported.
///
/// An all-bright image yields an empty list. Runs for distinct pixels use
/// consecutive seeds derived from `seed`.
pub fn run_semiclassical_search(
    image: &GrayImage,
    config: &ThresholdConfig,
    seed: u64,
) -> Result<Vec<DarkPixel>> {
    let position_bits = image.position_bits();
    let dark = classical_scan(image, config);
    let mut found = Vec::with_capacity(dark.len());
    for (run, pixel) in dark.iter().enumerate() {
        let circuit = build_semiclassical_circuit(position_bits, pixel.x, pixel.y)?;
        let zero = StateVector::new_basis_state(circuit.qubit_count(), 0)?;
        let state = apply_circuit(&zero, &circuit)?;
        let histogram = state.sample(1, seed.wrapping_add(run as u64))?;
        let bits = histogram
            .counts()
            .keys()
            .next()
            .expect("one shot yields one outcome");
        let index = bitstring_index(bits)?;
        let x = index & ((1 << position_bits) - 1);
        let y = (index >> position_bits) & ((1 << position_bits) - 1);
        found.push(DarkPixel {
            x,
            y,
            intensity: image.get(x, y),
        });
    }
    Ok(found)
}
