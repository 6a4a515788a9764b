//! NEQR encoding: an intensity register entangled with a position register,
//! one deterministic intensity branch per position.

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::state::{apply_circuit, bitstring_index, StateVector};

/// Intensity register width for 8-bit grayscale.
pub const INTENSITY_BITS: usize = 8;

/// Amplitudes below this are treated as zero when reading a state back into
/// an image. Far above accumulated rounding, far below any real branch
/// weight 1/side.
const ZERO_AMPLITUDE: f64 = 1e-6;

/// Register map for an NEQR state over `q + 2n` qubits.
///
/// Intensity bit `i` sits on qubit `i` (least significant first), the x
/// coordinate on qubits `q..q+n` and the y coordinate on qubits
/// `q+n..q+2n`. Rendered most significant qubit first, a basis state reads
/// as the y bits, then the x bits, then the intensity bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NeqrLayout {
    n: usize,
    q: usize,
}

impl NeqrLayout {
    /// Grayscale layout (8 intensity bits) for a `side x side` image.
    pub fn for_side(side: usize) -> Result<Self> {
        if side < 2 || !side.is_power_of_two() {
            return Err(Error::InvalidImage(format!(
                "side must be a power of two of at least 2, got {side}"
            )));
        }
        Self::with_intensity_bits(side.trailing_zeros() as usize, INTENSITY_BITS)
    }

    /// Layout with a reduced intensity register.
    ///
    /// Grayscale images always use 8 intensity bits; narrower registers
    /// exist so oracle behavior can be brute-forced over every basis state
    /// in tests.
    pub fn with_intensity_bits(n: usize, q: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if !(1..=INTENSITY_BITS).contains(&q) {
            return Err(Error::InvalidArgument(format!(
                "q must be in 1..={INTENSITY_BITS}, got {q}"
            )));
        }
        let total = q + 2 * n;
        if total > MAX_QUBITS {
            return Err(Error::CapacityExceeded(format!(
                "{total} qubits needed, the simulator caps at {MAX_QUBITS}"
            )));
        }
        Ok(Self { n, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn side(&self) -> usize {
        1 << self.n
    }

    pub fn total_qubits(&self) -> usize {
        self.q + 2 * self.n
    }

    pub fn intensity_qubits(&self) -> std::ops::Range<usize> {
        0..self.q
    }

    pub fn x_qubits(&self) -> std::ops::Range<usize> {
        self.q..self.q + self.n
    }

    pub fn y_qubits(&self) -> std::ops::Range<usize> {
        self.q + self.n..self.q + 2 * self.n
    }

    /// Basis index of intensity `intensity` at position `(x, y)`.
    pub fn basis_index(&self, x: usize, y: usize, intensity: u8) -> usize {
        debug_assert!(x < self.side() && y < self.side());
        debug_assert!((intensity as usize) < (1 << self.q));
        (y << (self.q + self.n)) | (x << self.q) | intensity as usize
    }

    /// Splits a basis index into `(x, y, intensity)`.
    pub fn decode_index(&self, index: usize) -> (usize, usize, u8) {
        let position_mask = self.side() - 1;
        let intensity = (index & ((1 << self.q) - 1)) as u8;
        let x = (index >> self.q) & position_mask;
        let y = (index >> (self.q + self.n)) & position_mask;
        (x, y, intensity)
    }
}

/// Decodes a measured bitstring (most significant qubit first) into
/// `(x, y, intensity)`.
pub fn decode_outcome(bits: &str, layout: &NeqrLayout) -> Result<(usize, usize, u8)> {
    if bits.len() != layout.total_qubits() {
        return Err(Error::InvalidArgument(format!(
            "expected {} bits, got {}",
            layout.total_qubits(),
            bits.len()
        )));
    }
    Ok(layout.decode_index(bitstring_index(bits)?))
}

/// An image together with the circuit that prepares its NEQR state.
#[derive(Clone, Debug)]
pub struct PreparedImage {
    layout: NeqrLayout,
    circuit: Circuit,
    source: GrayImage,
}

impl PreparedImage {
    pub fn layout(&self) -> &NeqrLayout {
        &self.layout
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn source(&self) -> &GrayImage {
        &self.source
    }
}

/// Builds the NEQR preparation circuit for an image.
///
/// Hadamards put the position register into uniform superposition; each
/// nonzero pixel then sets its intensity bits through NOTs controlled on
/// the full position pattern, with X conjugation mapping zero position bits
/// onto the controls. A zero-valued pixel contributes no gates.
pub fn encode_neqr(image: &GrayImage) -> Result<PreparedImage> {
    let layout = NeqrLayout::for_side(image.side())?;
    let mut circuit = Circuit::new(layout.total_qubits())?;
    for qubit in layout.x_qubits().chain(layout.y_qubits()) {
        circuit.push(Gate::H(qubit))?;
    }

    let position_qubits: Vec<usize> = layout.x_qubits().chain(layout.y_qubits()).collect();
    for y in 0..image.side() {
        for x in 0..image.side() {
            let intensity = image.get(x, y);
            if intensity == 0 {
                continue;
            }
            let zero_conjugation: Vec<usize> = layout
                .x_qubits()
                .enumerate()
                .filter(|(bit, _)| (x >> bit) & 1 == 0)
                .map(|(_, qubit)| qubit)
                .chain(
                    layout
                        .y_qubits()
                        .enumerate()
                        .filter(|(bit, _)| (y >> bit) & 1 == 0)
                        .map(|(_, qubit)| qubit),
                )
                .collect();
            for &qubit in &zero_conjugation {
                circuit.push(Gate::X(qubit))?;
            }
            for bit in 0..layout.q() {
                if (intensity >> bit) & 1 == 1 {
                    circuit.push(Gate::Mcx {
                        controls: position_qubits.clone(),
                        target: bit,
                    })?;
                }
            }
            for &qubit in &zero_conjugation {
                circuit.push(Gate::X(qubit))?;
            }
        }
    }

    Ok(PreparedImage {
        layout,
        circuit,
        source: image.clone(),
    })
}

/// Runs the preparation circuit on `|0...0>`.
///
/// The result has exactly `side * side` nonzero amplitudes, each the real
/// value `1/side`.
pub fn prepare_state(prepared: &PreparedImage) -> StateVector {
    let zero = StateVector::new_basis_state(prepared.layout.total_qubits(), 0)
        .expect("layout fits the qubit cap");
    apply_circuit(&zero, &prepared.circuit).expect("matching register sizes")
}

/// Reads an NEQR state back into the image it encodes.
///
/// Every position must carry exactly one intensity branch above the zero
/// tolerance; anything else is not an NEQR state.
pub fn reconstruct_image(state: &StateVector, layout: &NeqrLayout) -> Result<GrayImage> {
    if state.qubit_count() != layout.total_qubits() {
        return Err(Error::InvalidArgument(format!(
            "state has {} qubits but the layout expects {}",
            state.qubit_count(),
            layout.total_qubits()
        )));
    }
    let side = layout.side();
    let mut pixels = vec![0u8; side * side];
    for y in 0..side {
        for x in 0..side {
            let mut branch: Option<u8> = None;
            for value in 0..(1usize << layout.q()) {
                let amplitude = state.amplitude(layout.basis_index(x, y, value as u8));
                if amplitude.norm() > ZERO_AMPLITUDE {
                    if branch.is_some() {
                        return Err(Error::NotAnNeqrState(format!(
                            "position ({x},{y}) has multiple intensity branches"
                        )));
                    }
                    branch = Some(value as u8);
                }
            }
            match branch {
                Some(value) => pixels[y * side + x] = value,
                None => {
                    return Err(Error::NotAnNeqrState(format!(
                        "position ({x},{y}) has no intensity branch"
                    )))
                }
            }
        }
    }
    GrayImage::new(side, pixels)
}

/// Builds the NEQR state directly from pixel data, without any circuit.
///
/// Test oracle for [`prepare_state`]; the two construction routes must
/// agree.
pub fn direct_neqr_state(image: &GrayImage) -> Result<StateVector> {
    let layout = NeqrLayout::for_side(image.side())?;
    let mut amplitudes = vec![Complex64::ZERO; 1 << layout.total_qubits()];
    let weight = 1.0 / image.side() as f64;
    for y in 0..image.side() {
        for x in 0..image.side() {
            amplitudes[layout.basis_index(x, y, image.get(x, y))] = Complex64::new(weight, 0.0);
        }
    }
    StateVector::from_amplitudes(amplitudes)
}
