//! Exact statevector tooling for locating dark pixels in small grayscale
//! images with Grover-style search.
//!
//! The pipeline: a square power-of-two image is encoded as an NEQR state
//! (an intensity register entangled with a position register), a phase
//! oracle marks basis states whose intensity falls below a threshold, and
//! amplitude amplification boosts the marked states before measurement.
//! Three procedures are provided: a uniform-start search for the exact dark
//! bitstrings, amplitude amplification on the NEQR state itself, and a
//! semiclassical per-pixel run over the position register alone.
//!
//! Conventions used throughout: qubit 0 is the least significant bit of a
//! basis index, bitstrings render the most significant qubit first, and
//! states are compared up to a global phase.

pub mod circuit;
pub mod error;
pub mod grover;
pub mod image;
pub mod neqr;
pub mod pgm;
pub mod qasm;
pub mod state;

pub use circuit::{Circuit, Gate, MAX_QUBITS};
pub use error::{Error, Result};
pub use grover::{
    build_bitstring_oracle, build_diffuser_about, build_diffuser_uniform,
    build_semiclassical_circuit, build_threshold_oracle, iteration_count, run_search,
    run_semiclassical_search, success_probability, DarkPixel, GroverPlan, RankedOutcome,
    SearchMode, SearchResult, ThresholdConfig,
};
pub use image::{classical_scan, complexity_report, ComplexityReport, GrayImage};
pub use neqr::{
    decode_outcome, encode_neqr, prepare_state, reconstruct_image, NeqrLayout, PreparedImage,
    INTENSITY_BITS,
};
pub use pgm::{load_pgm, parse_pgm, save_pgm, write_pgm, PgmFormat};
pub use qasm::{circuit_to_qasm, parse_qasm};
pub use state::{apply_circuit, bitstring, bitstring_index, Histogram, StateVector};
