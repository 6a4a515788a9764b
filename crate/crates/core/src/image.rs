//! Classical grayscale images, the brute-force dark-pixel scan and the
//! query-complexity report.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grover::{iteration_count, DarkPixel, ThresholdConfig};

/// A square grayscale image whose side is a power of two.
///
/// Pixels are stored row major; intensity 0 is black and 255 is white.
/// `x` indexes columns and `y` indexes rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    side: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Wraps row-major pixel data. The side must be a power of two of at
    /// least 2 and the pixel count must be `side * side`.
    pub fn new(side: usize, pixels: Vec<u8>) -> Result<Self> {
        if side < 2 || !side.is_power_of_two() {
            return Err(Error::InvalidImage(format!(
                "side must be a power of two of at least 2, got {side}"
            )));
        }
        let expected = side
            .checked_mul(side)
            .ok_or_else(|| Error::InvalidImage(format!("side {side} overflows")))?;
        if pixels.len() != expected {
            return Err(Error::InvalidImage(format!(
                "expected {expected} pixels for side {side}, got {}",
                pixels.len()
            )));
        }
        Ok(Self { side, pixels })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// Bits per position coordinate: `side = 2^n`.
    pub fn position_bits(&self) -> usize {
        self.side.trailing_zeros() as usize
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    /// Intensity at column `x`, row `y`. Panics when out of bounds.
    pub fn get(&self, x: usize, y: usize) -> u8 {
        assert!(x < self.side && y < self.side, "pixel out of bounds");
        self.pixels[y * self.side + x]
    }
}

/// Lists every pixel strictly below the threshold, in row-major order.
///
/// This is the ground truth every quantum search mode is checked against.
pub fn classical_scan(image: &GrayImage, config: &ThresholdConfig) -> Vec<DarkPixel> {
    let mut dark = Vec::new();
    for y in 0..image.side() {
        for x in 0..image.side() {
            let intensity = image.get(x, y);
            if config.is_dark(intensity) {
                dark.push(DarkPixel { x, y, intensity });
            }
        }
    }
    dark
}

/// Query counts for one search instance, plus the scaling figures commonly
/// quoted for this scheme.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexityReport {
    /// Position bits per axis (image side is `2^n`).
    pub n: u32,
    /// Intensity bits.
    pub q: u32,
    /// Marked item count.
    pub marked: u64,
    /// Search space size `2^(q + 2n)`.
    pub search_space: u64,
    /// Oracle queries the planned Grover run makes.
    pub grover_queries: u64,
    /// Comparisons a classical scan makes: one per pixel, `2^(2n)`.
    pub classical_comparisons: u64,
    /// Quoted Grover scaling `2^n`. The quoted exponents use the image
    /// dimensions directly and do not match the counts above; they are
    /// echoed as published, not reconciled.
    pub quoted_grover_cost: u64,
    /// Quoted classical scaling `2^(2n + 2m)` with `m = n`.
    pub quoted_classical_cost: u64,
    /// Standing caveat attached to the two quoted figures.
    pub quoted_cost_note: String,
}

/// Builds a [`ComplexityReport`] for an `n`-bit-per-axis image with `q`
/// intensity bits and `marked` dark pixels.
pub fn complexity_report(n: u32, q: u32, marked: u64) -> Result<ComplexityReport> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if q < 1 {
        return Err(Error::InvalidArgument("q must be at least 1".into()));
    }
    let exponent = q as u64 + 2 * n as u64;
    if exponent > 62 || 4 * n as u64 > 62 {
        return Err(Error::InvalidArgument(format!(
            "register of {exponent} bits overflows the report arithmetic"
        )));
    }
    let search_space = 1u64 << exponent;
    if marked == 0 || marked > search_space {
        return Err(Error::InvalidArgument(format!(
            "marked count must be in 1..={search_space}, got {marked}"
        )));
    }
    Ok(ComplexityReport {
        n,
        q,
        marked,
        search_space,
        grover_queries: iteration_count(search_space, marked)?,
        classical_comparisons: 1u64 << (2 * n),
        quoted_grover_cost: 1u64 << n,
        quoted_classical_cost: 1u64 << (4 * n),
        quoted_cost_note: "quoted exponents mix per-axis and per-image dimension conventions; \
             values are echoed verbatim and are not comparable to the computed counts"
            .to_string(),
    })
}
