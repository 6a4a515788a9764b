//! Netpbm PGM reading and writing, ASCII (P2) and binary (P5), maxval 255.
//!
//! The parser works on raw bytes and is safe on arbitrary untrusted input:
//! it never panics and never allocates more than the declared image size,
//! which is capped well above anything the simulator can encode.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Upper bound on the parsed image side. 4096 is already far beyond the
/// 24-qubit encoding cap; anything larger is treated as malformed.
const MAX_SIDE: usize = 4096;

/// Output flavor for [`save_pgm`] and [`write_pgm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgmFormat {
    /// Plain text `P2`.
    Ascii,
    /// Raw binary `P5`.
    Binary,
}

struct Scanner<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    /// Skips whitespace and `#` comments (which run to end of line).
    fn skip_separators(&mut self) {
        while self.pos < self.data.len() {
            let b = self.data[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    /// Reads the next whitespace-delimited token.
    fn token(&mut self) -> Result<&'a [u8]> {
        self.skip_separators();
        let start = self.pos;
        while self.pos < self.data.len() {
            let b = self.data[self.pos];
            if b.is_ascii_whitespace() || b == b'#' {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse("unexpected end of input".into()));
        }
        Ok(&self.data[start..self.pos])
    }

    /// Reads a decimal token no larger than `max`.
    fn number(&mut self, what: &str, max: usize) -> Result<usize> {
        let token = self.token()?;
        if token.is_empty() || token.len() > 7 || !token.iter().all(u8::is_ascii_digit) {
            return Err(Error::Parse(format!("bad {what} token")));
        }
        let mut value = 0usize;
        for &b in token {
            value = value * 10 + (b - b'0') as usize;
        }
        if value > max {
            return Err(Error::Parse(format!("{what} {value} exceeds {max}")));
        }
        Ok(value)
    }

    fn at_end_ignoring_separators(&mut self) -> bool {
        self.skip_separators();
        self.pos == self.data.len()
    }
}

/// Parses a P2 or P5 grayscale image from raw bytes.
///
/// The header must declare maxval 255 and the raster must be exactly the
/// declared size with nothing but whitespace or comments after it. Shape
/// problems (non-square, side not a power of two) report `InvalidImage`;
/// everything else malformed reports `Parse`.
pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut scanner = Scanner::new(bytes);
    let magic = scanner.token()?;
    let binary = match magic {
        b"P2" => false,
        b"P5" => true,
        _ => return Err(Error::Parse("not a P2 or P5 PGM file".into())),
    };

    let width = scanner.number("width", MAX_SIDE)?;
    let height = scanner.number("height", MAX_SIDE)?;
    if width != height {
        return Err(Error::InvalidImage(format!(
            "image must be square, got {width}x{height}"
        )));
    }
    if width < 2 || !width.is_power_of_two() {
        return Err(Error::InvalidImage(format!(
            "side must be a power of two of at least 2, got {width}"
        )));
    }
    let maxval = scanner.number("maxval", 65535)?;
    if maxval != 255 {
        return Err(Error::Parse(format!("maxval must be 255, got {maxval}")));
    }

    let count = width * height;
    let pixels = if binary {
        // A single whitespace byte separates the header from the raster.
        match bytes.get(scanner.pos) {
            Some(b) if b.is_ascii_whitespace() => scanner.pos += 1,
            _ => return Err(Error::Parse("missing raster separator".into())),
        }
        let raster = &bytes[scanner.pos..];
        if raster.len() < count {
            return Err(Error::Parse(format!(
                "raster truncated: expected {count} bytes, got {}",
                raster.len()
            )));
        }
        if raster.len() > count {
            return Err(Error::Parse("trailing data after raster".into()));
        }
        raster.to_vec()
    } else {
        let mut pixels = Vec::with_capacity(count);
        for _ in 0..count {
            pixels.push(scanner.number("pixel", 255)? as u8);
        }
        if !scanner.at_end_ignoring_separators() {
            return Err(Error::Parse("trailing data after raster".into()));
        }
        pixels
    };

    GrayImage::new(width, pixels)
}

/// Serializes an image as PGM bytes. Output is byte-deterministic per format.
pub fn write_pgm(image: &GrayImage, format: PgmFormat) -> Vec<u8> {
    let side = image.side();
    let mut out = Vec::new();
    match format {
        PgmFormat::Ascii => {
            out.extend_from_slice(format!("P2\n{side} {side}\n255\n").as_bytes());
            for row in image.pixels().chunks(side) {
                let line: Vec<String> = row.iter().map(u8::to_string).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
        PgmFormat::Binary => {
            out.extend_from_slice(format!("P5\n{side} {side}\n255\n").as_bytes());
            out.extend_from_slice(image.pixels());
        }
    }
    out
}

/// Reads and validates a PGM file.
pub fn load_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    parse_pgm(&fs::read(path)?)
}

/// Writes an image to disk; [`load_pgm`] restores it exactly.
pub fn save_pgm(image: &GrayImage, path: impl AsRef<Path>, format: PgmFormat) -> Result<()> {
    fs::write(path, write_pgm(image, format))?;
    Ok(())
}
