//! Command line front end: NEQR encoding with OpenQASM and state export,
//! the three dark-pixel search procedures, the classical baseline and the
//! query-complexity report. All sampling subcommands take an explicit seed
//! so identical invocations produce identical payloads.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chrono::{SecondsFormat, Utc};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use neqr_grover::{
    bitstring, circuit_to_qasm, classical_scan, complexity_report, encode_neqr, iteration_count,
    load_pgm, prepare_state, run_search, run_semiclassical_search, ComplexityReport, DarkPixel,
    Error, GrayImage, GroverPlan, SearchMode, SearchResult, ThresholdConfig,
};

/// Version tag for every JSON payload this tool writes.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "neqr-grover",
    version,
    about = "Encode grayscale images as NEQR states and locate dark pixels with Grover search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode an image and export its preparation circuit and exact state.
    Encode {
        /// Square power-of-two PGM image (P2 or P5, maxval 255).
        #[arg(long)]
        image: PathBuf,
        /// Write the preparation circuit as OpenQASM 2.0.
        #[arg(long)]
        qasm: Option<PathBuf>,
        /// Write the nonzero amplitudes of the prepared state as JSON.
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Run a quantum search for pixels below the threshold.
    Search {
        #[arg(long)]
        image: PathBuf,
        /// Darkness threshold in 0..=256; a pixel is dark iff intensity < threshold.
        #[arg(long)]
        threshold: u16,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Measurement shots for the sampled histogram.
        #[arg(long)]
        shots: u64,
        /// Sampling seed; identical seeds reproduce payloads bit for bit.
        #[arg(long)]
        seed: u64,
        /// JSON result path. A CSV histogram lands next to it unless --csv
        /// points elsewhere.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Per-pixel search: one small Grover run per dark pixel.
    Semiclassical {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        threshold: u16,
        #[arg(long)]
        seed: u64,
        /// Optional JSON summary path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classical baseline scan, same output shape as semiclassical.
    Scan {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        threshold: u16,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the query-complexity report as JSON.
    Report {
        /// Position bits per axis (side = 2^n).
        #[arg(long)]
        n: u32,
        /// Intensity bits.
        #[arg(long)]
        q: u32,
        /// Marked item count.
        #[arg(long)]
        marked: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Paper,
    Amplitude,
}

impl From<ModeArg> for SearchMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Paper => SearchMode::Paper,
            ModeArg::Amplitude => SearchMode::Amplitude,
        }
    }
}

/// Invocation record embedded in every JSON payload.
#[derive(Clone, Debug, Serialize)]
struct RunManifest {
    command: String,
    image: Option<String>,
    threshold: Option<u16>,
    mode: Option<String>,
    shots: Option<u64>,
    seed: Option<u64>,
    version: String,
    timestamp: String,
}

impl RunManifest {
    fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            image: None,
            threshold: None,
            mode: None,
            shots: None,
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
        }
    }

    fn with_image(mut self, image: &Path) -> Self {
        self.image = Some(image.display().to_string());
        self
    }
}

#[derive(Serialize)]
struct StatePayload {
    schema_version: u32,
    manifest: RunManifest,
    side: usize,
    layout: LayoutPayload,
    amplitudes: Vec<AmplitudeEntry>,
}

#[derive(Serialize)]
struct LayoutPayload {
    n: usize,
    q: usize,
    total_qubits: usize,
}

#[derive(Serialize)]
struct AmplitudeEntry {
    index: usize,
    bitstring: String,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct SearchPayload {
    schema_version: u32,
    manifest: RunManifest,
    result: SearchResult,
}

#[derive(Serialize)]
struct PixelListPayload {
    schema_version: u32,
    manifest: RunManifest,
    threshold: u16,
    plan: Option<GroverPlan>,
    pixels: Vec<DarkPixel>,
}

#[derive(Serialize)]
struct ReportPayload {
    schema_version: u32,
    manifest: RunManifest,
    report: ComplexityReport,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// Exit codes: 1 for bad arguments, 2 for unreadable or malformed input,
/// 3 for capacity limits and empty searches.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) => 1,
        Error::InvalidImage(_) | Error::Parse(_) | Error::Io(_) | Error::NotAnNeqrState(_) => 2,
        Error::CapacityExceeded(_) | Error::NoMarkedItems(_) => 3,
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Encode { image, qasm, state } => encode_command(&image, qasm, state),
        Command::Search {
            image,
            threshold,
            mode,
            shots,
            seed,
            out,
            csv,
        } => search_command(&image, threshold, mode, shots, seed, &out, csv),
        Command::Semiclassical {
            image,
            threshold,
            seed,
            out,
        } => semiclassical_command(&image, threshold, seed, out),
        Command::Scan {
            image,
            threshold,
            out,
        } => scan_command(&image, threshold, out),
        Command::Report { n, q, marked } => report_command(n, q, marked),
    }
}

fn write_json<T: Serialize>(path: &Path, payload: &T) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(payload)
        .map_err(|e| Error::InvalidArgument(format!("serialization failed: {e}")))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn encode_command(
    image_path: &Path,
    qasm: Option<PathBuf>,
    state: Option<PathBuf>,
) -> Result<(), Error> {
    let image = load_pgm(image_path)?;
    let prepared = encode_neqr(&image)?;

    if let Some(path) = &qasm {
        std::fs::write(path, circuit_to_qasm(prepared.circuit()))?;
    }
    if let Some(path) = &state {
        let state_vector = prepare_state(&prepared);
        let layout = prepared.layout();
        let amplitudes: Vec<AmplitudeEntry> = state_vector
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 1e-12)
            .map(|(index, a)| AmplitudeEntry {
                index,
                bitstring: bitstring(index, layout.total_qubits()),
                re: a.re,
                im: a.im,
            })
            .collect();
        let payload = StatePayload {
            schema_version: SCHEMA_VERSION,
            manifest: RunManifest::new("encode").with_image(image_path),
            side: image.side(),
            layout: LayoutPayload {
                n: layout.n(),
                q: layout.q(),
                total_qubits: layout.total_qubits(),
            },
            amplitudes,
        };
        write_json(path, &payload)?;
    }
    if qasm.is_none() && state.is_none() {
        // Nothing to write; still validate and acknowledge on stdout.
        println!(
            "encoded {}x{} image into {} qubits ({} gates)",
            image.side(),
            image.side(),
            prepared.layout().total_qubits(),
            prepared.circuit().len()
        );
    }
    Ok(())
}

fn search_command(
    image_path: &Path,
    threshold: u16,
    mode: ModeArg,
    shots: u64,
    seed: u64,
    out: &Path,
    csv: Option<PathBuf>,
) -> Result<(), Error> {
    let image = load_pgm(image_path)?;
    let config = ThresholdConfig::new(threshold)?;
    let result = run_search(&image, &config, mode.into(), shots, seed)?;

    let mut manifest = RunManifest::new("search").with_image(image_path);
    manifest.threshold = Some(threshold);
    manifest.mode = Some(
        match mode {
            ModeArg::Paper => "paper",
            ModeArg::Amplitude => "amplitude",
        }
        .to_string(),
    );
    manifest.shots = Some(shots);
    manifest.seed = Some(seed);

    let csv_path = csv.unwrap_or_else(|| out.with_extension("csv"));
    let mut csv_text = String::from("bitstring,x,y,intensity,exact_probability,count\n");
    for outcome in &result.outcomes {
        csv_text.push_str(&format!(
            "{},{},{},{},{},{}\n",
            outcome.bitstring,
            outcome.x,
            outcome.y,
            outcome.intensity,
            outcome.exact_probability,
            outcome.sampled_count
        ));
    }
    std::fs::write(&csv_path, csv_text)?;

    let payload = SearchPayload {
        schema_version: SCHEMA_VERSION,
        manifest,
        result,
    };
    write_json(out, &payload)?;
    Ok(())
}

fn semiclassical_command(
    image_path: &Path,
    threshold: u16,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<(), Error> {
    let image = load_pgm(image_path)?;
    let config = ThresholdConfig::new(threshold)?;
    let pixels = run_semiclassical_search(&image, &config, seed)?;
    for pixel in &pixels {
        println!("{} {}", pixel.x, pixel.y);
    }
    if let Some(path) = out {
        let mut manifest = RunManifest::new("semiclassical").with_image(image_path);
        manifest.threshold = Some(threshold);
        manifest.seed = Some(seed);
        let payload = PixelListPayload {
            schema_version: SCHEMA_VERSION,
            manifest,
            threshold,
            plan: Some(per_pixel_plan(&image, pixels.len() as u64)?),
            pixels,
        };
        write_json(&path, &payload)?;
    }
    Ok(())
}

/// Plan describing each per-pixel run: a position-only search space with a
/// single marked item.
fn per_pixel_plan(image: &GrayImage, marked_count: u64) -> Result<GroverPlan, Error> {
    let positions = (image.side() * image.side()) as u64;
    let iterations = if marked_count == 0 {
        0
    } else {
        iteration_count(positions, 1)?
    };
    Ok(GroverPlan {
        mode: SearchMode::Semiclassical,
        search_space_size: positions,
        marked_count,
        iterations,
    })
}

fn scan_command(image_path: &Path, threshold: u16, out: Option<PathBuf>) -> Result<(), Error> {
    let image = load_pgm(image_path)?;
    let config = ThresholdConfig::new(threshold)?;
    let pixels = classical_scan(&image, &config);
    for pixel in &pixels {
        println!("{} {}", pixel.x, pixel.y);
    }
    if let Some(path) = out {
        let mut manifest = RunManifest::new("scan").with_image(image_path);
        manifest.threshold = Some(threshold);
        let payload = PixelListPayload {
            schema_version: SCHEMA_VERSION,
            manifest,
            threshold,
            plan: None,
            pixels,
        };
        write_json(&path, &payload)?;
    }
    Ok(())
}

fn report_command(n: u32, q: u32, marked: u64) -> Result<(), Error> {
    let report = complexity_report(n, q, marked)?;
    let payload = ReportPayload {
        schema_version: SCHEMA_VERSION,
        manifest: RunManifest::new("report"),
        report,
    };
    let text = serde_json::to_string_pretty(&payload)
        .map_err(|e| Error::InvalidArgument(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}
