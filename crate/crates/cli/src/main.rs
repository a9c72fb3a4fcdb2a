//! `logflat`: command-line front end. Every subcommand reads one JSON input
//! (a path, `-` for stdin, or inline JSON), runs one check and emits a
//! certificate. Exit status: 0 affirmative, 1 negative, 2 malformed input.

mod commands;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "logflat", version, about = "Exact checks for logarithmic flat connections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the certificate as JSON instead of a report.
    #[arg(long, global = true)]
    json: bool,
    /// Re-verify results with independent oracles.
    #[arg(long, global = true)]
    oracle: bool,
    /// Seed for randomized oracle checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the certificate to this file.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Saito's criterion for a divisor and candidate logarithmic fields.
    SaitoCheck { input: String },
    /// Flatness of connection matrices in a Saito frame.
    FlatCheck { input: String },
    /// Multiplicative Jordan-Chevalley decomposition and residue data.
    Jc { input: String },
    /// Simultaneous splitting of Z-filtrations.
    SplitFiltrations { input: String },
    /// Birkhoff factorization of a Laurent transition matrix.
    Birkhoff { input: String },
    /// Equivariant splitting on a football orbifold.
    FootballSplit { input: String },
    /// Extend a chart-wise connection on C^2 minus the origin.
    Extend { input: String },
    /// Castling transforms of a prehomogeneous descriptor.
    Castle {
        input: String,
        /// Number of castling steps.
        #[arg(long, default_value_t = 1)]
        chain: usize,
    },
    /// Product of maximal minors of a generic (n-1) x n matrix.
    GenDivisor { n: usize },
    /// Residue representation with nontrivial residual SL(n-1) action.
    GenNonextendable {
        /// JSON `{"n": .., "psi": [matrices]}`; omit when using --preset.
        input: Option<String>,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Preset {
    Fundamental,
    Adjoint,
}

/// Result of one subcommand before it is wrapped into a certificate.
pub struct Report {
    pub verdict: &'static str,
    pub affirmative: bool,
    pub payload: Value,
    pub lines: Vec<String>,
}

/// Input that could not be used; always exit code 2.
#[derive(Debug)]
pub struct Malformed(pub String);

impl From<logflat_core::Error> for Malformed {
    fn from(e: logflat_core::Error) -> Self {
        Malformed(e.to_string())
    }
}

pub struct Input {
    pub name: String,
    pub bytes: Vec<u8>,
    pub value: Value,
}

fn read_input(arg: &str) -> Result<Input, Malformed> {
    let trimmed = arg.trim_start();
    let (name, bytes) = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        ("<inline>".to_string(), arg.as_bytes().to_vec())
    } else if arg == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| Malformed(format!("<stdin>: {e}")))?;
        ("<stdin>".to_string(), buf)
    } else {
        let bytes = std::fs::read(arg).map_err(|e| Malformed(format!("{arg}: {e}")))?;
        (arg.to_string(), bytes)
    };
    let value = serde_json::from_slice(&bytes)
        .map_err(|e| Malformed(format!("{name}:{}:{}: {e}", e.line(), e.column())))?;
    Ok(Input { name, bytes, value })
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub struct Options {
    pub oracle: bool,
    pub seed: u64,
}

fn dispatch(cmd: &Command, opts: &Options) -> Result<(&'static str, Vec<u8>, Report), Malformed> {
    let with_input = |name: &'static str, arg: &str, f: fn(&Input, &Options) -> Result<Report, Malformed>| {
        let input = read_input(arg)?;
        let report = f(&input, opts).map_err(|Malformed(m)| Malformed(format!("{}: {m}", input.name)))?;
        Ok((name, input.bytes, report))
    };
    match cmd {
        Command::SaitoCheck { input } => with_input("saito-check", input, commands::saito),
        Command::FlatCheck { input } => with_input("flat-check", input, commands::flat),
        Command::Jc { input } => with_input("jc", input, commands::jc),
        Command::SplitFiltrations { input } => with_input("split-filtrations", input, commands::split),
        Command::Birkhoff { input } => with_input("birkhoff", input, commands::birkhoff),
        Command::FootballSplit { input } => with_input("football-split", input, commands::football),
        Command::Extend { input } => with_input("extend", input, commands::extend),
        Command::Castle { input, chain } => {
            let inp = read_input(input)?;
            let report = commands::castle(&inp, *chain, opts)?;
            Ok(("castle", inp.bytes, report))
        }
        Command::GenDivisor { n } => {
            let report = commands::gen_divisor(*n, opts)?;
            Ok(("gen-divisor", n.to_string().into_bytes(), report))
        }
        Command::GenNonextendable { input, preset, n } => {
            let (bytes, value) = match (input, preset) {
                (Some(arg), None) => {
                    let inp = read_input(arg)?;
                    (inp.bytes, inp.value)
                }
                (None, Some(p)) => {
                    let v = commands::preset_psi(*p, *n);
                    (serde_json::to_vec(&v).expect("serializable"), v)
                }
                _ => return Err(Malformed("give exactly one of an input or --preset".into())),
            };
            let report = commands::gen_nonextendable(&value, opts)?;
            Ok(("gen-nonextendable", bytes, report))
        }
    }
}

pub fn certificate(command: &str, input: &[u8], report: &Report) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "verdict": report.verdict,
        "payload": report.payload,
        "inputDigest": digest(input),
        "toolVersion": env!("CARGO_PKG_VERSION"),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options { oracle: cli.oracle, seed: cli.seed };
    let (name, bytes, report) = match dispatch(&cli.command, &opts) {
        Ok(r) => r,
        Err(Malformed(msg)) => {
            if cli.json {
                println!("{}", json!({"schema": SCHEMA, "verdict": "malformed", "error": msg}));
            }
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cert = certificate(name, &bytes, &report);
    if let Some(path) = &cli.output {
        let text = serde_json::to_string_pretty(&cert).expect("serializable") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        println!("{cert}");
    } else {
        println!("{name}: {}", report.verdict);
        for line in &report.lines {
            println!("  {line}");
        }
    }
    ExitCode::from(if report.affirmative { 0 } else { 1 })
}
