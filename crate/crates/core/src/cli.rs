// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. Exit codes: 0 ok, 2 parse, 3 precondition,
//! 4 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::bounds::{bounds_report, exhaustive_min_depth};
use crate::circuit::{
    parse_circuit, parse_tableau, serialize_circuit, to_tableau, validate_layer,
    CircuitError, CliffordTableau, LayeredCircuit, CIRCUIT_HEADER,
};
use crate::cliffsynth::synth_clifford;
use crate::gf2::{parse_matrix, BinMatrix, BinVector, Gf2Error};
use crate::linsynth::synth_linear;
use crate::prefixsynth::{prefix_matrix, synth_prefix};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

fn precondition(e: impl std::fmt::Display) -> CliError {
    CliError::Precondition(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "ccdepth", version, about = "Commuting-layer circuit synthesis and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Synthesize a circuit and verify it before writing.
    #[command(subcommand)]
    Synth(SynthKind),
    /// Check that a circuit's layers commute and that it implements a target.
    Verify(VerifyArgs),
    /// Print depth, sizes and a per-layer table.
    Analyze {
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Evaluate the counting bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, requires = "d")]
        s: Option<usize>,
    },
    /// Minimum commutative depth histogram over GL(n, 2), n <= 4.
    SearchDepth {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SynthKind {
    /// Prefix-sum circuit on n qubits.
    Prefix {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// CNOT circuit for an invertible matrix.
    Linear {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        common: SynthCommon,
    },
    /// Clifford circuit for a tableau.
    Clifford {
        #[arg(long)]
        tableau: PathBuf,
        #[command(flatten)]
        common: SynthCommon,
    },
}

#[derive(Args, Debug)]
pub struct SynthCommon {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Add one idle qubit when the width is odd.
    #[arg(long)]
    pad: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "target")]
pub struct VerifyTarget {
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    tableau: Option<PathBuf>,
    /// The prefix-sum matrix on this many qubits.
    #[arg(long)]
    prefix: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[command(flatten)]
    target: VerifyTarget,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<BinMatrix, CliError> {
    parse_matrix(&read(path)?).map_err(|e| match e {
        Gf2Error::Parse { .. } => CliError::Parse(format!("{}: {e}", path.display())),
        other => precondition(other),
    })
}

// malformed and non-symplectic inputs are both rejected at parse time
fn circuit_err(path: &Path, e: CircuitError) -> CliError {
    CliError::Parse(format!("{}: {e}", path.display()))
}

fn read_tableau(path: &Path) -> Result<CliffordTableau, CliError> {
    parse_tableau(&read(path)?).map_err(|e| circuit_err(path, e))
}

fn read_circuit(path: &Path) -> Result<LayeredCircuit, CliError> {
    parse_circuit(&read(path)?).map_err(|e| circuit_err(path, e))
}

/// `t` on `n` qubits, extended by one idle qubit.
pub fn pad_tableau(t: &CliffordTableau) -> CliffordTableau {
    let n = t.width();
    let sym = t.symplectic();
    // index in the 2n layout -> index in the 2(n+1) layout
    let map = |i: usize| if i < n { i } else { i + 1 };
    let mut out = BinMatrix::zeros(2 * n + 2, 2 * n + 2);
    let mut signs = BinVector::zeros(2 * n + 2);
    for r in 0..2 * n {
        for c in 0..2 * n {
            out.set(map(r), map(c), sym.get(r, c));
        }
        signs.set(map(r), t.signs().get(r));
    }
    out.set(n, n, true);
    out.set(2 * n + 1, 2 * n + 1, true);
    CliffordTableau::from_parts(&out, &signs).expect("padding keeps the tableau symplectic")
}

fn layers_valid(c: &LayeredCircuit) -> Result<(), CliError> {
    match c.layers().iter().position(|l| !validate_layer(l)) {
        Some(i) => Err(CliError::Verification(format!("layer violation: layer {i} has non-commuting gates"))),
        None => Ok(()),
    }
}

fn check_semantics(c: &LayeredCircuit, target: &CliffordTableau) -> Result<(), CliError> {
    if c.width() != target.width() {
        return Err(CliError::Verification(format!(
            "width mismatch: circuit has {} qubits, target {}",
            c.width(),
            target.width()
        )));
    }
    if to_tableau(c) != *target {
        return Err(CliError::Verification("semantic mismatch: circuit does not implement the target".into()));
    }
    Ok(())
}

fn metrics(c: &LayeredCircuit) -> String {
    let (two, total) = c.size();
    format!(
        "width={}\ncommutative_depth={}\ntwo_qubit_size={two}\ntotal_size={total}\n",
        c.width(),
        c.depth()
    )
}

/// Circuit text with a provenance header naming the command that produced it.
pub fn with_provenance(c: &LayeredCircuit, command: &str, seed: u64) -> String {
    let body = serialize_circuit(c);
    let rest = body.strip_prefix(CIRCUIT_HEADER).unwrap_or(&body);
    format!(
        "{CIRCUIT_HEADER}\n# tool: ccdepth {}\n# command: {command}\n# seed: {seed}{rest}",
        env!("CARGO_PKG_VERSION")
    )
}

fn emit(
    out: &mut dyn Write,
    circuit: &LayeredCircuit,
    command: &str,
    seed: u64,
    report: &str,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let text = with_provenance(circuit, command, seed);
    let io = |e: std::io::Error| precondition(format!("cannot write output: {e}"));
    match output {
        Some(path) => {
            fs::write(path, text).map_err(io)?;
            out.write_all(report.as_bytes()).map_err(io)
        }
        None => {
            out.write_all(text.as_bytes()).map_err(io)?;
            eprint!("{report}");
            Ok(())
        }
    }
}

fn synth(kind: SynthKind, out: &mut dyn Write) -> Result<(), CliError> {
    let (circuit, target, command, seed, output, label, padded) = match kind {
        SynthKind::Prefix { n, output } => {
            let c = synth_prefix(n).map_err(precondition)?;
            let t = CliffordTableau::from_linear(&prefix_matrix(n)).map_err(precondition)?;
            (c, t, format!("synth prefix --n {n}"), 0, output, "prefix", false)
        }
        SynthKind::Linear { matrix, common } => {
            let mut m = read_matrix(&matrix)?;
            if !m.is_square() {
                return Err(precondition(format!("matrix is {}x{}, expected square", m.rows(), m.cols())));
            }
            let pad = common.pad && m.rows() % 2 == 1;
            if pad {
                m = BinMatrix::direct_sum(&m, &BinMatrix::identity(1));
            }
            let c = synth_linear(&m, common.seed).map_err(precondition)?;
            let t = CliffordTableau::from_linear(&m).map_err(precondition)?;
            let cmd = format!(
                "synth linear --matrix {} --seed {}{}",
                matrix.display(),
                common.seed,
                if common.pad { " --pad" } else { "" }
            );
            (c, t, cmd, common.seed, common.output, "linear", pad)
        }
        SynthKind::Clifford { tableau, common } => {
            let mut t = read_tableau(&tableau)?;
            let pad = common.pad && t.width() % 2 == 1;
            if pad {
                t = pad_tableau(&t);
            }
            let c = synth_clifford(&t, common.seed).map_err(precondition)?;
            let cmd = format!(
                "synth clifford --tableau {} --seed {}{}",
                tableau.display(),
                common.seed,
                if common.pad { " --pad" } else { "" }
            );
            (c, t, cmd, common.seed, common.output, "clifford", pad)
        }
    };
    layers_valid(&circuit)?;
    check_semantics(&circuit, &target)?;
    let report = format!(
        "kind={label}\n{}verified=true\npadded={padded}\nseed={seed}\n",
        metrics(&circuit)
    );
    emit(out, &circuit, &command, seed, &report, output.as_deref())
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let c = read_circuit(&args.circuit)?;
    let target = match (args.target.matrix, args.target.tableau, args.target.prefix) {
        (Some(path), _, _) => CliffordTableau::from_linear(&read_matrix(&path)?).map_err(precondition)?,
        (_, Some(path), _) => read_tableau(&path)?,
        (_, _, Some(n)) => CliffordTableau::from_linear(&prefix_matrix(n)).map_err(precondition)?,
        _ => return Err(precondition("no verification target")),
    };
    layers_valid(&c)?;
    check_semantics(&c, &target)?;
    write!(out, "{}verified=true\n", metrics(&c)).map_err(precondition)
}

fn analyze(path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let c = read_circuit(path)?;
    let mut s = metrics(&c);
    let n = c.width();
    if n >= 2 {
        let (two, _) = c.size();
        let ratio = two as f64 / (n as f64 * (n as f64).log2());
        s.push_str(&format!("size_ratio={ratio:.4}\n"));
    }
    s.push_str(&format!("cnot_only={}\n", c.is_cnot_only()));
    s.push_str(&format!("layers_valid={}\n", c.layers().iter().all(validate_layer)));
    for (i, layer) in c.layers().iter().enumerate() {
        let two = layer.gates.iter().filter(|g| g.is_two_qubit()).count();
        s.push_str(&format!(
            "layer={i} gates={} two_qubit={two} commuting={}\n",
            layer.len(),
            validate_layer(layer)
        ));
    }
    out.write_all(s.as_bytes()).map_err(precondition)
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Synth(kind) => synth(kind, out),
        Command::Verify(args) => verify(args, out),
        Command::Analyze { circuit } => analyze(&circuit, out),
        Command::Bounds { n, d, s } => {
            let report = bounds_report(n, d, s).map_err(precondition)?;
            write!(out, "{report}").map_err(precondition)
        }
        Command::SearchDepth { n } => {
            let h = exhaustive_min_depth(n).map_err(precondition)?;
            write!(out, "{h}").map_err(precondition)
        }
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
