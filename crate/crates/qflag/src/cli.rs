//! The `qflag` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qflag_core::decomp::{bruhat, dieudonne_det, dress, iwasawa, leaf_signature};
use qflag_core::flags::{generic_leaf_point, leaf_dimension};
use qflag_core::hp1geom::Hp1;
use qflag_core::QMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::Config;
use crate::error::{Error, ExitCode, Result};
use crate::verify::{self, Suite};
use crate::wire::{parse_matrix, BruhatWire, IwasawaWire, MatrixWire, PermutationWire, SignatureWire};

/// Environment variable consulted when no seed is given.
pub const SEED_ENV: &str = "QFLAG_SEED";

#[derive(Debug, Parser)]
#[command(name = "qflag", version, about = "Quaternionic Bruhat decompositions, Bruhat 4-vector fields and their leaves")]
pub struct Cli {
    /// JSON configuration file (tolerances, seed, output_path).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DecompKind {
    Bruhat,
    Iwasawa,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose a square quaternionic matrix.
    Decompose {
        kind: DecompKind,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dieudonné determinant of a square matrix.
    Ddet {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dress K ∈ Sp(n) by G ∈ RU.
    Dress {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        k: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite; exits 0 iff every check passes.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Radial profile of the HP¹ field against the invariant field, as CSV.
    Profile {
        #[arg(long)]
        rho_min: f64,
        #[arg(long)]
        rho_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        directions: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A random point of the leaf of a reduced word, with its signature and
    /// numerical dimension.
    Leaf {
        /// Letters r of the adjacent transpositions s_r, e.g. "1 2 1".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{rendered}");
                ExitCode::Pass.code()
            } else {
                let _ = write!(stderr, "{rendered}");
                ExitCode::Usage.code()
            };
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code.code(),
        Err(e) => {
            let _ = writeln!(stderr, "qflag: {e}");
            e.exit_code().code()
        }
    }
}

fn read_matrix(path: &Path) -> Result<QMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display(), e))?;
    parse_matrix(&text)
}

fn resolve_seed(flag: Option<u64>, config: &Config) -> Result<u64> {
    if let Some(s) = flag.or(config.seed) {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn emit(bytes: &[u8], out: Option<&PathBuf>, config: &Config, stdout: &mut dyn Write) -> Result<()> {
    let target = out.cloned().or_else(|| config.output_path.as_ref().map(PathBuf::from));
    match target {
        Some(path) => std::fs::write(&path, bytes).map_err(|e| Error::io(path.display(), e)),
        None => stdout.write_all(bytes).map_err(|e| Error::io("stdout", e)),
    }
}

fn emit_json(value: &Value, out: Option<&PathBuf>, config: &Config, stdout: &mut dyn Write) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(text.as_bytes(), out, config, stdout)
}

fn with_fields(base: impl serde::Serialize, extra: Value) -> Result<Value> {
    let mut v = serde_json::to_value(base)?;
    if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
        map.extend(more);
    }
    Ok(v)
}

pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Usage(format!("bad word letter {t:?}"))))
        .collect()
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<ExitCode> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    match &cli.command {
        Command::Decompose { kind, input, out } => {
            let g = read_matrix(input)?;
            let value = match kind {
                DecompKind::Bruhat => {
                    let f = bruhat(&g)?;
                    let err = f.assemble().dist(&g);
                    with_fields(BruhatWire::from(&f), json!({"kind": "bruhat", "reconstruction_error": err}))?
                }
                DecompKind::Iwasawa => {
                    let f = iwasawa(&g)?;
                    let err = f.assemble().dist(&g);
                    with_fields(IwasawaWire::from(&f), json!({"kind": "iwasawa", "reconstruction_error": err}))?
                }
            };
            emit_json(&value, out.as_ref(), &config, stdout)?;
        }
        Command::Ddet { input, out } => {
            let g = read_matrix(input)?;
            emit_json(&json!({"kind": "ddet", "ddet": dieudonne_det(&g)?}), out.as_ref(), &config, stdout)?;
        }
        Command::Dress { g, k, out } => {
            let (g, k) = (read_matrix(g)?, read_matrix(k)?);
            let dressed = dress(&g, &k)?;
            let value = json!({
                "kind": "dress",
                "K": MatrixWire::from(&dressed),
                "signature": SignatureWire::from(&leaf_signature(&dressed)?),
            });
            emit_json(&value, out.as_ref(), &config, stdout)?;
        }
        Command::Verify { suite, n, seed, out } => {
            let seed = resolve_seed(*seed, &config)?;
            let report = verify::run(*suite, *n, seed, &config.tolerances())?;
            emit_json(&serde_json::to_value(&report)?, out.as_ref(), &config, stdout)?;
            if !report.passed {
                return Ok(ExitCode::MathFailure);
            }
        }
        Command::Profile { rho_min, rho_max, steps, directions, seed, out } => {
            let seed = resolve_seed(*seed, &config)?;
            let rows = Hp1::new().profile(*rho_min, *rho_max, *steps, *directions, seed).map_err(|e| match e {
                qflag_core::Error::BadRange(msg) => Error::Usage(msg.to_string()),
                other => other.into(),
            })?;
            let mut buf = Vec::new();
            crate::csv_out::write_profile(&mut buf, &rows)?;
            emit(&buf, out.as_ref(), &config, stdout)?;
        }
        Command::Leaf { word, n, seed, out } => {
            let seed = resolve_seed(*seed, &config)?;
            let word = parse_word(word)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (point, retries) = generic_leaf_point(&word, *n, &mut rng)?;
            let dimension = leaf_dimension(&word, *n, 1, &mut rng)?;
            let signature = leaf_signature(&point.matrix)?;
            let in_cell = signature.w == point.w;
            let value = json!({
                "kind": "leaf",
                "n": n,
                "word": word,
                "seed": seed,
                "w": PermutationWire::from(&point.w),
                "params": point.params.iter().map(|q| q.to_array()).collect::<Vec<_>>(),
                "matrix": MatrixWire::from(&point.matrix),
                "signature": SignatureWire::from(&signature),
                "dimension": dimension,
                "expected_dimension": 4 * word.len(),
                "retries": retries,
            });
            emit_json(&value, out.as_ref(), &config, stdout)?;
            if !in_cell || dimension != 4 * word.len() {
                return Ok(ExitCode::MathFailure);
            }
        }
    }
    Ok(ExitCode::Pass)
}
