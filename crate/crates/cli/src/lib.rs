//! Command-line front end for the `ncomplex` library.
//!
//! Every subcommand reads JSON documents, writes JSON to stdout and
//! returns an exit code: 0 when the computation succeeded with a positive
//! answer, 1 for a negative decision (the output then carries a `reason`),
//! 2 for malformed input or usage errors (message on stderr).

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncomplex::contractible::{disk_decomposition, factor_through_contractible, is_contractible};
use ncomplex::homology::{first_nonexact, homology, homology_table, induced_homology_map};
use ncomplex::homotopy::find_homotopy;
use ncomplex::io;
use ncomplex::model::{
    classify_map, factor_cof_trivfib, factor_trivcof_fib, is_homotopy_equivalence, loop_complex, mapping_cokernel,
    suspension,
};
use ncomplex::{ChainMap, Error, NComplex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ncomplex",
    version,
    about = "Exact computations with N-complexes over F_p and Q"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check shapes, field membership and d^N = 0.
    Validate { file: PathBuf },
    /// Amplitude homology dimensions.
    Homology {
        file: PathBuf,
        /// Only this degree.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
        /// Only this amplitude (1..N-1).
        #[arg(long)]
        amplitude: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Whether every amplitude homology vanishes.
    Exact { file: PathBuf },
    /// Decide f ~ g and print a homotopy.
    Homotopic { f: PathBuf, g: PathBuf },
    /// Decide f ~ 0 and print a homotopy.
    Nullhomotopic { f: PathBuf },
    /// Decide contractibility and print a contracting homotopy.
    Contractible { file: PathBuf },
    /// Decompose a contractible complex into disks.
    Decompose { file: PathBuf },
    /// Factor g - f through a contractible complex.
    FactorThrough { f: PathBuf, g: PathBuf },
    /// The loop complex.
    Loop { file: PathBuf },
    /// The suspension.
    Suspend { file: PathBuf },
    /// Cofibration / fibration / weak equivalence flags of a map.
    Classify { map: PathBuf },
    /// Factor a map in the model structure.
    Factorize {
        map: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Decide whether a map is a chain homotopy equivalence.
    Hoequiv { map: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Cofibration followed by a trivial fibration.
    CofTrivfib,
    /// Trivial cofibration followed by a fibration.
    TrivcofFib,
}

/// What a command produced before it is written out.
enum Outcome {
    Positive(Value),
    Negative(Value),
    Text(String),
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let (text, code) = match execute(&cli.command) {
        Ok(Outcome::Positive(v)) => (io::to_pretty(&v), EXIT_OK),
        Ok(Outcome::Negative(v)) => (io::to_pretty(&v), EXIT_NEGATIVE),
        Ok(Outcome::Text(s)) => (s, EXIT_OK),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_USAGE;
    }
    code
}

fn complex(path: &Path) -> Result<NComplex, Error> {
    io::load_complex(path)
}

fn map(path: &Path) -> Result<ChainMap, Error> {
    io::load_map(path)
}

fn parallel(f: &ChainMap, g: &ChainMap) -> Result<(), Error> {
    if f.is_parallel(g) {
        Ok(())
    } else {
        Err(Error::Validation("maps must share source and target".into()))
    }
}

fn degree_amplitude(n: i64, t: usize) -> Value {
    json!({"degree": n, "amplitude": t})
}

/// First `(n, t)` at which `f` and `g` induce different maps on homology.
fn homology_disagreement(f: &ChainMap, g: &ChainMap) -> Result<Option<(i64, usize)>, Error> {
    let degrees = f
        .source()
        .degrees()
        .chain(f.target().degrees())
        .collect::<BTreeSet<_>>();
    for n in degrees {
        for t in 1..f.order() {
            if induced_homology_map(f, n, t)? != induced_homology_map(g, n, t)? {
                return Ok(Some((n, t)));
            }
        }
    }
    Ok(None)
}

fn homotopy_outcome(f: &ChainMap, g: &ChainMap) -> Result<Outcome, Error> {
    if let Some(s) = find_homotopy(f, g)? {
        return Ok(Outcome::Positive(
            json!({"homotopic": true, "homotopy": io::homotopy_to_value(&s)}),
        ));
    }
    Ok(Outcome::Negative(match homology_disagreement(f, g)? {
        Some((n, t)) => json!({
            "homotopic": false,
            "reason": "induced maps on homology differ",
            "witness": degree_amplitude(n, t),
        }),
        None => json!({"homotopic": false, "reason": "no witness exists"}),
    }))
}

fn not_contractible(x: &NComplex) -> Value {
    match first_nonexact(x) {
        Some((n, t)) => json!({
            "contractible": false,
            "reason": "homology is nonzero",
            "witness": degree_amplitude(n, t),
        }),
        None => json!({"contractible": false, "reason": "no witness exists"}),
    }
}

fn execute(cmd: &Command) -> Result<Outcome, Error> {
    Ok(match cmd {
        Command::Validate { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            match io::parse_complex(&text) {
                Ok(x) => Outcome::Positive(json!({
                    "valid": true,
                    "N": x.order(),
                    "field": io::field_to_value(x.field()),
                    "total_dim": x.total_dim(),
                })),
                Err(Error::NotAnNComplex(bad)) => Outcome::Negative(json!({
                    "valid": false,
                    "reason": "d^N is nonzero",
                    "degrees": bad,
                })),
                Err(e) => return Err(e),
            }
        }
        Command::Homology {
            file,
            degree,
            amplitude,
            format,
        } => {
            let x = complex(file)?;
            let amps: Vec<usize> = match amplitude {
                Some(t) => vec![*t],
                None => (1..x.order()).collect(),
            };
            let table: BTreeMap<(i64, usize), usize> = match degree {
                None if amplitude.is_none() => homology_table(&x)?,
                _ => {
                    let degrees: Vec<i64> = match degree {
                        Some(n) => vec![*n],
                        None => x.degrees().collect(),
                    };
                    let mut table = BTreeMap::new();
                    for &n in &degrees {
                        for &t in &amps {
                            table.insert((n, t), homology(&x, n, t)?.dim);
                        }
                    }
                    table
                }
            };
            match format {
                Format::Json => Outcome::Positive(json!({
                    "N": x.order(),
                    "homology": io::homology_table_to_value(&table),
                })),
                Format::Table => Outcome::Text(io::homology_table_text(&table)),
            }
        }
        Command::Exact { file } => {
            let x = complex(file)?;
            match first_nonexact(&x) {
                None => Outcome::Positive(json!({"exact": true})),
                Some((n, t)) => Outcome::Negative(json!({
                    "exact": false,
                    "reason": "homology is nonzero",
                    "witness": degree_amplitude(n, t),
                })),
            }
        }
        Command::Homotopic { f, g } => {
            let (f, g) = (map(f)?, map(g)?);
            parallel(&f, &g)?;
            homotopy_outcome(&f, &g)?
        }
        Command::Nullhomotopic { f } => {
            let f = map(f)?;
            let zero = ChainMap::zero(f.source(), f.target())?;
            homotopy_outcome(&zero, &f)?
        }
        Command::Contractible { file } => {
            let x = complex(file)?;
            let id = ChainMap::identity(&x);
            let zero = ChainMap::zero(&x, &x)?;
            match find_homotopy(&zero, &id)? {
                Some(s) => Outcome::Positive(json!({
                    "contractible": true,
                    "homotopy": io::homotopy_to_value(&s),
                })),
                None => Outcome::Negative(not_contractible(&x)),
            }
        }
        Command::Decompose { file } => {
            let x = complex(file)?;
            if is_contractible(&x) {
                Outcome::Positive(io::decomposition_to_value(&disk_decomposition(&x)?))
            } else {
                Outcome::Negative(not_contractible(&x))
            }
        }
        Command::FactorThrough { f, g } => {
            let (f, g) = (map(f)?, map(g)?);
            parallel(&f, &g)?;
            match factor_through_contractible(&f, &g)? {
                Some(fac) => Outcome::Positive(io::factorization_to_value(&fac)),
                None => match homotopy_outcome(&f, &g)? {
                    Outcome::Negative(v) => Outcome::Negative(v),
                    _ => return Err(Error::Invariant("homotopic maps failed to factor".into())),
                },
            }
        }
        Command::Loop { file } => Outcome::Positive(io::complex_to_value(&loop_complex(&complex(file)?)?)),
        Command::Suspend { file } => Outcome::Positive(io::complex_to_value(&suspension(&complex(file)?)?)),
        Command::Classify { map: path } => {
            let c = classify_map(&map(path)?)?;
            Outcome::Positive(serde_json::to_value(c).expect("plain JSON"))
        }
        Command::Factorize { map: path, mode } => {
            let f = map(path)?;
            let fac = match mode {
                Mode::CofTrivfib => factor_cof_trivfib(&f)?,
                Mode::TrivcofFib => factor_trivcof_fib(&f)?,
            };
            Outcome::Positive(io::model_factorization_to_value(&fac))
        }
        Command::Hoequiv { map: path } => {
            let f = map(path)?;
            if is_homotopy_equivalence(&f)? {
                Outcome::Positive(json!({"homotopy_equivalence": true}))
            } else {
                Outcome::Negative(not_an_equivalence(&f)?)
            }
        }
    })
}

fn not_an_equivalence(f: &ChainMap) -> Result<Value, Error> {
    let (x, y) = (f.source(), f.target());
    let degrees = x.degrees().chain(y.degrees()).collect::<BTreeSet<_>>();
    for n in degrees {
        for t in 1..f.order() {
            let m = induced_homology_map(f, n, t)?;
            if m.rows() != m.cols() || m.rank() < m.rows() {
                return Ok(json!({
                    "homotopy_equivalence": false,
                    "reason": "induced map on homology is not an isomorphism",
                    "witness": degree_amplitude(n, t),
                }));
            }
        }
    }
    let reason = match first_nonexact(&mapping_cokernel(f)?) {
        Some((n, t)) => json!({
            "homotopy_equivalence": false,
            "reason": "mapping cokernel is not exact",
            "witness": degree_amplitude(n, t),
        }),
        None => json!({"homotopy_equivalence": false, "reason": "no witness exists"}),
    };
    Ok(reason)
}
