//! The `noneq` command line.
//!
//! Exit codes: 0 success, 1 a negative answer (not primitive, no root,
//! pattern mismatch, decomposition found), 2 usage or input errors, 3 an
//! undecided witness cell.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use noneq_core::bass_serre::{ActionClass, BassSerreTree, FixedSet, TreeError};
use noneq_core::criterion::{conclusion, matches_pattern, CriterionError, SatMatrix};
use noneq_core::free_product::{FPElement, FactorSpec, FpError, FreeProduct, RootSet, Syllable};
use noneq_core::whitehead::{is_primitive, WhiteheadError};
use noneq_core::witness::{
    evaluate_matrix, search_power_decomposition, Evaluation, WitnessError, CertificateReport,
};
use noneq_core::{FreeWord, ParseError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_UNDECIDED: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "noneq", version, about = "Free-group and free-product witnesses for nonequationality")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and certify the witness matrices of size n.
    Witness(WitnessArgs),
    /// Decide whether a word is primitive in F_rank.
    Primitive {
        word: String,
        #[arg(long)]
        rank: u32,
    },
    /// Print the reduced form of a free-group word.
    Reduce { word: String },
    /// Normal form of an element of a free product.
    Nf {
        word: String,
        /// Factor spec: a JSON file, or inline JSON.
        #[arg(long)]
        factors: String,
    },
    /// All q-th roots of a word (free group, or a free product with --factors).
    Root {
        word: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        factors: Option<String>,
    },
    /// Bass-Serre tree of a two-factor product.
    Tree {
        #[command(subcommand)]
        command: TreeCommand,
    },
    /// Bounded search for target = u^p v^q with u, v not commuting.
    Search(SearchArgs),
    /// Satisfaction-pattern checks.
    Pattern {
        #[command(subcommand)]
        command: PatternCommand,
    },
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub n: usize,
    /// Length bound for the refutation search; defaults to each product's length.
    #[arg(long)]
    pub search_bound: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, env = "NONEQ_JOBS", default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum TreeCommand {
    /// Distance between two vertices written `<word>.<side>`.
    Dist {
        from: String,
        to: String,
        #[arg(long)]
        factors: String,
        /// Also print the geodesic.
        #[arg(long)]
        path: bool,
    },
    /// Elliptic or hyperbolic, with fixed vertex or translation length.
    Classify {
        word: String,
        #[arg(long)]
        factors: String,
    },
    /// A window of the axis of a hyperbolic element.
    Axis {
        word: String,
        #[arg(long, default_value_t = 1)]
        copies: usize,
        #[arg(long)]
        factors: String,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub target: String,
    #[arg(long, allow_hyphen_values = true)]
    pub p: i64,
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub syl_bound: usize,
    #[arg(long)]
    pub factors: String,
    /// Comma-separated single-syllable elements, e.g. "Z3.1,e1,e1^-1".
    #[arg(long)]
    pub alphabet: String,
}

#[derive(Debug, Subcommand)]
pub enum PatternCommand {
    /// Check a SatMatrix JSON file against the expected pattern.
    Check { file: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {}, column {}: {}", .0.line, .0.column, .0.message)]
    Parse(ParseError),
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl From<FpError> for CliError {
    fn from(e: FpError) -> Self {
        match e {
            FpError::Parse(p) => CliError::Parse(p),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::Element(fp) => fp.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}

input_error!(WhiteheadError, CriterionError, WitnessError, serde_json::Error);

type Outcome = Result<u8, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Witness(args) => witness(args, out),
        Command::Primitive { word, rank } => primitive(&word, rank, out),
        Command::Reduce { word } => {
            let w: FreeWord = word.parse()?;
            emit(out, &w)?;
            Ok(EXIT_OK)
        }
        Command::Nf { word, factors } => {
            let product = load_product(&factors)?;
            let x = product.parse(&word)?;
            emit(out, product.format(&x))?;
            Ok(EXIT_OK)
        }
        Command::Root { word, q, factors } => root(&word, q, factors.as_deref(), out),
        Command::Tree { command } => tree(command, out),
        Command::Search(args) => search(args, out),
        Command::Pattern {
            command: PatternCommand::Check { file },
        } => {
            let m = SatMatrix::from_json(&read(&file)?)?;
            emit(out, conclusion(&m, "phi"))?;
            Ok(if matches_pattern(&m) { EXIT_OK } else { EXIT_FALSE })
        }
    }
}

fn emit(out: &mut dyn Write, line: impl std::fmt::Display) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A factor spec given inline (starting with `{`) or as a file path.
pub fn load_product(spec: &str) -> Result<FreeProduct, CliError> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        read(Path::new(spec))?
    };
    Ok(FactorSpec::from_json(&text)?.build_product()?)
}

fn witness(args: WitnessArgs, out: &mut dyn Write) -> Outcome {
    let (evaluation, code) = match evaluate_matrix(args.n, args.search_bound, args.jobs) {
        Ok(e) => {
            let basis_ok = e.cells.iter().all(|c| c.basis_ok != Some(false));
            let code = if e.pattern_ok() && basis_ok { EXIT_OK } else { EXIT_FALSE };
            (e, code)
        }
        Err(WitnessError::Undecided { evaluation, .. }) => (*evaluation, EXIT_UNDECIDED),
        Err(e) => return Err(e.into()),
    };
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&evaluation.report())? + "\n",
        Format::Table => witness_table(&evaluation),
    };
    match &args.out {
        Some(path) => {
            fs::write(path, &text).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let verdict = match code {
                EXIT_OK => "pattern verified",
                EXIT_UNDECIDED => "undecided cells",
                _ => "pattern mismatch",
            };
            emit(out, format_args!("n = {}: {verdict}; report written to {}", args.n, path.display()))?;
        }
        None => write!(out, "{text}").map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })?,
    }
    Ok(code)
}

fn witness_table(e: &Evaluation) -> String {
    let report = e.report();
    let mut s = format!("n = {}\n{}\n", report.n, e.sat.render());
    for c in &report.cells {
        let cert = match &c.certificate {
            CertificateReport::Satisfied { trace_len } => format!("satisfied (trace {trace_len})"),
            CertificateReport::Falsified { u, v } => format!("falsified u = {u}, v = {v}"),
            CertificateReport::Undecided {} => "undecided".to_string(),
        };
        let basis = match c.basis_ok {
            Some(true) => "  basis ok",
            Some(false) => "  basis FAILED",
            None => "",
        };
        s += &format!(
            "a{}{} b{}{}  {}  {cert}{basis}  {}us\n",
            c.a[0], c.a[1], c.b[0], c.b[1], u8::from(c.sat), c.micros
        );
    }
    s += &conclusion(&e.sat, "phi_NE");
    s.push('\n');
    s
}

fn primitive(word: &str, rank: u32, out: &mut dyn Write) -> Outcome {
    let w: FreeWord = word.parse()?;
    let verdict = is_primitive(&w, rank)?;
    if verdict.primitive {
        emit(out, format_args!("primitive in F{rank}"))?;
        for m in &verdict.trace {
            emit(out, format_args!("  {m}"))?;
        }
        emit(out, format_args!("reduces to {}", verdict.replay(&w)))?;
        Ok(EXIT_OK)
    } else {
        emit(out, format_args!("not primitive in F{rank}"))?;
        Ok(EXIT_FALSE)
    }
}

fn root(word: &str, q: u32, factors: Option<&str>, out: &mut dyn Write) -> Outcome {
    if q == 0 {
        return Err(CliError::Input("q must be positive".into()));
    }
    let Some(spec) = factors else {
        let w: FreeWord = word.parse()?;
        return Ok(match w.qth_root(q) {
            Some(r) => {
                emit(out, r)?;
                EXIT_OK
            }
            None => {
                emit(out, format_args!("no root of degree {q}"))?;
                EXIT_FALSE
            }
        });
    };
    let product = load_product(spec)?;
    let z = product.parse(word)?;
    match product.qth_root(&z, q) {
        RootSet::Finite(roots) if roots.is_empty() => {
            emit(out, format_args!("no root of degree {q}"))?;
            Ok(EXIT_FALSE)
        }
        RootSet::Finite(roots) => {
            for r in &roots {
                emit(out, product.format(r))?;
            }
            Ok(EXIT_OK)
        }
        RootSet::Torsion(reps) => {
            emit(out, "1")?;
            for r in &reps {
                emit(out, format_args!("conjugates of {}", product.format(r)))?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn tree(command: TreeCommand, out: &mut dyn Write) -> Outcome {
    match command {
        TreeCommand::Dist {
            from,
            to,
            factors,
            path,
        } => {
            let product = load_product(&factors)?;
            let t = BassSerreTree::new(&product)?;
            let (u, v) = (t.parse_vertex(&from)?, t.parse_vertex(&to)?);
            emit(out, t.distance(&u, &v))?;
            if path {
                for x in t.geodesic(&u, &v) {
                    emit(out, t.display_vertex(&x))?;
                }
            }
        }
        TreeCommand::Classify { word, factors } => {
            let product = load_product(&factors)?;
            let t = BassSerreTree::new(&product)?;
            let h = product.parse(&word)?;
            match t.classify(&h) {
                ActionClass::Elliptic(FixedSet::All) => emit(out, "elliptic, fixes every vertex")?,
                ActionClass::Elliptic(FixedSet::Vertex(v)) => {
                    emit(out, format_args!("elliptic, fixes {}", t.display_vertex(&v)))?
                }
                ActionClass::Hyperbolic { translation } => {
                    emit(out, format_args!("hyperbolic, translation length {translation}"))?
                }
            }
        }
        TreeCommand::Axis {
            word,
            copies,
            factors,
        } => {
            let product = load_product(&factors)?;
            let t = BassSerreTree::new(&product)?;
            let h = product.parse(&word)?;
            for v in t.axis_segment(&h, copies)? {
                emit(out, t.display_vertex(&v))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn parse_alphabet(product: &FreeProduct, list: &str) -> Result<Vec<Syllable>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(idx, token)| {
            let x: FPElement = product.parse(token)?;
            match x.syllables() {
                [s] => Ok(s.clone()),
                [] => Err(CliError::Input(format!("alphabet entry {idx} ({token}) is the identity"))),
                _ => Err(CliError::Input(format!("alphabet entry {idx} ({token}) is not a single syllable"))),
            }
        })
        .collect()
}

fn search(args: SearchArgs, out: &mut dyn Write) -> Outcome {
    if args.q == 0 {
        return Err(CliError::Input("q must be positive".into()));
    }
    let product = load_product(&args.factors)?;
    let target = product.parse(&args.target)?;
    let alphabet = parse_alphabet(&product, &args.alphabet)?;
    match search_power_decomposition(&product, &target, args.p, args.q, args.syl_bound, &alphabet)? {
        Some(d) => {
            emit(out, format_args!("u = {}", product.format(&d.u)))?;
            emit(out, format_args!("v = {}", product.format(&d.v)))?;
            Ok(EXIT_FALSE)
        }
        None => {
            emit(
                out,
                format_args!(
                    "no decomposition u^{} v^{} with [u, v] != 1 and syl(u) <= {} over {} letters",
                    args.p,
                    args.q,
                    args.syl_bound,
                    alphabet.len()
                ),
            )?;
            Ok(EXIT_OK)
        }
    }
}
