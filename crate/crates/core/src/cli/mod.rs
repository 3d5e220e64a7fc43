//! The `coxhecke` command line.
//!
//! [`run`] is the whole program minus the process exit, so tests drive it
//! in-process. Every command except `cache` opens a [`Session`]: the matrix,
//! the ball and the lazily built tables, plus the [`RunConfig`] that is echoed
//! as the first record of the output.

mod commands;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::coxeter::{CoxeterMatrix, GroupBall, GroupProfile};
use crate::error::Error;
use crate::kl::{KlCache, CACHE_ENV};
use crate::verify::{Analysis, Options};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "coxhecke", version, about = "Hecke algebra, Kazhdan-Lusztig and cell computations on truncated Coxeter groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Coxeter matrix document `{"gens": [...], "m": [[...]]}`, 0 meaning infinity.
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "group")]
    pub matrix: Option<PathBuf>,
    /// Built-in group: a2tilde, a3, i2:M, universal:N, triangle:P,Q,R.
    #[arg(long, global = true, value_name = "PRESET")]
    pub group: Option<String>,
    /// Length bound L of the ball.
    #[arg(long, global = true, default_value_t = 8)]
    pub radius: usize,
    /// Bound on l(x) + l(y) for product scans; defaults to the radius.
    #[arg(long, global = true)]
    pub pair_budget: Option<usize>,
    /// Cells are certified below radius - margin; defaults to a0 + 1.
    #[arg(long, global = true)]
    pub margin: Option<usize>,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory of the KL cache; defaults to $COXHECKE_CACHE_DIR when set.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// One worker, zero wall times: identical bytes on every run.
    #[arg(long, global = true)]
    pub deterministic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Jsonl,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Elements of the ball with lengths and descent sets.
    Ball,
    /// Matrix read-off: a0, the maximal finite rank-2 parabolics, orders.
    Profile,
    /// Kazhdan-Lusztig polynomials and mu.
    Kl(KlArgs),
    /// Structure constants f of the normalized standard basis.
    Hecke(HeckeArgs),
    /// Truncated a-function of every element.
    Afun,
    /// Left, right or two-sided cell partitions.
    Cells(CellsArgs),
    /// The lowest two-sided cell, its canonical left-cell representatives
    /// and distinguished involutions.
    Lowest,
    /// Structure constants gamma of the asymptotic ring on the lowest cell.
    Jtable(JtableArgs),
    /// Run verification suites.
    Check(CheckArgs),
    /// Inspect or clear the KL cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("pick").required(true).args(["y", "all"])))]
pub struct KlArgs {
    #[arg(long, requires = "w")]
    pub y: Option<String>,
    #[arg(long, requires = "y")]
    pub w: Option<String>,
    /// Every nonzero P_{y,w} in the ball.
    #[arg(long)]
    pub all: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("pick").required(true).args(["x", "survey"])))]
pub struct HeckeArgs {
    #[arg(long, requires = "y")]
    pub x: Option<String>,
    #[arg(long, requires = "x")]
    pub y: Option<String>,
    /// Only the coefficient of this element.
    #[arg(long, requires = "x")]
    pub z: Option<String>,
    /// Largest xi-degree of f over all pairs within the pair budget.
    #[arg(long)]
    pub survey: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    TwoSided,
}

#[derive(Args, Debug)]
pub struct CellsArgs {
    #[arg(long, value_enum, default_value_t = SideArg::TwoSided)]
    pub side: SideArg,
    /// With `--format dot`, draw the mu-graph of a one-sided preorder
    /// instead of the block order.
    #[arg(long)]
    pub mu_graph: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Omega,
    Unital,
}

#[derive(Args, Debug)]
pub struct JtableArgs {
    #[arg(long, value_enum, default_value_t = TableKind::Omega)]
    pub kind: TableKind,
    /// Longest element for `--kind unital`; defaults to the first seed.
    #[arg(long)]
    pub w0: Option<String>,
    /// Largest element length in the table; defaults to radius / 2.
    #[arg(long)]
    pub max_length: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Suite id, repeatable; every suite when absent.
    #[arg(long = "suite")]
    pub suites: Vec<String>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum CacheAction {
    /// Cache files with their headers and record counts.
    Inspect,
    /// Remove the cache file of the matrix, or every cache file.
    Clear,
    /// Where the cache file of the matrix lives.
    Path,
}

/// Everything that shapes the output, echoed as the first record.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub matrix: String,
    pub matrix_hash: String,
    pub gens: Vec<String>,
    pub radius: usize,
    pub pair_budget: usize,
    pub margin: usize,
    pub threads: usize,
    pub cache: Option<String>,
    pub format: Format,
    pub deterministic: bool,
}

pub(crate) enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownSuite(_) | Error::UnknownGenerator(_) => Failure::Usage(format!("{}: {e}", e.name())),
            e => Failure::Compute(e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(Error::Io(e))
    }
}

pub(crate) type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return EXIT_USAGE;
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let (bytes, outcome) = execute(&cli);
    if let Err(e) = out.write_all(&bytes).and_then(|_| out.flush()) {
        let _ = writeln!(err, "IoError: {e}");
        return EXIT_COMPUTATION;
    }
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "{}: {e}", e.name());
            EXIT_COMPUTATION
        }
    }
}

/// Entry point of the `coxhecke` binary.
pub fn main_entry() -> i32 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    run(std::env::args_os(), &mut out, &mut io::stderr())
}

/// Output is buffered so the command can run inside a private thread pool.
fn execute(cli: &Cli) -> (Vec<u8>, Outcome) {
    let mut buf = Vec::new();
    let g = &cli.global;
    if let Command::Cache { action } = &cli.command {
        let outcome = commands::cache(g, *action, &mut Emitter::new(&mut buf, g.format));
        return (buf, outcome);
    }
    let threads = if g.deterministic { 1 } else { g.threads.unwrap_or(0) };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => return (buf, Err(Failure::Compute(Error::ResourceLimit(format!("thread pool: {e}"))))),
    };
    let outcome = pool.install(|| -> Outcome {
        let session = Session::open(g, &cli.command)?;
        let mut em = Emitter::new(&mut buf, g.format);
        commands::dispatch(&session, &cli.command, &mut em)
    });
    (buf, outcome)
}

pub(crate) fn load_matrix(g: &GlobalArgs) -> std::result::Result<(CoxeterMatrix, String), Failure> {
    match (&g.matrix, &g.group) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)?;
            Ok((CoxeterMatrix::from_json(&text)?, path.display().to_string()))
        }
        (None, Some(name)) => Ok((CoxeterMatrix::preset(name)?, name.clone())),
        (None, None) => Err(Failure::Usage("one of --matrix or --group is required".into())),
    }
}

/// `--cache`, else `$COXHECKE_CACHE_DIR`; `None` disables caching.
pub(crate) fn cache_dir(g: &GlobalArgs) -> Option<PathBuf> {
    g.cache.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

pub(crate) struct Session {
    pub config: RunConfig,
    pub analysis: Analysis,
}

impl Session {
    fn open(g: &GlobalArgs, command: &Command) -> std::result::Result<Self, Failure> {
        if g.format == Format::Dot && !matches!(command, Command::Cells(_)) {
            return Err(Failure::Usage("--format dot is only available for `cells`".into()));
        }
        let (matrix, source) = load_matrix(g)?;
        let ball = GroupBall::build(&matrix, g.radius)?;
        let profile = GroupProfile::of(&matrix);
        let options = Options {
            pair_budget: g.pair_budget.unwrap_or(g.radius),
            margin: g.margin.unwrap_or(profile.a0 + 1),
            parallel: !g.deterministic,
            deterministic: g.deterministic,
        };
        let cache = cache_dir(g);
        let config = RunConfig {
            matrix: source,
            matrix_hash: matrix.content_hash(),
            gens: matrix.gens().to_vec(),
            radius: g.radius,
            pair_budget: options.pair_budget,
            margin: options.margin,
            threads: rayon::current_num_threads(),
            cache: cache.as_ref().map(|d| d.display().to_string()),
            format: g.format,
            deterministic: g.deterministic,
        };
        let mut analysis = Analysis::new(ball, options);
        let needs_kl = matches!(
            command,
            Command::Kl(_) | Command::Afun | Command::Cells(_) | Command::Jtable(_) | Command::Check(_)
        );
        if let (true, Some(dir)) = (needs_kl, cache) {
            std::fs::create_dir_all(&dir)?;
            let store = KlCache::in_dir(&dir, analysis.ball());
            let (kl, _hit) = store.load_or_build(analysis.ball(), options.parallel)?;
            analysis = analysis.with_kl(kl)?;
        }
        Ok(Session { config, analysis })
    }
}

/// Writes records as JSON lines or as text lines.
pub(crate) struct Emitter<'a> {
    out: &'a mut Vec<u8>,
    format: Format,
}

impl<'a> Emitter<'a> {
    fn new(out: &'a mut Vec<u8>, format: Format) -> Self {
        Emitter { out, format }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    /// A JSON record tagged with `kind`, or `text()` in text mode.
    pub fn emit(&mut self, kind: &str, value: Value, text: impl FnOnce() -> String) -> io::Result<()> {
        match self.format {
            Format::Jsonl => {
                let mut value = value;
                if let Value::Object(map) = &mut value {
                    map.insert("kind".into(), Value::String(kind.into()));
                }
                serde_json::to_writer(&mut *self.out, &value)?;
                self.out.push(b'\n');
            }
            Format::Text | Format::Dot => {
                let text = text();
                self.out.extend_from_slice(text.as_bytes());
                if !text.ends_with('\n') {
                    self.out.push(b'\n');
                }
            }
        }
        Ok(())
    }

    pub fn raw(&mut self, text: &str) {
        self.out.extend_from_slice(text.as_bytes());
    }

    pub fn header(&mut self, config: &RunConfig) -> io::Result<()> {
        let value = serde_json::to_value(config).map_err(io::Error::other)?;
        let line = |prefix: &str| {
            format!(
                "{prefix} matrix {} ({}), radius {}, pair budget {}, margin {}, threads {}, cache {}, deterministic {}",
                config.matrix,
                &config.matrix_hash[..16],
                config.radius,
                config.pair_budget,
                config.margin,
                config.threads,
                config.cache.as_deref().unwrap_or("off"),
                config.deterministic,
            )
        };
        match self.format {
            Format::Dot => {
                self.raw(&line("//"));
                self.raw("\n");
                Ok(())
            }
            _ => self.emit("config", value, || line("#")),
        }
    }
}
