//! The `crossfam` command-line tool. Every subcommand parses arguments, calls
//! the library and writes the result; exit code 0 means every check passed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::constructions::{NamedFamily, Params, Realized, Tag};
use crate::count::{self, Formula, FormulaArgs, SlackReport};
use crate::error::Error;
use crate::family::{CrossPair, Family};
use crate::grid::{self, Grids, Span, Which};
use crate::report::{self, Format, Status, TableRanges, Theorem};
use crate::search::{self, ConstraintSpec, SearchConfig, TauConstraint};
use crate::shifting::{compress_pair, compress_to_initial, is_initial, shift_ij};
use crate::transversal::{min_cover, tau, transversals_of_size};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Exit code when a check fails.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for usage, input and guardrail errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "crossfam",
    version,
    about = "Cross-intersecting families: constructions, counts, checks and exhaustive search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named family or pair and report sizes and covering numbers.
    Construct(ConstructArgs),
    /// Covering number and a minimum cover of a family file.
    Tau(TauArgs),
    /// Apply one shift, or compress a family or pair to initial.
    Shift(ShiftArgs),
    /// Evaluate one closed form exactly.
    Count(CountArgs),
    /// Sweep identities and inequalities over a grid.
    VerifyIdentity(VerifyArgs),
    /// Exhaustive search for the largest |F|+|G| (or intersecting family).
    Search(SearchArgs),
    /// Theorem bound against oracle or construction over a parameter grid.
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// star, hilton-milner, triangle, frankl-g, mt, mst, ht, hst, complete
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub i: Option<usize>,
    /// File stem; pairs go to `<stem>.F.fam` and `<stem>.G.fam`, single
    /// families to `<stem>.fam`. Without it the families are printed.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TauArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Also list the covers of this size.
    #[arg(long)]
    pub i: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ShiftArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Second family; the pair is compressed with shared shifts.
    #[arg(long)]
    pub input_g: Option<PathBuf>,
    #[arg(long, requires = "j")]
    pub i: Option<usize>,
    #[arg(long, requires = "i")]
    pub j: Option<usize>,
    /// Output path (stem for pairs); printed when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// mt, mt-partition, mt-alternating, ht, hst, bound-1t, bound-st,
    /// bound-small-a, m1, m2, cover3, binomial, erdos-lovasz, fot-lower
    #[arg(long)]
    pub formula: String,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    #[arg(long)]
    pub a: Option<i64>,
    #[arg(long)]
    pub b: Option<i64>,
    #[arg(long)]
    pub t: Option<i64>,
    #[arg(long)]
    pub s: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check name, comma-separated list, or `all`.
    #[arg(long, default_value = "all")]
    pub which: String,
    /// `default` or a grid file path.
    #[arg(long, default_value = "default")]
    pub grid: String,
    /// tsv, text or json
    #[arg(long, default_value = "tsv")]
    pub format: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Guard {
    /// Lift the search guardrails up to the hard limits.
    #[arg(long)]
    pub force: bool,
    #[arg(long)]
    pub threads: Option<usize>,
}

impl Guard {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            force: self.force,
            threads: self.threads,
            ..SearchConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    /// Covering-number constraint on F (at least, unless --f-exact).
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Covering-number constraint on G (at least, unless --g-exact).
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    #[arg(long)]
    pub f_exact: bool,
    #[arg(long)]
    pub g_exact: bool,
    /// Restrict to initial families.
    #[arg(long)]
    pub initial: bool,
    /// Largest intersecting k-uniform family with tau >= s.
    #[arg(long)]
    pub intersecting: bool,
    #[arg(long)]
    pub k: Option<usize>,
    /// Omit `nodes` and `elapsed_ms`.
    #[arg(long)]
    pub stable: bool,
    #[command(flatten)]
    pub guard: Guard,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// 1t, st, ss, ht, hst, intersecting
    #[arg(long)]
    pub theorem: String,
    /// Ranges are `v` or `lo..hi`, inclusive.
    #[arg(long, default_value = "7")]
    pub n: String,
    #[arg(long, default_value = "4")]
    pub a: String,
    #[arg(long, default_value = "2")]
    pub b: String,
    #[arg(long, default_value = "2")]
    pub t: String,
    #[arg(long, default_value = "1")]
    pub s: String,
    #[arg(long, default_value = "3")]
    pub k: String,
    /// text, tsv or json
    #[arg(long, default_value = "text")]
    pub format: String,
    #[command(flatten)]
    pub guard: Guard,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_family(path: &Path) -> CliResult<Family> {
    Ok(Family::from_text(&read(path)?)?)
}

/// `<stem>.<suffix>`, keeping any directory part of the stem.
fn with_suffix(stem: &Path, suffix: &str) -> PathBuf {
    let mut name = stem.as_os_str().to_owned();
    name.push(".");
    name.push(suffix);
    PathBuf::from(name)
}

/// Sends output to `--out` or stdout.
fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => write(p, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn say(out: &mut dyn Write, text: &str) -> CliResult<()> {
    emit(out, None, &format!("{text}\n"))
}

fn construct(args: &ConstructArgs, out: &mut dyn Write) -> CliResult<i32> {
    let tag: Tag = args.family.parse()?;
    let params = Params {
        n: Some(args.n),
        a: args.a,
        b: args.b,
        t: args.t,
        s: args.s,
        k: args.k,
        i: args.i,
    };
    let named = NamedFamily::build(tag, params)?;
    let header = named.header();
    match &named.realized {
        Realized::Single(f) => {
            say(out, &format!("size={} tau={}", f.len(), tau(f)?))?;
            match &args.out {
                Some(stem) => {
                    let path = with_suffix(stem, "fam");
                    write(&path, &f.to_text_with_header(Some(&header)))?;
                    say(out, &format!("wrote {}", path.display()))?;
                }
                None => emit(out, None, &f.to_text_with_header(Some(&header)))?,
            }
        }
        Realized::Pair(p) => {
            say(
                out,
                &format!(
                    "size_F={} size_G={} total={} tau_F={} tau_G={}",
                    p.f().len(),
                    p.g().len(),
                    p.total(),
                    tau(p.f())?,
                    tau(p.g())?
                ),
            )?;
            let f_text = p.f().to_text_with_header(Some(&format!("{header} part=F")));
            let g_text = p.g().to_text_with_header(Some(&format!("{header} part=G")));
            match &args.out {
                Some(stem) => {
                    for (suffix, text) in [("F.fam", &f_text), ("G.fam", &g_text)] {
                        let path = with_suffix(stem, suffix);
                        write(&path, text)?;
                        say(out, &format!("wrote {}", path.display()))?;
                    }
                }
                None => {
                    emit(out, None, &f_text)?;
                    emit(out, None, &g_text)?;
                }
            }
        }
    }
    Ok(0)
}

fn elements(set: crate::family::SetWord) -> String {
    set.elements()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_tau(args: &TauArgs, out: &mut dyn Write) -> CliResult<i32> {
    let f = read_family(&args.input)?;
    let cover = min_cover(&f)?;
    say(
        out,
        &format!("tau={} cover={{{}}}", cover.size, elements(cover.set)),
    )?;
    if let Some(i) = args.i {
        let covers = transversals_of_size(&f, i)?;
        say(out, &format!("covers_of_size_{i}={}", covers.len()))?;
        emit(out, None, &covers.to_text())?;
    }
    Ok(0)
}

fn cmd_shift(args: &ShiftArgs, out: &mut dyn Write) -> CliResult<i32> {
    let f = read_family(&args.input)?;
    if let Some(g_path) = &args.input_g {
        let g = read_family(g_path)?;
        let pair = CrossPair::new(f, g)?;
        let shifted = match (args.i, args.j) {
            (Some(i), Some(j)) => {
                CrossPair::new(shift_ij(pair.f(), i, j)?, shift_ij(pair.g(), i, j)?)?
            }
            _ => compress_pair(&pair)?,
        };
        say(
            out,
            &format!(
                "total={} initial={}",
                shifted.total(),
                is_initial(shifted.f()) && is_initial(shifted.g())
            ),
        )?;
        let texts = [
            ("F.fam", shifted.f().to_text()),
            ("G.fam", shifted.g().to_text()),
        ];
        for (suffix, text) in texts {
            match &args.out {
                Some(stem) => write(&with_suffix(stem, suffix), &text)?,
                None => emit(out, None, &text)?,
            }
        }
        return Ok(0);
    }
    let (shifted, summary) = match (args.i, args.j) {
        (Some(i), Some(j)) => {
            let s = shift_ij(&f, i, j)?;
            let moved = f.iter().filter(|m| !s.contains(*m)).count();
            (s, format!("moved={moved}"))
        }
        _ => {
            let (s, log) = compress_to_initial(&f);
            let summary = format!("shifts={} moved={}", log.records.len(), log.total_moved());
            (s, summary)
        }
    };
    say(out, &format!("{summary} initial={}", is_initial(&shifted)))?;
    emit(out, args.out.as_deref(), &shifted.to_text())?;
    Ok(0)
}

fn cmd_count(args: &CountArgs, out: &mut dyn Write) -> CliResult<i32> {
    let formula: Formula = args.formula.parse()?;
    let fargs = FormulaArgs {
        n: args.n,
        a: args.a,
        b: args.b,
        t: args.t,
        s: args.s,
        k: args.k,
    };
    let value = formula.eval(&fargs)?;
    if formula == Formula::ErdosLovasz {
        let k = u32::try_from(args.k.unwrap_or(0))
            .map_err(|_| CliError::Usage("--k must be nonnegative".into()))?;
        say(
            out,
            &format!("lower={value} upper={}", count::erdos_lovasz(k).1),
        )?;
    } else {
        say(out, &value.to_string())?;
    }
    Ok(0)
}

fn load_grids(spec: &str) -> CliResult<Grids> {
    if spec == "default" {
        Ok(Grids::shipped())
    } else {
        Ok(Grids::parse(&read(Path::new(spec))?)?)
    }
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let grids = load_grids(&args.grid)?;
    let format: Format = args.format.parse()?;
    let which: Vec<Which> = if args.which.eq_ignore_ascii_case("all") {
        Which::ALL.to_vec()
    } else {
        args.which
            .split(',')
            .map(|w| w.trim().parse())
            .collect::<Result<_, _>>()?
    };
    let mut reports: Vec<SlackReport> = Vec::new();
    for w in which {
        reports.extend(grid::sweep(&grids, w)?);
    }
    emit(
        out,
        args.out.as_deref(),
        &report::render_slack(&reports, format),
    )?;
    Ok(if reports.iter().all(SlackReport::passed) {
        0
    } else {
        EXIT_FAIL
    })
}

fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> CliResult<i32> {
    let cfg = args.guard.config();
    let report = if args.intersecting {
        let k = args
            .k
            .ok_or_else(|| CliError::Usage("--intersecting needs --k".into()))?;
        search::max_intersecting_with_tau(args.n, k, args.s, &cfg)?
    } else {
        let a = args
            .a
            .ok_or_else(|| CliError::Usage("search needs --a".into()))?;
        let b = args
            .b
            .ok_or_else(|| CliError::Usage("search needs --b".into()))?;
        let side = |exact: bool, v: usize| {
            if exact {
                TauConstraint::Exactly(v)
            } else {
                TauConstraint::AtLeast(v)
            }
        };
        let spec = ConstraintSpec {
            f: side(args.f_exact, args.s),
            g: side(args.g_exact, args.t),
            initial_only: args.initial,
        };
        search::max_cross_sum_with(args.n, a, b, spec, &cfg)?
    };
    let json = if args.stable {
        report.stable_json()
    } else {
        report.to_json()
    };
    let text = serde_json::to_string_pretty(&json).expect("json") + "\n";
    emit(out, args.out.as_deref(), &text)?;
    Ok(0)
}

fn cmd_table(args: &TableArgs, out: &mut dyn Write) -> CliResult<i32> {
    let theorem: Theorem = args.theorem.parse()?;
    let format: Format = args.format.parse()?;
    let span = |s: &str| s.parse::<Span>();
    let ranges = TableRanges {
        n: span(&args.n)?,
        a: span(&args.a)?,
        b: span(&args.b)?,
        t: span(&args.t)?,
        s: span(&args.s)?,
        k: span(&args.k)?,
    };
    let rows = report::table(theorem, &ranges, &args.guard.config())?;
    emit(
        out,
        args.out.as_deref(),
        &report::render_table(&rows, format),
    )?;
    Ok(if rows.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else {
        0
    })
}

/// Runs a parsed command, writing normal output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    match &cli.command {
        Command::Construct(a) => construct(a, out),
        Command::Tau(a) => cmd_tau(a, out),
        Command::Shift(a) => cmd_shift(a, out),
        Command::Count(a) => cmd_count(a, out),
        Command::VerifyIdentity(a) => cmd_verify(a, out),
        Command::Search(a) => cmd_search(a, out),
        Command::Table(a) => cmd_table(a, out),
    }
}

/// Entry point for the binary: parses `std::env::args`, prints errors to
/// stderr and returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(code) => code,
        Err(CliError::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("crossfam").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let code = match run(&cli, &mut buf) {
            Ok(c) => c,
            Err(_) => EXIT_ERROR,
        };
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn construct_summaries() {
        let (code, out) = run_args(&[
            "construct",
            "--family",
            "Mt",
            "--n",
            "7",
            "--a",
            "4",
            "--b",
            "2",
            "--t",
            "2",
        ]);
        assert_eq!(code, 0);
        assert!(out
            .lines()
            .next()
            .unwrap()
            .contains("total=27 tau_F=2 tau_G=2"));
        let (_, out) = run_args(&[
            "construct",
            "--family",
            "Ht",
            "--n",
            "7",
            "--a",
            "4",
            "--b",
            "2",
            "--t",
            "2",
        ]);
        assert!(out.contains("total=25"));
        let (_, out) = run_args(&[
            "construct",
            "--family",
            "star",
            "--n",
            "5",
            "--k",
            "2",
            "--i",
            "1",
        ]);
        assert!(out.starts_with("size=4"));
    }

    #[test]
    fn construct_rejects_missing_params() {
        let (code, _) = run_args(&["construct", "--family", "mt", "--n", "7"]);
        assert_eq!(code, EXIT_ERROR);
    }

    #[test]
    fn count_formulas() {
        let (_, out) = run_args(&[
            "count",
            "--formula",
            "Mt",
            "--n",
            "40",
            "--a",
            "10",
            "--b",
            "3",
            "--t",
            "10",
        ]);
        assert_eq!(out.trim(), "59059");
        let (_, out) = run_args(&["count", "--formula", "binomial", "--n", "40", "--k", "3"]);
        assert_eq!(out.trim(), "9880");
        let (_, out) = run_args(&["count", "--formula", "erdos-lovasz", "--k", "3"]);
        assert_eq!(out.trim(), "lower=10 upper=27");
        let (code, _) = run_args(&["count", "--formula", "nope", "--n", "3"]);
        assert_eq!(code, EXIT_ERROR);
    }

    #[test]
    fn verify_exit_codes() {
        let (code, out) = run_args(&["verify-identity", "--which", "qlecnie2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("check\tparams\tlhs"));
        let (code, _) = run_args(&["verify-identity", "--which", "icile"]);
        assert_eq!(code, EXIT_FAIL);
    }

    #[test]
    fn table_example_grid_passes() {
        let (code, out) = run_args(&[
            "table",
            "--theorem",
            "1t",
            "--n",
            "6..9",
            "--a",
            "4",
            "--b",
            "2",
            "--t",
            "1..3",
            "--format",
            "tsv",
        ]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(out.lines().count(), 1 + 4 * 3);
    }
}
