//! The `knotted-tori` command line.
//!
//! [`parse_and_dispatch`] does all the work and returns the exit code with
//! the rendered standard output and standard error, so the binary is a thin
//! wrapper and the whole interface is testable in-process.
//!
//! Exit codes: 0 success, 1 consistency failures, 2 domain error,
//! 3 usage error, 4 rank-table error.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::census::{self, io as census_io, ConsistencyReport, GridBounds, GridError, MPolicy};
use crate::criteria::{self, ConnectedSumVerdict, DomainError, FinitenessVerdict};
use crate::fcs::{self, FcsError, LatticePoint, LineEquation};
use crate::rank::{
    DefaultProvider, RankContext, RankError, RankInterval, RankProvider, TableError, TableProvider,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_TABLE: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "knotted-tori",
    version,
    about = "Finiteness and rank bounds for isotopy classes of knots, links and knotted tori"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Show which condition decided the verdict.
    #[arg(long)]
    pub explain: bool,
}

#[derive(Debug, Args)]
pub struct Triple {
    #[arg(long = "p")]
    pub p: u32,
    #[arg(long = "q")]
    pub q: u32,
    #[arg(long = "m")]
    pub m: u32,
}

#[derive(Debug, Args)]
pub struct Grid {
    /// Range of p, e.g. `1..8` or `3`.
    #[arg(long = "p", value_parser = parse_range)]
    pub p: RangeInclusive<u32>,
    #[arg(long = "q", value_parser = parse_range)]
    pub q: RangeInclusive<u32>,
    /// Explicit range of m; by default every m of the domain is visited.
    #[arg(long = "m", value_parser = parse_range)]
    pub m: Option<RangeInclusive<u32>>,
    /// Rank table file; defaults to bounds derived from the criteria.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Knots S^q -> S^m.
    Knot {
        #[arg(long = "q")]
        q: u32,
        #[arg(long = "m")]
        m: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Framed knots D^p x S^q -> S^m.
    Framed {
        #[command(flatten)]
        dims: Triple,
        #[command(flatten)]
        out: Output,
    },
    /// Links S^p ⊔ S^q -> S^m with unknotted components (or, with --zero,
    /// with unknotted second component).
    Link {
        #[command(flatten)]
        dims: Triple,
        #[arg(long)]
        zero: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Knotted tori S^p x S^q -> S^m.
    Tori {
        #[command(flatten)]
        dims: Triple,
        /// Decide through the constituent knot, framed-knot and link groups.
        #[arg(long)]
        via_components: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Connected sums S^p1 x S^q1 # S^p2 x S^q2 -> S^m (sufficient condition only).
    Consum {
        #[arg(long)]
        p1: u32,
        #[arg(long)]
        q1: u32,
        #[arg(long)]
        p2: u32,
        #[arg(long)]
        q2: u32,
        #[arg(long = "m")]
        m: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Finiteness-checking sets: membership (--x --y), window (--xmax --ymax)
    /// or first member on a line (--a --b --c).
    Fcs {
        #[arg(long = "i", allow_negative_numbers = true)]
        i: i64,
        #[arg(long = "j", allow_negative_numbers = true)]
        j: i64,
        #[arg(long = "x", allow_negative_numbers = true)]
        x: Option<i64>,
        #[arg(long = "y", allow_negative_numbers = true)]
        y: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        xmax: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        ymax: Option<i64>,
        #[arg(long = "a", allow_negative_numbers = true)]
        a: Option<i64>,
        #[arg(long = "b", allow_negative_numbers = true)]
        b: Option<i64>,
        #[arg(long = "c", allow_negative_numbers = true)]
        c: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Rational rank bounds.
    Rank {
        #[command(subcommand)]
        kind: RankCommand,
    },
    /// Evaluate every criterion and the rank bound over a grid.
    Census(Grid),
    /// Cross-validate the criteria over a grid; exits 1 on any failure.
    Check(Grid),
}

#[derive(Debug, Subcommand)]
pub enum RankCommand {
    /// Rank of E^m(S^p x S^q).
    Tori {
        #[command(flatten)]
        dims: Triple,
        #[arg(long)]
        table: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Rank of pi_q(V_{n,k}).
    Stiefel {
        #[arg(long = "q")]
        q: u32,
        #[arg(long = "n")]
        n: u32,
        #[arg(long = "k")]
        k: u32,
        #[arg(long)]
        table: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Rank of E^m(S^p ⊔ S^q).
    Link {
        #[command(flatten)]
        dims: Triple,
        #[arg(long)]
        table: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
}

/// Exit code and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: stderr.into(),
        }
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let bad = || format!("expected N or A..B, got {s:?}");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| bad())?;
            Ok(a..=b)
        }
        None => s.trim().parse().map(|v| v..=v).map_err(|_| bad()),
    }
}

enum Failure {
    Domain(DomainError),
    Usage(String),
    Table(TableError),
    Inconsistent(String),
}

impl From<DomainError> for Failure {
    fn from(e: DomainError) -> Self {
        Failure::Domain(e)
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        Failure::Table(e)
    }
}

impl From<FcsError> for Failure {
    fn from(e: FcsError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<GridError> for Failure {
    fn from(e: GridError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<RankError> for Failure {
    fn from(e: RankError) -> Self {
        match e {
            RankError::Domain(d) => Failure::Domain(d),
            other => Failure::Inconsistent(other.to_string()),
        }
    }
}

impl From<census_io::CensusIoError> for Failure {
    fn from(e: census_io::CensusIoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn unsupported(format: Format, what: &str) -> Failure {
    Failure::Usage(format!("format {format:?} is not supported by {what}").to_lowercase())
}

/// Runs one command line. `argv[0]` is the program name.
pub fn parse_and_dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(rendered),
                _ => Outcome::fail(EXIT_USAGE, rendered),
            };
        }
    };
    let mut warnings = String::new();
    match dispatch(cli.command, &mut warnings) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: warnings,
        },
        Err(f) => {
            let (code, msg) = match f {
                Failure::Domain(e) => (EXIT_DOMAIN, format!("domain error: {e}")),
                Failure::Usage(m) => (EXIT_USAGE, format!("usage error: {m}")),
                Failure::Table(e) => (EXIT_TABLE, format!("rank table error: {e}")),
                Failure::Inconsistent(m) => (EXIT_INCONSISTENT, format!("inconsistency: {m}")),
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("{warnings}{msg}\n"),
            }
        }
    }
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    verdict: &'a str,
    condition: Option<&'a str>,
    witness: Option<LatticePoint>,
}

fn render_verdict(v: &FinitenessVerdict, out: &Output) -> Result<String, Failure> {
    match out.format {
        Format::Text if out.explain => Ok(format!("{v:#}\n")),
        Format::Text => Ok(format!("{v}\n")),
        Format::Json => {
            let e = v.explanation();
            let j = VerdictJson {
                verdict: v.finiteness().as_str(),
                condition: e.map(|e| e.condition.as_str()),
                witness: v.witness(),
            };
            Ok(format!(
                "{}\n",
                serde_json::to_string(&j).expect("serializable")
            ))
        }
        Format::Csv => Err(unsupported(out.format, "verdict queries")),
    }
}

fn render_rank(r: RankInterval, format: Format) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(format!("{r}\n")),
        Format::Json => Ok(format!(
            "{}\n",
            serde_json::json!({ "lo": r.lo(), "hi": census_io::RankBound(r.hi()) })
        )),
        Format::Csv => Err(unsupported(format, "rank queries")),
    }
}

fn load_provider(
    table: Option<&PathBuf>,
    warnings: &mut String,
) -> Result<Box<dyn RankProvider>, Failure> {
    match table {
        None => Ok(Box::new(DefaultProvider::default())),
        Some(path) => {
            let p = TableProvider::load(path)?;
            for w in &p.table().warnings {
                let _ = writeln!(warnings, "warning: {w}");
            }
            Ok(Box::new(p))
        }
    }
}

fn dispatch(command: Command, warnings: &mut String) -> Result<(i32, String), Failure> {
    let ok = |s: String| Ok((EXIT_OK, s));
    match command {
        Command::Knot { q, m, out } => ok(render_verdict(&criteria::knot_infinite(q, m)?, &out)?),
        Command::Framed {
            dims: Triple { p, q, m },
            out,
        } => ok(render_verdict(
            &criteria::framed_knot_infinite(p, q, m)?,
            &out,
        )?),
        Command::Link {
            dims: Triple { p, q, m },
            zero,
            out,
        } => {
            let v = if zero {
                criteria::link_zero_infinite(p, q, m)?
            } else {
                criteria::link_unknotted_infinite(p, q, m)?
            };
            ok(render_verdict(&v, &out)?)
        }
        Command::Tori {
            dims: Triple { p, q, m },
            via_components,
            out,
        } => {
            let v = if via_components {
                criteria::knotted_tori_infinite_via_components(p, q, m)?
            } else {
                criteria::knotted_tori_infinite(p, q, m)?
            };
            ok(render_verdict(&v, &out)?)
        }
        Command::Consum {
            p1,
            q1,
            p2,
            q2,
            m,
            out,
        } => {
            let v = criteria::connected_sum_infinite(p1, q1, p2, q2, m)?;
            match out.format {
                Format::Text if out.explain => ok(format!("{v:#}\n")),
                Format::Text => ok(format!("{v}\n")),
                Format::Json => {
                    let (verdict, e) = match &v {
                        ConnectedSumVerdict::Infinite(e) => ("infinite", Some(e)),
                        ConnectedSumVerdict::Unknown => ("unknown", None),
                    };
                    let j = VerdictJson {
                        verdict,
                        condition: e.map(|e| e.condition.as_str()),
                        witness: e.and_then(|e| e.witness),
                    };
                    ok(format!(
                        "{}\n",
                        serde_json::to_string(&j).expect("serializable")
                    ))
                }
                Format::Csv => Err(unsupported(out.format, "consum")),
            }
        }
        Command::Fcs {
            i,
            j,
            x,
            y,
            xmax,
            ymax,
            a,
            b,
            c,
            format,
        } => fcs_command(i, j, (x, y), (xmax, ymax), (a, b, c), format).map(|s| (EXIT_OK, s)),
        Command::Rank { kind } => rank_command(kind, warnings).map(|s| (EXIT_OK, s)),
        Command::Census(grid) => {
            let provider = load_provider(grid.table.as_ref(), warnings)?;
            let bounds = grid_bounds(&grid)?;
            let records = census::run_census(&bounds, provider.as_ref())?;
            ok(render_census(&records, grid.format)?)
        }
        Command::Check(grid) => {
            let provider = load_provider(grid.table.as_ref(), warnings)?;
            let bounds = grid_bounds(&grid)?;
            let report = census::consistency_report(&bounds, provider.as_ref());
            let code = if report.is_clean() {
                EXIT_OK
            } else {
                EXIT_INCONSISTENT
            };
            Ok((code, render_report(&report, grid.format)?))
        }
    }
}

fn grid_bounds(grid: &Grid) -> Result<GridBounds, Failure> {
    let m = match &grid.m {
        Some(r) => MPolicy::Range(r.clone()),
        None => MPolicy::Auto,
    };
    Ok(GridBounds::new(grid.p.clone(), grid.q.clone(), m)?)
}

type Pair = (Option<i64>, Option<i64>);

fn fcs_command(
    i: i64,
    j: i64,
    point: Pair,
    window: Pair,
    line: (Option<i64>, Option<i64>, Option<i64>),
    format: Format,
) -> Result<String, Failure> {
    let modes = [
        point != (None, None),
        window != (None, None),
        line != (None, None, None),
    ];
    if modes.iter().filter(|&&m| m).count() != 1 {
        return Err(Failure::Usage(
            "fcs needs exactly one of --x/--y, --xmax/--ymax or --a/--b/--c".into(),
        ));
    }
    let missing = |what: &str| Failure::Usage(format!("fcs {what} mode needs all of its flags"));
    if modes[0] {
        let (Some(x), Some(y)) = point else {
            return Err(missing("membership"));
        };
        let m = fcs::fcs_membership(i, j, LatticePoint::new(x, y));
        return match format {
            Format::Text => Ok(match m {
                Some(m) => format!("member (clause: {m})\n"),
                None => "not a member\n".to_owned(),
            }),
            Format::Json => Ok(format!(
                "{}\n",
                serde_json::json!({
                    "member": m.is_some(),
                    "clause": m.map(|m| m.clause.text),
                    "reflected": m.map(|m| m.reflected),
                })
            )),
            Format::Csv => Err(unsupported(format, "fcs membership")),
        };
    }
    if modes[1] {
        let (Some(xmax), Some(ymax)) = window else {
            return Err(missing("window"));
        };
        let points = fcs::fcs_window(i, j, xmax, ymax)?;
        return Ok(match format {
            Format::Csv | Format::Text => {
                let mut s = String::from("x,y\n");
                for p in &points {
                    let _ = writeln!(s, "{},{}", p.x, p.y);
                }
                s
            }
            Format::Json => format!(
                "{}\n",
                serde_json::to_string(&points).expect("serializable")
            ),
        });
    }
    let (Some(a), Some(b), Some(c)) = line else {
        return Err(missing("line"));
    };
    let eq = LineEquation::new(a, b, c)?;
    let w = fcs::fcs_line_witness(i, j, &eq);
    match format {
        Format::Text => Ok(match w {
            Some(p) => format!("{p}\n"),
            None => "none\n".to_owned(),
        }),
        Format::Json => Ok(format!(
            "{}\n",
            serde_json::json!({ "witness": w, "solutions": fcs::line_solutions(&eq) })
        )),
        Format::Csv => Err(unsupported(format, "fcs line")),
    }
}

fn rank_command(kind: RankCommand, warnings: &mut String) -> Result<String, Failure> {
    let standard = criteria::Criteria::standard();
    match kind {
        RankCommand::Tori {
            dims: Triple { p, q, m },
            table,
            out,
        } => {
            let provider = load_provider(table.as_ref(), warnings)?;
            let ctx = RankContext::new(&standard, provider.as_ref());
            let detail = ctx.tori_rank_detail(p, q, m)?;
            let mut s = render_rank(detail.tightened, out.format)?;
            if out.explain && out.format == Format::Text {
                let link = ctx.full_link_rank(p + q, q, m)?;
                let stiefel = provider
                    .stiefel_rank(q, m - q, p)
                    .unwrap_or(RankInterval::UNKNOWN);
                let _ = writeln!(s, "link E^{m}(S^{} ⊔ S^{q}): {link}", p + q);
                let _ = writeln!(s, "stiefel pi_{q}(V_{},{p}): {stiefel}", m - q);
                let _ = writeln!(s, "verdict: {:#}", detail.verdict);
            }
            Ok(s)
        }
        RankCommand::Stiefel {
            q,
            n,
            k,
            table,
            out,
        } => {
            let r = match &table {
                None => crate::rank::default_stiefel_rank(q, n, k)?,
                Some(_) => load_provider(table.as_ref(), warnings)?
                    .stiefel_rank(q, n, k)
                    .unwrap_or(RankInterval::UNKNOWN),
            };
            render_rank(r, out.format)
        }
        RankCommand::Link {
            dims: Triple { p, q, m },
            table,
            out,
        } => {
            let provider = load_provider(table.as_ref(), warnings)?;
            let r = RankContext::new(&standard, provider.as_ref()).full_link_rank(p, q, m)?;
            render_rank(r, out.format)
        }
    }
}

/// CSV and JSON follow [`census::io`].
fn render_census(records: &[census::CensusRecord], format: Format) -> Result<String, Failure> {
    match format {
        Format::Csv => Ok(census_io::to_csv(records)?),
        Format::Json => Ok(format!("{}\n", census_io::to_json(records)?)),
        Format::Text => {
            let mut s = String::new();
            for r in records {
                let t = r.triple;
                let _ = writeln!(s, "({},{},{}) {:#} rank {}", t.p, t.q, t.m, r.tori, r.rank);
            }
            Ok(s)
        }
    }
}

fn render_report(report: &ConsistencyReport, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(report).expect("serializable")
        )),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "equivalence failures: {}",
                report.equivalence_failures.len()
            );
            for f in &report.equivalence_failures {
                let show = |v: Option<criteria::Finiteness>| v.map_or("error", |v| v.as_str());
                let _ = writeln!(
                    s,
                    "  {}: direct {}, via components {}",
                    f.triple,
                    show(f.direct),
                    show(f.via_components)
                );
            }
            let _ = writeln!(s, "chain violations: {}", report.chain_violations.len());
            for c in &report.chain_violations {
                for v in &c.violations {
                    let _ = writeln!(
                        s,
                        "  {}: term {} {} has rank >= {} but neighbours allow {}",
                        c.triple, v.index, v.label, v.lo, v.neighbour_bound
                    );
                }
                if let Some(e) = &c.error {
                    let _ = writeln!(s, "  {}: {e}", c.triple);
                }
            }
            let _ = writeln!(s, "vacuity failures: {}", report.vacuity_failures.len());
            for t in &report.vacuity_failures {
                let _ = writeln!(s, "  {t}");
            }
            Ok(s)
        }
        Format::Csv => Err(unsupported(format, "check")),
    }
}
