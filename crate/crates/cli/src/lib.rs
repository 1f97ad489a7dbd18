//! Command-line front end for the `cisnim` solver and analysis toolkit.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 resource ceiling exceeded.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use cisnim::analysis::{self, RegionBox, ScaleReport, Verdict};
use cisnim::emit::{self, FigureFormat};
use cisnim::engine::{load_table, save_table};
use cisnim::{
    canonicalize, misere_forbidden, parse_forbidden, solve, solve_box, Error, ForbiddenSet,
    PairTable,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Args, Debug, Clone)]
struct Game {
    /// File of forbidden positions, one `a b c` per line.
    #[arg(long, global = true)]
    forbidden: Option<PathBuf>,
    /// Add the misère set {(0,0,0)} to the forbidden positions.
    #[arg(long, global = true)]
    misere: bool,
    /// Table cache: read by analysis commands, written by `solve`.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve every pair below n and write the table cache.
    Solve {
        #[arg(long)]
        n: u32,
    },
    /// Print P, N or Forbidden for one position.
    Classify {
        #[arg(long)]
        n: Option<u32>,
        #[arg(allow_negative_numbers = true)]
        heaps: Vec<i64>,
    },
    /// Grid of thirds z(x, y), x, y < n, as PGM or CSV.
    Figure {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "pgm")]
        format: Format,
    },
    /// Exact series pi(n 2^k) / (n 2^k)^2.
    PiSeries {
        #[arg(long)]
        base: u32,
        #[arg(long)]
        kmax: u32,
        /// Use the h-based series h(n 2^k, n 2^k) / 4^k instead.
        #[arg(long)]
        h_based: bool,
    },
    /// pi(x) and pi(x) / x^2 for 1 <= x <= max.
    PiCurve {
        #[arg(long)]
        max: u32,
    },
    /// Run a verification suite; exit 1 on any violation.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        max: u32,
        /// Column bound for point-set constructions (identity suite).
        #[arg(long)]
        truncate: Option<u32>,
    },
    /// Well-behavedness scan and, with --base, the h-scaling report.
    Analyze {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        base: Option<u32>,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
    /// Search row x for a period: third(x, y + p) = third(x, y) + p for y > q.
    Periodicity {
        #[arg(long)]
        n: Option<u32>,
        /// Exclusive row bound of the search window (defaults to n).
        #[arg(long)]
        max: Option<u32>,
        x: u32,
    },
    /// Counts of P-positions in a rational box scaled by 2^k, k <= kmax.
    RegionCount {
        /// Box corners `x0,x1,y0,y1,z0,z1`, each an integer or `a/b`.
        #[arg(long = "box", value_name = "X0,X1,Y0,Y1,Z0,Z1")]
        region: String,
        #[arg(long)]
        kmax: u32,
        #[arg(long)]
        n: Option<u32>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Format {
    Pgm,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Suite {
    /// Engine against the brute-force oracle on the box of side max.
    Oracle,
    /// Third-coordinate bounds, {k,k,0} and table consistency.
    Thm5,
    /// Diagonal and off-diagonal r/b relations and the U step check.
    Lemma6,
    /// The counting identity at m = max.
    Identity,
}

#[derive(Parser, Debug)]
#[command(
    name = "cisnim",
    version,
    about = "P-positions of three-heap Nim with forbidden positions"
)]
struct Cli {
    #[command(flatten)]
    game: Game,
    #[command(subcommand)]
    command: Command,
}

/// Runs one command line (`argv[0]` is the program name) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli.game, cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("cisnim: {e}");
            match e {
                Error::Resource(_) => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn forbidden_set(g: &Game) -> cisnim::Result<ForbiddenSet> {
    let mut f = match &g.forbidden {
        Some(p) => parse_forbidden(&std::fs::read_to_string(p)?)?,
        None => ForbiddenSet::new(),
    };
    if g.misere {
        f = f.union(&misere_forbidden());
    }
    Ok(f)
}

/// The cached table when the cache file exists (it must cover `need`),
/// otherwise a fresh solve at `need`.
fn table(g: &Game, need: Option<u32>) -> cisnim::Result<PairTable> {
    if let Some(path) = g.cache.as_ref().filter(|p| p.exists()) {
        let t = load_table(&mut BufReader::new(File::open(path)?))?;
        if g.forbidden.is_some() || g.misere {
            let f = forbidden_set(g)?;
            if &f != t.forbidden() {
                return Err(Error::Domain(format!(
                    "cache {} was solved for F = {}, not {f}",
                    path.display(),
                    t.forbidden()
                )));
            }
        }
        return match need {
            Some(n) if n > t.n() => Err(Error::Range(format!(
                "cache {} covers n = {}, this command needs n = {n}",
                path.display(),
                t.n()
            ))),
            _ => Ok(t),
        };
    }
    let n = need.ok_or_else(|| Error::Domain("give --n or an existing --cache".into()))?;
    solve(n, &forbidden_set(g)?)
}

fn sink(out: &Option<PathBuf>) -> cisnim::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_file(path: &Path, t: &PairTable) -> cisnim::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    save_table(t, &mut w)?;
    w.flush()?;
    Ok(())
}

fn execute(g: &Game, command: Command) -> cisnim::Result<i32> {
    let mut out = sink(&g.out)?;
    let code = match command {
        Command::Solve { n } => {
            let t = solve(n, &forbidden_set(g)?)?;
            if let Some(path) = &g.cache {
                write_file(path, &t)?;
            }
            writeln!(
                out,
                "solved n={} |F|={} threshold={}",
                t.n(),
                t.forbidden().size(),
                t.forbidden().threshold()
            )?;
            EXIT_OK
        }
        Command::Classify { n, heaps } => {
            let [x, y, z]: [i64; 3] = heaps.try_into().map_err(|h: Vec<i64>| {
                Error::Domain(format!("classify needs 3 heaps, got {}", h.len()))
            })?;
            let p = canonicalize(x, y, z)?;
            let t = table(g, n.or(Some(p.b() + 1)))?;
            writeln!(out, "{}", t.classify(&p)?)?;
            EXIT_OK
        }
        Command::Figure { n, format } => {
            let t = table(g, Some(n))?;
            let format = match format {
                Format::Pgm => FigureFormat::Pgm,
                Format::Csv => FigureFormat::Csv,
            };
            emit::emit_figure(&t, n, format, &mut out)?;
            EXIT_OK
        }
        Command::PiSeries {
            base,
            kmax,
            h_based,
        } => {
            let top = base
                .checked_shl(kmax)
                .filter(|m| m >> kmax == base)
                .ok_or_else(|| Error::Resource(format!("{base} 2^{kmax} overflows")))?;
            let (report, fsize) = if h_based {
                let t = table(g, Some(top.saturating_add(1)))?;
                (
                    analysis::zeta_h_series(&t, base, kmax)?,
                    t.forbidden().size(),
                )
            } else if g.cache.as_ref().is_some_and(|p| p.exists()) {
                let t = table(g, Some(top))?;
                (
                    analysis::zeta_from_table(&t, base, kmax)?,
                    t.forbidden().size(),
                )
            } else {
                let f = forbidden_set(g)?;
                (analysis::zeta_series(&f, base, kmax)?, f.size())
            };
            emit::emit_series(&report, &mut out)?;
            series_summary(&report, fsize);
            EXIT_OK
        }
        Command::PiCurve { max } => {
            emit::emit_pi_curve(&forbidden_set(g)?, max, &mut out)?;
            EXIT_OK
        }
        Command::Verify {
            suite,
            max,
            truncate,
        } => verify(g, suite, max, truncate, &mut out)?,
        Command::Analyze { n, base, kmax } => analyze(g, n, base, kmax, &mut out)?,
        Command::Periodicity { n, max, x } => {
            let t = table(g, n.or(max).or(Some(x + 1)))?;
            let ymax = max.unwrap_or(t.n());
            match analysis::row_periodicity_probe(&t, x, ymax)? {
                Some((p, q)) => writeln!(out, "row {x}: period p={p} from q={q}")?,
                None => writeln!(out, "row {x}: no period within y < {ymax} (inconclusive)")?,
            }
            EXIT_OK
        }
        Command::RegionCount { region, kmax, n } => {
            let bx: RegionBox = region.parse()?;
            let need = n.or_else(|| bx.table_side(kmax));
            let t = table(g, need)?;
            writeln!(out, "k,count,ratio")?;
            for (k, count, ratio) in analysis::region_series(&t, &bx, kmax)? {
                writeln!(out, "{k},{count},{}", emit::decimal(&ratio))?;
            }
            EXIT_OK
        }
    };
    out.flush()?;
    Ok(code)
}

fn series_summary(report: &ScaleReport, fsize: usize) {
    eprintln!(
        "{} series, base {}: within bounds {}",
        report.kind,
        report.base,
        report.within_bounds()
    );
    if report.kind == analysis::ScaleKind::PiBased {
        let low = report.lower_bound_violations(fsize);
        eprintln!("lower bound (n2^k-|F|)^2/(24(n2^k)^2) violated at k = {low:?}");
    }
}

fn report_suite(out: &mut dyn Write, rep: &analysis::SuiteReport) -> io::Result<bool> {
    writeln!(out, "{} {rep}", if rep.passed() { "PASS" } else { "FAIL" })?;
    Ok(rep.passed())
}

fn verify(
    g: &Game,
    suite: Suite,
    max: u32,
    truncate: Option<u32>,
    out: &mut dyn Write,
) -> cisnim::Result<i32> {
    let mut ok = true;
    match suite {
        Suite::Oracle => {
            let f = forbidden_set(g)?;
            let oracle = solve_box(max, &f)?;
            let t = table(g, Some(max))?;
            let mut checked = 0u64;
            let mut mismatches = Vec::new();
            for p in oracle.positions() {
                checked += 1;
                let want = oracle.status(&p);
                let got = t.classify(&p)?;
                if want != Some(got) {
                    mismatches.push(format!("{p}: engine {got}, oracle {want:?}"));
                }
            }
            ok = mismatches.is_empty();
            writeln!(
                out,
                "{} oracle: {checked} positions below {max}, {} mismatches",
                pass(ok),
                mismatches.len()
            )?;
            for m in mismatches.iter().take(20) {
                writeln!(out, "  {m}")?;
            }
        }
        Suite::Thm5 => {
            let t = table(g, Some(max))?;
            for rep in [
                analysis::check_rowcol(&t),
                analysis::check_rowcol2(&t),
                analysis::check_xi0(&t),
                analysis::check_consistency(&t),
            ] {
                ok &= report_suite(out, &rep)?;
            }
        }
        Suite::Lemma6 => {
            let t = table(g, Some(max))?;
            let bound = max.min(t.n());
            ok &= report_suite(out, &analysis::check_b_plus_2l(&t, bound)?)?;
            ok &= report_suite(out, &analysis::check_b_lt_l(&t, bound)?)?;
            let tau = t.forbidden().threshold();
            let (mut steps, mut bad) = (0u64, Vec::new());
            for x in (tau + 1).min(bound as u64) as u32..bound {
                for y in 0..x {
                    let rep = analysis::phi_step_check(&t, x, y)?;
                    steps += 1;
                    if !rep.passed() || !rep.displacement_ok() {
                        bad.push(rep);
                    }
                }
            }
            ok &= bad.is_empty();
            writeln!(
                out,
                "{} U step: {steps} steps, {} violations",
                pass(bad.is_empty()),
                bad.len()
            )?;
            for rep in bad.iter().take(20) {
                writeln!(out, "  ({},{}): {:?}", rep.x, rep.y, rep.discrepancies)?;
            }
        }
        Suite::Identity => {
            let xmax = truncate.unwrap_or(2 * max.max(1) - 2);
            let t = table(g, Some(max.saturating_add(1)))?;
            let rep = analysis::identity_check(&t, max, xmax)?;
            ok = rep.holds();
            writeln!(
                out,
                "{} identity at m={}: 6pi = {}, m^2 - m - 2h + 4pi2 + 6pi1 = {} (h = {}, pi1 = {}, pi2 = {})",
                pass(ok),
                rep.m,
                rep.lhs,
                rep.rhs,
                rep.h,
                rep.counts.pi1,
                rep.counts.pi2
            )?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn analyze(
    g: &Game,
    n: u32,
    base: Option<u32>,
    kmax: u32,
    out: &mut dyn Write,
) -> cisnim::Result<i32> {
    let need = match base {
        Some(b) => n.max(b.saturating_add(2)),
        None => n,
    };
    let t = table(g, Some(need))?;
    let w = analysis::well_behaved_scan(&t, n.min(t.n()))?;
    writeln!(
        out,
        "well-behaved scan to {}: {}",
        w.scanned_bound, w.verdict
    )?;
    writeln!(
        out,
        "  diagonal points with r(x,x) >= x-1: {:?}",
        w.violations
    )?;
    match w.verdict {
        Verdict::WellBehavedUpToBound => writeln!(
            out,
            "  c1 candidate: {}",
            w.c1_candidate.unwrap_or_default()
        )?,
        Verdict::NotWellBehavedPattern => {
            writeln!(out, "  dyadic base: {}", w.dyadic_base.unwrap_or_default())?
        }
    }
    let mut code = EXIT_OK;
    if let Some(b) = base {
        let xmax = b
            .checked_shl(kmax + 1)
            .filter(|v| v >> (kmax + 1) == b)
            .ok_or_else(|| Error::Resource("n 2^(kmax+1) overflows".into()))?;
        let sn = analysis::build_sn(&t, b, xmax)?;
        let h0 = analysis::h_in(&sn, b)?;
        writeln!(out, "h-scaling from n={b}: h(n,n) = {h0}")?;
        for k in 1..=kmax {
            let hk = analysis::h_in(&sn, b << k)?;
            let literal = hk == (h0 << (2 * k));
            if !literal {
                code = EXIT_VERIFY;
            }
            writeln!(
                out,
                "  k={k}: h(n,n2^k) = {hk}, 4^k h(n,n) = {}, {}",
                h0 << (2 * k),
                if literal { "equal" } else { "differ" }
            )?;
            let half = analysis::halve_check_set(&sn, b, k)?;
            writeln!(
                out,
                "    halving map: {} offending points, counts {} -> {}",
                half.offending.len(),
                half.source,
                half.target
            )?;
        }
    }
    Ok(code)
}
