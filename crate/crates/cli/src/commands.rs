use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use thicket::barcode::{dualize, global_sections, global_sections_c};
use thicket::circle::{
    circle_distance, circle_global_sections, circle_seed, circle_thicken, fourier_sato, CircleSheaf, Direction,
};
use thicket::extend::{line_seed, Fault, SeedFamily, ThickeningAction};
use thicket::interleave::{distance, probe, Budget, DistanceBounds, Probed, DEFAULT_CAP};
use thicket::io::{parse, serialize, Document, Payload, SeedSpec, Space};
use thicket::pl::{
    lipschitz_experiment, pushforward_shriek, stability_experiment, validate_pushforward, ExperimentReport, PLMap,
    Verdict,
};
use thicket::plot::{barcode_svg, circle_svg};
use thicket::suites::{suite, Row, DEFAULT_SEED, SUITES};
use thicket::thicken::thicken;
use thicket::{Error, GradedBarcode, ParseError, Scalar};

/// Environment variable holding the number of suite workers.
pub const WORKERS_ENV: &str = "THICKET_WORKERS";

#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Internal(String),
}

impl Failure {
    pub fn status(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Internal(_) => 70,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invalid(m) => write!(f, "{m}"),
            Failure::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::SeedViolation(_) | Error::InconsistentModel(_) => Failure::Internal(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

fn rational(s: &str) -> std::result::Result<Scalar, String> {
    s.parse().map_err(|e: ParseError| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "thicket", version, about = "Thickenings, interleaving distances and pushforwards of barcodes")]
pub struct Cli {
    /// Record wall-clock timings in reports and CSV rows (outputs are then
    /// not reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaultArg {
    ZeroRestriction,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Thicken a line barcode by a (negative a shrinks).
    Thicken {
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        a: Scalar,
        input: PathBuf,
        output: Option<PathBuf>,
    },
    /// Verdier dual of a line barcode.
    Dual { input: PathBuf, output: Option<PathBuf> },
    /// Global sections of a line barcode or circle sheaf.
    Rgamma {
        /// Compactly supported sections.
        #[arg(long)]
        compact: bool,
        input: PathBuf,
    },
    /// Bounds on the interleaving distance, as a CSV row.
    Distance {
        #[arg(long, default_value_t = DEFAULT_CAP)]
        budget: usize,
        f: PathBuf,
        g: PathBuf,
    },
    /// Search for an a-interleaving and emit a report.
    Interleave {
        #[arg(long, value_parser = rational)]
        a: Scalar,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        budget: usize,
        f: PathBuf,
        g: PathBuf,
        output: Option<PathBuf>,
    },
    /// Proper pushforward along a PL map.
    Push {
        #[arg(long)]
        map: PathBuf,
        input: PathBuf,
        output: Option<PathBuf>,
    },
    /// Stability experiment for two maps and one barcode.
    Stability {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        budget: usize,
        input: PathBuf,
        output: Option<PathBuf>,
    },
    /// Lipschitz experiment for one map and an a-interleaved pair.
    Lipschitz {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_parser = rational)]
        a: Scalar,
        /// A report whose certificate interleaves the inputs at a.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        budget: usize,
        f1: PathBuf,
        f2: PathBuf,
        output: Option<PathBuf>,
    },
    /// Thicken a circle sheaf.
    CircleThicken {
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        a: Scalar,
        input: PathBuf,
        output: Option<PathBuf>,
    },
    /// Fourier–Sato transform of a circle sheaf.
    Fs {
        #[arg(long)]
        inverse: bool,
        input: PathBuf,
        output: Option<PathBuf>,
    },
    /// Bounds on the circle interleaving distance, as a CSV row.
    CircleDistance {
        #[arg(long, default_value_t = DEFAULT_CAP)]
        budget: usize,
        /// Largest parameter scanned.
        #[arg(long, value_parser = rational)]
        bound: Option<Scalar>,
        f: PathBuf,
        g: PathBuf,
    },
    /// Apply the extension of a seed family, after checking its coherence.
    Extend {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        a: Scalar,
        #[arg(long, value_enum, hide = true)]
        fault: Option<FaultArg>,
        input: PathBuf,
        output: Option<PathBuf>,
    },
    /// Run a named invariant suite and write a CSV report (`list` for names).
    Suite {
        name: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a barcode or circle sheaf as SVG.
    Plot {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> Outcome<Document> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn barcode(path: &Path) -> Outcome<GradedBarcode> {
    match read(path)?.payload {
        Payload::Barcode(f) => Ok(f),
        _ => Err(Failure::Invalid(format!("{}: expected a line barcode", path.display()))),
    }
}

fn circle(path: &Path) -> Outcome<CircleSheaf> {
    match read(path)?.payload {
        Payload::Circle(f) => Ok(f),
        _ => Err(Failure::Invalid(format!("{}: expected a circle sheaf", path.display()))),
    }
}

fn map(path: &Path) -> Outcome<PLMap> {
    match read(path)?.payload {
        Payload::Map(f) => Ok(f),
        _ => Err(Failure::Invalid(format!("{}: expected a PL map", path.display()))),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Invalid(format!("stdout: {e}"))),
    }
}

fn emit_doc(output: Option<&Path>, doc: &Document) -> Outcome {
    emit(output, &serialize(doc))
}

pub const CSV_COLUMNS: [&str; 6] = ["inputs", "lower", "upper", "exact", "verdict", "micros"];

fn csv_text(rows: &[Row], timing: bool) -> Outcome<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let bad = |e: csv::Error| Failure::Internal(format!("csv: {e}"));
    w.write_record(CSV_COLUMNS).map_err(bad)?;
    for r in rows {
        let micros = if timing { r.micros.to_string() } else { "0".into() };
        w.write_record([&r.inputs, &r.lower, &r.upper, &r.exact, r.verdict.name(), &micros])
            .map_err(bad)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Failure::Internal(e.to_string()))
}

fn distance_row<W>(inputs: String, d: &DistanceBounds<W>, micros: u128) -> Row {
    Row {
        inputs,
        lower: d.lower.to_string(),
        upper: d.upper.to_string(),
        exact: d.exact.to_string(),
        verdict: if d.exact { Verdict::Pass } else { Verdict::Inconclusive },
        micros,
    }
}

/// Runs the coherence diagrams on `x`, then applies the extension.
fn extend_checked<A: ThickeningAction>(seed: &SeedFamily<A>, alpha: &Scalar, a: &Scalar, x: &A::Object) -> Outcome<A::Object> {
    let samples: Vec<Scalar> = [0, 1, 2].iter().map(|&k| alpha * &Scalar::new(k, 2)).collect();
    let report = seed.coherence_check(&samples, std::slice::from_ref(x));
    if !report.passed() {
        let (d, why) = &report.failures[0];
        return Err(Failure::Internal(format!("seed coherence diagram {d} fails: {why}")));
    }
    Ok(seed.extend_apply(a, x)?)
}

fn workers() -> Outcome<usize> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .parse()
            .ok()
            .filter(|&n: &usize| n > 0)
            .ok_or_else(|| Failure::Invalid(format!("{WORKERS_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn clock(report: &mut ExperimentReport, timing: bool) {
    if !timing {
        report.micros = 0;
    }
}

pub fn run(cli: Cli) -> Outcome {
    let timing = cli.timing;
    match cli.command {
        Command::Thicken { a, input, output } => {
            let f = barcode(&input)?;
            emit_doc(output.as_deref(), &Document::barcode(thicken(&f, &a)))
        }
        Command::Dual { input, output } => {
            let f = barcode(&input)?;
            emit_doc(output.as_deref(), &Document::barcode(dualize(&f)))
        }
        Command::Rgamma { compact, input } => {
            let dims = match read(&input)?.payload {
                Payload::Barcode(f) if compact => global_sections_c(&f),
                Payload::Barcode(f) => global_sections(&f),
                Payload::Circle(f) => circle_global_sections(&f),
                _ => return Err(Failure::Invalid(format!("{}: expected a barcode or circle sheaf", input.display()))),
            };
            emit(None, &format!("{dims}\n"))
        }
        Command::Distance { budget, f, g } => {
            let (x, y) = (barcode(&f)?, barcode(&g)?);
            let start = std::time::Instant::now();
            let d = distance(&x, &y, Budget { cap: budget })?;
            let row = distance_row(format!("F={x} G={y}"), &d, start.elapsed().as_micros());
            emit(None, &csv_text(&[row], timing)?)
        }
        Command::Interleave { a, budget, f, g, output } => {
            let (x, y) = (barcode(&f)?, barcode(&g)?);
            let start = std::time::Instant::now();
            let (verdict, certificate, note) = match probe(&x, &y, &a, Budget { cap: budget })? {
                Probed::Feasible(c) => (Verdict::Pass, Some(c), String::new()),
                Probed::Infeasible => (Verdict::Fail, None, "exhaustive search proves no certificate exists".into()),
                Probed::Unknown => (Verdict::Inconclusive, None, "search exceeds the budget".into()),
            };
            let mut r = ExperimentReport {
                experiment: "interleave".into(),
                inputs: vec![("F".into(), x.to_string()), ("G".into(), y.to_string())],
                bounds: vec![("a".into(), thicket::ExtendedScalar::Finite(a))],
                certificate,
                verdict,
                note,
                micros: start.elapsed().as_micros(),
            };
            clock(&mut r, timing);
            emit_doc(output.as_deref(), &Document::report(r, x.characteristic()))
        }
        Command::Push { map: m, input, output } => {
            let (f, x) = (map(&m)?, barcode(&input)?);
            let pushed = pushforward_shriek(&f, &x)?;
            if !validate_pushforward(&f, &x, &pushed) {
                return Err(Failure::Internal(format!("pushforward {pushed} disagrees with the fibre oracle")));
            }
            emit_doc(output.as_deref(), &Document::barcode(pushed))
        }
        Command::Stability { f, g, budget, input, output } => {
            let x = barcode(&input)?;
            let mut r = stability_experiment(&map(&f)?, &map(&g)?, &x, Budget { cap: budget })?;
            clock(&mut r, timing);
            let failed = r.verdict == Verdict::Fail;
            emit_doc(output.as_deref(), &Document::report(r, x.characteristic()))?;
            if failed {
                return Err(Failure::Internal("no certificate at the sup distance".into()));
            }
            Ok(())
        }
        Command::Lipschitz { map: m, a, certificate, budget, f1, f2, output } => {
            let (x1, x2) = (barcode(&f1)?, barcode(&f2)?);
            let cert = match certificate {
                None => None,
                Some(p) => match read(&p)?.payload {
                    Payload::Report(ExperimentReport { certificate: Some(c), .. }) => Some(c),
                    _ => return Err(Failure::Invalid(format!("{}: expected a report with a certificate", p.display()))),
                },
            };
            let mut r = lipschitz_experiment(&map(&m)?, &x1, &x2, &a, cert.as_ref(), Budget { cap: budget })?;
            clock(&mut r, timing);
            let failed = r.verdict == Verdict::Fail;
            emit_doc(output.as_deref(), &Document::report(r, x1.characteristic()))?;
            if failed {
                return Err(Failure::Internal("no certificate at δa".into()));
            }
            Ok(())
        }
        Command::CircleThicken { a, input, output } => {
            let f = circle(&input)?;
            emit_doc(output.as_deref(), &Document::circle(circle_thicken(&f, &a)))
        }
        Command::Fs { inverse, input, output } => {
            let f = circle(&input)?;
            let dir = if inverse { Direction::Inverse } else { Direction::Forward };
            emit_doc(output.as_deref(), &Document::circle(fourier_sato(&f, dir)))
        }
        Command::CircleDistance { budget, bound, f, g } => {
            let (x, y) = (circle(&f)?, circle(&g)?);
            let start = std::time::Instant::now();
            let d = circle_distance(&x, &y, Budget { cap: budget }, bound)?;
            let row = distance_row(format!("F={x} G={y}"), &d, start.elapsed().as_micros());
            emit(None, &csv_text(&[row], timing)?)
        }
        Command::Extend { seed, a, fault, input, output } => {
            let seed_doc = read(&seed)?;
            let (space, SeedSpec { alpha, mode }) = match seed_doc.payload {
                Payload::Seed(s) => (seed_doc.space, s),
                _ => return Err(Failure::Invalid(format!("{}: expected a seed", seed.display()))),
            };
            let fault = match fault {
                Some(FaultArg::ZeroRestriction) => Fault::ZeroRestriction,
                None => Fault::None,
            };
            match (space, read(&input)?.payload) {
                (Space::Line, Payload::Barcode(f)) => {
                    let s = line_seed(alpha.clone(), mode, fault)?;
                    let out = extend_checked(&s, &alpha, &a, &f)?;
                    emit_doc(output.as_deref(), &Document::barcode(out))
                }
                (Space::Circle(c), Payload::Circle(f)) => {
                    if &c != f.circumference() || alpha != &c / &Scalar::int(8) {
                        return Err(Failure::Invalid(format!(
                            "circle seeds have step C/8 = {} on the input's circle",
                            f.circumference() / &Scalar::int(8)
                        )));
                    }
                    let s = circle_seed(&c, mode, fault)?;
                    let out = extend_checked(&s, &alpha, &a, &f)?;
                    emit_doc(output.as_deref(), &Document::circle(out))
                }
                _ => Err(Failure::Invalid("seed space and input document do not match".into())),
            }
        }
        Command::Suite { name, seed, out } => {
            if name == "list" {
                let names: String = SUITES.iter().map(|s| format!("{}\t{}\t{}\n", s.name, s.cases, s.about)).collect();
                return emit(None, &names);
            }
            let s = suite(&name).ok_or_else(|| Failure::Invalid(format!("unknown suite `{name}` (try `suite list`)")))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers()?)
                .build()
                .map_err(|e| Failure::Internal(e.to_string()))?;
            let rows: Vec<Row> = pool.install(|| (0..s.cases).into_par_iter().map(|i| s.run_case(seed, i)).collect());
            emit(out.as_deref(), &csv_text(&rows, timing)?)?;
            let failed = rows.iter().filter(|r| r.verdict == Verdict::Fail).count();
            if failed > 0 {
                return Err(Failure::Internal(format!("{failed} of {} cases of `{name}` fail", rows.len())));
            }
            Ok(())
        }
        Command::Plot { input, out } => {
            let svg = match read(&input)?.payload {
                Payload::Barcode(f) => barcode_svg(&f),
                Payload::Circle(f) => circle_svg(&f),
                _ => return Err(Failure::Invalid(format!("{}: expected a barcode or circle sheaf", input.display()))),
            };
            emit(Some(&out), &svg)
        }
    }
}
