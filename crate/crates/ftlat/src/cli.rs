//! Argument parsing and the commands.
//!
//! Exit codes: 0 success, 1 validation violations, 2 usage, I/O or parse
//! errors. Results go to stdout or `--out`; progress goes to stderr.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ftlat_core::exrec::{build_cnot_exrec_with, AlphaMatrix, Engine, ExRec, LocationPolicy};
use ftlat_core::lattice::{render, validate, ValidationReport};
use ftlat_core::threshold::{latency_report, logical_rate, memory_weights, parse_weight, ThresholdReport, Weight};
use serde::Serialize;

use crate::alpha_io::{self, AlphaFile, PAPER_LOCATIONS};
use crate::report::{deviations_csv, LatencyOutput, MalignantSummary, ThresholdOutput};
use crate::{load_schedule, print_schedule, sweep, Error, Mode, SCHEMA_VERSION, TOOL_VERSION};

#[derive(Parser, Debug)]
#[command(name = "ftlat", version, about = "Fault-tolerance analysis of the 9-qubit Bacon-Shor code on a 2D lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct PolicyArgs {
    /// Also count empty sites of a part before they first hold a qubit.
    #[arg(long)]
    pub idle_before_live: bool,
    /// Also count empty sites of a part after their last qubit leaves.
    #[arg(long)]
    pub idle_after_live: bool,
}

impl PolicyArgs {
    fn policy(self) -> LocationPolicy {
        LocationPolicy { idle_before_live: self.idle_before_live, idle_after_live: self.idle_after_live }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExRecKind {
    Cnot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a schedule against the locality, collision and lifetime rules.
    Validate {
        /// Schedule file, or `builtin:<name>`.
        schedule: String,
        #[command(flatten)]
        output: Output,
    },
    /// Draw the lattice after a step.
    Render {
        schedule: String,
        /// Step to draw (0 is the initial layout); all steps if omitted.
        #[arg(long)]
        step: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Write a schedule in canonical file form.
    Print {
        schedule: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fault locations of the CNOT exRec or of any schedule.
    Locations {
        #[arg(long, value_enum, default_value_t = ExRecKind::Cnot)]
        exrec: ExRecKind,
        /// Count the locations of this schedule instead.
        #[arg(long)]
        schedule: Option<String>,
        /// List every location, not just the census.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        policy: PolicyArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Exhaustive single- and pair-fault sweep of the exRec.
    Malignant {
        #[arg(long, value_enum, default_value_t = ExRecKind::Cnot)]
        exrec: ExRecKind,
        /// Worker threads.
        #[arg(long, env = "FTLAT_JOBS", default_value_t = default_jobs())]
        jobs: usize,
        /// Directory for alpha.csv, alpha.json, summary.json and deviations.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Accuracy threshold from an α matrix.
    Threshold {
        #[command(flatten)]
        alpha: AlphaArgs,
        /// Memory error rate relative to the other locations, e.g. 0.1 or 1/10.
        #[arg(long, default_value = "1")]
        memory_ratio: String,
        /// All seven relative rates, comma separated; overrides --memory-ratio.
        #[arg(long)]
        weights: Option<String>,
        /// Physical rate for the per-level table.
        #[arg(long, default_value_t = 1e-6)]
        physical_rate: f64,
        #[arg(long, default_value_t = 3)]
        levels: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Latency table, CNOT latency ratio per level and optional logical rates.
    Report {
        #[arg(long, default_value_t = 3)]
        levels: u32,
        /// α source for the logical-rate table; omitted means no such table.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        physical_rate: f64,
        #[arg(long, env = "FTLAT_JOBS", default_value_t = default_jobs())]
        jobs: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Logical error rate ε0 (ε/ε0)^(2^k) at each level.
    LogicalRate {
        /// Physical error rate.
        #[arg(long)]
        eps: f64,
        /// Threshold; alternatively derive it with --alpha.
        #[arg(long, conflicts_with = "alpha")]
        eps0: Option<f64>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 3)]
        levels: u32,
        #[arg(long, env = "FTLAT_JOBS", default_value_t = default_jobs())]
        jobs: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug, Clone)]
pub struct AlphaArgs {
    /// `paper`, `regenerated` or a CSV/JSON matrix file.
    #[arg(long)]
    pub alpha: String,
    /// Location count for B; defaults to the count that goes with the source.
    #[arg(long)]
    pub locations: Option<u64>,
    #[arg(long, env = "FTLAT_JOBS", default_value_t = default_jobs())]
    pub jobs: usize,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(p.display().to_string(), e)),
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes()).and_then(|_| o.flush()).map_err(|e| Error::Io("stdout".into(), e))
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema_version: u32,
    tool_version: &'a str,
    #[serde(flatten)]
    body: T,
}

fn versioned<T: Serialize>(body: T) -> String {
    json(&Versioned { schema_version: SCHEMA_VERSION, tool_version: TOOL_VERSION, body })
}

/// Builds the exRec and its engine, reporting the time on stderr.
fn engine(policy: LocationPolicy) -> Result<(ExRec, Engine), Error> {
    let t = Instant::now();
    let x = build_cnot_exrec_with(policy);
    let e = Engine::new(&x)?;
    eprintln!("ftlat: exRec with {} locations compiled in {:.2?}", x.locations().len(), t.elapsed());
    Ok((x, e))
}

fn run_sweep(e: &Engine, jobs: usize) -> Result<AlphaMatrix, Error> {
    let t = Instant::now();
    let step = 10;
    let shown = std::sync::atomic::AtomicUsize::new(0);
    let m = sweep::sweep(e, jobs, |done, total| {
        let pct = done * 100 / total.max(1);
        let mark = pct / step * step;
        if shown.fetch_max(mark, std::sync::atomic::Ordering::Relaxed) < mark {
            eprintln!("ftlat: pair sweep {mark}%");
        }
    })?;
    eprintln!("ftlat: pair sweep finished in {:.2?} on {jobs} workers", t.elapsed());
    Ok(m)
}

/// Resolves an α source to a matrix, a location count and a name.
fn resolve_alpha(source: &str, locations: Option<u64>, jobs: usize) -> Result<(AlphaMatrix, u64, String), Error> {
    let (m, n, name) = match source {
        "paper" => (alpha_io::paper_alpha(), PAPER_LOCATIONS, "paper".to_string()),
        "regenerated" => {
            let (x, e) = engine(LocationPolicy::default())?;
            (run_sweep(&e, jobs)?, x.locations().len() as u64, "regenerated".to_string())
        }
        path => {
            let (m, n) = alpha_io::read_alpha(Path::new(path))?;
            (m, n.unwrap_or(PAPER_LOCATIONS), path.to_string())
        }
    };
    Ok((m, locations.unwrap_or(n), name))
}

fn parse_weights(memory_ratio: &str, weights: Option<&str>) -> Result<[Weight; 7], Error> {
    match weights {
        Some(list) => {
            let ws: Vec<Weight> = list.split(',').map(parse_weight).collect::<Result<_, _>>()?;
            ws.try_into().map_err(|v: Vec<Weight>| Error::Usage(format!("--weights needs 7 values, got {}", v.len())))
        }
        None => Ok(memory_weights(parse_weight(memory_ratio)?)),
    }
}

fn validation_output(name: &str, r: &ValidationReport, f: Format) -> String {
    match f {
        Format::Text => {
            let mut s = String::new();
            if r.ok {
                s.push_str(&format!("{name}: ok\n"));
            } else {
                s.push_str(&format!("{name}: {} violation(s)\n", r.violations.len()));
                for v in &r.violations {
                    s.push_str(&format!("  step {} {}: {}\n", v.step, v.rule, v.description));
                }
            }
            s
        }
        Format::Json => versioned(r),
        Format::Csv => csv_rows(
            &["step", "rule", "description"],
            r.violations.iter().map(|v| [v.step.to_string(), v.rule.to_string(), v.description.clone()]),
        ),
    }
}

/// Runs one command and returns its exit code.
pub fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Validate { schedule, output } => {
            let s = load_schedule(&schedule, Mode::Lenient)?;
            let r = validate(&s);
            emit(&output.out, &validation_output(&s.name, &r, output.format))?;
            Ok(if r.ok { 0 } else { 1 })
        }
        Command::Render { schedule, step, output } => {
            let s = load_schedule(&schedule, Mode::Strict)?;
            let steps: Vec<usize> = match step {
                Some(t) => vec![t],
                None => (0..=s.latency()).collect(),
            };
            let grids = steps.iter().map(|&t| render(&s, t).map(|g| (t, g))).collect::<Result<Vec<_>, _>>()?;
            let text = match output.format {
                Format::Text => grids.iter().map(|(_, g)| g.as_str()).collect::<Vec<_>>().join("\n"),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Grid<'a> {
                        step: usize,
                        grid: &'a str,
                    }
                    versioned(serde_json::json!({
                        "schedule": s.name,
                        "steps": grids.iter().map(|(t, g)| Grid { step: *t, grid: g }).collect::<Vec<_>>(),
                    }))
                }
                Format::Csv => return Err(Error::Usage("render has no CSV form".into())),
            };
            emit(&output.out, &text)?;
            Ok(0)
        }
        Command::Print { schedule, out } => {
            let s = load_schedule(&schedule, Mode::Strict)?;
            emit(&out, &print_schedule(&s))?;
            Ok(0)
        }
        Command::Locations { exrec: ExRecKind::Cnot, schedule, list, policy, output } => {
            let (name, locs) = match schedule {
                Some(src) => {
                    let s = load_schedule(&src, Mode::Strict)?;
                    let locs = ftlat_core::exrec::locations(&s, policy.policy());
                    (s.name, locs)
                }
                None => ("cnot exRec".to_string(), build_cnot_exrec_with(policy.policy()).locations().to_vec()),
            };
            let census = ftlat_core::exrec::locations_by_type(&locs);
            let counts = crate::report::type_counts(&census);
            let text = match output.format {
                Format::Text => {
                    let mut s = format!("{name}\n");
                    for t in &counts {
                        s.push_str(&format!("  {} {:<10} {:>5}\n", t.number, t.name, t.count));
                    }
                    s.push_str(&format!("total: {}\n", locs.len()));
                    if list {
                        for l in &locs {
                            let b = l.sites.1.map(|b| format!(" {b}")).unwrap_or_default();
                            s.push_str(&format!("{:>5} {:<10} step {:>2} {}{b}\n", l.id, l.loc_type.name(), l.step + 1, l.sites.0));
                        }
                    }
                    s
                }
                Format::Json => versioned(serde_json::json!({
                    "schedule": name,
                    "policy": policy.policy(),
                    "census": counts,
                    "total": locs.len(),
                    "locations": if list { Some(&locs) } else { None },
                })),
                Format::Csv => csv_rows(
                    &["id", "type", "number", "step", "site", "site2", "block"],
                    locs.iter().map(|l| {
                        [
                            l.id.to_string(),
                            l.loc_type.name().to_string(),
                            l.loc_type.number().to_string(),
                            (l.step + 1).to_string(),
                            l.sites.0.to_string(),
                            l.sites.1.map(|b| b.to_string()).unwrap_or_default(),
                            l.block.to_string(),
                        ]
                    }),
                ),
            };
            emit(&output.out, &text)?;
            Ok(0)
        }
        Command::Malignant { exrec: ExRecKind::Cnot, jobs, out, format, policy } => {
            let (x, e) = engine(policy.policy())?;
            let singles = e.single_faults();
            eprintln!("ftlat: {} single faults, {} failures", singles.faults_tried, singles.failures.len());
            let alpha = run_sweep(&e, jobs)?;
            let paper = alpha_io::paper_alpha();
            let summary = MalignantSummary::new(policy.policy(), x.census(), &singles, &alpha, &paper, PAPER_LOCATIONS);
            if let Some(dir) = &out {
                let io = |p: &Path, e| Error::Io(p.display().to_string(), e);
                std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
                let write = |name: &str, text: &str| {
                    let p = dir.join(name);
                    std::fs::write(&p, text).map_err(|e| io(&p, e))
                };
                write("alpha.csv", &alpha_io::to_csv(&alpha))?;
                write("alpha.json", &json(&AlphaFile::new(&alpha, Some(x.census()))))?;
                write("summary.json", &json(&summary))?;
                write("deviations.csv", &deviations_csv(&summary.deviations))?;
            }
            let text = match format {
                Format::Text => summary.to_text(),
                Format::Json => json(&summary),
                Format::Csv => alpha_io::to_csv(&alpha),
            };
            emit(&None, &text)?;
            Ok(0)
        }
        Command::Threshold { alpha, memory_ratio, weights, physical_rate, levels, output } => {
            let w = parse_weights(&memory_ratio, weights.as_deref())?;
            let (m, n, name) = resolve_alpha(&alpha.alpha, alpha.locations, alpha.jobs)?;
            let r = ThresholdOutput::new(ThresholdReport::new(&name, &m, n, &w, physical_rate, levels)?);
            let text = match output.format {
                Format::Text => r.to_text(),
                Format::Json => json(&r),
                Format::Csv => r.to_csv(),
            };
            emit(&output.out, &text)?;
            Ok(0)
        }
        Command::Report { levels, alpha, physical_rate, jobs, output } => {
            let logical = match alpha {
                Some(src) => {
                    let (m, n, name) = resolve_alpha(&src, None, jobs)?;
                    let w = memory_weights(Weight::from_integer(1));
                    Some(ThresholdOutput::new(ThresholdReport::new(&name, &m, n, &w, physical_rate, levels)?))
                }
                None => None,
            };
            let r = LatencyOutput::new(latency_report(levels)?, logical);
            let text = match output.format {
                Format::Text => r.to_text(),
                Format::Json => json(&r),
                Format::Csv => r.to_csv(),
            };
            emit(&output.out, &text)?;
            Ok(0)
        }
        Command::LogicalRate { eps, eps0, alpha, levels, jobs, output } => {
            let eps0 = match (eps0, alpha) {
                (Some(e), _) => e,
                (None, Some(src)) => {
                    let (m, n, _) = resolve_alpha(&src, None, jobs)?;
                    ftlat_core::threshold::threshold_equal(&m, n)?
                }
                (None, None) => return Err(Error::Usage("give --eps0 or --alpha".into())),
            };
            if !(eps.is_finite() && eps >= 0.0 && eps0.is_finite() && eps0 > 0.0) {
                return Err(Error::Usage("rates must be finite, eps >= 0 and eps0 > 0".into()));
            }
            let rates: Vec<(u32, f64)> = (0..=levels).map(|k| (k, logical_rate(eps, eps0, k))).collect();
            let text = match output.format {
                Format::Text => {
                    let mut s = format!("eps = {eps:e}, eps0 = {eps0:e}\n");
                    for (k, r) in &rates {
                        s.push_str(&format!("  level {k}: {r:.4e}\n"));
                    }
                    s
                }
                Format::Json => versioned(serde_json::json!({
                    "eps": eps,
                    "eps0": eps0,
                    "levels": rates.iter().map(|(k, r)| serde_json::json!({"level": k, "rate": r})).collect::<Vec<_>>(),
                })),
                Format::Csv => csv_rows(&["level", "rate"], rates.iter().map(|(k, r)| [k.to_string(), r.to_string()])),
            };
            emit(&output.out, &text)?;
            Ok(0)
        }
    }
}
