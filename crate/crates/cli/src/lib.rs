//! The `invlim` command line: reads map and thread files, runs one operation,
//! writes the result to standard output or `--out`.

pub mod config;
pub mod error;
pub mod svg;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use invlim_core::{
    backward_branches, certify_pair, certify_sequence, commutator_defect, compose_within,
    emit_plmap, emit_threads, fixed_points, format_rational, parse_plmap, parse_threads, ratio,
    BranchOptions, CertifyOptions, FormatError, InducedMap, MouronCheck, PlMap, ThreadDump,
    Verdict,
};

pub use config::{Command, RunConfig};
pub use error::CliError;
pub use svg::{emit_svg_plot, PlotOptions, PlotSubject};

const DEFAULT_CERTIFY_DEPTH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// The computation finished but its verdict says the hypotheses fail.
    HypothesisFailure,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::HypothesisFailure => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: Status,
    /// Diagnostics for standard error.
    pub notes: Vec<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            status: Status::Success,
            notes: Vec::new(),
        }
    }

    fn verdict(output: String, met: bool) -> Self {
        Outcome {
            output,
            status: if met {
                Status::Success
            } else {
                Status::HypothesisFailure
            },
            notes: Vec::new(),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn with_path(path: &Path, e: FormatError) -> CliError {
    let path = path.to_path_buf();
    match e {
        FormatError::Parse {
            line,
            column,
            reason,
        } => CliError::Parse {
            path,
            line,
            column,
            reason,
        },
        FormatError::Invalid(source) => CliError::Invalid { path, source },
    }
}

pub fn parse_plmap_file(path: &Path) -> Result<PlMap, CliError> {
    parse_plmap(&read(path)?).map_err(|e| with_path(path, e))
}

pub fn parse_threads_file(path: &Path, bonding: &Arc<PlMap>) -> Result<ThreadDump, CliError> {
    parse_threads(&read(path)?, bonding).map_err(|e| with_path(path, e))
}

/// Runs the configured command without writing anything.
pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    let budget = config.breakpoint_budget;
    match &config.command {
        Command::Eval { map, points } => {
            let m = parse_plmap_file(map)?;
            let mut out = String::new();
            for x in points {
                let _ = writeln!(out, "{}", m.eval(x));
            }
            Ok(Outcome::ok(out))
        }
        Command::Compose { outer, inner } => {
            let m = compose_within(&parse_plmap_file(outer)?, &parse_plmap_file(inner)?, budget)?;
            Ok(Outcome::ok(emit_plmap(&m)))
        }
        Command::Fix { map } => {
            let m = parse_plmap_file(map)?;
            Ok(Outcome::ok(format!("{}\n", fixed_points(&m))))
        }
        Command::Commute { f, g } => {
            let d = commutator_defect(&parse_plmap_file(f)?, &parse_plmap_file(g)?);
            let out = format!(
                "defect {}\nwitness {}\n",
                format_rational(&d.value),
                d.witness
            );
            Ok(Outcome::verdict(out, d.value == ratio(0, 1)))
        }
        Command::CertifyPair { f, g } => {
            let depths: Vec<usize> = (1..=config.depth.unwrap_or(DEFAULT_CERTIFY_DEPTH)).collect();
            let opts = CertifyOptions {
                breakpoint_budget: budget,
            };
            let cert = certify_pair(&parse_plmap_file(f)?, &parse_plmap_file(g)?, &depths, &opts)?;
            Ok(Outcome::verdict(cert.to_json(), cert.hypotheses_met))
        }
        Command::CertifySeq { maps } => {
            if maps.len() % 2 != 0 {
                return Err(CliError::Usage(
                    "certify-seq takes maps in pairs: F1 G1 F2 G2 ...".into(),
                ));
            }
            let stages = maps
                .chunks(2)
                .map(|pair| Ok((parse_plmap_file(&pair[0])?, parse_plmap_file(&pair[1])?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let report = certify_sequence(&stages, &config.slope_bound)?;
            let met = !report.has(Verdict::DefectsNonmonotone)
                && !report.has(Verdict::SeparationCollapsing);
            Ok(Outcome::verdict(report.to_json(), met))
        }
        Command::Threads { map } => {
            let (Some(root), Some(depth)) = (&config.root, config.depth) else {
                return Err(CliError::Usage("threads needs --root and --depth".into()));
            };
            let h = Arc::new(parse_plmap_file(map)?);
            let mut opts = BranchOptions::unbounded().with_workers(config.workers);
            if let Some(n) = config.max_branches {
                opts = opts.with_max_branches(n);
            }
            let tree = backward_branches(&h, root, depth, opts)?;
            let mut outcome = Outcome::ok(emit_threads(depth, root, &tree.branches));
            if tree.truncated {
                outcome
                    .notes
                    .push(format!("truncated after {} branches", tree.branches.len()));
            }
            for ib in &tree.interval_branches {
                let prefix: Vec<String> = ib.prefix.iter().map(ToString::to_string).collect();
                outcome.notes.push(format!(
                    "x{} ranges over {} after prefix ({}); one representative per component enumerated",
                    ib.position,
                    ib.set,
                    prefix.join(", ")
                ));
            }
            Ok(outcome)
        }
        Command::Induce {
            map,
            bonding,
            threads,
        } => {
            let k = parse_plmap_file(map)?;
            let h = Arc::new(parse_plmap_file(bonding)?);
            let dump = parse_threads_file(threads, &h)?;
            let induced = InducedMap::new(k, h)?;
            let images = dump
                .threads
                .iter()
                .map(|t| induced.apply(t))
                .collect::<Result<Vec<_>, _>>()?;
            let root = induced.map().eval(&dump.root);
            Ok(Outcome::ok(emit_threads(dump.depth, &root, &images)))
        }
        Command::Mouron { f, g, threads } => {
            let checker = MouronCheck::new(&parse_plmap_file(f)?, &parse_plmap_file(g)?)?;
            let dump = parse_threads_file(threads, checker.bonding())?;
            let mut out = String::new();
            let mut passed = 0;
            for t in &dump.threads {
                if checker.check(t)? {
                    passed += 1;
                } else {
                    let coords: Vec<String> = t.coords().iter().map(ToString::to_string).collect();
                    let _ = writeln!(out, "fail {}", coords.join(" "));
                }
            }
            let total = dump.threads.len();
            let _ = writeln!(out, "mouron {passed}/{total} threads pass");
            Ok(Outcome::verdict(out, passed == total))
        }
        Command::Plot {
            map,
            threads,
            scale,
        } => {
            let m = parse_plmap_file(map)?;
            let opts = PlotOptions { scale: *scale };
            let doc = match threads {
                None => emit_svg_plot(PlotSubject::Map(&m), &opts),
                Some(path) => {
                    let dump = parse_threads_file(path, &Arc::new(m))?;
                    if dump.depth < 2 {
                        return Err(CliError::Usage("thread plots need depth at least 2".into()));
                    }
                    emit_svg_plot(PlotSubject::Threads(&dump.threads), &opts)
                }
            };
            Ok(Outcome::ok(doc))
        }
    }
}

fn deliver(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// Runs the command, writes its output and maps the result to an exit status:
/// 0 success, 2 hypothesis failure, 1 operational error.
pub fn run(config: &RunConfig) -> ExitCode {
    let result = execute(config).and_then(|outcome| {
        deliver(config.out.as_ref(), &outcome.output)?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            for note in &outcome.notes {
                eprintln!("note: {note}");
            }
            ExitCode::from(outcome.status.exit_code())
        }
        Err(e) => {
            eprintln!("error[E{:02}]: {e}", e.code());
            ExitCode::from(1)
        }
    }
}
