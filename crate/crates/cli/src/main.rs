use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gridcomplex::complex::{independence_complex, DEFAULT_FACE_BUDGET};
use gridcomplex::euler::{chi_reduced, ChiMethod};
use gridcomplex::homology::{graph_betti, BettiMethod};
use gridcomplex::io::parse_graph;
use gridcomplex::morse_ops::{
    builtin_certificate, builtin_ids, make_replacement, replay, Certificate, CheckLevel,
    MarkedPatch, ReplacementKind, ReplayOutcome,
};
use gridcomplex::verify::{
    appendix_lines, corollary_lines, oracle_lines, property_results, run_suite, SuiteConfig,
    SuiteLine, SuiteReport,
};
use gridcomplex::{Error, FamilySpec, FamilyTag, Graph};

const EXIT_FAIL: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_INPUT: u8 = 3;

// A closed pipe (`gridcomplex ... | head`) ends the run quietly.
fn emit(args: std::fmt::Arguments) {
    if let Err(e) = io::stdout().lock().write_fmt(args) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(EXIT_INPUT as i32);
    }
}

macro_rules! out {
    ($($arg:tt)*) => { emit(format_args!("{}\n", format_args!($($arg)*))) };
}

#[derive(Parser)]
#[command(
    name = "gridcomplex",
    version,
    about = "Independence complexes of grid graphs"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Enumerate,
    Recursive,
}

#[derive(Clone, Copy, ValueEnum)]
enum HomologyMethod {
    Auto,
    Explicit,
    Morse,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    None,
    Chi,
    Betti,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Corollaries,
    Appendix,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print a family member as graph JSON, e.g. `gen C 3 4` or `gen MH1 5`.
    Gen {
        family: String,
        m: usize,
        /// Column count; omit for the single-parameter families.
        n: Option<usize>,
    },
    /// Reduced Euler characteristic of I(G).
    Chi {
        /// Graph JSON file, `-` for stdin, or a family reference such as `P:4:10`.
        graph: String,
        #[arg(long, value_enum, default_value = "recursive")]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_FACE_BUDGET)]
        budget: usize,
    },
    /// Reduced Betti numbers of I(G) over GF(p).
    Betti {
        graph: String,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, value_enum, default_value = "auto")]
        method: HomologyMethod,
        #[arg(long, default_value_t = DEFAULT_FACE_BUDGET)]
        budget: usize,
    },
    /// List the faces of I(G), one per line.
    Complex {
        graph: String,
        #[arg(long, default_value_t = DEFAULT_FACE_BUDGET)]
        budget: usize,
    },
    /// Replay a certificate file, or a built-in one as `builtin:<id>`.
    Replay {
        #[arg(required_unless_present = "list")]
        certificate: Option<String>,
        #[arg(long, value_enum, default_value = "chi")]
        check: Check,
        /// Print the certificate JSON instead of replaying it.
        #[arg(long)]
        export: bool,
        /// List the built-in certificate ids and exit.
        #[arg(long, conflicts_with = "export")]
        list: bool,
    },
    /// Build the replacement graph H and its certificate for a marked patch.
    MakeCert {
        #[arg(value_parser = ["thm1", "thm2", "thm3"])]
        kind: String,
        graph: String,
        #[arg(long, num_args = 1.., required = true)]
        patch: Vec<String>,
        /// Allow the missing vertical `a`-`abar` (thm2 only).
        #[arg(long)]
        relaxed: bool,
    },
    /// Run the corollary cases, the appendix identities, or the whole suite.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        budget: Option<usize>,
        /// Primes for the Betti checks; repeat the flag for several.
        #[arg(long)]
        p: Vec<u64>,
    },
    /// Randomized property suites and the collapse oracle on the small built-ins.
    Selftest {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Something the user handed in could not be used.
enum Failure {
    Input(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPatch(_)
            | Error::FaceBudget { .. }
            | Error::TooManyVertices { .. }
            | Error::MissingEdge(..)
            | Error::EdgeExists(..)
            | Error::LabelClash(_)
            | Error::Oracle(_) => Failure::Precondition(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read_text(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{arg}: {e}")))
}

fn load_graph(arg: &str) -> Result<Graph, Failure> {
    if arg != "-" && !Path::new(arg).exists() {
        if let Ok(spec) = arg.parse::<FamilySpec>() {
            return Ok(spec.generate()?);
        }
    }
    Ok(parse_graph(&read_text(arg)?)?)
}

fn load_certificate(arg: &str) -> Result<Certificate, Failure> {
    match arg.strip_prefix("builtin:") {
        Some(id) => Ok(builtin_certificate(id)?),
        None => Ok(Certificate::from_json(&read_text(arg)?)?),
    }
}

fn load_config(path: &Option<PathBuf>, seed: Option<u64>) -> Result<SuiteConfig, Failure> {
    let mut config = match path {
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            SuiteConfig::from_toml(&text)?
        }
        None => SuiteConfig::default(),
    };
    if let Some(s) = seed {
        config.seed = s;
    }
    Ok(config)
}

fn to_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn print_lines(lines: &[SuiteLine], json: bool) -> u8 {
    let report = SuiteReport {
        lines: lines.to_vec(),
        properties: Vec::new(),
        passed: lines.iter().all(|l| l.pass),
    };
    print_report(&report, json)
}

fn print_report(report: &SuiteReport, json: bool) -> u8 {
    if json {
        let mut doc = report.summary_json();
        doc["lines"] = serde_json::to_value(&report.lines).expect("lines serialize");
        out!("{}", to_json(&doc));
    } else {
        for l in &report.lines {
            out!("{l}");
        }
        out!(
            "{}",
            serde_json::to_string(&report.summary_json()).expect("summary serializes")
        );
    }
    if report.passed {
        0
    } else {
        EXIT_FAIL
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Gen { family, m, n } => {
            let tag: FamilyTag = family.parse()?;
            let spec = match n {
                Some(n) => FamilySpec::new(tag, m, n)?,
                None if !tag.takes_rows() => FamilySpec::single(tag, m)?,
                None => return Err(Failure::Input(format!("{tag} needs both m and n"))),
            };
            out!("{}", spec.generate()?.to_json());
        }
        Command::Chi {
            graph,
            method,
            budget,
        } => {
            let g = load_graph(&graph)?;
            let method = match method {
                Method::Enumerate => ChiMethod::Enumerate,
                Method::Recursive => ChiMethod::Recursive,
            };
            let chi = chi_reduced(&g, method, budget)?;
            if json {
                out!("{}", serde_json::json!({ "chi": chi.to_string() }));
            } else {
                out!("{chi}");
            }
        }
        Command::Betti {
            graph,
            p,
            method,
            budget,
        } => {
            let g = load_graph(&graph)?;
            let method = match method {
                HomologyMethod::Auto => BettiMethod::Auto,
                HomologyMethod::Explicit => BettiMethod::Explicit,
                HomologyMethod::Morse => BettiMethod::Morse,
            };
            let b = graph_betti(&g, p, budget, method)?;
            if json {
                out!(
                    "{}",
                    serde_json::json!({ "p": p, "betti": b.values(), "from_dim": -1 })
                );
            } else {
                out!("{b}");
            }
        }
        Command::Complex { graph, budget } => {
            let k = independence_complex(&load_graph(&graph)?, budget)?;
            if json {
                let faces: Vec<Vec<&str>> = {
                    let mut f: Vec<Vec<&str>> = k.label_faces().into_iter().collect();
                    f.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                    f
                };
                out!(
                    "{}",
                    to_json(&serde_json::json!({ "f_vector": k.f_vector(), "faces": faces }))
                );
            } else {
                emit(format_args!("{}", k.dump()));
            }
        }
        Command::Replay {
            certificate,
            check,
            export,
            list,
        } => {
            if list {
                for id in builtin_ids() {
                    out!("{id}");
                }
                return Ok(0);
            }
            let Some(certificate) = certificate else {
                return Err(Failure::Input("no certificate given".into()));
            };
            let cert = load_certificate(&certificate)?;
            if export {
                out!("{}", cert.to_json());
                return Ok(0);
            }
            let check = match check {
                Check::None => CheckLevel::None,
                Check::Chi => CheckLevel::Chi,
                Check::Betti => CheckLevel::Betti,
            };
            let report = replay(&cert, check)?;
            if json {
                out!(
                    "{}",
                    to_json(&serde_json::to_value(&report).expect("reports serialize"))
                );
            } else {
                out!("{report}");
            }
            return Ok(match report.outcome {
                ReplayOutcome::Pass => 0,
                ReplayOutcome::PreconditionFailed { .. } => EXIT_PRECONDITION,
                ReplayOutcome::InvariantViolated { .. } | ReplayOutcome::FinalMismatch => EXIT_FAIL,
            });
        }
        Command::MakeCert {
            kind,
            graph,
            patch,
            relaxed,
        } => {
            let kind: ReplacementKind = kind.parse()?;
            let g = load_graph(&graph)?;
            let mut marked = MarkedPatch::new(kind, patch);
            if relaxed {
                marked = marked.relaxed();
            }
            let r = make_replacement(&g, &marked)?;
            let doc = serde_json::json!({
                "graph": r.h.to_doc(),
                "interior": r.interior,
                "certificate": r.certificate,
            });
            out!("{}", to_json(&doc));
        }
        Command::Verify {
            target,
            config,
            seed,
            budget,
            p,
        } => {
            let mut config = load_config(&config, seed)?;
            if let Some(b) = budget {
                config.budget = b;
            }
            if !p.is_empty() {
                config.primes = p;
            }
            for &p in &config.primes {
                gridcomplex::homology::check_prime(p)?;
            }
            return Ok(match target {
                Target::Corollaries => print_lines(&corollary_lines(&config), json),
                Target::Appendix => print_lines(&appendix_lines(&config), json),
                Target::All => print_report(&run_suite(&config), json),
            });
        }
        Command::Selftest { config, seed } => {
            let config = load_config(&config, seed)?;
            let mut lines = oracle_lines(&config);
            let properties = property_results(&config);
            lines.extend(properties.iter().map(|p| SuiteLine {
                section: "property".into(),
                name: p.name.clone(),
                pass: p.passed(),
                detail: p.summary(),
            }));
            let passed = lines.iter().all(|l| l.pass);
            return Ok(print_report(
                &SuiteReport {
                    lines,
                    properties,
                    passed,
                },
                json,
            ));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("precondition failed: {msg}");
            ExitCode::from(EXIT_PRECONDITION)
        }
    }
}
