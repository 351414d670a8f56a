//! Command-line front end. [`run`] returns the exit code and both output
//! streams so it can be tested without spawning a process.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::braid::{equivalent, relation_catalog, BraidWord};
use crate::desing::{degree_spectrum, eta_hat};
use crate::error::Error;
use crate::gauss::{braid_of_gauss, gauss_of_braid, pair_invariants, GaussWord};
use crate::pure::{decompose, factor_singular};
use crate::search::{Budget, Verdict};
use crate::suites::{run_suite, Suite};
use crate::surface::surface_summary;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISTINCT: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Relations,
    GaussRoundtrip,
    DegreeLemma,
    SpRelations,
    ScalarPreimage,
    Surface,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Relations => Suite::Relations,
            SuiteArg::GaussRoundtrip => Suite::GaussRoundtrip,
            SuiteArg::DegreeLemma => Suite::DegreeLemma,
            SuiteArg::SpRelations => Suite::SpRelations,
            SuiteArg::ScalarPreimage => Suite::ScalarPreimage,
            SuiteArg::Surface => Suite::Surface,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "svbraid", version, about = "Singular virtual braid toolkit")]
struct Cli {
    /// Number of strands.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(2..))]
    n: Option<u32>,
    /// Node limit for equivalence searches.
    #[arg(long, global = true, default_value_t = 200_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Maximum word length during searches (default: longer input + 4).
    #[arg(long = "max-len", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_len: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Random seed for `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and print a word in normal spacing.
    Parse { word: String },
    /// Permutation, degree, singularity count and pair invariants.
    Invariants { word: String },
    /// Bounded equivalence check (exit 0 equivalent, 3 distinct, 4 unknown).
    Equiv { left: String, right: String },
    /// Gauss diagram of a word.
    ToGauss { word: String },
    /// Braid word realizing a Gauss diagram given as JSON.
    FromGauss { json: String },
    /// Desingularization expansion and its degree spectrum.
    Desing { word: String },
    /// Pure part and permutation.
    Decompose { word: String },
    /// Conjugated singular letters times a singular-free word.
    Factor { word: String },
    /// Euler characteristic, boundary count and genus of the carrier surface.
    Genus { word: String },
    /// List the defining relations on n strands.
    Relations,
    /// Run a batch property suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self::with_code(EXIT_OK, stdout)
    }

    fn with_code(code: i32, mut stdout: String) -> Self {
        if !stdout.ends_with('\n') {
            stdout.push('\n');
        }
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

/// Runs the command line `args` (without the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("svbraid".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => Outcome::fail(EXIT_USAGE, format!("error: {msg}\n")),
        Err(Failure::Domain(e)) => Outcome::fail(EXIT_DOMAIN, format!("error: {e}\n")),
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Cli {
    fn strands(&self) -> Result<usize, Failure> {
        self.n
            .map(|n| n as usize)
            .ok_or_else(|| Failure::Usage("--n is required for this command".into()))
    }

    fn word(&self, text: &str) -> Result<BraidWord, Failure> {
        Ok(BraidWord::parse(text, self.strands()?)?)
    }

    fn search_budget(&self) -> Budget {
        Budget {
            max_nodes: self.budget as usize,
            max_len: self.max_len.map(|m| m as usize),
            ..Budget::default()
        }
    }

    fn json(&self) -> bool {
        self.format == Format::Json
    }
}

fn emit(cli: &Cli, text: String, value: impl FnOnce() -> Value) -> Outcome {
    if cli.json() {
        Outcome::ok(value().to_string())
    } else {
        Outcome::ok(text)
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    Ok(match &cli.command {
        Command::Parse { word } => {
            let w = cli.word(word)?;
            emit(cli, w.to_string(), || {
                json!({"n": w.strand_count(), "word": w.to_string(), "length": w.len()})
            })
        }
        Command::Invariants { word } => {
            let w = cli.word(word)?;
            let pairs = pair_invariants(&gauss_of_braid(&w));
            let text = format!(
                "theta {}\ndegree {}\nsingularities {}\nlength {}\npairs {}",
                w.theta(),
                w.degree(),
                w.singularity_count(),
                w.len(),
                pairs
            );
            emit(cli, text, || {
                let pair_list: Vec<Value> = pairs
                    .pairs
                    .iter()
                    .map(|((i, j), d)| json!({"i": i, "j": j, "writhe": d.writhe, "sing": d.sing_count}))
                    .collect();
                json!({
                    "theta": w.theta(),
                    "degree": w.degree(),
                    "singularities": w.singularity_count(),
                    "length": w.len(),
                    "pairs": pair_list,
                })
            })
        }
        Command::Equiv { left, right } => {
            let (u, v) = (cli.word(left)?, cli.word(right)?);
            let verdict = equivalent(&u, &v, &cli.search_budget())?;
            let code = match verdict {
                Verdict::Equivalent { .. } => EXIT_OK,
                Verdict::Distinct(_) => EXIT_DISTINCT,
                Verdict::Unknown(_) => EXIT_UNKNOWN,
            };
            let (text, value) = match &verdict {
                Verdict::Equivalent { trace } => {
                    let mut cur = u.letters().to_vec();
                    let mut lines = vec![format!("equivalent ({} steps)", trace.len())];
                    for s in trace {
                        cur = s.apply(&cur).expect("trace replays");
                        lines.push(format!(
                            "{} at {}: {} -> {}",
                            s.label,
                            s.position,
                            crate::braid::format_letters(&s.removed),
                            crate::braid::format_letters(&cur)
                        ));
                    }
                    let steps: Vec<Value> = trace
                        .iter()
                        .map(|s| {
                            json!({
                                "relation": s.label.label(),
                                "position": s.position,
                                "removed": crate::braid::format_letters(&s.removed),
                                "inserted": crate::braid::format_letters(&s.inserted),
                            })
                        })
                        .collect();
                    (lines.join("\n"), json!({"verdict": "equivalent", "trace": steps}))
                }
                Verdict::Distinct(w) => (
                    format!("distinct ({w})"),
                    json!({"verdict": "distinct", "witness": w}),
                ),
                Verdict::Unknown(stats) => (
                    format!(
                        "unknown (searched {} nodes, depths {}+{}, length cap {})",
                        stats.nodes, stats.forward_depth, stats.backward_depth, stats.max_len
                    ),
                    json!({"verdict": "unknown", "stats": stats}),
                ),
            };
            Outcome::with_code(code, if cli.json() { value.to_string() } else { text })
        }
        Command::ToGauss { word } => {
            let g = gauss_of_braid(&cli.word(word)?);
            if cli.json() {
                Outcome::ok(g.to_json())
            } else {
                Outcome::ok(g.to_string())
            }
        }
        Command::FromGauss { json: text } => {
            let g = GaussWord::from_json(text)?;
            if let Some(n) = cli.n {
                if n as usize != g.strand_count() {
                    return Err(Failure::Domain(Error::StrandMismatch {
                        left: n as usize,
                        right: g.strand_count(),
                    }));
                }
            }
            let w = braid_of_gauss(&g);
            emit(cli, w.to_string(), || json!({"n": w.strand_count(), "word": w.to_string()}))
        }
        Command::Desing { word } => {
            let sum = eta_hat(&cli.word(word)?)?;
            if cli.json() {
                Outcome::ok(sum.to_json())
            } else {
                Outcome::ok(format!("{sum}\nspectrum {}", degree_spectrum(&sum)))
            }
        }
        Command::Decompose { word } => {
            let d = decompose(&cli.word(word)?);
            if cli.json() {
                Outcome::ok(d.to_json())
            } else {
                Outcome::ok(d.to_string())
            }
        }
        Command::Factor { word } => {
            let f = factor_singular(&cli.word(word)?);
            emit(cli, f.to_string(), || {
                let taus: Vec<Value> = f
                    .conjugated_taus
                    .iter()
                    .map(|(c, i)| json!({"conjugator": c.to_string(), "index": i}))
                    .collect();
                json!({"conjugated_taus": taus, "virtual_part": f.virtual_part.to_string()})
            })
        }
        Command::Genus { word } => {
            let s = surface_summary(&cli.word(word)?)?;
            if cli.json() {
                Outcome::ok(s.to_json())
            } else {
                Outcome::ok(s.to_string())
            }
        }
        Command::Relations => {
            let n = cli.strands()?;
            let cat = relation_catalog(n);
            let text = cat.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            emit(cli, text, || {
                Value::Array(
                    cat.iter()
                        .map(|r| json!({"family": r.family.label(), "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string()}))
                        .collect(),
                )
            })
        }
        Command::Verify { suite } => {
            let n = cli.n.map_or(3, |n| n as usize);
            let report = run_suite((*suite).into(), n, cli.seed, &cli.search_budget())?;
            let code = if report.passed { EXIT_OK } else { EXIT_DOMAIN };
            let out = if cli.json() {
                serde_json::to_string(&report).expect("reports serialize")
            } else {
                report.to_string()
            };
            Outcome::with_code(code, out)
        }
    })
}
