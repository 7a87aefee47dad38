use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use twistlog::props::{self, SuiteReport};
use twistlog::{CoverPresentation, CyclicWord, Error, LoopSum, Mutation, RibbonSurface, TwistProblem, TwistReport};

#[derive(Parser)]
#[command(name = "twistlog", version, about = "Goldman brackets, surface actions and Dehn twist logarithms")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Goldman bracket of two free loops.
    Bracket {
        #[command(flatten)]
        surface: SurfaceArg,
        /// First class (`x<i>` letters; `y<i>` on a cover).
        a: String,
        /// Second class.
        b: String,
    },
    /// Action of a cover loop on a base word of N_{g,1}.
    Act {
        #[command(flatten)]
        surface: SurfaceArg,
        /// Loop on the orientation cover (`y<i>` letters).
        y: String,
        /// Base word (`x<i>` letters).
        x: String,
    },
    /// Orientation cover data of N_{g,1} as JSON.
    CoverDump {
        #[command(flatten)]
        surface: SurfaceArg,
    },
    /// Truncated log of the Dehn twist applied to a base word.
    LogTwist {
        #[command(flatten)]
        twist: TwistArgs,
        /// Base word (`x<i>` letters).
        x: String,
    },
    /// Check t_A = exp(sigma(L)) on every base generator; exits 1 if not verified.
    Verify {
        #[command(flatten)]
        twist: TwistArgs,
        /// Include wall-clock timings (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
        /// Negate the K-th term of L before comparing.
        #[arg(long, value_name = "K", conflicts_with = "corrupt_insertion")]
        corrupt_l: Option<usize>,
        /// Negate one insertion of the geometric twist, as GEN:INDEX.
        #[arg(long, value_name = "GEN:INDEX", value_parser = parse_insertion)]
        corrupt_insertion: Option<(usize, usize)>,
    },
    /// Run the seeded property suites.
    Props {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Restrict to these suites (repeatable).
        #[arg(long = "suite", value_parser = clap::builder::PossibleValuesParser::new(props::SUITES))]
        suites: Vec<String>,
    },
}

#[derive(Args)]
struct SurfaceArg {
    /// `torus1`, `annulus`, or `N<g>,1`.
    #[arg(long, default_value = "N2,1")]
    surface: String,
    /// Surface description JSON file (overrides --surface).
    #[arg(long, value_name = "PATH")]
    surface_file: Option<String>,
}

#[derive(Args)]
struct TwistArgs {
    #[command(flatten)]
    surface: SurfaceArg,
    /// Annulus curve as a cover word (`y<i>`); defaults to the preset.
    #[arg(long)]
    r: Option<String>,
    /// Truncation order N.
    #[arg(long, env = "TWISTLOG_ORDER", default_value_t = 5)]
    order: usize,
    /// Iteration cap for exponential and log series; default (N+1)^2.
    #[arg(long, env = "TWISTLOG_K_MAX")]
    k_max: Option<usize>,
}

fn parse_insertion(s: &str) -> Result<(usize, usize), String> {
    let (g, k) = s.split_once(':').ok_or("expected GEN:INDEX")?;
    let g = g.parse().map_err(|_| format!("bad generator `{g}`"))?;
    let k = k.parse().map_err(|_| format!("bad index `{k}`"))?;
    Ok((g, k))
}

enum Surface {
    Oriented(RibbonSurface),
    Cover(CoverPresentation),
}

impl SurfaceArg {
    fn resolve(&self) -> twistlog::Result<Surface> {
        if let Some(path) = &self.surface_file {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
            return Ok(Surface::Oriented(RibbonSurface::from_json(&text)?));
        }
        match self.surface.as_str() {
            "torus1" => Ok(Surface::Oriented(RibbonSurface::one_holed_torus())),
            "annulus" => Ok(Surface::Oriented(RibbonSurface::annulus())),
            other => Ok(Surface::Cover(CoverPresentation::build(parse_genus(other)?)?)),
        }
    }

    fn cover(&self) -> twistlog::Result<CoverPresentation> {
        match self.resolve()? {
            Surface::Cover(c) => Ok(c),
            Surface::Oriented(_) => Err(Error::InvalidSurface(format!(
                "`{}` is oriented; this command needs N<g>,1",
                self.surface
            ))),
        }
    }
}

fn parse_genus(s: &str) -> twistlog::Result<usize> {
    s.strip_prefix('N')
        .and_then(|rest| rest.strip_suffix(",1"))
        .and_then(|g| g.parse().ok())
        .ok_or_else(|| Error::InvalidSurface(format!("unknown surface `{s}` (torus1, annulus, N<g>,1)")))
}

impl TwistArgs {
    fn problem(&self) -> twistlog::Result<TwistProblem> {
        let cover = self.surface.cover()?;
        let r = match &self.r {
            Some(text) => cover.parse_cover_word(text)?,
            None => twistlog::twist::preset_curve(cover.genus())
                .ok_or_else(|| Error::Invalid(format!("no preset curve for N{},1; pass --r", cover.genus())))?,
        };
        TwistProblem::new(cover, r, self.order, self.k_max)
    }
}

fn parse_loop(rank: usize, text: &str, alphabet: char) -> twistlog::Result<LoopSum> {
    LoopSum::try_from_terms(rank, [(CyclicWord::parse(text, alphabet)?, twistlog::word::coeff(1))])
}

fn run(cli: &Cli) -> twistlog::Result<(String, ExitCode)> {
    let json = cli.format == Format::Json;
    let ok = ExitCode::SUCCESS;
    match &cli.command {
        Command::Bracket { surface, a, b } => {
            let (s, alphabet) = match surface.resolve()? {
                Surface::Oriented(s) => (s, 'x'),
                Surface::Cover(c) => (c.surface().clone(), 'y'),
            };
            let a = parse_loop(s.rank(), a, alphabet)?;
            let b = parse_loop(s.rank(), b, alphabet)?;
            let out = s.goldman_bracket(&a, &b);
            let text = if json {
                out.to_json(alphabet).to_string()
            } else {
                out.display(alphabet).to_string()
            };
            Ok((text, ok))
        }
        Command::Act { surface, y, x } => {
            let cover = surface.cover()?;
            let y = parse_loop(cover.cover_rank(), y, 'y')?;
            let x = cover.parse_base_word(x)?;
            let out = cover.sigma_tilde(&y, &x)?;
            let text = if json {
                out.to_json('x').to_string()
            } else {
                out.display('x').to_string()
            };
            Ok((text, ok))
        }
        Command::CoverDump { surface } => {
            let dump = surface.cover()?.to_json();
            let text = if json {
                dump.to_string()
            } else {
                serde_json::to_string_pretty(&dump)?
            };
            Ok((text, ok))
        }
        Command::LogTwist { twist, x } => {
            let problem = twist.problem()?;
            let x = problem.cover().parse_base_word(x)?;
            let out = problem.log_twist_series(&x)?;
            let text = if json { out.to_json().to_string() } else { out.to_string() };
            Ok((text, ok))
        }
        Command::Verify {
            twist,
            timings,
            corrupt_l,
            corrupt_insertion,
        } => {
            let problem = twist.problem()?;
            let report = match (corrupt_l, corrupt_insertion) {
                (Some(k), _) => problem.verify_mutated(Mutation::FlipLTerm(*k))?,
                (None, Some((generator, index))) => problem.verify_mutated(Mutation::FlipInsertion {
                    generator: *generator,
                    index: *index,
                })?,
                (None, None) => problem.verify(*timings)?,
            };
            let code = if report.verified { ExitCode::SUCCESS } else { ExitCode::from(1) };
            let text = if json {
                serde_json::to_string(&report)?
            } else {
                render_report(&report)
            };
            Ok((text, code))
        }
        Command::Props { seed, suites } => {
            let names: Vec<&str> = if suites.is_empty() {
                props::SUITES.to_vec()
            } else {
                suites.iter().map(String::as_str).collect()
            };
            let reports = props::run_suites(&names, *seed, twistlog::Execution::default());
            let code = if reports.iter().all(SuiteReport::passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            let text = if json {
                json!({"seed": seed, "suites": reports}).to_string()
            } else {
                reports
                    .iter()
                    .map(|r| {
                        let status = if r.passed() { "ok" } else { "FAILED" };
                        let mut line = format!("{:<11} {}/{} {status}", r.suite, r.cases - r.failures, r.cases);
                        if let Some(f) = &r.first_failure {
                            line.push_str(&format!(" ({f})"));
                        }
                        line
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok((text, code))
        }
    }
}

fn render_report(r: &TwistReport) -> String {
    let mut lines = vec![format!(
        "N{},1  r = {}  N = {}  k_max = {}{}",
        r.genus,
        r.r,
        r.order,
        r.k_max,
        if r.degenerate { "  (degenerate)" } else { "" }
    )];
    lines.push(match r.verified_sign {
        Some(s) => format!("verified: yes (sign {s:+}, signs verifying: {:?})", r.signs_verified),
        None => format!(
            "verified: no (first disagreement in degree {})",
            r.first_disagreement_degree.map_or("?".into(), |d| d.to_string())
        ),
    });
    for a in &r.per_generator {
        lines.push(format!(
            "  {}: exp agrees through degree {}, log agrees through degree {} (sign {:+})",
            a.gen, a.agree_through_degree, a.log_agree_through_degree, r.compared_sign
        ));
    }
    lines.extend(r.diagnostics.iter().map(|d| format!("  note: {d}")));
    if let Some(t) = &r.timings {
        lines.push(format!(
            "  timings: derivation {:.1} ms, geometric {:.1} ms, exponential {:.1} ms",
            t.derivation_ms, t.geometric_ms, t.exponential_ms
        ));
    }
    lines.join("\n")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error: usage: {first}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok((text, code)) => {
            println!("{text}");
            code
        }
        Err(e) => {
            eprintln!("error: {}: {}", e.kind(), e);
            ExitCode::from(2)
        }
    }
}
