//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{initial_ideal, is_squarefree, TermOrder};
use crate::betti::{betti_report, fiber_graph, EdgeMode};
use crate::budget::Budget;
use crate::dynkin::{
    ade_graph, closed_form_configuration, default_bound, incidence_matrix, lipman_configuration,
    AdeKind, Configuration,
};
use crate::error::Error;
use crate::fan::{groebner_fan, sample_initial_ideals, squarefree_initials, FanResult};
use crate::paperdata::{verify_all, Family};
use crate::toric::toric_ideal;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment variable overriding the reduction step budget.
pub const STEPS_ENV: &str = "TORICSING_BUDGET_STEPS";

#[derive(Parser, Debug)]
#[command(
    name = "toricsing",
    version,
    about = "Toric ideals of ADE surface singularities"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Reduction steps per Gröbner basis computation
    #[arg(long, global = true)]
    pub steps: Option<u64>,
    /// Largest fiber that may be enumerated
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub fiber_cap: usize,
    /// Largest number of cones in a fan traversal
    #[arg(long, global = true, default_value_t = 10_000)]
    pub cone_cap: usize,
    /// Worker threads (defaults to all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// A, D or E
    #[arg(long)]
    pub kind: Option<AdeKind>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Use the Hilbert basis computed from the resolution graph
    #[arg(long)]
    pub lipman: bool,
    /// Box bound for the Hilbert basis search
    #[arg(long)]
    pub bound: Option<u32>,
    /// Configuration file: one point per line, `#` comments
    #[arg(long, conflicts_with_all = ["kind", "n", "lipman"])]
    pub points: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a configuration
    Config {
        #[command(flatten)]
        source: Source,
    },
    /// Reduced Gröbner basis of the toric ideal
    Gb {
        #[command(flatten)]
        source: Source,
        /// lex, grlex, degrevlex, optionally `:i,j,...`, or `weight:w1,...`
        #[arg(long, default_value = "degrevlex")]
        order: String,
    },
    /// Check the printed Gröbner basis table for a D or E diagram
    Verify {
        #[arg(long)]
        kind: AdeKind,
        #[arg(long)]
        n: usize,
    },
    /// Betti degrees, indispensable binomials and minimal generating sets
    Betti {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "degrevlex")]
        order: String,
        #[arg(long, value_enum, default_value_t = GraphMode::Gcd)]
        graph: GraphMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Initial ideals of the toric ideal
    Fan {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "degrevlex")]
        order: String,
        #[arg(long, value_enum, default_value_t = FanMode::Flip)]
        mode: FanMode,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled weights are drawn from [1, weight-max]
        #[arg(long, default_value_t = 10_000)]
        weight_max: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphMode {
    Gcd,
    Ideal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FanMode {
    Flip,
    Sample,
}

/// Budgets and output settings resolved from flags and environment.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub budget: Budget,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_opts(g: &GlobalOpts, env_steps: Option<&str>) -> Result<RunConfig, Failure> {
        let mut budget = Budget {
            fiber_size: g.fiber_cap,
            cones: g.cone_cap,
            ..Budget::default()
        };
        if let Some(s) = env_steps {
            budget.reduction_steps = s
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("{STEPS_ENV} must be a positive integer")))?;
        }
        if let Some(s) = g.steps {
            budget.reduction_steps = s;
        }
        budget.validate().map_err(Failure::from)?;
        Ok(RunConfig {
            budget,
            format: g.format,
            output: g.output.clone(),
        })
    }
}

/// A command outcome other than success, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if e.is_budget() {
            EXIT_BUDGET
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

fn emit(rc: &RunConfig, text: &str) -> Result<(), Failure> {
    match &rc.output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("cannot write {}: {e}", p.display()),
        }),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn load_configuration(src: &Source) -> Result<Configuration, Failure> {
    if let Some(path) = &src.points {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        return Ok(Configuration::parse_text(&text)?);
    }
    let (Some(kind), Some(n)) = (src.kind, src.n) else {
        return Err(Failure::usage("give --kind and --n, or --points"));
    };
    if src.lipman || kind == AdeKind::A {
        let m = incidence_matrix(&ade_graph(kind, n)?);
        let bound = src.bound.unwrap_or_else(|| default_bound(n));
        Ok(lipman_configuration(&m, bound)?)
    } else {
        Ok(closed_form_configuration(kind, n)?)
    }
}

pub fn cmd_config(rc: &RunConfig, src: &Source) -> CmdResult {
    let c = load_configuration(src)?;
    let out = match rc.format {
        Format::Text => c.to_text(),
        _ => to_json(&c),
    };
    emit(rc, &out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct GbOutput<'a> {
    ring: &'a [String],
    order: &'a TermOrder,
    basis: Vec<String>,
    elements: &'a [crate::algebra::Binomial],
    initial_ideal: Vec<String>,
    squarefree: bool,
}

pub fn cmd_gb(rc: &RunConfig, src: &Source, order: &str) -> CmdResult {
    let c = load_configuration(src)?;
    let order = TermOrder::parse(order, c.len())?;
    let ideal = toric_ideal(&c, &order, &rc.budget)?;
    let gb = ideal.gb();
    let leads = initial_ideal(gb);
    let squarefree = is_squarefree(&leads);
    let names = c.names();
    let lead_strs: Vec<String> = leads
        .iter()
        .map(|m| m.display_with(names).to_string())
        .collect();
    let out = match rc.format {
        Format::Text => {
            let mut s = String::new();
            if gb.is_empty() {
                s.push_str("the toric ideal is zero\n");
            } else {
                for line in gb.render() {
                    let _ = writeln!(s, "{line}");
                }
                let _ = writeln!(s, "initial ideal: {}", lead_strs.join(", "));
            }
            let _ = writeln!(s, "elements: {}", gb.len());
            let _ = writeln!(s, "squarefree: {squarefree}");
            s
        }
        _ => to_json(&GbOutput {
            ring: names,
            order: &order,
            basis: gb.render(),
            elements: gb.elements(),
            initial_ideal: lead_strs,
            squarefree,
        }),
    };
    emit(rc, &out)?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(rc: &RunConfig, kind: AdeKind, n: usize) -> CmdResult {
    let family = Family::of(kind, n)?;
    let report = verify_all(family, n, &rc.budget)?;
    let out = match rc.format {
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let _ = writeln!(s, "{:<22} {:?}", c.name, c.status);
            }
            s
        }
        _ => to_json(&report),
    };
    emit(rc, &out)?;
    Ok(if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn cmd_betti(
    rc: &RunConfig,
    src: &Source,
    order: &str,
    mode: GraphMode,
    seed: u64,
) -> CmdResult {
    let c = load_configuration(src)?;
    let order = TermOrder::parse(order, c.len())?;
    let ideal = toric_ideal(&c, &order, &rc.budget)?;
    let mode = match mode {
        GraphMode::Gcd => EdgeMode::Gcd,
        GraphMode::Ideal => EdgeMode::Ideal,
    };
    let report = betti_report(&ideal, mode, seed, &rc.budget)?;
    let names = c.names();
    let out = match rc.format {
        Format::Dot => {
            let mut s = String::new();
            for d in &report.betti_degrees {
                let g = fiber_graph(&ideal, &d.degree, mode, &rc.budget)?;
                let label: Vec<String> = d.degree.iter().map(i64::to_string).collect();
                let _ = writeln!(s, "graph \"b_{}\" {{", label.join("_"));
                for (i, m) in g.fiber.monomials.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        "  v{i} [label=\"{}\"];",
                        dot_escape(&m.display_with(names).to_string())
                    );
                }
                for (a, b) in &g.edges {
                    let _ = writeln!(s, "  v{a} -- v{b};");
                }
                s.push_str("}\n");
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for d in &report.betti_degrees {
                let _ = writeln!(
                    s,
                    "degree {:?}: components {:?}",
                    d.degree,
                    d.component_sizes()
                );
            }
            let _ = writeln!(s, "indispensable: {}", report.indispensables.len());
            let _ = writeln!(s, "minimal generating sets: {}", report.min_gen_set_count);
            for b in &report.sample_min_gen_set {
                let _ = writeln!(s, "  {}", b.display_with(names));
            }
            s
        }
        Format::Json => to_json(&report),
    };
    emit(rc, &out)?;
    Ok(EXIT_OK)
}

fn fan_dot(r: &FanResult) -> String {
    let sq = squarefree_initials(r);
    let mut s = String::from("graph fan {\n");
    for i in 0..r.len() {
        let shape = if sq.contains(&i) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(s, "  c{i} [shape={shape}, label=\"{i}\"];");
    }
    for (a, b) in &r.adjacency {
        let _ = writeln!(s, "  c{a} -- c{b};");
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize)]
struct FanOutput<'a> {
    cones: usize,
    squarefree: Vec<usize>,
    #[serde(flatten)]
    result: &'a FanResult,
}

pub fn cmd_fan(
    rc: &RunConfig,
    src: &Source,
    order: &str,
    mode: FanMode,
    samples: usize,
    seed: u64,
    weight_max: i64,
) -> CmdResult {
    let c = load_configuration(src)?;
    let order = TermOrder::parse(order, c.len())?;
    let ideal = toric_ideal(&c, &order, &rc.budget)?;
    let r = match mode {
        FanMode::Flip => groebner_fan(&ideal, &rc.budget)?,
        FanMode::Sample => {
            sample_initial_ideals(&ideal, samples, seed, (1, weight_max), &rc.budget)?
        }
    };
    let out = match rc.format {
        Format::Dot => fan_dot(&r),
        Format::Text => {
            let mut s = String::new();
            let sq = squarefree_initials(&r);
            let names = c.names();
            for (i, gens) in r.initial_ideals.iter().enumerate() {
                let g: Vec<String> = gens
                    .iter()
                    .map(|m| m.display_with(names).to_string())
                    .collect();
                let mark = if sq.contains(&i) { " (squarefree)" } else { "" };
                let _ = writeln!(s, "{i}{mark}: {}", g.join(", "));
            }
            let _ = writeln!(s, "initial ideals: {}", r.len());
            let _ = writeln!(s, "squarefree: {}", sq.len());
            let _ = writeln!(s, "complete: {}", r.complete);
            s
        }
        Format::Json => to_json(&FanOutput {
            cones: r.len(),
            squarefree: squarefree_initials(&r),
            result: &r,
        }),
    };
    emit(rc, &out)?;
    Ok(EXIT_OK)
}

/// Run a parsed command line and return the process exit code. Diagnostics
/// go to stderr.
pub fn run(cli: Cli) -> i32 {
    let env = std::env::var(STEPS_ENV).ok();
    let result = RunConfig::from_opts(&cli.global, env.as_deref()).and_then(|rc| {
        if let Some(j) = cli.global.jobs {
            if j == 0 {
                return Err(Failure::usage("--jobs must be positive"));
            }
            // Fails only if a pool already exists, which is harmless.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build_global();
        }
        match &cli.command {
            Command::Config { source } => cmd_config(&rc, source),
            Command::Gb { source, order } => cmd_gb(&rc, source, order),
            Command::Verify { kind, n } => cmd_verify(&rc, *kind, *n),
            Command::Betti {
                source,
                order,
                graph,
                seed,
            } => cmd_betti(&rc, source, order, *graph, *seed),
            Command::Fan {
                source,
                order,
                mode,
                samples,
                seed,
                weight_max,
            } => cmd_fan(&rc, source, order, *mode, *samples, *seed, *weight_max),
        }
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("toricsing: {}", f.message);
            f.code
        }
    }
}
