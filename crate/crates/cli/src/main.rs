//! `autgroup`: build Cayley graphs of transposition sets and named graphs,
//! compute automorphism groups, diameters and cycle censuses, and check the
//! family table against brute force.
//!
//! Exit status: 0 on success, 1 on usage or resource errors, 2 when a
//! verification disagrees.

use std::fmt::Write as _;
use std::process::ExitCode;

use autgroup::autsearch::{automorphism_group_with, cayley_automorphism_group, AutConfig, AutResult};
use autgroup::cayley::{build_cayley, CayleyGraph};
use autgroup::graphcore::{build_named, NamedGraph, SimpleGraph};
use autgroup::theoremlab::{check_normal, predict_aut, six_cycle_census, verify_prediction};
use autgroup::{Perm, TranspositionSet};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Transposition(#[from] autgroup::TranspositionError),
    #[error(transparent)]
    Perm(#[from] autgroup::PermError),
    #[error(transparent)]
    Graph(#[from] autgroup::GraphError),
    #[error(transparent)]
    Cayley(#[from] autgroup::CayleyError),
    #[error(transparent)]
    Aut(#[from] autgroup::AutError),
    #[error(transparent)]
    Theorem(#[from] autgroup::TheoremError),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(
    name = "autgroup",
    version,
    about = "Automorphism groups of transposition Cayley graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Star,
    #[value(alias = "bs")]
    Path,
    #[value(alias = "mbs")]
    Cycle,
    Matching,
    Complete,
    /// Spider with legs 1, 2, 3, … (the last leg takes the remainder).
    Tree,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest number of vertices any command may build or search.
    #[arg(
        long,
        env = "AUTGROUP_BUDGET_VERTICES",
        default_value_t = 1_000_000,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    budget_vertices: u64,
}

#[derive(Args, Debug, Clone, Default)]
struct SetInput {
    /// Transposition family on `n` points.
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Explicit transposition set, e.g. "(1,2)(2,3)(3,4)".
    #[arg(long)]
    set: Option<String>,
    /// Number of points (or the first parameter of a named graph).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug, Clone, Default)]
struct GraphInput {
    #[command(flatten)]
    set: SetInput,
    /// Named graph: petersen, octahedron, kneser, odd, hypercube, complete,
    /// cycle, path, star, matching, empty, complete-bipartite; parameters come
    /// from --n/--k/--i or inline, e.g. "kneser(5,2,0)".
    #[arg(long)]
    named: Option<String>,
    /// Second named-graph parameter.
    #[arg(long)]
    k: Option<usize>,
    /// Third named-graph parameter (Kneser intersection size).
    #[arg(long)]
    i: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a Cayley graph or named graph and print a summary, JSON or DOT.
    Build {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        common: Common,
    },
    /// Automorphism group order and generators.
    Aut {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        common: Common,
    },
    /// Diameter of the Cayley graph.
    Diameter {
        #[command(flatten)]
        input: SetInput,
        /// Also print the number of vertices at each distance.
        #[arg(long)]
        levels: bool,
        #[command(flatten)]
        common: Common,
    },
    /// 4- and 6-cycle census through e, t and k.
    Census {
        #[command(flatten)]
        input: SetInput,
        /// First generator, in cycle notation.
        #[arg(long)]
        t: String,
        /// Second generator, in cycle notation.
        #[arg(long)]
        k: String,
        #[command(flatten)]
        common: Common,
    },
    /// Whether the right regular representation is normal in the full group.
    CheckNormal {
        #[command(flatten)]
        input: SetInput,
        #[command(flatten)]
        common: Common,
    },
    /// Predicted automorphism group from the family table.
    Predict {
        #[command(flatten)]
        input: SetInput,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the prediction with a brute-force computation.
    Verify {
        #[command(flatten)]
        input: SetInput,
        #[command(flatten)]
        common: Common,
    },
    /// Build a named graph.
    Named {
        /// Graph name, optionally with inline parameters.
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized consistency checks of the core routines.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// A finished command: text to print and the exit status.
struct Outcome {
    output: String,
    disagreement: bool,
}

impl Outcome {
    fn ok(output: String) -> Outcome {
        Outcome {
            output,
            disagreement: false,
        }
    }
}

fn spider_legs(n: usize) -> Vec<usize> {
    let mut legs = Vec::new();
    let mut left = n.saturating_sub(1);
    let mut next = 1;
    while left > 0 {
        if left < next {
            *legs.last_mut().unwrap() += left;
            break;
        }
        legs.push(next);
        left -= next;
        next += 1;
    }
    legs
}

fn transposition_set(input: &SetInput) -> Result<TranspositionSet, CliError> {
    match (&input.family, &input.set) {
        (Some(_), Some(_)) => Err(usage("give either --family or --set, not both")),
        (None, None) => Err(usage("missing input: give --family with --n, or --set")),
        (None, Some(s)) => Ok(match input.n {
            Some(n) => TranspositionSet::parse(s, n)?,
            None => TranspositionSet::parse_infer(s)?,
        }),
        (Some(f), None) => {
            let n = input.n.ok_or_else(|| usage("--family needs --n"))?;
            Ok(match f {
                Family::Star => TranspositionSet::star(n)?,
                Family::Path => TranspositionSet::path(n)?,
                Family::Cycle => TranspositionSet::cycle(n)?,
                Family::Matching => TranspositionSet::matching(n)?,
                Family::Complete => TranspositionSet::complete(n)?,
                Family::Tree => {
                    if n == 1 {
                        TranspositionSet::new(1, &[])?
                    } else {
                        TranspositionSet::spider(&spider_legs(n))?
                    }
                }
            })
        }
    }
}

fn named_graph(
    name: &str,
    n: Option<usize>,
    k: Option<usize>,
    i: Option<usize>,
) -> Result<(String, SimpleGraph), CliError> {
    let spec: NamedGraph = if name.contains('(') {
        name.parse()?
    } else {
        let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("{name} needs {flag}")));
        let text = match name.trim().to_ascii_lowercase().as_str() {
            "petersen" | "octahedron" => name.trim().to_ascii_lowercase(),
            "kneser" => format!("kneser({},{},{})", need(n, "--n")?, need(k, "--k")?, i.unwrap_or(0)),
            "complete-bipartite" => format!("complete-bipartite({},{})", need(n, "--n")?, need(k, "--k")?),
            "odd" => format!("odd({})", need(n.or(k), "--n")?),
            other => format!("{other}({})", need(n, "--n")?),
        };
        text.parse()?
    };
    Ok((spec.to_string(), build_named(&spec)?))
}

enum Target {
    Cayley(TranspositionSet, CayleyGraph),
    Named(String, SimpleGraph),
}

fn target(input: &GraphInput, budget: u64) -> Result<Target, CliError> {
    match &input.named {
        Some(name) => {
            if input.set.family.is_some() || input.set.set.is_some() {
                return Err(usage("give either --named or a transposition set, not both"));
            }
            let (label, g) = named_graph(name, input.set.n, input.k, input.i)?;
            if g.vertex_count() as u64 > budget {
                return Err(usage(format!(
                    "graph has {} vertices, budget is {budget}",
                    g.vertex_count()
                )));
            }
            Ok(Target::Named(label, g))
        }
        None => {
            let s = transposition_set(&input.set)?;
            let c = build_cayley(&s, budget)?;
            Ok(Target::Cayley(s, c))
        }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn no_dot(format: Format) -> Result<(), CliError> {
    if format == Format::Dot {
        Err(usage("--format dot is only available for build and named"))
    } else {
        Ok(())
    }
}

fn graph_output(label: &str, g: &SimpleGraph, format: Format) -> String {
    match format {
        Format::Dot => g.to_dot(label),
        Format::Json => json_text(&json!({
            "name": label,
            "graph": g.to_json(),
        })),
        Format::Text => {
            let mut out = format!(
                "name: {label}\nvertices: {}\nedges: {}\n",
                g.vertex_count(),
                g.edge_count()
            );
            match g.is_regular() {
                Some(d) => writeln!(out, "regular: {d}").unwrap(),
                None => writeln!(out, "regular: no").unwrap(),
            }
            out
        }
    }
}

fn cmd_build(input: &GraphInput, common: &Common) -> Result<Outcome, CliError> {
    let out = match target(input, common.budget_vertices)? {
        Target::Named(label, g) => graph_output(&label, &g, common.format),
        Target::Cayley(s, c) => match common.format {
            Format::Dot => {
                let g = c.to_simple_graph().with_labels(c.labels())?;
                g.to_dot(&format!("Cay({s})"))
            }
            Format::Json => json_text(&json!({
                "set": s.to_string(),
                "summary": c.summary()?,
            })),
            Format::Text => {
                let sm = c.summary()?;
                format!(
                    "set: {s}\nfamily: {}\nn: {}\nvertices: {}\ndegree: {}\ndiameter: {}\n",
                    sm.family, sm.n, sm.vertices, sm.degree, sm.diameter
                )
            }
        },
    };
    Ok(Outcome::ok(out))
}

fn aut_output(r: &AutResult, format: Format) -> String {
    let j = r.to_json();
    match format {
        Format::Json => json_text(&serde_json::to_value(&j).expect("serializable")),
        _ => {
            let mut out = format!(
                "order: {}\nstabilizer_order: {}\norbit_size: {}\ngenerators:\n",
                j.order, j.stabilizer_order, j.orbit_size
            );
            for g in &j.generators {
                writeln!(out, "  {g}").unwrap();
            }
            out
        }
    }
}

fn cmd_aut(input: &GraphInput, common: &Common) -> Result<Outcome, CliError> {
    no_dot(common.format)?;
    let config = AutConfig {
        max_vertices: common.budget_vertices as usize,
    };
    let r = match target(input, common.budget_vertices)? {
        Target::Named(_, g) => automorphism_group_with(&g, config, &[])?,
        Target::Cayley(_, c) => cayley_automorphism_group(&c, config)?,
    };
    Ok(Outcome::ok(aut_output(&r, common.format)))
}

fn cmd_diameter(input: &SetInput, levels: bool, common: &Common) -> Result<Outcome, CliError> {
    no_dot(common.format)?;
    let c = build_cayley(&transposition_set(input)?, common.budget_vertices)?;
    let d = c.diameter()?;
    let counts = if levels { Some(c.level_counts()?) } else { None };
    let out = match common.format {
        Format::Json => json_text(&match &counts {
            Some(l) => json!({ "diameter": d, "levels": l }),
            None => json!({ "diameter": d }),
        }),
        _ => {
            let mut out = format!("{d}\n");
            for (k, n) in counts.iter().flatten().enumerate() {
                writeln!(out, "level {k}: {n}").unwrap();
            }
            out
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_census(input: &SetInput, t: &str, k: &str, common: &Common) -> Result<Outcome, CliError> {
    no_dot(common.format)?;
    let s = transposition_set(input)?;
    let c = build_cayley(&s, common.budget_vertices)?;
    let t = Perm::parse_cycles(t, s.n())?;
    let k = Perm::parse_cycles(k, s.n())?;
    let r = six_cycle_census(&c, &t, &k)?;
    let out = match common.format {
        Format::Json => json_text(&serde_json::to_value(r).expect("serializable")),
        _ => format!(
            "four_cycles: {}\nsix_cycles: {}\ndistance3_vertices: {}\n",
            r.four_cycles, r.six_cycles, r.distance3_vertices
        ),
    };
    Ok(Outcome::ok(out))
}

fn cmd_check_normal(input: &SetInput, common: &Common) -> Result<Outcome, CliError> {
    no_dot(common.format)?;
    let c = build_cayley(&transposition_set(input)?, common.budget_vertices)?;
    let config = AutConfig {
        max_vertices: common.budget_vertices as usize,
    };
    let aut = cayley_automorphism_group(&c, config)?;
    let normal = check_normal(&c, &aut);
    let out = match common.format {
        Format::Json => json_text(&json!({ "normal": normal, "order": aut.order.to_string() })),
        _ => format!("{normal}\n"),
    };
    Ok(Outcome::ok(out))
}

fn opt_bool(b: Option<bool>) -> String {
    b.map_or("unknown".to_string(), |b| b.to_string())
}

fn cmd_predict(input: &SetInput, common: &Common) -> Result<Outcome, CliError> {
    no_dot(common.format)?;
    let p = predict_aut(&transposition_set(input)?)?.to_json();
    let out = match common.format {
        Format::Json => json_text(&serde_json::to_value(&p).expect("serializable")),
        _ => format!(
            "family: {}\npredicted_order: {}\ndescription: {}\nsource: {}\nnormal: {}\n",
            p.family,
            p.predicted_order.as_deref().unwrap_or("unknown"),
            p.description,
            p.source,
            opt_bool(p.normal)
        ),
    };
    Ok(Outcome::ok(out))
}

fn cmd_verify(input: &SetInput, common: &Common) -> Result<Outcome, CliError> {
    no_dot(common.format)?;
    let r = verify_prediction(&transposition_set(input)?, common.budget_vertices)?;
    let j = r.to_json();
    let out = match common.format {
        Format::Json => json_text(&serde_json::to_value(&j).expect("serializable")),
        _ => format!(
            "agree: {}\npredicted_order: {}\ncomputed_order: {}\npredicted_normal: {}\ncomputed_normal: {}\ncomputed_only: {}\nsource: {}\n",
            j.agree,
            j.predicted.predicted_order.as_deref().unwrap_or("unknown"),
            j.computed_order,
            opt_bool(j.predicted.normal),
            j.computed_normal,
            j.computed_only,
            j.predicted.source,
        ),
    };
    Ok(Outcome {
        output: out,
        disagreement: !r.agree,
    })
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut v: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    Perm::from_images(&v).expect("shuffle of 1..=n")
}

/// One random case: composition laws, the cycle-count step, and
/// connectivity against closure size for a small random set.
fn fuzz_case(rng: &mut ChaCha8Rng) -> Result<bool, CliError> {
    let n = rng.gen_range(2..=7);
    let (p, q, r) = (random_perm(rng, n), random_perm(rng, n), random_perm(rng, n));
    let mut ok = p.compose(&q)?.compose(&r)? == p.compose(&q.compose(&r)?)?;
    ok &= p.compose(&p.inverse())?.is_identity();
    let i = rng.gen_range(1..n);
    let j = rng.gen_range(i + 1..=n);
    let t = Perm::transposition(n, i, j)?;
    let split = p.cycle_decomposition().iter().any(|c| c.contains(&i) && c.contains(&j));
    let delta = p.compose(&t)?.cycle_count() as i64 - p.cycle_count() as i64;
    ok &= delta == if split { 1 } else { -1 };
    let m = rng.gen_range(1..=4);
    let pairs: Vec<(usize, usize)> = (1..=m)
        .flat_map(|a| (a + 1..=m).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    let s = TranspositionSet::new(m, &pairs)?;
    let gens: Vec<Perm> = s.perms();
    let group = autgroup::PermGroup::new(m, gens).expect("degree matches");
    let full = group.order() == autgroup::GroupOrder::factorial(m);
    ok &= full == s.generates_full_symmetric();
    Ok(ok)
}

fn cmd_fuzz(seed: u64, cases: usize, common: &Common) -> Result<Outcome, CliError> {
    no_dot(common.format)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    for _ in 0..cases {
        if !fuzz_case(&mut rng)? {
            failures += 1;
        }
    }
    let out = match common.format {
        Format::Json => json_text(&json!({ "seed": seed, "cases": cases, "failures": failures })),
        _ => format!("seed: {seed}\ncases: {cases}\nfailures: {failures}\n"),
    };
    Ok(Outcome {
        output: out,
        disagreement: failures > 0,
    })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Build { input, common } => cmd_build(input, common),
        Command::Aut { input, common } => cmd_aut(input, common),
        Command::Diameter { input, levels, common } => cmd_diameter(input, *levels, common),
        Command::Census { input, t, k, common } => cmd_census(input, t, k, common),
        Command::CheckNormal { input, common } => cmd_check_normal(input, common),
        Command::Predict { input, common } => cmd_predict(input, common),
        Command::Verify { input, common } => cmd_verify(input, common),
        Command::Named { name, n, k, i, common } => {
            let (label, g) = named_graph(name, *n, *k, *i)?;
            Ok(Outcome::ok(graph_output(&label, &g, common.format)))
        }
        Command::Fuzz { seed, cases, common } => cmd_fuzz(*seed, *cases, common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.disagreement {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spider_legs_are_distinct() {
        assert_eq!(spider_legs(7), vec![1, 2, 3]);
        assert_eq!(spider_legs(8), vec![1, 2, 4]);
        assert_eq!(spider_legs(4), vec![1, 2]);
        assert_eq!(spider_legs(2), vec![1]);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
