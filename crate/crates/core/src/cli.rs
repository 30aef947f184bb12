//! Command-line front end.
//!
//! Exit codes: 0 on success or a certificate, 1 when no certificate was
//! found, 2 on invalid input, 3 when an internal cross-check fails.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::blocksys::{
    build_acompatible, certify_block_nonneg, solve_block, zero_components, BlockCertification,
    BlockStructure,
};
use crate::crn::{
    conservation_laws, law_to_i64, parameterize, parse_network, ConservationSub, Network,
    SteadyStateTask,
};
use crate::error::Error;
use crate::forests::all_minors_check;
use crate::linsys::{bordered_laplacian, cramer_oracle, solve, LinearSystem, Solution, SystemJson};
use crate::multigraph::{GraphJson, Multidigraph};
use crate::pgraph::{certify_nonneg, Certification, PGraphWitness};
use crate::testgen::{random_graph, subsets};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CERTIFIED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "forestsolve", version, about = "Solve symbolic linear systems with spanning forests and certify nonnegative solutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Input file; standard input when omitted or `-`.
    #[arg(long, short, global = true)]
    pub input: Option<PathBuf>,

    /// Output file; standard output when omitted.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, short, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Cross-check solutions against Cramer's rule.
    #[arg(long, global = true)]
    pub oracle: bool,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,

    /// Maximum number of candidate Laplacians tried by the block search.
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,

    /// Reorder the equations before solving: comma-separated 1-based row
    /// numbers, new row i being old row p_i.
    #[arg(long, global = true)]
    pub permute_rows: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a system through spanning trees of its canonical graph.
    Solve,
    /// Search for a P-graph certifying a nonnegative solution.
    Certify,
    /// Solve a block system through the block forest formula.
    BlockSolve(BlockArgs),
    /// Certify a nonnegative solution of a block system.
    BlockCertify(BlockArgs),
    /// Check the all-minors matrix-tree identity on random graphs.
    MttCheck {
        /// Number of random graphs.
        #[arg(long, default_value_t = 200)]
        random: usize,
        /// Maximum number of nodes.
        #[arg(long, default_value_t = 5)]
        nodes: usize,
        /// Maximum number of edges.
        #[arg(long, default_value_t = 10)]
        edges: usize,
        /// Largest size of the deleted row and column sets.
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Steady-state parameterization of a reaction network.
    CrnParam {
        /// Species solved for, comma-separated, in unknown order.
        #[arg(long, required = true)]
        solve_for: String,
        /// Species kept as symbols, comma-separated.
        #[arg(long, default_value = "")]
        parameters: String,
        /// `<law>:<total>:<species>`: conservation law (1-based) with total
        /// symbol replacing the equation of a species (name or 1-based index).
        #[arg(long)]
        conserve: Vec<String>,
        /// Species whose equation is dropped (name or 1-based index).
        #[arg(long)]
        drop: Vec<String>,
        /// Block sizes and trailing size, e.g. `4:1`, overriding the proposal.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Graphviz rendering of a graph JSON or of a system's canonical graph.
    GraphDot,
}

#[derive(clap::Args, Debug)]
pub struct BlockArgs {
    /// Distinguished rows, comma-separated and 1-based, overriding the
    /// default choice.
    #[arg(long)]
    pub distinguished: Option<String>,
}

/// Result of a command: exit code, text for standard output and for
/// standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn input_err(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

/// Parses `args` (program name first) and runs the command with `stdin` as
/// default input. Writes to `--output` when given.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = execute(&cli, stdin);
    match result {
        Ok((code, text)) => {
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, &text) {
                    return Outcome {
                        code: EXIT_INPUT,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    };
                }
                Outcome { code, stdout: String::new(), stderr: String::new() }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
        Err(Failure::Input(m)) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Internal(m)) => Outcome {
            code: EXIT_INTERNAL,
            stdout: String::new(),
            stderr: format!("internal error: {m}\n"),
        },
    }
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<String, Failure> {
    match &cli.input {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| input_err(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| input_err(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| input_err(format!("{what}: `{x}` is not a positive integer")))
        })
        .collect()
}

fn read_system(cli: &Cli, stdin: &mut dyn Read) -> Result<(LinearSystem, SystemJson), Failure> {
    let text = read_input(cli, stdin)?;
    let j: SystemJson =
        serde_json::from_str(&text).map_err(|e| input_err(format!("invalid system JSON: {e}")))?;
    let mut sys = LinearSystem::from_json(&j)?;
    if let Some(p) = &cli.permute_rows {
        let perm = parse_list(p, "--permute-rows")?;
        if perm.contains(&0) {
            return Err(input_err("--permute-rows is 1-based"));
        }
        let perm: Vec<usize> = perm.iter().map(|x| x - 1).collect();
        sys = sys.permute_rows(&perm)?;
    }
    Ok((sys, j))
}

fn render(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn solution_strings(sol: &Solution) -> Vec<String> {
    sol.components.iter().map(|c| c.to_string()).collect()
}

fn solution_text(vars: &[String], sol: &Solution) -> String {
    vars.iter()
        .zip(&sol.components)
        .map(|(v, c)| format!("{v} = {c}\n"))
        .collect()
}

/// Compares with Cramer's rule when requested; `Some("agree")` for the
/// report.
fn oracle_check(cli: &Cli, sys: &LinearSystem, sol: &Solution) -> Result<Option<&'static str>, Failure> {
    if !cli.oracle {
        return Ok(None);
    }
    let reference = cramer_oracle(sys)?;
    if reference.rat_equal(sol) {
        Ok(Some("agree"))
    } else {
        Err(Failure::Internal("solution differs from Cramer's rule".into()))
    }
}

fn witness_json(w: &PGraphWitness) -> Value {
    let g = w.graph();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({"id": e.id.to_string(), "src": e.source.0, "tgt": e.target.0, "label": e.label.to_string()}))
        .collect();
    let mu: BTreeMap<String, Vec<String>> = w
        .partition
        .mu
        .iter()
        .map(|(k, v)| (k.to_string(), v.iter().map(|e| e.to_string()).collect()))
        .collect();
    let sums: BTreeMap<String, String> = w
        .group_sums
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    json!({"nodes": g.node_count(), "edges": edges, "mu": mu, "group_sums": sums})
}

fn block_structure(sys: &LinearSystem, j: &SystemJson, args: &BlockArgs) -> Result<BlockStructure, Failure> {
    let over = args
        .distinguished
        .as_deref()
        .map(|s| parse_list(s, "--distinguished"))
        .transpose()?;
    match &j.blocks {
        Some(b) => {
            let mut b = b.clone();
            if over.is_some() {
                b.j = over;
            }
            Ok(BlockStructure::from_json(sys, &b)?)
        }
        None => {
            let proposal = crate::crn::propose_blocks(sys);
            log::info!(
                "no blocks given, using sizes {:?} with trailing size {}",
                proposal.sizes(),
                proposal.m0()
            );
            match over {
                Some(jv) => Ok(BlockStructure::new(proposal.sizes().to_vec(), proposal.m0(), jv)?),
                None => Ok(proposal),
            }
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<(i32, String), Failure> {
    match &cli.command {
        Command::Solve => {
            let (sys, _) = read_system(cli, stdin)?;
            let sol = solve(&sys)?;
            let oracle = oracle_check(cli, &sys, &sol)?;
            let out = match cli.format {
                Format::Json => render(&json!({
                    "variables": sys.variables,
                    "solution": solution_strings(&sol),
                    "oracle": oracle,
                })),
                Format::Text => solution_text(&sys.variables, &sol),
                Format::Dot => bordered_laplacian(&sys).canonical_graph().to_dot(),
            };
            Ok((EXIT_OK, out))
        }
        Command::Certify => {
            let (sys, _) = read_system(cli, stdin)?;
            match certify_nonneg(&sys)? {
                Certification::Certified(c) => {
                    let oracle = oracle_check(cli, &sys, &c.solution)?;
                    let out = match cli.format {
                        Format::Json => render(&json!({
                            "certified": true,
                            "witness": witness_json(&c.witness),
                            "solution": solution_strings(&c.solution),
                            "oracle": oracle,
                        })),
                        Format::Text => format!("certified\n{}", solution_text(&sys.variables, &c.solution)),
                        Format::Dot => c.witness.graph().to_dot(),
                    };
                    Ok((EXIT_OK, out))
                }
                Certification::NotCertified(reason) => {
                    let out = match cli.format {
                        Format::Json => render(&json!({
                            "certified": false,
                            "witness": Value::Null,
                            "solution": Value::Null,
                            "reason": format!("no P-graph witness: {reason}"),
                        })),
                        Format::Text | Format::Dot => format!("no P-graph witness: {reason}\n"),
                    };
                    Ok((EXIT_NOT_CERTIFIED, out))
                }
            }
        }
        Command::BlockSolve(args) => {
            let (sys, j) = read_system(cli, stdin)?;
            let bs = block_structure(&sys, &j, args)?;
            let form = crate::blocksys::validate_block_form(&sys, &bs);
            if !form.is_empty() {
                let msgs: Vec<String> = form.iter().map(|v| v.to_string()).collect();
                return Err(input_err(format!("not in block form: {}", msgs.join("; "))));
            }
            let w = build_acompatible(&sys, &bs)
                .ok_or_else(|| Failure::Internal("heuristic Laplacian is not compatible".into()))?;
            let sol = solve_block(&sys, &bs, &w)?;
            let oracle = oracle_check(cli, &sys, &sol)?;
            let zeros: Vec<usize> = zero_components(&w.graph, &bs).into_iter().collect();
            let out = match cli.format {
                Format::Json => render(&json!({
                    "variables": sys.variables,
                    "blocks": bs.to_json(),
                    "solution": solution_strings(&sol),
                    "zero_components": zeros,
                    "oracle": oracle,
                })),
                Format::Text => solution_text(&sys.variables, &sol),
                Format::Dot => w.graph.to_dot(),
            };
            Ok((EXIT_OK, out))
        }
        Command::BlockCertify(args) => {
            let (sys, j) = read_system(cli, stdin)?;
            let bs = block_structure(&sys, &j, args)?;
            match certify_block_nonneg(&sys, &bs, cli.budget as usize)? {
                BlockCertification::Certified(c) => {
                    let oracle = oracle_check(cli, &sys, &c.solution)?;
                    let zeros: Vec<usize> = c.zero_components.iter().copied().collect();
                    let out = match cli.format {
                        Format::Json => render(&json!({
                            "certified": true,
                            "blocks": bs.to_json(),
                            "witness": witness_json(&c.witness),
                            "solution": solution_strings(&c.solution),
                            "zero_components": zeros,
                            "candidates": c.candidates,
                            "oracle": oracle,
                        })),
                        Format::Text => format!("certified\n{}", solution_text(&sys.variables, &c.solution)),
                        Format::Dot => c.witness.graph().to_dot(),
                    };
                    Ok((EXIT_OK, out))
                }
                BlockCertification::NotCertified(f) => {
                    let out = match cli.format {
                        Format::Json => render(&json!({
                            "certified": false,
                            "blocks": bs.to_json(),
                            "witness": Value::Null,
                            "solution": Value::Null,
                            "reason": f.to_string(),
                        })),
                        Format::Text | Format::Dot => format!("not certified: {f}\n"),
                    };
                    Ok((EXIT_NOT_CERTIFIED, out))
                }
            }
        }
        Command::MttCheck {
            random,
            nodes,
            edges,
            max_size,
        } => mtt_check(cli.seed, *random, *nodes, *edges, *max_size),
        Command::CrnParam {
            solve_for,
            parameters,
            conserve,
            drop,
            blocks,
        } => {
            let net = parse_network(&read_input(cli, stdin)?)?;
            let names = |s: &str| -> Vec<String> {
                s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect()
            };
            let species = |s: &str| -> Result<String, Failure> { species_ref(&net, s) };
            let mut subs = Vec::new();
            for c in conserve {
                let parts: Vec<&str> = c.split(':').collect();
                let [law, total, row] = parts[..] else {
                    return Err(input_err(format!("--conserve `{c}` is not <law>:<total>:<species>")));
                };
                let law: usize = law
                    .parse()
                    .ok()
                    .filter(|&l| l >= 1)
                    .ok_or_else(|| input_err(format!("--conserve: law index `{law}` must be 1 or more")))?;
                subs.push(ConservationSub {
                    law: law - 1,
                    total: total.to_string(),
                    replaces: species(row)?,
                });
            }
            let task = SteadyStateTask {
                solve_for: names(solve_for),
                parameters: names(parameters),
                conservation: subs,
                drop: drop.iter().map(|d| species(d)).collect::<Result<_, _>>()?,
            };
            let blocks = match blocks {
                Some(b) => {
                    let parts = parse_list(&b.replace(':', ","), "--blocks")?;
                    let (m0, sizes) = parts
                        .split_last()
                        .ok_or_else(|| input_err("--blocks needs sizes and a trailing size"))?;
                    Some((sizes.to_vec(), *m0))
                }
                None => None,
            };
            let steady = crate::crn::build_steady_system(&net, &task)?;
            let bs = match blocks {
                Some((sizes, m0)) => Some(BlockStructure::from_system(&steady.system, sizes, m0, None)?),
                None => None,
            };
            let rep = parameterize(&net, &task, bs, cli.budget as usize)?;
            let certified = matches!(rep.certification, BlockCertification::Certified(_));
            if let BlockCertification::Certified(c) = &rep.certification {
                oracle_check(cli, &rep.steady.system, &c.solution)?;
            }
            let laws: Vec<Vec<i64>> = conservation_laws(&net).iter().map(|l| law_to_i64(l)).collect();
            let out = match cli.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        species: &'a [String],
                        conservation_laws: Vec<Vec<i64>>,
                        #[serde(flatten)]
                        report: crate::crn::ReportJson,
                    }
                    render(&Out {
                        species: &net.species,
                        conservation_laws: laws,
                        report: rep.to_json(),
                    })
                }
                Format::Text => match rep.expressions() {
                    Some(ex) => ex.iter().map(|(v, e)| format!("{v} = {e}\n")).collect(),
                    None => format!("not certified: {}\n", rep.to_json().diagnostics.unwrap_or_default()),
                },
                Format::Dot => match &rep.certification {
                    BlockCertification::Certified(c) => c.witness.graph().to_dot(),
                    BlockCertification::NotCertified(f) => format!("not certified: {f}\n"),
                },
            };
            Ok((if certified { EXIT_OK } else { EXIT_NOT_CERTIFIED }, out))
        }
        Command::GraphDot => {
            let text = read_input(cli, stdin)?;
            if let Ok(g) = serde_json::from_str::<GraphJson>(&text) {
                return Ok((EXIT_OK, Multidigraph::from_json(&g)?.to_dot()));
            }
            let j: SystemJson = serde_json::from_str(&text)
                .map_err(|e| input_err(format!("expected graph or system JSON: {e}")))?;
            let sys = LinearSystem::from_json(&j)?;
            Ok((EXIT_OK, bordered_laplacian(&sys).canonical_graph().to_dot()))
        }
    }
}

fn species_ref(net: &Network, s: &str) -> Result<String, Failure> {
    if let Ok(i) = s.parse::<usize>() {
        return net
            .species
            .get(i.wrapping_sub(1))
            .cloned()
            .ok_or_else(|| input_err(format!("species index {i} out of range")));
    }
    Ok(s.to_string())
}

#[derive(Serialize)]
struct MttReport {
    seed: u64,
    graphs: usize,
    checks: usize,
    mismatches: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Value>,
}

fn mtt_check(seed: u64, graphs: usize, nodes: usize, edges: usize, max_size: usize) -> Result<(i32, String), Failure> {
    if nodes == 0 {
        return Err(input_err("--nodes must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    let mut mismatches = 0;
    let mut counterexample = None;
    for _ in 0..graphs {
        let n = rand::Rng::gen_range(&mut rng, 1..=nodes);
        let g = random_graph(&mut rng, n, edges, -3, 3);
        for k in 0..=max_size.min(n) {
            for f in subsets(n, k) {
                for b in subsets(n, k) {
                    checks += 1;
                    if !all_minors_check(&g, &f, &b)? {
                        mismatches += 1;
                        if counterexample.is_none() {
                            let ids = |s: &[crate::multigraph::NodeId]| s.iter().map(|v| v.0).collect::<Vec<_>>();
                            counterexample = Some(json!({"graph": g.to_json(), "F": ids(&f), "B": ids(&b)}));
                        }
                    }
                }
            }
        }
    }
    let report = MttReport {
        seed,
        graphs,
        checks,
        mismatches,
        counterexample,
    };
    let code = if mismatches == 0 { EXIT_OK } else { EXIT_INTERNAL };
    Ok((code, render(&report)))
}
