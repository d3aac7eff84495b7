//! Command-line front end: solve instances, kernelize, report bounds,
//! generate benchmark families, and cross-validate the solvers against the
//! reference oracle.
//!
//! Exit codes: 0 for yes/pass, 1 for no, 2 for errors (and for
//! cross-validation failures).

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cc_cli::format;
use cc_cli::report::{BoundEntry, BoundsReport, KernelStats, RunReport};
use cc_core::above_guarantee::{solve_color_coding, solve_xp, ColorCodingAnswer, ColorCodingConfig};
use cc_core::bounds;
use cc_core::conflict::{branch_unstable, solve_two_colors, solve_via_vc};
use cc_core::exact_cover::solve_via_exactcover;
use cc_core::generators;
use cc_core::instance::{CCInstance, DisjointSets};
use cc_core::kernel::{kernelize, KernelOutcome};
use cc_core::matching::{
    greedy_induced_matching, maximum_induced_matching, provided_induced_matching, MatchingInfo,
};
use cc_core::oracle;
use cc_core::solution::{is_stable, StableSet};
use cc_core::tree_dp::{
    forest_dp, solve_deletion_wrapper, solve_secw_dp, spanning_tree_search, ResidualClass,
    TreeLayout,
};

#[derive(Parser)]
#[command(name = "ccsolve", version, about = "Solvers for clustering edge-colored (hyper)graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance (and report the optimum where the algorithm
    /// computes one).
    Solve(SolveArgs),
    /// Apply the reduction rules exhaustively and emit the reduced
    /// instance or an early decision.
    Kernel(KernelArgs),
    /// Report lower bounds and above-guarantee gaps.
    Bounds(BoundsArgs),
    /// Generate a seeded random instance.
    GenRandom(GenRandomArgs),
    /// Build an instance from a 3-SAT formula (DIMACS), normalized first.
    #[command(name = "gen-3sat")]
    Gen3Sat(GenCnfArgs),
    /// Build an instance from a monotone one-in-three SAT system (DIMACS).
    #[command(name = "gen-1in3")]
    Gen1In3(GenCnfArgs),
    /// Build an instance from a partitioned graph (multicolored clique).
    GenMcc(GenFileArgs),
    /// Build a hypergraph instance from an independent-set input graph.
    GenIs(GenIsArgs),
    /// Run every applicable solver on random instances and fail loudly on
    /// any disagreement.
    Crossvalidate(CrossArgs),
}

#[derive(clap::Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Repetition override for the randomized solver.
    #[arg(long)]
    repetitions: Option<u64>,
    /// Induced matching: `auto` or a solution-format file.
    #[arg(long, default_value = "auto")]
    induced_matching: String,
    /// Tree layout: `auto` or a layout file.
    #[arg(long, default_value = "auto")]
    tree: String,
    /// Write the witness (solution format) here on a yes answer.
    #[arg(long)]
    witness_out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Oracle,
    Vc,
    BranchR,
    Exactcover,
    Colorcode,
    Xp,
    SecwDp,
    Forest,
    TwoColor,
    Auto,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Oracle => "oracle",
            Algo::Vc => "vc",
            Algo::BranchR => "branch-r",
            Algo::Exactcover => "exactcover",
            Algo::Colorcode => "colorcode",
            Algo::Xp => "xp",
            Algo::SecwDp => "secw-dp",
            Algo::Forest => "forest",
            Algo::TwoColor => "two-color",
            Algo::Auto => "auto",
        }
    }
}

#[derive(clap::Args)]
struct KernelArgs {
    instance: PathBuf,
    /// Write the reduced instance here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the witness here when a rule decides yes.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct BoundsArgs {
    instance: PathBuf,
    #[arg(long, default_value = "auto")]
    induced_matching: String,
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct GenRandomArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    colors: usize,
    #[arg(long, default_value_t = 2)]
    order: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Plant a stable set of this size and set k accordingly.
    #[arg(long)]
    planted: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct GenCnfArgs {
    cnf: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct GenFileArgs {
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct GenIsArgs {
    graph: PathBuf,
    /// Independent-set target in the source graph.
    #[arg(long)]
    target: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct CrossArgs {
    #[arg(long, default_value_t = 200)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, default_value_t = 12)]
    max_m: usize,
    #[arg(long, default_value_t = 4)]
    colors: usize,
    /// Only generate plain graphs.
    #[arg(long)]
    graphs_only: bool,
    /// Where to dump a minimized reproducer on failure.
    #[arg(long, default_value = "crossvalidate-reproducer.cc")]
    dump: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Kernel(args) => cmd_kernel(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::GenRandom(args) => cmd_gen_random(args),
        Command::Gen3Sat(args) => cmd_gen_3sat(args),
        Command::Gen1In3(args) => cmd_gen_1in3(args),
        Command::GenMcc(args) => cmd_gen_mcc(args),
        Command::GenIs(args) => cmd_gen_is(args),
        Command::Crossvalidate(args) => cmd_crossvalidate(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_instance(path: &Path) -> Result<CCInstance> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(format::parse_instance(&text)?)
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn resolve_induced_matching(choice: &str, inst: &CCInstance) -> Result<MatchingInfo> {
    if choice == "auto" {
        if inst.graph.m() <= 24 {
            Ok(maximum_induced_matching(&inst.graph, 24).map_err(|e| anyhow!("{e}"))?)
        } else {
            Ok(greedy_induced_matching(&inst.graph))
        }
    } else {
        let text = std::fs::read_to_string(choice).with_context(|| format!("reading {choice}"))?;
        let set = format::parse_solution(&text)?;
        let members: Vec<usize> = set.edges.into_iter().collect();
        Ok(provided_induced_matching(&inst.graph, members).map_err(|e| anyhow!("{e}"))?)
    }
}

fn resolve_tree(choice: &str, inst: &CCInstance) -> Result<TreeLayout> {
    if choice == "auto" {
        Ok(spanning_tree_search(&inst.graph, 8).map_err(|e| anyhow!("{e}"))?)
    } else {
        let text = std::fs::read_to_string(choice).with_context(|| format!("reading {choice}"))?;
        Ok(format::parse_tree(&text, inst.graph.n)?)
    }
}

fn is_forest(inst: &CCInstance) -> bool {
    if !inst.graph.is_graph() {
        return false;
    }
    let mut dsu = DisjointSets::new(inst.graph.n);
    inst.graph
        .edges
        .iter()
        .all(|e| dsu.union(e.vertices[0], e.vertices[1]))
}

fn distinct_colors(inst: &CCInstance) -> usize {
    inst.graph
        .edges
        .iter()
        .map(|e| e.color)
        .collect::<BTreeSet<_>>()
        .len()
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    let inst = read_instance(&args.instance)?;
    let start = Instant::now();
    let mut kernel_stats = None;

    let (yes, optimum, witness): (bool, Option<usize>, Option<StableSet>) = match args.algo {
        Algo::Oracle => {
            let solved = oracle::max_stable(&inst.graph).map_err(|e| anyhow!("{e}"))?;
            (solved.optimum >= inst.k, Some(solved.optimum), Some(solved.witness))
        }
        Algo::Vc => {
            let solved = solve_via_vc(&inst);
            (solved.optimum >= inst.k, Some(solved.optimum), Some(solved.witness))
        }
        Algo::BranchR => {
            let solved = branch_unstable(&inst);
            (solved.optimum >= inst.k, Some(solved.optimum), Some(solved.witness))
        }
        Algo::Exactcover => {
            let witness = solve_via_exactcover(&inst).map_err(|e| anyhow!("{e}"))?;
            (witness.is_some(), None, witness)
        }
        Algo::Colorcode => {
            let matching = resolve_induced_matching(&args.induced_matching, &inst)?;
            let cfg = ColorCodingConfig {
                epsilon: args.epsilon,
                seed: args.seed,
                repetitions: args.repetitions,
            };
            match solve_color_coding(&inst, &matching, &cfg).map_err(|e| anyhow!("{e}"))? {
                ColorCodingAnswer::Yes(w) => (true, None, Some(w)),
                ColorCodingAnswer::ProbablyNo { repetitions } => {
                    eprintln!(
                        "note: randomized no after {repetitions} repetitions \
                         (miss probability at most {})",
                        args.epsilon
                    );
                    (false, None, None)
                }
            }
        }
        Algo::Xp => {
            let matching = resolve_induced_matching(&args.induced_matching, &inst)?;
            let witness = solve_xp(&inst, &matching).map_err(|e| anyhow!("{e}"))?;
            (witness.is_some(), None, witness)
        }
        Algo::SecwDp => {
            let layout = resolve_tree(&args.tree, &inst)?;
            let solved = solve_secw_dp(&inst, &layout).map_err(|e| anyhow!("{e}"))?;
            (solved.optimum >= inst.k, Some(solved.optimum), Some(solved.witness))
        }
        Algo::Forest => {
            let solved = forest_dp(&inst).map_err(|e| anyhow!("{e}"))?;
            (solved.optimum >= inst.k, Some(solved.optimum), Some(solved.witness))
        }
        Algo::TwoColor => {
            let solved = solve_two_colors(&inst).map_err(|e| anyhow!("{e}"))?;
            (solved.optimum >= inst.k, Some(solved.optimum), Some(solved.witness))
        }
        Algo::Auto => {
            if is_forest(&inst) {
                let solved = forest_dp(&inst).map_err(|e| anyhow!("{e}"))?;
                (solved.optimum >= inst.k, Some(solved.optimum), Some(solved.witness))
            } else if distinct_colors(&inst) <= 2 {
                let solved = solve_two_colors(&inst).map_err(|e| anyhow!("{e}"))?;
                (solved.optimum >= inst.k, Some(solved.optimum), Some(solved.witness))
            } else {
                let result = kernelize(&inst);
                match result.outcome {
                    KernelOutcome::DecidedYes { rule, witness } => {
                        kernel_stats = Some(KernelStats {
                            rules_applied: result.log.len(),
                            decided: true,
                            decided_by: Some(rule.name().to_string()),
                            reduced_vertices: None,
                            reduced_edges: None,
                        });
                        (true, None, Some(witness))
                    }
                    KernelOutcome::Reduced(red) => {
                        kernel_stats = Some(KernelStats {
                            rules_applied: result.log.len(),
                            decided: false,
                            decided_by: None,
                            reduced_vertices: Some(red.instance.graph.n),
                            reduced_edges: Some(red.instance.graph.m()),
                        });
                        let solved = solve_via_vc(&red.instance);
                        let witness: StableSet = solved
                            .witness
                            .edges
                            .iter()
                            .map(|&i| red.edge_origin[i])
                            .collect();
                        (solved.optimum >= inst.k, None, Some(witness))
                    }
                }
            }
        }
    };

    // Every reported yes must carry a checkable witness.
    if yes {
        let witness = witness
            .as_ref()
            .ok_or_else(|| anyhow!("yes answer without witness"))?;
        if is_stable(&inst.graph, witness) != Ok(true) || witness.len() < inst.k {
            bail!("internal error: witness failed verification");
        }
    }

    let witness_path = match (&args.witness_out, &witness) {
        (Some(path), Some(w)) if yes => {
            std::fs::write(path, format::format_solution(w))
                .with_context(|| format!("writing {}", path.display()))?;
            Some(path.display().to_string())
        }
        _ => None,
    };

    let report = RunReport {
        instance: args.instance.display().to_string(),
        algorithm: args.algo.name().to_string(),
        answer: if yes { "YES".into() } else { "NO".into() },
        optimum,
        witness_path,
        wall_ms: start.elapsed().as_millis(),
        kernel: kernel_stats,
        bounds: None,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.render_text());
    }
    Ok(ExitCode::from(if yes { 0 } else { 1 }))
}

fn cmd_kernel(args: KernelArgs) -> Result<ExitCode> {
    let inst = read_instance(&args.instance)?;
    let result = kernelize(&inst);
    print!("{}", format::format_kernel_log(&result.log));
    match result.outcome {
        KernelOutcome::DecidedYes { rule, witness } => {
            println!("DECIDED YES by={} witness={}", rule.name(), witness.len());
            if let Some(path) = &args.witness_out {
                std::fs::write(path, format::format_solution(&witness))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        KernelOutcome::Reduced(red) => {
            println!(
                "REDUCED vertices={} edges={} k={}",
                red.instance.graph.n,
                red.instance.graph.m(),
                red.instance.k
            );
            if let Some(path) = &args.out {
                std::fs::write(path, format::format_instance(&red.instance))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bounds(args: BoundsArgs) -> Result<ExitCode> {
    let inst = read_instance(&args.instance)?;
    let start = Instant::now();
    let matching = resolve_induced_matching(&args.induced_matching, &inst).ok();
    let report = bounds::gap_parameters(&inst, matching.as_ref());

    let mut entries = Vec::new();
    let budget = report.unstable_budget;
    let gap = |v: bounds::Frac| Some(format!("{}", bounds::Frac::from(budget) - v));
    entries.push(BoundEntry {
        name: "matching".into(),
        value: format!(
            "{}{}",
            report.matching,
            if report.matching_exact { "" } else { " (greedy)" }
        ),
        gap: Some(format!("{}", report.k_minus_matching())),
    });
    if let Some(induced) = report.induced_matching {
        entries.push(BoundEntry {
            name: "induced-matching".into(),
            value: format!("{induced}"),
            gap: report.k_minus_induced().map(|g| format!("{g}")),
        });
    }
    if let Some(v) = report.degree_bound {
        entries.push(BoundEntry {
            name: "degree-bound".into(),
            value: format!("{v}"),
            gap: gap(v),
        });
    }
    if let Some(v) = report.capped_degree_bound {
        entries.push(BoundEntry {
            name: "capped-degree-bound".into(),
            value: format!("{v}"),
            gap: gap(v),
        });
    }
    entries.push(BoundEntry {
        name: "hyper-degree-bound".into(),
        value: format!("{}", report.hyper_degree_bound),
        gap: gap(report.hyper_degree_bound),
    });
    entries.push(BoundEntry {
        name: "lp-bound".into(),
        value: format!("{}", report.lp_bound),
        gap: gap(report.lp_bound),
    });
    if let Ok(cert) = bounds::dual_certificate(&inst.graph) {
        entries.push(BoundEntry {
            name: "dual-certificate".into(),
            value: format!("{}", cert.value()),
            gap: gap(cert.value()),
        });
    }

    let answer = match report.decided {
        Some(bounds::Decided::Yes(reason)) => format!("YES ({reason})"),
        Some(bounds::Decided::No(reason)) => format!("NO ({reason})"),
        None => "UNDECIDED".into(),
    };
    let run = RunReport {
        instance: args.instance.display().to_string(),
        algorithm: "bounds".into(),
        answer,
        optimum: None,
        witness_path: None,
        wall_ms: start.elapsed().as_millis(),
        kernel: None,
        bounds: Some(BoundsReport { entries }),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&run)?);
    } else {
        print!("{}", run.render_text());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen_random(args: GenRandomArgs) -> Result<ExitCode> {
    let params = generators::RandomParams {
        n: args.n,
        m: args.m,
        colors: args.colors,
        order: args.order,
        planted: args.planted,
    };
    let inst = generators::random_instance(&params, args.seed);
    write_output(&args.out, &format::format_instance(&inst))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen_3sat(args: GenCnfArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.cnf)
        .with_context(|| format!("reading {}", args.cnf.display()))?;
    let cnf = format::parse_dimacs(&text)?;
    let normalized = generators::normalize_3sat(&cnf);
    let inst = generators::from_3sat(&normalized).map_err(|e| anyhow!("{e}"))?;
    write_output(&args.out, &format::format_instance(&inst))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen_1in3(args: GenCnfArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.cnf)
        .with_context(|| format!("reading {}", args.cnf.display()))?;
    let cnf = format::parse_dimacs(&text)?;
    let inst = generators::from_one_in_three(&cnf).map_err(|e| anyhow!("{e}"))?;
    write_output(&args.out, &format::format_instance(&inst))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen_mcc(args: GenFileArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let pg = format::parse_partitioned_graph(&text)?;
    let reduction = generators::from_multicolored_clique(&pg).map_err(|e| anyhow!("{e}"))?;
    write_output(&args.out, &format::format_instance(&reduction.instance))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen_is(args: GenIsArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.graph)
        .with_context(|| format!("reading {}", args.graph.display()))?;
    let g = format::parse_graph(&text)?;
    let inst = generators::from_independent_set(&g, args.target).map_err(|e| anyhow!("{e}"))?;
    write_output(&args.out, &format::format_instance(&inst))?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

fn cmd_crossvalidate(args: CrossArgs) -> Result<ExitCode> {
    if args.instances == 0 {
        println!("crossvalidate: WARNING no instances requested, trivially passing");
        return Ok(ExitCode::SUCCESS);
    }
    let start = Instant::now();
    for i in 0..args.instances {
        let seed = args.seed.wrapping_add(i as u64);
        let hyper = !args.graphs_only && i % 3 == 2;
        let params = generators::RandomParams {
            n: 2 + (seed % args.max_n.max(2) as u64) as usize,
            m: (seed % (args.max_m as u64 + 1)) as usize,
            colors: 1 + (seed % args.colors.max(1) as u64) as usize,
            order: if hyper { 3 } else { 2 },
            planted: None,
        };
        let inst = generators::random_instance(&params, seed);
        if let Err(msg) = validate_instance_consistency(&inst) {
            let minimized = minimize(inst);
            std::fs::write(&args.dump, format::format_instance(&minimized))
                .with_context(|| format!("writing {}", args.dump.display()))?;
            eprintln!(
                "crossvalidate: FAILED on instance {i} (seed {seed}): {msg}\n\
                 reproducer written to {}",
                args.dump.display()
            );
            return Ok(ExitCode::from(2));
        }
    }
    println!(
        "crossvalidate: PASS {} instances in {} ms",
        args.instances,
        start.elapsed().as_millis()
    );
    Ok(ExitCode::SUCCESS)
}

/// Runs every applicable solver plus the invariant checks on one instance;
/// returns the first discrepancy.
fn validate_instance_consistency(inst: &CCInstance) -> std::result::Result<(), String> {
    let g = &inst.graph;
    let reference = oracle::max_stable(g).map_err(|e| e.to_string())?;
    reference.assert_consistent(g);
    let expect = reference.optimum;
    let expect_yes = expect >= inst.k;

    let vc = solve_via_vc(inst);
    vc.assert_consistent(g);
    if vc.optimum != expect {
        return Err(format!("cover solver found {} expected {expect}", vc.optimum));
    }
    let branched = branch_unstable(inst);
    branched.assert_consistent(g);
    if branched.optimum != expect {
        return Err(format!(
            "pair branching found {} expected {expect}",
            branched.optimum
        ));
    }
    let by_cover = solve_via_exactcover(inst).map_err(|e| e.to_string())?;
    if by_cover.is_some() != expect_yes {
        return Err("exact-cover decision disagrees".into());
    }
    if let Some(w) = by_cover {
        if is_stable(g, &w) != Ok(true) || w.len() < inst.k {
            return Err("exact-cover witness invalid".into());
        }
    }
    if g.m() <= 24 {
        let induced = maximum_induced_matching(g, 24).map_err(|e| e.to_string())?;
        let xp = solve_xp(inst, &induced).map_err(|e| e.to_string())?;
        if xp.is_some() != expect_yes {
            return Err("enumeration above matching disagrees".into());
        }
    }
    if distinct_colors(inst) <= 2 {
        let tc = solve_two_colors(inst).map_err(|e| e.to_string())?;
        if tc.optimum != expect {
            return Err(format!("two-color solver found {} expected {expect}", tc.optimum));
        }
    }
    if g.is_graph() {
        let layout = spanning_tree_search(g, 3).map_err(|e| e.to_string())?;
        let dp = solve_secw_dp(inst, &layout).map_err(|e| e.to_string())?;
        if dp.optimum != expect {
            return Err(format!("layout dp found {} expected {expect}", dp.optimum));
        }
        let mut dsu = DisjointSets::new(g.n);
        let removable: BTreeSet<usize> = g
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| !dsu.union(e.vertices[0], e.vertices[1]))
            .map(|(i, _)| i)
            .collect();
        if removable.is_empty() {
            let forest = forest_dp(inst).map_err(|e| e.to_string())?;
            if forest.optimum != expect {
                return Err(format!("forest dp found {} expected {expect}", forest.optimum));
            }
        } else if removable.len() <= 12 {
            let wrapped = solve_deletion_wrapper(inst, &removable, ResidualClass::Forest)
                .map_err(|e| e.to_string())?;
            if wrapped.optimum != expect {
                return Err(format!(
                    "deletion wrapper found {} expected {expect}",
                    wrapped.optimum
                ));
            }
        }
        // Lower-bound chain and dual feasibility.
        let capped = bounds::capped_degree_bound(g).map_err(|e| e.to_string())?;
        let plain = bounds::degree_bound(g).map_err(|e| e.to_string())?;
        let cg = cc_core::conflict::build_conflict(g);
        let alpha = bounds::lp_cover_value(&cg);
        let cover = bounds::Frac::from((g.m() - expect) as i64);
        if !(capped <= plain && capped <= alpha && alpha <= cover) {
            return Err("lower-bound chain violated".into());
        }
        let cert = bounds::dual_certificate(g).map_err(|e| e.to_string())?;
        if !cert.is_feasible(&cg) || cert.value() < capped {
            return Err("dual certificate infeasible or too small".into());
        }
    }
    // Kernelization must preserve the answer.
    match kernelize(inst).outcome {
        KernelOutcome::DecidedYes { witness, .. } => {
            if !expect_yes || is_stable(g, &witness) != Ok(true) || witness.len() < inst.k {
                return Err("kernel decision unsound".into());
            }
        }
        KernelOutcome::Reduced(red) => {
            let reduced_expect = oracle::max_stable(&red.instance.graph)
                .map_err(|e| e.to_string())?
                .optimum
                >= red.instance.k;
            if reduced_expect != expect_yes {
                return Err("kernel changed the answer".into());
            }
        }
    }
    Ok(())
}

/// Greedily removes edges while the discrepancy persists.
fn minimize(mut inst: CCInstance) -> CCInstance {
    loop {
        let mut shrunk = false;
        for i in 0..inst.graph.m() {
            let mut candidate = inst.clone();
            candidate.graph.edges.remove(i);
            if validate_instance_consistency(&candidate).is_err() {
                inst = candidate;
                shrunk = true;
                break;
            }
        }
        if !shrunk {
            return inst;
        }
    }
}
