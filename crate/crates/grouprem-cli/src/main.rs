//! Command-line harness: spec files in, JSON or CSV on standard output,
//! logs on standard error. Identical spec and seed give byte-identical
//! output.

use clap::{Parser, Subcommand, ValueEnum};
use grouprem::{
    build_cycle_blowup_with_limit, build_system_blowup_with_limit, commuting_pairs_removal,
    count_solutions_system, count_solutions_system_naive, directed_cycle, exact_min_removal,
    greedy_arc_hitting_set, integrally_generates, is_graph_representation,
    is_strong_representation, parse_instance, parse_sweep, pigeonhole_reduce,
    product_free_removal, records_to_csv, removal_experiment, search_representation,
    search_strong_representation, small_doubling_removal, spanning_trees, BlowupGraph,
    ColoredDigraph, ElementSet, EquationSystem, Error, GroupTable, Instance, OrderedSystem,
    RemovalReport, SpanningTree, DEFAULT_MAX_ARCS,
};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "grouprem",
    version,
    about = "Exact equation-system experiments over finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed overriding the spec file's seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; parallelizes sweep trials, never changes any result
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output format on standard output
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on blow-up arc count
    #[arg(long, global = true)]
    max_arcs: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Count solutions of the spec's system over its sets
    Count {
        spec: PathBuf,
        /// Use the brute-force reference counter
        #[arg(long)]
        naive: bool,
    },
    /// Decide representability of a system or an explicit vector family,
    /// searching for a graph when none is given
    Represent { spec: PathBuf },
    /// Rebuild the blow-up and compare copy count against N x solutions
    Verify { spec: PathBuf },
    /// Arc removal: greedy pipeline, exact minimum oracle, or a sweep
    Removal {
        spec: Option<PathBuf>,
        /// Exact minimum element removal by branch and bound
        #[arg(long, conflicts_with_all = ["pipeline", "sweep"])]
        exact: bool,
        /// Greedy hitting set plus pigeonhole reduction
        #[arg(long, conflicts_with = "sweep")]
        pipeline: bool,
        /// Sweep config: groups x densities x trials
        #[arg(long, value_name = "CONFIG")]
        sweep: Option<PathBuf>,
    },
    /// Set-property pipelines with recomputed certificates
    App {
        #[command(subcommand)]
        which: AppCommand,
    },
}

#[derive(Subcommand)]
enum AppCommand {
    /// Product-freeness of A against a reference set: spec sets = [A, E]
    ProductFree { spec: PathBuf },
    /// Growth of the product set of A: spec sets = [A]
    Doubling { spec: PathBuf },
    /// Commuting products of A and B: spec sets = [A, B]
    Commuting { spec: PathBuf },
}

enum Failure {
    Lib(Error),
    NotFound(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Lib(Error::SizeLimit(_)) => 4,
            Failure::Lib(Error::ContractViolation(_)) => 1,
            Failure::Lib(_) | Failure::Usage(_) => 2,
            Failure::NotFound(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::NotFound(m) | Failure::Usage(m) => m.clone(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    if let Err(failure) = run(&cli) {
        eprintln!("error: {}", failure.message());
        std::process::exit(failure.code());
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Count { spec, naive } => cmd_count(cli, spec, *naive),
        Command::Represent { spec } => cmd_represent(cli, spec),
        Command::Verify { spec } => cmd_verify(cli, spec),
        Command::Removal {
            spec,
            exact,
            pipeline,
            sweep,
        } => match (spec, exact, pipeline, sweep) {
            (None, false, false, Some(config)) => cmd_sweep(cli, config),
            (Some(spec), true, false, None) => cmd_exact(cli, spec),
            (Some(spec), false, true, None) => cmd_pipeline(cli, spec),
            _ => Err(Failure::Usage(
                "removal takes a spec with --exact or --pipeline, or --sweep CONFIG alone".into(),
            )),
        },
        Command::App { which } => cmd_app(cli, which),
    }
}

fn read_spec(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Failure::NotFound(format!("spec file {} not found", path.display()))
        } else {
            Failure::Usage(format!("cannot read {}: {e}", path.display()))
        }
    })
}

fn load_instance(cli: &Cli, path: &Path) -> CliResult<Instance> {
    Ok(parse_instance(&read_spec(path)?)?.build(cli.seed)?)
}

fn need_sets(inst: &Instance) -> CliResult<&[ElementSet]> {
    inst.sets
        .as_deref()
        .ok_or_else(|| Failure::Usage("the spec defines no sets".into()))
}

fn need_system(inst: &Instance) -> CliResult<&EquationSystem> {
    inst.system
        .as_ref()
        .ok_or_else(|| Failure::Usage("the spec defines no system".into()))
}

/// Counts too large for a JSON number are emitted as decimal strings.
fn count_value(c: u128) -> Value {
    u64::try_from(c)
        .map(Value::from)
        .unwrap_or_else(|_| Value::from(c.to_string()))
}

fn emit_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_count(cli: &Cli, path: &Path, naive: bool) -> CliResult<()> {
    let inst = load_instance(cli, path)?;
    let sets = need_sets(&inst)?;
    let system = need_system(&inst)?;
    let solutions = if naive {
        count_solutions_system_naive(&inst.group, sets, system)?
    } else {
        count_solutions_system(&inst.group, sets, system)?
    };
    let n = inst.group.order();
    let m = system.num_variables();
    let k = system.num_equations();
    let normalized = solutions as f64 / (n as f64).powi((m - k) as i32);
    match cli.format {
        Format::Json => emit_json(&json!({
            "solutions": count_value(solutions),
            "normalized": normalized,
            "N": n,
            "m": m,
            "k": k,
        })),
        Format::Csv => {
            println!("solutions,normalized,N,m,k");
            println!("{solutions},{normalized},{n},{m},{k}");
        }
    }
    Ok(())
}

fn graph_value(g: &ColoredDigraph) -> Value {
    let arcs: Vec<Value> = (0..g.arc_count())
        .map(|i| {
            let (tail, head) = g.arc(i);
            json!({"tail": tail, "head": head, "color": i})
        })
        .collect();
    json!({"vertices": g.vertex_count(), "arcs": arcs})
}

/// The single product form reads as one all-positive word for
/// representability purposes.
fn single_as_word(m: usize) -> OrderedSystem {
    OrderedSystem::new(vec![(0..m).map(|v| (v, 1)).collect()]).expect("one all-positive word")
}

fn any_strong_tree(graph: &ColoredDigraph, sys: &OrderedSystem) -> CliResult<Option<SpanningTree>> {
    for tree in spanning_trees(graph) {
        if is_strong_representation(graph, &tree, sys)? {
            return Ok(Some(tree));
        }
    }
    Ok(None)
}

fn emit_represent(
    cli: &Cli,
    representable: bool,
    strong: Option<bool>,
    graph: Option<&ColoredDigraph>,
    tree: Option<&[usize]>,
    reason: Option<&str>,
) {
    match cli.format {
        Format::Json => emit_json(&json!({
            "representable": representable,
            "strong": strong,
            "graph": graph.map(graph_value),
            "tree": tree,
            "reason": reason,
        })),
        Format::Csv => {
            println!("representable,strong,reason");
            println!(
                "{representable},{},{}",
                strong.map_or(String::new(), |s| s.to_string()),
                reason.unwrap_or("")
            );
        }
    }
}

fn cmd_represent(cli: &Cli, path: &Path) -> CliResult<()> {
    let inst = load_instance(cli, path)?;

    if let Some(vectors) = &inst.vectors {
        let graph = inst
            .graph
            .as_ref()
            .ok_or_else(|| Failure::Usage("vectors need a graph to be checked against".into()))?;
        let verdict = integrally_generates(vectors, graph)?;
        match cli.format {
            Format::Json => emit_json(&json!({
                "representable-by-given-vectors": verdict.generates(),
                "reason": verdict.reason_code(),
            })),
            Format::Csv => {
                println!("representable-by-given-vectors,reason");
                println!(
                    "{},{}",
                    verdict.generates(),
                    verdict.reason_code().unwrap_or("")
                );
            }
        }
        return Ok(());
    }

    let system = need_system(&inst)?;
    match (system, &inst.graph) {
        (EquationSystem::Abelian(sys), Some(graph)) => {
            let representable = is_graph_representation(graph, sys)?;
            let verdict = integrally_generates(&sys.characteristic_vectors(), graph)?;
            emit_represent(
                cli,
                representable,
                None,
                Some(graph),
                inst.tree.as_deref(),
                verdict.reason_code(),
            );
        }
        (EquationSystem::Abelian(sys), None) => {
            let graph = search_representation(sys, sys.num_variables() + 1)?
                .ok_or_else(|| Failure::NotFound("no representing graph within caps".into()))?;
            emit_represent(cli, true, None, Some(&graph), None, None);
        }
        (EquationSystem::Ordered(sys), Some(graph)) => {
            let verdict = integrally_generates(&sys.characteristic_vectors(), graph)?;
            let (strong, tree) = match &inst.tree {
                Some(arcs) => {
                    let tree = SpanningTree::new(graph, arcs.clone(), 0)?;
                    (is_strong_representation(graph, &tree, sys)?, arcs.clone())
                }
                None => match any_strong_tree(graph, sys)? {
                    Some(tree) => (true, tree.arc_indices().to_vec()),
                    None => (false, Vec::new()),
                },
            };
            let tree = (!tree.is_empty()).then_some(tree);
            emit_represent(
                cli,
                verdict.generates(),
                Some(strong),
                Some(graph),
                tree.as_deref(),
                verdict.reason_code(),
            );
        }
        (EquationSystem::Ordered(sys), None) => {
            let (graph, tree) = search_strong_representation(sys, sys.num_variables() + 1)?
                .ok_or_else(|| {
                    Failure::NotFound("no strongly representing graph within caps".into())
                })?;
            emit_represent(
                cli,
                true,
                Some(true),
                Some(&graph),
                Some(tree.arc_indices()),
                None,
            );
        }
        (EquationSystem::Single(eq), Some(graph)) => {
            let word = single_as_word(eq.num_variables());
            let verdict = integrally_generates(&word.characteristic_vectors(), graph)?;
            let strong = match &inst.tree {
                Some(arcs) => {
                    let tree = SpanningTree::new(graph, arcs.clone(), 0)?;
                    is_strong_representation(graph, &tree, &word)?
                }
                None => any_strong_tree(graph, &word)?.is_some(),
            };
            emit_represent(
                cli,
                verdict.generates(),
                Some(strong),
                Some(graph),
                inst.tree.as_deref(),
                verdict.reason_code(),
            );
        }
        (EquationSystem::Single(eq), None) => {
            let m = eq.num_variables();
            let graph = directed_cycle(m)?;
            let tree: Vec<usize> = (0..m - 1).collect();
            emit_represent(cli, true, Some(true), Some(&graph), Some(&tree), None);
        }
    }
    Ok(())
}

/// Builds the blow-up for the instance. Single equations use the cycle
/// construction; systems use the given graph, or search for one.
fn build_blowup<'g>(
    group: &'g GroupTable,
    sets: &[ElementSet],
    system: &EquationSystem,
    graph: Option<&ColoredDigraph>,
    max_arcs: u64,
) -> CliResult<BlowupGraph<'g>> {
    let base = match system {
        EquationSystem::Single(eq) => {
            return Ok(build_cycle_blowup_with_limit(
                group,
                sets,
                eq.rhs(),
                max_arcs,
            )?)
        }
        EquationSystem::Abelian(sys) => match graph {
            Some(g) => g.clone(),
            None => search_representation(sys, sys.num_variables() + 1)?
                .ok_or_else(|| Failure::NotFound("no representing graph within caps".into()))?,
        },
        EquationSystem::Ordered(sys) => match graph {
            Some(g) => g.clone(),
            None => {
                search_strong_representation(sys, sys.num_variables() + 1)?
                    .ok_or_else(|| {
                        Failure::NotFound("no strongly representing graph within caps".into())
                    })?
                    .0
            }
        },
    };
    Ok(build_system_blowup_with_limit(group, sets, &base, max_arcs)?)
}

/// The removal pipeline is only sound over a representing blow-up; reject
/// graphs that do not represent before any arcs are chosen.
fn check_removal_base(
    system: &EquationSystem,
    graph: Option<&ColoredDigraph>,
) -> CliResult<()> {
    let Some(graph) = graph else { return Ok(()) };
    match system {
        EquationSystem::Single(_) => Ok(()),
        EquationSystem::Abelian(sys) => {
            if is_graph_representation(graph, sys)? {
                Ok(())
            } else {
                Err(Failure::Lib(Error::InvalidParameter(
                    "the graph does not represent the system".into(),
                )))
            }
        }
        EquationSystem::Ordered(sys) => {
            if any_strong_tree(graph, sys)?.is_some() {
                Ok(())
            } else {
                Err(Failure::Lib(Error::InvalidParameter(
                    "no spanning tree of the graph strongly represents the system".into(),
                )))
            }
        }
    }
}

fn cmd_verify(cli: &Cli, path: &Path) -> CliResult<()> {
    let inst = load_instance(cli, path)?;
    let sets = need_sets(&inst)?;
    let system = need_system(&inst)?;
    let max_arcs = cli.max_arcs.unwrap_or(DEFAULT_MAX_ARCS);
    let blowup = build_blowup(&inst.group, sets, system, inst.graph.as_ref(), max_arcs)?;
    eprintln!(
        "blow-up: {} vertices, {} arcs",
        blowup.order(),
        blowup.arc_count()
    );
    let copies = blowup.count_copies();
    let solutions = count_solutions_system(&inst.group, sets, system)?;
    let product = (inst.group.order() as u128)
        .checked_mul(solutions)
        .ok_or_else(|| Error::SizeLimit("N x solutions exceeds 128 bits".into()))?;
    match cli.format {
        Format::Json => emit_json(&json!({
            "copies": count_value(copies),
            "N_times_solutions": count_value(product),
            "match": copies == product,
        })),
        Format::Csv => {
            println!("copies,N_times_solutions,match");
            println!("{copies},{product},{}", copies == product);
        }
    }
    Ok(())
}

fn report_value(report: &RemovalReport) -> Value {
    serde_json::to_value(report).expect("serializable report")
}

fn cmd_pipeline(cli: &Cli, path: &Path) -> CliResult<()> {
    let inst = load_instance(cli, path)?;
    let sets = need_sets(&inst)?;
    let system = need_system(&inst)?;
    check_removal_base(system, inst.graph.as_ref())?;
    let max_arcs = cli.max_arcs.unwrap_or(DEFAULT_MAX_ARCS);
    let blowup = build_blowup(&inst.group, sets, system, inst.graph.as_ref(), max_arcs)?;
    let selection = greedy_arc_hitting_set(&blowup)?;
    let report = pigeonhole_reduce(&selection, &blowup, system)?;
    eprintln!(
        "pipeline: {} arcs hit every copy, {} elements removed, residual {}",
        report.e_size,
        report.total_removed(),
        report.residual
    );
    match cli.format {
        Format::Json => emit_json(&report_value(&report)),
        Format::Csv => {
            println!("e_size,total_removed,residual,threshold_n,threshold_m");
            println!(
                "{},{},{},{},{}",
                report.e_size,
                report.total_removed(),
                report.residual,
                report.threshold_n,
                report.threshold_m
            );
        }
    }
    Ok(())
}

fn cmd_exact(cli: &Cli, path: &Path) -> CliResult<()> {
    let inst = load_instance(cli, path)?;
    let sets = need_sets(&inst)?;
    let system = need_system(&inst)?;
    let result = exact_min_removal(&inst.group, sets, system)?;
    match cli.format {
        Format::Json => emit_json(&serde_json::to_value(&result).expect("serializable")),
        Format::Csv => {
            println!("total,optimal,lower_bound");
            println!("{},{},{}", result.total, result.optimal, result.lower_bound);
        }
    }
    Ok(())
}

fn cmd_sweep(cli: &Cli, config: &Path) -> CliResult<()> {
    let sweep = parse_sweep(&read_spec(config)?)?.build(cli.seed)?;
    let records = removal_experiment(
        &sweep.groups,
        &sweep.densities,
        &sweep.system,
        sweep.graph.as_ref(),
        sweep.trials,
        sweep.seed,
    )?;
    eprintln!("sweep: {} trials recorded", records.len());
    match cli.format {
        Format::Json => emit_json(&serde_json::to_value(&records).expect("serializable")),
        Format::Csv => print!("{}", records_to_csv(&records)),
    }
    Ok(())
}

fn cmd_app(cli: &Cli, which: &AppCommand) -> CliResult<()> {
    let (path, expected) = match which {
        AppCommand::ProductFree { spec } => (spec, 2),
        AppCommand::Doubling { spec } => (spec, 1),
        AppCommand::Commuting { spec } => (spec, 2),
    };
    let inst = load_instance(cli, path)?;
    let sets = need_sets(&inst)?;
    if sets.len() != expected {
        return Err(Failure::Usage(format!(
            "this application takes exactly {expected} set(s), the spec has {}",
            sets.len()
        )));
    }
    let result = match which {
        AppCommand::ProductFree { .. } => {
            product_free_removal(&inst.group, &sets[0], &sets[1])?
        }
        AppCommand::Doubling { .. } => small_doubling_removal(&inst.group, &sets[0])?,
        AppCommand::Commuting { .. } => commuting_pairs_removal(&inst.group, &sets[0], &sets[1])?,
    };
    match cli.format {
        Format::Json => emit_json(&serde_json::to_value(&result).expect("serializable")),
        Format::Csv => {
            println!("statistic,e_size,total_removed,residual");
            println!(
                "{},{},{},{}",
                result.statistic,
                result.report.e_size,
                result.report.total_removed(),
                result.report.residual
            );
        }
    }
    Ok(())
}
