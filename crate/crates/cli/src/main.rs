//! Command-line front end: parse run-spec documents, invoke the library,
//! emit results as text, JSON, and DOT.
//!
//! Exit status: 0 on success, 1 on input or validation errors, 2 when an
//! internal invariant is violated (including census runs that uncover a
//! failing hard check).

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use softrough::census::run_census;
use softrough::io::{
    soft_rough_to_dot, CensusConfigDoc, GraphDoc, ResolvedSpec, RunSpecDoc, SoftRoughGraphDoc,
    SpecOperand,
};
use softrough::rough::{combine, is_soft_rough_subgraph, srg_product, CombineMode};
use softrough::soft::{build_soft_set, edge_soft_set};
use softrough::{edge_approx, vertex_approx, Error, ProductKind};

#[derive(Parser)]
#[command(
    name = "softrough",
    version,
    about = "Soft rough graphs: approximations, predicates, combinations, products, and an exhaustive census"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print F, K, the four approximation sets, and definability verdicts.
    Approx { spec: PathBuf },
    /// Build the soft rough graph and print it as a JSON document.
    Build {
        spec: PathBuf,
        /// Also write a DOT rendering of the two approximation subgraphs.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the four induced-form flags.
    Classify { spec: PathBuf },
    /// Decide whether the first soft rough graph is a soft rough subgraph of
    /// the second, and print the containment table.
    #[command(name = "check-subgraph")]
    CheckSubgraph { candidate: PathBuf, parent: PathBuf },
    /// Print the soft-rough-tree verdict.
    Tree { spec: PathBuf },
    /// Componentwise AND/OR of two soft rough graphs over the same host.
    Combine {
        #[arg(long)]
        mode: String,
        spec1: PathBuf,
        /// Second operand; defaults to the `second` entry of the first spec.
        spec2: Option<PathBuf>,
    },
    /// Product of two soft rough graphs; prints lower/upper product graphs.
    Product {
        #[arg(long)]
        kind: String,
        spec1: PathBuf,
        spec2: Option<PathBuf>,
    },
    /// Run the exhaustive census described by a config document.
    Census {
        config: PathBuf,
        /// Write the full report as JSON in addition to the summary table.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

enum CliError {
    Input(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn load_spec(path: &Path) -> CliResult<ResolvedSpec> {
    let doc = RunSpecDoc::parse(&read_file(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(doc.resolve()?)
}

/// Second operand: an explicit second spec file wins, otherwise the `second`
/// entry embedded in the first document.
fn second_operand(first: &ResolvedSpec, spec2: Option<&PathBuf>) -> CliResult<SpecOperand> {
    if let Some(path) = spec2 {
        return Ok(load_spec(path)?.primary);
    }
    first.second.clone().ok_or_else(|| {
        CliError::Input(
            "a second operand is required: pass a second spec file or embed `second` in the first"
                .to_string(),
        )
    })
}

fn render_set<T: Display>(set: impl IntoIterator<Item = T>) -> String {
    let items: Vec<String> = set.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn verdict(definable: bool) -> &'static str {
    if definable {
        "soft definable"
    } else {
        "soft rough"
    }
}

fn cmd_approx(spec: &Path) -> CliResult<()> {
    let operand = load_spec(spec)?.primary;
    let f = build_soft_set(&operand.graph, &operand.params, &operand.relation)?;
    let k = edge_soft_set(&operand.graph, &f)?;
    for (a, image) in f.images() {
        println!("F({a}) = {}", render_set(image));
    }
    for (a, image) in k.images() {
        println!("K({a}) = {}", render_set(image));
    }
    let va = vertex_approx(&f, &operand.target)?;
    let ea = edge_approx(&k, &f, &operand.target)?;
    println!("vertex lower = {}", render_set(va.lower()));
    println!("vertex upper = {}", render_set(va.upper()));
    println!("edge lower = {}", render_set(ea.lower()));
    println!("edge upper = {}", render_set(ea.upper()));
    println!("vertex verdict = {}", verdict(va.is_definable()));
    println!("edge verdict = {}", verdict(ea.is_definable()));
    Ok(())
}

fn cmd_build(spec: &Path, dot: Option<&PathBuf>) -> CliResult<()> {
    let srg = load_spec(spec)?.primary.build()?;
    println!("{}", SoftRoughGraphDoc::from_srg(&srg).to_json());
    if let Some(path) = dot {
        write_file(path, &soft_rough_to_dot(&srg))?;
    }
    Ok(())
}

fn cmd_classify(spec: &Path) -> CliResult<()> {
    let srg = load_spec(spec)?.primary.build()?;
    let flags = srg.classify_induced();
    println!("lower vertex induced = {}", flags.lower_vertex_induced);
    println!("upper vertex induced = {}", flags.upper_vertex_induced);
    println!("lower edge induced = {}", flags.lower_edge_induced);
    println!("upper edge induced = {}", flags.upper_edge_induced);
    Ok(())
}

fn cmd_check_subgraph(candidate: &Path, parent: &Path) -> CliResult<()> {
    let candidate = load_spec(candidate)?.primary.build()?;
    let parent = load_spec(parent)?.primary.build()?;
    let report = is_soft_rough_subgraph(&candidate, &parent)?;
    println!("soft rough subgraph = {}", report.verdict);
    println!("parameters contained = {}", report.params_subset);
    println!("lower graph contained = {}", report.lower_graph_contained);
    println!("upper graph contained = {}", report.upper_graph_contained);
    println!("lower vertices contained = {}", report.lower_vertices_contained);
    println!("upper vertices contained = {}", report.upper_vertices_contained);
    println!("lower edges contained = {}", report.lower_edges_contained);
    println!("upper edges contained = {}", report.upper_edges_contained);
    println!("containment characterization = {}", report.containment_verdict);
    Ok(())
}

fn cmd_tree(spec: &Path) -> CliResult<()> {
    let srg = load_spec(spec)?.primary.build()?;
    println!("soft rough tree = {}", srg.is_soft_rough_tree());
    Ok(())
}

fn cmd_combine(mode: &str, spec1: &Path, spec2: Option<&PathBuf>) -> CliResult<()> {
    let mode: CombineMode = mode.parse()?;
    let first = load_spec(spec1)?;
    let second = second_operand(&first, spec2)?;
    let s1 = first.primary.build()?;
    let s2 = second.build()?;
    let result = combine(&s1, &s2, mode)?;
    println!("mode = {mode}");
    println!("lower vertices = {}", render_set(&result.lower_vertices));
    println!("lower edges = {}", render_set(&result.lower_edges));
    println!("upper vertices = {}", render_set(&result.upper_vertices));
    println!("upper edges = {}", render_set(&result.upper_edges));
    println!("lower well-formed = {}", result.lower_well_formed);
    println!("upper well-formed = {}", result.upper_well_formed);
    println!("parameter pairs = {}", render_set(&result.param_pairs));
    println!("target pairs = {}", render_set(&result.target_pairs));
    Ok(())
}

fn cmd_product(kind: &str, spec1: &Path, spec2: Option<&PathBuf>) -> CliResult<()> {
    let kind: ProductKind = kind.parse()?;
    let first = load_spec(spec1)?;
    let second = second_operand(&first, spec2)?;
    let s1 = first.primary.build()?;
    let s2 = second.build()?;
    let result = srg_product(&s1, &s2, kind)?;
    let doc = serde_json::json!({
        "kind": kind.name(),
        "lower": GraphDoc::from_graph(&result.lower),
        "upper": GraphDoc::from_graph(&result.upper),
        "lower_within_host_product": result.lower_within_host,
        "upper_within_host_product": result.upper_within_host,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    if !result.lower_within_host || !result.upper_within_host {
        eprintln!(
            "note: {kind} product of the approximation subgraphs is not contained in the \
             product of the hosts (copy indexing depends on the base vertex ordering)"
        );
    }
    Ok(())
}

fn cmd_census(config: &Path, report_path: Option<&PathBuf>) -> CliResult<()> {
    let doc = CensusConfigDoc::parse(&read_file(config)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", config.display())))?;
    let report = run_census(&doc.to_config()?)?;
    print!("{}", report.summary());
    if let Some(path) = report_path {
        let json = serde_json::to_string_pretty(&report).expect("report serialization");
        write_file(path, &json)?;
    }
    if !report.is_clean() {
        return Err(CliError::Internal(format!(
            "census uncovered {} hard check failure(s)",
            report.hard_failures()
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Approx { spec } => cmd_approx(spec),
        Command::Build { spec, dot } => cmd_build(spec, dot.as_ref()),
        Command::Classify { spec } => cmd_classify(spec),
        Command::CheckSubgraph { candidate, parent } => cmd_check_subgraph(candidate, parent),
        Command::Tree { spec } => cmd_tree(spec),
        Command::Combine { mode, spec1, spec2 } => cmd_combine(mode, spec1, spec2.as_ref()),
        Command::Product { kind, spec1, spec2 } => cmd_product(kind, spec1, spec2.as_ref()),
        Command::Census { config, report } => cmd_census(config, report.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    #[test]
    fn library_errors_map_to_the_right_exit_class() {
        assert!(matches!(
            CliError::from(Error::EmptyTarget),
            CliError::Input(_)
        ));
        assert!(matches!(
            CliError::from(Error::Invariant("x".into())),
            CliError::Internal(_)
        ));
    }

    #[test]
    fn render_set_is_sorted_and_spaced() {
        let set: BTreeSet<&str> = ["b", "a"].into_iter().collect();
        assert_eq!(render_set(set), "{a, b}");
    }
}
