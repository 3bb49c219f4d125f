//! Subcommand dispatch and report rendering (text and JSON).
//!
//! Exact rationals render as `p/q` (`p` when the denominator is one) in both
//! output modes; JSON numbers would silently lose exactness. Reports are
//! fully assembled before anything is printed, so error paths emit no
//! partial JSON.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use coates_core::{
    build_tree_digraph, build_undirected_coates, collect_tree_report, count_trees_per_root,
    det_oracle, det_via_trees, equicofactor_extend, jsc_check, phi, rational_str, IndexSet,
    Limits, Matrix, MinorMethod, Rational, UndirectedWeightedGraph, WeightedDigraph,
};

use crate::error::CliError;
use crate::format::{parse_matrix, write_matrix};
use crate::spectral::eigenvalue_tree_count;

/// Topological determinants, principal minors, and stability verdicts for
/// matrices in exact rational arithmetic.
#[derive(Debug, Parser)]
#[command(name = "coates", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Disable the work limits (prints a warning to stderr).
    #[arg(long, global = true)]
    pub force: bool,

    /// Largest predicted edge-combination count accepted by `phi`.
    #[arg(
        long,
        global = true,
        env = "COATES_MAX_COMBOS",
        default_value_t = 10_000_000,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    pub max_combos: u64,

    /// Largest number of directed trees enumerated before aborting.
    #[arg(
        long,
        global = true,
        env = "COATES_MAX_TREES",
        default_value_t = 1_000_000,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    pub max_trees: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Determinant of a square matrix, by tree enumeration or elimination.
    Det {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DetMethod::Trees)]
        method: DetMethod,
        /// Reference node on the extension digraph (1..=n+1).
        #[arg(long, default_value_t = 1)]
        root: usize,
        /// List every directed tree with its arc weights and product.
        #[arg(long)]
        list: bool,
    },
    /// Principal minor of a symmetric zero-row-sum matrix via acyclic
    /// subgraph enumeration.
    Phi {
        file: PathBuf,
        /// Vertex subset S, e.g. --set 1,2,3.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        /// List every valid and condition-excluded selection.
        #[arg(long)]
        list: bool,
    },
    /// Directed-tree count at a reference node, with an eigenvalue
    /// cross-check when the arc pattern is symmetric.
    Trees {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        root: usize,
        /// Use only the matrix-tree count; refuse asymmetric patterns.
        #[arg(long)]
        count_only: bool,
        /// Extend the matrix to its equicofactor bordering first.
        #[arg(long)]
        extend: bool,
    },
    /// Jacobi signature criterion verdict for a symmetric matrix.
    Jsc {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = JscMethod::Oracle)]
        method: JscMethod,
    },
    /// Parse a matrix file and print it back in canonical form.
    Echo { file: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DetMethod {
    Trees,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum JscMethod {
    Phi,
    Oracle,
}

/// Executes one invocation and returns the stdout payload.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let limits = if cli.force {
        eprintln!("warning: work limits disabled by --force");
        Limits::unlimited()
    } else {
        Limits { max_combinations: cli.max_combos, max_trees: cli.max_trees }
    };

    match &cli.command {
        Command::Det { file, method, root, list } => {
            cmd_det(&load_square(file)?, *method, *root, *list, cli.json, &limits)
        }
        Command::Phi { file, set, list } => {
            cmd_phi(&load_square(file)?, set, *list, cli.json, &limits)
        }
        Command::Trees { file, root, count_only, extend } => {
            cmd_trees(&load_square(file)?, *root, *count_only, *extend, cli.json, &limits)
        }
        Command::Jsc { file, method } => cmd_jsc(&load_square(file)?, *method, cli.json, &limits),
        Command::Echo { file } => Ok(write_matrix(&load_any(file)?)),
    }
}

fn load_any(path: &Path) -> Result<Matrix, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_matrix(&text)?)
}

fn load_square(path: &Path) -> Result<Matrix, CliError> {
    let m = load_any(path)?;
    if !m.is_square() {
        return Err(CliError::NotSquareInput { rows: m.rows(), cols: m.cols() });
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// det
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct DetReport {
    det: String,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    tree_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trees: Option<Vec<TreeEntry>>,
}

#[derive(Serialize)]
struct TreeEntry {
    arcs: Vec<ArcEntry>,
    product: String,
}

#[derive(Serialize)]
struct ArcEntry {
    from: usize,
    to: usize,
    weight: String,
}

fn cmd_det(
    m: &Matrix,
    method: DetMethod,
    root: usize,
    list: bool,
    json: bool,
    limits: &Limits,
) -> Result<String, CliError> {
    let report = match method {
        DetMethod::Oracle => {
            DetReport {
                det: rational_str(&det_oracle(m)?),
                method: "oracle",
                tree_count: None,
                trees: None,
            }
        }
        DetMethod::Trees => {
            let (det, tree_report) = det_via_trees(m, Some(root), limits)?;
            let trees = list.then(|| {
                let digraph = build_tree_digraph(&equicofactor_extend(m).expect("validated"))
                    .expect("validated");
                tree_report
                    .trees
                    .iter()
                    .map(|(tree, product)| TreeEntry {
                        arcs: tree
                            .arcs()
                            .iter()
                            .map(|&(from, to)| ArcEntry {
                                from,
                                to,
                                weight: rational_str(
                                    digraph.arc_weight(from, to).expect("tree arc exists"),
                                ),
                            })
                            .collect(),
                        product: rational_str(product),
                    })
                    .collect()
            });
            DetReport {
                det: rational_str(&det),
                method: "trees",
                tree_count: Some(tree_report.trees.len()),
                trees,
            }
        }
    };

    if json {
        return Ok(to_json(&report));
    }
    let mut out = format!("det = {}\nmethod = {}\n", report.det, report.method);
    if let Some(count) = report.tree_count {
        out.push_str(&format!("trees at root {root}: {count}\n"));
    }
    if let Some(trees) = &report.trees {
        for (i, entry) in trees.iter().enumerate() {
            let arcs: Vec<String> =
                entry.arcs.iter().map(|a| format!("{}->{}", a.from, a.to)).collect();
            let factors: Vec<String> =
                entry.arcs.iter().map(|a| format!("({})", a.weight)).collect();
            if arcs.is_empty() {
                out.push_str(&format!("t{}: empty tree  product = {}\n", i + 1, entry.product));
            } else {
                out.push_str(&format!(
                    "t{}: {}  {} = {}\n",
                    i + 1,
                    arcs.join(", "),
                    factors.join("x"),
                    entry.product
                ));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// phi
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct PhiOut {
    set: Vec<usize>,
    phi: String,
    minor: String,
    valid_count: usize,
    excluded_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    valid: Option<Vec<SelectionEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    excluded: Option<Vec<SelectionEntry>>,
}

#[derive(Serialize)]
struct SelectionEntry {
    edges: Vec<EdgeEntry>,
    product: String,
}

#[derive(Serialize)]
struct EdgeEntry {
    u: usize,
    v: usize,
    weight: String,
}

fn selection_entries(
    graph: &UndirectedWeightedGraph,
    selections: &[(coates_core::EdgeSelection, Rational)],
) -> Vec<SelectionEntry> {
    selections
        .iter()
        .map(|(sel, product)| SelectionEntry {
            edges: sel
                .indices()
                .iter()
                .map(|&i| {
                    let e = &graph.edges()[i];
                    EdgeEntry { u: e.u, v: e.v, weight: rational_str(&e.weight) }
                })
                .collect(),
            product: rational_str(product),
        })
        .collect()
}

fn cmd_phi(
    m: &Matrix,
    set: &[usize],
    list: bool,
    json: bool,
    limits: &Limits,
) -> Result<String, CliError> {
    let s = IndexSet::new(set.to_vec(), m.rows())?;
    let report = phi(m, &s, limits)?;
    let graph = build_undirected_coates(m)?;

    let out = PhiOut {
        set: s.indices().to_vec(),
        phi: rational_str(&report.phi),
        minor: rational_str(&report.minor),
        valid_count: report.valid_selections.len(),
        excluded_count: report.excluded_by_iv.len(),
        valid: list.then(|| selection_entries(&graph, &report.valid_selections)),
        excluded: list.then(|| selection_entries(&graph, &report.excluded_by_iv)),
    };

    if json {
        return Ok(to_json(&out));
    }
    let set_str: Vec<String> = out.set.iter().map(usize::to_string).collect();
    let mut text = format!(
        "S = {{{}}}\nphi = {}\nminor = {}\nvalid selections: {}\nexcluded by distinct-start condition: {}\n",
        set_str.join(","),
        out.phi,
        out.minor,
        out.valid_count,
        out.excluded_count
    );
    let describe = |prefix: &str, entries: &[SelectionEntry], text: &mut String| {
        for (i, entry) in entries.iter().enumerate() {
            let edges: Vec<String> =
                entry.edges.iter().map(|e| format!("{{{},{}}}", e.u, e.v)).collect();
            let factors: Vec<String> =
                entry.edges.iter().map(|e| format!("({})", e.weight)).collect();
            text.push_str(&format!(
                "{prefix}{}: {}  {} = {}\n",
                i + 1,
                edges.join(", "),
                factors.join("x"),
                entry.product
            ));
        }
    };
    if let Some(valid) = &out.valid {
        describe("v", valid, &mut text);
    }
    if let Some(excluded) = &out.excluded {
        describe("x", excluded, &mut text);
    }
    Ok(text)
}

// ---------------------------------------------------------------------------
// trees
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct TreesOut {
    root: usize,
    count: String,
    pattern: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigen_estimate: Option<f64>,
}

fn cmd_trees(
    m: &Matrix,
    root: usize,
    count_only: bool,
    extend: bool,
    json: bool,
    limits: &Limits,
) -> Result<String, CliError> {
    let extended;
    let matrix = if extend {
        extended = equicofactor_extend(m)?;
        &extended
    } else {
        m
    };
    let digraph: WeightedDigraph = build_tree_digraph(matrix)?;

    let out = if digraph.has_symmetric_pattern() {
        let count = count_trees_per_root(&digraph, root)?;
        let eigen = (count != 0u32.into())
            .then(|| eigenvalue_tree_count(&digraph.undirected_support()));
        TreesOut {
            root,
            count: count.to_string(),
            pattern: "symmetric",
            eigen_estimate: eigen,
        }
    } else {
        if count_only {
            return Err(CliError::UnsupportedCountOnly);
        }
        let report = collect_tree_report(&digraph, root, limits)?;
        TreesOut {
            root,
            count: report.trees.len().to_string(),
            pattern: "asymmetric",
            eigen_estimate: None,
        }
    };

    if json {
        return Ok(to_json(&out));
    }
    let mut text = format!(
        "root = {}\ndirected trees: {}\npattern: {}\n",
        out.root, out.count, out.pattern
    );
    if let Some(estimate) = out.eigen_estimate {
        text.push_str(&format!("eigenvalue estimate: {estimate}\n"));
    }
    Ok(text)
}

// ---------------------------------------------------------------------------
// jsc
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct JscOut {
    method: &'static str,
    rank: usize,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessOut>,
    minors_checked: u64,
}

#[derive(Serialize)]
struct WitnessOut {
    set: Vec<usize>,
    minor: String,
}

fn cmd_jsc(
    m: &Matrix,
    method: JscMethod,
    json: bool,
    limits: &Limits,
) -> Result<String, CliError> {
    let (core_method, name) = match method {
        JscMethod::Phi => (MinorMethod::Phi, "phi"),
        JscMethod::Oracle => (MinorMethod::Oracle, "oracle"),
    };
    let verdict = jsc_check(m, core_method, limits)?;
    let out = JscOut {
        method: name,
        rank: verdict.rank,
        passed: verdict.passed,
        witness: verdict.witness.as_ref().map(|(s, minor)| WitnessOut {
            set: s.indices().to_vec(),
            minor: rational_str(minor),
        }),
        minors_checked: verdict.minors_checked,
    };

    if json {
        return Ok(to_json(&out));
    }
    let mut text = format!(
        "method = {}\nrank = {}\nminors checked = {}\nverdict = {}\n",
        out.method,
        out.rank,
        out.minors_checked,
        if out.passed { "PASS" } else { "FAIL" }
    );
    if let Some(w) = &out.witness {
        let set_str: Vec<String> = w.set.iter().map(usize::to_string).collect();
        text.push_str(&format!("witness: S = {{{}}}, minor = {}\n", set_str.join(","), w.minor));
    }
    Ok(text)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}
