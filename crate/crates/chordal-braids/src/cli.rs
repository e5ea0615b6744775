//! Command-line front end. Thin by design: parse, dispatch into the
//! library, print JSON (or `--pretty` text), map outcomes to exit codes.
//!
//! Exit codes: `0` success / positive verdict, `1` negative verdict (not
//! chordal, not equal, check failed), `2` usage error, `3` internal
//! invariant failure.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::gamma::{GammaError, LimitElement};
use crate::graph::Graph;
use crate::invariants;
use crate::purebraid::{self, BraidError, BraidWord, IndexSet};
use crate::selftest;
use crate::trees::RootedTree;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser)]
#[command(
    name = "chordal-braids",
    version,
    about = "Chordal graphical arrangements: PEOs, colored braid groups, limits, invariants"
)]
struct Cli {
    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide chordality; prints a PEO certificate when chordal
    Chordal {
        /// graph: path to a .json/edge-list file, or an inline literal
        graph: String,
    },
    /// Compute a perfect elimination ordering
    Peo {
        graph: String,
        /// comma-separated simplex that must appear as the suffix
        #[arg(long)]
        suffix: Option<String>,
    },
    /// List the maximal simplices
    Cliques {
        graph: String,
        /// emit the clique intersection diagram in DOT format
        #[arg(long)]
        dot: bool,
    },
    /// Pure braid words: normal forms, equality, strand forgetting
    Braid {
        #[command(subcommand)]
        op: BraidOp,
    },
    /// Elements of Γ(G): normal forms, equality, projections, pull-backs
    Gamma {
        #[command(subcommand)]
        op: GammaOp,
    },
    /// Rooted trees: semidirect profile, comparability graph
    Tree {
        #[command(subcommand)]
        op: TreeOp,
    },
    /// Arrangement invariants; --oracle re-derives them by brute force
    Invariants {
        graph: String,
        #[arg(long)]
        oracle: bool,
    },
    /// Run the seeded verification suites
    Selftest {
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
        /// override the per-suite case counts
        #[arg(long)]
        cases: Option<usize>,
    },
}

#[derive(Args)]
struct StrandArgs {
    /// number of strands, labeled 1..=n
    #[arg(long)]
    strands: Option<usize>,
    /// comma-separated strand labels (fixes the order)
    #[arg(long)]
    index: Option<String>,
}

#[derive(Subcommand)]
enum BraidOp {
    /// Combed normal form, one free-word layer per strand
    Nf {
        word: String,
        #[command(flatten)]
        strands: StrandArgs,
    },
    /// Braid equality via the Artin action (exit 1 when not equal)
    Eq {
        left: String,
        right: String,
        #[command(flatten)]
        strands: StrandArgs,
    },
    /// Forget every strand outside --keep
    Forget {
        word: String,
        /// comma-separated strands to keep
        #[arg(long)]
        keep: String,
        #[command(flatten)]
        strands: StrandArgs,
    },
}

#[derive(Subcommand)]
enum GammaOp {
    /// Normal form along a PEO (defaults to a computed one)
    Nf {
        graph: String,
        /// edge word, e.g. "E[a,b] E[b,c]^-1"
        word: String,
        /// comma-separated PEO to use
        #[arg(long)]
        peo: Option<String>,
    },
    /// Equality of two edge words (exit 1 when not equal)
    Eq {
        graph: String,
        left: String,
        right: String,
    },
    /// Project to the braid group of a simplex
    Project {
        graph: String,
        word: String,
        /// comma-separated simplex vertices
        #[arg(long)]
        simplex: String,
    },
    /// Verify the pull-back square at a simplicial vertex (or all of them)
    PullbackCheck {
        graph: String,
        word: String,
        #[arg(long)]
        vertex: Option<String>,
    },
}

#[derive(Subcommand)]
enum TreeOp {
    /// Heights and the iterated semidirect product profile
    Profile { tree: String },
    /// The comparability graph (JSON, or DOT with --dot)
    Graph {
        tree: String,
        #[arg(long)]
        dot: bool,
    },
}

enum Outcome {
    /// payload plus verdict-driven exit code
    Report(Value, i32),
    /// raw text output (DOT, pretty listings)
    Text(String, i32),
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Internal(String),
}

impl From<GammaError> for CliError {
    fn from(e: GammaError) -> Self {
        match e {
            GammaError::Internal(_) => CliError::Internal(e.to_string()),
            GammaError::Braid(BraidError::Internal(_)) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<BraidError> for CliError {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<crate::graph::GraphError> for CliError {
    fn from(e: crate::graph::GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<crate::trees::TreeError> for CliError {
    fn from(e: crate::trees::TreeError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<crate::invariants::InvariantError> for CliError {
    fn from(e: crate::invariants::InvariantError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version as "errors"; keep their exit 0
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let pretty = cli.pretty;
    match dispatch(cli) {
        Ok(Outcome::Report(value, code)) => {
            if pretty {
                println!("{}", render_pretty(&value));
            } else {
                println!("{value}");
            }
            code
        }
        Ok(Outcome::Text(text, code)) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            code
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Chordal { graph } => {
            let g = load_graph(&graph)?;
            match g.find_peo() {
                Ok(peo) => Ok(Outcome::Report(
                    json!({"chordal": true, "peo": peo.order()}),
                    EXIT_OK,
                )),
                Err(_) => Ok(Outcome::Report(json!({"chordal": false}), EXIT_NEGATIVE)),
            }
        }
        Command::Peo { graph, suffix } => {
            let g = load_graph(&graph)?;
            let result = match suffix {
                Some(s) => {
                    let simplex = g.simplex(split_list(&s)).map_err(|e| CliError::Usage(e.to_string()))?;
                    g.peo_with_suffix(&simplex)
                }
                None => g.find_peo(),
            };
            match result {
                Ok(peo) => Ok(Outcome::Report(json!({"peo": peo.order()}), EXIT_OK)),
                Err(crate::graph::GraphError::NotChordal) => Ok(Outcome::Report(
                    json!({"error": "not chordal"}),
                    EXIT_NEGATIVE,
                )),
                Err(e) => Err(CliError::Usage(e.to_string())),
            }
        }
        Command::Cliques { graph, dot } => {
            let g = load_graph(&graph)?;
            if dot {
                let text = g.maximal_simplex_diagram_dot().map_err(cliques_err)?;
                return Ok(Outcome::Text(text, EXIT_OK));
            }
            match g.maximal_simplices() {
                Ok(cliques) => Ok(Outcome::Report(
                    json!({
                        "cliques": cliques.iter().map(|c| c.members().to_vec()).collect::<Vec<_>>()
                    }),
                    EXIT_OK,
                )),
                Err(crate::graph::GraphError::NotChordal) => Ok(Outcome::Report(
                    json!({"error": "not chordal"}),
                    EXIT_NEGATIVE,
                )),
                Err(e) => Err(CliError::Usage(e.to_string())),
            }
        }
        Command::Braid { op } => braid_command(op),
        Command::Gamma { op } => gamma_command(op),
        Command::Tree { op } => tree_command(op),
        Command::Invariants { graph, oracle } => invariants_command(&graph, oracle),
        Command::Selftest { seed, cases } => {
            let config = selftest::Config { seed, cases };
            let reports = selftest::run_all(config);
            let mut lines = Vec::new();
            let mut all_pass = true;
            for r in &reports {
                lines.push(r.summary_line());
                all_pass &= r.passed();
            }
            let text = lines.join("\n");
            println!("{text}");
            let code = if all_pass { EXIT_OK } else { EXIT_INTERNAL };
            Ok(Outcome::Report(
                json!({
                    "seed": seed,
                    "passed": all_pass,
                    "suites": reports.iter().map(|r| json!({
                        "name": r.name,
                        "cases": r.cases,
                        "failures": r.failures.len(),
                        "seconds": r.seconds,
                    })).collect::<Vec<_>>(),
                }),
                code,
            ))
        }
    }
}

fn cliques_err(e: crate::graph::GraphError) -> CliError {
    CliError::Usage(e.to_string())
}

fn braid_command(op: BraidOp) -> Result<Outcome, CliError> {
    match op {
        BraidOp::Nf { word, strands } => {
            let index = strand_index(&strands)?;
            let w = BraidWord::parse(&index, &word)?;
            let combed = purebraid::comb(&w)?;
            let layers: Vec<Value> = combed
                .layers()
                .iter()
                .map(|l| json!({"strand": l.strand, "word": l.word.to_string()}))
                .collect();
            Ok(Outcome::Report(json!({"layers": layers}), EXIT_OK))
        }
        BraidOp::Eq {
            left,
            right,
            strands,
        } => {
            let index = strand_index(&strands)?;
            let u = BraidWord::parse(&index, &left)?;
            let v = BraidWord::parse(&index, &right)?;
            let equal = u.equal(&v)?;
            Ok(Outcome::Report(
                json!({"equal": equal}),
                if equal { EXIT_OK } else { EXIT_NEGATIVE },
            ))
        }
        BraidOp::Forget {
            word,
            keep,
            strands,
        } => {
            let index = strand_index(&strands)?;
            let w = BraidWord::parse(&index, &word)?;
            let j = index.subset(split_list(&keep))?;
            let forgotten = w.forget(&j)?;
            Ok(Outcome::Report(
                json!({
                    "word": forgotten.to_string(),
                    "index": j.labels().collect::<Vec<_>>(),
                }),
                EXIT_OK,
            ))
        }
    }
}

fn gamma_command(op: GammaOp) -> Result<Outcome, CliError> {
    match op {
        GammaOp::Nf { graph, word, peo } => {
            let g = load_graph(&graph)?;
            let elt = LimitElement::from_edge_word_str(&g, &word)?;
            let peo = match peo {
                Some(p) => {
                    let order: Vec<String> = split_list(&p).map(str::to_string).collect();
                    if !g.is_valid_peo(&order) {
                        return Err(CliError::Usage("not a valid PEO of this graph".into()));
                    }
                    crate::graph::Peo::from_order_unchecked(order)
                }
                None => g.find_peo().map_err(cliques_err)?,
            };
            let nf = elt.normal_form(&peo)?;
            let layers: Vec<Value> = peo
                .order()
                .iter()
                .zip(nf.layers())
                .map(|(v, l)| json!({"vertex": v, "word": l.to_string()}))
                .collect();
            Ok(Outcome::Report(
                json!({"peo": peo.order(), "layers": layers}),
                EXIT_OK,
            ))
        }
        GammaOp::Eq { graph, left, right } => {
            let g = load_graph(&graph)?;
            let x = LimitElement::from_edge_word_str(&g, &left)?;
            let y = LimitElement::from_edge_word_str(&g, &right)?;
            let equal = x.equal(&y)?;
            Ok(Outcome::Report(
                json!({"equal": equal}),
                if equal { EXIT_OK } else { EXIT_NEGATIVE },
            ))
        }
        GammaOp::Project {
            graph,
            word,
            simplex,
        } => {
            let g = load_graph(&graph)?;
            let elt = LimitElement::from_edge_word_str(&g, &word)?;
            let s = g.simplex(split_list(&simplex)).map_err(cliques_err)?;
            let projected = elt.project(&s)?;
            Ok(Outcome::Report(
                json!({
                    "simplex": s.members(),
                    "word": projected.to_string(),
                }),
                EXIT_OK,
            ))
        }
        GammaOp::PullbackCheck {
            graph,
            word,
            vertex,
        } => {
            let g = load_graph(&graph)?;
            let elt = LimitElement::from_edge_word_str(&g, &word)?;
            let vertices: Vec<String> = match vertex {
                Some(v) => vec![v],
                None => g
                    .vertices()
                    .filter(|v| g.is_simplicial(v).unwrap_or(false))
                    .map(str::to_string)
                    .collect(),
            };
            let mut checks = Vec::new();
            let mut all_ok = true;
            for v in &vertices {
                let ok = elt.verify_pullback_square(v)?;
                all_ok &= ok;
                checks.push(json!({"vertex": v, "ok": ok}));
            }
            Ok(Outcome::Report(
                json!({"ok": all_ok, "checks": checks}),
                if all_ok { EXIT_OK } else { EXIT_NEGATIVE },
            ))
        }
    }
}

fn tree_command(op: TreeOp) -> Result<Outcome, CliError> {
    match op {
        TreeOp::Profile { tree } => {
            let t = load_tree(&tree)?;
            let profile = t.semidirect_profile()?;
            Ok(Outcome::Report(
                json!({
                    "root": t.root(),
                    "profile": profile.iter().map(|(h, vs)| json!({
                        "height": h,
                        "count": vs.len(),
                        "vertices": vs,
                    })).collect::<Vec<_>>(),
                }),
                EXIT_OK,
            ))
        }
        TreeOp::Graph { tree, dot } => {
            let t = load_tree(&tree)?;
            let g = t.comparability_graph();
            if dot {
                Ok(Outcome::Text(g.to_dot(), EXIT_OK))
            } else {
                Ok(Outcome::Report(
                    serde_json::from_str(&g.to_json_string())
                        .map_err(|e| CliError::Internal(e.to_string()))?,
                    EXIT_OK,
                ))
            }
        }
    }
}

fn invariants_command(graph: &str, oracle: bool) -> Result<Outcome, CliError> {
    let g = load_graph(graph)?;
    if !g.is_chordal() {
        return Ok(Outcome::Report(
            json!({"error": "not chordal"}),
            EXIT_NEGATIVE,
        ));
    }
    let peo = g.find_peo().map_err(cliques_err)?;
    let exps = invariants::exponents(&g, &peo)?;
    let chromatic = invariants::chromatic_polynomial(&g)?;
    let poincare = invariants::poincare_polynomial(&g)?;
    let regions = invariants::region_count(&g)?;
    let mut payload = json!({
        "peo": peo.order(),
        "exponents": exps.exponents(),
        "chromatic": {
            "coeffs": chromatic.to_json(),
            "display": chromatic.to_string(),
        },
        "poincare": {
            "coeffs": poincare.to_json(),
            "display": poincare.display_with("t"),
        },
        "regions": regions,
    });
    if oracle {
        let mut color_checks = Vec::new();
        let mut ok = true;
        for q in 0..=5u32 {
            let counted = invariants::brute_force_coloring_count(&g, q)?;
            let predicted = chromatic.eval(q as i64);
            ok &= predicted == counted as i64;
            color_checks.push(json!({"q": q, "formula": predicted, "count": counted}));
        }
        let orientations = invariants::brute_force_acyclic_orientations(&g)?;
        ok &= orientations == regions;
        payload["oracle"] = json!({
            "ok": ok,
            "colorings": color_checks,
            "acyclic_orientations": orientations,
        });
        if !ok {
            return Ok(Outcome::Report(payload, EXIT_INTERNAL));
        }
    }
    Ok(Outcome::Report(payload, EXIT_OK))
}

fn strand_index(args: &StrandArgs) -> Result<IndexSet, CliError> {
    match (&args.strands, &args.index) {
        (Some(n), None) => Ok(IndexSet::strands(*n)),
        (None, Some(list)) => Ok(IndexSet::new(split_list(list).map(str::to_string))?),
        _ => Err(CliError::Usage(
            "provide exactly one of --strands N or --index a,b,c".into(),
        )),
    }
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

/// Accept a path or an inline literal. Content starting with `{` is JSON,
/// otherwise edge-list text.
fn load_graph(arg: &str) -> Result<Graph, CliError> {
    let content = resolve_input(arg);
    let text = content.trim();
    let parsed = if text.starts_with('{') {
        Graph::from_json_str(text)
    } else {
        Graph::from_edge_list_text(text)
    };
    parsed.map_err(|e| CliError::Usage(e.to_string()))
}

/// Accept a path or an inline literal. `{...}` is JSON, `(...)name;` or a
/// bare name is Newick.
fn load_tree(arg: &str) -> Result<RootedTree, CliError> {
    let content = resolve_input(arg);
    let text = content.trim();
    let parsed = if text.starts_with('{') {
        RootedTree::from_json_str(text)
    } else {
        RootedTree::from_newick(text)
    };
    parsed.map_err(|e| CliError::Usage(e.to_string()))
}

fn resolve_input(arg: &str) -> String {
    if !arg.trim_start().starts_with(['{', '(']) && std::path::Path::new(arg).is_file() {
        if let Ok(content) = std::fs::read_to_string(arg) {
            return content;
        }
    }
    arg.to_string()
}

fn render_pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).unwrap_or_else(|_| value.to_string())
}

// smoke tests live in tests/cli.rs, where the built binary is exercised
