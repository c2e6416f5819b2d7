//! The `isf` command line.
//!
//! Every run prints exactly one JSON [`Report`] on standard output. Exit
//! status is 0 when all checked properties hold, 1 when a checked property
//! fails, and 2 for usage or input errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chromatic::{
    admissibility_table, broken_circuits, chromatic_polynomial, is_admissible_goodvertex, is_nbc,
    movable_edge_search, peo_isf_check, whitney_check, Convention,
};
use crate::enumerate::{
    a_poly, enumerate_if, isf, isf_factorization_check, strong_logconcavity_all,
    strong_logconcavity_check,
};
use crate::graph::{Forest, OrderedGraph};
use crate::psi::{psi_with, verify_psi_all, verify_psi_with};
use crate::stirling::{
    forest_to_permutation, permutation_psi, permutation_to_forest, stirling_row, Permutation,
};
use crate::subset::{
    phi_with, subset_pair_map_with, Bracketing, GroundSet, ReversedBracketing, SubsetInjection,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub ok: bool,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Parser)]
#[command(name = "isf", version, about = "Increasing spanning forests and their local injection")]
pub struct Cli {
    /// Worker threads for exhaustive checks (results do not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum PhiChoice {
    #[default]
    Bracketing,
    Reversed,
}

impl PhiChoice {
    fn injection(self) -> &'static dyn SubsetInjection {
        match self {
            PhiChoice::Bracketing => &Bracketing,
            PhiChoice::Reversed => &ReversedBracketing,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConventionArg {
    Min,
    Max,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Min => Convention::RemoveMin,
            ConventionArg::Max => Convention::RemoveMax,
        }
    }
}

#[derive(Debug, Args)]
struct GraphArg {
    /// Graph JSON file, or `-` for standard input.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the increasing spanning forests with a given number of components.
    Enumerate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        components: usize,
    },
    /// The polynomial a_k(x), or all of ISF(x, t) when --k is omitted.
    Poly {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Apply the subset injection to a subset of a ground set.
    Phi {
        #[arg(long)]
        ground: String,
        #[arg(long)]
        subset: String,
        #[arg(long, value_enum, default_value_t)]
        phi: PhiChoice,
    },
    /// Move one element from Y to X for subsets of [n] with |X| < |Y|.
    SubsetMap {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum, default_value_t)]
        phi: PhiChoice,
    },
    /// Apply the local injection to a pair of increasing forests.
    Psi {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        forest_a: PathBuf,
        #[arg(long)]
        forest_b: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        phi: PhiChoice,
    },
    /// Exhaustive verification.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Permutations and Stirling numbers of the first kind.
    #[command(subcommand)]
    Stirling(StirlingCommand),
    /// Chromatic polynomial by deletion-contraction.
    Chromatic {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Broken circuits, and NBC status of a forest if given.
    Nbc {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum)]
        convention: ConventionArg,
        #[arg(long)]
        forest: Option<PathBuf>,
    },
    /// Good-vertex admissibility of a forest, or the admissibility table of the graph.
    Admissible {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        forest: Option<PathBuf>,
    },
    /// Look for pairs of admissible forests without a movable edge.
    SearchMovable {
        #[command(flatten)]
        graph: GraphArg,
        /// Vertex map v -> perm[v-1], e.g. "1,3,4,2".
        #[arg(long)]
        relabel: Option<String>,
    },
    /// Identity and inequality checks.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Apply psi to all of IF_k x IF_l; every k < l when --k/--l are omitted.
    Psi {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, requires = "l")]
        k: Option<usize>,
        #[arg(long, requires = "k")]
        l: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        phi: PhiChoice,
    },
}

#[derive(Debug, Subcommand)]
enum StirlingCommand {
    Row {
        #[arg(long)]
        n: u32,
    },
    ToPerm {
        #[arg(long)]
        forest: PathBuf,
    },
    ToForest {
        #[arg(long)]
        perm: PathBuf,
    },
    Psi {
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        tau: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    Factorization {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Every 0 < p <= q < n unless --p and --q are given.
    Logconcavity {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, requires = "q")]
        p: Option<usize>,
        #[arg(long, requires = "p")]
        q: Option<usize>,
    },
    /// Both conventions unless --convention is given.
    Whitney {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum)]
        convention: Option<ConventionArg>,
    },
    /// ok when the identity holds exactly for perfect-elimination orders.
    Peo {
        #[command(flatten)]
        graph: GraphArg,
    },
}

/// A command that produced a report, or an input problem worth exit 2.
type Outcome = Result<(String, bool, Value), String>;

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn load<T: DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Accepts `[1,2,3]`, `1,2,3` or an empty string.
pub fn parse_set(s: &str) -> Result<BTreeSet<u32>, String> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let items: Vec<u32> = inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("bad set element {t:?} in {s:?}")))
        .collect::<Result<_, _>>()?;
    let set: BTreeSet<u32> = items.iter().copied().collect();
    if set.len() != items.len() {
        return Err(format!("repeated element in {s:?}"));
    }
    Ok(set)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn execute(command: Command) -> Outcome {
    let input = |e: String| e;
    let lib = |e: crate::Error| e.to_string();
    let graph = |g: &GraphArg| load::<OrderedGraph>(&g.graph);
    let done = |name: &str, ok: bool, payload: Value| Ok((name.to_owned(), ok, payload));
    match command {
        Command::Enumerate { graph: g, components } => {
            let g = graph(&g).map_err(input)?;
            let forests = enumerate_if(&g, components).map_err(lib)?;
            done("enumerate", true, json!({ "k": components, "count": forests.len(), "forests": forests }))
        }
        Command::Poly { graph: g, k } => {
            let g = graph(&g).map_err(input)?;
            match k {
                Some(k) => done("poly", true, json!({ "k": k, "poly": a_poly(&g, k).map_err(lib)? })),
                None => done("poly", true, json!({ "isf": isf(&g) })),
            }
        }
        Command::Phi { ground, subset, phi } => {
            let ground = GroundSet::new(parse_set(&ground).map_err(input)?.into_iter().collect())
                .map_err(lib)?;
            let x = parse_set(&subset).map_err(input)?;
            let image = phi_with(phi.injection(), &ground, &x).map_err(lib)?;
            let added = image.difference(&x).next().copied();
            done("phi", true, json!({ "phi": phi.injection().name(), "image": image, "added": added }))
        }
        Command::SubsetMap { n, x, y, phi } => {
            let x = parse_set(&x).map_err(input)?;
            let y = parse_set(&y).map_err(input)?;
            let r = subset_pair_map_with(phi.injection(), n, &x, &y).map_err(lib)?;
            done("subset-map", true, to_value(&r))
        }
        Command::Psi { graph: g, forest_a, forest_b, phi } => {
            let g = graph(&g).map_err(input)?;
            let a: Forest = load(&forest_a).map_err(input)?;
            let b: Forest = load(&forest_b).map_err(input)?;
            let trace = psi_with(phi.injection(), &g, &a, &b).map_err(lib)?;
            done("psi", true, to_value(&trace))
        }
        Command::Verify(VerifyCommand::Psi { graph: g, k, l, phi }) => {
            let g = graph(&g).map_err(input)?;
            let reports = match (k, l) {
                (Some(k), Some(l)) => vec![verify_psi_with(phi.injection(), &g, k, l).map_err(lib)?],
                _ => verify_psi_all(phi.injection(), &g),
            };
            let ok = reports.iter().all(|r| r.all_ok());
            let payload = if reports.len() == 1 { to_value(&reports[0]) } else { to_value(&reports) };
            done("verify psi", ok, payload)
        }
        Command::Stirling(StirlingCommand::Row { n }) => {
            done("stirling row", true, to_value(&stirling_row(n)))
        }
        Command::Stirling(StirlingCommand::ToPerm { forest }) => {
            let f: Forest = load(&forest).map_err(input)?;
            let p = forest_to_permutation(&f).map_err(lib)?;
            done("stirling to-perm", true, json!({ "perm": p, "cycle_notation": p.to_string() }))
        }
        Command::Stirling(StirlingCommand::ToForest { perm }) => {
            let p: Permutation = load(&perm).map_err(input)?;
            done("stirling to-forest", true, to_value(&permutation_to_forest(&p)))
        }
        Command::Stirling(StirlingCommand::Psi { sigma, tau }) => {
            let sigma: Permutation = load(&sigma).map_err(input)?;
            let tau: Permutation = load(&tau).map_err(input)?;
            let r = permutation_psi(&sigma, &tau).map_err(lib)?;
            done("stirling psi", r.spectators_unchanged, to_value(&r))
        }
        Command::Chromatic { graph: g } => {
            let g = graph(&g).map_err(input)?;
            let p = chromatic_polynomial(&g);
            done("chromatic", true, json!({ "coeffs": p, "display": p.to_string() }))
        }
        Command::Nbc { graph: g, convention, forest } => {
            let g = graph(&g).map_err(input)?;
            let convention = Convention::from(convention);
            let mut payload = json!({
                "convention": convention,
                "broken_circuits": broken_circuits(&g, convention),
            });
            if let Some(path) = forest {
                let f: Forest = load(&path).map_err(input)?;
                payload["is_nbc"] = json!(is_nbc(&g, &f, convention).map_err(lib)?);
            }
            done("nbc", true, payload)
        }
        Command::Admissible { graph: g, forest } => {
            let g = graph(&g).map_err(input)?;
            match forest {
                Some(path) => {
                    let f: Forest = load(&path).map_err(input)?;
                    let ok = is_admissible_goodvertex(&g, &f).map_err(lib)?;
                    done("admissible", true, json!({ "admissible": ok }))
                }
                None => done("admissible", true, to_value(&admissibility_table(&g))),
            }
        }
        Command::SearchMovable { graph: g, relabel } => {
            let g = graph(&g).map_err(input)?;
            let perm: Option<Vec<u32>> = relabel
                .map(|s| parse_list(&s))
                .transpose()
                .map_err(input)?;
            let r = movable_edge_search(&g, perm.as_deref()).map_err(lib)?;
            done("search-movable", true, to_value(&r))
        }
        Command::Check(CheckCommand::Factorization { graph: g }) => {
            let g = graph(&g).map_err(input)?;
            let r = isf_factorization_check(&g);
            done("check factorization", r.equal, to_value(&r))
        }
        Command::Check(CheckCommand::Logconcavity { graph: g, p, q }) => {
            let g = graph(&g).map_err(input)?;
            let reports = match (p, q) {
                (Some(p), Some(q)) => vec![strong_logconcavity_check(&g, p, q).map_err(lib)?],
                _ => strong_logconcavity_all(&g),
            };
            let ok = reports.iter().all(|r| r.is_nonneg);
            done("check logconcavity", ok, to_value(&reports))
        }
        Command::Check(CheckCommand::Whitney { graph: g, convention }) => {
            let g = graph(&g).map_err(input)?;
            let conventions = match convention {
                Some(c) => vec![c.into()],
                None => Convention::BOTH.to_vec(),
            };
            let reports: Vec<_> = conventions.into_iter().map(|c| whitney_check(&g, c)).collect();
            let ok = reports.iter().all(|r| r.equal);
            done("check whitney", ok, to_value(&reports))
        }
        Command::Check(CheckCommand::Peo { graph: g }) => {
            let g = graph(&g).map_err(input)?;
            let r = peo_isf_check(&g);
            done("check peo", r.holds == r.natural_order_is_peo, to_value(&r))
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<u32>, String> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("bad relabeling entry {t:?}")))
        .collect()
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Enumerate { .. } => "enumerate",
        Command::Poly { .. } => "poly",
        Command::Phi { .. } => "phi",
        Command::SubsetMap { .. } => "subset-map",
        Command::Psi { .. } => "psi",
        Command::Verify(_) => "verify psi",
        Command::Stirling(StirlingCommand::Row { .. }) => "stirling row",
        Command::Stirling(StirlingCommand::ToPerm { .. }) => "stirling to-perm",
        Command::Stirling(StirlingCommand::ToForest { .. }) => "stirling to-forest",
        Command::Stirling(StirlingCommand::Psi { .. }) => "stirling psi",
        Command::Chromatic { .. } => "chromatic",
        Command::Nbc { .. } => "nbc",
        Command::Admissible { .. } => "admissible",
        Command::SearchMovable { .. } => "search-movable",
        Command::Check(CheckCommand::Factorization { .. }) => "check factorization",
        Command::Check(CheckCommand::Logconcavity { .. }) => "check logconcavity",
        Command::Check(CheckCommand::Whitney { .. }) => "check whitney",
        Command::Check(CheckCommand::Peo { .. }) => "check peo",
    }
}

/// What the binary prints and returns.
pub enum Dispatch {
    /// `--help` / `--version` text, printed verbatim.
    Text(String),
    Report { code: i32, report: Report },
}

pub fn dispatch<I, T>(args: I) -> Dispatch
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => return Dispatch::Text(e.to_string()),
        Err(e) => {
            return Dispatch::Report {
                code: EXIT_USAGE,
                report: Report {
                    command: String::new(),
                    ok: false,
                    payload: Value::Null,
                    diagnostics: vec![e.to_string().trim_end().to_owned()],
                },
            }
        }
    };
    let OutputFormat::Json = cli.output;
    let name = command_name(&cli.command).to_owned();
    let outcome = match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| execute(cli.command)),
            Err(e) => Err(format!("--jobs: {e}")),
        },
        None => execute(cli.command),
    };
    match outcome {
        Ok((command, ok, payload)) => Dispatch::Report {
            code: if ok { EXIT_OK } else { EXIT_PROPERTY_FAILED },
            report: Report { command, ok, payload, diagnostics: Vec::new() },
        },
        Err(diagnostic) => Dispatch::Report {
            code: EXIT_USAGE,
            report: Report { command: name, ok: false, payload: Value::Null, diagnostics: vec![diagnostic] },
        },
    }
}
