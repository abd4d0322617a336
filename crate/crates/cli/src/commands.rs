use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read};
use std::path::{Path, PathBuf};
use std::time::Instant;

use cds_core::families::{expected_np, tight_instance};
use cds_core::io::{graph_to_json, parse_graph, parse_label_set, parse_pointer_set};
use cds_core::iso::are_isomorphic;
use cds_core::pile::{achievable_fixed_points, sortable_bruteforce, DEFAULT_BRUTE_FORCE_MAX_N};
use cds_core::verify::{run_suite, suite_names, Limits, Suite, SuiteResult};
use cds_core::{
    gen_alpha, gen_chain, gen_favorable, overlap_graph, strategic_pile, CdsState, GcdsState, Graph, Label,
    Permutation, Player, Pointer, Position, Solver, SolverConfig,
};
use clap::{Args, Subcommand};
use serde_json::{json, Value};

use crate::{Fail, Global, Outcome};

#[derive(Subcommand)]
pub enum PermCommand {
    /// Apply one or more cds moves in order.
    Apply {
        #[arg(long)]
        perm: String,
        /// Pointer codes `p,q`; repeat for a sequence.
        #[arg(long = "move", required = true)]
        moves: Vec<String>,
    },
    /// Legal moves (interlocking pointer pairs).
    Moves {
        #[arg(long)]
        perm: String,
    },
    /// Strategic pile codes.
    Pile {
        #[arg(long)]
        perm: String,
    },
    /// Overlap graph as graph JSON.
    Overlap {
        #[arg(long)]
        perm: String,
    },
    /// Sortability by the empty-pile test, plus brute force when within --max-n.
    Sortable {
        #[arg(long)]
        perm: String,
    },
    /// Fixed points reachable by cds moves (exhaustive, bounded by --max-n).
    Fixedpoints {
        #[arg(long)]
        perm: String,
    },
}

#[derive(Subcommand)]
pub enum GraphCommand {
    /// gcds at an edge.
    Gcds {
        #[arg(long)]
        graph: PathBuf,
        /// Edge endpoints `x,y`.
        #[arg(long)]
        edge: String,
    },
    /// gcds followed by deletion of the targets and newly isolated masterlist vertices.
    Gcds2 {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        edge: String,
    },
    /// Isomorphism test with a witness mapping.
    Iso {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum GenCommand {
    /// Triangle chain with m triangles.
    Chain {
        #[arg(long)]
        m: usize,
    },
    /// ONE's favourable set on the chain: 2 and the multiples of 4.
    Favorable {
        #[arg(long)]
        m: usize,
    },
    /// Full-pile permutation whose overlap graph is a triangle chain (n ≡ 0 mod 4, n ≥ 8).
    Alpha {
        #[arg(long)]
        n: usize,
    },
    /// The full-pile permutation with the chain's favourable set carried onto its pointers.
    Tight {
        #[arg(long)]
        n: usize,
    },
}

/// Where a graph position comes from.
#[derive(Args)]
pub struct GraphSource {
    /// Graph JSON file, `-` for stdin.
    #[arg(long, conflicts_with = "chain", required_unless_present = "chain")]
    graph: Option<PathBuf>,
    /// Use the triangle chain with this many triangles.
    #[arg(long)]
    chain: Option<usize>,
    /// Comma-separated favourable labels; defaults to the chain's set with --chain, else empty.
    #[arg(long)]
    favorable: Option<String>,
    #[arg(long, default_value_t = cds_core::games::DEFAULT_MAX_VERTICES)]
    max_vertices: usize,
}

impl GraphSource {
    pub fn position(&self) -> Result<Position, Fail> {
        let (graph, default_fav) = match (&self.graph, self.chain) {
            (Some(path), _) => (read_graph(path)?, BTreeSet::new()),
            (None, Some(m)) => (gen_chain(m)?, gen_favorable(m)?),
            (None, None) => return Err(Fail::Input("one of --graph or --chain is required".into())),
        };
        let favorable = match &self.favorable {
            Some(text) => parse_label_set(text),
            None => default_fav,
        };
        Ok(Position::new(graph, favorable)?)
    }

    pub fn max_vertices(&self) -> usize {
        self.max_vertices
    }
}

#[derive(Subcommand)]
pub enum SolveCommand {
    /// Winner and principal variation of the graph game.
    Gcds {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value = "ONE")]
        first: Player,
    },
    /// Winner and principal variation of the permutation game.
    Cds {
        #[arg(long)]
        perm: String,
        /// Comma-separated pointer codes; may be empty.
        #[arg(long, default_value = "")]
        favorable: String,
        #[arg(long, default_value = "ONE")]
        first: Player,
    },
    /// N/P classification of a graph position.
    Np {
        #[command(flatten)]
        source: GraphSource,
    },
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    suite: String,
    /// Largest chain length for classification suites.
    #[arg(long)]
    max_m: Option<usize>,
    /// Random samples per randomized check.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Subcommand)]
pub enum CacheCommand {
    /// Write the solver cache (from --cache, optionally warmed) to a file.
    Export {
        #[arg(long)]
        to: PathBuf,
        /// Solve the chains 1..=M both ways first.
        #[arg(long)]
        warm_chain: Option<usize>,
    },
    /// Validate a cache file and merge it into --cache when given.
    Import {
        #[arg(long)]
        from: PathBuf,
    },
}

pub fn parse_perm(text: &str) -> Result<Permutation, Fail> {
    Ok(text.parse::<Permutation>()?)
}

/// `p,q` or `p q`.
pub fn parse_pair(text: &str) -> Result<(String, String), Fail> {
    let parts: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    match parts.as_slice() {
        [a, b] => Ok(((*a).to_owned(), (*b).to_owned())),
        _ => Err(Fail::Input(format!("expected two items separated by a comma, got {text:?}"))),
    }
}

pub fn parse_pointer_pair(text: &str, n: usize) -> Result<(Pointer, Pointer), Fail> {
    let (a, b) = parse_pair(text)?;
    let code = |s: &str| -> Result<Pointer, Fail> {
        let k: usize = s.parse().map_err(|_| Fail::Input(format!("expected a pointer code, got {s:?}")))?;
        Ok(Pointer::new(k).check(n)?)
    };
    Ok((code(&a)?, code(&b)?))
}

fn read_text(path: &Path) -> Result<String, Fail> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

pub fn read_graph(path: &Path) -> Result<Graph, Fail> {
    Ok(parse_graph(&read_text(path)?)?)
}

fn codes(set: impl IntoIterator<Item = Pointer>) -> Vec<usize> {
    set.into_iter().map(Pointer::code).collect()
}

fn labels(set: &BTreeSet<Label>) -> Vec<&str> {
    set.iter().map(Label::as_str).collect()
}

fn timing(start: Instant) -> Value {
    json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 })
}

pub fn perm(cmd: PermCommand, g: &Global) -> Result<Outcome, Fail> {
    let brute_max = g.max_n.unwrap_or(DEFAULT_BRUTE_FORCE_MAX_N);
    let doc = match cmd {
        PermCommand::Apply { perm, moves } => {
            let mut cur = parse_perm(&perm)?;
            let mut steps = Vec::new();
            for text in &moves {
                let (p, q) = parse_pointer_pair(text, cur.len())?;
                let case = cur.cds_case(p, q)?;
                cur = cur.apply_cds(p, q)?;
                steps.push(json!({ "move": [p.code(), q.code()], "case": case, "perm": cur }));
            }
            json!({ "perm": cur, "steps": steps })
        }
        PermCommand::Moves { perm } => {
            let a = parse_perm(&perm)?;
            let moves: Vec<[usize; 2]> = a.legal_moves().into_iter().map(|(p, q)| [p.code(), q.code()]).collect();
            json!({ "moves": moves })
        }
        PermCommand::Pile { perm } => {
            let a = parse_perm(&perm)?;
            json!({ "pile": codes(strategic_pile(&a).codes().iter().copied()) })
        }
        PermCommand::Overlap { perm } => graph_to_json(&overlap_graph(&parse_perm(&perm)?)),
        PermCommand::Sortable { perm } => {
            let a = parse_perm(&perm)?;
            let by_pile = strategic_pile(&a).is_empty();
            let brute = if a.len() <= brute_max { Some(sortable_bruteforce(&a, brute_max)?) } else { None };
            if brute.is_some_and(|b| b != by_pile) {
                return Err(Fail::Verification(format!("pile test and brute force disagree on {a}")));
            }
            json!({ "sortable": by_pile, "brute_force": brute })
        }
        PermCommand::Fixedpoints { perm } => {
            let a = parse_perm(&perm)?;
            let reach = achievable_fixed_points(&a, brute_max)?;
            json!({ "identity": reach.identity, "codes": codes(reach.codes) })
        }
    };
    Ok(Outcome::ok(doc))
}

pub fn graph(cmd: GraphCommand, _g: &Global) -> Result<Outcome, Fail> {
    let doc = match cmd {
        GraphCommand::Gcds { graph, edge } => {
            let (x, y) = parse_pair(&edge)?;
            graph_to_json(&read_graph(&graph)?.apply_gcds(&x, &y)?)
        }
        GraphCommand::Gcds2 { graph, edge } => {
            let (x, y) = parse_pair(&edge)?;
            graph_to_json(&read_graph(&graph)?.apply_gcds2(&x, &y)?)
        }
        GraphCommand::Iso { graph, other } => {
            let map = are_isomorphic(&read_graph(&graph)?, &read_graph(&other)?)?;
            let mapping = map.map(|m| m.into_iter().map(|(a, b)| (a.as_str().to_owned(), Value::from(b.as_str()))).collect::<serde_json::Map<_, _>>());
            json!({ "isomorphic": mapping.is_some(), "mapping": mapping })
        }
    };
    Ok(Outcome::ok(doc))
}

pub fn gen(cmd: GenCommand) -> Result<Outcome, Fail> {
    let doc = match cmd {
        GenCommand::Chain { m } => graph_to_json(&gen_chain(m)?),
        GenCommand::Favorable { m } => json!({ "favorable": labels(&gen_favorable(m)?) }),
        GenCommand::Alpha { n } => json!({ "perm": gen_alpha(n)? }),
        GenCommand::Tight { n } => {
            let t = tight_instance(n)?;
            json!({
                "perm": t.perm,
                "favorable": codes(t.favorable.iter().copied()),
                "chain_length": t.chain_length,
                "pile": codes(strategic_pile(&t.perm).codes().iter().copied()),
            })
        }
    };
    Ok(Outcome::ok(doc))
}

pub fn open_solver(g: &Global, config: SolverConfig) -> Result<Solver, Fail> {
    let mut solver = Solver::with_config(config);
    if let Some(path) = &g.cache {
        if path.exists() {
            let file = File::open(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
            solver.load(BufReader::new(file))?;
        }
    }
    Ok(solver)
}

pub fn save_solver(solver: &Solver, path: &Path) -> Result<usize, Fail> {
    let file = File::create(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
    Ok(solver.save(BufWriter::new(file))?.entries)
}

fn close_solver(solver: &Solver, g: &Global) -> Result<(), Fail> {
    if let Some(path) = &g.cache {
        save_solver(solver, path)?;
    }
    Ok(())
}

pub fn solve(cmd: SolveCommand, g: &Global) -> Result<Outcome, Fail> {
    let start = Instant::now();
    let mut doc = match cmd {
        SolveCommand::Gcds { source, first } => {
            let position = source.position()?;
            let mut solver = open_solver(g, SolverConfig { max_vertices: source.max_vertices(), ..SolverConfig::default() })?;
            let report = solver.solve_gcds(&GcdsState { position, mover: first })?;
            close_solver(&solver, g)?;
            serde_json::to_value(&report).expect("report serializes")
        }
        SolveCommand::Cds { perm, favorable, first } => {
            let perm = parse_perm(&perm)?;
            let favorable = parse_pointer_set(&favorable, perm.len())?;
            let max_n = g.max_n.unwrap_or(cds_core::games::DEFAULT_MAX_N);
            let mut solver = open_solver(g, SolverConfig { max_n, ..SolverConfig::default() })?;
            let report = solver.solve_cds(&CdsState::new(perm, favorable, first)?)?;
            close_solver(&solver, g)?;
            let pv: Vec<[usize; 2]> = report.principal_variation.iter().map(|(p, q)| [p.code(), q.code()]).collect();
            json!({
                "winner": report.winner,
                "principal_variation": pv,
                "nodes_expanded": report.nodes_expanded,
                "cache_hits": report.cache_hits,
            })
        }
        SolveCommand::Np { source } => {
            let position = source.position()?;
            let mut solver = open_solver(g, SolverConfig { max_vertices: source.max_vertices(), ..SolverConfig::default() })?;
            let report = solver.np_status(&position)?;
            close_solver(&solver, g)?;
            let mut doc = serde_json::to_value(&report).expect("report serializes");
            if let Some(m) = source.chain {
                doc["expected"] = json!(expected_np(m)?);
            }
            doc
        }
    };
    doc["timing"] = timing(start);
    Ok(Outcome::ok(doc))
}

fn suite_doc(r: &SuiteResult) -> Value {
    let mut doc = serde_json::to_value(r).expect("suite result serializes");
    doc["passed"] = json!(r.passed());
    doc["timing"] = json!({ "elapsed_ms": r.elapsed.as_secs_f64() * 1e3 });
    doc
}

pub fn verify(args: VerifyArgs, g: &Global) -> Result<Outcome, Fail> {
    let defaults = Limits::default();
    let limits = Limits {
        max_n: g.max_n.unwrap_or(defaults.max_n),
        max_m: args.max_m.unwrap_or(defaults.max_m),
        seed: g.seed,
        samples: args.samples.unwrap_or(defaults.samples),
        threads: g.threads.max(1),
    };
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse().map_err(|_| {
            Fail::Input(format!("unknown suite {:?}; expected one of {}, all", args.suite, suite_names().join(", ")))
        })?]
    };
    let results: Vec<SuiteResult> = suites.into_iter().map(|s| run_suite(s, &limits)).collect();
    let passed = results.iter().all(SuiteResult::passed);
    let doc = if results.len() == 1 {
        suite_doc(&results[0])
    } else {
        json!({ "passed": passed, "limits": limits, "suites": results.iter().map(suite_doc).collect::<Vec<_>>() })
    };
    Ok(Outcome { doc, code: if passed { 0 } else { 3 } })
}

pub fn cache(cmd: CacheCommand, g: &Global) -> Result<Outcome, Fail> {
    let start = Instant::now();
    let mut doc = match cmd {
        CacheCommand::Export { to, warm_chain } => {
            let mut solver = open_solver(g, SolverConfig::default())?;
            let loaded = solver.memo_len();
            for m in 1..=warm_chain.unwrap_or(0) {
                solver.np_status(&Position::new(gen_chain(m)?, gen_favorable(m)?)?)?;
            }
            let written = save_solver(&solver, &to)?;
            json!({ "loaded": loaded, "written": written })
        }
        CacheCommand::Import { from } => {
            let file = File::open(&from).map_err(|e| Fail::Input(format!("{}: {e}", from.display())))?;
            let mut incoming = Solver::new();
            let imported = incoming.load(BufReader::new(file))?.entries;
            let total = match &g.cache {
                Some(path) => {
                    let mut solver = open_solver(g, SolverConfig::default())?;
                    let file = File::open(&from)?;
                    solver.load(BufReader::new(file))?;
                    save_solver(&solver, path)?
                }
                None => imported,
            };
            json!({ "imported": imported, "total": total })
        }
    };
    doc["timing"] = timing(start);
    Ok(Outcome::ok(doc))
}
