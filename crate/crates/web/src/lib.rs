//! WebAssembly bindings for the browser demo. Every export takes and returns
//! JSON text; errors come back as a message string (a thrown JS exception).

use cds_core::games::{DEFAULT_MAX_N, DEFAULT_MAX_VERTICES};
use cds_core::io::{graph_to_json, GraphJson};
use cds_core::{
    gen_alpha, gen_chain, gen_favorable, overlap_graph, strategic_pile, CdsState, GcdsState, Graph, Label, Permutation,
    Player, Pointer, Position, Solver, SolverConfig,
};
use serde::Deserialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

type Out = Result<String, String>;

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn parse_perm(text: &str) -> Result<Permutation, String> {
    text.parse().map_err(err)
}

fn perm_view(a: &Permutation) -> Value {
    let moves: Vec<[usize; 2]> = a.legal_moves().into_iter().map(|(p, q)| [p.code(), q.code()]).collect();
    json!({
        "perm": a,
        "pile": strategic_pile(a).codes().iter().map(|p| p.code()).collect::<Vec<_>>(),
        "sortable": strategic_pile(a).is_empty(),
        "fixed_point": a.is_fixed_point(),
        "fixed_code": a.fixed_point_code().ok().flatten().map(Pointer::code),
        "moves": moves,
        "overlap": graph_to_json(&overlap_graph(a)),
    })
}

/// Pile, legal moves and overlap graph of a permutation given as text.
#[wasm_bindgen]
pub fn explore(perm: &str) -> Out {
    Ok(perm_view(&parse_perm(perm)?).to_string())
}

/// Applies cds at pointers `p`, `q` and checks the result against gcds on the overlap graph.
#[wasm_bindgen]
pub fn swap(perm: &str, p: usize, q: usize) -> Out {
    let a = parse_perm(perm)?;
    let (p, q) = (Pointer::new(p), Pointer::new(q));
    let case = a.cds_case(p, q).map_err(err)?;
    let b = a.apply_cds(p, q).map_err(err)?;
    let via_graph = overlap_graph(&a).apply_gcds(&p.code().to_string(), &q.code().to_string()).map_err(err)?;
    Ok(json!({
        "case": case,
        "after": perm_view(&b),
        "matches_gcds": via_graph == overlap_graph(&b),
    })
    .to_string())
}

fn parse_graph_value(v: Value) -> Result<Graph, String> {
    let j: GraphJson = serde_json::from_value(v).map_err(err)?;
    Graph::try_from(j).map_err(err)
}

/// One gcds (or gcds₂ when `delete` is set) step on a graph in graph JSON.
#[wasm_bindgen]
pub fn graph_step(graph: &str, x: &str, y: &str, delete: bool) -> Out {
    let g = parse_graph_value(serde_json::from_str(graph).map_err(err)?)?;
    let masterlist: Vec<String> = g.masterlist(x, y).map_err(err)?.members().iter().map(|l| l.as_str().to_owned()).collect();
    let after = if delete { g.apply_gcds2(x, y) } else { g.apply_gcds(x, y) }.map_err(err)?;
    Ok(json!({ "graph": graph_to_json(&after), "masterlist": masterlist }).to_string())
}

/// Triangle chain with ONE's favourable set.
#[wasm_bindgen]
pub fn chain(m: usize) -> Out {
    let fav: Vec<String> = gen_favorable(m).map_err(err)?.iter().map(|l| l.as_str().to_owned()).collect();
    Ok(json!({ "graph": graph_to_json(&gen_chain(m).map_err(err)?), "favorable": fav }).to_string())
}

/// Full-pile permutation of length `n` whose overlap graph is a triangle chain.
#[wasm_bindgen]
pub fn alpha(n: usize) -> Out {
    Ok(json!({ "perm": gen_alpha(n).map_err(err)? }).to_string())
}

fn one() -> Player {
    Player::One
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SolveRequest {
    graph: Option<Value>,
    perm: Option<Vec<usize>>,
    #[serde(default)]
    favorable: Vec<Value>,
    #[serde(default = "one")]
    first: Player,
}

fn item_text(v: &Value) -> String {
    v.as_str().map(str::to_owned).unwrap_or_else(|| v.to_string())
}

/// Solves a graph or permutation game and replays its principal variation.
///
/// Request: `{"graph": {...}, "favorable": ["2","4"], "first": "ONE"}` or
/// `{"perm": [5,7,6,3,2,4,8,1], "favorable": [3,4], "first": "ONE"}`.
#[wasm_bindgen]
pub fn solve(request: &str) -> Out {
    let req: SolveRequest = serde_json::from_str(request).map_err(err)?;
    let mut solver = Solver::with_config(SolverConfig { max_vertices: DEFAULT_MAX_VERTICES, max_n: DEFAULT_MAX_N });
    let favorable: Vec<String> = req.favorable.iter().map(item_text).collect();
    match (req.graph, req.perm) {
        (Some(g), None) => {
            let position = Position::new(parse_graph_value(g)?, favorable).map_err(err)?;
            let report = solver.solve_gcds(&GcdsState { position: position.clone(), mover: req.first }).map_err(err)?;
            let np = solver.np_status(&position).map_err(err)?;
            let mut g = position.graph;
            let mut states = vec![graph_to_json(&g)];
            for (x, y) in &report.principal_variation {
                g = g.apply_gcds2(x.as_str(), y.as_str()).map_err(err)?;
                states.push(graph_to_json(&g));
            }
            let pv: Vec<[&str; 2]> = report.principal_variation.iter().map(|(x, y)| [x.as_str(), y.as_str()]).collect();
            Ok(json!({
                "winner": report.winner,
                "principal_variation": pv,
                "states": states,
                "survivors": g.labels().iter().map(Label::as_str).collect::<Vec<_>>(),
                "nodes_expanded": report.nodes_expanded,
                "np": np.status,
            })
            .to_string())
        }
        (None, Some(entries)) => {
            let a = Permutation::from_entries(entries).map_err(err)?;
            let codes = favorable
                .iter()
                .map(|s| s.parse::<usize>().map_err(|_| format!("expected a pointer code, got {s:?}")).and_then(|k| Pointer::new(k).check(a.len()).map_err(err)))
                .collect::<Result<Vec<_>, _>>()?;
            let report = solver.solve_cds(&CdsState::new(a.clone(), codes, req.first).map_err(err)?).map_err(err)?;
            let mut cur = a;
            let mut states = vec![json!(cur)];
            for &(p, q) in &report.principal_variation {
                cur = cur.apply_cds(p, q).map_err(err)?;
                states.push(json!(cur));
            }
            let pv: Vec<[usize; 2]> = report.principal_variation.iter().map(|(p, q)| [p.code(), q.code()]).collect();
            Ok(json!({
                "winner": report.winner,
                "principal_variation": pv,
                "states": states,
                "fixed_code": cur.fixed_point_code().map_err(err)?.map(Pointer::code),
                "nodes_expanded": report.nodes_expanded,
            })
            .to_string())
        }
        _ => Err("request needs exactly one of \"graph\" or \"perm\"".into()),
    }
}
