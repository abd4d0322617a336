//! Text-mode play against the engine. Prompts go to stderr, moves come from
//! stdin, and the finished game is reported as JSON on stdout.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use cds_core::games::{cds_terminal_winner, favorable_survivors, gcds_terminal_winner};
use cds_core::io::{graph_to_json, parse_label_set, parse_pointer_set, render_graph};
use cds_core::{gen_chain, gen_favorable, CdsState, GcdsState, Permutation, Player, Pointer, Position, Solver, SolverConfig};
use clap::Args;
use serde_json::{json, Value};

use crate::commands::{open_solver, parse_pair, parse_perm, parse_pointer_pair, read_graph, save_solver};
use crate::{Fail, Global, Outcome};

#[derive(Args)]
pub struct PlayArgs {
    /// Play the graph game on this graph JSON file.
    #[arg(long, conflicts_with_all = ["chain", "perm"])]
    graph: Option<PathBuf>,
    /// Play the graph game on the triangle chain with this many triangles.
    #[arg(long, conflicts_with = "perm")]
    chain: Option<usize>,
    /// Play the permutation game on this permutation.
    #[arg(long)]
    perm: Option<String>,
    /// ONE's favourable labels or pointer codes, comma-separated.
    #[arg(long)]
    favorable: Option<String>,
    #[arg(long, default_value = "ONE")]
    first: Player,
    /// The side you play.
    #[arg(long, default_value = "ONE")]
    human: Player,
}

#[derive(Clone)]
pub enum Game {
    Graph(Position),
    Perm(Permutation, BTreeSet<Pointer>),
}

impl Game {
    fn describe(&self) -> String {
        match self {
            Game::Graph(p) => format!("graph {}", render_graph(&p.graph)),
            Game::Perm(a, _) => format!("permutation {a}"),
        }
    }

    fn legal_moves(&self) -> Vec<(String, String)> {
        match self {
            Game::Graph(p) => p.graph.edges().into_iter().map(|(x, y)| (x.as_str().to_owned(), y.as_str().to_owned())).collect(),
            Game::Perm(a, _) => a.legal_moves().into_iter().map(|(p, q)| (p.code().to_string(), q.code().to_string())).collect(),
        }
    }

    fn apply(&self, text: &str) -> Result<(Game, (String, String)), Fail> {
        match self {
            Game::Graph(p) => {
                let (x, y) = parse_pair(text)?;
                let graph = p.graph.apply_gcds2(&x, &y)?;
                let favorable = favorable_survivors(&graph, &p.favorable);
                Ok((Game::Graph(Position { graph, favorable }), (x, y)))
            }
            Game::Perm(a, fav) => {
                let (p, q) = parse_pointer_pair(text, a.len())?;
                let next = a.apply_cds(p, q)?;
                Ok((Game::Perm(next, fav.clone()), (p.code().to_string(), q.code().to_string())))
            }
        }
    }

    fn terminal_winner(&self) -> Result<Option<Player>, Fail> {
        Ok(match self {
            Game::Graph(p) if p.graph.is_edgeless() => Some(gcds_terminal_winner(p)?),
            Game::Perm(a, fav) if !a.has_legal_move() => Some(cds_terminal_winner(a, fav)?),
            _ => None,
        })
    }

    /// Solved winner and the engine's chosen move.
    fn solve(&self, solver: &mut Solver, mover: Player) -> Result<(Player, Option<String>), Fail> {
        Ok(match self {
            Game::Graph(p) => {
                let r = solver.solve_gcds(&GcdsState { position: p.clone(), mover })?;
                (r.winner, r.principal_variation.first().map(|(x, y)| format!("{x},{y}")))
            }
            Game::Perm(a, fav) => {
                let r = solver.solve_cds(&CdsState::new(a.clone(), fav.iter().copied(), mover)?)?;
                (r.winner, r.principal_variation.first().map(|(p, q)| format!("{},{}", p.code(), q.code())))
            }
        })
    }
}

fn setup(args: &PlayArgs) -> Result<Game, Fail> {
    if let Some(text) = &args.perm {
        let a = parse_perm(text)?;
        let fav = parse_pointer_set(args.favorable.as_deref().unwrap_or(""), a.len())?;
        return Ok(Game::Perm(a, fav));
    }
    let (graph, default_fav) = match (&args.graph, args.chain) {
        (Some(path), _) => (read_graph(path)?, BTreeSet::new()),
        (None, Some(m)) => (gen_chain(m)?, gen_favorable(m)?),
        (None, None) => return Err(Fail::Input("one of --graph, --chain or --perm is required".into())),
    };
    let favorable = args.favorable.as_deref().map(parse_label_set).unwrap_or(default_fav);
    Ok(Game::Graph(Position::new(graph, favorable)?))
}

pub fn run(args: PlayArgs, g: &Global) -> Result<Outcome, Fail> {
    let game = setup(&args)?;
    let config = SolverConfig { max_n: g.max_n.unwrap_or(cds_core::games::DEFAULT_MAX_N), ..SolverConfig::default() };
    let mut solver = open_solver(g, config)?;
    let stdin = std::io::stdin();
    let doc = play(game, args.first, args.human, &mut solver, stdin.lock(), std::io::stderr())?;
    if let Some(path) = &g.cache {
        save_solver(&solver, path)?;
    }
    Ok(Outcome::ok(doc))
}

/// Runs one game to the end. The engine always follows the solver's principal
/// variation, and every engine move from a won state is checked to keep it won.
pub fn play<R: BufRead, W: Write>(
    mut game: Game,
    first: Player,
    human: Player,
    solver: &mut Solver,
    mut input: R,
    mut prompt: W,
) -> Result<Value, Fail> {
    let engine = human.other();
    let mut mover = first;
    let mut history = Vec::new();
    let start_value = game.solve(solver, first)?.0;
    let _ = writeln!(prompt, "you play {human}; {first} moves first; with perfect play {start_value} wins");

    let winner = loop {
        if let Some(w) = game.terminal_winner()? {
            break w;
        }
        let _ = writeln!(prompt, "{}", game.describe());
        if mover == human {
            let moves = game.legal_moves();
            let list: Vec<String> = moves.iter().map(|(a, b)| format!("{a},{b}")).collect();
            let _ = write!(prompt, "moves: {}\nyour move> ", list.join(" "));
            let _ = prompt.flush();
            let mut line = String::new();
            if input.read_line(&mut line)? == 0 {
                return Err(Fail::Input("input ended before the game finished".into()));
            }
            match game.apply(line.trim()) {
                Ok((next, mv)) => {
                    history.push(json!({ "player": mover, "by": "human", "move": [mv.0, mv.1] }));
                    game = next;
                }
                Err(e) => {
                    let msg = match e {
                        Fail::Input(m) | Fail::Bound(m) | Fail::Verification(m) => m,
                    };
                    let _ = writeln!(prompt, "illegal move: {msg}");
                    continue;
                }
            }
        } else {
            let (value, choice) = game.solve(solver, mover)?;
            let choice = choice.expect("a non-terminal state has a move");
            let (next, mv) = game.apply(&choice)?;
            if value == engine {
                let (after, _) = next.solve(solver, mover.other())?;
                if after != engine {
                    return Err(Fail::Verification(format!("engine move {choice} gave away a won position")));
                }
            }
            let _ = writeln!(prompt, "engine plays {choice}");
            history.push(json!({ "player": mover, "by": "engine", "move": [mv.0, mv.1], "engine_expected": value }));
            game = next;
        }
        mover = mover.other();
    };
    let _ = writeln!(prompt, "{}\n{winner} wins", game.describe());

    let final_state = match &game {
        Game::Graph(p) => json!({ "graph": graph_to_json(&p.graph) }),
        Game::Perm(a, _) => json!({ "perm": a }),
    };
    Ok(json!({
        "human": human,
        "first": first,
        "value_at_start": start_value,
        "moves": history,
        "final": final_state,
        "winner": winner,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_game(m: usize) -> Game {
        Game::Graph(Position::new(gen_chain(m).unwrap(), gen_favorable(m).unwrap()).unwrap())
    }

    #[test]
    fn engine_wins_a_won_position_against_any_reply() {
        // (chain 2, first ONE) is lost for ONE, so the engine playing TWO must win
        // whatever the human does. Try the first and last legal move every turn.
        for pick_last in [false, true] {
            let mut solver = Solver::new();
            let mut game = chain_game(2);
            let mut lines = String::new();
            let mut mover = Player::One;
            while game.terminal_winner().unwrap().is_none() {
                if mover == Player::One {
                    let moves = game.legal_moves();
                    let (a, b) = if pick_last { moves.last() } else { moves.first() }.unwrap().clone();
                    lines.push_str(&format!("{a},{b}\n"));
                    game = game.apply(&format!("{a},{b}")).unwrap().0;
                } else {
                    let choice = game.solve(&mut solver, mover).unwrap().1.unwrap();
                    game = game.apply(&choice).unwrap().0;
                }
                mover = mover.other();
            }
            let doc = play(chain_game(2), Player::One, Player::One, &mut Solver::new(), lines.as_bytes(), std::io::sink()).unwrap();
            assert_eq!(doc["winner"], "TWO");
            assert_eq!(doc["value_at_start"], "TWO");
        }
    }

    #[test]
    fn illegal_moves_are_reprompted() {
        let a: Permutation = "3 1 4 2 5".parse().unwrap();
        let game = Game::Perm(a, BTreeSet::new());
        let input = "9,9\n1,4\n1,2\n";
        let mut out = Vec::new();
        let doc = play(game, Player::One, Player::One, &mut Solver::new(), input.as_bytes(), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("illegal move"));
        assert_eq!(doc["moves"][0]["by"], "human");
    }

    #[test]
    fn running_out_of_input_is_an_input_error() {
        let err = play(chain_game(1), Player::One, Player::One, &mut Solver::new(), "".as_bytes(), std::io::sink()).unwrap_err();
        assert!(matches!(err, Fail::Input(_)));
    }
}
