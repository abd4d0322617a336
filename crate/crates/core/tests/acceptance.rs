//! Acceptance criteria 1-12, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always shown.
//! Expected values are written out here or computed by the reference
//! implementations in `oracle`, never taken from library fixtures.

mod oracle;

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use cds_core::families::{bound_prediction, gen_chain, gen_favorable, tight_instance, Verdict};
use cds_core::games::{gcds_terminal_winner, CdsState, GcdsState, NpClass, Player, Solver, SolverConfig};
use cds_core::overlap::{check_commutation, overlap_graph};
use cds_core::perm::{all_permutations, Permutation, Pointer};
use cds_core::pile::{alternating_cycles, build_cycle_graph, strategic_pile};
use cds_core::{Graph, Label, Position};
use oracle::G;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn perm(e: &[usize]) -> Permutation {
    Permutation::from_entries(e.to_vec()).unwrap()
}

fn v_graph(vs: &[&str], es: &[(&str, &str)]) -> G {
    G::new(vs.iter().copied(), es.iter().copied())
}

/// Principal-variation replays done on the reference implementations.
#[derive(Default)]
struct Replays {
    checked: usize,
    bad: Vec<String>,
}

impl Replays {
    fn graph(&mut self, start: &Position, mover: Player, pv: &[(Label, Label)], winner: Player) {
        let mut g = G::from_lib(&start.graph);
        for (a, b) in pv {
            if !g.has(a.as_str(), b.as_str()) {
                self.bad.push(format!("illegal move {a}-{b}"));
                return;
            }
            g = oracle::gcds2(&g, a.as_str(), b.as_str());
        }
        let fav: BTreeSet<String> = start.favorable.iter().map(|l| l.as_str().to_owned()).collect();
        let one = g.edges.is_empty() && !g.vertices.is_empty() && g.vertices.iter().all(|v| fav.contains(v));
        let ended = g.edges.is_empty();
        self.checked += 1;
        if !ended || (one != (winner == Player::One)) {
            self.bad.push(format!("graph game from {:?} ({mover}) replays to {:?}", start.graph.edges(), g));
        }
    }

    fn perm(&mut self, start: &Permutation, fav: &BTreeSet<Pointer>, pv: &[(Pointer, Pointer)], winner: Player) {
        let mut e = start.entries().to_vec();
        for (p, q) in pv {
            match oracle::cds(&e, p.code(), q.code()) {
                Some(next) => e = next,
                None => {
                    self.bad.push(format!("illegal move {p} {q} on {e:?}"));
                    return;
                }
            }
        }
        self.checked += 1;
        let ended = oracle::moves(&e).is_empty();
        let one = ended && oracle::fixed_code(&e).is_some_and(|c| fav.contains(&Pointer::new(c)));
        if !ended || one != (winner == Player::One) {
            self.bad.push(format!("permutation game from {start} replays to {e:?}"));
        }
    }
}

fn c1_swap_example() -> Outcome {
    let start = [3, 6, 5, 2, 4, 8, 1, 7];
    let want = vec![3, 4, 8, 1, 5, 2, 6, 7];
    let got = perm(&start).apply_cds(Pointer::new(3), Pointer::new(6)).map(Permutation::into_entries);
    let reference = oracle::cds(&start, 3, 6);
    if got.as_ref() == Ok(&want) && reference.as_ref() == Some(&want) {
        pass("[3,6,5,2,4,8,1,7] -> [3,4,8,1,5,2,6,7]")
    } else {
        fail(format!("library {got:?}, reference {reference:?}"))
    }
}

fn c2_full_pile() -> Outcome {
    let a = perm(&[3, 6, 5, 2, 4, 8, 1, 7]);
    let pile: BTreeSet<usize> = strategic_pile(&a).codes().iter().map(|p| p.code()).collect();
    let cycles = alternating_cycles(&build_cycle_graph(&a)).cycles.len();
    let reference_cycles = oracle::alternating_cycle_count(a.entries());
    if pile == (1..=7).collect() && cycles == 1 && reference_cycles == 1 {
        pass("pile {1..7}, one alternating cycle")
    } else {
        fail(format!("pile {pile:?}, {cycles} cycles (reference {reference_cycles})"))
    }
}

fn c3_overlap_example() -> Outcome {
    let e = [3, 1, 4, 2, 5];
    let got = G::from_lib(&overlap_graph(&perm(&e)));
    let want = G::new(1..=4, [(1, 3), (1, 4), (2, 4)]);
    if got == want && oracle::overlap(&e) == want {
        pass("edges 1-3, 1-4, 2-4")
    } else {
        fail(format!("library {:?}", got.edges))
    }
}

fn c4_gcds_fixtures() -> Outcome {
    let v7 = ["v1", "v2", "v3", "v4", "v5", "v6", "v7"];
    let v9 = ["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9"];
    let a_before = [
        ("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v6"), ("v6", "v7"),
        ("v1", "v3"), ("v2", "v4"), ("v3", "v6"), ("v1", "v4"), ("v2", "v6"), ("v1", "v7"),
    ];
    let a_after = [("v3", "v4"), ("v4", "v5"), ("v5", "v6"), ("v3", "v7"), ("v4", "v6"), ("v4", "v7")];
    let b_before = [
        ("v1", "v2"), ("v1", "v5"), ("v1", "v6"), ("v1", "v7"), ("v1", "v9"), ("v2", "v3"),
        ("v2", "v6"), ("v2", "v7"), ("v2", "v9"), ("v3", "v5"), ("v5", "v6"), ("v5", "v7"),
        ("v5", "v9"), ("v6", "v7"), ("v6", "v9"), ("v7", "v8"), ("v8", "v9"),
    ];
    let b_after = [("v1", "v3"), ("v1", "v6"), ("v1", "v8"), ("v3", "v6"), ("v3", "v8"), ("v6", "v8")];
    let mut problems = Vec::new();
    for (vs, before, (x, y), after) in [(&v7[..], &a_before[..], ("v1", "v2"), &a_after[..]), (&v9[..], &b_before[..], ("v2", "v7"), &b_after[..])] {
        let lib = Graph::new(vs.iter().copied(), before.iter().copied()).unwrap();
        let got = lib.apply_gcds(x, y).map(|g| G::from_lib(&g));
        let want = v_graph(vs, after);
        let reference = oracle::gcds(&v_graph(vs, before), x, y);
        if got.as_ref() != Ok(&want) || reference != want {
            problems.push(format!("gcds at {x},{y}: library {got:?}"));
        }
    }
    let lib = Graph::new(v9, b_before).unwrap().apply_gcds("v2", "v7").unwrap();
    let already: BTreeSet<Label> = Graph::new(v9, b_before).unwrap().isolated().into_iter().collect();
    let fresh: BTreeSet<String> =
        lib.isolated().into_iter().filter(|v| !already.contains(v)).map(|v| v.as_str().to_owned()).collect();
    if fresh != ["v2", "v5", "v7", "v9"].map(String::from).into() {
        problems.push(format!("newly isolated {fresh:?}"));
    }
    if problems.is_empty() {
        pass("both before/after edge sets match; new isolated vertices v2, v5, v7, v9")
    } else {
        fail(problems.join("; "))
    }
}

fn c5_game_replay() -> Outcome {
    let start = [(1, 2), (1, 3), (1, 4), (1, 7), (2, 3), (2, 4), (2, 6), (3, 4), (3, 6), (4, 5), (5, 6), (6, 7)];
    let stages = [
        G::new([1, 3, 5, 6, 7], [(3, 5), (1, 5), (6, 7), (1, 3), (1, 6), (1, 7)]),
        G::new([5, 6, 7], [(5, 6), (5, 7), (6, 7)]),
        G::new([5], Vec::<(usize, usize)>::new()),
    ];
    let mut g = Graph::new(1..=7usize, start).unwrap();
    let mut reference = G::new(1..=7, start);
    for ((x, y), want) in [("2", "4"), ("1", "3"), ("6", "7")].into_iter().zip(&stages) {
        g = match g.apply_gcds2(x, y) {
            Ok(h) => h,
            Err(e) => return fail(format!("move {x},{y}: {e}")),
        };
        reference = oracle::gcds2(&reference, x, y);
        if &G::from_lib(&g) != want || &reference != want {
            return fail(format!("after {x},{y}: library {:?}", g.edges()));
        }
    }
    let end = Position { graph: g, favorable: [1usize, 3, 5, 7].map(Label::from).into() };
    let winner = gcds_terminal_winner(&end);
    if winner == Ok(Player::One) {
        pass("stages match; survivor {5} is favourable, ONE wins")
    } else {
        fail(format!("terminal winner {winner:?}"))
    }
}

fn c6_commutation() -> Outcome {
    let mut checked = 0usize;
    for n in 1..=6 {
        for a in all_permutations(n) {
            if G::from_lib(&overlap_graph(&a)) != oracle::overlap(a.entries()) {
                return fail(format!("overlap graph of {a} differs from reference"));
            }
            for (p, q) in a.legal_moves() {
                let lib = a.apply_cds(p, q).map(Permutation::into_entries);
                if lib.ok() != oracle::cds(a.entries(), p.code(), q.code()) {
                    return fail(format!("swap {a} at {p},{q} differs from reference"));
                }
                if check_commutation(&a, p, q) != Ok(true) {
                    return fail(format!("commutation fails at {a}, {p}, {q}"));
                }
                checked += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut sampled = 0;
    while sampled < 10_000 {
        let a = Permutation::random(rng.random_range(8..=10), &mut rng).unwrap();
        let moves = a.legal_moves();
        if moves.is_empty() {
            continue;
        }
        let (p, q) = moves[rng.random_range(0..moves.len())];
        let lib_after = G::from_lib(&overlap_graph(&a.apply_cds(p, q).unwrap()));
        let reference = oracle::gcds(&oracle::overlap(a.entries()), &p.code().to_string(), &q.code().to_string());
        if check_commutation(&a, p, q) != Ok(true) || lib_after != reference {
            return fail(format!("commutation fails at {a}, {p}, {q}"));
        }
        sampled += 1;
    }
    pass(format!("{checked} exhaustive moves (n <= 6) and {sampled} random moves (n = 8..10), zero exceptions"))
}

fn pile_set(a: &Permutation) -> BTreeSet<usize> {
    strategic_pile(a).codes().iter().map(|p| p.code()).collect()
}

fn c7_pile_properties() -> Outcome {
    let mut memo = HashMap::new();
    let mut checked = 0usize;
    for n in 1..=7 {
        for a in all_permutations(n) {
            let pile = pile_set(&a);
            let after: Vec<((usize, usize), BTreeSet<usize>)> = a
                .legal_moves()
                .into_iter()
                .map(|(p, q)| ((p.code(), q.code()), pile_set(&a.apply_cds(p, q).unwrap())))
                .collect();
            for ((p, q), next) in &after {
                if pile.difference(next).count() > 2 {
                    return fail(format!("(4): move {p},{q} on {a} removes more than two pile elements"));
                }
            }
            if n == 7 {
                continue;
            }
            let (identity, codes) = oracle::reachable(a.entries(), &mut memo);
            if identity != pile.is_empty() {
                return fail(format!("(1): {a} pile {pile:?}, identity reachable {identity}"));
            }
            if codes != pile {
                return fail(format!("(3): {a} pile {pile:?}, reachable codes {codes:?}"));
            }
            if pile.len() >= 2 {
                for &p in &pile {
                    if !after.iter().any(|((x, y), next)| (*x == p || *y == p) && !next.contains(&p)) {
                        return fail(format!("(2): no move with pointer {p} removes it from the pile of {a}"));
                    }
                }
            }
            checked += 1;
        }
    }
    pass(format!("(1)-(3) on {checked} permutations with n <= 6, (4) also on n = 7"))
}

fn c8_chain_collapse() -> Outcome {
    let mut bad = Vec::new();
    let mut edges = 0;
    for m in 2..=6 {
        let g = gen_chain(m).unwrap();
        if G::from_lib(&g) != oracle::chain(m) {
            return fail(format!("chain {m} differs from reference"));
        }
        let smaller = oracle::chain(m - 1);
        for (x, y) in g.edges() {
            edges += 1;
            let after = G::from_lib(&g.apply_gcds2(x.as_str(), y.as_str()).unwrap());
            let reference = oracle::gcds2(&oracle::chain(m), x.as_str(), y.as_str());
            if after != reference {
                return fail(format!("gcds2 on chain {m} at {x},{y} differs from reference"));
            }
            if !oracle::isomorphic(&after, &smaller) {
                bad.push(format!("m={m} {{{x},{y}}} -> {} edges", after.edges.len()));
            }
        }
    }
    if bad.is_empty() {
        pass(format!("all {edges} edges collapse to the shorter chain"))
    } else {
        fail(format!("{} of {edges} edges do not collapse: {}", bad.len(), bad.join(", ")))
    }
}

fn c9_np(replays: &mut Replays) -> Outcome {
    let mut solver = Solver::new();
    let mut seen = Vec::new();
    for m in 1..=6 {
        let position = Position::new(gen_chain(m).unwrap(), gen_favorable(m).unwrap()).unwrap();
        let mut winners = Vec::new();
        for mover in [Player::One, Player::Two] {
            let r = solver.solve_gcds(&GcdsState { position: position.clone(), mover }).unwrap();
            replays.graph(&position, mover, &r.principal_variation, r.winner);
            winners.push(r.winner);
        }
        let status = solver.np_status(&position).unwrap().status;
        let want = if m % 2 == 1 { NpClass::N } else { NpClass::P };
        // N: whoever moves first wins
        let consistent = match want {
            NpClass::N => winners == [Player::One, Player::Two],
            NpClass::P => winners == [Player::Two, Player::One],
        };
        if status != Some(want) || !consistent {
            return fail(format!("m={m}: status {status:?}, winners moving first {winners:?}"));
        }
        if m <= 4 {
            let fav: BTreeSet<String> = gen_favorable(m).unwrap().iter().map(|l| l.as_str().to_owned()).collect();
            let mut memo = Default::default();
            let reference = oracle::gcds_winner(&oracle::chain(m), &fav, true, &mut memo);
            if reference != (winners[0] == Player::One) {
                return fail(format!("m={m}: reference solver disagrees"));
            }
        }
        seen.push(format!("{m}:{want:?}"));
    }
    pass(format!("{} (m = 6 included)", seen.join(" ")))
}

fn c10_tight(replays: &mut Replays) -> Outcome {
    let mut solver = Solver::with_config(SolverConfig { max_n: 12, ..SolverConfig::default() });
    let mut notes = Vec::new();
    for (n, want_b) in [(8, 2), (12, 3)] {
        let t = tight_instance(n).unwrap();
        let pile = strategic_pile(&t.perm);
        if pile.len() != n - 1 || pile.len() % 4 != 3 {
            return fail(format!("n={n}: pile size {}", pile.len()));
        }
        if t.favorable.len() != want_b || want_b != (pile.len() - 3) / 4 + 1 {
            return fail(format!("n={n}: |B| = {}", t.favorable.len()));
        }
        let mut solve = |fav: &BTreeSet<Pointer>, replays: &mut Replays| {
            let state = CdsState::new(t.perm.clone(), fav.iter().copied(), Player::One).unwrap();
            let c = solver.solve_cds(&state).unwrap();
            replays.perm(&t.perm, fav, &c.principal_variation, c.winner);
            let position = Position::new(overlap_graph(&t.perm), fav.iter().map(|p| p.code())).unwrap();
            let g = solver.solve_gcds(&GcdsState { position: position.clone(), mover: Player::One }).unwrap();
            replays.graph(&position, Player::One, &g.principal_variation, g.winner);
            (c.winner, g.winner)
        };
        if solve(&t.favorable, replays) != (Player::One, Player::One) {
            return fail(format!("n={n}: ONE does not win with B = {:?}", t.favorable));
        }
        let fav_codes: BTreeSet<usize> = t.favorable.iter().map(|p| p.code()).collect();
        if n == 8 && !oracle::cds_winner(t.perm.entries(), &fav_codes, true, &mut HashMap::new()) {
            return fail("reference solver says ONE loses at n = 8");
        }
        for b in &t.favorable {
            let mut fewer = t.favorable.clone();
            fewer.remove(b);
            if solve(&fewer, replays) != (Player::Two, Player::Two) {
                return fail(format!("n={n}: removing {b} does not flip the winner"));
            }
        }
        notes.push(format!("n={n} pile {} |B|={want_b}", pile.len()));
    }
    pass(format!("{}; ONE wins both games, every smaller set loses", notes.join(", ")))
}

fn c11_bounds(replays: &mut Replays) -> Outcome {
    let mut solver = Solver::new();
    let (mut states, mut decided) = (0, 0);
    for n in 2..=6 {
        let mut memo = HashMap::new();
        for a in all_permutations(n) {
            let pile: Vec<Pointer> = strategic_pile(&a).codes().to_vec();
            if pile.is_empty() {
                continue;
            }
            for mask in 0u32..1 << pile.len() {
                let fav: BTreeSet<Pointer> = (0..pile.len()).filter(|i| mask >> i & 1 == 1).map(|i| pile[i]).collect();
                let r = solver.solve_cds(&CdsState::new(a.clone(), fav.iter().copied(), Player::One).unwrap()).unwrap();
                replays.perm(&a, &fav, &r.principal_variation, r.winner);
                let codes: BTreeSet<usize> = fav.iter().map(|p| p.code()).collect();
                memo.clear();
                let reference = oracle::cds_winner(a.entries(), &codes, true, &mut memo);
                if reference != (r.winner == Player::One) {
                    return fail(format!("solver and reference disagree on {a} with {codes:?}"));
                }
                let prediction = bound_prediction(pile.len(), fav.len()).unwrap();
                let contradicts = match prediction.verdict {
                    Verdict::One => r.winner != Player::One,
                    Verdict::Two => r.winner != Player::Two,
                    Verdict::Undetermined => false,
                };
                if contradicts {
                    return fail(format!("{a} with {codes:?}: predicted {:?}, solver {}", prediction.verdict, r.winner));
                }
                states += 1;
                decided += (prediction.verdict != Verdict::Undetermined) as usize;
            }
        }
    }
    pass(format!("{states} states, {decided} decided by a rule, no contradictions"))
}

fn c12_replays(replays: &Replays) -> Outcome {
    if replays.bad.is_empty() && replays.checked > 0 {
        pass(format!("{} principal variations replayed on the reference implementation", replays.checked))
    } else {
        fail(format!("{} of {} replays disagree: {:?}", replays.bad.len(), replays.checked, replays.bad.first()))
    }
}

/// Criteria that fail for reasons recorded in the README, with the exact
/// failure text expected. Anything else failing, or these passing, is an error.
const KNOWN_FAILURES: &[(usize, &str)] = &[(
    8,
    "10 of 60 edges do not collapse: m=3 {3,5} -> 10 edges, m=4 {3,5} -> 13 edges, m=4 {5,7} -> 13 edges, \
     m=5 {3,5} -> 16 edges, m=5 {5,7} -> 16 edges, m=5 {7,9} -> 16 edges, m=6 {3,5} -> 19 edges, \
     m=6 {5,7} -> 19 edges, m=6 {7,9} -> 19 edges, m=6 {9,11} -> 19 edges",
)];

fn main() -> ExitCode {
    let mut replays = Replays::default();
    let mut results: Vec<(usize, &str, Outcome, f64)> = Vec::new();
    let mut run = |k: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let outcome = f();
        results.push((k, name, outcome, t.elapsed().as_secs_f64() * 1e3));
        let (k, name, o, ms) = results.last().unwrap();
        println!("{} {k:>2} {name}: {} ({ms:.1} ms)", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    };
    run(1, "swap worked example", &mut c1_swap_example);
    run(2, "strategic pile of the worked example", &mut c2_full_pile);
    run(3, "overlap graph example", &mut c3_overlap_example);
    run(4, "gcds before/after fixtures", &mut c4_gcds_fixtures);
    run(5, "graph game replay", &mut c5_game_replay);
    run(6, "swap/gcds commutation", &mut c6_commutation);
    run(7, "strategic pile properties", &mut c7_pile_properties);
    run(8, "chain collapse", &mut c8_chain_collapse);
    run(9, "chain N/P classification", &mut || c9_np(&mut replays));
    run(10, "tight construction", &mut || c10_tight(&mut replays));
    run(11, "bound rules vs solver", &mut || c11_bounds(&mut replays));
    run(12, "principal variation replay", &mut || c12_replays(&replays));

    let passed = results.iter().filter(|r| r.2.ok).count();
    println!("{passed}/{} criteria pass", results.len());
    let mut unexpected = false;
    for (k, _, o, _) in &results {
        let known = KNOWN_FAILURES.iter().find(|(j, _)| j == k);
        match (o.ok, known) {
            (true, None) => {}
            (false, Some((_, text))) if o.detail == *text => println!("criterion {k} fails as documented"),
            (false, Some(_)) => {
                println!("criterion {k} fails differently from the documented failure");
                unexpected = true;
            }
            (true, Some(_)) => {
                println!("criterion {k} was documented as failing but now passes");
                unexpected = true;
            }
            (false, None) => unexpected = true,
        }
    }
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
