//! Line-oriented cache file for solved positions.
//!
//! ```text
//! GCDSCACHE 1
//! G|1,2,3|1-2,1-3,2-3|2|1<TAB>ONE
//! P|2 4 1 3|3|1<TAB>ONE
//! ```
//!
//! Graph keys list vertices, edges (`u-w` with `u < w`) and favourable
//! vertices, each sorted as plain strings, then the mover digit. Permutation
//! keys list the entries, the favourable codes in ascending order, and the mover.
//! A key is accepted only if re-rendering it reproduces the same bytes.

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::games::{Player, StateKey};
use crate::graph::{bit, bits, Graph, Label};
use crate::perm::Permutation;

pub const HEADER: &str = "GCDSCACHE 1";

const RESERVED: &[char] = &['|', ',', '-', ' ', '\t', '\n', '\r'];

pub(crate) fn render_key(key: &StateKey) -> Option<String> {
    match key {
        StateKey::Graph { graph, favorable, mover } => {
            if graph.labels().iter().any(|l| l.as_str().is_empty() || l.as_str().contains(RESERVED)) {
                return None;
            }
            let mut vertices: Vec<&str> = graph.labels().iter().map(Label::as_str).collect();
            vertices.sort_unstable();
            let mut edges: Vec<(&str, &str)> = graph
                .edge_indices()
                .into_iter()
                .map(|(i, j)| {
                    let (a, b) = (graph.label(i).as_str(), graph.label(j).as_str());
                    if a <= b {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect();
            edges.sort_unstable();
            let mut fav: Vec<&str> = bits(*favorable).map(|i| graph.label(i).as_str()).collect();
            fav.sort_unstable();
            let edges: Vec<String> = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            Some(format!("G|{}|{}|{}|{}", vertices.join(","), edges.join(","), fav.join(","), mover.digit()))
        }
        StateKey::Perm { perm, favorable, mover } => {
            let entries: Vec<String> = perm.entries().iter().map(usize::to_string).collect();
            let fav: Vec<String> = bits(*favorable).map(|k| k.to_string()).collect();
            Some(format!("P|{}|{}|{}", entries.join(" "), fav.join(","), mover.digit()))
        }
    }
}

fn split_list(field: &str, sep: char) -> Vec<&str> {
    if field.is_empty() {
        Vec::new()
    } else {
        field.split(sep).collect()
    }
}

fn parse_mover(field: &str) -> std::result::Result<Player, String> {
    match field {
        "1" => Ok(Player::One),
        "2" => Ok(Player::Two),
        other => Err(format!("mover must be 1 or 2, got {other:?}")),
    }
}

pub(crate) fn parse_key(text: &str) -> std::result::Result<StateKey, String> {
    let fields: Vec<&str> = text.split('|').collect();
    let key = match fields.as_slice() {
        ["G", vertices, edges, fav, mover] => {
            let vertices = split_list(vertices, ',');
            let mut pairs = Vec::new();
            for e in split_list(edges, ',') {
                let (a, b) = e.split_once('-').ok_or_else(|| format!("malformed edge {e:?}"))?;
                pairs.push((a, b));
            }
            let graph = Graph::new(vertices, pairs).map_err(|e| e.to_string())?;
            let mut mask = 0u128;
            for f in split_list(fav, ',') {
                let i = graph.index_of(f).ok_or_else(|| format!("favourable vertex {f:?} not in graph"))?;
                mask |= bit(i);
            }
            StateKey::Graph { graph, favorable: mask, mover: parse_mover(mover)? }
        }
        ["P", entries, fav, mover] => {
            let perm: Permutation = entries.parse().map_err(|e: Error| e.to_string())?;
            let mut mask = 0u128;
            for f in split_list(fav, ',') {
                let k: usize = f.parse().map_err(|_| format!("bad pointer code {f:?}"))?;
                if k == 0 || k >= perm.len() {
                    return Err(format!("pointer code {k} out of range"));
                }
                mask |= bit(k);
            }
            StateKey::Perm { perm, favorable: mask, mover: parse_mover(mover)? }
        }
        _ => return Err("key must be G|vertices|edges|favourable|mover or P|entries|favourable|mover".into()),
    };
    match render_key(&key) {
        Some(again) if again == text => Ok(key),
        _ => Err("key is not in canonical form".into()),
    }
}

pub(crate) fn read_entries<R: BufRead>(input: R) -> Result<HashMap<StateKey, Player>> {
    let mut lines = input.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim_end() == HEADER => {}
        Some(Ok(h)) => return Err(Error::CacheFormat(format!("unsupported header {h:?}, expected {HEADER:?}"))),
        Some(Err(e)) => return Err(e.into()),
        None => return Err(Error::CacheFormat("empty file".into())),
    }
    let mut out = HashMap::new();
    let mut bad = Vec::new();
    let mut first_reason = None;
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let number = idx + 2;
        if line.is_empty() {
            continue;
        }
        let parsed = line
            .split_once('\t')
            .ok_or_else(|| "missing tab separator".to_string())
            .and_then(|(key, winner)| {
                let winner = match winner {
                    "ONE" => Player::One,
                    "TWO" => Player::Two,
                    w => return Err(format!("winner must be ONE or TWO, got {w:?}")),
                };
                Ok((parse_key(key)?, winner))
            });
        match parsed {
            Ok((key, winner)) => {
                out.insert(key, winner);
            }
            Err(reason) => {
                bad.push(number);
                first_reason.get_or_insert(reason);
            }
        }
    }
    if bad.is_empty() {
        Ok(out)
    } else {
        Err(Error::CacheLines { lines: bad, reason: first_reason.unwrap_or_default() })
    }
}
