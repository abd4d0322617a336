//! Text formats: graph JSON and comma-separated favourable sets.
//!
//! ```json
//! {"vertices":["1","2","3"],"edges":[["1","2"],["2","3"]]}
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::perm::Pointer;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            vertices: g.labels().iter().map(|l| l.as_str().to_owned()).collect(),
            edges: g.edges().into_iter().map(|(a, b)| [a.as_str().to_owned(), b.as_str().to_owned()]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        Graph::new(j.vertices, j.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

pub fn graph_to_json(g: &Graph) -> serde_json::Value {
    serde_json::to_value(GraphJson::from(g)).expect("graph JSON is always serializable")
}

pub fn render_graph(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph JSON is always serializable")
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(text).map_err(|e| Error::parse(truncate(text), e.to_string()))?;
    Graph::try_from(j)
}

fn truncate(text: &str) -> String {
    text.chars().take(40).collect()
}

fn split_csv(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

/// Comma-separated vertex labels. The empty string is the empty set.
pub fn parse_label_set(text: &str) -> BTreeSet<Label> {
    split_csv(text).map(Label::from).collect()
}

/// Comma-separated pointer codes, each checked against length `n`.
pub fn parse_pointer_set(text: &str, n: usize) -> Result<BTreeSet<Pointer>> {
    split_csv(text)
        .map(|tok| {
            let code: usize = tok.parse().map_err(|_| Error::parse(tok, "expected a pointer code"))?;
            Pointer::new(code).check(n)
        })
        .collect()
}
