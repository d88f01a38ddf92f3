use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Edge, Graph, GraphError, Mark, NodeId};

/// Wire form of a graph. Field order here is the canonical key order.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct GraphRepr {
    directed: bool,
    nodes: Vec<String>,
    edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    selected_nodes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    highlighted_nodes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    selected_edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    highlighted_edges: Vec<[String; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;

    fn try_from(repr: GraphRepr) -> Result<Self, GraphError> {
        let mut g = Graph::new(repr.directed);
        for n in repr.nodes {
            g.add_node(NodeId::new(n)?)?;
        }
        for [a, b] in repr.edges {
            g.add_edge(NodeId::new(a)?, NodeId::new(b)?)?;
        }
        for (mark, set, names) in [
            (Mark::Selected, "selectedNodes", repr.selected_nodes),
            (Mark::Highlighted, "highlightedNodes", repr.highlighted_nodes),
        ] {
            for n in names {
                if g.marked_nodes(mark).contains(n.as_str()) {
                    return Err(GraphError::DuplicateMark { set, entry: n });
                }
                g.mark_node(mark, &n)?;
            }
        }
        for (mark, set, pairs) in [
            (Mark::Selected, "selectedEdges", repr.selected_edges),
            (Mark::Highlighted, "highlightedEdges", repr.highlighted_edges),
        ] {
            for [a, b] in pairs {
                if g.edge_is_marked(mark, &a, &b) {
                    return Err(GraphError::DuplicateMark {
                        set,
                        entry: format!("({a}, {b})"),
                    });
                }
                g.mark_edge(mark, &a, &b)?;
            }
        }
        Ok(g)
    }
}

impl From<&Graph> for GraphRepr {
    fn from(g: &Graph) -> Self {
        let names = |s: &BTreeSet<NodeId>| s.iter().map(|n| n.0.clone()).collect();
        let pairs = |s: &BTreeSet<Edge>| {
            s.iter()
                .map(|Edge(a, b)| [a.0.clone(), b.0.clone()])
                .collect()
        };
        GraphRepr {
            directed: g.directed,
            nodes: names(&g.nodes),
            edges: pairs(&g.edges),
            selected_nodes: names(&g.selected_nodes),
            highlighted_nodes: names(&g.highlighted_nodes),
            selected_edges: pairs(&g.selected_edges),
            highlighted_edges: pairs(&g.highlighted_edges),
        }
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        Graph::try_from(repr).map_err(serde::de::Error::custom)
    }
}

/// Parses a graph from UTF-8 JSON.
///
/// Malformed JSON (or a shape mismatch such as an unknown key) yields
/// [`GraphError::Syntax`] with a 1-based position; well-formed input that
/// breaks a graph invariant yields the specific semantic error.
pub fn parse_graph(text: &[u8]) -> Result<Graph, GraphError> {
    let repr: GraphRepr = serde_json::from_slice(text).map_err(|e| GraphError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Graph::try_from(repr)
}
