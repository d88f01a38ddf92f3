use std::fmt::Write;

use super::{Graph, Mark};

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

fn style(selected: bool, highlighted: bool, filled: &'static str) -> Option<String> {
    let mut parts = Vec::new();
    if selected {
        parts.push(filled);
    }
    if highlighted {
        parts.push("bold");
    }
    if parts.is_empty() {
        None
    } else {
        Some(format!(" [style=\"{}\"]", parts.join(",")))
    }
}

/// Graphviz rendering. Selected nodes are filled, highlighted elements bold;
/// selected edges are drawn in color since edges cannot be filled.
pub(super) fn render(g: &Graph) -> String {
    let (kind, arrow) = if g.is_directed() {
        ("digraph", "->")
    } else {
        ("graph", "--")
    };
    let mut out = format!("{kind} G {{\n");
    for n in g.nodes() {
        let attrs = style(
            g.marked_nodes(Mark::Selected).contains(n),
            g.marked_nodes(Mark::Highlighted).contains(n),
            "filled",
        )
        .unwrap_or_default();
        let _ = writeln!(out, "  {}{};", quote(n.as_str()), attrs);
    }
    for e in g.edges() {
        let selected = g.marked_edges(Mark::Selected).contains(e);
        let highlighted = g.marked_edges(Mark::Highlighted).contains(e);
        let mut attrs = style(false, highlighted, "").unwrap_or_default();
        if selected {
            attrs = if attrs.is_empty() {
                " [color=\"blue\"]".to_string()
            } else {
                attrs.replace(']', ", color=\"blue\"]")
            };
        }
        let _ = writeln!(
            out,
            "  {} {} {}{};",
            quote(e.0.as_str()),
            arrow,
            quote(e.1.as_str()),
            attrs
        );
    }
    out.push_str("}\n");
    out
}
