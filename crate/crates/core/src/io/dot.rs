//! Graphviz export of specialization orders and monoid tables.

use std::fmt::Write as _;

use crate::bitset::PointId;
use crate::space::SModSpace;

fn quote(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn html(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Hasse diagram of the specialization order, smaller points at the bottom.
pub fn hasse_dot(space: &SModSpace, name: &str) -> String {
    let p = space.presentation();
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", quote(name));
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for (i, n) in space.points().iter().enumerate() {
        let _ = writeln!(out, "  p{i} [label=\"{}\"];", quote(&n.label(p)));
    }
    for (x, y) in space.hasse_edges() {
        let _ = writeln!(out, "  p{} -> p{};", x.index(), y.index());
    }
    out.push_str("}\n");
    out
}

/// The operation table as a single HTML-like table node; `table[i][j]` is
/// `labels[i] o labels[j]`.
pub fn monoid_dot(labels: &[String], table: &[Vec<Option<PointId>>], name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", quote(name));
    out.push_str("  node [shape=plaintext];\n");
    out.push_str("  table [label=<<TABLE BORDER=\"0\" CELLBORDER=\"1\" CELLSPACING=\"0\">\n");
    out.push_str("    <TR><TD>∘</TD>");
    for l in labels {
        let _ = write!(out, "<TD><B>{}</B></TD>", html(l));
    }
    out.push_str("</TR>\n");
    for (i, row) in table.iter().enumerate() {
        let _ = write!(out, "    <TR><TD><B>{}</B></TD>", html(&labels[i]));
        for cell in row {
            let text = cell.map_or("-", |k| labels[k.index()].as_str());
            let _ = write!(out, "<TD>{}</TD>", html(text));
        }
        out.push_str("</TR>\n");
    }
    out.push_str("  </TABLE>>];\n}\n");
    out
}
