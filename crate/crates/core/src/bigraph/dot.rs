use std::fmt::Write;

use super::{BilabelledGraph, Parity};

/// Graphviz rendering: even vertices filled, odd vertices hollow, and each
/// boundary position drawn as a labelled pendant point.
pub(super) fn render(g: &BilabelledGraph, name: &str) -> String {
    let parities = g.parities();
    let mut s = String::new();
    let _ = writeln!(s, "graph \"{}\" {{", name.replace('"', "'"));
    let _ = writeln!(s, "  node [shape=circle, label=\"\", width=0.2];");
    for v in 0..g.vertex_count() {
        let style = match parities.as_ref().map(|p| p[v]) {
            Some(Parity::Odd) => "style=solid",
            _ => "style=filled, fillcolor=black",
        };
        let _ = writeln!(s, "  v{v} [{style}];");
    }
    for (u, v) in g.edge_list() {
        let _ = writeln!(s, "  v{u} -- v{v};");
    }
    for (i, &v) in g.inputs().iter().enumerate() {
        let _ = writeln!(s, "  a{} [shape=plaintext, label=\"a{}\"];", i + 1, i + 1);
        let _ = writeln!(s, "  a{} -- v{v} [style=dashed];", i + 1);
    }
    for (j, &v) in g.outputs().iter().enumerate() {
        let _ = writeln!(s, "  b{} [shape=plaintext, label=\"b{}\"];", j + 1, j + 1);
        let _ = writeln!(s, "  v{v} -- b{} [style=dashed];", j + 1);
    }
    if g.k() > 0 {
        let ids: Vec<String> = (1..=g.k()).map(|i| format!("a{i}")).collect();
        let _ = writeln!(s, "  {{ rank=source; {} }}", ids.join("; "));
    }
    if g.l() > 0 {
        let ids: Vec<String> = (1..=g.l()).map(|j| format!("b{j}")).collect();
        let _ = writeln!(s, "  {{ rank=sink; {} }}", ids.join("; "));
    }
    s.push_str("}\n");
    s
}
