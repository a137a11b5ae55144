//! Graphviz output for Morse graphs.

use std::fmt::Write as _;

use conley::dynamics::MorseDecomposition;

use crate::problem::Problem;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Nodes `m<i>` labelled with the set name and members; edges point from
/// higher to lower Morse sets along the covering relations.
pub fn morse_dot(p: &Problem, md: &MorseDecomposition, names: &[String], dims: Option<&[Vec<usize>]>) -> String {
    let mut out = String::from("digraph morse {\n");
    for (i, s) in md.sets.iter().enumerate() {
        let mut label = format!("{}\\n{}", escape(&names[i]), escape(&p.space.fmt_set(s)));
        if let Some(d) = dims {
            let parts: Vec<String> = d[i].iter().map(usize::to_string).collect();
            let _ = write!(label, "\\ndims=({})", parts.join(","));
        }
        let _ = writeln!(out, "  m{i} [label=\"{label}\"];");
    }
    for &(q, r) in &md.hasse_edges {
        let _ = writeln!(out, "  m{q} -> m{r};");
    }
    out.push_str("}\n");
    out
}
