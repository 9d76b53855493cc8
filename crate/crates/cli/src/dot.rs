//! Graphviz output. Input vertices are drawn bold.

use std::fmt::Write;

use graphstab_core::GraphCode;

pub fn to_dot(g: &GraphCode) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.k() + g.n() {
        let style = if v < g.k() {
            "shape=circle, style=bold"
        } else {
            "shape=circle"
        };
        writeln!(out, "  v{v} [{style}];").expect("writing to a String");
    }
    for (i, j, w) in g.edges() {
        if w == 1 {
            writeln!(out, "  v{i} -- v{j};")
        } else {
            writeln!(out, "  v{i} -- v{j} [label={w}];")
        }
        .expect("writing to a String");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphstab_core::Prime;

    #[test]
    fn weighted_edge() {
        let g = GraphCode::from_rows(Prime::new(3).unwrap(), 1, 1, &[[0, 2], [2, 0]]).unwrap();
        assert_eq!(
            to_dot(&g),
            "graph G {\n  v0 [shape=circle, style=bold];\n  v1 [shape=circle];\n  v0 -- v1 [label=2];\n}\n"
        );
    }
}
