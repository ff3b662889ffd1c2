//! Graphviz export: solid edges for arrows, a dotted edge without arrowhead
//! from `s(first)` to `e(second)` for each relation.

use std::fmt::Write;

use crate::quiver::GentlePresentation;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render_dot(p: &GentlePresentation) -> String {
    let q = p.quiver();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(p.name())).unwrap();
    for v in q.vertices() {
        writeln!(out, "  {};", quote(q.vertex_label(v))).unwrap();
    }
    for a in q.arrows() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(q.vertex_label(q.source(a))),
            quote(q.vertex_label(q.target(a))),
            quote(q.arrow_label(a))
        )
        .unwrap();
    }
    for r in p.relations() {
        writeln!(
            out,
            "  {} -> {} [style=dotted, arrowhead=none, constraint=false, tooltip={}];",
            quote(q.vertex_label(q.source(r.first))),
            quote(q.vertex_label(q.target(r.second))),
            quote(&format!(
                "{} {}",
                q.arrow_label(r.second),
                q.arrow_label(r.first)
            ))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::build_presentation;

    fn counts(text: &str) -> (usize, usize, usize) {
        let lines: Vec<&str> = text.lines().map(str::trim).collect();
        let nodes = lines
            .iter()
            .filter(|l| l.ends_with(';') && !l.contains("->"))
            .count();
        let edges = lines
            .iter()
            .filter(|l| l.contains("->") && !l.contains("dotted"))
            .count();
        let rels = lines.iter().filter(|l| l.contains("dotted")).count();
        (nodes, edges, rels)
    }

    #[test]
    fn shapes() {
        let dot = |raw| render_dot(&build_presentation(&raw).unwrap());
        assert_eq!(counts(&dot(fixtures::a2())), (2, 1, 0));
        assert_eq!(counts(&dot(fixtures::running_example())), (8, 9, 4));
        let k = dot(fixtures::kronecker());
        assert_eq!(counts(&k), (2, 2, 0));
        assert_eq!(k.matches("\"v1\" -> \"v2\"").count(), 2);
    }

    #[test]
    fn stable() {
        let p = build_presentation(&fixtures::running_example()).unwrap();
        assert_eq!(render_dot(&p), render_dot(&p.clone()));
        assert!(render_dot(&p).starts_with("digraph \"running_example\" {\n"));
    }
}
