//! Graphviz rendering of ribbon graphs.

use std::collections::BTreeSet;
use std::fmt::Write;

use schober_core::ribbon_graph::EdgeKind;
use schober_core::{RibbonGraph, Vertex};

/// Singular vertices are boxes, the rest circles. Edge ends carry the slot
/// of their halfedge in the cyclic order at the vertex, counted from the
/// seam; external edges end at a point.
pub fn render(g: &RibbonGraph, singular: &BTreeSet<Vertex>) -> String {
    let mut out = String::from("graph ribbon {\n");
    for v in g.vertices() {
        let shape = if singular.contains(&v) { "box" } else { "circle" };
        writeln!(out, "  v{v} [shape={shape}, label=\"v{v}\"];").unwrap();
    }
    for e in g.edges() {
        let tail = g.vertex_of(e.lower);
        let tail_port = g.slot(e.lower);
        match (e.kind, e.upper) {
            (EdgeKind::External, _) | (_, None) => {
                writeln!(out, "  x{} [shape=point];", e.lower).unwrap();
                writeln!(out, "  v{tail} -- x{} [label=\"e{}\", taillabel=\"{tail_port}\"];", e.lower, e.id).unwrap();
            }
            (_, Some(upper)) => {
                let head = g.vertex_of(upper);
                writeln!(
                    out,
                    "  v{tail} -- v{head} [label=\"e{}\", taillabel=\"{tail_port}\", headlabel=\"{}\"];",
                    e.id,
                    g.slot(upper)
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
