//! Graphviz output for extended divisors and fibration graphs.

use std::fmt::Write;

use crate::autgraph::{ArrowClass, FvShape};
use crate::extdiv::ExtendedDivisor;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The dual graph of the boundary chain and its feathers.
pub fn dext_dot(e: &ExtendedDivisor) -> String {
    let mut out = String::from("graph dext {\n  rankdir=LR;\n  node [shape=circle];\n");
    for (i, w) in e.weights().iter().enumerate() {
        let label = quote(&format!("C_{i} ({w})"));
        writeln!(out, "  c{i} [label={label}];").unwrap();
    }
    for i in 1..e.weights().len() {
        writeln!(out, "  c{} -- c{i};", i - 1).unwrap();
    }
    for f in e.feathers() {
        let (i, j) = (f.label.index, f.label.j);
        let label = quote(&format!("{} ({})", f.label, f.self_intersection));
        writeln!(out, "  f{i}_{j} [label={label}, shape=box];").unwrap();
        writeln!(out, "  c{i} -- f{i}_{j};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Schematic of the graph of fibration classes: one vertex per class, and
/// the arrow class as edge decoration.
pub fn fv_dot(shape: &FvShape) -> String {
    let mut out = String::from("digraph fv {\n  node [shape=ellipse];\n");
    let vertices: &[&str] = if shape.vertex_count == 1 { &["v1"] } else { &["v1", "v2"] };
    for (k, v) in vertices.iter().enumerate() {
        writeln!(out, "  {v} [label={}];", quote(&format!("class {}", k + 1))).unwrap();
    }
    let pairs: &[(&str, &str)] = if shape.vertex_count == 1 {
        &[("v1", "v1")]
    } else {
        &[("v1", "v2"), ("v2", "v1")]
    };
    for (a, b) in pairs {
        match shape.arrow_class {
            ArrowClass::UncountableFamily => writeln!(
                out,
                "  {a} -> {b} [label=\"uncountable family\", color=\"black:black:black\"];"
            ),
            _ => writeln!(out, "  {a} -> {b};"),
        }
        .unwrap();
    }
    out.push_str("}\n");
    out
}
