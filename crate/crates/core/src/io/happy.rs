use std::fmt::Write;

use super::{header, unknown, ParseError, ParseResult};
use crate::graph::{ColoredGraph, Graph};

/// `p happy <n> <m> <ell>`, then `e <u> <v>` and `c <v> <color>` records.
pub fn parse_happy(text: &str) -> ParseResult<ColoredGraph> {
    let (head, nums, body) = header(text, "happy", 3)?;
    let (n, m, ell) = (nums[0], nums[1], nums[2]);
    if ell == 0 {
        return Err(head.error(4, "at least one color is required"));
    }
    let mut graph = Graph::new(n);
    let mut precolor = vec![None; n + 1];
    let mut edges = 0;
    for rec in &body {
        match rec.tag() {
            "e" => {
                let v = rec.numbers(2)?;
                rec.in_range(1, v[0], 1, n, "vertex")?;
                rec.in_range(2, v[1], 1, n, "vertex")?;
                if v[0] == v[1] {
                    return Err(rec.error(2, format!("self-loop at vertex {}", v[0])));
                }
                if graph.has_edge(v[0], v[1]) {
                    return Err(rec.error(0, format!("duplicate edge {}-{}", v[0], v[1])));
                }
                graph.add_edge(v[0], v[1]).expect("checked above");
                edges += 1;
            }
            "c" => {
                let v = rec.numbers(2)?;
                rec.in_range(1, v[0], 1, n, "vertex")?;
                rec.in_range(2, v[1], 1, ell, "color")?;
                if precolor[v[0]].replace(v[1]).is_some() {
                    return Err(rec.error(1, format!("vertex {} precolored twice", v[0])));
                }
            }
            _ => return Err(unknown(rec, "`e`, `c`")),
        }
    }
    if edges != m {
        return Err(head.error(3, format!("header announces {m} edges, found {edges}")));
    }
    let pre = precolor
        .iter()
        .enumerate()
        .filter_map(|(v, c)| c.map(|c| (v, c)));
    ColoredGraph::new(graph, ell, pre).map_err(|e| ParseError::new(head.line, 1, e.to_string()))
}

pub fn serialize_happy(g: &ColoredGraph) -> String {
    let graph = g.graph();
    let mut out = format!("p happy {} {} {}\n", g.n(), graph.edge_count(), g.ell());
    for (u, v) in graph.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    for (v, c) in g.precolored() {
        writeln!(out, "c {v} {c}").unwrap();
    }
    out
}
