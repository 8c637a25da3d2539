use std::fmt::Write;

use super::{header, unknown, ParseError, ParseResult};
use crate::graph::Graph;
use crate::source::RmisInstance;

/// `p rmis <n> <m> <k> <r>`, then `e <u> <v>` and `q <clique> <v>` records.
pub fn parse_rmis(text: &str) -> ParseResult<RmisInstance> {
    let (head, nums, body) = header(text, "rmis", 4)?;
    let (n, m, k, r) = (nums[0], nums[1], nums[2], nums[3]);
    let mut graph = Graph::new(n);
    let mut cliques = vec![Vec::new(); k];
    let mut placed = vec![false; n + 1];
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
            "q" => {
                let v = rec.numbers(2)?;
                rec.in_range(1, v[0], 1, k, "clique")?;
                rec.in_range(2, v[1], 1, n, "vertex")?;
                if std::mem::replace(&mut placed[v[1]], true) {
                    return Err(rec.error(2, format!("vertex {} placed in two cliques", v[1])));
                }
                cliques[v[0] - 1].push(v[1]);
            }
            _ => return Err(unknown(rec, "`e`, `q`")),
        }
    }
    if edges != m {
        return Err(head.error(3, format!("header announces {m} edges, found {edges}")));
    }
    RmisInstance::new(graph, cliques, r).map_err(|e| ParseError::new(head.line, 1, e.to_string()))
}

pub fn serialize_rmis(inst: &RmisInstance) -> String {
    let g = inst.graph();
    let mut out = format!("p rmis {} {} {} {}\n", g.n(), g.edge_count(), inst.k(), inst.r());
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    for (i, clique) in inst.cliques().iter().enumerate() {
        for v in clique {
            writeln!(out, "q {} {v}", i + 1).unwrap();
        }
    }
    out
}
