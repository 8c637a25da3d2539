use std::collections::BTreeSet;
use std::fmt::Write;

use super::{header, unknown, ParseError, ParseResult};
use crate::graph::Graph;
use crate::multiway::GmcInstance;

/// `p gmc <n> <m> <groups>`, then `e <u> <v>` and `t <group> <v>` records.
///
/// The deletion budget is not part of the file; parsed instances carry
/// budget 0.
pub fn parse_gmc(text: &str) -> ParseResult<GmcInstance> {
    let (head, nums, body) = header(text, "gmc", 3)?;
    let (n, m, count) = (nums[0], nums[1], nums[2]);
    let mut graph = Graph::new(n);
    let mut groups = vec![BTreeSet::new(); count];
    let mut owner = vec![false; n + 1];
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
            "t" => {
                let v = rec.numbers(2)?;
                rec.in_range(1, v[0], 1, count, "group")?;
                rec.in_range(2, v[1], 1, n, "vertex")?;
                if std::mem::replace(&mut owner[v[1]], true) {
                    return Err(rec.error(2, format!("groups not disjoint: vertex {} listed twice", v[1])));
                }
                groups[v[0] - 1].insert(v[1]);
            }
            _ => return Err(unknown(rec, "`e`, `t`")),
        }
    }
    if edges != m {
        return Err(head.error(3, format!("header announces {m} edges, found {edges}")));
    }
    GmcInstance::new(graph, groups, 0).map_err(|e| ParseError::new(head.line, 1, e.to_string()))
}

pub fn serialize_gmc(inst: &GmcInstance) -> String {
    let graph = inst.graph();
    let mut out = format!(
        "p gmc {} {} {}\n",
        graph.n(),
        graph.edge_count(),
        inst.groups().len()
    );
    for (u, v) in graph.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    for (i, group) in inst.groups().iter().enumerate() {
        for v in group {
            writeln!(out, "t {} {v}", i + 1).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_with_two_groups() {
        let inst = parse_gmc("p gmc 3 2 2\ne 1 2\ne 2 3\nt 1 1\nt 2 3").unwrap();
        assert_eq!(inst.groups(), &[BTreeSet::from([1]), BTreeSet::from([3])]);
        assert_eq!(parse_gmc(&serialize_gmc(&inst)).unwrap(), inst);
    }

    #[test]
    fn duplicate_terminal_is_rejected() {
        let err = parse_gmc("p gmc 3 0 2\nt 1 1\nt 2 1").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("not disjoint"));
    }

    #[test]
    fn single_terminal() {
        let inst = parse_gmc("p gmc 1 0 1\nt 1 1").unwrap();
        assert_eq!(inst.groups().len(), 1);
    }

    #[test]
    fn group_out_of_range() {
        assert!(parse_gmc("p gmc 2 0 1\nt 2 1").is_err());
    }
}
