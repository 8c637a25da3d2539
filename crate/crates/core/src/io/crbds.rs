use std::fmt::Write;

use super::{header, unknown, ParseError, ParseResult};
use crate::source::CrbdsInstance;

/// `p crbds <nr> <nb> <m> <k>`, then `e <r> <b>` and `c <r> <color>`
/// records. Every red vertex needs exactly one color.
pub fn parse_crbds(text: &str) -> ParseResult<CrbdsInstance> {
    let (head, nums, body) = header(text, "crbds", 4)?;
    let (nr, nb, m, k) = (nums[0], nums[1], nums[2], nums[3]);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut colors = vec![0; nr];
    for rec in &body {
        match rec.tag() {
            "e" => {
                let v = rec.numbers(2)?;
                rec.in_range(1, v[0], 1, nr, "red vertex")?;
                rec.in_range(2, v[1], 1, nb, "blue vertex")?;
                if !seen.insert((v[0], v[1])) {
                    return Err(rec.error(0, format!("duplicate edge {}-{}", v[0], v[1])));
                }
                edges.push((v[0], v[1]));
            }
            "c" => {
                let v = rec.numbers(2)?;
                rec.in_range(1, v[0], 1, nr, "red vertex")?;
                rec.in_range(2, v[1], 1, k, "color")?;
                if std::mem::replace(&mut colors[v[0] - 1], v[1]) != 0 {
                    return Err(rec.error(1, format!("red vertex {} colored twice", v[0])));
                }
            }
            _ => return Err(unknown(rec, "`e`, `c`")),
        }
    }
    if edges.len() != m {
        return Err(head.error(4, format!("header announces {m} edges, found {}", edges.len())));
    }
    if let Some(r) = colors.iter().position(|&c| c == 0) {
        return Err(head.error(0, format!("red vertex {} has no color", r + 1)));
    }
    CrbdsInstance::new(colors, nb, k, edges).map_err(|e| ParseError::new(head.line, 1, e.to_string()))
}

pub fn serialize_crbds(inst: &CrbdsInstance) -> String {
    let mut out = format!(
        "p crbds {} {} {} {}\n",
        inst.nr(),
        inst.nb(),
        inst.edge_count(),
        inst.k()
    );
    for (r, b) in inst.edges() {
        writeln!(out, "e {r} {b}").unwrap();
    }
    for r in 1..=inst.nr() {
        writeln!(out, "c {r} {}", inst.color(r)).unwrap();
    }
    out
}
