use std::fmt::Write;

use super::{ParseError, ParseResult};
use crate::cwexpr::{Builder, NodeId, WExpression, WNode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

struct Lexer<'a> {
    toks: Vec<(usize, usize, Tok<'a>)>,
    pos: usize,
    end: (usize, usize),
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        let mut toks = Vec::new();
        let mut end = (1, 1);
        for (li, line) in text.lines().enumerate() {
            let line_no = li + 1;
            let mut chars = line.char_indices().peekable();
            let mut col = 0;
            while let Some((i, ch)) = chars.next() {
                col += 1;
                match ch {
                    '#' => break,
                    '(' => toks.push((line_no, col, Tok::Open)),
                    ')' => toks.push((line_no, col, Tok::Close)),
                    c if c.is_whitespace() => {}
                    _ => {
                        let start_col = col;
                        let mut j = i + ch.len_utf8();
                        while let Some(&(k, c)) = chars.peek() {
                            if c.is_whitespace() || c == '(' || c == ')' || c == '#' {
                                break;
                            }
                            chars.next();
                            col += 1;
                            j = k + c.len_utf8();
                        }
                        toks.push((line_no, start_col, Tok::Atom(&line[i..j])));
                    }
                }
            }
            end = (line_no, col + 1);
        }
        Lexer { toks, pos: 0, end }
    }

    fn next(&mut self) -> ParseResult<(usize, usize, Tok<'a>)> {
        let t = self.toks.get(self.pos).copied().ok_or_else(|| {
            ParseError::new(self.end.0, self.end.1, "unexpected end of input")
        })?;
        self.pos += 1;
        Ok(t)
    }

    fn expect_open(&mut self) -> ParseResult<()> {
        match self.next()? {
            (_, _, Tok::Open) => Ok(()),
            (l, c, _) => Err(ParseError::new(l, c, "expected `(`")),
        }
    }

    fn expect_close(&mut self) -> ParseResult<()> {
        match self.next()? {
            (_, _, Tok::Close) => Ok(()),
            (l, c, _) => Err(ParseError::new(l, c, "expected `)`")),
        }
    }

    fn number(&mut self) -> ParseResult<(usize, usize, usize)> {
        match self.next()? {
            (l, c, Tok::Atom(a)) => a
                .parse::<usize>()
                .map(|v| (l, c, v))
                .map_err(|_| ParseError::new(l, c, format!("expected an integer, found `{a}`"))),
            (l, c, _) => Err(ParseError::new(l, c, "expected an integer")),
        }
    }

    fn label(&mut self) -> ParseResult<(usize, usize, usize)> {
        let (l, c, v) = self.number()?;
        if v == 0 {
            return Err(ParseError::new(l, c, "labels start at 1"));
        }
        Ok((l, c, v))
    }
}

/// S-expression: `(v <id> <label>)`, `(u <e> <e>)`, `(r <i> <j> <e>)`
/// renaming `i` to `j`, `(n <i> <j> <e>)` joining labels `i` and `j`.
/// `#` starts a comment running to the end of the line.
pub fn parse_wexpr(text: &str) -> ParseResult<WExpression> {
    let mut lex = Lexer::new(text);
    let mut b = Builder::default();
    expr(&mut lex, &mut b)?;
    if let Some(&(l, c, _)) = lex.toks.get(lex.pos) {
        return Err(ParseError::new(l, c, "trailing input after expression"));
    }
    b.finish().map_err(|e| ParseError::new(1, 1, e.to_string()))
}

fn expr(lex: &mut Lexer<'_>, b: &mut Builder) -> ParseResult<NodeId> {
    lex.expect_open()?;
    let (l, c, tag) = lex.next()?;
    let id = match tag {
        Tok::Atom("v") => {
            let (vl, vc, vertex) = lex.number()?;
            let (_, _, label) = lex.label()?;
            b.introduce(vertex, label)
                .map_err(|_| ParseError::new(vl, vc, format!("duplicate vertex id {vertex}")))?
        }
        Tok::Atom("u") => {
            let left = expr(lex, b)?;
            let right = expr(lex, b)?;
            b.union(left, right)
        }
        Tok::Atom("r") => {
            let (_, _, from) = lex.label()?;
            let (_, _, to) = lex.label()?;
            let child = expr(lex, b)?;
            b.rename(from, to, child).expect("labels checked")
        }
        Tok::Atom("n") => {
            let (il, ic, a) = lex.label()?;
            let (_, _, bl) = lex.label()?;
            if a == bl {
                return Err(ParseError::new(il, ic, format!("join needs two distinct labels, got {a} twice")));
            }
            let child = expr(lex, b)?;
            b.join(a, bl, child).expect("labels checked")
        }
        Tok::Atom(other) => {
            return Err(ParseError::new(l, c, format!("unknown operator `{other}`, expected v, u, r or n")))
        }
        _ => return Err(ParseError::new(l, c, "expected an operator")),
    };
    lex.expect_close()?;
    Ok(id)
}

pub fn serialize_wexpr(e: &WExpression) -> String {
    let mut out = String::new();
    write_node(e, e.root(), &mut out);
    out.push('\n');
    out
}

fn write_node(e: &WExpression, id: NodeId, out: &mut String) {
    match e.nodes()[id] {
        WNode::Introduce { vertex, label } => write!(out, "(v {vertex} {label})").unwrap(),
        WNode::Union(l, r) => {
            out.push_str("(u ");
            write_node(e, l, out);
            out.push(' ');
            write_node(e, r, out);
            out.push(')');
        }
        WNode::Rename { from, to, child } => {
            write!(out, "(r {from} {to} ").unwrap();
            write_node(e, child, out);
            out.push(')');
        }
        WNode::Join { a, b, child } => {
            write!(out, "(n {a} {b} ").unwrap();
            write_node(e, child, out);
            out.push(')');
        }
    }
}
