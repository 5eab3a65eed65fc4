//! The loop DSL.
//!
//! ```text
//! vars: x, y, f, g
//! init: x = 0; y = 0; f = 1; g = 0
//! body:
//!   x = x + 2 [1/2] x - 1
//!   (u, v) = (u + v, u - v)
//!   g = g + 1
//! ```
//!
//! A branch list `e1 [p1] e2 [p2] e3` gives the last branch the remaining
//! probability. Guards of any kind are rejected.

use num_traits::{One, Zero};

use super::{Assignment, Branch, LoopProgram};
use crate::algebra::{is_identifier, parse_poly, parse_rational, Polynomial, Rational, VarRing};
use crate::error::{Error, Result};

const GUARD_WORDS: [&str; 5] = ["if", "else", "while", "then", "for"];

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

/// Re-bases a syntax error position from a slice onto the whole input.
fn shift(err: Error, offset: usize) -> Error {
    match err {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
        e => e,
    }
}

fn check_guards(line: &str) -> Result<()> {
    if line.contains(['<', '>', '!']) || line.contains("==") {
        return Err(Error::GuardUnsupported(line.trim().to_string()));
    }
    let has_word = line.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).any(|w| GUARD_WORDS.contains(&w));
    if has_word {
        return Err(Error::GuardUnsupported(line.trim().to_string()));
    }
    Ok(())
}

/// Splits on `sep` outside parentheses and brackets, returning
/// `(offset, piece)` pairs.
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// Strips one pair of enclosing parentheses if they wrap the whole string.
fn unwrap_parens(s: &str) -> Option<&str> {
    let t = s.trim();
    if !t.starts_with('(') || !t.ends_with(')') {
        return None;
    }
    let mut depth = 0;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i != t.len() - 1 {
                    return None;
                }
            }
            _ => {}
        }
    }
    Some(&t[1..t.len() - 1])
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

struct Line<'a> {
    offset: usize,
    text: &'a str,
}

pub fn parse_loop(text: &str) -> Result<LoopProgram> {
    let mut lines = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let body = raw.split('#').next().unwrap().trim_end();
        if !body.trim().is_empty() {
            check_guards(body)?;
            lines.push(Line { offset, text: body });
        }
        offset += raw.len();
    }

    let mut it = lines.into_iter().peekable();
    let vars_line = it.next().ok_or_else(|| syntax(0, "missing `vars:` section"))?;
    let vars_text = section(&vars_line, "vars:")?;
    let ring = parse_vars(vars_text, vars_line.offset + vars_line.text.find("vars:").unwrap() + 5)?;

    let init_line = it.next().ok_or_else(|| syntax(text.len(), "missing `init:` section"))?;
    let init_text = section(&init_line, "init:")?;
    let init_at = init_line.offset + init_line.text.find("init:").unwrap() + 5;
    let init = parse_init(init_text, init_at, &ring)?;

    let body_line = it.next().ok_or_else(|| syntax(text.len(), "missing `body:` section"))?;
    let rest = section(&body_line, "body:")?;
    let mut body = Vec::new();
    if !rest.trim().is_empty() {
        let at = body_line.offset + body_line.text.find("body:").unwrap() + 5;
        body.push(parse_assignment(rest, at, &ring)?);
    }
    for line in it {
        body.push(parse_assignment(line.text, line.offset, &ring)?);
    }
    LoopProgram::new(ring, init, body)
}

fn section<'a>(line: &Line<'a>, header: &str) -> Result<&'a str> {
    let t = line.text.trim_start();
    t.strip_prefix(header).ok_or_else(|| syntax(line.offset + leading_ws(line.text), format!("expected `{header}`")))
}

fn parse_vars(text: &str, at: usize) -> Result<VarRing> {
    if text.trim().is_empty() {
        return Ok(VarRing::empty());
    }
    let mut names = Vec::new();
    for (off, piece) in split_top(text, ',') {
        let name = piece.trim();
        if !is_identifier(name) {
            return Err(syntax(at + off + leading_ws(piece), format!("`{name}` is not a variable name")));
        }
        names.push(name);
    }
    VarRing::new(names)
}

fn parse_init(text: &str, at: usize, ring: &VarRing) -> Result<Vec<Rational>> {
    let mut init: Vec<Option<Rational>> = vec![None; ring.len()];
    for (off, piece) in split_top(text, ';') {
        if piece.trim().is_empty() {
            continue;
        }
        let pos = at + off + leading_ws(piece);
        let (lhs, rhs) = piece.split_once('=').ok_or_else(|| syntax(pos, "expected `name = value`"))?;
        let idx = ring.require(lhs.trim())?;
        if init[idx].is_some() {
            return Err(syntax(pos, format!("`{}` initialised twice", lhs.trim())));
        }
        let rhs_at = at + off + lhs.len() + 1;
        init[idx] = Some(parse_rational(rhs).map_err(|e| shift(e, rhs_at))?);
    }
    init.into_iter().enumerate().map(|(i, v)| v.ok_or_else(|| syntax(at, format!("no initial value for `{}`", ring.name(i))))).collect()
}

fn parse_assignment(line: &str, at: usize, ring: &VarRing) -> Result<Assignment> {
    let (lhs, rhs) = line.split_once('=').ok_or_else(|| syntax(at + leading_ws(line), "expected an assignment"))?;
    let rhs_at = at + lhs.len() + 1;
    let lhs_at = at + leading_ws(lhs);
    let targets = match unwrap_parens(lhs) {
        Some(inner) => split_top(inner, ',').into_iter().map(|(_, n)| ring.require(n.trim())).collect::<Result<Vec<_>>>()?,
        None => {
            let name = lhs.trim();
            if !is_identifier(name) {
                return Err(syntax(lhs_at, format!("`{name}` is not an assignable variable")));
            }
            vec![ring.require(name)?]
        }
    };
    let tuple = unwrap_parens(lhs).is_some();

    // Alternate expression / `[p]` pieces.
    let mut exprs: Vec<(usize, &str)> = Vec::new();
    let mut probs: Vec<Rational> = Vec::new();
    let mut rest = rhs;
    let mut rest_at = rhs_at;
    loop {
        match find_bracket(rest) {
            Some(open) => {
                let close = rest[open..].find(']').map(|c| c + open).ok_or_else(|| syntax(rest_at + open, "unclosed `[`"))?;
                exprs.push((rest_at, &rest[..open]));
                let p = parse_rational(&rest[open + 1..close]).map_err(|e| shift(e, rest_at + open + 1))?;
                probs.push(p);
                rest_at += close + 1;
                rest = &rest[close + 1..];
            }
            None => {
                exprs.push((rest_at, rest));
                break;
            }
        }
    }
    let used: Rational = probs.iter().sum();
    let last = Rational::one() - &used;
    if last <= Rational::zero() {
        return Err(Error::ProbabilitySum(format!("explicit probabilities sum to {used}, leaving nothing for the last branch")));
    }
    probs.push(last);

    let mut branches = Vec::new();
    for ((e_at, e), probability) in exprs.into_iter().zip(probs) {
        if e.trim().is_empty() {
            return Err(syntax(e_at, "missing branch expression"));
        }
        let polys = if tuple {
            let inner = unwrap_parens(e).ok_or_else(|| syntax(e_at + leading_ws(e), "tuple assignment needs a parenthesised tuple"))?;
            let inner_at = e_at + e.find('(').unwrap() + 1;
            split_top(inner, ',')
                .into_iter()
                .map(|(o, x)| parse_poly(x, ring).map_err(|err| shift(err, inner_at + o)))
                .collect::<Result<Vec<Polynomial>>>()?
        } else {
            vec![parse_poly(e, ring).map_err(|err| shift(err, e_at))?]
        };
        branches.push(Branch { probability, exprs: polys });
    }
    Assignment::new(ring, targets, branches)
}

/// Position of the next top-level `[` that opens a probability annotation.
fn find_bracket(s: &str) -> Option<usize> {
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '[' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}
