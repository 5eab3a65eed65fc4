use std::fmt;

use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use super::{minimal_recurrence, UniPoly};
use crate::algebra::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::moments::MomentSystem;

/// `f(n) = transient[n]` for `n < T`, otherwise `Σ pᵢ(n)·λᵢⁿ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpPoly {
    transient: Vec<Rational>,
    tail: Vec<(Rational, UniPoly)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpPolyTermJson {
    pub base: String,
    /// Coefficients of the polynomial in `n`, constant first.
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpPolyJson {
    pub transient: Vec<String>,
    pub terms: Vec<ExpPolyTermJson>,
}

impl ExpPoly {
    pub fn new(transient: Vec<Rational>, tail: Vec<(Rational, UniPoly)>) -> Result<Self> {
        for (i, (b, p)) in tail.iter().enumerate() {
            if b.is_zero() {
                return Err(Error::Invalid("exponential base 0 belongs in the transient".into()));
            }
            if p.is_zero() {
                return Err(Error::Invalid(format!("zero coefficient polynomial for base {b}")));
            }
            if tail[..i].iter().any(|(c, _)| c == b) {
                return Err(Error::Invalid(format!("repeated base {b}")));
            }
        }
        Ok(ExpPoly { transient, tail })
    }

    pub fn transient(&self) -> &[Rational] {
        &self.transient
    }

    pub fn tail(&self) -> &[(Rational, UniPoly)] {
        &self.tail
    }

    pub fn eval(&self, n: usize) -> Rational {
        if let Some(v) = self.transient.get(n) {
            return v.clone();
        }
        let nr = Rational::from_integer(n.into());
        self.tail.iter().fold(Rational::zero(), |acc, (b, p)| acc + p.eval(&nr) * Pow::pow(b, n))
    }

    pub fn to_json(&self) -> ExpPolyJson {
        ExpPolyJson {
            transient: self.transient.iter().map(ToString::to_string).collect(),
            terms: self
                .tail
                .iter()
                .map(|(b, p)| ExpPolyTermJson { base: b.to_string(), coeffs: p.coeffs().iter().map(ToString::to_string).collect() })
                .collect(),
        }
    }

    pub fn from_json(j: &ExpPolyJson) -> Result<Self> {
        let transient = j.transient.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let tail = j
            .terms
            .iter()
            .map(|t| {
                let coeffs = t.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                Ok((parse_rational(&t.base)?, UniPoly::new(coeffs)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(transient, tail)
    }

    /// Parses the text form produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let syntax = |msg: &str| Error::Syntax { pos: 0, msg: msg.to_string() };
        let mut rest = text.trim();
        let mut transient = Vec::new();
        if let Some(r) = rest.strip_prefix("transient=[") {
            let close = r.find(']').ok_or_else(|| syntax("unclosed transient list"))?;
            for v in r[..close].split(',').filter(|s| !s.trim().is_empty()) {
                transient.push(parse_rational(v)?);
            }
            rest = r[close + 1..].trim_start().strip_prefix(';').ok_or_else(|| syntax("expected `;` after transient"))?.trim();
        }
        let mut tail = Vec::new();
        if rest != "0" {
            for piece in split_plus(rest) {
                let piece = piece.trim();
                let body = piece.strip_suffix("^n").ok_or_else(|| syntax("term must end in `^n`"))?;
                let close = matching_paren(body).ok_or_else(|| syntax("term must start with a parenthesised polynomial"))?;
                let poly = UniPoly::parse(&body[1..close], "n")?;
                let base = body[close + 1..].strip_prefix('*').ok_or_else(|| syntax("expected `*` before base"))?;
                tail.push((parse_rational(base)?, poly));
            }
        }
        Self::new(transient, tail)
    }
}

fn split_plus(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn matching_paren(s: &str) -> Option<usize> {
    if !s.starts_with('(') {
        return None;
    }
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.transient.is_empty() {
            let t: Vec<String> = self.transient.iter().map(ToString::to_string).collect();
            write!(f, "transient=[{}]; ", t.join(", "))?;
        }
        if self.tail.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .tail
            .iter()
            .map(|(b, p)| {
                let base = if b.is_integer() && *b >= Rational::zero() { b.to_string() } else { format!("({b})") };
                format!("({})*{base}^n", p.format_in("n"))
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Closed form of a sequence known to satisfy a recurrence of order at most
/// `max_order`; needs `2·max_order + 2` terms or more.
pub fn closed_form_from_terms(terms: &[Rational], max_order: usize) -> Result<ExpPoly> {
    let ann = minimal_recurrence(terms, max_order)?;
    let (roots, cofactor) = ann.rational_roots();
    if cofactor.degree().unwrap_or(0) > 0 {
        return Err(Error::IrrationalEigenvalue(cofactor.monic().to_string()));
    }
    let t = roots.iter().find(|(r, _)| r.is_zero()).map_or(0, |(_, m)| *m);
    let bases: Vec<(Rational, usize)> = roots.into_iter().filter(|(r, _)| !r.is_zero()).collect();

    // Unknowns c_{b,j} for n^j·bⁿ, fitted on every term from index t on.
    let unknowns: Vec<(usize, usize)> = bases.iter().enumerate().flat_map(|(bi, (_, m))| (0..*m).map(move |j| (bi, j))).collect();
    let tail = if unknowns.is_empty() {
        if terms[t..].iter().any(|v| !v.is_zero()) {
            return Err(Error::NoRecurrenceFound(max_order));
        }
        Vec::new()
    } else {
        let rows: Vec<Vec<Rational>> = (t..terms.len())
            .map(|n| {
                let nr = Rational::from_integer(n.into());
                unknowns.iter().map(|&(bi, j)| Pow::pow(&nr, j) * Pow::pow(&bases[bi].0, n)).collect()
            })
            .collect();
        let sol = crate::linalg::solve(&rows, &terms[t..]).ok_or(Error::NoRecurrenceFound(max_order))?;
        let mut tail = Vec::new();
        for (bi, (b, m)) in bases.iter().enumerate() {
            let coeffs: Vec<Rational> = unknowns.iter().zip(&sol).filter(|((i, _), _)| *i == bi).map(|(_, c)| c.clone()).collect();
            debug_assert_eq!(coeffs.len(), *m);
            let p = UniPoly::new(coeffs);
            if !p.is_zero() {
                tail.push((b.clone(), p));
            }
        }
        tail
    };
    let f = ExpPoly::new(terms[..t].to_vec(), tail)?;
    if (0..terms.len()).any(|n| f.eval(n) != terms[n]) {
        return Err(Error::NoRecurrenceFound(max_order));
    }
    Ok(f)
}

/// Closed form for the `idx`-th symbol of a moment system.
pub fn solve_closed_form(system: &MomentSystem, idx: usize) -> Result<ExpPoly> {
    if idx >= system.len() {
        return Err(Error::Invalid(format!("symbol index {idx} out of range")));
    }
    let order = system.len();
    let terms = system.sequence(idx, 2 * order + 4);
    closed_form_from_terms(&terms, order)
}

/// Closed forms for every symbol, sharing one run of the matrix powers.
pub fn solve_all_closed_forms(system: &MomentSystem) -> Result<Vec<ExpPoly>> {
    let order = system.len();
    let values = system.values(2 * order + 4);
    (0..order)
        .map(|i| {
            let terms: Vec<Rational> = values.iter().map(|v| v[i].clone()).collect();
            closed_form_from_terms(&terms, order)
        })
        .collect()
}

pub fn expoly_eval(f: &ExpPoly, n: usize) -> Rational {
    f.eval(n)
}
