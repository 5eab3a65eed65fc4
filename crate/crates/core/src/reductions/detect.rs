use num_traits::{One, Zero};

use crate::algebra::{OrderKind, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::groebner::IdealBasis;

/// Least `N` such that the reduced basis contains `f·g·(g−1)⋯(g−N+1)`.
///
/// The basis must use lex with `g` lowest and `f` next. A hit certifies
/// that `f` vanishes from iteration `N` on.
pub fn detect_eventual_zero(basis: &IdealBasis) -> Result<Option<usize>> {
    let ring = basis.ring();
    let f = ring.require("f")?;
    let g = ring.require("g")?;
    let order = basis.order();
    let pri = order.priority();
    if order.kind() != OrderKind::Lex || order.is_block() || pri.len() < 2 || pri[pri.len() - 1] != g || pri[pri.len() - 2] != f {
        return Err(Error::OrderMismatch(format!("need lex with g < f < others, got {} {}", order.kind().as_str(), order.chain(ring))));
    }
    let gb = basis.to_reduced()?;
    let mut best: Option<usize> = None;
    for p in gb.generators() {
        if let Some(n) = falling_factorial_degree(p, f, g) {
            best = Some(best.map_or(n, |b| b.min(n)));
        }
    }
    Ok(best)
}

/// `Some(N)` when `p` is a nonzero multiple of `f·g·(g−1)⋯(g−N+1)`.
fn falling_factorial_degree(p: &Polynomial, f: usize, g: usize) -> Option<usize> {
    let n = p.ring().len();
    let mut q1: Vec<Rational> = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exps();
        if e[f] != 1 || (0..n).any(|v| v != f && v != g && e[v] != 0) {
            return None;
        }
        let d = e[g] as usize;
        if q1.len() <= d {
            q1.resize(d + 1, Rational::zero());
        }
        q1[d] = c.clone();
    }
    let lead = q1.last()?.clone();
    let deg = q1.len() - 1;
    // g(g−1)⋯(g−deg+1), lowest coefficient first
    let mut ff = vec![Rational::one()];
    for j in 0..deg {
        let mut next = vec![Rational::zero(); ff.len() + 1];
        for (i, c) in ff.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * Rational::from_integer(j.into());
        }
        ff = next;
    }
    let scaled: Vec<Rational> = ff.iter().map(|c| c * &lead).collect();
    (scaled == q1).then_some(deg)
}
