use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Monomial, MonomialOrder, OrderKey, Polynomial, Rational};
use crate::error::{Error, Result};

/// A divisor with its leading data cached for a fixed order.
pub(crate) struct Divisor<'a> {
    pub poly: &'a Polynomial,
    pub lm: Monomial,
    pub lc: Rational,
}

impl<'a> Divisor<'a> {
    pub fn new(poly: &'a Polynomial, order: &MonomialOrder) -> Option<Self> {
        let (lm, lc) = poly.leading_term(order)?;
        Some(Divisor { poly, lm: lm.clone(), lc: lc.clone() })
    }
}

/// Term-by-term division of `p` by `divisors`. Each step cancels the current
/// leading term with the first divisor whose leading monomial divides it, or
/// moves it to the remainder.
pub(crate) fn reduce(p: &Polynomial, divisors: &[Divisor<'_>], order: &MonomialOrder, mut quotients: Option<&mut Vec<Polynomial>>) -> Polynomial {
    let ring = p.ring().clone();
    let mut work: BTreeMap<OrderKey, (Monomial, Rational)> = p.terms().map(|(m, c)| (order.key(m), (m.clone(), c.clone()))).collect();
    let mut rem = Polynomial::zero(&ring);
    while let Some((_, (m, c))) = work.pop_last() {
        match divisors.iter().enumerate().find(|(_, d)| d.lm.divides(&m)) {
            Some((i, d)) => {
                let q = d.lm.quotient_of(&m);
                let factor = &c / &d.lc;
                for (dm, dc) in d.poly.terms() {
                    if *dm == d.lm {
                        continue;
                    }
                    let mono = dm.mul(&q);
                    let delta = -(&factor * dc);
                    let key = order.key(&mono);
                    match work.get_mut(&key) {
                        Some(slot) => {
                            slot.1 += delta;
                            if slot.1.is_zero() {
                                work.remove(&key);
                            }
                        }
                        None => {
                            work.insert(key, (mono, delta));
                        }
                    }
                }
                if let Some(qs) = quotients.as_deref_mut() {
                    qs[i].add_term(q, factor);
                }
            }
            None => rem.add_term(m, c),
        }
    }
    rem
}

/// Multivariate division: returns `(quotients, remainder)` with
/// `p = Σ qᵢ·dᵢ + r` and no term of `r` divisible by a leading term of the
/// divisors.
pub fn multivariate_divide(p: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Result<(Vec<Polynomial>, Polynomial)> {
    if order.arity() != p.ring().len() {
        return Err(Error::ArityMismatch { expected: p.ring().len(), got: order.arity() });
    }
    let mut ds = Vec::with_capacity(divisors.len());
    for d in divisors {
        if d.ring() != p.ring() {
            return Err(Error::RingMismatch);
        }
        ds.push(Divisor::new(d, order).ok_or_else(|| Error::Invalid("division by the zero polynomial".into()))?);
    }
    let mut qs = vec![Polynomial::zero(p.ring()); divisors.len()];
    let r = reduce(p, &ds, order, Some(&mut qs));
    Ok((qs, r))
}
