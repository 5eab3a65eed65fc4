//! Fraction-free polynomials for the Buchberger engine.
//!
//! Coefficients are integers with content 1 and a positive leading
//! coefficient; reductions scale instead of dividing, which avoids a gcd per
//! coefficient operation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Monomial, MonomialOrder, OrderKey, Polynomial, Rational, VarRing};

/// Remove the content every this many reduction steps.
const CONTENT_EVERY: usize = 8;

#[derive(Clone, Debug)]
pub(crate) struct IntPoly {
    /// Descending in the engine's order.
    terms: Vec<(OrderKey, Monomial, BigInt)>,
}

impl IntPoly {
    pub fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let denom = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (order.key(m), m.clone(), c.numer() * (&denom / c.denom()))).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out = IntPoly { terms };
        out.normalize();
        out
    }

    pub fn to_monic(&self, ring: &VarRing) -> Polynomial {
        let lc = Rational::from_integer(self.terms[0].2.clone());
        Polynomial::from_terms(ring, self.terms.iter().map(|(_, m, c)| (m.clone(), Rational::from_integer(c.clone()) / &lc)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].1
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].2
    }

    /// Divides out the content and makes the leading coefficient positive.
    fn normalize(&mut self) {
        let g = content(self.terms.iter().map(|t| &t.2));
        let neg = self.terms.first().is_some_and(|t| t.2.is_negative());
        let g = if neg { -g } else { g };
        if !g.is_one() && !g.is_zero() {
            for t in &mut self.terms {
                t.2 = &t.2 / &g;
            }
        }
    }

    /// `a·xᵃ·self − b·xᵇ·other`, the fraction-free S-polynomial.
    pub fn spoly(&self, other: &IntPoly, order: &MonomialOrder) -> IntPoly {
        let lcm = self.lm().lcm(other.lm());
        let g = self.lc().gcd(other.lc());
        let a = other.lc() / &g;
        let b = self.lc() / &g;
        let qa = self.lm().quotient_of(&lcm);
        let qb = other.lm().quotient_of(&lcm);
        let mut work: BTreeMap<OrderKey, (Monomial, BigInt)> = BTreeMap::new();
        for (_, m, c) in &self.terms[1..] {
            accumulate(&mut work, order, m.mul(&qa), c * &a);
        }
        for (_, m, c) in &other.terms[1..] {
            accumulate(&mut work, order, m.mul(&qb), -(c * &b));
        }
        let mut out = IntPoly { terms: work.into_iter().rev().map(|(k, (m, c))| (k, m, c)).collect() };
        out.normalize();
        out
    }

    /// Full reduction modulo `divisors`, up to a nonzero integer factor.
    pub fn reduce(&self, divisors: &[&IntPoly], order: &MonomialOrder) -> IntPoly {
        let mut work: BTreeMap<OrderKey, (Monomial, BigInt)> = self.terms.iter().map(|(k, m, c)| (k.clone(), (m.clone(), c.clone()))).collect();
        let mut rem: Vec<(OrderKey, Monomial, BigInt)> = Vec::new();
        let mut steps = 0usize;
        while let Some((key, (m, c))) = work.pop_last() {
            let Some(d) = divisors.iter().find(|d| d.lm().divides(&m)) else {
                rem.push((key, m, c));
                continue;
            };
            let g = c.gcd(d.lc());
            let a = d.lc() / &g;
            let b = &c / &g;
            if !a.is_one() {
                for t in work.values_mut() {
                    t.1 *= &a;
                }
                for t in &mut rem {
                    t.2 *= &a;
                }
            }
            let q = d.lm().quotient_of(&m);
            for (_, dm, dc) in &d.terms[1..] {
                accumulate(&mut work, order, dm.mul(&q), -(dc * &b));
            }
            steps += 1;
            if steps.is_multiple_of(CONTENT_EVERY) {
                let g = content(work.values().map(|t| &t.1).chain(rem.iter().map(|t| &t.2)));
                if !g.is_one() && !g.is_zero() {
                    for t in work.values_mut() {
                        t.1 = &t.1 / &g;
                    }
                    for t in &mut rem {
                        t.2 = &t.2 / &g;
                    }
                }
            }
        }
        let mut out = IntPoly { terms: rem };
        out.normalize();
        out
    }
}

fn accumulate(work: &mut BTreeMap<OrderKey, (Monomial, BigInt)>, order: &MonomialOrder, m: Monomial, c: BigInt) {
    let key = order.key(&m);
    match work.get_mut(&key) {
        Some(slot) => {
            slot.1 += c;
            if slot.1.is_zero() {
                work.remove(&key);
            }
        }
        None => {
            work.insert(key, (m, c));
        }
    }
}

fn content<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for c in coeffs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}
