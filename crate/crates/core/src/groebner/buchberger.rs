use std::collections::{BTreeSet, HashSet};

use log::debug;

use super::intpoly::IntPoly;
use super::IdealBasis;
use crate::algebra::{Monomial, MonomialOrder, OrderKey, Polynomial, VarRing};
use crate::error::{Error, Result};

/// Default cap on S-pair reductions per basis computation.
pub const DEFAULT_BUDGET: usize = 100_000;

struct Engine<'a> {
    order: &'a MonomialOrder,
    polys: Vec<IntPoly>,
    /// Pending pairs keyed by (lcm, later index, earlier index) so the
    /// smallest lcm is processed first.
    queue: BTreeSet<(OrderKey, usize, usize)>,
    pending: HashSet<(usize, usize)>,
    reductions: usize,
    budget: usize,
}

impl<'a> Engine<'a> {
    fn normal_form(&self, p: &IntPoly) -> IntPoly {
        let divisors: Vec<&IntPoly> = self.polys.iter().collect();
        p.reduce(&divisors, self.order)
    }

    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].lm()
    }

    fn insert(&mut self, p: IntPoly) {
        let new = self.polys.len();
        for (i, q) in self.polys.iter().enumerate() {
            let lcm = q.lm().lcm(p.lm());
            self.queue.insert((self.order.key(&lcm), new, i));
            self.pending.insert((i, new));
        }
        self.polys.push(p);
    }

    fn pending(&self, a: usize, b: usize) -> bool {
        self.pending.contains(&(a.min(b), a.max(b)))
    }

    /// Buchberger's chain criterion.
    fn chain_skips(&self, i: usize, j: usize, lcm: &Monomial) -> bool {
        (0..self.polys.len()).any(|k| k != i && k != j && self.lm(k).divides(lcm) && !self.pending(i, k) && !self.pending(j, k))
    }

    fn run(&mut self) -> Result<()> {
        while let Some((_, j, i)) = self.queue.pop_first() {
            self.pending.remove(&(i, j));
            if self.lm(i).coprime(self.lm(j)) {
                continue;
            }
            let lcm = self.lm(i).lcm(self.lm(j));
            if self.chain_skips(i, j, &lcm) {
                continue;
            }
            self.reductions += 1;
            if self.reductions > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let r = self.normal_form(&self.polys[i].spoly(&self.polys[j], self.order));
            if !r.is_zero() {
                if r.is_constant() {
                    self.polys.clear();
                    self.queue.clear();
                    self.insert(r);
                    return Ok(());
                }
                self.insert(r);
            }
        }
        Ok(())
    }

    fn into_reduced(self, ring: &VarRing) -> Vec<Polynomial> {
        let order = self.order;
        let mut idx: Vec<usize> = (0..self.polys.len()).collect();
        idx.sort_by(|&a, &b| order.cmp(self.lm(a), self.lm(b)));
        let mut keep: Vec<usize> = Vec::new();
        for i in idx {
            if !keep.iter().any(|&k| self.lm(k).divides(self.lm(i))) {
                keep.push(i);
            }
        }
        let mut out: Vec<Polynomial> = keep
            .iter()
            .map(|&i| {
                let others: Vec<&IntPoly> = keep.iter().filter(|&&k| k != i).map(|&k| &self.polys[k]).collect();
                self.polys[i].reduce(&others, order).to_monic(ring)
            })
            .collect();
        out.sort_by(|a, b| {
            let la = a.leading_term(order).unwrap().0;
            let lb = b.leading_term(order).unwrap().0;
            order.cmp(lb, la)
        });
        out
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
pub fn buchberger(ring: &VarRing, gens: &[Polynomial], order: &MonomialOrder) -> Result<IdealBasis> {
    buchberger_with_budget(ring, gens, order, DEFAULT_BUDGET)
}

pub fn buchberger_with_budget(ring: &VarRing, gens: &[Polynomial], order: &MonomialOrder, budget: usize) -> Result<IdealBasis> {
    if order.arity() != ring.len() {
        return Err(Error::ArityMismatch { expected: ring.len(), got: order.arity() });
    }
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    let mut engine = Engine { order, polys: Vec::new(), queue: BTreeSet::new(), pending: HashSet::new(), reductions: 0, budget };
    let mut inputs: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    inputs.sort_by(|a, b| {
        let la = a.leading_term(order).unwrap().0;
        let lb = b.leading_term(order).unwrap().0;
        order.cmp(la, lb)
    });
    for g in inputs {
        let r = engine.normal_form(&IntPoly::from_poly(g, order));
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(IdealBasis::from_reduced(ring, order, vec![Polynomial::one(ring)]));
        }
        engine.insert(r);
    }
    engine.run()?;
    debug!("buchberger: {} reductions, {} polys before interreduction", engine.reductions, engine.polys.len());
    let gens = engine.into_reduced(ring);
    Ok(IdealBasis::from_reduced(ring, order, gens))
}
