//! Moment lifting: exact linear recurrences over expected values of
//! monomials.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{format_monomial, Monomial, Polynomial, Rational, VarRing};
use crate::error::{Error, Result};
use crate::linalg::{mat_vec, Matrix};
use crate::loops::LoopProgram;

pub const DEFAULT_CLOSURE_BUDGET: usize = 5_000;

/// `q` with `E[p(next state) | state = s] = q(s)` for one loop iteration.
pub fn lift_polynomial_expectation(program: &LoopProgram, p: &Polynomial) -> Result<Polynomial> {
    let ring = program.vars();
    if p.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let mut q = p.clone();
    for a in program.body().iter().rev() {
        let mut acc = Polynomial::zero(ring);
        for b in a.branches() {
            let subs: Vec<(usize, Polynomial)> = a.targets().iter().copied().zip(b.exprs.iter().cloned()).collect();
            acc = acc + q.substitute(&subs)?.scale(&b.probability);
        }
        q = acc;
    }
    Ok(q)
}

/// `v(n+1) = transition · v(n)` where `v(n)_j = E[symbols[j]]` after `n`
/// iterations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSystem {
    ring: VarRing,
    symbols: Vec<Monomial>,
    transition: Matrix,
    initial: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentSystemJson {
    pub variables: Vec<String>,
    pub symbols: Vec<String>,
    pub transition: Vec<Vec<String>>,
    pub initial: Vec<String>,
}

impl MomentSystem {
    pub fn ring(&self) -> &VarRing {
        &self.ring
    }

    pub fn symbols(&self) -> &[Monomial] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn transition(&self) -> &Matrix {
        &self.transition
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.symbols.iter().position(|s| s == m)
    }

    /// `x^2*y`, or `1` for the constant moment.
    pub fn symbol_string(&self, idx: usize) -> String {
        format_monomial(&self.ring, &self.symbols[idx])
    }

    /// Moment variable name, e.g. `E[x^2*y]`.
    pub fn symbol_name(&self, idx: usize) -> String {
        format!("E[{}]", self.symbol_string(idx))
    }

    /// `v(0), …, v(count - 1)`.
    pub fn values(&self, count: usize) -> Vec<Vec<Rational>> {
        let mut out: Vec<Vec<Rational>> = Vec::with_capacity(count);
        if count == 0 {
            return out;
        }
        out.push(self.initial.clone());
        while out.len() < count {
            let next = mat_vec(&self.transition, out.last().unwrap());
            out.push(next);
        }
        out
    }

    /// First `count` terms of one symbol's sequence.
    pub fn sequence(&self, idx: usize, count: usize) -> Vec<Rational> {
        self.values(count).into_iter().map(|v| v[idx].clone()).collect()
    }

    pub fn to_json(&self) -> MomentSystemJson {
        let strs = |row: &[Rational]| row.iter().map(ToString::to_string).collect();
        MomentSystemJson {
            variables: self.ring.names().to_vec(),
            symbols: (0..self.len()).map(|i| self.symbol_string(i)).collect(),
            transition: self.transition.iter().map(|r| strs(r)).collect(),
            initial: strs(&self.initial),
        }
    }
}

/// Smallest monomial set containing `targets` and `1` closed under lifting.
///
/// Symbols are ordered by degree, then by decreasing graded order, so `1`
/// is always first.
pub fn moment_closure(program: &LoopProgram, targets: &[Monomial], budget: usize) -> Result<MomentSystem> {
    let ring = program.vars();
    let n = ring.len();
    if targets.is_empty() {
        return Err(Error::Invalid("moment closure needs at least one target".into()));
    }
    if let Some(t) = targets.iter().find(|t| t.arity() != n) {
        return Err(Error::ArityMismatch { expected: n, got: t.arity() });
    }

    let mut lifted: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    let mut queue: VecDeque<Monomial> = VecDeque::new();
    let mut seen: std::collections::BTreeSet<Monomial> = std::collections::BTreeSet::new();
    for m in std::iter::once(Monomial::one(n)).chain(targets.iter().cloned()) {
        if seen.insert(m.clone()) {
            queue.push_back(m);
        }
    }
    if seen.len() > budget {
        return Err(Error::ClosureBudgetExceeded(budget));
    }
    while let Some(m) = queue.pop_front() {
        let q = lift_polynomial_expectation(program, &Polynomial::term(ring, m.clone(), Rational::one()))?;
        for (mono, _) in q.terms() {
            if seen.insert(mono.clone()) {
                if seen.len() > budget {
                    return Err(Error::ClosureBudgetExceeded(budget));
                }
                queue.push_back(mono.clone());
            }
        }
        lifted.insert(m, q);
    }

    let mut symbols: Vec<Monomial> = seen.into_iter().collect();
    symbols.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.cmp(a)));
    let index: BTreeMap<&Monomial, usize> = symbols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let transition: Matrix = symbols
        .iter()
        .map(|m| {
            let mut row = vec![Rational::zero(); symbols.len()];
            for (mono, c) in lifted[m].terms() {
                row[index[mono]] = c.clone();
            }
            row
        })
        .collect();
    let init = program.init();
    let initial = symbols.iter().map(|m| Polynomial::term(ring, m.clone(), Rational::one()).eval(init)).collect::<Result<Vec<_>>>()?;
    Ok(MomentSystem { ring: ring.clone(), symbols, transition, initial })
}
