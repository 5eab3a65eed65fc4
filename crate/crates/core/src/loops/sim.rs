use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{LoopProgram, State};
use crate::algebra::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_SUPPORT_CAP: usize = 200_000;

/// A finitely supported probability distribution over states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    mass: BTreeMap<State, Rational>,
}

impl Distribution {
    pub fn point(state: State) -> Self {
        Distribution { mass: BTreeMap::from([(state, Rational::one())]) }
    }

    pub fn probability(&self, state: &[Rational]) -> Rational {
        self.mass.get(state).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support_size(&self) -> usize {
        self.mass.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&State, &Rational)> {
        self.mass.iter()
    }

    pub fn total(&self) -> Rational {
        self.mass.values().sum()
    }

    /// `Σ p(state)·ℙ(state)`.
    pub fn expect(&self, p: &Polynomial) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (s, pr) in &self.mass {
            acc += p.eval(s)? * pr;
        }
        Ok(acc)
    }
}

/// States after `0..=n` iterations of a deterministic loop.
pub fn simulate(program: &LoopProgram, n: usize) -> Result<Vec<State>> {
    if !program.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(program.init().to_vec());
    for _ in 0..n {
        let next = program.step(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

pub fn enumerate_distribution(program: &LoopProgram, n: usize) -> Result<Distribution> {
    enumerate_distribution_capped(program, n, DEFAULT_SUPPORT_CAP)
}

/// Exact distribution of the state after `n` iterations.
pub fn enumerate_distribution_capped(program: &LoopProgram, n: usize, cap: usize) -> Result<Distribution> {
    let mut dist = Distribution::point(program.init().to_vec());
    for _ in 0..n {
        for a in program.body() {
            if a.is_deterministic() {
                let b = &a.branches()[0];
                let mut next = BTreeMap::new();
                for (s, p) in dist.mass {
                    *next.entry(a.apply(&s, b)).or_insert_with(Rational::zero) += p;
                }
                dist.mass = next;
                continue;
            }
            let mut next: BTreeMap<State, Rational> = BTreeMap::new();
            for (s, p) in &dist.mass {
                for b in a.branches() {
                    *next.entry(a.apply(s, b)).or_insert_with(Rational::zero) += p * &b.probability;
                }
                if next.len() > cap {
                    return Err(Error::SupportBudgetExceeded(cap));
                }
            }
            dist.mass = next;
        }
    }
    Ok(dist)
}

/// `E[m]` after `n` iterations, by enumeration.
pub fn expected_moment(program: &LoopProgram, m: &Monomial, n: usize) -> Result<Rational> {
    let ring = program.vars();
    if m.arity() != ring.len() {
        return Err(Error::ArityMismatch { expected: ring.len(), got: m.arity() });
    }
    expected_value(program, &Polynomial::term(ring, m.clone(), Rational::one()), n)
}

/// `E[p]` after `n` iterations, by enumeration.
pub fn expected_value(program: &LoopProgram, p: &Polynomial, n: usize) -> Result<Rational> {
    if p.ring() != program.vars() {
        return Err(Error::RingMismatch);
    }
    enumerate_distribution(program, n)?.expect(p)
}
