//! Single-location polynomial loops: representation, the loop DSL, exact
//! simulation and distribution enumeration, and linear recurrence sequences.

mod lrs;
mod parse;
mod sim;

pub use lrs::{LrsInstance, LrsJson};
pub use parse::parse_loop;
pub use sim::{enumerate_distribution, enumerate_distribution_capped, expected_moment, expected_value, simulate, Distribution, DEFAULT_SUPPORT_CAP};

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Polynomial, Rational, VarRing};
use crate::error::{Error, Result};

/// Values of all program variables, in ring order.
pub type State = Vec<Rational>;

/// One probabilistic alternative of an assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub probability: Rational,
    pub exprs: Vec<Polynomial>,
}

/// `(t₁, …, tₖ) = (e₁, …, eₖ) [p] (e₁', …, eₖ') …`
///
/// Targets update simultaneously; one branch is chosen per execution,
/// independently of every other assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    targets: Vec<usize>,
    branches: Vec<Branch>,
}

impl Assignment {
    pub fn new(ring: &VarRing, targets: Vec<usize>, branches: Vec<Branch>) -> Result<Self> {
        if targets.is_empty() || branches.is_empty() {
            return Err(Error::Invalid("assignment needs targets and at least one branch".into()));
        }
        for (i, t) in targets.iter().enumerate() {
            if *t >= ring.len() {
                return Err(Error::UnknownVariable(format!("#{t}")));
            }
            if targets[..i].contains(t) {
                return Err(Error::Invalid(format!("variable `{}` assigned twice in one tuple", ring.name(*t))));
            }
        }
        let mut total = Rational::zero();
        for b in &branches {
            if b.exprs.len() != targets.len() {
                return Err(Error::ArityMismatch { expected: targets.len(), got: b.exprs.len() });
            }
            if b.exprs.iter().any(|e| e.ring() != ring) {
                return Err(Error::RingMismatch);
            }
            if b.probability <= Rational::zero() || b.probability > Rational::one() {
                return Err(Error::ProbabilitySum(format!("probability {} outside (0, 1]", b.probability)));
            }
            total += &b.probability;
        }
        if !total.is_one() {
            return Err(Error::ProbabilitySum(format!("branch probabilities sum to {total}")));
        }
        Ok(Assignment { targets, branches })
    }

    pub fn deterministic(ring: &VarRing, targets: Vec<usize>, exprs: Vec<Polynomial>) -> Result<Self> {
        Self::new(ring, targets, vec![Branch { probability: Rational::one(), exprs }])
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn is_deterministic(&self) -> bool {
        self.branches.len() == 1
    }

    /// State after running `branch` on `state`.
    pub fn apply(&self, state: &[Rational], branch: &Branch) -> State {
        let values: Vec<Rational> = branch.exprs.iter().map(|e| e.eval(state).expect("arity checked")).collect();
        let mut next = state.to_vec();
        for (t, v) in self.targets.iter().zip(values) {
            next[*t] = v;
        }
        next
    }
}

/// An unguarded `while ⋆` loop over rational-valued variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopProgram {
    vars: VarRing,
    init: State,
    body: Vec<Assignment>,
}

impl LoopProgram {
    pub fn new(vars: VarRing, init: State, body: Vec<Assignment>) -> Result<Self> {
        if init.len() != vars.len() {
            return Err(Error::ArityMismatch { expected: vars.len(), got: init.len() });
        }
        for a in &body {
            if a.branches.iter().flat_map(|b| &b.exprs).any(|e| *e.ring() != vars) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(LoopProgram { vars, init, body })
    }

    pub fn vars(&self) -> &VarRing {
        &self.vars
    }

    pub fn init(&self) -> &[Rational] {
        &self.init
    }

    pub fn body(&self) -> &[Assignment] {
        &self.body
    }

    pub fn is_deterministic(&self) -> bool {
        self.body.iter().all(Assignment::is_deterministic)
    }

    /// One deterministic iteration; fails on probabilistic loops.
    pub fn step(&self, state: &[Rational]) -> Result<State> {
        let mut s = state.to_vec();
        for a in &self.body {
            if !a.is_deterministic() {
                return Err(Error::NotDeterministic);
            }
            s = a.apply(&s, &a.branches[0]);
        }
        Ok(s)
    }
}

impl fmt::Display for LoopProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.vars.names().join(", "))?;
        let init: Vec<String> = self.vars.names().iter().zip(&self.init).map(|(n, v)| format!("{n} = {v}")).collect();
        writeln!(f, "init: {}", init.join("; "))?;
        writeln!(f, "body:")?;
        for a in &self.body {
            let tuple = a.targets.len() > 1;
            let lhs: Vec<&str> = a.targets.iter().map(|&t| self.vars.name(t)).collect();
            let lhs = if tuple { format!("({})", lhs.join(", ")) } else { lhs[0].to_string() };
            let mut rhs = String::new();
            let last = a.branches.len() - 1;
            for (i, b) in a.branches.iter().enumerate() {
                let exprs: Vec<String> = b.exprs.iter().map(ToString::to_string).collect();
                if tuple {
                    rhs.push_str(&format!("({})", exprs.join(", ")));
                } else {
                    rhs.push_str(&exprs[0]);
                }
                if i < last {
                    rhs.push_str(&format!(" [{}] ", b.probability));
                }
            }
            writeln!(f, "  {lhs} = {rhs}")?;
        }
        Ok(())
    }
}
