use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, Rational};
use crate::error::{Error, Result};

/// `u(n+k) = a_{k-1}·u(n+k-1) + … + a_0·u(n)` with given `u(0..k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrsInstance {
    /// `a_0 … a_{k-1}`.
    coeffs: Vec<Rational>,
    init: Vec<Rational>,
}

/// File form: `{"coeffs": [...], "init": [...]}` with rationals as strings.
///
/// `coeffs` is listed as the recurrence is written, highest shift first:
/// `["2","-2","-12"]` is `u(n+3) = 2u(n+2) - 2u(n+1) - 12u(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrsJson {
    pub coeffs: Vec<String>,
    pub init: Vec<String>,
}

impl LrsInstance {
    /// `coeffs` are `a_0 … a_{k-1}` (lowest shift first).
    pub fn new(coeffs: Vec<Rational>, init: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("recurrence order must be at least 1".into()));
        }
        if coeffs[0].is_zero() {
            return Err(Error::Invalid("a_0 must be nonzero".into()));
        }
        if init.len() != coeffs.len() {
            return Err(Error::ArityMismatch { expected: coeffs.len(), got: init.len() });
        }
        Ok(LrsInstance { coeffs, init })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn init(&self) -> &[Rational] {
        &self.init
    }

    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().chain(&self.init).all(|q| q.is_integer())
    }

    /// `u(0), …, u(count - 1)`.
    pub fn terms(&self, count: usize) -> Vec<Rational> {
        let k = self.order();
        let mut u: Vec<Rational> = self.init.iter().take(count).cloned().collect();
        while u.len() < count {
            let n = u.len() - k;
            let next = self.coeffs.iter().enumerate().fold(Rational::zero(), |acc, (i, a)| acc + a * &u[n + i]);
            u.push(next);
        }
        u
    }

    pub fn eval(&self, n: usize) -> Rational {
        self.terms(n + 1).pop().unwrap()
    }

    pub fn from_json(json: &LrsJson) -> Result<Self> {
        let mut coeffs = json.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        coeffs.reverse();
        let init = json.init.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Self::new(coeffs, init)
    }

    pub fn to_json(&self) -> LrsJson {
        LrsJson { coeffs: self.coeffs.iter().rev().map(ToString::to_string).collect(), init: self.init.iter().map(ToString::to_string).collect() }
    }
}
