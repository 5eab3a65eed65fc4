use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{parse_poly, Monomial, Polynomial, Rational, VarRing};
use crate::error::{Error, Result};
use crate::intmat::divisors;

/// Dense univariate polynomial, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `λ - r`.
    pub fn linear(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().unwrap().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Primitive integer multiple with positive leading coefficient.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Rational roots with multiplicity and the remaining cofactor:
    /// `self = cofactor · Π (λ - r)^m`.
    pub fn rational_roots(&self) -> (Vec<(Rational, usize)>, UniPoly) {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        let mut rest = self.clone();
        let mut roots = Vec::new();
        let zeros = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            rest = Self::new(rest.coeffs[zeros..].to_vec());
            roots.push((Rational::zero(), zeros));
        }
        if rest.degree().unwrap_or(0) > 0 {
            let ints = rest.primitive_integer();
            let nums = divisors(&ints[0].abs());
            let dens = divisors(&ints.last().unwrap().abs());
            let mut candidates: Vec<Rational> = Vec::new();
            for p in &nums {
                for q in &dens {
                    let r = Rational::new(p.clone(), q.clone());
                    for c in [r.clone(), -r] {
                        if !candidates.contains(&c) {
                            candidates.push(c);
                        }
                    }
                }
            }
            candidates.sort();
            for r in candidates {
                let lin = Self::linear(&r);
                let mut mult = 0;
                while rest.degree().unwrap_or(0) > 0 && rest.eval(&r).is_zero() {
                    rest = rest.div_rem(&lin).0;
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((r, mult));
                }
            }
        }
        (roots, rest)
    }

    /// Formats in the given variable using the polynomial grammar.
    pub fn format_in(&self, var: &str) -> String {
        self.to_polynomial(var).to_string()
    }

    pub fn to_polynomial(&self, var: &str) -> Polynomial {
        let ring = VarRing::new([var]).expect("valid variable name");
        Polynomial::from_terms(&ring, self.coeffs.iter().enumerate().map(|(i, c)| (Monomial::new(vec![i as u32]), c.clone())))
    }

    /// Parses a univariate polynomial in `var`.
    pub fn parse(text: &str, var: &str) -> Result<UniPoly> {
        let ring = VarRing::new([var])?;
        let p = parse_poly(text, &ring)?;
        let deg = p.degree_in(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in p.terms() {
            coeffs[m.exps()[0] as usize] = c.clone();
        }
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("lambda"))
    }
}

/// Monic annihilator of least degree `d ≤ max_order` of `terms`, checked
/// against every supplied term.
pub fn minimal_recurrence(terms: &[Rational], max_order: usize) -> Result<UniPoly> {
    if terms.len() < 2 * max_order + 2 {
        return Err(Error::Invalid(format!(
            "need at least {} terms to certify a recurrence of order {max_order}, got {}",
            2 * max_order + 2,
            terms.len()
        )));
    }
    for d in 0..=max_order {
        let rows: Vec<Vec<Rational>> = (0..terms.len() - d).map(|i| terms[i..i + d].to_vec()).collect();
        let rhs: Vec<Rational> = (0..terms.len() - d).map(|i| terms[i + d].clone()).collect();
        if d == 0 {
            if rhs.iter().all(Zero::is_zero) {
                return Ok(UniPoly::constant(Rational::one()));
            }
            continue;
        }
        if let Some(c) = crate::linalg::solve(&rows, &rhs) {
            let mut coeffs: Vec<Rational> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Rational::one());
            return Ok(UniPoly::new(coeffs));
        }
    }
    Err(Error::NoRecurrenceFound(max_order))
}
