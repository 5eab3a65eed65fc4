use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::intmat::{factor, left_kernel, row_echelon, IntMatrix};

/// All integer vectors `a` with `Π λᵢ^{aᵢ} = 1` for positive rational bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseLattice {
    bases: Vec<Rational>,
    lattice: IntMatrix,
}

impl BaseLattice {
    pub fn bases(&self) -> &[Rational] {
        &self.bases
    }

    /// Basis vectors, one row each.
    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.len()
    }
}

/// Primes occurring in the bases and the exponent matrix (one row per base).
fn exponent_matrix(bases: &[Rational]) -> Result<IntMatrix> {
    let mut primes: Vec<BigInt> = Vec::new();
    let mut rows: Vec<Vec<(BigInt, i64)>> = Vec::new();
    for b in bases {
        if !b.is_positive() {
            return Err(Error::Invalid(format!("base {b} is not positive")));
        }
        let mut row = Vec::new();
        for (p, e) in factor(b.numer()) {
            row.push((p, e as i64));
        }
        for (p, e) in factor(b.denom()) {
            row.push((p, -(e as i64)));
        }
        for (p, _) in &row {
            if !primes.contains(p) {
                primes.push(p.clone());
            }
        }
        rows.push(row);
    }
    primes.sort();
    Ok(rows
        .into_iter()
        .map(|row| primes.iter().map(|p| row.iter().find(|(q, _)| q == p).map_or_else(BigInt::zero, |(_, e)| BigInt::from(*e))).collect())
        .collect())
}

pub fn multiplicative_lattice(bases: &[Rational]) -> Result<BaseLattice> {
    let a = exponent_matrix(bases)?;
    let lattice = if a.first().is_some_and(|r| r.is_empty()) {
        // Every base is 1.
        (0..bases.len()).map(|i| (0..bases.len()).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
    } else {
        left_kernel(&a)
    };
    Ok(BaseLattice { bases: bases.to_vec(), lattice })
}

/// Multiplicatively independent positive rationals `γ₁ … γₜ` and integer
/// exponents with `bases[i] = Π γₖ^{e[i][k]}`.
///
/// Generators drawn from the bases themselves are preferred when they give
/// every base non-negative exponents, since negative exponents cost an
/// inverse symbol during elimination.
pub(crate) fn multiplicative_generators(bases: &[Rational]) -> Result<(Vec<Rational>, Vec<Vec<i64>>)> {
    let a = exponent_matrix(bases)?;
    let cols = a.first().map_or(0, Vec::len);
    if cols == 0 {
        return Ok((Vec::new(), vec![Vec::new(); bases.len()]));
    }
    let (h, _, rank) = row_echelon(&a);
    let echelon = echelon_generators(bases, &a, &h, rank);
    if echelon.1.iter().flatten().any(|&e| e < 0) {
        if let Some(found) = nonnegative_generators(bases, &a, rank) {
            return Ok(found);
        }
    }
    Ok(echelon)
}

/// Combinations of bases tried before settling for negative exponents.
const SUBSET_LIMIT: usize = 5_000;

/// A subset of the bases that generates every base with non-negative integer
/// exponents, if one exists among the first [`SUBSET_LIMIT`] candidates.
fn nonnegative_generators(bases: &[Rational], a: &IntMatrix, rank: usize) -> Option<(Vec<Rational>, Vec<Vec<i64>>)> {
    let mut candidates: Vec<usize> = Vec::new();
    for (i, b) in bases.iter().enumerate() {
        if !b.is_one() && !candidates.iter().any(|&j| &bases[j] == b) {
            candidates.push(i);
        }
    }
    let to_rat = |row: &Vec<BigInt>| row.iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>();
    let mut subset: Vec<usize> = (0..rank).collect();
    for _ in 0..SUBSET_LIMIT {
        if subset.last().is_none_or(|&l| l >= candidates.len()) {
            return None;
        }
        let chosen: Vec<usize> = subset.iter().map(|&k| candidates[k]).collect();
        // Columns are the chosen exponent rows, so `solve` finds their weights.
        let cols = a[0].len();
        let transposed: Vec<Vec<Rational>> = (0..cols).map(|p| chosen.iter().map(|&i| Rational::from_integer(a[i][p].clone())).collect()).collect();
        let independent = crate::linalg::kernel(&transposed, rank).is_empty();
        if independent {
            let exps: Option<Vec<Vec<i64>>> = a
                .iter()
                .map(|row| {
                    let x = crate::linalg::solve(&transposed, &to_rat(row))?;
                    x.iter().map(|v| if v.is_integer() && !v.is_negative() { i64::try_from(v.to_integer()).ok() } else { None }).collect()
                })
                .collect();
            if let Some(exps) = exps {
                return Some((chosen.iter().map(|&i| bases[i].clone()).collect(), exps));
            }
        }
        if !next_combination(&mut subset, candidates.len()) {
            return None;
        }
    }
    None
}

/// Advances `c` to the next `c.len()`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn echelon_generators(bases: &[Rational], a: &IntMatrix, h: &IntMatrix, rank: usize) -> (Vec<Rational>, Vec<Vec<i64>>) {
    let h = &h[..rank];
    let pivots: Vec<usize> = h.iter().map(|row| row.iter().position(|v| !v.is_zero()).unwrap()).collect();
    let primes = primes_of(bases);
    let gammas: Vec<Rational> = h
        .iter()
        .map(|row| {
            row.iter().zip(&primes).fold(Rational::one(), |acc, (e, p)| {
                let pr = Rational::from_integer(p.clone());
                let e: i32 = e.try_into().expect("exponent fits i32");
                acc * num_traits::Pow::pow(&pr, e)
            })
        })
        .collect();
    let exps = a
        .iter()
        .map(|row| {
            let mut v = row.clone();
            let mut e = Vec::with_capacity(rank);
            for (k, hk) in h.iter().enumerate() {
                let c = pivots[k];
                let q = &v[c] / &hk[c];
                debug_assert!((&q * &hk[c]) == v[c], "vector outside the row lattice");
                for (x, y) in v.iter_mut().zip(hk) {
                    *x -= &q * y;
                }
                e.push(i64::try_from(q).expect("exponent fits i64"));
            }
            e
        })
        .collect();
    (gammas, exps)
}

fn primes_of(bases: &[Rational]) -> Vec<BigInt> {
    let mut primes: Vec<BigInt> = bases.iter().flat_map(|b| factor(b.numer()).into_iter().chain(factor(b.denom())).map(|(p, _)| p)).collect();
    primes.sort();
    primes.dedup();
    primes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn ints(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn lattices() {
        assert_eq!(multiplicative_lattice(&[rat(2), rat(4), rat(3)]).unwrap().lattice(), &ints(&[&[2, -1, 0]]));
        assert_eq!(multiplicative_lattice(&[rat(2), rat(3)]).unwrap().rank(), 0);
        assert_eq!(multiplicative_lattice(&[rat(1)]).unwrap().lattice(), &ints(&[&[1]]));
        let l = multiplicative_lattice(&[rat(2), ratio(1, 2), rat(6), rat(3), rat(1)]).unwrap();
        assert_eq!(l.rank(), 3);
        assert!(multiplicative_lattice(&[rat(-2)]).is_err());
    }

    #[test]
    fn generators_reproduce_bases() {
        let bases = [rat(4), ratio(1, 8), rat(6), rat(1), ratio(9, 4)];
        let (gammas, exps) = multiplicative_generators(&bases).unwrap();
        assert_eq!(gammas.len(), 2);
        for (b, e) in bases.iter().zip(&exps) {
            let prod = gammas.iter().zip(e).fold(rat(1), |acc, (g, &k)| acc * num_traits::Pow::pow(g, k as i32));
            assert_eq!(&prod, b);
        }
    }

    #[test]
    fn prefers_nonnegative_exponents() {
        let bases = [ratio(4, 25), ratio(49, 100), ratio(1, 4), ratio(1, 16), ratio(1, 25), ratio(49, 400), rat(1)];
        let (gammas, exps) = multiplicative_generators(&bases).unwrap();
        assert_eq!(gammas.len(), 3);
        assert!(exps.iter().flatten().all(|&e| e >= 0));
        for (b, e) in bases.iter().zip(&exps) {
            let prod = gammas.iter().zip(e).fold(rat(1), |acc, (g, &k)| acc * num_traits::Pow::pow(g, k as i32));
            assert_eq!(&prod, b);
        }
        // 2 and 1/2 cannot both have non-negative exponents.
        let (_, exps) = multiplicative_generators(&[rat(2), ratio(1, 2)]).unwrap();
        assert!(exps.iter().flatten().any(|&e| e < 0));
    }
}
