//! Integer factoring and unimodular row reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

const TRIAL_BOUND: u64 = 1_000_000;

/// Prime factorisation of `|n|` by trial division. A cofactor left over
/// after the trial bound is returned as if it were prime.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut rest = n.abs();
    let mut out = Vec::new();
    if rest.is_zero() {
        return out;
    }
    let mut p: u64 = 2;
    while p <= TRIAL_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        if p > TRIAL_BOUND || rest.to_u64().is_none() {
            log::warn!("factorisation: cofactor {rest} not fully factored");
        }
        out.push((rest, 1));
    }
    out
}

/// Positive divisors of `|n|` (just `1` for zero).
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (f, e) in factor(n) {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pw = d.clone();
            for _ in 0..=e {
                next.push(pw.clone());
                pw *= &f;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Row echelon form `U·A = H` over the integers with `U` unimodular.
/// Returns `(H, U, rank)`; rows `rank..` of `H` are zero.
pub fn row_echelon(a: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let m = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut h = a.clone();
    let mut u: IntMatrix = (0..m).map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if h[i][c].is_zero() {
                continue;
            }
            let (a0, b0) = (h[r][c].clone(), h[i][c].clone());
            let eg = a0.extended_gcd(&b0);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (ag, bg) = (&a0 / &g, &b0 / &g);
            combine(&mut h, r, i, &x, &y, &ag, &bg);
            combine(&mut u, r, i, &x, &y, &ag, &bg);
        }
        if !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                for row in [&mut h[r], &mut u[r]] {
                    row.iter_mut().for_each(|v| *v = -v.clone());
                }
            }
            r += 1;
        }
    }
    (h, u, r)
}

/// `(R_r, R_i) ← (x·R_r + y·R_i, −bg·R_r + ag·R_i)`; determinant 1.
fn combine(m: &mut IntMatrix, r: usize, i: usize, x: &BigInt, y: &BigInt, ag: &BigInt, bg: &BigInt) {
    let (rr, ri) = (m[r].clone(), m[i].clone());
    m[r] = rr.iter().zip(&ri).map(|(p, q)| x * p + y * q).collect();
    m[i] = rr.iter().zip(&ri).map(|(p, q)| ag * q - bg * p).collect();
}

/// Basis of `{ v ∈ ℤᵐ : v·A = 0 }` in echelon form with positive pivots.
pub fn left_kernel(a: &IntMatrix) -> IntMatrix {
    let (_, u, rank) = row_echelon(a);
    let kernel: IntMatrix = u[rank..].to_vec();
    if kernel.is_empty() {
        return kernel;
    }
    let (h, _, r) = row_echelon(&kernel);
    h[..r].to_vec()
}
