use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::P2PInstance;
use crate::algebra::{Monomial, Polynomial, Rational, VarRing};
use crate::error::{Error, Result};
use crate::loops::{Assignment, LoopProgram, LrsInstance};

pub(crate) fn x_names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("x{i}")).collect()
}

pub(crate) fn s_names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("s{i}")).collect()
}

/// `x_i(0) = u(i)·Π_{ℓ<i} c·x_ℓ(0)`.
pub(crate) fn x_initial(lrs: &LrsInstance, c: &Rational) -> Vec<Rational> {
    let mut x: Vec<Rational> = Vec::with_capacity(lrs.order());
    let mut prod = Rational::one();
    for u in lrs.init() {
        let v = u * &prod;
        prod *= c * &v;
        x.push(v);
    }
    x
}

/// `s_0(0) = 1`, `s_i(0) = Π_{ℓ<i} c·x_ℓ(0)`.
pub(crate) fn s_initial(x0: &[Rational], c: &Rational) -> Vec<Rational> {
    let mut s = Vec::with_capacity(x0.len());
    let mut prod = Rational::one();
    for x in x0 {
        s.push(prod.clone());
        prod *= c * x;
    }
    s
}

/// `Σ aᵢ·xᵢ·Π_{ℓ=i}^{k-1} (c·x_ℓ)` over the first `k` ring variables.
pub(crate) fn last_update(ring: &VarRing, coeffs: &[Rational], c: &Rational) -> Polynomial {
    let k = coeffs.len();
    let mut out = Polynomial::zero(ring);
    for (i, a) in coeffs.iter().enumerate() {
        let mut e = vec![0u32; ring.len()];
        for ex in e.iter_mut().take(k).skip(i) {
            *ex = 1;
        }
        e[i] += 1;
        let scale = a * num_traits::Pow::pow(c, k - i);
        out = out + Polynomial::term(ring, Monomial::new(e), scale);
    }
    out
}

pub fn skolem_to_p2p(lrs: &LrsInstance) -> P2PInstance {
    let k = lrs.order();
    let ring = VarRing::new(x_names(k)).expect("generated names are valid");
    let mut exprs: Vec<Polynomial> = (1..k).map(|i| Polynomial::var(&ring, i)).collect();
    exprs.push(last_update(&ring, lrs.coeffs(), &Rational::one()));
    let body = vec![Assignment::deterministic(&ring, (0..k).collect(), exprs).expect("well-formed tuple")];
    let program = LoopProgram::new(ring, x_initial(lrs, &Rational::one()), body).expect("arity matches");
    P2PInstance::new(program, vec![Rational::zero(); k]).expect("deterministic")
}

/// P2P system with the auxiliary products `s₀ … s_{k-1}` adjoined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSystem {
    program: LoopProgram,
    coeffs: Vec<Rational>,
}

impl WitnessSystem {
    /// Variables `x₀ … x_{k-1}, s₀ … s_{k-1}`.
    pub fn program(&self) -> &LoopProgram {
        &self.program
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a₀ … a_{k-1}` recovered from the last x-update.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

fn shape_error(msg: impl Into<String>) -> Error {
    Error::NotASkolemReduction(msg.into())
}

/// Recovers the recurrence coefficients, checking the construction's shape.
fn recover_coeffs(p2p: &P2PInstance) -> Result<Vec<Rational>> {
    let prog = p2p.system();
    let k = prog.vars().len();
    if k == 0 || prog.vars().names() != x_names(k).as_slice() {
        return Err(shape_error("variables must be x0 … x{k-1}"));
    }
    if p2p.target().iter().any(|t| !t.is_zero()) {
        return Err(shape_error("target must be the zero vector"));
    }
    let [a] = prog.body() else {
        return Err(shape_error("body must be one simultaneous assignment"));
    };
    if a.targets() != (0..k).collect::<Vec<_>>().as_slice() {
        return Err(shape_error("assignment must update x0 … x{k-1} in order"));
    }
    let exprs = &a.branches()[0].exprs;
    for (i, e) in exprs.iter().enumerate().take(k - 1) {
        if *e != Polynomial::var(prog.vars(), i + 1) {
            return Err(shape_error(format!("x{i} must be updated to x{}", i + 1)));
        }
    }
    let last = &exprs[k - 1];
    let mut coeffs = Vec::with_capacity(k);
    for i in 0..k {
        let mut e = vec![0u32; k];
        for ex in e.iter_mut().skip(i) {
            *ex = 1;
        }
        e[i] += 1;
        coeffs.push(last.coeff(&Monomial::new(e)));
    }
    if *last != last_update(prog.vars(), &coeffs, &Rational::one()) {
        return Err(shape_error(format!("x{} update is not Σ aᵢ·xᵢ·Π x_ℓ", k - 1)));
    }
    if coeffs[0].is_zero() {
        return Err(shape_error("a0 must be nonzero"));
    }
    Ok(coeffs)
}

pub fn augment_witness(p2p: &P2PInstance) -> Result<WitnessSystem> {
    let coeffs = recover_coeffs(p2p)?;
    let k = coeffs.len();
    let prog = p2p.system();
    let ring = VarRing::new(x_names(k).into_iter().chain(s_names(k)))?;
    let mut exprs: Vec<Polynomial> = prog.body()[0].branches()[0].exprs.iter().map(|e| e.to_ring(&ring)).collect::<Result<_>>()?;
    for i in 0..k - 1 {
        exprs.push(Polynomial::var(&ring, k + i + 1));
    }
    exprs.push(Polynomial::var(&ring, 2 * k - 1) * Polynomial::var(&ring, k - 1));
    let body = vec![Assignment::deterministic(&ring, (0..2 * k).collect(), exprs)?];
    let mut init = prog.init().to_vec();
    init.extend(s_initial(prog.init(), &Rational::one()));
    Ok(WitnessSystem { program: LoopProgram::new(ring, init, body)?, coeffs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma31Report {
    pub horizon: usize,
    pub violations: Vec<String>,
    /// First `n` with `x₀(n) = 0`.
    pub first_zero: Option<usize>,
}

/// Exact arithmetic used by the streaming checker; integer instances avoid
/// rational normalisation on very large values.
trait Scalar: Clone + PartialEq + Zero + One + std::fmt::Display {
    fn from_rational(q: &Rational) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
}

impl Scalar for BigInt {
    fn from_rational(q: &Rational) -> Self {
        assert!(q.is_integer());
        q.to_integer()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
}

fn eval_poly<T: Scalar>(p: &Polynomial, point: &[T]) -> T {
    let mut acc = T::zero();
    for (m, c) in p.terms() {
        let mut t = T::from_rational(c);
        for (v, &e) in point.iter().zip(m.exps()) {
            for _ in 0..e {
                t = t.mul_ref(v);
            }
        }
        acc = acc.add_ref(&t);
    }
    acc
}

/// Checks `xᵢ(n) = sᵢ(n)·u(n+i)` and `sᵢ(n) = Π_{ℓ<n} x₀(ℓ)·Π_{ℓ<i} x_ℓ(n)`
/// for all `n ≤ horizon`, running the constructed witness system.
pub fn verify_lemma31(lrs: &LrsInstance, horizon: usize) -> Lemma31Report {
    if lrs.is_integer() {
        verify_with::<BigInt>(lrs, horizon)
    } else {
        verify_with::<Rational>(lrs, horizon)
    }
}

fn verify_with<T: Scalar>(lrs: &LrsInstance, horizon: usize) -> Lemma31Report {
    let k = lrs.order();
    let witness = augment_witness(&skolem_to_p2p(lrs)).expect("constructed instance has the reduction shape");
    let exprs = &witness.program().body()[0].branches()[0].exprs;
    let u: Vec<T> = lrs.terms(horizon + k).iter().map(T::from_rational).collect();
    let mut state: Vec<T> = witness.program().init().iter().map(T::from_rational).collect();
    let mut x0_prod = T::one();
    let mut violations = Vec::new();
    let mut first_zero = None;
    for n in 0..=horizon {
        let (x, s) = state.split_at(k);
        let mut prefix = x0_prod.clone();
        for i in 0..k {
            if x[i] != s[i].mul_ref(&u[n + i]) {
                violations.push(format!("n={n}, i={i}: x{i}(n) = {} but s{i}(n)·u(n+{i}) = {}", short(&x[i]), short(&s[i].mul_ref(&u[n + i]))));
            }
            if s[i] != prefix {
                violations.push(format!("n={n}, i={i}: s{i}(n) = {} but the product formula gives {}", short(&s[i]), short(&prefix)));
            }
            prefix = prefix.mul_ref(&x[i]);
        }
        if first_zero.is_none() && x[0].is_zero() {
            first_zero = Some(n);
        }
        if n == horizon {
            break;
        }
        x0_prod = x0_prod.mul_ref(&x[0]);
        state = exprs.iter().map(|e| eval_poly(e, &state)).collect();
    }
    Lemma31Report { horizon, violations, first_zero }
}

/// Abbreviates huge values in violation messages.
fn short<T: std::fmt::Display>(v: &T) -> String {
    let s = v.to_string();
    if s.len() <= 40 {
        s
    } else {
        format!("{}…({} digits)", &s[..20], s.len())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat, ratio};
    use crate::loops::{parse_loop, simulate, LrsJson};

    pub(crate) fn example() -> LrsInstance {
        LrsInstance::from_json(&LrsJson { coeffs: vec!["2".into(), "-2".into(), "-12".into()], init: vec!["2".into(), "-3".into(), "3".into()] })
            .unwrap()
    }

    #[test]
    fn example_system() {
        let p = skolem_to_p2p(&example());
        let prog = p.system();
        assert_eq!(prog.init(), &[rat(2), rat(-6), rat(-36)]);
        assert_eq!(p.target(), &[rat(0), rat(0), rat(0)]);
        let want = parse_poly("2*x2^2 - 2*x1^2*x2 - 12*x0^2*x1*x2", prog.vars()).unwrap();
        assert_eq!(prog.body()[0].branches()[0].exprs[2], want);
        let s = simulate(prog, 1).unwrap();
        assert_eq!(s[1][..2], [rat(-6), rat(-36)]);
        assert_eq!(parse_loop(&prog.to_string()).unwrap(), *prog);
    }

    #[test]
    fn order_one() {
        let lrs = LrsInstance::new(vec![rat(3)], vec![rat(5)]).unwrap();
        let p = skolem_to_p2p(&lrs);
        assert_eq!(p.system().body()[0].branches()[0].exprs[0].to_string(), "3*x0^2");
        let w = augment_witness(&p).unwrap();
        assert_eq!(w.program().init(), &[rat(5), rat(1)]);
        assert_eq!(w.program().body()[0].branches()[0].exprs[1].to_string(), "x0*s0");
    }

    #[test]
    fn witness_initial_values() {
        let w = augment_witness(&skolem_to_p2p(&example())).unwrap();
        assert_eq!(w.program().vars().len(), 6);
        assert_eq!(w.program().init()[3..], [rat(1), rat(2), rat(-12)]);
        assert_eq!(w.coeffs(), &[rat(-12), rat(-2), rat(2)]);
    }

    #[test]
    fn rejects_foreign_instances() {
        let prog = parse_loop("vars: x0, x1\ninit: x0 = 1; x1 = 1\nbody:\n  (x0, x1) = (x1, x0 + x1)\n").unwrap();
        let p = P2PInstance::new(prog, vec![rat(0), rat(0)]).unwrap();
        assert!(matches!(augment_witness(&p), Err(Error::NotASkolemReduction(_))));
        let prog = parse_loop("vars: x, y\ninit: x = 1; y = 1\nbody:\n  x = x + 1\n").unwrap();
        let p = P2PInstance::new(prog, vec![rat(0), rat(0)]).unwrap();
        assert!(matches!(augment_witness(&p), Err(Error::NotASkolemReduction(_))));
    }

    #[test]
    fn witness_identities_on_example() {
        let lrs = example();
        assert_eq!(lrs.eval(5), rat(0));
        let r = verify_lemma31(&lrs, 15);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!(r.first_zero, Some(5));
        let states = simulate(skolem_to_p2p(&lrs).system(), 15).unwrap();
        assert!(states[5..].iter().all(|s| s.iter().all(Zero::is_zero)));
        assert!(states[..5].iter().all(|s| !s[0].is_zero()));
    }

    #[test]
    fn witness_identities_without_zero() {
        let lrs = LrsInstance::new(vec![rat(2)], vec![rat(1)]).unwrap();
        let r = verify_lemma31(&lrs, 20);
        assert!(r.violations.is_empty());
        assert_eq!(r.first_zero, None);
        let r = verify_lemma31(&LrsInstance::new(vec![rat(1)], vec![rat(0)]).unwrap(), 3);
        assert_eq!(r.first_zero, Some(0));
        let rational = LrsInstance::new(vec![ratio(1, 2), ratio(-3, 4)], vec![rat(1), ratio(1, 3)]).unwrap();
        assert!(verify_lemma31(&rational, 8).violations.is_empty());
    }

    #[test]
    fn report_json_shape() {
        let r = verify_lemma31(&example(), 6);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["horizon"], 6);
        assert_eq!(v["first_zero"], 5);
        assert!(v["violations"].as_array().unwrap().is_empty());
    }
}
