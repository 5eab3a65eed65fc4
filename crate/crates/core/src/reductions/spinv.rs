use num_traits::{One, Zero};

use super::skolem::{last_update, s_initial, s_names, x_initial, x_names};
use super::P2PInstance;
use crate::algebra::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::loops::{Assignment, Branch, LoopProgram, LrsInstance};

/// Loop over the P2P variables plus `f` and `g`: the P2P updates, then
/// `f ← f·Σ(xᵢ − tᵢ)²` reading the updated values, then `g ← g + 1`.
pub fn p2p_to_spinv(p2p: &P2PInstance) -> Result<LoopProgram> {
    let sys = p2p.system();
    let base = sys.vars();
    let k = base.len();
    let f_name = base.fresh_name("f");
    let with_f = base.extend([f_name.clone()])?;
    let g_name = with_f.fresh_name("g");
    let ring = with_f.extend([g_name])?;
    let (f, g) = (k, k + 1);

    let mut body = Vec::with_capacity(sys.body().len() + 2);
    for a in sys.body() {
        let branches = a
            .branches()
            .iter()
            .map(|b| Ok(Branch { probability: b.probability.clone(), exprs: b.exprs.iter().map(|e| e.to_ring(&ring)).collect::<Result<_>>()? }))
            .collect::<Result<Vec<_>>>()?;
        body.push(Assignment::new(&ring, a.targets().to_vec(), branches)?);
    }
    let mut dist = Polynomial::zero(&ring);
    for (i, t) in p2p.target().iter().enumerate() {
        let d = Polynomial::var(&ring, i) - Polynomial::constant(&ring, t.clone());
        dist = dist + &d * &d;
    }
    body.push(Assignment::deterministic(&ring, vec![f], vec![Polynomial::var(&ring, f) * dist])?);
    body.push(Assignment::deterministic(&ring, vec![g], vec![Polynomial::var(&ring, g) + Polynomial::one(&ring)])?);

    let mut init = sys.init().to_vec();
    init.push(Rational::one());
    init.push(Rational::zero());
    LoopProgram::new(ring, init, body)
}

/// Integer-only variant over `x₀ … x_{k-1}, s₀ … s_{k-1}` with the doubled
/// updates `x_{k-1} ← Σ aᵢ·xᵢ·Π (2·x_ℓ)` and `s_{k-1} ← 2·x_{k-1}·s_{k-1}`.
///
/// Initial products carry the same factor, `s_i(0) = Π_{ℓ<i} 2·x_ℓ(0)` and
/// `x_i(0) = u(i)·s_i(0)`, so `x_i(n) = s_i(n)·u(n+i)` keeps holding. Its
/// reachable set is finite exactly when the sequence has a zero.
pub fn skolem_to_spinv_direct(lrs: &LrsInstance) -> Result<LoopProgram> {
    if !lrs.is_integer() {
        return Err(Error::NotIntegerInstance);
    }
    let k = lrs.order();
    let ring = crate::algebra::VarRing::new(x_names(k).into_iter().chain(s_names(k)))?;
    let two = Rational::from_integer(2.into());
    let mut exprs: Vec<Polynomial> = (1..k).map(|i| Polynomial::var(&ring, i)).collect();
    exprs.push(last_update(&ring, lrs.coeffs(), &two));
    exprs.extend((1..k).map(|i| Polynomial::var(&ring, k + i)));
    exprs.push((Polynomial::var(&ring, k - 1) * Polynomial::var(&ring, 2 * k - 1)).scale(&two));
    let body = vec![Assignment::deterministic(&ring, (0..2 * k).collect(), exprs)?];
    let x0 = x_initial(lrs, &two);
    let mut init = x0.clone();
    init.extend(s_initial(&x0, &two));
    LoopProgram::new(ring, init, body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    use crate::algebra::{parse_poly, rat, ratio};
    use crate::loops::{parse_loop, simulate};
    use crate::reductions::skolem_to_p2p;

    fn walk_system() -> LoopProgram {
        parse_loop("vars: x, y\ninit: x = 0; y = 0\nbody:\n  (x, y) = (x + 2, y + 3)\n").unwrap()
    }

    #[test]
    fn reachable_target_loop() {
        let p = P2PInstance::new(walk_system(), vec![rat(4), rat(6)]).unwrap();
        let l = p2p_to_spinv(&p).unwrap();
        assert_eq!(l.vars().names(), ["x", "y", "f", "g"]);
        assert_eq!(l.init(), &[rat(0), rat(0), rat(1), rat(0)]);
        let written = parse_loop(
            "vars: x, y, f, g\ninit: x = 0; y = 0; f = 1; g = 0\nbody:\n  (x, y) = (x + 2, y + 3)\n  f = f*((x-4)^2 + (y-6)^2)\n  g = g + 1\n",
        )
        .unwrap();
        assert_eq!(l, written);
        let s = simulate(&l, 3).unwrap();
        assert_eq!(s[1][2], rat(13));
        assert!(s[2..].iter().all(|st| st[2].is_zero()));
        assert_eq!(p.first_hit(5).unwrap(), Some(2));
        for (a, b) in s.iter().zip(simulate(p.system(), 3).unwrap()) {
            assert_eq!(a[..2], b[..]);
        }
    }

    #[test]
    fn unreachable_target_loop() {
        let p = P2PInstance::new(walk_system(), vec![rat(5), rat(7)]).unwrap();
        let l = p2p_to_spinv(&p).unwrap();
        let f = &l.body()[1].branches()[0].exprs[0];
        assert_eq!(*f, parse_poly("f*((x-5)^2 + (y-7)^2)", l.vars()).unwrap());
        assert!(simulate(&l, 10).unwrap().iter().all(|s| !s[2].is_zero()));
        assert_eq!(parse_loop(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn direct_reduction() {
        let lrs = crate::reductions::skolem::tests::example();
        let l = skolem_to_spinv_direct(&lrs).unwrap();
        assert_eq!(l.vars().len(), 6);
        let e = &l.body()[0].branches()[0].exprs;
        assert_eq!(e[2], parse_poly("2*x2*(2*x2) - 2*x1*(2*x1)*(2*x2) - 12*x0*(2*x0)*(2*x1)*(2*x2)", l.vars()).unwrap());
        assert_eq!(e[5], parse_poly("2*x2*s2", l.vars()).unwrap());
        let rational = LrsInstance::new(vec![ratio(1, 2)], vec![rat(1)]).unwrap();
        assert_eq!(skolem_to_spinv_direct(&rational), Err(Error::NotIntegerInstance));
        assert_eq!(l.init(), &[rat(2), rat(-12), rat(-288), rat(1), rat(4), rat(-96)]);
        let s = simulate(&l, 8).unwrap();
        for (n, st) in s.iter().enumerate() {
            for i in 0..3 {
                assert_eq!(st[i], &st[3 + i] * lrs.eval(n + i));
            }
        }
        assert!(s[..5].iter().all(|st| !st[0].is_zero()));
        assert!(s[5..].iter().all(|st| st[..3].iter().all(Zero::is_zero)));
        assert_eq!(skolem_to_p2p(&lrs).system().init()[0], l.init()[0]);
    }

    #[test]
    fn direct_reduction_grows_without_zero() {
        let lrs = LrsInstance::new(vec![rat(1), rat(1)], vec![rat(1), rat(1)]).unwrap();
        let l = skolem_to_spinv_direct(&lrs).unwrap();
        let s = simulate(&l, 7).unwrap();
        for w in s.windows(2) {
            assert!(w[1][3].abs() > w[0][3].abs());
        }
        let mut seen = std::collections::BTreeSet::new();
        assert!(s.iter().all(|st| seen.insert(st.clone())));
    }
}
