use num_traits::{One, Signed};

use super::lattice::multiplicative_generators;
use crate::algebra::{format_monomial, is_moment_symbol, parse_poly, Monomial, MonomialOrder, Polynomial, Rational, VarRing};
use crate::cfinite::{solve_all_closed_forms, ExpPoly};
use crate::error::{Error, Result};
use crate::groebner::{eliminate, ideal_intersect, IdealBasis};
use crate::loops::LoopProgram;
use crate::moments::{moment_closure, DEFAULT_CLOSURE_BUDGET};

/// Reduced basis of all polynomials in `names` vanishing on
/// `(forms[0](n), …, forms[m-1](n))` for every `n ≥ 0`.
pub fn relations_ideal(forms: &[ExpPoly], names: &VarRing, order: &MonomialOrder) -> Result<IdealBasis> {
    if forms.len() != names.len() {
        return Err(Error::ArityMismatch { expected: names.len(), got: forms.len() });
    }
    if order.arity() != names.len() {
        return Err(Error::ArityMismatch { expected: names.len(), got: order.arity() });
    }
    let transient = forms.iter().map(|f| f.transient().len()).max().unwrap_or(0);
    let mut total = tail_ideal(forms, names, order)?;
    log::debug!("{} tail relations", total.generators().len());
    for n in 0..transient {
        total = ideal_intersect(&total, &point_ideal(forms, names, order, n)?)?;
    }
    total.to_reduced()
}

fn point_ideal(forms: &[ExpPoly], names: &VarRing, order: &MonomialOrder, n: usize) -> Result<IdealBasis> {
    let gens = forms.iter().enumerate().map(|(j, f)| Polynomial::var(names, j) - Polynomial::constant(names, f.eval(n))).collect();
    IdealBasis::new(names, order, gens)
}

/// Relations of the tails, by eliminating `n`, a sign symbol `σ = (−1)ⁿ`
/// (with `σ² = 1`) when some base is negative, and exponential symbols
/// `γₖⁿ` for multiplicative generators of the absolute bases (with inverses
/// where exponents are negative).
fn tail_ideal(forms: &[ExpPoly], names: &VarRing, order: &MonomialOrder) -> Result<IdealBasis> {
    let mut mus: Vec<Rational> = Vec::new();
    for (b, _) in forms.iter().flat_map(|f| f.tail()) {
        let mu = b.abs();
        if !mus.contains(&mu) {
            mus.push(mu);
        }
    }
    let signed = forms.iter().flat_map(|f| f.tail()).any(|(b, _)| b.is_negative());
    let (gammas, exps) = multiplicative_generators(&mus)?;
    let needs_inverse: Vec<bool> = (0..gammas.len()).map(|k| exps.iter().any(|e| e[k] < 0)).collect();

    let mut stems = vec!["aux_n".to_string()];
    if signed {
        stems.push("aux_s".to_string());
    }
    stems.extend((1..=gammas.len()).map(|k| format!("aux_t{k}")));
    stems.extend((1..=gammas.len()).filter(|k| needs_inverse[k - 1]).map(|k| format!("aux_u{k}")));
    let mut ring = names.clone();
    for stem in &stems {
        let name = ring.fresh_name(stem);
        ring = ring.extend([name])?;
    }
    let base = names.len();
    let n_var = Polynomial::var(&ring, base);
    let sign = signed.then(|| Polynomial::var(&ring, base + 1));
    let t_base = base + 1 + usize::from(signed);
    let mut u_index = vec![None; gammas.len()];
    let mut next = t_base + gammas.len();
    for (k, inv) in needs_inverse.iter().enumerate() {
        if *inv {
            u_index[k] = Some(next);
            next += 1;
        }
    }

    // |λ|ⁿ as a monomial in the t and u symbols.
    let mu_power = |mu: &Rational| -> Polynomial {
        let i = mus.iter().position(|x| x == mu).unwrap();
        let mut e = vec![0u32; ring.len()];
        for (k, &x) in exps[i].iter().enumerate() {
            if x > 0 {
                e[t_base + k] = x as u32;
            } else if x < 0 {
                e[u_index[k].unwrap()] = (-x) as u32;
            }
        }
        Polynomial::term(&ring, Monomial::new(e), Rational::one())
    };

    let mut gens = Vec::new();
    for (j, f) in forms.iter().enumerate() {
        let mut value = Polynomial::zero(&ring);
        for (b, p) in f.tail() {
            let mut term = p.to_polynomial("n").compose(std::slice::from_ref(&n_var), &ring)? * mu_power(&b.abs());
            if b.is_negative() {
                term = term * sign.clone().expect("sign symbol exists");
            }
            value = value + term;
        }
        gens.push(Polynomial::var(&ring, j) - value);
    }
    if let Some(s) = &sign {
        gens.push(s * s - Polynomial::one(&ring));
    }
    for (k, u) in u_index.iter().enumerate() {
        if let Some(u) = u {
            gens.push(Polynomial::var(&ring, t_base + k) * Polynomial::var(&ring, *u) - Polynomial::one(&ring));
        }
    }
    log::debug!("eliminating {} auxiliary symbols from {} relations", stems.len(), gens.len());
    let big_order = order.extended_on_top(stems.len());
    let joined = IdealBasis::new(&ring, &big_order, gens)?;
    let drop: Vec<usize> = (base..ring.len()).collect();
    eliminate(&joined, &drop)
}

/// Moment symbols `E[M]` for all monomials of degree `1..=ell`, graded.
pub fn moment_ring(vars: &VarRing, ell: u32) -> Result<(VarRing, Vec<Monomial>)> {
    let monos: Vec<Monomial> = Monomial::all_up_to_degree(vars.len(), ell).into_iter().filter(|m| !m.is_one()).collect();
    let names: Vec<String> = monos.iter().map(|m| format!("E[{}]", format_monomial(vars, m))).collect();
    Ok((VarRing::new(names)?, monos))
}

/// Strongest moment invariants of order at most `ell`, over [`moment_ring`].
/// `order` defaults to degrevlex in ring order.
pub fn moment_invariant_ideal(program: &LoopProgram, ell: u32, order: Option<&MonomialOrder>) -> Result<IdealBasis> {
    moment_invariant_ideal_with_budget(program, ell, order, DEFAULT_CLOSURE_BUDGET)
}

pub fn moment_invariant_ideal_with_budget(program: &LoopProgram, ell: u32, order: Option<&MonomialOrder>, budget: usize) -> Result<IdealBasis> {
    let (ring, monos) = moment_ring(program.vars(), ell)?;
    let default = MonomialOrder::degrevlex(ring.len());
    let order = order.unwrap_or(&default);
    if monos.is_empty() {
        return Ok(IdealBasis::zero(&ring, order));
    }
    let system = moment_closure(program, &monos, budget)?;
    let all = solve_all_closed_forms(&system)?;
    let forms: Vec<ExpPoly> = monos.iter().map(|m| all[system.index_of(m).unwrap()].clone()).collect();
    relations_ideal(&forms, &ring, order)
}

/// Degree of the monomial inside a moment symbol name such as `E[x^2*y]`.
pub fn moment_degree(name: &str) -> Option<u32> {
    if !is_moment_symbol(name) {
        return None;
    }
    let inner = &name[2..name.len() - 1];
    if inner.trim() == "1" {
        return Some(0);
    }
    inner
        .split('*')
        .map(|f| match f.split_once('^') {
            Some((_, e)) => e.trim().parse::<u32>().ok(),
            None => Some(1),
        })
        .sum()
}

/// Replaces every `E[M]` by `M` (and keeps plain program variables).
pub fn psi_map(p: &Polynomial, program: &VarRing) -> Result<Polynomial> {
    let images = p
        .ring()
        .names()
        .iter()
        .map(|name| {
            if is_moment_symbol(name) {
                let inner = &name[2..name.len() - 1];
                let m = parse_poly(inner, program)?;
                if m.num_terms() != 1 || m.terms().next().is_some_and(|(_, c)| !c.is_one()) {
                    return Err(Error::Invalid(format!("`{name}` is not the moment of a monomial")));
                }
                Ok(m)
            } else {
                Ok(Polynomial::var(program, program.require(name)?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    p.compose(&images, program)
}

/// Eliminates every moment symbol of order two or more.
pub fn restrict_to_order_one(basis: &IdealBasis) -> Result<IdealBasis> {
    let drop: Vec<usize> =
        basis.ring().names().iter().enumerate().filter(|(_, n)| moment_degree(n).is_some_and(|d| d >= 2)).map(|(i, _)| i).collect();
    if basis.generators().iter().all(Polynomial::is_zero) || basis.is_zero_ideal() {
        let keep: Vec<usize> = (0..basis.ring().len()).filter(|i| !drop.contains(i)).collect();
        let sub = basis.ring().retain(|i, _| !drop.contains(&i));
        return Ok(IdealBasis::zero(&sub, &basis.order().restrict(&keep)));
    }
    eliminate(basis, &drop)
}
