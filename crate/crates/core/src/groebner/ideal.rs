use super::{buchberger, IdealBasis};
use crate::algebra::{multivariate_divide, MonomialOrder, Polynomial};
use crate::error::{Error, Result};

fn same_ring(a: &IdealBasis, b: &IdealBasis) -> Result<()> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// Whether `p` lies in the ideal: its remainder modulo the reduced Gröbner
/// basis vanishes.
pub fn ideal_member(p: &Polynomial, basis: &IdealBasis) -> Result<bool> {
    Ok(member_certificate(p, basis)?.is_some())
}

/// Quotients `qᵢ` with `p = Σ qᵢ·gᵢ` over the reduced generators `gᵢ` of
/// `basis.to_reduced()`, or `None` when `p` is not a member.
pub fn member_certificate(p: &Polynomial, basis: &IdealBasis) -> Result<Option<Vec<Polynomial>>> {
    if p.ring() != basis.ring() {
        return Err(Error::RingMismatch);
    }
    let gb = basis.to_reduced()?;
    if gb.generators().is_empty() {
        return Ok(p.is_zero().then(Vec::new));
    }
    let (qs, r) = multivariate_divide(p, gb.generators(), gb.order())?;
    Ok(r.is_zero().then_some(qs))
}

/// Intersection of the ideal with the subring omitting the variables in
/// `drop` (ring indices). The result lives over the smaller ring, in the
/// original order restricted to the remaining variables.
pub fn eliminate(basis: &IdealBasis, drop: &[usize]) -> Result<IdealBasis> {
    let ring = basis.ring();
    if let Some(&bad) = drop.iter().find(|&&d| d >= ring.len()) {
        return Err(Error::UnknownVariable(format!("#{bad}")));
    }
    let keep: Vec<usize> = (0..ring.len()).filter(|i| !drop.contains(i)).collect();
    let sub = ring.retain(|i, _| !drop.contains(&i));
    let sub_order = basis.order().restrict(&keep);
    if drop.is_empty() {
        return basis.to_reduced();
    }
    let elim_order = if basis.order().is_block() { basis.order().elimination(drop) } else { basis.order().block_elimination(drop) };
    let gb = buchberger(ring, basis.generators(), &elim_order)?;
    let kept = gb.generators().iter().filter(|g| drop.iter().all(|&d| !g.uses_var(d))).map(|g| g.to_ring(&sub)).collect::<Result<Vec<_>>>()?;
    buchberger(&sub, &kept, &sub_order)
}

pub fn eliminate_named(basis: &IdealBasis, drop: &[&str]) -> Result<IdealBasis> {
    let idx = drop.iter().map(|n| basis.ring().require(n)).collect::<Result<Vec<_>>>()?;
    eliminate(basis, &idx)
}

/// `a ∩ b`, by eliminating a fresh variable `t` from `t·a + (1 − t)·b`.
pub fn ideal_intersect(a: &IdealBasis, b: &IdealBasis) -> Result<IdealBasis> {
    same_ring(a, b)?;
    let ring = a.ring();
    if a.is_zero_ideal() || b.is_zero_ideal() {
        return Ok(IdealBasis::zero(ring, a.order()));
    }
    let t_name = ring.fresh_name("t");
    let big = ring.extend([t_name])?;
    let t_idx = ring.len();
    let t = Polynomial::var(&big, t_idx);
    let one_minus_t = &Polynomial::one(&big) - &t;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(&t * &g.to_ring(&big)?);
    }
    for g in b.generators() {
        gens.push(&one_minus_t * &g.to_ring(&big)?);
    }
    let order: MonomialOrder = a.order().extended_on_top(1);
    let joined = IdealBasis::new(&big, &order, gens)?;
    eliminate(&joined, &[t_idx])
}

/// Ideal equality via reduced bases in `a`'s order.
pub fn ideal_equal(a: &IdealBasis, b: &IdealBasis) -> Result<bool> {
    same_ring(a, b)?;
    let ra = a.to_reduced()?;
    let rb = b.with_order(ra.order())?;
    Ok(ra.generators() == rb.generators())
}

/// Zero-dimensionality test: every variable has a pure power among the
/// leading monomials of the reduced basis (the unit ideal counts as finite).
pub fn variety_is_finite(basis: &IdealBasis) -> Result<bool> {
    let gb = basis.to_reduced()?;
    let order = gb.order();
    let lms: Vec<_> = gb.generators().iter().map(|g| g.leading_term(order).unwrap().0.clone()).collect();
    if lms.iter().any(|m| m.is_one()) {
        return Ok(true);
    }
    let n = gb.ring().len();
    let mut bounded = vec![false; n];
    for m in &lms {
        if let Some(v) = m.pure_power_of() {
            bounded[v] = true;
        }
    }
    Ok(bounded.into_iter().all(|b| b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, OrderKind, VarRing};

    fn basis(ring: &VarRing, order: &MonomialOrder, src: &[&str]) -> IdealBasis {
        let gens = src.iter().map(|s| parse_poly(s, ring).unwrap()).collect();
        IdealBasis::new(ring, order, gens).unwrap().to_reduced().unwrap()
    }

    #[test]
    fn membership() {
        let ring = VarRing::new(["x", "y", "f", "g"]).unwrap();
        let ord = MonomialOrder::from_chain(OrderKind::Lex, &ring, "g<f<y<x").unwrap();
        let i = basis(&ring, &ord, &["x - 2*g", "y - 3*g", "g*(g-1)*f"]);
        assert!(ideal_member(&parse_poly("g*(g-1)*f", &ring).unwrap(), &i).unwrap());
        let j = basis(&ring, &ord, &["x - 2*g", "y - 3*g"]);
        assert!(!ideal_member(&parse_poly("f", &ring).unwrap(), &j).unwrap());
    }

    #[test]
    fn certificates_reconstruct() {
        let ring = VarRing::new(["x", "y"]).unwrap();
        let ord = MonomialOrder::degrevlex(2);
        let i = basis(&ring, &ord, &["x^2 - y", "x*y - 1"]);
        let p = parse_poly("x^3*y - x*y^2 + 5*x^2 - 5*y", &ring).unwrap();
        let qs = member_certificate(&p, &i).unwrap().expect("member");
        let rebuilt = i.generators().iter().zip(&qs).fold(Polynomial::zero(&ring), |acc, (g, q)| &acc + &(g * q));
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn elimination_examples() {
        let ring = VarRing::new(["x", "y"]).unwrap();
        let i = basis(&ring, &MonomialOrder::lex(2), &["x^2 + y^2 - 1", "x - y"]);
        let e = eliminate_named(&i, &["x"]).unwrap();
        assert_eq!(e.ring().names(), &["y".to_string()]);
        assert_eq!(e.generator_strings(), vec!["y^2 - 1/2"]);
        assert!(ideal_equal(&eliminate(&i, &[]).unwrap(), &i).unwrap());

        let ring = VarRing::new(["n", "E[x]", "E[y]"]).unwrap();
        let i = basis(&ring, &MonomialOrder::degrevlex(3), &["2*E[x] - n", "E[y] + n/2"]);
        let e = eliminate_named(&i, &["n"]).unwrap();
        assert_eq!(e.generator_strings(), vec!["E[x] + E[y]"]);
    }

    #[test]
    fn intersection_examples() {
        let ring = VarRing::new(["x", "y"]).unwrap();
        let ord = MonomialOrder::lex(2);
        let x = basis(&ring, &ord, &["x"]);
        let y = basis(&ring, &ord, &["y"]);
        let xy = ideal_intersect(&x, &y).unwrap();
        assert!(ideal_equal(&xy, &basis(&ring, &ord, &["x*y"])).unwrap());
        assert!(ideal_equal(&ideal_intersect(&x, &x).unwrap(), &x).unwrap());
        let zero = IdealBasis::zero(&ring, &ord);
        assert!(ideal_intersect(&x, &zero).unwrap().is_zero_ideal());
    }

    #[test]
    fn equality_examples() {
        let ring = VarRing::new(["x", "y"]).unwrap();
        let ord = MonomialOrder::degrevlex(2);
        assert!(ideal_equal(&basis(&ring, &ord, &["x", "y"]), &basis(&ring, &ord, &["x + y", "x - y"])).unwrap());
        assert!(!ideal_equal(&basis(&ring, &ord, &["x"]), &basis(&ring, &ord, &["x^2"])).unwrap());
    }

    #[test]
    fn finiteness_examples() {
        let ring = VarRing::new(["x", "y"]).unwrap();
        let ord = MonomialOrder::lex(2);
        assert!(variety_is_finite(&basis(&ring, &ord, &["x^2", "y - 1"])).unwrap());
        assert!(variety_is_finite(&basis(&ring, &ord, &["1"])).unwrap());
        let ring = VarRing::new(["g", "x"]).unwrap();
        assert!(!variety_is_finite(&basis(&ring, &MonomialOrder::lex(2), &["x - 2*g"])).unwrap());
    }
}
