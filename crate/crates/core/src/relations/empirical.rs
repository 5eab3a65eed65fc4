use crate::algebra::{Monomial, MonomialOrder, Polynomial, Rational, VarRing};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, IdealBasis};
use crate::linalg::kernel;

/// Relations of degree at most `degree` that hold on every sampled index.
///
/// `table[j][n]` is the value of `names[j]` at index `n`. The result is the
/// ideal generated by the kernel of the evaluation map on all monomials of
/// degree `≤ degree`; it is only as sound as the sampled horizon.
pub fn empirical_relations(table: &[Vec<Rational>], names: &VarRing, degree: u32, order: &MonomialOrder) -> Result<IdealBasis> {
    if table.len() != names.len() {
        return Err(Error::ArityMismatch { expected: names.len(), got: table.len() });
    }
    let samples = table.first().map_or(0, Vec::len);
    if table.iter().any(|col| col.len() != samples) {
        return Err(Error::Invalid("value table columns differ in length".into()));
    }
    let monos = Monomial::all_up_to_degree(names.len(), degree);
    if samples < 2 * monos.len() {
        log::warn!("{samples} samples for {} candidate monomials; relations may be spurious", monos.len());
    }
    let rows: Vec<Vec<Rational>> = (0..samples)
        .map(|n| {
            let point: Vec<Rational> = table.iter().map(|col| col[n].clone()).collect();
            monos.iter().map(|m| Polynomial::term(names, m.clone(), Rational::from_integer(1.into())).eval(&point)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let gens: Vec<Polynomial> = kernel(&rows, monos.len()).into_iter().map(|v| Polynomial::from_terms(names, monos.iter().cloned().zip(v))).collect();
    buchberger(names, &gens, order)
}

/// Values of every variable of a deterministic loop for `n = 0..=horizon`,
/// one column per variable.
pub fn simulation_table(program: &crate::loops::LoopProgram, horizon: usize) -> Result<Vec<Vec<Rational>>> {
    let states = crate::loops::simulate(program, horizon)?;
    Ok((0..program.vars().len()).map(|j| states.iter().map(|s| s[j].clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat, OrderKind};
    use crate::groebner::ideal_equal;
    use crate::loops::parse_loop;

    fn instance(tx: i64, ty: i64) -> String {
        format!(
            "vars: x, y, f, g\ninit: x = 0; y = 0; f = 1; g = 0\nbody:\n  x = x + 2\n  y = y + 3\n  f = f*((x-{tx})^2 + (y-{ty})^2)\n  g = g + 1\n"
        )
    }

    #[test]
    fn constant_sequence() {
        let ring = VarRing::new(["c"]).unwrap();
        let i = empirical_relations(&[vec![rat(1); 5]], &ring, 1, &MonomialOrder::lex(1)).unwrap();
        assert_eq!(i.generator_strings(), ["c - 1"]);
    }

    #[test]
    fn unreachable_target_has_only_linear_relations() {
        let l = parse_loop(&instance(5, 7)).unwrap();
        let table = simulation_table(&l, 25).unwrap();
        let ord = MonomialOrder::from_chain(OrderKind::Lex, l.vars(), "g<f<y<x").unwrap();
        let i = empirical_relations(&table, l.vars(), 3, &ord).unwrap();
        let want = IdealBasis::new(l.vars(), &ord, vec![parse_poly("x - 2*g", l.vars()).unwrap(), parse_poly("y - 3*g", l.vars()).unwrap()]).unwrap();
        assert!(ideal_equal(&i, &want).unwrap());
    }

    #[test]
    fn reachable_target_relations_vanish() {
        let l = parse_loop(&instance(4, 6)).unwrap();
        let table = simulation_table(&l, 25).unwrap();
        let ord = MonomialOrder::from_chain(OrderKind::Lex, l.vars(), "g<f<y<x").unwrap();
        let i = empirical_relations(&table, l.vars(), 3, &ord).unwrap();
        let gf = parse_poly("g*(g-1)*f", l.vars()).unwrap();
        assert!(crate::groebner::ideal_member(&gf, &i).unwrap());
        for g in i.generators() {
            for n in 0..=25 {
                let point: Vec<Rational> = table.iter().map(|c| c[n].clone()).collect();
                assert!(g.eval(&point).unwrap() == rat(0));
            }
        }
    }
}
