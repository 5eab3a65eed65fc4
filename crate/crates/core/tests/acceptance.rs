//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use num_traits::Zero;
use polyinv::algebra::{multivariate_divide, parse_poly, rat, Monomial, MonomialOrder, OrderKind, Polynomial, Rational, VarRing};
use polyinv::groebner::{buchberger, ideal_equal, ideal_intersect, ideal_member, variety_is_finite, IdealBasis};
use polyinv::loops::{enumerate_distribution, parse_loop, simulate, LoopProgram, LrsInstance};
use polyinv::moments::moment_closure;
use polyinv::reductions::{detect_eventual_zero, p2p_to_spinv, skolem_to_p2p, verify_lemma31, P2PInstance};
use polyinv::relations::{empirical_relations, moment_invariant_ideal, moment_ring, restrict_to_order_one, simulation_table};
use polyinv::Error;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const WALKS: &str = "vars: x, y\ninit: x = 0; y = 0\nbody:\n  x = x + 2 [1/2] x - 1\n  y = y + 1 [1/2] y - 2\n";

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn basis(ring: &VarRing, order: &MonomialOrder, gens: &[&str]) -> IdealBasis {
    let ps = gens.iter().map(|g| parse_poly(g, ring).unwrap()).collect();
    IdealBasis::new(ring, order, ps).unwrap()
}

fn criterion1() -> Check {
    let prog = parse_loop(WALKS).map_err(e)?;
    let start = Instant::now();
    let ideal = moment_invariant_ideal(&prog, 2, None).map_err(e)?;
    let took = start.elapsed();
    let expected = basis(
        ideal.ring(),
        ideal.order(),
        &["E[x^2] - E[y^2]", "9*E[x] - 2*E[x*y] - 2*E[y^2]", "E[x*y]^2 + 2*E[x*y]*E[y^2] + 81/4*E[x*y] + E[y^2]^2", "2*E[x*y] + 9*E[y] + 2*E[y^2]"],
    );
    ensure(ideal_equal(&ideal, &expected).map_err(e)?, format!("ideal differs: {:?}", ideal.generator_strings()))?;
    ensure(took <= Duration::from_secs(60), format!("took {took:?}"))?;
    Ok(format!("ideal matches the four-generator basis ({took:.2?})"))
}

fn criterion2() -> Check {
    let prog = parse_loop(WALKS).map_err(e)?;
    let start = Instant::now();
    let ideal = moment_invariant_ideal(&prog, 3, None).map_err(e)?;
    let took = start.elapsed();
    let restricted = restrict_to_order_one(&ideal).map_err(e)?;
    let direct = moment_invariant_ideal(&prog, 1, None).map_err(e)?;
    let expected = basis(direct.ring(), direct.order(), &["E[x] + E[y]"]);
    ensure(ideal_equal(&direct, &expected).map_err(e)?, format!("direct order-one ideal is {:?}", direct.generator_strings()))?;
    let restricted =
        IdealBasis::new(direct.ring(), direct.order(), restricted.generators().iter().map(|g| g.to_ring(direct.ring()).unwrap()).collect())
            .map_err(e)?;
    ensure(ideal_equal(&restricted, &direct).map_err(e)?, format!("restriction is {:?}", restricted.generator_strings()))?;
    ensure(took <= Duration::from_secs(120), format!("took {took:?}"))?;
    Ok(format!("{} generators at order 3, restriction equals <E[x] + E[y]> ({took:.2?})", ideal.generators().len()))
}

/// SPInv loop generated from the reachability question "does (x, y) hit (tx, ty)".
fn generated_spinv(tx: i64, ty: i64) -> LoopProgram {
    let p2p = parse_loop("vars: x, y\ninit: x = 0; y = 0\nbody:\n  x = x + 2\n  y = y + 3\n").unwrap();
    p2p_to_spinv(&P2PInstance::new(p2p, vec![rat(tx), rat(ty)]).unwrap()).unwrap()
}

fn criterion3() -> Check {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for ((tx, ty), want, want_n) in [((4, 6), &["x - 2*g", "y - 3*g", "g*(g-1)*f"][..], Some(2)), ((5, 7), &["x - 2*g", "y - 3*g"][..], None)] {
        let prog = generated_spinv(tx, ty);
        let order = MonomialOrder::from_chain(OrderKind::Lex, prog.vars(), "g<f<y<x").map_err(e)?;
        let table = simulation_table(&prog, 25).map_err(e)?;
        let ideal = empirical_relations(&table, prog.vars(), 3, &order).map_err(e)?;
        let expected = basis(prog.vars(), &order, want);
        if !ideal_equal(&ideal, &expected).map_err(e)? {
            failures.push(format!("target ({tx},{ty}): empirical ideal {:?} is not the expected ideal", ideal.generator_strings()));
        }
        let n = detect_eventual_zero(&ideal).map_err(e)?;
        if n != want_n {
            failures.push(format!("target ({tx},{ty}): eventual zero {n:?}, expected {want_n:?}"));
        } else {
            notes.push(format!("({tx},{ty}) N={n:?}"));
        }
    }
    if failures.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(failures.join("; "))
    }
}

fn x0_vanishes_from(lrs: &LrsInstance, from: usize, horizon: usize) -> Result<bool, String> {
    let states = simulate(skolem_to_p2p(lrs).system(), horizon).map_err(e)?;
    Ok(states.iter().skip(from).all(|s| s[0].is_zero()))
}

fn criterion4() -> Check {
    let example = LrsInstance::new(vec![rat(-12), rat(-2), rat(2)], vec![rat(2), rat(-3), rat(3)]).map_err(e)?;
    ensure(example.eval(5) == rat(0), format!("u(5) = {}", example.eval(5)))?;
    let report = verify_lemma31(&example, 15);
    ensure(report.violations.is_empty(), format!("example: {:?}", report.violations))?;
    ensure(report.first_zero == Some(5), format!("example first zero {:?}", report.first_zero))?;
    ensure(x0_vanishes_from(&example, 5, 15)?, "example: x0(n) nonzero for some n >= 5")?;
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let start = Instant::now();
    for case in 0..100 {
        let k = rng.gen_range(1..=4);
        let mut coeffs: Vec<Rational> = (0..k).map(|_| rat(rng.gen_range(-3..=3))).collect();
        if coeffs[0].is_zero() {
            coeffs[0] = rat(1);
        }
        let init = (0..k).map(|_| rat(rng.gen_range(-3..=3))).collect();
        let lrs = LrsInstance::new(coeffs, init).map_err(e)?;
        let report = verify_lemma31(&lrs, 20);
        ensure(report.violations.is_empty(), format!("fuzz case {case}: {:?}", report.violations))?;
    }
    Ok(format!("example first zero at n=5, 100 fuzzed instances clean ({:.2?})", start.elapsed()))
}

fn criterion5() -> Check {
    let prog = parse_loop(WALKS).map_err(e)?;
    let ideal = moment_invariant_ideal(&prog, 2, None).map_err(e)?;
    let p = parse_poly("E[x*y] - E[x]*E[y]", ideal.ring()).map_err(e)?;
    ensure(ideal_member(&p, &ideal).map_err(e)?, "E[x*y] - E[x]*E[y] is not a member")?;
    Ok("E[x*y] - E[x]*E[y] is a member".into())
}

/// Random affine loop with a triangular dependency pattern, so every moment
/// system has rational eigenvalues. At most one statement is probabilistic,
/// which keeps the exact distribution small.
fn random_affine_loop(rng: &mut StdRng) -> LoopProgram {
    const SCALES: [&str; 6] = ["1", "1", "2", "-1", "1/2", "0"];
    const SHIFTS: [&str; 7] = ["0", "1", "-1", "2", "1/3", "-3/2", "5"];
    let arity = rng.gen_range(1..=3);
    let names: Vec<String> = ["a", "b", "c"][..arity].iter().map(|s| s.to_string()).collect();
    let init: Vec<String> = names.iter().map(|n| format!("{n} = {}", rng.gen_range(-2..=2))).collect();
    let random_probability = rng.gen_range(0..arity);
    let expr = |rng: &mut StdRng, i: usize| {
        let mut s = format!("{}*{}", SCALES[rng.gen_range(0..SCALES.len())], names[i]);
        for lower in &names[..i] {
            if rng.gen_bool(0.5) {
                s.push_str(&format!(" + {}*{lower}", SHIFTS[rng.gen_range(0..SHIFTS.len())]));
            }
        }
        s.push_str(&format!(" + {}", SHIFTS[rng.gen_range(0..SHIFTS.len())]));
        s
    };
    let mut body = String::new();
    for (i, name) in names.iter().enumerate() {
        let first = expr(rng, i);
        if i == random_probability {
            let p = format!("{}/{}", rng.gen_range(1..=4), 5);
            body.push_str(&format!("  {name} = {first} [{p}] {}\n", expr(rng, i)));
        } else {
            body.push_str(&format!("  {name} = {first}\n"));
        }
    }
    let src = format!("vars: {}\ninit: {}\nbody:\n{body}", names.join(", "), init.join("; "));
    parse_loop(&src).unwrap_or_else(|err| panic!("generated loop failed to parse: {err}\n{src}"))
}

fn criterion6() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let start = Instant::now();
    for case in 0..50 {
        let prog = random_affine_loop(&mut rng);
        let arity = prog.vars().len();
        let (_, monos) = moment_ring(prog.vars(), 2).map_err(e)?;
        let dists: Vec<_> = (0..=10).map(|n| enumerate_distribution(&prog, n)).collect::<Result<_, _>>().map_err(e)?;
        let oracle = |n: usize, m: &Monomial| dists[n].expect(&Polynomial::term(prog.vars(), m.clone(), rat(1))).unwrap();
        let system = moment_closure(&prog, &monos, 1000).map_err(e)?;
        let values = system.values(9);
        for m in Monomial::all_up_to_degree(arity, 2) {
            let idx = system.index_of(&m).ok_or_else(|| format!("case {case}: {m:?} missing from the closure"))?;
            for (n, row) in values.iter().enumerate() {
                ensure(row[idx] == oracle(n, &m), format!("case {case}: moment {} at n={n} differs\n{prog}", system.symbol_name(idx)))?;
            }
        }
        let ideal = moment_invariant_ideal(&prog, 2, None).map_err(e)?;
        for n in 0..=10 {
            let point: Vec<Rational> = monos.iter().map(|m| oracle(n, m)).collect();
            for g in ideal.generators() {
                ensure(
                    g.eval(&point).map_err(e)?.is_zero(),
                    format!("case {case}: generator {} nonzero at n={n}\n{prog}", g.format_with(ideal.order())),
                )?;
            }
        }
    }
    let took = start.elapsed();
    ensure(took <= Duration::from_secs(600), format!("took {took:?}"))?;
    Ok(format!("50 fuzzed loops agree with exact enumeration ({took:.2?})"))
}

fn criterion7() -> Check {
    let xy = VarRing::new(["x", "y"]).map_err(e)?;
    let lex = MonomialOrder::lex(2);
    let p = |s: &str| parse_poly(s, &xy).unwrap();
    let (_, r) = multivariate_divide(&p("x^2*y + x*y^2 + y^2"), &[p("x*y - 1"), p("y^2 - 1")], &lex).map_err(e)?;
    ensure(r == p("x + y + 1"), format!("remainder {r}"))?;
    let meet = ideal_intersect(&basis(&xy, &lex, &["x"]), &basis(&xy, &lex, &["y"])).map_err(e)?;
    ensure(ideal_equal(&meet, &basis(&xy, &lex, &["x*y"])).map_err(e)?, format!("intersection {:?}", meet.generator_strings()))?;
    let reduced = |gens: &[&str], ring: &VarRing| {
        buchberger(ring, &gens.iter().map(|g| parse_poly(g, ring).unwrap()).collect::<Vec<_>>(), &MonomialOrder::lex(ring.len())).unwrap()
    };
    ensure(variety_is_finite(&reduced(&["x^2", "y - 1"], &xy)).map_err(e)?, "<x^2, y-1> should be finite")?;
    let gx = VarRing::new(["g", "x"]).map_err(e)?;
    ensure(!variety_is_finite(&reduced(&["x - 2*g"], &gx)).map_err(e)?, "<x-2g> should be infinite")?;
    ensure(variety_is_finite(&reduced(&["1"], &xy)).map_err(e)?, "<1> should be finite")?;
    Ok("division, intersection and finiteness cases hold".into())
}

fn criterion8() -> Check {
    let prog = generated_spinv(4, 6);
    let f = prog.vars().require("f").map_err(e)?;
    match moment_closure(&prog, &[Monomial::var(prog.vars().len(), f)], 100) {
        Err(Error::ClosureBudgetExceeded(100)) => Ok("closure of E[f] exceeds budget 100".into()),
        Err(other) => Err(format!("unexpected error {other}")),
        Ok(s) => Err(format!("closure unexpectedly finished with {} symbols", s.len())),
    }
}

fn main() {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 8] = [
        ("1 two-walk ideal at order 2", criterion1),
        ("2 order 3 and restriction", criterion2),
        ("3 empirical relations of generated loops", criterion3),
        ("4 witness identities", criterion4),
        ("5 uncorrelated membership", criterion5),
        ("6 oracle equivalence on fuzzed loops", criterion6),
        ("7 groebner unit cases", criterion7),
        ("8 closure budget on polynomial update", criterion8),
    ];
    // ACCEPTANCE_ONLY=3,6 runs a subset.
    let only: Option<Vec<String>> = std::env::var("ACCEPTANCE_ONLY").ok().map(|v| v.split(',').map(|s| s.trim().to_string()).collect());
    let mut failed = 0;
    let mut ran = 0;
    for (name, run) in criteria {
        if let Some(only) = &only {
            if !only.iter().any(|o| name.split(' ').next() == Some(o.as_str())) {
                continue;
            }
        }
        ran += 1;
        match run() {
            Ok(detail) => println!("criterion {name}: PASS - {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL - {detail}");
            }
        }
    }
    println!("{} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
