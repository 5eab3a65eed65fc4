//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a typed domain error (reported as
//! `{"error": ..., "detail": ...}` on stderr), 2 on a usage error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{parse_poly, parse_rational, Monomial, MonomialOrder, OrderKind, Rational, VarRing};
use crate::cfinite::solve_all_closed_forms;
use crate::error::Error;
use crate::groebner::{buchberger_with_budget, ideal_member, BasisJson, IdealBasis, DEFAULT_BUDGET};
use crate::loops::{enumerate_distribution, parse_loop, simulate, LoopProgram, LrsInstance, LrsJson};
use crate::moments::{moment_closure, DEFAULT_CLOSURE_BUDGET};
use crate::reductions::{augment_witness, detect_eventual_zero, p2p_to_spinv, skolem_to_p2p, skolem_to_spinv_direct, verify_lemma31, P2PInstance};
use crate::relations::{empirical_relations, moment_invariant_ideal_with_budget, moment_ring, simulation_table};

#[derive(Parser, Debug)]
#[command(name = "polyinv", version, about = "Polynomial and moment invariants of loops, and Skolem reduction tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moment invariant ideal of order ≤ --degree
    Invariants(Common),
    /// Closed forms of all moments of order ≤ --degree
    ClosedForms(Common),
    /// States of a deterministic loop for n = 0..=--horizon
    Simulate(Common),
    /// Exact distribution after --horizon iterations
    Distribution(Common),
    /// Reduced Gröbner basis of a basis file
    Groebner(Common),
    /// Ideal membership of --poly in a basis file
    Member(Common),
    /// Skolem instance to point-to-point reachability loop
    ReduceSkolemP2p(Common),
    /// Reachability instance to invariant-synthesis loop
    ReduceP2pSpinv(Common),
    /// Integer Skolem instance straight to an invariant-synthesis loop
    ReduceSkolemSpinv(Common),
    /// Least N with f·g·(g−1)⋯(g−N+1) in the basis
    DetectZero(Common),
    /// Check the witness identities of the Skolem reduction up to --horizon
    VerifyLemma31(Common),
    /// Relations of degree ≤ --degree on simulated values up to --horizon
    Empirical(Common),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Lex,
    Degrevlex,
}

#[derive(Args, Debug)]
struct Common {
    /// Loop program in the loop DSL
    #[arg(long = "loop", value_name = "FILE")]
    loop_file: Option<PathBuf>,
    /// Linear recurrence as JSON {"coeffs": [...], "init": [...]}
    #[arg(long, value_name = "FILE")]
    lrs: Option<PathBuf>,
    /// Ideal basis as JSON {"ring", "order", "generators"}
    #[arg(long, value_name = "FILE")]
    basis: Option<PathBuf>,
    /// Polynomial for `member`
    #[arg(long)]
    poly: Option<String>,
    /// Target state, comma separated, for `reduce-p2p-spinv`
    #[arg(long)]
    target: Option<String>,
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
    /// Variable order, lowest first, e.g. "g<f<y<x"
    #[arg(long = "var-order")]
    var_order: Option<String>,
    #[arg(long, default_value_t = 1)]
    degree: u32,
    #[arg(long, default_value_t = 20)]
    horizon: usize,
    /// Closure symbol budget (invariants, closed-forms) or S-pair budget
    /// (groebner, member, empirical, detect-zero)
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Runs one invocation, writing results to `out` and diagnostics to `err`;
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = writeln!(out, "{}", text.trim_end());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "{}", json!({"error": e.kind(), "detail": e.to_string()}));
            1
        }
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Invariants(c) => invariants(&c),
        Command::ClosedForms(c) => closed_forms(&c),
        Command::Simulate(c) => simulate_cmd(&c),
        Command::Distribution(c) => distribution(&c),
        Command::Groebner(c) => groebner(&c),
        Command::Member(c) => member(&c),
        Command::ReduceSkolemP2p(c) => reduce_skolem_p2p(&c),
        Command::ReduceP2pSpinv(c) => reduce_p2p_spinv(&c),
        Command::ReduceSkolemSpinv(c) => reduce_skolem_spinv(&c),
        Command::DetectZero(c) => detect_zero(&c),
        Command::VerifyLemma31(c) => verify(&c),
        Command::Empirical(c) => empirical(&c),
    }
}

fn read_file(path: &Option<PathBuf>, flag: &str) -> std::result::Result<String, Failure> {
    let path: &Path = path.as_deref().ok_or_else(|| Failure::Usage(format!("missing required --{flag} FILE")))?;
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_loop(c: &Common) -> std::result::Result<(LoopProgram, String), Failure> {
    let text = read_file(&c.loop_file, "loop")?;
    Ok((parse_loop(&text)?, text))
}

fn load_lrs(c: &Common) -> std::result::Result<LrsInstance, Failure> {
    let text = read_file(&c.lrs, "lrs")?;
    let json: LrsJson = serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("LRS JSON: {e}")))?;
    Ok(LrsInstance::from_json(&json)?)
}

fn load_basis(c: &Common) -> std::result::Result<IdealBasis, Failure> {
    let text = read_file(&c.basis, "basis")?;
    let json: BasisJson = serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("basis JSON: {e}")))?;
    let basis = IdealBasis::from_json(&json)?;
    if c.order.is_some() || c.var_order.is_some() {
        let order = order_for(c, basis.ring(), basis.order().kind())?;
        return Ok(IdealBasis::new(basis.ring(), &order, basis.generators().to_vec())?);
    }
    Ok(basis)
}

/// The order requested by flags; declaration order unless `--var-order`.
fn order_for(c: &Common, ring: &VarRing, default: OrderKind) -> Result<MonomialOrder, Error> {
    let kind = match c.order {
        Some(OrderArg::Lex) => OrderKind::Lex,
        Some(OrderArg::Degrevlex) => OrderKind::DegRevLex,
        None => default,
    };
    match &c.var_order {
        Some(chain) => MonomialOrder::from_chain(kind, ring, chain),
        None => Ok(MonomialOrder::with_declaration_order(kind, ring.len())),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn basis_out(b: &IdealBasis, format: Format) -> String {
    match format {
        Format::Json => pretty(&serde_json::to_value(b.to_json()).unwrap()),
        Format::Text => {
            let gens = b.generator_strings();
            if gens.is_empty() {
                "0".to_string()
            } else {
                gens.join("\n")
            }
        }
    }
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn invariants(c: &Common) -> Outcome {
    let (prog, _) = load_loop(c)?;
    let (ring, _) = moment_ring(prog.vars(), c.degree)?;
    let order = order_for(c, &ring, OrderKind::DegRevLex)?;
    let budget = c.budget.unwrap_or(DEFAULT_CLOSURE_BUDGET);
    let ideal = moment_invariant_ideal_with_budget(&prog, c.degree, Some(&order), budget)?;
    Ok(basis_out(&ideal, c.format))
}

fn closed_forms(c: &Common) -> Outcome {
    let (prog, _) = load_loop(c)?;
    let (_, monos) = moment_ring(prog.vars(), c.degree)?;
    let targets: Vec<Monomial> = if monos.is_empty() { vec![Monomial::one(prog.vars().len())] } else { monos.clone() };
    let system = moment_closure(&prog, &targets, c.budget.unwrap_or(DEFAULT_CLOSURE_BUDGET))?;
    let forms = solve_all_closed_forms(&system)?;
    let rows: Vec<(String, &crate::cfinite::ExpPoly)> = targets
        .iter()
        .map(|m| {
            let i = system.index_of(m).unwrap();
            (system.symbol_name(i), &forms[i])
        })
        .collect();
    Ok(match c.format {
        Format::Text => rows.iter().map(|(n, f)| format!("{n} = {f}")).collect::<Vec<_>>().join("\n"),
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|(n, f)| json!({"symbol": n, "closed_form": f.to_string(), "expoly": serde_json::to_value(f.to_json()).unwrap()}))
                .collect(),
        )),
    })
}

fn simulate_cmd(c: &Common) -> Outcome {
    let (prog, _) = load_loop(c)?;
    let states = simulate(&prog, c.horizon)?;
    Ok(match c.format {
        Format::Json => pretty(&json!({
            "variables": prog.vars().names(),
            "states": states.iter().map(|s| strs(s)).collect::<Vec<_>>(),
        })),
        Format::Text => states
            .iter()
            .enumerate()
            .map(|(n, s)| {
                let parts: Vec<String> = prog.vars().names().iter().zip(s).map(|(v, x)| format!("{v}={x}")).collect();
                format!("{n}: {}", parts.join(" "))
            })
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn distribution(c: &Common) -> Outcome {
    let (prog, _) = load_loop(c)?;
    let d = enumerate_distribution(&prog, c.horizon)?;
    Ok(match c.format {
        Format::Json => pretty(&json!({
            "variables": prog.vars().names(),
            "iteration": c.horizon,
            "support": d.iter().map(|(s, p)| json!({"state": strs(s), "probability": p.to_string()})).collect::<Vec<_>>(),
        })),
        Format::Text => d
            .iter()
            .map(|(s, p)| {
                let parts: Vec<String> = prog.vars().names().iter().zip(s).map(|(v, x)| format!("{v}={x}")).collect();
                format!("{}: {p}", parts.join(" "))
            })
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn groebner(c: &Common) -> Outcome {
    let basis = load_basis(c)?;
    let gb = buchberger_with_budget(basis.ring(), basis.generators(), basis.order(), c.budget.unwrap_or(DEFAULT_BUDGET))?;
    Ok(basis_out(&gb, c.format))
}

fn member(c: &Common) -> Outcome {
    let basis = load_basis(c)?;
    let text = c.poly.as_deref().ok_or_else(|| Failure::Usage("missing required --poly".into()))?;
    let p = parse_poly(text, basis.ring())?;
    let gb = buchberger_with_budget(basis.ring(), basis.generators(), basis.order(), c.budget.unwrap_or(DEFAULT_BUDGET))?;
    let is_member = ideal_member(&p, &gb)?;
    Ok(match c.format {
        Format::Json => pretty(&json!({"poly": p.format_with(gb.order()), "member": is_member})),
        Format::Text => is_member.to_string(),
    })
}

fn loop_out(prog: &LoopProgram, header: Option<String>, format: Format, extra: Value) -> String {
    let mut dsl = String::new();
    if let Some(h) = header {
        dsl.push_str(&h);
        dsl.push('\n');
    }
    dsl.push_str(&prog.to_string());
    match format {
        Format::Text => dsl,
        Format::Json => {
            let mut v = json!({"loop": dsl});
            if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
                m.extend(e);
            }
            pretty(&v)
        }
    }
}

fn target_comment(vars: &VarRing, target: &[Rational]) -> String {
    let parts: Vec<String> = vars.names().iter().zip(target).map(|(n, t)| format!("{n} = {t}")).collect();
    format!("# target: {}", parts.join("; "))
}

fn reduce_skolem_p2p(c: &Common) -> Outcome {
    let lrs = load_lrs(c)?;
    let p2p = skolem_to_p2p(&lrs);
    let prog = p2p.system();
    Ok(loop_out(prog, Some(target_comment(prog.vars(), p2p.target())), c.format, json!({"target": strs(p2p.target())})))
}

/// Target from `--target "4, 6"` or a `# target: x = 4; y = 6` line.
fn parse_target(c: &Common, prog: &LoopProgram, source: &str) -> std::result::Result<Vec<Rational>, Failure> {
    if let Some(t) = &c.target {
        let vals = t.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
        return Ok(vals);
    }
    let line = source
        .lines()
        .find_map(|l| l.trim().strip_prefix("# target:"))
        .ok_or_else(|| Failure::Usage("missing --target (or a `# target:` line in the loop file)".into()))?;
    let mut target = vec![None; prog.vars().len()];
    for part in line.split(';').filter(|p| !p.trim().is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| Error::Invalid(format!("bad target entry `{part}`")))?;
        target[prog.vars().require(name.trim())?] = Some(parse_rational(value)?);
    }
    target
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Failure::Domain(Error::Invalid(format!("target lacks `{}`", prog.vars().name(i))))))
        .collect()
}

fn reduce_p2p_spinv(c: &Common) -> Outcome {
    let (prog, text) = load_loop(c)?;
    let target = parse_target(c, &prog, &text)?;
    let p2p = P2PInstance::new(prog, target)?;
    let out = p2p_to_spinv(&p2p)?;
    Ok(loop_out(&out, None, c.format, json!({})))
}

fn reduce_skolem_spinv(c: &Common) -> Outcome {
    let lrs = load_lrs(c)?;
    let out = skolem_to_spinv_direct(&lrs)?;
    Ok(loop_out(&out, None, c.format, json!({})))
}

fn detect_zero(c: &Common) -> Outcome {
    let basis = if c.basis.is_some() {
        load_basis(c)?
    } else {
        // Empirical basis of a loop file in lex with g < f < the rest.
        let (prog, _) = load_loop(c)?;
        let ring = prog.vars();
        let order = match &c.var_order {
            Some(chain) => MonomialOrder::from_chain(OrderKind::Lex, ring, chain)?,
            None => {
                let (f, g) = (ring.require("f")?, ring.require("g")?);
                let mut priority: Vec<usize> = (0..ring.len()).filter(|&i| i != f && i != g).collect();
                priority.extend([f, g]);
                MonomialOrder::new(OrderKind::Lex, priority)?
            }
        };
        let table = simulation_table(&prog, c.horizon)?;
        empirical_relations(&table, ring, c.degree, &order)?
    };
    let n = detect_eventual_zero(&basis)?;
    Ok(match c.format {
        Format::Json => pretty(&json!({"eventual_zero": n})),
        Format::Text => n.map_or("none".to_string(), |n| n.to_string()),
    })
}

fn verify(c: &Common) -> Outcome {
    let lrs = load_lrs(c)?;
    // Builds and shape-checks the witness system before the long run.
    augment_witness(&skolem_to_p2p(&lrs))?;
    let report = verify_lemma31(&lrs, c.horizon);
    Ok(match c.format {
        Format::Json => pretty(&serde_json::to_value(&report).unwrap()),
        Format::Text => {
            let mut s = format!(
                "horizon {}: {} violations; first zero {}",
                report.horizon,
                report.violations.len(),
                report.first_zero.map_or("none".to_string(), |n| n.to_string())
            );
            for v in &report.violations {
                s.push('\n');
                s.push_str(v);
            }
            s
        }
    })
}

fn empirical(c: &Common) -> Outcome {
    let (prog, _) = load_loop(c)?;
    let order = order_for(c, prog.vars(), OrderKind::DegRevLex)?;
    let table = simulation_table(&prog, c.horizon)?;
    let basis = empirical_relations(&table, prog.vars(), c.degree, &order)?;
    Ok(basis_out(&basis, c.format))
}
