//! Command execution: each (target, op) pair runs one computation and is
//! folded into a [crate::report::Report].
//!
//! [run_job] [run_command] [ono_table] [error_code]
//!
//! A verification op yields verdict "pass" or "fail"; a mismatch never aborts
//! the surrounding job.  Structural errors (bad inputs, unsupported families,
//! reconstruction failures) land in the result's `error` field with a stable
//! code naming the violated invariant.

use std::time::Instant;

use num::BigInt;
use serde_json::{json, Value};

use weilq_core::exact::{laurent_lead, LeadBase, Q};
use weilq_core::lfun::{
    artin_conductor, check_functional_equation, cover_zeta, l_function_opts, LOptions, SheafAtom,
    VirtualSheaf,
};
use weilq_core::motives::{l_motive, verify_theorem_main};
use weilq_core::tori::{
    class_data, l_torus, rho_t, tamagawa_ono, verify_ono, verify_torus_theorem,
};
use weilq_core::weil_etale::{chi_w_virtual, r_of, verify_theorem_constructible, Route};
use weilq_core::Error;

use crate::jobspec::{BuiltJob, BuiltTorus, CommandSpec, SpecError};
use crate::report::{
    lead_value, place_value, poly_value, q_value, ratfn_value, CommandResult, Report,
};

/// Stable name of the invariant an error violates, for machine-readable
/// output.
pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::Validation(_) => "Validation",
        Error::NotKummerCompatible { .. } => "NotKummerCompatible",
        Error::NotGeometricallyConnected(_) => "NotGeometricallyConnected",
        Error::WildRamification { .. } => "WildRamification",
        Error::SingularMatrix => "SingularMatrix",
        Error::NoSolution => "NoSolution",
        Error::ReconstructionUnstable(_) => "ReconstructionUnstable",
        Error::OrderMismatch { .. } => "OrderMismatch",
        Error::FunctionalEquationViolated { .. } => "FunctionalEquationViolated",
        Error::VerificationFailed { .. } => "VerificationFailed",
        Error::UnsupportedFamily => "UnsupportedFamily",
        Error::OddConductor(_) => "OddConductor",
        Error::InfiniteCohomology => "InfiniteCohomology",
    }
}

/// A failed check is a negative verification result; a structural error means
/// the computation itself could not run.
fn is_verification_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::VerificationFailed { .. }
            | Error::OrderMismatch { .. }
            | Error::FunctionalEquationViolated { .. }
    )
}

fn route_name(r: &Route) -> &'static str {
    match r {
        Route::FrobComplex => "frobenius_complex",
        Route::LeadingCoefficient => "leading_coefficient",
        Route::Multiplicativity => "multiplicativity",
    }
}

fn big_value(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

/// What one op produced before it is wrapped into a [CommandResult].
struct OpOutput {
    outputs: Value,
    verdict: Option<&'static str>,
    route: Option<String>,
}

impl OpOutput {
    fn plain(outputs: Value) -> OpOutput {
        OpOutput { outputs, verdict: None, route: None }
    }

    fn pass(outputs: Value) -> OpOutput {
        OpOutput { outputs, verdict: Some("pass"), route: None }
    }

    fn routed(mut self, route: impl Into<String>) -> OpOutput {
        self.route = Some(route.into());
        self
    }
}

type OpResult = Result<OpOutput, Error>;

// ---------------------------------------------------------------------------
// per-target ops

fn cover_op(job: &BuiltJob, name: &str, op: &str, opts: &LOptions) -> OpResult {
    let cover = &job.covers[name];
    match op {
        "describe" => {
            let ramified: Vec<Value> = cover
                .ramified_places()
                .iter()
                .map(|v| {
                    json!({
                        "place": place_value(job.q, v),
                        "inertia_order": cover.inertia_order_at(v),
                    })
                })
                .collect();
            Ok(OpOutput::plain(json!({
                "q": cover.q(),
                "constant_degree": cover.constant_field_degree(),
                "orders": cover.orders(),
                "group_order": cover.group_order(),
                "genus": cover.genus(),
                "ramified": ramified,
            })))
        }
        "zeta" => {
            let z = cover_zeta(cover, opts)?;
            Ok(OpOutput::plain(json!({
                "zeta": ratfn_value(&z.zeta),
                "genus": z.genus,
                "constant_degree": z.constant_degree,
                "numerator_u": poly_value(&z.numerator_u),
            })))
        }
        other => Err(Error::Validation(format!("unknown cover op {:?}", other))),
    }
}

fn lattice_op(job: &BuiltJob, name: &str, op: &str) -> OpResult {
    let lat = &job.lattices[name];
    match op {
        "describe" => Ok(OpOutput::plain(json!({
            "rank": lat.rank(),
            "orders": lat.orders(),
        }))),
        other => Err(Error::Validation(format!("unknown lattice op {:?}", other))),
    }
}

/// The conductor and functional-equation ops act on a single pushforward;
/// extract it or explain why the sheaf does not qualify.
fn single_pushforward(sheaf: &VirtualSheaf) -> Result<&SheafAtom, Error> {
    match sheaf.terms() {
        [(1, atom @ SheafAtom::Pushforward { .. })] => Ok(atom),
        _ => Err(Error::Validation(
            "this op needs a sheaf that is exactly one pushforward term".into(),
        )),
    }
}

fn sheaf_op(job: &BuiltJob, name: &str, op: &str, opts: &LOptions) -> OpResult {
    let sheaf = &job.sheaves[name];
    match op {
        "lfun" => {
            let l = l_function_opts(sheaf, opts)?;
            let lead = laurent_lead(&l, LeadBase::OneMinusT);
            Ok(OpOutput::plain(json!({
                "l": ratfn_value(&l),
                "lead_at_one": lead_value(&lead),
            })))
        }
        "chi_w" => {
            let rep = chi_w_virtual(sheaf, opts)?;
            Ok(OpOutput::plain(json!({
                "chi_w": q_value(&rep.chi_w),
                "r": rep.r,
                "sign_exponent": rep.sign_exponent,
            }))
            .routed(route_name(&rep.route)))
        }
        "verify_lead" => {
            let rep = verify_theorem_constructible(sheaf, opts)?;
            let terms: Vec<Value> = rep
                .terms
                .iter()
                .map(|(t, g)| json!({ "term": t, "grounding": g.to_string() }))
                .collect();
            Ok(OpOutput::pass(json!({
                "r": rep.r,
                "lead_at_one": lead_value(&rep.lead),
                "chi_w": q_value(&rep.chi_w),
                "sign_exponent": rep.sign_exponent,
                "terms": terms,
            }))
            .routed("leading_coefficient"))
        }
        "conductor" => {
            let (cover, lattice) = match single_pushforward(sheaf)? {
                SheafAtom::Pushforward { cover, lattice } => (cover, lattice),
                _ => unreachable!(),
            };
            let c = artin_conductor(cover, lattice)?;
            let local: Vec<Value> = c
                .local
                .iter()
                .map(|(v, f)| json!({ "place": place_value(job.q, v), "exponent": f }))
                .collect();
            Ok(OpOutput::plain(json!({ "local": local, "total": c.total })))
        }
        "fe" => {
            let (cover, lattice) = match single_pushforward(sheaf)? {
                SheafAtom::Pushforward { cover, lattice } => (cover, lattice),
                _ => unreachable!(),
            };
            let rep = check_functional_equation(cover, lattice, opts)?;
            Ok(OpOutput::pass(json!({ "sign": rep.sign, "chi": rep.chi })))
        }
        "r" => Ok(OpOutput::plain(json!({ "r": r_of(sheaf) }))),
        other => Err(Error::Validation(format!("unknown sheaf op {:?}", other))),
    }
}

fn torus_op(job: &BuiltJob, name: &str, op: &str, opts: &LOptions) -> OpResult {
    let BuiltTorus { torus, supplied } = &job.tori[name];
    match op {
        "lfun" => {
            let l = l_torus(torus, opts)?;
            Ok(OpOutput::plain(json!({ "l": ratfn_value(&l) })))
        }
        "rho" => {
            let rho = rho_t(torus, opts)?;
            Ok(OpOutput::plain(json!({
                "rho_t": q_value(&rho),
                "order": -torus.invariant_rank(),
            })))
        }
        "chi_w" => {
            let chi = weilq_core::tori::chi_w_torus(torus, opts)?;
            Ok(OpOutput::plain(json!({ "chi_w": q_value(&chi) })).routed("reciprocal_pair"))
        }
        "class_data" => {
            let c = match supplied {
                Some(c) => c.clone(),
                None => class_data(torus)?,
            };
            Ok(OpOutput::plain(json!({
                "cl_tor": big_value(&c.cl_tor),
                "disc": big_value(&c.disc),
                "units": big_value(&c.units),
                "provenance": c.provenance,
            })))
        }
        "verify_theorem" => {
            let rep = verify_torus_theorem(torus, supplied.as_ref(), opts)?;
            Ok(OpOutput::pass(json!({
                "r": rep.r,
                "chi": rep.chi,
                "rho_t": q_value(&rep.rho_t),
                "chi_w": q_value(&rep.chi_w_class_route),
                "h1_order": big_value(&rep.h1_order),
                "sha_order": big_value(&rep.sha_order),
                "cl_tor": big_value(&rep.class.cl_tor),
                "disc": big_value(&rep.class.disc),
                "units": big_value(&rep.class.units),
                "class_provenance": rep.class.provenance,
            }))
            .routed(rep.sha_route))
        }
        "tau" => {
            let tau = tamagawa_ono(torus);
            Ok(OpOutput::plain(json!({ "tau_ono": q_value(&tau) })))
        }
        "verify_ono" => {
            let rep = verify_ono(torus, supplied.as_ref(), opts)?;
            Ok(OpOutput::pass(json!({
                "q": torus.q(),
                "n": torus.cover().group_order(),
                "tau_ono": q_value(&rep.tau_ono),
                "tau_modern": q_value(&rep.tau_modern),
            }))
            .routed(rep.sha_route))
        }
        other => Err(Error::Validation(format!("unknown torus op {:?}", other))),
    }
}

fn motive_op(job: &BuiltJob, name: &str, op: &str, opts: &LOptions) -> OpResult {
    let m = &job.motives[name];
    match op {
        "x_delta" => {
            let xd = m.x_delta();
            let support: Vec<Value> = xd
                .support
                .iter()
                .map(|loc| {
                    json!({
                        "place": place_value(job.q, &loc.place),
                        "quotient_rank": loc.quotient_rank,
                        "kernel_rank": loc.kernel.cols(),
                    })
                })
                .collect();
            Ok(OpOutput::plain(json!({
                "support": support,
                "total_quotient_rank": xd.total_quotient_rank(),
                "r_m": m.r_m(),
            })))
        }
        "lfun" => {
            let l = l_motive(m, opts)?;
            let lead = laurent_lead(&l, LeadBase::OneMinusQT(m.q()));
            Ok(OpOutput::plain(json!({
                "l": ratfn_value(&l),
                "lead_at_one_over_q": lead_value(&lead),
            })))
        }
        "chi_w" => {
            let chi = weilq_core::motives::chi_w_motive(m, opts)?;
            Ok(OpOutput::plain(json!({ "chi_w": q_value(&chi) })))
        }
        "verify_main" => {
            let rep = verify_theorem_main(m, opts)?;
            Ok(OpOutput::pass(json!({
                "r_m": rep.r_m,
                "lead_at_one_over_q": lead_value(&rep.lead),
                "chi_w": q_value(&rep.chi_w),
                "lie_chi": rep.lie_chi,
                "sign_exponent": rep.sign_exponent,
                "lhs": q_value(&rep.lhs),
                "rhs": q_value(&rep.rhs),
            })))
        }
        other => Err(Error::Validation(format!("unknown motive op {:?}", other))),
    }
}

// ---------------------------------------------------------------------------
// driver

/// Run one command against a built job.  Never panics on math errors; they
/// become the result's verdict or error fields.
pub fn run_command(job: &BuiltJob, cmd: &CommandSpec) -> CommandResult {
    let started = Instant::now();
    let opts = &job.opts;
    let (kind, outcome) = if job.sheaves.contains_key(&cmd.target) {
        ("sheaf", sheaf_op(job, &cmd.target, &cmd.op, opts))
    } else if job.tori.contains_key(&cmd.target) {
        ("torus", torus_op(job, &cmd.target, &cmd.op, opts))
    } else if job.motives.contains_key(&cmd.target) {
        ("motive", motive_op(job, &cmd.target, &cmd.op, opts))
    } else if job.covers.contains_key(&cmd.target) {
        ("cover", cover_op(job, &cmd.target, &cmd.op, opts))
    } else {
        ("lattice", lattice_op(job, &cmd.target, &cmd.op))
    };
    let inputs = job
        .echo
        .get(&format!("{}:{}", kind, cmd.target))
        .cloned()
        .unwrap_or(Value::Null);
    let mut result = CommandResult {
        target: cmd.target.clone(),
        op: cmd.op.clone(),
        inputs,
        outputs: Value::Null,
        verdict: None,
        route: None,
        error: None,
        timing_ms: 0,
    };
    match outcome {
        Ok(out) => {
            result.outputs = out.outputs;
            result.verdict = out.verdict.map(str::to_string);
            result.route = out.route;
        }
        Err(e) if is_verification_failure(&e) => {
            result.verdict = Some("fail".into());
            result.outputs = json!({ "reason": e.to_string(), "code": error_code(&e) });
        }
        Err(e) => {
            result.error = Some(format!("{}: {}", error_code(&e), e));
        }
    }
    result.timing_ms = started.elapsed().as_millis();
    result
}

/// Run every command in the job's list; one failing command never stops its
/// siblings.
pub fn run_job(job: &BuiltJob) -> Report {
    let mut report = Report::new(job.q);
    for cmd in &job.commands {
        report.results.push(run_command(job, cmd));
    }
    report
}

/// Builtin Tamagawa-number table: verify_ono over a (q, n) grid of norm-one
/// tori of constant extensions, no jobspec needed.
pub fn ono_table(qs: &[u32], ns: &[u32], opts: &LOptions) -> Result<Report, SpecError> {
    let mut report = Report::new(0);
    for &q in qs {
        for &n in ns {
            let spec = CommandSpec {
                target: "T".into(),
                op: "verify_ono".into(),
                options: Value::Null,
            };
            let torus = weilq_core::tori::Torus::norm_one_constant(q, n)
                .map_err(|e| SpecError::Validation(e.to_string()))?;
            let job = BuiltJob {
                q,
                covers: Default::default(),
                lattices: Default::default(),
                sheaves: Default::default(),
                tori: [(
                    "T".to_string(),
                    BuiltTorus { torus, supplied: None },
                )]
                .into(),
                motives: Default::default(),
                commands: vec![spec.clone()],
                opts: opts.clone(),
                echo: Default::default(),
            };
            report.results.push(run_command(&job, &spec));
        }
    }
    Ok(report)
}

/// Exact rational read-back of a result field that was serialized as text.
pub fn q_from_value(v: &Value) -> Option<Q> {
    let s = v.as_str()?;
    match s.split_once('/') {
        Some((n, d)) => Some(Q::new(n.parse().ok()?, d.parse().ok()?)),
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}
