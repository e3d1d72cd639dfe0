use std::io::Write;

use lrc_forge::lrc::{self, check_witness, construct, DefiningSetWitness};
use lrc_forge::{FiniteField, Polynomial};
use serde_json::{json, Value};

use crate::descriptor::CodeDescriptor;
use crate::error::CliError;
use crate::{construct_descriptor, emit, read_input, CodeArgs, Settings, VerifyArgs};

#[derive(Debug, Clone)]
struct Check {
    name: &'static str,
    recorded: Value,
    recomputed: Value,
    ok: bool,
}

impl Check {
    fn equal(name: &'static str, recorded: Value, recomputed: Value) -> Self {
        let ok = recorded == recomputed;
        Check {
            name,
            recorded,
            recomputed,
            ok,
        }
    }
}

fn cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.chars().count() > 28 {
        let head: String = s.chars().take(25).collect();
        format!("{head}...")
    } else {
        s
    }
}

fn table(checks: &[Check]) -> String {
    let mut s = format!(
        "{:<24} {:<30} {:<30} {}\n",
        "check", "recorded", "recomputed", "status"
    );
    for c in checks {
        let status = if c.ok { "ok" } else { "MISMATCH" };
        s += &format!(
            "{:<24} {:<30} {:<30} {}\n",
            c.name,
            cell(&c.recorded),
            cell(&c.recomputed),
            status
        );
    }
    s.pop();
    s
}

/// Recomputes every field of `desc` from its parameters and generator.
fn run_checks(desc: &CodeDescriptor, settings: &Settings) -> Result<Vec<Check>, CliError> {
    let params = desc.params();
    let kind = desc.kind()?;
    let field = FiniteField::with_size(desc.q)?;
    let g = Polynomial::from_json(&field, &desc.generator)?;
    let mut checks = Vec::new();

    let rebuilt = construct(&params, kind)?;
    checks.push(Check::equal(
        "generator",
        desc.generator.clone(),
        rebuilt.code().generator().to_json(),
    ));
    let divides = g.divides_xn_minus_1(desc.n)?;
    checks.push(Check::equal("divides x^n - 1", json!(true), json!(divides)));
    if !divides {
        return Ok(checks);
    }

    let code = desc.code()?;
    let m = lrc::measure(&code, &params, &settings.verify)?;
    checks.push(Check::equal("k", json!(desc.k), json!(m.k)));
    checks.push(Check::equal(
        "k (closed form)",
        json!(desc.k),
        json!(kind.expected_dimension(&params)),
    ));
    checks.push(Check::equal(
        "d_exact",
        json!(desc.d_exact),
        json!(m.d_exact),
    ));
    checks.push(Check::equal(
        "d_bch_lower",
        json!(desc.d_bch_lower),
        json!(m.bch_lower),
    ));
    checks.push(Check::equal(
        "singleton_bound",
        json!(desc.singleton_bound),
        json!(m.singleton_bound),
    ));
    let from_recorded =
        desc.d_exact.map(|d| d as i64) == Some(desc.singleton_bound) && desc.locality.direct;
    checks.push(Check::equal(
        "optimal (from record)",
        json!(desc.optimal),
        json!(from_recorded),
    ));
    checks.push(Check::equal(
        "optimal",
        json!(desc.optimal),
        json!(m.optimal),
    ));

    let recorded = &desc.locality.defining_set;
    let witness_ok = match &recorded.witness {
        Some(w) => check_witness(
            &code,
            desc.r,
            desc.delta,
            &DefiningSetWitness {
                ell: w.ell.clone(),
                step: w.step,
            },
        )?,
        None => !recorded.holds,
    };
    checks.push(Check::equal(
        "defining-set locality",
        json!(recorded.holds),
        json!(m.defining_set.is_some()),
    ));
    checks.push(Check {
        name: "defining-set witness",
        recorded: serde_json::to_value(&recorded.witness).expect("witness serializes"),
        recomputed: json!(if witness_ok { "valid" } else { "invalid" }),
        ok: witness_ok,
    });
    checks.push(Check::equal(
        "direct locality",
        json!(desc.locality.direct),
        json!(m.direct.holds),
    ));
    let fresh = CodeDescriptor::from_measurements(&params, kind, &g, &m)?;
    checks.push(Check::equal(
        "repair_groups",
        json!(desc.repair_groups),
        json!(fresh.repair_groups),
    ));
    Ok(checks)
}

pub(crate) fn cmd_verify(
    args: &VerifyArgs,
    settings: &Settings,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let desc = match &args.input {
        Some(path) => CodeDescriptor::parse(&read_input(path)?)?,
        None => {
            let missing = |flag: &str| CliError::BadInput(format!("verify needs --in or --{flag}"));
            let code = CodeArgs {
                q: args.q.ok_or_else(|| missing("q"))?,
                n: args.n.ok_or_else(|| missing("n"))?,
                r: args.r.ok_or_else(|| missing("r"))?,
                delta: args.delta.ok_or_else(|| missing("delta"))?,
                kind: args.kind.clone().ok_or_else(|| missing("kind"))?,
                d: args.d,
            };
            construct_descriptor(&code, settings)?
        }
    };
    let checks = run_checks(&desc, settings)?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.ok).map(|c| c.name).collect();
    if args.json {
        let rows: Vec<Value> = checks
            .iter()
            .map(|c| json!({"check": c.name, "recorded": c.recorded, "recomputed": c.recomputed, "ok": c.ok}))
            .collect();
        let doc = json!({"ok": failed.is_empty(), "checks": rows});
        emit(
            out,
            &serde_json::to_string_pretty(&doc).expect("report serializes"),
        )?;
    } else {
        emit(
            out,
            &format!(
                "{} {} [{}]",
                desc.construction,
                desc.params(),
                if failed.is_empty() { "PASS" } else { "FAIL" }
            ),
        )?;
        emit(out, &table(&checks))?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(failed.join(", ")))
    }
}
