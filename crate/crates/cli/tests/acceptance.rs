//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use lrc_forge::code::{column_search, enumeration_distance};
use lrc_forge::lrc::{
    check_witness, locality_check_direct, verify, DefiningSetWitness, LrcReport, VerifyConfig,
};
use lrc_forge::{
    ConstructionKind, CyclicCode, DistanceConfig, DistanceOutcome, FiniteField, LrcParams,
    Parallelism, Polynomial,
};
use lrc_forge_cli::{simulate, CodeDescriptor, ErasureSpec, Settings};

const ENUMERATION_LIMIT: u128 = 1 << 20;

struct Fixture {
    name: String,
    report: LrcReport,
}

impl Fixture {
    fn params(&self) -> &LrcParams {
        self.report.params()
    }

    fn d(&self) -> usize {
        self.report
            .d_exact
            .expect("fixture distance is at most the bound")
    }

    fn message_space(&self) -> Option<u128> {
        (self.params().q as u128).checked_pow(self.report.k as u32)
    }
}

fn build(q: u64, n: usize, r: usize, delta: usize, kind: ConstructionKind) -> Fixture {
    let params = LrcParams::new(q, n, r, delta);
    let report = verify(&params, kind, &VerifyConfig::default())
        .unwrap_or_else(|e| panic!("{kind} with {params} failed to verify: {e}"));
    Fixture {
        name: format!("{kind} {params}"),
        report,
    }
}

struct Fixtures {
    family_q11: Vec<Fixture>,
    gf19_n27: Fixture,
    gf7_n30: Fixture,
    remark3: Vec<Fixture>,
    distance_six: Fixture,
}

impl Fixtures {
    fn all(&self) -> impl Iterator<Item = &Fixture> {
        self.family_q11
            .iter()
            .chain([&self.gf19_n27, &self.gf7_n30])
            .chain(&self.remark3)
            .chain(std::iter::once(&self.distance_six))
    }
}

fn fixtures() -> Fixtures {
    Fixtures {
        family_q11: (1..=6)
            .map(|i| build(11, 5 * i, 3, 3, ConstructionKind::T1))
            .collect(),
        gf19_n27: build(19, 27, 4, 6, ConstructionKind::T2),
        gf7_n30: build(7, 30, 4, 3, ConstructionKind::T3),
        remark3: (4..=6)
            .map(|d| build(7, 30, 4, 3, ConstructionKind::Remark3 { d }))
            .collect(),
        distance_six: build(13, 21, 5, 3, ConstructionKind::T4),
    }
}

type Outcome = Result<String, String>;
type Criterion = fn(&Fixtures) -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expect_code(f: &Fixture, k: usize, d: usize, bound: i64) -> Result<(), String> {
    let r = &f.report;
    ensure(r.k == k, || {
        format!("{}: k = {}, expected {k}", f.name, r.k)
    })?;
    ensure(r.d_exact == Some(d), || {
        format!("{}: d = {:?}, expected {d}", f.name, r.d_exact)
    })?;
    ensure(r.singleton_bound == bound, || {
        format!(
            "{}: bound = {}, expected {bound}",
            f.name, r.singleton_bound
        )
    })?;
    ensure(r.optimal, || format!("{}: not optimal", f.name))
}

fn criterion_1(fx: &Fixtures) -> Outcome {
    for f in &fx.family_q11 {
        let n = f.params().n;
        expect_code(f, 3 * n / 5 - 1, 4, 4)?;
        let small = f.message_space().is_some_and(|s| s <= ENUMERATION_LIMIT);
        let dist = &f.report.distance;
        if small {
            ensure(dist.enumeration == Some(4), || {
                format!("{}: enumeration oracle gave {:?}", f.name, dist.enumeration)
            })?;
        } else {
            ensure(
                dist.column_search == Some(DistanceOutcome::Exact(4)),
                || format!("{}: column search gave {:?}", f.name, dist.column_search),
            )?;
        }
    }
    Ok("n = 5..30: k = 3n/5 - 1, d = 4 = bound, optimal".into())
}

fn criterion_2(fx: &Fixtures) -> Outcome {
    let f = &fx.gf19_n27;
    expect_code(f, 10, 8, 8)?;
    ensure(
        f.report.distance.column_search == Some(DistanceOutcome::Exact(8)),
        || format!("column search gave {:?}", f.report.distance.column_search),
    )?;
    Ok("[27,10,8], bound 8, optimal".into())
}

fn criterion_3(fx: &Fixtures) -> Outcome {
    let f = &fx.gf7_n30;
    expect_code(f, 17, 6, 6)?;
    ensure(
        f.report.distance.column_search == Some(DistanceOutcome::Exact(6)),
        || format!("column search gave {:?}", f.report.distance.column_search),
    )?;
    Ok("[30,17,6], bound 6, optimal".into())
}

fn criterion_4(fx: &Fixtures) -> Outcome {
    for f in &fx.remark3 {
        let ConstructionKind::Remark3 { d } = f.report.kind() else {
            unreachable!()
        };
        // k = rρ - (d - δ) with r = 4, ρ = 5, δ = 3.
        expect_code(f, 20 - (d - 3), d, d as i64)?;
    }
    Ok("d = 4, 5, 6 give [30,19,4], [30,18,5], [30,17,6], all optimal".into())
}

fn criterion_5(fx: &Fixtures) -> Outcome {
    let f = &fx.distance_six;
    expect_code(f, 12, 6, 6)?;
    let q = f.params().q;
    let ext = f.report.lrc.extension_generator();
    for (i, c) in ext.coefficients().iter().enumerate() {
        ensure(c.pow(q) == *c, || {
            format!("coefficient of x^{i} is not fixed by Frobenius")
        })?;
    }
    Ok(format!(
        "[21,12,6], bound 6, optimal, {} coefficients in GF(13)",
        ext.coefficients().len()
    ))
}

fn criterion_6(fx: &Fixtures) -> Outcome {
    for f in fx.all() {
        let r = &f.report;
        let d = f.d();
        ensure(r.bch_lower <= d, || {
            format!("{}: BCH {} > d {d}", f.name, r.bch_lower)
        })?;
        ensure(d as i64 == r.singleton_bound, || {
            format!("{}: d {d} != bound {}", f.name, r.singleton_bound)
        })?;
        if r.kind() == ConstructionKind::T1 {
            let delta = f.params().delta;
            ensure(r.bch_lower == delta + 1, || {
                format!("{}: BCH {} != δ+1", f.name, r.bch_lower)
            })?;
        }
    }
    Ok("BCH ≤ d = bound on every fixture; BCH = δ+1 for T1".into())
}

fn criterion_7(fx: &Fixtures) -> Outcome {
    let mut checked = Vec::new();
    for f in fx.all() {
        if !f.message_space().is_some_and(|s| s <= ENUMERATION_LIMIT) {
            continue;
        }
        let code = f.report.lrc.code();
        let by_enum = enumeration_distance(
            code.generator_matrix(),
            ENUMERATION_LIMIT,
            Parallelism::Parallel,
        )
        .map_err(|e| e.to_string())?
        .ok_or("enumeration found no nonzero codeword")?;
        let by_cols = column_search(
            code.expanded_parity_check(),
            code.n(),
            u128::MAX,
            Parallelism::Parallel,
        )
        .map_err(|e| e.to_string())?;
        ensure(by_cols.outcome == DistanceOutcome::Exact(by_enum), || {
            format!(
                "{}: enumeration {by_enum}, column search {:?}",
                f.name, by_cols.outcome
            )
        })?;
        checked.push(f.name.clone());
    }
    ensure(!checked.is_empty(), || "no fixture has q^k ≤ 2^20".into())?;
    Ok(format!(
        "oracles agree on {} fixtures ({})",
        checked.len(),
        checked.join("; ")
    ))
}

fn construction_witness(kind: ConstructionKind, delta: usize) -> DefiningSetWitness {
    match kind {
        ConstructionKind::T4 => DefiningSetWitness {
            ell: vec![-1, 1],
            step: 2,
        },
        _ => DefiningSetWitness {
            ell: (1..delta as i64).collect(),
            step: 1,
        },
    }
}

fn criterion_8(fx: &Fixtures) -> Outcome {
    for f in fx.all() {
        let p = f.params();
        let w = construction_witness(f.report.kind(), p.delta);
        let code = f.report.lrc.code();
        let ok = check_witness(code, p.r, p.delta, &w).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{}: witness {w:?} rejected", f.name))?;
        ensure(f.report.defining_set.is_some(), || {
            format!("{}: defining-set search found nothing", f.name)
        })?;
        ensure(f.report.direct.holds, || {
            format!("{}: direct locality check failed", f.name)
        })?;
    }
    // Single parity-check [5,4,2] code: no 3 coordinates leave distance 2.
    let field = FiniteField::with_size(11).map_err(|e| e.to_string())?;
    let minus_one = field.element(10).map_err(|e| e.to_string())?;
    let g = Polynomial::new(&field, &[minus_one, field.one()]).map_err(|e| e.to_string())?;
    let code = CyclicCode::from_generator(&field, 5, &g).map_err(|e| e.to_string())?;
    ensure(code.k() == 4, || "control code is not [5,4]".into())?;
    let direct = locality_check_direct(&code, 2, 2, &DistanceConfig::with_ceiling(3))
        .map_err(|e| e.to_string())?;
    ensure(!direct.holds, || {
        "[5,4,2] control passed the direct check".into()
    })?;
    Ok(
        "construction witnesses accepted, direct check holds; [5,4,2] (2,2) control rejected"
            .into(),
    )
}

fn criterion_9(fx: &Fixtures) -> Outcome {
    let settings = Settings {
        parallelism: Parallelism::Parallel,
        verify: VerifyConfig::default(),
    };
    let trials = 1000;
    let mut runs = 0;
    for (i, f) in fx.all().enumerate() {
        let desc = CodeDescriptor::from_report(&f.report).map_err(|e| e.to_string())?;
        let p = f.params();
        let bound = p.r + p.delta - 2;
        for w in 1..p.delta {
            let stats = simulate(
                &desc,
                &ErasureSpec::Local(w),
                trials,
                i as u64,
                false,
                &settings,
            )
            .map_err(|e| format!("{}: {e}", f.name))?;
            ensure(
                stats.successes == trials && stats.paths.local == trials,
                || format!("{} local:{w}: {stats:?}", f.name),
            )?;
            ensure(stats.contact_set.max.is_some_and(|m| m <= bound), || {
                format!(
                    "{} local:{w}: contact set {:?} over r+δ−2 = {bound}",
                    f.name, stats.contact_set.max
                )
            })?;
            runs += 1;
        }
        let w = f.d() - 1;
        let stats = simulate(
            &desc,
            &ErasureSpec::Global(w),
            trials,
            i as u64,
            false,
            &settings,
        )
        .map_err(|e| format!("{}: {e}", f.name))?;
        ensure(
            stats.successes == trials && stats.paths.global == trials,
            || format!("{} global:{w}: {stats:?}", f.name),
        )?;
        runs += 1;
    }
    Ok(format!("{runs} runs of {trials} trials, zero failures"))
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = lrc_forge_cli::run(
        std::iter::once("lrc-forge").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8_lossy(&err).into_owned())
}

fn criterion_10(_: &Fixtures) -> Outcome {
    for n in 1..=300usize {
        let n = n.to_string();
        let (code, err) = cli(&[
            "construct",
            "--q",
            "5",
            "--n",
            &n,
            "--r",
            "4",
            "--delta",
            "3",
            "--kind",
            "t4",
        ]);
        ensure(code == 2 && err.contains("n must be odd"), || {
            format!("t4 q=5 n={n}: exit {code}, stderr {err:?}")
        })?;
    }
    for kind in [["--kind", "t1"], ["--kind", "t2"]] {
        let mut args = vec![
            "construct",
            "--q",
            "11",
            "--n",
            "11",
            "--r",
            "3",
            "--delta",
            "3",
        ];
        args.extend(kind);
        let (code, err) = cli(&args);
        ensure(code == 2 && err.contains("gcd(n,q) ≠ 1"), || {
            format!("{kind:?} q=n=11: exit {code}, stderr {err:?}")
        })?;
    }
    Ok("t4 (q=5, r=4, δ=3) rejected for n = 1..300; q = n = 11 rejected; exit 2".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let fx = match catch_unwind(fixtures) {
        Ok(fx) => fx,
        Err(_) => {
            for i in 1..=10 {
                println!("criterion {i:>2}: FAIL (fixture construction panicked)");
            }
            return ExitCode::FAILURE;
        }
    };
    println!("fixtures built in {:.2?}", start.elapsed());
    let criteria: [(&str, Criterion); 10] = [
        ("q=11 distance-4 family", criterion_1),
        ("[27,10,8] over GF(19)", criterion_2),
        ("[30,17,6] over GF(7)", criterion_3),
        ("interpolating family sweep", criterion_4),
        ("distance-6 family [21,12,6]", criterion_5),
        ("bound sanity", criterion_6),
        ("oracle cross-check", criterion_7),
        ("locality", criterion_8),
        ("repair", criterion_9),
        ("precondition rejection", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&fx)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2}: PASS {name}: {detail} ({elapsed:.2?})",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!(
        "{} passed, {failed} failed, total {:.2?}",
        10 - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
