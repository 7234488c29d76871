//! End-to-end acceptance criteria. Runs as a plain binary and prints one
//! PASS/FAIL line per criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use shiftminor::checks::{self, random_matrix};
use shiftminor::circulant::{enumerate_minors, laplace_expansion};
use shiftminor::completion::{self, DEFAULT_MAX_ATTEMPTS};
use shiftminor::{
    ColumnSet, FieldSpec, Limits, MinorSystem, Monomial, MonomialOrder, Polynomial, ProblemInstance, ShiftShape,
    Strategy,
};

const BIN: &str = env!("CARGO_BIN_EXE_shiftminor");

fn shiftminor(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn shiftminor")
}

fn shape(n: usize, d: usize) -> ShiftShape {
    ShiftShape::new(n, d).unwrap()
}

fn shapes(max_n: usize) -> impl Iterator<Item = ShiftShape> {
    (1..=max_n).flat_map(|n| (1..=n).map(move |d| shape(n, d)))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn mono(exps: &[u32]) -> Monomial {
    Monomial::new(exps.to_vec())
}

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1() -> Outcome {
    let out = shiftminor(&["minors", "--n", "4", "--d", "3", "--format", "json"]);
    ensure(out.status.success(), || {
        format!("minors exited {:?}", out.status.code())
    })?;
    let json: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let got: BTreeSet<String> = json["minors"]
        .as_array()
        .ok_or("no minors array")?
        .iter()
        .map(|m| m["polynomial"].as_str().unwrap_or_default().to_string())
        .collect();
    let want: BTreeSet<String> = ["x1^2", "x1*x2", "x1*x3", "x2^2 - x1*x3", "x2*x3", "x3^2"]
        .map(String::from)
        .into();
    ensure(got == want, || format!("minors {got:?}"))?;

    let q = FieldSpec::rationals();
    let sys = MinorSystem::new(shape(4, 3), MonomialOrder::GrevLex, q, Limits::default()).map_err(|e| e.to_string())?;
    let names = |ms: Vec<Monomial>| ms.iter().map(ToString::to_string).collect::<BTreeSet<_>>();
    let all = names(sys.degree_monomials());
    ensure(all.len() == 6, || format!("degree-2 monomials {all:?}"))?;
    let grevlex = names(sys.lm_set());
    ensure(grevlex == all, || format!("grevlex LM set {grevlex:?}"))?;
    let mut without = all.clone();
    without.remove(&mono(&[0, 2, 0]).to_string());
    for order in [MonomialOrder::Lex, MonomialOrder::GrLex] {
        let lms = names(sys.with_order(order).lm_set());
        ensure(lms == without, || format!("{order} LM set {lms:?}"))?;
    }
    Ok("6 minors as expected; grevlex LMs complete, lex/grlex omit x2^2".into())
}

fn ac2() -> Outcome {
    let mut count = 0;
    for s in shapes(8) {
        let (n, d) = (s.n().to_string(), s.d().to_string());
        let out = shiftminor(&["check-groebner", "--n", &n, "--d", &d, "--order", "grevlex"]);
        ensure(out.status.code() == Some(0), || {
            format!(
                "n={n} d={d} exited {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stdout)
            )
        })?;
        count += 1;
    }
    Ok(format!("{count} shapes certified"))
}

fn ac3() -> Outcome {
    let q = FieldSpec::rationals();
    let grlex = MinorSystem::new(shape(4, 3), MonomialOrder::GrLex, q, Limits::default()).map_err(|e| e.to_string())?;
    let x2sq =
        Polynomial::term(grlex.ring(), mono(&[0, 2, 0]), shiftminor::Scalar::one(q)).map_err(|e| e.to_string())?;
    let (p, r) = grlex
        .membership_counterexample()
        .map_err(|e| e.to_string())?
        .ok_or("no counterexample under grlex")?;
    ensure(p == x2sq && !r.is_zero(), || {
        format!("counterexample {p} with remainder {r}")
    })?;

    let grevlex = grlex.with_order(MonomialOrder::GrevLex);
    let x2sq = x2sq.with_order(MonomialOrder::GrevLex);
    let nf = shiftminor::poly::normal_form(&x2sq, &grevlex.polynomials()).map_err(|e| e.to_string())?;
    ensure(nf.is_zero(), || format!("grevlex normal form {nf}"))?;
    ensure(
        grevlex
            .membership_counterexample()
            .map_err(|e| e.to_string())?
            .is_none(),
        || "grevlex produced a counterexample".into(),
    )?;
    Ok(format!("grlex: {p} -> {r}; grevlex: x2^2 -> 0"))
}

fn ac4() -> Outcome {
    let mut total = 0;
    for s in shapes(10) {
        let summary = checks::bijection(s, Limits::default()).map_err(|e| e.to_string())?;
        ensure(summary.passed(), || format!("{summary:?}"))?;
        let expected = binomial(s.n(), s.d() - 1);
        ensure(summary.column_sets == expected && summary.monomials == expected, || {
            format!(
                "{s}: {} column sets, {} monomials, want {expected}",
                summary.column_sets, summary.monomials
            )
        })?;
        for h in ColumnSet::all(s) {
            let back = ColumnSet::from_exponents(&h.exponents(), s).map_err(|e| e.to_string())?;
            ensure(back == h, || format!("{s}: {h} -> {back}"))?;
        }
        total += expected;
    }
    Ok(format!("{total} column sets roundtrip over 55 shapes"))
}

fn ac5() -> Outcome {
    let field = FieldSpec::prime(10007).unwrap();
    let mut evaluations = 0;
    for (i, s) in shapes(7).enumerate() {
        let summary = checks::laplace_identity(s, field, 100, 10, 0xAC5 + i as u64, Limits::default())
            .map_err(|e| e.to_string())?;
        ensure(summary.passed(), || format!("{summary:?}"))?;
        evaluations += summary.evaluations;
    }
    Ok(format!(
        "28 shapes x 100 F over fp:10007, {evaluations} point evaluations agree"
    ))
}

/// Random integer `F` of full row rank `d-1`, redrawn until it qualifies.
fn random_full_rank(rng: &mut ChaCha8Rng, s: ShiftShape) -> ProblemInstance {
    let q = FieldSpec::rationals();
    loop {
        let f = random_matrix(rng, q, s.d() - 1, s.n());
        if f.rank() == s.d() - 1 {
            return ProblemInstance::new(s, f).unwrap();
        }
    }
}

fn ac6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC6);
    let mut worst = 0;
    for (n, d) in [(4, 2), (5, 3), (6, 4), (8, 5)] {
        let s = shape(n, d);
        for trial in 0..100 {
            let inst = random_full_rank(&mut rng, s);
            let result = completion::solve(&inst, Strategy::Grid, trial, DEFAULT_MAX_ATTEMPTS, Limits::default())
                .map_err(|e| format!("{s} trial {trial}: {e}"))?;
            let ok = completion::verify(&inst, &result.x).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{s} trial {trial}: verify rejected {:?}", result.x))?;
            worst = worst.max(result.attempts);
        }
    }
    Ok(format!(
        "400/400 solved and verified, at most {worst} grid points tried"
    ))
}

fn ac7() -> Outcome {
    let q = FieldSpec::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC7);
    let mut checked = 0;
    for s in shapes(7) {
        let degree = (s.n() - s.d() + 1) as u32;
        let ring = s.ring(MonomialOrder::GrevLex, q);
        for m in enumerate_minors(s, ring, Limits::default()).map_err(|e| e.to_string())? {
            ensure(m.poly.homogeneous_degree() == Some(degree), || {
                format!("{s}: minor {} = {}", m.columns, m.poly)
            })?;
            checked += 1;
        }
        for _ in 0..5 {
            let f = random_matrix(&mut rng, q, s.d() - 1, s.n());
            let det = laplace_expansion(s, ring, &f, Limits::default()).map_err(|e| e.to_string())?;
            ensure(det.is_zero() || det.homogeneous_degree() == Some(degree), || {
                format!("{s}: det M = {det}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} polynomials homogeneous of degree n-d+1"))
}

fn ac8() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let input = dir.join("acceptance-ac8.json");
    std::fs::write(
        &input,
        r#"{"n": 5, "d": 3, "entries": [[1, 0, 2, 0, 1], [0, 3, 0, 1, 1]]}"#,
    )
    .map_err(|e| e.to_string())?;
    let input = input.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["minors", "--n", "5", "--d", "3"],
        vec!["leading-set", "--n", "5", "--d", "3", "--order", "lex"],
        vec!["check-groebner", "--n", "4", "--d", "3", "--order", "grlex"],
        vec![
            "complete-basis",
            "--input",
            input,
            "--strategy",
            "random",
            "--seed",
            "7",
        ],
        vec![
            "complete-basis",
            "--input",
            input,
            "--strategy",
            "grid",
            "--format",
            "json",
        ],
        vec!["laplace-check", "--n", "5", "--d", "3", "--seed", "42"],
        vec!["bijection-check", "--n", "6", "--d", "3"],
        vec!["verify", "--n", "4", "--d", "3", "--seed", "42", "--format", "json"],
    ];
    for args in &runs {
        let a = shiftminor(args);
        let b = shiftminor(args);
        ensure(a.stdout == b.stdout && a.status == b.status, || {
            format!("{} differs between runs", args.join(" "))
        })?;
        ensure(!a.stdout.is_empty(), || format!("{} printed nothing", args.join(" ")))?;
    }
    Ok(format!("{} invocations byte-identical across two runs", runs.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: "AC1",
            title: "worked example minors and LM sets (n=4, d=3)",
            budget: Duration::from_secs(1),
            run: ac1,
        },
        Criterion {
            id: "AC2",
            title: "check-groebner grevlex exits 0 for 1<=d<=n<=8",
            budget: Duration::from_secs(120),
            run: ac2,
        },
        Criterion {
            id: "AC3",
            title: "grlex counterexample x2^2, grevlex reduces it to 0",
            budget: Duration::from_secs(1),
            run: ac3,
        },
        Criterion {
            id: "AC4",
            title: "column set bijection for n<=10",
            budget: Duration::from_secs(30),
            run: ac4,
        },
        Criterion {
            id: "AC5",
            title: "Laplace identity n<=7, 100 F over fp:10007, 10 points",
            budget: Duration::from_secs(120),
            run: ac5,
        },
        Criterion {
            id: "AC6",
            title: "basis completion 100/100 over Q for four shapes",
            budget: Duration::from_secs(120),
            run: ac6,
        },
        Criterion {
            id: "AC7",
            title: "minors and det M homogeneous of degree n-d+1, n<=7",
            budget: Duration::from_secs(10),
            run: ac7,
        },
        Criterion {
            id: "AC8",
            title: "byte-identical CLI output with fixed seeds",
            budget: Duration::from_secs(120),
            run: ac8,
        },
    ];
    let mut failed = 0;
    for Criterion { id, title, budget, run } in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(detail) if elapsed <= budget => (true, detail),
            Ok(detail) => (false, format!("{detail}; took longer than {budget:?}")),
            Err(detail) => (false, detail),
        };
        failed += usize::from(!ok);
        println!(
            "{} {id} {title} [{:.3}s / {}s]: {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
