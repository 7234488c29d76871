//! `shiftminor`: minors of the banded shift matrix, Groebner certification
//! and basis completion from the command line.
//!
//! Exit codes: 0 success, 1 mathematical negative (not a Groebner basis,
//! rank-deficient input, no completion found, failed identity), 2 usage or
//! I/O error, 3 internal invariant violation.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use shiftminor::checks;
use shiftminor::completion::{self, DEFAULT_MAX_ATTEMPTS, DEFAULT_SEED};
use shiftminor::{Error, FieldSpec, Limits, MinorSystem, MonomialOrder, ProblemInstance, ShiftShape, Strategy};

#[derive(Parser)]
#[command(name = "shiftminor", version, about = "Exact algebra for the banded shift matrix")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every maximal minor with its leading monomial.
    Minors {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Print the set of leading monomials of the minors.
    LeadingSet {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Check Buchberger's criterion; exit 1 unless the minors are certified.
    CheckGroebner {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Complete the rows of F to a basis with shifts of one vector.
    CompleteBasis {
        /// ScalarMatrix JSON holding F, optionally with `n` and `d`.
        #[arg(long)]
        input: std::path::PathBuf,
        /// Overrides (or must agree with) the `field` key of the input.
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value = "grid")]
        strategy: Strategy,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
        max_attempts: usize,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Compare the complementary-minor expansion of det M with direct determinants.
    LaplaceCheck {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Exhaustive column set <-> exponent vector roundtrip.
    BijectionCheck {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Run the Laplace, bijection and leading-monomial checks together.
    Verify {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct ShapeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
}

impl ShapeArgs {
    fn shape(&self) -> Result<ShiftShape, Error> {
        ShiftShape::new(self.n, self.d)
    }
}

#[derive(Args)]
struct RingArgs {
    #[arg(long, default_value = "grevlex")]
    order: MonomialOrder,
    #[arg(long, default_value = "q")]
    field: FieldSpec,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value = "fp:10007")]
    field: FieldSpec,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Random evaluation points per trial.
    #[arg(long, default_value_t = 10)]
    points: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct Caps {
    #[arg(long, default_value_t = Limits::default().max_minors)]
    max_minors: usize,
    #[arg(long, default_value_t = Limits::default().max_det_side)]
    max_det_side: usize,
}

impl Caps {
    fn limits(&self) -> Limits {
        Limits {
            max_minors: self.max_minors,
            max_det_side: self.max_det_side,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// What to print and how to exit.
struct Report {
    text: String,
    json: Value,
    success: bool,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::RankDeficient { .. } | Error::AttemptsExceeded { .. } | Error::GridExhausted { .. } => 1,
        Error::Internal(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match &cli.command {
        Command::Minors { out, .. }
        | Command::LeadingSet { out, .. }
        | Command::CheckGroebner { out, .. }
        | Command::CompleteBasis { out, .. }
        | Command::LaplaceCheck { out, .. }
        | Command::BijectionCheck { out, .. }
        | Command::Verify { out, .. } => out.format,
    };
    match run(cli.command) {
        Ok(report) => {
            match format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("json")),
            }
            ExitCode::from(if report.success { 0 } else { 1 })
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn run(command: Command) -> Result<Report, Error> {
    match command {
        Command::Minors { shape, ring, caps, .. } => minors(shape.shape()?, ring, caps.limits()),
        Command::LeadingSet { shape, ring, caps, .. } => leading_set(shape.shape()?, ring, caps.limits()),
        Command::CheckGroebner { shape, ring, caps, .. } => check_groebner(shape.shape()?, ring, caps.limits()),
        Command::CompleteBasis {
            input,
            field,
            n,
            d,
            strategy,
            seed,
            max_attempts,
            caps,
            ..
        } => {
            let src = std::fs::read_to_string(&input)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", input.display())))?;
            let value: Value = serde_json::from_str(&src).map_err(|e| Error::Parse(e.to_string()))?;
            let inst = ProblemInstance::from_json(&value, field)?;
            for (flag, given, actual) in [("n", n, inst.shape().n()), ("d", d, inst.shape().d())] {
                if given.is_some_and(|g| g != actual) {
                    return Err(Error::DimensionMismatch(format!(
                        "--{flag} {} disagrees with the input ({actual})",
                        given.unwrap()
                    )));
                }
            }
            complete_basis(&inst, strategy, seed, max_attempts, caps.limits())
        }
        Command::LaplaceCheck {
            shape, sampling, caps, ..
        } => {
            let s = checks::laplace_identity(
                shape.shape()?,
                sampling.field,
                sampling.trials,
                sampling.points,
                sampling.seed,
                caps.limits(),
            )?;
            Ok(Report {
                text: laplace_line(&s),
                json: s.to_json(),
                success: s.passed(),
            })
        }
        Command::BijectionCheck { shape, caps, .. } => {
            let s = checks::bijection(shape.shape()?, caps.limits())?;
            Ok(Report {
                text: bijection_line(&s),
                json: s.to_json(),
                success: s.passed(),
            })
        }
        Command::Verify {
            shape, sampling, caps, ..
        } => verify(shape.shape()?, sampling, caps.limits()),
    }
}

fn header(shape: ShiftShape, ring: &RingArgs) -> String {
    format!(
        "# n={} d={} order={} field={}\n",
        shape.n(),
        shape.d(),
        ring.order,
        ring.field
    )
}

fn minors(shape: ShiftShape, ring: RingArgs, limits: Limits) -> Result<Report, Error> {
    let sys = MinorSystem::new(shape, ring.order, ring.field, limits)?;
    let mut text = header(shape, &ring);
    let mut rows = Vec::new();
    for m in sys.minors() {
        let lm = m.poly.leading_monomial()?;
        writeln!(text, "{}\t{}\t{}", m.columns, m.poly, lm).unwrap();
        rows.push(json!({
            "columns": m.columns.indices(),
            "polynomial": m.poly.to_string(),
            "leading_monomial": lm.to_string(),
        }));
    }
    Ok(Report {
        text,
        json: json!({
            "n": shape.n(),
            "d": shape.d(),
            "order": ring.order.name(),
            "field": ring.field.to_string(),
            "minors": rows,
        }),
        success: true,
    })
}

fn leading_set(shape: ShiftShape, ring: RingArgs, limits: Limits) -> Result<Report, Error> {
    let sys = MinorSystem::new(shape, ring.order, ring.field, limits)?;
    let lms: Vec<String> = sys.lm_set().iter().map(ToString::to_string).collect();
    let missing: Vec<String> = sys
        .missing_leading_monomials()
        .iter()
        .map(ToString::to_string)
        .collect();
    let mut text = header(shape, &ring);
    writeln!(text, "leading monomials ({}): {}", lms.len(), lms.join(", ")).unwrap();
    writeln!(text, "complete: {}", missing.is_empty()).unwrap();
    if !missing.is_empty() {
        writeln!(text, "missing: {}", missing.join(", ")).unwrap();
    }
    Ok(Report {
        text,
        json: json!({
            "n": shape.n(),
            "d": shape.d(),
            "order": ring.order.name(),
            "field": ring.field.to_string(),
            "leading_monomials": lms,
            "missing_leading_monomials": missing,
            "complete": missing.is_empty(),
        }),
        success: true,
    })
}

fn check_groebner(shape: ShiftShape, ring: RingArgs, limits: Limits) -> Result<Report, Error> {
    let sys = MinorSystem::new(shape, ring.order, ring.field, limits)?;
    let report = sys.check_buchberger()?;
    let counterexample = if report.certified() {
        None
    } else {
        sys.membership_counterexample()?
    };

    let mut text = header(shape, &ring);
    writeln!(text, "s-pairs: {}", report.pair_count).unwrap();
    writeln!(text, "nonzero remainders: {}", report.failures.len()).unwrap();
    writeln!(text, "leading monomials complete: {}", report.lm_set_complete).unwrap();
    if !report.missing_leading_monomials.is_empty() {
        let missing: Vec<String> = report
            .missing_leading_monomials
            .iter()
            .map(ToString::to_string)
            .collect();
        writeln!(text, "missing leading monomials: {}", missing.join(", ")).unwrap();
    }
    for f in &report.failures {
        writeln!(
            text,
            "pair {} {}: S = {}, remainder = {}",
            f.first, f.second, f.s_polynomial, f.remainder
        )
        .unwrap();
    }
    if let Some((p, r)) = &counterexample {
        writeln!(text, "counterexample: {p} is in the ideal but has normal form {r}").unwrap();
    }
    writeln!(text, "verdict: {}", report.verdict).unwrap();

    let mut json = report.to_json();
    json["counterexample"] = match &counterexample {
        Some((p, r)) => json!({ "polynomial": p.to_string(), "remainder": r.to_string() }),
        None => Value::Null,
    };
    Ok(Report {
        text,
        json,
        success: report.certified(),
    })
}

fn complete_basis(
    inst: &ProblemInstance,
    strategy: Strategy,
    seed: u64,
    max_attempts: usize,
    limits: Limits,
) -> Result<Report, Error> {
    let result = completion::solve(inst, strategy, seed, max_attempts, limits)?;
    if !completion::verify(inst, &result.x)? {
        return Err(Error::Internal("accepted x does not give a basis".into()));
    }
    let xs: Vec<String> = result.x.iter().map(ToString::to_string).collect();
    let shape = inst.shape();
    let text = format!(
        "# n={} d={} field={}\nx = ({})\ndet M = {}\nstrategy = {}\nattempts = {}\n",
        shape.n(),
        shape.d(),
        inst.field(),
        xs.join(", "),
        result.det_value,
        result.strategy,
        result.attempts
    );
    Ok(Report {
        text,
        json: result.to_json(),
        success: true,
    })
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn laplace_line(s: &checks::LaplaceSummary) -> String {
    format!(
        "{} laplace-identity n={} d={}: {}/{} expansions equal det M, {}/{} evaluations agree, {} non-homogeneous\n",
        status(s.passed()),
        s.shape.n(),
        s.shape.d(),
        s.symbolic_agree,
        s.trials,
        s.numeric_agree,
        s.evaluations,
        s.nonhomogeneous
    )
}

fn bijection_line(s: &checks::BijectionSummary) -> String {
    format!(
        "{} bijection n={} d={}: {} column sets, {} monomials, {} roundtrip failures, {} diagonal mismatches, image complete: {}\n",
        status(s.passed()),
        s.shape.n(),
        s.shape.d(),
        s.column_sets,
        s.monomials,
        s.roundtrip_failures,
        s.diagonal_mismatches,
        s.image_complete
    )
}

fn verify(shape: ShiftShape, sampling: Sampling, limits: Limits) -> Result<Report, Error> {
    let lap = checks::laplace_identity(
        shape,
        sampling.field,
        sampling.trials,
        sampling.points,
        sampling.seed,
        limits,
    )?;
    let bij = checks::bijection(shape, limits)?;
    let coh = checks::lm_coherence(shape, sampling.field, limits)?;

    let mut text = laplace_line(&lap);
    text.push_str(&bijection_line(&bij));
    writeln!(
        text,
        "{} leading-monomials n={} d={}: {}/{} minors lead with the diagonal product, {}/{} homogeneous",
        status(coh.passed()),
        shape.n(),
        shape.d(),
        coh.coherent,
        coh.minors,
        coh.homogeneous,
        coh.minors
    )
    .unwrap();
    let mut results = vec![lap.to_json(), bij.to_json(), coh.to_json()];
    let mut success = lap.passed() && bij.passed() && coh.passed();

    if (shape.n(), shape.d()) == (4, 3) {
        for (label, ok) in checks::worked_example(FieldSpec::rationals(), limits)? {
            writeln!(text, "{} worked-example: {label}", status(ok)).unwrap();
            results.push(json!({ "check": "worked-example", "label": label, "passed": ok }));
            success &= ok;
        }
    }
    writeln!(
        text,
        "{}",
        if success {
            "all checks passed"
        } else {
            "some checks failed"
        }
    )
    .unwrap();
    Ok(Report {
        text,
        json: json!({ "n": shape.n(), "d": shape.d(), "checks": results, "passed": success }),
        success,
    })
}
