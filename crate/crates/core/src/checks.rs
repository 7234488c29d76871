//! Batch runners for the identities the library relies on. Each returns a
//! summary instead of panicking so callers can report partial failure.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arith::{FieldSpec, Scalar};
use crate::circulant::{build_full_matrix, enumerate_minors, laplace_from_minors, ColumnSet, Limits, ShiftShape};
use crate::error::{Error, Result};
use crate::groebner::MinorSystem;
use crate::linalg::ScalarMatrix;
use crate::poly::{enumerate_monomials, MonomialOrder};

/// Uniform residue, or an integer in `[-9, 9]` over the rationals.
pub fn random_scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field.modulus() {
        Some(p) => Scalar::from_bigint(field, rng.gen_range(0..p).into()),
        None => Scalar::from_i64(field, rng.gen_range(-9..=9)),
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: FieldSpec, rows: usize, cols: usize) -> ScalarMatrix {
    let entries = (0..rows * cols).map(|_| random_scalar(rng, field)).collect();
    ScalarMatrix::new(field, rows, cols, entries).expect("entries match dimensions")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplaceSummary {
    pub shape: ShiftShape,
    pub trials: usize,
    /// Trials where the expansion equals the direct symbolic determinant.
    pub symbolic_agree: usize,
    pub evaluations: usize,
    /// Evaluations where both polynomials match the scalar determinant.
    pub numeric_agree: usize,
    pub nonhomogeneous: usize,
}

impl LaplaceSummary {
    pub fn passed(&self) -> bool {
        self.symbolic_agree == self.trials && self.numeric_agree == self.evaluations && self.nonhomogeneous == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": "laplace-identity",
            "n": self.shape.n(),
            "d": self.shape.d(),
            "trials": self.trials,
            "symbolic_agree": self.symbolic_agree,
            "evaluations": self.evaluations,
            "numeric_agree": self.numeric_agree,
            "nonhomogeneous": self.nonhomogeneous,
            "passed": self.passed(),
        })
    }
}

/// For `trials` random `F`: the complementary-minor expansion equals the
/// cofactor determinant of `M`, both are homogeneous of degree `n-d+1`,
/// and at `points` random `x` both equal the scalar determinant.
pub fn laplace_identity(
    shape: ShiftShape,
    field: FieldSpec,
    trials: usize,
    points: usize,
    seed: u64,
    limits: Limits,
) -> Result<LaplaceSummary> {
    let ring = shape.ring(MonomialOrder::GrevLex, field);
    let minors = enumerate_minors(shape, ring, limits)?;
    let degree = shape.minor_size() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = LaplaceSummary {
        shape,
        trials,
        symbolic_agree: 0,
        evaluations: 0,
        numeric_agree: 0,
        nonhomogeneous: 0,
    };
    for _ in 0..trials {
        let f = random_matrix(&mut rng, field, shape.d() - 1, shape.n());
        let lap = laplace_from_minors(shape, ring, &minors, &f)?;
        let m = build_full_matrix(shape, ring, &f)?;
        let direct = m.determinant_with_cap(limits.max_det_side)?;
        if lap == direct {
            s.symbolic_agree += 1;
        }
        for p in [&lap, &direct] {
            if !p.is_zero() && p.homogeneous_degree() != Some(degree) {
                s.nonhomogeneous += 1;
            }
        }
        for _ in 0..points {
            let x: Vec<Scalar> = (0..shape.d()).map(|_| random_scalar(&mut rng, field)).collect();
            let numeric = m.evaluate(&x)?.determinant()?;
            s.evaluations += 1;
            if lap.evaluate(&x)? == numeric && direct.evaluate(&x)? == numeric {
                s.numeric_agree += 1;
            }
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionSummary {
    pub shape: ShiftShape,
    pub column_sets: usize,
    pub roundtrip_failures: usize,
    pub diagonal_mismatches: usize,
    /// Image of the column sets equals the full monomial set.
    pub image_complete: bool,
    pub monomials: usize,
}

impl BijectionSummary {
    pub fn passed(&self) -> bool {
        self.roundtrip_failures == 0
            && self.diagonal_mismatches == 0
            && self.image_complete
            && self.column_sets == self.monomials
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": "bijection",
            "n": self.shape.n(),
            "d": self.shape.d(),
            "column_sets": self.column_sets,
            "monomials": self.monomials,
            "roundtrip_failures": self.roundtrip_failures,
            "diagonal_mismatches": self.diagonal_mismatches,
            "image_complete": self.image_complete,
            "passed": self.passed(),
        })
    }
}

/// Exhaustive column set <-> exponent vector roundtrip.
pub fn bijection(shape: ShiftShape, limits: Limits) -> Result<BijectionSummary> {
    let count = shape.minor_count();
    if count > limits.max_minors as u128 {
        return Err(Error::ResourceLimit {
            what: "minor count",
            value: usize::try_from(count).unwrap_or(usize::MAX),
            cap: limits.max_minors,
        });
    }
    let monomials = enumerate_monomials(shape.d(), shape.minor_size() as u32, MonomialOrder::GrevLex);
    let mut image = HashSet::new();
    let mut s = BijectionSummary {
        shape,
        column_sets: 0,
        roundtrip_failures: 0,
        diagonal_mismatches: 0,
        image_complete: false,
        monomials: monomials.len(),
    };
    for h in ColumnSet::all(shape) {
        s.column_sets += 1;
        let k = h.exponents();
        if ColumnSet::from_exponents(&k, shape).ok().as_ref() != Some(&h) {
            s.roundtrip_failures += 1;
        }
        if h.leading_monomial_fast() != k {
            s.diagonal_mismatches += 1;
        }
        image.insert(k);
    }
    s.image_complete = image.len() == monomials.len() && monomials.iter().all(|m| image.contains(m));
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceSummary {
    pub shape: ShiftShape,
    pub minors: usize,
    /// Minors whose grevlex leading term is the diagonal product with coefficient one.
    pub coherent: usize,
    pub homogeneous: usize,
}

impl CoherenceSummary {
    pub fn passed(&self) -> bool {
        self.coherent == self.minors && self.homogeneous == self.minors
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": "leading-monomial-coherence",
            "n": self.shape.n(),
            "d": self.shape.d(),
            "minors": self.minors,
            "coherent": self.coherent,
            "homogeneous": self.homogeneous,
            "passed": self.passed(),
        })
    }
}

pub fn lm_coherence(shape: ShiftShape, field: FieldSpec, limits: Limits) -> Result<CoherenceSummary> {
    let ring = shape.ring(MonomialOrder::GrevLex, field);
    let minors = enumerate_minors(shape, ring, limits)?;
    let degree = shape.minor_size() as u32;
    let mut s = CoherenceSummary {
        shape,
        minors: minors.len(),
        coherent: 0,
        homogeneous: 0,
    };
    for m in &minors {
        let lt = m.poly.leading_term()?;
        if lt.monomial == m.columns.leading_monomial_fast() && lt.coeff.is_one() {
            s.coherent += 1;
        }
        if m.poly.homogeneous_degree() == Some(degree) {
            s.homogeneous += 1;
        }
    }
    Ok(s)
}

/// The worked `n = 4, d = 3` example: fixed minors, the complete grevlex
/// leading set, and `x2^2` missing under lex and grlex.
pub fn worked_example(field: FieldSpec, limits: Limits) -> Result<Vec<(&'static str, bool)>> {
    const MINORS: [&str; 6] = ["x1^2", "x1*x2", "x1*x3", "x2^2 - x1*x3", "x2*x3", "x3^2"];
    let shape = ShiftShape::new(4, 3)?;
    let grevlex = MinorSystem::new(shape, MonomialOrder::GrevLex, field, limits)?;
    let rendered: Vec<String> = grevlex.minors().iter().map(|m| m.poly.to_string()).collect();
    let mut out = vec![
        (
            "minors match x1^2, x1*x2, x1*x3, x2^2 - x1*x3, x2*x3, x3^2",
            rendered == MINORS,
        ),
        (
            "grevlex leading monomials are all six degree-2 monomials",
            grevlex.lm_set().len() == 6 && grevlex.missing_leading_monomials().is_empty(),
        ),
    ];
    for (order, label) in [
        (MonomialOrder::Lex, "lex leading monomials omit only x2^2"),
        (MonomialOrder::GrLex, "grlex leading monomials omit only x2^2"),
    ] {
        let sys = grevlex.with_order(order);
        let missing: Vec<String> = sys
            .missing_leading_monomials()
            .iter()
            .map(ToString::to_string)
            .collect();
        out.push((label, sys.lm_set().len() == 5 && missing == ["x2^2"]));
    }
    Ok(out)
}
