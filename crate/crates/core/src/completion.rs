//! Completing `d-1` independent vectors of `F^n` to a basis with the
//! shifts `x, Rx, ..., R^(n-d) x` of one vector `x = (x1..xd, 0..0)`.
//!
//! `det M` is a nonzero polynomial whose degree in each variable is at
//! most `n-d+1`, so it cannot vanish on a grid `S^d` with
//! `|S| = n-d+2`. [`solve`] searches that grid, either in row-major order
//! or by uniform sampling.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arith::{FieldSpec, Scalar};
use crate::circulant::{laplace_expansion, Limits, ShiftShape};
use crate::error::{Error, Result};
use crate::linalg::ScalarMatrix;
use crate::poly::MonomialOrder;

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    Random,
    #[default]
    Grid,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Random => "random",
            Strategy::Grid => "grid",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "random" => Ok(Strategy::Random),
            "grid" => Ok(Strategy::Grid),
            other => Err(Error::Parse(format!("unknown strategy `{other}`"))),
        }
    }
}

/// A shape together with the `(d-1) x n` matrix `F` to complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    shape: ShiftShape,
    f: ScalarMatrix,
}

impl ProblemInstance {
    pub fn new(shape: ShiftShape, f: ScalarMatrix) -> Result<Self> {
        if f.rows() != shape.d() - 1 || f.cols() != shape.n() {
            return Err(Error::DimensionMismatch(format!(
                "F is {}x{}, expected {}x{} for {shape}",
                f.rows(),
                f.cols(),
                shape.d() - 1,
                shape.n()
            )));
        }
        Ok(ProblemInstance { shape, f })
    }

    /// The matrix JSON form with optional `n` and `d` keys; when absent
    /// they are read off the matrix as `n = cols`, `d = rows + 1`.
    /// With `d = 1` and no `cols` key, `n` supplies the column count.
    pub fn from_json(value: &Value, field_override: Option<FieldSpec>) -> Result<Self> {
        let f = match (value.get("cols"), value.get("n")) {
            (None, Some(n)) => {
                let mut with_cols = value.clone();
                with_cols["cols"] = n.clone();
                ScalarMatrix::from_json(&with_cols, field_override)?
            }
            _ => ScalarMatrix::from_json(value, field_override)?,
        };
        let dim = |key: &str, default: usize| -> Result<usize> {
            match value.get(key) {
                None => Ok(default),
                Some(v) => v
                    .as_u64()
                    .and_then(|u| usize::try_from(u).ok())
                    .ok_or_else(|| Error::Parse(format!("`{key}` must be a non-negative integer"))),
            }
        };
        let n = dim("n", f.cols())?;
        let d = dim("d", f.rows() + 1)?;
        ProblemInstance::new(ShiftShape::new(n, d)?, f)
    }

    pub fn from_json_str(src: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        ProblemInstance::from_json(&value, None)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.f.to_json();
        v["n"] = json!(self.shape.n());
        v["d"] = json!(self.shape.d());
        v
    }

    pub fn shape(&self) -> ShiftShape {
        self.shape
    }

    pub fn f(&self) -> &ScalarMatrix {
        &self.f
    }

    pub fn field(&self) -> FieldSpec {
        self.f.field()
    }

    /// Fails unless the rows of `F` are linearly independent.
    pub fn check_rank(&self) -> Result<()> {
        let rank = self.f.rank();
        let expected = self.shape.d() - 1;
        if rank == expected {
            Ok(())
        } else {
            Err(Error::RankDeficient { rank, expected })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionResult {
    /// The free entries `x1..xd`.
    pub x: Vec<Scalar>,
    /// `det M` at `x`; never zero.
    pub det_value: Scalar,
    pub strategy: Strategy,
    pub attempts: usize,
}

impl CompletionResult {
    pub fn to_json(&self) -> Value {
        json!({
            "x": self.x.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "det_value": self.det_value.to_string(),
            "strategy": self.strategy.to_string(),
            "attempts": self.attempts,
        })
    }
}

/// The sample set `S`: `{1, ..., n-d+2}`, or all of `F_p` when the field
/// is too small for that.
pub fn sample_set(shape: ShiftShape, field: FieldSpec) -> Vec<Scalar> {
    let wanted = shape.minor_size() as u64 + 1;
    match field.size() {
        Some(p) if p < wanted => (0..p).map(|v| Scalar::from_bigint(field, v.into())).collect(),
        _ => (1..=wanted).map(|v| Scalar::from_bigint(field, v.into())).collect(),
    }
}

/// Schwartz-Zippel bound `(n-d+1) / |S|` on the chance that a uniform
/// point of `S^d` is a root of `det M`.
pub fn sample_bound(shape: ShiftShape, set_size: usize) -> Result<BigRational> {
    if set_size == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(
        BigInt::from(shape.minor_size()),
        BigInt::from(set_size),
    ))
}

/// `[x; Rx; ...; R^(n-d) x; F]` for `x = (x1..xd, 0..0)`.
pub fn assemble_matrix(inst: &ProblemInstance, x: &[Scalar]) -> Result<ScalarMatrix> {
    let shape = inst.shape;
    if x.len() != shape.d() {
        return Err(Error::DimensionMismatch(format!(
            "x has {} entries, expected d = {}",
            x.len(),
            shape.d()
        )));
    }
    let field = inst.field();
    if let Some(bad) = x.iter().find(|s| s.field() != field) {
        return Err(Error::DomainMismatch {
            left: field,
            right: bad.field(),
        });
    }
    let n = shape.n();
    let mut entries = Vec::with_capacity(n * n);
    for r in 1..=shape.minor_size() {
        for c in 1..=n {
            entries.push(match shape.band_entry(r, c) {
                Some(v) => x[v].clone(),
                None => Scalar::zero(field),
            });
        }
    }
    entries.extend(inst.f.entries().iter().cloned());
    ScalarMatrix::new(field, n, n, entries)
}

/// True iff the shifts of `x` complete the rows of `F` to a basis.
pub fn verify(inst: &ProblemInstance, x: &[Scalar]) -> Result<bool> {
    Ok(assemble_matrix(inst, x)?.rank() == inst.shape.n())
}

/// Finds `x` with `det M != 0`.
///
/// Each candidate is checked twice: the Laplace-expanded polynomial is
/// evaluated at `x`, and the assembled matrix is reduced directly. The two
/// must agree. The first nonvanishing candidate is returned.
pub fn solve(
    inst: &ProblemInstance,
    strategy: Strategy,
    seed: u64,
    max_attempts: usize,
    limits: Limits,
) -> Result<CompletionResult> {
    inst.check_rank()?;
    let shape = inst.shape;
    let field = inst.field();
    let ring = shape.ring(MonomialOrder::GrevLex, field);
    let det_poly = laplace_expansion(shape, ring, &inst.f, limits)?;
    let set = sample_set(shape, field);
    let d = shape.d();

    let grid_points = (set.len() as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut odometer = vec![0usize; d];
    let mut attempts = 0usize;

    loop {
        if strategy == Strategy::Grid && attempts as u128 == grid_points {
            // A nonzero polynomial of per-variable degree < |S| cannot vanish
            // on all of S^d.
            if set.len() > shape.minor_size() {
                return Err(Error::Internal(format!(
                    "det M vanished on the whole grid for {shape} over {field} with rank(F) = d-1"
                )));
            }
            return Err(Error::GridExhausted { points: attempts });
        }
        if attempts == max_attempts {
            return Err(Error::AttemptsExceeded { attempts });
        }
        attempts += 1;

        let x: Vec<Scalar> = match strategy {
            Strategy::Grid => {
                let x = odometer.iter().map(|&i| set[i].clone()).collect();
                for slot in odometer.iter_mut().rev() {
                    *slot += 1;
                    if *slot < set.len() {
                        break;
                    }
                    *slot = 0;
                }
                x
            }
            Strategy::Random => (0..d).map(|_| set[rng.gen_range(0..set.len())].clone()).collect(),
        };

        let via_poly = det_poly.evaluate(&x)?;
        let via_matrix = assemble_matrix(inst, &x)?.determinant()?;
        if via_poly != via_matrix {
            return Err(Error::Internal(format!(
                "determinant routes disagree at {x:?}: {via_poly} vs {via_matrix}"
            )));
        }
        if !via_matrix.is_zero() {
            return Ok(CompletionResult {
                x,
                det_value: via_matrix,
                strategy,
                attempts,
            });
        }
    }
}
