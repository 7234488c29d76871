//! Dense exact matrices over a field and over a polynomial ring.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::arith::{FieldSpec, Scalar};
use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};

/// Default cap on the side of a symbolic determinant.
pub const DEFAULT_DET_SIDE_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

/// Checks `cols` is a nonempty, strictly increasing list of 1-based
/// indices not exceeding `limit`.
fn check_selection(cols: &[usize], limit: usize) -> Result<()> {
    if cols.is_empty() {
        return Err(Error::InvalidColumnSet("empty column selection".into()));
    }
    if cols.iter().any(|&c| c == 0 || c > limit) {
        return Err(Error::InvalidColumnSet(format!("{cols:?} not within 1..={limit}")));
    }
    if cols.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidColumnSet(format!("{cols:?} is not strictly increasing")));
    }
    Ok(())
}

impl ScalarMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::DomainMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(ScalarMatrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    /// Row-major integer entries.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        let entries = values.iter().map(|&v| Scalar::from_i64(field, v)).collect();
        ScalarMatrix::new(field, rows, cols, entries)
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            field,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = ScalarMatrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one(field);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// 0-based access.
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ScalarMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries,
        }
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::DomainMismatch {
                left: self.field,
                right: other.field,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Scalar::zero(self.field);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(r, k) * other.get(k, c));
                }
                entries.push(acc);
            }
        }
        ScalarMatrix::new(self.field, self.rows, other.cols, entries)
    }

    /// Submatrix on the given 1-based, strictly increasing columns.
    pub fn select_columns(&self, cols: &[usize]) -> Result<ScalarMatrix> {
        check_selection(cols, self.cols)?;
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            entries.extend(cols.iter().map(|&c| self.get(r, c - 1).clone()));
        }
        ScalarMatrix::new(self.field, self.rows, cols.len(), entries)
    }

    /// Fraction-free Bareiss elimination with row pivoting. The empty
    /// matrix has determinant one.
    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one(self.field));
        }
        let mut a: Vec<Vec<Scalar>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut negate = false;
        let mut prev = Scalar::one(self.field);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(Scalar::zero(self.field));
                };
                a.swap(k, p);
                negate = !negate;
            }
            let prev_inv = prev.inv()?;
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = &v * &prev_inv;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Rank by Gaussian elimination over the field.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = a[rank][c].inv().expect("pivot is nonzero");
            let (top, below) = a.split_at_mut(rank + 1);
            let pivot = &top[rank];
            for row in below.iter_mut().filter(|row| !row[c].is_zero()) {
                let factor = &row[c] * &inv;
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = &*x - &(&factor * p);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// `{"field": .., "rows": .., "cols": .., "entries": [[..], ..]}`.
    /// Integers that fit in an `i64` are written as JSON numbers, all other
    /// values as strings.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows)
            .map(|r| Value::Array(self.row(r).iter().map(scalar_to_json).collect()))
            .collect();
        json!({
            "field": self.field.to_string(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": entries,
        })
    }

    pub fn from_json_str(src: &str) -> Result<ScalarMatrix> {
        let value: Value = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        ScalarMatrix::from_json(&value, None)
    }

    /// Reads the JSON form. `field_override`, when given, is used if the
    /// document has no `field` key and must agree with it otherwise.
    pub fn from_json(value: &Value, field_override: Option<FieldSpec>) -> Result<ScalarMatrix> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("matrix must be a JSON object".into()))?;
        let declared = match obj.get("field") {
            None => None,
            Some(Value::String(s)) => Some(s.parse::<FieldSpec>()?),
            Some(_) => return Err(Error::Parse("`field` must be a string".into())),
        };
        let field = match (declared, field_override) {
            (Some(a), Some(b)) if a != b => return Err(Error::DomainMismatch { left: a, right: b }),
            (Some(f), _) | (None, Some(f)) => f,
            (None, None) => FieldSpec::rationals(),
        };
        let rows_json = obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("`entries` must be an array of rows".into()))?;
        let rows = read_dim(obj, "rows")?.unwrap_or(rows_json.len());
        let cols = match read_dim(obj, "cols")? {
            Some(c) => c,
            None => rows_json
                .first()
                .and_then(Value::as_array)
                .map(Vec::len)
                .ok_or_else(|| Error::Parse("`cols` is required when there are no rows".into()))?,
        };
        if rows_json.len() != rows {
            return Err(Error::DimensionMismatch(format!(
                "`rows` is {rows} but `entries` has {} rows",
                rows_json.len()
            )));
        }
        let mut entries = Vec::with_capacity(rows.saturating_mul(cols).min(1 << 20));
        for (r, row) in rows_json.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("row {r} is not an array")))?;
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for v in row {
                entries.push(scalar_from_json(field, v)?);
            }
        }
        ScalarMatrix::new(field, rows, cols, entries)
    }
}

fn read_dim(obj: &serde_json::Map<String, Value>, key: &str) -> Result<Option<usize>> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_u64()
            .and_then(|u| usize::try_from(u).ok())
            .map(Some)
            .ok_or_else(|| Error::Parse(format!("`{key}` must be a non-negative integer"))),
    }
}

pub(crate) fn scalar_to_json(s: &Scalar) -> Value {
    match s.to_bigint().and_then(|b| i64::try_from(b).ok()) {
        Some(i) => Value::from(i),
        None => Value::String(s.to_string()),
    }
}

pub(crate) fn scalar_from_json(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Scalar::from_i64(field, i))
            } else if let Some(u) = n.as_u64() {
                Ok(Scalar::from_bigint(field, u.into()))
            } else {
                Err(Error::Parse(format!(
                    "non-integer number {n}; write rationals as strings"
                )))
            }
        }
        Value::String(s) => Scalar::parse(field, s),
        other => Err(Error::Parse(format!("unexpected matrix entry {other}"))),
    }
}

/// A matrix of polynomials sharing one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    ring: PolyRing,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: PolyRing, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            ring.check(&e.ring())?;
        }
        Ok(PolyMatrix {
            rows,
            cols,
            ring,
            entries,
        })
    }

    /// Embeds a scalar matrix as constant polynomials.
    pub fn from_scalars(ring: PolyRing, m: &ScalarMatrix) -> Result<Self> {
        let entries = m
            .entries()
            .iter()
            .map(|s| Polynomial::constant(ring, s.clone()))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(ring, m.rows(), m.cols(), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    /// 0-based access.
    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.ring.check(&other.ring)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} columns on {}",
                other.cols, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        PolyMatrix::new(self.ring, self.rows + other.rows, self.cols, entries)
    }

    /// Submatrix on the given 1-based, strictly increasing columns.
    pub fn select_columns(&self, cols: &[usize]) -> Result<PolyMatrix> {
        check_selection(cols, self.cols)?;
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            entries.extend(cols.iter().map(|&c| self.get(r, c - 1).clone()));
        }
        PolyMatrix::new(self.ring, self.rows, cols.len(), entries)
    }

    /// Substitutes `point` into every entry.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<ScalarMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.evaluate(point))
            .collect::<Result<Vec<_>>>()?;
        ScalarMatrix::new(self.ring.field, self.rows, self.cols, entries)
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        self.determinant_with_cap(DEFAULT_DET_SIDE_CAP)
    }

    /// Cofactor expansion with memoization on the set of remaining columns.
    /// Rows are expanded sparsest first, and zero entries are skipped.
    pub fn determinant_with_cap(&self, cap: usize) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n > cap.min(31) {
            return Err(Error::ResourceLimit {
                what: "determinant side",
                value: n,
                cap,
            });
        }
        if n == 0 {
            return Ok(Polynomial::one(self.ring));
        }

        let zeros = |r: usize| (0..n).filter(|&c| self.get(r, c).is_zero()).count();
        let mut row_order: Vec<usize> = (0..n).collect();
        row_order.sort_by_key(|&r| std::cmp::Reverse(zeros(r)));
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| row_order[i] > row_order[j])
            .count();

        let mut memo: HashMap<u32, Polynomial> = HashMap::new();
        let full = ((1u64 << n) - 1) as u32;
        let det = self.cofactor(&row_order, full, &mut memo);
        Ok(if inversions % 2 == 1 { det.neg() } else { det })
    }

    fn cofactor(&self, row_order: &[usize], mask: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
        if mask == 0 {
            return Polynomial::one(self.ring);
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let n = self.cols;
        let row = row_order[n - mask.count_ones() as usize];
        let mut acc = Polynomial::zero(self.ring);
        let mut pos = 0;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let entry = self.get(row, c);
            if !entry.is_zero() {
                let minor = self.cofactor(row_order, mask & !(1 << c), memo);
                if !minor.is_zero() {
                    let prod = entry.mul_unchecked(&minor);
                    acc = if pos % 2 == 0 {
                        acc.add_unchecked(&prod)
                    } else {
                        acc.add_unchecked(&prod.neg())
                    };
                }
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
}
