//! The banded shift matrix `X`, its maximal minors, and the correspondence
//! between column sets and exponent vectors.
//!
//! Row `i` of `X` (1-based) holds `x1..xd` in columns `i..i+d-1`. There are
//! `n-d+1` rows, so the shifts never wrap around even though the rows are
//! cyclic right shifts of the first one.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::linalg::{PolyMatrix, ScalarMatrix, DEFAULT_DET_SIDE_CAP};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// Default cap on the number of maximal minors enumerated at once.
pub const DEFAULT_MAX_MINORS: usize = 500;

/// Resource caps for symbolic work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_minors: usize,
    pub max_det_side: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_minors: DEFAULT_MAX_MINORS,
            max_det_side: DEFAULT_DET_SIDE_CAP,
        }
    }
}

/// `(n, d)` with `1 <= d <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftShape {
    n: usize,
    d: usize,
}

impl ShiftShape {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if d == 0 || d > n || n > 64 {
            return Err(Error::InvalidShape { n, d });
        }
        Ok(ShiftShape { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Rows of `X`, and the degree of every maximal minor: `n - d + 1`.
    pub fn minor_size(&self) -> usize {
        self.n - self.d + 1
    }

    /// `C(n, n-d+1)`, saturating.
    pub fn minor_count(&self) -> u128 {
        binomial(self.n as u128, self.minor_size() as u128)
    }

    /// The ring `F[x1..xd]`.
    pub fn ring(&self, order: MonomialOrder, field: crate::arith::FieldSpec) -> PolyRing {
        PolyRing::new(self.d, order, field)
    }

    fn check_ring(&self, ring: &PolyRing) -> Result<()> {
        if ring.nvars == self.d {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "ring has {} variables, shape needs d = {}",
                ring.nvars, self.d
            )))
        }
    }

    /// The variable at 1-based position `(row, col)` of `X`, as a 0-based
    /// variable index, or `None` outside the band.
    pub fn band_entry(&self, row: usize, col: usize) -> Option<usize> {
        let offset = col.checked_sub(row)?;
        (offset < self.d).then_some(offset)
    }
}

impl fmt::Display for ShiftShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}, d={}", self.n, self.d)
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// A strictly increasing `(n-d+1)`-subset of `{1..n}`, indexing one maximal
/// minor of `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnSet {
    shape: ShiftShape,
    indices: Vec<usize>,
}

impl ColumnSet {
    pub fn new(shape: ShiftShape, indices: Vec<usize>) -> Result<Self> {
        if indices.len() != shape.minor_size() {
            return Err(Error::InvalidColumnSet(format!(
                "{} columns given, need {}",
                indices.len(),
                shape.minor_size()
            )));
        }
        if indices.iter().any(|&c| c == 0 || c > shape.n) {
            return Err(Error::InvalidColumnSet(format!(
                "{indices:?} not within 1..={}",
                shape.n
            )));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidColumnSet(format!(
                "{indices:?} is not strictly increasing"
            )));
        }
        Ok(ColumnSet { shape, indices })
    }

    /// Every column set of `shape`, in lexicographic order.
    pub fn all(shape: ShiftShape) -> impl Iterator<Item = ColumnSet> {
        (1..=shape.n)
            .combinations(shape.minor_size())
            .map(move |indices| ColumnSet { shape, indices })
    }

    pub fn shape(&self) -> ShiftShape {
        self.shape
    }

    /// 1-based column indices, increasing.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// The `d-1` columns not in the set, increasing.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.shape.n)
            .filter(|c| self.indices.binary_search(c).is_err())
            .collect()
    }

    /// Sign of the complementary-minor term:
    /// `(-1)^(sum of columns + sum of rows 1..n-d+1)`.
    pub fn laplace_sign_is_negative(&self) -> bool {
        let m = self.indices.len();
        let total: usize = self.indices.iter().sum::<usize>() + m * (m + 1) / 2;
        total % 2 == 1
    }

    /// Exponent vector `k` with `k_j = #{ i : c_i - i = j - 1 }`.
    pub fn exponents(&self) -> Monomial {
        let mut k = vec![0u32; self.shape.d];
        for (i, &c) in self.indices.iter().enumerate() {
            k[c - (i + 1)] += 1;
        }
        Monomial::new(k)
    }

    /// Inverse of [`ColumnSet::exponents`]: spell out the non-decreasing
    /// level sequence `j_i` from the counts, then `c_i = j_i + i - 1`.
    pub fn from_exponents(k: &Monomial, shape: ShiftShape) -> Result<ColumnSet> {
        if k.nvars() != shape.d {
            return Err(Error::DimensionMismatch(format!(
                "monomial in {} variables, shape needs d = {}",
                k.nvars(),
                shape.d
            )));
        }
        if k.total_degree() as usize != shape.minor_size() {
            return Err(Error::InvalidColumnSet(format!(
                "monomial {k} has degree {}, need {}",
                k.total_degree(),
                shape.minor_size()
            )));
        }
        let levels = k
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(j, &count)| std::iter::repeat_n(j + 1, count as usize));
        let indices = levels.enumerate().map(|(i, level)| level + i).collect();
        ColumnSet::new(shape, indices)
    }

    /// Product of the diagonal entries of `X_H`.
    pub fn leading_monomial_fast(&self) -> Monomial {
        let mut exps = vec![0u32; self.shape.d];
        for (i, &c) in self.indices.iter().enumerate() {
            let var = self
                .shape
                .band_entry(i + 1, c)
                .expect("diagonal of X_H lies inside the band");
            exps[var] += 1;
        }
        Monomial::new(exps)
    }
}

impl fmt::Display for ColumnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.indices.iter().join(","))
    }
}

/// The `(n-d+1) x n` matrix `X` over `ring` (which must have `d` variables).
pub fn build_shift_matrix(shape: ShiftShape, ring: PolyRing) -> Result<PolyMatrix> {
    shape.check_ring(&ring)?;
    let rows = shape.minor_size();
    let mut entries = Vec::with_capacity(rows * shape.n);
    for r in 1..=rows {
        for c in 1..=shape.n {
            entries.push(match shape.band_entry(r, c) {
                Some(v) => Polynomial::var(ring, v)?,
                None => Polynomial::zero(ring),
            });
        }
    }
    PolyMatrix::new(ring, rows, shape.n, entries)
}

/// The `n x n` matrix `M = [X; F]`.
pub fn build_full_matrix(shape: ShiftShape, ring: PolyRing, f: &ScalarMatrix) -> Result<PolyMatrix> {
    check_f(shape, f)?;
    let x = build_shift_matrix(shape, ring)?;
    x.vstack(&PolyMatrix::from_scalars(ring, f)?)
}

fn check_f(shape: ShiftShape, f: &ScalarMatrix) -> Result<()> {
    if f.rows() != shape.d - 1 || f.cols() != shape.n {
        return Err(Error::DimensionMismatch(format!(
            "F is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            shape.d - 1,
            shape.n
        )));
    }
    Ok(())
}

/// One maximal minor `det X_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub columns: ColumnSet,
    pub poly: Polynomial,
}

/// All maximal minors of `X`, in lexicographic column-set order.
pub fn enumerate_minors(shape: ShiftShape, ring: PolyRing, limits: Limits) -> Result<Vec<Minor>> {
    let count = shape.minor_count();
    if count > limits.max_minors as u128 {
        return Err(Error::ResourceLimit {
            what: "minor count",
            value: usize::try_from(count).unwrap_or(usize::MAX),
            cap: limits.max_minors,
        });
    }
    let x = build_shift_matrix(shape, ring)?;
    let sets: Vec<ColumnSet> = ColumnSet::all(shape).collect();
    sets.into_par_iter()
        .map(|columns| {
            let poly = x
                .select_columns(columns.indices())?
                .determinant_with_cap(limits.max_det_side)?;
            Ok(Minor { columns, poly })
        })
        .collect()
}

/// `det M = sum_H sign(H) det X_H det F_{H'}`.
pub fn laplace_expansion(shape: ShiftShape, ring: PolyRing, f: &ScalarMatrix, limits: Limits) -> Result<Polynomial> {
    check_f(shape, f)?;
    let minors = enumerate_minors(shape, ring, limits)?;
    laplace_from_minors(shape, ring, &minors, f)
}

/// [`laplace_expansion`] reusing already enumerated minors.
pub fn laplace_from_minors(
    shape: ShiftShape,
    ring: PolyRing,
    minors: &[Minor],
    f: &ScalarMatrix,
) -> Result<Polynomial> {
    check_f(shape, f)?;
    shape.check_ring(&ring)?;
    if f.field() != ring.field {
        return Err(Error::DomainMismatch {
            left: ring.field,
            right: f.field(),
        });
    }
    let mut acc = Polynomial::zero(ring);
    for minor in minors {
        ring.check(&minor.poly.ring())?;
        if minor.columns.shape() != shape {
            return Err(Error::InvalidColumnSet(format!(
                "minor {} belongs to another shape",
                minor.columns
            )));
        }
        let rest = minor.columns.complement();
        let mut coeff = if rest.is_empty() {
            Scalar::one(ring.field)
        } else {
            f.select_columns(&rest)?.determinant()?
        };
        if coeff.is_zero() {
            continue;
        }
        if minor.columns.laplace_sign_is_negative() {
            coeff = -coeff;
        }
        acc = acc.add_unchecked(&minor.poly.scale(&coeff)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;
    use crate::poly::enumerate_monomials;
    use std::collections::HashSet;

    fn shape(n: usize, d: usize) -> ShiftShape {
        ShiftShape::new(n, d).unwrap()
    }

    fn q_ring(d: usize) -> PolyRing {
        PolyRing::new(d, MonomialOrder::GrevLex, FieldSpec::rationals())
    }

    fn render(m: &PolyMatrix) -> Vec<Vec<String>> {
        (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
            .collect()
    }

    #[test]
    fn shape_validation() {
        assert!(ShiftShape::new(1, 2).is_err());
        assert!(ShiftShape::new(3, 0).is_err());
        assert!(ShiftShape::new(1, 1).is_ok());
    }

    #[test]
    fn shift_matrix_examples() {
        let x = build_shift_matrix(shape(4, 3), q_ring(3)).unwrap();
        assert_eq!(render(&x), [["x1", "x2", "x3", "0"], ["0", "x1", "x2", "x3"]]);
        let x = build_shift_matrix(shape(3, 3), q_ring(3)).unwrap();
        assert_eq!(render(&x), [["x1", "x2", "x3"]]);
        let x = build_shift_matrix(shape(3, 1), q_ring(1)).unwrap();
        assert_eq!(render(&x), [["x1", "0", "0"], ["0", "x1", "0"], ["0", "0", "x1"]]);
        assert!(build_shift_matrix(shape(3, 2), q_ring(3)).is_err());
    }

    #[test]
    fn row_structure_is_a_right_shift() {
        let s = shape(7, 3);
        let x = build_shift_matrix(s, q_ring(3)).unwrap();
        for r in 1..x.rows() {
            for c in 0..s.n() {
                let expected = if c == 0 {
                    "0".to_string()
                } else {
                    x.get(r - 1, c - 1).to_string()
                };
                assert_eq!(x.get(r, c).to_string(), expected);
            }
        }
    }

    #[test]
    fn full_matrix() {
        let q = FieldSpec::rationals();
        let s = shape(3, 1);
        let m = build_full_matrix(s, q_ring(1), &ScalarMatrix::zeros(q, 0, 3)).unwrap();
        assert_eq!(m.determinant().unwrap().to_string(), "x1^3");
        let bad = ScalarMatrix::zeros(q, 1, 4);
        assert!(build_full_matrix(shape(3, 2), q_ring(2), &bad).is_err());
        let f = ScalarMatrix::from_i64(q, 1, 3, &[1, 2, 3]).unwrap();
        let m = build_full_matrix(shape(3, 2), q_ring(2), &f).unwrap();
        assert_eq!(render(&m)[2], ["1", "2", "3"]);
    }

    fn minor_strings(n: usize, d: usize) -> Vec<(String, String)> {
        enumerate_minors(shape(n, d), q_ring(d), Limits::default())
            .unwrap()
            .into_iter()
            .map(|m| (m.columns.to_string(), m.poly.to_string()))
            .collect()
    }

    #[test]
    fn minors_four_three() {
        let got = minor_strings(4, 3);
        let want = [
            ("{1,2}", "x1^2"),
            ("{1,3}", "x1*x2"),
            ("{1,4}", "x1*x3"),
            ("{2,3}", "x2^2 - x1*x3"),
            ("{2,4}", "x2*x3"),
            ("{3,4}", "x3^2"),
        ];
        assert_eq!(got.len(), 6);
        for ((h, p), (wh, wp)) in got.iter().zip(want) {
            assert_eq!((h.as_str(), p.as_str()), (wh, wp));
        }
    }

    #[test]
    fn minors_three_two_and_diagonal_shapes() {
        let got: Vec<String> = minor_strings(3, 2).into_iter().map(|(_, p)| p).collect();
        assert_eq!(got, ["x1^2", "x1*x2", "x2^2"]);
        let got: Vec<String> = minor_strings(4, 4).into_iter().map(|(_, p)| p).collect();
        assert_eq!(got, ["x1", "x2", "x3", "x4"]);
    }

    #[test]
    fn minor_cap() {
        let limits = Limits {
            max_minors: 5,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_minors(shape(4, 3), q_ring(3), limits),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn column_set_validation() {
        let s = shape(4, 3);
        assert!(ColumnSet::new(s, vec![1, 4]).is_ok());
        assert!(ColumnSet::new(s, vec![]).is_err());
        assert!(ColumnSet::new(s, vec![1, 2, 3]).is_err());
        assert!(ColumnSet::new(s, vec![3, 2]).is_err());
        assert!(ColumnSet::new(s, vec![0, 2]).is_err());
        assert!(ColumnSet::new(s, vec![4, 5]).is_err());
    }

    #[test]
    fn exponent_examples() {
        let s = shape(4, 3);
        let h = ColumnSet::new(s, vec![2, 3]).unwrap();
        assert_eq!(h.exponents().exponents(), &[0, 2, 0]);
        assert_eq!(ColumnSet::from_exponents(&Monomial::new(vec![0, 2, 0]), s).unwrap(), h);
        assert_eq!(h.leading_monomial_fast().to_string(), "x2^2");
        let h14 = ColumnSet::new(s, vec![1, 4]).unwrap();
        assert_eq!(h14.leading_monomial_fast().to_string(), "x1*x3");
        assert!(ColumnSet::from_exponents(&Monomial::new(vec![1, 2, 0]), s).is_err());
        assert!(ColumnSet::from_exponents(&Monomial::new(vec![2, 0]), s).is_err());

        for (n, d) in [(5, 2), (7, 4), (9, 9)] {
            let s = shape(n, d);
            let m = s.minor_size();
            let first = ColumnSet::new(s, (1..=m).collect()).unwrap();
            assert_eq!(first.exponents().exponents()[0] as usize, m);
            let last = ColumnSet::new(s, (d..=n).collect()).unwrap();
            assert_eq!(last.exponents().exponents()[d - 1] as usize, m);
            assert_eq!(ColumnSet::from_exponents(&first.exponents(), s).unwrap(), first);
        }
        let s = shape(5, 5);
        let h = ColumnSet::new(s, vec![3]).unwrap();
        assert_eq!(h.leading_monomial_fast().to_string(), "x3");
    }

    #[test]
    fn band_condition_holds_for_every_subset() {
        for n in 1..=9 {
            for d in 1..=n {
                let s = shape(n, d);
                for h in ColumnSet::all(s) {
                    for (i, &c) in h.indices().iter().enumerate() {
                        let off = c as isize - (i as isize + 1);
                        assert!((0..d as isize).contains(&off));
                    }
                }
            }
        }
    }

    #[test]
    fn bijection_onto_monomials() {
        for n in 1..=10 {
            for d in 1..=n {
                let s = shape(n, d);
                let image: HashSet<Monomial> = ColumnSet::all(s).map(|h| h.exponents()).collect();
                let target: HashSet<Monomial> = enumerate_monomials(d, s.minor_size() as u32, MonomialOrder::GrevLex)
                    .into_iter()
                    .collect();
                assert_eq!(image, target, "n={n} d={d}");
                assert_eq!(image.len() as u128, s.minor_count());
                for h in ColumnSet::all(s) {
                    assert_eq!(ColumnSet::from_exponents(&h.exponents(), s).unwrap(), h);
                    assert_eq!(h.leading_monomial_fast(), h.exponents());
                }
            }
        }
    }

    #[test]
    fn counting_identity() {
        for n in 1..=12u128 {
            for d in 1..=n {
                assert_eq!(binomial(n, n - d + 1), binomial(n - d + 1 + d - 1, d - 1));
            }
        }
    }

    #[test]
    fn minors_have_the_diagonal_as_grevlex_leader() {
        for n in 1..=8 {
            for d in 1..=n {
                let s = shape(n, d);
                for m in enumerate_minors(s, q_ring(d), Limits::default()).unwrap() {
                    assert_eq!(m.poly.leading_monomial().unwrap(), &m.columns.leading_monomial_fast());
                    assert!(m.poly.leading_coefficient().unwrap().is_one());
                    assert_eq!(m.poly.homogeneous_degree(), Some(s.minor_size() as u32));
                }
            }
        }
    }

    #[test]
    fn laplace_three_two_symbolic_pattern() {
        // det M = f3*x1^2 - f2*x1*x2 + f1*x2^2; probe each f_j with a unit vector
        let q = FieldSpec::rationals();
        let s = shape(3, 2);
        let expect = ["x2^2", "-x1*x2", "x1^2"];
        for (j, want) in expect.iter().enumerate() {
            let mut vals = [0i64; 3];
            vals[j] = 1;
            let f = ScalarMatrix::from_i64(q, 1, 3, &vals).unwrap();
            let lap = laplace_expansion(s, q_ring(2), &f, Limits::default()).unwrap();
            assert_eq!(lap.to_string(), *want);
            let direct = build_full_matrix(s, q_ring(2), &f).unwrap().determinant().unwrap();
            assert_eq!(lap, direct);
        }
    }

    #[test]
    fn laplace_degenerate_cases() {
        let q = FieldSpec::rationals();
        let lap = laplace_expansion(shape(4, 1), q_ring(1), &ScalarMatrix::zeros(q, 0, 4), Limits::default()).unwrap();
        assert_eq!(lap.to_string(), "x1^4");
        let lap = laplace_expansion(shape(5, 3), q_ring(3), &ScalarMatrix::zeros(q, 2, 5), Limits::default()).unwrap();
        assert!(lap.is_zero());
        assert!(laplace_expansion(shape(5, 3), q_ring(3), &ScalarMatrix::zeros(q, 1, 5), Limits::default()).is_err());
        let fp = ScalarMatrix::zeros(FieldSpec::prime(7).unwrap(), 2, 5);
        assert!(laplace_expansion(shape(5, 3), q_ring(3), &fp, Limits::default()).is_err());
    }
}
