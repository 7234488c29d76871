//! Certification that the maximal minors of `X` form a Groebner basis,
//! and the search for counterexamples under other orders.
//!
//! Nothing here computes a Groebner basis from scratch: the minors are
//! taken as given and Buchberger's criterion is checked pair by pair.

use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{FieldSpec, Scalar};
use crate::circulant::{enumerate_minors, ColumnSet, Limits, Minor, ShiftShape};
use crate::error::Result;
use crate::linalg::ScalarMatrix;
use crate::poly::{enumerate_monomials, normal_form, s_polynomial, Monomial, MonomialOrder, PolyRing, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    GroebnerBasis,
    NotGroebnerBasis,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::GroebnerBasis => "GroebnerBasis",
            Verdict::NotGroebnerBasis => "NotGroebnerBasis",
        })
    }
}

/// An S-pair whose S-polynomial does not reduce to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFailure {
    pub first: ColumnSet,
    pub second: ColumnSet,
    pub s_polynomial: Polynomial,
    pub remainder: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerReport {
    pub shape: ShiftShape,
    pub order: MonomialOrder,
    pub field: FieldSpec,
    pub pair_count: usize,
    /// In canonical pair order: `(H_i, H_j)` with `i < j` in column-set order.
    pub failures: Vec<PairFailure>,
    /// Distinct leading monomials, descending.
    pub leading_monomials: Vec<Monomial>,
    /// Monomials of degree `n-d+1` that are not a leading monomial, descending.
    pub missing_leading_monomials: Vec<Monomial>,
    pub lm_set_complete: bool,
    pub verdict: Verdict,
}

impl GroebnerReport {
    /// Groebner basis and the leading monomials cover every monomial of
    /// the generating degree.
    pub fn certified(&self) -> bool {
        self.verdict == Verdict::GroebnerBasis && self.lm_set_complete
    }

    pub fn to_json(&self) -> Value {
        let strings = |ms: &[Monomial]| ms.iter().map(ToString::to_string).collect::<Vec<_>>();
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| {
                json!({
                    "pair": [f.first.to_string(), f.second.to_string()],
                    "s_polynomial": f.s_polynomial.to_string(),
                    "remainder": f.remainder.to_string(),
                })
            })
            .collect();
        json!({
            "n": self.shape.n(),
            "d": self.shape.d(),
            "order": self.order.name(),
            "field": self.field.to_string(),
            "verdict": self.verdict.to_string(),
            "pair_count": self.pair_count,
            "lm_set_complete": self.lm_set_complete,
            "leading_monomials": strings(&self.leading_monomials),
            "missing_leading_monomials": strings(&self.missing_leading_monomials),
            "failures": failures,
        })
    }
}

/// The maximal minors of `X` for one shape, order and field.
#[derive(Clone, Debug)]
pub struct MinorSystem {
    shape: ShiftShape,
    ring: PolyRing,
    minors: Vec<Minor>,
}

impl MinorSystem {
    pub fn new(shape: ShiftShape, order: MonomialOrder, field: FieldSpec, limits: Limits) -> Result<Self> {
        let ring = shape.ring(order, field);
        let minors = enumerate_minors(shape, ring, limits)?;
        Ok(MinorSystem { shape, ring, minors })
    }

    pub fn shape(&self) -> ShiftShape {
        self.shape
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order
    }

    pub fn minors(&self) -> &[Minor] {
        &self.minors
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.minors.iter().map(|m| m.poly.clone()).collect()
    }

    /// The same minors stored under another order.
    pub fn with_order(&self, order: MonomialOrder) -> MinorSystem {
        MinorSystem {
            shape: self.shape,
            ring: self.ring.with_order(order),
            minors: self
                .minors
                .iter()
                .map(|m| Minor {
                    columns: m.columns.clone(),
                    poly: m.poly.with_order(order),
                })
                .collect(),
        }
    }

    /// Monomials of degree `n-d+1`, descending under the system's order.
    pub fn degree_monomials(&self) -> Vec<Monomial> {
        enumerate_monomials(self.shape.d(), self.shape.minor_size() as u32, self.order())
    }

    /// Distinct leading monomials of the minors, descending.
    pub fn lm_set(&self) -> Vec<Monomial> {
        let order = self.order();
        let mut lms: Vec<Monomial> = self
            .minors
            .iter()
            .filter_map(|m| m.poly.leading_monomial().ok().cloned())
            .collect();
        lms.sort_by(|a, b| order.cmp_monomials(b, a));
        lms.dedup();
        lms
    }

    pub fn missing_leading_monomials(&self) -> Vec<Monomial> {
        let lms = self.lm_set();
        self.degree_monomials()
            .into_iter()
            .filter(|m| !lms.contains(m))
            .collect()
    }

    /// Buchberger's criterion over every unordered pair of distinct minors.
    pub fn check_buchberger(&self) -> Result<GroebnerReport> {
        let gens = self.polynomials();
        let k = self.minors.len();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let outcomes: Vec<Option<PairFailure>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let s = s_polynomial(&gens[i], &gens[j])?;
                let r = normal_form(&s, &gens)?;
                Ok((!r.is_zero()).then(|| PairFailure {
                    first: self.minors[i].columns.clone(),
                    second: self.minors[j].columns.clone(),
                    s_polynomial: s,
                    remainder: r,
                }))
            })
            .collect::<Result<_>>()?;
        let failures: Vec<PairFailure> = outcomes.into_iter().flatten().collect();
        let leading_monomials = self.lm_set();
        let missing = self.missing_leading_monomials();
        Ok(GroebnerReport {
            shape: self.shape,
            order: self.order(),
            field: self.ring.field,
            pair_count: pairs.len(),
            verdict: if failures.is_empty() {
                Verdict::GroebnerBasis
            } else {
                Verdict::NotGroebnerBasis
            },
            failures,
            lm_set_complete: missing.is_empty(),
            leading_monomials,
            missing_leading_monomials: missing,
        })
    }

    /// Rows are minors, columns are the degree-`(n-d+1)` monomials in the
    /// order of [`MinorSystem::degree_monomials`].
    pub fn coefficient_matrix(&self) -> Result<ScalarMatrix> {
        let cols = self.degree_monomials();
        let field = self.ring.field;
        let mut entries = Vec::with_capacity(self.minors.len() * cols.len());
        for m in &self.minors {
            for mono in &cols {
                entries.push(m.poly.coefficient(mono).cloned().unwrap_or_else(|| Scalar::zero(field)));
            }
        }
        ScalarMatrix::new(field, self.minors.len(), cols.len(), entries)
    }

    /// Whether a homogeneous polynomial of degree `n-d+1` lies in the span
    /// of the minors, decided by a rank comparison.
    pub fn span_contains(&self, p: &Polynomial) -> Result<bool> {
        let base = self.coefficient_matrix()?;
        let rank = base.rank();
        let cols = self.degree_monomials();
        if p.terms().iter().any(|t| !cols.contains(&t.monomial)) {
            return Ok(false);
        }
        if rank == cols.len() {
            return Ok(true);
        }
        let mut entries = base.entries().to_vec();
        for mono in &cols {
            entries.push(
                p.coefficient(mono)
                    .cloned()
                    .unwrap_or_else(|| Scalar::zero(self.ring.field)),
            );
        }
        let extended = ScalarMatrix::new(self.ring.field, base.rows() + 1, cols.len(), entries)?;
        Ok(extended.rank() == rank)
    }

    /// The ideal of minors equals `m^(n-d+1)`: all minors are homogeneous
    /// of that degree and every monomial of that degree has grevlex normal
    /// form zero.
    pub fn check_power_ideal(&self) -> Result<bool> {
        let sys = self.with_order(MonomialOrder::GrevLex);
        let degree = self.shape.minor_size() as u32;
        if !sys.minors.iter().all(|m| m.poly.homogeneous_degree() == Some(degree)) {
            return Ok(false);
        }
        let gens = sys.polynomials();
        for mono in sys.degree_monomials() {
            let p = Polynomial::term(sys.ring, mono, Scalar::one(sys.ring.field))?;
            if !normal_form(&p, &gens)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First monomial of degree `n-d+1` (descending under the system's
    /// order) that lies in the ideal yet has a nonzero normal form.
    pub fn membership_counterexample(&self) -> Result<Option<(Polynomial, Polynomial)>> {
        let gens = self.polynomials();
        for mono in self.degree_monomials() {
            let p = Polynomial::term(self.ring, mono, Scalar::one(self.ring.field))?;
            let r = normal_form(&p, &gens)?;
            if !r.is_zero() && self.span_contains(&p)? {
                return Ok(Some((p, r)));
            }
        }
        Ok(None)
    }
}

pub fn check_buchberger(
    shape: ShiftShape,
    order: MonomialOrder,
    field: FieldSpec,
    limits: Limits,
) -> Result<GroebnerReport> {
    MinorSystem::new(shape, order, field, limits)?.check_buchberger()
}

pub fn lm_set(shape: ShiftShape, order: MonomialOrder, field: FieldSpec, limits: Limits) -> Result<Vec<Monomial>> {
    Ok(MinorSystem::new(shape, order, field, limits)?.lm_set())
}

pub fn check_power_ideal(shape: ShiftShape, field: FieldSpec, limits: Limits) -> Result<bool> {
    MinorSystem::new(shape, MonomialOrder::GrevLex, field, limits)?.check_power_ideal()
}

pub fn membership_counterexample(
    shape: ShiftShape,
    order: MonomialOrder,
    field: FieldSpec,
    limits: Limits,
) -> Result<Option<(Polynomial, Polynomial)>> {
    MinorSystem::new(shape, order, field, limits)?.membership_counterexample()
}
