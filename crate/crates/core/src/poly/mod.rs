//! Multivariate polynomials over a [`FieldSpec`] in a fixed monomial order.

mod division;
mod monomial;
mod order;
mod text;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::iter::Peekable;

pub use division::{normal_form, reduce, s_polynomial, Division};
pub use monomial::{enumerate_monomials, Monomial};
pub use order::MonomialOrder;

use crate::arith::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// The ambient ring `F[x1, ..., xd]` together with the term order used to
/// store polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub nvars: usize,
    pub order: MonomialOrder,
    pub field: FieldSpec,
}

impl PolyRing {
    pub fn new(nvars: usize, order: MonomialOrder, field: FieldSpec) -> Self {
        PolyRing { nvars, order, field }
    }

    pub fn with_order(self, order: MonomialOrder) -> Self {
        PolyRing { order, ..self }
    }

    pub(crate) fn check(&self, other: &PolyRing) -> Result<()> {
        if self == other {
            return Ok(());
        }
        Err(Error::ContextMismatch(format!(
            "({} vars, {}, {}) vs ({} vars, {}, {})",
            self.nvars, self.order, self.field, other.nvars, other.order, other.field
        )))
    }

    fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.nvars() == self.nvars {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "monomial in {} variables, ring has {}",
                m.nvars(),
                self.nvars
            )))
        }
    }

    fn check_scalar(&self, c: &Scalar) -> Result<()> {
        if c.field() == self.field {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                left: self.field,
                right: c.field(),
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub monomial: Monomial,
    pub coeff: Scalar,
}

/// A polynomial in canonical form: terms strictly descending under the
/// ring's order, no zero coefficients. The zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: PolyRing) -> Self {
        Polynomial {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn one(ring: PolyRing) -> Self {
        Polynomial::constant(ring, Scalar::one(ring.field)).expect("one lives in the ring's field")
    }

    pub fn constant(ring: PolyRing, c: Scalar) -> Result<Self> {
        Polynomial::term(ring, Monomial::one(ring.nvars), c)
    }

    /// The variable `x{index+1}`.
    pub fn var(ring: PolyRing, index: usize) -> Result<Self> {
        Polynomial::term(ring, Monomial::var(ring.nvars, index)?, Scalar::one(ring.field))
    }

    pub fn term(ring: PolyRing, monomial: Monomial, coeff: Scalar) -> Result<Self> {
        ring.check_monomial(&monomial)?;
        ring.check_scalar(&coeff)?;
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![Term { monomial, coeff }]
        };
        Ok(Polynomial { ring, terms })
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicate
    /// monomials and drops zero coefficients.
    pub fn from_terms<I>(ring: PolyRing, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            ring.check_monomial(&m)?;
            ring.check_scalar(&c)?;
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { monomial, coeff })
            .collect();
        terms.sort_by(|a, b| ring.order.cmp_monomials(&b.monomial, &a.monomial));
        Ok(Polynomial { ring, terms })
    }

    pub(crate) fn from_sorted_terms(ring: PolyRing, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order.cmp_monomials(&w[0].monomial, &w[1].monomial) == Ordering::Greater));
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Result<&Term> {
        self.terms.first().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Result<&Monomial> {
        Ok(&self.leading_term()?.monomial)
    }

    pub fn leading_coefficient(&self) -> Result<&Scalar> {
        Ok(&self.leading_term()?.coeff)
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms
            .binary_search_by(|t| self.ring.order.cmp_monomials(m, &t.monomial))
            .ok()
            .map(|i| &self.terms[i].coeff)
    }

    /// Largest total degree of any term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.monomial.total_degree()).max()
    }

    /// The common degree of all terms, if the polynomial is nonzero and
    /// homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let first = self.terms.first()?.monomial.total_degree();
        self.terms
            .iter()
            .all(|t| t.monomial.total_degree() == first)
            .then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Re-sorts the terms under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        let ring = self.ring.with_order(order);
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp_monomials(&b.monomial, &a.monomial));
        Polynomial { ring, terms }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    monomial: t.monomial.clone(),
                    coeff: -&t.coeff,
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check(&other.ring)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check(&other.ring)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check(&other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn scale(&self, c: &Scalar) -> Result<Polynomial> {
        self.ring.check_scalar(c)?;
        Ok(self.mul_term(&Monomial::one(self.ring.nvars), c))
    }

    pub(crate) fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let terms = merge(self.ring.order, self.terms.iter().cloned(), other.terms.iter().cloned());
        Polynomial { ring: self.ring, terms }
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let (small, big) = if self.num_terms() <= other.num_terms() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(self.ring);
        for t in &small.terms {
            acc = acc.add_unchecked(&big.mul_term(&t.monomial, &t.coeff));
        }
        acc
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub(crate) fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    monomial: t.monomial.mul(m),
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }

    /// Substitutes `point[i]` for `x{i+1}`.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ring.nvars {
            return Err(Error::DimensionMismatch(format!(
                "evaluation point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.nvars
            )));
        }
        for p in point {
            self.ring.check_scalar(p)?;
        }
        let mut total = Scalar::zero(self.ring.field);
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (x, &e) in point.iter().zip(t.monomial.exponents()) {
                if e > 0 {
                    v = &v * &x.pow(e);
                }
            }
            total = &total + &v;
        }
        Ok(total)
    }
}

/// Merges two descending term streams, summing coefficients of equal
/// monomials and dropping cancellations.
pub(crate) fn merge<A, B>(order: MonomialOrder, a: A, b: B) -> Vec<Term>
where
    A: Iterator<Item = Term>,
    B: Iterator<Item = Term>,
{
    let mut a: Peekable<A> = a.peekable();
    let mut b: Peekable<B> = b.peekable();
    let mut out = Vec::with_capacity(a.size_hint().0 + b.size_hint().0);
    loop {
        let ord = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => order.cmp_monomials(&x.monomial, &y.monomial),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => break,
        };
        match ord {
            Ordering::Greater => out.push(a.next().unwrap()),
            Ordering::Less => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let x = a.next().unwrap();
                let y = b.next().unwrap();
                let coeff = &x.coeff + &y.coeff;
                if !coeff.is_zero() {
                    out.push(Term {
                        monomial: x.monomial,
                        coeff,
                    });
                }
            }
        }
    }
    out
}
