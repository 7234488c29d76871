use std::fmt;

use crate::error::{Error, Result};

use super::order::MonomialOrder;

/// A monomial `x1^k1 * ... * xd^kd`.
///
/// `exponents()[i]` is the power of `x{i+1}`. The total degree is cached
/// and always equals the exponent sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    /// Panics if the total degree overflows `u32`.
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .expect("monomial degree overflows u32");
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    /// The variable `x{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::DimensionMismatch(format!(
                "variable index {index} out of range for {nvars} variables"
            )));
        }
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Ok(Monomial { exps, degree: 1 })
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, if `divisor` divides `self`.
    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&divisor.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - divisor.degree,
        })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials in `nvars` variables of total degree exactly `degree`,
/// sorted descending under `order`.
pub fn enumerate_monomials(nvars: usize, degree: u32, order: MonomialOrder) -> Vec<Monomial> {
    fn fill(slot: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if slot + 1 == cur.len() {
            cur[slot] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[slot] = e;
            fill(slot + 1, left - e, cur, out);
        }
    }

    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    fill(0, degree, &mut vec![0; nvars], &mut out);
    out.sort_by(|a, b| order.cmp_monomials(b, a));
    out
}
