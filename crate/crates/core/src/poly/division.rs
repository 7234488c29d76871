//! Multivariate division and S-polynomials.

use crate::arith::Scalar;
use crate::error::{Error, Result};

use super::{merge, Monomial, Polynomial, Term};

/// Result of dividing `f` by an ordered list of divisors:
/// `f = sum(quotients[i] * divisors[i]) + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Divides `f` by `divisors`.
///
/// The largest remaining term is always treated first. It is reduced by the
/// first divisor (in slice order) whose leading monomial divides it, or
/// moved to the remainder if none does. No term of the remainder is
/// divisible by any divisor's leading monomial.
pub fn reduce(f: &Polynomial, divisors: &[Polynomial]) -> Result<Division> {
    let (quotients, remainder) = divide(f, divisors, true)?;
    Ok(Division {
        quotients: quotients.expect("quotients requested"),
        remainder,
    })
}

/// The remainder of [`reduce`] without the bookkeeping for quotients.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial]) -> Result<Polynomial> {
    Ok(divide(f, divisors, false)?.1)
}

fn divide(f: &Polynomial, divisors: &[Polynomial], track: bool) -> Result<(Option<Vec<Polynomial>>, Polynomial)> {
    let ring = f.ring();
    let mut leads = Vec::with_capacity(divisors.len());
    for g in divisors {
        ring.check(&g.ring())?;
        let lt = g.leading_term()?;
        leads.push((&lt.monomial, lt.coeff.inv()?));
    }

    let mut quotients: Option<Vec<Vec<Term>>> = track.then(|| vec![Vec::new(); divisors.len()]);
    let mut remainder = Vec::new();
    let mut work: Vec<Term> = f.terms().to_vec();
    // `work` is kept reversed (smallest term first) so the leading term pops
    // off the end; merges rebuild it in descending order and flip it back.
    work.reverse();

    while let Some(lead) = work.pop() {
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, (lm, inv))| lead.monomial.checked_div(lm).map(|m| (i, m, inv)));
        let Some((i, factor_m, lc_inv)) = hit else {
            remainder.push(lead);
            continue;
        };
        let factor_c = &lead.coeff * lc_inv;
        let neg_c = -&factor_c;
        let tail = divisors[i].terms()[1..].iter().map(|t| Term {
            monomial: t.monomial.mul(&factor_m),
            coeff: &t.coeff * &neg_c,
        });
        let mut merged = merge(ring.order, work.drain(..).rev(), tail);
        merged.reverse();
        work = merged;
        if let Some(q) = quotients.as_mut() {
            q[i].push(Term {
                monomial: factor_m,
                coeff: factor_c,
            });
        }
    }

    let quotients = quotients.map(|qs| {
        qs.into_iter()
            .map(|terms| Polynomial::from_sorted_terms(ring, terms))
            .collect()
    });
    Ok((quotients, Polynomial::from_sorted_terms(ring, remainder)))
}

/// `S(f, g) = (L / LT(f)) f - (L / LT(g)) g` with `L = lcm(LM(f), LM(g))`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.ring().check(&g.ring())?;
    let (tf, tg) = (f.leading_term()?, g.leading_term()?);
    let lcm = tf.monomial.lcm(&tg.monomial);
    let cofactor = |t: &Term| -> Result<(Monomial, Scalar)> {
        let m = lcm
            .checked_div(&t.monomial)
            .ok_or_else(|| Error::Internal("lcm not divisible by leading monomial".into()))?;
        Ok((m, t.coeff.inv()?))
    };
    let (mf, cf) = cofactor(tf)?;
    let (mg, cg) = cofactor(tg)?;
    Ok(f.mul_term(&mf, &cf).add_unchecked(&g.mul_term(&mg, &-cg)))
}
