use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::monomial::Monomial;

/// Graded and lexicographic monomial orders.
///
/// Variable precedence is `x_d > x_{d-1} > ... > x_1`: the variable with
/// the highest index is the largest. Most computer algebra systems use the
/// opposite convention (`x_1` largest); to compare with them, reverse the
/// variable list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Compare exponents starting from `x_d`.
    Lex,
    /// Total degree first, then [`MonomialOrder::Lex`].
    GrLex,
    /// Total degree first, then the monomial with the smaller exponent at
    /// the first differing index scanning up from `x_1` is greater.
    #[default]
    GrevLex,
}

impl MonomialOrder {
    pub const ALL: [MonomialOrder; 3] = [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::GrevLex];

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "comparing monomials in {} and {} variables",
                a.nvars(),
                b.nvars()
            )));
        }
        Ok(self.cmp_monomials(a, b))
    }

    /// Unchecked comparison for monomials already known to share a ring.
    pub(crate) fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => lex_from_top(ea, eb),
            MonomialOrder::GrLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| lex_from_top(ea, eb)),
            MonomialOrder::GrevLex => a.total_degree().cmp(&b.total_degree()).then_with(|| {
                ea.iter()
                    .zip(eb)
                    .find(|(x, y)| x != y)
                    .map_or(Ordering::Equal, |(x, y)| y.cmp(x))
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::GrLex => "grlex",
            MonomialOrder::GrevLex => "grevlex",
        }
    }
}

fn lex_from_top(ea: &[u32], eb: &[u32]) -> Ordering {
    ea.iter()
        .rev()
        .zip(eb.iter().rev())
        .find(|(x, y)| x != y)
        .map_or(Ordering::Equal, |(x, y)| x.cmp(y))
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" => Ok(MonomialOrder::GrLex),
            "grevlex" => Ok(MonomialOrder::GrevLex),
            other => Err(Error::Parse(format!("unknown monomial order `{other}`"))),
        }
    }
}
