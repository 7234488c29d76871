//! Exact algebra for the banded shift matrix
//!
//! ```text
//!     | x1 x2 .. xd 0  ..  0 |
//! X = | 0  x1 x2 .. xd ..  0 |
//!     | ..                   |
//!     | 0  ..  0 x1 x2 .. xd |
//! ```
//!
//! whose `n-d+1` rows are the right shifts of `(x1, ..., xd, 0, ..., 0)`.
//! The crate enumerates the maximal minors of `X`, certifies that they form
//! a Groebner basis under grevlex, and uses them to complete any `d-1`
//! independent vectors of `F^n` to a basis with shifts of a single vector.
//!
//! Coefficients are exact: arbitrary-precision rationals or a prime field.
//! Variables are ordered `x_d > ... > x_1`.

pub mod arith;
pub mod checks;
pub mod circulant;
pub mod completion;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod poly;

pub use arith::{FieldKind, FieldSpec, Scalar};
pub use circulant::{ColumnSet, Limits, Minor, ShiftShape};
pub use completion::{CompletionResult, ProblemInstance, Strategy};
pub use error::{Error, Result};
pub use groebner::{GroebnerReport, MinorSystem, Verdict};
pub use linalg::{PolyMatrix, ScalarMatrix};
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
