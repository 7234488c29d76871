//! Exact coefficient arithmetic over the rationals and prime fields.
//!
//! A [`Scalar`] is always stored in canonical form: rationals in lowest
//! terms with a positive denominator, residues fully reduced into
//! `[0, p)`. Equality is therefore structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient domain: `Q` or `F_p` with `p` a word-sized prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec(FieldRepr);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum FieldRepr {
    Rationals,
    Prime(u64),
}

/// Which family a [`FieldSpec`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

impl FieldSpec {
    pub const fn rationals() -> Self {
        FieldSpec(FieldRepr::Rationals)
    }

    /// Prime field `F_p`. Fails unless `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec(FieldRepr::Prime(p)))
        } else {
            Err(Error::InvalidModulus(p))
        }
    }

    pub fn kind(&self) -> FieldKind {
        match self.0 {
            FieldRepr::Rationals => FieldKind::Rationals,
            FieldRepr::Prime(_) => FieldKind::PrimeField,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            FieldRepr::Rationals => None,
            FieldRepr::Prime(p) => Some(p),
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn size(&self) -> Option<u64> {
        self.modulus()
    }

    fn check(&self, other: &FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::rationals()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            FieldRepr::Rationals => f.write_str("q"),
            FieldRepr::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q` or `fp:<modulus>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" {
            return Ok(FieldSpec::rationals());
        }
        let digits = s
            .strip_prefix("fp:")
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}`, expected `q` or `fp:<p>`")))?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad modulus `{digits}`")));
        }
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("modulus `{digits}` does not fit in 64 bits")))?;
        FieldSpec::prime(p)
    }
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut odd = n - 1;
    let mut twos = 0;
    while odd.is_multiple_of(2) {
        odd /= 2;
        twos += 1;
    }
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod(w, odd, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..twos {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue below modulus fits in u64")
}

/// An element of a [`FieldSpec`], kept in canonical form.
///
/// The arithmetic operators on `&Scalar` panic when the operands live in
/// different fields; the `checked_*` methods report the mismatch instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(ScalarRepr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum ScalarRepr {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        Scalar::from_i64(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, v: i64) -> Self {
        match field.0 {
            FieldRepr::Rationals => Scalar(ScalarRepr::Rational(BigRational::from_integer(v.into()))),
            FieldRepr::Prime(p) => Scalar(ScalarRepr::Residue {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            }),
        }
    }

    pub fn from_bigint(field: FieldSpec, v: BigInt) -> Self {
        match field.0 {
            FieldRepr::Rationals => Scalar(ScalarRepr::Rational(BigRational::from_integer(v))),
            FieldRepr::Prime(p) => Scalar(ScalarRepr::Residue {
                value: reduce_bigint(&v, p),
                modulus: p,
            }),
        }
    }

    /// `num / den` in `field`; the result is canonicalized.
    pub fn from_ratio(field: FieldSpec, num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match field.0 {
            FieldRepr::Rationals => Ok(Scalar(ScalarRepr::Rational(BigRational::new(num, den)))),
            FieldRepr::Prime(_) => {
                let n = Scalar::from_bigint(field, num);
                let d = Scalar::from_bigint(field, den);
                n.checked_div(&d)
            }
        }
    }

    pub fn from_rational(field: FieldSpec, r: &BigRational) -> Result<Self> {
        Scalar::from_ratio(field, r.numer().clone(), r.denom().clone())
    }

    /// Parses `a`, `-a` or `a/b` (decimal integers) into `field`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        let (neg, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (num, den) = match body.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (body, None),
        };
        let mut num = parse_digits(num)?;
        if neg {
            num = -num;
        }
        let den = match den {
            Some(d) => parse_digits(d)?,
            None => BigInt::one(),
        };
        Scalar::from_ratio(field, num, den)
    }

    pub fn field(&self) -> FieldSpec {
        match self.0 {
            ScalarRepr::Rational(_) => FieldSpec::rationals(),
            ScalarRepr::Residue { modulus, .. } => FieldSpec(FieldRepr::Prime(modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            ScalarRepr::Rational(r) => r.is_zero(),
            ScalarRepr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            ScalarRepr::Rational(r) => r.is_one(),
            ScalarRepr::Residue { value, .. } => *value == 1,
        }
    }

    /// True for negative rationals; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            ScalarRepr::Rational(r) => r.is_negative(),
            ScalarRepr::Residue { .. } => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            ScalarRepr::Rational(r) => Some(r),
            ScalarRepr::Residue { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            ScalarRepr::Rational(_) => None,
            ScalarRepr::Residue { value, .. } => Some(*value),
        }
    }

    /// The value as an integer, if it is one (residues always are).
    pub fn to_bigint(&self) -> Option<BigInt> {
        match &self.0 {
            ScalarRepr::Rational(r) => r.is_integer().then(|| r.to_integer()),
            ScalarRepr::Residue { value, .. } => Some(BigInt::from(*value)),
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field().check(&rhs.field())?;
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field().check(&rhs.field())?;
        Ok(self - rhs)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field().check(&rhs.field())?;
        Ok(self * rhs)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field().check(&rhs.field())?;
        Ok(self * &rhs.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            ScalarRepr::Rational(r) => Scalar(ScalarRepr::Rational(r.recip())),
            ScalarRepr::Residue { value, modulus } => Scalar(ScalarRepr::Residue {
                value: inv_mod(*value, *modulus).expect("nonzero residue mod a prime is invertible"),
                modulus: *modulus,
            }),
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one(self.field());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn parse_digits(s: &str) -> Result<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("expected decimal digits, found `{s}`")));
    }
    BigInt::parse_bytes(s.as_bytes(), 10).ok_or_else(|| Error::Parse(format!("bad integer `{s}`")))
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (ScalarRepr::Rational(a), ScalarRepr::Rational(b)) => Scalar(ScalarRepr::Rational(a + b)),
            (ScalarRepr::Residue { value: a, modulus: p }, ScalarRepr::Residue { value: b, modulus: q }) if p == q => {
                Scalar(ScalarRepr::Residue {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                })
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (ScalarRepr::Rational(a), ScalarRepr::Rational(b)) => Scalar(ScalarRepr::Rational(a * b)),
            (ScalarRepr::Residue { value: a, modulus: p }, ScalarRepr::Residue { value: b, modulus: q }) if p == q => {
                Scalar(ScalarRepr::Residue {
                    value: mul_mod(*a, *b, *p),
                    modulus: *p,
                })
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match &self.0 {
            ScalarRepr::Rational(a) => Scalar(ScalarRepr::Rational(-a)),
            ScalarRepr::Residue { value, modulus } => Scalar(ScalarRepr::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            ScalarRepr::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            ScalarRepr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        Scalar::parse(FieldSpec::rationals(), s).unwrap()
    }

    fn f7(v: i64) -> Scalar {
        Scalar::from_i64(FieldSpec::prime(7).unwrap(), v)
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q("1/2") + &q("1/3"), q("5/6"));
    }

    #[test]
    fn inverse_mod_seven() {
        assert_eq!(f7(3).inv().unwrap(), f7(5));
    }

    #[test]
    fn lowest_terms_on_construction() {
        let half = q("2/4");
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(half, q("1/2"));
        assert!(Scalar::parse(FieldSpec::rationals(), "3/-1").is_err());
    }

    #[test]
    fn denominators_are_positive() {
        let s = Scalar::from_ratio(FieldSpec::rationals(), 3.into(), (-6).into()).unwrap();
        assert_eq!(s.as_rational().unwrap().denom(), &BigInt::from(2));
        assert_eq!(s.to_string(), "-1/2");
    }

    #[test]
    fn zero_checks() {
        assert!(q("0/1").is_zero());
        assert!(f7(7).is_zero());
        assert!(!q("-3/9").is_zero());
    }

    #[test]
    fn mixed_fields_rejected() {
        let err = q("1").checked_add(&f7(1)).unwrap_err();
        assert!(matches!(err, Error::DomainMismatch { .. }));
        assert!(f7(2).checked_mul(&Scalar::one(FieldSpec::prime(11).unwrap())).is_err());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(q("0").inv().unwrap_err(), Error::DivisionByZero);
        assert_eq!(f7(14).inv().unwrap_err(), Error::DivisionByZero);
        assert!(Scalar::parse(FieldSpec::prime(7).unwrap(), "1/7").is_err());
    }

    #[test]
    fn field_spec_text() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::rationals());
        let f = "fp:10007".parse::<FieldSpec>().unwrap();
        assert_eq!(f.modulus(), Some(10007));
        assert_eq!(f.to_string(), "fp:10007");
        assert!("fp:10".parse::<FieldSpec>().is_err());
        assert!("fp:".parse::<FieldSpec>().is_err());
        assert!("fp:-7".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(10007));
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn residue_parse_of_fraction() {
        let f = FieldSpec::prime(7).unwrap();
        // 1/2 = 4 mod 7
        assert_eq!(Scalar::parse(f, "1/2").unwrap(), f7(4));
        assert_eq!(Scalar::parse(f, "-1").unwrap(), f7(6));
    }

    fn field_strategy() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::rationals()),
            Just(FieldSpec::prime(7).unwrap()),
            Just(FieldSpec::prime(10007).unwrap()),
            Just(FieldSpec::prime(18446744073709551557).unwrap()),
        ]
    }

    fn scalar_in(field: FieldSpec) -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(move |(n, d)| {
            Scalar::from_ratio(field, n.into(), d.into()).unwrap_or_else(|_| Scalar::zero(field))
        })
    }

    fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        field_strategy().prop_flat_map(|f| (scalar_in(f), scalar_in(f), scalar_in(f)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn canonical_form_is_idempotent((a, _, _) in triple()) {
            let text = a.to_string();
            let again = Scalar::parse(a.field(), &text).unwrap();
            prop_assert_eq!(&again, &a);
            prop_assert_eq!(again.to_string(), text);
        }
    }
}
