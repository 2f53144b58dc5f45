//! Exact arithmetic in `Z[q, q^-1]`, the ring of Laurent polynomials in one
//! variable with arbitrary-precision integer coefficients.
//!
//! Polynomials are kept in canonical sparse form: a map from exponent to
//! nonzero coefficient, so equality is map equality and the zero polynomial
//! is the empty map. Exponents may be negative.

pub(crate) mod dense;
mod parse;

pub use parse::ParseError;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

use crate::ZeroInput;

/// Element of `Z[q, q^-1]` in canonical sparse form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

/// Errors from [`LaurentPoly::divide_exact`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not exactly divisible")]
    NotDivisible,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// The unit `q^k` (any integer `k`).
    pub fn q_power(k: i64) -> Self {
        Self::monomial(1, k)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut p = Self::zero();
        for (exp, c) in pairs {
            p.add_term(exp, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// True for the ring units `±q^k`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Largest exponent with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent with a nonzero coefficient; `None` for zero.
    pub fn low_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Coefficient of the highest-degree term.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Multiplies by `q^k`.
    pub fn shifted(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// GCD of the coefficient magnitudes (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Sum of coefficients, i.e. the value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub(crate) fn to_dense(&self) -> Option<(i64, Vec<BigInt>)> {
        let low = self.low_degree()?;
        let high = self.degree()?;
        let mut v = vec![BigInt::zero(); (high - low + 1) as usize];
        for (&e, c) in &self.terms {
            v[(e - low) as usize] = c.clone();
        }
        Some((low, v))
    }

    pub(crate) fn from_dense(low: i64, coeffs: Vec<BigInt>) -> Self {
        Self {
            terms: coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (low + i as i64, c))
                .collect(),
        }
    }

    /// Exact division: returns `c` with `divisor * c == self`, or
    /// [`DivisionError::NotDivisible`] when no such Laurent polynomial exists.
    ///
    /// Both operands are shifted to ordinary polynomials and divided by
    /// integer-coefficient long division; any non-integral quotient step or
    /// nonzero remainder means the quotient does not exist in the ring.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self, DivisionError> {
        if divisor.is_zero() {
            return Err(DivisionError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (la, a) = self.to_dense().unwrap();
        let (lb, b) = divisor.to_dense().unwrap();
        match dense::div_exact(&a, &b) {
            Some(q) => Ok(Self::from_dense(la - lb, q)),
            None => Err(DivisionError::NotDivisible),
        }
    }

    /// Quotient and remainder for a monic divisor; the identity
    /// `self == quotient * divisor + remainder` is exact over the integers.
    pub(crate) fn divrem_monic(&self, divisor: &Self) -> (Self, Self) {
        let (ld, d) = divisor.to_dense().expect("nonzero monic divisor");
        debug_assert!(d.last().unwrap().is_one());
        let Some((la, a)) = self.to_dense() else {
            return (Self::zero(), Self::zero());
        };
        let (q, r) = dense::divrem_monic(&a, &d);
        (Self::from_dense(la - ld, q), Self::from_dense(la, r))
    }

    /// Decomposes a nonzero polynomial as
    /// `sign · content · q^q_power · primitive`.
    pub fn normalize_unit(&self) -> Result<UnitNormalForm, ZeroInput> {
        let low = self.low_degree().ok_or(ZeroInput)?;
        let content = self.content();
        let sign: i8 = if self.leading_coeff().unwrap().is_negative() {
            -1
        } else {
            1
        };
        let divisor = if sign < 0 { -&content } else { content.clone() };
        let primitive = Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e - low, c / &divisor))
                .collect(),
        };
        Ok(UnitNormalForm {
            sign,
            q_power: low,
            content,
            primitive,
        })
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse::parse(text)
    }
}

/// Decomposition of a nonzero Laurent polynomial into a unit `sign · q^k`,
/// a positive integer content, and a primitive part (lowest exponent 0,
/// positive leading coefficient, content 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitNormalForm {
    pub sign: i8,
    pub q_power: i64,
    pub content: BigInt,
    pub primitive: LaurentPoly,
}

impl UnitNormalForm {
    pub fn reconstruct(&self) -> LaurentPoly {
        let unit = LaurentPoly::monomial(BigInt::from(self.sign) * &self.content, self.q_power);
        &unit * &self.primitive
    }

    /// Units of the ring are exactly the inputs with trivial primitive part
    /// and content.
    pub fn is_unit(&self) -> bool {
        self.primitive.is_one() && self.content.is_one()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical printing: ascending exponents, explicit `^`, `q^-k` for negative
/// exponents, coefficients of magnitude 1 reduced to their sign.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (exp, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            if exp == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if exp == 1 {
                    f.write_str("q")?;
                } else {
                    write!(f, "q^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: Self) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: Self) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: Self) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let (la, a) = self.to_dense().unwrap();
        let (lb, b) = rhs.to_dense().unwrap();
        LaurentPoly::from_dense(la + lb, dense::mul(&a, &b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    #[test]
    fn parse_denotations() {
        assert_eq!(
            p("q^-1 + 2"),
            LaurentPoly::from_terms([(-1, BigInt::from(1)), (0, BigInt::from(2))])
        );
        assert_eq!(
            p("(q-1)*(q+1)"),
            LaurentPoly::from_terms([(2, BigInt::from(1)), (0, BigInt::from(-1))])
        );
        assert_eq!(p("q - q"), LaurentPoly::zero());
        assert_eq!(p("-q^-2*(q-1)*(q+1)"), p("-1 + q^-2"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        for (text, pos) in [("", 0), ("q^", 2), ("2x", 1), ("(q-1", 4), ("q + ", 4)] {
            let err = LaurentPoly::parse(text).unwrap_err();
            assert_eq!(err.position, pos, "input {text:?}");
        }
        assert!(LaurentPoly::parse("q^99999999999999999999").is_err());
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("q-1") * &p("q+1"), p("q^2-1"));
        let x = p("3*q^2 - q^-5 + 7");
        assert_eq!(&x + &(-&x), LaurentPoly::zero());
        assert_eq!(&p("q^-2") * &p("q^5-1"), p("q^3 - q^-2"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("q^3-1").divide_exact(&p("q-1")).unwrap(), p("q^2+q+1"));
        assert_eq!(
            p("q^5-1").divide_exact(&p("q^4+q^3+q^2+q+1")).unwrap(),
            p("q-1")
        );
        assert_eq!(
            p("q^2+1").divide_exact(&p("q-1")),
            Err(DivisionError::NotDivisible)
        );
        assert_eq!(
            p("q").divide_exact(&LaurentPoly::zero()),
            Err(DivisionError::DivisionByZero)
        );
        assert_eq!(
            LaurentPoly::zero().divide_exact(&p("q+1")).unwrap(),
            LaurentPoly::zero()
        );
        // Non-monic divisors must stay exact over the integers.
        assert_eq!(p("2*q^2-2").divide_exact(&p("2")).unwrap(), p("q^2-1"));
        assert_eq!(
            p("q^2-1").divide_exact(&p("2")),
            Err(DivisionError::NotDivisible)
        );
    }

    #[test]
    fn unit_normal_form() {
        let nf = p("-q^-2 + q^-3").normalize_unit().unwrap();
        assert_eq!(nf.sign, -1);
        assert_eq!(nf.q_power, -3);
        assert_eq!(nf.content, BigInt::from(1));
        assert_eq!(nf.primitive, p("q-1"));
        assert_eq!(nf.reconstruct(), p("-q^-2 + q^-3"));

        let nf = p("q+1").normalize_unit().unwrap();
        assert_eq!((nf.sign, nf.q_power), (1, 0));
        assert_eq!(nf.primitive, p("q+1"));

        let nf = p("2*q^2-2").normalize_unit().unwrap();
        assert_eq!(nf.content, BigInt::from(2));
        assert_eq!(nf.primitive, p("q^2-1"));

        assert_eq!(LaurentPoly::zero().normalize_unit(), Err(ZeroInput));
        assert!(p("-q^7").normalize_unit().unwrap().is_unit());
        assert!(!p("-3*q^7").normalize_unit().unwrap().is_unit());
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("-1 + 2*q^3 + q^-2").to_string(), "q^-2 - 1 + 2*q^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("0-q").to_string(), "-q");
        assert_eq!(p("q^1").to_string(), "q");
        assert_eq!((-&LaurentPoly::one()).to_string(), "-1");
    }

    fn arb_coeff() -> impl Strategy<Value = BigInt> {
        // Coefficients up to 2^256 in magnitude.
        (
            proptest::collection::vec(any::<u8>(), 0..=32),
            any::<bool>(),
        )
            .prop_map(|(bytes, neg)| {
                let n = BigInt::from_bytes_le(num_bigint::Sign::Plus, &bytes);
                if neg {
                    -n
                } else {
                    n
                }
            })
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-30i64..=30, arb_coeff()), 0..8)
            .prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, LaurentPoly::zero());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
        }

        #[test]
        fn print_parse_round_trip(a in arb_poly()) {
            prop_assert_eq!(LaurentPoly::parse(&a.to_string()).unwrap(), a);
        }

        #[test]
        fn unit_normal_form_is_multiplicative(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let (na, nb) = (a.normalize_unit().unwrap(), b.normalize_unit().unwrap());
            let nab = (&a * &b).normalize_unit().unwrap();
            prop_assert_eq!(nab.sign, na.sign * nb.sign);
            prop_assert_eq!(nab.q_power, na.q_power + nb.q_power);
            prop_assert_eq!(nab.content, na.content * nb.content);
            prop_assert_eq!(nab.primitive, &na.primitive * &nb.primitive);
        }
    }
}
