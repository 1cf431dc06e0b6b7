//! Exact arithmetic in the polynomial ring `K[q]` with K the rationals.
//!
//! Polynomials are dense ascending coefficient lists over arbitrary-precision
//! rationals. Canonical form is maintained by every operation: coefficients
//! are reduced with positive denominator (guaranteed by [`Rat`]) and the
//! coefficient list never carries trailing zeros, so the zero polynomial is
//! the empty list.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field element: an arbitrary-precision rational, always stored
/// reduced with positive denominator.
pub type Rat = BigRational;

/// Shorthand constructor for a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand constructor for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse a rational from its canonical `"n/d"` or `"n"` string form.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("invalid rational `{s}`: {e}"),
    })
}

/// Degree of a polynomial, with a distinguished bottom element for the zero
/// polynomial so that degree comparisons read uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    /// Degree of the zero polynomial; smaller than every finite degree.
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl PartialEq<usize> for Degree {
    fn eq(&self, other: &usize) -> bool {
        matches!(self, Degree::Finite(d) if d == other)
    }
}

impl PartialOrd<usize> for Degree {
    fn partial_cmp(&self, other: &usize) -> Option<Ordering> {
        match self {
            Degree::NegInf => Some(Ordering::Less),
            Degree::Finite(d) => d.partial_cmp(other),
        }
    }
}

/// A univariate polynomial over the rationals, dense ascending coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    /// The zero polynomial (empty coefficient list).
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    /// The variable q.
    pub fn q() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    /// A constant polynomial.
    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial c * q^k.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Build from an ascending coefficient list, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Build from machine-integer coefficients (test and construction helper).
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Ascending coefficient slice; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of q^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn scalar_mul(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Nonnegative integer power, `pow(a, 0) = 1`.
    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = quot * rhs + rem` with
    /// `degree(rem) < degree(rhs)`. Exact over the rationals, unique.
    pub fn divrem(&self, rhs: &Poly) -> Result<(Poly, Poly)> {
        let Some(lead) = rhs.leading_coeff() else {
            return Err(Error::DivisionByZeroPoly);
        };
        let d_deg = rhs.coeffs.len() - 1;
        if self.coeffs.len() < rhs.coeffs.len() {
            return Ok((Poly::zero(), self.clone()));
        }

        let mut rem = self.coeffs.clone();
        let q_len = self.coeffs.len() - d_deg;
        let mut quot = vec![Rat::zero(); q_len];
        for i in (0..q_len).rev() {
            let c = &rem[i + d_deg];
            if c.is_zero() {
                continue;
            }
            let qc = c / lead;
            for (j, dj) in rhs.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    rem[i + j] = &rem[i + j] - &(dj * &qc);
                }
            }
            quot[i] = qc;
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Division known to be exact; a nonzero remainder is reported to the
    /// caller, which maps it to its own error.
    pub(crate) fn exact_div(&self, rhs: &Poly) -> Result<Poly> {
        let (quot, rem) = self.divrem(rhs)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::InternalDivisibilityViolation(format!(
                "{self} is not divisible by {rhs}"
            )))
        }
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval_at(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        // Leading coefficients are nonzero in a field, no trim needed.
        Poly { coeffs }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| &acc + &p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::render_poly(
            self,
            crate::text::PolyFormat::Plain,
        ))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

// Canonical JSON form: {"coeffs": ["n/d", ...]} ascending, zero poly = [].
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a [Rat]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for c in self.0 {
                    seq.serialize_element(&c.to_string())?;
                }
                seq.end()
            }
        }
        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = Poly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map {\"coeffs\": [\"n/d\", ...]}")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<Poly, A::Error> {
                let mut coeffs: Option<Vec<Rat>> = None;
                while let Some(key) = map.next_key::<String>()? {
                    if key == "coeffs" {
                        coeffs = Some(map.next_value::<CoeffStrings>()?.0);
                    } else {
                        return Err(de::Error::unknown_field(&key, &["coeffs"]));
                    }
                }
                let coeffs = coeffs.ok_or_else(|| de::Error::missing_field("coeffs"))?;
                Ok(Poly::from_coeffs(coeffs))
            }
        }

        struct CoeffStrings(Vec<Rat>);
        impl<'de> Deserialize<'de> for CoeffStrings {
            fn deserialize<D: Deserializer<'de>>(
                deserializer: D,
            ) -> std::result::Result<Self, D::Error> {
                struct V;
                impl<'de> Visitor<'de> for V {
                    type Value = CoeffStrings;
                    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                        f.write_str("a list of rational strings")
                    }
                    fn visit_seq<A: SeqAccess<'de>>(
                        self,
                        mut seq: A,
                    ) -> std::result::Result<CoeffStrings, A::Error> {
                        let mut out = Vec::new();
                        while let Some(s) = seq.next_element::<String>()? {
                            let r = Rat::from_str(&s).map_err(|e| {
                                de::Error::custom(format!("invalid rational `{s}`: {e}"))
                            })?;
                            out.push(r);
                        }
                        Ok(CoeffStrings(out))
                    }
                }
                deserializer.deserialize_seq(V)
            }
        }

        deserializer.deserialize_map(PolyVisitor)
    }
}
