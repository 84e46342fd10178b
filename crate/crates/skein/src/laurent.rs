//! Exact arithmetic in the coefficient ring `R = Z[A, A^-1]`.
//!
//! Polynomials are kept in canonical form at all times: no zero
//! coefficient is ever stored, so two equal polynomials have identical
//! term maps. The canonical text form lists terms in strictly
//! descending exponent, e.g. `-A^2 - A^-2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::num::Coeff;

/// An element of `Z[A, A^-1]`, as a map exponent -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly<C: Coeff> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    /// `coeff * A^exp`.
    pub fn monomial(exp: i64, coeff: C) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// `A^exp`.
    pub fn var_pow(exp: i64) -> Self {
        Self::monomial(exp, C::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::monomial(0, C::from_i64(v).expect("small integer"))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(C::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k.clone() * c.clone())).collect(),
        }
    }

    /// Multiply by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = LaurentPoly::mul(&out, self);
        }
        out
    }

    /// The substitution `A -> A^-1`.
    pub fn mirror(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact evaluation at a nonzero rational `a`.
    pub fn eval(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::ZeroSubstitution);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let base = if *e >= 0 {
                pow_rat(a, *e as u64)
            } else {
                pow_rat(&a.recip(), (-e) as u64)
            };
            acc += c.to_big_rational() * base;
        }
        Ok(acc)
    }

    /// JSON form: array of `[exponent, coefficient-string]` pairs in
    /// descending exponent order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(e, c)| json!([e, c.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| parse_err("expected array"))?;
        let mut p = Self::zero();
        for pair in arr {
            let pair = pair.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                parse_err("expected [exponent, coefficient] pair")
            })?;
            let e = pair[0].as_i64().ok_or_else(|| parse_err("bad exponent"))?;
            let cs = pair[1].as_str().ok_or_else(|| parse_err("bad coefficient"))?;
            let c = C::parse_decimal(cs).ok_or_else(|| parse_err("bad coefficient"))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

fn parse_err(msg: &str) -> Error {
    Error::Parse { line: 0, msg: msg.to_string() }
}

fn pow_rat(a: &BigRational, n: u64) -> BigRational {
    let mut out = BigRational::one();
    let mut base = a.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            out *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    out
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                if *e == 1 {
                    write!(f, "A")?;
                } else {
                    write!(f, "A^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> FromStr for LaurentPoly<C> {
    type Err = Error;

    /// Parses the canonical text form, e.g. `-A^2 - A^-2`, `2A + 1`, `0`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_err("empty polynomial"));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        let bytes = compact.as_bytes();
        let mut i = 0;
        let mut first = true;
        while i < bytes.len() {
            let mut sign = 1i64;
            match bytes[i] {
                b'+' => {
                    i += 1;
                }
                b'-' => {
                    sign = -1;
                    i += 1;
                }
                _ if first => {}
                _ => return Err(parse_err("expected sign between terms")),
            }
            first = false;
            // optional integer part
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let int_part = &compact[start..i];
            let mut coeff = if int_part.is_empty() {
                C::one()
            } else {
                C::parse_decimal(int_part).ok_or_else(|| parse_err("bad integer"))?
            };
            if sign < 0 {
                coeff = -coeff;
            }
            // optional A^k
            let mut exp = 0i64;
            if i < bytes.len() && bytes[i] == b'A' {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let estart = i;
                    if i < bytes.len() && bytes[i] == b'-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = compact[estart..i]
                        .parse()
                        .map_err(|_| parse_err("bad exponent"))?;
                }
            } else if int_part.is_empty() {
                return Err(parse_err("expected coefficient or A"));
            }
            p.add_term(exp, coeff);
        }
        Ok(p)
    }
}

macro_rules! ref_binop {
    ($trait:ident, $method:ident, $inherent:ident) => {
        impl<'a, C: Coeff> $trait<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: &'a LaurentPoly<C>) -> LaurentPoly<C> {
                self.$inherent(rhs)
            }
        }
        impl<C: Coeff> $trait for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                LaurentPoly::$inherent(&self, &rhs)
            }
        }
    };
}

ref_binop!(Add, add, add);
ref_binop!(Sub, sub, sub);
ref_binop!(Mul, mul, mul);

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly::neg(self)
    }
}

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly::neg(&self)
    }
}
