use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{format_rational, ExponentVector, Rational};
use crate::error::{Error, Result};

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse Laurent polynomial in `d` variables with exact rational
/// coefficients. Zero coefficients are never stored, so structural equality
/// is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    dimension: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(dimension: usize) -> Self {
        LaurentPolynomial {
            dimension,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dimension: usize, c: Rational) -> Self {
        Self::monomial(c, ExponentVector::zero(dimension))
    }

    pub fn one(dimension: usize) -> Self {
        Self::constant(dimension, Rational::one())
    }

    pub fn monomial(c: Rational, exponent: ExponentVector) -> Self {
        let dimension = exponent.dimension();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        LaurentPolynomial { dimension, terms }
    }

    /// The coordinate function `x_axis`.
    pub fn variable(dimension: usize, axis: usize) -> Self {
        Self::monomial(Rational::one(), ExponentVector::unit(dimension, axis))
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(dimension: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Self::zero(dimension);
        for (e, c) in terms {
            Error::dims(dimension, e.dimension())?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &ExponentVector) -> Rational {
        self.terms
            .get(exponent)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Returns the constant value if the polynomial has no non-constant term.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&ExponentVector, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms
            .keys()
            .any(|e| e.components().iter().any(|&c| c < 0))
    }

    fn add_term(&mut self, exponent: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Error::dims(self.dimension, other.dimension)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        Error::dims(self.dimension, other.dimension)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Error::dims(self.dimension, other.dimension)?;
        let mut out = Self::zero(self.dimension);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dimension);
        }
        LaurentPolynomial {
            dimension: self.dimension,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies every exponent by the monomial `x^shift`.
    pub fn shift(&self, shift: &ExponentVector) -> Self {
        LaurentPolynomial {
            dimension: self.dimension,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e + shift, v.clone()))
                .collect(),
        }
    }

    /// Integer power. Negative powers are only defined for monomials.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            let (e, c) = self.as_monomial().ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "negative power of a non-monomial polynomial `{self}`"
                ))
            })?;
            let inv = Self::monomial(c.recip(), -e);
            return inv.pow(-n);
        }
        let mut result = Self::one(self.dimension);
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Formal partial derivative with respect to `x_axis`, Laurent rule.
    pub fn derivative(&self, axis: usize) -> Result<Self> {
        if axis >= self.dimension {
            return Err(Error::AxisOutOfRange {
                axis,
                dimension: self.dimension,
            });
        }
        let mut out = Self::zero(self.dimension);
        for (e, c) in &self.terms {
            let k = e[axis];
            if k == 0 {
                continue;
            }
            let mut comps = e.components().to_vec();
            comps[axis] -= 1;
            out.add_term(
                ExponentVector::new(comps),
                c * Rational::from_integer(k.into()),
            );
        }
        Ok(out)
    }

    /// Maximum total degree over the terms (the degree in one variable when
    /// `d = 1`).
    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| Degree::Finite(e.total_degree()))
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// Re-embeds into `new_dimension` variables, placing variable `i` at
    /// position `offset + i`.
    pub fn embed(&self, new_dimension: usize, offset: usize) -> Self {
        assert!(offset + self.dimension <= new_dimension);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut comps = vec![0; new_dimension];
                comps[offset..offset + self.dimension].copy_from_slice(e.components());
                (ExponentVector::new(comps), c.clone())
            })
            .collect();
        LaurentPolynomial {
            dimension: new_dimension,
            terms,
        }
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        Error::dims(self.dimension, point.len())?;
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e.components()) {
                if k < 0 && x.is_zero() {
                    return Err(Error::DivisionByZero {
                        context: self.to_string(),
                    });
                }
                term *= num_traits::pow::Pow::pow(x, k as i32);
            }
            total += term;
        }
        Ok(total)
    }

    /// Prints with the given variable names. Terms appear in ascending
    /// lexicographic exponent order.
    pub fn to_string_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.dimension);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = format_monomial(e, names);
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => out.push_str(&format_rational(&mag)),
                (false, true) => out.push_str(&mono),
                (false, false) => {
                    out.push_str(&format_rational(&mag));
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    pub fn default_names(dimension: usize) -> Vec<String> {
        (1..=dimension).map(|i| format!("x{i}")).collect()
    }
}

fn format_monomial(e: &ExponentVector, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (name, &k) in names.iter().zip(e.components()) {
        match k.cmp(&1) {
            Ordering::Equal => parts.push(name.clone()),
            _ if k == 0 => {}
            _ => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&Self::default_names(self.dimension)))
    }
}

// Operator forms panic on dimension mismatch; use the `checked_*` methods
// for unvalidated input.

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.checked_add(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.checked_sub(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.checked_mul(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            dimension: self.dimension,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}
