//! Polynomial vector fields `X = f_1 ∂/∂x_1 + ... + f_d ∂/∂x_d`, their Lie
//! brackets, the `D_k = x_k ∂/∂x_k` representation and exact spans.

mod dform;
mod span;

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{ExponentVector, LaurentPolynomial, Rational};
use crate::error::{Error, Result};

pub use dform::{d_form_bracket_term, dot, DForm};
pub use span::{span_of, SpanBasis};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: Vec<LaurentPolynomial>,
}

impl VectorField {
    pub fn new(components: Vec<LaurentPolynomial>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Empty("vector field with no components"));
        }
        let d = components.len();
        for c in &components {
            Error::dims(d, c.dimension())?;
        }
        Ok(VectorField { components })
    }

    pub fn zero(dimension: usize) -> Self {
        VectorField {
            components: vec![LaurentPolynomial::zero(dimension); dimension],
        }
    }

    /// `f ∂/∂x` on the line.
    pub fn on_line(f: LaurentPolynomial) -> Result<Self> {
        Self::new(vec![f])
    }

    /// `c · x^exponent ∂/∂x_axis`.
    pub fn monomial(c: Rational, exponent: ExponentVector, axis: usize) -> Self {
        let d = exponent.dimension();
        let mut field = Self::zero(d);
        field.components[axis] = LaurentPolynomial::monomial(c, exponent);
        field
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[LaurentPolynomial] {
        &self.components
    }

    pub fn component(&self, axis: usize) -> &LaurentPolynomial {
        &self.components[axis]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(LaurentPolynomial::is_zero)
    }

    /// Applies the field as a derivation: `X(p) = Σ f_i ∂p/∂x_i`.
    pub fn apply(&self, p: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        Error::dims(self.dimension(), p.dimension())?;
        let mut out = LaurentPolynomial::zero(p.dimension());
        for (i, f) in self.components.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let dp = p.derivative(i)?;
            if !dp.is_zero() {
                out = &out + &(f * &dp);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField {
            components: self.components.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Error::dims(self.dimension(), other.dimension())?;
        Ok(VectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        VectorField {
            components: self.components.iter().map(|f| -f).collect(),
        }
    }

    /// Largest total degree over the components.
    pub fn degree(&self) -> crate::algebra::Degree {
        self.components
            .iter()
            .map(LaurentPolynomial::degree)
            .max()
            .unwrap()
    }

    /// Prints as `f1*d/dx1 + ...` using the given variable names; zero
    /// components are omitted.
    pub fn to_string_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .zip(names)
            .filter(|(f, _)| !f.is_zero())
            .map(|(f, n)| format!("({})*d/d{n}", f.to_string_with(names)))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    pub fn component_strings(&self, names: &[String]) -> Vec<String> {
        self.components
            .iter()
            .map(|f| f.to_string_with(names))
            .collect()
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&LaurentPolynomial::default_names(self.dimension())))
    }
}

/// `[X, Y]` with components `X(g_i) − Y(f_i)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    Error::dims(x.dimension(), y.dimension())?;
    let components = x
        .components
        .iter()
        .zip(&y.components)
        .map(|(f, g)| Ok(&x.apply(g)? - &y.apply(f)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(VectorField { components })
}

/// Extends `fields` by every bracket `[X_i, X_j]`, `i < j`, that is not
/// already in the span of the running list. Brackets are computed in
/// parallel; the merge follows pair order.
pub fn add_pairwise_commutators(fields: &[VectorField]) -> Result<Vec<VectorField>> {
    if fields.is_empty() {
        return Err(Error::Empty("operator list"));
    }
    let pairs: Vec<(usize, usize)> = (0..fields.len())
        .flat_map(|i| (i + 1..fields.len()).map(move |j| (i, j)))
        .collect();
    let brackets = pairs
        .par_iter()
        .map(|&(i, j)| lie_bracket(&fields[i], &fields[j]))
        .collect::<Result<Vec<_>>>()?;
    let mut span = span_of(fields)?;
    let mut out = fields.to_vec();
    for b in brackets {
        if span.insert(&b)? {
            out.push(b);
        }
    }
    Ok(out)
}

/// Acts diagonally on `copies + 1` blocks of variables `(x, x¹, ..., x^m)`.
pub fn prolong(x: &VectorField, copies: usize) -> Result<VectorField> {
    if copies == 0 {
        return Err(Error::InvalidArgument(
            "prolongation needs at least one copy".into(),
        ));
    }
    let d = x.dimension();
    let total = d * (copies + 1);
    let components = (0..=copies)
        .flat_map(|block| x.components.iter().map(move |f| f.embed(total, block * d)))
        .collect();
    Ok(VectorField { components })
}
