use std::collections::BTreeMap;

use num_traits::Zero;

use super::VectorField;
use crate::algebra::{ExponentVector, LaurentPolynomial, Rational};
use crate::error::{Error, Result};

/// A vector field written over `D_k = x_k ∂/∂x_k` as a Laurent polynomial
/// with constant vector coefficients: `X = Σ_n x^n (X_{n,1} D_1 + ... + X_{n,d} D_d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DForm {
    dimension: usize,
    coefficients: BTreeMap<ExponentVector, Vec<Rational>>,
}

impl DForm {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Entries `n ↦ X(n)` in lexicographic order of `n`. No vector is zero.
    pub fn coefficients(&self) -> &BTreeMap<ExponentVector, Vec<Rational>> {
        &self.coefficients
    }

    pub fn get(&self, n: &ExponentVector) -> Option<&Vec<Rational>> {
        self.coefficients.get(n)
    }

    /// The support `{n : X(n) ≠ 0}`.
    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.coefficients.keys()
    }

    pub fn from_field(x: &VectorField) -> Self {
        let d = x.dimension();
        let mut coefficients: BTreeMap<ExponentVector, Vec<Rational>> = BTreeMap::new();
        for (axis, f) in x.components().iter().enumerate() {
            let unit = ExponentVector::unit(d, axis);
            for (m, c) in f.terms() {
                let slot = coefficients
                    .entry(m - &unit)
                    .or_insert_with(|| vec![Rational::zero(); d]);
                slot[axis] += c;
            }
        }
        // Each (m, axis) contributes to exactly one (n, axis) slot, so no
        // cancellation can produce a zero vector here.
        debug_assert!(coefficients
            .values()
            .all(|v| v.iter().any(|c| !c.is_zero())));
        DForm {
            dimension: d,
            coefficients,
        }
    }

    /// Builds from `(n, X(n))` entries; zero vectors are dropped, repeated
    /// exponents summed.
    pub fn from_entries<I>(dimension: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Vec<Rational>)>,
    {
        let mut coefficients: BTreeMap<ExponentVector, Vec<Rational>> = BTreeMap::new();
        for (n, v) in entries {
            Error::dims(dimension, n.dimension())?;
            Error::dims(dimension, v.len())?;
            let slot = coefficients
                .entry(n)
                .or_insert_with(|| vec![Rational::zero(); dimension]);
            for (s, c) in slot.iter_mut().zip(v) {
                *s += c;
            }
        }
        coefficients.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        Ok(DForm {
            dimension,
            coefficients,
        })
    }

    pub fn to_field(&self) -> VectorField {
        let d = self.dimension;
        let mut terms: Vec<Vec<(ExponentVector, Rational)>> = vec![Vec::new(); d];
        for (n, v) in &self.coefficients {
            for (axis, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    terms[axis].push((n + &ExponentVector::unit(d, axis), c.clone()));
                }
            }
        }
        let components = terms
            .into_iter()
            .map(|t| LaurentPolynomial::from_terms(d, t).expect("dimensions checked"))
            .collect();
        VectorField::new(components).expect("dimensions checked")
    }
}

pub fn dot(n: &ExponentVector, v: &[Rational]) -> Rational {
    n.components()
        .iter()
        .zip(v)
        .map(|(&k, c)| c * Rational::from_integer(k.into()))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// `[x^v V, x^u U] = x^{v+u} ((u·V) U − (v·U) V)`.
pub fn d_form_bracket_term(
    v: &ExponentVector,
    big_v: &[Rational],
    u: &ExponentVector,
    big_u: &[Rational],
) -> Result<(ExponentVector, Vec<Rational>)> {
    let d = v.dimension();
    Error::dims(d, u.dimension())?;
    Error::dims(d, big_v.len())?;
    Error::dims(d, big_u.len())?;
    let u_dot_v = dot(u, big_v);
    let v_dot_u = dot(v, big_u);
    let k = big_u
        .iter()
        .zip(big_v)
        .map(|(a, b)| &u_dot_v * a - &v_dot_u * b)
        .collect();
    Ok((v + u, k))
}
