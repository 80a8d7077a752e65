use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::VectorField;
use crate::algebra::{ExponentVector, LaurentPolynomial, Rational};
use crate::error::{Error, Result};

/// Coordinate of a field in the flattened coefficient space: the monomial
/// exponent and the component axis.
pub type Coordinate = (ExponentVector, usize);

type Row = BTreeMap<Coordinate, Rational>;

/// Exact reduced row echelon basis of a span of vector fields.
///
/// Columns are ordered lexicographically on `(exponent, axis)`. Each row's
/// pivot is its smallest coordinate, has coefficient 1, and is zero in
/// every other row, so the basis is unique for a given span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanBasis {
    dimension: usize,
    // Keyed by pivot coordinate.
    rows: BTreeMap<Coordinate, Row>,
}

fn flatten(x: &VectorField) -> Row {
    let mut row = Row::new();
    for (axis, f) in x.components().iter().enumerate() {
        for (e, c) in f.terms() {
            row.insert((e.clone(), axis), c.clone());
        }
    }
    row
}

fn axpy(target: &mut Row, factor: &Rational, source: &Row) {
    for (k, v) in source {
        let delta = factor * v;
        match target.entry(k.clone()) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(delta);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += delta;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }
}

impl SpanBasis {
    /// The trivial span in ambient dimension `dimension`.
    pub fn new(dimension: usize) -> Self {
        SpanBasis {
            dimension,
            rows: BTreeMap::new(),
        }
    }

    pub fn ambient_dimension(&self) -> usize {
        self.dimension
    }

    /// Dimension of the span (the rank).
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: Row) -> Row {
        for (pivot, basis_row) in &self.rows {
            if let Some(c) = row.get(pivot).cloned() {
                axpy(&mut row, &-c, basis_row);
            }
        }
        row
    }

    /// Residual of `x` modulo the span, as a field.
    pub fn remainder(&self, x: &VectorField) -> Result<VectorField> {
        Error::dims(self.dimension, x.dimension())?;
        Ok(self.row_to_field(&self.reduce(flatten(x))))
    }

    pub fn contains(&self, x: &VectorField) -> Result<bool> {
        Error::dims(self.dimension, x.dimension())?;
        Ok(self.reduce(flatten(x)).is_empty())
    }

    /// Adds `x` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, x: &VectorField) -> Result<bool> {
        Error::dims(self.dimension, x.dimension())?;
        let mut row = self.reduce(flatten(x));
        let Some((pivot, lead)) = row.iter().next().map(|(k, v)| (k.clone(), v.clone())) else {
            return Ok(false);
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for v in row.values_mut() {
                *v *= &inv;
            }
        }
        for basis_row in self.rows.values_mut() {
            if let Some(c) = basis_row.get(&pivot).cloned() {
                axpy(basis_row, &-c, &row);
            }
        }
        self.rows.insert(pivot, row);
        Ok(true)
    }

    /// All coordinates with a nonzero entry in some row, in column order.
    pub fn columns(&self) -> Vec<Coordinate> {
        let set: BTreeSet<&Coordinate> = self.rows.values().flat_map(|r| r.keys()).collect();
        set.into_iter().cloned().collect()
    }

    /// Rows as dense vectors over [`columns`](Self::columns).
    pub fn dense_rows(&self) -> Vec<Vec<Rational>> {
        let cols = self.columns();
        self.rows
            .values()
            .map(|r| {
                cols.iter()
                    .map(|c| r.get(c).cloned().unwrap_or_else(Rational::zero))
                    .collect()
            })
            .collect()
    }

    pub fn pivots(&self) -> Vec<Coordinate> {
        self.rows.keys().cloned().collect()
    }

    fn row_to_field(&self, row: &Row) -> VectorField {
        let d = self.dimension;
        let mut terms: Vec<Vec<(ExponentVector, Rational)>> = vec![Vec::new(); d];
        for ((e, axis), c) in row {
            terms[*axis].push((e.clone(), c.clone()));
        }
        let comps = terms
            .into_iter()
            .map(|t| LaurentPolynomial::from_terms(d, t).expect("dimension"))
            .collect();
        VectorField::new(comps).expect("dimension")
    }

    /// The basis rows as vector fields, in pivot order.
    pub fn basis_fields(&self) -> Vec<VectorField> {
        self.rows.values().map(|r| self.row_to_field(r)).collect()
    }
}

/// Exact span of a nonempty list of fields of equal dimension.
pub fn span_of(fields: &[VectorField]) -> Result<SpanBasis> {
    let first = fields.first().ok_or(Error::Empty("field list"))?;
    let mut span = SpanBasis::new(first.dimension());
    for f in fields {
        span.insert(f)?;
    }
    Ok(span)
}
