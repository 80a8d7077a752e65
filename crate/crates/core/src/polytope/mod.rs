//! Exact lattice polytopes: Newton polytopes of vector fields, vertex
//! enumeration and Minkowski sums.

mod lp;

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::algebra::{ExponentVector, Rational};
use crate::error::{Error, Result};
use crate::fields::{DForm, VectorField};

pub use lp::convex_combination;

/// Convex hull of a finite lattice point set, with its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    dimension: usize,
    generators: BTreeSet<ExponentVector>,
    vertices: BTreeSet<ExponentVector>,
}

impl LatticePolytope {
    pub fn from_points<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = ExponentVector>,
    {
        let generators: BTreeSet<ExponentVector> = points.into_iter().collect();
        let dimension = generators
            .iter()
            .next()
            .ok_or(Error::Empty("point set"))?
            .dimension();
        for g in &generators {
            Error::dims(dimension, g.dimension())?;
        }
        let vertices = vertex_set(&generators);
        Ok(LatticePolytope {
            dimension,
            generators,
            vertices,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generators(&self) -> &BTreeSet<ExponentVector> {
        &self.generators
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &BTreeSet<ExponentVector> {
        &self.vertices
    }

    pub fn is_vertex(&self, p: &ExponentVector) -> bool {
        self.vertices.contains(p)
    }

    /// Convex-combination certificate of `p` over the vertices, if `p` lies
    /// in the polytope.
    pub fn certificate(&self, p: &ExponentVector) -> Option<Vec<(ExponentVector, Rational)>> {
        let verts: Vec<ExponentVector> = self.vertices.iter().cloned().collect();
        convex_combination(p, &verts).map(|lam| verts.into_iter().zip(lam).collect())
    }
}

/// Points of `points` that are not convex combinations of the others.
pub fn vertex_set(points: &BTreeSet<ExponentVector>) -> BTreeSet<ExponentVector> {
    let all: Vec<&ExponentVector> = points.iter().collect();
    all.par_iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<ExponentVector> = all
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .map(|(_, q)| (*q).clone())
                .collect();
            convex_combination(p, &others).is_none()
        })
        .map(|(_, p)| (*p).clone())
        .collect()
}

/// `N_X = conv{n : X(n) ≠ 0}` in the `D`-basis.
pub fn newton_polytope(x: &VectorField) -> Result<LatticePolytope> {
    if x.is_zero() {
        return Err(Error::ZeroField);
    }
    LatticePolytope::from_points(DForm::from_field(x).support().cloned())
}

pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    Error::dims(p.dimension, q.dimension)?;
    LatticePolytope::from_points(
        p.vertices
            .iter()
            .flat_map(|a| q.vertices.iter().map(move |b| a + b)),
    )
}

pub fn is_vertex_of(p: &ExponentVector, polytope: &LatticePolytope) -> Result<bool> {
    Error::dims(polytope.dimension, p.dimension())?;
    Ok(polytope.is_vertex(p))
}

pub fn norm_sq(v: &ExponentVector) -> i128 {
    v.norm_sq()
}
