#![allow(dead_code)]

use std::collections::BTreeSet;

use nls_core::algebra::{rational, ExponentVector, LaurentPolynomial, Rational};
use nls_core::fields::VectorField;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub fn q(n: i64, d: i64) -> Rational {
    rational(n, d)
}

pub fn ev(v: &[i64]) -> ExponentVector {
    ExponentVector::new(v.to_vec())
}

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rational(n, d))
}

pub fn nonzero_rat() -> impl Strategy<Value = Rational> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

pub fn exponent(d: usize, lo: i64, hi: i64) -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(lo..=hi, d).prop_map(ExponentVector::new)
}

pub fn poly(
    d: usize,
    lo: i64,
    hi: i64,
    max_terms: usize,
) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((exponent(d, lo, hi), rat()), 0..=max_terms)
        .prop_map(move |t| LaurentPolynomial::from_terms(d, t).unwrap())
}

pub fn field(d: usize, lo: i64, hi: i64, max_terms: usize) -> impl Strategy<Value = VectorField> {
    prop::collection::vec(poly(d, lo, hi, max_terms), d).prop_map(|c| VectorField::new(c).unwrap())
}

pub fn nonzero_field(
    d: usize,
    lo: i64,
    hi: i64,
    max_terms: usize,
) -> impl Strategy<Value = VectorField> {
    field(d, lo, hi, max_terms).prop_filter("nonzero field", |f| !f.is_zero())
}

/// `c·x^m ∂_axis`, possibly Laurent.
pub fn monomial_field(d: usize) -> impl Strategy<Value = VectorField> {
    (nonzero_rat(), exponent(d, -3, 3), 0..d)
        .prop_map(|(c, m, axis)| VectorField::monomial(c, m, axis))
}

pub fn point_set(d: usize, max_points: usize) -> impl Strategy<Value = BTreeSet<ExponentVector>> {
    prop::collection::btree_set(exponent(d, -4, 4), 1..=max_points)
}

/// 1-D polynomial field with degree ≤ `deg`, nonzero.
pub fn line_field(deg: i64) -> impl Strategy<Value = VectorField> {
    prop::collection::vec((0..=deg, (-3i64..=3, 1i64..=2)), 1..=3)
        .prop_map(|t| {
            let terms = t
                .into_iter()
                .map(|(e, (n, d))| (ExponentVector::new(vec![e]), rational(n, d)));
            VectorField::new(vec![LaurentPolynomial::from_terms(1, terms).unwrap()]).unwrap()
        })
        .prop_filter("nonzero", |f| !f.is_zero())
}

/// Draws deterministic samples from a strategy.
pub struct Sampler {
    runner: TestRunner,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        let mut bytes = [0u8; 32];
        bytes[..8].copy_from_slice(&seed.to_le_bytes());
        let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &bytes);
        Sampler {
            runner: TestRunner::new_with_rng(Config::default(), rng),
        }
    }

    pub fn draw<S: Strategy>(&mut self, s: &S) -> S::Value {
        s.new_tree(&mut self.runner)
            .expect("strategy yields")
            .current()
    }
}

// ---- independent oracles ----

/// Dense polynomial on the line, coefficients by ascending power.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense(pub Vec<Rational>);

impl Dense {
    pub fn from_field(f: &VectorField) -> Dense {
        let p = f.component(0);
        let top = p.terms().map(|(e, _)| e[0]).max().unwrap_or(0);
        assert!(
            p.terms().all(|(e, _)| e[0] >= 0),
            "oracle handles polynomials only"
        );
        let mut c = vec![Rational::zero(); top as usize + 1];
        for (e, v) in p.terms() {
            c[e[0] as usize] = v.clone();
        }
        Dense(c).trimmed()
    }

    fn trimmed(mut self) -> Dense {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn derivative(&self) -> Dense {
        Dense(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational(k as i64, 1))
                .collect(),
        )
    }

    fn mul(&self, o: &Dense) -> Dense {
        if self.0.is_empty() || o.0.is_empty() {
            return Dense(vec![]);
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Dense(c).trimmed()
    }

    fn sub(&self, o: &Dense) -> Dense {
        let n = self.0.len().max(o.0.len());
        let get = |v: &Vec<Rational>, i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        Dense((0..n).map(|i| get(&self.0, i) - get(&o.0, i)).collect()).trimmed()
    }

    /// `[f∂, g∂] = (f g′ − g f′)∂`.
    pub fn bracket(&self, o: &Dense) -> Dense {
        self.mul(&o.derivative()).sub(&o.mul(&self.derivative()))
    }
}

/// Exact rank by plain Gaussian elimination on coefficient rows.
pub fn rank(rows: &[Dense]) -> usize {
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            (0..width)
                .map(|i| r.0.get(i).cloned().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[rank][col];
                let pivot_row = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Outcome of brute-force closure on the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineClosure {
    Finite(usize),
    Infinite,
}

/// Brackets everything with everything until the span stops growing.
/// A span above 3 is infinite by Lie's classification of algebras on
/// the line.
pub fn line_closure(fields: &[VectorField]) -> LineClosure {
    let mut basis: Vec<Dense> = Vec::new();
    for f in fields {
        let d = Dense::from_field(f);
        let mut trial = basis.clone();
        trial.push(d.clone());
        if rank(&trial) > basis.len() {
            basis.push(d);
        }
    }
    loop {
        if basis.len() > 3 {
            return LineClosure::Infinite;
        }
        let mut grew = false;
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let b = basis[i].bracket(&basis[j]);
                let mut trial = basis.clone();
                trial.push(b.clone());
                if rank(&trial) > basis.len() {
                    basis.push(b);
                    grew = true;
                }
            }
        }
        if !grew {
            return LineClosure::Finite(basis.len());
        }
    }
}

/// Strict 2-D convex hull vertices by Andrew's monotone chain, collinear
/// points dropped.
pub fn hull_2d(points: &BTreeSet<ExponentVector>) -> BTreeSet<ExponentVector> {
    let pts: Vec<(i64, i64)> = points.iter().map(|p| (p[0], p[1])).collect();
    if pts.len() <= 2 {
        return points.clone();
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower
        .into_iter()
        .chain(upper)
        .map(|(a, b)| ev(&[a, b]))
        .collect()
}

/// Numerical value of a polynomial field applied to nothing: evaluates
/// each component at a rational point.
pub fn eval_field(f: &VectorField, x: &[Rational]) -> Vec<Rational> {
    f.components()
        .iter()
        .map(|p| p.evaluate(x).unwrap())
        .collect()
}

pub fn one() -> Rational {
    Rational::one()
}
