//! Exact phase-one simplex for the convex-combination feasibility test.

use num_traits::{One, Signed, Zero};

use crate::algebra::{ExponentVector, Rational};

/// Finds `λ ≥ 0` with `Σ λ_j = 1` and `Σ λ_j q_j = target`, or `None` when
/// `target` is outside `conv(points)`.
pub fn convex_combination(
    target: &ExponentVector,
    points: &[ExponentVector],
) -> Option<Vec<Rational>> {
    if points.is_empty() {
        return None;
    }
    let d = target.dimension();
    let n = points.len();
    let m = d + 1;

    // Constraint rows: one per coordinate plus the affine row.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for k in 0..d {
        rows.push(
            points
                .iter()
                .map(|p| Rational::from_integer(p[k].into()))
                .collect(),
        );
        rhs.push(Rational::from_integer(target[k].into()));
    }
    rows.push(vec![Rational::one(); n]);
    rhs.push(Rational::one());

    // Artificial columns n..n+m, with rows flipped so rhs >= 0.
    let width = n + m;
    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (mut row, b)) in rows.into_iter().zip(rhs.iter_mut()).enumerate() {
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            *b = -b.clone();
        }
        row.resize(width, Rational::zero());
        row[n + i] = Rational::one();
        tableau.push(row);
    }
    let mut basis: Vec<usize> = (n..width).collect();
    let cost = |j: usize| {
        if j >= n {
            Rational::one()
        } else {
            Rational::zero()
        }
    };

    loop {
        // Bland's rule: lowest-index column with negative reduced cost.
        let entering = (0..width).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut r = cost(j);
            for (i, row) in tableau.iter().enumerate() {
                if !row[j].is_zero() {
                    r -= cost(basis[i]) * &row[j];
                }
            }
            r.is_negative()
        });
        let Some(col) = entering else { break };

        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tableau.iter().enumerate() {
            if row[col].is_positive() {
                let ratio = &rhs[i] / &row[col];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let (pr, _) = leave.expect("phase-one simplex is bounded");

        let inv = tableau[pr][col].recip();
        for v in tableau[pr].iter_mut() {
            *v *= &inv;
        }
        rhs[pr] *= &inv;
        let pivot_row = tableau[pr].clone();
        let pivot_rhs = rhs[pr].clone();
        for i in 0..m {
            if i == pr {
                continue;
            }
            let factor = tableau[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, p) in tableau[i].iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
            rhs[i] -= &factor * &pivot_rhs;
        }
        basis[pr] = col;
    }

    let infeasibility: Rational = basis
        .iter()
        .zip(&rhs)
        .filter(|(&j, _)| j >= n)
        .map(|(_, b)| b.clone())
        .fold(Rational::zero(), |a, b| a + b);
    if !infeasibility.is_zero() {
        return None;
    }
    let mut lambda = vec![Rational::zero(); n];
    for (&j, b) in basis.iter().zip(&rhs) {
        if j < n {
            lambda[j] = b.clone();
        }
    }
    Some(lambda)
}
