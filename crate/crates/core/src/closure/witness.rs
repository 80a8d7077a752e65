use num_traits::{One, Zero};

use crate::algebra::{ExponentVector, Rational};
use crate::error::{Error, Result};
use crate::fields::{d_form_bracket_term, dot, DForm, VectorField};
use crate::polytope::{is_vertex_of, minkowski_sum, newton_polytope, LatticePolytope};

/// The five witness conditions for a vertex pair `(v, V)`, `(u, U)`,
/// together with every intermediate quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionRecord {
    pub norm_sq_v: i128,
    pub norm_sq_u: i128,
    pub norm_sq_sum: i128,
    /// `u·V`
    pub u_dot_big_v: Rational,
    /// `v·U`
    pub v_dot_big_u: Rational,
    /// `u·U`
    pub u_dot_big_u: Rational,
    /// `v·V`
    pub v_dot_big_v: Rational,
    /// `K = (u·V)U − (v·U)V`
    pub k: Vec<Rational>,
    /// `(v·U)/(u·U)`, set when `u·V = 0` and `u·U ≠ 0`.
    pub s1: Option<Rational>,
    /// `(u·V)/(v·V)`, set when `v·U = 0` and `v·V ≠ 0`.
    pub s2: Option<Rational>,
    /// (i) `|v+u| > max(|v|, |u|)`
    pub norm_grows: bool,
    /// (ii) `v+u` is a vertex of the Minkowski sum
    pub sum_is_vertex: bool,
    /// (iii) `K ≠ 0`
    pub bracket_nonzero: bool,
    /// (iv) if `u·V = 0`, `(v + m u)·U ≠ 0` for every integer `m ≥ 1`
    pub forward_chain: bool,
    /// (v) if `v·U = 0`, `(m v + u)·V ≠ 0` for every integer `m ≥ 1`
    pub backward_chain: bool,
}

impl ConditionRecord {
    pub fn flags(&self) -> [bool; 5] {
        [
            self.norm_grows,
            self.sum_is_vertex,
            self.bracket_nonzero,
            self.forward_chain,
            self.backward_chain,
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.flags().iter().all(|&b| b)
    }
}

/// Whether `a + m·b` avoids zero for every integer `m ≥ 1`, along with the
/// ratio `a/b` when `b ≠ 0`. The root is `m = −a/b`, so the chain breaks
/// exactly when `a/b` is an integer `≤ −1`.
fn chain_survives(a: &Rational, b: &Rational) -> (bool, Option<Rational>) {
    if b.is_zero() {
        return (!a.is_zero(), None);
    }
    let s = a / b;
    let breaks = s.is_integer() && s <= -Rational::one();
    (!breaks, Some(s))
}

pub fn witness_conditions(
    v: &ExponentVector,
    big_v: &[Rational],
    u: &ExponentVector,
    big_u: &[Rational],
    p_i: &LatticePolytope,
    p_j: &LatticePolytope,
) -> Result<ConditionRecord> {
    let sum = minkowski_sum(p_i, p_j)?;
    witness_conditions_with_sum(v, big_v, u, big_u, &sum)
}

pub(crate) fn witness_conditions_with_sum(
    v: &ExponentVector,
    big_v: &[Rational],
    u: &ExponentVector,
    big_u: &[Rational],
    sum: &LatticePolytope,
) -> Result<ConditionRecord> {
    let (vu, k) = d_form_bracket_term(v, big_v, u, big_u)?;
    let norm_sq_v = v.norm_sq();
    let norm_sq_u = u.norm_sq();
    let norm_sq_sum = vu.norm_sq();
    let u_dot_big_v = dot(u, big_v);
    let v_dot_big_u = dot(v, big_u);
    let u_dot_big_u = dot(u, big_u);
    let v_dot_big_v = dot(v, big_v);

    let (forward_chain, s1) = if u_dot_big_v.is_zero() {
        chain_survives(&v_dot_big_u, &u_dot_big_u)
    } else {
        (true, None)
    };
    let (backward_chain, s2) = if v_dot_big_u.is_zero() {
        chain_survives(&u_dot_big_v, &v_dot_big_v)
    } else {
        (true, None)
    };

    Ok(ConditionRecord {
        norm_grows: norm_sq_sum > norm_sq_v.max(norm_sq_u),
        sum_is_vertex: is_vertex_of(&vu, sum)?,
        bracket_nonzero: k.iter().any(|c| !c.is_zero()),
        forward_chain,
        backward_chain,
        norm_sq_v,
        norm_sq_u,
        norm_sq_sum,
        u_dot_big_v,
        v_dot_big_u,
        u_dot_big_u,
        v_dot_big_v,
        k,
        s1,
        s2,
    })
}

/// A vertex pair certifying infinite dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    /// Operator indices in the working list of the round that found it.
    pub i: usize,
    pub j: usize,
    pub operator_i: VectorField,
    pub operator_j: VectorField,
    pub v: ExponentVector,
    pub u: ExponentVector,
    pub big_v: Vec<Rational>,
    pub big_u: Vec<Rational>,
    pub conditions: ConditionRecord,
}

impl WitnessPair {
    /// Recomputes everything from the two operators and checks that the
    /// stored record is reproduced and that all five conditions hold.
    pub fn reverify(&self) -> Result<bool> {
        let p_i = newton_polytope(&self.operator_i)?;
        let p_j = newton_polytope(&self.operator_j)?;
        if !p_i.is_vertex(&self.v) || !p_j.is_vertex(&self.u) {
            return Ok(false);
        }
        let di = DForm::from_field(&self.operator_i);
        let dj = DForm::from_field(&self.operator_j);
        if di.get(&self.v) != Some(&self.big_v) || dj.get(&self.u) != Some(&self.big_u) {
            return Ok(false);
        }
        let rec = witness_conditions(&self.v, &self.big_v, &self.u, &self.big_u, &p_i, &p_j)?;
        Ok(rec == self.conditions && rec.all_hold())
    }

    /// Squared norms of the exponents along the bracket chain started from
    /// the monomial fields `x^v V` and `x^u U`.
    ///
    /// Tries `[...[[x^v V, x^u U], x^u U]..., x^u U]` first and then the
    /// mirrored chain in `v`; returns the first sequence of
    /// `iterations + 1` norms whose coefficients never vanish, starting
    /// with `max(|v|², |u|²)`.
    pub fn growth_sequence(&self, iterations: usize) -> Option<Vec<i128>> {
        let start = self.v.norm_sq().max(self.u.norm_sq());
        let chains = [
            (&self.v, &self.big_v, &self.u, &self.big_u),
            (&self.u, &self.big_u, &self.v, &self.big_v),
        ];
        'chain: for (a, big_a, b, big_b) in chains {
            let mut norms = vec![start];
            let (mut w, mut big_w) = (a.clone(), big_a.clone());
            for _ in 0..iterations {
                let Ok((next, big_next)) = d_form_bracket_term(&w, &big_w, b, big_b) else {
                    continue 'chain;
                };
                if big_next.iter().all(Zero::is_zero) {
                    continue 'chain;
                }
                norms.push(next.norm_sq());
                w = next;
                big_w = big_next;
            }
            return Some(norms);
        }
        None
    }
}

/// Degree witness of the one-dimensional criterion: two fields of distinct
/// degrees, both at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeWitness {
    pub i: usize,
    pub j: usize,
    pub operator_i: VectorField,
    pub operator_j: VectorField,
    pub degree_i: i64,
    pub degree_j: i64,
}

impl DegreeWitness {
    pub fn reverify(&self) -> bool {
        let di = self.operator_i.degree().finite();
        let dj = self.operator_j.degree().finite();
        self.operator_i.dimension() == 1
            && di == Some(self.degree_i)
            && dj == Some(self.degree_j)
            && self.degree_i != self.degree_j
            && self.degree_i >= 2
            && self.degree_j >= 2
    }

    /// The top `D`-basis exponents `deg − 1` of the two fields.
    pub fn top_exponents(&self) -> (i64, i64) {
        (self.degree_i - 1, self.degree_j - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Degrees(DegreeWitness),
    Polytope(WitnessPair),
}

impl Witness {
    pub fn indices(&self) -> (usize, usize) {
        match self {
            Witness::Degrees(w) => (w.i, w.j),
            Witness::Polytope(w) => (w.i, w.j),
        }
    }

    pub fn reverify(&self) -> Result<bool> {
        match self {
            Witness::Degrees(w) => Ok(w.reverify()),
            Witness::Polytope(w) => w.reverify(),
        }
    }
}

pub(crate) fn check_dimension(fields: &[VectorField]) -> Result<usize> {
    let d = fields
        .first()
        .ok_or(Error::Empty("operator list"))?
        .dimension();
    for f in fields {
        Error::dims(d, f.dimension())?;
        if f.is_zero() {
            return Err(Error::ZeroField);
        }
    }
    Ok(d)
}
