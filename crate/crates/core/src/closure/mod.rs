//! Decision procedures for finite closure under the Lie bracket.
//!
//! Both checkers alternate a cheap infinite-dimension test with one round of
//! [`add_pairwise_commutators`]. The span not growing in a round proves
//! closure; a witness proves the generated algebra is infinite-dimensional.

mod witness;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields::{
    add_pairwise_commutators, lie_bracket, span_of, DForm, SpanBasis, VectorField,
};
use crate::polytope::{minkowski_sum, newton_polytope, LatticePolytope};

use witness::{check_dimension, witness_conditions_with_sum};
pub use witness::{witness_conditions, ConditionRecord, DegreeWitness, Witness, WitnessPair};

pub const DEFAULT_MAX_ROUNDS: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Degree criterion for fields on the line.
    OneDimensional,
    /// Newton polytope witnesses, any dimension.
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundSummary {
    pub round: usize,
    pub operators: usize,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    FiniteDimensional {
        dimension: usize,
        basis: SpanBasis,
        generators: Vec<VectorField>,
    },
    InfiniteDimensional {
        witness: Witness,
        round: usize,
    },
    BudgetExceeded {
        rounds_run: usize,
        last_dimension: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionReport {
    pub method: Method,
    pub verdict: Verdict,
    pub rounds: Vec<RoundSummary>,
    pub input: Vec<VectorField>,
}

impl DecisionReport {
    pub fn is_finite(&self) -> bool {
        matches!(self.verdict, Verdict::FiniteDimensional { .. })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.verdict, Verdict::InfiniteDimensional { .. })
    }

    /// Re-checks the verdict from scratch: for a finite verdict every
    /// pairwise bracket of the generators must lie in their span, for an
    /// infinite one the witness must re-validate.
    pub fn recheck(&self) -> Result<bool> {
        match &self.verdict {
            Verdict::FiniteDimensional {
                dimension,
                generators,
                ..
            } => {
                let span = span_of(generators)?;
                Ok(span.dimension() == *dimension && brackets_closed(generators, &span)?)
            }
            Verdict::InfiniteDimensional { witness, .. } => witness.reverify(),
            Verdict::BudgetExceeded { .. } => Ok(true),
        }
    }
}

impl fmt::Display for DecisionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::FiniteDimensional { dimension, .. } => write!(f, "FINITE, dim {dimension}"),
            Verdict::InfiniteDimensional { witness, round } => match witness {
                Witness::Polytope(w) => {
                    write!(
                        f,
                        "INFINITE (witness v={}, u={}) at round {round}",
                        w.v, w.u
                    )
                }
                Witness::Degrees(w) => {
                    let (v, u) = w.top_exponents();
                    write!(
                        f,
                        "INFINITE (witness v=({v}), u=({u})) at round {round}; degrees {}, {}",
                        w.degree_i, w.degree_j
                    )
                }
            },
            Verdict::BudgetExceeded {
                rounds_run,
                last_dimension,
            } => write!(
                f,
                "BUDGET EXCEEDED after {rounds_run} rounds, dim {last_dimension}"
            ),
        }
    }
}

/// Whether every bracket `[X_i, X_j]` lies in `span`.
pub fn brackets_closed(fields: &[VectorField], span: &SpanBasis) -> Result<bool> {
    for (i, x) in fields.iter().enumerate() {
        for y in &fields[i + 1..] {
            if !span.contains(&lie_bracket(x, y)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn run<F>(
    fields: &[VectorField],
    max_rounds: usize,
    method: Method,
    detect: F,
) -> Result<DecisionReport>
where
    F: Fn(&[VectorField]) -> Result<Option<Witness>>,
{
    if max_rounds == 0 {
        return Err(Error::InvalidArgument("max_rounds must be positive".into()));
    }
    let mut ops = fields.to_vec();
    let mut span = span_of(&ops)?;
    let mut rounds = Vec::new();
    let report = |verdict, rounds| DecisionReport {
        method,
        verdict,
        rounds,
        input: fields.to_vec(),
    };
    for round in 0..=max_rounds {
        rounds.push(RoundSummary {
            round,
            operators: ops.len(),
            dimension: span.dimension(),
        });
        if let Some(witness) = detect(&ops)? {
            return Ok(report(
                Verdict::InfiniteDimensional { witness, round },
                rounds,
            ));
        }
        if round == max_rounds {
            break;
        }
        let next = add_pairwise_commutators(&ops)?;
        if next.len() == ops.len() {
            let verdict = Verdict::FiniteDimensional {
                dimension: span.dimension(),
                basis: span,
                generators: ops,
            };
            return Ok(report(verdict, rounds));
        }
        for f in &next[ops.len()..] {
            span.insert(f)?;
        }
        ops = next;
    }
    let verdict = Verdict::BudgetExceeded {
        rounds_run: max_rounds,
        last_dimension: span.dimension(),
    };
    Ok(report(verdict, rounds))
}

fn degree_witness(ops: &[VectorField]) -> Option<Witness> {
    let degrees: Vec<i64> = ops
        .iter()
        .map(|f| f.degree().finite().expect("nonzero field"))
        .collect();
    let distinct: BTreeSet<i64> = degrees.iter().copied().collect();
    let mut top = distinct.iter().rev();
    let (m1, m2) = (*top.next()?, *top.next()?);
    if m1 <= 1 || m2 <= 1 {
        return None;
    }
    let a = degrees.iter().position(|&d| d == m1)?;
    let b = degrees.iter().position(|&d| d == m2)?;
    let (i, j) = (a.min(b), a.max(b));
    Some(Witness::Degrees(DegreeWitness {
        i,
        j,
        operator_i: ops[i].clone(),
        operator_j: ops[j].clone(),
        degree_i: degrees[i],
        degree_j: degrees[j],
    }))
}

/// Degree criterion for fields `f ∂/∂x` on the line: two distinct degrees
/// `≥ 2` among the working operators mean infinite dimension.
pub fn check_one_dim(fields: &[VectorField], max_rounds: usize) -> Result<DecisionReport> {
    let d = check_dimension(fields)?;
    if d != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: d,
        });
    }
    run(fields, max_rounds, Method::OneDimensional, |ops| {
        Ok(degree_witness(ops))
    })
}

fn first_witness_for_pair(
    k: usize,
    l: usize,
    ops: &[VectorField],
    forms: &[DForm],
    polys: &[LatticePolytope],
) -> Result<Option<WitnessPair>> {
    let sum = minkowski_sum(&polys[k], &polys[l])?;
    for v in polys[k].vertices() {
        let big_v = forms[k].get(v).expect("vertex lies in the support");
        for u in polys[l].vertices() {
            let big_u = forms[l].get(u).expect("vertex lies in the support");
            let rec = witness_conditions_with_sum(v, big_v, u, big_u, &sum)?;
            if rec.all_hold() {
                return Ok(Some(WitnessPair {
                    i: k,
                    j: l,
                    operator_i: ops[k].clone(),
                    operator_j: ops[l].clone(),
                    v: v.clone(),
                    u: u.clone(),
                    big_v: big_v.clone(),
                    big_u: big_u.clone(),
                    conditions: rec,
                }));
            }
        }
    }
    Ok(None)
}

fn polytope_witness(ops: &[VectorField]) -> Result<Option<Witness>> {
    let forms: Vec<DForm> = ops.iter().map(DForm::from_field).collect();
    let polys = ops
        .iter()
        .map(newton_polytope)
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..ops.len())
        .flat_map(|k| (k + 1..ops.len()).map(move |l| (k, l)))
        .collect();
    // Every pair is evaluated; the reported witness is the first in pair
    // order regardless of scheduling.
    let found = pairs
        .par_iter()
        .map(|&(k, l)| first_witness_for_pair(k, l, ops, &forms, &polys))
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().next().map(Witness::Polytope))
}

/// Newton polytope criterion in any dimension.
pub fn check_general(fields: &[VectorField], max_rounds: usize) -> Result<DecisionReport> {
    check_dimension(fields)?;
    run(fields, max_rounds, Method::General, polytope_witness)
}

pub fn check(fields: &[VectorField], max_rounds: usize, method: Method) -> Result<DecisionReport> {
    match method {
        Method::OneDimensional => check_one_dim(fields, max_rounds),
        Method::General => check_general(fields, max_rounds),
    }
}
