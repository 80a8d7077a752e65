use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{format_rational, parse_rational, ExponentVector, Rational};
use crate::closure::{
    ConditionRecord, DecisionReport, DegreeWitness, Method, RoundSummary, Verdict, Witness,
    WitnessPair,
};
use crate::error::{Error, Result};
use crate::fields::{span_of, VectorField};

use super::system::parse_polynomial;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_rats(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsDocument {
    pub norm_sq_v: i64,
    pub norm_sq_u: i64,
    pub norm_sq_sum: i64,
    pub u_dot_big_v: String,
    pub v_dot_big_u: String,
    pub u_dot_big_u: String,
    pub v_dot_big_v: String,
    pub k: Vec<String>,
    pub s1: Option<String>,
    pub s2: Option<String>,
    /// Conditions (i) to (v) in order.
    pub holds: [bool; 5],
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::InvalidArgument("squared norm exceeds 64 bits".into()))
}

impl ConditionsDocument {
    fn from_record(r: &ConditionRecord) -> Result<Self> {
        Ok(ConditionsDocument {
            norm_sq_v: narrow(r.norm_sq_v)?,
            norm_sq_u: narrow(r.norm_sq_u)?,
            norm_sq_sum: narrow(r.norm_sq_sum)?,
            u_dot_big_v: format_rational(&r.u_dot_big_v),
            v_dot_big_u: format_rational(&r.v_dot_big_u),
            u_dot_big_u: format_rational(&r.u_dot_big_u),
            v_dot_big_v: format_rational(&r.v_dot_big_v),
            k: rats(&r.k),
            s1: r.s1.as_ref().map(format_rational),
            s2: r.s2.as_ref().map(format_rational),
            holds: r.flags(),
        })
    }

    fn to_record(&self) -> Result<ConditionRecord> {
        let opt = |s: &Option<String>| s.as_deref().map(parse_rational).transpose();
        let [norm_grows, sum_is_vertex, bracket_nonzero, forward_chain, backward_chain] =
            self.holds;
        Ok(ConditionRecord {
            norm_sq_v: self.norm_sq_v.into(),
            norm_sq_u: self.norm_sq_u.into(),
            norm_sq_sum: self.norm_sq_sum.into(),
            u_dot_big_v: parse_rational(&self.u_dot_big_v)?,
            v_dot_big_u: parse_rational(&self.v_dot_big_u)?,
            u_dot_big_u: parse_rational(&self.u_dot_big_u)?,
            v_dot_big_v: parse_rational(&self.v_dot_big_v)?,
            k: parse_rats(&self.k)?,
            s1: opt(&self.s1)?,
            s2: opt(&self.s2)?,
            norm_grows,
            sum_is_vertex,
            bracket_nonzero,
            forward_chain,
            backward_chain,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Polytope,
    Degrees,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub kind: WitnessKind,
    pub i: usize,
    pub j: usize,
    pub operator_i: Vec<String>,
    pub operator_j: Vec<String>,
    /// For a degree witness, the top exponents `deg − 1`.
    pub v: Vec<i64>,
    pub u: Vec<i64>,
    #[serde(rename = "V", default, skip_serializing_if = "Option::is_none")]
    pub big_v: Option<Vec<String>>,
    #[serde(rename = "U", default, skip_serializing_if = "Option::is_none")]
    pub big_u: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions: Option<ConditionsDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<[i64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    Finite,
    Infinite,
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodKind {
    OneDimensional,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundDocument {
    pub round: usize,
    pub operators: usize,
    pub dimension: usize,
}

/// JSON form of a decision report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub input_hash: String,
    pub method: MethodKind,
    pub variables: Vec<String>,
    pub verdict: VerdictKind,
    pub summary: String,
    /// Span dimension; for a budget verdict, the last one reached.
    pub dimension: Option<usize>,
    /// Round that produced the witness, or rounds run before the cap.
    pub round: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDocument>,
    pub rounds: Vec<RoundDocument>,
    pub input: Vec<Vec<String>>,
}

impl ReportDocument {
    /// `input_bytes` is the raw system document the report was computed from.
    pub fn from_report(
        report: &DecisionReport,
        variables: &[String],
        input_bytes: &[u8],
    ) -> Result<Self> {
        let fields = |fs: &[VectorField]| -> Vec<Vec<String>> {
            fs.iter().map(|f| f.component_strings(variables)).collect()
        };
        if let Some(f) = report.input.first() {
            Error::dims(variables.len(), f.dimension())?;
        }
        let mut doc = ReportDocument {
            tool_version: TOOL_VERSION.to_string(),
            input_hash: sha256_hex(input_bytes),
            method: match report.method {
                Method::OneDimensional => MethodKind::OneDimensional,
                Method::General => MethodKind::General,
            },
            variables: variables.to_vec(),
            verdict: VerdictKind::Finite,
            summary: report.to_string(),
            dimension: None,
            round: None,
            basis: None,
            generators: None,
            witness: None,
            rounds: report
                .rounds
                .iter()
                .map(|r| RoundDocument {
                    round: r.round,
                    operators: r.operators,
                    dimension: r.dimension,
                })
                .collect(),
            input: fields(&report.input),
        };
        match &report.verdict {
            Verdict::FiniteDimensional {
                dimension,
                basis,
                generators,
            } => {
                doc.dimension = Some(*dimension);
                doc.basis = Some(fields(&basis.basis_fields()));
                doc.generators = Some(fields(generators));
            }
            Verdict::InfiniteDimensional { witness, round } => {
                doc.verdict = VerdictKind::Infinite;
                doc.round = Some(*round);
                doc.witness = Some(witness_document(witness, variables)?);
            }
            Verdict::BudgetExceeded {
                rounds_run,
                last_dimension,
            } => {
                doc.verdict = VerdictKind::BudgetExceeded;
                doc.round = Some(*rounds_run);
                doc.dimension = Some(*last_dimension);
            }
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(vec![format!("report: {e}")]))
    }

    fn parse_fields(&self, fs: &[Vec<String>]) -> Result<Vec<VectorField>> {
        fs.iter()
            .map(|comps| {
                Error::dims(self.variables.len(), comps.len())?;
                let polys = comps
                    .iter()
                    .map(|c| parse_polynomial(c, &self.variables, true))
                    .collect::<Result<Vec<_>>>()?;
                VectorField::new(polys)
            })
            .collect()
    }

    /// Rebuilds the in-memory report from the JSON fields alone.
    pub fn to_decision_report(&self) -> Result<DecisionReport> {
        let missing = |what: &str| Error::Schema(vec![format!("report: missing {what}")]);
        let verdict = match self.verdict {
            VerdictKind::Finite => {
                let generators = self.parse_fields(
                    self.generators
                        .as_ref()
                        .ok_or_else(|| missing("generators"))?,
                )?;
                let basis = span_of(&generators)?;
                let stated =
                    self.parse_fields(self.basis.as_ref().ok_or_else(|| missing("basis"))?)?;
                if stated != basis.basis_fields() {
                    return Err(Error::Schema(vec![
                        "report: basis does not match generators".into(),
                    ]));
                }
                Verdict::FiniteDimensional {
                    dimension: self.dimension.ok_or_else(|| missing("dimension"))?,
                    basis,
                    generators,
                }
            }
            VerdictKind::Infinite => Verdict::InfiniteDimensional {
                witness: self.witness()?,
                round: self.round.ok_or_else(|| missing("round"))?,
            },
            VerdictKind::BudgetExceeded => Verdict::BudgetExceeded {
                rounds_run: self.round.ok_or_else(|| missing("round"))?,
                last_dimension: self.dimension.ok_or_else(|| missing("dimension"))?,
            },
        };
        Ok(DecisionReport {
            method: match self.method {
                MethodKind::OneDimensional => Method::OneDimensional,
                MethodKind::General => Method::General,
            },
            verdict,
            rounds: self
                .rounds
                .iter()
                .map(|r| RoundSummary {
                    round: r.round,
                    operators: r.operators,
                    dimension: r.dimension,
                })
                .collect(),
            input: self.parse_fields(&self.input)?,
        })
    }

    /// Rebuilds the witness from the JSON and re-validates it.
    pub fn witness(&self) -> Result<Witness> {
        let w = self
            .witness
            .as_ref()
            .ok_or_else(|| Error::Schema(vec!["report: missing witness".into()]))?;
        let ops = self.parse_fields(&[w.operator_i.clone(), w.operator_j.clone()])?;
        let [operator_i, operator_j]: [VectorField; 2] = ops.try_into().expect("two operators");
        let bad = |what: &str| Error::Schema(vec![format!("witness: {what}")]);
        Ok(match w.kind {
            WitnessKind::Degrees => {
                let [degree_i, degree_j] = w.degrees.ok_or_else(|| bad("missing degrees"))?;
                if w.v != [degree_i - 1] || w.u != [degree_j - 1] {
                    return Err(bad("v, u disagree with the degrees"));
                }
                Witness::Degrees(DegreeWitness {
                    i: w.i,
                    j: w.j,
                    operator_i,
                    operator_j,
                    degree_i,
                    degree_j,
                })
            }
            WitnessKind::Polytope => Witness::Polytope(WitnessPair {
                i: w.i,
                j: w.j,
                operator_i,
                operator_j,
                v: ExponentVector::new(w.v.clone()),
                u: ExponentVector::new(w.u.clone()),
                big_v: parse_rats(w.big_v.as_deref().ok_or_else(|| bad("missing V"))?)?,
                big_u: parse_rats(w.big_u.as_deref().ok_or_else(|| bad("missing U"))?)?,
                conditions: w
                    .conditions
                    .as_ref()
                    .ok_or_else(|| bad("missing conditions"))?
                    .to_record()?,
            }),
        })
    }

    /// Whether the verdict re-validates from the JSON content alone.
    pub fn recheck(&self) -> Result<bool> {
        self.to_decision_report()?.recheck()
    }
}

fn witness_document(w: &Witness, variables: &[String]) -> Result<WitnessDocument> {
    Ok(match w {
        Witness::Degrees(d) => {
            let (v, u) = d.top_exponents();
            WitnessDocument {
                kind: WitnessKind::Degrees,
                i: d.i,
                j: d.j,
                operator_i: d.operator_i.component_strings(variables),
                operator_j: d.operator_j.component_strings(variables),
                v: vec![v],
                u: vec![u],
                big_v: None,
                big_u: None,
                conditions: None,
                degrees: Some([d.degree_i, d.degree_j]),
            }
        }
        Witness::Polytope(p) => WitnessDocument {
            kind: WitnessKind::Polytope,
            i: p.i,
            j: p.j,
            operator_i: p.operator_i.component_strings(variables),
            operator_j: p.operator_j.component_strings(variables),
            v: p.v.components().to_vec(),
            u: p.u.components().to_vec(),
            big_v: Some(rats(&p.big_v)),
            big_u: Some(rats(&p.big_u)),
            conditions: Some(ConditionsDocument::from_record(&p.conditions)?),
            degrees: None,
        },
    })
}
