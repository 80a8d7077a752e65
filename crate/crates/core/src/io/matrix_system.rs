use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, Rational, TimeExpression};
use crate::error::{Error, Result};
use crate::integrators::{Matrix, MatrixRiccatiSystem};

/// Input for a matrix Riccati run: coefficient matrices as expressions in
/// `t` and the initial value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSystemDocument {
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<String>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<String>>,
    #[serde(rename = "W0")]
    pub w0: Vec<Vec<String>>,
}

impl MatrixSystemDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(vec![format!("matrix system: {e}")]))
    }

    pub fn system(&self) -> Result<MatrixRiccatiSystem> {
        let exprs = |name: &str, m: &[Vec<String>]| -> Result<Vec<Vec<TimeExpression>>> {
            m.iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, s)| {
                            TimeExpression::parse(s)
                                .map_err(|e| Error::Schema(vec![format!("{name}[{i}][{j}]: {e}")]))
                        })
                        .collect()
                })
                .collect()
        };
        let n = self.a.len();
        let k = self.a.first().map_or(0, Vec::len);
        MatrixRiccatiSystem::new(
            n,
            k,
            exprs("A", &self.a)?,
            exprs("B", &self.b)?,
            exprs("C", &self.c)?,
            exprs("D", &self.d)?,
        )
    }

    pub fn initial(&self) -> Result<Matrix<Rational>> {
        let rows = self
            .w0
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s.trim()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}
