//! Scalar Riccati superposition, the cross-ratio, and annihilation checks
//! for candidate superposition rules.

use crate::algebra::LaurentPolynomial;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::fields::{prolong, VectorField};
use crate::scalar::Scalar;

/// `((x4 − x1)/(x1 − x2)) / ((x4 − x3)/(x2 − x3))`.
pub fn cross_ratio<S: Scalar>(x1: &S, x2: &S, x3: &S, x4: &S) -> Result<S> {
    if x1 == x2 {
        return Err(Error::Degenerate("x1 = x2".into()));
    }
    if x2 == x3 {
        return Err(Error::Degenerate("x2 = x3".into()));
    }
    if x4 == x3 {
        return Err(Error::Degenerate("x4 = x3".into()));
    }
    let left = (x4.clone() - x1.clone()) / (x1.clone() - x2.clone());
    let right = (x4.clone() - x3.clone()) / (x2.clone() - x3.clone());
    Ok(left / right)
}

/// The solution with cross-ratio `c` against three known solutions:
/// `(C(x1x3 − x2x3) + x1x3 − x1x2) / (C(x1 − x2) + x3 − x2)`.
pub fn riccati_superpose<S: Scalar>(x1: &S, x2: &S, x3: &S, c: &S) -> Result<S> {
    let x13 = x1.clone() * x3.clone();
    let num = c.clone() * (x13.clone() - x2.clone() * x3.clone()) + x13 - x1.clone() * x2.clone();
    let den = c.clone() * (x1.clone() - x2.clone()) + x3.clone() - x2.clone();
    if den.is_zero() {
        return Err(Error::Degenerate(
            "superposition denominator C(x1 - x2) + x3 - x2 vanishes".into(),
        ));
    }
    Ok(num / den)
}

/// A quotient of Laurent polynomials over named variables. No common
/// factors are cancelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    variables: Vec<String>,
    numerator: LaurentPolynomial,
    denominator: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(
        variables: Vec<String>,
        numerator: LaurentPolynomial,
        denominator: LaurentPolynomial,
    ) -> Result<Self> {
        Error::dims(variables.len(), numerator.dimension())?;
        Error::dims(variables.len(), denominator.dimension())?;
        if denominator.is_zero() {
            return Err(Error::DivisionByZero {
                context: "rational function with zero denominator".into(),
            });
        }
        Ok(RationalFunction {
            variables,
            numerator,
            denominator,
        })
    }

    pub fn parse(text: &str, variables: &[String]) -> Result<Self> {
        let (n, d) = Expr::parse(text)?.to_fraction(variables)?;
        Self::new(variables.to_vec(), n, d)
    }

    /// Names `x, x1, ..., xm` used for a rule on `m` copies of a scalar
    /// equation.
    pub fn copy_variables(copies: usize) -> Vec<String> {
        std::iter::once("x".to_string())
            .chain((1..=copies).map(|i| format!("x{i}")))
            .collect()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.denominator
    }

    /// Multiplies numerator and denominator by `p`.
    pub fn expand_by(&self, p: &LaurentPolynomial) -> Result<Self> {
        Self::new(
            self.variables.clone(),
            self.numerator.checked_mul(p)?,
            self.denominator.checked_mul(p)?,
        )
    }

    /// Numerator of `X(n/d)` by the quotient rule: `X(n)·d − n·X(d)`.
    pub fn derivation_numerator(&self, x: &VectorField) -> Result<LaurentPolynomial> {
        let xn = x.apply(&self.numerator)?;
        let xd = x.apply(&self.denominator)?;
        Ok(&(&xn * &self.denominator) - &(&self.numerator * &xd))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleResidual {
    pub generator: VectorField,
    pub prolonged: VectorField,
    pub numerator: LaurentPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleVerification {
    pub residuals: Vec<RuleResidual>,
}

impl RuleVerification {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|r| r.numerator.is_zero())
    }
}

/// Checks that every generator, prolonged to `copies` extra copies of the
/// variables, annihilates the candidate rule.
pub fn verify_rule(
    candidate: &RationalFunction,
    generators: &[VectorField],
    copies: usize,
) -> Result<RuleVerification> {
    let first = generators.first().ok_or(Error::Empty("generator list"))?;
    let d = first.dimension();
    let expected = d * (copies + 1);
    if candidate.variables.len() != expected {
        return Err(Error::InvalidArgument(format!(
            "candidate has {} variables, the prolonged space has {expected}",
            candidate.variables.len()
        )));
    }
    let residuals = generators
        .iter()
        .map(|g| {
            Error::dims(d, g.dimension())?;
            let prolonged = prolong(g, copies)?;
            let numerator = candidate.derivation_numerator(&prolonged)?;
            Ok(RuleResidual {
                generator: g.clone(),
                prolonged,
                numerator,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RuleVerification { residuals })
}
