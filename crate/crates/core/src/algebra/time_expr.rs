use std::fmt;
use std::str::FromStr;

use super::Rational;
use crate::error::{Error, Result};
use crate::expr::Expr;

/// A rational function of the time variable `t`, kept as an expression tree
/// and evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeExpression(Expr);

impl TimeExpression {
    pub const VARIABLE: &'static str = "t";

    pub fn parse(text: &str) -> Result<Self> {
        let expr = Expr::parse(text)?;
        expr.check_variables(&[Self::VARIABLE])?;
        Ok(TimeExpression(expr))
    }

    pub fn constant(c: Rational) -> Self {
        TimeExpression(Expr::Num(c))
    }

    pub fn zero() -> Self {
        Self::constant(Rational::from_integer(0.into()))
    }

    pub fn is_constant(&self) -> bool {
        self.0.variables().is_empty()
    }

    pub fn evaluate(&self, t: &Rational) -> Result<Rational> {
        self.0.evaluate_at(Self::VARIABLE, t)
    }
}

impl FromStr for TimeExpression {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for TimeExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
