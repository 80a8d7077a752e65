use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{format_rational, rational, Rational, TimeExpression};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::Trajectory;

/// `x′ = a0(t) + a1(t)·x + a2(t)·x²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiccatiCoefficients {
    pub a0: TimeExpression,
    pub a1: TimeExpression,
    pub a2: TimeExpression,
}

impl RiccatiCoefficients {
    pub fn new(a0: TimeExpression, a1: TimeExpression, a2: TimeExpression) -> Self {
        RiccatiCoefficients { a0, a1, a2 }
    }

    pub fn parse(a0: &str, a1: &str, a2: &str) -> Result<Self> {
        Ok(Self::new(a0.parse()?, a1.parse()?, a2.parse()?))
    }

    pub fn evaluate(&self, t: &Rational) -> Result<[Rational; 3]> {
        Ok([
            self.a0.evaluate(t)?,
            self.a1.evaluate(t)?,
            self.a2.evaluate(t)?,
        ])
    }

    fn at<S: Scalar>(&self, t: &Rational) -> Result<[S; 3]> {
        let [a0, a1, a2] = self.evaluate(t)?;
        Ok([
            S::from_rational(&a0),
            S::from_rational(&a1),
            S::from_rational(&a2),
        ])
    }

    /// The right-hand side at `(t, x)`.
    pub fn rhs<S: Scalar>(&self, t: &Rational, x: &S) -> Result<S> {
        let [a0, a1, a2] = self.at::<S>(t)?;
        Ok(a0 + a1 * x.clone() + a2 * x.clone() * x.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarScheme {
    Explicit,
    SemiImplicit,
}

impl FromStr for ScalarScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "explicit" | "euler" => Ok(ScalarScheme::Explicit),
            "semi-implicit" | "semi_implicit" => Ok(ScalarScheme::SemiImplicit),
            _ => Err(Error::InvalidArgument(format!(
                "unknown scheme `{s}` (expected explicit or semi-implicit)"
            ))),
        }
    }
}

impl fmt::Display for ScalarScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarScheme::Explicit => "explicit",
            ScalarScheme::SemiImplicit => "semi-implicit",
        })
    }
}

/// Forward Euler: `x + h·(a0 + a1x + a2x²)`.
pub fn riccati_step_explicit<S: Scalar>(
    c: &RiccatiCoefficients,
    t: &Rational,
    x: &S,
    h: &Rational,
) -> Result<S> {
    Ok(x.clone() + S::from_rational(h) * c.rhs(t, x)?)
}

/// Partially implicit Euler, `(x₊ − x)/h = a0 + a1x + a2·x·x₊`, solved as
/// `x₊ = (x + h(a0 + a1x)) / (1 − h·a2·x)`.
pub fn riccati_step_semi_implicit<S: Scalar>(
    c: &RiccatiCoefficients,
    t: &Rational,
    x: &S,
    h: &Rational,
) -> Result<S> {
    let [a0, a1, a2] = c.at::<S>(t)?;
    let hs = S::from_rational(h);
    let den = S::one() - hs.clone() * a2 * x.clone();
    if den.is_zero() {
        return Err(Error::PoleStep {
            t: format_rational(t),
            suggested_h: format_rational(&(h * rational(1, 2))),
        });
    }
    Ok((x.clone() + hs * (a0 + a1 * x.clone())) / den)
}

pub fn riccati_step<S: Scalar>(
    scheme: ScalarScheme,
    c: &RiccatiCoefficients,
    t: &Rational,
    x: &S,
    h: &Rational,
) -> Result<S> {
    match scheme {
        ScalarScheme::Explicit => riccati_step_explicit(c, t, x, h),
        ScalarScheme::SemiImplicit => riccati_step_semi_implicit(c, t, x, h),
    }
}

/// Iterates one scheme on the grid `t0 + i·h`. The arithmetic mode is the
/// scalar type: `Rational` for exact runs, `f64` for floating ones.
pub fn riccati_integrate<S: Scalar>(
    c: &RiccatiCoefficients,
    t0: &Rational,
    x0: S,
    h: &Rational,
    steps: usize,
    scheme: ScalarScheme,
) -> Result<Trajectory<S>> {
    if h.is_zero() && steps > 0 {
        return Err(Error::InvalidArgument("step size must be nonzero".into()));
    }
    let mut tr = Trajectory::new(scheme.to_string(), h.clone(), t0.clone(), x0.clone());
    let (mut t, mut x) = (t0.clone(), x0);
    for step in 0..steps {
        x = riccati_step(scheme, c, &t, &x, h).map_err(|e| Error::StepFailed {
            step,
            source: Box::new(e),
        })?;
        t += h;
        tr.push(t.clone(), x.clone());
    }
    Ok(tr)
}

/// Independent trajectories sharing coefficients, advanced in parallel.
pub fn riccati_integrate_batch<S: Scalar>(
    c: &RiccatiCoefficients,
    t0: &Rational,
    x0: &[S],
    h: &Rational,
    steps: usize,
    scheme: ScalarScheme,
) -> Result<Vec<Trajectory<S>>> {
    x0.par_iter()
        .map(|x| riccati_integrate(c, t0, x.clone(), h, steps, scheme))
        .collect()
}
