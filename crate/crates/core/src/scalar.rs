use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Num, ToPrimitive};

use crate::algebra::{format_rational, Rational};

/// Field element used by the schemes: exact rationals or `f64`.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// Text form for CSV: `p/q` for rationals, 17 significant digits for
    /// floats.
    fn to_csv(&self) -> String;
    fn is_exact() -> bool;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_csv(&self) -> String {
        format_rational(self)
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_csv(&self) -> String {
        format!("{:.16e}", self)
    }

    fn is_exact() -> bool {
        false
    }
}
