use crate::algebra::{format_rational, Rational};
use crate::scalar::Scalar;

use super::Matrix;

/// A state that can be written as a CSV row.
pub trait CsvState {
    fn columns(&self) -> Vec<String>;
    fn cells(&self) -> Vec<String>;
    fn exact() -> bool;
}

impl CsvState for Rational {
    fn columns(&self) -> Vec<String> {
        vec!["x".into()]
    }
    fn cells(&self) -> Vec<String> {
        vec![self.to_csv()]
    }
    fn exact() -> bool {
        true
    }
}

impl CsvState for f64 {
    fn columns(&self) -> Vec<String> {
        vec!["x".into()]
    }
    fn cells(&self) -> Vec<String> {
        vec![self.to_csv()]
    }
    fn exact() -> bool {
        false
    }
}

impl<S: Scalar> CsvState for Matrix<S> {
    /// `w_i_j`, 1-based, row-major.
    fn columns(&self) -> Vec<String> {
        (1..=self.rows())
            .flat_map(|i| (1..=self.cols()).map(move |j| format!("w_{i}_{j}")))
            .collect()
    }
    fn cells(&self) -> Vec<String> {
        self.entries().iter().map(Scalar::to_csv).collect()
    }
    fn exact() -> bool {
        S::is_exact()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Floating,
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "exact" | "exact-rational" => Ok(Mode::Exact),
            "floating" | "float" => Ok(Mode::Floating),
            _ => Err(crate::Error::InvalidArgument(format!(
                "unknown mode `{s}` (expected exact or floating)"
            ))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Floating => "floating",
        })
    }
}

/// Samples of a difference scheme. Times are always exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    scheme: String,
    h: Rational,
    samples: Vec<(Rational, T)>,
}

impl<T> Trajectory<T> {
    pub fn new(scheme: impl Into<String>, h: Rational, t0: Rational, x0: T) -> Self {
        Trajectory {
            scheme: scheme.into(),
            h,
            samples: vec![(t0, x0)],
        }
    }

    pub(crate) fn push(&mut self, t: Rational, x: T) {
        self.samples.push((t, x));
    }

    pub fn scheme(&self) -> &str {
        &self.scheme
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    pub fn samples(&self) -> &[(Rational, T)] {
        &self.samples
    }

    pub fn last(&self) -> &(Rational, T) {
        self.samples
            .last()
            .expect("trajectory holds its initial sample")
    }

    pub fn states(&self) -> impl Iterator<Item = &T> {
        self.samples.iter().map(|(_, x)| x)
    }
}

impl<T: CsvState> Trajectory<T> {
    pub fn mode(&self) -> Mode {
        if T::exact() {
            Mode::Exact
        } else {
            Mode::Floating
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut header = vec!["t".to_string()];
        header.extend(self.samples[0].1.columns());
        out.push_str(&header.join(","));
        out.push('\n');
        for (t, x) in &self.samples {
            let mut row = vec![format_rational(t)];
            row.extend(x.cells());
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
