use num_traits::{One, Signed, Zero};

use crate::algebra::{format_rational, rational, Rational, TimeExpression};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Matrix, Trajectory};

type ExprRows = Vec<Vec<TimeExpression>>;

/// `W′ = A + BW + WC + WDW` for an `n × k` unknown `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRiccatiSystem {
    n: usize,
    k: usize,
    a: ExprRows,
    b: ExprRows,
    c: ExprRows,
    d: ExprRows,
}

/// The four coefficient matrices at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients<S> {
    pub a: Matrix<S>,
    pub b: Matrix<S>,
    pub c: Matrix<S>,
    pub d: Matrix<S>,
}

fn check_shape(name: &str, m: &ExprRows, rows: usize, cols: usize) -> Result<()> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidArgument(format!(
            "coefficient {name} must be {rows}x{cols}"
        )));
    }
    Ok(())
}

impl MatrixRiccatiSystem {
    pub fn new(
        n: usize,
        k: usize,
        a: ExprRows,
        b: ExprRows,
        c: ExprRows,
        d: ExprRows,
    ) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidArgument("n and k must be positive".into()));
        }
        check_shape("A", &a, n, k)?;
        check_shape("B", &b, n, n)?;
        check_shape("C", &c, k, k)?;
        check_shape("D", &d, k, n)?;
        Ok(MatrixRiccatiSystem { n, k, a, b, c, d })
    }

    /// A system with constant rational coefficients.
    pub fn constant(
        a: &Matrix<Rational>,
        b: &Matrix<Rational>,
        c: &Matrix<Rational>,
        d: &Matrix<Rational>,
    ) -> Result<Self> {
        let lift = |m: &Matrix<Rational>| -> ExprRows {
            m.to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(TimeExpression::constant).collect())
                .collect()
        };
        Self::new(a.rows(), a.cols(), lift(a), lift(b), lift(c), lift(d))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_constant(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .all(|m| m.iter().flatten().all(TimeExpression::is_constant))
    }

    pub fn evaluate(&self, t: &Rational) -> Result<Coefficients<Rational>> {
        let eval = |m: &ExprRows| -> Result<Matrix<Rational>> {
            let rows = m
                .iter()
                .map(|r| r.iter().map(|e| e.evaluate(t)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_rows(rows)
        };
        Ok(Coefficients {
            a: eval(&self.a)?,
            b: eval(&self.b)?,
            c: eval(&self.c)?,
            d: eval(&self.d)?,
        })
    }

    fn at<S: Scalar>(&self, t: &Rational) -> Result<Coefficients<S>> {
        let r = self.evaluate(t)?;
        Ok(Coefficients {
            a: Matrix::from_rational(&r.a),
            b: Matrix::from_rational(&r.b),
            c: Matrix::from_rational(&r.c),
            d: Matrix::from_rational(&r.d),
        })
    }

    pub fn rhs<S: Scalar>(&self, t: &Rational, w: &Matrix<S>) -> Result<Matrix<S>> {
        self.check_state(w)?;
        let co = self.at::<S>(t)?;
        co.a.add(&co.b.mul(w)?)?
            .add(&w.mul(&co.c)?)?
            .add(&w.mul(&co.d)?.mul(w)?)
    }

    fn check_state<S: Scalar>(&self, w: &Matrix<S>) -> Result<()> {
        Error::dims(self.n, w.rows())?;
        Error::dims(self.k, w.cols())
    }
}

/// Solves `W₊ (I − δC − δDW) = W + δ(A + BW)` for `W₊`.
fn implicit_update<S: Scalar>(co: &Coefficients<S>, w: &Matrix<S>, delta: &S) -> Result<Matrix<S>> {
    let k = w.cols();
    let lhs = w.add(&co.a.add(&co.b.mul(w)?)?.scale(delta))?;
    let m = Matrix::identity(k).sub(&co.c.add(&co.d.mul(w)?)?.scale(delta))?;
    m.solve_right(&lhs)
}

/// One step of the superposition-preserving matrix scheme:
/// `W₊ = (W + h(A + BW)) · (I − hC − hDW)⁻¹`.
pub fn matrix_riccati_step<S: Scalar>(
    sys: &MatrixRiccatiSystem,
    t: &Rational,
    w: &Matrix<S>,
    h: &Rational,
) -> Result<Matrix<S>> {
    sys.check_state(w)?;
    implicit_update(&sys.at::<S>(t)?, w, &S::from_rational(h))
}

/// `w(qt + h)` from the `U_{q,h}` relation with `Δ = (q − 1)t + h`:
/// `w(qt+h)·(I − Δc − Δd·w) = w + Δ(a + b·w)`.
pub fn uqh_step<S: Scalar>(
    sys: &MatrixRiccatiSystem,
    q: &Rational,
    h: &Rational,
    t: &Rational,
    w: &Matrix<S>,
) -> Result<Matrix<S>> {
    sys.check_state(w)?;
    let delta = (q - Rational::one()) * t + h;
    if delta.is_zero() && !(q.is_one() && h.is_zero()) {
        return Err(Error::Degenerate(format!(
            "(q - 1)t + h vanishes at t = {}",
            format_rational(t)
        )));
    }
    implicit_update(&sys.at::<S>(t)?, w, &S::from_rational(&delta))
}

pub fn matrix_riccati_integrate<S: Scalar>(
    sys: &MatrixRiccatiSystem,
    t0: &Rational,
    w0: Matrix<S>,
    h: &Rational,
    steps: usize,
) -> Result<Trajectory<Matrix<S>>> {
    iterate("matrix".into(), sys, t0, w0, &Rational::one(), h, steps)
}

/// Iterates `uqh_step` on the grid `t ↦ qt + h`.
pub fn uqh_integrate<S: Scalar>(
    sys: &MatrixRiccatiSystem,
    t0: &Rational,
    w0: Matrix<S>,
    q: &Rational,
    h: &Rational,
    steps: usize,
) -> Result<Trajectory<Matrix<S>>> {
    iterate(
        format!("uqh(q={})", format_rational(q)),
        sys,
        t0,
        w0,
        q,
        h,
        steps,
    )
}

fn iterate<S: Scalar>(
    tag: String,
    sys: &MatrixRiccatiSystem,
    t0: &Rational,
    w0: Matrix<S>,
    q: &Rational,
    h: &Rational,
    steps: usize,
) -> Result<Trajectory<Matrix<S>>> {
    sys.check_state(&w0)?;
    let mut tr = Trajectory::new(tag, h.clone(), t0.clone(), w0.clone());
    let (mut t, mut w) = (t0.clone(), w0);
    for step in 0..steps {
        w = uqh_step(sys, q, h, &t, &w).map_err(|e| Error::StepFailed {
            step,
            source: Box::new(e),
        })?;
        t = q * &t + h;
        tr.push(t.clone(), w.clone());
    }
    Ok(tr)
}

const SERIES_TOLERANCE: f64 = 1e-30;
const SERIES_MAX_TERMS: usize = 10_000;

/// Reference solution of a constant square system through the linear
/// system `P′ = BP + AQ`, `Q′ = −DP − CQ`, `W = PQ⁻¹`, with `exp` summed
/// exactly as a power series.
pub fn matrix_riccati_oracle(
    sys: &MatrixRiccatiSystem,
    t0: &Rational,
    w0: &Matrix<Rational>,
    t1: &Rational,
) -> Result<Matrix<Rational>> {
    if sys.n != sys.k {
        return Err(Error::InvalidArgument(
            "the oracle needs a square system".into(),
        ));
    }
    if !sys.is_constant() {
        return Err(Error::InvalidArgument(
            "the oracle needs constant coefficients".into(),
        ));
    }
    sys.check_state(w0)?;
    let n = sys.n;
    let co = sys.evaluate(t0)?;
    let tau = t1 - t0;

    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = co.b[(i, j)].clone();
            m[(i, n + j)] = co.a[(i, j)].clone();
            m[(n + i, j)] = -co.d[(i, j)].clone();
            m[(n + i, n + j)] = -co.c[(i, j)].clone();
        }
    }
    let mut y = Matrix::zeros(2 * n, n);
    for i in 0..n {
        for j in 0..n {
            y[(i, j)] = w0[(i, j)].clone();
        }
        y[(n + i, i)] = Rational::one();
    }

    // Past this index consecutive terms shrink at least by half.
    let row_norm = (0..2 * n)
        .map(|i| (0..2 * n).map(|j| m[(i, j)].abs()).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero);
    let contracting_from = (row_norm * tau.abs() * rational(2, 1)).ceil().to_integer();

    let mut term = y.clone();
    let mut sum = y;
    for kk in 1..=SERIES_MAX_TERMS {
        term = m.mul(&term)?.scale(&(tau.clone() / rational(kk as i64, 1)));
        sum = sum.add(&term)?;
        let contracting = num_bigint::BigInt::from(kk) >= contracting_from;
        if contracting && term.max_abs() <= SERIES_TOLERANCE * sum.max_abs() {
            break;
        }
    }

    let mut p = Matrix::zeros(n, n);
    let mut qm = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            p[(i, j)] = sum[(i, j)].clone();
            qm[(i, j)] = sum[(n + i, j)].clone();
        }
    }
    qm.solve_right(&p)
}
