use std::fmt;

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            Error::dims(c, row.len())?;
            data.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn scalar(x: S) -> Self {
        Matrix {
            rows: 1,
            cols: 1,
            data: vec![x],
        }
    }

    pub fn from_rational(m: &Matrix<Rational>) -> Self {
        Matrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(S::from_rational).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[S]>::to_vec)
            .collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.zip(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.zip(other, |a, b| a.clone() - b.clone()))
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Error::dims(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        Ok(out)
    }

    /// Largest absolute entry, as a float.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Solves `self · X = rhs` by Gaussian elimination with full pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        Error::dims(self.rows, self.cols)?;
        Error::dims(self.rows, rhs.rows)?;
        let n = self.rows;
        let m = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        // perm[k] is the unknown held in column k
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut best: Option<(usize, usize, f64)> = None;
            for i in k..n {
                for j in k..n {
                    let x = &a[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    let mag = match x.to_f64().abs() {
                        w if w.is_nan() => f64::INFINITY,
                        w => w,
                    };
                    if best.map_or(true, |(_, _, w)| mag > w) {
                        best = Some((i, j, mag));
                    }
                }
            }
            let Some((p, q, _)) = best else {
                return Err(Error::SingularMatrix {
                    determinant: S::zero().to_csv(),
                });
            };
            a.swap_rows(k, p);
            b.swap_rows(k, p);
            a.swap_cols(k, q);
            perm.swap(k, q);
            let pivot = a[(k, k)].clone();
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone() / pivot.clone();
                for j in k..n {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                }
                for j in 0..m {
                    b[(i, j)] = b[(i, j)].clone() - f.clone() * b[(k, j)].clone();
                }
            }
        }
        let mut y = Self::zeros(n, m);
        for k in (0..n).rev() {
            for j in 0..m {
                let mut acc = b[(k, j)].clone();
                for l in k + 1..n {
                    acc = acc - a[(k, l)].clone() * y[(l, j)].clone();
                }
                y[(k, j)] = acc / a[(k, k)].clone();
            }
        }
        let mut x = Self::zeros(n, m);
        for (k, &var) in perm.iter().enumerate() {
            for j in 0..m {
                x[(var, j)] = y[(k, j)].clone();
            }
        }
        Ok(x)
    }

    /// `lhs · self⁻¹`, via the transposed system.
    pub fn solve_right(&self, lhs: &Self) -> Result<Self> {
        Ok(self.transpose().solve(&lhs.transpose())?.transpose())
    }

    pub fn inverse(&self) -> Result<Self> {
        self.solve(&Self::identity(self.rows))
    }

    pub fn determinant(&self) -> Result<S> {
        Error::dims(self.rows, self.cols)?;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(S::zero());
            };
            if p != k {
                a.swap_rows(k, p);
                det = -det;
            }
            let pivot = a[(k, k)].clone();
            det = det * pivot.clone();
            for i in k + 1..n {
                let f = a[(i, k)].clone() / pivot.clone();
                for j in k..n {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                }
            }
        }
        Ok(det)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        Error::dims(self.rows, other.rows)?;
        Error::dims(self.cols, other.cols)
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter().map(Scalar::to_csv).collect::<Vec<_>>().join(", ")
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
