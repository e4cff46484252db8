//! Dense matrices over a [`Scalar`] field, sized for phase-space work
//! (dimensions up to a few dozen). Gaussian elimination with magnitude
//! pivoting serves both the exact and the float instantiations.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_complex::Complex64;
use std::fmt;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Scalar> Mat<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Standard symplectic structure: `sigma(u, v) = <Omega u, v>` with
    /// `Omega = [[0, -I], [I, 0]]` in `(x, xi)` block order.
    pub fn omega(n: usize) -> Self {
        let mut m = Mat::zeros(2 * n, 2 * n);
        for j in 0..n {
            m[(j, n + j)] = -C::one();
            m[(n + j, j)] = C::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat<C> {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Mat<C> {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Mat<D> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, o: &Mat<C>) -> Mat<C> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + o[(i, j)].clone()
        })
    }

    pub fn sub(&self, o: &Mat<C>) -> Mat<C> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - o[(i, j)].clone()
        })
    }

    pub fn neg(&self) -> Mat<C> {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, c: &C) -> Mat<C> {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn matmul(&self, o: &Mat<C>) -> Mat<C> {
        assert_eq!(self.cols, o.rows, "dimension mismatch in matmul");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * o[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = C::zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> Mat<C> {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.rows);
        for _ in 0..k {
            acc = acc.matmul(self);
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.abs()).fold(0.0, f64::max)
    }

    pub fn norm_fro(&self) -> f64 {
        self.data
            .iter()
            .map(|c| c.abs().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn imag_norm(&self) -> f64 {
        self.data.iter().map(|c| c.im_abs()).fold(0.0, f64::max)
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Solve `A X = B` by Gaussian elimination with magnitude pivoting.
    pub fn solve(&self, b: &Mat<C>) -> Result<Mat<C>> {
        assert!(self.is_square());
        assert_eq!(self.rows, b.rows);
        let n = self.rows;
        let m = b.cols;
        let mut a = self.clone();
        let mut x = b.clone();
        let scale = self.max_abs().max(1.0);
        for col in 0..n {
            let (piv, piv_abs) = (col..n)
                .map(|r| (r, a[(r, col)].abs()))
                .max_by(|p, q| p.1.total_cmp(&q.1))
                .unwrap();
            let singular = if C::FLOAT {
                piv_abs <= 1e-13 * scale
            } else {
                a[(piv, col)].is_zero()
            };
            if singular {
                return Err(Error::SingularMatrix);
            }
            if piv != col {
                for j in 0..n {
                    self::swap(&mut a, (piv, j), (col, j));
                }
                for j in 0..m {
                    self::swap(&mut x, (piv, j), (col, j));
                }
            }
            let inv = a[(col, col)].inv()?;
            for r in (col + 1)..n {
                let f = a[(r, col)].clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                }
                for j in 0..m {
                    x[(r, j)] = x[(r, j)].clone() - f.clone() * x[(col, j)].clone();
                }
            }
        }
        for col in (0..n).rev() {
            let inv = a[(col, col)].inv()?;
            for j in 0..m {
                let mut acc = x[(col, j)].clone();
                for k in (col + 1)..n {
                    acc = acc - a[(col, k)].clone() * x[(k, j)].clone();
                }
                x[(col, j)] = acc * inv.clone();
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Mat<C>> {
        self.solve(&Mat::identity(self.rows))
    }

    /// Row-echelon rank. `tol` applies in float mode (relative to the
    /// largest entry); exact mode tests exact zero.
    pub fn rank(&self, tol: f64) -> usize {
        let mut a = self.clone();
        let scale = a.max_abs().max(1.0);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            let (piv, piv_abs) = (row..self.rows)
                .map(|r| (r, a[(r, col)].abs()))
                .max_by(|p, q| p.1.total_cmp(&q.1))
                .unwrap_or((row, 0.0));
            let zero = if C::FLOAT {
                piv_abs <= tol * scale
            } else {
                piv >= self.rows || a[(piv, col)].is_zero()
            };
            if zero {
                continue;
            }
            if piv != row {
                for j in 0..self.cols {
                    self::swap(&mut a, (piv, j), (row, j));
                }
            }
            let inv = a[(row, col)].inv().expect("nonzero pivot");
            for r in (row + 1)..self.rows {
                let f = a[(r, col)].clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(row, j)].clone();
                }
            }
            rank += 1;
            row += 1;
            if row == self.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<C>> {
        let mut a = self.clone();
        let scale = a.max_abs().max(1.0);
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let (piv, piv_abs) = (row..self.rows)
                .map(|r| (r, a[(r, col)].abs()))
                .max_by(|p, q| p.1.total_cmp(&q.1))
                .unwrap();
            let zero = if C::FLOAT {
                piv_abs <= tol * scale
            } else {
                a[(piv, col)].is_zero()
            };
            if zero {
                continue;
            }
            if piv != row {
                for j in 0..self.cols {
                    self::swap(&mut a, (piv, j), (row, j));
                }
            }
            let inv = a[(row, col)].inv().expect("nonzero pivot");
            for j in col..self.cols {
                a[(row, j)] = a[(row, j)].clone() * inv.clone();
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = a[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(row, j)].clone();
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![C::zero(); self.cols];
            v[free] = C::one();
            for &(r, c) in &pivots {
                v[c] = -a[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// `exp` as a finite series, valid when `self` is nilpotent;
    /// errors otherwise.
    pub fn expm_nilpotent(&self) -> Result<Mat<C>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Mat::identity(n);
        let mut term = Mat::identity(n);
        for k in 1..=n {
            term = term.matmul(self);
            let fact = C::from_ratio(1, factorial(k));
            acc = acc.add(&term.scale(&fact));
        }
        let check = term.matmul(self);
        let nil = if C::FLOAT {
            check.max_abs() <= 1e-12 * self.max_abs().max(1.0).powi(n as i32 + 1)
        } else {
            check.data.iter().all(|c| c.is_zero())
        };
        if !nil {
            return Err(Error::ExactUnsupported {
                what: "matrix exponential of a non-nilpotent matrix".into(),
            });
        }
        Ok(acc)
    }
}

fn swap<C: Clone>(m: &mut Mat<C>, a: (usize, usize), b: (usize, usize)) {
    let idx_a = a.0 * m.cols + a.1;
    let idx_b = b.0 * m.cols + b.1;
    m.data.swap(idx_a, idx_b);
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

impl<C> std::ops::Index<(usize, usize)> for Mat<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl<C> std::ops::IndexMut<(usize, usize)> for Mat<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

impl<C: Scalar> fmt::Display for Mat<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Scaling-and-squaring exponential for float matrices.
pub fn expm_c64(a: &Mat<Complex64>) -> Mat<Complex64> {
    let n = a.nrows();
    assert!(a.is_square());
    let norm = a.max_abs();
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex64::new(1.0 / 2f64.powi(s as i32), 0.0);
    let b = a.scale(&scale);
    let mut acc = Mat::identity(n);
    let mut term = Mat::identity(n);
    for k in 1..=20 {
        term = term.matmul(&b).scale(&Complex64::new(1.0 / k as f64, 0.0));
        acc = acc.add(&term);
        if term.max_abs() < 1e-18 {
            break;
        }
    }
    for _ in 0..s {
        acc = acc.matmul(&acc);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Exact;

    #[test]
    fn solve_exact() {
        let a = Mat::from_rows(vec![
            vec![Exact::from_int(2), Exact::from_int(1)],
            vec![Exact::from_int(1), Exact::from_int(3)],
        ]);
        let b = Mat::from_rows(vec![vec![Exact::from_int(5)], vec![Exact::from_int(10)]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(x[(0, 0)], Exact::from_int(1));
        assert_eq!(x[(1, 0)], Exact::from_int(3));
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), Mat::identity(2));
    }

    #[test]
    fn nullspace_exact() {
        let a = Mat::from_rows(vec![
            vec![Exact::from_int(1), Exact::from_int(2)],
            vec![Exact::from_int(2), Exact::from_int(4)],
        ]);
        assert_eq!(a.rank(1e-12), 1);
        let ns = a.nullspace(1e-12);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let prod = a.matvec(v);
        assert!(prod.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn expm_float_rotation() {
        // exp of pi/2 * [[0,-1],[1,0]] is the quarter rotation
        let t = std::f64::consts::FRAC_PI_2;
        let a = Mat::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(-t, 0.0)],
            vec![Complex64::new(t, 0.0), Complex64::new(0.0, 0.0)],
        ]);
        let e = expm_c64(&a);
        assert!((e[(0, 0)].re).abs() < 1e-14);
        assert!((e[(0, 1)].re + 1.0).abs() < 1e-14);
        assert!((e[(1, 0)].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn expm_nilpotent_exact() {
        let n = Mat::from_rows(vec![
            vec![Exact::from_int(0), Exact::from_int(1)],
            vec![Exact::from_int(0), Exact::from_int(0)],
        ]);
        let e = n.expm_nilpotent().unwrap();
        assert_eq!(e[(0, 1)], Exact::from_int(1));
        assert_eq!(e[(0, 0)], Exact::from_int(1));
    }
}
