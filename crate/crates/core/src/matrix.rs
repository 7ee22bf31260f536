//! Dense integer matrices with exact, overflow-checked arithmetic.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

/// `(g, s, t)` with `g = s*a + t*b = gcd(a, b) >= 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (i128::from(a), i128::from(b));
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: i64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    /// Builds a matrix from rows. A matrix with zero rows has zero columns.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!("ragged rows of length {cols} and {}", r.len())));
        }
        Ok(Self { rows: rows.len(), cols, data: rows.iter().flatten().copied().collect() })
    }

    pub fn column(v: &[i64]) -> Self {
        Self { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn row(v: &[i64]) -> Self {
        Self { rows: 1, cols: v.len(), data: v.to_vec() }
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0i128;
                for k in 0..self.cols {
                    acc += i128::from(self.get(i, k)) * i128::from(other.get(k, j));
                }
                out.set(i, j, narrow(acc)?);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok(self.mul(&Self::column(v))?.data)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let data =
            self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b).ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, i64::checked_sub)
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let data = self.data.iter().map(|&x| x.checked_mul(c).ok_or(Error::Overflow)).collect::<Result<_>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("{}x{} is not square", self.rows, self.cols)))
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i64> {
        self.require_square()?;
        let n = self.rows;
        let mut a: Vec<Vec<i128>> =
            self.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or(Error::Overflow)?;
                    a[i][j] = num / prev;
                }
            }
            prev = a[k][k];
        }
        narrow(if n == 0 { 1 } else { sign * a[n - 1][n - 1] })
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && matches!(self.det(), Ok(1) | Ok(-1))
    }

    /// Inverse over the integers by unimodular row reduction.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            for i in c + 1..n {
                if a.get(i, c) != 0 {
                    combine_rows(&mut a, &mut inv, c, i, c)?;
                }
            }
            match a.get(c, c) {
                1 => {}
                -1 => {
                    negate_row(&mut a, c);
                    negate_row(&mut inv, c);
                }
                _ => return Err(Error::NonUnimodular),
            }
            for i in 0..n {
                let f = a.get(i, c);
                if i != c && f != 0 {
                    axpy_row(&mut a, i, c, -f)?;
                    axpy_row(&mut inv, i, c, -f)?;
                }
            }
        }
        Ok(inv)
    }

    /// Column-style Hermite reduction: returns `(h, u, pivots)` with
    /// `self * u = h`, `u` unimodular, and `h` in column echelon form whose
    /// `k`-th column has its leading entry in row `pivots[k]`.
    pub fn column_echelon(&self) -> Result<(Self, Self, Vec<usize>)> {
        let mut h = self.transpose();
        let mut u = Self::identity(self.cols);
        let mut pivots = Vec::new();
        let mut p = 0;
        for r in 0..self.rows {
            if p == self.cols {
                break;
            }
            for j in p + 1..self.cols {
                if h.get(j, r) != 0 {
                    combine_rows(&mut h, &mut u, p, j, r)?;
                }
            }
            if h.get(p, r) != 0 {
                pivots.push(r);
                p += 1;
            }
        }
        Ok((h.transpose(), u.transpose(), pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.column_echelon()?.2.len())
    }

    /// A basis of the integer kernel `{x in Z^cols : self * x = 0}`.
    pub fn kernel(&self) -> Result<Vec<Vec<i64>>> {
        let (_, u, pivots) = self.column_echelon()?;
        let u = u.transpose();
        Ok((pivots.len()..self.cols).map(|k| u.to_rows()[k].clone()).collect())
    }

    /// Some integer solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[i64]) -> Result<Option<Vec<i64>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        let (h, u, pivots) = self.column_echelon()?;
        let mut y = vec![0i64; self.cols];
        for (k, &r) in pivots.iter().enumerate() {
            let mut rest = i128::from(b[r]);
            for (j, &yj) in y.iter().enumerate().take(k) {
                rest -= i128::from(h.get(r, j)) * i128::from(yj);
            }
            let d = i128::from(h.get(r, k));
            if rest % d != 0 {
                return Ok(None);
            }
            y[k] = narrow(rest / d)?;
        }
        let x = u.mul_vec(&y)?;
        if self.mul_vec(&x)? != b {
            return Ok(None);
        }
        Ok(Some(x))
    }
}

/// Replaces rows `p` and `j` of `a` by unimodular combinations so that
/// `a[j][col]` becomes zero and `a[p][col]` the gcd; `b` receives the same
/// row operations.
fn combine_rows(a: &mut IntMatrix, b: &mut IntMatrix, p: usize, j: usize, col: usize) -> Result<()> {
    let (x, y) = (a.get(p, col), a.get(j, col));
    let (g, s, t) = ext_gcd(x, y);
    let (xg, yg) = (x / g, y / g);
    for m in [a, b] {
        for c in 0..m.cols {
            let (rp, rj) = (i128::from(m.get(p, c)), i128::from(m.get(j, c)));
            m.set(p, c, narrow(i128::from(s) * rp + i128::from(t) * rj)?);
            m.set(j, c, narrow(-i128::from(yg) * rp + i128::from(xg) * rj)?);
        }
    }
    Ok(())
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for c in 0..m.cols {
        m.set(i, c, -m.get(i, c));
    }
}

/// `row i += f * row k`.
fn axpy_row(m: &mut IntMatrix, i: usize, k: usize, f: i64) -> Result<()> {
    for c in 0..m.cols {
        let v = i128::from(m.get(i, c)) + i128::from(f) * i128::from(m.get(k, c));
        m.set(i, c, narrow(v)?);
    }
    Ok(())
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{row:?}")?;
        }
        f.write_str("]")
    }
}
