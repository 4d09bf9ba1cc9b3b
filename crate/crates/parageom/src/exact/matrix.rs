//! Dense matrices with polynomial entries.
//!
//! One matrix type serves both the parametric work (entries in `Poly`) and
//! the purely numeric work: `scalar_rows` extracts plain rational rows so the
//! elimination routines in `linalg` can run without polynomial overhead.

use crate::error::{Error, Result};
use crate::exact::poly::Poly;
use crate::exact::scalar::Scalar;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix literal, handy in tests and fixed structure tensors.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Poly::from_int(n)).collect())
                .collect(),
        )
        .expect("integer literal rows are rectangular")
    }

    pub fn from_scalar_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Poly::constant).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, mut f: impl FnMut(&Poly) -> Poly) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        self.map(|p| p.scale(k))
    }

    pub fn scale_poly(&self, k: &Poly) -> Matrix {
        self.map(|p| p.mul(k))
    }

    pub fn trace(&self) -> Poly {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut t = Poly::zero();
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.cols, "apply: length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero();
                for (j, vj) in v.iter().enumerate() {
                    let e = self.get(i, j);
                    if !e.is_zero() && !vj.is_zero() {
                        acc = acc.add(&e.mul(vj));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    /// Kronecker product; block (i,j) is `self[i][j] * other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let a = self.get(i / other.rows, j / other.cols);
            let b = other.get(i % other.rows, j % other.cols);
            a.mul(b)
        })
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack: row counts differ".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack: column counts differ".into()));
        }
        Ok(Matrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        }))
    }

    /// 2x2 block matrix [[a, b], [c, d]].
    pub fn block2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Matrix> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    pub fn submatrix(&self, row_range: std::ops::Range<usize>, col_range: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(row_range.len(), col_range.len(), |i, j| {
            self.get(row_range.start + i, col_range.start + j).clone()
        })
    }

    /// Determinant by cofactor expansion; intended for small matrices
    /// (everything here is at most 6x6).
    pub fn det(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("det of a non-square matrix".into()));
        }
        Ok(det_rec(self))
    }

    /// True when every entry is a constant polynomial.
    pub fn is_scalar(&self) -> bool {
        self.data.iter().all(Poly::is_constant)
    }

    /// Extract plain rational rows; errors (naming the first offending
    /// entry) when the matrix still depends on parameters.
    pub fn scalar_rows(&self) -> Result<Vec<Vec<Scalar>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(
                    self.get(i, j)
                        .expect_scalar(&format!("matrix entry ({i},{j}) is parametric"))?,
                );
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Substitute into every entry.
    pub fn substitute(&self, map: &BTreeMap<String, Poly>) -> Matrix {
        self.map(|p| p.substitute(map))
    }

    /// Evaluate every entry at scalar values.
    pub fn eval(&self, values: &BTreeMap<String, Scalar>) -> Result<Matrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for p in &self.data {
            data.push(Poly::constant(p.eval(values)?));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Union of the parameter names appearing in the entries.
    pub fn parameters(&self) -> Vec<String> {
        let mut set = std::collections::BTreeSet::new();
        for p in &self.data {
            for v in p.vars() {
                set.insert(v.clone());
            }
        }
        set.into_iter().collect()
    }
}

fn det_rec(m: &Matrix) -> Poly {
    let n = m.rows();
    match n {
        0 => Poly::one(),
        1 => m.get(0, 0).clone(),
        2 => m
            .get(0, 0)
            .mul(m.get(1, 1))
            .sub(&m.get(0, 1).mul(m.get(1, 0))),
        _ => {
            let mut acc = Poly::zero();
            for i in 0..n {
                let c = m.get(i, 0);
                if c.is_zero() {
                    continue;
                }
                let minor = Matrix::from_fn(n - 1, n - 1, |r, s| {
                    let rr = if r < i { r } else { r + 1 };
                    m.get(rr, s + 1).clone()
                });
                let term = c.mul(&det_rec(&minor));
                acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix addition shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix subtraction shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch ({}x{} * {}x{})",
            self.rows, self.cols, other.rows, other.cols
        );
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Poly::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, j);
                if b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            acc
        })
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(Poly::neg)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        for row in &cells {
            write!(f, "[")?;
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{cell:>width$}", width = widths[j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<&Poly>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<Poly>> = Vec::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_commutator() {
        // sl2 triple in the defining representation: [e, f] = h.
        let e = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let f = Matrix::from_int_rows(&[&[0, 0], &[1, 0]]);
        let h = Matrix::from_int_rows(&[&[1, 0], &[0, -1]]);
        assert_eq!(e.commutator(&f), h);
        assert_eq!(h.commutator(&e), e.scale(&Scalar::from_int(2)));
        assert_eq!(h.trace(), Poly::zero());
    }

    #[test]
    fn parametric_determinant() {
        let t = Poly::var("t");
        let mut m = Matrix::identity(3);
        m.set(0, 0, t.clone());
        m.set(1, 2, Poly::from_int(5));
        assert_eq!(m.det().unwrap(), t);
        m.set(2, 1, Poly::from_int(1));
        // det = t*(1*1 - 5*1) = -4t
        assert_eq!(m.det().unwrap(), t.scale(&Scalar::from_int(-4)));
        assert!(m.scalar_rows().is_err());
    }

    #[test]
    fn kron_shapes_and_values() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[0, 1]]);
        let b = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k.get(0, 3), &Poly::from_int(2));
        assert_eq!(k.get(0, 0), &Poly::zero());
    }

    #[test]
    fn serde_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![Poly::parse("l - 1/2").unwrap(), Poly::zero()],
            vec![Poly::one(), Poly::parse("l^2").unwrap()],
        ])
        .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
