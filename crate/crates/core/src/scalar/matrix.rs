use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::field::{Rational, Scalar};
use super::poly::Var;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Dense matrix of [`Scalar`]s, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Square matrix from a row-major list.
    pub fn square_from_flat(n: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {n}x{n} matrix, found {}",
                n * n,
                data.len()
            )));
        }
        Ok(Matrix {
            rows: n,
            cols: n,
            data,
        })
    }

    pub fn from_columns(cols: &[Vec<Scalar>]) -> Matrix {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Matrix> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn theta(&self, v: Var) -> Matrix {
        self.map(|e| e.theta(v))
    }

    pub fn derivative(&self, v: Var) -> Matrix {
        self.map(|e| e.derivative(v))
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        self.map(|e| e * s)
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (k, vk) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !vk.is_zero() {
                        acc = &acc + &(a * vk);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// `[self, o] = self·o − o·self`.
    pub fn commutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn block_diagonal(blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        out
    }

    pub fn max_total_degree(&self) -> u32 {
        self.data
            .iter()
            .map(Scalar::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Row-reduces `[self | rhs]`, returning the reduced augmented matrix and pivot columns.
    fn eliminate(&self, rhs: &Matrix) -> (Matrix, Vec<usize>) {
        let n = self.rows;
        let total = self.cols + rhs.cols;
        let mut a = Matrix::zeros(n, total);
        for i in 0..n {
            for j in 0..self.cols {
                a.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                a.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == n {
                break;
            }
            // Prefer the smallest nonzero pivot to limit expression growth.
            let pick = (row..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .min_by_key(|&r| {
                    let e = a.get(r, col);
                    e.numerator().len() + e.denominator().len()
                });
            let Some(p) = pick else { continue };
            if p != row {
                for j in 0..total {
                    a.data.swap(p * total + j, row * total + j);
                }
            }
            let inv = a.get(row, col).inv().expect("pivot is nonzero");
            for j in col..total {
                let v = a.get(row, j) * &inv;
                a.set(row, j, v);
            }
            for r in 0..n {
                if r == row {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..total {
                    let pj = a.get(row, j);
                    if pj.is_zero() {
                        continue;
                    }
                    let v = a.get(r, j) - &(&f * pj);
                    a.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.eliminate(&Matrix::zeros(self.rows, 0)).1.len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::InvalidInput("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let (a, pivots) = self.eliminate(&Matrix::identity(n));
        if pivots.len() < n {
            return Err(Error::DivisionByZero);
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Solves `self · X = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        let n = self.rows;
        let (a, pivots) = self.eliminate(rhs);
        if pivots.len() < n {
            return Err(Error::DivisionByZero);
        }
        let mut out = Matrix::zeros(n, rhs.cols);
        for i in 0..n {
            for j in 0..rhs.cols {
                out.set(i, j, a.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    pub fn solve_vec(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        let rhs = Matrix::from_columns(&[b.to_vec()]);
        Ok(self.solve(&rhs)?.column(0))
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square());
        let cp = self.charpoly();
        let c0 = cp.coeff(0);
        if self.rows % 2 == 0 {
            c0
        } else {
            -c0
        }
    }

    /// `det(λ·I − self)` by the division-free Berkowitz recurrence.
    pub fn charpoly(&self) -> UPoly {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return UPoly::one();
        }
        // Coefficients kept highest degree first while iterating.
        let mut poly: Vec<Scalar> = vec![Scalar::one(), -self.get(0, 0)];
        for r in 1..n {
            // Leading r×r block A, column c = M[0..r][r], row R = M[r][0..r], corner a.
            let col: Vec<Scalar> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let row: Vec<Scalar> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let a = self.get(r, r).clone();
            let mut t = Vec::with_capacity(r + 2);
            t.push(Scalar::one());
            t.push(-&a);
            let mut v = col;
            for _ in 0..r {
                let rv = dot(&row, &v);
                t.push(-&rv);
                v = (0..r)
                    .map(|i| {
                        let mut acc = Scalar::zero();
                        for (j, vj) in v.iter().enumerate() {
                            let e = self.get(i, j);
                            if !e.is_zero() && !vj.is_zero() {
                                acc = &acc + &(e * vj);
                            }
                        }
                        acc
                    })
                    .collect();
            }
            // new = T · poly, T lower-triangular Toeplitz of size (r+2)×(r+1).
            let mut next = vec![Scalar::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = Scalar::zero();
                for (j, pj) in poly.iter().enumerate() {
                    if i >= j && !pj.is_zero() && !t[i - j].is_zero() {
                        acc = &acc + &(&t[i - j] * pj);
                    }
                }
                *slot = acc;
            }
            poly = next;
        }
        poly.reverse();
        UPoly::new(poly)
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Square integer matrix, used for intersection matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(n: usize, data: Vec<i64>) -> Result<IntMatrix> {
        if data.len() != n * n {
            return Err(Error::InvalidInput(
                "integer matrix has wrong entry count".into(),
            ));
        }
        Ok(IntMatrix { n, data })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<IntMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("integer matrix is not square".into()));
        }
        Ok(IntMatrix {
            n,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn zeros(n: usize) -> IntMatrix {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.n.max(1))
            .take(self.n)
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinants of the leading `k×k` minors, `k = 1..n`, by Bareiss elimination.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        let n = self.n;
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            out.push(bareiss_det(
                (0..k)
                    .map(|i| (0..k).map(|j| BigInt::from(self.get(i, j))).collect())
                    .collect(),
            ));
        }
        out
    }

    /// Sylvester's criterion on `−A`: `(−1)^k·det(A_k) > 0` for every leading minor.
    pub fn is_negative_definite(&self) -> Result<bool> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(self.leading_minors().iter().enumerate().all(|(k, d)| {
            let signed = if (k + 1) % 2 == 1 { -d } else { d.clone() };
            signed.is_positive()
        }))
    }

    pub fn mul_rational(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| {
                v.iter().enumerate().fold(Rational::zero(), |acc, (j, vj)| {
                    acc + Rational::from_integer(BigInt::from(self.get(i, j))) * vj
                })
            })
            .collect()
    }

    pub fn mul_int(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(i64::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}
