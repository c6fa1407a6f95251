//! Exact dense linear algebra over Q and Q(i, √2).

use std::fmt::Debug;

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, TowerScalar};

/// The field operations needed by Gaussian elimination.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Field for TowerScalar {
    fn zero() -> Self {
        TowerScalar::zero()
    }
    fn one() -> Self {
        TowerScalar::one()
    }
    fn is_zero(&self) -> bool {
        TowerScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.checked_inv()
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<F>], nrows: usize) -> Result<Self> {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != nrows {
                return Err(Error::Dimension("column length".into()));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
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

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, F::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, F::sub)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("shape".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.mul(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].sub(&f.mul(&m[(r, j)]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the null space, one vector per free column: the free variable
    /// is set to 1, the other free variables to 0.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = r[(row, f)].neg();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Solves `self · x = b`, returning one solution when the system is consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank of a list of vectors of common length `n`.
pub fn rank_of<F: Field>(vectors: &[Vec<F>], n: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<F>> = vectors.to_vec();
    debug_assert!(rows.iter().all(|v| v.len() == n));
    Matrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0)
}

/// True when `v` lies in the span of `basis`.
pub fn in_span<F: Field>(basis: &[Vec<F>], v: &[F]) -> bool {
    let n = v.len();
    let r = rank_of(basis, n);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank_of(&ext, n) == r
}

/// True when the two lists span the same subspace.
pub fn same_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>], n: usize) -> bool {
    let ra = rank_of(a, n);
    if ra != rank_of(b, n) {
        return false;
    }
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    rank_of(&all, n) == ra
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { acc.add(&x.mul(y)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        let image = m.mul_vec(&k[0]).unwrap();
        assert!(image.iter().all(Field::is_zero));
    }

    #[test]
    fn inverse_round_trip() {
        let m = q(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(inv[(0, 1)], rat_int(-1));
        assert!(matches!(q(&[&[1, 1], &[1, 1]]).inverse(), Err(Error::Singular)));
    }

    #[test]
    fn tower_inverse() {
        let s = TowerScalar::sqrt2();
        let i = TowerScalar::i();
        let m = Matrix::from_rows(vec![vec![s.clone(), i.clone()], vec![-&i, s]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn solve_and_span() {
        let m = q(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[rat_int(3), rat_int(1)]).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);
        let a = vec![vec![rat_int(1), rat_int(0)], vec![rat_int(1), rat_int(1)]];
        let b = vec![vec![rat_int(0), rat_int(1)], vec![rat(1, 2), rat_int(0)]];
        assert!(same_span(&a, &b, 2));
        assert!(!same_span(&a[..1], &b[..1], 2));
        assert!(in_span(&a[..1], &[rat_int(5), rat_int(0)]));
        assert!(q(&[&[1, 1], &[1, 1]]).solve(&[rat_int(1), rat_int(2)]).is_none());
    }
}
