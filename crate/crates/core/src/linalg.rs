//! Exact Gaussian elimination and small dense matrices over a commutative ring.

use std::fmt;

use crate::ring::{Field, Ring};

/// Solves `rows * u = rhs` exactly. Free variables are set to zero.
///
/// Returns `None` when the system is inconsistent.
pub fn solve_linear<F: Field>(rows: &[Vec<F>], rhs: &[F], n_unknowns: usize) -> Option<Vec<F>> {
    assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.resize(n_unknowns, F::zero());
            row.push(b.clone());
            row
        })
        .filter(|row| row.iter().any(|c| !c.is_zero()))
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n_unknowns {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv().expect("nonzero pivot");
        for c in col..=n_unknowns {
            m[r][c] = m[r][c].mul(&inv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for c in col..=n_unknowns {
                    if !m[r][c].is_zero() {
                        let v = m[i][c].sub(&factor.mul(&m[r][c]));
                        m[i][c] = v;
                    }
                }
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == m.len() {
            break;
        }
    }
    // a zero row with nonzero right-hand side means no solution
    for row in m.iter().skip(r) {
        if !row[n_unknowns].is_zero() {
            return None;
        }
    }
    let mut sol = vec![F::zero(); n_unknowns];
    for (row, col) in pivots {
        sol[col] = m[row][n_unknowns].clone();
    }
    Some(sol)
}

/// A dense `rows x cols` matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn scalar(v: T) -> Self {
        Matrix {
            rows: 1,
            cols: 1,
            data: vec![v],
        }
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| c.mul(v))
    }

    /// Determinant by cofactor expansion along the first row; the matrices
    /// handled here are at most a few rows, and no division is needed.
    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        match n {
            0 => T::one(),
            1 => self.data[0].clone(),
            2 => self
                .get(0, 0)
                .mul(self.get(1, 1))
                .sub(&self.get(0, 1).mul(self.get(1, 0))),
            _ => {
                let mut acc = T::zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let minor = self.minor(0, j).det();
                    let term = a.mul(&minor);
                    acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }

    pub fn minor(&self, row: usize, col: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            for j in 0..self.cols {
                if j != col {
                    data.push(self.get(i, j).clone());
                }
            }
        }
        Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// Adjugate (transpose of the cofactor matrix).
    pub fn adjugate(&self) -> Self {
        let n = self.rows;
        if n == 1 {
            return Matrix::identity(1);
        }
        Matrix::from_fn(n, n, |i, j| {
            let c = self.minor(j, i).det();
            if (i + j) % 2 == 0 {
                c
            } else {
                c.neg()
            }
        })
    }
}

impl<T: Field> Matrix<T> {
    /// Inverse over a field; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        let inv = d.inv()?;
        Some(self.adjugate().scale(&inv))
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl<T: Ring + fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QRat;

    fn qi(n: i64) -> QRat {
        QRat::from_int(n)
    }

    #[test]
    fn solves_square_system() {
        // x + y = 3, x - y = 1
        let rows = vec![vec![qi(1), qi(1)], vec![qi(1), qi(-1)]];
        let sol = solve_linear(&rows, &[qi(3), qi(1)], 2).unwrap();
        assert_eq!(sol, vec![qi(2), qi(1)]);
    }

    #[test]
    fn detects_inconsistency() {
        let rows = vec![vec![qi(1), qi(1)], vec![qi(2), qi(2)]];
        assert!(solve_linear(&rows, &[qi(1), qi(3)], 2).is_none());
    }

    #[test]
    fn free_variables_are_zero() {
        let rows = vec![vec![qi(0), qi(1), qi(1)]];
        let sol = solve_linear(&rows, &[qi(4)], 3).unwrap();
        assert_eq!(sol, vec![qi(0), qi(4), qi(0)]);
    }

    #[test]
    fn inverse_of_3x3() {
        let m = Matrix::from_rows(vec![
            vec![qi(2), qi(0), qi(1)],
            vec![qi(1), QRat::q(), qi(0)],
            vec![qi(0), qi(1), qi(1)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
    }
}
