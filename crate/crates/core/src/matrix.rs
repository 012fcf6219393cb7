//! Dense matrices over a commutative ring, with inversion over a local base
//! certified by a unit determinant.

use crate::base::{BaseElem, LocalBase};
use crate::error::{Error, Result};
use crate::ring::RingElem;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type LocalMatrix = Matrix<BaseElem>;

impl<T: RingElem> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn map<U: RingElem>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for l in 0..self.cols {
                    acc = acc.add(&self.get(i, l).mul(other.get(l, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows, "shape mismatch");
        (0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(T::zero(), |acc, (i, x)| acc.add(&x.mul(self.get(i, j))))
            })
            .collect()
    }

    /// Matrix times column vector.
    pub fn right_apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        (0..self.rows)
            .map(|i| {
                v.iter()
                    .enumerate()
                    .fold(T::zero(), |acc, (j, x)| acc.add(&self.get(i, j).mul(x)))
            })
            .collect()
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// Determinant by cofactor expansion. Division-free, so it works over any
    /// commutative ring; cost is factorial, fine for the small sizes used here.
    pub fn det_cofactor(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        match self.rows {
            0 => T::one(),
            1 => self.get(0, 0).clone(),
            2 => self
                .get(0, 0)
                .mul(self.get(1, 1))
                .sub(&self.get(0, 1).mul(self.get(1, 0))),
            n => {
                let mut acc = T::zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a.mul(&self.minor(0, j).det_cofactor());
                    acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }

    /// Classical adjugate from cofactors: `A adj(A) = det(A) I`.
    pub fn adjugate_cofactor(&self) -> Self {
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        if n == 1 {
            out.set(0, 0, T::one());
            return out;
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(j, i).det_cofactor();
                out.set(i, j, if (i + j) % 2 == 0 { c } else { c.neg() });
            }
        }
        out
    }
}

/// Result of inverting a matrix over a local base.
#[derive(Clone, Debug)]
pub struct UnitInverse {
    pub determinant: BaseElem,
    pub inverse: LocalMatrix,
}

impl UnitInverse {
    /// `adj(A) = det(A) A^{-1}`.
    pub fn adjugate(&self) -> LocalMatrix {
        self.inverse.map(|x| x.mul(&self.determinant))
    }
}

impl LocalMatrix {
    /// Inverts a square matrix over a local base. Elimination only ever
    /// divides by units of `base`, so every intermediate entry stays in the
    /// ring; a column without a unit pivot means the determinant lies in the
    /// maximal ideal, reported as [`Error::NotInvertible`]. The product
    /// `A * A^{-1} = I` is re-checked before returning.
    pub fn unit_det_inverse(&self, base: &LocalBase) -> Result<UnitInverse> {
        base.require_local()?;
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = LocalMatrix::identity(n);
        let mut det = base.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| base.is_unit(a.get(r, col)));
            let Some(p) = pivot else {
                let d = self.det_field(base);
                return Err(Error::NotInvertible(d.to_string()));
            };
            if p != col {
                a.swap_rows(p, col);
                inv.swap_rows(p, col);
                det = det.neg();
            }
            let pv = a.get(col, col).clone();
            det = det.mul(&pv);
            let pinv = base.inverse(&pv).expect("pivot is a unit");
            a.scale_row(col, &pinv);
            inv.scale_row(col, &pinv);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.add_row_multiple(r, col, &factor.neg());
                inv.add_row_multiple(r, col, &factor.neg());
            }
        }
        let det = base.normalize(det)?;
        debug_assert!(self.mul(&inv) == LocalMatrix::identity(n));
        Ok(UnitInverse {
            determinant: det,
            inverse: inv,
        })
    }

    /// Determinant via elimination in the fraction field. Only used to report
    /// the offending value when no unit pivot exists.
    fn det_field(&self, base: &LocalBase) -> BaseElem {
        let n = self.rows;
        let mut a = self.clone();
        let mut det = base.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return base.zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = det.neg();
            }
            let pv = a.get(col, col).clone();
            det = det.mul(&pv);
            let pinv = pv.field_inverse().unwrap();
            for r in col + 1..n {
                let f = a.get(r, col).mul(&pinv);
                if !f.is_zero() {
                    a.add_row_multiple(r, col, &f.neg());
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, s: &BaseElem) {
        for c in 0..self.cols {
            let v = self.get(i, c).mul(s);
            self.set(i, c, v);
        }
    }

    /// row_i += s * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, s: &BaseElem) {
        for c in 0..self.cols {
            let v = self.get(i, c).add(&self.get(j, c).mul(s));
            self.set(i, c, v);
        }
    }
}
