use std::fmt;

use super::field::{Elem, FieldSpec};
use crate::error::{Error, Result};

/// Dense matrix over `F_q`, row-major in a single buffer.
#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.field)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Output of [`FqMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FqMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FqMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        let q = field.q();
        if data.iter().any(|&e| u32::from(e) >= q) {
            return Err(Error::BadArgs(format!(
                "matrix entry out of range for F_{q}"
            )));
        }
        Ok(FqMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have length `cols`.
    pub fn from_rows<R: AsRef<[Elem]>>(field: FieldSpec, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::AmbientMismatch);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FqMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// `self * other`.
    pub fn mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = &self.field;
        let mut out = FqMatrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(t, j)));
                }
            }
        }
        Ok(out)
    }

    /// `self * v^T` for a vector `v` of length `cols`.
    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Gauss-Jordan elimination in place; returns rank and pivot columns.
    /// Zero rows end up at the bottom but are not removed.
    fn eliminate(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let lead = self.data[r * cols + c];
            if lead != 1 {
                let inv = f.inv_nonzero(lead);
                for j in c..cols {
                    self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..cols {
                    let v = self.data[r * cols + j];
                    if v != 0 {
                        let idx = i * cols + j;
                        self.data[idx] = f.add(self.data[idx], f.mul(nf, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Unique reduced row echelon form with zero rows removed.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.eliminate();
        let rank = pivots.len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        Rref {
            matrix: m,
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().len()
    }

    /// Basis of `{x : self * x^T = 0}` in reduced row echelon form.
    pub fn kernel_basis(&self) -> FqMatrix {
        let Rref { matrix, pivots, .. } = self.rref();
        let f = &self.field;
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut data = Vec::with_capacity((n - pivots.len()) * n);
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; n];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(matrix.get(r, free));
            }
            data.extend(v);
        }
        let basis = FqMatrix {
            field: f.clone(),
            rows: n - pivots.len(),
            cols: n,
            data,
        };
        basis.rref().matrix
    }
}

pub fn rref(mat: &FqMatrix) -> Rref {
    mat.rref()
}

pub fn kernel_basis(mat: &FqMatrix) -> FqMatrix {
    mat.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::make_field;

    fn f2() -> FieldSpec {
        make_field(2).unwrap()
    }

    #[test]
    fn rref_hand_example() {
        let m = FqMatrix::from_rows(f2(), 4, &[[1, 1, 0, 0], [0, 1, 1, 0]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(
            r.matrix.row_vecs(),
            vec![vec![1, 0, 1, 0], vec![0, 1, 1, 0]]
        );
    }

    #[test]
    fn rref_row_permutation_invariant() {
        let a = FqMatrix::from_rows(f2(), 4, &[[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0]]).unwrap();
        let b = FqMatrix::from_rows(f2(), 4, &[[1, 0, 1, 0], [1, 1, 0, 0], [0, 1, 1, 0]]).unwrap();
        assert_eq!(a.rref(), b.rref());
    }

    #[test]
    fn rref_zero_matrix() {
        let z = FqMatrix::zeros(f2(), 3, 4);
        let r = z.rref();
        assert_eq!(r.rank, 0);
        assert_eq!(r.matrix.rows(), 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn kernel_examples() {
        for q in [2, 3, 4, 5] {
            let f = make_field(q).unwrap();
            assert_eq!(FqMatrix::identity(f, 4).kernel_basis().rows(), 0);
        }
        let k = FqMatrix::from_rows(f2(), 2, &[[1, 1]])
            .unwrap()
            .kernel_basis();
        assert_eq!(k.row_vecs(), vec![vec![1, 1]]);
        let k = FqMatrix::from_rows(f2(), 3, &[[1, 0, 1], [0, 1, 1]])
            .unwrap()
            .kernel_basis();
        assert_eq!(k.row_vecs(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows: Vec<Vec<Elem>> = vec![vec![1, 0], vec![1]];
        assert!(matches!(
            FqMatrix::from_rows(f2(), 2, &rows),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(FqMatrix::new(f2(), 1, 2, vec![0, 2]).is_err());
    }

    #[test]
    fn f3_kernel() {
        let f = make_field(3).unwrap();
        // x + 2y + z = 0 over F_3
        let m = FqMatrix::from_rows(f.clone(), 3, &[[1, 2, 1]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            assert_eq!(m.apply(k.row(r)), vec![0]);
        }
    }
}
