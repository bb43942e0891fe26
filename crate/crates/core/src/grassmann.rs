//! Canonical subspaces of `F_q^n` and enumeration of Grassmannians.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::gfq::{Elem, FieldSpec, FqMatrix};

/// A subspace of `F_q^n`, held as its reduced row echelon basis.
///
/// Equality, hashing and ordering go through the canonical key
/// `(q as two big-endian bytes, n, rref entries row-major)`; two subspaces
/// are equal iff their row spaces are equal.
#[derive(Clone)]
pub struct Subspace {
    basis: FqMatrix,
    key: Vec<u8>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for r in 0..self.dim() {
            if r > 0 {
                write!(f, ", ")?;
            }
            for e in self.basis.row(r) {
                write!(f, "{e}")?;
            }
        }
        write!(f, ">")
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

fn make_key(basis: &FqMatrix) -> Vec<u8> {
    let q = basis.field().q() as u16;
    let mut key = Vec::with_capacity(3 + basis.entries().len());
    key.extend_from_slice(&q.to_be_bytes());
    key.push(basis.cols() as u8);
    key.extend_from_slice(basis.entries());
    key
}

impl Subspace {
    fn from_rref(basis: FqMatrix) -> Self {
        let key = make_key(&basis);
        Subspace { basis, key }
    }

    /// Row space of an arbitrary matrix.
    pub fn row_space(mat: &FqMatrix) -> Self {
        Self::from_rref(mat.rref().matrix)
    }

    pub fn from_vectors<R: AsRef<[Elem]>>(
        field: &FieldSpec,
        n: usize,
        vectors: &[R],
    ) -> Result<Self> {
        let m = FqMatrix::from_rows(field.clone(), n, vectors)?;
        Ok(Self::row_space(&m))
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        Self::from_rref(FqMatrix::zeros(field.clone(), 0, n))
    }

    pub fn full(field: &FieldSpec, n: usize) -> Self {
        Self::from_rref(FqMatrix::identity(field.clone(), n))
    }

    /// Span of the standard basis vectors with the given (0-based) indices.
    pub fn coordinate(field: &FieldSpec, n: usize, axes: &[usize]) -> Self {
        let rows: Vec<Vec<Elem>> = axes
            .iter()
            .map(|&a| {
                let mut v = vec![0; n];
                v[a] = 1;
                v
            })
            .collect();
        Self::from_vectors(field, n, &rows).expect("coordinate vectors have length n")
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn key(&self) -> &[u8] {
        &self.key
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() || self.field() != other.field() {
            Err(Error::AmbientMismatch)
        } else {
            Ok(())
        }
    }

    /// The orthogonal complement under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        Self::from_rref(self.basis.kernel_basis())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::row_space(&self.basis.stack(&other.basis)?))
    }

    /// Dimension of `self + other` without building the canonical form.
    pub fn sum_dim(&self, other: &Subspace) -> Result<usize> {
        self.check_ambient(other)?;
        Ok(self.basis.stack(&other.basis)?.rank())
    }

    /// `U ∩ W = ann(ann U + ann W)`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let a = self.basis.kernel_basis();
        let b = other.basis.kernel_basis();
        Ok(Self::from_rref(a.stack(&b)?.kernel_basis()))
    }

    pub fn intersect_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum_dim(other)?)
    }

    pub fn is_skew(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum_dim(other)? == self.dim() + other.dim())
    }

    /// True iff `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum_dim(other)? == self.dim())
    }

    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        if v.len() != self.ambient_dim() {
            return false;
        }
        let m = FqMatrix::from_rows(self.field().clone(), v.len(), &[v]).expect("length checked");
        self.basis.stack(&m).expect("same ambient").rank() == self.dim()
    }

    /// Image under `x ↦ x·M` for an `n×n` matrix `M`.
    pub fn transform(&self, map: &FqMatrix) -> Result<Subspace> {
        Ok(Self::row_space(&self.basis.mul(map)?))
    }

    /// All `d`-dimensional subspaces of `self`, as subspaces of the ambient
    /// space, in the enumeration order of `Gr(F_q, dim, d)` on coordinates.
    pub fn subspaces_of_dim(&self, d: usize) -> Result<Vec<Subspace>> {
        if d > self.dim() {
            return Err(Error::BadDimension(format!(
                "no {d}-dimensional subspaces inside a {}-dimensional space",
                self.dim()
            )));
        }
        let inner = enum_grassmannian(self.field(), self.dim(), d)?;
        Ok(inner
            .map(|coords| {
                let m = coords.basis.mul(&self.basis).expect("shapes agree");
                Self::row_space(&m)
            })
            .collect())
    }

    /// All nonzero vectors of the subspace (`q^k - 1` of them).
    pub fn nonzero_vectors(&self) -> Vec<Vec<Elem>> {
        let f = self.field();
        let q = f.q() as usize;
        let k = self.dim();
        let n = self.ambient_dim();
        let total = q.pow(k as u32);
        let mut out = Vec::with_capacity(total.saturating_sub(1));
        let mut coef = vec![0usize; k];
        for _ in 1..total {
            for c in coef.iter_mut().rev() {
                *c += 1;
                if *c < q {
                    break;
                }
                *c = 0;
            }
            let mut v = vec![0; n];
            for (r, &c) in coef.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (j, x) in v.iter_mut().enumerate() {
                    *x = f.add(*x, f.mul(c as Elem, self.basis.get(r, j)));
                }
            }
            out.push(v);
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.basis.row_vecs()
    }
}

pub fn subspace_from_vectors<R: AsRef<[Elem]>>(
    field: &FieldSpec,
    n: usize,
    vectors: &[R],
) -> Result<Subspace> {
    Subspace::from_vectors(field, n, vectors)
}

pub fn sum(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.sum(w)
}

pub fn intersect(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.intersect(w)
}

pub fn is_skew(u: &Subspace, w: &Subspace) -> Result<bool> {
    u.is_skew(w)
}

pub fn contains(u: &Subspace, w: &Subspace) -> Result<bool> {
    u.contains(w)
}

/// Streams `Gr(F_q, n, k)`: pivot sets in lexicographic order, then the free
/// entries counted base `q` with the last free position least significant.
pub struct GrassmannIter {
    field: FieldSpec,
    n: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<Elem>,
    done: bool,
}

fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        out.extend((p + 1..n).filter(|&c| !is_pivot[c]).map(|c| (r, c)));
    }
    out
}

impl GrassmannIter {
    fn next_pivots(&mut self) -> bool {
        let k = self.pivots.len();
        let n = self.n;
        let Some(i) = (0..k).rev().find(|&i| self.pivots[i] < n - k + i) else {
            return false;
        };
        self.pivots[i] += 1;
        for j in i + 1..k {
            self.pivots[j] = self.pivots[j - 1] + 1;
        }
        self.free = free_positions(n, &self.pivots);
        self.digits = vec![0; self.free.len()];
        true
    }

    fn current(&self) -> Subspace {
        let n = self.n;
        let k = self.pivots.len();
        let mut data = vec![0; k * n];
        for (r, &p) in self.pivots.iter().enumerate() {
            data[r * n + p] = 1;
        }
        for (&(r, c), &d) in self.free.iter().zip(&self.digits) {
            data[r * n + c] = d;
        }
        Subspace::from_rref(FqMatrix::new(self.field.clone(), k, n, data).expect("valid entries"))
    }
}

impl Iterator for GrassmannIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let out = self.current();
        let q = self.field.q();
        let mut carried = true;
        for d in self.digits.iter_mut().rev() {
            if u32::from(*d) + 1 < q {
                *d += 1;
                carried = false;
                break;
            }
            *d = 0;
        }
        if carried && !self.next_pivots() {
            self.done = true;
        }
        Some(out)
    }
}

pub fn enum_grassmannian(field: &FieldSpec, n: usize, k: usize) -> Result<GrassmannIter> {
    if k > n {
        return Err(Error::BadDimension(format!("k = {k} exceeds n = {n}")));
    }
    if n > 16 {
        return Err(Error::BadDimension(format!("ambient dimension {n} > 16")));
    }
    let pivots: Vec<usize> = (0..k).collect();
    let free = free_positions(n, &pivots);
    Ok(GrassmannIter {
        field: field.clone(),
        n,
        digits: vec![0; free.len()],
        free,
        pivots,
        done: false,
    })
}

/// All `i`-dimensional subspaces skew to `w`.
pub fn enum_skew_to(w: &Subspace, i: usize) -> Result<impl Iterator<Item = Subspace> + '_> {
    let n = w.ambient_dim();
    if i + w.dim() > n {
        return Err(Error::BadDimension(format!(
            "no {i}-dimensional subspace is skew to a {}-dimensional subspace of F_q^{n}",
            w.dim()
        )));
    }
    Ok(enum_grassmannian(w.field(), n, i)?.filter(move |d| d.is_skew(w).expect("same ambient")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::make_field;

    fn e(f: &FieldSpec, n: usize, axes: &[usize]) -> Subspace {
        Subspace::coordinate(f, n, axes)
    }

    #[test]
    fn from_vectors_examples() {
        let f = make_field(2).unwrap();
        let s = Subspace::from_vectors(&f, 4, &[[1, 1, 0, 0], [0, 1, 1, 0]]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.rows(), vec![vec![1, 0, 1, 0], vec![0, 1, 1, 0]]);

        let s = Subspace::from_vectors(&f, 4, &[[1, 0, 0, 0], [1, 0, 0, 0]]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.rows(), vec![vec![1, 0, 0, 0]]);

        let empty: [[Elem; 4]; 0] = [];
        let z = Subspace::from_vectors(&f, 4, &empty).unwrap();
        assert!(z.is_zero());
        assert_eq!(z, Subspace::zero(&f, 4));

        let ragged: Vec<Vec<Elem>> = vec![vec![1, 0, 0, 0], vec![1, 0]];
        assert!(matches!(
            Subspace::from_vectors(&f, 4, &ragged),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sum_and_intersect_examples() {
        let f = make_field(2).unwrap();
        let e12 = e(&f, 4, &[0, 1]);
        let e34 = e(&f, 4, &[2, 3]);
        let e13 = e(&f, 4, &[0, 2]);
        assert_eq!(e12.sum(&e12).unwrap(), e12);
        assert_eq!(e12.sum(&e34).unwrap(), Subspace::full(&f, 4));
        assert_eq!(e12.sum(&e13).unwrap(), e(&f, 4, &[0, 1, 2]));
        assert_eq!(e12.intersect(&e12).unwrap(), e12);
        assert!(e12.intersect(&e34).unwrap().is_zero());
        assert_eq!(e12.intersect(&e13).unwrap(), e(&f, 4, &[0]));

        let other = Subspace::zero(&f, 5);
        assert_eq!(e12.sum(&other).unwrap_err(), Error::AmbientMismatch);
        assert_eq!(e12.intersect(&other).unwrap_err(), Error::AmbientMismatch);
    }

    #[test]
    fn skew_and_contains_examples() {
        let f = make_field(2).unwrap();
        let e12 = e(&f, 4, &[0, 1]);
        assert!(e12.is_skew(&e(&f, 4, &[2, 3])).unwrap());
        assert!(!e12.is_skew(&e(&f, 4, &[0, 2])).unwrap());
        let tilted = Subspace::from_vectors(&f, 4, &[[1, 0, 1, 0], [0, 1, 0, 1]]).unwrap();
        assert!(e12.is_skew(&tilted).unwrap());

        assert!(e12.contains(&e12).unwrap());
        assert!(e12.contains(&e(&f, 4, &[0])).unwrap());
        assert!(!e12.contains(&e(&f, 4, &[2])).unwrap());
        assert!(e12.contains_vector(&[1, 1, 0, 0]));
        assert!(!e12.contains_vector(&[1, 1, 1, 0]));
    }

    #[test]
    fn grassmannian_counts() {
        let f2 = make_field(2).unwrap();
        assert_eq!(enum_grassmannian(&f2, 4, 2).unwrap().count(), 35);
        let f3 = make_field(3).unwrap();
        assert_eq!(enum_grassmannian(&f3, 4, 2).unwrap().count(), 130);
        for n in 0..5 {
            let z: Vec<_> = enum_grassmannian(&f3, n, 0).unwrap().collect();
            assert_eq!(z, vec![Subspace::zero(&f3, n)]);
        }
        assert!(matches!(
            enum_grassmannian(&f2, 3, 4),
            Err(Error::BadDimension(_))
        ));
    }

    #[test]
    fn grassmannian_first_elements_and_distinctness() {
        let f = make_field(2).unwrap();
        let all: Vec<_> = enum_grassmannian(&f, 4, 2).unwrap().collect();
        assert_eq!(all[0].rows(), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        assert_eq!(all[1].rows(), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 1]]);
        assert_eq!(
            all.last().unwrap().rows(),
            vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]
        );
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 35);
        assert!(all.iter().all(|s| s.dim() == 2));
    }

    #[test]
    fn skew_enumeration_examples() {
        let f = make_field(2).unwrap();
        let w = e(&f, 4, &[0, 1]);
        assert_eq!(enum_skew_to(&w, 2).unwrap().count(), 16);
        let z = Subspace::zero(&f, 4);
        assert_eq!(enum_skew_to(&z, 2).unwrap().count(), 35);
        assert_eq!(enum_skew_to(&e(&f, 4, &[0]), 1).unwrap().count(), 14);
        assert!(enum_skew_to(&w, 3).is_err());
    }

    #[test]
    fn subspaces_inside() {
        let f = make_field(3).unwrap();
        let b = e(&f, 5, &[1, 3, 4]);
        let lines = b.subspaces_of_dim(1).unwrap();
        assert_eq!(lines.len(), 13);
        assert!(lines.iter().all(|l| b.contains(l).unwrap()));
        assert_eq!(b.subspaces_of_dim(3).unwrap(), vec![b.clone()]);
        assert_eq!(b.subspaces_of_dim(0).unwrap(), vec![Subspace::zero(&f, 5)]);
        assert_eq!(b.nonzero_vectors().len(), 26);
    }
}
