//! Dense linear algebra over a [`Field`]: echelon forms, rank, and the
//! subspace lattice.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{same_field, Field};

#[derive(Clone)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: Arc<Field>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && same_field(&self.field, &other.field)
    }
}

impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl Mat {
    pub fn zeros(field: &Arc<Field>, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(field: &Arc<Field>, rows: usize, cols: usize, data: Vec<u32>) -> Mat {
        assert_eq!(data.len(), rows * cols, "entry count");
        assert!(data.iter().all(|&x| x < field.q()), "entry out of range");
        Mat { rows, cols, data, field: field.clone() }
    }

    pub fn from_rows(field: &Arc<Field>, rows: &[Vec<u32>]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<u32> = rows.iter().flat_map(|r| {
            assert_eq!(r.len(), cols, "ragged rows");
            r.iter().copied()
        }).collect();
        Mat::from_vec(field, rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    fn check_same(&self, other: &Mat) -> Result<()> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Entrywise conjugation over the index-2 subfield (identity otherwise).
    pub fn conj(&self) -> Mat {
        let f = &self.field;
        Mat { data: self.data.iter().map(|&x| f.conj_unchecked(x)).collect(), ..self.clone() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat {
        self.conj().transpose()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let f = &self.field;
        Mat { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..self.clone() }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape");
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(Error::AmbientMismatch(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(self.mul(other))
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "length");
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(k, j)));
            }
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "shape");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, data, field: self.field.clone() }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "shape");
        let mut out = Mat::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(&self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    /// In-place Gauss–Jordan elimination; returns the pivot columns.
    fn eliminate(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn rref(&self) -> Mat {
        self.rref_with_pivots().0
    }

    pub fn rref_with_pivots(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate();
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // forward elimination only
        let f = &self.field;
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    m.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m[r * cols + c]);
            for i in r + 1..rows {
                let factor = f.mul(m[i * cols + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    m[i * cols + j] = f.sub(m[i * cols + j], f.mul(factor, m[r * cols + j]));
                }
            }
            r += 1;
        }
        r
    }

    /// Basis (as rows, in rref) of `{x : self · xᵗ = 0}`.
    pub fn kernel(&self) -> Mat {
        let (r, pivots) = self.rref_with_pivots();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zeros(f, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, 1);
            for (ri, &pc) in pivots.iter().enumerate() {
                basis.set(bi, pc, f.neg(r.get(ri, fc)));
            }
        }
        basis.rref()
    }

    /// Some `X` with `self · X = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows, "shape");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(&self.field, self.cols, rhs.cols);
        for (ri, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(ri, self.cols + j));
            }
        }
        Some(x)
    }

    /// Some `X` with `X · self = rhs`.
    pub fn solve_left(&self, rhs: &Mat) -> Option<Mat> {
        self.transpose().solve(&rhs.transpose()).map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() || self.rank() != self.rows {
            return Err(Error::Singular);
        }
        Ok(self.solve(&Mat::identity(&self.field, self.rows)).expect("invertible"))
    }

    pub fn det(&self) -> u32 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m[i * n + c] != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    m.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m[c * n + c];
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            for i in c + 1..n {
                let factor = f.mul(m[i * n + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    m[i * n + j] = f.sub(m[i * n + j], f.mul(factor, m[c * n + j]));
                }
            }
        }
        det
    }
}

/// A subspace of `F^ambient`, stored by its canonical basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({}/{}: {:?})", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    /// Row space of `m`.
    pub fn span(m: &Mat) -> Subspace {
        Subspace { ambient: m.cols(), basis: m.rref() }
    }

    pub fn from_vectors(field: &Arc<Field>, ambient: usize, vs: &[Vec<u32>]) -> Subspace {
        if vs.is_empty() {
            return Subspace::zero(field, ambient);
        }
        Subspace::span(&Mat::from_rows(field, vs))
    }

    pub fn zero(field: &Arc<Field>, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::zeros(field, 0, ambient) }
    }

    pub fn whole(field: &Arc<Field>, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::identity(field, ambient) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Vector dimension.
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Projective dimension (`-1` for the zero space).
    pub fn proj_dim(&self) -> isize {
        self.dim() as isize - 1
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn field(&self) -> &Arc<Field> {
        self.basis.field()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!("{} vs {}", self.ambient, other.ambient)));
        }
        if !same_field(self.field(), other.field()) {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn try_sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::span(&self.basis.vstack(&other.basis)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        self.try_sum(other).expect("compatible subspaces")
    }

    pub fn try_intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field(), self.ambient));
        }
        // (a | b) in the left kernel of [U; V] gives aU = -bV in U ∩ V
        let stacked = self.basis.vstack(&other.basis);
        let k = stacked.transpose().kernel();
        if k.rows() == 0 {
            return Ok(Subspace::zero(self.field(), self.ambient));
        }
        let a = k.block(0, 0, k.rows(), self.dim());
        Ok(Subspace::span(&a.mul(&self.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.try_intersect(other).expect("compatible subspaces")
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient, "length");
        let f = self.field();
        let mut w = v.to_vec();
        let pivots = self.pivots();
        for (r, &pc) in pivots.iter().enumerate() {
            let c = w[pc];
            if c != 0 {
                for (j, x) in w.iter_mut().enumerate() {
                    *x = f.sub(*x, f.mul(c, self.basis.get(r, j)));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| self.basis.row(r).iter().position(|&x| x != 0).expect("nonzero row"))
            .collect()
    }

    /// Image under right multiplication by `g`.
    pub fn map(&self, g: &Mat) -> Subspace {
        Subspace::span(&self.basis.mul(g))
    }

    pub fn is_disjoint(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim() + other.dim()
    }

    /// Nonzero vectors up to scalars, each normalized with leading entry 1.
    pub fn points(&self) -> Vec<Vec<u32>> {
        let f = self.field();
        let q = f.q() as u64;
        let d = self.dim();
        let mut out = Vec::new();
        for lead in 0..d {
            let free = d - lead - 1;
            for code in 0..q.pow(free as u32) {
                let mut coeffs = vec![0u32; d];
                coeffs[lead] = 1;
                let mut c = code;
                for coeff in coeffs.iter_mut().skip(lead + 1) {
                    *coeff = (c % q) as u32;
                    c /= q;
                }
                out.push(self.basis.vec_mul(&coeffs));
            }
        }
        out
    }
}

/// Scales a nonzero vector so that its first nonzero entry is 1.
pub fn normalize(field: &Field, v: &[u32]) -> Vec<u32> {
    let lead = v.iter().find(|&&x| x != 0).copied().expect("nonzero vector");
    let inv = field.inv(lead);
    v.iter().map(|&x| field.mul(x, inv)).collect()
}

/// All points of PG(dim−1, q), normalized.
pub fn all_points(field: &Arc<Field>, dim: usize) -> Vec<Vec<u32>> {
    Subspace::whole(field, dim).points()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Arc<Field> {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = gf(2);
        assert_eq!(Mat::zeros(&f, 3, 3).rank(), 0);
        assert_eq!(Mat::identity(&f, 4).rank(), 4);
        let m = Mat::from_rows(&f, &[vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rref_examples() {
        let f = gf(5);
        let i = Mat::identity(&f, 3);
        assert_eq!(i.rref(), i);
        let m = Mat::from_rows(&f, &[vec![0, 2, 4], vec![3, 1, 0], vec![3, 3, 4]]);
        let r = m.rref();
        assert_eq!(r.rref(), r);
        let permuted = Mat::from_rows(&f, &[vec![3, 3, 4], vec![0, 2, 4], vec![3, 1, 0]]);
        assert_eq!(permuted.rref(), r);
        assert_eq!(r.rows(), 2);
    }

    #[test]
    fn subspace_examples() {
        let f = gf(2);
        let u = Subspace::from_vectors(&f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let v = Subspace::from_vectors(&f, 4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(u.intersect(&u), u);
        assert_eq!(u.intersect(&v).proj_dim(), -1);
        let h1 = Subspace::span(&Mat::from_rows(&f, &[vec![1, 0, 0, 0, 0, 0]]).kernel());
        let h2 = Subspace::span(&Mat::from_rows(&f, &[vec![0, 1, 1, 0, 0, 0]]).kernel());
        assert_eq!(h1.dim(), 5);
        assert_eq!(h1.intersect(&h2).dim(), 4);
        assert!(u.contains(&[1, 1, 0, 0]));
        assert!(u.contains(&[0, 0, 0, 0]));
        assert!(!u.contains(&[0, 0, 1, 0]));
        let w = Subspace::zero(&f, 5);
        assert!(u.try_sum(&w).is_err());
    }

    #[test]
    fn solve_and_inverse() {
        let f = gf(7);
        let a = Mat::from_rows(&f, &[vec![2, 1, 0], vec![1, 3, 5], vec![0, 4, 6]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(&f, 3));
        let x = Mat::from_rows(&f, &[vec![1, 2, 3]]);
        let b = x.mul(&a);
        assert_eq!(a.solve_left(&b).unwrap(), x);
        let s = Mat::from_rows(&f, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert_eq!(s.det(), 0);
        assert_eq!(a.det(), f.from_int(2 * (18 - 20) - (6 - 0)));
    }

    #[test]
    fn points_count() {
        let f = gf(3);
        assert_eq!(all_points(&f, 4).len(), 40);
    }
}
