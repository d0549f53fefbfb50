//! Dense matrices over `F_{q^2}` with exact elimination.
//!
//! A [`Matrix`] does not hold a reference to its field; every operation that
//! needs arithmetic takes the [`FieldCtx`] explicitly.

use std::ops::{Index, IndexMut};

use rand::RngCore;

use crate::error::{Error, Result};
use crate::ff::{Elt, FieldCtx};

/// Which adjoint `X -> X^*` a form kind uses.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Adjoint {
    /// `X^* = -X^T`, `X^dagger = X^T`.
    Symplectic,
    /// `X^* = X^dagger = (X^sigma)^T` with `sigma` the Frobenius.
    Unitary,
    /// `X^* = X^dagger = X^T`.
    Orthogonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elt>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = Elt;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Elt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elt {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Elt::ZERO; rows * cols],
        }
    }

    pub fn identity(f: &FieldCtx, d: usize) -> Self {
        Self::scalar(d, f.one())
    }

    pub fn scalar(d: usize, a: Elt) -> Self {
        let mut m = Self::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = a;
        }
        m
    }

    pub fn diag(entries: &[Elt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &a) in entries.iter().enumerate() {
            m[(i, i)] = a;
        }
        m
    }

    /// `antidiag(a_1, ..., a_d)`: entry `a_i` in position `(i, d-1-i)`.
    pub fn antidiag(entries: &[Elt]) -> Self {
        let d = entries.len();
        let mut m = Self::zeros(d, d);
        for (i, &a) in entries.iter().enumerate() {
            m[(i, d - 1 - i)] = a;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("rows of unequal length".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// A single row vector.
    pub fn row_vector(v: &[Elt]) -> Self {
        Matrix {
            rows: 1,
            cols: v.len(),
            data: v.to_vec(),
        }
    }

    /// Permutation matrix sending basis vector `i` to `perm[i]`: row `i` is `e_{perm[i]}`.
    pub fn permutation(f: &FieldCtx, perm: &[usize]) -> Self {
        let d = perm.len();
        let mut m = Self::zeros(d, d);
        for (i, &p) in perm.iter().enumerate() {
            m[(i, p)] = f.one();
        }
        m
    }

    pub fn random(f: &FieldCtx, rows: usize, cols: usize, rng: &mut dyn RngCore) -> Self {
        Matrix {
            rows,
            cols,
            data: (0..rows * cols).map(|_| f.random_q(rng)).collect(),
        }
    }

    /// A uniformly random invertible matrix with entries in `F_q` (or `F_{q^2}` when `big`).
    pub fn random_invertible(f: &FieldCtx, d: usize, big: bool, rng: &mut dyn RngCore) -> Self {
        loop {
            let data = (0..d * d)
                .map(|_| if big { f.random(rng) } else { f.random_q(rng) })
                .collect();
            let m = Matrix { rows: d, cols: d, data };
            if !m.det(f).is_zero() {
                return m;
            }
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Elt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elt] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Elt] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Elt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_identity(&self, f: &FieldCtx) -> bool {
        self.is_square() && *self == Self::identity(f, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn map(&self, mut g: impl FnMut(Elt) -> Elt) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| g(a)).collect(),
        }
    }

    /// Entrywise Frobenius `x -> x^q`.
    pub fn frobenius(&self, f: &FieldCtx) -> Self {
        self.map(|a| f.frobenius(a))
    }

    pub fn neg(&self, f: &FieldCtx) -> Self {
        self.map(|a| f.neg(a))
    }

    pub fn scale(&self, f: &FieldCtx, s: Elt) -> Self {
        self.map(|a| f.mul(s, a))
    }

    pub fn add(&self, f: &FieldCtx, other: &Matrix) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn sub(&self, f: &FieldCtx, other: &Matrix) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Matrix { data, ..*self })
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, f: &FieldCtx, other: &Matrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = out.row_mut(i);
                for (o, &b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product of shape-compatible matrices; panics on mismatch.
    pub fn dot(&self, f: &FieldCtx, other: &Matrix) -> Self {
        self.mul(f, other).expect("shape mismatch")
    }

    pub fn pow(&self, f: &FieldCtx, mut e: u64) -> Self {
        let mut acc = Self::identity(f, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.dot(f, &base);
            }
            base = base.dot(f, &base);
            e >>= 1;
        }
        acc
    }

    /// Row-vector times matrix.
    pub fn apply(&self, f: &FieldCtx, v: &[Elt]) -> Vec<Elt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Elt::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(a, b));
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut m = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                m[(i - r0, j - c0)] = self[(i, j)];
            }
        }
        m
    }

    /// Leading `k x k` block.
    pub fn initial_block(&self, k: usize) -> Self {
        self.submatrix(0, k, 0, k)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    /// Block diagonal sum `self (+) other`.
    pub fn direct_sum(&self, other: &Matrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Reduced row echelon form `E = T A` with `T` invertible, and the rank.
    ///
    /// Pivots are chosen in the first nonzero column, from the topmost
    /// remaining row, and normalised to one.
    pub fn echelon(&self, f: &FieldCtx) -> (Matrix, Matrix, usize) {
        let mut e = self.clone();
        let mut t = Self::identity(f, self.rows);
        let rank = reduce(f, &mut e, Some(&mut t), None);
        (e, t, rank)
    }

    /// Column indices of the pivots of the echelon form.
    pub fn pivot_columns(&self, f: &FieldCtx) -> Vec<usize> {
        let mut e = self.clone();
        let mut piv = Vec::new();
        reduce(f, &mut e, None, Some(&mut piv));
        piv
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        let mut e = self.clone();
        reduce(f, &mut e, None, None)
    }

    pub fn det(&self, f: &FieldCtx) -> Elt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a[(i, col)].is_zero()) else {
                return Elt::ZERO;
            };
            if p != col {
                a.swap_rows(p, col);
                det = f.neg(det);
            }
            let piv = a[(col, col)];
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            for i in col + 1..n {
                let x = a[(i, col)];
                if x.is_zero() {
                    continue;
                }
                let factor = f.mul(x, inv);
                for j in col..n {
                    let v = f.sub(a[(i, j)], f.mul(factor, a[(col, j)]));
                    a[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &FieldCtx) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let (e, t, rank) = self.echelon(f);
        if rank < self.rows {
            return Err(Error::Singular);
        }
        debug_assert!(e.is_identity(f));
        Ok(t)
    }

    /// Basis (as rows, from the echelon form) of `{v : A v^T = 0}`.
    pub fn right_nullspace(&self, f: &FieldCtx) -> Matrix {
        let mut e = self.clone();
        let mut piv = Vec::new();
        reduce(f, &mut e, None, Some(&mut piv));
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = Self::zeros(free.len(), self.cols);
        for (r, &j) in free.iter().enumerate() {
            out[(r, j)] = f.one();
            for (i, &pc) in piv.iter().enumerate() {
                out[(r, pc)] = f.neg(e[(i, j)]);
            }
        }
        out
    }

    /// Basis (as rows) of `{v : v A = 0}`.
    pub fn left_nullspace(&self, f: &FieldCtx) -> Matrix {
        self.transpose().right_nullspace(f)
    }

    /// The form adjoint `X^*`.
    pub fn star(&self, f: &FieldCtx, kind: Adjoint) -> Self {
        match kind {
            Adjoint::Symplectic => self.transpose().neg(f),
            Adjoint::Unitary => self.transpose().frobenius(f),
            Adjoint::Orthogonal => self.transpose(),
        }
    }

    /// `X^dagger`: the transpose in the symplectic case, `X^*` otherwise.
    pub fn dagger(&self, f: &FieldCtx, kind: Adjoint) -> Self {
        match kind {
            Adjoint::Symplectic => self.transpose(),
            _ => self.star(f, kind),
        }
    }

    /// `S A S^dagger`.
    pub fn congruence(&self, f: &FieldCtx, s: &Matrix, kind: Adjoint) -> Self {
        s.dot(f, self).dot(f, &s.dagger(f, kind))
    }

    /// Folds the strictly lower part onto the upper part: the unique upper
    /// triangular matrix defining the same quadratic form.
    pub fn upper_triangularize(&self, f: &FieldCtx) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in 0..i {
                let v = f.add(m[(j, i)], m[(i, j)]);
                m[(j, i)] = v;
                m[(i, j)] = Elt::ZERO;
            }
        }
        m
    }
}

// Gauss-Jordan elimination in place; returns the rank.
fn reduce(f: &FieldCtx, a: &mut Matrix, mut t: Option<&mut Matrix>, mut piv: Option<&mut Vec<usize>>) -> usize {
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        if let Some(t) = t.as_deref_mut() {
            t.swap_rows(p, r);
        }
        let inv = f.inv(a[(r, col)]);
        scale_row(f, a, r, inv);
        if let Some(t) = t.as_deref_mut() {
            scale_row(f, t, r, inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let x = a[(i, col)];
            if x.is_zero() {
                continue;
            }
            let nx = f.neg(x);
            add_row_multiple(f, a, i, r, nx);
            if let Some(t) = t.as_deref_mut() {
                add_row_multiple(f, t, i, r, nx);
            }
        }
        if let Some(p) = piv.as_deref_mut() {
            p.push(col);
        }
        r += 1;
    }
    r
}

fn scale_row(f: &FieldCtx, m: &mut Matrix, r: usize, s: Elt) {
    for x in m.row_mut(r) {
        *x = f.mul(*x, s);
    }
}

// row[dst] += s * row[src]
fn add_row_multiple(f: &FieldCtx, m: &mut Matrix, dst: usize, src: usize, s: Elt) {
    let c = m.cols;
    for j in 0..c {
        let v = m.data[src * c + j];
        if !v.is_zero() {
            m.data[dst * c + j] = f.add(m.data[dst * c + j], f.mul(s, v));
        }
    }
}
