//! Canonical diagonalisation of symmetric, hermitian and alternating matrices.
//!
//! The recursion follows the classical block scheme: row echelon form splits
//! off the radical, a congruence makes a leading block invertible, and a Schur
//! complement step separates it from the rest.

use super::vectors::anisotropic_vector;
use crate::error::{Error, Result};
use crate::ff::FieldCtx;
use crate::la::{Adjoint, Matrix};

/// Returns an invertible `S` such that `S A S^dagger` is diagonal, or block
/// diagonal with `2 x 2` blocks (and trailing zero `1 x 1` blocks) in the
/// symplectic case. `A` may be degenerate; its radical ends up in the last rows.
pub fn diagonalize(f: &FieldCtx, a: &Matrix, kind: Adjoint) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("diagonalize needs a square matrix".into()));
    }
    if kind == Adjoint::Orthogonal && !f.is_odd() {
        return Err(Error::OddCharRequired);
    }
    let d = a.rows();
    if a.star(f, kind) != *a || (kind == Adjoint::Symplectic && (0..d).any(|i| !a[(i, i)].is_zero())) {
        return Err(Error::SymmetryViolation);
    }
    Ok(Diag { f, kind }.full(a))
}

struct Diag<'a> {
    f: &'a FieldCtx,
    kind: Adjoint,
}

impl Diag<'_> {
    fn cong(&self, a: &Matrix, s: &Matrix) -> Matrix {
        a.congruence(self.f, s, self.kind)
    }

    fn id(&self, n: usize) -> Matrix {
        Matrix::identity(self.f, n)
    }

    fn symplectic(&self) -> bool {
        self.kind == Adjoint::Symplectic
    }

    fn full(&self, a: &Matrix) -> Matrix {
        let d = a.rows();
        if a.is_zero() {
            return self.id(d);
        }
        let (s1, r) = self.radical_split(a);
        let a1 = self.cong(a, &s1).initial_block(r);
        let inner = self.invertible(&a1);
        inner.direct_sum(&self.id(d - r)).dot(self.f, &s1)
    }

    // S with S A S^dagger = A_1 (+) 0 and A_1 invertible of size r
    fn radical_split(&self, a: &Matrix) -> (Matrix, usize) {
        let (_, t, r) = a.echelon(self.f);
        (t, r)
    }

    fn invertible(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        if n == 1 || (self.symplectic() && n == 2) {
            return self.id(n);
        }
        let k = if self.symplectic() { 2 * (n / 4) } else { n / 2 };
        let s2 = self.initial_invertible(a, k);
        let a2 = self.cong(a, &s2);
        let s3 = self.schur(&a2, k, 0);
        let a3 = self.cong(&a2, &s3);
        let b1 = a3.submatrix(0, k, 0, k);
        let c1 = a3.submatrix(k, n, k, n);
        let sb = self.invertible(&b1);
        let sc = self.invertible(&c1);
        sb.direct_sum(&sc).dot(self.f, &s3).dot(self.f, &s2)
    }

    // Schur complement step: clears the block below the invertible leading k x k
    // block, below an s-row band of zeros.
    fn schur(&self, a: &Matrix, k: usize, s: usize) -> Matrix {
        let n = a.rows();
        let f = self.f;
        let a1_inv = a.initial_block(k).inverse(f).expect("leading block is invertible");
        let lower = a.submatrix(k + s, n, 0, k);
        let block = lower.dot(f, &a1_inv).neg(f);
        let mut s3 = self.id(n);
        s3.set_block(k + s, 0, &block);
        s3
    }

    // S with the initial l-block of S A S^dagger invertible, for invertible A.
    fn initial_invertible(&self, a: &Matrix, l: usize) -> Matrix {
        let f = self.f;
        let n = a.rows();
        let s1 = self.make_block_nonzero(a, l);
        let b = self.cong(a, &s1);
        let b1 = b.initial_block(l);
        if !b1.det(f).is_zero() {
            return s1;
        }
        // U B_1 U^dagger = C_1 (+) 0
        let (u, k) = self.radical_split(&b1);
        let s2 = u.direct_sum(&self.id(n - l));
        let c = self.cong(&b, &s2);
        let s3 = if k > 0 { self.schur(&c, k, l - k) } else { self.id(n) };
        let dmat = self.cong(&c, &s3);
        // D_1 has full row rank; move its pivot columns to the front
        let d1 = dmat.submatrix(k, l, l, n);
        let piv = d1.pivot_columns(f);
        let mut order = piv.clone();
        order.extend((0..n - l).filter(|c| !piv.contains(c)));
        let mut p = Matrix::zeros(n - l, n - l);
        for (j, &src) in order.iter().enumerate() {
            p[(src, j)] = f.one();
        }
        let s4 = self.id(l).direct_sum(&p.dagger(f, self.kind));
        let e = self.cong(&dmat, &s4);
        let h = l - k;
        let sub = e.submatrix(k, k + 2 * h, k, k + 2 * h);
        let m = self.unblock_corner(&sub);
        let s5 = self.id(k).direct_sum(&m).direct_sum(&self.id(n - k - 2 * h));
        s5.dot(f, &s4).dot(f, &s3).dot(f, &s2).dot(f, &s1)
    }

    // A permutation, or a basis change bringing in an anisotropic vector, so
    // that the initial l-block is not identically zero.
    fn make_block_nonzero(&self, a: &Matrix, l: usize) -> Matrix {
        let f = self.f;
        let n = a.rows();
        if l > 1 {
            if !a.initial_block(l).is_zero() {
                return self.id(n);
            }
            let (i, j) = (0..n)
                .flat_map(|i| (i..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_zero())
                .expect("invertible matrix is nonzero");
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(0, i);
            if i != j {
                perm.swap(1, j);
            }
            return Matrix::permutation(f, &perm);
        }
        if !a[(0, 0)].is_zero() {
            return self.id(n);
        }
        let v = anisotropic_vector(f, a, self.kind).expect("nonzero hermitian or symmetric matrix");
        let i = v.iter().position(|x| !x.is_zero()).unwrap();
        let mut s = Matrix::zeros(n, n);
        s.row_mut(0).copy_from_slice(&v);
        for (r, c) in (1..n).zip((0..n).filter(|&c| c != i)) {
            s[(r, c)] = f.one();
        }
        s
    }

    // For A = [[0, A_1], [A_1^*, A_2]] with A_1 invertible of size h, an S making
    // the initial h-block of S A S^dagger invertible.
    fn unblock_corner(&self, a: &Matrix) -> Matrix {
        let f = self.f;
        let n = a.rows();
        let h = n / 2;
        let a1 = a.submatrix(0, h, h, n);
        let a2 = a.submatrix(h, n, h, n);
        let (u, kp) = self.radical_split(&a2);
        let top = a1.dot(f, &u.dagger(f, self.kind)).inverse(f).expect("A_1 is invertible");
        let s1 = top.direct_sum(&u);
        // basis e_0..e_{h-1}, f_0..f_{h-1}
        let e = |i: usize| i;
        let fv = |i: usize| h + i;
        let mut rows: Vec<Vec<(usize, crate::ff::Elt)>> = Vec::with_capacity(n);
        let one = f.one();
        if self.symplectic() {
            for i in 0..kp {
                rows.push(vec![(fv(i), one)]);
            }
            for i in (kp..h).step_by(2) {
                rows.push(vec![(e(i), one)]);
                rows.push(vec![(fv(i), one)]);
            }
            for i in 0..kp {
                rows.push(vec![(e(i), one)]);
            }
            for i in (kp..h).step_by(2) {
                rows.push(vec![(e(i + 1), one)]);
                rows.push(vec![(fv(i + 1), one)]);
            }
        } else {
            let t = match self.kind {
                Adjoint::Unitary => f.solve_trace(one).expect("nonzero"),
                _ => f.inv(f.from_int(2)),
            };
            for i in 0..kp {
                rows.push(vec![(fv(i), one)]);
            }
            for i in kp..h {
                rows.push(vec![(e(i), one), (fv(i), t)]);
            }
            for i in 0..kp {
                rows.push(vec![(e(i), one)]);
            }
            for i in kp..h {
                rows.push(vec![(fv(i), one)]);
            }
        }
        let mut s2 = Matrix::zeros(n, n);
        for (r, entries) in rows.iter().enumerate() {
            for &(c, x) in entries {
                s2[(r, c)] = x;
            }
        }
        s2.dot(f, &s1)
    }
}
