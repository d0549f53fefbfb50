use rand::RngCore;

use super::{quad_eval, Form, FormKind};
use crate::error::{Error, Result};
use crate::ff::{Elt, FieldCtx};
use crate::la::{Adjoint, Matrix};

fn unit(f: &FieldCtx, d: usize, i: usize) -> Vec<Elt> {
    let mut v = vec![Elt::ZERO; d];
    v[i] = f.one();
    v
}

fn first_offdiagonal(m: &Matrix) -> Option<(usize, usize)> {
    let d = m.rows();
    (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .find(|&(i, j)| !m[(i, j)].is_zero())
}

/// A canonical `v` with `Q(v) != 0`, where `m` is the upper triangular matrix of `Q`.
///
/// Takes `v_i` for the first nonzero diagonal entry, otherwise `v_i + v_j` for
/// the lexicographically first nonzero `m_ij`.
pub fn nonsingular_vector(f: &FieldCtx, m: &Matrix) -> Result<Vec<Elt>> {
    let d = m.rows();
    if let Some(i) = (0..d).find(|&i| !m[(i, i)].is_zero()) {
        return Ok(unit(f, d, i));
    }
    let (i, j) = first_offdiagonal(m).ok_or(Error::ZeroForm)?;
    let mut v = unit(f, d, i);
    v[j] = f.one();
    Ok(v)
}

/// A canonical `w` with `w A w^{*} != 0` for a hermitian or (odd
/// characteristic) symmetric matrix `A`.
///
/// For unitary forms `v_i + zeta v_j` is tried first; when that vector happens
/// to be isotropic, `v_i + v_j` is used instead (one of the two always works).
pub fn anisotropic_vector(f: &FieldCtx, a: &Matrix, kind: Adjoint) -> Result<Vec<Elt>> {
    let d = a.rows();
    if let Some(i) = (0..d).find(|&i| !a[(i, i)].is_zero()) {
        return Ok(unit(f, d, i));
    }
    if kind == Adjoint::Symplectic || (kind == Adjoint::Orthogonal && !f.is_odd()) {
        return Err(Error::OddCharRequired);
    }
    let (i, j) = first_offdiagonal(a).ok_or(Error::ZeroForm)?;
    let mut v = unit(f, d, i);
    if kind == Adjoint::Unitary {
        v[j] = f.zeta();
        if !sesqui(f, a, &v).is_zero() {
            return Ok(v);
        }
    }
    v[j] = f.one();
    debug_assert!(!sesqui(f, a, &v).is_zero());
    Ok(v)
}

// v A v^{sigma T}
fn sesqui(f: &FieldCtx, a: &Matrix, v: &[Elt]) -> Elt {
    let av = a.apply(f, v);
    av.iter()
        .zip(v)
        .fold(Elt::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, f.frobenius(y))))
}

/// Canonical nonsingular `(u_1, u_2)` with `Q(u_1)` a square and `Q(u_2)` a
/// nonsquare, for a nondegenerate quadratic form in odd characteristic with `d >= 2`.
pub fn square_nonsquare_pair(f: &FieldCtx, form: &Form, rng: &mut dyn RngCore) -> Result<(Vec<Elt>, Vec<Elt>)> {
    if form.kind() != FormKind::Quadratic {
        return Err(Error::KindMismatch);
    }
    if !f.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    if form.dim() < 2 {
        return Err(Error::IncompatibleDimension {
            label: "quadratic".into(),
            d: form.dim(),
        });
    }
    let m = form.quad().unwrap();
    let v1 = nonsingular_vector(f, m)?;
    // v1^perp as the left nullspace of the column F v1^T
    let col = form.gram().dot(f, &Matrix::row_vector(&v1).transpose());
    let perp = col.left_nullspace(f);
    let restricted = m.congruence(f, &perp, Adjoint::Orthogonal).upper_triangularize(f);
    let c = nonsingular_vector(f, &restricted).map_err(|_| Error::Degenerate)?;
    let v2 = perp.apply(f, &c);
    let q1 = quad_eval(f, m, &v1);
    let q2 = quad_eval(f, m, &v2);
    let (i1, i2) = (f.iota(q1)?, f.iota(q2)?);
    if i1 != i2 {
        return Ok(if i1 == 0 { (v1, v2) } else { (v2, v1) });
    }
    let nu = f.nu()?;
    let t = f.mul(nu, f.canonical_sqrt(f.div(q1, q2), rng));
    let w: Vec<Elt> = v1.iter().zip(&v2).map(|(&a, &b)| f.add(a, f.mul(t, b))).collect();
    Ok(if i1 == 0 { (v1, w) } else { (w, v1) })
}
