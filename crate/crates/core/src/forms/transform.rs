//! Canonical forms and canonical transformations onto them.
//!
//! Every nondegenerate form is first reduced to a fixed normal form `N` that
//! depends only on its type (`Z F Z^dagger = lambda N`). Composing with the
//! inverse reduction of the canonical form of the same type gives the
//! transformation `X` with `X F X^dagger = lambda F_can`.

use rand::RngCore;

use super::diag::diagonalize;
use super::{quad_eval, Form, FormKind, Label};
use crate::error::{Error, Result};
use crate::ff::{Elt, FieldCtx};
use crate::la::{Adjoint, Matrix};

/// Classification of a nondegenerate form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormType {
    pub label: Label,
    pub d: usize,
    /// Number of hyperbolic pairs in the canonical basis.
    pub m: usize,
    /// Similarity scalar: `X F X^dagger = lambda F_can`. Always `1` or `xi`,
    /// and different from `1` only for odd-dimensional quadratic forms in odd
    /// characteristic.
    pub lambda: Elt,
    /// Discriminant `iota(det F)` (quadratic forms, odd characteristic).
    pub disc: Option<u8>,
}

/// The canonical form of the given type and dimension.
pub fn canonical_form(f: &FieldCtx, label: Label, d: usize) -> Result<Form> {
    if !label.allows(d) {
        return Err(Error::IncompatibleDimension {
            label: label.to_string(),
            d,
        });
    }
    let one = f.one();
    let m = label.witt_index(d);
    match label {
        Label::Sp => {
            let mut g = Matrix::zeros(d, d);
            for i in 0..m {
                g[(i, d - 1 - i)] = one;
                g[(d - 1 - i, i)] = f.neg(one);
            }
            Form::symplectic(f, g)
        }
        Label::U => Form::unitary(f, Matrix::antidiag(&vec![one; d])),
        _ => {
            let mut q = Matrix::zeros(d, d);
            for i in 0..m {
                q[(i, d - 1 - i)] = one;
            }
            match label {
                Label::OCirc => q[(m, m)] = one,
                Label::OMinus => {
                    q[(m, m)] = one;
                    q[(m, m + 1)] = one;
                    q[(m + 1, m + 1)] = f.gamma();
                }
                _ => {}
            }
            Form::quadratic(f, q)
        }
    }
}

struct Reduced {
    z: Matrix,
    lambda: Elt,
    label: Label,
}

/// Returns `X` and the type of `form`, with `X F X^dagger = lambda F_can` (and
/// matching quadratic matrices after upper triangularisation).
///
/// The result does not depend on `rng`.
pub fn transform_to_canonical(f: &FieldCtx, form: &Form, rng: &mut dyn RngCore) -> Result<(Matrix, FormType)> {
    let red = reduce(f, form, rng)?;
    let d = form.dim();
    let canon = canonical_form(f, red.label, d)?;
    let cred = reduce(f, &canon, rng)?;
    debug_assert_eq!(cred.label, red.label);
    let mut x = cred.z.inverse(f)?.dot(f, &red.z);
    let mut lambda = f.one();
    if red.label == Label::OCirc && f.is_odd() {
        let ratio = f.div(red.lambda, cred.lambda);
        if f.iota(ratio)? == 1 {
            lambda = f.xi();
        }
        let s = f.canonical_sqrt(f.div(lambda, ratio), rng);
        x = x.scale(f, s);
    }
    let disc = (form.kind() == FormKind::Quadratic && f.is_odd()).then(|| {
        f.iota(form.gram().det(f)).expect("nondegenerate")
    });
    let ty = FormType {
        label: red.label,
        d,
        m: red.label.witt_index(d),
        lambda,
        disc,
    };
    debug_assert!(verify(f, form, &x, &ty));
    Ok((x, ty))
}

/// Checks `X F X^dagger = lambda F_can` (and the quadratic matrices).
pub(crate) fn verify(f: &FieldCtx, form: &Form, x: &Matrix, ty: &FormType) -> bool {
    let Ok(canon) = canonical_form(f, ty.label, ty.d) else {
        return false;
    };
    form.transformed(f, x) == canon.scaled(f, ty.lambda)
}

impl FormType {
    /// Whether `x` transforms `form` to the canonical form of this type.
    pub fn verifies(&self, f: &FieldCtx, form: &Form, x: &Matrix) -> bool {
        verify(f, form, x, self)
    }
}

/// A canonical `T` with `T F_1 T^dagger = F_2` (and `Q_1(vT) = Q_2(v)`).
pub fn isometry(f: &FieldCtx, a: &Form, b: &Form, rng: &mut dyn RngCore) -> Result<Matrix> {
    if a.kind() != b.kind() {
        return Err(Error::KindMismatch);
    }
    if a.dim() != b.dim() {
        return Err(Error::NotIsometric { similar: false });
    }
    let (x1, t1) = transform_to_canonical(f, a, rng)?;
    let (x2, t2) = transform_to_canonical(f, b, rng)?;
    if t1.label != t2.label {
        return Err(Error::NotIsometric { similar: false });
    }
    if t1.lambda != t2.lambda {
        return Err(Error::NotIsometric { similar: true });
    }
    Ok(x2.inverse(f)?.dot(f, &x1))
}

fn reduce(f: &FieldCtx, form: &Form, rng: &mut dyn RngCore) -> Result<Reduced> {
    if !form.is_nondegenerate(f) {
        return Err(Error::Degenerate);
    }
    match form.kind() {
        FormKind::Symplectic => reduce_symplectic(f, form),
        FormKind::Unitary => reduce_unitary(f, form, rng),
        FormKind::Quadratic if f.is_odd() => reduce_orthogonal_odd(f, form, rng),
        FormKind::Quadratic => reduce_orthogonal_even(f, form, rng),
    }
}

fn scale_row(f: &FieldCtx, z: &mut Matrix, i: usize, s: Elt) {
    for x in z.row_mut(i) {
        *x = f.mul(*x, s);
    }
}

// normal form: blocks [[0, 1], [-1, 0]]
fn reduce_symplectic(f: &FieldCtx, form: &Form) -> Result<Reduced> {
    let g = form.gram();
    let mut z = diagonalize(f, g, Adjoint::Symplectic)?;
    let dmat = g.congruence(f, &z, Adjoint::Symplectic);
    for i in (0..form.dim()).step_by(2) {
        let a = dmat[(i, i + 1)];
        scale_row(f, &mut z, i, f.try_inv(a).map_err(|_| Error::Degenerate)?);
    }
    Ok(Reduced {
        z,
        lambda: f.one(),
        label: Label::Sp,
    })
}

// normal form: identity
fn reduce_unitary(f: &FieldCtx, form: &Form, rng: &mut dyn RngCore) -> Result<Reduced> {
    let g = form.gram();
    let mut z = diagonalize(f, g, Adjoint::Unitary)?;
    let dmat = g.congruence(f, &z, Adjoint::Unitary);
    for i in 0..form.dim() {
        let a = f.try_inv(dmat[(i, i)]).map_err(|_| Error::Degenerate)?;
        let alpha = f.solve_norm(a, rng)?;
        scale_row(f, &mut z, i, alpha);
    }
    Ok(Reduced {
        z,
        lambda: f.one(),
        label: Label::U,
    })
}

// normal form of the polar form: identity, or diag(xi, 1, ..., 1)
fn reduce_orthogonal_odd(f: &FieldCtx, form: &Form, rng: &mut dyn RngCore) -> Result<Reduced> {
    let g = form.gram();
    let d = form.dim();
    let s = diagonalize(f, g, Adjoint::Orthogonal)?;
    let dmat = g.congruence(f, &s, Adjoint::Orthogonal);
    let mut vals: Vec<Elt> = (0..d).map(|i| dmat[(i, i)]).collect();
    if vals.iter().any(|v| v.is_zero()) {
        return Err(Error::Degenerate);
    }
    let det = vals.iter().fold(f.one(), |acc, &v| f.mul(acc, v));
    let mut lambda = f.one();
    if d % 2 == 1 && f.iota(det)? == 1 {
        lambda = *vals.iter().find(|&&v| f.iota(v).unwrap() == 1).unwrap();
        let inv = f.inv(lambda);
        for v in vals.iter_mut() {
            *v = f.mul(*v, inv);
        }
    }
    let mut rows: Vec<Vec<Elt>> = s.to_rows();
    let scale = |row: &mut Vec<Elt>, t: Elt| {
        for x in row.iter_mut() {
            *x = f.mul(*x, t);
        }
    };
    let mu = vals.iter().copied().find(|&v| f.iota(v).unwrap() == 1);
    let mut nonsquare = Vec::new();
    for i in 0..d {
        if f.iota(vals[i])? == 0 {
            let r = f.canonical_sqrt(vals[i], rng);
            scale(&mut rows[i], f.inv(r));
        } else {
            let mu = mu.unwrap();
            scale(&mut rows[i], f.canonical_sqrt(f.div(mu, vals[i]), rng));
            nonsquare.push(i);
        }
    }
    if let Some(mu) = mu {
        let nu = f.nu()?;
        let fix = f.inv(f.canonical_sqrt(f.mul(mu, f.add(f.one(), f.mul(nu, nu))), rng));
        for pair in nonsquare.chunks_exact(2) {
            let (i, j) = (pair[0], pair[1]);
            let ri = rows[i].clone();
            let rj = rows[j].clone();
            rows[i] = ri.iter().zip(&rj).map(|(&a, &b)| f.mul(fix, f.add(a, f.mul(nu, b)))).collect();
            rows[j] = ri.iter().zip(&rj).map(|(&a, &b)| f.mul(fix, f.sub(b, f.mul(nu, a)))).collect();
        }
        if nonsquare.len() % 2 == 1 {
            let i = *nonsquare.last().unwrap();
            let mut r = rows.remove(i);
            scale(&mut r, f.canonical_sqrt(f.div(f.xi(), mu), rng));
            rows.insert(0, r);
        }
    }
    let leftover = nonsquare.len() % 2 == 1;
    let label = if d % 2 == 1 {
        Label::OCirc
    } else {
        let m = (d / 2) as i64;
        let sign = f.iota(f.from_int(if m % 2 == 0 { 1 } else { -1 }))?;
        if u8::from(leftover) == sign {
            Label::OPlus
        } else {
            Label::OMinus
        }
    };
    Ok(Reduced {
        z: Matrix::from_rows(rows)?,
        lambda,
        label,
    })
}

enum Pair {
    Hyperbolic(Vec<Elt>, Vec<Elt>),
    // basis with Q = 1 on both vectors and polar value a
    Anisotropic(Vec<Elt>, Vec<Elt>, Elt),
}

struct EvenCtx<'a> {
    f: &'a FieldCtx,
    form: &'a Form,
}

impl EvenCtx<'_> {
    fn q(&self, v: &[Elt]) -> Elt {
        quad_eval(self.f, self.form.quad().unwrap(), v)
    }

    fn b(&self, u: &[Elt], v: &[Elt]) -> Elt {
        self.form.beta(self.f, u, v).unwrap()
    }

    fn comb(&self, a: Elt, u: &[Elt], b: Elt, v: &[Elt]) -> Vec<Elt> {
        let f = self.f;
        u.iter().zip(v).map(|(&x, &y)| f.add(f.mul(a, x), f.mul(b, y))).collect()
    }

    fn scaled(&self, a: Elt, u: &[Elt]) -> Vec<Elt> {
        u.iter().map(|&x| self.f.mul(a, x)).collect()
    }

    // normalise a 2-dimensional nondegenerate block with basis u, w
    fn normalise(&self, u: Vec<Elt>, w: Vec<Elt>, rng: &mut dyn RngCore) -> Pair {
        let f = self.f;
        let one = f.one();
        let (c1, c2, a) = (self.q(&u), self.q(&w), self.b(&u, &w));
        if c1.is_zero() && c2.is_zero() {
            let w = self.scaled(f.inv(a), &w);
            return Pair::Hyperbolic(u, w);
        }
        if c1.is_zero() {
            let w = self.comb(one, &w, f.div(c2, a), &u);
            let w = self.scaled(f.inv(a), &w);
            return Pair::Hyperbolic(u, w);
        }
        if c2.is_zero() {
            let u = self.comb(one, &u, f.div(c1, a), &w);
            let w = self.scaled(f.inv(a), &w);
            return Pair::Hyperbolic(u, w);
        }
        let s1 = f.canonical_sqrt(c1, rng);
        let s2 = f.canonical_sqrt(c2, rng);
        let u = self.scaled(f.inv(s1), &u);
        let w = self.scaled(f.inv(s2), &w);
        Pair::Anisotropic(u, w, f.div(a, f.mul(s1, s2)))
    }
}

// normal form of M: copies of [[0, 1], [0, 0]], then (1) or [[1, 1], [0, gamma]]
fn reduce_orthogonal_even(f: &FieldCtx, form: &Form, rng: &mut dyn RngCore) -> Result<Reduced> {
    let d = form.dim();
    let g = form.gram();
    let s = diagonalize(f, g, Adjoint::Symplectic)?;
    let dmat = g.congruence(f, &s, Adjoint::Symplectic);
    let rows = s.to_rows();
    let cx = EvenCtx { f, form };
    let mut blocks = Vec::new();
    let mut radical = Vec::new();
    let mut i = 0;
    while i < d {
        if i + 1 < d && !dmat[(i, i + 1)].is_zero() {
            blocks.push((rows[i].clone(), rows[i + 1].clone()));
            i += 2;
        } else {
            radical.push(rows[i].clone());
            i += 1;
        }
    }
    if radical.len() != d % 2 {
        return Err(Error::Degenerate);
    }
    let one = f.one();
    let mut out: Vec<Vec<Elt>> = Vec::with_capacity(d);
    let label;
    if let Some(r) = radical.pop() {
        let qr = cx.q(&r);
        if qr.is_zero() {
            return Err(Error::Degenerate);
        }
        let r = cx.scaled(f.inv(f.canonical_sqrt(qr, rng)), &r);
        for (u, w) in blocks {
            let a = cx.b(&u, &w);
            let u = cx.comb(one, &u, f.canonical_sqrt(cx.q(&u), rng), &r);
            let w = cx.comb(one, &w, f.canonical_sqrt(cx.q(&w), rng), &r);
            out.push(u);
            out.push(cx.scaled(f.inv(a), &w));
        }
        out.push(r);
        label = Label::OCirc;
    } else {
        let mut special: Option<(Vec<Elt>, Vec<Elt>, Elt)> = None;
        for (u, w) in blocks {
            let mut next = Some(cx.normalise(u, w, rng));
            while let Some(p) = next.take() {
                match p {
                    Pair::Hyperbolic(u, w) => {
                        out.push(u);
                        out.push(w);
                    }
                    Pair::Anisotropic(u3, u4, b) => match special.take() {
                        None => special = Some((u3, u4, b)),
                        Some((u1, u2, a)) => {
                            // u1+u3, (u1+u4)/b, u1, b u2 + a (u3 + u4)
                            let h1 = cx.comb(one, &u1, one, &u3);
                            let h2 = cx.scaled(f.inv(b), &cx.comb(one, &u1, one, &u4));
                            out.push(h1);
                            out.push(h2);
                            let u34 = cx.comb(one, &u3, one, &u4);
                            let w = cx.comb(b, &u2, a, &u34);
                            next = Some(cx.normalise(u1, w, rng));
                        }
                    },
                }
            }
        }
        match special {
            None => label = Label::OPlus,
            Some((u1, u2, a)) => {
                let t = f.inv(f.mul(a, a));
                if let Some(z) = f.artin_schreier_root(t) {
                    let w1 = cx.comb(f.mul(a, z), &u1, one, &u2);
                    let w2 = cx.comb(f.mul(a, f.add(z, one)), &u1, one, &u2);
                    out.push(w1);
                    out.push(cx.scaled(t, &w2));
                    label = Label::OPlus;
                } else {
                    let shift = f.artin_schreier_root(f.add(t, f.gamma())).expect("same Arf invariant as gamma");
                    let w = cx.comb(shift, &u1, f.inv(a), &u2);
                    out.push(u1);
                    out.push(w);
                    label = Label::OMinus;
                }
            }
        }
    }
    Ok(Reduced {
        z: Matrix::from_rows(out)?,
        lambda: one,
        label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let sp = canonical_form(&f5, Label::Sp, 2).unwrap();
        assert_eq!(*sp.gram(), Matrix::antidiag(&[f5.one(), f5.from_int(-1)]));
        let f3 = FieldCtx::new(3, 1).unwrap();
        let om = canonical_form(&f3, Label::OMinus, 2).unwrap();
        let m = om.quad().unwrap();
        assert_eq!((m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]), (f3.one(), f3.one(), Elt::ZERO, f3.gamma()));
        assert!(matches!(
            canonical_form(&f3, Label::OPlus, 3),
            Err(Error::IncompatibleDimension { .. })
        ));
    }

    #[test]
    fn canonical_forms_map_to_themselves() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for &(p, k) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1), (3, 2)] {
            let f = FieldCtx::new(p, k).unwrap();
            for d in 1..9 {
                for label in [Label::Sp, Label::U, Label::OCirc, Label::OPlus, Label::OMinus] {
                    let Ok(c) = canonical_form(&f, label, d) else { continue };
                    let (x, ty) = transform_to_canonical(&f, &c, &mut rng).unwrap();
                    assert_eq!(ty.label, label, "{label} d={d} q={}", f.q());
                    assert!(ty.verifies(&f, &c, &x));
                }
            }
        }
    }

    #[test]
    fn scaled_symplectic_block() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let g = Matrix::antidiag(&[f5.from_int(2), f5.from_int(-2)]);
        let form = Form::symplectic(&f5, g).unwrap();
        let (x, ty) = transform_to_canonical(&f5, &form, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(ty.label, Label::Sp);
        let img = form.transformed(&f5, &x);
        assert_eq!(*img.gram(), Matrix::antidiag(&[f5.one(), f5.from_int(-1)]));
    }
}
