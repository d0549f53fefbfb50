//! Brute-force oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::HashSet;

use clgrp::{Elt, FieldCtx, Form, FormKind, Matrix};

/// Every vector of length `d` over the given element list.
pub fn all_vectors(els: &[Elt], d: usize) -> Vec<Vec<Elt>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Elt>| {
                els.iter().map(move |&e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// `GL_d(q)` by exhaustion.
pub fn general_linear(f: &FieldCtx, d: usize) -> Vec<Matrix> {
    let vecs = all_vectors(&f.subfield_elements(), d);
    let mut out = Vec::new();
    let mut rows: Vec<Vec<Elt>> = Vec::new();
    fn rec(f: &FieldCtx, d: usize, vecs: &[Vec<Elt>], rows: &mut Vec<Vec<Elt>>, out: &mut Vec<Matrix>) {
        if rows.len() == d {
            let m = Matrix::from_rows(rows.clone()).unwrap();
            if !m.det(f).is_zero() {
                out.push(m);
            }
            return;
        }
        for v in vecs {
            rows.push(v.clone());
            let partial = Matrix::from_rows(rows.clone()).unwrap();
            if partial.rank(f) == rows.len() {
                rec(f, d, vecs, rows, out);
            }
            rows.pop();
        }
    }
    rec(f, d, &vecs, &mut rows, &mut out);
    out
}

/// All similarities of `form`, found row by row: row `i` of `g` must satisfy
/// `beta(g_i, g_j) = tau F_ij` for `j <= i` (and `Q(g_i) = tau M_ii`).
pub fn similarities(f: &FieldCtx, form: &Form) -> Vec<(Matrix, Elt)> {
    let d = form.dim();
    let els = if form.kind() == FormKind::Unitary {
        f.all_elements()
    } else {
        f.subfield_elements()
    };
    let vecs = all_vectors(&els, d);
    let mut out = Vec::new();
    for tau in f.subfield_elements().into_iter().filter(|t| !t.is_zero()) {
        let mut rows = Vec::new();
        search(f, form, tau, &vecs, &mut rows, &mut out);
    }
    out
}

fn search(f: &FieldCtx, form: &Form, tau: Elt, vecs: &[Vec<Elt>], rows: &mut Vec<Vec<Elt>>, out: &mut Vec<(Matrix, Elt)>) {
    let d = form.dim();
    let i = rows.len();
    if i == d {
        out.push((Matrix::from_rows(rows.clone()).unwrap(), tau));
        return;
    }
    let fm = form.gram();
    for v in vecs {
        if let Some(m) = form.quad() {
            if form.q_value(f, v).unwrap() != f.mul(tau, m[(i, i)]) {
                continue;
            }
        } else if form.beta(f, v, v).unwrap() != f.mul(tau, fm[(i, i)]) {
            continue;
        }
        let ok = (0..i).all(|j| form.beta(f, v, &rows[j]).unwrap() == f.mul(tau, fm[(i, j)]));
        if ok {
            rows.push(v.clone());
            search(f, form, tau, vecs, rows, out);
            rows.pop();
        }
    }
}

/// The closure of `gens` under multiplication.
pub fn closure(f: &FieldCtx, d: usize, gens: &[Matrix]) -> HashSet<Matrix> {
    let id = Matrix::identity(f, d);
    let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.dot(f, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// `Omega` of an orthogonal group in odd characteristic: generated by the
/// products `refl_u refl_v` with `Q(u) Q(v)` a nonzero square.
pub fn omega_from_reflections(f: &FieldCtx, form: &Form) -> HashSet<Matrix> {
    let d = form.dim();
    let vecs: Vec<Vec<Elt>> = all_vectors(&f.subfield_elements(), d)
        .into_iter()
        .filter(|v| !form.q_value(f, v).unwrap().is_zero())
        .collect();
    let refl = |v: &[Elt]| clgrp::groups::reflection(f, v, form).unwrap();
    let mut gens = Vec::new();
    for u in &vecs {
        for v in &vecs {
            let s = f.mul(form.q_value(f, u).unwrap(), form.q_value(f, v).unwrap());
            if f.iota(s).unwrap() == 0 {
                gens.push(refl(u).dot(f, &refl(v)));
            }
        }
    }
    let gens: Vec<Matrix> = gens.into_iter().collect::<HashSet<_>>().into_iter().collect();
    closure(f, d, &gens)
}
