//! Classical groups `Omega <= I <= Delta` attached to a form: the similarity
//! factor, spinor norm, reflections, membership and element sampling.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rand::RngCore;

use crate::error::{Error, Result};
use crate::ff::{Elt, FieldCtx};
use crate::forms::{
    canonical_form, nonsingular_vector, square_nonsquare_pair, transform_to_canonical, Form, FormKind, FormType,
    Label,
};
use crate::la::Matrix;

/// The quasisimple group `Omega`, up to the choice of form.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    SL,
    Sp,
    SU,
    /// Odd dimension, odd characteristic.
    OCirc,
    /// Plus type, odd characteristic.
    OPlus,
    /// Minus type, odd characteristic.
    OMinus,
    /// Even dimension, even characteristic; the sign is carried by the form.
    OEven,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::SL,
        Family::Sp,
        Family::SU,
        Family::OCirc,
        Family::OPlus,
        Family::OMinus,
        Family::OEven,
    ];

    pub fn is_orthogonal(self) -> bool {
        matches!(self, Family::OCirc | Family::OPlus | Family::OMinus | Family::OEven)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::SL => "SL",
            Family::Sp => "Sp",
            Family::SU => "SU",
            Family::OCirc => "O",
            Family::OPlus => "O+",
            Family::OMinus => "O-",
            Family::OEven => "Oeven",
        }
    }

    /// The family of `Omega` preserving a form of the given type.
    pub fn of_label(label: Label, odd_q: bool) -> Family {
        match label {
            Label::Sp => Family::Sp,
            Label::U => Family::SU,
            Label::OCirc => Family::OCirc,
            _ if !odd_q => Family::OEven,
            Label::OPlus => Family::OPlus,
            Label::OMinus => Family::OMinus,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "SL" | "sl" => Ok(Family::SL),
            "Sp" | "sp" => Ok(Family::Sp),
            "SU" | "su" => Ok(Family::SU),
            "O" | "O0" | "Oo" | "O∘" => Ok(Family::OCirc),
            "O+" => Ok(Family::OPlus),
            "O-" | "O−" => Ok(Family::OMinus),
            "Oeven" | "Oeven+" | "Oeven-" => Ok(Family::OEven),
            _ => Err(Error::Parse {
                line: 0,
                msg: format!("unknown family `{s}`"),
            }),
        }
    }
}

/// Where a matrix sits in the chain `Omega <= I <= Delta`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Omega,
    IsometryNotOmega,
    SimilarityNotIsometry,
    Outside,
}

impl Level {
    pub fn in_delta(self) -> bool {
        self != Level::Outside
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Omega => "Omega",
            Level::IsometryNotOmega => "I\\Omega",
            Level::SimilarityNotIsometry => "Delta\\I",
            Level::Outside => "outside",
        })
    }
}

/// A classical group given by its family, dimension and form.
///
/// `x` transforms the canonical form to `form`: `X F X^dagger = lambda F_can`.
/// For `SL` there is no form and `x` is the identity.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    family: Family,
    d: usize,
    q: u64,
    form: Option<Form>,
    ty: Option<FormType>,
    x: Matrix,
    x_inv: Matrix,
}

impl GroupSpec {
    /// `SL_d(q)` inside `GL_d(q)`.
    pub fn linear(f: &FieldCtx, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::NotQuasisimple(format!("SL needs d >= 2, got {d}")));
        }
        let x = Matrix::identity(f, d);
        Ok(GroupSpec {
            family: Family::SL,
            d,
            q: f.q(),
            form: None,
            ty: None,
            x_inv: x.clone(),
            x,
        })
    }

    /// The group preserving `form`; the family is read off its type.
    pub fn from_form(f: &FieldCtx, form: Form, rng: &mut dyn RngCore) -> Result<Self> {
        let (x, ty) = transform_to_canonical(f, &form, rng)?;
        let family = Family::of_label(ty.label, f.is_odd());
        let d = form.dim();
        check_range(family, ty.label, d, f.is_odd())?;
        let x_inv = x.inverse(f)?;
        Ok(GroupSpec {
            family,
            d,
            q: f.q(),
            form: Some(form),
            ty: Some(ty),
            x,
            x_inv,
        })
    }

    /// The group preserving the canonical form of the given type.
    pub fn canonical(f: &FieldCtx, label: Label, d: usize) -> Result<Self> {
        check_range(Family::of_label(label, f.is_odd()), label, d, f.is_odd())?;
        let form = canonical_form(f, label, d)?;
        let x = Matrix::identity(f, d);
        let ty = FormType {
            label,
            d,
            m: label.witt_index(d),
            lambda: f.one(),
            disc: (label.is_orthogonal() && f.is_odd()).then(|| f.iota(form.gram().det(f)).expect("nondegenerate")),
        };
        debug_assert!(ty.verifies(f, &form, &x));
        Ok(GroupSpec {
            family: Family::of_label(label, f.is_odd()),
            d,
            q: f.q(),
            form: Some(form),
            ty: Some(ty),
            x_inv: x.clone(),
            x,
        })
    }

    /// Canonical group of a family; `OEven` needs `minus` to pick the sign.
    pub fn standard(f: &FieldCtx, family: Family, d: usize, minus: bool) -> Result<Self> {
        let label = match family {
            Family::SL => return Self::linear(f, d),
            Family::Sp => Label::Sp,
            Family::SU => Label::U,
            Family::OCirc => Label::OCirc,
            Family::OPlus => Label::OPlus,
            Family::OMinus => Label::OMinus,
            Family::OEven if minus => Label::OMinus,
            Family::OEven => Label::OPlus,
        };
        if Family::of_label(label, f.is_odd()) != family {
            return Err(Error::NotQuasisimple(format!("{family} over GF({})", f.q())));
        }
        Self::canonical(f, label, d)
    }

    #[inline]
    pub fn family(&self) -> Family {
        self.family
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn form(&self) -> Option<&Form> {
        self.form.as_ref()
    }

    pub fn form_type(&self) -> Option<&FormType> {
        self.ty.as_ref()
    }

    pub fn label(&self) -> Option<Label> {
        self.ty.as_ref().map(|t| t.label)
    }

    /// The matrix `X` with `X F X^dagger = lambda F_can`.
    pub fn x(&self) -> &Matrix {
        &self.x
    }

    /// `g^X = X^{-1} g X`: moves an element of the canonical group to this one.
    pub fn from_canonical(&self, f: &FieldCtx, g: &Matrix) -> Matrix {
        self.x_inv.dot(f, g).dot(f, &self.x)
    }

    /// `X g X^{-1}`: the inverse of [`GroupSpec::from_canonical`].
    pub fn to_canonical(&self, f: &FieldCtx, g: &Matrix) -> Matrix {
        self.x.dot(f, g).dot(f, &self.x_inv)
    }

    /// Whether the matrices act on `F_{q^2}^d`.
    pub fn is_unitary(&self) -> bool {
        self.family == Family::SU
    }

    /// Orders of `Omega`, `I` and `Delta`.
    pub fn orders(&self) -> GroupOrders {
        let minus = self.label() == Some(Label::OMinus);
        group_order(self.family, minus, self.d, self.q).expect("checked at construction")
    }

    /// Classifies `g` in `Omega <= I <= Delta`, checking the full congruence.
    pub fn membership(&self, f: &FieldCtx, g: &Matrix) -> Level {
        if !g.is_square() || g.rows() != self.d {
            return Level::Outside;
        }
        let field_ok = g
            .entries()
            .iter()
            .all(|&a| self.is_unitary() || f.in_subfield(a));
        if !field_ok {
            return Level::Outside;
        }
        let det = g.det(f);
        if det.is_zero() {
            return Level::Outside;
        }
        let Some(form) = &self.form else {
            return if det == f.one() { Level::Omega } else { Level::IsometryNotOmega };
        };
        let Ok(t) = tau(f, g, form) else {
            return Level::Outside;
        };
        if t != f.one() {
            return Level::SimilarityNotIsometry;
        }
        match self.family {
            Family::Sp => Level::Omega,
            Family::SU => {
                if det == f.one() {
                    Level::Omega
                } else {
                    Level::IsometryNotOmega
                }
            }
            _ => {
                let spin = spinor_norm_unchecked(f, g, form).spin;
                if det == f.one() && spin == 0 {
                    Level::Omega
                } else {
                    Level::IsometryNotOmega
                }
            }
        }
    }

    /// An element of `I`; see [`random_isometry`]. For `SL` a random invertible matrix.
    pub fn random_isometry(&self, f: &FieldCtx, rng: &mut dyn RngCore) -> Matrix {
        match &self.form {
            Some(form) => random_isometry(f, form, rng),
            None => Matrix::random_invertible(f, self.d, false, rng),
        }
    }

    /// A random element of `Omega` (not uniformly distributed).
    ///
    /// Orthogonal groups use a product of commutators of isometries and a
    /// pair of reflections in vectors of the same class. Unitary groups
    /// use commutators of isometries, `SL` fixes the determinant of a
    /// random matrix.
    pub fn random_omega(&self, f: &FieldCtx, rng: &mut dyn RngCore) -> Matrix {
        let Some(form) = &self.form else {
            let mut g = Matrix::random_invertible(f, self.d, false, rng);
            let s = f.inv(g.det(f));
            for v in g.row_mut(0) {
                *v = f.mul(*v, s);
            }
            return g;
        };
        if self.family == Family::Sp {
            return random_isometry(f, form, rng);
        }
        let comm = |rng: &mut dyn RngCore| {
            let a = random_isometry(f, form, rng);
            let b = random_isometry(f, form, rng);
            let ai = a.inverse(f).expect("invertible");
            let bi = b.inverse(f).expect("invertible");
            ai.dot(f, &bi).dot(f, &a).dot(f, &b)
        };
        let mut g = comm(rng).dot(f, &comm(rng));
        if self.family.is_orthogonal() {
            let u = random_nonsingular(f, form, rng);
            let v = loop {
                let v = random_nonsingular(f, form, rng);
                if !f.is_odd() || vector_class(f, form, &u) == vector_class(f, form, &v) {
                    break v;
                }
            };
            let r = reflection(f, &u, form).expect("nonsingular");
            let s = reflection(f, &v, form).expect("nonsingular");
            g = g.dot(f, &r).dot(f, &s);
        }
        debug_assert_eq!(self.membership(f, &g), Level::Omega);
        g
    }
}

fn check_range(family: Family, label: Label, d: usize, odd_q: bool) -> Result<()> {
    if !label.allows(d) {
        return Err(Error::IncompatibleDimension {
            label: label.to_string(),
            d,
        });
    }
    let ok = match family {
        Family::SL | Family::Sp | Family::SU => d >= 2,
        Family::OCirc => d >= 3 && odd_q,
        Family::OPlus | Family::OMinus | Family::OEven => d >= 4,
    };
    if !ok {
        return Err(Error::NotQuasisimple(format!("{label} in dimension {d}")));
    }
    Ok(())
}

/// Similarity factor `tau(g)` with `g F g^dagger = tau F`, verified on the
/// whole form (and on `Q` for quadratic forms).
pub fn tau(f: &FieldCtx, g: &Matrix, form: &Form) -> Result<Elt> {
    let t = tau_unchecked(f, g, form)?;
    if form.is_similarity(f, g, t) {
        Ok(t)
    } else {
        Err(Error::NotSimilarity)
    }
}

/// `tau(g) = beta(w g, v_1 g) / beta(w, v_1)` for the first basis vector `w`
/// with `beta(w, v_1) != 0`. Only the shape of `g` is checked.
pub fn tau_unchecked(f: &FieldCtx, g: &Matrix, form: &Form) -> Result<Elt> {
    let d = form.dim();
    if !g.is_square() || g.rows() != d {
        return Err(Error::ShapeMismatch(format!("{}x{} matrix for a form of dimension {d}", g.rows(), g.cols())));
    }
    let fm = form.gram();
    let i = (0..d).find(|&i| !fm[(i, 0)].is_zero()).ok_or(Error::Degenerate)?;
    let wg = g.row(i);
    let vg = g.row(0);
    let num = form.beta(f, wg, vg)?;
    Ok(f.div(num, fm[(i, 0)]))
}

/// The data behind a spinor norm computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorWitness {
    /// Gram matrix of `chi` on the image of `I - g` (odd `q`).
    pub chi: Option<Matrix>,
    /// `rank(I + g)` (even `q`).
    pub rank: Option<usize>,
    pub spin: u8,
}

/// Spinor norm of an isometry of a quadratic form.
pub fn spinor_norm(f: &FieldCtx, g: &Matrix, form: &Form) -> Result<SpinorWitness> {
    if form.kind() != FormKind::Quadratic {
        return Err(Error::KindMismatch);
    }
    if !form.is_similarity(f, g, f.one()) {
        return Err(Error::NotIsometry);
    }
    Ok(spinor_norm_unchecked(f, g, form))
}

pub(crate) fn spinor_norm_unchecked(f: &FieldCtx, g: &Matrix, form: &Form) -> SpinorWitness {
    let d = g.rows();
    let id = Matrix::identity(f, d);
    if !f.is_odd() {
        let rank = id.add(f, g).expect("square").rank(f);
        return SpinorWitness {
            chi: None,
            rank: Some(rank),
            spin: (rank % 2) as u8,
        };
    }
    let a = id.sub(f, g).expect("square");
    let null = a.left_nullspace(f);
    let piv = null.pivot_columns(f);
    let comp: Vec<usize> = (0..d).filter(|c| !piv.contains(c)).collect();
    let mut m = Matrix::zeros(comp.len(), d);
    for (r, &c) in comp.iter().enumerate() {
        m[(r, c)] = f.one();
    }
    let ma = m.dot(f, &a);
    let s = m.dot(f, form.gram()).dot(f, &ma.transpose()).scale(f, f.from_int(2));
    let spin = f.iota(s.det(f)).expect("chi is nondegenerate");
    SpinorWitness {
        chi: Some(s),
        rank: None,
        spin,
    }
}

/// The reflection `u -> u - beta(u, v) v / Q(v)`.
pub fn reflection(f: &FieldCtx, v: &[Elt], form: &Form) -> Result<Matrix> {
    let qv = form.q_value(f, v)?;
    if qv.is_zero() {
        return Err(Error::SingularVector);
    }
    let inv = f.inv(qv);
    // column F v^T; row j of the reflection is e_j - (e_j F v^T) Q(v)^{-1} v
    let fv = form.gram().apply(f, v);
    let d = v.len();
    let mut r = Matrix::identity(f, d);
    for j in 0..d {
        let c = f.mul(fv[j], inv);
        if c.is_zero() {
            continue;
        }
        for (k, &vk) in v.iter().enumerate() {
            r[(j, k)] = f.sub(r[(j, k)], f.mul(c, vk));
        }
    }
    Ok(r)
}

/// Canonical reflections: `R_0` and, for odd `q`, `R_1`, with `spin(R_i) = i`
/// in odd characteristic. In even characteristic the single reflection has
/// spinor norm one.
pub fn canonical_reflections(f: &FieldCtx, form: &Form, rng: &mut dyn RngCore) -> Result<(Matrix, Option<Matrix>)> {
    if form.kind() != FormKind::Quadratic {
        return Err(Error::KindMismatch);
    }
    if !form.is_nondegenerate(f) {
        return Err(Error::Degenerate);
    }
    if !f.is_odd() {
        let v = nonsingular_vector(f, form.quad().expect("quadratic"))?;
        return Ok((reflection(f, &v, form)?, None));
    }
    // spin(refl_u) = iota(2 Q(u)), so the pair is swapped when 2 is a nonsquare
    let (sq, nsq) = square_nonsquare_pair(f, form, rng)?;
    let (u0, u1) = if f.iota(f.from_int(2))? == 0 { (sq, nsq) } else { (nsq, sq) };
    Ok((reflection(f, &u0, form)?, Some(reflection(f, &u1, form)?)))
}

/// `iota(beta(v, v))`, the coset of `Omega` containing `refl_v` within the reflections.
pub fn vector_class(f: &FieldCtx, form: &Form, v: &[Elt]) -> u8 {
    let b = form.beta(f, v, v).expect("matching length");
    f.iota(b).unwrap_or(0)
}

/// A uniformly random vector with `Q(v) != 0`.
pub fn random_nonsingular(f: &FieldCtx, form: &Form, rng: &mut dyn RngCore) -> Vec<Elt> {
    loop {
        let v: Vec<Elt> = (0..form.dim()).map(|_| f.random_q(rng)).collect();
        if !form.q_value(f, &v).expect("quadratic").is_zero() {
            return v;
        }
    }
}

/// An isometry of `form`, obtained from a random basis change `A`: with `X`
/// and `X'` the canonical transformations of `F` and `A F A^dagger`, the
/// result is `X^{-1} X' A`. Not uniformly distributed.
pub fn random_isometry(f: &FieldCtx, form: &Form, rng: &mut dyn RngCore) -> Matrix {
    let unitary = form.kind() == FormKind::Unitary;
    let a = Matrix::random_invertible(f, form.dim(), unitary, rng);
    let moved = form.transformed(f, &a);
    let (x, _) = transform_to_canonical(f, form, rng).expect("nondegenerate form");
    let (x2, _) = transform_to_canonical(f, &moved, rng).expect("nondegenerate form");
    let g = x.inverse(f).expect("invertible").dot(f, &x2).dot(f, &a);
    debug_assert!(form.is_similarity(f, &g, f.one()));
    g
}

/// A random similarity: a random isometry times a scalar multiple of a
/// similarity with random factor. Returns `(g, tau(g))`.
pub fn random_similarity(f: &FieldCtx, form: &Form, rng: &mut dyn RngCore) -> (Matrix, Elt) {
    let iso = random_isometry(f, form, rng);
    let d = form.dim();
    // a similarity of the canonical form with factor lambda, moved to `form`
    let (x, ty) = transform_to_canonical(f, form, rng).expect("nondegenerate form");
    let x_inv = x.inverse(f).expect("invertible");
    let lambda = if ty.label == Label::U { f.random_nonzero(rng) } else { f.random_q_nonzero(rng) };
    let (c, t) = canonical_similarity(f, ty.label, d, lambda);
    let g = iso.dot(f, &x_inv.dot(f, &c).dot(f, &x));
    debug_assert!(form.is_similarity(f, &g, t));
    (g, t)
}

// A similarity of the canonical form of type `label` with a factor depending on `lambda`.
fn canonical_similarity(f: &FieldCtx, label: Label, d: usize, lambda: Elt) -> (Matrix, Elt) {
    let m = label.witt_index(d);
    let one = f.one();
    let mut diag = vec![one; d];
    let t;
    match label {
        Label::U => return (Matrix::scalar(d, lambda), f.pow(lambda, f.q() + 1)),
        Label::OCirc | Label::OMinus if f.is_odd() => {
            let l2 = f.mul(lambda, lambda);
            for v in diag.iter_mut().take(m) {
                *v = l2;
            }
            for v in diag.iter_mut().take(d - m).skip(m) {
                *v = lambda;
            }
            t = l2;
        }
        _ if !f.is_odd() && label.is_orthogonal() => {
            let s = f.pow(lambda, f.q() / 2);
            return (Matrix::scalar(d, s), lambda);
        }
        _ => {
            for v in diag.iter_mut().take(m) {
                *v = lambda;
            }
            t = lambda;
        }
    }
    (Matrix::diag(&diag), t)
}

/// Orders of `Omega`, `I` and `Delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupOrders {
    pub omega: BigUint,
    pub isometry: BigUint,
    pub delta: BigUint,
}

impl GroupOrders {
    /// `|Delta : Omega|`.
    pub fn index(&self) -> BigUint {
        &self.delta / &self.omega
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn q_pow(q: u64, e: usize) -> BigUint {
    num_traits::pow(big(q), e)
}

/// Orders from the standard product formulas. For `SL` the isometry group is
/// taken to be `GL`. `minus` selects the sign for `OEven`.
pub fn group_order(family: Family, minus: bool, d: usize, q: u64) -> Result<GroupOrders> {
    let odd_q = q % 2 == 1;
    let label = match family {
        Family::SL => Label::U,
        Family::Sp => Label::Sp,
        Family::SU => Label::U,
        Family::OCirc => Label::OCirc,
        Family::OPlus => Label::OPlus,
        Family::OMinus => Label::OMinus,
        Family::OEven if minus => Label::OMinus,
        Family::OEven => Label::OPlus,
    };
    let fam_ok = match family {
        Family::OPlus | Family::OMinus | Family::OCirc => odd_q,
        Family::OEven => !odd_q,
        _ => true,
    };
    if !fam_ok || check_range(family, label, d, odd_q).is_err() || q < 2 {
        return Err(Error::OutOfRange(format!("{family} d={d} q={q}")));
    }
    let qm1 = big(q - 1);
    let prod = |range: std::ops::RangeInclusive<usize>, g: &dyn Fn(usize) -> BigUint| {
        range.fold(BigUint::one(), |acc, i| acc * g(i))
    };
    let m = d / 2;
    let out = match family {
        Family::SL => {
            let sl = q_pow(q, d * (d - 1) / 2) * prod(2..=d, &|i| q_pow(q, i) - 1u32);
            let gl = &sl * &qm1;
            GroupOrders {
                omega: sl,
                isometry: gl.clone(),
                delta: gl,
            }
        }
        Family::Sp => {
            let sp = q_pow(q, m * m) * prod(1..=m, &|i| q_pow(q, 2 * i) - 1u32);
            GroupOrders {
                delta: &sp * &qm1,
                isometry: sp.clone(),
                omega: sp,
            }
        }
        Family::SU => {
            let su = q_pow(q, d * (d - 1) / 2)
                * prod(2..=d, &|i| if i % 2 == 0 { q_pow(q, i) - 1u32 } else { q_pow(q, i) + 1u32 });
            let gu = &su * big(q + 1);
            GroupOrders {
                delta: &gu * &qm1,
                isometry: gu,
                omega: su,
            }
        }
        Family::OCirc => {
            let so = q_pow(q, m * m) * prod(1..=m, &|i| q_pow(q, 2 * i) - 1u32);
            let o = &so * 2u32;
            GroupOrders {
                delta: &o * big((q - 1) / 2),
                isometry: o,
                omega: so / 2u32,
            }
        }
        Family::OPlus | Family::OMinus | Family::OEven => {
            let top = if label == Label::OMinus { q_pow(q, m) + 1u32 } else { q_pow(q, m) - 1u32 };
            let so = q_pow(q, m * (m - 1)) * top * prod(1..=m - 1, &|i| q_pow(q, 2 * i) - 1u32);
            // in characteristic 2 the "SO" factor above is already |O| / 2
            let o = &so * 2u32;
            let omega = if odd_q { so / 2u32 } else { so };
            GroupOrders {
                delta: &o * &qm1,
                isometry: o,
                omega,
            }
        }
    };
    Ok(out)
}
