//! Symplectic, unitary and quadratic forms, their canonical representatives,
//! and canonical isometries between them.

mod diag;
mod transform;
mod vectors;

use std::fmt;
use std::str::FromStr;

pub use diag::diagonalize;
pub use transform::{canonical_form, isometry, transform_to_canonical, FormType};
pub use vectors::{anisotropic_vector, nonsingular_vector, square_nonsquare_pair};

use crate::error::{Error, Result};
use crate::ff::{Elt, FieldCtx};
use crate::la::{Adjoint, Matrix};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    Symplectic,
    Unitary,
    Quadratic,
}

impl FormKind {
    pub fn adjoint(self) -> Adjoint {
        match self {
            FormKind::Symplectic => Adjoint::Symplectic,
            FormKind::Unitary => Adjoint::Unitary,
            FormKind::Quadratic => Adjoint::Orthogonal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FormKind::Symplectic => "symplectic",
            FormKind::Unitary => "unitary",
            FormKind::Quadratic => "quadratic",
        }
    }
}

impl FromStr for FormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "symplectic" | "sp" => Ok(FormKind::Symplectic),
            "unitary" | "u" => Ok(FormKind::Unitary),
            "quadratic" | "orthogonal" | "o" => Ok(FormKind::Quadratic),
            _ => Err(Error::Parse {
                line: 0,
                msg: format!("unknown form kind `{s}`"),
            }),
        }
    }
}

/// Isometry type of a nondegenerate form.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Sp,
    U,
    /// Odd-dimensional quadratic.
    OCirc,
    OPlus,
    OMinus,
}

impl Label {
    pub fn kind(self) -> FormKind {
        match self {
            Label::Sp => FormKind::Symplectic,
            Label::U => FormKind::Unitary,
            _ => FormKind::Quadratic,
        }
    }

    pub fn is_orthogonal(self) -> bool {
        matches!(self, Label::OCirc | Label::OPlus | Label::OMinus)
    }

    /// Whether dimension `d` is allowed for this label.
    pub fn allows(self, d: usize) -> bool {
        match self {
            Label::U => d >= 1,
            Label::OCirc => d % 2 == 1,
            Label::Sp | Label::OPlus => d >= 2 && d % 2 == 0,
            Label::OMinus => d >= 2 && d % 2 == 0,
        }
    }

    /// Number of hyperbolic pairs in the canonical basis.
    pub fn witt_index(self, d: usize) -> usize {
        match self {
            Label::OMinus => d / 2 - 1,
            _ => d / 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Sp => "Sp",
            Label::U => "U",
            Label::OCirc => "O",
            Label::OPlus => "O+",
            Label::OMinus => "O-",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Sp" | "sp" => Ok(Label::Sp),
            "U" | "u" => Ok(Label::U),
            "O" | "O0" | "Oo" | "O∘" | "o" => Ok(Label::OCirc),
            "O+" | "o+" => Ok(Label::OPlus),
            "O-" | "o-" | "O−" => Ok(Label::OMinus),
            _ => Err(Error::Parse {
                line: 0,
                msg: format!("unknown form label `{s}`"),
            }),
        }
    }
}

/// A sesquilinear or quadratic form on `F^d`.
///
/// For quadratic forms `quad` is the upper triangular `M` with `Q(v) = v M v^T`
/// and `gram` is the polar form `M + M^T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    kind: FormKind,
    gram: Matrix,
    quad: Option<Matrix>,
}

impl Form {
    /// An alternating form; `gram` must satisfy `F = -F^T` with zero diagonal.
    pub fn symplectic(f: &FieldCtx, gram: Matrix) -> Result<Self> {
        square(&gram)?;
        subfield_entries(f, &gram)?;
        let d = gram.rows();
        if gram.star(f, Adjoint::Symplectic) != gram || (0..d).any(|i| !gram[(i, i)].is_zero()) {
            return Err(Error::SymmetryViolation);
        }
        Ok(Form {
            kind: FormKind::Symplectic,
            gram,
            quad: None,
        })
    }

    /// A hermitian form over `F_{q^2}`: `F = F^{sigma T}`.
    pub fn unitary(f: &FieldCtx, gram: Matrix) -> Result<Self> {
        square(&gram)?;
        if gram.star(f, Adjoint::Unitary) != gram {
            return Err(Error::SymmetryViolation);
        }
        Ok(Form {
            kind: FormKind::Unitary,
            gram,
            quad: None,
        })
    }

    /// The quadratic form `Q(v) = v M v^T`; `M` is folded to upper triangular.
    pub fn quadratic(f: &FieldCtx, m: Matrix) -> Result<Self> {
        square(&m)?;
        subfield_entries(f, &m)?;
        let m = m.upper_triangularize(f);
        let gram = m.add(f, &m.transpose())?;
        Ok(Form {
            kind: FormKind::Quadratic,
            gram,
            quad: Some(m),
        })
    }

    /// The quadratic form with polar form `gram` (odd characteristic only).
    pub fn quadratic_from_polar(f: &FieldCtx, gram: Matrix) -> Result<Self> {
        if !f.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        square(&gram)?;
        if gram.transpose() != gram {
            return Err(Error::SymmetryViolation);
        }
        let half = f.inv(f.from_int(2));
        Self::quadratic(f, gram.scale(f, half))
    }

    /// Builds a form of the given kind; `matrix` is `M` for quadratic forms and the Gram matrix otherwise.
    pub fn new(f: &FieldCtx, kind: FormKind, matrix: Matrix) -> Result<Self> {
        match kind {
            FormKind::Symplectic => Self::symplectic(f, matrix),
            FormKind::Unitary => Self::unitary(f, matrix),
            FormKind::Quadratic => Self::quadratic(f, matrix),
        }
    }

    #[inline]
    pub fn kind(&self) -> FormKind {
        self.kind
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    #[inline]
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn quad(&self) -> Option<&Matrix> {
        self.quad.as_ref()
    }

    /// The defining matrix: `M` for quadratic forms, the Gram matrix otherwise.
    pub fn matrix(&self) -> &Matrix {
        self.quad.as_ref().unwrap_or(&self.gram)
    }

    #[inline]
    pub fn adjoint(&self) -> Adjoint {
        self.kind.adjoint()
    }

    /// `beta(u, v) = u F v^{sigma T}`.
    pub fn beta(&self, f: &FieldCtx, u: &[Elt], v: &[Elt]) -> Result<Elt> {
        self.check_len(u)?;
        self.check_len(v)?;
        let fu = self.gram.apply(f, u);
        let mut acc = Elt::ZERO;
        for (&a, &b) in fu.iter().zip(v) {
            let b = if self.kind == FormKind::Unitary { f.frobenius(b) } else { b };
            acc = f.add(acc, f.mul(a, b));
        }
        Ok(acc)
    }

    /// `Q(v) = v M v^T` (quadratic forms only).
    pub fn q_value(&self, f: &FieldCtx, v: &[Elt]) -> Result<Elt> {
        self.check_len(v)?;
        let m = self.quad.as_ref().ok_or(Error::KindMismatch)?;
        Ok(quad_eval(f, m, v))
    }

    fn check_len(&self, v: &[Elt]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for a form of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// The form `v -> Q(vX)`, i.e. Gram `X F X^dagger`.
    pub fn transformed(&self, f: &FieldCtx, x: &Matrix) -> Form {
        let gram = self.gram.congruence(f, x, self.adjoint());
        let quad = self
            .quad
            .as_ref()
            .map(|m| m.congruence(f, x, Adjoint::Orthogonal).upper_triangularize(f));
        Form {
            kind: self.kind,
            gram,
            quad,
        }
    }

    /// The form scaled by `lambda`.
    pub fn scaled(&self, f: &FieldCtx, lambda: Elt) -> Form {
        Form {
            kind: self.kind,
            gram: self.gram.scale(f, lambda),
            quad: self.quad.as_ref().map(|m| m.scale(f, lambda)),
        }
    }

    /// Nondegeneracy: `det F != 0`, except for odd-dimensional quadratic
    /// forms in characteristic 2 where the polar radical must be a line on
    /// which `Q` does not vanish.
    pub fn is_nondegenerate(&self, f: &FieldCtx) -> bool {
        if self.kind == FormKind::Quadratic && !f.is_odd() && self.dim() % 2 == 1 {
            let rad = self.gram.left_nullspace(f);
            return rad.rows() == 1 && !quad_eval(f, self.quad.as_ref().unwrap(), rad.row(0)).is_zero();
        }
        !self.gram.det(f).is_zero()
    }

    /// Whether `g` preserves the form up to the scalar `tau`:
    /// `g F g^dagger = tau F`, and for quadratic forms `Q(vg) = tau Q(v)`.
    pub fn is_similarity(&self, f: &FieldCtx, g: &Matrix, tau: Elt) -> bool {
        if !g.is_square() || g.rows() != self.dim() {
            return false;
        }
        let img = self.transformed(f, g);
        match &self.quad {
            Some(m) => img.quad.as_ref() == Some(&m.scale(f, tau)),
            None => img.gram == self.gram.scale(f, tau),
        }
    }
}

pub(crate) fn quad_eval(f: &FieldCtx, m: &Matrix, v: &[Elt]) -> Elt {
    let mv = m.apply(f, v);
    mv.iter().zip(v).fold(Elt::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

fn square(m: &Matrix) -> Result<()> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::ShapeMismatch(format!("form matrix must be square, got {}x{}", m.rows(), m.cols())));
    }
    Ok(())
}

fn subfield_entries(f: &FieldCtx, m: &Matrix) -> Result<()> {
    if m.entries().iter().all(|&a| f.in_subfield(a)) {
        Ok(())
    } else {
        Err(Error::NotInSubfield)
    }
}
