//! The quotient `Delta / Omega`: two presentations, images of elements in
//! them, and canonical coset representatives.
//!
//! `P1` has one generator `a(lambda)`, `b(lambda)` or `c(lambda)` per field
//! element together with `r0`, `r1`, `c0`; `P2` is polycyclic on at most
//! three generators.

mod pc;
mod word;

use rand::RngCore;

pub use pc::{NormalForm, PcPresentation};
pub use word::{render_word, Gen, Letter, Relation, Word};

use crate::error::{Error, Result};
use crate::ff::{Elt, FieldCtx};
use crate::groups::{canonical_reflections, spinor_norm_unchecked, tau, Family, GroupSpec, Level};
use crate::la::Matrix;
use pc::PcLaw;

/// The presentation `P1`, with the parametrised relations instantiated.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub family: Family,
    /// Generator names, `a(x)` standing for the family over all `x`.
    pub generators: Vec<String>,
    /// Relations with symbolic parameters, one per line of a dump.
    pub schema: Vec<String>,
    /// Every relation with concrete parameters (see [`Quotient::p1`]).
    pub relations: Vec<Relation>,
}

/// The intermediate values of an image or coset representative computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetWitness {
    /// Similarity factor of `g` (the determinant for `SL`).
    pub tau: Elt,
    /// Unitary: `mu^(q+1) = tau`.
    pub mu: Option<Elt>,
    /// Unitary: `rho^(q-1) = mu^-d det(g)`.
    pub rho: Option<Elt>,
    /// Orthogonal: the parameter of the `c` generator.
    pub lambda: Option<Elt>,
    /// Orthogonal minus type: whether `tau` is a nonsquare, so that `c0` is used.
    pub nonsquare: bool,
    /// Orthogonal, odd `q`: `det(h)` for `h = g C^-1`.
    pub det: Option<Elt>,
    /// Orthogonal: `spin(h)`.
    pub spin: Option<u8>,
    /// Orthogonal: exponent of `r0` (`spin(h)`, plus one when `det(h) = -1`).
    pub b_prime: Option<u8>,
}

impl CosetWitness {
    fn new(tau: Elt) -> Self {
        CosetWitness {
            tau,
            mu: None,
            rho: None,
            lambda: None,
            nonsquare: false,
            det: None,
            spin: None,
            b_prime: None,
        }
    }
}

/// Image of an element of `O(Q)` in `O / Omega`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct GoImage {
    /// `0` for determinant one, `1` for minus one (odd `q` only).
    pub det: Option<u8>,
    pub spin: u8,
}

/// Outcome of substituting generator matrices into every relator.
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Delta / Omega` for a group spec, with the generator matrices of both
/// presentations built once.
#[derive(Clone, Debug)]
pub struct Quotient {
    spec: GroupSpec,
    r0: Option<Matrix>,
    r1: Option<Matrix>,
    c0: Option<Matrix>,
    /// Matrices of the pc generators, in presentation order.
    pc_mats: Vec<Matrix>,
    c_inv: Option<Matrix>,
    lambda0: Option<Elt>,
    p2: PcPresentation,
}

impl Quotient {
    pub fn new(f: &FieldCtx, spec: GroupSpec, rng: &mut dyn RngCore) -> Result<Self> {
        let family = spec.family();
        let d = spec.dim() as u64;
        let q = f.q();
        let (mut r0, mut r1) = (None, None);
        if family.is_orthogonal() {
            let (a, b) = canonical_reflections(f, spec.form().expect("orthogonal form"), rng)?;
            r0 = Some(a);
            r1 = b;
        }
        let mut c0 = None;
        let mut lambda0 = None;
        let mut pc_mats = Vec::new();
        let law = match family {
            Family::SL | Family::Sp => {
                pc_mats.push(gen_matrix(f, &spec, Gen::A, f.xi()));
                PcLaw::Cyclic { n: q - 1 }
            }
            Family::SU => {
                pc_mats.push(gen_matrix(f, &spec, Gen::A, f.zeta()));
                pc_mats.push(gen_matrix(f, &spec, Gen::B, f.zeta()));
                PcLaw::Unitary {
                    na: q - 1,
                    nb: q + 1,
                    d,
                }
            }
            Family::OEven => {
                pc_mats.push(r0.clone().expect("reflection"));
                pc_mats.push(gen_matrix(f, &spec, Gen::C, f.xi()));
                PcLaw::Orthogonal {
                    rs: 1,
                    swap: false,
                    n: q - 1,
                    power: [0, 0],
                }
            }
            Family::OCirc | Family::OPlus | Family::OMinus => {
                pc_mats.push(r0.clone().expect("reflection"));
                pc_mats.push(r1.clone().expect("reflection"));
                let (c, n, power) = match family {
                    Family::OCirc => {
                        // c^((q-1)/2) = C(-1) is the reflection in the middle
                        // vector, whose Q-value is the similarity scalar of X
                        let lam = spec.form_type().expect("form").lambda;
                        let s = f.iota(f.mul(f.from_int(2), lam))?;
                        let (b_prime, b) = r_exponents(1, s);
                        (gen_matrix(f, &spec, Gen::C, f.xi()), (q - 1) / 2, [b_prime, b])
                    }
                    Family::OPlus => (gen_matrix(f, &spec, Gen::C, f.xi()), q - 1, [0, 0]),
                    _ => {
                        // C(-1) acts as -1 on the anisotropic plane: determinant
                        // one and spinor norm 1 + iota(-1)
                        let s = 1 ^ f.iota(f.neg(f.one()))?;
                        let l0 = f.canonical_sqrt(f.div(f.xi(), f.gamma()), rng);
                        lambda0 = Some(l0);
                        let cz = gen_matrix(f, &spec, Gen::C0, f.one());
                        let c = gen_matrix(f, &spec, Gen::C, l0).dot(f, &cz);
                        c0 = Some(cz);
                        let (b_prime, b) = r_exponents(0, s);
                        (c, q - 1, [b_prime, b])
                    }
                };
                pc_mats.push(c);
                PcLaw::Orthogonal {
                    rs: 2,
                    swap: family != Family::OCirc,
                    n,
                    power,
                }
            }
        };
        let c_inv = family
            .is_orthogonal()
            .then(|| pc_mats.last().expect("c").inverse(f))
            .transpose()?;
        Ok(Quotient {
            p2: PcPresentation::new(family, law),
            spec,
            r0,
            r1,
            c0,
            pc_mats,
            c_inv,
            lambda0,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn family(&self) -> Family {
        self.spec.family()
    }

    /// The polycyclic presentation `P2`.
    pub fn p2(&self) -> &PcPresentation {
        &self.p2
    }

    /// For the minus type in odd characteristic, `c = c(lambda0) c0` with `lambda0^2 = xi / gamma`.
    pub fn lambda0(&self) -> Option<Elt> {
        self.lambda0
    }

    /// Parameters over which the families `a(x)`, `b(x)`, `c(x)` range.
    pub fn params(&self, f: &FieldCtx) -> Vec<Elt> {
        if self.spec.is_unitary() {
            let z = f.zeta();
            let mut out = Vec::with_capacity(f.q2() as usize - 1);
            let mut x = f.one();
            for _ in 0..f.q2() - 1 {
                out.push(x);
                x = f.mul(x, z);
            }
            out
        } else {
            let mut out = Vec::with_capacity(f.q() as usize - 1);
            let mut x = f.one();
            for _ in 0..f.q() - 1 {
                out.push(x);
                x = f.mul(x, f.xi());
            }
            out
        }
    }

    /// Generators of `Delta` modulo `Omega`, named as in `P1` and evaluated
    /// at the primitive element for the parametrised families.
    pub fn generators_x0(&self, f: &FieldCtx) -> Vec<(String, Matrix)> {
        let prim = if self.spec.is_unitary() { f.zeta() } else { f.xi() };
        let mut out = Vec::new();
        for g in self.p1_gens() {
            let param = matches!(g, Gen::A | Gen::B | Gen::C).then_some(prim);
            let name = match param {
                Some(_) if self.spec.is_unitary() => format!("{}(zeta)", g.name()),
                Some(_) => format!("{}(xi)", g.name()),
                None => g.name().to_string(),
            };
            out.push((name, self.letter_matrix(f, Letter::new(g, param, 1))));
        }
        out
    }

    fn p1_gens(&self) -> Vec<Gen> {
        match self.family() {
            Family::SL | Family::Sp => vec![Gen::A],
            Family::SU => vec![Gen::A, Gen::B],
            Family::OEven => vec![Gen::R0, Gen::C],
            Family::OCirc | Family::OPlus => vec![Gen::R0, Gen::R1, Gen::C],
            Family::OMinus => vec![Gen::R0, Gen::R1, Gen::C, Gen::C0],
        }
    }

    /// The matrix of a single letter (with its exponent).
    pub fn letter_matrix(&self, f: &FieldCtx, l: Letter) -> Matrix {
        let base = match (l.gen, l.param) {
            (Gen::R0, _) => self.r0.clone().expect("r0 is defined"),
            (Gen::R1, _) => self.r1.clone().expect("r1 is defined"),
            (Gen::C0, _) => self.c0.clone().expect("c0 is defined"),
            (g, Some(x)) => gen_matrix(f, &self.spec, g, x),
            (g, None) => {
                let i = self.p2.generators().iter().position(|&h| h == g).expect("pc generator");
                self.pc_mats[i].clone()
            }
        };
        let m = if l.exp < 0 { base.inverse(f).expect("invertible") } else { base };
        m.pow(f, l.exp.unsigned_abs())
    }

    pub fn word_matrix(&self, f: &FieldCtx, w: &[Letter]) -> Matrix {
        let mut acc = Matrix::identity(f, self.spec.dim());
        for &l in w {
            acc = acc.dot(f, &self.letter_matrix(f, l));
        }
        acc
    }

    /// The matrix of a `P2` normal form.
    pub fn normal_form_matrix(&self, f: &FieldCtx, x: &NormalForm) -> Matrix {
        self.word_matrix(f, &self.p2.word(x))
    }

    /// Renders a field element for words and dumps.
    pub fn param_text(&self, f: &FieldCtx, x: Elt) -> String {
        crate::io::format_elt(f, x, self.spec.is_unitary())
    }

    /// `P1` with its relations instantiated over every parameter, or over
    /// the first 32 powers of the primitive element when the field has more
    /// than 100 nonzero elements.
    pub fn p1(&self, f: &FieldCtx) -> Presentation {
        use Gen::*;
        let family = self.family();
        let mut params = self.params(f);
        if params.len() > 100 {
            params.truncate(32);
        }
        let q = f.q() as i64;
        let d = self.spec.dim() as i64;
        let p = |g: Gen, x: Elt| Letter::new(g, Some(x), 1);
        let mut rels = Vec::new();
        let mut schema = Vec::new();
        let families: Vec<Gen> = self.p1_gens().into_iter().filter(|g| matches!(g, A | B | C)).collect();
        for &g in &families {
            schema.push(format!("{g}(x) {g}(y) = {g}(x*y)"));
            for &x in &params {
                for &y in &params {
                    rels.push(Relation::new(vec![p(g, x), p(g, y)], vec![p(g, f.mul(x, y))]));
                }
            }
        }
        let has_r1 = self.r1.is_some();
        if self.r0.is_some() {
            schema.push("r0^2 = 1".into());
            rels.push(Relation::new(vec![Letter::new(R0, None, 2)], vec![]));
        }
        if has_r1 {
            schema.push("r1^2 = 1".into());
            schema.push("(r0 r1)^2 = 1".into());
            rels.push(Relation::new(vec![Letter::new(R1, None, 2)], vec![]));
            let r = |g| Letter::new(g, None, 1);
            rels.push(Relation::new(vec![r(R0), r(R1), r(R0), r(R1)], vec![]));
        }
        let rs: Vec<Gen> = if has_r1 { vec![R0, R1] } else { vec![R0] };
        let other = |g: Gen| if g == R0 { R1 } else { R0 };
        let r = |g| Letter::new(g, None, 1);
        match family {
            Family::SL | Family::Sp => {}
            Family::SU => {
                schema.push(format!("b(x)^{} = 1", q + 1));
                schema.push(format!("a(x)^{} = b(x)^{d}", q - 1));
                schema.push("[a(x), b(y)] = 1".into());
                for &x in &params {
                    rels.push(Relation::new(vec![Letter::new(B, Some(x), q + 1)], vec![]));
                    rels.push(Relation::new(vec![Letter::new(A, Some(x), q - 1)], vec![Letter::new(B, Some(x), d)]));
                }
                for &x in &params {
                    for &y in &params {
                        rels.push(Relation::commutator(p(A, x), p(B, y)));
                    }
                }
            }
            Family::OEven | Family::OCirc => {
                for &g in &rs {
                    schema.push(format!("[{g}, c(x)] = 1"));
                    for &x in &params {
                        rels.push(Relation::commutator(r(g), p(C, x)));
                    }
                }
                if family == Family::OCirc {
                    let power = self.pc_power_word();
                    schema.push(format!("c(-1) = {}", render_word(&power, &|_| String::new())));
                    rels.push(Relation::new(vec![p(C, f.neg(f.one()))], power));
                }
            }
            Family::OPlus => {
                schema.push("r0^c(x) = r_(0 + iota(x))".into());
                schema.push("r1^c(x) = r_(1 + iota(x))".into());
                for &g in &rs {
                    for &x in &params {
                        let shift = f.iota(x).expect("nonzero") == 1;
                        let image = if shift { other(g) } else { g };
                        rels.push(Relation::conjugate(r(g), p(C, x), vec![r(image)]));
                    }
                }
            }
            Family::OMinus => {
                let power = self.pc_power_word();
                let c0 = Letter::new(C0, None, 1);
                for &g in &rs {
                    schema.push(format!("[{g}, c(x)] = 1"));
                    for &x in &params {
                        rels.push(Relation::commutator(r(g), p(C, x)));
                    }
                }
                schema.push(format!("c(-1) = {}", render_word(&power, &|_| String::new())));
                rels.push(Relation::new(vec![p(C, f.neg(f.one()))], power));
                schema.push("[c0, c(x)] = 1".into());
                for &x in &params {
                    rels.push(Relation::commutator(c0, p(C, x)));
                }
                schema.push("c0^2 = c(gamma)".into());
                rels.push(Relation::new(vec![Letter::new(C0, None, 2)], vec![p(C, f.gamma())]));
                schema.push("r0^c0 = r1".into());
                schema.push("r1^c0 = r0".into());
                for &g in &rs {
                    rels.push(Relation::conjugate(r(g), c0, vec![r(other(g))]));
                }
            }
        }
        let mut generators: Vec<String> = families.iter().map(|g| format!("{g}(x)")).collect();
        if self.r0.is_some() {
            generators.insert(0, "r0".into());
        }
        if has_r1 {
            generators.insert(1, "r1".into());
        }
        if self.c0.is_some() {
            generators.push("c0".into());
        }
        Presentation {
            family,
            generators,
            schema,
            relations: rels,
        }
    }

    // right hand side of the power relation of c in P2 (and of c(-1) in P1)
    fn pc_power_word(&self) -> Word {
        let rel = self.p2.relations().last().expect("power relation");
        rel.rhs.clone()
    }

    // g in Delta, returning tau(g) (the determinant for SL)
    fn check_delta(&self, f: &FieldCtx, g: &Matrix) -> Result<Elt> {
        let d = self.spec.dim();
        if !g.is_square() || g.rows() != d {
            return Err(Error::NotInDelta);
        }
        if !self.spec.is_unitary() && !g.entries().iter().all(|&a| f.in_subfield(a)) {
            return Err(Error::NotInDelta);
        }
        match self.spec.form() {
            None => {
                let det = g.det(f);
                if det.is_zero() {
                    Err(Error::NotInDelta)
                } else {
                    Ok(det)
                }
            }
            Some(form) => {
                let t = tau(f, g, form).map_err(|_| Error::NotInDelta)?;
                if t.is_zero() {
                    return Err(Error::NotInDelta);
                }
                Ok(t)
            }
        }
    }

    /// Orthogonal groups: the branch of `c` in `P1`, as `(word, C^X)`.
    fn orthogonal_branch(&self, f: &FieldCtx, t: Elt, w: &mut CosetWitness, rng: &mut dyn RngCore) -> Result<(Word, Matrix)> {
        let family = self.family();
        let lambda = match family {
            Family::OPlus | Family::OEven => t,
            Family::OCirc => {
                if f.iota(t)? == 1 {
                    return Err(Error::NotInDelta);
                }
                f.canonical_sqrt(t, rng)
            }
            _ => {
                if f.iota(t)? == 0 {
                    f.canonical_sqrt(t, rng)
                } else {
                    w.nonsquare = true;
                    f.canonical_sqrt(f.div(t, f.gamma()), rng)
                }
            }
        };
        w.lambda = Some(lambda);
        let mut word = Vec::new();
        let mut c = Matrix::identity(f, self.spec.dim());
        if w.nonsquare {
            word.push(Letter::new(Gen::C0, None, 1));
            c = self.c0.clone().expect("c0");
        }
        if lambda != f.one() {
            word.push(Letter::new(Gen::C, Some(lambda), 1));
            c = c.dot(f, &gen_matrix(f, &self.spec, Gen::C, lambda));
        }
        Ok((word, c))
    }

    // (b', b) for h = g C^-1, an isometry
    fn isometry_bits(&self, f: &FieldCtx, h: &Matrix, w: &mut CosetWitness) -> (u8, u8) {
        let form = self.spec.form().expect("orthogonal form");
        let spin = spinor_norm_unchecked(f, h, form).spin;
        let det_bit = if f.is_odd() {
            let det = h.det(f);
            w.det = Some(det);
            (det != f.one()) as u8
        } else {
            0
        };
        let (b_prime, b) = r_exponents(det_bit, spin);
        w.spin = Some(spin);
        w.b_prime = Some(b_prime);
        (b_prime, b)
    }

    fn unitary_params(&self, f: &FieldCtx, g: &Matrix, t: Elt, rng: &mut dyn RngCore) -> Result<(Elt, Elt)> {
        let mu = f.solve_norm(t, rng)?;
        let d = self.spec.dim() as i64;
        let delta = f.mul(f.powi(mu, -d), g.det(f));
        let rho = f.solve_hilbert90(delta)?;
        Ok((mu, rho))
    }

    /// Image of `g` in `P1` as a canonical word, with the witness of the computation.
    pub fn image_p1(&self, f: &FieldCtx, g: &Matrix, rng: &mut dyn RngCore) -> Result<(Word, CosetWitness)> {
        let t = self.check_delta(f, g)?;
        let mut w = CosetWitness::new(t);
        let a = |x: Elt| (x != f.one()).then(|| Letter::new(Gen::A, Some(x), 1));
        let word = match self.family() {
            Family::SL | Family::Sp => a(t).into_iter().collect(),
            Family::SU => {
                let (mu, rho) = self.unitary_params(f, g, t, rng)?;
                w.mu = Some(mu);
                w.rho = Some(rho);
                let b = (rho != f.one()).then(|| Letter::new(Gen::B, Some(rho), 1));
                a(mu).into_iter().chain(b).collect()
            }
            _ => {
                let (z, c) = self.orthogonal_branch(f, t, &mut w, rng)?;
                let h = g.dot(f, &c.inverse(f)?);
                let (b_prime, b) = self.isometry_bits(f, &h, &mut w);
                let mut word = self.r_word(b_prime, b);
                word.extend(z);
                word
            }
        };
        Ok((word, w))
    }

    /// Image of `g` in `P2` as a normal form; uses at most two discrete logarithms.
    pub fn image_p2(&self, f: &FieldCtx, g: &Matrix) -> Result<NormalForm> {
        let t = self.check_delta(f, g)?;
        let family = self.family();
        let nf = match family {
            Family::SL | Family::Sp => NormalForm(vec![f.dlog_xi(t)?]),
            Family::SU => {
                let q = f.q();
                let i = f.dlog_xi(t)?;
                let d = self.spec.dim() as u64;
                let e = f.mul(g.det(f), f.powi(f.zeta(), -((d * i) as i64)));
                let l = f.dlog_zeta(e)?;
                debug_assert_eq!(l % (q - 1), 0);
                NormalForm(vec![i, l / (q - 1)])
            }
            _ => {
                let mut k = f.dlog_xi(t)?;
                if family == Family::OCirc {
                    if k % 2 == 1 {
                        return Err(Error::NotInDelta);
                    }
                    k /= 2;
                }
                let c_inv = self.c_inv.as_ref().expect("orthogonal");
                let h = g.dot(f, &c_inv.pow(f, k));
                let mut w = CosetWitness::new(t);
                let (b_prime, b) = self.isometry_bits(f, &h, &mut w);
                if self.r1.is_some() {
                    NormalForm(vec![b_prime as u64, b as u64, k])
                } else {
                    NormalForm(vec![b as u64, k])
                }
            }
        };
        debug_assert!(self.p2.is_normal(&nf));
        Ok(nf)
    }

    /// The canonical representative of the coset `Omega g`.
    pub fn coset_rep(&self, f: &FieldCtx, g: &Matrix, rng: &mut dyn RngCore) -> Result<(Matrix, CosetWitness)> {
        let (word, w) = self.image_p1(f, g, rng)?;
        Ok((self.word_matrix(f, &word), w))
    }

    /// Image of an isometry of the quadratic form in `O / Omega`.
    pub fn go_image(&self, f: &FieldCtx, g: &Matrix) -> Result<GoImage> {
        let form = self.spec.form().filter(|_| self.family().is_orthogonal()).ok_or(Error::KindMismatch)?;
        if !form.is_similarity(f, g, f.one()) {
            return Err(Error::NotIsometry);
        }
        let spin = spinor_norm_unchecked(f, g, form).spin;
        let det = f.is_odd().then(|| (g.det(f) != f.one()) as u8);
        Ok(GoImage { det, spin })
    }

    /// Canonical representative of `Omega g` for an isometry `g`: `R0^b' R1^b`.
    pub fn go_coset_rep(&self, f: &FieldCtx, g: &Matrix) -> Result<Matrix> {
        let im = self.go_image(f, g)?;
        let (b_prime, b) = r_exponents(im.det.unwrap_or(0), im.spin);
        Ok(self.word_matrix(f, &self.r_word(b_prime, b)))
    }

    // r0^b' r1^b, or r0^b in even characteristic
    fn r_word(&self, b_prime: u8, b: u8) -> Word {
        let r = |g| Letter::new(g, None, 1);
        if self.r1.is_none() {
            return if b == 1 { vec![r(Gen::R0)] } else { vec![] };
        }
        let mut word = Vec::new();
        if b_prime == 1 {
            word.push(r(Gen::R0));
        }
        if b == 1 {
            word.push(r(Gen::R1));
        }
        word
    }

    /// Substitutes the generator matrices into every relator of `P1` and
    /// `P2` and checks that each lands in `Omega`. Also compares the order
    /// of `P2` with the index from the order formulas.
    pub fn verify_presentation(&self, f: &FieldCtx) -> VerifyReport {
        let mut report = VerifyReport::default();
        let param = |x: Elt| self.param_text(f, x);
        let p1 = self.p1(f);
        for rel in p1.relations.iter().chain(self.p2.relations()) {
            report.checked += 1;
            let m = self.word_matrix(f, &rel.relator());
            let level = self.spec.membership(f, &m);
            if level != Level::Omega {
                report.failures.push(format!("{} ({level})", rel.render(&param)));
            }
        }
        for (name, m) in self.generators_x0(f) {
            report.checked += 1;
            if !self.spec.membership(f, &m).in_delta() {
                report.failures.push(format!("generator {name} is not in Delta"));
            }
        }
        report.checked += 1;
        let index = self.spec.orders().index();
        if index != num_bigint::BigUint::from(self.p2.order()) {
            report
                .failures
                .push(format!("P2 has {} normal forms but |Delta : Omega| = {index}", self.p2.order()));
        }
        report
    }
}

/// `(b', b)` with `r0^b' r1^b` of determinant bit `det_bit` and spinor norm `spin`.
fn r_exponents(det_bit: u8, spin: u8) -> (u8, u8) {
    (det_bit ^ spin, spin)
}

/// The generator `gen(x)` of `P1` as a matrix of the group of `spec`.
fn gen_matrix(f: &FieldCtx, spec: &GroupSpec, gen: Gen, x: Elt) -> Matrix {
    let d = spec.dim();
    let one = f.one();
    let label = spec.label();
    let m = label.map(|l| l.witt_index(d)).unwrap_or(0);
    let blocks = |outer: Elt, middle: Elt| {
        let mut v = vec![one; d];
        for e in v.iter_mut().take(m) {
            *e = outer;
        }
        for e in v.iter_mut().take(d - m).skip(m) {
            *e = middle;
        }
        Matrix::diag(&v)
    };
    let canonical = match (spec.family(), gen) {
        (Family::SL, Gen::A) => {
            let mut v = vec![one; d];
            v[0] = x;
            return Matrix::diag(&v);
        }
        (Family::Sp, Gen::A) if !f.is_odd() => return Matrix::scalar(d, f.pow(x, f.q() / 2)),
        (Family::Sp, Gen::A) => blocks(x, one),
        (Family::SU, Gen::A) => return Matrix::scalar(d, x),
        (Family::SU, Gen::B) => {
            let mut v = vec![one; d];
            v[0] = f.frobenius(x);
            v[d - 1] = f.inv(x);
            Matrix::diag(&v)
        }
        (Family::OEven, Gen::C) => return Matrix::scalar(d, f.pow(x, f.q() / 2)),
        (Family::OCirc, Gen::C) => blocks(f.mul(x, x), x),
        (Family::OPlus, Gen::C) => blocks(x, one),
        (Family::OMinus, Gen::C) => blocks(f.mul(x, x), x),
        (Family::OMinus, Gen::C0) => {
            let g = f.gamma();
            let mut c = blocks(g, one);
            c[(m, m)] = Elt::ZERO;
            c[(m + 1, m + 1)] = Elt::ZERO;
            c[(m, m + 1)] = one;
            c[(m + 1, m)] = g;
            c
        }
        (fam, g) => panic!("generator {g} is not defined for {fam}"),
    };
    spec.from_canonical(f, &canonical)
}
