use std::fmt;

use super::word::{Gen, Letter, Relation, Word};
use crate::groups::Family;

/// Exponent vector of an element of a pc presentation, in the generator
/// order of [`PcPresentation::generators`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm(pub Vec<u64>);

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) enum PcLaw {
    /// `a^n = 1`.
    Cyclic { n: u64 },
    /// `[a, b] = 1`, `a^na = b^d`, `b^nb = 1`.
    Unitary { na: u64, nb: u64, d: u64 },
    /// Elementary abelian `<r0[, r1]>` extended by `c`. The action of `c`
    /// swaps `r0` and `r1` when `swap` is set, and `c^n = r0^p0 r1^p1`.
    Orthogonal { rs: usize, swap: bool, n: u64, power: [u8; 2] },
}

/// A polycyclic presentation of `Delta / Omega` with unique normal forms
/// `a^i`, `a^i b^j` or `r0^x r1^y c^k`.
#[derive(Clone, Debug)]
pub struct PcPresentation {
    family: Family,
    law: PcLaw,
    relations: Vec<Relation>,
}

impl PcPresentation {
    pub(crate) fn new(family: Family, law: PcLaw) -> Self {
        let relations = relations(law);
        PcPresentation {
            family,
            law,
            relations,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn generators(&self) -> Vec<Gen> {
        match self.law {
            PcLaw::Cyclic { .. } => vec![Gen::A],
            PcLaw::Unitary { .. } => vec![Gen::A, Gen::B],
            PcLaw::Orthogonal { rs: 1, .. } => vec![Gen::R0, Gen::C],
            PcLaw::Orthogonal { .. } => vec![Gen::R0, Gen::R1, Gen::C],
        }
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Exclusive upper bounds of the normal form exponents.
    pub fn bounds(&self) -> Vec<u64> {
        match self.law {
            PcLaw::Cyclic { n } => vec![n],
            PcLaw::Unitary { na, nb, .. } => vec![na, nb],
            PcLaw::Orthogonal { rs, n, .. } => {
                let mut b = vec![2; rs];
                b.push(n);
                b
            }
        }
    }

    /// Number of normal forms, which is the order of the presented group.
    pub fn order(&self) -> u64 {
        self.bounds().iter().product()
    }

    pub fn identity(&self) -> NormalForm {
        NormalForm(vec![0; self.bounds().len()])
    }

    /// Every normal form, in lexicographic order of exponents.
    pub fn normal_forms(&self) -> Vec<NormalForm> {
        let bounds = self.bounds();
        let mut out = vec![self.identity()];
        for (i, &b) in bounds.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|nf| {
                    (0..b).map(move |e| {
                        let mut v = nf.0.clone();
                        v[i] = e;
                        NormalForm(v)
                    })
                })
                .collect();
        }
        out
    }

    pub fn is_normal(&self, x: &NormalForm) -> bool {
        let b = self.bounds();
        x.0.len() == b.len() && x.0.iter().zip(&b).all(|(e, b)| e < b)
    }

    /// The normal form of `x y`.
    pub fn multiply(&self, x: &NormalForm, y: &NormalForm) -> NormalForm {
        debug_assert!(self.is_normal(x) && self.is_normal(y));
        match self.law {
            PcLaw::Cyclic { n } => NormalForm(vec![(x.0[0] + y.0[0]) % n]),
            PcLaw::Unitary { na, nb, d } => {
                let mut i = x.0[0] + y.0[0];
                let mut j = x.0[1] + y.0[1];
                if i >= na {
                    i -= na;
                    j += d;
                }
                NormalForm(vec![i, j % nb])
            }
            PcLaw::Orthogonal { rs, swap, n, power } => {
                let (v1, k1) = split(x, rs);
                let (mut v2, k2) = split(y, rs);
                // c^k1 v2 = v2^(c^-k1) c^k1
                if swap && k1 % 2 == 1 {
                    v2.swap(0, 1);
                }
                let mut v = [v1[0] ^ v2[0], v1[1] ^ v2[1]];
                let mut k = k1 + k2;
                if k >= n {
                    k -= n;
                    v = [v[0] ^ power[0], v[1] ^ power[1]];
                }
                let mut e: Vec<u64> = v[..rs].iter().map(|&b| b as u64).collect();
                e.push(k);
                NormalForm(e)
            }
        }
    }

    pub fn power(&self, x: &NormalForm, mut e: u64) -> NormalForm {
        let mut acc = self.identity();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, x: &NormalForm) -> NormalForm {
        self.power(x, self.order() - 1)
    }

    /// Collects an arbitrary word in the pc generators into normal form.
    pub fn collect(&self, w: &[Letter]) -> NormalForm {
        let gens = self.generators();
        let mut acc = self.identity();
        for l in w {
            let i = gens.iter().position(|&g| g == l.gen).expect("pc generator");
            let mut unit = self.identity();
            unit.0[i] = 1;
            let base = if l.exp < 0 { self.inverse(&unit) } else { unit };
            acc = self.multiply(&acc, &self.power(&base, l.exp.unsigned_abs()));
        }
        acc
    }

    /// The normal form as a word in the pc generators.
    pub fn word(&self, x: &NormalForm) -> Word {
        self.generators()
            .into_iter()
            .zip(&x.0)
            .filter(|(_, &e)| e > 0)
            .map(|(g, &e)| Letter::new(g, None, e as i64))
            .collect()
    }

    /// `g1^e1 g2^e2 ...`, omitting zero exponents; the identity prints as the empty string.
    pub fn display(&self, x: &NormalForm) -> String {
        self.generators()
            .into_iter()
            .zip(&x.0)
            .filter(|(_, &e)| e > 0)
            .map(|(g, e)| format!("{g}^{e}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn split(x: &NormalForm, rs: usize) -> ([u8; 2], u64) {
    let mut v = [0u8; 2];
    for i in 0..rs {
        v[i] = x.0[i] as u8;
    }
    (v, x.0[rs])
}

fn pw(g: Gen, e: i64) -> Letter {
    Letter::new(g, None, e)
}

fn relations(law: PcLaw) -> Vec<Relation> {
    use Gen::*;
    match law {
        PcLaw::Cyclic { n } => vec![Relation::new(vec![pw(A, n as i64)], vec![])],
        PcLaw::Unitary { na, nb, d } => vec![
            Relation::commutator(pw(A, 1), pw(B, 1)),
            Relation::new(vec![pw(B, nb as i64)], vec![]),
            Relation::new(vec![pw(A, na as i64)], vec![pw(B, d as i64)]),
        ],
        PcLaw::Orthogonal { rs, swap, n, power } => {
            let mut out = vec![Relation::new(vec![pw(R0, 2)], vec![])];
            if rs == 2 {
                out.push(Relation::new(vec![pw(R1, 2)], vec![]));
                out.push(Relation::new(vec![pw(R0, 1), pw(R1, 1), pw(R0, 1), pw(R1, 1)], vec![]));
            }
            let rgens = if rs == 2 { vec![R0, R1] } else { vec![R0] };
            for &r in &rgens {
                if swap {
                    let image = if r == R0 { R1 } else { R0 };
                    out.push(Relation::conjugate(pw(r, 1), pw(C, 1), vec![pw(image, 1)]));
                } else {
                    out.push(Relation::commutator(pw(r, 1), pw(C, 1)));
                }
            }
            let rhs: Word = [(R0, power[0]), (R1, power[1])]
                .into_iter()
                .filter(|&(_, b)| b == 1)
                .map(|(g, _)| pw(g, 1))
                .collect();
            out.push(Relation::new(vec![pw(C, n as i64)], rhs));
            out
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
