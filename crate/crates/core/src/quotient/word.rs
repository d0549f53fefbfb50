use std::fmt;

use crate::ff::Elt;

/// Generator names of the presentations.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
    R0,
    R1,
    C,
    C0,
}

impl Gen {
    pub fn name(self) -> &'static str {
        match self {
            Gen::A => "a",
            Gen::B => "b",
            Gen::R0 => "r0",
            Gen::R1 => "r1",
            Gen::C => "c",
            Gen::C0 => "c0",
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A generator, its parameter `lambda` for the families `a(lambda)`,
/// `b(lambda)` and `c(lambda)`, and an exponent.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub param: Option<Elt>,
    pub exp: i64,
}

impl Letter {
    pub fn new(gen: Gen, param: Option<Elt>, exp: i64) -> Self {
        Letter { gen, param, exp }
    }

    pub fn inverse(self) -> Self {
        Letter { exp: -self.exp, ..self }
    }

    pub fn render(&self, param: &dyn Fn(Elt) -> String) -> String {
        let mut s = self.gen.name().to_string();
        if let Some(p) = self.param {
            s.push_str(&format!("({})", param(p)));
        }
        if self.exp != 1 {
            s.push_str(&format!("^{}", self.exp));
        }
        s
    }
}

pub type Word = Vec<Letter>;

pub fn render_word(w: &[Letter], param: &dyn Fn(Elt) -> String) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|l| l.render(param)).collect::<Vec<_>>().join(" ")
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Shape {
    Plain,
    Commutator(Letter, Letter),
    Conjugate(Letter, Letter),
}

/// A relation `lhs = rhs` between words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
    shape: Shape,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Relation {
            lhs,
            rhs,
            shape: Shape::Plain,
        }
    }

    /// `[x, y] = x^-1 y^-1 x y = 1`.
    pub fn commutator(x: Letter, y: Letter) -> Self {
        Relation {
            lhs: vec![x.inverse(), y.inverse(), x, y],
            rhs: vec![],
            shape: Shape::Commutator(x, y),
        }
    }

    /// `x^y = y^-1 x y = rhs`.
    pub fn conjugate(x: Letter, y: Letter, rhs: Word) -> Self {
        Relation {
            lhs: vec![y.inverse(), x, y],
            rhs,
            shape: Shape::Conjugate(x, y),
        }
    }

    /// The relator `lhs rhs^-1`.
    pub fn relator(&self) -> Word {
        let mut w = self.lhs.clone();
        w.extend(self.rhs.iter().rev().map(|l| l.inverse()));
        w
    }

    pub fn render(&self, param: &dyn Fn(Elt) -> String) -> String {
        let lhs = match self.shape {
            Shape::Plain => render_word(&self.lhs, param),
            Shape::Commutator(x, y) => format!("[{}, {}]", x.render(param), y.render(param)),
            Shape::Conjugate(x, y) => format!("{}^{}", x.render(param), y.render(param)),
        };
        format!("{lhs} = {}", render_word(&self.rhs, param))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|e| format!("#{}", e.raw())))
    }
}
