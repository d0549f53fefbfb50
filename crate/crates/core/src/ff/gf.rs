//! Arithmetic in a single prime-power field `GF(p^n)` defined by a Conway polynomial.
//!
//! Elements are packed into a `u64` with the coefficient of `1` as the most
//! significant base-`p` digit, so that integer order on the packed value is the
//! lexicographic order on `(c_0, c_1, ..., c_{n-1})`.

use super::Elt;

const TABLE_LIMIT: u64 = 1 << 20;
const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    // zech[i] = log(1 + g^i), NO_LOG when 1 + g^i = 0
    zech: Vec<u32>,
}

#[derive(Debug, Clone)]
pub(crate) struct Gf {
    p: u64,
    n: usize,
    order: u64,
    // low coefficients of the monic defining polynomial
    poly: Vec<u64>,
    // place[i] = p^(n-1-i): weight of the coefficient of X^i
    place: Vec<u64>,
    tables: Option<Tables>,
}

impl Gf {
    pub(crate) fn new(p: u64, poly: Vec<u64>) -> Self {
        let n = poly.len();
        let mut place = vec![1u64; n];
        for i in (0..n.saturating_sub(1)).rev() {
            place[i] = place[i + 1] * p;
        }
        let order = place[0] * p;
        let mut gf = Gf {
            p,
            n,
            order,
            poly,
            place,
            tables: None,
        };
        if order <= TABLE_LIMIT {
            gf.tables = Some(gf.build_tables());
        }
        gf
    }

    fn build_tables(&self) -> Tables {
        let m = (self.order - 1) as usize;
        let mut exp = vec![0u32; m];
        let mut log = vec![NO_LOG; self.order as usize];
        let mut x = self.one_raw();
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x as u32;
            debug_assert_eq!(log[x as usize], NO_LOG, "defining polynomial is not primitive");
            log[x as usize] = i as u32;
            x = self.mul_by_gen_raw(x);
        }
        let one = self.one_raw();
        let mut zech = vec![NO_LOG; m];
        for (i, z) in zech.iter_mut().enumerate() {
            let s = self.add_digits(one, exp[i] as u64);
            if s != 0 {
                *z = log[s as usize];
            }
        }
        Tables { exp, log, zech }
    }

    #[inline]
    pub(crate) fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub(crate) fn degree(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn order(&self) -> u64 {
        self.order
    }

    #[inline]
    fn one_raw(&self) -> u64 {
        self.place[0]
    }

    pub(crate) fn unpack(&self, a: Elt) -> Vec<u64> {
        let mut v = a.0;
        let mut out = vec![0u64; self.n];
        for i in (0..self.n).rev() {
            out[i] = v % self.p;
            v /= self.p;
        }
        out
    }

    pub(crate) fn pack(&self, coeffs: &[u64]) -> Elt {
        debug_assert_eq!(coeffs.len(), self.n);
        let mut v = 0u64;
        for &c in coeffs {
            v = v * self.p + c % self.p;
        }
        Elt(v)
    }

    fn mul_by_gen_raw(&self, a: u64) -> u64 {
        let mut c = self.unpack(Elt(a));
        let top = c[self.n - 1];
        for i in (1..self.n).rev() {
            c[i] = c[i - 1];
        }
        c[0] = 0;
        if top != 0 {
            for i in 0..self.n {
                let sub = (top as u128 * self.poly[i] as u128 % self.p as u128) as u64;
                c[i] = (c[i] + self.p - sub) % self.p;
            }
        }
        self.pack(&c).0
    }

    fn add_digits(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        for &w in self.place.iter().rev() {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * w;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn neg_digits(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u64;
        for &w in self.place.iter().rev() {
            let d = a % self.p;
            out += ((self.p - d) % self.p) * w;
            a /= self.p;
        }
        out
    }

    #[inline]
    pub(crate) fn add(&self, a: Elt, b: Elt) -> Elt {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        if self.p == 2 {
            return Elt(a.0 ^ b.0);
        }
        if let Some(t) = &self.tables {
            let la = t.log[a.0 as usize];
            let lb = t.log[b.0 as usize];
            let m = t.exp.len() as u32;
            let diff = if lb >= la { lb - la } else { lb + m - la };
            let z = t.zech[diff as usize];
            if z == NO_LOG {
                return Elt(0);
            }
            let e = (la as u64 + z as u64) % m as u64;
            return Elt(t.exp[e as usize] as u64);
        }
        Elt(self.add_digits(a.0, b.0))
    }

    #[inline]
    pub(crate) fn neg(&self, a: Elt) -> Elt {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        if let Some(t) = &self.tables {
            let m = t.exp.len();
            let e = (t.log[a.0 as usize] as usize + m / 2) % m;
            return Elt(t.exp[e] as u64);
        }
        Elt(self.neg_digits(a.0))
    }

    #[inline]
    pub(crate) fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.0 == 0 || b.0 == 0 {
            return Elt(0);
        }
        if let Some(t) = &self.tables {
            let m = t.exp.len() as u64;
            let e = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % m;
            return Elt(t.exp[e as usize] as u64);
        }
        self.mul_poly(a, b)
    }

    fn mul_poly(&self, a: Elt, b: Elt) -> Elt {
        let n = self.n;
        let p = self.p as u128;
        let x = self.unpack(a);
        let y = self.unpack(b);
        let mut prod = vec![0u128; 2 * n - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u128 * yj as u128) % p;
            }
        }
        // X^n = -sum poly[i] X^i
        for deg in (n..2 * n - 1).rev() {
            let top = prod[deg];
            if top == 0 {
                continue;
            }
            prod[deg] = 0;
            for i in 0..n {
                let sub = top * self.poly[i] as u128 % p;
                prod[deg - n + i] = (prod[deg - n + i] + p - sub) % p;
            }
        }
        let c: Vec<u64> = prod[..n].iter().map(|&v| v as u64).collect();
        self.pack(&c)
    }

    pub(crate) fn pow(&self, a: Elt, e: u64) -> Elt {
        if e == 0 {
            return Elt(self.one_raw());
        }
        if a.0 == 0 {
            return Elt(0);
        }
        if let Some(t) = &self.tables {
            let m = t.exp.len() as u128;
            let l = (t.log[a.0 as usize] as u128 * (e as u128 % m)) % m;
            return Elt(t.exp[l as usize] as u64);
        }
        let mut base = a;
        let mut acc = Elt(self.one_raw());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv(&self, a: Elt) -> Elt {
        assert!(a.0 != 0, "inverse of zero");
        if let Some(t) = &self.tables {
            let m = t.exp.len();
            let l = t.log[a.0 as usize] as usize;
            return Elt(t.exp[(m - l) % m] as u64);
        }
        self.pow(a, self.order - 2)
    }

    /// The defining polynomial's root, i.e. the residue of `X`.
    pub(crate) fn generator(&self) -> Elt {
        if self.n == 1 {
            // X + c_0 = 0
            return Elt((self.p - self.poly[0]) % self.p);
        }
        Elt(self.mul_by_gen_raw(self.one_raw()))
    }

    /// Table lookup of the logarithm to the generator, when tables exist.
    pub(crate) fn table_log(&self, a: Elt) -> Option<u64> {
        let t = self.tables.as_ref()?;
        let l = t.log[a.0 as usize];
        (l != NO_LOG).then_some(l as u64)
    }
}
