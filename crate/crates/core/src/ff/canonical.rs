//! Canonical solutions of quadratic, trace and norm equations, and the
//! constants `gamma` and `nu`.

use rand::Rng;
use rand::RngCore;

use super::{Elt, FieldCtx};
use crate::error::{Error, Result};

impl FieldCtx {
    /// `iota(a) = 0` if `a` is a nonzero square of `F_q`, `1` otherwise.
    pub fn iota(&self, a: Elt) -> Result<u8> {
        if !self.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(u8::from(self.pow(a, (self.q - 1) / 2) != self.one))
    }

    /// Both roots of `aX^2 + bX + c` in `F_{q^2}`, smaller first.
    ///
    /// In odd characteristic the square root of the discriminant is found by a
    /// Las Vegas splitting step, but the sorted pair does not depend on `rng`.
    pub fn quad_roots(&self, a: Elt, b: Elt, c: Elt, rng: &mut dyn RngCore) -> Result<(Elt, Elt)> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (r1, r2) = if self.is_odd() {
            let four = self.from_int(4);
            let disc = self.sub(self.mul(b, b), self.mul(four, self.mul(a, c)));
            let s = self.sqrt_extension(disc, rng);
            let two_a = self.mul(self.from_int(2), a);
            let nb = self.neg(b);
            (self.div(self.add(nb, s), two_a), self.div(self.sub(nb, s), two_a))
        } else if b.is_zero() {
            let r = self.pow(self.div(c, a), self.q2() / 2);
            (r, r)
        } else {
            // X = (b/a) Y turns the equation into Y^2 + Y = ac/b^2
            let scale = self.div(b, a);
            let t = self.div(self.mul(a, c), self.mul(b, b));
            let y = self.artin_schreier(t).expect("every element of F_q has a preimage in F_{q^2}");
            (self.mul(scale, y), self.mul(scale, self.add(y, self.one)))
        };
        Ok(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
    }

    // A square root in F_{q^2} of `d`, which must be a square there (true for
    // every element of F_q). Odd characteristic only.
    fn sqrt_extension(&self, d: Elt, rng: &mut dyn RngCore) -> Elt {
        if d.is_zero() {
            return d;
        }
        let e = (self.q2() - 1) / 2;
        loop {
            let delta = Elt(rng.gen_range(0..self.q2()));
            // (delta + X)^e in F_{q^2}[X]/(X^2 - d)
            let (u, v) = self.pow_quadratic(delta, d, e);
            if u.is_zero() && !v.is_zero() {
                let s = self.inv(v);
                debug_assert_eq!(self.mul(s, s), d);
                return s;
            }
        }
    }

    fn pow_quadratic(&self, delta: Elt, d: Elt, mut e: u64) -> (Elt, Elt) {
        let mul = |(a0, a1): (Elt, Elt), (b0, b1): (Elt, Elt)| {
            let c0 = self.add(self.mul(a0, b0), self.mul(d, self.mul(a1, b1)));
            let c1 = self.add(self.mul(a0, b1), self.mul(a1, b0));
            (c0, c1)
        };
        let mut acc = (self.one, Elt::ZERO);
        let mut base = (delta, self.one);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    }

    // A solution y in F_{q^2} of y^2 + y = t (characteristic 2), by F_2-linear
    // elimination with the free variable set to zero.
    fn artin_schreier(&self, t: Elt) -> Option<Elt> {
        let n = 2 * self.k as usize;
        // packed bit i carries weight 2^i; images of basis bits under y^2 + y
        let images: Vec<u64> = (0..n)
            .map(|i| {
                let e = Elt(1u64 << i);
                self.add(self.mul(e, e), e).0
            })
            .collect();
        // reduce: rows hold (image, combination)
        let mut rows: Vec<(u64, u64)> = images.iter().enumerate().map(|(i, &im)| (im, 1u64 << i)).collect();
        let mut pivots: Vec<(u32, u64, u64)> = Vec::new();
        for bit in (0..n as u32).rev() {
            let mask = 1u64 << bit;
            let Some(pos) = rows.iter().position(|r| r.0 & mask != 0) else {
                continue;
            };
            let (pim, pcomb) = rows.remove(pos);
            for r in rows.iter_mut() {
                if r.0 & mask != 0 {
                    r.0 ^= pim;
                    r.1 ^= pcomb;
                }
            }
            pivots.push((bit, pim, pcomb));
        }
        let mut rem = t.0;
        let mut sol = 0u64;
        for &(bit, pim, pcomb) in &pivots {
            if rem & (1u64 << bit) != 0 {
                rem ^= pim;
                sol ^= pcomb;
            }
        }
        (rem == 0).then_some(Elt(sol))
    }

    /// Whether `X^2 + X + t` has a root in `F_q` (characteristic 2, `t` in `F_q`).
    pub fn artin_schreier_solvable(&self, t: Elt) -> bool {
        match self.artin_schreier(t) {
            Some(y) => self.in_subfield(y),
            None => false,
        }
    }

    /// The root in `F_q` of `X^2 + X + t` (characteristic 2), the smaller of the two.
    pub fn artin_schreier_root(&self, t: Elt) -> Option<Elt> {
        let y = self.artin_schreier(t)?;
        if !self.in_subfield(y) {
            return None;
        }
        let z = self.add(y, self.one);
        Some(y.min(z))
    }

    /// The canonical square root in `F_{q^2}` of `a` in `F_q`.
    pub fn canonical_sqrt(&self, a: Elt, rng: &mut dyn RngCore) -> Elt {
        if a.is_zero() {
            return a;
        }
        if !self.is_odd() {
            return self.pow(a, self.q2() / 2);
        }
        let neg = self.neg(a);
        self.quad_roots(self.one, Elt::ZERO, neg, rng).expect("monic").0
    }

    /// Canonical `eta` with `eta + eta^q = a`.
    pub fn solve_trace(&self, a: Elt) -> Result<Elt> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.is_odd() {
            return Ok(self.div(a, self.from_int(2)));
        }
        // eta = x + y zeta with x = 0 free
        let z = self.zeta;
        let tr = self.add(z, self.frobenius(z));
        Ok(self.div(self.mul(a, z), tr))
    }

    /// Canonical `eta` with `eta^(q+1) = a`.
    pub fn solve_norm(&self, a: Elt, rng: &mut dyn RngCore) -> Result<Elt> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !self.is_odd() || self.iota(a)? == 0 {
            return Ok(self.canonical_sqrt(a, rng));
        }
        if self.q % 4 == 1 {
            return Ok(self.quad_roots(self.one, Elt::ZERO, a, rng)?.0);
        }
        let beta = self.canonical_sqrt(self.neg(a), rng);
        let c = self.from_int(norm_constant(self.p) as i64);
        let b = self.neg(self.mul(self.from_int(2), self.mul(beta, c)));
        Ok(self.quad_roots(self.one, b, a, rng)?.0)
    }

    /// Canonical `rho` with `rho^(q-1) = delta`, for `delta` of norm 1.
    ///
    /// Solves the `F_q`-linear system `rho^q = delta rho` in the basis `{1, zeta}`
    /// with the free variable set to one.
    pub fn solve_hilbert90(&self, delta: Elt) -> Result<Elt> {
        if delta.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.pow(delta, self.q + 1) != self.one {
            return Err(Error::NotInSubfield);
        }
        let u = self.sub(self.one, delta);
        if u.is_zero() {
            return Ok(self.one);
        }
        let w = self.sub(self.frobenius(self.zeta), self.mul(delta, self.zeta));
        let (u0, u1) = self.split_basis(u);
        let (w0, w1) = self.split_basis(w);
        // x u + w = 0 has a solution x in F_q
        let x = if !u0.is_zero() {
            self.neg(self.div(w0, u0))
        } else {
            self.neg(self.div(w1, u1))
        };
        let rho = self.add(x, self.zeta);
        debug_assert_eq!(self.pow(rho, self.q - 1), delta);
        Ok(rho)
    }

    // coordinates (a0, a1) in F_q with a = a0 + a1 zeta
    fn split_basis(&self, a: Elt) -> (Elt, Elt) {
        let z = self.zeta;
        let a1 = self.div(self.sub(a, self.frobenius(a)), self.sub(z, self.frobenius(z)));
        (self.sub(a, self.mul(a1, z)), a1)
    }

    /// The canonical `gamma`: for odd `q` both `gamma` and `1 - 4 gamma` are
    /// nonsquares, for even `q` the polynomial `X^2 + X + gamma` is irreducible.
    #[inline]
    pub fn gamma(&self) -> Elt {
        self.gamma
    }

    /// The canonical `nu` with `1 + nu^2` a nonsquare (odd `q` only).
    pub fn nu(&self) -> Result<Elt> {
        self.nu.ok_or(Error::EvenCharacteristic)
    }

    pub(super) fn compute_gamma(&self) -> Elt {
        let z = self.zeta;
        if self.is_odd() {
            let s = self.add(z, self.frobenius(z));
            return self.div(self.xi, self.mul(s, s));
        }
        if self.k % 2 == 1 {
            return self.one;
        }
        let mut a = self.one;
        loop {
            match self.artin_schreier_root(a) {
                None => return a,
                Some(next) => a = next,
            }
        }
    }

    pub(super) fn compute_nu(&self) -> Elt {
        let z = self.zeta;
        let num = self.mul(self.from_int(2), self.pow(z, (self.q + 1) / 2));
        self.div(num, self.sub(z, self.frobenius(z)))
    }
}

// The constant c in F_p for which X^2 - 2cX - 1 is irreducible, p = 3 mod 4.
fn norm_constant(p: u64) -> u64 {
    let mut m = 0;
    let mut t = p + 1;
    while t % 2 == 0 {
        t /= 2;
        m += 1;
    }
    let e = (p + 1) / 4;
    let half = (p + 1) / 2;
    let powm = |b: u64, mut e: u64| {
        let mut r = 1u128;
        let mut b = b as u128 % p as u128;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u128;
            }
            b = b * b % p as u128;
            e >>= 1;
        }
        r as u64
    };
    let mut c = 0u64;
    for _ in 1..m.max(2) - 1 {
        c = powm((c + 1) % p * half % p, e);
    }
    powm((c + p - 1) % p * half % p, e)
}
