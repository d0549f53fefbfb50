//! Finite fields `F_q` inside `F_{q^2}`.
//!
//! Every element lives in the quadratic extension `F_{q^2}`, built from the
//! Conway polynomial of degree `2k`; `F_q` is the subfield fixed by `x -> x^q`
//! and is generated by `xi = zeta^(q+1)`.

mod canonical;
mod conway;
#[allow(clippy::all)]
mod conway_data;
mod dlog;
mod gf;

use rand::Rng;
use rand::RngCore;

use crate::error::{Error, Result};
pub use conway::conway_polynomial;
use gf::Gf;

/// An element of `F_{q^2}`, packed as base-`p` digits `(c_0, ..., c_{2k-1})`
/// with respect to powers of `zeta`. The derived order is lexicographic on
/// those coefficients.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Elt(pub(crate) u64);

impl Elt {
    pub const ZERO: Elt = Elt(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The packed integer encoding.
    pub fn raw(self) -> u64 {
        self.0
    }
}

/// A finite field `F_q`, `q = p^k`, together with its quadratic extension.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u64,
    k: u32,
    q: u64,
    big: Gf,
    one: Elt,
    zeta: Elt,
    xi: Elt,
    gamma: Elt,
    nu: Option<Elt>,
    // coefficient vectors of xi^0 .. xi^(k-1) over F_p, and the inverse of
    // their restriction to `sub_pivots`
    sub_pivots: Vec<usize>,
    sub_inverse: Vec<Vec<u64>>,
    sub_basis: Vec<Vec<u64>>,
}

impl FieldCtx {
    /// Builds `F_{p^k}` from the bundled Conway polynomials of degree `k` and `2k`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !conway::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::OutOfRange("extension degree must be positive".into()));
        }
        let small = conway_polynomial(p, k).ok_or(Error::UnknownConwayPolynomial { p, k })?;
        let large =
            conway_polynomial(p, 2 * k).ok_or(Error::UnknownConwayPolynomial { p, k: 2 * k })?;
        let big = Gf::new(p, large);
        let q = p.pow(k);
        let one = big.pow(Elt(1), 0);
        let zeta = big.generator();
        let xi = big.pow(zeta, q + 1);

        // compatibility: xi must be a root of the degree-k Conway polynomial
        let mut val = big.pow(xi, k as u64);
        let mut xp = one;
        for &c in &small {
            let c_elt = from_prime(&big, c);
            val = big.add(val, big.mul(c_elt, xp));
            xp = big.mul(xp, xi);
        }
        assert!(val.is_zero(), "Conway polynomials for ({p},{k}) and ({p},{}) are not compatible", 2 * k);

        let mut sub_basis = Vec::with_capacity(k as usize);
        let mut x = one;
        for _ in 0..k {
            sub_basis.push(big.unpack(x));
            x = big.mul(x, xi);
        }
        let (sub_pivots, sub_inverse) = subfield_solver(&sub_basis, p);

        let mut ctx = FieldCtx {
            p,
            k,
            q,
            big,
            one,
            zeta,
            xi,
            gamma: Elt::ZERO,
            nu: None,
            sub_pivots,
            sub_inverse,
            sub_basis,
        };
        ctx.gamma = ctx.compute_gamma();
        if p != 2 {
            ctx.nu = Some(ctx.compute_nu());
        }
        Ok(ctx)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q^2`, the order of the extension field.
    #[inline]
    pub fn q2(&self) -> u64 {
        self.big.order()
    }

    #[inline]
    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    /// `GF(p^k)` header text.
    pub fn header(&self) -> String {
        format!("GF({}^{})", self.p, self.k)
    }

    #[inline]
    pub fn zero(&self) -> Elt {
        Elt::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elt {
        self.one
    }

    /// Canonical primitive element of `F_{q^2}`.
    #[inline]
    pub fn zeta(&self) -> Elt {
        self.zeta
    }

    /// Canonical primitive element of `F_q`; equals `zeta^(q+1)`.
    #[inline]
    pub fn xi(&self) -> Elt {
        self.xi
    }

    pub fn from_int(&self, v: i64) -> Elt {
        let r = v.rem_euclid(self.p as i64) as u64;
        from_prime(&self.big, r)
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        self.big.add(a, b)
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        self.big.neg(a)
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.big.add(a, self.big.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.big.mul(a, b)
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Elt) -> Elt {
        self.big.inv(a)
    }

    pub fn try_inv(&self, a: Elt) -> Result<Elt> {
        if a.is_zero() {
            Err(Error::ZeroInput)
        } else {
            Ok(self.big.inv(a))
        }
    }

    #[inline]
    pub fn div(&self, a: Elt, b: Elt) -> Elt {
        self.big.mul(a, self.big.inv(b))
    }

    #[inline]
    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        self.big.pow(a, e)
    }

    /// `a^n` for signed `n`; `a` must be nonzero when `n < 0`.
    pub fn powi(&self, a: Elt, n: i64) -> Elt {
        if n >= 0 {
            self.pow(a, n as u64)
        } else {
            self.pow(self.inv(a), n.unsigned_abs())
        }
    }

    /// The Frobenius `x -> x^q`, an involution of `F_{q^2}`.
    #[inline]
    pub fn frobenius(&self, a: Elt) -> Elt {
        self.big.pow(a, self.q)
    }

    #[inline]
    pub fn in_subfield(&self, a: Elt) -> bool {
        self.frobenius(a) == a
    }

    /// Coefficients of `a` with respect to `zeta^0, ..., zeta^(2k-1)`.
    pub fn coeffs_q2(&self, a: Elt) -> Vec<u64> {
        self.big.unpack(a)
    }

    pub fn from_coeffs_q2(&self, c: &[u64]) -> Result<Elt> {
        if c.len() != 2 * self.k as usize || c.iter().any(|&x| x >= self.p) {
            return Err(Error::OutOfRange(format!(
                "expected {} coefficients in [0, {})",
                2 * self.k,
                self.p
            )));
        }
        Ok(self.big.pack(c))
    }

    /// Coefficients of `a` in `F_q` with respect to `xi^0, ..., xi^(k-1)`.
    pub fn coeffs_q(&self, a: Elt) -> Result<Vec<u64>> {
        let t = self.big.unpack(a);
        let p = self.p as u128;
        let k = self.k as usize;
        let mut c = vec![0u64; k];
        for (j, cj) in c.iter_mut().enumerate() {
            let mut acc = 0u128;
            for (i, &piv) in self.sub_pivots.iter().enumerate() {
                acc = (acc + t[piv] as u128 * self.sub_inverse[i][j] as u128) % p;
            }
            *cj = acc as u64;
        }
        let back = self.from_coeffs_q(&c)?;
        if back != a {
            return Err(Error::NotInSubfield);
        }
        Ok(c)
    }

    pub fn from_coeffs_q(&self, c: &[u64]) -> Result<Elt> {
        let k = self.k as usize;
        if c.len() != k || c.iter().any(|&x| x >= self.p) {
            return Err(Error::OutOfRange(format!("expected {k} coefficients in [0, {})", self.p)));
        }
        let n = 2 * k;
        let mut acc = vec![0u64; n];
        for (ci, basis) in c.iter().zip(&self.sub_basis) {
            for j in 0..n {
                acc[j] = ((acc[j] as u128 + *ci as u128 * basis[j] as u128) % self.p as u128) as u64;
            }
        }
        Ok(self.big.pack(&acc))
    }

    /// All elements of `F_q`, in increasing canonical order.
    pub fn subfield_elements(&self) -> Vec<Elt> {
        let mut v = Vec::with_capacity(self.q as usize);
        v.push(Elt::ZERO);
        let mut x = self.one;
        for _ in 0..self.q - 1 {
            v.push(x);
            x = self.mul(x, self.xi);
        }
        v.sort();
        v
    }

    /// All elements of `F_{q^2}`, in increasing canonical order.
    pub fn all_elements(&self) -> Vec<Elt> {
        (0..self.q2()).map(Elt).collect()
    }

    pub fn random(&self, rng: &mut dyn RngCore) -> Elt {
        Elt(rng.gen_range(0..self.q2()))
    }

    pub fn random_nonzero(&self, rng: &mut dyn RngCore) -> Elt {
        Elt(rng.gen_range(1..self.q2()))
    }

    pub fn random_q(&self, rng: &mut dyn RngCore) -> Elt {
        let e = rng.gen_range(0..self.q);
        if e == self.q - 1 {
            Elt::ZERO
        } else {
            self.pow(self.xi, e)
        }
    }

    pub fn random_q_nonzero(&self, rng: &mut dyn RngCore) -> Elt {
        let e = rng.gen_range(0..self.q - 1);
        self.pow(self.xi, e)
    }

    /// `log_xi(a)` in `[0, q-2]` for nonzero `a` in `F_q`.
    pub fn dlog_xi(&self, a: Elt) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !self.in_subfield(a) {
            return Err(Error::NotInSubfield);
        }
        dlog::discrete_log(&self.big, self.xi, self.q - 1, a).ok_or(Error::NotInSubfield)
    }

    /// `log_zeta(a)` in `[0, q^2-2]` for nonzero `a`.
    pub fn dlog_zeta(&self, a: Elt) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(dlog::discrete_log(&self.big, self.zeta, self.q2() - 1, a)
            .expect("zeta generates the multiplicative group"))
    }

    /// Table logarithm to `zeta`, used by tests as an independent check.
    #[doc(hidden)]
    pub fn table_log_zeta(&self, a: Elt) -> Option<u64> {
        self.big.table_log(a)
    }
}

fn from_prime(gf: &Gf, c: u64) -> Elt {
    let mut coeffs = vec![0u64; gf.degree()];
    coeffs[0] = c % gf.p();
    gf.pack(&coeffs)
}

// Chooses k independent columns of the k x 2k basis matrix over F_p and
// returns them with the inverse of the corresponding k x k submatrix.
fn subfield_solver(basis: &[Vec<u64>], p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let k = basis.len();
    let n = basis[0].len();
    let pm = p as u128;
    let mulm = |a: u64, b: u64| (a as u128 * b as u128 % pm) as u64;
    let inv = |a: u64| {
        let mut r = 1u64;
        let mut b = a;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        r
    };
    // column echelon on the transposed system to find pivots
    let mut rows: Vec<Vec<u64>> = basis.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == k {
            break;
        }
        let Some(pr) = (r..k).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let iv = inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = mulm(*x, iv);
        }
        for i in 0..k {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..n {
                    rows[i][j] = (rows[i][j] + p - mulm(f, rows[r][j])) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    assert_eq!(pivots.len(), k);
    // invert B[:, pivots] (k x k): rows indexed by basis vector, columns by pivot
    let mut a: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut row: Vec<u64> = pivots.iter().map(|&c| basis[i][c]).collect();
            row.extend((0..k).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    for col in 0..k {
        let pr = (col..k).find(|&i| a[i][col] != 0).expect("invertible");
        a.swap(col, pr);
        let iv = inv(a[col][col]);
        for x in a[col].iter_mut() {
            *x = mulm(*x, iv);
        }
        for i in 0..k {
            if i != col && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..2 * k {
                    a[i][j] = (a[i][j] + p - mulm(f, a[col][j])) % p;
                }
            }
        }
    }
    // c * B_P = t_P  =>  c = t_P * B_P^{-1}; B_P^{-1}[i][j] with i over pivots
    let inverse: Vec<Vec<u64>> = a.into_iter().map(|row| row[k..].to_vec()).collect();
    (pivots, inverse)
}
