//! Baby-step/giant-step discrete logarithms with Pohlig-Hellman splitting.

use std::collections::HashMap;

use super::conway::factorize;
use super::gf::Gf;
use super::Elt;

/// Returns `x` in `[0, order)` with `base^x = target`, where `order` is the
/// multiplicative order of `base`. `None` if `target` is not a power of `base`.
pub(crate) fn discrete_log(gf: &Gf, base: Elt, order: u64, target: Elt) -> Option<u64> {
    if target.is_zero() {
        return None;
    }
    let mut residues = Vec::new();
    for (prime, exp) in factorize(order) {
        let pe = prime.pow(exp);
        let cof = order / pe;
        let g = gf.pow(base, cof);
        let h = gf.pow(target, cof);
        residues.push((prime_power_log(gf, g, prime, exp, h)?, pe));
    }
    let x = crt(&residues);
    (gf.pow(base, x) == target).then_some(x)
}

// g has order prime^exp
fn prime_power_log(gf: &Gf, g: Elt, prime: u64, exp: u32, h: Elt) -> Option<u64> {
    let gamma = gf.pow(g, prime.pow(exp - 1));
    let g_inv = gf.inv(g);
    let mut x = 0u64;
    let mut pk = 1u64;
    for k in 0..exp {
        let shifted = gf.mul(gf.pow(g_inv, x), h);
        let hk = gf.pow(shifted, prime.pow(exp - 1 - k));
        let dk = bsgs(gf, gamma, prime, hk)?;
        x += dk * pk;
        pk *= prime;
    }
    Some(x)
}

fn bsgs(gf: &Gf, g: Elt, n: u64, h: Elt) -> Option<u64> {
    let m = (n as f64).sqrt().ceil() as u64 + 1;
    let mut baby = HashMap::with_capacity(m as usize);
    let mut cur = gf.pow(g, 0);
    for j in 0..m {
        baby.entry(cur).or_insert(j);
        cur = gf.mul(cur, g);
    }
    let giant = gf.inv(gf.pow(g, m));
    let mut y = h;
    for i in 0..=m {
        if let Some(&j) = baby.get(&y) {
            let x = i * m + j;
            if x < n {
                return Some(x);
            }
        }
        y = gf.mul(y, giant);
    }
    None
}

fn crt(residues: &[(u64, u64)]) -> u64 {
    let mut x: u128 = 0;
    let mut modulus: u128 = 1;
    for &(r, m) in residues {
        let m = m as u128;
        // solve x + modulus * t = r (mod m)
        let inv = mod_inverse((modulus % m) as u64, m as u64) as u128;
        let diff = ((r as u128 % m) + m - x % m) % m;
        let t = diff * inv % m;
        x += modulus * t;
        modulus *= m;
    }
    x as u64
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i128) as u64
}
