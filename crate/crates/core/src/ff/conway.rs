use super::conway_data::CONWAY;

/// Low coefficients `c_0..c_{n-1}` of the Conway polynomial for `(p, n)`, if bundled.
pub fn conway_polynomial(p: u64, n: u32) -> Option<Vec<u64>> {
    let key = (u32::try_from(p).ok()?, n);
    CONWAY
        .binary_search_by(|&(cp, cn, _)| (cp, cn).cmp(&key))
        .ok()
        .map(|i| CONWAY[i].2.iter().map(|&c| c as u64).collect())
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_sorted_for_binary_search() {
        assert!(CONWAY.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
    }

    #[test]
    fn known_entries() {
        assert_eq!(conway_polynomial(5, 1), Some(vec![3]));
        assert_eq!(conway_polynomial(5, 2), Some(vec![2, 4]));
        assert_eq!(conway_polynomial(2, 2), Some(vec![1, 1]));
        assert_eq!(conway_polynomial(4, 1), None);
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(80), vec![(2, 4), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(65536), vec![(2, 16)]);
    }
}
