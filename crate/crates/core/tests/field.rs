use clgrp::{Elt, Error, FieldCtx};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn field(p: u64, k: u32) -> FieldCtx {
    FieldCtx::new(p, k).unwrap()
}

const SMALL: [(u64, u32); 9] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2)];

#[test]
fn construction_errors() {
    assert_eq!(FieldCtx::new(4, 1).unwrap_err(), Error::NotPrime(4));
    assert!(matches!(
        FieldCtx::new(2, 40).unwrap_err(),
        Error::UnknownConwayPolynomial { .. }
    ));
}

#[test]
fn prime_field_generators() {
    let f2 = field(2, 1);
    assert_eq!(f2.xi(), f2.one());
    let f5 = field(5, 1);
    assert_eq!(f5.xi(), f5.from_int(2));
    assert_eq!(f5.coeffs_q(f5.xi()).unwrap(), vec![2]);
}

#[test]
fn zeta_is_primitive() {
    let f = field(3, 2);
    // zeta generates F_81 and xi generates F_9
    let z = f.zeta();
    let order = (1..=80u64).find(|&e| f.pow(z, e) == f.one()).unwrap();
    assert_eq!(order, 80);
    let xi = f.xi();
    let order = (1..=8u64).find(|&e| f.pow(xi, e) == f.one()).unwrap();
    assert_eq!(order, 8);
    assert_eq!(xi, f.pow(z, 10));
}

#[test]
fn subfield_has_q_elements_and_coordinates_round_trip() {
    for &(p, k) in &SMALL {
        let f = field(p, k);
        let sub = f.subfield_elements();
        assert_eq!(sub.len() as u64, f.q());
        let fixed = f.all_elements().into_iter().filter(|&a| f.in_subfield(a)).count();
        assert_eq!(fixed as u64, f.q());
        for &a in &sub {
            let c = f.coeffs_q(a).unwrap();
            assert_eq!(f.from_coeffs_q(&c).unwrap(), a);
        }
        let outside = f.all_elements().into_iter().find(|&a| !f.in_subfield(a)).unwrap();
        assert_eq!(f.coeffs_q(outside).unwrap_err(), Error::NotInSubfield);
    }
}

#[test]
fn frobenius_is_an_involution() {
    for &(p, k) in &SMALL {
        let f = field(p, k);
        for a in f.all_elements() {
            assert_eq!(f.frobenius(f.frobenius(a)), a);
        }
    }
    let f = field(3, 2);
    assert_eq!(f.frobenius(f.zeta()), f.pow(f.zeta(), 9));
}

#[test]
fn iota_values() {
    let f = field(5, 1);
    assert_eq!(f.iota(f.one()).unwrap(), 0);
    assert_eq!(f.iota(f.from_int(2)).unwrap(), 1);
    assert_eq!(f.iota(f.from_int(4)).unwrap(), 0);
    assert_eq!(f.iota(Elt::ZERO).unwrap_err(), Error::ZeroInput);
    for &(p, k) in &SMALL {
        let f = field(p, k);
        if f.is_odd() {
            assert_eq!(f.iota(f.xi()).unwrap(), 1);
        } else {
            assert_eq!(f.iota(f.one()).unwrap_err(), Error::EvenCharacteristic);
        }
    }
}

#[test]
fn canonical_sqrt_is_smaller_root() {
    let f = field(5, 1);
    let r = f.canonical_sqrt(f.from_int(4), &mut rng(1));
    assert_eq!(r, f.from_int(2).min(f.from_int(3)));
    assert_eq!(f.canonical_sqrt(Elt::ZERO, &mut rng(1)), Elt::ZERO);
    let f16 = field(2, 4);
    for a in f16.subfield_elements() {
        assert_eq!(f16.canonical_sqrt(a, &mut rng(2)), f16.pow(a, 8));
    }
    for &(p, k) in &SMALL {
        let f = field(p, k);
        if !f.is_odd() {
            continue;
        }
        for a in f.subfield_elements() {
            let r = f.canonical_sqrt(a, &mut rng(3));
            assert_eq!(f.mul(r, r), a);
            assert!(r <= f.neg(r));
        }
    }
}

#[test]
fn quad_roots_examples() {
    let f = field(5, 1);
    let (a, b) = f
        .quad_roots(f.one(), Elt::ZERO, f.from_int(-1), &mut rng(4))
        .unwrap();
    assert_eq!((a, b), (f.from_int(1), f.from_int(4)));

    let (a, b) = f
        .quad_roots(f.one(), Elt::ZERO, f.from_int(2), &mut rng(5))
        .unwrap();
    assert!(!f.in_subfield(a));
    assert!(a < b);
    assert_eq!(f.mul(a, b), f.from_int(2));
    assert_eq!(f.add(a, b), Elt::ZERO);

    let f2 = field(2, 1);
    let (a, b) = f2.quad_roots(f2.one(), f2.one(), f2.one(), &mut rng(6)).unwrap();
    assert!(a < b);
    for r in [a, b] {
        assert!(!f2.in_subfield(r));
        assert_eq!(f2.pow(r, 3), f2.one());
    }
}

#[test]
fn quad_roots_exhaustive_and_seed_independent() {
    for &(p, k) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1), (3, 2)] {
        let f = field(p, k);
        let sub = f.subfield_elements();
        for &a in sub.iter().filter(|a| !a.is_zero()) {
            for &b in &sub {
                for &c in &sub {
                    let r0 = f.quad_roots(a, b, c, &mut rng(10)).unwrap();
                    let r1 = f.quad_roots(a, b, c, &mut rng(11)).unwrap();
                    assert_eq!(r0, r1);
                    let mut brute: Vec<Elt> = f
                        .all_elements()
                        .into_iter()
                        .filter(|&x| f.add(f.add(f.mul(a, f.mul(x, x)), f.mul(b, x)), c).is_zero())
                        .collect();
                    brute.sort();
                    if brute.len() == 1 {
                        brute.push(brute[0]);
                    }
                    assert_eq!(vec![r0.0, r0.1], brute);
                }
            }
        }
    }
}

#[test]
fn trace_equation_exhaustive() {
    for &(p, k) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (7, 1)] {
        let f = field(p, k);
        for a in f.subfield_elements().into_iter().filter(|a| !a.is_zero()) {
            let eta = f.solve_trace(a).unwrap();
            assert_eq!(f.add(eta, f.frobenius(eta)), a);
        }
        assert_eq!(f.solve_trace(Elt::ZERO).unwrap_err(), Error::ZeroInput);
    }
    let f5 = field(5, 1);
    assert_eq!(f5.solve_trace(f5.from_int(2)).unwrap(), f5.one());
    let f2 = field(2, 1);
    let eta = f2.solve_trace(f2.one()).unwrap();
    let (w0, _) = f2.quad_roots(f2.one(), f2.one(), f2.one(), &mut rng(0)).unwrap();
    assert_eq!(eta, w0);
}

#[test]
fn norm_equation_exhaustive() {
    for &(p, k) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (3, 3)] {
        let f = field(p, k);
        for a in f.subfield_elements().into_iter().filter(|a| !a.is_zero()) {
            let eta = f.solve_norm(a, &mut rng(20)).unwrap();
            assert_eq!(f.pow(eta, f.q() + 1), a);
            assert_eq!(f.solve_norm(a, &mut rng(21)).unwrap(), eta);
        }
    }
    let f5 = field(5, 1);
    assert_eq!(
        f5.solve_norm(f5.from_int(4), &mut rng(0)).unwrap(),
        f5.canonical_sqrt(f5.from_int(4), &mut rng(0))
    );
    let f3 = field(3, 1);
    let eta = f3.solve_norm(f3.from_int(2), &mut rng(0)).unwrap();
    let brute: Vec<Elt> = f3
        .all_elements()
        .into_iter()
        .filter(|&x| f3.pow(x, 4) == f3.from_int(2))
        .collect();
    assert!(brute.contains(&eta));
}

#[test]
fn hilbert90_solutions() {
    for &(p, k) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1), (3, 2)] {
        let f = field(p, k);
        for d in f.all_elements().into_iter().filter(|&d| !d.is_zero()) {
            let normal = f.pow(d, f.q() + 1) == f.one();
            match f.solve_hilbert90(d) {
                Ok(rho) => {
                    assert!(normal);
                    assert_eq!(f.pow(rho, f.q() - 1), d);
                }
                Err(_) => assert!(!normal),
            }
        }
    }
}

#[test]
fn gamma_and_nu_properties() {
    for &(p, k) in &SMALL {
        let f = field(p, k);
        let g = f.gamma();
        assert!(f.in_subfield(g) && !g.is_zero());
        if f.is_odd() {
            assert_eq!(f.iota(g).unwrap(), 1);
            let t = f.sub(f.one(), f.mul(f.from_int(4), g));
            assert_eq!(f.iota(t).unwrap(), 1);
            let nu = f.nu().unwrap();
            assert!(f.in_subfield(nu));
            assert_eq!(f.iota(f.add(f.one(), f.mul(nu, nu))).unwrap(), 1);
        } else {
            assert!(f.subfield_elements().iter().all(|&x| !f.add(f.add(f.mul(x, x), x), g).is_zero()));
            assert_eq!(f.nu().unwrap_err(), Error::EvenCharacteristic);
        }
    }
    assert_eq!(field(2, 1).gamma(), field(2, 1).one());
}

#[test]
fn discrete_logs() {
    let f5 = field(5, 1);
    assert_eq!(f5.dlog_xi(f5.from_int(4)).unwrap(), 2);
    assert_eq!(f5.dlog_xi(f5.one()).unwrap(), 0);
    assert_eq!(f5.dlog_xi(Elt::ZERO).unwrap_err(), Error::ZeroInput);
    for &(p, k) in &[(2u64, 5u32), (31, 1), (5, 2), (3, 3)] {
        let f = field(p, k);
        assert_eq!(f.dlog_xi(f.xi()).unwrap(), 1);
        for i in 0..f.q() - 1 {
            assert_eq!(f.dlog_xi(f.pow(f.xi(), i)).unwrap(), i);
        }
        for a in f.all_elements().into_iter().skip(1).step_by(7) {
            assert_eq!(f.dlog_zeta(a).ok(), f.table_log_zeta(a));
        }
    }
}

#[test]
fn large_field_without_tables() {
    // F_{q^2} has 2^22 elements, beyond the table limit
    let f = field(2, 11);
    let mut r = rng(7);
    for _ in 0..50 {
        let a = f.random_q_nonzero(&mut r);
        let eta = f.solve_norm(a, &mut r).unwrap();
        assert_eq!(f.pow(eta, f.q() + 1), a);
        let e = f.dlog_xi(a).unwrap();
        assert_eq!(f.pow(f.xi(), e), a);
    }
    let f = field(1009, 1);
    for _ in 0..50 {
        let a = f.random_q_nonzero(&mut r);
        let eta = f.solve_norm(a, &mut r).unwrap();
        assert_eq!(f.pow(eta, f.q() + 1), a);
    }
}
