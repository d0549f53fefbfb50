mod common;

use std::collections::{HashMap, HashSet};

use clgrp::forms::canonical_form;
use clgrp::groups::{random_similarity, reflection};
use clgrp::quotient::{Gen, Letter, NormalForm};
use clgrp::{Elt, Error, Family, FieldCtx, GroupSpec, Label, Level, Matrix, Quotient};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quotient(f: &FieldCtx, fam: Family, d: usize, minus: bool) -> Quotient {
    let spec = GroupSpec::standard(f, fam, d, minus).unwrap();
    Quotient::new(f, spec, &mut ChaCha8Rng::seed_from_u64(0)).unwrap()
}

// the group of a random congruent copy of the canonical form
fn moved(f: &FieldCtx, label: Label, d: usize, rng: &mut ChaCha8Rng) -> Quotient {
    let c = canonical_form(f, label, d).unwrap();
    let form = c.transformed(f, &Matrix::random_invertible(f, d, label == Label::U, rng));
    let spec = GroupSpec::from_form(f, form, rng).unwrap();
    Quotient::new(f, spec, rng).unwrap()
}

fn random_delta(f: &FieldCtx, qt: &Quotient, rng: &mut ChaCha8Rng) -> Matrix {
    match qt.spec().form() {
        Some(form) => random_similarity(f, form, rng).0,
        None => Matrix::random_invertible(f, qt.spec().dim(), false, rng),
    }
}

#[test]
fn table_generators() {
    let f = FieldCtx::new(5, 1).unwrap();
    let sl = quotient(&f, Family::SL, 3, false);
    let (name, a) = &sl.generators_x0(&f)[0];
    assert_eq!(name, "a(xi)");
    assert_eq!(*a, Matrix::diag(&[f.from_int(2), f.one(), f.one()]));

    let f = FieldCtx::new(3, 1).unwrap();
    let op = quotient(&f, Family::OPlus, 4, false);
    let lam = f.from_int(2);
    let c = op.letter_matrix(&f, Letter::new(Gen::C, Some(lam), 1));
    assert_eq!(c, Matrix::diag(&[lam, lam, f.one(), f.one()]));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for &(p, k) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1), (3, 2)] {
        let f = FieldCtx::new(p, k).unwrap();
        for label in [Label::Sp, Label::U, Label::OCirc, Label::OPlus, Label::OMinus] {
            for d in 3..=6 {
                if !label.allows(d) || (label == Label::OCirc && p == 2) || (label.is_orthogonal() && d < 4 && label != Label::OCirc) {
                    continue;
                }
                let qt = moved(&f, label, d, &mut rng);
                for (name, m) in qt.generators_x0(&f) {
                    assert!(qt.spec().membership(&f, &m).in_delta(), "{name} for {label} d={d} q={}", f.q());
                }
            }
        }
    }
}

#[test]
fn pc_presentation_shapes() {
    let f = FieldCtx::new(5, 1).unwrap();
    let sl = quotient(&f, Family::SL, 3, false);
    assert_eq!(sl.p2().generators(), vec![Gen::A]);
    let rels: Vec<String> = sl.p2().relations().iter().map(|r| r.to_string()).collect();
    assert_eq!(rels, vec!["a^4 = 1"]);
    assert_eq!(sl.p2().order(), 4);

    let f = FieldCtx::new(3, 1).unwrap();
    let su = quotient(&f, Family::SU, 3, false);
    let rels: Vec<String> = su.p2().relations().iter().map(|r| r.to_string()).collect();
    assert_eq!(rels, vec!["[a, b] = 1", "b^4 = 1", "a^2 = b^3"]);
    assert_eq!(su.p2().order(), 8);
    assert!(su.p2().relations().len() <= 6);
}

#[test]
fn normal_form_count_is_the_index() {
    for &(p, k) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)] {
        let f = FieldCtx::new(p, k).unwrap();
        for fam in Family::ALL {
            for d in 3..=8 {
                for minus in [false, true] {
                    let Ok(spec) = GroupSpec::standard(&f, fam, d, minus) else { continue };
                    let qt = Quotient::new(&f, spec, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
                    let nfs = qt.p2().normal_forms();
                    assert_eq!(nfs.len() as u64, qt.p2().order());
                    assert_eq!(BigUint::from(qt.p2().order()), qt.spec().orders().index(), "{fam} d={d} q={}", f.q());
                    if fam == Family::SU {
                        assert_eq!(qt.p2().order(), f.q() * f.q() - 1);
                    }
                }
            }
        }
    }
}

#[test]
fn pc_collection_agrees_with_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for &(p, k) in &[(2u64, 2u32), (3, 1), (5, 1), (3, 2)] {
        let f = FieldCtx::new(p, k).unwrap();
        for fam in Family::ALL {
            let d = if fam == Family::OCirc { 5 } else { 4 };
            let Ok(spec) = GroupSpec::standard(&f, fam, d, false) else { continue };
            let qt = Quotient::new(&f, spec, &mut rng).unwrap();
            let nfs = qt.p2().normal_forms();
            for _ in 0..20 {
                let x = &nfs[rand::Rng::gen_range(&mut rng, 0..nfs.len())];
                let y = &nfs[rand::Rng::gen_range(&mut rng, 0..nfs.len())];
                let m = qt.normal_form_matrix(&f, x).dot(&f, &qt.normal_form_matrix(&f, y));
                assert_eq!(qt.image_p2(&f, &m).unwrap(), qt.p2().multiply(x, y), "{fam} q={}", f.q());
            }
        }
    }
}

#[test]
fn identity_and_generator_images() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = FieldCtx::new(5, 1).unwrap();
    let sl = quotient(&f, Family::SL, 3, false);
    let a = Matrix::diag(&[f.xi(), f.one(), f.one()]);
    let nf = sl.image_p2(&f, &a).unwrap();
    assert_eq!(sl.p2().display(&nf), "a^1");
    let (w, _) = sl.image_p1(&f, &a, &mut rng).unwrap();
    assert_eq!(w, vec![Letter::new(Gen::A, Some(f.xi()), 1)]);
    for fam in Family::ALL {
        for &(p, k) in &[(2u64, 2u32), (3, 1), (5, 1)] {
            let f = FieldCtx::new(p, k).unwrap();
            let Ok(spec) = GroupSpec::standard(&f, fam, 4 + (fam == Family::OCirc) as usize, false) else {
                continue;
            };
            let qt = Quotient::new(&f, spec.clone(), &mut rng).unwrap();
            let d = spec.dim();
            for _ in 0..5 {
                let w = spec.random_omega(&f, &mut rng);
                assert_eq!(qt.image_p1(&f, &w, &mut rng).unwrap().0, vec![]);
                assert_eq!(qt.image_p2(&f, &w).unwrap(), qt.p2().identity());
                let (rep, _) = qt.coset_rep(&f, &w, &mut rng).unwrap();
                assert_eq!(rep, Matrix::identity(&f, d));
            }
        }
    }
}

#[test]
fn not_in_delta_is_rejected() {
    let f = FieldCtx::new(3, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let qt = quotient(&f, Family::OPlus, 4, false);
    let g = Matrix::diag(&[f.from_int(2), f.one(), f.one(), f.one()]);
    assert_eq!(qt.image_p2(&f, &g).unwrap_err(), Error::NotInDelta);
    assert_eq!(qt.coset_rep(&f, &g, &mut rng).unwrap_err(), Error::NotInDelta);
    let sl = quotient(&f, Family::SL, 3, false);
    assert_eq!(sl.image_p1(&f, &Matrix::zeros(3, 3), &mut rng).unwrap_err(), Error::NotInDelta);
}

#[test]
fn coset_representatives() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for &(p, k) in &[(2u64, 2u32), (3, 1), (5, 1), (3, 2)] {
        let f = FieldCtx::new(p, k).unwrap();
        for label in [Label::Sp, Label::U, Label::OCirc, Label::OPlus, Label::OMinus] {
            let d = if label == Label::OCirc { 5 } else { 4 };
            if label == Label::OCirc && p == 2 {
                continue;
            }
            let qt = moved(&f, label, d, &mut rng);
            let spec = qt.spec().clone();
            for _ in 0..6 {
                let g = random_delta(&f, &qt, &mut rng);
                let (rep, _) = qt.coset_rep(&f, &g, &mut rng).unwrap();
                let quot = g.dot(&f, &rep.inverse(&f).unwrap());
                assert_eq!(spec.membership(&f, &quot), Level::Omega);
                let w = spec.random_omega(&f, &mut rng);
                let (rep2, _) = qt.coset_rep(&f, &w.dot(&f, &g), &mut rng).unwrap();
                assert_eq!(rep2, rep);
                let (rep3, _) = qt.coset_rep(&f, &rep, &mut rng).unwrap();
                assert_eq!(rep3, rep);
                let (rep4, _) = qt.coset_rep(&f, &g, &mut ChaCha8Rng::seed_from_u64(999)).unwrap();
                assert_eq!(rep4, rep);
            }
        }
    }
}

#[test]
fn witness_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let f = FieldCtx::new(5, 1).unwrap();
    let qt = quotient(&f, Family::OMinus, 4, false);
    let spec = qt.spec().clone();
    for _ in 0..20 {
        let g = random_delta(&f, &qt, &mut rng);
        let (_, w) = qt.coset_rep(&f, &g, &mut rng).unwrap();
        let b = w.spin.unwrap();
        let det_minus = w.det.unwrap() != f.one();
        assert_eq!(w.b_prime.unwrap(), b ^ det_minus as u8);
        assert_eq!(w.nonsquare, f.iota(w.tau).unwrap() == 1);
        assert_eq!(w.tau, clgrp::groups::tau(&f, &g, spec.form().unwrap()).unwrap());
    }
    let su = quotient(&FieldCtx::new(3, 2).unwrap(), Family::SU, 3, false);
    let f9 = FieldCtx::new(3, 2).unwrap();
    let g = random_delta(&f9, &su, &mut rng);
    let (_, w) = su.coset_rep(&f9, &g, &mut rng).unwrap();
    let (mu, rho) = (w.mu.unwrap(), w.rho.unwrap());
    assert_eq!(f9.pow(mu, f9.q() + 1), w.tau);
    assert_eq!(f9.mul(f9.powi(mu, 3), f9.pow(rho, f9.q() - 1)), g.det(&f9));
}

#[test]
fn go_image_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = FieldCtx::new(3, 1).unwrap();
    let qt = quotient(&f, Family::OPlus, 4, false);
    let form = qt.spec().form().unwrap().clone();
    let id = Matrix::identity(&f, 4);
    let im = qt.go_image(&f, &id).unwrap();
    assert_eq!((im.det, im.spin), (Some(0), 0));
    let r1 = qt.letter_matrix(&f, Letter::new(Gen::R1, None, 1));
    let im = qt.go_image(&f, &r1).unwrap();
    assert_eq!((im.det, im.spin), (Some(1), 1));
    let r0 = qt.letter_matrix(&f, Letter::new(Gen::R0, None, 1));
    let im = qt.go_image(&f, &r0).unwrap();
    assert_eq!((im.det, im.spin), (Some(1), 0));
    // two reflections in vectors of the same class
    loop {
        let u = clgrp::groups::random_nonsingular(&f, &form, &mut rng);
        let v = clgrp::groups::random_nonsingular(&f, &form, &mut rng);
        let cu = clgrp::groups::vector_class(&f, &form, &u);
        if cu != 0 || clgrp::groups::vector_class(&f, &form, &v) != 0 {
            continue;
        }
        let g = reflection(&f, &u, &form).unwrap().dot(&f, &reflection(&f, &v, &form).unwrap());
        let im = qt.go_image(&f, &g).unwrap();
        assert_eq!((im.det, im.spin), (Some(0), 0));
        assert_eq!(qt.go_coset_rep(&f, &g).unwrap(), id);
        break;
    }
    assert_eq!(qt.go_coset_rep(&f, &r1).unwrap(), r1);
    let c = Matrix::diag(&[f.from_int(2), f.from_int(2), f.one(), f.one()]);
    assert_eq!(qt.go_image(&f, &c).unwrap_err(), Error::NotIsometry);

    let f = FieldCtx::new(2, 2).unwrap();
    let qt = quotient(&f, Family::OEven, 4, true);
    let r0 = qt.letter_matrix(&f, Letter::new(Gen::R0, None, 1));
    let im = qt.go_image(&f, &r0).unwrap();
    assert_eq!((im.det, im.spin), (None, 1));
}

#[test]
fn verify_presentation_examples() {
    for &(p, k) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
        let f = FieldCtx::new(p, k).unwrap();
        for fam in Family::ALL {
            for d in 3..=6 {
                for minus in [false, true] {
                    let Ok(spec) = GroupSpec::standard(&f, fam, d, minus) else { continue };
                    let qt = Quotient::new(&f, spec, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
                    let report = qt.verify_presentation(&f);
                    assert!(report.ok(), "{fam} d={d} q={}: {:?}", f.q(), report.failures);
                }
            }
        }
    }

    // c(-1) is the reflection in a vector with square Q-value
    let f = FieldCtx::new(3, 1).unwrap();
    let qt = quotient(&f, Family::OCirc, 3, false);
    let spec = qt.spec();
    let form = spec.form().unwrap();
    let c = qt.letter_matrix(&f, Letter::new(Gen::C, Some(f.neg(f.one())), 1));
    let u = [f.one(), Elt::ZERO, f.one()];
    assert_eq!(f.iota(form.q_value(&f, &u).unwrap()).unwrap(), 0);
    let r = reflection(&f, &u, form).unwrap();
    assert_eq!(spec.membership(&f, &c.dot(&f, &r.inverse(&f).unwrap())), Level::Omega);

    // A(x)^(q-1) B(x)^-d has determinant one
    let f = FieldCtx::new(2, 1).unwrap();
    let su = quotient(&f, Family::SU, 3, false);
    for x in su.params(&f) {
        let w = [Letter::new(Gen::A, Some(x), 1), Letter::new(Gen::B, Some(x), -3)];
        assert_eq!(su.word_matrix(&f, &w).det(&f), f.one());
    }
}

#[test]
fn table_relations_that_fail() {
    // c^(q-1) = r0 as printed for the plus type: c^(q-1) is the identity matrix
    let f = FieldCtx::new(5, 1).unwrap();
    let qt = quotient(&f, Family::OPlus, 4, false);
    let c = qt.letter_matrix(&f, Letter::new(Gen::C, None, 4));
    assert!(c.is_identity(&f));
    let w = [Letter::new(Gen::C, None, 4), Letter::new(Gen::R0, None, -1)];
    assert_eq!(qt.spec().membership(&f, &qt.word_matrix(&f, &w)), Level::IsometryNotOmega);
}

#[test]
fn kernel_matches_brute_force_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = FieldCtx::new(3, 1).unwrap();
    let qt = quotient(&f, Family::OCirc, 3, false);
    let form = qt.spec().form().unwrap().clone();
    let omega = common::omega_from_reflections(&f, &form);
    assert_eq!(omega.len(), 12);
    let delta = common::similarities(&f, &form);
    let mut images: HashMap<NormalForm, usize> = HashMap::new();
    for (g, _) in &delta {
        let (w, _) = qt.image_p1(&f, g, &mut rng).unwrap();
        assert_eq!(w.is_empty(), omega.contains(g));
        *images.entry(qt.image_p2(&f, g).unwrap()).or_default() += 1;
    }
    assert_eq!(images.len() as u64, qt.p2().order());
    assert!(images.values().all(|&n| n == omega.len()));
    let reps: HashSet<Matrix> = delta.iter().map(|(g, _)| qt.coset_rep(&f, g, &mut rng).unwrap().0).collect();
    assert_eq!(reps.len() as u64, qt.p2().order());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn image_p2_is_a_homomorphism(
        field in prop::sample::select(vec![(2u64, 1u32), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3)]),
        fam in prop::sample::select(Family::ALL.to_vec()),
        d in 3usize..=8,
        minus in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let f = FieldCtx::new(field.0, field.1).unwrap();
        let spec = GroupSpec::standard(&f, fam, d, minus);
        prop_assume!(spec.is_ok());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qt = Quotient::new(&f, spec.unwrap(), &mut rng).unwrap();
        let g = random_delta(&f, &qt, &mut rng);
        let h = random_delta(&f, &qt, &mut rng);
        let ig = qt.image_p2(&f, &g).unwrap();
        let ih = qt.image_p2(&f, &h).unwrap();
        prop_assert_eq!(qt.p2().multiply(&ig, &ih), qt.image_p2(&f, &g.dot(&f, &h)).unwrap());
    }

    #[test]
    fn pc_multiplication_is_associative(
        field in prop::sample::select(vec![(2u64, 2u32), (3, 1), (5, 1), (3, 2), (7, 1)]),
        fam in prop::sample::select(Family::ALL.to_vec()),
        picks in prop::array::uniform3(any::<prop::sample::Index>()),
    ) {
        let f = FieldCtx::new(field.0, field.1).unwrap();
        let d = if fam == Family::OCirc { 5 } else { 4 };
        let spec = GroupSpec::standard(&f, fam, d, false);
        prop_assume!(spec.is_ok());
        let qt = Quotient::new(&f, spec.unwrap(), &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        let pc = qt.p2();
        let nfs = pc.normal_forms();
        let [x, y, z] = picks.map(|i| nfs[i.index(nfs.len())].clone());
        prop_assert_eq!(pc.multiply(&pc.multiply(&x, &y), &z), pc.multiply(&x, &pc.multiply(&y, &z)));
        prop_assert_eq!(pc.multiply(&x, &pc.inverse(&x)), pc.identity());
    }
}
