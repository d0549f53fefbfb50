use clgrp::forms::canonical_form;
use clgrp::io::{format_form, format_matrix, parse_elt, parse_form, parse_matrix};
use clgrp::{Error, FieldCtx, Label, Matrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIELDS: [(u64, u32); 7] = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (5, 2)];

#[test]
fn element_text() {
    let f = FieldCtx::new(3, 2).unwrap();
    assert_eq!(parse_elt(&f, "0,1", false, 1).unwrap(), f.xi());
    assert_eq!(parse_elt(&f, "1,0,0,0", true, 1).unwrap(), f.one());
    assert!(matches!(parse_elt(&f, "1", false, 7), Err(Error::Parse { line: 7, .. })));
    assert!(parse_elt(&f, "1,x", false, 1).is_err());
}

#[test]
fn canonical_forms_round_trip() {
    for (p, k) in FIELDS {
        let f = FieldCtx::new(p, k).unwrap();
        for label in [Label::Sp, Label::U, Label::OCirc, Label::OPlus, Label::OMinus] {
            for d in 1..=6 {
                let Ok(form) = canonical_form(&f, label, d) else { continue };
                let text = format_form(&f, &form);
                assert_eq!(parse_form(&f, &text).unwrap(), form, "{text}");
            }
        }
    }
}

#[test]
fn comments_and_field_mismatch() {
    let f = FieldCtx::new(3, 1).unwrap();
    let text = "# hyperbolic plane\nquadratic 2 GF(3^1)\n\n0 1\n# done\n0 0\n";
    let form = parse_form(&f, text).unwrap();
    assert_eq!(form, canonical_form(&f, Label::OPlus, 2).unwrap());
    let g = FieldCtx::new(5, 1).unwrap();
    assert!(matches!(parse_form(&g, text), Err(Error::Parse { line: 2, .. })));
    let extra = "1 1\n2\n2\n";
    assert!(matches!(parse_matrix(&f, extra, false), Err(Error::Parse { line: 3, .. })));
}

proptest! {
    #[test]
    fn matrices_round_trip(idx in 0usize..FIELDS.len(), rows in 1usize..6, cols in 1usize..6, big: bool, seed: u64) {
        let (p, k) = FIELDS[idx];
        let f = FieldCtx::new(p, k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = if big {
            Matrix::from_vec(rows, cols, (0..rows * cols).map(|_| f.random(&mut rng)).collect()).unwrap()
        } else {
            Matrix::random(&f, rows, cols, &mut rng)
        };
        let text = format_matrix(&f, &m, big);
        prop_assert_eq!(parse_matrix(&f, &text, big).unwrap(), m);
    }
}
