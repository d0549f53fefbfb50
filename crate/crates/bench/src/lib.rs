//! Inputs for the benchmarks in `benches/`.

use clgrp::forms::canonical_form;
use clgrp::groups::{random_isometry, random_similarity};
use clgrp::{Family, FieldCtx, Form, GroupSpec, Label, Matrix, Quotient};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random form of the plus type with an isometry and a similarity of it,
/// and the quotient of its conformal group.
pub struct Fixture {
    pub field: FieldCtx,
    pub form: Form,
    pub isometry: Matrix,
    pub similarity: Matrix,
    pub quotient: Quotient,
}

pub fn plus_type(p: u64, k: u32, d: usize, seed: u64) -> Fixture {
    let f = FieldCtx::new(p, k).expect("bundled field");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let canon = canonical_form(&f, Label::OPlus, d).expect("even dimension");
    let form = canon.transformed(&f, &Matrix::random_invertible(&f, d, false, &mut rng));
    let spec = GroupSpec::from_form(&f, form.clone(), &mut rng).expect("supported group");
    debug_assert!(matches!(spec.family(), Family::OPlus | Family::OEven));
    let quotient = Quotient::new(&f, spec, &mut rng).expect("quotient");
    let isometry = random_isometry(&f, &form, &mut rng);
    let similarity = random_similarity(&f, &form, &mut rng).0;
    Fixture {
        field: f,
        form,
        isometry,
        similarity,
        quotient,
    }
}
