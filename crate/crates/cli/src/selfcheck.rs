use anyhow::Context;
use clgrp::forms::transform_to_canonical;
use clgrp::io::{format_matrix, parse_field, parse_matrix};
use clgrp::{Family, FieldCtx, GroupSpec, Level, Matrix, Quotient};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::random_delta;

pub struct Report {
    pub checks: u64,
    pub failures: Vec<String>,
}

impl Report {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Checks every group of the given families with `d <= dmax` over the given
/// fields: relations hold, the quotient has the right order, images are
/// multiplicative, coset representatives are canonical, and printed matrices
/// parse back.
pub fn run(families: &[Family], dmax: usize, qset: &[u64], seed: u64) -> anyhow::Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report {
        checks: 0,
        failures: Vec::new(),
    };
    for &q in qset {
        let (p, k) = parse_field(&q.to_string())?;
        let f = FieldCtx::new(p, k).with_context(|| format!("field of order {q}"))?;
        for &fam in families {
            for d in 2..=dmax {
                for minus in [false, true] {
                    if minus && fam != Family::OEven {
                        continue;
                    }
                    let Ok(spec) = GroupSpec::standard(&f, fam, d, minus) else { continue };
                    let tag = format!("{fam}{} d={d} q={q}", if minus { "-" } else { "" });
                    check_group(&f, spec, &tag, &mut rng, &mut r)?;
                }
            }
        }
    }
    Ok(r)
}

fn check_group(f: &FieldCtx, spec: GroupSpec, tag: &str, rng: &mut ChaCha8Rng, r: &mut Report) -> anyhow::Result<()> {
    // the same group for a random congruent copy of the form
    let spec = match spec.form() {
        Some(form) => {
            let x = Matrix::random_invertible(f, spec.dim(), spec.is_unitary(), rng);
            let moved = form.transformed(f, &x);
            let (y, ty) = transform_to_canonical(f, &moved, rng)?;
            r.check(ty.verifies(f, &moved, &y), || format!("{tag}: canonical transformation"));
            GroupSpec::from_form(f, moved, rng)?
        }
        None => spec,
    };
    let qt = Quotient::new(f, spec.clone(), rng)?;
    let report = qt.verify_presentation(f);
    r.check(report.ok(), || format!("{tag}: relations {:?}", report.failures));
    let count = qt.p2().normal_forms().len();
    r.check(BigUint::from(count) == spec.orders().index(), || format!("{tag}: {count} normal forms"));

    let big = spec.is_unitary();
    for _ in 0..4 {
        let g = random_delta(f, &spec, rng);
        let h = random_delta(f, &spec, rng);
        let lhs = qt.p2().multiply(&qt.image_p2(f, &g)?, &qt.image_p2(f, &h)?);
        r.check(lhs == qt.image_p2(f, &g.dot(f, &h))?, || format!("{tag}: image is not multiplicative"));

        let (rep, _) = qt.coset_rep(f, &g, rng)?;
        let quot = g.dot(f, &rep.inverse(f)?);
        r.check(spec.membership(f, &quot) == Level::Omega, || format!("{tag}: g rep^-1 not in Omega"));
        let w = spec.random_omega(f, rng);
        r.check(qt.coset_rep(f, &w.dot(f, &g), rng)?.0 == rep, || format!("{tag}: rep(wg) != rep(g)"));
        r.check(qt.coset_rep(f, &rep, rng)?.0 == rep, || format!("{tag}: rep is not idempotent"));
        let other = qt.coset_rep(f, &g, &mut ChaCha8Rng::seed_from_u64(0x5eed))?.0;
        r.check(other == rep, || format!("{tag}: rep depends on the seed"));
        let text = format_matrix(f, &rep, big);
        r.check(parse_matrix(f, &text, big).ok() == Some(rep), || format!("{tag}: matrix text round trip"));
    }
    Ok(())
}
