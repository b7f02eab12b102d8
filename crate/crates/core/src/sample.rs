//! Seeded pseudo-random generators for scalars, forms, and torus points.
//!
//! Everything here is driven by an explicit [`ChaCha8Rng`] so that runs are
//! reproducible across platforms and processes: the same seed always yields
//! the same objects, which makes generated test families part of a run's
//! deterministic identity.

use crate::field::{FieldKind, FieldSpec, Scalar};
use crate::poly::Poly;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A deterministic RNG for the given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All exponent vectors of the given total degree in `nvars` variables,
/// in lexicographic order.
pub fn exponent_vectors_of_degree(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn go(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if nvars == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=degree {
            prefix.push(e);
            go(nvars - 1, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        go(nvars, degree, &mut Vec::new(), &mut out);
    }
    out
}

/// A small nonzero integer coefficient that is a unit of the field
/// (in the p-adic case, not divisible by p).
fn random_unit_coefficient(spec: &FieldSpec, rng: &mut ChaCha8Rng) -> i64 {
    loop {
        let c: i64 = rng.gen_range(-4..=4);
        if c == 0 {
            continue;
        }
        if let Some(p) = spec.p() {
            if c.unsigned_abs() % p == 0 {
                continue;
            }
        }
        return c;
    }
}

/// A pseudo-random homogeneous form of height exactly 1.
///
/// Degree is drawn from `1..=max_degree`, the support is 2 or 3 distinct
/// monomials of that degree, and every coefficient is a small integer unit,
/// so the maximum coefficient absolute value is 1 by construction.
pub fn random_unit_form(
    spec: &FieldSpec,
    rng: &mut ChaCha8Rng,
    nvars: usize,
    max_degree: u32,
) -> Poly {
    assert!(nvars >= 1 && max_degree >= 1);
    let degree = rng.gen_range(1..=max_degree);
    let all = exponent_vectors_of_degree(nvars, degree);
    let want = usize::min(rng.gen_range(2..=3), all.len());
    let mut picked: Vec<usize> = Vec::new();
    while picked.len() < want {
        let i = rng.gen_range(0..all.len());
        if !picked.contains(&i) {
            picked.push(i);
        }
    }
    picked.sort_unstable();
    let terms: Vec<(Vec<u32>, Scalar)> = picked
        .into_iter()
        .map(|i| {
            let c = random_unit_coefficient(spec, rng);
            (all[i].clone(), Scalar::from_int(c))
        })
        .collect();
    Poly::from_terms(nvars, terms).expect("sampled form is well formed")
}

/// A pseudo-random scalar of valuation zero.
///
/// p-adic: a reduced fraction with numerator and denominator prime to p.
/// t-adic: a polynomial in t with nonzero constant term.
fn random_unit_scalar(spec: &FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match spec.kind() {
        FieldKind::PAdic => {
            let p = spec.p().expect("p-adic field has a prime");
            let draw = |rng: &mut ChaCha8Rng| loop {
                let c: i64 = rng.gen_range(1..=9);
                if c.unsigned_abs() % p != 0 {
                    return c;
                }
            };
            let num = draw(rng);
            let den = draw(rng);
            Scalar::from_rat(num_rational::BigRational::new(num.into(), den.into()))
        }
        FieldKind::TAdic => loop {
            let c0: i64 = rng.gen_range(-3..=3);
            if c0 == 0 {
                continue;
            }
            let c1: i64 = rng.gen_range(-3..=3);
            let c2: i64 = rng.gen_range(-3..=3);
            let s = Scalar::from_int(c0)
                .add(&Scalar::t().mul(&Scalar::from_int(c1)))
                .add(&Scalar::t().mul(&Scalar::t()).mul(&Scalar::from_int(c2)));
            if !s.is_zero() {
                return s;
            }
        },
    }
}

/// A pseudo-random projective torus point: `n + 1` coordinates, all of
/// valuation zero.
pub fn random_torus_coords(spec: &FieldSpec, rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..=n).map(|_| random_unit_scalar(spec, rng)).collect()
}
