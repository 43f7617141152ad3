//! Shared seeded generators for the integration suites: vectors, weights,
//! and spaces of every norm kind.

#![allow(dead_code)]

use mbasis::norms::{Exponent, NormSpec};
use nalgebra::{DMatrix, DVector};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// The exponents the suites cycle through.
pub const EXPONENTS: [Exponent; 5] = [
    Exponent::Finite(1.0),
    Exponent::Finite(1.25),
    Exponent::Finite(2.0),
    Exponent::Finite(4.0),
    Exponent::Infinity,
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vector(rng: &mut ChaCha8Rng, dim: usize) -> DVector<f64> {
    DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal))
}

pub fn nonzero_vector(rng: &mut ChaCha8Rng, dim: usize) -> DVector<f64> {
    loop {
        let v = gaussian_vector(rng, dim);
        if v.amax() > 1e-6 {
            return v;
        }
    }
}

/// Strictly positive weights, log-uniform in [1/4, 4].
pub fn random_weights(rng: &mut ChaCha8Rng, dim: usize) -> DVector<f64> {
    DVector::from_fn(dim, |_, _| {
        let t: f64 = rng.random_range(-1.0..1.0);
        4.0f64.powf(t)
    })
}

/// Polyhedral rows: the identity block plus `dim` random unit rows — full
/// column rank by construction, with bounded conditioning.
pub fn random_polyhedral(rng: &mut ChaCha8Rng, dim: usize) -> NormSpec {
    let m = 2 * dim;
    let mut rows = DMatrix::zeros(m, dim);
    for k in 0..dim {
        rows[(k, k)] = 1.0;
    }
    for r in dim..m {
        let v = nonzero_vector(rng, dim);
        let unit = &v / v.norm();
        for k in 0..dim {
            rows[(r, k)] = unit[k];
        }
    }
    NormSpec::polyhedral(rows).expect("identity block guarantees full rank")
}

/// One space of every supported kind at this dimension: the five standard
/// exponents, weighted ℓ₂ and ℓ₁, and a random polyhedral norm.
pub fn spaces_all_kinds(rng: &mut ChaCha8Rng, dim: usize) -> Vec<NormSpec> {
    let mut out: Vec<NormSpec> = EXPONENTS
        .iter()
        .map(|&p| NormSpec::pnorm(dim, p).expect("positive dim"))
        .collect();
    out.push(
        NormSpec::weighted_pnorm(dim, Exponent::Finite(2.0), random_weights(rng, dim))
            .expect("positive weights"),
    );
    out.push(
        NormSpec::weighted_pnorm(dim, Exponent::Finite(1.0), random_weights(rng, dim))
            .expect("positive weights"),
    );
    out.push(random_polyhedral(rng, dim));
    out
}

/// `count` jointly well-conditioned constraint vectors (σ_min > 0.1·σ_max)
/// paired with values in (−2, 2).
pub fn random_constraints(
    rng: &mut ChaCha8Rng,
    dim: usize,
    count: usize,
) -> Vec<(DVector<f64>, f64)> {
    loop {
        let vectors: Vec<DVector<f64>> = (0..count).map(|_| nonzero_vector(rng, dim)).collect();
        let m = DMatrix::from_fn(count, dim, |i, j| vectors[i][j]);
        let sv = m.svd(false, false).singular_values;
        if sv.min() > 0.1 * sv.max() {
            return vectors.into_iter().map(|v| (v, rng.random_range(-2.0..2.0))).collect();
        }
    }
}
