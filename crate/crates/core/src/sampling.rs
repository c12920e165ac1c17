//! Seeded random elements, frames, states and effects.
//!
//! All randomness flows through [`Rng`], a ChaCha8 stream seeded from a
//! `u64`. Independent trials use [`trial_rng`], which selects a separate
//! stream per trial index so trials can run in any order.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::eja::{self, AlgebraKind, JordanElement};
use crate::quat::{orthonormalize_against, Quat, QuatVector};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(trial.wrapping_add(1));
    r
}

pub fn gaussian(rng: &mut Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Element with i.i.d. standard normal coordinates.
pub fn gaussian_element(kind: AlgebraKind, rng: &mut Rng) -> JordanElement {
    JordanElement::from_raw(kind, (0..kind.dim()).map(|_| gaussian(rng)).collect())
}

fn gaussian_field_vector(n: usize, field_dim: usize, rng: &mut Rng) -> QuatVector {
    QuatVector(
        (0..n)
            .map(|_| {
                let mut q = [0.0; 4];
                for slot in q.iter_mut().take(field_dim) {
                    *slot = gaussian(rng);
                }
                Quat(q)
            })
            .collect(),
    )
}

/// Orthonormal basis of `𝕂ⁿ` from Gram-Schmidt on Gaussian vectors; the
/// columns of a random orthogonal, unitary or symplectic matrix.
pub fn random_field_basis(n: usize, field_dim: usize, rng: &mut Rng) -> Vec<QuatVector> {
    let mut basis: Vec<QuatVector> = Vec::with_capacity(n);
    while basis.len() < n {
        let v = gaussian_field_vector(n, field_dim, rng);
        if let Some(w) = orthonormalize_against(&v, &basis, 1e-6) {
            basis.push(w);
        }
    }
    basis
}

fn unit_direction(m: usize, rng: &mut Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..m).map(|_| gaussian(rng)).collect();
        let r = crate::linalg::norm2(&v);
        if r > 1e-6 {
            return v.iter().map(|c| c / r).collect();
        }
    }
}

/// A seeded Jordan frame.
///
/// Classical kinds return the standard basis. Matrix kinds conjugate the
/// diagonal frame by a random orthogonal, unitary or symplectic matrix.
/// Spin factors return `½(1, ±v̂)` for a random direction `v̂`.
pub fn random_frame(kind: AlgebraKind, seed: u64) -> Vec<JordanElement> {
    frame_from_rng(kind, &mut rng(seed))
}

pub fn frame_from_rng(kind: AlgebraKind, rng: &mut Rng) -> Vec<JordanElement> {
    match kind {
        AlgebraKind::Classical { d } => (0..d).map(|i| JordanElement::basis(kind, i)).collect(),
        AlgebraKind::SpinFactor { m } => {
            let v = unit_direction(m, rng);
            let half: Vec<f64> = v.iter().map(|c| 0.5 * c).collect();
            let neg: Vec<f64> = half.iter().map(|c| -c).collect();
            vec![
                JordanElement::from_spin(kind, 0.5, &half).expect("spin kind"),
                JordanElement::from_spin(kind, 0.5, &neg).expect("spin kind"),
            ]
        }
        _ => {
            let k = kind.field_dim().expect("matrix kind");
            random_field_basis(kind.size(), k, rng)
                .iter()
                .map(|v| idempotent_from_vector(kind, v))
                .collect()
        }
    }
}

/// The primitive idempotent `v vᴴ` of a unit vector.
pub fn idempotent_from_vector(kind: AlgebraKind, v: &QuatVector) -> JordanElement {
    JordanElement::from_matrix(kind, &v.outer()).expect("matrix kind of matching order")
}

/// A random pure normalized state.
pub fn random_pure(kind: AlgebraKind, rng: &mut Rng) -> JordanElement {
    match kind {
        AlgebraKind::Classical { d } => JordanElement::basis(kind, rng.random_range(0..d)),
        _ => frame_from_rng(kind, rng).swap_remove(0),
    }
}

/// Random weights on the probability simplex (normalized exponentials).
pub fn random_simplex(len: usize, rng: &mut Rng) -> Vec<f64> {
    let w: Vec<f64> = (0..len)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = w.iter().sum();
    w.iter().map(|x| x / total).collect()
}

/// A random normalized (generally mixed) state: a random frame weighted
/// by a random probability vector.
pub fn random_state(kind: AlgebraKind, rng: &mut Rng) -> JordanElement {
    let frame = frame_from_rng(kind, rng);
    let p = random_simplex(frame.len(), rng);
    combine(kind, &p, &frame)
}

/// A random effect `0 ≤ E ≤ u`: a random frame with uniform weights in [0, 1].
pub fn random_effect(kind: AlgebraKind, rng: &mut Rng) -> JordanElement {
    let frame = frame_from_rng(kind, rng);
    let w: Vec<f64> = (0..frame.len()).map(|_| rng.random::<f64>()).collect();
    combine(kind, &w, &frame)
}

/// A random element of the cone of squares, `x ∘ x` for Gaussian `x`.
pub fn random_cone_element(kind: AlgebraKind, rng: &mut Rng) -> JordanElement {
    let x = gaussian_element(kind, rng);
    eja::jordan_product(&x, &x).expect("same kind")
}

pub fn combine(kind: AlgebraKind, weights: &[f64], items: &[JordanElement]) -> JordanElement {
    weights
        .iter()
        .zip(items)
        .fold(JordanElement::zeros(kind), |acc, (w, x)| {
            &acc + &x.scale(*w)
        })
}
