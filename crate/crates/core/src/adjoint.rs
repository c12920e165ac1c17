//! Norms, fidelity and adjoints.
//!
//! The operational norm of `ξ` is the 1-norm of its spectrum and the dagger
//! norm the 2-norm, which in orthonormal coordinates is the Euclidean norm
//! of the coordinate vector. The adjoint of a linear map with respect to
//! the self-dualising inner product is the transpose of its coordinate
//! matrix.

use crate::eja::{self, AlgebraKind, JordanElement};
use crate::error::{Error, Result};
use crate::projectors::LinearMap;
use crate::quat::{Quat, QuatMatrix, QuatVector};
use crate::sampling;
use crate::system::{State, SystemModel};

/// Slack used when comparing the two norms.
pub const NORM_SLACK: f64 = 1e-10;

/// Number of sampled states used by [`channel_classify`].
pub const CHANNEL_SAMPLES: usize = 200;

/// Both norms of an element and whether `‖ξ‖_† ≤ ‖ξ‖ ≤ √d ‖ξ‖_†` holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport {
    pub one_norm: f64,
    pub two_norm: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl NormReport {
    pub fn bounds_hold(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// `‖ξ‖ = Σ |λᵢ|`
pub fn operational_norm(x: &JordanElement) -> Result<f64> {
    eja::trace_norm(x)
}

/// `‖ξ‖_† = √(Σ λᵢ²)`, the Euclidean norm of the coordinates.
pub fn dagger_norm(x: &JordanElement) -> f64 {
    x.norm()
}

pub fn norm_report(x: &JordanElement) -> Result<NormReport> {
    let one_norm = operational_norm(x)?;
    let two_norm = dagger_norm(x);
    let d = x.kind().rank() as f64;
    Ok(NormReport {
        one_norm,
        two_norm,
        lower_ok: two_norm <= one_norm + NORM_SLACK,
        upper_ok: one_norm <= d.sqrt() * two_norm + NORM_SLACK,
    })
}

/// `I(ρ) = (tr ρ)² − ‖ρ‖_†²`
pub fn impurity(rho: &State) -> f64 {
    let tr = rho.trace();
    tr * tr - dagger_norm(rho.element()).powi(2)
}

/// `F_†(ρ, σ) = ⟨ρ, σ⟩ / (‖ρ‖_† ‖σ‖_†)`
pub fn dagger_fidelity(rho: &State, sigma: &State) -> Result<f64> {
    let nr = dagger_norm(rho.element());
    let ns = dagger_norm(sigma.element());
    if nr == 0.0 || ns == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(eja::trace_inner_product(rho.element(), sigma.element())? / (nr * ns))
}

fn complex_kron(a: &QuatMatrix, b: &QuatMatrix) -> QuatMatrix {
    let (n, m) = (a.n(), b.n());
    QuatMatrix::from_fn(n * m, |r, s| a.get(r / m, s / m) * b.get(r % m, s % m))
}

/// Tensor product within the catalog: classical ⊗ classical (coordinate
/// Kronecker product) and complex Hermitian ⊗ complex Hermitian (matrix
/// Kronecker product).
pub fn tensor(a: &JordanElement, b: &JordanElement) -> Result<JordanElement> {
    match (a.kind(), b.kind()) {
        (AlgebraKind::Classical { d: d1 }, AlgebraKind::Classical { d: d2 }) => {
            let kind = AlgebraKind::classical(d1 * d2)
                .map_err(|_| Error::UnsupportedTensor(format!("classical({})", d1 * d2)))?;
            let coords = a
                .coords()
                .iter()
                .flat_map(|x| b.coords().iter().map(move |y| x * y))
                .collect();
            JordanElement::new(kind, coords)
        }
        (AlgebraKind::ComplexHermitian { n: n1 }, AlgebraKind::ComplexHermitian { n: n2 }) => {
            let kind = AlgebraKind::complex_hermitian(n1 * n2)
                .map_err(|_| Error::UnsupportedTensor(format!("complex_hermitian({})", n1 * n2)))?;
            let m = complex_kron(
                &a.to_matrix().expect("matrix"),
                &b.to_matrix().expect("matrix"),
            );
            JordanElement::from_matrix(kind, &m)
        }
        (ka, kb) => Err(Error::UnsupportedTensor(format!("{ka} ⊗ {kb}"))),
    }
}

/// `|F(ρ₁⊗ρ₂, σ₁⊗σ₂) − F(ρ₁,σ₁) F(ρ₂,σ₂)|`
pub fn fidelity_multiplicativity_check(
    rho1: &State,
    sigma1: &State,
    rho2: &State,
    sigma2: &State,
) -> Result<f64> {
    let joint_rho = State::unchecked(tensor(rho1.element(), rho2.element())?);
    let joint_sigma = State::unchecked(tensor(sigma1.element(), sigma2.element())?);
    let lhs = dagger_fidelity(&joint_rho, &joint_sigma)?;
    let rhs = dagger_fidelity(rho1, sigma1)? * dagger_fidelity(rho2, sigma2)?;
    Ok((lhs - rhs).abs())
}

/// The adjoint `L†`: the transpose of the coordinate matrix.
pub fn adjoint_map(l: &LinearMap) -> LinearMap {
    LinearMap::new(l.kind(), l.matrix().transpose()).expect("transpose keeps the shape")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjointLawReport {
    /// ‖(A†)† − A‖
    pub involution: f64,
    /// ‖(BA)† − A†B†‖
    pub composition: f64,
}

pub fn adjoint_law_check(a: &LinearMap, b: &LinearMap) -> Result<AdjointLawReport> {
    let involution = adjoint_map(&adjoint_map(a)).distance(a)?;
    let ba = b.after(a)?;
    let composition = adjoint_map(&ba).distance(&adjoint_map(a).after(&adjoint_map(b))?)?;
    Ok(AdjointLawReport {
        involution,
        composition,
    })
}

/// `‖U† − U⁻¹‖` for a reversible map.
pub fn reversible_residual(u: &LinearMap) -> Result<f64> {
    let inv = u.matrix().inverse()?;
    Ok(adjoint_map(u).matrix().sub(&inv).frobenius_norm())
}

/// The map `X ↦ W X Wᴴ` for a matrix kind, with `W` given by its columns.
pub fn conjugation_map(kind: AlgebraKind, columns: &[QuatVector]) -> Result<LinearMap> {
    if !kind.is_matrix() {
        return Err(Error::InvalidKind(format!(
            "{kind} has no matrix conjugations"
        )));
    }
    let n = kind.size();
    if columns.len() != n || columns.iter().any(|c| c.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: columns.len(),
        });
    }
    let w = QuatMatrix::from_fn(n, |r, s| columns[s].0[r]);
    let wh = w.adjoint();
    LinearMap::from_fn(kind, |x| {
        let m = x.to_matrix().expect("matrix kind");
        JordanElement::from_matrix(kind, &w.mul(&m).mul(&wh))
    })
}

/// Conjugation by a seeded random orthogonal, unitary or symplectic matrix.
pub fn random_conjugation(kind: AlgebraKind, seed: u64) -> Result<LinearMap> {
    let k = kind
        .field_dim()
        .ok_or_else(|| Error::InvalidKind(format!("{kind} has no matrix conjugations")))?;
    let mut rng = sampling::rng(seed);
    let basis = sampling::random_field_basis(kind.size(), k, &mut rng);
    conjugation_map(kind, &basis)
}

/// A unit vector `v` with `p = v vᴴ`, read off the largest column of `p`.
fn vector_of_idempotent(p: &JordanElement) -> QuatVector {
    let m = p.to_matrix().expect("matrix kind");
    let n = m.n();
    let j = (0..n)
        .max_by(|&a, &b| m.get(a, a).re().total_cmp(&m.get(b, b).re()))
        .expect("non-empty matrix");
    let scale = 1.0 / m.get(j, j).re().sqrt();
    QuatVector((0..n).map(|r| m.get(r, j).scale(scale)).collect())
}

/// The reversible map sending `frame[i]` to `frame[perm[i]]`.
pub fn frame_permutation(frame: &[JordanElement], perm: &[usize]) -> Result<LinearMap> {
    let d = frame.len();
    let first = frame.first().ok_or(Error::Empty("frame"))?;
    let kind = first.kind();
    let mut seen = vec![false; d];
    if perm.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: perm.len(),
        });
    }
    for &p in perm {
        if p >= d || seen[p] {
            return Err(Error::Descriptor(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    match kind {
        AlgebraKind::Classical { .. } => LinearMap::from_fn(kind, |x| {
            let mut c = vec![0.0; d];
            for (i, &p) in perm.iter().enumerate() {
                c[p] = x.coords()[i];
            }
            JordanElement::new(kind, c)
        }),
        AlgebraKind::SpinFactor { .. } => {
            if perm[0] == 0 {
                return Ok(LinearMap::identity(kind));
            }
            // reflection of the vector part along the frame axis
            let (_, axis) = frame[0].spin_parts().expect("spin kind");
            let norm = crate::linalg::norm2(&axis);
            let axis: Vec<f64> = axis.iter().map(|c| c / norm).collect();
            LinearMap::from_fn(kind, |x| {
                let (t, v) = x.spin_parts().expect("spin kind");
                let proj = crate::linalg::dot(&v, &axis);
                let reflected: Vec<f64> = v
                    .iter()
                    .zip(&axis)
                    .map(|(a, b)| a - 2.0 * proj * b)
                    .collect();
                JordanElement::from_spin(kind, t, &reflected)
            })
        }
        _ => {
            let n = kind.size();
            let vectors: Vec<QuatVector> = frame.iter().map(vector_of_idempotent).collect();
            // W = Σᵢ v_{π(i)} v_iᴴ, as columns W e_s
            let columns: Vec<QuatVector> = (0..n)
                .map(|s| {
                    let mut col = vec![Quat::ZERO; n];
                    for (i, &p) in perm.iter().enumerate() {
                        let coeff = vectors[i].0[s].conj();
                        for (r, slot) in col.iter_mut().enumerate() {
                            *slot += vectors[p].0[r] * coeff;
                        }
                    }
                    QuatVector(col)
                })
                .collect();
            conjugation_map(kind, &columns)
        }
    }
}

/// Classification of a channel by [`channel_classify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelClass {
    /// `C χ = χ`
    pub unital: bool,
    /// `C†` maps every sampled state to a (sub)normalized state.
    pub dagger_physical: bool,
    /// For unital channels, `max (‖Cρ‖_† − ‖ρ‖_†)` over sampled states.
    pub max_norm_increase: Option<f64>,
}

fn is_physical_state(x: &JordanElement, tol: f64) -> bool {
    eja::cone_contains(x, tol) && x.trace() <= 1.0 + tol
}

/// Samples states: pure and mixed ones from seeded streams, plus the top
/// eigenvector idempotent of `C χ`.
fn probe_states(kind: AlgebraKind, seed: u64, extra: Option<JordanElement>) -> Vec<JordanElement> {
    let mut out: Vec<JordanElement> = (0..CHANNEL_SAMPLES)
        .map(|t| {
            let mut rng = sampling::trial_rng(seed, t as u64);
            if t % 2 == 0 {
                sampling::random_pure(kind, &mut rng)
            } else {
                sampling::random_state(kind, &mut rng)
            }
        })
        .collect();
    out.extend(extra);
    out
}

/// Checks that `c` is a channel on seeded samples and classifies it.
pub fn channel_classify(c: &LinearMap, tol: f64, seed: u64) -> Result<ChannelClass> {
    let kind = c.kind();
    let system = SystemModel::new(kind)?;
    let chi = system.invariant_state().element().clone();
    let c_chi = c.apply(&chi)?;
    let top = eja::spectral_decompose(&c_chi, eja::DEFAULT_TOL)?.frame[0].clone();
    let probes = probe_states(kind, seed, Some(top));

    for rho in &probes {
        let image = c.apply(rho)?;
        if !eja::cone_contains(&image, tol) {
            return Err(Error::NotAChannel("maps a state outside the cone".into()));
        }
        if (image.trace() - rho.trace()).abs() > tol {
            return Err(Error::NotAChannel(
                "does not preserve the unit effect".into(),
            ));
        }
    }

    let unital = (&c_chi - &chi).norm() <= tol;
    let adjoint = adjoint_map(c);
    let mut dagger_physical = true;
    for rho in &probes {
        if !is_physical_state(&adjoint.apply(rho)?, tol) {
            dagger_physical = false;
            break;
        }
    }
    let max_norm_increase = if unital {
        let mut worst = f64::NEG_INFINITY;
        for rho in &probes {
            worst = worst.max(dagger_norm(&c.apply(rho)?) - dagger_norm(rho));
        }
        Some(worst)
    } else {
        None
    };
    Ok(ChannelClass {
        unital,
        dagger_physical,
        max_norm_increase,
    })
}

/// The channel `x ↦ ⟨u, x⟩ σ` that prepares `σ` regardless of the input.
pub fn constant_channel(sigma: &JordanElement) -> Result<LinearMap> {
    let kind = sigma.kind();
    let u = eja::unit(kind);
    LinearMap::from_fn(kind, |x| Ok(sigma.scale(eja::trace_inner_product(&u, x)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::sampling::random_frame;

    fn qubit() -> AlgebraKind {
        AlgebraKind::complex_hermitian(2).unwrap()
    }

    fn pauli_x() -> JordanElement {
        let m = QuatMatrix::from_fn(2, |r, s| Quat::real(if r != s { 1.0 } else { 0.0 }));
        JordanElement::from_matrix(qubit(), &m).unwrap()
    }

    #[test]
    fn operational_norm_examples() {
        let sys = SystemModel::new(AlgebraKind::quaternionic_hermitian(2).unwrap()).unwrap();
        let mut rng = sampling::rng(0);
        let rho = sampling::random_state(sys.kind(), &mut rng);
        assert!((operational_norm(&rho).unwrap() - 1.0).abs() < 1e-12);
        let c = AlgebraKind::classical(2).unwrap();
        let x = JordanElement::new(c, vec![1.0, -1.0]).unwrap();
        assert_eq!(operational_norm(&x).unwrap(), 2.0);
        assert!((operational_norm(&pauli_x()).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn dagger_norm_examples() {
        let kind = AlgebraKind::complex_hermitian(3).unwrap();
        let f = random_frame(kind, 1);
        assert!((dagger_norm(&f[0]) - 1.0).abs() < 1e-14);
        let chi = SystemModel::new(kind).unwrap().invariant_state();
        assert!((dagger_norm(chi.element()) - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let c = AlgebraKind::classical(2).unwrap();
        assert_eq!(
            dagger_norm(&JordanElement::new(c, vec![3.0, 4.0]).unwrap()),
            5.0
        );
    }

    #[test]
    fn impurity_examples() {
        let f = random_frame(qubit(), 4);
        assert!(impurity(&State::unchecked(f[0].clone())).abs() < 1e-14);
        let chi = SystemModel::new(qubit()).unwrap().invariant_state();
        assert!((impurity(&chi) - 0.5).abs() < 1e-15);
        assert!(impurity(&State::unchecked(f[0].scale(0.5))).abs() < 1e-14);
    }

    #[test]
    fn fidelity_examples() {
        let f = random_frame(AlgebraKind::real_symmetric(3).unwrap(), 4);
        let a = State::unchecked(f[0].clone());
        let b = State::unchecked(f[1].clone());
        assert!((dagger_fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-14);
        assert!(dagger_fidelity(&a, &b).unwrap().abs() < 1e-14);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let zero = JordanElement::basis(qubit(), 0);
        let plus =
            JordanElement::from_matrix(qubit(), &QuatMatrix::from_fn(2, |_, _| Quat::real(0.5)))
                .unwrap();
        let fid =
            dagger_fidelity(&State::unchecked(zero.clone()), &State::unchecked(plus)).unwrap();
        assert!((fid - 0.5).abs() < 1e-15, "{s}");
        let zero_state = State::unchecked(JordanElement::zeros(qubit()));
        assert_eq!(
            dagger_fidelity(&zero_state, &State::unchecked(zero)),
            Err(Error::ZeroNorm)
        );
    }

    #[test]
    fn multiplicativity() {
        let c = AlgebraKind::classical(2).unwrap();
        let st = |v: Vec<f64>| State::unchecked(JordanElement::new(c, v).unwrap());
        let r = fidelity_multiplicativity_check(
            &st(vec![0.25, 0.75]),
            &st(vec![0.5, 0.5]),
            &st(vec![1.0, 0.0]),
            &st(vec![0.125, 0.875]),
        )
        .unwrap();
        assert!(r <= 1e-15);

        let mut rng = sampling::rng(9);
        let mut draw = || State::unchecked(sampling::random_state(qubit(), &mut rng));
        let (r1, s1, r2) = (draw(), draw(), draw());
        assert!(fidelity_multiplicativity_check(&r1, &s1, &r2, &r2.clone()).unwrap() <= 1e-12);

        let rs = State::unchecked(eja::unit(AlgebraKind::real_symmetric(2).unwrap()));
        assert!(matches!(
            fidelity_multiplicativity_check(&rs, &rs, &rs, &rs),
            Err(Error::UnsupportedTensor(_))
        ));
    }

    #[test]
    fn adjoint_examples() {
        let c3 = AlgebraKind::classical(3).unwrap();
        let frame = random_frame(c3, 0);
        let cyc = frame_permutation(&frame, &[1, 2, 0]).unwrap();
        let inv = frame_permutation(&frame, &[2, 0, 1]).unwrap();
        assert_eq!(adjoint_map(&cyc), inv);

        let q3 = AlgebraKind::complex_hermitian(3).unwrap();
        let u = random_conjugation(q3, 5).unwrap();
        assert!(reversible_residual(&u).unwrap() <= 1e-10);

        let f = random_frame(q3, 6);
        let p = crate::projectors::projector(&f, &[0, 2]).unwrap();
        assert!(adjoint_map(&p).distance(&p).unwrap() <= 1e-12);

        let id = LinearMap::identity(q3);
        let r = adjoint_law_check(&id, &id).unwrap();
        assert_eq!((r.involution, r.composition), (0.0, 0.0));
    }

    #[test]
    fn frame_permutations_move_frames() {
        for kind in [
            AlgebraKind::complex_hermitian(3).unwrap(),
            AlgebraKind::quaternionic_hermitian(3).unwrap(),
            AlgebraKind::spin_factor(3).unwrap(),
        ] {
            let frame = random_frame(kind, 17);
            let perm: Vec<usize> = (0..frame.len()).rev().collect();
            let u = frame_permutation(&frame, &perm).unwrap();
            for (i, p) in frame.iter().enumerate() {
                let moved = u.apply(p).unwrap();
                assert!((&moved - &frame[perm[i]]).norm() < 1e-12, "{kind}");
            }
            assert!(reversible_residual(&u).unwrap() < 1e-10, "{kind}");
        }
    }

    #[test]
    fn channel_examples() {
        let c3 = AlgebraKind::classical(3).unwrap();
        let frame = random_frame(c3, 0);
        let a = frame_permutation(&frame, &[1, 2, 0]).unwrap();
        let b = frame_permutation(&frame, &[0, 2, 1]).unwrap();
        let mix = a.scale(0.3).add(&b.scale(0.7)).unwrap();
        let class = channel_classify(&mix, 1e-9, 0).unwrap();
        assert!(class.unital && class.dagger_physical);
        assert!(class.max_norm_increase.unwrap() <= 1e-9);

        let q3 = AlgebraKind::complex_hermitian(3).unwrap();
        let u = random_conjugation(q3, 2).unwrap();
        let class = channel_classify(&u, 1e-9, 0).unwrap();
        assert!(class.unital && class.dagger_physical);
        assert!(class.max_norm_increase.unwrap().abs() <= 1e-9);

        let chi = SystemModel::new(qubit()).unwrap().invariant_state();
        let to_chi = constant_channel(chi.element()).unwrap();
        let class = channel_classify(&to_chi, 1e-9, 0).unwrap();
        assert!(class.unital);
        let pure = random_frame(qubit(), 3).swap_remove(0);
        let out = to_chi.apply(&pure).unwrap();
        assert!((dagger_norm(&out) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);

        let mut rng = sampling::rng(1);
        let sigma = sampling::random_state(q3, &mut rng);
        let class = channel_classify(&constant_channel(&sigma).unwrap(), 1e-9, 0).unwrap();
        assert!(!class.unital && !class.dagger_physical);
        assert_eq!(class.max_norm_increase, None);
    }

    #[test]
    fn non_channel_is_rejected() {
        let c2 = AlgebraKind::classical(2).unwrap();
        let flip =
            LinearMap::new(c2, Matrix::from_row_major(2, 2, vec![-1.0, 0.0, 0.0, 1.0])).unwrap();
        assert!(matches!(
            channel_classify(&flip, 1e-9, 0),
            Err(Error::NotAChannel(_))
        ));
    }
}
