//! Algebras read as operational systems: states, effects and the dagger.
//!
//! States and effects share the coordinate representation of
//! [`JordanElement`]. Because the coordinates are orthonormal for the
//! self-dualising inner product, the dagger that turns a state into its
//! effect (and back) is the identity on coordinates; only the role changes.

use crate::eja::{self, AlgebraKind, JordanElement, SpectralDecomposition};
use crate::error::{Error, Result};
use crate::sampling;

/// An algebra together with its rank, dimension and unit effect.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemModel {
    kind: AlgebraKind,
    unit: JordanElement,
}

impl SystemModel {
    pub fn new(kind: AlgebraKind) -> Result<Self> {
        let kind = kind.validated()?;
        Ok(Self {
            kind,
            unit: eja::unit(kind),
        })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    /// `d`, the size of a maximal set of perfectly distinguishable pure states.
    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    /// The deterministic effect `u`.
    pub fn unit(&self) -> &JordanElement {
        &self.unit
    }

    /// The unique invariant state `χ = u / d`.
    pub fn invariant_state(&self) -> State {
        State {
            element: self.unit.scale(1.0 / self.rank() as f64),
        }
    }

    /// A seeded pure maximal set (Jordan frame).
    pub fn random_frame(&self, seed: u64) -> Vec<JordanElement> {
        sampling::random_frame(self.kind, seed)
    }
}

/// A (possibly subnormalized) state.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    element: JordanElement,
}

impl State {
    /// Validates cone membership and `0 ≤ tr ρ ≤ 1` up to `tol`.
    pub fn new(element: JordanElement, tol: f64) -> Result<Self> {
        if !eja::cone_contains(&element, tol) {
            return Err(Error::NotAState("element is outside the cone".into()));
        }
        let tr = element.trace();
        if tr > 1.0 + tol {
            return Err(Error::NotAState(format!("trace {tr} exceeds 1")));
        }
        Ok(Self { element })
    }

    /// Wraps an element without validation. Used for daggers of effects,
    /// which can be supernormalized.
    pub fn unchecked(element: JordanElement) -> Self {
        Self { element }
    }

    pub fn element(&self) -> &JordanElement {
        &self.element
    }

    pub fn kind(&self) -> AlgebraKind {
        self.element.kind()
    }

    /// `(u | ρ)`
    pub fn trace(&self) -> f64 {
        self.element.trace()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.trace() - 1.0).abs() <= tol
    }

    /// The unique effect `ρ†` with `(ρ† | σ) = ⟨ρ, σ⟩`.
    pub fn dagger(&self) -> Effect {
        Effect {
            element: self.element.clone(),
        }
    }
}

/// An effect `0 ≤ e ≤ u`.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect {
    element: JordanElement,
}

impl Effect {
    /// Validates `0 ≤ e ≤ u` up to `tol`.
    pub fn new(element: JordanElement, tol: f64) -> Result<Self> {
        if !eja::cone_contains(&element, tol) {
            return Err(Error::NotAnEffect("element is outside the cone".into()));
        }
        let complement = &eja::unit(element.kind()) - &element;
        if !eja::cone_contains(&complement, tol) {
            return Err(Error::NotAnEffect("u - e is outside the cone".into()));
        }
        Ok(Self { element })
    }

    pub fn unchecked(element: JordanElement) -> Self {
        Self { element }
    }

    pub fn unit(kind: AlgebraKind) -> Self {
        Self {
            element: eja::unit(kind),
        }
    }

    pub fn element(&self) -> &JordanElement {
        &self.element
    }

    pub fn kind(&self) -> AlgebraKind {
        self.element.kind()
    }

    /// The vector `e†`; for `u` this is `d χ`, which is not a normalized state.
    pub fn dagger(&self) -> State {
        State {
            element: self.element.clone(),
        }
    }
}

/// The probability `(e | ρ)`. Not clamped; see [`clamp_probability`].
pub fn pairing(e: &Effect, rho: &State) -> Result<f64> {
    eja::trace_inner_product(&e.element, &rho.element)
}

/// Clamps a pairing value into `[0, 1]` for reporting.
pub fn clamp_probability(p: f64) -> f64 {
    p.clamp(0.0, 1.0)
}

/// Spectrum and frame of a normalized state; eigenvalues are clamped at 0.
pub fn diagonalize_state(rho: &State, tol: f64) -> Result<SpectralDecomposition> {
    if !rho.is_normalized(tol) {
        return Err(Error::NotAState(format!(
            "diagonalization needs a normalized state, trace is {}",
            rho.trace()
        )));
    }
    let mut sd = eja::spectral_decompose(&rho.element, tol)?;
    for l in &mut sd.eigenvalues {
        if *l < -tol {
            return Err(Error::NotAState(format!("negative eigenvalue {l}")));
        }
        *l = l.max(0.0);
    }
    Ok(sd)
}

/// Whether the spectrum of a normalized state is `(1, 0, …, 0)` within `tol`.
pub fn is_pure(rho: &State, tol: f64) -> bool {
    match eja::eigenvalues(&rho.element) {
        Ok(ev) => (ev[0] - 1.0).abs() <= tol && ev[1..].iter().all(|l| l.abs() <= tol),
        Err(_) => false,
    }
}

/// Gram-matrix test: the states are perfectly distinguishable iff every
/// off-diagonal `⟨ρᵢ, ρⱼ⟩` vanishes (within `tol`).
pub fn perfectly_distinguishable(states: &[State], tol: f64) -> Result<bool> {
    if states.is_empty() {
        return Err(Error::Empty("state list"));
    }
    for (i, a) in states.iter().enumerate() {
        for b in &states[i + 1..] {
            if pairing(&a.dagger(), b)?.abs() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For an element with an eigenvalue below `-tol`, the frame idempotent of
/// its most negative eigenvalue: a cone element `y` with `⟨x, y⟩ < 0`.
/// Returns `None` for elements of the cone.
pub fn self_duality_witness(x: &JordanElement, tol: f64) -> Result<Option<JordanElement>> {
    let sd = eja::spectral_decompose(x, eja::DEFAULT_TOL)?;
    let (idx, min) = sd
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(Error::Empty("spectrum"))?;
    if min >= -tol {
        return Ok(None);
    }
    Ok(Some(sd.frame[idx].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{Quat, QuatMatrix};

    fn qubit() -> AlgebraKind {
        AlgebraKind::complex_hermitian(2).unwrap()
    }

    fn ket_bra(kind: AlgebraKind, a: f64, b: f64) -> JordanElement {
        // |ψ><ψ| for real ψ = (a, b)
        let m = QuatMatrix::from_fn(2, |r, s| {
            let v = [a, b];
            Quat::real(v[r] * v[s])
        });
        JordanElement::from_matrix(kind, &m).unwrap()
    }

    #[test]
    fn system_model_invariants() {
        for kind in [
            AlgebraKind::classical(3).unwrap(),
            AlgebraKind::quaternionic_hermitian(2).unwrap(),
            AlgebraKind::spin_factor(4).unwrap(),
        ] {
            let sys = SystemModel::new(kind).unwrap();
            let d = sys.rank() as f64;
            let uu = eja::trace_inner_product(sys.unit(), sys.unit()).unwrap();
            assert!((uu - d).abs() < 1e-14, "{kind}");
        }
    }

    #[test]
    fn pairing_examples() {
        let sys = SystemModel::new(qubit()).unwrap();
        let chi = sys.invariant_state();
        let u = Effect::unit(qubit());
        assert!((pairing(&u, &chi).unwrap() - 1.0).abs() < 1e-15);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let zero = State::new(ket_bra(qubit(), 1.0, 0.0), 1e-12).unwrap();
        let plus = State::new(ket_bra(qubit(), s, s), 1e-12).unwrap();
        assert!((pairing(&zero.dagger(), &plus).unwrap() - 0.5).abs() < 1e-15);

        let frame = sys.random_frame(3);
        let a = State::new(frame[0].clone(), 1e-12).unwrap();
        let b = State::new(frame[1].clone(), 1e-12).unwrap();
        assert!(pairing(&a.dagger(), &b).unwrap().abs() < 1e-14);
        assert!((pairing(&a.dagger(), &a).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dagger_examples() {
        let kind = AlgebraKind::classical(3).unwrap();
        let sys = SystemModel::new(kind).unwrap();
        let u_dag = Effect::unit(kind).dagger();
        assert!((u_dag.trace() - 3.0).abs() < 1e-15);
        assert!((u_dag.element() - &sys.invariant_state().element().scale(3.0)).norm() < 1e-15);
        assert!(State::new(u_dag.element().clone(), 1e-9).is_err());

        let chi_dag = sys.invariant_state().dagger();
        assert!((chi_dag.element() - &sys.unit().scale(1.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn invariant_state_examples() {
        let c3 = SystemModel::new(AlgebraKind::classical(3).unwrap()).unwrap();
        for c in c3.invariant_state().element().coords() {
            assert!((c - 1.0 / 3.0).abs() < 1e-15);
        }
        let q = SystemModel::new(qubit()).unwrap();
        let m = q.invariant_state().element().to_matrix().unwrap();
        assert!(m.max_abs_diff(&QuatMatrix::identity(2).scale(0.5)) < 1e-15);
        let ev = eja::eigenvalues(q.invariant_state().element()).unwrap();
        assert!(ev.iter().all(|l| (l - 0.5).abs() < 1e-14));
    }

    #[test]
    fn diagonalize_examples() {
        let q3 = SystemModel::new(AlgebraKind::complex_hermitian(3).unwrap()).unwrap();
        let sd = diagonalize_state(&q3.invariant_state(), 1e-9).unwrap();
        assert!(sd.eigenvalues.iter().all(|l| (l - 1.0 / 3.0).abs() < 1e-14));

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = State::new(ket_bra(qubit(), s, s), 1e-12).unwrap();
        let sd = diagonalize_state(&plus, 1e-9).unwrap();
        assert!((sd.eigenvalues[0] - 1.0).abs() < 1e-14 && sd.eigenvalues[1].abs() < 1e-14);

        let k = AlgebraKind::classical(2).unwrap();
        let mix = State::new(JordanElement::new(k, vec![0.3, 0.7]).unwrap(), 1e-12).unwrap();
        assert_eq!(
            diagonalize_state(&mix, 1e-9).unwrap().eigenvalues,
            vec![0.7, 0.3]
        );

        let sub = State::new(JordanElement::new(k, vec![0.3, 0.2]).unwrap(), 1e-12).unwrap();
        assert!(matches!(
            diagonalize_state(&sub, 1e-9),
            Err(Error::NotAState(_))
        ));
    }

    #[test]
    fn purity_examples() {
        let kind = AlgebraKind::complex_hermitian(3).unwrap();
        let sys = SystemModel::new(kind).unwrap();
        let frame = sys.random_frame(11);
        let pure = State::new(frame[0].clone(), 1e-12).unwrap();
        assert!(is_pure(&pure, 1e-9));
        assert!(!is_pure(&sys.invariant_state(), 1e-9));
        let mixed = &frame[0].scale(0.99) + &sys.invariant_state().element().scale(0.01);
        assert!(!is_pure(&State::new(mixed, 1e-12).unwrap(), 1e-6));
    }

    #[test]
    fn distinguishability_examples() {
        let sys = SystemModel::new(qubit()).unwrap();
        let frame: Vec<State> = sys
            .random_frame(5)
            .into_iter()
            .map(|p| State::new(p, 1e-12).unwrap())
            .collect();
        assert!(perfectly_distinguishable(&frame, 1e-10).unwrap());

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let pair = [
            State::new(ket_bra(qubit(), 1.0, 0.0), 1e-12).unwrap(),
            State::new(ket_bra(qubit(), s, s), 1e-12).unwrap(),
        ];
        assert!(!perfectly_distinguishable(&pair, 1e-10).unwrap());
        assert!(perfectly_distinguishable(&pair[..1], 1e-10).unwrap());
        assert!(matches!(
            perfectly_distinguishable(&[], 1e-10),
            Err(Error::Empty(_))
        ));
    }

    #[test]
    fn effect_validation() {
        let k = AlgebraKind::classical(2).unwrap();
        assert!(Effect::new(JordanElement::new(k, vec![0.5, 1.0]).unwrap(), 1e-12).is_ok());
        assert!(Effect::new(JordanElement::new(k, vec![0.5, 1.5]).unwrap(), 1e-12).is_err());
        assert!(Effect::new(JordanElement::new(k, vec![-0.5, 0.5]).unwrap(), 1e-12).is_err());
    }

    #[test]
    fn witness_for_sigma_x() {
        let m = QuatMatrix::from_fn(2, |r, s| Quat::real(if r != s { 1.0 } else { 0.0 }));
        let sx = JordanElement::from_matrix(qubit(), &m).unwrap();
        let y = self_duality_witness(&sx, 1e-12).unwrap().unwrap();
        assert!(eja::cone_contains(&y, 1e-12));
        assert!((eja::trace_inner_product(&sx, &y).unwrap() + 1.0).abs() < 1e-14);
        assert!(self_duality_witness(&eja::unit(qubit()), 1e-12)
            .unwrap()
            .is_none());
    }
}
