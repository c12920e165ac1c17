//! Face effects and pure orthogonal projectors built from a Jordan frame.
//!
//! For a frame `{p_1, …, p_d}` and an index set `I`, the face effect is
//! `a_I = Σ_{i∈I} p_i†` and the projector `P_I` is the compression
//! `U_{p_I}` by the idempotent `p_I = Σ_{i∈I} p_i`. Index sets are 0-based.

use crate::eja::{self, AlgebraKind, JordanElement};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::sampling;
use crate::system::Effect;

/// Largest rank for which the full subset lattice is enumerated.
pub const MAX_LATTICE_RANK: usize = 12;

/// A linear map on one system, stored as its coordinate matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    kind: AlgebraKind,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(kind: AlgebraKind, matrix: Matrix) -> Result<Self> {
        let n = kind.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: matrix.rows().max(matrix.cols()),
            });
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite(0));
        }
        Ok(Self { kind, matrix })
    }

    pub fn identity(kind: AlgebraKind) -> Self {
        Self {
            kind,
            matrix: Matrix::identity(kind.dim()),
        }
    }

    pub fn zero(kind: AlgebraKind) -> Self {
        Self {
            kind,
            matrix: Matrix::zeros(kind.dim(), kind.dim()),
        }
    }

    /// Tabulates a linear function on the coordinate basis.
    pub fn from_fn(
        kind: AlgebraKind,
        f: impl Fn(&JordanElement) -> Result<JordanElement>,
    ) -> Result<Self> {
        let n = kind.dim();
        let columns = (0..n)
            .map(|j| f(&JordanElement::basis(kind, j)).map(JordanElement::into_coords))
            .collect::<Result<Vec<_>>>()?;
        Self::new(kind, Matrix::from_columns(n, &columns))
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &JordanElement) -> Result<JordanElement> {
        if x.kind() != self.kind {
            return Err(Error::KindMismatch {
                left: self.kind,
                right: x.kind(),
            });
        }
        Ok(JordanElement::from_raw(
            self.kind,
            self.matrix.mul_vec(x.coords()),
        ))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &LinearMap) -> Result<LinearMap> {
        self.same_kind(first)?;
        Ok(Self {
            kind: self.kind,
            matrix: self.matrix.mul(&first.matrix),
        })
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        self.same_kind(other)?;
        Ok(Self {
            kind: self.kind,
            matrix: self.matrix.add(&other.matrix),
        })
    }

    pub fn scale(&self, s: f64) -> LinearMap {
        Self {
            kind: self.kind,
            matrix: self.matrix.scale(s),
        }
    }

    /// Frobenius norm of `self − other`.
    pub fn distance(&self, other: &LinearMap) -> Result<f64> {
        self.same_kind(other)?;
        Ok(self.matrix.sub(&other.matrix).frobenius_norm())
    }

    fn same_kind(&self, other: &LinearMap) -> Result<()> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                left: self.kind,
                right: other.kind,
            })
        }
    }
}

/// A frame together with disjoint index sets over it.
#[derive(Debug, Clone, PartialEq)]
pub struct SlitPartition {
    frame: Vec<JordanElement>,
    subsets: Vec<Vec<usize>>,
}

impl SlitPartition {
    pub fn new(frame: Vec<JordanElement>, subsets: Vec<Vec<usize>>) -> Result<Self> {
        let d = frame.len();
        if d == 0 {
            return Err(Error::Empty("frame"));
        }
        let mut seen = vec![false; d];
        for set in &subsets {
            for &i in set {
                if i >= d {
                    return Err(Error::IndexOutOfRange { index: i, rank: d });
                }
                if seen[i] {
                    return Err(Error::OverlappingBlocks(i));
                }
                seen[i] = true;
            }
        }
        Ok(Self { frame, subsets })
    }

    pub fn frame(&self) -> &[JordanElement] {
        &self.frame
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Union of the blocks selected by `mask` (bit `j` selects block `j`).
    pub fn union(&self, mask: u32) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .subsets
            .iter()
            .enumerate()
            .filter(|(j, _)| mask & (1 << j) != 0)
            .flat_map(|(_, s)| s.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

fn check_indices(frame: &[JordanElement], indices: &[usize]) -> Result<AlgebraKind> {
    let first = frame.first().ok_or(Error::Empty("frame"))?;
    for &i in indices {
        if i >= frame.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: frame.len(),
            });
        }
    }
    Ok(first.kind())
}

fn normalized_set(indices: &[usize]) -> Vec<usize> {
    let mut v = indices.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// `p_I = Σ_{i∈I} p_i`
pub fn face_idempotent(frame: &[JordanElement], indices: &[usize]) -> Result<JordanElement> {
    let kind = check_indices(frame, indices)?;
    Ok(eja::sum(
        kind,
        normalized_set(indices).into_iter().map(|i| &frame[i]),
    ))
}

/// The face effect `a_I = Σ_{i∈I} p_i†`.
pub fn face_effect(frame: &[JordanElement], indices: &[usize]) -> Result<Effect> {
    Ok(Effect::unchecked(face_idempotent(frame, indices)?))
}

/// Applies `P_I` to one element without building the matrix.
pub fn apply_projector(
    frame: &[JordanElement],
    indices: &[usize],
    x: &JordanElement,
) -> Result<JordanElement> {
    let set = normalized_set(indices);
    if set.len() == frame.len() {
        check_indices(frame, &set)?;
        return Ok(x.clone());
    }
    let p = face_idempotent(frame, &set)?;
    eja::quadratic_rep(&p, x)
}

/// The orthogonal projector `P_I = U_{p_I}` as a coordinate matrix. The
/// full index set gives the identity exactly.
pub fn projector(frame: &[JordanElement], indices: &[usize]) -> Result<LinearMap> {
    let kind = check_indices(frame, indices)?;
    let set = normalized_set(indices);
    if set.len() == frame.len() {
        return Ok(LinearMap::identity(kind));
    }
    if set.is_empty() {
        return Ok(LinearMap::zero(kind));
    }
    let p = face_idempotent(frame, &set)?;
    LinearMap::from_fn(kind, |e| eja::quadratic_rep(&p, e))
}

/// Worst observed violations of the defining properties of `P_I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxiomReport {
    /// max ‖P_I ρ − ρ‖ over sampled ρ in the face `F_I`
    pub on_face: f64,
    /// max ‖P_I ρ‖ over sampled ρ orthogonal to `F_I`
    pub on_complement: f64,
    pub tol: f64,
}

impl AxiomReport {
    pub fn worst(&self) -> f64 {
        self.on_face.max(self.on_complement)
    }

    pub fn passed(&self) -> bool {
        self.worst() <= self.tol
    }
}

/// A normalized state in the face of `indices`: alternately a random
/// mixture of the frame members, or a compressed random state.
fn sample_in_face(
    frame: &[JordanElement],
    indices: &[usize],
    idempotent: &JordanElement,
    rng: &mut sampling::Rng,
    mixture: bool,
) -> Result<Option<JordanElement>> {
    let kind = idempotent.kind();
    if indices.is_empty() {
        return Ok(None);
    }
    if mixture {
        let w = sampling::random_simplex(indices.len(), rng);
        let members: Vec<JordanElement> = indices.iter().map(|&i| frame[i].clone()).collect();
        return Ok(Some(sampling::combine(kind, &w, &members)));
    }
    let rho = sampling::random_state(kind, rng);
    let compressed = eja::quadratic_rep(idempotent, &rho)?;
    let tr = compressed.trace();
    Ok((tr > 1e-12).then(|| compressed.scale(1.0 / tr)))
}

/// Samples states in `F_I` and in its orthogonal complement and reports
/// how far `P_I` is from fixing the former and annihilating the latter.
pub fn projector_axiom_check(
    frame: &[JordanElement],
    indices: &[usize],
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<AxiomReport> {
    let kind = check_indices(frame, indices)?;
    let set = normalized_set(indices);
    let complement: Vec<usize> = (0..frame.len()).filter(|i| !set.contains(i)).collect();
    let p = projector(frame, &set)?;
    let p_in = face_idempotent(frame, &set)?;
    let p_out = face_idempotent(frame, &complement)?;
    let mut rng = sampling::rng(seed);
    let mut report = AxiomReport {
        on_face: 0.0,
        on_complement: 0.0,
        tol,
    };
    debug_assert_eq!(kind, p_in.kind());
    for s in 0..samples {
        let mixture = s % 2 == 0;
        if let Some(rho) = sample_in_face(frame, &set, &p_in, &mut rng, mixture)? {
            let err = (&p.apply(&rho)? - &rho).norm();
            report.on_face = report.on_face.max(err);
        }
        if let Some(rho) = sample_in_face(frame, &complement, &p_out, &mut rng, mixture)? {
            report.on_complement = report.on_complement.max(p.apply(&rho)?.norm());
        }
    }
    Ok(report)
}

/// Worst residuals of the projector lattice laws over all subset pairs.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LatticeReport {
    /// ‖P_I² − P_I‖
    pub idempotence: f64,
    /// ‖P_I P_J − P_{I∩J}‖
    pub intersection: f64,
    /// ‖P_I P_J‖ for disjoint I, J
    pub disjoint: f64,
    /// ‖P_I − P_Iᵀ‖ (self-adjointness)
    pub symmetry: f64,
    /// max |⟨u, P_I e⟩ − ⟨a_I, e⟩| over coordinate basis vectors e
    pub normalization: f64,
}

impl LatticeReport {
    pub fn worst(&self) -> f64 {
        [
            self.idempotence,
            self.intersection,
            self.disjoint,
            self.symmetry,
            self.normalization,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Checks every law on every pair of subsets of the frame indices.
pub fn projector_lattice_check(frame: &[JordanElement]) -> Result<LatticeReport> {
    let d = frame.len();
    if d == 0 {
        return Err(Error::Empty("frame"));
    }
    if d > MAX_LATTICE_RANK {
        return Err(Error::InvalidKind(format!(
            "lattice check enumerates 4^d subset pairs; rank {d} exceeds {MAX_LATTICE_RANK}"
        )));
    }
    let kind = frame[0].kind();
    let u = eja::unit(kind);
    let subsets = 1u32 << d;
    let sets: Vec<Vec<usize>> = (0..subsets)
        .map(|mask| (0..d).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    let maps = sets
        .iter()
        .map(|s| projector(frame, s))
        .collect::<Result<Vec<_>>>()?;

    let mut r = LatticeReport::default();
    for (mask, p) in maps.iter().enumerate() {
        let m = p.matrix();
        r.idempotence = r.idempotence.max(m.mul(m).sub(m).frobenius_norm());
        r.symmetry = r.symmetry.max(m.sub(&m.transpose()).frobenius_norm());
        // uP_I as a covector is P_Iᵀ u
        let u_p = m.transpose().mul_vec(u.coords());
        let a = face_idempotent(frame, &sets[mask])?;
        let dev = u_p
            .iter()
            .zip(a.coords())
            .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()));
        r.normalization = r.normalization.max(dev);
        for (other, q) in maps.iter().enumerate() {
            let prod = m.mul(q.matrix());
            let meet = mask & other;
            r.intersection = r
                .intersection
                .max(prod.sub(maps[meet].matrix()).frobenius_norm());
            if meet == 0 {
                r.disjoint = r.disjoint.max(prod.frobenius_norm());
            }
        }
    }
    Ok(r)
}

/// Largest second eigenvalue of `P_I ψ` over seeded random pure states `ψ`
/// whose image has trace above `tol`. Zero means every image is a multiple
/// of a pure state. The image is not renormalized, so the residual is
/// absolute and does not amplify rounding in images of tiny trace.
pub fn purity_preservation_check(
    frame: &[JordanElement],
    indices: &[usize],
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<f64> {
    let kind = check_indices(frame, indices)?;
    let mut worst = 0.0_f64;
    for t in 0..trials {
        let mut rng = sampling::trial_rng(seed, t as u64);
        let psi = sampling::random_pure(kind, &mut rng);
        let image = apply_projector(frame, indices, &psi)?;
        let tr = image.trace();
        if tr <= tol {
            continue;
        }
        let ev = eja::eigenvalues(&image)?;
        if ev.len() > 1 {
            worst = worst.max(ev[1].abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_frame;

    #[test]
    fn face_effect_examples() {
        let kind = AlgebraKind::complex_hermitian(3).unwrap();
        let frame = random_frame(kind, 2);
        let full = face_effect(&frame, &[0, 1, 2]).unwrap();
        assert!((full.element() - &eja::unit(kind)).norm() < 1e-14);
        assert_eq!(face_effect(&frame, &[]).unwrap().element().norm(), 0.0);

        let diag: Vec<JordanElement> = (0..3).map(|i| JordanElement::basis(kind, i)).collect();
        let a = face_effect(&diag, &[0, 1]).unwrap();
        assert_eq!(&a.element().coords()[..3], &[1.0, 1.0, 0.0]);
        assert!(a.element().coords()[3..].iter().all(|c| *c == 0.0));

        assert!(matches!(
            face_effect(&frame, &[3]),
            Err(Error::IndexOutOfRange { index: 3, rank: 3 })
        ));
    }

    #[test]
    fn projector_full_set_is_identity() {
        let kind = AlgebraKind::real_symmetric(3).unwrap();
        let frame = random_frame(kind, 4);
        assert_eq!(
            projector(&frame, &[2, 0, 1]).unwrap(),
            LinearMap::identity(kind)
        );
    }

    #[test]
    fn classical_projector_zeroes_outside() {
        let kind = AlgebraKind::classical(4).unwrap();
        let frame = random_frame(kind, 0);
        let p = projector(&frame, &[1, 3]).unwrap();
        let x = JordanElement::new(kind, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(p.apply(&x).unwrap().coords(), &[0.0, 2.0, 0.0, 4.0]);
    }

    #[test]
    fn axiom_check_classical_is_exact() {
        let kind = AlgebraKind::classical(3).unwrap();
        let frame = random_frame(kind, 0);
        for set in [vec![0], vec![0, 2], vec![1, 2]] {
            let r = projector_axiom_check(&frame, &set, 50, 1, 0.0).unwrap();
            assert_eq!(r.worst(), 0.0);
            assert!(r.passed());
        }
    }

    #[test]
    fn axiom_check_qutrit_and_quaternionic() {
        let q3 = AlgebraKind::complex_hermitian(3).unwrap();
        let r = projector_axiom_check(&random_frame(q3, 8), &[0, 1], 100, 3, 1e-10).unwrap();
        assert!(r.passed(), "{r:?}");
        let h3 = AlgebraKind::quaternionic_hermitian(3).unwrap();
        let r = projector_axiom_check(&random_frame(h3, 8), &[1], 100, 3, 1e-9).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn lattice_checks() {
        let c3 = AlgebraKind::classical(3).unwrap();
        assert_eq!(
            projector_lattice_check(&random_frame(c3, 0))
                .unwrap()
                .worst(),
            0.0
        );
        let q3 = AlgebraKind::complex_hermitian(3).unwrap();
        let r = projector_lattice_check(&random_frame(q3, 12)).unwrap();
        assert!(r.worst() <= 1e-10, "{r:?}");
        let r4 = AlgebraKind::real_symmetric(4).unwrap();
        let r = projector_lattice_check(&random_frame(r4, 12)).unwrap();
        assert!(r.worst() <= 1e-9, "{r:?}");
    }

    #[test]
    fn purity_preservation() {
        let q3 = AlgebraKind::complex_hermitian(3).unwrap();
        let f = random_frame(q3, 21);
        assert!(purity_preservation_check(&f, &[0, 2], 200, 4, 1e-9).unwrap() <= 1e-9);
        let c = AlgebraKind::classical(4).unwrap();
        assert_eq!(
            purity_preservation_check(&random_frame(c, 0), &[0, 1], 50, 4, 1e-9).unwrap(),
            0.0
        );
        let s4 = AlgebraKind::spin_factor(4).unwrap();
        assert!(
            purity_preservation_check(&random_frame(s4, 2), &[0], 100, 4, 1e-9).unwrap() <= 1e-9
        );
    }

    #[test]
    fn partition_validation() {
        let kind = AlgebraKind::classical(3).unwrap();
        let frame = random_frame(kind, 0);
        assert!(SlitPartition::new(frame.clone(), vec![vec![0], vec![1, 2]]).is_ok());
        assert_eq!(
            SlitPartition::new(frame.clone(), vec![vec![0, 1], vec![1]]),
            Err(Error::OverlappingBlocks(1))
        );
        assert!(matches!(
            SlitPartition::new(frame, vec![vec![5]]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }
}
