//! The Sorkin interference hierarchy.
//!
//! An `n`-slit experiment fixes a frame, a grouping of frame indices into
//! `n` slits, a state `ρ` and an effect `E`. Blocking every slit outside a
//! subset `I` is modelled by the projector onto the union of the open
//! slits, so each subset contributes `v_I = (E | P_{∪I} ρ)` and
//!
//! ```text
//! I_n = Σ_{∅ ≠ I ⊆ {1..n}} (−1)^{n−|I|} v_I
//! ```
//!
//! The same alternating sum over projectors gives the defect map `D_n`;
//! `I_n = (E | D_n ρ)`, so `D_n = 0` rules out `n`-th order interference for
//! every state and effect at once.

use std::fmt;

use crate::eja::{self, AlgebraKind, JordanElement};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::projectors::{apply_projector, projector, LinearMap, SlitPartition};
use crate::sampling;
use crate::system::{pairing, Effect, State};

/// Largest slit count: subset keys are single digits `1..=9`.
pub const MAX_SLITS: usize = 9;

/// Slack factor between the third- and fourth-order tolerances in
/// [`hierarchy_check`] (the 4-slit sum has 15 terms).
pub const HIERARCHY_SLACK: f64 = 16.0;

/// Samples drawn per leg by [`hierarchy_check`].
pub const HIERARCHY_SAMPLES: usize = 100;

/// A subset of slits, bit `j` standing for slit `j + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u32);

impl Subset {
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// 1-based slit labels in ascending order.
    pub fn labels(self) -> Vec<usize> {
        (0..32)
            .filter(|j| self.0 & (1 << j) != 0)
            .map(|j| j + 1)
            .collect()
    }

    /// Parses a digit-string key such as `"13"` (slits 1 and 3).
    pub fn parse(key: &str, n: usize) -> Result<Subset> {
        let mut mask = 0u32;
        let mut last = 0;
        if key.is_empty() {
            return Err(Error::Descriptor("empty subset key".into()));
        }
        for ch in key.chars() {
            let label = ch
                .to_digit(10)
                .ok_or_else(|| Error::Descriptor(format!("subset key {key:?} has a non-digit")))?
                as usize;
            if label == 0 || label > n {
                return Err(Error::Descriptor(format!(
                    "subset key {key:?} names slit {label} outside 1..={n}"
                )));
            }
            if label <= last {
                return Err(Error::Descriptor(format!(
                    "subset key {key:?} must list slits in ascending order without repeats"
                )));
            }
            last = label;
            mask |= 1 << (label - 1);
        }
        Ok(Subset(mask))
    }

    /// All nonempty subsets of `n` slits, by size then lexicographically.
    pub fn canonical_order(n: usize) -> Vec<Subset> {
        let mut all: Vec<Subset> = (1..(1u32 << n)).map(Subset).collect();
        all.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.labels().cmp(&b.labels()))
        });
        all
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.labels() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Detection probabilities `v_I` for every nonempty subset of `n` slits.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueTable {
    n: usize,
    // indexed by mask - 1
    values: Vec<f64>,
}

impl ValueTable {
    /// Builds a table from `(subset, value)` entries; every nonempty subset
    /// must appear exactly once.
    pub fn from_entries(
        n: usize,
        entries: impl IntoIterator<Item = (Subset, f64)>,
    ) -> Result<Self> {
        if n == 0 || n > MAX_SLITS {
            return Err(Error::Descriptor(format!(
                "slit count {n} outside 1..={MAX_SLITS}"
            )));
        }
        let mut slots: Vec<Option<f64>> = vec![None; (1 << n) - 1];
        for (s, v) in entries {
            if s.is_empty() || s.0 >= (1 << n) {
                return Err(Error::Descriptor(format!(
                    "subset {s} is not a nonempty subset of {n} slits"
                )));
            }
            if !v.is_finite() {
                return Err(Error::Descriptor(format!(
                    "value for subset {s} is not finite"
                )));
            }
            let slot = &mut slots[s.0 as usize - 1];
            if slot.is_some() {
                return Err(Error::Descriptor(format!("duplicate subset {s}")));
            }
            *slot = Some(v);
        }
        let values = slots
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingSubset(Subset(i as u32 + 1).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, values })
    }

    /// Tabulates `f` on every nonempty subset.
    pub fn from_fn(n: usize, mut f: impl FnMut(Subset) -> Result<f64>) -> Result<Self> {
        let entries = (1..(1u32 << n))
            .map(|m| f(Subset(m)).map(|v| (Subset(m), v)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(n, entries)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: Subset) -> Option<f64> {
        if s.is_empty() {
            return None;
        }
        self.values.get(s.0 as usize - 1).copied()
    }

    /// Entries in canonical order.
    pub fn entries(&self) -> Vec<(Subset, f64)> {
        Subset::canonical_order(self.n)
            .into_iter()
            .map(|s| (s, self.values[s.0 as usize - 1]))
            .collect()
    }
}

/// `I_n = Σ_{∅≠I⊆{1..n}} (−1)^{n−|I|} v_I`, read from the first `n` slits
/// of the table.
pub fn sorkin_i(n: usize, table: &ValueTable) -> Result<f64> {
    if n == 0 || n > table.n {
        return Err(Error::MissingSubset(format!(
            "order {n} needs subsets of {n} slits, table has {}",
            table.n
        )));
    }
    let mut total = 0.0;
    for mask in 1..(1u32 << n) {
        let v = table
            .get(Subset(mask))
            .ok_or_else(|| Error::MissingSubset(Subset(mask).to_string()))?;
        let sign = if (n as u32 - mask.count_ones()).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        total += sign * v;
    }
    Ok(total)
}

/// All `n` slit experiment data.
#[derive(Debug, Clone)]
pub struct SlitExperiment {
    slits: SlitPartition,
    state: State,
    effect: Effect,
}

impl SlitExperiment {
    pub fn new(
        frame: Vec<JordanElement>,
        blocks: Vec<Vec<usize>>,
        state: State,
        effect: Effect,
        tol: f64,
    ) -> Result<Self> {
        if blocks.is_empty() || blocks.len() > MAX_SLITS {
            return Err(Error::Descriptor(format!(
                "need between 1 and {MAX_SLITS} slits, got {}",
                blocks.len()
            )));
        }
        if let Some(j) = blocks.iter().position(Vec::is_empty) {
            return Err(Error::Descriptor(format!("slit {} is empty", j + 1)));
        }
        let slits = SlitPartition::new(frame, blocks)?;
        let kind = slits.frame()[0].kind();
        for k in [state.kind(), effect.kind()] {
            if k != kind {
                return Err(Error::KindMismatch {
                    left: kind,
                    right: k,
                });
            }
        }
        if !state.is_normalized(tol) {
            return Err(Error::NotAState(format!(
                "experiment state must be normalized, trace is {}",
                state.trace()
            )));
        }
        Ok(Self {
            slits,
            state,
            effect,
        })
    }

    pub fn slit_count(&self) -> usize {
        self.slits.subsets().len()
    }

    pub fn frame(&self) -> &[JordanElement] {
        self.slits.frame()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        self.slits.subsets()
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn effect(&self) -> &Effect {
        &self.effect
    }

    pub fn kind(&self) -> AlgebraKind {
        self.state.kind()
    }
}

/// `v_I = (E | P_{∪_{j∈I} block_j} ρ)` for every nonempty subset of slits.
pub fn slit_values(exp: &SlitExperiment) -> Result<ValueTable> {
    let frame = exp.frame();
    ValueTable::from_fn(exp.slit_count(), |s| {
        let open = exp.slits.union(s.0);
        let image = apply_projector(frame, &open, exp.state.element())?;
        pairing(&exp.effect, &State::unchecked(image))
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceReport {
    pub table: ValueTable,
    /// `I_1, …, I_n`; `I_k` uses the first `k` slits.
    pub orders: Vec<f64>,
    /// `(k, ‖D_k‖)` for `k = 2..=n`.
    pub defect_norms: Vec<(usize, f64)>,
}

impl InterferenceReport {
    /// Recomputes the orders from the stored table.
    pub fn recompute_orders(&self) -> Result<Vec<f64>> {
        (1..=self.orders.len())
            .map(|k| sorkin_i(k, &self.table))
            .collect()
    }
}

/// Value table, `I_1..I_max_order`, and defect norms for an experiment.
pub fn interference_report(exp: &SlitExperiment, max_order: usize) -> Result<InterferenceReport> {
    let n = exp.slit_count();
    if max_order > n {
        return Err(Error::Descriptor(format!(
            "order {max_order} exceeds the {n} slits of the experiment"
        )));
    }
    let table = slit_values(exp)?;
    let orders = (1..=max_order)
        .map(|k| sorkin_i(k, &table))
        .collect::<Result<Vec<_>>>()?;
    let defect_norms = (2..=max_order)
        .map(|k| sorkin_defect_norm(exp.frame(), exp.blocks(), k).map(|v| (k, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(InterferenceReport {
        table,
        orders,
        defect_norms,
    })
}

/// `D_n = Σ_{∅≠I⊆{1..n}} (−1)^{n−|I|} P_{∪I}` over the first `n` blocks.
pub fn sorkin_defect_map(
    frame: &[JordanElement],
    blocks: &[Vec<usize>],
    n: usize,
) -> Result<LinearMap> {
    if n == 0 || n > blocks.len() {
        return Err(Error::InsufficientRank {
            rank: blocks.len(),
            order: n,
        });
    }
    let slits = SlitPartition::new(frame.to_vec(), blocks[..n].to_vec())?;
    let kind = frame[0].kind();
    let dim = kind.dim();
    let mut acc = Matrix::zeros(dim, dim);
    for mask in 1..(1u32 << n) {
        let sign = if (n as u32 - mask.count_ones()).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        let p = projector(frame, &slits.union(mask))?;
        acc.axpy(sign, p.matrix());
    }
    LinearMap::new(kind, acc)
}

/// Spectral norm of [`sorkin_defect_map`].
pub fn sorkin_defect_norm(frame: &[JordanElement], blocks: &[Vec<usize>], n: usize) -> Result<f64> {
    sorkin_defect_map(frame, blocks, n)?
        .matrix()
        .spectral_norm()
}

/// Groups `d` frame indices into `n` slits: singletons `{0}, …, {n−2}` and
/// a last slit holding the remaining indices.
pub fn default_blocks(d: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    if n == 0 || n > d {
        return Err(Error::InsufficientRank { rank: d, order: n });
    }
    let mut blocks: Vec<Vec<usize>> = (0..n - 1).map(|i| vec![i]).collect();
    blocks.push((n - 1..d).collect());
    Ok(blocks)
}

/// Best witness found by [`maximize_interference`].
#[derive(Debug, Clone)]
pub struct InterferenceSearch {
    /// Largest `|I_n|` found.
    pub best: f64,
    /// Signed `I_n` at the witness.
    pub value: f64,
    pub state: JordanElement,
    pub effect: JordanElement,
    pub frame: Vec<JordanElement>,
    pub blocks: Vec<Vec<usize>>,
}

/// Alternating exact ascent for `sup |(E | D_n ρ)|` over normalized states
/// and effects `0 ≤ E ≤ u`.
///
/// With `ρ` fixed the best effect is the projector onto the positive
/// eigenspace of `D_n ρ`; with `E` fixed the best state is a top
/// eigenvector idempotent of `D_nᵀ E`. Each trial draws a frame (slits from
/// [`default_blocks`]) and a starting state from its own seeded stream, and
/// runs the ascent for both signs of `D_n`.
pub fn maximize_interference(
    kind: AlgebraKind,
    n: usize,
    trials: usize,
    iters: usize,
    seed: u64,
) -> Result<InterferenceSearch> {
    let d = kind.rank();
    if n < 1 || d < n {
        return Err(Error::InsufficientRank { rank: d, order: n });
    }
    let mut best: Option<InterferenceSearch> = None;
    for t in 0..trials.max(1) {
        let mut rng = sampling::trial_rng(seed, t as u64);
        let frame = sampling::frame_from_rng(kind, &mut rng);
        let blocks = default_blocks(d, n)?;
        let defect = sorkin_defect_map(&frame, &blocks, n)?;
        let adjoint = LinearMap::new(kind, defect.matrix().transpose())?;
        let start = sampling::random_state(kind, &mut rng);
        for sign in [1.0, -1.0] {
            let mut rho = start.clone();
            let mut effect = JordanElement::zeros(kind);
            for _ in 0..iters.max(1) {
                let image = defect.apply(&rho)?.scale(sign);
                effect = eja::spectral_decompose(&image, eja::DEFAULT_TOL)?
                    .spectral_projector(|l| l > 0.0);
                let back = adjoint.apply(&effect)?.scale(sign);
                let sd = eja::spectral_decompose(&back, eja::DEFAULT_TOL)?;
                rho = sd.frame[0].clone();
            }
            let value = eja::trace_inner_product(&effect, &defect.apply(&rho)?)?;
            if best.as_ref().is_none_or(|b| value.abs() > b.best) {
                best = Some(InterferenceSearch {
                    best: value.abs(),
                    value,
                    state: rho,
                    effect,
                    frame: frame.clone(),
                    blocks: blocks.clone(),
                });
            }
        }
    }
    Ok(best.expect("at least one trial"))
}

/// Outcome of [`hierarchy_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HierarchyReport {
    pub max_i3: f64,
    pub max_i4: f64,
    pub tol: f64,
}

impl HierarchyReport {
    /// `max|I_3| ≤ tol` implies `max|I_4| ≤ 16 tol`.
    pub fn holds(&self) -> bool {
        self.max_i3 > self.tol || self.max_i4 <= HIERARCHY_SLACK * self.tol
    }
}

/// Samples seeded three- and four-slit experiments on `kind` and checks
/// that vanishing third-order interference comes with vanishing fourth
/// order. Needs rank at least 4.
pub fn hierarchy_check(kind: AlgebraKind, seed: u64, tol: f64) -> Result<HierarchyReport> {
    let d = kind.rank();
    if d < 4 {
        return Err(Error::InsufficientRank { rank: d, order: 4 });
    }
    let mut report = HierarchyReport {
        max_i3: 0.0,
        max_i4: 0.0,
        tol,
    };
    for t in 0..HIERARCHY_SAMPLES {
        let mut rng = sampling::trial_rng(seed, t as u64);
        let frame = sampling::frame_from_rng(kind, &mut rng);
        let rho = State::unchecked(sampling::random_state(kind, &mut rng));
        let e = Effect::unchecked(sampling::random_effect(kind, &mut rng));
        for n in [3, 4] {
            let exp = SlitExperiment::new(
                frame.clone(),
                default_blocks(d, n)?,
                rho.clone(),
                e.clone(),
                1e-9,
            )?;
            let v = sorkin_i(n, &slit_values(&exp)?)?.abs();
            if n == 3 {
                report.max_i3 = report.max_i3.max(v);
            } else {
                report.max_i4 = report.max_i4.max(v);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{Quat, QuatMatrix};
    use crate::sampling::random_frame;

    fn table(n: usize, f: impl Fn(Subset) -> f64) -> ValueTable {
        ValueTable::from_fn(n, |s| Ok(f(s))).unwrap()
    }

    #[test]
    fn sorkin_examples() {
        let t = table(2, |s| if s.len() == 2 { 1.0 } else { 0.25 });
        assert_eq!(sorkin_i(2, &t).unwrap(), 0.5);

        let p = [0.2, 0.5, 0.3];
        let additive = table(3, |s| s.labels().iter().map(|l| p[l - 1]).sum());
        assert!(sorkin_i(3, &additive).unwrap().abs() < 1e-15);

        let top = table(3, |s| if s.len() == 3 { 1.0 } else { 0.0 });
        assert_eq!(sorkin_i(3, &top).unwrap(), 1.0);
    }

    #[test]
    fn missing_subset_is_reported() {
        let entries = vec![(Subset(1), 0.5), (Subset(3), 1.0)];
        assert_eq!(
            ValueTable::from_entries(2, entries),
            Err(Error::MissingSubset("2".into()))
        );
        let t = table(2, |_| 0.0);
        assert!(matches!(sorkin_i(3, &t), Err(Error::MissingSubset(_))));
    }

    #[test]
    fn subset_keys() {
        assert_eq!(Subset::parse("13", 3).unwrap(), Subset(0b101));
        assert_eq!(Subset(0b101).to_string(), "13");
        assert!(Subset::parse("31", 3).is_err());
        assert!(Subset::parse("4", 3).is_err());
        assert!(Subset::parse("1a", 3).is_err());
        let order: Vec<String> = Subset::canonical_order(3)
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(order, ["1", "2", "3", "12", "13", "23", "123"]);
    }

    fn qubit_plus() -> JordanElement {
        let kind = AlgebraKind::complex_hermitian(2).unwrap();
        JordanElement::from_matrix(kind, &QuatMatrix::from_fn(2, |_, _| Quat::real(0.5))).unwrap()
    }

    fn diag_frame(kind: AlgebraKind) -> Vec<JordanElement> {
        (0..kind.rank())
            .map(|i| JordanElement::basis(kind, i))
            .collect()
    }

    #[test]
    fn qubit_two_slit_fixture() {
        let kind = AlgebraKind::complex_hermitian(2).unwrap();
        let plus = qubit_plus();
        let exp = SlitExperiment::new(
            diag_frame(kind),
            vec![vec![0], vec![1]],
            State::unchecked(plus.clone()),
            Effect::unchecked(plus),
            1e-12,
        )
        .unwrap();
        let t = slit_values(&exp).unwrap();
        assert!((t.get(Subset(0b11)).unwrap() - 1.0).abs() < 1e-15);
        assert!((t.get(Subset(0b01)).unwrap() - 0.25).abs() < 1e-15);
        assert!((t.get(Subset(0b10)).unwrap() - 0.25).abs() < 1e-15);
        let r = interference_report(&exp, 2).unwrap();
        assert!((r.orders[1] - 0.5).abs() < 1e-12);
        assert_eq!(r.recompute_orders().unwrap(), r.orders);
    }

    #[test]
    fn classical_two_slit() {
        let kind = AlgebraKind::classical(2).unwrap();
        let rho = JordanElement::new(kind, vec![0.5, 0.5]).unwrap();
        let exp = SlitExperiment::new(
            diag_frame(kind),
            vec![vec![0], vec![1]],
            State::unchecked(rho),
            Effect::unit(kind),
            1e-12,
        )
        .unwrap();
        let r = interference_report(&exp, 2).unwrap();
        assert_eq!(r.table.get(Subset(3)), Some(1.0));
        assert_eq!(r.table.get(Subset(1)), Some(0.5));
        assert_eq!(r.orders[1], 0.0);
        assert_eq!(r.defect_norms, vec![(2, 0.0)]);
    }

    #[test]
    fn state_in_one_slit() {
        let kind = AlgebraKind::complex_hermitian(3).unwrap();
        let frame = random_frame(kind, 5);
        let rho = State::unchecked(frame[0].clone());
        let mut rng = sampling::rng(1);
        let e = Effect::unchecked(sampling::random_effect(kind, &mut rng));
        let exp =
            SlitExperiment::new(frame, vec![vec![0], vec![1], vec![2]], rho, e, 1e-12).unwrap();
        let t = slit_values(&exp).unwrap();
        let v1 = t.get(Subset(1)).unwrap();
        for s in Subset::canonical_order(3) {
            let v = t.get(s).unwrap();
            if s.0 & 1 != 0 {
                assert!((v - v1).abs() < 1e-14);
            } else {
                assert!(v.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn defect_norm_examples() {
        let q3 = AlgebraKind::complex_hermitian(3).unwrap();
        let singletons = vec![vec![0], vec![1], vec![2]];
        assert!(sorkin_defect_norm(&random_frame(q3, 9), &singletons, 3).unwrap() <= 1e-9);

        let q2 = AlgebraKind::complex_hermitian(2).unwrap();
        let d2 = sorkin_defect_map(&diag_frame(q2), &[vec![0], vec![1]], 2).unwrap();
        // identity minus the two diagonal compressions: projection onto the
        // off-diagonal coordinates
        let mut expected = Matrix::zeros(4, 4);
        expected[(2, 2)] = 1.0;
        expected[(3, 3)] = 1.0;
        assert!(d2.matrix().sub(&expected).max_abs() < 1e-15);
        assert!((d2.matrix().spectral_norm().unwrap() - 1.0).abs() < 1e-12);

        let c3 = AlgebraKind::classical(3).unwrap();
        let f = random_frame(c3, 0);
        assert_eq!(sorkin_defect_norm(&f, &singletons, 3).unwrap(), 0.0);
        assert_eq!(
            sorkin_defect_norm(&f, &[vec![0, 1], vec![2]], 2).unwrap(),
            0.0
        );
    }

    #[test]
    fn maximizer_finds_qubit_optimum() {
        let q2 = AlgebraKind::complex_hermitian(2).unwrap();
        let s = maximize_interference(q2, 2, 10, 20, 0).unwrap();
        assert!(s.best >= 0.5 - 1e-6, "{}", s.best);
        let c2 = AlgebraKind::classical(2).unwrap();
        assert!(maximize_interference(c2, 2, 10, 5, 0).unwrap().best <= 1e-12);
        assert!(matches!(
            maximize_interference(q2, 3, 1, 1, 0),
            Err(Error::InsufficientRank { rank: 2, order: 3 })
        ));
    }

    #[test]
    fn hierarchy_examples() {
        let q4 = AlgebraKind::complex_hermitian(4).unwrap();
        assert!(hierarchy_check(q4, 0, 1e-9).unwrap().holds());
        let c4 = AlgebraKind::classical(4).unwrap();
        let r = hierarchy_check(c4, 0, 1e-9).unwrap();
        assert!(r.holds());
        assert!(r.max_i3 <= 1e-15 && r.max_i4 <= 1e-15);
        let q3 = AlgebraKind::complex_hermitian(3).unwrap();
        assert!(hierarchy_check(q3, 0, 1e-9).is_err());
    }
}
