//! The catalog of Euclidean Jordan algebras.
//!
//! Every element is stored as a coordinate vector in a fixed orthonormal
//! basis of the trace form, so the trace inner product is the Euclidean dot
//! product and adjoints of linear maps are plain transposes.
//!
//! Bases per kind:
//!
//! * `Classical(d)`: the standard basis of ℝᵈ.
//! * matrix kinds of order `n` over a field of real dimension `k`
//!   (ℝ: 1, ℂ: 2, ℍ: 4): first the `n` diagonal units `E_rr`, then for each
//!   pair `r < s` (lexicographic) and each field unit `e_c`, the generator
//!   `(e_c E_rs + ē_c E_sr) / √2`.
//! * `SpinFactor(m)`: elements are pairs `(t, x⃗)` with `x⃗ ∈ ℝᵐ`; the basis is
//!   `(1, 0⃗)/√2` followed by `(0, e_i)/√2`. The trace of `(t, x⃗)` is `2t`
//!   (rank-2 normalization), so coordinates are `√2 · (t, x⃗)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{self, symmetric_eigen};
use crate::quat::{orthonormalize_against, Quat, QuatMatrix, QuatVector};

/// Default relative tolerance used throughout the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Relative width used to group numerically equal eigenvalues.
pub const CLUSTER_REL_WIDTH: f64 = 1e-8;

/// Largest supported rank of a matrix algebra.
pub const MAX_MATRIX_ORDER: usize = 8;

/// Largest supported ambient dimension of a spin factor.
pub const MAX_SPIN_AMBIENT: usize = 16;

/// Largest supported classical dimension.
pub const MAX_CLASSICAL_DIM: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// ℝᵈ with the componentwise product.
    Classical { d: usize },
    /// Real symmetric `n × n` matrices.
    RealSymmetric { n: usize },
    /// Complex Hermitian `n × n` matrices.
    ComplexHermitian { n: usize },
    /// Quaternionic Hermitian `n × n` matrices.
    QuaternionicHermitian { n: usize },
    /// The spin factor `ℝ ⊕ ℝᵐ`.
    SpinFactor { m: usize },
}

impl AlgebraKind {
    pub fn classical(d: usize) -> Result<Self> {
        Self::Classical { d }.validated()
    }

    pub fn real_symmetric(n: usize) -> Result<Self> {
        Self::RealSymmetric { n }.validated()
    }

    pub fn complex_hermitian(n: usize) -> Result<Self> {
        Self::ComplexHermitian { n }.validated()
    }

    pub fn quaternionic_hermitian(n: usize) -> Result<Self> {
        Self::QuaternionicHermitian { n }.validated()
    }

    pub fn spin_factor(m: usize) -> Result<Self> {
        Self::SpinFactor { m }.validated()
    }

    /// Checks the size parameter against the catalog limits.
    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            Self::Classical { d } => (1..=MAX_CLASSICAL_DIM).contains(&d),
            Self::RealSymmetric { n }
            | Self::ComplexHermitian { n }
            | Self::QuaternionicHermitian { n } => (2..=MAX_MATRIX_ORDER).contains(&n),
            Self::SpinFactor { m } => (2..MAX_SPIN_AMBIENT).contains(&m),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidKind(format!(
                "{self} is outside the supported sizes"
            )))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Classical { .. } => "classical",
            Self::RealSymmetric { .. } => "real_symmetric",
            Self::ComplexHermitian { .. } => "complex_hermitian",
            Self::QuaternionicHermitian { .. } => "quaternionic_hermitian",
            Self::SpinFactor { .. } => "spin_factor",
        }
    }

    /// The size parameter (`d`, `n` or `m`).
    pub fn size(&self) -> usize {
        match *self {
            Self::Classical { d } => d,
            Self::RealSymmetric { n }
            | Self::ComplexHermitian { n }
            | Self::QuaternionicHermitian { n } => n,
            Self::SpinFactor { m } => m,
        }
    }

    /// Number of elements in a Jordan frame.
    pub fn rank(&self) -> usize {
        match *self {
            Self::Classical { d } => d,
            Self::RealSymmetric { n }
            | Self::ComplexHermitian { n }
            | Self::QuaternionicHermitian { n } => n,
            Self::SpinFactor { .. } => 2,
        }
    }

    /// Real dimension of the algebra.
    pub fn dim(&self) -> usize {
        match *self {
            Self::Classical { d } => d,
            Self::RealSymmetric { n } => n * (n + 1) / 2,
            Self::ComplexHermitian { n } => n * n,
            Self::QuaternionicHermitian { n } => n * (2 * n - 1),
            Self::SpinFactor { m } => 1 + m,
        }
    }

    /// Real dimension of the scalar field for the matrix kinds.
    pub fn field_dim(&self) -> Option<usize> {
        match self {
            Self::RealSymmetric { .. } => Some(1),
            Self::ComplexHermitian { .. } => Some(2),
            Self::QuaternionicHermitian { .. } => Some(4),
            _ => None,
        }
    }

    /// Whether the kind is one of the three Hermitian matrix algebras.
    pub fn is_matrix(&self) -> bool {
        self.field_dim().is_some()
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.size())
    }
}

fn check_same(a: AlgebraKind, b: AlgebraKind) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::KindMismatch { left: a, right: b })
    }
}

/// An element of a catalogued algebra, in orthonormal coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanElement {
    kind: AlgebraKind,
    coords: Vec<f64>,
}

impl JordanElement {
    pub fn new(kind: AlgebraKind, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != kind.dim() {
            return Err(Error::DimensionMismatch {
                expected: kind.dim(),
                actual: coords.len(),
            });
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { kind, coords })
    }

    pub(crate) fn from_raw(kind: AlgebraKind, coords: Vec<f64>) -> Self {
        debug_assert_eq!(coords.len(), kind.dim());
        Self { kind, coords }
    }

    pub fn zeros(kind: AlgebraKind) -> Self {
        Self::from_raw(kind, vec![0.0; kind.dim()])
    }

    /// The `i`-th orthonormal basis element.
    pub fn basis(kind: AlgebraKind, i: usize) -> Self {
        let mut c = vec![0.0; kind.dim()];
        c[i] = 1.0;
        Self::from_raw(kind, c)
    }

    /// Builds an element of a matrix kind from a Hermitian matrix. Only
    /// the diagonal and the upper triangle are read; entry components
    /// beyond the field of `kind` are ignored.
    pub fn from_matrix(kind: AlgebraKind, m: &QuatMatrix) -> Result<Self> {
        let k = kind
            .field_dim()
            .ok_or_else(|| Error::InvalidKind(format!("{kind} is not a matrix algebra")))?;
        if m.n() != kind.size() {
            return Err(Error::DimensionMismatch {
                expected: kind.size(),
                actual: m.n(),
            });
        }
        Self::new(kind, coords_from_matrix(m, k))
    }

    /// Builds a spin factor element from its scalar part `t` and vector part.
    pub fn from_spin(kind: AlgebraKind, t: f64, x: &[f64]) -> Result<Self> {
        let AlgebraKind::SpinFactor { m } = kind else {
            return Err(Error::InvalidKind(format!("{kind} is not a spin factor")));
        };
        if x.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                actual: x.len(),
            });
        }
        let mut c = Vec::with_capacity(m + 1);
        c.push(std::f64::consts::SQRT_2 * t);
        c.extend(x.iter().map(|v| std::f64::consts::SQRT_2 * v));
        Self::new(kind, c)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// The Hermitian matrix of a matrix-kind element.
    pub fn to_matrix(&self) -> Option<QuatMatrix> {
        let k = self.kind.field_dim()?;
        Some(matrix_from_coords(self.kind.size(), k, &self.coords))
    }

    /// `(t, x⃗)` for a spin factor element.
    pub fn spin_parts(&self) -> Option<(f64, Vec<f64>)> {
        match self.kind {
            AlgebraKind::SpinFactor { .. } => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                Some((
                    self.coords[0] * s,
                    self.coords[1..].iter().map(|c| c * s).collect(),
                ))
            }
            _ => None,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_raw(self.kind, self.coords.iter().map(|c| c * s).collect())
    }

    /// Euclidean norm of the coordinates (the trace-form norm).
    pub fn norm(&self) -> f64 {
        linalg::norm2(&self.coords)
    }

    /// `⟨u, x⟩`
    pub fn trace(&self) -> f64 {
        match self.kind {
            AlgebraKind::Classical { .. } => self.coords.iter().sum(),
            AlgebraKind::SpinFactor { .. } => std::f64::consts::SQRT_2 * self.coords[0],
            _ => self.coords[..self.kind.size()].iter().sum(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    /// Lexicographic comparison of coordinates.
    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

fn assert_same_kind(a: &JordanElement, b: &JordanElement) {
    assert_eq!(
        a.kind, b.kind,
        "arithmetic on elements of different algebras"
    );
}

impl Add for &JordanElement {
    type Output = JordanElement;

    /// Panics if the kinds differ.
    fn add(self, o: &JordanElement) -> JordanElement {
        assert_same_kind(self, o);
        JordanElement::from_raw(
            self.kind,
            self.coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &JordanElement {
    type Output = JordanElement;

    /// Panics if the kinds differ.
    fn sub(self, o: &JordanElement) -> JordanElement {
        assert_same_kind(self, o);
        JordanElement::from_raw(
            self.kind,
            self.coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &JordanElement {
    type Output = JordanElement;
    fn neg(self) -> JordanElement {
        self.scale(-1.0)
    }
}

impl Mul<&JordanElement> for f64 {
    type Output = JordanElement;
    fn mul(self, x: &JordanElement) -> JordanElement {
        x.scale(self)
    }
}

/// Sum of a non-empty list of elements of one kind.
pub fn sum<'a>(
    kind: AlgebraKind,
    items: impl IntoIterator<Item = &'a JordanElement>,
) -> JordanElement {
    items
        .into_iter()
        .fold(JordanElement::zeros(kind), |acc, x| &acc + x)
}

fn coords_from_matrix(m: &QuatMatrix, k: usize) -> Vec<f64> {
    let n = m.n();
    let mut c = Vec::with_capacity(n + k * n * (n - 1) / 2);
    for r in 0..n {
        c.push(m.get(r, r).re());
    }
    for r in 0..n {
        for s in (r + 1)..n {
            let q = m.get(r, s);
            for comp in 0..k {
                c.push(std::f64::consts::SQRT_2 * q.0[comp]);
            }
        }
    }
    c
}

fn matrix_from_coords(n: usize, k: usize, c: &[f64]) -> QuatMatrix {
    let mut m = QuatMatrix::zeros(n);
    for (r, &v) in c.iter().take(n).enumerate() {
        m.set(r, r, Quat::real(v));
    }
    let mut idx = n;
    for r in 0..n {
        for s in (r + 1)..n {
            let mut q = [0.0; 4];
            for slot in q.iter_mut().take(k) {
                *slot = c[idx] * std::f64::consts::FRAC_1_SQRT_2;
                idx += 1;
            }
            let q = Quat(q);
            m.set(r, s, q);
            m.set(s, r, q.conj());
        }
    }
    m
}

/// The multiplicative unit `u`.
pub fn unit(kind: AlgebraKind) -> JordanElement {
    let mut c = vec![0.0; kind.dim()];
    match kind {
        AlgebraKind::Classical { .. } => c.iter_mut().for_each(|x| *x = 1.0),
        AlgebraKind::SpinFactor { .. } => c[0] = std::f64::consts::SQRT_2,
        _ => c[..kind.size()].iter_mut().for_each(|x| *x = 1.0),
    }
    JordanElement::from_raw(kind, c)
}

/// The Jordan product `x ∘ y`.
pub fn jordan_product(x: &JordanElement, y: &JordanElement) -> Result<JordanElement> {
    check_same(x.kind, y.kind)?;
    let kind = x.kind;
    let out = match kind {
        AlgebraKind::Classical { .. } => {
            x.coords.iter().zip(&y.coords).map(|(a, b)| a * b).collect()
        }
        AlgebraKind::SpinFactor { .. } => {
            let (s, xv) = x.spin_parts().expect("spin kind");
            let (t, yv) = y.spin_parts().expect("spin kind");
            let scalar = s * t + linalg::dot(&xv, &yv);
            let mut c = Vec::with_capacity(kind.dim());
            c.push(std::f64::consts::SQRT_2 * scalar);
            c.extend(
                xv.iter()
                    .zip(&yv)
                    .map(|(a, b)| std::f64::consts::SQRT_2 * (s * b + t * a)),
            );
            c
        }
        _ => {
            let k = kind.field_dim().expect("matrix kind");
            let a = x.to_matrix().expect("matrix kind");
            let b = y.to_matrix().expect("matrix kind");
            let sym = a.mul(&b).add(&b.mul(&a)).scale(0.5);
            coords_from_matrix(&sym, k)
        }
    };
    Ok(JordanElement::from_raw(kind, out))
}

/// The trace form `⟨x, y⟩ = tr(x ∘ y)`, which in these coordinates is the
/// Euclidean dot product.
pub fn trace_inner_product(x: &JordanElement, y: &JordanElement) -> Result<f64> {
    check_same(x.kind, y.kind)?;
    Ok(linalg::dot(&x.coords, &y.coords))
}

/// The quadratic representation `U_a(x) = 2 a∘(a∘x) − (a∘a)∘x`.
pub fn quadratic_rep(a: &JordanElement, x: &JordanElement) -> Result<JordanElement> {
    check_same(a.kind, x.kind)?;
    let ax = jordan_product(a, x)?;
    let a_ax = jordan_product(a, &ax)?;
    let aa = jordan_product(a, a)?;
    let aa_x = jordan_product(&aa, x)?;
    Ok(&a_ax.scale(2.0) - &aa_x)
}

/// Eigenvalues in descending order, without the frame.
pub fn eigenvalues(x: &JordanElement) -> Result<Vec<f64>> {
    match x.kind {
        AlgebraKind::Classical { .. } => {
            let mut v = x.coords.clone();
            v.sort_by(|a, b| b.total_cmp(a));
            Ok(v)
        }
        AlgebraKind::SpinFactor { .. } => {
            let (t, v) = x.spin_parts().expect("spin kind");
            let r = linalg::norm2(&v);
            Ok(vec![t + r, t - r])
        }
        kind => {
            let k = kind.field_dim().expect("matrix kind");
            let m = x.to_matrix().expect("matrix kind");
            let eig = symmetric_eigen(&m.real_embedding(k))?;
            Ok(deflate(&eig.values, k))
        }
    }
}

/// Collapses a descending spectrum in which every value is repeated `k`
/// times into one value per group (the group mean), pairing neighbours.
pub fn deflate(values: &[f64], k: usize) -> Vec<f64> {
    values
        .chunks(k)
        .map(|g| g.iter().sum::<f64>() / g.len() as f64)
        .collect()
}

/// Largest absolute eigenvalue.
pub fn spectral_radius(x: &JordanElement) -> Result<f64> {
    Ok(eigenvalues(x)?.iter().fold(0.0, |m, v| m.max(v.abs())))
}

/// Σ|λᵢ|
pub fn trace_norm(x: &JordanElement) -> Result<f64> {
    Ok(eigenvalues(x)?.iter().map(|v| v.abs()).sum())
}

/// `x` lies in the cone of squares (all eigenvalues nonnegative) up to
/// `tol · max(1, spectral radius)`.
pub fn cone_contains(x: &JordanElement, tol: f64) -> bool {
    match eigenvalues(x) {
        Ok(ev) => {
            let radius = ev.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            let min = ev.iter().copied().fold(f64::INFINITY, f64::min);
            min >= -tol * radius.max(1.0)
        }
        Err(_) => false,
    }
}

/// Eigenvalues (descending) together with a Jordan frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub frame: Vec<JordanElement>,
}

impl SpectralDecomposition {
    /// `Σ λᵢ pᵢ`
    pub fn reconstruct(&self) -> JordanElement {
        let kind = self.frame[0].kind;
        self.eigenvalues
            .iter()
            .zip(&self.frame)
            .fold(JordanElement::zeros(kind), |acc, (l, p)| {
                &acc + &p.scale(*l)
            })
    }

    /// Sum of the frame idempotents whose eigenvalue satisfies `pred`.
    pub fn spectral_projector(&self, pred: impl Fn(f64) -> bool) -> JordanElement {
        let kind = self.frame[0].kind;
        self.eigenvalues
            .iter()
            .zip(&self.frame)
            .filter(|(l, _)| pred(**l))
            .fold(JordanElement::zeros(kind), |acc, (_, p)| &acc + p)
    }
}

/// Spectral decomposition `x = Σ λᵢ pᵢ` over a Jordan frame.
///
/// Matrix kinds are diagonalized through their real symmetric embedding
/// with the cyclic Jacobi solver; every eigenvalue of the algebra appears
/// `k` times there (`k` the field dimension). Eigenvalues within
/// [`CLUSTER_REL_WIDTH`] times the spectral radius form one cluster, whose
/// frame is chosen by Gram-Schmidt over the field. Inside a numerically
/// degenerate cluster the frame is ordered by descending lexicographic
/// coordinates, so the output is deterministic.
///
/// Fails if the frame does not reconstruct `x` to within
/// `tol · max(1, ‖x‖)`.
pub fn spectral_decompose(x: &JordanElement, tol: f64) -> Result<SpectralDecomposition> {
    if let Some(i) = x.coords.iter().position(|c| !c.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let kind = x.kind;
    let clusters: Vec<Vec<JordanElement>> = match kind {
        AlgebraKind::Classical { d } => {
            let mut idx: Vec<usize> = (0..d).collect();
            idx.sort_by(|&i, &j| x.coords[j].total_cmp(&x.coords[i]).then(i.cmp(&j)));
            let values: Vec<f64> = idx.iter().map(|&i| x.coords[i]).collect();
            cluster_ranges(&values, 1)
                .into_iter()
                .map(|range| range.map(|p| JordanElement::basis(kind, idx[p])).collect())
                .collect()
        }
        AlgebraKind::SpinFactor { m } => {
            let (t, v) = x.spin_parts().expect("spin kind");
            let r = linalg::norm2(&v);
            let dir: Vec<f64> = if r > 0.0 {
                v.iter().map(|c| c / r).collect()
            } else {
                let mut e = vec![0.0; m];
                e[0] = 1.0;
                e
            };
            let neg: Vec<f64> = dir.iter().map(|c| -c).collect();
            let plus = JordanElement::from_spin(
                kind,
                0.5,
                &dir.iter().map(|c| 0.5 * c).collect::<Vec<_>>(),
            )?;
            let minus = JordanElement::from_spin(
                kind,
                0.5,
                &neg.iter().map(|c| 0.5 * c).collect::<Vec<_>>(),
            )?;
            let radius = t.abs() + r;
            if 2.0 * r <= CLUSTER_REL_WIDTH * radius {
                vec![vec![plus, minus]]
            } else {
                vec![vec![plus], vec![minus]]
            }
        }
        _ => matrix_clusters(x)?,
    };
    let decomposition = finalize(x, clusters)?;
    let residual = (&decomposition.reconstruct() - x).norm();
    if residual > tol * x.norm().max(1.0) {
        return Err(Error::NoConvergence(format!(
            "frame reconstruction residual {residual:e} exceeds {tol:e}"
        )));
    }
    Ok(decomposition)
}

/// Groups a descending list into runs whose neighbours differ by at most
/// the cluster width; `k` is the embedding multiplicity.
fn cluster_ranges(values: &[f64], k: usize) -> Vec<std::ops::Range<usize>> {
    let radius = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let width = CLUSTER_REL_WIDTH * radius;
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        let boundary = i == values.len() || values[i - 1] - values[i] > width;
        // never split inside an embedding multiplet
        if boundary && (i - start) % k == 0 {
            out.push(start..i);
            start = i;
        }
    }
    if start < values.len() {
        out.push(start..values.len());
    }
    out
}

fn matrix_clusters(x: &JordanElement) -> Result<Vec<Vec<JordanElement>>> {
    let kind = x.kind;
    let n = kind.size();
    let k = kind.field_dim().expect("matrix kind");
    let m = x.to_matrix().expect("matrix kind");
    let eig = symmetric_eigen(&m.real_embedding(k))?;
    let mut clusters = Vec::new();
    for range in cluster_ranges(&eig.values, k) {
        let size = range.len();
        if size % k != 0 {
            return Err(Error::NoConvergence(format!(
                "eigenvalue cluster of size {size} is not a multiple of {k}"
            )));
        }
        let candidates: Vec<QuatVector> = range
            .map(|col| QuatVector::from_real(&eig.vectors.column(col), n, k))
            .collect();
        let mut chosen: Vec<QuatVector> = Vec::with_capacity(size / k);
        for _ in 0..size / k {
            // take the candidate least explained by the lines chosen so far
            let best = candidates
                .iter()
                .max_by(|a, b| residual(a, &chosen).total_cmp(&residual(b, &chosen)))
                .ok_or_else(|| Error::NoConvergence("empty eigenvalue cluster".into()))?;
            let v = orthonormalize_against(best, &chosen, 0.5).ok_or_else(|| {
                Error::NoConvergence(
                    "could not complete an orthonormal frame inside a cluster".into(),
                )
            })?;
            chosen.push(v);
        }
        clusters.push(
            chosen
                .iter()
                .map(|v| JordanElement::from_raw(kind, coords_from_matrix(&v.outer(), k)))
                .collect(),
        );
    }
    Ok(clusters)
}

fn residual(v: &QuatVector, basis: &[QuatVector]) -> f64 {
    let mut w = v.clone();
    for b in basis {
        w = w.sub(&b.mul_right(b.inner(&w)));
    }
    w.norm()
}

/// Assigns eigenvalues (Rayleigh quotients `⟨x, p⟩`) and orders each cluster.
fn finalize(x: &JordanElement, clusters: Vec<Vec<JordanElement>>) -> Result<SpectralDecomposition> {
    let scale = x.norm().max(1.0);
    let mut eigenvalues = Vec::with_capacity(x.kind.rank());
    let mut frame = Vec::with_capacity(x.kind.rank());
    for mut members in clusters {
        let mut rayleigh: Vec<f64> = members
            .iter()
            .map(|p| trace_inner_product(x, p))
            .collect::<Result<_>>()?;
        let max = rayleigh.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = rayleigh.iter().copied().fold(f64::INFINITY, f64::min);
        let mut order: Vec<usize> = (0..members.len()).collect();
        if max - min <= 1e-12 * scale {
            let mean = rayleigh.iter().sum::<f64>() / rayleigh.len() as f64;
            rayleigh.iter_mut().for_each(|r| *r = mean);
            order.sort_by(|&i, &j| members[j].lex_cmp(&members[i]));
        } else {
            order.sort_by(|&i, &j| {
                rayleigh[j]
                    .total_cmp(&rayleigh[i])
                    .then_with(|| members[j].lex_cmp(&members[i]))
            });
        }
        let mut taken: Vec<Option<JordanElement>> = members.drain(..).map(Some).collect();
        for i in order {
            eigenvalues.push(rayleigh[i]);
            frame.push(taken[i].take().expect("each member used once"));
        }
    }
    Ok(SpectralDecomposition { eigenvalues, frame })
}

/// Worst violation of the Jordan frame axioms: idempotency, unit trace,
/// pairwise orthogonality (as `pᵢ ∘ pⱼ = 0`) and completeness (`Σ pᵢ = u`),
/// measured in trace norm.
pub fn frame_violation(frame: &[JordanElement]) -> Result<f64> {
    let Some(first) = frame.first() else {
        return Err(Error::Empty("frame"));
    };
    let kind = first.kind;
    if frame.len() != kind.rank() {
        return Err(Error::DimensionMismatch {
            expected: kind.rank(),
            actual: frame.len(),
        });
    }
    let mut worst = 0.0_f64;
    for (i, p) in frame.iter().enumerate() {
        check_same(kind, p.kind)?;
        let pp = jordan_product(p, p)?;
        worst = worst.max(trace_norm(&(&pp - p))?);
        worst = worst.max((p.trace() - 1.0).abs());
        for q in &frame[i + 1..] {
            worst = worst.max(trace_norm(&jordan_product(p, q)?)?);
        }
    }
    let total = sum(kind, frame);
    worst = worst.max(trace_norm(&(&total - &unit(kind)))?);
    Ok(worst)
}
