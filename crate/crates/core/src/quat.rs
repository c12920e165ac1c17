//! Quaternion scalars and Hermitian matrices over ℝ, ℂ and ℍ.
//!
//! The three matrix algebras of the catalog share one representation:
//! entries are quaternions, restricted to the first `field_dim` components
//! (1 for ℝ, 2 for ℂ, 4 for ℍ). Products of restricted entries stay
//! restricted, so the same arithmetic serves all three.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quat(pub [f64; 4]);

impl Quat {
    pub const ZERO: Quat = Quat([0.0; 4]);
    pub const ONE: Quat = Quat([1.0, 0.0, 0.0, 0.0]);

    /// The basis unit `1, i, j, k` for `c = 0, 1, 2, 3`.
    pub fn unit(c: usize) -> Quat {
        let mut q = [0.0; 4];
        q[c] = 1.0;
        Quat(q)
    }

    pub fn real(x: f64) -> Quat {
        Quat([x, 0.0, 0.0, 0.0])
    }

    pub fn conj(self) -> Quat {
        let [a, b, c, d] = self.0;
        Quat([a, -b, -c, -d])
    }

    pub fn re(self) -> f64 {
        self.0[0]
    }

    pub fn norm_sqr(self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn scale(self, s: f64) -> Quat {
        let [a, b, c, d] = self.0;
        Quat([a * s, b * s, c * s, d * s])
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Quat([a + e, b + f, c + g, d + h])
    }
}

impl AddAssign for Quat {
    fn add_assign(&mut self, o: Quat) {
        *self = *self + o;
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        self + (-o)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        self.scale(-1.0)
    }
}

impl Mul for Quat {
    type Output = Quat;
    /// Hamilton product.
    fn mul(self, o: Quat) -> Quat {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = o.0;
        Quat([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }
}

/// Square matrix with quaternion entries, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatMatrix {
    n: usize,
    data: Vec<Quat>,
}

impl QuatMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Quat::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Quat::ONE);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Quat) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Quat {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quat) {
        self.data[i * self.n + j] = q;
    }

    pub fn mul(&self, o: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = QuatMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Quat::ZERO;
                for k in 0..n {
                    acc += self.get(i, k) * o.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, o: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.n, o.n);
        QuatMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> QuatMatrix {
        QuatMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a.scale(s)).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> QuatMatrix {
        QuatMatrix::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn re_trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re()).sum()
    }

    pub fn max_abs_diff(&self, o: &QuatMatrix) -> f64 {
        self.data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| (*a - *b).norm_sqr().sqrt())
            .fold(0.0, f64::max)
    }

    /// Real symmetric embedding of size `field_dim * n` via left
    /// multiplication. Entry `(r, s)` becomes the `field_dim`-square block
    /// of `p ↦ q p` restricted to the first `field_dim` components; the
    /// real vector layout is component-major (`c * n + r`).
    ///
    /// For ℂ this is the usual `[[X, -Y], [Y, X]]` embedding of `X + iY`.
    /// For ℍ it agrees, up to a signed permutation of the basis, with the
    /// complex `2n` embedding followed by the complex-to-real one.
    pub fn real_embedding(&self, field_dim: usize) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(field_dim * n, field_dim * n);
        for r in 0..n {
            for s in 0..n {
                let q = self.get(r, s);
                for cin in 0..field_dim {
                    let image = q * Quat::unit(cin);
                    for cout in 0..field_dim {
                        out[(cout * n + r, cin * n + s)] = image.0[cout];
                    }
                }
            }
        }
        out
    }

    /// Complex `2n × 2n` embedding of a quaternionic matrix `A + B j`
    /// (with `A`, `B` complex) as `[[A, -B], [B̄, Ā]]`. Complex numbers are
    /// returned as `(re, im)` pairs, row-major.
    pub fn complex_embedding(&self) -> Vec<(f64, f64)> {
        let n = self.n;
        let m = 2 * n;
        let mut out = vec![(0.0, 0.0); m * m];
        for r in 0..n {
            for s in 0..n {
                // q = (a + b i) + (c + d i) j
                let [a, b, c, d] = self.get(r, s).0;
                out[r * m + s] = (a, b);
                out[r * m + n + s] = (-c, -d);
                out[(n + r) * m + s] = (c, -d);
                out[(n + r) * m + n + s] = (a, -b);
            }
        }
        out
    }
}

/// Column vector over ℝ, ℂ or ℍ, used for frames and pure states.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatVector(pub Vec<Quat>);

impl QuatVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ conj(self_r) · other_r`
    pub fn inner(&self, other: &QuatVector) -> Quat {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Quat::ZERO, |acc, (a, b)| acc + a.conj() * *b)
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Right scalar multiplication `v · c`.
    pub fn mul_right(&self, c: Quat) -> QuatVector {
        QuatVector(self.0.iter().map(|q| *q * c).collect())
    }

    pub fn sub(&self, other: &QuatVector) -> QuatVector {
        QuatVector(self.0.iter().zip(&other.0).map(|(a, b)| *a - *b).collect())
    }

    pub fn scale(&self, s: f64) -> QuatVector {
        QuatVector(self.0.iter().map(|q| q.scale(s)).collect())
    }

    /// The rank-one projector `v vᴴ`.
    pub fn outer(&self) -> QuatMatrix {
        QuatMatrix::from_fn(self.len(), |r, s| self.0[r] * self.0[s].conj())
    }

    /// Reads a vector from the component-major real layout used by
    /// [`QuatMatrix::real_embedding`].
    pub fn from_real(x: &[f64], n: usize, field_dim: usize) -> QuatVector {
        assert_eq!(x.len(), n * field_dim);
        QuatVector(
            (0..n)
                .map(|r| {
                    let mut q = [0.0; 4];
                    for (c, slot) in q.iter_mut().enumerate().take(field_dim) {
                        *slot = x[c * n + r];
                    }
                    Quat(q)
                })
                .collect(),
        )
    }

    pub fn to_real(&self, field_dim: usize) -> Vec<f64> {
        let n = self.len();
        let mut out = vec![0.0; n * field_dim];
        for (r, q) in self.0.iter().enumerate() {
            for c in 0..field_dim {
                out[c * n + r] = q.0[c];
            }
        }
        out
    }
}

/// Orthonormalizes `v` against the orthonormal family `basis` using
/// right-scalar Gram-Schmidt. Returns `None` if the residual norm falls
/// below `min_norm`.
pub fn orthonormalize_against(
    v: &QuatVector,
    basis: &[QuatVector],
    min_norm: f64,
) -> Option<QuatVector> {
    let mut w = v.clone();
    // two passes for numerical orthogonality
    for _ in 0..2 {
        for b in basis {
            let c = b.inner(&w);
            w = w.sub(&b.mul_right(c));
        }
    }
    let norm = w.norm();
    (norm >= min_norm).then(|| w.scale(1.0 / norm))
}
