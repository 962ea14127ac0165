//! Exact linear algebra on `R^(p,q)` with its diagonal model metric.

pub mod cube_zero;
pub mod fixtures;
pub mod matrix;
pub mod sparse;
pub mod unipoly;

use num_traits::Zero;

pub use cube_zero::{lema4_report, CubeZeroReport};
pub use matrix::{Echelon, QMatrix};
pub use sparse::SparseEchelon;
pub use unipoly::UniPoly;

use crate::error::{Error, Result};
use crate::exactpoly::rational::{self, Rational};
use crate::exactpoly::Signature;

/// `R^(p,q)` with `G = diag(-1,…,-1,+1,…,+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InnerSpace {
    sig: Signature,
}

impl InnerSpace {
    pub fn new(sig: Signature) -> Self {
        InnerSpace { sig }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn m(&self) -> usize {
        self.sig.m()
    }

    /// Gram matrix `G` of the model basis. `G² = I`.
    pub fn metric(&self) -> QMatrix {
        let d: Vec<Rational> = (0..self.m()).map(|i| self.sig.sign_q(i)).collect();
        QMatrix::diagonal(&d)
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn ip(&self, u: &[Rational], v: &[Rational]) -> Result<Rational> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(u.iter()
            .zip(v)
            .enumerate()
            .map(|(i, (a, b))| if i < self.sig.p { -(a * b) } else { a * b })
            .sum())
    }

    /// `Φ = ϱ₊ − ϱ₋`: identity on the spacelike block, `-1` on the timelike one.
    pub fn phi_map(&self) -> QMatrix {
        self.metric()
    }

    /// `A ∘ Φ`.
    pub fn phi_twist(&self, a: &QMatrix) -> QMatrix {
        a * &self.phi_map()
    }

    /// `g(u, v) = (u, Φv)`, positive definite.
    pub fn g(&self, u: &[Rational], v: &[Rational]) -> Result<Rational> {
        let phv = self.phi_map().apply(v)?;
        self.ip(u, &phv)
    }

    /// `G A = Aᵀ G`.
    pub fn is_self_adjoint(&self, a: &QMatrix) -> bool {
        let g = self.metric();
        a.is_square() && a.nrows() == self.m() && &g * a == &a.transpose() * &g
    }

    /// Adjoint with respect to `(.,.)`: `G Aᵀ G`.
    pub fn adjoint(&self, a: &QMatrix) -> QMatrix {
        let g = self.metric();
        &(&g * &a.transpose()) * &g
    }

    pub fn is_isometry(&self, t: &QMatrix) -> bool {
        let g = self.metric();
        t.is_square() && t.nrows() == self.m() && &(&t.transpose() * &g) * t == g
    }

    /// `T⁻¹ = G Tᵀ G` for an isometry; errors otherwise.
    pub fn isometry_inverse(&self, t: &QMatrix) -> Result<QMatrix> {
        if !self.is_isometry(t) {
            return Err(Error::NotIsometry);
        }
        Ok(self.adjoint(t))
    }

    pub fn gram(&self, w: &SubspaceQ) -> QMatrix {
        let b = w.basis();
        let mut out = QMatrix::zeros(b.len(), b.len());
        for i in 0..b.len() {
            for j in 0..b.len() {
                out[(i, j)] = self.ip(&b[i], &b[j]).expect("basis length");
            }
        }
        out
    }

    pub fn is_totally_isotropic(&self, w: &SubspaceQ) -> bool {
        self.gram(w).is_zero()
    }

    /// Nonsingular Gram matrix.
    pub fn is_nondegenerate(&self, w: &SubspaceQ) -> bool {
        let g = self.gram(w);
        g.nrows() == 0 || !g.determinant().is_zero()
    }

    pub fn are_orthogonal(&self, a: &SubspaceQ, b: &SubspaceQ) -> bool {
        a.basis().iter().all(|x| {
            b.basis()
                .iter()
                .all(|y| self.ip(x, y).map(|v| v.is_zero()).unwrap_or(false))
        })
    }

    /// A random rational isometry (product of boosts, rotations, reflections).
    pub fn random_isometry<R: rand::Rng>(&self, rng: &mut R, len: usize) -> QMatrix {
        let word = crate::exactpoly::sample::random_isometry_word(rng, self.sig, len);
        QMatrix::from_rows(crate::exactpoly::sample::word_matrix(&word, self.m())).expect("square")
    }
}

/// A subspace held by a linearly independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceQ {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl SubspaceQ {
    pub fn zero(ambient: usize) -> Self {
        SubspaceQ {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(ambient, &QMatrix::identity(ambient).to_rows())
    }

    /// Span of arbitrary vectors; dependent ones are dropped (first kept).
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let mut ech = Echelon::new();
        let mut basis = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length");
            if ech.insert(v) {
                basis.push(v.clone());
            }
        }
        SubspaceQ { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut ech = Echelon::new();
        for b in &self.basis {
            ech.insert(b);
        }
        ech.contains(v)
    }

    pub fn is_subspace_of(&self, other: &SubspaceQ) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn same_as(&self, other: &SubspaceQ) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    pub fn sum(&self, other: &SubspaceQ) -> SubspaceQ {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        SubspaceQ::span(self.ambient, &all)
    }

    /// `dim(U ∩ W) = dim U + dim W − dim(U + W)`.
    pub fn intersection_dim(&self, other: &SubspaceQ) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    pub fn image_under(&self, a: &QMatrix) -> SubspaceQ {
        let imgs: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| a.apply(b).expect("dimension"))
            .collect();
        SubspaceQ::span(a.nrows(), &imgs)
    }
}

pub fn rank(a: &QMatrix) -> usize {
    a.rank()
}

pub fn image(a: &QMatrix) -> SubspaceQ {
    SubspaceQ {
        ambient: a.nrows(),
        basis: a.image_basis(),
    }
}

pub fn kernel(a: &QMatrix) -> SubspaceQ {
    SubspaceQ {
        ambient: a.ncols(),
        basis: a.kernel_basis(),
    }
}

/// Monic polynomial of least degree annihilating `A`: the first linear
/// relation among `I, A, A², …` (Krylov on flattened powers).
pub fn minimal_polynomial(a: &QMatrix) -> UniPoly {
    assert!(a.is_square(), "minimal polynomial of a non-square matrix");
    let n = a.nrows();
    let mut powers = vec![QMatrix::identity(n)];
    loop {
        let k = powers.len() - 1;
        // Columns vec(A^0) … vec(A^k); a kernel vector is a relation.
        let cols: Vec<Vec<Rational>> = powers.iter().map(QMatrix::flatten).collect();
        let m = QMatrix::from_cols(&cols, n * n);
        let ker = m.kernel_basis();
        if let Some(rel) = ker.first() {
            debug_assert_eq!(ker.len(), 1);
            return UniPoly::new(rel.clone()).monic();
        }
        let next = &powers[k] * a;
        powers.push(next);
    }
}

/// Square-free minimal polynomial.
pub fn is_jordan_simple(a: &QMatrix) -> bool {
    minimal_polynomial(a).is_square_free()
}

/// Dense operator from `"num/den"` rows.
pub fn operator_from_strs(rows: &[&[&str]]) -> Result<QMatrix> {
    QMatrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|s| rational::parse_rational(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?,
    )
}
