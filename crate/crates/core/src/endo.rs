//! Hom spaces between systems, endomorphism algebras, and the three
//! "smallness" notions: transitive (`End(S) = ℂI`), indecomposable (no
//! idempotents besides 0 and I), irreducible (trivial commutant).

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::subspace::{ProjectionTuple, SubspaceSystem};
use crate::tolerance::TolerancePolicy;

/// A basis of `Hom(S, S̃) = {R : R(H_i) ⊆ H̃_i ∀i}`; elements are `target × source`.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<ComplexMatrix>,
    /// The kernel solve had a singular value close to the rank cutoff.
    pub low_confidence: bool,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ coeffs[k] · basis[k]`.
    pub fn combine(&self, coeffs: &[linalg::C64]) -> ComplexMatrix {
        assert_eq!(coeffs.len(), self.basis.len());
        self.basis.iter().zip(coeffs).fold(
            ComplexMatrix::zeros(self.target_dim, self.source_dim),
            |acc, (b, &w)| acc + b * w,
        )
    }
}

/// `max_i |(I − P̃_i) R P_i|`: zero exactly when `R` is a homomorphism.
pub fn hom_residual(r: &ComplexMatrix, s: &SubspaceSystem, t: &SubspaceSystem) -> f64 {
    s.subspaces()
        .iter()
        .zip(t.subspaces())
        .map(|(h, ht)| {
            let left = linalg::identity(t.ambient_dim()) - ht.projector();
            linalg::max_abs(&(left * r * h.projector()))
        })
        .fold(0.0, f64::max)
}

/// Solves `(I − P̃_i) R P_i = 0` for all `i` by vectorizing `R`.
///
/// Each constraint is written as `C̃_i* R B_i = 0` with `B_i` an orthonormal
/// basis of `H_i` and `C̃_i` one of `H̃_i^⊥`, i.e. `(B_iᵀ ⊗ C̃_i*) vec R = 0`.
pub fn hom_space(s: &SubspaceSystem, t: &SubspaceSystem, tol: &TolerancePolicy) -> Result<HomSpace> {
    if s.len() != t.len() {
        return Err(Error::Arity {
            expected: s.len(),
            got: t.len(),
        });
    }
    let (src, tgt) = (s.ambient_dim(), t.ambient_dim());
    let blocks: Vec<ComplexMatrix> = s
        .subspaces()
        .iter()
        .zip(t.subspaces())
        .filter_map(|(h, ht)| {
            let comp = ht.orthocomplement(tol);
            if h.dim() == 0 || comp.dim() == 0 {
                return None;
            }
            Some(linalg::kron(&h.basis().transpose(), &comp.basis().adjoint()))
        })
        .collect();
    let total: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut stacked = ComplexMatrix::zeros(total, src * tgt);
    let mut row = 0;
    for b in &blocks {
        stacked.view_mut((row, 0), b.shape()).copy_from(b);
        row += b.nrows();
    }
    let (kernel, low_confidence) = linalg::kernel_basis_report(&stacked, tol);
    let basis = kernel
        .column_iter()
        .map(|col| linalg::unvec(col.as_slice(), tgt, src))
        .collect();
    Ok(HomSpace {
        source_dim: src,
        target_dim: tgt,
        basis,
        low_confidence,
    })
}

pub fn end_space(s: &SubspaceSystem, tol: &TolerancePolicy) -> HomSpace {
    hom_space(s, s, tol).expect("same arity")
}

pub fn end_dimension(s: &SubspaceSystem, tol: &TolerancePolicy) -> usize {
    end_space(s, tol).dim()
}

/// `End(S) = ℂ I_H`.
pub fn is_transitive(s: &SubspaceSystem, tol: &TolerancePolicy) -> bool {
    end_dimension(s, tol) == 1
}

/// Dimension of the semisimple quotient `End(S) / rad End(S)`.
///
/// The radical of a matrix algebra over ℂ is the kernel of its trace form
/// `(x, y) ↦ tr(xy)`, so the quotient dimension is the rank of the Gram
/// matrix `G_jk = tr(E_j E_k)` over any basis `E`.
pub fn semisimple_quotient_dim(s: &SubspaceSystem, tol: &TolerancePolicy) -> usize {
    algebra_quotient_dim(&end_space(s, tol), tol)
}

/// [`semisimple_quotient_dim`] for an already computed `End(S)`.
pub fn algebra_quotient_dim(end: &HomSpace, tol: &TolerancePolicy) -> usize {
    let k = end.dim();
    let gram = ComplexMatrix::from_fn(k, k, |i, j| linalg::trace(&(&end.basis[i] * &end.basis[j])));
    linalg::rank_or_zero(&gram, tol)
}

/// `Idem(S) = {0, I}`, decided as `End(S)` being local: `dim A − dim rad A = 1`.
pub fn is_indecomposable(s: &SubspaceSystem, tol: &TolerancePolicy) -> bool {
    semisimple_quotient_dim(s, tol) == 1
}

/// Basis of `{R : R P_i = P̃_i R ∀i}` (maps from the space of `a` to that of `b`).
pub fn intertwiners(a: &ProjectionTuple, b: &ProjectionTuple, tol: &TolerancePolicy) -> Result<Vec<ComplexMatrix>> {
    if a.len() != b.len() {
        return Err(Error::Arity {
            expected: a.len(),
            got: b.len(),
        });
    }
    let (d, dt) = (a.dim(), b.dim());
    let blocks: Vec<ComplexMatrix> = a
        .projections()
        .iter()
        .zip(b.projections())
        .map(|(p, pt)| linalg::kron(&p.transpose(), &linalg::identity(dt)) - linalg::kron(&linalg::identity(d), pt))
        .collect();
    let sol = linalg::solve_homogeneous(&blocks, d * dt, tol)?;
    Ok(sol
        .column_iter()
        .map(|col| linalg::unvec(col.as_slice(), dt, d))
        .collect())
}

pub fn commutant_dimension(t: &ProjectionTuple, tol: &TolerancePolicy) -> usize {
    intertwiners(t, t, tol).expect("same arity").len()
}

/// Schur criterion: the commutant of `{P_i}` is `ℂI`.
pub fn is_irreducible(t: &ProjectionTuple, tol: &TolerancePolicy) -> bool {
    commutant_dimension(t, tol) == 1
}
