//! Systems of subspaces `S = (H; H_1, …, H_n)` and tuples of orthogonal
//! projections, with the conversions between them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, ComplexMatrix, C64};
use crate::tolerance::TolerancePolicy;

/// A subspace of `ℂ^ambient_dim`, stored as orthonormal basis columns.
///
/// The zero subspace has a basis with no columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ComplexMatrix,
}

impl Subspace {
    /// Wraps a basis that is already orthonormal; checked at `identity_eps`.
    pub fn from_orthonormal(basis: ComplexMatrix, tol: &TolerancePolicy) -> Result<Self> {
        let k = basis.ncols();
        let gram = basis.adjoint() * &basis;
        if !linalg::approx_eq(&gram, &linalg::identity(k), tol.identity_eps) {
            return Err(Error::Dimension("basis columns are not orthonormal".into()));
        }
        Ok(Self {
            ambient_dim: basis.nrows(),
            basis,
        })
    }

    /// The span of the columns of `m`.
    pub fn span_of_columns(m: &ComplexMatrix, tol: &TolerancePolicy) -> Self {
        Self {
            ambient_dim: m.nrows(),
            basis: linalg::column_span_basis(m, tol),
        }
    }

    /// The span of the rows of `m`, each row read as a vector of `ℂ^cols`.
    pub fn span_of_rows(m: &ComplexMatrix, tol: &TolerancePolicy) -> Self {
        Self {
            ambient_dim: m.ncols(),
            basis: linalg::orthonormalize(m, tol),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: ComplexMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: linalg::identity(ambient_dim),
        }
    }

    /// The line `ℂ·v`.
    pub fn line(v: &[C64], tol: &TolerancePolicy) -> Self {
        let m = ComplexMatrix::from_column_slice(v.len(), 1, v);
        Self::span_of_columns(&m, tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// Orthogonal projector `Q Q*` onto the subspace.
    pub fn projector(&self) -> ComplexMatrix {
        &self.basis * self.basis.adjoint()
    }

    pub fn orthocomplement(&self, tol: &TolerancePolicy) -> Self {
        let residual = linalg::identity(self.ambient_dim) - self.projector();
        Self::span_of_columns(&residual, tol)
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace, tol: &TolerancePolicy) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient mismatch");
        let mut m = ComplexMatrix::zeros(self.ambient_dim, self.dim() + other.dim());
        m.view_mut((0, 0), self.basis.shape()).copy_from(&self.basis);
        m.view_mut((0, self.dim()), other.basis.shape()).copy_from(&other.basis);
        Self::span_of_columns(&m, tol)
    }

    /// Intersection of several subspaces: the kernel of the stacked `I − P`.
    pub fn intersection(parts: &[&Subspace], tol: &TolerancePolicy) -> Self {
        let u = parts.first().map_or(0, |s| s.ambient_dim);
        let blocks: Vec<ComplexMatrix> = parts.iter().map(|s| linalg::identity(u) - s.projector()).collect();
        let basis = linalg::solve_homogeneous(&blocks, u, tol).expect("uniform widths");
        Self { ambient_dim: u, basis }
    }

    /// Same subspace as `other`, comparing projectors at `identity_eps`.
    pub fn same_as(&self, other: &Subspace, tol: &TolerancePolicy) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() == other.dim()
            && linalg::approx_eq(&self.projector(), &other.projector(), tol.identity_eps)
    }

    /// Largest `|(I − P_other) v|` over the basis vectors of `self`.
    pub fn containment_residual(&self, other: &Subspace) -> f64 {
        let res = (linalg::identity(other.ambient_dim) - other.projector()) * &self.basis;
        linalg::max_abs(&res)
    }
}

/// An ordered system of subspaces of one ambient space.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceSystem {
    ambient_dim: usize,
    subspaces: Vec<Subspace>,
}

impl SubspaceSystem {
    pub fn new(ambient_dim: usize, subspaces: Vec<Subspace>) -> Result<Self> {
        if subspaces.is_empty() {
            return Err(Error::Dimension("a system needs at least one subspace".into()));
        }
        if let Some(s) = subspaces.iter().find(|s| s.ambient_dim != ambient_dim) {
            return Err(Error::Dimension(format!(
                "subspace lives in dimension {}, system in {ambient_dim}",
                s.ambient_dim
            )));
        }
        Ok(Self { ambient_dim, subspaces })
    }

    /// System whose i-th subspace is spanned by the rows of `row_spans[i]`.
    pub fn from_row_spans(ambient_dim: usize, row_spans: &[ComplexMatrix], tol: &TolerancePolicy) -> Result<Self> {
        let subs = row_spans
            .iter()
            .map(|m| {
                if m.ncols() != ambient_dim {
                    Err(Error::Dimension(format!(
                        "row span has width {}, expected {ambient_dim}",
                        m.ncols()
                    )))
                } else {
                    Ok(Subspace::span_of_rows(m, tol))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient_dim, subs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn subspace(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(Subspace::dim).collect()
    }
}

/// `n` orthogonal projections on `ℂ^dim`, optionally certified to sum to `α·I`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionTuple {
    dim: usize,
    projections: Vec<ComplexMatrix>,
    alpha: Option<f64>,
}

impl ProjectionTuple {
    /// Validates every matrix as a `dim × dim` Hermitian idempotent and
    /// attaches an α certificate when `ΣP_i` is scalar.
    pub fn new(dim: usize, projections: Vec<ComplexMatrix>, tol: &TolerancePolicy) -> Result<Self> {
        for (i, p) in projections.iter().enumerate() {
            if p.shape() != (dim, dim) {
                return Err(Error::Dimension(format!(
                    "projection {i} is {}x{}, expected {dim}x{dim}",
                    p.nrows(),
                    p.ncols()
                )));
            }
            linalg::ensure_finite(p)?;
            if !linalg::is_hermitian(p, tol.identity_eps) {
                return Err(Error::NotProjection(format!("P_{} is not Hermitian", i + 1)));
            }
            if !linalg::is_idempotent(p, tol.identity_eps) {
                return Err(Error::NotProjection(format!("P_{} is not idempotent", i + 1)));
            }
        }
        let alpha = scalar_certificate(dim, &projections, tol);
        Ok(Self {
            dim,
            projections,
            alpha,
        })
    }

    /// A tuple on the zero space. Any α is consistent; the caller supplies it.
    pub fn empty(n: usize, alpha: Option<f64>) -> Self {
        Self {
            dim: 0,
            projections: vec![ComplexMatrix::zeros(0, 0); n],
            alpha,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.projections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projections.is_empty()
    }

    pub fn projections(&self) -> &[ComplexMatrix] {
        &self.projections
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn sum(&self) -> ComplexMatrix {
        self.projections
            .iter()
            .fold(ComplexMatrix::zeros(self.dim, self.dim), |acc, p| acc + p)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.projections
            .iter()
            .map(|p| linalg::trace(p).re.round() as usize)
            .collect()
    }

    /// Max-abs residual of `ΣP_i − α I`, or `None` without a certificate.
    pub fn scalar_residual(&self) -> Option<f64> {
        self.alpha
            .map(|a| linalg::distance(&self.sum(), &(linalg::identity(self.dim) * c(a, 0.0))))
    }
}

fn scalar_certificate(dim: usize, ps: &[ComplexMatrix], tol: &TolerancePolicy) -> Option<f64> {
    if dim == 0 {
        return None;
    }
    let sum = ps.iter().fold(ComplexMatrix::zeros(dim, dim), |acc, p| acc + p);
    let alpha = linalg::trace(&sum).re / dim as f64;
    linalg::approx_eq(&sum, &(linalg::identity(dim) * c(alpha, 0.0)), tol.identity_eps).then_some(alpha)
}

/// The system `(H; Im P_1, …, Im P_n)` generated by a projection tuple.
pub fn system_from_projections(t: &ProjectionTuple, tol: &TolerancePolicy) -> Result<SubspaceSystem> {
    for (i, p) in t.projections.iter().enumerate() {
        if !linalg::is_orthogonal_projection(p, tol.identity_eps) {
            return Err(Error::NotProjection(format!("P_{} rejected", i + 1)));
        }
    }
    let subs = t
        .projections
        .iter()
        .map(|p| Subspace::span_of_columns(p, tol))
        .collect();
    SubspaceSystem::new(t.dim, subs)
}

/// The orthogonal projections onto the subspaces of `s`.
pub fn projections_from_system(s: &SubspaceSystem, tol: &TolerancePolicy) -> ProjectionTuple {
    let projections: Vec<ComplexMatrix> = s.subspaces.iter().map(Subspace::projector).collect();
    let alpha = scalar_certificate(s.ambient_dim, &projections, tol);
    ProjectionTuple {
        dim: s.ambient_dim,
        projections,
        alpha,
    }
}

/// `S^⊥ = (H; H_1^⊥, …, H_n^⊥)`.
pub fn orthocomplement(s: &SubspaceSystem, tol: &TolerancePolicy) -> SubspaceSystem {
    SubspaceSystem {
        ambient_dim: s.ambient_dim,
        subspaces: s.subspaces.iter().map(|h| h.orthocomplement(tol)).collect(),
    }
}

/// `ρ(S) = Σ dim K_i − 2 dim U` for a quadruple.
pub fn defect(s: &SubspaceSystem) -> Result<i64> {
    if s.len() != 4 {
        return Err(Error::Arity {
            expected: 4,
            got: s.len(),
        });
    }
    let total: usize = s.dims().iter().sum();
    Ok(total as i64 - 2 * s.ambient_dim as i64)
}

/// Blockwise direct sum `S ⊕ S̃` on `H ⊕ H̃`.
pub fn direct_sum(a: &SubspaceSystem, b: &SubspaceSystem) -> Result<SubspaceSystem> {
    if a.len() != b.len() {
        return Err(Error::Arity {
            expected: a.len(),
            got: b.len(),
        });
    }
    let subs = a
        .subspaces
        .iter()
        .zip(&b.subspaces)
        .map(|(x, y)| Subspace {
            ambient_dim: a.ambient_dim + b.ambient_dim,
            basis: linalg::block_diag(&[x.basis.clone(), y.basis.clone()]),
        })
        .collect();
    SubspaceSystem::new(a.ambient_dim + b.ambient_dim, subs)
}

pub(crate) fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if sigma.len() != n {
        return Err(Error::Parameter(format!(
            "permutation has length {}, expected {n}",
            sigma.len()
        )));
    }
    for &j in sigma {
        if j >= n || seen[j] {
            return Err(Error::Parameter(format!("{sigma:?} is not a permutation")));
        }
        seen[j] = true;
    }
    Ok(())
}

/// `σ(S)`: subspace `i` of the result is subspace `σ(i)` of `s` (0-based).
pub fn apply_permutation(s: &SubspaceSystem, sigma: &[usize]) -> Result<SubspaceSystem> {
    check_permutation(sigma, s.len())?;
    Ok(SubspaceSystem {
        ambient_dim: s.ambient_dim,
        subspaces: sigma.iter().map(|&j| s.subspaces[j].clone()).collect(),
    })
}

// ---------------------------------------------------------------------------
// JSON documents. Complex numbers are always `[re, im]` pairs; matrices are
// row-major lists of rows.

pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_json(m: &ComplexMatrix) -> JsonMatrix {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn matrix_from_json(rows: &JsonMatrix) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<C64>> = rows
        .iter()
        .map(|r| r.iter().map(|&[re, im]| c(re, im)).collect())
        .collect();
    linalg::from_rows(&rows)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SubspaceDoc {
    pub basis: JsonMatrix,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SystemDoc {
    pub ambient_dim: usize,
    pub subspaces: Vec<SubspaceDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TupleDoc {
    pub dim: usize,
    pub alpha: Option<f64>,
    pub projections: Vec<JsonMatrix>,
}

impl SubspaceSystem {
    pub fn to_doc(&self) -> SystemDoc {
        SystemDoc {
            ambient_dim: self.ambient_dim,
            subspaces: self
                .subspaces
                .iter()
                .map(|s| SubspaceDoc {
                    basis: matrix_to_json(&s.basis),
                })
                .collect(),
        }
    }

    /// Reads a document; bases may be any spanning columns and are re-orthonormalized.
    pub fn from_doc(doc: &SystemDoc, tol: &TolerancePolicy) -> Result<Self> {
        let subs = doc
            .subspaces
            .iter()
            .map(|s| {
                let m = matrix_from_json(&s.basis)?;
                if m.nrows() == 0 {
                    return Ok(Subspace::zero(doc.ambient_dim));
                }
                if m.nrows() != doc.ambient_dim {
                    return Err(Error::Parse(format!(
                        "basis has {} rows, ambient_dim is {}",
                        m.nrows(),
                        doc.ambient_dim
                    )));
                }
                Ok(Subspace::span_of_columns(&m, tol))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(doc.ambient_dim, subs).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("plain data serializes")
    }

    pub fn from_json(s: &str, tol: &TolerancePolicy) -> Result<Self> {
        Self::from_doc(&serde_json::from_str(s)?, tol)
    }
}

impl ProjectionTuple {
    pub fn to_doc(&self) -> TupleDoc {
        TupleDoc {
            dim: self.dim,
            alpha: self.alpha,
            projections: self.projections.iter().map(matrix_to_json).collect(),
        }
    }

    /// Reads a document. A stated `alpha` must agree with the matrices.
    pub fn from_doc(doc: &TupleDoc, tol: &TolerancePolicy) -> Result<Self> {
        let ps = doc
            .projections
            .iter()
            .map(|m| {
                if m.is_empty() && doc.dim == 0 {
                    Ok(ComplexMatrix::zeros(0, 0))
                } else {
                    matrix_from_json(m)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if doc.dim == 0 {
            return Ok(Self::empty(ps.len(), doc.alpha));
        }
        let t = Self::new(doc.dim, ps, tol)?;
        match (doc.alpha, t.alpha) {
            (Some(stated), Some(found)) if (stated - found).abs() > tol.identity_eps => {
                Err(Error::Parse(format!("stated alpha {stated} but the sum is {found}·I")))
            }
            (Some(stated), None) => Err(Error::Parse(format!(
                "stated alpha {stated} but the projections do not sum to a scalar"
            ))),
            _ => Ok(t),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("plain data serializes")
    }

    pub fn from_json(s: &str, tol: &TolerancePolicy) -> Result<Self> {
        Self::from_doc(&serde_json::from_str(s)?, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::from_real_rows;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn real_line(v: &[f64]) -> Subspace {
        let v: Vec<C64> = v.iter().map(|&x| c(x, 0.0)).collect();
        Subspace::line(&v, &tol())
    }

    #[test]
    fn zero_projection_gives_zero_subspace() {
        let t = ProjectionTuple::new(1, vec![ComplexMatrix::zeros(1, 1)], &tol()).unwrap();
        let s = system_from_projections(&t, &tol()).unwrap();
        assert_eq!(s.dims(), vec![0]);
        assert_eq!(t.alpha(), Some(0.0));
    }

    #[test]
    fn identity_projection_gives_full_subspace() {
        let t = ProjectionTuple::new(2, vec![linalg::identity(2)], &tol()).unwrap();
        let s = system_from_projections(&t, &tol()).unwrap();
        assert_eq!(s.dims(), vec![2]);
    }

    #[test]
    fn non_idempotent_rejected() {
        let m = from_real_rows(2, 2, &[2.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            ProjectionTuple::new(2, vec![m], &tol()),
            Err(Error::NotProjection(_))
        ));
    }

    #[test]
    fn projector_of_lines() {
        let p = real_line(&[1.0, 0.0]).projector();
        assert!(linalg::approx_eq(
            &p,
            &from_real_rows(2, 2, &[1.0, 0.0, 0.0, 0.0]),
            1e-12
        ));
        let p = real_line(&[1.0, 1.0]).projector();
        assert!(linalg::approx_eq(
            &p,
            &from_real_rows(2, 2, &[0.5, 0.5, 0.5, 0.5]),
            1e-12
        ));
        let p = Subspace::zero(3).projector();
        assert_eq!(p, ComplexMatrix::zeros(3, 3));
    }

    #[test]
    fn orthocomplement_examples() {
        let s = SubspaceSystem::new(1, vec![Subspace::zero(1)]).unwrap();
        assert_eq!(orthocomplement(&s, &tol()).dims(), vec![1]);

        let s9 = SubspaceSystem::new(
            2,
            vec![real_line(&[1.0, 0.0]), real_line(&[0.0, 1.0]), real_line(&[1.0, 1.0])],
        )
        .unwrap();
        let c9 = orthocomplement(&s9, &tol());
        assert_eq!(c9.dims(), vec![1, 1, 1]);
        let back = orthocomplement(&c9, &tol());
        for (a, b) in back.subspaces().iter().zip(s9.subspaces()) {
            assert!(a.same_as(b, &tol()));
        }
    }

    #[test]
    fn defect_requires_four() {
        let s = SubspaceSystem::new(1, vec![Subspace::zero(1)]).unwrap();
        assert_eq!(defect(&s), Err(Error::Arity { expected: 4, got: 1 }));
    }

    #[test]
    fn defect_of_four_lines_in_plane() {
        let s = SubspaceSystem::new(
            2,
            vec![
                real_line(&[1.0, 0.0]),
                real_line(&[0.0, 1.0]),
                real_line(&[1.0, 1.0]),
                real_line(&[1.0, 2.0]),
            ],
        )
        .unwrap();
        assert_eq!(defect(&s).unwrap(), 0);
        assert_eq!(defect(&orthocomplement(&s, &tol())).unwrap(), 0);
    }

    #[test]
    fn permutation_swaps() {
        let s2 = SubspaceSystem::new(1, vec![Subspace::full(1), Subspace::zero(1)]).unwrap();
        let s3 = apply_permutation(&s2, &[1, 0]).unwrap();
        assert_eq!(s3.dims(), vec![0, 1]);
        assert_eq!(apply_permutation(&s2, &[0, 1]).unwrap(), s2);
        assert!(apply_permutation(&s2, &[0, 0]).is_err());
        assert!(apply_permutation(&s2, &[0]).is_err());
    }

    #[test]
    fn direct_sum_dims() {
        let s2 = SubspaceSystem::new(1, vec![Subspace::full(1)]).unwrap();
        let d = direct_sum(&s2, &s2).unwrap();
        assert_eq!(d.ambient_dim(), 2);
        assert_eq!(d.dims(), vec![2]);
    }

    #[test]
    fn intersection_and_sum() {
        let a = real_line(&[1.0, 0.0, 0.0]).sum(&real_line(&[0.0, 1.0, 0.0]), &tol());
        let b = real_line(&[0.0, 1.0, 0.0]).sum(&real_line(&[0.0, 0.0, 1.0]), &tol());
        assert_eq!(a.dim(), 2);
        let i = Subspace::intersection(&[&a, &b], &tol());
        assert_eq!(i.dim(), 1);
        assert!(i.same_as(&real_line(&[0.0, 1.0, 0.0]), &tol()));
        assert_eq!(a.sum(&b, &tol()).dim(), 3);
    }

    #[test]
    fn json_round_trip() {
        let s = SubspaceSystem::new(2, vec![real_line(&[1.0, 1.0]), Subspace::zero(2)]).unwrap();
        let back = SubspaceSystem::from_json(&s.to_json(), &tol()).unwrap();
        assert!(back.subspace(0).same_as(s.subspace(0), &tol()));
        assert_eq!(back.dims(), vec![1, 0]);

        let t = projections_from_system(&s, &tol());
        let back = ProjectionTuple::from_json(&t.to_json(), &tol()).unwrap();
        assert!(linalg::approx_eq(&back.projections()[0], &t.projections()[0], 1e-15));
    }

    #[test]
    fn json_reader_orthonormalizes_and_validates() {
        let doc = r#"{"ambient_dim": 2, "subspaces": [{"basis": [[[2,0]],[[0,0]]]}]}"#;
        let s = SubspaceSystem::from_json(doc, &tol()).unwrap();
        assert!(s.subspace(0).same_as(&real_line(&[1.0, 0.0]), &tol()));
        let bad = r#"{"ambient_dim": 3, "subspaces": [{"basis": [[[1,0]],[[0,0]]]}]}"#;
        assert!(matches!(SubspaceSystem::from_json(bad, &tol()), Err(Error::Parse(_))));
        let bad_alpha = r#"{"dim": 1, "alpha": 0.5, "projections": [[[[1,0]]]]}"#;
        assert!(ProjectionTuple::from_json(bad_alpha, &tol()).is_err());
    }
}
