//! Dense complex linear algebra with one tolerance discipline.
//!
//! Every rank decision goes through singular values with a relative cutoff
//! (`rank_eps`), and every "is this the identity / zero" question goes through
//! a max-abs comparison at `identity_eps`. Matrices here are small (the
//! largest hom-space solves are a few hundred rows by ~100 columns).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::TolerancePolicy;

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;

/// Singular values within this factor of the cutoff make a rank "low confidence".
const CONFIDENCE_BAND: f64 = 1e3;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Builds a complex matrix from a row-major slice of reals.
pub fn from_real_rows(rows: usize, cols: usize, data: &[f64]) -> ComplexMatrix {
    assert_eq!(data.len(), rows * cols, "row-major data length mismatch");
    ComplexMatrix::from_fn(rows, cols, |i, j| c(data[i * cols + j], 0.0))
}

/// Builds a complex matrix from nested rows. All rows must have equal length.
pub fn from_rows(rows: &[Vec<C64>]) -> Result<ComplexMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension("ragged rows".into()));
    }
    let m = ComplexMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
    ensure_finite(&m)?;
    Ok(m)
}

pub fn ensure_finite(m: &ComplexMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::Parse("matrix contains NaN or infinite entries".into()))
    }
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Max-abs distance between two equally shaped matrices; `inf` on shape mismatch.
pub fn distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    max_abs(&(a - b))
}

pub fn approx_eq(a: &ComplexMatrix, b: &ComplexMatrix, eps: f64) -> bool {
    distance(a, b) <= eps
}

pub fn is_hermitian(m: &ComplexMatrix, eps: f64) -> bool {
    m.is_square() && approx_eq(m, &m.adjoint(), eps)
}

pub fn is_idempotent(m: &ComplexMatrix, eps: f64) -> bool {
    m.is_square() && approx_eq(&(m * m), m, eps)
}

/// Hermitian and idempotent within `eps`.
pub fn is_orthogonal_projection(m: &ComplexMatrix, eps: f64) -> bool {
    is_hermitian(m, eps) && is_idempotent(m, eps)
}

/// Outcome of a thresholded rank computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    /// Some singular value sat close to the cutoff; the rank is fragile.
    pub low_confidence: bool,
}

fn cutoff(sv: &[f64], tol: &TolerancePolicy) -> f64 {
    let largest = sv.iter().copied().fold(0.0, f64::max);
    tol.rank_eps * largest.max(1.0)
}

fn report_from_singular_values(sv: &[f64], tol: &TolerancePolicy) -> RankReport {
    let thr = cutoff(sv, tol);
    let rank = sv.iter().filter(|&&s| s > thr).count();
    let low_confidence = sv
        .iter()
        .any(|&s| s > thr / CONFIDENCE_BAND && s < thr * CONFIDENCE_BAND);
    RankReport { rank, low_confidence }
}

/// Orthonormal `k`-frame for the complex span of `candidates`, taking the
/// largest remaining residual at each step.
fn pivoted_orthonormal(mut candidates: Vec<DVector<C64>>, k: usize, dim: usize) -> ComplexMatrix {
    let mut basis: Vec<DVector<C64>> = Vec::with_capacity(k);
    while basis.len() < k && !candidates.is_empty() {
        let (idx, norm) = candidates
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        if norm == 0.0 {
            break;
        }
        let mut q = candidates.swap_remove(idx);
        for _ in 0..2 {
            for b in &basis {
                let p = b.dotc(&q);
                q -= b * p;
            }
        }
        let nq = q.norm();
        q /= c(nq, 0.0);
        // Fix the phase: the first entry of (near-)maximal modulus becomes real positive.
        let top = q.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if let Some(z) = q.iter().find(|z| z.norm() >= top * (1.0 - 1e-9)) {
            q *= z.conj() / c(z.norm(), 0.0);
        }
        for v in candidates.iter_mut() {
            let p = q.dotc(v);
            *v -= &q * p;
        }
        basis.push(q);
    }
    if basis.is_empty() {
        ComplexMatrix::zeros(dim, 0)
    } else {
        // Columns are unit vectors, so components this small are round-off.
        ComplexMatrix::from_columns(&basis).map(|z| c(snap(z.re), snap(z.im)))
    }
}

fn snap(x: f64) -> f64 {
    if x.abs() < 8.0 * f64::EPSILON {
        0.0
    } else {
        x
    }
}

/// Singular triplets read off the Hermitian eigenproblem of
/// `[[0, X], [X*, 0]]`, whose eigenvalues are `±σ_i` with eigenvectors
/// `(u_i; ±v_i)/√2`. nalgebra's bidiagonal SVD can stop early on repeated
/// singular values and return factors that do not reproduce `X`.
struct Svd {
    /// Descending, `min(p, q)` of them.
    sv: Vec<f64>,
    /// Column `i` pairs with `sv[i]`; meaningful only for `sv[i] > 0`.
    left: ComplexMatrix,
    right: ComplexMatrix,
}

fn svd(x: &ComplexMatrix) -> Svd {
    let (p, q) = x.shape();
    let mut jw = ComplexMatrix::zeros(p + q, p + q);
    jw.view_mut((0, p), (p, q)).copy_from(x);
    jw.view_mut((p, 0), (q, p)).copy_from(&x.adjoint());
    let eig = jw.symmetric_eigen();
    let mut order: Vec<usize> = (0..p + q).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let top = &order[..p.min(q)];
    let r2 = c(std::f64::consts::SQRT_2, 0.0);
    Svd {
        sv: top.iter().map(|&i| eig.eigenvalues[i].max(0.0)).collect(),
        left: ComplexMatrix::from_fn(p, top.len(), |r, j| r2 * eig.eigenvectors[(r, top[j])]),
        right: ComplexMatrix::from_fn(q, top.len(), |r, j| r2 * eig.eigenvectors[(p + r, top[j])]),
    }
}

/// Same singular values and right singular vectors, at most `q` rows.
fn fewer_rows(x: &ComplexMatrix) -> ComplexMatrix {
    if x.nrows() > x.ncols() {
        x.clone().qr().r()
    } else {
        x.clone()
    }
}

/// Same singular values and left singular vectors, at most `p` columns.
fn fewer_cols(x: &ComplexMatrix) -> ComplexMatrix {
    if x.ncols() > x.nrows() {
        x.adjoint().qr().r().adjoint()
    } else {
        x.clone()
    }
}

fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    svd(&fewer_cols(&fewer_rows(m))).sv
}

/// Orthonormal basis of the orthogonal complement of the orthonormal columns `w`.
fn complement_of(w: &ComplexMatrix, dim: usize) -> ComplexMatrix {
    let k = dim - w.ncols();
    if k == 0 {
        return ComplexMatrix::zeros(dim, 0);
    }
    let p = identity(dim) - w * w.adjoint();
    pivoted_orthonormal(p.column_iter().map(|c| c.into_owned()).collect(), k, dim)
}

pub fn rank_report(m: &ComplexMatrix, tol: &TolerancePolicy) -> Result<RankReport> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(Error::Dimension(format!(
            "rank of an empty {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(report_from_singular_values(&singular_values(m), tol))
}

/// Number of singular values above `rank_eps · max(1, σ_max)`.
pub fn rank(m: &ComplexMatrix, tol: &TolerancePolicy) -> Result<usize> {
    rank_report(m, tol).map(|r| r.rank)
}

/// Rank that treats empty matrices as rank 0.
pub(crate) fn rank_or_zero(m: &ComplexMatrix, tol: &TolerancePolicy) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        0
    } else {
        report_from_singular_values(&singular_values(m), tol).rank
    }
}

/// Orthonormal columns spanning the null space of `m`, plus a confidence flag.
pub fn kernel_basis_report(m: &ComplexMatrix, tol: &TolerancePolicy) -> (ComplexMatrix, bool) {
    let n = m.ncols();
    if n == 0 {
        return (ComplexMatrix::zeros(0, 0), false);
    }
    if m.nrows() == 0 || max_abs(m) == 0.0 {
        return (identity(n), false);
    }
    let svd = svd(&fewer_rows(m));
    let report = report_from_singular_values(&svd.sv, tol);
    // The kernel is the complement of the row space, spanned by the leading right vectors.
    let candidates = (0..report.rank).map(|i| svd.right.column(i).into_owned()).collect();
    let row_space = pivoted_orthonormal(candidates, report.rank, n);
    (complement_of(&row_space, n), report.low_confidence)
}

pub fn kernel_basis(m: &ComplexMatrix, tol: &TolerancePolicy) -> ComplexMatrix {
    kernel_basis_report(m, tol).0
}

/// Orthonormal basis (as columns) of the column span of `m`.
pub fn column_span_basis(m: &ComplexMatrix, tol: &TolerancePolicy) -> ComplexMatrix {
    let rows = m.nrows();
    if m.ncols() == 0 || rows == 0 || max_abs(m) == 0.0 {
        return ComplexMatrix::zeros(rows, 0);
    }
    let svd = svd(&fewer_cols(m));
    let rank = report_from_singular_values(&svd.sv, tol).rank;
    let candidates = (0..rank).map(|i| svd.left.column(i).into_owned()).collect();
    pivoted_orthonormal(candidates, rank, rows)
}

/// Orthonormal basis (as columns) of the span of the rows of `spanning_rows`.
///
/// Rows are read as plain vectors (transposed, not conjugated), matching the
/// convention that a subspace is "the linear span of the rows" of a matrix.
pub fn orthonormalize(spanning_rows: &ComplexMatrix, tol: &TolerancePolicy) -> ComplexMatrix {
    column_span_basis(&spanning_rows.transpose(), tol)
}

/// Block-diagonal assembly; an empty list gives the 0×0 matrix.
pub fn block_diag(blocks: &[ComplexMatrix]) -> ComplexMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = ComplexMatrix::zeros(rows, cols);
    let (mut r, mut c0) = (0, 0);
    for b in blocks {
        out.view_mut((r, c0), b.shape()).copy_from(b);
        r += b.nrows();
        c0 += b.ncols();
    }
    out
}

/// Stacks constraint blocks (each with `unknowns` columns) and returns an
/// orthonormal basis of their common solution space, one solution per column.
pub fn solve_homogeneous(
    constraint_rows: &[ComplexMatrix],
    unknowns: usize,
    tol: &TolerancePolicy,
) -> Result<ComplexMatrix> {
    if let Some(bad) = constraint_rows.iter().find(|b| b.ncols() != unknowns) {
        return Err(Error::Dimension(format!(
            "constraint block has {} columns, expected {unknowns}",
            bad.ncols()
        )));
    }
    let total: usize = constraint_rows.iter().map(|b| b.nrows()).sum();
    let mut stacked = ComplexMatrix::zeros(total, unknowns);
    let mut r = 0;
    for b in constraint_rows {
        stacked.view_mut((r, 0), b.shape()).copy_from(b);
        r += b.nrows();
    }
    Ok(kernel_basis(&stacked, tol))
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Reshapes a column-major vectorization back into a `rows × cols` matrix.
pub fn unvec(v: &[C64], rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_column_slice(rows, cols, v)
}

/// `R (R*R)^{-1/2}` for invertible `R`, via the Hermitian eigendecomposition of `R*R`.
pub fn unitary_part(r: &ComplexMatrix) -> ComplexMatrix {
    let eig = (r.adjoint() * r).symmetric_eigen();
    let inv_sqrt = eig.eigenvalues.map(|l| c(1.0 / l.max(f64::MIN_POSITIVE).sqrt(), 0.0));
    let q = &eig.eigenvectors;
    r * q * ComplexMatrix::from_diagonal(&inv_sqrt) * q.adjoint()
}

/// Sum of diagonal entries.
pub fn trace(m: &ComplexMatrix) -> C64 {
    m.diagonal().iter().sum()
}
