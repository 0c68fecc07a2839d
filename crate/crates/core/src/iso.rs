//! Isomorphism of systems (exact order and up to rearrangement), unitary
//! equivalence of projection tuples, and the explicit correspondence between
//! `S(2,0;a,b,c)` and `B(2,0;λ)`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::endo::{self, HomSpace};
use crate::error::{Error, Result};
use crate::linalg::{self, c, ComplexMatrix, C64};
use crate::reps::OmegaPoint;
use crate::subspace::{apply_permutation, ProjectionTuple, Subspace, SubspaceSystem};
use crate::tolerance::TolerancePolicy;

/// Generic samples drawn before a negative answer is returned.
pub const SAMPLE_ATTEMPTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Confidence {
    Certain,
    ProbabilisticNegative,
}

#[derive(Debug, Clone)]
pub struct IsomorphismResult {
    pub isomorphic: bool,
    pub confidence: Confidence,
    /// `R` with `R(H_{σ(i)}) = H̃_i`.
    pub witness: Option<ComplexMatrix>,
    /// 0-based `σ`; identity for the exact-order test.
    pub permutation: Option<Vec<usize>>,
}

impl IsomorphismResult {
    fn no(confidence: Confidence) -> Self {
        Self {
            isomorphic: false,
            confidence,
            witness: None,
            permutation: None,
        }
    }
}

pub fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re * h, im * h)
}

fn is_invertible(m: &ComplexMatrix, tol: &TolerancePolicy) -> bool {
    m.is_square() && (m.nrows() == 0 || linalg::rank_or_zero(m, tol) == m.nrows())
}

fn sample_invertible<R: Rng + ?Sized>(hom: &HomSpace, rng: &mut R, tol: &TolerancePolicy) -> Option<ComplexMatrix> {
    if hom.dim() == 0 {
        return None;
    }
    (0..SAMPLE_ATTEMPTS).find_map(|_| {
        let coeffs: Vec<C64> = (0..hom.dim()).map(|_| gaussian_c64(rng)).collect();
        let r = hom.combine(&coeffs);
        is_invertible(&r, tol).then_some(r)
    })
}

fn invariants_differ(s: &SubspaceSystem, t: &SubspaceSystem, tol: &TolerancePolicy) -> bool {
    s.len() != t.len()
        || s.ambient_dim() != t.ambient_dim()
        || s.dims() != t.dims()
        || endo::end_dimension(s, tol) != endo::end_dimension(t, tol)
}

/// Decides `S ≅ S̃` with the subspaces kept in order.
pub fn is_isomorphic<R: Rng + ?Sized>(
    s: &SubspaceSystem,
    t: &SubspaceSystem,
    rng: &mut R,
    tol: &TolerancePolicy,
) -> IsomorphismResult {
    if invariants_differ(s, t, tol) {
        return IsomorphismResult::no(Confidence::Certain);
    }
    let hom = endo::hom_space(s, t, tol).expect("arity checked");
    if hom.dim() == 0 {
        return IsomorphismResult::no(Confidence::Certain);
    }
    match sample_invertible(&hom, rng, tol) {
        Some(r) => IsomorphismResult {
            isomorphic: true,
            confidence: Confidence::Certain,
            witness: Some(r),
            permutation: Some((0..s.len()).collect()),
        },
        None => IsomorphismResult::no(Confidence::ProbabilisticNegative),
    }
}

/// Next permutation in lexicographic order; `false` after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Decides whether `σ(S) ≅ S̃` for some rearrangement `σ`.
pub fn is_isomorphic_up_to_permutation<R: Rng + ?Sized>(
    s: &SubspaceSystem,
    t: &SubspaceSystem,
    rng: &mut R,
    tol: &TolerancePolicy,
) -> IsomorphismResult {
    let sorted = |x: &SubspaceSystem| {
        let mut d = x.dims();
        d.sort_unstable();
        d
    };
    if s.len() != t.len()
        || s.ambient_dim() != t.ambient_dim()
        || sorted(s) != sorted(t)
        || endo::end_dimension(s, tol) != endo::end_dimension(t, tol)
    {
        return IsomorphismResult::no(Confidence::Certain);
    }
    let mut sigma: Vec<usize> = (0..s.len()).collect();
    let mut confidence = Confidence::Certain;
    loop {
        let candidate = apply_permutation(s, &sigma).expect("valid permutation");
        if candidate.dims() == t.dims() {
            let res = is_isomorphic(&candidate, t, rng, tol);
            if res.isomorphic {
                return IsomorphismResult {
                    permutation: Some(sigma),
                    ..res
                };
            }
            if res.confidence == Confidence::ProbabilisticNegative {
                confidence = Confidence::ProbabilisticNegative;
            }
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    IsomorphismResult::no(confidence)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnitaryResult {
    pub equivalent: bool,
    /// `false` when the answer rests on a failed random search.
    pub certain: bool,
}

/// `U P_i = P̃_i U` for a unitary `U`.
///
/// For irreducible tuples the intertwiner space is at most one-dimensional
/// and its generator `R` is a multiple of a unitary iff `R*R` is scalar. In
/// general the unitary part of the polar decomposition of an invertible
/// intertwiner is again an intertwiner.
pub fn is_unitarily_equivalent<R: Rng + ?Sized>(
    a: &ProjectionTuple,
    b: &ProjectionTuple,
    rng: &mut R,
    tol: &TolerancePolicy,
) -> Result<UnitaryResult> {
    let yes = UnitaryResult {
        equivalent: true,
        certain: true,
    };
    let no = UnitaryResult {
        equivalent: false,
        certain: true,
    };
    if a.len() != b.len() {
        return Err(Error::Arity {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.dim() != b.dim() || a.ranks() != b.ranks() {
        return Ok(no);
    }
    if a.dim() == 0 {
        return Ok(yes);
    }
    let basis = endo::intertwiners(a, b, tol)?;
    if basis.is_empty() {
        return Ok(no);
    }
    let hom = HomSpace {
        source_dim: a.dim(),
        target_dim: b.dim(),
        basis,
        low_confidence: false,
    };
    if endo::is_irreducible(a, tol) {
        if hom.dim() != 1 {
            return Ok(no);
        }
        let r = &hom.basis[0];
        let rr = r.adjoint() * r;
        let scale = linalg::trace(&rr).re / a.dim() as f64;
        let scalar = scale > tol.identity_eps
            && linalg::approx_eq(
                &rr,
                &(linalg::identity(a.dim()) * c(scale, 0.0)),
                tol.identity_eps * scale.max(1.0),
            );
        return Ok(UnitaryResult {
            equivalent: scalar,
            certain: true,
        });
    }
    let Some(r) = sample_invertible(&hom, rng, tol) else {
        return Ok(UnitaryResult {
            equivalent: false,
            certain: false,
        });
    };
    let u = linalg::unitary_part(&r);
    let intertwines = a
        .projections()
        .iter()
        .zip(b.projections())
        .all(|(p, pt)| linalg::approx_eq(&(&u * p), &(pt * &u), tol.identity_eps.sqrt()));
    Ok(UnitaryResult {
        equivalent: intertwines,
        certain: intertwines,
    })
}

/// `λ(a,b,c) = ((b² − a²c²) + 2iabc) / (1 − a²)²`.
pub fn lemma2_lambda(p: &OmegaPoint, tol: &TolerancePolicy) -> Result<C64> {
    let OmegaPoint { a, b, c: cc } = *p;
    let den = 1.0 - a * a;
    if den.abs() <= tol.identity_eps {
        return Err(Error::Domain(format!("lambda has a pole at a = {a}")));
    }
    let den2 = den * den;
    Ok(c((b * b - a * a * cc * cc) / den2, 2.0 * a * b * cc / den2))
}

/// Semi-axes `(ã, b̃)` of the image ellipse of the arc at height `a`.
pub fn ellipse_axes(a: f64) -> (f64, f64) {
    let den = 1.0 - a * a;
    ((1.0 + a * a) / (2.0 * den), a / den)
}

/// The unique point of Ω with `lemma2_lambda(p) = λ`.
pub fn lemma2_inverse(lambda: C64, tol: &TolerancePolicy) -> Result<OmegaPoint> {
    let (x, y) = (lambda.re, lambda.im);
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::Domain(format!("lambda = {lambda} is not finite")));
    }
    if lambda.norm() <= tol.identity_eps || (lambda - c(1.0, 0.0)).norm() <= tol.identity_eps {
        return Err(Error::Domain(format!("lambda = {lambda} is 0 or 1")));
    }
    if y == 0.0 && x > 0.0 && x < 1.0 {
        return OmegaPoint::new(0.0, x.sqrt(), (1.0 - x).sqrt(), tol);
    }
    let excess = |a: f64| {
        let (ea, eb) = ellipse_axes(a);
        let u = (x - 0.5) / ea;
        let v = y / eb;
        u * u + v * v - 1.0
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if mid > 0.0 && excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = 0.5 * (lo + hi);
    let (ea, eb) = ellipse_axes(a);
    let phi = 0.5 * f64::atan2(y / eb, (x - 0.5) / ea);
    let rad = (1.0 - a * a).sqrt();
    let (mut b, mut cc) = (rad * phi.cos(), rad * phi.sin());
    if b.abs() <= tol.identity_eps {
        b = 0.0;
        cc = rad;
    }
    OmegaPoint::new(a, b, cc, tol)
}

#[derive(Debug, Clone)]
pub struct Theorem8Witness {
    pub r: ComplexMatrix,
    /// Subspace `i` of `B(2,0;λ)` is the image of subspace `σ(i)` of `S(2,0;a,b,c)`.
    pub sigma: [usize; 4],
    pub lambda: C64,
    /// `|(I − P_{K_i}) R Π_{σ(i)}|` per target subspace.
    pub residuals: [f64; 4],
    pub det: C64,
}

/// `Im P_1 → K_1`, `Im P_3 → K_2`, `Im P_4 → K_3`, `Im P_2 → K_4`.
pub const THEOREM8_SIGMA: [usize; 4] = [0, 2, 3, 1];

/// The explicit intertwiner `R` from `S(2,0;a,b,c)` onto `B(2,0;λ)`, with
/// `A = 1 + a`, `B = b − ic`.
pub fn theorem8_witness(p: &OmegaPoint, tol: &TolerancePolicy) -> Result<Theorem8Witness> {
    let p = OmegaPoint::new(p.a, p.b, p.c, tol)?;
    let aa = c(1.0 + p.a, 0.0);
    let bb = c(p.b, -p.c);
    if bb.norm() <= tol.identity_eps {
        return Err(Error::Parameter("B = b - ic vanishes".into()));
    }
    let s = aa * aa + bb * bb;
    let r = ComplexMatrix::from_row_slice(
        2,
        2,
        &[
            c(1.0, 0.0),
            bb / aa,
            s / (c(2.0, 0.0) * aa * aa),
            s / (c(2.0, 0.0) * aa * bb),
        ],
    );
    let det = r[(0, 0)] * r[(1, 1)] - r[(0, 1)] * r[(1, 0)];
    if det.norm() <= tol.identity_eps {
        return Err(Error::Parameter(format!("R is singular at {p:?}")));
    }
    let lambda = lemma2_lambda(&p, tol)?;
    let source = crate::reps::build_rep(&crate::reps::RepFamilyId::s200(p), tol)?;
    let target = crate::brenner::build_brenner(&crate::brenner::BrennerFamilyId::one(lambda), tol)?;
    let mut residuals = [0.0; 4];
    for (i, &j) in THEOREM8_SIGMA.iter().enumerate() {
        let image = Subspace::span_of_columns(&source.projections()[j], tol);
        let k = target.subspace(i);
        let off = linalg::identity(2) - k.projector();
        residuals[i] = linalg::max_abs(&(off * &r * image.basis()));
    }
    Ok(Theorem8Witness {
        r,
        sigma: THEOREM8_SIGMA,
        lambda,
        residuals,
        det,
    })
}
