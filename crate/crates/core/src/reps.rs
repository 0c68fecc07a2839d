//! Explicit irreducible tuples of projections with scalar sum: the complete
//! lists for `n ≤ 3` and the quadruple families `S(u, ρ)` built from the
//! 2×2 blocks `A, B, C, D`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, c, ComplexMatrix};
use crate::subspace::{system_from_projections, ProjectionTuple, SubspaceSystem};
use crate::tolerance::TolerancePolicy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    A,
    B,
    C,
    D,
}

/// `A_{ℓ,m}` and its relatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AbcdBlock {
    pub kind: BlockKind,
    pub ell: usize,
    pub m: usize,
}

impl AbcdBlock {
    pub fn new(kind: BlockKind, ell: usize, m: usize) -> Result<Self> {
        if m == 0 || ell > m {
            return Err(Error::Parameter(format!(
                "need 0 <= ell <= m, m >= 1; got ell={ell}, m={m}"
            )));
        }
        Ok(Self { kind, ell, m })
    }
}

/// The 2×2 matrix of a block.
pub fn abcd(block: &AbcdBlock) -> ComplexMatrix {
    let (l, m) = (block.ell as f64, block.m as f64);
    let off = (l * (m - l)).sqrt() / m;
    let (hi, lo) = ((m - l) / m, l / m);
    let entries = match block.kind {
        BlockKind::A => [hi, -off, -off, lo],
        BlockKind::B => [hi, off, off, lo],
        BlockKind::C => [lo, off, off, hi],
        BlockKind::D => [lo, -off, -off, hi],
    };
    linalg::from_real_rows(2, 2, &entries)
}

/// A point `(a, b, c)` of the unit sphere inside the parameter region Ω.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OmegaPoint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl OmegaPoint {
    pub fn new(a: f64, b: f64, c: f64, tol: &TolerancePolicy) -> Result<Self> {
        let p = Self { a, b, c };
        if p.in_region(tol.identity_eps) {
            Ok(p)
        } else {
            Err(Error::Region { a, b, c })
        }
    }

    /// `(a>0, b>0, |c|<1)`, or `a=0, b>0, c>0`, or `b=0, a>0, c>0`, on the sphere.
    pub fn in_region(&self, eps: f64) -> bool {
        let Self { a, b, c } = *self;
        if ![a, b, c].iter().all(|x| x.is_finite()) {
            return false;
        }
        if (a * a + b * b + c * c - 1.0).abs() > eps {
            return false;
        }
        let (a0, b0) = (a.abs() <= eps, b.abs() <= eps);
        (!a0 && a > 0.0 && !b0 && b > 0.0 && c.abs() < 1.0)
            || (a0 && b > 0.0 && !b0 && c > eps)
            || (b0 && a > 0.0 && !a0 && c > eps)
    }

    /// Spherical point from angles: `a = sin θ cos φ`, `b = sin θ sin φ`, `c = cos θ`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            a: theta.sin() * phi.cos(),
            b: theta.sin() * phi.sin(),
            c: theta.cos(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RepFamily {
    /// `S(2,0;a,b,c)`.
    S200,
    /// `S(2r, 1)`, `r ≥ 2`.
    EvenPlus1,
    /// `S(2r, −1)`, `r ≥ 2`.
    EvenMinus1,
    /// `S(2r+1, 1)`, `r ≥ 1`.
    OddPlus1,
    /// `S(2r+1, −1)`, `r ≥ 1`.
    OddMinus1,
    /// `S(2r+1, 2)`, `r ≥ 1`.
    OddPlus2,
    /// `S(2r+1, −2)`, `r ≥ 1`.
    OddMinus2,
}

impl RepFamily {
    pub const ALL: [RepFamily; 7] = [
        Self::S200,
        Self::EvenPlus1,
        Self::EvenMinus1,
        Self::OddPlus1,
        Self::OddMinus1,
        Self::OddPlus2,
        Self::OddMinus2,
    ];

    pub fn min_r(self) -> usize {
        match self {
            Self::S200 => 0,
            Self::EvenPlus1 | Self::EvenMinus1 => 2,
            _ => 1,
        }
    }

    /// `(u, ρ)` at size `r`.
    pub fn dims(self, r: usize) -> (usize, i64) {
        match self {
            Self::S200 => (2, 0),
            Self::EvenPlus1 => (2 * r, 1),
            Self::EvenMinus1 => (2 * r, -1),
            Self::OddPlus1 => (2 * r + 1, 1),
            Self::OddMinus1 => (2 * r + 1, -1),
            Self::OddPlus2 => (2 * r + 1, 2),
            Self::OddMinus2 => (2 * r + 1, -2),
        }
    }

    /// Looks a family up by `(u, ρ)`; returns it with its `r`.
    pub fn from_name(u: usize, rho: i64) -> Result<(Self, usize)> {
        let even = u.is_multiple_of(2);
        let found = match (rho, even) {
            (0, true) if u == 2 => Some((Self::S200, 0)),
            (1, true) => Some((Self::EvenPlus1, u / 2)),
            (-1, true) => Some((Self::EvenMinus1, u / 2)),
            (1, false) => Some((Self::OddPlus1, u / 2)),
            (-1, false) => Some((Self::OddMinus1, u / 2)),
            (2, false) => Some((Self::OddPlus2, u / 2)),
            (-2, false) => Some((Self::OddMinus2, u / 2)),
            _ => None,
        };
        match found {
            Some((f, r)) if r >= f.min_r() => Ok((f, r)),
            _ => Err(Error::Parameter(format!("no family S({u},{rho})"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepFamilyId {
    pub family: RepFamily,
    pub r: usize,
    pub omega: Option<OmegaPoint>,
}

impl RepFamilyId {
    pub fn s200(p: OmegaPoint) -> Self {
        Self {
            family: RepFamily::S200,
            r: 0,
            omega: Some(p),
        }
    }

    pub fn sized(family: RepFamily, r: usize) -> Self {
        Self { family, r, omega: None }
    }

    pub fn dims(&self) -> (usize, i64) {
        self.family.dims(self.r)
    }

    pub fn name(&self) -> String {
        let (u, rho) = self.dims();
        match self.omega {
            Some(p) => format!("S({u},{rho};{},{},{})", p.a, p.b, p.c),
            None => format!("S({u},{rho})"),
        }
    }
}

enum Piece {
    One,
    Zero,
    Block(BlockKind, usize),
}

/// `hi, hi−2, …, lo`.
fn ells(hi: usize, lo: usize) -> Vec<usize> {
    (lo..=hi).rev().step_by(2).collect()
}

fn assemble(m: usize, pieces: &[Piece]) -> ComplexMatrix {
    let blocks: Vec<ComplexMatrix> = pieces
        .iter()
        .map(|p| match p {
            Piece::One => linalg::identity(1),
            Piece::Zero => ComplexMatrix::zeros(1, 1),
            Piece::Block(kind, l) => abcd(&AbcdBlock {
                kind: *kind,
                ell: *l,
                m,
            }),
        })
        .collect();
    linalg::block_diag(&blocks)
}

fn run(kind: BlockKind, ls: &[usize]) -> impl Iterator<Item = Piece> + '_ {
    ls.iter().map(move |&l| Piece::Block(kind, l))
}

fn with(head: Option<Piece>, body: impl Iterator<Item = Piece>, tail: Option<Piece>) -> Vec<Piece> {
    head.into_iter().chain(body).chain(tail).collect()
}

fn s200_matrices(p: &OmegaPoint) -> Vec<ComplexMatrix> {
    let OmegaPoint { a, b, c: cc } = *p;
    let m = |e: [(f64, f64); 4]| ComplexMatrix::from_row_slice(2, 2, &e.map(|(re, im)| c(re / 2.0, im / 2.0)));
    vec![
        m([(1.0 + a, 0.0), (-b, -cc), (-b, cc), (1.0 - a, 0.0)]),
        m([(1.0 - a, 0.0), (b, -cc), (b, cc), (1.0 + a, 0.0)]),
        m([(1.0 - a, 0.0), (-b, cc), (-b, -cc), (1.0 + a, 0.0)]),
        m([(1.0 + a, 0.0), (b, cc), (b, -cc), (1.0 - a, 0.0)]),
    ]
}

/// The four projection matrices of a family member (no validation).
pub fn rep_matrices(id: &RepFamilyId, tol: &TolerancePolicy) -> Result<Vec<ComplexMatrix>> {
    use BlockKind::*;
    use Piece::{One, Zero};
    let r = id.r;
    if id.family == RepFamily::S200 {
        let p = id
            .omega
            .ok_or_else(|| Error::Parameter("S(2,0;a,b,c) needs a point of Omega".into()))?;
        let p = OmegaPoint::new(p.a, p.b, p.c, tol)?;
        return Ok(s200_matrices(&p));
    }
    if r < id.family.min_r() {
        return Err(Error::Parameter(format!(
            "{} needs r >= {}, got {r}",
            id.name(),
            id.family.min_r()
        )));
    }
    let (odd_hi, even_hi) = (2 * r - 1, 2 * r);
    let odd = ells(odd_hi, 1);
    let even_mid = ells(2 * r - 2, 2);
    let even = ells(even_hi, 2);
    let mats = match id.family {
        RepFamily::S200 => unreachable!(),
        RepFamily::EvenPlus1 => {
            let m = 4 * r;
            vec![
                assemble(m, &with(None, run(A, &odd), None)),
                assemble(m, &with(None, run(B, &odd), None)),
                assemble(m, &with(Some(Zero), run(B, &even_mid), Some(One))),
                assemble(m, &with(Some(One), run(A, &even_mid), Some(One))),
            ]
        }
        RepFamily::EvenMinus1 => {
            let m = 4 * r;
            vec![
                assemble(m, &with(None, run(C, &odd), None)),
                assemble(m, &with(None, run(D, &odd), None)),
                assemble(m, &with(Some(One), run(D, &even_mid), Some(Zero))),
                assemble(m, &with(Some(Zero), run(C, &even_mid), Some(Zero))),
            ]
        }
        RepFamily::OddPlus1 => {
            let m = 4 * r + 2;
            vec![
                assemble(m, &with(None, run(A, &even), Some(One))),
                assemble(m, &with(None, run(B, &even), Some(One))),
                assemble(m, &with(Some(One), run(B, &odd), None)),
                assemble(m, &with(Some(Zero), run(A, &odd), None)),
            ]
        }
        RepFamily::OddMinus1 => {
            let m = 4 * r + 2;
            vec![
                assemble(m, &with(None, run(C, &even), Some(Zero))),
                assemble(m, &with(None, run(D, &even), Some(Zero))),
                assemble(m, &with(Some(Zero), run(D, &odd), None)),
                assemble(m, &with(Some(One), run(C, &odd), None)),
            ]
        }
        RepFamily::OddPlus2 => {
            let m = 2 * r + 1;
            vec![
                assemble(m, &with(Some(One), run(A, &odd), None)),
                assemble(m, &with(Some(One), run(B, &odd), None)),
                assemble(m, &with(None, run(B, &even), Some(One))),
                assemble(m, &with(None, run(A, &even), Some(One))),
            ]
        }
        RepFamily::OddMinus2 => {
            let m = 2 * r + 1;
            vec![
                assemble(m, &with(Some(Zero), run(C, &odd), None)),
                assemble(m, &with(Some(Zero), run(D, &odd), None)),
                assemble(m, &with(None, run(D, &even), Some(Zero))),
                assemble(m, &with(None, run(C, &even), Some(Zero))),
            ]
        }
    };
    Ok(mats)
}

/// Builds and validates the tuple; α comes from the trace of the sum.
pub fn build_rep(id: &RepFamilyId, tol: &TolerancePolicy) -> Result<ProjectionTuple> {
    let mats = rep_matrices(id, tol)?;
    let (u, _) = id.dims();
    let t = ProjectionTuple::new(u, mats, tol)?;
    if t.alpha().is_none() {
        return Err(Error::Certificate(format!("{}: sum is not scalar", id.name())));
    }
    Ok(t)
}

/// `(U; Im P_1, …, Im P_4)` with its label.
pub fn rep_to_system(id: &RepFamilyId, tol: &TolerancePolicy) -> Result<(String, SubspaceSystem)> {
    let t = build_rep(id, tol)?;
    Ok((id.name(), system_from_projections(&t, tol)?))
}

/// Every family member with `u ≤ u_max`; `S(2,0;·)` once per supplied point.
pub fn enumerate_reps(u_max: usize, points: &[OmegaPoint]) -> Vec<RepFamilyId> {
    let mut out = Vec::new();
    for family in RepFamily::ALL {
        if family == RepFamily::S200 {
            if u_max >= 2 {
                out.extend(points.iter().map(|&p| RepFamilyId::s200(p)));
            }
            continue;
        }
        let mut r = family.min_r();
        while family.dims(r).0 <= u_max {
            out.push(RepFamilyId::sized(family, r));
            r += 1;
        }
    }
    out
}

/// One of the listed irreducible tuples for `n ≤ 3`.
///
/// For integer `α = k` the tuples on `ℂ` have exactly `k` identities; the
/// variants follow the listed order (for `α = 1` variant `j` has
/// `P_{j+1} = I`, for `α = n − 1` variant `j` has `P_{j+1} = 0`).
pub fn build_small_rep(n: usize, alpha: f64, variant: usize, tol: &TolerancePolicy) -> Result<ProjectionTuple> {
    if !(1..=3).contains(&n) {
        return Err(Error::Parameter(format!("explicit lists cover n = 1, 2, 3; got {n}")));
    }
    let bad = || {
        Error::Parameter(format!(
            "no representation with n={n}, alpha={alpha}, variant={variant}"
        ))
    };
    if n == 3 && (alpha - 1.5).abs() < 1e-12 {
        if variant != 0 {
            return Err(bad());
        }
        let s = 3f64.sqrt() / 4.0;
        let ps = vec![
            linalg::from_real_rows(2, 2, &[1.0, 0.0, 0.0, 0.0]),
            linalg::from_real_rows(2, 2, &[0.25, s, s, 0.75]),
            linalg::from_real_rows(2, 2, &[0.25, -s, -s, 0.75]),
        ];
        return ProjectionTuple::new(2, ps, tol);
    }
    let k = alpha.round();
    if (alpha - k).abs() > 1e-12 || k < 0.0 || k as usize > n {
        return Err(bad());
    }
    let k = k as usize;
    let pattern: Vec<bool> = if k == 0 || k == n {
        if variant != 0 {
            return Err(bad());
        }
        vec![k == n; n]
    } else if k == 1 {
        if variant >= n {
            return Err(bad());
        }
        (0..n).map(|i| i == variant).collect()
    } else {
        if variant >= n {
            return Err(bad());
        }
        (0..n).map(|i| i != variant).collect()
    };
    let ps = pattern
        .into_iter()
        .map(|on| {
            if on {
                linalg::identity(1)
            } else {
                ComplexMatrix::zeros(1, 1)
            }
        })
        .collect();
    ProjectionTuple::new(1, ps, tol)
}

/// All listed tuples for `n ≤ 3` as `(α, variant, tuple)`.
pub fn small_reps(n: usize, tol: &TolerancePolicy) -> Result<Vec<(f64, usize, ProjectionTuple)>> {
    let alphas: &[f64] = match n {
        1 => &[0.0, 1.0],
        2 => &[0.0, 1.0, 2.0],
        3 => &[0.0, 1.0, 1.5, 2.0, 3.0],
        _ => return Err(Error::Parameter(format!("explicit lists cover n = 1, 2, 3; got {n}"))),
    };
    let mut out = Vec::new();
    for &a in alphas {
        let mut v = 0;
        while let Ok(t) = build_small_rep(n, a, v, tol) {
            out.push((a, v, t));
            v += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo;
    use crate::subspace::defect;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn block_examples() {
        let a12 = abcd(&AbcdBlock::new(BlockKind::A, 1, 2).unwrap());
        assert!(linalg::approx_eq(
            &a12,
            &linalg::from_real_rows(2, 2, &[0.5, -0.5, -0.5, 0.5]),
            1e-15
        ));
        let a0 = abcd(&AbcdBlock::new(BlockKind::A, 0, 5).unwrap());
        assert!(linalg::approx_eq(
            &a0,
            &linalg::from_real_rows(2, 2, &[1.0, 0.0, 0.0, 0.0]),
            1e-15
        ));
        for (l, m) in [(1, 3), (2, 7), (5, 8)] {
            let a = abcd(&AbcdBlock::new(BlockKind::A, l, m).unwrap());
            let cb = abcd(&AbcdBlock::new(BlockKind::C, l, m).unwrap());
            assert!(linalg::approx_eq(&(a + cb), &linalg::identity(2), 1e-15));
            let b = abcd(&AbcdBlock::new(BlockKind::B, l, m).unwrap());
            assert!(linalg::is_orthogonal_projection(&b, 1e-12));
        }
        assert!(AbcdBlock::new(BlockKind::A, 3, 2).is_err());
    }

    #[test]
    fn omega_region() {
        let t = tol();
        let h = 0.5f64.sqrt();
        assert!(OmegaPoint::new(0.0, h, h, &t).is_ok());
        assert!(OmegaPoint::new(h, 0.0, h, &t).is_ok());
        assert!(matches!(OmegaPoint::new(0.0, h, -h, &t), Err(Error::Region { .. })));
        assert!(OmegaPoint::new(1.0, 0.0, 0.0, &t).is_err());
        assert!(OmegaPoint::new(0.5, 0.5, 0.5, &t).is_err());
    }

    #[test]
    fn s200_sums_to_two() {
        let p = OmegaPoint::from_angles(1.1, 0.4);
        let t = build_rep(&RepFamilyId::s200(p), &tol()).unwrap();
        assert!((t.alpha().unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(t.ranks(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn alpha_of_s41() {
        let t = build_rep(&RepFamilyId::sized(RepFamily::EvenPlus1, 2), &tol()).unwrap();
        assert!((t.alpha().unwrap() - 2.25).abs() < 1e-12);
    }

    #[test]
    fn defects_match_names() {
        for id in enumerate_reps(9, &[OmegaPoint::from_angles(0.9, 0.3)]) {
            let (_, s) = rep_to_system(&id, &tol()).unwrap();
            assert_eq!(defect(&s).unwrap(), id.dims().1, "{}", id.name());
            let t = build_rep(&id, &tol()).unwrap();
            assert!(endo::is_irreducible(&t, &tol()), "{}", id.name());
        }
    }

    #[test]
    fn family_lookup() {
        assert_eq!(RepFamily::from_name(5, -2).unwrap(), (RepFamily::OddMinus2, 2));
        assert!(RepFamily::from_name(2, 1).is_err());
        assert!(build_rep(&RepFamilyId::sized(RepFamily::EvenMinus1, 1), &tol()).is_err());
    }

    #[test]
    fn small_lists() {
        let t = tol();
        let first = build_small_rep(2, 1.0, 0, &t).unwrap();
        assert_eq!(first.ranks(), vec![1, 0]);
        assert_eq!(build_small_rep(3, 0.0, 0, &t).unwrap().ranks(), vec![0, 0, 0]);
        assert_eq!(build_small_rep(3, 3.0, 0, &t).unwrap().ranks(), vec![1, 1, 1]);
        assert_eq!(build_small_rep(3, 2.0, 0, &t).unwrap().ranks(), vec![0, 1, 1]);
        let half = build_small_rep(3, 1.5, 0, &t).unwrap();
        assert_eq!(half.dim(), 2);
        assert!((half.alpha().unwrap() - 1.5).abs() < 1e-12);
        assert!(build_small_rep(3, 2.5, 0, &t).is_err());
        let counts: Vec<usize> = (1..=3).map(|n| small_reps(n, &t).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 4, 9]);
    }
}
