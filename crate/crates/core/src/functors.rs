//! The reflection functors `T : α ↦ n − α` and `S : α ↦ α/(α−1)` on tuples
//! of projections with scalar sum.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, c, ComplexMatrix};
use crate::subspace::ProjectionTuple;
use crate::tolerance::TolerancePolicy;

/// `(I − P_1, …, I − P_n)`, with `α' = n − α`.
pub fn functor_t(t: &ProjectionTuple, tol: &TolerancePolicy) -> Result<ProjectionTuple> {
    let n = t.len() as f64;
    if t.dim() == 0 {
        return Ok(ProjectionTuple::empty(t.len(), t.alpha().map(|a| n - a)));
    }
    let id = linalg::identity(t.dim());
    let ps = t.projections().iter().map(|p| &id - p).collect();
    ProjectionTuple::new(t.dim(), ps, tol)
}

/// The data behind `S`: `Γ = [Γ_1 … Γ_n]` embeds `⊕ Im P_k` into `H`, and
/// `Δ_k : Im P_k → Ĥ` are the blocks of `√(α/(α−1)) V*` for an isometry `V`
/// onto `ker Γ`.
#[derive(Debug, Clone)]
pub struct CoxeterSWitness {
    pub alpha: f64,
    pub gamma: ComplexMatrix,
    pub gamma_blocks: Vec<ComplexMatrix>,
    pub delta_blocks: Vec<ComplexMatrix>,
    pub hat_dim: usize,
}

/// Max-abs residuals of the identities the witness must satisfy.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WitnessResiduals {
    /// `ΓΓ* − αI`.
    pub gamma_gamma_star: f64,
    /// `Σ Γ_k Δ_k*`.
    pub sum_gamma_delta: f64,
    /// `Γ_i*Γ_j + (α−1) Δ_i*Δ_j`, `i ≠ j`.
    pub cross: f64,
    /// `Δ_k*Δ_k − I`.
    pub delta_isometry: f64,
}

impl WitnessResiduals {
    pub fn max(&self) -> f64 {
        [
            self.gamma_gamma_star,
            self.sum_gamma_delta,
            self.cross,
            self.delta_isometry,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl CoxeterSWitness {
    pub fn residuals(&self) -> WitnessResiduals {
        let d = self.gamma.nrows();
        let alpha = self.alpha;
        let gamma_gamma_star = linalg::distance(
            &(&self.gamma * self.gamma.adjoint()),
            &(linalg::identity(d) * c(alpha, 0.0)),
        );
        let sum = self
            .gamma_blocks
            .iter()
            .zip(&self.delta_blocks)
            .fold(ComplexMatrix::zeros(d, self.hat_dim), |acc, (g, dl)| {
                acc + g * dl.adjoint()
            });
        let mut cross: f64 = 0.0;
        let mut delta_isometry: f64 = 0.0;
        for (i, (gi, di)) in self.gamma_blocks.iter().zip(&self.delta_blocks).enumerate() {
            let dd = di.adjoint() * di;
            delta_isometry = delta_isometry.max(linalg::distance(&dd, &linalg::identity(dd.nrows())));
            for (j, (gj, dj)) in self.gamma_blocks.iter().zip(&self.delta_blocks).enumerate() {
                if i != j {
                    let lhs = gi.adjoint() * gj + di.adjoint() * dj * c(alpha - 1.0, 0.0);
                    cross = cross.max(linalg::max_abs(&lhs));
                }
            }
        }
        WitnessResiduals {
            gamma_gamma_star,
            sum_gamma_delta: linalg::max_abs(&sum),
            cross,
            delta_isometry,
        }
    }
}

fn certified_alpha(t: &ProjectionTuple) -> Result<f64> {
    t.alpha()
        .ok_or_else(|| Error::Certificate("the projections do not sum to a scalar".into()))
}

/// `Q_k = Δ_k Δ_k*` on `Ĥ`, with `α' = α/(α−1)`. Requires `α > 1`.
pub fn functor_s(t: &ProjectionTuple, tol: &TolerancePolicy) -> Result<(ProjectionTuple, CoxeterSWitness)> {
    let alpha = certified_alpha(t)?;
    if alpha <= 1.0 + tol.identity_eps {
        return Err(Error::Domain(format!("functor S undefined for alpha = {alpha} <= 1")));
    }
    let scale = alpha / (alpha - 1.0);
    let d = t.dim();
    let gamma_blocks: Vec<ComplexMatrix> = t
        .projections()
        .iter()
        .map(|p| linalg::column_span_basis(p, tol))
        .collect();
    let sizes: Vec<usize> = gamma_blocks.iter().map(|b| b.ncols()).collect();
    let total: usize = sizes.iter().sum();
    let mut gamma = ComplexMatrix::zeros(d, total);
    let mut col = 0;
    for b in &gamma_blocks {
        gamma.view_mut((0, col), b.shape()).copy_from(b);
        col += b.ncols();
    }
    let v = if d == 0 {
        linalg::identity(total)
    } else {
        linalg::kernel_basis(&gamma, tol)
    };
    let hat_dim = v.ncols();
    let expected = total as i64 - d as i64;
    if hat_dim as i64 != expected {
        return Err(Error::Domain(format!(
            "ker Gamma has dimension {hat_dim}, expected {expected}"
        )));
    }
    let root = c(scale.sqrt(), 0.0);
    let mut delta_blocks = Vec::with_capacity(sizes.len());
    let mut row = 0;
    for &k in &sizes {
        let vk = v.view((row, 0), (k, hat_dim)).into_owned();
        delta_blocks.push(vk.adjoint() * root);
        row += k;
    }
    let witness = CoxeterSWitness {
        alpha,
        gamma,
        gamma_blocks,
        delta_blocks,
        hat_dim,
    };
    if hat_dim == 0 {
        return Ok((ProjectionTuple::empty(t.len(), Some(scale)), witness));
    }
    let qs = witness
        .delta_blocks
        .iter()
        .map(|dl| {
            let q = dl * dl.adjoint();
            (&q + q.adjoint()) * c(0.5, 0.0)
        })
        .collect();
    let out = ProjectionTuple::new(hat_dim, qs, tol)?;
    Ok((out, witness))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Letter {
    T,
    S,
}

/// A word over `{T, S}`, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FunctorWord {
    pub letters: Vec<Letter>,
}

impl FromStr for FunctorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|ch| match ch {
                'T' | 't' => Ok(Letter::T),
                'S' | 's' => Ok(Letter::S),
                other => Err(Error::Parse(format!("functor words use T and S, found {other:?}"))),
            })
            .collect::<Result<_>>()?;
        Ok(Self { letters })
    }
}

impl fmt::Display for FunctorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(match l {
                Letter::T => "T",
                Letter::S => "S",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    /// `None` for the input.
    pub letter: Option<Letter>,
    pub dim: usize,
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct WordResult {
    pub tuple: ProjectionTuple,
    pub trace: Vec<TraceStep>,
}

pub fn apply_word(t: &ProjectionTuple, word: &FunctorWord, tol: &TolerancePolicy) -> Result<WordResult> {
    let mut cur = t.clone();
    let mut trace = vec![TraceStep {
        letter: None,
        dim: cur.dim(),
        alpha: cur.alpha(),
    }];
    for &letter in &word.letters {
        cur = match letter {
            Letter::T => functor_t(&cur, tol)?,
            Letter::S => functor_s(&cur, tol)?.0,
        };
        trace.push(TraceStep {
            letter: Some(letter),
            dim: cur.dim(),
            alpha: cur.alpha(),
        });
    }
    Ok(WordResult { tuple: cur, trace })
}

/// The `n`-tuple on `ℂ` with `P_1 = 1` and the rest zero (`α = 1`).
pub fn unit_tuple(n: usize, tol: &TolerancePolicy) -> Result<ProjectionTuple> {
    if n == 0 {
        return Err(Error::Parameter("n must be positive".into()));
    }
    let ps = (0..n)
        .map(|i| {
            if i == 0 {
                linalg::identity(1)
            } else {
                ComplexMatrix::zeros(1, 1)
            }
        })
        .collect();
    ProjectionTuple::new(1, ps, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo;
    use crate::reps::{build_rep, build_small_rep, OmegaPoint, RepFamily, RepFamilyId};
    use crate::subspace::system_from_projections;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn t_examples() {
        let t = tol();
        let half = build_small_rep(3, 1.5, 0, &t).unwrap();
        let out = functor_t(&half, &t).unwrap();
        assert!((out.alpha().unwrap() - 1.5).abs() < 1e-12);
        let back = functor_t(&out, &t).unwrap();
        for (p, q) in half.projections().iter().zip(back.projections()) {
            assert!(linalg::distance(p, q) < 1e-12);
        }
        let zero = ProjectionTuple::new(1, vec![ComplexMatrix::zeros(1, 1)], &t).unwrap();
        assert_eq!(functor_t(&zero, &t).unwrap().ranks(), vec![1]);
    }

    #[test]
    fn s_on_quadruple_alpha_two() {
        let t = tol();
        let rep = build_rep(&RepFamilyId::s200(OmegaPoint::from_angles(1.0, 0.5)), &t).unwrap();
        let (out, w) = functor_s(&rep, &t).unwrap();
        assert_eq!(w.hat_dim, 2);
        assert!((out.alpha().unwrap() - 2.0).abs() < 1e-10);
        assert!(w.residuals().max() < 1e-10);
    }

    #[test]
    fn s_alpha_values() {
        let t = tol();
        let half = build_small_rep(3, 1.5, 0, &t).unwrap();
        assert!((functor_s(&half, &t).unwrap().0.alpha().unwrap() - 3.0).abs() < 1e-10);
        let s41 = build_rep(&RepFamilyId::sized(RepFamily::EvenPlus1, 2), &t).unwrap();
        let (out, w) = functor_s(&s41, &t).unwrap();
        assert!((out.alpha().unwrap() - 1.8).abs() < 1e-10);
        assert!(w.residuals().max() < 1e-10);
        assert!(endo::is_transitive(&system_from_projections(&out, &t).unwrap(), &t));
    }

    #[test]
    fn s_domain_and_certificate() {
        let t = tol();
        let one = unit_tuple(3, &t).unwrap();
        assert!(matches!(functor_s(&one, &t), Err(Error::Domain(_))));
        let uncertified =
            ProjectionTuple::new(2, vec![linalg::from_real_rows(2, 2, &[1.0, 0.0, 0.0, 0.0])], &t).unwrap();
        assert!(matches!(functor_s(&uncertified, &t), Err(Error::Certificate(_))));
    }

    #[test]
    fn s_on_scalar_tuples() {
        let t = tol();
        let full = build_small_rep(2, 2.0, 0, &t).unwrap();
        let (out, w) = functor_s(&full, &t).unwrap();
        assert_eq!(w.hat_dim, 1);
        assert!((out.alpha().unwrap() - 2.0).abs() < 1e-12);
        let single = build_small_rep(1, 1.0, 0, &t).unwrap();
        assert!(functor_s(&single, &t).is_err());
    }

    #[test]
    fn word_trace() {
        let t = tol();
        let start = unit_tuple(5, &t).unwrap();
        let word: FunctorWord = "TST".parse().unwrap();
        let res = apply_word(&start, &word, &t).unwrap();
        let alphas: Vec<f64> = res.trace.iter().map(|s| s.alpha.unwrap()).collect();
        let expect = [1.0, 4.0, 4.0 / 3.0, 11.0 / 3.0];
        for (a, e) in alphas.iter().zip(expect) {
            assert!((a - e).abs() < 1e-10);
        }
        assert_eq!(res.trace.last().unwrap().dim, 3);
        let empty = apply_word(&start, &FunctorWord::default(), &t).unwrap();
        assert_eq!(empty.tuple, start);
        assert!("TX".parse::<FunctorWord>().is_err());
        assert_eq!(word.to_string(), "TST");
    }
}
