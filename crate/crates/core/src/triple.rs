//! Three subspaces `(U; K_1, K_2, K_3)`: the dimension data of the canonical
//! splitting `U = L ∔ M_1 ∔ M_2 ∔ M_3 ∔ Q_1 ∔ Q_2 ∔ N_1 ∔ N_2 ∔ N_3 ∔ P`,
//! the endomorphism-dimension formula it yields, and the classification of
//! transitive systems of one, two and three subspaces.

use std::fmt;

use serde::Serialize;

use crate::endo;
use crate::error::{Error, Result};
use crate::linalg::c;
use crate::subspace::{Subspace, SubspaceSystem};
use crate::tolerance::TolerancePolicy;

/// Dimensions of the summands `L, M_i, N_i, Q_i, P` and of `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TripleDecomposition {
    pub ell: usize,
    pub m: [usize; 3],
    pub n: [usize; 3],
    pub q: usize,
    pub p: usize,
    pub u: usize,
}

impl TripleDecomposition {
    /// `dim K_i = m_i + n_j + n_k + q + p` for `{i, j, k} = {1, 2, 3}`.
    pub fn k_dim(&self, i: usize) -> usize {
        let others: usize = (0..3).filter(|&j| j != i).map(|j| self.n[j]).sum();
        self.m[i] + others + self.q + self.p
    }

    /// `u = ℓ + Σm_i + 2q + Σn_i + p`.
    pub fn bookkeeping_holds(&self) -> bool {
        let total = self.ell + self.m.iter().sum::<usize>() + 2 * self.q + self.n.iter().sum::<usize>() + self.p;
        total == self.u
    }

    /// Reorders the data for the system `(K_σ(0), K_σ(1), K_σ(2))`.
    pub fn permuted(&self, sigma: [usize; 3]) -> Self {
        Self {
            m: sigma.map(|j| self.m[j]),
            n: sigma.map(|j| self.n[j]),
            ..*self
        }
    }
}

fn take3(s: &SubspaceSystem) -> Result<[&Subspace; 3]> {
    match s.subspaces() {
        [a, b, c] => Ok([a, b, c]),
        other => Err(Error::Arity {
            expected: 3,
            got: other.len(),
        }),
    }
}

/// Computes the summand dimensions from ranks of sums and intersections.
pub fn decompose_triple(s: &SubspaceSystem, tol: &TolerancePolicy) -> Result<TripleDecomposition> {
    let k = take3(s)?;
    let inter = |parts: &[&Subspace]| Subspace::intersection(parts, tol).dim();
    let p = inter(&[k[0], k[1], k[2]]);
    let pair = |i: usize, j: usize| inter(&[k[i], k[j]]);
    // N_i complements P in K_j ∩ K_k.
    let n = [pair(1, 2) - p, pair(0, 2) - p, pair(0, 1) - p];
    let others = |i: usize| {
        let (a, b) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        k[a].sum(k[b], tol)
    };
    let cap_with_others = |i: usize| inter(&[k[i], &others(i)]);
    let m = [0, 1, 2].map(|i| k[i].dim() - cap_with_others(i));
    // dim Q_3 = dim K_3∩(K_1+K_2) − dim(K_3∩K_1 + K_3∩K_2).
    let q = cap_with_others(2) + p - pair(2, 0) - pair(2, 1);
    let total = k[0].sum(k[1], tol).sum(k[2], tol).dim();
    let u = s.ambient_dim();
    Ok(TripleDecomposition {
        ell: u - total,
        m,
        n,
        q,
        p,
        u,
    })
}

/// `dim End(S)` from the summand dimensions.
///
/// Counts `Hom` between the indecomposable summands: the one-dimensional
/// pieces `L, M_i, N_i, P` (a map between two of them exists iff the source's
/// set of containing `K`s is a subset of the target's) and the two-dimensional
/// piece `Q` spanned by `Q_1 ∔ Q_2`:
///
/// `ℓu + q² + qΣ(m_i+n_i) + Σ(m_i²+n_i²) + Σ_{i≠j} m_i n_j + p² + p(Σm_i + Σn_i + 2q)`.
pub fn end_dim_formula(d: &TripleDecomposition) -> usize {
    let sum_m: usize = d.m.iter().sum();
    let sum_n: usize = d.n.iter().sum();
    end_dim_formula_printed(d) + d.p * (sum_m + sum_n + 2 * d.q)
}

/// The formula without the `p(Σm_i + Σn_i + 2q)` cross terms. It agrees with
/// [`end_dim_formula`] whenever `p = 0` (in particular for every transitive
/// triple) and undercounts otherwise.
pub fn end_dim_formula_printed(d: &TripleDecomposition) -> usize {
    let sum_mn: usize = (0..3).map(|i| d.m[i] + d.n[i]).sum();
    let squares: usize = (0..3).map(|i| d.m[i] * d.m[i] + d.n[i] * d.n[i]).sum();
    let cross: usize = (0..3)
        .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| d.m[i] * d.n[j])
        .sum();
    d.ell * d.u + d.q * d.q + d.q * sum_mn + squares + cross + d.p * d.p
}

/// A catalogue entry `S_k` for systems of `n ≤ 3` subspaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SmallLabel {
    pub n: usize,
    pub index: usize,
}

impl fmt::Display for SmallLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{}", self.index)
    }
}

/// Which of `K_1..K_n` contain the line, per catalogue index, for `n = 1, 2, 3`.
fn one_dim_patterns(n: usize) -> &'static [&'static [bool]] {
    match n {
        1 => &[&[false], &[true]],
        2 => &[&[false, false], &[true, false], &[false, true], &[true, true]],
        _ => &[
            &[false, false, false],
            &[true, false, false],
            &[false, true, false],
            &[false, false, true],
            &[false, true, true],
            &[true, false, true],
            &[true, true, false],
            &[true, true, true],
        ],
    }
}

/// The complete list of transitive systems of `n` subspaces, `n ∈ {1, 2, 3}`.
pub fn small_catalogue(n: usize, tol: &TolerancePolicy) -> Result<Vec<(SmallLabel, SubspaceSystem)>> {
    if !(1..=3).contains(&n) {
        return Err(Error::Parameter(format!(
            "small catalogue exists for n = 1, 2, 3, not {n}"
        )));
    }
    let mut out: Vec<(SmallLabel, SubspaceSystem)> = one_dim_patterns(n)
        .iter()
        .enumerate()
        .map(|(k, pattern)| {
            let subs = pattern
                .iter()
                .map(|&full| if full { Subspace::full(1) } else { Subspace::zero(1) })
                .collect();
            (
                SmallLabel { n, index: k + 1 },
                SubspaceSystem::new(1, subs).expect("valid"),
            )
        })
        .collect();
    if n == 3 {
        let line = |x: f64, y: f64| Subspace::line(&[c(x, 0.0), c(y, 0.0)], tol);
        let s9 = SubspaceSystem::new(2, vec![line(1.0, 0.0), line(0.0, 1.0), line(1.0, 1.0)])?;
        out.push((SmallLabel { n: 3, index: 9 }, s9));
    }
    Ok(out)
}

/// Names the catalogue entry a transitive system of `n ≤ 3` subspaces is
/// isomorphic to, read off from which summand of the splitting is present.
pub fn classify_small_transitive(s: &SubspaceSystem, tol: &TolerancePolicy) -> Result<SmallLabel> {
    let n = s.len();
    if !(1..=3).contains(&n) {
        return Err(Error::Arity { expected: 3, got: n });
    }
    if !endo::is_transitive(s, tol) {
        return Err(Error::Domain("system is not transitive".into()));
    }
    let mut subs = s.subspaces().to_vec();
    subs.resize(3, Subspace::zero(s.ambient_dim()));
    let padded = SubspaceSystem::new(s.ambient_dim(), subs)?;
    let d = decompose_triple(&padded, tol)?;

    let fingerprint = [d.ell, d.m[0], d.m[1], d.m[2], d.n[0], d.n[1], d.n[2], d.p, d.q];
    // Catalogue index for each fingerprint slot, per n (0 = impossible after padding).
    let slot_to_index: [usize; 9] = match n {
        1 => [1, 2, 0, 0, 0, 0, 0, 0, 0],
        2 => [1, 2, 3, 0, 0, 0, 4, 0, 0],
        _ => [1, 2, 3, 4, 5, 6, 7, 8, 9],
    };
    let expected_u = |slot: usize| if slot == 8 { 2 } else { 1 };
    let hits: Vec<usize> = (0..9).filter(|&i| fingerprint[i] != 0).collect();
    match hits.as_slice() {
        [slot] if fingerprint[*slot] == 1 && d.u == expected_u(*slot) && slot_to_index[*slot] != 0 => Ok(SmallLabel {
            n,
            index: slot_to_index[*slot],
        }),
        _ => Err(Error::Classification(format!(
            "no catalogue entry matches decomposition {d:?}"
        ))),
    }
}
