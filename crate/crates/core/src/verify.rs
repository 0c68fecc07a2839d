//! The acceptance checks, runnable from tests, benches and the CLI.
//!
//! Each criterion is a pure function of a [`VerifyConfig`]; random cases draw
//! from a ChaCha stream keyed by `(seed, criterion, case)`, so results do not
//! depend on scheduling.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::brenner::{enumerate_brenner, verify_brenner, BrennerFamilyId};
use crate::endo;
use crate::functors::{apply_word, functor_s, functor_t, unit_tuple, FunctorWord};
use crate::iso::{ellipse_axes, gaussian_c64, lemma2_inverse, lemma2_lambda, theorem8_witness};
use crate::linalg::{self, c, ComplexMatrix, C64};
use crate::par::{self, Execution};
use crate::reps::{build_rep, enumerate_reps, rep_to_system, small_reps, OmegaPoint};
use crate::sigma::{self, finite_sigma, lambda_sequence_exact, sigma_membership, Variant};
use crate::subspace::{defect, orthocomplement, projections_from_system, system_from_projections};
use crate::subspace::{ProjectionTuple, Subspace, SubspaceSystem};
use crate::tolerance::TolerancePolicy;
use crate::triple::{classify_small_transitive, decompose_triple, end_dim_formula, small_catalogue};

/// Residual bound for projection identities and subspace mappings.
pub const IDENTITY_TOL: f64 = 1e-8;
/// `T∘T` must reproduce the input to this accuracy.
pub const INVOLUTION_TOL: f64 = 1e-12;
/// Accuracy of the ellipse identity on fixed-`a` arcs.
pub const ELLIPSE_TOL: f64 = 1e-10;
/// Absolute tolerance for `α ∈ Σ_n`.
pub const SIGMA_TOL: f64 = 1e-9;
pub const SIGMA_DEPTH: usize = 30;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub u_max: usize,
    pub seed: u64,
    pub exec: Execution,
    pub tol: TolerancePolicy,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            u_max: 9,
            seed: 7,
            exec: Execution::default(),
            tol: TolerancePolicy::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
    /// Wall-clock budget in seconds.
    pub budget_secs: f64,
}

impl CriterionReport {
    pub fn within_budget(&self) -> bool {
        self.elapsed.as_secs_f64() < self.budget_secs
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub u_max: usize,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn elapsed(&self) -> Duration {
        self.criteria.iter().map(|c| c.elapsed).sum()
    }
}

/// Independent RNG stream for case `index` of criterion `id`.
pub fn case_rng(seed: u64, id: u8, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(id) << 32) | index as u64);
    rng
}

fn run<F>(id: u8, title: &'static str, budget_secs: f64, body: F) -> CriterionReport
where
    F: FnOnce() -> (usize, Vec<String>),
{
    let start = Instant::now();
    let (cases, failures) = body();
    CriterionReport {
        id,
        title,
        passed: failures.is_empty(),
        cases,
        failures,
        elapsed: start.elapsed(),
        budget_secs,
    }
}

/// Collects `(cases, failures)` from per-case results.
fn tally(results: Vec<Vec<String>>) -> (usize, Vec<String>) {
    let n = results.len();
    (n, results.into_iter().flatten().collect())
}

fn check(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

/// A random system whose subspaces are spans of subsets of a shared pool of
/// coordinate and generic vectors, so sums and intersections are nontrivial.
pub fn random_system<R: Rng + ?Sized>(rng: &mut R, u: usize, n: usize, tol: &TolerancePolicy) -> SubspaceSystem {
    let mut pool: Vec<Vec<C64>> = (0..u)
        .map(|i| (0..u).map(|j| c(f64::from(u8::from(i == j)), 0.0)).collect())
        .collect();
    for _ in 0..u {
        pool.push((0..u).map(|_| gaussian_c64(rng)).collect());
    }
    let subs = (0..n)
        .map(|_| {
            let k = rng.random_range(0..=u);
            let picks = index::sample(rng, pool.len(), k);
            let cols: Vec<C64> = picks.iter().flat_map(|p| pool[p].clone()).collect();
            let m = ComplexMatrix::from_column_slice(u, k, &cols);
            Subspace::span_of_columns(&m, tol)
        })
        .collect();
    SubspaceSystem::new(u, subs).expect("consistent ambient")
}

/// A random point of Ω in the open part `a, b > 0`.
pub fn random_omega<R: Rng + ?Sized>(rng: &mut R) -> OmegaPoint {
    loop {
        let v: [f64; 3] = [gaussian_c64(rng).re, gaussian_c64(rng).re, gaussian_c64(rng).re];
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let p = OmegaPoint {
            a: v[0].abs() / norm,
            b: v[1].abs() / norm,
            c: v[2] / norm,
        };
        if norm > 1e-6 && p.a > 1e-6 && p.b > 1e-6 && p.a < 1.0 - 1e-3 {
            return p;
        }
    }
}

/// Fixed points on the boundary arcs plus `count` random interior points.
pub fn omega_samples(seed: u64, id: u8, count: usize) -> Vec<OmegaPoint> {
    let arc = |t: f64| OmegaPoint {
        a: 0.0,
        b: t.cos(),
        c: t.sin(),
    };
    let side = |t: f64| OmegaPoint {
        a: t.cos(),
        b: 0.0,
        c: t.sin(),
    };
    let mut out = vec![arc(0.3), arc(1.1), side(0.4), side(1.2)];
    out.extend((0..count).map(|i| random_omega(&mut case_rng(seed, id, 1000 + i))));
    out
}

/// Fixed and random values of `λ` away from `0` and `1`.
pub fn lambda_samples(seed: u64, id: u8, count: usize) -> Vec<C64> {
    let mut out = vec![c(2.0, 0.0), c(-1.0, 0.0), c(0.5, 0.0), c(0.0, 1.0)];
    let mut rng = case_rng(seed, id, 2000);
    while out.len() < count {
        let z = gaussian_c64(&mut rng) * c(3.0, 0.0);
        if z.norm() > 1e-3 && (z - c(1.0, 0.0)).norm() > 1e-3 {
            out.push(z);
        }
    }
    out
}

/// 1. The closed formula for `dim End` of a triple matches the direct solve.
pub fn criterion_1(cfg: &VerifyConfig) -> CriterionReport {
    run(1, "triple End-dimension formula vs direct hom solve", 5.0, || {
        let idx: Vec<usize> = (0..240).collect();
        tally(par::map_with(cfg.exec, &idx, |&i| {
            let mut rng = case_rng(cfg.seed, 1, i);
            let u = 1 + i % 6;
            let s = random_system(&mut rng, u, 3, &cfg.tol);
            let mut f = vec![];
            match decompose_triple(&s, &cfg.tol) {
                Ok(d) => {
                    let formula = end_dim_formula(&d);
                    let direct = endo::end_dimension(&s, &cfg.tol);
                    check(&mut f, formula == direct, || {
                        format!(
                            "case {i}: u={u}, dims={:?}: formula {formula} vs direct {direct}",
                            s.dims()
                        )
                    });
                    check(&mut f, d.bookkeeping_holds(), || {
                        format!("case {i}: dimension bookkeeping fails")
                    });
                }
                Err(e) => f.push(format!("case {i}: {e}")),
            }
            f
        }))
    })
}

/// 2. The transitive systems of one, two and three subspaces.
pub fn criterion_2(cfg: &VerifyConfig) -> CriterionReport {
    run(2, "small transitive catalogues (2 / 4 / 9 systems)", 1.0, || {
        let mut f = vec![];
        let mut cases = 0;
        for (n, expected) in [(1usize, 2usize), (2, 4), (3, 9)] {
            let cat = match small_catalogue(n, &cfg.tol) {
                Ok(c) => c,
                Err(e) => {
                    f.push(format!("n={n}: {e}"));
                    continue;
                }
            };
            check(&mut f, cat.len() == expected, || {
                format!("n={n}: {} systems", cat.len())
            });
            let mut seen = vec![];
            for (label, s) in &cat {
                cases += 1;
                let end = endo::end_dimension(s, &cfg.tol);
                check(&mut f, end == 1, || format!("{label}: End dimension {end}"));
                match classify_small_transitive(s, &cfg.tol) {
                    Ok(got) => {
                        check(&mut f, got == *label, || format!("{label} classified as {got}"));
                        check(&mut f, !seen.contains(&got), || format!("{got} assigned twice"));
                        seen.push(got);
                    }
                    Err(e) => f.push(format!("{label}: {e}")),
                }
            }
        }
        (cases, f)
    })
}

pub fn brenner_ids(cfg: &VerifyConfig) -> Vec<BrennerFamilyId> {
    enumerate_brenner(cfg.u_max, &lambda_samples(cfg.seed, 3, 12))
}

/// 3. Brenner's quadruples are transitive with the advertised defect.
pub fn criterion_3(cfg: &VerifyConfig) -> CriterionReport {
    run(
        3,
        "Brenner catalogue: defect, distinct proper subspaces, transitivity",
        10.0,
        || {
            let ids = brenner_ids(cfg);
            tally(par::map_with(cfg.exec, &ids, |id| match verify_brenner(id, &cfg.tol) {
                Ok(rep) if rep.passed() => vec![],
                Ok(rep) => vec![format!(
                    "{}: defect {} (expected {}), proper {}, distinct {}, End dim {}",
                    rep.name, rep.defect, rep.expected_defect, rep.proper_ok, rep.distinct_ok, rep.end_dimension
                )],
                Err(e) => vec![format!("{}: {e}", id.name())],
            }))
        },
    )
}

/// 4. The quadruple families of projections.
pub fn criterion_4(cfg: &VerifyConfig) -> CriterionReport {
    run(
        4,
        "projection families: scalar sum, irreducible, defect, alpha in Sigma_4",
        10.0,
        || {
            let ids = enumerate_reps(cfg.u_max, &omega_samples(cfg.seed, 4, 10));
            tally(par::map_with(cfg.exec, &ids, |id| {
                let name = id.name();
                let mut f = vec![];
                let t = match build_rep(id, &cfg.tol) {
                    Ok(t) => t,
                    Err(e) => return vec![format!("{name}: {e}")],
                };
                let alpha = t.alpha().expect("build_rep certifies");
                let idem = t
                    .projections()
                    .iter()
                    .all(|p| linalg::is_orthogonal_projection(p, IDENTITY_TOL));
                check(&mut f, idem, || format!("{name}: not Hermitian idempotents"));
                let res = t.scalar_residual().unwrap_or(f64::INFINITY);
                check(&mut f, res < IDENTITY_TOL, || {
                    format!("{name}: |sum - alpha I| = {res:e}")
                });
                check(&mut f, endo::is_irreducible(&t, &cfg.tol), || {
                    format!("{name}: reducible")
                });
                match system_from_projections(&t, &cfg.tol).and_then(|s| defect(&s)) {
                    Ok(d) => check(&mut f, d == id.dims().1, || format!("{name}: defect {d}")),
                    Err(e) => f.push(format!("{name}: {e}")),
                }
                match sigma_membership(4, alpha, SIGMA_DEPTH, SIGMA_TOL) {
                    Ok(m) => check(&mut f, m.member, || format!("{name}: alpha {alpha} not in Sigma_4")),
                    Err(e) => f.push(format!("{name}: {e}")),
                }
                f
            }))
        },
    )
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// 5. The spectra `Σ_n`.
pub fn criterion_5(_cfg: &VerifyConfig) -> CriterionReport {
    run(5, "Sigma_n spectra and Lambda sequences", 1.0, || {
        let mut f = vec![];
        let expect = [
            (1, vec![q(0, 1), q(1, 1)]),
            (2, vec![q(0, 1), q(1, 1), q(2, 1)]),
            (3, vec![q(0, 1), q(1, 1), q(3, 2), q(2, 1), q(3, 1)]),
        ];
        for (n, set) in &expect {
            check(&mut f, finite_sigma(*n).as_ref() == Some(set), || {
                format!("Sigma_{n} differs")
            });
        }
        match lambda_sequence_exact(4, Variant::One, 4) {
            Ok(s) => check(&mut f, s == vec![q(0, 1), q(3, 2), q(5, 3), q(7, 4)], || {
                format!("Lambda_4^1 prefix {s:?}")
            }),
            Err(e) => f.push(e.to_string()),
        }
        let mut cases = 4;
        for n in [5, 6] {
            for v in [Variant::Zero, Variant::One] {
                cases += 1;
                match lambda_sequence_exact(n, v, SIGMA_DEPTH) {
                    Ok(s) => {
                        check(&mut f, s.len() == SIGMA_DEPTH, || {
                            format!("n={n} {v:?}: length {}", s.len())
                        });
                        check(&mut f, sigma::increases_to_bound(n, &s), || {
                            format!("n={n} {v:?}: not increasing below the interval")
                        });
                        let (lo, _) = sigma::interval(n).expect("n >= 4");
                        let last = sigma::to_f64(s.last().expect("nonempty"));
                        check(&mut f, last < lo + 1e-12, || {
                            format!("n={n} {v:?}: last {last} above {lo}")
                        });
                    }
                    Err(e) => f.push(e.to_string()),
                }
            }
        }
        (cases, f)
    })
}

/// Every listed tuple for `n ≤ 3` and every quadruple family member.
pub fn catalogue_tuples(cfg: &VerifyConfig) -> Vec<(String, ProjectionTuple)> {
    let mut out = vec![];
    for n in 1..=3 {
        for (a, v, t) in small_reps(n, &cfg.tol).expect("n <= 3") {
            out.push((format!("P_({n},{a}) variant {v}"), t));
        }
    }
    for id in enumerate_reps(cfg.u_max, &omega_samples(cfg.seed, 6, 6)) {
        if let Ok(t) = build_rep(&id, &cfg.tol) {
            out.push((id.name(), t));
        }
    }
    out
}

fn transitive_tuple(t: &ProjectionTuple, tol: &TolerancePolicy) -> bool {
    t.dim() == 0
        || system_from_projections(t, tol)
            .map(|s| endo::is_transitive(&s, tol))
            .unwrap_or(false)
}

/// 6. The functors `S` and `T`.
pub fn criterion_6(cfg: &VerifyConfig) -> CriterionReport {
    run(
        6,
        "Coxeter functors: witness identities, T involution, transitivity kept",
        10.0,
        || {
            let tuples = catalogue_tuples(cfg);
            tally(par::map_with(cfg.exec, &tuples, |(name, t)| {
                let mut f = vec![];
                let tol = &cfg.tol;
                let transitive_in = transitive_tuple(t, tol);
                match functor_t(t, tol).and_then(|tt| functor_t(&tt, tol).map(|back| (tt, back))) {
                    Ok((tt, back)) => {
                        let worst = t
                            .projections()
                            .iter()
                            .zip(back.projections())
                            .map(|(p, q)| linalg::distance(p, q))
                            .fold(0.0, f64::max);
                        check(&mut f, worst < INVOLUTION_TOL, || {
                            format!("{name}: |TT - id| = {worst:e}")
                        });
                        if transitive_in {
                            check(&mut f, transitive_tuple(&tt, tol), || {
                                format!("{name}: T lost transitivity")
                            });
                        }
                    }
                    Err(e) => f.push(format!("{name}: T failed: {e}")),
                }
                let alpha = t.alpha().unwrap_or(0.0);
                if alpha <= 1.0 + IDENTITY_TOL {
                    return f;
                }
                match functor_s(t, tol) {
                    Ok((out, w)) => {
                        let target = alpha / (alpha - 1.0);
                        let idem = out
                            .projections()
                            .iter()
                            .all(|p| linalg::is_orthogonal_projection(p, IDENTITY_TOL));
                        check(&mut f, idem, || format!("{name}: Q_k not projections"));
                        let sum_res = linalg::distance(&out.sum(), &(linalg::identity(out.dim()) * c(target, 0.0)));
                        check(&mut f, sum_res < IDENTITY_TOL, || {
                            format!("{name}: |sum Q - alpha' I| = {sum_res:e}")
                        });
                        let r = w.residuals();
                        check(&mut f, r.max() < IDENTITY_TOL, || {
                            format!("{name}: witness residuals {r:?}")
                        });
                        if transitive_in {
                            check(&mut f, transitive_tuple(&out, tol), || {
                                format!("{name}: S lost transitivity")
                            });
                            if out.dim() > 0 && endo::is_irreducible(t, tol) {
                                check(&mut f, endo::is_irreducible(&out, tol), || {
                                    format!("{name}: S lost irreducibility")
                                });
                            }
                        }
                    }
                    Err(e) => f.push(format!("{name}: S failed: {e}")),
                }
                f
            }))
        },
    )
}

/// 7. The correspondence between `S(2,0;a,b,c)` and `B(2,0;λ)`.
pub fn criterion_7(cfg: &VerifyConfig) -> CriterionReport {
    run(7, "Ω witnesses and the lambda map", 5.0, || {
        let idx: Vec<usize> = (0..100).collect();
        let tol = &cfg.tol;
        let mut results = par::map_with(cfg.exec, &idx, |&i| {
            let mut rng = case_rng(cfg.seed, 7, i);
            let p = random_omega(&mut rng);
            let mut f = vec![];
            match theorem8_witness(&p, tol) {
                Ok(w) => {
                    let worst = w.residuals.iter().copied().fold(0.0, f64::max);
                    check(&mut f, worst < IDENTITY_TOL, || {
                        format!("point {i}: mapping residual {worst:e}")
                    });
                    check(&mut f, w.det.norm() > tol.identity_eps, || {
                        format!("point {i}: R singular")
                    });
                }
                Err(e) => f.push(format!("point {i}: {e}")),
            }
            match lemma2_lambda(&p, tol).and_then(|l| lemma2_inverse(l, tol)) {
                Ok(back) => {
                    let err = (back.a - p.a).abs().max((back.b - p.b).abs()).max((back.c - p.c).abs());
                    check(&mut f, err < IDENTITY_TOL, || {
                        format!("point {i}: round trip error {err:e}")
                    });
                }
                Err(e) => f.push(format!("point {i}: {e}")),
            }
            f
        });
        let mut f = vec![];
        for k in 1..40 {
            let t = k as f64 * std::f64::consts::FRAC_PI_2 / 40.0;
            let p = OmegaPoint {
                a: 0.0,
                b: t.cos(),
                c: t.sin(),
            };
            match lemma2_lambda(&p, tol) {
                Ok(l) => check(&mut f, l.im.abs() < 1e-15 && l.re > 0.0 && l.re < 1.0, || {
                    format!("arc point {k}: lambda {l}")
                }),
                Err(e) => f.push(e.to_string()),
            }
        }
        for a in [0.1, 0.35, 0.6, 0.9] {
            let (ea, eb) = ellipse_axes(a);
            let rad = (1.0f64 - a * a).sqrt();
            for k in 0..24 {
                let phi = -std::f64::consts::FRAC_PI_2 + (k as f64 + 0.5) * std::f64::consts::PI / 24.0;
                let p = OmegaPoint {
                    a,
                    b: rad * phi.cos(),
                    c: rad * phi.sin(),
                };
                if let Ok(l) = lemma2_lambda(&p, tol) {
                    let e = ((l.re - 0.5) / ea).powi(2) + (l.im / eb).powi(2) - 1.0;
                    check(&mut f, e.abs() < ELLIPSE_TOL, || {
                        format!("a={a}, phi={phi}: ellipse residual {e:e}")
                    });
                }
            }
        }
        results.push(f);
        tally(results)
    })
}

/// Transitive systems produced by the catalogues.
pub fn generated_systems(cfg: &VerifyConfig) -> Vec<(String, SubspaceSystem)> {
    let mut out = vec![];
    for n in 1..=3 {
        if let Ok(cat) = small_catalogue(n, &cfg.tol) {
            out.extend(cat.into_iter().map(|(l, s)| (format!("n={n} {l}"), s)));
        }
    }
    for id in brenner_ids(cfg) {
        if let Ok(s) = crate::brenner::build_brenner(&id, &cfg.tol) {
            out.push((id.name(), s));
        }
    }
    for id in enumerate_reps(cfg.u_max, &omega_samples(cfg.seed, 8, 4)) {
        if let Ok((name, s)) = rep_to_system(&id, &cfg.tol) {
            out.push((name, s));
        }
    }
    out
}

/// 8. Transitive implies indecomposable and irreducible; `End S = End S^⊥`.
pub fn criterion_8(cfg: &VerifyConfig) -> CriterionReport {
    run(
        8,
        "transitive => indecomposable and irreducible; End(S) = End(S-perp)",
        5.0,
        || {
            let tol = &cfg.tol;
            let systems = generated_systems(cfg);
            let mut results = par::map_with(cfg.exec, &systems, |(name, s)| {
                let mut f = vec![];
                let end = endo::end_space(s, tol);
                if end.dim() == 1 {
                    check(&mut f, endo::algebra_quotient_dim(&end, tol) == 1, || {
                        format!("{name}: decomposable")
                    });
                    let p = projections_from_system(s, tol);
                    check(&mut f, endo::is_irreducible(&p, tol), || {
                        format!("{name}: reducible projections")
                    });
                }
                f
            });
            let idx: Vec<usize> = (0..100).collect();
            results.extend(par::map_with(cfg.exec, &idx, |&i| {
                let mut rng = case_rng(cfg.seed, 8, i);
                let u = 1 + i % 5;
                let n = 1 + (i / 5) % 5;
                let s = random_system(&mut rng, u, n, tol);
                let (a, b) = (
                    endo::end_dimension(&s, tol),
                    endo::end_dimension(&orthocomplement(&s, tol), tol),
                );
                if a == b {
                    vec![]
                } else {
                    vec![format!("random system {i}: End {a} vs complement End {b}")]
                }
            }));
            tally(results)
        },
    )
}

/// The words applied to the `n = 5, α = 1` tuple and their expected `α`.
pub const CHAIN: [(&str, f64); 3] = [("T", 4.0), ("TS", 4.0 / 3.0), ("TST", 11.0 / 3.0)];

/// 9. Functor chains from the one-dimensional `n = 5` tuple.
pub fn criterion_9(cfg: &VerifyConfig) -> CriterionReport {
    run(
        9,
        "n = 5 functor chain: transitive outputs, alpha 1 -> 4 -> 4/3 -> 11/3",
        5.0,
        || {
            let tol = &cfg.tol;
            let mut f = vec![];
            let start = match unit_tuple(5, tol) {
                Ok(t) => t,
                Err(e) => return (0, vec![e.to_string()]),
            };
            for (word, expected) in CHAIN {
                let w: FunctorWord = word.parse().expect("valid word");
                match apply_word(&start, &w, tol) {
                    Ok(res) => {
                        let alpha = res.tuple.alpha().unwrap_or(f64::NAN);
                        check(&mut f, (alpha - expected).abs() < IDENTITY_TOL, || {
                            format!("{word}: alpha {alpha}, expected {expected}")
                        });
                        check(&mut f, transitive_tuple(&res.tuple, tol), || {
                            format!("{word}: not transitive")
                        });
                    }
                    Err(e) => f.push(format!("{word}: {e}")),
                }
            }
            (CHAIN.len(), f)
        },
    )
}

pub type Criterion = fn(&VerifyConfig) -> CriterionReport;

pub const CRITERIA: [Criterion; 9] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
];

pub fn verify_all(cfg: &VerifyConfig) -> VerifyReport {
    let criteria: Vec<CriterionReport> = CRITERIA.iter().map(|f| f(cfg)).collect();
    VerifyReport {
        seed: cfg.seed,
        u_max: cfg.u_max,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_streams_are_independent_and_repeatable() {
        let a: u64 = case_rng(7, 1, 0).random();
        let b: u64 = case_rng(7, 1, 1).random();
        let a2: u64 = case_rng(7, 1, 0).random();
        assert_ne!(a, b);
        assert_eq!(a, a2);
    }

    #[test]
    fn random_systems_have_requested_shape() {
        let tol = TolerancePolicy::default();
        let mut rng = case_rng(1, 0, 0);
        for u in 1..=5 {
            let s = random_system(&mut rng, u, 3, &tol);
            assert_eq!(s.ambient_dim(), u);
            assert_eq!(s.len(), 3);
        }
    }

    #[test]
    fn omega_samples_are_in_region() {
        for p in omega_samples(3, 4, 20) {
            assert!(p.in_region(1e-8), "{p:?}");
        }
    }
}
