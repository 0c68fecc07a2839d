use std::fmt;
use std::io::Write;
use std::path::Path;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use subspace_lab::brenner::{self, BrennerFamily, BrennerFamilyId};
use subspace_lab::functors::{apply_word, FunctorWord, TraceStep};
use subspace_lab::iso::{self, Confidence};
use subspace_lab::par::Execution;
use subspace_lab::reps::{self, OmegaPoint, RepFamily, RepFamilyId};
use subspace_lab::sigma::{sigma_membership, SigmaBranch, SigmaMembership, SigmaSet};
use subspace_lab::subspace::{defect, matrix_to_json, system_from_projections, JsonMatrix, SystemDoc, TupleDoc};
use subspace_lab::triple::{self, TripleDecomposition};
use subspace_lab::verify::{self, VerifyConfig, VerifyReport, SIGMA_TOL};
use subspace_lab::{endo, ProjectionTuple, SubspaceSystem, TolerancePolicy};

use crate::{CatalogCmd, Cli, Command, FunctorCmd, IsoCmd, RepCmd, SigmaArgs, VerifyArgs};

pub const EPS_VAR: &str = "SUBSPACE_LAB_EPS";

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
    Verify(Vec<String>),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            Self::Parse(_) => 2,
            Self::Domain(_) => 3,
            Self::Verify(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Parse(m) | Self::Domain(m) => f.write_str(m),
            Self::Verify(failed) => {
                writeln!(f, "verification failed ({} invariants)", failed.len())?;
                for line in failed {
                    writeln!(f, "  {line}")?;
                }
                Ok(())
            }
        }
    }
}

impl From<subspace_lab::Error> for CliError {
    fn from(e: subspace_lab::Error) -> Self {
        if e.is_parse() {
            Self::Parse(e.to_string())
        } else {
            Self::Domain(e.to_string())
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn policy() -> Result<TolerancePolicy> {
    let base = TolerancePolicy::default();
    match std::env::var(EPS_VAR) {
        Err(_) => Ok(base),
        Ok(raw) => {
            let eps: f64 = raw
                .trim()
                .parse()
                .map_err(|_| CliError::Parse(format!("{EPS_VAR}={raw:?} is not a number")))?;
            base.with_identity_eps(eps)
                .map_err(|e| CliError::Parse(format!("{EPS_VAR}: {e}")))
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display()))),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Domain(format!("stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

enum Doc {
    System(SubspaceSystem),
    Tuple(ProjectionTuple),
}

fn read_doc(path: &Path, tol: &TolerancePolicy) -> Result<Doc> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let bad = |e: serde_json::Error| CliError::Parse(format!("{}: {e}", path.display()));
    let v: Value = serde_json::from_str(&text).map_err(bad)?;
    if v.get("projections").is_some() {
        let doc: TupleDoc = serde_json::from_value(v).map_err(bad)?;
        Ok(Doc::Tuple(ProjectionTuple::from_doc(&doc, tol)?))
    } else if v.get("subspaces").is_some() {
        let doc: SystemDoc = serde_json::from_value(v).map_err(bad)?;
        Ok(Doc::System(SubspaceSystem::from_doc(&doc, tol)?))
    } else {
        Err(CliError::Parse(format!(
            "{}: expected a system (\"subspaces\") or a tuple (\"projections\")",
            path.display()
        )))
    }
}

fn omega(v: &[f64], tol: &TolerancePolicy) -> Result<OmegaPoint> {
    match v {
        &[a, b, c] => Ok(OmegaPoint::new(a, b, c, tol)?),
        _ => Err(CliError::Parse(format!("--omega takes three numbers, got {}", v.len()))),
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let tol = policy()?;
    match &cli.command {
        Command::Catalog(cmd) => catalog(cli, cmd, &tol),
        Command::Rep(cmd) => rep(cli, cmd, &tol),
        Command::Analyze { input } => {
            let out = match read_doc(input, &tol)? {
                Doc::System(s) => Analysis::System(analyze_system(&s, &tol)),
                Doc::Tuple(t) => Analysis::Tuple(analyze_tuple(&t, &tol)?),
            };
            emit(cli, &pretty(&out))
        }
        Command::Functor(FunctorCmd::Apply { word, input }) => functor(cli, word, input, &tol),
        Command::Sigma(args) => sigma(cli, args),
        Command::Iso(cmd) => iso_cmd(cli, cmd, &tol),
        Command::VerifyAll(args) => verify_all(cli, args, tol),
    }
}

#[derive(Serialize)]
struct RawBrenner {
    name: String,
    u: usize,
    rho: i64,
    /// Rows of matrix `i` span `K_i`.
    spanning: Vec<RawMatrix>,
}

/// Integer entries where possible, `[re, im]` pairs otherwise.
#[derive(Serialize)]
#[serde(untagged)]
enum RawMatrix {
    Integer(Vec<Vec<i64>>),
    Complex(JsonMatrix),
}

fn raw_matrix(m: &subspace_lab::ComplexMatrix) -> RawMatrix {
    let integral = m
        .iter()
        .all(|z| z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() < 1e15);
    if integral {
        RawMatrix::Integer(
            m.row_iter()
                .map(|row| row.iter().map(|z| z.re as i64).collect())
                .collect(),
        )
    } else {
        RawMatrix::Complex(matrix_to_json(m))
    }
}

#[derive(Serialize)]
struct SmallEntry {
    label: String,
    system: SystemDoc,
}

#[derive(Serialize)]
struct CatalogList {
    u_max: usize,
    brenner: Vec<String>,
    reps: Vec<String>,
}

fn catalog(cli: &Cli, cmd: &CatalogCmd, tol: &TolerancePolicy) -> Result<()> {
    match cmd {
        CatalogCmd::Brenner { family, r, lambda, raw } => {
            let id = BrennerFamilyId {
                family: BrennerFamily::parse(family)?,
                r: *r,
                lambda: *lambda,
            };
            if *raw {
                let (u, rho) = id.dims();
                let spanning = brenner::brenner_raw(&id)?;
                let out = RawBrenner {
                    name: id.name(),
                    u,
                    rho,
                    spanning: spanning.iter().map(raw_matrix).collect(),
                };
                emit(cli, &pretty(&out))
            } else {
                emit(cli, &brenner::build_brenner(&id, tol)?.to_json())
            }
        }
        CatalogCmd::Small { n } => {
            let out: Vec<_> = triple::small_catalogue(*n, tol)?
                .into_iter()
                .map(|(label, s)| SmallEntry {
                    label: label.to_string(),
                    system: s.to_doc(),
                })
                .collect();
            emit(cli, &pretty(&out))
        }
        CatalogCmd::List { umax } => {
            let mut brenner: Vec<String> = Vec::new();
            if *umax >= 2 {
                brenner.push("B(2,0;λ)".into());
            }
            brenner.extend(brenner::enumerate_brenner(*umax, &[]).iter().map(BrennerFamilyId::name));
            let mut reps: Vec<String> = Vec::new();
            if *umax >= 2 {
                reps.push("S(2,0;a,b,c)".into());
            }
            reps.extend(reps::enumerate_reps(*umax, &[]).iter().map(RepFamilyId::name));
            emit(
                cli,
                &pretty(&CatalogList {
                    u_max: *umax,
                    brenner,
                    reps,
                }),
            )
        }
    }
}

#[derive(Serialize)]
struct SmallTuple {
    alpha: f64,
    variant: usize,
    tuple: TupleDoc,
}

fn rep(cli: &Cli, cmd: &RepCmd, tol: &TolerancePolicy) -> Result<()> {
    match cmd {
        RepCmd::Family {
            u,
            rho,
            omega: point,
            system,
        } => {
            let id = match (point, u, rho) {
                (Some(p), _, _) => RepFamilyId::s200(omega(p, tol)?),
                (None, Some(u), Some(rho)) => {
                    let (family, r) = RepFamily::from_name(*u, *rho)?;
                    if family == RepFamily::S200 {
                        return Err(CliError::Parse("S(2,0) needs --omega A B C".into()));
                    }
                    RepFamilyId::sized(family, r)
                }
                _ => return Err(CliError::Parse("give --u and --rho, or --omega".into())),
            };
            if *system {
                emit(cli, &reps::rep_to_system(&id, tol)?.1.to_json())
            } else {
                emit(cli, &reps::build_rep(&id, tol)?.to_json())
            }
        }
        RepCmd::Small { n, alpha, variant } => match alpha {
            Some(a) => emit(cli, &reps::build_small_rep(*n, *a, *variant, tol)?.to_json()),
            None => {
                let out: Vec<SmallTuple> = reps::small_reps(*n, tol)?
                    .into_iter()
                    .map(|(alpha, variant, t)| SmallTuple {
                        alpha,
                        variant,
                        tuple: t.to_doc(),
                    })
                    .collect();
                emit(cli, &pretty(&out))
            }
        },
    }
}

#[derive(Serialize)]
struct TripleReport {
    #[serde(flatten)]
    decomposition: TripleDecomposition,
    end_dim_formula: usize,
}

#[derive(Serialize)]
struct SystemAnalysis {
    ambient_dim: usize,
    dims: Vec<usize>,
    end_dimension: usize,
    transitive: bool,
    indecomposable: bool,
    /// Quadruples only.
    defect: Option<i64>,
    /// Triples only.
    triple: Option<TripleReport>,
    /// Catalogue name for transitive systems of at most three subspaces.
    label: Option<String>,
}

#[derive(Serialize)]
struct TupleAnalysis {
    dim: usize,
    alpha: Option<f64>,
    ranks: Vec<usize>,
    commutant_dimension: usize,
    irreducible: bool,
    images: SystemAnalysis,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Analysis {
    System(SystemAnalysis),
    Tuple(TupleAnalysis),
}

fn analyze_system(s: &SubspaceSystem, tol: &TolerancePolicy) -> SystemAnalysis {
    let transitive = endo::is_transitive(s, tol);
    let triple = (s.len() == 3)
        .then(|| triple::decompose_triple(s, tol).ok())
        .flatten()
        .map(|d| TripleReport {
            end_dim_formula: triple::end_dim_formula(&d),
            decomposition: d,
        });
    let label = (transitive && (1..=3).contains(&s.len()))
        .then(|| triple::classify_small_transitive(s, tol).ok())
        .flatten()
        .map(|l| l.to_string());
    SystemAnalysis {
        ambient_dim: s.ambient_dim(),
        dims: s.dims(),
        end_dimension: endo::end_dimension(s, tol),
        transitive,
        indecomposable: endo::is_indecomposable(s, tol),
        defect: defect(s).ok(),
        triple,
        label,
    }
}

fn analyze_tuple(t: &ProjectionTuple, tol: &TolerancePolicy) -> Result<TupleAnalysis> {
    let images = system_from_projections(t, tol)?;
    Ok(TupleAnalysis {
        dim: t.dim(),
        alpha: t.alpha(),
        ranks: t.ranks(),
        commutant_dimension: endo::commutant_dimension(t, tol),
        irreducible: endo::is_irreducible(t, tol),
        images: analyze_system(&images, tol),
    })
}

#[derive(Serialize)]
struct FunctorOutput {
    word: String,
    trace: Vec<TraceStep>,
    tuple: TupleDoc,
}

fn functor(cli: &Cli, word: &str, input: &Path, tol: &TolerancePolicy) -> Result<()> {
    let word: FunctorWord = word.parse()?;
    let t = match read_doc(input, tol)? {
        Doc::Tuple(t) => t,
        Doc::System(_) => {
            return Err(CliError::Parse(format!(
                "{}: functors act on projection tuples",
                input.display()
            )))
        }
    };
    let res = apply_word(&t, &word, tol)?;
    let out = FunctorOutput {
        word: word.to_string(),
        trace: res.trace,
        tuple: res.tuple.to_doc(),
    };
    emit(cli, &pretty(&out))
}

fn fmt_num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(", ")
}

fn sigma_table(set: &SigmaSet) -> String {
    let n = set.n;
    if let Some(values) = &set.values {
        return format!("Σ_{n} = {{{}}}", fmt_list(values));
    }
    let mut rows = vec![format!("Σ_{n} to depth {}", set.depth)];
    let mut row = |name: &str, body: String| rows.push(format!("  {name:<10} {body}"));
    row("Λ⁰", fmt_list(&set.lambda0));
    row("Λ¹", fmt_list(&set.lambda1));
    if let Some([lo, hi]) = set.interval {
        row("interval", format!("[{}, {}]", fmt_num(lo), fmt_num(hi)));
    }
    row(&format!("{n} − Λ¹"), fmt_list(&set.mirror1));
    row(&format!("{n} − Λ⁰"), fmt_list(&set.mirror0));
    rows.join("\n")
}

fn membership_line(n: usize, alpha: f64, m: &SigmaMembership) -> String {
    let a = fmt_num(alpha);
    match &m.witness {
        None => format!("{a} ∉ Σ_{n}"),
        Some(w) => {
            let via = match w {
                SigmaBranch::Finite(k) => format!("element {k} of the finite set"),
                SigmaBranch::Lambda0(k) => format!("Λ⁰ term {k}"),
                SigmaBranch::Lambda1(k) => format!("Λ¹ term {k}"),
                SigmaBranch::Interval => "the interval".into(),
                SigmaBranch::Mirror1(k) => format!("{n} − Λ¹ term {k}"),
                SigmaBranch::Mirror0(k) => format!("{n} − Λ⁰ term {k}"),
            };
            format!("{a} ∈ Σ_{n} via {via}")
        }
    }
}

#[derive(Serialize)]
struct MembershipOutput {
    n: usize,
    alpha: f64,
    #[serde(flatten)]
    membership: SigmaMembership,
}

/// Number line from 0 to n: dots for isolated points, a bar for the interval.
fn sigma_svg(set: &SigmaSet) -> String {
    let (w, left, right, y) = (800.0, 40.0, 760.0, 60.0);
    let n = set.n as f64;
    let x = |v: f64| left + v / n * (right - left);
    let mut out = vec![
        format!(r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="110" viewBox="0 0 {w} 110">"#),
        format!(
            r#"<text x="{left}" y="20" font-family="sans-serif" font-size="14">Σ_{} (depth {})</text>"#,
            set.n, set.depth
        ),
        format!(r#"<line x1="{left}" y1="{y}" x2="{right}" y2="{y}" stroke="black"/>"#),
    ];
    for k in 0..=set.n {
        let xk = x(k as f64);
        out.push(format!(
            r#"<line x1="{xk:.2}" y1="{}" x2="{xk:.2}" y2="{}" stroke="black"/>"#,
            y - 6.0,
            y + 6.0
        ));
        out.push(format!(
            r#"<text x="{xk:.2}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{k}</text>"#,
            y + 24.0
        ));
    }
    if let Some([lo, hi]) = set.interval {
        out.push(format!(
            r#"<line x1="{:.2}" y1="{y}" x2="{:.2}" y2="{y}" stroke="crimson" stroke-width="6"/>"#,
            x(lo),
            x(hi)
        ));
    }
    let points = set
        .values
        .iter()
        .flatten()
        .chain(&set.lambda0)
        .chain(&set.lambda1)
        .chain(&set.mirror1)
        .chain(&set.mirror0);
    for &v in points {
        out.push(format!(r#"<circle cx="{:.2}" cy="{y}" r="3" fill="steelblue"/>"#, x(v)));
    }
    out.push("</svg>".into());
    out.join("\n")
}

fn sigma(cli: &Cli, args: &SigmaArgs) -> Result<()> {
    let set = SigmaSet::compute(args.n, args.depth)?;
    if let Some(path) = &args.plot {
        std::fs::write(path, sigma_svg(&set))
            .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display())))?;
    }
    match args.alpha {
        Some(alpha) => {
            let m = sigma_membership(args.n, alpha, args.depth, SIGMA_TOL)?;
            if args.json {
                let out = MembershipOutput {
                    n: args.n,
                    alpha,
                    membership: m,
                };
                emit(cli, &pretty(&out))
            } else {
                emit(cli, &membership_line(args.n, alpha, &m))
            }
        }
        None if args.json => emit(cli, &set.to_json()),
        None => emit(cli, &sigma_table(&set)),
    }
}

#[derive(Serialize)]
struct SystemIso {
    kind: &'static str,
    isomorphic: bool,
    confidence: Confidence,
    /// `σ` with subspace `σ(i)` of the left system mapped onto subspace `i` of the right.
    permutation: Option<Vec<usize>>,
    /// Invertible `R` realising the isomorphism; entries are `[re, im]`.
    witness: Option<JsonMatrix>,
}

#[derive(Serialize)]
struct TupleIso {
    kind: &'static str,
    unitarily_equivalent: bool,
    certain: bool,
}

#[derive(Serialize)]
struct LambdaOutput {
    omega: OmegaPoint,
    lambda: [f64; 2],
}

#[derive(Serialize)]
struct WitnessOutput {
    omega: OmegaPoint,
    lambda: [f64; 2],
    sigma: [usize; 4],
    r: JsonMatrix,
    det: [f64; 2],
    residuals: [f64; 4],
}

fn iso_cmd(cli: &Cli, cmd: &IsoCmd, tol: &TolerancePolicy) -> Result<()> {
    match cmd {
        IsoCmd::Check {
            left,
            right,
            permute,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            match (read_doc(left, tol)?, read_doc(right, tol)?) {
                (Doc::System(s), Doc::System(t)) => {
                    if s.len() != t.len() {
                        return Err(CliError::Domain(format!(
                            "systems have {} and {} subspaces",
                            s.len(),
                            t.len()
                        )));
                    }
                    let res = if *permute {
                        iso::is_isomorphic_up_to_permutation(&s, &t, &mut rng, tol)
                    } else {
                        iso::is_isomorphic(&s, &t, &mut rng, tol)
                    };
                    let out = SystemIso {
                        kind: "system",
                        isomorphic: res.isomorphic,
                        confidence: res.confidence,
                        permutation: res.permutation,
                        witness: res.witness.as_ref().map(matrix_to_json),
                    };
                    emit(cli, &pretty(&out))
                }
                (Doc::Tuple(a), Doc::Tuple(b)) => {
                    if *permute {
                        return Err(CliError::Parse("--permute applies to systems only".into()));
                    }
                    let res = iso::is_unitarily_equivalent(&a, &b, &mut rng, tol)?;
                    let out = TupleIso {
                        kind: "tuple",
                        unitarily_equivalent: res.equivalent,
                        certain: res.certain,
                    };
                    emit(cli, &pretty(&out))
                }
                _ => Err(CliError::Parse("compare two systems or two tuples".into())),
            }
        }
        IsoCmd::Lambda { omega: v } => {
            let p = omega(v, tol)?;
            let l = iso::lemma2_lambda(&p, tol)?;
            emit(
                cli,
                &pretty(&LambdaOutput {
                    omega: p,
                    lambda: [l.re, l.im],
                }),
            )
        }
        IsoCmd::Inverse { lambda } => {
            let p = iso::lemma2_inverse(*lambda, tol)?;
            emit(
                cli,
                &pretty(&LambdaOutput {
                    omega: p,
                    lambda: [lambda.re, lambda.im],
                }),
            )
        }
        IsoCmd::Witness { omega: v } => {
            let p = omega(v, tol)?;
            let w = iso::theorem8_witness(&p, tol)?;
            let out = WitnessOutput {
                omega: p,
                lambda: [w.lambda.re, w.lambda.im],
                sigma: w.sigma,
                r: matrix_to_json(&w.r),
                det: [w.det.re, w.det.im],
                residuals: w.residuals,
            };
            emit(cli, &pretty(&out))
        }
    }
}

fn verify_table(rep: &VerifyReport) -> String {
    let mut rows = vec![format!(
        "verify-all  u_max={}  seed={}\n{:<4} {:<6} {:>6} {:>9} {:>7}  {}",
        rep.u_max, rep.seed, "id", "result", "cases", "time", "budget", "criterion"
    )];
    for c in &rep.criteria {
        rows.push(format!(
            "{:<4} {:<6} {:>6} {:>8.3}s {:>6.0}s  {}{}",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.cases,
            c.elapsed.as_secs_f64(),
            c.budget_secs,
            c.title,
            if c.within_budget() { "" } else { "  (over budget)" }
        ));
    }
    let passed = rep.criteria.iter().filter(|c| c.passed).count();
    rows.push(format!(
        "{passed}/{} criteria passed in {:.3}s",
        rep.criteria.len(),
        rep.elapsed().as_secs_f64()
    ));
    rows.join("\n")
}

fn verify_all(cli: &Cli, args: &VerifyArgs, tol: TolerancePolicy) -> Result<()> {
    let cfg = VerifyConfig {
        u_max: args.umax,
        seed: args.seed,
        exec: if args.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
        tol,
    };
    let rep = verify::verify_all(&cfg);
    if args.json {
        emit(cli, &rep.to_json())?;
    } else {
        emit(cli, &verify_table(&rep))?;
    }
    if rep.passed {
        return Ok(());
    }
    let failed = rep
        .criteria
        .iter()
        .filter(|c| !c.passed)
        .flat_map(|c| {
            let head = format!("criterion {} ({})", c.id, c.title);
            if c.failures.is_empty() {
                vec![head]
            } else {
                c.failures.iter().map(|f| format!("{head}: {f}")).collect()
            }
        })
        .collect();
    Err(CliError::Verify(failed))
}
