//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its case count and wall time.

use std::time::Duration;

use subspace_lab::par::Execution;
use subspace_lab::verify::{self, CriterionReport, VerifyConfig};

fn config() -> VerifyConfig {
    VerifyConfig {
        u_max: 9,
        seed: 7,
        exec: Execution::Parallel,
        ..VerifyConfig::default()
    }
}

fn report(r: &CriterionReport) {
    println!(
        "criterion {} [{}] {} ({} cases, {:.3}s of {:.0}s budget)",
        r.id,
        if r.passed { "PASS" } else { "FAIL" },
        r.title,
        r.cases,
        r.elapsed.as_secs_f64(),
        r.budget_secs
    );
    for f in &r.failures {
        println!("    {f}");
    }
    assert!(r.passed, "criterion {} failed: {:?}", r.id, r.failures);
    assert!(r.cases > 0, "criterion {} ran no cases", r.id);
    assert!(r.within_budget(), "criterion {} took {:?}", r.id, r.elapsed);
}

#[test]
fn criterion_1_triple_formula() {
    let r = verify::criterion_1(&config());
    assert!(r.cases >= 200);
    report(&r);
}

#[test]
fn criterion_2_small_catalogues() {
    report(&verify::criterion_2(&config()));
}

#[test]
fn criterion_3_brenner_catalogue() {
    let cfg = config();
    let ids = verify::brenner_ids(&cfg);
    let family_one = ids.iter().filter(|id| id.lambda.is_some()).count();
    assert!(family_one >= 10);
    report(&verify::criterion_3(&cfg));
}

#[test]
fn criterion_4_projection_families() {
    report(&verify::criterion_4(&config()));
}

#[test]
fn criterion_5_sigma_spectra() {
    report(&verify::criterion_5(&config()));
}

#[test]
fn criterion_6_coxeter_functors() {
    report(&verify::criterion_6(&config()));
}

#[test]
fn criterion_7_lambda_correspondence() {
    let r = verify::criterion_7(&config());
    assert!(r.cases >= 100);
    report(&r);
}

#[test]
fn criterion_8_transitive_chain() {
    report(&verify::criterion_8(&config()));
}

#[test]
fn criterion_9_functor_chain() {
    report(&verify::criterion_9(&config()));
}

#[test]
fn verify_all_under_a_minute() {
    let cfg = VerifyConfig { u_max: 7, ..config() };
    let rep = verify::verify_all(&cfg);
    println!(
        "verify-all [{}] u_max={} seed={} in {:.3}s",
        if rep.passed { "PASS" } else { "FAIL" },
        cfg.u_max,
        cfg.seed,
        rep.elapsed().as_secs_f64()
    );
    assert!(rep.passed);
    assert!(rep.elapsed() < Duration::from_secs(60));
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let par = VerifyConfig { u_max: 5, ..config() };
    let seq = VerifyConfig {
        exec: Execution::Sequential,
        ..par
    };
    assert_eq!(verify::verify_all(&par).to_json(), verify::verify_all(&seq).to_json());
}
