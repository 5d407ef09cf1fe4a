//! Acceptance criteria, one test per criterion. Each prints a single
//! `cNN PASS|FAIL` line (visible with `--nocapture`; the harness line for
//! each test mirrors it). Tolerances and trial counts are pinned here.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rdcat_core::checker::{
    check_cdc, check_dagger, check_fibration, check_lemmas, check_rd, check_roundtrip, mutations,
    CheckReport, CheckSpec, ForwardMode,
};
use rdcat_core::{
    BoolRig, Category, ForwardDifferential, GenCaps, GenerateMorphisms, IntRig, MatCat, ModRig,
    NatRig, ParseMorphism, PolyCat, RatRig, ReverseDifferential, SmoothCat, TropicalRig,
};

/// Pinned oracle parameters.
const SEED: u64 = 42;
const SMOOTH_SAMPLES: usize = 50;
const SMOOTH_TOL: f64 = 1e-7;
const FD_STEP: f64 = 1e-5;
const FD_REL_TOL: f64 = 1e-5;
const FD_POINTS: usize = 100;

fn spec(trials: usize) -> CheckSpec {
    CheckSpec {
        trials,
        seed: SEED,
        caps: GenCaps::default(),
    }
}

fn smooth() -> SmoothCat {
    SmoothCat::new(SMOOTH_SAMPLES, SMOOTH_TOL, SEED)
}

/// Prints the criterion verdict line and fails the test on FAIL.
fn verdict(id: &str, desc: &str, pass: bool, detail: String) {
    println!("{id} {}: {desc}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{id} failed — {desc}\n{detail}");
}

fn all_pass(reports: &[CheckReport]) -> (bool, String) {
    let pass = reports.iter().all(|r| r.all_pass());
    let detail = reports
        .iter()
        .filter(|r| !r.all_pass())
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join("\n");
    (pass, detail)
}

#[test]
fn c01_combinators_exist_with_expected_signatures() {
    let started = Instant::now();
    let mut ok = true;
    let mut detail = String::new();

    // Frozen example derivatives in each category.
    let poly = PolyCat::new(IntRig::default());
    let f = poly
        .parse_morphism("poly(2->1){ x1^2 + 3*x1*x2 + 5*x2 }")
        .expect("well-formed");
    let checks = [
        (
            poly.reverse(&f).to_string(),
            "poly(3->2){ 2*x1*x3 + 3*x2*x3 ; 3*x1*x3 + 5*x3 }",
        ),
        (
            poly.forward(&f).to_string(),
            "poly(4->1){ 2*x1*x3 + 3*x1*x4 + 3*x2*x3 + 5*x4 }",
        ),
    ];
    let sm = smooth();
    let g = sm
        .parse_morphism("smooth(2->1){ sin(x1) + x2 }")
        .expect("well-formed");
    let mat = MatCat::new(IntRig::default());
    let h = mat.parse_morphism("mat(1->2){ 2 3 }").expect("well-formed");
    let more = [
        (
            sm.reverse(&g).to_string(),
            "smooth(3->2){ cos(x1)*x3 ; x3 }",
        ),
        (mat.reverse(&h).to_string(), "mat(3->1){ 0 ; 2 ; 3 }"),
        (mat.forward(&h).to_string(), "mat(2->2){ 0 0 ; 2 3 }"),
    ];
    for (got, want) in checks.iter().chain(more.iter()) {
        if got != want {
            ok = false;
            detail.push_str(&format!("got {got}, want {want}\n"));
        }
    }

    // Signature arithmetic on random morphisms: D[f] : 2n -> m and
    // R[f] : n + m -> n, in every category.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let caps = GenCaps::default();
    for _ in 0..10 {
        let n = rng.random_range(0..=3);
        let m = rng.random_range(0..=3);
        let p = poly.random_morphism(&mut rng, n, m, &caps);
        ok &= poly.signature(&poly.forward(&p)) == format!("{}->{m}", 2 * n);
        ok &= poly.signature(&poly.reverse(&p)) == format!("{}->{n}", n + m);
        let q = mat.random_morphism(&mut rng, n, m, &caps);
        ok &= mat.signature(&mat.forward(&q)) == format!("{}->{m}", 2 * n);
        ok &= mat.signature(&mat.reverse(&q)) == format!("{}->{n}", n + m);
        let s = sm.random_morphism(&mut rng, n, m.max(1), &caps);
        ok &= sm.signature(&sm.forward(&s)) == format!("{}->{}", 2 * n, m.max(1));
        ok &= sm.signature(&sm.reverse(&s)) == format!("{}->{n}", n + m.max(1));
    }

    let within_budget = started.elapsed() < Duration::from_secs(1);
    if !within_budget {
        detail.push_str("exceeded the 1s budget\n");
    }
    verdict(
        "c01",
        "three categories expose forward and reverse combinators with the expected shapes",
        ok && within_budget,
        detail,
    );
}

#[test]
fn c02_reverse_axioms_hold_across_rigs() {
    let started = Instant::now();
    let s = spec(200);
    let reports = vec![
        check_rd(&PolyCat::new(IntRig::default()), &s),
        check_rd(&PolyCat::new(NatRig::default()), &s),
        check_rd(&PolyCat::new(BoolRig), &s),
        check_rd(&PolyCat::new(ModRig::new(7)), &s),
        check_rd(&MatCat::new(IntRig::default()), &s),
        check_rd(&MatCat::new(TropicalRig), &s),
    ];
    let (pass, mut detail) = all_pass(&reports);
    let within_budget = started.elapsed() < Duration::from_secs(60);
    if !within_budget {
        detail.push_str("exceeded the 60s budget\n");
    }
    verdict(
        "c02",
        "reverse-derivative axioms hold over 200 trials on six category/rig pairs",
        pass && within_budget,
        detail,
    );
}

#[test]
fn c03_forward_axioms_hold_with_derived_combinator() {
    let s = spec(200);
    let poly = PolyCat::new(IntRig::default());
    let mat = MatCat::new(IntRig::default());
    let reports = vec![
        check_cdc(&poly, &s, ForwardMode::Direct),
        check_cdc(&poly, &s, ForwardMode::Derived),
        check_cdc(&mat, &s, ForwardMode::Derived),
    ];
    let (mut pass, mut detail) = all_pass(&reports);
    // The derived run must include the agreement identity at full strength.
    let derived = &reports[1];
    match derived
        .identities
        .iter()
        .find(|i| i.name == "derived-matches-direct")
    {
        Some(i) if i.pass == 200 && i.fail == 0 => {}
        other => {
            pass = false;
            detail.push_str(&format!("derived-matches-direct: {other:?}\n"));
        }
    }
    verdict(
        "c03",
        "forward-derivative axioms hold with D rebuilt from R, agreeing with the direct D",
        pass,
        detail,
    );
}

#[test]
fn c04_derived_combinators_match_direct() {
    let s = spec(100);
    let reports = vec![
        check_roundtrip(&PolyCat::new(IntRig::default()), &s),
        check_roundtrip(&MatCat::new(IntRig::default()), &s),
    ];
    let (pass, detail) = all_pass(&reports);
    verdict(
        "c04",
        "rebuilding D from R and R from D reproduces the direct combinators over 100 trials",
        pass,
        detail,
    );
}

#[test]
fn c05_structural_identities_hold() {
    let s = spec(100);
    let report = check_lemmas(&PolyCat::new(IntRig::default()), &s);
    let pass = report.all_pass() && report.identities.len() >= 21;
    verdict(
        "c05",
        "derived structural identities (projections, injections, pairings, products) hold over 100 trials",
        pass,
        report.to_string(),
    );
}

#[test]
fn c06_dagger_behaves_on_linear_and_nonlinear_maps() {
    let s = spec(100);
    let report = check_dagger(&PolyCat::new(IntRig::default()), &s);
    let mut pass = report.all_pass();
    let mut detail = report.to_string();
    let linear_draws = report
        .identities
        .iter()
        .find(|i| i.name == "involution-linear")
        .map_or(0, |i| i.pass);
    let nonlinear_draws = report
        .identities
        .iter()
        .find(|i| i.name == "nonlinear-distinct")
        .map_or(0, |i| i.pass);
    if linear_draws < 50 || nonlinear_draws < 20 {
        pass = false;
        detail.push_str(&format!(
            "draw counts too small: {linear_draws} linear, {nonlinear_draws} nonlinear\n"
        ));
    }
    verdict(
        "c06",
        "dagger is involutive/contravariant on linear maps and provably not involutive on sampled nonlinear maps",
        pass,
        detail,
    );
}

#[test]
fn c07_fibration_laws_hold() {
    let s = spec(100);
    let reports = vec![
        check_fibration(&PolyCat::new(IntRig::default()), &s),
        check_fibration(&MatCat::new(RatRig::default()), &s),
    ];
    let (pass, detail) = all_pass(&reports);
    verdict(
        "c07",
        "the linear-fiber structure is functorial under f -> (f, R[f]) over 100 trials",
        pass,
        detail,
    );
}

#[test]
fn c08_smooth_derivatives_validated_numerically() {
    let cat = smooth();
    let mut ok = true;
    let mut detail = String::new();

    // Central finite differences against the symbolic reverse derivative,
    // over the fixed pool of closed-form maps.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for f in rdcat_core::smooth::standard_pool() {
        let n = f.dom();
        let m = f.cod();
        let rf = cat.reverse(&f);
        for _ in 0..FD_POINTS / 20 {
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let w: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mut point = x.clone();
            point.extend_from_slice(&w);
            let symbolic = rf.eval(&point);
            for i in 0..n {
                let mut up = x.clone();
                let mut dn = x.clone();
                up[i] += FD_STEP;
                dn[i] -= FD_STEP;
                let fu = f.eval(&up);
                let fd = f.eval(&dn);
                let numeric: f64 = (0..m)
                    .map(|j| (fu[j] - fd[j]) / (2.0 * FD_STEP) * w[j])
                    .sum();
                let dev = (symbolic[i] - numeric).abs() / numeric.abs().max(1.0);
                if dev > FD_REL_TOL {
                    ok = false;
                    detail.push_str(&format!(
                        "finite differences disagree on {f} at {point:?}: {} vs {numeric}\n",
                        symbolic[i]
                    ));
                }
            }
        }
    }

    // The full reverse suite under the sampled equality oracle.
    let report = check_rd(&cat, &spec(25));
    if !report.all_pass() {
        ok = false;
        detail.push_str(&report.to_string());
    }
    verdict(
        "c08",
        "smooth symbolic derivatives match finite differences and satisfy the reverse axioms under sampling",
        ok,
        detail,
    );
}

#[test]
fn c09_broken_combinators_are_caught() {
    let reports = mutations::all_mutation_reports(&spec(12));
    let mut ok = reports.len() == 5;
    let mut detail = String::new();
    for report in &reports {
        if report.failures() == 0 {
            ok = false;
            detail.push_str(&format!(
                "mutant {} on {}/{} slipped through\n",
                report.suite, report.category, report.rig
            ));
        }
    }
    verdict(
        "c09",
        "every deliberately broken combinator fails at least one law",
        ok,
        detail,
    );
}

#[test]
fn c10_cli_golden_outputs_and_round_trip() {
    let mut ok = true;
    let mut detail = String::new();

    // Byte-exact command outputs.
    let goldens: [(&[&str], &str); 3] = [
        (
            &["derive", "reverse", "poly(2->1){ x1^2 + 3*x1*x2 + 5*x2 }"],
            "poly(3->2){ 2*x1*x3 + 3*x2*x3 ; 3*x1*x3 + 5*x3 }\n",
        ),
        (
            &["dagger", "poly(2->1){ x1^2 + 3*x1*x2 + 5*x2 }"],
            "poly(1->2){ 0 ; 5*x1 }\n",
        ),
        (
            &["derive", "forward", "poly(1->1){ x1 }"],
            "poly(2->1){ x2 }\n",
        ),
    ];
    for (args, want) in goldens {
        let out = Command::new(env!("CARGO_BIN_EXE_rdcat"))
            .args(args)
            .output()
            .expect("binary runs");
        let got = String::from_utf8(out.stdout).expect("utf8");
        if got != want || !out.status.success() {
            ok = false;
            detail.push_str(&format!("{args:?}: got {got:?}, want {want:?}\n"));
        }
    }

    // Print/parse round trip across 500 random morphisms spanning the
    // categories and several rigs.
    let caps = GenCaps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let int = PolyCat::new(IntRig::default());
    let rat = PolyCat::new(RatRig::default());
    let trop = PolyCat::new(TropicalRig);
    let mat = MatCat::new(IntRig::default());
    let sm = smooth();
    for k in 0..500 {
        let dom = rng.random_range(0..=3);
        let cod = rng.random_range(0..=3);
        let round_trip_ok = match k % 5 {
            0 => {
                let f = int.random_morphism(&mut rng, dom, cod, &caps);
                int.parse_morphism(&f.to_string()).ok() == Some(f)
            }
            1 => {
                let f = rat.random_morphism(&mut rng, dom, cod, &caps);
                rat.parse_morphism(&f.to_string()).ok() == Some(f)
            }
            2 => {
                let f = trop.random_morphism(&mut rng, dom, cod, &caps);
                trop.parse_morphism(&f.to_string()).ok() == Some(f)
            }
            3 => {
                let f = mat.random_morphism(&mut rng, dom, cod, &caps);
                mat.parse_morphism(&f.to_string()).ok() == Some(f)
            }
            _ => {
                let f = sm.random_morphism(&mut rng, dom, cod.max(1), &caps);
                sm.parse_morphism(&f.to_string()).ok() == Some(f)
            }
        };
        if !round_trip_ok {
            ok = false;
            detail.push_str(&format!("round trip {k} failed\n"));
        }
    }
    verdict(
        "c10",
        "canonical CLI outputs are byte-stable and 500 morphisms survive print/parse round trips",
        ok,
        detail,
    );
}
