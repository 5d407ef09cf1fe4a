//! Every law suite, run across the whole matrix of categories and
//! coefficient rigs. Polynomial and matrix runs decide equality exactly;
//! smooth runs decide it by sampling, so they use the category's pinned
//! tolerance. Trial counts are kept modest here — the point is breadth.

use rdcat_core::checker::{
    check_cdc, check_dagger, check_fibration, check_lemmas, check_rd, check_roundtrip, CheckReport,
    CheckSpec, ForwardMode,
};
use rdcat_core::{
    BoolRig, ForwardDifferential, GenerateMorphisms, IntRig, MatCat, ModRig, NatRig, PolyCat,
    RatRig, ReverseDifferential, SmoothCat, TropicalRig,
};

fn spec(trials: usize) -> CheckSpec {
    CheckSpec {
        trials,
        seed: 42,
        ..CheckSpec::default()
    }
}

fn assert_pass(report: &CheckReport) {
    assert!(
        report.all_pass(),
        "suite {} failed on {}/{}:\n{report}",
        report.suite,
        report.category,
        report.rig
    );
}

/// Runs all six suites (forward checks in both modes) and asserts a clean
/// pass on each.
fn full_stack<C>(cat: &C, trials: usize)
where
    C: ForwardDifferential + ReverseDifferential + GenerateMorphisms,
{
    let spec = spec(trials);
    assert_pass(&check_rd(cat, &spec));
    assert_pass(&check_cdc(cat, &spec, ForwardMode::Direct));
    assert_pass(&check_cdc(cat, &spec, ForwardMode::Derived));
    assert_pass(&check_lemmas(cat, &spec));
    assert_pass(&check_dagger(cat, &spec));
    assert_pass(&check_roundtrip(cat, &spec));
    assert_pass(&check_fibration(cat, &spec));
}

#[test]
fn poly_int() {
    full_stack(&PolyCat::new(IntRig::default()), 20);
}

#[test]
fn poly_nat() {
    full_stack(&PolyCat::new(NatRig::default()), 20);
}

#[test]
fn poly_rat() {
    full_stack(&PolyCat::new(RatRig::default()), 15);
}

#[test]
fn poly_bool() {
    full_stack(&PolyCat::new(BoolRig), 20);
}

#[test]
fn poly_mod_small() {
    full_stack(&PolyCat::new(ModRig::new(2)), 15);
    full_stack(&PolyCat::new(ModRig::new(7)), 15);
}

#[test]
fn poly_tropical() {
    full_stack(&PolyCat::new(TropicalRig), 15);
}

#[test]
fn mat_int() {
    full_stack(&MatCat::new(IntRig::default()), 25);
}

#[test]
fn mat_rat() {
    full_stack(&MatCat::new(RatRig::default()), 20);
}

#[test]
fn mat_bool() {
    full_stack(&MatCat::new(BoolRig), 25);
}

#[test]
fn mat_mod() {
    full_stack(&MatCat::new(ModRig::new(5)), 25);
}

#[test]
fn mat_tropical() {
    full_stack(&MatCat::new(TropicalRig), 25);
}

#[test]
fn smooth_sampled() {
    full_stack(&SmoothCat::default(), 8);
}

#[test]
fn reports_identical_across_reruns() {
    let cat = PolyCat::new(IntRig::default());
    let s = spec(10);
    let a = check_lemmas(&cat, &s);
    let b = check_lemmas(&cat, &s);
    assert_eq!(a.identities, b.identities);
    assert_eq!(a.seed, b.seed);
}

/// The symbolic smooth derivatives must agree with central finite
/// differences of the evaluated maps — an oracle entirely outside the
/// symbolic pipeline.
#[test]
fn smooth_reverse_matches_finite_differences() {
    use rand::Rng;
    use rand::SeedableRng;

    let cat = SmoothCat::default();
    let h = 1e-5;
    let tol = 1e-4;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for f in rdcat_core::smooth::standard_pool() {
        let n = f.dom();
        let m = f.cod();
        let rf = cat.reverse(&f);
        for _ in 0..20 {
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let w: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
            // Reverse derivative at (x, w) = Jacobian-transpose-vector product.
            let mut point = x.clone();
            point.extend_from_slice(&w);
            let symbolic = rf.eval(&point);
            for i in 0..n {
                let mut up = x.clone();
                let mut dn = x.clone();
                up[i] += h;
                dn[i] -= h;
                let fu = f.eval(&up);
                let fd = f.eval(&dn);
                let numeric: f64 = (0..m).map(|j| (fu[j] - fd[j]) / (2.0 * h) * w[j]).sum();
                let dev = (symbolic[i] - numeric).abs() / numeric.abs().max(1.0);
                assert!(
                    dev <= tol,
                    "finite-difference mismatch on {f} at {point:?}: coordinate {i} symbolic {} vs numeric {numeric}",
                    symbolic[i]
                );
            }
        }
    }
}
