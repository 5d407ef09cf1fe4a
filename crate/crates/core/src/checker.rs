//! Randomized law checking for forward and reverse differential structure.
//!
//! A suite draws random morphisms trial by trial (each trial reseeded as
//! `seed + trial`, so any counterexample is reproducible in isolation),
//! instantiates each law at those morphisms, and compares both sides with
//! the category's own equality oracle — exact for polynomials and
//! matrices, sampled for smooth maps. Reports tally passes and failures
//! per identity and keep the first counterexample verbatim.
//!
//! The `mutations` module runs the same machinery against deliberately
//! broken combinators and formulas; every mutation must produce failures,
//! which guards the suites themselves against vacuity.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::category::{
    Category, ForwardDifferential, GenCaps, GenerateMorphisms, ReverseDifferential, Side, Split,
};
use crate::combinators::{
    contextual_dagger, dagger, forward_from_reverse, is_linear, is_linear_in_second,
    linfib_compose, linfib_equal, linfib_identity, partial_derivative, reverse_from_forward_dagger,
    reverse_functor, LinFibMorphism, LinFibObj,
};

/// Parameters shared by every suite.
#[derive(Clone, Debug)]
pub struct CheckSpec {
    pub trials: usize,
    pub seed: u64,
    pub caps: GenCaps,
}

impl Default for CheckSpec {
    fn default() -> Self {
        CheckSpec {
            trials: 50,
            seed: 42,
            caps: GenCaps::default(),
        }
    }
}

/// The first failing instance of an identity, kept printable.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Tally for one identity across all trials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub pass: usize,
    pub fail: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// Outcome of one suite over one category instance.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub category: String,
    pub rig: String,
    pub trials: usize,
    pub seed: u64,
    pub identities: Vec<IdentityReport>,
    pub elapsed_ms: u128,
}

impl CheckReport {
    /// Total failing trials across all identities.
    pub fn failures(&self) -> usize {
        self.identities.iter().map(|i| i.fail).sum()
    }

    /// Number of identities with at least one failing trial.
    pub fn failed_identities(&self) -> usize {
        self.identities.iter().filter(|i| i.fail > 0).count()
    }

    pub fn all_pass(&self) -> bool {
        !self.identities.is_empty() && self.failures() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} on {} over {}: {} identities, {} trials, seed {} ({} ms)",
            self.suite,
            self.category,
            self.rig,
            self.identities.len(),
            self.trials,
            self.seed,
            self.elapsed_ms
        )?;
        for id in &self.identities {
            let verdict = if id.fail == 0 { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "  {} {} ({} pass / {} fail)",
                verdict, id.name, id.pass, id.fail
            )?;
            if let Some(ce) = &id.counterexample {
                writeln!(f, "    trial {}: {}", ce.trial, ce.inputs)?;
                writeln!(f, "    lhs = {}", ce.lhs)?;
                writeln!(f, "    rhs = {}", ce.rhs)?;
                if let Some(note) = &ce.note {
                    writeln!(f, "    note: {note}")?;
                }
            }
        }
        Ok(())
    }
}

/// Accumulates identity outcomes in first-emission order.
struct Run<'a, C: Category> {
    cat: &'a C,
    order: Vec<String>,
    table: HashMap<String, IdentityReport>,
}

impl<'a, C: Category> Run<'a, C> {
    fn new(cat: &'a C) -> Self {
        Run {
            cat,
            order: Vec::new(),
            table: HashMap::new(),
        }
    }

    fn entry(&mut self, name: &str) -> &mut IdentityReport {
        if !self.table.contains_key(name) {
            self.order.push(name.to_string());
            self.table.insert(
                name.to_string(),
                IdentityReport {
                    name: name.to_string(),
                    pass: 0,
                    fail: 0,
                    counterexample: None,
                },
            );
        }
        self.table.get_mut(name).expect("entry just inserted")
    }

    /// Records `lhs = rhs` under the category's equality oracle.
    fn record(&mut self, name: &str, trial: usize, inputs: &str, lhs: &C::Mor, rhs: &C::Mor) {
        let outcome = self.cat.equal_detailed(lhs, rhs);
        let (lhs_str, rhs_str) = (lhs.to_string(), rhs.to_string());
        let entry = self.entry(name);
        if outcome.equal {
            entry.pass += 1;
        } else {
            entry.fail += 1;
            if entry.counterexample.is_none() {
                entry.counterexample = Some(Counterexample {
                    trial,
                    inputs: inputs.to_string(),
                    lhs: lhs_str,
                    rhs: rhs_str,
                    note: outcome.detail,
                });
            }
        }
    }

    /// Records a law that demands the two sides differ.
    fn record_expected_distinct(
        &mut self,
        name: &str,
        trial: usize,
        inputs: &str,
        lhs: &C::Mor,
        rhs: &C::Mor,
    ) {
        let outcome = self.cat.equal_detailed(lhs, rhs);
        let (lhs_str, rhs_str) = (lhs.to_string(), rhs.to_string());
        let entry = self.entry(name);
        if !outcome.equal {
            entry.pass += 1;
        } else {
            entry.fail += 1;
            if entry.counterexample.is_none() {
                entry.counterexample = Some(Counterexample {
                    trial,
                    inputs: inputs.to_string(),
                    lhs: lhs_str,
                    rhs: rhs_str,
                    note: Some("expected the two sides to differ".to_string()),
                });
            }
        }
    }

    /// Records an already-evaluated boolean law.
    fn record_bool(&mut self, name: &str, trial: usize, inputs: &str, ok: bool, note: &str) {
        let entry = self.entry(name);
        if ok {
            entry.pass += 1;
        } else {
            entry.fail += 1;
            if entry.counterexample.is_none() {
                entry.counterexample = Some(Counterexample {
                    trial,
                    inputs: inputs.to_string(),
                    lhs: String::new(),
                    rhs: String::new(),
                    note: Some(note.to_string()),
                });
            }
        }
    }

    fn finish(mut self, suite: &str, spec: &CheckSpec, start: Instant) -> CheckReport {
        let identities = self
            .order
            .iter()
            .map(|name| self.table.remove(name).expect("recorded identity"))
            .collect();
        CheckReport {
            suite: suite.to_string(),
            category: self.cat.category_name().to_string(),
            rig: self.cat.scalar_name(),
            trials: spec.trials,
            seed: spec.seed,
            identities,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }
}

fn trial_rng(spec: &CheckSpec, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(spec.seed.wrapping_add(trial as u64))
}

fn draw_arity(rng: &mut ChaCha8Rng, caps: &GenCaps) -> usize {
    rng.random_range(1..=caps.max_arity.max(1))
}

/// The axioms of the reverse combinator: additivity in the map and in the
/// cotangent, the structural rules for identities, projections, pairings,
/// and composition, and the two higher-order coherences.
pub fn check_rd<C>(cat: &C, spec: &CheckSpec) -> CheckReport
where
    C: ReverseDifferential + GenerateMorphisms,
{
    let start = Instant::now();
    let mut run = Run::new(cat);
    let caps = &spec.caps;
    for trial in 0..spec.trials {
        let mut rng = trial_rng(spec, trial);
        let a = draw_arity(&mut rng, caps);
        let b = draw_arity(&mut rng, caps);
        let c = draw_arity(&mut rng, caps);
        let x = draw_arity(&mut rng, caps);
        let f = cat.random_morphism(&mut rng, a, b, caps);
        let f2 = cat.random_morphism(&mut rng, a, b, caps);
        let g = cat.random_morphism(&mut rng, b, c, caps);
        let rf = cat.reverse(&f);

        // R[f + f2] = R[f] + R[f2] and R[0] = 0.
        run.record(
            "RD.1-add",
            trial,
            &format!("f = {f}; g = {f2}"),
            &cat.reverse(&cat.add(&f, &f2)),
            &cat.add(&rf, &cat.reverse(&f2)),
        );
        run.record(
            "RD.1-zero",
            trial,
            &format!("zero : {a}->{b}"),
            &cat.reverse(&cat.zero(a, b)),
            &cat.zero(a + b, a),
        );

        // <p, q1 + q2> R[f] = <p, q1> R[f] + <p, q2> R[f], and with q = 0.
        let p = cat.random_morphism(&mut rng, x, a, caps);
        let q1 = cat.random_morphism(&mut rng, x, b, caps);
        let q2 = cat.random_morphism(&mut rng, x, b, caps);
        let inputs = format!("f = {f}; p = {p}; q1 = {q1}; q2 = {q2}");
        run.record(
            "RD.2-add",
            trial,
            &inputs,
            &cat.compose(&cat.pairing(&p, &cat.add(&q1, &q2)), &rf),
            &cat.add(
                &cat.compose(&cat.pairing(&p, &q1), &rf),
                &cat.compose(&cat.pairing(&p, &q2), &rf),
            ),
        );
        run.record(
            "RD.2-zero",
            trial,
            &format!("f = {f}; p = {p}"),
            &cat.compose(&cat.pairing(&p, &cat.zero(x, b)), &rf),
            &cat.zero(x, a),
        );
        // The same additivity instantiated at points (maps out of the unit).
        let p0 = cat.random_morphism(&mut rng, 0, a, caps);
        let q01 = cat.random_morphism(&mut rng, 0, b, caps);
        let q02 = cat.random_morphism(&mut rng, 0, b, caps);
        let inputs0 = format!("f = {f}; p = {p0}; q1 = {q01}; q2 = {q02}");
        run.record(
            "RD.2-add-const",
            trial,
            &inputs0,
            &cat.compose(&cat.pairing(&p0, &cat.add(&q01, &q02)), &rf),
            &cat.add(
                &cat.compose(&cat.pairing(&p0, &q01), &rf),
                &cat.compose(&cat.pairing(&p0, &q02), &rf),
            ),
        );
        run.record(
            "RD.2-zero-const",
            trial,
            &format!("f = {f}; p = {p0}"),
            &cat.compose(&cat.pairing(&p0, &cat.zero(0, b)), &rf),
            &cat.zero(0, a),
        );

        // R[1] = pi1; R[pi0] = pi1 iota0; R[pi1] = pi1 iota1.
        run.record(
            "RD.3-identity",
            trial,
            &format!("identity on {a}"),
            &cat.reverse(&cat.identity(a)),
            &cat.projection(Split::new(a, a), Side::Right),
        );
        run.record(
            "RD.3-proj0",
            trial,
            &format!("pi0 : {a}x{b}->{a}"),
            &cat.reverse(&cat.projection(Split::new(a, b), Side::Left)),
            &cat.compose(
                &cat.projection(Split::new(a + b, a), Side::Right),
                &cat.injection(Split::new(a, b), Side::Left),
            ),
        );
        run.record(
            "RD.3-proj1",
            trial,
            &format!("pi1 : {a}x{b}->{b}"),
            &cat.reverse(&cat.projection(Split::new(a, b), Side::Right)),
            &cat.compose(
                &cat.projection(Split::new(a + b, b), Side::Right),
                &cat.injection(Split::new(a, b), Side::Right),
            ),
        );

        // R[<f, h>] = (1 x pi0) R[f] + (1 x pi1) R[h]; R[!] = 0.
        let h = cat.random_morphism(&mut rng, a, c, caps);
        run.record(
            "RD.4-pairing",
            trial,
            &format!("f = {f}; g = {h}"),
            &cat.reverse(&cat.pairing(&f, &h)),
            &cat.add(
                &cat.compose(
                    &cat.product(
                        &cat.identity(a),
                        &cat.projection(Split::new(b, c), Side::Left),
                    ),
                    &rf,
                ),
                &cat.compose(
                    &cat.product(
                        &cat.identity(a),
                        &cat.projection(Split::new(b, c), Side::Right),
                    ),
                    &cat.reverse(&h),
                ),
            ),
        );
        run.record(
            "RD.4-bang",
            trial,
            &format!("bang on {a}"),
            &cat.reverse(&cat.bang(a)),
            &cat.zero(a, a),
        );

        // R[f g] = <pi0, <pi0 f, pi1>> (1 x R[g]) R[f].
        let split_ac = Split::new(a, c);
        let pi0 = cat.projection(split_ac, Side::Left);
        let pi1 = cat.projection(split_ac, Side::Right);
        let shuffled = cat.pairing(&pi0, &cat.pairing(&cat.compose(&pi0, &f), &pi1));
        let rhs = cat.compose(
            &cat.compose(&shuffled, &cat.product(&cat.identity(a), &cat.reverse(&g))),
            &rf,
        );
        run.record(
            "RD.5-compose",
            trial,
            &format!("f = {f}; g = {g}"),
            &cat.reverse(&cat.compose(&f, &g)),
            &rhs,
        );

        // <1 x pi0, 0 x pi1> (iota0 x 1) R^3[f] pi1 = (1 x pi1) R[f].
        let bb = Split::new(b, b);
        let part1 = cat.pairing(
            &cat.product(&cat.identity(a), &cat.projection(bb, Side::Left)),
            &cat.product(&cat.zero(a, a), &cat.projection(bb, Side::Right)),
        );
        let part2 = cat.product(
            &cat.injection(Split::new(a + b, a), Side::Left),
            &cat.identity(a + b),
        );
        let r3 = cat.reverse(&cat.reverse(&rf));
        let lhs6 = cat.compose(
            &cat.compose(&cat.compose(&part1, &part2), &r3),
            &cat.projection(Split::new(a + b, a), Side::Right),
        );
        let rhs6 = cat.compose(
            &cat.product(&cat.identity(a), &cat.projection(bb, Side::Right)),
            &rf,
        );
        run.record("RD.6", trial, &format!("f = {f}"), &lhs6, &rhs6);

        // The derived second derivative is invariant under the exchange of
        // its two inner tangent slots.
        let dd = forward_from_reverse(cat, &forward_from_reverse(cat, &f));
        let ex = cat.exchange(a, a, a, a);
        run.record(
            "RD.7",
            trial,
            &format!("f = {f}"),
            &cat.compose(&ex, &dd),
            &dd,
        );
    }
    run.finish("rd", spec, start)
}

/// Which forward combinator a forward-axiom run exercises: the category's
/// own, or the one rebuilt from two reverse derivatives.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ForwardMode {
    Direct,
    Derived,
}

/// The axioms of the forward combinator, instantiated either with the
/// category's own forward derivative or with the derived one; in both
/// modes the two are also compared outright.
pub fn check_cdc<C>(cat: &C, spec: &CheckSpec, mode: ForwardMode) -> CheckReport
where
    C: ForwardDifferential + ReverseDifferential + GenerateMorphisms,
{
    let start = Instant::now();
    let mut run = Run::new(cat);
    let caps = &spec.caps;
    let fwd = |f: &C::Mor| match mode {
        ForwardMode::Direct => cat.forward(f),
        ForwardMode::Derived => forward_from_reverse(cat, f),
    };
    for trial in 0..spec.trials {
        let mut rng = trial_rng(spec, trial);
        let a = draw_arity(&mut rng, caps);
        let b = draw_arity(&mut rng, caps);
        let c = draw_arity(&mut rng, caps);
        let x = draw_arity(&mut rng, caps);
        let f = cat.random_morphism(&mut rng, a, b, caps);
        let f2 = cat.random_morphism(&mut rng, a, b, caps);
        let g = cat.random_morphism(&mut rng, b, c, caps);
        let df = fwd(&f);

        run.record(
            "CDC.1-add",
            trial,
            &format!("f = {f}; g = {f2}"),
            &fwd(&cat.add(&f, &f2)),
            &cat.add(&df, &fwd(&f2)),
        );
        run.record(
            "CDC.1-zero",
            trial,
            &format!("zero : {a}->{b}"),
            &fwd(&cat.zero(a, b)),
            &cat.zero(2 * a, b),
        );

        let p = cat.random_morphism(&mut rng, x, a, caps);
        let q1 = cat.random_morphism(&mut rng, x, a, caps);
        let q2 = cat.random_morphism(&mut rng, x, a, caps);
        let inputs = format!("f = {f}; p = {p}; q1 = {q1}; q2 = {q2}");
        run.record(
            "CDC.2-add",
            trial,
            &inputs,
            &cat.compose(&cat.pairing(&p, &cat.add(&q1, &q2)), &df),
            &cat.add(
                &cat.compose(&cat.pairing(&p, &q1), &df),
                &cat.compose(&cat.pairing(&p, &q2), &df),
            ),
        );
        run.record(
            "CDC.2-zero",
            trial,
            &format!("f = {f}; p = {p}"),
            &cat.compose(&cat.pairing(&p, &cat.zero(x, a)), &df),
            &cat.zero(x, b),
        );
        let p0 = cat.random_morphism(&mut rng, 0, a, caps);
        let q01 = cat.random_morphism(&mut rng, 0, a, caps);
        let q02 = cat.random_morphism(&mut rng, 0, a, caps);
        run.record(
            "CDC.2-add-const",
            trial,
            &format!("f = {f}; p = {p0}; q1 = {q01}; q2 = {q02}"),
            &cat.compose(&cat.pairing(&p0, &cat.add(&q01, &q02)), &df),
            &cat.add(
                &cat.compose(&cat.pairing(&p0, &q01), &df),
                &cat.compose(&cat.pairing(&p0, &q02), &df),
            ),
        );
        run.record(
            "CDC.2-zero-const",
            trial,
            &format!("f = {f}; p = {p0}"),
            &cat.compose(&cat.pairing(&p0, &cat.zero(0, a)), &df),
            &cat.zero(0, b),
        );

        run.record(
            "CDC.3-identity",
            trial,
            &format!("identity on {a}"),
            &fwd(&cat.identity(a)),
            &cat.projection(Split::new(a, a), Side::Right),
        );
        let ab = Split::new(a, b);
        run.record(
            "CDC.3-proj0",
            trial,
            &format!("pi0 : {a}x{b}->{a}"),
            &fwd(&cat.projection(ab, Side::Left)),
            &cat.compose(
                &cat.projection(Split::new(a + b, a + b), Side::Right),
                &cat.projection(ab, Side::Left),
            ),
        );
        run.record(
            "CDC.3-proj1",
            trial,
            &format!("pi1 : {a}x{b}->{b}"),
            &fwd(&cat.projection(ab, Side::Right)),
            &cat.compose(
                &cat.projection(Split::new(a + b, a + b), Side::Right),
                &cat.projection(ab, Side::Right),
            ),
        );

        let h = cat.random_morphism(&mut rng, a, c, caps);
        run.record(
            "CDC.4-pairing",
            trial,
            &format!("f = {f}; g = {h}"),
            &fwd(&cat.pairing(&f, &h)),
            &cat.pairing(&df, &fwd(&h)),
        );

        // D[f g] = <pi0 f, D[f]> D[g].
        let pi0 = cat.projection(Split::new(a, a), Side::Left);
        run.record(
            "CDC.5-compose",
            trial,
            &format!("f = {f}; g = {g}"),
            &fwd(&cat.compose(&f, &g)),
            &cat.compose(&cat.pairing(&cat.compose(&pi0, &f), &df), &fwd(&g)),
        );

        // <<p, q>, <0, r>> D^2[f] = <p, r> D[f].
        let ddf = fwd(&df);
        let q = cat.random_morphism(&mut rng, x, a, caps);
        let r = cat.random_morphism(&mut rng, x, a, caps);
        run.record(
            "CDC.6-point",
            trial,
            &format!("f = {f}; p = {p}; q = {q}; r = {r}"),
            &cat.compose(
                &cat.pairing(&cat.pairing(&p, &q), &cat.pairing(&cat.zero(x, a), &r)),
                &ddf,
            ),
            &cat.compose(&cat.pairing(&p, &r), &df),
        );
        // <1 x pi0, 0 x pi1> D^2[f] = (1 x pi1) D[f].
        let aa = Split::new(a, a);
        let part1 = cat.pairing(
            &cat.product(&cat.identity(a), &cat.projection(aa, Side::Left)),
            &cat.product(&cat.zero(a, a), &cat.projection(aa, Side::Right)),
        );
        run.record(
            "CDC.6-partial-form",
            trial,
            &format!("f = {f}"),
            &cat.compose(&part1, &ddf),
            &cat.compose(
                &cat.product(&cat.identity(a), &cat.projection(aa, Side::Right)),
                &df,
            ),
        );

        // <<p, q>, <r, s>> D^2[f] = <<p, r>, <q, s>> D^2[f].
        let s = cat.random_morphism(&mut rng, x, a, caps);
        run.record(
            "CDC.7-point",
            trial,
            &format!("f = {f}; p = {p}; q = {q}; r = {r}; s = {s}"),
            &cat.compose(
                &cat.pairing(&cat.pairing(&p, &q), &cat.pairing(&r, &s)),
                &ddf,
            ),
            &cat.compose(
                &cat.pairing(&cat.pairing(&p, &r), &cat.pairing(&q, &s)),
                &ddf,
            ),
        );
        run.record(
            "CDC.7-exchange-form",
            trial,
            &format!("f = {f}"),
            &cat.compose(&cat.exchange(a, a, a, a), &ddf),
            &ddf,
        );

        run.record(
            "derived-matches-direct",
            trial,
            &format!("f = {f}"),
            &forward_from_reverse(cat, &f),
            &cat.forward(&f),
        );
    }
    run.finish(
        match mode {
            ForwardMode::Direct => "cdc",
            ForwardMode::Derived => "cdc-derived",
        },
        spec,
        start,
    )
}

/// Closed forms for the reverse derivatives of structural composites, the
/// higher-order fixpoint and coherence laws, and the agreement of the
/// three characterizations of linearity.
pub fn check_lemmas<C>(cat: &C, spec: &CheckSpec) -> CheckReport
where
    C: ForwardDifferential + ReverseDifferential + GenerateMorphisms,
{
    let start = Instant::now();
    let mut run = Run::new(cat);
    let caps = &spec.caps;
    for trial in 0..spec.trials {
        let mut rng = trial_rng(spec, trial);
        let a = draw_arity(&mut rng, caps);
        let b = draw_arity(&mut rng, caps);
        let c = draw_arity(&mut rng, caps);
        let d = draw_arity(&mut rng, caps);
        let f = cat.random_morphism(&mut rng, a, b, caps);
        let g = cat.random_morphism(&mut rng, b, c, caps);

        // R[f g] expanded by the chain rule.
        let split_ac = Split::new(a, c);
        let pi0 = cat.projection(split_ac, Side::Left);
        let pi1 = cat.projection(split_ac, Side::Right);
        let shuffled = cat.pairing(&pi0, &cat.pairing(&cat.compose(&pi0, &f), &pi1));
        run.record(
            "compose-expanded",
            trial,
            &format!("f = {f}; g = {g}"),
            &cat.reverse(&cat.compose(&f, &g)),
            &cat.compose(
                &cat.compose(&shuffled, &cat.product(&cat.identity(a), &cat.reverse(&g))),
                &cat.reverse(&f),
            ),
        );

        // R[iota0] = pi1 pi0, R[iota1] = pi1 pi1.
        let ab = Split::new(a, b);
        run.record(
            "reverse-inj0",
            trial,
            &format!("iota0 : {a}->{a}x{b}"),
            &cat.reverse(&cat.injection(ab, Side::Left)),
            &cat.compose(
                &cat.projection(Split::new(a, a + b), Side::Right),
                &cat.projection(ab, Side::Left),
            ),
        );
        run.record(
            "reverse-inj1",
            trial,
            &format!("iota1 : {b}->{a}x{b}"),
            &cat.reverse(&cat.injection(ab, Side::Right)),
            &cat.compose(
                &cat.projection(Split::new(b, a + b), Side::Right),
                &cat.projection(ab, Side::Right),
            ),
        );

        // R[pi0 f] = <pi0 pi0, pi1> R[f] iota0 (and the mirrored form).
        let fa_c = cat.random_morphism(&mut rng, a, c, caps);
        let fb_c = cat.random_morphism(&mut rng, b, c, caps);
        let outer0 = Split::new(a + b, c);
        run.record(
            "proj-then-map-0",
            trial,
            &format!("f = {fa_c}"),
            &cat.reverse(&cat.compose(&cat.projection(ab, Side::Left), &fa_c)),
            &cat.compose(
                &cat.compose(
                    &cat.pairing(
                        &cat.compose(
                            &cat.projection(outer0, Side::Left),
                            &cat.projection(ab, Side::Left),
                        ),
                        &cat.projection(outer0, Side::Right),
                    ),
                    &cat.reverse(&fa_c),
                ),
                &cat.injection(ab, Side::Left),
            ),
        );
        run.record(
            "proj-then-map-1",
            trial,
            &format!("f = {fb_c}"),
            &cat.reverse(&cat.compose(&cat.projection(ab, Side::Right), &fb_c)),
            &cat.compose(
                &cat.compose(
                    &cat.pairing(
                        &cat.compose(
                            &cat.projection(outer0, Side::Left),
                            &cat.projection(ab, Side::Right),
                        ),
                        &cat.projection(outer0, Side::Right),
                    ),
                    &cat.reverse(&fb_c),
                ),
                &cat.injection(ab, Side::Right),
            ),
        );

        // R[f pi0] = (1 x iota0) R[f] (and the mirrored form).
        let fa_bc = cat.random_morphism(&mut rng, a, b + c, caps);
        let bc = Split::new(b, c);
        run.record(
            "map-then-proj-0",
            trial,
            &format!("f = {fa_bc}"),
            &cat.reverse(&cat.compose(&fa_bc, &cat.projection(bc, Side::Left))),
            &cat.compose(
                &cat.product(&cat.identity(a), &cat.injection(bc, Side::Left)),
                &cat.reverse(&fa_bc),
            ),
        );
        run.record(
            "map-then-proj-1",
            trial,
            &format!("f = {fa_bc}"),
            &cat.reverse(&cat.compose(&fa_bc, &cat.projection(bc, Side::Right))),
            &cat.compose(
                &cat.product(&cat.identity(a), &cat.injection(bc, Side::Right)),
                &cat.reverse(&fa_bc),
            ),
        );

        // R[iota0 f] = <pi0 iota0, pi1> R[f] pi0 (and the mirrored form).
        let fab_c = cat.random_morphism(&mut rng, a + b, c, caps);
        let ac = Split::new(a, c);
        run.record(
            "inj-then-map-0",
            trial,
            &format!("f = {fab_c}"),
            &cat.reverse(&cat.compose(&cat.injection(ab, Side::Left), &fab_c)),
            &cat.compose(
                &cat.compose(
                    &cat.pairing(
                        &cat.compose(
                            &cat.projection(ac, Side::Left),
                            &cat.injection(ab, Side::Left),
                        ),
                        &cat.projection(ac, Side::Right),
                    ),
                    &cat.reverse(&fab_c),
                ),
                &cat.projection(ab, Side::Left),
            ),
        );
        let bcs = Split::new(b, c);
        run.record(
            "inj-then-map-1",
            trial,
            &format!("f = {fab_c}"),
            &cat.reverse(&cat.compose(&cat.injection(ab, Side::Right), &fab_c)),
            &cat.compose(
                &cat.compose(
                    &cat.pairing(
                        &cat.compose(
                            &cat.projection(bcs, Side::Left),
                            &cat.injection(ab, Side::Right),
                        ),
                        &cat.projection(bcs, Side::Right),
                    ),
                    &cat.reverse(&fab_c),
                ),
                &cat.projection(ab, Side::Right),
            ),
        );

        // R[f iota0] = (1 x pi0) R[f] (and the mirrored form).
        run.record(
            "map-then-inj-0",
            trial,
            &format!("f = {f}"),
            &cat.reverse(&cat.compose(&f, &cat.injection(bc, Side::Left))),
            &cat.compose(
                &cat.product(&cat.identity(a), &cat.projection(bc, Side::Left)),
                &cat.reverse(&f),
            ),
        );
        let cb = Split::new(c, b);
        run.record(
            "map-then-inj-1",
            trial,
            &format!("f = {f}"),
            &cat.reverse(&cat.compose(&f, &cat.injection(cb, Side::Right))),
            &cat.compose(
                &cat.product(&cat.identity(a), &cat.projection(cb, Side::Right)),
                &cat.reverse(&f),
            ),
        );

        // R[f x g] = ex (R[f] x R[g]), and the same for the oplus form.
        let g_cd = cat.random_morphism(&mut rng, c, d, caps);
        run.record(
            "product-rule",
            trial,
            &format!("f = {f}; g = {g_cd}"),
            &cat.reverse(&cat.product(&f, &g_cd)),
            &cat.compose(
                &cat.exchange(a, c, b, d),
                &cat.product(&cat.reverse(&f), &cat.reverse(&g_cd)),
            ),
        );
        run.record(
            "oplus-rule",
            trial,
            &format!("f = {f}; g = {g_cd}"),
            &cat.reverse(&cat.oplus(&f, &g_cd)),
            &cat.compose(
                &cat.exchange(a, c, b, d),
                &cat.product(&cat.reverse(&f), &cat.reverse(&g_cd)),
            ),
        );

        // R[<f | g>] = <(pi0 x 1) R[f], (pi1 x 1) R[g]> for a common
        // codomain; every occurrence of the copairing is differentiated.
        let k = cat.random_morphism(&mut rng, b, c, caps);
        let j = cat.random_morphism(&mut rng, a, c, caps);
        run.record(
            "copair-rule",
            trial,
            &format!("f = {j}; g = {k}"),
            &cat.reverse(&cat.copair(&j, &k)),
            &cat.pairing(
                &cat.compose(
                    &cat.product(&cat.projection(ab, Side::Left), &cat.identity(c)),
                    &cat.reverse(&j),
                ),
                &cat.compose(
                    &cat.product(&cat.projection(ab, Side::Right), &cat.identity(c)),
                    &cat.reverse(&k),
                ),
            ),
        );

        // R[f] is linear in its cotangent argument.
        run.record_bool(
            "reverse-linear-in-second",
            trial,
            &format!("f = {f}"),
            is_linear_in_second(cat, &cat.reverse(&f), a),
            "R[f] failed the linear-in-second test",
        );

        // (<iota0, 0> x iota1) R^3[f] pi1 = R[f].
        let r3 = cat.reverse(&cat.reverse(&cat.reverse(&f)));
        let left_leg = cat.pairing(&cat.injection(ab, Side::Left), &cat.zero(a, a));
        let pre = cat.product(&left_leg, &cat.injection(ab, Side::Right));
        run.record(
            "triple-reverse-fixpoint",
            trial,
            &format!("f = {f}"),
            &cat.compose(
                &cat.compose(&pre, &r3),
                &cat.projection(Split::new(a + b, a), Side::Right),
            ),
            &cat.reverse(&f),
        );

        // Rebuilding the forward derivative from the contextual dagger of
        // the derived forward derivative lands back on it:
        // (iota0 x 1) [D[D[f]^dag]]^dag pi1 = D[f], with D the derived
        // forward combinator.
        let df = forward_from_reverse(cat, &f);
        let gmap = contextual_dagger(cat, &df, a);
        let dg = forward_from_reverse(cat, &gmap);
        let dgd = contextual_dagger(cat, &dg, a + b);
        let pre2 = cat.product(&cat.injection(ab, Side::Left), &cat.identity(a));
        run.record(
            "dagger-coherence",
            trial,
            &format!("f = {f}"),
            &cat.compose(&cat.compose(&pre2, &dgd), &cat.projection(ab, Side::Right)),
            &df,
        );

        // Three characterizations of linearity: the derivative forgets the
        // base point, the second tangent injection recovers the map, and
        // the dagger is involutive. All hold on linear maps and agree on
        // arbitrary ones.
        let lin = cat.random_linear(&mut rng, a, b);
        let canon = |m: &C::Mor| {
            let n = cat.dom(m);
            let p1 = cat.injection(Split::new(n, n), Side::Right);
            cat.equal(&cat.compose(&p1, &cat.forward(m)), m)
        };
        let trio = |m: &C::Mor| {
            let d = is_linear(cat, m);
            let i = canon(m);
            let v = cat.equal(&dagger(cat, &dagger(cat, m)), m);
            (d, i, v)
        };
        let (d1, i1, v1) = trio(&lin);
        run.record_bool(
            "linear-equiv-on-linear",
            trial,
            &format!("f = {lin}"),
            d1 && i1 && v1,
            &format!("derivative-form {d1}, injection-form {i1}, involution-form {v1}"),
        );
        let (d2, i2, v2) = trio(&f);
        run.record_bool(
            "linear-equiv-agree",
            trial,
            &format!("f = {f}"),
            d2 == i2 && i2 == v2,
            &format!("derivative-form {d2}, injection-form {i2}, involution-form {v2}"),
        );

        // The same for linearity in the second factor over a context:
        // the frozen partial derivative, the double contextual dagger, and
        // the padded-exchange derivative form.
        let ctx_lin = cat.random_linear_in_second(&mut rng, c, a, b, caps);
        let ctx_trio = |m: &C::Mor| {
            let split = Split::new(c, a);
            let p1 = is_linear_in_second(cat, m, c);
            let p2 = cat.equal(&contextual_dagger(cat, &contextual_dagger(cat, m, c), c), m);
            let outer = Split::new(c, 2 * a);
            let tangent = cat.compose(
                &cat.projection(outer, Side::Right),
                &cat.projection(Split::new(a, a), Side::Right),
            );
            let freeze = cat.pairing(&cat.projection(outer, Side::Left), &tangent);
            let p3 = cat.equal(&partial_derivative(cat, m, split), &cat.compose(&freeze, m));
            (p1, p2, p3)
        };
        let (c1, c2, c3) = ctx_trio(&ctx_lin);
        run.record_bool(
            "ctx-linear-equiv-on-linear",
            trial,
            &format!("f = {ctx_lin}"),
            c1 && c2 && c3,
            &format!("derivative-form {c1}, dagger-form {c2}, partial-form {c3}"),
        );
        let generic = cat.random_morphism(&mut rng, c + a, b, caps);
        let (e1, e2, e3) = ctx_trio(&generic);
        run.record_bool(
            "ctx-linear-equiv-agree",
            trial,
            &format!("f = {generic}"),
            e1 == e2 && e2 == e3,
            &format!("derivative-form {e1}, dagger-form {e2}, partial-form {e3}"),
        );
    }
    run.finish("lemmas", spec, start)
}

/// Laws of the dagger on linear maps: involution, contravariance,
/// structure preservation, and the failure of involution off the linear
/// fragment.
pub fn check_dagger<C>(cat: &C, spec: &CheckSpec) -> CheckReport
where
    C: ReverseDifferential + GenerateMorphisms,
{
    let start = Instant::now();
    let mut run = Run::new(cat);
    let caps = &spec.caps;
    for trial in 0..spec.trials {
        let mut rng = trial_rng(spec, trial);
        let a = draw_arity(&mut rng, caps);
        let b = draw_arity(&mut rng, caps);
        let c = draw_arity(&mut rng, caps);
        let lin1 = cat.random_linear(&mut rng, a, b);
        let lin1b = cat.random_linear(&mut rng, a, b);
        let lin2 = cat.random_linear(&mut rng, b, c);

        run.record(
            "involution-linear",
            trial,
            &format!("f = {lin1}"),
            &dagger(cat, &dagger(cat, &lin1)),
            &lin1,
        );
        run.record(
            "contravariant-compose",
            trial,
            &format!("f = {lin1}; g = {lin2}"),
            &dagger(cat, &cat.compose(&lin1, &lin2)),
            &cat.compose(&dagger(cat, &lin2), &dagger(cat, &lin1)),
        );
        run.record(
            "identity-fixed",
            trial,
            &format!("identity on {a}"),
            &dagger(cat, &cat.identity(a)),
            &cat.identity(a),
        );
        let ab = Split::new(a, b);
        run.record(
            "proj-dagger-inj",
            trial,
            &format!("pi0 : {a}x{b}->{a}"),
            &dagger(cat, &cat.projection(ab, Side::Left)),
            &cat.injection(ab, Side::Left),
        );
        run.record(
            "proj-dagger-inj",
            trial,
            &format!("pi1 : {a}x{b}->{b}"),
            &dagger(cat, &cat.projection(ab, Side::Right)),
            &cat.injection(ab, Side::Right),
        );
        run.record(
            "inj-dagger-proj",
            trial,
            &format!("iota0 : {a}->{a}x{b}"),
            &dagger(cat, &cat.injection(ab, Side::Left)),
            &cat.projection(ab, Side::Left),
        );
        run.record(
            "inj-dagger-proj",
            trial,
            &format!("iota1 : {b}->{a}x{b}"),
            &dagger(cat, &cat.injection(ab, Side::Right)),
            &cat.projection(ab, Side::Right),
        );
        run.record(
            "additive",
            trial,
            &format!("f = {lin1}; g = {lin1b}"),
            &dagger(cat, &cat.add(&lin1, &lin1b)),
            &cat.add(&dagger(cat, &lin1), &dagger(cat, &lin1b)),
        );
        run.record(
            "zero-fixed",
            trial,
            &format!("zero : {a}->{b}"),
            &dagger(cat, &cat.zero(a, b)),
            &cat.zero(b, a),
        );
        if let Some(nl) = cat.random_nonlinear(&mut rng, a, b, caps) {
            run.record_expected_distinct(
                "nonlinear-distinct",
                trial,
                &format!("f = {nl}"),
                &dagger(cat, &dagger(cat, &nl)),
                &nl,
            );
        }
    }
    run.finish("dagger", spec, start)
}

/// Mutual reconstruction of the two combinators: the forward derivative
/// rebuilt from two reverse ones, and the reverse derivative rebuilt as
/// the contextual dagger of a forward derivative (derived and direct).
pub fn check_roundtrip<C>(cat: &C, spec: &CheckSpec) -> CheckReport
where
    C: ForwardDifferential + ReverseDifferential + GenerateMorphisms,
{
    let start = Instant::now();
    let mut run = Run::new(cat);
    let caps = &spec.caps;
    for trial in 0..spec.trials {
        let mut rng = trial_rng(spec, trial);
        let a = draw_arity(&mut rng, caps);
        let b = draw_arity(&mut rng, caps);
        let f = cat.random_morphism(&mut rng, a, b, caps);
        let inputs = format!("f = {f}");
        run.record(
            "forward-rebuilt",
            trial,
            &inputs,
            &forward_from_reverse(cat, &f),
            &cat.forward(&f),
        );
        run.record(
            "reverse-rebuilt",
            trial,
            &inputs,
            &contextual_dagger(cat, &forward_from_reverse(cat, &f), a),
            &cat.reverse(&f),
        );
        run.record(
            "reverse-from-direct-forward",
            trial,
            &inputs,
            &reverse_from_forward_dagger(cat, &f),
            &cat.reverse(&f),
        );
    }
    run.finish("roundtrip", spec, start)
}

/// The fibration of linear maps: identities and units, functoriality of
/// the reverse-derivative functor, fiberwise linearity, and the
/// reindexing composite along a base map.
pub fn check_fibration<C>(cat: &C, spec: &CheckSpec) -> CheckReport
where
    C: ForwardDifferential + ReverseDifferential + GenerateMorphisms,
{
    let start = Instant::now();
    let mut run = Run::new(cat);
    let caps = &spec.caps;
    for trial in 0..spec.trials {
        let mut rng = trial_rng(spec, trial);
        let a = draw_arity(&mut rng, caps);
        let b = draw_arity(&mut rng, caps);
        let c = draw_arity(&mut rng, caps);
        let f = cat.random_morphism(&mut rng, a, b, caps);
        let g = cat.random_morphism(&mut rng, b, c, caps);

        let composed = reverse_functor(cat, &cat.compose(&f, &g));
        let pieced = linfib_compose(cat, &reverse_functor(cat, &f), &reverse_functor(cat, &g));
        run.record_bool(
            "functor-preserves-compose",
            trial,
            &format!("f = {f}; g = {g}"),
            linfib_equal(cat, &composed, &pieced),
            &format!(
                "whole fiber = {}; pieced fiber = {}",
                composed.fiber, pieced.fiber
            ),
        );
        run.record_bool(
            "functor-identity",
            trial,
            &format!("identity on {a}"),
            linfib_equal(
                cat,
                &reverse_functor(cat, &cat.identity(a)),
                &linfib_identity(cat, LinFibObj::new(a, a)),
            ),
            "reverse of the identity is not the fibration identity",
        );
        run.record_bool(
            "fiber-linearity",
            trial,
            &format!("f = {f}"),
            is_linear_in_second(cat, &cat.reverse(&f), a),
            "R[f] failed the linear-in-second test",
        );

        // A general fibration morphism (a, x) -> (b, y).
        let x = draw_arity(&mut rng, caps);
        let y = draw_arity(&mut rng, caps);
        let fiber = cat.random_linear_in_second(&mut rng, a, y, x, caps);
        let m = LinFibMorphism::new(
            cat,
            LinFibObj::new(a, x),
            LinFibObj::new(b, y),
            f.clone(),
            fiber,
        );
        let left = linfib_compose(cat, &linfib_identity(cat, m.dom), &m);
        let right = linfib_compose(cat, &m, &linfib_identity(cat, m.cod));
        run.record_bool(
            "unit-left",
            trial,
            &format!("base = {f}; fiber = {}", m.fiber),
            linfib_equal(cat, &left, &m),
            &format!("composite fiber = {}", left.fiber),
        );
        run.record_bool(
            "unit-right",
            trial,
            &format!("base = {f}; fiber = {}", m.fiber),
            linfib_equal(cat, &right, &m),
            &format!("composite fiber = {}", right.fiber),
        );

        // Composing the reindexing morphism (f, pi1) : (a, y) -> (b, y)
        // with a vertical morphism (1, h) : (b, y) -> (b, z) pulls the
        // fiber map back along f: the composite fiber is <pi0 f, pi1> h.
        let z = draw_arity(&mut rng, caps);
        let lift = LinFibMorphism::new(
            cat,
            LinFibObj::new(a, y),
            LinFibObj::new(b, y),
            f.clone(),
            cat.projection(Split::new(a, y), Side::Right),
        );
        let h = cat.random_linear_in_second(&mut rng, b, z, y, caps);
        let vert = LinFibMorphism::new(
            cat,
            LinFibObj::new(b, y),
            LinFibObj::new(b, z),
            cat.identity(b),
            h.clone(),
        );
        let composite = linfib_compose(cat, &lift, &vert);
        let az = Split::new(a, z);
        let expected = cat.compose(
            &cat.pairing(
                &cat.compose(&cat.projection(az, Side::Left), &f),
                &cat.projection(az, Side::Right),
            ),
            &h,
        );
        run.record(
            "cartesian-reindex",
            trial,
            &format!("f = {f}; h = {h}"),
            &composite.fiber,
            &expected,
        );
    }
    run.finish("fibration", spec, start)
}

/// Deliberately broken combinators and law instances. Each function here
/// must report at least one failure when run against a correct category;
/// the acceptance tests pin that down.
pub mod mutations {
    use super::*;
    use crate::category::{Arity, EqOutcome};
    use crate::mat::{MatCat, MatMorphism};
    use crate::poly::{Monomial, Polynomial};
    use crate::poly_cat::{PolyCat, PolyMorphism};
    use crate::rig::Rig;

    /// Chain rule with the primal re-evaluation zeroed out: compares
    /// R[f g] against `<pi0, <0, pi1>> (1 x R[g]) R[f]`.
    pub fn zeroed_primal_chain_rule<C>(cat: &C, spec: &CheckSpec) -> CheckReport
    where
        C: ReverseDifferential + GenerateMorphisms,
    {
        let start = Instant::now();
        let mut run = Run::new(cat);
        let caps = &spec.caps;
        for trial in 0..spec.trials {
            let mut rng = trial_rng(spec, trial);
            let a = draw_arity(&mut rng, caps);
            let b = draw_arity(&mut rng, caps);
            let c = draw_arity(&mut rng, caps);
            let f = cat.random_morphism(&mut rng, a, b, caps);
            let g = cat.random_morphism(&mut rng, b, c, caps);
            let split_ac = Split::new(a, c);
            let pi0 = cat.projection(split_ac, Side::Left);
            let pi1 = cat.projection(split_ac, Side::Right);
            // The mutation: the inner pairing forgets f's output.
            let shuffled = cat.pairing(&pi0, &cat.pairing(&cat.zero(a + c, b), &pi1));
            run.record(
                "RD.5-compose",
                trial,
                &format!("f = {f}; g = {g}"),
                &cat.reverse(&cat.compose(&f, &g)),
                &cat.compose(
                    &cat.compose(&shuffled, &cat.product(&cat.identity(a), &cat.reverse(&g))),
                    &cat.reverse(&f),
                ),
            );
        }
        run.finish("mutation-zeroed-primal-chain-rule", spec, start)
    }

    /// Exchange replaced by a block swap that crosses point and tangent
    /// slots, checked in the second-derivative symmetry law.
    pub fn crossed_exchange<C>(cat: &C, spec: &CheckSpec) -> CheckReport
    where
        C: ReverseDifferential + GenerateMorphisms,
    {
        let start = Instant::now();
        let mut run = Run::new(cat);
        let caps = &spec.caps;
        for trial in 0..spec.trials {
            let mut rng = trial_rng(spec, trial);
            let a = draw_arity(&mut rng, caps);
            let b = draw_arity(&mut rng, caps);
            let f = cat.random_morphism(&mut rng, a, b, caps);
            let dd = forward_from_reverse(cat, &forward_from_reverse(cat, &f));
            let inner = Split::new(a, a);
            // The mutation: <pi0 x pi1, pi1 x pi0> instead of the exchange.
            let crossed = cat.pairing(
                &cat.product(
                    &cat.projection(inner, Side::Left),
                    &cat.projection(inner, Side::Right),
                ),
                &cat.product(
                    &cat.projection(inner, Side::Right),
                    &cat.projection(inner, Side::Left),
                ),
            );
            run.record(
                "RD.7",
                trial,
                &format!("f = {f}"),
                &cat.compose(&crossed, &dd),
                &dd,
            );
        }
        run.finish("mutation-crossed-exchange", spec, start)
    }

    /// Contextual dagger whose padding injection is replaced by the zero
    /// map, so the reverse derivative is rebuilt at the wrong base point;
    /// checked through the forward-then-dagger roundtrip.
    pub fn zero_padded_dagger<C>(cat: &C, spec: &CheckSpec) -> CheckReport
    where
        C: ForwardDifferential + ReverseDifferential + GenerateMorphisms,
    {
        let start = Instant::now();
        let mut run = Run::new(cat);
        let caps = &spec.caps;
        for trial in 0..spec.trials {
            let mut rng = trial_rng(spec, trial);
            let a = draw_arity(&mut rng, caps);
            let b = draw_arity(&mut rng, caps);
            let f = cat.random_morphism(&mut rng, a, b, caps);
            let df = cat.forward(&f);
            // The mutation: pad with zero instead of the left injection.
            let pad = cat.product(&cat.zero(a, 2 * a), &cat.identity(b));
            let keep = cat.projection(Split::new(a, a), Side::Right);
            let mutated = cat.compose(&cat.compose(&pad, &cat.reverse(&df)), &keep);
            run.record(
                "reverse-from-direct-forward",
                trial,
                &format!("f = {f}"),
                &mutated,
                &cat.reverse(&f),
            );
        }
        run.finish("mutation-zero-padded-dagger", spec, start)
    }

    /// A matrix category whose reverse combinator stacks the transpose
    /// above the zero block instead of below it.
    #[derive(Clone, Debug)]
    pub struct SwappedMatReverse<R: Rig>(pub MatCat<R>);

    impl<R: Rig> Category for SwappedMatReverse<R> {
        type Mor = MatMorphism<R>;

        fn category_name(&self) -> &'static str {
            "mat-swapped-reverse"
        }

        fn scalar_name(&self) -> String {
            self.0.scalar_name()
        }

        fn dom(&self, f: &Self::Mor) -> Arity {
            self.0.dom(f)
        }

        fn cod(&self, f: &Self::Mor) -> Arity {
            self.0.cod(f)
        }

        fn identity(&self, a: Arity) -> Self::Mor {
            self.0.identity(a)
        }

        fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
            self.0.compose(f, g)
        }

        fn pairing(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
            self.0.pairing(f, g)
        }

        fn projection(&self, split: Split, side: Side) -> Self::Mor {
            self.0.projection(split, side)
        }

        fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
            self.0.add(f, g)
        }

        fn zero(&self, dom: Arity, cod: Arity) -> Self::Mor {
            self.0.zero(dom, cod)
        }

        fn equal_detailed(&self, f: &Self::Mor, g: &Self::Mor) -> EqOutcome {
            self.0.equal_detailed(f, g)
        }
    }

    impl<R: Rig> ReverseDifferential for SwappedMatReverse<R> {
        fn reverse(&self, f: &Self::Mor) -> Self::Mor {
            let n = self.0.dom(f);
            let m = self.0.cod(f);
            // The mutation: [A^T; 0] instead of [0; A^T].
            let mut entries = Vec::with_capacity((n + m) * n);
            for i in 0..n + m {
                for j in 0..n {
                    if i < m {
                        entries.push(f.entry(j, i).clone());
                    } else {
                        entries.push(self.0.rig().zero());
                    }
                }
            }
            self.0.morphism(n + m, n, entries)
        }
    }

    impl<R: Rig> GenerateMorphisms for SwappedMatReverse<R> {
        fn random_morphism(
            &self,
            rng: &mut ChaCha8Rng,
            dom: Arity,
            cod: Arity,
            caps: &GenCaps,
        ) -> Self::Mor {
            self.0.random_morphism(rng, dom, cod, caps)
        }

        fn random_linear(&self, rng: &mut ChaCha8Rng, dom: Arity, cod: Arity) -> Self::Mor {
            self.0.random_linear(rng, dom, cod)
        }

        fn random_nonlinear(
            &self,
            rng: &mut ChaCha8Rng,
            dom: Arity,
            cod: Arity,
            caps: &GenCaps,
        ) -> Option<Self::Mor> {
            self.0.random_nonlinear(rng, dom, cod, caps)
        }

        fn random_linear_in_second(
            &self,
            rng: &mut ChaCha8Rng,
            ctx: Arity,
            arg: Arity,
            cod: Arity,
            caps: &GenCaps,
        ) -> Self::Mor {
            self.0.random_linear_in_second(rng, ctx, arg, cod, caps)
        }
    }

    /// A polynomial category whose reverse combinator drops the exponent
    /// factor from every partial derivative.
    #[derive(Clone, Debug)]
    pub struct UnscaledPolyReverse<R: Rig>(pub PolyCat<R>);

    fn unscaled_partial<R: Rig>(p: &Polynomial<R>, var: usize) -> Polynomial<R> {
        let rig = p.rig().clone();
        let nvars = p.nvars();
        let mut terms = Vec::new();
        for (mono, coeff) in p.terms() {
            let e = mono.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps: Vec<u32> = (0..nvars).map(|i| mono.exponent(i)).collect();
            exps[var] = e - 1;
            terms.push((Monomial::from_exponents(exps), coeff.clone()));
        }
        Polynomial::from_terms(rig, nvars, terms)
    }

    impl<R: Rig> Category for UnscaledPolyReverse<R> {
        type Mor = PolyMorphism<R>;

        fn category_name(&self) -> &'static str {
            "poly-unscaled-reverse"
        }

        fn scalar_name(&self) -> String {
            self.0.scalar_name()
        }

        fn dom(&self, f: &Self::Mor) -> Arity {
            self.0.dom(f)
        }

        fn cod(&self, f: &Self::Mor) -> Arity {
            self.0.cod(f)
        }

        fn identity(&self, a: Arity) -> Self::Mor {
            self.0.identity(a)
        }

        fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
            self.0.compose(f, g)
        }

        fn pairing(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
            self.0.pairing(f, g)
        }

        fn projection(&self, split: Split, side: Side) -> Self::Mor {
            self.0.projection(split, side)
        }

        fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
            self.0.add(f, g)
        }

        fn zero(&self, dom: Arity, cod: Arity) -> Self::Mor {
            self.0.zero(dom, cod)
        }

        fn equal_detailed(&self, f: &Self::Mor, g: &Self::Mor) -> EqOutcome {
            self.0.equal_detailed(f, g)
        }
    }

    impl<R: Rig> ReverseDifferential for UnscaledPolyReverse<R> {
        fn reverse(&self, f: &Self::Mor) -> Self::Mor {
            let n = self.0.dom(f);
            let m = self.0.cod(f);
            let rig = self.0.rig().clone();
            let comps = (0..n)
                .map(|i| {
                    let mut acc = Polynomial::zero(rig.clone(), n + m);
                    for (j, p) in f.components().iter().enumerate() {
                        let d = unscaled_partial(p, i).with_ambient(n + m);
                        let cotangent = Polynomial::variable(rig.clone(), n + j, n + m);
                        acc = acc.add(&d.mul(&cotangent));
                    }
                    acc
                })
                .collect();
            PolyMorphism::new(n + m, n, comps)
        }
    }

    impl<R: Rig> GenerateMorphisms for UnscaledPolyReverse<R> {
        fn random_morphism(
            &self,
            rng: &mut ChaCha8Rng,
            dom: Arity,
            cod: Arity,
            caps: &GenCaps,
        ) -> Self::Mor {
            self.0.random_morphism(rng, dom, cod, caps)
        }

        fn random_linear(&self, rng: &mut ChaCha8Rng, dom: Arity, cod: Arity) -> Self::Mor {
            self.0.random_linear(rng, dom, cod)
        }

        fn random_nonlinear(
            &self,
            rng: &mut ChaCha8Rng,
            dom: Arity,
            cod: Arity,
            caps: &GenCaps,
        ) -> Option<Self::Mor> {
            self.0.random_nonlinear(rng, dom, cod, caps)
        }

        fn random_linear_in_second(
            &self,
            rng: &mut ChaCha8Rng,
            ctx: Arity,
            arg: Arity,
            cod: Arity,
            caps: &GenCaps,
        ) -> Self::Mor {
            self.0.random_linear_in_second(rng, ctx, arg, cod, caps)
        }
    }

    /// Runs all five mutations over the integer instances and returns the
    /// named reports; every report must contain failures.
    pub fn all_mutation_reports(spec: &CheckSpec) -> Vec<CheckReport> {
        use crate::rig::IntRig;
        let poly = PolyCat::new(IntRig::default());
        let mat = MatCat::new(IntRig::default());
        vec![
            zeroed_primal_chain_rule(&poly, spec),
            crossed_exchange(&poly, spec),
            zero_padded_dagger(&poly, spec),
            check_rd(&SwappedMatReverse(mat), spec),
            check_rd(&UnscaledPolyReverse(poly), spec),
        ]
    }
}
