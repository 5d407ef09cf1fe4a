//! `rdcat` — forward and reverse derivatives of concrete morphisms.
//!
//! A morphism is given as a literal like `poly(2->1){ x1^2 + 3*x1*x2 }`,
//! `mat(2->2){ 1 2 ; 3 4 }`, or `smooth(1->1){ sin(x1) }`, or as `-` to
//! read the literal from stdin. Subcommands apply the differential
//! combinators (`derive`, `dagger`, `ctx-dagger`), query linearity,
//! compose morphisms in diagram order, cross-check the derived against
//! the direct combinators (`roundtrip`), and run the randomized law
//! suites (`check`).
//!
//! Exit codes: 0 on success (and when every checked law holds), 1 when a
//! law suite reports a failure or a roundtrip disagrees, 2 on parse or
//! usage errors.

use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rdcat_core::checker::{
    check_cdc, check_dagger, check_fibration, check_lemmas, check_rd, check_roundtrip, mutations,
    CheckReport, CheckSpec, ForwardMode,
};
use rdcat_core::{
    contextual_dagger, dagger, forward_from_reverse, is_linear, is_linear_in_second,
    reverse_from_forward_dagger, BoolRig, Category, ForwardDifferential, IntRig, MatCat, ModRig,
    NatRig, ParseError, ParseMorphism, PolyCat, RatRig, ReverseDifferential, RigName, SmoothCat,
    TropicalRig,
};

#[derive(Parser)]
#[command(
    name = "rdcat",
    version,
    about = "Forward and reverse derivatives of polynomial, matrix, and smooth morphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the forward (D) or reverse (R) differential combinator.
    Derive {
        /// Which combinator: D[f] : A x A -> B or R[f] : A x B -> A.
        #[arg(value_enum)]
        mode: Mode,
        #[command(flatten)]
        target: Target,
    },
    /// Transpose a map via the dagger, f† = ι₁ ; R[f].
    Dagger {
        #[command(flatten)]
        target: Target,
    },
    /// Dagger of the argument block of f : C x A -> B, with the context
    /// C carried along: f†[C] : C x B -> A.
    CtxDagger {
        /// Arity of the leading context block.
        #[arg(long)]
        context: usize,
        #[command(flatten)]
        target: Target,
    },
    /// Decide whether a morphism is linear (or, with --context N, linear
    /// in the block after the first N coordinates).
    Linear {
        /// Arity of the leading context block to hold fixed.
        #[arg(long)]
        context: Option<usize>,
        #[command(flatten)]
        target: Target,
    },
    /// Compose two morphisms in diagram order: first F, then G.
    Compose {
        #[command(flatten)]
        opts: CommonOpts,
        /// First morphism (or `-` for stdin).
        f: String,
        /// Second morphism.
        g: String,
    },
    /// Rebuild D from R and R from D, and compare with the direct
    /// combinators.
    Roundtrip {
        #[command(flatten)]
        target: Target,
    },
    /// Run a randomized law suite over the selected category.
    Check(CheckArgs),
}

/// A morphism argument together with the options every subcommand shares.
#[derive(Args)]
struct Target {
    #[command(flatten)]
    opts: CommonOpts,
    /// Morphism literal (or `-` for stdin).
    morphism: String,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Category to work in.
    #[arg(long, value_enum, default_value_t = CatKind::Poly)]
    cat: CatKind,
    /// Coefficient rig for poly/mat: int, nat, rat, bool, mod:M, tropical.
    /// Ignored for smooth.
    #[arg(long, value_parser = RigName::from_str, default_value = "int")]
    rig: RigName,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Points drawn by the smooth equality oracle.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Relative tolerance of the smooth equality oracle.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Seed for sampling points and randomized suites.
    #[arg(long, env = "RDCAT_SEED", default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct CheckArgs {
    /// Law suite to run. `mutations` runs deliberately broken combinators
    /// across a fixed demo set and passes when every one is caught.
    #[arg(long, value_enum)]
    suite: SuiteKind,
    /// Forward combinator checked by the cdc suite: the direct D, or the
    /// one derived from R.
    #[arg(long, value_enum, default_value_t = Combinator::Direct)]
    combinator: Combinator,
    /// Random trials per identity.
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[command(flatten)]
    opts: CommonOpts,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CatKind {
    Poly,
    Smooth,
    Mat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Forward,
    Reverse,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteKind {
    Rd,
    Cdc,
    Lemmas,
    Dagger,
    Roundtrip,
    Fibration,
    Mutations,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Combinator {
    Direct,
    Derived,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
}

/// Writes one line to stdout, exiting quietly when the reader has closed
/// the pipe (e.g. `rdcat check ... | head`).
fn out_line(args: std::fmt::Arguments) {
    use std::io::Write;
    if writeln!(std::io::stdout(), "{args}").is_err() {
        std::process::exit(0);
    }
}

macro_rules! out {
    ($($t:tt)*) => { out_line(format_args!($($t)*)) };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// Builds the selected category and monomorphizes `$body` against it.
macro_rules! dispatch {
    ($opts:expr, |$cat:ident| $body:expr) => {{
        let opts = &$opts;
        match opts.cat {
            CatKind::Smooth => {
                let $cat = SmoothCat::new(opts.samples, opts.tol, opts.seed);
                $body
            }
            CatKind::Poly => match opts.rig {
                RigName::Int => {
                    let $cat = PolyCat::new(IntRig::default());
                    $body
                }
                RigName::Nat => {
                    let $cat = PolyCat::new(NatRig::default());
                    $body
                }
                RigName::Rat => {
                    let $cat = PolyCat::new(RatRig::default());
                    $body
                }
                RigName::Bool => {
                    let $cat = PolyCat::new(BoolRig);
                    $body
                }
                RigName::Mod(m) => {
                    let $cat = PolyCat::new(ModRig::new(m));
                    $body
                }
                RigName::Tropical => {
                    let $cat = PolyCat::new(TropicalRig);
                    $body
                }
            },
            CatKind::Mat => match opts.rig {
                RigName::Int => {
                    let $cat = MatCat::new(IntRig::default());
                    $body
                }
                RigName::Nat => {
                    let $cat = MatCat::new(NatRig::default());
                    $body
                }
                RigName::Rat => {
                    let $cat = MatCat::new(RatRig::default());
                    $body
                }
                RigName::Bool => {
                    let $cat = MatCat::new(BoolRig);
                    $body
                }
                RigName::Mod(m) => {
                    let $cat = MatCat::new(ModRig::new(m));
                    $body
                }
                RigName::Tropical => {
                    let $cat = MatCat::new(TropicalRig);
                    $body
                }
            },
        }
    }};
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Derive { mode, target } => dispatch!(target.opts, |cat| {
            let f = parse_arg(&cat, &target.morphism)?;
            let (result, op) = match mode {
                Mode::Forward => (cat.forward(&f), "derive-forward"),
                Mode::Reverse => (cat.reverse(&f), "derive-reverse"),
            };
            emit_morphism(&cat, &target.opts, op, &target.morphism, &result);
            Ok(ExitCode::SUCCESS)
        }),
        Command::Dagger { target } => dispatch!(target.opts, |cat| {
            let f = parse_arg(&cat, &target.morphism)?;
            let result = dagger(&cat, &f);
            emit_morphism(&cat, &target.opts, "dagger", &target.morphism, &result);
            Ok(ExitCode::SUCCESS)
        }),
        Command::CtxDagger { context, target } => dispatch!(target.opts, |cat| {
            let f = parse_arg(&cat, &target.morphism)?;
            check_context(&cat, &f, context)?;
            let result = contextual_dagger(&cat, &f, context);
            emit_morphism(&cat, &target.opts, "ctx-dagger", &target.morphism, &result);
            Ok(ExitCode::SUCCESS)
        }),
        Command::Linear { context, target } => dispatch!(target.opts, |cat| {
            let f = parse_arg(&cat, &target.morphism)?;
            let verdict = match context {
                None => is_linear(&cat, &f),
                Some(c) => {
                    check_context(&cat, &f, c)?;
                    is_linear_in_second(&cat, &f, c)
                }
            };
            match target.opts.format {
                Format::Text => out!("{verdict}"),
                Format::Json => print_json(&json!({
                    "operation": "linear",
                    "input": target.morphism,
                    "context": context,
                    "result": verdict,
                })),
            }
            Ok(ExitCode::SUCCESS)
        }),
        Command::Compose { opts, f, g } => dispatch!(opts, |cat| {
            if f == "-" && g == "-" {
                return Err(CliError::Usage(
                    "only one morphism may be read from stdin".into(),
                ));
            }
            let fm = parse_arg(&cat, &f)?;
            let gm = parse_arg(&cat, &g)?;
            if cat.cod(&fm) != cat.dom(&gm) {
                return Err(CliError::Usage(format!(
                    "cannot compose {}({}) with {}({}): codomain {} does not match domain {}",
                    cat.category_name(),
                    cat.signature(&fm),
                    cat.category_name(),
                    cat.signature(&gm),
                    cat.cod(&fm),
                    cat.dom(&gm)
                )));
            }
            let result = cat.compose(&fm, &gm);
            match opts.format {
                Format::Text => out!("{result}"),
                Format::Json => print_json(&json!({
                    "operation": "compose",
                    "input": [f, g],
                    "result": result.to_string(),
                    "signature": cat.signature(&result),
                })),
            }
            Ok(ExitCode::SUCCESS)
        }),
        Command::Roundtrip { target } => dispatch!(target.opts, |cat| {
            let f = parse_arg(&cat, &target.morphism)?;
            let d_direct = cat.forward(&f);
            let d_derived = forward_from_reverse(&cat, &f);
            let r_direct = cat.reverse(&f);
            let r_derived = reverse_from_forward_dagger(&cat, &f);
            let d_agree = cat.equal(&d_direct, &d_derived);
            let r_agree = cat.equal(&r_direct, &r_derived);
            match target.opts.format {
                Format::Text => {
                    out!("forward direct:  {d_direct}");
                    out!("forward derived: {d_derived}");
                    out!("reverse direct:  {r_direct}");
                    out!("reverse derived: {r_derived}");
                    out!("forward agree: {d_agree}");
                    out!("reverse agree: {r_agree}");
                }
                Format::Json => print_json(&json!({
                    "operation": "roundtrip",
                    "input": target.morphism,
                    "forward_direct": d_direct.to_string(),
                    "forward_derived": d_derived.to_string(),
                    "reverse_direct": r_direct.to_string(),
                    "reverse_derived": r_derived.to_string(),
                    "forward_agree": d_agree,
                    "reverse_agree": r_agree,
                })),
            }
            Ok(if d_agree && r_agree {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }),
        Command::Check(args) => run_check(args),
    }
}

fn run_check(args: CheckArgs) -> Result<ExitCode, CliError> {
    let spec = CheckSpec {
        trials: args.trials,
        seed: args.opts.seed,
        ..CheckSpec::default()
    };
    if args.suite == SuiteKind::Mutations {
        return Ok(report_mutations(&spec, args.opts.format));
    }
    dispatch!(args.opts, |cat| {
        let report = match args.suite {
            SuiteKind::Rd => check_rd(&cat, &spec),
            SuiteKind::Cdc => {
                let mode = match args.combinator {
                    Combinator::Direct => ForwardMode::Direct,
                    Combinator::Derived => ForwardMode::Derived,
                };
                check_cdc(&cat, &spec, mode)
            }
            SuiteKind::Lemmas => check_lemmas(&cat, &spec),
            SuiteKind::Dagger => check_dagger(&cat, &spec),
            SuiteKind::Roundtrip => check_roundtrip(&cat, &spec),
            SuiteKind::Fibration => check_fibration(&cat, &spec),
            SuiteKind::Mutations => unreachable!("handled above"),
        };
        match args.opts.format {
            Format::Text => out!("{report}"),
            Format::Json => out!("{}", report.to_json()),
        }
        Ok(if report.all_pass() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        })
    })
}

/// Runs every deliberately broken combinator and reports whether the law
/// suites caught it. Success here means every mutant failed some law.
fn report_mutations(spec: &CheckSpec, format: Format) -> ExitCode {
    let reports: Vec<CheckReport> = mutations::all_mutation_reports(spec);
    let mut all_caught = true;
    match format {
        Format::Text => {
            for report in &reports {
                let caught = report.failures() > 0;
                all_caught &= caught;
                out!(
                    "{} on {}/{}: {} of {} identities failed — {}",
                    report.suite,
                    report.category,
                    report.rig,
                    report.failed_identities(),
                    report.identities.len(),
                    if caught { "caught" } else { "NOT caught" }
                );
            }
            out!(
                "mutation coverage: {}/{} mutants caught",
                reports.iter().filter(|r| r.failures() > 0).count(),
                reports.len()
            );
        }
        Format::Json => {
            let rows: Vec<_> = reports
                .iter()
                .map(|report| {
                    let caught = report.failures() > 0;
                    all_caught &= caught;
                    json!({
                        "suite": report.suite,
                        "category": report.category,
                        "rig": report.rig,
                        "failed_identities": report.failed_identities(),
                        "failing_trials": report.failures(),
                        "total_identities": report.identities.len(),
                        "caught": caught,
                    })
                })
                .collect();
            print_json(&serde_json::Value::Array(rows));
        }
    }
    if all_caught {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Reads a morphism literal from the argument or, for `-`, from stdin.
fn parse_arg<C: ParseMorphism>(cat: &C, arg: &str) -> Result<C::Mor, CliError> {
    if arg == "-" {
        let mut src = String::new();
        std::io::stdin()
            .read_to_string(&mut src)
            .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
        Ok(cat.parse_morphism(src.trim())?)
    } else {
        Ok(cat.parse_morphism(arg)?)
    }
}

fn check_context<C: Category>(cat: &C, f: &C::Mor, context: usize) -> Result<(), CliError> {
    let dom = cat.dom(f);
    if context > dom {
        return Err(CliError::Usage(format!(
            "context {context} exceeds the domain arity {dom} of {}({})",
            cat.category_name(),
            cat.signature(f)
        )));
    }
    Ok(())
}

fn emit_morphism<C: Category>(
    cat: &C,
    opts: &CommonOpts,
    operation: &str,
    input: &str,
    result: &C::Mor,
) {
    match opts.format {
        Format::Text => out!("{result}"),
        Format::Json => print_json(&json!({
            "operation": operation,
            "input": input,
            "result": result.to_string(),
            "signature": cat.signature(result),
        })),
    }
}

fn print_json(value: &serde_json::Value) {
    out!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}
