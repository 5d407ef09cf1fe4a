//! The category of smooth maps represented by closed-form expression trees
//! over variables, real constants, `+`, `*`, negation, `sin`, `cos`, and
//! `exp`.
//!
//! Subterms are reference-counted, so repeated differentiation shares
//! structure instead of exploding; differentiation and substitution memoize
//! on node identity, and evaluation compiles each component to a flat tape
//! once and then replays it per sample point.
//!
//! Equality of smooth maps is undecidable symbolically, so the category's
//! oracle samples both sides at seeded uniform points of `[-1, 1]^n` and
//! compares within a relative-or-absolute tolerance, reporting the worst
//! point seen. Construction applies only constant folding and 0/1
//! absorption; no other simplification, so printed results stay close to
//! the defining formulas.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::{
    Arity, Category, EqOutcome, ForwardDifferential, GenCaps, GenerateMorphisms,
    ReverseDifferential, Side, Split,
};

/// A smooth scalar expression; cheap to clone, structurally shared.
#[derive(Clone, Debug)]
pub struct Expr(Rc<ExprNode>);

#[derive(Debug)]
pub enum ExprNode {
    /// Zero-based variable index; `Var(0)` prints as `x1`.
    Var(usize),
    Const(f64),
    Add(Expr, Expr),
    Mul(Expr, Expr),
    Neg(Expr),
    Sin(Expr),
    Cos(Expr),
    Exp(Expr),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        if Rc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (self.node(), other.node()) {
            (ExprNode::Var(a), ExprNode::Var(b)) => a == b,
            (ExprNode::Const(a), ExprNode::Const(b)) => a == b,
            (ExprNode::Add(a1, a2), ExprNode::Add(b1, b2))
            | (ExprNode::Mul(a1, a2), ExprNode::Mul(b1, b2)) => a1 == b1 && a2 == b2,
            (ExprNode::Neg(a), ExprNode::Neg(b))
            | (ExprNode::Sin(a), ExprNode::Sin(b))
            | (ExprNode::Cos(a), ExprNode::Cos(b))
            | (ExprNode::Exp(a), ExprNode::Exp(b)) => a == b,
            _ => false,
        }
    }
}

impl Expr {
    pub fn node(&self) -> &ExprNode {
        &self.0
    }

    fn key(&self) -> usize {
        Rc::as_ptr(&self.0) as usize
    }

    pub fn var(index: usize) -> Expr {
        Expr(Rc::new(ExprNode::Var(index)))
    }

    pub fn constant(value: f64) -> Expr {
        Expr(Rc::new(ExprNode::Const(value)))
    }

    pub fn as_const(&self) -> Option<f64> {
        match self.node() {
            ExprNode::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn sin(a: Expr) -> Expr {
        if let Some(x) = a.as_const() {
            return Expr::constant(x.sin());
        }
        Expr(Rc::new(ExprNode::Sin(a)))
    }

    pub fn cos(a: Expr) -> Expr {
        if let Some(x) = a.as_const() {
            return Expr::constant(x.cos());
        }
        Expr(Rc::new(ExprNode::Cos(a)))
    }

    pub fn exp(a: Expr) -> Expr {
        if let Some(x) = a.as_const() {
            if x.exp().is_finite() {
                return Expr::constant(x.exp());
            }
        }
        Expr(Rc::new(ExprNode::Exp(a)))
    }

    /// Highest variable index mentioned, if any.
    pub fn max_var(&self) -> Option<usize> {
        fn walk(e: &Expr, seen: &mut HashMap<usize, Option<usize>>) -> Option<usize> {
            if let Some(v) = seen.get(&e.key()) {
                return *v;
            }
            let out = match e.node() {
                ExprNode::Var(i) => Some(*i),
                ExprNode::Const(_) => None,
                ExprNode::Add(a, b) | ExprNode::Mul(a, b) => walk(a, seen).max(walk(b, seen)),
                ExprNode::Neg(a) | ExprNode::Sin(a) | ExprNode::Cos(a) | ExprNode::Exp(a) => {
                    walk(a, seen)
                }
            };
            seen.insert(e.key(), out);
            out
        }
        walk(self, &mut HashMap::new())
    }
}

/// Sum with constant folding and zero absorption.
impl std::ops::Add for Expr {
    type Output = Expr;

    fn add(self, rhs: Expr) -> Expr {
        if let (Some(x), Some(y)) = (self.as_const(), rhs.as_const()) {
            if (x + y).is_finite() {
                return Expr::constant(x + y);
            }
        }
        if self.as_const() == Some(0.0) {
            return rhs;
        }
        if rhs.as_const() == Some(0.0) {
            return self;
        }
        Expr(Rc::new(ExprNode::Add(self, rhs)))
    }
}

/// Product with constant folding and 0/1 absorption.
impl std::ops::Mul for Expr {
    type Output = Expr;

    fn mul(self, rhs: Expr) -> Expr {
        if let (Some(x), Some(y)) = (self.as_const(), rhs.as_const()) {
            if (x * y).is_finite() {
                return Expr::constant(x * y);
            }
        }
        if self.as_const() == Some(0.0) || rhs.as_const() == Some(0.0) {
            return Expr::constant(0.0);
        }
        if self.as_const() == Some(1.0) {
            return rhs;
        }
        if rhs.as_const() == Some(1.0) {
            return self;
        }
        Expr(Rc::new(ExprNode::Mul(self, rhs)))
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;

    fn neg(self) -> Expr {
        if let Some(x) = self.as_const() {
            return Expr::constant(-x);
        }
        Expr(Rc::new(ExprNode::Neg(self)))
    }
}

/// Precedence levels for printing: sums bind loosest, then products, then
/// negation; variables, constants, and calls are atoms.
fn prec(e: &Expr) -> u8 {
    match e.node() {
        ExprNode::Add(..) => 0,
        ExprNode::Mul(..) => 1,
        ExprNode::Neg(..) => 2,
        _ => 3,
    }
}

fn fmt_expr(e: &Expr, min_prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let this = prec(e);
    if this < min_prec {
        write!(f, "(")?;
        fmt_expr(e, 0, f)?;
        return write!(f, ")");
    }
    match e.node() {
        ExprNode::Var(i) => write!(f, "x{}", i + 1),
        ExprNode::Const(c) => write!(f, "{c}"),
        ExprNode::Add(a, b) => {
            fmt_expr(a, 0, f)?;
            write!(f, " + ")?;
            // Right operand needs parens when it is itself a sum, so the
            // reparse rebuilds the same left-nested tree.
            fmt_expr(b, 1, f)
        }
        ExprNode::Mul(a, b) => {
            fmt_expr(a, 1, f)?;
            write!(f, "*")?;
            fmt_expr(b, 2, f)
        }
        ExprNode::Neg(a) => {
            write!(f, "-")?;
            fmt_expr(a, 3, f)
        }
        ExprNode::Sin(a) => {
            write!(f, "sin(")?;
            fmt_expr(a, 0, f)?;
            write!(f, ")")
        }
        ExprNode::Cos(a) => {
            write!(f, "cos(")?;
            fmt_expr(a, 0, f)?;
            write!(f, ")")
        }
        ExprNode::Exp(a) => {
            write!(f, "exp(")?;
            fmt_expr(a, 0, f)?;
            write!(f, ")")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_expr(self, 0, f)
    }
}

/// Node-memoized symbolic differentiation. One instance shares work across
/// all component/variable pairs of a derivative computation.
pub struct Differ {
    memo: HashMap<(usize, usize), Expr>,
}

impl Differ {
    pub fn new() -> Self {
        Differ {
            memo: HashMap::new(),
        }
    }

    /// Partial derivative in the zero-based variable `var`.
    pub fn partial(&mut self, e: &Expr, var: usize) -> Expr {
        if let Some(hit) = self.memo.get(&(e.key(), var)) {
            return hit.clone();
        }
        let out = match e.node() {
            ExprNode::Var(i) => Expr::constant(if *i == var { 1.0 } else { 0.0 }),
            ExprNode::Const(_) => Expr::constant(0.0),
            ExprNode::Add(a, b) => self.partial(a, var) + self.partial(b, var),
            ExprNode::Mul(a, b) => {
                (self.partial(a, var) * b.clone()) + (a.clone() * self.partial(b, var))
            }
            ExprNode::Neg(a) => -self.partial(a, var),
            ExprNode::Sin(a) => Expr::cos(a.clone()) * self.partial(a, var),
            ExprNode::Cos(a) => (-Expr::sin(a.clone())) * self.partial(a, var),
            ExprNode::Exp(a) => Expr::exp(a.clone()) * self.partial(a, var),
        };
        self.memo.insert((e.key(), var), out.clone());
        out
    }
}

impl Default for Differ {
    fn default() -> Self {
        Differ::new()
    }
}

/// Node-memoized simultaneous substitution `x{i+1} := args[i]`.
struct Substituter<'a> {
    args: &'a [Expr],
    memo: HashMap<usize, Expr>,
}

impl<'a> Substituter<'a> {
    fn new(args: &'a [Expr]) -> Self {
        Substituter {
            args,
            memo: HashMap::new(),
        }
    }

    fn apply(&mut self, e: &Expr) -> Expr {
        if let Some(hit) = self.memo.get(&e.key()) {
            return hit.clone();
        }
        let out = match e.node() {
            ExprNode::Var(i) => self.args[*i].clone(),
            ExprNode::Const(c) => Expr::constant(*c),
            ExprNode::Add(a, b) => self.apply(a) + self.apply(b),
            ExprNode::Mul(a, b) => self.apply(a) * self.apply(b),
            ExprNode::Neg(a) => -self.apply(a),
            ExprNode::Sin(a) => Expr::sin(self.apply(a)),
            ExprNode::Cos(a) => Expr::cos(self.apply(a)),
            ExprNode::Exp(a) => Expr::exp(self.apply(a)),
        };
        self.memo.insert(e.key(), out.clone());
        out
    }
}

/// Flat evaluation program for one expression; slot `i` holds the value of
/// the `i`-th DAG node in dependency order.
enum TapeOp {
    Var(usize),
    Const(f64),
    Add(usize, usize),
    Mul(usize, usize),
    Neg(usize),
    Sin(usize),
    Cos(usize),
    Exp(usize),
}

pub struct Tape {
    ops: Vec<TapeOp>,
}

impl Tape {
    pub fn compile(e: &Expr) -> Tape {
        let mut tape = Tape { ops: Vec::new() };
        let mut slots: HashMap<usize, usize> = HashMap::new();
        tape.emit(e, &mut slots);
        tape
    }

    fn emit(&mut self, e: &Expr, slots: &mut HashMap<usize, usize>) -> usize {
        if let Some(&slot) = slots.get(&e.key()) {
            return slot;
        }
        let op = match e.node() {
            ExprNode::Var(i) => TapeOp::Var(*i),
            ExprNode::Const(c) => TapeOp::Const(*c),
            ExprNode::Add(a, b) => {
                let (sa, sb) = (self.emit(a, slots), self.emit(b, slots));
                TapeOp::Add(sa, sb)
            }
            ExprNode::Mul(a, b) => {
                let (sa, sb) = (self.emit(a, slots), self.emit(b, slots));
                TapeOp::Mul(sa, sb)
            }
            ExprNode::Neg(a) => TapeOp::Neg(self.emit(a, slots)),
            ExprNode::Sin(a) => TapeOp::Sin(self.emit(a, slots)),
            ExprNode::Cos(a) => TapeOp::Cos(self.emit(a, slots)),
            ExprNode::Exp(a) => TapeOp::Exp(self.emit(a, slots)),
        };
        self.ops.push(op);
        let slot = self.ops.len() - 1;
        slots.insert(e.key(), slot);
        slot
    }

    /// Replays the tape at a point; `buf` is reused scratch space.
    pub fn eval(&self, point: &[f64], buf: &mut Vec<f64>) -> f64 {
        buf.clear();
        for op in &self.ops {
            let v = match *op {
                TapeOp::Var(i) => point[i],
                TapeOp::Const(c) => c,
                TapeOp::Add(a, b) => buf[a] + buf[b],
                TapeOp::Mul(a, b) => buf[a] * buf[b],
                TapeOp::Neg(a) => -buf[a],
                TapeOp::Sin(a) => buf[a].sin(),
                TapeOp::Cos(a) => buf[a].cos(),
                TapeOp::Exp(a) => buf[a].exp(),
            };
            buf.push(v);
        }
        buf.last().copied().unwrap_or(0.0)
    }
}

/// A tuple of smooth scalar expressions.
#[derive(Clone, PartialEq, Debug)]
pub struct SmoothMorphism {
    dom: Arity,
    cod: Arity,
    comps: Vec<Expr>,
}

impl SmoothMorphism {
    pub fn new(dom: Arity, cod: Arity, comps: Vec<Expr>) -> Self {
        assert_eq!(comps.len(), cod, "component count must equal the codomain");
        for c in &comps {
            if let Some(v) = c.max_var() {
                assert!(v < dom, "component mentions x{} beyond arity {dom}", v + 1);
            }
        }
        SmoothMorphism { dom, cod, comps }
    }

    pub fn dom(&self) -> Arity {
        self.dom
    }

    pub fn cod(&self) -> Arity {
        self.cod
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    /// Evaluates all components at a point of the domain.
    pub fn eval(&self, point: &[f64]) -> Vec<f64> {
        assert_eq!(point.len(), self.dom, "point arity mismatch");
        let mut buf = Vec::new();
        self.comps
            .iter()
            .map(|c| Tape::compile(c).eval(point, &mut buf))
            .collect()
    }
}

impl fmt::Display for SmoothMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "smooth({}->{}){{ }}", self.dom, self.cod);
        }
        let body: Vec<String> = self.comps.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "smooth({}->{}){{ {} }}",
            self.dom,
            self.cod,
            body.join(" ; ")
        )
    }
}

/// Outcome of the sampled equality oracle.
#[derive(Clone, Debug)]
pub struct SampledEq {
    pub equal: bool,
    pub max_deviation: f64,
    pub worst_point: Vec<f64>,
    pub lhs_at_worst: Vec<f64>,
    pub rhs_at_worst: Vec<f64>,
    pub valid_samples: usize,
}

/// Compares two smooth maps of equal signature at `samples` seeded uniform
/// points of `[-1, 1]^dom`, accepting when every component pair satisfies
/// `|a - b| <= tol * max(1, |a|, |b|)`. Samples where either side fails to
/// evaluate to a finite number are discarded.
pub fn smooth_equal(
    f: &SmoothMorphism,
    g: &SmoothMorphism,
    samples: usize,
    tol: f64,
    seed: u64,
) -> SampledEq {
    assert_eq!(f.dom, g.dom, "sampled equality needs matching domains");
    assert_eq!(f.cod, g.cod, "sampled equality needs matching codomains");
    let f_tapes: Vec<Tape> = f.comps.iter().map(Tape::compile).collect();
    let g_tapes: Vec<Tape> = g.comps.iter().map(Tape::compile).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buf = Vec::new();
    let mut worst = SampledEq {
        equal: true,
        max_deviation: 0.0,
        worst_point: Vec::new(),
        lhs_at_worst: Vec::new(),
        rhs_at_worst: Vec::new(),
        valid_samples: 0,
    };
    for _ in 0..samples {
        let point: Vec<f64> = (0..f.dom).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let lhs: Vec<f64> = f_tapes.iter().map(|t| t.eval(&point, &mut buf)).collect();
        let rhs: Vec<f64> = g_tapes.iter().map(|t| t.eval(&point, &mut buf)).collect();
        if lhs.iter().chain(rhs.iter()).any(|v| !v.is_finite()) {
            continue;
        }
        worst.valid_samples += 1;
        let dev = lhs
            .iter()
            .zip(&rhs)
            .map(|(a, b)| (a - b).abs() / 1.0_f64.max(a.abs()).max(b.abs()))
            .fold(0.0_f64, f64::max);
        if dev > worst.max_deviation {
            worst.max_deviation = dev;
            worst.worst_point = point;
            worst.lhs_at_worst = lhs;
            worst.rhs_at_worst = rhs;
        }
    }
    worst.equal = worst.valid_samples > 0 && worst.max_deviation <= tol;
    worst
}

/// The smooth category; the instance carries its equality oracle parameters
/// (sample count, tolerance, seed) so equality is reproducible.
#[derive(Clone, Debug)]
pub struct SmoothCat {
    samples: usize,
    tol: f64,
    seed: u64,
}

impl SmoothCat {
    pub fn new(samples: usize, tol: f64, seed: u64) -> Self {
        assert!(samples > 0, "oracle needs at least one sample");
        SmoothCat { samples, tol, seed }
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

impl Default for SmoothCat {
    fn default() -> Self {
        SmoothCat::new(50, 1e-7, 42)
    }
}

impl Category for SmoothCat {
    type Mor = SmoothMorphism;

    fn category_name(&self) -> &'static str {
        "smooth"
    }

    fn scalar_name(&self) -> String {
        "real".to_string()
    }

    fn dom(&self, f: &SmoothMorphism) -> Arity {
        f.dom
    }

    fn cod(&self, f: &SmoothMorphism) -> Arity {
        f.cod
    }

    fn identity(&self, a: Arity) -> SmoothMorphism {
        SmoothMorphism::new(a, a, (0..a).map(Expr::var).collect())
    }

    fn compose(&self, f: &SmoothMorphism, g: &SmoothMorphism) -> SmoothMorphism {
        assert_eq!(
            f.cod, g.dom,
            "cannot compose {}->{} with {}->{}",
            f.dom, f.cod, g.dom, g.cod
        );
        let mut subst = Substituter::new(&f.comps);
        let comps = g.comps.iter().map(|c| subst.apply(c)).collect();
        SmoothMorphism::new(f.dom, g.cod, comps)
    }

    fn pairing(&self, f: &SmoothMorphism, g: &SmoothMorphism) -> SmoothMorphism {
        assert_eq!(f.dom, g.dom, "pairing needs a common domain");
        let mut comps = f.comps.clone();
        comps.extend(g.comps.iter().cloned());
        SmoothMorphism::new(f.dom, f.cod + g.cod, comps)
    }

    fn projection(&self, split: Split, side: Side) -> SmoothMorphism {
        let total = split.total();
        let (start, len) = match side {
            Side::Left => (0, split.left),
            Side::Right => (split.left, split.right),
        };
        SmoothMorphism::new(total, len, (start..start + len).map(Expr::var).collect())
    }

    fn add(&self, f: &SmoothMorphism, g: &SmoothMorphism) -> SmoothMorphism {
        assert_eq!(f.dom, g.dom, "sum needs matching domains");
        assert_eq!(f.cod, g.cod, "sum needs matching codomains");
        let comps = f
            .comps
            .iter()
            .zip(&g.comps)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        SmoothMorphism::new(f.dom, f.cod, comps)
    }

    fn zero(&self, dom: Arity, cod: Arity) -> SmoothMorphism {
        SmoothMorphism::new(dom, cod, (0..cod).map(|_| Expr::constant(0.0)).collect())
    }

    fn equal_detailed(&self, f: &SmoothMorphism, g: &SmoothMorphism) -> EqOutcome {
        if f.dom != g.dom || f.cod != g.cod {
            return EqOutcome {
                equal: false,
                detail: Some("signature mismatch".to_string()),
            };
        }
        let report = smooth_equal(f, g, self.samples, self.tol, self.seed);
        if report.equal {
            EqOutcome::exact(true)
        } else {
            let detail = if report.valid_samples == 0 {
                "no finite samples".to_string()
            } else {
                format!(
                    "max deviation {:.3e} at point {:?}: lhs {:?} vs rhs {:?}",
                    report.max_deviation,
                    report.worst_point,
                    report.lhs_at_worst,
                    report.rhs_at_worst
                )
            };
            EqOutcome {
                equal: false,
                detail: Some(detail),
            }
        }
    }
}

impl ForwardDifferential for SmoothCat {
    fn forward(&self, f: &SmoothMorphism) -> SmoothMorphism {
        let n = f.dom;
        let mut differ = Differ::new();
        let comps = f
            .comps
            .iter()
            .map(|p| {
                let mut acc = Expr::constant(0.0);
                for i in 0..n {
                    acc = acc + (differ.partial(p, i) * Expr::var(n + i));
                }
                acc
            })
            .collect();
        SmoothMorphism::new(2 * n, f.cod, comps)
    }
}

impl ReverseDifferential for SmoothCat {
    fn reverse(&self, f: &SmoothMorphism) -> SmoothMorphism {
        let n = f.dom;
        let m = f.cod;
        let mut differ = Differ::new();
        let comps = (0..n)
            .map(|i| {
                let mut acc = Expr::constant(0.0);
                for (j, p) in f.comps.iter().enumerate() {
                    acc = acc + (differ.partial(p, i) * Expr::var(n + j));
                }
                acc
            })
            .collect();
        SmoothMorphism::new(n + m, n, comps)
    }
}

/// A fixed pool of hand-built smooth maps with arities up to 3, mixing the
/// trigonometric, exponential, product, and sum constructors. The finite
/// difference validation and the smooth law suites draw from this pool.
pub fn standard_pool() -> Vec<SmoothMorphism> {
    fn m(dom: Arity, comps: Vec<Expr>) -> SmoothMorphism {
        let cod = comps.len();
        SmoothMorphism::new(dom, cod, comps)
    }
    let x = Expr::var;
    vec![
        m(1, vec![Expr::sin(x(0))]),
        m(1, vec![Expr::exp(x(0))]),
        m(1, vec![(x(0) * x(0))]),
        m(1, vec![(Expr::cos(x(0)) + x(0))]),
        m(1, vec![Expr::sin(x(0)), Expr::cos(x(0))]),
        m(1, vec![x(0), (x(0) * x(0)), Expr::sin(x(0))]),
        m(2, vec![(x(0) * x(1))]),
        m(2, vec![(Expr::sin(x(0)) + x(1))]),
        m(2, vec![Expr::exp(x(0) * x(1))]),
        m(2, vec![(x(0) + x(1)), (x(0) * x(1))]),
        m(2, vec![(Expr::cos(x(0)) * x(1)), Expr::sin(x(1))]),
        m(2, vec![x(0), x(1), (x(0) * x(1))]),
        m(
            2,
            vec![
                ((Expr::constant(0.5) * x(0)) + x(1)),
                Expr::sin(x(0) * x(1)),
            ],
        ),
        m(3, vec![((x(0) * x(1)) * x(2))]),
        m(3, vec![(Expr::sin(x(0) * x(1)) + Expr::cos(x(2)))]),
        m(3, vec![(Expr::exp(x(0)) + (x(1) * x(2)))]),
        m(3, vec![((x(0) + x(1)) + x(2)), (x(0) * x(1))]),
        m(3, vec![(Expr::sin(x(0)) * x(1)), Expr::exp(x(1) * x(2))]),
        m(3, vec![x(1), x(2), x(0)]),
        m(3, vec![(x(0) * x(0)), Expr::sin(x(1)), x(2)]),
    ]
}

impl SmoothCat {
    /// One random scalar expression over variables below `dom`.
    fn random_component(&self, rng: &mut ChaCha8Rng, dom: Arity) -> Expr {
        if dom == 0 {
            return Expr::constant(round2(rng.random_range(-1.0..=1.0)));
        }
        let v = |rng: &mut ChaCha8Rng| Expr::var(rng.random_range(0..dom));
        match rng.random_range(0..10u32) {
            0 => v(rng),
            1 => v(rng) * v(rng),
            2 => Expr::sin(v(rng)),
            3 => Expr::cos(v(rng)) * v(rng),
            4 => Expr::exp(v(rng) * v(rng)),
            5 => v(rng) + (v(rng) * v(rng)),
            6 => Expr::sin(v(rng) * v(rng)) + Expr::cos(v(rng)),
            7 => Expr::constant(round2(rng.random_range(-1.0..=1.0))),
            8 => (Expr::constant(round2(rng.random_range(-2.0..=2.0))) * v(rng)) + v(rng),
            _ => Expr::sin(v(rng)) * Expr::exp(v(rng)),
        }
    }
}

/// Rounds to two decimals so generated constants print compactly.
fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

impl GenerateMorphisms for SmoothCat {
    fn random_morphism(
        &self,
        rng: &mut ChaCha8Rng,
        dom: Arity,
        cod: Arity,
        _caps: &GenCaps,
    ) -> SmoothMorphism {
        let comps = (0..cod).map(|_| self.random_component(rng, dom)).collect();
        SmoothMorphism::new(dom, cod, comps)
    }

    fn random_linear(&self, rng: &mut ChaCha8Rng, dom: Arity, cod: Arity) -> SmoothMorphism {
        let comps = (0..cod)
            .map(|_| {
                let mut acc = Expr::constant(0.0);
                for i in 0..dom {
                    let c = rng.random_range(-2..=2i32) as f64;
                    acc = acc + (Expr::constant(c) * Expr::var(i));
                }
                acc
            })
            .collect();
        SmoothMorphism::new(dom, cod, comps)
    }

    fn random_nonlinear(
        &self,
        rng: &mut ChaCha8Rng,
        dom: Arity,
        cod: Arity,
        _caps: &GenCaps,
    ) -> Option<SmoothMorphism> {
        assert!(dom > 0 && cod > 0, "nonlinear map needs nonempty signature");
        let v = |rng: &mut ChaCha8Rng| Expr::var(rng.random_range(0..dom));
        let comps = (0..cod)
            .map(|_| match rng.random_range(0..4u32) {
                0 => Expr::sin(v(rng)),
                1 => Expr::exp(v(rng) * v(rng)),
                2 => (v(rng) * v(rng)) + v(rng),
                _ => Expr::cos(v(rng)) * v(rng),
            })
            .collect();
        Some(SmoothMorphism::new(dom, cod, comps))
    }

    fn random_linear_in_second(
        &self,
        rng: &mut ChaCha8Rng,
        ctx: Arity,
        arg: Arity,
        cod: Arity,
        _caps: &GenCaps,
    ) -> SmoothMorphism {
        let comps = (0..cod)
            .map(|_| {
                let mut acc = Expr::constant(0.0);
                for j in 0..arg {
                    let coeff = if ctx == 0 {
                        Expr::constant(round2(rng.random_range(-2.0..=2.0)))
                    } else {
                        match rng.random_range(0..3u32) {
                            0 => Expr::sin(Expr::var(rng.random_range(0..ctx))),
                            1 => Expr::var(rng.random_range(0..ctx)),
                            _ => {
                                Expr::var(rng.random_range(0..ctx))
                                    * Expr::var(rng.random_range(0..ctx))
                            }
                        }
                    };
                    acc = acc + (coeff * Expr::var(ctx + j));
                }
                acc
            })
            .collect();
        SmoothMorphism::new(ctx + arg, cod, comps)
    }
}
