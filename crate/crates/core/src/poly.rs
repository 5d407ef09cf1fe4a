//! Multivariate polynomials over a commutative rig, kept in canonical form.
//!
//! A polynomial is a finite map from monomials to nonzero coefficients,
//! ordered by graded lexicographic order on trimmed exponent vectors.
//! Canonical form makes structural equality coincide with mathematical
//! equality, which is what lets the polynomial categories decide morphism
//! equality exactly.
//!
//! The ambient arity `nvars` is carried explicitly rather than inferred from
//! the terms: a map out of a three-variable context that happens to mention
//! only `x1` still has arity 3.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::category::GenCaps;
use crate::rig::Rig;

/// A monomial as a trimmed exponent vector: index `i` is the exponent of
/// `x{i+1}`, and trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The empty monomial `1`.
    pub fn unit() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// Builds a monomial from raw exponents, trimming trailing zeros.
    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    /// The monomial `x{index+1}`.
    pub fn variable(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps.get(index).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    /// Index of the highest variable mentioned, if any.
    pub fn max_var(&self) -> Option<usize> {
        if self.exps.is_empty() {
            None
        } else {
            Some(self.exps.len() - 1)
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.exps.len().max(other.exps.len());
        let mut exps = Vec::with_capacity(len);
        for i in 0..len {
            exps.push(self.exponent(i) + other.exponent(i));
        }
        Monomial::from_exponents(exps)
    }

    /// Divides out one power of `x{index+1}`. Panics when absent.
    fn strip_one(&self, index: usize) -> Monomial {
        assert!(self.exponent(index) > 0, "variable not present in monomial");
        let mut exps = self.exps.clone();
        exps[index] -= 1;
        Monomial::from_exponents(exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then lexicographic on the
    /// exponent vectors with `x1` most significant. Trimming makes a strict
    /// prefix tie impossible at equal degree, so plain slice order suffices.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

/// A polynomial over the rig `R` in canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<R: Rig> {
    rig: R,
    nvars: usize,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Rig> Polynomial<R> {
    pub fn zero(rig: R, nvars: usize) -> Self {
        Polynomial {
            rig,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rig: R, value: R::Elem, nvars: usize) -> Self {
        Polynomial::from_terms(rig, nvars, [(Monomial::unit(), value)])
    }

    pub fn variable(rig: R, index: usize, nvars: usize) -> Self {
        assert!(
            index < nvars,
            "variable x{} exceeds arity {nvars}",
            index + 1
        );
        let one = rig.one();
        Polynomial::from_terms(rig, nvars, [(Monomial::variable(index), one)])
    }

    /// Normalizing constructor: merges duplicate monomials with rig addition
    /// and drops zero coefficients. Panics when a monomial mentions a
    /// variable outside the ambient arity.
    pub fn from_terms(
        rig: R,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, R::Elem)>,
    ) -> Self {
        let mut map: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (m, c) in terms {
            if let Some(v) = m.max_var() {
                assert!(
                    v < nvars,
                    "monomial mentions x{} beyond ambient arity {nvars}",
                    v + 1
                );
            }
            match map.remove(&m) {
                Some(existing) => {
                    let merged = rig.add(&existing, &c);
                    if !rig.is_zero(&merged) {
                        map.insert(m, merged);
                    }
                }
                None => {
                    if !rig.is_zero(&c) {
                        map.insert(m, c);
                    }
                }
            }
        }
        Polynomial {
            rig,
            nvars,
            terms: map,
        }
    }

    pub fn rig(&self) -> &R {
        &self.rig
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Re-embeds into a (usually larger) ambient arity. Panics when a term
    /// mentions a variable at or above the new arity.
    pub fn with_ambient(&self, nvars: usize) -> Self {
        if let Some(v) = self.max_var() {
            assert!(v < nvars, "cannot shrink ambient arity below x{}", v + 1);
        }
        let mut out = self.clone();
        out.nvars = nvars;
        out
    }

    fn assert_same_rig(&self, other: &Self) {
        assert!(
            self.rig == other.rig,
            "rig mismatch: {:?} vs {:?}",
            self.rig,
            other.rig
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_rig(other);
        let nvars = self.nvars.max(other.nvars);
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(m, c)| (m.clone(), c.clone()));
        Polynomial::from_terms(self.rig.clone(), nvars, terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_rig(other);
        let nvars = self.nvars.max(other.nvars);
        let mut acc: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = self.rig.mul(c1, c2);
                match acc.remove(&m) {
                    Some(existing) => {
                        let merged = self.rig.add(&existing, &c);
                        if !self.rig.is_zero(&merged) {
                            acc.insert(m, merged);
                        }
                    }
                    None => {
                        if !self.rig.is_zero(&c) {
                            acc.insert(m, c);
                        }
                    }
                }
            }
        }
        Polynomial {
            rig: self.rig.clone(),
            nvars,
            terms: acc,
        }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), self.rig.mul(v, c)));
        Polynomial::from_terms(self.rig.clone(), self.nvars, terms)
    }

    /// Formal partial derivative in `x{var+1}`: each term `c * x^e` with
    /// `e[var] = k > 0` contributes `(k . c) * x^(e - e_var)`, where `k . c`
    /// is the k-fold sum supplied by the rig.
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let k = m.exponent(var);
            if k == 0 {
                continue;
            }
            let coeff = self.rig.nat_scale(k as u64, c);
            if !self.rig.is_zero(&coeff) {
                out.push((m.strip_one(var), coeff));
            }
        }
        Polynomial::from_terms(self.rig.clone(), self.nvars, out)
    }

    /// Simultaneous substitution `x{i+1} := args[i]`. Requires an argument
    /// for every ambient variable; the result lives in the arguments' common
    /// ambient arity.
    pub fn substitute(&self, args: &[Self]) -> Self {
        assert!(
            args.len() >= self.nvars,
            "substitution needs {} arguments, got {}",
            self.nvars,
            args.len()
        );
        let nvars = args.iter().map(Polynomial::nvars).max().unwrap_or(0);
        let mut acc = Polynomial::zero(self.rig.clone(), nvars);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(self.rig.clone(), c.clone(), nvars);
            for (i, arg) in args.iter().enumerate().take(self.nvars) {
                for _ in 0..m.exponent(i) {
                    term = term.mul(arg);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Evaluates at a point with one coordinate per ambient variable.
    pub fn eval(&self, point: &[R::Elem]) -> R::Elem {
        assert!(
            point.len() >= self.nvars,
            "evaluation needs {} coordinates, got {}",
            self.nvars,
            point.len()
        );
        let mut acc = self.rig.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = self.rig.mul(&term, &point[i]);
                }
            }
            acc = self.rig.add(&acc, &term);
        }
        acc
    }
}

impl<R: Rig> fmt::Display for Polynomial<R> {
    /// Canonical text form: terms in descending graded lexicographic order,
    /// joined with ` + `; unit coefficients are omitted before variables and
    /// unit exponents after them. The zero polynomial prints as the rig's
    /// zero element (`0` for numbers, `-inf` tropically), which parses back
    /// to the empty polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "{}", self.rig.format_elem(&self.rig.zero()));
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_unit() {
                write!(f, "{}", self.rig.format_elem(c))?;
                continue;
            }
            let mut lead = String::new();
            if !self.rig.is_one(c) {
                lead = format!("{}*", self.rig.format_elem(c));
            }
            let powers: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            write!(f, "{lead}{}", powers.join("*"))?;
        }
        Ok(())
    }
}

/// Random canonical polynomial within the generator caps: at most
/// `max_terms` draws of a monomial of total degree at most `max_degree`,
/// coefficients drawn from `{0..=5}` and mapped into the rig.
pub fn random_polynomial<R: Rig>(
    rig: &R,
    rng: &mut ChaCha8Rng,
    nvars: usize,
    caps: &GenCaps,
) -> Polynomial<R> {
    let n_terms = rng.random_range(0..=caps.max_terms);
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        terms.push((
            random_monomial(rng, nvars, caps.max_degree),
            rig.sample_elem(rng.random_range(0..=5)),
        ));
    }
    Polynomial::from_terms(rig.clone(), nvars, terms)
}

/// Random monomial of total degree at most `max_degree` over `nvars`
/// variables.
pub fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    if nvars > 0 {
        let degree = rng.random_range(0..=max_degree);
        for _ in 0..degree {
            exps[rng.random_range(0..nvars)] += 1;
        }
    }
    Monomial::from_exponents(exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rig::{BoolRig, IntRig, ModRig};
    use num_bigint::BigInt;
    use rand::SeedableRng;

    fn int() -> IntRig {
        IntRig::default()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// `x1^2 + 3*x1*x2 + 5*x2` over the integers.
    fn sample_poly() -> Polynomial<IntRig> {
        Polynomial::from_terms(
            int(),
            2,
            [
                (Monomial::from_exponents(vec![2, 0]), big(1)),
                (Monomial::from_exponents(vec![1, 1]), big(3)),
                (Monomial::from_exponents(vec![0, 1]), big(5)),
            ],
        )
    }

    #[test]
    fn graded_lex_order() {
        let x1sq = Monomial::from_exponents(vec![2]);
        let x1x2 = Monomial::from_exponents(vec![1, 1]);
        let x2 = Monomial::from_exponents(vec![0, 1]);
        assert!(x1sq > x1x2);
        assert!(x1x2 > x2);
        // Degree dominates the lexicographic tiebreak.
        let x2sq = Monomial::from_exponents(vec![0, 2]);
        let x1 = Monomial::variable(0);
        assert!(x2sq > x1);
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let a = Monomial::from_exponents(vec![2, 0, 0]);
        let b = Monomial::from_exponents(vec![2]);
        assert_eq!(a, b);
        assert_eq!(a.exponents(), &[2]);
    }

    #[test]
    fn normalization_merges_and_drops() {
        let p = Polynomial::from_terms(
            int(),
            1,
            [
                (Monomial::variable(0), big(2)),
                (Monomial::variable(0), big(-2)),
                (Monomial::unit(), big(4)),
                (Monomial::unit(), big(0)),
            ],
        );
        assert_eq!(p.term_count(), 1);
        assert_eq!(p.to_string(), "4");
    }

    #[test]
    fn add_and_mul() {
        // (x1 + 1)^2 = x1^2 + 2*x1 + 1
        let x1 = Polynomial::variable(int(), 0, 1);
        let one = Polynomial::constant(int(), big(1), 1);
        let s = x1.add(&one);
        let sq = s.mul(&s);
        assert_eq!(sq.to_string(), "x1^2 + 2*x1 + 1");
    }

    #[test]
    fn partial_derivative_examples() {
        let p = sample_poly();
        assert_eq!(p.partial(0).to_string(), "2*x1 + 3*x2");
        assert_eq!(p.partial(1).to_string(), "3*x1 + 5");
        // Exponent factors pass through nat_scale: d(x^7)/dx = 0 mod 7.
        let mod7 = ModRig::new(7);
        let q = Polynomial::from_terms(mod7, 1, [(Monomial::from_exponents(vec![7]), 1u64)]);
        assert!(q.partial(0).is_zero());
    }

    #[test]
    fn substitution_example() {
        // p = x1*x2, substitute x1 := x1 + 1, x2 := x1 gives x1^2 + x1.
        let p = Polynomial::from_terms(int(), 2, [(Monomial::from_exponents(vec![1, 1]), big(1))]);
        let arg0 = Polynomial::variable(int(), 0, 1).add(&Polynomial::constant(int(), big(1), 1));
        let arg1 = Polynomial::variable(int(), 0, 1);
        let q = p.substitute(&[arg0, arg1]);
        assert_eq!(q.to_string(), "x1^2 + x1");
    }

    #[test]
    fn eval_example() {
        let p = sample_poly();
        assert_eq!(p.eval(&[big(1), big(2)]), big(17));
    }

    #[test]
    fn eval_is_substitution_by_constants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let caps = GenCaps::default();
        for _ in 0..40 {
            let p = random_polynomial(&int(), &mut rng, 2, &caps);
            let a = big(rng.random_range(-4..=4));
            let b = big(rng.random_range(-4..=4));
            let consts = vec![
                Polynomial::constant(int(), a.clone(), 0),
                Polynomial::constant(int(), b.clone(), 0),
            ];
            let subst = p.substitute(&consts);
            let direct = p.eval(&[a, b]);
            assert_eq!(subst, Polynomial::constant(int(), direct, 0));
        }
    }

    #[test]
    fn leibniz_randomized() {
        let caps = GenCaps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let p = random_polynomial(&int(), &mut rng, 3, &caps);
            let q = random_polynomial(&int(), &mut rng, 3, &caps);
            for v in 0..3 {
                let lhs = p.mul(&q).partial(v);
                let rhs = p.partial(v).mul(&q).add(&p.mul(&q.partial(v)));
                assert_eq!(lhs, rhs);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..60 {
            let p = random_polynomial(&BoolRig, &mut rng, 2, &caps);
            let q = random_polynomial(&BoolRig, &mut rng, 2, &caps);
            for v in 0..2 {
                let lhs = p.mul(&q).partial(v);
                let rhs = p.partial(v).mul(&q).add(&p.mul(&q.partial(v)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn display_descending_graded_lex() {
        assert_eq!(sample_poly().to_string(), "x1^2 + 3*x1*x2 + 5*x2");
        let zero: Polynomial<IntRig> = Polynomial::zero(int(), 3);
        assert_eq!(zero.to_string(), "0");
    }

    #[test]
    fn ambient_arity_is_explicit() {
        let p = Polynomial::variable(int(), 0, 3);
        assert_eq!(p.nvars(), 3);
        assert_eq!(p.max_var(), Some(0));
        let grown = p.with_ambient(5);
        assert_eq!(grown.nvars(), 5);
        // Equality distinguishes ambient arities.
        assert_ne!(p, grown);
    }

    #[test]
    #[should_panic(expected = "beyond ambient arity")]
    fn arity_violation_panics() {
        let _ = Polynomial::from_terms(int(), 1, [(Monomial::variable(2), big(1))]);
    }

    #[test]
    #[should_panic(expected = "substitution needs")]
    fn substitution_arity_shortfall_panics() {
        let p = sample_poly();
        let x = Polynomial::variable(int(), 0, 1);
        let _ = p.substitute(&[x]);
    }
}
