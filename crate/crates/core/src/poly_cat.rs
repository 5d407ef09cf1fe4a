//! The category of polynomial maps over a commutative rig.
//!
//! A morphism `n -> m` is an `m`-tuple of polynomials in `n` variables;
//! composition is substitution. Canonical polynomial form makes the equality
//! oracle exact, so every law this crate checks over a polynomial category
//! is decided structurally.
//!
//! With variables `x1..xn` doubling as `y = x{n+1}..` for the tangent and
//! cotangent blocks:
//!
//! * the forward derivative of `f : n -> m` is the map `2n -> m` whose `j`-th
//!   component is `sum_i d p_j / d x_i * x{n+i}`, the Jacobian applied to the
//!   second block;
//! * the reverse derivative is the map `n + m -> n` whose `i`-th component is
//!   `sum_j d p_j / d x_i * x{n+j}`, the transposed Jacobian applied to the
//!   trailing block.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::category::{
    Arity, Category, EqOutcome, ForwardDifferential, GenCaps, GenerateMorphisms,
    ReverseDifferential, Side, Split,
};
use crate::poly::{random_monomial, random_polynomial, Monomial, Polynomial};
use crate::rig::Rig;

/// A tuple of polynomials, each with ambient arity equal to the domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMorphism<R: Rig> {
    dom: Arity,
    cod: Arity,
    comps: Vec<Polynomial<R>>,
}

impl<R: Rig> PolyMorphism<R> {
    /// Normalizes every component to the ambient arity `dom`. Panics when a
    /// component mentions a variable beyond the domain or the count differs
    /// from `cod`.
    pub fn new(dom: Arity, cod: Arity, comps: Vec<Polynomial<R>>) -> Self {
        assert_eq!(comps.len(), cod, "component count must equal the codomain");
        let comps = comps.into_iter().map(|p| p.with_ambient(dom)).collect();
        PolyMorphism { dom, cod, comps }
    }

    pub fn dom(&self) -> Arity {
        self.dom
    }

    pub fn cod(&self) -> Arity {
        self.cod
    }

    pub fn components(&self) -> &[Polynomial<R>] {
        &self.comps
    }

    /// Evaluates all components at a point of the domain.
    pub fn eval(&self, point: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(point.len(), self.dom, "point arity mismatch");
        self.comps.iter().map(|p| p.eval(point)).collect()
    }
}

impl<R: Rig> fmt::Display for PolyMorphism<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.comps.iter().map(|p| p.to_string()).collect();
        if body.is_empty() {
            write!(f, "poly({}->{}){{ }}", self.dom, self.cod)
        } else {
            write!(
                f,
                "poly({}->{}){{ {} }}",
                self.dom,
                self.cod,
                body.join(" ; ")
            )
        }
    }
}

/// The polynomial category over the rig `R`.
#[derive(Clone, Debug)]
pub struct PolyCat<R: Rig> {
    rig: R,
}

impl<R: Rig + Default> Default for PolyCat<R> {
    fn default() -> Self {
        PolyCat::new(R::default())
    }
}

impl<R: Rig> PolyCat<R> {
    pub fn new(rig: R) -> Self {
        PolyCat { rig }
    }

    pub fn rig(&self) -> &R {
        &self.rig
    }

    /// Builds a morphism from components, normalizing ambient arities.
    pub fn morphism(&self, dom: Arity, comps: Vec<Polynomial<R>>) -> PolyMorphism<R> {
        let cod = comps.len();
        PolyMorphism::new(dom, cod, comps)
    }

    fn var(&self, index: usize, nvars: usize) -> Polynomial<R> {
        Polynomial::variable(self.rig.clone(), index, nvars)
    }
}

impl<R: Rig> Category for PolyCat<R> {
    type Mor = PolyMorphism<R>;

    fn category_name(&self) -> &'static str {
        "poly"
    }

    fn scalar_name(&self) -> String {
        self.rig.name()
    }

    fn dom(&self, f: &PolyMorphism<R>) -> Arity {
        f.dom
    }

    fn cod(&self, f: &PolyMorphism<R>) -> Arity {
        f.cod
    }

    fn identity(&self, a: Arity) -> PolyMorphism<R> {
        let comps = (0..a).map(|i| self.var(i, a)).collect();
        PolyMorphism::new(a, a, comps)
    }

    fn compose(&self, f: &PolyMorphism<R>, g: &PolyMorphism<R>) -> PolyMorphism<R> {
        assert_eq!(
            f.cod, g.dom,
            "cannot compose {}->{} with {}->{}",
            f.dom, f.cod, g.dom, g.cod
        );
        let comps = g
            .comps
            .iter()
            .map(|p| p.substitute(&f.comps).with_ambient(f.dom))
            .collect();
        PolyMorphism::new(f.dom, g.cod, comps)
    }

    fn pairing(&self, f: &PolyMorphism<R>, g: &PolyMorphism<R>) -> PolyMorphism<R> {
        assert_eq!(f.dom, g.dom, "pairing needs a common domain");
        let mut comps = f.comps.clone();
        comps.extend(g.comps.iter().cloned());
        PolyMorphism::new(f.dom, f.cod + g.cod, comps)
    }

    fn projection(&self, split: Split, side: Side) -> PolyMorphism<R> {
        let total = split.total();
        let (start, len) = match side {
            Side::Left => (0, split.left),
            Side::Right => (split.left, split.right),
        };
        let comps = (start..start + len).map(|i| self.var(i, total)).collect();
        PolyMorphism::new(total, len, comps)
    }

    fn add(&self, f: &PolyMorphism<R>, g: &PolyMorphism<R>) -> PolyMorphism<R> {
        assert_eq!(f.dom, g.dom, "sum needs matching domains");
        assert_eq!(f.cod, g.cod, "sum needs matching codomains");
        let comps = f
            .comps
            .iter()
            .zip(&g.comps)
            .map(|(p, q)| p.add(q))
            .collect();
        PolyMorphism::new(f.dom, f.cod, comps)
    }

    fn zero(&self, dom: Arity, cod: Arity) -> PolyMorphism<R> {
        let comps = (0..cod)
            .map(|_| Polynomial::zero(self.rig.clone(), dom))
            .collect();
        PolyMorphism::new(dom, cod, comps)
    }

    fn equal_detailed(&self, f: &PolyMorphism<R>, g: &PolyMorphism<R>) -> EqOutcome {
        EqOutcome::exact(f == g)
    }
}

impl<R: Rig> ForwardDifferential for PolyCat<R> {
    fn forward(&self, f: &PolyMorphism<R>) -> PolyMorphism<R> {
        let n = f.dom;
        let comps = f
            .comps
            .iter()
            .map(|p| {
                let mut acc = Polynomial::zero(self.rig.clone(), 2 * n);
                for i in 0..n {
                    let slope = p.partial(i).mul(&self.var(n + i, 2 * n));
                    acc = acc.add(&slope);
                }
                acc
            })
            .collect();
        PolyMorphism::new(2 * n, f.cod, comps)
    }
}

impl<R: Rig> ReverseDifferential for PolyCat<R> {
    fn reverse(&self, f: &PolyMorphism<R>) -> PolyMorphism<R> {
        let n = f.dom;
        let m = f.cod;
        let comps = (0..n)
            .map(|i| {
                let mut acc = Polynomial::zero(self.rig.clone(), n + m);
                for (j, p) in f.comps.iter().enumerate() {
                    let slope = p.partial(i).mul(&self.var(n + j, n + m));
                    acc = acc.add(&slope);
                }
                acc
            })
            .collect();
        PolyMorphism::new(n + m, n, comps)
    }
}

impl<R: Rig> GenerateMorphisms for PolyCat<R> {
    fn random_morphism(
        &self,
        rng: &mut ChaCha8Rng,
        dom: Arity,
        cod: Arity,
        caps: &GenCaps,
    ) -> PolyMorphism<R> {
        let comps = (0..cod)
            .map(|_| random_polynomial(&self.rig, rng, dom, caps))
            .collect();
        PolyMorphism::new(dom, cod, comps)
    }

    fn random_linear(&self, rng: &mut ChaCha8Rng, dom: Arity, cod: Arity) -> PolyMorphism<R> {
        let comps = (0..cod)
            .map(|_| {
                let terms = (0..dom).map(|i| {
                    (
                        Monomial::variable(i),
                        self.rig.sample_elem(rng.random_range(0..=5)),
                    )
                });
                Polynomial::from_terms(self.rig.clone(), dom, terms)
            })
            .collect();
        PolyMorphism::new(dom, cod, comps)
    }

    fn random_nonlinear(
        &self,
        rng: &mut ChaCha8Rng,
        dom: Arity,
        cod: Arity,
        caps: &GenCaps,
    ) -> Option<PolyMorphism<R>> {
        assert!(dom > 0 && cod > 0, "nonlinear map needs nonempty signature");
        // A polynomial map is linear exactly when every monomial has total
        // degree 1, so forcing a surviving term of another degree suffices.
        for _ in 0..64 {
            let mut f = self.random_morphism(rng, dom, cod, caps);
            let slot = rng.random_range(0..cod);
            let degree = if caps.max_degree >= 2 {
                rng.random_range(2..=caps.max_degree)
            } else {
                0
            };
            let mut forced = Monomial::unit();
            for _ in 0..degree {
                forced = forced.mul(&Monomial::variable(rng.random_range(0..dom)));
            }
            let bump = Polynomial::from_terms(
                self.rig.clone(),
                dom,
                [(forced, self.rig.sample_elem(rng.random_range(1..=5)))],
            );
            let mut comps = f.comps.clone();
            comps[slot] = comps[slot].add(&bump);
            f = PolyMorphism::new(dom, cod, comps);
            let nonlinear = f
                .comps
                .iter()
                .any(|p| p.terms().any(|(m, _)| m.degree() != 1));
            if nonlinear {
                return Some(f);
            }
        }
        None
    }

    fn random_linear_in_second(
        &self,
        rng: &mut ChaCha8Rng,
        ctx: Arity,
        arg: Arity,
        cod: Arity,
        caps: &GenCaps,
    ) -> PolyMorphism<R> {
        // Components sum q_j(context) * x_{ctx+j} over the argument block.
        let dom = ctx + arg;
        let comps = (0..cod)
            .map(|_| {
                let mut acc = Polynomial::zero(self.rig.clone(), dom);
                for j in 0..arg {
                    let n_terms = rng.random_range(0..=caps.max_terms.min(2));
                    let coeff_terms = (0..n_terms).map(|_| {
                        (
                            random_monomial(rng, ctx, caps.max_degree),
                            self.rig.sample_elem(rng.random_range(0..=5)),
                        )
                    });
                    let q = Polynomial::from_terms(self.rig.clone(), dom, coeff_terms);
                    acc = acc.add(&q.mul(&self.var(ctx + j, dom)));
                }
                acc
            })
            .collect();
        PolyMorphism::new(dom, cod, comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rig::{IntRig, TropicalRig};
    use num_bigint::BigInt;
    use rand::SeedableRng;

    fn cat() -> PolyCat<IntRig> {
        PolyCat::new(IntRig::default())
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// The running example `p(x1, x2) = x1^2 + 3 x1 x2 + 5 x2`.
    fn sample() -> PolyMorphism<IntRig> {
        let rig = IntRig::default();
        let p = Polynomial::from_terms(
            rig,
            2,
            [
                (Monomial::from_exponents(vec![2, 0]), big(1)),
                (Monomial::from_exponents(vec![1, 1]), big(3)),
                (Monomial::from_exponents(vec![0, 1]), big(5)),
            ],
        );
        PolyMorphism::new(2, 1, vec![p])
    }

    #[test]
    fn forward_of_sample() {
        let c = cat();
        let d = c.forward(&sample());
        assert_eq!(
            d.to_string(),
            "poly(4->1){ 2*x1*x3 + 3*x1*x4 + 3*x2*x3 + 5*x4 }"
        );
    }

    #[test]
    fn reverse_of_sample() {
        let c = cat();
        let r = c.reverse(&sample());
        assert_eq!(
            r.to_string(),
            "poly(3->2){ 2*x1*x3 + 3*x2*x3 ; 3*x1*x3 + 5*x3 }"
        );
    }

    #[test]
    fn reverse_of_cube() {
        let c = cat();
        let rig = IntRig::default();
        let q = Polynomial::from_terms(rig, 1, [(Monomial::from_exponents(vec![3]), big(1))]);
        let qm = PolyMorphism::new(1, 1, vec![q]);
        assert_eq!(c.reverse(&qm).to_string(), "poly(2->1){ 3*x1^2*x2 }");
    }

    #[test]
    fn forward_of_identity_is_second_projection() {
        let c = cat();
        let d = c.forward(&c.identity(2));
        let pi1 = c.projection(Split::new(2, 2), Side::Right);
        assert!(c.equal(&d, &pi1));
    }

    #[test]
    fn derivatives_of_constants_vanish() {
        let c = cat();
        let rig = IntRig::default();
        let k = PolyMorphism::new(2, 1, vec![Polynomial::constant(rig, big(9), 2)]);
        assert!(c.equal(&c.forward(&k), &c.zero(4, 1)));
        assert!(c.equal(&c.reverse(&k), &c.zero(3, 2)));
    }

    #[test]
    fn composition_is_substitution() {
        let c = cat();
        let rig = IntRig::default();
        let sq = PolyMorphism::new(
            1,
            1,
            vec![Polynomial::from_terms(
                rig.clone(),
                1,
                [(Monomial::from_exponents(vec![2]), big(1))],
            )],
        );
        let inc = PolyMorphism::new(
            1,
            1,
            vec![Polynomial::from_terms(
                rig,
                1,
                [(Monomial::variable(0), big(1)), (Monomial::unit(), big(1))],
            )],
        );
        assert_eq!(c.compose(&sq, &inc).to_string(), "poly(1->1){ x1^2 + 1 }");
        // Identity laws.
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = c.random_morphism(&mut rng, 2, 3, &GenCaps::default());
        assert!(c.equal(&c.compose(&c.identity(2), &f), &f));
        assert!(c.equal(&c.compose(&f, &c.identity(3)), &f));
    }

    #[test]
    #[should_panic(expected = "cannot compose")]
    fn composition_mismatch_panics() {
        let c = cat();
        let f = c.identity(2);
        let g = c.identity(3);
        let _ = c.compose(&f, &g);
    }

    #[test]
    fn projection_reverse_examples() {
        let c = cat();
        // R[pi1] for the split (1, 1) is <0, x3>.
        let pi1 = c.projection(Split::new(1, 1), Side::Right);
        assert_eq!(c.reverse(&pi1).to_string(), "poly(3->2){ 0 ; x3 }");
    }

    #[test]
    fn generated_linear_maps_are_linear() {
        let c = cat();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..20 {
            let f = c.random_linear(&mut rng, 3, 2);
            assert!(f
                .components()
                .iter()
                .all(|p| p.terms().all(|(m, _)| m.degree() == 1)));
        }
    }

    #[test]
    fn generated_nonlinear_maps_are_nonlinear() {
        let c = cat();
        let caps = GenCaps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let f = c.random_nonlinear(&mut rng, 2, 2, &caps).unwrap();
            assert!(f
                .components()
                .iter()
                .any(|p| p.terms().any(|(m, _)| m.degree() != 1)));
        }
    }

    #[test]
    fn tropical_polynomials_compose() {
        let c = PolyCat::new(TropicalRig);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let caps = GenCaps::default();
        let f = c.random_morphism(&mut rng, 2, 2, &caps);
        let g = c.random_morphism(&mut rng, 2, 1, &caps);
        let fg = c.compose(&f, &g);
        assert_eq!(c.dom(&fg), 2);
        assert_eq!(c.cod(&fg), 1);
    }

    #[test]
    fn eval_morphism() {
        let f = sample();
        assert_eq!(f.eval(&[big(1), big(2)]), vec![big(17)]);
    }
}
