//! The shared categorical interface: Cartesian left additive structure,
//! differential capabilities, and morphism generation.
//!
//! Objects are arities. The product of objects is the sum of arities and the
//! terminal object is arity 0, so a "split" of an arity into a left and a
//! right block is all the typing information the structural morphisms need.
//! Composition is diagrammatic throughout: `compose(f, g)` is `f` followed
//! by `g`.
//!
//! Each category is a value (dictionary style) so an instance can carry
//! runtime data: the coefficient rig, or the sampling parameters of an
//! approximate equality oracle. Morphism equality goes through the
//! category's own oracle rather than `PartialEq`, because the smooth
//! category can only compare by sampling.

use std::fmt;

use rand_chacha::ChaCha8Rng;

use crate::parse::ParseError;

/// Objects are finite arities; the product is arity addition.
pub type Arity = usize;

/// A product decomposition `left + right` of an arity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Split {
    pub left: Arity,
    pub right: Arity,
}

impl Split {
    pub fn new(left: Arity, right: Arity) -> Self {
        Split { left, right }
    }

    pub fn total(&self) -> Arity {
        self.left + self.right
    }
}

/// Which block of a split a projection or injection addresses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// Equality oracle verdict, with diagnostic detail for sampled oracles
/// (worst point and values).
#[derive(Clone, Debug)]
pub struct EqOutcome {
    pub equal: bool,
    pub detail: Option<String>,
}

impl EqOutcome {
    pub fn exact(equal: bool) -> Self {
        EqOutcome {
            equal,
            detail: None,
        }
    }
}

/// Size caps for randomly generated morphisms. The defaults keep symbolic
/// law checking fast: arities up to 3, polynomial degree up to 3, at most 5
/// terms per component.
#[derive(Clone, Copy, Debug)]
pub struct GenCaps {
    pub max_arity: Arity,
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for GenCaps {
    fn default() -> Self {
        GenCaps {
            max_arity: 3,
            max_degree: 3,
            max_terms: 5,
        }
    }
}

/// A Cartesian left additive category on arity objects.
///
/// Required operations are the primitives (identities, diagrammatic
/// composition, tupling, projections, pointwise sums, zero maps, and the
/// equality oracle); the remaining structural morphisms are derived here
/// once, in terms of those primitives:
///
/// * `injection`: the additive injections, `iota0 = <1, 0>`, `iota1 = <0, 1>`;
/// * `product`: `f x g = <pi0 f, pi1 g>`;
/// * `exchange`: the middle-two swap `<pi0 x pi0, pi1 x pi1>`;
/// * `copair`: `<f | g> = pi0 f + pi1 g`;
/// * `oplus`: `f (+) g = <f iota0 | g iota1>`.
pub trait Category {
    type Mor: Clone + fmt::Debug + fmt::Display;

    /// Short name used in reports: `"poly"`, `"smooth"`, or `"mat"`.
    fn category_name(&self) -> &'static str;

    /// Name of the scalar domain used in reports, e.g. `"int"` or `"real"`.
    fn scalar_name(&self) -> String;

    fn dom(&self, f: &Self::Mor) -> Arity;
    fn cod(&self, f: &Self::Mor) -> Arity;

    fn identity(&self, a: Arity) -> Self::Mor;

    /// Diagrammatic composite: `f` then `g`. Panics unless
    /// `cod(f) == dom(g)`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;

    /// Tupling `<f, g>`. Panics unless the domains agree.
    fn pairing(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;

    fn projection(&self, split: Split, side: Side) -> Self::Mor;

    /// Pointwise sum. Panics unless the signatures agree.
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;

    fn zero(&self, dom: Arity, cod: Arity) -> Self::Mor;

    fn equal_detailed(&self, f: &Self::Mor, g: &Self::Mor) -> EqOutcome;

    fn equal(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        self.equal_detailed(f, g).equal
    }

    /// The unique map to the terminal object, which is also the zero map.
    fn bang(&self, a: Arity) -> Self::Mor {
        self.zero(a, 0)
    }

    /// Additive injection into a product: `iota0 = <1, 0>` from the left
    /// block, `iota1 = <0, 1>` from the right.
    fn injection(&self, split: Split, side: Side) -> Self::Mor {
        match side {
            Side::Left => self.pairing(
                &self.identity(split.left),
                &self.zero(split.left, split.right),
            ),
            Side::Right => self.pairing(
                &self.zero(split.right, split.left),
                &self.identity(split.right),
            ),
        }
    }

    /// `f x g`: acts as `f` on the left block and `g` on the right.
    fn product(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        let split = Split::new(self.dom(f), self.dom(g));
        self.pairing(
            &self.compose(&self.projection(split, Side::Left), f),
            &self.compose(&self.projection(split, Side::Right), g),
        )
    }

    /// The canonical `(A x B) x (C x D) -> (A x C) x (B x D)` swap of the
    /// middle blocks.
    fn exchange(&self, a: Arity, b: Arity, c: Arity, d: Arity) -> Self::Mor {
        let left = Split::new(a, b);
        let right = Split::new(c, d);
        let outer = self.product(
            &self.projection(left, Side::Left),
            &self.projection(right, Side::Left),
        );
        let inner = self.product(
            &self.projection(left, Side::Right),
            &self.projection(right, Side::Right),
        );
        self.pairing(&outer, &inner)
    }

    /// Additive copairing `<f | g> = pi0 f + pi1 g` out of a product.
    fn copair(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        assert_eq!(
            self.cod(f),
            self.cod(g),
            "copairing needs a common codomain"
        );
        let split = Split::new(self.dom(f), self.dom(g));
        self.add(
            &self.compose(&self.projection(split, Side::Left), f),
            &self.compose(&self.projection(split, Side::Right), g),
        )
    }

    /// `f (+) g = <f iota0 | g iota1>`, the additive parallel sum.
    fn oplus(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        let split = Split::new(self.cod(f), self.cod(g));
        self.copair(
            &self.compose(f, &self.injection(split, Side::Left)),
            &self.compose(g, &self.injection(split, Side::Right)),
        )
    }

    fn signature(&self, f: &Self::Mor) -> String {
        format!("{}->{}", self.dom(f), self.cod(f))
    }
}

/// A forward differential combinator `D` on the category.
pub trait ForwardDifferential: Category {
    /// `D[f] : A x A -> B` for `f : A -> B`.
    fn forward(&self, f: &Self::Mor) -> Self::Mor;
}

/// A reverse differential combinator `R` on the category.
pub trait ReverseDifferential: Category {
    /// `R[f] : A x B -> A` for `f : A -> B`.
    fn reverse(&self, f: &Self::Mor) -> Self::Mor;
}

/// Seedable morphism generation for the law checker.
pub trait GenerateMorphisms: Category {
    /// An arbitrary morphism within the caps.
    fn random_morphism(
        &self,
        rng: &mut ChaCha8Rng,
        dom: Arity,
        cod: Arity,
        caps: &GenCaps,
    ) -> Self::Mor;

    /// A morphism that is linear (additive and degree-homogeneous) by
    /// construction.
    fn random_linear(&self, rng: &mut ChaCha8Rng, dom: Arity, cod: Arity) -> Self::Mor;

    /// A morphism guaranteed nonlinear, when the category has any;
    /// the matrix category returns `None`.
    fn random_nonlinear(
        &self,
        rng: &mut ChaCha8Rng,
        dom: Arity,
        cod: Arity,
        caps: &GenCaps,
    ) -> Option<Self::Mor>;

    /// A morphism `ctx x arg -> cod` linear in the `arg` block by
    /// construction.
    fn random_linear_in_second(
        &self,
        rng: &mut ChaCha8Rng,
        ctx: Arity,
        arg: Arity,
        cod: Arity,
        caps: &GenCaps,
    ) -> Self::Mor;
}

/// Categories whose morphisms have a canonical text literal.
pub trait ParseMorphism: Category {
    fn parse_morphism(&self, src: &str) -> Result<Self::Mor, ParseError>;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_cat::PolyCat;
    use crate::rig::IntRig;

    fn cat() -> PolyCat<IntRig> {
        PolyCat::new(IntRig::default())
    }

    #[test]
    fn injection_examples() {
        let c = cat();
        let i1 = c.injection(Split::new(2, 1), Side::Right);
        assert_eq!(i1.to_string(), "poly(1->3){ 0 ; 0 ; x1 }");
        let i0 = c.injection(Split::new(2, 1), Side::Left);
        assert_eq!(i0.to_string(), "poly(2->3){ x1 ; x2 ; 0 }");
    }

    #[test]
    fn exchange_swaps_middle_blocks() {
        let c = cat();
        let ex = c.exchange(1, 1, 1, 1);
        assert_eq!(ex.to_string(), "poly(4->4){ x1 ; x3 ; x2 ; x4 }");
        // Exchanging twice is the identity.
        assert!(c.equal(&c.compose(&ex, &ex), &c.identity(4)));
        // Degenerate middle blocks collapse to the identity.
        let trivial = c.exchange(2, 0, 0, 3);
        assert!(c.equal(&trivial, &c.identity(5)));
    }

    #[test]
    fn copair_of_injections_is_pairing() {
        // <f iota0 + g iota1> agrees with <f, g> composed from the sum
        // decomposition of the domain: f iota0 + g iota1 = <f, g>.
        let c = cat();
        let mut rng = rand::SeedableRng::seed_from_u64(3);
        let caps = GenCaps::default();
        let f = c.random_morphism(&mut rng, 2, 2, &caps);
        let g = c.random_morphism(&mut rng, 2, 2, &caps);
        let lhs = c.add(
            &c.compose(&f, &c.injection(Split::new(2, 2), Side::Left)),
            &c.compose(&g, &c.injection(Split::new(2, 2), Side::Right)),
        );
        assert!(c.equal(&lhs, &c.pairing(&f, &g)));
        // And oplus agrees with product.
        assert!(c.equal(&c.oplus(&f, &g), &c.product(&f, &g)));
    }

    #[test]
    fn bang_is_empty_tuple() {
        let c = cat();
        let b = c.bang(3);
        assert_eq!(c.dom(&b), 3);
        assert_eq!(c.cod(&b), 0);
        assert_eq!(b.to_string(), "poly(3->0){ }");
    }

    #[test]
    fn left_additivity() {
        let c = cat();
        let mut rng = rand::SeedableRng::seed_from_u64(5);
        let caps = GenCaps::default();
        let x = c.random_morphism(&mut rng, 2, 2, &caps);
        let f = c.random_morphism(&mut rng, 2, 3, &caps);
        let g = c.random_morphism(&mut rng, 2, 3, &caps);
        // x(f + g) = xf + xg and x0 = 0.
        let lhs = c.compose(&x, &c.add(&f, &g));
        let rhs = c.add(&c.compose(&x, &f), &c.compose(&x, &g));
        assert!(c.equal(&lhs, &rhs));
        let z = c.zero(2, 3);
        assert!(c.equal(&c.compose(&x, &z), &c.zero(2, 3)));
        // Projections are additive: (f + g) pi0 = f pi0 + g pi0.
        let p0 = c.projection(Split::new(2, 1), Side::Left);
        let lhs = c.compose(&c.add(&f, &g), &p0);
        let rhs = c.add(&c.compose(&f, &p0), &c.compose(&g, &p0));
        assert!(c.equal(&lhs, &rhs));
    }

    #[test]
    fn pairing_with_bang_keeps_arity() {
        let c = cat();
        let mut rng = rand::SeedableRng::seed_from_u64(8);
        let caps = GenCaps::default();
        let f = c.random_morphism(&mut rng, 2, 2, &caps);
        let paired = c.pairing(&f, &c.bang(2));
        assert_eq!(c.cod(&paired), 2);
        assert!(c.equal(&paired, &f));
    }
}
