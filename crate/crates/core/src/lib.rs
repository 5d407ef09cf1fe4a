//! Executable Cartesian (reverse) differential categories.
//!
//! A morphism `f : A -> B` here is a concrete program — a tuple of
//! polynomials over a commutative rig, a matrix, or a tuple of smooth
//! closed-form expressions — and the crate equips each kind with two
//! differential combinators:
//!
//! * the forward derivative `D[f] : A x A -> B`, which pushes a tangent
//!   vector forward along `f`, and
//! * the reverse derivative `R[f] : A x B -> A`, which pulls a cotangent
//!   backward — the gradient operation underlying reverse-mode automatic
//!   differentiation.
//!
//! Everything else is derived structure: a dagger `f† = ι₁ ; R[f]` that
//! transposes linear maps, a contextual dagger that transposes only the
//! argument block while a context rides along, partial derivatives,
//! linearity predicates, a reconstruction of `D` from `R` (and back), and
//! the fibration of linear-in-the-second-argument maps in which `f ↦
//! (f, R[f])` is functorial.
//!
//! The [`checker`] module turns the defining identities of these
//! structures into randomized law suites that run over any of the
//! categories, with exact equality for polynomials and matrices and
//! sampled numeric equality for smooth maps; its `mutations` submodule
//! demonstrates that each suite actually rejects plausibly-wrong
//! derivative operators.
//!
//! Composition throughout is diagrammatic: `compose(f, g)` is "first `f`,
//! then `g`". Objects are arities — natural numbers counting coordinates —
//! and the product of arities is their sum, with [`Split`] recording how a
//! product arity divides into a left and right block.

pub mod category;
pub mod checker;
pub mod combinators;
pub mod mat;
pub mod parse;
pub mod poly;
pub mod poly_cat;
pub mod rig;
pub mod smooth;

pub use category::{
    Arity, Category, ForwardDifferential, GenCaps, GenerateMorphisms, ParseMorphism,
    ReverseDifferential, Side, Split,
};
pub use checker::{
    check_cdc, check_dagger, check_fibration, check_lemmas, check_rd, check_roundtrip, CheckReport,
    CheckSpec, Counterexample, ForwardMode, IdentityReport,
};
pub use combinators::{
    contextual_dagger, dagger, forward_from_reverse, is_linear, is_linear_in_second,
    linfib_compose, linfib_equal, linfib_identity, partial_derivative, reverse_from_forward_dagger,
    reverse_functor, LinFibMorphism, LinFibObj,
};
pub use mat::{MatCat, MatMorphism};
pub use parse::ParseError;
pub use poly::{Monomial, Polynomial};
pub use poly_cat::{PolyCat, PolyMorphism};
pub use rig::{
    BoolRig, IntRig, ModRig, NatRig, NumericRig, RatRig, Rig, RigName, Tropical, TropicalRig,
};
pub use smooth::{smooth_equal, Expr, SampledEq, SmoothCat, SmoothMorphism};

/// Polynomial maps with integer coefficients.
pub type IntPolyCat = PolyCat<IntRig>;
/// Polynomial maps with natural-number coefficients.
pub type NatPolyCat = PolyCat<NatRig>;
/// Polynomial maps with rational coefficients.
pub type RatPolyCat = PolyCat<RatRig>;
/// Polynomial maps over the Boolean rig (or / and).
pub type BoolPolyCat = PolyCat<BoolRig>;
/// Polynomial maps with coefficients mod a fixed modulus.
pub type ModPolyCat = PolyCat<ModRig>;
/// Polynomial maps over the tropical (max, +) rig.
pub type TropicalPolyCat = PolyCat<TropicalRig>;

/// Integer matrices.
pub type IntMatCat = MatCat<IntRig>;
/// Natural-number matrices.
pub type NatMatCat = MatCat<NatRig>;
/// Rational matrices.
pub type RatMatCat = MatCat<RatRig>;
/// Boolean matrices (relations under or / and).
pub type BoolMatCat = MatCat<BoolRig>;
/// Matrices with entries mod a fixed modulus.
pub type ModMatCat = MatCat<ModRig>;
/// Tropical matrices (shortest/longest-path algebra).
pub type TropicalMatCat = MatCat<TropicalRig>;
