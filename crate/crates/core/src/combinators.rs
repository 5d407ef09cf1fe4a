//! Constructions derived from the reverse differential combinator: the
//! dagger on linear maps, its contextual generalization, the forward
//! combinator recovered from two applications of the reverse one, partial
//! derivatives, linearity tests, and the fibration of linear maps over
//! base maps together with the functor into it induced by `R`.
//!
//! Each operation records the split annotations it threads through the
//! structural morphisms, since every projection and injection below acts on
//! a concatenation `A x B` whose boundary is not recoverable from the total
//! arity alone.

use crate::category::{Arity, Category, ForwardDifferential, ReverseDifferential, Side, Split};

/// The dagger of a map `f : A -> B`, defined as `iota1 ; R[f]` where
/// `iota1 : B -> A x B` pads with zero on the left. For linear `f` this is
/// the transpose; the construction is total, so for nonlinear `f` it simply
/// yields some map `B -> A`.
pub fn dagger<C: ReverseDifferential>(cat: &C, f: &C::Mor) -> C::Mor {
    let a = cat.dom(f);
    let b = cat.cod(f);
    // iota1 : B -> A x B, then R[f] : A x B -> A.
    let inj = cat.injection(Split::new(a, b), Side::Right);
    cat.compose(&inj, &cat.reverse(f))
}

/// The dagger of `f : C x A -> B` taken fiberwise over the context `C`:
/// `(iota0 x 1) ; R[f] ; pi1` of type `C x B -> A`, where
/// `iota0 : C -> C x A` pads the argument slot with zero and the final
/// projection discards the context component of the gradient.
pub fn contextual_dagger<C: ReverseDifferential>(cat: &C, f: &C::Mor, context: Arity) -> C::Mor {
    let total = cat.dom(f);
    assert!(
        context <= total,
        "context {} exceeds domain arity {}",
        context,
        total
    );
    let arg = total - context;
    let b = cat.cod(f);
    // iota0 x 1 : C x B -> (C x A) x B.
    let pad = cat.product(
        &cat.injection(Split::new(context, arg), Side::Left),
        &cat.identity(b),
    );
    // R[f] : (C x A) x B -> C x A, then pi1 : C x A -> A.
    let keep_arg = cat.projection(Split::new(context, arg), Side::Right);
    cat.compose(&cat.compose(&pad, &cat.reverse(f)), &keep_arg)
}

/// The forward combinator recovered from the reverse one:
/// `D[f] = (iota0 x 1) ; R[R[f]] ; pi1`. Here `f : A -> B`, so
/// `R[f] : A x B -> A` and its reverse has type `(A x B) x A -> A x B`;
/// the padding map `iota0 x 1 : A x A -> (A x B) x A` zeroes the middle
/// slot and the projection keeps the `B` component.
pub fn forward_from_reverse<C: ReverseDifferential>(cat: &C, f: &C::Mor) -> C::Mor {
    let a = cat.dom(f);
    let b = cat.cod(f);
    let pad = cat.product(
        &cat.injection(Split::new(a, b), Side::Left),
        &cat.identity(a),
    );
    let rr = cat.reverse(&cat.reverse(f));
    let keep = cat.projection(Split::new(a, b), Side::Right);
    cat.compose(&cat.compose(&pad, &rr), &keep)
}

/// The reverse combinator recovered from the forward one and the contextual
/// dagger: `R[f] = D[f] dagger[A]`, the dagger of `D[f] : A x A -> B` taken
/// in the context of its first factor.
pub fn reverse_from_forward_dagger<C: ForwardDifferential + ReverseDifferential>(
    cat: &C,
    f: &C::Mor,
) -> C::Mor {
    let a = cat.dom(f);
    contextual_dagger(cat, &cat.forward(f), a)
}

/// The partial derivative of `f : A x B -> C` in its second factor:
/// `D_B[f] = (1 x iota1) ; D[f]` of type `A x (B x B) -> C`, freezing the
/// `A` component (zero tangent) and differentiating along `B` only.
pub fn partial_derivative<C: ForwardDifferential>(cat: &C, f: &C::Mor, split: Split) -> C::Mor {
    assert_eq!(
        cat.dom(f),
        split.total(),
        "split {}+{} must cover the domain {}",
        split.left,
        split.right,
        cat.dom(f)
    );
    // 1 x iota1 : A x (B x B) -> (A x B) x (A x B) is assembled directly as
    // a pairing of the two halves the forward derivative expects:
    //   point half  <pi0, pi0 pi1> : A x (B x B) -> A x B
    //   tangent half <0, pi1 pi1>  : A x (B x B) -> A x B
    let outer = Split::new(split.left, 2 * split.right);
    let inner = Split::new(split.right, split.right);
    let ctx = cat.projection(outer, Side::Left);
    let args = cat.projection(outer, Side::Right);
    let arg_point = cat.compose(&args, &cat.projection(inner, Side::Left));
    let arg_tangent = cat.compose(&args, &cat.projection(inner, Side::Right));
    let point = cat.pairing(&ctx, &arg_point);
    let tangent = cat.pairing(
        &cat.zero(split.left + 2 * split.right, split.left),
        &arg_tangent,
    );
    cat.compose(&cat.pairing(&point, &tangent), &cat.forward(f))
}

/// Whether `f` is linear: `D[f] = pi1 ; f`, i.e. the derivative ignores the
/// base point and acts as `f` on the tangent.
pub fn is_linear<C: ForwardDifferential>(cat: &C, f: &C::Mor) -> bool {
    let a = cat.dom(f);
    let pi1 = cat.projection(Split::new(a, a), Side::Right);
    cat.equal(&cat.forward(f), &cat.compose(&pi1, f))
}

/// Whether `f : C x A -> B` is linear in its second factor:
/// `(iota0 x iota1) ; ex ; D[f] = f`, where `iota0 : C -> C x C` pads the
/// context tangent with zero, `iota1 : A -> A x A` pads the argument point
/// with zero, and `ex : (C x C) x (A x A) -> (C x A) x (C x A)` reshuffles
/// into the point/tangent blocks the forward derivative expects.
pub fn is_linear_in_second<C: ForwardDifferential>(cat: &C, f: &C::Mor, context: Arity) -> bool {
    let total = cat.dom(f);
    assert!(context <= total, "context exceeds domain arity");
    let arg = total - context;
    let pad = cat.product(
        &cat.injection(Split::new(context, context), Side::Left),
        &cat.injection(Split::new(arg, arg), Side::Right),
    );
    let ex = cat.exchange(context, context, arg, arg);
    let lhs = cat.compose(&cat.compose(&pad, &ex), &cat.forward(f));
    cat.equal(&lhs, f)
}

/// An object of the fibration of linear maps: a base arity together with a
/// fiber arity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LinFibObj {
    pub base: Arity,
    pub fiber: Arity,
}

impl LinFibObj {
    pub fn new(base: Arity, fiber: Arity) -> Self {
        LinFibObj { base, fiber }
    }
}

/// A morphism `(A, X) -> (B, Y)` of the fibration: a base map `f : A -> B`
/// together with a fiber map `g : A x Y -> X` required to be linear in `Y`.
#[derive(Clone, Debug)]
pub struct LinFibMorphism<M> {
    pub dom: LinFibObj,
    pub cod: LinFibObj,
    pub base: M,
    pub fiber: M,
}

impl<M> LinFibMorphism<M> {
    /// Builds a fibration morphism, checking signatures eagerly and the
    /// linearity side condition with the category's equality oracle.
    pub fn new<C>(cat: &C, dom: LinFibObj, cod: LinFibObj, base: M, fiber: M) -> Self
    where
        C: ForwardDifferential<Mor = M>,
        M: Clone,
    {
        assert_eq!(cat.dom(&base), dom.base, "base map domain mismatch");
        assert_eq!(cat.cod(&base), cod.base, "base map codomain mismatch");
        assert_eq!(
            cat.dom(&fiber),
            dom.base + cod.fiber,
            "fiber map must accept the base point and the target fiber"
        );
        assert_eq!(cat.cod(&fiber), dom.fiber, "fiber map codomain mismatch");
        assert!(
            is_linear_in_second(cat, &fiber, dom.base),
            "fiber map must be linear in the fiber argument"
        );
        LinFibMorphism {
            dom,
            cod,
            base,
            fiber,
        }
    }
}

/// The identity of `(A, X)`: base `1_A`, fiber `pi1 : A x X -> X`.
pub fn linfib_identity<C>(cat: &C, obj: LinFibObj) -> LinFibMorphism<C::Mor>
where
    C: ForwardDifferential,
{
    let base = cat.identity(obj.base);
    let fiber = cat.projection(Split::new(obj.base, obj.fiber), Side::Right);
    LinFibMorphism::new(cat, obj, obj, base, fiber)
}

/// Composition in the fibration: bases compose as `f ; f'` while fibers
/// pull back along the first base map,
/// `<pi0, <pi0 f, pi1>> ; (1 x g') ; g : A x Z -> X`.
pub fn linfib_compose<C>(
    cat: &C,
    first: &LinFibMorphism<C::Mor>,
    second: &LinFibMorphism<C::Mor>,
) -> LinFibMorphism<C::Mor>
where
    C: ForwardDifferential,
{
    assert_eq!(first.cod, second.dom, "fibration composition mismatch");
    let a = first.dom.base;
    let z = second.cod.fiber;
    let base = cat.compose(&first.base, &second.base);
    // A x Z with pi0 : -> A, pi1 : -> Z.
    let split = Split::new(a, z);
    let pi0 = cat.projection(split, Side::Left);
    let pi1 = cat.projection(split, Side::Right);
    // <pi0, <pi0 f, pi1>> : A x Z -> A x (B x Z).
    let shuffled = cat.pairing(&pi0, &cat.pairing(&cat.compose(&pi0, &first.base), &pi1));
    // 1 x g' : A x (B x Z) -> A x Y.
    let lift = cat.product(&cat.identity(a), &second.fiber);
    let fiber = cat.compose(&cat.compose(&shuffled, &lift), &first.fiber);
    LinFibMorphism::new(cat, first.dom, second.cod, base, fiber)
}

/// The functor induced by the reverse combinator: `f : A -> B` maps to the
/// fibration morphism `(A, A) -> (B, B)` with base `f` and fiber `R[f]`.
pub fn reverse_functor<C>(cat: &C, f: &C::Mor) -> LinFibMorphism<C::Mor>
where
    C: ForwardDifferential + ReverseDifferential,
{
    let a = cat.dom(f);
    let b = cat.cod(f);
    LinFibMorphism::new(
        cat,
        LinFibObj::new(a, a),
        LinFibObj::new(b, b),
        f.clone(),
        cat.reverse(f),
    )
}

/// Equality of fibration morphisms, component-wise.
pub fn linfib_equal<C>(cat: &C, f: &LinFibMorphism<C::Mor>, g: &LinFibMorphism<C::Mor>) -> bool
where
    C: Category,
{
    f.dom == g.dom && f.cod == g.cod && cat.equal(&f.base, &g.base) && cat.equal(&f.fiber, &g.fiber)
}
