//! The category of matrices over a commutative rig, acting on row vectors.
//!
//! A morphism `n -> m` is an `n x m` matrix `A`, sending the row vector `x`
//! to `x A`; diagrammatic composition is therefore plain matrix product.
//! Every morphism is linear, the dagger is transposition, and the
//! differential combinators are the block forms
//!
//! * forward: `D[A] = [0; A]`, a `2n x m` matrix ignoring the base point;
//! * reverse: `R[A] = [0; A^T]`, an `(n + m) x n` matrix applying the
//!   transpose to the trailing block.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::category::{
    Arity, Category, EqOutcome, ForwardDifferential, GenCaps, GenerateMorphisms,
    ReverseDifferential, Side, Split,
};
use crate::rig::Rig;

/// A row-major `dom x cod` matrix over the rig `R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatMorphism<R: Rig> {
    rig: R,
    dom: Arity,
    cod: Arity,
    entries: Vec<R::Elem>,
}

impl<R: Rig> MatMorphism<R> {
    pub fn new(rig: R, dom: Arity, cod: Arity, entries: Vec<R::Elem>) -> Self {
        assert_eq!(entries.len(), dom * cod, "entry count must be dom * cod");
        MatMorphism {
            rig,
            dom,
            cod,
            entries,
        }
    }

    pub fn dom(&self) -> Arity {
        self.dom
    }

    pub fn cod(&self) -> Arity {
        self.cod
    }

    pub fn entry(&self, row: usize, col: usize) -> &R::Elem {
        &self.entries[row * self.cod + col]
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    /// The transposed matrix, viewed as a map in the opposite direction.
    pub fn transpose(&self) -> MatMorphism<R> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cod {
            for i in 0..self.dom {
                entries.push(self.entry(i, j).clone());
            }
        }
        MatMorphism::new(self.rig.clone(), self.cod, self.dom, entries)
    }

    /// Applies the matrix to a row vector.
    pub fn apply(&self, row: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(row.len(), self.dom, "row arity mismatch");
        (0..self.cod)
            .map(|j| {
                row.iter().enumerate().fold(self.rig.zero(), |acc, (i, x)| {
                    self.rig.add(&acc, &self.rig.mul(x, self.entry(i, j)))
                })
            })
            .collect()
    }
}

impl<R: Rig> fmt::Display for MatMorphism<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dom == 0 {
            return write!(f, "mat({}->{}){{ }}", self.dom, self.cod);
        }
        let rows: Vec<String> = (0..self.dom)
            .map(|i| {
                (0..self.cod)
                    .map(|j| self.rig.format_elem(self.entry(i, j)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(
            f,
            "mat({}->{}){{ {} }}",
            self.dom,
            self.cod,
            rows.join(" ; ")
        )
    }
}

/// The matrix category over the rig `R`.
#[derive(Clone, Debug)]
pub struct MatCat<R: Rig> {
    rig: R,
}

impl<R: Rig + Default> Default for MatCat<R> {
    fn default() -> Self {
        MatCat::new(R::default())
    }
}

impl<R: Rig> MatCat<R> {
    pub fn new(rig: R) -> Self {
        MatCat { rig }
    }

    pub fn rig(&self) -> &R {
        &self.rig
    }

    pub fn morphism(&self, dom: Arity, cod: Arity, entries: Vec<R::Elem>) -> MatMorphism<R> {
        MatMorphism::new(self.rig.clone(), dom, cod, entries)
    }

    /// The dagger of the matrix category: transposition.
    pub fn dagger(&self, f: &MatMorphism<R>) -> MatMorphism<R> {
        f.transpose()
    }

    fn build(
        &self,
        dom: Arity,
        cod: Arity,
        mut at: impl FnMut(usize, usize) -> R::Elem,
    ) -> MatMorphism<R> {
        let mut entries = Vec::with_capacity(dom * cod);
        for i in 0..dom {
            for j in 0..cod {
                entries.push(at(i, j));
            }
        }
        MatMorphism::new(self.rig.clone(), dom, cod, entries)
    }
}

impl<R: Rig> Category for MatCat<R> {
    type Mor = MatMorphism<R>;

    fn category_name(&self) -> &'static str {
        "mat"
    }

    fn scalar_name(&self) -> String {
        self.rig.name()
    }

    fn dom(&self, f: &MatMorphism<R>) -> Arity {
        f.dom
    }

    fn cod(&self, f: &MatMorphism<R>) -> Arity {
        f.cod
    }

    fn identity(&self, a: Arity) -> MatMorphism<R> {
        self.build(a, a, |i, j| {
            if i == j {
                self.rig.one()
            } else {
                self.rig.zero()
            }
        })
    }

    fn compose(&self, f: &MatMorphism<R>, g: &MatMorphism<R>) -> MatMorphism<R> {
        assert_eq!(
            f.cod, g.dom,
            "cannot compose {}->{} with {}->{}",
            f.dom, f.cod, g.dom, g.cod
        );
        self.build(f.dom, g.cod, |i, j| {
            let mut acc = self.rig.zero();
            for k in 0..f.cod {
                acc = self
                    .rig
                    .add(&acc, &self.rig.mul(f.entry(i, k), g.entry(k, j)));
            }
            acc
        })
    }

    fn pairing(&self, f: &MatMorphism<R>, g: &MatMorphism<R>) -> MatMorphism<R> {
        assert_eq!(f.dom, g.dom, "pairing needs a common domain");
        self.build(f.dom, f.cod + g.cod, |i, j| {
            if j < f.cod {
                f.entry(i, j).clone()
            } else {
                g.entry(i, j - f.cod).clone()
            }
        })
    }

    fn projection(&self, split: Split, side: Side) -> MatMorphism<R> {
        let total = split.total();
        let (start, len) = match side {
            Side::Left => (0, split.left),
            Side::Right => (split.left, split.right),
        };
        self.build(total, len, |i, j| {
            if i == start + j {
                self.rig.one()
            } else {
                self.rig.zero()
            }
        })
    }

    fn add(&self, f: &MatMorphism<R>, g: &MatMorphism<R>) -> MatMorphism<R> {
        assert_eq!(f.dom, g.dom, "sum needs matching domains");
        assert_eq!(f.cod, g.cod, "sum needs matching codomains");
        self.build(f.dom, f.cod, |i, j| {
            self.rig.add(f.entry(i, j), g.entry(i, j))
        })
    }

    fn zero(&self, dom: Arity, cod: Arity) -> MatMorphism<R> {
        self.build(dom, cod, |_, _| self.rig.zero())
    }

    fn equal_detailed(&self, f: &MatMorphism<R>, g: &MatMorphism<R>) -> EqOutcome {
        if f.dom != g.dom || f.cod != g.cod {
            return EqOutcome::exact(false);
        }
        let equal = f
            .entries
            .iter()
            .zip(&g.entries)
            .all(|(a, b)| self.rig.elem_eq(a, b));
        EqOutcome::exact(equal)
    }
}

impl<R: Rig> ForwardDifferential for MatCat<R> {
    /// `D[A] = [0; A]`: zeros on the base block, `A` on the tangent block.
    fn forward(&self, f: &MatMorphism<R>) -> MatMorphism<R> {
        let n = f.dom;
        self.build(2 * n, f.cod, |i, j| {
            if i < n {
                self.rig.zero()
            } else {
                f.entry(i - n, j).clone()
            }
        })
    }
}

impl<R: Rig> ReverseDifferential for MatCat<R> {
    /// `R[A] = [0; A^T]`: zeros on the base block, the transpose on the
    /// cotangent block.
    fn reverse(&self, f: &MatMorphism<R>) -> MatMorphism<R> {
        let n = f.dom;
        self.build(n + f.cod, n, |i, j| {
            if i < n {
                self.rig.zero()
            } else {
                f.entry(j, i - n).clone()
            }
        })
    }
}

impl<R: Rig> GenerateMorphisms for MatCat<R> {
    fn random_morphism(
        &self,
        rng: &mut ChaCha8Rng,
        dom: Arity,
        cod: Arity,
        _caps: &GenCaps,
    ) -> MatMorphism<R> {
        self.build(dom, cod, |_, _| {
            self.rig.sample_elem(rng.random_range(0..=5))
        })
    }

    fn random_linear(&self, rng: &mut ChaCha8Rng, dom: Arity, cod: Arity) -> MatMorphism<R> {
        self.random_morphism(rng, dom, cod, &GenCaps::default())
    }

    /// Every matrix map is linear, so there is nothing to return.
    fn random_nonlinear(
        &self,
        _rng: &mut ChaCha8Rng,
        _dom: Arity,
        _cod: Arity,
        _caps: &GenCaps,
    ) -> Option<MatMorphism<R>> {
        None
    }

    fn random_linear_in_second(
        &self,
        rng: &mut ChaCha8Rng,
        ctx: Arity,
        arg: Arity,
        cod: Arity,
        _caps: &GenCaps,
    ) -> MatMorphism<R> {
        // Linearity in the argument block forces zeros on the context rows.
        self.build(ctx + arg, cod, |i, _| {
            if i < ctx {
                self.rig.zero()
            } else {
                self.rig.sample_elem(rng.random_range(0..=5))
            }
        })
    }
}
