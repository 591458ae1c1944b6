//! The cyclic extension `G(r)`: the fiber product of `φ: G -> μ_a` with the
//! `r`-th power map `μ_{ar} -> μ_a`.
//!
//! Elements are pairs `(g, e)` with `e` in `0..r`, stored at index `g·r + e`.
//! The pair corresponds to `(g, ζ)` with `ζ = exp(2πi (k_g + a·e) / (a·r))`,
//! where `exp(2πi k_g / a) = φ(g)`; `e = 0` is the canonical splitting.

use crate::group::{ClassId, Elem, FiniteGroup};
use crate::rep::OneDimRep;

#[derive(Debug, Clone)]
pub struct CyclicExtension {
    root_order: u64,
    image_order: u64,
    ext: FiniteGroup,
    beta: Vec<Elem>,
    alpha: Vec<u64>,
}

/// A conjugacy class of `G(r)` over a class of `G`, tagged by its residue `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedClass {
    pub tag: u64,
    pub class: ClassId,
    /// `α` of any member, as a residue mod `a·r`.
    pub alpha: u64,
}

impl CyclicExtension {
    pub fn build(base: &FiniteGroup, rep: &OneDimRep, r: u64) -> Self {
        assert!(r >= 1, "root order must be positive");
        let n = base.order();
        let ru = r as usize;
        let a = rep.image_order();
        let order = n * ru;
        let mut mul = vec![0u32; order * order];
        for g in 0..n {
            for h in 0..n {
                let gh = base.mul(g, h);
                let carry = (rep.image_residue(g) + rep.image_residue(h) - rep.image_residue(gh)) / a;
                for e in 0..ru {
                    for f in 0..ru {
                        let prod = (e + f + carry as usize) % ru;
                        mul[(g * ru + e) * order + h * ru + f] = (gh * ru + prod) as u32;
                    }
                }
            }
        }
        let ext = FiniteGroup::from_flat_unchecked(order, mul);
        let beta = (0..order).map(|x| x / ru).collect();
        let alpha = (0..order)
            .map(|x| rep.image_residue(x / ru) + a * (x % ru) as u64)
            .collect();
        CyclicExtension { root_order: r, image_order: a, ext, beta, alpha }
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.ext
    }

    pub fn beta(&self, x: Elem) -> Elem {
        self.beta[x]
    }

    /// `α(x)` as a residue modulo `a·r`.
    pub fn alpha(&self, x: Elem) -> u64 {
        self.alpha[x]
    }

    pub fn alpha_modulus(&self) -> u64 {
        self.image_order * self.root_order
    }

    pub fn element(&self, g: Elem, e: u64) -> Elem {
        g * self.root_order as usize + e as usize
    }

    /// The classes of `G(r)` mapping onto `class`, ordered by tag `e`.
    pub fn lift_classes(&self, base: &FiniteGroup, class: ClassId) -> Vec<LiftedClass> {
        let rep_elem = base.class(class).expect("class of the base group").members[0];
        (0..self.root_order)
            .map(|e| {
                let x = self.element(rep_elem, e);
                LiftedClass {
                    tag: e,
                    class: self.ext.class_of(x).id,
                    alpha: self.alpha[x],
                }
            })
            .collect()
    }
}
