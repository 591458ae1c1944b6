//! One-dimensional representations `G -> μ_m ⊂ C^*` and ages of classes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, rat, Rational};
use crate::group::{ConjClass, Elem, FiniteGroup};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("expected {expected} exponents, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("not a homomorphism: exponent of {g}*{h} is not the sum of exponents of {g} and {h}")]
    NotHomomorphism { g: Elem, h: Elem },
}

/// Representation description as accepted in job files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepSpec {
    pub exponents: Vec<u64>,
    pub modulus: u64,
}

/// `g` acts on `L` by `exp(2πi exponents[g] / modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneDimRep {
    modulus: u64,
    exponents: Vec<u64>,
    image_order: u64,
    kernel: Vec<Elem>,
}

impl OneDimRep {
    pub fn build(group: &FiniteGroup, exponents: &[u64], modulus: u64) -> Result<Self, RepError> {
        if modulus == 0 {
            return Err(RepError::ZeroModulus);
        }
        if exponents.len() != group.order() {
            return Err(RepError::WrongLength {
                expected: group.order(),
                got: exponents.len(),
            });
        }
        let exponents: Vec<u64> = exponents.iter().map(|e| e % modulus).collect();
        for g in 0..group.order() {
            for h in 0..group.order() {
                if exponents[group.mul(g, h)] != (exponents[g] + exponents[h]) % modulus {
                    return Err(RepError::NotHomomorphism { g, h });
                }
            }
        }
        let step = exponents.iter().fold(modulus, |acc, &e| gcd(acc, e));
        let image_order = modulus / step;
        let kernel = (0..group.order()).filter(|&g| exponents[g] == 0).collect();
        Ok(OneDimRep { modulus, exponents, image_order, kernel })
    }

    pub fn from_spec(group: &FiniteGroup, spec: &RepSpec) -> Result<Self, RepError> {
        Self::build(group, &spec.exponents, spec.modulus)
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::build(group, &vec![0; group.order()], 1).expect("trivial representation")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// The order `a` of the image `μ_a`.
    pub fn image_order(&self) -> u64 {
        self.image_order
    }

    pub fn kernel(&self) -> &[Elem] {
        &self.kernel
    }

    /// Residue `k` in `0..a` with `g` acting by `exp(2πi k / a)`.
    pub fn image_residue(&self, g: Elem) -> u64 {
        self.exponents[g] / (self.modulus / self.image_order)
    }

    pub fn age_of_elem(&self, g: Elem) -> Rational {
        rat(self.image_residue(g) as i64, self.image_order as i64)
    }

    /// The age `a_c(L)/r(c)` in `[0, 1)`.
    pub fn age_of_class(&self, class: &ConjClass) -> Rational {
        self.age_of_elem(class.members[0])
    }
}
