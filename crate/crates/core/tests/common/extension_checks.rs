//! Elementwise checks of `G(r)` against its defining exact sequence.

use std::collections::BTreeSet;

use itertools::Itertools;
use num::Zero;
use stackydr::arith::{int, Rational};
use stackydr::group::ClassId;
use stackydr::{CyclicExtension, FiniteGroup, OneDimRep};

pub fn bases() -> Vec<(&'static str, FiniteGroup, OneDimRep)> {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let sign: Vec<u64> = (0..6).map(|g| u64::from(s3.element_order(g) == 2)).collect();
    vec![
        ("C2/id", c2.clone(), OneDimRep::build(&c2, &[0, 1], 2).unwrap()),
        ("S3/sign", s3.clone(), OneDimRep::build(&s3, &sign, 2).unwrap()),
        ("S3/trivial", s3.clone(), OneDimRep::trivial(&s3)),
    ]
}

pub const ROOTS: [u64; 3] = [2, 3, 5];

/// `|G(r)| = r|G|`, `β` and `α` are homomorphisms, `α mod a = φ∘β`, `(β, α)`
/// is injective, `β` is onto with central cyclic kernel of order `r`.
pub fn check_structure(base: &FiniteGroup, rep: &OneDimRep, r: u64) -> Result<(), String> {
    let a = rep.image_order();
    let ext = CyclicExtension::build(base, rep, r);
    let g = ext.group();
    let n = g.order();
    if n != r as usize * base.order() {
        return Err(format!("order {n}"));
    }
    for x in 0..n {
        for y in 0..n {
            let xy = g.mul(x, y);
            if ext.beta(xy) != base.mul(ext.beta(x), ext.beta(y)) {
                return Err(format!("beta not multiplicative at ({x}, {y})"));
            }
            if ext.alpha(xy) != (ext.alpha(x) + ext.alpha(y)) % (a * r) {
                return Err(format!("alpha not multiplicative at ({x}, {y})"));
            }
        }
        if ext.alpha(x) % a != rep.image_residue(ext.beta(x)) {
            return Err(format!("square at {x} does not commute"));
        }
    }
    if (0..n).map(|x| ext.beta(x)).collect::<BTreeSet<_>>().len() != base.order() {
        return Err("beta not onto".into());
    }
    if (0..n).map(|x| (ext.beta(x), ext.alpha(x))).collect::<BTreeSet<_>>().len() != n {
        return Err("(beta, alpha) not injective".into());
    }
    let kernel: Vec<usize> = (0..n).filter(|&x| ext.beta(x) == base.identity()).collect();
    if kernel.len() as u64 != r || !kernel.iter().any(|&x| g.element_order(x) == r) {
        return Err("kernel of beta is not cyclic of order r".into());
    }
    if !kernel.iter().all(|&x| (0..n).all(|y| g.mul(x, y) == g.mul(y, x))) {
        return Err("kernel of beta is not central".into());
    }
    Ok(())
}

/// Each base class has exactly `r` classes above it, distinguished by `α`.
pub fn check_lift_classes(base: &FiniteGroup, rep: &OneDimRep, r: u64) -> Result<(), String> {
    let ext = CyclicExtension::build(base, rep, r);
    for class in base.classes() {
        let lifts = ext.lift_classes(base, class.id);
        let via_tags: BTreeSet<ClassId> = lifts.iter().map(|l| l.class).collect();
        let over: BTreeSet<ClassId> = ext
            .group()
            .classes()
            .iter()
            .filter(|c| base.class_of(ext.beta(c.members[0])).id == class.id)
            .map(|c| c.id)
            .collect();
        let alphas: BTreeSet<u64> = lifts.iter().map(|l| l.alpha).collect();
        if via_tags.len() as u64 != r || via_tags != over || alphas.len() as u64 != r {
            return Err(format!("class {:?}: {} tagged lifts, {} classes above", class.id, via_tags.len(), over.len()));
        }
    }
    Ok(())
}

/// For base classes satisfying the monodromy condition in genus `≤ 1` with
/// `n ≤ 3` points, lifts with tags `e_i` satisfy it in `G(r)` exactly when
/// `Σ e_i ≡ -Σ age_i (mod r)`. Returns the number of tag vectors checked.
pub fn check_residue_criterion(base: &FiniteGroup, rep: &OneDimRep, r: u64) -> Result<usize, String> {
    let ext = CyclicExtension::build(base, rep, r);
    let ids: Vec<ClassId> = base.classes().iter().map(|c| c.id).collect();
    let lifts: Vec<_> = ids.iter().map(|&c| ext.lift_classes(base, c)).collect();
    let mut checked = 0;
    for genus in 0..=1u32 {
        for n in 1..=3usize {
            for combo in (0..ids.len()).combinations_with_replacement(n) {
                let classes: Vec<ClassId> = combo.iter().map(|&i| ids[i]).collect();
                if !base.monodromy_satisfiable(&classes, genus).unwrap() {
                    continue;
                }
                let age_sum: Rational =
                    combo.iter().map(|&i| rep.age_of_class(&base.classes()[i])).fold(Rational::zero(), |s, x| s + x);
                if !age_sum.is_integer() {
                    return Err(format!("ages of {classes:?} sum to {age_sum}"));
                }
                for tags in (0..n).map(|_| 0..r).multi_cartesian_product() {
                    let lifted: Vec<ClassId> = combo.iter().zip(&tags).map(|(&i, &e)| lifts[i][e as usize].class).collect();
                    let found = ext.group().monodromy_satisfiable(&lifted, genus).unwrap();
                    let residue = int(tags.iter().sum::<u64>() as i64) + &age_sum;
                    let predicted = (residue.to_integer() % r as i64).is_zero();
                    if found != predicted {
                        return Err(format!("r = {r}, g = {genus}, classes {classes:?}, tags {tags:?}: search {found}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}
