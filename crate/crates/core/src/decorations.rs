//! Conjugacy-class labelings of stable graphs and weightings mod `r`.

use std::collections::VecDeque;

use num::{BigInt, Zero};
use thiserror::Error;

use crate::arith::{is_prime, Rational};
use crate::graph::StableGraph;
use crate::group::{ClassId, FiniteGroup, GroupError};
use crate::ramdata::LegWeight;
use crate::rep::OneDimRep;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DecorationError {
    #[error("root order {0} is not prime")]
    NotPrime(u64),
    #[error("graph has {graph} legs but the data has {data} markings")]
    LegCount { graph: usize, data: usize },
    #[error("vertex {vertex} has non-integral offset {value}")]
    NonIntegralOffset { vertex: usize, value: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A class of `G` on every half-edge, legs included.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChiLabeling {
    classes: Vec<ClassId>,
}

impl ChiLabeling {
    pub fn new(classes: Vec<ClassId>) -> Self {
        ChiLabeling { classes }
    }

    pub fn class(&self, h: usize) -> ClassId {
        self.classes[h]
    }

    pub fn classes(&self) -> &[ClassId] {
        &self.classes
    }
}

/// All labelings with the prescribed leg classes, inverse classes on the two
/// halves of each edge and a satisfiable monodromy condition at each vertex.
/// Ordered lexicographically by the classes of the `h₊` halves.
pub fn enumerate_chi(graph: &StableGraph, group: &FiniteGroup, leg_classes: &[ClassId]) -> Result<Vec<ChiLabeling>, DecorationError> {
    let n = graph.num_legs();
    if leg_classes.len() != n {
        return Err(DecorationError::LegCount { graph: n, data: leg_classes.len() });
    }
    let ne = graph.num_edges();
    let nv = graph.num_vertices();
    // vertices become checkable once their last incident edge is labelled
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); ne + 1];
    for v in 0..nv {
        let last = graph
            .edges()
            .iter()
            .rposition(|&(a, b)| a == v || b == v)
            .map_or(0, |e| e + 1);
        ready[last].push(v);
    }
    let mut classes = vec![ClassId(0); graph.num_half_edges()];
    classes[..n].copy_from_slice(leg_classes);
    let vertex_ok = |classes: &[ClassId], v: usize| -> Result<bool, GroupError> {
        let at: Vec<ClassId> = graph.half_edges_at(v).into_iter().map(|h| classes[h]).collect();
        group.monodromy_satisfiable(&at, graph.vertex_genus(v))
    };
    for &v in &ready[0] {
        if !vertex_ok(&classes, v)? {
            return Ok(Vec::new());
        }
    }

    let mut out = Vec::new();
    let num_classes = group.classes().len();
    let mut choice = vec![0usize; ne];
    let mut e = 0usize;
    if ne == 0 {
        out.push(ChiLabeling::new(classes));
        return Ok(out);
    }
    // iterative backtracking over edge labels
    loop {
        if choice[e] == num_classes {
            if e == 0 {
                break;
            }
            choice[e] = 0;
            e -= 1;
            choice[e] += 1;
            continue;
        }
        let (hp, hm) = graph.edge_half_edges(e);
        let c = group.classes()[choice[e]].id;
        classes[hp] = c;
        classes[hm] = group.class_inverse(c)?;
        let mut ok = true;
        for &v in &ready[e + 1] {
            if !vertex_ok(&classes, v)? {
                ok = false;
                break;
            }
        }
        if !ok {
            choice[e] += 1;
        } else if e + 1 == ne {
            out.push(ChiLabeling::new(classes.clone()));
            choice[e] += 1;
        } else {
            e += 1;
        }
    }
    Ok(out)
}

/// Age of the class on each half-edge, in `[0, 1)`.
pub fn half_edge_ages(group: &FiniteGroup, rep: &OneDimRep, chi: &ChiLabeling) -> Result<Vec<Rational>, GroupError> {
    chi.classes
        .iter()
        .map(|&c| Ok(rep.age_of_class(group.class(c)?)))
        .collect()
}

/// `A(v, χ) = -Σ ages of edge halves at v - Σ weights of legs at v`.
pub fn vertex_offset(graph: &StableGraph, v: usize, ages: &[Rational], legs: &[LegWeight]) -> Result<i64, DecorationError> {
    let mut sum = Rational::zero();
    for h in graph.half_edges_at(v) {
        if graph.is_leg(h) {
            sum += &legs[h].weight;
        } else {
            sum += &ages[h];
        }
    }
    let value = -sum;
    if !value.is_integer() {
        return Err(DecorationError::NonIntegralOffset { vertex: v, value: value.to_string() });
    }
    let z: BigInt = value.to_integer();
    Ok(i64::try_from(z).expect("vertex offset fits in i64"))
}

/// The solution set of the weighting congruences for fixed `(Γ, χ, r)`.
///
/// Leg halves always carry weight 0. Each edge satisfies
/// `w₊ + w₋ ≡ t_e (mod r)` with `t_e = 0` for age-zero classes and `-1`
/// otherwise, and each vertex `Σ_{h∈v} w(h) ≡ A(v, χ) (mod r)`.
#[derive(Debug, Clone)]
pub struct WeightingSpace {
    r: u64,
    num_legs: usize,
    edges: Vec<(usize, usize)>,
    targets: Vec<u64>,
    offsets: Vec<u64>,
    free: Vec<usize>,
    // (edge, child vertex, child is the h₋ end) in leaves-first order
    tree: Vec<(usize, usize, bool)>,
    consistent: bool,
}

impl WeightingSpace {
    pub fn new(graph: &StableGraph, ages: &[Rational], legs: &[LegWeight], r: u64) -> Result<Self, DecorationError> {
        if !is_prime(r) {
            return Err(DecorationError::NotPrime(r));
        }
        if legs.len() != graph.num_legs() {
            return Err(DecorationError::LegCount { graph: graph.num_legs(), data: legs.len() });
        }
        let ri = r as i64;
        let offsets = (0..graph.num_vertices())
            .map(|v| vertex_offset(graph, v, ages, legs).map(|a| a.rem_euclid(ri) as u64))
            .collect::<Result<Vec<_>, _>>()?;
        let targets: Vec<u64> = (0..graph.num_edges())
            .map(|e| {
                let (hp, _) = graph.edge_half_edges(e);
                if ages[hp].is_zero() {
                    0
                } else {
                    r - 1
                }
            })
            .collect();

        // BFS spanning tree rooted at vertex 0
        let nv = graph.num_vertices();
        let mut seen = vec![false; nv];
        let mut in_tree = vec![false; graph.num_edges()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for (e, &(a, b)) in graph.edges().iter().enumerate() {
                if a == b {
                    continue;
                }
                let child = if a == v { b } else if b == v { a } else { continue };
                if !seen[child] {
                    seen[child] = true;
                    in_tree[e] = true;
                    order.push((e, child, child == b));
                    queue.push_back(child);
                }
            }
        }
        order.reverse();
        let free = (0..graph.num_edges()).filter(|&e| !in_tree[e]).collect();

        let mut space = WeightingSpace {
            r,
            num_legs: graph.num_legs(),
            edges: graph.edges().to_vec(),
            targets,
            offsets,
            free,
            tree: order,
            consistent: false,
        };
        // The root congruence is the sum of all others, so it closes either
        // for every choice of free weights or for none.
        space.consistent = space.solve(&vec![0; space.free.len()]).is_some();
        Ok(space)
    }

    pub fn root_order(&self) -> u64 {
        self.r
    }

    /// Number of free edges, equal to `h¹(Γ)`.
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn is_empty(&self) -> bool {
        !self.consistent
    }

    /// `r^{h¹}` or 0.
    pub fn count(&self) -> u64 {
        if self.consistent {
            self.r.pow(self.free.len() as u32)
        } else {
            0
        }
    }

    pub fn edge_target(&self, e: usize) -> u64 {
        self.targets[e]
    }

    /// `w₋` determined by `w₊` on edge `e`.
    pub fn partner(&self, e: usize, w_plus: u64) -> u64 {
        (self.targets[e] + self.r - w_plus) % self.r
    }

    /// Completes free `w₊` values to a full weighting (`w₊` per edge), or
    /// `None` when the root congruence fails.
    fn solve(&self, free_values: &[u64]) -> Option<Vec<u64>> {
        let r = self.r;
        let ne = self.edges.len();
        let mut w_plus = vec![0u64; ne];
        let mut sums = vec![0u64; self.offsets.len()];
        for (&e, &x) in self.free.iter().zip(free_values) {
            w_plus[e] = x;
            let (a, b) = self.edges[e];
            sums[a] = (sums[a] + x) % r;
            sums[b] = (sums[b] + self.partner(e, x)) % r;
        }
        for &(e, child, child_is_minus) in &self.tree {
            let need = (self.offsets[child] + r - sums[child]) % r;
            let (a, b) = self.edges[e];
            let (w_child, w_parent) = (need, self.partner(e, need));
            let parent = if child_is_minus { a } else { b };
            w_plus[e] = if child_is_minus { w_parent } else { w_child };
            sums[child] = (sums[child] + w_child) % r;
            sums[parent] = (sums[parent] + w_parent) % r;
        }
        (sums[0] == self.offsets[0]).then_some(w_plus)
    }

    /// `w₊` per edge for every weighting.
    pub fn iter_edge_weights(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let k = self.free.len();
        let total = self.count();
        (0..total).filter_map(move |mut idx| {
            let mut vals = vec![0u64; k];
            for v in vals.iter_mut() {
                *v = idx % self.r;
                idx /= self.r;
            }
            self.solve(&vals)
        })
    }

    /// Free edges that are loops. A loop adds the constant `t_e` to its
    /// vertex congruence, so its weight is independent of all others.
    pub fn free_loops(&self) -> Vec<usize> {
        self.free.iter().copied().filter(|&e| self.edges[e].0 == self.edges[e].1).collect()
    }

    /// Like [`Self::iter_edge_weights`] but with the free loops in `fixed`
    /// pinned to `w₊ = 0`; the full set is the product of these with `r`
    /// independent values on each pinned loop.
    pub fn iter_edge_weights_pinned<'a>(&'a self, fixed: &'a [usize]) -> impl Iterator<Item = Vec<u64>> + 'a {
        let open: Vec<usize> = (0..self.free.len()).filter(|&i| !fixed.contains(&self.free[i])).collect();
        let total = if self.consistent { self.r.pow(open.len() as u32) } else { 0 };
        (0..total).filter_map(move |mut idx| {
            let mut vals = vec![0u64; self.free.len()];
            for &i in &open {
                vals[i] = idx % self.r;
                idx /= self.r;
            }
            self.solve(&vals)
        })
    }

    /// Full weightings indexed by half-edge, legs carrying 0.
    pub fn iter(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        self.iter_edge_weights().map(move |wp| {
            let mut w = vec![0u64; self.num_legs + 2 * wp.len()];
            for (e, &x) in wp.iter().enumerate() {
                w[self.num_legs + 2 * e] = x;
                w[self.num_legs + 2 * e + 1] = self.partner(e, x);
            }
            w
        })
    }
}
