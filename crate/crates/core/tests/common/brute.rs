//! Exhaustive search over all half-edge residue assignments.

use std::collections::BTreeSet;

use itertools::Itertools;
use num::{ToPrimitive, Zero};
use stackydr::arith::Rational;
use stackydr::decorations::half_edge_ages;
use stackydr::graph::{enumerate_stable_graphs_up_to, StableGraph};
use stackydr::ramdata::LegWeight;
use stackydr::{enumerate_chi, WeightMode, WeightingSpace};

use super::Instance;

/// Every half-edge residue vector satisfying the leg, edge and vertex
/// congruences, found by exhaustive search.
pub fn brute_force(graph: &StableGraph, ages: &[Rational], legs: &[LegWeight], r: u64) -> BTreeSet<Vec<u64>> {
    let n = graph.num_legs();
    let ne = graph.num_edges();
    let ri = r as i64;
    let targets: Vec<i64> = (0..ne).map(|e| if ages[graph.edge_half_edges(e).0].is_zero() { 0 } else { ri - 1 }).collect();
    let offset = |v: usize| -> i64 {
        let mut s = Rational::zero();
        for (i, leg) in legs.iter().enumerate() {
            if graph.legs()[i] == v {
                s += &leg.weight;
            }
        }
        for e in 0..ne {
            let (hp, hm) = graph.edge_half_edges(e);
            for h in [hp, hm] {
                if graph.half_edge_vertex(h) == v {
                    s += &ages[h];
                }
            }
        }
        (-s).to_integer().to_i64().unwrap()
    };
    let offsets: Vec<i64> = (0..graph.num_vertices()).map(offset).collect();
    let vertex_of: Vec<usize> = (0..n + 2 * ne).map(|h| graph.half_edge_vertex(h)).collect();
    let mut out = BTreeSet::new();
    for halves in (0..2 * ne).map(|_| 0..r).multi_cartesian_product() {
        let mut w = vec![0u64; n];
        w.extend(&halves);
        let edges_ok = (0..ne).all(|e| {
            let (hp, hm) = graph.edge_half_edges(e);
            (w[hp] as i64 + w[hm] as i64 - targets[e]).rem_euclid(ri) == 0
        });
        let vertices_ok = (0..graph.num_vertices()).all(|v| {
            let s: i64 = (n..n + 2 * ne).filter(|&h| vertex_of[h] == v).map(|h| w[h] as i64).sum();
            (s - offsets[v]).rem_euclid(ri) == 0
        });
        if edges_ok && vertices_ok {
            out.insert(w);
        }
    }
    out
}

/// For every instance, graph with at most `max_edges` edges, the first
/// `chi_per_graph` labelings and each `r`, compares the weighting space with
/// the exhaustive search and its size with `r^{h¹}` or 0. Returns the number
/// of spaces checked.
pub fn check_weightings(instances: &[Instance], roots: &[u64], max_edges: usize, chi_per_graph: usize) -> Result<usize, String> {
    let mut checked = 0;
    for inst in instances {
        let ram = inst.raw.validate(&inst.group, &inst.rep).map_err(|e| e.to_string())?;
        let legs = ram.effective_weights(&inst.group, WeightMode::Extended).map_err(|e| e.to_string())?;
        let leg_classes = ram.leg_classes(&inst.group).map_err(|e| e.to_string())?;
        for graph in enumerate_stable_graphs_up_to(ram.genus, legs.len(), max_edges).map_err(|e| e.to_string())? {
            let labelings = enumerate_chi(&graph, &inst.group, &leg_classes).map_err(|e| e.to_string())?;
            for chi in labelings.into_iter().take(chi_per_graph) {
                let ages = half_edge_ages(&inst.group, &inst.rep, &chi).map_err(|e| e.to_string())?;
                for &r in roots {
                    let space = WeightingSpace::new(&graph, &ages, &legs, r).map_err(|e| e.to_string())?;
                    let fast: BTreeSet<Vec<u64>> = space.iter().collect();
                    let slow = brute_force(&graph, &ages, &legs, r);
                    if fast != slow {
                        return Err(format!("{}: r = {r}, {graph:?}: {} vs brute force {}", inst.label, fast.len(), slow.len()));
                    }
                    let full = r.pow(graph.first_betti() as u32);
                    if space.count() as usize != fast.len() || (space.count() != 0 && space.count() != full) {
                        return Err(format!("{}: r = {r}, {graph:?}: count {}", inst.label, space.count()));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}
