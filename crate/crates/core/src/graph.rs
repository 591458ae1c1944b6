//! Stable graphs: enumeration up to isomorphism, canonical forms and
//! automorphism counts.
//!
//! A graph with `n` legs and `E` edges has `n + 2E` half-edges. Half-edge `i < n`
//! is the leg carrying marking `i + 1`; edge `e` has half-edges `n + 2e` (`h₊`)
//! and `n + 2e + 1` (`h₋`). Automorphisms fix legs pointwise.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `3g - 3 + n` accepted by [`enumerate_stable_graphs`].
pub const MAX_DIMENSION: i64 = 12;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("(g, n) = ({g}, {n}) is unstable: 2g - 2 + n must be positive")]
    UnstablePair { g: u32, n: usize },
    #[error("3g - 3 + n = {0} exceeds the enumeration guard {MAX_DIMENSION}")]
    TooLarge(i64),
    #[error("vertex {0} is referenced but does not exist")]
    BadVertex(usize),
    #[error("vertex {0} violates 2g(v) - 2 + val(v) > 0")]
    UnstableVertex(usize),
    #[error("graph is disconnected")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StableGraph {
    genera: Vec<u32>,
    legs: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

/// A graph relabelled into canonical vertex order, with vertex labels `V` and
/// half-edge labels `H`. Two decorated graphs are isomorphic (fixing legs)
/// exactly when their canonical forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm<V, H> {
    /// `(genus, label)` per vertex.
    pub vertices: Vec<(u32, V)>,
    /// `(vertex, label)` per marking.
    pub legs: Vec<(usize, H)>,
    /// Sorted edges; each edge lists its smaller endpoint first.
    pub edges: Vec<((usize, H), (usize, H))>,
}

pub type GraphKey = CanonicalForm<(), ()>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[usize; 2]>,
    pub legs: Vec<LegJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegJson {
    pub vertex: usize,
    pub marking: usize,
}

impl StableGraph {
    pub fn new(genera: Vec<u32>, legs: Vec<usize>, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let nv = genera.len();
        if let Some(&v) = legs.iter().chain(edges.iter().flat_map(|(a, b)| [a, b])).find(|&&v| v >= nv) {
            return Err(GraphError::BadVertex(v));
        }
        let g = StableGraph { genera, legs, edges };
        if let Some(v) = (0..nv).find(|&v| !g.is_stable_at(v)) {
            return Err(GraphError::UnstableVertex(v));
        }
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn smooth(genus: u32, n: usize) -> Result<Self, GraphError> {
        Self::new(vec![genus], vec![0; n], vec![])
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        let mut legs = vec![usize::MAX; json.legs.len()];
        for leg in &json.legs {
            if leg.marking == 0 || leg.marking > legs.len() {
                return Err(GraphError::BadVertex(leg.vertex));
            }
            legs[leg.marking - 1] = leg.vertex;
        }
        Self::new(
            json.vertices.iter().map(|v| v.genus).collect(),
            legs,
            json.edges.iter().map(|e| (e[0], e[1])).collect(),
        )
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.genera.iter().map(|&genus| VertexJson { genus }).collect(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            legs: self
                .legs
                .iter()
                .enumerate()
                .map(|(i, &vertex)| LegJson { vertex, marking: i + 1 })
                .collect(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_legs(&self) -> usize {
        self.legs.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.legs.len() + 2 * self.edges.len()
    }

    pub fn vertex_genus(&self, v: usize) -> u32 {
        self.genera[v]
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    /// Vertex of each leg, indexed by marking - 1.
    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    /// `(vertex of h₊, vertex of h₋)` per edge.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_half_edges(&self, e: usize) -> (usize, usize) {
        let n = self.legs.len();
        (n + 2 * e, n + 2 * e + 1)
    }

    pub fn half_edge_vertex(&self, h: usize) -> usize {
        let n = self.legs.len();
        if h < n {
            self.legs[h]
        } else {
            let (a, b) = self.edges[(h - n) / 2];
            if (h - n).is_multiple_of(2) {
                a
            } else {
                b
            }
        }
    }

    pub fn is_leg(&self, h: usize) -> bool {
        h < self.legs.len()
    }

    pub fn half_edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.num_half_edges()).filter(|&h| self.half_edge_vertex(h) == v).collect()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.legs.iter().filter(|&&w| w == v).count()
            + self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum::<usize>()
    }

    fn is_stable_at(&self, v: usize) -> bool {
        2 * self.genera[v] as i64 - 2 + self.valence(v) as i64 > 0
    }

    fn is_connected(&self) -> bool {
        let nv = self.genera.len();
        if nv == 0 {
            return false;
        }
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `|E| - |V| + 1`.
    pub fn first_betti(&self) -> usize {
        self.edges.len() + 1 - self.genera.len()
    }

    /// `sum_v g(v) + h¹`.
    pub fn genus(&self) -> u32 {
        self.genera.iter().sum::<u32>() + self.first_betti() as u32
    }

    /// Reverses the orientation of edge `e`.
    pub fn flip_edge(&mut self, e: usize) {
        let (a, b) = self.edges[e];
        self.edges[e] = (b, a);
    }

    /// Renumbers vertices: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut genera = vec![0; self.genera.len()];
        for (v, &p) in perm.iter().enumerate() {
            genera[p] = self.genera[v];
        }
        StableGraph {
            genera,
            legs: self.legs.iter().map(|&v| perm[v]).collect(),
            edges: self.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect(),
        }
    }

    pub fn canonical_key(&self) -> GraphKey {
        let nv = self.num_vertices();
        let nh = self.num_half_edges();
        self.canonical_search(&vec![(); nv], &vec![(); nh]).0
    }

    /// Canonical form of the graph decorated by per-vertex and per-half-edge
    /// labels.
    pub fn canonical_form<V: Ord + Clone, H: Ord + Clone>(&self, vlabels: &[V], hlabels: &[H]) -> CanonicalForm<V, H> {
        self.canonical_search(vlabels, hlabels).0
    }

    fn form_for<V: Ord + Clone, H: Ord + Clone>(&self, pos: &[usize], vlabels: &[V], hlabels: &[H]) -> CanonicalForm<V, H> {
        let nv = self.num_vertices();
        let mut vertices: Vec<Option<(u32, V)>> = vec![None; nv];
        for v in 0..nv {
            vertices[pos[v]] = Some((self.genera[v], vlabels[v].clone()));
        }
        let legs = self
            .legs
            .iter()
            .enumerate()
            .map(|(i, &v)| (pos[v], hlabels[i].clone()))
            .collect();
        let mut edges: Vec<_> = (0..self.edges.len())
            .map(|e| {
                let (hp, hm) = self.edge_half_edges(e);
                let (a, b) = self.edges[e];
                let x = (pos[a], hlabels[hp].clone());
                let y = (pos[b], hlabels[hm].clone());
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        edges.sort();
        CanonicalForm {
            vertices: vertices.into_iter().map(Option::unwrap).collect(),
            legs,
            edges,
        }
    }

    /// Minimal form over all vertex orders compatible with a refinement by
    /// local invariants, and the number of orders attaining it.
    fn canonical_search<V: Ord + Clone, H: Ord + Clone>(&self, vlabels: &[V], hlabels: &[H]) -> (CanonicalForm<V, H>, usize) {
        let nv = self.num_vertices();
        let n = self.num_legs();
        type Invariant<V, H> = (u32, V, Vec<(usize, H)>, Vec<(H, H)>, Vec<H>);
        let invariant = |v: usize| -> Invariant<V, H> {
            let legs: Vec<(usize, H)> = (0..n)
                .filter(|&i| self.legs[i] == v)
                .map(|i| (i, hlabels[i].clone()))
                .collect();
            let mut loops = Vec::new();
            let mut halves = Vec::new();
            for (e, &(a, b)) in self.edges.iter().enumerate() {
                let (hp, hm) = self.edge_half_edges(e);
                if a == v && b == v {
                    let (x, y) = (hlabels[hp].clone(), hlabels[hm].clone());
                    loops.push(if x <= y { (x, y) } else { (y, x) });
                } else if a == v {
                    halves.push(hlabels[hp].clone());
                } else if b == v {
                    halves.push(hlabels[hm].clone());
                }
            }
            loops.sort();
            halves.sort();
            (self.genera[v], vlabels[v].clone(), legs, loops, halves)
        };
        let invariants: Vec<_> = (0..nv).map(invariant).collect();
        let mut order: Vec<usize> = (0..nv).collect();
        order.sort_by(|&a, &b| invariants[a].cmp(&invariants[b]));
        let groups: Vec<Vec<usize>> = order
            .iter()
            .copied()
            .chunk_by(|&v| invariants[v].clone())
            .into_iter()
            .map(|(_, g)| g.collect())
            .collect();

        let mut best: Option<CanonicalForm<V, H>> = None;
        let mut count = 0usize;
        let per_group: Vec<Vec<Vec<usize>>> = groups
            .iter()
            .map(|g| g.iter().copied().permutations(g.len()).collect())
            .collect();
        let mut pos = vec![0usize; nv];
        for choice in per_group.iter().map(|p| p.iter()).multi_cartesian_product() {
            let mut next = 0;
            for perm in &choice {
                for &v in perm.iter() {
                    pos[v] = next;
                    next += 1;
                }
            }
            let form = self.form_for(&pos, vlabels, hlabels);
            match &best {
                Some(b) if form > *b => {}
                Some(b) if form == *b => count += 1,
                _ => {
                    best = Some(form);
                    count = 1;
                }
            }
        }
        if nv > 0 && per_group.is_empty() {
            unreachable!("vertex groups cover all vertices");
        }
        match best {
            Some(b) => (b, count),
            // multi_cartesian_product of zero iterators yields nothing
            None => (self.form_for(&[], vlabels, hlabels), 1),
        }
    }

    /// Order of the automorphism group acting on vertices and half-edges
    /// (legs fixed), including loop flips and permutations of parallel edges.
    pub fn automorphism_count(&self) -> u64 {
        let nv = self.num_vertices();
        let (_, vertex_auts) = self.canonical_search(&vec![(); nv], &vec![(); self.num_half_edges()]);
        let mut mult = std::collections::BTreeMap::new();
        for &(a, b) in &self.edges {
            *mult.entry((a.min(b), a.max(b))).or_insert(0u64) += 1;
        }
        let fact = |k: u64| (1..=k).product::<u64>();
        let edge_factor: u64 = mult
            .iter()
            .map(|(&(a, b), &k)| if a == b { fact(k) << k } else { fact(k) })
            .product();
        vertex_auts as u64 * edge_factor
    }

    pub fn from_key(key: &GraphKey) -> Self {
        StableGraph {
            genera: key.vertices.iter().map(|(g, _)| *g).collect(),
            legs: key.legs.iter().map(|(v, _)| *v).collect(),
            edges: key.edges.iter().map(|((a, _), (b, _))| (*a, *b)).collect(),
        }
    }

    /// All graphs obtained by one degeneration: a genus drop into a new loop,
    /// or a vertex split joined by a new edge.
    fn degenerations(&self) -> Vec<StableGraph> {
        let mut out = Vec::new();
        for v in 0..self.num_vertices() {
            if self.genera[v] > 0 {
                let mut g = self.clone();
                g.genera[v] -= 1;
                g.edges.push((v, v));
                out.push(g);
            }
            // slots at v: legs, then edge endpoints (edge, side)
            let leg_slots: Vec<usize> = (0..self.legs.len()).filter(|&i| self.legs[i] == v).collect();
            let mut edge_slots = Vec::new();
            for (e, &(a, b)) in self.edges.iter().enumerate() {
                if a == v {
                    edge_slots.push((e, 0));
                }
                if b == v {
                    edge_slots.push((e, 1));
                }
            }
            let k = leg_slots.len() + edge_slots.len();
            let new_v = self.num_vertices();
            for mask in 0u64..(1u64 << k) {
                let moved = mask.count_ones() as i64;
                for g_new in 0..=self.genera[v] {
                    let g_old = self.genera[v] - g_new;
                    let stable_old = 2 * g_old as i64 - 2 + (k as i64 - moved) + 1 > 0;
                    let stable_new = 2 * g_new as i64 - 2 + moved + 1 > 0;
                    if !stable_old || !stable_new {
                        continue;
                    }
                    let mut g = self.clone();
                    g.genera[v] = g_old;
                    g.genera.push(g_new);
                    for (bit, &i) in leg_slots.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            g.legs[i] = new_v;
                        }
                    }
                    for (bit, &(e, side)) in edge_slots.iter().enumerate() {
                        if mask >> (bit + leg_slots.len()) & 1 == 1 {
                            if side == 0 {
                                g.edges[e].0 = new_v;
                            } else {
                                g.edges[e].1 = new_v;
                            }
                        }
                    }
                    g.edges.push((v, new_v));
                    out.push(g);
                }
            }
        }
        out
    }
}

/// One representative per isomorphism class of stable graphs of genus `g`
/// with `n` legs, in canonical form and sorted by canonical key.
pub fn enumerate_stable_graphs(g: u32, n: usize) -> Result<Vec<StableGraph>, GraphError> {
    enumerate_stable_graphs_up_to(g, n, usize::MAX)
}

/// As [`enumerate_stable_graphs`], keeping only graphs with at most
/// `max_edges` edges.
pub fn enumerate_stable_graphs_up_to(g: u32, n: usize, max_edges: usize) -> Result<Vec<StableGraph>, GraphError> {
    if 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(GraphError::UnstablePair { g, n });
    }
    let dim = 3 * g as i64 - 3 + n as i64;
    if dim > MAX_DIMENSION {
        return Err(GraphError::TooLarge(dim));
    }
    let mut all: BTreeSet<GraphKey> = BTreeSet::new();
    let smooth = StableGraph::smooth(g, n)?;
    let mut level: BTreeSet<GraphKey> = BTreeSet::from([smooth.canonical_key()]);
    let mut edges = 0;
    while !level.is_empty() {
        all.extend(level.iter().cloned());
        if edges >= max_edges {
            break;
        }
        let mut next = BTreeSet::new();
        for key in &level {
            for d in StableGraph::from_key(key).degenerations() {
                next.insert(d.canonical_key());
            }
        }
        level = next;
        edges += 1;
    }
    Ok(all.iter().map(StableGraph::from_key).collect())
}
