//! Naive stable-graph generator: exhaustive search over vertex genera, leg
//! positions and edge multisets, deduplicated by brute-force isomorphism.

use itertools::Itertools;
use num::{One, Zero};
use stackydr::arith::{int, Rational};
use stackydr::graph::{enumerate_stable_graphs, StableGraph};

/// Graph data with edges as sorted vertex pairs, sorted.
#[derive(Clone, Debug)]
pub struct Naive {
    genera: Vec<u32>,
    legs: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

fn normalize(edges: impl Iterator<Item = (usize, usize)>) -> Vec<(usize, usize)> {
    edges.map(|(u, v)| (u.min(v), u.max(v))).sorted().collect()
}

impl Naive {
    pub fn from_graph(g: &StableGraph) -> Self {
        Naive { genera: g.genera().to_vec(), legs: g.legs().to_vec(), edges: normalize(g.edges().iter().copied()) }
    }

    fn permuted(&self, perm: &[usize]) -> Naive {
        let mut genera = vec![0; self.genera.len()];
        for (v, &gv) in self.genera.iter().enumerate() {
            genera[perm[v]] = gv;
        }
        Naive {
            genera,
            legs: self.legs.iter().map(|&v| perm[v]).collect(),
            edges: normalize(self.edges.iter().map(|&(u, v)| (perm[u], perm[v]))),
        }
    }

    fn same(&self, other: &Naive) -> bool {
        self.genera == other.genera && self.legs == other.legs && self.edges == other.edges
    }

    pub fn isomorphic(&self, other: &Naive) -> bool {
        self.genera.len() == other.genera.len()
            && (0..self.genera.len()).permutations(self.genera.len()).any(|p| self.permuted(&p).same(other))
    }

    /// Vertex automorphisms times the half-edge symmetries of each edge class.
    pub fn automorphisms(&self) -> u64 {
        let nv = self.genera.len();
        let vertex = (0..nv).permutations(nv).filter(|p| self.permuted(p).same(self)).count() as u64;
        let mut edge = 1u64;
        for ((u, v), group) in &self.edges.iter().chunk_by(|e| **e) {
            let m = group.count() as u64;
            edge *= (1..=m).product::<u64>();
            if u == v {
                edge *= 1 << m;
            }
        }
        vertex * edge
    }

    fn connected(&self) -> bool {
        let nv = self.genera.len();
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &(u, v) in &self.edges {
                for (a, b) in [(u, v), (v, u)] {
                    if a == x && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn stable(&self) -> bool {
        (0..self.genera.len()).all(|v| {
            let val = self.legs.iter().filter(|&&l| l == v).count()
                + self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum::<usize>();
            2 * self.genera[v] as usize + val > 2
        })
    }
}

/// All stable graphs of type `(g, n)`, one per isomorphism class, by
/// exhaustive search over vertex genera, leg positions and edge multisets.
pub fn naive_graphs(g: u32, n: usize) -> Vec<Naive> {
    let mut out: Vec<Naive> = Vec::new();
    let max_v = (2 * g as usize + n).saturating_sub(2).max(1);
    for nv in 1..=max_v {
        let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|u| (u..nv).map(move |v| (u, v))).collect();
        for genera in (0..nv).map(|_| 0..=g).multi_cartesian_product() {
            let sum: u32 = genera.iter().sum();
            if sum > g {
                continue;
            }
            let ne = nv - 1 + (g - sum) as usize;
            for legs in (0..n).map(|_| 0..nv).multi_cartesian_product() {
                for edges in pairs.iter().copied().combinations_with_replacement(ne) {
                    let cand = Naive { genera: genera.clone(), legs: legs.clone(), edges };
                    if cand.connected() && cand.stable() && !out.iter().any(|o| o.isomorphic(&cand)) {
                        out.push(cand);
                    }
                }
            }
        }
    }
    out
}

pub const CASES: [(u32, usize); 6] = [(0, 3), (0, 4), (1, 1), (1, 2), (2, 0), (2, 1)];

/// Compares the enumeration, `|Aut|` and `Σ 1/|Aut|` with the naive
/// generator; returns the number of graphs checked.
pub fn check_against_naive(cases: &[(u32, usize)]) -> Result<usize, String> {
    let mut checked = 0;
    for &(g, n) in cases {
        let fast = enumerate_stable_graphs(g, n).map_err(|e| e.to_string())?;
        let naive = naive_graphs(g, n);
        if fast.len() != naive.len() {
            return Err(format!("({g}, {n}): {} graphs, naive {}", fast.len(), naive.len()));
        }
        let mut mass = Rational::zero();
        let mut naive_mass = Rational::zero();
        for graph in &fast {
            let f = Naive::from_graph(graph);
            if naive.iter().filter(|m| m.isomorphic(&f)).count() != 1 {
                return Err(format!("({g}, {n}): {f:?} has no unique naive match"));
            }
            if graph.automorphism_count() != f.automorphisms() {
                return Err(format!("({g}, {n}): |Aut| {} vs naive {} for {f:?}", graph.automorphism_count(), f.automorphisms()));
            }
            mass += Rational::one() / int(graph.automorphism_count() as i64);
            checked += 1;
        }
        for m in &naive {
            naive_mass += Rational::one() / int(m.automorphisms() as i64);
        }
        if mass != naive_mass {
            return Err(format!("({g}, {n}): mass {mass} vs naive {naive_mass}"));
        }
    }
    Ok(checked)
}

/// Theta graph and the one-loop one-leg graph.
pub fn check_spot_automorphisms() -> Result<(), String> {
    let theta = StableGraph::new(vec![0, 0], vec![], vec![(0, 1), (0, 1), (0, 1)]).map_err(|e| e.to_string())?;
    let loop_leg = StableGraph::new(vec![0], vec![0], vec![(0, 0)]).map_err(|e| e.to_string())?;
    match (theta.automorphism_count(), loop_leg.automorphism_count()) {
        (12, 2) => Ok(()),
        (a, b) => Err(format!("theta {a}, loop with leg {b}")),
    }
}
