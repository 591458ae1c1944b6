//! Shared fixtures: the desk-scale instance suite and an independent
//! trivial-group DR evaluator in the JPPZ convention.

#![allow(dead_code)]

pub mod brute;
pub mod extension_checks;
pub mod naive;

use std::collections::BTreeMap;

use itertools::Itertools;
use num::{One, Zero};
use stackydr::arith::{frac, int, is_prime, rat, Rational};
use stackydr::graph::enumerate_stable_graphs;
use stackydr::ramdata::RawPart;
use stackydr::series::{Monomial, Var};
use stackydr::taut::term_key;
use stackydr::{ChiLabeling, ClassId, FiniteGroup, OneDimRep, RawRamData, TautClass, WeightMode};

pub struct SuiteGroup {
    pub name: &'static str,
    pub group: FiniteGroup,
    pub rep: OneDimRep,
}

pub fn suite_groups() -> Vec<SuiteGroup> {
    let triv = FiniteGroup::trivial();
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let c3 = FiniteGroup::cyclic(3).unwrap();
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let sign: Vec<u64> = (0..6).map(|g| u64::from(s3.element_order(g) == 2)).collect();
    vec![
        SuiteGroup { name: "trivial", rep: OneDimRep::trivial(&triv), group: triv },
        SuiteGroup { name: "C2/id", rep: OneDimRep::build(&c2, &[0, 1], 2).unwrap(), group: c2 },
        SuiteGroup { name: "C3/faithful", rep: OneDimRep::build(&c3, &[0, 1, 2], 3).unwrap(), group: c3 },
        SuiteGroup { name: "S3/sign", rep: OneDimRep::build(&s3, &sign, 2).unwrap(), group: s3 },
    ]
}

pub fn part(c: u64, f: u64, class: usize) -> RawPart {
    RawPart { c, f, class }
}

pub fn ram(genus: u32, mu0: Vec<RawPart>, mu_inf: Vec<RawPart>, insertions: Vec<usize>) -> RawRamData {
    RawRamData { genus, mu0, mu_inf, insertions, mode: WeightMode::Extended }
}

/// Parts `(c, f, class)` with `f = r(class)`, `⟨c/f⟩` equal to the age and
/// `c ≤ 2f`.
fn part_types(group: &FiniteGroup, rep: &OneDimRep) -> Vec<(u64, u64, usize)> {
    let mut out = Vec::new();
    for class in group.classes() {
        let f = class.order;
        let age = rep.age_of_class(class);
        for c in 0..=2 * f {
            if frac(&rat(c as i64, f as i64)) == age {
                out.push((c, f, class.id.0));
            }
        }
    }
    out
}

/// Every valid `A` of genus `g` with `n` markings built from small parts,
/// grouped by `(|μ₀|, |μ∞|, |I|)`.
pub fn candidates(group: &FiniteGroup, rep: &OneDimRep, g: u32, n: usize) -> BTreeMap<(usize, usize, usize), Vec<RawRamData>> {
    let types = part_types(group, rep);
    let ins: Vec<usize> = group
        .classes()
        .iter()
        .filter(|c| rep.age_of_class(c).is_zero())
        .map(|c| c.id.0)
        .collect();
    let mut out: BTreeMap<_, Vec<RawRamData>> = BTreeMap::new();
    for n0 in 0..=n {
        for ni in 0..=n - n0 {
            let nz = n - n0 - ni;
            for mu0 in types.iter().combinations_with_replacement(n0) {
                for mi in types.iter().combinations_with_replacement(ni) {
                    for iz in ins.iter().combinations_with_replacement(nz) {
                        let raw = ram(
                            g,
                            mu0.iter().map(|&&(c, f, k)| part(c, f, k)).collect(),
                            mi.iter().map(|&&(c, f, k)| part(c, f, k)).collect(),
                            iz.into_iter().copied().collect(),
                        );
                        if raw.validate(group, rep).is_ok() {
                            out.entry((n0, ni, nz)).or_default().push(raw);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Sort key preferring nonzero `c`, many non-identity classes and small entries.
fn interest(raw: &RawRamData) -> (usize, isize, u64) {
    let parts = raw.mu0.iter().chain(&raw.mu_inf);
    let zeros = parts.clone().filter(|p| p.c == 0).count();
    let nontrivial = parts.clone().filter(|p| p.class != 0).count() + raw.insertions.iter().filter(|&&c| c != 0).count();
    (zeros, -(nontrivial as isize), parts.map(|p| p.c).sum())
}

pub struct Instance {
    pub label: String,
    pub group: FiniteGroup,
    pub rep: OneDimRep,
    pub raw: RawRamData,
}

/// For each suite group and `(g, n)` with `g ≤ 2`, `n ≤ 3`, `2g - 2 + n > 0`,
/// the `per_split` most interesting valid `A` of every split
/// `(|μ₀|, |μ∞|, |I|)`.
pub fn suite_instances(per_split: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for sg in suite_groups() {
        for g in 0..=2u32 {
            for n in 0..=3usize {
                if 2 * g as i64 - 2 + n as i64 <= 0 {
                    continue;
                }
                for mut found in candidates(&sg.group, &sg.rep, g, n).into_values() {
                    found.sort_by_key(interest);
                    for raw in found.into_iter().take(per_split) {
                        out.push(Instance {
                            label: format!("{} g={} {}", sg.name, g, describe(&raw)),
                            group: sg.group.clone(),
                            rep: sg.rep.clone(),
                            raw,
                        });
                    }
                }
            }
        }
    }
    out
}

/// The first suite instance of every `(G, g, n)`.
pub fn representatives() -> Vec<Instance> {
    let mut seen = std::collections::BTreeSet::new();
    suite_instances(1)
        .into_iter()
        .filter(|i| seen.insert((i.label.split(' ').next().unwrap_or("").to_string(), i.raw.genus, i.raw.mu0.len() + i.raw.mu_inf.len() + i.raw.insertions.len())))
        .collect()
}

pub fn describe(raw: &RawRamData) -> String {
    let parts = |v: &[RawPart]| v.iter().map(|p| format!("({},{},{})", p.c, p.f, p.class)).join("");
    format!("mu0=[{}] muInf=[{}] I={:?}", parts(&raw.mu0), parts(&raw.mu_inf), raw.insertions)
}

/// Trivial-group data with the given integer weights: positive entries go to
/// `μ₀`, negative to `μ∞`, zeros to `I`. Markings are numbered in that order.
pub fn trivial_ram(g: u32, weights: &[i64]) -> (RawRamData, Vec<i64>) {
    let mu0: Vec<RawPart> = weights.iter().filter(|&&a| a > 0).map(|&a| part(a as u64, 1, 0)).collect();
    let mu_inf: Vec<RawPart> = weights.iter().filter(|&&a| a < 0).map(|&a| part((-a) as u64, 1, 0)).collect();
    let ins: Vec<usize> = weights.iter().filter(|&&a| a == 0).map(|_| 0).collect();
    let ordered: Vec<i64> = mu0
        .iter()
        .map(|p| p.c as i64)
        .chain(mu_inf.iter().map(|p| -(p.c as i64)))
        .chain(ins.iter().map(|_| 0))
        .collect();
    (ram(g, mu0, mu_inf, ins), ordered)
}

/// Independent evaluator of `2^{-g}·const_r P_g^{g,r}(A)` for the trivial
/// group, in the JPPZ convention:
/// legs carry `w = a_i`, edges `w(h) + w(h') ≡ 0`, vertices `Σ w ≡ 0 (mod r)`,
/// and the edge factor is `(1 - exp(-w(h)w(h')(ψ + ψ')))/(ψ + ψ')`.
pub mod jppz {
    use super::*;

    /// Polynomial in `ψ̄_h`, keyed by exponent vectors over half-edges.
    type Poly = BTreeMap<Vec<u32>, Rational>;

    fn poly_mul(a: &Poly, b: &Poly, max: u32) -> Poly {
        let mut out = Poly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if e.iter().sum::<u32>() > max {
                    continue;
                }
                *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn factorial(k: u32) -> Rational {
        (1..=k as i64).fold(Rational::one(), |acc, i| acc * int(i))
    }

    fn binom(n: u32, k: u32) -> Rational {
        factorial(n) / (factorial(k) * factorial(n - k))
    }

    fn unit(len: usize, h: usize, k: u32) -> Vec<u32> {
        let mut e = vec![0; len];
        e[h] = k;
        e
    }

    /// `exp(c ψ_h)` up to degree `max`.
    fn exp_psi(len: usize, h: usize, c: &Rational, max: u32) -> Poly {
        (0..=max)
            .map(|k| (unit(len, h, k), num::pow(c.clone(), k as usize) / factorial(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// `(1 - exp(-x s))/s` with `s = ψ_h + ψ_h'`, i.e. `Σ_{k≥1} -(-x)^k s^{k-1}/k!`.
    fn edge_factor(len: usize, h: usize, hh: usize, x: &Rational, max: u32) -> Poly {
        let mut out = Poly::new();
        for k in 1..=max + 1 {
            let c = -num::pow(-x.clone(), k as usize) / factorial(k);
            for j in 0..k {
                let mut e = vec![0; len];
                e[h] += j;
                e[hh] += k - 1 - j;
                *out.entry(e).or_insert_with(Rational::zero) += &c * binom(k - 1, j);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Value of the degree-`g` class at one `r`, with the all-trivial labeling.
    pub fn pixton_at(g: u32, a: &[i64], r: i64) -> TautClass<Rational> {
        let n = a.len();
        let mut out = TautClass::new();
        for graph in enumerate_stable_graphs(g, n).unwrap() {
            let ne = graph.num_edges();
            if ne > g as usize {
                continue;
            }
            let local = g - ne as u32;
            let len = graph.num_half_edges();
            let mut legs = Poly::from([(vec![0; len], Rational::one())]);
            for (i, &ai) in a.iter().enumerate() {
                legs = poly_mul(&legs, &exp_psi(len, i, &int(ai * ai), local), local);
            }
            let mut sum = Poly::new();
            // brute force over w(h₊) for every edge
            for ws in (0..ne).map(|_| 0..r).multi_cartesian_product() {
                let mut vertex_sum = vec![0i64; graph.num_vertices()];
                for (i, &ai) in a.iter().enumerate() {
                    vertex_sum[graph.legs()[i]] += ai;
                }
                for (e, &(u, v)) in graph.edges().iter().enumerate() {
                    let w = ws[e];
                    vertex_sum[u] += w;
                    vertex_sum[v] += (r - w) % r;
                }
                if vertex_sum.iter().any(|s| s.rem_euclid(r) != 0) {
                    continue;
                }
                let mut prod = Poly::from([(vec![0; len], Rational::one())]);
                for (e, &w) in ws.iter().enumerate() {
                    let (hp, hm) = graph.edge_half_edges(e);
                    let x = int(w * ((r - w) % r));
                    prod = poly_mul(&prod, &edge_factor(len, hp, hm, &x, local), local);
                }
                for (e, c) in prod {
                    *sum.entry(e).or_insert_with(Rational::zero) += c;
                }
            }
            let total = poly_mul(&legs, &sum, local);
            let scale = Rational::one() / (int(graph.automorphism_count() as i64) * num::pow(int(r), graph.first_betti()));
            let chi = ChiLabeling::new(vec![ClassId(0); len]);
            for (e, c) in total {
                if e.iter().sum::<u32>() != local {
                    continue;
                }
                let mono = Monomial::from_pairs(e.iter().enumerate().map(|(h, &k)| (Var::Psi(h), k)).collect());
                out.add_term(term_key(&graph, &chi, &mono), c * &scale);
            }
        }
        out
    }

    /// Lagrange value at 0 of the interpolant through `(x_i, y_i)`.
    fn lagrange_at_zero(points: &[(i64, Rational)]) -> Rational {
        let mut acc = Rational::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut l = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    l *= rat(-xj, xi - xj);
                }
            }
            acc += yi * l;
        }
        acc
    }

    /// `DR_g(A)`; panics if an extra prime disagrees with the interpolant.
    pub fn dr(g: u32, a: &[i64]) -> TautClass<Rational> {
        let bound: i64 = a.iter().map(|x| x.abs()).sum::<i64>() + 2;
        let mut primes = Vec::new();
        let mut p = 4 * bound + 11;
        // degree in r is at most 2g; two extra points check it
        while primes.len() < 2 * g as usize + 3 {
            if is_prime(p as u64) {
                primes.push(p);
            }
            p += 1;
        }
        let values: Vec<TautClass<Rational>> = primes.iter().map(|&r| pixton_at(g, a, r)).collect();
        let keys: Vec<_> = values.iter().flat_map(|c| c.terms().keys().cloned()).sorted().dedup().collect();
        let mut out = TautClass::new();
        let two_g = num::pow(int(2), g as usize);
        for k in keys {
            let pts: Vec<(i64, Rational)> = primes.iter().zip(&values).map(|(&p, v)| (p, v.get(&k))).collect();
            let c0 = lagrange_at_zero(&pts[..pts.len() - 1]);
            let c0_all = lagrange_at_zero(&pts);
            assert_eq!(c0, c0_all, "oracle interpolation is not stable");
            out.add_term(k, c0 / &two_g);
        }
        out
    }
}

/// `count` rationals `p/q` with `|p| ≤ 50`, `1 ≤ q ≤ 30`, from a fixed seed.
pub fn random_rationals(seed: u64, count: usize) -> Vec<Rational> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| rat(rng.random_range(-50..=50), rng.random_range(1..=30)))
        .collect()
}

/// Violations of `B_m(x + y) = Σ_k C(m, k) B_k(x) y^{m-k}` and
/// `B_m(1 - x) = (-1)^m B_m(x)` for `m ≤ max_m`, pairing `xs[i]` with `xs[i+1]`.
pub fn bernoulli_violations(xs: &[Rational], max_m: usize) -> Vec<String> {
    use stackydr::arith::{bernoulli_poly, binomial};
    let mut out = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let y = &xs[(i + 1) % xs.len()];
        for m in 0..=max_m {
            let lhs = bernoulli_poly(m, &(x + y));
            let rhs = (0..=m).fold(Rational::zero(), |acc, k| {
                acc + Rational::from_integer(binomial(m as u64, k as u64))
                    * bernoulli_poly(k, x)
                    * num::pow(y.clone(), m - k)
            });
            if lhs != rhs {
                out.push(format!("addition m={m} x={x} y={y}"));
            }
            let sign = if m % 2 == 0 { int(1) } else { int(-1) };
            if bernoulli_poly(m, &(int(1) - x)) != sign * bernoulli_poly(m, x) {
                out.push(format!("reflection m={m} x={x}"));
            }
        }
    }
    out
}

/// Weight vectors with `|a_i| ≤ max`, `Σ a_i = 0`, one per multiset, of
/// length `n`, sorted decreasingly.
pub fn balanced_weights(n: usize, max: i64) -> Vec<Vec<i64>> {
    (-max..=max)
        .rev()
        .combinations_with_replacement(n)
        .filter(|w| w.iter().sum::<i64>() == 0)
        .collect()
}
