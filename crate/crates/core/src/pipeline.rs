//! Evaluation of the Chern-class and Pixton-type graph sums at prime root
//! orders, interpolation in `r` and extraction of the DR cycle.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{bernoulli_number, bernoulli_poly, int, is_prime, lcm, next_prime, rat, Newton, RPolynomial, Rational};
use crate::decorations::{enumerate_chi, half_edge_ages, ChiLabeling, WeightingSpace};
use crate::graph::{enumerate_stable_graphs_up_to, StableGraph};
use crate::group::FiniteGroup;
use crate::ramdata::{LegSide, LegWeight, RamData, RawRamData, WeightMode};
use crate::rep::OneDimRep;
use crate::series::{edge_kernel_c, edge_kernel_p, LocalSeries, Monomial, Var};
use crate::taut::{describe_key, TautClass, TermKey};
use crate::Error;

/// Sign convention inside the Pixton-type edge factor
/// `(1 - exp(x(ψ̄₊ + ψ̄₋))) / (ψ̄₊ + ψ̄₋)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeSign {
    /// `x = -(age₊ + w₊)(age₋ + w₋)`, as in JPPZ.
    #[default]
    Jppz,
    /// `x = +(age₊ + w₊)(age₋ + w₋)`.
    Verbatim,
}

impl FromStr for EdgeSign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jppz" => Ok(EdgeSign::Jppz),
            "verbatim" => Ok(EdgeSign::Verbatim),
            other => Err(format!("unknown edge sign '{other}' (expected jppz or verbatim)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// `ĉ_d = r^{2d-2g+1} ε_* c_d(-L^{1/r})`.
    Chern,
    /// `P_g^{G,d,r}(A)`.
    Pixton,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Chern => write!(f, "chern"),
            Route::Pixton => write!(f, "pixton"),
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum PipelineError {
    #[error("the two routes disagree on {} term(s):\n{report}", .differing)]
    RouteDisagreement {
        differing: usize,
        report: String,
        chern: Box<TautClass<Rational>>,
        pixton: Box<TautClass<Rational>>,
    },
    #[error("insufficient r: {route} coefficient of {key} at r = {prime} is {got}, interpolation predicts {expected}")]
    InsufficientR {
        route: Route,
        key: String,
        prime: u64,
        expected: String,
        got: String,
    },
    #[error("bad prime plan: {0}")]
    BadPrimes(String),
    #[error("degree {degree} exceeds 3g - 3 + n = {max}")]
    DegreeTooLarge { degree: usize, max: i64 },
}

/// Validated input: group, representation and ramification data.
#[derive(Debug, Clone)]
pub struct Problem {
    pub group: FiniteGroup,
    pub rep: OneDimRep,
    pub ram: RamData,
}

impl Problem {
    pub fn new(group: FiniteGroup, rep: OneDimRep, raw: &RawRamData) -> Result<Self, Error> {
        let ram = raw.validate(&group, &rep)?;
        Ok(Problem { group, rep, ram })
    }

    pub fn genus(&self) -> u32 {
        self.ram.genus
    }

    pub fn num_markings(&self) -> usize {
        self.ram.num_markings()
    }

    /// `3g - 3 + n`.
    pub fn dimension(&self) -> i64 {
        3 * self.genus() as i64 - 3 + self.num_markings() as i64
    }

    /// `a^{1 - l(μ∞)}`.
    pub fn dr_prefactor(&self) -> Rational {
        let a = int(self.rep.image_order() as i64);
        let exp = 1 - self.ram.mu_inf.len() as i32;
        if exp >= 0 {
            num::pow(a, exp as usize)
        } else {
            num::pow(a, (-exp) as usize).recip()
        }
    }
}

/// Options for one evaluation.
#[derive(Debug, Clone, Default)]
pub struct EvalConfig {
    pub mode: WeightMode,
    pub edge_sign: EdgeSign,
    /// Explicit sample primes; the last two are held out and no retry happens.
    pub primes: Option<Vec<u64>>,
}

/// Sample primes for interpolation; the last `held_out` only validate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SamplePlan {
    pub primes: Vec<u64>,
    pub held_out: usize,
    pub degree_bound: usize,
}

impl SamplePlan {
    pub fn consecutive(r_min: u64, degree_bound: usize, held_out: usize) -> Self {
        let mut primes = Vec::with_capacity(degree_bound + 1 + held_out);
        let mut p = next_prime(r_min);
        while primes.len() < degree_bound + 1 + held_out {
            primes.push(p);
            p = next_prime(p + 1);
        }
        SamplePlan { primes, held_out, degree_bound }
    }

    pub fn explicit(primes: Vec<u64>) -> Result<Self, PipelineError> {
        if primes.len() < 3 {
            return Err(PipelineError::BadPrimes("need at least one sample prime and two held-out primes".into()));
        }
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(PipelineError::BadPrimes(format!("{p} is not prime")));
        }
        if primes.iter().collect::<BTreeSet<_>>().len() != primes.len() {
            return Err(PipelineError::BadPrimes("primes must be distinct".into()));
        }
        let degree_bound = primes.len() - 3;
        Ok(SamplePlan { primes, held_out: 2, degree_bound })
    }

    pub fn samples(&self) -> &[u64] {
        &self.primes[..self.primes.len() - self.held_out]
    }

    pub fn validators(&self) -> &[u64] {
        &self.primes[self.primes.len() - self.held_out..]
    }
}

/// `2d + 2g + 2`.
pub fn degree_bound(d: usize, g: u32) -> usize {
    2 * d + 2 * g as usize + 2
}

/// `a · lcm{r(c)} · (2d + 2) + n + g + 7`, before rounding up to a prime.
pub fn r_min(problem: &Problem, d: usize) -> u64 {
    let orders = problem.group.classes().iter().fold(1, |acc, c| lcm(acc, c.order));
    problem.rep.image_order() * orders * (2 * d as u64 + 2) + problem.num_markings() as u64 + problem.genus() as u64 + 7
}

pub fn default_plan(problem: &Problem, d: usize) -> SamplePlan {
    SamplePlan::consecutive(r_min(problem, d), degree_bound(d, problem.genus()), 2)
}

#[derive(Debug, Clone)]
struct Stratum {
    graph: StableGraph,
    aut: u64,
    chi: ChiLabeling,
    ages: Vec<Rational>,
    /// `∏_edges r(χ(h₊))`.
    edge_order_product: u64,
}

/// All `(Γ, χ)` with `|E(Γ)| ≤ d`, together with the leg data.
#[derive(Debug, Clone)]
pub struct Strata {
    degree: usize,
    mode: WeightMode,
    legs: Vec<LegWeight>,
    strata: Vec<Stratum>,
}

impl Strata {
    pub fn build(problem: &Problem, d: usize, mode: WeightMode) -> Result<Self, Error> {
        let g = problem.genus();
        let n = problem.num_markings();
        let legs = problem.ram.effective_weights(&problem.group, mode)?;
        let leg_classes: Vec<_> = legs.iter().map(|l| l.class).collect();
        let mut strata = Vec::new();
        for graph in enumerate_stable_graphs_up_to(g, n, d)? {
            let aut = graph.automorphism_count();
            for chi in enumerate_chi(&graph, &problem.group, &leg_classes)? {
                let ages = half_edge_ages(&problem.group, &problem.rep, &chi)?;
                let edge_order_product = (0..graph.num_edges())
                    .map(|e| problem.group.class(chi.class(graph.edge_half_edges(e).0)).map(|c| c.order))
                    .product::<Result<u64, _>>()?;
                strata.push(Stratum { graph: graph.clone(), aut, chi, ages, edge_order_product });
            }
        }
        Ok(Strata { degree: d, mode, legs, strata })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }
}

/// Terms `(exponent of ψ̄₊, exponent of ψ̄₋, coefficient)` of one edge factor.
type EdgeTerms = Vec<(u32, u32, Rational)>;

fn edge_terms(s: &LocalSeries) -> EdgeTerms {
    s.terms()
        .iter()
        .map(|(m, c)| (m.exponent(Var::Psi(0)), m.exponent(Var::Psi(1)), c.clone()))
        .collect()
}

/// Edge factors at one prime, keyed by `(local degree, age of h₊)`: the
/// factor for each `w₊`, and their sum over all `w₊` (used for loops). Each
/// factor depends on the edge only through these, because the age and weight
/// of `h₋` are determined by those of `h₊`.
struct KernelTable {
    by_weight: Vec<EdgeTerms>,
    total: EdgeTerms,
}

type KernelCache = BTreeMap<(usize, Rational), KernelTable>;

fn kernel_cache<F>(strata: &Strata, r: u64, kernel: F) -> KernelCache
where
    F: Fn(&Rational, u64, u64, usize) -> LocalSeries + Sync,
{
    let mut wanted = BTreeSet::new();
    for st in &strata.strata {
        let local = strata.degree - st.graph.num_edges();
        for e in 0..st.graph.num_edges() {
            wanted.insert((local, st.ages[st.graph.edge_half_edges(e).0].clone()));
        }
    }
    wanted
        .into_iter()
        .map(|(local, age)| {
            let target = if age.is_zero() { 0 } else { r - 1 };
            let mut total = LocalSeries::zero(local);
            let by_weight = (0..r)
                .map(|wp| {
                    let k = kernel(&age, wp, (target + r - wp) % r, local);
                    total.add_assign_ref(&k);
                    edge_terms(&k)
                })
                .collect();
            ((local, age), KernelTable { by_weight, total: edge_terms(&total) })
        })
        .collect()
}

/// `Σ_w ∏_e K_e(w₊(e))` over all weightings, as a series in the edge `ψ̄`s.
fn weighting_sum(graph: &StableGraph, space: &WeightingSpace, tables: &[&KernelTable], max_degree: usize) -> LocalSeries {
    let ne = graph.num_edges();
    let mut acc: HashMap<Vec<u32>, Rational> = HashMap::new();
    let mut exps = vec![0u32; 2 * ne];
    fn expand(
        e: usize,
        deg: usize,
        coeff: &Rational,
        terms: &[&EdgeTerms],
        exps: &mut Vec<u32>,
        max_degree: usize,
        acc: &mut HashMap<Vec<u32>, Rational>,
    ) {
        if e == terms.len() {
            *acc.entry(exps.clone()).or_insert_with(<Rational as Zero>::zero) += coeff;
            return;
        }
        for (a, b, c) in terms[e] {
            let dd = deg + (*a + *b) as usize;
            if dd > max_degree {
                continue;
            }
            exps[2 * e] = *a;
            exps[2 * e + 1] = *b;
            expand(e + 1, dd, &(coeff * c), terms, exps, max_degree, acc);
        }
        exps[2 * e] = 0;
        exps[2 * e + 1] = 0;
    }
    let loops = space.free_loops();
    let one = Rational::one();
    for wp in space.iter_edge_weights_pinned(&loops) {
        let terms: Vec<&EdgeTerms> = wp
            .iter()
            .enumerate()
            .map(|(e, &w)| {
                if loops.contains(&e) {
                    &tables[e].total
                } else {
                    &tables[e].by_weight[w as usize]
                }
            })
            .collect();
        expand(0, 0, &one, &terms, &mut exps, max_degree, &mut acc);
    }
    let mut out = LocalSeries::zero(max_degree);
    for (ex, c) in acc {
        let pairs = (0..ne)
            .flat_map(|e| {
                let (hp, hm) = graph.edge_half_edges(e);
                [(Var::Psi(hp), ex[2 * e]), (Var::Psi(hm), ex[2 * e + 1])]
            })
            .collect();
        out.add_term(Monomial::from_pairs(pairs), c);
    }
    out
}

fn stratum_tables<'a>(st: &Stratum, local: usize, cache: &'a KernelCache) -> Vec<&'a KernelTable> {
    (0..st.graph.num_edges())
        .map(|e| &cache[&(local, st.ages[st.graph.edge_half_edges(e).0].clone())])
        .collect()
}

/// Evaluates the stratum contributions in parallel and merges them in order.
fn sum_strata<F>(strata: &Strata, f: F) -> Result<TautClass<Rational>, Error>
where
    F: Fn(&Stratum) -> Result<TautClass<Rational>, Error> + Sync,
{
    let parts: Vec<Result<TautClass<Rational>, Error>> = strata.strata.par_iter().map(&f).collect();
    let mut out = TautClass::new();
    for p in parts {
        out.add_assign_ref(&p?);
    }
    Ok(out)
}

fn exp_series(linear: LocalSeries) -> LocalSeries {
    linear.exp().expect("linear part has no constant term")
}

/// `P_g^{G,d,r}(A)` at a prime `r`.
pub fn pixton_p(strata: &Strata, r: u64, sign: EdgeSign) -> Result<TautClass<Rational>, Error> {
    let d = strata.degree;
    let r_rat = int(r as i64);
    let cache = kernel_cache(strata, r, |age, wp, wm, local| {
        let age_minus = if age.is_zero() { Rational::zero() } else { Rational::one() - age };
        let prod = (age + int(wp as i64)) * (age_minus + int(wm as i64));
        let x = match sign {
            EdgeSign::Jppz => -prod,
            EdgeSign::Verbatim => prod,
        };
        edge_kernel_p(&x, 0, 1, local)
    });
    sum_strata(strata, |st| {
        let mut out = TautClass::new();
        let graph = &st.graph;
        let local = d - graph.num_edges();
        let space = WeightingSpace::new(graph, &st.ages, &strata.legs, r)?;
        if space.is_empty() {
            return Ok(out);
        }
        let mut legs = LocalSeries::zero(local);
        for (i, leg) in strata.legs.iter().enumerate() {
            // fractional mode squares the age of the leg class
            let m = match strata.mode {
                WeightMode::Extended => &leg.weight,
                WeightMode::Fractional => &st.ages[i],
            };
            legs.add_term(Monomial::var(Var::Psi(i)), m * m);
        }
        let legs = exp_series(legs);
        let edges = weighting_sum(graph, &space, &stratum_tables(st, local, &cache), local);
        let total = legs.mul_ref(&edges).homogeneous_part(local);
        let coeff = int(st.edge_order_product as i64) / (int(st.aut as i64) * num::pow(r_rat.clone(), graph.first_betti()));
        out.add_series(graph, &st.chi, &total, &coeff);
        Ok(out)
    })
}

/// `(-1)^{m-1} / (m(m+1))`.
fn bernoulli_weight(m: usize) -> Rational {
    let w = rat(1, (m * (m + 1)) as i64);
    if m % 2 == 1 {
        w
    } else {
        -w
    }
}

/// `exp(Σ_{m ≤ D} (-1)^{m-1} B_{m+1}(y)/(m(m+1)) ψ̄_h^m)`.
fn chern_leg_series(h: usize, y: &Rational, max_degree: usize) -> LocalSeries {
    let mut s = LocalSeries::zero(max_degree);
    for m in 1..=max_degree {
        let c = bernoulli_weight(m) * bernoulli_poly(m + 1, y);
        s.add_term(Monomial::from_pairs(vec![(Var::Psi(h), m as u32)]), c);
    }
    exp_series(s)
}

/// `ĉ_d = r^{2d-2g+1} ε_* c_d(-L^{1/r})` at a prime `r`.
pub fn chern_hat_c(strata: &Strata, r: u64) -> Result<TautClass<Rational>, Error> {
    let d = strata.degree;
    let r_rat = int(r as i64);
    let cache = kernel_cache(strata, r, |age, wp, _, local| {
        let y = (age + int(wp as i64)) / &r_rat;
        let coeffs: Vec<Rational> = (1..=local + 1)
            .map(|m| bernoulli_weight(m) * bernoulli_poly(m + 1, &y))
            .collect();
        edge_kernel_c(&coeffs, 0, 1, local)
    });
    sum_strata(strata, |st| {
        let mut out = TautClass::new();
        let graph = &st.graph;
        let local = d - graph.num_edges();
        let space = WeightingSpace::new(graph, &st.ages, &strata.legs, r)?;
        if space.is_empty() {
            return Ok(out);
        }
        let mut fixed = LocalSeries::one(local);
        for v in 0..graph.num_vertices() {
            let mut s = LocalSeries::zero(local);
            for m in 1..=local {
                let c = -(bernoulli_weight(m) * bernoulli_number(m + 1));
                s.add_term(Monomial::var(Var::Kappa { vertex: v, m: m as u32 }), c);
            }
            fixed = fixed.mul_ref(&exp_series(s));
        }
        for (i, leg) in strata.legs.iter().enumerate() {
            let x = leg.weight.abs() / &r_rat;
            let y = match leg.side {
                LegSide::Zero => x,
                LegSide::Infinity => Rational::one() - x,
                LegSide::Insertion => <Rational as Zero>::zero(),
            };
            fixed = fixed.mul_ref(&chern_leg_series(i, &y, local));
        }
        let edges = weighting_sum(graph, &space, &stratum_tables(st, local, &cache), local);
        let total = fixed.mul_ref(&edges).homogeneous_part(local);
        let power = 2 * d - graph.first_betti();
        let coeff = int(st.edge_order_product as i64) * num::pow(r_rat.clone(), power) / int(st.aut as i64);
        out.add_series(graph, &st.chi, &total, &coeff);
        Ok(out)
    })
}

/// Evaluates one route at one prime.
pub fn evaluate(strata: &Strata, route: Route, r: u64, sign: EdgeSign) -> Result<TautClass<Rational>, Error> {
    match route {
        Route::Chern => chern_hat_c(strata, r),
        Route::Pixton => pixton_p(strata, r, sign),
    }
}

/// A class with coefficients polynomial in `r`, and how it was obtained.
#[derive(Debug, Clone)]
pub struct Interpolated {
    pub class: TautClass<RPolynomial>,
    pub plan: SamplePlan,
    /// Largest degree in `r` among the coefficients.
    pub max_degree: Option<usize>,
}

impl Interpolated {
    pub fn constant_terms(&self) -> TautClass<Rational> {
        self.class.map_coeffs(RPolynomial::constant_term)
    }
}

fn try_interpolate<F>(eval: &F, route: Route, plan: &SamplePlan) -> Result<Result<Interpolated, PipelineError>, Error>
where
    F: Fn(u64) -> Result<TautClass<Rational>, Error> + Sync,
{
    let values: Vec<TautClass<Rational>> = plan
        .primes
        .par_iter()
        .map(|&p| eval(p))
        .collect::<Result<Vec<_>, _>>()?;
    let keys: BTreeSet<&TermKey> = values.iter().flat_map(|c| c.terms().keys()).collect();
    let n_samples = plan.primes.len() - plan.held_out;
    let mut class = TautClass::new();
    let mut max_degree = None;
    for key in keys {
        let mut newton = Newton::new();
        for (p, v) in plan.primes[..n_samples].iter().zip(&values) {
            newton.push(*p as i64, v.get(key)).expect("distinct primes");
        }
        let poly = newton.to_poly();
        for (p, v) in plan.primes[n_samples..].iter().zip(&values[n_samples..]) {
            let expected = poly.eval(&int(*p as i64));
            let got = v.get(key);
            if expected != got {
                return Ok(Err(PipelineError::InsufficientR {
                    route,
                    key: describe_key(key),
                    prime: *p,
                    expected: expected.to_string(),
                    got: got.to_string(),
                }));
            }
        }
        max_degree = max_degree.max(poly.degree());
        class.add_term(key.clone(), poly);
    }
    Ok(Ok(Interpolated { class, plan: plan.clone(), max_degree }))
}

/// Interpolates `eval` over `plan`. On a held-out mismatch, retries once
/// with twice as many samples starting at twice the smallest prime, unless
/// `retry` is false.
pub fn interpolate_class<F>(eval: F, route: Route, plan: &SamplePlan, retry: bool) -> Result<Interpolated, Error>
where
    F: Fn(u64) -> Result<TautClass<Rational>, Error> + Sync,
{
    match try_interpolate(&eval, route, plan)? {
        Ok(i) => Ok(i),
        Err(e) if !retry => Err(e.into()),
        Err(_) => {
            let samples = 2 * (plan.degree_bound + 1);
            let wider = SamplePlan::consecutive(2 * plan.primes[0], samples - 1, plan.held_out);
            try_interpolate(&eval, route, &wider)?.map_err(Error::from)
        }
    }
}

fn plan_for(problem: &Problem, d: usize, cfg: &EvalConfig) -> Result<(SamplePlan, bool), Error> {
    match &cfg.primes {
        Some(p) => Ok((SamplePlan::explicit(p.clone())?, false)),
        None => Ok((default_plan(problem, d), true)),
    }
}

/// Interpolates one route at degree `d`.
pub fn interpolate_route(problem: &Problem, d: usize, route: Route, cfg: &EvalConfig) -> Result<Interpolated, Error> {
    let max = problem.dimension();
    if d as i64 > max.max(0) {
        return Err(PipelineError::DegreeTooLarge { degree: d, max }.into());
    }
    let strata = Strata::build(problem, d, cfg.mode)?;
    let (plan, retry) = plan_for(problem, d, cfg)?;
    interpolate_class(|r| evaluate(&strata, route, r, cfg.edge_sign), route, &plan, retry)
}

/// Keys where two classes differ, with both coefficients.
#[derive(Debug, Clone, Serialize)]
pub struct DiffEntry {
    pub key: String,
    pub chern: String,
    pub pixton: String,
}

pub fn diff_classes(chern: &TautClass<Rational>, pixton: &TautClass<Rational>) -> Vec<DiffEntry> {
    let keys: BTreeSet<&TermKey> = chern.terms().keys().chain(pixton.terms().keys()).collect();
    keys.into_iter()
        .filter_map(|k| {
            let (a, b) = (chern.get(k), pixton.get(k));
            (a != b).then(|| DiffEntry { key: describe_key(k), chern: a.to_string(), pixton: b.to_string() })
        })
        .collect()
}

fn diff_report(diff: &[DiffEntry]) -> String {
    diff.iter()
        .map(|d| format!("  {}: chern {} vs pixton {}", d.key, d.chern, d.pixton))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Result of comparing `const(ĉ_d)` with `2^{-d} const(P_d)`.
#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    pub degree: usize,
    pub chern: TautClass<Rational>,
    pub pixton: TautClass<Rational>,
    pub differing: Vec<DiffEntry>,
    pub chern_interpolation: Option<Interpolated>,
    pub pixton_interpolation: Option<Interpolated>,
}

impl CrosscheckReport {
    pub fn from_classes(degree: usize, chern: TautClass<Rational>, pixton: TautClass<Rational>) -> Self {
        let differing = diff_classes(&chern, &pixton);
        CrosscheckReport { degree, chern, pixton, differing, chern_interpolation: None, pixton_interpolation: None }
    }

    pub fn agree(&self) -> bool {
        self.differing.is_empty()
    }

    pub fn report(&self) -> String {
        diff_report(&self.differing)
    }
}

fn two_pow_neg(d: usize) -> Rational {
    num::pow(int(2), d).recip()
}

pub fn crosscheck_constant_terms(problem: &Problem, d: usize, cfg: &EvalConfig) -> Result<CrosscheckReport, Error> {
    let chern = interpolate_route(problem, d, Route::Chern, cfg)?;
    let pixton = interpolate_route(problem, d, Route::Pixton, cfg)?;
    let mut report = CrosscheckReport::from_classes(
        d,
        chern.constant_terms(),
        pixton.constant_terms().scale(&two_pow_neg(d)),
    );
    report.chern_interpolation = Some(chern);
    report.pixton_interpolation = Some(pixton);
    Ok(report)
}

/// `DR_g^G(A)` with both interpolations used to derive it.
#[derive(Debug, Clone)]
pub struct DrOutcome {
    pub class: TautClass<Rational>,
    pub chern: Interpolated,
    pub pixton: Interpolated,
}

/// `a^{1-l(μ∞)}` times the constant term of `ĉ_g`, checked against
/// `a^{1-l(μ∞)} 2^{-g}` times the constant term of `P_g^{G,g,r}`.
pub fn dr_cycle(problem: &Problem, cfg: &EvalConfig) -> Result<DrOutcome, Error> {
    let g = problem.genus() as usize;
    let chern = interpolate_route(problem, g, Route::Chern, cfg)?;
    let pixton = interpolate_route(problem, g, Route::Pixton, cfg)?;
    let factor = problem.dr_prefactor();
    let from_chern = chern.constant_terms().scale(&factor);
    let from_pixton = pixton.constant_terms().scale(&(factor * two_pow_neg(g)));
    let diff = diff_classes(&from_chern, &from_pixton);
    if !diff.is_empty() {
        return Err(PipelineError::RouteDisagreement {
            differing: diff.len(),
            report: diff_report(&diff),
            chern: Box::new(from_chern),
            pixton: Box::new(from_pixton),
        }
        .into());
    }
    Ok(DrOutcome { class: from_chern, chern, pixton })
}
