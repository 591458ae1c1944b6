//! Formal sums of decorated boundary strata with `κ`/`ψ̄` monomials.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::arith::{parse_rational, RPolynomial, Rational};
use crate::decorations::ChiLabeling;
use crate::graph::{CanonicalForm, GraphError, GraphJson, StableGraph};
use crate::group::ClassId;
use crate::series::{LocalSeries, Var};

/// Vertex decoration: sorted `(m, exponent of κ_m)` pairs.
pub type KappaLabel = Vec<(u32, u32)>;
/// Half-edge decoration: `(class, exponent of ψ̄)`.
pub type HalfLabel = (ClassId, u32);
/// Canonical key of a decorated term.
pub type TermKey = CanonicalForm<KappaLabel, HalfLabel>;

/// Coefficient ring of a [`TautClass`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn scale(&self, c: &Rational) -> Self;
    fn to_json(&self) -> Value;
}

impl Coefficient for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn scale(&self, c: &Rational) -> Self {
        self * c
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl Coefficient for RPolynomial {
    fn zero() -> Self {
        RPolynomial::default()
    }

    fn is_zero(&self) -> bool {
        RPolynomial::is_zero(self)
    }

    fn add_assign_ref(&mut self, other: &Self) {
        let n = self.coeffs().len().max(other.coeffs().len());
        *self = RPolynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect());
    }

    fn scale(&self, c: &Rational) -> Self {
        RPolynomial::new(self.coeffs().iter().map(|x| x * c).collect())
    }

    /// Coefficients of `r^0, r^1, …` as strings.
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TautError {
    #[error("term {index}: {message}")]
    BadTerm { index: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `|E| + Σ m·(exponent of κ_m) + Σ ψ̄ exponents`.
pub fn term_degree(key: &TermKey) -> usize {
    let kappa: usize = key
        .vertices
        .iter()
        .flat_map(|(_, k)| k.iter())
        .map(|&(m, e)| (m * e) as usize)
        .sum();
    let psi: usize = key
        .legs
        .iter()
        .map(|(_, h)| h.1 as usize)
        .chain(key.edges.iter().flat_map(|(a, b)| [a.1 .1 as usize, b.1 .1 as usize]))
        .sum();
    key.edges.len() + kappa + psi
}

/// Canonical key of `ζ_{Γ,χ}` decorated by a monomial whose variables are
/// indexed by the vertices and half-edges of `graph`.
pub fn term_key(graph: &StableGraph, chi: &ChiLabeling, monomial: &crate::series::Monomial) -> TermKey {
    let mut vlabels: Vec<KappaLabel> = vec![Vec::new(); graph.num_vertices()];
    let mut hlabels: Vec<HalfLabel> = chi.classes().iter().map(|&c| (c, 0)).collect();
    for &(var, e) in monomial.factors() {
        match var {
            Var::Kappa { vertex, m } => vlabels[vertex].push((m, e)),
            Var::Psi(h) => hlabels[h].1 += e,
        }
    }
    for l in &mut vlabels {
        l.sort();
    }
    graph.canonical_form(&vlabels, &hlabels)
}

/// A canonical formal sum of decorated strata. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq)]
pub struct TautClass<C> {
    terms: BTreeMap<TermKey, C>,
}

impl<C: Coefficient> Default for TautClass<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Coefficient> TautClass<C> {
    pub fn new() -> Self {
        TautClass { terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &TermKey) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, key: TermKey, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &TautClass<C>) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &TautClass<C>) -> TautClass<C> {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn scale(&self, c: &Rational) -> TautClass<C> {
        let mut out = TautClass::new();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x.scale(c));
        }
        out
    }

    pub fn degree_part(&self, d: usize) -> TautClass<C> {
        TautClass {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| term_degree(k) == d)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TautClass<D> {
        let mut out = TautClass::new();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Number of distinct strata `(Γ, χ)` among the terms.
    pub fn num_strata(&self) -> usize {
        self.terms()
            .keys()
            .map(|k| {
                (
                    k.vertices.iter().map(|v| v.0).collect::<Vec<_>>(),
                    k.legs.iter().map(|(v, h)| (*v, h.0)).collect::<Vec<_>>(),
                    k.edges.iter().map(|(a, b)| ((a.0, a.1 .0), (b.0, b.1 .0))).collect::<Vec<_>>(),
                )
            })
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Terms as JSON objects in canonical key order.
    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(k, c)| term_json(k, c.to_json())).collect())
    }
}

impl TautClass<Rational> {
    /// The class of the undecorated stratum `Γ` with all half-edges in class 0.
    pub fn fundamental(graph: &StableGraph) -> Self {
        let chi = ChiLabeling::new(vec![ClassId(0); graph.num_half_edges()]);
        let mut out = TautClass::new();
        out.add_term(term_key(graph, &chi, &crate::series::Monomial::one()), Rational::one());
        out
    }

    /// Adds `coeff · ζ_{Γ,χ}[s]` for a series `s` in the variables of `graph`.
    pub fn add_series(&mut self, graph: &StableGraph, chi: &ChiLabeling, series: &LocalSeries, coeff: &Rational) {
        for (m, c) in series.terms() {
            self.add_term(term_key(graph, chi, m), c * coeff);
        }
    }

    pub fn from_json(value: &Value) -> Result<Self, TautError> {
        let items = value.as_array().ok_or(TautError::BadTerm { index: 0, message: "expected an array of terms".into() })?;
        let mut out = TautClass::new();
        for (index, item) in items.iter().enumerate() {
            let bad = |message: &str| TautError::BadTerm { index, message: message.to_string() };
            let graph_json: GraphJson =
                serde_json::from_value(item["graph"].clone()).map_err(|e| bad(&format!("graph: {e}")))?;
            let graph = StableGraph::from_json(&graph_json)?;
            let chi: Vec<ClassId> = serde_json::from_value(item["chi"].clone()).map_err(|e| bad(&format!("chi: {e}")))?;
            if chi.len() != graph.num_half_edges() {
                return Err(bad("chi must label every half-edge"));
            }
            let mut pairs = Vec::new();
            let kappa = item["kappa"].as_object().ok_or_else(|| bad("kappa must be an object"))?;
            for (v, ms) in kappa {
                let v: usize = v.parse().map_err(|_| bad("kappa vertex"))?;
                for (m, e) in ms.as_object().ok_or_else(|| bad("kappa exponents must be an object"))? {
                    let m: u32 = m.parse().map_err(|_| bad("kappa index"))?;
                    let e = e.as_u64().ok_or_else(|| bad("kappa exponent"))? as u32;
                    pairs.push((Var::Kappa { vertex: v, m }, e));
                }
            }
            let psi = item["psi"].as_object().ok_or_else(|| bad("psi must be an object"))?;
            for (h, e) in psi {
                let h: usize = h.parse().map_err(|_| bad("psi half-edge"))?;
                pairs.push((Var::Psi(h), e.as_u64().ok_or_else(|| bad("psi exponent"))? as u32));
            }
            let coeff = item["coeff"]
                .as_str()
                .and_then(parse_rational)
                .ok_or_else(|| bad("coeff must be a rational string"))?;
            let key = term_key(&graph, &ChiLabeling::new(chi), &crate::series::Monomial::from_pairs(pairs));
            out.add_term(key, coeff);
        }
        Ok(out)
    }
}

/// The representative graph of a key, with edges oriented as stored.
pub fn key_graph(key: &TermKey) -> StableGraph {
    StableGraph::from_key(&CanonicalForm {
        vertices: key.vertices.iter().map(|(g, _)| (*g, ())).collect(),
        legs: key.legs.iter().map(|(v, _)| (*v, ())).collect(),
        edges: key.edges.iter().map(|((a, _), (b, _))| ((*a, ()), (*b, ()))).collect(),
    })
}

fn term_json(key: &TermKey, coeff: Value) -> Value {
    let graph = key_graph(key);
    let mut chi = Vec::new();
    let mut psi = Map::new();
    let halves = key
        .legs
        .iter()
        .map(|(_, h)| h)
        .chain(key.edges.iter().flat_map(|(a, b)| [&a.1, &b.1]));
    for (h, &(c, e)) in halves.enumerate() {
        chi.push(c.0);
        if e > 0 {
            psi.insert(h.to_string(), json!(e));
        }
    }
    let mut kappa = Map::new();
    for (v, (_, k)) in key.vertices.iter().enumerate() {
        if !k.is_empty() {
            let ms: Map<String, Value> = k.iter().map(|&(m, e)| (m.to_string(), json!(e))).collect();
            kappa.insert(v.to_string(), Value::Object(ms));
        }
    }
    json!({
        "graph": graph.to_json(),
        "chi": chi,
        "kappa": kappa,
        "psi": psi,
        "coeff": coeff,
    })
}

impl fmt::Display for TautClass<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, c) in &self.terms {
            writeln!(f, "{c} * {}", describe_key(k))?;
        }
        Ok(())
    }
}

/// Short human-readable description of a term key.
pub fn describe_key(key: &TermKey) -> String {
    let verts: Vec<String> = key
        .vertices
        .iter()
        .map(|(g, k)| {
            let ks: Vec<String> = k.iter().map(|(m, e)| format!("k{m}^{e}")).collect();
            if ks.is_empty() {
                format!("g{g}")
            } else {
                format!("g{g}[{}]", ks.join(","))
            }
        })
        .collect();
    let half = |(v, (c, e)): &(usize, HalfLabel)| {
        if *e > 0 {
            format!("{v}:c{}:psi^{e}", c.0)
        } else {
            format!("{v}:c{}", c.0)
        }
    };
    let legs: Vec<String> = key.legs.iter().map(half).collect();
    let edges: Vec<String> = key
        .edges
        .iter()
        .map(|(a, b)| format!("({}-{})", half(a), half(b)))
        .collect();
    format!("V[{}] L[{}] E[{}]", verts.join(" "), legs.join(" "), edges.join(" "))
}

/// `coeff · ζ_{Γ,χ}[∏ series]`, expanded and truncated at total degree
/// `max_degree` (edges included).
pub fn assemble(
    graph: &StableGraph,
    chi: &ChiLabeling,
    factors: &[LocalSeries],
    coeff: &Rational,
    max_degree: usize,
) -> TautClass<Rational> {
    let mut out = TautClass::new();
    let Some(local) = max_degree.checked_sub(graph.num_edges()) else {
        return out;
    };
    let mut product = LocalSeries::one(local);
    for s in factors {
        product = product.mul_ref(s);
    }
    out.add_series(graph, chi, &product, coeff);
    out
}
