//! Truncated power series in `κ_m(v)` and `ψ̄_h`, graded by `deg κ_m = m`
//! and `deg ψ̄ = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num::{One, Zero};
use thiserror::Error;

use crate::arith::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Kappa { vertex: usize, m: u32 },
    Psi(usize),
}

impl Var {
    pub fn degree(&self) -> usize {
        match self {
            Var::Kappa { m, .. } => *m as usize,
            Var::Psi(_) => 1,
        }
    }
}

/// Sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort();
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match merged.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|(v, e)| v.degree() * *e as usize).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("exponential needs a zero constant term, got {0}")]
    NonzeroConstant(String),
    #[error("edge kernel division left a nonzero remainder")]
    DivisionRemainder,
}

/// Polynomial in [`Var`]s with every monomial of degree at most `max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSeries {
    max_degree: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl LocalSeries {
    pub fn zero(max_degree: usize) -> Self {
        LocalSeries { max_degree, terms: BTreeMap::new() }
    }

    pub fn one(max_degree: usize) -> Self {
        Self::constant(Rational::one(), max_degree)
    }

    pub fn constant(c: Rational, max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        s.add_term(Monomial::one(), c);
        s
    }

    pub fn var(v: Var, max_degree: usize) -> Self {
        Self::monomial(Monomial::var(v), Rational::one(), max_degree)
    }

    pub fn monomial(m: Monomial, c: Rational, max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        s.add_term(m, c);
        s
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// Adds `c·m`, dropping it if `m` is above the truncation degree.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || m.degree() > self.max_degree {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.max_degree);
        if !c.is_zero() {
            for (m, x) in &self.terms {
                out.terms.insert(m.clone(), x * c);
            }
        }
        out
    }

    pub fn add_assign_ref(&mut self, other: &LocalSeries) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// Product truncated at the smaller of the two truncation degrees.
    pub fn mul_ref(&self, other: &LocalSeries) -> Self {
        let d = self.max_degree.min(other.max_degree);
        let mut out = Self::zero(d);
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if d1 > d {
                continue;
            }
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() > d {
                    continue;
                }
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.max_degree);
        for _ in 0..k {
            out = out.mul_ref(self);
        }
        out
    }

    /// Restriction to monomials of degree exactly `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        LocalSeries {
            max_degree: self.max_degree,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Σ_{k ≤ D} s^k / k!`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(SeriesError::NonzeroConstant(c0.to_string()));
        }
        let mut out = Self::one(self.max_degree);
        let mut power = Self::one(self.max_degree);
        for k in 1..=self.max_degree {
            power = power.mul_ref(self).scale(&Rational::new(1.into(), (k as i64).into()));
            if power.is_zero() {
                break;
            }
            out.add_assign_ref(&power);
        }
        Ok(out)
    }
}

impl Add for &LocalSeries {
    type Output = LocalSeries;

    fn add(self, rhs: &LocalSeries) -> LocalSeries {
        let mut out = self.clone();
        out.max_degree = out.max_degree.min(rhs.max_degree);
        out.terms.retain(|m, _| m.degree() <= rhs.max_degree);
        out.add_assign_ref(rhs);
        out
    }
}

impl Mul for &LocalSeries {
    type Output = LocalSeries;

    fn mul(self, rhs: &LocalSeries) -> LocalSeries {
        self.mul_ref(rhs)
    }
}

impl fmt::Display for LocalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = format!("({c})");
                for (v, e) in m.factors() {
                    let name = match v {
                        Var::Kappa { vertex, m } => format!("k{m}[{vertex}]"),
                        Var::Psi(h) => format!("psi[{h}]"),
                    };
                    s.push('*');
                    s.push_str(&name);
                    if *e > 1 {
                        s.push_str(&format!("^{e}"));
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn factorial_rat(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, i| acc * int(i))
}

/// `(1 - exp(x·s)) / s` with `s = ψ̄₊ + ψ̄₋`, i.e. `-Σ_{k≥1} x^k s^{k-1} / k!`.
pub fn edge_kernel_p(x: &Rational, plus: usize, minus: usize, max_degree: usize) -> LocalSeries {
    let s = &LocalSeries::var(Var::Psi(plus), max_degree) + &LocalSeries::var(Var::Psi(minus), max_degree);
    let mut out = LocalSeries::zero(max_degree);
    let mut s_pow = LocalSeries::one(max_degree);
    let mut x_pow = x.clone();
    for k in 1..=max_degree + 1 {
        out.add_assign_ref(&s_pow.scale(&(-&x_pow / factorial_rat(k))));
        s_pow = s_pow.mul_ref(&s);
        x_pow *= x;
    }
    out
}

/// `(1 - exp(Σ_m c_m (ψ̄₊^m - (-ψ̄₋)^m))) / (ψ̄₊ + ψ̄₋)`.
///
/// With `q_m = (ψ̄₊^m - (-ψ̄₋)^m)/(ψ̄₊ + ψ̄₋)` and `Q = Σ c_m q_m`, the argument
/// is `sQ` and the kernel is `-Σ_{k≥1} s^{k-1} Q^k / k!`. `coeffs[m-1]` holds
/// `c_m`; entries with `m > D + 1` cannot contribute.
pub fn edge_kernel_c(coeffs: &[Rational], plus: usize, minus: usize, max_degree: usize) -> LocalSeries {
    let d = max_degree;
    let p = Var::Psi(plus);
    let q = Var::Psi(minus);
    let mut big_q = LocalSeries::zero(d);
    for (idx, c) in coeffs.iter().enumerate() {
        let m = idx + 1;
        if m > d + 1 || c.is_zero() {
            continue;
        }
        // q_m = Σ_{j<m} ψ̄₊^{m-1-j} (-ψ̄₋)^j
        for j in 0..m {
            let sign = if j % 2 == 0 { c.clone() } else { -c.clone() };
            let mono = Monomial::from_pairs(vec![(p, (m - 1 - j) as u32), (q, j as u32)]);
            big_q.add_term(mono, sign);
        }
    }
    let s = &LocalSeries::var(p, d) + &LocalSeries::var(q, d);
    let mut out = LocalSeries::zero(d);
    let mut s_pow = LocalSeries::one(d);
    let mut q_pow = big_q.clone();
    for k in 1..=d + 1 {
        if q_pow.is_zero() {
            break;
        }
        out.add_assign_ref(&s_pow.mul_ref(&q_pow).scale(&(-factorial_rat(k).recip())));
        s_pow = s_pow.mul_ref(&s);
        q_pow = q_pow.mul_ref(&big_q);
    }
    out
}

/// Reference check of the exact division: multiplies the kernel back by
/// `ψ̄₊ + ψ̄₋` and compares with `1 - exp(Σ c_m (ψ̄₊^m - (-ψ̄₋)^m))` through
/// degree `D + 1`.
pub fn check_edge_kernel_c(coeffs: &[Rational], plus: usize, minus: usize, max_degree: usize) -> Result<(), SeriesError> {
    let d1 = max_degree + 1;
    let kernel = edge_kernel_c(coeffs, plus, minus, max_degree);
    let s = &LocalSeries::var(Var::Psi(plus), d1) + &LocalSeries::var(Var::Psi(minus), d1);
    let mut kernel_up = LocalSeries::zero(d1);
    kernel_up.add_assign_ref(&kernel);
    let lhs = kernel_up.mul_ref(&s);
    let mut arg = LocalSeries::zero(d1);
    for (idx, c) in coeffs.iter().enumerate() {
        let m = (idx + 1) as u32;
        if m as usize > d1 {
            continue;
        }
        arg.add_term(Monomial::from_pairs(vec![(Var::Psi(plus), m)]), c.clone());
        let sign = if m.is_multiple_of(2) { c.clone() } else { -c.clone() };
        arg.add_term(Monomial::from_pairs(vec![(Var::Psi(minus), m)]), -sign);
    }
    let mut rhs = LocalSeries::one(d1);
    rhs.add_assign_ref(&arg.exp()?.scale(&int(-1)));
    if lhs == rhs {
        Ok(())
    } else {
        Err(SeriesError::DivisionRemainder)
    }
}
