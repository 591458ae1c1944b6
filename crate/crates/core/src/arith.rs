//! Exact rational arithmetic helpers, Bernoulli numbers and polynomials, and
//! univariate interpolation in the root order `r`.

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Exact rational number. Always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("need at least {needed} interpolation points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("duplicate interpolation abscissa r = {0}")]
    DuplicatePoint(i64),
    #[error("point r = {r} has value {got} but the interpolant predicts {expected}")]
    Inconsistent {
        r: i64,
        expected: String,
        got: String,
    },
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn bernoulli_table() -> &'static Mutex<Vec<Rational>> {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// Bernoulli number `B_m` for the series `t e^{tx}/(e^t - 1)` at `x = 0`,
/// so `B_1 = -1/2`.
///
/// Uses the recursion `sum_{k=0}^{m} C(m+1, k) B_k = 0` and memoizes every
/// value computed so far.
pub fn bernoulli_number(m: usize) -> Rational {
    let mut table = bernoulli_table().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= m {
        let n = table.len() as u64;
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            acc += Rational::from_integer(binomial(n + 1, k as u64)) * b;
        }
        let next = -acc / Rational::from_integer(BigInt::from(n + 1));
        table.push(next);
    }
    table[m].clone()
}

/// `B_m(x) = sum_k C(m, k) B_k x^{m-k}`.
pub fn bernoulli_poly(m: usize, x: &Rational) -> Rational {
    // Horner in x over the coefficients C(m,k) B_k, highest power first.
    let mut acc = Rational::zero();
    for k in 0..=m {
        acc = acc * x + Rational::from_integer(binomial(m as u64, k as u64)) * bernoulli_number(k);
    }
    acc
}

/// Polynomial in the formal variable `r` with exact rational coefficients,
/// lowest degree first and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RPolynomial {
    coeffs: Vec<Rational>,
}

impl RPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RPolynomial { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn eval(&self, r: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * r + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for RPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "r")?;
                    } else {
                        write!(f, "r^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Incremental Newton-form interpolation over exact rationals.
#[derive(Clone, Debug, Default)]
pub struct Newton {
    xs: Vec<Rational>,
    // Divided differences f[x_0..x_k] for k = 0..len.
    diffs: Vec<Rational>,
    // Last row of the divided-difference table, needed to extend it.
    row: Vec<Rational>,
}

impl Newton {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn push(&mut self, x: i64, y: Rational) -> Result<(), ArithError> {
        let xr = int(x);
        if self.xs.contains(&xr) {
            return Err(ArithError::DuplicatePoint(x));
        }
        // row[j] holds f[x_j .. x_last]; rebuild it for the new last point.
        let mut new_row = Vec::with_capacity(self.row.len() + 1);
        new_row.push(y);
        for j in (0..self.xs.len()).rev() {
            let prev = new_row.last().unwrap().clone();
            let d = (prev - &self.row[j]) / (&xr - &self.xs[j]);
            new_row.push(d);
        }
        new_row.reverse();
        self.diffs.push(new_row[0].clone());
        self.xs.push(xr);
        self.row = new_row;
        Ok(())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for k in (0..self.diffs.len()).rev() {
            acc = acc * (x - &self.xs[k]) + &self.diffs[k];
        }
        acc
    }

    pub fn to_poly(&self) -> RPolynomial {
        // Expand the nested Newton form from the innermost factor outwards.
        let mut coeffs: Vec<Rational> = Vec::new();
        for k in (0..self.diffs.len()).rev() {
            let mut next = vec![Rational::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &self.xs[k];
            }
            next[0] += &self.diffs[k];
            coeffs = next;
        }
        RPolynomial::new(coeffs)
    }
}

/// The unique polynomial of degree `<= degree_bound` through the first
/// `degree_bound + 1` points. Any further points are checked against it.
pub fn interpolate(points: &[(i64, Rational)], degree_bound: usize) -> Result<RPolynomial, ArithError> {
    if points.len() < degree_bound + 1 {
        return Err(ArithError::TooFewPoints {
            needed: degree_bound + 1,
            got: points.len(),
        });
    }
    let mut newton = Newton::new();
    for (x, y) in &points[..=degree_bound] {
        newton.push(*x, y.clone())?;
    }
    let poly = newton.to_poly();
    for (x, y) in &points[degree_bound + 1..] {
        if points[..=degree_bound].iter().any(|(px, _)| px == x) {
            return Err(ArithError::DuplicatePoint(*x));
        }
        let predicted = poly.eval(&int(*x));
        if &predicted != y {
            return Err(ArithError::Inconsistent {
                r: *x,
                expected: predicted.to_string(),
                got: y.to_string(),
            });
        }
    }
    Ok(poly)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn next_prime(mut n: u64) -> u64 {
    while !is_prime(n) {
        n += 1;
    }
    n
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
