mod common;

use num::{One, Zero};
use proptest::prelude::*;
use stackydr::arith::{bernoulli_poly, int, interpolate, rat, RPolynomial, Rational};
use stackydr::decorations::ChiLabeling;
use stackydr::graph::enumerate_stable_graphs;
use stackydr::series::{check_edge_kernel_c, edge_kernel_c, edge_kernel_p, Monomial, Var};
use stackydr::taut::term_key;
use stackydr::{ClassId, TautClass, TermKey};

#[test]
fn bernoulli_identities_on_seeded_rationals() {
    let xs = common::random_rationals(20261015, 100);
    assert_eq!(common::bernoulli_violations(&xs, 8), Vec::<String>::new());
}

#[test]
fn bernoulli_difference_is_a_power() {
    // B_{m+1}(x+1) - B_{m+1}(x) = (m+1) x^m
    for x in common::random_rationals(7, 20) {
        for m in 0..8 {
            let diff = bernoulli_poly(m + 1, &(&x + int(1))) - bernoulli_poly(m + 1, &x);
            assert_eq!(diff, int(m as i64 + 1) * num::pow(x.clone(), m));
        }
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn keys() -> Vec<TermKey> {
    let mut out = Vec::new();
    for graph in enumerate_stable_graphs(1, 2).unwrap() {
        let chi = ChiLabeling::new(vec![ClassId(0); graph.num_half_edges()]);
        out.push(term_key(&graph, &chi, &Monomial::one()));
        for h in 0..graph.num_half_edges() {
            out.push(term_key(&graph, &chi, &Monomial::var(Var::Psi(h))));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn taut_class() -> impl Strategy<Value = TautClass<Rational>> {
    let n = keys().len();
    prop::collection::vec((0..n, rational()), 0..8).prop_map(|entries| {
        let ks = keys();
        let mut c = TautClass::new();
        for (i, x) in entries {
            c.add_term(ks[i].clone(), x);
        }
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interpolation_recovers_polynomials(coeffs in prop::collection::vec(rational(), 0..7), start in 3i64..50) {
        let poly = RPolynomial::new(coeffs);
        let points: Vec<(i64, Rational)> = (0..7).map(|i| {
            let x = start + 2 * i;
            (x, poly.eval(&int(x)))
        }).collect();
        prop_assert_eq!(interpolate(&points, 6).unwrap(), poly);
    }

    #[test]
    fn taut_class_is_linear(a in taut_class(), b in taut_class(), s in rational()) {
        prop_assert_eq!(a.add(&b).scale(&s), a.scale(&s).add(&b.scale(&s)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.add(&a.scale(&int(-1))).is_empty());
        prop_assert_eq!(a.scale(&Rational::one()), a.clone());
    }

    #[test]
    fn degree_part_is_idempotent(a in taut_class(), d in 0usize..3) {
        let once = a.degree_part(d);
        prop_assert_eq!(once.degree_part(d), once.clone());
        let total = (0..=4).fold(TautClass::new(), |acc, k| acc.add(&a.degree_part(k)));
        prop_assert_eq!(total, a);
    }

    #[test]
    fn json_round_trip(a in taut_class()) {
        prop_assert_eq!(TautClass::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn kernel_p_is_symmetric(x in rational(), d in 0usize..5) {
        prop_assert_eq!(edge_kernel_p(&x, 0, 1, d), edge_kernel_p(&x, 1, 0, d));
    }

    #[test]
    fn kernel_c_reverses_with_orientation(x in rational(), d in 0usize..5) {
        let coeffs = |y: &Rational| -> Vec<Rational> {
            (1..=d + 1).map(|m| {
                let sign = if m % 2 == 1 { int(1) } else { int(-1) };
                sign * bernoulli_poly(m + 1, y) / int((m * (m + 1)) as i64)
            }).collect()
        };
        let forward = edge_kernel_c(&coeffs(&x), 0, 1, d);
        let backward = edge_kernel_c(&coeffs(&(int(1) - &x)), 1, 0, d);
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn kernel_c_with_linear_argument_is_kernel_p(x in rational(), d in 0usize..5) {
        prop_assert_eq!(edge_kernel_c(std::slice::from_ref(&x), 0, 1, d), edge_kernel_p(&x, 0, 1, d));
    }

    #[test]
    fn kernel_c_divides_exactly(coeffs in prop::collection::vec(rational(), 1..5), d in 0usize..4) {
        prop_assert!(check_edge_kernel_c(&coeffs, 0, 1, d).is_ok());
    }
}

#[test]
fn zero_class_is_empty() {
    let mut c = TautClass::<Rational>::new();
    c.add_term(keys()[0].clone(), Rational::zero());
    assert!(c.is_empty());
}
