//! Slow, obviously-correct reference computations used as oracles.
#![allow(dead_code)]

use apolar::{monomial_basis, QPolynomial, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Rank by Gauss-Jordan elimination with field division.
pub fn naive_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = Rational::one() / m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..cols {
                    let v = m[rank][k].clone() * f.clone();
                    m[r][k] = m[r][k].clone() - v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Hilbert function by enumerating every iterated partial derivative.
pub fn naive_hilbert(forms: &[QPolynomial]) -> Vec<usize> {
    let f0 = forms.iter().find(|f| !f.is_zero()).expect("nonzero series");
    let n = f0.context().len();
    let d = f0.degree().unwrap();
    (0..=d)
        .map(|t| {
            let basis = monomial_basis(n, t);
            let mut rows = Vec::new();
            for f in forms {
                for beta in monomial_basis(n, d - t) {
                    let mut g = f.clone();
                    for (v, &e) in beta.exponents().iter().enumerate() {
                        for _ in 0..e {
                            g = g.derivative(v);
                        }
                    }
                    rows.push(basis.iter().map(|m| g.coefficient(m)).collect());
                }
            }
            naive_rank(&rows)
        })
        .collect()
}

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Random homogeneous form of the given degree in `nvars` variables.
pub fn homogeneous_form(nvars: usize, degree: u32) -> impl Strategy<Value = QPolynomial> {
    let basis = monomial_basis(nvars, degree);
    let len = basis.len();
    proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -5i64..=5], len)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(move |coeffs| {
            let ctx = apolar::VarContext::numbered("x", nvars);
            let c: Vec<Rational> = coeffs.into_iter().map(q).collect();
            QPolynomial::from_coefficients(&ctx, &basis, &c)
        })
}
