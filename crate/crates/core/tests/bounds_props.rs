mod common;

use apolar::{
    bernardi_ranestad_upper, build, derivative_bound, generic_derivative_bound, leading_coefficient_bound,
    ranestad_schreyer_bound, sylvester_bound, DualForm, FamilySpec, Monomial, QLinearSeries, QPolynomial, Rational,
    VarContext,
};
use common::{homogeneous_form, q};
use proptest::prelude::*;

/// The same form with variable order reversed.
fn reversed(f: &QPolynomial) -> QPolynomial {
    let names: Vec<String> = f.context().vars().iter().rev().map(ToString::to_string).collect();
    let ctx = VarContext::from_names(&names).unwrap();
    QPolynomial::from_terms(
        &ctx,
        f.terms().map(|(m, c)| (Monomial::new(m.exponents().iter().rev().copied().collect()), c.clone())),
    )
}

fn catalog() -> Vec<FamilySpec> {
    ["det:2", "det:3", "pf:2", "symdet:2", "symdet:3", "monprod:3", "perm:2", "minors:2,3,2", "matmul:2,2,2"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bounds_are_scale_invariant(f in homogeneous_form(3, 3), c in prop_oneof![-5i64..=-1, 1i64..=5], p in proptest::collection::vec(-2i64..=2, 3)) {
        prop_assume!(p.iter().any(|&x| x != 0));
        let w = QLinearSeries::single(f.clone()).unwrap();
        let scaled = w.scaled(&q(c));
        let partial = DualForm::linear(f.context(), &p.iter().map(|&x| q(x)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(sylvester_bound(&w).unwrap(), sylvester_bound(&scaled).unwrap());
        prop_assert_eq!(ranestad_schreyer_bound(&w).unwrap(), ranestad_schreyer_bound(&scaled).unwrap());
        prop_assert_eq!(derivative_bound(&w, &partial).unwrap(), derivative_bound(&scaled, &partial).unwrap());
    }

    #[test]
    fn bounds_follow_variable_permutation(f in homogeneous_form(3, 3), p in proptest::collection::vec(-2i64..=2, 3)) {
        prop_assume!(p.iter().any(|&x| x != 0));
        let g = reversed(&f);
        let w = QLinearSeries::single(f.clone()).unwrap();
        let v = QLinearSeries::single(g.clone()).unwrap();
        let coeffs: Vec<Rational> = p.iter().map(|&x| q(x)).collect();
        let rev: Vec<Rational> = coeffs.iter().rev().cloned().collect();
        let pw = DualForm::linear(f.context(), &coeffs).unwrap();
        let pv = DualForm::linear(g.context(), &rev).unwrap();
        prop_assert_eq!(sylvester_bound(&w).unwrap(), sylvester_bound(&v).unwrap());
        prop_assert_eq!(ranestad_schreyer_bound(&w).unwrap(), ranestad_schreyer_bound(&v).unwrap());
        prop_assert_eq!(derivative_bound(&w, &pw).unwrap(), derivative_bound(&v, &pv).unwrap());
        prop_assert_eq!(leading_coefficient_bound(&f, 0).unwrap().value, leading_coefficient_bound(&g, 2).unwrap().value);
    }

    #[test]
    fn trial_values_dominate_the_minimum(f in homogeneous_form(3, 3), seed in 0u64..1000) {
        let w = QLinearSeries::single(f).unwrap();
        let g = generic_derivative_bound(&w, 4, seed).unwrap();
        prop_assert!(g.trial_values.iter().all(|&v| v >= g.value));
        prop_assert!(g.trial_values.contains(&g.value));
    }
}

#[test]
fn generic_bound_is_seed_stable_on_catalog_forms() {
    for spec in catalog() {
        let w: QLinearSeries = build(&spec).unwrap();
        let values: Vec<usize> = [1u64, 17, 999].iter().map(|&s| generic_derivative_bound(&w, 3, s).unwrap().value).collect();
        assert!(values.windows(2).all(|p| p[0] == p[1]), "{spec}: {values:?}");
    }
}

#[test]
fn lower_bounds_below_dehomogenized_upper_bounds() {
    for spec in catalog() {
        let w: QLinearSeries = build(&spec).unwrap();
        if w.dim() != 1 {
            continue;
        }
        let f = &w.basis()[0];
        let ctx = w.context();
        let mut lower = vec![sylvester_bound(&w).unwrap(), ranestad_schreyer_bound(&w).unwrap().ceiling()];
        lower.push(generic_derivative_bound(&w, 3, 0).unwrap().value);
        if let Some((p, _)) = spec.invariant_partial(ctx) {
            lower.push(derivative_bound(&w, &p).unwrap());
        }
        let best = *lower.iter().max().unwrap();
        // every variable, plus the all-ones form
        let mut ls: Vec<QPolynomial> = (0..ctx.len()).map(|i| QPolynomial::var(ctx, i)).collect();
        ls.push(QPolynomial::linear(ctx, &vec![q(1); ctx.len()]).unwrap());
        for l in ls {
            let upper = bernardi_ranestad_upper(f, &l).unwrap();
            assert!(best <= upper, "{spec}: lower {best} > upper {upper} at {l}");
        }
    }
}

#[test]
fn det3_generic_regression_value() {
    let w: QLinearSeries = build(&FamilySpec::Det(3)).unwrap();
    let g = generic_derivative_bound(&w, 5, 0).unwrap();
    assert_eq!(g.value, 9);
    assert!(g.value < 14);
}

#[test]
fn leading_coefficient_det3() {
    let w: QLinearSeries = build(&FamilySpec::Det(3)).unwrap();
    let lc = leading_coefficient_bound(&w.basis()[0], 0).unwrap();
    assert_eq!((lc.power, lc.value), (1, 6));
    assert_eq!(lc.coefficient_form.to_string(), "x[2,2]*x[3,3] - x[2,3]*x[3,2]");
}
