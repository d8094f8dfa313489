mod common;

use apolar::{
    build, build_forms, closed_form_hilbert, closed_form_table, derivative_bound, evaluate_decomposition,
    hilbert_function, minimal_generator_degrees, monomial_decomposition, FamilySpec, QLinearSeries, QPolynomial,
    Rational, TableFamily,
};
use common::naive_hilbert;

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn brute_force_matches_closed_form_small() {
    let specs = ["det:2", "det:3", "pf:2", "symdet:2", "symdet:3", "monprod:4", "minors:2,3,1", "minors:3,3,2", "matmul:2,3,2"];
    for s in specs {
        let spec: FamilySpec = s.parse().unwrap();
        let w: QLinearSeries = build(&spec).unwrap();
        let closed = closed_form_hilbert(&spec).unwrap();
        assert_eq!(hilbert_function(&w).unwrap(), closed, "{s}");
        // and the slow oracle agrees too
        let forms: Vec<QPolynomial> = build_forms(&spec).unwrap();
        assert_eq!(naive_hilbert(&forms), closed.dims, "{s} (naive)");
    }
}

#[test]
fn quadric_generation() {
    for s in ["det:2", "det:3", "pf:2", "pf:3", "symdet:2", "symdet:3"] {
        let w: QLinearSeries = build(&s.parse::<FamilySpec>().unwrap()).unwrap();
        assert_eq!(minimal_generator_degrees(&w).unwrap().delta, 2, "{s}");
    }
}

#[test]
fn invariant_derivative_on_determinants() {
    for n in 2..=4u32 {
        let spec = FamilySpec::Det(n);
        let w: QLinearSeries = build(&spec).unwrap();
        let (p, _) = spec.invariant_partial(w.context()).unwrap();
        let m = u64::from(n);
        let expected = binom(2 * m, m) - binom(2 * m - 2, m - 1);
        assert_eq!(derivative_bound(&w, &p).unwrap() as u64, expected, "n = {n}");
    }
}

#[test]
fn monomial_decompositions_are_exact() {
    for n in 1..=6u32 {
        let (forms, coeffs) = monomial_decomposition::<Rational>(n).unwrap();
        assert_eq!(forms.len(), 1 << (n - 1));
        let target = build_forms::<Rational>(&FamilySpec::MonomialProduct(n)).unwrap().remove(0);
        let sum = evaluate_decomposition(&forms, &coeffs, n).unwrap();
        assert_eq!(sum.to_string(), target.to_string(), "n = {n}");
    }
}

fn table_strings(family: TableFamily) -> Vec<Vec<String>> {
    closed_form_table(family, 2..=8)
        .unwrap()
        .rows
        .iter()
        .map(|(_, cells)| cells.iter().map(ToString::to_string).collect())
        .collect()
}

fn rows(data: &[&[&str]]) -> Vec<Vec<String>> {
    data.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

#[test]
fn determinant_table() {
    let expected = rows(&[
        &["4", "9", "36", "100", "400", "1225", "4900"],
        &["4", "14", "43", "116", "420", "1258", "4939"],
        &["3", "10", "35", "126", "462", "1716", "6435"],
        &["4", "14", "50", "182", "672", "2508", "9438"],
        &["4", "18", "68", "250", "922", "3430", "12868"],
        &["4", "20", "160", "1600", "16000", "224000", "3584000"],
    ]);
    assert_eq!(table_strings(TableFamily::Det), expected);
}

#[test]
fn pfaffian_table() {
    let expected = rows(&[
        &["6", "15", "70", "210", "924", "3003", "12870"],
        &["4", "16", "64", "256", "1024", "4096", "16384"],
        &["6", "24", "96", "384", "1536", "6144", "24576"],
        &["8", "32", "128", "512", "2048", "8192", "32768"],
        // (2n-1)!! * 2^(n-1); at n = 7 this is 135135 * 64
        &["6", "60", "840", "15120", "332640", "8648640", "259459200"],
    ]);
    assert_eq!(table_strings(TableFamily::Pfaffian), expected);
}

#[test]
fn symmetric_determinant_table() {
    let expected = rows(&[
        &["3", "6", "20", "50", "175", "490", "1764"],
        &["5/2", "7", "21", "66", "429/2", "715", "2431"],
        &["3", "9", "28", "90", "297", "1001", "3432"],
        &["5", "14", "42", "132", "429", "1430", "4862"],
    ]);
    assert_eq!(table_strings(TableFamily::Symdet), expected);
}
