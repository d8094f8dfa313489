//! Acceptance gate. Each test checks one criterion exactly and prints a
//! single `PASS` or `FAIL` line before asserting.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use apolar::{
    apolar_ideal_component, apolar_length, bernardi_ranestad_upper, build, closed_form_hilbert, colon_component,
    derivative_bound, det_singular_locus_bound, evaluate_decomposition, generic_derivative_bound, hilbert_function,
    leading_coefficient_bound, minimal_generator_degrees, monomial_basis, monomial_decomposition,
    parse_polynomial, quotient_length_with_linear, random_partials, ranestad_schreyer_bound, sylvester_bound,
    DualForm, EchelonBasis, FamilySpec, QDualForm, QLinearSeries, QPolynomial, Rational, VarContext,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE_TIME_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(300);
const MIN_LENGTH_PAIRS: usize = 25;
const MIN_COLON_TRIPLES: usize = 15;
const RANDOM_CUBICS: usize = 50;
const GENERIC_TRIALS: usize = 5;
const SEEDS: [u64; 3] = [0, 7, 2024];

fn verdict(id: u32, name: &str, pass: bool, detail: &str) {
    let word = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} [{word}] {name}: {detail}");
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

fn spec(s: &str) -> FamilySpec {
    s.parse().unwrap()
}

fn series(s: &str) -> QLinearSeries {
    build(&spec(s)).unwrap()
}

fn cli(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_apolar")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows of a markdown table, header and separator dropped.
fn markdown_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| l.starts_with("| "))
        .skip(1)
        .map(|l| l.trim_matches('|').split(" | ").map(|c| c.trim().to_string()).collect())
        .collect()
}

#[test]
fn criterion_01_table_reproduction() {
    let published: [(&str, &[&[&str]]); 3] = [
        (
            "det",
            &[
                &["4", "9", "36", "100", "400", "1225", "4900"],
                &["4", "14", "43", "116", "420", "1258", "4939"],
                &["3", "10", "35", "126", "462", "1716", "6435"],
                &["4", "14", "50", "182", "672", "2508", "9438"],
                &["4", "18", "68", "250", "922", "3430", "12868"],
                &["4", "20", "160", "1600", "16000", "224000", "3584000"],
            ],
        ),
        (
            "pf",
            &[
                &["6", "15", "70", "210", "924", "3003", "12870"],
                &["4", "16", "64", "256", "1024", "4096", "16384"],
                &["6", "24", "96", "384", "1536", "6144", "24576"],
                &["8", "32", "128", "512", "2048", "8192", "32768"],
                &["6", "60", "840", "15120", "332640", "8468640", "259459200"],
            ],
        ),
        (
            "symdet",
            &[
                &["3", "6", "20", "50", "175", "490", "1764"],
                &["2.5", "7", "21", "66", "214.5", "715", "2431"],
                &["3", "9", "28", "90", "297", "1001", "3432"],
                &["5", "14", "42", "132", "429", "1430", "4862"],
            ],
        ),
    ];
    let mut mismatches = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut cells = 0;
    for (family, rows) in published {
        let start = Instant::now();
        let out = cli(&["table", family, "--n-max", "8"]);
        slowest = slowest.max(start.elapsed());
        let got = markdown_rows(&out);
        if got.len() != rows.len() {
            mismatches.push(format!("{family}: {} rows, expected {}", got.len(), rows.len()));
            continue;
        }
        for (r, (g, want)) in got.iter().zip(rows.iter()).enumerate() {
            for (k, w) in want.iter().enumerate() {
                cells += 1;
                let cell = g.get(k + 1).map(String::as_str).unwrap_or("");
                if cell != *w {
                    mismatches.push(format!("{family} row {} ({}) n={}: got {cell}, table {w}", r + 1, g[0], k + 2));
                }
            }
        }
    }
    let pass = mismatches.is_empty() && slowest < TABLE_TIME_LIMIT;
    let detail = format!(
        "{}/{cells} cells equal, slowest table {:?} (limit {:?}){}",
        cells - mismatches.len(),
        slowest,
        TABLE_TIME_LIMIT,
        if mismatches.is_empty() { String::new() } else { format!("; mismatches: {}", mismatches.join("; ")) }
    );
    verdict(1, "table reproduction", pass, &detail);
}

#[test]
fn criterion_02_oracle_equivalence() {
    let mut specs: Vec<FamilySpec> = ["det:2", "det:3", "det:4", "pf:2", "pf:3", "symdet:2", "symdet:3"].map(spec).to_vec();
    for n in 1..=4 {
        for m in 1..=n {
            for d in 1..=m {
                specs.push(FamilySpec::Minors { m, n, d });
            }
        }
    }
    for p in 1..=3 {
        for q in 1..=3 {
            for r in 1..=3 {
                specs.push(FamilySpec::Matmul { p, q, r });
            }
        }
    }
    let start = Instant::now();
    let failures: Vec<String> = specs
        .iter()
        .filter_map(|s| {
            let computed = hilbert_function(&build::<Rational>(s).unwrap()).unwrap();
            let closed = closed_form_hilbert(s).unwrap();
            (computed != closed).then(|| format!("{s}: computed {computed}, closed form {closed}"))
        })
        .collect();
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < ORACLE_TIME_LIMIT;
    let detail = format!("{} families agree in {elapsed:?} (limit {ORACLE_TIME_LIMIT:?}) {failures:?}", specs.len() - failures.len());
    verdict(2, "oracle equivalence", pass, &detail);
}

#[test]
fn criterion_03_invariant_derivative_values() {
    let cases = [
        ("det:3", 14),
        ("det:4", 50),
        ("pf:2", 6),
        ("pf:3", 24),
        ("symdet:2", 3),
        ("symdet:3", 9),
        ("matmul:2,2,2", 9),
    ];
    let mut got = Vec::new();
    for (id, _) in cases {
        let s = spec(id);
        let w: QLinearSeries = build(&s).unwrap();
        let (partial, _) = s.invariant_partial(w.context()).unwrap();
        got.push(derivative_bound(&w, &partial).unwrap());
    }
    let pass = cases.iter().zip(&got).all(|((_, want), g)| want == g);
    let detail = cases
        .iter()
        .zip(&got)
        .map(|((id, want), g)| format!("{id}={g} (want {want})"))
        .collect::<Vec<_>>()
        .join(", ");
    verdict(3, "invariant derivative values", pass, &detail);
}

#[test]
fn criterion_04_quotient_length_identity() {
    let ids = ["det:2", "det:3", "pf:2", "symdet:2", "symdet:3", "perm:3", "monprod:3", "monprod:4", "minors:2,3,2", "matmul:2,2,2"];
    let mut pairs = 0;
    let mut failures = Vec::new();
    for (k, id) in ids.iter().enumerate() {
        let s = spec(id);
        let w: QLinearSeries = build(&s).unwrap();
        let mut partials: Vec<QDualForm> = random_partials(&w, 2, 100 + k as u64);
        partials.push(DualForm::partial(w.context(), 0));
        if let Some((p, _)) = s.invariant_partial(w.context()) {
            partials.push(p);
        }
        for p in partials {
            pairs += 1;
            let lhs = quotient_length_with_linear(&w, &p).unwrap();
            let rhs = apolar_length(&w).unwrap() - apolar_length(&w.apply(&p).unwrap()).unwrap_or(0);
            if lhs != rhs {
                failures.push(format!("{id}, {p}: {lhs} != {rhs}"));
            }
        }
    }
    let pass = failures.is_empty() && pairs >= MIN_LENGTH_PAIRS;
    verdict(4, "quotient length identity", pass, &format!("{pairs} pairs (need {MIN_LENGTH_PAIRS}) {failures:?}"));
}

fn same_span(a: &[QDualForm], b: &[QDualForm], ctx: &std::sync::Arc<VarContext>, t: u32) -> bool {
    let basis = monomial_basis(ctx.len(), t);
    let index = apolar::poly::monomial_index(&basis);
    let mut ea = EchelonBasis::<Rational>::new(basis.len());
    for x in a {
        ea.insert(&x.as_polynomial().coefficients_in(&index)).unwrap();
    }
    let mut eb = EchelonBasis::<Rational>::new(basis.len());
    for x in b {
        eb.insert(&x.as_polynomial().coefficients_in(&index)).unwrap();
    }
    ea.dim() == eb.dim()
        && a.iter().all(|x| eb.contains(&x.as_polynomial().coefficients_in(&index)).unwrap())
}

#[test]
fn criterion_05_colon_identity() {
    let ids = ["det:2", "det:3", "pf:2", "symdet:3", "monprod:4", "minors:2,3,2", "matmul:2,2,2"];
    let mut triples = 0;
    let mut failures = Vec::new();
    for (k, id) in ids.iter().enumerate() {
        let w: QLinearSeries = series(id);
        let ctx = w.context().clone();
        let lin = random_partials(&w, 3, 500 + k as u64);
        let quad = lin[1].try_mul(&lin[2]).unwrap();
        let square = DualForm::partial(&ctx, 0).try_mul(&DualForm::partial(&ctx, ctx.len() - 1)).unwrap();
        for theta in [lin[0].clone(), DualForm::partial(&ctx, 0), quad, square] {
            let e = theta.degree().unwrap();
            let derived = w.apply(&theta).unwrap();
            for t in 0..=(w.degree() - e).min(2) {
                triples += 1;
                let colon = colon_component(&w, &theta, t).unwrap();
                let ideal = apolar_ideal_component(&derived, t).unwrap();
                if !same_span(&colon, &ideal, &ctx, t) {
                    failures.push(format!("{id}, Θ = {theta}, t = {t}"));
                }
            }
        }
    }
    let pass = failures.is_empty() && triples >= MIN_COLON_TRIPLES;
    verdict(5, "colon identity", pass, &format!("{triples} triples (need {MIN_COLON_TRIPLES}) {failures:?}"));
}

#[test]
fn criterion_06_generator_degrees() {
    let mut got: Vec<(String, u32, u32)> = ["det:2", "det:3", "pf:2", "pf:3", "symdet:2", "symdet:3"]
        .iter()
        .map(|id| (id.to_string(), minimal_generator_degrees(&series(id)).unwrap().delta, 2))
        .collect();
    let ctx = VarContext::numbered("x", 2);
    let cube: QPolynomial = parse_polynomial("x1^3", Some(&ctx)).unwrap();
    let delta = minimal_generator_degrees(&QLinearSeries::single(cube).unwrap()).unwrap().delta;
    got.push(("x1^3 in 2 variables".into(), delta, 4));
    let pass = got.iter().all(|(_, g, w)| g == w);
    let detail = got.iter().map(|(id, g, w)| format!("{id}: δ={g} (want {w})")).collect::<Vec<_>>().join(", ");
    verdict(6, "generator degrees", pass, &detail);
}

#[test]
fn criterion_07_monomial_tightness() {
    let mut exact = Vec::new();
    let mut generic = Vec::new();
    for n in 2..=6u32 {
        let (forms, coeffs) = monomial_decomposition::<Rational>(n).unwrap();
        let w: QLinearSeries = build(&FamilySpec::MonomialProduct(n)).unwrap();
        let target = &w.basis()[0];
        let sum = evaluate_decomposition(&forms, &coeffs, n).unwrap();
        exact.push(sum.to_string() == target.to_string() && forms.len() == 1 << (n - 1));
        generic.push(generic_derivative_bound(&w, GENERIC_TRIALS, 0).unwrap().value);
    }
    let want: Vec<usize> = (2..=6).map(|n| 1usize << (n - 1)).collect();
    let pass = exact.iter().all(|&e| e) && generic == want;
    let detail = format!(
        "decompositions exact for n=2..6: {exact:?}; generic derivative bound {generic:?}, required {want:?}"
    );
    verdict(7, "monomial tightness", pass, &detail);
}

#[test]
fn criterion_08_gorenstein_symmetry() {
    let ids = [
        "det:2", "det:3", "det:4", "perm:2", "perm:3", "pf:2", "pf:3", "symdet:2", "symdet:3", "symdet:4", "monprod:2",
        "monprod:3", "monprod:4", "monprod:5", "monprod:6", "minors:2,2,2", "matmul:1,1,1",
    ];
    let mut failures = Vec::new();
    for id in ids {
        let h = hilbert_function(&series(id)).unwrap();
        if !h.is_symmetric() {
            failures.push(format!("{id}: {h}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    while checked < RANDOM_CUBICS {
        let n = rng.gen_range(1..=4usize);
        let ctx = VarContext::numbered("x", n);
        let basis = monomial_basis(n, 3);
        let coeffs: Vec<Rational> =
            basis.iter().map(|_| Rational::from_integer(rng.gen_range(-9i64..=9).into())).collect();
        let f = QPolynomial::from_coefficients(&ctx, &basis, &coeffs);
        if f.is_zero() {
            continue;
        }
        checked += 1;
        let h = hilbert_function(&QLinearSeries::single(f.clone()).unwrap()).unwrap();
        if !h.is_symmetric() {
            failures.push(format!("{f}: {h}"));
        }
    }
    let pass = failures.is_empty();
    verdict(8, "Gorenstein symmetry", pass, &format!("{} catalog forms and {checked} random cubics {failures:?}", ids.len()));
}

#[test]
fn criterion_09_consistency_bracket() {
    let mut lines = Vec::new();
    let mut pass = true;
    for n in 2..=4u32 {
        let s = FamilySpec::Det(n);
        let w: QLinearSeries = build(&s).unwrap();
        let ctx = w.context();
        let f = &w.basis()[0];
        let last = QPolynomial::var(ctx, ctx.index_of("x", &[n, n]).unwrap());
        let upper = bernardi_ranestad_upper(f, &last).unwrap();
        let m = u64::from(n);
        let closed = (1..=m).fold(1u64, |acc, i| acc * (m + i) / i) as usize - 2;
        let (partial, _) = s.invariant_partial(ctx).unwrap();
        let lower = [
            ("sylvester", sylvester_bound(&w).unwrap()),
            ("length/δ", ranestad_schreyer_bound(&w).unwrap().ceiling()),
            ("generic derivative", generic_derivative_bound(&w, GENERIC_TRIALS, 0).unwrap().value),
            ("invariant derivative", derivative_bound(&w, &partial).unwrap()),
            ("leading coefficient", leading_coefficient_bound(f, 0).unwrap().value),
            ("singular locus", det_singular_locus_bound(m).unwrap() as usize),
        ];
        let ok = upper == closed && lower.iter().all(|(_, v)| *v <= upper);
        pass &= ok;
        lines.push(format!("det{n}: upper {upper} (closed {closed}), lower {lower:?}"));
    }
    verdict(9, "consistency bracket", pass, &lines.join("; "));
}

#[test]
fn criterion_10_determinism() {
    let invocations: [&[&str]; 4] = [
        &["bounds", "--form", "builtin:det:3", "--trials", "5", "--seed", "11", "--format", "json"],
        &["bounds", "--form", "builtin:monprod:4", "--trials", "7", "--seed", "3"],
        &["table", "symdet", "--n-max", "8", "--format", "csv"],
        &["apolar-gens", "--form", "builtin:pf:2", "--format", "json"],
    ];
    let mut unstable = Vec::new();
    for args in invocations {
        let runs: Vec<String> = (0..3).map(|_| cli(args)).collect();
        if runs.windows(2).any(|p| p[0] != p[1]) {
            unstable.push(format!("{args:?}"));
        }
    }
    let mut by_form = BTreeMap::new();
    for id in ["det:2", "det:3", "pf:2", "pf:3", "symdet:2", "symdet:3", "perm:3", "monprod:4", "matmul:2,2,2"] {
        let w = series(id);
        let values: Vec<usize> =
            SEEDS.iter().map(|&s| generic_derivative_bound(&w, GENERIC_TRIALS, s).unwrap().value).collect();
        if values.windows(2).any(|p| p[0] != p[1]) {
            unstable.push(format!("{id}: {values:?}"));
        }
        by_form.insert(id, values[0]);
    }
    let pass = unstable.is_empty();
    verdict(10, "determinism", pass, &format!("generic values {by_form:?} stable over seeds {SEEDS:?} {unstable:?}"));
}
