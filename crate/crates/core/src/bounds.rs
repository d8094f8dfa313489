//! Rank bounds computed from apolarity data, and reports bracketing the
//! Waring and cactus ranks.
//!
//! Lower bounds: the catalecticant (Sylvester) bound, length over generator
//! degree (Ranestad-Schreyer), the derivative bound `ℓ(A^W) - ℓ(A^{∂W})` for a
//! generic or an invariance-respecting `∂`, and its leading-coefficient
//! corollary. Upper bound: `dim Diff` of a dehomogenization (Bernardi-Ranestad).

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apolarity::{apolar_length, hilbert_function, minimal_generator_degrees, LinearSeries};
use crate::error::{Error, Result};
use crate::poly::{DualForm, Monomial, Polynomial};
use crate::scalar::Scalar;
use crate::Rational;

/// Range of the integer coefficients of random linear dual forms.
pub const RANDOM_COEFF_BOUND: i64 = 99;

pub const GENERIC_CAVEAT: &str =
    "valid for generic ∂ (probabilistic: minimum over random integer samples)";
pub const ASSERTED_CAVEAT: &str = "valid if ∂ spans no proper invariant subspace (asserted by caller, not verified)";
pub const UNASSERTED_CAVEAT: &str =
    "not established: ∂ is neither random nor asserted invariant; value is not a proven bound";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    LowerForCactus,
    LowerForWaring,
    UpperForCactus,
    UpperForWaring,
}

impl BoundKind {
    pub fn is_lower(self) -> bool {
        matches!(self, BoundKind::LowerForCactus | BoundKind::LowerForWaring)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::LowerForCactus => "lower-for-cactus",
            BoundKind::LowerForWaring => "lower-for-waring",
            BoundKind::UpperForCactus => "upper-for-cactus",
            BoundKind::UpperForWaring => "upper-for-waring",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundMetadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trial_values: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariance_asserted: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One named bound. The value is an exact rational `value_num / value_den`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub value_num: i64,
    pub value_den: u64,
    pub integer_value: i64,
    pub kind: BoundKind,
    pub metadata: BoundMetadata,
}

impl BoundEntry {
    pub fn integer(name: &str, value: usize, kind: BoundKind) -> Self {
        let v = i64::try_from(value).expect("bound fits in i64");
        BoundEntry {
            name: name.to_string(),
            value_num: v,
            value_den: 1,
            integer_value: v,
            kind,
            metadata: BoundMetadata::default(),
        }
    }

    /// Entry with a rational value; lower bounds round up, upper bounds down.
    pub fn rational(name: &str, value: &Rational, kind: BoundKind) -> Result<Self> {
        let overflow = || Error::Overflow(format!("{name} = {value}"));
        let value_num = value.numer().to_i64().ok_or_else(overflow)?;
        let value_den = value.denom().to_u64().ok_or_else(overflow)?;
        let rounded = if kind.is_lower() { value.ceil() } else { value.floor() };
        let integer_value = rounded.to_integer().to_i64().ok_or_else(overflow)?;
        Ok(BoundEntry {
            name: name.to_string(),
            value_num,
            value_den,
            integer_value,
            kind,
            metadata: BoundMetadata::default(),
        })
    }

    pub fn value(&self) -> Rational {
        Rational::new(BigInt::from(self.value_num), BigInt::from(self.value_den))
    }

    pub fn with_metadata(mut self, metadata: BoundMetadata) -> Self {
        self.metadata = metadata;
        self
    }

    /// Whether the entry is a claimed bound (and so takes part in consistency checks).
    pub fn is_established(&self) -> bool {
        self.metadata.caveat.as_deref() != Some(UNASSERTED_CAVEAT)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub form_id: String,
    pub bounds: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.bounds.iter().find(|b| b.name == name)
    }

    /// Checks that no established lower bound exceeds an upper bound it must
    /// sit below (`cr <= r`, so a Waring lower bound is not compared against
    /// a cactus upper bound).
    pub fn check_consistency(&self) -> Result<()> {
        let claimed = || self.bounds.iter().filter(|b| b.is_established());
        for lo in claimed().filter(|b| b.kind.is_lower()) {
            for hi in claimed().filter(|b| !b.kind.is_lower()) {
                if lo.kind == BoundKind::LowerForWaring && hi.kind == BoundKind::UpperForCactus {
                    continue;
                }
                if lo.value() > hi.value() {
                    return Err(Error::Inconsistent(format!(
                        "{}: lower bound {} = {} exceeds upper bound {} = {}",
                        self.form_id,
                        lo.name,
                        lo.value(),
                        hi.name,
                        hi.value()
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvarianceAssertion {
    pub asserted: bool,
    pub description: String,
}

impl InvarianceAssertion {
    pub fn asserted(description: impl Into<String>) -> Self {
        InvarianceAssertion { asserted: true, description: description.into() }
    }
}

/// `max_t dim A^W_t`.
pub fn sylvester_bound<F: Scalar>(w: &LinearSeries<F>) -> Result<usize> {
    Ok(hilbert_function(w)?.max())
}

/// `ℓ(A^W) / δ`, with `δ` the top degree of a minimal generator of `W^⊥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthOverDegree {
    pub length: usize,
    pub delta: u32,
    pub value: Rational,
}

impl LengthOverDegree {
    pub fn ceiling(&self) -> usize {
        self.value.ceil().to_integer().to_usize().expect("nonnegative")
    }
}

pub fn ranestad_schreyer_bound<F: Scalar>(w: &LinearSeries<F>) -> Result<LengthOverDegree> {
    let length = apolar_length(w)?;
    let delta = minimal_generator_degrees(w)?.delta;
    let value = Rational::new(BigInt::from(length), BigInt::from(delta.max(1)));
    Ok(LengthOverDegree { length, delta, value })
}

/// `ℓ(A^W) - ℓ(A^{∂W})`. When `∂W = 0` the second term is zero.
pub fn derivative_bound<F: Scalar>(w: &LinearSeries<F>, partial: &DualForm<F>) -> Result<usize> {
    if !partial.is_linear_form() {
        return Err(Error::NotLinear(partial.to_string()));
    }
    let full = apolar_length(w)?;
    let derived = w.apply(partial)?;
    let rest = if derived.is_zero() { 0 } else { apolar_length(&derived)? };
    Ok(full - rest)
}

/// Derivative bound at `∂`, as a report entry carrying the validity caveat.
pub fn derivative_entry<F: Scalar>(
    w: &LinearSeries<F>,
    partial: &DualForm<F>,
    assertion: &InvarianceAssertion,
) -> Result<BoundEntry> {
    let value = derivative_bound(w, partial)?;
    let caveat = if assertion.asserted { ASSERTED_CAVEAT } else { UNASSERTED_CAVEAT };
    let note = (!assertion.description.is_empty()).then(|| assertion.description.clone());
    Ok(BoundEntry::integer("derivative", value, BoundKind::LowerForCactus).with_metadata(BoundMetadata {
        partial: Some(partial.to_string()),
        invariance_asserted: Some(assertion.asserted),
        caveat: Some(caveat.to_string()),
        note,
        ..Default::default()
    }))
}

/// Result of the derivative bound over random `∂`.
#[derive(Debug, Clone)]
pub struct GenericDerivative<F: Scalar> {
    pub value: usize,
    pub trial_values: Vec<usize>,
    pub partials: Vec<DualForm<F>>,
}

/// Linear dual forms with integer coefficients uniform in
/// `[-RANDOM_COEFF_BOUND, RANDOM_COEFF_BOUND]`, all-zero draws redrawn.
pub fn random_partials<F: Scalar>(w: &LinearSeries<F>, count: usize, seed: u64) -> Vec<DualForm<F>> {
    let n = w.context().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let coeffs: Vec<i64> =
                (0..n).map(|_| rng.gen_range(-RANDOM_COEFF_BOUND..=RANDOM_COEFF_BOUND)).collect();
            if coeffs.iter().any(|&c| c != 0) {
                let coeffs: Vec<F> = coeffs.into_iter().map(F::from_i64).collect();
                break DualForm::linear(w.context(), &coeffs).expect("n coefficients");
            }
        })
        .collect()
}

/// Minimum of the derivative bound over `trials` random `∂`. Special `∂`
/// can only raise the difference (rank is lower semicontinuous), so the
/// minimum is the generic value with high probability.
pub fn generic_derivative_bound<F: Scalar>(
    w: &LinearSeries<F>,
    trials: usize,
    seed: u64,
) -> Result<GenericDerivative<F>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let partials = random_partials(w, trials, seed);
    let trial_values = partials
        .par_iter()
        .map(|p| derivative_bound(w, p))
        .collect::<Result<Vec<_>>>()?;
    let value = *trial_values.iter().min().expect("trials >= 1");
    Ok(GenericDerivative { value, trial_values, partials })
}

#[derive(Debug, Clone)]
pub struct LeadingCoefficient<F: Scalar> {
    /// Highest power of the chosen variable in `F`.
    pub power: u32,
    /// Coefficient of that power, a form free of the variable.
    pub coefficient_form: Polynomial<F>,
    pub value: usize,
}

/// `ℓ(A^{F_k})` where `F = x^k F_k + (lower powers of x)`.
pub fn leading_coefficient_bound<F: Scalar>(f: &Polynomial<F>, var: usize) -> Result<LeadingCoefficient<F>> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("leading coefficient of the zero form".into()));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let ctx = f.context();
    if var >= ctx.len() {
        return Err(Error::InvalidParameter(format!("variable index {var} out of range")));
    }
    let power = f.degree_in(var);
    let coefficient_form = Polynomial::from_terms(
        ctx,
        f.terms().filter(|(m, _)| m.exponents()[var] == power).map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e[var] = 0;
            (Monomial::new(e), c.clone())
        }),
    );
    let value = apolar_length(&LinearSeries::single(coefficient_form.clone())?)?;
    Ok(LeadingCoefficient { power, coefficient_form, value })
}

/// `dim Diff(F_l)` for the dehomogenization of `F` at `l`.
pub fn bernardi_ranestad_upper<F: Scalar>(f: &Polynomial<F>, l: &Polynomial<F>) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("upper bound for the zero form".into()));
    }
    crate::apolarity::diff_closure_dim(&f.dehomogenize(l)?)
}

/// Waring rank lower bound for the `n x n` determinant from its singular locus:
/// `C(n, ⌊n/2⌋)^2 + n^2 - (⌊n/2⌋ + 1)^2`.
pub fn det_singular_locus_bound(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("determinant size {n} < 2")));
    }
    let h = n / 2;
    let c = binomial(n, h);
    Ok(c * c + n * n - (h + 1) * (h + 1))
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// What [`bound_report`] should compute besides the always-applicable bounds.
#[derive(Debug, Clone)]
pub struct ReportOptions<F: Scalar> {
    /// Fixed `∂` for the derivative bound.
    pub partial: Option<DualForm<F>>,
    pub assertion: InvarianceAssertion,
    /// Random trials for the generic derivative bound; 0 skips it.
    pub trials: usize,
    pub seed: u64,
    /// Variable for the leading-coefficient bound (single forms only).
    pub leading_var: Option<usize>,
    /// Dehomogenizing form for the upper bound; defaults to the last variable.
    pub dehomogenize_at: Option<Polynomial<F>>,
    /// Adds the determinant singular-locus bound for this matrix size.
    pub det_size: Option<u64>,
    /// Externally known bounds, e.g. explicit decompositions.
    pub extra: Vec<BoundEntry>,
}

impl<F: Scalar> Default for ReportOptions<F> {
    fn default() -> Self {
        ReportOptions {
            partial: None,
            assertion: InvarianceAssertion::default(),
            trials: 5,
            seed: 0,
            leading_var: None,
            dehomogenize_at: None,
            det_size: None,
            extra: Vec::new(),
        }
    }
}

/// Runs every applicable bound on `W` and checks the bracket is consistent.
pub fn bound_report<F: Scalar>(form_id: &str, w: &LinearSeries<F>, options: &ReportOptions<F>) -> Result<BoundReport> {
    if w.is_zero() {
        return Err(Error::ZeroSeries);
    }
    let mut bounds = Vec::new();
    bounds.push(BoundEntry::integer("sylvester", sylvester_bound(w)?, BoundKind::LowerForCactus));

    let rs = ranestad_schreyer_bound(w)?;
    let mut entry = BoundEntry::rational("ranestad-schreyer", &rs.value, BoundKind::LowerForCactus)?;
    entry.metadata.delta = Some(rs.delta);
    bounds.push(entry);

    if options.trials > 0 {
        let g = generic_derivative_bound(w, options.trials, options.seed)?;
        let argmin = g.trial_values.iter().position(|&v| v == g.value).expect("nonempty");
        bounds.push(
            BoundEntry::integer("derivative-generic", g.value, BoundKind::LowerForCactus).with_metadata(BoundMetadata {
                partial: Some(g.partials[argmin].to_string()),
                trials: Some(options.trials),
                seed: Some(options.seed),
                trial_values: Some(g.trial_values),
                caveat: Some(GENERIC_CAVEAT.to_string()),
                ..Default::default()
            }),
        );
    }
    if let Some(p) = &options.partial {
        bounds.push(derivative_entry(w, p, &options.assertion)?);
    }

    let single = (w.dim() == 1).then(|| &w.basis()[0]);
    if let (Some(f), Some(var)) = (single, options.leading_var) {
        let lc = leading_coefficient_bound(f, var)?;
        let caveat = if options.assertion.asserted { ASSERTED_CAVEAT } else { UNASSERTED_CAVEAT };
        bounds.push(
            BoundEntry::integer("leading-coefficient", lc.value, BoundKind::LowerForCactus).with_metadata(
                BoundMetadata {
                    partial: Some(DualForm::<F>::partial(w.context(), var).to_string()),
                    invariance_asserted: Some(options.assertion.asserted),
                    caveat: Some(caveat.to_string()),
                    note: Some(format!("power {}, coefficient {}", lc.power, lc.coefficient_form)),
                    ..Default::default()
                },
            ),
        );
    }
    if let Some(n) = options.det_size {
        let v = det_singular_locus_bound(n)?;
        bounds.push(BoundEntry::integer("det-singular-locus", v as usize, BoundKind::LowerForWaring));
    }
    if let Some(f) = single {
        if f.degree().unwrap_or(0) > 0 {
            let l = match &options.dehomogenize_at {
                Some(l) => l.clone(),
                None => Polynomial::var(w.context(), w.context().len() - 1),
            };
            let mut entry = BoundEntry::integer(
                "bernardi-ranestad",
                bernardi_ranestad_upper(f, &l)?,
                BoundKind::UpperForCactus,
            );
            entry.metadata.note = Some(format!("dehomogenized at {l}"));
            bounds.push(entry);
        }
    }
    bounds.extend(options.extra.iter().cloned());

    let report = BoundReport { form_id: form_id.to_string(), bounds };
    report.check_consistency()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_dual, parse_polynomial, VarContext};

    const DET2: &str = "x[1,1]*x[2,2] - x[1,2]*x[2,1]";

    fn single(text: &str) -> LinearSeries<Rational> {
        LinearSeries::single(parse_polynomial(text, None).unwrap()).unwrap()
    }

    #[test]
    fn simple_lower_bounds() {
        assert_eq!(sylvester_bound(&single("x1^7")).unwrap(), 1);
        let rs = ranestad_schreyer_bound(&single("x1*x2")).unwrap();
        assert_eq!((rs.length, rs.delta, rs.ceiling()), (4, 2, 2));
        assert_eq!(ranestad_schreyer_bound(&single(DET2)).unwrap().ceiling(), 3);
    }

    #[test]
    fn derivative_examples() {
        let w = single("x1^3");
        let d1 = DualForm::partial(w.context(), 0);
        assert_eq!(derivative_bound(&w, &d1).unwrap(), 1);
        // ∂W = 0 keeps the whole length
        let ctx = VarContext::numbered("x", 2);
        let w = LinearSeries::single(parse_polynomial::<Rational>("x1^2", Some(&ctx)).unwrap()).unwrap();
        assert_eq!(derivative_bound(&w, &DualForm::partial(&ctx, 1)).unwrap(), 3);
        let zero = DualForm::new(Polynomial::zero(&ctx));
        assert!(matches!(derivative_bound(&w, &zero), Err(Error::NotLinear(_))));
    }

    #[test]
    fn unasserted_entry_has_caveat() {
        let w = single(DET2);
        let p = parse_dual("d[1,1]", w.context()).unwrap();
        let e = derivative_entry(&w, &p, &InvarianceAssertion::default()).unwrap();
        assert_eq!(e.metadata.caveat.as_deref(), Some(UNASSERTED_CAVEAT));
        assert!(!e.is_established());
        let e = derivative_entry(&w, &p, &InvarianceAssertion::asserted("left-right action")).unwrap();
        assert_eq!((e.integer_value, e.metadata.invariance_asserted), (4, Some(true)));
    }

    #[test]
    fn generic_bound_one_variable() {
        let g = generic_derivative_bound(&single("x1^5"), 4, 11).unwrap();
        assert_eq!(g.value, 1);
        assert_eq!(g.trial_values.len(), 4);
        assert!(generic_derivative_bound(&single("x1^5"), 0, 0).is_err());
    }

    #[test]
    fn random_partials_are_seeded() {
        let w = single("x1*x2*x3");
        let a = random_partials(&w, 6, 42);
        assert_eq!(a, random_partials(&w, 6, 42));
        assert_ne!(a, random_partials(&w, 6, 43));
        assert!(a.iter().all(|p| p.is_linear_form()));
    }

    #[test]
    fn leading_coefficient_examples() {
        let ctx = VarContext::numbered("x", 2);
        let f = parse_polynomial::<Rational>("x1^2*x2 + x1*x2^2", Some(&ctx)).unwrap();
        let lc = leading_coefficient_bound(&f, 0).unwrap();
        assert_eq!((lc.power, lc.coefficient_form.to_string(), lc.value), (2, "x2".to_string(), 2));
        let det2: Polynomial<Rational> = parse_polynomial(DET2, None).unwrap();
        let lc = leading_coefficient_bound(&det2, 0).unwrap();
        assert_eq!((lc.power, lc.coefficient_form.to_string(), lc.value), (1, "x[2,2]".to_string(), 2));
    }

    #[test]
    fn upper_bound_examples() {
        let det2: Polynomial<Rational> = parse_polynomial(DET2, None).unwrap();
        let l = Polynomial::var(det2.context(), 3);
        assert_eq!(bernardi_ranestad_upper(&det2, &l).unwrap(), 4);
        let f: Polynomial<Rational> = parse_polynomial("x1^6", None).unwrap();
        assert_eq!(bernardi_ranestad_upper(&f, &Polynomial::var(f.context(), 0)).unwrap(), 1);
    }

    #[test]
    fn singular_locus_values() {
        let got: Vec<u64> = (2..=8).map(|n| det_singular_locus_bound(n).unwrap()).collect();
        assert_eq!(got, vec![4, 14, 43, 116, 420, 1258, 4939]);
        assert!(det_singular_locus_bound(1).is_err());
    }

    #[test]
    fn det2_report() {
        let w = single(DET2);
        let options = ReportOptions {
            partial: Some(parse_dual("d[1,1]", w.context()).unwrap()),
            assertion: InvarianceAssertion::asserted("SL2 x SL2"),
            det_size: Some(2),
            ..Default::default()
        };
        let r = bound_report("det:2", &w, &options).unwrap();
        let v = |name: &str| r.get(name).unwrap().integer_value;
        assert_eq!(
            (v("sylvester"), v("ranestad-schreyer"), v("derivative"), v("det-singular-locus"), v("bernardi-ranestad")),
            (4, 3, 4, 4, 4)
        );
    }

    #[test]
    fn inconsistent_report_is_an_error() {
        let w = single("x1^3");
        let bogus = BoundEntry::integer("bogus-upper", 0, BoundKind::UpperForWaring);
        let options = ReportOptions { extra: vec![bogus], ..Default::default() };
        assert!(matches!(bound_report("x1^3", &w, &options), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn rational_entries_round_by_kind() {
        let v = Rational::new(BigInt::from(5), BigInt::from(2));
        let lo = BoundEntry::rational("a", &v, BoundKind::LowerForCactus).unwrap();
        let hi = BoundEntry::rational("b", &v, BoundKind::UpperForWaring).unwrap();
        assert_eq!((lo.value_num, lo.value_den, lo.integer_value, hi.integer_value), (5, 2, 3, 2));
    }

    #[test]
    fn report_json_round_trip() {
        let r = bound_report("x1*x2", &single("x1*x2"), &ReportOptions::default()).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: BoundReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"kind\":\"lower-for-cactus\""));
    }
}
