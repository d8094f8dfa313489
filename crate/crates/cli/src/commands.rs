//! Subcommand implementations. Each returns the full stdout text and an exit status.

use apolar::{
    bound_report, closed_form_table, computed_cell, evaluate_decomposition, known_upper_bounds, matmul_bound,
    minimal_generators, parse_dual, parse_polynomial, BoundKind, BoundReport, Error, InvarianceAssertion,
    QPolynomial, Rational, ReportOptions, TableFamily,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::render::{csv_table, format_cell, json, markdown_table};
use crate::source::{load, variable_index};
use crate::{OutputFormat, TableMode};

pub struct Output {
    pub text: String,
    pub status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }
}

/// Exit status when a requested verification does not hold.
pub const VERIFY_FAILED: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{path}:{}", located(source))]
    InFile { path: String, source: Error },
    #[error("{path}:{line}: {message}")]
    AtLine { path: String, line: usize, message: String },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

/// `line:col: message` for parse errors, ` message` otherwise.
fn located(e: &Error) -> String {
    match e {
        Error::Parse(p) => p.to_string(),
        other => format!(" {other}"),
    }
}

impl CliError {
    pub fn in_file(path: &str, source: Error) -> Self {
        CliError::InFile { path: path.to_string(), source }
    }

    /// 1: unreadable or unparsable input; 2: invalid parameters; 4: internal inconsistency.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) | CliError::AtLine { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::InFile { source, .. } | CliError::Core(source) => match source {
                Error::Parse(_) | Error::UnknownVariable(_) => 1,
                Error::Inconsistent(_) | Error::Overflow(_) => 4,
                _ => 2,
            },
        }
    }
}

pub struct BoundsArgs {
    pub partial: Option<String>,
    pub assert_invariance: bool,
    pub invariance: Option<String>,
    pub leading_var: Option<String>,
    pub dehomogenize_at: Option<String>,
    pub trials: usize,
    pub seed: u64,
}

pub fn bounds(form: &str, args: BoundsArgs, fmt: OutputFormat) -> Result<Output, CliError> {
    let src = load(form)?;
    let ctx = src.context().clone();
    let partial = args.partial.as_deref().map(|t| parse_dual(t, &ctx)).transpose()?;
    let description = args.invariance.clone().unwrap_or_else(|| {
        let builtin = src.spec.and_then(|s| s.invariant_partial::<Rational>(&ctx));
        builtin.map(|(_, d)| d).unwrap_or_default()
    });
    let assertion = InvarianceAssertion { asserted: args.assert_invariance, description };
    let leading_var = args.leading_var.as_deref().map(|t| variable_index(&ctx, t)).transpose()?;
    let dehomogenize_at =
        args.dehomogenize_at.as_deref().map(|t| parse_polynomial::<Rational>(t, Some(&ctx))).transpose()?;
    let options = ReportOptions {
        partial,
        assertion,
        trials: args.trials,
        seed: args.seed,
        leading_var,
        dehomogenize_at,
        det_size: src.spec.and_then(|s| s.det_size()),
        extra: src.spec.map(|s| known_upper_bounds(&s)).unwrap_or_default(),
    };
    let report = bound_report(&src.id, &src.series, &options)?;
    Ok(Output::ok(render_report(&report, fmt)))
}

fn details(e: &apolar::BoundEntry) -> String {
    let m = &e.metadata;
    let mut parts = Vec::new();
    if let Some(p) = &m.partial {
        parts.push(format!("∂ = {p}"));
    }
    if let Some(d) = m.delta {
        parts.push(format!("δ = {d}"));
    }
    if let (Some(t), Some(s)) = (m.trials, m.seed) {
        let values = m.trial_values.as_ref().map(|v| format!("{v:?}")).unwrap_or_default();
        parts.push(format!("{t} trials, seed {s}: {values}"));
    }
    if let Some(c) = &m.caveat {
        parts.push(c.clone());
    }
    if let Some(n) = &m.note {
        parts.push(n.clone());
    }
    parts.join("; ")
}

/// Tightest established bracket `(lower, upper)` for cactus and Waring rank.
fn brackets(report: &BoundReport) -> [(String, Option<i64>, Option<i64>); 2] {
    let est = || report.bounds.iter().filter(|b| b.is_established());
    let max_of = |kinds: &[BoundKind]| est().filter(|b| kinds.contains(&b.kind)).map(|b| b.integer_value).max();
    let min_of = |kinds: &[BoundKind]| est().filter(|b| kinds.contains(&b.kind)).map(|b| b.integer_value).min();
    use BoundKind::*;
    [
        ("cr".into(), max_of(&[LowerForCactus]), min_of(&[UpperForCactus, UpperForWaring])),
        ("r".into(), max_of(&[LowerForCactus, LowerForWaring]), min_of(&[UpperForWaring])),
    ]
}

fn render_report(report: &BoundReport, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => json(report),
        OutputFormat::Markdown => {
            let header: Vec<String> = ["bound", "kind", "value", "integer", "details"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = report
                .bounds
                .iter()
                .map(|b| {
                    vec![
                        b.name.clone(),
                        b.kind.as_str().to_string(),
                        format_cell(&b.value()),
                        b.integer_value.to_string(),
                        details(b),
                    ]
                })
                .collect();
            let mut out = format!("# Bounds for {}\n\n{}\n", report.form_id, markdown_table(&header, &rows));
            let show = |v: Option<i64>| v.map_or_else(|| "?".to_string(), |x| x.to_string());
            for (rank, lo, hi) in brackets(report) {
                out.push_str(&format!("{} <= {rank} <= {}\n", show(lo), show(hi)));
            }
            out.push_str("sr lies between cr and r and is not computed\n");
            out
        }
        OutputFormat::Csv => {
            let header: Vec<String> = [
                "name",
                "kind",
                "value",
                "integer_value",
                "partial",
                "delta",
                "trials",
                "seed",
                "trial_values",
                "invariance_asserted",
                "caveat",
                "note",
            ]
            .map(String::from)
            .to_vec();
            let opt = |v: Option<String>| v.unwrap_or_default();
            let rows: Vec<Vec<String>> = report
                .bounds
                .iter()
                .map(|b| {
                    let m = &b.metadata;
                    vec![
                        b.name.clone(),
                        b.kind.as_str().to_string(),
                        format_cell(&b.value()),
                        b.integer_value.to_string(),
                        opt(m.partial.clone()),
                        opt(m.delta.map(|d| d.to_string())),
                        opt(m.trials.map(|t| t.to_string())),
                        opt(m.seed.map(|s| s.to_string())),
                        opt(m.trial_values.as_ref().map(|v| {
                            v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
                        })),
                        opt(m.invariance_asserted.map(|a| a.to_string())),
                        opt(m.caveat.clone()),
                        opt(m.note.clone()),
                    ]
                })
                .collect();
            csv_table(&header, &rows)
        }
    }
}

/// Largest `n` recomputed from polynomial arithmetic in verify mode.
pub const VERIFY_MAX_N: u32 = 3;

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableDoc {
    pub family: String,
    pub mode: String,
    pub columns: Vec<u32>,
    pub rows: Vec<TableRowDoc>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableRowDoc {
    pub label: String,
    pub kind: BoundKind,
    pub cells: Vec<String>,
    /// Recomputed value per column in verify mode, where a computation exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub computed: Option<Vec<Option<String>>>,
}

pub fn table(family: &str, n_max: u32, mode: TableMode, fmt: OutputFormat) -> Result<Output, CliError> {
    let family: TableFamily = family.parse()?;
    if n_max < 2 {
        return Err(CliError::Usage(format!("--n-max must be at least 2, got {n_max}")));
    }
    let table = closed_form_table(family, 2..=n_max)?;
    let verify = mode == TableMode::Verify;
    let mut mismatch = false;
    let mut rows = Vec::new();
    for (row, cells) in &table.rows {
        let computed = if verify {
            let values = table
                .columns
                .par_iter()
                .map(|&n| if n <= VERIFY_MAX_N { computed_cell(family, *row, n) } else { Ok(None) })
                .collect::<apolar::Result<Vec<_>>>()?;
            mismatch |= values.iter().zip(cells).any(|(c, v)| c.as_ref().is_some_and(|c| c != v));
            Some(values.iter().map(|c| c.as_ref().map(format_cell)).collect())
        } else {
            None
        };
        rows.push(TableRowDoc {
            label: row.label(family),
            kind: row.kind(),
            cells: cells.iter().map(format_cell).collect(),
            computed,
        });
    }
    let doc = TableDoc {
        family: family.name().to_string(),
        mode: if verify { "verify" } else { "closed-form" }.to_string(),
        columns: table.columns.clone(),
        rows,
    };
    let status = if mismatch { VERIFY_FAILED } else { 0 };
    Ok(Output { text: render_table(&doc, fmt), status })
}

fn render_table(doc: &TableDoc, fmt: OutputFormat) -> String {
    if fmt == OutputFormat::Json {
        return json(doc);
    }
    let mut header = vec!["n".to_string()];
    header.extend(doc.columns.iter().map(ToString::to_string));
    let rows: Vec<Vec<String>> = doc
        .rows
        .iter()
        .map(|r| {
            let mut line = vec![r.label.clone()];
            for (i, cell) in r.cells.iter().enumerate() {
                let mark = match r.computed.as_ref().and_then(|c| c[i].as_ref()) {
                    Some(c) if c == cell => " (ok)".to_string(),
                    Some(c) => format!(" (computed {c})"),
                    None => String::new(),
                };
                line.push(format!("{cell}{mark}"));
            }
            line
        })
        .collect();
    match fmt {
        OutputFormat::Csv => csv_table(&header, &rows),
        _ => markdown_table(&header, &rows),
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HilbertDoc {
    pub form_id: String,
    pub dims: Vec<usize>,
    pub length: usize,
    pub symmetric: bool,
}

pub fn hilbert(form: &str, fmt: OutputFormat) -> Result<Output, CliError> {
    let src = load(form)?;
    let h = apolar::hilbert_function(&src.series)?;
    let doc = HilbertDoc { form_id: src.id.clone(), dims: h.dims.clone(), length: h.total(), symmetric: h.is_symmetric() };
    let header: Vec<String> = vec!["t".into(), "dim".into()];
    let rows: Vec<Vec<String>> = h.dims.iter().enumerate().map(|(t, d)| vec![t.to_string(), d.to_string()]).collect();
    let text = match fmt {
        OutputFormat::Json => json(&doc),
        OutputFormat::Csv => csv_table(&header, &rows),
        OutputFormat::Markdown => format!(
            "# Hilbert function of {}\n\n{}\nhilbert: {h}\nlength: {}\n",
            doc.form_id,
            markdown_table(&header, &rows),
            doc.length
        ),
    };
    Ok(Output::ok(text))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeneratorsDoc {
    pub form_id: String,
    pub max_degree: u32,
    pub delta: u32,
    pub generators: Vec<GeneratorDegreeDoc>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeneratorDegreeDoc {
    pub degree: u32,
    pub forms: Vec<String>,
}

pub fn apolar_gens(form: &str, max_degree: Option<u32>, fmt: OutputFormat) -> Result<Output, CliError> {
    let src = load(form)?;
    let max_degree = max_degree.unwrap_or(src.series.degree() + 1);
    let gens = minimal_generators(&src.series, max_degree)?;
    let generators: Vec<GeneratorDegreeDoc> = gens
        .iter()
        .map(|(t, fs)| GeneratorDegreeDoc { degree: *t, forms: fs.iter().map(ToString::to_string).collect() })
        .collect();
    let delta = generators.last().map_or(0, |g| g.degree);
    let doc = GeneratorsDoc { form_id: src.id.clone(), max_degree, delta, generators };
    let text = match fmt {
        OutputFormat::Json => json(&doc),
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = doc
                .generators
                .iter()
                .flat_map(|g| g.forms.iter().map(move |f| vec![g.degree.to_string(), f.clone()]))
                .collect();
            csv_table(&["degree".to_string(), "generator".to_string()], &rows)
        }
        OutputFormat::Markdown => {
            let mut out = format!("# Minimal generators of the apolar ideal of {}\n\n", doc.form_id);
            for g in &doc.generators {
                out.push_str(&format!("## degree {} ({} generators)\n\n", g.degree, g.forms.len()));
                for f in &g.forms {
                    out.push_str(&format!("- {f}\n"));
                }
                out.push('\n');
            }
            out.push_str(&format!("δ = {} (searched up to degree {})\n", doc.delta, doc.max_degree));
            out
        }
    };
    Ok(Output::ok(text))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DecompositionDoc {
    pub form_id: String,
    pub file: String,
    pub summands: usize,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difference: Option<String>,
}

/// Reads `coeff ; linear form` lines.
fn read_decomposition(
    path: &str,
    ctx: &std::sync::Arc<apolar::VarContext>,
) -> Result<(Vec<QPolynomial>, Vec<Rational>), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_string(), e))?;
    let at = |line: usize, message: String| CliError::AtLine { path: path.to_string(), line, message };
    let parse = |line: usize, s: &str| {
        parse_polynomial::<Rational>(s.trim(), Some(ctx)).map_err(|e| match e {
            Error::Parse(p) => at(line, format!("column {}: {}", p.column, p.message)),
            other => at(line, other.to_string()),
        })
    };
    let mut forms = Vec::new();
    let mut coeffs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (c, f) = trimmed.split_once(';').ok_or_else(|| at(line, "expected 'coeff ; linear form'".into()))?;
        let c = parse(line, c)?;
        if c.degree().unwrap_or(0) != 0 {
            return Err(at(line, format!("coefficient '{c}' is not a constant")));
        }
        let f = parse(line, f)?;
        if !f.is_linear_form() {
            return Err(at(line, format!("'{f}' is not a linear form")));
        }
        coeffs.push(c.coefficient(&apolar::Monomial::one(ctx.len())));
        forms.push(f);
    }
    if forms.is_empty() {
        return Err(at(1, "no summands".into()));
    }
    Ok((forms, coeffs))
}

pub fn verify_decomposition(form: &str, file: &str, fmt: OutputFormat) -> Result<Output, CliError> {
    let src = load(form)?;
    let target = src.single()?;
    let (forms, coeffs) = read_decomposition(file, src.context())?;
    let degree = target.degree().unwrap_or(0);
    let sum = evaluate_decomposition(&forms, &coeffs, degree)?;
    let pass = &sum == target;
    let difference = (!pass).then(|| sum.try_sub(target).expect("same context").to_string());
    let doc = DecompositionDoc { form_id: src.id.clone(), file: file.to_string(), summands: forms.len(), pass, difference };
    let text = match fmt {
        OutputFormat::Json => json(&doc),
        OutputFormat::Csv => csv_table(
            &["form_id", "file", "summands", "pass"].map(String::from),
            &[vec![doc.form_id.clone(), doc.file.clone(), doc.summands.to_string(), doc.pass.to_string()]],
        ),
        OutputFormat::Markdown => match &doc.difference {
            None => format!("pass: {} summands reproduce {}\n", doc.summands, doc.form_id),
            Some(d) => format!("FAIL: {} summands; sum minus {} = {d}\n", doc.summands, doc.form_id),
        },
    };
    Ok(Output { text, status: if pass { 0 } else { VERIFY_FAILED } })
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatmulDoc {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub series_lower: usize,
    pub tensor_lower: usize,
}

pub fn matmul(p: u32, q: u32, r: u32, fmt: OutputFormat) -> Result<Output, CliError> {
    let b = matmul_bound(p, q, r)?;
    let doc = MatmulDoc { p, q, r, series_lower: b.series_lower, tensor_lower: b.tensor_lower };
    let header: Vec<String> = ["p", "q", "r", "series rank lower", "tensor rank lower"].map(String::from).to_vec();
    let rows = vec![[p, q, r].iter().map(ToString::to_string).chain([b.series_lower.to_string(), b.tensor_lower.to_string()]).collect()];
    let text = match fmt {
        OutputFormat::Json => json(&doc),
        OutputFormat::Csv => csv_table(&header, &rows),
        OutputFormat::Markdown => format!(
            "{}\nrW >= {}\ntr >= {}\n",
            markdown_table(&header, &rows),
            b.series_lower,
            b.tensor_lower
        ),
    };
    Ok(Output::ok(text))
}
