//! Resolving `--form` arguments into linear series.

use std::sync::Arc;

use apolar::{build, parse_polynomial, parse_series, FamilySpec, QLinearSeries, QPolynomial, VarContext};

use crate::commands::CliError;

pub struct Source {
    /// Identifier shown in reports: the builtin id or the file path.
    pub id: String,
    pub spec: Option<FamilySpec>,
    pub series: QLinearSeries,
}

impl Source {
    pub fn context(&self) -> &Arc<VarContext> {
        self.series.context()
    }

    /// The single form, for commands that need one.
    pub fn single(&self) -> Result<&QPolynomial, CliError> {
        match self.series.basis() {
            [f] => Ok(f),
            _ => Err(CliError::Usage(format!("{} is a series of dimension {}, need a single form", self.id, self.series.dim()))),
        }
    }
}

pub fn load(form: &str) -> Result<Source, CliError> {
    if let Some(id) = form.strip_prefix("builtin:") {
        let spec: FamilySpec = id.parse()?;
        let series = build(&spec)?;
        return Ok(Source { id: spec.to_string(), spec: Some(spec), series });
    }
    let text = std::fs::read_to_string(form).map_err(|e| CliError::Io(form.to_string(), e))?;
    let forms = parse_series(&text, None).map_err(|e| CliError::in_file(form, e))?;
    let series = QLinearSeries::new(forms).map_err(|e| CliError::in_file(form, e))?;
    Ok(Source { id: form.to_string(), spec: None, series })
}

/// Index of a variable given by name, e.g. `x[1,1]` or `x3`.
pub fn variable_index(ctx: &Arc<VarContext>, text: &str) -> Result<usize, CliError> {
    let p: QPolynomial = parse_polynomial(text, Some(ctx))?;
    if p.is_linear_form() && p.num_terms() == 1 {
        let (m, _) = p.terms().next().expect("one term");
        if let Some(i) = m.exponents().iter().position(|&e| e == 1) {
            return Ok(i);
        }
    }
    Err(CliError::Usage(format!("'{text}' is not a variable")))
}
