//! Sparse multivariate polynomials with exact coefficients, the dual ring
//! acting by differentiation, and (de)homogenization.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use parse::{parse_dual, parse_polynomial, parse_series};

/// A variable name with an optional index tuple, e.g. `x`, `x1` or `x[1,2]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub name: String,
    pub index: Vec<u32>,
}

impl Variable {
    pub fn plain(name: impl Into<String>) -> Self {
        Variable { name: name.into(), index: Vec::new() }
    }

    pub fn indexed(name: impl Into<String>, index: &[u32]) -> Self {
        Variable { name: name.into(), index: index.to_vec() }
    }

    /// Name of the matching dual variable: `x` maps to `d`, `x7` to `d7`,
    /// anything else to `d_<name>`.
    pub fn dual_name(&self) -> String {
        match self.name.strip_prefix('x') {
            Some(rest) if rest.chars().all(|c| c.is_ascii_digit()) => format!("d{rest}"),
            _ => format!("d_{}", self.name),
        }
    }

    fn write_with_name(&self, f: &mut fmt::Formatter<'_>, name: &str) -> fmt::Result {
        f.write_str(name)?;
        if !self.index.is_empty() {
            f.write_str("[")?;
            for (k, i) in self.index.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{i}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with_name(f, &self.name)
    }
}

/// Ordered list of distinct variables; the basis of V.
#[derive(Debug, Clone)]
pub struct VarContext {
    vars: Vec<Variable>,
    lookup: HashMap<Variable, usize>,
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}

impl Eq for VarContext {}

impl VarContext {
    pub fn new(vars: Vec<Variable>) -> Result<Arc<Self>> {
        let mut lookup = HashMap::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            if lookup.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(VarContext { vars, lookup }))
    }

    /// Plain variables with the given names.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        Self::new(names.iter().map(|s| Variable::plain(s.as_ref())).collect())
    }

    /// `x1, ..., xn`.
    pub fn numbered(prefix: &str, n: usize) -> Arc<Self> {
        Self::new((1..=n).map(|i| Variable::plain(format!("{prefix}{i}"))).collect())
            .expect("numbered names are distinct")
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var(&self, i: usize) -> &Variable {
        &self.vars[i]
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn position(&self, v: &Variable) -> Option<usize> {
        self.lookup.get(v).copied()
    }

    /// Position of `name[index]`, e.g. `ctx.index_of("x", &[1, 1])`.
    pub fn index_of(&self, name: &str, index: &[u32]) -> Option<usize> {
        self.position(&Variable::indexed(name, index))
    }
}

fn same_context(a: &Arc<VarContext>, b: &Arc<VarContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector aligned with a [`VarContext`].
///
/// Ordered graded-lexicographically: higher total degree is greater, ties
/// are broken by the first differing exponent (larger exponent on an earlier
/// variable is greater).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    /// Every monomial dividing this one.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &e in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=e).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Monomial).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given degree in `nvars` variables, descending in
/// graded-lex order (so `x1^d` comes first). Length `C(nvars + degree - 1, degree)`.
pub fn monomial_basis(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(degree);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e);
            rec(nvars, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Position lookup for a list of monomials.
pub fn monomial_index(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// `b! / (b - a)!` taken over all variables: the scalar produced when
/// `d^a` differentiates `x^b`.
fn falling_factorial<F: Scalar>(a: &Monomial, b: &Monomial) -> F {
    let mut acc = F::one();
    for (&ai, &bi) in a.0.iter().zip(&b.0) {
        for k in 0..ai {
            acc = acc * F::from_u64(u64::from(bi - k));
        }
    }
    acc
}

/// Sparse polynomial over a [`VarContext`]. Zero coefficients are never stored.
#[derive(Debug, Clone)]
pub struct Polynomial<F> {
    ctx: Arc<VarContext>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl<F: Scalar> Eq for Polynomial<F> {}

impl<F: Scalar> Polynomial<F> {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<VarContext>, c: F) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.len()), c)
    }

    pub fn var(ctx: &Arc<VarContext>, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.len(), i), F::one())
    }

    pub fn monomial(ctx: &Arc<VarContext>, m: Monomial, c: F) -> Self {
        assert_eq!(m.0.len(), ctx.len(), "monomial length must match the context");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ctx: ctx.clone(), terms }
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms(ctx: &Arc<VarContext>, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ctx.len(), "monomial length must match the context");
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(ctx: &Arc<VarContext>, coeffs: &[F]) -> Result<Self> {
        if coeffs.len() != ctx.len() {
            return Err(Error::DimensionMismatch { expected: ctx.len(), found: coeffs.len() });
        }
        Ok(Self::from_terms(
            ctx,
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(ctx.len(), i), c.clone())),
        ))
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Whether all terms share one degree. The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_linear_form(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|m| m.degree() == 1)
    }

    /// Highest power of variable `i` occurring in any term.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = Self::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::constant(&self.ctx, F::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut q = m.clone();
                q.0[i] -= 1;
                out.add_term(q, c.clone() * F::from_u64(u64::from(e)));
            }
        }
        out
    }

    /// Substitute polynomial `value` for variable `i`.
    pub fn substitute(&self, i: usize, value: &Self) -> Result<Self> {
        self.check_ctx(value)?;
        let mut powers: Vec<Self> = vec![Self::constant(&self.ctx, F::one())];
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[i] = 0;
            let piece = Self::monomial(&self.ctx, rest, c.clone());
            out = &out + &(&piece * &powers[e]);
        }
        Ok(out)
    }

    /// Coefficients along `basis` (monomials outside it are ignored).
    pub fn coefficients_in(&self, index: &HashMap<Monomial, usize>) -> Vec<F> {
        let mut v = vec![F::zero(); index.len()];
        for (m, c) in &self.terms {
            if let Some(&k) = index.get(m) {
                v[k] = c.clone();
            }
        }
        v
    }

    pub fn from_coefficients(ctx: &Arc<VarContext>, basis: &[Monomial], coeffs: &[F]) -> Self {
        Self::from_terms(ctx, basis.iter().cloned().zip(coeffs.iter().cloned()))
    }

    /// Dehomogenization at the nonzero linear form `l`.
    ///
    /// Let `k` be the first variable with a nonzero coefficient `c_k` in `l`.
    /// The coordinates `y_k = l`, `y_i = x_i` (i != k) complete `l` to a basis;
    /// rewriting `self` in them amounts to `x_k = (y_k - sum_{i!=k} c_i y_i) / c_k`,
    /// and then `y_k` is set to 1. The result is expressed in the same context
    /// (with `y_i` written as `x_i`) and no longer involves variable `k`.
    pub fn dehomogenize(&self, l: &Self) -> Result<Self> {
        self.check_ctx(l)?;
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let k = dehomogenizing_variable(l)?;
        let n = self.ctx.len();
        let ck = l.coefficient(&Monomial::var(n, k));
        let mut value = Self::constant(&self.ctx, F::one());
        for (m, c) in &l.terms {
            let i = m.0.iter().position(|&e| e == 1).expect("linear term");
            if i != k {
                value.add_term(m.clone(), -c.clone());
            }
        }
        let value = value.scale(&(F::one() / ck));
        self.substitute(k, &value)
    }

    /// Multiply every term by the power of variable `k` that lifts it to `degree`.
    pub fn homogenize(&self, k: usize, degree: u32) -> Result<Self> {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let d = m.degree();
            if d > degree {
                return Err(Error::InvalidParameter(format!(
                    "term of degree {d} exceeds target degree {degree}"
                )));
            }
            let mut q = m.clone();
            q.0[k] += degree - d;
            out.add_term(q, c.clone());
        }
        Ok(out)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &[String]) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let is_const = m.degree() == 0;
            let mut first = true;
            if is_const || !a.is_one() {
                write!(f, "{a}")?;
                first = false;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(&names[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

fn dehomogenizing_variable<F: Scalar>(l: &Polynomial<F>) -> Result<usize> {
    if !l.is_linear_form() {
        return Err(Error::NotLinear(l.to_string()));
    }
    let n = l.ctx.len();
    (0..n)
        .find(|&i| !l.coefficient(&Monomial::var(n, i)).is_zero())
        .ok_or_else(|| Error::NotLinear(l.to_string()))
}

impl<F: Scalar> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.ctx.vars.iter().map(ToString::to_string).collect();
        self.fmt_with(f, &names)
    }
}

macro_rules! ref_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, F: Scalar> std::ops::$tr<&'a Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;

            /// Panics if the operands have different contexts; use the `try_`
            /// method to get an error instead.
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomial context mismatch")
            }
        }
    };
}

ref_binop!(Add, add, try_add);
ref_binop!(Sub, sub, try_sub);
ref_binop!(Mul, mul, try_mul);

/// Element of the dual ring `S(V*)`, acting on [`Polynomial`]s by
/// differentiation: `d_i` acts as `∂/∂x_i` with no factorial normalization.
#[derive(Debug, Clone)]
pub struct DualForm<F>(Polynomial<F>);

impl<F: Scalar> PartialEq for DualForm<F> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl<F: Scalar> Eq for DualForm<F> {}

impl<F: Scalar> DualForm<F> {
    pub fn new(p: Polynomial<F>) -> Self {
        DualForm(p)
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        DualForm(Polynomial::constant(ctx, F::one()))
    }

    /// The dual basis element `d_i`.
    pub fn partial(ctx: &Arc<VarContext>, i: usize) -> Self {
        DualForm(Polynomial::var(ctx, i))
    }

    pub fn linear(ctx: &Arc<VarContext>, coeffs: &[F]) -> Result<Self> {
        Polynomial::linear(ctx, coeffs).map(DualForm)
    }

    pub fn as_polynomial(&self) -> &Polynomial<F> {
        &self.0
    }

    pub fn into_polynomial(self) -> Polynomial<F> {
        self.0
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.0.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.0.is_homogeneous()
    }

    pub fn is_linear_form(&self) -> bool {
        self.0.is_linear_form()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.0.try_mul(&other.0).map(DualForm)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.0.try_add(&other.0).map(DualForm)
    }

    pub fn scale(&self, c: &F) -> Self {
        DualForm(self.0.scale(c))
    }

    /// Apply this operator to `f`.
    pub fn apply(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.0.check_ctx(f)?;
        let mut out = Polynomial::zero(&f.ctx);
        for (a, ca) in &self.0.terms {
            for (b, cb) in &f.terms {
                if a.divides(b) {
                    let scale: F = falling_factorial(a, b);
                    out.add_term(a.quotient_of(b), ca.clone() * cb.clone() * scale);
                }
            }
        }
        Ok(out)
    }
}

impl<F: Scalar> fmt::Display for DualForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .0
            .ctx
            .vars
            .iter()
            .map(|v| {
                let mut s = v.dual_name();
                if !v.index.is_empty() {
                    let idx: Vec<String> = v.index.iter().map(ToString::to_string).collect();
                    s.push('[');
                    s.push_str(&idx.join(","));
                    s.push(']');
                }
                s
            })
            .collect();
        self.0.fmt_with(f, &names)
    }
}

/// `sum_i c_i * l_i^d` for linear forms `l_i`.
pub fn evaluate_decomposition<F: Scalar>(
    linear_forms: &[Polynomial<F>],
    coeffs: &[F],
    degree: u32,
) -> Result<Polynomial<F>> {
    if linear_forms.len() != coeffs.len() {
        return Err(Error::DimensionMismatch { expected: linear_forms.len(), found: coeffs.len() });
    }
    let Some(first) = linear_forms.first() else {
        return Err(Error::InvalidParameter("empty decomposition".into()));
    };
    let mut acc = Polynomial::zero(first.context());
    for (l, c) in linear_forms.iter().zip(coeffs) {
        if !l.is_linear_form() {
            return Err(Error::NotLinear(l.to_string()));
        }
        acc = acc.try_add(&l.pow(degree).scale(c))?;
    }
    Ok(acc)
}
