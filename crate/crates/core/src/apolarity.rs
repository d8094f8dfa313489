//! Catalecticants, Hilbert functions of apolar algebras, graded pieces of
//! apolar ideals and their minimal generator degrees.
//!
//! For a linear series `W` of degree-`d` forms, the degree-`t` catalecticant
//! sends a dual form `Θ` of degree `t` to `(ΘF_1, ..., ΘF_k)` over a basis of
//! `W`. Its kernel is `(W^⊥)_t` and its rank is `dim A^W_t`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Matrix};
use crate::poly::{monomial_basis, monomial_index, DualForm, Monomial, Polynomial, VarContext};
use crate::scalar::Scalar;

/// A finite set of degree-`d` forms and the space `W` they span.
#[derive(Debug, Clone)]
pub struct LinearSeries<F: Scalar> {
    ctx: Arc<VarContext>,
    degree: u32,
    forms: Vec<Polynomial<F>>,
    basis: Vec<Polynomial<F>>,
}

impl<F: Scalar> LinearSeries<F> {
    /// Series spanned by `forms`; the degree is read off the nonzero forms.
    pub fn new(forms: Vec<Polynomial<F>>) -> Result<Self> {
        let first = forms.iter().find(|f| !f.is_zero()).ok_or(Error::ZeroSeries)?;
        let degree = first.degree().expect("nonzero");
        let ctx = first.context().clone();
        Self::with_degree(&ctx, degree, forms)
    }

    /// Series of the given degree; the forms may all be zero.
    pub fn with_degree(ctx: &Arc<VarContext>, degree: u32, forms: Vec<Polynomial<F>>) -> Result<Self> {
        for f in &forms {
            if f.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            if !f.is_homogeneous() || f.degree().is_some_and(|e| e != degree) {
                return Err(Error::NotHomogeneous);
            }
        }
        let basis = independent_subset(&forms);
        Ok(LinearSeries { ctx: ctx.clone(), degree, forms, basis })
    }

    pub fn single(f: Polynomial<F>) -> Result<Self> {
        Self::new(vec![f])
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn forms(&self) -> &[Polynomial<F>] {
        &self.forms
    }

    /// Independent subset of the forms spanning the same space.
    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// `ΘW = {ΘF : F in W}`.
    pub fn apply(&self, op: &DualForm<F>) -> Result<Self> {
        if !op.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let e = op.degree().unwrap_or(0);
        let forms = self.basis.iter().map(|f| op.apply(f)).collect::<Result<Vec<_>>>()?;
        if op.is_zero() || e > self.degree {
            let zeros = vec![Polynomial::zero(&self.ctx)];
            return Self::with_degree(&self.ctx, self.degree.saturating_sub(e), zeros);
        }
        Self::with_degree(&self.ctx, self.degree - e, forms)
    }

    /// Same series with every form multiplied by `c`.
    pub fn scaled(&self, c: &F) -> Self {
        let forms: Vec<_> = self.forms.iter().map(|f| f.scale(c)).collect();
        Self::with_degree(&self.ctx, self.degree, forms).expect("scaling preserves homogeneity")
    }

    fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroSeries)
        } else {
            Ok(())
        }
    }
}

fn independent_subset<F: Scalar>(forms: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let mut monos: Vec<Monomial> = forms.iter().flat_map(|f| f.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let index = monomial_index(&monos);
    let mut ech = EchelonBasis::new(monos.len());
    forms
        .iter()
        .filter(|f| ech.insert(&f.coefficients_in(&index)).expect("lengths agree"))
        .cloned()
        .collect()
}

/// Monomials of degree `t` dividing `m`.
fn divisors_of_degree(m: &Monomial, t: u32) -> Vec<Monomial> {
    fn rec(e: &[u32], t: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let Some((&first, rest)) = e.split_first() else {
            if t == 0 {
                out.push(Monomial::new(prefix.clone()));
            }
            return;
        };
        let remaining: u32 = rest.iter().sum();
        let lo = t.saturating_sub(remaining);
        for k in lo..=first.min(t) {
            prefix.push(k);
            rec(rest, t - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m.exponents(), t, &mut Vec::with_capacity(m.exponents().len()), &mut out);
    out
}

fn falling<F: Scalar>(a: &Monomial, b: &Monomial) -> F {
    let mut acc = F::one();
    for (&ai, &bi) in a.exponents().iter().zip(b.exponents()) {
        for k in 0..ai {
            acc = acc * F::from_u64(u64::from(bi - k));
        }
    }
    acc
}

/// Matrix of `S^t V* -> (S^{d-t} V)^k`, columns indexed by
/// `monomial_basis(n, t)`, rows by blocks of `monomial_basis(n, d - t)`, one
/// block per basis form of `W`.
pub fn catalecticant_matrix<F: Scalar>(w: &LinearSeries<F>, t: u32) -> Result<Matrix<F>> {
    let d = w.degree;
    if t > d {
        return Err(Error::DegreeOutOfRange { t: t as usize, max: d as usize });
    }
    let n = w.ctx.len();
    let cols = monomial_basis(n, t);
    let rows = monomial_basis(n, d - t);
    let col_index = monomial_index(&cols);
    let row_index = monomial_index(&rows);
    let mut m = Matrix::zeros(rows.len() * w.basis.len(), cols.len());
    for (block, f) in w.basis.iter().enumerate() {
        let offset = block * rows.len();
        for (mono, c) in f.terms() {
            for alpha in divisors_of_degree(mono, t) {
                let beta = alpha.quotient_of(mono);
                let v = c.clone() * falling::<F>(&alpha, mono);
                m.set(offset + row_index[&beta], col_index[&alpha], v);
            }
        }
    }
    Ok(m)
}

/// Dimensions `dim A^W_t` for `t = 0..=d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunction {
    pub dims: Vec<usize>,
}

impl HilbertFunction {
    /// Length of the apolar algebra, `sum_t dims[t]`.
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn max(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.dims.iter().eq(self.dims.iter().rev())
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}

pub fn hilbert_function<F: Scalar>(w: &LinearSeries<F>) -> Result<HilbertFunction> {
    w.require_nonzero()?;
    let dims = (0..=w.degree)
        .into_par_iter()
        .map(|t| catalecticant_matrix(w, t).map(|m| m.rank()))
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertFunction { dims })
}

/// `ℓ(A^W) = dim Diff(W)`.
pub fn apolar_length<F: Scalar>(w: &LinearSeries<F>) -> Result<usize> {
    Ok(hilbert_function(w)?.total())
}

fn dual_forms<F: Scalar>(ctx: &Arc<VarContext>, basis: &[Monomial], vectors: Vec<Vec<F>>) -> Vec<DualForm<F>> {
    vectors
        .into_iter()
        .map(|v| DualForm::new(Polynomial::from_coefficients(ctx, basis, &v)))
        .collect()
}

fn full_component<F: Scalar>(ctx: &Arc<VarContext>, t: u32) -> Vec<DualForm<F>> {
    monomial_basis(ctx.len(), t)
        .into_iter()
        .map(|m| DualForm::new(Polynomial::monomial(ctx, m, F::one())))
        .collect()
}

/// Basis of `(W^⊥)_t`, expressed over `monomial_basis(n, t)` in the order
/// produced by [`Matrix::kernel_basis`]. Above degree `d` this is all of `S^t V*`.
pub fn apolar_ideal_component<F: Scalar>(w: &LinearSeries<F>, t: u32) -> Result<Vec<DualForm<F>>> {
    if t > w.degree || w.is_zero() {
        return Ok(full_component(&w.ctx, t));
    }
    let basis = monomial_basis(w.ctx.len(), t);
    let kernel = catalecticant_matrix(w, t)?.kernel_basis();
    Ok(dual_forms(&w.ctx, &basis, kernel))
}

/// Graded pieces of `Diff(W)`: entry `s` is a basis of the span of all
/// derivatives of order `d - s` of elements of `W`, for `s = 0..=d`.
pub fn derivative_spaces<F: Scalar>(w: &LinearSeries<F>) -> Vec<Vec<Polynomial<F>>> {
    let n = w.ctx.len();
    let d = w.degree as usize;
    let mut spaces = vec![Vec::new(); d + 1];
    spaces[d] = w.basis.clone();
    for s in (0..d).rev() {
        let basis = monomial_basis(n, s as u32);
        let index = monomial_index(&basis);
        let mut ech = EchelonBasis::new(basis.len());
        let mut next = Vec::new();
        for g in &spaces[s + 1] {
            for v in 0..n {
                let dg = g.derivative(v);
                if !dg.is_zero() && ech.insert(&dg.coefficients_in(&index)).expect("lengths agree") {
                    next.push(dg);
                }
            }
        }
        spaces[s] = next;
    }
    spaces
}

/// Degrees of a minimal generating set of `W^⊥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorDegrees {
    /// Number of minimal generators in each degree that has any.
    pub counts: BTreeMap<u32, usize>,
    /// Largest generator degree.
    pub delta: u32,
}

/// Number of minimal generators of `W^⊥` in each degree `1..=d+1`.
///
/// The count in degree `t` is `dim (W^⊥)_t - dim (S_1 (W^⊥)_{t-1})`. The
/// second term is computed through the inverse system: under the apolar
/// pairing, the complement of `S_1 (W^⊥)_{t-1}` in `S^t V` is the space `K_t`
/// of forms all of whose first partials lie in `D = Diff(W)_{t-1}`. A tuple
/// `(P_1, ..., P_n)` in `D^n` is such a gradient exactly when
/// `∂_k P_i = ∂_i P_k` for all `i < k`, and the gradient map is injective in
/// positive degree, so `dim K_t = n dim D - rank(compatibility system)` and
/// the count is `dim K_t - dim A^W_t`.
pub fn minimal_generator_degrees<F: Scalar>(w: &LinearSeries<F>) -> Result<GeneratorDegrees> {
    w.require_nonzero()?;
    let n = w.ctx.len();
    let d = w.degree;
    let spaces = derivative_spaces(w);
    let h = |t: u32| if t <= d { spaces[t as usize].len() } else { 0 };

    let counts: Vec<(u32, usize)> = (1..=d + 1)
        .into_par_iter()
        .map(|t| {
            let kt = if t == 1 { n } else { gradient_space_dim(&spaces[(t - 1) as usize], n) };
            (t, kt - h(t))
        })
        .collect();
    let counts: BTreeMap<u32, usize> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
    let delta = counts.keys().next_back().copied().unwrap_or(0);
    Ok(GeneratorDegrees { counts, delta })
}

/// Dimension of `{G : ∂_i G ∈ span(space) for all i}` in the degree one above `space`.
fn gradient_space_dim<F: Scalar>(space: &[Polynomial<F>], n: usize) -> usize {
    let h = space.len();
    if h == 0 {
        return 0;
    }
    // derivs[v][j] = ∂_v space[j]
    let derivs: Vec<Vec<Polynomial<F>>> =
        (0..n).map(|v| space.iter().map(|g| g.derivative(v)).collect()).collect();
    let unknown = |i: usize, j: usize| i * h + j;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            // ∂_k P_i - ∂_i P_k, collected by monomial
            let mut by_mono: HashMap<&Monomial, BTreeMap<usize, F>> = HashMap::new();
            for j in 0..h {
                for (m, c) in derivs[k][j].terms() {
                    add_entry(by_mono.entry(m).or_default(), unknown(i, j), c.clone());
                }
                for (m, c) in derivs[i][j].terms() {
                    add_entry(by_mono.entry(m).or_default(), unknown(k, j), -c.clone());
                }
            }
            for entries in by_mono.into_values() {
                if entries.is_empty() {
                    continue;
                }
                let mut row = vec![F::zero(); n * h];
                for (col, c) in entries {
                    row[col] = c;
                }
                rows.push(row);
            }
        }
    }
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).expect("uniform rows").rank() };
    n * h - rank
}

fn add_entry<F: Scalar>(row: &mut BTreeMap<usize, F>, col: usize, c: F) {
    let s = row.remove(&col).map_or(c.clone(), |old| old + c);
    if !s.is_zero() {
        row.insert(col, s);
    }
}

/// Explicit minimal generators of `W^⊥` in degrees `1..=max_degree`: in each
/// degree, a basis of `(W^⊥)_t` modulo `S_1 (W^⊥)_{t-1}`, picked greedily from
/// the kernel basis of the catalecticant.
pub fn minimal_generators<F: Scalar>(w: &LinearSeries<F>, max_degree: u32) -> Result<Vec<(u32, Vec<DualForm<F>>)>> {
    w.require_nonzero()?;
    let n = w.ctx.len();
    let mut out = Vec::new();
    let mut previous = apolar_ideal_component(w, 0)?;
    for t in 1..=max_degree {
        let current = apolar_ideal_component(w, t)?;
        let basis = monomial_basis(n, t);
        let index = monomial_index(&basis);
        let mut ech = EchelonBasis::new(basis.len());
        for psi in &previous {
            for v in 0..n {
                let prod = psi.try_mul(&DualForm::partial(&w.ctx, v))?;
                ech.insert(&prod.as_polynomial().coefficients_in(&index))?;
            }
        }
        let mut fresh = Vec::new();
        for psi in &current {
            if ech.insert(&psi.as_polynomial().coefficients_in(&index))? {
                fresh.push(psi.clone());
            }
        }
        if !fresh.is_empty() {
            out.push((t, fresh));
        }
        previous = current;
    }
    Ok(out)
}

/// Basis of `(W^⊥ : Θ)_t = {Ψ ∈ S^t V* : ΨΘ ∈ (W^⊥)_{t+e}}`, found as the
/// kernel of (degree-`t+e` catalecticant) x (multiplication by `Θ`).
pub fn colon_component<F: Scalar>(w: &LinearSeries<F>, theta: &DualForm<F>, t: u32) -> Result<Vec<DualForm<F>>> {
    if !theta.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let e = theta.degree().unwrap_or(0);
    if theta.is_zero() || w.is_zero() || t + e > w.degree {
        return Ok(full_component(&w.ctx, t));
    }
    let n = w.ctx.len();
    let src = monomial_basis(n, t);
    let dst = monomial_basis(n, t + e);
    let dst_index = monomial_index(&dst);
    let mut mult = Matrix::zeros(dst.len(), src.len());
    for (j, alpha) in src.iter().enumerate() {
        for (m, c) in theta.as_polynomial().terms() {
            mult.set(dst_index[&alpha.mul(m)], j, c.clone());
        }
    }
    let cat = catalecticant_matrix(w, t + e)?;
    let kernel = cat.mul(&mult)?.kernel_basis();
    Ok(dual_forms(&w.ctx, &src, kernel))
}

/// `ℓ(S(V*) / (W^⊥ + (∂)))` computed gradewise from spans:
/// `sum_t dim S_t - dim((W^⊥)_t + ∂ S_{t-1})` over `t = 0..=d`.
pub fn quotient_length_with_linear<F: Scalar>(w: &LinearSeries<F>, partial: &DualForm<F>) -> Result<usize> {
    if !partial.is_linear_form() {
        return Err(Error::NotLinear(partial.to_string()));
    }
    if w.is_zero() {
        return Ok(0);
    }
    let n = w.ctx.len();
    let pieces = (0..=w.degree)
        .into_par_iter()
        .map(|t| -> Result<usize> {
            let basis = monomial_basis(n, t);
            let index = monomial_index(&basis);
            let mut ech = EchelonBasis::new(basis.len());
            for psi in apolar_ideal_component(w, t)? {
                ech.insert(&psi.as_polynomial().coefficients_in(&index))?;
            }
            if t > 0 {
                for m in monomial_basis(n, t - 1) {
                    let mono = DualForm::new(Polynomial::monomial(&w.ctx, m, F::one()));
                    let prod = mono.try_mul(partial)?;
                    ech.insert(&prod.as_polynomial().coefficients_in(&index))?;
                }
            }
            Ok(basis.len() - ech.dim())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pieces.into_iter().sum())
}

/// Dimension of the span of all partial derivatives of `f` of every order,
/// `f` included. `f` need not be homogeneous.
pub fn diff_closure_dim<F: Scalar>(f: &Polynomial<F>) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("Diff of the zero polynomial".into()));
    }
    let mut monos: Vec<Monomial> = f.terms().flat_map(|(m, _)| m.divisors()).collect();
    monos.sort();
    monos.dedup();
    let index = monomial_index(&monos);
    let mut ech = EchelonBasis::new(monos.len());
    ech.insert(&f.coefficients_in(&index))?;
    // process highest degree first so each level saturates before the next
    let mut queue = std::collections::VecDeque::from([f.clone()]);
    while let Some(g) = queue.pop_front() {
        for v in 0..f.context().len() {
            let dg = g.derivative(v);
            if !dg.is_zero() && ech.insert(&dg.coefficients_in(&index))? {
                queue.push_back(dg);
            }
        }
    }
    Ok(ech.dim())
}
