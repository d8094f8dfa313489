//! Example forms and series: determinants, permanents, Pfaffians, symmetric
//! determinants, monomials, spaces of minors and the matrix multiplication
//! series, with closed-form Hilbert functions and bound tables.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::apolarity::{hilbert_function, HilbertFunction, LinearSeries};
use crate::bounds::{
    bernardi_ranestad_upper, derivative_bound, det_singular_locus_bound, ranestad_schreyer_bound, BoundEntry,
    BoundKind,
};
use crate::error::{Error, Result};
use crate::poly::{DualForm, Monomial, Polynomial, VarContext, Variable};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Det(u32),
    Perm(u32),
    Pfaffian(u32),
    Symdet(u32),
    MonomialProduct(u32),
    /// `d x d` minors of an `m x n` matrix.
    Minors { m: u32, n: u32, d: u32 },
    /// Entries of the product of a `p x q` and a `q x r` matrix.
    Matmul { p: u32, q: u32, r: u32 },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            FamilySpec::Det(0) | FamilySpec::Perm(0) | FamilySpec::Pfaffian(0) | FamilySpec::Symdet(0) => {
                bad(format!("{self}: size must be positive"))
            }
            FamilySpec::MonomialProduct(0) => bad(format!("{self}: need at least one variable")),
            FamilySpec::Minors { m, n, d } if d == 0 || d > m || m > n => {
                bad(format!("{self}: need 1 <= d <= m <= n"))
            }
            FamilySpec::Matmul { p, q, r } if p == 0 || q == 0 || r == 0 => {
                bad(format!("{self}: dimensions must be positive"))
            }
            _ => Ok(()),
        }
    }

    /// Degree of the forms.
    pub fn degree(&self) -> u32 {
        match *self {
            FamilySpec::Det(n) | FamilySpec::Perm(n) | FamilySpec::Pfaffian(n) | FamilySpec::Symdet(n) => n,
            FamilySpec::MonomialProduct(n) => n,
            FamilySpec::Minors { d, .. } => d,
            FamilySpec::Matmul { .. } => 2,
        }
    }

    pub fn context(&self) -> Arc<VarContext> {
        let square = |n: u32, keep: fn(u32, u32) -> bool| {
            let vars = (1..=n)
                .flat_map(|i| (1..=n).map(move |j| (i, j)))
                .filter(|&(i, j)| keep(i, j))
                .map(|(i, j)| Variable::indexed("x", &[i, j]))
                .collect();
            VarContext::new(vars).expect("distinct names")
        };
        fn rect(name: &'static str, a: u32, b: u32) -> impl Iterator<Item = Variable> {
            (1..=a).flat_map(move |i| (1..=b).map(move |j| Variable::indexed(name, &[i, j])))
        }
        match *self {
            FamilySpec::Det(n) | FamilySpec::Perm(n) => square(n, |_, _| true),
            FamilySpec::Pfaffian(n) => square(2 * n, |i, j| i < j),
            FamilySpec::Symdet(n) => square(n, |i, j| i <= j),
            FamilySpec::MonomialProduct(n) => VarContext::numbered("x", n as usize),
            FamilySpec::Minors { m, n, .. } => VarContext::new(rect("x", m, n).collect()).expect("distinct names"),
            FamilySpec::Matmul { p, q, r } => {
                let vars = rect("x", p, q).chain(rect("y", q, r)).chain(rect("z", r, p)).collect();
                VarContext::new(vars).expect("distinct names")
            }
        }
    }

    /// The `∂` used for the invariant derivative bound, with a description
    /// of the group action it is asserted to respect.
    pub fn invariant_partial<F: Scalar>(&self, ctx: &Arc<VarContext>) -> Option<(DualForm<F>, String)> {
        let var = |name: &str, i: u32, j: u32| ctx.index_of(name, &[i, j]).expect("variable exists");
        let partial = |name: &str, i: u32, j: u32| DualForm::partial(ctx, var(name, i, j));
        match *self {
            FamilySpec::Det(n) if n >= 1 => {
                Some((partial("x", 1, 1), format!("SL_{n} x SL_{n} acting on the left and right")))
            }
            FamilySpec::Pfaffian(n) => Some((partial("x", 1, 2), format!("SL_{} acting by congruence", 2 * n))),
            FamilySpec::Symdet(n) => Some((partial("x", n, n), format!("SL_{n} acting by congruence"))),
            FamilySpec::Minors { m, n, .. } => {
                Some((partial("x", 1, 1), format!("SL_{m} x SL_{n} acting on the left and right")))
            }
            FamilySpec::Matmul { p, q, r } => {
                let sum = partial("x", 1, 1).try_add(&partial("y", 1, 1)).expect("same context");
                Some((sum, format!("SL_{p} x SL_{q} x SL_{r} acting on both factors")))
            }
            _ => None,
        }
    }

    /// Size of the determinant, when the family is one.
    pub fn det_size(&self) -> Option<u64> {
        match *self {
            FamilySpec::Det(n) if n >= 2 => Some(u64::from(n)),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Det(n) => write!(f, "det:{n}"),
            FamilySpec::Perm(n) => write!(f, "perm:{n}"),
            FamilySpec::Pfaffian(n) => write!(f, "pf:{n}"),
            FamilySpec::Symdet(n) => write!(f, "symdet:{n}"),
            FamilySpec::MonomialProduct(n) => write!(f, "monprod:{n}"),
            FamilySpec::Minors { m, n, d } => write!(f, "minors:{m},{n},{d}"),
            FamilySpec::Matmul { p, q, r } => write!(f, "matmul:{p},{q},{r}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses identifiers such as `det:3`, `minors:2,3,2` or `matmul:2,2,2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown builtin form '{s}'"));
        let (name, args) = s.split_once(':').ok_or_else(bad)?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<u32>().map_err(|_| Error::InvalidParameter(format!("bad parameter '{a}' in '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        let spec = match (name, nums.as_slice()) {
            ("det", &[n]) => FamilySpec::Det(n),
            ("perm", &[n]) => FamilySpec::Perm(n),
            ("pf", &[n]) => FamilySpec::Pfaffian(n),
            ("symdet", &[n]) => FamilySpec::Symdet(n),
            ("monprod", &[n]) => FamilySpec::MonomialProduct(n),
            ("minors", &[m, n, d]) => FamilySpec::Minors { m, n, d },
            ("matmul", &[p, q, r]) => FamilySpec::Matmul { p, q, r },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Sum over permutations of `sign^inv(σ) prod_i entry(i, σ(i))`, for an
/// `n x n` matrix given by variable indices (entries may repeat).
fn permutation_sum<F: Scalar>(ctx: &Arc<VarContext>, n: usize, entry: impl Fn(usize, usize) -> usize, signed: bool) -> Polynomial<F> {
    fn rec<F: Scalar>(
        row: usize,
        n: usize,
        used: &mut Vec<bool>,
        exps: &mut Vec<u32>,
        negative: bool,
        entry: &dyn Fn(usize, usize) -> usize,
        signed: bool,
        out: &mut Vec<(Monomial, F)>,
    ) {
        if row == n {
            let c = if negative && signed { -F::one() } else { F::one() };
            out.push((Monomial::new(exps.clone()), c));
            return;
        }
        // choosing the k-th unused column contributes k inversions
        let mut k = 0;
        for col in 0..n {
            if used[col] {
                continue;
            }
            used[col] = true;
            let v = entry(row, col);
            exps[v] += 1;
            rec(row + 1, n, used, exps, negative ^ (k % 2 == 1), entry, signed, out);
            exps[v] -= 1;
            used[col] = false;
            k += 1;
        }
    }
    let mut out = Vec::new();
    rec(0, n, &mut vec![false; n], &mut vec![0; ctx.len()], false, &entry, signed, &mut out);
    Polynomial::from_terms(ctx, out)
}

/// Pfaffian of the skew matrix on `indices` (1-based), expanding along the
/// first index.
fn pfaffian<F: Scalar>(ctx: &Arc<VarContext>, indices: &[u32]) -> Polynomial<F> {
    let Some((&i, rest)) = indices.split_first() else {
        return Polynomial::constant(ctx, F::one());
    };
    let mut total = Polynomial::zero(ctx);
    for (k, &j) in rest.iter().enumerate() {
        let remaining: Vec<u32> = rest.iter().copied().filter(|&x| x != j).collect();
        let x = Polynomial::var(ctx, ctx.index_of("x", &[i, j]).expect("i < j"));
        let term = x.try_mul(&pfaffian(ctx, &remaining)).expect("same context");
        total = if k % 2 == 0 { total.try_add(&term) } else { total.try_sub(&term) }.expect("same context");
    }
    total
}

fn subsets(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn rec(start: u32, n: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k as usize {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// The forms spanning the family's series.
pub fn build_forms<F: Scalar>(spec: &FamilySpec) -> Result<Vec<Polynomial<F>>> {
    spec.validate()?;
    let ctx = spec.context();
    let at = |name: &str, i: u32, j: u32| ctx.index_of(name, &[i, j]).expect("variable exists");
    let forms = match *spec {
        FamilySpec::Det(n) | FamilySpec::Perm(n) => {
            let signed = matches!(spec, FamilySpec::Det(_));
            vec![permutation_sum(&ctx, n as usize, |i, j| at("x", i as u32 + 1, j as u32 + 1), signed)]
        }
        FamilySpec::Symdet(n) => {
            let entry = |i: usize, j: usize| {
                let (a, b) = (i.min(j) as u32 + 1, i.max(j) as u32 + 1);
                at("x", a, b)
            };
            vec![permutation_sum(&ctx, n as usize, entry, true)]
        }
        FamilySpec::Pfaffian(n) => {
            let indices: Vec<u32> = (1..=2 * n).collect();
            vec![pfaffian(&ctx, &indices)]
        }
        FamilySpec::MonomialProduct(n) => {
            vec![Polynomial::monomial(&ctx, Monomial::new(vec![1; n as usize]), F::one())]
        }
        FamilySpec::Minors { m, n, d } => {
            let mut forms = Vec::new();
            for rows in subsets(m, d) {
                for cols in subsets(n, d) {
                    let entry = |i: usize, j: usize| at("x", rows[i], cols[j]);
                    forms.push(permutation_sum(&ctx, d as usize, entry, true));
                }
            }
            forms
        }
        FamilySpec::Matmul { p, q, r } => {
            let mut forms = Vec::new();
            for i in 1..=p {
                for k in 1..=r {
                    let terms = (1..=q).map(|j| {
                        let mut e = vec![0; ctx.len()];
                        e[at("x", i, j)] += 1;
                        e[at("y", j, k)] += 1;
                        (Monomial::new(e), F::one())
                    });
                    forms.push(Polynomial::from_terms(&ctx, terms));
                }
            }
            forms
        }
    };
    Ok(forms)
}

pub fn build<F: Scalar>(spec: &FamilySpec) -> Result<LinearSeries<F>> {
    let forms = build_forms(spec)?;
    LinearSeries::with_degree(&spec.context(), spec.degree(), forms)
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn catalan(n: u64) -> BigInt {
    binom(2 * n, n) / (n + 1)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

fn to_usize(v: BigInt) -> usize {
    usize::try_from(v).expect("dimension fits in usize")
}

/// Hilbert function from the family's known formula, without polynomial arithmetic.
pub fn closed_form_hilbert(spec: &FamilySpec) -> Result<HilbertFunction> {
    spec.validate()?;
    let d = u64::from(spec.degree());
    let dims = match *spec {
        FamilySpec::Det(n) => (0..=d).map(|t| to_usize(binom(n.into(), t).pow(2))).collect(),
        FamilySpec::Pfaffian(n) => (0..=d).map(|t| to_usize(binom(2 * u64::from(n), 2 * t))).collect(),
        FamilySpec::Symdet(n) => {
            // Narayana numbers N(n+1, t+1)
            let m = u64::from(n) + 1;
            (0..=d).map(|t| to_usize(binom(m, t + 1) * binom(m, t) / m)).collect()
        }
        FamilySpec::MonomialProduct(n) => (0..=d).map(|t| to_usize(binom(n.into(), t))).collect(),
        FamilySpec::Minors { m, n, .. } => {
            (0..=d).map(|t| to_usize(binom(m.into(), t) * binom(n.into(), t))).collect()
        }
        FamilySpec::Matmul { p, q, r } => {
            let (p, q, r) = (p as usize, q as usize, r as usize);
            vec![1, p * q + q * r, p * r]
        }
        FamilySpec::Perm(_) => return Err(Error::NoClosedForm(spec.to_string())),
    };
    Ok(HilbertFunction { dims })
}

/// Families with a bound table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableFamily {
    Det,
    Pfaffian,
    Symdet,
}

impl TableFamily {
    pub fn spec(self, n: u32) -> FamilySpec {
        match self {
            TableFamily::Det => FamilySpec::Det(n),
            TableFamily::Pfaffian => FamilySpec::Pfaffian(n),
            TableFamily::Symdet => FamilySpec::Symdet(n),
        }
    }

    pub fn rows(self) -> &'static [TableRow] {
        use TableRow::*;
        match self {
            TableFamily::Det => &[Sylvester, SingularLocus, LengthOverDegree, InvariantDerivative, CactusUpper, WaringUpper],
            TableFamily::Pfaffian => &[Sylvester, LengthOverDegree, InvariantDerivative, CactusUpper, WaringUpper],
            TableFamily::Symdet => &[Sylvester, LengthOverDegree, InvariantDerivative, CactusUpper],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TableFamily::Det => "det",
            TableFamily::Pfaffian => "pf",
            TableFamily::Symdet => "symdet",
        }
    }
}

impl FromStr for TableFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "det" => Ok(TableFamily::Det),
            "pf" | "pfaffian" => Ok(TableFamily::Pfaffian),
            "symdet" => Ok(TableFamily::Symdet),
            _ => Err(Error::InvalidParameter(format!("no bound table for family '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableRow {
    Sylvester,
    /// Waring lower bound from the singular locus (determinant only).
    SingularLocus,
    /// `ℓ / δ` with `δ = 2`.
    LengthOverDegree,
    InvariantDerivative,
    CactusUpper,
    WaringUpper,
}

impl TableRow {
    pub fn label(self, family: TableFamily) -> String {
        let f = family.name();
        match self {
            TableRow::Sylvester => "Sylvester".into(),
            TableRow::SingularLocus => "Singular locus".into(),
            TableRow::LengthOverDegree => "Ranestad-Schreyer".into(),
            TableRow::InvariantDerivative => "Invariant derivative".into(),
            TableRow::CactusUpper => format!("Upper bound for cr({f}_n)"),
            TableRow::WaringUpper => format!("Upper bound for r({f}_n)"),
        }
    }

    pub fn kind(self) -> BoundKind {
        match self {
            TableRow::SingularLocus => BoundKind::LowerForWaring,
            TableRow::CactusUpper => BoundKind::UpperForCactus,
            TableRow::WaringUpper => BoundKind::UpperForWaring,
            _ => BoundKind::LowerForCactus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundTable {
    pub family: TableFamily,
    pub columns: Vec<u32>,
    /// One row per entry of `family.rows()`, one cell per column.
    pub rows: Vec<(TableRow, Vec<Rational>)>,
}

fn int(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// Closed-form value of one table cell.
pub fn closed_form_cell(family: TableFamily, row: TableRow, n: u32) -> Result<Rational> {
    let h = closed_form_hilbert(&family.spec(n))?;
    let total = BigInt::from(h.total());
    let n64 = u64::from(n);
    let v = match (family, row) {
        (_, TableRow::Sylvester) => int(BigInt::from(h.max())),
        (_, TableRow::LengthOverDegree) => Rational::new(total, BigInt::from(2)),
        (TableFamily::Det, TableRow::SingularLocus) => int(BigInt::from(det_singular_locus_bound(n64)?)),
        (TableFamily::Det, TableRow::InvariantDerivative) => int(binom(2 * n64, n64) - binom(2 * n64 - 2, n64 - 1)),
        (TableFamily::Det, TableRow::CactusUpper) => int(binom(2 * n64, n64) - 2),
        (TableFamily::Det, TableRow::WaringUpper) => {
            let k = u32::try_from(n64 / 3).expect("small");
            let scale = Rational::new(BigInt::from(5), BigInt::from(6)).pow(k as i32);
            scale * int(pow2(n64 - 1) * factorial(n64))
        }
        (TableFamily::Pfaffian, TableRow::InvariantDerivative) => int(3 * pow2(2 * n64 - 3)),
        (TableFamily::Pfaffian, TableRow::CactusUpper) => int(pow2(2 * n64 - 1)),
        (TableFamily::Pfaffian, TableRow::WaringUpper) => {
            let terms = factorial(2 * n64) / (pow2(n64) * factorial(n64));
            int(terms * pow2(n64 - 1))
        }
        (TableFamily::Symdet, TableRow::InvariantDerivative) => int(catalan(n64 + 1) - catalan(n64)),
        (TableFamily::Symdet, TableRow::CactusUpper) => int(catalan(n64 + 1)),
        _ => return Err(Error::InvalidParameter(format!("{} table has no row {row:?}", family.name()))),
    };
    Ok(v)
}

/// Closed-form bound table for `n` in `ns`.
pub fn closed_form_table(family: TableFamily, ns: impl IntoIterator<Item = u32>) -> Result<BoundTable> {
    let columns: Vec<u32> = ns.into_iter().collect();
    if let Some(&n) = columns.iter().find(|&&n| n < 2) {
        return Err(Error::InvalidParameter(format!("table column n = {n} < 2")));
    }
    let rows = family
        .rows()
        .iter()
        .map(|&row| {
            let cells = columns.iter().map(|&n| closed_form_cell(family, row, n)).collect::<Result<Vec<_>>>()?;
            Ok((row, cells))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundTable { family, columns, rows })
}

/// Recomputes a table cell from polynomial arithmetic, where a computation
/// exists. The length-over-degree row uses the computed `δ`.
pub fn computed_cell(family: TableFamily, row: TableRow, n: u32) -> Result<Option<Rational>> {
    let spec = family.spec(n);
    let w: LinearSeries<Rational> = build(&spec)?;
    let v = match row {
        TableRow::Sylvester => int(BigInt::from(hilbert_function(&w)?.max())),
        TableRow::LengthOverDegree => ranestad_schreyer_bound(&w)?.value,
        TableRow::InvariantDerivative => {
            let (partial, _) = spec.invariant_partial(w.context()).expect("table families have one");
            int(BigInt::from(derivative_bound(&w, &partial)?))
        }
        TableRow::CactusUpper if family == TableFamily::Det => {
            let l = Polynomial::var(w.context(), w.context().len() - 1);
            int(BigInt::from(bernardi_ranestad_upper(&w.basis()[0], &l)?))
        }
        _ => return Ok(None),
    };
    Ok(Some(v))
}

/// Linear forms `x_1 + sum_{i>1} ε_i x_i` over sign vectors, with
/// coefficients `prod ε_i / (2^{n-1} n!)`, whose weighted `n`-th powers sum
/// to `x_1 ... x_n`.
pub fn monomial_decomposition<F: Scalar>(n: u32) -> Result<(Vec<Polynomial<F>>, Vec<F>)> {
    if n == 0 {
        return Err(Error::InvalidParameter("monomial decomposition needs n >= 1".into()));
    }
    let ctx = VarContext::numbered("x", n as usize);
    let scale = (1..=u64::from(n)).fold(F::from_u64(1u64 << (n - 1)), |acc, k| acc * F::from_u64(k));
    let mut forms = Vec::new();
    let mut coeffs = Vec::new();
    for mask in 0u64..(1 << (n - 1)) {
        let signs: Vec<F> = (0..n)
            .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -F::one() } else { F::one() })
            .collect();
        let product = signs.iter().fold(F::one(), |acc, s| acc * s.clone());
        forms.push(Polynomial::linear(&ctx, &signs)?);
        coeffs.push(product / scale.clone());
    }
    Ok((forms, coeffs))
}

/// Upper bound entries known from explicit decompositions.
pub fn known_upper_bounds(spec: &FamilySpec) -> Vec<BoundEntry> {
    let entry = |name: &str, v: Rational, note: &str| {
        let mut e = BoundEntry::rational(name, &v, BoundKind::UpperForWaring).expect("table values fit");
        e.metadata.note = Some(note.to_string());
        e
    };
    match *spec {
        FamilySpec::MonomialProduct(n) if n <= 62 => {
            vec![entry("power-sum-decomposition", int(pow2(u64::from(n) - 1)), "signed sum of powers of x1 ± ... ± xn")]
        }
        FamilySpec::Det(n) if (2..=12).contains(&n) => {
            let v = closed_form_cell(TableFamily::Det, TableRow::WaringUpper, n).expect("n >= 2");
            vec![entry("det-decomposition", v, "numeric formula only; no decomposition constructed")]
        }
        FamilySpec::Pfaffian(n) if (2..=8).contains(&n) => {
            let v = closed_form_cell(TableFamily::Pfaffian, TableRow::WaringUpper, n).expect("n >= 2");
            vec![entry("pf-decomposition", v, "sum over pair partitions of monomial ranks")]
        }
        _ => Vec::new(),
    }
}

/// Lower bounds for the matrix multiplication series and tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatmulBound {
    /// Derivative bound for the series, at `∂ = d_x[1,1] + d_y[1,1]`.
    pub series_lower: usize,
    /// `⌈series_lower / 2⌉`, a lower bound for the tensor rank.
    pub tensor_lower: usize,
}

/// Computes the series bound from polynomial arithmetic and checks it
/// against `pq + qr + pr - p - r + 1`.
pub fn matmul_bound(p: u32, q: u32, r: u32) -> Result<MatmulBound> {
    let spec = FamilySpec::Matmul { p, q, r };
    let w: LinearSeries<Rational> = build(&spec)?;
    let (partial, _) = spec.invariant_partial(w.context()).expect("matmul has one");
    let series_lower = derivative_bound(&w, &partial)?;
    let (p, q, r) = (p as usize, q as usize, r as usize);
    let expected = p * q + q * r + p * r + 1 - p - r;
    if series_lower != expected {
        return Err(Error::Inconsistent(format!(
            "{spec}: derivative bound {series_lower} differs from closed form {expected}"
        )));
    }
    Ok(MatmulBound { series_lower, tensor_lower: series_lower.div_ceil(2) })
}
