//! Exact apolarity computations for homogeneous forms and linear series,
//! together with the Waring and cactus rank bounds they feed.
//!
//! All algebra is generic over an exact [`Scalar`]; the aliases below fix the
//! arbitrary-precision rationals used by the command-line tool.

pub mod apolarity;
pub mod bounds;
pub mod catalog;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod scalar;

pub use apolarity::{
    apolar_ideal_component, apolar_length, catalecticant_matrix, colon_component, derivative_spaces,
    diff_closure_dim, hilbert_function, minimal_generator_degrees, minimal_generators,
    quotient_length_with_linear, GeneratorDegrees, HilbertFunction, LinearSeries,
};
pub use bounds::{
    bernardi_ranestad_upper, bound_report, derivative_bound, derivative_entry, det_singular_locus_bound,
    generic_derivative_bound, leading_coefficient_bound, random_partials, ranestad_schreyer_bound,
    sylvester_bound, BoundEntry, BoundKind, BoundMetadata, BoundReport, GenericDerivative,
    InvarianceAssertion, LeadingCoefficient, LengthOverDegree, ReportOptions,
};
pub use catalog::{
    build, build_forms, closed_form_hilbert, closed_form_table, computed_cell, known_upper_bounds,
    matmul_bound, monomial_decomposition, BoundTable, FamilySpec, MatmulBound, TableFamily, TableRow,
};
pub use error::{Error, ParseError, Result};
pub use linalg::{in_span, span_dim, EchelonBasis, Matrix};
pub use poly::{
    evaluate_decomposition, monomial_basis, parse_dual, parse_polynomial, parse_series, DualForm,
    Monomial, Polynomial, VarContext, Variable,
};
pub use scalar::{ExactInt, Scalar};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
pub type QMatrix = Matrix<Rational>;
pub type QPolynomial = Polynomial<Rational>;
pub type QDualForm = DualForm<Rational>;
pub type QLinearSeries = LinearSeries<Rational>;
