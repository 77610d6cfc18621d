//! Exact sparse multivariate polynomials over Q, F_p and F_{p^e}.

mod field;
mod monomial;
mod parse;
mod point;
mod polynomial;
pub(crate) mod univariate;

pub use field::{rational_reconstruction, Field, GaloisField, Scalar, MAX_PRIME};
pub use monomial::{grevlex, monomials_of_degree, Monomial};
pub use parse::{parse_poly_file, parse_polynomial, write_poly_file, PolyFile};
pub use point::ProjectivePoint;
pub use polynomial::Polynomial;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("unsupported extension degree {0}")]
    BadExtensionDegree(usize),
    #[error("extension modulus must be monic and irreducible")]
    ReducibleModulus,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("variable x{index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("{value} is not representable in {field}")]
    NotRepresentable { value: String, field: String },
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
    #[error("projective point with all coordinates zero")]
    ZeroPoint,
    #[error("bad .poly header: {0}")]
    Header(String),
}
