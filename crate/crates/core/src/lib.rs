//! Exact computer algebra for threefolds with ordinary multiple points:
//! sparse polynomials, Gröbner bases, singularity analysis, factoriality
//! criteria, explicit constructions and blow-up invariants.

pub mod poly;
pub mod groebner;
pub mod singularity;
pub mod criteria;
pub mod invariants;
pub mod linalg;
pub mod construct;
