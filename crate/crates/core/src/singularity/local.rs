//! Local invariants at a point: multiplicity, tangent cone, Milnor number
//! and ordinariness.

use serde::Serialize;

use super::search::{projective_zeros, SearchLimits};
use super::{HypersurfaceSpec, SingularityError};
use crate::groebner::{
    groebner_basis, quotient_dimension_of, GroebnerBasis, GroebnerError, MonomialOrder, QuotientDimension,
};
use crate::poly::{Field, Monomial, Polynomial, ProjectivePoint, Scalar};

/// Dimension of the local ring `k[x]_(x) / I` at the origin.
///
/// Uses Lazard's method: the generators are homogenized with a new variable
/// placed first, a Gröbner basis is computed for the degree order that
/// favours the homogenizing variable, and the dehomogenized leading
/// monomials span the leading ideal of `I` for the local degree order.
pub fn local_quotient_dimension(gens: &[Polynomial], budget: u64) -> Result<QuotientDimension, SingularityError> {
    let gens: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = gens.first() else {
        return Ok(QuotientDimension::Infinite);
    };
    let n = first.nvars();
    if n == 0 {
        // a nonzero constant generates the unit ideal
        return Ok(QuotientDimension::Finite(0));
    }
    if gens.iter().any(|g| !g.field().is_zero(&g.constant_term())) {
        return Ok(QuotientDimension::Finite(0));
    }
    let field = first.field().clone();
    let homogenized: Vec<Polynomial> = gens
        .iter()
        .map(|g| {
            let top = g.degree() as u32;
            let terms = g.terms().map(|(m, c)| {
                let mut e = Vec::with_capacity(n + 1);
                e.push(top - m.degree());
                e.extend_from_slice(m.exponents());
                (Monomial::new(e), c.clone())
            });
            Polynomial::from_terms(&field, n + 1, terms)
        })
        .collect();
    let gb = groebner_basis(&homogenized, MonomialOrder::HomogenizedLocal, budget)?;
    let leading: Vec<Monomial> =
        gb.leading_monomials().iter().map(|m| Monomial::new(m.exponents()[1..].to_vec())).collect();
    Ok(quotient_dimension_of(&leading, n))
}

/// Milnor number at the origin: local dimension of the Jacobian quotient.
/// `Infinite` exactly when the singularity at the origin is not isolated.
pub fn milnor_number(f_local: &Polynomial, budget: u64) -> Result<QuotientDimension, SingularityError> {
    if !f_local.field().is_zero(&f_local.constant_term()) {
        return Err(SingularityError::NotOnHypersurface);
    }
    local_quotient_dimension(&f_local.gradient(), budget)
}

/// Tjurina number at the origin: local dimension of `(f, ∂f)`.
pub fn tjurina_number(f_local: &Polynomial, budget: u64) -> Result<QuotientDimension, SingularityError> {
    if !f_local.field().is_zero(&f_local.constant_term()) {
        return Err(SingularityError::NotOnHypersurface);
    }
    let mut gens = f_local.gradient();
    gens.push(f_local.clone());
    local_quotient_dimension(&gens, budget)
}

/// Local equation of the hypersurface at `pt`, with `pt` at the origin.
pub fn local_equation(spec: &HypersurfaceSpec, pt: &ProjectivePoint) -> Result<Polynomial, SingularityError> {
    let g = spec.poly().translate_and_dehomogenize(pt)?;
    if !g.field().is_zero(&g.constant_term()) {
        return Err(SingularityError::NotOnHypersurface);
    }
    Ok(g)
}

/// Order of vanishing of the local equation; 1 means a smooth point.
pub fn multiplicity_at(spec: &HypersurfaceSpec, pt: &ProjectivePoint) -> Result<u32, SingularityError> {
    let g = local_equation(spec, pt)?;
    // a hypersurface containing the whole chart would make g zero, which a
    // nonzero homogeneous f cannot do
    Ok(g.min_degree().expect("nonzero local equation"))
}

/// Lowest homogeneous part of the local equation at `pt`.
pub fn tangent_cone(spec: &HypersurfaceSpec, pt: &ProjectivePoint) -> Result<Polynomial, SingularityError> {
    let g = local_equation(spec, pt)?;
    let m = g.min_degree().expect("nonzero local equation");
    Ok(g.homogeneous_component(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    #[serde(rename = "exact-Gröbner")]
    ExactGroebner,
    #[serde(rename = "enumerated-probabilistic")]
    EnumeratedProbabilistic,
}

impl std::fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CertificateKind::ExactGroebner => "exact-Gröbner",
            CertificateKind::EnumeratedProbabilistic => "enumerated-probabilistic",
        })
    }
}

/// Evidence behind an ordinariness verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdinaryCertificate {
    /// Reduced basis of the Jacobian ideal of the tangent cone. It contains a
    /// pure power of every variable iff the cone is over a smooth surface.
    Groebner { basis: GroebnerBasis, common_zero: Option<ProjectivePoint> },
    /// The Gröbner computation ran out of budget; rational points of the
    /// projectivized cone over the prime field were checked instead. A
    /// negative answer only covers those points.
    Enumerated { field: Field, points_checked: u128, common_zero: Option<ProjectivePoint> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordinariness {
    pub ordinary: bool,
    pub certificate: OrdinaryCertificate,
}

impl Ordinariness {
    pub fn certificate_kind(&self) -> CertificateKind {
        match self.certificate {
            OrdinaryCertificate::Groebner { .. } => CertificateKind::ExactGroebner,
            OrdinaryCertificate::Enumerated { .. } => CertificateKind::EnumeratedProbabilistic,
        }
    }

    /// A projective zero of all partials of the tangent cone, when one was
    /// located.
    pub fn common_zero(&self) -> Option<&ProjectivePoint> {
        match &self.certificate {
            OrdinaryCertificate::Groebner { common_zero, .. } => common_zero.as_ref(),
            OrdinaryCertificate::Enumerated { common_zero, .. } => common_zero.as_ref(),
        }
    }
}

/// Whether a homogeneous form defines a smooth hypersurface, i.e. its
/// partials have no common projective zero.
pub fn cone_is_smooth(cone: &Polynomial, limits: &SearchLimits) -> Result<Ordinariness, SingularityError> {
    let field = cone.field().clone();
    let m = cone.degree();
    let p = field.characteristic();
    if m < 1 {
        return Err(SingularityError::NotSingular);
    }
    if p != 0 && m as u64 % p == 0 {
        return Err(SingularityError::CharacteristicDividesMultiplicity { p, m: m as u32 });
    }
    let partials = cone.gradient();
    match groebner_basis(&partials, MonomialOrder::Grevlex, limits.groebner_budget) {
        Ok(basis) => {
            if basis.is_irrelevant() {
                return Ok(Ordinariness {
                    ordinary: true,
                    certificate: OrdinaryCertificate::Groebner { basis, common_zero: None },
                });
            }
            // the basis already proves a zero exists over the algebraic
            // closure; try to exhibit one
            let zero = if field.is_finite() {
                projective_zeros(&partials, limits).ok().and_then(|z| z.points.into_iter().next())
            } else {
                None
            };
            Ok(Ordinariness { ordinary: false, certificate: OrdinaryCertificate::Groebner { basis, common_zero: zero } })
        }
        Err(GroebnerError::BudgetExceeded { .. }) if field.is_finite() => enumerate_common_zero(&partials, limits),
        Err(e) => Err(e.into()),
    }
}

fn enumerate_common_zero(partials: &[Polynomial], limits: &SearchLimits) -> Result<Ordinariness, SingularityError> {
    let field = partials[0].field().clone();
    let n = partials[0].nvars();
    let q = field.order().unwrap();
    let total: u128 = (0..n as u32).map(|k| q.pow(k)).sum();
    if total > limits.enumeration_budget as u128 {
        return Err(SingularityError::EnumerationBudget { needed: total, budget: limits.enumeration_budget });
    }
    let mut checked = 0u128;
    for chart in 0..n {
        let free = n - 1 - chart;
        let count = q.pow(free as u32);
        for idx in 0..count {
            let mut coords = vec![field.zero(); n];
            coords[chart] = field.one();
            let mut rest = idx;
            for c in coords[chart + 1..].iter_mut() {
                *c = field.element(rest % q);
                rest /= q;
            }
            checked += 1;
            if partials.iter().all(|g| field.is_zero(&g.evaluate(&coords).unwrap())) {
                let pt = ProjectivePoint::new(&field, coords)?;
                return Ok(Ordinariness {
                    ordinary: false,
                    certificate: OrdinaryCertificate::Enumerated { field, points_checked: checked, common_zero: Some(pt) },
                });
            }
        }
    }
    Ok(Ordinariness {
        ordinary: true,
        certificate: OrdinaryCertificate::Enumerated { field, points_checked: checked, common_zero: None },
    })
}

/// Ordinariness of a singular point: the tangent cone must be a cone over a
/// smooth hypersurface one dimension down.
pub fn is_ordinary(
    spec: &HypersurfaceSpec,
    pt: &ProjectivePoint,
    limits: &SearchLimits,
) -> Result<Ordinariness, SingularityError> {
    let cone = tangent_cone(spec, pt)?;
    if cone.degree() < 2 {
        return Err(SingularityError::NotSingular);
    }
    cone_is_smooth(&cone, limits)
}

/// Moves the origin to `at`: substitutes `y_j + at_j` for `y_j`.
pub(crate) fn translate(g: &Polynomial, at: &[Scalar]) -> Result<Polynomial, SingularityError> {
    let field = g.field().clone();
    let n = g.nvars();
    let images: Vec<Polynomial> = (0..n)
        .map(|j| &Polynomial::var(&field, n, j) + &Polynomial::constant(&field, n, at[j].clone()))
        .collect();
    Ok(g.compose(&images)?)
}
