//! Singular points of projective hypersurfaces and their local invariants.

mod local;
mod search;

pub use local::{
    cone_is_smooth, is_ordinary, local_equation, local_quotient_dimension, milnor_number, multiplicity_at,
    tangent_cone, tjurina_number, CertificateKind, OrdinaryCertificate, Ordinariness,
};
pub use search::{projective_zeros, singular_points, SearchLimits, ZeroSearch};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::groebner::{GroebnerError, QuotientDimension};
use crate::poly::{rational_reconstruction, Field, PolyError, Polynomial, ProjectivePoint, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("the zero polynomial does not define a hypersurface")]
    ZeroPolynomial,
    #[error("the point does not lie on the hypersurface")]
    NotOnHypersurface,
    #[error("the point is not singular")]
    NotSingular,
    #[error("characteristic {p} divides the multiplicity {m}; rerun over another prime")]
    CharacteristicDividesMultiplicity { p: u64, m: u32 },
    #[error("point search needs a prime field, got {0}")]
    NeedsFiniteField(String),
    #[error("enumeration needs {needed} evaluations but the budget is {budget}")]
    EnumerationBudget { needed: u128, budget: u64 },
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("invalid search limits: {0}")]
    BadLimits(String),
}

impl SingularityError {
    /// Resource exhaustion, as opposed to a mathematical or input failure.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            SingularityError::Groebner(GroebnerError::BudgetExceeded { .. }) | SingularityError::EnumerationBudget { .. }
        )
    }
}

/// A hypersurface `V(f)` in `P^n`, `f` homogeneous of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceSpec {
    n: usize,
    d: u32,
    f: Polynomial,
}

impl HypersurfaceSpec {
    pub fn new(f: Polynomial) -> Result<Self, SingularityError> {
        if f.is_zero() {
            return Err(SingularityError::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(PolyError::NotHomogeneous.into());
        }
        if f.nvars() < 2 {
            return Err(PolyError::CoordinateCount { expected: 2, got: f.nvars() }.into());
        }
        Ok(HypersurfaceSpec { n: f.nvars() - 1, d: f.degree() as u32, f })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn poly(&self) -> &Polynomial {
        &self.f
    }

    pub fn field(&self) -> &Field {
        self.f.field()
    }

    /// The same hypersurface over `F_p`. Fails when a coefficient has a
    /// denominator divisible by `p` or when `f` vanishes mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<HypersurfaceSpec, SingularityError> {
        let fp = Field::prime(p)?;
        if self.field() == &fp {
            return Ok(self.clone());
        }
        let g = self.f.change_field(&fp).map_err(|e| SingularityError::BadPrime { p, reason: e.to_string() })?;
        if g.is_zero() {
            return Err(SingularityError::BadPrime { p, reason: "the polynomial vanishes mod p".into() });
        }
        HypersurfaceSpec::new(g)
    }

    /// True when `pt` is a singular point: `f` and every partial vanish.
    pub fn is_singular_at(&self, pt: &ProjectivePoint) -> Result<bool, SingularityError> {
        let (f, pt) = self.f.common_field_with(pt)?;
        let field = f.field().clone();
        let at = pt.coords();
        if !field.is_zero(&f.evaluate(at)?) {
            return Ok(false);
        }
        for g in f.gradient() {
            if !field.is_zero(&g.evaluate(at)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Working primes and search budgets for an analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub prime: u64,
    pub second_prime: u64,
    pub limits: SearchLimits,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { prime: 101, second_prime: 211, limits: SearchLimits::default() }
    }
}

/// Everything known about one singular point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPointReport {
    pub point: ProjectivePoint,
    pub multiplicity: u32,
    pub tangent_cone: Polynomial,
    pub ordinary: bool,
    pub certificate_kind: CertificateKind,
    /// A zero of all partials of the tangent cone (non-ordinary witness).
    pub cone_singular_point: Option<ProjectivePoint>,
    pub milnor: QuotientDimension,
    /// `(m-1)^n`, the Milnor number forced by an ordinary point.
    pub expected_milnor: Option<u64>,
    /// Rational point reducing to `point`, verified singular over Q.
    pub lifted: Option<ProjectivePoint>,
}

impl SingularPointReport {
    pub fn isolated(&self) -> bool {
        self.milnor != QuotientDimension::Infinite
    }
}

impl Serialize for SingularPointReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SingularPointReport", 11)?;
        st.serialize_field("point", &self.point.coord_strings())?;
        st.serialize_field("field", &self.point.field().to_string())?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.serialize_field("ordinary", &self.ordinary)?;
        st.serialize_field("certificate_kind", &self.certificate_kind)?;
        st.serialize_field("milnor", &self.milnor)?;
        st.serialize_field("tangent_cone", &self.tangent_cone.to_string())?;
        st.serialize_field("isolated", &self.isolated())?;
        st.serialize_field("expected_milnor", &self.expected_milnor)?;
        st.serialize_field("point_lifted", &self.lifted.as_ref().map(|p| p.coord_strings()))?;
        st.serialize_field("tangent_cone_singular_point", &self.cone_singular_point.as_ref().map(|p| p.coord_strings()))?;
        st.end()
    }
}

/// Singular points found over one prime, with their reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub prime: u64,
    pub e_max: usize,
    pub reports: Vec<SingularPointReport>,
    /// Length of the singular scheme, when it is finite.
    pub scheme_length: Option<u64>,
    /// True when the listed points exhaust the singular scheme over the
    /// algebraic closure; otherwise only points over `F_{p^e}`, `e <= e_max`
    /// are certified.
    pub complete: bool,
}

impl Analysis {
    pub fn points(&self) -> Vec<ProjectivePoint> {
        self.reports.iter().map(|r| r.point.clone()).collect()
    }

    fn profile(&self) -> Vec<(u32, bool, QuotientDimension)> {
        let mut v: Vec<_> = self.reports.iter().map(|r| (r.multiplicity, r.ordinary, r.milnor)).collect();
        v.sort_by_key(|(m, o, mu)| (*m, *o, mu.finite()));
        v
    }
}

impl Serialize for Analysis {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Analysis", 6)?;
        st.serialize_field("field", &format!("Fp:{}", self.prime))?;
        st.serialize_field("e_max", &self.e_max)?;
        st.serialize_field("complete", &self.complete)?;
        st.serialize_field("scheme_length", &self.scheme_length)?;
        let note = if self.complete {
            "all singular points over the algebraic closure are listed".to_string()
        } else {
            format!("only points rational over F_{{{}^e}}, e <= {}, are certified", self.prime, self.e_max)
        };
        st.serialize_field("certification", &note)?;
        st.serialize_field("points", &self.reports)?;
        st.end()
    }
}

/// Finds every singular point over `F_{p^e}`, `e <= e_max`, and certifies
/// multiplicity, tangent cone, ordinariness and Milnor number. A rational
/// hypersurface is reduced mod `prime`; a prime-field one is used as is.
pub fn analyze(spec: &HypersurfaceSpec, prime: u64, limits: &SearchLimits) -> Result<Analysis, SingularityError> {
    let working = match spec.field() {
        Field::Rational => spec.reduce_mod(prime)?,
        Field::Prime(_) => spec.clone(),
        other => return Err(SingularityError::NeedsFiniteField(other.to_string())),
    };
    let p = working.field().characteristic();
    let search = singular_points(&working, limits)?;
    let mut reports = Vec::with_capacity(search.points.len());
    for pt in &search.points {
        let local = local_equation(&working, pt)?;
        let m = local.min_degree().expect("nonzero local equation");
        let cone = local.homogeneous_component(m);
        let ord = cone_is_smooth(&cone, limits)?;
        let milnor = milnor_number(&local, limits.groebner_budget)?;
        let expected = ord.ordinary.then(|| ((m - 1) as u64).pow(spec.n() as u32));
        let lifted = if spec.field() == &Field::Rational { lift_point(spec, pt, p)? } else { None };
        reports.push(SingularPointReport {
            point: pt.clone(),
            multiplicity: m,
            tangent_cone: cone,
            ordinary: ord.ordinary,
            certificate_kind: ord.certificate_kind(),
            cone_singular_point: ord.common_zero().cloned(),
            milnor,
            expected_milnor: expected,
            lifted,
        });
    }
    Ok(Analysis { prime: p, e_max: limits.e_max, complete: search.complete(), scheme_length: search.scheme_length, reports })
}

/// Rational reconstruction of a prime-field point, kept only when the
/// result is singular on the rational hypersurface.
fn lift_point(spec: &HypersurfaceSpec, pt: &ProjectivePoint, p: u64) -> Result<Option<ProjectivePoint>, SingularityError> {
    let mut coords = Vec::new();
    for c in pt.coords() {
        match c {
            Scalar::Modular(v) => match rational_reconstruction(*v, p) {
                Some(q) => coords.push(q),
                None => return Ok(None),
            },
            _ => return Ok(None),
        }
    }
    let q = ProjectivePoint::from_rationals(&Field::Rational, &coords)?;
    Ok(spec.is_singular_at(&q)?.then_some(q))
}

/// Outcome of comparing analyses at two primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PrimeAgreement {
    Agree,
    /// The primes disagree on something both should see; one of them is
    /// likely a bad prime for this input.
    BadPrime { detail: String },
    /// Not comparable (e.g. a prime-field input, or an incomplete search).
    Inconclusive { detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoPrimeAnalysis {
    pub primary: Analysis,
    pub secondary: Option<Analysis>,
    pub agreement: PrimeAgreement,
}

/// Runs [`analyze`] at the working prime and, for rational input, again at
/// the second prime, then checks that the two runs tell the same story.
pub fn analyze_two_primes(spec: &HypersurfaceSpec, config: &AnalysisConfig) -> Result<TwoPrimeAnalysis, SingularityError> {
    if config.prime == config.second_prime {
        return Err(SingularityError::BadLimits("the two primes must differ".into()));
    }
    let primary = analyze(spec, config.prime, &config.limits)?;
    if spec.field() != &Field::Rational {
        return Ok(TwoPrimeAnalysis {
            primary,
            secondary: None,
            agreement: PrimeAgreement::Inconclusive { detail: "input is not defined over Q".into() },
        });
    }
    let secondary = match analyze(spec, config.second_prime, &config.limits) {
        Ok(a) => a,
        Err(SingularityError::BadPrime { p, reason }) => {
            return Ok(TwoPrimeAnalysis {
                primary,
                secondary: None,
                agreement: PrimeAgreement::BadPrime { detail: format!("prime {p}: {reason}") },
            })
        }
        // e.g. a singular locus that is a curve mod the second prime only
        Err(e) if e.is_budget() => {
            return Ok(TwoPrimeAnalysis {
                primary,
                secondary: None,
                agreement: PrimeAgreement::Inconclusive { detail: format!("prime {}: {e}", config.second_prime) },
            })
        }
        Err(e) => return Err(e),
    };
    let agreement = compare(&primary, &secondary)?;
    Ok(TwoPrimeAnalysis { primary, secondary: Some(secondary), agreement })
}

fn compare(a: &Analysis, b: &Analysis) -> Result<PrimeAgreement, SingularityError> {
    // rational points seen at one prime must reduce to points at the other
    for (x, y) in [(a, b), (b, a)] {
        let fy = Field::prime(y.prime)?;
        let ys = y.points();
        for r in &x.reports {
            if let Some(q) = &r.lifted {
                let red = q.change_field(&fy);
                if !matches!(&red, Ok(pt) if ys.contains(pt)) {
                    return Ok(PrimeAgreement::BadPrime {
                        detail: format!("rational singular point {q} found mod {} is missing mod {}", x.prime, y.prime),
                    });
                }
            }
        }
    }
    if !(a.complete && b.complete) {
        return Ok(PrimeAgreement::Inconclusive {
            detail: "some singular points lie outside the searched fields".into(),
        });
    }
    if a.profile() != b.profile() {
        return Ok(PrimeAgreement::BadPrime {
            detail: format!(
                "singularity profiles differ: {} points mod {} vs {} points mod {}",
                a.reports.len(),
                a.prime,
                b.reports.len(),
                b.prime
            ),
        });
    }
    Ok(PrimeAgreement::Agree)
}
