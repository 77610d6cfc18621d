//! Explicit hypersurfaces in `P^4` with prescribed singular points, each
//! checked against [`analyze`] before it is returned.
//!
//! "General" coefficients are integers drawn uniformly from `[-50, 50]`
//! without 0 by a seeded ChaCha stream. A draw that fails the check is
//! replaced by the next one from the same stream, so a result depends only
//! on its parameters and seed.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::criteria::{MultiplicityProfile, Position};
use crate::groebner::{groebner_basis, MonomialOrder};
use crate::poly::{monomials_of_degree, Field, Monomial, PolyError, Polynomial, ProjectivePoint};
use crate::singularity::{
    analyze, cone_is_smooth, Analysis, CertificateKind, HypersurfaceSpec, SearchLimits, SingularityError,
};

pub const COEFFICIENT_RANGE: i64 = 50;
pub const DEFAULT_RETRIES: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("the surface V(f_m) is not smooth: {0}")]
    NotSmooth(String),
    #[error("{family}: no verified draw after {attempts} attempts (seed {seed}); last failure: {last_failure}")]
    RetriesExhausted { family: &'static str, seed: u64, attempts: u32, last_failure: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
}

impl ConstructError {
    pub fn is_budget(&self) -> bool {
        matches!(self, ConstructError::Singularity(e) if e.is_budget())
    }
}

/// Primes and budgets for the verification step. A draw must pass at the
/// second prime too, so the default two-prime analysis agrees on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructConfig {
    pub prime: u64,
    pub second_prime: Option<u64>,
    pub limits: SearchLimits,
    pub max_retries: u32,
}

impl Default for ConstructConfig {
    fn default() -> Self {
        ConstructConfig { prime: 101, second_prime: Some(211), limits: SearchLimits::default(), max_retries: DEFAULT_RETRIES }
    }
}

/// Which family a hypersurface came from, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// `x_4^{d-m} f_m + x_4^{d-m-1} f_{m+1} + ... + f_d`.
    SinglePoint { d: u32, m: u32 },
    /// `x_0 F + x_1 G` built on a pencil of plane curves of degree `delta`.
    PlanePencil { t: u32, delta: u32 },
    /// Quartic with one non-ordinary double point.
    Kollar,
    /// Cone over a smooth surface; factorial iff the asserted `Pic = Z`.
    Cone { d: u32, pic_z_asserted: bool },
}

impl Family {
    pub fn cli_name(&self) -> &'static str {
        match self {
            Family::SinglePoint { .. } => "single-point",
            Family::PlanePencil { .. } => "plane-pencil",
            Family::Kollar => "kollar",
            Family::Cone { .. } => "cone",
        }
    }
}

/// A linear space `{x_i = 0, i in vars}` lying on the hypersurface, which
/// keeps it from being factorial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneWitness {
    pub vars: Vec<usize>,
}

impl fmt::Display for PlaneWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs: Vec<String> = self.vars.iter().map(|i| format!("x{i}")).collect();
        write!(f, "the plane {{{}=0}} lies on X", eqs.join("="))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionResult {
    pub family: Family,
    pub spec: HypersurfaceSpec,
    /// Exact rational singular points.
    pub expected_singular_points: Vec<ProjectivePoint>,
    pub expected_multiplicity: u32,
    pub expected_ordinary: bool,
    pub non_factorial_witness: Option<PlaneWitness>,
    pub seed: u64,
    /// Rejected draws before the accepted one.
    pub retries: u32,
    /// The analysis that accepted the draw.
    pub verification: Analysis,
}

impl ConstructionResult {
    pub fn degree(&self) -> u32 {
        self.spec.degree()
    }

    pub fn k(&self) -> usize {
        self.expected_singular_points.len()
    }

    /// The profile the criteria engine works with; `None` for a
    /// non-ordinary construction, which the criteria do not cover.
    pub fn profile(&self) -> Option<MultiplicityProfile> {
        if !self.expected_ordinary {
            return None;
        }
        let position = if self.non_factorial_witness.is_some() {
            Position::ContainedInPlane
        } else if self.k() == 1 {
            // a single point is in general position
            Position::General
        } else {
            Position::Unknown
        };
        let mults = vec![self.expected_multiplicity as u64; self.k()];
        MultiplicityProfile::threefold(self.degree() as u64, mults, position).ok()
    }

    /// Factoriality recorded by the construction itself: false with a plane
    /// witness, the asserted value for cones, unknown otherwise.
    pub fn recorded_factoriality(&self) -> Option<bool> {
        if self.non_factorial_witness.is_some() {
            return Some(false);
        }
        match self.family {
            Family::Cone { pic_z_asserted, .. } => Some(pic_z_asserted),
            _ => None,
        }
    }
}

impl Serialize for ConstructionResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ConstructionResult", 13)?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("nvars", &self.spec.poly().nvars())?;
        st.serialize_field("polynomial", &self.spec.poly().to_string())?;
        let pts: Vec<Vec<String>> = self.expected_singular_points.iter().map(|p| p.coord_strings()).collect();
        st.serialize_field("expected_singular_points", &pts)?;
        st.serialize_field("expected_multiplicity", &self.expected_multiplicity)?;
        st.serialize_field("expected_ordinary", &self.expected_ordinary)?;
        st.serialize_field("non_factorial_witness", &self.non_factorial_witness.as_ref().map(|w| w.to_string()))?;
        st.serialize_field("recorded_factoriality", &self.recorded_factoriality())?;
        if let Family::Cone { .. } = self.family {
            st.serialize_field("note", "factoriality follows the asserted Pic V = Z, which is not checked")?;
        }
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("retries", &self.retries)?;
        st.serialize_field("verification", &self.verification)?;
        st.end()
    }
}

fn coefficient(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.random_range(0..2 * COEFFICIENT_RANGE);
    if v < COEFFICIENT_RANGE {
        v - COEFFICIENT_RANGE
    } else {
        v - COEFFICIENT_RANGE + 1
    }
}

/// Dense form of the given degree in the listed variables, every
/// coefficient drawn.
fn random_form(rng: &mut ChaCha8Rng, nvars: usize, vars: &[usize], degree: u32) -> Polynomial {
    let q = Field::Rational;
    let terms = monomials_of_degree(vars.len(), degree).into_iter().map(|m| {
        let mut e = vec![0; nvars];
        for (&v, &x) in vars.iter().zip(m.exponents()) {
            e[v] = x;
        }
        (Monomial::new(e), q.from_i64(coefficient(rng)))
    });
    Polynomial::from_terms(&q, nvars, terms.collect::<Vec<_>>())
}

fn var(i: usize) -> Polynomial {
    Polynomial::var(&Field::Rational, 5, i)
}

fn scaled(p: &Polynomial, c: i64) -> Polynomial {
    p.scalar_mul(&Field::Rational.from_i64(c))
}

fn point(coords: [i64; 5]) -> ProjectivePoint {
    ProjectivePoint::from_ints(&Field::Rational, &coords).expect("nonzero point")
}

/// Whether the form in `x_0..x_{n-1}` defines a smooth hypersurface. The
/// check runs mod the working prime first, since a smooth reduction forces
/// smoothness over Q, and over Q only when that is inconclusive.
fn is_smooth_form(g: &Polynomial, cfg: &ConstructConfig) -> Result<bool, ConstructError> {
    let m = g.degree() as u64;
    if m % cfg.prime != 0 {
        let reduced = g.change_field(&Field::prime(cfg.prime)?)?;
        if reduced.degree() as u64 == m {
            match cone_is_smooth(&reduced, &cfg.limits) {
                Ok(o) if o.ordinary && o.certificate_kind() == CertificateKind::ExactGroebner => return Ok(true),
                Ok(_) => {}
                Err(e) if e.is_budget() => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    let basis = groebner_basis(&g.gradient(), MonomialOrder::Grevlex, cfg.limits.groebner_budget)
        .map_err(SingularityError::from)?;
    Ok(basis.is_irrelevant())
}

/// Closed-loop check of one draw. `Ok(Err(reason))` rejects the draw;
/// running out of budget is reported as an error instead.
fn verify(
    spec: &HypersurfaceSpec,
    expected: &[ProjectivePoint],
    m: u32,
    ordinary: bool,
    cfg: &ConstructConfig,
) -> Result<Result<Analysis, String>, ConstructError> {
    for pt in expected {
        if !spec.is_singular_at(pt)? {
            return Ok(Err(format!("{pt} is not singular over Q")));
        }
    }
    let analysis = match verify_at(spec, expected, m, ordinary, cfg.prime, cfg)? {
        Ok(a) => a,
        Err(reason) => return Ok(Err(reason)),
    };
    if let Some(q) = cfg.second_prime {
        if let Err(reason) = verify_at(spec, expected, m, ordinary, q, cfg)? {
            return Ok(Err(format!("mod {q}: {reason}")));
        }
    }
    Ok(Ok(analysis))
}

fn verify_at(
    spec: &HypersurfaceSpec,
    expected: &[ProjectivePoint],
    m: u32,
    ordinary: bool,
    prime: u64,
    cfg: &ConstructConfig,
) -> Result<Result<Analysis, String>, ConstructError> {
    let analysis = match analyze(spec, prime, &cfg.limits) {
        Ok(a) => a,
        // enumeration is only attempted on a positive-dimensional singular
        // locus, which rules the draw out
        Err(e @ SingularityError::EnumerationBudget { .. }) => return Ok(Err(e.to_string())),
        Err(e) if e.is_budget() => return Err(e.into()),
        Err(e) => return Ok(Err(e.to_string())),
    };
    if !analysis.complete {
        return Ok(Err("singular scheme not exhausted by the points found".into()));
    }
    let fp = Field::prime(analysis.prime)?;
    let want: BTreeSet<ProjectivePoint> = expected.iter().map(|p| p.change_field(&fp)).collect::<Result<_, _>>()?;
    if want.len() != expected.len() {
        return Ok(Err(format!("expected points collide mod {}", analysis.prime)));
    }
    let got: BTreeSet<ProjectivePoint> = analysis.points().into_iter().collect();
    if got != want {
        return Ok(Err(format!("found {} singular points, expected {}", got.len(), want.len())));
    }
    for r in &analysis.reports {
        if r.multiplicity != m {
            return Ok(Err(format!("multiplicity {} at {}", r.multiplicity, r.point)));
        }
        if !r.isolated() {
            return Ok(Err(format!("non-isolated singularity at {}", r.point)));
        }
        if r.ordinary != ordinary {
            return Ok(Err(format!("ordinary = {} at {}", r.ordinary, r.point)));
        }
        if ordinary && r.certificate_kind != CertificateKind::ExactGroebner {
            return Ok(Err(format!("ordinariness at {} is not certified exactly", r.point)));
        }
    }
    Ok(Ok(analysis))
}

struct Draw {
    f: Polynomial,
    points: Vec<ProjectivePoint>,
}

struct Target {
    family: Family,
    multiplicity: u32,
    ordinary: bool,
    witness: Option<PlaneWitness>,
}

/// Draws until one passes [`verify`].
fn retry_loop(
    name: &'static str,
    target: Target,
    seed: u64,
    cfg: &ConstructConfig,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Result<Draw, String>,
) -> Result<ConstructionResult, ConstructError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::from("no attempt made");
    let attempts = cfg.max_retries.max(1);
    for attempt in 0..attempts {
        let d = match draw(&mut rng) {
            Ok(d) => d,
            Err(reason) => {
                last = reason;
                continue;
            }
        };
        if let Some(w) = &target.witness {
            if !d.f.in_coordinate_ideal(&w.vars) {
                return Err(ConstructError::InvalidParameters(format!("{name}: witness plane not contained")));
            }
        }
        let spec = HypersurfaceSpec::new(d.f)?;
        match verify(&spec, &d.points, target.multiplicity, target.ordinary, cfg)? {
            Ok(verification) => {
                return Ok(ConstructionResult {
                    family: target.family,
                    spec,
                    expected_singular_points: d.points,
                    expected_multiplicity: target.multiplicity,
                    expected_ordinary: target.ordinary,
                    non_factorial_witness: target.witness,
                    seed,
                    retries: attempt,
                    verification,
                })
            }
            Err(reason) => last = reason,
        }
    }
    Err(ConstructError::RetriesExhausted { family: name, seed, attempts, last_failure: last })
}

/// `f = Σ_{j=m}^{d} x_4^{d-j} f_j` with `f_m` given (default the Fermat
/// form `Σ x_i^m`) and random dense forms `f_j` in `x_0..x_3`: a unique
/// singular point `[0:0:0:0:1]`, ordinary of multiplicity `m`.
pub fn single_point_family(
    d: u32,
    m: u32,
    f_m: Option<&Polynomial>,
    seed: u64,
    cfg: &ConstructConfig,
) -> Result<ConstructionResult, ConstructError> {
    if m < 2 || m >= d {
        return Err(ConstructError::InvalidParameters(format!("need 2 <= m < d, got d={d}, m={m}")));
    }
    let f_m = match f_m {
        Some(g) => {
            if g.field() != &Field::Rational || g.nvars() != 4 || !g.is_homogeneous() || g.degree() != m as i64 {
                return Err(ConstructError::InvalidParameters(format!(
                    "f_m must be a nonzero rational form of degree {m} in x0..x3"
                )));
            }
            g.clone()
        }
        None => fermat(4, m),
    };
    if !is_smooth_form(&f_m, cfg)? {
        return Err(ConstructError::NotSmooth(f_m.to_string()));
    }
    let lead = f_m.extend_vars(5);
    let x4 = var(4);
    let target = Target { family: Family::SinglePoint { d, m }, multiplicity: m, ordinary: true, witness: None };
    retry_loop("single-point", target, seed, cfg, |rng| {
        let mut f = &lead * &x4.pow(d - m);
        for j in m + 1..=d {
            f = &f + &(&random_form(rng, 5, &[0, 1, 2, 3], j) * &x4.pow(d - j));
        }
        Ok(Draw { f, points: vec![point([0, 0, 0, 0, 1])] })
    })
}

/// `Σ x_i^m` in `nvars` variables over Q.
pub fn fermat(nvars: usize, m: u32) -> Polynomial {
    let q = Field::Rational;
    Polynomial::from_terms(&q, nvars, (0..nvars).map(|i| (Monomial::var(nvars, i, m), q.one())))
}

/// Two spanning members of a pencil of plane curves of degree `delta` in
/// `x_2, x_3, x_4` and its `delta^2` base points.
fn pencil(rng: &mut ChaCha8Rng, delta: u32) -> Result<(Polynomial, Polynomial, Vec<ProjectivePoint>), String> {
    match delta {
        1 => Ok((var(3), var(4), vec![point([0, 0, 1, 0, 0])])),
        2 => {
            // conics through the frame [1:0:0], [0:1:0], [0:0:1], [1:1:1]
            let p = &(&var(2) * &var(3)) - &(&var(2) * &var(4));
            let q = &(&var(2) * &var(4)) - &(&var(3) * &var(4));
            let pts = [[0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 1, 1, 1]];
            Ok((p, q, pts.into_iter().map(point).collect()))
        }
        _ => {
            // products of lines, so every base point is rational
            let draw_line = |rng: &mut ChaCha8Rng| [coefficient(rng), coefficient(rng), coefficient(rng)];
            let ls: Vec<[i64; 3]> = (0..delta).map(|_| draw_line(rng)).collect();
            let ms: Vec<[i64; 3]> = (0..delta).map(|_| draw_line(rng)).collect();
            let as_poly = |l: &[i64; 3]| &(&scaled(&var(2), l[0]) + &scaled(&var(3), l[1])) + &scaled(&var(4), l[2]);
            let product = |ls: &[[i64; 3]]| ls.iter().fold(Polynomial::one(&Field::Rational, 5), |acc, l| &acc * &as_poly(l));
            let mut pts = BTreeSet::new();
            for a in &ls {
                for b in &ms {
                    let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
                    if c == [0, 0, 0] {
                        return Err("pencil lines coincide".into());
                    }
                    pts.insert(point([0, 0, c[0], c[1], c[2]]));
                }
            }
            if pts.len() != (delta * delta) as usize {
                return Err(format!("pencil has {} base points, expected {}", pts.len(), delta * delta));
            }
            Ok((product(&ls), product(&ms), pts.into_iter().collect()))
        }
    }
}

/// `2t` pencil parameters `[λ:μ]`, pairwise distinct.
fn pencil_parameters(rng: &mut ChaCha8Rng, count: usize) -> Vec<(i64, i64)> {
    loop {
        let params: Vec<(i64, i64)> = (0..count).map(|_| (coefficient(rng), coefficient(rng))).collect();
        let distinct =
            (0..count).all(|i| (i + 1..count).all(|j| params[i].0 * params[j].1 != params[j].0 * params[i].1));
        if distinct {
            return params;
        }
    }
}

/// `Π_i F_i + Σ_{j=t}^{δt} Σ_{α+β+γ=δt-j} Φ^j_{αβγ}(x_0,x_1) x_2^α x_3^β x_4^γ`
/// with `F_i = λ_i P + μ_i Q` and random binary forms `Φ^j` of degree `j`.
fn pencil_side(
    rng: &mut ChaCha8Rng,
    p: &Polynomial,
    q: &Polynomial,
    params: &[(i64, i64)],
    t: u32,
    delta: u32,
) -> Polynomial {
    let mut side = params.iter().fold(Polynomial::one(&Field::Rational, 5), |acc, (l, m)| {
        &acc * &(&scaled(p, *l) + &scaled(q, *m))
    });
    for j in t..=delta * t {
        for mono in monomials_of_degree(3, delta * t - j) {
            let e = mono.exponents();
            let plane = Polynomial::monomial(&Field::Rational, Field::Rational.one(), Monomial::new(vec![0, 0, e[0], e[1], e[2]]));
            side = &side + &(&random_form(rng, 5, &[0, 1], j) * &plane);
        }
    }
    side
}

/// `f = x_0 F + x_1 G` of degree `δt + 1`, singular exactly at the `δ^2`
/// base points of a pencil of degree-`δ` curves in the plane
/// `{x_0 = x_1 = 0}`, each an ordinary `(t+1)`-fold point. The plane lies
/// on the hypersurface.
pub fn plane_pencil_family(t: u32, delta: u32, seed: u64, cfg: &ConstructConfig) -> Result<ConstructionResult, ConstructError> {
    if t == 0 || delta == 0 {
        return Err(ConstructError::InvalidParameters(format!("need t, delta >= 1, got t={t}, delta={delta}")));
    }
    let target = Target {
        family: Family::PlanePencil { t, delta },
        multiplicity: t + 1,
        ordinary: true,
        witness: Some(PlaneWitness { vars: vec![0, 1] }),
    };
    retry_loop("plane-pencil", target, seed, cfg, |rng| {
        let (p, q, points) = pencil(rng, delta)?;
        let params = pencil_parameters(rng, 2 * t as usize);
        let (fs, gs) = params.split_at(t as usize);
        let big_f = pencil_side(rng, &p, &q, fs, t, delta);
        let big_g = pencil_side(rng, &p, &q, gs, t, delta);
        let f = &(&var(0) * &big_f) + &(&var(1) * &big_g);
        Ok(Draw { f, points })
    })
}

/// A general member of the span of `x_0^4, x_1^4, (x_4^2 x_3 + x_2^3) x_0,
/// x_3^3 x_1, x_4^2 x_1^2`: one double point `[0:0:0:0:1]` whose tangent
/// cone is a cone over a singular quadric, so it is not ordinary.
pub fn kollar_quartic(seed: u64, cfg: &ConstructConfig) -> Result<ConstructionResult, ConstructError> {
    let target = Target {
        family: Family::Kollar,
        multiplicity: 2,
        ordinary: false,
        witness: Some(PlaneWitness { vars: vec![0, 1] }),
    };
    let x = |i| var(i);
    let span = [
        x(0).pow(4),
        x(1).pow(4),
        &(&(&x(4).pow(2) * &x(3)) + &x(2).pow(3)) * &x(0),
        &x(3).pow(3) * &x(1),
        &x(4).pow(2) * &x(1).pow(2),
    ];
    retry_loop("kollar", target, seed, cfg, |rng| {
        let f = span.iter().fold(Polynomial::zero(&Field::Rational, 5), |acc, g| &acc + &scaled(g, coefficient(rng)));
        Ok(Draw { f, points: vec![point([0, 0, 0, 0, 1])] })
    })
}

/// The form `g(x_0..x_3)` read in `P^4`: a cone with vertex `[0:0:0:0:1]`
/// of multiplicity `deg g`, ordinary because `V(g)` is smooth. Whether it
/// is factorial is recorded from `pic_z_asserted` and not checked.
pub fn cone_over_surface(g: &Polynomial, pic_z_asserted: bool, cfg: &ConstructConfig) -> Result<ConstructionResult, ConstructError> {
    if g.field() != &Field::Rational || g.nvars() != 4 || g.is_zero() || !g.is_homogeneous() || g.degree() < 2 {
        return Err(ConstructError::InvalidParameters("g must be a rational form of degree >= 2 in x0..x3".into()));
    }
    if !is_smooth_form(g, cfg)? {
        return Err(ConstructError::NotSmooth(g.to_string()));
    }
    let d = g.degree() as u32;
    let f = g.extend_vars(5);
    let target =
        Target { family: Family::Cone { d, pic_z_asserted }, multiplicity: d, ordinary: true, witness: None };
    let cfg = ConstructConfig { max_retries: 1, ..cfg.clone() };
    retry_loop("cone", target, 0, &cfg, |_| Ok(Draw { f: f.clone(), points: vec![point([0, 0, 0, 0, 1])] }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{decide, strict_transform_class};
    use crate::invariants::intersection_number;
    use crate::poly::parse_polynomial;
    use crate::groebner::QuotientDimension;

    fn cfg() -> ConstructConfig {
        ConstructConfig::default()
    }

    #[test]
    fn coefficients_avoid_zero_and_stay_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let draws: Vec<i64> = (0..5000).map(|_| coefficient(&mut rng)).collect();
        assert!(draws.iter().all(|v| *v != 0 && v.abs() <= 50));
        assert!(draws.contains(&-50) && draws.contains(&50) && draws.contains(&1) && draws.contains(&-1));
    }

    #[test]
    fn single_point_quartic_node() {
        let r = single_point_family(4, 2, None, 0, &cfg()).unwrap();
        assert_eq!(r.degree(), 4);
        assert_eq!(r.verification.reports.len(), 1);
        let rep = &r.verification.reports[0];
        assert_eq!(rep.multiplicity, 2);
        assert!(rep.ordinary);
        assert_eq!(rep.milnor, QuotientDimension::Finite(1));
        // the chart x4 = 1 starts with f_m
        let local = r.spec.poly().translate_and_dehomogenize(&r.expected_singular_points[0]).unwrap();
        assert_eq!(local.homogeneous_component(2), fermat(4, 2));
        assert_eq!(r.profile().unwrap().position, Position::General);
        assert!(decide(&r.profile().unwrap()).verdict.is_factorial());
    }

    #[test]
    fn single_point_minimal_degree_with_given_form() {
        let g = parse_polynomial("x0^3 + x1^3 + x2^3 + x3^3 + x0*x1*x2", 4, &Field::Rational).unwrap();
        let r = single_point_family(4, 3, Some(&g), 5, &cfg()).unwrap();
        let local = r.spec.poly().translate_and_dehomogenize(&r.expected_singular_points[0]).unwrap();
        assert_eq!(local.homogeneous_component(3), g);
        assert_eq!(r.verification.reports[0].milnor, QuotientDimension::Finite(16));
    }

    #[test]
    fn single_point_rejects_bad_input() {
        assert!(matches!(single_point_family(3, 3, None, 0, &cfg()), Err(ConstructError::InvalidParameters(_))));
        let cone = parse_polynomial("x0^2 + x1^2 + x2^2", 4, &Field::Rational).unwrap();
        assert!(matches!(single_point_family(4, 2, Some(&cone), 0, &cfg()), Err(ConstructError::NotSmooth(_))));
    }

    #[test]
    fn deterministic_per_seed() {
        let a = kollar_quartic(3, &cfg()).unwrap();
        let b = kollar_quartic(3, &cfg()).unwrap();
        assert_eq!(a.spec, b.spec);
        let c = kollar_quartic(4, &cfg()).unwrap();
        assert_ne!(a.spec, c.spec);
    }

    #[test]
    fn kollar_is_a_negative_control() {
        let r = kollar_quartic(0, &cfg()).unwrap();
        assert!(r.spec.poly().in_coordinate_ideal(&[0, 1]));
        let rep = &r.verification.reports[0];
        assert_eq!(rep.multiplicity, 2);
        assert!(!rep.ordinary);
        assert!(rep.cone_singular_point.is_some());
        assert!(r.profile().is_none());
        assert_eq!(r.recorded_factoriality(), Some(false));
    }

    #[test]
    fn pencil_cubic_with_four_nodes() {
        let r = plane_pencil_family(1, 2, 0, &cfg()).unwrap();
        assert_eq!((r.degree(), r.k(), r.expected_multiplicity), (3, 4, 2));
        assert!(r.spec.poly().in_coordinate_ideal(&[0, 1]));
        assert!(r.verification.reports.iter().all(|x| x.ordinary && x.milnor == QuotientDimension::Finite(1)));
        assert!(!decide(&r.profile().unwrap()).verdict.is_factorial());
    }

    #[test]
    fn pencil_cubic_with_triple_point() {
        let r = plane_pencil_family(2, 1, 0, &cfg()).unwrap();
        assert_eq!((r.degree(), r.k(), r.expected_multiplicity), (3, 1, 3));
        assert_eq!(r.verification.reports[0].milnor, QuotientDimension::Finite(16));
    }

    #[test]
    fn pencil_of_cubics_has_nine_rational_base_points() {
        let r = plane_pencil_family(1, 3, 2, &cfg()).unwrap();
        assert_eq!((r.degree(), r.k()), (4, 9));
        assert!(r.expected_singular_points.iter().all(|p| p.field() == &Field::Rational));
    }

    #[test]
    fn cone_over_fermat_quartic() {
        let r = cone_over_surface(&fermat(4, 4), true, &cfg()).unwrap();
        let rep = &r.verification.reports[0];
        assert_eq!((rep.multiplicity, rep.ordinary), (4, true));
        assert_eq!(rep.milnor, QuotientDimension::Finite(81));
        let cls = strict_transform_class(&r.profile().unwrap());
        assert_eq!((cls.a, cls.bs.clone()), (4, vec![4]));
        assert_eq!(intersection_number(&cls), 0.into());
        assert_eq!(r.recorded_factoriality(), Some(true));
        let smooth_fails = parse_polynomial("x0^4 + x1^4", 4, &Field::Rational).unwrap();
        assert!(matches!(cone_over_surface(&smooth_fails, true, &cfg()), Err(ConstructError::NotSmooth(_))));
    }

    #[test]
    fn sidecar_json_shape() {
        let r = plane_pencil_family(1, 1, 0, &cfg()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["family"]["family"], "plane-pencil");
        assert_eq!(v["expected_multiplicity"], 2);
        assert_eq!(v["recorded_factoriality"], false);
        assert!(v["non_factorial_witness"].as_str().unwrap().contains("x0=x1=0"));
    }
}
