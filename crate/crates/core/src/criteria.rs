//! Numeric factoriality, existence and ampleness criteria for threefolds
//! with ordinary multiple points, and the verdict procedure combining them.
//!
//! All arithmetic is exact integer arithmetic. Powers that overflow `u128`
//! are treated as larger than any `u64` count, which is exact.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("{criterion} is not defined here: {reason}")]
    OutOfRange { criterion: &'static str, reason: String },
}

/// Where the singular points sit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Position {
    /// General position in the sense needed by the ampleness results.
    General,
    /// All points lie on a plane contained in the threefold.
    ContainedInPlane,
    Unknown,
}

impl FromStr for Position {
    type Err = CriteriaError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general" => Ok(Position::General),
            "plane" | "contained-in-plane" => Ok(Position::ContainedInPlane),
            "unknown" => Ok(Position::Unknown),
            other => Err(CriteriaError::InvalidProfile(format!("unknown position '{other}'"))),
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Position::General => "general",
            Position::ContainedInPlane => "plane",
            Position::Unknown => "unknown",
        })
    }
}

/// Degree, multiplicities and position of the singular points of a
/// hypersurface in `P^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityProfile {
    pub n: u32,
    pub d: u64,
    pub mults: Vec<u64>,
    pub position: Position,
}

impl MultiplicityProfile {
    pub fn new(n: u32, d: u64, mults: Vec<u64>, position: Position) -> Result<Self, CriteriaError> {
        if d < 1 {
            return Err(CriteriaError::InvalidProfile("degree must be at least 1".into()));
        }
        if let Some(m) = mults.iter().find(|m| **m < 2) {
            return Err(CriteriaError::InvalidProfile(format!("multiplicity {m} is below 2")));
        }
        if position == Position::ContainedInPlane && n != 4 {
            return Err(CriteriaError::InvalidProfile("plane containment is only meaningful in P^4".into()));
        }
        Ok(MultiplicityProfile { n, d, mults, position })
    }

    /// Threefold in `P^4`.
    pub fn threefold(d: u64, mults: Vec<u64>, position: Position) -> Result<Self, CriteriaError> {
        Self::new(4, d, mults, position)
    }

    pub fn k(&self) -> u64 {
        self.mults.len() as u64
    }

    /// The common multiplicity, when there is at least one point and all
    /// multiplicities agree.
    pub fn uniform(&self) -> Option<u64> {
        let first = *self.mults.first()?;
        self.mults.iter().all(|m| *m == first).then_some(first)
    }
}

fn pow_exceeds(base: u64, exp: u32, k: u64) -> bool {
    match (base as u128).checked_pow(exp) {
        Some(v) => v > k as u128,
        None => true,
    }
}

fn pow_value(base: u64, exp: u32) -> String {
    match (base as u128).checked_pow(exp) {
        Some(v) => v.to_string(),
        None => format!("{base}^{exp}"),
    }
}

/// Few points: `Σ m_i < d`.
pub fn few_points(profile: &MultiplicityProfile) -> bool {
    profile.mults.iter().map(|m| *m as u128).sum::<u128>() < profile.d as u128
}

fn check_dmk(criterion: &'static str, d: u64, m: u64, k: u64) -> Result<(), CriteriaError> {
    if m < 1 || d < m {
        return Err(CriteriaError::OutOfRange { criterion, reason: format!("needs d >= m >= 1, got d={d}, m={m}") });
    }
    if k < 1 {
        return Err(CriteriaError::OutOfRange { criterion, reason: "needs at least one point".into() });
    }
    Ok(())
}

/// Existence of a degree-`d` hypersurface with `k` ordinary `m`-fold points
/// in general position: `floor((d+5)/(m+4))^4 > k`.
pub fn general_points_existence(d: u64, m: u64, k: u64) -> Result<bool, CriteriaError> {
    check_dmk("general_points_existence", d, m, k)?;
    Ok(pow_exceeds((d + 5) / (m + 4), 4, k))
}

/// Factoriality of such hypersurfaces:
/// `min(floor((d+5)/(m+4))^4, floor(d/m)^4) > k`.
pub fn general_points_factorial(d: u64, m: u64, k: u64) -> Result<bool, CriteriaError> {
    check_dmk("general_points_factorial", d, m, k)?;
    Ok(pow_exceeds((d + 5) / (m + 4), 4, k) && pow_exceeds(d / m, 4, k))
}

/// `4d >= 5m` together with the existence condition.
pub fn uniform_bound(d: u64, m: u64, k: u64) -> Result<bool, CriteriaError> {
    check_dmk("uniform_bound", d, m, k)?;
    Ok(4 * d as u128 >= 5 * m as u128 && general_points_existence(d, m, k)?)
}

/// Outcome of the nodal criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodalOutcome {
    Factorial,
    NonFactorial,
    Unknown,
}

/// Nodal threefolds: fewer than `(d-1)^2` nodes always give factoriality;
/// exactly `(d-1)^2` give factoriality iff the nodes are not on a plane.
pub fn nodal(d: u64, k: u64, position: Position) -> NodalOutcome {
    let bound = (d as u128 - 1).pow(2);
    let k = k as u128;
    if k < bound {
        NodalOutcome::Factorial
    } else if k == bound {
        match position {
            Position::General => NodalOutcome::Factorial,
            Position::ContainedInPlane => NodalOutcome::NonFactorial,
            Position::Unknown => NodalOutcome::Unknown,
        }
    } else {
        NodalOutcome::Unknown
    }
}

/// `Σ (m_i - 1)^2 < (d - 1)^2`, the conjectured sufficient condition.
pub fn sum_of_squares_bound(profile: &MultiplicityProfile) -> bool {
    let lhs: u128 = profile.mults.iter().map(|m| (*m as u128 - 1).pow(2)).sum();
    lhs < (profile.d as u128 - 1).pow(2)
}

/// `dH - ΣE_i` on the blow-up of `P^n` at `k` general points is ample iff
/// `d^n > k`.
pub fn ample_at_general_points(n: u32, d: u64, k: u64) -> Result<bool, CriteriaError> {
    let criterion = "ample_at_general_points";
    if n < 2 {
        return Err(CriteriaError::OutOfRange { criterion, reason: "needs n >= 2".into() });
    }
    if d < 2 || (n == 2 && d < 3) {
        return Err(CriteriaError::OutOfRange { criterion, reason: "needs d >= 2, and d >= 3 when n = 2".into() });
    }
    if k < 1 {
        return Err(CriteriaError::OutOfRange { criterion, reason: "needs at least one point".into() });
    }
    Ok(pow_exceeds(d, n, k))
}

/// Sufficient condition for `aH - bΣE_i` to be ample at `k` general points:
/// `floor(a/b)^n > k`.
pub fn scaled_ample(n: u32, a: u64, b: u64, k: u64) -> Result<bool, CriteriaError> {
    if a < 1 || b < 1 {
        return Err(CriteriaError::OutOfRange { criterion: "scaled_ample", reason: "needs a, b >= 1".into() });
    }
    Ok(pow_exceeds(a / b, n, k))
}

/// The class `aH - Σ b_i E_i` on the blow-up of `P^n` at points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupClass {
    pub n: u32,
    pub a: i64,
    pub bs: Vec<i64>,
}

/// Class of the strict transform: `dH - Σ m_i E_i`.
pub fn strict_transform_class(profile: &MultiplicityProfile) -> BlowupClass {
    BlowupClass { n: profile.n, a: profile.d as i64, bs: profile.mults.iter().map(|m| *m as i64).collect() }
}

/// Why a profile is factorial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// No singular points: smooth, so Lefschetz gives Pic = Z.
    Smooth,
    FewPoints,
    Nodal,
    /// The strict transform is ample in the blow-up.
    AmpleStrictTransform,
    GeneralPointsFactorial,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::Smooth => "smooth",
            Reason::FewPoints => "few_points",
            Reason::Nodal => "nodal",
            Reason::AmpleStrictTransform => "ample_strict_transform",
            Reason::GeneralPointsFactorial => "general_points_factorial",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Factorial { reason: Reason },
    NonFactorial { witness: String },
    /// Only the conjectured bound holds; this is not a proof.
    ConjecturallyFactorial,
    Unknown,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Factorial { .. } => "Factorial",
            Verdict::NonFactorial { .. } => "NonFactorial",
            Verdict::ConjecturallyFactorial => "ConjecturallyFactorial",
            Verdict::Unknown => "Unknown",
        }
    }

    pub fn is_factorial(&self) -> bool {
        matches!(self, Verdict::Factorial { .. })
    }

    /// Strength of the factoriality claim, for monotonicity checks.
    pub fn strength(&self) -> u8 {
        match self {
            Verdict::NonFactorial { .. } => 0,
            Verdict::Unknown => 1,
            Verdict::ConjecturallyFactorial => 2,
            Verdict::Factorial { .. } => 3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Factorial { reason } => write!(f, "Factorial({reason})"),
            Verdict::NonFactorial { witness } => write!(f, "NonFactorial({witness})"),
            other => f.write_str(other.name()),
        }
    }
}

/// One row of the criteria table. `value` is `None` when the criterion's
/// hypotheses do not apply to the profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub name: &'static str,
    pub hypothesis_text: String,
    pub value: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub criteria: Vec<CriterionResult>,
}

impl Decision {
    pub fn criterion(&self, name: &str) -> Option<&CriterionResult> {
        self.criteria.iter().find(|c| c.name == name)
    }
}

impl Serialize for Decision {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Decision", 3)?;
        st.serialize_field("verdict", self.verdict.name())?;
        let reason = match &self.verdict {
            Verdict::Factorial { reason } => Some(reason.to_string()),
            Verdict::NonFactorial { witness } => Some(witness.clone()),
            _ => None,
        };
        st.serialize_field("reason", &reason)?;
        st.serialize_field("criteria", &self.criteria)?;
        st.end()
    }
}

pub const PLANE_WITNESS: &str = "the nodes lie on a plane contained in X";

/// Evaluates every criterion and returns the first decisive verdict, in
/// this order: smooth, few points, nodal (all m_i = 2), ample strict
/// transform (general position, uniform multiplicity), general-points
/// factoriality (general position), the sum-of-squares bound (conjectural
/// only), otherwise unknown.
pub fn decide(profile: &MultiplicityProfile) -> Decision {
    let (n, d, k) = (profile.n, profile.d, profile.k());
    let general = profile.position == Position::General;
    let uniform = profile.uniform();
    let mut criteria = Vec::new();
    let mut verdict: Option<Verdict> = None;
    let settle = |v: Verdict, verdict: &mut Option<Verdict>| {
        if verdict.is_none() {
            *verdict = Some(v);
        }
    };

    criteria.push(CriterionResult { name: "smooth", hypothesis_text: format!("k = {k} singular points"), value: Some(k == 0) });
    if k == 0 {
        settle(Verdict::Factorial { reason: Reason::Smooth }, &mut verdict);
    }

    let sum: u128 = profile.mults.iter().map(|m| *m as u128).sum();
    let few = few_points(profile);
    criteria.push(CriterionResult {
        name: "few_points",
        hypothesis_text: format!("sum of multiplicities {sum} < d = {d}"),
        value: Some(few),
    });
    if few {
        settle(Verdict::Factorial { reason: Reason::FewPoints }, &mut verdict);
    }

    let all_nodes = k > 0 && profile.mults.iter().all(|m| *m == 2);
    let bound = (d as u128 - 1).pow(2);
    if all_nodes {
        let outcome = nodal(d, k, profile.position);
        criteria.push(CriterionResult {
            name: "nodal",
            hypothesis_text: format!("k = {k} nodes vs (d-1)^2 = {bound}, position {}: {outcome:?}", profile.position),
            value: Some(outcome == NodalOutcome::Factorial),
        });
        match outcome {
            NodalOutcome::Factorial => settle(Verdict::Factorial { reason: Reason::Nodal }, &mut verdict),
            NodalOutcome::NonFactorial => {
                settle(Verdict::NonFactorial { witness: PLANE_WITNESS.into() }, &mut verdict)
            }
            NodalOutcome::Unknown => {}
        }
    } else {
        criteria.push(CriterionResult {
            name: "nodal",
            hypothesis_text: "needs at least one point, all of multiplicity 2".into(),
            value: None,
        });
    }

    match uniform {
        Some(m) => {
            let ample = scaled_ample(n, d, m, k).unwrap_or(false);
            criteria.push(CriterionResult {
                name: "ample_strict_transform",
                hypothesis_text: format!(
                    "floor(d/m)^n = floor({d}/{m})^{n} = {} > k = {k}, needs general position (position {})",
                    pow_value(d / m, n),
                    profile.position
                ),
                value: Some(ample && general),
            });
            if ample && general {
                settle(Verdict::Factorial { reason: Reason::AmpleStrictTransform }, &mut verdict);
            }

            let rows: [(&'static str, Result<bool, CriteriaError>, String); 3] = [
                (
                    "general_points_existence",
                    general_points_existence(d, m, k),
                    format!("floor((d+5)/(m+4))^4 = {} > k = {k}", pow_value((d + 5) / (m + 4), 4)),
                ),
                (
                    "general_points_factorial",
                    general_points_factorial(d, m, k),
                    format!(
                        "min(floor((d+5)/(m+4))^4, floor(d/m)^4) = min({}, {}) > k = {k}, needs general position",
                        pow_value((d + 5) / (m + 4), 4),
                        pow_value(d / m, 4)
                    ),
                ),
                ("uniform_bound", uniform_bound(d, m, k), format!("4d = {} >= 5m = {} and existence holds", 4 * d as u128, 5 * m as u128)),
            ];
            for (name, value, text) in rows {
                let (value, text) = match value {
                    Ok(v) => (Some(if name == "general_points_factorial" { v && general } else { v }), text),
                    Err(e) => (None, e.to_string()),
                };
                if name == "general_points_factorial" && value == Some(true) {
                    settle(Verdict::Factorial { reason: Reason::GeneralPointsFactorial }, &mut verdict);
                }
                criteria.push(CriterionResult { name, hypothesis_text: text, value });
            }
        }
        None => {
            for name in ["ample_strict_transform", "general_points_existence", "general_points_factorial", "uniform_bound"] {
                criteria.push(CriterionResult {
                    name,
                    hypothesis_text: "needs at least one point, all of the same multiplicity".into(),
                    value: None,
                });
            }
        }
    }

    let squares: u128 = profile.mults.iter().map(|m| (*m as u128 - 1).pow(2)).sum();
    let sos = sum_of_squares_bound(profile);
    criteria.push(CriterionResult {
        name: "sum_of_squares_bound",
        hypothesis_text: format!("sum (m_i-1)^2 = {squares} < (d-1)^2 = {bound} (conjectural)"),
        value: Some(sos),
    });
    if sos {
        settle(Verdict::ConjecturallyFactorial, &mut verdict);
    }

    Decision { verdict: verdict.unwrap_or(Verdict::Unknown), criteria }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: u64, mults: &[u64], pos: Position) -> MultiplicityProfile {
        MultiplicityProfile::threefold(d, mults.to_vec(), pos).unwrap()
    }

    #[test]
    fn few_points_boundary() {
        assert!(few_points(&p(5, &[2, 2], Position::Unknown)));
        assert!(!few_points(&p(4, &[2, 2], Position::Unknown)));
        assert!(few_points(&p(7, &[6], Position::Unknown)));
    }

    #[test]
    fn general_points_arithmetic() {
        assert!(general_points_existence(13, 2, 8).unwrap());
        assert!(!general_points_existence(5, 5, 1).unwrap());
        assert!(!general_points_existence(7, 3, 1).unwrap());
        assert!(general_points_existence(2, 3, 1).is_err());
        assert!(general_points_factorial(13, 2, 8).unwrap());
        assert!(!general_points_factorial(5, 2, 2).unwrap());
        for m in 1..20 {
            for d in m + 1..2 * m + 3 {
                assert!(!general_points_factorial(d, m, 1).unwrap(), "d={d} m={m}");
            }
        }
    }

    #[test]
    fn uniform_bound_cases() {
        assert!(!uniform_bound(10, 8, 1).unwrap());
        assert!(uniform_bound(15, 4, 4).unwrap());
        assert!(general_points_factorial(15, 4, 4).unwrap());
        assert!(!uniform_bound(5, 4, 1).unwrap());
    }

    #[test]
    fn nodal_cases() {
        for pos in [Position::General, Position::ContainedInPlane, Position::Unknown] {
            assert_eq!(nodal(4, 8, pos), NodalOutcome::Factorial);
        }
        assert_eq!(nodal(3, 4, Position::ContainedInPlane), NodalOutcome::NonFactorial);
        assert_eq!(nodal(3, 4, Position::General), NodalOutcome::Factorial);
        assert_eq!(nodal(3, 4, Position::Unknown), NodalOutcome::Unknown);
        assert_eq!(nodal(3, 5, Position::General), NodalOutcome::Unknown);
    }

    #[test]
    fn sum_of_squares_cases() {
        assert!(sum_of_squares_bound(&p(5, &[3, 2], Position::Unknown)));
        for t in 1..=4u64 {
            for delta in 1..=3u64 {
                let mults = vec![t + 1; (delta * delta) as usize];
                assert!(!sum_of_squares_bound(&p(delta * t + 1, &mults, Position::ContainedInPlane)));
            }
        }
        for d in 3..30 {
            for m in 2..d + 3 {
                let prof = p(d, &[m], Position::Unknown);
                assert_eq!(sum_of_squares_bound(&prof), few_points(&prof));
            }
        }
    }

    #[test]
    fn ampleness() {
        assert!(ample_at_general_points(4, 2, 15).unwrap());
        assert!(!ample_at_general_points(4, 2, 16).unwrap());
        assert!(ample_at_general_points(2, 2, 1).is_err());
        assert!(scaled_ample(4, 13, 2, 8).unwrap());
        assert!(!scaled_ample(4, 2, 3, 0).unwrap());
        for n in 2..7 {
            for a in 3..8 {
                for k in 1..50 {
                    assert_eq!(scaled_ample(n, a, 1, k).unwrap(), ample_at_general_points(n, a, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn strict_transforms() {
        assert_eq!(strict_transform_class(&p(5, &[2, 2], Position::Unknown)), BlowupClass { n: 4, a: 5, bs: vec![2, 2] });
        assert_eq!(strict_transform_class(&p(4, &[4], Position::Unknown)), BlowupClass { n: 4, a: 4, bs: vec![4] });
    }

    #[test]
    fn verdicts() {
        let v = decide(&p(5, &[2, 2], Position::Unknown));
        assert_eq!(v.verdict, Verdict::Factorial { reason: Reason::FewPoints });
        let v = decide(&p(3, &[2, 2, 2, 2], Position::ContainedInPlane));
        assert!(matches!(v.verdict, Verdict::NonFactorial { .. }));
        let v = decide(&p(3, &[2, 2, 2, 2], Position::Unknown));
        assert_eq!(v.verdict, Verdict::Unknown);
        let v = decide(&p(13, &[2; 8], Position::General));
        assert!(v.verdict.is_factorial());
        assert_eq!(v.criterion("ample_strict_transform").unwrap().value, Some(true));
        let v = decide(&p(7, &[], Position::Unknown));
        assert_eq!(v.verdict, Verdict::Factorial { reason: Reason::Smooth });
        let v = decide(&p(5, &[3, 3], Position::Unknown));
        assert_eq!(v.verdict, Verdict::ConjecturallyFactorial);
        let v = decide(&p(40, &[5; 30], Position::General));
        assert_eq!(v.verdict, Verdict::Factorial { reason: Reason::AmpleStrictTransform });
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(decide(&p(5, &[2, 2], Position::Unknown))).unwrap();
        assert_eq!(v["verdict"], "Factorial");
        assert_eq!(v["reason"], "few_points");
        let rows = v["criteria"].as_array().unwrap();
        assert!(rows.iter().all(|r| r.get("name").is_some() && r.get("hypothesis_text").is_some() && r.get("value").is_some()));
    }

    #[test]
    fn profile_validation() {
        assert!(MultiplicityProfile::threefold(0, vec![], Position::Unknown).is_err());
        assert!(MultiplicityProfile::threefold(4, vec![1], Position::Unknown).is_err());
        assert!(MultiplicityProfile::new(3, 4, vec![2], Position::ContainedInPlane).is_err());
        assert_eq!("plane".parse::<Position>().unwrap(), Position::ContainedInPlane);
    }
}
