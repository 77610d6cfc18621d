//! Invariants of nodal threefolds and of blow-ups of `P^n` at points: the
//! defect from interpolation rank, `b4`, coplanarity and intersection
//! numbers.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::criteria::BlowupClass;
use crate::linalg::{rank_mod_p, rank_rational};
use crate::poly::{monomials_of_degree, Field, Monomial, ProjectivePoint, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("degree {0} is too small: forms of degree 2d-5 need d >= 3")]
    DegreeTooSmall(u32),
    #[error("point {0} is listed twice")]
    DuplicatePoint(String),
    #[error("points must have {expected} coordinates, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("points must share one exact field (Q or F_p), got {0}")]
    UnsupportedField(String),
}

/// Number of degree-`e` monomials in `n + 1` variables, `C(e + n, n)`.
pub fn monomial_count(n: u32, e: u32) -> u128 {
    let mut c: u128 = 1;
    for i in 1..=n as u128 {
        c = c * (e as u128 + i) / i;
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub k: usize,
    pub degree_checked: u32,
    pub monomial_count: u128,
    pub rank: usize,
    pub defect: usize,
    pub b4: usize,
}

/// Integer (for Q) or residue (for F_p) coordinates of a point list.
enum Coordinates {
    Integer(Vec<Vec<BigInt>>),
    Residue(Vec<Vec<u64>>, u64),
}

fn coordinates(points: &[ProjectivePoint], len: usize) -> Result<Coordinates, InvariantError> {
    let mut seen = HashSet::new();
    for p in points {
        if p.coords().len() != len {
            return Err(InvariantError::WrongDimension { expected: len, got: p.coords().len() });
        }
        if !seen.insert(p) {
            return Err(InvariantError::DuplicatePoint(p.to_string()));
        }
    }
    let field = points.first().map(|p| p.field().clone()).unwrap_or(Field::Rational);
    if let Some(p) = points.iter().find(|p| p.field() != &field) {
        return Err(InvariantError::UnsupportedField(p.field().to_string()));
    }
    match field {
        Field::Rational => Ok(Coordinates::Integer(points.iter().map(|p| p.integer_coords().unwrap()).collect())),
        Field::Prime(q) => Ok(Coordinates::Residue(
            points
                .iter()
                .map(|p| p.coords().iter().map(|c| if let Scalar::Modular(v) = c { *v } else { unreachable!() }).collect())
                .collect(),
            q,
        )),
        other => Err(InvariantError::UnsupportedField(other.to_string())),
    }
}

fn eval_int(m: &Monomial, x: &[BigInt]) -> BigInt {
    let mut acc = BigInt::one();
    for (v, e) in x.iter().zip(m.exponents()) {
        if *e > 0 {
            acc *= num_traits::pow(v.clone(), *e as usize);
        }
    }
    acc
}

fn eval_mod(m: &Monomial, x: &[u64], p: u64) -> u64 {
    use crate::poly::univariate::{mulmod, powmod};
    x.iter().zip(m.exponents()).fold(1 % p, |acc, (v, e)| mulmod(acc, powmod(*v, *e as u64, p), p))
}

/// Rank of the matrix of the given monomials evaluated at the points.
fn evaluation_rank(coords: &Coordinates, monomials: &[Monomial]) -> usize {
    match coords {
        Coordinates::Integer(pts) => {
            rank_rational(pts.iter().map(|x| monomials.iter().map(|m| eval_int(m, x)).collect()).collect())
        }
        Coordinates::Residue(pts, p) => {
            rank_mod_p(pts.iter().map(|x| monomials.iter().map(|m| eval_mod(m, x, *p)).collect()).collect(), *p)
        }
    }
}

/// Failure of `k` nodes of a degree-`d` threefold in `P^4` to impose
/// independent conditions on forms of degree `2d - 5`.
pub fn defect(points: &[ProjectivePoint], d: u32) -> Result<DefectReport, InvariantError> {
    if d < 3 {
        return Err(InvariantError::DegreeTooSmall(d));
    }
    let e = 2 * d - 5;
    let coords = coordinates(points, 5)?;
    let monomials = monomials_of_degree(5, e);
    let rank = if points.is_empty() { 0 } else { evaluation_rank(&coords, &monomials) };
    let k = points.len();
    let defect = k - rank;
    Ok(DefectReport { k, degree_checked: e, monomial_count: monomial_count(4, e), rank, defect, b4: 1 + defect })
}

/// `b4 = 1 + δ` for a nodal threefold.
pub fn b4_from_defect(report: &DefectReport) -> usize {
    1 + report.defect
}

/// True when the points span at most a plane of `P^4`.
pub fn coplanar(points: &[ProjectivePoint]) -> Result<bool, InvariantError> {
    if points.len() <= 3 {
        coordinates(points, 5)?;
        return Ok(true);
    }
    let coords = coordinates(points, 5)?;
    Ok(evaluation_rank(&coords, &monomials_of_degree(5, 1)) <= 3)
}

/// `b4` of a cone over a smooth degree-`d` surface in `P^3`:
/// `d^3 - 4d^2 + 6d - 2`.
pub fn cone_b4(d: u32) -> i128 {
    let d = d as i128;
    d * d * d - 4 * d * d + 6 * d - 2
}

/// Top intersection of `n` classes on the blow-up of `P^n` at points.
/// Each class is given by its coordinates on `(H, E_1, .., E_k)`. Products
/// mixing `H` with some `E_i`, or two different `E_i`, vanish; `H^n = 1`
/// and `E_i^n = (-1)^(n-1)`.
pub fn intersection_product(classes: &[Vec<BigInt>], n: u32) -> BigInt {
    let len = classes.first().map_or(1, |c| c.len());
    weighted_product(classes, &vec![1; len.saturating_sub(1)], n)
}

/// [`intersection_product`] where coordinate `i >= 1` stands for
/// `weights[i-1]` exceptional divisors sharing one coefficient.
fn weighted_product(classes: &[Vec<BigInt>], weights: &[u64], n: u32) -> BigInt {
    assert_eq!(classes.len(), n as usize);
    let mut total: BigInt = classes.iter().map(|c| c[0].clone()).product();
    let sign = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    for (i, w) in weights.iter().enumerate() {
        let prod: BigInt = classes.iter().map(|c| c[i + 1].clone()).product();
        total += &prod * &sign * BigInt::from(*w);
    }
    total
}

/// Self-intersection `(aH - Σ b_i E_i)^n`.
pub fn intersection_number(cls: &BlowupClass) -> BigInt {
    let mut groups: Vec<(i64, u64)> = Vec::new();
    let mut bs = cls.bs.clone();
    bs.sort_unstable();
    for b in bs {
        match groups.last_mut() {
            Some((v, c)) if *v == b => *c += 1,
            _ => groups.push((b, 1)),
        }
    }
    grouped_intersection_number(cls.n, cls.a, &groups)
}

/// Self-intersection of `aH - Σ b E`, where each `(b, count)` stands for
/// `count` exceptional divisors with coefficient `b`. Avoids materializing
/// classes with many equal coefficients.
pub fn grouped_intersection_number(n: u32, a: i64, groups: &[(i64, u64)]) -> BigInt {
    static SIGN_CHECK: OnceLock<()> = OnceLock::new();
    SIGN_CHECK.get_or_init(|| sign_convention_self_test().expect("intersection sign convention"));
    grouped_raw(n, a, groups)
}

fn grouped_raw(n: u32, a: i64, groups: &[(i64, u64)]) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    let mut v = vec![BigInt::from(a)];
    v.extend(groups.iter().map(|(b, _)| -BigInt::from(*b)));
    let weights: Vec<u64> = groups.iter().map(|(_, c)| *c).collect();
    weighted_product(&vec![v; n as usize], &weights, n)
}

fn intersection_raw(cls: &BlowupClass) -> BigInt {
    let mut v = vec![BigInt::from(cls.a)];
    v.extend(cls.bs.iter().map(|b| -BigInt::from(*b)));
    let copies = vec![v; cls.n as usize];
    if cls.n == 0 {
        return BigInt::zero();
    }
    intersection_product(&copies, cls.n)
}

/// Pins the sign of `E_i^n` against two anchors: `(dH - ΣE_i)^n = d^n - k`
/// and the self-intersection 0 of the strict transform of a cone at its
/// vertex, `(dH - dE)^4`.
pub fn sign_convention_self_test() -> Result<(), String> {
    for n in 2..=6u32 {
        for d in 2..=4i64 {
            for k in 0..4usize {
                let got = intersection_raw(&BlowupClass { n, a: d, bs: vec![1; k] });
                let want = BigInt::from(d).pow(n) - BigInt::from(k);
                if got != want || grouped_raw(n, d, &[(1, k as u64)]) != want {
                    return Err(format!("(dH - sum E)^{n} with d={d}, k={k}: {got} != {want}"));
                }
            }
        }
    }
    for d in 2..=6i64 {
        let got = intersection_raw(&BlowupClass { n: 4, a: d, bs: vec![d] });
        if !got.is_zero() {
            return Err(format!("cone class for d={d} has self-intersection {got}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_points(rows: &[[i64; 5]]) -> Vec<ProjectivePoint> {
        rows.iter().map(|r| ProjectivePoint::from_ints(&Field::Rational, r).unwrap()).collect()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(4, 1), 5);
        assert_eq!(monomial_count(4, 3), 35);
        assert_eq!(monomial_count(4, 0), 1);
        for e in 0..7 {
            assert_eq!(monomial_count(4, e), monomials_of_degree(5, e).len() as u128);
            assert_eq!(monomial_count(2, e), monomials_of_degree(3, e).len() as u128);
        }
    }

    #[test]
    fn coplanar_four_nodes_have_defect_one() {
        let pts = q_points(&[[0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 1, 1, 1]]);
        let r = defect(&pts, 3).unwrap();
        assert_eq!((r.rank, r.defect, r.b4), (3, 1, 2));
        assert_eq!(b4_from_defect(&r), 2);
        assert!(coplanar(&pts).unwrap());
    }

    #[test]
    fn general_four_points_have_defect_zero() {
        let pts = q_points(&[[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [1, 2, 3, 4, 5]]);
        let r = defect(&pts, 3).unwrap();
        assert_eq!((r.rank, r.defect, r.b4), (4, 0, 1));
        assert!(!coplanar(&pts).unwrap());
        let r = defect(&[], 4).unwrap();
        assert_eq!((r.k, r.defect, r.b4), (0, 0, 1));
    }

    #[test]
    fn defect_rejects_bad_input() {
        let pts = q_points(&[[1, 0, 0, 0, 0], [2, 0, 0, 0, 0]]);
        assert!(matches!(defect(&pts, 3), Err(InvariantError::DuplicatePoint(_))));
        assert_eq!(defect(&[], 2), Err(InvariantError::DegreeTooSmall(2)));
    }

    #[test]
    fn coordinate_points() {
        let pts = q_points(&[[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0]]);
        assert!(!coplanar(&pts).unwrap());
        assert!(coplanar(&pts[..3]).unwrap());
    }

    #[test]
    fn modular_points() {
        let f7 = Field::prime(7).unwrap();
        let pts: Vec<_> = [[0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 1, 1, 1]]
            .iter()
            .map(|r| ProjectivePoint::from_ints(&f7, r).unwrap())
            .collect();
        assert_eq!(defect(&pts, 3).unwrap().defect, 1);
    }

    #[test]
    fn intersection_numbers_match_closed_form() {
        for n in 2..=6u32 {
            for a in 0..5i64 {
                let bs = vec![1, 2, 3];
                let closed = BigInt::from(a).pow(n) - bs.iter().map(|b| BigInt::from(*b).pow(n)).sum::<BigInt>();
                assert_eq!(intersection_number(&BlowupClass { n, a, bs }), closed);
            }
        }
        assert_eq!(intersection_number(&BlowupClass { n: 4, a: 0, bs: vec![] }), BigInt::zero());
        assert_eq!(intersection_number(&BlowupClass { n: 4, a: 3, bs: vec![1; 4] }), BigInt::from(77));
        assert_eq!(intersection_number(&BlowupClass { n: 4, a: 4, bs: vec![4] }), BigInt::zero());
        assert!(sign_convention_self_test().is_ok());
    }

    #[test]
    fn cone_betti_numbers() {
        assert_eq!(cone_b4(4), 22);
        assert_eq!(cone_b4(1), 1);
        for d in 4..20 {
            assert!(cone_b4(d) > 1);
        }
    }
}
