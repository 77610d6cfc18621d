//! Common projective zeros of homogeneous polynomials over finite fields.
//!
//! Projective space is split into the strata `x_0 = .. = x_{i-1} = 0,
//! x_i = 1`. On each stratum the affine ideal gets a grevlex basis. A
//! zero-dimensional stratum is solved exactly: the minimal polynomial of
//! each coordinate (read off the multiplication action on the standard
//! monomials) is searched for roots in `F_{p^e}`, and the candidate tuples
//! are checked against the basis. Strata of positive dimension fall back
//! to a budgeted enumeration of their rational points.

use std::collections::HashMap;

use rayon::prelude::*;

use super::local::{local_quotient_dimension, translate};
use super::{HypersurfaceSpec, SingularityError};
use crate::groebner::{groebner_basis, GroebnerBasis, MonomialOrder, QuotientDimension, DEFAULT_STEP_BUDGET};
use crate::poly::univariate as fpx;
use crate::poly::{Field, Monomial, Polynomial, ProjectivePoint, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest extension degree searched for points.
    pub e_max: usize,
    pub groebner_budget: u64,
    /// Cap on field elements or affine points visited by brute force.
    pub enumeration_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { e_max: 2, groebner_budget: DEFAULT_STEP_BUDGET, enumeration_budget: 20_000_000 }
    }
}

/// Result of a zero search. Each point is reported once, over the smallest
/// searched field containing its coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSearch {
    pub points: Vec<ProjectivePoint>,
    pub e_max: usize,
    /// Length of the zero scheme when every stratum is zero-dimensional.
    pub scheme_length: Option<u64>,
    /// Sum of the local lengths at the points found.
    pub found_length: u64,
}

impl ZeroSearch {
    /// True when the points found account for the whole zero scheme, so no
    /// zero is hiding over a larger extension field.
    pub fn complete(&self) -> bool {
        self.scheme_length == Some(self.found_length)
    }
}

/// Singular points of `V(f)` in `P^n(F_{p^e})`, `e <= e_max`. The
/// hypersurface must be defined over a prime field.
pub fn singular_points(spec: &HypersurfaceSpec, limits: &SearchLimits) -> Result<ZeroSearch, SingularityError> {
    let f = spec.poly();
    if !matches!(f.field(), Field::Prime(_)) {
        return Err(SingularityError::NeedsFiniteField(f.field().to_string()));
    }
    let mut gens = vec![f.clone()];
    gens.extend(f.gradient());
    projective_zeros(&gens, limits)
}

pub fn projective_zeros(gens: &[Polynomial], limits: &SearchLimits) -> Result<ZeroSearch, SingularityError> {
    let base = gens[0].field().clone();
    if !base.is_finite() {
        return Err(SingularityError::NeedsFiniteField(base.to_string()));
    }
    if limits.e_max == 0 {
        return Err(SingularityError::BadLimits("e_max must be at least 1".into()));
    }
    let nv = gens[0].nvars();
    let levels: Vec<Field> = match &base {
        Field::Prime(p) => (1..=limits.e_max).map(|e| Field::galois(*p, e)).collect::<Result<_, _>>()?,
        _ => vec![base.clone()],
    };

    let mut found: Vec<(usize, ProjectivePoint)> = Vec::new();
    let mut scheme_length = Some(0u64);
    let mut found_length = 0u64;

    for chart in 0..nv {
        let values: Vec<Option<Scalar>> = (0..nv)
            .map(|j| match j.cmp(&chart) {
                std::cmp::Ordering::Less => Some(base.zero()),
                std::cmp::Ordering::Equal => Some(base.one()),
                std::cmp::Ordering::Greater => None,
            })
            .collect();
        let mut chart_gens = Vec::new();
        for g in gens {
            let s = g.specialize(&values)?;
            if !s.is_zero() {
                chart_gens.push(s);
            }
        }
        let free = nv - 1 - chart;
        let lift = |level: &Field, affine: Vec<Scalar>| -> Result<ProjectivePoint, SingularityError> {
            let mut coords = vec![level.zero(); chart];
            coords.push(level.one());
            coords.extend(affine);
            Ok(ProjectivePoint::new(level, coords)?)
        };

        if chart_gens.is_empty() {
            if free == 0 {
                found.push((chart, lift(&levels[0], Vec::new())?));
                scheme_length = scheme_length.map(|s| s + 1);
                found_length += 1;
            } else {
                scheme_length = None;
                for (level, pt) in enumerate_chart(&[], &base, free, &levels, limits)? {
                    found.push((chart, lift(&level, pt)?));
                }
            }
            continue;
        }

        let gb = groebner_basis(&chart_gens, MonomialOrder::Grevlex, limits.groebner_budget)?;
        if gb.is_unit() {
            continue;
        }
        match gb.quotient_dimension() {
            QuotientDimension::Finite(len) => {
                scheme_length = scheme_length.map(|s| s + len);
                for (level, affine) in solve_zero_dimensional(&gb, &levels, limits)? {
                    let local = if free == 0 {
                        1
                    } else {
                        let shifted = gb
                            .generators()
                            .iter()
                            .map(|g| translate(&g.change_field(&level)?, &affine))
                            .collect::<Result<Vec<_>, _>>()?;
                        local_quotient_dimension(&shifted, limits.groebner_budget)?.finite().unwrap_or(0)
                    };
                    found_length += local;
                    found.push((chart, lift(&level, affine)?));
                }
            }
            QuotientDimension::Infinite => {
                scheme_length = None;
                for (level, pt) in enumerate_chart(gb.generators(), &base, free, &levels, limits)? {
                    found.push((chart, lift(&level, pt)?));
                }
            }
        }
    }

    found.sort_by(|(ca, a), (cb, b)| {
        ca.cmp(cb)
            .then(a.field().extension_degree().cmp(&b.field().extension_degree()))
            .then_with(|| a.coords().cmp(b.coords()))
    });
    Ok(ZeroSearch { points: found.into_iter().map(|(_, p)| p).collect(), e_max: limits.e_max, scheme_length, found_length })
}

/// True unless every coordinate lies in a proper subfield of `level` that
/// was searched on its own (so the point is reported there instead).
fn new_at_level(coords: &[Scalar], base: &Field, level: &Field) -> bool {
    let Field::Prime(p) = base else {
        return true;
    };
    let e = level.extension_degree();
    (1..e).filter(|d| e % d == 0).all(|d| {
        let q = p.pow(d as u32);
        !coords.iter().all(|c| level.pow(c, q) == *c)
    })
}

fn solve_zero_dimensional(
    gb: &GroebnerBasis,
    levels: &[Field],
    limits: &SearchLimits,
) -> Result<Vec<(Field, Vec<Scalar>)>, SingularityError> {
    let base = gb.field();
    let n = gb.nvars();
    let standard = gb.standard_monomials().expect("zero-dimensional ideal");
    let index: HashMap<Monomial, usize> = standard.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let minpolys = (0..n).map(|j| minimal_polynomial(gb, j, &index)).collect::<Result<Vec<_>, _>>()?;

    let mut out = Vec::new();
    for level in levels {
        let roots = minpolys.iter().map(|mp| roots_in(mp, base, level, limits)).collect::<Result<Vec<_>, _>>()?;
        if roots.iter().any(|r| r.is_empty()) {
            continue;
        }
        let checks = gb.generators().iter().map(|g| g.change_field(level)).collect::<Result<Vec<_>, _>>()?;
        let mut odometer = vec![0usize; n];
        loop {
            let cand: Vec<Scalar> = odometer.iter().enumerate().map(|(j, &k)| roots[j][k].clone()).collect();
            if new_at_level(&cand, base, level) && checks.iter().all(|g| level.is_zero(&g.evaluate(&cand).unwrap())) {
                out.push((level.clone(), cand));
            }
            let mut j = 0;
            while j < n {
                odometer[j] += 1;
                if odometer[j] < roots[j].len() {
                    break;
                }
                odometer[j] = 0;
                j += 1;
            }
            if j == n {
                break;
            }
        }
    }
    Ok(out)
}

/// Monic minimal polynomial (low degree first) of multiplication by `x_j`
/// on the quotient ring.
fn minimal_polynomial(
    gb: &GroebnerBasis,
    j: usize,
    index: &HashMap<Monomial, usize>,
) -> Result<Vec<Scalar>, SingularityError> {
    let field = gb.field();
    let n = gb.nvars();
    let dim = index.len();
    let xj = Polynomial::var(field, n, j);
    let dense = |p: &Polynomial| {
        let mut v = vec![field.zero(); dim];
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    // echelon rows with the combination of powers that produced them
    let mut rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    let mut cur = gb.reduce(&Polynomial::one(field, n))?;
    for k in 0..=dim {
        let mut v = dense(&cur);
        let mut combo = vec![field.zero(); k + 1];
        combo[k] = field.one();
        for (piv, rv, rc) in &rows {
            let c = v[*piv].clone();
            if field.is_zero(&c) {
                continue;
            }
            for (a, b) in v.iter_mut().zip(rv) {
                *a = field.sub(a, &field.mul(&c, b));
            }
            for (a, b) in combo.iter_mut().zip(rc) {
                *a = field.sub(a, &field.mul(&c, b));
            }
        }
        match v.iter().position(|x| !field.is_zero(x)) {
            None => return Ok(combo),
            Some(piv) => {
                let inv = field.inv(&v[piv]).unwrap();
                for a in v.iter_mut().chain(combo.iter_mut()) {
                    *a = field.mul(a, &inv);
                }
                rows.push((piv, v, combo));
            }
        }
        cur = gb.reduce(&(&cur * &xj))?;
    }
    unreachable!("more powers than the quotient dimension must be dependent")
}

/// Roots in `level` of a polynomial with coefficients in `base`.
fn roots_in(poly: &[Scalar], base: &Field, level: &Field, limits: &SearchLimits) -> Result<Vec<Scalar>, SingularityError> {
    let mut target: Vec<Scalar> = poly.to_vec();
    let mut expected = target.len().saturating_sub(1);
    if let Field::Prime(p) = base {
        // keep only the factor splitting over the level field
        let u: Vec<u64> =
            poly.iter().map(|c| if let Scalar::Modular(v) = c { *v } else { unreachable!() }).collect();
        let q = level.order().unwrap();
        let xq = fpx::pow_rem(&[0, 1], q, &u, *p);
        let g = fpx::gcd(&u, &fpx::sub(&xq, &[0, 1], *p), *p);
        expected = g.len().saturating_sub(1);
        target = g.into_iter().map(Scalar::Modular).collect();
    }
    if expected == 0 {
        return Ok(Vec::new());
    }
    let order = level.order().unwrap();
    if order > limits.enumeration_budget as u128 {
        return Err(SingularityError::EnumerationBudget { needed: order, budget: limits.enumeration_budget });
    }
    let coeffs: Vec<Scalar> = target.iter().map(|c| level.embed(c, base)).collect::<Result<_, _>>()?;
    let mut roots = Vec::new();
    for x in level.elements() {
        let mut acc = level.zero();
        for c in coeffs.iter().rev() {
            acc = level.add(&level.mul(&acc, &x), c);
        }
        if level.is_zero(&acc) {
            roots.push(x);
            if roots.len() == expected && matches!(base, Field::Prime(_)) {
                break;
            }
        }
    }
    Ok(roots)
}

/// Brute-force zeros of `gens` on an affine stratum with `free` variables.
fn enumerate_chart(
    gens: &[Polynomial],
    base: &Field,
    free: usize,
    levels: &[Field],
    limits: &SearchLimits,
) -> Result<Vec<(Field, Vec<Scalar>)>, SingularityError> {
    let needed: u128 = levels.iter().map(|l| l.order().unwrap().saturating_pow(free as u32)).sum();
    if needed > limits.enumeration_budget as u128 {
        return Err(SingularityError::EnumerationBudget { needed, budget: limits.enumeration_budget });
    }
    let mut out = Vec::new();
    for level in levels {
        let checks = gens.iter().map(|g| g.change_field(level)).collect::<Result<Vec<_>, _>>()?;
        let q = level.order().unwrap() as u64;
        let count = q.pow(free as u32);
        let mut hits: Vec<(u64, Vec<Scalar>)> = (0..count)
            .into_par_iter()
            .filter_map(|idx| {
                let mut rest = idx;
                let coords: Vec<Scalar> = (0..free)
                    .map(|_| {
                        let c = level.element((rest % q) as u128);
                        rest /= q;
                        c
                    })
                    .collect();
                let zero = checks.iter().all(|g| level.is_zero(&g.evaluate(&coords).unwrap()));
                (zero && new_at_level(&coords, base, level)).then_some((idx, coords))
            })
            .collect();
        hits.sort_by_key(|(i, _)| *i);
        out.extend(hits.into_iter().map(|(_, c)| (level.clone(), c)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    /// Every point of P^n(F_p) checked directly.
    fn brute_singular(f: &Polynomial) -> Vec<ProjectivePoint> {
        let field = f.field().clone();
        let mut gens = vec![f.clone()];
        gens.extend(f.gradient());
        let n = f.nvars();
        let q = field.order().unwrap();
        let mut out = Vec::new();
        for chart in 0..n {
            let free = n - 1 - chart;
            for idx in 0..q.pow(free as u32) {
                let mut c = vec![field.zero(); n];
                c[chart] = field.one();
                let mut rest = idx;
                for slot in c[chart + 1..].iter_mut() {
                    *slot = field.element(rest % q);
                    rest /= q;
                }
                if gens.iter().all(|g| field.is_zero(&g.evaluate(&c).unwrap())) {
                    out.push(ProjectivePoint::new(&field, c).unwrap());
                }
            }
        }
        out
    }

    fn spec(text: &str, n: usize, field: &Field) -> HypersurfaceSpec {
        HypersurfaceSpec::new(parse_polynomial(text, n, field).unwrap()).unwrap()
    }

    #[test]
    fn smooth_quadric_has_no_singular_points() {
        let f5 = Field::prime(5).unwrap();
        let s = spec("x0^2 + x1^2 + x2^2 + x3^2 + x4^2", 5, &f5);
        let z = singular_points(&s, &SearchLimits::default()).unwrap();
        assert!(z.points.is_empty());
        assert!(z.complete());
    }

    #[test]
    fn matches_brute_force_over_small_primes() {
        let cases = [
            ("x0*x1*x2 + x1^3 + x2^3 + x0^2*x2", 3),
            ("x0^2*x2 - x1^3 - x1^2*x2", 3),
            ("x0*x1 - x2*x3", 4),
            ("x0*x1*x2 + x1*x2*x3 + x0*x2*x3 + x0*x1*x3", 4),
            ("x0^3 + x1^3 + x2^3 + x3^3", 4),
        ];
        for p in [5u64, 7, 11, 13] {
            let fp = Field::prime(p).unwrap();
            for (text, n) in cases {
                let s = spec(text, n, &fp);
                let limits = SearchLimits { e_max: 1, ..SearchLimits::default() };
                let mut got = singular_points(&s, &limits).unwrap().points;
                let mut want = brute_singular(s.poly());
                got.sort();
                want.sort();
                assert_eq!(got, want, "{text} over F{p}");
            }
        }
    }

    #[test]
    fn conjugate_points_need_the_extension() {
        // two lines x0 = ±i*x1 and the line x2 = 0; over F_7 the square root
        // of -1 lives in F_49, so two of the three nodes are not rational
        let f7 = Field::prime(7).unwrap();
        let s = spec("x0^2*x2 + x1^2*x2", 3, &f7);
        let one = singular_points(&s, &SearchLimits { e_max: 1, ..SearchLimits::default() }).unwrap();
        assert_eq!(one.points, vec![ProjectivePoint::from_ints(&f7, &[0, 0, 1]).unwrap()]);
        assert!(!one.complete());
        let two = singular_points(&s, &SearchLimits { e_max: 2, ..SearchLimits::default() }).unwrap();
        assert_eq!(two.points.len(), 3);
        assert!(two.complete());
        for p in &two.points {
            assert_eq!(crate::singularity::multiplicity_at(&s, p).unwrap(), 2);
        }
    }

    #[test]
    fn extension_points_are_found_once() {
        // x0^2 + x1^2 has no F_7 zero in P^1 but two over F_49
        let f7 = Field::prime(7).unwrap();
        let g = parse_polynomial("x0^2 + x1^2", 2, &f7).unwrap();
        let z1 = projective_zeros(&[g.clone()], &SearchLimits { e_max: 1, ..SearchLimits::default() }).unwrap();
        assert!(z1.points.is_empty());
        assert!(!z1.complete());
        let z2 = projective_zeros(&[g], &SearchLimits::default()).unwrap();
        assert_eq!(z2.points.len(), 2);
        assert!(z2.points.iter().all(|p| p.field().extension_degree() == 2));
        assert!(z2.complete());
    }

    #[test]
    fn positive_dimensional_strata_enumerate() {
        // a double line in P^2 over F_5 is singular along the whole line
        let f5 = Field::prime(5).unwrap();
        let s = spec("x0^2*x2", 3, &f5);
        let z = singular_points(&s, &SearchLimits { e_max: 1, ..SearchLimits::default() }).unwrap();
        let mut want = brute_singular(s.poly());
        want.sort();
        let mut got = z.points.clone();
        got.sort();
        assert_eq!(got, want);
        assert_eq!(z.scheme_length, None);
        let tight = SearchLimits { e_max: 1, enumeration_budget: 2, ..SearchLimits::default() };
        assert!(matches!(singular_points(&s, &tight), Err(SingularityError::EnumerationBudget { .. })));
    }
}
