//! Buchberger's algorithm with the normal selection strategy and both of
//! Buchberger's pair criteria, producing reduced Gröbner bases.
//!
//! The step budget counts processed pairs plus single reduction steps.
//!
//! Polynomials are converted into term vectors sorted by the requested
//! monomial order (leading term last), so the same engine serves the
//! canonical grevlex order and the homogenized local order used for Milnor
//! numbers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::{grevlex, Field, Monomial, PolyError, Polynomial, Scalar};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("Gröbner budget exhausted after {steps} reduction steps")]
    BudgetExceeded { steps: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    Grevlex,
    /// Total degree first; ties go to the higher power of `x_0` and then to
    /// reverse lexicographic order on the remaining variables. On
    /// homogenized ideals with `x_0` as the homogenizing variable this is
    /// the degree-compatible lift of the local degree order.
    HomogenizedLocal,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a.exponents(), b.exponents()),
            MonomialOrder::HomogenizedLocal => {
                let (ea, eb) = (a.exponents(), b.exponents());
                a.degree()
                    .cmp(&b.degree())
                    .then_with(|| ea[0].cmp(&eb[0]))
                    .then_with(|| {
                        for (x, y) in ea[1..].iter().zip(&eb[1..]).rev() {
                            if x != y {
                                return y.cmp(x);
                            }
                        }
                        Ordering::Equal
                    })
            }
        }
    }
}

/// Term vector sorted ascending in the working order; leading term last.
type Terms = Vec<(Monomial, Scalar)>;

struct Engine<'a> {
    field: &'a Field,
    order: MonomialOrder,
    steps: u64,
    budget: u64,
}

impl Engine<'_> {
    fn to_terms(&self, p: &Polynomial) -> Terms {
        let mut t: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        if self.order != MonomialOrder::Grevlex {
            t.sort_by(|a, b| self.order.cmp(&a.0, &b.0));
        }
        t
    }

    fn monic(&self, mut t: Terms) -> Terms {
        if let Some((_, lc)) = t.last() {
            if !self.field.is_one(lc) {
                let inv = self.field.inv(lc).unwrap();
                for (_, c) in t.iter_mut() {
                    *c = self.field.mul(c, &inv);
                }
            }
        }
        t
    }

    /// `p - c * m * g`, both inputs ascending.
    fn sub_scaled(&self, p: &Terms, c: &Scalar, m: &Monomial, g: &Terms) -> Terms {
        let f = self.field;
        let mut out = Vec::with_capacity(p.len() + g.len());
        let mut gi = g.iter().map(|(gm, gc)| (gm.mul(m), f.mul(gc, c))).peekable();
        let mut pi = p.iter().peekable();
        loop {
            match (pi.peek(), gi.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(pi.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (gm, gc) = gi.next().unwrap();
                    out.push((gm, f.neg(&gc)));
                }
                (Some((pm, _)), Some((gm, _))) => match self.order.cmp(pm, gm) {
                    Ordering::Less => out.push(pi.next().unwrap().clone()),
                    Ordering::Greater => {
                        let (gm, gc) = gi.next().unwrap();
                        out.push((gm, f.neg(&gc)));
                    }
                    Ordering::Equal => {
                        let (pm, pc) = pi.next().unwrap();
                        let (_, gc) = gi.next().unwrap();
                        let s = f.sub(pc, &gc);
                        if !f.is_zero(&s) {
                            out.push((pm.clone(), s));
                        }
                    }
                },
            }
        }
        out
    }

    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(GroebnerError::BudgetExceeded { steps: self.steps - 1 });
        }
        Ok(())
    }

    /// Full normal form of `p` modulo monic `basis`, skipping `skip`.
    fn normal_form(&mut self, mut p: Terms, basis: &[Terms], skip: Option<usize>) -> Result<Terms, GroebnerError> {
        let mut rem: Terms = Vec::new();
        while let Some((m, c)) = p.last().cloned() {
            let divisor = basis.iter().enumerate().find(|(i, g)| {
                Some(*i) != skip && g.last().map(|(lm, _)| lm.divides(&m)).unwrap_or(false)
            });
            match divisor {
                Some((_, g)) => {
                    self.tick()?;
                    let q = g.last().unwrap().0.quotient_of(&m).unwrap();
                    p = self.sub_scaled(&p, &c, &q, g);
                }
                None => {
                    rem.push(p.pop().unwrap());
                }
            }
        }
        rem.reverse();
        Ok(rem)
    }

    fn s_polynomial(&self, f: &Terms, g: &Terms) -> Terms {
        let (fm, _) = f.last().unwrap();
        let (gm, _) = g.last().unwrap();
        let l = fm.lcm(gm);
        let uf = fm.quotient_of(&l).unwrap();
        let ug = gm.quotient_of(&l).unwrap();
        // both monic: S = uf*f - ug*g
        let scaled_f: Terms = f.iter().map(|(m, c)| (m.mul(&uf), c.clone())).collect();
        self.sub_scaled(&scaled_f, &self.field.one(), &ug, g)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// A reduced Gröbner basis: monic generators sorted by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: Field,
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    leading: Vec<Monomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

impl QuotientDimension {
    pub fn finite(&self) -> Option<u64> {
        match self {
            QuotientDimension::Finite(n) => Some(*n),
            QuotientDimension::Infinite => None,
        }
    }
}

impl Serialize for QuotientDimension {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            QuotientDimension::Finite(n) => s.serialize_u64(*n),
            QuotientDimension::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl std::fmt::Display for QuotientDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuotientDimension::Finite(n) => write!(f, "{n}"),
            QuotientDimension::Infinite => write!(f, "infinite"),
        }
    }
}

/// Reduced Gröbner basis in grevlex with the default step budget.
pub fn buchberger(generators: &[Polynomial]) -> Result<GroebnerBasis, GroebnerError> {
    groebner_basis(generators, MonomialOrder::Grevlex, DEFAULT_STEP_BUDGET)
}

pub fn groebner_basis(
    generators: &[Polynomial],
    order: MonomialOrder,
    budget: u64,
) -> Result<GroebnerBasis, GroebnerError> {
    let first = match generators.first() {
        Some(g) => g,
        None => return Err(PolyError::CoordinateCount { expected: 1, got: 0 }.into()),
    };
    let field = first.field().clone();
    let nvars = first.nvars();
    for g in generators {
        if g.field() != &field {
            return Err(PolyError::FieldMismatch { left: field.to_string(), right: g.field().to_string() }.into());
        }
        if g.nvars() != nvars {
            return Err(PolyError::NvarsMismatch { left: nvars, right: g.nvars() }.into());
        }
    }
    let mut eng = Engine { field: &field, order, steps: 0, budget };

    let mut basis: Vec<Terms> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |basis: &mut Vec<Terms>, pairs: &mut Vec<Pair>, pending: &mut HashSet<(usize, usize)>, h: Terms| {
        let new = basis.len();
        let hm = h.last().unwrap().0.clone();
        for (k, g) in basis.iter().enumerate() {
            let lcm = g.last().unwrap().0.lcm(&hm);
            pairs.push(Pair { lcm, i: k, j: new });
            pending.insert((k, new));
        }
        basis.push(h);
    };

    for g in generators {
        let t = eng.to_terms(g);
        let h = eng.normal_form(t, &basis, None)?;
        if !h.is_empty() {
            let h = eng.monic(h);
            add(&mut basis, &mut pairs, &mut pending, h);
        }
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm, ties by index
        let pos = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .unwrap();
        let Pair { lcm, i, j } = pairs.swap_remove(pos);
        pending.remove(&(i, j));
        eng.tick()?;

        let (mi, mj) = (&basis[i].last().unwrap().0, &basis[j].last().unwrap().0);
        if mi.coprime(mj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].last().unwrap().0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = eng.s_polynomial(&basis[i], &basis[j]);
        let h = eng.normal_form(s, &basis, None)?;
        if !h.is_empty() {
            let h = eng.monic(h);
            let unit = h.last().unwrap().0.is_one();
            add(&mut basis, &mut pairs, &mut pending, h);
            if unit {
                break;
            }
        }
    }

    // minimal basis: drop elements whose leading monomial is a multiple of
    // another's (first occurrence wins on equal leading monomials)
    let lms: Vec<Monomial> = basis.iter().map(|g| g.last().unwrap().0.clone()).collect();
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&a| {
            !(0..basis.len()).any(|b| b != a && lms[b].divides(&lms[a]) && (lms[b] != lms[a] || b < a))
        })
        .collect();
    let mut minimal: Vec<Terms> = keep.into_iter().map(|k| basis[k].clone()).collect();

    // interreduce tails
    for idx in 0..minimal.len() {
        let mut g = minimal[idx].clone();
        let lt = g.pop().unwrap();
        let mut tail = eng.normal_form(g, &minimal, Some(idx))?;
        tail.push(lt);
        minimal[idx] = tail;
    }
    minimal.sort_by(|a, b| order.cmp(&a.last().unwrap().0, &b.last().unwrap().0));

    let leading = minimal.iter().map(|g| g.last().unwrap().0.clone()).collect();
    let generators = minimal
        .into_iter()
        .map(|t| {
            let map: BTreeMap<Monomial, Scalar> = t.into_iter().collect();
            Polynomial::from_sorted_map(&field, nvars, map)
        })
        .collect();
    Ok(GroebnerBasis { field, nvars, order, generators, leading })
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(|m| m.is_one())
    }

    /// Normal form of `p` (remainder of full reduction).
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if p.field() != &self.field || p.nvars() != self.nvars {
            return Err(PolyError::NvarsMismatch { left: self.nvars, right: p.nvars() }.into());
        }
        let mut eng = Engine { field: &self.field, order: self.order, steps: 0, budget: u64::MAX };
        let basis: Vec<Terms> = self.generators.iter().map(|g| eng.to_terms(g)).collect();
        let r = eng.normal_form(eng.to_terms(p), &basis, None)?;
        Ok(Polynomial::from_sorted_map(&self.field, self.nvars, r.into_iter().collect()))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// True when every variable has a pure power among the leading
    /// monomials. For a homogeneous ideal this means its projective zero set
    /// is empty.
    pub fn is_irrelevant(&self) -> bool {
        (0..self.nvars).all(|i| self.leading.iter().any(|m| m.pure_power_var() == Some(i) || m.is_one()))
    }

    pub fn quotient_dimension(&self) -> QuotientDimension {
        quotient_dimension_of(&self.leading, self.nvars)
    }

    /// Monomials outside the leading ideal, when there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        standard_monomials_of(&self.leading, self.nvars)
    }
}

/// Dimension of k[x]/(monomial ideal) for the given generators.
pub fn quotient_dimension_of(leading: &[Monomial], nvars: usize) -> QuotientDimension {
    match standard_monomials_of(leading, nvars) {
        Some(s) => QuotientDimension::Finite(s.len() as u64),
        None => QuotientDimension::Infinite,
    }
}

pub fn standard_monomials_of(leading: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    if leading.iter().any(|m| m.is_one()) {
        return Some(Vec::new());
    }
    let bounded = (0..nvars).all(|i| leading.iter().any(|m| m.pure_power_var() == Some(i)));
    if !bounded {
        return None;
    }
    // each standard monomial is generated once, by raising variables in
    // nondecreasing index order; multiples of non-standard monomials are
    // never standard so those branches are cut
    let mut out = Vec::new();
    let mut stack = vec![(Monomial::one(nvars), 0usize)];
    while let Some((m, from)) = stack.pop() {
        for j in from..nvars {
            let mut e = m.exponents().to_vec();
            e[j] += 1;
            let child = Monomial::new(e);
            if !leading.iter().any(|l| l.divides(&child)) {
                stack.push((child, j));
            }
        }
        out.push(m);
    }
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn polys(field: &Field, n: usize, texts: &[&str]) -> Vec<Polynomial> {
        texts.iter().map(|t| parse_polynomial(t, n, field).unwrap()).collect()
    }

    #[test]
    fn variables_are_already_reduced() {
        let q = Field::Rational;
        let gb = buchberger(&polys(&q, 2, &["x0", "x1"])).unwrap();
        assert_eq!(gb.generators(), &polys(&q, 2, &["x1", "x0"])[..]);
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Finite(1));
    }

    #[test]
    fn hand_traced_basis_contains_cube() {
        // S(x0^2, x0*x1 + x1^2) reduces to x1^3 (traced by hand)
        let q = Field::Rational;
        let gb = buchberger(&polys(&q, 2, &["x0^2", "x0*x1 + x1^2"])).unwrap();
        let cube = parse_polynomial("x1^3", 2, &q).unwrap();
        assert!(gb.generators().contains(&cube));
        assert!(gb.contains(&cube).unwrap());
        assert_eq!(gb.generators().len(), 3);
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Finite(4));
    }

    #[test]
    fn fermat_jacobian_is_monomial() {
        let f = Field::prime(101).unwrap();
        for m in 2..=5u32 {
            let g: Vec<Polynomial> = (0..4)
                .map(|i| Polynomial::monomial(&f, f.from_i64(m as i64), Monomial::var(4, i, m - 1)))
                .collect();
            let gb = buchberger(&g).unwrap();
            assert_eq!(gb.generators().len(), 4);
            assert!(gb.is_irrelevant());
            assert_eq!(gb.quotient_dimension(), QuotientDimension::Finite(((m - 1) as u64).pow(4)));
        }
    }

    #[test]
    fn quotient_dimension_cases() {
        let q = Field::Rational;
        let gb = buchberger(&polys(&q, 4, &["x0", "x1", "x2", "x3"])).unwrap();
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Finite(1));
        let gb = buchberger(&polys(&q, 2, &["x0"])).unwrap();
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Infinite);
        let gb = buchberger(&polys(&q, 2, &["x0 + 1", "x0"])).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.quotient_dimension(), QuotientDimension::Finite(0));
    }

    #[test]
    fn twisted_cubic_ideal() {
        // the three quadrics cutting out the twisted cubic form a Gröbner
        // basis already; reduction membership of x0*x3 - x1*x2
        let q = Field::Rational;
        let gb = buchberger(&polys(&q, 4, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"])).unwrap();
        assert_eq!(gb.generators().len(), 3);
        let member = parse_polynomial("x0^2*x3 - x0*x1*x2", 4, &q).unwrap();
        assert!(gb.contains(&member).unwrap());
        assert!(!gb.contains(&parse_polynomial("x0*x1", 4, &q).unwrap()).unwrap());
    }

    #[test]
    fn budget_is_reported() {
        let f = Field::prime(101).unwrap();
        let g = polys(&f, 3, &["x0*x1 + x2^2 + 1", "x0*x2 + x1^2 + 2", "x1*x2 + x0^2 + 3"]);
        let err = groebner_basis(&g, MonomialOrder::Grevlex, 5).unwrap_err();
        assert!(matches!(err, GroebnerError::BudgetExceeded { .. }));
        assert!(groebner_basis(&g, MonomialOrder::Grevlex, DEFAULT_STEP_BUDGET).is_ok());
    }

    #[test]
    fn homogenized_local_order_prefers_low_degree_in_x() {
        let o = MonomialOrder::HomogenizedLocal;
        // t*x1 (more t) beats x1^2 at equal total degree
        let a = Monomial::new(vec![1, 1, 0]);
        let b = Monomial::new(vec![0, 2, 0]);
        assert_eq!(o.cmp(&a, &b), Ordering::Greater);
        assert_eq!(o.cmp(&b, &b), Ordering::Equal);
    }
}
