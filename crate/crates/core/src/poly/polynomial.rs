use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Monomial, PolyError, ProjectivePoint, Scalar};

/// Sparse polynomial in `x_0, ..., x_{nvars-1}`. Terms live in a map keyed
/// by grevlex-ordered monomials and no stored coefficient is zero, so
/// structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        Polynomial { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, nvars: usize, c: Scalar) -> Self {
        Self::from_terms(field, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} out of range");
        Self::from_terms(field, nvars, [(Monomial::var(nvars, i, 1), field.one())])
    }

    pub fn monomial(field: &Field, coeff: Scalar, mono: Monomial) -> Self {
        let nvars = mono.nvars();
        Self::from_terms(field, nvars, [(mono, coeff)])
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(field: &Field, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Polynomial::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn from_sorted_map(field: &Field, nvars: usize, terms: BTreeMap<Monomial, Scalar>) -> Self {
        debug_assert!(terms.values().all(|c| !field.is_zero(c)));
        Polynomial { field: field.clone(), nvars, terms }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.field.add(existing, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the smallest monomial up to the leading one.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree() as i64).max().unwrap_or(-1)
    }

    /// Lowest total degree of a term (order of vanishing at the origin).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        if self.nvars != other.nvars {
            return Err(PolyError::NvarsMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = self.field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(slot) => *slot = self.field.add(slot, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !self.field.is_zero(c)).collect();
        Ok(Polynomial::from_sorted_map(&self.field, self.nvars, terms))
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.field, self.nvars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero(&self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))).collect();
        Polynomial::from_sorted_map(&self.field, self.nvars, terms)
    }

    /// Multiplies by the monomial `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero(&self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), self.field.mul(a, c))).collect();
        Polynomial::from_sorted_map(&self.field, self.nvars, terms)
    }

    /// Scales so the leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scalar_mul(&inv)
            }
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i >= self.nvars {
            return Err(PolyError::VariableOutOfRange { index: i, nvars: self.nvars });
        }
        let mut out = Polynomial::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[i] -= 1;
            out.add_term(dm, self.field.mul(c, &self.field.from_i64(e as i64)));
        }
        Ok(out)
    }

    /// All first partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.partial_derivative(i).unwrap()).collect()
    }

    /// Sum of the terms of total degree exactly `j`.
    pub fn homogeneous_component(&self, j: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == j)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Polynomial::from_sorted_map(&self.field, self.nvars, terms)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::CoordinateCount { expected: self.nvars, got: point.len() });
        }
        if let Some(bad) = point.iter().find(|v| !self.field.contains(v)) {
            return Err(PolyError::FieldMismatch {
                left: self.field.to_string(),
                right: format!("{bad:?}"),
            });
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in point.iter().zip(m.exponents()) {
                if *e > 0 {
                    t = f.mul(&t, &f.pow(v, *e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// The same polynomial with coefficients mapped into `target`
    /// (Q -> F_p reduction, F_p -> F_{p^e} inclusion).
    pub fn change_field(&self, target: &Field) -> Result<Polynomial, PolyError> {
        if *target == self.field {
            return Ok(self.clone());
        }
        let mut out = Polynomial::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), target.embed(c, &self.field)?);
        }
        Ok(out)
    }

    /// Substitutes `images[i]` for `x_i`; every image must live in a common
    /// ring with the same field.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::CoordinateCount { expected: self.nvars, got: images.len() });
        }
        let (field, nvars) = match images.first() {
            Some(g) => (g.field.clone(), g.nvars),
            None => (self.field.clone(), 0),
        };
        for g in images {
            if g.field != field || g.nvars != nvars {
                return Err(PolyError::NvarsMismatch { left: nvars, right: g.nvars });
            }
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(&field, nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&field, nvars, field.embed(c, &self.field)?);
            for (i, e) in m.exponents().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let pw = powers.entry((i, *e)).or_insert_with(|| images[i].pow(*e));
                t = &t * pw;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Fixes the variables with `Some(value)` and keeps the others, renumbered
    /// in their original order.
    pub fn specialize(&self, values: &[Option<Scalar>]) -> Result<Polynomial, PolyError> {
        if values.len() != self.nvars {
            return Err(PolyError::CoordinateCount { expected: self.nvars, got: values.len() });
        }
        let keep: Vec<usize> = (0..self.nvars).filter(|i| values[*i].is_none()).collect();
        let f = &self.field;
        let mut out = Polynomial::zero(f, keep.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (i, e) in m.exponents().iter().enumerate() {
                if let (Some(v), true) = (&values[i], *e > 0) {
                    coeff = f.mul(&coeff, &f.pow(v, *e as u64));
                }
            }
            let exps = keep.iter().map(|i| m.exponents()[*i]).collect();
            out.add_term(Monomial::new(exps), coeff);
        }
        Ok(out)
    }

    /// Re-indexes variables: `x_i` becomes `x_{map[i]}` in a ring with
    /// `nvars` variables.
    pub fn relabel(&self, map: &[usize], nvars: usize) -> Polynomial {
        assert_eq!(map.len(), self.nvars);
        let mut out = Polynomial::zero(&self.field, nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Views the polynomial in a ring with more variables (new ones unused).
    pub fn extend_vars(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars);
        let map: Vec<usize> = (0..self.nvars).collect();
        self.relabel(&map, nvars)
    }

    /// Affine equation of V(f) near `p`: dehomogenize in the chart where the
    /// first nonzero coordinate of `p` is 1, then move `p` to the origin. The
    /// result has `nvars - 1` variables (the chart variable is dropped).
    pub fn translate_and_dehomogenize(&self, p: &ProjectivePoint) -> Result<Polynomial, PolyError> {
        if !self.is_homogeneous() {
            return Err(PolyError::NotHomogeneous);
        }
        if p.coords().len() != self.nvars {
            return Err(PolyError::CoordinateCount { expected: self.nvars, got: p.coords().len() });
        }
        let (f, p) = self.common_field_with(p)?;
        let field = f.field.clone();
        let chart = p.chart();
        let n = self.nvars - 1;
        let mut images = Vec::with_capacity(self.nvars);
        let mut next = 0;
        for (j, c) in p.coords().iter().enumerate() {
            if j == chart {
                images.push(Polynomial::one(&field, n));
            } else {
                let y = Polynomial::var(&field, n, next);
                images.push(&y + &Polynomial::constant(&field, n, c.clone()));
                next += 1;
            }
        }
        f.compose(&images)
    }

    /// Brings the polynomial and the point into one field.
    pub(crate) fn common_field_with(
        &self,
        p: &ProjectivePoint,
    ) -> Result<(Polynomial, ProjectivePoint), PolyError> {
        if p.field() == &self.field {
            return Ok((self.clone(), p.clone()));
        }
        if let Ok(f) = self.change_field(p.field()) {
            return Ok((f, p.clone()));
        }
        Ok((self.clone(), p.change_field(&self.field)?))
    }

    /// True iff every monomial is divisible by one of the listed variables,
    /// i.e. the linear space `{x_i = 0 : i in vars}` lies on V(f).
    pub fn in_coordinate_ideal(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|m| vars.iter().any(|&i| i < self.nvars && m.exponents()[i] > 0))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scalar_mul(&self.field.from_i64(-1))
    }
}
