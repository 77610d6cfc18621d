use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Field, PolyError, Scalar};

/// A point of projective space, normalized so that its first nonzero
/// coordinate is 1. Equality of points is equality of normalized coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    field: Field,
    coords: Vec<Scalar>,
}

impl PartialOrd for Field {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Field {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |f: &Field| {
            let modulus = match f {
                Field::Extension(g) => g.modulus().to_vec(),
                _ => Vec::new(),
            };
            (f.characteristic(), f.extension_degree(), modulus)
        };
        key(self).cmp(&key(other))
    }
}

impl ProjectivePoint {
    pub fn new(field: &Field, coords: Vec<Scalar>) -> Result<Self, PolyError> {
        if let Some(bad) = coords.iter().find(|c| !field.contains(c)) {
            return Err(PolyError::FieldMismatch {
                left: field.to_string(),
                right: format!("{bad:?}"),
            });
        }
        let lead = coords
            .iter()
            .find(|c| !field.is_zero(c))
            .cloned()
            .ok_or(PolyError::ZeroPoint)?;
        let inv = field.inv(&lead).unwrap();
        let coords = coords.iter().map(|c| field.mul(c, &inv)).collect();
        Ok(ProjectivePoint { field: field.clone(), coords })
    }

    pub fn from_ints(field: &Field, coords: &[i64]) -> Result<Self, PolyError> {
        Self::new(field, coords.iter().map(|c| field.from_i64(*c)).collect())
    }

    pub fn from_rationals(field: &Field, coords: &[BigRational]) -> Result<Self, PolyError> {
        let cs = coords.iter().map(|c| field.from_rational(c)).collect::<Result<Vec<_>, _>>()?;
        Self::new(field, cs)
    }

    /// The coordinate point `e_i` in `n + 1` coordinates.
    pub fn coordinate(field: &Field, len: usize, i: usize) -> Self {
        let mut c = vec![field.zero(); len];
        c[i] = field.one();
        ProjectivePoint { field: field.clone(), coords: c }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Index of the first nonzero coordinate, which equals 1.
    pub fn chart(&self) -> usize {
        self.coords.iter().position(|c| !self.field.is_zero(c)).unwrap()
    }

    pub fn change_field(&self, target: &Field) -> Result<Self, PolyError> {
        let cs = self
            .coords
            .iter()
            .map(|c| target.embed(c, &self.field))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(target, cs)
    }

    /// Coordinates as text, in the field's element notation.
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.field.format(c)).collect()
    }

    /// Integer coordinates when the point is rational with a common
    /// denominator cleared (primitive integer vector, first nonzero positive).
    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        use num_integer::Integer;
        use num_traits::{One, Zero};
        let qs: Vec<&BigRational> = self.coords.iter().map(|c| c.as_rational()).collect::<Option<_>>()?;
        let den = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        Some(ints.into_iter().map(|x| x / &g).collect())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coord_strings().join(":"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let q = Field::Rational;
        let a = ProjectivePoint::from_ints(&q, &[0, 2, 4]).unwrap();
        let b = ProjectivePoint::from_ints(&q, &[0, -1, -2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.chart(), 1);
        assert_eq!(a.to_string(), "[0:1:2]");
        assert_eq!(ProjectivePoint::from_ints(&q, &[0, 0]), Err(PolyError::ZeroPoint));
    }

    #[test]
    fn reduction_mod_p() {
        let q = Field::Rational;
        let f5 = Field::prime(5).unwrap();
        let a = ProjectivePoint::from_ints(&q, &[2, 1]).unwrap(); // [1:1/2]
        let b = a.change_field(&f5).unwrap();
        assert_eq!(b, ProjectivePoint::from_ints(&f5, &[1, 3]).unwrap());
        assert_eq!(a.integer_coords().unwrap(), vec![BigInt::from(2), BigInt::from(1)]);
    }
}
