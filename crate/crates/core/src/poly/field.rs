//! Coefficient fields: the rationals, prime fields F_p and their extensions
//! F_{p^e}.
//!
//! A [`Field`] is a small runtime descriptor; elements are [`Scalar`]s and
//! every arithmetic operation goes through the field so that the modulus is
//! always known. Rationals are `BigRational`, which keeps them in lowest
//! terms with a positive denominator.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::univariate as fpx;
use super::PolyError;

/// Largest supported characteristic. Products of two residues fit in u64.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct GaloisField {
    p: u64,
    degree: usize,
    /// Monic modulus, low degree first, length `degree + 1`.
    modulus: Vec<u64>,
}

impl GaloisField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
    Extension(Arc<GaloisField>),
}

/// A field element. Which variant is valid depends on the owning [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Modular(u64),
    /// Residue modulo the extension modulus, low degree first, fixed length.
    Residue(Vec<u64>),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, PolyError> {
        if !fpx::is_prime(p) || p >= MAX_PRIME {
            return Err(PolyError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// F_{p^e}, built from the lexicographically smallest monic irreducible
    /// modulus of degree `e`. `e = 1` gives the prime field itself.
    pub fn galois(p: u64, e: usize) -> Result<Field, PolyError> {
        let base = Field::prime(p)?;
        if e == 0 {
            return Err(PolyError::BadExtensionDegree(e));
        }
        if e == 1 {
            return Ok(base);
        }
        if (p as f64).powi(e as i32) > 1e15 {
            return Err(PolyError::BadExtensionDegree(e));
        }
        let modulus = fpx::smallest_irreducible(p, e);
        Ok(Field::Extension(Arc::new(GaloisField { p, degree: e, modulus })))
    }

    /// F_p[x]/(modulus) for a caller-chosen monic irreducible modulus.
    pub fn extension_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Field, PolyError> {
        Field::prime(p)?;
        let mut m = modulus;
        fpx::trim(&mut m);
        if m.len() < 3 || m.last() != Some(&1) || !fpx::is_irreducible(&m, p) {
            return Err(PolyError::ReducibleModulus);
        }
        let degree = m.len() - 1;
        Ok(Field::Extension(Arc::new(GaloisField { p, degree, modulus: m })))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
            Field::Extension(g) => g.p,
        }
    }

    pub fn extension_degree(&self) -> usize {
        match self {
            Field::Extension(g) => g.degree,
            _ => 1,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u128> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p as u128),
            Field::Extension(g) => Some((g.p as u128).pow(g.degree as u32)),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Field::Rational)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(_) => Scalar::Modular(0),
            Field::Extension(g) => Scalar::Residue(vec![0; g.degree]),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular(v.rem_euclid(*p as i64) as u64),
            Field::Extension(g) => {
                let mut r = vec![0; g.degree];
                r[0] = v.rem_euclid(g.p as i64) as u64;
                Scalar::Residue(r)
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                let r = v.mod_floor(&p).to_i64().expect("residue fits");
                self.from_i64(r)
            }
        }
    }

    /// Maps a rational into this field; fails when the denominator vanishes.
    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar, PolyError> {
        match self {
            Field::Rational => Ok(Scalar::Rational(v.clone())),
            _ => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                self.div(&num, &den).ok_or_else(|| PolyError::NotRepresentable {
                    value: v.to_string(),
                    field: self.to_string(),
                })
            }
        }
    }

    /// Image of `x` (an element of `from`) in `self`. Supports the identity,
    /// Q -> F_p, Q -> F_{p^e} and F_p -> F_{p^e}.
    pub fn embed(&self, x: &Scalar, from: &Field) -> Result<Scalar, PolyError> {
        if self == from {
            return Ok(x.clone());
        }
        match (from, x) {
            (Field::Rational, Scalar::Rational(q)) => self.from_rational(q),
            (Field::Prime(p), Scalar::Modular(v)) if self.characteristic() == *p => {
                Ok(self.from_i64(*v as i64))
            }
            _ => Err(PolyError::FieldMismatch {
                left: from.to_string(),
                right: self.to_string(),
            }),
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x) {
            (Field::Rational, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Modular(v)) => v < p,
            (Field::Extension(g), Scalar::Residue(r)) => {
                r.len() == g.degree && r.iter().all(|c| *c < g.p)
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, x: &Scalar) -> bool {
        match x {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular(v) => *v == 0,
            Scalar::Residue(r) => r.iter().all(|c| *c == 0),
        }
    }

    pub fn is_one(&self, x: &Scalar) -> bool {
        match x {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular(v) => *v == 1,
            Scalar::Residue(r) => r[0] == 1 && r[1..].iter().all(|c| *c == 0),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Field::Prime(p), Scalar::Modular(x), Scalar::Modular(y)) => Scalar::Modular((x + y) % p),
            (Field::Extension(g), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(x.iter().zip(y).map(|(u, v)| (u + v) % g.p).collect())
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rational, Scalar::Rational(x)) => Scalar::Rational(-x),
            (Field::Prime(p), Scalar::Modular(x)) => Scalar::Modular((p - x) % p),
            (Field::Extension(g), Scalar::Residue(x)) => {
                Scalar::Residue(x.iter().map(|u| (g.p - u) % g.p).collect())
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Field::Prime(p), Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular(fpx::mulmod(*x, *y, *p))
            }
            (Field::Extension(g), Scalar::Residue(x), Scalar::Residue(y)) => {
                let prod = fpx::rem(&fpx::mul(x, y, g.p), &g.modulus, g.p);
                let mut r = vec![0; g.degree];
                r[..prod.len()].copy_from_slice(&prod);
                Scalar::Residue(r)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &Scalar, mut exp: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Rational, Scalar::Rational(x)) => Some(Scalar::Rational(x.recip())),
            (Field::Prime(p), Scalar::Modular(x)) => fpx::inv_mod(*x, *p).map(Scalar::Modular),
            (Field::Extension(_), _) => {
                let q = self.order().unwrap();
                Some(self.pow(a, (q - 2) as u64))
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// The `index`-th element of a finite field in a fixed enumeration order:
    /// base-p digits of `index` are the residue coefficients, low degree first.
    pub fn element(&self, index: u128) -> Scalar {
        match self {
            Field::Rational => panic!("the rationals cannot be enumerated"),
            Field::Prime(p) => Scalar::Modular((index % *p as u128) as u64),
            Field::Extension(g) => {
                let mut rest = index;
                let mut r = vec![0; g.degree];
                for c in r.iter_mut() {
                    *c = (rest % g.p as u128) as u64;
                    rest /= g.p as u128;
                }
                Scalar::Residue(r)
            }
        }
    }

    /// All elements of a finite field, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> + '_ {
        let q = self.order().expect("finite field");
        (0..q).map(move |i| self.element(i))
    }

    /// True when the element lies in the prime subfield.
    pub fn in_prime_subfield(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Residue(r) => r[1..].iter().all(|c| *c == 0),
            _ => true,
        }
    }

    /// Text form of an element: rationals as `a` or `a/b`, prime-field
    /// residues in `[0, p)`, extension residues as `(c0+c1*a+...)` in the
    /// generator `a` of the modulus.
    pub fn format(&self, x: &Scalar) -> String {
        match x {
            Scalar::Rational(q) => q.to_string(),
            Scalar::Modular(v) => v.to_string(),
            Scalar::Residue(r) => {
                let mut parts = Vec::new();
                for (i, c) in r.iter().enumerate() {
                    if *c == 0 {
                        continue;
                    }
                    parts.push(match i {
                        0 => c.to_string(),
                        1 if *c == 1 => "a".to_string(),
                        1 => format!("{c}*a"),
                        _ if *c == 1 => format!("a^{i}"),
                        _ => format!("{c}*a^{i}"),
                    });
                }
                if parts.is_empty() {
                    "0".to_string()
                } else if parts.len() == 1 && r[1..].iter().all(|c| *c == 0) {
                    parts.remove(0)
                } else {
                    format!("({})", parts.join("+"))
                }
            }
        }
    }

    /// For the rationals: true when `x` is a negative number. Finite-field
    /// elements are never negative.
    pub(crate) fn is_negative(&self, x: &Scalar) -> bool {
        matches!(x, Scalar::Rational(q) if q.is_negative())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
            Field::Extension(g) => write!(f, "F{}^{}", g.p, g.degree),
        }
    }
}

impl Scalar {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }
}

/// Rational reconstruction of a residue modulo `p`: the unique `a/b` with
/// `|a|, b <= sqrt(p/2)` congruent to `r`, if one exists.
pub fn rational_reconstruction(r: u64, p: u64) -> Option<BigRational> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, (r % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_reduction_mod_p() {
        let f = Field::prime(7).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half).unwrap(), Scalar::Modular(4));
        let seventh = BigRational::new(1.into(), 7.into());
        assert!(matches!(f.from_rational(&seventh), Err(PolyError::NotRepresentable { .. })));
    }

    #[test]
    fn rationals_stay_normalized() {
        let q = Field::Rational;
        let a = Scalar::Rational(BigRational::new(2.into(), (-4).into()));
        let b = q.add(&a, &q.from_i64(1));
        let Scalar::Rational(r) = b else { unreachable!() };
        assert_eq!(r, BigRational::new(1.into(), 2.into()));
        assert!(r.denom().is_positive());
    }

    #[test]
    fn extension_field_axioms() {
        let f = Field::galois(5, 2).unwrap();
        assert_eq!(f.order(), Some(25));
        let elems: Vec<Scalar> = f.elements().collect();
        for a in &elems {
            if !f.is_zero(a) {
                let ai = f.inv(a).unwrap();
                assert!(f.is_one(&f.mul(a, &ai)));
            }
            // Frobenius fixes exactly the prime subfield
            let frob = f.pow(a, 5);
            assert_eq!(frob == *a, f.in_prime_subfield(a));
            // every element satisfies x^q = x
            assert_eq!(f.pow(a, 25), *a);
        }
    }

    #[test]
    fn embeddings() {
        let fp = Field::prime(11).unwrap();
        let fq = Field::galois(11, 2).unwrap();
        let x = fq.embed(&Scalar::Modular(3), &fp).unwrap();
        assert_eq!(x, Scalar::Residue(vec![3, 0]));
        let q = Field::Rational;
        let y = fq.embed(&q.from_i64(-1), &q).unwrap();
        assert_eq!(y, Scalar::Residue(vec![10, 0]));
        assert!(fp.embed(&x, &fq).is_err());
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let p = 101;
        let f = Field::prime(p).unwrap();
        for (a, b) in [(1i64, 1i64), (0, 1), (-1, 1), (1, 2), (-3, 5), (7, 1)] {
            let q = BigRational::new(a.into(), b.into());
            let Scalar::Modular(r) = f.from_rational(&q).unwrap() else { unreachable!() };
            assert_eq!(rational_reconstruction(r, p), Some(q));
        }
    }

    #[test]
    fn rejects_non_primes() {
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(91).is_err());
        assert!(Field::extension_with_modulus(5, vec![4, 0, 1]).is_err()); // x^2 - 1
        assert!(Field::extension_with_modulus(5, vec![2, 0, 1]).is_ok()); // x^2 + 2
    }
}
