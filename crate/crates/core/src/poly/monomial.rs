use std::cmp::Ordering;
use std::fmt;

/// Exponent vector. `Ord` is graded reverse lexicographic, so a
/// `BTreeMap<Monomial, _>` iterates from the smallest monomial to the
/// leading one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable when this is a pure power `x_i^e`, e > 0.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, e) in self.0.iter().enumerate() {
            if *e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }
}

/// Graded reverse lexicographic comparison.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable is larger
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, e) in self.0.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of total degree `degree` in `nvars` variables, in
/// descending lexicographic order of exponent vectors.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_examples() {
        // x0 > x1 > x2 among variables
        let x0 = Monomial::var(3, 0, 1);
        let x1 = Monomial::var(3, 1, 1);
        let x2 = Monomial::var(3, 2, 1);
        assert!(x0 > x1 && x1 > x2);
        // x1^2 > x0*x2 in grevlex (differs from lex)
        let a = Monomial::new(vec![0, 2, 0]);
        let b = Monomial::new(vec![1, 0, 1]);
        assert!(a > b);
        // degree dominates
        assert!(Monomial::new(vec![0, 0, 2]) > x0);
    }

    #[test]
    fn degree_enumeration() {
        assert_eq!(monomials_of_degree(5, 1).len(), 5);
        assert_eq!(monomials_of_degree(5, 3).len(), 35);
        assert_eq!(monomials_of_degree(5, 0), vec![Monomial::one(5)]);
        assert_eq!(monomials_of_degree(2, 2)[0], Monomial::new(vec![2, 0]));
    }
}
