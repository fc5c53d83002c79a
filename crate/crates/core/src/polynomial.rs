use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::monomial::{default_names, Monomial};

/// A polynomial with exact rational coefficients. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let n = m.nvars();
        let mut terms = BTreeMap::new();
        terms.insert(m, BigRational::one());
        Polynomial { n, terms }
    }

    /// Sum of the given terms; repeated monomials are combined.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Polynomial::zero(n);
        for (m, c) in terms {
            assert_eq!(m.nvars(), n, "monomial lives in a different ring");
            p.add_term(m, c);
        }
        p
    }

    pub fn from_int_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, i64)>) -> Self {
        Self::from_terms(
            n,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::new(e), BigRational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(m.clone())
            .or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Degrees of the terms, ascending, without repeats.
    pub fn term_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(Monomial::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.term_degrees().len() <= 1
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Option<u32> {
        match self.term_degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// The monomial if this polynomial is a scalar multiple of one.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    pub fn mul_monomial(&self, u: &Monomial) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(u), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.display_with(names);
            if abs.is_one() {
                out.push_str(&mono);
            } else if m.is_one() {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{}*{}", abs, mono));
            }
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names(self.n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_vanish() {
        let p = Polynomial::from_int_terms(2, [(vec![1, 0], 2), (vec![1, 0], -2)]);
        assert!(p.is_zero());
    }

    #[test]
    fn homogeneity() {
        let p = Polynomial::from_int_terms(4, [(vec![1, 3, 0, 0], 1), (vec![0, 0, 4, 0], 1)]);
        assert!(p.is_homogeneous());
        assert_eq!(p.degree(), Some(4));
        let q = Polynomial::from_int_terms(2, [(vec![1, 0], 1), (vec![0, 2], 1)]);
        assert!(!q.is_homogeneous());
        assert_eq!(q.term_degrees(), vec![1, 2]);
    }

    #[test]
    fn display_orders_terms_descending() {
        let p = Polynomial::from_int_terms(4, [(vec![0, 0, 4, 0], 1), (vec![1, 3, 0, 0], 1)]);
        assert_eq!(p.to_string(), "x1*x2^3 + x3^4");
        let q = Polynomial::from_int_terms(2, [(vec![1, 0], -3), (vec![0, 1], 1)]);
        assert_eq!(q.to_string(), "-3*x1 + x2");
    }
}
