//! Coefficient fields. Exact rationals are the reference field; a prime
//! field is available as a fast heuristic path.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::bareiss_rank;

#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + Send + Sync + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    /// Short engine label used in reports.
    fn label(&self) -> String;
    /// True when results over this field are only heuristic for characteristic zero.
    fn is_heuristic(&self) -> bool;

    /// Rank of a dense matrix given as rows of length `ncols`.
    #[allow(clippy::needless_range_loop)]
    fn rank(&self, mut rows: Vec<Vec<Self::Elem>>, ncols: usize) -> usize {
        let mut rank = 0;
        for col in 0..ncols {
            let Some(p) = (rank..rows.len()).find(|&r| !self.is_zero(&rows[r][col])) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = self.inv(&rows[rank][col]);
            for r in rank + 1..rows.len() {
                if self.is_zero(&rows[r][col]) {
                    continue;
                }
                let factor = self.mul(&rows[r][col], &inv);
                for c in col..ncols {
                    if self.is_zero(&rows[rank][c]) {
                        continue;
                    }
                    let t = self.mul(&factor, &rows[rank][c]);
                    rows[r][c] = self.sub(&rows[r][c], &t);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn label(&self) -> String {
        "rational".into()
    }
    fn is_heuristic(&self) -> bool {
        false
    }

    /// Fraction-free: rows are cleared of denominators, then Bareiss.
    fn rank(&self, rows: Vec<Vec<BigRational>>, ncols: usize) -> usize {
        let int_rows = rows.into_iter().map(|r| clear_denominators(&r)).collect();
        bareiss_rank(int_rows, ncols)
    }
}

/// Scale a rational row by the lcm of its denominators.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|q| !q.is_zero())
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .map(|q| {
            if q.is_zero() {
                BigInt::zero()
            } else {
                q.numer() * (&lcm / q.denom())
            }
        })
        .collect()
}

/// Integers modulo a prime `p` with `2^30 < p < 2^62`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

pub const DEFAULT_PRIME: u64 = 2_147_483_647;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 1 << 30 || p >= 1 << 62 || !is_prime_u64(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(acc, base);
            }
            base = self.mul_mod(base, base);
            e >>= 1;
        }
        acc
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = v.mod_floor(&m);
        r.to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_mod(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn from_i64(&self, v: i64) -> u64 {
        let m = self.p as i128;
        (((v as i128) % m + m) % m) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let den = self.reduce_big(q.denom());
        if den == 0 {
            return Err(Error::NotRepresentable(q.to_string()));
        }
        let num = self.reduce_big(q.numer());
        Ok(self.mul_mod(num, self.inv(&den)))
    }
    fn label(&self) -> String {
        format!("prime-field-heuristic(p={})", self.p)
    }
    fn is_heuristic(&self) -> bool {
        true
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_small_or_composite() {
        assert!(PrimeField::new(101).is_err());
        assert!(PrimeField::new((1 << 31) + 1).is_err());
        assert!(PrimeField::new(DEFAULT_PRIME).is_ok());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let a = f.from_i64(-3);
        assert_eq!(f.add(&a, &3), 0);
        let inv = f.inv(&a);
        assert_eq!(f.mul(&a, &inv), 1);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let h = f.from_rational(&half).unwrap();
        assert_eq!(f.mul(&h, &2), 1);
    }

    #[test]
    fn clear_denominators_scales_row() {
        let row = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::zero(),
            BigRational::new((-2).into(), 3.into()),
        ];
        let ints = clear_denominators(&row);
        assert_eq!(
            ints,
            vec![BigInt::from(3), BigInt::zero(), BigInt::from(-4)]
        );
    }
}
