//! Integer polynomials with exponents packed into a `u128`, three bits per
//! variable. Used for large symbolic identity checks where every
//! coefficient is an integer and no variable exceeds degree 7.

use super::poly::{Monomial, Polynomial, Var};
use super::rational::rat;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

const BITS: u32 = 3;
/// Number of variables that fit in one key.
pub const MAX_VARS: u32 = 128 / BITS;
const FIELD_LOW: u128 = {
    let mut m = 0u128;
    let mut k = 1;
    while k <= MAX_VARS {
        m |= 1u128 << (k * BITS);
        k += 1;
    }
    m
};

/// Sum of two packed exponent vectors; panics if a field overflows.
fn add_keys(a: u128, b: u128) -> u128 {
    let (s, wrapped) = a.overflowing_add(b);
    if wrapped || (a ^ b ^ s) & FIELD_LOW != 0 {
        panic!("packed exponent overflow");
    }
    s
}

/// Sorted list of `(exponent key, coefficient)` with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PackedPoly {
    terms: Vec<(u128, i128)>,
}

impl PackedPoly {
    pub fn var(v: Var) -> Self {
        assert!(v.0 < MAX_VARS, "variable index {} too large to pack", v.0);
        PackedPoly {
            terms: vec![(1u128 << (v.0 * BITS), 1)],
        }
    }

    pub fn int(c: i128) -> Self {
        if c == 0 {
            Self::default()
        } else {
            PackedPoly { terms: vec![(0, c)] }
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn normalize(mut raw: Vec<(u128, i128)>) -> Self {
        raw.sort_unstable_by_key(|t| t.0);
        let mut terms: Vec<(u128, i128)> = Vec::with_capacity(raw.len());
        for (k, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == k => {
                    last.1 = last.1.checked_add(c).expect("coefficient overflow");
                }
                _ => terms.push((k, c)),
            }
            if terms.last().is_some_and(|t| t.1 == 0) {
                terms.pop();
            }
        }
        PackedPoly { terms }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for &(k, c) in &self.terms {
            let pairs: Vec<(Var, u32)> = (0..MAX_VARS)
                .filter_map(|v| {
                    let e = ((k >> (v * BITS)) & 0b111) as u32;
                    (e > 0).then_some((Var(v), e))
                })
                .collect();
            let c = i64::try_from(c)
                .map(rat)
                .unwrap_or_else(|_| num_rational::BigRational::from_integer(num_bigint::BigInt::from(c)));
            p.add_term(Monomial::from_pairs(pairs), c);
        }
        p
    }
}

impl Zero for PackedPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PackedPoly {
    fn one() -> Self {
        Self::int(1)
    }
}

impl Add for PackedPoly {
    type Output = PackedPoly;
    fn add(self, rhs: PackedPoly) -> PackedPoly {
        let mut raw = self.terms;
        raw.extend(rhs.terms);
        Self::normalize(raw)
    }
}

impl Neg for PackedPoly {
    type Output = PackedPoly;
    fn neg(self) -> PackedPoly {
        PackedPoly {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for PackedPoly {
    type Output = PackedPoly;
    fn sub(self, rhs: PackedPoly) -> PackedPoly {
        self + (-rhs)
    }
}

impl Mul for PackedPoly {
    type Output = PackedPoly;
    fn mul(self, rhs: PackedPoly) -> PackedPoly {
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for &(ka, ca) in &self.terms {
            for &(kb, cb) in &rhs.terms {
                raw.push((add_keys(ka, kb), ca.checked_mul(cb).expect("coefficient overflow")));
            }
        }
        Self::normalize(raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_rational_polynomials() {
        let (a, b, c) = (Var(0), Var(5), Var(40));
        let pa = PackedPoly::var(a) + PackedPoly::var(b) * PackedPoly::int(3) - PackedPoly::int(2);
        let pc = PackedPoly::var(c) - PackedPoly::var(a);
        let prod = pa.clone() * pc.clone() * pa.clone();
        let qa = &(&Polynomial::var(a) + &Polynomial::var(b).scale(&rat(3))) - &Polynomial::int(2);
        let qc = &Polynomial::var(c) - &Polynomial::var(a);
        assert_eq!(prod.to_polynomial(), &(&qa * &qc) * &qa);
        assert!((pa.clone() - pa).is_zero());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn exponent_overflow_is_caught() {
        let x = PackedPoly::var(Var(2));
        let mut p = PackedPoly::one();
        for _ in 0..8 {
            p = p * x.clone();
        }
    }
}
