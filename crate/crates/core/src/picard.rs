//! Picard lattice of the blow-up of `P^{n-3}` at `n` points, its Weyl group
//! action, and the spin weight lattice of type `D_n`.
//!
//! Classes are written in the basis `H, E_1, ..., E_n` with
//! `H^2 = n - 4`, `E_i E_j = -δ_ij`, `H E_j = 0`.

use crate::algebra::rational::{self, Rational};
use crate::algebra::RationalMatrix;
use crate::combinat::EvenSubset;
use crate::spinor::Multidegree;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A divisor class `a H + sum b_i E_i`, stored as `[a, b_1, ..., b_n]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PicClass(#[serde(with = "rational::serde_vec")] pub Vec<Rational>);

impl PicClass {
    pub fn zero(n: usize) -> Self {
        PicClass(vec![Rational::zero(); n + 1])
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn h(n: usize) -> Self {
        let mut c = Self::zero(n);
        c.0[0] = Rational::one();
        c
    }

    pub fn e(n: usize, i: usize) -> Self {
        let mut c = Self::zero(n);
        c.0[i] = Rational::one();
        c
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        PicClass(coords.iter().map(|&v| rational::rat(v)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PicClass(self.0.iter().map(|v| v * c).collect())
    }

    pub fn intersect(&self, other: &PicClass) -> Rational {
        assert_eq!(self.n(), other.n());
        let n = self.n() as i64;
        let mut acc = &self.0[0] * &other.0[0] * rational::rat(n - 4);
        for i in 1..self.0.len() {
            acc -= &self.0[i] * &other.0[i];
        }
        acc
    }

    pub fn self_intersection(&self) -> Rational {
        self.intersect(self)
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Add<&PicClass> for &PicClass {
    type Output = PicClass;
    fn add(self, rhs: &PicClass) -> PicClass {
        PicClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&PicClass> for &PicClass {
    type Output = PicClass;
    fn sub(self, rhs: &PicClass) -> PicClass {
        PicClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &PicClass {
    type Output = PicClass;
    fn neg(self) -> PicClass {
        PicClass(self.0.iter().map(|a| -a).collect())
    }
}

/// `Δ = H - E_1 - ... - E_n`.
pub fn delta(n: usize) -> PicClass {
    let mut c = PicClass::h(n);
    for i in 1..=n {
        c.0[i] = rational::rat(-1);
    }
    c
}

/// `K = -(n-2) H + (n-4) sum E_i`.
pub fn canonical(n: usize) -> PicClass {
    let mut c = PicClass::zero(n);
    c.0[0] = rational::rat(-(n as i64 - 2));
    for i in 1..=n {
        c.0[i] = rational::rat(n as i64 - 4);
    }
    c
}

/// `α_i = E_i - E_{i+1}` for `i < n` and `α_n = H - E_1 - ... - E_{n-2}`.
pub fn simple_roots(n: usize) -> Vec<PicClass> {
    let mut out: Vec<PicClass> = (1..n).map(|i| &PicClass::e(n, i) - &PicClass::e(n, i + 1)).collect();
    let mut last = PicClass::h(n);
    for i in 1..=n - 2 {
        last.0[i] = rational::rat(-1);
    }
    out.push(last);
    out
}

/// `s_α(D) = D + (D·α) α`, the reflection in a root with `α^2 = -2`.
pub fn reflect(d: &PicClass, alpha: &PicClass) -> PicClass {
    d + &alpha.scale(&d.intersect(alpha))
}

/// Orbit of `d` under the group generated by reflections in `roots`.
/// Stops with `None` once more than `limit` classes have been found.
pub fn weyl_orbit(d: &PicClass, roots: &[PicClass], limit: usize) -> Option<BTreeSet<PicClass>> {
    let mut seen = BTreeSet::from([d.clone()]);
    let mut queue = VecDeque::from([d.clone()]);
    while let Some(c) = queue.pop_front() {
        for r in roots {
            let next = reflect(&c, r);
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    Some(seen)
}

/// `D(B) = sΔ + sum_{b in B ∪ {n}} E_b` if `n ∉ B`, and
/// `(s-1)Δ + sum_{b in B \ {n}} E_b` if `n ∈ B`, where `|B| = 2s`.
pub fn divisor_d(b: &EvenSubset) -> PicClass {
    let n = b.n();
    let s = b.half() as i64;
    let mut c = if b.contains(n) {
        delta(n).scale(&rational::rat(s - 1))
    } else {
        &delta(n).scale(&rational::rat(s)) + &PicClass::e(n, n)
    };
    for &i in b.elems() {
        if i != n {
            c = &c + &PicClass::e(n, i);
        }
    }
    c
}

/// A vector `sum c_i L_i` of the `D_n` weight lattice, `L_i L_j = -δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector(pub Vec<Rational>);

impl WeightVector {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![Rational::zero(); n];
        v[i - 1] = Rational::one();
        WeightVector(v)
    }

    pub fn intersect(&self, other: &WeightVector) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc - a * b)
    }
}

/// `β_i = L_i - L_{i+1}` (i ≤ n-2), `β_{n-1} = L_{n-1} + L_n`, `β_n = L_{n-1} - L_n`.
pub fn weight_roots(n: usize) -> Vec<WeightVector> {
    let one = Rational::one();
    let mut out = Vec::with_capacity(n);
    for i in 1..=n - 2 {
        let mut v = vec![Rational::zero(); n];
        v[i - 1] = one.clone();
        v[i] = -one.clone();
        out.push(WeightVector(v));
    }
    let mut plus = vec![Rational::zero(); n];
    plus[n - 2] = one.clone();
    plus[n - 1] = one.clone();
    out.push(WeightVector(plus));
    let mut minus = vec![Rational::zero(); n];
    minus[n - 2] = one.clone();
    minus[n - 1] = -one;
    out.push(WeightVector(minus));
    out
}

/// The half-spin weight `W(B) = (sum_{i in B} L_i - sum_{i ∉ B} L_i) / 2`.
pub fn spin_weight(b: &EvenSubset) -> WeightVector {
    let half = rational::ratio(1, 2);
    WeightVector(
        (1..=b.n())
            .map(|i| if b.contains(i) { half.clone() } else { -half.clone() })
            .collect(),
    )
}

/// The linear map `T(L_i) = E_i + Δ/2` (i < n), `T(L_n) = -E_n - Δ/2`.
pub fn weight_to_pic(w: &WeightVector) -> PicClass {
    let n = w.n();
    let half_delta = delta(n).scale(&rational::ratio(1, 2));
    let mut out = PicClass::zero(n);
    for (k, c) in w.0.iter().enumerate() {
        let i = k + 1;
        let image = if i < n {
            &PicClass::e(n, i) + &half_delta
        } else {
            -&(&PicClass::e(n, n) + &half_delta)
        };
        out = &out + &image.scale(c);
    }
    out
}

/// Image of the multigrading basis: `g_0 -> E_n`, `g_i -> E_i + Δ/2`
/// (i < n), `g_n -> -E_n - Δ/2`.
pub fn multidegree_generator_image(n: usize, k: usize) -> PicClass {
    if k == 0 {
        return PicClass::e(n, n);
    }
    let mut w = vec![Rational::zero(); n];
    w[k - 1] = Rational::one();
    weight_to_pic(&WeightVector(w))
}

pub fn multidegree_to_pic(d: &Multidegree) -> PicClass {
    let n = d.n();
    d.0.iter().enumerate().fold(PicClass::zero(n), |acc, (k, &c)| {
        &acc + &multidegree_generator_image(n, k).scale(&rational::rat(c as i64))
    })
}

/// Matrix of the multidegree map; column `k` is the image of `g_k`.
pub fn multidegree_map_matrix(n: usize) -> RationalMatrix {
    let cols: Vec<PicClass> = (0..=n).map(|k| multidegree_generator_image(n, k)).collect();
    let rows = (0..=n).map(|r| cols.iter().map(|c| c.0[r].clone()).collect()).collect();
    RationalMatrix::from_rows(rows, n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::even_subsets;
    use crate::spinor::multidegree;

    fn es(n: usize, e: &[usize]) -> EvenSubset {
        EvenSubset::new(n, e).unwrap()
    }

    #[test]
    fn intersection_form() {
        let n = 6;
        assert_eq!(PicClass::h(n).self_intersection(), rational::rat(2));
        assert_eq!(PicClass::e(n, 3).self_intersection(), rational::rat(-1));
        assert_eq!(PicClass::h(n).intersect(&PicClass::e(n, 3)), rational::rat(0));
        for r in simple_roots(n) {
            assert_eq!(r.self_intersection(), rational::rat(-2));
            assert_eq!(canonical(n).intersect(&r), rational::rat(0));
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisor_d(&EvenSubset::empty(5)), PicClass::e(5, 5));
        assert_eq!(divisor_d(&es(5, &[4, 5])), PicClass::e(5, 4));
        // B = {1,2}, n = 5: Δ + E_1 + E_2 + E_5 = H - E_3 - E_4
        assert_eq!(divisor_d(&es(5, &[1, 2])), PicClass::from_i64(&[1, 0, 0, -1, -1, 0]));
    }

    #[test]
    fn orbit_of_last_exceptional_divisor() {
        for n in 5..=7 {
            let orbit = weyl_orbit(&PicClass::e(n, n), &simple_roots(n), 1 << n).unwrap();
            assert_eq!(orbit.len(), 1 << (n - 1));
            let ds: BTreeSet<PicClass> = even_subsets(n).unwrap().iter().map(divisor_d).collect();
            assert_eq!(orbit, ds);
            for d in &orbit {
                assert_eq!(d.self_intersection(), rational::rat(-1));
                assert_eq!(canonical(n).intersect(d), rational::rat(4 - n as i64));
            }
        }
    }

    #[test]
    fn orbit_limit() {
        assert!(weyl_orbit(&PicClass::e(6, 6), &simple_roots(6), 10).is_none());
    }

    #[test]
    fn weights_map_to_divisors() {
        for n in 5..=7 {
            let k4 = canonical(n).scale(&rational::ratio(1, 4));
            for b in even_subsets(n).unwrap() {
                assert_eq!(weight_to_pic(&spin_weight(&b)), &divisor_d(&b) + &k4, "{b}");
                assert_eq!(multidegree_to_pic(&multidegree(&b)), divisor_d(&b), "{b}");
            }
            let roots = weight_roots(n);
            for (beta, alpha) in roots.iter().zip(simple_roots(n)) {
                assert_eq!(weight_to_pic(beta), alpha);
            }
            for i in 1..=n {
                for j in 1..=n {
                    let (li, lj) = (WeightVector::basis(n, i), WeightVector::basis(n, j));
                    assert_eq!(weight_to_pic(&li).intersect(&weight_to_pic(&lj)), li.intersect(&lj));
                }
            }
            assert!(!multidegree_map_matrix(n).determinant().is_zero());
        }
    }

    #[test]
    fn json_is_array_of_strings() {
        let d = divisor_d(&es(5, &[1, 2]));
        let j = serde_json::to_value(&d).unwrap();
        assert_eq!(j, serde_json::json!(["1", "0", "0", "-1", "-1", "0"]));
        let back: PicClass = serde_json::from_value(j).unwrap();
        assert_eq!(back, d);
    }
}
