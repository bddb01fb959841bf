//! Quadrics in the spin coordinates `f_B` (B an even subset of `[n]`):
//! Wick relations, multidegrees and degree-two initial terms.

use crate::algebra::rational::{self, Rational};
use crate::algebra::{Polynomial, RationalMatrix};
use crate::combinat::{even_subsets, linear_extension_cmp, odd_subsets, permutation_sign, EvenSubset};
use crate::config::ScalingVector;
use crate::pfaffian::{all_sub_pfaffians, SkewMatrix};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SpinorError {
    #[error("index list {0:?} is not an odd subset of [1, {1}]")]
    NotOddSubset(Vec<usize>, usize),
    #[error("quadric is not homogeneous in the multigrading")]
    NotHomogeneous,
    #[error("malformed quadric: {0}")]
    Malformed(String),
}

/// A multidegree in `Z^{n+1}`: coordinate 0 counts spin variables, coordinate
/// `j` counts occurrences of `j` in the index sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Multidegree(pub Vec<u32>);

impl Multidegree {
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// How many indices occur twice and how many occur once.
    pub fn class(&self) -> DegreeClass {
        DegreeClass {
            doubles: self.0[1..].iter().filter(|&&c| c == 2).count(),
            singles: self.0[1..].iter().filter(|&&c| c == 1).count(),
        }
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Shape of a quadric multidegree by index multiplicities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeClass {
    pub doubles: usize,
    pub singles: usize,
}

impl fmt::Display for DegreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} doubled, {} single", self.doubles, self.singles)
    }
}

/// `deg f_B = e_0 + sum_{j in B} e_j`.
pub fn multidegree(b: &EvenSubset) -> Multidegree {
    let mut d = vec![0u32; b.n() + 1];
    d[0] = 1;
    for &j in b.elems() {
        d[j] += 1;
    }
    Multidegree(d)
}

/// Degree-two monomial `f_A f_B`, stored with the larger variable first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadMonomial(pub EvenSubset, pub EvenSubset);

impl QuadMonomial {
    pub fn new(a: EvenSubset, b: EvenSubset) -> Self {
        if linear_extension_cmp(&a, &b) == Ordering::Less {
            QuadMonomial(b, a)
        } else {
            QuadMonomial(a, b)
        }
    }

    pub fn larger(&self) -> &EvenSubset {
        &self.0
    }

    pub fn smaller(&self) -> &EvenSubset {
        &self.1
    }

    pub fn degree(&self) -> Multidegree {
        multidegree(&self.0).add(&multidegree(&self.1))
    }

    /// Reverse lexicographic comparison: the monomial whose smaller variable
    /// is larger wins; ties are broken on the larger variable.
    pub fn revlex_cmp(&self, other: &Self) -> Ordering {
        linear_extension_cmp(&self.1, &other.1).then_with(|| linear_extension_cmp(&self.0, &other.0))
    }
}

impl Ord for QuadMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.revlex_cmp(other)
    }
}

impl PartialOrd for QuadMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn var_name(b: &EvenSubset) -> String {
    if b.is_empty() {
        "f".into()
    } else {
        format!("f{}", b.label())
    }
}

impl fmt::Display for QuadMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", var_name(&self.0), var_name(&self.1))
    }
}

/// A quadratic form in the spin coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric {
    n: usize,
    terms: BTreeMap<QuadMonomial, Rational>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(rename = "A")]
    a: Vec<usize>,
    #[serde(rename = "B")]
    b: Vec<usize>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct QuadricJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    terms: Vec<TermJson>,
}

impl Quadric {
    pub fn zero(n: usize) -> Self {
        Quadric {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, a: &EvenSubset, b: &EvenSubset, c: Rational) {
        if c.is_zero() {
            return;
        }
        let m = QuadMonomial::new(a.clone().with_n(self.n).unwrap(), b.clone().with_n(self.n).unwrap());
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Builds a quadric from `(A, B, coeff)` triples.
    pub fn from_terms(n: usize, terms: &[(&[usize], &[usize], i64)]) -> Result<Self, SpinorError> {
        let mut q = Quadric::zero(n);
        for &(a, b, c) in terms {
            let a = EvenSubset::new(n, a).map_err(|e| SpinorError::Malformed(e.to_string()))?;
            let b = EvenSubset::new(n, b).map_err(|e| SpinorError::Malformed(e.to_string()))?;
            q.add_term(&a, &b, rational::rat(c));
        }
        Ok(q)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing revlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&QuadMonomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &QuadMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The common multidegree of all terms.
    pub fn degree(&self) -> Result<Multidegree, SpinorError> {
        let mut degs = self.terms.keys().map(QuadMonomial::degree);
        let first = degs.next().ok_or(SpinorError::NotHomogeneous)?;
        if degs.all(|d| d == first) {
            Ok(first)
        } else {
            Err(SpinorError::NotHomogeneous)
        }
    }

    pub fn leading_term(&self) -> Option<(&QuadMonomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&QuadMonomial> {
        self.leading_term().map(|(m, _)| m)
    }

    pub fn scale(&self, c: &Rational) -> Quadric {
        if c.is_zero() {
            return Quadric::zero(self.n);
        }
        Quadric {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Scaled so that the leading coefficient is 1.
    pub fn normalized(&self) -> Quadric {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Value at a point given by one scalar per spin coordinate.
    pub fn evaluate(&self, f: &BTreeMap<EvenSubset, Rational>) -> Rational {
        let get = |b: &EvenSubset| f.get(b).cloned().unwrap_or_else(Rational::zero);
        self.terms
            .iter()
            .map(|(m, c)| c * get(&m.0) * get(&m.1))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Substitutes a polynomial for every spin coordinate.
    pub fn evaluate_poly(&self, f: &BTreeMap<EvenSubset, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let (Some(a), Some(b)) = (f.get(&m.0), f.get(&m.1)) else {
                continue;
            };
            out += &(a * b).scale(c);
        }
        out
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !abs.is_one() {
                s.push_str(&rational::to_string(&abs));
            }
            s.push_str(&m.to_string());
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms()
            .map(|(m, c)| TermJson {
                a: m.0.elems().to_vec(),
                b: m.1.elems().to_vec(),
                coeff: rational::to_string(c),
            })
            .collect();
        serde_json::to_value(QuadricJson { n: Some(self.n), terms }).expect("serializable")
    }

    /// Parses `{"terms": [{"A": [...], "B": [...], "coeff": "..."}]}`; `n`
    /// defaults to the largest index present.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, SpinorError> {
        let raw: QuadricJson = serde_json::from_value(v.clone()).map_err(|e| SpinorError::Malformed(e.to_string()))?;
        let n = raw.n.unwrap_or_else(|| {
            raw.terms
                .iter()
                .flat_map(|t| t.a.iter().chain(&t.b))
                .copied()
                .max()
                .unwrap_or(0)
        });
        let mut q = Quadric::zero(n);
        for t in raw.terms {
            let a = EvenSubset::new(n, &t.a).map_err(|e| SpinorError::Malformed(e.to_string()))?;
            let b = EvenSubset::new(n, &t.b).map_err(|e| SpinorError::Malformed(e.to_string()))?;
            let c = rational::parse(&t.coeff).map_err(SpinorError::Malformed)?;
            q.add_term(&a, &b, c);
        }
        Ok(q)
    }
}

impl std::ops::Add<&Quadric> for &Quadric {
    type Output = Quadric;
    fn add(self, rhs: &Quadric) -> Quadric {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(&m.0, &m.1, c.clone());
        }
        out
    }
}

/// Sorts an index list, returning the sorted subset and the sign of the
/// sorting permutation, or `None` when an index repeats.
fn signed_sort(n: usize, word: &[usize]) -> Option<(EvenSubset, i8)> {
    let set: BTreeSet<usize> = word.iter().copied().collect();
    if set.len() != word.len() {
        return None;
    }
    let sorted: Vec<usize> = set.into_iter().collect();
    Some((EvenSubset::new(n, &sorted).ok()?, permutation_sign(word)))
}

fn check_odd(n: usize, s: &[usize]) -> Result<(), SpinorError> {
    let set: BTreeSet<usize> = s.iter().copied().collect();
    let ok = s.len() % 2 == 1
        && set.len() == s.len()
        && s.iter().all(|&i| (1..=n).contains(&i))
        && s.windows(2).all(|w| w[0] < w[1]);
    if ok {
        Ok(())
    } else {
        Err(SpinorError::NotOddSubset(s.to_vec(), n))
    }
}

/// The Wick relation attached to odd subsets `sigma`, `tau` (sorted):
///
/// ```text
/// sum_i (-1)^i f_[tau_i, sigma] f_{tau \ tau_i} + sum_j (-1)^j f_{sigma \ sigma_j} f_[sigma_j, tau]
/// ```
///
/// where `[a, list]` sorts the index list with its sign and vanishes when
/// an index repeats. The subsets may overlap.
pub fn wick_quadric(n: usize, sigma: &[usize], tau: &[usize]) -> Result<Quadric, SpinorError> {
    check_odd(n, sigma)?;
    check_odd(n, tau)?;
    let mut q = Quadric::zero(n);
    let mut push = |first: Vec<usize>, second: Vec<usize>, alt: usize| {
        let (Some((a, sa)), Some((b, sb))) = (signed_sort(n, &first), signed_sort(n, &second)) else {
            return;
        };
        let sign = i64::from(sa * sb) * if alt.is_multiple_of(2) { 1 } else { -1 };
        q.add_term(&a, &b, rational::rat(sign));
    };
    for i in 0..tau.len() {
        let mut first = vec![tau[i]];
        first.extend_from_slice(sigma);
        let rest: Vec<usize> = tau.iter().copied().filter(|&t| t != tau[i]).collect();
        push(first, rest, i + 1);
    }
    for j in 0..sigma.len() {
        let rest: Vec<usize> = sigma.iter().copied().filter(|&t| t != sigma[j]).collect();
        let mut second = vec![sigma[j]];
        second.extend_from_slice(tau);
        push(rest, second, j + 1);
    }
    Ok(q)
}

/// Wick relations over all ordered pairs of odd subsets, normalized to
/// leading coefficient 1, without zeros or duplicates.
pub fn all_wick_quadrics(n: usize) -> Vec<Quadric> {
    let odd = odd_subsets(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in &odd {
        for t in &odd {
            let q = wick_quadric(n, s, t).expect("odd subsets").normalized();
            if q.is_zero() {
                continue;
            }
            let key = q.display();
            if seen.insert(key) {
                out.push(q);
            }
        }
    }
    out
}

/// Every degree-two monomial in the spin coordinates, grouped by multidegree.
pub fn monomials_by_degree(n: usize) -> BTreeMap<Multidegree, Vec<QuadMonomial>> {
    let subs = even_subsets(n).expect("n >= 1");
    let mut out: BTreeMap<Multidegree, Vec<QuadMonomial>> = BTreeMap::new();
    for (i, a) in subs.iter().enumerate() {
        for b in &subs[i..] {
            let m = QuadMonomial::new(a.clone(), b.clone());
            out.entry(m.degree()).or_default().push(m);
        }
    }
    for v in out.values_mut() {
        v.sort_by(|a, b| b.cmp(a));
    }
    out
}

/// Echelon data for the span of the Wick quadrics in one multidegree.
#[derive(Clone, Debug)]
pub struct DegreeSpan {
    pub degree: Multidegree,
    /// Monomials of this degree in decreasing revlex order.
    pub monomials: Vec<QuadMonomial>,
    /// Reduced echelon basis of the span.
    pub basis: Vec<Quadric>,
}

impl DegreeSpan {
    pub fn leading_monomials(&self) -> Vec<QuadMonomial> {
        self.basis
            .iter()
            .filter_map(|q| q.leading_monomial().cloned())
            .collect()
    }
}

/// Row-reduces quadrics of a single degree against a column order.
pub fn echelon(n: usize, monomials: &[QuadMonomial], quadrics: &[Quadric]) -> Vec<Quadric> {
    let rows: Vec<Vec<Rational>> = quadrics
        .iter()
        .map(|q| monomials.iter().map(|m| q.coefficient(m)).collect())
        .collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let (rref, pivots) = RationalMatrix::from_rows(rows, monomials.len()).rref();
    (0..pivots.len())
        .map(|r| {
            let mut q = Quadric::zero(n);
            for (c, m) in monomials.iter().enumerate() {
                q.add_term(&m.0, &m.1, rref.get(r, c).clone());
            }
            q
        })
        .collect()
}

/// For each multidegree, the echelon basis of the Wick span and its leading
/// monomials under revlex.
pub fn wick_spans(n: usize) -> BTreeMap<Multidegree, DegreeSpan> {
    let mons = monomials_by_degree(n);
    let mut by_degree: BTreeMap<Multidegree, Vec<Quadric>> = BTreeMap::new();
    for q in all_wick_quadrics(n) {
        let d = q.degree().expect("Wick relations are homogeneous");
        by_degree.entry(d).or_default().push(q);
    }
    by_degree
        .into_iter()
        .map(|(d, qs)| {
            let monomials = mons[&d].clone();
            let basis = echelon(n, &monomials, &qs);
            (
                d.clone(),
                DegreeSpan {
                    degree: d,
                    monomials,
                    basis,
                },
            )
        })
        .collect()
}

/// Leading monomials of the degree-two part of the ideal spanned by the
/// Wick relations, grouped by multidegree.
pub fn initial_ideal_gens(n: usize) -> BTreeMap<Multidegree, Vec<QuadMonomial>> {
    wick_spans(n)
        .into_iter()
        .map(|(d, s)| (d, s.leading_monomials()))
        .filter(|(_, v)| !v.is_empty())
        .collect()
}

/// Sub-Pfaffians of a random rational skew matrix: a point of the spinor
/// variety.
pub fn random_spinor_point(n: usize, rng: &mut impl Rng) -> BTreeMap<EvenSubset, Rational> {
    let a: SkewMatrix<Rational> =
        SkewMatrix::from_fn(n, |_, _| rational::ratio(rng.gen_range(-20..=20), rng.gen_range(1..=7)));
    let table = all_sub_pfaffians(&a);
    even_subsets(n)
        .expect("n >= 1")
        .into_iter()
        .map(|b| {
            let v = table[&b.mask()].clone();
            (b, v)
        })
        .collect()
}

/// Independent membership test: a quadric in the ideal of the spinor
/// variety vanishes at sub-Pfaffian points. Checks `trials` seeded points,
/// each also rescaled by a random nonzero factor.
pub fn spinor_quadric_oracle(q: &Quadric, seed: u64, trials: usize) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).all(|_| {
        let mut pt = random_spinor_point(q.n(), &mut rng);
        let lambda = rational::rat(rng.gen_range(2..=9));
        for v in pt.values_mut() {
            *v *= &lambda;
        }
        q.evaluate(&pt).is_zero()
    })
}

/// Substitutes `f_B -> a_B f_B`.
pub fn scale_quadric(q: &Quadric, a: &ScalingVector) -> Quadric {
    let mut out = Quadric::zero(q.n());
    for (m, c) in &q.terms {
        out.add_term(&m.0, &m.1, c * a.get(&m.0) * a.get(&m.1));
    }
    out
}

/// `true` when every leading monomial is the larger power product of two
/// Young-incomparable variables.
pub fn leading_monomials_are_incomparable(gens: &BTreeMap<Multidegree, Vec<QuadMonomial>>) -> bool {
    gens.values()
        .flatten()
        .all(|m| crate::combinat::young_compare(&m.0, &m.1).is_none())
}

/// Kernel of `f_A f_B -> g_A g_B` on the given monomials: the quadrics in
/// their span that vanish after substituting `f_B -> g_B`. Returns the
/// rank of the image and a kernel basis.
pub fn evaluation_kernel(
    n: usize,
    monomials: &[QuadMonomial],
    images: &BTreeMap<EvenSubset, Polynomial>,
) -> (usize, Vec<Quadric>) {
    let products: Vec<Polynomial> = monomials
        .iter()
        .map(|m| match (images.get(&m.0), images.get(&m.1)) {
            (Some(a), Some(b)) => a * b,
            _ => Polynomial::zero(),
        })
        .collect();
    let support: BTreeSet<crate::algebra::Monomial> = products
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    let rows: Vec<Vec<Rational>> = support
        .iter()
        .map(|xm| products.iter().map(|p| p.coefficient(xm)).collect())
        .collect();
    let res = RationalMatrix::from_rows(rows, monomials.len()).rank_and_kernel();
    let basis = res
        .kernel
        .into_iter()
        .map(|v| {
            let mut q = Quadric::zero(n);
            for (m, c) in monomials.iter().zip(v) {
                q.add_term(&m.0, &m.1, c);
            }
            q
        })
        .collect();
    (res.rank, basis)
}

/// Sub-Pfaffians of the generic skew matrix, one polynomial per even subset.
pub fn generic_spinor_images(n: usize) -> BTreeMap<EvenSubset, Polynomial> {
    let vars = crate::algebra::Vars::new(n);
    let table = all_sub_pfaffians(&crate::pfaffian::generic_skew(&vars));
    even_subsets(n)
        .expect("n >= 1")
        .into_iter()
        .map(|b| {
            let p = table[&b.mask()].clone();
            (b, p)
        })
        .collect()
}

/// Degree-two part of the ideal of the spinor variety, computed without
/// Wick relations: per multidegree, the quadrics vanishing on the
/// sub-Pfaffians of the generic skew matrix.
pub fn spinor_oracle_spaces(n: usize) -> BTreeMap<Multidegree, Vec<Quadric>> {
    let images = generic_spinor_images(n);
    monomials_by_degree(n)
        .into_iter()
        .map(|(d, mons)| {
            let (_, basis) = evaluation_kernel(n, &mons, &images);
            (d, basis)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Vars;
    use crate::combinat::incomparable_pairs;
    use crate::pfaffian::generic_skew;

    fn es(n: usize, e: &[usize]) -> EvenSubset {
        EvenSubset::new(n, e).unwrap()
    }

    #[test]
    fn multidegree_examples() {
        assert_eq!(multidegree(&es(6, &[1, 3])).0, vec![1, 1, 0, 1, 0, 0, 0]);
        assert_eq!(multidegree(&EvenSubset::empty(6)).0, vec![1, 0, 0, 0, 0, 0, 0]);
        let q = QuadMonomial::new(es(6, &[1, 2]), es(6, &[3, 4, 5, 6]));
        assert_eq!(q.degree().0, vec![2, 1, 1, 1, 1, 1, 1]);
        assert_eq!(q.larger(), &es(6, &[3, 4, 5, 6]));
    }

    #[test]
    fn wick_example_is_negated_display_relation() {
        let q = wick_quadric(6, &[1, 3, 4, 5, 6], &[2]).unwrap();
        let want = Quadric::from_terms(
            6,
            &[
                (&[3, 4, 5, 6], &[1, 2], 1),
                (&[1, 4, 5, 6], &[2, 3], 1),
                (&[1, 3, 5, 6], &[2, 4], -1),
                (&[1, 3, 4, 6], &[2, 5], 1),
                (&[1, 3, 4, 5], &[2, 6], -1),
                (&[1, 2, 3, 4, 5, 6], &[], -1),
            ],
        )
        .unwrap();
        assert_eq!(q, want.scale(&rational::rat(-1)));
        assert_eq!(q.normalized(), want);
    }

    #[test]
    fn four_index_relation() {
        let q = wick_quadric(4, &[1, 2, 3], &[4]).unwrap().normalized();
        let want = Quadric::from_terms(
            4,
            &[
                (&[1, 4], &[2, 3], 1),
                (&[1, 3], &[2, 4], -1),
                (&[1, 2], &[3, 4], 1),
                (&[1, 2, 3, 4], &[], -1),
            ],
        )
        .unwrap();
        assert_eq!(q, want);
        assert_eq!(q.display(), "f14f23 - f13f24 + f12f34 - f1234f");
    }

    #[test]
    fn wick_rejects_even_sets() {
        assert!(wick_quadric(6, &[1, 2], &[3]).is_err());
        assert!(wick_quadric(6, &[1, 9, 2], &[3]).is_err());
    }

    #[test]
    fn wick_relations_vanish_on_generic_pfaffians() {
        let v = Vars::new(6);
        let table = all_sub_pfaffians(&generic_skew(&v));
        let f: BTreeMap<EvenSubset, Polynomial> = even_subsets(6)
            .unwrap()
            .into_iter()
            .map(|b| {
                let p = table[&b.mask()].clone();
                (b, p)
            })
            .collect();
        for q in all_wick_quadrics(6) {
            assert!(q.evaluate_poly(&f).is_zero(), "{}", q.display());
        }
    }

    #[test]
    fn oracle_rejects_non_relations() {
        let q = Quadric::from_terms(4, &[(&[1, 2], &[3, 4], 1)]).unwrap();
        assert!(!spinor_quadric_oracle(&q, 1, 3));
        let q = wick_quadric(5, &[1, 2, 3], &[4]).unwrap();
        assert!(spinor_quadric_oracle(&q, 1, 3));
    }

    #[test]
    fn revlex_leading_terms() {
        let q = wick_quadric(6, &[1, 3, 4, 5, 6], &[2]).unwrap();
        assert_eq!(q.leading_monomial().unwrap().to_string(), "f3456f12");
        let a = QuadMonomial::new(es(6, &[1, 6]), es(6, &[2, 3, 4, 5]));
        let b = QuadMonomial::new(es(6, &[2, 6]), es(6, &[1, 3, 4, 5]));
        let c = QuadMonomial::new(es(6, &[1, 2, 3, 4, 5, 6]), EvenSubset::empty(6));
        assert!(a > b && b > c);
    }

    #[test]
    fn initial_terms_are_incomparable_pairs_n6() {
        let gens = initial_ideal_gens(6);
        let got: BTreeSet<(EvenSubset, EvenSubset)> =
            gens.values().flatten().map(|m| (m.0.clone(), m.1.clone())).collect();
        let want: BTreeSet<(EvenSubset, EvenSubset)> = incomparable_pairs(6).unwrap().into_iter().collect();
        assert_eq!(got.len(), 66);
        assert_eq!(got, want);
        assert!(leading_monomials_are_incomparable(&gens));
    }

    #[test]
    fn initial_terms_n4_and_n5() {
        for n in [4usize, 5] {
            let got: usize = initial_ideal_gens(n).values().map(Vec::len).sum();
            assert_eq!(got, incomparable_pairs(n).unwrap().len(), "n = {n}");
        }
        assert_eq!(incomparable_pairs(4).unwrap().len(), 1);
    }

    #[test]
    fn oracle_space_matches_wick_span() {
        let oracle = spinor_oracle_spaces(6);
        let total: usize = oracle.values().map(Vec::len).sum();
        assert_eq!(total, 66);
        let spans = wick_spans(6);
        for (d, basis) in &oracle {
            let wick = spans.get(d).map_or(0, |s| s.basis.len());
            assert_eq!(basis.len(), wick, "{d}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let q = wick_quadric(6, &[1, 3, 4, 5, 6], &[2]).unwrap();
        let j = q.to_json();
        assert_eq!(j["terms"][0]["A"], serde_json::json!([3, 4, 5, 6]));
        assert_eq!(Quadric::from_json(&j).unwrap(), q);
        let bare = serde_json::json!({"terms": [{"A": [1, 4], "B": [2, 3], "coeff": "1"}]});
        assert_eq!(Quadric::from_json(&bare).unwrap().n(), 4);
    }

    #[test]
    fn scaling_by_ones_is_identity() {
        let q = wick_quadric(5, &[1, 2, 3], &[4]).unwrap();
        assert_eq!(scale_quadric(&q, &ScalingVector::ones(5)), q);
    }
}
