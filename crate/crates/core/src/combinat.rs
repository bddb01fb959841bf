//! Even subsets of `[n]`, signed perfect matchings, and Young's lattice
//! restricted to even subsets.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CombinatError {
    #[error("ground set size must be at least 1, got {0}")]
    EmptyGroundSet(usize),
    #[error("subset {elems:?} is not an even subset of [{n}]")]
    NotEven { elems: Vec<usize>, n: usize },
    #[error("element {elem} outside [1, {n}]")]
    OutOfRange { elem: usize, n: usize },
}

/// An even-cardinality subset of `[n]`, elements sorted and 1-based.
///
/// `Ord` compares by cardinality, then lexicographically, which is the
/// order produced by [`even_subsets`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EvenSubset {
    n: usize,
    elems: Vec<usize>,
}

impl EvenSubset {
    pub fn new(n: usize, elems: &[usize]) -> Result<Self, CombinatError> {
        let mut v = elems.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.len() != elems.len() || !v.len().is_multiple_of(2) {
            return Err(CombinatError::NotEven {
                elems: elems.to_vec(),
                n,
            });
        }
        if let Some(&e) = v.iter().find(|&&e| e == 0 || e > n) {
            return Err(CombinatError::OutOfRange { elem: e, n });
        }
        Ok(EvenSubset { n, elems: v })
    }

    pub fn empty(n: usize) -> Self {
        EvenSubset { n, elems: Vec::new() }
    }

    pub fn full(n: usize) -> Result<Self, CombinatError> {
        Self::new(n, &(1..=n).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Half the cardinality.
    pub fn half(&self) -> usize {
        self.elems.len() / 2
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.binary_search(&i).is_ok()
    }

    pub fn mask(&self) -> u64 {
        self.elems.iter().fold(0, |m, &e| m | (1 << (e - 1)))
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self, CombinatError> {
        let elems: Vec<usize> = (1..=n).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
        Self::new(n, &elems)
    }

    /// Index label such as `"1234"`, `"∅"` for the empty set, or
    /// comma-separated when `n > 9`.
    pub fn label(&self) -> String {
        if self.elems.is_empty() {
            return "∅".into();
        }
        let sep = if self.n > 9 { "," } else { "" };
        self.elems.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(sep)
    }
}

impl Ord for EvenSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elems
            .len()
            .cmp(&other.elems.len())
            .then_with(|| self.elems.cmp(&other.elems))
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for EvenSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EvenSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.elems.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

impl Serialize for EvenSubset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.elems.serialize(s)
    }
}

/// Deserializes a bare sorted array. The ground set size is not part of the
/// encoding; it is taken to be the largest element and should be fixed with
/// [`EvenSubset::with_n`] when it matters.
impl<'de> Deserialize<'de> for EvenSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let elems = Vec::<usize>::deserialize(d)?;
        let n = elems.iter().copied().max().unwrap_or(0);
        EvenSubset::new(n, &elems).map_err(serde::de::Error::custom)
    }
}

impl EvenSubset {
    pub fn with_n(self, n: usize) -> Result<Self, CombinatError> {
        EvenSubset::new(n, &self.elems)
    }
}

/// All `2^(n-1)` even subsets of `[n]`, by size then lexicographically.
pub fn even_subsets(n: usize) -> Result<Vec<EvenSubset>, CombinatError> {
    if n == 0 {
        return Err(CombinatError::EmptyGroundSet(n));
    }
    let mut out: Vec<EvenSubset> = (0u64..1 << n)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| EvenSubset::from_mask(n, m).expect("even mask"))
        .collect();
    out.sort();
    Ok(out)
}

/// All subsets of `[n]` of odd cardinality, as sorted vectors.
pub fn odd_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u64..1 << n)
        .filter(|m| m.count_ones() % 2 == 1)
        .map(|m| (1..=n).filter(|&i| m & (1 << (i - 1)) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// A perfect matching of a sorted index set, with pairs `(i, j)`, `i < j`,
/// listed by increasing `i`, and the sign of the permutation taking the
/// sorted set to `i_1 j_1 i_2 j_2 ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub sign: i8,
}

impl Matching {
    /// Normalizes arbitrary pairs and computes the sign.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Matching {
        let mut ps: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        ps.sort_unstable();
        let word: Vec<usize> = ps.iter().flat_map(|&(a, b)| [a, b]).collect();
        Matching {
            sign: permutation_sign(&word),
            pairs: ps,
        }
    }

    pub fn total_elements(&self) -> usize {
        2 * self.pairs.len()
    }
}

/// Sign of the permutation that sorts `word` (distinct entries), by
/// counting inversions.
pub fn permutation_sign(word: &[usize]) -> i8 {
    let mut inv = 0usize;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All `(2s-1)!!` perfect matchings of a sorted index list, with signs.
pub fn matchings_of(elems: &[usize]) -> Vec<Matching> {
    fn rec(rest: &[usize], acc: &mut Vec<(usize, usize)>, sign: i8, out: &mut Vec<Matching>) {
        if rest.is_empty() {
            out.push(Matching {
                pairs: acc.clone(),
                sign,
            });
            return;
        }
        let a = rest[0];
        for k in 1..rest.len() {
            let mut next: Vec<usize> = Vec::with_capacity(rest.len() - 2);
            next.extend_from_slice(&rest[1..k]);
            next.extend_from_slice(&rest[k + 1..]);
            acc.push((a, rest[k]));
            // moving rest[k] next to rest[0] passes k - 1 elements
            let s = if (k - 1) % 2 == 0 { sign } else { -sign };
            rec(&next, acc, s, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(elems, &mut Vec::new(), 1, &mut out);
    out
}

pub fn matchings_with_sign(b: &EvenSubset) -> Vec<Matching> {
    matchings_of(b.elems())
}

/// Young's lattice on even subsets: `Some(Greater)` when `sigma ⪰ tau`,
/// i.e. `#sigma >= #tau` and `sigma_i <= tau_i` for `i <= #tau`;
/// `None` when incomparable.
pub fn young_compare(sigma: &EvenSubset, tau: &EvenSubset) -> Option<Ordering> {
    fn dominates(a: &[usize], b: &[usize]) -> bool {
        a.len() >= b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
    }
    if sigma.elems == tau.elems {
        Some(Ordering::Equal)
    } else if dominates(&sigma.elems, &tau.elems) {
        Some(Ordering::Greater)
    } else if dominates(&tau.elems, &sigma.elems) {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// The fixed linear extension of Young's lattice used for term orders:
/// larger cardinality first, then lexicographically smaller first.
/// `Greater` means `a` is the larger variable.
pub fn linear_extension_cmp(a: &EvenSubset, b: &EvenSubset) -> Ordering {
    b.elems
        .len()
        .cmp(&a.elems.len())
        .then_with(|| a.elems.cmp(&b.elems))
        .reverse()
}

/// Unordered incomparable pairs `{sigma, tau}`, each listed once with the
/// larger variable (in the linear extension) first.
pub fn incomparable_pairs(n: usize) -> Result<Vec<(EvenSubset, EvenSubset)>, CombinatError> {
    let mut subs = even_subsets(n)?;
    subs.sort_by(|a, b| linear_extension_cmp(b, a));
    let mut out = Vec::new();
    for i in 0..subs.len() {
        for j in i + 1..subs.len() {
            if young_compare(&subs[i], &subs[j]).is_none() {
                out.push((subs[i].clone(), subs[j].clone()));
            }
        }
    }
    Ok(out)
}

/// Number of elements in a longest chain of the even-subset Young lattice.
pub fn longest_chain_len(n: usize) -> Result<usize, CombinatError> {
    let mut subs = even_subsets(n)?;
    // a topological order: smaller elements come first
    subs.sort_by(linear_extension_cmp);
    let mut best = vec![1usize; subs.len()];
    for i in 0..subs.len() {
        for j in 0..i {
            if young_compare(&subs[i], &subs[j]) == Some(Ordering::Greater) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    Ok(best.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(n: usize, e: &[usize]) -> EvenSubset {
        EvenSubset::new(n, e).unwrap()
    }

    #[test]
    fn even_subset_counts() {
        assert_eq!(even_subsets(5).unwrap().len(), 16);
        let s6 = even_subsets(6).unwrap();
        assert_eq!(s6.len(), 32);
        assert!(s6[0].is_empty());
        assert_eq!(s6[31].elems(), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(even_subsets(1).unwrap(), vec![EvenSubset::empty(1)]);
        assert!(even_subsets(0).is_err());
        for n in 1..=8 {
            assert_eq!(even_subsets(n).unwrap().len(), 1 << (n - 1));
        }
    }

    #[test]
    fn rejects_odd_and_out_of_range() {
        assert!(EvenSubset::new(4, &[1, 2, 3]).is_err());
        assert!(EvenSubset::new(4, &[1, 5]).is_err());
        assert!(EvenSubset::new(4, &[2, 2]).is_err());
    }

    #[test]
    fn small_matchings() {
        let m = matchings_with_sign(&es(4, &[1, 2]));
        assert_eq!(
            m,
            vec![Matching {
                pairs: vec![(1, 2)],
                sign: 1
            }]
        );
        let m = matchings_with_sign(&EvenSubset::empty(4));
        assert_eq!(m, vec![Matching { pairs: vec![], sign: 1 }]);
    }

    #[test]
    fn four_element_matching_signs() {
        let ms = matchings_with_sign(&es(4, &[1, 2, 3, 4]));
        assert_eq!(ms.len(), 3);
        // oracle: inversion count of the concatenated pair word
        for m in &ms {
            let word: Vec<usize> = m.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            assert_eq!(m.sign, permutation_sign(&word));
        }
        let find = |p: &[(usize, usize)]| ms.iter().find(|m| m.pairs == p).unwrap().sign;
        assert_eq!(find(&[(1, 2), (3, 4)]), 1);
        assert_eq!(find(&[(1, 3), (2, 4)]), -1);
        assert_eq!(find(&[(1, 4), (2, 3)]), 1);
    }

    #[test]
    fn matching_counts_and_signs() {
        for n in 1..=8 {
            for b in even_subsets(n).unwrap() {
                let ms = matchings_with_sign(&b);
                let dfact: usize = (1..b.len()).step_by(2).product();
                assert_eq!(ms.len(), dfact.max(1));
                for m in &ms {
                    assert_eq!(Matching::from_pairs(&m.pairs), *m);
                }
            }
        }
    }

    #[test]
    fn young_examples() {
        assert_eq!(
            young_compare(&es(6, &[1, 2, 3, 4]), &es(6, &[1, 2])),
            Some(Ordering::Greater)
        );
        assert_eq!(young_compare(&es(6, &[1, 4]), &es(6, &[2, 3])), None);
        assert_eq!(young_compare(&es(6, &[1, 2]), &es(6, &[3, 4])), Some(Ordering::Greater));
        assert_eq!(young_compare(&es(6, &[3, 4]), &es(6, &[1, 2])), Some(Ordering::Less));
    }

    #[test]
    fn incomparable_pair_counts() {
        assert_eq!(incomparable_pairs(6).unwrap().len(), 66);
        assert_eq!(incomparable_pairs(2).unwrap().len(), 0);
        // brute force over the 28 unordered pairs of even subsets of [4]
        let subs = even_subsets(4).unwrap();
        let mut brute = 0;
        for i in 0..subs.len() {
            for j in i + 1..subs.len() {
                let (a, b) = (subs[i].elems(), subs[j].elems());
                let ge = |x: &[usize], y: &[usize]| x.len() >= y.len() && (0..y.len()).all(|k| x[k] <= y[k]);
                if !ge(a, b) && !ge(b, a) {
                    brute += 1;
                }
            }
        }
        assert_eq!(incomparable_pairs(4).unwrap().len(), brute);
        assert_eq!(brute, 1);
    }

    #[test]
    fn young_is_partial_order() {
        for n in 1..=6 {
            let subs = even_subsets(n).unwrap();
            let ge = |a: &EvenSubset, b: &EvenSubset| {
                matches!(young_compare(a, b), Some(Ordering::Greater | Ordering::Equal))
            };
            for a in &subs {
                assert!(ge(a, a));
                for b in &subs {
                    if ge(a, b) && ge(b, a) {
                        assert_eq!(a, b);
                    }
                    for c in &subs {
                        if ge(a, b) && ge(b, c) {
                            assert!(ge(a, c), "{a} {b} {c}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn longest_chain_matches_spinor_dimension() {
        for n in 2..=6 {
            assert_eq!(longest_chain_len(n).unwrap(), n * (n - 1) / 2 + 1, "n = {n}");
        }
    }

    #[test]
    fn linear_extension_is_compatible() {
        let subs = even_subsets(6).unwrap();
        for a in &subs {
            for b in &subs {
                if young_compare(a, b) == Some(Ordering::Greater) {
                    assert_eq!(linear_extension_cmp(a, b), Ordering::Greater);
                }
            }
        }
        let mut sorted = subs.clone();
        sorted.sort_by(|a, b| linear_extension_cmp(b, a));
        assert_eq!(sorted[0].elems(), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(sorted[1].elems(), &[1, 2, 3, 4]);
        assert_eq!(sorted[2].elems(), &[1, 2, 3, 5]);
        assert_eq!(sorted[15].elems(), &[3, 4, 5, 6]);
        assert_eq!(sorted[16].elems(), &[1, 2]);
        assert!(sorted[31].is_empty());
    }

    #[test]
    fn json_is_sorted_array() {
        let b = es(6, &[4, 1]);
        assert_eq!(serde_json::to_string(&b).unwrap(), "[1,4]");
        let back: EvenSubset = serde_json::from_str("[1,4]").unwrap();
        assert_eq!(back.with_n(6).unwrap(), b);
    }
}
