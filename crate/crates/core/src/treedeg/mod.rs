//! Trivalent phylogenetic trees, their metrics, and the leading terms of
//! `Psi_B` under tree weights.
//!
//! Leaf `i` is always vertex `i - 1`; internal vertices follow. For an even
//! leaf set `B` the paths of the leading matching are pairwise
//! edge-disjoint, and that matching is the unique one of minimal total
//! length.

mod newick;

pub use newick::{parse_newick, to_newick};

use crate::algebra::rational::{self, Rational};
use crate::combinat::{matchings_of, EvenSubset, Matching};
use crate::config::{biplucker_coefficient, biplucker_pairings, biplucker_sign, GrassmannPoint};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{vertex} has degree {degree}, expected 3")]
    Valence { vertex: String, degree: usize },
    #[error("a tree needs at least 3 leaves, got {0}")]
    TooFewLeaves(usize),
    #[error("{0}")]
    Labels(String),
    #[error("n = {0} outside the supported range 3..=7")]
    OutOfRange(usize),
    #[error("leaf set {0} is empty or not contained in the leaves")]
    BadSubset(String),
    #[error("optimal matching for {subset} is not unique (total length {length})")]
    NonUniqueOptimum { subset: String, length: String },
}

/// An unrooted tree with leaves `1..=n` and positive rational edge lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhyloTree {
    n: usize,
    adj: Vec<Vec<(usize, Rational)>>,
}

impl PhyloTree {
    pub(crate) fn empty(n: usize) -> Self {
        PhyloTree {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub(crate) fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize, len: Rational) {
        self.adj[u].push((v, len.clone()));
        self.adj[v].push((u, len));
    }

    fn remove_edge(&mut self, u: usize, v: usize) -> Rational {
        let k = self.adj[u].iter().position(|(w, _)| *w == v).expect("edge exists");
        let (_, len) = self.adj[u].remove(k);
        let k = self.adj[v].iter().position(|(w, _)| *w == u).expect("edge exists");
        self.adj[v].remove(k);
        len
    }

    /// Replaces the two edges at a degree-two vertex by one edge.
    pub(crate) fn suppress_degree_two(&mut self, v: usize) {
        let (a, la) = self.adj[v][0].clone();
        let (b, lb) = self.adj[v][1].clone();
        self.remove_edge(v, a);
        self.remove_edge(v, b);
        self.add_edge(a, b, la + lb);
    }

    /// Drops isolated internal vertices and renumbers the rest.
    pub(crate) fn compact(&mut self) {
        let keep: Vec<usize> = (0..self.adj.len())
            .filter(|&v| v < self.n || !self.adj[v].is_empty())
            .collect();
        let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        self.adj = keep
            .iter()
            .map(|&v| self.adj[v].iter().map(|(u, l)| (index[u], l.clone())).collect())
            .collect();
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn leaf_vertex(&self, label: usize) -> usize {
        label - 1
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.adj[v].iter().map(|(u, l)| (*u, l))
    }

    /// Edges `(u, v, len)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, Rational)> {
        let mut out: Vec<(usize, usize, Rational)> = (0..self.adj.len())
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |(v, _)| u < *v)
                    .map(move |(v, l)| (u, *v, l.clone()))
            })
            .collect();
        out.sort();
        out
    }

    /// Checks the trivalent shape: leaves of degree 1, internal vertices of
    /// degree 3, `n - 2` internal vertices, `2n - 3` edges, connected.
    pub fn validate(&self) -> Result<(), TreeError> {
        for v in 0..self.adj.len() {
            let want = if self.is_leaf(v) { 1 } else { 3 };
            if self.adj[v].len() != want {
                return Err(TreeError::Valence {
                    vertex: self.vertex_label(v),
                    degree: self.adj[v].len(),
                });
            }
        }
        let edges = self.edges().len();
        if self.adj.len() != 2 * self.n - 2 || edges != 2 * self.n - 3 || self.reachable(0).len() != self.adj.len() {
            return Err(TreeError::Labels(format!(
                "not a trivalent tree: {} vertices, {edges} edges",
                self.adj.len()
            )));
        }
        Ok(())
    }

    fn vertex_label(&self, v: usize) -> String {
        if self.is_leaf(v) {
            format!("leaf {}", v + 1)
        } else {
            format!("internal vertex {v}")
        }
    }

    fn reachable(&self, start: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (u, _) in self.neighbors(v) {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen
    }

    /// Smallest leaf label in the component of `v` after removing the edge to `parent`.
    pub(crate) fn min_leaf_below(&self, v: usize, parent: usize) -> usize {
        self.leaves_below(v, parent).into_iter().min().unwrap_or(usize::MAX)
    }

    /// Leaf labels on the `v` side of the edge `{v, parent}`.
    pub fn leaves_below(&self, v: usize, parent: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(v, parent)];
        while let Some((x, from)) = stack.pop() {
            if self.is_leaf(x) {
                out.push(x + 1);
            }
            for (u, _) in self.neighbors(x) {
                if u != from {
                    stack.push((u, x));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The edges on the path between two leaves, as `(min, max)` vertex pairs.
    pub fn path_edges(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        let (src, dst) = (self.leaf_vertex(i), self.leaf_vertex(j));
        let mut parent = vec![usize::MAX; self.adj.len()];
        let mut stack = vec![src];
        parent[src] = src;
        while let Some(v) = stack.pop() {
            for (u, _) in self.neighbors(v) {
                if parent[u] == usize::MAX {
                    parent[u] = v;
                    stack.push(u);
                }
            }
        }
        let mut out = Vec::new();
        let mut v = dst;
        while v != src {
            let p = parent[v];
            out.push((p.min(v), p.max(v)));
            v = p;
        }
        out
    }

    fn edge_length(&self, u: usize, v: usize) -> &Rational {
        &self.adj[u].iter().find(|(w, _)| *w == v).expect("edge exists").1
    }

    /// Path length between leaves `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> Rational {
        self.path_edges(i, j)
            .into_iter()
            .map(|(u, v)| self.edge_length(u, v).clone())
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// All leaf-to-leaf distances, indexed by label.
    pub fn metric(&self) -> BTreeMap<(usize, usize), Rational> {
        let mut out = BTreeMap::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                out.insert((i, j), if i == j { Rational::zero() } else { self.distance(i, j) });
            }
        }
        out
    }

    /// Bipartitions from internal edges, each as the leaf side without `n`.
    pub fn splits(&self) -> BTreeSet<Vec<usize>> {
        self.edges()
            .into_iter()
            .filter(|(u, v, _)| !self.is_leaf(*u) && !self.is_leaf(*v))
            .map(|(u, v, _)| {
                let side = self.leaves_below(u, v);
                if side.contains(&self.n) {
                    self.leaves_below(v, u)
                } else {
                    side
                }
            })
            .collect()
    }

    pub fn same_topology(&self, other: &PhyloTree) -> bool {
        self.n == other.n && self.splits() == other.splits()
    }

    /// Multiplies every edge length by `c > 0`.
    pub fn scaled(&self, c: &Rational) -> PhyloTree {
        PhyloTree {
            n: self.n,
            adj: self
                .adj
                .iter()
                .map(|nb| nb.iter().map(|(u, l)| (*u, l * c)).collect())
                .collect(),
        }
    }

    /// Same topology with distinct prime edge lengths, in edge order.
    pub fn with_prime_lengths(&self) -> PhyloTree {
        let primes = primes(self.edges().len());
        let mut t = PhyloTree::empty(self.n);
        t.adj.resize(self.adj.len(), Vec::new());
        for ((u, v, _), p) in self.edges().into_iter().zip(primes) {
            t.add_edge(u, v, rational::rat(p as i64));
        }
        t
    }

    pub fn has_unit_lengths(&self) -> bool {
        self.edges().iter().all(|(_, _, l)| l.is_one())
    }

    /// `{"edges": [[u, v, "len"], ...], "leaves": {"1": node, ...}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<serde_json::Value> = self
            .edges()
            .into_iter()
            .map(|(u, v, l)| serde_json::json!([u, v, rational::to_string(&l)]))
            .collect();
        let leaves: serde_json::Map<String, serde_json::Value> = (1..=self.n)
            .map(|i| (i.to_string(), serde_json::json!(self.leaf_vertex(i))))
            .collect();
        serde_json::json!({"edges": edges, "leaves": leaves})
    }
}

fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut k = 2u64;
    while out.len() < count {
        if (2..k).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d)) {
            out.push(k);
        }
        k += 1;
    }
    out
}

/// Every labelled trivalent tree on `n` leaves (unit lengths), built by
/// inserting leaves `4, ..., n` on every edge of the smaller trees.
pub fn enumerate_trees(n: usize) -> Result<Vec<PhyloTree>, TreeError> {
    if !(3..=7).contains(&n) {
        return Err(TreeError::OutOfRange(n));
    }
    let mut star = PhyloTree::empty(n);
    let c = star.add_vertex();
    for leaf in 0..3 {
        star.add_edge(c, leaf, Rational::one());
    }
    let mut level = vec![star];
    for leaf in 3..n {
        let mut next = Vec::new();
        for t in &level {
            for (u, v, _) in t.edges() {
                let mut t2 = t.clone();
                t2.remove_edge(u, v);
                let w = t2.add_vertex();
                t2.add_edge(u, w, Rational::one());
                t2.add_edge(w, v, Rational::one());
                t2.add_edge(w, leaf, Rational::one());
                next.push(t2);
            }
        }
        level = next;
    }
    let mut seen = BTreeSet::new();
    level.retain(|t| seen.insert(t.splits()));
    Ok(level)
}

fn check_subset(t: &PhyloTree, b: &EvenSubset) -> Result<(), TreeError> {
    if b.is_empty() || b.elems().iter().any(|&e| e > t.n()) {
        return Err(TreeError::BadSubset(b.label()));
    }
    Ok(())
}

/// The matching of `B` whose leaf-to-leaf paths are pairwise edge-disjoint:
/// root the tree at the first element of `B` and pair unmatched leaves at
/// the lowest vertex where two of them meet.
pub fn disjoint_path_partition(t: &PhyloTree, b: &EvenSubset) -> Result<Matching, TreeError> {
    check_subset(t, b)?;
    fn visit(t: &PhyloTree, b: &EvenSubset, v: usize, parent: usize, pairs: &mut Vec<(usize, usize)>) -> Option<usize> {
        let mut open: Vec<usize> = Vec::new();
        if t.is_leaf(v) && b.contains(v + 1) {
            open.push(v + 1);
        }
        for (u, _) in t.neighbors(v) {
            if u != parent {
                if let Some(l) = visit(t, b, u, v, pairs) {
                    open.push(l);
                }
            }
        }
        match open.len() {
            0 => None,
            1 => Some(open[0]),
            _ => {
                pairs.push((open[0], open[1]));
                None
            }
        }
    }
    let root = t.leaf_vertex(b.elems()[0]);
    let mut pairs = Vec::new();
    let leftover = visit(t, b, root, usize::MAX, &mut pairs);
    debug_assert!(leftover.is_none());
    Ok(Matching::from_pairs(&pairs))
}

/// Whether the tree paths of a matching share no edge.
pub fn is_edge_disjoint(t: &PhyloTree, m: &Matching) -> bool {
    let mut used = BTreeSet::new();
    m.pairs
        .iter()
        .flat_map(|&(i, j)| t.path_edges(i, j))
        .all(|e| used.insert(e))
}

/// Total tree length of the paths of a matching.
pub fn matching_length(t: &PhyloTree, pairs: &[(usize, usize)]) -> Rational {
    pairs
        .iter()
        .map(|&(i, j)| t.distance(i, j))
        .fold(Rational::zero(), |a, b| a + b)
}

/// The selected term of the bi-Plücker expansion of `Psi_B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingForm {
    pub matching: Matching,
    /// Total path length of the matching.
    pub length: Rational,
    /// `true` if unit lengths tied and distinct prime lengths were used.
    pub perturbed: bool,
    /// Index list of the bi-Plücker expansion the term was taken from.
    pub index_list: Vec<usize>,
    /// Coefficient of `prod x_{i_r j_r}` (pairs with `i_r < j_r`) in that
    /// expansion of `Psi_B(x, p)`, when a point `p` is given.
    pub coefficient: Option<Rational>,
}

impl LeadingForm {
    /// The monomial as a product of Plücker variables, e.g. `x12*x34`.
    pub fn monomial(&self) -> String {
        self.matching
            .pairs
            .iter()
            .map(|(i, j)| format!("x{i}{j}"))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Among the matching monomials of all bi-Plücker expansions of `Psi_B`
/// (one expansion per index list containing the smallest element of `B`),
/// selects the one of minimal total path length in `T` and checks that it is
/// unique.
pub fn leading_form_psi(b: &EvenSubset, t: &PhyloTree, p: Option<&GrassmannPoint>) -> Result<LeadingForm, TreeError> {
    check_subset(t, b)?;
    match select_minimum(b, t)? {
        Some((pairs, i_list, length)) => finish(b, pairs, i_list, length, false, p),
        None if t.has_unit_lengths() => {
            let tp = t.with_prime_lengths();
            match select_minimum(b, &tp)? {
                Some((pairs, i_list, length)) => finish(b, pairs, i_list, length, true, p),
                None => Err(non_unique(b, &tp)),
            }
        }
        None => Err(non_unique(b, t)),
    }
}

fn non_unique(b: &EvenSubset, t: &PhyloTree) -> TreeError {
    let best = matchings_of(b.elems())
        .iter()
        .map(|m| matching_length(t, &m.pairs))
        .min()
        .unwrap_or_else(Rational::zero);
    TreeError::NonUniqueOptimum {
        subset: b.label(),
        length: rational::to_string(&best),
    }
}

type Candidate = (Vec<(usize, usize)>, Vec<usize>, Rational);

/// The unique minimal candidate, or `None` on a tie.
fn select_minimum(b: &EvenSubset, t: &PhyloTree) -> Result<Option<Candidate>, TreeError> {
    let elems = b.elems();
    let s = b.half();
    let mut best: BTreeMap<Vec<(usize, usize)>, (Vec<usize>, Rational)> = BTreeMap::new();
    for rest in choose(&elems[1..], s - 1) {
        let mut i_list = vec![elems[0]];
        i_list.extend(rest);
        let terms = biplucker_pairings(b, &i_list).map_err(|_| TreeError::BadSubset(b.label()))?;
        for (pairs, _) in terms {
            let mut key: Vec<(usize, usize)> = pairs.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
            key.sort_unstable();
            let len = matching_length(t, &pairs);
            best.entry(key).or_insert((i_list.clone(), len));
        }
    }
    let min = best.values().map(|(_, l)| l.clone()).min().expect("B nonempty");
    let mut winners = best.into_iter().filter(|(_, (_, l))| *l == min);
    let (pairs, (i_list, len)) = winners.next().expect("minimum attained");
    if winners.next().is_some() {
        return Ok(None);
    }
    Ok(Some((pairs, i_list, len)))
}

fn finish(
    b: &EvenSubset,
    pairs: Vec<(usize, usize)>,
    i_list: Vec<usize>,
    length: Rational,
    perturbed: bool,
    p: Option<&GrassmannPoint>,
) -> Result<LeadingForm, TreeError> {
    let coefficient = match p {
        None => None,
        Some(p) => Some(term_coefficient(b, &pairs, &i_list, p)?),
    };
    Ok(LeadingForm {
        matching: Matching::from_pairs(&pairs),
        length,
        perturbed,
        index_list: i_list,
        coefficient,
    })
}

/// Coefficient of `prod x_{ij}` (each pair with `i < j`) in the bi-Plücker
/// expansion of `Psi_B` along `i_list`, including the global sign.
pub fn term_coefficient(
    b: &EvenSubset,
    pairs: &[(usize, usize)],
    i_list: &[usize],
    p: &GrassmannPoint,
) -> Result<Rational, TreeError> {
    let mut want: Vec<(usize, usize)> = pairs.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
    want.sort_unstable();
    let terms = biplucker_pairings(b, i_list).map_err(|_| TreeError::BadSubset(b.label()))?;
    let Some((tp, sign)) = terms.into_iter().find(|(tp, _)| {
        let mut k: Vec<(usize, usize)> = tp.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
        k.sort_unstable();
        k == want
    }) else {
        return Ok(Rational::zero());
    };
    // x_{ji} = -x_{ij}
    let flips = tp.iter().filter(|(i, j)| i > j).count();
    let mut c = biplucker_coefficient(&tp, p) * rational::rat(i64::from(sign * biplucker_sign(b.half())));
    if flips % 2 == 1 {
        c = -c;
    }
    Ok(c)
}

fn choose(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = choose(&items[1..], k - 1)
        .into_iter()
        .map(|mut v| {
            v.insert(0, items[0]);
            v
        })
        .collect();
    out.extend(choose(&items[1..], k));
    out
}

/// For every four leaves the largest of the three pair sums is attained
/// at least twice.
pub fn four_point_condition(t: &PhyloTree) -> bool {
    let d = t.metric();
    let n = t.n();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    let mut sums = [
                        &d[&(i, j)] + &d[&(k, l)],
                        &d[&(i, k)] + &d[&(j, l)],
                        &d[&(i, l)] + &d[&(j, k)],
                    ];
                    sums.sort();
                    if sums[1] != sums[2] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::{Polynomial, Vars};
    use crate::config::psi_symbolic;

    fn es(n: usize, e: &[usize]) -> EvenSubset {
        EvenSubset::new(n, e).unwrap()
    }

    #[test]
    fn parse_caterpillar() {
        let t = parse_newick("((1,2),(3,4),5);").unwrap();
        t.validate().unwrap();
        assert_eq!(t.n(), 5);
        assert_eq!(t.edges().len(), 7);
        let splits: Vec<Vec<usize>> = t.splits().into_iter().collect();
        assert_eq!(splits, vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(t.distance(1, 3), rat(4));
    }

    #[test]
    fn parse_lengths() {
        let t = parse_newick("((1:2,2:1):1,3:1,4:1);").unwrap();
        assert_eq!(t.distance(1, 2), rat(3));
        assert_eq!(t.distance(1, 3), rat(4));
        let t = parse_newick("((1:0.5,2:1/3):1,3,4);").unwrap();
        assert_eq!(t.distance(1, 2), crate::algebra::rational::ratio(5, 6));
    }

    #[test]
    fn parse_errors() {
        match parse_newick("(1,2,3,4);") {
            Err(TreeError::Valence { degree: 4, vertex }) => assert!(vertex.contains("[1, 2, 3, 4]")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_newick("((1,2,3),4,5);"),
            Err(TreeError::Valence { degree: 4, .. })
        ));
        assert!(matches!(
            parse_newick("((1,2),(3,4),5)"),
            Err(TreeError::Parse { pos: 15, .. })
        ));
        assert!(matches!(
            parse_newick("((1,2),(3,x),5);"),
            Err(TreeError::Parse { pos: 10, .. })
        ));
        assert!(matches!(parse_newick("((1,2),(3,4),6);"), Err(TreeError::Labels(_))));
        assert!(matches!(parse_newick("((1:-1,2),3,4);"), Err(TreeError::Parse { .. })));
        assert!(matches!(parse_newick("(1,2);"), Err(TreeError::TooFewLeaves(2))));
    }

    #[test]
    fn bifurcating_root_is_suppressed() {
        let t = parse_newick("((1,2):1,(3,4):2);").unwrap();
        t.validate().unwrap();
        assert_eq!(t.distance(1, 3), rat(5));
        assert!(t.same_topology(&parse_newick("((1,2),3,4);").unwrap()));
    }

    #[test]
    fn newick_roundtrip() {
        for s in ["((1,2),(3,4),5);", "((1:2,2:1):1,3:1,4:1);", "(((1,5),2),(3,6),4);"] {
            let t = parse_newick(s).unwrap();
            let out = to_newick(&t);
            let back = parse_newick(&out).unwrap();
            assert_eq!(to_newick(&back), out);
            assert!(back.same_topology(&t));
            assert_eq!(back.metric(), t.metric());
        }
        assert_eq!(
            to_newick(&parse_newick("(5,(4,3),(2,1));").unwrap()),
            "((1:1,2:1):1,(3:1,4:1):1,5:1);"
        );
    }

    #[test]
    fn tree_counts() {
        assert_eq!(enumerate_trees(3).unwrap().len(), 1);
        assert_eq!(enumerate_trees(4).unwrap().len(), 3);
        assert_eq!(enumerate_trees(5).unwrap().len(), 15);
        assert_eq!(enumerate_trees(6).unwrap().len(), 105);
        assert!(enumerate_trees(8).is_err());
        for t in enumerate_trees(6).unwrap() {
            t.validate().unwrap();
            assert!(four_point_condition(&t));
        }
    }

    #[test]
    fn caterpillar_partitions() {
        let t = parse_newick("((1,2),(3,4),5);").unwrap();
        let m = disjoint_path_partition(&t, &es(5, &[1, 2, 3, 4])).unwrap();
        assert_eq!(m.pairs, vec![(1, 2), (3, 4)]);
        let m = disjoint_path_partition(&t, &es(5, &[1, 3])).unwrap();
        assert_eq!(m.pairs, vec![(1, 3)]);
        assert!(disjoint_path_partition(&t, &EvenSubset::empty(5)).is_err());
        let lf = leading_form_psi(&es(5, &[1, 2, 3, 4]), &t, None).unwrap();
        assert_eq!(lf.monomial(), "x12*x34");
        assert!(!lf.perturbed);
        assert_eq!(leading_form_psi(&es(5, &[2, 5]), &t, None).unwrap().monomial(), "x25");
    }

    #[test]
    fn leading_coefficient_completes_expansion() {
        let t = parse_newick("((1,2),(3,4),(5,6));").unwrap();
        let p = GrassmannPoint::from_i64(&[1, 1, 1, 1, 1, 0], &[2, 3, 5, 7, 0, 1]).unwrap();
        let vars = Vars::new(6);
        for b in [es(6, &[1, 2, 3, 4]), es(6, &[1, 3, 5, 6]), es(6, &[1, 2, 3, 4, 5, 6])] {
            let lf = leading_form_psi(&b, &t, Some(&p)).unwrap();
            let psi = psi_symbolic(&b, &vars, &p).unwrap();
            // Psi_B = (leading term) + (the other terms of the same expansion)
            let mut rest = Polynomial::zero();
            for (pairs, _) in crate::config::biplucker_pairings(&b, &lf.index_list).unwrap() {
                let oriented: Vec<(usize, usize)> = pairs.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
                let mut key = oriented.clone();
                key.sort_unstable();
                if key == lf.matching.pairs {
                    continue;
                }
                let c = term_coefficient(&b, &oriented, &lf.index_list, &p).unwrap();
                let mono = oriented
                    .iter()
                    .fold(Polynomial::one(), |acc, &(i, j)| &acc * &vars.plucker_x(i, j));
                rest += &mono.scale(&c);
            }
            let lead = lf
                .matching
                .pairs
                .iter()
                .fold(Polynomial::one(), |acc, &(i, j)| &acc * &vars.plucker_x(i, j))
                .scale(lf.coefficient.as_ref().unwrap());
            assert_eq!(&lead + &rest, psi, "{b}");
        }
    }

    #[test]
    fn rescaling_keeps_leading_form() {
        let t = parse_newick("(((1:2,5:1):3,2:1):1,(3:4,6:1):2,4:1);").unwrap();
        let b = es(6, &[1, 2, 3, 4, 5, 6]);
        let a = leading_form_psi(&b, &t, None).unwrap();
        let c = leading_form_psi(&b, &t.scaled(&rat(7)), None).unwrap();
        assert_eq!(a.matching, c.matching);
    }

    #[test]
    fn json_dump() {
        let t = parse_newick("((1,2),3,4);").unwrap();
        let j = t.to_json();
        assert_eq!(j["edges"].as_array().unwrap().len(), 5);
        assert_eq!(j["leaves"]["1"], serde_json::json!(0));
        assert_eq!(j["edges"][0], serde_json::json!([0, 5, "1"]));
    }
}
