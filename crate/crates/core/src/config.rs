//! Point configurations and the generator matrices built from them.
//!
//! A configuration of `n` points in `P^{n-3}` is normalized so that the first
//! `n - 2` points are the coordinate points, `Q_{n-1} = [1 : ... : 1]` and
//! `Q_n = [q_1 : ... : q_{n-2}]`. Its Gale dual is the 2×n matrix
//!
//! ```text
//! P-row: ( 1   1  ...  1      1  0 )
//! p-row: ( q1  q2 ... q_{n-2} 0  1 )
//! ```
//!
//! Points of Gr(2, n) are always given by such a pair of rows; the Plücker
//! coordinate `p_{ij}` is `P_i p_j - P_j p_i`. Symbolic points use the rows
//! `(X_i)`, `(x_i)` of [`Vars`], so Plücker variables `x_{ij}` are expanded
//! to `X_i x_j - X_j x_i` everywhere.

use crate::algebra::packed::{self, PackedPoly};
use crate::algebra::rational::{self, Rational};
use crate::algebra::{det_laplace, Family, Polynomial, Ring, Var, Vars};
use crate::combinat::{even_subsets, matchings_of, permutation_sign, EvenSubset};
use crate::pfaffian::{all_sub_pfaffians, SkewMatrix};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Attempts allowed to [`sample_generic`] before giving up.
pub const RETRY_BUDGET: usize = 1000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("Plücker coordinate {i}{j} vanishes")]
    ZeroPlucker { i: usize, j: usize },
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("point is not in G(p): Psi_{subset} vanishes")]
    NotGeneric { subset: String },
    #[error("invalid index list {0:?}")]
    InvalidIndexList(Vec<usize>),
    #[error("coordinate bound {bound} is below n^2 = {min}")]
    BoundTooSmall { bound: i64, min: i64 },
    #[error("no generic sample found after {0} attempts")]
    RetryBudgetExhausted(usize),
}

/// `n` points in `P^{n-3}` in the normalized chart: `q` holds the affine
/// coordinates of `Q_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub n: usize,
    #[serde(with = "rational::serde_vec")]
    pub q: Vec<Rational>,
}

impl Configuration {
    pub fn new(n: usize, q: Vec<Rational>) -> Result<Self, ConfigError> {
        let cfg = Configuration { n, q };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_i64(n: usize, q: &[i64]) -> Result<Self, ConfigError> {
        Self::new(n, q.iter().map(|&v| rational::rat(v)).collect())
    }

    /// Coordinates must be nonzero, pairwise distinct and different from 1.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n < 5 {
            return Err(ConfigError::InvalidConfiguration(format!(
                "need n >= 5, got {}",
                self.n
            )));
        }
        if self.q.len() != self.n - 2 {
            return Err(ConfigError::SizeMismatch {
                expected: self.n - 2,
                got: self.q.len(),
            });
        }
        let one = Rational::one();
        let mut seen = BTreeSet::new();
        for (i, v) in self.q.iter().enumerate() {
            if v.is_zero() || *v == one {
                return Err(ConfigError::InvalidConfiguration(format!(
                    "q{} = {v} (must avoid 0 and 1)",
                    i + 1
                )));
            }
            if !seen.insert(v.clone()) {
                return Err(ConfigError::InvalidConfiguration(format!(
                    "q{} = {v} repeats an earlier coordinate",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// A numeric point of Gr(2, n), given by a 2×n matrix: row 0 is the
/// upper-case row (`P`), row 1 the lower-case row (`p`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannPoint {
    pub n: usize,
    #[serde(with = "rational::serde_rows")]
    pub rows: Vec<Vec<Rational>>,
}

impl GrassmannPoint {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>) -> Result<Self, ConfigError> {
        if upper.len() != lower.len() {
            return Err(ConfigError::SizeMismatch {
                expected: upper.len(),
                got: lower.len(),
            });
        }
        Ok(GrassmannPoint {
            n: upper.len(),
            rows: vec![upper, lower],
        })
    }

    pub fn from_i64(upper: &[i64], lower: &[i64]) -> Result<Self, ConfigError> {
        Self::new(
            upper.iter().map(|&v| rational::rat(v)).collect(),
            lower.iter().map(|&v| rational::rat(v)).collect(),
        )
    }

    /// The chart point with rows `(1, ..., 1, 1, 0)` and `(a_1, ..., a_{n-2}, 0, 1)`.
    pub fn chart(affine: &[Rational]) -> Self {
        let n = affine.len() + 2;
        let mut upper = vec![Rational::one(); n];
        upper[n - 1] = Rational::zero();
        let mut lower = affine.to_vec();
        lower.push(Rational::zero());
        lower.push(Rational::one());
        GrassmannPoint {
            n,
            rows: vec![upper, lower],
        }
    }

    pub fn upper(&self, i: usize) -> &Rational {
        &self.rows[0][i - 1]
    }

    pub fn lower(&self, i: usize) -> &Rational {
        &self.rows[1][i - 1]
    }

    /// `P_i p_j - P_j p_i` (1-based).
    pub fn plucker(&self, i: usize, j: usize) -> Rational {
        self.upper(i) * self.lower(j) - self.upper(j) * self.lower(i)
    }

    pub fn check_pluckers(&self) -> Result<(), ConfigError> {
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if self.plucker(i, j).is_zero() {
                    return Err(ConfigError::ZeroPlucker { i, j });
                }
            }
        }
        Ok(())
    }
}

/// The Gale dual of a normalized configuration.
pub fn gale_dual(cfg: &Configuration) -> Result<GrassmannPoint, ConfigError> {
    cfg.validate()?;
    let p = GrassmannPoint::chart(&cfg.q);
    p.check_pluckers()?;
    Ok(p)
}

/// Determinant of the `2s × 2s` matrix whose row for `b` is
/// `(u_b p_b^{s-1}, u_b p_b^{s-2} P_b, ..., u_b P_b^{s-1}, U_b p_b^{s-1}, ..., U_b P_b^{s-1})`,
/// where `(U, u)` is the point and `(P, p)` the reference point. Works over
/// any ring, so symbolic and numeric callers share it.
pub fn psi_with<T: Ring>(
    b: &EvenSubset,
    upper: impl Fn(usize) -> T,
    lower: impl Fn(usize) -> T,
    p_upper: impl Fn(usize) -> T,
    p_lower: impl Fn(usize) -> T,
) -> T {
    let s = b.half();
    if s == 0 {
        return T::one();
    }
    let pow = |t: T, k: usize| (0..k).fold(T::one(), |acc, _| acc * t.clone());
    let rows: Vec<Vec<T>> = b
        .elems()
        .iter()
        .map(|&e| {
            let weights: Vec<T> = (0..s)
                .map(|k| pow(p_lower(e), s - 1 - k) * pow(p_upper(e), k))
                .collect();
            let lo = lower(e);
            let up = upper(e);
            weights
                .iter()
                .map(|w| lo.clone() * w.clone())
                .chain(weights.iter().map(|w| up.clone() * w.clone()))
                .collect()
        })
        .collect();
    det_laplace(&rows)
}

fn check_size(b: &EvenSubset, n: usize) -> Result<(), ConfigError> {
    if b.elems().iter().any(|&e| e > n) {
        return Err(ConfigError::SizeMismatch {
            expected: n,
            got: b.elems().last().copied().unwrap_or(0),
        });
    }
    Ok(())
}

/// `Psi_B(x, p)` with `x` the symbolic rows `(X_i)`, `(x_i)`.
pub fn psi_symbolic(b: &EvenSubset, vars: &Vars, p: &GrassmannPoint) -> Result<Polynomial, ConfigError> {
    check_size(b, p.n)?;
    check_size(b, vars.n())?;
    Ok(psi_with(
        b,
        |i| vars.poly(vars.cap_x(i)),
        |i| vars.poly(vars.x(i)),
        |i| Polynomial::constant(p.upper(i).clone()),
        |i| Polynomial::constant(p.lower(i).clone()),
    ))
}

/// `Psi_B(c, p)` for numeric points.
pub fn psi_numeric(b: &EvenSubset, c: &GrassmannPoint, p: &GrassmannPoint) -> Result<Rational, ConfigError> {
    check_size(b, p.n)?;
    check_size(b, c.n)?;
    Ok(psi_with(
        b,
        |i| c.upper(i).clone(),
        |i| c.lower(i).clone(),
        |i| p.upper(i).clone(),
        |i| p.lower(i).clone(),
    ))
}

/// The matrix `A(x, y, p)` with entries `(y_ij / p_ij) (X_i x_j - X_j x_i)`.
pub fn build_a(vars: &Vars, y: &GrassmannPoint, p: &GrassmannPoint) -> Result<SkewMatrix, ConfigError> {
    if y.n != p.n || vars.n() != p.n {
        return Err(ConfigError::SizeMismatch {
            expected: p.n,
            got: y.n,
        });
    }
    p.check_pluckers()?;
    Ok(SkewMatrix::from_fn(p.n, |i, j| {
        vars.plucker_x(i, j).scale(&(y.plucker(i, j) / p.plucker(i, j)))
    }))
}

/// `F_B(x, y, p)`: the Pfaffian of the principal submatrix of `A(x, y, p)` on `B`.
pub fn pfaffian_generator(
    b: &EvenSubset,
    vars: &Vars,
    y: &GrassmannPoint,
    p: &GrassmannPoint,
) -> Result<Polynomial, ConfigError> {
    let a = build_a(vars, y, p)?;
    check_size(b, p.n)?;
    Ok(crate::pfaffian::sub_pfaffian(&a, b).expect("size checked"))
}

/// All `2^{n-1}` sub-Pfaffians of a skew matrix, keyed by subset.
pub fn generators_of(a: &SkewMatrix) -> BTreeMap<EvenSubset, Polynomial> {
    let n = a.n();
    let table = all_sub_pfaffians(a);
    even_subsets(n)
        .expect("n >= 1")
        .into_iter()
        .map(|b| {
            let f = table[&b.mask()].clone();
            (b, f)
        })
        .collect()
}

/// The chart matrix `M` in the variables `x_1, ..., x_{n-2}`.
pub fn build_m(vars: &Vars, cfg: &Configuration, y_affine: &[Rational]) -> Result<SkewMatrix, ConfigError> {
    cfg.validate()?;
    let n = cfg.n;
    if y_affine.len() != n - 2 {
        return Err(ConfigError::SizeMismatch {
            expected: n - 2,
            got: y_affine.len(),
        });
    }
    if vars.n() != n {
        return Err(ConfigError::SizeMismatch {
            expected: n,
            got: vars.n(),
        });
    }
    let q = &cfg.q;
    let x = |i: usize| vars.poly(vars.x(i));
    Ok(SkewMatrix::from_fn(n, |i, j| {
        if j == n {
            Polynomial::one()
        } else if j == n - 1 {
            // -x_i y_i / p_i
            x(i).scale(&(-(&y_affine[i - 1]) / &q[i - 1]))
        } else {
            let c = (&y_affine[j - 1] - &y_affine[i - 1]) / (&q[j - 1] - &q[i - 1]);
            (&x(j) - &x(i)).scale(&c)
        }
    }))
}

/// Specialization of the symbolic rows to the chart of `M`:
/// `X_i = 1 (i <= n-1)`, `X_n = 0`, `x_{n-1} = 0`, `x_n = 1`.
pub fn chart_bindings(vars: &Vars) -> BTreeMap<Var, Polynomial> {
    let n = vars.n();
    let mut b: BTreeMap<Var, Polynomial> = (1..n).map(|i| (vars.cap_x(i), Polynomial::one())).collect();
    b.insert(vars.cap_x(n), Polynomial::zero());
    b.insert(vars.x(n - 1), Polynomial::zero());
    b.insert(vars.x(n), Polynomial::one());
    b
}

/// How the three points of Okada's identity are supplied.
#[derive(Clone, Debug)]
pub enum OkadaMode {
    /// All six rows symbolic.
    Symbolic,
    /// Symbolic upper rows, every lower row set to 1.
    Specialized,
    /// Numeric points `x`, `y`, `p`.
    Numeric {
        x: GrassmannPoint,
        y: GrassmannPoint,
        p: GrassmannPoint,
    },
}

/// Checks `F_B(x,y,p) * prod_{i<j in B} p_ij == Psi_B(x,p) Psi_B(y,p)` with the
/// denominators cleared on the left by expanding the Pfaffian over
/// matchings.
pub fn check_okada(b: &EvenSubset, mode: &OkadaMode) -> bool {
    match mode {
        OkadaMode::Symbolic | OkadaMode::Specialized => {
            let vars = Vars::new(b.n());
            let specialized = matches!(mode, OkadaMode::Specialized);
            if ((6 * b.n()) as u32) <= packed::MAX_VARS && b.len() <= 8 {
                okada_symbolic(b, &vars, specialized, PackedPoly::var)
            } else {
                okada_symbolic(b, &vars, specialized, Polynomial::var)
            }
        }
        OkadaMode::Numeric { x, y, p } => {
            let pt = |f: Family| match f {
                Family::UpperX | Family::LowerX => x,
                Family::UpperY | Family::LowerY => y,
                _ => p,
            };
            okada_sides(
                b,
                |i, j| x.plucker(i, j),
                |i, j| y.plucker(i, j),
                |i, j| p.plucker(i, j),
                |fu, _, _, _| {
                    let c = pt(fu);
                    psi_with(
                        b,
                        |i| c.upper(i).clone(),
                        |i| c.lower(i).clone(),
                        |i| p.upper(i).clone(),
                        |i| p.lower(i).clone(),
                    )
                },
            )
        }
    }
}

fn okada_symbolic<T: Ring>(b: &EvenSubset, vars: &Vars, specialized: bool, var: impl Fn(Var) -> T) -> bool {
    let row = |fam: Family, i: usize| {
        let low = matches!(fam, Family::LowerX | Family::LowerY | Family::LowerP);
        if specialized && low {
            T::one()
        } else {
            var(vars.row(fam, i))
        }
    };
    let minor = |up: Family, lo: Family, i: usize, j: usize| row(up, i) * row(lo, j) - row(up, j) * row(lo, i);
    okada_sides(
        b,
        |i, j| minor(Family::UpperX, Family::LowerX, i, j),
        |i, j| minor(Family::UpperY, Family::LowerY, i, j),
        |i, j| minor(Family::UpperP, Family::LowerP, i, j),
        |fam_u, fam_l, fam_pu, fam_pl| {
            psi_with(
                b,
                |i| row(fam_u, i),
                |i| row(fam_l, i),
                |i| row(fam_pu, i),
                |i| row(fam_pl, i),
            )
        },
    )
}

fn okada_sides<T: Ring>(
    b: &EvenSubset,
    xm: impl Fn(usize, usize) -> T,
    ym: impl Fn(usize, usize) -> T,
    pm: impl Fn(usize, usize) -> T,
    psi: impl Fn(Family, Family, Family, Family) -> T,
) -> bool {
    let elems = b.elems();
    let mut lhs = T::zero();
    for m in matchings_of(elems) {
        let mut term = T::one();
        for &(i, j) in &m.pairs {
            term = term * xm(i, j) * ym(i, j);
        }
        for (k, &i) in elems.iter().enumerate() {
            for &j in &elems[k + 1..] {
                if !m.pairs.contains(&(i, j)) {
                    term = term * pm(i, j);
                }
            }
        }
        lhs = if m.sign > 0 { lhs + term } else { lhs - term };
    }
    let rhs = psi(Family::UpperX, Family::LowerX, Family::UpperP, Family::LowerP)
        * psi(Family::UpperY, Family::LowerY, Family::UpperP, Family::LowerP);
    lhs == rhs
}

/// One term `sign * coeff * prod_r x_{i_r j_r}` of a bi-Plücker expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipluckerTerm {
    /// Pairs `(i_r, j_r)` in the order of the index list.
    pub pairs: Vec<(usize, usize)>,
    pub sign: i8,
    pub coeff: Rational,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// The `s!` bijections from the index list `i_1, ..., i_s` onto the
/// remaining elements of `B`, as pairs `(i_r, j_r)` with the sign of the word
/// `(i_1, ..., i_s, j_1, ..., j_s)` relative to sorted `B`.
pub fn biplucker_pairings(b: &EvenSubset, i_list: &[usize]) -> Result<Vec<(Vec<(usize, usize)>, i8)>, ConfigError> {
    let s = b.half();
    let distinct: BTreeSet<usize> = i_list.iter().copied().collect();
    if i_list.len() != s || distinct.len() != s || !i_list.iter().all(|&i| b.contains(i)) {
        return Err(ConfigError::InvalidIndexList(i_list.to_vec()));
    }
    let rest: Vec<usize> = b.elems().iter().copied().filter(|e| !distinct.contains(e)).collect();
    Ok(permutations(&rest)
        .into_iter()
        .map(|js| {
            let word: Vec<usize> = i_list.iter().chain(js.iter()).copied().collect();
            let pairs = i_list.iter().copied().zip(js.iter().copied()).collect();
            (pairs, permutation_sign(&word))
        })
        .collect())
}

/// The `s!` terms of the expansion of `Psi_B` along the index list
/// `i_1, ..., i_s`: one for each bijection onto the remaining elements
/// `j_1, ..., j_s` of `B`, with coefficient `prod_r prod_{m != r} p_{i_r j_m}`.
pub fn biplucker_terms(
    b: &EvenSubset,
    i_list: &[usize],
    p: &GrassmannPoint,
) -> Result<Vec<BipluckerTerm>, ConfigError> {
    check_size(b, p.n)?;
    Ok(biplucker_pairings(b, i_list)?
        .into_iter()
        .map(|(pairs, sign)| BipluckerTerm {
            coeff: biplucker_coefficient(&pairs, p),
            pairs,
            sign,
        })
        .collect())
}

/// `prod_r prod_{m != r} p_{i_r j_m}` for pairs `(i_r, j_r)`.
pub fn biplucker_coefficient(pairs: &[(usize, usize)], p: &GrassmannPoint) -> Rational {
    let mut coeff = Rational::one();
    for (r, &(i, _)) in pairs.iter().enumerate() {
        for (m, &(_, j)) in pairs.iter().enumerate() {
            if m != r {
                coeff *= p.plucker(i, j);
            }
        }
    }
    coeff
}

/// The bi-Plücker expansion as a polynomial in `(x, X)`.
pub fn biplucker_expand(
    b: &EvenSubset,
    i_list: &[usize],
    vars: &Vars,
    p: &GrassmannPoint,
) -> Result<Polynomial, ConfigError> {
    let mut total = Polynomial::zero();
    for t in biplucker_terms(b, i_list, p)? {
        let mut term = Polynomial::constant(if t.sign > 0 { t.coeff } else { -t.coeff });
        for &(i, j) in &t.pairs {
            term = &term * &vars.plucker_x(i, j);
        }
        total += &term;
    }
    Ok(total)
}

/// Global sign relating the bi-Plücker expansion to `Psi_B` under the
/// orientation `x_{ij} = X_i x_j - X_j x_i`: expansion = sign * Psi_B,
/// with sign = (-1)^{s(s+1)/2}. Independent of the index list; pinned by
/// tests against [`psi_symbolic`].
pub fn biplucker_sign(s: usize) -> i8 {
    if (s * (s + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `c` lies in `G(p)` when every `Psi_B(c, p)` is nonzero.
pub fn genericity_check(c: &GrassmannPoint, p: &GrassmannPoint) -> bool {
    first_vanishing_psi(c, p).is_none()
}

fn first_vanishing_psi(c: &GrassmannPoint, p: &GrassmannPoint) -> Option<EvenSubset> {
    if c.n != p.n {
        return Some(EvenSubset::empty(p.n));
    }
    even_subsets(p.n)
        .ok()?
        .into_iter()
        .find(|b| psi_numeric(b, c, p).map_or(true, |v| v.is_zero()))
}

/// A point of the diagonal torus on the spin coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingVector {
    pub entries: BTreeMap<EvenSubset, Rational>,
}

impl ScalingVector {
    pub fn ones(n: usize) -> Self {
        ScalingVector {
            entries: even_subsets(n)
                .expect("n >= 1")
                .into_iter()
                .map(|b| (b, Rational::one()))
                .collect(),
        }
    }

    pub fn get(&self, b: &EvenSubset) -> Rational {
        self.entries.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn inverse(&self) -> ScalingVector {
        ScalingVector {
            entries: self.entries.iter().map(|(b, v)| (b.clone(), v.recip())).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|(b, v)| serde_json::json!({"B": b, "value": rational::to_string(v)}))
                .collect(),
        )
    }
}

/// `a(c)_B = Psi_B(c, p) / Psi_B(y, p)`.
pub fn scaling_vector(
    c: &GrassmannPoint,
    y: &GrassmannPoint,
    p: &GrassmannPoint,
) -> Result<ScalingVector, ConfigError> {
    let mut entries = BTreeMap::new();
    for b in even_subsets(p.n).expect("n >= 1") {
        let num = psi_numeric(&b, c, p)?;
        let den = psi_numeric(&b, y, p)?;
        if num.is_zero() || den.is_zero() {
            return Err(ConfigError::NotGeneric { subset: b.label() });
        }
        entries.insert(b, num / den);
    }
    Ok(ScalingVector { entries })
}

/// A seeded generic instance: configuration, its Gale dual `p`, the
/// auxiliary point `y` (in chart form, from `y_affine`) and a translate
/// point `c`, all with nonvanishing Plücker coordinates and `y, c ∈ G(p)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sample {
    pub config: Configuration,
    pub p: GrassmannPoint,
    #[serde(with = "rational::serde_vec")]
    pub y_affine: Vec<Rational>,
    pub y: GrassmannPoint,
    pub c: GrassmannPoint,
    pub retries: usize,
}

fn draw_affine(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| rational::rat(rng.gen_range(-bound..=bound))).collect()
}

pub fn sample_generic(n: usize, seed: u64, bound: i64) -> Result<Sample, ConfigError> {
    sample_inner(n, None, seed, bound)
}

/// As [`sample_generic`] but with a fixed configuration.
pub fn sample_with_config(cfg: &Configuration, seed: u64, bound: i64) -> Result<Sample, ConfigError> {
    cfg.validate()?;
    sample_inner(cfg.n, Some(cfg), seed, bound)
}

fn sample_inner(n: usize, fixed: Option<&Configuration>, seed: u64, bound: i64) -> Result<Sample, ConfigError> {
    if n < 5 {
        return Err(ConfigError::InvalidConfiguration(format!("need n >= 5, got {n}")));
    }
    let min = (n * n) as i64;
    if bound < min {
        return Err(ConfigError::BoundTooSmall { bound, min });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut retries = 0;

    let config = match fixed {
        Some(cfg) => cfg.clone(),
        None => loop {
            if retries >= RETRY_BUDGET {
                return Err(ConfigError::RetryBudgetExhausted(retries));
            }
            match Configuration::new(n, draw_affine(&mut rng, n - 2, bound)) {
                Ok(cfg) => break cfg,
                Err(_) => retries += 1,
            }
        },
    };
    let p = gale_dual(&config)?;

    let (y_affine, y) = loop {
        if retries >= RETRY_BUDGET {
            return Err(ConfigError::RetryBudgetExhausted(retries));
        }
        let ya = draw_affine(&mut rng, n - 2, bound);
        let y = GrassmannPoint::chart(&ya);
        if y.check_pluckers().is_ok() && genericity_check(&y, &p) {
            break (ya, y);
        }
        retries += 1;
    };

    let c = loop {
        if retries >= RETRY_BUDGET {
            return Err(ConfigError::RetryBudgetExhausted(retries));
        }
        let c = GrassmannPoint::new(draw_affine(&mut rng, n, bound), draw_affine(&mut rng, n, bound))?;
        if c.check_pluckers().is_ok() && genericity_check(&c, &p) && c != y {
            break c;
        }
        retries += 1;
    };

    Ok(Sample {
        config,
        p,
        y_affine,
        y,
        c,
        retries,
    })
}

/// A further translate point drawn from a seeded stream, for callers that
/// need more than one `c`.
pub fn sample_translate(p: &GrassmannPoint, seed: u64, bound: i64) -> Result<GrassmannPoint, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        let c = GrassmannPoint::new(draw_affine(&mut rng, p.n, bound), draw_affine(&mut rng, p.n, bound))?;
        if c.check_pluckers().is_ok() && genericity_check(&c, p) {
            return Ok(c);
        }
    }
    Err(ConfigError::RetryBudgetExhausted(RETRY_BUDGET))
}

/// Random rational 2×n point with small entries, for numeric spot checks.
pub fn random_point(n: usize, rng: &mut impl Rng, bound: i64) -> GrassmannPoint {
    let mut draw = || {
        let num = rng.gen_range(-bound..=bound);
        let den = rng.gen_range(1..=bound);
        rational::ratio(num, den)
    };
    let upper = (0..n).map(|_| draw()).collect();
    let lower = (0..n).map(|_| draw()).collect();
    GrassmannPoint::new(upper, lower).expect("equal lengths")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, ratio};
    use crate::pfaffian::sub_pfaffian;

    fn es(n: usize, e: &[usize]) -> EvenSubset {
        EvenSubset::new(n, e).unwrap()
    }

    fn cfg5() -> Configuration {
        Configuration::from_i64(5, &[2, 3, 5]).unwrap()
    }

    #[test]
    fn gale_dual_rows_and_pluckers() {
        let p = gale_dual(&cfg5()).unwrap();
        assert_eq!(p.rows[0], [1, 1, 1, 1, 0].map(rat).to_vec());
        assert_eq!(p.rows[1], [2, 3, 5, 0, 1].map(rat).to_vec());
        assert_eq!(p.plucker(1, 2), rat(1));
        assert_eq!(p.plucker(1, 4), rat(-2));
        assert_eq!(p.plucker(4, 5), rat(1));
        for i in 1..=3 {
            assert_eq!(p.plucker(i, 5), rat(1));
            for j in i + 1..=3 {
                assert_eq!(p.plucker(i, j), &cfg5().q[j - 1] - &cfg5().q[i - 1]);
            }
        }
    }

    #[test]
    fn invalid_configurations() {
        assert!(Configuration::from_i64(5, &[2, 2, 5]).is_err());
        assert!(Configuration::from_i64(5, &[0, 2, 5]).is_err());
        assert!(Configuration::from_i64(5, &[1, 2, 5]).is_err());
        assert!(Configuration::from_i64(5, &[2, 5]).is_err());
        assert!(Configuration::from_i64(4, &[2, 5]).is_err());
    }

    #[test]
    fn json_shapes() {
        let j = serde_json::to_value(cfg5()).unwrap();
        assert_eq!(j, serde_json::json!({"n": 5, "q": ["2", "3", "5"]}));
        let p = gale_dual(&cfg5()).unwrap();
        let j = serde_json::to_value(&p).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"n": 5, "rows": [["1","1","1","1","0"],["2","3","5","0","1"]]})
        );
        let back: GrassmannPoint = serde_json::from_value(j).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn psi_two_element_sign() {
        let vars = Vars::new(5);
        let p = gale_dual(&cfg5()).unwrap();
        let b = es(5, &[2, 4]);
        // direct 2×2 determinant: rows (x_b, X_b) → x_2 X_4 - X_2 x_4 = -x_{24}
        assert_eq!(psi_symbolic(&b, &vars, &p).unwrap(), -vars.plucker_x(2, 4));
        assert_eq!(
            psi_symbolic(&EvenSubset::empty(5), &vars, &p).unwrap(),
            Polynomial::one()
        );
    }

    #[test]
    fn psi_numeric_is_evaluation_of_symbolic() {
        let vars = Vars::new(6);
        let p = gale_dual(&Configuration::from_i64(6, &[2, 3, 5, 7]).unwrap()).unwrap();
        let c = GrassmannPoint::from_i64(&[4, -1, 3, 2, 6, 1], &[1, 5, -2, 8, 3, -7]).unwrap();
        let mut vals = BTreeMap::new();
        for i in 1..=6 {
            vals.insert(vars.cap_x(i), c.upper(i).clone());
            vals.insert(vars.x(i), c.lower(i).clone());
        }
        for b in even_subsets(6).unwrap() {
            let sym = psi_symbolic(&b, &vars, &p).unwrap().evaluate_partial(&vals);
            assert_eq!(sym.as_constant(), Some(psi_numeric(&b, &c, &p).unwrap()), "{b}");
        }
    }

    #[test]
    fn a_entries_and_pairs() {
        let vars = Vars::new(5);
        let p = gale_dual(&cfg5()).unwrap();
        let y = GrassmannPoint::chart(&[7, -4, 11].map(rat));
        let a = build_a(&vars, &y, &p).unwrap();
        for i in 1..=5 {
            for j in 1..=5 {
                assert_eq!(a.entry(i, j), -a.entry(j, i));
            }
            for j in i + 1..=5 {
                let want = vars.plucker_x(i, j).scale(&(y.plucker(i, j) / p.plucker(i, j)));
                assert_eq!(a.entry(i, j), want);
                assert_eq!(pfaffian_generator(&es(5, &[i, j]), &vars, &y, &p).unwrap(), want);
            }
        }
        assert_eq!(
            pfaffian_generator(&EvenSubset::empty(5), &vars, &y, &p).unwrap(),
            Polynomial::one()
        );
    }

    #[test]
    fn entry_coefficient_example() {
        // y_12 = 2 and p_12 = 3 give (2/3)(X1 x2 - X2 x1)
        let vars = Vars::new(5);
        let p = GrassmannPoint::from_i64(&[1, 1, 1, 1, 0], &[2, 5, 7, 0, 1]).unwrap();
        let y = GrassmannPoint::from_i64(&[1, 1, 1, 1, 0], &[3, 5, 8, 0, 1]).unwrap();
        assert_eq!(p.plucker(1, 2), rat(3));
        assert_eq!(y.plucker(1, 2), rat(2));
        let a = build_a(&vars, &y, &p).unwrap();
        assert_eq!(a.entry(1, 2), vars.plucker_x(1, 2).scale(&ratio(2, 3)));
    }

    #[test]
    fn okada_generator_identity_n5() {
        let vars = Vars::new(5);
        let p = gale_dual(&cfg5()).unwrap();
        let y = GrassmannPoint::chart(&[7, -4, 11].map(rat));
        let gens = generators_of(&build_a(&vars, &y, &p).unwrap());
        for (b, f) in &gens {
            let mut prod = Rational::one();
            for (k, &i) in b.elems().iter().enumerate() {
                for &j in &b.elems()[k + 1..] {
                    prod *= p.plucker(i, j);
                }
            }
            let rhs = psi_symbolic(b, &vars, &p)
                .unwrap()
                .scale(&(psi_numeric(b, &y, &p).unwrap() / prod));
            assert_eq!(f, &rhs, "{b}");
        }
    }

    #[test]
    fn okada_small_symbolic() {
        assert!(check_okada(&es(4, &[2, 3]), &OkadaMode::Symbolic));
        assert!(check_okada(&es(4, &[1, 2, 3, 4]), &OkadaMode::Symbolic));
        assert!(check_okada(&es(5, &[1, 2, 4, 5]), &OkadaMode::Specialized));
        assert!(check_okada(&EvenSubset::empty(4), &OkadaMode::Symbolic));
    }

    #[test]
    fn okada_numeric_points() {
        let x = GrassmannPoint::from_i64(&[1, 2, 3, 4, -2, 1], &[5, -1, 2, 7, 3, 3]).unwrap();
        let y = GrassmannPoint::from_i64(&[2, -3, 1, 1, 4, 5], &[1, 4, -2, 3, 1, -1]).unwrap();
        let p = GrassmannPoint::from_i64(&[3, 1, -1, 2, 1, 7], &[1, 2, 5, -3, 4, 2]).unwrap();
        for b in even_subsets(6).unwrap() {
            let mode = OkadaMode::Numeric {
                x: x.clone(),
                y: y.clone(),
                p: p.clone(),
            };
            assert!(check_okada(&b, &mode), "{b}");
        }
    }

    #[test]
    fn m_is_chart_specialization_of_a() {
        let vars = Vars::new(6);
        let cfg = Configuration::from_i64(6, &[2, -3, 5, 7]).unwrap();
        let ya = [4, 9, -2, 6].map(rat);
        let p = gale_dual(&cfg).unwrap();
        let y = GrassmannPoint::chart(&ya);
        let a = build_a(&vars, &y, &p).unwrap();
        let m = build_m(&vars, &cfg, &ya).unwrap();
        let bind = chart_bindings(&vars);
        for i in 1..=6 {
            for j in i + 1..=6 {
                assert_eq!(a.entry(i, j).substitute(&bind).unwrap(), m.entry(i, j), "({i},{j})");
            }
        }
        for i in 1..=5 {
            assert_eq!(m.entry(i, 6), Polynomial::one());
        }
        for i in 1..=4 {
            let want = vars.poly(vars.x(i)).scale(&(-(&ya[i - 1]) / &cfg.q[i - 1]));
            assert_eq!(m.entry(i, 5), want);
        }
    }

    #[test]
    fn biplucker_matches_psi_with_global_sign() {
        let vars = Vars::new(6);
        let p = GrassmannPoint::from_i64(&[3, -1, 2, 5, 1, 4], &[1, 4, -3, 2, 7, -2]).unwrap();
        for b in [es(6, &[2, 5]), es(6, &[1, 2, 3, 4]), es(6, &[1, 3, 4, 6])] {
            let psi = psi_symbolic(&b, &vars, &p).unwrap();
            let s = b.half();
            let e = b.elems();
            for i_list in [vec![e[0]], vec![e[1]], e[..s].to_vec(), vec![e[s - 1]; 1]] {
                if i_list.len() != s {
                    continue;
                }
                let exp = biplucker_expand(&b, &i_list, &vars, &p).unwrap();
                assert_eq!(exp.scale(&rat(biplucker_sign(s) as i64)), psi, "{b} {i_list:?}");
            }
            if s == 2 {
                let alt = vec![e[3], e[1]];
                let exp = biplucker_expand(&b, &alt, &vars, &p).unwrap();
                assert_eq!(exp.scale(&rat(biplucker_sign(s) as i64)), psi);
            }
        }
        assert!(biplucker_terms(&es(6, &[1, 2, 3, 4]), &[1, 1], &p).is_err());
        assert!(biplucker_terms(&es(6, &[1, 2, 3, 4]), &[1, 5], &p).is_err());
    }

    #[test]
    fn biplucker_single_pair_and_coefficient() {
        let vars = Vars::new(4);
        let p = GrassmannPoint::from_i64(&[3, -1, 2, 5], &[1, 4, -3, 2]).unwrap();
        let b = es(4, &[1, 3]);
        assert_eq!(biplucker_expand(&b, &[1], &vars, &p).unwrap(), vars.plucker_x(1, 3));
        let b = es(4, &[1, 2, 3, 4]);
        let terms = biplucker_terms(&b, &[1, 2], &p).unwrap();
        assert_eq!(terms.len(), 2);
        for t in terms {
            let (i1, j1) = t.pairs[0];
            let (i2, j2) = t.pairs[1];
            assert_eq!(t.coeff, p.plucker(i1, j2) * p.plucker(i2, j1));
        }
    }

    #[test]
    fn genericity_examples() {
        let p = gale_dual(&cfg5()).unwrap();
        assert!(!genericity_check(&p, &p));
        let s = sample_generic(5, 3, 50).unwrap();
        assert!(genericity_check(&s.c, &s.p));
        assert!(genericity_check(&s.y, &s.p));
        assert_eq!(psi_numeric(&EvenSubset::empty(5), &p, &p).unwrap(), rat(1));
    }

    #[test]
    fn scaling_vector_properties() {
        let s = sample_generic(5, 11, 50).unwrap();
        let a = scaling_vector(&s.y, &s.y, &s.p).unwrap();
        assert_eq!(a, ScalingVector::ones(5));
        let a = scaling_vector(&s.c, &s.y, &s.p).unwrap();
        assert_eq!(a.get(&EvenSubset::empty(5)), rat(1));
        assert!(a.entries.values().all(|v| !v.is_zero()));
        assert!(scaling_vector(&s.p, &s.y, &s.p).is_err());
    }

    #[test]
    fn scaled_generators_switch_translate_point() {
        let s = sample_generic(5, 5, 50).unwrap();
        let vars = Vars::new(5);
        let a = scaling_vector(&s.c, &s.y, &s.p).unwrap();
        let fy = generators_of(&build_a(&vars, &s.y, &s.p).unwrap());
        let fc = generators_of(&build_a(&vars, &s.c, &s.p).unwrap());
        for (b, f) in &fy {
            assert_eq!(f.scale(&a.get(b)), fc[b], "{b}");
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_generic(6, 42, 100).unwrap();
        let b = sample_generic(6, 42, 100).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let c = sample_generic(6, 43, 100).unwrap();
        assert_ne!(a.c, c.c);
        assert!(sample_generic(5, 1, 10).is_err());
        let s = sample_generic(5, 9, 50).unwrap();
        assert!(s.retries < 10, "retries = {}", s.retries);
    }

    #[test]
    fn sub_pfaffian_of_a_matches_table() {
        let vars = Vars::new(5);
        let s = sample_generic(5, 2, 50).unwrap();
        let a = build_a(&vars, &s.y, &s.p).unwrap();
        let gens = generators_of(&a);
        for (b, f) in gens {
            assert_eq!(sub_pfaffian(&a, &b).unwrap(), f);
        }
    }
}
