//! Per-multidegree comparison of the quadrics vanishing on the Cox
//! presentation `f_B -> F_B(x, y, p)` with spans of Wick quadrics and their
//! torus translates.

use crate::algebra::rational::{self, Rational};
use crate::algebra::{Polynomial, RationalMatrix, Vars};
use crate::combinat::{even_subsets, EvenSubset};
use crate::config::{
    build_a, build_m, generators_of, sample_generic, sample_translate, sample_with_config, scaling_vector, ConfigError,
    Configuration, GrassmannPoint, Sample,
};
use crate::pfaffian::sub_pfaffian;
use crate::picard::{multidegree_to_pic, reflect, simple_roots, PicClass};
use crate::spinor::{
    evaluation_kernel, monomials_by_degree, scale_quadric, wick_spans, Multidegree, QuadMonomial, Quadric,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

/// A quadratic multidegree with its monomials. `representative` is `Some(s)`
/// for `N_s = deg(f_∅ f_{1..2s})`.
#[derive(Clone, Debug)]
pub struct QuadDegree {
    pub degree: Multidegree,
    pub monomials: Vec<QuadMonomial>,
    pub representative: Option<usize>,
}

/// `deg(f_∅ f_{1..2s})`.
pub fn representative_degree(n: usize, s: usize) -> Multidegree {
    let full: Vec<usize> = (1..=2 * s).collect();
    QuadMonomial::new(EvenSubset::empty(n), EvenSubset::new(n, &full).expect("2s <= n")).degree()
}

/// Every multidegree of a product `f_A f_B`, sorted.
pub fn quadratic_degrees(n: usize) -> Vec<QuadDegree> {
    let reps: BTreeMap<Multidegree, usize> = (0..=n / 2).map(|s| (representative_degree(n, s), s)).collect();
    monomials_by_degree(n)
        .into_iter()
        .map(|(degree, monomials)| QuadDegree {
            representative: reps.get(&degree).copied(),
            degree,
            monomials,
        })
        .collect()
}

/// Which parametrization of the Cox ring the spin coordinates are sent to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoxPresentation {
    /// `F_B(x, y, p)` from `A`, in all `2n` variables `x_i, X_i`.
    Grassmannian,
    /// Pfaffians of `M_B`, in `x_1, ..., x_{n-2}`.
    Chart,
}

/// Images of all spin coordinates under the chosen presentation.
pub fn cox_images(
    presentation: CoxPresentation,
    cfg: &Configuration,
    y_affine: &[Rational],
) -> Result<BTreeMap<EvenSubset, Polynomial>, ConfigError> {
    let vars = Vars::new(cfg.n);
    let p = crate::config::gale_dual(cfg)?;
    let y = GrassmannPoint::chart(y_affine);
    if !crate::config::genericity_check(&y, &p) {
        return Err(ConfigError::NotGeneric { subset: "y".into() });
    }
    match presentation {
        CoxPresentation::Grassmannian => Ok(generators_of(&build_a(&vars, &y, &p)?)),
        CoxPresentation::Chart => Ok(generators_of(&build_m(&vars, cfg, y_affine)?)),
    }
}

/// Quadrics of degree `d` vanishing on the Cox presentation: `(dimension, basis)`.
/// The factor `T^{1 - |B|/2}` is constant within a multidegree and omitted.
pub fn cox_quadric_space(
    presentation: CoxPresentation,
    cfg: &Configuration,
    y_affine: &[Rational],
    d: &Multidegree,
) -> Result<(usize, Vec<Quadric>), ConfigError> {
    let images = cox_images(presentation, cfg, y_affine)?;
    let mons = monomials_by_degree(cfg.n).remove(d).unwrap_or_default();
    let (_, basis) = evaluation_kernel(cfg.n, &mons, &images);
    Ok((basis.len(), basis))
}

/// Whether every Wick quadric and every `a(c)`-scaled Wick quadric vanishes
/// identically under `f_B -> F_B(x, y, p)`. With `c = y` the scaling is
/// trivial.
pub fn check_inclusion(p: &GrassmannPoint, y: &GrassmannPoint, c: &GrassmannPoint) -> Result<bool, ConfigError> {
    let a = scaling_vector(c, y, p)?;
    let images = generators_of(&build_a(&Vars::new(p.n), y, p)?);
    Ok(check_inclusion_with(&images, &a))
}

/// As [`check_inclusion`] with precomputed images and an explicit scaling.
pub fn check_inclusion_with(images: &BTreeMap<EvenSubset, Polynomial>, a: &crate::config::ScalingVector) -> bool {
    let n = images.keys().next().map_or(0, EvenSubset::n);
    crate::spinor::all_wick_quadrics(n)
        .iter()
        .all(|q| q.evaluate_poly(images).is_zero() && scale_quadric(q, a).evaluate_poly(images).is_zero())
}

/// Per-degree comparison data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: Multidegree,
    pub monomial_count: usize,
    pub cox_kernel_dim: usize,
    pub spin_rank: usize,
    pub combined_rank: usize,
    pub quotient_dim: usize,
    pub equal: bool,
    /// `Some(s)` when this is the representative degree `N_s`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<usize>,
    /// Translates needed for equality in this degree (1 = Wick span alone).
    pub translates_used: usize,
}

/// Options for [`check_main`].
#[derive(Clone, Debug)]
pub struct MainOptions {
    /// Translates including the identity.
    pub translates: usize,
    /// Extra translates to try in degrees where equality fails.
    pub escalate: usize,
    /// Worker threads for the per-degree loop.
    pub jobs: usize,
    pub bound: i64,
}

impl Default for MainOptions {
    fn default() -> Self {
        MainOptions {
            translates: 2,
            escalate: 0,
            jobs: 1,
            bound: 1000,
        }
    }
}

/// Outcome of one main-theorem run.
#[derive(Clone, Debug, Serialize)]
pub struct MainReport {
    pub n: usize,
    pub seed: u64,
    pub config: Configuration,
    pub degrees: Vec<DegreeReport>,
    pub verdict: bool,
    pub translates_used: usize,
    /// Quotient dimension equals `2^{s-1}` (1 for `s = 0`) at every `N_s`.
    pub representatives_ok: bool,
    /// Wick span ⊆ combined span ⊆ Cox kernel in every degree.
    pub inclusions_ok: bool,
    pub timings_ms: BTreeMap<String, u128>,
}

impl MainReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn degree(&self, d: &Multidegree) -> Option<&DegreeReport> {
        self.degrees.iter().find(|r| &r.degree == d)
    }
}

fn quadric_vectors(qs: &[Quadric], mons: &[QuadMonomial]) -> Vec<Vec<Rational>> {
    qs.iter()
        .map(|q| mons.iter().map(|m| q.coefficient(m)).collect())
        .collect()
}

fn rank_of(rows: &[Vec<Rational>], cols: usize) -> usize {
    if rows.is_empty() {
        0
    } else {
        RationalMatrix::from_rows(rows.to_vec(), cols).rank()
    }
}

/// Samples data with [`sample_generic`] and runs [`check_main_on`] with
/// `c` and further seeded translates.
pub fn check_main(n: usize, seed: u64, opts: &MainOptions) -> Result<MainReport, ConfigError> {
    let start = Instant::now();
    let sample = sample_generic(n, seed, opts.bound)?;
    main_with_sample(sample, seed, opts, start)
}

/// As [`check_main`] with a fixed configuration.
pub fn check_main_config(cfg: &Configuration, seed: u64, opts: &MainOptions) -> Result<MainReport, ConfigError> {
    let start = Instant::now();
    let sample = sample_with_config(cfg, seed, opts.bound)?;
    main_with_sample(sample, seed, opts, start)
}

fn main_with_sample(sample: Sample, seed: u64, opts: &MainOptions, start: Instant) -> Result<MainReport, ConfigError> {
    let mut cs = vec![sample.c.clone()];
    let wanted = opts.translates.max(1) - 1 + opts.escalate;
    let mut k = 1u64;
    while cs.len() < wanted {
        cs.push(sample_translate(
            &sample.p,
            seed.wrapping_add(k.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
            opts.bound,
        )?);
        k += 1;
    }
    cs.truncate(wanted);
    let sampled_ms = start.elapsed().as_millis();
    let mut report = check_main_on(&sample, &cs, opts)?;
    report.seed = seed;
    report.timings_ms.insert("sample".into(), sampled_ms);
    report.timings_ms.insert("total".into(), start.elapsed().as_millis());
    Ok(report)
}

/// Compares, in every quadratic degree, the Cox kernel with the span of the
/// Wick quadrics and their translates by `a(c)` for the given points `c`.
/// The first `opts.translates - 1` points are always used; the rest only in
/// degrees where equality fails.
pub fn check_main_on(sample: &Sample, cs: &[GrassmannPoint], opts: &MainOptions) -> Result<MainReport, ConfigError> {
    let n = sample.config.n;
    let t0 = Instant::now();
    let images = generators_of(&build_a(&Vars::new(n), &sample.y, &sample.p)?);
    let scalings = cs
        .iter()
        .map(|c| scaling_vector(c, &sample.y, &sample.p))
        .collect::<Result<Vec<_>, _>>()?;
    let spans = wick_spans(n);
    let degrees = quadratic_degrees(n);
    let base = opts.translates.max(1) - 1;

    let per_degree = |qd: &QuadDegree| -> (DegreeReport, bool) {
        let mons = &qd.monomials;
        let (image_rank, kernel) = evaluation_kernel(n, mons, &images);
        debug_assert_eq!(image_rank + kernel.len(), mons.len());
        let wick: Vec<Quadric> = spans.get(&qd.degree).map(|s| s.basis.clone()).unwrap_or_default();
        let mut rows = quadric_vectors(&wick, mons);
        let spin_rank = rank_of(&rows, mons.len());
        let kernel_rows = quadric_vectors(&kernel, mons);
        let cox = kernel.len();
        let mut used = 1;
        let mut combined = spin_rank;
        for (k, a) in scalings.iter().enumerate() {
            if k >= base && combined == cox {
                break;
            }
            let scaled: Vec<Quadric> = wick.iter().map(|q| scale_quadric(q, a)).collect();
            rows.extend(quadric_vectors(&scaled, mons));
            combined = rank_of(&rows, mons.len());
            used = k + 2;
        }
        // every translate must lie in the kernel
        let mut all = kernel_rows;
        all.extend(rows);
        let inside = rank_of(&all, mons.len()) == cox;
        let report = DegreeReport {
            degree: qd.degree.clone(),
            monomial_count: mons.len(),
            cox_kernel_dim: cox,
            spin_rank,
            combined_rank: combined,
            quotient_dim: mons.len() - cox,
            equal: combined == cox,
            representative: qd.representative,
            translates_used: used,
        };
        (report, inside && spin_rank <= combined && combined <= cox)
    };

    let results: Vec<(DegreeReport, bool)> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| degrees.par_iter().map(per_degree).collect())
    } else {
        degrees.iter().map(per_degree).collect()
    };

    let inclusions_ok = results.iter().all(|(_, ok)| *ok);
    let reports: Vec<DegreeReport> = results.into_iter().map(|(r, _)| r).collect();
    let representatives_ok = reports.iter().all(|r| match r.representative {
        Some(0) => r.quotient_dim == 1,
        Some(s) => r.quotient_dim == 1 << (s - 1),
        None => true,
    });
    let verdict = reports.iter().all(|r| r.equal);
    let translates_used = reports.iter().map(|r| r.translates_used).max().unwrap_or(1);
    let mut timings_ms = BTreeMap::new();
    timings_ms.insert("degrees".into(), t0.elapsed().as_millis());
    Ok(MainReport {
        n,
        seed: 0,
        config: sample.config.clone(),
        degrees: reports,
        verdict,
        translates_used,
        representatives_ok,
        inclusions_ok,
        timings_ms,
    })
}

/// Groups quadratic degrees into Weyl orbits (through the multidegree map
/// to the Picard lattice) and checks that `value` is constant on each.
/// Returns the number of orbits, or `None` if some orbit is not constant.
pub fn weyl_constant<T: PartialEq>(n: usize, value: impl Fn(&Multidegree) -> T) -> Option<usize> {
    let degrees: Vec<Multidegree> = quadratic_degrees(n).into_iter().map(|q| q.degree).collect();
    let index: HashMap<PicClass, usize> = degrees
        .iter()
        .enumerate()
        .map(|(k, d)| (multidegree_to_pic(d), k))
        .collect();
    let mut parent: Vec<usize> = (0..degrees.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let roots = simple_roots(n);
    for (k, d) in degrees.iter().enumerate() {
        let cls = multidegree_to_pic(d);
        for r in &roots {
            let image = reflect(&cls, r);
            let j = *index.get(&image).expect("Weyl group permutes quadratic degrees");
            let (a, b) = (find(&mut parent, k), find(&mut parent, j));
            parent[a] = b;
        }
    }
    let mut orbit_value: BTreeMap<usize, usize> = BTreeMap::new();
    for k in 0..degrees.len() {
        let root = find(&mut parent, k);
        match orbit_value.get(&root) {
            Some(&first) => {
                if value(&degrees[first]) != value(&degrees[k]) {
                    return None;
                }
            }
            None => {
                orbit_value.insert(root, k);
            }
        }
    }
    Some(orbit_value.len())
}

/// Order in `eps` of `f(point + eps * v)` for a polynomial in `x_1, ..., x_m`.
pub fn order_along(f: &Polynomial, vars: &Vars, point: &[Rational], v: &[Rational]) -> crate::algebra::Order {
    let eps = vars.poly(vars.eps());
    let bind: BTreeMap<_, _> = point
        .iter()
        .zip(v)
        .enumerate()
        .map(|(k, (q, dv))| (vars.x(k + 1), &Polynomial::constant(q.clone()) + &eps.scale(dv)))
        .collect();
    f.substitute(&bind).expect("acyclic").order_in(vars.eps())
}

/// Measured vanishing data of `Pf(M_B)` in the chart variables.
#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub subset: EvenSubset,
    pub nonzero: bool,
    /// Total degree in `x_1, ..., x_{n-2}`.
    pub degree: u32,
    pub expected_degree: u32,
    /// Smallest `eps`-order at `Q_n` over the random directions.
    pub order_at_qn: u32,
    /// Multiplicities at `Q_1, ..., Q_{n-1}` along a generic direction.
    pub multiplicities: Vec<u32>,
    pub expected_multiplicities: Vec<u32>,
    pub ok: bool,
}

/// Coordinates of `Q_1, ..., Q_n` in the chart: unit vectors, the all-ones
/// vector, and `q`.
pub fn special_points(cfg: &Configuration) -> Vec<Vec<Rational>> {
    let m = cfg.n - 2;
    let mut out: Vec<Vec<Rational>> = (0..m)
        .map(|i| (0..m).map(|k| rational::rat(i64::from(k == i))).collect())
        .collect();
    out.push(vec![rational::rat(1); m]);
    out.push(cfg.q.clone());
    out
}

fn finite(o: crate::algebra::Order) -> u32 {
    match o {
        crate::algebra::Order::Finite(k) => k,
        crate::algebra::Order::Infinite => u32::MAX,
    }
}

/// Checks that `Pf(M_B)` is nonzero, has degree `s - [n ∈ B]`, vanishes to
/// order at least `s - 1` at `Q_n` along `trials` random directions, and has
/// multiplicity at least `s - [n ∈ B] - [i ∈ B]` at `Q_i` for `i < n`.
pub fn vanishing_order_check(
    cfg: &Configuration,
    y_affine: &[Rational],
    b: &EvenSubset,
    trials: usize,
    seed: u64,
) -> Result<VanishingReport, ConfigError> {
    let n = cfg.n;
    let vars = Vars::new(n);
    let m = build_m(&vars, cfg, y_affine)?;
    let f = sub_pfaffian(&m, b).map_err(|_| ConfigError::SizeMismatch {
        expected: n,
        got: b.elems().last().copied().unwrap_or(0),
    })?;
    let s = b.half() as u32;
    let delta = u32::from(b.contains(n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut direction = || -> Vec<Rational> {
        (0..n - 2)
            .map(|_| {
                let mut v = 0;
                while v == 0 {
                    v = rng.gen_range(-50..=50);
                }
                rational::rat(v)
            })
            .collect()
    };
    let points = special_points(cfg);
    let order_at_qn = (0..trials.max(1))
        .map(|_| finite(order_along(&f, &vars, &points[n - 1], &direction())))
        .min()
        .unwrap_or(0);
    let generic = direction();
    let multiplicities: Vec<u32> = points[..n - 1]
        .iter()
        .map(|pt| finite(order_along(&f, &vars, pt, &generic)))
        .collect();
    let expected_multiplicities: Vec<u32> = (1..n)
        .map(|i| (s - delta).saturating_sub(u32::from(b.contains(i))))
        .collect();
    let nonzero = !f.is_zero();
    let degree = f.total_degree().unwrap_or(0);
    let expected_degree = s - delta;
    let ok = nonzero
        && degree == expected_degree
        && order_at_qn >= s.saturating_sub(1)
        && multiplicities.iter().zip(&expected_multiplicities).all(|(a, b)| a >= b);
    Ok(VanishingReport {
        subset: b.clone(),
        nonzero,
        degree,
        expected_degree,
        order_at_qn,
        multiplicities,
        expected_multiplicities,
        ok,
    })
}

/// [`vanishing_order_check`] for every nonempty even subset.
pub fn vanishing_all(
    cfg: &Configuration,
    y_affine: &[Rational],
    trials: usize,
    seed: u64,
) -> Result<Vec<VanishingReport>, ConfigError> {
    even_subsets(cfg.n)
        .expect("n >= 1")
        .into_iter()
        .filter(|b| !b.is_empty())
        .map(|b| vanishing_order_check(cfg, y_affine, &b, trials, seed))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(n: usize, e: &[usize]) -> EvenSubset {
        EvenSubset::new(n, e).unwrap()
    }

    #[test]
    fn degree_listing() {
        let degs = quadratic_degrees(6);
        let n2 = degs.iter().find(|d| d.representative == Some(2)).unwrap();
        assert_eq!(n2.monomials.len(), 4);
        let n3 = degs.iter().find(|d| d.representative == Some(3)).unwrap();
        assert_eq!(n3.monomials.len(), 16);
        assert_eq!(n3.degree.0, vec![2, 1, 1, 1, 1, 1, 1]);
        let n1 = degs.iter().find(|d| d.representative == Some(1)).unwrap();
        assert_eq!(n1.monomials.len(), 1);
        let total: usize = degs.iter().map(|d| d.monomials.len()).sum();
        assert_eq!(total, 32 * 33 / 2);
    }

    #[test]
    fn cox_dims_at_representatives() {
        let s = sample_generic(6, 1, 100).unwrap();
        for (rep, kernel) in [(1usize, 0usize), (2, 2), (3, 12)] {
            let d = representative_degree(6, rep);
            let (a, _) = cox_quadric_space(CoxPresentation::Grassmannian, &s.config, &s.y_affine, &d).unwrap();
            let (m, _) = cox_quadric_space(CoxPresentation::Chart, &s.config, &s.y_affine, &d).unwrap();
            assert_eq!(a, kernel, "N_{rep}");
            assert_eq!(m, kernel, "N_{rep}");
        }
    }

    #[test]
    fn inclusion_and_corruption() {
        let s = sample_generic(5, 4, 100).unwrap();
        assert!(check_inclusion(&s.p, &s.y, &s.y).unwrap());
        assert!(check_inclusion(&s.p, &s.y, &s.c).unwrap());
        let mut a = scaling_vector(&s.c, &s.y, &s.p).unwrap();
        let key = es(5, &[1, 2]);
        let v = a.entries.get_mut(&key).unwrap();
        *v += rational::rat(1);
        let images = generators_of(&build_a(&Vars::new(5), &s.y, &s.p).unwrap());
        assert!(!check_inclusion_with(&images, &a));
    }

    #[test]
    fn main_theorem_n5() {
        let r = check_main(5, 7, &MainOptions::default()).unwrap();
        assert!(r.verdict);
        assert!(r.representatives_ok);
        assert!(r.inclusions_ok);
        assert_eq!(r.translates_used, 2);
    }

    #[test]
    fn negative_control_n6() {
        let s = sample_generic(6, 3, 100).unwrap();
        let r = check_main_on(&s, std::slice::from_ref(&s.y), &MainOptions::default()).unwrap();
        assert!(!r.verdict);
        let n2 = r.degree(&representative_degree(6, 2)).unwrap();
        assert_eq!((n2.spin_rank, n2.combined_rank, n2.cox_kernel_dim), (1, 1, 2));
        let good = check_main_on(&s, std::slice::from_ref(&s.c), &MainOptions::default()).unwrap();
        let n2 = good.degree(&representative_degree(6, 2)).unwrap();
        assert_eq!((n2.spin_rank, n2.combined_rank, n2.cox_kernel_dim), (1, 2, 2));
    }

    #[test]
    fn quotient_is_weyl_invariant_n5() {
        let r = check_main(5, 2, &MainOptions::default()).unwrap();
        let q: BTreeMap<Multidegree, usize> = r.degrees.iter().map(|d| (d.degree.clone(), d.quotient_dim)).collect();
        assert_eq!(weyl_constant(5, |d| q[d]), Some(3));
    }

    #[test]
    fn vanishing_small() {
        let s = sample_generic(5, 8, 100).unwrap();
        for r in vanishing_all(&s.config, &s.y_affine, 3, 1).unwrap() {
            assert!(r.ok, "{r:?}");
        }
        let r = vanishing_order_check(&s.config, &s.y_affine, &es(5, &[1, 2, 3, 4]), 3, 2).unwrap();
        assert!(r.order_at_qn >= 1);
    }
}
