//! The `coxspin` command line: one subcommand per verification, JSON
//! reports, exit code 0 (checks passed), 1 (a check failed) or 2 (usage or
//! input error).

use crate::combinat::{even_subsets, incomparable_pairs, matchings_of, EvenSubset};
use crate::config::{
    check_okada, gale_dual, random_point, sample_generic, sample_with_config, Configuration, OkadaMode, Sample,
};
use crate::picard::{canonical, divisor_d, simple_roots, spin_weight, weight_to_pic, weyl_orbit, PicClass};
use crate::spinor::{initial_ideal_gens, spinor_oracle_spaces};
use crate::treedeg::{
    disjoint_path_partition, enumerate_trees, is_edge_disjoint, leading_form_psi, matching_length, parse_newick,
    to_newick, PhyloTree,
};
use crate::verify::{
    check_inclusion, check_main_config, cox_quadric_space, quadratic_degrees, vanishing_all, CoxPresentation,
    MainOptions,
};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "coxspin",
    version,
    about = "Exact checks for Cox rings of blown-up projective spaces and spinor varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Okada's Pfaffian–determinant identity for every even subset.
    Okada(Common),
    /// Wick quadrics and their torus translates vanish on the Cox presentation.
    Wick(Common),
    /// Degree-two initial terms of the spinor ideal.
    InitialIdeal(Common),
    /// Weyl orbit of the last exceptional divisor.
    Orbit(Common),
    /// Vanishing orders of the chart Pfaffians.
    Vanishing(Common),
    /// Leading terms of the determinants under tree weights.
    TreeLeading(Common),
    /// Dimensions of Cox quadric spaces in both presentations.
    CoxDims(Common),
    /// Per-degree comparison of the Cox ideal with spin quadrics and one translate.
    MainTheorem(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Number of points.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bound on sampled integer coordinates.
    #[arg(long, default_value_t = 1000)]
    bound: i64,
    /// Configuration JSON file, used instead of a sampled configuration.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Newick string or a file containing one.
    #[arg(long)]
    tree: Option<String>,
    /// Number of translates, the identity included.
    #[arg(long, default_value_t = 2)]
    translates: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for per-degree computations.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// A failure to run at all, as opposed to a failed check.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<(Value, bool), InputError>;

/// Runs the command line and returns the process exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let (common, result) = match cli.command {
        Command::Okada(c) => (c.clone(), okada(&c)),
        Command::Wick(c) => (c.clone(), wick(&c)),
        Command::InitialIdeal(c) => (c.clone(), initial_ideal(&c)),
        Command::Orbit(c) => (c.clone(), orbit(&c)),
        Command::Vanishing(c) => (c.clone(), vanishing(&c)),
        Command::TreeLeading(c) => (c.clone(), tree_leading(&c)),
        Command::CoxDims(c) => (c.clone(), cox_dims(&c)),
        Command::MainTheorem(c) => (c.clone(), main_theorem(&c)),
    };
    match result {
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Ok((report, passed)) => {
            let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            let written = match &common.out {
                Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write report: {e}");
                return 2;
            }
            if passed {
                0
            } else {
                1
            }
        }
    }
}

fn read_config(c: &Common) -> Result<Option<Configuration>, InputError> {
    let Some(path) = &c.points else {
        return Ok(None);
    };
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let cfg: Configuration = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("{}: malformed configuration: {e}", path.display())))?;
    cfg.validate()?;
    if let Some(n) = c.n {
        if n != cfg.n {
            return Err(InputError(format!(
                "--n {n} disagrees with n = {} in {}",
                cfg.n,
                path.display()
            )));
        }
    }
    Ok(Some(cfg))
}

fn n_or(c: &Common, default: usize, range: std::ops::RangeInclusive<usize>) -> Result<usize, InputError> {
    let n = c.n.unwrap_or(default);
    if !range.contains(&n) {
        return Err(InputError(format!("--n {n} outside the supported range {range:?}")));
    }
    Ok(n)
}

fn sample(c: &Common, default_n: usize) -> Result<Sample, InputError> {
    Ok(match read_config(c)? {
        Some(cfg) => sample_with_config(&cfg, c.seed, c.bound)?,
        None => sample_generic(n_or(c, default_n, 5..=12)?, c.seed, c.bound)?,
    })
}

fn okada(c: &Common) -> Outcome {
    let n = n_or(c, 6, 2..=16)?;
    let subsets: Vec<EvenSubset> = even_subsets(n)?.into_iter().filter(|b| !b.is_empty()).collect();
    let (mode, results): (&str, Vec<(EvenSubset, bool)>) = if n <= 7 {
        (
            "symbolic",
            subsets
                .into_iter()
                .map(|b| {
                    let ok = check_okada(&b, &OkadaMode::Symbolic);
                    (b, ok)
                })
                .collect(),
        )
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        let points: Vec<OkadaMode> = (0..20)
            .map(|_| OkadaMode::Numeric {
                x: random_point(n, &mut rng, 9),
                y: random_point(n, &mut rng, 9),
                p: random_point(n, &mut rng, 9),
            })
            .collect();
        (
            "numeric",
            subsets
                .into_iter()
                .map(|b| {
                    let ok = points.iter().all(|m| check_okada(&b, m));
                    (b, ok)
                })
                .collect(),
        )
    };
    let all = results.iter().all(|(_, ok)| *ok);
    let failures: Vec<&EvenSubset> = results.iter().filter(|(_, ok)| !ok).map(|(b, _)| b).collect();
    Ok((
        json!({"command": "okada", "n": n, "mode": mode, "subsets_checked": results.len(), "failures": failures, "all_ok": all}),
        all,
    ))
}

fn wick(c: &Common) -> Outcome {
    let s = sample(c, 5)?;
    let unscaled = check_inclusion(&s.p, &s.y, &s.y)?;
    let scaled = check_inclusion(&s.p, &s.y, &s.c)?;
    let count = crate::spinor::all_wick_quadrics(s.config.n).len();
    Ok((
        json!({
            "command": "wick", "n": s.config.n, "seed": c.seed, "config": s.config,
            "wick_quadrics": count, "inclusion_unscaled": unscaled, "inclusion_scaled": scaled,
            "all_ok": unscaled && scaled,
        }),
        unscaled && scaled,
    ))
}

fn initial_ideal(c: &Common) -> Outcome {
    let n = n_or(c, 6, 4..=7)?;
    let gens = initial_ideal_gens(n);
    let pairs = incomparable_pairs(n)?;
    let mut leading: Vec<(EvenSubset, EvenSubset)> =
        gens.values().flatten().map(|m| (m.0.clone(), m.1.clone())).collect();
    leading.sort();
    let mut want = pairs.clone();
    want.sort();
    let mut classes: BTreeMap<String, usize> = BTreeMap::new();
    for (d, ms) in &gens {
        *classes.entry(d.class().to_string()).or_default() += ms.len();
    }
    let oracle: usize = spinor_oracle_spaces(n).values().map(Vec::len).sum();
    let ok = leading == want && oracle == pairs.len();
    Ok((
        json!({
            "command": "initial-ideal", "n": n,
            "incomparable_pairs": pairs.len(), "leading_monomials": leading.len(),
            "degrees_with_relations": gens.len(), "classes": classes,
            "oracle_dimension": oracle, "match": ok,
        }),
        ok,
    ))
}

fn orbit(c: &Common) -> Outcome {
    let n = n_or(c, 6, 5..=10)?;
    let limit = 1usize << n;
    let orbit =
        weyl_orbit(&PicClass::e(n, n), &simple_roots(n), limit).ok_or_else(|| InputError("orbit too large".into()))?;
    let subsets = even_subsets(n)?;
    let divisors: std::collections::BTreeSet<PicClass> = subsets.iter().map(divisor_d).collect();
    let k = canonical(n);
    let k4 = k.scale(&crate::algebra::rational::ratio(1, 4));
    let self_ok = orbit
        .iter()
        .all(|d| d.self_intersection() == crate::algebra::rational::rat(-1));
    let k_ok = orbit
        .iter()
        .all(|d| k.intersect(d) == crate::algebra::rational::rat(4 - n as i64));
    let weights_ok = subsets
        .iter()
        .all(|b| weight_to_pic(&spin_weight(b)) == &divisor_d(b) + &k4);
    let equal = orbit == divisors;
    let ok = orbit.len() == 1 << (n - 1) && equal && self_ok && k_ok && weights_ok;
    Ok((
        json!({
            "command": "orbit", "n": n, "orbit_size": orbit.len(), "expected_size": 1usize << (n - 1),
            "equals_divisor_set": equal, "self_intersection_ok": self_ok, "canonical_pairing_ok": k_ok,
            "weights_ok": weights_ok, "all_ok": ok,
        }),
        ok,
    ))
}

fn vanishing(c: &Common) -> Outcome {
    let s = sample(c, 5)?;
    let reports = vanishing_all(&s.config, &s.y_affine, 5, c.seed)?;
    let ok = reports.iter().all(|r| r.ok);
    Ok((
        json!({"command": "vanishing", "n": s.config.n, "seed": c.seed, "config": s.config, "subsets": reports, "all_ok": ok}),
        ok,
    ))
}

fn load_tree(src: &str) -> Result<PhyloTree, InputError> {
    let text = if std::path::Path::new(src).is_file() {
        std::fs::read_to_string(src)?
    } else {
        src.to_string()
    };
    Ok(parse_newick(text.trim())?)
}

/// Brute force over all matchings, then the three derived answers.
fn tree_checks(t: &PhyloTree) -> Result<(Vec<Value>, bool), InputError> {
    let mut rows = Vec::new();
    let mut all = true;
    for b in even_subsets(t.n())?.into_iter().filter(|b| !b.is_empty()) {
        let lengths: Vec<_> = matchings_of(b.elems())
            .into_iter()
            .map(|m| {
                let l = matching_length(t, &m.pairs);
                (l, m)
            })
            .collect();
        let min = lengths.iter().map(|(l, _)| l.clone()).min().expect("nonempty");
        let best: Vec<_> = lengths
            .iter()
            .filter(|(l, _)| *l == min)
            .map(|(_, m)| m.clone())
            .collect();
        let partition = disjoint_path_partition(t, &b)?;
        let unique = best.len() == 1;
        let disjoint = is_edge_disjoint(t, &best[0]);
        let lead = leading_form_psi(&b, t, None);
        let lead_ok = matches!(&lead, Ok(lf) if lf.matching == partition);
        let ok = unique && disjoint && best[0] == partition && lead_ok;
        all &= ok;
        rows.push(json!({
            "B": b,
            "leading": lead.map(|lf| lf.monomial()).unwrap_or_else(|e| e.to_string()),
            "ok": ok,
        }));
    }
    Ok((rows, all))
}

fn tree_leading(c: &Common) -> Outcome {
    if let Some(src) = &c.tree {
        let t = load_tree(src)?;
        let (rows, ok) = tree_checks(&t)?;
        return Ok((
            json!({
                "command": "tree-leading", "n": t.n(), "newick": to_newick(&t), "tree": t.to_json(),
                "subsets": rows, "all_ok": ok,
            }),
            ok,
        ));
    }
    let n = n_or(c, 6, 3..=7)?;
    let trees = enumerate_trees(n)?;
    let mut checks = 0;
    let mut failures = Vec::new();
    for t in &trees {
        let (rows, ok) = tree_checks(t)?;
        checks += rows.len();
        if !ok {
            failures.push(to_newick(t));
        }
    }
    let ok = failures.is_empty();
    Ok((
        json!({"command": "tree-leading", "n": n, "trees": trees.len(), "checks": checks, "failures": failures, "all_ok": ok}),
        ok,
    ))
}

fn cox_dims(c: &Common) -> Outcome {
    let s = sample(c, 6)?;
    let n = s.config.n;
    let mut reps = Vec::new();
    let mut agree = true;
    let mut quotients_ok = true;
    let mut compared = 0;
    for qd in quadratic_degrees(n) {
        let (a, _) = cox_quadric_space(CoxPresentation::Grassmannian, &s.config, &s.y_affine, &qd.degree)?;
        let (m, _) = cox_quadric_space(CoxPresentation::Chart, &s.config, &s.y_affine, &qd.degree)?;
        compared += 1;
        agree &= a == m;
        if let Some(rep) = qd.representative {
            let expected = if rep == 0 { 1 } else { 1usize << (rep - 1) };
            let quotient = qd.monomials.len() - a;
            quotients_ok &= quotient == expected;
            reps.push(json!({
                "s": rep, "degree": qd.degree, "monomial_count": qd.monomials.len(),
                "grassmannian_kernel": a, "chart_kernel": m,
                "quotient_dim": quotient, "expected_quotient": expected,
            }));
        }
    }
    let ok = agree && quotients_ok;
    Ok((
        json!({
            "command": "cox-dims", "n": n, "seed": c.seed, "config": s.config,
            "representatives": reps, "degrees_compared": compared, "presentations_agree": agree,
            "all_ok": ok,
        }),
        ok,
    ))
}

fn main_theorem(c: &Common) -> Outcome {
    let cfg = match read_config(c)? {
        Some(cfg) => cfg,
        None => sample_generic(n_or(c, 5, 5..=8)?, c.seed, c.bound)?.config,
    };
    if cfg.n == 8 {
        eprintln!("warning: n = 8 is a long computation");
    }
    gale_dual(&cfg)?;
    let opts = MainOptions {
        translates: c.translates.max(1),
        escalate: 0,
        jobs: c.jobs.max(1),
        bound: c.bound,
    };
    let report = check_main_config(&cfg, c.seed, &opts)?;
    let ok = report.verdict && report.representatives_ok && report.inclusions_ok;
    let mut v = report.to_json();
    v["command"] = json!("main-theorem");
    Ok((v, ok))
}
