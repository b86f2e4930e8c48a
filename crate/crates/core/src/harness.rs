//! Fixtures for `A_n` and `Ã_(n,1)` and end-to-end spectrum verification.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{CoxeterData, CoxeterError};
use crate::mgs::{detect_shape, enumerate_mgs, EnumerationConfig, MgsError, QuiverShape};
use crate::quiver::{framed, ClusterQuiver};
use crate::slice::{
    descending_path, is_slice_tilting, mutate_slice_at_source, slice_sources, visited_summands,
    SliceVector,
};
use crate::type_a::TypeAQuiver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("Ã_(n,1) needs n >= 2, got {0}")]
    RankTooSmall(usize),
    #[error("type A needs n >= 1")]
    EmptyTypeA,
    #[error(
        "exhaustive orientation sweep is limited to n <= 5, got {0}; pass explicit orientations"
    )]
    TooManyOrientations(usize),
    #[error("orientation {orientation} has {found} vertices, expected {expected}")]
    OrientationLength {
        orientation: String,
        expected: usize,
        found: usize,
    },
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error(transparent)]
    Mgs(#[from] MgsError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// `Ã_(n,1)`: vertices `0..=n`, arrows `i -> i+1` and `0 -> n`.
pub fn build_affine(n: usize) -> Result<ClusterQuiver, HarnessError> {
    if n < 2 {
        return Err(HarnessError::RankTooSmall(n));
    }
    let mut arrows: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
    arrows.push((0, n));
    Ok(ClusterQuiver::new(n + 1, &arrows)
        .expect("Ã_(n,1) is a valid cluster quiver")
        .with_base(0))
}

pub fn build_type_a(orientation: &TypeAQuiver) -> ClusterQuiver {
    orientation.to_cluster_quiver()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub quiver: String,
    pub expected: (usize, usize),
    pub observed: BTreeSet<usize>,
    pub pass: bool,
    pub truncated: bool,
    pub runtime_ms: f64,
    pub states_visited: u64,
    pub depth_bound: usize,
}

/// Worker pool size and memoization for a verification run.
#[derive(Clone, Copy, Debug)]
pub struct HarnessConfig {
    pub threads: usize,
    pub memoize: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            threads: 1,
            memoize: true,
        }
    }
}

fn verify_one(
    name: String,
    q: &ClusterQuiver,
    shape: QuiverShape,
    config: HarnessConfig,
) -> Result<VerificationReport, HarnessError> {
    let expected = shape.expected_interval();
    let bound = shape.max_mgs_length();
    let start = Instant::now();
    let report = enumerate_mgs(
        q,
        &EnumerationConfig::new(bound).memoize(config.memoize),
        None,
    )?;
    let runtime_ms = start.elapsed().as_secs_f64() * 1000.0;
    let wanted: BTreeSet<usize> = (expected.0..=expected.1).collect();
    Ok(VerificationReport {
        quiver: name,
        expected,
        pass: report.lengths == wanted && !report.truncated,
        observed: report.lengths,
        truncated: report.truncated,
        runtime_ms,
        states_visited: report.states_visited,
        depth_bound: bound,
    })
}

fn with_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T, HarnessError> {
    if threads <= 1 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| MgsError::Pool(e.to_string()))?;
    Ok(pool.install(job))
}

/// Which orientations of `A_n` to check.
#[derive(Clone, Debug)]
pub enum Orientations {
    All,
    List(Vec<TypeAQuiver>),
}

/// One report per orientation, expected interval `[n, n(n+1)/2]`.
pub fn verify_type_a_spectrum(
    n: usize,
    orientations: &Orientations,
    config: HarnessConfig,
) -> Result<Vec<VerificationReport>, HarnessError> {
    if n == 0 {
        return Err(HarnessError::EmptyTypeA);
    }
    let list = match orientations {
        Orientations::All if n > 5 => return Err(HarnessError::TooManyOrientations(n)),
        Orientations::All => TypeAQuiver::all_orientations(n),
        Orientations::List(list) => list.clone(),
    };
    for o in &list {
        if o.n() != n {
            return Err(HarnessError::OrientationLength {
                orientation: o.to_string(),
                expected: n,
                found: o.n(),
            });
        }
    }
    let shape = QuiverShape::TypeA { n };
    with_pool(config.threads, || {
        list.par_iter()
            .map(|o| verify_one(format!("A_{n} {o}"), &build_type_a(o), shape, config))
            .collect::<Result<Vec<_>, _>>()
    })?
}

/// Expected interval `[n+1, n(n+3)/2]`, enumerated at depth `n(n+3)/2`.
pub fn verify_affine_spectrum(
    n: usize,
    config: HarnessConfig,
) -> Result<VerificationReport, HarnessError> {
    let q = build_affine(n)?;
    let shape = detect_shape(&q).expect("Ã_(n,1) fixture is recognized");
    debug_assert_eq!(shape, QuiverShape::AffineN1 { n });
    with_pool(config.threads, || {
        verify_one(format!("Ã_({n},1)"), &q, shape, config)
    })?
}

/// `dim tau^{-r} P(i)` is sincere for every vertex `i` and `1 <= r <= depth`.
pub fn affine_preprojective_sincerity(n: usize, depth: usize) -> Result<bool, HarnessError> {
    if depth == 0 {
        return Err(HarnessError::ZeroDepth);
    }
    let q = build_affine(n)?;
    let data = CoxeterData::new(&q)?;
    for i in 0..q.n() {
        let mut d = data.projective(i);
        for _ in 1..=depth {
            d = data.apply_coxeter_inverse(&d)?;
            if !d.is_sincere() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

pub fn reports_to_table(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<16} {:>10} {:<24} {:>6} {:>10} {:>12}",
        "quiver", "expected", "observed", "result", "states", "time (ms)"
    )
    .unwrap();
    for r in reports {
        let observed: Vec<String> = r.observed.iter().map(ToString::to_string).collect();
        let mut observed = format!("{{{}}}", observed.join(","));
        if r.truncated {
            observed.push_str(" (truncated)");
        }
        writeln!(
            out,
            "{:<16} {:>10} {:<24} {:>6} {:>10} {:>12.1}",
            r.quiver,
            format!("[{},{}]", r.expected.0, r.expected.1),
            observed,
            if r.pass { "PASS" } else { "FAIL" },
            r.states_visited,
            r.runtime_ms
        )
        .unwrap();
    }
    out
}

/// Outcome of a seeded randomized property run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub property: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_cluster_quiver(rng: &mut ChaCha8Rng) -> ClusterQuiver {
    loop {
        let n = rng.random_range(1..=5);
        let mut arrows = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let k = rng.random_range(0..=2);
                let forward = rng.random_bool(0.5);
                for _ in 0..k {
                    arrows.push(if forward { (u, v) } else { (v, u) });
                }
            }
        }
        if let Ok(q) = ClusterQuiver::new(n, &arrows) {
            return q;
        }
    }
}

/// `mu_k mu_k = id` on `states` ice quivers reached by random mutation
/// sequences from random framed quivers.
pub fn mutation_involution_property(seed: u64, states: usize) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut checked = 0;
    while checked < states {
        let q = random_cluster_quiver(&mut rng);
        let mut state = framed(&q);
        for _ in 0..rng.random_range(1..=6) {
            if checked == states {
                break;
            }
            let k = rng.random_range(0..q.n());
            let once = match state.mutate(k) {
                Ok(s) => s,
                Err(e) => {
                    failures.push(format!("mutation at {k} failed: {e}"));
                    break;
                }
            };
            match once.mutate(k) {
                Ok(twice) if twice == state => {}
                Ok(_) => failures.push(format!("mutating twice at {k} changed the quiver")),
                Err(e) => failures.push(format!("second mutation at {k} failed: {e}")),
            }
            checked += 1;
            state = once;
        }
    }
    PropertyOutcome {
        property: "mutation involution".into(),
        seed,
        cases: checked,
        failures,
    }
}

fn random_slice_walk(
    q: &ClusterQuiver,
    start: &SliceVector,
    steps: usize,
    rng: &mut ChaCha8Rng,
) -> SliceVector {
    let mut s = start.clone();
    for _ in 0..steps {
        let sources = slice_sources(q, &s).expect("random walk stays among slices");
        let x = sources[rng.random_range(0..sources.len())];
        s = mutate_slice_at_source(q, &s, x).expect("sources can be mutated");
    }
    s
}

/// `descending_path` between `pairs` random comparable slices: the length is
/// `sum (t - s)`, every step is a slice, and the summands met are exactly
/// the box `{(x, r) : s_x <= r <= t_x}`.
pub fn descending_path_property(
    q: &ClusterQuiver,
    name: &str,
    seed: u64,
    pairs: usize,
) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..pairs {
        let s = random_slice_walk(
            q,
            &SliceVector::zero(q.n()),
            rng.random_range(0..=12),
            &mut rng,
        );
        let t = random_slice_walk(q, &s, rng.random_range(0..=12), &mut rng);
        let path = match descending_path(q, &s, &t) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("{s} -> {t}: {e}"));
                continue;
            }
        };
        if path.len() as u64 != s.distance_to(&t) {
            failures.push(format!(
                "{s} -> {t}: length {} != {}",
                path.len(),
                s.distance_to(&t)
            ));
        }
        if let Some(bad) = path.iter().find(|v| !is_slice_tilting(q, v)) {
            failures.push(format!("{s} -> {t}: {bad} is not a slice"));
        }
        let boxed: BTreeSet<(usize, u64)> = (0..q.n())
            .flat_map(|x| (s.0[x]..=t.0[x]).map(move |r| (x, r)))
            .collect();
        if visited_summands(&s, &path) != boxed {
            failures.push(format!("{s} -> {t}: summands differ from the box"));
        }
    }
    PropertyOutcome {
        property: format!("descending path on {name}"),
        seed,
        cases: pairs,
        failures,
    }
}
