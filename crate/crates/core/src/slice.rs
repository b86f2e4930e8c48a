//! Slices in the preprojective component.
//!
//! The preprojective component of an acyclic quiver `Q` embeds in the
//! translation quiver `ZQ^op` via `tau^{-r} P(x) -> (r, x)`. Its arrows are
//! `(r, x) -> (r, y)` for each arrow `y -> x` of `Q` and `(r, x) -> (r+1, y)`
//! for each arrow `x -> y`. A vector `r: Q_0 -> N` names the candidate slice
//! `⊕ tau^{-r_x} P(x)`, which is a slice exactly when
//! `r_y <= r_x + l_Q(x, y)` for all `x, y`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::CoxeterData;
use crate::quiver::{ClusterQuiver, Vertex};
use crate::type_a::{ext_dim, IntervalModule, TypeAError, TypeAQuiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("slice vector has length {found}, quiver has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vector {0} is not a slice")]
    NotASlice(SliceVector),
    #[error("vertex index {vertex} is not a source of the slice {slice}")]
    NotASource { vertex: Vertex, slice: SliceVector },
    #[error("target is not above the start at vertex index {0}")]
    NotComparable(Vertex),
    #[error("translation coordinate {0} lies outside the search window")]
    WindowTooSmall(i64),
    #[error("quiver has an oriented cycle")]
    NotAcyclic,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// One step of a walk: an arrow `from -> to` traversed forwards, or an arrow
/// `to -> from` traversed against its direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub from: Vertex,
    pub to: Vertex,
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub start: Vertex,
    pub steps: Vec<WalkStep>,
}

impl Walk {
    pub fn new(start: Vertex) -> Self {
        Walk {
            start,
            steps: Vec::new(),
        }
    }

    pub fn end(&self) -> Vertex {
        self.steps.last().map_or(self.start, |s| s.to)
    }

    /// Appends a step; `None` if it does not start at the current end or
    /// uses an arrow that `q` lacks.
    pub fn push(&mut self, q: &ClusterQuiver, step: WalkStep) -> Option<()> {
        let (tail, head) = if step.forward {
            (step.from, step.to)
        } else {
            (step.to, step.from)
        };
        (step.from == self.end() && q.multiplicity(tail, head) > 0).then(|| self.steps.push(step))
    }

    /// Number of forward steps.
    pub fn c_plus(&self) -> usize {
        self.steps.iter().filter(|s| s.forward).count()
    }
}

fn neighbors(q: &ClusterQuiver, x: Vertex) -> impl Iterator<Item = WalkStep> + '_ {
    (0..q.n()).flat_map(move |y| {
        let fwd = (q.multiplicity(x, y) > 0).then_some(WalkStep {
            from: x,
            to: y,
            forward: true,
        });
        let inv = (q.multiplicity(y, x) > 0).then_some(WalkStep {
            from: x,
            to: y,
            forward: false,
        });
        fwd.into_iter().chain(inv)
    })
}

/// `l_Q(x, y)`: the fewest forward steps over all walks from `x` to `y`.
pub fn l_q(q: &ClusterQuiver, x: Vertex, y: Vertex) -> usize {
    l_q_from(q, x)[y]
}

/// `l_Q(x, -)` by 0-1 breadth-first search.
pub fn l_q_from(q: &ClusterQuiver, x: Vertex) -> Vec<usize> {
    let mut dist = vec![usize::MAX; q.n()];
    let mut deque = VecDeque::from([(x, 0usize)]);
    dist[x] = 0;
    while let Some((u, d)) = deque.pop_front() {
        if d > dist[u] {
            continue;
        }
        for step in neighbors(q, u) {
            let cost = usize::from(step.forward);
            let nd = d + cost;
            if nd < dist[step.to] {
                dist[step.to] = nd;
                if cost == 0 {
                    deque.push_front((step.to, nd));
                } else {
                    deque.push_back((step.to, nd));
                }
            }
        }
    }
    dist
}

/// `l_Q` by enumerating every walk of at most `max_len` steps.
pub fn l_q_by_walks(q: &ClusterQuiver, x: Vertex, y: Vertex, max_len: usize) -> Option<usize> {
    fn go(q: &ClusterQuiver, walk: &mut Walk, y: Vertex, left: usize, best: &mut Option<usize>) {
        if walk.end() == y {
            let c = walk.c_plus();
            *best = Some(best.map_or(c, |b| b.min(c)));
        }
        if left == 0 {
            return;
        }
        let steps: Vec<WalkStep> = neighbors(q, walk.end()).collect();
        for step in steps {
            walk.push(q, step).expect("neighbor steps are valid");
            go(q, walk, y, left - 1, best);
            walk.steps.pop();
        }
    }
    let mut best = None;
    go(q, &mut Walk::new(x), y, max_len, &mut best);
    best
}

/// All-pairs `l_Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LqTable {
    table: Vec<Vec<usize>>,
}

impl LqTable {
    pub fn new(q: &ClusterQuiver) -> Self {
        LqTable {
            table: (0..q.n()).map(|x| l_q_from(q, x)).collect(),
        }
    }

    pub fn get(&self, x: Vertex, y: Vertex) -> usize {
        self.table[x][y]
    }

    pub fn n(&self) -> usize {
        self.table.len()
    }
}

/// Vertex `(r, x)` of `ZQ^op`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZQVertex {
    pub r: i64,
    pub x: Vertex,
}

impl ZQVertex {
    pub fn new(r: i64, x: Vertex) -> Self {
        ZQVertex { r, x }
    }
}

/// A path `a -> b` in `ZQ^op` exists iff `b.r >= a.r + l_Q(a.x, b.x)`. A
/// single vertex has no arrows, so only the trivial path exists there.
pub fn zq_path_exists(q: &ClusterQuiver, a: ZQVertex, b: ZQVertex) -> bool {
    if q.n() == 1 {
        return a == b;
    }
    let l = l_q(q, a.x, b.x) as i64;
    b.r >= a.r + l
}

/// Breadth-first search over the arrows of `ZQ^op` with translation
/// coordinates in `[-window - n, window + n]`.
pub fn zq_path_exists_bfs_oracle(
    q: &ClusterQuiver,
    a: ZQVertex,
    b: ZQVertex,
    window: i64,
) -> Result<bool, SliceError> {
    // arrows never decrease r, so every path from a to b stays in [a.r, b.r]
    for v in [a, b] {
        if v.r.abs() > window {
            return Err(SliceError::WindowTooSmall(v.r));
        }
    }
    let n = q.n() as i64;
    let (lo, hi) = (-window - n, window + n);
    let mut seen = HashSet::from([a]);
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            return Ok(true);
        }
        for y in 0..q.n() {
            let mut next = Vec::with_capacity(2);
            if q.multiplicity(y, v.x) > 0 {
                next.push(ZQVertex::new(v.r, y));
            }
            if q.multiplicity(v.x, y) > 0 {
                next.push(ZQVertex::new(v.r + 1, y));
            }
            for w in next {
                if (lo..=hi).contains(&w.r) && w.r <= b.r && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(false)
}

/// `x -> r_x`, naming `⊕ tau^{-r_x} P(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SliceVector(pub Vec<u64>);

impl SliceVector {
    pub fn zero(n: usize) -> Self {
        SliceVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self <= other` coordinatewise.
    pub fn leq(&self, other: &SliceVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `sum_x (other_x - self_x)`, for `self <= other`.
    pub fn distance_to(&self, other: &SliceVector) -> u64 {
        self.0.iter().zip(&other.0).map(|(a, b)| b - a).sum()
    }
}

impl fmt::Display for SliceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            serde_json::to_string(&self.0).expect("vector serializes")
        )
    }
}

fn check_len(q: &ClusterQuiver, s: &SliceVector) -> Result<(), SliceError> {
    if s.len() != q.n() {
        return Err(SliceError::LengthMismatch {
            expected: q.n(),
            found: s.len(),
        });
    }
    Ok(())
}

fn satisfies_chain_condition(lq: &LqTable, s: &SliceVector) -> bool {
    let n = lq.n();
    (0..n).all(|x| (0..n).all(|y| s.0[y] <= s.0[x] + lq.get(x, y) as u64))
}

/// `r_y <= r_x + l_Q(x, y)` for every ordered pair. False on a length
/// mismatch.
pub fn is_slice_tilting(q: &ClusterQuiver, s: &SliceVector) -> bool {
    s.len() == q.n() && satisfies_chain_condition(&LqTable::new(q), s)
}

fn sources_with(q: &ClusterQuiver, s: &SliceVector) -> Vec<Vertex> {
    let n = q.n();
    (0..n)
        .filter(|&x| {
            (0..n).all(|y| {
                // (r, y) -> (r, x) needs x -> y; (r-1, y) -> (r, x) needs y -> x
                let same_level = q.multiplicity(x, y) > 0 && s.0[y] == s.0[x];
                let below = q.multiplicity(y, x) > 0 && s.0[y] + 1 == s.0[x];
                !same_level && !below
            })
        })
        .collect()
}

/// Vertices of the slice with no incoming arrow from another slice vertex.
pub fn slice_sources(q: &ClusterQuiver, s: &SliceVector) -> Result<Vec<Vertex>, SliceError> {
    check_len(q, s)?;
    if !is_slice_tilting(q, s) {
        return Err(SliceError::NotASlice(s.clone()));
    }
    Ok(sources_with(q, s))
}

/// Replaces `tau^{-r_x} P(x)` by `tau^{-r_x - 1} P(x)` at a source `x`.
pub fn mutate_slice_at_source(
    q: &ClusterQuiver,
    s: &SliceVector,
    x: Vertex,
) -> Result<SliceVector, SliceError> {
    if !slice_sources(q, s)?.contains(&x) {
        return Err(SliceError::NotASource {
            vertex: x,
            slice: s.clone(),
        });
    }
    let mut out = s.clone();
    out.0[x] += 1;
    if !is_slice_tilting(q, &out) {
        return Err(SliceError::InternalInconsistency(format!(
            "mutating {s} at source {x} left the slice set"
        )));
    }
    Ok(out)
}

/// Source mutations from `s` up to `t`, always at the lowest-index source
/// still below `t`. The returned vectors exclude `s` and end with `t`, so the
/// length is `sum_x (t_x - s_x)`.
pub fn descending_path(
    q: &ClusterQuiver,
    s: &SliceVector,
    t: &SliceVector,
) -> Result<Vec<SliceVector>, SliceError> {
    check_len(q, s)?;
    check_len(q, t)?;
    for v in [s, t] {
        if !is_slice_tilting(q, v) {
            return Err(SliceError::NotASlice(v.clone()));
        }
    }
    if let Some(x) = (0..q.n()).find(|&x| t.0[x] < s.0[x]) {
        return Err(SliceError::NotComparable(x));
    }
    let mut path = Vec::new();
    let mut cur = s.clone();
    while cur != *t {
        let a = sources_with(q, &cur)
            .into_iter()
            .find(|&a| t.0[a] > cur.0[a])
            .ok_or_else(|| {
                SliceError::InternalInconsistency(format!("no source of {cur} lies below {t}"))
            })?;
        cur = mutate_slice_at_source(q, &cur, a)?;
        path.push(cur.clone());
    }
    Ok(path)
}

/// Summands `(x, r)` met along `s` followed by `path`.
pub fn visited_summands(s: &SliceVector, path: &[SliceVector]) -> BTreeSet<(Vertex, u64)> {
    std::iter::once(s)
        .chain(path)
        .flat_map(|v| v.0.iter().enumerate().map(|(x, &r)| (x, r)))
        .collect()
}

/// `tau^{-r_x} P(x)` for every `x` as interval modules, computed by
/// iterating the inverse Coxeter transformation; `None` once some step
/// leaves the modules (past the injectives).
pub fn preprojective_intervals(
    q: &TypeAQuiver,
    s: &SliceVector,
) -> Result<Option<Vec<IntervalModule>>, SliceError> {
    let cq = q.to_cluster_quiver();
    check_len(&cq, s)?;
    let data = CoxeterData::new(&cq).map_err(|_| SliceError::NotAcyclic)?;
    let mut out = Vec::with_capacity(q.n());
    for x in 0..q.n() {
        let mut d = data.projective(x);
        for _ in 0..s.0[x] {
            if IntervalModule::from_dim_vector(&d).is_none() {
                return Ok(None);
            }
            d = data
                .apply_coxeter_inverse(&d)
                .map_err(|e| SliceError::InternalInconsistency(e.to_string()))?;
        }
        match IntervalModule::from_dim_vector(&d) {
            Some(m) => out.push(m),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Module-level check: the realized summands are `n` distinct modules with
/// no extensions in either direction. `None` outside the module window.
pub fn module_slice_oracle(q: &TypeAQuiver, s: &SliceVector) -> Result<Option<bool>, SliceError> {
    let Some(mods) = preprojective_intervals(q, s)? else {
        return Ok(None);
    };
    let distinct: HashSet<_> = mods.iter().collect();
    if distinct.len() != mods.len() {
        return Ok(Some(false));
    }
    let map = |e: TypeAError| SliceError::InternalInconsistency(e.to_string());
    for &a in &mods {
        for &b in &mods {
            if ext_dim(q, a, b).map_err(map)? != 0 {
                return Ok(Some(false));
            }
        }
    }
    Ok(Some(true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear3() -> ClusterQuiver {
        ClusterQuiver::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn affine21() -> ClusterQuiver {
        ClusterQuiver::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn single() -> ClusterQuiver {
        ClusterQuiver::new(1, &[]).unwrap()
    }

    #[test]
    fn l_q_examples() {
        let q = linear3();
        assert_eq!(l_q(&q, 0, 2), 2);
        assert_eq!(l_q(&q, 2, 0), 0);
        assert_eq!(l_q(&q, 1, 1), 0);
        let a = affine21();
        assert_eq!(l_q(&a, 0, 2), 1);
        assert_eq!(l_q(&a, 2, 0), 0);
    }

    #[test]
    fn l_q_matches_walk_enumeration() {
        for q in [
            linear3(),
            affine21(),
            ClusterQuiver::new(3, &[(0, 1), (2, 1)]).unwrap(),
        ] {
            let n = q.n();
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(Some(l_q(&q, x, y)), l_q_by_walks(&q, x, y, 2 * n));
                }
            }
        }
    }

    #[test]
    fn walk_counts_forward_steps() {
        let q = linear3();
        let mut w = Walk::new(0);
        w.push(
            &q,
            WalkStep {
                from: 0,
                to: 1,
                forward: true,
            },
        )
        .unwrap();
        w.push(
            &q,
            WalkStep {
                from: 1,
                to: 0,
                forward: false,
            },
        )
        .unwrap();
        assert!(w
            .push(
                &q,
                WalkStep {
                    from: 1,
                    to: 2,
                    forward: true
                }
            )
            .is_none());
        assert_eq!(w.end(), 0);
        assert_eq!(w.c_plus(), 1);
    }

    #[test]
    fn zq_examples() {
        let q = linear3();
        let v = |r, x| ZQVertex::new(r, x);
        assert!(zq_path_exists(&q, v(0, 0), v(0, 0)));
        assert!(!zq_path_exists(&q, v(0, 0), v(1, 2)));
        assert!(zq_path_exists(&q, v(0, 0), v(2, 2)));
        assert!(!zq_path_exists_bfs_oracle(&q, v(0, 0), v(1, 2), 6).unwrap());
        assert!(zq_path_exists_bfs_oracle(&q, v(0, 0), v(2, 2), 6).unwrap());
        assert!(!zq_path_exists_bfs_oracle(&q, v(2, 0), v(1, 0), 6).unwrap());
        assert_eq!(
            zq_path_exists_bfs_oracle(&q, v(0, 0), v(9, 0), 6),
            Err(SliceError::WindowTooSmall(9))
        );
        let s = single();
        assert!(zq_path_exists(&s, v(3, 0), v(3, 0)));
        assert!(!zq_path_exists(&s, v(0, 0), v(1, 0)));
        assert!(!zq_path_exists_bfs_oracle(&s, v(0, 0), v(1, 0), 6).unwrap());
    }

    #[test]
    fn slice_predicate_examples() {
        let q = linear3();
        assert!(is_slice_tilting(&q, &SliceVector(vec![0, 0, 0])));
        assert!(!is_slice_tilting(&q, &SliceVector(vec![0, 0, 3])));
        assert!(is_slice_tilting(&q, &SliceVector(vec![0, 1, 2])));
        assert!(!is_slice_tilting(&q, &SliceVector(vec![0, 0])));
    }

    #[test]
    fn sources_of_projective_slice() {
        let q = ClusterQuiver::new(2, &[(0, 1)]).unwrap();
        assert_eq!(slice_sources(&q, &SliceVector::zero(2)).unwrap(), vec![1]);
        assert_eq!(
            slice_sources(&single(), &SliceVector(vec![5])).unwrap(),
            vec![0]
        );
        assert!(matches!(
            slice_sources(&linear3(), &SliceVector(vec![0, 0, 3])),
            Err(SliceError::NotASlice(_))
        ));
    }

    #[test]
    fn mutation_examples() {
        let s = single();
        assert_eq!(
            mutate_slice_at_source(&s, &SliceVector(vec![4]), 0).unwrap(),
            SliceVector(vec![5])
        );
        let q = ClusterQuiver::new(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            mutate_slice_at_source(&q, &SliceVector::zero(2), 0),
            Err(SliceError::NotASource { vertex: 0, .. })
        ));
        let next = mutate_slice_at_source(&q, &SliceVector::zero(2), 1).unwrap();
        assert_eq!(next, SliceVector(vec![0, 1]));
        assert!(!slice_sources(&q, &next).unwrap().contains(&1));
    }

    #[test]
    fn descending_path_examples() {
        let s = single();
        assert!(
            descending_path(&s, &SliceVector(vec![2]), &SliceVector(vec![2]))
                .unwrap()
                .is_empty()
        );
        assert_eq!(
            descending_path(&s, &SliceVector(vec![0]), &SliceVector(vec![3]))
                .unwrap()
                .len(),
            3
        );
        let a = affine21();
        let start = SliceVector::zero(3);
        let target = SliceVector(vec![1, 1, 1]);
        let path = descending_path(&a, &start, &target).unwrap();
        assert_eq!(path.len(), 3);
        assert_eq!(path.last(), Some(&target));
        assert!(path.iter().all(|v| is_slice_tilting(&a, v)));
        let summands = visited_summands(&start, &path);
        let expected: Vec<(usize, u64)> = (0..3).flat_map(|x| [(x, 0), (x, 1)]).collect();
        assert_eq!(summands.into_iter().collect::<Vec<_>>(), expected);
        assert_eq!(
            descending_path(&a, &target, &start),
            Err(SliceError::NotComparable(0))
        );
    }

    #[test]
    fn module_oracle_on_a3() {
        let q: TypeAQuiver = "++".parse().unwrap();
        assert_eq!(
            preprojective_intervals(&q, &SliceVector::zero(3)).unwrap(),
            Some(vec![
                IntervalModule { i: 0, j: 3 },
                IntervalModule { i: 1, j: 3 },
                IntervalModule { i: 2, j: 3 },
            ])
        );
        assert_eq!(
            module_slice_oracle(&q, &SliceVector::zero(3)).unwrap(),
            Some(true)
        );
        assert_eq!(
            module_slice_oracle(&q, &SliceVector(vec![0, 0, 9])).unwrap(),
            None
        );
    }
}
