//! Green sequence enumeration, length spectra and the oriented exchange graph.
//!
//! The enumerator walks green mutations depth-first from the framed quiver.
//! With memoization on, each isomorphism class (frozen vertices fixed) is
//! expanded once per budget: the table stores, for a remaining budget `b`,
//! the number of maximal green suffixes of each length `<= b` together with
//! the longest green sequence seen from the state (capped at `b + 1`). That
//! data is a function of the ice quiver up to relabeling, so a class can be
//! answered from any stored entry whose budget is at least as large, or from
//! a smaller one that never hit its cap.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{framed, CanonicalKey, ClusterQuiver, IceQuiver, QuiverError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MgsError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("quiver is neither of type A_n nor of type Ã_(n,1); supply a depth bound")]
    UnknownQuiverShape,
    #[error("depth bound must be at least 1")]
    ZeroDepthBound,
    #[error("sequence count overflow")]
    CountOverflow,
    #[error("thread count must be at least 1")]
    ZeroThreads,
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Recognized quiver families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuiverShape {
    /// Path with `n` vertices, any orientation.
    TypeA { n: usize },
    /// Cycle on `n + 1` vertices with a unique source and sink joined by a
    /// path of length `n` and a single arrow.
    AffineN1 { n: usize },
}

impl QuiverShape {
    /// Length of the longest maximal green sequence for the family.
    pub fn max_mgs_length(&self) -> usize {
        match *self {
            QuiverShape::TypeA { n } => n * (n + 1) / 2,
            QuiverShape::AffineN1 { n } => n * (n + 3) / 2,
        }
    }

    /// The closed interval of maximal green sequence lengths.
    pub fn expected_interval(&self) -> (usize, usize) {
        match *self {
            QuiverShape::TypeA { n } => (n, self.max_mgs_length()),
            QuiverShape::AffineN1 { n } => (n + 1, self.max_mgs_length()),
        }
    }
}

/// Shape detection up to relabeling of vertices.
pub fn detect_shape(q: &ClusterQuiver) -> Option<QuiverShape> {
    let v = q.n();
    if q.arrows().any(|(_, _, k)| k > 1) {
        return None;
    }
    let edges = q.arrows().count();
    let degree = |x: Vertex| {
        (0..v)
            .filter(|&y| q.multiplicity(x, y) + q.multiplicity(y, x) > 0)
            .count()
    };
    if edges + 1 == v && (0..v).all(|x| degree(x) <= 2) {
        return Some(QuiverShape::TypeA { n: v });
    }
    if edges == v && v >= 3 && (0..v).all(|x| degree(x) == 2) {
        let sources: Vec<Vertex> = (0..v)
            .filter(|&x| (0..v).all(|y| q.multiplicity(y, x) == 0))
            .collect();
        let sinks: Vec<Vertex> = (0..v)
            .filter(|&x| (0..v).all(|y| q.multiplicity(x, y) == 0))
            .collect();
        if sources.len() != 1 || sinks.len() != 1 {
            return None;
        }
        let (src, sink) = (sources[0], sinks[0]);
        if q.multiplicity(src, sink) == 1 {
            // the other route must cover every remaining vertex
            let mut len = 0;
            let mut cur = src;
            while cur != sink || len == 0 {
                let next =
                    (0..v).find(|&y| q.multiplicity(cur, y) > 0 && !(cur == src && y == sink));
                cur = next?;
                len += 1;
                if len > v {
                    return None;
                }
            }
            if len == v - 1 {
                return Some(QuiverShape::AffineN1 { n: v - 1 });
            }
        }
    }
    None
}

/// `n(n+1)/2` for `A_n`, `n(n+3)/2` for `Ã_(n,1)`.
pub fn default_depth_bound(q: &ClusterQuiver) -> Result<usize, MgsError> {
    detect_shape(q)
        .map(|s| s.max_mgs_length())
        .ok_or(MgsError::UnknownQuiverShape)
}

/// Ordered list of vertex indices, each green when it is mutated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GreenSequence(pub Vec<Vertex>);

impl GreenSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Replays the sequence from the framed quiver. `Ok(Some(state))` with the
    /// final state if every step was green, `Ok(None)` otherwise.
    pub fn replay(&self, q: &ClusterQuiver) -> Result<Option<IceQuiver>, QuiverError> {
        let mut state = framed(q);
        for &k in &self.0 {
            if !state.green_vertices()?.contains(&k) {
                return Ok(None);
            }
            state = state.mutate(k)?;
        }
        Ok(Some(state))
    }

    pub fn is_maximal(&self, q: &ClusterQuiver) -> Result<bool, QuiverError> {
        Ok(match self.replay(q)? {
            Some(end) => end.green_vertices()?.is_empty(),
            None => false,
        })
    }

    pub fn labels(&self, q: &ClusterQuiver) -> Vec<usize> {
        self.0.iter().map(|&v| q.label(v)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub depth_bound: usize,
    pub memoize: bool,
    pub threads: usize,
}

impl EnumerationConfig {
    pub fn new(depth_bound: usize) -> Self {
        EnumerationConfig {
            depth_bound,
            memoize: true,
            threads: 1,
        }
    }

    pub fn memoize(mut self, on: bool) -> Self {
        self.memoize = on;
        self
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub lengths: BTreeSet<usize>,
    pub counts: BTreeMap<usize, u64>,
    pub states_visited: u64,
    pub truncated: bool,
    pub depth_bound: usize,
    /// Some green sequence reached the bound with a green vertex left. This
    /// is not truncation when the bound is a proven maximum for the quiver's
    /// family, since such a branch can never end in a maximal sequence.
    pub pruned: bool,
}

impl SpectrumReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn is_interval(&self) -> bool {
        match (self.lengths.first(), self.lengths.last()) {
            (Some(&lo), Some(&hi)) => self.lengths.len() == hi - lo + 1,
            _ => true,
        }
    }

    pub fn total_sequences(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Lengths plus the truncation flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub lengths: BTreeSet<usize>,
    pub truncated: bool,
}

#[derive(Debug)]
struct Entry {
    budget: usize,
    suffixes: BTreeMap<usize, u64>,
    /// min(longest green sequence from here, budget + 1)
    longest: usize,
}

impl Entry {
    fn restrict(self: &Arc<Self>, budget: usize) -> Option<Arc<Entry>> {
        if budget == self.budget {
            return Some(Arc::clone(self));
        }
        if budget < self.budget || self.longest <= self.budget {
            return Some(Arc::new(Entry {
                budget,
                suffixes: self
                    .suffixes
                    .range(..=budget)
                    .map(|(&l, &c)| (l, c))
                    .collect(),
                longest: self.longest.min(budget + 1),
            }));
        }
        None
    }
}

/// Depth at which the parallel solver stops fanning out.
const PARALLEL_DEPTH: usize = 3;

struct Engine {
    memo: Option<DashMap<CanonicalKey, Arc<Entry>>>,
    visited: AtomicU64,
    parallel: bool,
}

impl Engine {
    fn new(memoize: bool, parallel: bool) -> Self {
        Engine {
            memo: memoize.then(DashMap::new),
            visited: AtomicU64::new(0),
            parallel,
        }
    }

    fn lookup(&self, key: &CanonicalKey, budget: usize) -> Option<Arc<Entry>> {
        let stored = self
            .memo
            .as_ref()?
            .get(key)
            .map(|e| Arc::clone(e.value()))?;
        stored.restrict(budget)
    }

    fn store(&self, key: CanonicalKey, entry: &Arc<Entry>) {
        if let Some(memo) = &self.memo {
            memo.entry(key)
                .and_modify(|old| {
                    if entry.budget >= old.budget {
                        *old = Arc::clone(entry);
                    }
                })
                .or_insert_with(|| Arc::clone(entry));
        }
    }

    fn solve(
        &self,
        state: &IceQuiver,
        budget: usize,
        depth: usize,
    ) -> Result<Arc<Entry>, MgsError> {
        let key = self.memo.as_ref().map(|_| state.canonical_key());
        if let Some(key) = &key {
            if let Some(hit) = self.lookup(key, budget) {
                return Ok(hit);
            }
        }
        self.visited.fetch_add(1, Ordering::Relaxed);

        let greens = state.green_vertices()?;
        let entry = if greens.is_empty() {
            Entry {
                budget,
                suffixes: BTreeMap::from([(0, 1)]),
                longest: 0,
            }
        } else if budget == 0 {
            Entry {
                budget,
                suffixes: BTreeMap::new(),
                longest: 1,
            }
        } else {
            let child = |k: &Vertex| -> Result<Arc<Entry>, MgsError> {
                self.solve(&state.mutate(*k)?, budget - 1, depth + 1)
            };
            let children: Vec<Arc<Entry>> = if self.parallel && depth < PARALLEL_DEPTH {
                greens.par_iter().map(child).collect::<Result<_, _>>()?
            } else {
                greens.iter().map(child).collect::<Result<_, _>>()?
            };
            let mut suffixes = BTreeMap::new();
            let mut longest = 0;
            for c in &children {
                longest = longest.max(c.longest + 1);
                for (&l, &count) in &c.suffixes {
                    let slot = suffixes.entry(l + 1).or_insert(0u64);
                    *slot = slot.checked_add(count).ok_or(MgsError::CountOverflow)?;
                }
            }
            Entry {
                budget,
                suffixes,
                longest,
            }
        };
        let entry = Arc::new(entry);
        if let Some(key) = key {
            self.store(key, &entry);
        }
        Ok(entry)
    }

    /// Streams every maximal green sequence in ascending-vertex DFS order.
    fn walk(
        &self,
        state: &IceQuiver,
        budget: usize,
        path: &mut Vec<Vertex>,
        visitor: &mut dyn FnMut(&[Vertex]),
    ) -> Result<(), MgsError> {
        let greens = state.green_vertices()?;
        if greens.is_empty() {
            visitor(path);
            return Ok(());
        }
        if budget == 0 {
            return Ok(());
        }
        for k in greens {
            let child = state.mutate(k)?;
            if self.memo.is_some()
                && self
                    .solve(&child, budget - 1, PARALLEL_DEPTH)?
                    .suffixes
                    .is_empty()
            {
                continue;
            }
            path.push(k);
            self.walk(&child, budget - 1, path, visitor)?;
            path.pop();
        }
        Ok(())
    }
}

fn certified(q: &ClusterQuiver, depth_bound: usize) -> bool {
    detect_shape(q).is_some_and(|s| depth_bound >= s.max_mgs_length())
}

/// Callback receiving each maximal green sequence.
pub type Visitor<'a> = &'a mut dyn FnMut(&[Vertex]);

/// Exhaustive enumeration of maximal green sequences of length at most
/// `config.depth_bound`. `visitor`, when given, receives every maximal green
/// sequence (vertex indices) in DFS order with children taken in ascending
/// vertex order.
pub fn enumerate_mgs(
    q: &ClusterQuiver,
    config: &EnumerationConfig,
    visitor: Option<Visitor<'_>>,
) -> Result<SpectrumReport, MgsError> {
    if config.depth_bound == 0 {
        return Err(MgsError::ZeroDepthBound);
    }
    if config.threads == 0 {
        return Err(MgsError::ZeroThreads);
    }
    let root = framed(q);
    let parallel = config.threads > 1;
    let engine = Engine::new(config.memoize, parallel);

    let streaming_only = !config.memoize && visitor.is_some();
    let run = |engine: &Engine| -> Result<Arc<Entry>, MgsError> {
        if streaming_only {
            // the walk below does the whole traversal
            return Ok(Arc::new(Entry {
                budget: config.depth_bound,
                suffixes: BTreeMap::new(),
                longest: 0,
            }));
        }
        engine.solve(&root, config.depth_bound, 0)
    };
    let mut top = if parallel {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| MgsError::Pool(e.to_string()))?;
        pool.install(|| run(&engine))?
    } else {
        run(&engine)?
    };

    if let Some(visitor) = visitor {
        if config.memoize {
            engine.walk(&root, config.depth_bound, &mut Vec::new(), visitor)?;
        } else {
            // plain DFS: collect counts while streaming
            let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
            let mut longest = 0usize;
            walk_plain(
                &root,
                config.depth_bound,
                &mut Vec::new(),
                &mut |seq: &[Vertex]| {
                    *counts.entry(seq.len()).or_insert(0) += 1;
                    visitor(seq);
                },
                &mut longest,
                &engine.visited,
            )?;
            top = Arc::new(Entry {
                budget: config.depth_bound,
                suffixes: counts,
                longest,
            });
        }
    }

    let pruned = top.longest > config.depth_bound;
    Ok(SpectrumReport {
        lengths: top.suffixes.keys().copied().collect(),
        counts: top.suffixes.clone(),
        states_visited: engine.visited.load(Ordering::Relaxed),
        truncated: pruned && !certified(q, config.depth_bound),
        depth_bound: config.depth_bound,
        pruned,
    })
}

fn walk_plain(
    state: &IceQuiver,
    budget: usize,
    path: &mut Vec<Vertex>,
    visitor: &mut dyn FnMut(&[Vertex]),
    longest: &mut usize,
    visited: &AtomicU64,
) -> Result<(), MgsError> {
    visited.fetch_add(1, Ordering::Relaxed);
    let greens = state.green_vertices()?;
    if greens.is_empty() {
        *longest = (*longest).max(path.len());
        visitor(path);
        return Ok(());
    }
    if budget == 0 {
        *longest = (*longest).max(path.len() + 1);
        return Ok(());
    }
    for k in greens {
        path.push(k);
        walk_plain(
            &state.mutate(k)?,
            budget - 1,
            path,
            visitor,
            longest,
            visited,
        )?;
        path.pop();
    }
    Ok(())
}

/// Spectrum with the truncation flag; exact whenever `truncated` is false.
pub fn length_spectrum(q: &ClusterQuiver, depth_bound: usize) -> Result<Spectrum, MgsError> {
    let report = enumerate_mgs(q, &EnumerationConfig::new(depth_bound), None)?;
    Ok(Spectrum {
        lengths: report.lengths,
        truncated: report.truncated,
    })
}

#[derive(Clone, Debug)]
pub struct ExchangeNode {
    pub key: CanonicalKey,
    pub quiver: IceQuiver,
    /// BFS distance from the root.
    pub depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExchangeEdge {
    pub source: usize,
    /// Mutated vertex, green in the source node's representative.
    pub vertex: Vertex,
    pub target: usize,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub nodes: Vec<ExchangeNode>,
    pub edges: Vec<ExchangeEdge>,
    pub root: usize,
    pub depth_bound: usize,
    /// Some node at the depth bound still had green vertices.
    pub truncated: bool,
}

impl ExchangeGraph {
    /// Nodes with no green vertex.
    pub fn sinks(&self) -> Vec<usize> {
        let mut has_out = vec![false; self.nodes.len()];
        for e in &self.edges {
            has_out[e.source] = true;
        }
        (0..self.nodes.len()).filter(|&i| !has_out[i]).collect()
    }

    /// Lengths of all maximal directed paths starting at the root.
    pub fn maximal_path_lengths(&self) -> BTreeSet<usize> {
        let adj = adjacency(
            self.nodes.len(),
            self.edges.iter().map(|e| (e.source, e.target)),
        );
        maximal_path_lengths(&adj, self.root)
    }

    /// Graphviz output, nodes and edges ordered by canonical key.
    pub fn to_dot(&self, label_of: impl Fn(Vertex) -> usize) -> String {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by(|&a, &b| self.nodes[a].key.cmp(&self.nodes[b].key));
        let id = |i: usize| format!("n{}", self.nodes[i].key.short_hash());
        let mut out = String::from("digraph exchange {\n");
        for &i in &order {
            let extra = if i == self.root {
                ", peripheries=2"
            } else {
                ""
            };
            writeln!(
                out,
                "  {} [label=\"{}\"{}];",
                id(i),
                self.nodes[i].key.short_hash(),
                extra
            )
            .unwrap();
        }
        let mut edges = self.edges.clone();
        edges.sort_by(|a, b| {
            (
                &self.nodes[a.source].key,
                a.vertex,
                &self.nodes[a.target].key,
            )
                .cmp(&(
                    &self.nodes[b.source].key,
                    b.vertex,
                    &self.nodes[b.target].key,
                ))
        });
        for e in &edges {
            writeln!(
                out,
                "  {} -> {} [label=\"μ{}\", color=green];",
                id(e.source),
                id(e.target),
                label_of(e.vertex)
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn adjacency(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (s, t) in edges {
        adj[s].push(t);
    }
    adj
}

/// Lengths of maximal paths from `start` in a finite DAG.
pub(crate) fn maximal_path_lengths(adj: &[Vec<usize>], start: usize) -> BTreeSet<usize> {
    fn go(
        v: usize,
        adj: &[Vec<usize>],
        memo: &mut HashMap<usize, BTreeSet<usize>>,
    ) -> BTreeSet<usize> {
        if let Some(s) = memo.get(&v) {
            return s.clone();
        }
        let out = if adj[v].is_empty() {
            BTreeSet::from([0])
        } else {
            let mut s = BTreeSet::new();
            for &w in &adj[v] {
                s.extend(go(w, adj, memo).into_iter().map(|l| l + 1));
            }
            s
        };
        memo.insert(v, out.clone());
        out
    }
    go(start, adj, &mut HashMap::new())
}

/// Breadth-first construction of the oriented exchange graph up to
/// `depth_bound` green mutations from the framed quiver.
pub fn build_exchange_graph(
    q: &ClusterQuiver,
    depth_bound: usize,
) -> Result<ExchangeGraph, MgsError> {
    if depth_bound == 0 {
        return Err(MgsError::ZeroDepthBound);
    }
    let root = framed(q);
    let mut index: HashMap<CanonicalKey, usize> = HashMap::new();
    let root_key = root.canonical_key();
    index.insert(root_key.clone(), 0);
    let mut nodes = vec![ExchangeNode {
        key: root_key,
        quiver: root,
        depth: 0,
    }];
    let mut edges = Vec::new();
    let mut truncated = false;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let greens = nodes[i].quiver.green_vertices()?;
        if nodes[i].depth == depth_bound {
            truncated |= !greens.is_empty();
            continue;
        }
        for k in greens {
            let child = nodes[i].quiver.mutate(k)?;
            let key = child.canonical_key();
            let target = match index.get(&key) {
                Some(&t) => t,
                None => {
                    let t = nodes.len();
                    index.insert(key.clone(), t);
                    nodes.push(ExchangeNode {
                        key,
                        quiver: child,
                        depth: nodes[i].depth + 1,
                    });
                    queue.push_back(t);
                    t
                }
            };
            edges.push(ExchangeEdge {
                source: i,
                vertex: k,
                target,
            });
        }
    }
    Ok(ExchangeGraph {
        nodes,
        edges,
        root: 0,
        depth_bound,
        truncated,
    })
}
