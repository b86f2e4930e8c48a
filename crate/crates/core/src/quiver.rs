//! Cluster quivers, ice quivers and quiver mutation.
//!
//! Vertices are addressed by 0-based indices. Every quiver carries a label
//! `base` (0 or 1) so that printed labels match the usual conventions: type-A
//! quivers are labeled `1..=n`, the affine quiver `0..=n`. The frozen copy
//! `c(i)` of vertex `i` in a framed quiver lives at index `n + i`.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

/// 0-based vertex index.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("quiver has no vertices")]
    Empty,
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("loop at vertex index {0}")]
    Loop(Vertex),
    #[error("2-cycle between vertex indices {0} and {1}")]
    TwoCycle(Vertex, Vertex),
    #[error("quiver is not connected")]
    Disconnected,
    #[error("arrow between frozen vertex indices {0} and {1}")]
    FrozenArrow(Vertex, Vertex),
    #[error("cannot mutate at frozen vertex index {0}")]
    MutationAtFrozen(Vertex),
    #[error("vertex index {0} is neither exactly green nor exactly red")]
    NotBicolored(Vertex),
    #[error("arrow multiplicity overflow")]
    Overflow,
}

/// Square matrix of arrow multiplicities: `get(u, v)` arrows `u -> v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArrowMatrix {
    size: usize,
    data: Vec<u32>,
}

impl ArrowMatrix {
    pub fn zeros(size: usize) -> Self {
        ArrowMatrix {
            size,
            data: vec![0; size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.data[u * self.size + v]
    }

    #[inline]
    pub fn set(&mut self, u: Vertex, v: Vertex, m: u32) {
        self.data[u * self.size + v] = m;
    }

    pub fn add(&mut self, u: Vertex, v: Vertex, m: u32) -> Result<(), QuiverError> {
        let cell = &mut self.data[u * self.size + v];
        *cell = cell.checked_add(m).ok_or(QuiverError::Overflow)?;
        Ok(())
    }

    /// `(u, v, multiplicity)` for every nonzero entry, row-major.
    pub fn arrows(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        (0..self.size)
            .cartesian_product(0..self.size)
            .map(|(u, v)| (u, v, self.get(u, v)))
            .filter(|&(_, _, m)| m > 0)
    }

    pub fn from_arrows(size: usize, arrows: &[(Vertex, Vertex)]) -> Result<Self, QuiverError> {
        let mut m = ArrowMatrix::zeros(size);
        for &(u, v) in arrows {
            if u >= size {
                return Err(QuiverError::VertexOutOfRange(u));
            }
            if v >= size {
                return Err(QuiverError::VertexOutOfRange(v));
            }
            m.add(u, v, 1)?;
        }
        Ok(m)
    }

    fn check_no_loops_or_two_cycles(&self) -> Result<(), QuiverError> {
        for u in 0..self.size {
            if self.get(u, u) > 0 {
                return Err(QuiverError::Loop(u));
            }
            for v in u + 1..self.size {
                if self.get(u, v) > 0 && self.get(v, u) > 0 {
                    return Err(QuiverError::TwoCycle(u, v));
                }
            }
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        if self.size == 0 {
            return false;
        }
        let mut seen = vec![false; self.size];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for (v, seen_v) in seen.iter_mut().enumerate() {
                if !*seen_v && (self.get(u, v) > 0 || self.get(v, u) > 0) {
                    *seen_v = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Debug for ArrowMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<_> = (0..self.size)
            .map(|u| (0..self.size).map(|v| self.get(u, v)).collect::<Vec<_>>())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

/// A finite connected quiver without loops or 2-cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClusterQuiver {
    arrows: ArrowMatrix,
    base: usize,
}

impl ClusterQuiver {
    /// Builds a quiver on `n` vertices from a list of arrows (repeat an arrow
    /// for multiplicity). Labels start at 1.
    pub fn new(n: usize, arrows: &[(Vertex, Vertex)]) -> Result<Self, QuiverError> {
        Self::from_matrix(ArrowMatrix::from_arrows(n, arrows)?)
    }

    pub fn from_matrix(arrows: ArrowMatrix) -> Result<Self, QuiverError> {
        if arrows.size() == 0 {
            return Err(QuiverError::Empty);
        }
        arrows.check_no_loops_or_two_cycles()?;
        if !arrows.is_connected() {
            return Err(QuiverError::Disconnected);
        }
        Ok(ClusterQuiver { arrows, base: 1 })
    }

    /// Sets the label of vertex index 0 (labels are `base..base + n`).
    pub fn with_base(mut self, base: usize) -> Self {
        self.base = base;
        self
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn n(&self) -> usize {
        self.arrows.size()
    }

    pub fn matrix(&self) -> &ArrowMatrix {
        &self.arrows
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        self.arrows.get(u, v)
    }

    pub fn arrows(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        self.arrows.arrows()
    }

    pub fn label(&self, v: Vertex) -> usize {
        v + self.base
    }

    pub fn index_of(&self, label: usize) -> Option<Vertex> {
        label.checked_sub(self.base).filter(|&v| v < self.n())
    }

    pub fn opposite(&self) -> ClusterQuiver {
        let n = self.n();
        let mut m = ArrowMatrix::zeros(n);
        for (u, v, k) in self.arrows() {
            m.set(v, u, k);
        }
        ClusterQuiver {
            arrows: m,
            base: self.base,
        }
    }

    /// True iff the quiver has no oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn order, smallest available index first.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let n = self.n();
        let mut indeg: Vec<usize> = (0..n)
            .map(|v| (0..n).filter(|&u| self.multiplicity(u, v) > 0).count())
            .collect();
        let mut order = Vec::with_capacity(n);
        let mut ready: std::collections::BTreeSet<Vertex> =
            (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(u) = ready.pop_first() {
            order.push(u);
            for (v, d) in indeg.iter_mut().enumerate() {
                if self.multiplicity(u, v) > 0 {
                    *d -= 1;
                    if *d == 0 {
                        ready.insert(v);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexColor {
    Green,
    Red,
}

impl fmt::Display for VertexColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexColor::Green => f.write_str("Green"),
            VertexColor::Red => f.write_str("Red"),
        }
    }
}

/// A quiver with a set of frozen vertices and no arrows between frozen
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IceQuiver {
    arrows: ArrowMatrix,
    frozen: Vec<bool>,
    /// `frozen_of[i] = c(i)` when the quiver came from a (co)framing.
    frozen_of: Option<Vec<Vertex>>,
    base: usize,
}

impl IceQuiver {
    pub fn new(arrows: ArrowMatrix, frozen: Vec<bool>) -> Result<Self, QuiverError> {
        if arrows.size() == 0 {
            return Err(QuiverError::Empty);
        }
        if frozen.len() != arrows.size() {
            return Err(QuiverError::VertexOutOfRange(frozen.len()));
        }
        arrows.check_no_loops_or_two_cycles()?;
        for (u, v, _) in arrows.arrows() {
            if frozen[u] && frozen[v] {
                return Err(QuiverError::FrozenArrow(u, v));
            }
        }
        Ok(IceQuiver {
            arrows,
            frozen,
            frozen_of: None,
            base: 1,
        })
    }

    pub fn with_base(mut self, base: usize) -> Self {
        self.base = base;
        self
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn size(&self) -> usize {
        self.arrows.size()
    }

    pub fn matrix(&self) -> &ArrowMatrix {
        &self.arrows
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        self.arrows.get(u, v)
    }

    pub fn arrows(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        self.arrows.arrows()
    }

    pub fn is_frozen(&self, v: Vertex) -> bool {
        self.frozen[v]
    }

    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen
    }

    pub fn frozen_of(&self) -> Option<&[Vertex]> {
        self.frozen_of.as_deref()
    }

    pub fn non_frozen(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.size()).filter(|&v| !self.frozen[v])
    }

    pub fn frozen_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.size()).filter(|&v| self.frozen[v])
    }

    pub fn label(&self, v: Vertex) -> usize {
        v + self.base
    }

    pub fn index_of(&self, label: usize) -> Option<Vertex> {
        label.checked_sub(self.base).filter(|&v| v < self.size())
    }

    /// Mutation at the non-frozen vertex `k`.
    ///
    /// Composite arrows `i -> j` are added with multiplicity
    /// `A[i][k] * A[k][j]`, arrows at `k` are reversed, 2-cycles are cancelled
    /// maximally and arrows between frozen vertices are dropped.
    pub fn mutate(&self, k: Vertex) -> Result<IceQuiver, QuiverError> {
        let size = self.size();
        if k >= size {
            return Err(QuiverError::VertexOutOfRange(k));
        }
        if self.frozen[k] {
            return Err(QuiverError::MutationAtFrozen(k));
        }
        let mut next = self.arrows.clone();
        // step 1: compose through k
        for i in (0..size).filter(|&i| i != k) {
            let into_k = self.arrows.get(i, k);
            if into_k == 0 {
                continue;
            }
            for j in (0..size).filter(|&j| j != k) {
                let out_of_k = self.arrows.get(k, j);
                if out_of_k == 0 {
                    continue;
                }
                let composite = into_k.checked_mul(out_of_k).ok_or(QuiverError::Overflow)?;
                next.add(i, j, composite)?;
            }
        }
        // steps 2 and 3: reverse every arrow at k
        for v in 0..size {
            next.set(k, v, self.arrows.get(v, k));
            next.set(v, k, self.arrows.get(k, v));
        }
        // step 4: cancel 2-cycles, drop frozen-frozen arrows
        for u in 0..size {
            for v in u + 1..size {
                if self.frozen[u] && self.frozen[v] {
                    next.set(u, v, 0);
                    next.set(v, u, 0);
                    continue;
                }
                let (a, b) = (next.get(u, v), next.get(v, u));
                let c = a.min(b);
                next.set(u, v, a - c);
                next.set(v, u, b - c);
            }
        }
        Ok(IceQuiver {
            arrows: next,
            frozen: self.frozen.clone(),
            frozen_of: self.frozen_of.clone(),
            base: self.base,
        })
    }

    /// Green iff no arrow comes in from a frozen vertex; red iff no arrow goes
    /// out to one. Exactly one must hold.
    pub fn color_of(&self, i: Vertex) -> Result<VertexColor, QuiverError> {
        if i >= self.size() {
            return Err(QuiverError::VertexOutOfRange(i));
        }
        if self.frozen[i] {
            return Err(QuiverError::NotBicolored(i));
        }
        let from_frozen = self.frozen_vertices().any(|f| self.multiplicity(f, i) > 0);
        let to_frozen = self.frozen_vertices().any(|f| self.multiplicity(i, f) > 0);
        match (from_frozen, to_frozen) {
            (false, true) => Ok(VertexColor::Green),
            (true, false) => Ok(VertexColor::Red),
            _ => Err(QuiverError::NotBicolored(i)),
        }
    }

    pub fn green_vertices(&self) -> Result<Vec<Vertex>, QuiverError> {
        let mut greens = Vec::new();
        for v in self.non_frozen() {
            if self.color_of(v)? == VertexColor::Green {
                greens.push(v);
            }
        }
        Ok(greens)
    }

    pub fn colors(&self) -> Result<Vec<(Vertex, VertexColor)>, QuiverError> {
        self.non_frozen()
            .map(|v| self.color_of(v).map(|c| (v, c)))
            .collect()
    }

    /// The quiver with vertex `v` moved to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> IceQuiver {
        let size = self.size();
        let mut m = ArrowMatrix::zeros(size);
        for (u, v, k) in self.arrows() {
            m.set(perm[u], perm[v], k);
        }
        let mut frozen = vec![false; size];
        for v in 0..size {
            frozen[perm[v]] = self.frozen[v];
        }
        IceQuiver {
            arrows: m,
            frozen,
            frozen_of: None,
            base: self.base,
        }
    }

    /// The lexicographically smallest serialization over all orderings of the
    /// non-frozen vertices, frozen vertices fixed.
    ///
    /// The serialization opens with each non-frozen vertex's signed row of
    /// arrows to/from the frozen vertices, so a minimizing ordering sorts
    /// those rows; only vertices with equal rows are permuted exhaustively
    /// (in the mutation class of a framed quiver these rows are pairwise
    /// distinct and no permutation search happens at all).
    pub fn canonical_key(&self) -> CanonicalKey {
        let nf: Vec<Vertex> = self.non_frozen().collect();
        let fz: Vec<Vertex> = self.frozen_vertices().collect();
        let signature = |v: Vertex| -> Vec<i64> {
            fz.iter()
                .map(|&f| self.multiplicity(v, f) as i64 - self.multiplicity(f, v) as i64)
                .collect()
        };
        let mut by_sig: Vec<(Vec<i64>, Vertex)> = nf.iter().map(|&v| (signature(v), v)).collect();
        by_sig.sort();

        let groups: Vec<Vec<Vertex>> = by_sig
            .iter()
            .chunk_by(|(s, _)| s.clone())
            .into_iter()
            .map(|(_, g)| g.map(|(_, v)| *v).collect())
            .collect();

        let block = |order: &[Vertex]| -> Vec<u32> {
            order
                .iter()
                .flat_map(|&u| order.iter().map(move |&v| self.multiplicity(u, v)))
                .collect()
        };

        let mut best: Option<Vec<u32>> = None;
        let group_perms = groups
            .iter()
            .map(|g| g.iter().copied().permutations(g.len()).collect::<Vec<_>>())
            .multi_cartesian_product();
        if groups.is_empty() {
            best = Some(Vec::new());
        } else {
            for choice in group_perms {
                let order: Vec<Vertex> = choice.into_iter().flatten().collect();
                let b = block(&order);
                if best.as_ref().is_none_or(|cur| b < *cur) {
                    best = Some(b);
                }
            }
        }

        let mut bytes = Vec::with_capacity(16 + by_sig.len() * fz.len() * 8);
        bytes.extend_from_slice(&(self.size() as u32).to_be_bytes());
        bytes.extend_from_slice(&(fz.len() as u32).to_be_bytes());
        // frozen positions are part of the identity of the quiver
        for &f in &fz {
            bytes.extend_from_slice(&(f as u32).to_be_bytes());
        }
        for (sig, _) in &by_sig {
            for &x in sig {
                bytes.extend_from_slice(&((x as u64) ^ (1 << 63)).to_be_bytes());
            }
        }
        for x in best.unwrap_or_default() {
            bytes.extend_from_slice(&x.to_be_bytes());
        }
        CanonicalKey(bytes)
    }
}

/// Byte string identifying an ice quiver up to isomorphism fixing frozen
/// vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Short stable hex digest, used as a DOT node id.
    pub fn short_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(&self.0);
        digest[..6].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.short_hash())
    }
}

/// The framed quiver: `Q` plus a frozen `c(i) = n + i` and an arrow `i -> c(i)`
/// for each vertex.
pub fn framed(q: &ClusterQuiver) -> IceQuiver {
    frame(q, false)
}

/// As [`framed`] with the framing arrows reversed: `c(i) -> i`.
pub fn coframed(q: &ClusterQuiver) -> IceQuiver {
    frame(q, true)
}

fn frame(q: &ClusterQuiver, reversed: bool) -> IceQuiver {
    let n = q.n();
    let mut m = ArrowMatrix::zeros(2 * n);
    for (u, v, k) in q.arrows() {
        m.set(u, v, k);
    }
    for i in 0..n {
        if reversed {
            m.set(n + i, i, 1);
        } else {
            m.set(i, n + i, 1);
        }
    }
    let frozen = (0..2 * n).map(|v| v >= n).collect();
    IceQuiver {
        arrows: m,
        frozen,
        frozen_of: Some((0..n).map(|i| n + i).collect()),
        base: q.base(),
    }
}

/// A permutation `perm` of all vertices, identity on frozen ones, such that
/// relabeling `a` by `perm` gives `b`. Backtracking search.
pub fn iso_fixing_frozen(a: &IceQuiver, b: &IceQuiver) -> Option<Vec<Vertex>> {
    let size = a.size();
    if size != b.size() || a.frozen_mask() != b.frozen_mask() {
        return None;
    }
    for u in a.frozen_vertices() {
        for v in a.frozen_vertices() {
            if a.multiplicity(u, v) != b.multiplicity(u, v) {
                return None;
            }
        }
    }
    let nf: Vec<Vertex> = a.non_frozen().collect();
    let mut perm: Vec<Option<Vertex>> = (0..size).map(|v| a.is_frozen(v).then_some(v)).collect();
    let mut used = vec![false; size];

    fn consistent(a: &IceQuiver, b: &IceQuiver, perm: &[Option<Vertex>], u: Vertex) -> bool {
        let pu = perm[u].expect("assigned");
        (0..a.size()).all(|v| match perm[v] {
            Some(pv) => {
                a.multiplicity(u, v) == b.multiplicity(pu, pv)
                    && a.multiplicity(v, u) == b.multiplicity(pv, pu)
            }
            None => true,
        })
    }

    fn search(
        a: &IceQuiver,
        b: &IceQuiver,
        nf: &[Vertex],
        idx: usize,
        perm: &mut Vec<Option<Vertex>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if idx == nf.len() {
            return true;
        }
        let u = nf[idx];
        for &target in nf {
            if used[target] {
                continue;
            }
            perm[u] = Some(target);
            if consistent(a, b, perm, u) {
                used[target] = true;
                if search(a, b, nf, idx + 1, perm, used) {
                    return true;
                }
                used[target] = false;
            }
            perm[u] = None;
        }
        false
    }

    if search(a, b, &nf, 0, &mut perm, &mut used) {
        Some(perm.into_iter().map(|p| p.expect("complete")).collect())
    } else {
        None
    }
}
