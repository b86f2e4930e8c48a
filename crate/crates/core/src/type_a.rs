//! Interval modules over path algebras of type A.
//!
//! Vertices are labeled `1..=n` along the path `1 - 2 - ... - n`. The
//! orientation is a sign per edge: `d(i) = +` for `i -> i+1`, `-` for
//! `i <- i+1`. `L(i, j)` with `0 <= i < j <= n` is the indecomposable
//! representation supported on `i+1..=j` with identity maps along internal
//! arrows.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::coxeter::{CoxeterData, CoxeterError, DimVector};
use crate::linalg::{ArithmeticOverflow, RationalMatrix};
use crate::mgs::{adjacency, maximal_path_lengths};
use crate::quiver::ClusterQuiver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeAError {
    #[error("invalid orientation character `{0}` (expected `+` or `-`)")]
    InvalidOrientation(char),
    #[error("invalid interval [{i},{j}] for n = {n}")]
    InvalidInterval { i: usize, j: usize, n: usize },
    #[error("dimension vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("no nonzero morphism between the given modules")]
    NoNonzeroHom,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Overflow(#[from] ArithmeticOverflow),
}

impl From<CoxeterError> for TypeAError {
    fn from(e: CoxeterError) -> Self {
        match e {
            CoxeterError::Overflow(o) => TypeAError::Overflow(o),
            CoxeterError::LengthMismatch { expected, found } => {
                TypeAError::LengthMismatch { expected, found }
            }
            CoxeterError::NotAcyclic => {
                TypeAError::InternalInconsistency("type A quiver reported cyclic".into())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Orientation of the path `1 - 2 - ... - n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeAQuiver {
    signs: Vec<Sign>,
}

impl TypeAQuiver {
    pub fn new(signs: Vec<Sign>) -> Self {
        TypeAQuiver { signs }
    }

    pub fn linear(n: usize) -> Self {
        assert!(n >= 1, "type A needs at least one vertex");
        TypeAQuiver {
            signs: vec![Sign::Plus; n - 1],
        }
    }

    /// All `2^(n-1)` orientations, in the order `+...+`, `+...+-`, ...
    pub fn all_orientations(n: usize) -> Vec<TypeAQuiver> {
        assert!(n >= 1, "type A needs at least one vertex");
        (0..1u64 << (n - 1))
            .map(|mask| TypeAQuiver {
                signs: (0..n - 1)
                    .map(|b| {
                        if mask >> (n - 2 - b) & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect(),
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.signs.len() + 1
    }

    /// `d(i)` for `1 <= i <= n - 1`.
    pub fn d(&self, i: usize) -> Option<Sign> {
        (i >= 1).then(|| self.signs.get(i - 1).copied()).flatten()
    }

    pub fn opposite(&self) -> TypeAQuiver {
        TypeAQuiver {
            signs: self.signs.iter().map(|s| s.flip()).collect(),
        }
    }

    fn has_arrow(&self, from: usize, to: usize) -> bool {
        if to == from + 1 {
            self.d(from) == Some(Sign::Plus)
        } else if from == to + 1 {
            self.d(to) == Some(Sign::Minus)
        } else {
            false
        }
    }

    /// Vertex `a` in `1..=n` with no outgoing arrow.
    pub fn is_sink(&self, a: usize) -> bool {
        (1..=self.n()).contains(&a)
            && !self.has_arrow(a, a + 1)
            && (a == 1 || !self.has_arrow(a, a - 1))
    }

    /// Vertex `a` in `1..=n` with no incoming arrow.
    pub fn is_source(&self, a: usize) -> bool {
        (1..=self.n()).contains(&a)
            && !self.has_arrow(a + 1, a)
            && (a == 1 || !self.has_arrow(a - 1, a))
    }

    /// The same quiver as a [`ClusterQuiver`] labeled `1..=n`.
    pub fn to_cluster_quiver(&self) -> ClusterQuiver {
        let arrows: Vec<(usize, usize)> = self
            .signs
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                Sign::Plus => (i, i + 1),
                Sign::Minus => (i + 1, i),
            })
            .collect();
        ClusterQuiver::new(self.n(), &arrows).expect("a path is a valid cluster quiver")
    }

    /// Recognizes a cluster quiver whose underlying graph is the path
    /// `1 - 2 - ... - n` in label order.
    pub fn from_cluster_quiver(q: &ClusterQuiver) -> Option<TypeAQuiver> {
        let n = q.n();
        if q.arrows().count() != n - 1 {
            return None;
        }
        let mut signs = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            match (q.multiplicity(i, i + 1), q.multiplicity(i + 1, i)) {
                (1, 0) => signs.push(Sign::Plus),
                (0, 1) => signs.push(Sign::Minus),
                _ => return None,
            }
        }
        Some(TypeAQuiver { signs })
    }

    pub fn intervals(&self) -> Vec<IntervalModule> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..=n).map(move |j| IntervalModule { i, j }))
            .collect()
    }

    pub fn interval(&self, i: usize, j: usize) -> Result<IntervalModule, TypeAError> {
        IntervalModule::new(i, j, self.n())
    }

    fn coxeter_data(&self) -> CoxeterData {
        CoxeterData::new(&self.to_cluster_quiver()).expect("type A quivers are acyclic")
    }
}

impl FromStr for TypeAQuiver {
    type Err = TypeAError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(TypeAError::InvalidOrientation(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TypeAQuiver::new)
    }
}

impl fmt::Display for TypeAQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

/// `L(i, j)`, supported on vertices `i+1..=j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalModule {
    pub i: usize,
    pub j: usize,
}

impl IntervalModule {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self, TypeAError> {
        if i < j && j <= n {
            Ok(IntervalModule { i, j })
        } else {
            Err(TypeAError::InvalidInterval { i, j, n })
        }
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.i < vertex && vertex <= self.j
    }

    pub fn support(&self) -> std::ops::RangeInclusive<usize> {
        self.i + 1..=self.j
    }

    pub fn dim_vector(&self, n: usize) -> DimVector {
        DimVector((1..=n).map(|v| i64::from(self.contains(v))).collect())
    }

    /// Inverse of [`IntervalModule::dim_vector`]: a contiguous 0/1 block.
    pub fn from_dim_vector(d: &DimVector) -> Option<IntervalModule> {
        if d.0.iter().any(|&x| x != 0 && x != 1) {
            return None;
        }
        let first = d.0.iter().position(|&x| x == 1)?;
        let last = d.0.iter().rposition(|&x| x == 1)?;
        d.0[first..=last]
            .iter()
            .all(|&x| x == 1)
            .then_some(IntervalModule {
                i: first,
                j: last + 1,
            })
    }
}

impl fmt::Display for IntervalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

impl Serialize for IntervalModule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Both `Ext^1` groups between `a` and `b` vanish, decided from the
/// endpoints and the orientation alone.
pub fn ext_mutually_vanishes(q: &TypeAQuiver, a: IntervalModule, b: IntervalModule) -> bool {
    let (i, j, k, l) = (a.i, a.j, b.i, b.j);
    let d = |x: usize| q.d(x);
    // closed index ranges [i,j] and [k,l] are disjoint
    if j < k || l < i {
        return true;
    }
    if i == k || j == l {
        return true;
    }
    if i < k {
        if j < l {
            // crossing; touching (k == j) always carries an extension
            k < j && d(j) != d(k)
        } else {
            // k < l < j, nested
            d(k) == d(l)
        }
    } else if l < j {
        // k < i <= l < j
        i < l && d(i) != d(l)
    } else {
        // k < i < j < l
        d(i) == d(j)
    }
}

fn shared_support(x: IntervalModule, y: IntervalModule) -> Vec<usize> {
    (x.i.max(y.i) + 1..=x.j.min(y.j)).collect()
}

/// Linear constraints `Y_a f_u = f_v X_a` on the components of a morphism
/// `x -> y`, one unknown per shared-support vertex.
fn hom_constraints(
    q: &TypeAQuiver,
    x: IntervalModule,
    y: IntervalModule,
) -> (Vec<usize>, RationalMatrix) {
    let vars = shared_support(x, y);
    let col = |v: usize| vars.iter().position(|&w| w == v);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let n = q.n();
    for u in 1..n {
        let (from, to) = match q.d(u) {
            Some(Sign::Plus) => (u, u + 1),
            Some(Sign::Minus) => (u + 1, u),
            None => unreachable!("every edge of a type A quiver has a sign"),
        };
        let mut row = vec![0i64; vars.len()];
        // Y_a f_from: Y's map along the arrow is the identity iff both ends are in supp(y)
        if y.contains(from) && y.contains(to) {
            if let Some(c) = col(from) {
                row[c] += 1;
            }
        }
        // f_to X_a
        if x.contains(from) && x.contains(to) {
            if let Some(c) = col(to) {
                row[c] -= 1;
            }
        }
        if row.iter().any(|&r| r != 0) {
            rows.push(row);
        }
    }
    let m = RationalMatrix::from_int_rows(&rows, vars.len());
    (vars, m)
}

/// `dim Hom(x, y)`, solved exactly from the commutativity constraints.
pub fn hom_dim(q: &TypeAQuiver, x: IntervalModule, y: IntervalModule) -> Result<usize, TypeAError> {
    let (vars, m) = hom_constraints(q, x, y);
    Ok(vars.len() - m.rank()?)
}

/// Basis of `Hom(x, y)`: each morphism as `(vertex, component)` pairs over
/// the shared support.
pub fn hom_basis(
    q: &TypeAQuiver,
    x: IntervalModule,
    y: IntervalModule,
) -> Result<Vec<Vec<(usize, Rational64)>>, TypeAError> {
    let (vars, m) = hom_constraints(q, x, y);
    Ok(m.nullspace()?
        .into_iter()
        .map(|v| vars.iter().copied().zip(v).collect())
        .collect())
}

pub fn euler_form(q: &TypeAQuiver, dx: &DimVector, dy: &DimVector) -> Result<i64, TypeAError> {
    Ok(crate::coxeter::euler_form(&q.to_cluster_quiver(), dx, dy)?)
}

/// `dim Ext^1(x, y) = dim Hom(x, y) - <dim x, dim y>` (hereditary algebras).
pub fn ext_dim(q: &TypeAQuiver, x: IntervalModule, y: IntervalModule) -> Result<usize, TypeAError> {
    let n = q.n();
    let hom = hom_dim(q, x, y)? as i64;
    let chi = euler_form(q, &x.dim_vector(n), &y.dim_vector(n))?;
    let ext = hom - chi;
    if ext < 0 {
        return Err(TypeAError::InternalInconsistency(format!(
            "negative Ext dimension {ext} for {x}, {y} on {q}"
        )));
    }
    Ok(ext as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomProfile {
    pub shared_support: Vec<usize>,
    /// Shared-support vertices where the basis morphism is nonzero.
    pub nonzero: Vec<usize>,
}

impl HomProfile {
    /// Nonzero on every shared-support vertex.
    pub fn is_full(&self) -> bool {
        self.nonzero == self.shared_support
    }
}

/// Zero pattern of the first basis morphism `x -> y`.
pub fn hom_component_profile(
    q: &TypeAQuiver,
    x: IntervalModule,
    y: IntervalModule,
) -> Result<HomProfile, TypeAError> {
    let basis = hom_basis(q, x, y)?;
    let f = basis.first().ok_or(TypeAError::NoNonzeroHom)?;
    Ok(HomProfile {
        shared_support: shared_support(x, y),
        nonzero: f
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|&(v, _)| v)
            .collect(),
    })
}

/// `Phi(dx)` when it is again an interval indicator, `None` otherwise (the
/// projective case).
pub fn coxeter_tau_oracle(
    q: &TypeAQuiver,
    dx: &DimVector,
) -> Result<Option<DimVector>, TypeAError> {
    let img = q.coxeter_data().apply_coxeter(dx)?;
    Ok(IntervalModule::from_dim_vector(&img).map(|_| img))
}

/// How [`tau_interval`] produced its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauRoute {
    /// The module is projective.
    Projective,
    /// Endpoint formulas, every case defined.
    Formula,
    /// A boundary case left an endpoint formula undefined; the Coxeter
    /// transformation supplied the answer.
    OracleFallback,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauOutcome {
    pub module: Option<IntervalModule>,
    pub route: TauRoute,
}

/// One endpoint `p` of `tau L(i, j)`, or `None` when the applicable case
/// references an undefined quantity.
fn tau_endpoint(q: &TypeAQuiver, p: usize) -> Option<usize> {
    let n = q.n();
    if q.is_sink(p) {
        return (1..p).rev().find(|&a| q.is_source(a)).map(|a| a - 1);
    }
    if q.is_sink(p + 1) {
        return (p + 1..=n).find(|&a| q.is_source(a));
    }
    match q.d(p) {
        Some(Sign::Plus) => Some(p + 1),
        Some(Sign::Minus) => Some(p - 1),
        None => None,
    }
}

/// `tau L(i, j)` from the endpoint formulas alone; `None` when a case is
/// undefined or yields an invalid interval.
pub fn tau_formula(q: &TypeAQuiver, x: IntervalModule) -> Option<IntervalModule> {
    let i = tau_endpoint(q, x.i)?;
    let j = tau_endpoint(q, x.j)?;
    IntervalModule::new(i, j, q.n()).ok()
}

/// Auslander-Reiten translate of an interval module.
pub fn tau_interval(q: &TypeAQuiver, x: IntervalModule) -> Result<TauOutcome, TypeAError> {
    let oracle = coxeter_tau_oracle(q, &x.dim_vector(q.n()))?;
    let Some(oracle) = oracle else {
        return Ok(TauOutcome {
            module: None,
            route: TauRoute::Projective,
        });
    };
    match tau_formula(q, x) {
        Some(m) => Ok(TauOutcome {
            module: Some(m),
            route: TauRoute::Formula,
        }),
        None => Ok(TauOutcome {
            module: IntervalModule::from_dim_vector(&oracle),
            route: TauRoute::OracleFallback,
        }),
    }
}

/// A support tilting module, as its set of interval summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SupportTiltingSet {
    pub summands: BTreeSet<IntervalModule>,
}

impl SupportTiltingSet {
    pub fn new(summands: impl IntoIterator<Item = IntervalModule>) -> Self {
        SupportTiltingSet {
            summands: summands.into_iter().collect(),
        }
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.summands.iter().flat_map(|m| m.support()).collect()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// The projective generator `P(1) + ... + P(n)`.
    pub fn projectives(q: &TypeAQuiver) -> Result<Self, TypeAError> {
        let data = q.coxeter_data();
        let mut summands = BTreeSet::new();
        for x in 0..q.n() {
            let m = IntervalModule::from_dim_vector(&data.projective(x)).ok_or_else(|| {
                TypeAError::InternalInconsistency("projective is not an interval".into())
            })?;
            summands.insert(m);
        }
        Ok(SupportTiltingSet { summands })
    }
}

impl fmt::Display for SupportTiltingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self.summands.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", tokens.join(","))
    }
}

impl Serialize for SupportTiltingSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.summands.iter())
    }
}

/// Every support tilting module: pairwise Ext-compatible interval sets with
/// as many summands as support vertices, the zero module included.
pub fn enumerate_support_tilting(q: &TypeAQuiver) -> Vec<SupportTiltingSet> {
    let intervals = q.intervals();
    let m = intervals.len();
    let compat: Vec<Vec<bool>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| ext_mutually_vanishes(q, intervals[a], intervals[b]))
                .collect()
        })
        .collect();

    fn extend(
        start: usize,
        chosen: &mut Vec<usize>,
        intervals: &[IntervalModule],
        compat: &[Vec<bool>],
        out: &mut Vec<SupportTiltingSet>,
    ) {
        let set = SupportTiltingSet::new(chosen.iter().map(|&c| intervals[c]));
        if set.len() == set.support().len() {
            out.push(set);
        }
        for next in start..intervals.len() {
            if chosen.iter().all(|&c| compat[c][next]) {
                chosen.push(next);
                extend(next + 1, chosen, intervals, compat, out);
                chosen.pop();
            }
        }
    }

    let mut out = Vec::new();
    extend(0, &mut Vec::new(), &intervals, &compat, &mut out);
    out
}

/// `lower <= upper`: `Ext^1(upper, lower) = 0` and
/// `supp(lower) ⊆ supp(upper)`.
pub fn stilt_leq(
    q: &TypeAQuiver,
    lower: &SupportTiltingSet,
    upper: &SupportTiltingSet,
) -> Result<bool, TypeAError> {
    if !lower.support().is_subset(&upper.support()) {
        return Ok(false);
    }
    for &x in &upper.summands {
        for &y in &lower.summands {
            if ext_dim(q, x, y)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cover relations of the support tilting poset, oriented downwards.
#[derive(Clone, Debug)]
pub struct HasseQuiver {
    pub nodes: Vec<SupportTiltingSet>,
    /// `(upper, lower)` index pairs.
    pub edges: Vec<(usize, usize)>,
    pub top: usize,
    pub bottom: usize,
}

impl HasseQuiver {
    pub fn maximal_path_lengths(&self) -> BTreeSet<usize> {
        let adj = adjacency(self.nodes.len(), self.edges.iter().copied());
        maximal_path_lengths(&adj, self.top)
    }

    pub fn to_dot(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::from("digraph hasse {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let extra = if i == self.top { ", peripheries=2" } else { "" };
            writeln!(out, "  s{i} [label=\"{node}\"{extra}];").unwrap();
        }
        for &(a, b) in &self.edges {
            writeln!(out, "  s{a} -> s{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub fn hasse_quiver(q: &TypeAQuiver) -> Result<HasseQuiver, TypeAError> {
    let mut nodes = enumerate_support_tilting(q);
    nodes.sort();
    let k = nodes.len();
    let mut leq = vec![vec![false; k]; k];
    for a in 0..k {
        for b in 0..k {
            leq[a][b] = stilt_leq(q, &nodes[a], &nodes[b])?;
        }
    }
    let below: Vec<Vec<usize>> = (0..k)
        .map(|u| (0..k).filter(|&l| l != u && leq[l][u]).collect())
        .collect();
    let mut edges = Vec::new();
    for (u, lows) in below.iter().enumerate() {
        for &l in lows {
            let covered = !lows.iter().any(|&m| m != l && leq[l][m]);
            if covered {
                edges.push((u, l));
            }
        }
    }
    let projectives = SupportTiltingSet::projectives(q)?;
    let top = nodes
        .iter()
        .position(|s| *s == projectives)
        .ok_or_else(|| TypeAError::InternalInconsistency("projective generator missing".into()))?;
    let bottom = nodes
        .iter()
        .position(SupportTiltingSet::is_empty)
        .ok_or_else(|| TypeAError::InternalInconsistency("zero module missing".into()))?;
    Ok(HasseQuiver {
        nodes,
        edges,
        top,
        bottom,
    })
}

/// Lengths of maximal paths from the projective generator to the zero
/// module in the Hasse quiver.
pub fn mgs_spectrum_from_hasse(q: &TypeAQuiver) -> Result<BTreeSet<usize>, TypeAError> {
    Ok(hasse_quiver(q)?.maximal_path_lengths())
}

/// Summary counts used when comparing pipelines.
pub fn hasse_counts(h: &HasseQuiver) -> (usize, usize) {
    (h.nodes.len(), h.edges.len())
}

/// Map from interval to index in [`TypeAQuiver::intervals`] order.
pub fn interval_index(q: &TypeAQuiver) -> BTreeMap<IntervalModule, usize> {
    q.intervals()
        .into_iter()
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> TypeAQuiver {
        s.parse().unwrap()
    }

    fn l(i: usize, j: usize) -> IntervalModule {
        IntervalModule { i, j }
    }

    #[test]
    fn orientation_parsing() {
        assert_eq!(o("+-").n(), 3);
        assert_eq!(o("").n(), 1);
        assert_eq!(
            "+x".parse::<TypeAQuiver>(),
            Err(TypeAError::InvalidOrientation('x'))
        );
        assert_eq!(o("+-+").to_string(), "+-+");
        assert_eq!(TypeAQuiver::all_orientations(3).len(), 4);
        assert_eq!(TypeAQuiver::all_orientations(3)[0], o("++"));
        assert_eq!(TypeAQuiver::all_orientations(3)[1], o("+-"));
    }

    #[test]
    fn sinks_and_sources() {
        let q = o("+-"); // 1 -> 2 <- 3
        assert!(q.is_source(1) && q.is_sink(2) && q.is_source(3));
        assert!(!q.is_sink(1) && !q.is_sink(0) && !q.is_sink(4));
        let single = o("");
        assert!(single.is_sink(1) && single.is_source(1));
    }

    #[test]
    fn interval_validation() {
        assert!(IntervalModule::new(1, 1, 3).is_err());
        assert!(IntervalModule::new(0, 4, 3).is_err());
        assert_eq!(l(1, 3).dim_vector(4), DimVector(vec![0, 1, 1, 0]));
        assert_eq!(
            IntervalModule::from_dim_vector(&DimVector(vec![0, 1, 1, 0])),
            Some(l(1, 3))
        );
        assert_eq!(
            IntervalModule::from_dim_vector(&DimVector(vec![1, 0, 1])),
            None
        );
        assert_eq!(
            IntervalModule::from_dim_vector(&DimVector(vec![0, 0])),
            None
        );
        assert_eq!(
            IntervalModule::from_dim_vector(&DimVector(vec![0, -1])),
            None
        );
    }

    #[test]
    fn ext_criterion_examples() {
        let q = o("++");
        assert!(ext_mutually_vanishes(&q, l(0, 1), l(2, 3)));
        assert!(ext_mutually_vanishes(&q, l(0, 2), l(0, 3)));
        assert!(!ext_mutually_vanishes(&q, l(0, 2), l(1, 3)));
        // the oracle agrees on the negative case
        assert!(
            ext_dim(&q, l(0, 2), l(1, 3)).unwrap() + ext_dim(&q, l(1, 3), l(0, 2)).unwrap() > 0
        );
        // adjacent simples always extend
        assert!(!ext_mutually_vanishes(&q, l(0, 1), l(1, 2)));
    }

    #[test]
    fn hom_examples() {
        let q = o("+");
        assert_eq!(hom_dim(&q, l(0, 2), l(0, 1)).unwrap(), 1);
        assert_eq!(hom_dim(&q, l(0, 1), l(0, 2)).unwrap(), 0);
        assert_eq!(hom_dim(&q, l(0, 1), l(1, 2)).unwrap(), 0);
        for q in TypeAQuiver::all_orientations(4) {
            for x in q.intervals() {
                assert_eq!(hom_dim(&q, x, x).unwrap(), 1, "{q} {x}");
            }
        }
    }

    #[test]
    fn ext_examples() {
        let q = o("+");
        assert_eq!(ext_dim(&q, l(0, 1), l(1, 2)).unwrap(), 1);
        assert_eq!(ext_dim(&q, l(1, 2), l(0, 1)).unwrap(), 0);
        for n in 1..=6 {
            for q in TypeAQuiver::all_orientations(n) {
                for x in q.intervals() {
                    assert_eq!(ext_dim(&q, x, x).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn euler_examples() {
        let q = o("+");
        let e1 = DimVector(vec![1, 0]);
        let e2 = DimVector(vec![0, 1]);
        assert_eq!(euler_form(&q, &e1, &e1).unwrap(), 1);
        assert_eq!(euler_form(&q, &e2, &e2).unwrap(), 1);
        assert_eq!(euler_form(&q, &e1, &e2).unwrap(), -1);
        assert_eq!(euler_form(&q, &e2, &e1).unwrap(), 0);
    }

    #[test]
    fn hom_profile_examples() {
        let q = o("+");
        let p = hom_component_profile(&q, l(0, 2), l(0, 1)).unwrap();
        assert_eq!(p.shared_support, vec![1]);
        assert_eq!(p.nonzero, vec![1]);
        let q = o("+-+");
        let p = hom_component_profile(&q, l(0, 4), l(0, 4)).unwrap();
        assert!(p.is_full());
        assert_eq!(p.nonzero, vec![1, 2, 3, 4]);
        assert_eq!(
            hom_component_profile(&q, l(0, 1), l(2, 4)),
            Err(TypeAError::NoNonzeroHom)
        );
    }

    #[test]
    fn tau_examples() {
        let q = o("+");
        let t = tau_interval(&q, l(0, 1)).unwrap();
        assert_eq!(t.module, Some(l(1, 2)));
        // P(1) = L(0,2) and P(2) = L(1,2) are projective
        assert_eq!(
            tau_interval(&q, l(0, 2)).unwrap().route,
            TauRoute::Projective
        );
        assert_eq!(tau_interval(&q, l(1, 2)).unwrap().module, None);
        assert_eq!(
            coxeter_tau_oracle(&q, &DimVector(vec![1, 0])).unwrap(),
            Some(DimVector(vec![0, 1]))
        );
        // simple projective of 1 -> 2 is S(2)
        assert_eq!(
            coxeter_tau_oracle(&q, &DimVector(vec![0, 1])).unwrap(),
            None
        );
    }

    #[test]
    fn support_tilting_counts() {
        assert_eq!(enumerate_support_tilting(&o("")).len(), 2);
        assert_eq!(enumerate_support_tilting(&o("+")).len(), 5);
        assert_eq!(enumerate_support_tilting(&o("-")).len(), 5);
        assert_eq!(enumerate_support_tilting(&o("++")).len(), 14);
        assert_eq!(enumerate_support_tilting(&o("+-+")).len(), 42);
        assert!(enumerate_support_tilting(&o("+"))
            .iter()
            .any(SupportTiltingSet::is_empty));
    }

    #[test]
    fn poset_extremes() {
        for q in [o("+"), o("+-"), o("-+-")] {
            let all = enumerate_support_tilting(&q);
            let top = SupportTiltingSet::projectives(&q).unwrap();
            let bottom = SupportTiltingSet::default();
            for m in &all {
                assert!(stilt_leq(&q, m, &top).unwrap());
                assert!(stilt_leq(&q, &bottom, m).unwrap());
                assert!(stilt_leq(&q, m, m).unwrap());
            }
        }
    }

    #[test]
    fn hasse_examples() {
        let h = hasse_quiver(&o("+")).unwrap();
        assert_eq!(hasse_counts(&h), (5, 5));
        assert_eq!(h.maximal_path_lengths(), BTreeSet::from([2, 3]));
        let h = hasse_quiver(&o("")).unwrap();
        assert_eq!(hasse_counts(&h), (2, 1));
        assert_eq!(
            mgs_spectrum_from_hasse(&o("")).unwrap(),
            BTreeSet::from([1])
        );
        let h = hasse_quiver(&o("++")).unwrap();
        assert_eq!(hasse_counts(&h), (14, 21));
    }

    #[test]
    fn serialization_tokens() {
        let s = SupportTiltingSet::new([l(0, 3), l(0, 1)]);
        assert_eq!(s.to_string(), "{[0,1],[0,3]}");
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"["[0,1]","[0,3]"]"#);
    }
}
