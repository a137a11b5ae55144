//! Finite T0 spaces stored as partial orders.
//!
//! The order follows the closure convention: `x <= y` means `x` lies in the
//! closure of `y`. Closed sets are down-sets and open sets are up-sets.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    CycleInOrder(String, String),
    #[error("second component of a pair is not contained in the first")]
    NotAPair,
    #[error("pair component is not closed")]
    NotClosed,
}

/// Dense index of a point inside one [`FiniteSpace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub usize);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for PointId {
    fn from(i: usize) -> Self {
        PointId(i)
    }
}

/// A subset of the points of a space with `universe` points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        PointSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        PointSet { bits }
    }

    pub fn from_ids<I: IntoIterator<Item = PointId>>(universe: usize, ids: I) -> Self {
        let mut s = Self::empty(universe);
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn singleton(universe: usize, id: PointId) -> Self {
        Self::from_ids(universe, [id])
    }

    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        PointSet { bits }
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    /// Number of points of the ambient space.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, id: PointId) -> bool {
        self.bits.contains(id.0)
    }

    pub fn insert(&mut self, id: PointId) {
        self.bits.insert(id.0);
    }

    pub fn remove(&mut self, id: PointId) {
        self.bits.set(id.0, false);
    }

    /// Members in increasing id order.
    pub fn iter(&self) -> impl Iterator<Item = PointId> + '_ {
        self.bits.ones().map(PointId)
    }

    pub fn to_vec(&self) -> Vec<PointId> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<PointId> {
        self.bits.minimum().map(PointId)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        PointSet { bits }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        PointSet { bits }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        PointSet { bits }
    }

    pub fn symmetric_difference(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.symmetric_difference_with(&other.bits);
        PointSet { bits }
    }

    pub fn complement(&self) -> PointSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        PointSet { bits }
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

/// Orders sets by size first, then by their sorted member lists.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.bits.ones().cmp(other.bits.ones()))
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An ordered pair of point sets `(p1, p2)` with `p2 ⊆ p1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TopPair {
    pub p1: PointSet,
    pub p2: PointSet,
}

impl TopPair {
    pub fn new(p1: PointSet, p2: PointSet) -> Result<Self, SpaceError> {
        if !p2.is_subset(&p1) {
            return Err(SpaceError::NotAPair);
        }
        Ok(TopPair { p1, p2 })
    }

    /// `(a, ∅)`.
    pub fn absolute(a: PointSet) -> Self {
        let p2 = PointSet::empty(a.universe());
        TopPair { p1: a, p2 }
    }

    /// `p1 \ p2`.
    pub fn difference(&self) -> PointSet {
        self.p1.difference(&self.p2)
    }

    /// Componentwise inclusion.
    pub fn is_subpair_of(&self, other: &TopPair) -> bool {
        self.p1.is_subset(&other.p1) && self.p2.is_subset(&other.p2)
    }

    pub fn intersection(&self, other: &TopPair) -> TopPair {
        TopPair {
            p1: self.p1.intersection(&other.p1),
            p2: self.p2.intersection(&other.p2),
        }
    }
}

/// A non-empty chain `x0 < x1 < … < xn`, stored in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain(pub Vec<PointId>);

impl Chain {
    pub fn points(&self) -> &[PointId] {
        &self.0
    }

    /// Simplicial dimension, one less than the number of points.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }
}

/// A finite T0 space, i.e. a finite poset with the Alexandrov topology.
#[derive(Clone)]
pub struct FiniteSpace {
    labels: Vec<String>,
    index: HashMap<String, PointId>,
    /// `below[x] = cl{x}`.
    below: Vec<FixedBitSet>,
    /// `above[x] = opn{x}`.
    above: Vec<FixedBitSet>,
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSpace")
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.below == other.below
    }
}

impl Eq for FiniteSpace {}

impl FiniteSpace {
    /// Builds the space whose order is the reflexive-transitive closure of
    /// the given `(lower, upper)` relations.
    pub fn build<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Self, SpaceError> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_ref().to_string(), PointId(i)).is_some() {
                return Err(SpaceError::DuplicateLabel(l.as_ref().to_string()));
            }
        }
        let lookup = |l: &S| {
            index
                .get(l.as_ref())
                .copied()
                .ok_or_else(|| SpaceError::UnknownLabel(l.as_ref().to_string()))
        };
        let mut below: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut b = FixedBitSet::with_capacity(n);
                b.insert(i);
                b
            })
            .collect();
        for (lo, hi) in covers {
            let lo = lookup(lo)?;
            let hi = lookup(hi)?;
            below[hi.0].insert(lo.0);
        }
        // Warshall closure on rows.
        for k in 0..n {
            let row_k = below[k].clone();
            for row in below.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for x in 0..n {
            for y in below[x].ones() {
                if y != x && below[y].contains(x) {
                    let (a, b) = if y < x { (y, x) } else { (x, y) };
                    return Err(SpaceError::CycleInOrder(
                        labels[a].as_ref().to_string(),
                        labels[b].as_ref().to_string(),
                    ));
                }
            }
        }
        let labels = labels.iter().map(|l| l.as_ref().to_string()).collect();
        Ok(Self::from_parts(labels, index, below))
    }

    /// Builds a space from a relation already known to be a partial order.
    pub(crate) fn from_order(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), PointId(i)))
            .collect();
        let below = (0..n)
            .map(|x| {
                let mut b = FixedBitSet::with_capacity(n);
                for y in 0..n {
                    if leq(y, x) {
                        b.insert(y);
                    }
                }
                b
            })
            .collect();
        Self::from_parts(labels, index, below)
    }

    fn from_parts(labels: Vec<String>, index: HashMap<String, PointId>, below: Vec<FixedBitSet>) -> Self {
        let n = labels.len();
        let mut above: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (x, row) in below.iter().enumerate() {
            for y in row.ones() {
                above[y].insert(x);
            }
        }
        FiniteSpace {
            labels,
            index,
            below,
            above,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.len()).map(PointId)
    }

    pub fn label(&self, x: PointId) -> &str {
        &self.labels[x.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn point(&self, label: &str) -> Option<PointId> {
        self.index.get(label).copied()
    }

    /// Set from labels; fails on the first unknown label.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<PointSet, SpaceError> {
        let mut s = self.empty_set();
        for l in labels {
            let id = self
                .point(l.as_ref())
                .ok_or_else(|| SpaceError::UnknownLabel(l.as_ref().to_string()))?;
            s.insert(id);
        }
        Ok(s)
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// `x <= y`, i.e. `x ∈ cl y`.
    pub fn leq(&self, x: PointId, y: PointId) -> bool {
        self.below[y.0].contains(x.0)
    }

    pub fn lt(&self, x: PointId, y: PointId) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn cl_point(&self, x: PointId) -> PointSet {
        PointSet::from_bits(self.below[x.0].clone())
    }

    pub fn opn_point(&self, x: PointId) -> PointSet {
        PointSet::from_bits(self.above[x.0].clone())
    }

    /// Down-set hull.
    pub fn cl(&self, a: &PointSet) -> PointSet {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for x in a.bits().ones() {
            bits.union_with(&self.below[x]);
        }
        PointSet::from_bits(bits)
    }

    /// Up-set hull.
    pub fn opn(&self, a: &PointSet) -> PointSet {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for x in a.bits().ones() {
            bits.union_with(&self.above[x]);
        }
        PointSet::from_bits(bits)
    }

    /// A pair of closed sets; [`TopPair::new`] checks only the inclusion.
    pub fn closed_pair(&self, p1: PointSet, p2: PointSet) -> Result<TopPair, SpaceError> {
        if !self.is_closed(&p1) || !self.is_closed(&p2) {
            return Err(SpaceError::NotClosed);
        }
        TopPair::new(p1, p2)
    }

    pub fn is_closed(&self, a: &PointSet) -> bool {
        a.bits().ones().all(|x| self.below[x].is_subset(a.bits()))
    }

    pub fn is_open(&self, a: &PointSet) -> bool {
        a.bits().ones().all(|x| self.above[x].is_subset(a.bits()))
    }

    /// `S` is a difference of two closed sets iff `cl S \ S` is closed.
    pub fn is_locally_closed(&self, s: &PointSet) -> bool {
        self.is_closed(&self.cl(s).difference(s))
    }

    /// Strictly greater elements of `x` inside `within`.
    fn strictly_above_in(&self, x: usize, within: &FixedBitSet) -> impl Iterator<Item = usize> + '_ {
        let mut up = self.above[x].clone();
        up.set(x, false);
        up.intersect_with(within);
        up.into_ones()
    }

    /// All non-empty chains with points in `a`, each in ascending order.
    /// Output is sorted by length, then lexicographically by point ids.
    pub fn order_complex(&self, a: &PointSet) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for x in a.bits().ones() {
            stack.push(PointId(x));
            self.extend_chains(a.bits(), &mut stack, &mut out);
            stack.pop();
        }
        out.sort_by(|c, d| c.0.len().cmp(&d.0.len()).then_with(|| c.0.cmp(&d.0)));
        out
    }

    fn extend_chains(&self, within: &FixedBitSet, stack: &mut Vec<PointId>, out: &mut Vec<Chain>) {
        out.push(Chain(stack.clone()));
        let top = stack.last().expect("non-empty chain").0;
        let next: Vec<usize> = self.strictly_above_in(top, within).collect();
        for y in next {
            stack.push(PointId(y));
            self.extend_chains(within, stack, out);
            stack.pop();
        }
    }

    /// Componentwise product order on `X × Y`; point `(x, y)` has id
    /// `x * |Y| + y`.
    pub fn product(&self, other: &FiniteSpace) -> FiniteSpace {
        let m = other.len();
        let labels = self
            .points()
            .flat_map(|x| other.points().map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", self.label(x), other.label(y)))
            .collect();
        FiniteSpace::from_order(labels, |a, b| {
            self.leq(PointId(a / m), PointId(b / m)) && other.leq(PointId(a % m), PointId(b % m))
        })
    }

    /// The subspace on `a` together with the embedding of its points.
    pub fn subspace(&self, a: &PointSet) -> (FiniteSpace, Vec<PointId>) {
        let embed: Vec<PointId> = a.iter().collect();
        let labels = embed.iter().map(|&x| self.label(x).to_string()).collect();
        let sub = FiniteSpace::from_order(labels, |i, j| self.leq(embed[i], embed[j]));
        (sub, embed)
    }

    /// Covering relations `(lower, upper)` of the order, sorted.
    pub fn covers(&self) -> Vec<(PointId, PointId)> {
        let mut out = Vec::new();
        for y in self.points() {
            for x in self.below[y.0].ones().map(PointId) {
                if x == y {
                    continue;
                }
                let covered = self.below[y.0]
                    .ones()
                    .map(PointId)
                    .all(|z| z == x || z == y || !self.lt(x, z));
                if covered {
                    out.push((x, y));
                }
            }
        }
        out.sort();
        out
    }

    /// Renders a set as `{a, b, c}` using labels.
    pub fn fmt_set(&self, a: &PointSet) -> String {
        let items: Vec<&str> = a.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", items.join(", "))
    }

    /// A linear extension: points sorted so that `x < y` implies `x` first.
    pub fn linear_extension(&self) -> Vec<PointId> {
        let mut pts: Vec<PointId> = self.points().collect();
        pts.sort_by_key(|x| (self.below[x.0].count_ones(..), x.0));
        pts
    }

    /// Closed sets `C` with `lo ⊆ C ⊆ hi`, grouped by size, smallest first.
    /// `lo` and `hi` must be closed.
    pub fn closed_sets_between(&self, lo: &PointSet, hi: &PointSet) -> ClosedSets<'_> {
        let level = if lo.is_subset(hi) { vec![lo.clone()] } else { Vec::new() };
        ClosedSets {
            space: self,
            hi: hi.clone(),
            level,
            pos: 0,
        }
    }
}

/// Iterator over closed sets between two bounds; see
/// [`FiniteSpace::closed_sets_between`].
pub struct ClosedSets<'a> {
    space: &'a FiniteSpace,
    hi: PointSet,
    level: Vec<PointSet>,
    pos: usize,
}

impl Iterator for ClosedSets<'_> {
    type Item = PointSet;

    fn next(&mut self) -> Option<PointSet> {
        if self.pos == self.level.len() {
            let mut next = std::collections::BTreeSet::new();
            for c in &self.level {
                for y in self.hi.difference(c).iter() {
                    let mut below = self.space.below[y.0].clone();
                    below.set(y.0, false);
                    if below.is_subset(c.bits()) {
                        let mut d = c.clone();
                        d.insert(y);
                        next.insert(d);
                    }
                }
            }
            self.level = next.into_iter().collect();
            self.pos = 0;
        }
        let out = self.level.get(self.pos).cloned();
        self.pos += 1;
        out
    }
}
