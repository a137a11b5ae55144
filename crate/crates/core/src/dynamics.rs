//! Solutions, invariant sets, isolation and Morse decompositions.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use thiserror::Error;

use crate::finspace::{PointId, PointSet};
use crate::mvmap::MultiMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("isolating set is not closed")]
    NotClosed,
    #[error("set is not invariant")]
    NotInvariant,
    #[error("invariant set is not contained in the isolating set")]
    NotSubset,
    #[error("paths cannot be concatenated")]
    NotConcatenable,
    #[error("certification failed: {0}")]
    CertificationFailed(String),
}

/// A finite solution segment `σ(m), …, σ(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<PointId>);

impl Path {
    pub fn points(&self) -> &[PointId] {
        &self.0
    }

    /// Left endpoint.
    pub fn lep(&self) -> PointId {
        self.0[0]
    }

    /// Right endpoint.
    pub fn rep(&self) -> PointId {
        *self.0.last().expect("paths are non-empty")
    }

    pub fn is_path_of(&self, f: &MultiMap) -> bool {
        !self.0.is_empty() && self.0.windows(2).all(|w| f.value(w[0]).contains(w[1]))
    }

    pub fn within(&self, n: &PointSet) -> bool {
        self.0.iter().all(|&x| n.contains(x))
    }
}

pub fn concat(f: &MultiMap, sigma: &Path, tau: &Path) -> Result<Path, DynamicsError> {
    if !f.value(sigma.rep()).contains(tau.lep()) {
        return Err(DynamicsError::NotConcatenable);
    }
    let mut v = sigma.0.clone();
    v.extend_from_slice(&tau.0);
    Ok(Path(v))
}

/// `A ⊆ F(A)` and every point of `A` has a successor in `A`.
pub fn is_invariant(f: &MultiMap, a: &PointSet) -> bool {
    a.is_subset(&f.image(a)) && a.iter().all(|x| !f.value(x).is_disjoint(a))
}

fn predecessors(f: &MultiMap) -> Vec<Vec<PointId>> {
    let mut pred = vec![Vec::new(); f.space().len()];
    for (x, y) in f.digraph() {
        pred[y.0].push(x);
    }
    pred
}

/// Points reachable from `start ∩ within` by paths inside `within`, with
/// BFS parents for witness reconstruction.
fn search(f: &MultiMap, start: &PointSet, within: &PointSet, forward: bool, pred: Option<&[Vec<PointId>]>) -> (PointSet, Vec<Option<PointId>>) {
    let n = f.space().len();
    let mut seen = PointSet::empty(n);
    let mut parent = vec![None; n];
    let mut queue: VecDeque<PointId> = VecDeque::new();
    for x in start.intersection(within).iter() {
        seen.insert(x);
        queue.push_back(x);
    }
    while let Some(x) = queue.pop_front() {
        let next: Vec<PointId> = if forward {
            f.value(x).iter().collect()
        } else {
            pred.expect("predecessor table")[x.0].clone()
        };
        for y in next {
            if within.contains(y) && !seen.contains(y) {
                seen.insert(y);
                parent[y.0] = Some(x);
                queue.push_back(y);
            }
        }
    }
    (seen, parent)
}

/// Endpoints `y` of paths in `n` starting in `s`.
pub fn inv_minus(f: &MultiMap, n: &PointSet, s: &PointSet) -> PointSet {
    search(f, s, n, true, None).0
}

/// Starting points `y` of paths in `n` ending in `s`.
pub fn inv_plus(f: &MultiMap, n: &PointSet, s: &PointSet) -> PointSet {
    let pred = predecessors(f);
    search(f, s, n, false, Some(&pred)).0
}

/// Strongly connected components of the digraph restricted to `a`, each
/// with a flag telling whether it carries a cycle.
fn components(f: &MultiMap, a: &PointSet) -> Vec<(PointSet, bool)> {
    let n = f.space().len();
    let members = a.to_vec();
    let mut g: DiGraph<PointId, ()> = DiGraph::new();
    let nodes: Vec<_> = members.iter().map(|&x| g.add_node(x)).collect();
    let mut local = vec![usize::MAX; n];
    for (i, x) in members.iter().enumerate() {
        local[x.0] = i;
    }
    for (i, &x) in members.iter().enumerate() {
        for y in f.value(x).iter().filter(|&y| a.contains(y)) {
            g.add_edge(nodes[i], nodes[local[y.0]], ());
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|comp| {
            let set = PointSet::from_ids(n, comp.iter().map(|&v| g[v]));
            let cyclic = comp.len() > 1 || f.value(g[comp[0]]).contains(g[comp[0]]);
            (set, cyclic)
        })
        .collect()
}

/// Largest invariant subset of `a`: points lying between cycle-bearing
/// components of the restricted digraph.
pub fn inv_part(f: &MultiMap, a: &PointSet) -> PointSet {
    let mut cycles = PointSet::empty(f.space().len());
    for (c, cyclic) in components(f, a) {
        if cyclic {
            cycles.union_with(&c);
        }
    }
    let fwd = inv_minus(f, a, &cycles);
    let bwd = inv_plus(f, a, &cycles);
    fwd.intersection(&bwd)
}

/// Outcome of checking (IS1) and (IS2) for `S` in `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolationCert {
    /// A path in `N` with endpoints in `S` leaving `S`, when (IS1) fails.
    pub is1: Option<Path>,
    /// A point of `opn S ∩ F(S)` outside `N`, when (IS2) fails.
    pub is2: Option<PointId>,
}

impl IsolationCert {
    pub fn is_isolating(&self) -> bool {
        self.is1.is_none() && self.is2.is_none()
    }
}

fn walk_back(parent: &[Option<PointId>], mut y: PointId) -> Vec<PointId> {
    let mut out = vec![y];
    while let Some(p) = parent[y.0] {
        out.push(p);
        y = p;
    }
    out
}

pub fn check_isolating(f: &MultiMap, n: &PointSet, s: &PointSet) -> Result<IsolationCert, DynamicsError> {
    let space = f.space();
    if !space.is_closed(n) {
        return Err(DynamicsError::NotClosed);
    }
    if !s.is_subset(n) {
        return Err(DynamicsError::NotSubset);
    }
    if !is_invariant(f, s) {
        return Err(DynamicsError::NotInvariant);
    }
    let pred = predecessors(f);
    let (minus, fwd_parent) = search(f, s, n, true, None);
    let (plus, bwd_parent) = search(f, s, n, false, Some(&pred));
    let is1 = minus.intersection(&plus).difference(s).first().map(|y| {
        let mut pts = walk_back(&fwd_parent, y);
        pts.reverse();
        pts.extend(walk_back(&bwd_parent, y).into_iter().skip(1));
        Path(pts)
    });
    let is2 = space.opn(s).intersection(&f.image(s)).difference(n).first();
    Ok(IsolationCert { is1, is2 })
}

/// `cl(opn S ∩ F(S))`, the smallest candidate isolating set.
pub fn minimal_isolating_candidate(f: &MultiMap, s: &PointSet) -> Result<PointSet, DynamicsError> {
    if !is_invariant(f, s) {
        return Err(DynamicsError::NotInvariant);
    }
    let space = f.space();
    Ok(space.cl(&space.opn(s).intersection(&f.image(s))))
}

/// `M ∩ N` for two isolating sets of `S`, re-certified.
pub fn isolating_intersection(f: &MultiMap, m: &PointSet, n: &PointSet, s: &PointSet) -> Result<PointSet, DynamicsError> {
    for set in [m, n] {
        if !check_isolating(f, set, s)?.is_isolating() {
            return Err(DynamicsError::CertificationFailed("input does not isolate the set".into()));
        }
    }
    let both = m.intersection(n);
    if !check_isolating(f, &both, s)?.is_isolating() {
        return Err(DynamicsError::CertificationFailed("intersection does not isolate the set".into()));
    }
    Ok(both)
}

/// A path of positive length from `mq` to `mr`.
pub fn connection_exists(f: &MultiMap, mq: &PointSet, mr: &PointSet) -> bool {
    let all = f.space().full_set();
    let step = f.image(mq);
    !inv_minus(f, &all, &step).is_disjoint(mr)
}

/// Morse sets ordered by their smallest point, with `order[q][r]` true when
/// `M_q > M_r`, i.e. a connection runs from `M_q` to `M_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseDecomposition {
    pub sets: Vec<PointSet>,
    pub order: Vec<Vec<bool>>,
    /// Covering relations `(q, r)` of the order, sorted.
    pub hasse_edges: Vec<(usize, usize)>,
}

impl MorseDecomposition {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn greater(&self, q: usize, r: usize) -> bool {
        self.order[q][r]
    }
}

/// Finest Morse decomposition: the non-trivial strongly connected
/// components of the digraph.
pub fn morse_decomposition(f: &MultiMap) -> Result<MorseDecomposition, DynamicsError> {
    let all = f.space().full_set();
    let mut sets: Vec<PointSet> = components(f, &all)
        .into_iter()
        .filter_map(|(c, cyclic)| cyclic.then_some(c))
        .collect();
    sets.sort_by_key(|s| s.first());
    let k = sets.len();
    let mut order = vec![vec![false; k]; k];
    for q in 0..k {
        let reach = inv_minus(f, &all, &f.image(&sets[q]));
        for r in 0..k {
            order[q][r] = q != r && !reach.is_disjoint(&sets[r]);
        }
    }
    let mut hasse_edges = Vec::new();
    for q in 0..k {
        for r in 0..k {
            if order[q][r] && !(0..k).any(|m| order[q][m] && order[m][r]) {
                hasse_edges.push((q, r));
            }
        }
    }
    for s in &sets {
        if !check_isolating(f, &all, s)?.is_isolating() {
            return Err(DynamicsError::CertificationFailed(format!("Morse set {} is not isolated", f.space().fmt_set(s))));
        }
    }
    Ok(MorseDecomposition { sets, order, hasse_edges })
}
