//! Fences of admissible maps and continuation of isolated invariant sets.

use std::fmt;

use thiserror::Error;

use crate::conley::{conley_index, index_iso, ConleyError, ConleyIndex};
use crate::dynamics::{check_isolating, minimal_isolating_candidate};
use crate::field::Field;
use crate::finspace::{PointSet, TopPair};
use crate::index_pairs::{check_index_pair, IndexPairCert, IndexPairError};
use crate::mvmap::MultiMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `F_i ≤ F_{i+1}`
    Leq,
    /// `F_i ≥ F_{i+1}`
    Geq,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Leq => Direction::Geq,
            Direction::Geq => Direction::Leq,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Leq => "<=",
            Direction::Geq => ">=",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContinuationError {
    #[error("fence breaks at position {index}: {reason}")]
    FenceBroken { index: usize, reason: String },
    #[error("maps are not comparable")]
    NotComparable,
    #[error("shared pair fails on side {side:?}")]
    CertificateFailure { side: Side, cert: Option<IndexPairCert> },
    #[error("chain has {steps} steps for a fence with {edges} edges")]
    Misaligned { steps: usize, edges: usize },
    #[error("step {0} does not start where the previous one ended")]
    Disconnected(usize),
    #[error("step {step} fails: {source}")]
    StepFailed { step: usize, source: Box<ContinuationError> },
    #[error("indices along the chain differ at step {0}")]
    IndexMismatch(usize),
    #[error("no shared index pair found ({})", if *.exhausted { "search exhausted" } else { "bound reached" })]
    NotFound { exhausted: bool },
    #[error(transparent)]
    Conley(#[from] ConleyError),
    #[error(transparent)]
    IndexPair(#[from] IndexPairError),
}

/// `F_0 ? F_1 ? … ? F_k` with alternating comparisons.
#[derive(Debug, Clone)]
pub struct Fence {
    pub maps: Vec<MultiMap>,
    /// `directions[i]` relates `maps[i]` and `maps[i + 1]`.
    pub directions: Vec<Direction>,
}

impl Fence {
    /// A fence whose directions alternate starting with `first`.
    pub fn alternating(maps: Vec<MultiMap>, first: Direction) -> Fence {
        let mut directions = Vec::new();
        let mut d = first;
        for _ in 1..maps.len() {
            directions.push(d);
            d = d.flip();
        }
        Fence { maps, directions }
    }

    pub fn edges(&self) -> usize {
        self.maps.len().saturating_sub(1)
    }
}

pub fn verify_fence(fence: &Fence) -> Result<(), ContinuationError> {
    let broken = |index: usize, reason: String| ContinuationError::FenceBroken { index, reason };
    if fence.directions.len() != fence.edges() {
        return Err(broken(0, "one direction per consecutive pair is required".into()));
    }
    for (i, f) in fence.maps.iter().enumerate() {
        if let Err(e) = f.require_admissible() {
            return Err(broken(i, e.to_string()));
        }
    }
    for (i, d) in fence.directions.iter().enumerate() {
        if i > 0 && fence.directions[i - 1] == *d {
            return Err(broken(i, "directions do not alternate".into()));
        }
        let (a, b) = (&fence.maps[i], &fence.maps[i + 1]);
        let ok = match d {
            Direction::Leq => a.map_leq(b),
            Direction::Geq => b.map_leq(a),
        }
        .map_err(|e| broken(i, e.to_string()))?;
        if !ok {
            return Err(broken(i, format!("maps {i} and {} are not related by {d}", i + 1)));
        }
    }
    Ok(())
}

/// Isolated invariant data on both sides of a fence edge with a shared pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuationStep {
    pub s_a: PointSet,
    pub n_a: PointSet,
    pub s_b: PointSet,
    pub n_b: PointSet,
    pub pair: TopPair,
}

fn comparable(fa: &MultiMap, fb: &MultiMap) -> Result<(), ContinuationError> {
    let le = fa.map_leq(fb).map_err(|_| ContinuationError::NotComparable)?;
    let ge = fb.map_leq(fa).map_err(|_| ContinuationError::NotComparable)?;
    if le || ge {
        Ok(())
    } else {
        Err(ContinuationError::NotComparable)
    }
}

pub fn check_elementary_continuation(step: &ContinuationStep, fa: &MultiMap, fb: &MultiMap) -> Result<(), ContinuationError> {
    comparable(fa, fb)?;
    for (side, f, n, s) in [(Side::A, fa, &step.n_a, &step.s_a), (Side::B, fb, &step.n_b, &step.s_b)] {
        let isolated = check_isolating(f, n, s).map(|c| c.is_isolating()).unwrap_or(false);
        if !isolated {
            return Err(ContinuationError::CertificateFailure { side, cert: None });
        }
        match check_index_pair(f, n, s, &step.pair) {
            Ok(cert) if cert.is_index_pair() => {}
            Ok(cert) => return Err(ContinuationError::CertificateFailure { side, cert: Some(cert) }),
            Err(_) => return Err(ContinuationError::CertificateFailure { side, cert: None }),
        }
    }
    Ok(())
}

/// Verifies every step along the fence and returns the common index.
pub fn check_continuation_chain(fence: &Fence, steps: &[ContinuationStep], field: Field) -> Result<ConleyIndex, ContinuationError> {
    verify_fence(fence)?;
    if steps.len() != fence.edges() {
        return Err(ContinuationError::Misaligned {
            steps: steps.len(),
            edges: fence.edges(),
        });
    }
    let mut common: Option<ConleyIndex> = None;
    for (i, step) in steps.iter().enumerate() {
        if i > 0 && steps[i - 1].s_b != step.s_a {
            return Err(ContinuationError::Disconnected(i));
        }
        let (fa, fb) = (&fence.maps[i], &fence.maps[i + 1]);
        check_elementary_continuation(step, fa, fb).map_err(|e| ContinuationError::StepFailed { step: i, source: Box::new(e) })?;
        let ia = conley_index(fa, &step.s_a, Some(&step.n_a), Some(&step.pair), field)?;
        let ib = conley_index(fb, &step.s_b, Some(&step.n_b), Some(&step.pair), field)?;
        for idx in [ia, ib] {
            match &common {
                None => common = Some(idx),
                Some(c) if index_iso(c, &idx)? => {}
                Some(_) => return Err(ContinuationError::IndexMismatch(i)),
            }
        }
    }
    match common {
        Some(c) => Ok(c),
        None => Err(ContinuationError::Misaligned { steps: 0, edges: 0 }),
    }
}

/// Searches closed pairs `P2 ⊆ P1` with `cl(S_a ∪ S_b) ⊆ P1` and `P2`
/// disjoint from both sets, smallest first. For each side the isolating set
/// is tried among `P1`, the whole space, and the smallest candidate joined
/// with `P1`. At most `bound` pairs are examined.
pub fn search_elementary_continuation(fa: &MultiMap, fb: &MultiMap, s_a: &PointSet, s_b: &PointSet, bound: usize) -> Result<ContinuationStep, ContinuationError> {
    comparable(fa, fb)?;
    let space = fa.space();
    let both = s_a.union(s_b);
    let base = space.cl(&both);
    let full = space.full_set();
    let empty = space.empty_set();
    let mut examined = 0;
    for p1 in space.closed_sets_between(&base, &full) {
        let avoid = p1.difference(&space.opn(&both));
        for p2 in space.closed_sets_between(&empty, &avoid) {
            if examined == bound {
                return Err(ContinuationError::NotFound { exhausted: false });
            }
            examined += 1;
            let pair = TopPair::new(p1.clone(), p2).expect("nested");
            let n_a = isolating_for(fa, s_a, &pair);
            let n_b = isolating_for(fb, s_b, &pair);
            if let (Some(n_a), Some(n_b)) = (n_a, n_b) {
                return Ok(ContinuationStep {
                    s_a: s_a.clone(),
                    n_a,
                    s_b: s_b.clone(),
                    n_b,
                    pair,
                });
            }
        }
    }
    Err(ContinuationError::NotFound { exhausted: true })
}

fn isolating_for(f: &MultiMap, s: &PointSet, pair: &TopPair) -> Option<PointSet> {
    let space = f.space();
    let mut candidates = vec![pair.p1.clone(), space.full_set()];
    if let Ok(m) = minimal_isolating_candidate(f, s) {
        candidates.push(m.union(&pair.p1));
    }
    candidates.into_iter().find(|n| {
        check_isolating(f, n, s).is_ok_and(|c| c.is_isolating()) && check_index_pair(f, n, s, pair).is_ok_and(|c| c.is_index_pair())
    })
}
