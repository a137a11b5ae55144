//! Index pairs and the constructions that produce new ones from old.

use thiserror::Error;

use crate::dynamics::{check_isolating, inv_minus, inv_part, inv_plus, DynamicsError};
use crate::finspace::{PointId, PointSet, TopPair};
use crate::mvmap::MultiMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexPairError {
    #[error("pair components must be closed")]
    NotClosed,
    #[error("pair is not contained in the isolating set")]
    NotInIsolatingSet,
    #[error("set is not isolated by the given isolating set")]
    NotIsolating,
    #[error("pairs are not nested index pairs for the same set")]
    NotNested,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("interpolation did not reach the smaller pair within {0} steps")]
    NonTermination(usize),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// Literal evaluation of (IP1), (IP2), (IP3) with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPairCert {
    /// `(i, y)` with `y ∈ F(P_i) ∩ N` outside `P_i`.
    pub ip1: Option<(usize, PointId)>,
    /// A point of `P1 ∩ cl(F(P1) \ N)` outside `P2`.
    pub ip2: Option<PointId>,
    /// A point of `Inv(P1 \ P2) △ S`.
    pub ip3: Option<PointId>,
    pub saturated: bool,
}

impl IndexPairCert {
    pub fn is_index_pair(&self) -> bool {
        self.ip1.is_none() && self.ip2.is_none() && self.ip3.is_none()
    }
}

fn require_closed_in(f: &MultiMap, n: &PointSet, p: &TopPair) -> Result<(), IndexPairError> {
    let space = f.space();
    if !space.is_closed(&p.p1) || !space.is_closed(&p.p2) {
        return Err(IndexPairError::NotClosed);
    }
    if !p.p1.is_subset(n) {
        return Err(IndexPairError::NotInIsolatingSet);
    }
    Ok(())
}

fn ip1_witness(f: &MultiMap, n: &PointSet, p: &TopPair) -> Option<(usize, PointId)> {
    [&p.p1, &p.p2].into_iter().enumerate().find_map(|(i, pi)| {
        f.image(pi)
            .intersection(n)
            .difference(pi)
            .first()
            .map(|y| (i + 1, y))
    })
}

/// `cl(F(P1) \ N)`
fn exit_closure(f: &MultiMap, n: &PointSet, p1: &PointSet) -> PointSet {
    f.space().cl(&f.image(p1).difference(n))
}

fn ip2_witness(f: &MultiMap, n: &PointSet, p: &TopPair) -> Option<PointId> {
    p.p1.intersection(&exit_closure(f, n, &p.p1)).difference(&p.p2).first()
}

/// (IP1) and (IP2) only, which is all the index map needs.
pub fn satisfies_ip12(f: &MultiMap, n: &PointSet, p: &TopPair) -> bool {
    ip1_witness(f, n, p).is_none() && ip2_witness(f, n, p).is_none()
}

pub fn check_index_pair(f: &MultiMap, n: &PointSet, s: &PointSet, p: &TopPair) -> Result<IndexPairCert, IndexPairError> {
    require_closed_in(f, n, p)?;
    if !f.space().is_closed(n) {
        return Err(IndexPairError::NotClosed);
    }
    let diff = p.difference();
    let inv = inv_part(f, &diff);
    Ok(IndexPairCert {
        ip1: ip1_witness(f, n, p),
        ip2: ip2_witness(f, n, p),
        ip3: inv.symmetric_difference(s).first(),
        saturated: diff == *s,
    })
}

fn certify(f: &MultiMap, n: &PointSet, s: &PointSet, p: &TopPair, what: &str) -> Result<(), IndexPairError> {
    if check_index_pair(f, n, s, p)?.is_index_pair() {
        Ok(())
    } else {
        Err(IndexPairError::CertificationFailed(what.to_string()))
    }
}

/// `(Inv⁻(N,S), Inv⁻(N,S) \ Inv⁺(N,S))`, a saturated index pair.
pub fn standard_pair(f: &MultiMap, n: &PointSet, s: &PointSet) -> Result<TopPair, IndexPairError> {
    if !check_isolating(f, n, s)?.is_isolating() {
        return Err(IndexPairError::NotIsolating);
    }
    let p1 = inv_minus(f, n, s);
    let p2 = p1.difference(&inv_plus(f, n, s));
    let p = TopPair::new(p1, p2).expect("difference lies inside");
    let cert = check_index_pair(f, n, s, &p)?;
    if !cert.is_index_pair() || !cert.saturated {
        return Err(IndexPairError::CertificationFailed("standard pair".into()));
    }
    Ok(p)
}

/// `P̄_i = P_i ∪ cl(F(P1) \ N)`
pub fn extended_pair(f: &MultiMap, n: &PointSet, p: &TopPair) -> Result<TopPair, IndexPairError> {
    require_closed_in(f, n, p)?;
    if !satisfies_ip12(f, n, p) {
        return Err(IndexPairError::PreconditionFailed("pair violates (IP1) or (IP2)".into()));
    }
    let extra = exit_closure(f, n, &p.p1);
    Ok(TopPair::new(p.p1.union(&extra), p.p2.union(&extra)).expect("nested"))
}

pub fn pair_intersection(f: &MultiMap, n: &PointSet, s: &PointSet, p: &TopPair, q: &TopPair) -> Result<TopPair, IndexPairError> {
    certify(f, n, s, p, "first pair")?;
    certify(f, n, s, q, "second pair")?;
    let r = p.intersection(q);
    certify(f, n, s, &r, "intersection")?;
    Ok(r)
}

fn require_nested(f: &MultiMap, n: &PointSet, s: &PointSet, p: &TopPair, q: &TopPair) -> Result<(), IndexPairError> {
    if !p.is_subpair_of(q) {
        return Err(IndexPairError::NotNested);
    }
    for pair in [p, q] {
        if !check_index_pair(f, n, s, pair)?.is_index_pair() {
            return Err(IndexPairError::NotNested);
        }
    }
    Ok(())
}

/// `(P1, P1 ∩ Q2)` and `(P1 ∪ Q2, Q2)` for nested index pairs `P ⊆ Q`.
pub fn nested_variants(f: &MultiMap, n: &PointSet, s: &PointSet, p: &TopPair, q: &TopPair) -> Result<(TopPair, TopPair), IndexPairError> {
    require_nested(f, n, s, p, q)?;
    let a = TopPair::new(p.p1.clone(), p.p1.intersection(&q.p2)).expect("nested");
    let b = TopPair::new(p.p1.union(&q.p2), q.p2.clone()).expect("nested");
    certify(f, n, s, &a, "(P1, P1 ∩ Q2)")?;
    certify(f, n, s, &b, "(P1 ∪ Q2, Q2)")?;
    Ok((a, b))
}

/// `G_i(P,Q) = P_i ∪ (F(Q_i) ∩ N)`
pub fn g_combinator(f: &MultiMap, n: &PointSet, p: &TopPair, q: &TopPair) -> Result<TopPair, IndexPairError> {
    if !p.is_subpair_of(q) {
        return Err(IndexPairError::NotNested);
    }
    let g1 = p.p1.union(&f.image(&q.p1).intersection(n));
    let g2 = p.p2.union(&f.image(&q.p2).intersection(n));
    Ok(TopPair::new(g1, g2).expect("nested"))
}

/// `Q = Q⁰ ⊇ Q¹ ⊇ … ⊇ Qⁿ = P` with `Q^{k+1} = G(P, Q^k)`.
pub fn interpolate(f: &MultiMap, n: &PointSet, p: &TopPair, q: &TopPair) -> Result<Vec<TopPair>, IndexPairError> {
    if !p.is_subpair_of(q) {
        return Err(IndexPairError::NotNested);
    }
    if p.p1 != q.p1 && p.p2 != q.p2 {
        return Err(IndexPairError::PreconditionFailed("pairs must share a component".into()));
    }
    let guard = 2 * f.space().len() + 1;
    let mut seq = vec![q.clone()];
    while seq.last() != Some(p) {
        if seq.len() > guard {
            return Err(IndexPairError::NonTermination(guard));
        }
        let next = g_combinator(f, n, p, seq.last().unwrap())?;
        if Some(&next) == seq.last() {
            return Err(IndexPairError::NonTermination(seq.len()));
        }
        seq.push(next);
    }
    Ok(seq)
}

/// Standard pairs and their extensions are monotone in the isolating set.
pub fn standard_pair_nesting(f: &MultiMap, m: &PointSet, n: &PointSet, s: &PointSet) -> Result<bool, IndexPairError> {
    if !m.is_subset(n) {
        return Err(IndexPairError::PreconditionFailed("isolating sets are not nested".into()));
    }
    let pm = standard_pair(f, m, s)?;
    let pn = standard_pair(f, n, s)?;
    let em = extended_pair(f, m, &pm)?;
    let en = extended_pair(f, n, &pn)?;
    Ok(pm.is_subpair_of(&pn) && em.is_subpair_of(&en))
}
