//! Index maps and the homological Conley index.

use std::fmt;

use thiserror::Error;

use crate::dynamics::{check_isolating, inv_part, minimal_isolating_candidate, DynamicsError};
use crate::field::{Field, Matrix};
use crate::finspace::{PointSet, TopPair};
use crate::homology::{induced_continuous, induced_multivalued, GradedLinearMap, HomologyError};
use crate::index_pairs::{check_index_pair, extended_pair, standard_pair, IndexPairError};
use crate::mvmap::{MapError, MultiMap};
use crate::poly::{invariant_factors, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConleyError {
    #[error("set is not isolated by the isolating set")]
    NotIsolated,
    #[error("pair is not an index pair for the set")]
    NotAnIndexPair,
    #[error("inclusion into the extended pair is not invertible in degree {0}")]
    InclusionNotInvertible(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("indices are over different fields: {0} and {1}")]
    FieldMismatch(Field, Field),
    #[error("non-zero index but empty invariant part")]
    WazewskiViolated,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    IndexPair(#[from] IndexPairError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// A graded endomorphism of a graded vector space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedEndo {
    pub field: Field,
    pub maps: Vec<Matrix>,
}

impl GradedEndo {
    pub fn dims(&self) -> Vec<usize> {
        self.maps.iter().map(Matrix::rows).collect()
    }
}

/// Conley index data in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexDegree {
    pub dim: usize,
    pub automorphism: Matrix,
    /// Non-unit invariant factors of `tI - A`, each dividing the next.
    pub inv_factors: Vec<Poly>,
}

/// An automorphism of a graded vector space, reduced and described up to
/// conjugacy by invariant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConleyIndex {
    pub field: Field,
    /// Degrees `0..`, trailing zero degrees removed.
    pub degrees: Vec<IndexDegree>,
}

impl ConleyIndex {
    pub fn dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.dim)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn inv_factors(&self, n: usize) -> &[Poly] {
        self.degrees.get(n).map_or(&[], |d| d.inv_factors.as_slice())
    }
}

impl fmt::Display for ConleyIndex {
    /// One line per non-zero degree, `degree d: dim=k, inv_factors=[...]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "zero index");
        }
        for (n, d) in self.degrees.iter().enumerate() {
            if d.dim == 0 {
                continue;
            }
            let factors: Vec<String> = d.inv_factors.iter().map(Poly::to_string).collect();
            writeln!(f, "degree {n}: dim={}, inv_factors=[{}]", d.dim, factors.join(", "))?;
        }
        Ok(())
    }
}

/// `I_P = (ι_P)_*⁻¹ ∘ (F_P)_*` on `H_*(P)`.
pub fn index_map(f: &MultiMap, n: &PointSet, p: &TopPair, field: Field) -> Result<GradedEndo, ConleyError> {
    let ext = extended_pair(f, n, p)?;
    let fp = f.as_pair_map(p.clone(), ext.clone())?;
    let f_star = induced_multivalued(&fp, field)?;
    let maps = if ext == *p {
        f_star.blocks().to_vec()
    } else {
        let id: Vec<_> = f.space().points().collect();
        let iota = induced_continuous(&id, f.space(), p, f.space(), &ext, field)?;
        let inv = invert(&iota)?;
        inv.compose(&f_star).blocks().to_vec()
    };
    Ok(GradedEndo { field, maps })
}

fn invert(m: &GradedLinearMap) -> Result<GradedLinearMap, ConleyError> {
    let mut blocks = Vec::new();
    for (n, b) in m.blocks().iter().enumerate() {
        blocks.push(b.inverse(&m.field()).ok_or(ConleyError::InclusionNotInvertible(n))?);
    }
    Ok(GradedLinearMap::new(m.field(), blocks))
}

/// Restriction of each map to the image of its `d`-th power, where `d` is
/// the dimension; this is an automorphism on the generalized image.
pub fn leray(e: &GradedEndo) -> ConleyIndex {
    let f = e.field;
    let mut degrees: Vec<IndexDegree> = e
        .maps
        .iter()
        .map(|m| {
            let d = m.rows();
            let basis = m.pow(d, &f).column_space_basis(&f);
            let moved = m.mul(&basis, &f);
            let automorphism = basis
                .solve_full_column_rank(&moved, &f)
                .expect("generalized image is invariant");
            let inv_factors = invariant_factors(&automorphism, &f);
            IndexDegree {
                dim: automorphism.rows(),
                automorphism,
                inv_factors,
            }
        })
        .collect();
    while degrees.last().is_some_and(|d| d.dim == 0) {
        degrees.pop();
    }
    ConleyIndex { field: f, degrees }
}

/// Conley index of `S`. Without `n` the smallest candidate isolating set is
/// used; without `p` the standard index pair.
pub fn conley_index(f: &MultiMap, s: &PointSet, n: Option<&PointSet>, p: Option<&TopPair>, field: Field) -> Result<ConleyIndex, ConleyError> {
    let n = match n {
        Some(n) => n.clone(),
        None => minimal_isolating_candidate(f, s)?,
    };
    if !check_isolating(f, &n, s)?.is_isolating() {
        return Err(ConleyError::NotIsolated);
    }
    let p = match p {
        Some(p) => {
            if !check_index_pair(f, &n, s, p)?.is_index_pair() {
                return Err(ConleyError::NotAnIndexPair);
            }
            p.clone()
        }
        None => standard_pair(f, &n, s)?,
    };
    Ok(leray(&index_map(f, &n, &p, field)?))
}

/// Same dimensions and invariant factors in every degree.
pub fn index_iso(a: &ConleyIndex, b: &ConleyIndex) -> Result<bool, ConleyError> {
    if a.field != b.field {
        return Err(ConleyError::FieldMismatch(a.field, b.field));
    }
    Ok(a.degrees.len() == b.degrees.len()
        && a.degrees
            .iter()
            .zip(&b.degrees)
            .all(|(x, y)| x.dim == y.dim && x.inv_factors == y.inv_factors))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WazewskiReport {
    pub index: ConleyIndex,
    pub invariant_part: PointSet,
}

impl WazewskiReport {
    pub fn inv_nonempty(&self) -> bool {
        !self.invariant_part.is_empty()
    }
}

/// For a closed pair with `P1 ∩ (cl(F(P1) \ P1) ∪ F(P2)) ⊆ P2`, computes the
/// index with `N = P1` and the invariant part of `P1 \ P2`.
pub fn wazewski_check(f: &MultiMap, p: &TopPair, field: Field) -> Result<WazewskiReport, ConleyError> {
    let space = f.space();
    if !space.is_closed(&p.p1) || !space.is_closed(&p.p2) {
        return Err(ConleyError::PreconditionFailed("pair components must be closed".into()));
    }
    let exits = space.cl(&f.image(&p.p1).difference(&p.p1)).union(&f.image(&p.p2));
    if !p.p1.intersection(&exits).is_subset(&p.p2) {
        return Err(ConleyError::PreconditionFailed("exit condition fails".into()));
    }
    let index = leray(&index_map(f, &p.p1, p, field)?);
    let invariant_part = inv_part(f, &p.difference());
    if !index.is_zero() && invariant_part.is_empty() {
        return Err(ConleyError::WazewskiViolated);
    }
    Ok(WazewskiReport { index, invariant_part })
}
