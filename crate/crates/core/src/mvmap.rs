//! Multivalued maps between finite spaces and their admissibility.

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::finspace::{FiniteSpace, PointId, PointSet, SpaceError, TopPair};
use crate::homology::{reduced_integer_homology, ReducedHomologyWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("value of `{0}` is empty")]
    EmptyValue(String),
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("value of `{0}` is not a subset of the codomain")]
    ValueOutOfSpace(String),
    #[error("maps are defined on different spaces")]
    SpaceMismatch,
    #[error("map is not admissible: {0}")]
    NotAdmissible(String),
    #[error("map does not send the pair into the target pair at `{0}`")]
    NotAPairMap(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Outcome of the three admissibility checks, with the first witness of
/// each failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    /// A point whose value is not closed.
    pub closed_values: Option<PointId>,
    /// A pair `x' <= x` with `F(x')` not inside `F(x)`.
    pub lsc: Option<(PointId, PointId)>,
    /// A point whose value has non-vanishing reduced homology.
    pub acyclic_values: Option<(PointId, ReducedHomologyWitness)>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.closed_values.is_none() && self.lsc.is_none() && self.acyclic_values.is_none()
    }
}

/// `F: X ⊸ Y`, stored as one non-empty value per point of `X`.
#[derive(Debug, Clone)]
pub struct MultiMap {
    domain: Arc<FiniteSpace>,
    codomain: Arc<FiniteSpace>,
    values: Vec<PointSet>,
    report: OnceLock<AdmissibilityReport>,
}

impl PartialEq for MultiMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.values == other.values
    }
}

impl Eq for MultiMap {}

impl MultiMap {
    pub fn new(domain: Arc<FiniteSpace>, codomain: Arc<FiniteSpace>, values: Vec<PointSet>) -> Result<Self, MapError> {
        if values.len() != domain.len() {
            return Err(MapError::WrongLength {
                expected: domain.len(),
                got: values.len(),
            });
        }
        for (i, v) in values.iter().enumerate() {
            let label = || domain.label(PointId(i)).to_string();
            if v.universe() != codomain.len() {
                return Err(MapError::ValueOutOfSpace(label()));
            }
            if v.is_empty() {
                return Err(MapError::EmptyValue(label()));
            }
        }
        Ok(MultiMap {
            domain,
            codomain,
            values,
            report: OnceLock::new(),
        })
    }

    /// A self-map of `space`.
    pub fn self_map(space: Arc<FiniteSpace>, values: Vec<PointSet>) -> Result<Self, MapError> {
        Self::new(space.clone(), space, values)
    }

    /// A self-map given by label rows `x -> [y, ...]`; every point needs a row.
    pub fn from_labels<S: AsRef<str>>(space: Arc<FiniteSpace>, rows: &[(S, Vec<S>)]) -> Result<Self, MapError> {
        let mut values: Vec<Option<PointSet>> = vec![None; space.len()];
        for (x, ys) in rows {
            let x = space
                .point(x.as_ref())
                .ok_or_else(|| SpaceError::UnknownLabel(x.as_ref().to_string()))?;
            values[x.0] = Some(space.set_of(ys)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| MapError::EmptyValue(space.label(PointId(i)).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::self_map(space, values)
    }

    pub fn domain(&self) -> &Arc<FiniteSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteSpace> {
        &self.codomain
    }

    /// The common space of a self-map.
    pub fn space(&self) -> &FiniteSpace {
        &self.domain
    }

    pub fn is_self_map(&self) -> bool {
        Arc::ptr_eq(&self.domain, &self.codomain) || self.domain == self.codomain
    }

    pub fn value(&self, x: PointId) -> &PointSet {
        &self.values[x.0]
    }

    pub fn values(&self) -> &[PointSet] {
        &self.values
    }

    /// `F(A)`, the union of the values over `A`.
    pub fn image(&self, a: &PointSet) -> PointSet {
        let mut out = self.codomain.empty_set();
        for x in a.iter() {
            out.union_with(&self.values[x.0]);
        }
        out
    }

    pub fn check_closed_values(&self) -> Result<(), PointId> {
        match self.domain.points().find(|&x| !self.codomain.is_closed(&self.values[x.0])) {
            Some(x) => Err(x),
            None => Ok(()),
        }
    }

    /// `x' <= x` implies `F(x') ⊆ F(x)`; the witness is `(x', x)`.
    pub fn check_lsc(&self) -> Result<(), (PointId, PointId)> {
        for x in self.domain.points() {
            for lower in self.domain.cl_point(x).iter() {
                if !self.values[lower.0].is_subset(&self.values[x.0]) {
                    return Err((lower, x));
                }
            }
        }
        Ok(())
    }

    pub fn check_acyclic_values(&self) -> Result<(), (PointId, ReducedHomologyWitness)> {
        let mut seen: Vec<&PointSet> = Vec::new();
        for x in self.domain.points() {
            let v = &self.values[x.0];
            if seen.contains(&v) {
                continue;
            }
            reduced_integer_homology(&self.codomain, v).map_err(|w| (x, w))?;
            seen.push(v);
        }
        Ok(())
    }

    pub fn admissibility(&self) -> &AdmissibilityReport {
        self.report.get_or_init(|| AdmissibilityReport {
            closed_values: self.check_closed_values().err(),
            lsc: self.check_lsc().err(),
            acyclic_values: self.check_acyclic_values().err(),
        })
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility().is_admissible()
    }

    pub fn require_admissible(&self) -> Result<(), MapError> {
        let r = self.admissibility();
        if let Some(x) = r.closed_values {
            return Err(MapError::NotAdmissible(format!("value of `{}` is not closed", self.domain.label(x))));
        }
        if let Some((a, b)) = r.lsc {
            return Err(MapError::NotAdmissible(format!(
                "not lower semicontinuous at `{}` <= `{}`",
                self.domain.label(a),
                self.domain.label(b)
            )));
        }
        if let Some((x, w)) = &r.acyclic_values {
            return Err(MapError::NotAdmissible(format!(
                "value of `{}` has reduced homology in degree {}",
                self.domain.label(*x),
                w.degree
            )));
        }
        Ok(())
    }

    /// Edges `(x, y)` with `y ∈ F(x)`, sorted.
    pub fn digraph(&self) -> Vec<(PointId, PointId)> {
        self.domain
            .points()
            .flat_map(|x| self.values[x.0].iter().map(move |y| (x, y)))
            .collect()
    }

    /// Pointwise containment `F(x) ⊆ G(x)`.
    pub fn map_leq(&self, other: &MultiMap) -> Result<bool, MapError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(MapError::SpaceMismatch);
        }
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a.is_subset(b)))
    }

    /// The graph of `F` as a subspace of `X × Y` with both projections.
    pub fn graph_space(&self) -> Result<GraphSpace, MapError> {
        if self.check_closed_values().is_err() || self.check_lsc().is_err() {
            return Err(MapError::NotAdmissible("graph needs closed values and lower semicontinuity".into()));
        }
        Ok(self.graph_over(&self.domain.full_set()))
    }

    /// The part of the graph lying over `a`.
    pub(crate) fn graph_over(&self, a: &PointSet) -> GraphSpace {
        let mut p1 = Vec::new();
        let mut p2 = Vec::new();
        for x in a.iter() {
            for y in self.values[x.0].iter() {
                p1.push(x);
                p2.push(y);
            }
        }
        let labels = p1
            .iter()
            .zip(&p2)
            .map(|(&x, &y)| format!("({},{})", self.domain.label(x), self.codomain.label(y)))
            .collect();
        let space = FiniteSpace::from_order(labels, |i, j| self.domain.leq(p1[i], p1[j]) && self.codomain.leq(p2[i], p2[j]));
        GraphSpace { space, p1, p2 }
    }

    pub fn as_pair_map(&self, dom: TopPair, cod: TopPair) -> Result<PairMap, MapError> {
        for x in dom.p1.iter() {
            let inside = if dom.p2.contains(x) { &cod.p2 } else { &cod.p1 };
            if !self.values[x.0].is_subset(inside) {
                return Err(MapError::NotAPairMap(self.domain.label(x).to_string()));
            }
        }
        Ok(PairMap {
            map: self.clone(),
            dom,
            cod,
        })
    }
}

/// Graph of a multivalued map with its coordinate projections.
#[derive(Debug, Clone)]
pub struct GraphSpace {
    pub space: FiniteSpace,
    pub p1: Vec<PointId>,
    pub p2: Vec<PointId>,
}

/// A multivalued map viewed as a map of pairs `(X1, X2) ⊸ (Y1, Y2)`.
#[derive(Debug, Clone)]
pub struct PairMap {
    map: MultiMap,
    dom: TopPair,
    cod: TopPair,
}

impl PairMap {
    pub fn map(&self) -> &MultiMap {
        &self.map
    }

    pub fn dom(&self) -> &TopPair {
        &self.dom
    }

    pub fn cod(&self) -> &TopPair {
        &self.cod
    }
}
