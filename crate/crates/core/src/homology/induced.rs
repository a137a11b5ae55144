use std::collections::BTreeMap;

use num_traits::Zero;

use super::complex::{homology, relative_chain_complex, ChainComplex, GradedHomology};
use super::HomologyError;
use crate::field::{Field, Matrix, Scalar};
use crate::finspace::{FiniteSpace, PointId, TopPair};
use crate::mvmap::PairMap;

/// Relative chain complex of a pair together with its homology over a field.
#[derive(Debug, Clone)]
pub struct RelativeHomology {
    pub complex: ChainComplex,
    pub homology: GradedHomology,
}

impl RelativeHomology {
    pub fn new(space: &FiniteSpace, pair: &TopPair, field: Field) -> Self {
        let complex = relative_chain_complex(space, pair, field.into());
        let homology = homology(&complex);
        RelativeHomology { complex, homology }
    }
}

/// One matrix per degree between homology bases over a common field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLinearMap {
    field: Field,
    blocks: Vec<Matrix>,
}

impl GradedLinearMap {
    pub fn new(field: Field, blocks: Vec<Matrix>) -> Self {
        GradedLinearMap { field, blocks }
    }

    pub fn identity(field: Field, dims: &[usize]) -> Self {
        GradedLinearMap {
            field,
            blocks: dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn num_degrees(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, n: usize) -> Option<&Matrix> {
        self.blocks.get(n)
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &GradedLinearMap) -> GradedLinearMap {
        let n = self.blocks.len().max(other.blocks.len());
        let blocks = (0..n)
            .map(|k| match (self.blocks.get(k), other.blocks.get(k)) {
                (Some(a), Some(b)) => a.mul(b, &self.field),
                (Some(a), None) => Matrix::zeros(a.rows(), 0),
                (None, Some(b)) => Matrix::zeros(0, b.cols()),
                (None, None) => unreachable!(),
            })
            .collect();
        GradedLinearMap { field: self.field, blocks }
    }

    pub fn inverse(&self) -> Option<GradedLinearMap> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.inverse(&self.field))
            .collect::<Option<Vec<_>>>()?;
        Some(GradedLinearMap { field: self.field, blocks })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(|b| b.inverse(&self.field).is_some())
    }
}

/// Matrix of the map induced by an order-preserving point map between two
/// relative homologies. Degenerate image chains and chains landing in the
/// target's second component go to zero.
fn chain_map_blocks(src: &RelativeHomology, dst: &RelativeHomology, f: impl Fn(PointId) -> PointId, field: &Field) -> Result<GradedLinearMap, HomologyError> {
    let degrees = graded_len(&src.homology, &dst.homology);
    let mut blocks = Vec::with_capacity(degrees);
    for n in 0..degrees {
        let (rows, cols) = (dst.homology.rank(n), src.homology.rank(n));
        let mut m = Matrix::zeros(rows, cols);
        for k in 0..cols {
            let rep = src.homology.representative(n, k).expect("field homology carries representatives");
            let basis = src.complex.basis(n).expect("complex built from a space");
            let mut image: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (idx, c) in rep {
                let chain: Vec<PointId> = basis[*idx].points().iter().map(|&x| f(x)).collect();
                if chain.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                if let Some(j) = dst.complex.chain_index(&chain) {
                    let e = image.entry(j).or_insert_with(|| field.zero());
                    *e = field.add(e, c);
                }
            }
            let image: Vec<(usize, Scalar)> = image.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            let coords = dst.homology.coordinates(n, &image)?;
            m.set_column(k, &coords);
        }
        blocks.push(m);
    }
    Ok(GradedLinearMap { field: *field, blocks })
}

/// Homology map of an order-preserving point map `f` sending `src` into `dst`.
pub fn induced_continuous(f: &[PointId], src_space: &FiniteSpace, src: &TopPair, dst_space: &FiniteSpace, dst: &TopPair, field: Field) -> Result<GradedLinearMap, HomologyError> {
    assert_eq!(f.len(), src_space.len(), "point map has the wrong length");
    for x in src_space.points() {
        for y in src_space.opn_point(x).iter() {
            if !dst_space.leq(f[x.0], f[y.0]) {
                return Err(HomologyError::NotOrderPreserving(src_space.label(x).into(), src_space.label(y).into()));
            }
        }
    }
    for x in src.p1.iter() {
        let target = if src.p2.contains(x) { &dst.p2 } else { &dst.p1 };
        if !target.contains(f[x.0]) {
            return Err(HomologyError::NotPairMap(src_space.label(x).into()));
        }
    }
    let a = RelativeHomology::new(src_space, src, field);
    let b = RelativeHomology::new(dst_space, dst, field);
    chain_map_blocks(&a, &b, |x| f[x.0], &field)
}

/// `F_* = (p2)_* (p1)_*^{-1}` computed through the graph over the domain pair.
pub fn induced_multivalued(pm: &PairMap, field: Field) -> Result<GradedLinearMap, HomologyError> {
    let map = pm.map();
    let (dom, cod) = (pm.dom(), pm.cod());
    let graph = map.graph_over(&dom.p1);
    let over_p2 = graph
        .space
        .points()
        .filter(|g| dom.p2.contains(graph.p1[g.0]))
        .collect::<Vec<_>>();
    let graph_pair = TopPair::new(graph.space.full_set(), crate::finspace::PointSet::from_ids(graph.space.len(), over_p2))
        .expect("subgraph over the smaller set is inside the graph");
    let g = RelativeHomology::new(&graph.space, &graph_pair, field);
    let x = RelativeHomology::new(map.domain(), dom, field);
    let y = RelativeHomology::new(map.codomain(), cod, field);
    let p1 = chain_map_blocks(&g, &x, |p| graph.p1[p.0], &field)?;
    let p2 = chain_map_blocks(&g, &y, |p| graph.p2[p.0], &field)?;
    let mut inv_blocks = Vec::new();
    for (n, b) in p1.blocks().iter().enumerate() {
        inv_blocks.push(b.inverse(&field).ok_or(HomologyError::ProjectionNotInvertible(n))?);
    }
    let p1_inv = GradedLinearMap::new(field, inv_blocks);
    Ok(trim_to(p2.compose(&p1_inv), &x.homology, &y.homology))
}

/// Degrees up to the last one where either side is non-zero.
fn graded_len(src: &GradedHomology, dst: &GradedHomology) -> usize {
    src.ranks().len().max(dst.ranks().len())
}

fn trim_to(mut m: GradedLinearMap, src: &GradedHomology, dst: &GradedHomology) -> GradedLinearMap {
    let n = graded_len(src, dst);
    m.blocks.resize_with(n, || Matrix::zeros(0, 0));
    for (k, b) in m.blocks.iter_mut().enumerate() {
        if b.rows() != dst.rank(k) || b.cols() != src.rank(k) {
            *b = Matrix::zeros(dst.rank(k), src.rank(k));
        }
    }
    m
}

/// Strong excision at chain level: for closed pairs `Y ⊆ Z` with equal
/// differences the two relative complexes coincide.
pub fn excision_check(space: &FiniteSpace, y: &TopPair, z: &TopPair) -> Result<bool, HomologyError> {
    for s in [&y.p1, &y.p2, &z.p1, &z.p2] {
        if !space.is_closed(s) {
            return Err(HomologyError::PreconditionFailed("pair components must be closed".into()));
        }
    }
    if !y.is_subpair_of(z) {
        return Err(HomologyError::PreconditionFailed("first pair is not inside the second".into()));
    }
    if y.difference() != z.difference() {
        return Err(HomologyError::PreconditionFailed("pairs have different differences".into()));
    }
    let ring = crate::field::CoefficientRing::Integers;
    let a = relative_chain_complex(space, y, ring);
    let b = relative_chain_complex(space, z, ring);
    Ok(a == b)
}
