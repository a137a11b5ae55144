use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::snf::{smith_normal_form, IntMatrix};
use super::HomologyError;
use crate::field::{CoefficientRing, Field, Scalar};
use crate::finspace::{Chain, FiniteSpace, PointId, TopPair};

/// Sparse column, sorted by row index, no stored zeros.
pub(crate) type SparseCol = Vec<(usize, Scalar)>;

/// `a += c · b`
pub(crate) fn axpy(a: &SparseCol, c: &Scalar, b: &SparseCol, f: &Field) -> SparseCol {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = f.mul(c, &b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(c, &b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Free chain complex with finitely many non-zero degrees. Boundaries have
/// integer entries and are read in the coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ring: CoefficientRing,
    dims: Vec<usize>,
    // boundary[n][j]: column j of ∂_n, rows index C_{n-1}.
    boundary: Vec<Vec<Vec<(usize, i64)>>>,
    bases: Option<Vec<Vec<Chain>>>,
    index: Vec<HashMap<Vec<PointId>, usize>>,
}

impl ChainComplex {
    /// A complex from dense integer boundary matrices; `boundaries[k]` is
    /// `∂_{k+1}` with `dims[k]` rows and `dims[k+1]` columns.
    pub fn new(ring: CoefficientRing, dims: Vec<usize>, boundaries: &[Vec<Vec<i64>>]) -> Result<Self, HomologyError> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(HomologyError::ShapeMismatch);
        }
        let mut boundary = vec![vec![Vec::new(); dims.first().copied().unwrap_or(0)]];
        for (k, mat) in boundaries.iter().enumerate() {
            let (rows, cols) = (dims[k], dims[k + 1]);
            if mat.len() != rows || mat.iter().any(|r| r.len() != cols) {
                return Err(HomologyError::ShapeMismatch);
            }
            let columns = (0..cols)
                .map(|j| (0..rows).filter(|&i| mat[i][j] != 0).map(|i| (i, mat[i][j])).collect())
                .collect();
            boundary.push(columns);
        }
        let cc = ChainComplex {
            ring,
            dims,
            boundary,
            bases: None,
            index: Vec::new(),
        };
        cc.check_boundary_squared()?;
        Ok(cc)
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    /// Chain group ranks by degree.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// Highest degree with non-zero chains.
    pub fn top_degree(&self) -> Option<usize> {
        self.dims.iter().rposition(|&d| d > 0)
    }

    /// The chain basis in degree `n` for complexes built from a space.
    pub fn basis(&self, n: usize) -> Option<&[Chain]> {
        self.bases.as_ref().map(|b| b.get(n).map_or(&[][..], |v| v.as_slice()))
    }

    /// Position of a chain in its degree's basis.
    pub fn chain_index(&self, chain: &[PointId]) -> Option<usize> {
        let n = chain.len().checked_sub(1)?;
        self.index.get(n)?.get(chain).copied()
    }

    /// `∂_n` as a dense integer matrix.
    pub fn boundary_matrix(&self, n: usize) -> Vec<Vec<i64>> {
        let rows = if n == 0 { 0 } else { self.dim(n - 1) };
        let cols = self.dim(n);
        let mut m = vec![vec![0; cols]; rows];
        if let Some(columns) = self.boundary.get(n) {
            for (j, col) in columns.iter().enumerate() {
                for &(i, v) in col {
                    m[i][j] = v;
                }
            }
        }
        m
    }

    pub(crate) fn boundary_column(&self, n: usize, j: usize) -> &[(usize, i64)] {
        &self.boundary[n][j]
    }

    pub fn check_boundary_squared(&self) -> Result<(), HomologyError> {
        for n in 2..self.boundary.len() {
            for col in &self.boundary[n] {
                let mut acc: HashMap<usize, i128> = HashMap::new();
                for &(i, a) in col {
                    for &(k, b) in &self.boundary[n - 1][i] {
                        *acc.entry(k).or_default() += a as i128 * b as i128;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return Err(HomologyError::BoundaryNotSquareZero(n));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn int_boundary(&self, n: usize) -> IntMatrix {
        self.boundary_matrix(n)
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect()
    }
}

/// Chains of the order complex lying in `pair.p1` but not inside `pair.p2`.
/// Faces inside `pair.p2` vanish in the quotient and are dropped.
pub fn relative_chain_complex(space: &FiniteSpace, pair: &TopPair, ring: CoefficientRing) -> ChainComplex {
    let mut bases: Vec<Vec<Chain>> = Vec::new();
    for chain in space.order_complex(&pair.p1) {
        if chain.points().iter().all(|&x| pair.p2.contains(x)) {
            continue;
        }
        let n = chain.dim();
        if bases.len() <= n {
            bases.resize_with(n + 1, Vec::new);
        }
        bases[n].push(chain);
    }
    let index: Vec<HashMap<Vec<PointId>, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, c)| (c.0.clone(), i)).collect())
        .collect();
    let mut boundary = Vec::with_capacity(bases.len());
    for (n, basis) in bases.iter().enumerate() {
        let columns = basis
            .iter()
            .map(|chain| {
                if n == 0 {
                    return Vec::new();
                }
                let mut col: Vec<(usize, i64)> = (0..=n)
                    .filter_map(|i| {
                        let mut face = chain.0.clone();
                        face.remove(i);
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        index[n - 1].get(&face).map(|&r| (r, sign))
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        boundary.push(columns);
    }
    let cc = ChainComplex {
        ring,
        dims: bases.iter().map(Vec::len).collect(),
        boundary,
        bases: Some(bases),
        index,
    };
    debug_assert!(cc.check_boundary_squared().is_ok());
    cc
}

/// Homology in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    /// Dimension over a field, free rank over the integers.
    pub rank: usize,
    /// Torsion coefficients, always empty over a field.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Reduction data that turns cycles into homology coordinates.
#[derive(Debug, Clone)]
struct DegreeBasis {
    // Representative cycles, ascending by their lowest-pivot row.
    reps: Vec<SparseCol>,
    // low row -> (vector, Some(rep index) or None for a boundary)
    pivots: HashMap<usize, (SparseCol, Option<usize>)>,
}

/// Homology of a chain complex in all degrees.
#[derive(Debug, Clone)]
pub struct GradedHomology {
    ring: CoefficientRing,
    groups: Vec<HomologyGroup>,
    bases: Option<Vec<DegreeBasis>>,
}

impl PartialEq for GradedHomology {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.groups == other.groups
    }
}

impl GradedHomology {
    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn group(&self, n: usize) -> HomologyGroup {
        self.groups.get(n).cloned().unwrap_or(HomologyGroup {
            rank: 0,
            torsion: Vec::new(),
        })
    }

    pub fn rank(&self, n: usize) -> usize {
        self.groups.get(n).map_or(0, |g| g.rank)
    }

    /// Ranks in degrees `0..=top`, trailing zero groups removed.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.groups.iter().map(|g| g.rank).collect();
        while r.last() == Some(&0) {
            r.pop();
        }
        r
    }

    pub fn num_degrees(&self) -> usize {
        self.groups.len()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// Representative cycle of the `k`-th basis class in degree `n`,
    /// as sparse coefficients over the chain basis. Field coefficients only.
    pub fn representative(&self, n: usize, k: usize) -> Option<&[(usize, Scalar)]> {
        self.bases.as_ref()?.get(n)?.reps.get(k).map(|v| v.as_slice())
    }

    /// Coordinates of a cycle in the homology basis of degree `n`.
    pub fn coordinates(&self, n: usize, cycle: &[(usize, Scalar)]) -> Result<Vec<Scalar>, HomologyError> {
        let field = self.ring.field().ok_or(HomologyError::NotAField(self.ring))?;
        let rank = self.rank(n);
        let mut coords = vec![field.zero(); rank];
        let Some(basis) = self.bases.as_ref().and_then(|b| b.get(n)) else {
            return if cycle.is_empty() {
                Ok(coords)
            } else {
                Err(HomologyError::NotACycle(n))
            };
        };
        let mut z: SparseCol = cycle.iter().filter(|(_, v)| !v.is_zero()).cloned().collect();
        z.sort_by_key(|e| e.0);
        while let Some((low, lead)) = z.last().cloned() {
            let Some((vec, rep)) = basis.pivots.get(&low) else {
                return Err(HomologyError::NotACycle(n));
            };
            let c = field.div(&lead, &vec.last().expect("non-zero pivot").1);
            if let Some(k) = rep {
                coords[*k] = field.add(&coords[*k], &c);
            }
            z = axpy(&z, &field.neg(&c), vec, &field);
        }
        Ok(coords)
    }
}

pub fn homology(cc: &ChainComplex) -> GradedHomology {
    match cc.ring.field() {
        Some(f) => field_homology(cc, &f),
        None => integer_homology(cc),
    }
}

struct Reduced {
    // low -> reduced column (non-zero columns only)
    nonzero: Vec<SparseCol>,
    // cycles from zero columns, keyed by their column index
    cycles: Vec<(usize, SparseCol)>,
}

fn reduce_degree(cc: &ChainComplex, n: usize, f: &Field) -> Reduced {
    let mut pivot_of_low: HashMap<usize, usize> = HashMap::new();
    let mut r_cols: Vec<SparseCol> = Vec::new();
    let mut v_cols: Vec<SparseCol> = Vec::new();
    let mut out = Reduced {
        nonzero: Vec::new(),
        cycles: Vec::new(),
    };
    for j in 0..cc.dim(n) {
        let mut r: SparseCol = cc
            .boundary_column(n, j)
            .iter()
            .map(|&(i, v)| (i, f.from_int(v)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        let mut v: SparseCol = vec![(j, f.one())];
        while let Some((low, lead)) = r.last().cloned() {
            let Some(&k) = pivot_of_low.get(&low) else { break };
            let c = f.neg(&f.div(&lead, &r_cols[k].last().unwrap().1));
            r = axpy(&r, &c, &r_cols[k], f);
            v = axpy(&v, &c, &v_cols[k], f);
        }
        match r.last() {
            Some(&(low, _)) => {
                pivot_of_low.insert(low, r_cols.len());
                out.nonzero.push(r.clone());
            }
            None => out.cycles.push((j, v.clone())),
        }
        r_cols.push(r);
        v_cols.push(v);
    }
    out
}

fn field_homology(cc: &ChainComplex, f: &Field) -> GradedHomology {
    let top = cc.dims.len();
    let reduced: Vec<Reduced> = (0..top).map(|n| reduce_degree(cc, n, f)).collect();
    let mut groups = Vec::with_capacity(top);
    let mut bases = Vec::with_capacity(top);
    for n in 0..top {
        let mut pivots = HashMap::new();
        if let Some(next) = reduced.get(n + 1) {
            for col in &next.nonzero {
                pivots.insert(col.last().unwrap().0, (col.clone(), None));
            }
        }
        let mut reps = Vec::new();
        for (j, v) in &reduced[n].cycles {
            if pivots.contains_key(j) {
                continue;
            }
            pivots.insert(*j, (v.clone(), Some(reps.len())));
            reps.push(v.clone());
        }
        groups.push(HomologyGroup {
            rank: reps.len(),
            torsion: Vec::new(),
        });
        bases.push(DegreeBasis { reps, pivots });
    }
    GradedHomology {
        ring: cc.ring,
        groups,
        bases: Some(bases),
    }
}

fn integer_homology(cc: &ChainComplex) -> GradedHomology {
    let top = cc.dims.len();
    let diagonals: Vec<Vec<BigInt>> = (0..=top)
        .map(|n| {
            if n == 0 || n >= top || cc.dim(n) == 0 || cc.dim(n - 1) == 0 {
                Vec::new()
            } else {
                smith_normal_form(&cc.int_boundary(n)).diagonal()
            }
        })
        .collect();
    let groups = (0..top)
        .map(|n| {
            let rank = cc.dim(n) - diagonals[n].len() - diagonals[n + 1].len();
            let torsion = diagonals[n + 1].iter().filter(|d| **d > BigInt::from(1)).cloned().collect();
            HomologyGroup { rank, torsion }
        })
        .collect();
    GradedHomology {
        ring: cc.ring,
        groups,
        bases: None,
    }
}

/// Why a subspace fails to be acyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedHomologyWitness {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Checks that the reduced integer homology of `a` vanishes. The empty set
/// is not acyclic.
pub fn reduced_integer_homology(space: &FiniteSpace, a: &crate::finspace::PointSet) -> Result<(), ReducedHomologyWitness> {
    let cc = relative_chain_complex(space, &TopPair::absolute(a.clone()), CoefficientRing::Integers);
    let h = homology(&cc);
    let h0 = h.group(0);
    if h0.rank != 1 || !h0.torsion.is_empty() {
        return Err(ReducedHomologyWitness {
            degree: 0,
            rank: (h0.rank as isize - 1).unsigned_abs(),
            torsion: h0.torsion,
        });
    }
    for n in 1..h.num_degrees() {
        let g = h.group(n);
        if !g.is_zero() {
            return Err(ReducedHomologyWitness {
                degree: n,
                rank: g.rank,
                torsion: g.torsion,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::tests::triangle;

    fn ranks(space: &FiniteSpace, p1: &[&str], p2: &[&str], ring: CoefficientRing) -> Vec<usize> {
        let pair = TopPair::new(space.set_of(p1).unwrap(), space.set_of(p2).unwrap()).unwrap();
        homology(&relative_chain_complex(space, &pair, ring)).ranks()
    }

    #[test]
    fn triangle_homology() {
        let x = triangle();
        let all = ["A", "B", "C", "AB", "BC", "AC", "ABC"];
        let n2 = ["A", "B", "C", "AB", "BC", "AC"];
        for ring in [CoefficientRing::Integers, CoefficientRing::Rationals, CoefficientRing::PrimeField(3)] {
            assert_eq!(ranks(&x, &all, &[], ring), vec![1]);
            assert_eq!(ranks(&x, &n2, &[], ring), vec![1, 1]);
            assert_eq!(ranks(&x, &n2, &["A", "B", "C"], ring), vec![0, 3]);
            assert_eq!(ranks(&x, &all, &n2, ring), vec![0, 0, 1]);
            assert_eq!(ranks(&x, &["A", "B", "AB"], &[], ring), vec![1]);
            assert_eq!(ranks(&x, &n2, &n2, ring), Vec::<usize>::new());
        }
    }

    #[test]
    fn manual_torsion_complex() {
        // C1 --2--> C0: H0 = Z/2 over Z, zero over Q, H0 = H1 = Z/2 over Z/2.
        let z = ChainComplex::new(CoefficientRing::Integers, vec![1, 1], &[vec![vec![2]]]).unwrap();
        let h = homology(&z);
        assert_eq!(h.group(0).torsion, vec![BigInt::from(2)]);
        assert_eq!(h.rank(0), 0);
        let q = ChainComplex::new(CoefficientRing::Rationals, vec![1, 1], &[vec![vec![2]]]).unwrap();
        assert!(homology(&q).is_zero());
        let f2 = ChainComplex::new(CoefficientRing::PrimeField(2), vec![1, 1], &[vec![vec![2]]]).unwrap();
        assert_eq!(homology(&f2).ranks(), vec![1, 1]);
    }

    #[test]
    fn rejects_nonzero_square() {
        let err = ChainComplex::new(
            CoefficientRing::Integers,
            vec![1, 1, 1],
            &[vec![vec![1]], vec![vec![1]]],
        );
        assert_eq!(err, Err(HomologyError::BoundaryNotSquareZero(2)));
    }

    #[test]
    fn coordinates_of_boundaries_vanish() {
        let x = triangle();
        let cc = relative_chain_complex(&x, &TopPair::absolute(x.full_set()), CoefficientRing::Rationals);
        let h = homology(&cc);
        let f = Field::Rationals;
        // a vertex is a generator of H0, the difference of two is a boundary
        let a = cc.chain_index(&[x.point("A").unwrap()]).unwrap();
        let b = cc.chain_index(&[x.point("B").unwrap()]).unwrap();
        assert_eq!(h.coordinates(0, &[(a, f.one())]).unwrap(), vec![f.one()]);
        let diff = vec![(a, f.one()), (b, f.neg(&f.one()))];
        assert_eq!(h.coordinates(0, &diff).unwrap(), vec![f.zero()]);
        let edge = cc.chain_index(&[x.point("A").unwrap(), x.point("AB").unwrap()]).unwrap();
        assert_eq!(h.coordinates(1, &[(edge, f.one())]), Err(HomologyError::NotACycle(1)));
    }

    #[test]
    fn acyclic_subspaces() {
        let x = triangle();
        assert!(reduced_integer_homology(&x, &x.full_set()).is_ok());
        assert!(reduced_integer_homology(&x, &x.set_of(&["A", "B", "AB"]).unwrap()).is_ok());
        let w = reduced_integer_homology(&x, &x.set_of(&["B", "C"]).unwrap()).unwrap_err();
        assert_eq!((w.degree, w.rank), (0, 1));
        let w = reduced_integer_homology(&x, &x.set_of(&["A", "B", "C", "AB", "BC", "AC"]).unwrap()).unwrap_err();
        assert_eq!((w.degree, w.rank), (1, 1));
        assert!(reduced_integer_homology(&x, &x.empty_set()).is_err());
    }
}
