//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's algorithms: closed sets come
//! from subset enumeration, invariant parts from the union of all invariant
//! subsets, reachability from boolean matrix closure, homology ranks from a
//! freshly built order complex, and invariant factors from determinantal
//! divisors.

#![allow(dead_code)]

use std::sync::Arc;

use conley::field::Field;
use conley::poly::Poly;
use conley::{FiniteSpace, Matrix, MultiMap, PointId, PointSet, Scalar, TopPair};
use num_traits::{One, Zero};

pub const TRIANGLE: [&str; 7] = ["A", "B", "C", "AB", "BC", "AC", "ABC"];

pub fn triangle() -> Arc<FiniteSpace> {
    let covers = [
        ("A", "AB"),
        ("B", "AB"),
        ("B", "BC"),
        ("C", "BC"),
        ("A", "AC"),
        ("C", "AC"),
        ("AB", "ABC"),
        ("BC", "ABC"),
        ("AC", "ABC"),
    ];
    Arc::new(FiniteSpace::build(&TRIANGLE, &covers).unwrap())
}

const EVERYTHING: [&str; 7] = TRIANGLE;

pub fn rotation(x: &Arc<FiniteSpace>) -> MultiMap {
    MultiMap::from_labels(
        x.clone(),
        &[
            ("A", vec!["B"]),
            ("B", vec!["C"]),
            ("C", vec!["A"]),
            ("AB", vec!["B", "C", "BC"]),
            ("BC", vec!["A", "C", "AC"]),
            ("AC", vec!["A", "B", "AB"]),
            ("ABC", EVERYTHING.to_vec()),
        ],
    )
    .unwrap()
}

pub fn reflection(x: &Arc<FiniteSpace>) -> MultiMap {
    MultiMap::from_labels(
        x.clone(),
        &[
            ("A", vec!["A"]),
            ("B", vec!["C"]),
            ("C", vec!["B"]),
            ("AB", vec!["A", "C", "AC"]),
            ("BC", vec!["B", "C", "BC"]),
            ("AC", vec!["A", "B", "AB"]),
            ("ABC", EVERYTHING.to_vec()),
        ],
    )
    .unwrap()
}

pub fn set(x: &FiniteSpace, labels: &[&str]) -> PointSet {
    x.set_of(labels).unwrap()
}

pub fn pair(x: &FiniteSpace, a: &[&str], b: &[&str]) -> TopPair {
    TopPair::new(set(x, a), set(x, b)).unwrap()
}

/// Named sets of the rotation example: S1..S3 and N1..N3.
pub struct Rotation {
    pub s: [PointSet; 3],
    pub n: [PointSet; 3],
}

pub fn rotation_sets(x: &FiniteSpace) -> Rotation {
    Rotation {
        s: [set(x, &["A", "B", "C"]), set(x, &["AB", "BC", "AC"]), set(x, &["ABC"])],
        n: [set(x, &["A", "B", "C"]), set(x, &["A", "B", "C", "AB", "BC", "AC"]), x.full_set()],
    }
}

/// Named sets of the reflection example: R1..R5 and M1..M5.
pub struct Reflection {
    pub r: [PointSet; 5],
    pub m: [PointSet; 5],
}

pub fn reflection_sets(x: &FiniteSpace) -> Reflection {
    Reflection {
        r: [
            set(x, &["A"]),
            set(x, &["B", "C"]),
            set(x, &["BC"]),
            set(x, &["AB", "AC"]),
            set(x, &["ABC"]),
        ],
        m: [
            set(x, &["A"]),
            set(x, &["B", "C"]),
            set(x, &["B", "C", "BC"]),
            set(x, &["A", "B", "C", "AB", "AC"]),
            x.full_set(),
        ],
    }
}

/// Ten points `0..9`; odd `i` is the edge between `i-1` and `i+1`.
pub fn pentagon() -> Arc<FiniteSpace> {
    let labels: Vec<String> = (0..10).map(|i| i.to_string()).collect();
    let mut covers = Vec::new();
    for i in (1..10).step_by(2) {
        covers.push(((i - 1).to_string(), i.to_string()));
        covers.push((((i + 1) % 10).to_string(), i.to_string()));
    }
    Arc::new(FiniteSpace::build(&labels, &covers).unwrap())
}

pub const PENTAGON_F: [&[usize]; 10] = [&[0], &[0], &[0], &[0, 1, 2], &[2], &[2, 3, 4, 5, 6, 7, 8], &[8], &[0, 8, 9], &[0], &[0]];
pub const PENTAGON_G: [&[usize]; 10] = [
    &[0, 1, 2],
    &[0, 1, 2],
    &[0, 1, 2],
    &[0, 1, 2],
    &[2],
    &[2, 3, 4, 5, 6, 7, 8],
    &[4, 5, 6, 7, 8],
    &[0, 4, 5, 6, 7, 8, 9],
    &[0],
    &[0, 1, 2],
];

fn shifted(x: &Arc<FiniteSpace>, table: &[&[usize]; 10], shift: usize) -> MultiMap {
    let values = (0..10)
        .map(|a| {
            let src = (a + 10 - shift) % 10;
            PointSet::from_ids(10, table[src].iter().map(|&y| PointId((y + shift) % 10)))
        })
        .collect();
    MultiMap::self_map(x.clone(), values).unwrap()
}

pub fn pentagon_f(x: &Arc<FiniteSpace>) -> MultiMap {
    shifted(x, &PENTAGON_F, 0)
}

pub fn pentagon_g(x: &Arc<FiniteSpace>) -> MultiMap {
    shifted(x, &PENTAGON_G, 0)
}

/// `F_i(a) = F(a-i)+i` for even `i`, `G(a-i+1)+i-1` for odd `i`.
pub fn fence_map(x: &Arc<FiniteSpace>, i: usize) -> MultiMap {
    if i % 2 == 0 {
        shifted(x, &PENTAGON_F, i)
    } else {
        shifted(x, &PENTAGON_G, i - 1)
    }
}

pub fn ids(x: &FiniteSpace, v: &[usize]) -> PointSet {
    PointSet::from_ids(x.len(), v.iter().map(|&i| PointId(i)))
}

// ---------------------------------------------------------------- oracles

pub fn subsets(within: &PointSet) -> impl Iterator<Item = PointSet> + '_ {
    let members = within.to_vec();
    let n = within.universe();
    (0u64..1 << members.len()).map(move |mask| {
        PointSet::from_ids(n, members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p))
    })
}

pub fn is_down_set(x: &FiniteSpace, a: &PointSet) -> bool {
    a.iter().all(|p| x.points().all(|q| !x.leq(q, p) || a.contains(q)))
}

pub fn closure(x: &FiniteSpace, a: &PointSet) -> PointSet {
    PointSet::from_ids(x.len(), x.points().filter(|&q| a.iter().any(|p| x.leq(q, p))))
}

pub fn closed_subsets(x: &FiniteSpace, within: &PointSet) -> Vec<PointSet> {
    subsets(within).filter(|a| is_down_set(x, a)).collect()
}

pub fn image(f: &MultiMap, a: &PointSet) -> PointSet {
    let mut out = PointSet::empty(f.space().len());
    for p in a.iter() {
        out.union_with(f.value(p));
    }
    out
}

/// Every point has a successor and a predecessor inside `b`.
pub fn invariant_by_definition(f: &MultiMap, b: &PointSet) -> bool {
    b.iter().all(|x| !f.value(x).is_disjoint(b) && b.iter().any(|y| f.value(y).contains(x)))
}

/// Union of all invariant subsets of `a`.
pub fn oracle_inv(f: &MultiMap, a: &PointSet) -> PointSet {
    let mut out = PointSet::empty(a.universe());
    for b in subsets(a) {
        if invariant_by_definition(f, &b) {
            out.union_with(&b);
        }
    }
    out
}

/// `reach[x][y]`: a walk of positive length inside `n` goes from `x` to `y`.
pub fn oracle_reach(f: &MultiMap, n: &PointSet) -> Vec<Vec<bool>> {
    let k = f.space().len();
    let mut r = vec![vec![false; k]; k];
    for x in n.iter() {
        for y in f.value(x).iter().filter(|&y| n.contains(y)) {
            r[x.0][y.0] = true;
        }
    }
    for m in 0..k {
        for a in 0..k {
            if r[a][m] {
                for b in 0..k {
                    if r[m][b] {
                        r[a][b] = true;
                    }
                }
            }
        }
    }
    r
}

/// A path in `n` of length at most `2|n|` that starts and ends in `s`
/// and leaves `s`, found by breadth-first search over (point, has left).
pub fn oracle_is1_violation(f: &MultiMap, n: &PointSet, s: &PointSet) -> Option<Vec<PointId>> {
    let k = f.space().len();
    let limit = 2 * n.len();
    let mut parent: Vec<[Option<(usize, bool)>; 2]> = vec![[None; 2]; k];
    let mut seen = vec![[false; 2]; k];
    let mut frontier: Vec<(usize, bool)> = s.iter().map(|p| (p.0, false)).collect();
    for &(p, _) in &frontier {
        seen[p][0] = true;
    }
    for _ in 0..limit {
        let mut next = Vec::new();
        for &(p, left) in &frontier {
            for q in f.value(PointId(p)).iter().filter(|&q| n.contains(q)) {
                let l = left || !s.contains(q);
                if !seen[q.0][l as usize] {
                    seen[q.0][l as usize] = true;
                    parent[q.0][l as usize] = Some((p, left));
                    next.push((q.0, l));
                }
            }
        }
        frontier = next;
    }
    let end = s.iter().find(|p| seen[p.0][1])?;
    let mut path = vec![end];
    let mut state = (end.0, true);
    while let Some(prev) = parent[state.0][state.1 as usize] {
        path.push(PointId(prev.0));
        state = prev;
    }
    path.reverse();
    Some(path)
}

pub fn oracle_locally_closed(x: &FiniteSpace, s: &PointSet) -> bool {
    let closed = closed_subsets(x, &x.full_set());
    closed.iter().any(|a| closed.iter().any(|b| a.difference(b) == *s))
}

pub fn oracle_is_index_pair(f: &MultiMap, n: &PointSet, s: &PointSet, p: &TopPair) -> bool {
    let x = f.space();
    let ip1 = [&p.p1, &p.p2].iter().all(|pi| image(f, pi).intersection(n).is_subset(pi));
    let exit = closure(x, &image(f, &p.p1).difference(n));
    let ip2 = p.p1.intersection(&exit).is_subset(&p.p2);
    ip1 && ip2 && oracle_inv(f, &p.p1.difference(&p.p2)) == *s
}

/// All index pairs for `s` in `n`.
pub fn oracle_index_pairs(f: &MultiMap, n: &PointSet, s: &PointSet) -> Vec<TopPair> {
    let x = f.space();
    let closed = closed_subsets(x, n);
    let mut out = Vec::new();
    for p1 in &closed {
        for p2 in closed.iter().filter(|p2| p2.is_subset(p1)) {
            let p = TopPair::new(p1.clone(), p2.clone()).unwrap();
            if oracle_is_index_pair(f, n, s, &p) {
                out.push(p);
            }
        }
    }
    out
}

/// Nontrivial strongly connected components, ordered by smallest point, and
/// the transitive reduction of the reachability order between them.
pub fn oracle_morse(f: &MultiMap) -> (Vec<PointSet>, Vec<(usize, usize)>) {
    let x = f.space();
    let k = x.len();
    let r = oracle_reach(f, &x.full_set());
    let mut sets: Vec<PointSet> = Vec::new();
    for p in 0..k {
        if !r[p][p] || sets.iter().any(|c| c.contains(PointId(p))) {
            continue;
        }
        sets.push(PointSet::from_ids(k, (0..k).filter(|&q| r[p][q] && r[q][p]).map(PointId)));
    }
    let m = sets.len();
    let rep = |i: usize| sets[i].first().unwrap().0;
    let gt = |a: usize, b: usize| a != b && r[rep(a)][rep(b)];
    let mut edges = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if gt(a, b) && !(0..m).any(|c| gt(a, c) && gt(c, b)) {
                edges.push((a, b));
            }
        }
    }
    (sets, edges)
}

// -------------------------------------------------- homology and algebra

fn rank_q(mut rows: Vec<Vec<Scalar>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let factor = &rows[r][c] / &rows[rank][c];
                for j in 0..cols {
                    let d = &factor * &rows[rank][j];
                    rows[r][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn chains(x: &FiniteSpace, within: &PointSet) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = within.iter().map(|p| vec![p.0]).collect();
    let mut i = 0;
    while i < out.len() {
        let c = out[i].clone();
        let top = *c.last().unwrap();
        for q in within.iter() {
            if x.lt(PointId(top), q) {
                let mut d = c.clone();
                d.push(q.0);
                out.push(d);
            }
        }
        i += 1;
    }
    out
}

/// Rational Betti numbers of the pair, with trailing zeros removed.
pub fn oracle_betti(x: &FiniteSpace, p: &TopPair) -> Vec<usize> {
    let inside_p2 = |c: &[usize]| c.iter().all(|&i| p.p2.contains(PointId(i)));
    let basis: Vec<Vec<usize>> = chains(x, &p.p1).into_iter().filter(|c| !inside_p2(c)).collect();
    let top = basis.iter().map(Vec::len).max().unwrap_or(0);
    let by_dim: Vec<Vec<&Vec<usize>>> = (1..=top).map(|l| basis.iter().filter(|c| c.len() == l).collect()).collect();
    let boundary_rank = |d: usize| -> usize {
        // rank of the boundary from dimension d to d-1
        if d == 0 || d >= by_dim.len() {
            return 0;
        }
        let rows: Vec<Vec<Scalar>> = by_dim[d - 1]
            .iter()
            .map(|face| {
                by_dim[d]
                    .iter()
                    .map(|c| {
                        let mut v = Scalar::zero();
                        for skip in 0..c.len() {
                            let f: Vec<usize> = c.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &e)| e).collect();
                            if f == **face {
                                v = if skip % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                            }
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        rank_q(rows)
    };
    let mut betti: Vec<usize> = (0..by_dim.len()).map(|d| by_dim[d].len() - boundary_rank(d) - boundary_rank(d + 1)).collect();
    while betti.last() == Some(&0) {
        betti.pop();
    }
    betti
}

fn poly_det(m: &[Vec<Poly>], f: &Field) -> Poly {
    match m.len() {
        0 => Poly::constant(f.one()),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Poly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
                let term = m[0][j].mul(&poly_det(&minor, f), f);
                acc = if j % 2 == 0 { acc.add(&term, f) } else { acc.sub(&term, f) };
            }
            acc
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in (k - 1)..n {
        for mut c in combinations(last, k - 1) {
            c.push(last);
            out.push(c);
        }
    }
    out
}

/// Invariant factors of `tI - M` as quotients of consecutive determinantal
/// divisors. Only the non-constant ones are returned, monic.
pub fn oracle_invariant_factors(m: &Matrix, f: &Field) -> Vec<Poly> {
    let n = m.rows();
    let char_matrix: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(f.neg(&m[(i, j)]));
                    if i == j {
                        c.add(&Poly::t(), f)
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut divisors = vec![Poly::constant(f.one())];
    for k in 1..=n {
        let mut g = Poly::zero();
        for rows in combinations(n, k) {
            for cols in combinations(n, k) {
                let sub: Vec<Vec<Poly>> = rows.iter().map(|&r| cols.iter().map(|&c| char_matrix[r][c].clone()).collect()).collect();
                g = g.gcd(&poly_det(&sub, f), f);
            }
        }
        divisors.push(g.monic(f));
    }
    (1..=n)
        .map(|k| divisors[k].div_rem(&divisors[k - 1], f).0.monic(f))
        .filter(|p| p.degree().unwrap_or(0) > 0)
        .collect()
}

pub fn poly(f: &Field, ascending: &[i64]) -> Poly {
    Poly::from_ints(f, ascending)
}

/// A permutation matrix sending basis vector `i` to `perm[i]`, times `sign`.
pub fn signed_permutation(f: &Field, perm: &[usize], sign: i64) -> Matrix {
    let n = perm.len();
    let rows: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| if perm[c] == r { sign } else { 0 }).collect()).collect();
    Matrix::from_ints(f, &rows)
}

// ------------------------------------------------------------ lemma suite

use conley::index_pairs::{g_combinator, interpolate, nested_variants, pair_intersection};

fn fail(what: &str, p: &TopPair, q: &TopPair) -> String {
    format!("{what} for P={p:?} Q={q:?}")
}

/// Runs the index-pair lemmas over every pair of enumerated index pairs for
/// `s` in `n`. Returns the number of (P, Q) combinations examined.
pub fn lemma_suite(f: &MultiMap, n: &PointSet, s: &PointSet) -> Result<usize, String> {
    let pairs = oracle_index_pairs(f, n, s);
    let guard = 2 * f.space().len() + 1;
    let mut count = 0;
    for p in &pairs {
        for q in &pairs {
            count += 1;
            let r = pair_intersection(f, n, s, p, q).map_err(|e| fail(&format!("intersection: {e}"), p, q))?;
            if !oracle_is_index_pair(f, n, s, &r) {
                return Err(fail("intersection not an index pair", p, q));
            }
            if !p.is_subpair_of(q) {
                continue;
            }
            let (a, b) = nested_variants(f, n, s, p, q).map_err(|e| fail(&format!("nested variants: {e}"), p, q))?;
            if !oracle_is_index_pair(f, n, s, &a) || !oracle_is_index_pair(f, n, s, &b) {
                return Err(fail("nested variant not an index pair", p, q));
            }
            let g = g_combinator(f, n, p, q).map_err(|e| fail(&e.to_string(), p, q))?;
            // (i)
            if !p.is_subpair_of(&g) || !g.is_subpair_of(q) {
                return Err(fail("G(P,Q) not between P and Q", p, q));
            }
            // (ii)
            if (p.p1 == q.p1 && g.p1 != p.p1) || (p.p2 == q.p2 && g.p2 != p.p2) {
                return Err(fail("(ii) fails", p, q));
            }
            // (iii)
            if (p.p1 == q.p1 || p.p2 == q.p2) && !oracle_is_index_pair(f, n, s, &g) {
                return Err(fail("(iii) fails", p, q));
            }
            // (iv)
            for (qi, gi) in [(&q.p1, &g.p1), (&q.p2, &g.p2)] {
                if !image(f, qi).intersection(n).is_subset(gi) {
                    return Err(fail("(iv) fails", p, q));
                }
            }
            // (v)
            if (p.p2 == q.p2 && g.p1 == q.p1 && p.p1 != q.p1) || (p.p1 == q.p1 && g.p2 == q.p2 && p.p2 != q.p2) {
                return Err(fail("(v) fails", p, q));
            }
            if p.p1 != q.p1 && p.p2 != q.p2 {
                continue;
            }
            let seq = interpolate(f, n, p, q).map_err(|e| fail(&format!("interpolate: {e}"), p, q))?;
            if seq.len() > guard || seq.first() != Some(q) || seq.last() != Some(p) {
                return Err(fail("interpolation endpoints or length", p, q));
            }
            for w in seq.windows(2) {
                let (cur, next) = (&w[0], &w[1]);
                if !next.is_subpair_of(cur) || !oracle_is_index_pair(f, n, s, next) {
                    return Err(fail("interpolation member", p, q));
                }
                // (b)
                for (ci, ni) in [(&cur.p1, &next.p1), (&cur.p2, &next.p2)] {
                    if !image(f, ci).intersection(n).is_subset(ni) {
                        return Err(fail("interpolation (b)", p, q));
                    }
                }
            }
            // Strong excision for k: P̄ -> D with D_i = P_i ∪ cl(F(Q1) \ N).
            if p.p2 == q.p2 {
                let x = f.space();
                let e = x.cl(&image(f, &q.p1).difference(n));
                let ep = x.cl(&image(f, &p.p1).difference(n));
                let bar = TopPair::new(p.p1.union(&ep), p.p2.union(&ep)).unwrap();
                let d = TopPair::new(p.p1.union(&e), p.p2.union(&e)).unwrap();
                if !bar.is_subpair_of(&d) || bar.difference() != d.difference() {
                    return Err(fail("excision precondition for P̄ -> D", p, q));
                }
            }
        }
    }
    Ok(count)
}
