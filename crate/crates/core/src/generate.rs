//! Random finite spaces and admissible maps for property tests.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::finspace::{FiniteSpace, PointId, PointSet};
use crate::homology::reduced_integer_homology;
use crate::mvmap::MultiMap;

/// A random poset on `n` points: each pair `i < j` is related with
/// probability `density` before taking the transitive closure.
pub fn random_space<R: Rng>(rng: &mut R, n: usize, density: f64) -> FiniteSpace {
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
        for cell in row.iter_mut().skip(i + 1) {
            *cell = rng.gen_bool(density);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FiniteSpace::from_order(labels, |a, b| rel[a][b])
}

/// An admissible self-map built along a linear extension: each value starts
/// as the union of the values below and grows by closures of random points
/// until it is acyclic. Gives up after `attempts` growth steps at one point.
pub fn random_admissible_map<R: Rng>(rng: &mut R, space: &Arc<FiniteSpace>, attempts: usize) -> Option<MultiMap> {
    let n = space.len();
    let pts: Vec<PointId> = space.points().collect();
    let mut values = vec![PointSet::empty(n); n];
    for x in space.linear_extension() {
        let mut v = PointSet::empty(n);
        for y in space.cl_point(x).iter().filter(|&y| y != x) {
            v.union_with(&values[y.0]);
        }
        if v.is_empty() {
            v = space.cl_point(*pts.choose(rng)?);
        }
        let mut tries = 0;
        while reduced_integer_homology(space, &v).is_err() {
            if tries == attempts {
                return None;
            }
            v.union_with(&space.cl_point(*pts.choose(rng)?));
            tries += 1;
        }
        values[x.0] = v;
    }
    MultiMap::self_map(space.clone(), values).ok()
}

/// Draws spaces of up to `max_points` points until one carries an
/// admissible map.
pub fn random_instance<R: Rng>(rng: &mut R, max_points: usize) -> (Arc<FiniteSpace>, MultiMap) {
    loop {
        let n = rng.gen_range(1..=max_points);
        let density = rng.gen_range(0.2..0.7);
        let space = Arc::new(random_space(rng, n, density));
        if let Some(f) = random_admissible_map(rng, &space, 8) {
            return (space, f);
        }
    }
}
