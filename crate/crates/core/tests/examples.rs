mod common;

use common::*;
use conley::conley::{conley_index, index_iso, index_map, leray, wazewski_check, GradedEndo};
use conley::dynamics::{
    check_isolating, concat, connection_exists, inv_minus, inv_part, inv_plus, is_invariant, isolating_intersection,
    minimal_isolating_candidate, morse_decomposition, Path,
};
use conley::field::{CoefficientRing, Field};
use conley::homology::{excision_check, homology, induced_continuous, induced_multivalued, relative_chain_complex};
use conley::index_pairs::{check_index_pair, extended_pair, standard_pair, standard_pair_nesting};
use conley::{Matrix, TopPair};

const Q: Field = Field::Rationals;

#[test]
fn topology_of_the_triangle() {
    let x = triangle();
    let rs = rotation_sets(&x);
    assert!(x.is_closed(&rs.n[1]));
    assert!(!x.is_closed(&set(&x, &["AB"])));
    assert!(!x.is_locally_closed(&rs.s[0].union(&rs.s[2])));
    assert!(x.is_locally_closed(&rs.s[1]));
    for s in subsets(&x.full_set()) {
        assert_eq!(x.is_locally_closed(&s), oracle_locally_closed(&x, &s), "{}", x.fmt_set(&s));
        assert_eq!(x.cl(&s), closure(&x, &s));
    }
}

#[test]
fn admissibility_of_the_tables() {
    let x = triangle();
    for f in [rotation(&x), reflection(&x)] {
        assert!(f.check_closed_values().is_ok());
        assert!(f.check_lsc().is_ok());
        assert!(f.check_acyclic_values().is_ok());
        assert_eq!(f.digraph().len(), 19);
    }
    let p = pentagon();
    let (f, g) = (pentagon_f(&p), pentagon_g(&p));
    assert!(f.is_admissible() && g.is_admissible());
    assert!(f.map_leq(&g).unwrap());
    assert!(!g.map_leq(&f).unwrap());
    let sizes: usize = PENTAGON_F.iter().map(|r| r.len()).sum();
    assert_eq!(f.graph_space().unwrap().space.len(), sizes);
    let s = ids(&p, &[0, 1, 2]);
    assert!(f.as_pair_map(TopPair::absolute(s.clone()), TopPair::absolute(s)).is_ok());
}

#[test]
fn paths_and_invariance() {
    let x = triangle();
    let f = rotation(&x);
    let pt = |l: &str| x.point(l).unwrap();
    let ab = concat(&f, &Path(vec![pt("A")]), &Path(vec![pt("B")])).unwrap();
    assert_eq!(ab.0, vec![pt("A"), pt("B")]);
    assert!(concat(&f, &Path(vec![pt("ABC")]), &Path(vec![pt("ABC")])).is_ok());
    assert!(concat(&f, &Path(vec![pt("A")]), &Path(vec![pt("C")])).is_err());

    let rs = rotation_sets(&x);
    assert!(is_invariant(&f, &rs.s[1]));
    assert!(!is_invariant(&f, &set(&x, &["A"])));
    assert!(is_invariant(&f, &x.empty_set()));
    assert_eq!(inv_part(&f, &x.full_set()), x.full_set());
    assert_eq!(inv_part(&f, &rs.s[2]), rs.s[2]);
    assert!(inv_part(&f, &x.empty_set()).is_empty());
    assert_eq!(inv_minus(&f, &rs.n[1], &rs.s[1]), rs.n[1]);
    assert_eq!(inv_plus(&f, &rs.n[1], &rs.s[1]), rs.s[1]);
}

#[test]
fn isolation_on_the_rotation() {
    let x = triangle();
    let f = rotation(&x);
    let rs = rotation_sets(&x);
    assert!(check_isolating(&f, &rs.n[0], &rs.s[0]).unwrap().is_isolating());
    for s in &rs.s {
        assert!(check_isolating(&f, &rs.n[2], s).unwrap().is_isolating());
    }
    let bad = rs.s[0].union(&rs.s[2]);
    let cert = check_isolating(&f, &x.full_set(), &bad).unwrap();
    let path = cert.is1.expect("IS1 must fail");
    assert!(path.is_path_of(&f));
    assert!(bad.contains(path.lep()) && bad.contains(path.rep()));
    assert!(path.points().iter().any(|p| !bad.contains(*p)));

    assert_eq!(minimal_isolating_candidate(&f, &rs.s[2]).unwrap(), x.full_set());
    assert_eq!(minimal_isolating_candidate(&f, &rs.s[0]).unwrap(), rs.s[0]);
    assert_eq!(isolating_intersection(&f, &rs.n[1], &rs.n[2], &rs.s[1]).unwrap(), rs.n[1]);
    assert!(connection_exists(&f, &rs.s[2], &rs.s[1]));
    assert!(!connection_exists(&f, &rs.s[0], &rs.s[2]));
}

#[test]
fn morse_decompositions_match_the_figures() {
    let x = triangle();
    let md = morse_decomposition(&rotation(&x)).unwrap();
    let rs = rotation_sets(&x);
    assert_eq!(md.sets, rs.s.to_vec());
    assert_eq!(md.hasse_edges, vec![(1, 0), (2, 1)]);
    assert!(md.greater(2, 0));

    let g = reflection(&x);
    let md = morse_decomposition(&g).unwrap();
    let rf = reflection_sets(&x);
    let mut expected = rf.r.to_vec();
    expected.sort_by_key(|s| s.first());
    assert_eq!(md.sets, expected);
    let (sets, edges) = oracle_morse(&g);
    assert_eq!((md.sets, md.hasse_edges), (sets, edges));

    let p = pentagon();
    let md = morse_decomposition(&pentagon_f(&p)).unwrap();
    assert_eq!(md.sets, vec![ids(&p, &[0]), ids(&p, &[5])]);
    let md = morse_decomposition(&pentagon_g(&p)).unwrap();
    assert_eq!(md.sets, vec![ids(&p, &[0, 1, 2]), ids(&p, &[5, 6, 7])]);
    assert_eq!(md.hasse_edges, vec![(1, 0)]);
}

#[test]
fn standard_pairs_of_both_examples() {
    let x = triangle();
    let f = rotation(&x);
    let rs = rotation_sets(&x);
    let empty = x.empty_set();
    let expected = [(&rs.n[0], &empty), (&rs.n[1], &rs.n[0]), (&rs.n[2], &rs.n[1])];
    for k in 0..3 {
        let p = standard_pair(&f, &rs.n[k], &rs.s[k]).unwrap();
        assert_eq!((&p.p1, &p.p2), expected[k]);
        assert_eq!(extended_pair(&f, &rs.n[k], &p).unwrap(), p);
    }

    let g = reflection(&x);
    let rf = reflection_sets(&x);
    let m = &rf.m;
    let expected = [
        (m[0].clone(), empty.clone()),
        (m[1].clone(), empty.clone()),
        (m[2].clone(), m[1].clone()),
        (m[3].clone(), m[0].union(&m[1])),
        (m[4].clone(), m[2].union(&m[3])),
    ];
    for k in 0..5 {
        let p = standard_pair(&g, &m[k], &rf.r[k]).unwrap();
        assert_eq!((p.p1.clone(), p.p2.clone()), expected[k]);
        assert_eq!(extended_pair(&g, &m[k], &p).unwrap(), p);
    }
}

#[test]
fn index_pair_certificates() {
    let x = triangle();
    let f = rotation(&x);
    let rs = rotation_sets(&x);
    let cert = check_index_pair(&f, &rs.n[1], &rs.s[1], &TopPair::new(rs.n[1].clone(), rs.n[0].clone()).unwrap()).unwrap();
    assert!(cert.is_index_pair() && cert.saturated);
    let cert = check_index_pair(&f, &rs.n[1], &rs.s[1], &TopPair::absolute(rs.n[1].clone())).unwrap();
    assert!(cert.ip3.is_some());
    assert!(standard_pair_nesting(&f, &rs.n[1], &rs.n[2], &rs.s[1]).unwrap());

    let g = reflection(&x);
    let rf = reflection_sets(&x);
    let p4 = TopPair::new(rf.m[3].clone(), rf.m[0].union(&rf.m[1])).unwrap();
    assert!(check_index_pair(&g, &rf.m[3], &rf.r[3], &p4).unwrap().is_index_pair());
    assert!(standard_pair_nesting(&g, &rf.m[2], &rf.m[4], &rf.r[2]).unwrap());
}

#[test]
fn extended_pair_on_the_pentagon() {
    let p = pentagon();
    let f = pentagon_f(&p);
    let n = ids(&p, &[2, 3, 4]);
    let pair = TopPair::new(n.clone(), ids(&p, &[2, 4])).unwrap();
    let ext = extended_pair(&f, &n, &pair).unwrap();
    assert_eq!(ext.p1, ids(&p, &[0, 1, 2, 3, 4]));
    assert_eq!(ext.p2, ids(&p, &[0, 1, 2, 4]));
}

#[test]
fn homology_groups() {
    let x = triangle();
    let rs = rotation_sets(&x);
    let z = CoefficientRing::Integers;
    let h = homology(&relative_chain_complex(&x, &TopPair::absolute(x.full_set()), z));
    assert_eq!(h.ranks(), vec![1]);
    assert!((0..3).all(|n| h.group(n).torsion.is_empty()));
    let h = homology(&relative_chain_complex(&x, &TopPair::absolute(rs.n[1].clone()), z));
    assert_eq!(h.ranks(), vec![1, 1]);
    let h = homology(&relative_chain_complex(&x, &TopPair::new(rs.n[1].clone(), rs.n[0].clone()).unwrap(), z));
    assert_eq!(h.ranks(), vec![0, 3]);
    let rf = reflection_sets(&x);
    let top = TopPair::new(rf.m[4].clone(), rf.m[2].union(&rf.m[3])).unwrap();
    assert_eq!(homology(&relative_chain_complex(&x, &top, z)).ranks(), vec![0, 0, 1]);
    let seg = pair(&x, &["A", "B", "AB"], &[]);
    assert_eq!(homology(&relative_chain_complex(&x, &seg, z)).ranks(), vec![1]);
    let same = TopPair::new(rs.n[1].clone(), rs.n[1].clone()).unwrap();
    assert!(homology(&relative_chain_complex(&x, &same, z)).is_zero());

    for a in closed_subsets(&x, &x.full_set()) {
        for b in closed_subsets(&x, &a) {
            let p = TopPair::new(a.clone(), b).unwrap();
            let cc = relative_chain_complex(&x, &p, CoefficientRing::Rationals);
            assert!(cc.check_boundary_squared().is_ok());
            assert_eq!(homology(&cc).ranks(), oracle_betti(&x, &p));
        }
    }
}

#[test]
fn excision_on_nested_standard_pairs() {
    let x = triangle();
    let g = reflection(&x);
    let rf = reflection_sets(&x);
    let small = standard_pair(&g, &rf.m[2], &rf.r[2]).unwrap();
    let big = standard_pair(&g, &rf.m[4], &rf.r[2]).unwrap();
    assert!(excision_check(&x, &small, &big).unwrap());
    assert!(excision_check(&x, &small, &small).unwrap());
    let rs = rotation_sets(&x);
    let a = TopPair::new(rs.n[1].clone(), rs.n[0].clone()).unwrap();
    let b = TopPair::new(rs.n[2].clone(), rs.n[0].clone()).unwrap();
    assert!(excision_check(&x, &a, &b).is_err());

    let id: Vec<_> = x.points().collect();
    let incl = induced_continuous(&id, &x, &small, &x, &big, Q).unwrap();
    assert!(incl.is_isomorphism());
}

#[test]
fn induced_maps_of_the_examples() {
    let x = triangle();
    let f = rotation(&x);
    let rs = rotation_sets(&x);
    let p = standard_pair(&f, &rs.n[0], &rs.s[0]).unwrap();
    let fp = f.as_pair_map(p.clone(), p.clone()).unwrap();
    let m = induced_multivalued(&fp, Q).unwrap();
    let block = m.block(0).unwrap();
    assert_eq!(block.pow(3, &Q), Matrix::identity(3));
    assert_ne!(*block, Matrix::identity(3));
    assert_eq!(oracle_invariant_factors(block, &Q), vec![poly(&Q, &[-1, 0, 0, 1])]);

    let g = reflection(&x);
    let rf = reflection_sets(&x);
    let p = standard_pair(&g, &rf.m[2], &rf.r[2]).unwrap();
    let e = index_map(&g, &rf.m[2], &p, Q).unwrap();
    assert_eq!(e.maps[1], Matrix::from_ints(&Q, &[vec![-1]]));
}

#[test]
fn fixture_index_maps_up_to_similarity() {
    let x = triangle();
    let f = rotation(&x);
    let g = reflection(&x);
    let rs = rotation_sets(&x);
    let rf = reflection_sets(&x);
    // (map, N, S, degree, signed permutation of the stated basis action)
    let cyc = [1, 2, 0];
    let swap = [1, 0];
    let cases: Vec<(&conley::MultiMap, &conley::PointSet, &conley::PointSet, usize, Matrix)> = vec![
        (&f, &rs.n[0], &rs.s[0], 0, signed_permutation(&Q, &cyc, 1)),
        (&f, &rs.n[1], &rs.s[1], 1, signed_permutation(&Q, &cyc, 1)),
        (&f, &rs.n[2], &rs.s[2], 2, signed_permutation(&Q, &[0], 1)),
        (&g, &rf.m[0], &rf.r[0], 0, signed_permutation(&Q, &[0], 1)),
        (&g, &rf.m[1], &rf.r[1], 0, signed_permutation(&Q, &swap, 1)),
        (&g, &rf.m[2], &rf.r[2], 1, signed_permutation(&Q, &[0], -1)),
        (&g, &rf.m[3], &rf.r[3], 1, signed_permutation(&Q, &swap, 1)),
        (&g, &rf.m[4], &rf.r[4], 2, signed_permutation(&Q, &[0], -1)),
    ];
    for (map, n, s, degree, action) in cases {
        let idx = conley_index(map, s, Some(n), None, Q).unwrap();
        let mut dims = vec![0; degree + 1];
        dims[degree] = action.rows();
        assert_eq!(idx.dims(), dims);
        assert_eq!(idx.inv_factors(degree), oracle_invariant_factors(&action, &Q).as_slice());
        assert_eq!(oracle_invariant_factors(&idx.degrees[degree].automorphism, &Q), oracle_invariant_factors(&action, &Q));
    }
}

#[test]
fn leray_reduction() {
    let nil = GradedEndo { field: Q, maps: vec![Matrix::from_ints(&Q, &[vec![0]])] };
    assert!(leray(&nil).is_zero());
    let auto = GradedEndo { field: Q, maps: vec![signed_permutation(&Q, &[1, 2, 0], 1)] };
    let r = leray(&auto);
    assert_eq!(r.degrees[0].automorphism, auto.maps[0]);
    let d = GradedEndo { field: Q, maps: vec![Matrix::from_ints(&Q, &[vec![0, 0], vec![0, 2]])] };
    let r = leray(&d);
    assert_eq!(r.dims(), vec![1]);
    assert_eq!(r.degrees[0].automorphism, Matrix::from_ints(&Q, &[vec![2]]));
    // idempotent
    let again = leray(&GradedEndo { field: Q, maps: r.degrees.iter().map(|d| d.automorphism.clone()).collect() });
    assert_eq!(again, r);
}

#[test]
fn index_rendering_and_comparison() {
    let x = triangle();
    let f = rotation(&x);
    let rs = rotation_sets(&x);
    let s1 = conley_index(&f, &rs.s[0], None, None, Q).unwrap();
    assert_eq!(s1.to_string(), "degree 0: dim=3, inv_factors=[t^3-1]\n");
    let s3 = conley_index(&f, &rs.s[2], None, None, Q).unwrap();
    assert!(!index_iso(&s1, &s3).unwrap());
    assert!(index_iso(&s1, &s1).unwrap());
    let via_n2 = conley_index(&f, &rs.s[1], Some(&rs.n[1]), None, Q).unwrap();
    let via_n3 = conley_index(&f, &rs.s[1], Some(&rs.n[2]), None, Q).unwrap();
    assert!(index_iso(&via_n2, &via_n3).unwrap());
    let f5 = Field::prime(5).unwrap();
    let other = conley_index(&f, &rs.s[0], None, None, f5).unwrap();
    assert!(index_iso(&s1, &other).is_err());
}

#[test]
fn wazewski_on_the_rotation() {
    let x = triangle();
    let f = rotation(&x);
    let rs = rotation_sets(&x);
    let report = wazewski_check(&f, &TopPair::new(rs.n[2].clone(), rs.n[1].clone()).unwrap(), Q).unwrap();
    assert!(!report.index.is_zero());
    assert_eq!(report.invariant_part, rs.s[2]);
    let report = wazewski_check(&f, &TopPair::absolute(x.empty_set()), Q).unwrap();
    assert!(report.index.is_zero() && !report.inv_nonempty());
}
