use std::collections::BTreeSet;

use greenseq::mgs::{build_exchange_graph, enumerate_mgs, EnumerationConfig, GreenSequence};
use greenseq::quiver::{iso_fixing_frozen, ArrowMatrix};
use greenseq::slice::{
    descending_path, is_slice_tilting, l_q, l_q_by_walks, mutate_slice_at_source, slice_sources,
};
use greenseq::type_a::{
    ext_dim, ext_mutually_vanishes, hasse_counts, hasse_quiver, hom_component_profile, hom_dim,
    mgs_spectrum_from_hasse, stilt_leq, tau_interval, TauRoute,
};
use greenseq::{
    build_affine, coframed, framed, ClusterQuiver, CoxeterData, IceQuiver, IntervalModule,
    SliceVector, TypeAQuiver,
};
use proptest::prelude::*;

/// Connected quivers on `1..=max_n` vertices without loops or 2-cycles,
/// arrow multiplicities up to 2.
fn cluster_quiver(max_n: usize) -> impl Strategy<Value = ClusterQuiver> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec((0u32..3, any::<bool>()), pairs).prop_map(move |choices| {
            let mut m = ArrowMatrix::zeros(n);
            let mut it = choices.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    let (k, forward) = it.next().unwrap();
                    let k = if v == u + 1 { k.max(1) } else { k };
                    if forward {
                        m.set(u, v, k);
                    } else {
                        m.set(v, u, k);
                    }
                }
            }
            ClusterQuiver::from_matrix(m).unwrap()
        })
    })
}

fn mutation_walk(q: &ClusterQuiver, steps: &[usize]) -> IceQuiver {
    let n = q.n();
    steps
        .iter()
        .fold(framed(q), |state, &k| state.mutate(k % n).unwrap())
}

fn type_a_fixtures(max_n: usize) -> Vec<TypeAQuiver> {
    (1..=max_n)
        .flat_map(TypeAQuiver::all_orientations)
        .collect()
}

fn slice_fixtures() -> Vec<ClusterQuiver> {
    let mut out: Vec<ClusterQuiver> = type_a_fixtures(4)
        .iter()
        .map(TypeAQuiver::to_cluster_quiver)
        .collect();
    out.push(build_affine(2).unwrap());
    out.push(build_affine(3).unwrap());
    out
}

/// All slice vectors with entries in `0..=max`.
fn slices_up_to(q: &ClusterQuiver, max: u64) -> Vec<SliceVector> {
    let n = q.n();
    let mut out = Vec::new();
    let mut cur = vec![0u64; n];
    loop {
        let s = SliceVector(cur.clone());
        if is_slice_tilting(q, &s) {
            out.push(s);
        }
        let Some(i) = (0..n).find(|&i| cur[i] < max) else {
            break;
        };
        cur[i] += 1;
        cur[..i].iter_mut().for_each(|c| *c = 0);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mutation_is_an_involution(
        q in cluster_quiver(6),
        steps in proptest::collection::vec(0usize..6, 0..8),
        k in 0usize..6,
    ) {
        let state = mutation_walk(&q, &steps);
        let k = k % q.n();
        prop_assert_eq!(state.mutate(k).unwrap().mutate(k).unwrap(), state);
    }

    #[test]
    fn canonical_key_matches_isomorphism(
        q in cluster_quiver(5),
        a in proptest::collection::vec(0usize..5, 0..6),
        b in proptest::collection::vec(0usize..5, 0..6),
        perm in Just(()).prop_perturb(|_, mut rng| {
            let mut p: Vec<usize> = (0..5).collect();
            for i in (1..p.len()).rev() {
                p.swap(i, rng.random_range(0..=i));
            }
            p
        }),
    ) {
        let n = q.n();
        let x = mutation_walk(&q, &a);
        let y = mutation_walk(&q, &b);
        prop_assert_eq!(
            x.canonical_key() == y.canonical_key(),
            iso_fixing_frozen(&x, &y).is_some()
        );

        let mut full: Vec<usize> = perm.into_iter().filter(|&v| v < n).collect();
        full.extend(n..x.size());
        let relabeled = x.relabel(&full);
        prop_assert_eq!(relabeled.canonical_key(), x.canonical_key());
        let iso = iso_fixing_frozen(&x, &relabeled).expect("relabeling is an isomorphism");
        prop_assert_eq!(x.relabel(&iso), relabeled);
    }

    #[test]
    fn coframed_reverses_the_framing(q in cluster_quiver(6)) {
        let n = q.n();
        let f = framed(&q);
        let mut m = ArrowMatrix::zeros(2 * n);
        for (u, v, k) in f.arrows() {
            if u < n && v < n {
                m.set(u, v, k);
            } else {
                m.set(v, u, k);
            }
        }
        let c = coframed(&q);
        prop_assert_eq!(c.matrix(), &m);
        prop_assert_eq!(c.frozen_mask(), f.frozen_mask());
    }

    #[test]
    fn green_sequences_from_the_engine_replay(
        q in cluster_quiver(3),
    ) {
        let bound = 8;
        let mut seqs = Vec::new();
        let config = EnumerationConfig::new(bound);
        let report = enumerate_mgs(&q, &config, Some(&mut |s: &[usize]| seqs.push(s.to_vec()))).unwrap();
        prop_assert_eq!(seqs.len() as u64, report.total_sequences());
        for s in seqs {
            prop_assert!(GreenSequence(s).is_maximal(&q).unwrap());
        }
    }
}

#[test]
fn lq_agrees_with_walks_and_satisfies_triangle_inequality() {
    for q in slice_fixtures() {
        let n = q.n();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(
                    Some(l_q(&q, x, y)),
                    l_q_by_walks(&q, x, y, 2 * n),
                    "{x} {y}"
                );
                for z in 0..n {
                    assert!(l_q(&q, x, z) <= l_q(&q, x, y) + l_q(&q, y, z));
                }
            }
            assert_eq!(l_q(&q, x, x), 0);
        }
    }
}

#[test]
fn ext_vanishing_is_symmetric_and_matches_dimensions() {
    for q in type_a_fixtures(6) {
        let ms = q.intervals();
        for &a in &ms {
            for &b in &ms {
                let both = ext_mutually_vanishes(&q, a, b);
                assert_eq!(both, ext_mutually_vanishes(&q, b, a));
                let dims = ext_dim(&q, a, b).unwrap() == 0 && ext_dim(&q, b, a).unwrap() == 0;
                assert_eq!(both, dims, "{q} {a} {b}");
            }
        }
    }
}

#[test]
fn nonzero_homs_are_nonzero_on_the_shared_support() {
    for q in type_a_fixtures(5) {
        for &x in &q.intervals() {
            for &y in &q.intervals() {
                if hom_dim(&q, x, y).unwrap() == 0 {
                    assert!(hom_component_profile(&q, x, y).is_err());
                    continue;
                }
                let profile = hom_component_profile(&q, x, y).unwrap();
                assert!(profile.is_full(), "{q} {x} {y}: {profile:?}");
                assert!(!profile.shared_support.is_empty());
            }
        }
    }
}

#[test]
fn coxeter_transformation_keeps_intervals_indecomposable() {
    for q in type_a_fixtures(6) {
        let n = q.n();
        let cq = q.to_cluster_quiver();
        let data = CoxeterData::new(&cq).unwrap();
        let projectives: BTreeSet<Vec<i64>> = (0..n).map(|x| data.projective(x).0).collect();
        for x in q.intervals() {
            let d = x.dim_vector(n);
            let img = data.apply_coxeter(&d).unwrap();
            if projectives.contains(&d.0) {
                let neg: Vec<i64> = img.0.iter().map(|c| -c).collect();
                assert!((0..n).any(|y| data.injective(y).0 == neg), "{q} {x}");
            } else {
                assert!(IntervalModule::from_dim_vector(&img).is_some(), "{q} {x}");
                let out = tau_interval(&q, x).unwrap();
                assert_ne!(out.route, TauRoute::Projective);
                assert_eq!(out.module.map(|t| t.dim_vector(n)), Some(img));
            }
        }
    }
}

#[test]
fn opposite_quiver_has_the_same_poset_shape() {
    for q in type_a_fixtures(4) {
        let h = hasse_quiver(&q).unwrap();
        let op = hasse_quiver(&q.opposite()).unwrap();
        assert_eq!(hasse_counts(&h), hasse_counts(&op), "{q}");
        assert_eq!(
            mgs_spectrum_from_hasse(&q).unwrap(),
            mgs_spectrum_from_hasse(&q.opposite()).unwrap()
        );
    }
}

#[test]
fn support_tilting_order_is_a_partial_order() {
    for q in type_a_fixtures(3) {
        let nodes = hasse_quiver(&q).unwrap().nodes;
        for a in &nodes {
            assert!(stilt_leq(&q, a, a).unwrap());
            for b in &nodes {
                let ab = stilt_leq(&q, a, b).unwrap();
                if ab && stilt_leq(&q, b, a).unwrap() {
                    assert_eq!(a, b);
                }
                for c in &nodes {
                    if ab && stilt_leq(&q, b, c).unwrap() {
                        assert!(stilt_leq(&q, a, c).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn type_a_spectrum_is_independent_of_orientation() {
    for n in 1..=4 {
        let spectra: BTreeSet<Vec<usize>> = TypeAQuiver::all_orientations(n)
            .iter()
            .map(|q| {
                let cq = q.to_cluster_quiver();
                let r = enumerate_mgs(&cq, &EnumerationConfig::new(n * (n + 1) / 2), None).unwrap();
                r.lengths.into_iter().collect()
            })
            .collect();
        assert_eq!(spectra.len(), 1, "n = {n}");
        assert_eq!(
            spectra.into_iter().next().unwrap(),
            (n..=n * (n + 1) / 2).collect::<Vec<_>>()
        );
    }
}

#[test]
fn memoization_and_threads_do_not_change_reports() {
    let mut quivers: Vec<ClusterQuiver> = TypeAQuiver::all_orientations(4)
        .iter()
        .map(TypeAQuiver::to_cluster_quiver)
        .collect();
    quivers.push(build_affine(2).unwrap());
    quivers.push(build_affine(3).unwrap());
    for q in &quivers {
        let bound = greenseq::mgs::default_depth_bound(q).unwrap();
        let base = enumerate_mgs(q, &EnumerationConfig::new(bound), None).unwrap();
        let again = enumerate_mgs(q, &EnumerationConfig::new(bound), None).unwrap();
        assert_eq!(base.to_json(), again.to_json());
        for config in [
            EnumerationConfig::new(bound).memoize(false),
            EnumerationConfig::new(bound).threads(4),
            EnumerationConfig::new(bound).memoize(false).threads(4),
        ] {
            let r = enumerate_mgs(q, &config, None).unwrap();
            assert_eq!(r.lengths, base.lengths);
            assert_eq!(r.counts, base.counts);
            assert_eq!(r.truncated, base.truncated);
        }
        let g1 = build_exchange_graph(q, bound)
            .unwrap()
            .to_dot(|v| q.label(v));
        let g2 = build_exchange_graph(q, bound)
            .unwrap()
            .to_dot(|v| q.label(v));
        assert_eq!(g1, g2);
    }
}

#[test]
fn finite_type_exchange_graphs_have_one_sink() {
    for q in type_a_fixtures(4) {
        let cq = q.to_cluster_quiver();
        let n = q.n();
        let g = build_exchange_graph(&cq, n * (n + 1) / 2).unwrap();
        assert!(!g.truncated);
        let sinks = g.sinks();
        assert_eq!(sinks.len(), 1, "{q}");
        assert!(g.nodes[sinks[0]]
            .quiver
            .green_vertices()
            .unwrap()
            .is_empty());
    }
}

#[test]
fn greedy_descent_always_has_a_source_below_the_target() {
    for q in slice_fixtures() {
        let slices = slices_up_to(&q, 3);
        for s in &slices {
            for t in slices.iter().filter(|t| s.leq(t)) {
                let sources = slice_sources(&q, s).unwrap();
                if s != t {
                    assert!(sources.iter().any(|&a| t.0[a] > s.0[a]), "{s} {t}");
                }
                let path = descending_path(&q, s, t).unwrap();
                assert_eq!(path.len() as u64, s.distance_to(t));
            }
        }
    }
}

#[test]
fn mutated_vertex_is_no_longer_a_source() {
    for q in slice_fixtures().into_iter().filter(|q| q.n() >= 2) {
        for s in slices_up_to(&q, 3) {
            for x in slice_sources(&q, &s).unwrap() {
                let t = mutate_slice_at_source(&q, &s, x).unwrap();
                assert_eq!(s.distance_to(&t), 1);
                assert!(!slice_sources(&q, &t).unwrap().contains(&x), "{s} at {x}");
            }
        }
    }
}
