use cmapf::cmis::{maximal_independent, CmisInstance, SelectionRule};
use cmapf::constraints::{expand_covers, ConstraintSet, OccupancyTracker};
use cmapf::graph::{Digraph, VertexSet};
use cmapf::random;
use cmapf::reduction::{build_reduced, filtered_vertices, is_independent};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> (Digraph, ConstraintSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=8);
    let extra = rng.gen_range(0..=2 * n);
    let g = random::strongly_connected(&mut rng, n, extra);
    let pairs = rng.gen_range(0..=n);
    let c = random::pair_constraints(&mut rng, &g, pairs);
    (g, c)
}

fn subsets(w: &VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
    let vs = w.to_vec();
    (0u32..1 << vs.len()).map(move |mask| {
        vs.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

fn random_subset(g: &Digraph, mask: u32) -> VertexSet {
    g.vertices().filter(|&v| mask >> (v % 32) & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn independence_is_hereditary(seed in any::<u64>(), mask in any::<u32>()) {
        let (g, c) = instance(seed);
        let w = random_subset(&g, mask);
        if is_independent(&g, &c, &w).unwrap() {
            for z in subsets(&w) {
                prop_assert!(is_independent(&g, &c, &z).unwrap(), "{z} of {w}");
            }
        }
    }

    #[test]
    fn admitted_vertices_shrink_as_w_grows(seed in any::<u64>(), mask in any::<u32>(), sub in any::<u32>()) {
        let (g, c) = instance(seed);
        let w = random_subset(&g, mask);
        prop_assume!(w.len() >= 2 && c.is_member(&w).unwrap());
        let vs = w.to_vec();
        let (v1, v2) = (vs[0], vs[1]);
        let z: VertexSet = vs.iter().enumerate()
            .filter(|&(i, _)| i < 2 || sub >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let under_w = filtered_vertices(&g, &c, &w, v1, v2).unwrap().admitted();
        let under_z = filtered_vertices(&g, &c, &z, v1, v2).unwrap().admitted();
        prop_assert!(under_w.is_subset(&under_z));
    }

    #[test]
    fn contraction_is_a_subgraph_of_smaller_reduction(seed in any::<u64>(), mask in any::<u32>()) {
        let (g, c) = instance(seed);
        let w = random_subset(&g, mask);
        prop_assume!(w.len() >= 2 && c.is_member(&w).unwrap());
        let big = build_reduced(&g, &c, &w).unwrap().as_digraph();
        for x in &w {
            let small = build_reduced(&g, &c, &w.without(x)).unwrap();
            for (u, v) in big.contract(x).unwrap().edges() {
                prop_assert!(small.has_edge(u, v), "({u},{v}) after contracting {x} in {w}");
            }
        }
    }

    #[test]
    fn contraction_preserves_strong_connectivity(seed in any::<u64>(), pick in any::<usize>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=10);
        let g = random::strongly_connected(&mut rng, n, n);
        let v = 1 + pick % n;
        prop_assert!(g.contract(v).unwrap().is_strongly_connected().unwrap());
    }

    #[test]
    fn covers_match_knapsack_membership(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random::knapsack(&mut rng, 10, 10, 6);
        let covers = expand_covers(&k).unwrap();
        let scope: VertexSet = k.scope().iter().copied().collect();
        for u in subsets(&scope) {
            let by_covers = covers.iter().all(|(s, cap)| (s.intersection(&u).len() as u64) <= *cap);
            prop_assert_eq!(k.admits(u.iter()), by_covers);
        }
    }

    #[test]
    fn tracker_matches_membership(seed in any::<u64>(), ops in proptest::collection::vec((any::<bool>(), 1usize..=8), 1..40)) {
        let (g, c) = instance(seed);
        let mut t = OccupancyTracker::new(&c);
        for (add, v) in ops {
            if !g.contains(v) {
                continue;
            }
            if add && !t.contains(v) {
                let before = t.occupied();
                let fits = c.is_member(&before.with(v)).unwrap();
                let added = t.add(v).unwrap();
                prop_assert_eq!(added, fits);
                if !added {
                    prop_assert_eq!(t.occupied(), before);
                }
            } else if !add && t.contains(v) {
                t.remove(v).unwrap();
            }
            prop_assert!(c.is_member(&t.occupied()).unwrap());
            let occ = t.occupied();
            let dropped = occ.iter().take(2).collect::<Vec<_>>();
            for probe in g.vertices() {
                if occ.contains(probe) && !dropped.contains(&probe) {
                    continue;
                }
                let mut expect = occ.clone();
                for d in &dropped {
                    expect.remove(*d);
                }
                expect.insert(probe);
                prop_assert_eq!(t.check_swap(&dropped, probe).unwrap(), c.is_member(&expect).unwrap());
            }
        }
    }

    #[test]
    fn failed_extension_stays_failed(seed in any::<u64>(), mask in any::<u32>(), extra in any::<u32>()) {
        let (g, c) = instance(seed);
        let m = random_subset(&g, mask);
        prop_assume!(is_independent(&g, &c, &m).unwrap());
        let bigger = m.union(&random_subset(&g, extra));
        for v in g.vertices() {
            if !is_independent(&g, &c, &m.with(v)).unwrap() {
                prop_assert!(!is_independent(&g, &c, &bigger.with(v)).unwrap());
            }
        }
    }

    #[test]
    fn greedy_output_is_maximal(seed in any::<u64>()) {
        let (g, c) = instance(seed);
        let inst = CmisInstance::new(g.clone(), c.clone(), VertexSet::new()).unwrap();
        for rule in [SelectionRule::GreedyDegree, SelectionRule::GreedyPsi, SelectionRule::Random { seed }] {
            let m = maximal_independent(&inst, rule).unwrap();
            prop_assert!(is_independent(&g, &c, &m).unwrap());
            for v in g.vertices().filter(|&v| !m.contains(v)) {
                prop_assert!(!is_independent(&g, &c, &m.with(v)).unwrap());
            }
        }
    }
}
