mod common;

use common::*;
use proptest::prelude::*;
use qmap_core::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_mapping(rng: &mut rand_chacha::ChaCha8Rng, n: usize, m: usize) -> Mapping {
    let mut phys: Vec<usize> = (0..m).collect();
    phys.shuffle(rng);
    Mapping::new(phys[..n].to_vec())
}

#[test]
fn matches_first_principles_product() {
    let mut rng = rng(101);
    for _ in 0..150 {
        let n = rng.random_range(1..=6);
        let g = random_interaction(&mut rng, n, 0.5);
        let q = random_lattice(&mut rng, 3);
        let m = random_mapping(&mut rng, n, 9);
        let r = evaluate(&g, &q, &m, OPTS).unwrap();
        let (s, d, sw) = oracle_sigma(&g, &q, &m.assign);
        assert!(rel_close(r.sigma_s, s, 1e-12));
        assert!(rel_close(r.sigma_d, d, 1e-12));
        assert!(rel_close(r.sigma_sw, sw, 1e-12));
        assert!(rel_close(r.sigma_total, s * d * sw, 1e-12));
        assert_eq!(r.sigma_total, r.sigma_s * r.sigma_d * r.sigma_sw);
    }
}

#[test]
fn single_qubit_example() {
    let mut g = InteractionGraph::new(1);
    g.add_single(0, 1).unwrap();
    let q = CouplingGraph::new(1, vec![], vec![0.001], vec![0.0], vec![], None).unwrap();
    let r = evaluate(&g, &q, &Mapping::identity(1), OPTS).unwrap();
    assert_eq!(r.sigma_total, 0.999);
}

#[test]
fn empty_circuit_scores_one() {
    let q = make_lattice(3, &NoiseSpec::default().with_seed(5)).unwrap();
    let g = InteractionGraph::new(0);
    let r = evaluate(&g, &q, &Mapping::new(vec![]), OPTS).unwrap();
    assert_eq!((r.sigma_total, r.swap_edge_count()), (1.0, 0));
}

#[test]
fn measurement_factor_is_opt_in() {
    let mut g = InteractionGraph::new(2);
    g.add_measure(0, 2).unwrap();
    g.add_edge(0, 1, 1).unwrap();
    let q = make_lattice(2, &NoiseSpec::uniform(0.0, 0.01, 0.1)).unwrap();
    let m = Mapping::identity(2);
    let off = evaluate(&g, &q, &m, OPTS).unwrap();
    let on = evaluate(
        &g,
        &q,
        &m,
        MetricOptions {
            include_measurement: true,
        },
    )
    .unwrap();
    assert_eq!(off.sigma_s, 1.0);
    assert!(rel_close(on.sigma_s, 0.9 * 0.9, 1e-15));
    assert_eq!(on.sigma_d, off.sigma_d);
}

#[test]
fn invalid_mappings_are_rejected() {
    let q = make_lattice(2, &NoiseSpec::default()).unwrap();
    let g = InteractionGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    for bad in [vec![0, 1], vec![0, 1, 4], vec![0, 1, 1]] {
        assert!(evaluate(&g, &q, &Mapping::new(bad), OPTS).is_err());
    }
}

#[test]
fn mirror_symmetry_of_lattice_preserves_score() {
    // Reflecting columns is an automorphism of the grid; moving the rates
    // and the placement together must leave the score unchanged.
    let mut rng = rng(7);
    let n = 3;
    let mirror = |v: usize| (v / n) * n + (n - 1 - v % n);
    for _ in 0..50 {
        let q = random_lattice(&mut rng, n);
        let xi_s: Vec<f64> = (0..9).map(|v| q.xi_s()[mirror(v)]).collect();
        let xi_m: Vec<f64> = (0..9).map(|v| q.xi_m()[mirror(v)]).collect();
        let edges: Vec<(usize, usize)> = q
            .edges()
            .iter()
            .map(|&(a, b)| (mirror(a), mirror(b)))
            .collect();
        let mirrored = CouplingGraph::new(9, edges, xi_s, xi_m, q.xi_d().to_vec(), None).unwrap();
        let g = random_interaction(&mut rng, 5, 0.5);
        let m = random_mapping(&mut rng, 5, 9);
        let image = Mapping::new(m.assign.iter().map(|&p| mirror(p)).collect());
        let a = evaluate(&g, &q, &m, OPTS).unwrap().sigma_total;
        let b = evaluate(&g, &mirrored, &image, OPTS).unwrap().sigma_total;
        assert!(rel_close(a, b, 1e-12), "{a} vs {b}");
    }
}

#[test]
fn relabelling_circuit_qubits_preserves_label_free_quantities() {
    let mut rng = rng(8);
    for _ in 0..50 {
        let n = 5;
        let g = random_interaction(&mut rng, n, 0.5);
        let q = random_lattice(&mut rng, 3);
        let m = random_mapping(&mut rng, n, 9);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut h = InteractionGraph::new(n);
        for (v, &image) in perm.iter().enumerate() {
            h.add_single(image, g.single_count(v)).unwrap();
        }
        for ((a, b), w) in g.edges() {
            h.add_edge(perm[a], perm[b], w).unwrap();
        }
        let mut assign = vec![0; n];
        for v in 0..n {
            assign[perm[v]] = m.assign[v];
        }
        let a = evaluate(&g, &q, &m, OPTS).unwrap();
        let b = evaluate(&h, &q, &Mapping::new(assign), OPTS).unwrap();
        // Routes run from the lower-labelled endpoint, and only their last hop
        // is charged once, so a relabelling may move that charge. Path lengths
        // and every factor of a swap-free placement are label independent.
        assert!(rel_close(a.sigma_s, b.sigma_s, 1e-12));
        let hops = |r: &MetricReport| r.swap_routes.iter().map(|s| s.hops).sum::<usize>();
        assert_eq!(hops(&a), hops(&b));
        if a.swap_routes.is_empty() {
            assert!(rel_close(a.sigma_total, b.sigma_total, 1e-12));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adding_gates_never_raises_the_score(seed in any::<u64>(), a in 0usize..5, b in 0usize..5) {
        let mut rng = rng(seed);
        let g = random_interaction(&mut rng, 5, 0.4);
        let q = random_lattice(&mut rng, 3);
        let m = random_mapping(&mut rng, 5, 9);
        let mut h = g.clone();
        if a == b {
            h.add_single(a, 1).unwrap();
        } else {
            h.add_edge(a, b, 1).unwrap();
        }
        let before = evaluate(&g, &q, &m, OPTS).unwrap().sigma_total;
        let after = evaluate(&h, &q, &m, OPTS).unwrap().sigma_total;
        prop_assert!(after <= before * (1.0 + 1e-12));
    }

    #[test]
    fn factors_are_probabilities(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = random_interaction(&mut rng, 6, 0.5);
        let q = random_lattice(&mut rng, 3);
        let m = random_mapping(&mut rng, 6, 9);
        let r = evaluate(&g, &q, &m, OPTS).unwrap();
        for x in [r.sigma_s, r.sigma_d, r.sigma_sw, r.sigma_total] {
            prop_assert!(x > 0.0 && x <= 1.0);
        }
        let swaps: usize = r.swap_routes.iter().map(|s| s.hops - 1).sum();
        prop_assert_eq!(r.swap_edge_count(), swaps);
        prop_assert!(r.swap_routes.iter().all(|s| s.hops >= 2 && s.path.len() == s.hops + 1));
    }
}
