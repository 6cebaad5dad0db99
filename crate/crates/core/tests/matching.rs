mod common;

use common::*;
use hyperrho::{class_filter, generate, matching_number, ClassMode, GenSpec, Hypergraph, Shape};
use proptest::prelude::*;
use rand::SeedableRng;

fn disjoint(h: &Hypergraph, witness: &[usize]) -> bool {
    let mut used = vec![false; h.n()];
    for &i in witness {
        for &v in h.edge(i) {
            if std::mem::replace(&mut used[v], true) {
                return false;
            }
        }
    }
    true
}

#[test]
fn examples() {
    let single = hg(3, 3, &[&[0, 1, 2]]);
    let r = matching_number(&single);
    assert_eq!((r.alpha, r.witness), (1, vec![0]));
    let cycle = hg(3, 4, &[&[0, 1, 2], &[0, 1, 3]]);
    assert_eq!(matching_number(&cycle).alpha, 1);
    assert!(class_filter(&cycle, 1, ClassMode::Exact));
    assert!(!class_filter(&cycle, 2, ClassMode::AtLeast));
    let tree = hg(3, 7, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6]]);
    for z in 1..4 {
        assert!(!class_filter(&tree, z, ClassMode::AtLeast));
        assert!(!class_filter(&tree, z, ClassMode::Exact));
    }
}

#[test]
fn output_json_shape() {
    let h = hg(3, 9, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6], &[6, 7, 8]]);
    let json = serde_json::to_string(&matching_number(&h)).unwrap();
    assert_eq!(json, r#"{"alpha":2,"witness":[0,2]}"#);
}

#[test]
fn unicyclic_corpus_respects_edge_bound() {
    for m in 2..=6 {
        for h in generate(&GenSpec::new(3, m, Shape::Unicyclic)).unwrap() {
            assert!(matching_number(&h).alpha < m, "{h}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn agrees_with_brute_force(seed in any::<u64>(), m in 1usize..=12, k in 3usize..=4) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let h = random_connected(&mut rng, k, m, 2);
        let r = matching_number(&h);
        prop_assert_eq!(r.alpha, brute_alpha(&h));
        prop_assert_eq!(r.witness.len(), r.alpha);
        prop_assert!(disjoint(&h, &r.witness));
        prop_assert!(r.witness.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn deleting_an_edge_drops_alpha_by_at_most_one(seed in any::<u64>(), m in 2usize..=10) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let h = random_connected(&mut rng, 3, m, 2);
        let alpha = matching_number(&h).alpha;
        for drop in 0..h.m() {
            let mut edges = h.edges().to_vec();
            edges.remove(drop);
            // keep the vertex set dense so the smaller graph stays valid
            let mut used: Vec<usize> = edges.iter().flatten().copied().collect();
            used.sort_unstable();
            used.dedup();
            let relabel: Vec<Vec<usize>> = edges
                .iter()
                .map(|e| e.iter().map(|v| used.binary_search(v).unwrap()).collect())
                .collect();
            let g = Hypergraph::from_unsorted(3, used.len(), relabel).unwrap();
            let beta = matching_number(&g).alpha;
            prop_assert!(beta <= alpha && beta + 1 >= alpha);
        }
    }
}
