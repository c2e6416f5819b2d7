mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use isf_logconcave::enumerate::{count_if, enumerate_if, isf_factorization_check};
use isf_logconcave::psi::psi;
use isf_logconcave::stirling::{
    forest_to_permutation, permutation_psi, permutation_to_forest, stirling_row, Permutation,
};
use isf_logconcave::{Forest, OrderedGraph};
use proptest::prelude::*;

use common::{all_graphs_upto, brute_stirling_row, cycle_count, permutations, random_graphs, SEED};

/// Increasing spanning forests by component count: an edge subset is a forest
/// when roots plus edges equals n, and increasing when a walk from each
/// minimum only ever steps up.
fn brute_if_counts(g: &OrderedGraph) -> Vec<u64> {
    let n = g.n() as usize;
    let edges: Vec<(u32, u32)> = g.edges().iter().map(|e| (e.lo(), e.hi())).collect();
    let mut counts = vec![0u64; n + 1];
    for mask in 0u32..1 << edges.len() {
        let chosen: Vec<(u32, u32)> =
            edges.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
        let mut roots = 0;
        let mut seen = vec![false; n + 1];
        let mut increasing = true;
        for root in 1..=g.n() {
            if seen[root as usize] {
                continue;
            }
            seen[root as usize] = true;
            roots += 1;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &(i, j) in &chosen {
                    let w = if i == v { j } else if j == v { i } else { continue };
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        increasing &= v < w;
                        stack.push(w);
                    }
                }
            }
        }
        if roots + chosen.len() == n && increasing {
            counts[n - chosen.len()] += 1;
        }
    }
    counts
}

#[test]
fn enumeration_matches_brute_force() {
    let mut graphs = all_graphs_upto(4);
    graphs.extend(random_graphs(SEED ^ 1, 40, 7));
    for g in &graphs {
        assert_eq!(count_if(g), brute_if_counts(g), "{:?}", g.edges());
    }
}

#[test]
fn complete_graph_counts_are_stirling_numbers() {
    for n in 1..=7 {
        let by_cycles = brute_stirling_row(n);
        for (k, &c) in by_cycles.iter().enumerate() {
            assert_eq!(enumerate_if(&OrderedGraph::complete(n), k).unwrap().len() as u64, c);
        }
    }
}

#[test]
fn forest_permutation_bijection() {
    for n in 1..=6 {
        let k = OrderedGraph::complete(n);
        let mut seen = HashSet::new();
        for c in 0..=n as usize {
            for f in enumerate_if(&k, c).unwrap() {
                let p = forest_to_permutation(&f).unwrap();
                assert_eq!(p.cycle_count(), c);
                assert_eq!(permutation_to_forest(&p), f);
                assert!(seen.insert(p.images()));
            }
        }
        let all = permutations(n);
        assert_eq!(seen.len(), all.len());
        for images in all {
            let p = Permutation::from_images(&images).unwrap();
            assert_eq!(p.cycle_count(), cycle_count(&images));
            assert_eq!(forest_to_permutation(&permutation_to_forest(&p)).unwrap(), p);
        }
    }
}

#[test]
fn permutation_psi_is_local_and_injective() {
    for n in 1..=5 {
        let perms: Vec<Permutation> =
            permutations(n).iter().map(|p| Permutation::from_images(p).unwrap()).collect();
        type Images = HashSet<(Vec<u32>, Vec<u32>)>;
        let mut images: BTreeMap<(usize, usize), Images> = BTreeMap::new();
        for s in &perms {
            for t in perms.iter().filter(|t| s.cycle_count() < t.cycle_count()) {
                let r = permutation_psi(s, t).unwrap();
                assert!(r.spectators_unchanged, "{s} {t}");
                assert_eq!(r.sigma_p.cycle_count(), s.cycle_count() + 1);
                assert_eq!(r.tau_p.cycle_count(), t.cycle_count() - 1);
                let key = (s.cycle_count(), t.cycle_count());
                assert!(images.entry(key).or_default().insert((r.sigma_p.images(), r.tau_p.images())));
            }
        }
    }
}

#[test]
fn stirling_rows_are_log_concave_and_signed() {
    for n in 1..=8u32 {
        let row = stirling_row(n);
        assert_eq!(row.unsigned.iter().sum::<u64>(), (1..=n as u64).product::<u64>());
        for k in 1..n as usize {
            let c = &row.unsigned;
            assert!(c[k] * c[k] >= c[k - 1] * c[k + 1], "n={n} k={k}");
        }
        for (k, (&u, &s)) in row.unsigned.iter().zip(&row.signed).enumerate() {
            let sign = if (n as usize - k).is_multiple_of(2) { 1 } else { -1 };
            assert_eq!(s, sign * u as i64);
        }
    }
}

fn graph_strategy() -> impl Strategy<Value = OrderedGraph> {
    (2u32..=6, any::<u16>()).prop_map(|(n, mask)| {
        let pairs: Vec<(u32, u32)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        let edges = pairs.into_iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, e)| e);
        OrderedGraph::new(n, edges).unwrap()
    })
}

proptest! {
    #[test]
    fn total_forest_count_is_product(g in graph_strategy()) {
        let total: u64 = count_if(&g).iter().sum();
        let product: u64 = g.vertices().map(|j| 1 + g.smaller_neighbors(j).len() as u64).product();
        prop_assert_eq!(total, product);
        prop_assert!(isf_factorization_check(&g).equal);
    }

    #[test]
    fn psi_moves_one_edge(g in graph_strategy(), pick in any::<(prop::sample::Index, prop::sample::Index)>(), kl in (0usize..6, 0usize..6)) {
        let n = g.n() as usize;
        let k = 1 + kl.0 % (n - 1);
        let l = k + 1 + kl.1 % (n - k);
        let (fa, fb) = (enumerate_if(&g, k).unwrap(), enumerate_if(&g, l).unwrap());
        prop_assume!(!fa.is_empty() && !fb.is_empty());
        let (a, b) = (pick.0.get(&fa), pick.1.get(&fb));
        let t = psi(&g, a, b).unwrap();
        prop_assert!(a.contains(t.e) && !t.a_out.contains(t.e) && t.b_out.contains(t.e));
        prop_assert_eq!(&t.a_out, &a.without(t.e));
        prop_assert_eq!(t.a_out.component_count(), k + 1);
        prop_assert_eq!(t.b_out.component_count(), l - 1);
        prop_assert!(t.a_out.is_increasing() && t.b_out.is_increasing());
        let before: BTreeSet<_> = a.edges().iter().chain(b.edges()).collect();
        let after: BTreeSet<_> = t.a_out.edges().iter().chain(t.b_out.edges()).collect();
        prop_assert_eq!(before, after);
        prop_assert!(t.violations(a, b).is_empty());
    }

    #[test]
    fn forest_json_round_trip(g in graph_strategy(), c in 1usize..7, pick in any::<prop::sample::Index>()) {
        let forests = enumerate_if(&g, c.min(g.n() as usize)).unwrap();
        prop_assume!(!forests.is_empty());
        let f: &Forest = pick.get(&forests);
        let text = serde_json::to_string(f).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Forest>(&text).unwrap(), f);
    }
}
