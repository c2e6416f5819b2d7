//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use isf_logconcave::OrderedGraph;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x15F_2024;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` graphs with `2 <= n <= max_n` vertices, each edge kept with
/// probability one half.
pub fn random_graphs(seed: u64, count: usize, max_n: u32) -> Vec<OrderedGraph> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=max_n);
            let edges: Vec<(u32, u32)> = (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .filter(|_| rng.random_bool(0.5))
                .collect();
            OrderedGraph::new(n, edges).unwrap()
        })
        .collect()
}

/// Every graph on the vertex set `[n]` for `1 <= n <= max_n`.
pub fn all_graphs_upto(max_n: u32) -> Vec<OrderedGraph> {
    (1..=max_n).flat_map(|n| OrderedGraph::complete(n).spanning_subgraphs().collect::<Vec<_>>()).collect()
}

/// All permutations of `1..=n` in one-line notation, by Heap's algorithm.
pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut a: Vec<u32> = (1..=n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n as usize];
    let mut i = 0;
    while i < n as usize {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Number of cycles of a permutation in one-line notation.
pub fn cycle_count(images: &[u32]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut cycles = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = images[v] as usize - 1;
        }
    }
    cycles
}

/// `c(n, k)` for `k = 0..=n` by counting cycles over all `n!` permutations.
pub fn brute_stirling_row(n: u32) -> Vec<u64> {
    let mut row = vec![0u64; n as usize + 1];
    for p in permutations(n) {
        row[cycle_count(&p)] += 1;
    }
    row
}

/// Every labelled tree on `[n]`, decoded from its Prüfer sequence.
pub fn labelled_trees(n: u32) -> Vec<OrderedGraph> {
    if n <= 2 {
        let edges: Vec<(u32, u32)> = if n == 2 { vec![(1, 2)] } else { vec![] };
        return vec![OrderedGraph::new(n, edges).unwrap()];
    }
    let len = n as usize - 2;
    let total = (n as usize).pow(len as u32);
    (0..total)
        .map(|mut code| {
            let seq: Vec<u32> = (0..len)
                .map(|_| {
                    let d = (code % n as usize) as u32 + 1;
                    code /= n as usize;
                    d
                })
                .collect();
            let mut degree = vec![1u32; n as usize + 1];
            for &s in &seq {
                degree[s as usize] += 1;
            }
            let mut edges = Vec::new();
            for &s in &seq {
                let leaf = (1..=n).find(|&v| degree[v as usize] == 1).unwrap();
                edges.push((leaf.min(s), leaf.max(s)));
                degree[leaf as usize] -= 1;
                degree[s as usize] -= 1;
            }
            let rest: Vec<u32> = (1..=n).filter(|&v| degree[v as usize] == 1).collect();
            edges.push((rest[0], rest[1]));
            OrderedGraph::new(n, edges).unwrap()
        })
        .collect()
}

/// A vertex map sending a breadth-first order from vertex 1 to `1..=n`.
pub fn bfs_relabeling(g: &OrderedGraph) -> Vec<u32> {
    let n = g.n();
    let mut label = vec![0u32; n as usize];
    let mut next = 1;
    for start in 1..=n {
        if label[start as usize - 1] != 0 {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([start]);
        label[start as usize - 1] = next;
        next += 1;
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if label[w as usize - 1] == 0 {
                    label[w as usize - 1] = next;
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    label
}

pub fn set(items: &[u32]) -> BTreeSet<u32> {
    items.iter().copied().collect()
}
