//! Increasing forests of `K_n` as permutations of `[n]`, and the Stirling
//! numbers of the first kind.
//!
//! Each tree becomes one cycle: list its vertices in preorder starting from
//! the root, visiting children in decreasing label order. Conversely, in a
//! cycle written from its minimum, the parent of an entry is the nearest
//! smaller entry to its left.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::enumerate::count_if;
use crate::error::{Error, Result};
use crate::graph::{Edge, Forest, OrderedGraph};
use crate::psi::psi;

/// A permutation of `[n]` in canonical cycle form: every cycle starts at its
/// minimum and cycles are sorted by their minima. Fixed points are listed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPermutation")]
pub struct Permutation {
    n: u32,
    cycles: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RawPermutation {
    n: u32,
    cycles: Vec<Vec<u32>>,
}

impl TryFrom<RawPermutation> for Permutation {
    type Error = Error;

    fn try_from(raw: RawPermutation) -> Result<Self> {
        Permutation::from_cycles(raw.n, raw.cycles)
    }
}

impl Permutation {
    /// Accepts only the canonical form.
    pub fn from_cycles(n: u32, cycles: Vec<Vec<u32>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::NonCanonicalCycle(msg));
        let mut seen = vec![false; n as usize + 1];
        for (c, cycle) in cycles.iter().enumerate() {
            let Some(&head) = cycle.first() else {
                return bad("empty cycle".into());
            };
            if cycle.iter().any(|&v| v < head) {
                return bad(format!("cycle {cycle:?} does not start at its minimum"));
            }
            if c > 0 && cycles[c - 1][0] > head {
                return bad("cycles are not sorted by their minima".into());
            }
            for &v in cycle {
                if v == 0 || v > n {
                    return bad(format!("{v} outside 1..={n}"));
                }
                if std::mem::replace(&mut seen[v as usize], true) {
                    return bad(format!("{v} appears twice"));
                }
            }
        }
        if let Some(missing) = (1..=n).find(|&v| !seen[v as usize]) {
            return bad(format!("{missing} is missing"));
        }
        Ok(Permutation { n, cycles })
    }

    /// From the one-line form `images[v - 1] = σ(v)`.
    pub fn from_images(images: &[u32]) -> Result<Self> {
        let n = images.len() as u32;
        crate::graph::check_relabeling(n, images)
            .map_err(|_| Error::NonCanonicalCycle(format!("{images:?} is not a permutation")))?;
        let mut seen = vec![false; n as usize + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v as usize] {
                seen[v as usize] = true;
                cycle.push(v);
                v = images[v as usize - 1];
            }
            cycles.push(cycle);
        }
        Ok(Permutation { n, cycles })
    }

    pub fn identity(n: u32) -> Self {
        Permutation { n, cycles: (1..=n).map(|v| vec![v]).collect() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn images(&self) -> Vec<u32> {
        let mut out = vec![0; self.n as usize];
        for c in &self.cycles {
            for (k, &v) in c.iter().enumerate() {
                out[v as usize - 1] = c[(k + 1) % c.len()];
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            let words: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", words.join(" "))?;
        }
        Ok(())
    }
}

pub fn forest_to_permutation(f: &Forest) -> Result<Permutation> {
    f.check_increasing()?;
    let o = f.orient();
    let mut cycles = Vec::with_capacity(o.roots().len());
    for &root in o.roots() {
        let mut cycle = Vec::new();
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            cycle.push(v);
            // pushing increasing children pops them in decreasing order
            stack.extend_from_slice(o.children(v));
        }
        cycles.push(cycle);
    }
    Ok(Permutation { n: f.n(), cycles })
}

pub fn permutation_to_forest(p: &Permutation) -> Forest {
    let mut edges = Vec::with_capacity(p.n as usize);
    for cycle in &p.cycles {
        let mut stack: Vec<u32> = Vec::new();
        for &v in cycle {
            while stack.last().is_some_and(|&top| top > v) {
                stack.pop();
            }
            if let Some(&parent) = stack.last() {
                edges.push(Edge::new(parent, v).expect("parent is smaller"));
            }
            stack.push(v);
        }
    }
    Forest::from_edges(p.n, edges).expect("nearest-smaller parents form a forest")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StirlingRow {
    pub n: u32,
    pub unsigned: Vec<u64>,
    pub signed: Vec<i64>,
}

/// `c(n, k)` as `|IF_k(K_n)|`, with `s(n, k) = (−1)^{n−k} c(n, k)`.
pub fn stirling_row(n: u32) -> StirlingRow {
    let unsigned = count_if(&OrderedGraph::complete(n));
    let signed = unsigned
        .iter()
        .enumerate()
        .map(|(k, &c)| if (n as usize - k).is_multiple_of(2) { c as i64 } else { -(c as i64) })
        .collect();
    StirlingRow { n, unsigned, signed }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationPsi {
    pub sigma_p: Permutation,
    pub tau_p: Permutation,
    pub broken_cycle: Vec<u32>,
    pub split_into: (Vec<u32>, Vec<u32>),
    pub glued_pair: (Vec<u32>, Vec<u32>),
    pub glued_cycle: Vec<u32>,
    pub spectators_unchanged: bool,
}

fn cycle_diff(from: &Permutation, minus: &Permutation) -> Vec<Vec<u32>> {
    let keep: BTreeSet<&Vec<u32>> = minus.cycles.iter().collect();
    from.cycles.iter().filter(|c| !keep.contains(c)).cloned().collect()
}

fn elements(cycles: &[&Vec<u32>]) -> BTreeSet<u32> {
    cycles.iter().flat_map(|c| c.iter().copied()).collect()
}

/// `Ψ` transported to permutations: one cycle of `σ` breaks in two and two
/// cycles of `τ` merge, while all other cycles are carried over verbatim.
pub fn permutation_psi(sigma: &Permutation, tau: &Permutation) -> Result<PermutationPsi> {
    if sigma.n != tau.n {
        return Err(Error::SizeMismatch(sigma.n, tau.n));
    }
    if sigma.cycle_count() >= tau.cycle_count() {
        return Err(Error::SizeViolation(format!(
            "sigma has {} cycles, tau has {}",
            sigma.cycle_count(),
            tau.cycle_count()
        )));
    }
    let g = OrderedGraph::complete(sigma.n);
    let trace = psi(&g, &permutation_to_forest(sigma), &permutation_to_forest(tau))?;
    let sigma_p = forest_to_permutation(&trace.a_out)?;
    let tau_p = forest_to_permutation(&trace.b_out)?;

    let broken = cycle_diff(sigma, &sigma_p);
    let split = cycle_diff(&sigma_p, sigma);
    let glued = cycle_diff(tau, &tau_p);
    let merged = cycle_diff(&tau_p, tau);
    let spectators_unchanged = broken.len() == 1
        && split.len() == 2
        && glued.len() == 2
        && merged.len() == 1
        && elements(&[&broken[0]]) == elements(&[&split[0], &split[1]])
        && elements(&[&merged[0]]) == elements(&[&glued[0], &glued[1]]);
    let pick = |v: &[Vec<u32>], k: usize| v.get(k).cloned().unwrap_or_default();
    Ok(PermutationPsi {
        broken_cycle: pick(&broken, 0),
        split_into: (pick(&split, 0), pick(&split, 1)),
        glued_pair: (pick(&glued, 0), pick(&glued, 1)),
        glued_cycle: pick(&merged, 0),
        sigma_p,
        tau_p,
        spectators_unchanged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: u32, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn f1() -> Forest {
        Forest::new(9, [(1, 2), (1, 4), (4, 7), (4, 9), (3, 5), (3, 6), (6, 8)]).unwrap()
    }

    #[test]
    fn worked_forest_to_permutation() {
        let p = forest_to_permutation(&f1()).unwrap();
        assert_eq!(p, perm(9, &[&[1, 4, 9, 7, 2], &[3, 6, 8, 5]]));
        assert_eq!(p.to_string(), "(1 4 9 7 2)(3 6 8 5)");
        assert_eq!(permutation_to_forest(&p), f1());
    }

    #[test]
    fn small_conversions() {
        assert_eq!(forest_to_permutation(&Forest::empty(3)).unwrap(), Permutation::identity(3));
        let star = Forest::new(3, [(1, 2), (1, 3)]).unwrap();
        let path = Forest::new(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(forest_to_permutation(&star).unwrap(), perm(3, &[&[1, 3, 2]]));
        assert_eq!(forest_to_permutation(&path).unwrap(), perm(3, &[&[1, 2, 3]]));
        assert_eq!(permutation_to_forest(&perm(3, &[&[1, 2, 3]])), path);
        assert_eq!(permutation_to_forest(&Permutation::identity(4)), Forest::empty(4));
        let bad = Forest::new(3, [(1, 3), (2, 3)]).unwrap();
        assert!(matches!(forest_to_permutation(&bad), Err(Error::NotIncreasing { .. })));
    }

    #[test]
    fn canonical_form_enforced() {
        let err = |cycles: Vec<Vec<u32>>| Permutation::from_cycles(3, cycles).unwrap_err();
        assert!(matches!(err(vec![vec![2, 1], vec![3]]), Error::NonCanonicalCycle(_)));
        assert!(matches!(err(vec![vec![2], vec![1], vec![3]]), Error::NonCanonicalCycle(_)));
        assert!(matches!(err(vec![vec![1, 2]]), Error::NonCanonicalCycle(_)));
        assert!(matches!(err(vec![vec![1, 2], vec![2, 3]]), Error::NonCanonicalCycle(_)));
        assert!(matches!(err(vec![vec![1, 2, 3], vec![]]), Error::NonCanonicalCycle(_)));
        let p: std::result::Result<Permutation, _> =
            serde_json::from_str(r#"{"n":3,"cycles":[[1,3,2]]}"#);
        assert_eq!(p.unwrap(), perm(3, &[&[1, 3, 2]]));
        assert!(serde_json::from_str::<Permutation>(r#"{"n":3,"cycles":[[3,1],[2]]}"#).is_err());
    }

    #[test]
    fn images_round_trip() {
        let p = perm(5, &[&[1, 4, 2], &[3], &[5]]);
        assert_eq!(p.images(), vec![4, 1, 3, 2, 5]);
        assert_eq!(Permutation::from_images(&p.images()).unwrap(), p);
    }

    #[test]
    fn stirling_rows() {
        assert_eq!(stirling_row(3).unsigned, vec![0, 2, 3, 1]);
        assert_eq!(stirling_row(4).unsigned, vec![0, 6, 11, 6, 1]);
        assert_eq!(stirling_row(4).signed, vec![0, -6, 11, -6, 1]);
        assert_eq!(stirling_row(0).unsigned, vec![1]);
    }

    #[test]
    fn permutation_psi_examples() {
        let r = permutation_psi(&perm(3, &[&[1, 3, 2]]), &Permutation::identity(3)).unwrap();
        assert_eq!(r.sigma_p, perm(3, &[&[1, 2], &[3]]));
        assert_eq!(r.tau_p, perm(3, &[&[1, 3], &[2]]));
        assert_eq!(r.broken_cycle, vec![1, 3, 2]);
        assert_eq!(r.glued_pair, (vec![1], vec![3]));
        assert!(r.spectators_unchanged);

        let r = permutation_psi(&perm(2, &[&[1, 2]]), &Permutation::identity(2)).unwrap();
        assert_eq!(r.sigma_p, Permutation::identity(2));
        assert_eq!(r.tau_p, perm(2, &[&[1, 2]]));

        assert!(matches!(
            permutation_psi(&Permutation::identity(2), &Permutation::identity(2)),
            Err(Error::SizeViolation(_))
        ));
        assert!(matches!(
            permutation_psi(&Permutation::identity(2), &Permutation::identity(3)),
            Err(Error::SizeMismatch(2, 3))
        ));
    }
}
