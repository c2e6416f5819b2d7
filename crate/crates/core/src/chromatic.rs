//! Chromatic polynomials, broken circuits and admissible forests.
//!
//! Edges are ordered lexicographically: `(i, j) < (i', j')` iff `i < i'`, or
//! `i = i'` and `j < j'`. A broken circuit is a circuit with its extremal edge
//! removed; the [`Convention`] says which end.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::isf;
use crate::error::Result;
use crate::graph::{DisjointSets, Edge, Forest, OrderedGraph};

/// Univariate integer polynomial in `t`; index = degree, no trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl TryFrom<Vec<String>> for IntPoly {
    type Error = num_bigint::ParseBigIntError;

    fn try_from(v: Vec<String>) -> std::result::Result<Self, Self::Error> {
        Ok(IntPoly::new(v.iter().map(|s| s.parse()).collect::<std::result::Result<_, _>>()?))
    }
}

impl From<IntPoly> for Vec<String> {
    fn from(p: IntPoly) -> Self {
        p.coeffs.iter().map(BigInt::to_string).collect()
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| c.into()).collect())
    }

    /// `t^m`.
    pub fn power_of_t(m: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); m + 1];
        coeffs[m] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `p(−t)`.
    pub fn at_neg_t(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn scaled(&self, s: i64) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            for (b, cb) in rhs.coeffs.iter().enumerate() {
                out[a + b] += ca * cb;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            match (c.is_negative(), first) {
                (true, _) => f.write_str("-")?,
                (false, false) => f.write_str("+")?,
                (false, true) => {}
            }
            first = false;
            let unit = mag.is_one() && k > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    RemoveMin,
    RemoveMax,
}

impl Convention {
    pub const BOTH: [Convention; 2] = [Convention::RemoveMin, Convention::RemoveMax];
}

/// Edges sorted lexicographically.
pub fn lex_edge_order(g: &OrderedGraph) -> Vec<Edge> {
    // Edge's derived Ord is already (lo, hi) lexicographic.
    g.edges().iter().copied().collect()
}

/// Every circuit (simple cycle of length ≥ 3) as an edge set, sorted.
///
/// Each cycle is discovered once, from its smallest vertex, in the direction
/// whose second vertex is smaller than its last.
pub fn circuits(g: &OrderedGraph) -> Vec<BTreeSet<Edge>> {
    let adj: Vec<Vec<u32>> = (0..=g.n()).map(|v| if v == 0 { vec![] } else { g.neighbors(v) }).collect();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; g.n() as usize + 1];
    fn extend(
        start: u32,
        adj: &[Vec<u32>],
        path: &mut Vec<u32>,
        on_path: &mut [bool],
        out: &mut Vec<BTreeSet<Edge>>,
    ) {
        let v = *path.last().unwrap();
        for &w in &adj[v as usize] {
            if w == start && path.len() >= 3 && path[1] < v {
                let mut cycle: BTreeSet<Edge> =
                    path.windows(2).map(|p| Edge::between(p[0], p[1]).unwrap()).collect();
                cycle.insert(Edge::between(v, start).unwrap());
                out.push(cycle);
            } else if w > start && !on_path[w as usize] {
                on_path[w as usize] = true;
                path.push(w);
                extend(start, adj, path, on_path, out);
                path.pop();
                on_path[w as usize] = false;
            }
        }
    }
    for s in g.vertices() {
        path.push(s);
        on_path[s as usize] = true;
        extend(s, &adj, &mut path, &mut on_path, &mut out);
        on_path[s as usize] = false;
        path.pop();
    }
    out.sort();
    out
}

pub fn broken_circuits(g: &OrderedGraph, convention: Convention) -> Vec<BTreeSet<Edge>> {
    let set: BTreeSet<BTreeSet<Edge>> = circuits(g)
        .into_iter()
        .map(|mut c| {
            match convention {
                Convention::RemoveMin => c.pop_first(),
                Convention::RemoveMax => c.pop_last(),
            };
            c
        })
        .collect();
    set.into_iter().collect()
}

/// True iff no broken circuit is contained in `f`.
pub fn is_nbc(g: &OrderedGraph, f: &Forest, convention: Convention) -> Result<bool> {
    f.check_in_graph(g)?;
    Ok(avoids(&broken_circuits(g, convention), f))
}

fn avoids(broken: &[BTreeSet<Edge>], f: &Forest) -> bool {
    !broken.iter().any(|bc| bc.is_subset(f.edges()))
}

/// Every vertex `v` is good: each child `w` is the smallest vertex of its
/// branch `B(w)` adjacent to `v` in `g`.
pub fn is_admissible_goodvertex(g: &OrderedGraph, f: &Forest) -> Result<bool> {
    f.check_in_graph(g)?;
    Ok(goodvertex(g, f))
}

fn goodvertex(g: &OrderedGraph, f: &Forest) -> bool {
    let o = f.orient();
    g.vertices().all(|v| {
        o.children(v).iter().all(|&w| {
            o.branch(w).into_iter().find(|&u| g.has_edge(u, v)) == Some(w)
        })
    })
}

/// Every spanning forest of `g`, sorted.
pub fn spanning_forests(g: &OrderedGraph) -> Vec<Forest> {
    let edges = lex_edge_order(g);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        idx: usize,
        edges: &[Edge],
        sets: &DisjointSets,
        chosen: &mut Vec<Edge>,
        n: u32,
        out: &mut Vec<Forest>,
    ) {
        if idx == edges.len() {
            out.push(Forest::from_edges(n, chosen.iter().copied()).expect("acyclic by construction"));
            return;
        }
        rec(idx + 1, edges, sets, chosen, n, out);
        let e = edges[idx];
        let mut with = sets.clone();
        if with.union(e.lo(), e.hi()) {
            chosen.push(e);
            rec(idx + 1, edges, &with, chosen, n, out);
            chosen.pop();
        }
    }
    rec(0, &edges, &DisjointSets::new(g.n()), &mut chosen, g.n(), &mut out);
    out.sort();
    out
}

/// Which edge deletion–contraction splits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pivot {
    First,
    Last,
}

/// Simple graph on `0..m` used during deletion–contraction.
#[derive(Clone)]
struct Work {
    m: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Work {
    fn contract(&self, (a, b): (usize, usize)) -> Work {
        // merge b into a, then close the gap left by b
        let relabel = |v: usize| {
            let v = if v == b { a } else { v };
            if v > b {
                v - 1
            } else {
                v
            }
        };
        let edges = self
            .edges
            .iter()
            .filter(|&&e| e != (a, b))
            .map(|&(u, v)| {
                let (u, v) = (relabel(u), relabel(v));
                (u.min(v), u.max(v))
            })
            .collect();
        Work { m: self.m - 1, edges }
    }
}

fn deletion_contraction(w: &Work, pivot: Pivot) -> IntPoly {
    let e = match pivot {
        Pivot::First => w.edges.first(),
        Pivot::Last => w.edges.last(),
    };
    let Some(&e) = e else {
        return IntPoly::power_of_t(w.m);
    };
    let mut deleted = w.clone();
    deleted.edges.remove(&e);
    &deletion_contraction(&deleted, pivot) - &deletion_contraction(&w.contract(e), pivot)
}

pub fn chromatic_polynomial_with(g: &OrderedGraph, pivot: Pivot) -> IntPoly {
    let work = Work {
        m: g.n() as usize,
        edges: g.edges().iter().map(|e| (e.lo() as usize - 1, e.hi() as usize - 1)).collect(),
    };
    deletion_contraction(&work, pivot)
}

/// `P_G(t)` by deletion–contraction.
pub fn chromatic_polynomial(g: &OrderedGraph) -> IntPoly {
    chromatic_polynomial_with(g, Pivot::First)
}

/// `|[t^k] P_G(t)|` for `k = 0..=n`.
pub fn whitney_coefficients(g: &OrderedGraph) -> Vec<BigInt> {
    let p = chromatic_polynomial(g);
    (0..=g.n() as usize).map(|k| p.coeff(k).abs()).collect()
}

fn counts_by_components<'a>(n: u32, forests: impl Iterator<Item = &'a Forest>) -> Vec<u64> {
    let mut counts = vec![0; n as usize + 1];
    for f in forests {
        counts[f.component_count()] += 1;
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WhitneyReport {
    pub convention: Convention,
    pub counts: Vec<u64>,
    #[serde(serialize_with = "crate::poly::decimal::serialize_seq")]
    pub coeffs: Vec<BigInt>,
    pub equal: bool,
}

/// NBC forests counted by components against the chromatic coefficients.
pub fn whitney_check(g: &OrderedGraph, convention: Convention) -> WhitneyReport {
    let broken = broken_circuits(g, convention);
    let forests = spanning_forests(g);
    let counts = counts_by_components(g.n(), forests.iter().filter(|f| avoids(&broken, f)));
    let coeffs = whitney_coefficients(g);
    let equal = counts.iter().zip(&coeffs).all(|(&c, a)| BigInt::from(c) == *a);
    WhitneyReport { convention, counts, coeffs, equal }
}

/// How the good-vertex predicate relates to both NBC conventions on `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityTable {
    #[serde(serialize_with = "crate::poly::decimal::serialize_seq")]
    pub coeffs: Vec<BigInt>,
    pub goodvertex_counts: Vec<u64>,
    pub nbc_min_counts: Vec<u64>,
    pub nbc_max_counts: Vec<u64>,
    pub goodvertex_matches_coeffs: bool,
    /// Forests on which good-vertex and remove_min disagree.
    pub differs_from_min: Vec<Forest>,
    /// Forests on which good-vertex and remove_max disagree.
    pub differs_from_max: Vec<Forest>,
}

pub fn admissibility_table(g: &OrderedGraph) -> AdmissibilityTable {
    let forests = spanning_forests(g);
    let min = broken_circuits(g, Convention::RemoveMin);
    let max = broken_circuits(g, Convention::RemoveMax);
    let good: Vec<bool> = forests.iter().map(|f| goodvertex(g, f)).collect();
    let pick = |keep: &dyn Fn(usize) -> bool| {
        counts_by_components(g.n(), (0..forests.len()).filter(|&i| keep(i)).map(|i| &forests[i]))
    };
    let goodvertex_counts = pick(&|i| good[i]);
    let coeffs = whitney_coefficients(g);
    let differs = |broken: &[BTreeSet<Edge>]| {
        forests
            .iter()
            .zip(&good)
            .filter(|(f, &ok)| avoids(broken, f) != ok)
            .map(|(f, _)| f.clone())
            .collect::<Vec<_>>()
    };
    AdmissibilityTable {
        goodvertex_matches_coeffs: goodvertex_counts
            .iter()
            .zip(&coeffs)
            .all(|(&c, a)| BigInt::from(c) == *a),
        nbc_min_counts: pick(&|i| avoids(&min, &forests[i])),
        nbc_max_counts: pick(&|i| avoids(&max, &forests[i])),
        differs_from_min: differs(&min),
        differs_from_max: differs(&max),
        goodvertex_counts,
        coeffs,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MovableReport {
    pub graph: OrderedGraph,
    pub admissible_forests: usize,
    pub pairs_checked: usize,
    pub all_pairs_ok: bool,
    pub failures: Vec<(Forest, Forest)>,
}

/// Does `e ∈ A\B` exist with `A\{e}` and `B∪{e}` both admissible forests?
pub fn movable_edge(g: &OrderedGraph, a: &Forest, b: &Forest) -> Option<Edge> {
    a.edges().difference(b.edges()).copied().find(|&e| {
        goodvertex(g, &a.without(e)) && b.with(e).is_ok_and(|b2| goodvertex(g, &b2))
    })
}

/// Checks every pair of good-vertex-admissible forests `(A, B)` with fewer
/// components in `A` for a movable edge. `relabeling` maps `v ↦ perm[v-1]`
/// and is applied to `g` first.
pub fn movable_edge_search(g: &OrderedGraph, relabeling: Option<&[u32]>) -> Result<MovableReport> {
    let g = match relabeling {
        Some(perm) => g.relabel(perm)?,
        None => g.clone(),
    };
    let admissible: Vec<Forest> =
        spanning_forests(&g).into_iter().filter(|f| goodvertex(&g, f)).collect();
    let failures: Vec<(Forest, Forest)> = admissible
        .par_iter()
        .flat_map_iter(|a| {
            let (g, admissible) = (&g, &admissible);
            admissible
                .iter()
                .filter(move |b| a.component_count() < b.component_count())
                .filter(move |b| movable_edge(g, a, b).is_none())
                .map(move |b| (a.clone(), b.clone()))
        })
        .collect();
    let pairs_checked = admissible
        .iter()
        .map(|a| admissible.iter().filter(|b| a.component_count() < b.component_count()).count())
        .sum();
    Ok(MovableReport {
        admissible_forests: admissible.len(),
        pairs_checked,
        all_pairs_ok: failures.is_empty(),
        failures,
        graph: g,
    })
}

/// Every vertex's smaller neighbours are pairwise adjacent.
pub fn is_perfect_elimination_order(g: &OrderedGraph) -> bool {
    g.vertices().all(|j| {
        let s = g.smaller_neighbors(j);
        s.iter().enumerate().all(|(x, &u)| s[x + 1..].iter().all(|&v| g.has_edge(u, v)))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeoReport {
    pub holds: bool,
    pub natural_order_is_peo: bool,
    pub lhs: IntPoly,
    pub rhs: IntPoly,
}

/// `ISF(1, t)` against `(−1)^n P_G(−t)`.
pub fn peo_isf_check(g: &OrderedGraph) -> PeoReport {
    let lhs = IntPoly::new(isf(g).at_ones());
    let sign = if g.n().is_multiple_of(2) { 1 } else { -1 };
    let rhs = chromatic_polynomial(g).at_neg_t().scaled(sign);
    PeoReport { holds: lhs == rhs, natural_order_is_peo: is_perfect_elimination_order(g), lhs, rhs }
}
