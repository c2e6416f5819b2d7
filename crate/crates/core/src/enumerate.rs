//! Increasing spanning forests by component count, the polynomials `a_k(x)`
//! and the generating polynomial `ISF(x, t)`.
//!
//! Enumeration exploits the product structure of `ISF`: every vertex `j`
//! independently either starts a new component or picks one smaller
//! neighbour as its parent. Each such choice vector is an increasing forest
//! and each increasing forest arises from exactly one of them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{e, Edge, Forest, OrderedGraph};
use crate::poly::{MultiPoly, NonnegReport, TPoly, Term};

fn check_k(g: &OrderedGraph, k: usize) -> Result<()> {
    if k > g.n() as usize {
        return Err(Error::IndexViolation(format!("k = {k} outside 0..={}", g.n())));
    }
    Ok(())
}

/// Walks every parent choice vector with exactly `k` roots.
fn walk_choices(g: &OrderedGraph, k: usize, mut visit: impl FnMut(&[Edge])) {
    let n = g.n() as usize;
    let options: Vec<Vec<u32>> = (1..=g.n()).map(|j| g.smaller_neighbors(j)).collect();
    let mut edges = Vec::with_capacity(n);
    fn rec(
        j: usize,
        roots_left: usize,
        options: &[Vec<u32>],
        edges: &mut Vec<Edge>,
        visit: &mut dyn FnMut(&[Edge]),
    ) {
        let remaining = options.len() - j;
        if roots_left > remaining {
            return;
        }
        if remaining == 0 {
            visit(edges);
            return;
        }
        if roots_left > 0 {
            rec(j + 1, roots_left - 1, options, edges, visit);
        }
        let v = j as u32 + 1;
        for &i in &options[j] {
            edges.push(e(i, v));
            rec(j + 1, roots_left, options, edges, visit);
            edges.pop();
        }
    }
    rec(0, k, &options, &mut edges, &mut visit);
}

/// `IF_k(g)`, sorted lexicographically by edge list.
pub fn enumerate_if(g: &OrderedGraph, k: usize) -> Result<Vec<Forest>> {
    check_k(g, k)?;
    let mut out = Vec::new();
    walk_choices(g, k, |edges| {
        out.push(Forest::from_edges(g.n(), edges.iter().copied()).expect("parent choices are acyclic"));
    });
    out.sort();
    Ok(out)
}

/// `|IF_k(g)|` for `k = 0..=n`, without materializing the forests.
pub fn count_if(g: &OrderedGraph) -> Vec<u64> {
    (0..=g.n() as usize)
        .map(|k| {
            let mut count = 0u64;
            walk_choices(g, k, |_| count += 1);
            count
        })
        .collect()
}

/// `a_k(x) = Σ_{F ∈ IF_k} Π_{e ∈ F} x_e`.
pub fn a_poly(g: &OrderedGraph, k: usize) -> Result<MultiPoly> {
    check_k(g, k)?;
    let mut p = MultiPoly::zero();
    walk_choices(g, k, |edges| {
        let m = edges.iter().map(|&e| crate::poly::Var::Edge(e)).collect::<Vec<_>>();
        p.add_term(m.into(), 1.into());
    });
    Ok(p)
}

/// `ISF(x, t) = Σ_k a_k(x) t^k`.
pub fn isf(g: &OrderedGraph) -> TPoly {
    let n = g.n() as usize;
    TPoly::new((0..=n).map(|k| a_poly(g, k).expect("k in range")).collect(), n + 1)
}

/// `Π_j (t + Σ_{i<j, (i,j) ∈ E} x_(i,j))`, expanded.
pub fn isf_product(g: &OrderedGraph) -> TPoly {
    g.vertices().fold(TPoly::one(), |acc, j| {
        let mut c = MultiPoly::zero();
        for i in g.smaller_neighbors(j) {
            c = &c + &MultiPoly::edge_var(e(i, j));
        }
        acc.mul(&TPoly::t_plus(c))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub equal: bool,
    pub lhs: TPoly,
    pub rhs: TPoly,
}

pub fn isf_factorization_check(g: &OrderedGraph) -> FactorizationReport {
    let lhs = isf(g);
    let rhs = isf_product(g);
    FactorizationReport { equal: lhs == rhs, lhs, rhs }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogConcavityReport {
    pub p: usize,
    pub q: usize,
    pub is_nonneg: bool,
    pub witness: Option<Term>,
}

fn check_pq(n: usize, p: usize, q: usize) -> Result<()> {
    if !(0 < p && p <= q && q < n) {
        return Err(Error::IndexViolation(format!("need 0 < p <= q < n, got p={p} q={q} n={n}")));
    }
    Ok(())
}

fn logconcavity_from(a: &[MultiPoly], p: usize, q: usize) -> LogConcavityReport {
    let diff = &(&a[p] * &a[q]) - &(&a[p - 1] * &a[q + 1]);
    let NonnegReport { is_nonneg, witness } = diff.nonneg_report();
    LogConcavityReport { p, q, is_nonneg, witness }
}

/// Coefficient signs of `a_p a_q − a_{p−1} a_{q+1}`.
pub fn strong_logconcavity_check(g: &OrderedGraph, p: usize, q: usize) -> Result<LogConcavityReport> {
    check_pq(g.n() as usize, p, q)?;
    let mut a = vec![MultiPoly::zero(); q + 2];
    for k in [p - 1, p, q, q + 1] {
        a[k] = a_poly(g, k)?;
    }
    Ok(logconcavity_from(&a, p, q))
}

/// [`strong_logconcavity_check`] for every `0 < p <= q < n`.
pub fn strong_logconcavity_all(g: &OrderedGraph) -> Vec<LogConcavityReport> {
    let n = g.n() as usize;
    let a = isf(g).coeffs().to_vec();
    let mut out = Vec::new();
    for p in 1..n {
        for q in p..n {
            out.push(logconcavity_from(&a, p, q));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, Var};

    fn brute_force_if(g: &OrderedGraph, k: usize) -> Vec<Forest> {
        let mut out: Vec<Forest> = g
            .spanning_subgraphs()
            .filter_map(|h| Forest::from_edges(g.n(), h.edges().iter().copied()).ok())
            .filter(|f| f.is_increasing() && f.component_count() == k)
            .collect();
        out.sort();
        out
    }

    fn forest(n: u32, edges: &[(u32, u32)]) -> Forest {
        Forest::new(n, edges.iter().copied()).unwrap()
    }

    fn xe(i: u32, j: u32) -> MultiPoly {
        MultiPoly::edge_var(e(i, j))
    }

    #[test]
    fn enumerate_k3() {
        let k3 = OrderedGraph::complete(3);
        assert_eq!(
            enumerate_if(&k3, 1).unwrap(),
            vec![forest(3, &[(1, 2), (1, 3)]), forest(3, &[(1, 2), (2, 3)])]
        );
        assert_eq!(enumerate_if(&k3, 3).unwrap(), vec![Forest::empty(3)]);
        assert!(enumerate_if(&k3, 0).unwrap().is_empty());
        assert!(matches!(enumerate_if(&k3, 4), Err(Error::IndexViolation(_))));
    }

    #[test]
    fn k4_counts() {
        let k4 = OrderedGraph::complete(4);
        assert_eq!(count_if(&k4), vec![0, 6, 11, 6, 1]);
        let lens: Vec<usize> = (0..=4).map(|k| enumerate_if(&k4, k).unwrap().len()).collect();
        assert_eq!(lens, vec![0, 6, 11, 6, 1]);
    }

    #[test]
    fn enumeration_matches_generate_and_filter() {
        for g in OrderedGraph::complete(5).spanning_subgraphs() {
            for k in 0..=5 {
                assert_eq!(enumerate_if(&g, k).unwrap(), brute_force_if(&g, k), "{g:?} k={k}");
            }
        }
    }

    #[test]
    fn total_count_is_product_of_choices() {
        for g in OrderedGraph::complete(5).spanning_subgraphs() {
            let total: u64 = count_if(&g).iter().sum();
            let product: u64 =
                g.vertices().map(|j| 1 + g.smaller_neighbors(j).len() as u64).product();
            assert_eq!(total, product);
        }
    }

    #[test]
    fn a_poly_examples() {
        let k3 = OrderedGraph::complete(3);
        assert_eq!(a_poly(&k3, 2).unwrap(), &(&xe(1, 2) + &xe(1, 3)) + &xe(2, 3));
        assert_eq!(
            a_poly(&k3, 1).unwrap(),
            &(&xe(1, 2) * &xe(1, 3)) + &(&xe(1, 2) * &xe(2, 3))
        );
        for n in 0..=4 {
            let g = OrderedGraph::complete(n);
            assert_eq!(a_poly(&g, n as usize).unwrap(), MultiPoly::one());
        }
        let a1 = a_poly(&OrderedGraph::complete(4), 1).unwrap();
        assert!(a1.terms().all(|t| t.coef == 1.into()));
        assert!(a1
            .terms()
            .all(|t| t.vars.vars().windows(2).all(|w| w[0] != w[1])));
    }

    #[test]
    fn factorization_examples() {
        let k3 = OrderedGraph::complete(3);
        let r = isf_factorization_check(&k3);
        assert!(r.equal);
        let hand = TPoly::t_plus(MultiPoly::zero())
            .mul(&TPoly::t_plus(xe(1, 2)))
            .mul(&TPoly::t_plus(&xe(1, 3) + &xe(2, 3)));
        assert_eq!(r.rhs, hand);

        let r = isf_factorization_check(&OrderedGraph::edgeless(3));
        assert!(r.equal);
        let t3 = TPoly::new(vec![MultiPoly::zero(), MultiPoly::zero(), MultiPoly::zero(), MultiPoly::one()], 4);
        assert_eq!(r.lhs, t3);

        let path = OrderedGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let r = isf_factorization_check(&path);
        assert!(r.equal);
        let hand = TPoly::t_plus(MultiPoly::zero())
            .mul(&TPoly::t_plus(xe(1, 2)))
            .mul(&TPoly::t_plus(xe(2, 3)));
        assert_eq!(r.lhs, hand);
    }

    #[test]
    fn logconcavity_examples() {
        let k3 = OrderedGraph::complete(3);
        assert!(strong_logconcavity_check(&k3, 2, 2).unwrap().is_nonneg);
        assert!(strong_logconcavity_check(&k3, 1, 1).unwrap().is_nonneg);
        assert!(strong_logconcavity_check(&OrderedGraph::complete(4), 2, 3).unwrap().is_nonneg);
        assert!(strong_logconcavity_check(&k3, 0, 1).is_err());
        assert!(strong_logconcavity_check(&k3, 2, 1).is_err());
        assert!(strong_logconcavity_check(&k3, 1, 3).is_err());
    }

    #[test]
    fn k3_square_difference_by_hand() {
        // a_2^2 - a_1 a_3 with a_2 = x12 + x13 + x23 and a_1 = x12 x13 + x12 x23
        let k3 = OrderedGraph::complete(3);
        let r = strong_logconcavity_check(&k3, 2, 2).unwrap();
        assert!(r.witness.is_none());
        let a = isf(&k3);
        let d = &(&a.coeff(2) * &a.coeff(2)) - &(&a.coeff(1) * &a.coeff(3));
        let m = Monomial::new(vec![Var::Edge(e(1, 2)), Var::Edge(e(1, 3))]);
        assert_eq!(d.coefficient(&m), 1.into());
        let sq = Monomial::new(vec![Var::Edge(e(1, 2)), Var::Edge(e(1, 2))]);
        assert_eq!(d.coefficient(&sq), 1.into());
    }

    #[test]
    fn all_pairs_matches_single_checks() {
        let g = OrderedGraph::new(4, [(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        for r in strong_logconcavity_all(&g) {
            assert_eq!(r, strong_logconcavity_check(&g, r.p, r.q).unwrap());
        }
    }
}
