//! The local injection `Ψ: IF_k × IF_ℓ → IF_{k+1} × IF_{ℓ−1}` for `k < ℓ`.
//!
//! Given increasing forests `A` (k components) and `B` (ℓ components), the
//! subset injection `Φ` applied to `m(A)\m(B)` inside `m(A)Δm(B)` picks a
//! vertex `j` that is a component minimum of `B` but not of `A`. The edge
//! `e` joining `j` to its parent in `A` is then moved from `A` to `B`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::enumerate_if;
use crate::error::{Error, Result};
use crate::graph::{Edge, Forest, OrderedGraph};
use crate::subset::{phi_added_with, Bracketing, GroundSet, SubsetInjection};

/// Every intermediate quantity of one application of `Ψ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiTrace {
    pub m_a: BTreeSet<u32>,
    pub m_b: BTreeSet<u32>,
    pub sym_diff: BTreeSet<u32>,
    pub j: u32,
    pub a_comp: BTreeSet<u32>,
    pub b_comp: BTreeSet<u32>,
    pub i0: u32,
    pub e: Edge,
    pub a_out: Forest,
    pub b_out: Forest,
}

impl PsiTrace {
    /// Lists every violated trace invariant for the input pair `(a, b)`.
    pub fn violations(&self, a: &Forest, b: &Forest) -> Vec<String> {
        let mut out = Vec::new();
        let mut require = |ok: bool, what: &str| {
            if !ok {
                out.push(what.to_owned());
            }
        };
        require(self.m_b.contains(&self.j) && !self.m_a.contains(&self.j), "j in m(B)\\m(A)");
        require(a.contains(self.e) && !b.contains(self.e), "e in A\\B");
        require(self.e.hi() == self.j, "e ends at j");
        require(self.a_comp.first() == Some(&self.i0), "i0 = min A_comp");
        require(self.b_comp.first() == Some(&self.j), "j = min B_comp");
        require(self.a_out == a.without(self.e), "A' = A \\ {e}");
        require(b.with(self.e).as_ref() == Ok(&self.b_out), "B' = B u {e}");
        require(self.a_out.is_increasing() && self.b_out.is_increasing(), "outputs increasing");
        require(
            self.a_out.component_count() == a.component_count() + 1
                && self.b_out.component_count() == b.component_count() - 1,
            "component counts shift by (+1, -1)",
        );
        let (ma2, mb2) = (self.a_out.component_minima(), self.b_out.component_minima());
        let mut expect_a = self.m_a.clone();
        expect_a.insert(self.j);
        let mut expect_b = self.m_b.clone();
        expect_b.remove(&self.j);
        require(ma2 == expect_a && mb2 == expect_b, "minima bookkeeping");
        require(
            ma2.union(&mb2).eq(self.m_a.union(&self.m_b))
                && ma2.intersection(&mb2).eq(self.m_a.intersection(&self.m_b))
                && ma2.symmetric_difference(&mb2).eq(self.sym_diff.iter()),
            "union, intersection and symmetric difference of minima preserved",
        );
        out
    }
}

/// `{j} = Φ(m_A Δ m_B, m_A \ m_B) \ (m_A \ m_B)`.
pub fn select_j_with(
    inj: &dyn SubsetInjection,
    m_a: &BTreeSet<u32>,
    m_b: &BTreeSet<u32>,
) -> Result<u32> {
    if m_a.len() >= m_b.len() {
        return Err(Error::SizeViolation(format!(
            "|m(A)| = {} must be below |m(B)| = {}",
            m_a.len(),
            m_b.len()
        )));
    }
    let sym_diff: BTreeSet<u32> = m_a.symmetric_difference(m_b).copied().collect();
    let a_only: BTreeSet<u32> = m_a.difference(m_b).copied().collect();
    phi_added_with(inj, &GroundSet::from(&sym_diff), &a_only)
}

pub fn select_j(m_a: &BTreeSet<u32>, m_b: &BTreeSet<u32>) -> Result<u32> {
    select_j_with(&Bracketing, m_a, m_b)
}

fn check_input(g: &OrderedGraph, f: &Forest) -> Result<()> {
    f.check_in_graph(g)?;
    f.check_increasing()
}

pub fn psi_with(
    inj: &dyn SubsetInjection,
    g: &OrderedGraph,
    a: &Forest,
    b: &Forest,
) -> Result<PsiTrace> {
    check_input(g, a)?;
    check_input(g, b)?;
    let (m_a, m_b) = (a.component_minima(), b.component_minima());
    let j = select_j_with(inj, &m_a, &m_b)?;
    // j is not a root of A, so it has a parent there; in an increasing forest
    // the root-to-j path ends with the edge (parent(j), j).
    let parent = a.orient().parent(j).expect("j is not a component minimum of A");
    let e = Edge::new(parent, j)?;
    let a_comp = a.component_of(j);
    let b_comp = b.component_of(j);
    let trace = PsiTrace {
        sym_diff: m_a.symmetric_difference(&m_b).copied().collect(),
        i0: *a_comp.first().expect("component contains j"),
        a_out: a.without(e),
        b_out: b.with(e).expect("e joins two components of B"),
        m_a,
        m_b,
        j,
        a_comp,
        b_comp,
        e,
    };
    debug_assert_eq!(trace.violations(a, b), Vec::<String>::new());
    Ok(trace)
}

/// `Ψ(A, B)` with the canonical bracketing injection.
pub fn psi(g: &OrderedGraph, a: &Forest, b: &Forest) -> Result<PsiTrace> {
    psi_with(&Bracketing, g, a, b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub first: (Forest, Forest),
    pub second: (Forest, Forest),
    pub image: (Forest, Forest),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiVerification {
    pub phi: &'static str,
    pub k: usize,
    pub l: usize,
    pub total_pairs: usize,
    pub injective: bool,
    pub local: bool,
    pub weight_preserving: bool,
    pub increasing: bool,
    pub collisions: Vec<Collision>,
    pub violations: Vec<String>,
}

impl PsiVerification {
    pub fn all_ok(&self) -> bool {
        self.injective && self.local && self.weight_preserving && self.increasing
    }
}

fn edge_multiset<'a>(fs: impl IntoIterator<Item = &'a Forest>) -> Vec<Edge> {
    let mut v: Vec<Edge> = fs.into_iter().flat_map(|f| f.edges().iter().copied()).collect();
    v.sort_unstable();
    v
}

/// Applies `Ψ` to every pair in `IF_k × IF_ℓ` and checks locality, weight
/// preservation, increasingness of outputs and injectivity.
///
/// Pairs are processed in parallel; the report does not depend on the
/// thread count.
pub fn verify_psi_with(
    inj: &dyn SubsetInjection,
    g: &OrderedGraph,
    k: usize,
    l: usize,
) -> Result<PsiVerification> {
    if k >= l {
        return Err(Error::SizeViolation(format!("need k < l, got k={k} l={l}")));
    }
    let left = enumerate_if(g, k)?;
    let right = enumerate_if(g, l)?;
    let traces: Vec<(usize, usize, PsiTrace)> = (0..left.len())
        .into_par_iter()
        .flat_map_iter(|x| {
            let (left, right) = (&left, &right);
            (0..right.len()).map(move |y| {
                let t = psi_with(inj, g, &left[x], &right[y]).expect("valid pair");
                (x, y, t)
            })
        })
        .collect();

    let mut report = PsiVerification {
        phi: inj.name(),
        k,
        l,
        total_pairs: traces.len(),
        injective: true,
        local: true,
        weight_preserving: true,
        increasing: true,
        collisions: Vec::new(),
        violations: Vec::new(),
    };
    let mut seen: HashMap<(&Forest, &Forest), (usize, usize)> = HashMap::new();
    for (x, y, t) in &traces {
        let (a, b) = (&left[*x], &right[*y]);
        let local = a.contains(t.e)
            && !b.contains(t.e)
            && t.a_out == a.without(t.e)
            && b.with(t.e).as_ref() == Ok(&t.b_out);
        report.local &= local;
        report.weight_preserving &= edge_multiset([a, b]) == edge_multiset([&t.a_out, &t.b_out]);
        report.increasing &= t.a_out.is_increasing()
            && t.b_out.is_increasing()
            && t.a_out.component_count() == k + 1
            && t.b_out.component_count() == l - 1;
        report
            .violations
            .extend(t.violations(a, b).into_iter().map(|v| format!("{a:?} {b:?}: {v}")));
        if let Some(&(px, py)) = seen.get(&(&t.a_out, &t.b_out)) {
            report.injective = false;
            report.collisions.push(Collision {
                first: (left[px].clone(), right[py].clone()),
                second: (a.clone(), b.clone()),
                image: (t.a_out.clone(), t.b_out.clone()),
            });
        } else {
            seen.insert((&t.a_out, &t.b_out), (*x, *y));
        }
    }
    Ok(report)
}

pub fn verify_psi(g: &OrderedGraph, k: usize, l: usize) -> Result<PsiVerification> {
    verify_psi_with(&Bracketing, g, k, l)
}

/// [`verify_psi_with`] over every `0 <= k < l <= n`.
pub fn verify_psi_all(inj: &dyn SubsetInjection, g: &OrderedGraph) -> Vec<PsiVerification> {
    let n = g.n() as usize;
    (0..=n)
        .flat_map(|k| (k + 1..=n).map(move |l| (k, l)))
        .map(|(k, l)| verify_psi_with(inj, g, k, l).expect("k < l <= n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::e;
    use crate::subset::ReversedBracketing;

    fn s(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    fn forest(n: u32, edges: &[(u32, u32)]) -> Forest {
        Forest::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn select_j_examples() {
        assert_eq!(select_j(&s(&[1]), &s(&[1, 2, 3])).unwrap(), 3);
        assert_eq!(select_j(&s(&[1, 4]), &s(&[1, 2, 3])).unwrap(), 3);
        assert_eq!(select_j(&s(&[]), &s(&[1])).unwrap(), 1);
        assert!(matches!(select_j(&s(&[1, 2]), &s(&[1, 3])), Err(Error::SizeViolation(_))));
    }

    #[test]
    fn psi_examples() {
        let k3 = OrderedGraph::complete(3);
        let t = psi(&k3, &forest(3, &[(1, 2), (1, 3)]), &Forest::empty(3)).unwrap();
        assert_eq!((t.j, t.e, t.i0), (3, e(1, 3), 1));
        assert_eq!(t.a_out, forest(3, &[(1, 2)]));
        assert_eq!(t.b_out, forest(3, &[(1, 3)]));

        let t2 = psi(&k3, &forest(3, &[(1, 2), (2, 3)]), &Forest::empty(3)).unwrap();
        assert_eq!((t2.j, t2.e), (3, e(2, 3)));
        assert_eq!(t2.a_out, forest(3, &[(1, 2)]));
        assert_eq!(t2.b_out, forest(3, &[(2, 3)]));
        assert_ne!((t.a_out, t.b_out), (t2.a_out, t2.b_out));

        let k2 = OrderedGraph::complete(2);
        let t = psi(&k2, &forest(2, &[(1, 2)]), &Forest::empty(2)).unwrap();
        assert_eq!((t.j, t.e), (2, e(1, 2)));
        assert_eq!((t.a_out, t.b_out), (Forest::empty(2), forest(2, &[(1, 2)])));
    }

    #[test]
    fn psi_rejects_bad_inputs() {
        let k3 = OrderedGraph::complete(3);
        let a = forest(3, &[(1, 2)]);
        assert!(matches!(psi(&k3, &a, &a), Err(Error::SizeViolation(_))));
        let descending = forest(3, &[(1, 3), (2, 3)]);
        assert!(matches!(
            psi(&k3, &descending, &Forest::empty(3)),
            Err(Error::NotIncreasing { vertex: 2, parent: 3 })
        ));
        let path = OrderedGraph::new(3, [(1, 2)]).unwrap();
        assert_eq!(
            psi(&path, &forest(3, &[(1, 3)]), &Forest::empty(3)),
            Err(Error::NotInGraph(e(1, 3)))
        );
    }

    #[test]
    fn moved_edge_is_last_on_root_path() {
        let g = OrderedGraph::complete(5);
        for a in enumerate_if(&g, 2).unwrap() {
            for b in enumerate_if(&g, 3).unwrap() {
                let t = psi(&g, &a, &b).unwrap();
                let path = a.orient().path_from_root(t.j);
                assert_eq!(path[0], t.i0);
                let last = &path[path.len() - 2..];
                assert_eq!(e(last[0], last[1]), t.e);
            }
        }
    }

    #[test]
    fn verify_examples() {
        let r = verify_psi(&OrderedGraph::complete(4), 1, 2).unwrap();
        assert_eq!(r.total_pairs, 66);
        assert!(r.all_ok() && r.collisions.is_empty() && r.violations.is_empty());
        let r = verify_psi(&OrderedGraph::complete(3), 2, 3).unwrap();
        assert_eq!(r.total_pairs, 3);
        assert!(r.all_ok());
        assert!(matches!(
            verify_psi(&OrderedGraph::complete(3), 2, 2),
            Err(Error::SizeViolation(_))
        ));
    }

    #[test]
    fn both_families_on_k4() {
        for inj in [&Bracketing as &dyn SubsetInjection, &ReversedBracketing] {
            for r in verify_psi_all(inj, &OrderedGraph::complete(4)) {
                assert!(r.all_ok(), "{} k={} l={}", r.phi, r.k, r.l);
            }
        }
    }

    /// A deliberately broken selection collides, so the harness can fail.
    #[test]
    fn harness_detects_non_injective_phi() {
        struct First;
        impl SubsetInjection for First {
            fn name(&self) -> &'static str {
                "first-free"
            }
            fn added_position(&self, in_x: &[bool]) -> usize {
                in_x.iter().position(|&b| !b).unwrap()
            }
        }
        let found = verify_psi_all(&First, &OrderedGraph::complete(4))
            .iter()
            .any(|r| !r.injective && !r.collisions.is_empty());
        assert!(found);
    }
}
