//! Injections from `k`-subsets to `(k+1)`-subsets of a finite ordered set,
//! with `X ⊂ Φ(X)`, for `k < |Y|/2`.
//!
//! The canonical choice is parenthesis matching: write `(` at each position
//! whose element lies in `X` and `)` elsewhere, match brackets left to right,
//! and add the element sitting at the rightmost unmatched `)`. The unmatched
//! brackets always read `)))...(((`, so flipping the rightmost unmatched `)`
//! makes it the leftmost unmatched `(`, which is how the inverse finds it.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite set of positive integers listed in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroundSet(Vec<u32>);

impl GroundSet {
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) || elements.first() == Some(&0) {
            return Err(Error::BadGroundSet);
        }
        Ok(GroundSet(elements))
    }

    /// `{1, ..., n}`.
    pub fn range(n: u32) -> Self {
        GroundSet((1..=n).collect())
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn indicator(&self, x: &BTreeSet<u32>) -> Result<Vec<bool>> {
        if let Some(bad) = x.iter().find(|v| self.0.binary_search(v).is_err()) {
            return Err(Error::NotASubset(format!("element {bad} of {x:?}")));
        }
        Ok(self.0.iter().map(|v| x.contains(v)).collect())
    }
}

impl From<&BTreeSet<u32>> for GroundSet {
    fn from(s: &BTreeSet<u32>) -> Self {
        GroundSet(s.iter().copied().collect())
    }
}

/// Result of matching a bracket word. Positions are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketState {
    pub open: Vec<bool>,
    pub matched: Vec<(usize, usize)>,
    pub unmatched_close: Vec<usize>,
    pub unmatched_open: Vec<usize>,
}

impl BracketState {
    pub fn new(open: Vec<bool>) -> Self {
        let mut stack = Vec::new();
        let mut matched = Vec::new();
        let mut unmatched_close = Vec::new();
        for (p, &is_open) in open.iter().enumerate() {
            if is_open {
                stack.push(p);
            } else if let Some(q) = stack.pop() {
                matched.push((q, p));
            } else {
                unmatched_close.push(p);
            }
        }
        let state = BracketState { open, matched, unmatched_close, unmatched_open: stack };
        assert!(state.is_chain_shaped(), "unmatched brackets out of order: {state:?}");
        state
    }

    /// Every unmatched `)` precedes every unmatched `(`.
    pub fn is_chain_shaped(&self) -> bool {
        match (self.unmatched_close.last(), self.unmatched_open.first()) {
            (Some(c), Some(o)) => c < o,
            _ => true,
        }
    }
}

/// A family of injections `Φ_{Y,k}` satisfying `X ⊂ Φ(X)`.
///
/// Implementations only see valid inputs: `ground` strictly increasing and
/// `in_x` its indicator for a subset with `|X| < |Y|/2`. They return the
/// position of the element to add.
pub trait SubsetInjection: Sync {
    fn name(&self) -> &'static str;

    fn added_position(&self, in_x: &[bool]) -> usize;
}

/// Parenthesis matching in the natural order of the ground set.
#[derive(Debug, Clone, Copy, Default)]
pub struct Bracketing;

impl SubsetInjection for Bracketing {
    fn name(&self) -> &'static str {
        "bracketing"
    }

    fn added_position(&self, in_x: &[bool]) -> usize {
        let state = BracketState::new(in_x.to_vec());
        *state.unmatched_close.last().expect("|X| < |Y|/2 leaves an unmatched close")
    }
}

/// Parenthesis matching run on the ground set read in decreasing order.
///
/// A second valid family of injections, different from [`Bracketing`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ReversedBracketing;

impl SubsetInjection for ReversedBracketing {
    fn name(&self) -> &'static str {
        "reversed-bracketing"
    }

    fn added_position(&self, in_x: &[bool]) -> usize {
        let reversed: Vec<bool> = in_x.iter().rev().copied().collect();
        in_x.len() - 1 - Bracketing.added_position(&reversed)
    }
}

fn check_size(ground: &GroundSet, x: &BTreeSet<u32>) -> Result<()> {
    if 2 * x.len() >= ground.len() {
        return Err(Error::SizeViolation(format!(
            "|X| = {} must be below |Y|/2 = {}/2",
            x.len(),
            ground.len()
        )));
    }
    Ok(())
}

/// The element `Φ_Y(X) \ X`.
pub fn phi_added_with(
    inj: &dyn SubsetInjection,
    ground: &GroundSet,
    x: &BTreeSet<u32>,
) -> Result<u32> {
    let in_x = ground.indicator(x)?;
    check_size(ground, x)?;
    let p = inj.added_position(&in_x);
    debug_assert!(!in_x[p]);
    Ok(ground.0[p])
}

pub fn phi_with(
    inj: &dyn SubsetInjection,
    ground: &GroundSet,
    x: &BTreeSet<u32>,
) -> Result<BTreeSet<u32>> {
    let added = phi_added_with(inj, ground, x)?;
    let mut out = x.clone();
    out.insert(added);
    Ok(out)
}

/// `Φ_Y(X)` with the canonical bracketing injection.
pub fn phi(ground: &GroundSet, x: &BTreeSet<u32>) -> Result<BTreeSet<u32>> {
    phi_with(&Bracketing, ground, x)
}

/// Inverse of [`phi`] on its image: drop the element at the leftmost
/// unmatched `(`, then confirm the round trip.
pub fn phi_inverse(ground: &GroundSet, xp: &BTreeSet<u32>) -> Result<BTreeSet<u32>> {
    let state = BracketState::new(ground.indicator(xp)?);
    let &p = state.unmatched_open.first().ok_or(Error::NotInImage)?;
    let mut x = xp.clone();
    x.remove(&ground.0[p]);
    match phi(ground, &x) {
        Ok(back) if &back == xp => Ok(x),
        _ => Err(Error::NotInImage),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetPairImage {
    pub x: BTreeSet<u32>,
    pub y: BTreeSet<u32>,
    pub moved: u32,
}

/// `(X, Y) ↦ (X ∪ {i}, Y \ {i})` where `{i} = Φ_{XΔY}(X\Y) \ (X\Y)`.
pub fn subset_pair_map_with(
    inj: &dyn SubsetInjection,
    n: u32,
    x: &BTreeSet<u32>,
    y: &BTreeSet<u32>,
) -> Result<SubsetPairImage> {
    for s in [x, y] {
        if let Some(bad) = s.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::NotASubset(format!("element {bad} outside 1..={n}")));
        }
    }
    if x.len() >= y.len() {
        return Err(Error::SizeViolation(format!(
            "|X| = {} must be below |Y| = {}",
            x.len(),
            y.len()
        )));
    }
    let sym_diff: BTreeSet<u32> = x.symmetric_difference(y).copied().collect();
    let x_only: BTreeSet<u32> = x.difference(y).copied().collect();
    let moved = phi_added_with(inj, &GroundSet::from(&sym_diff), &x_only)?;
    debug_assert!(y.contains(&moved) && !x.contains(&moved));
    let mut xp = x.clone();
    xp.insert(moved);
    let mut yp = y.clone();
    yp.remove(&moved);
    Ok(SubsetPairImage { x: xp, y: yp, moved })
}

pub fn subset_pair_map(n: u32, x: &BTreeSet<u32>, y: &BTreeSet<u32>) -> Result<SubsetPairImage> {
    subset_pair_map_with(&Bracketing, n, x, y)
}

/// All `k`-subsets of `ground`, in lexicographic order.
pub fn k_subsets(ground: &[u32], k: usize) -> Vec<BTreeSet<u32>> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    fn rec(ground: &[u32], k: usize, start: usize, chosen: &mut Vec<u32>, out: &mut Vec<BTreeSet<u32>>) {
        if chosen.len() == k {
            out.push(chosen.iter().copied().collect());
            return;
        }
        for p in start..ground.len() {
            if ground.len() - p < k - chosen.len() {
                break;
            }
            chosen.push(ground[p]);
            rec(ground, k, p + 1, chosen, out);
            chosen.pop();
        }
    }
    rec(ground, k, 0, &mut chosen, &mut out);
    out
}
