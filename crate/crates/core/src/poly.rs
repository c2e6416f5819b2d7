//! Exact sparse multivariate polynomials with big-integer coefficients.
//!
//! Variables are either edge variables `x_(i,j)` or index variables `x_i`.
//! Monomials are multisets of variables, ordered graded-lexicographically;
//! that order is also the serialization order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Edge;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Var {
    Index(u32),
    Edge(Edge),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Index(i) => write!(f, "x{i}"),
            Var::Edge(e) => write!(f, "x{e}"),
        }
    }
}

/// A sorted multiset of variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Var>")]
pub struct Monomial(Vec<Var>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut vars: Vec<Var>) -> Self {
        vars.sort_unstable();
        Monomial(vars)
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        // merge of two sorted lists
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        while let (Some(x), Some(y)) = (a.peek(), b.peek()) {
            if x <= y {
                out.push(*a.next().unwrap());
            } else {
                out.push(*b.next().unwrap());
            }
        }
        out.extend(a);
        out.extend(b);
        Monomial(out)
    }
}

impl From<Vec<Var>> for Monomial {
    fn from(vars: Vec<Var>) -> Self {
        Monomial::new(vars)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// One serialized term of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub vars: Monomial,
    #[serde(with = "decimal")]
    pub coef: BigInt,
}

pub(crate) mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize_seq<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(BigInt::to_string))
    }

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawPoly", into = "RawPoly")]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawPoly {
    terms: Vec<Term>,
}

impl From<RawPoly> for MultiPoly {
    fn from(raw: RawPoly) -> Self {
        let mut p = MultiPoly::zero();
        for t in raw.terms {
            p.add_term(t.vars, t.coef);
        }
        p
    }
}

impl From<MultiPoly> for RawPoly {
    fn from(p: MultiPoly) -> Self {
        RawPoly { terms: p.terms().collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonnegReport {
    pub is_nonneg: bool,
    pub witness: Option<Term>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MultiPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiPoly::monomial(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::monomial(Monomial(vec![v]), 1)
    }

    pub fn edge_var(e: Edge) -> Self {
        MultiPoly::var(Var::Edge(e))
    }

    pub fn index_var(i: u32) -> Self {
        MultiPoly::var(Var::Index(i))
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, c.into());
        p
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in canonical (graded lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(m, c)| Term { vars: m.clone(), coef: c.clone() })
    }

    /// Value with every variable set to 1.
    pub fn at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn nonneg_report(&self) -> NonnegReport {
        let witness = self
            .terms
            .iter()
            .find(|(_, c)| c.is_negative())
            .map(|(m, c)| Term { vars: m.clone(), coef: c.clone() });
        NonnegReport { is_nonneg: witness.is_none(), witness }
    }

    /// `e_k(x_1, ..., x_n)`.
    pub fn elementary_symmetric(n: u32, k: u32) -> Result<Self> {
        if k > n {
            return Err(Error::BadDegree { n, k });
        }
        let mut p = MultiPoly::zero();
        let mut chosen = Vec::with_capacity(k as usize);
        fn rec(start: u32, n: u32, k: u32, chosen: &mut Vec<Var>, p: &mut MultiPoly) {
            if chosen.len() == k as usize {
                p.add_term(Monomial(chosen.clone()), BigInt::one());
                return;
            }
            let remaining = k - chosen.len() as u32;
            for i in start..=n + 1 - remaining {
                chosen.push(Var::Index(i));
                rec(i + 1, n, k, chosen, p);
                chosen.pop();
            }
        }
        rec(1, n, k, &mut chosen, &mut p);
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if k > 0 { "+" } else { "" };
            let mag = c.abs();
            f.write_str(sign)?;
            match (mag.is_one(), m.degree()) {
                (true, 0) => write!(f, "1")?,
                (true, _) => write!(f, "{m}")?,
                (false, 0) => write!(f, "{mag}")?,
                (false, _) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.times(mb)).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { terms: acc }
    }
}

/// A polynomial in `t` whose coefficients are [`MultiPoly`]s; index = power of `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TPoly {
    coeffs: Vec<MultiPoly>,
}

impl TPoly {
    /// Pads with zeros to length `len`.
    pub fn new(mut coeffs: Vec<MultiPoly>, len: usize) -> Self {
        if coeffs.len() < len {
            coeffs.resize(len, MultiPoly::zero());
        }
        TPoly { coeffs }
    }

    pub fn one() -> Self {
        TPoly { coeffs: vec![MultiPoly::one()] }
    }

    /// `t + c`.
    pub fn t_plus(c: MultiPoly) -> Self {
        TPoly { coeffs: vec![c, MultiPoly::one()] }
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> MultiPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Integer coefficients in `t` after setting every `x` to 1.
    pub fn at_ones(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(MultiPoly::at_ones).collect()
    }

    pub fn mul(&self, rhs: &TPoly) -> TPoly {
        let mut coeffs = vec![MultiPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, pa) in self.coeffs.iter().enumerate() {
            for (b, pb) in rhs.coeffs.iter().enumerate() {
                if !pa.is_zero() && !pb.is_zero() {
                    coeffs[a + b] = &coeffs[a + b] + &(pa * pb);
                }
            }
        }
        TPoly { coeffs }
    }
}
