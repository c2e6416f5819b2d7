//! Increasing spanning forests of vertex-ordered graphs and an explicit
//! local injection witnessing strong log-concavity of their generating
//! polynomials.
//!
//! * [`graph`]: ordered graphs, forests, rooting at component minima.
//! * [`poly`]: exact multivariate polynomials over big integers.
//! * [`subset`]: the subset injection `Φ` and the subset pair map.
//! * [`enumerate`]: `IF_k`, `a_k(x)` and `ISF(x, t)`.
//! * [`psi`]: the local injection `Ψ` and its exhaustive verifier.
//! * [`stirling`]: forests of `K_n` as permutations, Stirling numbers.
//! * [`chromatic`]: chromatic polynomials, broken circuits, admissibility.
//! * [`cli`]: the `isf` command-line front end.

pub mod chromatic;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod poly;
pub mod psi;
pub mod stirling;
pub mod subset;

pub use error::{Error, Result};
pub use graph::{Edge, Forest, OrderedGraph, Orientation};
