//! Coincidence points of a pair of self-maps on a metric space endowed with
//! a binary relation.
//!
//! The toolkit has three jobs:
//!
//! * **Check**: mechanically verify, on a concrete finite instance, every
//!   hypothesis of the relation-theoretic coincidence theorems (existence,
//!   unique point of coincidence, unique coincidence point, unique common
//!   fixed point), reporting per-condition verdicts with witnesses.
//! * **Solve**: compute coincidence points constructively by the joint
//!   Picard iteration `g(x_{n+1}) = f(x_n)`, with geometric Cauchy error
//!   bounds and a path-contraction certificate for uniqueness.
//! * **Stress**: fuzz the theorems with seeded random instances against a
//!   brute-force oracle, and verify the small relation-algebra propositions
//!   exhaustively.
//!
//! Finite instances live in [`hypothesis::ProblemInstance`] (a validated
//! metric table, an edge-set relation, and two map tables). The two built-in
//! analytic demonstrations over the real line live in [`analytic`].

pub mod analytic;
pub mod cli;
pub mod hypothesis;
pub mod metric;
pub mod oracle;
pub mod relation;
pub mod solver;
pub mod validator;

pub use hypothesis::ProblemInstance;
pub use metric::FiniteMetricSpace;
pub use relation::{FiniteRelation, PointId, SelfMap};
