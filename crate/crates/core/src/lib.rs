//! Exact computation of the spherical growth series and the spherical
//! conjugacy growth series of graph products of groups, with an
//! independent brute-force word oracle for cross-validation.
//!
//! The building blocks:
//!
//! * [`series`]: truncated integer power series, the necklace transform
//!   and the Euler totient;
//! * [`rational`] / [`poly`]: rational closed forms over integer
//!   polynomials;
//! * [`graph`]: the simplicial graph and vertex group data;
//! * [`formulas`]: the subset-lattice recursions for both series;
//! * [`oracle`]: breadth-first enumeration of elements and conjugacy
//!   classes through shortlex rewriting;
//! * [`analysis`]: radii of convergence and growth rate estimates.

pub mod analysis;
pub mod formulas;
pub mod graph;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod series;

pub use analysis::{
    check_rate_equality, estimate_rate, rc_necklace, rc_of_rational, rc_sigma,
    root_of_unity_equation, AnalysisError, RateEstimate, RateMethod, RateReport, SeriesFn,
};
pub use formulas::{amalgam_sigma, GrowthEngine, SigmaForm};
pub use graph::{path4, racg_path, GraphError, GraphSpec, GroupKind, Vertex, VertexSubset};
pub use oracle::{
    conjugacy_canonicalize, enumerate_ball, enumerate_conjugacy, enumerate_transversal,
    geodesic_test, shortlex_normalize, CanonicalForm, GroupWord, OracleError, Syllable,
    VertexOrder, DEFAULT_CLOSURE_BUDGET,
};
pub use poly::Poly;
pub use rational::RationalSeries;
pub use series::{euler_phi, neck, ExactRational, SeriesError, TruncatedSeries};
