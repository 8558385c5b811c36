//! Spanning simplicial complexes of chains of cycles with a pendant forest.
//!
//! The graph model lives in [`chain_graph`]; spanning trees in [`spanning`];
//! the complex and its f-vector in [`complex`]; Hilbert series in
//! [`hilbert`]; facet ideals, primary decomposition and quasi-linear
//! quotient certificates in [`ideal`]. Every formula path has a brute-force
//! counterpart in [`oracle`].

pub mod binomial;
pub mod chain_graph;
pub mod complex;
pub mod edgeset;
pub mod error;
pub mod hilbert;
pub mod ideal;
pub mod oracle;
pub mod spanning;

pub use chain_graph::{ChainGraph, CompositeCycle, EdgeLabel, ForestSpec};
pub use complex::{f_vector_exact, ssc, FVector, SimplicialComplex};
pub use edgeset::EdgeSet;
pub use error::{Error, Result};
pub use hilbert::{hilbert_series, IntPolynomial, RationalSeries};
pub use ideal::{cohen_macaulay_verdict, MonomialIdeal, QuotientCertificate, Verdict};
pub use spanning::{SpanningTree, SpanningTreeSet, TreeClass};
