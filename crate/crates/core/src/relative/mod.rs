//! Admissible bipartite graphs and the relative graph sum for `(P¹, pt)`.

mod bipartite;
mod cohft;
mod enumerate;
mod examples;
mod insertion;
mod localization;
mod series;
mod topology;

pub use bipartite::{genus_of, BipartiteGraph, HalfEdge, HalfEdgeKind, RootType, Side, Vertex};
pub use cohft::{
    check_cohft_axioms, loop_sides, monomial_expansion, AxiomCheck, AxiomFailure, AxiomStatus, CheckRange,
    CohFTFamily, CohFTReport, Mono, MonomialClass, P1PointFragment, TensorClass,
};
pub use enumerate::{enumerate_bipartite, Bounds};
pub use examples::{example_omega_values, log_tangent_degree, loop_axiom_demo, ExampleOmegaValues, LoopDemo};
pub use insertion::{insertion_pairing, pairing_matrix, truncated_basis, InsertionClass, InsertionElement};
pub use localization::{
    assemble_t0, assemble_t0_at, auto_truncation, c_coefficient, c_gamma0, c_gamma0_top, c_gamma_infty, RootConfig,
    RootSet,
};
pub use series::{LaurentClassSeries, Symbol, SymbolMonomial, SymbolPoly};
pub use topology::{rho_minus, TopologicalType};
