//! Stable graphs: validation, canonical labeling, automorphisms, enumeration
//! and weightings mod r.

mod canonical;
mod enumerate;
mod graph;
mod json;
mod weighting;

pub(crate) use canonical::{canonical_form, isomorphisms};
pub use canonical::{automorphism_count, canonicalize};
pub(crate) use enumerate::graphs_with_edges;
pub use enumerate::{enumerate_stable_graphs, enumerate_stable_graphs_with_limit, DEFAULT_DIMENSION_LIMIT};
pub use graph::{check_stable, StableGraph};
pub(crate) use weighting::{residue, CycleParametrization};
pub use weighting::{enumerate_weightings, WeightingModR};
