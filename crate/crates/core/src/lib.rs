//! Schreier structures on even-regular multigraphs, cylinder measures on rooted graphs, and
//! samplers for invariant random Schreier graphs.

pub mod canon;
pub mod factorize;
pub mod graph;
pub mod io;
pub mod lazy;
pub mod measures;
pub mod neighborhood;
pub mod schreier;
pub mod word;

pub use canon::{automorphisms_fixing_root, canonical_key, isomorphic, orbit_weight, CanonicalKey};
pub use graph::{EdgeId, GraphError, Multigraph, RootedMultigraph, VertexId};
pub use neighborhood::{ball, Labeling, Neighborhood};
pub use schreier::{from_subgroup, Membership, SchreierGraph};
pub use word::{Generator, Word};
