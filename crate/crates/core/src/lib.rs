//! Analysis toolkit for the fixed-point structure of group actions.
//!
//! Three notions organize everything here: a group of bijections is a GAF
//! when every element has a fixed point, a GAG when some point is fixed by
//! all elements, and fixating when every GAF subgroup is automatically a
//! GAG. The crate decides these properties exactly for finite permutation
//! actions, exact matrix and lattice groups, classical geometries (within
//! stated tolerances), and trees and cell-colored graphs, and ships the
//! constructive fixed-point algorithms behind the positive results.

pub mod checks;
pub mod descriptors;
pub mod exact;
pub mod geo;
pub mod perm;
pub mod tree;
