//! Continuous isometry groups of the classical spaces: half-space
//! hyperbolic geometry, circumcenters, Möbius trace classification,
//! dimension-3 witnesses, the commuting-generators recursion, and the exact
//! sphere/projective audits.

pub mod circumcenter;
pub mod h3;
pub mod mobius;
pub mod point;
pub mod rigid;
pub mod sphere;
