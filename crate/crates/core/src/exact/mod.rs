//! Exact-arithmetic matrix and affine-map groups: SL(2,Z) trace
//! certificates, symbolic SO₄ certificates, lattice isometries, finite-field
//! linear actions and the quadratic-field transvection example.

pub mod affine;
pub mod fq;
pub mod glfq;
pub mod lattice;
pub mod matrix;
pub mod scalar;
pub mod sl2z;
pub mod so4;
pub mod transvection;
