//! Linear algebra of the double shuffle relations: polynomials, the
//! `S_{n+1}` action through `GL_n(Z)`, the spaces `D_{n,d}`, and truncated
//! generating series of regularized values.

pub mod matrix;
pub mod nullspace;
pub mod perm;
pub mod poly;
pub mod series;
pub mod spaces;
