//! Exact and high-precision computations with multiple zeta values.
//!
//! Indices follow the nested-sum convention `ζ(k_1,…,k_n) = Σ_{0<m_1<…<m_n}
//! m_1^{-k_1}⋯m_n^{-k_n}`, so an index is admissible when its *last* part is
//! at least 2. The word of an index is `A^{k_n-1}B⋯A^{k_1-1}B`, i.e. the
//! parts appear in reverse order; see [`index::word_of_index`].

pub mod cache;
pub mod combinat;
pub mod combo;
pub mod direct;
pub mod dsh;
pub mod error;
pub mod eval;
pub mod finite;
pub mod index;
pub mod real;
pub mod regularize;
pub mod relations;

pub use combo::{combo_product, MzvCombo, RegPoly};
pub use error::{Error, Result};
pub use eval::Evaluator;
pub use index::{Index, Letter, Word};
pub use real::BigReal;
