//! Exact-arithmetic toolkit for finite-dimensional coalgebras.
//!
//! The crate provides:
//!
//! - [`linalg`]: dense rational matrices and canonical (RREF) subspaces;
//! - [`coalgebra`]: the coalgebra data model `(C, Δ, ε)`, its dual algebra
//!   with convolution product, and the hit actions of functionals on `C`;
//! - [`quiver`]: quivers, path enumeration, and path/monomial coalgebra
//!   builders;
//! - [`filtration`]: Jacobson radicals via the trace form, radical towers,
//!   coradical filtrations via annihilators (cross-checked against wedge
//!   products), Loewy lengths, and Loewy-adapted bases;
//! - [`theorem`]: machine checks for the tensor-monomial depth property of
//!   comultiplications, the independence of right tensorands over a module
//!   basis, and the construction of a functional whose hit action pushes a
//!   gap sequence to large Loewy lengths;
//! - [`campaign`]: seeded verification campaigns over random elements, run
//!   sequentially or data-parallel (feature `parallel`, on by default) with
//!   identical results;
//! - [`format`]: the textual coalgebra/quiver document formats.
//!
//! Everything is computed over exact rationals; no operation rounds.

pub mod campaign;
pub mod coalgebra;
pub mod error;
pub mod filtration;
pub mod format;
pub mod linalg;
pub mod quiver;
pub mod theorem;

pub use error::{Error, Result};
pub use linalg::{Matrix, Scalar, Subspace};
