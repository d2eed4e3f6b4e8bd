//! Finite-dimensional Hopf algebras over finite fields and Galois rings:
//! structure constants, axiom checks, bialgebra cohomology, and lifting of
//! semisimple cosemisimple Hopf algebras (with morphisms and R-matrices)
//! from F_q to GR(p^n, m).

pub mod acceptance;
pub mod arith;
pub mod cohomology;
pub mod corpus;
pub mod error;
pub mod hopf;
pub mod io;
pub mod lifting;
pub mod linalg;
pub mod ring;
pub mod tensor;

pub use error::{Error, Result};
