//! Exact computation of Koszul homology, multitors and excess modules for
//! intersections of complete intersections in affine space, together with
//! checks of the self-intersection and excess intersection formulas.

pub mod cli;
pub mod complexes;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod intersect;
pub mod modules;
pub mod ring;

pub use error::{Error, Result};
