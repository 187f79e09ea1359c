//! Bockstein bases of Abelian and nilpotent groups, with finite-group
//! oracles, low-degree homology checks and a dimension-profile calculus.

pub mod abelian;
pub mod basis;
pub mod catalog;
pub mod dimension;
pub mod error;
pub mod finite;
pub mod generate;
pub mod homology;
pub mod io;
pub mod nilpotent;
pub mod primes;
pub mod verify;

pub use abelian::{sigma_abelian, AbelianAtom, AbelianGroup};
pub use basis::{BocksteinBasis, BocksteinGroup};
pub use dimension::{DimensionProfile, ExtNat};
pub use error::Error;
pub use finite::FiniteGroup;
pub use nilpotent::{sigma_nilpotent, NilpotentGroupDesc, Tower};
pub use primes::{Prime, PrimeSet};
