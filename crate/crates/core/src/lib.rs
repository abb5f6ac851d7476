//! Computational group theory for generalised Fitting subgroups of finite
//! permutation groups and of inverse systems (towers) of finite groups.

pub mod caps;
pub mod chain;
pub mod corpus;
pub mod error;
pub mod fitting;
pub mod group;
pub mod hom;
pub mod io;
pub mod perm;
pub mod primes;
pub mod report;
pub mod lattice;
pub mod scan;
pub mod supernatural;
pub mod suites;
pub mod sylow;
pub mod table;
pub mod tower;

pub use caps::Caps;
pub use error::{CapKind, Error, Result};
pub use group::FiniteGroup;
pub use hom::Homomorphism;
pub use perm::Perm;
