//! Subcube partitions of `{0..q-1}^n` and affine vector space partitions
//! of `F_2^n`: verification, irreducibility, canonical forms, explicit
//! constructions and exhaustive search.

pub mod affine;
pub mod collection;
pub mod cube;
pub mod error;
pub mod families;
pub mod format;
pub mod irreducibility;
pub mod qary;
pub mod search;
pub mod symmetry;

pub use collection::{CoverFlags, DimStats, StructureFlags, SubcubeCollection, WeightVector};
pub use error::{Error, Result};
pub use irreducibility::{
    is_irreducible, test_irreducible, test_irreducible_members, Irreducibility, IrreducibilityVerdict, Region,
    ReducibilityWitness,
};
pub use cube::{Parity, Subcube, Symbol};
pub use symmetry::{canonical_form, CubeSymmetry};
