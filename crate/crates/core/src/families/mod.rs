//! Explicit constructions of binary subcube partitions.
//!
//! Every generator returns its members sorted (star greatest).

mod gray;
mod merging;
mod points;
mod stars;

pub use gray::{
    complement_last_pair, gray_decode, gray_encode, has_complementation_property, maximal_family, perezhogin_step,
    special_perfect_matching, GrayLetter,
};
pub use merging::{family_s, family_weight, merge, nfs_flip, nfs_pair, rotate_left, twist, WeightVariant};
pub use points::{cubic, lagarias_shor, xor_extend};
pub use stars::{homogeneous_6_4, homogeneous_pump, merge_stars, min_dim_family};

use crate::collection::SubcubeCollection;
use crate::error::{precondition, Error, Result};
use crate::cube::{Subcube, Symbol};

pub(crate) fn listing(words: &[&str]) -> SubcubeCollection {
    SubcubeCollection::parse_words(2, words).expect("valid listing")
}

pub(crate) fn finish(members: Vec<Subcube>, n: usize) -> Result<SubcubeCollection> {
    let mut members = members;
    members.sort();
    members.dedup();
    SubcubeCollection::new(2, n, members)
}

pub(crate) fn require_binary_partition(f: &SubcubeCollection, what: &str) -> Result<()> {
    if f.q() != 2 {
        return Err(Error::RequiresBinary(f.q()));
    }
    if !f.is_partition() {
        return precondition(format!("{what} must be a subcube partition"));
    }
    Ok(())
}

pub(crate) fn word(symbols: &[Symbol]) -> Subcube {
    Subcube::from_symbols(2, symbols).expect("binary symbols")
}

/// `prefix` followed by the symbols of `s`.
pub(crate) fn prefixed(prefix: &[Symbol], s: &Subcube) -> Subcube {
    let mut v = prefix.to_vec();
    v.extend(s.symbols());
    word(&v)
}

