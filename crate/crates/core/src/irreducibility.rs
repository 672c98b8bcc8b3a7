//! Irreducibility of partitions by pairwise closure.
//!
//! A partition is reducible when some proper subfamily with at least two
//! members has a union that is itself a region. For every pair the closure
//! keeps absorbing members that meet the running join; a proper closure is
//! a witness, and if every closure is everything the partition is
//! irreducible.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::collection::SubcubeCollection;
use crate::error::{precondition, Result};
use crate::cube::Subcube;

/// Regions of a finite space closed under taking joins.
pub trait Region: Clone + PartialEq + fmt::Debug {
    fn intersects(&self, other: &Self) -> bool;
    /// Smallest region containing both.
    fn hull(&self, other: &Self) -> Self;
    /// `other` is a subset of `self`.
    fn includes(&self, other: &Self) -> bool;
    fn dim(&self) -> u32;
    fn ambient_dim(&self) -> u32;
    /// Points per unit of dimension.
    fn base(&self) -> u32;

    fn is_whole(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    fn volume(&self) -> BigUint {
        BigUint::from(self.base()).pow(self.dim())
    }
}

impl Region for Subcube {
    fn intersects(&self, other: &Self) -> bool {
        !self.disjoint_unchecked(other)
    }
    fn hull(&self, other: &Self) -> Self {
        self.join_unchecked(other)
    }
    fn includes(&self, other: &Self) -> bool {
        self.contains_unchecked(other)
    }
    fn dim(&self) -> u32 {
        self.dimension()
    }
    fn ambient_dim(&self) -> u32 {
        self.len() as u32
    }
    fn base(&self) -> u32 {
        self.q() as u32
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducibilityWitness<E> {
    /// Indices into the tested member list, ascending.
    pub members: Vec<usize>,
    pub join: E,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Irreducibility<E> {
    Irreducible,
    Reducible(ReducibilityWitness<E>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrreducibilityVerdict<E> {
    pub result: Irreducibility<E>,
    pub pairs_examined: u64,
}

impl<E> IrreducibilityVerdict<E> {
    pub fn is_irreducible(&self) -> bool {
        matches!(self.result, Irreducibility::Irreducible)
    }

    pub fn witness(&self) -> Option<&ReducibilityWitness<E>> {
        match &self.result {
            Irreducibility::Reducible(w) => Some(w),
            Irreducibility::Irreducible => None,
        }
    }
}

/// Closure seeded by members `i` and `j`: indices (ascending) and join.
pub fn closure<E: Region>(members: &[E], i: usize, j: usize) -> (Vec<usize>, E) {
    let mut inside = vec![false; members.len()];
    inside[i] = true;
    inside[j] = true;
    let mut join = members[i].hull(&members[j]);
    let mut changed = true;
    while changed && !join.is_whole() {
        changed = false;
        for (k, m) in members.iter().enumerate() {
            if !inside[k] && m.intersects(&join) {
                inside[k] = true;
                join = join.hull(m);
                changed = true;
            }
        }
    }
    if join.is_whole() {
        // every member meets the whole space
        return ((0..members.len()).collect(), join);
    }
    let idx = inside.iter().enumerate().filter_map(|(k, &b)| b.then_some(k)).collect();
    (idx, join)
}

fn generic_partition<E: Region>(members: &[E]) -> bool {
    let Some(first) = members.first() else { return false };
    let total = members.iter().fold(BigUint::zero(), |acc, m| acc + m.volume());
    let whole = BigUint::from(first.base()).pow(first.ambient_dim());
    total == whole
        && (0..members.len()).all(|i| (i + 1..members.len()).all(|j| !members[i].intersects(&members[j])))
}

/// Irreducibility of a partition given as a member list.
///
/// The witness is the closure of the lexicographically first pair whose
/// closure is proper.
pub fn test_irreducible_members<E: Region>(members: &[E]) -> IrreducibilityVerdict<E> {
    debug_assert!(generic_partition(members), "members must form a partition");
    let m = members.len();
    let mut pairs = 0u64;
    for i in 0..m {
        for j in i + 1..m {
            pairs += 1;
            let (idx, join) = closure(members, i, j);
            if idx.len() < m {
                return IrreducibilityVerdict {
                    result: Irreducibility::Reducible(ReducibilityWitness { members: idx, join }),
                    pairs_examined: pairs,
                };
            }
        }
    }
    IrreducibilityVerdict { result: Irreducibility::Irreducible, pairs_examined: pairs }
}

pub fn test_irreducible(f: &SubcubeCollection) -> IrreducibilityVerdict<Subcube> {
    test_irreducible_members(f.members())
}

pub fn is_irreducible(f: &SubcubeCollection) -> bool {
    test_irreducible(f).is_irreducible()
}

/// Checks a witness independently: size bounds, disjointness, containment
/// in the join, and exact volume equality.
pub fn verify_witness<E: Region>(members: &[E], w: &ReducibilityWitness<E>) -> bool {
    let g = &w.members;
    if g.len() < 2 || g.len() >= members.len() || g.windows(2).any(|p| p[0] >= p[1]) {
        return false;
    }
    if g.iter().any(|&k| k >= members.len() || !w.join.includes(&members[k])) {
        return false;
    }
    let disjoint = (0..g.len()).all(|a| (a + 1..g.len()).all(|b| !members[g[a]].intersects(&members[g[b]])));
    let total = g.iter().fold(BigUint::zero(), |acc, &k| acc + members[k].volume());
    disjoint && total == w.join.volume()
}

/// Largest member list accepted by [`partial_reducibility`].
pub const PARTIAL_CAP: usize = 20;

/// Exhaustive search for a subfamily (`|G| >= 2`, possibly all members)
/// whose union is a region other than the whole space.
///
/// Returns the first such subfamily in subset-mask order.
pub fn partial_reducibility<E: Region>(members: &[E], allow_whole: bool) -> Result<Option<ReducibilityWitness<E>>> {
    let m = members.len();
    if m > PARTIAL_CAP {
        return precondition(format!("partial collection of {m} members exceeds the cap of {PARTIAL_CAP}"));
    }
    if !(0..m).all(|i| (i + 1..m).all(|j| !members[i].intersects(&members[j]))) {
        return precondition("members are not pairwise disjoint");
    }
    for set in 1u32..(1u32 << m) {
        if set.count_ones() < 2 {
            continue;
        }
        let idx: Vec<usize> = (0..m).filter(|&k| set >> k & 1 == 1).collect();
        let mut join = members[idx[0]].clone();
        let mut total = BigUint::zero();
        for &k in &idx {
            join = join.hull(&members[k]);
            total += members[k].volume();
        }
        if (allow_whole || !join.is_whole()) && total == join.volume() {
            return Ok(Some(ReducibilityWitness { members: idx, join }));
        }
    }
    Ok(None)
}

/// True when no subfamily of the partial collection unions to a proper region.
pub fn is_partial_irreducible<E: Region>(members: &[E]) -> Result<bool> {
    Ok(partial_reducibility(members, false)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(words: &[&str]) -> SubcubeCollection {
        SubcubeCollection::parse_words(2, words).unwrap()
    }

    #[test]
    fn three_member_square_is_reducible() {
        let f = c(&["0*", "10", "11"]);
        let v = test_irreducible(&f);
        let w = v.witness().unwrap();
        assert_eq!(w.members, vec![1, 2]);
        assert_eq!(w.join.to_string(), "1*");
        assert!(verify_witness(f.members(), w));
    }

    #[test]
    fn minimal_tight_example_is_irreducible() {
        let f = c(&["000", "*01", "1*0", "01*", "111"]);
        let v = test_irreducible(&f);
        assert!(v.is_irreducible());
        assert_eq!(v.pairs_examined, 10);
    }

    #[test]
    fn trivial_partitions() {
        assert!(is_irreducible(&c(&["***"])));
        assert!(is_irreducible(&c(&["0**", "1**"])));
    }

    #[test]
    fn partial_collections() {
        let g = c(&["00", "01"]);
        let w = partial_reducibility(g.members(), false).unwrap().unwrap();
        assert_eq!(w.join.to_string(), "0*");
        let h = c(&["00", "11"]);
        assert!(is_partial_irreducible(h.members()).unwrap());
        let whole = c(&["0*", "1*"]);
        assert!(is_partial_irreducible(whole.members()).unwrap());
        assert!(partial_reducibility(whole.members(), true).unwrap().is_some());
    }
}
