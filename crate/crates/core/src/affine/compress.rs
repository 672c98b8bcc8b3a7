//! Compressing irreducible subcube partitions into affine ones, and the
//! inductive family of small tight irreducible affine partitions.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;

use super::{AffinePartition, AffineSubspace};
use crate::collection::SubcubeCollection;
use crate::cube::{Subcube, Symbol};
use crate::error::{precondition, Error, Result};
use crate::families::{family_s, rotate_left};
use crate::irreducibility::{is_irreducible, partial_reducibility};

#[derive(Debug, Clone)]
pub struct Compression {
    pub avsp: AffinePartition,
    /// The star patterns of the per-class subcube joins have empty
    /// intersection, which guarantees tightness.
    pub tightness_condition: bool,
}

fn require_irreducible_partition(f: &SubcubeCollection) -> Result<()> {
    if f.q() != 2 {
        return Err(Error::RequiresBinary(f.q()));
    }
    if !f.is_partition() {
        return precondition("input must be a subcube partition");
    }
    if !is_irreducible(f) {
        return precondition("input must be irreducible");
    }
    Ok(())
}

/// Member indices grouped by star pattern, patterns in increasing mask order.
fn pattern_classes(f: &SubcubeCollection) -> BTreeMap<u64, Vec<usize>> {
    let mut classes: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (k, m) in f.members().iter().enumerate() {
        classes.entry(m.star_mask()).or_default().push(k);
    }
    classes
}

/// The union as an affine subspace, if it is one.
fn affine_union(parts: &[&Subcube]) -> Result<Option<AffineSubspace>> {
    let mut join = AffineSubspace::from_subcube(parts[0])?;
    let mut total = BigUint::from(0u32);
    for s in parts {
        join = join.join(&AffineSubspace::from_subcube(s)?);
        total += s.measure();
    }
    Ok((total == join.measure()).then_some(join))
}

fn pattern_name(mask: u64, n: usize) -> String {
    let stars: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", stars.join(","))
}

pub fn tightness_condition(f: &SubcubeCollection) -> bool {
    let mut common = u64::MAX;
    for idx in pattern_classes(f).values() {
        let m = f.members();
        let join = idx.iter().fold(m[idx[0]], |acc, &k| acc.join(&m[k]).expect("same shape"));
        common &= join.star_mask();
    }
    common == 0
}

/// One affine subspace per star pattern: the union of that pattern class.
pub fn compress(f: &SubcubeCollection) -> Result<Compression> {
    require_irreducible_partition(f)?;
    let mut members = Vec::new();
    for (mask, idx) in pattern_classes(f) {
        let parts: Vec<&Subcube> = idx.iter().map(|&k| &f.members()[k]).collect();
        match affine_union(&parts)? {
            Some(g) => members.push(g),
            None => {
                return precondition(format!(
                    "the class with star pattern {} is not an affine subspace",
                    pattern_name(mask, f.n())
                ))
            }
        }
    }
    Ok(Compression { avsp: AffinePartition::new(f.n(), members)?, tightness_condition: tightness_condition(f) })
}

/// Compression with an explicit grouping of member indices. Each group must
/// lie in one pattern class and have an affine union, and within each
/// class no several groups may unite to an affine subspace.
pub fn compress_with_grouping(f: &SubcubeCollection, groups: &[Vec<usize>]) -> Result<AffinePartition> {
    require_irreducible_partition(f)?;
    let mut seen = vec![false; f.len()];
    let mut by_class: BTreeMap<u64, Vec<AffineSubspace>> = BTreeMap::new();
    for g in groups {
        let Some(&first) = g.first() else {
            return precondition("empty group");
        };
        for &k in g {
            if k >= f.len() || std::mem::replace(&mut seen[k], true) {
                return precondition(format!("index {k} is out of range or used twice"));
            }
        }
        let mask = f.members()[first].star_mask();
        if g.iter().any(|&k| f.members()[k].star_mask() != mask) {
            return precondition("a group mixes star patterns");
        }
        let parts: Vec<&Subcube> = g.iter().map(|&k| &f.members()[k]).collect();
        let Some(u) = affine_union(&parts)? else {
            return precondition(format!("group {g:?} is not an affine subspace"));
        };
        by_class.entry(mask).or_default().push(u);
    }
    if seen.iter().any(|&b| !b) {
        return precondition("grouping does not cover every member");
    }
    for (mask, class) in &by_class {
        if partial_reducibility(class, false)?.is_some() {
            return precondition(format!("groups of pattern {} are reducible", pattern_name(*mask, f.n())));
        }
    }
    AffinePartition::new(f.n(), by_class.into_values().flatten().collect())
}

fn word(symbols: &[Symbol]) -> Subcube {
    Subcube::from_symbols(2, symbols).expect("binary symbols")
}

/// Size `m + k m'` tight irreducible affine partition of length `n + 2k`,
/// where `m` counts the star patterns of `h` and `m'` those not starring
/// the first coordinate.
pub fn avsp_inductive(f: &SubcubeCollection, h: &SubcubeCollection, k: usize) -> Result<Compression> {
    require_irreducible_partition(f)?;
    require_irreducible_partition(h)?;
    let n = f.n();
    if h.n() != n || n < 2 {
        return precondition("both partitions need the same length n >= 2");
    }
    let lead_star = |x: &SubcubeCollection| -> HashSet<Subcube> {
        x.members().iter().filter(|m| m.symbol(0).is_none()).copied().collect()
    };
    if lead_star(f) != lead_star(h) {
        return precondition("members starting with a star differ");
    }
    if pattern_classes(f).values().chain(pattern_classes(h).values()).any(|c| c.len() > 2) {
        return precondition("some star pattern has more than two members");
    }
    if !tightness_condition(h) {
        return precondition("second partition fails the pattern-join tightness criterion");
    }
    let tails: Vec<Vec<Symbol>> =
        f.members().iter().filter(|m| m.symbol(0).is_none()).map(|m| m.symbols()[1..].to_vec()).collect();
    let mut cur = rotate_left(h);
    for step in 0..k {
        let pad = 2 * step + 1;
        let padded = |t: &[Symbol]| -> Vec<Symbol> { t.iter().copied().chain(std::iter::repeat_n(None, pad)).collect() };
        let star_part: HashSet<Subcube> = tails.iter().map(|t| word(&padded(t))).collect();
        let mut next = Vec::new();
        for t in &star_part {
            next.push(word(&[t.symbols(), vec![None, None]].concat()));
        }
        for t in cur.members().iter().filter(|t| !star_part.contains(t)) {
            next.push(word(&[t.symbols(), vec![Some(0), None]].concat()));
        }
        for s in f.members() {
            if let Some(b) = s.symbol(0) {
                next.push(word(&[padded(&s.symbols()[1..]), vec![Some(1), Some(b)]].concat()));
            }
        }
        next.sort();
        cur = SubcubeCollection::new(2, n + 2 * step + 2, next)?;
    }
    compress(&cur)
}

fn t6() -> SubcubeCollection {
    SubcubeCollection::parse_words(
        2,
        &["*0110*", "*1101*", "*001*1", "*010*0", "*00**0", "*0*0*1", "**111*", "011*0*", "110*1*", "010***", "11**0*"],
    )
    .expect("valid listing")
}

/// Tight irreducible affine partitions of size `(3n-1)/2` for odd `n`,
/// `6` for `n = 4`, and `3n/2 - 1` for even `n >= 6`.
pub fn avsp_family(n: usize) -> Result<AffinePartition> {
    let c = match n {
        4 => compress(&family_s(4)?)?,
        _ if n >= 3 && n % 2 == 1 => {
            let s3 = family_s(3)?;
            avsp_inductive(&s3, &s3, (n - 3) / 2)?
        }
        _ if n >= 6 => avsp_inductive(&t6(), &t6(), (n - 6) / 2)?,
        _ => return precondition(format!("no affine construction for n = {n}")),
    };
    Ok(c.avsp.sorted())
}
