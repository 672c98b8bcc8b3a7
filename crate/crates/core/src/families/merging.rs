//! Merging, the minimum-size families and their twists.

use std::collections::HashSet;

use super::{finish, listing, prefixed, require_binary_partition, word};
use crate::collection::SubcubeCollection;
use crate::error::{precondition, Error, Result};
use crate::cube::{Subcube, Symbol};
use crate::symmetry::CubeSymmetry;

/// `{0x : x in F0 \ F1} + {1x : x in F1 \ F0} + {*x : x in both}`.
pub fn merge(f0: &SubcubeCollection, f1: &SubcubeCollection) -> Result<SubcubeCollection> {
    require_binary_partition(f0, "first operand")?;
    require_binary_partition(f1, "second operand")?;
    if f0.n() != f1.n() {
        return Err(Error::ShapeMismatch { q1: 2, n1: f0.n() as u8, q2: 2, n2: f1.n() as u8 });
    }
    let in0: HashSet<&Subcube> = f0.members().iter().collect();
    let in1: HashSet<&Subcube> = f1.members().iter().collect();
    let mut out = Vec::with_capacity(f0.len() + f1.len());
    for x in f0.members() {
        let lead = if in1.contains(x) { None } else { Some(0) };
        out.push(prefixed(&[lead], x));
    }
    for x in f1.members().iter().filter(|x| !in0.contains(x)) {
        out.push(prefixed(&[Some(1)], x));
    }
    finish(out, f0.n() + 1)
}

pub fn rotate_left(f: &SubcubeCollection) -> SubcubeCollection {
    let members = f.members().iter().map(|m| m.rotate_left(1)).collect();
    SubcubeCollection::new(f.q(), f.n(), members).expect("rotation keeps the shape")
}

/// `{1*^{n-1}, 00*^{n-2}, 01*^{n-2}}`.
fn first_split(n: usize) -> SubcubeCollection {
    let mut one = vec![None; n];
    one[0] = Some(1);
    let mut zz = vec![None; n];
    zz[0] = Some(0);
    zz[1] = Some(0);
    let mut zo = zz.clone();
    zo[1] = Some(1);
    SubcubeCollection::new(2, n, vec![word(&one), word(&zz), word(&zo)]).expect("shape")
}

fn s3() -> SubcubeCollection {
    listing(&["000", "*01", "1*0", "01*", "111"])
}

/// Tight irreducible partitions of size `2n - 1`.
pub fn family_s(n: usize) -> Result<SubcubeCollection> {
    if n < 3 {
        return precondition("family S needs n >= 3");
    }
    let mut f = s3();
    for len in 3..n {
        f = merge(&first_split(len), &f)?;
    }
    Ok(f.sorted())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightVariant {
    A,
    B,
    C,
    D,
}

impl std::str::FromStr for WeightVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(WeightVariant::A),
            "B" => Ok(WeightVariant::B),
            "C" => Ok(WeightVariant::C),
            "D" => Ok(WeightVariant::D),
            _ => precondition(format!("unknown weight variant `{s}`")),
        }
    }
}

fn rotated_merges(base: SubcubeCollection, n: usize) -> Result<SubcubeCollection> {
    let mut f = base;
    for len in 3..n {
        f = rotate_left(&merge(&f, &first_split(len))?);
    }
    Ok(f)
}

/// Size `2n - 1` partitions with prescribed low weights.
///
/// `A` has weight vector `(1, n-1, n-1, 0, ..)`, `D` starts from the same
/// base as [`family_s`], `B` and `C` flip coordinates of `A`.
pub fn family_weight(n: usize, variant: WeightVariant) -> Result<SubcubeCollection> {
    if n < 3 {
        return precondition("weight families need n >= 3");
    }
    let a = || rotated_merges(listing(&["*00", "001", "01*", "110", "1*1"]), n);
    let f = match variant {
        WeightVariant::A => a()?,
        WeightVariant::B => CubeSymmetry::flips(n, &[0]).apply_collection(&a()?)?,
        WeightVariant::C => CubeSymmetry::flips(n, &[0, 2]).apply_collection(&a()?)?,
        WeightVariant::D => rotated_merges(s3(), n)?,
    };
    Ok(f.sorted())
}

/// Positions `(i, j)` when `s, t` differ exactly at a value clash `i` and
/// at a position `j` where `t` has a star.
pub fn nfs_pair(s: &Subcube, t: &Subcube) -> Option<(usize, usize)> {
    if s.q() != 2 || s.same_shape(t).is_err() {
        return None;
    }
    let diff: Vec<usize> = (0..s.len()).filter(|&k| s.symbol(k) != t.symbol(k)).collect();
    if diff.len() != 2 {
        return None;
    }
    let clash = |k: usize| s.symbol(k).is_some() && t.symbol(k).is_some();
    let star_in_t = |k: usize| t.symbol(k).is_none();
    let (a, b) = (diff[0], diff[1]);
    if clash(a) && star_in_t(b) {
        Some((a, b))
    } else if clash(b) && star_in_t(a) {
        Some((b, a))
    } else {
        None
    }
}

/// The other way of splitting `s + t` into two subcubes.
pub fn nfs_flip(s: &Subcube, t: &Subcube) -> Result<(Subcube, Subcube)> {
    let Some((i, j)) = nfs_pair(s, t) else {
        return precondition(format!("({s}, {t}) is not an nfs-pair"));
    };
    let mut s2: Vec<Symbol> = s.symbols();
    let mut t2: Vec<Symbol> = t.symbols();
    s2[i] = None;
    s2[j] = s.symbol(j);
    t2[i] = t.symbol(i);
    t2[j] = s2[j].map(|v| 1 - v);
    Ok((word(&s2), word(&t2)))
}

/// `{*x : x in F, x != s, t} + {bs, bt, b's', b't'}` where `(s', t')` is the
/// nfs-flip of `(s, t)` and `b'` is the complement of `b`.
pub fn twist(f: &SubcubeCollection, s: &Subcube, t: &Subcube, b: u8) -> Result<SubcubeCollection> {
    require_binary_partition(f, "twisted partition")?;
    if b > 1 {
        return precondition("twist bit must be 0 or 1");
    }
    if !f.contains_member(s) || !f.contains_member(t) {
        return precondition("twist pair must belong to the partition");
    }
    let (s2, t2) = nfs_flip(s, t)?;
    let mut out: Vec<Subcube> =
        f.members().iter().filter(|x| *x != s && *x != t).map(|x| prefixed(&[None], x)).collect();
    out.push(prefixed(&[Some(b)], s));
    out.push(prefixed(&[Some(b)], t));
    out.push(prefixed(&[Some(1 - b)], &s2));
    out.push(prefixed(&[Some(1 - b)], &t2));
    super::finish(out, f.n() + 1)
}
