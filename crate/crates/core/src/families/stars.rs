//! Star-merging: families with large minimum dimension and homogeneous
//! families of growing length.

use super::{family_s, finish, listing, require_binary_partition, word};
use crate::collection::SubcubeCollection;
use crate::error::{precondition, Result};
use crate::cube::{Subcube, Symbol};

fn split_last(s: &Subcube) -> (Vec<Symbol>, Symbol) {
    let mut v = s.symbols();
    let last = v.pop().expect("nonempty word");
    (v, last)
}

fn assemble(parts: &[&[Symbol]]) -> Subcube {
    word(&parts.concat())
}

/// `{*t** : t* in F} + {0tb*, 1t*b : tb in F}`, length `n + 2`.
pub fn merge_stars(f: &SubcubeCollection) -> Result<SubcubeCollection> {
    require_binary_partition(f, "star-merge input")?;
    let mut out = Vec::with_capacity(2 * f.len());
    for m in f.members() {
        let (t, last) = split_last(m);
        match last {
            None => out.push(assemble(&[&[None], &t, &[None, None]])),
            Some(b) => {
                out.push(assemble(&[&[Some(0)], &t, &[Some(b), None]]));
                out.push(assemble(&[&[Some(1)], &t, &[None, Some(b)]]));
            }
        }
    }
    finish(out, f.n() + 2)
}

/// Tight irreducible partitions with minimum dimension `(n-3)/2` for odd
/// `n` and `(n-2)/2` for even `n >= 6`.
pub fn min_dim_family(n: usize) -> Result<SubcubeCollection> {
    let (mut f, mut len) = match n {
        4 => return family_s(4),
        _ if n >= 3 && n % 2 == 1 => (family_s(3)?, 3),
        _ if n >= 6 => (
            listing(&[
                "0*0*1*", "00**0*", "001*1*", "010*0*", "0110**", "1**0*1", "10***0", "10*1*1", "11*0*0", "1101**",
                "*111**",
            ]),
            6,
        ),
        _ => return precondition(format!("no minimum-dimension construction for n = {n}")),
    };
    while len < n {
        f = merge_stars(&f)?;
        len += 2;
    }
    Ok(f.sorted())
}

/// One pass of `t* -> ***t`, `tb -> b*0t, *b1t`.
fn pump_once(f: &SubcubeCollection) -> Result<SubcubeCollection> {
    let mut out = Vec::with_capacity(2 * f.len());
    for m in f.members() {
        let (t, last) = split_last(m);
        match last {
            None => out.push(assemble(&[&[None, None, None], &t])),
            Some(b) => {
                out.push(assemble(&[&[Some(b), None, Some(0)], &t]));
                out.push(assemble(&[&[None, Some(b), Some(1)], &t]));
            }
        }
    }
    finish(out, f.n() + 2)
}

/// From a homogeneous `(n, k)` partition to a homogeneous `(3n, 2k)` one.
pub fn homogeneous_pump(f: &SubcubeCollection) -> Result<SubcubeCollection> {
    require_binary_partition(f, "pump input")?;
    let mut g = f.clone();
    for _ in 0..f.n() {
        g = pump_once(&g)?;
    }
    Ok(g.sorted())
}

/// The sixteen-member homogeneous partition of length 6 and codimension 4.
pub fn homogeneous_6_4() -> SubcubeCollection {
    listing(&[
        "0000**", "001**1", "01*01*", "01**00", "0*01*1", "0**110", "*010*0", "*0*100", "1101**", "111**0", "10*11*",
        "10**01", "1*00*0", "1**011", "*111*1", "*1*001",
    ])
    .sorted()
}
