//! Gray-code view of the last two coordinates and the length-doubling step
//! used for the maximal-size and perfect-matching families.
//!
//! The four points of `{0,1}^2` are read as `Z4` along the cycle
//! `00, 01, 11, 10`; the four edges are the arcs `{a, a+1}`.

use std::collections::HashSet;

use super::{finish, listing, merge, require_binary_partition, word};
use crate::collection::SubcubeCollection;
use crate::error::{precondition, Error, Result};
use crate::cube::{Subcube, Symbol};
use crate::symmetry::CubeSymmetry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrayLetter {
    Point(u8),
    /// The arc `{a, a+1}`.
    Edge(u8),
}

impl GrayLetter {
    pub fn shift(self, by: u8) -> GrayLetter {
        match self {
            GrayLetter::Point(a) => GrayLetter::Point((a + by) % 4),
            GrayLetter::Edge(a) => GrayLetter::Edge((a + by) % 4),
        }
    }

    pub fn negate(self) -> GrayLetter {
        match self {
            GrayLetter::Point(a) => GrayLetter::Point((4 - a) % 4),
            GrayLetter::Edge(a) => GrayLetter::Edge((7 - a) % 4),
        }
    }
}

const POINTS: [[u8; 2]; 4] = [[0, 0], [0, 1], [1, 1], [1, 0]];

pub fn gray_encode(letter: GrayLetter) -> [Symbol; 2] {
    match letter {
        GrayLetter::Point(a) => {
            let [x, y] = POINTS[a as usize % 4];
            [Some(x), Some(y)]
        }
        GrayLetter::Edge(a) => {
            let [x0, y0] = POINTS[a as usize % 4];
            let [x1, y1] = POINTS[(a as usize + 1) % 4];
            [(x0 == x1).then_some(x0), (y0 == y1).then_some(y0)]
        }
    }
}

/// `None` for `**`.
pub fn gray_decode(pair: [Symbol; 2]) -> Option<GrayLetter> {
    (0..4u8)
        .flat_map(|a| [GrayLetter::Point(a), GrayLetter::Edge(a)])
        .find(|&l| gray_encode(l) == pair)
}

/// Complements both of the last two symbols: adds 2 to the Gray letter.
pub fn complement_last_pair(s: &Subcube) -> Subcube {
    let n = s.len();
    let mut v = s.symbols();
    for x in &mut v[n - 2..] {
        *x = x.map(|b| 1 - b);
    }
    word(&v)
}

/// No member ends in `**`, and no two members differ only by
/// complementing their last two symbols.
pub fn has_complementation_property(f: &SubcubeCollection) -> bool {
    if f.q() != 2 || f.n() < 2 {
        return false;
    }
    let n = f.n();
    let set: HashSet<&Subcube> = f.members().iter().collect();
    f.members()
        .iter()
        .all(|m| !(m.symbol(n - 2).is_none() && m.symbol(n - 1).is_none()) && !set.contains(&complement_last_pair(m)))
}

fn split_last_pair(s: &Subcube) -> (Vec<Symbol>, GrayLetter) {
    let v = s.symbols();
    let n = v.len();
    let letter = gray_decode([v[n - 2], v[n - 1]]).expect("member does not end in **");
    (v[..n - 2].to_vec(), letter)
}

fn join_parts(head: &[Symbol], a: GrayLetter, b: GrayLetter) -> Subcube {
    let mut v = head.to_vec();
    v.extend(gray_encode(a));
    v.extend(gray_encode(b));
    word(&v)
}

/// Length `n` to `n + 2`, size times four.
///
/// Every member `s<p>` becomes `s<p - a><a>` for the four points `a`, except
/// that the images of `0^{n-2}<0,1>` are replaced by the edges
/// `0^{n-2}<-a><a, a+1>`.
pub fn perezhogin_step(f: &SubcubeCollection) -> Result<SubcubeCollection> {
    require_binary_partition(f, "doubling step input")?;
    let n = f.n();
    if n < 2 {
        return precondition("doubling step needs length at least 2");
    }
    if !has_complementation_property(f) {
        return precondition("input lacks the complementation property");
    }
    let zeros: Vec<Symbol> = vec![Some(0); n - 2];
    let mut removed = zeros.clone();
    removed.extend(gray_encode(GrayLetter::Edge(0)));
    let removed = word(&removed);
    if !f.contains_member(&removed) {
        return precondition(format!("input must contain {removed}"));
    }
    let mut out = Vec::with_capacity(4 * f.len());
    for m in f.members().iter().filter(|m| **m != removed) {
        let (head, letter) = split_last_pair(m);
        for a in 0..4u8 {
            out.push(join_parts(&head, letter.shift((4 - a) % 4), GrayLetter::Point(a)));
        }
    }
    for a in 0..4u8 {
        out.push(join_parts(&zeros, GrayLetter::Point(a).negate(), GrayLetter::Edge(a)));
    }
    finish(out, n + 2)
}

fn maximal_six() -> SubcubeCollection {
    let mut out = Vec::new();
    for bits in 0u8..16 {
        let (a, b, c, d) = (bits >> 3 & 1, bits >> 2 & 1, bits >> 1 & 1, bits & 1);
        let x = a ^ b;
        let f = c ^ x;
        let e = d ^ x ^ 1;
        out.push(word(&[a, b, c, d, e, f].map(Some)));
    }
    for a in 0u8..2 {
        for b in 0u8..2 {
            let (na, nb) = (1 - a, 1 - b);
            let rows: [[Symbol; 6]; 6] = [
                [None, Some(a), Some(b), Some(a), Some(nb), Some(na)],
                [Some(a), None, Some(na), Some(b), Some(na), Some(b)],
                [Some(a), Some(b), None, Some(nb), Some(na), Some(b)],
                [Some(a), Some(b), Some(na), None, Some(a), Some(b)],
                [Some(a), Some(b), Some(a), Some(nb), None, Some(nb)],
                [Some(a), Some(b), Some(a), Some(b), Some(a), None],
            ];
            out.extend(rows.iter().map(|r| word(r)));
        }
    }
    finish(out, 6).expect("shape")
}

/// Tight irreducible partitions of size `5 * 2^{n-3}` (`9` at `n = 4`).
pub fn maximal_family(n: usize) -> Result<SubcubeCollection> {
    let (mut f, mut len) = match n {
        4 => return Ok(listing(&["0000", "0011", "1101", "1110", "*100", "*111", "0*01", "0*10", "10**"]).sorted()),
        _ if n >= 3 && n % 2 == 1 => (listing(&["100", "*10", "1*1", "00*", "011"]), 3),
        _ if n >= 6 => (maximal_six(), 6),
        _ => return precondition(format!("no maximal-size construction for n = {n}")),
    };
    while len < n {
        f = perezhogin_step(&f)?;
        len += 2;
    }
    Ok(f.sorted())
}

/// Partitions of `{0,1}^n` into `2^{n-1}` edges that are irreducible.
pub fn special_perfect_matching(n: usize) -> Result<SubcubeCollection> {
    let (mut f, mut len) = match n {
        _ if n >= 4 && n.is_multiple_of(2) => (listing(&["0*10", "01*1", "000*", "1*01", "10*0", "111*", "*100", "*011"]), 4),
        _ if n >= 7 && n % 2 == 1 => {
            let six = maximal_six();
            let flipped = CubeSymmetry::flips(6, &[0, 1]).apply_collection(&six)?;
            (merge(&six, &flipped)?, 7)
        }
        _ => return Err(Error::Precondition(format!("no perfect-matching construction for n = {n}"))),
    };
    while len < n {
        f = perezhogin_step(&f)?;
        len += 2;
    }
    Ok(f.sorted())
}
