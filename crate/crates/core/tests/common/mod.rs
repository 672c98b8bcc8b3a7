//! Brute-force oracles shared by the integration tests. They work on
//! explicit point sets and never call the irreducibility or search code.

#![allow(dead_code)]

use subcube::{Subcube, SubcubeCollection, Symbol};

/// Every subcube of `{0..q-1}^n`, stars included.
pub fn all_subcubes(q: u8, n: usize) -> Vec<Subcube> {
    let mut out = Vec::new();
    let mut word: Vec<Symbol> = vec![Some(0); n];
    loop {
        out.push(Subcube::from_symbols(q, &word).unwrap());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            word[i] = match word[i] {
                Some(v) if v + 1 < q => Some(v + 1),
                Some(_) => None,
                None => Some(0),
            };
            if word[i] != Some(0) {
                break;
            }
        }
    }
}

/// Bitset of the points of `s`, point `(x_0..x_{n-1})` at index
/// `sum x_i q^i`. Needs `q^n <= 64`.
pub fn point_set(s: &Subcube) -> u64 {
    let q = s.q() as u64;
    let mut set = 0u64;
    for p in s.points() {
        let idx = p.iter().rev().fold(0u64, |acc, &v| acc * q + v as u64);
        set |= 1 << idx;
    }
    set
}

pub fn full_set(q: u8, n: usize) -> u64 {
    let total = (q as u32).pow(n as u32);
    if total == 64 {
        u64::MAX
    } else {
        (1u64 << total) - 1
    }
}

/// Every partition of `{0..q-1}^n` into subcubes, each once, as member
/// lists in no particular order.
pub fn all_partitions(q: u8, n: usize) -> Vec<Vec<Subcube>> {
    let cubes: Vec<(Subcube, u64)> = all_subcubes(q, n).into_iter().map(|s| {
        let p = point_set(&s);
        (s, p)
    }).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(cubes: &[(Subcube, u64)], full: u64, covered: u64, chosen: &mut Vec<Subcube>, out: &mut Vec<Vec<Subcube>>) {
        if covered == full {
            out.push(chosen.clone());
            return;
        }
        let low = 1u64 << (!covered & full).trailing_zeros();
        for (s, p) in cubes {
            if p & low != 0 && p & covered == 0 {
                chosen.push(*s);
                rec(cubes, full, covered | p, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(&cubes, full_set(q, n), 0, &mut chosen, &mut out);
    out
}

/// Number of subcube partitions of the point set `mask`, by memoized
/// recursion on point sets.
pub fn count_partitions(q: u8, n: usize) -> u64 {
    let sets: Vec<u64> = all_subcubes(q, n).iter().map(point_set).collect();
    let mut memo = std::collections::HashMap::new();
    fn rec(mask: u64, sets: &[u64], memo: &mut std::collections::HashMap<u64, u64>) -> u64 {
        if mask == 0 {
            return 1;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let low = 1u64 << mask.trailing_zeros();
        let v = sets.iter().filter(|&&s| s & low != 0 && s & !mask == 0).map(|&s| rec(mask & !s, sets, memo)).sum();
        memo.insert(mask, v);
        v
    }
    rec(full_set(q, n), &sets, &mut memo)
}

/// Smallest subcube containing all of `members`, coordinate by coordinate.
pub fn join_of(members: &[&Subcube]) -> Subcube {
    let n = members[0].len();
    let word: Vec<Symbol> = (0..n)
        .map(|i| {
            let first = members[0].symbol(i);
            if first.is_some() && members.iter().all(|m| m.symbol(i) == first) {
                first
            } else {
                None
            }
        })
        .collect();
    Subcube::from_symbols(members[0].q(), &word).unwrap()
}

/// A sub-collection of at least two members, not all, whose points form a
/// subcube; checked over every subset.
pub fn brute_witness(members: &[Subcube]) -> Option<Vec<usize>> {
    let m = members.len();
    assert!(m <= 20, "too many members for the subset oracle");
    for mask in 1u32..(1 << m) - 1 {
        if mask.count_ones() < 2 {
            continue;
        }
        let idx: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let sub: Vec<&Subcube> = idx.iter().map(|&i| &members[i]).collect();
        let union = sub.iter().fold(0u64, |acc, s| acc | point_set(s));
        if union == point_set(&join_of(&sub)) {
            return Some(idx);
        }
    }
    None
}

/// Tight irreducible and similar checks on raw members.
pub fn mentions_every_coordinate(members: &[Subcube]) -> bool {
    let n = members[0].len();
    (0..n).all(|i| members.iter().any(|m| m.symbol(i).is_some()))
}

pub fn collection(q: u8, members: &[Subcube]) -> SubcubeCollection {
    SubcubeCollection::new(q, members[0].len(), members.to_vec()).unwrap()
}

/// Every point of `{0..q-1}^n` covered and every member owning a point no
/// other member covers.
pub fn is_minimal_cover(q: u8, n: usize, members: &[Subcube]) -> bool {
    let sets: Vec<u64> = members.iter().map(point_set).collect();
    let union = sets.iter().fold(0, |a, s| a | s);
    union == full_set(q, n)
        && (0..sets.len()).all(|i| {
            let others = sets.iter().enumerate().filter(|&(j, _)| j != i).fold(0, |a, (_, s)| a | s);
            sets[i] & !others != 0
        })
}
