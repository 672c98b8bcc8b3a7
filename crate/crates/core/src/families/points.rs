//! Families built around points: the cubic-size and Lagarias-Shor
//! partitions for odd length, and xor extension.

use std::collections::BTreeSet;

use super::{finish, require_binary_partition, word};
use crate::collection::SubcubeCollection;
use crate::error::{precondition, Result};
use crate::cube::{Subcube, Symbol};

fn run(sym: Symbol, len: usize) -> impl Iterator<Item = Symbol> {
    std::iter::repeat_n(sym, len)
}

/// Odd-length partition of size `1 + n + m(m+1)(2m+1)/6`, `n = 2m + 1`.
pub fn cubic(n: usize) -> Result<SubcubeCollection> {
    if n.is_multiple_of(2) || n < 3 {
        return precondition("cubic family needs odd n >= 3");
    }
    let m = (n - 1) / 2;
    let mut out = vec![word(&vec![Some(0); n])];
    let spoke: Vec<Symbol> = run(Some(0), m).chain(run(Some(1), 1)).chain(run(None, m)).collect();
    for r in 0..n {
        let mut v = spoke.clone();
        v.rotate_left(r);
        out.push(word(&v));
    }
    for i in 0..m {
        for j in 0..m - i {
            for k in 0..m - j {
                let v: Vec<Symbol> = run(Some(0), i)
                    .chain(run(Some(1), 1))
                    .chain(run(None, j))
                    .chain(run(Some(0), k))
                    .chain(run(Some(1), 1))
                    .chain(run(None, m - 1 - j - k))
                    .chain(run(Some(0), j))
                    .chain(run(Some(1), 1))
                    .chain(run(None, m - 1 - i - j))
                    .collect();
                out.push(word(&v));
            }
        }
    }
    finish(out, n)
}

fn block_words(n: usize, prefix: &mut Vec<Symbol>, out: &mut Vec<Vec<Symbol>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    prefix.push(Some(0));
    block_words(n, prefix, out);
    prefix.pop();
    if prefix.len() + 2 <= n {
        prefix.extend([None, Some(1)]);
        block_words(n, prefix, out);
        prefix.truncate(prefix.len() - 2);
    }
}

/// `1^n` plus every rotation of every word made of the blocks `*1` and `0`.
pub fn lagarias_shor(n: usize) -> Result<SubcubeCollection> {
    if n.is_multiple_of(2) {
        return precondition("Lagarias-Shor family needs odd n");
    }
    let mut words = Vec::new();
    block_words(n, &mut Vec::new(), &mut words);
    let mut set: BTreeSet<Subcube> = BTreeSet::new();
    for w in words {
        for r in 0..n {
            let mut v = w.clone();
            v.rotate_left(r);
            set.insert(word(&v));
        }
    }
    set.insert(word(&vec![Some(1); n]));
    finish(set.into_iter().collect(), n)
}

/// Replaces the first coordinate by the xor of `k + 1` fresh coordinates,
/// giving length `n + k`.
pub fn xor_extend(f: &SubcubeCollection, k: usize) -> Result<SubcubeCollection> {
    require_binary_partition(f, "xor extension input")?;
    let n = f.n();
    if n < 2 {
        return precondition("xor extension needs length at least 2");
    }
    let halves = f.len() == 2 && f.members().iter().all(|m| m.codimension() == 1 && m.symbol(0).is_some());
    if halves {
        return precondition("xor extension is undefined for the split along the first coordinate");
    }
    let width = k + 1;
    let mut out = Vec::new();
    for m in f.members() {
        let tail: Vec<Symbol> = m.symbols()[1..].to_vec();
        match m.symbol(0) {
            None => out.push(word(&run(None, width).chain(tail.iter().copied()).collect::<Vec<_>>())),
            Some(b) => {
                for bits in 0u64..(1u64 << width) {
                    if (bits.count_ones() % 2) as u8 != b {
                        continue;
                    }
                    let v: Vec<Symbol> =
                        (0..width).map(|a| Some((bits >> (width - 1 - a) & 1) as u8)).chain(tail.iter().copied()).collect();
                    out.push(word(&v));
                }
            }
        }
    }
    finish(out, n + k)
}
