//! Pulling binary partitions back to larger alphabets, and the staircase
//! cover.

use crate::collection::SubcubeCollection;
use crate::cube::{check_shape, Subcube, Symbol};
use crate::error::{precondition, Error, Result};
use crate::families::{family_weight, WeightVariant};

/// One surjection `{0..q-1} -> {0,1}` per coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionMap {
    q: u8,
    maps: Vec<Vec<u8>>,
}

impl ExpansionMap {
    pub fn new(q: u8, maps: Vec<Vec<u8>>) -> Result<Self> {
        check_shape(q, maps.len().max(1))?;
        for (i, m) in maps.iter().enumerate() {
            if m.len() != q as usize {
                return precondition(format!("map {i} has {} entries, expected {q}", m.len()));
            }
            if m.iter().any(|&b| b > 1) || !m.contains(&0) || !m.contains(&1) {
                return precondition(format!("map {i} is not a surjection onto {{0,1}}"));
            }
        }
        Ok(ExpansionMap { q, maps })
    }

    /// `0 -> 0`, everything else `-> 1`, on every coordinate.
    pub fn threshold(q: u8, n: usize) -> Result<Self> {
        let m: Vec<u8> = (0..q).map(|v| (v > 0) as u8).collect();
        ExpansionMap::new(q, vec![m; n])
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn maps(&self) -> &[Vec<u8>] {
        &self.maps
    }

    fn preimage(&self, i: usize, b: u8) -> Vec<u8> {
        (0..self.q).filter(|&v| self.maps[i][v as usize] == b).collect()
    }
}

/// `{s : phi(s) in F}` with `phi(*) = *`.
pub fn expand(f: &SubcubeCollection, phi: &ExpansionMap) -> Result<SubcubeCollection> {
    if f.q() != 2 {
        return Err(Error::RequiresBinary(f.q()));
    }
    if phi.maps.len() != f.n() {
        return precondition(format!("expansion map has {} coordinates, expected {}", phi.maps.len(), f.n()));
    }
    let mut out = Vec::new();
    for m in f.members() {
        let choices: Vec<Vec<Symbol>> = (0..f.n())
            .map(|i| match m.symbol(i) {
                None => vec![None],
                Some(b) => phi.preimage(i, b).into_iter().map(Some).collect(),
            })
            .collect();
        let mut pick = vec![0usize; f.n()];
        loop {
            let v: Vec<Symbol> = (0..f.n()).map(|i| choices[i][pick[i]]).collect();
            out.push(Subcube::from_symbols(phi.q, &v)?);
            let mut i = f.n();
            while i > 0 {
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
            }
            if pick.iter().all(|&p| p == 0) {
                break;
            }
        }
    }
    out.sort();
    SubcubeCollection::new(phi.q, f.n(), out)
}

/// Tight irreducible `q`-ary partitions of size `(n-1) q (q-1) + 1`.
pub fn minimal_qary(n: usize, q: u8) -> Result<SubcubeCollection> {
    let base = family_weight(n, WeightVariant::A)?;
    expand(&base, &ExpansionMap::threshold(q, n)?)
}

/// `{0^i b *^{n-i-1} : 1 <= b < q} + {0^n}`: a partition of size `(q-1) n + 1`.
pub fn staircase_cover(n: usize, q: u8) -> Result<SubcubeCollection> {
    check_shape(q, n)?;
    let mut out = vec![Subcube::point(q, &vec![0; n])?];
    for i in 0..n {
        for b in 1..q {
            let v: Vec<Symbol> = (0..n)
                .map(|k| match k.cmp(&i) {
                    std::cmp::Ordering::Less => Some(0),
                    std::cmp::Ordering::Equal => Some(b),
                    std::cmp::Ordering::Greater => None,
                })
                .collect();
            out.push(Subcube::from_symbols(q, &v)?);
        }
    }
    out.sort();
    SubcubeCollection::new(q, n, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_must_be_surjective() {
        assert!(ExpansionMap::new(3, vec![vec![0, 0, 0]]).is_err());
        assert!(ExpansionMap::new(3, vec![vec![0, 1]]).is_err());
        assert!(ExpansionMap::new(3, vec![vec![0, 2, 1]]).is_err());
        assert!(ExpansionMap::new(3, vec![vec![1, 0, 1]]).is_ok());
    }

    #[test]
    fn staircase_shape() {
        let f = staircase_cover(2, 3).unwrap();
        let words: Vec<String> = f.members().iter().map(|m| m.to_string()).collect();
        assert_eq!(words, ["00", "01", "02", "1*", "2*"]);
        assert!(f.is_partition() && f.is_tight());
    }
}
