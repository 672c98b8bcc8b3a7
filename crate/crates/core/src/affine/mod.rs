//! Affine subspaces of `F_2^n` and affine vector space partitions.
//!
//! Coordinate `i` of a vector is bit `i`. A subspace is stored as a
//! representative plus an echelon basis of its linear part, with the
//! representative reduced against the basis, so equal sets compare equal.

mod compress;
mod gf2;

pub use compress::{avsp_family, avsp_inductive, compress, compress_with_grouping, tightness_condition, Compression};

use std::fmt;

use num_bigint::BigUint;

use crate::cube::{mask, Subcube, MAX_LENGTH};
use crate::error::{Error, Result};
use crate::format::{content_lines, header_fields};
use crate::irreducibility::{test_irreducible_members, IrreducibilityVerdict, Region};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineSubspace {
    n: u8,
    rep: u64,
    basis: Vec<u64>,
}

fn check_length(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::Length(n));
    }
    Ok(())
}

impl AffineSubspace {
    pub fn new(n: usize, rep: u64, generators: &[u64]) -> Result<Self> {
        check_length(n)?;
        let m = mask(n as u8);
        if rep & !m != 0 || generators.iter().any(|g| g & !m != 0) {
            return Err(Error::Precondition(format!("vector wider than length {n}")));
        }
        Ok(Self::from_parts(n as u8, rep, generators.iter().copied()))
    }

    fn from_parts(n: u8, rep: u64, generators: impl IntoIterator<Item = u64>) -> Self {
        let basis = gf2::rref(generators);
        let rep = gf2::reduce(&basis, rep);
        AffineSubspace { n, rep, basis }
    }

    pub fn point(n: usize, v: u64) -> Result<Self> {
        Self::new(n, v, &[])
    }

    pub fn whole(n: usize) -> Result<Self> {
        check_length(n)?;
        Ok(Self::from_parts(n as u8, 0, (0..n).map(|i| 1u64 << i)))
    }

    /// The subcube viewed as an affine subspace: stars span the linear part.
    pub fn from_subcube(s: &Subcube) -> Result<Self> {
        if s.q() != 2 {
            return Err(Error::RequiresBinary(s.q()));
        }
        let rep = s.planes()[0] & s.fixed_mask();
        Ok(Self::from_parts(s.len() as u8, rep, s.star_positions().into_iter().map(|i| 1u64 << i)))
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn representative(&self) -> u64 {
        self.rep
    }

    /// Echelon basis of the linear part.
    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn dimension(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn contains_point(&self, v: u64) -> bool {
        gf2::reduce(&self.basis, v ^ self.rep) == 0
    }

    /// `a + V` and `b + W` meet iff `a + b` lies in `V + W`.
    pub fn meets(&self, other: &AffineSubspace) -> bool {
        let sum = gf2::rref(self.basis.iter().chain(other.basis.iter()).copied());
        gf2::reduce(&sum, self.rep ^ other.rep) == 0
    }

    /// `a + span(V, W, a + b)`.
    pub fn join(&self, other: &AffineSubspace) -> AffineSubspace {
        let gens = self.basis.iter().chain(other.basis.iter()).copied().chain([self.rep ^ other.rep]);
        Self::from_parts(self.n, self.rep, gens)
    }

    pub fn contains(&self, other: &AffineSubspace) -> bool {
        self.contains_point(other.rep) && other.basis.iter().all(|&w| gf2::reduce(&self.basis, w) == 0)
    }

    /// All points, for dimension at most 24.
    pub fn points(&self) -> Result<Vec<u64>> {
        if self.basis.len() > 24 {
            return Err(Error::Budget(format!("2^{} points", self.basis.len())));
        }
        let mut out = Vec::with_capacity(1 << self.basis.len());
        for c in 0u64..(1 << self.basis.len()) {
            let mut v = self.rep;
            for (k, &b) in self.basis.iter().enumerate() {
                if c >> k & 1 == 1 {
                    v ^= b;
                }
            }
            out.push(v);
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn measure(&self) -> BigUint {
        BigUint::from(2u32).pow(self.dimension())
    }
}

pub(crate) fn bits_to_string(v: u64, n: usize) -> String {
    (0..n).map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn parse_bits(s: &str, n: usize, line: usize) -> Result<u64> {
    if s.len() != n {
        return Err(Error::Parse { line, message: format!("bit string `{s}` has length {}, expected {n}", s.len()) });
    }
    let mut v = 0u64;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => v |= 1 << i,
            _ => return Err(Error::Parse { line, message: format!("invalid bit `{c}`") }),
        }
    }
    Ok(v)
}

impl fmt::Display for AffineSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.len();
        let basis: Vec<String> = self.basis.iter().map(|&b| bits_to_string(b, n)).collect();
        write!(f, "rep={}; basis={}", bits_to_string(self.rep, n), basis.join(","))
    }
}

impl fmt::Debug for AffineSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineSubspace({self})")
    }
}

impl Region for AffineSubspace {
    fn intersects(&self, other: &Self) -> bool {
        self.meets(other)
    }
    fn hull(&self, other: &Self) -> Self {
        self.join(other)
    }
    fn includes(&self, other: &Self) -> bool {
        self.contains(other)
    }
    fn dim(&self) -> u32 {
        self.dimension()
    }
    fn ambient_dim(&self) -> u32 {
        self.n as u32
    }
    fn base(&self) -> u32 {
        2
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffinePartition {
    n: u8,
    members: Vec<AffineSubspace>,
}

impl AffinePartition {
    /// A collection of affine subspaces of a common length (not yet checked
    /// to be a partition).
    pub fn new(n: usize, members: Vec<AffineSubspace>) -> Result<Self> {
        check_length(n)?;
        if members.is_empty() {
            return Err(Error::Empty);
        }
        if members.iter().any(|m| m.len() != n) {
            return Err(Error::Precondition(format!("all members must have length {n}")));
        }
        Ok(AffinePartition { n: n as u8, members })
    }

    pub fn from_subcubes(f: &crate::SubcubeCollection) -> Result<Self> {
        let members = f.members().iter().map(AffineSubspace::from_subcube).collect::<Result<Vec<_>>>()?;
        Self::new(f.n(), members)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn members(&self) -> &[AffineSubspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn sorted(&self) -> AffinePartition {
        let mut members = self.members.clone();
        members.sort();
        AffinePartition { n: self.n, members }
    }

    pub fn is_partition(&self) -> bool {
        let total: BigUint = self.members.iter().map(|m| m.measure()).sum();
        let m = &self.members;
        total == BigUint::from(2u32).pow(self.n as u32)
            && (0..m.len()).all(|i| (i + 1..m.len()).all(|j| !m[i].meets(&m[j])))
    }

    /// The linear parts have trivial common intersection.
    pub fn is_tight(&self) -> bool {
        let mut common: Vec<u64> = (0..self.n).map(|i| 1u64 << i).collect();
        common = gf2::rref(common);
        for m in &self.members {
            common = gf2::intersect(&common, &m.basis);
            if common.is_empty() {
                return true;
            }
        }
        common.is_empty()
    }

    pub fn test_irreducible(&self) -> IrreducibilityVerdict<AffineSubspace> {
        test_irreducible_members(&self.members)
    }

    pub fn is_irreducible(&self) -> bool {
        self.test_irreducible().is_irreducible()
    }
}

impl fmt::Debug for AffinePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffinePartition(n={}, {:?})", self.n, self.members)
    }
}

/// ```text
/// avsp n=3
/// rep=000; basis=111
/// rep=010; basis=001
/// ```
pub fn parse_avsp(text: &str) -> Result<AffinePartition> {
    let mut n: Option<usize> = None;
    let mut members = Vec::new();
    for (line, body) in content_lines(text) {
        if let Some(rest) = body.strip_prefix("avsp") {
            if n.is_some() || !members.is_empty() {
                return Err(Error::Parse { line, message: "header must come first and only once".into() });
            }
            let f = header_fields(line, rest, &["n"])?;
            if f[0] == 0 || f[0] > MAX_LENGTH {
                return Err(Error::Parse { line, message: format!("length {} outside 1..=64", f[0]) });
            }
            n = Some(f[0]);
            continue;
        }
        let Some(n) = n else {
            return Err(Error::Parse { line, message: "missing `avsp n=<n>` header".into() });
        };
        let mut rep = None;
        let mut basis = None;
        for field in body.split(';') {
            let field = field.trim();
            if let Some(v) = field.strip_prefix("rep=") {
                rep = Some(parse_bits(v.trim(), n, line)?);
            } else if let Some(v) = field.strip_prefix("basis=") {
                let v = v.trim();
                let gens = if v.is_empty() {
                    Vec::new()
                } else {
                    v.split(',').map(|b| parse_bits(b.trim(), n, line)).collect::<Result<Vec<_>>>()?
                };
                basis = Some(gens);
            } else {
                return Err(Error::Parse { line, message: format!("unexpected field `{field}`") });
            }
        }
        let (Some(rep), Some(basis)) = (rep, basis) else {
            return Err(Error::Parse { line, message: "expected `rep=<bits>; basis=<bits>,...`".into() });
        };
        members.push(AffineSubspace::from_parts(n as u8, rep, basis));
    }
    let Some(n) = n else {
        return Err(Error::Parse { line: 1, message: "missing `avsp n=<n>` header".into() });
    };
    AffinePartition::new(n, members).map_err(|e| Error::Parse { line: 1, message: e.to_string() })
}

pub fn format_avsp(g: &AffinePartition) -> String {
    let mut out = format!("avsp n={}\n", g.n);
    for m in &g.members {
        out.push_str(&m.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(w: &str) -> AffineSubspace {
        AffineSubspace::from_subcube(&Subcube::parse(2, w).unwrap()).unwrap()
    }

    #[test]
    fn join_of_antipodal_points() {
        let a = AffineSubspace::point(3, 0).unwrap();
        let b = AffineSubspace::point(3, 0b111).unwrap();
        let j = a.join(&b);
        assert_eq!(j.dimension(), 1);
        assert_eq!(j.points().unwrap(), vec![0, 0b111]);
        assert!(!j.meets(&sub("01*")));
    }

    #[test]
    fn subcube_embedding_matches_points() {
        let s = sub("1*0");
        // coordinate i is bit i: 1*0 = {100, 110} read left to right
        assert_eq!(s.points().unwrap(), vec![0b001, 0b011]);
        assert!(s.meets(&sub("**0")));
        assert!(sub("**0").contains(&s));
    }

    #[test]
    fn text_round_trip() {
        let text = "avsp n=3\nrep=000; basis=111\nrep=010; basis=001\nrep=101; basis=\n";
        let g = parse_avsp(text).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(parse_avsp(&format_avsp(&g)).unwrap(), g);
        assert!(matches!(parse_avsp("rep=0; basis=\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_avsp("avsp n=2\nrep=0; basis=\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn tightness_of_embedded_partitions() {
        let f = crate::SubcubeCollection::parse_words(2, &["000", "*01", "1*0", "01*", "111"]).unwrap();
        let g = AffinePartition::from_subcubes(&f).unwrap();
        assert!(g.is_partition() && g.is_tight());
        let h = crate::SubcubeCollection::parse_words(2, &["0*", "1*"]).unwrap();
        assert!(!AffinePartition::from_subcubes(&h).unwrap().is_tight());
    }
}
