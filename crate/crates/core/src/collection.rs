//! Collections of subcubes of a common shape and their statistics.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::cube::{check_shape, mask, Subcube};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubcubeCollection {
    q: u8,
    n: u8,
    members: Vec<Subcube>,
}

/// Number of members of each weight `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<u64>);

impl WeightVector {
    /// Suffix-sum dominance: `a_{>=h} >= b_{>=h}` for every `h`.
    pub fn majorizes(&self, other: &WeightVector) -> bool {
        let len = self.0.len().max(other.0.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        let (mut a, mut b) = (0u64, 0u64);
        for h in (0..len).rev() {
            a += get(&self.0, h);
            b += get(&other.0, h);
            if a < b {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimStats {
    /// Minimum dimension.
    pub min_dim: u32,
    /// Minimum dimension over members ending in a star.
    pub min_dim_star_last: Option<u32>,
    /// Minimum dimension over members ending in a value.
    pub min_dim_value_last: Option<u32>,
    /// Minimum codimension.
    pub min_codim: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFlags {
    /// Every coordinate takes every value in at least two members.
    pub regular: bool,
    /// Common codimension, when all members share one and the collection is tight.
    pub homogeneous_codim: Option<u32>,
    pub mentions_per_coordinate: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverFlags {
    pub is_cover: bool,
    pub is_minimal: bool,
}

/// Points are enumerated explicitly only up to this many.
pub const POINT_BUDGET: u64 = 1 << 24;

impl SubcubeCollection {
    /// Nonempty collection; all members must have shape `(q, n)`.
    pub fn new(q: u8, n: usize, members: Vec<Subcube>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Empty);
        }
        Self::partial(q, n, members)
    }

    /// Like [`new`](Self::new) but allows an empty member list.
    pub fn partial(q: u8, n: usize, members: Vec<Subcube>) -> Result<Self> {
        check_shape(q, n)?;
        for m in &members {
            if m.q() != q || m.len() != n {
                return Err(Error::ShapeMismatch { q1: q, n1: n as u8, q2: m.q(), n2: m.len() as u8 });
            }
        }
        Ok(SubcubeCollection { q, n: n as u8, members })
    }

    pub fn parse_words(q: u8, words: &[&str]) -> Result<Self> {
        let members = words.iter().map(|w| Subcube::parse(q, w)).collect::<Result<Vec<_>>>()?;
        let n = members.first().map(|m| m.len()).ok_or(Error::Empty)?;
        Self::new(q, n, members)
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn members(&self) -> &[Subcube] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Subcube> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_member(&self, s: &Subcube) -> bool {
        self.members.contains(s)
    }

    /// Members in lexicographic order, star greatest.
    pub fn sorted(&self) -> SubcubeCollection {
        let mut members = self.members.clone();
        members.sort();
        SubcubeCollection { q: self.q, n: self.n, members }
    }

    pub fn map_members(&self, f: impl Fn(&Subcube) -> Subcube) -> Result<SubcubeCollection> {
        let members: Vec<Subcube> = self.members.iter().map(f).collect();
        let n = members.first().map(|m| m.len()).unwrap_or(self.n());
        Self::partial(self.q, n, members)
    }

    /// Same member set, ignoring order.
    pub fn same_members(&self, other: &SubcubeCollection) -> bool {
        self.q == other.q && self.n == other.n && self.sorted().members == other.sorted().members
    }

    pub fn has_duplicates(&self) -> bool {
        let s = self.sorted();
        s.members.windows(2).any(|w| w[0] == w[1])
    }

    pub fn total_measure(&self) -> BigUint {
        self.members.iter().fold(BigUint::zero(), |acc, m| acc + m.measure())
    }

    pub fn cube_measure(&self) -> BigUint {
        BigUint::from(self.q).pow(self.n as u32)
    }

    pub fn pairwise_disjoint(&self) -> bool {
        let m = &self.members;
        (0..m.len()).all(|i| (i + 1..m.len()).all(|j| m[i].disjoint_unchecked(&m[j])))
    }

    /// Pairwise disjoint and covering every point, by exact measure.
    pub fn is_partition(&self) -> bool {
        !self.members.is_empty() && self.total_measure() == self.cube_measure() && self.pairwise_disjoint()
    }

    /// Every coordinate is fixed in some member.
    pub fn is_tight(&self) -> bool {
        let mentioned = self.members.iter().fold(0u64, |acc, m| acc | m.fixed_mask());
        mentioned == mask(self.n)
    }

    pub fn points(&self) -> Vec<&Subcube> {
        self.members.iter().filter(|m| m.is_point()).collect()
    }

    pub fn weight_vector(&self) -> Result<WeightVector> {
        let mut v = vec![0u64; self.n() + 1];
        for m in &self.members {
            v[m.weight()? as usize] += 1;
        }
        Ok(WeightVector(v))
    }

    /// `sum over members of (q-1)^(number of ones)`.
    pub fn phi_sum(&self) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for m in &self.members {
            total += BigUint::from(self.q as u32 - 1).pow(m.weight()?);
        }
        Ok(total)
    }

    pub fn dim_stats(&self) -> Result<DimStats> {
        if self.members.is_empty() {
            return Err(Error::Empty);
        }
        let last = self.n() - 1;
        let dims = self.members.iter().map(|m| m.dimension());
        let star_last = self.members.iter().filter(|m| m.symbol(last).is_none()).map(|m| m.dimension());
        let value_last = self.members.iter().filter(|m| m.symbol(last).is_some()).map(|m| m.dimension());
        Ok(DimStats {
            min_dim: dims.clone().min().unwrap(),
            min_dim_star_last: star_last.min(),
            min_dim_value_last: value_last.min(),
            min_codim: self.members.iter().map(|m| m.codimension()).min().unwrap(),
        })
    }

    pub fn structure_flags(&self) -> StructureFlags {
        let n = self.n();
        let mut counts = vec![vec![0usize; self.q as usize]; n];
        let mut mentions = vec![0usize; n];
        for m in &self.members {
            for (i, c) in counts.iter_mut().enumerate() {
                if let Some(v) = m.symbol(i) {
                    c[v as usize] += 1;
                    mentions[i] += 1;
                }
            }
        }
        let regular = counts.iter().all(|c| c.iter().all(|&k| k >= 2));
        let codims: Vec<u32> = self.members.iter().map(|m| m.codimension()).collect();
        let homogeneous_codim = match codims.first() {
            Some(&k) if codims.iter().all(|&c| c == k) && self.is_tight() => Some(k),
            _ => None,
        };
        StructureFlags { regular, homogeneous_codim, mentions_per_coordinate: mentions }
    }

    /// Explicit point-coverage check: cover and private-point minimality.
    pub fn cover_flags(&self) -> Result<CoverFlags> {
        let total = (self.q as u64).checked_pow(self.n as u32).filter(|&t| t <= POINT_BUDGET);
        let total = match total {
            Some(t) => t as usize,
            None => return Err(Error::Budget(format!("{}^{} points exceed the enumeration budget", self.q, self.n))),
        };
        let mut count = vec![0u8; total];
        let indexer = PointIndexer::new(self.q);
        for m in &self.members {
            indexer.for_each_index(m, |idx| count[idx] = count[idx].saturating_add(1));
        }
        let is_cover = count.iter().all(|&c| c > 0);
        let is_minimal = self.members.iter().all(|m| {
            let mut private = false;
            indexer.for_each_index(m, |idx| private |= count[idx] == 1);
            private
        });
        Ok(CoverFlags { is_cover, is_minimal })
    }
}

/// Mixed-radix indexing of points, position 0 most significant.
#[derive(Debug, Clone)]
pub(crate) struct PointIndexer {
    q: usize,
}

impl PointIndexer {
    pub(crate) fn new(q: u8) -> Self {
        PointIndexer { q: q as usize }
    }

    pub(crate) fn for_each_index(&self, s: &Subcube, mut f: impl FnMut(usize)) {
        let symbols = s.symbols();
        fn rec(symbols: &[Option<u8>], q: usize, acc: usize, f: &mut dyn FnMut(usize)) {
            match symbols.split_first() {
                None => f(acc),
                Some((Some(v), rest)) => rec(rest, q, acc * q + *v as usize, f),
                Some((None, rest)) => {
                    for v in 0..q {
                        rec(rest, q, acc * q + v, f);
                    }
                }
            }
        }
        rec(&symbols, self.q, 0, &mut f);
    }
}

impl fmt::Debug for SubcubeCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "SubcubeCollection(q={}, n={}, {{{}}})", self.q, self.n, words.join(", "))
    }
}

impl fmt::Display for SubcubeCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", words.join(", "))
    }
}
