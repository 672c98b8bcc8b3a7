//! Precomputed cell tables for the search engine: every subcube (or affine
//! subspace) of a small space, its point set as a bitmask, and the join of
//! every pair.

use std::collections::{HashMap, HashSet};

use crate::affine::{AffinePartition, AffineSubspace};
use crate::collection::SubcubeCollection;
use crate::collection::PointIndexer;
use crate::cube::{check_shape, Subcube, Symbol};
use crate::error::{precondition, Result};

/// At most this many points, so a point set fits in a `u64`.
pub const MAX_POINTS: usize = 64;

#[derive(Debug, Clone)]
pub(crate) enum Cells {
    Subcubes(Vec<Subcube>),
    Affine(Vec<AffineSubspace>),
}

#[derive(Debug, Clone)]
pub(crate) struct Universe {
    pub q: u8,
    pub n: usize,
    pub cells: Cells,
    pub full: u64,
    pub bits: Vec<u64>,
    pub dims: Vec<u32>,
    /// Cells containing each point, in cell order.
    pub by_point: Vec<Vec<u32>>,
    join: Vec<u16>,
    pub whole: u32,
}

impl Universe {
    pub fn subcubes(q: u8, n: usize) -> Result<Universe> {
        check_shape(q, n)?;
        let npoints = (q as usize).checked_pow(n as u32).filter(|&p| p <= MAX_POINTS);
        let Some(npoints) = npoints else {
            return precondition(format!("search needs q^n <= {MAX_POINTS}"));
        };
        let radix = q as usize + 1;
        let count = radix.pow(n as u32);
        let indexer = PointIndexer::new(q);
        // cell id in base q+1 with the star as digit q, position 0 most
        // significant, so ids follow the lexicographic order of words
        let codes: Vec<Vec<usize>> = (0..count)
            .map(|mut id| {
                let mut c = vec![0; n];
                for i in (0..n).rev() {
                    c[i] = id % radix;
                    id /= radix;
                }
                c
            })
            .collect();
        let mut cells = Vec::with_capacity(count);
        let mut bits = Vec::with_capacity(count);
        for c in &codes {
            let sym: Vec<Symbol> = c.iter().map(|&d| (d < q as usize).then_some(d as u8)).collect();
            let s = Subcube::from_symbols(q, &sym)?;
            let mut b = 0u64;
            indexer.for_each_index(&s, |p| b |= 1 << p);
            cells.push(s);
            bits.push(b);
        }
        let id = |c: &[usize]| c.iter().fold(0, |acc, &d| acc * radix + d);
        let join = |a: usize, b: usize| -> usize {
            let c: Vec<usize> = codes[a].iter().zip(&codes[b]).map(|(&x, &y)| if x == y { x } else { q as usize }).collect();
            id(&c)
        };
        let dims = cells.iter().map(|s| s.dimension()).collect();
        Ok(Universe::assemble(q, n, Cells::Subcubes(cells), npoints, bits, dims, count - 1, join))
    }

    /// Every affine subspace of `F_2^n`, ordered by representation.
    pub fn affine(n: usize) -> Result<Universe> {
        if n == 0 || n > 5 {
            return precondition("affine search supports 1 <= n <= 5");
        }
        let npoints = 1usize << n;
        let mut all: HashSet<AffineSubspace> = HashSet::new();
        let mut frontier: Vec<AffineSubspace> = (0..npoints as u64).map(|v| AffineSubspace::point(n, v)).collect::<Result<_>>()?;
        all.extend(frontier.iter().cloned());
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for v in 0..npoints as u64 {
                    if a.contains_point(v) {
                        continue;
                    }
                    let j = a.join(&AffineSubspace::point(n, v)?);
                    if all.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut cells: Vec<AffineSubspace> = all.into_iter().collect();
        cells.sort();
        let bits: Vec<u64> = cells
            .iter()
            .map(|c| c.points().map(|ps| ps.iter().fold(0u64, |b, &p| b | 1 << p)))
            .collect::<Result<_>>()?;
        let dims = cells.iter().map(|c| c.dimension()).collect();
        let (whole, table) = {
            let index: HashMap<&AffineSubspace, usize> = cells.iter().enumerate().map(|(k, c)| (c, k)).collect();
            let table = Universe::join_table(cells.len(), |a, b| index[&cells[a].join(&cells[b])]);
            (index[&AffineSubspace::whole(n)?], table)
        };
        Ok(Universe::with_table(2, n, Cells::Affine(cells), npoints, bits, dims, whole, table))
    }

    fn join_table(count: usize, join: impl Fn(usize, usize) -> usize) -> Vec<u16> {
        let mut table = vec![0u16; count * count];
        for a in 0..count {
            for b in a..count {
                let j = join(a, b) as u16;
                table[a * count + b] = j;
                table[b * count + a] = j;
            }
        }
        table
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        q: u8,
        n: usize,
        cells: Cells,
        npoints: usize,
        bits: Vec<u64>,
        dims: Vec<u32>,
        whole: usize,
        join: impl Fn(usize, usize) -> usize,
    ) -> Universe {
        let table = Universe::join_table(bits.len(), join);
        Universe::with_table(q, n, cells, npoints, bits, dims, whole, table)
    }

    #[allow(clippy::too_many_arguments)]
    fn with_table(
        q: u8,
        n: usize,
        cells: Cells,
        npoints: usize,
        bits: Vec<u64>,
        dims: Vec<u32>,
        whole: usize,
        join: Vec<u16>,
    ) -> Universe {
        let mut by_point = vec![Vec::new(); npoints];
        for (c, &b) in bits.iter().enumerate() {
            for (p, list) in by_point.iter_mut().enumerate() {
                if b >> p & 1 == 1 {
                    list.push(c as u32);
                }
            }
        }
        let full = if npoints == 64 { u64::MAX } else { (1u64 << npoints) - 1 };
        Universe { q, n, cells, full, bits, dims, by_point, join, whole: whole as u32 }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn join(&self, a: u32, b: u32) -> u32 {
        self.join[a as usize * self.len() + b as usize] as u32
    }

    pub fn subcube(&self, c: u32) -> &Subcube {
        match &self.cells {
            Cells::Subcubes(v) => &v[c as usize],
            Cells::Affine(_) => panic!("not a subcube universe"),
        }
    }

    pub fn affine_cell(&self, c: u32) -> &AffineSubspace {
        match &self.cells {
            Cells::Affine(v) => &v[c as usize],
            Cells::Subcubes(_) => panic!("not an affine universe"),
        }
    }

    /// Whether adding `c` to the disjoint cells `chosen` (covering
    /// `covered`) creates a sub-collection containing `c` whose union is a
    /// cell other than the whole space.
    ///
    /// The closure of `{c, t}` is contained in every such sub-collection
    /// containing `c` and `t`, so checking each seed `t` is exact.
    pub fn creates_witness(&self, chosen: &[u32], covered: u64, c: u32) -> bool {
        let covered = covered | self.bits[c as usize];
        for &t in chosen {
            let mut j = self.join(c, t);
            loop {
                if j == self.whole {
                    break;
                }
                let jb = self.bits[j as usize];
                let grow = chosen.iter().find(|&&m| {
                    let mb = self.bits[m as usize];
                    mb & jb != 0 && mb & !jb != 0
                });
                match grow {
                    Some(&m) => j = self.join(j, m),
                    None => break,
                }
            }
            if j != self.whole && covered & self.bits[j as usize] == self.bits[j as usize] {
                return true;
            }
        }
        false
    }

    /// Algorithm 1 on a complete partition given by cell ids: reducible iff
    /// some pair has a closure whose join is not the whole space.
    pub fn is_irreducible(&self, members: &[u32]) -> bool {
        for (a, &s) in members.iter().enumerate() {
            for &t in &members[a + 1..] {
                let mut j = self.join(s, t);
                while j != self.whole {
                    let jb = self.bits[j as usize];
                    let grow = members.iter().find(|&&m| {
                        let mb = self.bits[m as usize];
                        mb & jb != 0 && mb & !jb != 0
                    });
                    match grow {
                        Some(&m) => j = self.join(j, m),
                        None => return false,
                    }
                }
            }
        }
        true
    }

    pub fn is_tight(&self, members: &[u32]) -> bool {
        match &self.cells {
            Cells::Subcubes(v) => {
                let mentioned = members.iter().fold(0u64, |acc, &m| acc | v[m as usize].fixed_mask());
                mentioned.count_ones() as usize == self.n
            }
            Cells::Affine(_) => self.affine_partition(members).is_tight(),
        }
    }

    pub fn collection(&self, members: &[u32]) -> SubcubeCollection {
        let mut out: Vec<Subcube> = members.iter().map(|&m| *self.subcube(m)).collect();
        out.sort();
        SubcubeCollection::new(self.q, self.n, out).expect("cells share a shape")
    }

    pub fn affine_partition(&self, members: &[u32]) -> AffinePartition {
        let out = members.iter().map(|&m| self.affine_cell(m).clone()).collect();
        AffinePartition::new(self.n, out).expect("cells share a length").sorted()
    }
}
