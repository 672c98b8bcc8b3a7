//! Words over `{0..q-1, *}` stored as bit-planes.
//!
//! Position `i` of a word lives in bit `i` of every mask. `fixed` marks the
//! non-star positions and plane `b` holds bit `b` of each fixed value.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

pub const MAX_ALPHABET: u8 = 36;
pub const MAX_LENGTH: usize = 64;
const PLANES: usize = 6;

/// `None` is the star.
pub type Symbol = Option<u8>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subcube {
    q: u8,
    n: u8,
    fixed: u64,
    planes: [u64; PLANES],
}

pub(crate) fn check_shape(q: u8, n: usize) -> Result<()> {
    if !(2..=MAX_ALPHABET).contains(&q) {
        return Err(Error::Alphabet(q as u32));
    }
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::Length(n));
    }
    Ok(())
}

pub(crate) fn mask(n: u8) -> u64 {
    if n as usize == MAX_LENGTH {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn symbol_char(symbol: Symbol) -> char {
    match symbol {
        None => '*',
        Some(v) => std::char::from_digit(v as u32, 36).expect("value below 36"),
    }
}

pub fn char_symbol(c: char, q: u8) -> Result<Symbol> {
    if c == '*' {
        return Ok(None);
    }
    match c.to_digit(36) {
        Some(v) if c.is_ascii_digit() || c.is_ascii_lowercase() => {
            if v < q as u32 {
                Ok(Some(v as u8))
            } else {
                Err(Error::Symbol { symbol: c, q })
            }
        }
        _ => Err(Error::Symbol { symbol: c, q }),
    }
}

impl Subcube {
    pub fn full(q: u8, n: usize) -> Result<Self> {
        check_shape(q, n)?;
        Ok(Subcube { q, n: n as u8, fixed: 0, planes: [0; PLANES] })
    }

    pub fn from_symbols(q: u8, symbols: &[Symbol]) -> Result<Self> {
        let mut s = Subcube::full(q, symbols.len())?;
        for (i, &sym) in symbols.iter().enumerate() {
            if let Some(v) = sym {
                if v >= q {
                    return Err(Error::Symbol { symbol: symbol_char(Some(v.min(35))), q });
                }
                s.set(i, Some(v));
            }
        }
        Ok(s)
    }

    pub fn point(q: u8, values: &[u8]) -> Result<Self> {
        let symbols: Vec<Symbol> = values.iter().map(|&v| Some(v)).collect();
        Subcube::from_symbols(q, &symbols)
    }

    pub fn parse(q: u8, word: &str) -> Result<Self> {
        let symbols = word
            .chars()
            .map(|c| char_symbol(c, q))
            .collect::<Result<Vec<_>>>()?;
        Subcube::from_symbols(q, &symbols)
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbol(&self, i: usize) -> Symbol {
        assert!(i < self.len(), "position {i} out of range");
        if self.fixed >> i & 1 == 0 {
            return None;
        }
        let mut v = 0u8;
        for (b, plane) in self.planes.iter().enumerate() {
            v |= ((plane >> i & 1) as u8) << b;
        }
        Some(v)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        (0..self.len()).map(|i| self.symbol(i)).collect()
    }

    fn set(&mut self, i: usize, sym: Symbol) {
        let bit = 1u64 << i;
        for plane in self.planes.iter_mut() {
            *plane &= !bit;
        }
        match sym {
            None => self.fixed &= !bit,
            Some(v) => {
                self.fixed |= bit;
                for (b, plane) in self.planes.iter_mut().enumerate() {
                    if v >> b & 1 == 1 {
                        *plane |= bit;
                    }
                }
            }
        }
    }

    /// Copy with position `i` replaced.
    pub fn with_symbol(&self, i: usize, sym: Symbol) -> Result<Self> {
        if i >= self.len() {
            return Err(Error::Precondition(format!("position {i} out of range")));
        }
        if let Some(v) = sym {
            if v >= self.q {
                return Err(Error::Symbol { symbol: symbol_char(Some(v.min(35))), q: self.q });
            }
        }
        let mut s = *self;
        s.set(i, sym);
        Ok(s)
    }

    pub fn fixed_mask(&self) -> u64 {
        self.fixed
    }

    pub fn star_mask(&self) -> u64 {
        !self.fixed & mask(self.n)
    }

    pub(crate) fn planes(&self) -> &[u64; PLANES] {
        &self.planes
    }

    pub fn dimension(&self) -> u32 {
        self.n as u32 - self.fixed.count_ones()
    }

    pub fn codimension(&self) -> u32 {
        self.fixed.count_ones()
    }

    /// Star positions, 0-based.
    pub fn star_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.fixed >> i & 1 == 0).collect()
    }

    pub fn is_point(&self) -> bool {
        self.dimension() == 0
    }

    pub fn weight(&self) -> Result<u32> {
        if self.q != 2 {
            return Err(Error::RequiresBinary(self.q));
        }
        Ok((self.planes[0] & self.fixed).count_ones())
    }

    pub fn parity(&self) -> Result<Parity> {
        Ok(if self.weight()? % 2 == 0 { Parity::Even } else { Parity::Odd })
    }

    /// Number of fixed positions holding a nonzero value.
    pub fn nonzero_count(&self) -> u32 {
        let mut any = 0u64;
        for plane in &self.planes {
            any |= plane;
        }
        (any & self.fixed).count_ones()
    }

    pub fn measure(&self) -> BigUint {
        BigUint::from(self.q).pow(self.dimension())
    }

    pub fn same_shape(&self, other: &Subcube) -> Result<()> {
        if self.q != other.q || self.n != other.n {
            return Err(Error::ShapeMismatch { q1: self.q, n1: self.n, q2: other.q, n2: other.n });
        }
        Ok(())
    }

    /// Positions where both words are fixed with different values.
    fn clash_mask(&self, other: &Subcube) -> u64 {
        let mut diff = 0u64;
        for b in 0..PLANES {
            diff |= self.planes[b] ^ other.planes[b];
        }
        diff & self.fixed & other.fixed
    }

    pub(crate) fn disjoint_unchecked(&self, other: &Subcube) -> bool {
        self.clash_mask(other) != 0
    }

    pub(crate) fn join_unchecked(&self, other: &Subcube) -> Subcube {
        let fixed = self.fixed & other.fixed & !self.clash_mask(other);
        let mut planes = self.planes;
        for plane in planes.iter_mut() {
            *plane &= fixed;
        }
        Subcube { q: self.q, n: self.n, fixed, planes }
    }

    pub(crate) fn contains_unchecked(&self, other: &Subcube) -> bool {
        if self.fixed & !other.fixed != 0 {
            return false;
        }
        let mut diff = 0u64;
        for b in 0..PLANES {
            diff |= self.planes[b] ^ other.planes[b];
        }
        diff & self.fixed == 0
    }

    /// True when the two subcubes share no point.
    pub fn conflicts(&self, other: &Subcube) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.disjoint_unchecked(other))
    }

    /// Smallest subcube containing both.
    pub fn join(&self, other: &Subcube) -> Result<Subcube> {
        self.same_shape(other)?;
        Ok(self.join_unchecked(other))
    }

    /// True when `other` is a subset of `self`.
    pub fn contains(&self, other: &Subcube) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.contains_unchecked(other))
    }

    pub fn contains_point(&self, values: &[u8]) -> bool {
        values.len() == self.len()
            && values.iter().enumerate().all(|(i, &v)| match self.symbol(i) {
                None => true,
                Some(s) => s == v,
            })
    }

    /// All points as value vectors, in lexicographic order.
    pub fn points(&self) -> Vec<Vec<u8>> {
        let base: Vec<u8> = self.symbols().iter().map(|s| s.unwrap_or(0)).collect();
        let stars = self.star_positions();
        let mut out = Vec::new();
        let mut counter = vec![0u8; stars.len()];
        loop {
            let mut p = base.clone();
            for (k, &i) in stars.iter().enumerate() {
                p[i] = counter[k];
            }
            out.push(p);
            let mut k = stars.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                counter[k] += 1;
                if counter[k] < self.q {
                    break;
                }
                counter[k] = 0;
            }
        }
    }

    /// Word with `sym` inserted in front.
    pub fn prepend(&self, sym: Symbol) -> Result<Subcube> {
        let mut symbols = vec![sym];
        symbols.extend(self.symbols());
        Subcube::from_symbols(self.q, &symbols)
    }

    pub fn concat(&self, other: &Subcube) -> Result<Subcube> {
        if self.q != other.q {
            return Err(Error::ShapeMismatch { q1: self.q, n1: self.n, q2: other.q, n2: other.n });
        }
        let mut symbols = self.symbols();
        symbols.extend(other.symbols());
        Subcube::from_symbols(self.q, &symbols)
    }

    /// `x_1 x_2 .. x_n` becomes `x_2 .. x_n x_1`.
    pub fn rotate_left(&self, by: usize) -> Subcube {
        let mut symbols = self.symbols();
        let n = symbols.len();
        symbols.rotate_left(by % n);
        Subcube::from_symbols(self.q, &symbols).expect("same shape")
    }

    pub fn rotate_right(&self, by: usize) -> Subcube {
        let mut symbols = self.symbols();
        let n = symbols.len();
        symbols.rotate_right(by % n);
        Subcube::from_symbols(self.q, &symbols).expect("same shape")
    }

    /// Binary complement of position `i`; stars are unchanged.
    pub fn flip(&self, i: usize) -> Result<Subcube> {
        if self.q != 2 {
            return Err(Error::RequiresBinary(self.q));
        }
        let sym = self.symbol(i).map(|v| 1 - v);
        self.with_symbol(i, sym)
    }

    fn key(&self, i: usize) -> u8 {
        self.symbol(i).unwrap_or(u8::MAX)
    }
}

impl Ord for Subcube {
    /// Lexicographic with the star greater than every value.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.q, self.n).cmp(&(other.q, other.n)).then_with(|| {
            for i in 0..self.len() {
                match self.key(i).cmp(&other.key(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Subcube {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subcube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", symbol_char(self.symbol(i)))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subcube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subcube({self})")
    }
}
