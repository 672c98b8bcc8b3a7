//! Cube symmetries and canonical forms.
//!
//! The group acts by permuting coordinates and, independently on each
//! coordinate, permuting the symbols `0..q`. The star is fixed.

use crate::collection::SubcubeCollection;
use crate::error::{Error, Result};
use crate::cube::{Subcube, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubeSymmetry {
    /// Position `i` moves to `coords[i]`.
    pub coords: Vec<usize>,
    /// Symbol map applied to the value at source position `i`.
    pub symbols: Vec<Vec<u8>>,
}

/// Default cap on the size of the group searched by [`canonical_form`].
pub const DEFAULT_GROUP_BUDGET: u64 = 10_000_000;

impl CubeSymmetry {
    pub fn identity(q: u8, n: usize) -> Self {
        CubeSymmetry { coords: (0..n).collect(), symbols: vec![(0..q).collect(); n] }
    }

    pub fn new(coords: Vec<usize>, symbols: Vec<Vec<u8>>) -> Result<Self> {
        let n = coords.len();
        let mut seen = vec![false; n];
        for &c in &coords {
            if c >= n || std::mem::replace(&mut seen[c], true) {
                return Err(Error::Precondition("coordinate map is not a permutation".into()));
            }
        }
        if symbols.len() != n {
            return Err(Error::Precondition("one symbol map per coordinate required".into()));
        }
        for p in &symbols {
            let mut seen = vec![false; p.len()];
            for &v in p {
                if v as usize >= p.len() || std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::Precondition("symbol map is not a permutation".into()));
                }
            }
        }
        Ok(CubeSymmetry { coords, symbols })
    }

    /// `x_1 .. x_n` to `x_2 .. x_n x_1`.
    pub fn rotate_left(q: u8, n: usize) -> Self {
        CubeSymmetry { coords: (0..n).map(|i| (i + n - 1) % n).collect(), symbols: vec![(0..q).collect(); n] }
    }

    /// Binary complement on the given positions.
    pub fn flips(n: usize, positions: &[usize]) -> Self {
        let mut s = Self::identity(2, n);
        for &i in positions {
            s.symbols[i] = vec![1, 0];
        }
        s
    }

    pub fn apply(&self, s: &Subcube) -> Result<Subcube> {
        let n = s.len();
        if self.coords.len() != n || self.symbols.iter().any(|p| p.len() != s.q() as usize) {
            return Err(Error::Precondition("symmetry shape does not match the subcube".into()));
        }
        let mut out: Vec<Symbol> = vec![None; n];
        for i in 0..n {
            out[self.coords[i]] = s.symbol(i).map(|v| self.symbols[i][v as usize]);
        }
        Subcube::from_symbols(s.q(), &out)
    }

    pub fn apply_collection(&self, f: &SubcubeCollection) -> Result<SubcubeCollection> {
        let members = f.members().iter().map(|m| self.apply(m)).collect::<Result<Vec<_>>>()?;
        SubcubeCollection::partial(f.q(), f.n(), members)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &CubeSymmetry) -> CubeSymmetry {
        let n = self.coords.len();
        let mut coords = vec![0; n];
        let mut symbols = vec![Vec::new(); n];
        for i in 0..n {
            let mid = first.coords[i];
            coords[i] = self.coords[mid];
            symbols[i] = first.symbols[i].iter().map(|&v| self.symbols[mid][v as usize]).collect();
        }
        CubeSymmetry { coords, symbols }
    }
}

/// `n! * (q!)^n`, saturating.
pub fn group_order(q: u8, n: usize) -> u64 {
    let fact = |k: u64| (1..=k).fold(1u64, |a, b| a.saturating_mul(b));
    let qf = fact(q as u64);
    (0..n).fold(fact(n as u64), |a, _| a.saturating_mul(qf))
}

pub(crate) fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Canonical {
    pub form: SubcubeCollection,
    /// Maps the input collection onto `form`.
    pub symmetry: CubeSymmetry,
}

/// Lexicographically least sorted image over the whole symmetry group.
///
/// Refuses when the group has more than `budget` elements.
pub fn canonical_form_with_budget(f: &SubcubeCollection, budget: u64) -> Result<Canonical> {
    let (q, n) = (f.q(), f.n());
    let order = group_order(q, n);
    if order > budget {
        return Err(Error::Budget(format!("symmetry group of order {order} exceeds budget {budget}")));
    }
    if f.is_empty() {
        return Ok(Canonical { form: f.clone(), symmetry: CubeSymmetry::identity(q, n) });
    }
    let symbol_perms: Vec<Vec<u8>> = permutations(&(0..q as usize).collect::<Vec<_>>())
        .into_iter()
        .map(|p| p.into_iter().map(|v| v as u8).collect())
        .collect();
    let k = f.members().iter().map(|m| m.codimension()).max().unwrap();
    let mut best: Option<(Vec<Subcube>, CubeSymmetry)> = None;
    let mut image: Vec<Subcube> = Vec::with_capacity(f.len());
    for anchor in f.members().iter().filter(|m| m.codimension() == k) {
        let fixed: Vec<usize> = (0..n).filter(|&i| anchor.symbol(i).is_some()).collect();
        let stars: Vec<usize> = (0..n).filter(|&i| anchor.symbol(i).is_none()).collect();
        // per coordinate, the symbol maps that keep the anchor's image minimal
        let choices: Vec<Vec<&Vec<u8>>> = (0..n)
            .map(|i| match anchor.symbol(i) {
                Some(v) => symbol_perms.iter().filter(|p| p[v as usize] == 0).collect(),
                None => symbol_perms.iter().collect(),
            })
            .collect();
        for fixed_order in permutations(&fixed) {
            for star_order in permutations(&stars) {
                let mut coords = vec![0usize; n];
                for (target, &src) in fixed_order.iter().chain(star_order.iter()).enumerate() {
                    coords[src] = target;
                }
                let mut pick = vec![0usize; n];
                loop {
                    let sym = CubeSymmetry {
                        coords: coords.clone(),
                        symbols: (0..n).map(|i| choices[i][pick[i]].clone()).collect(),
                    };
                    image.clear();
                    for m in f.members() {
                        image.push(sym.apply(m)?);
                    }
                    image.sort();
                    if best.as_ref().is_none_or(|(b, _)| image < *b) {
                        best = Some((image.clone(), sym));
                    }
                    let mut i = n;
                    loop {
                        if i == 0 {
                            break;
                        }
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
        }
    }
    let (members, symmetry) = best.expect("at least one anchor");
    Ok(Canonical { form: SubcubeCollection::new(q, n, members)?, symmetry })
}

pub fn canonical_form(f: &SubcubeCollection) -> Result<Canonical> {
    canonical_form_with_budget(f, DEFAULT_GROUP_BUDGET)
}

pub fn is_isomorphic(f: &SubcubeCollection, g: &SubcubeCollection) -> Result<bool> {
    if (f.q(), f.n(), f.len()) != (g.q(), g.n(), g.len()) {
        return Ok(false);
    }
    Ok(canonical_form(f)?.form == canonical_form(g)?.form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(words: &[&str]) -> SubcubeCollection {
        SubcubeCollection::parse_words(2, words).unwrap()
    }

    #[test]
    fn rotation_moves_first_symbol_last() {
        let r = CubeSymmetry::rotate_left(2, 4);
        let s = Subcube::parse(2, "01**").unwrap();
        assert_eq!(r.apply(&s).unwrap().to_string(), "1**0");
    }

    #[test]
    fn canonical_form_of_square_partitions() {
        let a = canonical_form(&c(&["0*", "10", "11"])).unwrap();
        let b = canonical_form(&c(&["*1", "00", "10"])).unwrap();
        assert_eq!(a.form, b.form);
        let words: Vec<String> = a.form.members().iter().map(|m| m.to_string()).collect();
        assert_eq!(words, ["00", "01", "1*"]);
    }

    #[test]
    fn witness_symmetry_maps_input_to_form() {
        let f = c(&["000", "*01", "1*0", "01*", "111"]);
        let can = canonical_form(&f).unwrap();
        assert_eq!(can.symmetry.apply_collection(&f).unwrap().sorted(), can.form);
    }

    #[test]
    fn budget_is_enforced() {
        let f = c(&["0*******", "1*******"]);
        assert!(matches!(canonical_form(&f), Err(Error::Budget(_))));
        assert!(canonical_form_with_budget(&f, u64::MAX).is_ok());
    }

    #[test]
    fn compose_matches_sequential_application() {
        let a = CubeSymmetry::new(vec![2, 0, 1], vec![vec![1, 0], vec![0, 1], vec![1, 0]]).unwrap();
        let b = CubeSymmetry::rotate_left(2, 3);
        let s = Subcube::parse(2, "0*1").unwrap();
        assert_eq!(b.compose(&a).apply(&s).unwrap(), b.apply(&a.apply(&s).unwrap()).unwrap());
    }
}
