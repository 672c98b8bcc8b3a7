use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;
use std::time::Instant;

use super::engine::{run, run_sequential, EngineOptions, Hooks, Node};
use super::universe::Universe;
use super::{Certificate, Objective, SearchConstraints, SearchReport};
use crate::collection::SubcubeCollection;
use crate::cube::{mask, Subcube};
use crate::error::{precondition, Error, Result};
use crate::irreducibility::is_irreducible;
use crate::symmetry::canonical_form;

fn engine_options(uni: &Universe, c: &SearchConstraints, budget: u64) -> EngineOptions {
    EngineOptions {
        prune_witnesses: c.prune_reducible_pairs,
        first: c.fix_first_subcube.then(|| first_cells(uni)),
        budget,
        threads: c.threads.max(1),
    }
}

/// Ids of `0^c *^{n-c}` for `c = 0..=n`.
fn first_cells(uni: &Universe) -> Vec<u32> {
    (0..uni.len() as u32)
        .filter(|&id| {
            let s = uni.subcube(id);
            let fixed = s.fixed_mask();
            fixed == mask(fixed.count_ones() as u8) && s.symbols().iter().all(|x| x.is_none_or(|v| v == 0))
        })
        .collect()
}

/// Star pattern index and parity of each admissible cell, for the
/// homogeneous parity cut.
struct ParityTable {
    pattern: Vec<usize>,
    odd: Vec<bool>,
    admissible: Vec<u32>,
    patterns: usize,
}

impl ParityTable {
    fn new(uni: &Universe, dim: u32) -> ParityTable {
        let mut index: HashMap<u64, usize> = HashMap::new();
        let mut pattern = vec![usize::MAX; uni.len()];
        let mut odd = vec![false; uni.len()];
        let mut admissible = Vec::new();
        for id in 0..uni.len() as u32 {
            if uni.dims[id as usize] != dim {
                continue;
            }
            let s = uni.subcube(id);
            let next = index.len();
            pattern[id as usize] = *index.entry(s.star_mask()).or_insert(next);
            odd[id as usize] = s.nonzero_count() % 2 == 1;
            admissible.push(id);
        }
        ParityTable { pattern, odd, admissible, patterns: index.len() }
    }

    /// Some star pattern can no longer balance its parities.
    fn unbalanced(&self, node: &Node) -> bool {
        let mut chosen = vec![[0u32; 2]; self.patterns];
        for &c in &node.chosen {
            chosen[self.pattern[c as usize]][self.odd[c as usize] as usize] += 1;
        }
        let mut avail = vec![[0u32; 2]; self.patterns];
        for &c in &self.admissible {
            if node.uni.bits[c as usize] & node.covered == 0 {
                avail[self.pattern[c as usize]][self.odd[c as usize] as usize] += 1;
            }
        }
        (0..self.patterns).any(|p| {
            let [e, o] = chosen[p];
            let [ea, oa] = avail[p];
            e > o + oa || o > e + ea
        })
    }
}

#[derive(Clone)]
struct Filter {
    min_size: usize,
    max_size: usize,
    tight: bool,
    check_irreducible: bool,
    dim: Option<u32>,
    parity: Option<Arc<ParityTable>>,
}

impl Filter {
    fn new(uni: &Universe, c: &SearchConstraints) -> Result<Filter> {
        let dim = match c.homogeneous_codim {
            Some(k) if k as usize > uni.n => return precondition(format!("codimension {k} exceeds length {}", uni.n)),
            Some(k) => Some(uni.n as u32 - k),
            None => None,
        };
        let parity = match (dim, uni.q) {
            (Some(d), 2) => Some(Arc::new(ParityTable::new(uni, d))),
            _ => None,
        };
        Ok(Filter {
            min_size: c.min_size.unwrap_or(0),
            max_size: c.max_size.unwrap_or(usize::MAX),
            tight: c.require_tight,
            check_irreducible: c.require_irreducible && !c.prune_reducible_pairs,
            dim,
            parity,
        })
    }

    fn admit(&self, uni: &Universe, cell: u32) -> bool {
        self.dim.is_none_or(|d| uni.dims[cell as usize] == d)
    }

    fn cut(&self, node: &Node) -> bool {
        if node.chosen.len() >= self.max_size && !node.is_complete() {
            return true;
        }
        self.parity.as_ref().is_some_and(|t| t.unbalanced(node))
    }

    fn accept(&self, node: &Node) -> bool {
        node.chosen.len() >= self.min_size
            && (!self.tight || node.uni.is_tight(&node.chosen))
            && (!self.check_irreducible || node.uni.is_irreducible(&node.chosen))
    }
}

#[derive(Clone)]
struct Collect {
    filter: Filter,
    found: Vec<Vec<u32>>,
}

impl Hooks for Collect {
    fn admit(&self, node: &Node, cell: u32) -> bool {
        self.filter.admit(node.uni, cell)
    }
    fn cut(&mut self, node: &Node) -> bool {
        self.filter.cut(node)
    }
    fn leaf(&mut self, node: &Node) {
        if self.filter.accept(node) {
            let mut v = node.chosen.clone();
            v.sort_unstable();
            self.found.push(v);
        }
    }
    fn merge(&mut self, later: Self) {
        self.found.extend(later.found);
    }
}

struct Visit<'a> {
    filter: Filter,
    visitor: &'a mut dyn FnMut(&SubcubeCollection),
    visited: u64,
}

impl Hooks for Visit<'_> {
    fn admit(&self, node: &Node, cell: u32) -> bool {
        self.filter.admit(node.uni, cell)
    }
    fn cut(&mut self, node: &Node) -> bool {
        self.filter.cut(node)
    }
    fn leaf(&mut self, node: &Node) {
        if self.filter.accept(node) {
            self.visited += 1;
            (self.visitor)(&node.uni.collection(&node.chosen));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationStats {
    pub nodes: u64,
    pub visited: u64,
    pub complete: bool,
}

/// Visits every subcube partition of `{0..q-1}^n` satisfying the
/// constraints, once each (or, with `fix_first_subcube`, at least one
/// member of each isomorphism class). Runs on one thread.
pub fn enumerate_partitions(
    n: usize,
    q: u8,
    c: &SearchConstraints,
    mut visitor: impl FnMut(&SubcubeCollection),
) -> Result<EnumerationStats> {
    c.validate()?;
    let uni = Universe::subcubes(q, n)?;
    let hooks = Visit { filter: Filter::new(&uni, c)?, visitor: &mut visitor, visited: 0 };
    let (h, st) = run_sequential(&uni, &engine_options(&uni, c, c.node_budget), hooks);
    Ok(EnumerationStats { nodes: st.nodes, visited: h.visited, complete: !st.truncated })
}

fn verify_partition(f: &SubcubeCollection, tight: bool) -> bool {
    f.is_partition() && (!tight || f.is_tight()) && is_irreducible(f)
}

/// Deduplicates solutions up to isomorphism. Falls back to plain sorting
/// when the symmetry group is too large to canonicalize.
fn classes(uni: &Universe, found: &[Vec<u32>], verify: impl Fn(&SubcubeCollection) -> bool) -> Result<(Vec<Certificate>, Option<usize>)> {
    let mut reps: BTreeMap<Vec<Subcube>, SubcubeCollection> = BTreeMap::new();
    let mut canonical = true;
    for sol in found {
        let f = uni.collection(sol);
        assert!(verify(&f), "search produced an invalid certificate: {f:?}");
        let form = match canonical_form(&f) {
            Ok(c) => c.form,
            Err(Error::Budget(_)) => {
                canonical = false;
                f
            }
            Err(e) => return Err(e),
        };
        reps.entry(form.members().to_vec()).or_insert(form);
    }
    let count = reps.len();
    Ok((reps.into_values().map(Certificate::Subcubes).collect(), canonical.then_some(count)))
}

struct Draft {
    objective: Objective,
    n: usize,
    q: u8,
    k: Option<u32>,
    start: Instant,
    nodes: u64,
}

impl Draft {
    fn new(objective: Objective, n: usize, q: u8, k: Option<u32>) -> Draft {
        Draft { objective, n, q, k, start: Instant::now(), nodes: 0 }
    }

    fn finish(
        self,
        value: Option<u64>,
        solutions: u64,
        classes: Option<usize>,
        certificates: Vec<Certificate>,
        complete: bool,
    ) -> SearchReport {
        SearchReport {
            objective: self.objective,
            n: self.n,
            q: self.q,
            k: self.k,
            value,
            solutions,
            classes,
            certificates,
            nodes: self.nodes,
            elapsed: self.start.elapsed(),
            complete,
        }
    }
}

/// Iterative deepening on the size: the first size admitting a solution is
/// the minimum, and every solution of that size is collected.
fn deepen(
    uni: &Universe,
    c: &SearchConstraints,
    draft: &mut Draft,
) -> Result<(Option<usize>, Vec<Vec<u32>>, bool)> {
    let npoints = uni.full.count_ones() as usize;
    for size in 1..=npoints {
        let mut sized = c.clone();
        sized.min_size = Some(size);
        sized.max_size = Some(size);
        let hooks = Collect { filter: Filter::new(uni, &sized)?, found: Vec::new() };
        let budget = c.node_budget.saturating_sub(draft.nodes).max(1);
        let (h, st) = run(uni, &engine_options(uni, c, budget), hooks);
        draft.nodes += st.nodes;
        if st.truncated {
            return Ok((None, Vec::new(), false));
        }
        if !h.found.is_empty() {
            return Ok((Some(size), h.found, true));
        }
    }
    Ok((None, Vec::new(), true))
}

/// Smallest tight irreducible partition of `{0..q-1}^n`.
pub fn min_size_search(n: usize, q: u8, c: &SearchConstraints) -> Result<SearchReport> {
    c.validate()?;
    let uni = Universe::subcubes(q, n)?;
    let mut draft = Draft::new(Objective::MinSize, n, q, None);
    let c = SearchConstraints { require_tight: true, require_irreducible: true, prune_reducible_pairs: true, ..c.clone() };
    let (size, found, complete) = deepen(&uni, &c, &mut draft)?;
    let (certs, count) = classes(&uni, &found, |f| verify_partition(f, true))?;
    Ok(draft.finish(size.map(|s| s as u64), found.len() as u64, count, certs, complete))
}

/// Existence and classes of irreducible `(n, k)`-homogeneous partitions.
pub fn homogeneous_search(n: usize, k: u32, c: &SearchConstraints) -> Result<SearchReport> {
    c.validate()?;
    if k == 0 || k as usize > n {
        return precondition(format!("codimension must lie in 1..={n}"));
    }
    let uni = Universe::subcubes(2, n)?;
    let mut draft = Draft::new(Objective::Homogeneous, n, 2, Some(k));
    let c = SearchConstraints {
        require_tight: true,
        require_irreducible: true,
        prune_reducible_pairs: true,
        homogeneous_codim: Some(k),
        ..c.clone()
    };
    let hooks = Collect { filter: Filter::new(&uni, &c)?, found: Vec::new() };
    let (h, st) = run(&uni, &engine_options(&uni, &c, c.node_budget), hooks);
    draft.nodes = st.nodes;
    let verify = |f: &SubcubeCollection| verify_partition(f, true) && f.structure_flags().homogeneous_codim == Some(k);
    let (certs, count) = classes(&uni, &h.found, verify)?;
    let value = (!h.found.is_empty()).then_some(1u64 << k);
    Ok(draft.finish(value, h.found.len() as u64, count, certs, !st.truncated))
}

/// Points of the binary cube: parity classes and neighbourhoods.
struct Geometry {
    even: u64,
    neighbors: Vec<u64>,
}

impl Geometry {
    fn new(n: usize) -> Geometry {
        let points = 1usize << n;
        let even = (0..points).filter(|p| p.count_ones() % 2 == 0).fold(0u64, |m, p| m | 1 << p);
        let neighbors = (0..points).map(|p| (0..n).fold(0u64, |m, i| m | 1 << (p ^ 1 << i))).collect();
        Geometry { even, neighbors }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quantity {
    Points,
    Members,
}

/// Branch and bound for the largest number of points (or members) of an
/// irreducible binary partition.
///
/// Point members of any partition split evenly by parity, since every
/// other member and the whole cube do. A future point member must be
/// uncovered and, by irreducibility, not adjacent to a chosen point member.
#[derive(Clone)]
struct Maximize {
    quantity: Quantity,
    geometry: Arc<Geometry>,
    best: Option<u64>,
    solution: Option<Vec<u32>>,
}

impl Maximize {
    fn value(&self, node: &Node) -> u64 {
        match self.quantity {
            Quantity::Points => node.chosen.iter().filter(|&&c| node.uni.dims[c as usize] == 0).count() as u64,
            Quantity::Members => node.chosen.len() as u64,
        }
    }

    fn bound(&self, node: &Node) -> u64 {
        let g = &self.geometry;
        let mut points = 0u64;
        for &c in &node.chosen {
            if node.uni.dims[c as usize] == 0 {
                points |= node.uni.bits[c as usize];
            }
        }
        let mut blocked = 0u64;
        let mut rest = points;
        while rest != 0 {
            blocked |= g.neighbors[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        let uncovered = node.uncovered();
        let avail = uncovered & !blocked;
        let even = (points & g.even).count_ones() + (avail & g.even).count_ones();
        let odd = (points & !g.even).count_ones() + (avail & !g.even).count_ones();
        let max_points = 2 * even.min(odd) as u64;
        if (points.count_ones() as u64) > max_points {
            // the point members can no longer balance
            return 0;
        }
        match self.quantity {
            Quantity::Points => max_points,
            Quantity::Members => {
                let new_points = (avail.count_ones() as u64).min(max_points - points.count_ones() as u64);
                node.chosen.len() as u64 + new_points + (uncovered.count_ones() as u64 - new_points) / 2
            }
        }
    }
}

impl Hooks for Maximize {
    fn cut(&mut self, node: &Node) -> bool {
        self.best.is_some_and(|b| self.bound(node) <= b)
    }
    fn leaf(&mut self, node: &Node) {
        let v = self.value(node);
        if self.best.is_none_or(|b| v > b) {
            self.best = Some(v);
            self.solution = Some(node.chosen.clone());
        }
    }
    fn merge(&mut self, later: Self) {
        if later.best > self.best {
            self.best = later.best;
            self.solution = later.solution;
        }
    }
}

fn maximize(objective: Objective, quantity: Quantity, n: usize, c: &SearchConstraints) -> Result<SearchReport> {
    c.validate()?;
    let uni = Universe::subcubes(2, n)?;
    let mut draft = Draft::new(objective, n, 2, None);
    let c = SearchConstraints { require_irreducible: true, prune_reducible_pairs: true, ..c.clone() };
    let hooks = Maximize { quantity, geometry: Arc::new(Geometry::new(n)), best: None, solution: None };
    let (h, st) = run(&uni, &engine_options(&uni, &c, c.node_budget), hooks);
    draft.nodes = st.nodes;
    let found: Vec<Vec<u32>> = h.solution.into_iter().collect();
    let (certs, _) = classes(&uni, &found, |f| verify_partition(f, false))?;
    Ok(draft.finish(h.best, found.len() as u64, None, certs, !st.truncated))
}

/// Largest number of point members of an irreducible binary partition.
/// Witness pruning is always on.
pub fn max_points_search(n: usize, c: &SearchConstraints) -> Result<SearchReport> {
    maximize(Objective::MaxPoints, Quantity::Points, n, c)
}

/// Largest size of an irreducible binary partition. Witness pruning is
/// always on.
pub fn max_size_search(n: usize, c: &SearchConstraints) -> Result<SearchReport> {
    maximize(Objective::MaxSize, Quantity::Members, n, c)
}

struct CoverSearch<'u> {
    uni: &'u Universe,
    limit: usize,
    budget: u64,
    nodes: u64,
    found: BTreeSet<Vec<u32>>,
}

impl CoverSearch<'_> {
    fn minimal(&self, chosen: &[u32]) -> bool {
        let bits = &self.uni.bits;
        (0..chosen.len()).all(|i| {
            let others = chosen.iter().enumerate().filter(|&(j, _)| j != i).fold(0u64, |m, (_, &c)| m | bits[c as usize]);
            bits[chosen[i] as usize] & !others != 0
        })
    }

    /// False once the budget is exhausted.
    fn descend(&mut self, chosen: &mut Vec<u32>, covered: u64) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if covered == self.uni.full {
            if self.uni.is_tight(chosen) && self.minimal(chosen) {
                let mut v = chosen.clone();
                v.sort_unstable();
                self.found.insert(v);
            }
            return true;
        }
        if chosen.len() == self.limit {
            return true;
        }
        let p = (self.uni.full & !covered).trailing_zeros() as usize;
        for &c in &self.uni.by_point[p] {
            chosen.push(c);
            let ok = self.descend(chosen, covered | self.uni.bits[c as usize]);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Smallest tight minimal subcube cover of `{0..q-1}^n`: every coordinate
/// mentioned, every member covering a point no other member covers.
pub fn min_cover_search(n: usize, q: u8, c: &SearchConstraints) -> Result<SearchReport> {
    c.validate()?;
    let uni = Universe::subcubes(q, n)?;
    let mut draft = Draft::new(Objective::MinCover, n, q, None);
    let npoints = uni.full.count_ones() as usize;
    for limit in 1..=npoints {
        let mut s = CoverSearch { uni: &uni, limit, budget: c.node_budget - draft.nodes, nodes: 0, found: BTreeSet::new() };
        let ok = s.descend(&mut Vec::new(), 0);
        draft.nodes += s.nodes.min(s.budget);
        if !ok {
            return Ok(draft.finish(None, 0, None, Vec::new(), false));
        }
        let found: Vec<Vec<u32>> = s.found.into_iter().filter(|v| v.len() == limit).collect();
        if !found.is_empty() {
            let verify = |f: &SubcubeCollection| f.is_tight() && f.cover_flags().is_ok_and(|fl| fl.is_cover && fl.is_minimal);
            let (certs, count) = classes(&uni, &found, verify)?;
            return Ok(draft.finish(Some(limit as u64), found.len() as u64, count, certs, true));
        }
    }
    Ok(draft.finish(None, 0, None, Vec::new(), true))
}

/// Smallest tight irreducible affine partition of `F_2^n`, `n <= 5`.
pub fn avsp_min_size_search(n: usize, c: &SearchConstraints) -> Result<SearchReport> {
    c.validate()?;
    let uni = Universe::affine(n)?;
    let mut draft = Draft::new(Objective::AvspMinSize, n, 2, None);
    let c = SearchConstraints {
        require_tight: true,
        require_irreducible: true,
        prune_reducible_pairs: true,
        fix_first_subcube: false,
        homogeneous_codim: None,
        ..c.clone()
    };
    let (size, found, complete) = deepen(&uni, &c, &mut draft)?;
    for sol in &found {
        let f = uni.affine_partition(sol);
        assert!(f.is_partition() && f.is_tight() && f.is_irreducible(), "invalid affine certificate: {f:?}");
    }
    let certs = found.first().map(|s| Certificate::Affine(uni.affine_partition(s))).into_iter().collect();
    Ok(draft.finish(size.map(|s| s as u64), found.len() as u64, None, certs, complete))
}
