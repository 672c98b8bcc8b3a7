//! Depth-first partition enumeration over a [`Universe`]: branch on the
//! least uncovered point, try every disjoint cell containing it in cell
//! order.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use super::universe::Universe;

pub(crate) struct Node<'u> {
    pub uni: &'u Universe,
    pub chosen: Vec<u32>,
    pub covered: u64,
}

impl Node<'_> {
    pub fn is_complete(&self) -> bool {
        self.covered == self.uni.full
    }

    pub fn uncovered(&self) -> u64 {
        self.uni.full & !self.covered
    }
}

pub(crate) trait Hooks {
    /// Extra filter on cells beyond disjointness.
    fn admit(&self, _node: &Node, _cell: u32) -> bool {
        true
    }
    /// Cut the subtree below `node`.
    fn cut(&mut self, _node: &Node) -> bool {
        false
    }
    fn leaf(&mut self, node: &Node);
    /// Absorb the result of a subtree that comes later in search order.
    fn merge(&mut self, _later: Self)
    where
        Self: Sized,
    {
        unreachable!("sequential hooks are never merged")
    }
}

#[derive(Debug, Clone)]
pub(crate) struct EngineOptions {
    pub prune_witnesses: bool,
    /// Cells allowed as the member covering the first point.
    pub first: Option<Vec<u32>>,
    pub budget: u64,
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct EngineStats {
    pub nodes: u64,
    pub truncated: bool,
}

struct Walker<'a, 'u> {
    uni: &'u Universe,
    opts: &'a EngineOptions,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
}

impl Walker<'_, '_> {
    fn tick(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.opts.budget {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }

    /// Cells that may extend `node`, in cell order.
    fn branches<H: Hooks>(&self, node: &Node, hooks: &H) -> Vec<u32> {
        let p = node.uncovered().trailing_zeros() as usize;
        let first = node.chosen.is_empty().then_some(self.opts.first.as_ref()).flatten();
        self.uni.by_point[p]
            .iter()
            .copied()
            .filter(|&c| self.uni.bits[c as usize] & node.covered == 0)
            .filter(|c| first.is_none_or(|f| f.contains(c)))
            .filter(|&c| hooks.admit(node, c))
            .filter(|&c| !self.opts.prune_witnesses || !self.uni.creates_witness(&node.chosen, node.covered, c))
            .collect()
    }

    fn descend<H: Hooks>(&self, node: &mut Node, hooks: &mut H) {
        if !self.tick() || hooks.cut(node) {
            return;
        }
        if node.is_complete() {
            hooks.leaf(node);
            return;
        }
        for c in self.branches(node, hooks) {
            self.push(node, c);
            self.descend(node, hooks);
            self.pop(node);
            if self.stop.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    fn push(&self, node: &mut Node, c: u32) {
        node.chosen.push(c);
        node.covered |= self.uni.bits[c as usize];
    }

    fn pop(&self, node: &mut Node) {
        let c = node.chosen.pop().expect("nonempty");
        node.covered &= !self.uni.bits[c as usize];
    }
}

pub(crate) fn run_sequential<H: Hooks>(uni: &Universe, opts: &EngineOptions, mut hooks: H) -> (H, EngineStats) {
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let walker = Walker { uni, opts, nodes: &nodes, stop: &stop };
    walker.descend(&mut Node { uni, chosen: Vec::new(), covered: 0 }, &mut hooks);
    let stats = EngineStats { nodes: nodes.load(Ordering::Relaxed).min(opts.budget), truncated: stop.load(Ordering::Relaxed) };
    (hooks, stats)
}

/// Runs the search. With several threads the first-level branches are
/// distributed round-robin, each searched with a fresh copy of `hooks`, and
/// the results merged in branch order.
pub(crate) fn run<H: Hooks + Clone + Send + Sync>(uni: &Universe, opts: &EngineOptions, mut hooks: H) -> (H, EngineStats) {
    if opts.threads <= 1 {
        return run_sequential(uni, opts, hooks);
    }
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let walker = Walker { uni, opts, nodes: &nodes, stop: &stop };
    let root = Node { uni, chosen: Vec::new(), covered: 0 };
    if walker.tick() && !hooks.cut(&root) {
        let branches = walker.branches(&root, &hooks);
        let threads = opts.threads.min(branches.len()).max(1);
        let mut results: Vec<(usize, H)> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let (walker, branches, template) = (&walker, &branches, &hooks);
                    scope.spawn(move || {
                        let mut out = Vec::new();
                        for (b, &c) in branches.iter().enumerate().skip(t).step_by(threads) {
                            let mut h = template.clone();
                            let mut node = Node { uni, chosen: vec![c], covered: uni.bits[c as usize] };
                            walker.descend(&mut node, &mut h);
                            out.push((b, h));
                        }
                        out
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("search thread panicked")).collect()
        });
        results.sort_by_key(|(b, _)| *b);
        for (_, h) in results {
            hooks.merge(h);
        }
    }
    let stats = EngineStats { nodes: nodes.load(Ordering::Relaxed).min(opts.budget), truncated: stop.load(Ordering::Relaxed) };
    (hooks, stats)
}
