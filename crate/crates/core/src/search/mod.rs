//! Exhaustive searches over subcube partitions and affine partitions of
//! small spaces, and closed-form bounds.
//!
//! Every search branches on the least uncovered point (position 0 most
//! significant) and tries the cells containing it in lexicographic order.
//! With witness pruning on, a branch is cut as soon as the chosen members
//! contain a sub-collection whose union is a cell other than the whole
//! space, so every completed partition reached is irreducible.

mod bounds;
mod engine;
mod objectives;
mod universe;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

pub use bounds::{bounds, Bounds};
pub use objectives::{
    avsp_min_size_search, enumerate_partitions, homogeneous_search, max_points_search, max_size_search,
    min_cover_search, min_size_search, EnumerationStats,
};
pub use universe::MAX_POINTS;

use crate::affine::AffinePartition;
use crate::collection::SubcubeCollection;
use crate::error::{Error, Result};
use crate::format::format_scp;

pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConstraints {
    pub min_size: Option<usize>,
    pub max_size: Option<usize>,
    pub require_tight: bool,
    pub homogeneous_codim: Option<u32>,
    pub require_irreducible: bool,
    /// Cut branches whose chosen members already contain a sub-collection
    /// uniting to a proper subcube. Such branches have no irreducible
    /// completion.
    pub prune_reducible_pairs: bool,
    /// Only try `0^c *^{n-c}` as the member covering `0^n`. Every partition
    /// is isomorphic to one of this form, so existence and optimum values
    /// are preserved, but only some members of each class are visited.
    pub fix_first_subcube: bool,
    pub node_budget: u64,
    /// Certificates are independent of thread count and scheduling. The
    /// searches always merge subtree results in branch order, so this holds
    /// whether or not the flag is set.
    pub deterministic: bool,
    pub threads: usize,
}

impl Default for SearchConstraints {
    fn default() -> Self {
        SearchConstraints {
            min_size: None,
            max_size: None,
            require_tight: false,
            homogeneous_codim: None,
            require_irreducible: false,
            prune_reducible_pairs: false,
            fix_first_subcube: false,
            node_budget: DEFAULT_NODE_BUDGET,
            deterministic: true,
            threads: 1,
        }
    }
}

impl SearchConstraints {
    pub fn with_budget(budget: u64) -> Self {
        SearchConstraints { node_budget: budget, ..Default::default() }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.node_budget == 0 {
            return Err(Error::Precondition("node budget must be positive".into()));
        }
        if let (Some(lo), Some(hi)) = (self.min_size, self.max_size) {
            if lo > hi {
                return Err(Error::Precondition(format!("min size {lo} exceeds max size {hi}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    MinSize,
    MaxPoints,
    MaxSize,
    Homogeneous,
    MinCover,
    AvspMinSize,
}

impl Objective {
    pub const ALL: [Objective; 6] = [
        Objective::MinSize,
        Objective::MaxPoints,
        Objective::MaxSize,
        Objective::Homogeneous,
        Objective::MinCover,
        Objective::AvspMinSize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Objective::MinSize => "min-size",
            Objective::MaxPoints => "max-points",
            Objective::MaxSize => "max-size",
            Objective::Homogeneous => "homogeneous",
            Objective::MinCover => "min-cover",
            Objective::AvspMinSize => "avsp-min-size",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Objective::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown objective `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Subcubes(SubcubeCollection),
    Affine(AffinePartition),
}

impl Certificate {
    pub fn len(&self) -> usize {
        match self {
            Certificate::Subcubes(f) => f.len(),
            Certificate::Affine(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_text(&self) -> String {
        match self {
            Certificate::Subcubes(f) => format_scp(f),
            Certificate::Affine(f) => crate::affine::format_avsp(f),
        }
    }

    fn to_inline(&self) -> String {
        match self {
            Certificate::Subcubes(f) => f.members().iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","),
            Certificate::Affine(f) => f.members().iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" | "),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// Complete search; the value is exact.
    Found,
    /// Complete search; nothing satisfies the constraints.
    NoneExists,
    /// The node budget ran out; any value is only a bound.
    Truncated,
}

impl SearchStatus {
    pub fn name(self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::NoneExists => "none",
            SearchStatus::Truncated => "truncated",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub objective: Objective,
    pub n: usize,
    pub q: u8,
    pub k: Option<u32>,
    /// Optimum (or for the homogeneous search, the common size). When the
    /// search was truncated this is only the best value seen.
    pub value: Option<u64>,
    /// Distinct solutions at the optimum that the search visited.
    pub solutions: u64,
    /// Isomorphism classes among them (subcube searches only).
    pub classes: Option<usize>,
    /// Canonical class representatives, sorted; for affine searches the
    /// first solution found.
    pub certificates: Vec<Certificate>,
    pub nodes: u64,
    pub elapsed: Duration,
    pub complete: bool,
}

impl SearchReport {
    pub fn status(&self) -> SearchStatus {
        match (self.complete, self.value) {
            (false, _) => SearchStatus::Truncated,
            (true, Some(_)) => SearchStatus::Found,
            (true, None) => SearchStatus::NoneExists,
        }
    }

    /// The optimum, only when the search completed.
    pub fn optimum(&self) -> Option<u64> {
        self.value.filter(|_| self.complete)
    }

    fn fields(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("objective", self.objective.to_string()),
            ("n", self.n.to_string()),
            ("q", self.q.to_string()),
        ];
        if let Some(k) = self.k {
            out.push(("k", k.to_string()));
        }
        out.push(("status", self.status().name().to_string()));
        let key = if self.complete { "value" } else { "best-so-far" };
        out.push((key, self.value.map_or("-".to_string(), |v| v.to_string())));
        out.push(("solutions", self.solutions.to_string()));
        if let Some(c) = self.classes {
            out.push(("classes", c.to_string()));
        }
        out.push(("nodes", self.nodes.to_string()));
        out.push(("elapsed-ms", self.elapsed.as_millis().to_string()));
        out
    }

    /// `key: value` lines followed by each certificate in its file grammar.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.fields() {
            s.push_str(&format!("{k}: {v}\n"));
        }
        for (i, c) in self.certificates.iter().enumerate() {
            s.push_str(&format!("certificate {}:\n{}", i + 1, c.to_text()));
        }
        s
    }

    /// Tab-separated `key<TAB>value` lines; certificates inline.
    pub fn to_porcelain(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.fields() {
            s.push_str(&format!("{k}\t{v}\n"));
        }
        for c in &self.certificates {
            s.push_str(&format!("certificate\t{}\n", c.to_inline()));
        }
        s
    }
}
