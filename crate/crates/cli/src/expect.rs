//! Parsed input files and the `--expect` predicates checked against them.

use std::fmt;
use std::str::FromStr;

use subcube::affine::{parse_avsp, AffinePartition};
use subcube::format::parse_scp;
use subcube::{Result, SubcubeCollection};

#[derive(Debug, Clone)]
pub enum Input {
    Subcubes(SubcubeCollection),
    Affine(AffinePartition),
}

impl Input {
    /// Reads either grammar; the first content line decides which.
    pub fn parse(text: &str) -> Result<Input> {
        let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
        if first.is_some_and(|l| l.starts_with("avsp")) {
            parse_avsp(text).map(Input::Affine)
        } else {
            parse_scp(text).map(Input::Subcubes)
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Input::Subcubes(f) => f.len(),
            Input::Affine(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn check(&self) -> Checks {
        match self {
            Input::Subcubes(f) => {
                let partition = f.is_partition();
                let tight = f.is_tight();
                let (irreducible, witness) = if partition {
                    let v = subcube::test_irreducible(f);
                    let w = v.witness().map(|w| {
                        let parts: Vec<String> = w.members.iter().map(|&i| f.members()[i].to_string()).collect();
                        format!("{} = {}", parts.join(" ∪ "), w.join)
                    });
                    (Some(v.is_irreducible()), w)
                } else {
                    (None, None)
                };
                let homogeneous = if partition { f.structure_flags().homogeneous_codim } else { None };
                Checks { partition, tight, irreducible, witness, homogeneous }
            }
            Input::Affine(g) => {
                let partition = g.is_partition();
                let tight = g.is_tight();
                let (irreducible, witness) = if partition {
                    let v = g.test_irreducible();
                    let w = v.witness().map(|w| {
                        let parts: Vec<String> = w.members.iter().map(|&i| format!("[{}]", g.members()[i])).collect();
                        format!("{} = [{}]", parts.join(" ∪ "), w.join)
                    });
                    (Some(v.is_irreducible()), w)
                } else {
                    (None, None)
                };
                let n = g.n() as u32;
                let dim = g.members()[0].dimension();
                let same = g.members().iter().all(|m| m.dimension() == dim);
                let homogeneous = (partition && tight && same).then_some(n - dim);
                Checks { partition, tight, irreducible, witness, homogeneous }
            }
        }
    }
}

/// Properties of one input. Irreducibility is only decided for partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checks {
    pub partition: bool,
    pub tight: bool,
    pub irreducible: Option<bool>,
    /// `a ∪ b ∪ .. = join` when reducible.
    pub witness: Option<String>,
    /// Common codimension of a tight partition whose members all share one.
    pub homogeneous: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Partition,
    Tight,
    Irreducible,
    Homogeneous(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expectation {
    pub predicate: Predicate,
    /// Written with a leading `!`: the predicate must fail.
    pub negated: bool,
}

impl Expectation {
    pub fn holds(&self, c: &Checks) -> bool {
        let value = match self.predicate {
            Predicate::Partition => c.partition,
            Predicate::Tight => c.tight,
            Predicate::Irreducible => c.irreducible == Some(true),
            Predicate::Homogeneous(k) => c.homogeneous == Some(k),
        };
        value != self.negated
    }
}

impl FromStr for Expectation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (negated, body) = match s.strip_prefix('!') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let predicate = match body {
            "partition" => Predicate::Partition,
            "tight" => Predicate::Tight,
            "irreducible" => Predicate::Irreducible,
            _ => match body.strip_prefix("homogeneous=").map(str::parse) {
                Some(Ok(k)) => Predicate::Homogeneous(k),
                _ => return Err(format!("unknown expectation `{s}`")),
            },
        };
        Ok(Expectation { predicate, negated })
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("!")?;
        }
        match self.predicate {
            Predicate::Partition => f.write_str("partition"),
            Predicate::Tight => f.write_str("tight"),
            Predicate::Irreducible => f.write_str("irreducible"),
            Predicate::Homogeneous(k) => write!(f, "homogeneous={k}"),
        }
    }
}

/// Comma-separated list; empty means no expectations.
pub fn parse_expectations(s: &str) -> std::result::Result<Vec<Expectation>, String> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
}
