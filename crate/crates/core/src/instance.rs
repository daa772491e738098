use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Result, VckError};
use crate::graph::VertexGraph;

/// Knapsack capacity `s` and target value `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct KnapsackBound {
    pub s: u64,
    pub d: u64,
}

impl KnapsackBound {
    pub fn new(s: u64, d: u64) -> Self {
        KnapsackBound { s, d }
    }
}

/// Which vertex covers qualify as solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Any,
    /// Covers of cardinality at most `k`.
    Budget(usize),
    /// Covers of minimum cardinality.
    Minimum,
    /// Inclusion-minimal covers.
    Minimal,
}

/// [`Variant`] without its budget, as selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariantKind {
    Any,
    Budget,
    Minimum,
    Minimal,
}

impl Variant {
    pub fn kind(self) -> VariantKind {
        match self {
            Variant::Any => VariantKind::Any,
            Variant::Budget(_) => VariantKind::Budget,
            Variant::Minimum => VariantKind::Minimum,
            Variant::Minimal => VariantKind::Minimal,
        }
    }
}

impl VariantKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VariantKind::Any => "any",
            VariantKind::Budget => "budget",
            VariantKind::Minimum => "minimum",
            VariantKind::Minimal => "minimal",
        }
    }
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VariantKind {
    type Err = VckError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" => Ok(VariantKind::Any),
            "budget" => Ok(VariantKind::Budget),
            "minimum" => Ok(VariantKind::Minimum),
            "minimal" => Ok(VariantKind::Minimal),
            other => Err(VckError::input(format!("unknown variant '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VckInstance {
    pub graph: VertexGraph,
    pub bound: KnapsackBound,
    pub variant: Variant,
}

impl VckInstance {
    pub fn new(graph: VertexGraph, bound: KnapsackBound, variant: Variant) -> Result<Self> {
        if let Variant::Budget(k) = variant {
            if k == 0 || k > graph.n() {
                return Err(VckError::input(format!(
                    "budget {k} outside 1..={}",
                    graph.n()
                )));
            }
        }
        Ok(VckInstance {
            graph,
            bound,
            variant,
        })
    }

    /// Same graph and bound, different variant.
    pub fn with_variant(&self, variant: Variant) -> Result<Self> {
        VckInstance::new(self.graph.clone(), self.bound, variant)
    }
}

/// A selected set of vertices, sets or elements with its totals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Solution {
    pub members: Vec<usize>,
    pub total_weight: u64,
    pub total_value: u64,
}

impl Solution {
    /// Sorts `members` and sums the supplied weights and values over them.
    pub fn from_members(mut members: Vec<usize>, weight: &[u64], value: &[u64]) -> Self {
        members.sort_unstable();
        members.dedup();
        let total_weight = members.iter().map(|&i| weight[i]).sum();
        let total_value = members.iter().map(|&i| value[i]).sum();
        Solution {
            members,
            total_weight,
            total_value,
        }
    }

    pub fn of_vertices(g: &VertexGraph, members: Vec<usize>) -> Self {
        Self::from_members(members, g.weights(), g.values())
    }

    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    /// `(weight, value)` with the value clamped at `d`.
    pub fn clamped_pair(&self, d: u64) -> (u64, u64) {
        (self.total_weight, self.total_value.min(d))
    }
}
