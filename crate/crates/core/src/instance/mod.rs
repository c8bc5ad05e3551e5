//! Online-arrival instance model.
//!
//! An [`InstanceStream`] is an ordered list of vertex arrivals. Each event
//! carries its weight, an optional bipartition label and the edges back to
//! vertices that arrived before it. The first `offline_count` events form
//! the offline set: they are present from the start and carry no edges.

mod format;
mod generators;
mod ski;

pub use format::{parse_instance, serialize_instance};
pub use generators::{
    gen_complete_bipartite, gen_random, gen_triangular, gen_two_phase_matching_hard, RandomMode,
};
pub use ski::{reduce_ski_rental, ski_rental_offline_optimum, SkiRentalSpec, LARGE_FACTOR};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Unlabeled,
}

impl Side {
    pub fn symbol(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
            Side::Unlabeled => '-',
        }
    }

    pub fn from_symbol(s: &str) -> Option<Side> {
        match s {
            "L" => Some(Side::Left),
            "R" => Some(Side::Right),
            "-" => Some(Side::Unlabeled),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexEvent {
    pub id: usize,
    pub weight: f64,
    pub side: Side,
    /// Earlier arrivals adjacent to this vertex; every entry is `< id`.
    pub neighbors: Vec<usize>,
}

impl VertexEvent {
    pub fn new(id: usize, weight: f64, side: Side, neighbors: Vec<usize>) -> Self {
        VertexEvent {
            id,
            weight,
            side,
            neighbors,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct InstanceStream {
    pub events: Vec<VertexEvent>,
    pub offline_count: usize,
    pub description: String,
}

impl InstanceStream {
    /// Builds a stream and checks every structural invariant.
    pub fn new(
        events: Vec<VertexEvent>,
        offline_count: usize,
        description: impl Into<String>,
    ) -> Result<Self> {
        let stream = InstanceStream {
            events,
            offline_count,
            description: description.into(),
        };
        stream.validate()?;
        Ok(stream)
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.events.iter().map(|e| e.neighbors.len()).sum()
    }

    /// All edges as `(earlier, later)` pairs, in arrival order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.events
            .iter()
            .flat_map(|e| e.neighbors.iter().map(move |&u| (u, e.id)))
    }

    pub fn weights(&self) -> Vec<f64> {
        self.events.iter().map(|e| e.weight).collect()
    }

    pub fn sides(&self) -> Vec<Side> {
        self.events.iter().map(|e| e.side).collect()
    }

    pub fn is_unweighted(&self) -> bool {
        self.events.iter().all(|e| e.weight == 1.0)
    }

    /// True when every vertex is labeled and every edge crosses sides.
    pub fn is_labeled_bipartite(&self) -> bool {
        self.events.iter().all(|e| e.side != Side::Unlabeled)
            && self
                .edges()
                .all(|(u, v)| self.events[u].side != self.events[v].side)
    }

    /// The first `len` arrivals as a stream of their own.
    pub fn prefix(&self, len: usize) -> InstanceStream {
        let len = len.min(self.events.len());
        InstanceStream {
            events: self.events[..len].to_vec(),
            offline_count: self.offline_count.min(len),
            description: self.description.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.offline_count > self.events.len() {
            return Err(Error::Validation(format!(
                "offline count {} exceeds event count {}",
                self.offline_count,
                self.events.len()
            )));
        }
        let mut seen = Vec::new();
        for (i, e) in self.events.iter().enumerate() {
            if e.id != i {
                return Err(Error::Validation(format!(
                    "event {i} carries id {}; ids must be consecutive from 0",
                    e.id
                )));
            }
            if !(e.weight >= 0.0) || !e.weight.is_finite() {
                return Err(Error::Validation(format!(
                    "vertex {i} has invalid weight {}",
                    e.weight
                )));
            }
            if i < self.offline_count && !e.neighbors.is_empty() {
                return Err(Error::Validation(format!(
                    "offline vertex {i} has edges; offline vertices are only joined by later arrivals"
                )));
            }
            seen.clear();
            seen.extend_from_slice(&e.neighbors);
            seen.sort_unstable();
            if let Some(&last) = seen.last() {
                if last >= i {
                    return Err(Error::Validation(format!(
                        "vertex {i} has a forward edge to {last}"
                    )));
                }
            }
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Validation(format!(
                    "vertex {i} lists a neighbour twice"
                )));
            }
        }
        let labeled = self.events.iter().any(|e| e.side != Side::Unlabeled);
        if labeled {
            for (u, v) in self.edges() {
                let (su, sv) = (self.events[u].side, self.events[v].side);
                if su != Side::Unlabeled && su == sv {
                    return Err(Error::Validation(format!(
                        "edge ({u}, {v}) joins two {:?} vertices",
                        su
                    )));
                }
            }
        }
        Ok(())
    }
}
