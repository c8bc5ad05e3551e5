use crate::error::{Error, Result};
use crate::instance::{InstanceStream, Side};

/// Offline view of an arrival prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct StaticGraph {
    pub n: usize,
    pub weights: Vec<f64>,
    /// Unordered pairs, stored as `(smaller, larger)`.
    pub edges: Vec<(usize, usize)>,
    pub sides: Option<Vec<Side>>,
}

impl StaticGraph {
    pub fn new(
        n: usize,
        weights: Vec<f64>,
        edges: Vec<(usize, usize)>,
        sides: Option<Vec<Side>>,
    ) -> Result<Self> {
        if weights.len() != n {
            return Err(Error::Validation(format!("{} weights for {n} vertices", weights.len())));
        }
        if let Some(s) = &sides {
            if s.len() != n {
                return Err(Error::Validation(format!("{} side labels for {n} vertices", s.len())));
            }
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
            return Err(Error::Validation(format!("invalid vertex weight {w}")));
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::Validation(format!("self-loop at {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::Validation(format!("edge ({a}, {b}) out of range")));
            }
            norm.push((a.min(b), a.max(b)));
        }
        let mut sorted = norm.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("duplicate edge".into()));
        }
        Ok(StaticGraph {
            n,
            weights,
            edges: norm,
            sides,
        })
    }

    /// Unit-weight graph without side labels.
    pub fn unweighted(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(n, vec![1.0; n], edges, None)
    }

    /// The graph induced by the first `len` arrivals. Side labels are kept
    /// only if every vertex in the prefix has one.
    pub fn from_prefix(stream: &InstanceStream, len: usize) -> Self {
        let len = len.min(stream.len());
        let events = &stream.events[..len];
        let edges = events
            .iter()
            .flat_map(|e| e.neighbors.iter().map(move |&u| (u, e.id)))
            .collect();
        let sides = events
            .iter()
            .all(|e| e.side != Side::Unlabeled)
            .then(|| events.iter().map(|e| e.side).collect());
        StaticGraph {
            n: len,
            weights: events.iter().map(|e| e.weight).collect(),
            edges,
            sides,
        }
    }

    pub fn from_stream(stream: &InstanceStream) -> Self {
        Self::from_prefix(stream, stream.len())
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    /// Side labels, if present and consistent with every edge.
    pub fn bipartition(&self) -> Result<&[Side]> {
        let sides = self
            .sides
            .as_deref()
            .ok_or_else(|| Error::NotBipartite("no side labels".into()))?;
        if let Some(i) = sides.iter().position(|&s| s == Side::Unlabeled) {
            return Err(Error::NotBipartite(format!("vertex {i} is unlabeled")));
        }
        if let Some(&(a, b)) = self.edges.iter().find(|&&(a, b)| sides[a] == sides[b]) {
            return Err(Error::NotBipartite(format!("edge ({a}, {b}) joins one side")));
        }
        Ok(sides)
    }

    /// Same graph with vertex `i` renamed `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let mut weights = vec![0.0; self.n];
        for (i, &p) in perm.iter().enumerate() {
            weights[p] = self.weights[i];
        }
        let sides = self.sides.as_ref().map(|s| {
            let mut out = vec![Side::Unlabeled; self.n];
            for (i, &p) in perm.iter().enumerate() {
                out[p] = s[i];
            }
            out
        });
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b])))
            .collect();
        StaticGraph {
            n: self.n,
            weights,
            edges,
            sides,
        }
    }
}
