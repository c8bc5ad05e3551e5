use super::graph::StaticGraph;
use super::solve::offline_optimum;
use crate::instance::InstanceStream;

const NIL: usize = usize::MAX;

/// Maximum matching of a growing bipartite graph, one augmenting-path search
/// per arrival.
#[derive(Debug, Clone, Default)]
pub struct IncrementalMatching {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    // Neighbours before this index are known to be matched.
    free_scan: Vec<usize>,
    stamp: Vec<u32>,
    round: u32,
    size: usize,
}

impl IncrementalMatching {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate.get(v).copied().filter(|&m| m != NIL)
    }

    /// Adds the next vertex; neighbours must already be present and the
    /// graph must stay bipartite. Returns the new matching size.
    pub fn push(&mut self, neighbors: &[usize]) -> usize {
        let v = self.adj.len();
        for &u in neighbors {
            self.adj[u].push(v);
        }
        self.adj.push(neighbors.to_vec());
        self.mate.push(NIL);
        self.free_scan.push(0);
        self.stamp.push(0);
        if self.augment_from(v) {
            self.size += 1;
        }
        self.size
    }

    fn find_free(&mut self, x: usize) -> Option<usize> {
        while self.free_scan[x] < self.adj[x].len() {
            let u = self.adj[x][self.free_scan[x]];
            if self.mate[u] == NIL {
                return Some(u);
            }
            self.free_scan[x] += 1;
        }
        None
    }

    fn augment_from(&mut self, v: usize) -> bool {
        self.round += 1;
        let round = self.round;
        let mut stack: Vec<(usize, usize)> = vec![(v, 0)];
        let mut via: Vec<usize> = Vec::new();
        while let Some(&(x, idx)) = stack.last() {
            let end = match self.find_free(x) {
                Some(u) if self.stamp[u] != round => Some(u),
                _ => None,
            };
            if let Some(u) = end {
                via.push(u);
                for (&(x, _), &u) in stack.iter().zip(&via) {
                    self.mate[x] = u;
                    self.mate[u] = x;
                }
                return true;
            }
            if idx < self.adj[x].len() {
                stack.last_mut().unwrap().1 += 1;
                let u = self.adj[x][idx];
                if self.stamp[u] == round {
                    continue;
                }
                self.stamp[u] = round;
                let w = self.mate[u];
                if w != NIL {
                    via.push(u);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
                via.pop();
            }
        }
        false
    }
}

/// Offline optimum of every prefix `1..=len` of the stream.
///
/// Unit-weight labeled bipartite streams use [`IncrementalMatching`]; all
/// other streams are solved from scratch per prefix.
pub fn prefix_optima(stream: &InstanceStream) -> Vec<f64> {
    if stream.is_unweighted() && stream.is_labeled_bipartite() {
        let mut inc = IncrementalMatching::new();
        return stream
            .events
            .iter()
            .map(|e| inc.push(&e.neighbors) as f64)
            .collect();
    }
    (1..=stream.len())
        .map(|len| offline_optimum(&StaticGraph::from_prefix(stream, len)).min_cover_value)
        .collect()
}

/// Offline optimum of the whole stream.
pub fn final_optimum(stream: &InstanceStream) -> f64 {
    offline_optimum(&StaticGraph::from_stream(stream)).min_cover_value
}
