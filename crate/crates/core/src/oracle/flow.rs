//! Dinic max-flow on real capacities, used for weighted bipartite cover.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    cap: f64,
}

pub struct FlowNetwork {
    graph: Vec<Vec<Arc>>,
    level: Vec<usize>,
    iter: Vec<usize>,
    tol: f64,
}

impl FlowNetwork {
    /// Residual capacities at or below `tol` count as saturated.
    pub fn new(nodes: usize, tol: f64) -> Self {
        FlowNetwork {
            graph: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            iter: vec![0; nodes],
            tol,
        }
    }

    /// Returns a handle `(from, index)` for reading the flow later.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: f64) -> (usize, usize) {
        let fwd = self.graph[from].len();
        let back = self.graph[to].len();
        self.graph[from].push(Arc { to, rev: back, cap });
        self.graph[to].push(Arc { to: from, rev: fwd, cap: 0.0 });
        (from, fwd)
    }

    /// Flow currently routed through an edge added with `add_edge`.
    pub fn flow(&self, handle: (usize, usize)) -> f64 {
        let arc = &self.graph[handle.0][handle.1];
        self.graph[arc.to][arc.rev].cap
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for arc in &self.graph[v] {
                if arc.cap > self.tol && self.level[arc.to] == usize::MAX {
                    self.level[arc.to] = self.level[v] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: f64) -> f64 {
        if v == t {
            return pushed;
        }
        while self.iter[v] < self.graph[v].len() {
            let i = self.iter[v];
            let Arc { to, cap, .. } = self.graph[v][i];
            if cap > self.tol && self.level[to] == self.level[v] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0.0 {
                    let rev = self.graph[v][i].rev;
                    self.graph[v][i].cap -= got;
                    self.graph[to][rev].cap += got;
                    return got;
                }
            }
            self.iter[v] += 1;
        }
        0.0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        let mut total = 0.0;
        loop {
            self.bfs(s);
            if self.level[t] == usize::MAX {
                return total;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, f64::INFINITY);
                if f <= 0.0 {
                    break;
                }
                total += f;
            }
        }
    }

    /// Source side of the minimum cut after `max_flow`.
    pub fn source_side(&mut self, s: usize) -> Vec<bool> {
        self.bfs(s);
        self.level.iter().map(|&l| l != usize::MAX).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond() {
        let mut net = FlowNetwork::new(4, 1e-12);
        net.add_edge(0, 1, 3.0);
        net.add_edge(0, 2, 2.0);
        let mid = net.add_edge(1, 2, 1.0);
        net.add_edge(1, 3, 2.0);
        net.add_edge(2, 3, 3.0);
        assert_eq!(net.max_flow(0, 3), 5.0);
        assert!(net.flow(mid) <= 1.0);
        let side = net.source_side(0);
        assert!(side[0] && !side[3]);
    }
}
