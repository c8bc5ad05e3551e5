//! Maximum-cardinality bipartite matching and a König vertex cover.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Adjacency from left vertices (0..n_left) to right vertices (0..n_right).
pub struct BipartiteAdjacency {
    pub n_left: usize,
    pub n_right: usize,
    pub adj: Vec<Vec<usize>>,
}

pub struct MaxMatching {
    pub size: usize,
    pub mate_left: Vec<usize>,
    pub mate_right: Vec<usize>,
    /// Membership in a minimum vertex cover (left, right).
    pub cover_left: Vec<bool>,
    pub cover_right: Vec<bool>,
}

impl MaxMatching {
    pub fn left_partner(&self, l: usize) -> Option<usize> {
        (self.mate_left[l] != NIL).then_some(self.mate_left[l])
    }
}

pub fn hopcroft_karp(g: &BipartiteAdjacency) -> MaxMatching {
    let mut mate_left = vec![NIL; g.n_left];
    let mut mate_right = vec![NIL; g.n_right];
    let mut dist = vec![0usize; g.n_left];
    let mut size = 0;

    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..g.n_left {
            if mate_left[l] == NIL {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &g.adj[l] {
                let next = mate_right[r];
                if next == NIL {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        // Vertex-disjoint shortest augmenting paths, iterative DFS.
        let mut iter = vec![0usize; g.n_left];
        for root in 0..g.n_left {
            if mate_left[root] != NIL {
                continue;
            }
            let mut stack = vec![root];
            let mut augmented = false;
            while let Some(&l) = stack.last() {
                if iter[l] == g.adj[l].len() {
                    dist[l] = usize::MAX;
                    stack.pop();
                    continue;
                }
                let r = g.adj[l][iter[l]];
                iter[l] += 1;
                let next = mate_right[r];
                if next == NIL {
                    // Flip the path recorded on the stack.
                    let mut r_cur = r;
                    while let Some(l_cur) = stack.pop() {
                        let prev = mate_left[l_cur];
                        mate_left[l_cur] = r_cur;
                        mate_right[r_cur] = l_cur;
                        r_cur = prev;
                    }
                    augmented = true;
                    break;
                } else if dist[next] == dist[l] + 1 {
                    stack.push(next);
                }
            }
            if augmented {
                size += 1;
            }
        }
    }

    // König: Z = vertices reachable from free left vertices by alternating paths.
    let mut visited_left = vec![false; g.n_left];
    let mut visited_right = vec![false; g.n_right];
    let mut queue: VecDeque<usize> = (0..g.n_left).filter(|&l| mate_left[l] == NIL).collect();
    for &l in &queue {
        visited_left[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &r in &g.adj[l] {
            if !visited_right[r] && mate_left[l] != r {
                visited_right[r] = true;
                let next = mate_right[r];
                if next != NIL && !visited_left[next] {
                    visited_left[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    MaxMatching {
        size,
        cover_left: visited_left.iter().map(|v| !v).collect(),
        cover_right: visited_right,
        mate_left,
        mate_right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_with_three_edges() {
        // l0 - r0 - l1 - r1
        let g = BipartiteAdjacency {
            n_left: 2,
            n_right: 2,
            adj: vec![vec![0], vec![0, 1]],
        };
        let m = hopcroft_karp(&g);
        assert_eq!(m.size, 2);
        let cover = m.cover_left.iter().chain(&m.cover_right).filter(|&&c| c).count();
        assert_eq!(cover, 2);
    }

    #[test]
    fn augmenting_path_needed() {
        // Greedy l0-r0 blocks l1 unless augmented.
        let g = BipartiteAdjacency {
            n_left: 3,
            n_right: 3,
            adj: vec![vec![0, 1], vec![0], vec![1, 2]],
        };
        let m = hopcroft_karp(&g);
        assert_eq!(m.size, 3);
        for l in 0..3 {
            let r = m.left_partner(l).unwrap();
            assert!(g.adj[l].contains(&r));
            assert_eq!(m.mate_right[r], l);
        }
    }
}
