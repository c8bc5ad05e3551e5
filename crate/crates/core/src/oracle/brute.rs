use super::graph::StaticGraph;
use crate::error::{Error, Result};

pub const BRUTE_FORCE_LIMIT: usize = 16;

/// Minimum weighted cover over `{0, ½, 1}^V` by exhaustive search.
pub fn brute_force_half_integral(g: &StaticGraph) -> Result<f64> {
    if g.n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(g.n, BRUTE_FORCE_LIMIT));
    }
    // Constraints towards earlier vertices only.
    let mut earlier: Vec<Vec<usize>> = vec![Vec::new(); g.n];
    for &(a, b) in &g.edges {
        earlier[b.max(a)].push(a.min(b));
    }
    // Potentials are stored doubled: 0, 1, 2.
    let mut assign = vec![0u8; g.n];
    let mut best = f64::INFINITY;
    search(g, &earlier, 0, 0.0, &mut assign, &mut best);
    Ok(best)
}

fn search(
    g: &StaticGraph,
    earlier: &[Vec<usize>],
    v: usize,
    cost: f64,
    assign: &mut [u8],
    best: &mut f64,
) {
    if cost >= *best {
        return;
    }
    if v == g.n {
        *best = cost;
        return;
    }
    for a in 0..=2u8 {
        if earlier[v].iter().all(|&u| assign[u] + a >= 2) {
            assign[v] = a;
            search(g, earlier, v + 1, cost + g.weights[v] * f64::from(a) / 2.0, assign, best);
        }
    }
}
