use super::flow::FlowNetwork;
use super::graph::StaticGraph;
use super::hopcroft_karp::{hopcroft_karp, BipartiteAdjacency};
use crate::engine::EdgeValue;
use crate::error::Result;
use crate::instance::Side;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    IntegralBipartite,
    FractionalGeneral,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub max_matching_value: f64,
    pub min_cover_value: f64,
    pub matching_witness: Vec<EdgeValue>,
    pub cover_witness: Vec<f64>,
    pub mode: OracleMode,
}

impl OracleResult {
    pub fn duality_gap(&self) -> f64 {
        self.min_cover_value - self.max_matching_value
    }
}

/// Optimum of a bipartite instance given as `(left, right)` edges.
struct BipartiteSolution {
    matching_value: f64,
    cover_value: f64,
    edge_flow: Vec<f64>,
    in_cover: Vec<bool>,
}

fn solve_bipartite(weights: &[f64], is_left: &[bool], edges: &[(usize, usize)]) -> BipartiteSolution {
    let n = weights.len();
    if weights.iter().all(|&w| w == 1.0) {
        // Compact indices per side for Hopcroft–Karp.
        let mut index = vec![0usize; n];
        let (mut nl, mut nr) = (0, 0);
        for v in 0..n {
            if is_left[v] {
                index[v] = nl;
                nl += 1;
            } else {
                index[v] = nr;
                nr += 1;
            }
        }
        let mut adj = vec![Vec::new(); nl];
        for &(l, r) in edges {
            adj[index[l]].push(index[r]);
        }
        let m = hopcroft_karp(&BipartiteAdjacency {
            n_left: nl,
            n_right: nr,
            adj,
        });
        let edge_flow = edges
            .iter()
            .map(|&(l, r)| f64::from(u8::from(m.mate_left[index[l]] == index[r])))
            .collect();
        let in_cover: Vec<bool> = (0..n)
            .map(|v| {
                if is_left[v] {
                    m.cover_left[index[v]]
                } else {
                    m.cover_right[index[v]]
                }
            })
            .collect();
        let cover_value = in_cover.iter().filter(|&&c| c).count() as f64;
        return BipartiteSolution {
            matching_value: m.size as f64,
            cover_value,
            edge_flow,
            in_cover,
        };
    }

    let scale = weights
        .iter()
        .copied()
        .filter(|&w| w > 0.0)
        .fold(f64::INFINITY, f64::min);
    let tol = if scale.is_finite() { 1e-12 * scale } else { 1e-12 };
    let (s, t) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2, tol);
    for v in 0..n {
        if is_left[v] {
            net.add_edge(s, v, weights[v]);
        } else {
            net.add_edge(v, t, weights[v]);
        }
    }
    let handles: Vec<_> = edges
        .iter()
        .map(|&(l, r)| net.add_edge(l, r, f64::INFINITY))
        .collect();
    let matching_value = net.max_flow(s, t);
    let reach = net.source_side(s);
    let in_cover: Vec<bool> = (0..n).map(|v| reach[v] != is_left[v]).collect();
    let cover_value = (0..n).filter(|&v| in_cover[v]).map(|v| weights[v]).sum();
    BipartiteSolution {
        matching_value,
        cover_value,
        edge_flow: handles.iter().map(|&h| net.flow(h)).collect(),
        in_cover,
    }
}

/// Exact optimum on a labeled bipartite graph. Unit weights give a
/// maximum-cardinality matching with a König cover; other weights are solved
/// as a minimum cut.
pub fn max_matching_bipartite(g: &StaticGraph) -> Result<OracleResult> {
    let sides = g.bipartition()?;
    let is_left: Vec<bool> = sides.iter().map(|&s| s == Side::Left).collect();
    let oriented: Vec<(usize, usize)> = g
        .edges
        .iter()
        .map(|&(a, b)| if is_left[a] { (a, b) } else { (b, a) })
        .collect();
    let sol = solve_bipartite(&g.weights, &is_left, &oriented);
    Ok(OracleResult {
        max_matching_value: sol.matching_value,
        min_cover_value: sol.cover_value,
        matching_witness: g
            .edges
            .iter()
            .zip(&sol.edge_flow)
            .filter(|(_, &x)| x > 0.0)
            .map(|(&(u, v), &x)| EdgeValue { u, v, x })
            .collect(),
        cover_witness: sol.in_cover.iter().map(|&c| f64::from(u8::from(c))).collect(),
        mode: OracleMode::IntegralBipartite,
    })
}

/// Fractional optima of any simple graph through its bipartite double cover.
pub fn fractional_optima_general(g: &StaticGraph) -> OracleResult {
    let n = g.n;
    let mut weights = g.weights.clone();
    weights.extend_from_slice(&g.weights);
    let is_left: Vec<bool> = (0..2 * n).map(|v| v < n).collect();
    let edges: Vec<(usize, usize)> = g
        .edges
        .iter()
        .flat_map(|&(a, b)| [(a, n + b), (b, n + a)])
        .collect();
    let sol = solve_bipartite(&weights, &is_left, &edges);
    let half = |c: bool| if c { 0.5 } else { 0.0 };
    OracleResult {
        max_matching_value: sol.matching_value / 2.0,
        min_cover_value: sol.cover_value / 2.0,
        matching_witness: g
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| EdgeValue {
                u,
                v,
                x: (sol.edge_flow[2 * i] + sol.edge_flow[2 * i + 1]) / 2.0,
            })
            .filter(|e| e.x > 0.0)
            .collect(),
        cover_witness: (0..n)
            .map(|v| half(sol.in_cover[v]) + half(sol.in_cover[n + v]))
            .collect(),
        mode: OracleMode::FractionalGeneral,
    }
}

/// Bipartite solver when side labels allow it, double cover otherwise.
pub fn offline_optimum(g: &StaticGraph) -> OracleResult {
    match max_matching_bipartite(g) {
        Ok(r) => r,
        Err(_) => fractional_optima_general(g),
    }
}
