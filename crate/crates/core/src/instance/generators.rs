use super::{InstanceStream, Side, VertexEvent};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn require_positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::Domain(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn offline_left(count: usize) -> Vec<VertexEvent> {
    (0..count)
        .map(|id| VertexEvent::new(id, 1.0, Side::Left, Vec::new()))
        .collect()
}

/// `n` offline left vertices, then `n` online right vertices where the
/// i-th (1-based) arrival is adjacent to the first `n + 1 - i` left ones.
pub fn gen_triangular(n: usize) -> Result<InstanceStream> {
    require_positive("n", n)?;
    let mut events = offline_left(n);
    for i in 1..=n {
        let id = events.len();
        events.push(VertexEvent::new(id, 1.0, Side::Right, (0..n + 1 - i).collect()));
    }
    InstanceStream::new(events, n, format!("triangular:{n}"))
}

/// Two-alternation matching instance.
///
/// Offline `L0` (n vertices). Phase 1 brings 2n right vertices: the first n
/// are complete to `L0`, the last n are triangular to `L0`. Phase 2 brings n
/// left vertices triangular to the first n right vertices. The maximum
/// matching has size 2n.
pub fn gen_two_phase_matching_hard(n: usize) -> Result<InstanceStream> {
    require_positive("n", n)?;
    let mut events = offline_left(n);
    let r1_start = n;
    for _ in 0..n {
        let id = events.len();
        events.push(VertexEvent::new(id, 1.0, Side::Right, (0..n).collect()));
    }
    for i in 1..=n {
        let id = events.len();
        events.push(VertexEvent::new(id, 1.0, Side::Right, (0..n + 1 - i).collect()));
    }
    for j in 1..=n {
        let id = events.len();
        let nbrs = (r1_start..r1_start + n + 1 - j).collect();
        events.push(VertexEvent::new(id, 1.0, Side::Left, nbrs));
    }
    InstanceStream::new(events, n, format!("two-phase:{n}"))
}

/// `d` offline left vertices followed by `m` right arrivals adjacent to all of them.
pub fn gen_complete_bipartite(d: usize, m: usize) -> Result<InstanceStream> {
    require_positive("d", d)?;
    require_positive("m", m)?;
    let mut events = offline_left(d);
    for _ in 0..m {
        let id = events.len();
        events.push(VertexEvent::new(id, 1.0, Side::Right, (0..d).collect()));
    }
    InstanceStream::new(events, d, format!("complete:{d},{m}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomMode {
    /// Every vertex arrives online; any earlier vertex is eligible.
    General,
    /// `n / 2` offline left vertices, the rest arrive on the right.
    BipartiteOneSided,
    /// Sides alternate L, R, L, ... and everything arrives online.
    BipartiteAlternating,
}

impl RandomMode {
    pub fn name(self) -> &'static str {
        match self {
            RandomMode::General => "general",
            RandomMode::BipartiteOneSided => "bipartite-one-sided",
            RandomMode::BipartiteAlternating => "bipartite-alternating",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "general" => Some(RandomMode::General),
            "bipartite-one-sided" | "bipartite_one_sided" | "one-sided" => {
                Some(RandomMode::BipartiteOneSided)
            }
            "bipartite-alternating" | "bipartite_alternating" | "alternating" => {
                Some(RandomMode::BipartiteAlternating)
            }
            _ => None,
        }
    }
}

/// Seeded Erdős–Rényi arrivals: each eligible back-edge is kept with
/// probability `p`, independently.
pub fn gen_random(n: usize, p: f64, seed: u64, mode: RandomMode) -> Result<InstanceStream> {
    require_positive("n", n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (offline, sides): (usize, Vec<Side>) = match mode {
        RandomMode::General => (0, vec![Side::Unlabeled; n]),
        RandomMode::BipartiteOneSided => {
            let left = n / 2;
            let sides = (0..n)
                .map(|i| if i < left { Side::Left } else { Side::Right })
                .collect();
            (left, sides)
        }
        RandomMode::BipartiteAlternating => (
            0,
            (0..n)
                .map(|i| if i % 2 == 0 { Side::Left } else { Side::Right })
                .collect(),
        ),
    };
    let mut events = Vec::with_capacity(n);
    for id in 0..n {
        let mut nbrs = Vec::new();
        if id >= offline {
            for u in 0..id {
                let eligible = match mode {
                    RandomMode::General => true,
                    _ => sides[u] != sides[id],
                };
                // Draw for every candidate so the stream depends only on the seed.
                let keep = rng.gen::<f64>() < p;
                if eligible && keep {
                    nbrs.push(u);
                }
            }
        }
        events.push(VertexEvent::new(id, 1.0, sides[id], nbrs));
    }
    InstanceStream::new(
        events,
        offline,
        format!("random:{n},{p},{seed},{}", mode.name()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_shapes() {
        let s = gen_triangular(1).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.edge_count(), 1);
        let s = gen_triangular(3).unwrap();
        let degrees: Vec<usize> = s.events[3..].iter().map(|e| e.neighbors.len()).collect();
        assert_eq!(degrees, vec![3, 2, 1]);
        assert_eq!(s.edge_count(), 6);
        assert!(gen_triangular(0).is_err());
    }

    #[test]
    fn two_phase_unrolled_at_one() {
        let s = gen_two_phase_matching_hard(1).unwrap();
        assert_eq!(s.len(), 4);
        let mut edges: Vec<_> = s.edges().collect();
        edges.sort();
        // u = 0, v1 = 1, v2 = 2, w = 3
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 3)]);
    }

    #[test]
    fn two_phase_unrolled_at_two() {
        let s = gen_two_phase_matching_hard(2).unwrap();
        assert_eq!(s.len(), 8);
        // Hand unroll: L0 = {0,1}; R1 = {2,3} complete, {4,5} triangular; L2 = {6,7}.
        let expected: Vec<Vec<usize>> = vec![
            vec![],
            vec![],
            vec![0, 1],
            vec![0, 1],
            vec![0, 1],
            vec![0],
            vec![2, 3],
            vec![2],
        ];
        let got: Vec<Vec<usize>> = s.events.iter().map(|e| e.neighbors.clone()).collect();
        assert_eq!(got, expected);
        let mut offline_degree = [0usize; 2];
        for (u, _) in s.edges() {
            if u < 2 {
                offline_degree[u] += 1;
            }
        }
        assert_eq!(offline_degree, [4, 3]);
    }

    #[test]
    fn complete_bipartite_counts() {
        assert_eq!(gen_complete_bipartite(1, 1).unwrap().edge_count(), 1);
        assert_eq!(gen_complete_bipartite(3, 2).unwrap().edge_count(), 6);
    }

    #[test]
    fn random_extremes_and_determinism() {
        let s = gen_random(10, 0.0, 1, RandomMode::General).unwrap();
        assert_eq!(s.edge_count(), 0);
        let s = gen_random(4, 1.0, 1, RandomMode::General).unwrap();
        assert_eq!(s.edge_count(), 6);
        for mode in [
            RandomMode::General,
            RandomMode::BipartiteOneSided,
            RandomMode::BipartiteAlternating,
        ] {
            let a = gen_random(40, 0.3, 99, mode).unwrap();
            let b = gen_random(40, 0.3, 99, mode).unwrap();
            assert_eq!(a, b);
            if mode != RandomMode::General {
                assert!(a.is_labeled_bipartite());
            }
        }
        assert_ne!(
            gen_random(40, 0.3, 1, RandomMode::General).unwrap(),
            gen_random(40, 0.3, 2, RandomMode::General).unwrap()
        );
        assert!(gen_random(5, 1.5, 0, RandomMode::General).is_err());
    }
}
