/// Fractional vertex cover maintained online. Vertex ids are arrival
/// indices, so the arrived set is always `0..len()`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoverState {
    pub y: Vec<f64>,
    /// Potential assigned on arrival (`1 - level`).
    pub z_arrival: Vec<f64>,
    pub weights: Vec<f64>,
    /// `F(z_u)`, cached by the primal-dual step for invariant checks.
    pub arrival_integral: Vec<f64>,
    /// Running `Σ w_v y_v`.
    pub total_cost: f64,
}

impl CoverState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub(crate) fn arrive(&mut self, weight: f64, potential: f64, arrival_integral: f64) {
        self.y.push(potential);
        self.z_arrival.push(potential);
        self.weights.push(weight);
        self.arrival_integral.push(arrival_integral);
        self.total_cost += weight * potential;
    }

    /// Raises `u` to `new` if that is an increase; returns the old value.
    pub(crate) fn raise(&mut self, u: usize, new: f64) -> f64 {
        let old = self.y[u];
        if new > old {
            self.y[u] = new;
            self.total_cost += self.weights[u] * (new - old);
        }
        old
    }

    /// Recomputes `Σ w_v y_v` from scratch.
    pub fn exact_cost(&self) -> f64 {
        self.y.iter().zip(&self.weights).map(|(y, w)| y * w).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeValue {
    pub u: usize,
    pub v: usize,
    pub x: f64,
}

/// Fractional (b-)matching maintained online. Each edge value is fixed
/// when the later endpoint arrives and never revised.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MatchingState {
    pub edges: Vec<EdgeValue>,
    /// `x_v = Σ_u x_uv`.
    pub x_agg: Vec<f64>,
    pub total_value: f64,
}

impl MatchingState {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn ensure_vertex(&mut self, v: usize) {
        if self.x_agg.len() <= v {
            self.x_agg.resize(v + 1, 0.0);
        }
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, x: f64) {
        self.ensure_vertex(u.max(v));
        self.edges.push(EdgeValue { u, v, x });
        self.x_agg[u] += x;
        self.x_agg[v] += x;
        self.total_value += x;
    }

    pub fn exact_value(&self) -> f64 {
        self.edges.iter().map(|e| e.x).sum()
    }
}
