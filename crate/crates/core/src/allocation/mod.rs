//! Allocation functions and the competitive-ratio functional.
//!
//! An allocation function `f` caps the total potential an arriving vertex
//! may push onto its neighbours when the water level is `y`. The quality of
//! `f` is measured by
//!
//! ```text
//! beta(f) = max_z  1 + f(1 - z) + ∫_z^1 (1 - t) / f(t) dt
//! ```
//!
//! and the closed-form family `f_k` makes the bracket constant in `z`.

mod beta;
mod identities;
mod optimize;
pub mod quadrature;
mod smoothing;

pub use beta::{beta_of, BetaReport};
pub use identities::{ode_residual, product_identity_residual};
pub use optimize::{coth_fixed_point, golden_section_min, optimal_k, OptimalK};
pub use quadrature::QuadratureTable;
pub use smoothing::{smooth_to_constant, GridFunction, SmoothingOutcome};

use crate::error::{Error, Result};
use quadrature::{adaptive_simpson, DEFAULT_MAX_DEPTH, DEFAULT_TOL};

/// `1 / (e - 1)`: the offset of the bipartite-optimal linear allocation.
pub const ALPHA: f64 = 0.581_976_706_869_326_4;

const CHECK_GRID: usize = 10_000;
const TABLE_CELLS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AllocationKind {
    /// `f(y) = y + 1/(e-1)`.
    LinearAlpha,
    /// `f(z) = ((1+k)/2 - z)^((1+k)/2k) (z + (k-1)/2)^((k-1)/2k)`, `k >= 1`.
    ClosedFormK(f64),
    /// `f(z) = 1 - z`.
    GreedyEquivalent,
}

impl AllocationKind {
    pub fn label(&self) -> String {
        match self {
            AllocationKind::LinearAlpha => "linear-alpha".into(),
            AllocationKind::ClosedFormK(k) => format!("family-k:{k}"),
            AllocationKind::GreedyEquivalent => "greedy".into(),
        }
    }
}

/// Closed-form family member, without validation. `0^0` is taken as 1 so
/// `k = 1` gives exactly `1 - z`.
pub fn closed_form_value(k: f64, z: f64) -> f64 {
    let a = (0.5 * (1.0 + k) - z).max(0.0).powf((1.0 + k) / (2.0 * k));
    let exp_b = (k - 1.0) / (2.0 * k);
    let b = if exp_b == 0.0 {
        1.0
    } else {
        (z + 0.5 * (k - 1.0)).max(0.0).powf(exp_b)
    };
    a * b
}

/// An allocation function with its cached antiderivative
/// `F(x) = ∫_0^x (1 - t) / f(t) dt`.
///
/// Immutable after construction; share it freely across runs.
#[derive(Debug, Clone)]
pub struct AllocationFunction {
    kind: AllocationKind,
    table: QuadratureTable,
}

impl AllocationFunction {
    /// Builds the function, checks positivity and that `(1 - t)/f(t)` is
    /// nonincreasing on a 10^4-point grid, and tabulates `F`.
    pub fn new(kind: AllocationKind) -> Result<Self> {
        if let AllocationKind::ClosedFormK(k) = kind {
            if !(k >= 1.0) || !k.is_finite() {
                return Err(Error::Domain(format!("family parameter k = {k} must be >= 1")));
            }
        }
        let proto = AllocationFunction {
            kind,
            table: QuadratureTable {
                cells: 1,
                values: vec![0.0, 0.0],
                tol: DEFAULT_TOL,
            },
        };
        proto.check_shape()?;
        let table = QuadratureTable::build(&|t| proto.unit_charge(t), TABLE_CELLS, DEFAULT_TOL)?;
        Ok(AllocationFunction { kind, table })
    }

    pub fn linear_alpha() -> Self {
        Self::new(AllocationKind::LinearAlpha).expect("linear allocation is valid")
    }

    pub fn greedy() -> Self {
        Self::new(AllocationKind::GreedyEquivalent).expect("greedy allocation is valid")
    }

    pub fn closed_form(k: f64) -> Result<Self> {
        Self::new(AllocationKind::ClosedFormK(k))
    }

    /// Family member with the ratio-minimising `k`. The minimum of
    /// `1 + f_k(0)` is flat, so the golden-section `k` is only trusted to
    /// about 1e-8; the coth root it is checked against is used instead.
    pub fn optimal() -> Result<Self> {
        Self::closed_form(optimal_k(1e-6)?.coth_k)
    }

    pub fn kind(&self) -> AllocationKind {
        self.kind
    }

    /// Strictly ends at `f(1) = 0` (the `1 - z` shapes).
    fn vanishes_at_one(&self) -> bool {
        match self.kind {
            AllocationKind::GreedyEquivalent => true,
            AllocationKind::ClosedFormK(k) => k == 1.0,
            AllocationKind::LinearAlpha => false,
        }
    }

    fn check_shape(&self) -> Result<()> {
        let mut prev = f64::INFINITY;
        for i in 0..=CHECK_GRID {
            let t = i as f64 / CHECK_GRID as f64;
            let v = self.value(t);
            let positive = v > 0.0 || (i == CHECK_GRID && v == 0.0 && self.vanishes_at_one());
            if !positive || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "allocation {} is not positive at t = {t} (f = {v})",
                    self.kind.label()
                )));
            }
            let q = self.unit_charge(t);
            if q > prev + 1e-12 {
                return Err(Error::Domain(format!(
                    "(1-t)/f(t) increases at t = {t} for {}",
                    self.kind.label()
                )));
            }
            prev = q;
        }
        Ok(())
    }

    /// `f(z)` with the domain check.
    pub fn eval(&self, z: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&z) {
            return Err(Error::Domain(format!("f evaluated at {z}, outside [0, 1]")));
        }
        Ok(self.value(z))
    }

    /// `f(z)` for `z` already known to lie in [0, 1].
    pub fn value(&self, z: f64) -> f64 {
        match self.kind {
            AllocationKind::LinearAlpha => z + ALPHA,
            AllocationKind::ClosedFormK(k) => closed_form_value(k, z),
            AllocationKind::GreedyEquivalent => 1.0 - z,
        }
    }

    /// `(1 - t) / f(t)`, with the `1 - t` shapes taken as their limit 1.
    pub fn unit_charge(&self, t: f64) -> f64 {
        if self.vanishes_at_one() {
            return 1.0;
        }
        (1.0 - t) / self.value(t)
    }

    /// `F(x)` to absolute tolerance `tol`. Served from the cached table when
    /// its tolerance suffices, otherwise integrated from scratch.
    pub fn antiderivative(&self, x: f64, tol: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("F evaluated at {x}, outside [0, 1]")));
        }
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
        }
        let g = |t: f64| self.unit_charge(t);
        if tol >= self.table.tol {
            self.table.eval(&g, x)
        } else {
            adaptive_simpson(&g, 0.0, x, tol, DEFAULT_MAX_DEPTH)
        }
    }

    /// `F(x)` at the default tolerance; `x` is clamped into [0, 1].
    pub fn big_f(&self, x: f64) -> f64 {
        let g = |t: f64| self.unit_charge(t);
        self.table
            .eval(&g, x.clamp(0.0, 1.0))
            .expect("integrand is bounded on [0, 1]")
    }

    pub fn table(&self) -> &QuadratureTable {
        &self.table
    }
}
