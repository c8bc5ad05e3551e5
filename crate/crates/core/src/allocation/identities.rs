use super::closed_form_value;

/// Largest `|f_k(z) f_k'(1-z) - (z - 1)|` over interior grid nodes, with the
/// derivative taken by central differences of step `h`. Nodes within `2h`
/// of either endpoint are skipped.
pub fn ode_residual(k: f64, grid_size: usize, h: f64) -> f64 {
    let margin = 2.0 * h;
    let mut worst: f64 = 0.0;
    for i in 0..=grid_size {
        let z = i as f64 / grid_size as f64;
        if z < margin || z > 1.0 - margin {
            continue;
        }
        let w = 1.0 - z;
        let deriv = (closed_form_value(k, w + h) - closed_form_value(k, w - h)) / (2.0 * h);
        let r = (closed_form_value(k, z) * deriv - (z - 1.0)).abs();
        worst = worst.max(r);
    }
    worst
}

/// Largest `|f_k(p) f_k(1-p) - (p - p^2 + (k^2 - 1)/4)|` over the grid.
pub fn product_identity_residual(k: f64, grid_size: usize) -> f64 {
    let c = 0.25 * (k * k - 1.0);
    (0..=grid_size)
        .map(|i| {
            let p = i as f64 / grid_size as f64;
            (closed_form_value(k, p) * closed_form_value(k, 1.0 - p) - (p - p * p + c)).abs()
        })
        .fold(0.0, f64::max)
}
