use crate::engine::TraceRow;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Cover,
    Matching,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioMode {
    Final,
    WorstPrefix,
}

fn ratio(alg: f64, opt: f64, objective: Objective) -> f64 {
    if opt == 0.0 {
        return match objective {
            Objective::Cover if alg > 0.0 => f64::INFINITY,
            _ => 1.0,
        };
    }
    alg / opt
}

/// ALG/OPT per trace row against oracle values for the same prefixes. Cover
/// ratios take the maximum over prefixes, matching ratios the minimum.
pub fn competitive_ratio(
    rows: &[TraceRow],
    oracle: &[f64],
    objective: Objective,
    mode: RatioMode,
) -> Result<f64> {
    if rows.len() != oracle.len() {
        return Err(Error::LengthMismatch {
            trace: rows.len(),
            oracle: oracle.len(),
        });
    }
    if rows.is_empty() {
        return Err(Error::Precondition("empty trace".into()));
    }
    let value = |r: &TraceRow| match objective {
        Objective::Cover => r.cover_cost,
        Objective::Matching => r.matching_value,
    };
    let each = rows.iter().zip(oracle).map(|(r, &o)| ratio(value(r), o, objective));
    Ok(match (mode, objective) {
        (RatioMode::Final, _) => each.last().unwrap(),
        (RatioMode::WorstPrefix, Objective::Cover) => each.fold(f64::NEG_INFINITY, f64::max),
        (RatioMode::WorstPrefix, Objective::Matching) => each.fold(f64::INFINITY, f64::min),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(cover: f64, matching: f64) -> TraceRow {
        TraceRow {
            step: 0,
            vertex: 0,
            level: 0.0,
            cover_cost: cover,
            matching_value: matching,
            inv1_slack: f64::NAN,
            inv2_slack: f64::NAN,
        }
    }

    #[test]
    fn equal_to_oracle() {
        let rows = vec![row(0.0, 0.0), row(1.0, 1.0), row(2.0, 2.0)];
        let opt = [0.0, 1.0, 2.0];
        for obj in [Objective::Cover, Objective::Matching] {
            for mode in [RatioMode::Final, RatioMode::WorstPrefix] {
                assert_eq!(competitive_ratio(&rows, &opt, obj, mode).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn worst_prefix_picks_extremes() {
        let rows = vec![row(1.5, 0.9), row(3.0, 1.0), row(2.2, 1.8)];
        let opt = [1.0, 1.5, 2.0];
        let c = competitive_ratio(&rows, &opt, Objective::Cover, RatioMode::WorstPrefix).unwrap();
        assert_eq!(c, 2.0);
        let m = competitive_ratio(&rows, &opt, Objective::Matching, RatioMode::WorstPrefix).unwrap();
        assert!((m - 1.0 / 1.5).abs() < 1e-15);
        let f = competitive_ratio(&rows, &opt, Objective::Cover, RatioMode::Final).unwrap();
        assert!((f - 1.1).abs() < 1e-15);
    }

    #[test]
    fn zero_optimum() {
        let rows = vec![row(0.5, 0.0)];
        let c = competitive_ratio(&rows, &[0.0], Objective::Cover, RatioMode::Final).unwrap();
        assert_eq!(c, f64::INFINITY);
    }

    #[test]
    fn errors() {
        let rows = vec![row(1.0, 1.0)];
        assert_eq!(
            competitive_ratio(&rows, &[1.0, 2.0], Objective::Cover, RatioMode::Final),
            Err(Error::LengthMismatch { trace: 1, oracle: 2 })
        );
        assert!(competitive_ratio(&[], &[], Objective::Cover, RatioMode::Final).is_err());
    }
}
