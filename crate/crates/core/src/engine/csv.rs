//! Trace CSV: `step,vertex,level,cover_cost,matching_value,inv1_slack,inv2_slack`
//! with 17-significant-digit reals, optionally followed by one
//! `#summary,key=value,...` line.

use super::run::TraceRow;
use crate::error::{Error, Result};
use crate::numfmt::g17;
use std::fmt::Write;

pub const TRACE_HEADER: &str = "step,vertex,level,cover_cost,matching_value,inv1_slack,inv2_slack";
pub const SUMMARY_PREFIX: &str = "#summary";

/// Summary keys and values must not contain `,` or `=`.
pub fn write_trace_csv(rows: &[TraceRow], summary: &[(String, String)]) -> String {
    debug_assert!(summary
        .iter()
        .all(|(k, v)| !k.contains([',', '=']) && !v.contains(',')));
    let mut out = String::with_capacity(64 * (rows.len() + 2));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.step,
            r.vertex,
            g17(r.level),
            g17(r.cover_cost),
            g17(r.matching_value),
            g17(r.inv1_slack),
            g17(r.inv2_slack)
        );
    }
    if !summary.is_empty() {
        out.push_str(SUMMARY_PREFIX);
        for (k, v) in summary {
            let _ = write!(out, ",{k}={v}");
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParsedTrace {
    pub rows: Vec<TraceRow>,
    pub summary: Vec<(String, String)>,
}

fn field<T: std::str::FromStr>(tok: Option<&str>, name: &str, line: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing column {name}"),
    })?;
    tok.trim().parse().map_err(|e| Error::Parse {
        line,
        message: format!("column {name}: `{tok}`: {e}"),
    })
}

pub fn parse_trace_csv(text: &str) -> Result<ParsedTrace> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == TRACE_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header `{TRACE_HEADER}`"),
            })
        }
    }
    let mut parsed = ParsedTrace::default();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix(SUMMARY_PREFIX) {
            for kv in rest.split(',').filter(|s| !s.is_empty()) {
                let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: format!("summary entry `{kv}` is not key=value"),
                })?;
                parsed.summary.push((k.to_string(), v.to_string()));
            }
            continue;
        }
        let mut cols = line.split(',');
        let row = TraceRow {
            step: field(cols.next(), "step", line_no)?,
            vertex: field(cols.next(), "vertex", line_no)?,
            level: field(cols.next(), "level", line_no)?,
            cover_cost: field(cols.next(), "cover_cost", line_no)?,
            matching_value: field(cols.next(), "matching_value", line_no)?,
            inv1_slack: field(cols.next(), "inv1_slack", line_no)?,
            inv2_slack: field(cols.next(), "inv2_slack", line_no)?,
        };
        if cols.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: "too many columns".into(),
            });
        }
        parsed.rows.push(row);
    }
    Ok(parsed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_nan_and_summary() {
        let rows = vec![
            TraceRow {
                step: 0,
                vertex: 0,
                level: 1.0,
                cover_cost: 0.0,
                matching_value: 0.0,
                inv1_slack: f64::NAN,
                inv2_slack: f64::NAN,
            },
            TraceRow {
                step: 1,
                vertex: 1,
                level: 0.554_054_971_591_715_7,
                cover_cost: 1.0,
                matching_value: 1.0 / 1.9007,
                inv1_slack: 0.0,
                inv2_slack: 1e-17,
            },
        ];
        let summary = vec![("cover_ratio".to_string(), "1.5".to_string())];
        let text = write_trace_csv(&rows, &summary);
        let back = parse_trace_csv(&text).unwrap();
        assert_eq!(back.summary, summary);
        assert_eq!(back.rows.len(), 2);
        assert!(back.rows[0].inv1_slack.is_nan());
        assert_eq!(back.rows[1], rows[1]);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(parse_trace_csv("nope").is_err());
        let text = format!("{TRACE_HEADER}\n0,0,1,0,0,0\n");
        assert!(matches!(parse_trace_csv(&text), Err(Error::Parse { line: 2, .. })));
        let text = format!("{TRACE_HEADER}\n0,0,1,0,0,0,0,9\n");
        assert!(parse_trace_csv(&text).is_err());
    }
}
