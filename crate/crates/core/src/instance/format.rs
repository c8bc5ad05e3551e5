use super::{InstanceStream, Side, VertexEvent};
use crate::error::{Error, Result};
use crate::numfmt::g17;
use std::fmt::Write;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the line-based instance format.
///
/// ```text
/// offline <count>
/// <id> <weight> <L|R|-> <deg> <nbr_1> ... <nbr_deg>
/// ```
///
/// Whole-line `#` comments become the stream description; trailing `#`
/// comments on data lines are dropped. A missing `offline` header means no
/// offline vertices.
pub fn parse_instance(text: &str) -> Result<InstanceStream> {
    let mut description = Vec::new();
    let mut offline_count: Option<usize> = None;
    let mut events: Vec<VertexEvent> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            description.push(comment.strip_prefix(' ').unwrap_or(comment).to_string());
            continue;
        }
        let content = match trimmed.split_once('#') {
            Some((before, _)) => before.trim(),
            None => trimmed,
        };
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let first = fields.next().unwrap_or_default();

        if first == "offline" {
            if offline_count.is_some() || !events.is_empty() {
                return Err(parse_err(line_no, "`offline` header must come first and only once"));
            }
            let count = fields
                .next()
                .ok_or_else(|| parse_err(line_no, "`offline` needs a count"))?
                .parse::<usize>()
                .map_err(|e| parse_err(line_no, format!("bad offline count: {e}")))?;
            if fields.next().is_some() {
                return Err(parse_err(line_no, "trailing fields after offline count"));
            }
            offline_count = Some(count);
            continue;
        }

        let id: usize = first
            .parse()
            .map_err(|e| parse_err(line_no, format!("bad vertex id `{first}`: {e}")))?;
        if id != events.len() {
            return Err(parse_err(
                line_no,
                format!("expected vertex id {}, found {id}", events.len()),
            ));
        }
        let weight_tok = fields
            .next()
            .ok_or_else(|| parse_err(line_no, "missing weight"))?;
        let weight: f64 = weight_tok
            .parse()
            .map_err(|e| parse_err(line_no, format!("bad weight `{weight_tok}`: {e}")))?;
        if !weight.is_finite() || weight < 0.0 {
            return Err(parse_err(line_no, format!("weight must be finite and >= 0, got {weight}")));
        }
        let side_tok = fields
            .next()
            .ok_or_else(|| parse_err(line_no, "missing side"))?;
        let side = Side::from_symbol(side_tok)
            .ok_or_else(|| parse_err(line_no, format!("side must be L, R or -, got `{side_tok}`")))?;
        let deg_tok = fields
            .next()
            .ok_or_else(|| parse_err(line_no, "missing degree"))?;
        let deg: usize = deg_tok
            .parse()
            .map_err(|e| parse_err(line_no, format!("bad degree `{deg_tok}`: {e}")))?;
        // Cap the preallocation; deg is untrusted.
        let mut neighbors = Vec::with_capacity(deg.min(id));
        for tok in fields.by_ref() {
            let nbr: usize = tok
                .parse()
                .map_err(|e| parse_err(line_no, format!("bad neighbour `{tok}`: {e}")))?;
            if nbr >= id {
                return Err(parse_err(
                    line_no,
                    format!("forward edge from {id} to not-yet-arrived vertex {nbr}"),
                ));
            }
            if neighbors.contains(&nbr) {
                return Err(parse_err(line_no, format!("duplicate neighbour {nbr}")));
            }
            neighbors.push(nbr);
            if neighbors.len() > deg {
                break;
            }
        }
        if neighbors.len() != deg {
            return Err(parse_err(
                line_no,
                format!("degree {deg} but {} neighbours listed", neighbors.len()),
            ));
        }
        events.push(VertexEvent::new(id, weight, side, neighbors));
    }

    InstanceStream::new(events, offline_count.unwrap_or(0), description.join("\n"))
}

/// Writes the stream in the format read by [`parse_instance`].
pub fn serialize_instance(stream: &InstanceStream) -> String {
    let mut out = String::new();
    if !stream.description.is_empty() {
        for line in stream.description.split('\n') {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "offline {}", stream.offline_count);
    for e in &stream.events {
        let _ = write!(
            out,
            "{} {} {} {}",
            e.id,
            g17(e.weight),
            e.side.symbol(),
            e.neighbors.len()
        );
        for n in &e.neighbors {
            let _ = write!(out, " {n}");
        }
        out.push('\n');
    }
    out
}
