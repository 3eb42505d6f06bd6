//! Text formats: network documents and Cliquer graph files.
//!
//! A network document holds one line per train line, either labeled
//!
//! ```text
//! A 2 x+ 0 1 0
//! ```
//!
//! or in the bare form `2 x+ 0 1 0`, which gets the label `L<index>`. Blank
//! lines and lines starting with `#` are skipped. Tracks are rays.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, ParseError, ParseErrorKind};
use crate::exact::ensure_buildable;
use crate::model::{collides, tracks_overlap, Rational, Schedule, Sign, TrainLine, TrainNetwork};

const AXES: [char; 3] = ['x', 'y', 'z'];

struct ParsedLine {
    number: usize,
    label: String,
    train_length: i64,
    axis: usize,
    sign: Sign,
    departure: [i64; 3],
}

fn parse_error(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn parse_int(number: usize, field: &'static str, token: &str) -> Result<i64, ParseError> {
    token.parse().map_err(|_| {
        parse_error(
            number,
            ParseErrorKind::Malformed {
                field,
                token: token.to_string(),
            },
        )
    })
}

fn parse_line(number: usize, index: usize, text: &str) -> Result<ParsedLine, ParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let (label, rest) = match tokens.len() {
        5 => (format!("L{index}"), &tokens[..]),
        6 => (tokens[0].to_string(), &tokens[1..]),
        n => return Err(parse_error(number, ParseErrorKind::FieldCount(n))),
    };
    let train_length = parse_int(number, "train length", rest[0])?;
    if train_length == 0 {
        return Err(parse_error(number, ParseErrorKind::ZeroTrainLength));
    }
    if train_length < 0 {
        return Err(parse_error(
            number,
            ParseErrorKind::Malformed {
                field: "train length",
                token: rest[0].to_string(),
            },
        ));
    }
    let mut chars = rest[1].chars();
    let (axis_char, dir_char) = match (chars.next(), chars.next(), chars.next()) {
        (Some(a), Some(d), None) => (a, d),
        _ => {
            return Err(parse_error(
                number,
                ParseErrorKind::Malformed {
                    field: "axis and direction",
                    token: rest[1].to_string(),
                },
            ))
        }
    };
    let axis = AXES
        .iter()
        .position(|&c| c == axis_char)
        .ok_or_else(|| parse_error(number, ParseErrorKind::UnknownAxis(axis_char.to_string())))?;
    let sign = match dir_char {
        '+' => Sign::Positive,
        '-' => Sign::Negative,
        other => return Err(parse_error(number, ParseErrorKind::UnknownDirection(other.to_string()))),
    };
    let mut departure = [0; 3];
    for (k, token) in rest[2..].iter().enumerate() {
        departure[k] = parse_int(number, "coordinate", token)?;
    }
    Ok(ParsedLine {
        number,
        label,
        train_length,
        axis,
        sign,
        departure,
    })
}

/// Parses a network document. Diagnostics carry 1-based line numbers.
pub fn parse_network(text: &str) -> Result<TrainNetwork, ParseError> {
    let mut parsed: Vec<ParsedLine> = Vec::new();
    let mut labels: HashMap<String, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let line = parse_line(i + 1, parsed.len(), trimmed)?;
        if labels.insert(line.label.clone(), line.number).is_some() {
            return Err(parse_error(line.number, ParseErrorKind::DuplicateLabel(line.label)));
        }
        parsed.push(line);
    }
    let planar = parsed.iter().all(|p| p.departure[2] == 0 && p.axis != 2);
    let dimension = if planar { 2 } else { 3 };
    let mut lines: Vec<(String, TrainLine)> = Vec::with_capacity(parsed.len());
    for p in &parsed {
        let line = TrainLine::ray(p.departure[..dimension].to_vec(), p.axis, p.sign, p.train_length)
            .map_err(|e| parse_error(p.number, ParseErrorKind::Malformed { field: "line", token: e.to_string() }))?;
        for (other_label, other) in &lines {
            if tracks_overlap(other, &line).unwrap_or(true) {
                return Err(parse_error(
                    p.number,
                    ParseErrorKind::OverlappingTracks {
                        other: other_label.clone(),
                    },
                ));
            }
        }
        lines.push((p.label.clone(), line));
    }
    TrainNetwork::new(dimension, lines).map_err(|e| match e {
        Error::InvalidLabel(label) => parse_error(0, ParseErrorKind::InvalidLabel(label)),
        other => parse_error(0, ParseErrorKind::Malformed { field: "network", token: other.to_string() }),
    })
}

/// Like [`parse_network`], for input that may not be UTF-8.
pub fn parse_network_bytes(bytes: &[u8]) -> Result<TrainNetwork, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|_| parse_error(0, ParseErrorKind::Encoding))?;
    parse_network(text)
}

/// Labeled document for `net`; planar networks get a zero z-coordinate.
/// Segment arrival points are not representable and are dropped.
pub fn write_network(net: &TrainNetwork) -> String {
    let mut out = String::new();
    for (label, line) in net.iter() {
        let p = line.departure();
        let z = p.get(2).copied().unwrap_or(0);
        writeln!(
            out,
            "{label} {} {}{} {} {} {z}",
            line.train_length(),
            AXES[line.axis()],
            line.sign(),
            p[0],
            p[1]
        )
        .expect("writing to a String");
    }
    out
}

/// Cliquer input whose size-n cliques are the integer schedules of `net`
/// with delay at most `max_delay`. Vertex `(D + 1)·line + delay + 1`; edges are
/// listed per line pair in input order, then per delay pair in row-major order.
pub fn export_cliquer(net: &TrainNetwork, max_delay: u64) -> Result<String, Error> {
    ensure_buildable(net)?;
    let width = max_delay + 1;
    let mut out = String::new();
    writeln!(out, "p graph {} 0", net.len() as u64 * width).expect("writing to a String");
    for i in 0..net.len() {
        for j in i + 1..net.len() {
            let crossing = net.crossing(i, j);
            for t0 in 0..width {
                for t1 in 0..width {
                    let ok = crossing.is_none_or(|c| {
                        !collides(
                            net.line(i),
                            net.line(j),
                            &c,
                            Rational::from_integer(t0 as i64),
                            Rational::from_integer(t1 as i64),
                        )
                    });
                    if ok {
                        let v0 = width * i as u64 + t0 + 1;
                        let v1 = width * j as u64 + t1 + 1;
                        writeln!(out, "e {v0} {v1}").expect("writing to a String");
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Turns a list of 1-based clique vertices into a schedule. Text up to the
/// last `:` on a line is ignored, so Cliquer's `size=4, weight=4:  4 5 10 15`
/// lines decode as well as bare vertex lists.
pub fn decode_clique_output(text: &str, n_lines: usize, max_delay: u64) -> Result<Schedule, Error> {
    let width = max_delay + 1;
    let total = n_lines as u64 * width;
    let mut delays: Vec<Option<u64>> = vec![None; n_lines];
    for row in text.lines() {
        let body = row.rsplit_once(':').map_or(row, |(_, tail)| tail);
        for token in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let vertex: u64 = token.parse().map_err(|_| {
                Error::Parse(parse_error(
                    0,
                    ParseErrorKind::Malformed {
                        field: "vertex",
                        token: token.to_string(),
                    },
                ))
            })?;
            if vertex.is_zero() || vertex > total {
                return Err(Error::VertexOutOfRange { vertex, max: total });
            }
            let line = ((vertex - 1) / width) as usize;
            if delays[line].replace((vertex - 1) % width).is_some() {
                return Err(Error::DuplicateLine(line));
            }
        }
    }
    let delays = delays
        .into_iter()
        .enumerate()
        .map(|(line, d)| d.ok_or(Error::IncompleteClique(line)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Schedule::from_integers(delays))
}
