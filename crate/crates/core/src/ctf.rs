//! Plain-text colored tournament files.
//!
//! ```text
//! ctf 1 tournament
//! # comments and blank lines are ignored
//! n 3
//! vcolor 0 0 0
//! arc 0 1 0
//! arc 1 2 0
//! arc 2 0 0
//! ```
//!
//! The `tournament` flag on the header makes the parser require exactly
//! one arc per vertex pair. The emitter writes arcs sorted by `(u, v)`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::structures::ColoredDigraph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| parse_err(line, format!("expected a number, got `{f}`")))
        })
        .collect()
}

pub fn parse_ctf(text: &str) -> Result<ColoredDigraph> {
    let mut tournament = None;
    let mut n: Option<(usize, usize)> = None;
    let mut vcolor: Option<Vec<usize>> = None;
    let mut arcs: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if tournament.is_none() {
            match fields.as_slice() {
                ["ctf", "1"] => tournament = Some(false),
                ["ctf", "1", "tournament"] => tournament = Some(true),
                ["ctf", v, ..] if *v != "1" => {
                    return Err(parse_err(line, format!("unsupported version `{v}`")))
                }
                _ => return Err(parse_err(line, "expected header `ctf 1 [tournament]`")),
            }
            continue;
        }
        match fields[0] {
            "n" => {
                if n.is_some() {
                    return Err(parse_err(line, "repeated `n` line"));
                }
                let v = numbers(line, &fields[1..])?;
                if v.len() != 1 || v[0] == 0 {
                    return Err(parse_err(line, "`n` takes one positive number"));
                }
                n = Some((v[0], line));
            }
            "vcolor" => {
                let (size, _) = n.ok_or_else(|| parse_err(line, "`vcolor` before `n`"))?;
                if vcolor.is_some() {
                    return Err(parse_err(line, "repeated `vcolor` line"));
                }
                let v = numbers(line, &fields[1..])?;
                if v.len() != size {
                    return Err(parse_err(line, format!("expected {size} vertex colors, got {}", v.len())));
                }
                vcolor = Some(v);
            }
            "arc" => {
                let (size, _) = n.ok_or_else(|| parse_err(line, "`arc` before `n`"))?;
                let v = numbers(line, &fields[1..])?;
                if v.len() != 3 {
                    return Err(parse_err(line, "`arc` takes `u v color`"));
                }
                if v[0] >= size || v[1] >= size {
                    return Err(parse_err(line, format!("vertex out of range 0..{size}")));
                }
                if v[0] == v[1] {
                    return Err(parse_err(line, format!("loop at {}", v[0])));
                }
                arcs.push((v[0], v[1], v[2], line));
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    let tournament = tournament.ok_or_else(|| parse_err(last.max(1), "missing header"))?;
    let (size, n_line) = n.ok_or_else(|| parse_err(last.max(1), "missing `n` line"))?;
    let vcolor = vcolor.unwrap_or_else(|| vec![0; size]);

    let mut seen = vec![0usize; size * size];
    for &(u, v, _, line) in &arcs {
        if seen[u * size + v] != 0 {
            return Err(parse_err(line, format!("duplicate arc {u} {v}")));
        }
        if tournament && seen[v * size + u] != 0 {
            return Err(parse_err(line, format!("both arcs {u} {v} and {v} {u}")));
        }
        seen[u * size + v] = line;
    }
    if tournament {
        for u in 0..size {
            for v in u + 1..size {
                if seen[u * size + v] == 0 && seen[v * size + u] == 0 {
                    return Err(parse_err(n_line, format!("no arc between {u} and {v}")));
                }
            }
        }
    }
    ColoredDigraph::new(size, vcolor, arcs.iter().map(|&(u, v, c, _)| (u, v, c)))
        .map_err(|e| parse_err(n_line, e.to_string()))
}

/// Canonical text; tournaments get the header flag.
pub fn emit_ctf(x: &ColoredDigraph) -> String {
    let mut s = String::new();
    if x.is_tournament() {
        s.push_str("ctf 1 tournament\n");
    } else {
        s.push_str("ctf 1\n");
    }
    writeln!(s, "n {}", x.n()).unwrap();
    s.push_str("vcolor");
    for c in x.vertex_colors() {
        write!(s, " {c}").unwrap();
    }
    s.push('\n');
    for (u, v, c) in x.arcs() {
        writeln!(s, "arc {u} {v} {c}").unwrap();
    }
    s
}
