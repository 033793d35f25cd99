//! The `p sfast` text format. Ids are 1-based on disk, 0-based in memory.
//!
//! ```text
//! c optional comments
//! p sfast <n> <k>
//! t <terminals, ascending>
//! a <u> <v>        one line per vertex pair, sorted by the pair
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::tournament::{Arc, ArcSet, Tournament};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_id(tok: &str, n: usize, line: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| err(line, format!("bad vertex id {tok:?}")))?;
    if v == 0 || v > n {
        return Err(err(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Meaningful lines with their 1-based line numbers.
fn content_lines(text: &str) -> Result<Vec<(usize, Vec<&str>)>> {
    if !text.is_empty() && !text.ends_with('\n') {
        return Err(err(text.lines().count(), "missing final newline"));
    }
    Ok(text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| toks.first().is_some_and(|&t| t != "c"))
        .collect())
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let lines = content_lines(text)?;
    let mut it = lines.into_iter();
    let (ln, header) = it
        .next()
        .ok_or_else(|| err(1, "missing `p sfast` header"))?;
    let (n, k) = match header.as_slice() {
        ["p", "sfast", n, k] => (
            n.parse::<usize>().map_err(|_| err(ln, "bad n"))?,
            k.parse::<usize>().map_err(|_| err(ln, "bad k"))?,
        ),
        _ => return Err(err(ln, "expected `p sfast <n> <k>`")),
    };
    let (ln, tline) = it.next().ok_or_else(|| err(ln + 1, "missing `t` line"))?;
    if tline.first() != Some(&"t") {
        return Err(err(ln, "expected `t` line"));
    }
    let mut terminals = Vec::with_capacity(tline.len() - 1);
    for tok in &tline[1..] {
        let v = parse_id(tok, n, ln)?;
        if terminals.last().is_some_and(|&p| p >= v) {
            return Err(err(ln, "terminals must be strictly ascending"));
        }
        terminals.push(v);
    }
    let mut seen = vec![false; n * n];
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut last_line = ln;
    for (ln, toks) in it {
        last_line = ln;
        let [tag, u, v] = toks.as_slice() else {
            return Err(err(ln, "expected `a <u> <v>`"));
        };
        if *tag != "a" {
            return Err(err(ln, format!("unexpected line tag {tag:?}")));
        }
        let (u, v) = (parse_id(u, n, ln)?, parse_id(v, n, ln)?);
        if u == v {
            return Err(err(ln, "self-loop"));
        }
        let key = u.min(v) * n + u.max(v);
        if seen[key] {
            return Err(err(
                ln,
                format!("second arc between {} and {}", u + 1, v + 1),
            ));
        }
        seen[key] = true;
        arcs.push(Arc::new(u, v));
    }
    let expected = n * n.saturating_sub(1) / 2;
    if arcs.len() != expected {
        return Err(err(
            last_line,
            format!("expected {expected} arcs, found {}", arcs.len()),
        ));
    }
    let t = Tournament::from_arcs(n, arcs)?;
    Instance::new(t, terminals, k)
}

/// Canonical text: no comments, terminals ascending, arcs in pair order.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "p sfast {} {}", inst.n(), inst.budget()).unwrap();
    out.push('t');
    for v in inst.terminals() {
        write!(out, " {}", v + 1).unwrap();
    }
    out.push('\n');
    for a in inst.tournament().arcs() {
        writeln!(out, "a {} {}", a.tail + 1, a.head + 1).unwrap();
    }
    out
}

/// A witness file: `a <u> <v>` lines and `c` comments. `n` bounds the ids.
pub fn parse_witness(text: &str, n: usize) -> Result<ArcSet> {
    let mut set = ArcSet::new();
    for (ln, toks) in content_lines(text)? {
        let [tag, u, v] = toks.as_slice() else {
            return Err(err(ln, "expected `a <u> <v>`"));
        };
        if *tag != "a" {
            return Err(err(ln, format!("unexpected line tag {tag:?}")));
        }
        let a = Arc::new(parse_id(u, n, ln)?, parse_id(v, n, ln)?);
        if !set.insert(a) {
            return Err(err(ln, "duplicate arc"));
        }
    }
    Ok(set)
}

pub fn serialize_witness(s: &ArcSet) -> String {
    let mut out = String::new();
    for a in s {
        writeln!(out, "a {} {}", a.tail + 1, a.head + 1).unwrap();
    }
    out
}
