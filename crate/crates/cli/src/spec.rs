//! Form text format: `rank=n; c[i][j]=<element>; ...`, 1-based with
//! `i <= j`, omitted entries zero.

use formwitt::forms::{QuadraticForm, Vector};
use formwitt::rings::{linalg, parse_element, Ring};
use formwitt::{Error, Result};

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

/// Splits on `sep` and yields each trimmed piece with its byte offset.
fn pieces(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices().chain(std::iter::once((s.len(), sep))) {
        if c == sep {
            let raw = &s[start..i];
            let lead = raw.len() - raw.trim_start().len();
            out.push((start + lead, raw.trim()));
            start = i + c.len_utf8();
        }
    }
    out
}

/// Shifts the position of a parse error by `offset`.
fn at(offset: usize, e: Error) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
        other => other,
    }
}

pub fn parse_form(ring: &Ring, s: &str) -> Result<QuadraticForm> {
    let mut parts = pieces(s, ';').into_iter().filter(|(_, p)| !p.is_empty());
    let Some((pos, head)) = parts.next() else { return perr(0, "empty form") };
    let Some(n) = head.strip_prefix("rank").map(str::trim_start).and_then(|r| r.strip_prefix('=')) else {
        return perr(pos, "expected rank=<n>");
    };
    let n: usize = match n.trim().parse() {
        Ok(n) => n,
        Err(_) => return perr(pos, format!("invalid rank {:?}", n.trim())),
    };
    let mut m = linalg::zeros(ring, n, n);
    let mut seen = vec![vec![false; n]; n];
    for (pos, entry) in parts {
        let Some((lhs, rhs)) = entry.split_once('=') else { return perr(pos, "expected c[i][j]=<element>") };
        let (i, j) = parse_index(lhs.trim()).ok_or(Error::Parse { pos, msg: format!("invalid entry {:?}", lhs.trim()) })?;
        if i == 0 || j == 0 || i > n || j > n {
            return perr(pos, format!("index ({i}, {j}) outside 1..={n}"));
        }
        if i > j {
            return perr(pos, format!("entry c[{i}][{j}] is below the diagonal"));
        }
        if seen[i - 1][j - 1] {
            return perr(pos, format!("entry c[{i}][{j}] given twice"));
        }
        seen[i - 1][j - 1] = true;
        let offset = pos + lhs.len() + 1 + (rhs.len() - rhs.trim_start().len());
        m[i - 1][j - 1] = parse_element(ring, rhs.trim()).map_err(|e| at(offset, e))?;
    }
    QuadraticForm::new(ring, m)
}

fn parse_index(s: &str) -> Option<(usize, usize)> {
    let rest = s.strip_prefix("c[")?;
    let (i, rest) = rest.split_once("][")?;
    let j = rest.strip_suffix(']')?;
    Some((i.trim().parse().ok()?, j.trim().parse().ok()?))
}

pub fn format_form(q: &QuadraticForm) -> String {
    let r = q.ring();
    let mut out = format!("rank={}", q.rank());
    for i in 0..q.rank() {
        for j in i..q.rank() {
            let c = q.coeff(i, j);
            if !r.is_zero(c) {
                out.push_str(&format!(";c[{}][{}]={}", i + 1, j + 1, r.format_element(c)));
            }
        }
    }
    out
}

/// Vector entries separated by `;`.
pub fn parse_vector(ring: &Ring, s: &str) -> Result<Vector> {
    pieces(s, ';').into_iter().map(|(pos, p)| parse_element(ring, p).map_err(|e| at(pos, e))).collect()
}

pub fn format_vector(ring: &Ring, v: &[formwitt::rings::RingElement]) -> Vec<String> {
    v.iter().map(|x| ring.format_element(x)).collect()
}
