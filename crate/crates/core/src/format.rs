//! Line-oriented text format for subcube collections.
//!
//! ```text
//! scp q=2 n=3
//! 000
//! *01   # comment
//! ```
//!
//! The header is optional. Without it, `n` comes from the first word and
//! `q` is one more than the largest symbol used (at least 2).

use crate::collection::SubcubeCollection;
use crate::error::{Error, Result};
use crate::cube::{char_symbol, Subcube, MAX_ALPHABET};

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

/// Strips comments and blank lines, keeping 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

/// Parses `key=value` fields after a header keyword.
pub(crate) fn header_fields(line: usize, rest: &str, keys: &[&str]) -> Result<Vec<usize>> {
    let mut out = vec![None; keys.len()];
    for field in rest.split_whitespace() {
        let Some((k, v)) = field.split_once('=') else {
            return parse_err(line, format!("malformed header field `{field}`"));
        };
        let Some(slot) = keys.iter().position(|&key| key == k) else {
            return parse_err(line, format!("unknown header field `{k}`"));
        };
        match v.parse::<usize>() {
            Ok(x) => out[slot] = Some(x),
            Err(_) => return parse_err(line, format!("header field `{k}` is not a number")),
        }
    }
    out.into_iter()
        .zip(keys)
        .map(|(v, k)| v.map_or_else(|| parse_err(line, format!("header is missing `{k}`")), Ok))
        .collect()
}

pub fn parse_scp(text: &str) -> Result<SubcubeCollection> {
    let mut header: Option<(u8, usize)> = None;
    let mut words: Vec<(usize, &str)> = Vec::new();
    for (line, body) in content_lines(text) {
        if let Some(rest) = body.strip_prefix("scp") {
            if header.is_some() || !words.is_empty() {
                return parse_err(line, "header must come first and only once");
            }
            let f = header_fields(line, rest, &["q", "n"])?;
            if f[0] < 2 || f[0] > MAX_ALPHABET as usize {
                return parse_err(line, format!("alphabet size {} outside 2..=36", f[0]));
            }
            header = Some((f[0] as u8, f[1]));
            continue;
        }
        if body.split_whitespace().count() != 1 {
            return parse_err(line, format!("expected one subcube per line, got `{body}`"));
        }
        words.push((line, body));
    }
    let (q, n) = match header {
        Some(h) => h,
        None => {
            let Some(&(_, first)) = words.first() else {
                return parse_err(1, "no subcubes");
            };
            let mut max = 1u32;
            for &(line, w) in &words {
                for c in w.chars() {
                    if c == '*' {
                        continue;
                    }
                    match c.to_digit(36) {
                        Some(v) if c.is_ascii_digit() || c.is_ascii_lowercase() => max = max.max(v),
                        _ => return parse_err(line, format!("invalid symbol `{c}`")),
                    }
                }
            }
            (max as u8 + 1, first.chars().count())
        }
    };
    let mut members = Vec::with_capacity(words.len());
    for (line, w) in words {
        if w.chars().count() != n {
            return parse_err(line, format!("word `{w}` has length {}, expected {n}", w.chars().count()));
        }
        let symbols = w
            .chars()
            .map(|c| char_symbol(c, q))
            .collect::<Result<Vec<_>>>()
            .or_else(|e| parse_err(line, e.to_string()))?;
        members.push(Subcube::from_symbols(q, &symbols).or_else(|e| parse_err(line, e.to_string()))?);
    }
    if members.is_empty() {
        return parse_err(1, "no subcubes");
    }
    SubcubeCollection::new(q, n, members).or_else(|e| parse_err(1, e.to_string()))
}

pub fn format_scp(f: &SubcubeCollection) -> String {
    let mut out = format!("scp q={} n={}\n", f.q(), f.n());
    for m in f.members() {
        out.push_str(&m.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_header() {
        let f = parse_scp("scp q=3 n=2\n# c\n0*\n1*\n\n2*  # trailing\n").unwrap();
        assert_eq!((f.q(), f.n(), f.len()), (3, 2, 3));
        assert_eq!(parse_scp(&format_scp(&f)).unwrap(), f);
    }

    #[test]
    fn inferred_header() {
        let f = parse_scp("0*\n10\n11\n").unwrap();
        assert_eq!((f.q(), f.n()), (2, 2));
        let g = parse_scp("**\n").unwrap();
        assert_eq!(g.q(), 2);
        let h = parse_scp("2*\n").unwrap();
        assert_eq!(h.q(), 3);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_scp("0*\n1\n").unwrap_err(), Error::Parse { line: 2, message: "word `1` has length 1, expected 2".into() });
        assert!(matches!(parse_scp("scp q=2 n=2\n02\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_scp("0*\nscp q=2 n=2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_scp("scp q=2\n0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_scp("# only comments\n"), Err(Error::Parse { .. })));
    }
}
