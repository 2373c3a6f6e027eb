//! Text formats for loop tables (`.tbl`), triple systems (`.sts`),
//! cocycles (`.cyc`) and cochains.
//!
//! All formats are line oriented; blank lines and lines starting with `#`
//! are ignored. Line numbers in errors are 1-based.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::coho::cocycle::{pair_index, Cochain, Cocycle};
use crate::error::{Error, Result};
use crate::f2::{F2Vector, IndexSubset};
use crate::loops::FiniteLoop;
use crate::sts::TripleSystem;

/// Non-comment lines with their line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
) -> Result<(usize, &'a str)> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| Error::parse(0, format!("missing `{keyword}` header")))?;
    match line.strip_prefix(keyword) {
        Some(rest) if rest.starts_with(char::is_whitespace) => Ok((no, rest.trim())),
        _ => Err(Error::parse(no, format!("expected `{keyword} ...`, found {line:?}"))),
    }
}

fn parse_number<T: std::str::FromStr>(no: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| Error::parse(no, format!("bad {what} {token:?}")))
}

/// Reads a `.tbl` file: `loop N`, then `N` rows of `N` entries.
pub fn parse_table(text: &str) -> Result<FiniteLoop> {
    let mut lines = content_lines(text);
    let (no, rest) = header(&mut lines, "loop")?;
    let order: usize = parse_number(no, rest, "order")?;
    let mut entries = Vec::with_capacity(order * order);
    let mut rows = 0;
    for (no, line) in lines {
        if rows == order {
            return Err(Error::parse(no, "more rows than the order"));
        }
        let before = entries.len();
        for tok in line.split_whitespace() {
            entries.push(parse_number::<usize>(no, tok, "entry")?);
        }
        if entries.len() - before != order {
            return Err(Error::parse(
                no,
                format!("row has {} entries, expected {order}", entries.len() - before),
            ));
        }
        rows += 1;
    }
    if rows != order {
        return Err(Error::parse(0, format!("found {rows} rows, expected {order}")));
    }
    FiniteLoop::from_table(order, entries)
}

pub fn write_table(l: &FiniteLoop) -> String {
    let mut out = format!("loop {}\n", l.order());
    for row in l.rows() {
        let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Reads a `.sts` file: `sts v`, then one block per line.
pub fn parse_sts(text: &str) -> Result<TripleSystem> {
    let mut lines = content_lines(text);
    let (no, rest) = header(&mut lines, "sts")?;
    let v: usize = parse_number(no, rest, "point count")?;
    let mut blocks = Vec::new();
    for (no, line) in lines {
        let pts: Vec<usize> = line
            .split_whitespace()
            .map(|t| parse_number(no, t, "point"))
            .collect::<Result<_>>()?;
        let block: [usize; 3] = pts
            .try_into()
            .map_err(|_| Error::parse(no, "a block has exactly three points"))?;
        blocks.push(block);
    }
    TripleSystem::new(v, blocks)
}

/// Canonical block order.
pub fn write_sts(s: &TripleSystem) -> String {
    let mut out = format!("sts {}\n", s.points());
    for b in s.blocks() {
        let _ = writeln!(out, "{} {} {}", b[0], b[1], b[2]);
    }
    out
}

fn parse_dims(no: usize, rest: &str) -> Result<(u32, usize)> {
    let mut n = None;
    let mut m = None;
    for tok in rest.split_whitespace() {
        match tok.split_once('=') {
            Some(("n", v)) => n = Some(parse_number(no, v, "n")?),
            Some(("m", v)) => m = Some(parse_number(no, v, "m")?),
            _ => return Err(Error::parse(no, format!("unexpected {tok:?} in header"))),
        }
    }
    match (n, m) {
        (Some(n), Some(m)) => Ok((n, m)),
        _ => Err(Error::parse(no, "header needs n=<n> m=<m>")),
    }
}

fn parse_subset(no: usize, n: u32, text: &str) -> Result<IndexSubset> {
    IndexSubset::parse_list(n, text).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(no, message),
        other => Error::parse(no, other.to_string()),
    })
}

fn parse_bits(no: usize, m: usize, text: &str) -> Result<F2Vector> {
    let text = text.trim();
    let v = F2Vector::parse(text).map_err(|e| Error::parse(no, e.to_string()))?;
    if v.len() != m {
        return Err(Error::parse(no, format!("value {text:?} has length {}, expected {m}", v.len())));
    }
    Ok(v)
}

/// Reads a `.cyc` file: `cocycle n=<n> m=<m>`, then `σ;τ;bits` lines.
/// Missing pairs are zero; values are completed by symmetry.
pub fn parse_cocycle(text: &str) -> Result<Cocycle> {
    let mut lines = content_lines(text);
    let (no, rest) = header(&mut lines, "cocycle")?;
    let (n, m) = parse_dims(no, rest)?;
    let mut f = Cocycle::zero(n, m).map_err(|e| Error::parse(no, e.to_string()))?;
    let mut seen = HashSet::new();
    for (no, line) in lines {
        let parts: Vec<&str> = line.split(';').collect();
        let [a, b, bits] = parts[..] else {
            return Err(Error::parse(no, "expected `σ;τ;bits`"));
        };
        let a = parse_subset(no, n, a)?;
        let b = parse_subset(no, n, b)?;
        if !seen.insert(pair_index(a.bits(), b.bits())) {
            return Err(Error::parse(no, format!("pair ({a}, {b}) given twice")));
        }
        f.set(&a, &b, parse_bits(no, m, bits)?)?;
    }
    Ok(f)
}

/// Nonzero values, one line per unordered pair.
pub fn write_cocycle(f: &Cocycle) -> Result<String> {
    let mut out = format!("cocycle n={} m={}\n", f.n(), f.m());
    for (a, b, v) in f.nonzero_entries()? {
        let _ = writeln!(out, "{};{};{}", a.to_list_string(), b.to_list_string(), v.to_bit_string());
    }
    Ok(out)
}

/// Reads a cochain: `cochain n=<n> m=<m>`, then `σ;bits` lines.
pub fn parse_cochain(text: &str) -> Result<Cochain> {
    let mut lines = content_lines(text);
    let (no, rest) = header(&mut lines, "cochain")?;
    let (n, m) = parse_dims(no, rest)?;
    let mut values = Cochain::zero(n, m)
        .map_err(|e| Error::parse(no, e.to_string()))?
        .values()
        .to_vec();
    let mut seen = HashSet::new();
    for (no, line) in lines {
        let Some((s, bits)) = line.split_once(';') else {
            return Err(Error::parse(no, "expected `σ;bits`"));
        };
        let s = parse_subset(no, n, s)?;
        if !seen.insert(s.bits()) {
            return Err(Error::parse(no, format!("subset {s} given twice")));
        }
        values[s.bits() as usize] = parse_bits(no, m, bits)?;
    }
    Cochain::new(n, m, values)
}

pub fn write_cochain(g: &Cochain) -> String {
    let mut out = format!("cochain n={} m={}\n", g.n(), g.m());
    for (bits, v) in g.values().iter().enumerate() {
        if !v.is_zero() {
            let s = IndexSubset::from_bits(g.n(), bits as u64).expect("index within 2^n");
            let _ = writeln!(out, "{};{}", s.to_list_string(), v.to_bit_string());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coho::universal::universal_cocycle;

    #[test]
    fn table_round_trip() {
        let e8 = FiniteLoop::elementary_abelian(3).unwrap();
        let text = write_table(&e8);
        assert!(text.starts_with("loop 8\n0 1 2 3 4 5 6 7\n"));
        let back = parse_table(&format!("# comment\n\n{text}")).unwrap();
        assert!(back.rows().eq(e8.rows()));
    }

    #[test]
    fn table_errors() {
        assert!(matches!(parse_table(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_table("loop 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_table("loop 2\n0 1\n1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_table("loop 2\n0 1\n1 x\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_table("loops 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_table("loop 2\n0 1\n1 1\n"), Err(Error::NotALoop(_))));
    }

    #[test]
    fn sts_round_trip() {
        let f = TripleSystem::fano();
        let text = write_sts(&f);
        assert_eq!(text.lines().next(), Some("sts 7"));
        assert_eq!(parse_sts(&text).unwrap(), f);
        assert!(parse_sts("sts 3\n1 2\n").is_err());
    }

    #[test]
    fn cocycle_round_trip() {
        let f = universal_cocycle(3).unwrap();
        let text = write_cocycle(&f).unwrap();
        let back = parse_cocycle(&text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn cocycle_symmetry_and_duplicates() {
        let f = parse_cocycle("cocycle n=2 m=1\n1;2;1\n").unwrap();
        let a = IndexSubset::new(2, [1]).unwrap();
        let b = IndexSubset::new(2, [2]).unwrap();
        assert_eq!(f.value(&b, &a), F2Vector::parse("1").unwrap());
        assert!(parse_cocycle("cocycle n=2 m=1\n1;2;1\n2;1;1\n").is_err());
        assert!(parse_cocycle("cocycle n=2 m=1\n1;2;11\n").is_err());
        assert!(parse_cocycle("cocycle n=2\n").is_err());
        assert!(parse_cocycle("cocycle n=2 m=1\n1;3;1\n").is_err());
        let empty = parse_cocycle("cocycle n=2 m=1\n-;1;1\n").unwrap();
        assert!(!empty.is_valid());
    }

    #[test]
    fn cochain_round_trip() {
        let g = Cochain::from_fn(2, 2, |s| F2Vector::from_u64(2, s.bits() % 4)).unwrap();
        let text = write_cochain(&g);
        assert_eq!(parse_cochain(&text).unwrap(), g);
        assert!(parse_cochain("cochain n=2 m=1\n-;1\n").is_err());
    }
}
