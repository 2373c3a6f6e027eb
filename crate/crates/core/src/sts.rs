//! Steiner triple systems and their Steiner loops.
//!
//! Points are `1..=v`; in the associated loop element `0` is the adjoined
//! identity and element `p` is point `p`.

use std::fmt;

use crate::error::{Error, Result};
use crate::loops::{steiner_violation, FiniteLoop};

/// Points and blocks, kept in canonical order: each block ascending, the
/// block list sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSystem {
    v: usize,
    blocks: Vec<[usize; 3]>,
}

impl TripleSystem {
    /// Any list of triples over `1..=v`; use [`validate_sts`] to check the
    /// design property. Blocks with repeated or out-of-range points are
    /// rejected here because they cannot be represented canonically.
    pub fn new(v: usize, blocks: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        let mut out = Vec::new();
        for mut b in blocks {
            b.sort_unstable();
            if b[0] == 0 || b[2] > v {
                return Err(Error::InvalidSts(format!(
                    "block {{{}, {}, {}}} leaves 1..={v}",
                    b[0], b[1], b[2]
                )));
            }
            if b[0] == b[1] || b[1] == b[2] {
                return Err(Error::InvalidSts(format!(
                    "block {{{}, {}, {}}} repeats a point",
                    b[0], b[1], b[2]
                )));
            }
            out.push(b);
        }
        out.sort_unstable();
        Ok(TripleSystem { v, blocks: out })
    }

    /// The Fano plane: nonzero vectors of `F2^3` as points `1..=7`, blocks
    /// `{x, y, x + y}`.
    pub fn fano() -> Self {
        let mut blocks = Vec::new();
        for x in 1..8usize {
            for y in x + 1..8 {
                let z = x ^ y;
                if z > y {
                    blocks.push([x, y, z]);
                }
            }
        }
        TripleSystem::new(7, blocks).expect("points are in range")
    }

    pub fn points(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[[usize; 3]] {
        &self.blocks
    }
}

impl fmt::Display for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "STS({}) with {} blocks", self.v, self.blocks.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StsViolation {
    /// No system exists on `v` points.
    Congruence { v: usize },
    RepeatedPair { a: usize, b: usize, blocks: usize },
    MissingPair { a: usize, b: usize },
    DuplicateBlock([usize; 3]),
}

impl fmt::Display for StsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StsViolation::Congruence { v } => {
                write!(f, "v = {v} is not 1 or 3 mod 6")
            }
            StsViolation::RepeatedPair { a, b, blocks } => {
                write!(f, "pair {{{a}, {b}}} lies in {blocks} blocks")
            }
            StsViolation::MissingPair { a, b } => write!(f, "pair {{{a}, {b}}} lies in no block"),
            StsViolation::DuplicateBlock(b) => {
                write!(f, "block {{{}, {}, {}}} appears twice", b[0], b[1], b[2])
            }
        }
    }
}

/// Every way `s` fails to be a Steiner triple system.
pub fn validate_sts(s: &TripleSystem) -> Vec<StsViolation> {
    let v = s.v;
    let mut out = Vec::new();
    if v % 6 != 1 && v % 6 != 3 {
        out.push(StsViolation::Congruence { v });
    }
    for w in s.blocks.windows(2) {
        if w[0] == w[1] {
            out.push(StsViolation::DuplicateBlock(w[0]));
        }
    }
    let mut count = vec![0usize; (v + 1) * (v + 1)];
    for b in &s.blocks {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            count[b[i] * (v + 1) + b[j]] += 1;
        }
    }
    for a in 1..=v {
        for b in a + 1..=v {
            match count[a * (v + 1) + b] {
                0 => out.push(StsViolation::MissingPair { a, b }),
                1 => {}
                k => out.push(StsViolation::RepeatedPair { a, b, blocks: k }),
            }
        }
    }
    out
}

pub fn is_valid_sts(s: &TripleSystem) -> bool {
    validate_sts(s).is_empty()
}

/// The Steiner loop of `s`: `e = 0`, `xx = e`, and `xy` the third point of
/// the block through `x` and `y`.
pub fn loop_from_sts(s: &TripleSystem) -> Result<FiniteLoop> {
    if let Some(v) = validate_sts(s).into_iter().next() {
        return Err(Error::InvalidSts(v.to_string()));
    }
    let order = s.v + 1;
    let mut entries = vec![0usize; order * order];
    for x in 0..order {
        entries[x] = x;
        entries[x * order] = x;
    }
    for b in &s.blocks {
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            entries[b[i] * order + b[j]] = b[k];
            entries[b[j] * order + b[i]] = b[k];
        }
    }
    FiniteLoop::from_table(order, entries)
}

/// The triple system of a Steiner loop of order at least 4: points are the
/// non-identity elements, blocks the sets `{x, y, xy}`.
pub fn sts_from_loop(l: &FiniteLoop) -> Result<TripleSystem> {
    if l.order() < 4 {
        return Err(Error::NotSteiner(format!(
            "order {} is below 4",
            l.order()
        )));
    }
    if let Some(w) = steiner_violation(l) {
        return Err(Error::NotSteiner(w.to_string()));
    }
    let mut blocks = Vec::new();
    for x in 1..l.order() {
        for y in x + 1..l.order() {
            let z = l.op(x, y);
            if z > y {
                blocks.push([x, y, z]);
            }
        }
    }
    TripleSystem::new(l.order() - 1, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::is_steiner;

    #[test]
    fn fano_is_valid() {
        let f = TripleSystem::fano();
        assert_eq!(f.blocks().len(), 7);
        assert!(is_valid_sts(&f));
        let l = loop_from_sts(&f).unwrap();
        assert_eq!(l.order(), 8);
        assert!(is_steiner(&l));
        assert!(l.is_associative());
    }

    #[test]
    fn congruence_flagged() {
        let s = TripleSystem::new(6, [[1, 2, 3]]).unwrap();
        assert!(validate_sts(&s).contains(&StsViolation::Congruence { v: 6 }));
    }

    #[test]
    fn missing_block_reported() {
        let f = TripleSystem::fano();
        let partial = TripleSystem::new(7, f.blocks()[1..].iter().copied()).unwrap();
        let missing: Vec<_> = validate_sts(&partial)
            .into_iter()
            .filter(|v| matches!(v, StsViolation::MissingPair { .. }))
            .collect();
        assert_eq!(missing.len(), 3);
        assert!(loop_from_sts(&partial).is_err());
    }

    #[test]
    fn repeated_pair_reported() {
        let s = TripleSystem::new(3, [[1, 2, 3], [3, 2, 1]]).unwrap();
        let v = validate_sts(&s);
        assert!(v.contains(&StsViolation::DuplicateBlock([1, 2, 3])));
        assert!(v.contains(&StsViolation::RepeatedPair { a: 1, b: 2, blocks: 2 }));
    }

    #[test]
    fn bad_blocks_rejected() {
        assert!(TripleSystem::new(3, [[1, 1, 2]]).is_err());
        assert!(TripleSystem::new(3, [[0, 1, 2]]).is_err());
        assert!(TripleSystem::new(3, [[1, 2, 4]]).is_err());
    }

    #[test]
    fn single_block_is_klein() {
        let s = TripleSystem::new(3, [[1, 2, 3]]).unwrap();
        let l = loop_from_sts(&s).unwrap();
        assert!(l.rows().eq(FiniteLoop::elementary_abelian(2).unwrap().rows()));
        assert_eq!(sts_from_loop(&l).unwrap(), s);
    }

    #[test]
    fn round_trip_e8() {
        let e8 = FiniteLoop::elementary_abelian(3).unwrap();
        let s = sts_from_loop(&e8).unwrap();
        assert_eq!(s, TripleSystem::fano());
        assert_eq!(loop_from_sts(&s).unwrap().rows().collect::<Vec<_>>(), e8.rows().collect::<Vec<_>>());
    }

    #[test]
    fn non_steiner_rejected() {
        let z4 = FiniteLoop::from_fn(4, |a, b| (a + b) % 4).unwrap();
        assert!(matches!(sts_from_loop(&z4), Err(Error::NotSteiner(_))));
        let z2 = FiniteLoop::elementary_abelian(1).unwrap();
        assert!(sts_from_loop(&z2).is_err());
    }
}
