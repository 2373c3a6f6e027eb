//! Regular and strongly regular pairs of subsets.
//!
//! Three non-empty distinct subsets `σ, τ, σ△τ` form a line of `F2^n`.
//! Exactly one of the three unordered pairs on a line is *regular*: the
//! pair whose third member `σ△τ` is the largest of the three under
//! [`dominates`] (size first, ties broken by which set holds the least
//! element of their symmetric difference). A regular pair `(σ, τ)`,
//! oriented so that `|σ| >= |τ|`, is *strongly regular* unless `τ = {i}`
//! with `i > max(σ)`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::f2::{IndexSubset, MAX_ENUMERATE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairClass {
    Degenerate,
    NotRegular,
    RegularNotStrong,
    StronglyRegular,
}

impl PairClass {
    pub fn is_regular(self) -> bool {
        matches!(self, PairClass::RegularNotStrong | PairClass::StronglyRegular)
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::Degenerate => "degenerate",
            PairClass::NotRegular => "not_regular",
            PairClass::RegularNotStrong => "regular_not_strong",
            PairClass::StronglyRegular => "strongly_regular",
        })
    }
}

/// An unordered pair of subsets stored in canonical orientation:
/// `|first| >= |second|`, and on equal sizes `first < second` numerically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubsetPair {
    pub first: IndexSubset,
    pub second: IndexSubset,
}

impl SubsetPair {
    pub fn new(a: IndexSubset, b: IndexSubset) -> Result<Self> {
        if a.ambient() != b.ambient() {
            return Err(Error::AmbientMismatch {
                left: a.ambient(),
                right: b.ambient(),
            });
        }
        Ok(Self::oriented(a, b))
    }

    pub(crate) fn oriented(a: IndexSubset, b: IndexSubset) -> Self {
        let swap = match a.len().cmp(&b.len()) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => a.bits() > b.bits(),
        };
        if swap {
            SubsetPair { first: b, second: a }
        } else {
            SubsetPair { first: a, second: b }
        }
    }

    pub fn third(&self) -> IndexSubset {
        self.first.xor(&self.second)
    }

    fn key(&self) -> (u64, u64) {
        (self.first.bits(), self.second.bits())
    }
}

impl PartialOrd for SubsetPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: numeric order of `(first, second)` characteristic vectors.
impl Ord for SubsetPair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for SubsetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// `a` dominates `b` when it is larger, or equally large and the least
/// element of `a △ b` lies in `a`.
pub fn dominates(a: &IndexSubset, b: &IndexSubset) -> bool {
    match a.len().cmp(&b.len()) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => {
            let diff = a.bits() ^ b.bits();
            diff != 0 && a.bits() & (diff & diff.wrapping_neg()) != 0
        }
    }
}

fn is_degenerate(a: &IndexSubset, b: &IndexSubset) -> bool {
    a.is_empty() || b.is_empty() || a == b
}

fn classify_oriented(pair: &SubsetPair) -> PairClass {
    let (sigma, tau) = (&pair.first, &pair.second);
    if is_degenerate(sigma, tau) {
        return PairClass::Degenerate;
    }
    let rho = pair.third();
    if !(dominates(&rho, sigma) && dominates(&rho, tau)) {
        return PairClass::NotRegular;
    }
    let weak = tau.len() == 1 && tau.max() > sigma.max();
    if weak {
        PairClass::RegularNotStrong
    } else {
        PairClass::StronglyRegular
    }
}

pub fn classify_pair(a: &IndexSubset, b: &IndexSubset) -> Result<PairClass> {
    Ok(classify_oriented(&SubsetPair::new(*a, *b)?))
}

/// The three pairs on the line through `σ` and `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Sorted in canonical pair order.
    pub pairs: [SubsetPair; 3],
    pub classes: [PairClass; 3],
    /// Position of the regular pair in `pairs`.
    pub regular: usize,
}

impl Orbit {
    pub fn regular_pair(&self) -> SubsetPair {
        self.pairs[self.regular]
    }

    pub fn regular_class(&self) -> PairClass {
        self.classes[self.regular]
    }
}

/// The line through `σ` and `τ` with its unique regular member.
pub fn orbit_of(a: &IndexSubset, b: &IndexSubset) -> Result<Orbit> {
    let base = SubsetPair::new(*a, *b)?;
    if is_degenerate(a, b) {
        return Err(Error::Precondition(format!(
            "degenerate pair {base}: orbit needs non-empty distinct subsets"
        )));
    }
    let c = base.third();
    let mut pairs = [
        SubsetPair::oriented(*a, *b),
        SubsetPair::oriented(*a, c),
        SubsetPair::oriented(c, *b),
    ];
    pairs.sort();
    let classes = pairs.map(|p| classify_oriented(&p));
    let regular: Vec<usize> = (0..3).filter(|&i| classes[i].is_regular()).collect();
    if regular.len() != 1 {
        return Err(Error::Verification(format!(
            "line {base} has {} regular pairs",
            regular.len()
        )));
    }
    Ok(Orbit {
        pairs,
        classes,
        regular: regular[0],
    })
}

/// The regular pair on the line through `a` and `b`, computed directly.
pub(crate) fn regular_member(a: IndexSubset, b: IndexSubset) -> SubsetPair {
    let c = a.xor(&b);
    // the regular pair excludes the dominant member of the line
    let top = [a, b, c]
        .into_iter()
        .reduce(|x, y| if dominates(&x, &y) { x } else { y })
        .expect("three members");
    if top == a {
        SubsetPair::oriented(b, c)
    } else if top == b {
        SubsetPair::oriented(a, c)
    } else {
        SubsetPair::oriented(a, b)
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATE {
        return Err(Error::out_of_range("n", n, format!("1..={MAX_ENUMERATE}")));
    }
    Ok(())
}

fn non_degenerate_pairs(n: u32) -> impl Iterator<Item = SubsetPair> {
    let top = 1u64 << n;
    (1..top).flat_map(move |a| {
        (1..a).map(move |b| {
            SubsetPair::oriented(
                IndexSubset::from_bits_unchecked(n, a),
                IndexSubset::from_bits_unchecked(n, b),
            )
        })
    })
}

/// All strongly regular unordered pairs over `I_n`, in canonical order.
pub fn strongly_regular_pairs(n: u32) -> Result<Vec<SubsetPair>> {
    check_n(n)?;
    let mut out: Vec<SubsetPair> = non_degenerate_pairs(n)
        .filter(|p| classify_oriented(p) == PairClass::StronglyRegular)
        .collect();
    out.sort();
    Ok(out)
}

/// Number of regular unordered pairs over `I_n`, by enumeration.
pub fn regular_pair_count(n: u32) -> Result<u64> {
    check_n(n)?;
    Ok(non_degenerate_pairs(n)
        .filter(|p| classify_oriented(p).is_regular())
        .count() as u64)
}

/// `(2^(2n-1) + 1)/3 - 3 * 2^(n-1) + n + 1`, the number of strongly regular
/// pairs and the dimension of the second term of the central series quotient.
pub fn sr_count_formula(n: u32) -> u128 {
    assert!((1..=63).contains(&n), "n must lie in 1..=63");
    let n = n as i128;
    let value = ((1i128 << (2 * n - 1)) + 1) / 3 - 3 * (1i128 << (n - 1)) + n + 1;
    value as u128
}

/// `(2^n - 1)(2^(n-1) - 1)/3`, the number of lines in `F2^n`.
pub fn regular_count_formula(n: u32) -> u128 {
    assert!((1..=63).contains(&n), "n must lie in 1..=63");
    (((1u128 << n) - 1) * ((1u128 << (n - 1)) - 1)) / 3
}
