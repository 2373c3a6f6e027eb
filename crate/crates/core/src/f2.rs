//! Subsets of `{1..n}` and linear algebra over F2.
//!
//! A subset is stored as its characteristic vector: index `i` lives at bit
//! `i - 1`. The same encoding fixes the canonical order of subsets (numeric
//! order of the characteristic vector), the layout of dense tables and the
//! tie-breaks used by every search in the crate.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest ambient size an [`IndexSubset`] can carry.
pub const MAX_AMBIENT: u32 = 64;

/// Largest `n` accepted by [`enumerate_subsets`].
pub const MAX_ENUMERATE: u32 = 16;

/// A subset of `I_n = {1, ..., n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSubset {
    n: u32,
    bits: u64,
}

impl IndexSubset {
    pub fn empty(n: u32) -> Self {
        assert!(n <= MAX_AMBIENT, "ambient size {n} exceeds {MAX_AMBIENT}");
        IndexSubset { n, bits: 0 }
    }

    pub fn singleton(n: u32, i: u32) -> Result<Self> {
        Self::new(n, [i])
    }

    /// Builds a subset from its members. Duplicates are rejected.
    pub fn new(n: u32, members: impl IntoIterator<Item = u32>) -> Result<Self> {
        if n > MAX_AMBIENT {
            return Err(Error::out_of_range("n", n, format!("0..={MAX_AMBIENT}")));
        }
        let mut bits = 0u64;
        for i in members {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            let bit = 1u64 << (i - 1);
            if bits & bit != 0 {
                return Err(Error::Precondition(format!("duplicate member {i}")));
            }
            bits |= bit;
        }
        Ok(IndexSubset { n, bits })
    }

    /// Builds a subset from a characteristic vector.
    pub fn from_bits(n: u32, bits: u64) -> Result<Self> {
        if n > MAX_AMBIENT {
            return Err(Error::out_of_range("n", n, format!("0..={MAX_AMBIENT}")));
        }
        if n < 64 && bits >> n != 0 {
            return Err(Error::IndexOutOfRange {
                index: 64 - bits.leading_zeros(),
                n,
            });
        }
        Ok(IndexSubset { n, bits })
    }

    pub(crate) fn from_bits_unchecked(n: u32, bits: u64) -> Self {
        debug_assert!(n == 64 || bits >> n == 0);
        IndexSubset { n, bits }
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: u32) -> bool {
        i >= 1 && i <= self.n && self.bits & (1u64 << (i - 1)) != 0
    }

    pub fn min(&self) -> Option<u32> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() + 1)
    }

    pub fn max(&self) -> Option<u32> {
        (self.bits != 0).then(|| 64 - self.bits.leading_zeros())
    }

    /// Members in ascending order.
    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            Some(i + 1)
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Symmetric difference, the group operation of `V = F2^n`.
    pub fn symdiff(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.xor(other))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(IndexSubset {
            n: self.n,
            bits: self.bits | other.bits,
        })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(IndexSubset {
            n: self.n,
            bits: self.bits & other.bits,
        })
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(IndexSubset {
            n: self.n,
            bits: self.bits & !other.bits,
        })
    }

    /// Symmetric difference without the ambient check; callers guarantee it.
    pub(crate) fn xor(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        IndexSubset {
            n: self.n,
            bits: self.bits ^ other.bits,
        }
    }

    pub(crate) fn without(&self, i: u32) -> Self {
        IndexSubset {
            n: self.n,
            bits: self.bits & !(1u64 << (i - 1)),
        }
    }

    /// Renders as comma-separated ascending indices, `-` for the empty set.
    pub fn to_list_string(&self) -> String {
        if self.is_empty() {
            return "-".to_string();
        }
        self.members()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Inverse of [`IndexSubset::to_list_string`].
    pub fn parse_list(n: u32, text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "-" || text.is_empty() {
            return Ok(Self::empty(n));
        }
        let mut members = Vec::new();
        for part in text.split(',') {
            let i: u32 = part
                .trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("bad subset member {part:?}")))?;
            members.push(i);
        }
        Self::new(n, members)
    }
}

impl PartialOrd for IndexSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: numeric order of the characteristic vector.
impl Ord for IndexSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.bits, self.n).cmp(&(other.bits, other.n))
    }
}

impl fmt::Debug for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{{{}}}", self.to_list_string())
    }
}

/// Symmetric difference of two subsets over the same ambient set.
pub fn symdiff(a: &IndexSubset, b: &IndexSubset) -> Result<IndexSubset> {
    a.symdiff(b)
}

/// All `2^n` subsets of `I_n` in canonical order.
pub fn enumerate_subsets(n: u32) -> Result<Vec<IndexSubset>> {
    if n > MAX_ENUMERATE {
        return Err(Error::out_of_range("n", n, format!("0..={MAX_ENUMERATE}")));
    }
    Ok((0..1u64 << n)
        .map(|bits| IndexSubset::from_bits_unchecked(n, bits))
        .collect())
}

/// A bit-packed vector over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Low `len` bits of `value`, bit `i` at coordinate `i`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = if len >= 64 { value } else { value & ((1u64 << len) - 1) };
        }
        v
    }

    /// Parses a string over `{0,1}`; character `i` is coordinate `i`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut v = Self::zeros(text.len());
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::parse(0, format!("bad bit {other:?} in {text:?}"))),
            }
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Index of the highest set coordinate.
    pub fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn xor_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "F2Vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn try_add(&self, other: &F2Vector) -> Result<F2Vector> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        let mut out = self.clone();
        out.xor_assign(other);
        Ok(out)
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Numeric value, coordinate `i` weighted `2^i`. `None` beyond 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.words.iter().skip(1).any(|&w| w != 0) {
            return None;
        }
        Some(self.words.first().copied().unwrap_or(0))
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    /// Compares numeric values (coordinate `i` weighted `2^i`).
    pub fn cmp_numeric(&self, other: &F2Vector) -> Ordering {
        let n = self.words.len().max(other.words.len());
        for wi in (0..n).rev() {
            let a = self.words.get(wi).copied().unwrap_or(0);
            let b = other.words.get(wi).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl std::ops::Add for &F2Vector {
    type Output = F2Vector;

    fn add(self, rhs: &F2Vector) -> F2Vector {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl std::ops::AddAssign<&F2Vector> for F2Vector {
    fn add_assign(&mut self, rhs: &F2Vector) {
        self.xor_assign(rhs);
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2[{}]", self.to_bit_string())
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Incremental echelon basis keyed by leading coordinate.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    /// `(leading, vector)`, kept sorted by leading coordinate, descending.
    rows: Vec<(usize, F2Vector)>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis { len, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        let mut v = v.clone();
        for (lead, row) in &self.rows {
            if v.get(*lead) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &F2Vector) -> bool {
        assert_eq!(v.len(), self.len, "EchelonBasis length mismatch");
        let r = self.reduce(v);
        match r.leading() {
            None => false,
            Some(lead) => {
                let pos = self.rows.partition_point(|(l, _)| *l > lead);
                self.rows.insert(pos, (lead, r));
                true
            }
        }
    }

    /// The numerically least element of the coset `v + span`.
    pub fn min_in_coset(&self, v: &F2Vector) -> F2Vector {
        // rows are descending by leading bit, so reduce() is already greedy
        // from the top coordinate down.
        self.reduce(v)
    }

    pub fn vectors(&self) -> impl Iterator<Item = &F2Vector> {
        self.rows.iter().map(|(_, v)| v)
    }
}

/// A dense matrix over F2, stored as rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<F2Vector>,
}

impl F2Matrix {
    pub fn new(cols: usize) -> Self {
        F2Matrix { cols, rows: Vec::new() }
    }

    /// Rows must share one length. An empty row list gives a 0x0 matrix.
    pub fn from_rows(rows: Vec<F2Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, F2Vector::len);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::RaggedRows {
                    row,
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(F2Matrix { cols, rows })
    }

    pub fn from_bool_rows(rows: &[Vec<bool>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| F2Vector::from_bits(r)).collect())
    }

    pub fn push_row(&mut self, row: F2Vector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::RaggedRows {
                row: self.rows.len(),
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.cols);
        for r in &self.rows {
            basis.insert(r);
        }
        basis.rank()
    }

    /// Indices of a maximal independent set of rows, chosen greedily in row order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis = EchelonBasis::new(self.cols);
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| basis.insert(r).then_some(i))
            .collect()
    }

    /// Reduced row echelon form; pivots scan columns in ascending order.
    /// Returns the nonzero rows and their pivot columns.
    fn rref(&self, extra: Option<&F2Vector>) -> (Vec<F2Vector>, Vec<usize>) {
        let width = self.cols + usize::from(extra.is_some());
        let mut work: Vec<F2Vector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut w = F2Vector::zeros(width);
                for c in r.ones() {
                    w.set(c, true);
                }
                if let Some(b) = extra {
                    w.set(self.cols, b.get(i));
                }
                w
            })
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..width {
            let Some(p) = (next..work.len()).find(|&r| work[r].get(col)) else {
                continue;
            };
            work.swap(next, p);
            let pivot_row = work[next].clone();
            for (r, row) in work.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == work.len() {
                break;
            }
        }
        work.truncate(next);
        (work, pivots)
    }

    /// A basis of `{x : Mx = 0}`.
    pub fn nullspace(&self) -> Vec<F2Vector> {
        let (rows, pivots) = self.rref(None);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = F2Vector::zeros(self.cols);
                x.set(free, true);
                for (row, &p) in rows.iter().zip(&pivots) {
                    if row.get(free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// Solves `Mx = b`, where row `r` of `M` is the coefficient vector of
    /// equation `r` and `b[r]` its right-hand side; `x` has one coordinate
    /// per column. Among all solutions the numerically least one is
    /// returned (coordinate `i` weighted `2^i`).
    pub fn solve(&self, b: &F2Vector) -> Result<Option<F2Vector>> {
        if b.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                found: b.len(),
            });
        }
        let (rows, pivots) = self.rref(Some(b));
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = F2Vector::zeros(self.cols);
        for (row, &p) in rows.iter().zip(&pivots) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        let mut kernel = EchelonBasis::new(self.cols);
        for v in self.nullspace() {
            kernel.insert(&v);
        }
        Ok(Some(kernel.min_in_coset(&x)))
    }

    /// `M x` for a column vector `x`.
    pub fn apply(&self, x: &F2Vector) -> Result<F2Vector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok(F2Vector::from_bits(
            &self.rows.iter().map(|r| r.dot(x)).collect::<Vec<_>>(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u32, m: &[u32]) -> IndexSubset {
        IndexSubset::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn symdiff_examples() {
        assert_eq!(symdiff(&set(3, &[1, 2]), &set(3, &[2, 3])).unwrap(), set(3, &[1, 3]));
        let s = set(4, &[1, 4]);
        assert!(symdiff(&s, &s).unwrap().is_empty());
        assert_eq!(symdiff(&set(3, &[1, 2]), &set(3, &[3])).unwrap(), set(3, &[1, 2, 3]));
    }

    #[test]
    fn symdiff_rejects_mismatched_ambient() {
        let err = symdiff(&set(3, &[1]), &set(4, &[1])).unwrap_err();
        assert_eq!(err, Error::AmbientMismatch { left: 3, right: 4 });
    }

    #[test]
    fn subset_construction_errors() {
        assert!(IndexSubset::new(3, [4]).is_err());
        assert!(IndexSubset::new(3, [0]).is_err());
        assert!(IndexSubset::new(3, [2, 2]).is_err());
        assert!(IndexSubset::from_bits(2, 0b100).is_err());
    }

    #[test]
    fn subset_group_laws_exhaustive() {
        for n in 0..=6 {
            let all = enumerate_subsets(n).unwrap();
            let e = IndexSubset::empty(n);
            for a in &all {
                assert_eq!(a.symdiff(&e).unwrap(), *a);
                assert!(a.symdiff(a).unwrap().is_empty());
                for b in &all {
                    assert_eq!(a.symdiff(b).unwrap(), b.symdiff(a).unwrap());
                    for c in &all {
                        let l = a.symdiff(b).unwrap().symdiff(c).unwrap();
                        let r = a.symdiff(&b.symdiff(c).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_order() {
        assert_eq!(enumerate_subsets(0).unwrap(), vec![IndexSubset::empty(0)]);
        assert_eq!(enumerate_subsets(1).unwrap(), vec![IndexSubset::empty(1), set(1, &[1])]);
        assert_eq!(
            enumerate_subsets(2).unwrap(),
            vec![IndexSubset::empty(2), set(2, &[1]), set(2, &[2]), set(2, &[1, 2])]
        );
        assert!(enumerate_subsets(17).is_err());
        assert_eq!(enumerate_subsets(10).unwrap().len(), 1024);
    }

    #[test]
    fn list_round_trip() {
        let s = set(5, &[1, 3, 5]);
        assert_eq!(s.to_list_string(), "1,3,5");
        assert_eq!(IndexSubset::parse_list(5, "1,3,5").unwrap(), s);
        assert_eq!(IndexSubset::parse_list(5, "-").unwrap(), IndexSubset::empty(5));
    }

    #[test]
    fn rank_examples() {
        let id = F2Matrix::from_bool_rows(&[vec![true, false], vec![false, true]]).unwrap();
        assert_eq!(id.rank(), 2);
        let dup = F2Matrix::from_bool_rows(&[vec![true, true], vec![true, true]]).unwrap();
        assert_eq!(dup.rank(), 1);
        assert_eq!(F2Matrix::from_rows(vec![]).unwrap().rank(), 0);
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = F2Matrix::from_bool_rows(&[vec![true, false], vec![true]]).unwrap_err();
        assert!(matches!(err, Error::RaggedRows { row: 1, .. }));
    }

    #[test]
    fn solve_examples() {
        let id = F2Matrix::from_bool_rows(&[vec![true, false], vec![false, true]]).unwrap();
        let x = id.solve(&F2Vector::parse("10").unwrap()).unwrap().unwrap();
        assert_eq!(x.to_bit_string(), "10");

        let ones = F2Matrix::from_bool_rows(&[vec![true, true]]).unwrap();
        let x = ones.solve(&F2Vector::parse("1").unwrap()).unwrap().unwrap();
        assert_eq!(x.to_bit_string(), "10");

        let zero = F2Matrix::from_bool_rows(&[vec![false, false]]).unwrap();
        assert_eq!(zero.solve(&F2Vector::parse("1").unwrap()).unwrap(), None);

        assert!(ones.solve(&F2Vector::parse("11").unwrap()).is_err());
    }

    #[test]
    fn solve_returns_least_solution_by_brute_force() {
        // 3x5 system; compare with exhaustive search over all 32 candidates.
        let m = F2Matrix::from_rows(vec![
            F2Vector::parse("11010").unwrap(),
            F2Vector::parse("01101").unwrap(),
            F2Vector::parse("11111").unwrap(),
        ])
        .unwrap();
        for rhs in 0..8u64 {
            let b = F2Vector::from_u64(3, rhs);
            let brute = (0..32u64)
                .map(|v| F2Vector::from_u64(5, v))
                .find(|x| m.apply(x).unwrap() == b);
            assert_eq!(m.solve(&b).unwrap(), brute, "rhs {rhs}");
        }
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = F2Matrix::from_rows(vec![
            F2Vector::parse("110010").unwrap(),
            F2Vector::parse("011001").unwrap(),
            F2Vector::parse("101011").unwrap(),
        ])
        .unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 6 - m.rank());
        for v in &ns {
            assert!(m.apply(v).unwrap().is_zero());
        }
        assert_eq!(F2Matrix::from_rows(ns).unwrap().rank(), 6 - m.rank());
    }

    #[test]
    fn vector_numeric_order() {
        let a = F2Vector::parse("10").unwrap();
        let b = F2Vector::parse("01").unwrap();
        assert_eq!(a.cmp_numeric(&b), Ordering::Less);
        assert_eq!(a.to_u64(), Some(1));
        let mut big = F2Vector::zeros(130);
        big.set(129, true);
        assert_eq!(big.leading(), Some(129));
        assert_eq!(big.to_u64(), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = F2Matrix> {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), rows)
                .prop_map(|r| F2Matrix::from_bool_rows(&r).unwrap())
        }

        proptest! {
            #[test]
            fn rank_invariant_under_row_operations(m in matrix(6, 7), i in 0usize..6, j in 0usize..6) {
                let r = m.rank();
                let mut rows = m.rows().to_vec();
                rows.swap(i, j);
                if i != j {
                    let src = rows[j].clone();
                    rows[i].xor_assign(&src);
                }
                prop_assert_eq!(F2Matrix::from_rows(rows).unwrap().rank(), r);
            }

            #[test]
            fn solve_satisfies_system_when_consistent(m in matrix(5, 6), b in proptest::collection::vec(any::<bool>(), 5)) {
                let b = F2Vector::from_bits(&b);
                let mut aug = F2Matrix::new(7);
                for (i, r) in m.rows().iter().enumerate() {
                    let mut w = F2Vector::zeros(7);
                    for c in r.ones() { w.set(c, true); }
                    w.set(6, b.get(i));
                    aug.push_row(w).unwrap();
                }
                let consistent = aug.rank() == m.rank();
                match m.solve(&b).unwrap() {
                    Some(x) => { prop_assert!(consistent); prop_assert_eq!(m.apply(&x).unwrap(), b); }
                    None => prop_assert!(!consistent),
                }
            }
        }
    }
}
