//! Words over an ordered generator set and the free Steiner loop on them.
//!
//! [`Word`] is an arbitrary binary tree over generators `x1, x2, ...` (plus
//! the empty word standing for the identity). Irreducible words, the
//! S-words, are the canonical representatives of elements of the free
//! Steiner loop, and [`multiply`] keeps products in that form.
//!
//! Orientation of equal-length factors: the smaller word (under
//! [`compare_words`]) goes on the left, so `x1 * x2 = (x1 x2)`. Longer
//! factors always go on the left, as in `((x1 x2) x3)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::f2::IndexSubset;
use crate::loops::Loop;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Empty,
    Gen(u32),
    Pair {
        left: Arc<Word>,
        right: Arc<Word>,
        len: usize,
    },
}

impl Word {
    pub fn gen(i: u32) -> Word {
        assert!(i >= 1, "generators are numbered from 1");
        Word::Gen(i)
    }

    /// The tree `(left right)`, with no normalization.
    pub fn pair(left: Word, right: Word) -> Word {
        let len = left.len() + right.len();
        Word::Pair {
            left: Arc::new(left),
            right: Arc::new(right),
            len,
        }
    }

    /// Number of generator occurrences.
    pub fn len(&self) -> usize {
        match self {
            Word::Empty => 0,
            Word::Gen(_) => 1,
            Word::Pair { len, .. } => *len,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Word::Empty)
    }

    pub fn factors(&self) -> Option<(&Word, &Word)> {
        match self {
            Word::Pair { left, right, .. } => Some((left, right)),
            _ => None,
        }
    }

    /// Largest generator index occurring in the word (0 for the empty word).
    pub fn max_generator(&self) -> u32 {
        match self {
            Word::Empty => 0,
            Word::Gen(i) => *i,
            Word::Pair { left, right, .. } => left.max_generator().max(right.max_generator()),
        }
    }

    pub fn parse(text: &str) -> Result<Word> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let w = parser.word()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Empty => f.write_str("e"),
            Word::Gen(i) => write!(f, "x{i}"),
            Word::Pair { left, right, .. } => write!(f, "({left} {right})"),
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_words(self, other)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::parse(1, format!("{msg} at column {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let left = self.word()?;
                let right = self.word()?;
                self.skip_ws();
                if self.src.get(self.pos) != Some(&b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(Word::pair(left, right))
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                match digits.parse::<u32>() {
                    Ok(i) if i >= 1 => Ok(Word::Gen(i)),
                    _ => Err(self.error("expected generator index >= 1")),
                }
            }
            Some(b'e') => {
                self.pos += 1;
                Ok(Word::Empty)
            }
            _ => Err(self.error("expected '(', 'x<i>' or 'e'")),
        }
    }
}

/// Total order on words: longer is greater; equal-length pairs compare by
/// left factor, then right factor; generators compare by index.
pub fn compare_words(v: &Word, w: &Word) -> Ordering {
    match v.len().cmp(&w.len()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    match (v, w) {
        (Word::Empty, Word::Empty) => Ordering::Equal,
        (Word::Gen(a), Word::Gen(b)) => a.cmp(b),
        (
            Word::Pair {
                left: v1, right: v2, ..
            },
            Word::Pair {
                left: w1, right: w2, ..
            },
        ) => compare_words(v1, w1).then_with(|| compare_words(v2, w2)),
        // equal lengths force equal shapes at the top level
        _ => unreachable!("words of equal length with different shapes"),
    }
}

/// Whether `w` is an irreducible S-word in canonical orientation.
pub fn is_sword(w: &Word) -> bool {
    match w {
        Word::Empty => false,
        Word::Gen(_) => true,
        Word::Pair { left, right, .. } => {
            if !is_sword(left) || !is_sword(right) {
                return false;
            }
            match left.len().cmp(&right.len()) {
                Ordering::Less => return false,
                Ordering::Equal if compare_words(left, right) != Ordering::Less => return false,
                _ => {}
            }
            if let Some((a1, a2)) = left.factors() {
                if **right == *a1 || **right == *a2 {
                    return false;
                }
            }
            true
        }
    }
}

/// Pairs two distinct, mutually non-cancelling S-words in canonical orientation.
fn assemble(v: &Word, w: &Word) -> Word {
    let (left, right) = match v.len().cmp(&w.len()) {
        Ordering::Greater => (v, w),
        Ordering::Less => (w, v),
        Ordering::Equal => {
            if compare_words(v, w) == Ordering::Less {
                (v, w)
            } else {
                (w, v)
            }
        }
    };
    Word::pair(left.clone(), right.clone())
}

/// Product in the free Steiner loop. Inputs must be S-words or empty.
pub fn multiply(v: &Word, w: &Word) -> Word {
    if v.is_empty() {
        return w.clone();
    }
    if w.is_empty() {
        return v.clone();
    }
    if v == w {
        return Word::Empty;
    }
    if let Some((w1, w2)) = w.factors() {
        if v == w1 {
            return w2.clone();
        }
        if v == w2 {
            return w1.clone();
        }
    }
    if let Some((v1, v2)) = v.factors() {
        if w == v1 {
            return v2.clone();
        }
        if w == v2 {
            return v1.clone();
        }
    }
    assemble(v, w)
}

/// Reduces an arbitrary word tree to its S-word value.
pub fn normalize(w: &Word) -> Word {
    match w {
        Word::Empty | Word::Gen(_) => w.clone(),
        Word::Pair { left, right, .. } => multiply(&normalize(left), &normalize(right)),
    }
}

/// The left-normed ascending product `(((x_i1 x_i2) x_i3) ... x_is)`.
pub fn subset_word(sigma: &IndexSubset) -> Word {
    sigma.members().fold(Word::Empty, |acc, i| {
        if acc.is_empty() {
            Word::Gen(i)
        } else {
            Word::pair(acc, Word::Gen(i))
        }
    })
}

/// Evaluates `w` in `target`, sending generator `x_i` to `images[i - 1]`.
pub fn evaluate<L: Loop>(w: &Word, images: &[L::Elem], target: &L) -> Result<L::Elem> {
    match w {
        Word::Empty => Ok(target.identity()),
        Word::Gen(i) => images
            .get(*i as usize - 1)
            .cloned()
            .ok_or(Error::MissingGenerator(*i)),
        Word::Pair { left, right, .. } => {
            let a = evaluate(left, images, target)?;
            let b = evaluate(right, images, target)?;
            Ok(target.mul(&a, &b))
        }
    }
}

/// All S-words over `x1..x_gens` of length at most `max_len`, grouped by
/// length and sorted by [`compare_words`].
pub fn swords_up_to(gens: u32, max_len: usize) -> Vec<Word> {
    let mut by_len: Vec<Vec<Word>> = vec![Vec::new(); max_len + 1];
    if max_len >= 1 {
        by_len[1] = (1..=gens).map(Word::Gen).collect();
    }
    for len in 2..=max_len {
        let mut out = Vec::new();
        for right_len in 1..=len / 2 {
            let left_len = len - right_len;
            for a in &by_len[left_len] {
                for b in &by_len[right_len] {
                    let candidate = Word::pair(a.clone(), b.clone());
                    if is_sword(&candidate) {
                        out.push(candidate);
                    }
                }
            }
        }
        out.sort();
        by_len[len] = out;
    }
    by_len.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare_words(&w("x1"), &w("x2")), Ordering::Less);
        assert_eq!(compare_words(&w("(x1 x2)"), &w("x3")), Ordering::Greater);
        assert_eq!(compare_words(&w("(x1 x2)"), &w("(x1 x3)")), Ordering::Less);
    }

    #[test]
    fn is_sword_examples() {
        assert!(!is_sword(&w("((x1 x2) x2)")));
        assert!(is_sword(&w("((x1 x2) x3)")));
        assert!(is_sword(&w("((x1 x2) (x1 x3))")));
        assert!(!is_sword(&w("(x2 x1)")));
        assert!(!is_sword(&w("(x1 x1)")));
        assert!(!is_sword(&w("(x3 (x1 x2))")));
        assert!(!is_sword(&w("e")));
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(multiply(&w("x1"), &w("x1")), Word::Empty);
        assert_eq!(multiply(&w("(x1 x2)"), &w("x2")), w("x1"));
        assert_eq!(multiply(&w("x1"), &w("x2")), w("(x1 x2)"));
        assert_eq!(multiply(&w("x2"), &w("x1")), w("(x1 x2)"));
        assert_eq!(multiply(&Word::Empty, &w("x3")), w("x3"));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&w("((x1 x2) x2)")), w("x1"));
        assert_eq!(normalize(&w("(x1 (x1 x2))")), w("x2"));
        assert_eq!(normalize(&w("((x1 x1) x3)")), w("x3"));
        let s = w("((x1 x2) (x1 x3))");
        assert_eq!(normalize(&s), s);
    }

    #[test]
    fn subset_word_examples() {
        let n = 3;
        assert_eq!(subset_word(&IndexSubset::new(n, [2]).unwrap()), w("x2"));
        assert_eq!(subset_word(&IndexSubset::new(n, [1, 3]).unwrap()), w("(x1 x3)"));
        assert_eq!(subset_word(&IndexSubset::new(n, [1, 2, 3]).unwrap()), w("((x1 x2) x3)"));
        assert_eq!(subset_word(&IndexSubset::empty(n)), Word::Empty);
        for bits in 1..8 {
            assert!(is_sword(&subset_word(&IndexSubset::from_bits(3, bits).unwrap())));
        }
    }

    #[test]
    fn render_and_parse() {
        let s = "((x1 x2) (x1 x3))";
        assert_eq!(w(s).to_string(), s);
        assert_eq!(Word::Empty.to_string(), "e");
        assert!(Word::parse("(x1 x2").is_err());
        assert!(Word::parse("x0").is_err());
        assert!(Word::parse("(x1 x2) x3").is_err());
        assert_eq!(w("  ( x1   x2 ) "), w("(x1 x2)"));
    }

    #[test]
    fn enumeration_counts_small() {
        let words = swords_up_to(3, 4);
        let count = |l| words.iter().filter(|x| x.len() == l).count();
        // hand count: 3 generators, 3 pairs, 3 of shape ((ab)c), 6 + 3 of length 4
        assert_eq!((count(1), count(2), count(3), count(4)), (3, 3, 3, 9));
        assert!(words.iter().all(is_sword));
    }

    #[test]
    fn order_is_strict_total_on_short_words() {
        let words = swords_up_to(3, 4);
        for a in &words {
            assert_eq!(compare_words(a, a), Ordering::Equal);
            for b in &words {
                let ab = compare_words(a, b);
                assert_eq!(ab, compare_words(b, a).reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
                for c in &words {
                    if ab == Ordering::Less && compare_words(b, c) == Ordering::Less {
                        assert_eq!(compare_words(a, c), Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn steiner_laws_and_closure_up_to_length_six() {
        let words = swords_up_to(3, 6);
        for v in &words {
            assert_eq!(multiply(v, v), Word::Empty);
            for u in &words {
                let p = multiply(v, u);
                assert_eq!(p, multiply(u, v));
                assert_eq!(multiply(v, &p), *u, "v={v} u={u}");
                assert!(p.is_empty() || is_sword(&p), "{v} * {u} = {p}");
            }
        }
    }
}
