//! Finite loops given by Cayley tables, central extensions built from
//! cocycles, and the structural analysis used on them.

pub mod analysis;
pub mod extension;
pub mod free;
pub mod iso;

use std::fmt;

use crate::error::{Error, Result};

pub use analysis::{
    associator_subloop, center, center_basis, central_subspaces, gaussian_binomial,
    nilpotency_class, normal_closure, quotient, CenterBasis, CentralSubspace, Nilpotency, Quotient,
};
pub use extension::{
    build_extension, build_extension_unchecked, extension_equivalence, shift_map, ExtElem,
    ExtensionEquivalence, ExtensionLoop,
};
pub use free::{aut_factorization, free_nilpotent2, unique16, AutFactorization, Unique16Report};
pub use iso::{
    automorphisms, enumerate_automorphisms, find_isomorphism, generating_set, AutReport, Automorphisms,
    GeneratorProgram, DEFAULT_AUT_MAX_ORDER,
};

/// Largest order accepted for a dense Cayley table.
pub const MAX_DENSE_ORDER: usize = 4096;

/// Anything with a neutral element, a multiplication and left division.
pub trait Loop {
    type Elem: Clone + Eq + fmt::Debug;

    fn identity(&self) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// The unique `x` with `a * x = b`.
    fn left_div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// The element `w` with `(xy)z = (x(yz))w`.
    fn associator(&self, x: &Self::Elem, y: &Self::Elem, z: &Self::Elem) -> Self::Elem {
        let lhs = self.mul(&self.mul(x, y), z);
        let rhs = self.mul(x, &self.mul(y, z));
        self.left_div(&rhs, &lhs)
    }
}

/// A loop on `{0, ..., N-1}` with identity `0`, stored as a dense table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLoop {
    order: usize,
    table: Vec<u16>,
    ldiv: Vec<u16>,
    rdiv: Vec<u16>,
    /// Elements labelled as generators `x1, x2, ...`, if known.
    generators: Vec<usize>,
}

impl FiniteLoop {
    /// Validates and wraps a row-major table: entry `i * N + j` is `i * j`.
    pub fn from_table(order: usize, entries: Vec<usize>) -> Result<Self> {
        if order == 0 || order > MAX_DENSE_ORDER {
            return Err(Error::out_of_range(
                "loop order",
                order as u64,
                format!("1..={MAX_DENSE_ORDER}"),
            ));
        }
        if entries.len() != order * order {
            return Err(Error::DimensionMismatch {
                expected: order * order,
                found: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|&e| e >= order) {
            return Err(Error::NotALoop(format!(
                "entry {} at ({}, {}) is not an element",
                entries[pos],
                pos / order,
                pos % order
            )));
        }
        for x in 0..order {
            if entries[x] != x || entries[x * order] != x {
                return Err(Error::NotALoop(format!("0 is not neutral for {x}")));
            }
        }
        let mut ldiv = vec![u16::MAX; order * order];
        let mut rdiv = vec![u16::MAX; order * order];
        let mut ldiv_seen = vec![false; order * order];
        let mut rdiv_seen = vec![false; order * order];
        for a in 0..order {
            for x in 0..order {
                let b = entries[a * order + x];
                // a * x = b
                if std::mem::replace(&mut ldiv_seen[a * order + b], true) {
                    return Err(Error::NotALoop(format!("row {a} repeats {b}")));
                }
                ldiv[a * order + b] = x as u16;
                if std::mem::replace(&mut rdiv_seen[b * order + x], true) {
                    return Err(Error::NotALoop(format!("column {x} repeats {b}")));
                }
                rdiv[b * order + x] = a as u16;
            }
        }
        Ok(FiniteLoop {
            order,
            table: entries.into_iter().map(|e| e as u16).collect(),
            ldiv,
            rdiv,
            generators: Vec::new(),
        })
    }

    /// Builds the table from a multiplication function.
    pub fn from_fn(order: usize, mut mul: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                entries.push(mul(a, b));
            }
        }
        Self::from_table(order, entries)
    }

    /// The elementary abelian 2-group of order `2^k` (multiplication is XOR).
    pub fn elementary_abelian(k: u32) -> Result<Self> {
        let order = 1usize << k;
        let mut l = Self::from_fn(order, |a, b| a ^ b)?;
        l.generators = (0..k).map(|i| 1usize << i).collect();
        Ok(l)
    }

    pub fn with_generators(mut self, generators: Vec<usize>) -> Result<Self> {
        if let Some(&g) = generators.iter().find(|&&g| g >= self.order) {
            return Err(Error::Precondition(format!("generator {g} is not an element")));
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    /// The unique `x` with `a * x = b`.
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.order + b] as usize
    }

    /// The unique `y` with `y * a = b`.
    #[inline]
    pub fn rdiv(&self, b: usize, a: usize) -> usize {
        self.rdiv[b * self.order + a] as usize
    }

    #[inline]
    pub fn assoc(&self, x: usize, y: usize, z: usize) -> usize {
        let lhs = self.op(self.op(x, y), z);
        let rhs = self.op(x, self.op(y, z));
        self.ldiv(rhs, lhs)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u16]> {
        self.table.chunks(self.order)
    }

    /// First triple with a nontrivial associator.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for x in 1..n {
            for y in 1..n {
                for z in 1..n {
                    if self.assoc(x, y, z) != 0 {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Smallest subloop containing `seeds`, as a sorted element list.
    pub fn subloop_generated(&self, seeds: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        let mut elems = vec![0usize];
        member[0] = true;
        for &s in seeds {
            if !member[s] {
                member[s] = true;
                elems.push(s);
            }
        }
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            let mut j = 0;
            while j <= i {
                let y = elems[j];
                for p in [self.op(x, y), self.op(y, x)] {
                    if !member[p] {
                        member[p] = true;
                        elems.push(p);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Whether `set` contains `0` and is closed under multiplication.
    pub fn is_subloop(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &s in set {
            if s >= self.order {
                return false;
            }
            member[s] = true;
        }
        member[0] && set.iter().all(|&a| set.iter().all(|&b| member[self.op(a, b)]))
    }

    /// Checks that `map` is a bijective homomorphism `self -> target`.
    pub fn is_isomorphism(&self, target: &FiniteLoop, map: &[usize]) -> bool {
        if map.len() != self.order || target.order != self.order {
            return false;
        }
        let mut hit = vec![false; self.order];
        for &m in map {
            if m >= self.order || std::mem::replace(&mut hit[m], true) {
                return false;
            }
        }
        (0..self.order)
            .all(|a| (0..self.order).all(|b| map[self.op(a, b)] == target.op(map[a], map[b])))
    }
}

impl Loop for FiniteLoop {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.op(*a, *b)
    }

    fn left_div(&self, a: &usize, b: &usize) -> usize {
        self.ldiv(*a, *b)
    }

    fn associator(&self, x: &usize, y: &usize, z: &usize) -> usize {
        self.assoc(*x, *y, *z)
    }
}

impl fmt::Debug for FiniteLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteLoop(order {})", self.order)
    }
}

/// The associator `(x, y, z)` in a dense loop.
pub fn associator(l: &FiniteLoop, x: usize, y: usize, z: usize) -> usize {
    l.assoc(x, y, z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SteinerLaw {
    Commutative,
    ExponentTwo,
    Inverse,
}

impl fmt::Display for SteinerLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SteinerLaw::Commutative => "xy=yx",
            SteinerLaw::ExponentTwo => "xx=e",
            SteinerLaw::Inverse => "x(xy)=y",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SteinerWitness {
    pub law: SteinerLaw,
    pub x: usize,
    pub y: usize,
}

impl fmt::Display for SteinerWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at x={}, y={}", self.law, self.x, self.y)
    }
}

/// First counterexample to the Steiner laws, scanning `x` then `y`.
pub fn steiner_violation(l: &FiniteLoop) -> Option<SteinerWitness> {
    for x in 0..l.order() {
        if l.op(x, x) != 0 {
            return Some(SteinerWitness {
                law: SteinerLaw::ExponentTwo,
                x,
                y: x,
            });
        }
        for y in 0..l.order() {
            if l.op(x, y) != l.op(y, x) {
                return Some(SteinerWitness {
                    law: SteinerLaw::Commutative,
                    x,
                    y,
                });
            }
            if l.op(x, l.op(x, y)) != y {
                return Some(SteinerWitness {
                    law: SteinerLaw::Inverse,
                    x,
                    y,
                });
            }
        }
    }
    None
}

pub fn is_steiner(l: &FiniteLoop) -> bool {
    steiner_violation(l).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> FiniteLoop {
        FiniteLoop::elementary_abelian(2).unwrap()
    }

    #[test]
    fn klein_is_steiner_and_associative() {
        let k = klein();
        assert!(is_steiner(&k));
        assert!(k.is_associative());
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    assert_eq!(associator(&k, x, y, z), 0);
                }
            }
        }
    }

    #[test]
    fn table_validation() {
        assert!(FiniteLoop::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(FiniteLoop::from_table(2, vec![1, 0, 0, 1]).is_err());
        assert!(FiniteLoop::from_table(2, vec![0, 1, 1]).is_err());
        assert!(FiniteLoop::from_table(2, vec![0, 1, 1, 2]).is_err());
        assert!(FiniteLoop::from_table(0, vec![]).is_err());
    }

    #[test]
    fn cyclic_group_is_not_steiner() {
        let z3 = FiniteLoop::from_fn(3, |a, b| (a + b) % 3).unwrap();
        let w = steiner_violation(&z3).unwrap();
        assert_eq!(w.law, SteinerLaw::ExponentTwo);
        assert_eq!(w.x, 1);
    }

    #[test]
    fn inverse_law_witness() {
        // commutative loop of exponent two on 6 elements that is not Steiner
        let t = [
            [0, 1, 2, 3, 4, 5],
            [1, 0, 3, 4, 5, 2],
            [2, 3, 0, 5, 1, 4],
            [3, 4, 5, 0, 2, 1],
            [4, 5, 1, 2, 0, 3],
            [5, 2, 4, 1, 3, 0],
        ];
        let l = FiniteLoop::from_table(6, t.iter().flatten().copied().collect()).unwrap();
        let w = steiner_violation(&l).unwrap();
        assert_eq!(w.law, SteinerLaw::Inverse);
        assert_ne!(l.op(w.x, l.op(w.x, w.y)), w.y);
    }

    #[test]
    fn divisions_invert_multiplication() {
        let z5 = FiniteLoop::from_fn(5, |a, b| (a + b) % 5).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(z5.op(a, z5.ldiv(a, b)), b);
                assert_eq!(z5.op(z5.rdiv(b, a), a), b);
            }
        }
    }

    #[test]
    fn subloop_generation() {
        let e8 = FiniteLoop::elementary_abelian(3).unwrap();
        assert_eq!(e8.subloop_generated(&[1, 2]), vec![0, 1, 2, 3]);
        assert_eq!(e8.subloop_generated(&[]), vec![0]);
        assert!(e8.is_subloop(&[0, 4]));
        assert!(!e8.is_subloop(&[0, 1, 2]));
    }
}
