//! Central extensions `L_f` on `V x Z` with
//! `(v1, z1)(v2, z2) = (v1 + v2, f(v1, v2) + z1 + z2)`.
//!
//! Elements of a dense extension are numbered `(σ, z) ↦ σ·2^m + z`, where
//! `σ` and `z` are read as binary numbers (bit `i-1` for point `i`, bit `k`
//! for coordinate `k`).

use std::fmt;

use crate::coho::cocycle::{decompose, Cochain, Cocycle};
use crate::error::{Error, Result};
use crate::f2::{F2Vector, IndexSubset};
use crate::loops::{FiniteLoop, Loop, MAX_DENSE_ORDER};

/// An element `(v, z)` of `V x Z`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElem {
    pub v: IndexSubset,
    pub z: F2Vector,
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v, self.z)
    }
}

/// `L_f`, always available through [`Loop`]; small ones also carry a table.
#[derive(Clone)]
pub struct ExtensionLoop {
    f: Cocycle,
    dense: Option<FiniteLoop>,
}

impl ExtensionLoop {
    pub fn cocycle(&self) -> &Cocycle {
        &self.f
    }

    pub fn n(&self) -> u32 {
        self.f.n()
    }

    pub fn m(&self) -> usize {
        self.f.m()
    }

    /// `log2` of the order.
    pub fn order_log2(&self) -> u64 {
        self.f.n() as u64 + self.f.m() as u64
    }

    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    /// The Cayley table, or [`Error::RuleBacked`] for large extensions.
    pub fn table(&self) -> Result<&FiniteLoop> {
        self.dense.as_ref().ok_or(Error::RuleBacked)
    }

    pub fn into_table(self) -> Result<FiniteLoop> {
        self.dense.ok_or(Error::RuleBacked)
    }

    /// The generator `x_i = ({i}, 0)`.
    pub fn generator(&self, i: u32) -> Result<ExtElem> {
        Ok(ExtElem {
            v: IndexSubset::singleton(self.n(), i)?,
            z: F2Vector::zeros(self.m()),
        })
    }

    pub fn element(&self, v: IndexSubset, z: F2Vector) -> Result<ExtElem> {
        if v.ambient() != self.n() {
            return Err(Error::AmbientMismatch {
                left: self.n(),
                right: v.ambient(),
            });
        }
        if z.len() != self.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                found: z.len(),
            });
        }
        Ok(ExtElem { v, z })
    }

    /// Table index of `e`; `None` when the indices do not fit a machine word.
    pub fn encode(&self, e: &ExtElem) -> Option<usize> {
        if self.order_log2() >= usize::BITS as u64 {
            return None;
        }
        Some(((e.v.bits() as usize) << self.m()) | e.z.to_u64()? as usize)
    }

    pub fn decode(&self, index: usize) -> Result<ExtElem> {
        if self.order_log2() >= usize::BITS as u64 || index >> self.order_log2() != 0 {
            return Err(Error::out_of_range(
                "element index",
                index as u64,
                format!("below 2^{}", self.order_log2()),
            ));
        }
        let m = self.m();
        Ok(ExtElem {
            v: IndexSubset::from_bits(self.n(), (index >> m) as u64)?,
            z: F2Vector::from_u64(m, (index & ((1 << m) - 1)) as u64),
        })
    }
}

impl Loop for ExtensionLoop {
    type Elem = ExtElem;

    fn identity(&self) -> ExtElem {
        ExtElem {
            v: IndexSubset::empty(self.n()),
            z: F2Vector::zeros(self.m()),
        }
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let mut z = self.f.value(&a.v, &b.v);
        z += &a.z;
        z += &b.z;
        ExtElem {
            v: a.v.xor(&b.v),
            z,
        }
    }

    fn left_div(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let v = a.v.xor(&b.v);
        let mut z = self.f.value(&a.v, &v);
        z += &a.z;
        z += &b.z;
        ExtElem { v, z }
    }
}

impl fmt::Debug for ExtensionLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ExtensionLoop(n={}, m={}, {})",
            self.n(),
            self.m(),
            if self.is_dense() { "dense" } else { "rule" }
        )
    }
}

/// Validates `f` and builds `L_f`, with a table when `2^(n+m)` is at most
/// [`MAX_DENSE_ORDER`].
pub fn build_extension(f: &Cocycle) -> Result<ExtensionLoop> {
    if let Some(v) = f.violations().into_iter().next() {
        return Err(Error::InvalidCocycle(v.to_string()));
    }
    build_extension_unchecked(f)
}

/// Builds `L_f` without checking the cocycle identities. The table is still
/// validated as a loop, so a pairing with `f(∅, v) ≠ 0` is rejected.
pub fn build_extension_unchecked(f: &Cocycle) -> Result<ExtensionLoop> {
    let log2 = f.n() as u64 + f.m() as u64;
    let dense = if log2 < usize::BITS as u64 && (1usize << log2) <= MAX_DENSE_ORDER {
        Some(dense_table(f)?)
    } else {
        None
    };
    Ok(ExtensionLoop { f: f.clone(), dense })
}

fn dense_table(f: &Cocycle) -> Result<FiniteLoop> {
    let (n, m) = (f.n(), f.m());
    let size_v = 1usize << n;
    let size_z = 1usize << m;
    let order = size_v * size_z;
    let mut fv = vec![0usize; size_v * size_v];
    for a in 0..size_v {
        for b in 0..size_v {
            fv[a * size_v + b] = f
                .value_bits(a as u64, b as u64)
                .to_u64()
                .expect("m is small for dense extensions") as usize;
        }
    }
    let mut entries = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, z1) = (x >> m, x & (size_z - 1));
        for y in 0..order {
            let (b, z2) = (y >> m, y & (size_z - 1));
            entries.push(((a ^ b) << m) | (fv[a * size_v + b] ^ z1 ^ z2));
        }
    }
    let generators = (0..n).map(|i| (1usize << i) << m).collect();
    FiniteLoop::from_table(order, entries)?.with_generators(generators)
}

/// The table permutation `(v, z) ↦ (v, z + g(v))` on a dense extension.
pub fn shift_map(g: &Cochain) -> Result<Vec<usize>> {
    let (n, m) = (g.n(), g.m());
    if n as u64 + m as u64 >= usize::BITS as u64 || (1usize << (n as usize + m)) > MAX_DENSE_ORDER {
        return Err(Error::out_of_range(
            "extension order",
            1u64 << (n as u64 + m as u64).min(63),
            format!("at most {MAX_DENSE_ORDER}"),
        ));
    }
    let order = 1usize << (n as usize + m);
    Ok((0..order)
        .map(|x| {
            let shift = g.value_bits((x >> m) as u64).to_u64().unwrap_or(0) as usize;
            x ^ shift
        })
        .collect())
}

/// The equivalence `L_{f1} → L_{f2}`, `(v, z) ↦ (v, z + g(v))`, with
/// `f1 + f2 = δ(g)`.
#[derive(Clone, Debug)]
pub struct ExtensionEquivalence {
    pub shift: Cochain,
    /// The map on table indices; `None` for rule-backed extensions.
    pub map: Option<Vec<usize>>,
}

/// Equivalence of the extensions defined by `f1` and `f2`, or `None` when
/// they are not cohomologous. The returned map has been verified.
pub fn extension_equivalence(f1: &Cocycle, f2: &Cocycle) -> Result<Option<ExtensionEquivalence>> {
    if f1.n() != f2.n() {
        return Err(Error::AmbientMismatch {
            left: f1.n(),
            right: f2.n(),
        });
    }
    if f1.m() != f2.m() {
        return Err(Error::DimensionMismatch {
            expected: f1.m(),
            found: f2.m(),
        });
    }
    let sum = f1.to_dense()?.add(&f2.to_dense()?)?;
    let d = decompose(&sum)?;
    if !d.reduced.is_zero() {
        return Ok(None);
    }
    let l1 = build_extension(f1)?;
    let l2 = build_extension(f2)?;
    let map = match (l1.table(), l2.table()) {
        (Ok(t1), Ok(t2)) => {
            let map = shift_map(&d.shift)?;
            if !t1.is_isomorphism(t2, &map) {
                return Err(Error::Verification(
                    "shift map is not multiplicative".into(),
                ));
            }
            Some(map)
        }
        _ => {
            let g = &d.shift;
            for a in 0..1u64 << f1.n() {
                for b in 0..=a {
                    let mut lhs = f1.value_bits(a, b);
                    lhs += &f2.value_bits(a, b);
                    let mut rhs = g.value_bits(a ^ b).clone();
                    rhs += g.value_bits(a);
                    rhs += g.value_bits(b);
                    if lhs != rhs {
                        return Err(Error::Verification(format!(
                            "shift map fails at ({a}, {b})"
                        )));
                    }
                }
            }
            None
        }
    };
    Ok(Some(ExtensionEquivalence {
        shift: d.shift,
        map,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coho::cocycle::{coboundary, random_cochain};
    use crate::coho::universal::{associator_formula, universal_cocycle};
    use crate::loops::is_steiner;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_extension_is_klein() {
        let f = Cocycle::zero(1, 1).unwrap();
        let l = build_extension(&f).unwrap();
        let t = l.table().unwrap();
        assert_eq!(t, &FiniteLoop::elementary_abelian(2).unwrap().with_generators(vec![2]).unwrap());
    }

    #[test]
    fn universal_extension_order_64() {
        let l = build_extension(&universal_cocycle(3).unwrap()).unwrap();
        let t = l.table().unwrap();
        assert_eq!(t.order(), 64);
        assert!(is_steiner(t));
        assert!(!t.is_associative());
        assert_eq!(t.generators(), &[8, 16, 32]);
    }

    #[test]
    fn encode_decode_round_trip() {
        let l = build_extension(&universal_cocycle(3).unwrap()).unwrap();
        for i in 0..64 {
            let e = l.decode(i).unwrap();
            assert_eq!(l.encode(&e), Some(i));
        }
        assert!(l.decode(64).is_err());
    }

    #[test]
    fn rule_and_table_agree() {
        let l = build_extension(&universal_cocycle(3).unwrap()).unwrap();
        let t = l.table().unwrap();
        for a in 0..64 {
            for b in 0..64 {
                let (ea, eb) = (l.decode(a).unwrap(), l.decode(b).unwrap());
                assert_eq!(l.encode(&l.mul(&ea, &eb)), Some(t.op(a, b)));
                assert_eq!(l.encode(&l.left_div(&ea, &eb)), Some(t.ldiv(a, b)));
            }
        }
    }

    #[test]
    fn associator_matches_formula() {
        let f = universal_cocycle(3).unwrap();
        let l = build_extension(&f).unwrap();
        let all: Vec<_> = (0..8).map(|b| IndexSubset::from_bits(3, b).unwrap()).collect();
        for s in &all {
            for u in &all {
                for t in &all {
                    let lift = |v: &IndexSubset| l.element(*v, F2Vector::zeros(3)).unwrap();
                    let got = l.associator(&lift(s), &lift(u), &lift(t));
                    assert!(got.v.is_empty());
                    assert_eq!(got.z, associator_formula(&f, s, u, t).unwrap());
                }
            }
        }
    }

    #[test]
    fn large_extension_is_rule_backed() {
        let l = build_extension(&universal_cocycle(4).unwrap()).unwrap();
        assert!(!l.is_dense());
        assert!(matches!(l.table(), Err(Error::RuleBacked)));
        let x1 = l.generator(1).unwrap();
        assert_eq!(l.mul(&x1, &x1), l.identity());
    }

    #[test]
    fn invalid_cocycle_rejected() {
        let mut f = Cocycle::zero(2, 1).unwrap();
        let a = IndexSubset::new(2, [1]).unwrap();
        f.set(&a, &a, F2Vector::unit(1, 0)).unwrap();
        assert!(matches!(build_extension(&f), Err(Error::InvalidCocycle(_))));
        let l = build_extension_unchecked(&f).unwrap();
        assert!(!is_steiner(l.table().unwrap()));
    }

    #[test]
    fn equivalence_with_coboundary_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = universal_cocycle(3).unwrap();
        let g = random_cochain(3, 3, &mut rng).unwrap();
        let f2 = f.add(&coboundary(&g)).unwrap();
        let eq = extension_equivalence(&f, &f2).unwrap().unwrap();
        assert!(eq.map.is_some());
        let same = extension_equivalence(&f, &f).unwrap().unwrap();
        let identity: Vec<usize> = (0..64).collect();
        assert_eq!(same.map.unwrap(), identity);
        assert!(extension_equivalence(&Cocycle::zero(3, 3).unwrap(), &f).unwrap().is_none());
    }
}
