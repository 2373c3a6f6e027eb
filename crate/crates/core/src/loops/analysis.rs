//! Center, associator subloop, quotients, nilpotency class and central
//! subspaces of dense loops.

use std::fmt;

use crate::error::{Error, Result};
use crate::f2::F2Vector;
use crate::loops::FiniteLoop;

/// Iteration cap for [`nilpotency_class`].
pub const NILPOTENCY_CAP: u32 = 20;

/// Elements that commute and associate with everything, ascending.
pub fn center(l: &FiniteLoop) -> Vec<usize> {
    let n = l.order();
    let mut central = vec![true; n];
    for x in 0..n {
        for y in 0..n {
            if l.op(x, y) != l.op(y, x) {
                central[x] = false;
                central[y] = false;
            }
            for z in 0..n {
                if l.assoc(x, y, z) != 0 {
                    central[x] = false;
                    central[y] = false;
                    central[z] = false;
                }
            }
        }
    }
    (0..n).filter(|&a| central[a]).collect()
}

/// Smallest normal subloop containing `seeds`.
///
/// Closes under multiplication and under the inner mappings
/// `T_x(h) = x\(hx)`, `L_{x,y}(h) = (yx)\(y(xh))` and
/// `R_{x,y}(h) = ((hx)y)/(xy)`, which generate the inner mapping group.
pub fn normal_closure(l: &FiniteLoop, seeds: &[usize]) -> Vec<usize> {
    let n = l.order();
    let mut member = vec![false; n];
    let mut elems = Vec::new();
    let mut queue = Vec::new();
    let add = |e: usize, member: &mut Vec<bool>, elems: &mut Vec<usize>, queue: &mut Vec<usize>| {
        if !member[e] {
            member[e] = true;
            elems.push(e);
            queue.push(e);
        }
    };
    add(0, &mut member, &mut elems, &mut queue);
    for &s in seeds {
        add(s, &mut member, &mut elems, &mut queue);
    }
    while let Some(h) = queue.pop() {
        let mut i = 0;
        while i < elems.len() {
            let k = elems[i];
            add(l.op(h, k), &mut member, &mut elems, &mut queue);
            add(l.op(k, h), &mut member, &mut elems, &mut queue);
            i += 1;
        }
        for x in 0..n {
            add(l.ldiv(x, l.op(h, x)), &mut member, &mut elems, &mut queue);
            for y in 0..n {
                let lxy = l.ldiv(l.op(y, x), l.op(y, l.op(x, h)));
                add(lxy, &mut member, &mut elems, &mut queue);
                let rxy = l.rdiv(l.op(l.op(h, x), y), l.op(x, y));
                add(rxy, &mut member, &mut elems, &mut queue);
            }
        }
    }
    elems.sort_unstable();
    elems
}

/// The smallest normal subloop containing every associator.
pub fn associator_subloop(l: &FiniteLoop) -> Vec<usize> {
    let n = l.order();
    let mut seen = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                seen[l.assoc(x, y, z)] = true;
            }
        }
    }
    let seeds: Vec<usize> = (1..n).filter(|&a| seen[a]).collect();
    normal_closure(l, &seeds)
}

/// `L/H` together with the projection `L → L/H`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub quotient: FiniteLoop,
    /// `projection[x]` is the coset of `x`.
    pub projection: Vec<usize>,
    /// Cosets in quotient order; coset `0` is `H`.
    pub cosets: Vec<Vec<usize>>,
}

/// The factor loop by a normal subloop `h`. Cosets are numbered by their
/// least element.
pub fn quotient(l: &FiniteLoop, h: &[usize]) -> Result<Quotient> {
    let n = l.order();
    if !l.is_subloop(h) {
        return Err(Error::NotNormal("the set is not a subloop".into()));
    }
    let mut hs: Vec<usize> = h.to_vec();
    hs.sort_unstable();
    hs.dedup();
    let mut projection = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if projection[x] != usize::MAX {
            continue;
        }
        let id = cosets.len();
        let mut coset: Vec<usize> = hs.iter().map(|&k| l.op(x, k)).collect();
        coset.sort_unstable();
        for &y in &coset {
            if projection[y] != usize::MAX {
                return Err(Error::NotNormal(format!(
                    "cosets of {x} and {y} overlap without coinciding"
                )));
            }
            projection[y] = id;
        }
        cosets.push(coset);
    }
    let q = cosets.len();
    let mut entries = vec![0usize; q * q];
    for i in 0..q {
        for j in 0..q {
            entries[i * q + j] = projection[l.op(cosets[i][0], cosets[j][0])];
        }
    }
    for x in 0..n {
        for y in 0..n {
            if projection[l.op(x, y)] != entries[projection[x] * q + projection[y]] {
                return Err(Error::NotNormal(format!(
                    "multiplication of cosets is not well defined at ({x}, {y})"
                )));
            }
        }
    }
    let mut gens: Vec<usize> = l.generators().iter().map(|&g| projection[g]).collect();
    gens.retain(|&g| g != 0);
    gens.dedup();
    let quotient = FiniteLoop::from_table(q, entries)?.with_generators(gens)?;
    Ok(Quotient {
        quotient,
        projection,
        cosets,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    Class(u32),
    NotNilpotent,
}

impl fmt::Display for Nilpotency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nilpotency::Class(c) => write!(f, "{c}"),
            Nilpotency::NotNilpotent => f.write_str("not_nilpotent"),
        }
    }
}

/// Length of the upper central series: factor by the center until the
/// trivial loop is reached.
pub fn nilpotency_class(l: &FiniteLoop) -> Nilpotency {
    let mut current = l.clone();
    for step in 0..NILPOTENCY_CAP {
        if current.order() == 1 {
            return Nilpotency::Class(step);
        }
        let z = center(&current);
        if z.len() == 1 {
            return Nilpotency::NotNilpotent;
        }
        current = match quotient(&current, &z) {
            Ok(q) => q.quotient,
            Err(_) => return Nilpotency::NotNilpotent,
        };
    }
    Nilpotency::NotNilpotent
}

/// `[d choose k]_2`, the number of `k`-dimensional subspaces of `F2^d`.
pub fn gaussian_binomial(d: u32, k: u32) -> u64 {
    if k > d {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (1u128 << (d - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    (num / den) as u64
}

/// The center as an `F2`-vector space with a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterBasis {
    /// Basis elements, chosen greedily as least elements outside the span.
    pub basis: Vec<usize>,
    /// `by_coords[c]` is the element with coordinate vector `c` (as a number).
    pub by_coords: Vec<usize>,
}

impl CenterBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, coords: &F2Vector) -> Result<usize> {
        if coords.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: coords.len(),
            });
        }
        Ok(self.by_coords[coords.to_u64().unwrap_or(0) as usize])
    }

    /// The subspace spanned by `vectors` (coordinates in this basis).
    pub fn subspace(&self, vectors: &[F2Vector]) -> Result<CentralSubspace> {
        let mut rows = Vec::new();
        for v in vectors {
            if v.len() != self.dimension() {
                return Err(Error::DimensionMismatch {
                    expected: self.dimension(),
                    found: v.len(),
                });
            }
            rows.push(v.to_u64().unwrap_or(0));
        }
        let reduced = rref(&rows, self.dimension());
        if reduced.len() != rows.len() {
            return Err(Error::Precondition("subspace basis is not independent".into()));
        }
        Ok(self.subspace_from_rref(reduced))
    }

    fn subspace_from_rref(&self, rows: Vec<u64>) -> CentralSubspace {
        let d = self.dimension();
        let mut elements: Vec<usize> = (0u64..1 << rows.len())
            .map(|mask| {
                let c = rows
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .fold(0u64, |acc, (_, r)| acc ^ r);
                self.by_coords[c as usize]
            })
            .collect();
        elements.sort_unstable();
        CentralSubspace {
            ambient: d,
            basis: rows.iter().map(|&r| F2Vector::from_u64(d, r)).collect(),
            elements,
        }
    }
}

/// A subspace of the center: basis in reduced echelon form and the sorted
/// element set it spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSubspace {
    pub ambient: usize,
    pub basis: Vec<F2Vector>,
    pub elements: Vec<usize>,
}

impl CentralSubspace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Basis as comma-separated bit strings, e.g. `110,011`.
    pub fn basis_string(&self) -> String {
        self.basis
            .iter()
            .map(|v| v.to_bit_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Reduced echelon form of bit rows (bit `k` is coordinate `k`); pivots are
/// the lowest set bits.
fn rref(rows: &[u64], d: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for &r in rows {
        let mut r = r;
        for &p in &out {
            let pivot = p.trailing_zeros();
            if r >> pivot & 1 == 1 {
                r ^= p;
            }
        }
        if r == 0 {
            continue;
        }
        let pivot = r.trailing_zeros();
        for p in out.iter_mut() {
            if *p >> pivot & 1 == 1 {
                *p ^= r;
            }
        }
        out.push(r);
    }
    debug_assert!(out.iter().all(|&r| r >> d == 0));
    out.sort_by_key(|r| r.trailing_zeros());
    out
}

/// A basis of the center, which must be an elementary abelian 2-group.
pub fn center_basis(l: &FiniteLoop) -> Result<CenterBasis> {
    let z = center(l);
    if let Some(&bad) = z.iter().find(|&&a| l.op(a, a) != 0) {
        return Err(Error::Precondition(format!(
            "center is not elementary abelian: {bad} has order > 2"
        )));
    }
    let mut by_coords = vec![0usize];
    let mut basis = Vec::new();
    let mut in_span = vec![false; l.order()];
    in_span[0] = true;
    for &a in &z {
        if in_span[a] {
            continue;
        }
        basis.push(a);
        let extra: Vec<usize> = by_coords.iter().map(|&e| l.op(e, a)).collect();
        for &e in &extra {
            in_span[e] = true;
        }
        by_coords.extend(extra);
    }
    Ok(CenterBasis { basis, by_coords })
}

/// All `k`-dimensional subspaces of the center, ordered by their sorted
/// element lists.
pub fn central_subspaces(l: &FiniteLoop, k: usize) -> Result<Vec<CentralSubspace>> {
    let cb = center_basis(l)?;
    let d = cb.dimension();
    if k > d {
        return Err(Error::Precondition(format!(
            "center has dimension {d} < {k}"
        )));
    }
    let mut out = Vec::new();
    for pivots in combinations(d, k) {
        let free: Vec<Vec<usize>> = pivots
            .iter()
            .map(|&p| (p + 1..d).filter(|c| !pivots.contains(c)).collect())
            .collect();
        let total: usize = free.iter().map(Vec::len).sum();
        for fill in 0u64..1 << total {
            let mut bit = 0;
            let rows: Vec<u64> = pivots
                .iter()
                .zip(&free)
                .map(|(&p, cols)| {
                    let mut r = 1u64 << p;
                    for &c in cols {
                        if fill >> bit & 1 == 1 {
                            r |= 1 << c;
                        }
                        bit += 1;
                    }
                    r
                })
                .collect();
            out.push(cb.subspace_from_rref(rows));
        }
    }
    out.sort_by(|a, b| a.elements.cmp(&b.elements));
    debug_assert_eq!(out.len() as u64, gaussian_binomial(d as u32, k as u32));
    Ok(out)
}

fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coho::universal::universal_cocycle;
    use crate::loops::extension::build_extension;

    fn free64() -> FiniteLoop {
        build_extension(&universal_cocycle(3).unwrap())
            .unwrap()
            .into_table()
            .unwrap()
    }

    #[test]
    fn abelian_group_is_its_own_center() {
        let e8 = FiniteLoop::elementary_abelian(3).unwrap();
        assert_eq!(center(&e8), (0..8).collect::<Vec<_>>());
        assert_eq!(associator_subloop(&e8), vec![0]);
        assert_eq!(nilpotency_class(&e8), Nilpotency::Class(1));
    }

    #[test]
    fn free_loop_structure() {
        let l = free64();
        let z = center(&l);
        assert_eq!(z, (0..8).collect::<Vec<_>>());
        assert_eq!(associator_subloop(&l), z);
        assert_eq!(nilpotency_class(&l), Nilpotency::Class(2));
    }

    #[test]
    fn quotients() {
        let l = free64();
        let trivial = quotient(&l, &[0]).unwrap();
        assert_eq!(trivial.quotient.order(), 64);
        assert!(trivial.quotient.rows().eq(l.rows()));
        let all: Vec<usize> = (0..64).collect();
        assert_eq!(quotient(&l, &all).unwrap().quotient.order(), 1);
        let q = quotient(&l, &[0, 1, 2, 3]).unwrap();
        assert_eq!(q.quotient.order(), 16);
        for x in 0..64 {
            for y in 0..64 {
                assert_eq!(q.projection[l.op(x, y)], q.quotient.op(q.projection[x], q.projection[y]));
            }
        }
        assert!(matches!(quotient(&l, &[0, 8]), Err(Error::NotNormal(_))));
        assert!(matches!(quotient(&l, &[0, 1, 2]), Err(Error::NotNormal(_))));
    }

    #[test]
    fn normal_closure_of_generator() {
        let l = free64();
        // x1 is not normal: its conjugates pick up associators
        let c = normal_closure(&l, &[8]);
        assert!(c.len() > 2);
        assert!(c.contains(&8));
        assert!(quotient(&l, &c).is_ok());
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(3, 2), 7);
        assert_eq!(gaussian_binomial(3, 0), 1);
        assert_eq!(gaussian_binomial(3, 3), 1);
        assert_eq!(gaussian_binomial(4, 2), 35);
        assert_eq!(gaussian_binomial(2, 3), 0);
    }

    #[test]
    fn central_subspace_counts() {
        let l = free64();
        for (k, count) in [(0, 1), (1, 7), (2, 7), (3, 1)] {
            let subs = central_subspaces(&l, k).unwrap();
            assert_eq!(subs.len(), count);
            for s in &subs {
                assert_eq!(s.elements.len(), 1 << k);
                assert!(l.is_subloop(&s.elements));
            }
        }
        assert!(central_subspaces(&l, 4).is_err());
        let e16 = FiniteLoop::elementary_abelian(4).unwrap();
        assert_eq!(central_subspaces(&e16, 2).unwrap().len(), 35);
    }

    #[test]
    fn subspace_from_vectors() {
        let l = free64();
        let cb = center_basis(&l).unwrap();
        assert_eq!(cb.basis, vec![1, 2, 4]);
        let s = cb
            .subspace(&[F2Vector::parse("110").unwrap(), F2Vector::parse("011").unwrap()])
            .unwrap();
        assert_eq!(s.elements, vec![0, 3, 5, 6]);
        assert_eq!(s.basis_string(), "101,011");
        assert!(cb
            .subspace(&[F2Vector::parse("110").unwrap(), F2Vector::parse("110").unwrap()])
            .is_err());
    }
}
