//! The universal reduced cocycle, associators of central extensions and the
//! associator basis of the class-two quotient of the free Steiner loop.

use std::sync::Arc;

use crate::coho::cocycle::Cocycle;
use crate::coho::pairs::{regular_member, sr_count_formula, strongly_regular_pairs, SubsetPair};
use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vector, IndexSubset};

/// Largest `n` for which [`universal_cocycle`] builds a dense table.
pub const UNIVERSAL_DENSE_MAX_N: u32 = 6;

/// Largest `n` accepted by [`verify_theorem_basis`].
pub const THEOREM_MAX_N: u32 = 6;

/// Coordinate lookup for the universal cocycle: strongly regular pairs in
/// canonical order, coordinate `k` belonging to `pairs[k]`.
#[derive(Clone, Debug)]
pub struct UniversalCoordinates {
    n: u32,
    pairs: Arc<Vec<SubsetPair>>,
}

impl UniversalCoordinates {
    pub fn new(n: u32) -> Result<Self> {
        Ok(UniversalCoordinates {
            n,
            pairs: Arc::new(strongly_regular_pairs(n)?),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[SubsetPair] {
        &self.pairs
    }

    /// Coordinate of the line through `a` and `b`, if that line carries one.
    pub fn coordinate(&self, a: &IndexSubset, b: &IndexSubset) -> Option<usize> {
        if a.is_empty() || b.is_empty() || a == b {
            return None;
        }
        let member = regular_member(*a, *b);
        self.pairs.binary_search(&member).ok()
    }

    fn value(&self, a: &IndexSubset, b: &IndexSubset) -> F2Vector {
        match self.coordinate(a, b) {
            Some(k) => F2Vector::unit(self.dimension(), k),
            None => F2Vector::zeros(self.dimension()),
        }
    }
}

/// The cocycle with values in `F2^d(n)` sending each pair to the unit vector
/// of the strongly regular pair on its line, and to zero when the line's
/// regular pair is not strongly regular (or the pair is degenerate).
///
/// Dense up to [`UNIVERSAL_DENSE_MAX_N`], rule-backed beyond.
pub fn universal_cocycle(n: u32) -> Result<Cocycle> {
    let coords = UniversalCoordinates::new(n)?;
    let m = coords.dimension();
    debug_assert_eq!(m as u128, sr_count_formula(n));
    if n <= UNIVERSAL_DENSE_MAX_N {
        Cocycle::from_fn(n, m, |a, b| coords.value(a, b))
    } else {
        Ok(Cocycle::from_rule(n, m, move |a, b| coords.value(a, b)))
    }
}

/// `(σ, μ, τ) = f(σ, μ) + f(μ, τ) + f(σ + μ, τ) + f(σ, μ + τ)`: the associator
/// of `(σ, 0), (μ, 0), (τ, 0)` in the extension defined by `f`.
pub fn associator_formula(
    f: &Cocycle,
    sigma: &IndexSubset,
    mu: &IndexSubset,
    tau: &IndexSubset,
) -> Result<F2Vector> {
    for s in [sigma, mu, tau] {
        if s.ambient() != f.n() {
            return Err(Error::AmbientMismatch {
                left: f.n(),
                right: s.ambient(),
            });
        }
    }
    let mut v = f.value(sigma, mu);
    v += &f.value(mu, tau);
    v += &f.value(&sigma.xor(mu), tau);
    v += &f.value(sigma, &mu.xor(tau));
    Ok(v)
}

/// One associator `(x_i, middle, last)` in the basis, with the pair it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisTriple {
    pub pair: SubsetPair,
    /// The singleton `{i}`.
    pub point: IndexSubset,
    pub middle: IndexSubset,
    pub last: IndexSubset,
}

/// One associator triple per strongly regular pair `(σ, τ)`:
///
/// * `σ ∩ τ = ∅`: `i = max(σ ∪ τ)`; with `A` the member containing `i` and
///   `B` the other one, the triple is `({i}, A \ {i}, B)`;
/// * otherwise `i = max(σ ∩ τ)` and the triple is `({i}, σ, τ)`.
pub fn theorem_basis(n: u32) -> Result<Vec<BasisTriple>> {
    let pairs = strongly_regular_pairs(n)?;
    Ok(pairs
        .into_iter()
        .map(|pair| {
            let (sigma, tau) = (pair.first, pair.second);
            let meet = sigma.bits() & tau.bits();
            if meet == 0 {
                let i = 64 - (sigma.bits() | tau.bits()).leading_zeros();
                let (holder, other) = if sigma.contains(i) { (sigma, tau) } else { (tau, sigma) };
                BasisTriple {
                    pair,
                    point: IndexSubset::from_bits_unchecked(n, 1 << (i - 1)),
                    middle: holder.without(i),
                    last: other,
                }
            } else {
                let i = 64 - meet.leading_zeros();
                BasisTriple {
                    pair,
                    point: IndexSubset::from_bits_unchecked(n, 1 << (i - 1)),
                    middle: sigma,
                    last: tau,
                }
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremBasisReport {
    pub n: u32,
    /// `d(n)` from the closed formula.
    pub dimension: usize,
    pub triples: usize,
    pub rank: usize,
    /// Indices (into the triple list) of a maximal independent subset;
    /// filled only on a rank deficit.
    pub independent: Vec<usize>,
}

impl TheoremBasisReport {
    pub fn is_basis(&self) -> bool {
        self.rank == self.dimension && self.triples == self.dimension
    }

    pub fn deficit(&self) -> usize {
        self.dimension - self.rank
    }
}

/// Evaluates the associators of [`theorem_basis`] in the universal cocycle
/// and checks they form a basis of `F2^d(n)`.
pub fn verify_theorem_basis(n: u32) -> Result<TheoremBasisReport> {
    if n == 0 || n > THEOREM_MAX_N {
        return Err(Error::out_of_range("n", n, format!("1..={THEOREM_MAX_N}")));
    }
    let f = universal_cocycle(n)?;
    let triples = theorem_basis(n)?;
    let mut matrix = F2Matrix::new(f.m());
    for t in &triples {
        matrix.push_row(associator_formula(&f, &t.point, &t.middle, &t.last)?)?;
    }
    let rank = matrix.rank();
    let dimension = sr_count_formula(n) as usize;
    let independent = if rank < dimension {
        matrix.independent_rows()
    } else {
        Vec::new()
    };
    Ok(TheoremBasisReport {
        n,
        dimension,
        triples: triples.len(),
        rank,
        independent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coho::cocycle::{coboundary, random_cochain, reduced_cocycle_space_basis, validate_cocycle};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(n: u32, m: &[u32]) -> IndexSubset {
        IndexSubset::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn universal_small_cases() {
        let f2 = universal_cocycle(2).unwrap();
        assert_eq!(f2.m(), 0);
        let f3 = universal_cocycle(3).unwrap();
        assert_eq!(f3.m(), 3);
        let v = f3.value(&s(3, &[1, 3]), &s(3, &[2]));
        assert_eq!(v.count_ones(), 1);
        assert!(f3.value(&s(3, &[1, 2]), &s(3, &[3])).is_zero());
    }

    #[test]
    fn universal_is_valid_and_reduced() {
        for n in 1..=5 {
            let f = universal_cocycle(n).unwrap();
            assert!(validate_cocycle(&f).is_empty(), "n={n}");
            assert!(f.is_reduced(), "n={n}");
        }
        let big = universal_cocycle(7).unwrap();
        assert!(!big.is_dense());
        assert!(validate_cocycle(&big).is_empty());
    }

    #[test]
    fn every_reduced_scalar_cocycle_factors_uniquely_through_universal() {
        let u = universal_cocycle(3).unwrap();
        let basis = reduced_cocycle_space_basis(3).unwrap();
        let mut targets = vec![Cocycle::zero(3, 1).unwrap()];
        for mask in 1u32..1 << basis.len() {
            let mut f = Cocycle::zero(3, 1).unwrap();
            for (k, b) in basis.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    f = f.add(b).unwrap();
                }
            }
            targets.push(f);
        }
        for f in &targets {
            let hits = (0u64..8)
                .filter(|&lam| {
                    let row = F2Matrix::from_rows(vec![F2Vector::from_u64(3, lam)]).unwrap();
                    u.map_linear(&row).unwrap() == *f
                })
                .count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn associator_with_repeated_argument() {
        let f = universal_cocycle(4).unwrap();
        let (a, b) = (s(4, &[1, 3]), s(4, &[2, 4]));
        let got = associator_formula(&f, &a, &a, &b).unwrap();
        assert_eq!(got, &f.value(&a, &b) + &f.value(&a, &a.xor(&b)));
    }

    #[test]
    fn coboundary_associators_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_cochain(3, 2, &mut rng).unwrap();
        let f = coboundary(&g);
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    let (x, y, z) = (
                        IndexSubset::from_bits(3, a).unwrap(),
                        IndexSubset::from_bits(3, b).unwrap(),
                        IndexSubset::from_bits(3, c).unwrap(),
                    );
                    assert!(associator_formula(&f, &x, &y, &z).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn basis_triples() {
        assert!(theorem_basis(1).unwrap().is_empty());
        let three = theorem_basis(3).unwrap();
        let t = three
            .iter()
            .find(|t| t.pair == SubsetPair::oriented(s(3, &[1, 3]), s(3, &[2])))
            .unwrap();
        assert_eq!((t.point, t.middle, t.last), (s(3, &[3]), s(3, &[1]), s(3, &[2])));
        assert_eq!(theorem_basis(4).unwrap().len(), 24);
    }

    #[test]
    fn basis_rank_small() {
        for (n, d) in [(2, 0), (3, 3), (4, 24)] {
            let r = verify_theorem_basis(n).unwrap();
            assert_eq!(r.dimension, d);
            assert_eq!(r.rank, d);
            assert!(r.is_basis());
        }
        assert!(verify_theorem_basis(7).is_err());
    }
}
