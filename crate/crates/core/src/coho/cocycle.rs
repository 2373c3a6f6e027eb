//! Symmetric pairings `V x V -> Z` over `V = F2^n`, `Z = F2^m`: cocycle
//! validation, coboundaries and the splitting `Z^2 = Z^2_0 + B^2`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vector, IndexSubset};

/// Largest `n` for which a cocycle may be stored as a dense table.
pub const MAX_DENSE_N: u32 = 8;

/// Number of pairs sampled when validating a rule-backed cocycle.
pub const DEFAULT_SAMPLES: usize = 10_000;

/// Seed used for sampled validation unless the caller picks one.
pub const DEFAULT_SEED: u64 = 0x5EED_2016;

type Rule = dyn Fn(&IndexSubset, &IndexSubset) -> F2Vector + Send + Sync;

#[derive(Clone)]
enum Backing {
    /// One entry per unordered pair, see [`pair_index`].
    Dense(Arc<Vec<F2Vector>>),
    Rule(Arc<Rule>),
}

/// A pairing `f: V x V -> Z` with `f(a, b) = f(b, a)` for dense backing.
///
/// The type does not enforce the cocycle identities: invalid pairings are
/// representable so that [`Cocycle::violations`] can report them. Use
/// [`Cocycle::checked`] to reject them up front.
#[derive(Clone)]
pub struct Cocycle {
    n: u32,
    m: usize,
    backing: Backing,
}

/// Storage slot for the unordered pair `{a, b}` (numeric values).
pub fn pair_index(a: u64, b: u64) -> usize {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    (hi * (hi + 1) / 2 + lo) as usize
}

fn dense_len(n: u32) -> usize {
    let size = 1u64 << n;
    (size * (size + 1) / 2) as usize
}

fn check_dense_n(n: u32) -> Result<()> {
    if n > MAX_DENSE_N {
        return Err(Error::out_of_range("n", n, format!("0..={MAX_DENSE_N} for dense cocycles")));
    }
    Ok(())
}

impl Cocycle {
    pub fn zero(n: u32, m: usize) -> Result<Self> {
        check_dense_n(n)?;
        Ok(Cocycle {
            n,
            m,
            backing: Backing::Dense(Arc::new(vec![F2Vector::zeros(m); dense_len(n)])),
        })
    }

    /// Dense pairing; `f` is evaluated once per unordered pair `{a, b}` with
    /// `a >= b` numerically.
    pub fn from_fn(
        n: u32,
        m: usize,
        mut f: impl FnMut(&IndexSubset, &IndexSubset) -> F2Vector,
    ) -> Result<Self> {
        check_dense_n(n)?;
        let mut values = Vec::with_capacity(dense_len(n));
        for a in 0..1u64 << n {
            let sa = IndexSubset::from_bits_unchecked(n, a);
            for b in 0..=a {
                let v = f(&sa, &IndexSubset::from_bits_unchecked(n, b));
                if v.len() != m {
                    return Err(Error::DimensionMismatch {
                        expected: m,
                        found: v.len(),
                    });
                }
                values.push(v);
            }
        }
        Ok(Cocycle {
            n,
            m,
            backing: Backing::Dense(Arc::new(values)),
        })
    }

    /// Rule-backed pairing for dimensions too large to tabulate.
    pub fn from_rule(
        n: u32,
        m: usize,
        rule: impl Fn(&IndexSubset, &IndexSubset) -> F2Vector + Send + Sync + 'static,
    ) -> Self {
        Cocycle {
            n,
            m,
            backing: Backing::Rule(Arc::new(rule)),
        }
    }

    /// Rejects pairings that violate any cocycle identity.
    pub fn checked(self) -> Result<Self> {
        match self.violations().into_iter().next() {
            None => Ok(self),
            Some(v) => Err(Error::InvalidCocycle(v.to_string())),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.backing, Backing::Dense(_))
    }

    pub fn value(&self, a: &IndexSubset, b: &IndexSubset) -> F2Vector {
        assert!(
            a.ambient() == self.n && b.ambient() == self.n,
            "subset ambient does not match cocycle dimension {}",
            self.n
        );
        match &self.backing {
            Backing::Dense(t) => t[pair_index(a.bits(), b.bits())].clone(),
            Backing::Rule(r) => r(a, b),
        }
    }

    /// Value on numeric characteristic vectors.
    pub fn value_bits(&self, a: u64, b: u64) -> F2Vector {
        match &self.backing {
            Backing::Dense(t) => t[pair_index(a, b)].clone(),
            Backing::Rule(r) => r(
                &IndexSubset::from_bits_unchecked(self.n, a),
                &IndexSubset::from_bits_unchecked(self.n, b),
            ),
        }
    }

    pub fn try_value(&self, a: &IndexSubset, b: &IndexSubset) -> Result<F2Vector> {
        for s in [a, b] {
            if s.ambient() != self.n {
                return Err(Error::AmbientMismatch {
                    left: self.n,
                    right: s.ambient(),
                });
            }
        }
        Ok(self.value(a, b))
    }

    /// Sets the value on the unordered pair `{a, b}`.
    pub fn set(&mut self, a: &IndexSubset, b: &IndexSubset, v: F2Vector) -> Result<()> {
        if v.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: v.len(),
            });
        }
        match &mut self.backing {
            Backing::Dense(t) => {
                Arc::make_mut(t)[pair_index(a.bits(), b.bits())] = v;
                Ok(())
            }
            Backing::Rule(_) => Err(Error::RuleBacked),
        }
    }

    pub fn to_dense(&self) -> Result<Cocycle> {
        match &self.backing {
            Backing::Dense(_) => Ok(self.clone()),
            Backing::Rule(r) => {
                let r = Arc::clone(r);
                Cocycle::from_fn(self.n, self.m, |a, b| r(a, b))
            }
        }
    }

    fn check_compatible(&self, other: &Cocycle) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        Ok(())
    }

    /// Pointwise sum. Dense if both summands are dense.
    pub fn add(&self, other: &Cocycle) -> Result<Cocycle> {
        self.check_compatible(other)?;
        match (&self.backing, &other.backing) {
            (Backing::Dense(a), Backing::Dense(b)) => Ok(Cocycle {
                n: self.n,
                m: self.m,
                backing: Backing::Dense(Arc::new(a.iter().zip(b.iter()).map(|(x, y)| x + y).collect())),
            }),
            _ => {
                let (f, g) = (self.clone(), other.clone());
                Ok(Cocycle::from_rule(self.n, self.m, move |a, b| {
                    &f.value(a, b) + &g.value(a, b)
                }))
            }
        }
    }

    /// Composes with the linear map `Z -> F2^k` whose rows are `lambda`'s rows.
    pub fn map_linear(&self, lambda: &F2Matrix) -> Result<Cocycle> {
        if lambda.col_count() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: lambda.col_count(),
            });
        }
        let k = lambda.row_count();
        let f = self.clone();
        let lambda = lambda.clone();
        if self.is_dense() {
            Cocycle::from_fn(self.n, k, |a, b| {
                lambda.apply(&f.value(a, b)).expect("dimensions checked")
            })
        } else {
            Ok(Cocycle::from_rule(self.n, k, move |a, b| {
                lambda.apply(&f.value(a, b)).expect("dimensions checked")
            }))
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.backing {
            Backing::Dense(t) => t.iter().all(F2Vector::is_zero),
            Backing::Rule(_) => self
                .to_dense()
                .map(|d| d.is_zero())
                .unwrap_or(false),
        }
    }

    /// Nonzero entries `(a, b, value)` with `a >= b`, in canonical order.
    pub fn nonzero_entries(&self) -> Result<Vec<(IndexSubset, IndexSubset, F2Vector)>> {
        let dense = self.to_dense()?;
        let mut out = Vec::new();
        for a in 0..1u64 << self.n {
            for b in 0..=a {
                let v = dense.value_bits(a, b);
                if !v.is_zero() {
                    out.push((
                        IndexSubset::from_bits_unchecked(self.n, a),
                        IndexSubset::from_bits_unchecked(self.n, b),
                        v,
                    ));
                }
            }
        }
        Ok(out)
    }

    /// All violated identities. Dense pairings are checked on every pair;
    /// rule-backed ones on [`DEFAULT_SAMPLES`] pairs drawn with [`DEFAULT_SEED`].
    pub fn violations(&self) -> Vec<Violation> {
        match &self.backing {
            Backing::Dense(_) => self.violations_exhaustive(),
            Backing::Rule(_) => self.violations_sampled(DEFAULT_SAMPLES, DEFAULT_SEED),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    fn violations_exhaustive(&self) -> Vec<Violation> {
        let size = 1u64 << self.n;
        let mut out = Vec::new();
        for a in 0..size {
            if !self.value_bits(0, a).is_zero() {
                out.push(Violation::new(CocycleLaw::EmptyArgument, self.n, 0, a));
            }
            if !self.value_bits(a, a).is_zero() {
                out.push(Violation::new(CocycleLaw::Diagonal, self.n, a, a));
            }
        }
        if let Backing::Rule(_) = self.backing {
            for a in 0..size {
                for b in 0..a {
                    if self.value_bits(a, b) != self.value_bits(b, a) {
                        out.push(Violation::new(CocycleLaw::Symmetry, self.n, a, b));
                    }
                }
            }
        }
        for a in 0..size {
            for b in 0..size {
                if self.value_bits(a ^ b, b) != self.value_bits(a, b) {
                    out.push(Violation::new(CocycleLaw::Translation, self.n, a, b));
                }
            }
        }
        out
    }

    /// Checks every identity on `samples` random pairs.
    pub fn violations_sampled(&self, samples: usize, seed: u64) -> Vec<Violation> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mask = if self.n >= 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut out = Vec::new();
        for _ in 0..samples {
            let a = rng.gen::<u64>() & mask;
            let b = rng.gen::<u64>() & mask;
            if !self.value_bits(0, a).is_zero() {
                out.push(Violation::new(CocycleLaw::EmptyArgument, self.n, 0, a));
            }
            if !self.value_bits(a, a).is_zero() {
                out.push(Violation::new(CocycleLaw::Diagonal, self.n, a, a));
            }
            let ab = self.value_bits(a, b);
            if ab != self.value_bits(b, a) {
                out.push(Violation::new(CocycleLaw::Symmetry, self.n, a, b));
            }
            if self.value_bits(a ^ b, b) != ab {
                out.push(Violation::new(CocycleLaw::Translation, self.n, a, b));
            }
        }
        out
    }

    /// First pair `(σ, {i})` with `i > max(σ)` on which `f` is nonzero.
    pub fn reduced_violation(&self) -> Option<(IndexSubset, IndexSubset)> {
        for sigma in 0..1u64 << self.n {
            let start = 64 - sigma.leading_zeros();
            for i in start..self.n {
                if !self.value_bits(sigma, 1u64 << i).is_zero() {
                    return Some((
                        IndexSubset::from_bits_unchecked(self.n, sigma),
                        IndexSubset::from_bits_unchecked(self.n, 1u64 << i),
                    ));
                }
            }
        }
        None
    }

    /// Membership in `Z^2_0`: `f(σ, {i}) = 0` whenever `i > max(σ)`.
    pub fn is_reduced(&self) -> bool {
        self.reduced_violation().is_none()
    }
}

impl PartialEq for Cocycle {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n || self.m != other.m {
            return false;
        }
        let size = 1u64 << self.n;
        (0..size).all(|a| (0..=a).all(|b| self.value_bits(a, b) == other.value_bits(a, b)))
    }
}

impl fmt::Debug for Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Cocycle {{ n: {}, m: {}, {} }}",
            self.n,
            self.m,
            if self.is_dense() { "dense" } else { "rule" }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CocycleLaw {
    /// `f(0, v) = 0`
    EmptyArgument,
    /// `f(v, v) = 0`
    Diagonal,
    /// `f(a, b) = f(b, a)`
    Symmetry,
    /// `f(a + b, b) = f(a, b)`
    Translation,
}

impl fmt::Display for CocycleLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CocycleLaw::EmptyArgument => "f(0,v)=0",
            CocycleLaw::Diagonal => "f(v,v)=0",
            CocycleLaw::Symmetry => "f(a,b)=f(b,a)",
            CocycleLaw::Translation => "f(a+b,b)=f(a,b)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: CocycleLaw,
    pub witness: (IndexSubset, IndexSubset),
}

impl Violation {
    fn new(law: CocycleLaw, n: u32, a: u64, b: u64) -> Self {
        Violation {
            law,
            witness: (
                IndexSubset::from_bits_unchecked(n, a),
                IndexSubset::from_bits_unchecked(n, b),
            ),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({}, {})", self.law, self.witness.0, self.witness.1)
    }
}

/// Violations of the cocycle identities; empty means `f` is a cocycle.
pub fn validate_cocycle(f: &Cocycle) -> Vec<Violation> {
    f.violations()
}

/// A function `g: V -> Z` with `g(∅) = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    n: u32,
    m: usize,
    values: Vec<F2Vector>,
}

impl Cochain {
    pub fn zero(n: u32, m: usize) -> Result<Self> {
        check_dense_n(n)?;
        Ok(Cochain {
            n,
            m,
            values: vec![F2Vector::zeros(m); 1 << n],
        })
    }

    /// `values[k]` is `g` at the subset with characteristic vector `k`.
    pub fn new(n: u32, m: usize, values: Vec<F2Vector>) -> Result<Self> {
        check_dense_n(n)?;
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| v.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: v.len(),
            });
        }
        if !values[0].is_zero() {
            return Err(Error::CochainNotNormalized);
        }
        Ok(Cochain { n, m, values })
    }

    pub fn from_fn(n: u32, m: usize, mut g: impl FnMut(&IndexSubset) -> F2Vector) -> Result<Self> {
        check_dense_n(n)?;
        let values = (0..1u64 << n)
            .map(|bits| g(&IndexSubset::from_bits_unchecked(n, bits)))
            .collect();
        Self::new(n, m, values)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self, sigma: &IndexSubset) -> &F2Vector {
        &self.values[sigma.bits() as usize]
    }

    pub fn value_bits(&self, bits: u64) -> &F2Vector {
        &self.values[bits as usize]
    }

    pub fn values(&self) -> &[F2Vector] {
        &self.values
    }
}

/// `δ(g)(a, b) = g(a + b) + g(a) + g(b)`.
pub fn coboundary(g: &Cochain) -> Cocycle {
    Cocycle::from_fn(g.n, g.m, |a, b| {
        let mut v = g.value(&a.xor(b)).clone();
        v += g.value(a);
        v += g.value(b);
        v
    })
    .expect("cochain dimension already checked")
}

/// `f = reduced + δ(shift)` with `reduced` in `Z^2_0`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub reduced: Cocycle,
    pub shift: Cochain,
}

/// Splits a dense cocycle along `Z^2 = Z^2_0 + B^2`.
///
/// With `σ = {i_1 < ... < i_k}` and `σ^s = {i_1, ..., i_(s-1)}`, the shift is
/// `g(σ) = Σ_{s=2..k} f(σ^s, {i_s})`, zero on singletons and on `∅`.
pub fn decompose(f: &Cocycle) -> Result<Decomposition> {
    if !f.is_dense() {
        return Err(Error::RuleBacked);
    }
    if let Some(v) = f.violations().into_iter().next() {
        return Err(Error::InvalidCocycle(v.to_string()));
    }
    let shift = Cochain::from_fn(f.n, f.m, |sigma| {
        let mut acc = F2Vector::zeros(f.m);
        let mut prefix = 0u64;
        for (s, i) in sigma.members().enumerate() {
            let bit = 1u64 << (i - 1);
            if s > 0 {
                acc += &f.value_bits(prefix, bit);
            }
            prefix |= bit;
        }
        acc
    })?;
    let reduced = f.add(&coboundary(&shift))?;
    Ok(Decomposition { reduced, shift })
}

/// Whether `f1` and `f2` differ by a coboundary.
pub fn same_h2_class(f1: &Cocycle, f2: &Cocycle) -> Result<bool> {
    f1.check_compatible(f2)?;
    let sum = f1.to_dense()?.add(&f2.to_dense()?)?;
    Ok(decompose(&sum)?.reduced.is_zero())
}

/// A cochain `g` with `δ(g) = f`, found by solving the linear system over F2
/// coordinate by coordinate; `None` when `f` is not a coboundary.
pub fn coboundary_preimage(f: &Cocycle) -> Result<Option<Cochain>> {
    let f = f.to_dense()?;
    let size = 1u64 << f.n;
    let unknowns = (size - 1) as usize;
    // unknown k is g at the subset with characteristic vector k + 1
    let mut system = F2Matrix::new(unknowns);
    let mut pairs = Vec::new();
    for a in 1..size {
        for b in 1..a {
            let mut row = F2Vector::zeros(unknowns);
            row.flip((a ^ b) as usize - 1);
            row.flip(a as usize - 1);
            row.flip(b as usize - 1);
            system.push_row(row)?;
            pairs.push((a, b));
        }
    }
    let mut values = vec![F2Vector::zeros(f.m); size as usize];
    for coord in 0..f.m {
        let rhs = F2Vector::from_bits(
            &pairs
                .iter()
                .map(|&(a, b)| f.value_bits(a, b).get(coord))
                .collect::<Vec<_>>(),
        );
        let Some(x) = system.solve(&rhs)? else {
            return Ok(None);
        };
        for k in x.ones() {
            values[k + 1].set(coord, true);
        }
    }
    // diagonal and empty-argument entries are not covered by the system
    if !f.is_valid() {
        return Ok(None);
    }
    Ok(Some(Cochain::new(f.n, f.m, values)?))
}

/// Linear constraints on the dense table of a scalar pairing (one unknown
/// per unordered pair) that cut out `Z^2`, optionally also `Z^2_0`.
fn constraint_matrix(n: u32, reduced: bool) -> F2Matrix {
    let size = 1u64 << n;
    let cols = dense_len(n);
    let mut m = F2Matrix::new(cols);
    let mut push = |idx: &[usize]| {
        let mut row = F2Vector::zeros(cols);
        for &i in idx {
            row.flip(i);
        }
        if !row.is_zero() {
            m.push_row(row).expect("fixed width");
        }
    };
    for a in 0..size {
        push(&[pair_index(0, a)]);
        push(&[pair_index(a, a)]);
    }
    for a in 0..size {
        for b in 0..size {
            push(&[pair_index(a ^ b, b), pair_index(a, b)]);
        }
    }
    if reduced {
        for sigma in 0..size {
            for i in (64 - sigma.leading_zeros())..n {
                push(&[pair_index(sigma, 1 << i)]);
            }
        }
    }
    m
}

fn scalar_cocycle(n: u32, table: &F2Vector) -> Cocycle {
    Cocycle::from_fn(n, 1, |a, b| {
        F2Vector::from_bits(&[table.get(pair_index(a.bits(), b.bits()))])
    })
    .expect("n checked by caller")
}

/// A basis of `Z^2(V, F2)`, computed as the null space of the cocycle identities.
pub fn cocycle_space_basis(n: u32) -> Result<Vec<Cocycle>> {
    check_dense_n(n)?;
    Ok(constraint_matrix(n, false)
        .nullspace()
        .iter()
        .map(|v| scalar_cocycle(n, v))
        .collect())
}

/// A basis of `Z^2_0(V, F2)`.
pub fn reduced_cocycle_space_basis(n: u32) -> Result<Vec<Cocycle>> {
    check_dense_n(n)?;
    Ok(constraint_matrix(n, true)
        .nullspace()
        .iter()
        .map(|v| scalar_cocycle(n, v))
        .collect())
}

/// Flattens a scalar dense cocycle into one vector over all unordered pairs.
pub fn scalar_table(f: &Cocycle) -> Result<F2Vector> {
    if f.m != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f.m,
        });
    }
    let d = f.to_dense()?;
    let mut out = F2Vector::zeros(dense_len(f.n));
    for a in 0..1u64 << f.n {
        for b in 0..=a {
            if d.value_bits(a, b).get(0) {
                out.set(pair_index(a, b), true);
            }
        }
    }
    Ok(out)
}

/// `dim B^2(V, F2)`: rank of the coboundaries of the point-indicator cochains.
pub fn coboundary_space_rank(n: u32) -> Result<usize> {
    check_dense_n(n)?;
    let mut rows = Vec::new();
    for s in 1..1u64 << n {
        let g = Cochain::from_fn(n, 1, |x| F2Vector::from_bits(&[x.bits() == s]))?;
        rows.push(scalar_table(&coboundary(&g))?);
    }
    Ok(F2Matrix::from_rows(rows)?.rank())
}

/// A uniformly random element of the span of `basis` (all of width `m`).
pub fn random_combination(basis: &[Cocycle], rng: &mut impl Rng) -> Result<Cocycle> {
    let first = basis
        .first()
        .ok_or_else(|| Error::Precondition("empty basis".into()))?;
    let mut acc = Cocycle::zero(first.n, first.m)?;
    for b in basis {
        if rng.gen::<bool>() {
            acc = acc.add(b)?;
        }
    }
    Ok(acc)
}

/// A random cochain with `g(∅) = 0`.
pub fn random_cochain(n: u32, m: usize, rng: &mut impl Rng) -> Result<Cochain> {
    Cochain::from_fn(n, m, |s| {
        if s.is_empty() {
            F2Vector::zeros(m)
        } else {
            F2Vector::from_bits(&(0..m).map(|_| rng.gen::<bool>()).collect::<Vec<_>>())
        }
    })
}
