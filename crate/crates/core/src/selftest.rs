//! The acceptance checks, runnable from the library, the CLI and the test
//! suite. Each check is deterministic for a given seed.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coho::cocycle::{
    coboundary, coboundary_preimage, cocycle_space_basis, coboundary_space_rank, decompose,
    random_cochain, reduced_cocycle_space_basis, same_h2_class, validate_cocycle, Cochain, Cocycle,
};
use crate::coho::pairs::{
    classify_pair, regular_count_formula, regular_pair_count, sr_count_formula,
    strongly_regular_pairs,
};
use crate::coho::universal::{associator_formula, universal_cocycle, verify_theorem_basis};
use crate::error::{Error, Result};
use crate::f2::{F2Vector, IndexSubset};
use crate::loops::{
    associator_subloop, aut_factorization, build_extension, build_extension_unchecked, center,
    enumerate_automorphisms, extension_equivalence, find_isomorphism, free_nilpotent2, is_steiner,
    nilpotency_class, shift_map, unique16, FiniteLoop, Loop, Nilpotency,
};
use crate::report::RunReport;
use crate::sts::{loop_from_sts, sts_from_loop, TripleSystem};
use crate::sword::{evaluate, multiply, swords_up_to, Word};

pub const DEFAULT_SELFTEST_SEED: u64 = 20_160_403;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelfTestConfig {
    pub seed: u64,
    /// Also run the larger optional cases (theorem basis for n = 5, 6).
    pub extended: bool,
}

impl Default for SelfTestConfig {
    fn default() -> Self {
        SelfTestConfig {
            seed: DEFAULT_SELFTEST_SEED,
            extended: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    /// Measured values, or the failing witness.
    pub detail: String,
    pub elapsed: Duration,
    /// Time budget for the check.
    pub budget: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {:<28} {:>8.3}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }

    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }
}

pub const CRITERIA: [(u32, &str, u64); 12] = [
    (1, "pair_counts", 10),
    (2, "trichotomy", 30),
    (3, "cocycle_decomposition", 5),
    (4, "theorem_basis", 5),
    (5, "axiom_equivalence", 60),
    (6, "associator_coherence", 30),
    (7, "free_loop_n3", 10),
    (8, "unique_s16", 60),
    (9, "extension_equivalence", 60),
    (10, "automorphisms", 600),
    (11, "sts_bridge", 5),
    (12, "sword_laws", 30),
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(msg()))
    }
}

/// Runs one criterion by number.
pub fn run_criterion(id: u32, cfg: &SelfTestConfig) -> Outcome {
    let (_, name, budget) = CRITERIA
        .iter()
        .copied()
        .find(|c| c.0 == id)
        .unwrap_or((id, "unknown", 0));
    let start = Instant::now();
    let result = match id {
        1 => pair_counts(),
        2 => trichotomy(),
        3 => cocycle_decomposition(),
        4 => theorem_basis_rank(cfg),
        5 => axiom_equivalence(cfg.seed),
        6 => associator_coherence(cfg.seed),
        7 => free_loop_n3(),
        8 => unique_s16(),
        9 => cohomologous_equivalence(cfg.seed),
        10 => automorphism_counts(),
        11 => sts_bridge(),
        12 => sword_laws(),
        _ => Err(Error::Precondition(format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    Outcome {
        id,
        name,
        passed,
        detail,
        elapsed,
        budget: Duration::from_secs(budget),
    }
}

pub fn run_all(cfg: &SelfTestConfig) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| run_criterion(c.0, cfg)).collect()
}

/// Report with one `criterion.<id>.<name>=pass|fail` line per check.
pub fn report(outcomes: &[Outcome], cfg: &SelfTestConfig) -> RunReport {
    let mut r = RunReport::new("selftest");
    r.input("seed", cfg.seed).input("extended", cfg.extended);
    for o in outcomes {
        r.result(
            format!("criterion.{}.{}", o.id, o.name),
            if o.passed { "pass" } else { "fail" },
        );
        r.result(format!("criterion.{}.detail", o.id), &o.detail);
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    r.result("passed", passed).result("total", outcomes.len());
    r.status = if passed == outcomes.len() { 0 } else { 1 };
    r.elapsed = outcomes.iter().map(|o| o.elapsed).sum();
    r
}

fn pair_counts() -> Result<String> {
    let mut d = Vec::new();
    for n in 1..=8u32 {
        let sr = strongly_regular_pairs(n)?.len() as u128;
        let expected = sr_count_formula(n);
        ensure(sr == expected, || format!("n={n}: {sr} strongly regular pairs, formula {expected}"))?;
        let reg = regular_pair_count(n)? as u128;
        let expected = regular_count_formula(n);
        ensure(reg == expected, || format!("n={n}: {reg} regular pairs, formula {expected}"))?;
        d.push(sr.to_string());
    }
    Ok(format!("d(1..8) = {}", d.join(",")))
}

fn trichotomy() -> Result<String> {
    let mut lines = 0usize;
    for n in 1..=6u32 {
        let size = 1u64 << n;
        for a in 1..size {
            for b in a + 1..size {
                let c = a ^ b;
                if c < b {
                    continue;
                }
                // line {a < b < c}
                let s = |x| IndexSubset::from_bits(n, x);
                let pairs = [(a, b), (a, c), (b, c)];
                let mut regular = 0;
                for (x, y) in pairs {
                    if classify_pair(&s(x)?, &s(y)?)?.is_regular() {
                        regular += 1;
                    }
                }
                ensure(regular == 1, || {
                    format!("n={n}: line {{{a}, {b}, {c}}} has {regular} regular pairs")
                })?;
                lines += 1;
            }
        }
    }
    Ok(format!("{lines} lines checked for n<=6"))
}

fn span(basis: &[Cocycle]) -> Result<Vec<Cocycle>> {
    let first = basis
        .first()
        .ok_or_else(|| Error::Precondition("empty basis".into()))?;
    let mut out = vec![Cocycle::zero(first.n(), first.m())?];
    for b in basis {
        let more: Vec<Cocycle> = out.iter().map(|f| f.add(b)).collect::<Result<_>>()?;
        out.extend(more);
    }
    Ok(out)
}

fn cocycle_decomposition() -> Result<String> {
    let z2 = cocycle_space_basis(3)?;
    let b2 = coboundary_space_rank(3)?;
    let z20 = reduced_cocycle_space_basis(3)?;
    ensure(z2.len() == 7 && b2 == 4 && z20.len() == 3, || {
        format!("dims Z2={} B2={} Z20={}", z2.len(), b2, z20.len())
    })?;
    let all = span(&z2)?;
    ensure(all.len() == 128, || format!("span has {} elements", all.len()))?;
    let mut reduced_parts = HashSet::new();
    for f in &all {
        let d = decompose(f)?;
        ensure(d.reduced.is_reduced(), || format!("reduced part of {f:?} is not in Z2_0"))?;
        ensure(d.reduced.add(&coboundary(&d.shift))? == *f, || {
            format!("reconstruction fails for {f:?}")
        })?;
        reduced_parts.insert(crate::coho::cocycle::scalar_table(&d.reduced)?);
    }
    // uniqueness: the only reduced coboundary is zero
    for f0 in span(&z20)? {
        if !f0.is_zero() {
            ensure(coboundary_preimage(&f0)?.is_none(), || {
                format!("nonzero reduced cocycle {f0:?} is a coboundary")
            })?;
        }
    }
    ensure(reduced_parts.len() == 8, || {
        format!("{} distinct reduced parts", reduced_parts.len())
    })?;
    Ok("dim Z2=7 B2=4 Z2_0=3; 128 cocycles decomposed uniquely".into())
}

fn theorem_basis_rank(cfg: &SelfTestConfig) -> Result<String> {
    let top = if cfg.extended { 6 } else { 4 };
    let mut ranks = Vec::new();
    for n in 2..=top {
        let r = verify_theorem_basis(n)?;
        ensure(r.is_basis(), || {
            format!("n={n}: rank {} of {} (independent rows {:?})", r.rank, r.dimension, r.independent)
        })?;
        ranks.push(format!("{n}:{}", r.rank));
    }
    Ok(format!("rank = d(n) for n={}", ranks.join(" ")))
}

/// Stacks scalar pairings into one with `m = parts.len()`.
fn stack(n: u32, parts: &[Cocycle]) -> Result<Cocycle> {
    Cocycle::from_fn(n, parts.len(), |a, b| {
        F2Vector::from_bits(&parts.iter().map(|p| p.value(a, b).get(0)).collect::<Vec<_>>())
    })
}

/// All symmetric scalar pairings at `n` that vanish on `∅`, as bitmasks over
/// the unordered nonempty slots.
fn pairing_slots(n: u32) -> Vec<(u64, u64)> {
    let size = 1u64 << n;
    let mut slots = Vec::new();
    for a in 1..size {
        for b in 1..=a {
            slots.push((a, b));
        }
    }
    slots
}

fn pairing_from_mask(n: u32, slots: &[(u64, u64)], mask: &[bool]) -> Result<Cocycle> {
    let mut f = Cocycle::zero(n, 1)?;
    for (k, &(a, b)) in slots.iter().enumerate() {
        if mask[k] {
            f.set(
                &IndexSubset::from_bits(n, a)?,
                &IndexSubset::from_bits(n, b)?,
                F2Vector::unit(1, 0),
            )?;
        }
    }
    Ok(f)
}

fn equivalence_holds(f: &Cocycle) -> Result<bool> {
    let valid = validate_cocycle(f).is_empty();
    let steiner = is_steiner(build_extension_unchecked(f)?.table()?);
    Ok(valid == steiner)
}

fn axiom_equivalence(seed: u64) -> Result<String> {
    let mut checked = 0usize;
    let mut valid_seen = 0usize;
    let mut check = |f: &Cocycle| -> Result<()> {
        ensure(equivalence_holds(f)?, || format!("counterexample {f:?}"))?;
        checked += 1;
        if f.is_valid() {
            valid_seen += 1;
        }
        Ok(())
    };
    // every pairing for n <= 2, m <= 2
    for n in 1..=2u32 {
        let slots = pairing_slots(n);
        let count = 1usize << slots.len();
        let scalars: Vec<Cocycle> = (0..count)
            .map(|mask| {
                let bits: Vec<bool> = (0..slots.len()).map(|k| mask >> k & 1 == 1).collect();
                pairing_from_mask(n, &slots, &bits)
            })
            .collect::<Result<_>>()?;
        for f in &scalars {
            check(f)?;
        }
        for f in &scalars {
            for g in &scalars {
                check(&stack(n, &[f.clone(), g.clone()])?)?;
            }
        }
    }
    // n = 3: unit pairings, all cocycles, and their single-slot perturbations
    let slots = pairing_slots(3);
    let units: Vec<Cocycle> = (0..slots.len())
        .map(|k| {
            let bits: Vec<bool> = (0..slots.len()).map(|j| j == k).collect();
            pairing_from_mask(3, &slots, &bits)
        })
        .collect::<Result<_>>()?;
    let cocycles = span(&cocycle_space_basis(3)?)?;
    for f in units.iter().chain(&cocycles) {
        check(f)?;
    }
    for u in &units {
        check(&stack(3, &[u.clone(), cocycles[5].clone()])?)?;
    }
    // seeded random pairings, half of them valid
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=3u32);
        let m = rng.gen_range(1..=2usize);
        let basis = cocycle_space_basis(n)?;
        let slots = pairing_slots(n);
        let mut parts = Vec::new();
        for _ in 0..m {
            let mut f = Cocycle::zero(n, 1)?;
            for b in &basis {
                if rng.gen::<bool>() {
                    f = f.add(b)?;
                }
            }
            if rng.gen::<bool>() {
                let flips: Vec<bool> = (0..slots.len()).map(|_| rng.gen_ratio(1, 8)).collect();
                f = f.add(&pairing_from_mask(n, &slots, &flips)?)?;
            }
            parts.push(f);
        }
        check(&stack(n, &parts)?)?;
    }
    Ok(format!("{checked} pairings ({valid_seen} valid), no counterexample"))
}

fn associator_coherence(seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xC0);
    let mut triples = 0;
    for n in [3u32, 4] {
        let base = universal_cocycle(n)?;
        for _ in 0..20 {
            let g = random_cochain(n, base.m(), &mut rng)?;
            let f = base.add(&coboundary(&g))?;
            let l = build_extension(&f)?;
            ensure(l.is_dense() == (n == 3), || format!("unexpected backing at n={n}"))?;
            for _ in 0..50 {
                let mut pick = || IndexSubset::from_bits(n, rng.gen_range(0..1u64 << n));
                let (s, u, t) = (pick()?, pick()?, pick()?);
                let expected = associator_formula(&f, &s, &u, &t)?;
                let lift = |v: IndexSubset| l.element(v, F2Vector::zeros(f.m()));
                let (es, eu, et) = (lift(s)?, lift(u)?, lift(t)?);
                let got = match l.table() {
                    Ok(table) => {
                        let idx = |e| l.encode(e).expect("dense index");
                        l.decode(table.assoc(idx(&es), idx(&eu), idx(&et)))?
                    }
                    Err(_) => l.associator(&es, &eu, &et),
                };
                ensure(got.v.is_empty() && got.z == expected, || {
                    format!("n={n}: ({s}, {u}, {t}) gives {got:?}, formula {expected}")
                })?;
                triples += 1;
            }
        }
    }
    Ok(format!("{triples} triples (n=3 table, n=4 rule)"))
}

fn free_loop_n3() -> Result<String> {
    let l = free_nilpotent2(3)?.into_table()?;
    ensure(l.order() == 64, || format!("order {}", l.order()))?;
    ensure(is_steiner(&l), || "not Steiner".into())?;
    ensure(!l.is_associative(), || "associative".into())?;
    let z = center(&l);
    ensure(z.len() == 8, || format!("center of order {}", z.len()))?;
    let class = nilpotency_class(&l);
    ensure(class == Nilpotency::Class(2), || format!("class {class}"))?;
    let a = associator_subloop(&l);
    ensure(a == z, || format!("associator subloop {a:?} differs from center"))?;
    Ok("order=64 steiner non-associative center=8 class=2 A(L)=Z(L)".into())
}

fn unique_s16() -> Result<String> {
    let (r, s16) = unique16()?;
    ensure(r.quotient_count == 7, || format!("{} quotients", r.quotient_count))?;
    ensure(r.isomorphisms_verified == 21 && r.pairwise_isomorphic, || {
        format!("{} isomorphisms", r.isomorphisms_verified)
    })?;
    ensure(s16.order() == 16 && r.s16_class == Nilpotency::Class(2), || {
        format!("S16 order {} class {}", s16.order(), r.s16_class)
    })?;
    Ok(format!(
        "7 quotients of order 16, 21 isomorphisms verified, center={} class={}",
        r.s16_center_order, r.s16_class
    ))
}

fn cohomologous_equivalence(seed: u64) -> Result<String> {
    let all = span(&cocycle_space_basis(3)?)?;
    let coboundaries: Vec<(Cochain, Cocycle)> = (0u64..1 << 7)
        .map(|mask| {
            let g = Cochain::from_fn(3, 1, |s| {
                F2Vector::from_bits(&[s.bits() > 0 && mask >> (s.bits() - 1) & 1 == 1])
            })?;
            let d = coboundary(&g);
            Ok((g, d))
        })
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    let mut distinct = Vec::new();
    for (_, d) in &coboundaries {
        if seen.insert(crate::coho::cocycle::scalar_table(d)?) {
            distinct.push(d.clone());
        }
    }
    ensure(distinct.len() == 16, || format!("{} coboundaries", distinct.len()))?;
    let mut cohomologous = 0;
    for f in &all {
        let l1 = build_extension(f)?;
        for d in &distinct {
            let f2 = f.add(d)?;
            let eq = extension_equivalence(f, &f2)?.ok_or_else(|| {
                Error::Verification(format!("no equivalence for {f:?} and {f2:?}"))
            })?;
            let l2 = build_extension(&f2)?;
            let map = eq.map.as_ref().ok_or(Error::RuleBacked)?;
            ensure(l1.table()?.is_isomorphism(l2.table()?, map), || {
                "shift map is not multiplicative".into()
            })?;
            cohomologous += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1E);
    let mut rejected = 0;
    while rejected < 100 {
        let f1 = &all[rng.gen_range(0..all.len())];
        let f2 = &all[rng.gen_range(0..all.len())];
        if same_h2_class(f1, f2)? {
            continue;
        }
        ensure(extension_equivalence(f1, f2)?.is_none(), || "equivalence for distinct classes".into())?;
        let (l1, l2) = (build_extension(f1)?, build_extension(f2)?);
        let (t1, t2) = (l1.table()?, l2.table()?);
        for (g, _) in &coboundaries {
            ensure(!t1.is_isomorphism(t2, &shift_map(g)?), || {
                format!("shift by {g:?} identifies non-cohomologous cocycles")
            })?;
        }
        rejected += 1;
    }
    Ok(format!(
        "{cohomologous} cohomologous pairs mapped, 100 non-cohomologous pairs x 128 shifts rejected"
    ))
}

fn gl_order(n: u32) -> usize {
    (0..n).map(|i| (1usize << n) - (1usize << i)).product()
}

fn automorphism_counts() -> Result<String> {
    let klein = FiniteLoop::elementary_abelian(2)?;
    let e8 = FiniteLoop::elementary_abelian(3)?;
    let k = enumerate_automorphisms(&klein, 64)?.order();
    ensure(k == gl_order(2), || format!("|Aut(Klein)| = {k}"))?;
    let e = enumerate_automorphisms(&e8, 64)?.order();
    ensure(e == gl_order(3), || format!("|Aut(E8)| = {e}"))?;
    let free = free_nilpotent2(3)?;
    let auts = enumerate_automorphisms(free.table()?, 64)?;
    let order = auts.order();
    let fact = aut_factorization(&free, &auts)?;
    let expected = gl_order(3) * 512;
    ensure(order == expected, || format!("|Aut(free)| = {order}, expected {expected}"))?;
    ensure(fact.linear_parts == gl_order(3) && fact.fibre_sizes == vec![(512, 168)], || {
        format!("linear parts {} fibres {:?}", fact.linear_parts, fact.fibre_sizes)
    })?;
    ensure(fact.all_decompose(), || {
        format!("{} of {} automorphisms decompose", fact.decomposed, fact.order)
    })?;
    Ok(format!("|Aut(Klein)|={k} |Aut(E8)|={e} |Aut(free)|={order}=168*512"))
}

fn sts_bridge() -> Result<String> {
    let fano = TripleSystem::fano();
    let fl = loop_from_sts(&fano)?;
    ensure(fl.order() == 8 && fl.is_associative() && is_steiner(&fl), || {
        "Fano loop is not an associative Steiner loop of order 8".into()
    })?;
    let (_, s16) = unique16()?;
    let corpus = [
        ("klein", FiniteLoop::elementary_abelian(2)?),
        ("e8", FiniteLoop::elementary_abelian(3)?),
        ("s16", s16),
        ("free64", free_nilpotent2(3)?.into_table()?),
    ];
    for (name, l) in &corpus {
        let s = sts_from_loop(l)?;
        ensure(s.blocks().len() == s.points() * (s.points() - 1) / 6, || {
            format!("{name}: block count")
        })?;
        let back = loop_from_sts(&s)?;
        ensure(back.rows().eq(l.rows()), || format!("{name}: table changed in round trip"))?;
        ensure(find_isomorphism(&back, l).is_some(), || format!("{name}: not isomorphic"))?;
        ensure(sts_from_loop(&back)? == s, || format!("{name}: blocks changed in round trip"))?;
    }
    Ok("Fano -> associative order 8; round trip on klein, e8, s16, free64".into())
}

fn sword_laws() -> Result<String> {
    let words = swords_up_to(3, 6);
    let free = free_nilpotent2(3)?.into_table()?;
    let images = free.generators().to_vec();
    let value = |w: &Word| evaluate(w, &images, &free);
    let values: Vec<usize> = words.iter().map(&value).collect::<Result<_>>()?;
    for (i, v) in words.iter().enumerate() {
        ensure(multiply(v, v).is_empty(), || format!("{v} {v} is not empty"))?;
        for (j, w) in words.iter().enumerate() {
            let vw = multiply(v, w);
            ensure(vw == multiply(w, v), || format!("{v} and {w} do not commute"))?;
            ensure(multiply(v, &vw) == *w, || format!("{v}({v} {w}) is not {w}"))?;
            ensure(value(&vw)? == free.op(values[i], values[j]), || {
                format!("evaluation is not multiplicative at {v}, {w}")
            })?;
        }
    }
    Ok(format!("{} S-words, {} products", words.len(), words.len() * words.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        let cfg = SelfTestConfig {
            extended: false,
            ..Default::default()
        };
        for id in [1, 3, 4, 7, 11, 12] {
            let o = run_criterion(id, &cfg);
            assert!(o.passed, "{}", o.line());
        }
    }

    #[test]
    fn unknown_criterion_fails() {
        let o = run_criterion(99, &SelfTestConfig::default());
        assert!(!o.passed);
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2), 6);
        assert_eq!(gl_order(3), 168);
    }
}
