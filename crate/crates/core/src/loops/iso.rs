//! Isomorphism and automorphism search by backtracking over images of a
//! small generating set.
//!
//! An isomorphism is identified with the tuple of images of the generators
//! returned by [`generating_set`]; "least" means lexicographically least
//! tuple. Every returned map is checked to be a bijective homomorphism.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::loops::analysis::{associator_subloop, center};
use crate::loops::FiniteLoop;

/// Default order cap for [`automorphisms`].
pub const DEFAULT_AUT_MAX_ORDER: usize = 64;

/// Greedy generating set: least elements that enlarge the subloop generated
/// together with the associator subloop, then least elements that enlarge
/// the plain generated subloop.
pub fn generating_set(l: &FiniteLoop) -> Vec<usize> {
    let a = associator_subloop(l);
    let mut gens = Vec::new();
    let mut span = l.subloop_generated(&a);
    while span.len() < l.order() {
        let next = (0..l.order()).find(|x| span.binary_search(x).is_err()).unwrap();
        gens.push(next);
        let mut seeds = a.clone();
        seeds.extend(&gens);
        span = l.subloop_generated(&seeds);
    }
    span = l.subloop_generated(&gens);
    while span.len() < l.order() {
        let next = (0..l.order()).find(|x| span.binary_search(x).is_err()).unwrap();
        gens.push(next);
        span = l.subloop_generated(&gens);
    }
    gens
}

/// Straight-line program reaching every element from the generators:
/// step `(a, b, c)` means `c = a * b` with `a`, `b` reached earlier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorProgram {
    pub generators: Vec<usize>,
    pub steps: Vec<(usize, usize, usize)>,
    /// After generator `j`, steps `..stage_end[j]` have been run and
    /// `stage_elems[j]` (in reach order) is the subloop generated so far.
    pub stage_end: Vec<usize>,
    pub stage_elems: Vec<Vec<usize>>,
}

impl GeneratorProgram {
    pub fn new(l: &FiniteLoop, generators: &[usize]) -> Result<Self> {
        let n = l.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut elems = vec![0usize];
        let mut steps = Vec::new();
        let mut stage_end = Vec::new();
        let mut stage_elems = Vec::new();
        let mut done = 0;
        for &g in generators {
            if g >= n {
                return Err(Error::Precondition(format!("generator {g} is not an element")));
            }
            if !member[g] {
                member[g] = true;
                elems.push(g);
            }
            while done < elems.len() {
                let x = elems[done];
                for j in 0..=done {
                    let y = elems[j];
                    for (a, b) in [(x, y), (y, x)] {
                        let c = l.op(a, b);
                        if !member[c] {
                            member[c] = true;
                            elems.push(c);
                            steps.push((a, b, c));
                        }
                    }
                }
                done += 1;
            }
            stage_end.push(steps.len());
            stage_elems.push(elems.clone());
        }
        if elems.len() != n {
            return Err(Error::Precondition(format!(
                "generators reach {} of {n} elements",
                elems.len()
            )));
        }
        Ok(GeneratorProgram {
            generators: generators.to_vec(),
            steps,
            stage_end,
            stage_elems,
        })
    }
}

/// Per-element invariants preserved by isomorphisms.
fn signatures(l: &FiniteLoop) -> Vec<[usize; 5]> {
    let n = l.order();
    let mut in_center = vec![0usize; n];
    for z in center(l) {
        in_center[z] = 1;
    }
    let mut in_assoc = vec![0usize; n];
    for a in associator_subloop(l) {
        in_assoc[a] = 1;
    }
    (0..n)
        .map(|x| {
            let commuting = (0..n).filter(|&y| l.op(x, y) == l.op(y, x)).count();
            let inverse_law = (0..n).filter(|&y| l.op(x, l.op(x, y)) == y).count();
            let square_is_e = usize::from(l.op(x, x) == 0);
            [in_center[x], in_assoc[x], square_is_e, commuting, inverse_law]
        })
        .collect()
}

struct Search<'a> {
    from: &'a FiniteLoop,
    to: &'a FiniteLoop,
    program: GeneratorProgram,
    sig_from: Vec<[usize; 5]>,
    sig_to: Vec<[usize; 5]>,
}

impl<'a> Search<'a> {
    fn new(from: &'a FiniteLoop, to: &'a FiniteLoop) -> Result<Self> {
        let program = GeneratorProgram::new(from, &generating_set(from))?;
        Ok(Search {
            from,
            to,
            program,
            sig_from: signatures(from),
            sig_to: signatures(to),
        })
    }

    fn candidates(&self, j: usize) -> Vec<usize> {
        let g = self.program.generators[j];
        (0..self.to.order())
            .filter(|&t| self.sig_to[t] == self.sig_from[g])
            .collect()
    }

    /// Extends `map`/`used` through stage `j` after generator `j` got image
    /// `t`; returns false on inconsistency, leaving the state unusable.
    fn extend(&self, j: usize, t: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let g = self.program.generators[j];
        if map[g] != usize::MAX {
            return map[g] == t;
        }
        if used[t] {
            return false;
        }
        map[g] = t;
        used[t] = true;
        let start = if j == 0 { 0 } else { self.program.stage_end[j - 1] };
        for &(a, b, c) in &self.program.steps[start..self.program.stage_end[j]] {
            let img = self.to.op(map[a], map[b]);
            if used[img] || self.sig_to[img] != self.sig_from[c] {
                return false;
            }
            map[c] = img;
            used[img] = true;
        }
        let elems = &self.program.stage_elems[j];
        elems
            .iter()
            .all(|&x| elems.iter().all(|&y| map[self.from.op(x, y)] == self.to.op(map[x], map[y])))
    }

    fn fresh(&self) -> (Vec<usize>, Vec<bool>) {
        let mut map = vec![usize::MAX; self.from.order()];
        let mut used = vec![false; self.to.order()];
        map[0] = 0;
        used[0] = true;
        (map, used)
    }

    /// Depth-first search below a fixed first image; calls `visit` on every
    /// complete map in lexicographic order of the image tuple. `visit`
    /// returns false to stop.
    fn dfs(&self, first: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let (mut map, mut used) = self.fresh();
        let lists: Vec<Vec<usize>> = (0..self.program.generators.len())
            .map(|j| self.candidates(j))
            .collect();
        if !self.extend(0, first, &mut map, &mut used) {
            return;
        }
        self.dfs_from(1, &lists, &map, &used, visit);
    }

    fn dfs_from(
        &self,
        j: usize,
        lists: &[Vec<usize>],
        map: &[usize],
        used: &[bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if j == lists.len() {
            return visit(map);
        }
        for &t in &lists[j] {
            let (mut m, mut u) = (map.to_vec(), used.to_vec());
            if self.extend(j, t, &mut m, &mut u) && !self.dfs_from(j + 1, lists, &m, &u, visit) {
                return false;
            }
        }
        true
    }

    fn first_candidates(&self) -> Vec<usize> {
        if self.program.generators.is_empty() {
            Vec::new()
        } else {
            self.candidates(0)
        }
    }
}

/// The isomorphism `from → to` with lexicographically least generator image
/// tuple, or `None`.
pub fn find_isomorphism(from: &FiniteLoop, to: &FiniteLoop) -> Option<Vec<usize>> {
    if from.order() != to.order() {
        return None;
    }
    if from.order() == 1 {
        return Some(vec![0]);
    }
    let search = Search::new(from, to).ok()?;
    let mut sorted_from = search.sig_from.clone();
    let mut sorted_to = search.sig_to.clone();
    sorted_from.sort_unstable();
    sorted_to.sort_unstable();
    if sorted_from != sorted_to {
        return None;
    }
    let found = search.first_candidates().into_par_iter().find_map_first(|first| {
        let mut hit = None;
        search.dfs(first, &mut |map| {
            hit = Some(map.to_vec());
            false
        });
        hit
    });
    found.filter(|map| from.is_isomorphism(to, map))
}

/// All automorphisms, as generator image tuples in lexicographic order.
#[derive(Clone, Debug)]
pub struct Automorphisms {
    pub program: GeneratorProgram,
    pub maps: Vec<Vec<u16>>,
}

impl Automorphisms {
    pub fn order(&self) -> usize {
        self.maps.len()
    }
}

/// Every automorphism of `l` (each verified), for orders up to `max_order`.
pub fn enumerate_automorphisms(l: &FiniteLoop, max_order: usize) -> Result<Automorphisms> {
    if l.order() > max_order {
        return Err(Error::out_of_range(
            "loop order for automorphism search",
            l.order() as u64,
            format!("at most {max_order}"),
        ));
    }
    if l.order() == 1 {
        return Ok(Automorphisms {
            program: GeneratorProgram::new(l, &[])?,
            maps: vec![vec![0]],
        });
    }
    let search = Search::new(l, l)?;
    let chunks: Vec<Vec<Vec<u16>>> = search
        .first_candidates()
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            search.dfs(first, &mut |map| {
                found.push(map.iter().map(|&x| x as u16).collect());
                true
            });
            found
        })
        .collect();
    let maps: Vec<Vec<u16>> = chunks.into_iter().flatten().collect();
    for m in &maps {
        let as_usize: Vec<usize> = m.iter().map(|&x| x as usize).collect();
        if !l.is_isomorphism(l, &as_usize) {
            return Err(Error::Verification("search returned a non-automorphism".into()));
        }
    }
    Ok(Automorphisms {
        program: search.program,
        maps,
    })
}

/// Order of the automorphism group and a generating set of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutReport {
    pub order: usize,
    /// Permutations of the elements.
    pub generators: Vec<Vec<usize>>,
}

/// [`enumerate_automorphisms`] followed by a greedy choice of group
/// generators: each automorphism not yet in the generated subgroup is added.
pub fn automorphisms(l: &FiniteLoop, max_order: usize) -> Result<AutReport> {
    let all = enumerate_automorphisms(l, max_order)?;
    Ok(AutReport {
        order: all.order(),
        generators: group_generators(&all.maps),
    })
}

fn compose(a: &[u16], b: &[u16]) -> Vec<u16> {
    // a after b
    b.iter().map(|&x| a[x as usize]).collect()
}

fn group_generators(maps: &[Vec<u16>]) -> Vec<Vec<usize>> {
    let Some(identity) = maps.iter().find(|m| m.iter().enumerate().all(|(i, &x)| i == x as usize)) else {
        return Vec::new();
    };
    let mut group: HashSet<Vec<u16>> = HashSet::from([identity.clone()]);
    let mut gens: Vec<Vec<u16>> = Vec::new();
    for m in maps {
        if group.len() == maps.len() {
            break;
        }
        if group.contains(m) {
            continue;
        }
        gens.push(m.clone());
        let mut elements = vec![identity.clone()];
        group = HashSet::from([identity.clone()]);
        let mut k = 0;
        while k < elements.len() {
            for g in &gens {
                let p = compose(g, &elements[k]);
                if group.insert(p.clone()) {
                    elements.push(p);
                }
            }
            k += 1;
        }
    }
    gens.into_iter()
        .map(|g| g.into_iter().map(usize::from).collect())
        .collect()
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

    /// Brute force over all permutations fixing 0.
    fn brute_aut_count(l: &FiniteLoop) -> usize {
        fn rec(l: &FiniteLoop, map: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let k = map.len();
            if k == l.order() {
                if l.is_isomorphism(l, map) {
                    *count += 1;
                }
                return;
            }
            for t in 1..l.order() {
                if !used[t] {
                    used[t] = true;
                    map.push(t);
                    rec(l, map, used, count);
                    map.pop();
                    used[t] = false;
                }
            }
        }
        let mut count = 0;
        let mut used = vec![false; l.order()];
        used[0] = true;
        rec(l, &mut vec![0], &mut used, &mut count);
        count
    }

    #[test]
    fn generating_sets() {
        assert_eq!(generating_set(&FiniteLoop::elementary_abelian(3).unwrap()), vec![1, 2, 4]);
        assert_eq!(generating_set(&free64()), vec![8, 16, 32]);
        let z6 = FiniteLoop::from_fn(6, |a, b| (a + b) % 6).unwrap();
        assert_eq!(generating_set(&z6), vec![1]);
    }

    #[test]
    fn identity_is_least_self_isomorphism() {
        for l in [FiniteLoop::elementary_abelian(3).unwrap(), free64()] {
            let map = find_isomorphism(&l, &l).unwrap();
            assert_eq!(map, (0..l.order()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn relabelled_loop_is_isomorphic() {
        let l = free64();
        let perm: Vec<usize> = (0..64).map(|x| if x == 0 { 0 } else { (x * 5) % 63 }).map(|x| if x == 0 { 63 } else { x }).collect();
        let perm: Vec<usize> = std::iter::once(0).chain(perm[1..].iter().copied()).collect();
        let mut inv = vec![0; 64];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let relabelled = FiniteLoop::from_fn(64, |a, b| perm[l.op(inv[a], inv[b])]).unwrap();
        let map = find_isomorphism(&l, &relabelled).unwrap();
        assert!(l.is_isomorphism(&relabelled, &map));
        let back = find_isomorphism(&relabelled, &l).unwrap();
        assert!(relabelled.is_isomorphism(&l, &back));
    }

    #[test]
    fn non_isomorphic() {
        let z4 = FiniteLoop::from_fn(4, |a, b| (a + b) % 4).unwrap();
        let k = FiniteLoop::elementary_abelian(2).unwrap();
        assert!(find_isomorphism(&z4, &k).is_none());
        assert!(find_isomorphism(&k, &z4).is_none());
        assert!(find_isomorphism(&k, &FiniteLoop::elementary_abelian(3).unwrap()).is_none());
    }

    #[test]
    fn small_automorphism_groups() {
        let k = FiniteLoop::elementary_abelian(2).unwrap();
        assert_eq!(brute_aut_count(&k), 6);
        assert_eq!(automorphisms(&k, 64).unwrap().order, 6);
        let e8 = FiniteLoop::elementary_abelian(3).unwrap();
        assert_eq!(brute_aut_count(&e8), 168);
        let report = automorphisms(&e8, 64).unwrap();
        assert_eq!(report.order, 168);
        for g in &report.generators {
            assert!(e8.is_isomorphism(&e8, g));
        }
        let z5 = FiniteLoop::from_fn(5, |a, b| (a + b) % 5).unwrap();
        assert_eq!(brute_aut_count(&z5), 4);
        assert_eq!(automorphisms(&z5, 64).unwrap().order, 4);
    }

    #[test]
    fn generators_generate() {
        let e8 = FiniteLoop::elementary_abelian(3).unwrap();
        let all = enumerate_automorphisms(&e8, 64).unwrap();
        let gens: Vec<Vec<u16>> = group_generators(&all.maps)
            .into_iter()
            .map(|g| g.into_iter().map(|x| x as u16).collect())
            .collect();
        assert!(gens.len() <= 8);
        let mut group: HashSet<Vec<u16>> = HashSet::from([(0..8).collect()]);
        let mut frontier: Vec<Vec<u16>> = group.iter().cloned().collect();
        while let Some(e) = frontier.pop() {
            for g in &gens {
                let p = compose(g, &e);
                if group.insert(p.clone()) {
                    frontier.push(p);
                }
            }
        }
        assert_eq!(group.len(), 168);
    }

    #[test]
    fn order_cap() {
        let e16 = FiniteLoop::elementary_abelian(4).unwrap();
        assert!(automorphisms(&e16, 8).is_err());
    }
}
