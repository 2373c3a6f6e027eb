//! The free Steiner loop of nilpotency class two and its order-16 quotient.

use std::collections::{BTreeMap, HashMap};

use crate::coho::universal::universal_cocycle;
use crate::error::{Error, Result};
use crate::loops::analysis::{
    associator_subloop, center, central_subspaces, nilpotency_class, quotient, Nilpotency,
};
use crate::loops::extension::{build_extension, ExtensionLoop};
use crate::loops::iso::{find_isomorphism, Automorphisms};
use crate::loops::{is_steiner, steiner_violation, FiniteLoop};

/// Largest `n` accepted by [`free_nilpotent2`].
pub const FREE_MAX_N: u32 = 8;

/// `L_f` for the universal cocycle: the free class-two Steiner loop on
/// `x_1, ..., x_n`, with `x_i = ({i}, 0)`. Dense for `n <= 3`.
pub fn free_nilpotent2(n: u32) -> Result<ExtensionLoop> {
    if n == 0 || n > FREE_MAX_N {
        return Err(Error::out_of_range("n", n, format!("1..={FREE_MAX_N}")));
    }
    build_extension(&universal_cocycle(n)?)
}

/// How the automorphisms of a dense free loop split into a linear part
/// (action on `L / Z`) and central translations `x_i ↦ x_i t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutFactorization {
    pub order: usize,
    /// Distinct induced maps on `V = L / Z`.
    pub linear_parts: usize,
    /// Automorphisms per linear part, as (count, how many parts have it).
    pub fibre_sizes: Vec<(usize, usize)>,
    /// Automorphisms of the form `ψ_A ∘ φ_t` with `ψ_A` the lift of `A`
    /// fixing the `Z`-component of the generators and `φ_t` a translation.
    pub decomposed: usize,
}

impl AutFactorization {
    pub fn all_decompose(&self) -> bool {
        self.decomposed == self.order
    }
}

/// Decomposes every automorphism `α` of a dense extension `L_f`: `A` is the
/// map induced on `V`, `ψ_A` the automorphism with `x_i ↦ (A e_i, 0)`, and
/// `ψ_A^{-1} α` must send each `x_i` to `x_i t_i` with `t_i` central.
pub fn aut_factorization(ext: &ExtensionLoop, auts: &Automorphisms) -> Result<AutFactorization> {
    let l = ext.table()?;
    let m = ext.m();
    let gens: Vec<usize> = (0..ext.n()).map(|i| (1usize << i) << m).collect();
    let zmask = (1usize << m) - 1;
    let z: Vec<usize> = center(l);
    let mut by_images: HashMap<Vec<usize>, usize> = HashMap::new();
    for (k, map) in auts.maps.iter().enumerate() {
        let images = gens.iter().map(|&g| map[g] as usize).collect();
        by_images.insert(images, k);
    }
    let mut fibres: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut decomposed = 0;
    for map in &auts.maps {
        let linear: Vec<usize> = gens.iter().map(|&g| map[g] as usize & !zmask).collect();
        *fibres.entry(linear.clone()).or_default() += 1;
        let Some(&psi) = by_images.get(&linear) else {
            continue;
        };
        let psi = &auts.maps[psi];
        let mut inv = vec![0usize; l.order()];
        for (x, &y) in psi.iter().enumerate() {
            inv[y as usize] = x;
        }
        let translation = gens.iter().all(|&g| {
            let image = inv[map[g] as usize];
            z.binary_search(&l.ldiv(g, image)).is_ok()
        });
        if translation {
            decomposed += 1;
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &count in fibres.values() {
        *sizes.entry(count).or_default() += 1;
    }
    Ok(AutFactorization {
        order: auts.order(),
        linear_parts: fibres.len(),
        fibre_sizes: sizes.into_iter().collect(),
        decomposed,
    })
}

/// Verification record for the order-16 quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unique16Report {
    pub free_order: usize,
    pub center_order: usize,
    pub quotient_count: usize,
    /// Bases of the central subspaces, in canonical order.
    pub subspaces: Vec<String>,
    pub quotient_orders: Vec<usize>,
    pub all_steiner: bool,
    pub all_non_associative: bool,
    pub classes: Vec<Nilpotency>,
    pub isomorphisms_verified: usize,
    pub pairwise_isomorphic: bool,
    pub s16_center_order: usize,
    pub s16_associator_subloop_order: usize,
    pub s16_class: Nilpotency,
}

/// Factors the free loop on three generators by each two-dimensional
/// central subspace, checks every quotient, and checks that all quotients
/// are isomorphic. Returns the quotient by the first subspace.
pub fn unique16() -> Result<(Unique16Report, FiniteLoop)> {
    let free = free_nilpotent2(3)?.into_table()?;
    let z = center(&free);
    let subspaces = central_subspaces(&free, 2)?;
    let mut quotients = Vec::new();
    let mut classes = Vec::new();
    for s in &subspaces {
        let q = quotient(&free, &s.elements)?.quotient;
        if q.order() != 16 {
            return Err(Error::Verification(format!(
                "quotient by {} has order {}",
                s.basis_string(),
                q.order()
            )));
        }
        if let Some(w) = steiner_violation(&q) {
            return Err(Error::Verification(format!(
                "quotient by {} is not Steiner: {w}",
                s.basis_string()
            )));
        }
        if q.is_associative() {
            return Err(Error::Verification(format!(
                "quotient by {} is associative",
                s.basis_string()
            )));
        }
        let class = nilpotency_class(&q);
        if class != Nilpotency::Class(2) {
            return Err(Error::Verification(format!(
                "quotient by {} has nilpotency class {class}",
                s.basis_string()
            )));
        }
        classes.push(class);
        quotients.push(q);
    }
    let mut verified = 0;
    for i in 0..quotients.len() {
        for j in i + 1..quotients.len() {
            match find_isomorphism(&quotients[i], &quotients[j]) {
                Some(map) if quotients[i].is_isomorphism(&quotients[j], &map) => verified += 1,
                _ => {
                    return Err(Error::Verification(format!(
                        "quotients by {} and {} are not isomorphic",
                        subspaces[i].basis_string(),
                        subspaces[j].basis_string()
                    )))
                }
            }
        }
    }
    let s16 = quotients
        .first()
        .cloned()
        .ok_or_else(|| Error::Verification("no central subspaces".into()))?;
    debug_assert!(is_steiner(&s16));
    let report = Unique16Report {
        free_order: free.order(),
        center_order: z.len(),
        quotient_count: quotients.len(),
        subspaces: subspaces.iter().map(|s| s.basis_string()).collect(),
        quotient_orders: quotients.iter().map(FiniteLoop::order).collect(),
        all_steiner: true,
        all_non_associative: true,
        classes,
        isomorphisms_verified: verified,
        pairwise_isomorphic: verified == quotients.len() * (quotients.len().saturating_sub(1)) / 2,
        s16_center_order: center(&s16).len(),
        s16_associator_subloop_order: associator_subloop(&s16).len(),
        s16_class: nilpotency_class(&s16),
    };
    Ok((report, s16))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::iso::enumerate_automorphisms;

    #[test]
    fn small_free_loops() {
        let one = free_nilpotent2(1).unwrap();
        assert_eq!(one.table().unwrap().order(), 2);
        let two = free_nilpotent2(2).unwrap();
        let t = two.table().unwrap();
        assert_eq!(t.order(), 4);
        assert!(t.is_associative());
        let three = free_nilpotent2(3).unwrap();
        assert_eq!(three.table().unwrap().order(), 64);
        assert!(!free_nilpotent2(4).unwrap().is_dense());
        assert!(free_nilpotent2(9).is_err());
        assert!(free_nilpotent2(0).is_err());
    }

    #[test]
    fn unique16_report() {
        let (report, s16) = unique16().unwrap();
        assert_eq!(report.quotient_count, 7);
        assert_eq!(report.isomorphisms_verified, 21);
        assert!(report.pairwise_isomorphic);
        assert_eq!(s16.order(), 16);
        assert_eq!(report.s16_center_order, 2);
        assert_eq!(report.s16_associator_subloop_order, 2);
        assert_eq!(report.s16_class, Nilpotency::Class(2));
    }

    #[test]
    fn klein_factorization_is_trivial() {
        // n = 2: the free loop is a group with m = 0, so only linear parts
        let ext = free_nilpotent2(2).unwrap();
        let auts = enumerate_automorphisms(ext.table().unwrap(), 64).unwrap();
        let f = aut_factorization(&ext, &auts).unwrap();
        assert_eq!(f.order, 6);
        assert_eq!(f.linear_parts, 6);
        assert!(f.all_decompose());
    }
}
