use proptest::prelude::*;
use proptest::sample::subsequence;

use steiner_core::coho::{coboundary, universal_cocycle, Cochain};
use steiner_core::f2::F2Vector;
use steiner_core::io::{parse_sts, parse_table, write_sts, write_table};
use steiner_core::loops::{
    build_extension, center, find_isomorphism, free_nilpotent2, is_steiner, quotient, unique16,
    FiniteLoop,
};
use steiner_core::sts::{loop_from_sts, sts_from_loop};

fn free64() -> FiniteLoop {
    free_nilpotent2(3).unwrap().into_table().unwrap()
}

fn s16() -> FiniteLoop {
    unique16().unwrap().1
}

/// `l` with elements renamed by a permutation fixing 0.
fn relabel(l: &FiniteLoop, perm: &[usize]) -> FiniteLoop {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    FiniteLoop::from_fn(l.order(), |a, b| perm[l.op(inv[a], inv[b])]).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|rest| std::iter::once(0).chain(rest).collect())
}

#[test]
fn coboundary_extensions_are_associative() {
    for mask in 0u64..1 << 7 {
        let g = Cochain::from_fn(3, 1, |s| {
            F2Vector::from_bits(&[s.bits() > 0 && mask >> (s.bits() - 1) & 1 == 1])
        })
        .unwrap();
        let l = build_extension(&coboundary(&g)).unwrap().into_table().unwrap();
        assert!(l.is_associative());
        assert!(is_steiner(&l));
        let e16 = FiniteLoop::elementary_abelian(4).unwrap();
        let map = find_isomorphism(&l, &e16).unwrap();
        assert!(l.is_isomorphism(&e16, &map));
    }
}

#[test]
fn s16_is_not_a_group() {
    let e16 = FiniteLoop::elementary_abelian(4).unwrap();
    assert!(find_isomorphism(&s16(), &e16).is_none());
    assert!(find_isomorphism(&e16, &s16()).is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn isomorphism_search_is_sound_and_symmetric(perm in permutation(16)) {
        let l = s16();
        let r = relabel(&l, &perm);
        let there = find_isomorphism(&l, &r).expect("relabelled copy");
        prop_assert!(l.is_isomorphism(&r, &there));
        let back = find_isomorphism(&r, &l).expect("symmetric");
        prop_assert!(r.is_isomorphism(&l, &back));
    }

    #[test]
    fn relabelled_free_loop_round_trips_through_sts(perm in permutation(64)) {
        let l = relabel(&free64(), &perm);
        prop_assert!(is_steiner(&l));
        let s = sts_from_loop(&l).unwrap();
        prop_assert_eq!(s.blocks().len(), 63 * 62 / 6);
        let back = loop_from_sts(&s).unwrap();
        prop_assert!(back.rows().eq(l.rows()));
        prop_assert_eq!(sts_from_loop(&back).unwrap(), s);
    }

    #[test]
    fn central_quotients_are_consistent(members in subsequence((1usize..8).collect::<Vec<_>>(), 0..7)) {
        let l = free64();
        let h = l.subloop_generated(&members);
        let q = quotient(&l, &h).unwrap();
        prop_assert_eq!(l.order(), h.len() * q.quotient.order());
        for x in 0..64 {
            for y in 0..64 {
                prop_assert_eq!(q.projection[l.op(x, y)], q.quotient.op(q.projection[x], q.projection[y]));
            }
        }
        prop_assert!(is_steiner(&q.quotient));
    }

    #[test]
    fn table_files_round_trip(perm in permutation(16)) {
        let l = relabel(&s16(), &perm);
        let back = parse_table(&write_table(&l)).unwrap();
        prop_assert!(back.rows().eq(l.rows()));
        let s = sts_from_loop(&l).unwrap();
        prop_assert_eq!(parse_sts(&write_sts(&s)).unwrap(), s);
    }
}

#[test]
fn center_of_universal_extension_is_z() {
    let ext = build_extension(&universal_cocycle(3).unwrap()).unwrap();
    let z = center(ext.table().unwrap());
    let expected: Vec<usize> = (0..8).collect();
    assert_eq!(z, expected);
    for &e in &z {
        assert!(ext.decode(e).unwrap().v.is_empty());
    }
}
