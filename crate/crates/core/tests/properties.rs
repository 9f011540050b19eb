mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use twistsemi::actions::GroupAction;
use twistsemi::adjunction::{enumerate_homs_under, pi, pi_inverse};
use twistsemi::family::f4_family;
use twistsemi::group::FiniteGroup;
use twistsemi::ring::FiniteRing;
use twistsemi::search::{group_homs, ring_homs, Constraints, SearchOptions};
use twistsemi::semilin::semilinearize;
use twistsemi::twist::{twistify, TwistedGroupRing};
use twistsemi::Caps;

fn actions() -> Vec<GroupAction> {
    let f = f4();
    let v = z2xz2();
    vec![
        nontrivial(&cyclic(2), &auts(&f)),
        GroupAction::trivial(cyclic(2), auts(&f)),
        nontrivial(&cyclic(2), &auts(&v)),
        GroupAction::trivial(cyclic(2), auts(&zmod(4))),
        nontrivial(&cyclic(4), &auts(&f)),
    ]
}

fn rings() -> Vec<Arc<FiniteRing>> {
    vec![zmod(2), zmod(4), zmod(6), f4(), z2xz2(), m2f2()]
}

fn twisted(i: usize) -> TwistedGroupRing {
    twistify(&actions()[i], &caps()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_hom_search_ignores_shuffling(s in 0usize..6, t in 0usize..6, seed in any::<u64>()) {
        let rs = rings();
        let plain = ring_homs(&rs[s], &rs[t], &Constraints::new(), &SearchOptions::default()).unwrap();
        let opts = SearchOptions { shuffle_seed: Some(seed), ..SearchOptions::default() };
        prop_assert_eq!(plain, ring_homs(&rs[s], &rs[t], &Constraints::new(), &opts).unwrap());
    }

    #[test]
    fn group_hom_search_ignores_shuffling(g in 1usize..7, k in 1usize..7, seed in any::<u64>()) {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let pick = |n: usize| if n == 6 { s3.clone() } else { cyclic(n) };
        let (g, k) = (pick(g), pick(k));
        let plain = group_homs(&g, &k, &Constraints::new(), &SearchOptions::default()).unwrap();
        let opts = SearchOptions { shuffle_seed: Some(seed), ..SearchOptions::default() };
        prop_assert_eq!(plain, group_homs(&g, &k, &Constraints::new(), &opts).unwrap());
    }

    #[test]
    fn twisted_ring_is_associative_and_distributive(i in 0usize..5, x in any::<usize>(), y in any::<usize>(), z in any::<usize>()) {
        let tw = twisted(i);
        let r = tw.ring();
        let (x, y, z) = (x % r.order(), y % r.order(), z % r.order());
        prop_assert_eq!(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z)));
        prop_assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
        prop_assert_eq!(r.mul(r.add(x, y), z), r.add(r.mul(x, z), r.mul(y, z)));
    }

    #[test]
    fn monomials_multiply_by_the_twist(i in 0usize..5, a in any::<usize>(), b in any::<usize>(), g in any::<usize>(), h in any::<usize>()) {
        let tw = twisted(i);
        let (base, grp, act) = (tw.base(), tw.action().group(), tw.action());
        let (a, b) = (a % base.order(), b % base.order());
        let (g, h) = (g % grp.order(), h % grp.order());
        let lhs = tw.ring().mul(tw.monomial(a, g), tw.monomial(b, h));
        let coeff = base.mul(a, act.aut().apply(act.theta().apply(g), b));
        prop_assert_eq!(lhs, tw.monomial(coeff, grp.op(g, h)));
    }

    #[test]
    fn coefficients_round_trip(i in 0usize..5, seed in proptest::collection::vec(any::<usize>(), 4)) {
        let tw = twisted(i);
        let c: Vec<usize> = seed.iter().take(tw.action().group().order()).map(|s| s % tw.base().order()).collect();
        prop_assert_eq!(tw.coefficients(tw.from_coefficients(&c)), c);
    }

    #[test]
    fn formula_and_table_agree(i in 0usize..5, x in any::<usize>(), y in any::<usize>()) {
        let table = twisted(i);
        let formula = twistify(&actions()[i], &Caps { materialize: 0, ..caps() }).unwrap();
        prop_assert!(!formula.ring().is_tabulated());
        let (x, y) = (x % table.ring().order(), y % table.ring().order());
        prop_assert_eq!(table.ring().mul(x, y), formula.ring().mul(x, y));
        prop_assert_eq!(table.ring().add(x, y), formula.ring().add(x, y));
    }

    #[test]
    fn pi_round_trips(a in 0usize..5, o in 0usize..4, k in any::<usize>()) {
        let caps = caps();
        let fam = f4_family(&caps).unwrap();
        let act = &fam.actions[a].1;
        let obj = &fam.objects[o].1;
        let tw = twistify(act, &caps).unwrap();
        let semi = semilinearize(obj, &fam.aut, &caps).unwrap();
        let homs = enumerate_homs_under(&tw, obj, &caps).unwrap().homs;
        prop_assume!(!homs.is_empty());
        let f = &homs[k % homs.len()];
        let alpha = pi(f, &tw, &semi).unwrap();
        prop_assert_eq!(&pi_inverse(&alpha, &tw, &semi).unwrap(), f);
    }

    #[test]
    fn semi_product_is_diagonal(o in 0usize..4, p in any::<usize>(), q in any::<usize>()) {
        let caps = caps();
        let fam = f4_family(&caps).unwrap();
        let semi = semilinearize(&fam.objects[o].1, &fam.aut, &caps).unwrap();
        let (p, q) = (p % semi.order(), q % semi.order());
        let (a, b, c) = (semi.pair(p), semi.pair(q), semi.pair(semi.group().op(p, q)));
        prop_assert_eq!(c.unit, semi.base().target().mul(a.unit, b.unit));
        prop_assert_eq!(c.aut, fam.aut.group().op(a.aut, b.aut));
        let composed: Vec<usize> = fam.ring.elements().map(|r| fam.aut.apply(a.aut, fam.aut.apply(b.aut, r))).collect();
        prop_assert_eq!(fam.aut.get(c.aut).table(), &composed[..]);
    }
}
