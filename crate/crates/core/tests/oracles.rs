mod common;

use std::sync::Arc;

use common::*;
use twistsemi::actions::GroupAction;
use twistsemi::adjunction::{enumerate_homs_over, enumerate_homs_under};
use twistsemi::family::{f4_family, z4_family, Family};
use twistsemi::group::FiniteGroup;
use twistsemi::hom::RingHom;
use twistsemi::oracle;
use twistsemi::ring::FiniteRing;
use twistsemi::search::{group_homs, ring_homs, Constraints, SearchOptions};
use twistsemi::semilin::semilinearize;
use twistsemi::twist::{twistify, TwistedGroupRing};

/// Upper triangular 2×2 matrices over F₂, `(a, b, d) ↦ [a b; 0 d]`, index
/// `4a + 2b + d`.
fn upper_triangular() -> Arc<FiniteRing> {
    let dec = |x: usize| (x >> 2 & 1, x >> 1 & 1, x & 1);
    let enc = |(a, b, d): (usize, usize, usize)| (a % 2) << 2 | (b % 2) << 1 | d % 2;
    let add: Vec<Vec<usize>> = (0..8).map(|x| (0..8).map(|y| x ^ y).collect()).collect();
    let mul: Vec<Vec<usize>> = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let ((a, b, d), (e, f, h)) = (dec(x), dec(y));
                    enc((a * e, a * f + b * h, d * h))
                })
                .collect()
        })
        .collect();
    Arc::new(FiniteRing::from_tables("T2(F2)", &add, &mul).unwrap())
}

fn small_rings() -> Vec<Arc<FiniteRing>> {
    let mut rings: Vec<Arc<FiniteRing>> = (1..=8).map(zmod).collect();
    rings.extend([
        f4(),
        z2xz2(),
        Arc::new(FiniteRing::poly_quotient(2, &[0, 0, 1]).unwrap()),
        Arc::new(FiniteRing::poly_quotient(2, &[0, 1, 1]).unwrap()),
        Arc::new(FiniteRing::poly_quotient(2, &[0, 0, 0, 1]).unwrap()),
        Arc::new(FiniteRing::gf(2, &[1, 1, 0, 1]).unwrap()),
        Arc::new(FiniteRing::product(&[zmod(2), zmod(4)]).unwrap()),
        Arc::new(FiniteRing::product(&[zmod(2), zmod(2), zmod(2)]).unwrap()),
        Arc::new(FiniteRing::product(&[zmod(2), f4()]).unwrap()),
        upper_triangular(),
    ]);
    rings
}

#[test]
fn automorphism_search_matches_all_permutations() {
    for r in small_rings() {
        let fast: Vec<Vec<usize>> = auts(&r).autos().iter().map(|a| a.table().to_vec()).collect();
        assert_eq!(fast, oracle::automorphisms_brute(&r), "{}", r.label());
    }
}

#[test]
fn ring_hom_search_matches_all_maps() {
    let rings = small_rings();
    let opts = SearchOptions::default();
    let mut pairs = 0;
    for s in &rings {
        for t in &rings {
            if (t.order() as f64).powi(s.order() as i32) > 1e6 {
                continue;
            }
            let fast = ring_homs(s, t, &Constraints::new(), &opts).unwrap();
            assert_eq!(fast, oracle::ring_homs_brute(s, t), "{} → {}", s.label(), t.label());
            pairs += 1;
        }
    }
    assert!(pairs > 100);
}

#[test]
fn group_hom_search_matches_all_maps() {
    let mut groups: Vec<Arc<FiniteGroup>> = (1..=6).map(cyclic).collect();
    groups.push(Arc::new(FiniteGroup::product(&[cyclic(2), cyclic(2)]).unwrap()));
    groups.push(Arc::new(FiniteGroup::symmetric(3).unwrap()));
    let opts = SearchOptions::default();
    for g in &groups {
        for k in &groups {
            if (k.order() as f64).powi(g.order() as i32) > 1e6 {
                continue;
            }
            let fast = group_homs(g, k, &Constraints::new(), &opts).unwrap();
            assert_eq!(fast, oracle::group_homs_brute(g, k), "{} → {}", g.label(), k.label());
        }
    }
}

/// Every small twisted ring of the families, paired with every coslice
/// object of its family.
fn small_instances(fam: &Family) -> Vec<(TwistedGroupRing, RingHom)> {
    let caps = caps();
    let mut out = Vec::new();
    for (_, act) in &fam.actions {
        let tw = twistify(act, &caps).unwrap();
        if tw.ring().order() > 16 {
            continue;
        }
        for (_, obj) in &fam.objects {
            out.push((tw.clone(), obj.clone()));
        }
    }
    out
}

#[test]
fn reduced_hom_enumeration_matches_additive_basis_search() {
    let caps = caps();
    let mut cases = 0;
    for fam in [f4_family(&caps).unwrap(), z4_family(&caps).unwrap()] {
        for (tw, obj) in small_instances(&fam) {
            let fast = enumerate_homs_under(&tw, &obj, &caps).unwrap().homs;
            assert_eq!(fast, oracle::homs_under_by_basis(&tw, &obj), "{} → {}", tw.ring().label(), obj.target().label());
            cases += 1;
        }
    }
    // Z/2 × Z/2 with the swap, into every ring it maps to
    let r = z2xz2();
    let act = nontrivial(&cyclic(2), &auts(&r));
    let tw = twistify(&act, &caps).unwrap();
    for target in [m2f2(), zmod(2), r.clone()] {
        for chi in ring_homs(&r, &target, &Constraints::new(), &SearchOptions::default()).unwrap() {
            let fast = enumerate_homs_under(&tw, &chi, &caps).unwrap().homs;
            assert_eq!(fast, oracle::homs_under_by_basis(&tw, &chi));
            cases += 1;
        }
    }
    assert!(cases >= 15, "{cases}");
}

#[test]
fn reduced_hom_enumeration_matches_all_value_tables() {
    // targets of order 2 keep 2^16 tables affordable
    let caps = caps();
    let z2 = zmod(2);
    let instances = [
        GroupAction::trivial(cyclic(2), auts(&zmod(4))),
        nontrivial(&cyclic(2), &auts(&z2xz2())),
        GroupAction::trivial(cyclic(2), auts(&z2xz2())),
    ];
    for act in instances {
        let tw = twistify(&act, &caps).unwrap();
        for chi in ring_homs(act.ring(), &z2, &Constraints::new(), &SearchOptions::default()).unwrap() {
            let naive: Vec<RingHom> = oracle::ring_homs_brute(tw.ring(), &z2)
                .into_iter()
                .filter(|f| act.ring().elements().all(|r| f.apply(tw.structure_map().apply(r)) == chi.apply(r)))
                .collect();
            let fast = enumerate_homs_under(&tw, &chi, &caps).unwrap().homs;
            assert_eq!(fast, naive, "{}", tw.ring().label());
        }
    }
}

#[test]
fn fiber_constrained_search_matches_all_maps() {
    let caps = caps();
    for fam in [f4_family(&caps).unwrap(), z4_family(&caps).unwrap()] {
        for (_, obj) in &fam.objects {
            let semi = semilinearize(obj, &fam.aut, &caps).unwrap();
            for (name, act) in &fam.actions {
                if (semi.order() as f64).powi(act.group().order() as i32) > 1e6 {
                    continue;
                }
                let fast = enumerate_homs_over(act, &semi, &caps).unwrap().homs;
                assert_eq!(fast, oracle::homs_over_brute(act.theta(), semi.to_aut()), "{name}");
            }
        }
    }
}
