mod common;

use std::sync::Arc;

use common::*;
use twistsemi::abelian::{endomorphism_ring, FiniteAbelianGroup};
use twistsemi::actions::{check_coslice_morphism, check_slice_morphism, CosliceRingMorphism, GroupAction, SliceGroupMorphism};
use twistsemi::adjunction::{
    enumerate_homs_over, enumerate_homs_under, pi, pi_inverse, verify_bijection, verify_modules_corollary,
    NaturalityContext,
};
use twistsemi::aut::enumerate_units;
use twistsemi::group::FiniteGroup;
use twistsemi::hom::{GroupHom, RingHom};
use twistsemi::oracle;
use twistsemi::ring::FiniteRing;
use twistsemi::search::{group_homs, ring_homs, Constraints, SearchOptions};
use twistsemi::semilin::{semilinearize, semilinearize_morphism, ModuleStructure};
use twistsemi::twist::{twistify, twistify_morphism};
use twistsemi::Error;

fn isomorphic(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> bool {
    a.order() == b.order()
        && ring_homs(a, b, &Constraints::new(), &SearchOptions::default())
            .unwrap()
            .iter()
            .any(RingHom::is_bijective)
}

/// Polynomials over F₂ of degree < 2 as bit pairs, reduced by x² = x + 1.
fn f4_mul_oracle(a: usize, b: usize) -> usize {
    let mut prod = 0;
    for i in 0..2 {
        if b >> i & 1 == 1 {
            prod ^= a << i;
        }
    }
    if prod & 4 != 0 {
        prod ^= 0b111;
    }
    prod
}

#[test]
fn f4_tables_match_polynomial_arithmetic() {
    let r = f4();
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(r.mul(a, b), f4_mul_oracle(a, b));
            assert_eq!(r.add(a, b), a ^ b);
        }
    }
    assert_eq!(r.mul(2, 2), 3);
}

#[test]
fn corrupted_z4_names_a_triple() {
    let add: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
    let mut mul: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a * b % 4).collect()).collect();
    mul[2][3] = 1;
    match FiniteRing::from_tables("bad", &add, &mul) {
        Err(Error::NotAssociative(..)) | Err(Error::NotDistributive(..)) => {}
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn automorphism_groups() {
    for n in 2..=12 {
        assert_eq!(auts(&zmod(n)).len(), 1, "Z/{n}");
    }
    let a = auts(&f4());
    let frob: Vec<usize> = (0..4).map(|x| f4_mul_oracle(x, x)).collect();
    assert_eq!(a.len(), 2);
    assert_eq!(a.get(1).table(), &frob[..]);
    let s = auts(&z2xz2());
    assert_eq!(s.get(1).table(), &[0, 2, 1, 3]);
}

#[test]
fn unit_groups() {
    assert_eq!(enumerate_units(&zmod(4)).elements(), &[1, 3]);
    assert_eq!(enumerate_units(&f4()).elements(), &[1, 2, 3]);
    let m = m2f2();
    let brute = m
        .elements()
        .filter(|&a| m.elements().any(|b| m.mul(a, b) == m.one() && m.mul(b, a) == m.one()))
        .count();
    assert_eq!(brute, 6);
    assert_eq!(enumerate_units(&m).len(), 6);
}

#[test]
fn endomorphism_rings() {
    let caps = caps();
    let e2 = endomorphism_ring(&FiniteAbelianGroup::new(vec![2]).unwrap(), &caps).unwrap();
    assert!(isomorphic(e2.ring(), &zmod(2)));
    let e22 = endomorphism_ring(&FiniteAbelianGroup::new(vec![2, 2]).unwrap(), &caps).unwrap();
    assert_eq!(e22.ring().order(), 16);
    assert!(isomorphic(e22.ring(), &m2f2()));
    let e4 = endomorphism_ring(&FiniteAbelianGroup::new(vec![4]).unwrap(), &caps).unwrap();
    assert!(isomorphic(e4.ring(), &zmod(4)));
    // End(Z/4) is multiplication by k, so every endomorphism is x ↦ k·x
    for e in e4.ring().elements() {
        let t = e4.map(e);
        assert!(t.iter().enumerate().all(|(x, &y)| y == x * t[1] % 4));
    }
}

#[test]
fn hom_counts_agree_with_brute_force() {
    let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
    let opts = SearchOptions::default();
    let none = Constraints::new();
    assert_eq!(ring_homs(&zmod(4), &zmod(2), &none, &opts).unwrap(), oracle::ring_homs_brute(&zmod(4), &zmod(2)));
    assert_eq!(ring_homs(&zmod(4), &zmod(2), &none, &opts).unwrap().len(), 1);
    assert_eq!(group_homs(&cyclic(2), &s3, &none, &opts).unwrap(), oracle::group_homs_brute(&cyclic(2), &s3));
    assert_eq!(group_homs(&cyclic(2), &s3, &none, &opts).unwrap().len(), 4);
    assert!(oracle::ring_homs_brute(&f4(), &zmod(4)).is_empty());
    assert!(ring_homs(&f4(), &zmod(4), &none, &opts).unwrap().is_empty());
}

#[test]
fn slice_morphism_examples() {
    let a = auts(&f4());
    let c2 = cyclic(2);
    let v4 = Arc::new(FiniteGroup::product(&[c2.clone(), c2.clone()]).unwrap());
    let frob = nontrivial(&c2, &a);
    let psi = GroupAction::from_table(v4.clone(), a.clone(), vec![0, 0, 1, 1]).unwrap();
    let incl = GroupHom::new(c2.clone(), v4, vec![0, 2]).unwrap();
    assert!(check_slice_morphism(&frob, &psi, incl).is_ok());
    let triv = GroupAction::trivial(c2.clone(), a);
    assert_eq!(
        check_slice_morphism(&frob, &triv, GroupHom::identity(&c2)).unwrap_err(),
        Error::NotOverAut { g: 1, r: 2 }
    );
}

#[test]
fn flagship_twisted_ring_is_the_matrix_ring() {
    let (act, _) = flagship();
    let tw = twistify(&act, &caps()).unwrap();
    assert_eq!(tw.ring().order(), 16);
    let xg = tw.monomial(2, 1);
    assert_eq!(tw.ring().mul(xg, xg), tw.ring().one());
    assert!(isomorphic(tw.ring(), &m2f2()));
}

#[test]
fn augmentation() {
    let a = auts(&zmod(4));
    let src = GroupAction::trivial(cyclic(2), a.clone());
    let one = Arc::new(FiniteGroup::trivial());
    let dst = GroupAction::trivial(one.clone(), a);
    let j = check_slice_morphism(&src, &dst, GroupHom::new(cyclic(2), one, vec![0, 0]).unwrap()).unwrap();
    let f = twistify_morphism(&j, &caps()).unwrap();
    let tw = twistify(&src, &caps()).unwrap();
    for x in tw.ring().elements() {
        let c = tw.coefficients(x);
        assert_eq!(f.map().apply(x), (c[0] + c[1]) % 4);
    }
    let id = twistify_morphism(&SliceGroupMorphism::identity(&src), &caps()).unwrap();
    assert_eq!(*id.map(), RingHom::identity(tw.ring()));
}

#[test]
fn semi_of_identity_on_f4() {
    let r = f4();
    let semi = semilinearize(&RingHom::identity(&r), &auts(&r), &caps()).unwrap();
    assert_eq!(semi.order(), 3);
    assert!(semi.group().is_abelian());
    assert!(semi.pairs().iter().all(|p| p.aut == 0));
}

#[test]
fn semi_of_flagship_structure_map() {
    let (act, _) = flagship();
    let tw = twistify(&act, &caps()).unwrap();
    let semi = semilinearize(tw.structure_map(), act.aut(), &caps()).unwrap();
    assert_eq!(semi.order(), 6);
    assert!(!semi.group().is_abelian());
    assert_eq!(semi.fiber(0).len(), 3);
    assert_eq!(semi.fiber(1).len(), 3);
    // brute force over all units and automorphisms
    let t = tw.ring();
    let s = tw.structure_map();
    let brute = enumerate_units(t)
        .elements()
        .iter()
        .flat_map(|&u| (0..2).map(move |phi| (u, phi)))
        .filter(|&(u, phi)| {
            act.ring()
                .elements()
                .all(|r| t.mul(u, s.apply(r)) == t.mul(s.apply(act.aut().apply(phi, r)), u))
        })
        .count();
    assert_eq!(brute, 6);
}

#[test]
fn semi_of_regular_module_is_gamma_l1() {
    let (act, module) = flagship();
    let r = act.ring();
    let semi = semilinearize(module.chi(), act.aut(), &caps()).unwrap();
    assert_eq!(semi.order(), 6);
    let add = module.regular_identification().unwrap();
    // x ↦ u·x^(2^i)
    for u in 1..4 {
        for i in 0..2 {
            let table: Vec<usize> = module
                .module()
                .elements()
                .map(|m| {
                    let x = add.to_ring[m];
                    let y = if i == 0 { x } else { r.mul(x, x) };
                    add.from_ring[r.mul(u, y)]
                })
                .collect();
            let e = module.endo().element_of(&table).unwrap();
            assert!(semi.index_of(e, i).is_some(), "u = {u}, i = {i}");
        }
    }
}

#[test]
fn semi_of_an_isomorphism_under_r() {
    let (act, module) = flagship();
    let caps = caps();
    let tw = twistify(&act, &caps).unwrap();
    let homs = enumerate_homs_under(&tw, module.chi(), &caps).unwrap();
    let h = homs.homs.iter().find(|h| h.is_bijective()).unwrap().clone();
    let h = check_coslice_morphism(tw.structure_map(), module.chi(), h).unwrap();
    let s1 = semilinearize(tw.structure_map(), act.aut(), &caps).unwrap();
    let s2 = semilinearize(module.chi(), act.aut(), &caps).unwrap();
    let m = semilinearize_morphism(&h, &s1, &s2).unwrap();
    let mut image = m.table().to_vec();
    image.sort_unstable();
    image.dedup();
    assert_eq!(image.len(), 6);
    let id = CosliceRingMorphism::identity(module.chi());
    assert_eq!(semilinearize_morphism(&id, &s2, &s2).unwrap(), GroupHom::identity(s2.group()));
}

#[test]
fn trivial_group_gives_exactly_one_hom() {
    let caps = caps();
    let (act, module) = flagship();
    let one = GroupAction::trivial(Arc::new(FiniteGroup::trivial()), act.aut().clone());
    let tw = twistify(&one, &caps).unwrap();
    let semi = semilinearize(module.chi(), act.aut(), &caps).unwrap();
    let under = enumerate_homs_under(&tw, module.chi(), &caps).unwrap();
    assert_eq!(under.homs.len(), 1);
    assert_eq!(enumerate_homs_over(&one, &semi, &caps).unwrap().homs.len(), 1);
    let alpha = pi(&under.homs[0], &tw, &semi).unwrap();
    assert_eq!(alpha.table(), &[semi.group().identity()]);
    assert!(verify_bijection(&tw, &semi, &caps).unwrap().passed());
}

#[test]
fn pi_of_identity_is_the_unit() {
    let caps = caps();
    let r = zmod(4);
    let act = GroupAction::trivial(cyclic(2), auts(&r));
    let tw = twistify(&act, &caps).unwrap();
    let semi = semilinearize(tw.structure_map(), act.aut(), &caps).unwrap();
    let eta = pi(&RingHom::identity(tw.ring()), &tw, &semi).unwrap();
    for g in 0..2 {
        let p = semi.pair(eta.apply(g));
        assert_eq!((p.unit, p.aut), (tw.group_element(g), 0));
    }
    let report = verify_bijection(&tw, &semi, &caps).unwrap();
    assert!(report.passed(), "{report:#?}");
}

#[test]
fn pi_inverse_of_the_trivial_hom() {
    let caps = caps();
    let r = zmod(4);
    let act = GroupAction::trivial(cyclic(2), auts(&r));
    let tw = twistify(&act, &caps).unwrap();
    let chi = RingHom::identity(&r);
    let semi = semilinearize(&chi, act.aut(), &caps).unwrap();
    let one = semi.group().identity();
    let alpha = GroupHom::new(cyclic(2), semi.group().clone(), vec![one, one]).unwrap();
    let f = pi_inverse(&alpha, &tw, &semi).unwrap();
    for x in tw.ring().elements() {
        let c = tw.coefficients(x);
        assert_eq!(f.apply(x), (c[0] + c[1]) % 4);
    }
}

#[test]
fn flagship_pi_inverse_on_monomials() {
    let caps = caps();
    let (act, module) = flagship();
    let tw = twistify(&act, &caps).unwrap();
    let semi = semilinearize(module.chi(), act.aut(), &caps).unwrap();
    let r = act.ring();
    let add = module.regular_identification().unwrap();
    let frob_table: Vec<usize> = (0..4).map(|m| add.from_ring[r.mul(add.to_ring[m], add.to_ring[m])]).collect();
    let frob = module.endo().element_of(&frob_table).unwrap();
    let alpha = GroupHom::new(
        act.group().clone(),
        semi.group().clone(),
        vec![semi.group().identity(), semi.index_of(frob, 1).unwrap()],
    )
    .unwrap();
    let f = pi_inverse(&alpha, &tw, &semi).unwrap();
    let s = module.endo().ring();
    for (rr, g, mono) in tw.monomials() {
        let expected = if g == 0 {
            module.chi().apply(rr)
        } else {
            s.mul(module.chi().apply(rr), frob)
        };
        assert_eq!(f.apply(mono), expected);
    }
    assert_eq!(pi(&f, &tw, &semi).unwrap(), alpha);
}

#[test]
fn homs_under_trivial_action_into_the_base() {
    let caps = caps();
    for (r, n, expected) in [(zmod(4), 2, 2), (f4(), 3, 3), (f4(), 2, 1)] {
        let act = GroupAction::trivial(cyclic(n), auts(&r));
        let tw = twistify(&act, &caps).unwrap();
        let chi = RingHom::identity(&r);
        let homs = enumerate_homs_under(&tw, &chi, &caps).unwrap().homs;
        assert_eq!(homs.len(), expected, "{} over C{n}", r.label());
        assert_eq!(homs, oracle::homs_under_by_basis(&tw, &chi));
    }
}

#[test]
fn homs_over_trivial_action_count_homs_into_the_fiber() {
    let caps = caps();
    let (act, module) = flagship();
    let semi = semilinearize(module.chi(), act.aut(), &caps).unwrap();
    let fiber = semi.fiber(0);
    let pos = |x: usize| fiber.iter().position(|&y| y == x).unwrap();
    let table: Vec<Vec<usize>> = fiber
        .iter()
        .map(|&a| fiber.iter().map(|&b| pos(semi.group().op(a, b))).collect())
        .collect();
    let fiber_group = Arc::new(FiniteGroup::from_table("fiber", &table).unwrap());
    for n in 1..=6 {
        let g = cyclic(n);
        let triv = GroupAction::trivial(g.clone(), act.aut().clone());
        let over = enumerate_homs_over(&triv, &semi, &caps).unwrap().homs.len();
        let direct = group_homs(&g, &fiber_group, &Constraints::new(), &SearchOptions::default())
            .unwrap()
            .len();
        assert_eq!(over, direct, "C{n}");
    }
}

#[test]
fn zero_module() {
    let caps = caps();
    let (act, _) = flagship();
    let zero = FiniteAbelianGroup::new(vec![]).unwrap();
    let m = ModuleStructure::from_hom_index(act.ring(), zero, 0, &caps).unwrap();
    let report = verify_modules_corollary(&act, &m, &caps).unwrap();
    assert!(report.passed());
    assert_eq!(report.cardinalities["extensions"], 1);
    assert_eq!(report.cardinalities["semilinear_actions"], 1);
}

#[test]
fn z4_module_corollary() {
    let caps = caps();
    let r = zmod(4);
    let act = GroupAction::trivial(cyclic(2), auts(&r));
    let m = ModuleStructure::from_hom_index(&r, FiniteAbelianGroup::new(vec![4]).unwrap(), 0, &caps).unwrap();
    let report = verify_modules_corollary(&act, &m, &caps).unwrap();
    assert!(report.passed(), "{report:#?}");
    // involutions of End(Z/4) = Z/4 commuting with everything: 1 and 3
    let s = m.endo().ring();
    let involutions = s.elements().filter(|&e| s.mul(e, e) == s.one()).count();
    assert_eq!(report.cardinalities["extensions"], involutions);
    assert_eq!(involutions, 2);
}

#[test]
fn identity_naturality_square() {
    let caps = caps();
    let (act, module) = flagship();
    let ctx = NaturalityContext::new(
        &SliceGroupMorphism::identity(&act),
        &CosliceRingMorphism::identity(module.chi()),
        &caps,
    )
    .unwrap();
    let (mus, _) = ctx.hom_sets(&caps).unwrap();
    for mu in &mus.homs {
        let o = ctx.evaluate(mu, mu).unwrap();
        assert!(o.left && o.right && o.reduction_holds());
    }
}

#[test]
fn trivial_action_into_its_own_group_ring() {
    let caps = caps();
    for (r, n, expected) in [(zmod(2), 2, 2), (zmod(2), 3, 3), (zmod(3), 2, 4)] {
        let act = GroupAction::trivial(cyclic(n), auts(&r));
        let tw = twistify(&act, &caps).unwrap();
        let semi = semilinearize(tw.structure_map(), act.aut(), &caps).unwrap();
        let report = verify_bijection(&tw, &semi, &caps).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.cardinalities["hom_under"], expected);
        let under = oracle::homs_under_by_basis(&tw, tw.structure_map());
        let over = oracle::homs_over_brute(act.theta(), semi.to_aut());
        assert_eq!((under.len(), over.len()), (expected, expected));
        if tw.ring().order() <= 4 {
            let naive = oracle::ring_homs_brute(tw.ring(), tw.ring())
                .into_iter()
                .filter(|f| r.elements().all(|x| f.apply(tw.structure_map().apply(x)) == tw.structure_map().apply(x)))
                .count();
            assert_eq!(naive, expected);
        }
    }
}
