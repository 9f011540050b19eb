use twistsemi::actions::{CosliceRingMorphism, SliceGroupMorphism};
use twistsemi::family::{f4_family, z4_family, Family};
use twistsemi::hom::{GroupHom, RingHom};
use twistsemi::semilin::{semilinearize, semilinearize_morphism, SemiGroup};
use twistsemi::twist::{twistify, twistify_morphism};
use twistsemi::Caps;

fn families() -> Vec<Family> {
    let caps = Caps::default();
    vec![f4_family(&caps).unwrap(), z4_family(&caps).unwrap()]
}

#[test]
fn twistification_preserves_identities() {
    let caps = Caps::default();
    for fam in families() {
        for (name, act) in &fam.actions {
            let tw = twistify(act, &caps).unwrap();
            let id = twistify_morphism(&SliceGroupMorphism::identity(act), &caps).unwrap();
            assert_eq!(*id.map(), RingHom::identity(tw.ring()), "{name}");
        }
    }
}

#[test]
fn twistification_preserves_composition() {
    let caps = Caps::default();
    let mut laws = 0;
    for fam in families() {
        for (a, b) in fam.slice_chains() {
            let composite = twistify_morphism(&b.after(a).unwrap(), &caps).unwrap();
            let stepwise = twistify_morphism(b, &caps)
                .unwrap()
                .after(&twistify_morphism(a, &caps).unwrap())
                .unwrap();
            assert_eq!(composite, stepwise);
            laws += 1;
        }
    }
    assert!(laws >= 5, "only {laws} chains");
}

fn semi_of(fam: &Family, object: &RingHom) -> SemiGroup {
    semilinearize(object, &fam.aut, &Caps::default()).unwrap()
}

#[test]
fn semilinearization_preserves_identities() {
    for fam in families() {
        for (name, obj) in &fam.objects {
            let s = semi_of(&fam, obj);
            let id = semilinearize_morphism(&CosliceRingMorphism::identity(obj), &s, &s).unwrap();
            assert_eq!(id, GroupHom::identity(s.group()), "{name}");
        }
    }
}

#[test]
fn semilinearization_preserves_composition() {
    let mut laws = 0;
    for fam in families() {
        for (a, b) in fam.coslice_chains() {
            let (s0, s1, s2) = (semi_of(&fam, a.source()), semi_of(&fam, a.target()), semi_of(&fam, b.target()));
            let composite = semilinearize_morphism(&b.after(a).unwrap(), &s0, &s2).unwrap();
            let stepwise = semilinearize_morphism(b, &s1, &s2)
                .unwrap()
                .after(&semilinearize_morphism(a, &s0, &s1).unwrap())
                .unwrap();
            assert_eq!(composite, stepwise);
            laws += 1;
        }
    }
    assert!(laws >= 5, "only {laws} chains");
}
