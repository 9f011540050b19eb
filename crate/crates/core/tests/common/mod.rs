#![allow(dead_code)]

use std::sync::Arc;

use twistsemi::actions::{make_action, GroupAction};
use twistsemi::aut::{enumerate_automorphisms, AutGroup};
use twistsemi::group::FiniteGroup;
use twistsemi::ring::FiniteRing;
use twistsemi::semilin::ModuleStructure;
use twistsemi::Caps;

pub fn caps() -> Caps {
    Caps::default()
}

/// F₄ = F₂[x]/(x² + x + 1), elements 0, 1, x, x+1.
pub fn f4() -> Arc<FiniteRing> {
    Arc::new(FiniteRing::gf(2, &[1, 1, 1]).unwrap())
}

pub fn zmod(n: usize) -> Arc<FiniteRing> {
    Arc::new(FiniteRing::zmod(n).unwrap())
}

pub fn z2xz2() -> Arc<FiniteRing> {
    Arc::new(FiniteRing::product(&[zmod(2), zmod(2)]).unwrap())
}

pub fn m2f2() -> Arc<FiniteRing> {
    Arc::new(FiniteRing::matrix(2, 2).unwrap())
}

pub fn auts(r: &Arc<FiniteRing>) -> Arc<AutGroup> {
    Arc::new(enumerate_automorphisms(r, &caps()).unwrap())
}

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n).unwrap())
}

/// The group's generator 1 acts by automorphism 1 (Frobenius on F₄, swap on
/// Z/2 × Z/2).
pub fn nontrivial(group: &Arc<FiniteGroup>, aut: &Arc<AutGroup>) -> GroupAction {
    make_action(group, aut, &[(1, 1)]).unwrap()
}

/// F₄, C2 acting by Frobenius, M = F₄ regular.
pub fn flagship() -> (GroupAction, ModuleStructure) {
    let r = f4();
    let a = auts(&r);
    let act = nontrivial(&cyclic(2), &a);
    (act, ModuleStructure::regular(&r, &caps()).unwrap())
}
