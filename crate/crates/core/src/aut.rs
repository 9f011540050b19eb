//! Ring automorphism groups and unit groups.

use std::collections::HashMap;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hom::RingHom;
use crate::ring::FiniteRing;
use crate::search::{ring_homs, Constraints, SearchOptions};
use crate::Elem;

/// `Aut_Ring(R)`: every ring automorphism of `ring`, sorted by value table
/// (so the identity comes first), realized as a group under composition.
#[derive(Debug, Clone)]
pub struct AutGroup {
    ring: Arc<FiniteRing>,
    autos: Vec<RingHom>,
    index: HashMap<Vec<Elem>, usize>,
    group: Arc<FiniteGroup>,
}

impl PartialEq for AutGroup {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.autos == other.autos
    }
}

impl Eq for AutGroup {}

impl AutGroup {
    fn from_autos(ring: Arc<FiniteRing>, mut autos: Vec<RingHom>) -> Result<Self> {
        autos.sort_by(|a, b| a.table().cmp(b.table()));
        let index: HashMap<Vec<Elem>, usize> = autos
            .iter()
            .enumerate()
            .map(|(i, a)| (a.table().to_vec(), i))
            .collect();
        let m = autos.len();
        let mut op = Vec::with_capacity(m * m);
        for a in &autos {
            for b in &autos {
                let c: Vec<Elem> = b.table().iter().map(|&x| a.apply(x)).collect();
                let k = *index.get(&c).ok_or_else(|| {
                    Error::NotAGroup {
                        reason: "automorphisms not closed under composition",
                        witness: vec![],
                    }
                })?;
                op.push(k);
            }
        }
        let names = (0..m)
            .map(|i| if i == 0 { "id".to_string() } else { format!("φ{i}") })
            .collect();
        let group = FiniteGroup::from_flat(format!("Aut({})", ring.label()), names, op)?;
        if group.identity() != 0 {
            return Err(Error::TheoremViolation("identity automorphism is not first".into()));
        }
        Ok(AutGroup {
            ring,
            autos,
            index,
            group: Arc::new(group),
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.autos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.autos.is_empty()
    }

    pub fn autos(&self) -> &[RingHom] {
        &self.autos
    }

    pub fn get(&self, i: usize) -> &RingHom {
        &self.autos[i]
    }

    /// `φ_i(r)`.
    #[inline]
    pub fn apply(&self, i: usize, r: Elem) -> Elem {
        self.autos[i].apply(r)
    }

    /// Index of the automorphism with value table `perm`, if any.
    pub fn index_of(&self, perm: &[Elem]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    /// Composition `φ_i ∘ φ_j` realized as a group with elements `0..len`.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
}

/// Enumerates `Aut_Ring(ring)` with the generating-set search.
pub fn enumerate_automorphisms(ring: &Arc<FiniteRing>, caps: &Caps) -> Result<AutGroup> {
    Caps::ensure("ring_order", caps.ring_order, ring.order())?;
    let homs = ring_homs(ring, ring, &Constraints::new(), &SearchOptions::from_caps(caps))?;
    let autos = homs.into_iter().filter(RingHom::is_bijective).collect();
    AutGroup::from_autos(ring.clone(), autos)
}

/// Builds an [`AutGroup`] from an externally produced list of automorphisms
/// (used to compare search strategies).
pub fn aut_group_from(ring: &Arc<FiniteRing>, autos: Vec<RingHom>) -> Result<AutGroup> {
    if autos.iter().any(|a| a.source() != ring || a.target() != ring || !a.is_bijective()) {
        return Err(Error::Incompatible("not an automorphism list of this ring".into()));
    }
    AutGroup::from_autos(ring.clone(), autos)
}

/// The unit group `R^×` in ascending element order, with inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Units {
    elements: Vec<Elem>,
    inverse: HashMap<Elem, Elem>,
}

impl Units {
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.inverse.contains_key(&x)
    }

    pub fn inverse(&self, x: Elem) -> Option<Elem> {
        self.inverse.get(&x).copied()
    }
}

/// Elements with a two-sided multiplicative inverse.
pub fn enumerate_units(ring: &FiniteRing) -> Units {
    let one = ring.one();
    let mut elements = Vec::new();
    let mut inverse = HashMap::new();
    for a in ring.elements() {
        if let Some(b) = ring
            .elements()
            .find(|&b| ring.mul(a, b) == one && ring.mul(b, a) == one)
        {
            elements.push(a);
            inverse.insert(a, b);
        }
    }
    Units { elements, inverse }
}

/// Two-sided inverse of a single element, without enumerating all units.
pub fn unit_inverse(ring: &FiniteRing, a: Elem) -> Option<Elem> {
    let one = ring.one();
    ring.elements()
        .find(|&b| ring.mul(a, b) == one && ring.mul(b, a) == one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn zmod_has_trivial_automorphism_group() {
        for n in 1..=12 {
            let r = Arc::new(FiniteRing::zmod(n).unwrap());
            assert_eq!(enumerate_automorphisms(&r, &caps()).unwrap().len(), 1, "Z/{n}");
        }
    }

    #[test]
    fn f4_automorphisms_are_identity_and_frobenius() {
        let f4 = Arc::new(FiniteRing::poly_quotient(2, &[1, 1, 1]).unwrap());
        let aut = enumerate_automorphisms(&f4, &caps()).unwrap();
        assert_eq!(aut.len(), 2);
        assert_eq!(aut.get(0).table(), &[0, 1, 2, 3]);
        let frob: Vec<Elem> = f4.elements().map(|a| f4.mul(a, a)).collect();
        assert_eq!(aut.get(1).table(), frob.as_slice());
        assert_eq!(aut.group().op(1, 1), 0);
    }

    #[test]
    fn product_of_two_z2_has_swap() {
        let z2 = Arc::new(FiniteRing::zmod(2).unwrap());
        let r = Arc::new(FiniteRing::product(&[z2.clone(), z2]).unwrap());
        let aut = enumerate_automorphisms(&r, &caps()).unwrap();
        assert_eq!(aut.len(), 2);
        assert_eq!(aut.get(1).table(), &[0, 2, 1, 3]);
    }

    #[test]
    fn unit_counts() {
        let z4 = FiniteRing::zmod(4).unwrap();
        assert_eq!(enumerate_units(&z4).elements(), &[1, 3]);
        let f4 = FiniteRing::poly_quotient(2, &[1, 1, 1]).unwrap();
        assert_eq!(enumerate_units(&f4).elements(), &[1, 2, 3]);
        let m2 = FiniteRing::matrix(2, 2).unwrap();
        let u = enumerate_units(&m2);
        assert_eq!(u.len(), 6);
        for &x in u.elements() {
            assert_eq!(m2.mul(x, u.inverse(x).unwrap()), m2.one());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let r = Arc::new(FiniteRing::zmod(9).unwrap());
        let small = Caps {
            ring_order: 8,
            ..Caps::default()
        };
        assert_eq!(
            enumerate_automorphisms(&r, &small).unwrap_err(),
            Error::CapExceeded {
                cap: "ring_order",
                limit: 8,
                actual: 9
            }
        );
    }
}
