//! Ring and group homomorphisms as value tables, validated at construction.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::ring::FiniteRing;
use crate::Elem;

/// A unital ring homomorphism.
#[derive(Clone)]
pub struct RingHom {
    source: Arc<FiniteRing>,
    target: Arc<FiniteRing>,
    map: Vec<Elem>,
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingHom({} -> {}", self.source.label(), self.target.label())?;
        if self.map.len() <= 32 {
            write!(f, ", {:?}", self.map)?;
        }
        write!(f, ")")
    }
}

/// Equal iff same source, same target and identical value tables.
impl PartialEq for RingHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.source == other.source && self.target == other.target
    }
}

impl Eq for RingHom {}

impl RingHom {
    pub fn new(source: Arc<FiniteRing>, target: Arc<FiniteRing>, map: Vec<Elem>) -> Result<Self> {
        let hom = RingHom { source, target, map };
        hom.verify()?;
        Ok(hom)
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> Self {
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            map: ring.elements().collect(),
        }
    }

    fn fail(reason: impl Into<String>, witness: Vec<Elem>) -> Error {
        Error::NotAHomomorphism {
            reason: reason.into(),
            witness,
        }
    }

    fn verify(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.map.len() != s.order() {
            return Err(Error::MalformedTable(format!(
                "hom table has {} entries, source has {}",
                self.map.len(),
                s.order()
            )));
        }
        if let Some(&bad) = self.map.iter().find(|&&v| v >= t.order()) {
            return Err(Error::MalformedTable(format!("hom value {bad} out of range")));
        }
        let f = |x: Elem| self.map[x];
        if f(s.zero()) != t.zero() {
            return Err(Self::fail("zero not preserved", vec![s.zero()]));
        }
        if f(s.one()) != t.one() {
            return Err(Self::fail("one not preserved", vec![s.one()]));
        }
        if let Some(tw) = s.formula() {
            // Additive on each coefficient line, additive across lines and
            // multiplicative on monomials: together this is the full check.
            for g in tw.group.elements() {
                for r1 in tw.base.elements() {
                    for r2 in tw.base.elements() {
                        let lhs = f(tw.monomial(tw.base.add(r1, r2), g));
                        let rhs = t.add(f(tw.monomial(r1, g)), f(tw.monomial(r2, g)));
                        if lhs != rhs {
                            let w = vec![tw.monomial(r1, g), tw.monomial(r2, g)];
                            return Err(Self::fail("addition not preserved", w));
                        }
                    }
                }
            }
            for x in s.elements() {
                let coeffs = tw.decode(x);
                let sum = coeffs
                    .iter()
                    .enumerate()
                    .fold(t.zero(), |acc, (g, &c)| t.add(acc, f(tw.monomial(c, g))));
                if sum != f(x) {
                    return Err(Self::fail("addition not preserved", vec![x]));
                }
            }
            let monomials: Vec<Elem> = tw
                .group
                .elements()
                .flat_map(|g| tw.base.elements().map(move |r| (r, g)))
                .map(|(r, g)| tw.monomial(r, g))
                .collect();
            for &a in &monomials {
                for &b in &monomials {
                    if f(s.mul(a, b)) != t.mul(f(a), f(b)) {
                        return Err(Self::fail("multiplication not preserved", vec![a, b]));
                    }
                }
            }
            return Ok(());
        }
        for a in s.elements() {
            for b in s.elements() {
                if f(s.add(a, b)) != t.add(f(a), f(b)) {
                    return Err(Self::fail("addition not preserved", vec![a, b]));
                }
                if f(s.mul(a, b)) != t.mul(f(a), f(b)) {
                    return Err(Self::fail("multiplication not preserved", vec![a, b]));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FiniteRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteRing> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn table(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &RingHom) -> Result<RingHom> {
        if first.target != self.source {
            return Err(Error::Incompatible(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.label(),
                self.target.label(),
                first.source.label(),
                first.target.label()
            )));
        }
        Ok(RingHom {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    /// Inverse of a bijective hom.
    pub fn inverse(&self) -> Option<RingHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(RingHom {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }
}

/// A group homomorphism.
#[derive(Clone)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<Elem>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupHom({} -> {}, {:?})",
            self.source.label(),
            self.target.label(),
            self.map
        )
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.source == other.source && self.target == other.target
    }
}

impl Eq for GroupHom {}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::MalformedTable(format!(
                "hom table has {} entries, source has {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::MalformedTable(format!("hom value {bad} out of range")));
        }
        if map[source.identity()] != target.identity() {
            return Err(Error::NotAHomomorphism {
                reason: "identity not preserved".into(),
                witness: vec![source.identity()],
            });
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.op(a, b)] != target.op(map[a], map[b]) {
                    return Err(Error::NotAHomomorphism {
                        reason: "product not preserved".into(),
                        witness: vec![a, b],
                    });
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            map: group.elements().collect(),
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, g: Elem) -> Elem {
        self.map[g]
    }

    pub fn table(&self) -> &[Elem] {
        &self.map
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::Incompatible(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.label(),
                self.target.label(),
                first.source.label(),
                first.target.label()
            )));
        }
        Ok(GroupHom {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_mod_two_is_a_hom() {
        let z4 = Arc::new(FiniteRing::zmod(4).unwrap());
        let z2 = Arc::new(FiniteRing::zmod(2).unwrap());
        let h = RingHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(h.apply(3), 1);
        assert!(RingHom::new(z2, z4, vec![0, 1]).is_err());
    }

    #[test]
    fn composition_and_inverse() {
        let f4 = Arc::new(FiniteRing::poly_quotient(2, &[1, 1, 1]).unwrap());
        let frob = RingHom::new(f4.clone(), f4.clone(), vec![0, 1, 3, 2]).unwrap();
        assert_eq!(frob.after(&frob).unwrap(), RingHom::identity(&f4));
        assert_eq!(frob.inverse().unwrap(), frob);
    }

    #[test]
    fn group_hom_rejects_non_hom() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let c3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        assert!(GroupHom::new(c2.clone(), c3.clone(), vec![0, 0]).is_ok());
        assert!(matches!(
            GroupHom::new(c3, c2, vec![0, 1, 0]),
            Err(Error::NotAHomomorphism { .. })
        ));
    }
}
