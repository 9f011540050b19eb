//! Semilinearization: the group `semi_R(S)` of a ring under `R`, its action
//! on morphisms, and semilinear automorphisms of modules.

use std::collections::HashMap;
use std::sync::Arc;

use crate::abelian::{additive_structure, endomorphism_ring, AdditiveStructure, EndomorphismRing, FiniteAbelianGroup};
use crate::actions::{CosliceRingMorphism, GroupAction};
use crate::aut::{enumerate_units, AutGroup, Units};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hom::{GroupHom, RingHom};
use crate::ring::FiniteRing;
use crate::search::{ring_generators, ring_homs, Constraints, SearchOptions};
use crate::Elem;

/// An element `(s, φ)` of `semi_R(S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiPair {
    pub unit: Elem,
    pub aut: usize,
}

/// `semi_R(S) = {(s, φ) ∈ S^× × Aut(R) | s·f(r) = f(φ(r))·s}` with diagonal
/// multiplication. Pairs are ordered unit-major, automorphism-minor.
#[derive(Debug, Clone)]
pub struct SemiGroup {
    base: RingHom,
    aut: Arc<AutGroup>,
    units: Units,
    pairs: Vec<SemiPair>,
    index: HashMap<SemiPair, Elem>,
    group: Arc<FiniteGroup>,
    to_aut: GroupHom,
}

/// Whether `s·f(r) = f(φ(r))·s` for every `r` in `rs`.
pub fn intertwines(base: &RingHom, aut: &AutGroup, s: Elem, phi: usize, rs: &[Elem]) -> bool {
    let ring = base.target();
    rs.iter()
        .all(|&r| ring.mul(s, base.apply(r)) == ring.mul(base.apply(aut.apply(phi, r)), s))
}

/// Membership in `semi_R(S)` checked over all of `R`, with the unit
/// condition found by search.
pub fn is_member_exhaustive(base: &RingHom, aut: &AutGroup, s: Elem, phi: usize) -> bool {
    let all: Vec<Elem> = base.source().elements().collect();
    crate::aut::unit_inverse(base.target(), s).is_some() && intertwines(base, aut, s, phi, &all)
}

/// Computes `semi_R(S)` for the structure map `base: R → S`. Membership is
/// decided on a generating set of `R`.
pub fn semilinearize(base: &RingHom, aut: &Arc<AutGroup>, caps: &Caps) -> Result<SemiGroup> {
    if aut.ring() != base.source() {
        return Err(Error::Incompatible(
            "automorphism group belongs to a different ring".into(),
        ));
    }
    let target = base.target();
    Caps::ensure("ring_order", caps.ring_order, target.order())?;
    let gens = ring_generators(base.source());
    let units = enumerate_units(target);
    let pairs: Vec<SemiPair> = units
        .elements()
        .iter()
        .flat_map(|&u| (0..aut.len()).map(move |phi| SemiPair { unit: u, aut: phi }))
        .filter(|p| intertwines(base, aut, p.unit, p.aut, &gens))
        .collect();
    let index: HashMap<SemiPair, Elem> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let ag = aut.group();
    let m = pairs.len();
    let mut op = Vec::with_capacity(m * m);
    for a in &pairs {
        for b in &pairs {
            let c = SemiPair {
                unit: target.mul(a.unit, b.unit),
                aut: ag.op(a.aut, b.aut),
            };
            let k = *index.get(&c).ok_or_else(|| {
                Error::TheoremViolation(format!("semi_R(S) not closed: {a:?}·{b:?}"))
            })?;
            op.push(k);
        }
    }
    let names = pairs
        .iter()
        .map(|p| format!("({}, {})", target.name(p.unit), ag.name(p.aut)))
        .collect();
    let label = format!("semi_{}({})", base.source().label(), target.label());
    let group = Arc::new(FiniteGroup::from_flat(label, names, op)?);
    let to_aut = GroupHom::new(group.clone(), ag.clone(), pairs.iter().map(|p| p.aut).collect())?;
    Ok(SemiGroup {
        base: base.clone(),
        aut: aut.clone(),
        units,
        pairs,
        index,
        group,
        to_aut,
    })
}

impl SemiGroup {
    /// The structure map `f: R → S`.
    pub fn base(&self) -> &RingHom {
        &self.base
    }

    pub fn aut(&self) -> &Arc<AutGroup> {
        &self.aut
    }

    pub fn units(&self) -> &Units {
        &self.units
    }

    pub fn pairs(&self) -> &[SemiPair] {
        &self.pairs
    }

    pub fn pair(&self, i: Elem) -> SemiPair {
        self.pairs[i]
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    /// The forgetful map `π_s` to `Aut_Ring(R)`.
    pub fn to_aut(&self) -> &GroupHom {
        &self.to_aut
    }

    /// The projection `π` to `S^×`.
    pub fn to_unit(&self, i: Elem) -> Elem {
        self.pairs[i].unit
    }

    pub fn index_of(&self, unit: Elem, aut: usize) -> Option<Elem> {
        self.index.get(&SemiPair { unit, aut }).copied()
    }

    /// Elements lying over the automorphism `aut`.
    pub fn fiber(&self, aut: usize) -> Vec<Elem> {
        (0..self.pairs.len()).filter(|&i| self.pairs[i].aut == aut).collect()
    }

    /// The image of `π_s` as automorphism indices.
    pub fn image_of_to_aut(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.pairs.iter().map(|p| p.aut).collect();
        img.sort_unstable();
        img.dedup();
        img
    }
}

/// `semi_R(h)`: `(s, φ) ↦ (h(s), φ)`, checked to land in `semi_R(T)` and to
/// commute with the maps to `Aut_Ring(R)`.
pub fn semilinearize_morphism(h: &CosliceRingMorphism, source: &SemiGroup, target: &SemiGroup) -> Result<GroupHom> {
    if h.source() != &source.base || h.target() != &target.base || source.aut != target.aut {
        return Err(Error::Incompatible(
            "coslice morphism does not connect these semilinearizations".into(),
        ));
    }
    let table = source
        .pairs
        .iter()
        .map(|p| {
            target.index_of(h.map().apply(p.unit), p.aut).ok_or_else(|| {
                Error::TheoremViolation(format!(
                    "target membership failure: ({}, {}) ∉ semi_R(T)",
                    h.map().apply(p.unit),
                    p.aut
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let map = GroupHom::new(source.group.clone(), target.group.clone(), table)?;
    if target.to_aut.after(&map)? != source.to_aut {
        return Err(Error::TheoremViolation(
            "semi_R(h) does not commute with the maps to Aut(R)".into(),
        ));
    }
    Ok(map)
}

/// An `R`-module: an abelian group `M` with a ring hom `χ: R → End_Ab(M)`.
#[derive(Debug, Clone)]
pub struct ModuleStructure {
    endo: EndomorphismRing,
    chi: RingHom,
    regular: Option<AdditiveStructure>,
}

impl ModuleStructure {
    pub fn new(endo: EndomorphismRing, chi: RingHom) -> Result<Self> {
        if chi.target() != endo.ring() {
            return Err(Error::Incompatible("χ does not land in End(M)".into()));
        }
        Ok(ModuleStructure {
            endo,
            chi,
            regular: None,
        })
    }

    /// `R` acting on its own additive group by left multiplication.
    pub fn regular(ring: &Arc<FiniteRing>, caps: &Caps) -> Result<Self> {
        let add = additive_structure(ring);
        let endo = endomorphism_ring(&add.group, caps)?;
        let m = &add.group;
        let table = ring
            .elements()
            .map(|r| {
                let t: Vec<Elem> = m
                    .elements()
                    .map(|x| add.from_ring[ring.mul(r, add.to_ring[x])])
                    .collect();
                endo.element_of(&t)
                    .ok_or_else(|| Error::TheoremViolation("left multiplication is not additive".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let chi = RingHom::new(ring.clone(), endo.ring().clone(), table)?;
        Ok(ModuleStructure {
            endo,
            chi,
            regular: Some(add),
        })
    }

    /// The `k`-th ring hom `R → End(M)` in canonical order.
    pub fn from_hom_index(ring: &Arc<FiniteRing>, module: FiniteAbelianGroup, k: usize, caps: &Caps) -> Result<Self> {
        let endo = endomorphism_ring(&module, caps)?;
        let homs = ring_homs(ring, endo.ring(), &Constraints::new(), &SearchOptions::from_caps(caps))?;
        let chi = homs.into_iter().nth(k).ok_or_else(|| {
            Error::InvalidRecipe(format!("no module structure with index {k}"))
        })?;
        Self::new(endo, chi)
    }

    pub fn module(&self) -> &FiniteAbelianGroup {
        self.endo.module()
    }

    pub fn endo(&self) -> &EndomorphismRing {
        &self.endo
    }

    pub fn chi(&self) -> &RingHom {
        &self.chi
    }

    /// Identification of `M` with the ring, for regular modules.
    pub fn regular_identification(&self) -> Option<&AdditiveStructure> {
        self.regular.as_ref()
    }

    /// `r·m`.
    pub fn act(&self, r: Elem, m: Elem) -> Elem {
        self.endo.map(self.chi.apply(r))[m]
    }

    /// Whether the map with value table `sigma` is additive and satisfies
    /// `σ(r·m) = φ(r)·σ(m)`, evaluated directly on `M`.
    pub fn is_semilinear(&self, sigma: &[Elem], aut: &AutGroup, phi: usize) -> bool {
        let m = self.module();
        let additive = m
            .elements()
            .all(|a| m.elements().all(|b| sigma[m.add(a, b)] == m.add(sigma[a], sigma[b])));
        additive
            && self.chi.source().elements().all(|r| {
                m.elements()
                    .all(|x| sigma[self.act(r, x)] == self.act(aut.apply(phi, r), sigma[x]))
            })
    }

    /// Semilinear automorphisms of `M` found by scanning all additive maps,
    /// independent of the ring structure of `End(M)`.
    pub fn semilinear_automorphisms(&self, aut: &AutGroup) -> Vec<SemiPair> {
        let mut out = Vec::new();
        for e in self.endo.ring().elements() {
            let sigma = self.endo.map(e);
            let mut seen = vec![false; sigma.len()];
            if !sigma.iter().all(|&v| !std::mem::replace(&mut seen[v], true)) {
                continue;
            }
            for phi in 0..aut.len() {
                if self.is_semilinear(sigma, aut, phi) {
                    out.push(SemiPair { unit: e, aut: phi });
                }
            }
        }
        out
    }
}

/// Outcome of checking whether a candidate `G → semi_R(S)` lifts `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftCheck {
    pub lifts: bool,
    /// First group element with `U(candidate(g)) ≠ θ_g`.
    pub witness: Option<Elem>,
}

/// Checks `U ∘ candidate = θ`.
pub fn semilinear_action_check(
    action: &GroupAction,
    module: &ModuleStructure,
    semi: &SemiGroup,
    candidate: &GroupHom,
) -> Result<LiftCheck> {
    if semi.base() != module.chi() || semi.aut() != action.aut() {
        return Err(Error::Incompatible("semigroup was not built for this module".into()));
    }
    if candidate.source() != action.group() || candidate.target() != semi.group() {
        return Err(Error::Incompatible("candidate has the wrong source or target".into()));
    }
    let witness = action
        .group()
        .elements()
        .find(|&g| semi.to_aut().apply(candidate.apply(g)) != action.theta_index(g));
    Ok(LiftCheck {
        lifts: witness.is_none(),
        witness,
    })
}
