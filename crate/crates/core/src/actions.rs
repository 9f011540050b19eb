//! Group actions on a ring (objects of `Grp/Aut_Ring(R)`) and the checked
//! morphisms of the two slice categories.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::aut::AutGroup;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hom::{GroupHom, RingHom};
use crate::ring::FiniteRing;
use crate::Elem;

/// A group homomorphism `θ: G → Aut_Ring(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: Arc<FiniteGroup>,
    aut: Arc<AutGroup>,
    theta: GroupHom,
}

impl GroupAction {
    /// Validates a full table `g ↦ automorphism index`.
    pub fn from_table(group: Arc<FiniteGroup>, aut: Arc<AutGroup>, table: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = table.iter().find(|&&i| i >= aut.len()) {
            return Err(Error::UnknownAutomorphism(format!(
                "index {bad} (ring has {} automorphisms)",
                aut.len()
            )));
        }
        let theta = GroupHom::new(group.clone(), aut.group().clone(), table)?;
        Ok(GroupAction { group, aut, theta })
    }

    /// Every element acts as the identity.
    pub fn trivial(group: Arc<FiniteGroup>, aut: Arc<AutGroup>) -> Self {
        let table = vec![0; group.order()];
        Self::from_table(group, aut, table).expect("trivial action")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.aut.ring()
    }

    pub fn aut(&self) -> &Arc<AutGroup> {
        &self.aut
    }

    pub fn theta(&self) -> &GroupHom {
        &self.theta
    }

    /// Index of `θ_g` in the automorphism list.
    pub fn theta_index(&self, g: Elem) -> usize {
        self.theta.apply(g)
    }

    /// `θ_g(r)`.
    pub fn apply(&self, g: Elem, r: Elem) -> Elem {
        self.aut.apply(self.theta.apply(g), r)
    }

    /// Permutation tables `θ_g` for every group element.
    pub fn permutations(&self) -> Vec<Vec<Elem>> {
        self.group
            .elements()
            .map(|g| self.aut.get(self.theta_index(g)).table().to_vec())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.theta.table().iter().all(|&i| i == 0)
    }
}

/// Extends an assignment of automorphisms to generators into the unique
/// group homomorphism, if there is one.
pub fn make_action(
    group: &Arc<FiniteGroup>,
    aut: &Arc<AutGroup>,
    images: &[(Elem, usize)],
) -> Result<GroupAction> {
    for &(g, a) in images {
        if g >= group.order() {
            return Err(Error::Incompatible(format!("generator {g} is not a group element")));
        }
        if a >= aut.len() {
            return Err(Error::UnknownAutomorphism(format!(
                "index {a} (ring has {} automorphisms)",
                aut.len()
            )));
        }
    }
    let ag = aut.group();
    let mut table: Vec<Option<usize>> = vec![None; group.order()];
    table[group.identity()] = Some(ag.identity());
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        let tx = table[x].expect("queued elements are assigned");
        for &(s, ts) in images {
            let y = group.op(x, s);
            let ty = ag.op(tx, ts);
            match table[y] {
                None => {
                    table[y] = Some(ty);
                    queue.push_back(y);
                }
                Some(prev) if prev != ty => {
                    return Err(Error::NotAHomomorphism {
                        reason: format!(
                            "relation {}·{} = {} forces θ = {} but θ = {} already",
                            group.name(x),
                            group.name(s),
                            group.name(y),
                            ag.name(ty),
                            ag.name(prev)
                        ),
                        witness: vec![x, s, y],
                    })
                }
                Some(_) => {}
            }
        }
    }
    if table.iter().any(Option::is_none) {
        return Err(Error::NotGenerating(images.iter().map(|&(g, _)| g).collect()));
    }
    let table = table.into_iter().map(|t| t.expect("complete")).collect();
    GroupAction::from_table(group.clone(), aut.clone(), table)
}

/// A morphism `f: G → K` in `Grp/Aut_Ring(R)`, i.e. `θ_g = ψ_{f(g)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceGroupMorphism {
    source: GroupAction,
    target: GroupAction,
    map: GroupHom,
}

impl SliceGroupMorphism {
    pub fn source(&self) -> &GroupAction {
        &self.source
    }

    pub fn target(&self) -> &GroupAction {
        &self.target
    }

    pub fn map(&self) -> &GroupHom {
        &self.map
    }

    pub fn identity(action: &GroupAction) -> Self {
        SliceGroupMorphism {
            source: action.clone(),
            target: action.clone(),
            map: GroupHom::identity(action.group()),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SliceGroupMorphism) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::Incompatible("slice morphisms are not composable".into()));
        }
        check_slice_morphism(&first.source, &self.target, self.map.after(&first.map)?)
    }
}

/// Validates `f` as a morphism over `Aut_Ring(R)`; the witness of failure is
/// the first `(g, r)` with `θ_g(r) ≠ ψ_{f(g)}(r)`.
pub fn check_slice_morphism(
    source: &GroupAction,
    target: &GroupAction,
    f: GroupHom,
) -> Result<SliceGroupMorphism> {
    if source.aut != target.aut {
        return Err(Error::Incompatible("actions on different rings".into()));
    }
    if f.source() != source.group() || f.target() != target.group() {
        return Err(Error::Incompatible("group hom does not match the actions".into()));
    }
    for g in source.group().elements() {
        for r in source.ring().elements() {
            if source.apply(g, r) != target.apply(f.apply(g), r) {
                return Err(Error::NotOverAut { g, r });
            }
        }
    }
    Ok(SliceGroupMorphism {
        source: source.clone(),
        target: target.clone(),
        map: f,
    })
}

/// A morphism `h: S → T` in `R/Ring` between structure maps `f: R → S` and
/// `g: R → T`, i.e. `h ∘ f = g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosliceRingMorphism {
    source: RingHom,
    target: RingHom,
    map: RingHom,
}

impl CosliceRingMorphism {
    pub fn source(&self) -> &RingHom {
        &self.source
    }

    pub fn target(&self) -> &RingHom {
        &self.target
    }

    pub fn map(&self) -> &RingHom {
        &self.map
    }

    pub fn identity(object: &RingHom) -> Self {
        CosliceRingMorphism {
            source: object.clone(),
            target: object.clone(),
            map: RingHom::identity(object.target()),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CosliceRingMorphism) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::Incompatible("coslice morphisms are not composable".into()));
        }
        check_coslice_morphism(&first.source, &self.target, self.map.after(&first.map)?)
    }
}

/// Validates `h` as a morphism under `R`; the witness of failure is the
/// first `r` with `h(f(r)) ≠ g(r)`.
pub fn check_coslice_morphism(source: &RingHom, target: &RingHom, h: RingHom) -> Result<CosliceRingMorphism> {
    if source.source() != target.source() {
        return Err(Error::Incompatible("structure maps start at different rings".into()));
    }
    if h.source() != source.target() || h.target() != target.target() {
        return Err(Error::Incompatible("ring hom does not match the structure maps".into()));
    }
    for r in source.source().elements() {
        if h.apply(source.apply(r)) != target.apply(r) {
            return Err(Error::NotUnderR { r });
        }
    }
    Ok(CosliceRingMorphism {
        source: source.clone(),
        target: target.clone(),
        map: h,
    })
}
