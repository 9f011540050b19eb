//! Small standard instances over F₄ and Z/4: actions, slice and coslice
//! morphisms between them, and a module.

use std::sync::Arc;

use crate::abelian::FiniteAbelianGroup;
use crate::actions::{check_coslice_morphism, check_slice_morphism, CosliceRingMorphism, GroupAction, SliceGroupMorphism};
use crate::aut::{enumerate_automorphisms, AutGroup};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hom::{GroupHom, RingHom};
use crate::ring::FiniteRing;
use crate::semilin::ModuleStructure;
use crate::Elem;

/// Everything is over one base ring; names are for messages only.
#[derive(Debug, Clone)]
pub struct Family {
    pub ring: Arc<FiniteRing>,
    pub aut: Arc<AutGroup>,
    pub actions: Vec<(String, GroupAction)>,
    pub slice_morphisms: Vec<(String, SliceGroupMorphism)>,
    pub objects: Vec<(String, RingHom)>,
    pub coslice_morphisms: Vec<(String, CosliceRingMorphism)>,
    pub module: ModuleStructure,
}

impl Family {
    pub fn action(&self, name: &str) -> &GroupAction {
        &self.actions.iter().find(|(n, _)| n == name).expect("action in family").1
    }

    pub fn object(&self, name: &str) -> &RingHom {
        &self.objects.iter().find(|(n, _)| n == name).expect("object in family").1
    }

    /// Pairs `(first, second)` of slice morphisms with `second ∘ first` defined.
    pub fn slice_chains(&self) -> Vec<(&SliceGroupMorphism, &SliceGroupMorphism)> {
        let m = &self.slice_morphisms;
        m.iter()
            .flat_map(|(_, a)| m.iter().filter(move |(_, b)| b.source() == a.target()).map(move |(_, b)| (a, b)))
            .collect()
    }

    pub fn coslice_chains(&self) -> Vec<(&CosliceRingMorphism, &CosliceRingMorphism)> {
        let m = &self.coslice_morphisms;
        m.iter()
            .flat_map(|(_, a)| m.iter().filter(move |(_, b)| b.source() == a.target()).map(move |(_, b)| (a, b)))
            .collect()
    }
}

fn group(n: usize) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(FiniteGroup::cyclic(n)?))
}

fn slice(
    out: &mut Vec<(String, SliceGroupMorphism)>,
    name: &str,
    source: &GroupAction,
    target: &GroupAction,
    table: Vec<Elem>,
) -> Result<()> {
    let f = GroupHom::new(source.group().clone(), target.group().clone(), table)?;
    out.push((name.to_string(), check_slice_morphism(source, target, f)?));
    Ok(())
}

fn coslice(
    out: &mut Vec<(String, CosliceRingMorphism)>,
    name: &str,
    source: &RingHom,
    target: &RingHom,
    table: Vec<Elem>,
) -> Result<()> {
    let h = RingHom::new(source.target().clone(), target.target().clone(), table)?;
    out.push((name.to_string(), check_coslice_morphism(source, target, h)?));
    Ok(())
}

/// F₄ with the Frobenius φ. Actions: the trivial group, C2 by φ, C2
/// trivially, C4 by φ, and C2 × C2 with `(a, b) ↦ φ^a`. Coslice objects:
/// `id`, `φ`, the regular module `χ: F₄ → End(Z/2 × Z/2)` and `χ∘φ`.
pub fn f4_family(caps: &Caps) -> Result<Family> {
    let ring = Arc::new(FiniteRing::gf(2, &[1, 1, 1])?);
    let aut = Arc::new(enumerate_automorphisms(&ring, caps)?);
    let v4 = Arc::new(FiniteGroup::product(&[group(2)?, group(2)?])?);
    let one = GroupAction::trivial(Arc::new(FiniteGroup::trivial()), aut.clone());
    let c2f = GroupAction::from_table(group(2)?, aut.clone(), vec![0, 1])?;
    let c2t = GroupAction::trivial(group(2)?, aut.clone());
    let c4f = GroupAction::from_table(group(4)?, aut.clone(), vec![0, 1, 0, 1])?;
    let v4f = GroupAction::from_table(v4, aut.clone(), vec![0, 0, 1, 1])?;

    let mut sm = Vec::new();
    slice(&mut sm, "1→C2φ", &one, &c2f, vec![0])?;
    slice(&mut sm, "1→C2", &one, &c2t, vec![0])?;
    slice(&mut sm, "1→V4", &one, &v4f, vec![0])?;
    slice(&mut sm, "id C2φ", &c2f, &c2f, vec![0, 1])?;
    slice(&mut sm, "C4φ→C2φ", &c4f, &c2f, vec![0, 1, 0, 1])?;
    slice(&mut sm, "V4→C2φ", &v4f, &c2f, vec![0, 0, 1, 1])?;
    slice(&mut sm, "C2→V4", &c2t, &v4f, vec![0, 1])?;
    slice(&mut sm, "C2φ→V4 (1,0)", &c2f, &v4f, vec![0, 2])?;
    slice(&mut sm, "C2φ→V4 (1,1)", &c2f, &v4f, vec![0, 3])?;

    let module = ModuleStructure::regular(&ring, caps)?;
    let id = RingHom::identity(&ring);
    let phi = aut.get(1).clone();
    let chi = module.chi().clone();
    let chi_phi = chi.after(&phi)?;
    let s = chi.target().clone();
    let add = module
        .regular_identification()
        .ok_or_else(|| Error::TheoremViolation("regular module without identification".into()))?;
    let frob_table: Vec<Elem> = module
        .module()
        .elements()
        .map(|m| add.from_ring[phi.apply(add.to_ring[m])])
        .collect();
    let frob = module
        .endo()
        .element_of(&frob_table)
        .ok_or_else(|| Error::TheoremViolation("Frobenius is not additive".into()))?;
    // conjugation by the Frobenius of M, which is its own inverse
    let conj: Vec<Elem> = s.elements().map(|e| s.mul(s.mul(frob, e), frob)).collect();

    let mut cm = Vec::new();
    coslice(&mut cm, "id End", &chi, &chi, s.elements().collect())?;
    coslice(&mut cm, "χ: F₄→End", &id, &chi, chi.table().to_vec())?;
    coslice(&mut cm, "φ: F₄→F₄", &id, &phi, phi.table().to_vec())?;
    coslice(&mut cm, "χ: (F₄,φ)→(End,χφ)", &phi, &chi_phi, chi.table().to_vec())?;
    coslice(&mut cm, "conj: End→End", &chi, &chi_phi, conj)?;

    Ok(Family {
        ring,
        aut,
        actions: vec![
            ("1".into(), one),
            ("C2φ".into(), c2f),
            ("C2".into(), c2t),
            ("C4φ".into(), c4f),
            ("V4φ".into(), v4f),
        ],
        slice_morphisms: sm,
        objects: vec![
            ("F₄".into(), id),
            ("F₄ via φ".into(), phi),
            ("End(M)".into(), chi),
            ("End(M) via χφ".into(), chi_phi),
        ],
        coslice_morphisms: cm,
        module,
    })
}

/// Z/4, which has no nontrivial automorphisms. Actions: trivial actions of
/// 1, C2 and C4. Coslice objects: `id`, `χ: Z/4 → End(Z/4)` and reduction
/// `Z/4 → Z/2`.
pub fn z4_family(caps: &Caps) -> Result<Family> {
    let ring = Arc::new(FiniteRing::zmod(4)?);
    let aut = Arc::new(enumerate_automorphisms(&ring, caps)?);
    let one = GroupAction::trivial(Arc::new(FiniteGroup::trivial()), aut.clone());
    let c2 = GroupAction::trivial(group(2)?, aut.clone());
    let c4 = GroupAction::trivial(group(4)?, aut.clone());

    let mut sm = Vec::new();
    slice(&mut sm, "1→C2", &one, &c2, vec![0])?;
    slice(&mut sm, "id C2", &c2, &c2, vec![0, 1])?;
    slice(&mut sm, "C4→C2", &c4, &c2, vec![0, 1, 0, 1])?;
    slice(&mut sm, "C2→C4", &c2, &c4, vec![0, 2])?;
    slice(&mut sm, "C4→C4 k↦3k", &c4, &c4, vec![0, 3, 2, 1])?;

    let module = ModuleStructure::from_hom_index(&ring, FiniteAbelianGroup::new(vec![4])?, 0, caps)?;
    let id = RingHom::identity(&ring);
    let chi = module.chi().clone();
    let z2 = Arc::new(FiniteRing::zmod(2)?);
    let red = RingHom::new(ring.clone(), z2, vec![0, 1, 0, 1])?;
    let chi_inv = chi
        .inverse()
        .ok_or_else(|| Error::TheoremViolation("Z/4 → End(Z/4) is not bijective".into()))?;
    let red_from_end = red.after(&chi_inv)?;

    let mut cm = Vec::new();
    coslice(&mut cm, "χ: Z/4→End", &id, &chi, chi.table().to_vec())?;
    coslice(&mut cm, "red: Z/4→Z/2", &id, &red, red.table().to_vec())?;
    coslice(&mut cm, "id End", &chi, &chi, chi.target().elements().collect())?;
    coslice(&mut cm, "End→Z/2", &chi, &red, red_from_end.table().to_vec())?;

    Ok(Family {
        ring,
        aut,
        actions: vec![("1".into(), one), ("C2".into(), c2), ("C4".into(), c4)],
        slice_morphisms: sm,
        objects: vec![("Z/4".into(), id), ("End(Z/4)".into(), chi), ("Z/2".into(), red)],
        coslice_morphisms: cm,
        module,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_build() {
        let caps = Caps::default();
        let f = f4_family(&caps).unwrap();
        assert_eq!(f.slice_morphisms.len(), 9);
        assert!(!f.slice_chains().is_empty());
        assert!(!f.coslice_chains().is_empty());
        let z = z4_family(&caps).unwrap();
        assert_eq!(z.coslice_morphisms.len(), 4);
    }
}
