//! The hom-set bijection
//!
//! ```text
//! Π: Hom_{R/Ring}(R_θ[G], S) → Hom_{Grp/Aut(R)}(G, semi_R(S)),
//!    f ↦ (g ↦ (f(1·g), θ_g))
//! ```
//!
//! its inverse `α ↦ (r·g ↦ χ(r)·π(α(g)))`, exhaustive enumeration of both
//! hom-sets, naturality in both variables, and the module corollary.

use std::collections::HashSet;
use std::sync::Arc;

use crate::actions::{check_slice_morphism, CosliceRingMorphism, GroupAction, SliceGroupMorphism};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hom::{GroupHom, RingHom};
use crate::report::Report;
use crate::search::{group_generators, group_homs, Constraints, SearchOptions};
use crate::semilin::{
    is_member_exhaustive, semilinear_action_check, semilinearize, semilinearize_morphism, ModuleStructure,
    SemiGroup,
};
use crate::twist::{twistify, TwistedGroupRing};
use crate::Elem;

fn ensure_compatible(twisted: &TwistedGroupRing, semi: &SemiGroup) -> Result<()> {
    if twisted.action().aut() != semi.aut() {
        return Err(Error::Incompatible(
            "twisted group ring and semilinearization use different rings".into(),
        ));
    }
    Ok(())
}

/// Whether `f` is a ring hom `R_θ[G] → S` under `R`, i.e. `f(r·e) = χ(r)`.
fn check_under(f: &RingHom, twisted: &TwistedGroupRing, chi: &RingHom) -> Result<()> {
    if f.source() != twisted.ring() || f.target() != chi.target() {
        return Err(Error::Incompatible("hom has the wrong source or target".into()));
    }
    for r in chi.source().elements() {
        if f.apply(twisted.structure_map().apply(r)) != chi.apply(r) {
            return Err(Error::NotUnderR { r });
        }
    }
    Ok(())
}

/// `Π(f)(g) = (f(1_R·g), θ_g)`.
pub fn pi(f: &RingHom, twisted: &TwistedGroupRing, semi: &SemiGroup) -> Result<GroupHom> {
    ensure_compatible(twisted, semi)?;
    check_under(f, twisted, semi.base())?;
    let action = twisted.action();
    let table = action
        .group()
        .elements()
        .map(|g| {
            let s = f.apply(twisted.group_element(g));
            semi.index_of(s, action.theta_index(g)).ok_or_else(|| {
                Error::TheoremViolation(format!(
                    "(f(1·{}), θ) is not in semi_R(S)",
                    action.group().name(g)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let alpha = GroupHom::new(action.group().clone(), semi.group().clone(), table)
        .map_err(|e| Error::TheoremViolation(format!("Π(f) is not a group hom: {e}")))?;
    Ok(alpha)
}

/// `Π⁻¹(α)(Σ r_g·g) = Σ χ(r_g)·π(α(g))`, validated as a ring hom under `R`.
pub fn pi_inverse(alpha: &GroupHom, twisted: &TwistedGroupRing, semi: &SemiGroup) -> Result<RingHom> {
    ensure_compatible(twisted, semi)?;
    let action = twisted.action();
    if alpha.source() != action.group() || alpha.target() != semi.group() {
        return Err(Error::Incompatible("α has the wrong source or target".into()));
    }
    if let Some(g) = action
        .group()
        .elements()
        .find(|&g| semi.to_aut().apply(alpha.apply(g)) != action.theta_index(g))
    {
        return Err(Error::Incompatible(format!(
            "α is not over Aut(R) at {}",
            action.group().name(g)
        )));
    }
    let chi = semi.base();
    let s = chi.target();
    let units: Vec<Elem> = action
        .group()
        .elements()
        .map(|g| semi.to_unit(alpha.apply(g)))
        .collect();
    let table = twisted
        .ring()
        .elements()
        .map(|x| {
            twisted
                .coefficients(x)
                .iter()
                .zip(&units)
                .fold(s.zero(), |acc, (&r, &u)| s.add(acc, s.mul(chi.apply(r), u)))
        })
        .collect();
    let f = RingHom::new(twisted.ring().clone(), s.clone(), table)
        .map_err(|e| Error::TheoremViolation(format!("Π⁻¹(α) is not a ring hom: {e}")))?;
    check_under(&f, twisted, chi)?;
    Ok(f)
}

/// `Hom_{R/Ring}(R_θ[G], S)` in canonical (value-table) order.
#[derive(Debug, Clone)]
pub struct HomSetUnder {
    pub homs: Vec<RingHom>,
}

/// `Hom_{Grp/Aut(R)}(G, semi_R(S))` in canonical order.
#[derive(Debug, Clone)]
pub struct HomSetOver {
    pub homs: Vec<GroupHom>,
}

/// Enumerates ring homs under `R` by choosing the images of `1_R·g`: on
/// generators of `G` by search, on the rest by multiplicativity, and then
/// extending by `r·g ↦ χ(r)·f(1·g)`.
pub fn enumerate_homs_under(twisted: &TwistedGroupRing, chi: &RingHom, caps: &Caps) -> Result<HomSetUnder> {
    if chi.source() != twisted.base() {
        return Err(Error::Incompatible("target is not a ring under R".into()));
    }
    let group = twisted.action().group();
    let s = chi.target();
    let gens = group_generators(group);
    let mut found = Vec::new();
    let mut nodes = 0usize;
    let mut images: Vec<Option<Elem>> = vec![None; group.order()];
    images[group.identity()] = Some(s.one());
    if !propagate(group, s, &mut images) {
        return Ok(HomSetUnder { homs: found });
    }
    search_under(twisted, chi, &gens, 0, images, &mut nodes, caps.search_nodes, &mut found)?;
    found.sort_by(|a: &RingHom, b: &RingHom| a.table().cmp(b.table()));
    Ok(HomSetUnder { homs: found })
}

/// Closes a partial assignment `g ↦ f(1·g)` under products; false on conflict.
fn propagate(group: &crate::group::FiniteGroup, s: &crate::ring::FiniteRing, images: &mut [Option<Elem>]) -> bool {
    loop {
        let mut changed = false;
        for a in group.elements() {
            let Some(fa) = images[a] else { continue };
            for b in group.elements() {
                let Some(fb) = images[b] else { continue };
                let ab = group.op(a, b);
                let v = s.mul(fa, fb);
                match images[ab] {
                    None => {
                        images[ab] = Some(v);
                        changed = true;
                    }
                    Some(w) if w != v => return false,
                    Some(_) => {}
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn search_under(
    twisted: &TwistedGroupRing,
    chi: &RingHom,
    gens: &[Elem],
    depth: usize,
    images: Vec<Option<Elem>>,
    nodes: &mut usize,
    budget: usize,
    found: &mut Vec<RingHom>,
) -> Result<()> {
    if depth == gens.len() {
        let values: Vec<Elem> = images.iter().map(|v| v.expect("generators cover G")).collect();
        let s = chi.target();
        let table = twisted
            .ring()
            .elements()
            .map(|x| {
                twisted
                    .coefficients(x)
                    .iter()
                    .zip(&values)
                    .fold(s.zero(), |acc, (&r, &u)| s.add(acc, s.mul(chi.apply(r), u)))
            })
            .collect();
        if let Ok(f) = RingHom::new(twisted.ring().clone(), s.clone(), table) {
            found.push(f);
        }
        return Ok(());
    }
    let g = gens[depth];
    if images[g].is_some() {
        return search_under(twisted, chi, gens, depth + 1, images, nodes, budget, found);
    }
    let group = twisted.action().group();
    for c in chi.target().elements() {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::CapExceeded {
                cap: "search_nodes",
                limit: budget,
                actual: *nodes,
            });
        }
        let mut next = images.clone();
        next[g] = Some(c);
        if propagate(group, chi.target(), &mut next) {
            search_under(twisted, chi, gens, depth + 1, next, nodes, budget, found)?;
        }
    }
    Ok(())
}

/// Enumerates group homs `G → semi_R(S)` over `Aut(R)`: the image of `g` is
/// confined to the fiber of `π_s` over `θ_g`.
pub fn enumerate_homs_over(action: &GroupAction, semi: &SemiGroup, caps: &Caps) -> Result<HomSetOver> {
    if action.aut() != semi.aut() {
        return Err(Error::Incompatible("action and semilinearization use different rings".into()));
    }
    let constraints = action
        .group()
        .elements()
        .fold(Constraints::new(), |c, g| c.restrict(g, semi.fiber(action.theta_index(g))));
    let homs = group_homs(action.group(), semi.group(), &constraints, &SearchOptions::from_caps(caps))?;
    Ok(HomSetOver { homs })
}

fn describe_over(alpha: &GroupHom) -> String {
    let g = alpha.source();
    let t = alpha.target();
    let parts: Vec<String> = g
        .elements()
        .map(|x| format!("{} ↦ {}", g.name(x), t.name(alpha.apply(x))))
        .collect();
    parts.join(", ")
}

/// Checks that `Π` is a bijection between the two enumerated hom-sets and
/// that `Π⁻¹` inverts it on both sides.
pub fn verify_bijection(twisted: &TwistedGroupRing, semi: &SemiGroup, caps: &Caps) -> Result<Report> {
    ensure_compatible(twisted, semi)?;
    let mut report = Report::new("bijection");
    let under = enumerate_homs_under(twisted, semi.base(), caps)?;
    let over = enumerate_homs_over(twisted.action(), semi, caps)?;
    report.count("hom_under", under.homs.len());
    report.count("hom_over", over.homs.len());
    report.check(
        "cardinalities_equal",
        under.homs.len() == over.homs.len(),
        format!("{} = {}", under.homs.len(), over.homs.len()),
    );

    let mut images = Vec::with_capacity(under.homs.len());
    let mut well_defined = true;
    for (i, f) in under.homs.iter().enumerate() {
        match pi(f, twisted, semi) {
            Ok(a) => images.push(a),
            Err(e) => {
                well_defined = false;
                report
                    .check("pi_well_defined", false, e.to_string())
                    .with_witness(format!("hom #{i}"));
            }
        }
    }
    if well_defined {
        let all_over = images.iter().all(|a| over.homs.contains(a));
        report.check("pi_well_defined", all_over, "Π(f) lands in the enumerated hom-set over Aut(R)");
    }
    let distinct: HashSet<&[Elem]> = images.iter().map(|a| a.table()).collect();
    report.check(
        "pi_injective",
        well_defined && distinct.len() == under.homs.len(),
        format!("{} distinct images of {} homs", distinct.len(), under.homs.len()),
    );
    let missed: Vec<usize> = over
        .homs
        .iter()
        .enumerate()
        .filter(|(_, a)| !images.contains(a))
        .map(|(i, _)| i)
        .collect();
    let rec = report.check(
        "pi_surjective",
        well_defined && missed.is_empty(),
        format!("{} of {} homs over Aut(R) are hit", over.homs.len() - missed.len(), over.homs.len()),
    );
    if let Some(i) = missed.first() {
        rec.with_witness(format!("hom over #{i}"));
    }

    let mut bad_under = None;
    for (i, f) in under.homs.iter().enumerate() {
        let back = pi(f, twisted, semi).and_then(|a| pi_inverse(&a, twisted, semi));
        if back.as_ref() != Ok(f) {
            bad_under.get_or_insert(i);
        }
    }
    let rec = report.check("roundtrip_under", bad_under.is_none(), "Π⁻¹(Π(f)) = f for every f");
    if let Some(i) = bad_under {
        rec.with_witness(format!("hom #{i}"));
    }
    let mut bad_over = None;
    for (i, a) in over.homs.iter().enumerate() {
        let back = pi_inverse(a, twisted, semi).and_then(|f| pi(&f, twisted, semi));
        if back.as_ref() != Ok(a) {
            bad_over.get_or_insert(i);
        }
    }
    let rec = report.check("roundtrip_over", bad_over.is_none(), "Π(Π⁻¹(α)) = α for every α");
    if let Some(i) = bad_over {
        rec.with_witness(format!("hom over #{i}"));
    }

    for (i, a) in images.iter().enumerate() {
        report.correspondence.push(format!("f#{i} ↔ {}", describe_over(a)));
    }
    Ok(report)
}

/// Everything needed to compare the two naturality squares for a fixed
/// `j: (G, θ) → (K, ψ)` and `h: (S, χ) → (T, χ')`.
#[derive(Debug, Clone)]
pub struct NaturalityContext {
    j: SliceGroupMorphism,
    h: CosliceRingMorphism,
    tw_source: TwistedGroupRing,
    tw_target: TwistedGroupRing,
    tw_j: CosliceRingMorphism,
    semi_source: SemiGroup,
    semi_target: SemiGroup,
    semi_h: GroupHom,
}

/// Commutativity of both squares, directly and on the reduced element sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NaturalityOutcome {
    /// `h ∘ μ = λ ∘ twist(j)` on all of `R_θ[G]`.
    pub left: bool,
    /// `semi(h) ∘ Π(μ) = Π(λ) ∘ j`.
    pub right: bool,
    /// Left square on the elements `1_R·g` only.
    pub left_on_group_elements: bool,
    /// Right square on the unit components only.
    pub right_on_units: bool,
}

impl NaturalityOutcome {
    pub fn iff_holds(&self) -> bool {
        self.left == self.right
    }

    pub fn reduction_holds(&self) -> bool {
        self.left == self.left_on_group_elements && self.right == self.right_on_units
    }
}

impl NaturalityContext {
    pub fn new(j: &SliceGroupMorphism, h: &CosliceRingMorphism, caps: &Caps) -> Result<Self> {
        let aut = j.source().aut();
        if h.source().source() != aut.ring() {
            return Err(Error::Incompatible("j and h live over different rings".into()));
        }
        let tw_source = twistify(j.source(), caps)?;
        let tw_target = twistify(j.target(), caps)?;
        let tw_j = tw_source.map_along(j, &tw_target)?;
        let semi_source = semilinearize(h.source(), aut, caps)?;
        let semi_target = semilinearize(h.target(), aut, caps)?;
        let semi_h = semilinearize_morphism(h, &semi_source, &semi_target)?;
        Ok(NaturalityContext {
            j: j.clone(),
            h: h.clone(),
            tw_source,
            tw_target,
            tw_j,
            semi_source,
            semi_target,
            semi_h,
        })
    }

    pub fn twisted_source(&self) -> &TwistedGroupRing {
        &self.tw_source
    }

    pub fn twisted_target(&self) -> &TwistedGroupRing {
        &self.tw_target
    }

    pub fn semi_source(&self) -> &SemiGroup {
        &self.semi_source
    }

    pub fn semi_target(&self) -> &SemiGroup {
        &self.semi_target
    }

    /// All candidate `μ` and `λ`.
    pub fn hom_sets(&self, caps: &Caps) -> Result<(HomSetUnder, HomSetUnder)> {
        Ok((
            enumerate_homs_under(&self.tw_source, self.h.source(), caps)?,
            enumerate_homs_under(&self.tw_target, self.h.target(), caps)?,
        ))
    }

    /// Evaluates both squares for `μ: R_θ[G] → S` and `λ: R_ψ[K] → T`.
    pub fn evaluate(&self, mu: &RingHom, lambda: &RingHom) -> Result<NaturalityOutcome> {
        let h = self.h.map();
        let tw_j = self.tw_j.map();
        let left = self
            .tw_source
            .ring()
            .elements()
            .all(|x| h.apply(mu.apply(x)) == lambda.apply(tw_j.apply(x)));
        let group = self.j.source().group();
        let jm = self.j.map();
        let left_on_group_elements = group.elements().all(|g| {
            h.apply(mu.apply(self.tw_source.group_element(g)))
                == lambda.apply(self.tw_target.group_element(jm.apply(g)))
        });
        let pi_mu = pi(mu, &self.tw_source, &self.semi_source)?;
        let pi_lambda = pi(lambda, &self.tw_target, &self.semi_target)?;
        let right = self.semi_h.after(&pi_mu)? == pi_lambda.after(jm)?;
        let right_on_units = group.elements().all(|g| {
            h.apply(self.semi_source.to_unit(pi_mu.apply(g)))
                == self.semi_target.to_unit(pi_lambda.apply(jm.apply(g)))
        });
        Ok(NaturalityOutcome {
            left,
            right,
            left_on_group_elements,
            right_on_units,
        })
    }
}

/// Summary of a naturality sweep over every `(μ, λ)` pair for fixed `j, h`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NaturalitySweep {
    pub quadruples: usize,
    pub both_commute: usize,
    pub both_fail: usize,
    pub asymmetric: usize,
    pub reduction_failures: usize,
}

impl NaturalitySweep {
    pub fn add(&mut self, o: &NaturalityOutcome) {
        self.quadruples += 1;
        match (o.left, o.right) {
            (true, true) => self.both_commute += 1,
            (false, false) => self.both_fail += 1,
            _ => self.asymmetric += 1,
        }
        if !o.reduction_holds() {
            self.reduction_failures += 1;
        }
    }

    pub fn merge(&mut self, other: &NaturalitySweep) {
        self.quadruples += other.quadruples;
        self.both_commute += other.both_commute;
        self.both_fail += other.both_fail;
        self.asymmetric += other.asymmetric;
        self.reduction_failures += other.reduction_failures;
    }
}

impl NaturalityContext {
    pub fn sweep(&self, caps: &Caps) -> Result<NaturalitySweep> {
        let (mus, lambdas) = self.hom_sets(caps)?;
        let mut out = NaturalitySweep::default();
        for mu in &mus.homs {
            for lambda in &lambdas.homs {
                out.add(&self.evaluate(mu, lambda)?);
            }
        }
        Ok(out)
    }
}

/// Checks a single quadruple `(j, h, μ, λ)`.
pub fn verify_naturality(
    j: &SliceGroupMorphism,
    h: &CosliceRingMorphism,
    mu: &RingHom,
    lambda: &RingHom,
    caps: &Caps,
) -> Result<Report> {
    let ctx = NaturalityContext::new(j, h, caps)?;
    let o = ctx.evaluate(mu, lambda)?;
    let mut report = Report::new("naturality");
    report.check("left_square", true, format!("commutes: {}", o.left));
    report.check("right_square", true, format!("commutes: {}", o.right));
    report.check("iff", o.iff_holds(), "left square commutes ⇔ right square commutes");
    report.check(
        "reduction",
        o.reduction_holds(),
        "each square commutes ⇔ it commutes on the elements 1_R·g",
    );
    Ok(report)
}

/// The corollary for `S = End_Ab(M)`: extensions of the module structure to
/// `R_θ[G]` correspond to semilinear `G`-actions lifting `θ`.
pub fn verify_modules_corollary(action: &GroupAction, module: &ModuleStructure, caps: &Caps) -> Result<Report> {
    if module.chi().source() != action.ring() {
        return Err(Error::Incompatible("module is over a different ring".into()));
    }
    let twisted = twistify(action, caps)?;
    let semi = semilinearize(module.chi(), action.aut(), caps)?;
    let mut report = Report::new("modules_corollary");
    let bij = verify_bijection(&twisted, &semi, caps)?;
    let extensions = bij.cardinalities["hom_under"];
    let semilinear_actions = bij.cardinalities["hom_over"];
    report.absorb(bij);
    report.count("extensions", extensions);
    report.count("semilinear_actions", semilinear_actions);
    report.check(
        "counts_match",
        extensions == semilinear_actions,
        format!("{extensions} extensions ↔ {semilinear_actions} semilinear actions"),
    );

    let over = enumerate_homs_over(action, &semi, caps)?;
    let aut = action.aut();
    let mut bad = None;
    for (i, alpha) in over.homs.iter().enumerate() {
        let lifts = semilinear_action_check(action, module, &semi, alpha)?.lifts;
        let semilinear = action.group().elements().all(|g| {
            let p = semi.pair(alpha.apply(g));
            module.is_semilinear(module.endo().map(p.unit), aut, p.aut)
        });
        if !(lifts && semilinear) {
            bad.get_or_insert(i);
        }
    }
    let rec = report.check(
        "actions_are_semilinear_lifts",
        bad.is_none(),
        "every α acts by θ_g-semilinear automorphisms of M and lifts θ",
    );
    if let Some(i) = bad {
        rec.with_witness(format!("action #{i}"));
    }
    Ok(report)
}

/// `η_G = Π(id)`: `g ↦ (1_R·g, θ_g)` as a slice morphism into
/// `semi_R(R_θ[G])`.
pub fn unit(twisted: &TwistedGroupRing, caps: &Caps) -> Result<(SemiGroup, GroupHom)> {
    let semi = semilinearize(twisted.structure_map(), twisted.action().aut(), caps)?;
    let eta = pi(&RingHom::identity(twisted.ring()), twisted, &semi)?;
    Ok((semi, eta))
}

/// `ε_S = Π⁻¹(id)`: the ring hom `R_{π_s}[semi_R(S)] → S` under `R`.
pub fn counit(semi: &SemiGroup, caps: &Caps) -> Result<(TwistedGroupRing, RingHom)> {
    let action = GroupAction::from_table(semi.group().clone(), semi.aut().clone(), semi.to_aut().table().to_vec())?;
    let twisted = twistify(&action, caps)?;
    let eps = pi_inverse(&GroupHom::identity(semi.group()), &twisted, semi)?;
    Ok((twisted, eps))
}

/// Unit and counit as derived from `Π`, with both triangle identities.
pub fn unit_counit_checks(twisted: &TwistedGroupRing, semi: &SemiGroup, caps: &Caps) -> Result<Report> {
    let mut report = Report::new("unit_counit");
    let action = twisted.action();

    let (semi_tw, eta) = unit(twisted, caps)?;
    let formula_ok = action.group().elements().all(|g| {
        let p = semi_tw.pair(eta.apply(g));
        p.unit == twisted.group_element(g) && p.aut == action.theta_index(g)
    });
    let over = semi_tw.to_aut().after(&eta)? == *action.theta();
    report
        .check("unit", formula_ok && over, "η_G = Π(id) is g ↦ (1_R·g, θ_g), a group hom over Aut(R)")
        .derived();

    // ε_{R_θ[G]} ∘ twist(η_G) = id
    let semi_action =
        GroupAction::from_table(semi_tw.group().clone(), semi_tw.aut().clone(), semi_tw.to_aut().table().to_vec())?;
    let eta_slice = check_slice_morphism(action, &semi_action, eta.clone())?;
    let (tw_semi, eps_tw) = counit(&semi_tw, caps)?;
    let tw_eta = twisted.map_along(&eta_slice, &tw_semi)?;
    let composite = eps_tw.after(tw_eta.map())?;
    report
        .check(
            "triangle_twist",
            composite == RingHom::identity(twisted.ring()),
            "ε_{twist(G)} ∘ twist(η_G) = id",
        )
        .derived();

    // semi(ε_S) ∘ η_{semi(S)} = id, evaluated pointwise
    let (tw_s, eps_s) = counit(semi, caps)?;
    let mut bad = None;
    for p in semi.group().elements() {
        let pair = semi.pair(p);
        let one_p = tw_s.group_element(p);
        let in_semi = is_member_exhaustive(tw_s.structure_map(), semi.aut(), one_p, pair.aut);
        let back = semi.index_of(eps_s.apply(one_p), pair.aut);
        if !(in_semi && back == Some(p)) {
            bad.get_or_insert(p);
        }
    }
    let rec = report
        .check("triangle_semi", bad.is_none(), "semi(ε_S) ∘ η_{semi(S)} = id")
        .derived();
    if let Some(p) = bad {
        rec.with_witness(semi.group().name(p).to_string());
    }
    Ok(report)
}

/// Slice objects from a single action, used for functor-law chains.
pub fn trivial_subgroup_inclusion(action: &GroupAction) -> Result<SliceGroupMorphism> {
    let triv = Arc::new(crate::group::FiniteGroup::trivial());
    let source = GroupAction::trivial(triv.clone(), action.aut().clone());
    let map = GroupHom::new(triv, action.group().clone(), vec![action.group().identity()])?;
    check_slice_morphism(&source, action, map)
}
