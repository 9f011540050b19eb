//! Executes the checks requested by an instance file.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use twistsemi::actions::{CosliceRingMorphism, SliceGroupMorphism};
use twistsemi::adjunction::{
    enumerate_homs_over, enumerate_homs_under, trivial_subgroup_inclusion, unit_counit_checks, verify_bijection,
    verify_modules_corollary, NaturalityContext, NaturalitySweep,
};
use twistsemi::aut::enumerate_units;
use twistsemi::group::FiniteGroup;
use twistsemi::hom::{GroupHom, RingHom};
use twistsemi::oracle;
use twistsemi::report::{CheckRecord, Report};
use twistsemi::semilin::{is_member_exhaustive, semilinearize, semilinearize_morphism, SemiGroup};
use twistsemi::twist::{twistify, twistify_morphism, TwistedGroupRing};
use twistsemi::{Caps, Error, Result};

use crate::instance::Instance;

/// Largest twisted ring compared against the basis oracle.
const ORACLE_TWIST_ORDER: usize = 256;
/// Largest ring whose automorphisms are compared against all permutations.
const ORACLE_RING_ORDER: usize = 8;
/// Largest number of maps tried by the brute-force hom oracle.
const ORACLE_MAPS: usize = 1_000_000;

/// Outcome of one requested check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRun {
    pub check: String,
    pub instance_digest: String,
    pub status: &'static str,
    pub cardinalities: BTreeMap<String, usize>,
    pub records: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub correspondence: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl CheckRun {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

fn need_target(inst: &Instance, check: &str) -> Result<RingHom> {
    inst.target
        .clone()
        .ok_or_else(|| Error::InvalidRecipe(format!("check `{check}` needs a `target` or `module` directive")))
}

fn semi_group_check(inst: &Instance, caps: &Caps) -> Result<Report> {
    let target = need_target(inst, "semi_group")?;
    let semi = semilinearize(&target, &inst.aut, caps)?;
    let mut r = Report::new("semi_group");
    r.count("order", semi.order());
    r.count("image_of_to_aut", semi.image_of_to_aut().len());
    let axioms = FiniteGroup::from_table("semi", &semi.group().table());
    r.check("group_axioms", axioms.is_ok(), match &axioms {
        Ok(g) => format!("order {}, {}", g.order(), if g.is_abelian() { "abelian" } else { "non-abelian" }),
        Err(e) => e.to_string(),
    });
    let proj = GroupHom::new(semi.group().clone(), inst.aut.group().clone(), semi.to_aut().table().to_vec());
    r.check(
        "projection_is_hom",
        proj.is_ok(),
        proj.err().map_or("π_s: semi_R(S) → Aut(R) is a group hom".into(), |e| e.to_string()),
    );
    let members = semi
        .pairs()
        .iter()
        .all(|p| is_member_exhaustive(&target, &inst.aut, p.unit, p.aut));
    r.check("membership", members, "every listed pair intertwines f and f∘φ");
    let units = enumerate_units(target.target());
    let complete = units
        .elements()
        .iter()
        .flat_map(|&u| (0..inst.aut.len()).map(move |a| (u, a)))
        .filter(|&(u, a)| is_member_exhaustive(&target, &inst.aut, u, a))
        .count();
    r.check(
        "completeness",
        complete == semi.order(),
        format!("{complete} pairs found by scanning S^× × Aut(R)"),
    );
    Ok(r)
}

fn naturality_check(inst: &Instance, caps: &Caps) -> Result<Report> {
    let target = need_target(inst, "naturality")?;
    let h = CosliceRingMorphism::identity(&target);
    let mut sweep = NaturalitySweep::default();
    for j in [SliceGroupMorphism::identity(&inst.action), trivial_subgroup_inclusion(&inst.action)?] {
        sweep.merge(&NaturalityContext::new(&j, &h, caps)?.sweep(caps)?);
    }
    let mut r = Report::new("naturality");
    r.count("quadruples", sweep.quadruples);
    r.count("both_commute", sweep.both_commute);
    r.count("both_fail", sweep.both_fail);
    r.count("asymmetric", sweep.asymmetric);
    r.check(
        "iff",
        sweep.asymmetric == 0,
        format!("{} asymmetric outcomes in {} quadruples", sweep.asymmetric, sweep.quadruples),
    );
    r.check(
        "reduction",
        sweep.reduction_failures == 0,
        "each square commutes ⇔ it commutes on the elements 1_R·g",
    );
    Ok(r)
}

fn functor_law_check(inst: &Instance, caps: &Caps) -> Result<Report> {
    let mut r = Report::new("functor_laws");
    let id = SliceGroupMorphism::identity(&inst.action);
    let tw = twistify(&inst.action, caps)?;
    r.check(
        "twist_identity",
        *twistify_morphism(&id, caps)?.map() == RingHom::identity(tw.ring()),
        "twist(id_G) = id",
    );
    let incl = trivial_subgroup_inclusion(&inst.action)?;
    let lhs = twistify_morphism(&id.after(&incl)?, caps)?;
    let rhs = twistify_morphism(&id, caps)?.after(&twistify_morphism(&incl, caps)?)?;
    r.check("twist_composition", lhs == rhs, "twist(id ∘ ι) = twist(id) ∘ twist(ι)");

    if let Some(target) = &inst.target {
        let semi = semilinearize(target, &inst.aut, caps)?;
        let idh = CosliceRingMorphism::identity(target);
        r.check(
            "semi_identity",
            semilinearize_morphism(&idh, &semi, &semi)? == GroupHom::identity(semi.group()),
            "semi(id_S) = id",
        );
        let base = RingHom::identity(target.source());
        let chi = twistsemi::actions::check_coslice_morphism(&base, target, target.clone())?;
        let semi_r = semilinearize(&base, &inst.aut, caps)?;
        let lhs = semilinearize_morphism(&idh.after(&chi)?, &semi_r, &semi)?;
        let rhs = semilinearize_morphism(&idh, &semi, &semi)?.after(&semilinearize_morphism(&chi, &semi_r, &semi)?)?;
        r.check("semi_composition", lhs == rhs, "semi(id ∘ f) = semi(id) ∘ semi(f)");
    }
    Ok(r)
}

fn oracle_check(inst: &Instance, caps: &Caps) -> Result<Report> {
    let mut r = Report::new("oracle");
    if inst.ring.order() <= ORACLE_RING_ORDER {
        let fast: Vec<Vec<usize>> = inst.aut.autos().iter().map(|a| a.table().to_vec()).collect();
        let slow = oracle::automorphisms_brute(&inst.ring);
        r.check(
            "automorphisms",
            fast == slow,
            format!("{} by generator search, {} over all permutations", fast.len(), slow.len()),
        );
    }
    if let Some(target) = &inst.target {
        let tw = twistify(&inst.action, caps)?;
        if tw.ring().order() <= ORACLE_TWIST_ORDER && tw.ring().is_tabulated() {
            let fast = enumerate_homs_under(&tw, target, caps)?.homs;
            let slow = oracle::homs_under_by_basis(&tw, target);
            r.check(
                "homs_under",
                fast == slow,
                format!("{} by reduced search, {} over additive-basis images", fast.len(), slow.len()),
            );
        }
        let semi = semilinearize(target, &inst.aut, caps)?;
        let maps = semi.order().checked_pow(inst.group.order() as u32);
        if maps.is_some_and(|m| m <= ORACLE_MAPS) {
            let fast = enumerate_homs_over(&inst.action, &semi, caps)?.homs;
            let slow = oracle::homs_over_brute(inst.action.theta(), semi.to_aut());
            r.check(
                "homs_over",
                fast == slow,
                format!("{} by fiber-constrained search, {} over all maps", fast.len(), slow.len()),
            );
        }
    }
    if r.checks.is_empty() {
        r.check("skipped", true, "instance is larger than every oracle bound");
    }
    Ok(r)
}

fn quantity(inst: &Instance, name: &str, caps: &Caps) -> Result<usize> {
    Ok(match name {
        "automorphisms" => inst.aut.len(),
        "units" => enumerate_units(need_target(inst, name)?.target()).len(),
        "twisted_order" => twistify(&inst.action, caps)?.ring().order(),
        "semi_order" => semilinearize(&need_target(inst, name)?, &inst.aut, caps)?.order(),
        "hom_under" => {
            let (tw, semi) = twisted_and_semi(inst, name, caps)?;
            enumerate_homs_under(&tw, semi.base(), caps)?.homs.len()
        }
        "hom_over" => {
            let (_, semi) = twisted_and_semi(inst, name, caps)?;
            enumerate_homs_over(&inst.action, &semi, caps)?.homs.len()
        }
        other => return Err(Error::InvalidRecipe(format!("unknown quantity `{other}`"))),
    })
}

fn expect_check(inst: &Instance, caps: &Caps) -> Result<Report> {
    let mut r = Report::new("expect");
    for (name, want) in &inst.expects {
        let got = quantity(inst, name, caps)?;
        r.count(name, got);
        r.check(name, got == *want, format!("expected {want}, computed {got}"));
    }
    Ok(r)
}

fn twisted_and_semi(inst: &Instance, check: &str, caps: &Caps) -> Result<(TwistedGroupRing, SemiGroup)> {
    let target = need_target(inst, check)?;
    Ok((twistify(&inst.action, caps)?, semilinearize(&target, &inst.aut, caps)?))
}

fn run_one(inst: &Instance, name: &str, caps: &Caps) -> Result<Report> {
    match name {
        "ring_axioms" => {
            let tw = twistify(&inst.action, caps)?;
            let mut r = Report::new("ring_axioms");
            r.count("twisted_order", tw.ring().order());
            let res = tw.ring().check_ring();
            r.check(
                "twisted_ring",
                res.is_ok(),
                res.err().map_or(format!("{} satisfies the unital ring axioms", tw.ring().label()), |e| {
                    e.to_string()
                }),
            );
            Ok(r)
        }
        "semi_group" => semi_group_check(inst, caps),
        "bijection" => {
            let (tw, semi) = twisted_and_semi(inst, name, caps)?;
            verify_bijection(&tw, &semi, caps)
        }
        "naturality" => naturality_check(inst, caps),
        "modules_corollary" => {
            let m = inst.module.as_ref().ok_or_else(|| {
                Error::InvalidRecipe("check `modules_corollary` needs a `module` directive".into())
            })?;
            verify_modules_corollary(&inst.action, m, caps)
        }
        "unit_counit" => {
            let (tw, semi) = twisted_and_semi(inst, name, caps)?;
            unit_counit_checks(&tw, &semi, caps)
        }
        "functor_laws" => functor_law_check(inst, caps),
        "oracle" => oracle_check(inst, caps),
        "expect" => expect_check(inst, caps),
        other => Err(Error::InvalidRecipe(format!("unknown check `{other}`"))),
    }
}

/// Runs every check; a theorem violation becomes a failed record, every
/// other error aborts the run.
pub fn run(inst: &Instance, digest: &str, caps: &Caps, timed: bool) -> Result<Vec<CheckRun>> {
    let mut out = Vec::new();
    let mut names = inst.checks.clone();
    if !inst.expects.is_empty() {
        names.push("expect".to_string());
    }
    for name in &names {
        let start = Instant::now();
        let report = match run_one(inst, name, caps) {
            Ok(r) => r,
            Err(Error::TheoremViolation(msg)) => {
                let mut r = Report::new(name.as_str());
                r.check("theorem_violation", false, msg);
                r
            }
            Err(e) => return Err(e),
        };
        out.push(CheckRun {
            check: name.clone(),
            instance_digest: digest.to_string(),
            status: if report.passed() { "pass" } else { "fail" },
            cardinalities: report.cardinalities,
            records: report.checks,
            correspondence: report.correspondence,
            wall_time_ms: timed.then(|| start.elapsed().as_millis()),
        });
    }
    Ok(out)
}
