//! Slow reference enumerations that share nothing with the search code
//! beyond the structures themselves. Used by tests to cross-check the
//! optimized paths.

use std::sync::Arc;

use crate::abelian::additive_structure;
use crate::group::FiniteGroup;
use crate::hom::{GroupHom, RingHom};
use crate::ring::FiniteRing;
use crate::twist::TwistedGroupRing;
use crate::Elem;

/// Calls `f` on every function `0..n → 0..m` as a table, in lexicographic
/// order, first entry most significant.
fn for_each_map(n: usize, m: usize, mut f: impl FnMut(&[Elem])) {
    if m == 0 && n > 0 {
        return;
    }
    let mut table = vec![0; n];
    loop {
        f(&table);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            table[i] += 1;
            if table[i] < m {
                break;
            }
            table[i] = 0;
        }
    }
}

fn is_ring_hom(s: &FiniteRing, t: &FiniteRing, map: &[Elem]) -> bool {
    if map[s.one()] != t.one() {
        return false;
    }
    s.elements().all(|a| {
        s.elements().all(|b| {
            map[s.add(a, b)] == t.add(map[a], map[b]) && map[s.mul(a, b)] == t.mul(map[a], map[b])
        })
    })
}

fn is_group_hom(g: &FiniteGroup, k: &FiniteGroup, map: &[Elem]) -> bool {
    g.elements()
        .all(|a| g.elements().all(|b| map[g.op(a, b)] == k.op(map[a], map[b])))
}

/// Every ring hom, by testing all `|T|^|S|` maps.
pub fn ring_homs_brute(source: &Arc<FiniteRing>, target: &Arc<FiniteRing>) -> Vec<RingHom> {
    let mut out = Vec::new();
    for_each_map(source.order(), target.order(), |m| {
        if is_ring_hom(source, target, m) {
            out.push(RingHom::new(source.clone(), target.clone(), m.to_vec()).expect("checked"));
        }
    });
    out
}

/// Every group hom, by testing all `|K|^|G|` maps.
pub fn group_homs_brute(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Vec<GroupHom> {
    let mut out = Vec::new();
    for_each_map(source.order(), target.order(), |m| {
        if is_group_hom(source, target, m) {
            out.push(GroupHom::new(source.clone(), target.clone(), m.to_vec()).expect("checked"));
        }
    });
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Ring automorphisms as permutation tables, by testing every permutation.
/// Only sensible for rings of order at most 8 or so.
pub fn automorphisms_brute(ring: &FiniteRing) -> Vec<Vec<Elem>> {
    let mut p: Vec<usize> = ring.elements().collect();
    let mut out = Vec::new();
    loop {
        if is_ring_hom(ring, ring, &p) {
            out.push(p.clone());
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    out.sort();
    out
}

/// Homs `R_θ[G] → S` under `χ`, found by choosing images for an additive
/// basis of `R_θ[G]` and keeping the additive extensions that are
/// multiplicative, unital and restrict to `χ` on `R`.
pub fn homs_under_by_basis(twisted: &TwistedGroupRing, chi: &RingHom) -> Vec<RingHom> {
    let src = twisted.ring();
    let tgt = chi.target();
    let add = additive_structure(src);
    let factors = add.group.factors().to_vec();
    let candidates: Vec<Vec<Elem>> = factors
        .iter()
        .map(|&d| tgt.elements().filter(|&y| d % tgt.additive_order(y) == 0).collect())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; factors.len()];
    if candidates.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let images: Vec<Elem> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        let mut table = vec![0; src.order()];
        for (gi, &x) in add.to_ring.iter().enumerate() {
            let coords = add.group.coords(gi);
            table[x] = coords
                .iter()
                .zip(&images)
                .fold(tgt.zero(), |acc, (&k, &y)| tgt.add(acc, tgt.scale(k, y)));
        }
        let under = chi
            .source()
            .elements()
            .all(|r| table[twisted.structure_map().apply(r)] == chi.apply(r));
        if under && is_ring_hom(src, tgt, &table) {
            out.push(RingHom::new(src.clone(), tgt.clone(), table).expect("checked"));
        }
        let mut i = choice.len();
        loop {
            if i == 0 {
                out.sort_by(|a, b| a.table().cmp(b.table()));
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Homs `G → P` whose composite with `p: P → A` equals `θ: G → A`, by
/// testing all maps.
pub fn homs_over_brute(theta: &GroupHom, p: &GroupHom) -> Vec<GroupHom> {
    group_homs_brute(theta.source(), p.source())
        .into_iter()
        .filter(|a| theta.source().elements().all(|g| p.apply(a.apply(g)) == theta.apply(g)))
        .collect()
}
