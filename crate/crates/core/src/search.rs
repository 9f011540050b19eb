//! Homomorphism search by backtracking over a generating set.
//!
//! Images are chosen for a greedily selected generating set; every choice is
//! immediately propagated through the operations of the source structure,
//! and a conflicting image prunes the branch.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hom::{GroupHom, RingHom};
use crate::ring::FiniteRing;
use crate::Elem;

const UNSET: Elem = usize::MAX;

/// Restrictions on the image of selected source elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Constraints {
    allowed: BTreeMap<Elem, Vec<Elem>>,
}

impl Constraints {
    pub fn new() -> Self {
        Self::default()
    }

    /// Requires `x ↦ y`.
    pub fn pin(self, x: Elem, y: Elem) -> Self {
        self.restrict(x, [y])
    }

    /// Requires the image of `x` to lie in `ys`. Repeated restrictions on the
    /// same element intersect.
    pub fn restrict(mut self, x: Elem, ys: impl IntoIterator<Item = Elem>) -> Self {
        let mut set: Vec<Elem> = ys.into_iter().collect();
        set.sort_unstable();
        set.dedup();
        let merged = match self.allowed.remove(&x) {
            Some(old) => old.into_iter().filter(|v| set.binary_search(v).is_ok()).collect(),
            None => set,
        };
        self.allowed.insert(x, merged);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.allowed.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub node_budget: usize,
    /// When set, candidate and tie-break order is shuffled with this seed.
    /// Results are identical either way.
    pub shuffle_seed: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self::from_caps(&Caps::default())
    }
}

impl SearchOptions {
    pub fn from_caps(caps: &Caps) -> Self {
        SearchOptions {
            node_budget: caps.search_nodes,
            shuffle_seed: None,
        }
    }
}

/// The operations a search propagates through.
trait Structure {
    fn order(&self) -> usize;
    fn arity(&self) -> usize;
    fn apply(&self, op: usize, a: Elem, b: Elem) -> Elem;
    fn distinguished(&self) -> Vec<Elem>;
}

impl Structure for FiniteRing {
    fn order(&self) -> usize {
        FiniteRing::order(self)
    }
    fn arity(&self) -> usize {
        2
    }
    fn apply(&self, op: usize, a: Elem, b: Elem) -> Elem {
        if op == 0 {
            self.add(a, b)
        } else {
            self.mul(a, b)
        }
    }
    fn distinguished(&self) -> Vec<Elem> {
        vec![self.zero(), self.one()]
    }
}

impl Structure for FiniteGroup {
    fn order(&self) -> usize {
        FiniteGroup::order(self)
    }
    fn arity(&self) -> usize {
        1
    }
    fn apply(&self, _op: usize, a: Elem, b: Elem) -> Elem {
        self.op(a, b)
    }
    fn distinguished(&self) -> Vec<Elem> {
        vec![self.identity()]
    }
}

fn extend_closure<S: Structure>(s: &S, inside: &mut [bool], known: &mut Vec<Elem>, new: &[Elem]) {
    let mut stack: Vec<Elem> = new.to_vec();
    while let Some(a) = stack.pop() {
        if inside[a] {
            continue;
        }
        inside[a] = true;
        known.push(a);
        let snapshot = known.len();
        for i in 0..snapshot {
            let b = known[i];
            for op in 0..s.arity() {
                for c in [s.apply(op, a, b), s.apply(op, b, a)] {
                    if !inside[c] {
                        stack.push(c);
                    }
                }
            }
        }
    }
}

fn generators<S: Structure>(s: &S, rng: Option<&mut ChaCha8Rng>) -> Vec<Elem> {
    let n = s.order();
    let mut inside = vec![false; n];
    let mut known = Vec::new();
    extend_closure(s, &mut inside, &mut known, &s.distinguished());
    let mut order: Vec<Elem> = (0..n).collect();
    if let Some(rng) = rng {
        order.shuffle(rng);
    }
    let mut gens = Vec::new();
    while known.len() < n {
        let mut best: Option<(usize, Elem, Vec<bool>, Vec<Elem>)> = None;
        for &x in order.iter().filter(|&&x| !inside[x]) {
            let mut ins = inside.clone();
            let mut kn = known.clone();
            extend_closure(s, &mut ins, &mut kn, &[x]);
            if best.as_ref().map_or(true, |b| kn.len() > b.0) {
                let full = kn.len() == n;
                best = Some((kn.len(), x, ins, kn));
                if full {
                    break;
                }
            }
        }
        let (_, x, ins, kn) = best.expect("some element lies outside a proper closure");
        gens.push(x);
        inside = ins;
        known = kn;
    }
    gens
}

/// A greedily chosen generating set of `ring` under `+` and `×` (together
/// with 0 and 1). Deterministic.
pub fn ring_generators(ring: &FiniteRing) -> Vec<Elem> {
    generators(ring, None)
}

/// A greedily chosen generating set of `group`. Deterministic.
pub fn group_generators(group: &FiniteGroup) -> Vec<Elem> {
    generators(group, None)
}

#[derive(Clone)]
struct Partial {
    img: Vec<Elem>,
    known: Vec<Elem>,
}

struct Search<'a, S: Structure, T: Structure> {
    source: &'a S,
    target: &'a T,
    allowed: Vec<Option<Vec<bool>>>,
    gens: Vec<Elem>,
    candidates: Vec<Elem>,
    rng: Option<ChaCha8Rng>,
    nodes: usize,
    budget: usize,
    found: Vec<Vec<Elem>>,
}

impl<'a, S: Structure, T: Structure> Search<'a, S, T> {
    fn assign(&self, st: &mut Partial, x: Elem, y: Elem) -> bool {
        let mut stack = vec![(x, y)];
        while let Some((a, fa)) = stack.pop() {
            match st.img[a] {
                UNSET => {}
                v if v == fa => continue,
                _ => return false,
            }
            if let Some(ok) = &self.allowed[a] {
                if !ok[fa] {
                    return false;
                }
            }
            st.img[a] = fa;
            st.known.push(a);
            for i in 0..st.known.len() {
                let b = st.known[i];
                let fb = st.img[b];
                for op in 0..self.source.arity() {
                    stack.push((self.source.apply(op, a, b), self.target.apply(op, fa, fb)));
                    stack.push((self.source.apply(op, b, a), self.target.apply(op, fb, fa)));
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize, st: Partial) -> Result<()> {
        if depth == self.gens.len() {
            debug_assert!(st.img.iter().all(|&v| v != UNSET));
            self.found.push(st.img);
            return Ok(());
        }
        let g = self.gens[depth];
        if st.img[g] != UNSET {
            return self.run(depth + 1, st);
        }
        let mut cands: Vec<Elem> = match &self.allowed[g] {
            Some(ok) => (0..ok.len()).filter(|&v| ok[v]).collect(),
            None => self.candidates.clone(),
        };
        if let Some(rng) = self.rng.as_mut() {
            cands.shuffle(rng);
        }
        for c in cands {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::CapExceeded {
                    cap: "search_nodes",
                    limit: self.budget,
                    actual: self.nodes,
                });
            }
            let mut next = st.clone();
            if self.assign(&mut next, g, c) {
                self.run(depth + 1, next)?;
            }
        }
        Ok(())
    }
}

fn search_tables<S: Structure, T: Structure>(
    source: &S,
    target: &T,
    constraints: &Constraints,
    options: &SearchOptions,
) -> Result<Vec<Vec<Elem>>> {
    let n = source.order();
    let mut allowed = vec![None; n];
    for (&x, ys) in &constraints.allowed {
        if x >= n {
            return Err(Error::Incompatible(format!("constraint on element {x} out of range")));
        }
        let mut ok = vec![false; target.order()];
        for &y in ys {
            if y < target.order() {
                ok[y] = true;
            }
        }
        allowed[x] = Some(ok);
    }
    let mut rng = options.shuffle_seed.map(ChaCha8Rng::seed_from_u64);
    let gens = generators(source, rng.as_mut());
    let mut search = Search {
        source,
        target,
        allowed,
        gens,
        candidates: (0..target.order()).collect(),
        rng,
        nodes: 0,
        budget: options.node_budget,
        found: Vec::new(),
    };
    let mut st = Partial {
        img: vec![UNSET; n],
        known: Vec::new(),
    };
    let fixed = source.distinguished().into_iter().zip(target.distinguished());
    for (x, y) in fixed {
        if !search.assign(&mut st, x, y) {
            return Ok(Vec::new());
        }
    }
    search.run(0, st)?;
    let mut found = search.found;
    found.sort();
    found.dedup();
    Ok(found)
}

/// All unital ring homomorphisms `source → target` satisfying `constraints`,
/// sorted by value table.
pub fn ring_homs(
    source: &Arc<FiniteRing>,
    target: &Arc<FiniteRing>,
    constraints: &Constraints,
    options: &SearchOptions,
) -> Result<Vec<RingHom>> {
    search_tables(&**source, &**target, constraints, options)?
        .into_iter()
        .map(|t| RingHom::new(source.clone(), target.clone(), t))
        .collect()
}

/// All group homomorphisms `source → target` satisfying `constraints`,
/// sorted by value table.
pub fn group_homs(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    constraints: &Constraints,
    options: &SearchOptions,
) -> Result<Vec<GroupHom>> {
    search_tables(&**source, &**target, constraints, options)?
        .into_iter()
        .map(|t| GroupHom::new(source.clone(), target.clone(), t))
        .collect()
}
