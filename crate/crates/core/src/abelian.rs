//! Finite abelian groups in invariant-factor form and their endomorphism
//! rings.

use std::collections::HashMap;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ring::{mixed_digits, mixed_index, FiniteRing};
use crate::Elem;

/// `Z/n₁ × … × Z/n_k` with `n₁ | n₂ | … | n_k`. Elements are residue tuples
/// ordered lexicographically, first coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<usize>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidRecipe("invariant factors must be positive".into()));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidRecipe(format!(
                "invariant factors must form a divisibility chain ({} does not divide {})",
                w[0], w[1]
            )));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn coords(&self, x: Elem) -> Vec<usize> {
        mixed_digits(x, &self.factors)
    }

    pub fn from_coords(&self, c: &[usize]) -> Elem {
        let reduced: Vec<usize> = c.iter().zip(&self.factors).map(|(v, n)| v % n).collect();
        mixed_index(&reduced, &self.factors)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let s: Vec<usize> = self
            .coords(a)
            .iter()
            .zip(self.coords(b))
            .map(|(x, y)| x + y)
            .collect();
        self.from_coords(&s)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let s: Vec<usize> = self
            .coords(a)
            .iter()
            .zip(&self.factors)
            .map(|(x, n)| (n - x) % n)
            .collect();
        self.from_coords(&s)
    }

    pub fn scale(&self, k: usize, a: Elem) -> Elem {
        let s: Vec<usize> = self.coords(a).iter().map(|x| x * k).collect();
        self.from_coords(&s)
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> Elem {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        self.from_coords(&c)
    }

    pub fn name(&self, x: Elem) -> String {
        let c = self.coords(x);
        match c.len() {
            0 => "0".into(),
            1 => c[0].to_string(),
            _ => format!("({})", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")),
        }
    }

    pub fn label(&self) -> String {
        if self.factors.is_empty() {
            return "0".into();
        }
        self.factors
            .iter()
            .map(|n| format!("Z/{n}"))
            .collect::<Vec<_>>()
            .join(" × ")
    }
}

/// `End_Ab(M)` together with the value table of each element.
#[derive(Debug, Clone)]
pub struct EndomorphismRing {
    module: FiniteAbelianGroup,
    ring: Arc<FiniteRing>,
    maps: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, Elem>,
}

impl EndomorphismRing {
    pub fn module(&self) -> &FiniteAbelianGroup {
        &self.module
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    /// The additive map that ring element `e` denotes.
    pub fn map(&self, e: Elem) -> &[Elem] {
        &self.maps[e]
    }

    /// Ring element with the given value table, if the table is additive.
    pub fn element_of(&self, table: &[Elem]) -> Option<Elem> {
        self.index.get(table).copied()
    }
}

/// All additive self-maps of `m`, sorted by value table, with pointwise
/// addition and composition `(a·b)(x) = a(b(x))`.
pub fn endomorphism_ring(m: &FiniteAbelianGroup, caps: &Caps) -> Result<EndomorphismRing> {
    Caps::ensure("module_order", caps.module_order, m.order())?;
    let images: Vec<Vec<Elem>> = m
        .factors()
        .iter()
        .map(|&n| m.elements().filter(|&v| m.scale(n, v) == 0).collect())
        .collect();
    let count = images
        .iter()
        .try_fold(1usize, |acc, v| acc.checked_mul(v.len()))
        .unwrap_or(usize::MAX);
    Caps::ensure("ring_order", caps.ring_order, count)?;

    let radices: Vec<usize> = images.iter().map(Vec::len).collect();
    let mut maps: Vec<Vec<Elem>> = (0..count)
        .map(|k| {
            let choice = mixed_digits(k, &radices);
            let gens: Vec<Elem> = choice.iter().zip(&images).map(|(&c, v)| v[c]).collect();
            m.elements()
                .map(|x| {
                    m.coords(x)
                        .iter()
                        .zip(&gens)
                        .fold(0, |acc, (&c, &g)| m.add(acc, m.scale(c, g)))
                })
                .collect()
        })
        .collect();
    maps.sort();
    let index: HashMap<Vec<Elem>, Elem> =
        maps.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let lookup = |t: Vec<Elem>| index[&t];
    let names = maps
        .iter()
        .map(|t| {
            let gens: Vec<String> = (0..m.rank()).map(|i| m.name(t[m.generator(i)])).collect();
            format!("[{}]", gens.join("; "))
        })
        .collect();
    let ring = FiniteRing::tabulate(
        format!("End({})", m.label()),
        names,
        |a, b| lookup(maps[a].iter().zip(&maps[b]).map(|(&x, &y)| m.add(x, y)).collect()),
        |a, b| lookup(maps[b].iter().map(|&x| maps[a][x]).collect()),
    )?;
    Ok(EndomorphismRing {
        module: m.clone(),
        ring: Arc::new(ring),
        maps,
        index,
    })
}

/// An identification of a ring's additive group with a [`FiniteAbelianGroup`].
#[derive(Debug, Clone)]
pub struct AdditiveStructure {
    pub group: FiniteAbelianGroup,
    /// Ring elements forming a basis matching the invariant factors.
    pub basis: Vec<Elem>,
    /// Group element index to ring element.
    pub to_ring: Vec<Elem>,
    /// Ring element to group element index.
    pub from_ring: Vec<Elem>,
}

fn divisor_chains(n: usize, prev: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 1 {
        out.push(cur.clone());
        return;
    }
    let mut d = prev.max(2);
    while d <= n {
        if n % d == 0 && d % prev == 0 {
            cur.push(d);
            divisor_chains(n / d, d, cur, out);
            cur.pop();
        }
        d += 1;
    }
}

/// Decomposes the additive group of `ring` into invariant factors and finds
/// a matching basis.
pub fn additive_structure(ring: &FiniteRing) -> AdditiveStructure {
    let n = ring.order();
    let exponent = ring.elements().map(|a| ring.additive_order(a)).max().unwrap_or(1);
    let mut chains = Vec::new();
    divisor_chains(n, 1, &mut Vec::new(), &mut chains);
    chains.retain(|c| c.last().copied().unwrap_or(1) == exponent);
    for chain in chains {
        let mut picked = vec![0; chain.len()];
        let mut span = vec![false; n];
        span[ring.zero()] = true;
        if pick_basis(ring, &chain, chain.len(), &mut picked, &span) {
            let group = FiniteAbelianGroup::new(chain).expect("valid chain");
            let to_ring: Vec<Elem> = group
                .elements()
                .map(|x| {
                    group
                        .coords(x)
                        .iter()
                        .zip(&picked)
                        .fold(ring.zero(), |acc, (&c, &b)| ring.add(acc, ring.scale(c, b)))
                })
                .collect();
            let mut from_ring = vec![0; n];
            for (x, &r) in to_ring.iter().enumerate() {
                from_ring[r] = x;
            }
            return AdditiveStructure {
                group,
                basis: picked,
                to_ring,
                from_ring,
            };
        }
    }
    unreachable!("every finite abelian group has an invariant factor decomposition")
}

fn pick_basis(ring: &FiniteRing, chain: &[usize], slot: usize, picked: &mut [Elem], span: &[bool]) -> bool {
    if slot == 0 {
        return span.iter().all(|&s| s);
    }
    let k = slot - 1;
    let order = chain[k];
    for b in ring.elements() {
        if ring.additive_order(b) != order {
            continue;
        }
        let multiples: Vec<Elem> = (1..order).map(|c| ring.scale(c, b)).collect();
        if multiples.iter().any(|&x| span[x]) {
            continue;
        }
        let mut next = span.to_vec();
        for s in ring.elements().filter(|&s| span[s]) {
            for &x in &multiples {
                next[ring.add(s, x)] = true;
            }
        }
        picked[k] = b;
        if pick_basis(ring, chain, k, picked, &next) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn end_z2_and_end_z4_are_the_residue_rings() {
        let caps = Caps::default();
        let e2 = endomorphism_ring(&FiniteAbelianGroup::new(vec![2]).unwrap(), &caps).unwrap();
        assert_eq!(**e2.ring(), FiniteRing::zmod(2).unwrap());
        let e4 = endomorphism_ring(&FiniteAbelianGroup::new(vec![4]).unwrap(), &caps).unwrap();
        assert_eq!(**e4.ring(), FiniteRing::zmod(4).unwrap());
    }

    #[test]
    fn end_of_klein_four_has_sixteen_elements() {
        let caps = Caps::default();
        let m = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let e = endomorphism_ring(&m, &caps).unwrap();
        assert_eq!(e.ring().order(), 16);
        assert!(!e.ring().is_commutative());
        assert_eq!(e.map(e.ring().one()), &[0, 1, 2, 3]);
    }

    #[test]
    fn zero_module_gives_zero_ring() {
        let caps = Caps::default();
        let e = endomorphism_ring(&FiniteAbelianGroup::new(vec![1]).unwrap(), &caps).unwrap();
        assert_eq!(e.ring().order(), 1);
        assert_eq!(e.ring().zero(), e.ring().one());
    }

    #[test]
    fn bad_chain_is_rejected() {
        assert!(FiniteAbelianGroup::new(vec![4, 2]).is_err());
        assert!(FiniteAbelianGroup::new(vec![2, 0]).is_err());
    }

    #[test]
    fn module_cap() {
        let caps = Caps {
            module_order: 4,
            ..Caps::default()
        };
        let m = FiniteAbelianGroup::new(vec![2, 2, 2]).unwrap();
        assert!(matches!(
            endomorphism_ring(&m, &caps),
            Err(Error::CapExceeded { cap: "module_order", .. })
        ));
        let m = FiniteAbelianGroup::new(vec![2, 2, 2]).unwrap();
        assert!(matches!(
            endomorphism_ring(&m, &Caps::default()),
            Err(Error::CapExceeded { cap: "ring_order", .. })
        ));
    }

    #[test]
    fn additive_structure_of_small_rings() {
        let z2 = Arc::new(FiniteRing::zmod(2).unwrap());
        let z4 = Arc::new(FiniteRing::zmod(4).unwrap());
        let r = FiniteRing::product(&[z2, z4]).unwrap();
        let s = additive_structure(&r);
        assert_eq!(s.group.factors(), &[2, 4]);
        let f4 = FiniteRing::poly_quotient(2, &[1, 1, 1]).unwrap();
        let s = additive_structure(&f4);
        assert_eq!(s.group.factors(), &[2, 2]);
        for x in s.group.elements() {
            for y in s.group.elements() {
                assert_eq!(
                    s.to_ring[s.group.add(x, y)],
                    f4.add(s.to_ring[x], s.to_ring[y])
                );
            }
        }
    }
}
