//! Declarative descriptions of rings and groups, built under caps.

use std::sync::Arc;

use crate::abelian::{endomorphism_ring, FiniteAbelianGroup};
use crate::caps::Caps;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::ring::FiniteRing;
use crate::Elem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingRecipe {
    Zmod(usize),
    /// `F_p[x]/(m)`; the modulus is listed constant term first and must be
    /// irreducible.
    Gf { p: usize, modulus: Vec<usize> },
    /// `Z/p[x]/(m)` for any monic `m`.
    Poly { p: usize, modulus: Vec<usize> },
    Product(Vec<RingRecipe>),
    Matrix { n: usize, p: usize },
    /// `End_Ab` of the abelian group with these invariant factors.
    Endo(Vec<usize>),
    Tables { add: Vec<Vec<Elem>>, mul: Vec<Vec<Elem>> },
}

impl RingRecipe {
    /// Order of the ring, without building it.
    pub fn order(&self) -> Option<usize> {
        match self {
            RingRecipe::Zmod(n) => Some(*n),
            RingRecipe::Gf { p, modulus } | RingRecipe::Poly { p, modulus } => {
                p.checked_pow(modulus.len().saturating_sub(1) as u32)
            }
            RingRecipe::Product(fs) => fs.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()?)),
            RingRecipe::Matrix { n, p } => p.checked_pow((n * n) as u32),
            RingRecipe::Endo(factors) => {
                let m = FiniteAbelianGroup::new(factors.clone()).ok()?;
                // |Hom(Z/a, Z/b)| = gcd(a, b)
                factors.iter().try_fold(1usize, |acc, &a| {
                    m.factors().iter().try_fold(acc, |acc, &b| acc.checked_mul(gcd(a, b)))
                })
            }
            RingRecipe::Tables { add, .. } => Some(add.len()),
        }
    }

    pub fn build(&self, caps: &Caps) -> Result<Arc<FiniteRing>> {
        if let RingRecipe::Endo(factors) = self {
            let m = FiniteAbelianGroup::new(factors.clone())?;
            return Ok(endomorphism_ring(&m, caps)?.ring().clone());
        }
        Caps::ensure("ring_order", caps.ring_order, self.order().unwrap_or(usize::MAX))?;
        let ring = match self {
            RingRecipe::Zmod(n) => FiniteRing::zmod(*n)?,
            RingRecipe::Gf { p, modulus } => FiniteRing::gf(*p, modulus)?,
            RingRecipe::Poly { p, modulus } => FiniteRing::poly_quotient(*p, modulus)?,
            RingRecipe::Product(fs) => {
                let built = fs.iter().map(|f| f.build(caps)).collect::<Result<Vec<_>>>()?;
                FiniteRing::product(&built)?
            }
            RingRecipe::Matrix { n, p } => FiniteRing::matrix(*n, *p)?,
            RingRecipe::Tables { add, mul } => FiniteRing::from_tables("R", add, mul)?,
            RingRecipe::Endo(_) => unreachable!(),
        };
        Ok(Arc::new(ring))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupRecipe {
    Cyclic(usize),
    Symmetric(usize),
    Product(Vec<GroupRecipe>),
    Table(Vec<Vec<Elem>>),
}

impl GroupRecipe {
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupRecipe::Cyclic(n) => Some(*n),
            GroupRecipe::Symmetric(n) => (1..=*n).try_fold(1usize, |acc, k| acc.checked_mul(k)),
            GroupRecipe::Product(fs) => fs.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()?)),
            GroupRecipe::Table(t) => Some(t.len()),
        }
    }

    pub fn build(&self, caps: &Caps) -> Result<Arc<FiniteGroup>> {
        Caps::ensure("group_order", caps.group_order, self.order().unwrap_or(usize::MAX))?;
        let group = match self {
            GroupRecipe::Cyclic(n) => FiniteGroup::cyclic(*n)?,
            GroupRecipe::Symmetric(n) => FiniteGroup::symmetric(*n)?,
            GroupRecipe::Product(fs) => {
                let built = fs.iter().map(|f| f.build(caps)).collect::<Result<Vec<_>>>()?;
                FiniteGroup::product(&built)?
            }
            GroupRecipe::Table(t) => FiniteGroup::from_table("G", t)?,
        };
        Ok(Arc::new(group))
    }
}
