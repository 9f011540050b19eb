//! Twistification: the twisted group ring `R_θ[G]` of an action and the ring
//! map induced by a slice morphism.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::actions::{check_coslice_morphism, CosliceRingMorphism, GroupAction, SliceGroupMorphism};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ring::{FiniteRing, TwistFormula};
use crate::Elem;

/// `R_θ[G]` with its structure map `r ↦ r·e`.
///
/// Elements are coefficient vectors `(c_g)_{g∈G}` ordered lexicographically,
/// the coefficient of the first group element being most significant.
#[derive(Debug, Clone)]
pub struct TwistedGroupRing {
    action: GroupAction,
    ring: Arc<FiniteRing>,
    structure_map: RingHom,
}

impl PartialEq for TwistedGroupRing {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action && self.ring == other.ring
    }
}

fn twisted_order(action: &GroupAction) -> Option<usize> {
    action
        .ring()
        .order()
        .checked_pow(action.group().order() as u32)
}

type CacheKey = (String, [u8; 32], [u8; 32], Vec<Vec<Elem>>);

/// Tabulated twisted rings already validated in this process.
fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<FiniteRing>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<FiniteRing>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds `R_θ[G]`. Rings of order at most `caps.materialize` are stored as
/// tables; larger ones multiply on demand.
pub fn twistify(action: &GroupAction, caps: &Caps) -> Result<TwistedGroupRing> {
    Caps::ensure("group_order", caps.group_order, action.group().order())?;
    let order = twisted_order(action).unwrap_or(usize::MAX);
    Caps::ensure("twist_order", caps.twist_order, order)?;
    let formula = TwistFormula {
        base: action.ring().clone(),
        group: action.group().clone(),
        theta: action.permutations(),
    };
    let label = if action.is_trivial() {
        format!("{}[{}]", action.ring().label(), action.group().label())
    } else {
        format!("{}_θ[{}]", action.ring().label(), action.group().label())
    };
    let key = (label.clone(), action.ring().digest(), action.group().digest(), formula.theta.clone());
    let cached = (order <= caps.materialize)
        .then(|| cache().lock().ok().and_then(|c| c.get(&key).cloned()))
        .flatten();
    let ring = if let Some(ring) = cached {
        ring
    } else if order <= caps.materialize {
        let names = (0..order).map(|x| formula.name(x)).collect();
        let f = formula.clone();
        let ring = FiniteRing::tabulate(
            label,
            names,
            |a, b| {
                let (u, v) = (f.decode(a), f.decode(b));
                let s: Vec<Elem> = u.iter().zip(&v).map(|(&x, &y)| f.base.add(x, y)).collect();
                f.encode(&s)
            },
            |a, b| f.encode(&f.mul_coeffs(&f.decode(a), &f.decode(b))),
        )?;
        let ring = Arc::new(ring);
        if let Ok(mut c) = cache().lock() {
            c.insert(key, ring.clone());
        }
        ring
    } else {
        Arc::new(FiniteRing::from_formula(label, formula.clone())?)
    };
    let e = action.group().identity();
    let table = action
        .ring()
        .elements()
        .map(|r| formula.monomial(r, e))
        .collect();
    let structure_map = RingHom::new(action.ring().clone(), ring.clone(), table)?;
    Ok(TwistedGroupRing {
        action: action.clone(),
        ring,
        structure_map,
    })
}

impl TwistedGroupRing {
    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    /// `R → R_θ[G]`, `r ↦ r·e`.
    pub fn structure_map(&self) -> &RingHom {
        &self.structure_map
    }

    pub fn base(&self) -> &Arc<FiniteRing> {
        self.action.ring()
    }

    fn radix(&self) -> usize {
        self.base().order()
    }

    /// Coefficient vector of `x`, indexed by group element.
    pub fn coefficients(&self, mut x: Elem) -> Vec<Elem> {
        let q = self.radix();
        let mut coeffs = vec![0; self.action.group().order()];
        for slot in coeffs.iter_mut().rev() {
            *slot = x % q;
            x /= q;
        }
        coeffs
    }

    pub fn from_coefficients(&self, coeffs: &[Elem]) -> Elem {
        let q = self.radix();
        coeffs.iter().fold(0, |acc, &c| acc * q + c)
    }

    pub fn coefficient(&self, x: Elem, g: Elem) -> Elem {
        self.coefficients(x)[g]
    }

    /// The monomial `r·g`.
    pub fn monomial(&self, r: Elem, g: Elem) -> Elem {
        let mut coeffs = vec![self.base().zero(); self.action.group().order()];
        coeffs[g] = r;
        self.from_coefficients(&coeffs)
    }

    /// `1_R·g`.
    pub fn group_element(&self, g: Elem) -> Elem {
        self.monomial(self.base().one(), g)
    }

    /// All monomials as `(r, g, r·g)`, group-major.
    pub fn monomials(&self) -> Vec<(Elem, Elem, Elem)> {
        self.action
            .group()
            .elements()
            .flat_map(|g| self.base().elements().map(move |r| (r, g)))
            .map(|(r, g)| (r, g, self.monomial(r, g)))
            .collect()
    }

    /// Ring map induced by a slice morphism `j: G → K` whose target action
    /// is `target`'s: `Σ r_g g ↦ Σ r_g j(g)`.
    pub fn map_along(&self, j: &SliceGroupMorphism, target: &TwistedGroupRing) -> Result<CosliceRingMorphism> {
        if j.source() != &self.action || j.target() != &target.action {
            return Err(Error::Incompatible(
                "slice morphism does not connect these twisted group rings".into(),
            ));
        }
        let base = self.base();
        let kn = target.action.group().order();
        let table = self
            .ring
            .elements()
            .map(|x| {
                let mut out = vec![base.zero(); kn];
                for (g, c) in self.coefficients(x).into_iter().enumerate() {
                    let k = j.map().apply(g);
                    out[k] = base.add(out[k], c);
                }
                target.from_coefficients(&out)
            })
            .collect();
        let h = RingHom::new(self.ring.clone(), target.ring.clone(), table)?;
        check_coslice_morphism(&self.structure_map, &target.structure_map, h)
    }

    /// Monomial multiplication table in the form `(r₁·h₁)(r₂·h₂)`, used for
    /// display.
    pub fn monomial_products(&self) -> Vec<((Elem, Elem), (Elem, Elem), Elem)> {
        let mons = self.monomials();
        let mut out = Vec::with_capacity(mons.len() * mons.len());
        for &(r1, g1, a) in &mons {
            for &(r2, g2, b) in &mons {
                out.push(((r1, g1), (r2, g2), self.ring.mul(a, b)));
            }
        }
        out
    }
}

/// Twistification on morphisms: builds both twisted group rings and the
/// induced map between them.
pub fn twistify_morphism(j: &SliceGroupMorphism, caps: &Caps) -> Result<CosliceRingMorphism> {
    let source = twistify(j.source(), caps)?;
    let target = twistify(j.target(), caps)?;
    source.map_along(j, &target)
}
