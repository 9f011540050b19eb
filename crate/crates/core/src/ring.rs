//! Finite unital rings stored as operation tables, or (for large twisted
//! group rings) as a product formula evaluated on demand.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::Elem;

/// Number of random general triples checked for rings without tables.
pub const SAMPLED_TRIPLES: usize = 10_000;
const SAMPLE_SEED: u64 = 0x7457_6973_7453_656d;

#[derive(Clone)]
struct Tables {
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
}

/// Multiplication of `R_θ[G]` computed from `(r₁h₁)(r₂h₂) = r₁θ_{h₁}(r₂)·h₁h₂`.
///
/// Elements are coefficient vectors indexed by the group's element order,
/// encoded big-endian in base `|R|` (the coefficient of the first group
/// element is the most significant digit).
#[derive(Clone)]
pub(crate) struct TwistFormula {
    pub(crate) base: Arc<FiniteRing>,
    pub(crate) group: Arc<FiniteGroup>,
    pub(crate) theta: Vec<Vec<Elem>>,
}

impl TwistFormula {
    pub(crate) fn order(&self) -> usize {
        self.base.order().pow(self.group.order() as u32)
    }

    pub(crate) fn decode(&self, mut x: Elem) -> Vec<Elem> {
        let q = self.base.order();
        let m = self.group.order();
        let mut coeffs = vec![0; m];
        for slot in coeffs.iter_mut().rev() {
            *slot = x % q;
            x /= q;
        }
        coeffs
    }

    pub(crate) fn encode(&self, coeffs: &[Elem]) -> Elem {
        let q = self.base.order();
        coeffs.iter().fold(0, |acc, &c| acc * q + c)
    }

    pub(crate) fn monomial(&self, r: Elem, g: Elem) -> Elem {
        let mut coeffs = vec![self.base.zero(); self.group.order()];
        coeffs[g] = r;
        self.encode(&coeffs)
    }

    fn add(&self, x: Elem, y: Elem) -> Elem {
        let (a, b) = (self.decode(x), self.decode(y));
        let sum: Vec<Elem> = a.iter().zip(&b).map(|(&p, &q)| self.base.add(p, q)).collect();
        self.encode(&sum)
    }

    fn neg(&self, x: Elem) -> Elem {
        let a: Vec<Elem> = self.decode(x).into_iter().map(|c| self.base.neg(c)).collect();
        self.encode(&a)
    }

    pub(crate) fn mul_coeffs(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let base = &self.base;
        let zero = base.zero();
        let mut out = vec![zero; a.len()];
        for (h1, &c1) in a.iter().enumerate() {
            if c1 == zero {
                continue;
            }
            for (h2, &c2) in b.iter().enumerate() {
                if c2 == zero {
                    continue;
                }
                let k = self.group.op(h1, h2);
                let term = base.mul(c1, self.theta[h1][c2]);
                out[k] = base.add(out[k], term);
            }
        }
        out
    }

    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let prod = self.mul_coeffs(&self.decode(x), &self.decode(y));
        self.encode(&prod)
    }

    pub(crate) fn name(&self, x: Elem) -> String {
        let coeffs = self.decode(x);
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != self.base.zero())
            .map(|(g, &c)| format!("{}·{}", self.base.name(c), self.group.name(g)))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

#[derive(Clone)]
enum Arith {
    Table(Tables),
    Formula(TwistFormula),
}

/// A finite ring with identity. Elements are the indices `0..order`.
#[derive(Clone)]
pub struct FiniteRing {
    label: String,
    order: usize,
    zero: Elem,
    one: Elem,
    arith: Arith,
    names: Option<Vec<String>>,
    digest: [u8; 32],
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

/// Rings compare by structure (operation tables), not by label.
impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.digest == other.digest
    }
}

impl Eq for FiniteRing {}

fn index_of_identity(n: usize, table: &[Elem]) -> Option<Elem> {
    (0..n).find(|&e| (0..n).all(|a| table[e * n + a] == a && table[a * n + e] == a))
}

impl FiniteRing {
    /// Validates explicit addition and multiplication tables. The additive and
    /// multiplicative identities are located from the tables.
    pub fn from_tables(
        label: impl Into<String>,
        add: &[Vec<Elem>],
        mul: &[Vec<Elem>],
    ) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty ring".into()));
        }
        if mul.len() != n {
            return Err(Error::MalformedTable(format!(
                "addition has {n} rows, multiplication has {}",
                mul.len()
            )));
        }
        for (which, t) in [("addition", add), ("multiplication", mul)] {
            for (i, row) in t.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::MalformedTable(format!(
                        "{which} row {i} has {} entries, expected {n}",
                        row.len()
                    )));
                }
                if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                    return Err(Error::MalformedTable(format!(
                        "{which} row {i} contains out-of-range element {bad}"
                    )));
                }
            }
        }
        let flat_add: Vec<Elem> = add.iter().flatten().copied().collect();
        let flat_mul: Vec<Elem> = mul.iter().flatten().copied().collect();
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_flat(label.into(), names, flat_add, flat_mul)
    }

    pub(crate) fn from_flat(
        label: String,
        names: Vec<String>,
        add: Vec<Elem>,
        mul: Vec<Elem>,
    ) -> Result<Self> {
        let n = names.len();
        let zero = index_of_identity(n, &add).ok_or(Error::NoIdentity { op: "addition" })?;
        let one =
            index_of_identity(n, &mul).ok_or(Error::NoIdentity { op: "multiplication" })?;
        let mut neg = vec![n; n];
        for a in 0..n {
            match (0..n).find(|&b| add[a * n + b] == zero) {
                Some(b) => neg[a] = b,
                None => {
                    return Err(Error::NotAbelianAddition {
                        reason: "missing additive inverse",
                        witness: vec![a],
                    })
                }
            }
        }
        let mut h = Sha256::new();
        h.update(b"table");
        h.update((n as u64).to_le_bytes());
        for v in add.iter().chain(&mul) {
            h.update((*v as u64).to_le_bytes());
        }
        let ring = FiniteRing {
            label,
            order: n,
            zero,
            one,
            arith: Arith::Table(Tables { add, mul, neg }),
            names: Some(names),
            digest: h.finalize().into(),
        };
        ring.check_ring()?;
        Ok(ring)
    }

    pub(crate) fn from_formula(label: String, formula: TwistFormula) -> Result<Self> {
        let mut h = Sha256::new();
        h.update(b"twist");
        h.update(formula.base.digest);
        h.update(formula.group.digest());
        for perm in &formula.theta {
            for v in perm {
                h.update((*v as u64).to_le_bytes());
            }
        }
        let one = formula.monomial(formula.base.one(), formula.group.identity());
        let ring = FiniteRing {
            label,
            order: formula.order(),
            zero: 0,
            one,
            arith: Arith::Formula(formula),
            names: None,
            digest: h.finalize().into(),
        };
        ring.check_ring()?;
        Ok(ring)
    }

    /// Builds a table-backed ring from arithmetic closures; the result is
    /// validated exhaustively.
    pub(crate) fn tabulate(
        label: String,
        names: Vec<String>,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let n = names.len();
        let mut at = Vec::with_capacity(n * n);
        let mut mt = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                at.push(add(a, b));
                mt.push(mul(a, b));
            }
        }
        Self::from_flat(label, names, at, mt)
    }

    /// `Z/n` with residues in ascending order.
    pub fn zmod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRecipe("zmod needs n >= 1".into()));
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::tabulate(format!("Z/{n}"), names, |a, b| (a + b) % n, |a, b| (a * b) % n)
    }

    /// `Z/p[x]/(f)` for a monic `f`, coefficients given constant term first.
    /// Element `Σ aᵢxⁱ` has index `Σ aᵢpⁱ`.
    pub fn poly_quotient(p: usize, modulus: &[usize]) -> Result<Self> {
        let d = modulus.len().saturating_sub(1);
        if p < 2 || d == 0 {
            return Err(Error::InvalidRecipe(
                "polynomial quotient needs p >= 2 and degree >= 1".into(),
            ));
        }
        if modulus[d] % p != 1 {
            return Err(Error::InvalidRecipe("modulus polynomial must be monic".into()));
        }
        let n = p.pow(d as u32);
        let digits = |mut x: Elem| {
            let mut v = vec![0; d];
            for slot in v.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            v
        };
        let undigits = |v: &[usize]| v.iter().rev().fold(0, |acc, &c| acc * p + c);
        let add = |a: Elem, b: Elem| {
            let s: Vec<usize> = digits(a)
                .iter()
                .zip(digits(b))
                .map(|(x, y)| (x + y) % p)
                .collect();
            undigits(&s)
        };
        let mul = |a: Elem, b: Elem| {
            let (u, v) = (digits(a), digits(b));
            let mut prod = vec![0usize; 2 * d - 1];
            for (i, &x) in u.iter().enumerate() {
                for (j, &y) in v.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            // x^d = -(m_0 + ... + m_{d-1} x^{d-1})
            for k in (d..prod.len()).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                prod[k] = 0;
                for (i, &m) in modulus[..d].iter().enumerate() {
                    let idx = k - d + i;
                    prod[idx] = (prod[idx] + (p - (c * (m % p)) % p)) % p;
                }
            }
            undigits(&prod[..d])
        };
        let names = (0..n).map(|x| poly_name(&digits(x))).collect();
        let label = format!("Z/{p}[x]/({})", poly_name(&modulus.iter().map(|c| c % p).collect::<Vec<_>>()));
        Self::tabulate(label, names, add, mul)
    }

    /// A Galois field presented as `Z/p[x]/(f)`. Fails unless the quotient is
    /// a field.
    pub fn gf(p: usize, modulus: &[usize]) -> Result<Self> {
        let mut ring = Self::poly_quotient(p, modulus)?;
        let units = crate::aut::enumerate_units(&ring);
        if units.len() != ring.order() - 1 {
            return Err(Error::InvalidRecipe(format!(
                "{} is not a field",
                ring.label()
            )));
        }
        ring.label = format!("GF({})", ring.order());
        Ok(ring)
    }

    /// Direct product; tuples are ordered lexicographically, first factor
    /// most significant.
    pub fn product(factors: &[Arc<FiniteRing>]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidRecipe("empty product".into()));
        }
        let radices: Vec<usize> = factors.iter().map(|r| r.order()).collect();
        let n: usize = radices.iter().product();
        let names = (0..n)
            .map(|x| {
                let parts: Vec<String> = mixed_digits(x, &radices)
                    .iter()
                    .zip(factors)
                    .map(|(&c, r)| r.name(c))
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let op = |a: Elem, b: Elem, mul: bool| {
            let (u, v) = (mixed_digits(a, &radices), mixed_digits(b, &radices));
            let w: Vec<usize> = factors
                .iter()
                .zip(u.iter().zip(&v))
                .map(|(r, (&x, &y))| if mul { r.mul(x, y) } else { r.add(x, y) })
                .collect();
            mixed_index(&w, &radices)
        };
        let label = factors.iter().map(|r| r.label().to_string()).collect::<Vec<_>>().join(" × ");
        Self::tabulate(label, names, |a, b| op(a, b, false), |a, b| op(a, b, true))
    }

    /// `n × n` matrices over `Z/p`, entries row-major, first entry most
    /// significant.
    pub fn matrix(n: usize, p: usize) -> Result<Self> {
        if n == 0 || p == 0 {
            return Err(Error::InvalidRecipe("matrix ring needs n, p >= 1".into()));
        }
        let radices = vec![p; n * n];
        let count = (p as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
        if count > u32::MAX as u128 {
            return Err(Error::CapExceeded {
                cap: "ring_order",
                limit: u32::MAX as usize,
                actual: usize::MAX,
            });
        }
        let size = count as usize;
        let names = (0..size)
            .map(|x| {
                let e = mixed_digits(x, &radices);
                let rows: Vec<String> = e
                    .chunks(n)
                    .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                format!("[{}]", rows.join("; "))
            })
            .collect();
        let add = |a: Elem, b: Elem| {
            let (u, v) = (mixed_digits(a, &radices), mixed_digits(b, &radices));
            let w: Vec<usize> = u.iter().zip(&v).map(|(x, y)| (x + y) % p).collect();
            mixed_index(&w, &radices)
        };
        let mul = |a: Elem, b: Elem| {
            let (u, v) = (mixed_digits(a, &radices), mixed_digits(b, &radices));
            let mut w = vec![0; n * n];
            for i in 0..n {
                for j in 0..n {
                    w[i * n + j] = (0..n).map(|k| u[i * n + k] * v[k * n + j]).sum::<usize>() % p;
                }
            }
            mixed_index(&w, &radices)
        };
        Self::tabulate(format!("M_{n}(Z/{p})"), names, add, mul)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn digest(&self) -> [u8; 32] {
        self.digest
    }

    /// Whether full operation tables are stored.
    pub fn is_tabulated(&self) -> bool {
        matches!(self.arith, Arith::Table(_))
    }

    pub(crate) fn formula(&self) -> Option<&TwistFormula> {
        match &self.arith {
            Arith::Formula(f) => Some(f),
            Arith::Table(_) => None,
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.arith {
            Arith::Table(t) => t.add[a * self.order + b],
            Arith::Formula(f) => f.add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.arith {
            Arith::Table(t) => t.mul[a * self.order + b],
            Arith::Formula(f) => f.mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.arith {
            Arith::Table(t) => t.neg[a],
            Arith::Formula(f) => f.neg(a),
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn name(&self, a: Elem) -> String {
        match (&self.names, &self.arith) {
            (Some(names), _) => names[a].clone(),
            (None, Arith::Formula(f)) => f.name(a),
            (None, Arith::Table(_)) => a.to_string(),
        }
    }

    /// Checks every ring axiom. Table rings are checked over all element
    /// triples. Formula rings are checked on all triples of monomials plus
    /// [`SAMPLED_TRIPLES`] seeded random triples of general elements.
    pub fn check_ring(&self) -> Result<()> {
        match &self.arith {
            Arith::Table(_) => {
                let all: Vec<Elem> = self.elements().collect();
                self.check_on(&all)
            }
            Arith::Formula(f) => {
                let mut monomials = Vec::new();
                for g in f.group.elements() {
                    for r in f.base.elements() {
                        monomials.push(f.monomial(r, g));
                    }
                }
                monomials.sort_unstable();
                monomials.dedup();
                self.check_on(&monomials)?;
                let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
                let mut sample = Vec::with_capacity(3 * SAMPLED_TRIPLES);
                for _ in 0..3 * SAMPLED_TRIPLES {
                    sample.push(rng.gen_range(0..self.order));
                }
                for t in sample.chunks(3) {
                    self.check_triple(t[0], t[1], t[2])?;
                }
                Ok(())
            }
        }
    }

    fn check_on(&self, elems: &[Elem]) -> Result<()> {
        let (zero, one) = (self.zero, self.one);
        for &a in elems {
            if self.add(zero, a) != a || self.add(a, zero) != a {
                return Err(Error::NoIdentity { op: "addition" });
            }
            if self.add(a, self.neg(a)) != zero {
                return Err(Error::NotAbelianAddition {
                    reason: "missing additive inverse",
                    witness: vec![a],
                });
            }
            if self.mul(one, a) != a || self.mul(a, one) != a {
                return Err(Error::NoIdentity { op: "multiplication" });
            }
            for &b in elems {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::NotAbelianAddition {
                        reason: "addition not commutative",
                        witness: vec![a, b],
                    });
                }
            }
        }
        for &a in elems {
            for &b in elems {
                let ab_sum = self.add(a, b);
                let ab = self.mul(a, b);
                for &c in elems {
                    if self.add(ab_sum, c) != self.add(a, self.add(b, c)) {
                        return Err(Error::NotAbelianAddition {
                            reason: "addition not associative",
                            witness: vec![a, b, c],
                        });
                    }
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        for &a in elems {
            for &b in elems {
                for &c in elems {
                    let left = self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c));
                    let right = self.mul(self.add(a, b), c) == self.add(self.mul(a, c), self.mul(b, c));
                    if !(left && right) {
                        return Err(Error::NotDistributive(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_triple(&self, a: Elem, b: Elem, c: Elem) -> Result<()> {
        if self.add(a, b) != self.add(b, a) {
            return Err(Error::NotAbelianAddition {
                reason: "addition not commutative",
                witness: vec![a, b],
            });
        }
        if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
            return Err(Error::NotAbelianAddition {
                reason: "addition not associative",
                witness: vec![a, b, c],
            });
        }
        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
            return Err(Error::NotAssociative(a, b, c));
        }
        let left = self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c));
        let right = self.mul(self.add(a, b), c) == self.add(self.mul(a, c), self.mul(b, c));
        if !(left && right) {
            return Err(Error::NotDistributive(a, b, c));
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Full multiplication table, row-major. Only meaningful for small rings.
    pub fn mul_table(&self) -> Vec<Vec<Elem>> {
        self.elements()
            .map(|a| self.elements().map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn add_table(&self) -> Vec<Vec<Elem>> {
        self.elements()
            .map(|a| self.elements().map(|b| self.add(a, b)).collect())
            .collect()
    }

    /// Additive order of `a`.
    pub fn additive_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut acc = a;
        while acc != self.zero {
            acc = self.add(acc, a);
            k += 1;
        }
        k
    }

    /// `k · a` (repeated addition).
    pub fn scale(&self, k: usize, a: Elem) -> Elem {
        (0..k).fold(self.zero, |acc, _| self.add(acc, a))
    }
}

pub(crate) fn mixed_digits(mut x: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = x % r;
        x /= r;
    }
    out
}

pub(crate) fn mixed_index(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d)
}

fn poly_name(coeffs: &[usize]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => var,
            _ => format!("{c}{var}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}
