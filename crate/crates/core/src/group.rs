//! Finite groups as multiplication tables.

use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ring::{mixed_digits, mixed_index};
use crate::Elem;

#[derive(Clone)]
pub struct FiniteGroup {
    label: String,
    names: Vec<String>,
    op: Vec<Elem>,
    inv: Vec<Elem>,
    id: Elem,
    digest: [u8; 32],
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order())
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.digest == other.digest
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a full multiplication table. Identity and inverses are
    /// derived from the table.
    pub fn from_table(label: impl Into<String>, table: &[Vec<Elem>]) -> Result<Self> {
        let n = table.len();
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "group row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::MalformedTable(format!(
                    "group row {i} contains out-of-range element {bad}"
                )));
            }
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_flat(label.into(), names, table.iter().flatten().copied().collect())
    }

    pub(crate) fn from_flat(label: String, names: Vec<String>, op: Vec<Elem>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty group".into()));
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|a| op[e * n + a] == a && op[a * n + e] == a))
            .ok_or(Error::NotAGroup {
                reason: "no identity",
                witness: vec![],
            })?;
        let mut inv = vec![n; n];
        for a in 0..n {
            match (0..n).find(|&b| op[a * n + b] == id && op[b * n + a] == id) {
                Some(b) => inv[a] = b,
                None => {
                    return Err(Error::NotAGroup {
                        reason: "missing inverse",
                        witness: vec![a],
                    })
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = op[a * n + b];
                for c in 0..n {
                    if op[ab * n + c] != op[a * n + op[b * n + c]] {
                        return Err(Error::NotAGroup {
                            reason: "not associative",
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }
        let mut h = Sha256::new();
        h.update(b"group");
        h.update((n as u64).to_le_bytes());
        for v in &op {
            h.update((*v as u64).to_le_bytes());
        }
        Ok(FiniteGroup {
            label,
            names,
            op,
            inv,
            id,
            digest: h.finalize().into(),
        })
    }

    /// Cyclic group `Z/n`, element `k` is `g^k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRecipe("cyclic group needs n >= 1".into()));
        }
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let op = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_flat(format!("C{n}"), names, op)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group")
    }

    /// Symmetric group on `n` points; permutations in lexicographic order of
    /// their one-line notation, composed right to left.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidRecipe("symmetric group needs 1 <= n <= 5".into()));
        }
        let mut perms = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        let names = perms
            .iter()
            .map(|p| format!("[{}]", p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")))
            .collect();
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed");
        let m = perms.len();
        let mut op = Vec::with_capacity(m * m);
        for a in &perms {
            for b in &perms {
                let c: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                op.push(index(&c));
            }
        }
        Self::from_flat(format!("S{n}"), names, op)
    }

    /// Direct product, first factor most significant.
    pub fn product(factors: &[Arc<FiniteGroup>]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidRecipe("empty product".into()));
        }
        let radices: Vec<usize> = factors.iter().map(|g| g.order()).collect();
        let n: usize = radices.iter().product();
        let names = (0..n)
            .map(|x| {
                let parts: Vec<&str> = mixed_digits(x, &radices)
                    .iter()
                    .zip(factors)
                    .map(|(&c, g)| g.name(c))
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let mut op = Vec::with_capacity(n * n);
        for a in 0..n {
            let u = mixed_digits(a, &radices);
            for b in 0..n {
                let v = mixed_digits(b, &radices);
                let w: Vec<usize> = factors
                    .iter()
                    .zip(u.iter().zip(&v))
                    .map(|(g, (&x, &y))| g.op(x, y))
                    .collect();
                op.push(mixed_index(&w, &radices));
            }
        }
        let label = factors.iter().map(|g| g.label().to_string()).collect::<Vec<_>>().join(" × ");
        Self::from_flat(label, names, op)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> Elem {
        self.id
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        self.op[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn digest(&self) -> [u8; 32] {
        self.digest
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.id {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn table(&self) -> Vec<Vec<Elem>> {
        self.elements()
            .map(|a| self.elements().map(|b| self.op(a, b)).collect())
            .collect()
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_of_order_six() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert!(!s3.is_abelian());
        let involutions = s3.elements().filter(|&a| s3.element_order(a) == 2).count();
        assert_eq!(involutions, 3);
    }

    #[test]
    fn cyclic_inverse_agrees_with_op() {
        let c5 = FiniteGroup::cyclic(5).unwrap();
        for a in c5.elements() {
            assert_eq!(c5.op(a, c5.inv(a)), c5.identity());
        }
    }

    #[test]
    fn nonassociative_table_is_rejected() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table("loop", &t),
            Err(Error::NotAGroup { .. })
        ));
    }

    #[test]
    fn product_of_cyclic_groups() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let v4 = FiniteGroup::product(&[c2.clone(), c2]).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.elements().all(|a| v4.op(a, a) == v4.identity()));
        assert_eq!(v4.name(2), "(g,e)");
    }
}
