//! Dense Cayley-table representation of finite semigroups.
//!
//! Every algebra in the workbench is eventually lowered to a
//! [`FiniteSemigroup`]: carrier `{0, .., size-1}`, a `size * size`
//! multiplication table, and optionally an inversion table and labels.
//! Zero and identity are detected from the table on construction, so two
//! semigroups with the same table, inverses and labels compare equal.

mod closure;
mod text;

pub use closure::{generate_closure, CanonicalKey, Closure, GeneratorSet, DEFAULT_CLOSURE_LIMIT};

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    mul: Vec<usize>,
    inv: Option<Vec<usize>>,
    labels: Option<Vec<String>>,
    zero: Option<usize>,
    identity: Option<usize>,
}

impl FiniteSemigroup {
    /// Builds a semigroup from a row-major table (`mul[a * size + b] = a·b`).
    ///
    /// Only shape and index range are checked here; associativity is the
    /// caller's obligation and can be confirmed with [`Self::is_associative`].
    pub fn from_table(size: usize, mul: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::BadTable("empty carrier".into()));
        }
        if mul.len() != size * size {
            return Err(Error::BadTable(format!(
                "expected {} entries, found {}",
                size * size,
                mul.len()
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&x| x >= size) {
            return Err(Error::IndexInvalid(bad));
        }
        let mut s = FiniteSemigroup {
            size,
            mul,
            inv: None,
            labels: None,
            zero: None,
            identity: None,
        };
        s.zero = (0..size).find(|&z| (0..size).all(|a| s.mul(z, a) == z && s.mul(a, z) == z));
        s.identity = (0..size).find(|&e| (0..size).all(|a| s.mul(e, a) == a && s.mul(a, e) == a));
        Ok(s)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::BadTable(format!(
                "{} labels for {} elements",
                labels.len(),
                self.size
            )));
        }
        if labels.iter().any(|l| l.contains('\n')) {
            return Err(Error::BadTable("labels must be single-line".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Attaches an inversion table after checking it against the
    /// inverse-semigroup laws.
    ///
    /// Uniqueness of inverses is not re-checked here (that costs a quadratic
    /// scan); use [`Self::into_inverse`] when the table is not trusted.
    pub fn with_inverses(mut self, inv: Vec<usize>) -> Result<Self> {
        if inv.len() != self.size {
            return Err(Error::BadTable("inversion table has wrong length".into()));
        }
        for (a, &b) in inv.iter().enumerate() {
            if b >= self.size {
                return Err(Error::IndexInvalid(b));
            }
            if self.mul(self.mul(a, b), a) != a || self.mul(self.mul(b, a), b) != b {
                return Err(Error::NotInverse {
                    elem: a,
                    witnesses: vec![],
                });
            }
        }
        self.inv = Some(inv);
        Ok(self)
    }

    /// Computes the inversion table and attaches it.
    pub fn into_inverse(self) -> Result<Self> {
        let inv = self.compute_inverses()?;
        Ok(FiniteSemigroup {
            inv: Some(inv),
            ..self
        })
    }

    pub fn without_inverses(mut self) -> Self {
        self.inv = None;
        self
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    /// Row `a` of the table: `row(a)[b] = a·b`.
    #[inline]
    pub fn row(&self, a: usize) -> &[usize] {
        &self.mul[a * self.size..(a + 1) * self.size]
    }

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    #[inline]
    pub fn inv(&self, a: usize) -> Option<usize> {
        self.inv.as_ref().map(|t| t[a])
    }

    pub fn inverse_table(&self) -> Option<&[usize]> {
        self.inv.as_deref()
    }

    pub fn is_inverse(&self) -> bool {
        self.inv.is_some()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The display label of `a`, falling back to its index.
    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        assert!(k >= 1, "semigroup powers start at 1");
        (1..k).fold(a, |acc, _| self.mul(acc, a))
    }

    /// Left-to-right product of a nonempty sequence.
    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> Option<usize> {
        items.into_iter().reduce(|acc, x| self.mul(acc, x))
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// Returns a triple `(a, b, c)` with `(ab)c != a(bc)`, if any.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                let ab_row = self.row(ab);
                for (c, &abc) in ab_row.iter().enumerate() {
                    if abc != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Finds, for every `a`, the unique `b` with `aba = a` and `bab = b`.
    pub fn compute_inverses(&self) -> Result<Vec<usize>> {
        let n = self.size;
        let mut inv = Vec::with_capacity(n);
        for a in 0..n {
            let witnesses: Vec<usize> = (0..n)
                .filter(|&b| self.mul(self.mul(a, b), a) == a && self.mul(self.mul(b, a), b) == b)
                .collect();
            if witnesses.len() != 1 {
                return Err(Error::NotInverse { elem: a, witnesses });
            }
            inv.push(witnesses[0]);
        }
        Ok(inv)
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&e| self.is_idempotent(e)).collect()
    }

    /// Least subset containing `seed` closed under multiplication (and
    /// inversion when `closed_under_inv`), re-indexed in breadth-first
    /// discovery order. Returns the subsemigroup and its embedding.
    pub fn subsemigroup(
        &self,
        seed: &[usize],
        closed_under_inv: bool,
    ) -> Result<(FiniteSemigroup, Vec<usize>)> {
        if seed.is_empty() {
            return Err(Error::BadParameters("empty seed".into()));
        }
        if let Some(&bad) = seed.iter().find(|&&x| x >= self.size) {
            return Err(Error::IndexInvalid(bad));
        }
        let inv = if closed_under_inv {
            Some(self.inv.as_ref().ok_or(Error::MissingInverses)?)
        } else {
            None
        };

        let mut gens: Vec<usize> = Vec::new();
        let push_gen = |g: usize, gens: &mut Vec<usize>| {
            if !gens.contains(&g) {
                gens.push(g);
            }
        };
        for &g in seed {
            push_gen(g, &mut gens);
        }
        if let Some(inv) = inv {
            for &g in seed {
                push_gen(inv[g], &mut gens);
            }
        }

        let mut local = vec![usize::MAX; self.size];
        let mut embedding = Vec::new();
        let mut queue = VecDeque::new();
        for &g in &gens {
            local[g] = embedding.len();
            embedding.push(g);
            queue.push_back(g);
        }
        while let Some(a) = queue.pop_front() {
            for &g in &gens {
                let p = self.mul(a, g);
                if local[p] == usize::MAX {
                    local[p] = embedding.len();
                    embedding.push(p);
                    queue.push_back(p);
                }
            }
        }
        Ok((self.restrict(&embedding, &local)?, embedding))
    }

    /// Restricts to a product-closed subset given in the desired order.
    pub fn restrict_to(&self, subset: &[usize]) -> Result<FiniteSemigroup> {
        let mut local = vec![usize::MAX; self.size];
        for (i, &x) in subset.iter().enumerate() {
            if x >= self.size {
                return Err(Error::IndexInvalid(x));
            }
            local[x] = i;
        }
        self.restrict(subset, &local)
    }

    fn restrict(&self, subset: &[usize], local: &[usize]) -> Result<FiniteSemigroup> {
        let k = subset.len();
        let mut mul = Vec::with_capacity(k * k);
        for &a in subset {
            for &b in subset {
                let p = local[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(Error::BadTable(format!(
                        "subset not closed: {}·{} leaves it",
                        a, b
                    )));
                }
                mul.push(p);
            }
        }
        let mut sub = FiniteSemigroup::from_table(k, mul)?;
        if let Some(inv) = &self.inv {
            let sub_inv: Option<Vec<usize>> = subset
                .iter()
                .map(|&a| Some(local[inv[a]]).filter(|&i| i != usize::MAX))
                .collect();
            if let Some(sub_inv) = sub_inv {
                sub.inv = Some(sub_inv);
            }
        }
        if let Some(labels) = &self.labels {
            sub.labels = Some(subset.iter().map(|&a| labels[a].clone()).collect());
        }
        Ok(sub)
    }

    /// Checks that the table restricted to `subset` is closed.
    pub fn is_closed(&self, subset: &BTreeSet<usize>) -> bool {
        subset
            .iter()
            .all(|&a| subset.iter().all(|&b| subset.contains(&self.mul(a, b))))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (a + 1..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// True when the semigroup is a group (identity plus two-sided inverses).
    pub fn is_group(&self) -> bool {
        match self.identity {
            Some(e) => (0..self.size)
                .all(|a| (0..self.size).any(|b| self.mul(a, b) == e && self.mul(b, a) == e)),
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn semilattice2() -> FiniteSemigroup {
        FiniteSemigroup::from_table(2, vec![0, 0, 0, 1]).unwrap()
    }

    fn left_zero_band2() -> FiniteSemigroup {
        FiniteSemigroup::from_table(2, vec![0, 0, 1, 1]).unwrap()
    }

    fn z3() -> FiniteSemigroup {
        let mul = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a + b) % 3))
            .collect();
        FiniteSemigroup::from_table(3, mul).unwrap()
    }

    #[test]
    fn detects_zero_and_identity() {
        let y2 = semilattice2();
        assert_eq!(y2.zero(), Some(0));
        assert_eq!(y2.identity(), Some(1));
        assert_eq!(left_zero_band2().zero(), None);
        assert_eq!(left_zero_band2().identity(), None);
    }

    #[test]
    fn associativity_examples() {
        assert!(semilattice2().is_associative());
        assert!(left_zero_band2().is_associative());
        let bad = FiniteSemigroup::from_table(2, vec![1, 0, 0, 0]).unwrap();
        assert!(bad.associativity_witness().is_some());
    }

    #[test]
    fn left_zero_band_is_not_inverse() {
        match left_zero_band2().compute_inverses() {
            Err(Error::NotInverse { elem, witnesses }) => {
                assert_eq!(elem, 0);
                assert_eq!(witnesses, vec![0, 1]);
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn group_inverses() {
        assert_eq!(z3().compute_inverses().unwrap(), vec![0, 2, 1]);
        assert_eq!(z3().idempotents(), vec![0]);
        assert!(z3().is_group());
    }

    #[test]
    fn subsemigroup_of_identity_is_trivial() {
        let y2 = semilattice2();
        let (sub, emb) = y2.subsemigroup(&[1], false).unwrap();
        assert_eq!(sub.size(), 1);
        assert_eq!(emb, vec![1]);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteSemigroup::from_table(2, vec![0, 0, 0]).is_err());
        assert_eq!(
            FiniteSemigroup::from_table(2, vec![0, 0, 0, 2]),
            Err(Error::IndexInvalid(2))
        );
    }
}
