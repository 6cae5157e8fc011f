use num_integer::Integer;

use crate::algebra::FiniteSemigroup;
use crate::error::{Error, Result};

/// A finite abelian group given as a direct product of cyclic groups.
///
/// Elements are residue tuples, numbered in lexicographic order, so the
/// identity is always element 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupSpec {
    cyclic_orders: Vec<u32>,
}

impl AbelianGroupSpec {
    pub fn new(cyclic_orders: Vec<u32>) -> Result<Self> {
        if cyclic_orders.is_empty() || cyclic_orders.contains(&0) {
            return Err(Error::BadParameters(
                "cyclic orders must be a nonempty list of positive integers".into(),
            ));
        }
        Ok(AbelianGroupSpec { cyclic_orders })
    }

    pub fn trivial() -> Self {
        AbelianGroupSpec {
            cyclic_orders: vec![1],
        }
    }

    pub fn cyclic(order: u32) -> Result<Self> {
        Self::new(vec![order])
    }

    pub fn cyclic_orders(&self) -> &[u32] {
        &self.cyclic_orders
    }

    pub fn order(&self) -> usize {
        self.cyclic_orders.iter().map(|&o| o as usize).product()
    }

    pub fn exponent(&self) -> u64 {
        self.cyclic_orders
            .iter()
            .fold(1u64, |acc, &o| acc.lcm(&(o as u64)))
    }

    /// All residue tuples in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &o in &self.cyclic_orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..o).map(move |r| {
                        let mut t = prefix.clone();
                        t.push(r);
                        t
                    })
                })
                .collect();
        }
        out
    }

    fn index_of(&self, tuple: &[u32]) -> usize {
        tuple
            .iter()
            .zip(&self.cyclic_orders)
            .fold(0, |acc, (&r, &o)| acc * o as usize + r as usize)
    }

    pub fn label(tuple: &[u32]) -> String {
        tuple
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// The group as a Cayley table, with inverses and residue labels.
    pub fn to_semigroup(&self) -> FiniteSemigroup {
        let elems = self.elements();
        let n = elems.len();
        let add = |a: &[u32], b: &[u32]| -> Vec<u32> {
            a.iter()
                .zip(b)
                .zip(&self.cyclic_orders)
                .map(|((&x, &y), &o)| (x + y) % o)
                .collect()
        };
        let mut mul = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                mul.push(self.index_of(&add(a, b)));
            }
        }
        let inv = elems
            .iter()
            .map(|a| {
                let neg: Vec<u32> = a
                    .iter()
                    .zip(&self.cyclic_orders)
                    .map(|(&x, &o)| (o - x) % o)
                    .collect();
                self.index_of(&neg)
            })
            .collect();
        FiniteSemigroup::from_table(n, mul)
            .and_then(|s| s.with_labels(elems.iter().map(|e| Self::label(e)).collect()))
            .and_then(|s| s.with_inverses(inv))
            .expect("cyclic products form a group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four() {
        let g = AbelianGroupSpec::new(vec![2, 2]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.exponent(), 2);
        let s = g.to_semigroup();
        assert!(s.is_group());
        assert!(s.is_commutative());
        assert_eq!(s.identity(), Some(0));
        assert_eq!(s.label(3), "1.1");
    }

    #[test]
    fn exponent_is_lcm() {
        assert_eq!(AbelianGroupSpec::new(vec![4, 6]).unwrap().exponent(), 12);
        assert_eq!(AbelianGroupSpec::trivial().exponent(), 1);
        assert!(AbelianGroupSpec::new(vec![]).is_err());
    }
}
