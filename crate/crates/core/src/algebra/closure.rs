use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::FiniteSemigroup;
use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_LIMIT: usize = 1_000_000;

/// Injective byte encoding of a concrete element, used for deduplication.
pub trait CanonicalKey {
    fn canonical_key(&self) -> Vec<u8>;
}

/// Concrete generators together with the (pure, associative) product they
/// are closed under.
pub struct GeneratorSet<T, P> {
    pub elements: Vec<T>,
    pub product: P,
}

impl<T, P> GeneratorSet<T, P>
where
    T: CanonicalKey + Clone,
    P: Fn(&T, &T) -> T,
{
    pub fn new(elements: Vec<T>, product: P) -> Self {
        GeneratorSet { elements, product }
    }

    pub fn close(&self, limit: usize) -> Result<Closure<T>> {
        generate_closure(self, limit)
    }
}

/// A closure together with the index <-> concrete element correspondence.
#[derive(Debug, Clone)]
pub struct Closure<T> {
    pub semigroup: FiniteSemigroup,
    pub elements: Vec<T>,
    index: HashMap<Vec<u8>, usize>,
}

impl<T: CanonicalKey> Closure<T> {
    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(&x.canonical_key()).copied()
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    /// Attaches the inversion table induced by a concrete inversion map.
    /// Fails when the carrier is not closed under it or the laws break.
    pub fn with_concrete_inverse(mut self, invert: impl Fn(&T) -> T) -> Result<Self> {
        let inv = self
            .elements
            .iter()
            .map(|x| {
                self.index_of(&invert(x))
                    .ok_or_else(|| Error::BadTable("carrier not closed under inversion".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.semigroup = self.semigroup.with_inverses(inv)?;
        Ok(self)
    }

    /// Attaches inverses found by table search.
    pub fn with_computed_inverses(mut self) -> Result<Self> {
        self.semigroup = self.semigroup.into_inverse()?;
        Ok(self)
    }

    pub fn with_labels(mut self, label: impl Fn(&T) -> String) -> Result<Self> {
        let labels = self.elements.iter().map(label).collect();
        self.semigroup = self.semigroup.with_labels(labels)?;
        Ok(self)
    }
}

/// Smallest product-closed superset of the generators.
///
/// Elements are numbered in breadth-first discovery order: the distinct
/// generators first, in the order given, then right multiples by
/// generators. Generating from a full, already closed carrier therefore
/// reproduces its order exactly.
pub fn generate_closure<T, P>(gens: &GeneratorSet<T, P>, limit: usize) -> Result<Closure<T>>
where
    T: CanonicalKey + Clone,
    P: Fn(&T, &T) -> T,
{
    if gens.elements.is_empty() {
        return Err(Error::BadParameters("no generators".into()));
    }
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut elements: Vec<T> = Vec::new();
    let mut gen_ids: Vec<usize> = Vec::new();

    for g in &gens.elements {
        let key = g.canonical_key();
        if let Some(&i) = index.get(&key) {
            if !gen_ids.contains(&i) {
                gen_ids.push(i);
            }
            continue;
        }
        if elements.len() == limit {
            return Err(Error::LimitExceeded(limit));
        }
        index.insert(key, elements.len());
        gen_ids.push(elements.len());
        elements.push(g.clone());
    }

    let mut cursor = 0;
    while cursor < elements.len() {
        for &g in &gen_ids {
            let p = (gens.product)(&elements[cursor], &elements[g]);
            if let Entry::Vacant(slot) = index.entry(p.canonical_key()) {
                if elements.len() == limit {
                    return Err(Error::LimitExceeded(limit));
                }
                slot.insert(elements.len());
                elements.push(p);
            }
        }
        cursor += 1;
    }

    let n = elements.len();
    let mut mul = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let p = (gens.product)(&elements[a], &elements[b]);
            mul[a * n + b] = *index
                .get(&p.canonical_key())
                .ok_or_else(|| Error::BadTable("product left the closure".into()))?;
        }
    }
    let semigroup = FiniteSemigroup::from_table(n, mul)?;
    Ok(Closure {
        semigroup,
        elements,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Clone, Debug, PartialEq)]
    struct Mod(u8, u8);

    impl CanonicalKey for Mod {
        fn canonical_key(&self) -> Vec<u8> {
            vec![self.0]
        }
    }

    #[test]
    fn cyclic_closure_in_discovery_order() {
        let gens = GeneratorSet::new(vec![Mod(1, 5)], |a: &Mod, b: &Mod| {
            Mod((a.0 + b.0) % a.1, a.1)
        });
        let c = gens.close(10).unwrap();
        let order: Vec<u8> = c.elements.iter().map(|m| m.0).collect();
        assert_eq!(order, vec![1, 2, 3, 4, 0]);
        assert!(c.semigroup.is_group());
    }

    #[test]
    fn limit_is_enforced() {
        let gens = GeneratorSet::new(vec![Mod(1, 5)], |a: &Mod, b: &Mod| {
            Mod((a.0 + b.0) % a.1, a.1)
        });
        assert_eq!(gens.close(3).unwrap_err(), Error::LimitExceeded(3));
    }
}
