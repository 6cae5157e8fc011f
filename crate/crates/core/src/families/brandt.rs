use super::AbelianGroupSpec;
use crate::algebra::{generate_closure, CanonicalKey, Closure, FiniteSemigroup, GeneratorSet};
use crate::error::{Error, Result};

/// An element of `I × G × I ∪ {0}`; `l` and `r` are 0-based indices into
/// `I`, `g` an element index of the group table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BrandtElement {
    Zero,
    Triple { l: usize, g: usize, r: usize },
}

impl CanonicalKey for BrandtElement {
    fn canonical_key(&self) -> Vec<u8> {
        match *self {
            BrandtElement::Zero => vec![0],
            BrandtElement::Triple { l, g, r } => {
                let mut k = vec![1];
                for x in [l, g, r] {
                    k.extend_from_slice(&(x as u32).to_le_bytes());
                }
                k
            }
        }
    }
}

/// `(l1,g1,r1)·(l2,g2,r2) = (l1, g1g2, r2)` when `r1 = l2`, zero otherwise.
pub fn brandt_product(
    group: &FiniteSemigroup,
    a: &BrandtElement,
    b: &BrandtElement,
) -> BrandtElement {
    match (*a, *b) {
        (
            BrandtElement::Triple {
                l: l1,
                g: g1,
                r: r1,
            },
            BrandtElement::Triple {
                l: l2,
                g: g2,
                r: r2,
            },
        ) if r1 == l2 => BrandtElement::Triple {
            l: l1,
            g: group.mul(g1, g2),
            r: r2,
        },
        _ => BrandtElement::Zero,
    }
}

/// Zero first, then triples in lexicographic `(l, g, r)` order.
pub fn brandt_elements(group_order: usize, i_size: usize) -> Vec<BrandtElement> {
    let mut out = vec![BrandtElement::Zero];
    for l in 0..i_size {
        for g in 0..group_order {
            for r in 0..i_size {
                out.push(BrandtElement::Triple { l, g, r });
            }
        }
    }
    out
}

/// Brandt semigroup over an arbitrary group given by its table.
pub fn brandt_over_group(group: &FiniteSemigroup, i_size: usize) -> Result<Closure<BrandtElement>> {
    if i_size == 0 {
        return Err(Error::BadParameters("index set must be nonempty".into()));
    }
    if !group.is_group() {
        return Err(Error::BadParameters(
            "Brandt construction needs a group".into(),
        ));
    }
    let elems = brandt_elements(group.size(), i_size);
    let expected = elems.len();
    let gens = GeneratorSet::new(elems, |a: &BrandtElement, b: &BrandtElement| {
        brandt_product(group, a, b)
    });
    let closure = generate_closure(&gens, expected)?;
    debug_assert_eq!(closure.elements.len(), expected);
    let ginv = group.compute_inverses()?;
    closure
        .with_concrete_inverse(|x| match *x {
            BrandtElement::Zero => BrandtElement::Zero,
            BrandtElement::Triple { l, g, r } => BrandtElement::Triple {
                l: r,
                g: ginv[g],
                r: l,
            },
        })?
        .with_labels(|x| match *x {
            BrandtElement::Zero => "0".to_string(),
            BrandtElement::Triple { l, g, r } => {
                format!("({},{},{})", l + 1, group.label(g), r + 1)
            }
        })
}

/// `B_{G,I}` over an abelian group, `|I| = i_size`.
pub fn brandt_semigroup(group: &AbelianGroupSpec, i_size: usize) -> Result<Closure<BrandtElement>> {
    brandt_over_group(&group.to_semigroup(), i_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::b2;

    #[test]
    fn trivial_group_gives_b2_table() {
        let b = brandt_semigroup(&AbelianGroupSpec::trivial(), 2).unwrap();
        assert_eq!(b.semigroup.size(), 5);
        assert_eq!(b.semigroup.table(), b2().semigroup.table());
    }

    #[test]
    fn sizes_and_idempotents() {
        let z2 = AbelianGroupSpec::cyclic(2).unwrap();
        let b = brandt_semigroup(&z2, 2).unwrap().semigroup;
        assert_eq!(b.size(), 9);
        assert_eq!(b.zero(), Some(0));
        assert_eq!(b.compute_inverses().unwrap(), b.inverse_table().unwrap());
        // zero plus one idempotent per index
        assert_eq!(b.idempotents().len(), 3);
    }

    #[test]
    fn mismatched_indices_multiply_to_zero() {
        let g = AbelianGroupSpec::cyclic(3).unwrap().to_semigroup();
        let a = BrandtElement::Triple { l: 0, g: 1, r: 1 };
        let b = BrandtElement::Triple { l: 0, g: 2, r: 0 };
        assert_eq!(brandt_product(&g, &a, &b), BrandtElement::Zero);
        assert_eq!(
            brandt_product(&g, &b, &a),
            BrandtElement::Triple { l: 0, g: 0, r: 1 }
        );
    }
}
