//! Image sets of composed words, level by level.
//!
//! The image of a node is the image of its outer word when each slot ranges
//! over the image of the word filling it; because slot variable sets are
//! disjoint, slot values vary independently and this is exact. Subtrees
//! that agree up to renaming of variables share one computation, keyed by
//! their shape.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;

use super::{CheckConfig, Counterexample, IdentityReport, Verdict};
use crate::algebra::FiniteSemigroup;
use crate::error::{Error, Result};
use crate::terms::{ComposedWord, VariableId, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Shape {
    Leaf(Vec<u32>),
    Node(Vec<u32>, Vec<usize>),
}

/// Letters renamed to `0, 1, ...` by first occurrence, and the variables
/// in that order.
fn pattern(w: &Word) -> (Vec<u32>, Vec<VariableId>) {
    let mut order: Vec<VariableId> = Vec::new();
    let mut pos: HashMap<&VariableId, u32> = HashMap::new();
    let letters = w
        .letters()
        .iter()
        .map(|v| {
            *pos.entry(v).or_insert_with(|| {
                order.push(v.clone());
                order.len() as u32 - 1
            })
        })
        .collect();
    (letters, order)
}

/// For each reachable element, the first input tuple (one value per local
/// variable, in first-occurrence order) that produces it.
struct Level {
    witness: Vec<Option<Vec<usize>>>,
}

impl Level {
    fn elements(&self) -> Vec<usize> {
        (0..self.witness.len())
            .filter(|&e| self.witness[e].is_some())
            .collect()
    }
}

struct Hierarchy<'s> {
    s: &'s FiniteSemigroup,
    budget: u128,
    ids: HashMap<Shape, usize>,
    levels: Vec<Level>,
}

impl<'s> Hierarchy<'s> {
    fn new(s: &'s FiniteSemigroup, budget: u128) -> Self {
        Hierarchy {
            s,
            budget,
            ids: HashMap::new(),
            levels: Vec::new(),
        }
    }

    /// Memo id of `cw`, computing its level on first sight.
    fn analyze(&mut self, cw: &ComposedWord) -> Result<usize> {
        let (shape, domains) = match cw {
            ComposedWord::Leaf(w) => {
                let (letters, order) = pattern(w);
                let all: Vec<usize> = (0..self.s.size()).collect();
                (Shape::Leaf(letters), vec![all; order.len()])
            }
            ComposedWord::Node { outer, inner } => {
                let (letters, order) = pattern(outer);
                let mut children = Vec::with_capacity(order.len());
                for slot in &order {
                    children.push(self.analyze(&inner[slot])?);
                }
                let domains = children
                    .iter()
                    .map(|&c| self.levels[c].elements())
                    .collect();
                (Shape::Node(letters, children), domains)
            }
        };
        if let Some(&id) = self.ids.get(&shape) {
            return Ok(id);
        }
        let letters = match &shape {
            Shape::Leaf(l) | Shape::Node(l, _) => l,
        };
        let level = self.enumerate(letters, &domains)?;
        let id = self.levels.len();
        self.levels.push(level);
        self.ids.insert(shape, id);
        Ok(id)
    }

    fn enumerate(&self, letters: &[u32], domains: &[Vec<usize>]) -> Result<Level> {
        let space = domains
            .iter()
            .try_fold(1u128, |acc, d| acc.checked_mul(d.len() as u128))
            .filter(|&t| t <= self.budget);
        if space.is_none() {
            return Err(Error::BudgetExceeded(format!(
                "level with domain sizes {:?}",
                domains.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        let n = self.s.size();
        let mul = self.s.table();
        let mut witness: Vec<Option<Vec<usize>>> = vec![None; n];
        if domains.iter().any(Vec::is_empty) {
            return Ok(Level { witness });
        }
        let k = domains.len();
        let mut digits = vec![0usize; k];
        let mut vals: Vec<usize> = domains.iter().map(|d| d[0]).collect();
        loop {
            let mut acc = vals[letters[0] as usize];
            for &l in &letters[1..] {
                acc = mul[acc * n + vals[l as usize]];
            }
            if witness[acc].is_none() {
                witness[acc] = Some(vals.clone());
            }
            // odometer, last digit fastest
            let mut j = k;
            loop {
                if j == 0 {
                    return Ok(Level { witness });
                }
                j -= 1;
                digits[j] += 1;
                if digits[j] < domains[j].len() {
                    vals[j] = domains[j][digits[j]];
                    break;
                }
                digits[j] = 0;
                vals[j] = domains[j][0];
            }
        }
    }

    /// Fills `out` with a substitution under which `cw` evaluates to `target`.
    fn reconstruct(
        &mut self,
        cw: &ComposedWord,
        target: usize,
        out: &mut BTreeMap<VariableId, usize>,
    ) -> Result<()> {
        let id = self.analyze(cw)?;
        let inputs = self.levels[id].witness[target]
            .clone()
            .expect("target lies in the image");
        match cw {
            ComposedWord::Leaf(w) => {
                let (_, order) = pattern(w);
                for (v, a) in order.into_iter().zip(inputs) {
                    out.insert(v, a);
                }
            }
            ComposedWord::Node { outer, inner } => {
                let (_, order) = pattern(outer);
                for (slot, a) in order.iter().zip(inputs) {
                    self.reconstruct(&inner[slot], a, out)?;
                }
            }
        }
        Ok(())
    }
}

/// Image set of a composed word together with the data to realise each
/// element by a substitution.
pub struct ImageSet<'s> {
    hierarchy: Hierarchy<'s>,
    root: usize,
}

impl<'s> ImageSet<'s> {
    /// Sorted element indices.
    pub fn elements(&self) -> Vec<usize> {
        self.hierarchy.levels[self.root].elements()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.hierarchy.levels[self.root]
            .witness
            .get(e)
            .is_some_and(Option::is_some)
    }

    /// Distinct shapes evaluated.
    pub fn levels_computed(&self) -> usize {
        self.hierarchy.levels.len()
    }

    pub fn witness(&mut self, cw: &ComposedWord, e: usize) -> Result<BTreeMap<VariableId, usize>> {
        if !self.contains(e) {
            return Err(Error::IndexInvalid(e));
        }
        let mut out = BTreeMap::new();
        self.hierarchy.reconstruct(cw, e, &mut out)?;
        Ok(out)
    }
}

/// `{ τ(cw) : τ }`, computed level by level. `cfg.budget` bounds each
/// level's tuple enumeration.
pub fn image_set<'s>(
    s: &'s FiniteSemigroup,
    cw: &ComposedWord,
    cfg: &CheckConfig,
) -> Result<ImageSet<'s>> {
    check_disjoint(cw)?;
    let mut hierarchy = Hierarchy::new(s, cfg.budget);
    let root = hierarchy.analyze(cw)?;
    Ok(ImageSet { hierarchy, root })
}

fn check_disjoint(cw: &ComposedWord) -> Result<()> {
    if let ComposedWord::Node { inner, .. } = cw {
        let mut seen: HashMap<VariableId, &VariableId> = HashMap::new();
        for (slot, child) in inner {
            check_disjoint(child)?;
            for v in child.variables() {
                if let Some(prev) = seen.insert(v.clone(), slot) {
                    return Err(Error::DisjointnessViolated(format!(
                        "{} occurs under slots {} and {}",
                        v, prev, slot
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Value of the flattened word under `tau`, without flattening.
pub fn evaluate_composed(
    s: &FiniteSemigroup,
    cw: &ComposedWord,
    tau: &BTreeMap<VariableId, usize>,
) -> Result<usize> {
    let fold = |w: &Word, val: &dyn Fn(&VariableId) -> Result<usize>| -> Result<usize> {
        let mut it = w.letters().iter();
        let mut acc = val(it.next().expect("nonempty"))?;
        for v in it {
            acc = s.mul(acc, val(v)?);
        }
        Ok(acc)
    };
    match cw {
        ComposedWord::Leaf(w) => fold(w, &|v| {
            tau.get(v)
                .copied()
                .ok_or_else(|| Error::UnboundVariable(v.to_string()))
        }),
        ComposedWord::Node { outer, inner } => {
            let mut slots = BTreeMap::new();
            for slot in outer.variables() {
                slots.insert(slot.clone(), evaluate_composed(s, &inner[&slot], tau)?);
            }
            fold(outer, &|v| Ok(slots[v]))
        }
    }
}

/// Decides `cw ≈ cw²` on `s`: it holds iff every image element is
/// idempotent. A failure is realised by a substitution rebuilt from the
/// per-level witnesses and re-evaluated before it is reported.
///
/// `substitutions_checked` is the size of the substitution space the
/// verdict covers, `|S|^vars`, in both outcomes.
pub fn check_idempotent_image(
    s: &FiniteSemigroup,
    cw: &ComposedWord,
    cfg: &CheckConfig,
) -> Result<IdentityReport> {
    let mut image = image_set(s, cw, cfg)?;
    let vars = cw.variables();
    let space = BigUint::from(s.size()).pow(vars.len() as u32);
    let bad = image.elements().into_iter().find(|&e| !s.is_idempotent(e));
    let Some(e) = bad else {
        return Ok(IdentityReport {
            verdict: Verdict::Holds,
            counterexample: None,
            substitutions_checked: space,
        });
    };
    let tau = image.witness(cw, e)?;
    let lhs = evaluate_composed(s, cw, &tau)?;
    let rhs = s.mul(lhs, lhs);
    if lhs != e || lhs == rhs {
        return Err(Error::BadTable(
            "reconstructed witness does not reproduce".into(),
        ));
    }
    Ok(IdentityReport {
        verdict: Verdict::Fails,
        counterexample: Some(Counterexample {
            assignment: tau.into_iter().collect(),
            lhs,
            rhs,
        }),
        substitutions_checked: space,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{b2, rook_monoid};
    use crate::terms::{build_v_composed, Word};
    use std::collections::BTreeSet;

    fn brute_image(s: &FiniteSemigroup, w: &Word) -> BTreeSet<usize> {
        let vars: Vec<VariableId> = w.variables().into_iter().collect();
        let k = vars.len();
        let mut out = BTreeSet::new();
        for idx in 0..s.size().pow(k as u32) {
            let mut tau = BTreeMap::new();
            let mut r = idx;
            for v in vars.iter().rev() {
                tau.insert(v.clone(), r % s.size());
                r /= s.size();
            }
            let val = w
                .letters()
                .iter()
                .map(|v| tau[v])
                .reduce(|a, b| s.mul(a, b))
                .unwrap();
            out.insert(val);
        }
        out
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn degenerate_outer_word() {
        let s = b2().semigroup;
        let v = w("x[1] x[2] x[2] x[1]");
        let cw = ComposedWord::compose(
            w("x[1]"),
            BTreeMap::from([(VariableId::single(1), ComposedWord::Leaf(v.clone()))]),
        )
        .unwrap();
        let img = image_set(&s, &cw, &CheckConfig::default()).unwrap();
        assert_eq!(
            img.elements().into_iter().collect::<BTreeSet<_>>(),
            brute_image(&s, &v)
        );
    }

    #[test]
    fn two_slot_word_over_b2_matches_brute_force() {
        let s = b2().semigroup;
        let cw = ComposedWord::compose(
            w("x[1] x[2] x[1]"),
            BTreeMap::from([
                (VariableId::single(1), ComposedWord::Leaf(w("x[3] x[4]"))),
                (
                    VariableId::single(2),
                    ComposedWord::Leaf(w("x[5] x[6] x[5]")),
                ),
            ]),
        )
        .unwrap();
        let img = image_set(&s, &cw, &CheckConfig::default()).unwrap();
        assert_eq!(
            img.elements().into_iter().collect::<BTreeSet<_>>(),
            brute_image(&s, &cw.flatten())
        );
    }

    #[test]
    fn renamed_copies_share_a_level() {
        let r2 = rook_monoid(2).unwrap();
        let cw = build_v_composed(2, 2, 2).unwrap();
        let img = image_set(&r2, &cw, &CheckConfig::default()).unwrap();
        assert_eq!(img.levels_computed(), 2);
        assert!(img.elements().iter().all(|&e| r2.is_idempotent(e)));
    }

    #[test]
    fn witnesses_realise_their_element() {
        let s = b2().semigroup;
        let cw = build_v_composed(1, 1, 2).unwrap();
        let mut img = image_set(&s, &cw, &CheckConfig::default()).unwrap();
        for e in img.elements() {
            let tau = img.witness(&cw, e).unwrap();
            assert_eq!(tau.len(), cw.variables().len());
            assert_eq!(evaluate_composed(&s, &cw, &tau).unwrap(), e);
        }
    }
}
