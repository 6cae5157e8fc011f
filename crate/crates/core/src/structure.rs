//! J-classes, principal series, Rees factors and their recognition as
//! groups or Brandt semigroups.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::algebra::FiniteSemigroup;
use crate::error::{Error, Result};
use crate::families::{brandt_over_group, BrandtElement};

/// The J-classes of a semigroup and their ideal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JClasses {
    /// Sorted element lists, ordered by least element.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// `below[c][d]`: the principal ideal of class `c` lies inside that of `d`.
    below: Vec<Vec<bool>>,
}

impl JClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn le(&self, c: usize, d: usize) -> bool {
        self.below[c][d]
    }

    /// Classes whose principal ideal lies strictly below that of `c`.
    pub fn strictly_below(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&d| d != c && self.below[d][c])
    }
}

/// `a J b` iff each is reachable from the other by left and right
/// multiplications.
pub fn j_classes(s: &FiniteSemigroup) -> JClasses {
    let n = s.size();
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 2 * n * n);
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for a in 0..n {
        let mut targets = BTreeSet::new();
        for x in 0..n {
            targets.insert(s.mul(a, x));
            targets.insert(s.mul(x, a));
        }
        targets.remove(&a);
        for b in targets {
            g.add_edge(nodes[a], nodes[b], ());
        }
    }
    let mut classes: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|comp| {
            let mut c: Vec<usize> = comp.into_iter().map(|v| v.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    classes.sort();
    let mut class_of = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for &a in c {
            class_of[a] = i;
        }
    }
    let k = classes.len();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for e in g.edge_indices() {
        let (a, b) = g.edge_endpoints(e).expect("edge exists");
        let (ca, cb) = (class_of[a.index()], class_of[b.index()]);
        if ca != cb {
            succ[ca].insert(cb);
        }
    }
    // below[d][c]: class d reachable from class c
    let mut below = vec![vec![false; k]; k];
    #[allow(clippy::needless_range_loop)]
    for c in 0..k {
        let mut stack = vec![c];
        while let Some(d) = stack.pop() {
            if !below[d][c] {
                below[d][c] = true;
                stack.extend(succ[d].iter().copied());
            }
        }
    }
    JClasses {
        classes,
        class_of,
        below,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorTag {
    Group {
        abelian: bool,
        exponent: u64,
        order: usize,
    },
    BrandtOverGroup {
        abelian: bool,
        exponent: u64,
        index: usize,
        order: usize,
    },
    Other,
}

impl FactorTag {
    pub fn exponent(&self) -> Option<u64> {
        match self {
            FactorTag::Group { exponent, .. } | FactorTag::BrandtOverGroup { exponent, .. } => {
                Some(*exponent)
            }
            FactorTag::Other => None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(
            self,
            FactorTag::Group { abelian: true, .. }
                | FactorTag::BrandtOverGroup { abelian: true, .. }
        )
    }
}

impl fmt::Display for FactorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ab = |a: bool| if a { "abelian" } else { "non-abelian" };
        match self {
            FactorTag::Group {
                abelian,
                exponent,
                order,
            } => write!(
                f,
                "group[{},order={},exponent={}]",
                ab(*abelian),
                order,
                exponent
            ),
            FactorTag::BrandtOverGroup {
                abelian,
                exponent,
                index,
                order,
            } => write!(
                f,
                "brandt[{},index={},order={},exponent={}]",
                ab(*abelian),
                index,
                order,
                exponent
            ),
            FactorTag::Other => write!(f, "other"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeriesFactor {
    /// The J-class added at this step.
    pub class: Vec<usize>,
    /// For the bottom step the class itself; afterwards the Rees quotient
    /// with its zero at index 0 and the class after it in sorted order.
    pub semigroup: FiniteSemigroup,
    pub tag: FactorTag,
}

#[derive(Debug, Clone)]
pub struct PrincipalSeries {
    /// `S_0 ⊂ S_1 ⊂ ... ⊂ S_h = S`, as sorted element lists.
    pub chain: Vec<Vec<usize>>,
    pub factors: Vec<SeriesFactor>,
}

impl PrincipalSeries {
    /// Number of steps above the bottom ideal.
    pub fn h(&self) -> usize {
        self.chain.len() - 1
    }
}

/// Rees quotient `(ideal ∪ class) / ideal`.
pub fn rees_quotient(s: &FiniteSemigroup, class: &[usize]) -> FiniteSemigroup {
    let k = class.len() + 1;
    let mut local = vec![0usize; s.size()];
    for (i, &a) in class.iter().enumerate() {
        local[a] = i + 1;
    }
    let mut mul = vec![0; k * k];
    for (i, &a) in class.iter().enumerate() {
        for (j, &b) in class.iter().enumerate() {
            mul[(i + 1) * k + j + 1] = local[s.mul(a, b)];
        }
    }
    let f = FiniteSemigroup::from_table(k, mul).expect("Rees quotient is well formed");
    let labels = std::iter::once("0".to_string())
        .chain(class.iter().map(|&a| s.label(a)))
        .collect();
    f.with_labels(labels).expect("one label per element")
}

/// Maximal chain of ideals, adjoining at each step a minimal remaining
/// J-class; ties go to the class whose least element is smallest.
pub fn principal_series(s: &FiniteSemigroup) -> PrincipalSeries {
    principal_series_by(s, |_| 0)
}

/// As [`principal_series`], with ties broken first by `priority` (lower
/// first) and then by least element.
pub fn principal_series_by(
    s: &FiniteSemigroup,
    priority: impl Fn(&[usize]) -> i64,
) -> PrincipalSeries {
    let j = j_classes(s);
    let mut added = vec![false; j.len()];
    let mut ideal: Vec<usize> = Vec::new();
    let mut chain = Vec::new();
    let mut factors = Vec::new();
    for step in 0..j.len() {
        let c = (0..j.len())
            .filter(|&c| !added[c] && j.strictly_below(c).all(|d| added[d]))
            .min_by_key(|&c| (priority(&j.classes[c]), j.classes[c][0]))
            .expect("a minimal class remains");
        added[c] = true;
        let class = j.classes[c].clone();
        ideal.extend_from_slice(&class);
        ideal.sort_unstable();
        chain.push(ideal.clone());
        let semigroup = if step == 0 {
            s.restrict_to(&class)
                .expect("the least ideal is a subsemigroup")
        } else {
            rees_quotient(s, &class)
        };
        let tag = classify_factor(&semigroup).unwrap_or(FactorTag::Other);
        factors.push(SeriesFactor {
            class,
            semigroup,
            tag,
        });
    }
    PrincipalSeries { chain, factors }
}

fn element_order(g: &FiniteSemigroup, x: usize, identity: usize) -> u64 {
    let mut p = x;
    let mut k = 1;
    while p != identity {
        p = g.mul(p, x);
        k += 1;
    }
    k
}

/// Least common multiple of element orders.
pub fn group_exponent(g: &FiniteSemigroup) -> Result<u64> {
    if !g.is_group() {
        return Err(Error::BadParameters("not a group".into()));
    }
    let e = g.identity().expect("groups have an identity");
    Ok((0..g.size()).fold(1, |m, x| m.lcm(&element_order(g, x, e))))
}

fn group_tag(g: &FiniteSemigroup) -> Result<FactorTag> {
    Ok(FactorTag::Group {
        abelian: g.is_commutative(),
        exponent: group_exponent(g)?,
        order: g.size(),
    })
}

/// Recognises a Rees factor as a group or, by rebuilding `(l, g, r)`
/// coordinates and comparing the whole table, as a Brandt semigroup over
/// its maximal subgroup. Non-inverse factors are `Other`; an inverse
/// factor that resists reconstruction is an error.
pub fn classify_factor(f: &FiniteSemigroup) -> Result<FactorTag> {
    if f.is_group() {
        return group_tag(f);
    }
    let Some(zero) = f.zero() else {
        return Ok(FactorTag::Other);
    };
    let Ok(inv) = f.compute_inverses() else {
        return Ok(FactorTag::Other);
    };
    let unrecognized = |msg: &str| Err(Error::UnrecognizedFactor(msg.to_string()));
    let idem: Vec<usize> = f.idempotents().into_iter().filter(|&e| e != zero).collect();
    let Some(&e1) = idem.first() else {
        return unrecognized("no nonzero idempotent");
    };
    let group: Vec<usize> = (0..f.size())
        .filter(|&x| x != zero && f.mul(x, inv[x]) == e1 && f.mul(inv[x], x) == e1)
        .collect();
    let k = idem.len();
    if f.size() != k * k * group.len() + 1 {
        return unrecognized("size is not index² · |G| + 1");
    }
    let g = f.restrict_to(&group)?;
    if !g.is_group() {
        return unrecognized("maximal subgroup is not a group");
    }
    let local = |x: usize| group.iter().position(|&y| y == x);
    let idem_pos = |e: usize| idem.iter().position(|&y| y == e);
    // r_i: r r⁻¹ = e_i, r⁻¹ r = e_1
    let mut reps = Vec::with_capacity(k);
    for &ei in &idem {
        match (0..f.size()).find(|&r| f.mul(r, inv[r]) == ei && f.mul(inv[r], r) == e1) {
            Some(r) => reps.push(r),
            None => return unrecognized("idempotents are not all D-related"),
        }
    }
    let mut coords = vec![BrandtElement::Zero; f.size()];
    for x in (0..f.size()).filter(|&x| x != zero) {
        let (Some(l), Some(r)) = (idem_pos(f.mul(x, inv[x])), idem_pos(f.mul(inv[x], x))) else {
            return unrecognized("element outside the idempotent frame");
        };
        let gx = f.mul(f.mul(inv[reps[l]], x), reps[r]);
        let Some(gi) = local(gx) else {
            return unrecognized("coordinate leaves the maximal subgroup");
        };
        coords[x] = BrandtElement::Triple { l, g: gi, r };
    }
    let model = brandt_over_group(&g, k)?;
    let map: Vec<usize> = coords
        .iter()
        .map(|c| model.index_of(c).expect("coordinates lie in the model"))
        .collect();
    if map.iter().collect::<BTreeSet<_>>().len() != f.size() {
        return unrecognized("coordinates are not injective");
    }
    for a in 0..f.size() {
        for b in 0..f.size() {
            if map[f.mul(a, b)] != model.semigroup.mul(map[a], map[b]) {
                return unrecognized("table differs from the Brandt model");
            }
        }
    }
    Ok(FactorTag::BrandtOverGroup {
        abelian: g.is_commutative(),
        exponent: group_exponent(&g)?,
        index: k,
        order: g.size(),
    })
}

#[derive(Debug, Clone)]
pub struct HmClassification {
    pub is_hm: bool,
    pub h: usize,
    /// lcm of the exponents of all factor groups, when every factor has one.
    pub m: Option<u64>,
    pub sizes: Vec<usize>,
    pub tags: Vec<FactorTag>,
}

impl HmClassification {
    /// `(h,m)=<h>,<m>` or `(h,m)=not-hm`.
    pub fn summary(&self) -> String {
        match (self.is_hm, self.m) {
            (true, Some(m)) => format!("(h,m)={},{}", self.h, m),
            _ => "(h,m)=not-hm".to_string(),
        }
    }

    /// One `S_j size=<k> factor=<tag>` line per step, then the summary.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for (j, (size, tag)) in self.sizes.iter().zip(&self.tags).enumerate() {
            out.push_str(&format!("S_{} size={} factor={}\n", j, size, tag));
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }
}

pub fn classify_hm(s: &FiniteSemigroup) -> HmClassification {
    let series = principal_series(s);
    let tags: Vec<FactorTag> = series.factors.iter().map(|f| f.tag.clone()).collect();
    let m = tags
        .iter()
        .map(FactorTag::exponent)
        .try_fold(1u64, |acc, e| e.map(|e| acc.lcm(&e)));
    let bottom_ok = matches!(tags[0], FactorTag::Group { abelian: true, .. });
    let rest_ok = tags[1..]
        .iter()
        .all(|t| matches!(t, FactorTag::BrandtOverGroup { abelian: true, .. }));
    HmClassification {
        is_hm: bottom_ok && rest_ok,
        h: series.h(),
        m,
        sizes: series.chain.iter().map(Vec::len).collect(),
        tags,
    }
}

/// The group of units of `eSe`, with its embedding into `S`.
pub fn maximal_subgroup(s: &FiniteSemigroup, e: usize) -> Result<(FiniteSemigroup, Vec<usize>)> {
    if e >= s.size() {
        return Err(Error::IndexInvalid(e));
    }
    if !s.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let local: BTreeSet<usize> = (0..s.size()).map(|x| s.mul(s.mul(e, x), e)).collect();
    let units: Vec<usize> = local
        .iter()
        .copied()
        .filter(|&x| local.iter().any(|&y| s.mul(x, y) == e && s.mul(y, x) == e))
        .collect();
    Ok((s.restrict_to(&units)?, units))
}

/// All maximal subgroups are trivial.
pub fn is_combinatorial(s: &FiniteSemigroup) -> bool {
    s.idempotents().into_iter().all(|e| {
        maximal_subgroup(s, e)
            .map(|(g, _)| g.size() == 1)
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        b21, brandt_semigroup, direct_product, rook_closure, rook_monoid, rook_monoid_restricted_3,
        sigma7, AbelianGroupSpec,
    };
    use crate::order::aperiodicity_index;

    #[test]
    fn b21_has_three_j_classes() {
        let j = j_classes(&b21().semigroup);
        assert_eq!(j.classes, vec![vec![0], vec![1, 2, 3, 4], vec![5]]);
        assert!(j.le(0, 1) && j.le(1, 2) && !j.le(2, 1));
    }

    #[test]
    fn groups_have_one_class() {
        let g = AbelianGroupSpec::new(vec![2, 3]).unwrap().to_semigroup();
        assert_eq!(j_classes(&g).len(), 1);
        let series = principal_series(&g);
        assert_eq!(series.h(), 0);
        assert_eq!(
            series.factors[0].tag,
            FactorTag::Group {
                abelian: true,
                exponent: 6,
                order: 6
            }
        );
    }

    #[test]
    fn rook_classes_follow_rank() {
        let r3 = rook_closure(3).unwrap();
        let j = j_classes(&r3.semigroup);
        assert_eq!(j.len(), 4);
        for c in &j.classes {
            let ranks: BTreeSet<usize> = c.iter().map(|&a| r3.elements[a].rank()).collect();
            assert_eq!(ranks.len(), 1);
        }
        for c in 0..4 {
            for d in 0..4 {
                let (rc, rd) = (
                    r3.elements[j.classes[c][0]].rank(),
                    r3.elements[j.classes[d][0]].rank(),
                );
                assert_eq!(j.le(c, d), rc <= rd);
            }
        }
    }

    #[test]
    fn rook2_factors() {
        let series = principal_series(&rook_monoid(2).unwrap());
        assert_eq!(
            series.chain.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 5, 7]
        );
        assert_eq!(
            series.factors[1].tag,
            FactorTag::BrandtOverGroup {
                abelian: true,
                exponent: 1,
                index: 2,
                order: 1
            }
        );
        assert_eq!(
            series.factors[2].tag,
            FactorTag::BrandtOverGroup {
                abelian: true,
                exponent: 2,
                index: 1,
                order: 2
            }
        );
    }

    #[test]
    fn hm_classification() {
        assert_eq!(classify_hm(&rook_monoid(2).unwrap()).summary(), "(h,m)=2,2");
        assert_eq!(
            classify_hm(&rook_monoid_restricted_3().unwrap().semigroup).summary(),
            "(h,m)=3,6"
        );
        assert_eq!(
            classify_hm(&rook_monoid(4).unwrap()).summary(),
            "(h,m)=not-hm"
        );
        let z2 = AbelianGroupSpec::cyclic(2).unwrap();
        let b = brandt_semigroup(&z2, 3).unwrap().semigroup;
        assert_eq!(classify_hm(&b).summary(), "(h,m)=1,2");
        let p = direct_product(
            &z2.to_semigroup(),
            &brandt_semigroup(&z2, 2).unwrap().semigroup,
        );
        let c = classify_hm(&p);
        assert_eq!(c.summary(), "(h,m)=1,2");
        assert_eq!(
            c.tags[0],
            FactorTag::Group {
                abelian: true,
                exponent: 2,
                order: 2
            }
        );
    }

    #[test]
    fn non_inverse_factors_are_other() {
        // left-zero band on two points: one J-class, not a group
        let lz = FiniteSemigroup::from_table(2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(classify_factor(&lz).unwrap(), FactorTag::Other);
        assert!(!classify_hm(&lz).is_hm);
    }

    #[test]
    fn maximal_subgroups() {
        let r3 = rook_monoid(3).unwrap();
        let id = r3.identity().unwrap();
        let (g, _) = maximal_subgroup(&r3, id).unwrap();
        assert_eq!(g.size(), 6);
        assert!(!g.is_commutative());
        let e12 = 2;
        assert_eq!(
            maximal_subgroup(&b21().semigroup, e12).unwrap_err(),
            Error::NotIdempotent(2)
        );
        assert!(is_combinatorial(&sigma7().unwrap().closure.semigroup));
        assert!(is_combinatorial(&rook_monoid(1).unwrap()));
        assert!(!is_combinatorial(&r3));
    }

    #[test]
    fn combinatorial_iff_aperiodic() {
        let z3 = AbelianGroupSpec::cyclic(3).unwrap();
        let algebras = vec![
            b21().semigroup,
            rook_monoid(2).unwrap(),
            rook_monoid_restricted_3().unwrap().semigroup,
            sigma7().unwrap().closure.semigroup,
            brandt_semigroup(&z3, 2).unwrap().semigroup,
            brandt_semigroup(&AbelianGroupSpec::trivial(), 3)
                .unwrap()
                .semigroup,
        ];
        for s in &algebras {
            assert_eq!(is_combinatorial(s), aperiodicity_index(s).is_some());
        }
    }
}
