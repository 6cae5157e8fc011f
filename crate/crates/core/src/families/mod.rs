//! Constructors for the concrete semigroups and semirings the workbench
//! studies: Brandt semigroups, rook monoids and their relatives, the
//! seven-element Boolean matrix semiring, abelian groups, products and
//! Kadourek's partial-injection semigroups.

mod brandt;
mod group;
mod matrix;
mod partial;

pub use brandt::{
    brandt_elements, brandt_over_group, brandt_product, brandt_semigroup, BrandtElement,
};
pub use group::AbelianGroupSpec;
pub use matrix::{BoolMatrix, RookMatrix};
pub use partial::PartialInjection;

use crate::algebra::{
    generate_closure, Closure, FiniteSemigroup, GeneratorSet, DEFAULT_CLOSURE_LIMIT,
};
use crate::error::{Error, Result};
use crate::order::{make_nat_semiring, AiSemiring};
use crate::terms::{build_w, VariableId};

pub const MAX_ROOK_DIM: usize = 5;
/// Largest ground set accepted for Kadourek's generators.
pub const MAX_KADOUREK_POINTS: u128 = 10_000;

fn matrix_closure(elems: Vec<RookMatrix>) -> Result<Closure<RookMatrix>> {
    let expected = elems.len();
    let closure = generate_closure(
        &GeneratorSet::new(elems, RookMatrix::product),
        DEFAULT_CLOSURE_LIMIT,
    )?
    .with_concrete_inverse(RookMatrix::transpose)?
    .with_labels(|m| m.to_string())?;
    if closure.elements.len() != expected {
        return Err(Error::BadTable(
            "matrix set is not closed under product".into(),
        ));
    }
    Ok(closure)
}

fn all_rook_matrices(t: usize) -> Vec<RookMatrix> {
    fn go(
        t: usize,
        row: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<Option<usize>>,
        out: &mut Vec<RookMatrix>,
    ) {
        if row == t {
            out.push(RookMatrix::new(cur.clone()).expect("injective by construction"));
            return;
        }
        cur.push(None);
        go(t, row + 1, used, cur, out);
        cur.pop();
        for c in 0..t {
            if !used[c] {
                used[c] = true;
                cur.push(Some(c));
                go(t, row + 1, used, cur, out);
                cur.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(t, 0, &mut vec![false; t], &mut Vec::new(), &mut out);
    // rank first, then occupied rows, then their columns
    out.sort_by_key(|m| {
        let rows: Vec<usize> = (0..t).filter(|&i| m.col(i).is_some()).collect();
        let cols: Vec<usize> = rows.iter().map(|&i| m.col(i).unwrap()).collect();
        (m.rank(), rows, cols)
    });
    out
}

/// The rook monoid `R_t` with its matrices.
///
/// Elements are ordered by rank, then by occupied rows, then by columns;
/// for `t = 2` this is `0, E11, E12, E21, E22, I, (01/10)`.
pub fn rook_closure(t: usize) -> Result<Closure<RookMatrix>> {
    if t == 0 {
        return Err(Error::BadParameters("rook monoid needs t >= 1".into()));
    }
    if t > MAX_ROOK_DIM {
        return Err(Error::DimensionTooLarge(t));
    }
    matrix_closure(all_rook_matrices(t))
}

pub fn rook_monoid(t: usize) -> Result<FiniteSemigroup> {
    Ok(rook_closure(t)?.semigroup)
}

/// `R_3` without its three transposition matrices (the determinant -1
/// permutation matrices).
pub fn rook_monoid_restricted_3() -> Result<Closure<RookMatrix>> {
    let kept = all_rook_matrices(3)
        .into_iter()
        .filter(|m| m.permutation_sign() != Some(-1))
        .collect();
    matrix_closure(kept)
}

fn b21_matrices() -> Vec<RookMatrix> {
    ["00/00", "10/00", "01/00", "00/10", "00/01", "10/01"]
        .iter()
        .map(|s| s.parse().expect("valid literal"))
        .collect()
}

/// The five-element Brandt semigroup of 2×2 matrices.
pub fn b2() -> Closure<RookMatrix> {
    let mut m = b21_matrices();
    m.pop();
    matrix_closure(m).expect("B2 is closed")
}

/// The six-element Brandt monoid.
pub fn b21() -> Closure<RookMatrix> {
    matrix_closure(b21_matrices()).expect("B2^1 is closed")
}

/// The seven Boolean 2×2 matrices closed under Boolean product, carrying
/// two different semilattice additions.
#[derive(Debug, Clone)]
pub struct Sigma7 {
    pub closure: Closure<BoolMatrix>,
    /// Entrywise Boolean `or` as addition.
    pub boolean: AiSemiring,
    /// Natural-order infimum as addition.
    pub natural: AiSemiring,
}

pub fn sigma7() -> Result<Sigma7> {
    let elems: Vec<BoolMatrix> = [
        "11/11", "10/01", "10/11", "11/01", "01/11", "11/10", "00/00",
    ]
    .iter()
    .map(|s| s.parse().expect("valid literal"))
    .collect();
    let closure = generate_closure(&GeneratorSet::new(elems, BoolMatrix::product), 7)?
        .with_labels(|m| m.to_string())?
        .with_computed_inverses()?;
    let n = closure.elements.len();
    let mut add = Vec::with_capacity(n * n);
    for a in &closure.elements {
        for b in &closure.elements {
            add.push(
                closure
                    .index_of(&a.sum(b))
                    .ok_or_else(|| Error::BadTable("Boolean sum leaves the carrier".into()))?,
            );
        }
    }
    let boolean = AiSemiring::new(n, add, closure.semigroup.table().to_vec())?
        .with_labels(closure.semigroup.labels().unwrap().to_vec())?;
    let natural = make_nat_semiring(&closure.semigroup)?;
    Ok(Sigma7 {
        closure,
        boolean,
        natural,
    })
}

/// Kadourek's generators `χ` for `S_n^(h)`, keyed by variable of `w_n^(h)`.
///
/// `χ(q-1) = q` exactly where position `q` of `w_n^(h)` carries the plain
/// letter, and `χ(q) = q-1` where it carries the inverse letter.
pub fn kadourek_generators(n: usize, h: usize) -> Result<Vec<(VariableId, PartialInjection)>> {
    if n < 2 || h < 1 {
        return Err(Error::BadParameters("need n >= 2 and h >= 1".into()));
    }
    let length = (2 * n as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
    if length > MAX_KADOUREK_POINTS {
        return Err(Error::SizeExceeded {
            size: length,
            bound: MAX_KADOUREK_POINTS,
        });
    }
    let w = build_w(n, h)?;
    let points = w.len() + 1;
    let mut pairs: std::collections::BTreeMap<VariableId, Vec<(usize, usize)>> = Default::default();
    for (pos, lit) in w.letters().iter().enumerate() {
        let q = pos + 1;
        let pair = if lit.inverse { (q, q - 1) } else { (q - 1, q) };
        pairs.entry(lit.var.clone()).or_default().push(pair);
    }
    pairs
        .into_iter()
        .map(|(v, mut ps)| {
            ps.sort();
            Ok((v, PartialInjection::from_pairs(points, &ps)?))
        })
        .collect()
}

/// The inverse semigroup `S_n^(h)`: closure of the generators and their
/// inverses under composition.
pub fn kadourek_semigroup(n: usize, h: usize) -> Result<Closure<PartialInjection>> {
    let gens = kadourek_generators(n, h)?;
    let mut elems: Vec<PartialInjection> = gens.iter().map(|(_, g)| g.clone()).collect();
    elems.extend(gens.iter().map(|(_, g)| g.invert()));
    generate_closure(
        &GeneratorSet::new(elems, PartialInjection::compose_unchecked),
        DEFAULT_CLOSURE_LIMIT,
    )?
    .with_concrete_inverse(PartialInjection::invert)?
    .with_labels(PartialInjection::compact)
}

/// Componentwise product; `(s, t)` has index `s * |T| + t`.
pub fn direct_product(s: &FiniteSemigroup, t: &FiniteSemigroup) -> FiniteSemigroup {
    let (n, m) = (s.size(), t.size());
    let mut mul = Vec::with_capacity(n * m * n * m);
    for a in 0..n * m {
        for b in 0..n * m {
            mul.push(s.mul(a / m, b / m) * m + t.mul(a % m, b % m));
        }
    }
    let mut out = FiniteSemigroup::from_table(n * m, mul).expect("product table is well formed");
    let labels = (0..n * m)
        .map(|a| format!("({},{})", s.label(a / m), t.label(a % m)))
        .collect();
    out = out.with_labels(labels).expect("one label per element");
    if let (Some(si), Some(ti)) = (s.inverse_table(), t.inverse_table()) {
        let inv = (0..n * m).map(|a| si[a / m] * m + ti[a % m]).collect();
        out = out.with_inverses(inv).expect("componentwise inverses");
    }
    out
}

/// `S^1`: a fresh identity appended as the last element.
pub fn adjoin_identity(s: &FiniteSemigroup) -> FiniteSemigroup {
    let n = s.size();
    let mut mul = Vec::with_capacity((n + 1) * (n + 1));
    for a in 0..=n {
        for b in 0..=n {
            mul.push(match (a == n, b == n) {
                (true, _) => b,
                (false, true) => a,
                (false, false) => s.mul(a, b),
            });
        }
    }
    let mut out = FiniteSemigroup::from_table(n + 1, mul).expect("well formed");
    let labels = (0..n)
        .map(|a| s.label(a))
        .chain(std::iter::once("1".to_string()))
        .collect();
    out = out.with_labels(labels).expect("one label per element");
    if let Some(inv) = s.inverse_table() {
        let mut inv = inv.to_vec();
        inv.push(n);
        out = out.with_inverses(inv).expect("identity is self-inverse");
    }
    out
}
