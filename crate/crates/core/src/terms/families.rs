//! The recursive word and term families and the substitutions between them.

use std::collections::BTreeMap;

use super::{ComposedWord, Literal, SemiringTerm, UnaryTerm, VariableId, Word};
use crate::error::{Error, Result};

/// Longest flat word or unary term the builders will materialize.
pub const MAX_TERM_LETTERS: u128 = 2_000_000;
/// Most variables a leveled word may range over.
pub const MAX_TERM_VARIABLES: u128 = 100_000;

fn check_bound(size: Option<u128>, bound: u128) -> Result<()> {
    match size {
        Some(s) if s <= bound => Ok(()),
        Some(s) => Err(Error::SizeExceeded { size: s, bound }),
        None => Err(Error::SizeExceeded {
            size: u128::MAX,
            bound,
        }),
    }
}

fn pow128(base: u128, h: usize) -> Option<u128> {
    base.checked_pow(u32::try_from(h).ok()?)
}

fn x(i: usize) -> VariableId {
    VariableId::single(i as u32)
}

/// `x_1 ... x_{n+k} (x_n ... x_1 x_{n+1} ... x_{n+k})^(2m-1)`.
pub fn build_u(n: usize, k: usize, m: usize) -> Result<Word> {
    if n + k == 0 || m == 0 {
        return Err(Error::BadParameters("need n + k > 0 and m >= 1".into()));
    }
    check_bound(Some(2 * m as u128 * (n + k) as u128), MAX_TERM_LETTERS)?;
    let head: Vec<VariableId> = (1..=n + k).map(x).collect();
    let block: Vec<VariableId> = (1..=n).rev().chain(n + 1..=n + k).map(x).collect();
    let mut letters = head;
    for _ in 0..2 * m - 1 {
        letters.extend_from_slice(&block);
    }
    Word::new(letters)
}

/// `σ_j`: appends `j` to every index tuple of the word.
pub fn sigma(w: &Word, j: u32) -> Word {
    w.rename(|v| v.appended(j).expect("indexed variable"))
}

fn sigma_unary(t: &UnaryTerm, j: u32) -> UnaryTerm {
    t.rename(|v| v.appended(j).expect("indexed variable"))
}

/// The flat word `v_{n,m}^(h)` over `X_{2n}^(h)`, built by concatenating
/// the `2n` shifted copies of the previous level.
pub fn build_v(n: usize, m: usize, h: usize) -> Result<Word> {
    if n == 0 || m == 0 || h == 0 {
        return Err(Error::BadParameters("need n, m, h >= 1".into()));
    }
    check_bound(pow128(4 * n as u128 * m as u128, h), MAX_TERM_LETTERS)?;
    let mut v = build_u(n, n, m)?;
    for _ in 1..h {
        let copies: Vec<Word> = (1..=2 * n as u32).map(|j| sigma(&v, j)).collect();
        let mut letters: Vec<VariableId> = Vec::new();
        for c in &copies {
            letters.extend_from_slice(c.letters());
        }
        for _ in 0..2 * m - 1 {
            for c in copies[..n].iter().rev() {
                letters.extend_from_slice(c.letters());
            }
            for c in &copies[n..] {
                letters.extend_from_slice(c.letters());
            }
        }
        v = Word::new(letters)?;
    }
    Ok(v)
}

/// `v_{n,m}^(h)` as `v_{n,m}^(1)` with slot `x_j` filled by the `j`-shifted
/// copy of `v_{n,m}^(h-1)`.
pub fn build_v_composed(n: usize, m: usize, h: usize) -> Result<ComposedWord> {
    if n == 0 || m == 0 || h == 0 {
        return Err(Error::BadParameters("need n, m, h >= 1".into()));
    }
    check_bound(pow128(2 * n as u128, h), MAX_TERM_VARIABLES)?;
    let base = build_u(n, n, m)?;
    let mut cw = ComposedWord::Leaf(base.clone());
    for _ in 1..h {
        let inner = (1..=2 * n)
            .map(|j| {
                let shifted =
                    cw.rename(&|v: &VariableId| v.appended(j as u32).expect("indexed variable"));
                (x(j), shifted)
            })
            .collect();
        cw = ComposedWord::compose(base.clone(), inner)?;
    }
    Ok(cw)
}

/// Kadourek's term `w_n^(h)` over `X_n^(h)`.
pub fn build_w(n: usize, h: usize) -> Result<UnaryTerm> {
    if n == 0 || h == 0 {
        return Err(Error::BadParameters("need n, h >= 1".into()));
    }
    check_bound(pow128(2 * n as u128, h), MAX_TERM_LETTERS)?;
    let letters: Vec<Literal> = (1..=n)
        .map(|i| Literal::plain(x(i)))
        .chain((1..=n).map(|i| Literal::inv(x(i))))
        .collect();
    let mut w = UnaryTerm::new(letters)?;
    for _ in 1..h {
        let copies: Vec<UnaryTerm> = (1..=n as u32).map(|j| sigma_unary(&w, j)).collect();
        let mut next = copies[0].clone();
        for c in &copies[1..] {
            next = next.concat(c);
        }
        for c in &copies {
            next = next.concat(&c.inverse());
        }
        w = next;
    }
    Ok(w)
}

/// The pair of letter-to-literal substitutions `(φ, ψ)` from `X_{2n}^(h)`
/// onto the signed alphabet over `X_n^(h)`.
pub fn phi_psi(
    n: usize,
    h: usize,
) -> Result<(BTreeMap<VariableId, Literal>, BTreeMap<VariableId, Literal>)> {
    if n == 0 || h == 0 {
        return Err(Error::BadParameters("need n, h >= 1".into()));
    }
    check_bound(pow128(2 * n as u128, h), MAX_TERM_VARIABLES)?;
    let n32 = n as u32;
    let mut phi = BTreeMap::new();
    let mut psi = BTreeMap::new();
    for i in 1..=2 * n32 {
        let v = VariableId::single(i);
        if i <= n32 {
            phi.insert(v.clone(), Literal::plain(VariableId::single(i)));
            psi.insert(v, Literal::plain(VariableId::single(n32 + 1 - i)));
        } else {
            phi.insert(v.clone(), Literal::inv(VariableId::single(i - n32)));
            psi.insert(v, Literal::inv(VariableId::single(2 * n32 + 1 - i)));
        }
    }
    for _ in 1..h {
        let mut next_phi = BTreeMap::new();
        let mut next_psi = BTreeMap::new();
        for (v, a) in &phi {
            let b = &psi[v];
            for ih in 1..=2 * n32 {
                let key = v.appended(ih).expect("indexed variable");
                let (phi_src, phi_last) = if ih <= n32 { (a, ih) } else { (b, ih - n32) };
                let (psi_src, psi_last) = if ih <= n32 {
                    (a, n32 + 1 - ih)
                } else {
                    (b, 2 * n32 + 1 - ih)
                };
                next_phi.insert(
                    key.clone(),
                    Literal {
                        var: phi_src.var.appended(phi_last).expect("indexed variable"),
                        inverse: phi_src.inverse,
                    },
                );
                next_psi.insert(
                    key,
                    Literal {
                        var: psi_src.var.appended(psi_last).expect("indexed variable"),
                        inverse: psi_src.inverse,
                    },
                );
            }
        }
        phi = next_phi;
        psi = next_psi;
    }
    Ok((phi, psi))
}

/// Replaces every `a + b` by `(a b⁻¹)^p a`, bottom-up.
pub fn rewrite_plus(term: &SemiringTerm, p: usize) -> Result<UnaryTerm> {
    if p == 0 {
        return Err(Error::BadParameters("p must be positive".into()));
    }
    Ok(match term {
        SemiringTerm::Var(v) => UnaryTerm::literal(Literal::plain(v.clone())),
        SemiringTerm::Times(a, b) => rewrite_plus(a, p)?.concat(&rewrite_plus(b, p)?),
        SemiringTerm::Plus(a, b) => {
            let a = rewrite_plus(a, p)?;
            let b = rewrite_plus(b, p)?;
            a.concat(&b.inverse()).pow(p)?.concat(&a)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn u_examples() {
        assert_eq!(build_u(2, 0, 1).unwrap(), word("x[1] x[2] x[2] x[1]"));
        assert_eq!(build_u(0, 3, 2).unwrap(), word("(x[1] x[2] x[3])^4"));
        assert_eq!(build_u(1, 2, 1).unwrap(), word("(x[1] x[2] x[3])^2"));
        assert_eq!(build_u(3, 2, 3).unwrap().len(), 30);
        assert!(build_u(0, 0, 1).is_err());
    }

    #[test]
    fn v1_example() {
        assert_eq!(
            build_v(2, 1, 1).unwrap(),
            word("x[1] x[2] x[3] x[4] x[2] x[1] x[3] x[4]")
        );
    }

    #[test]
    fn v_lengths_and_occurrences() {
        for n in 1..=3 {
            for m in 1..=3 {
                for h in 1..=3 {
                    let v = build_v(n, m, h).unwrap();
                    assert_eq!(v.len(), (4 * n * m).pow(h as u32));
                    if h == 1 {
                        for var in v.variables() {
                            assert_eq!(v.letters().iter().filter(|&l| *l == var).count(), 2 * m);
                        }
                    }
                }
            }
        }
        assert!(matches!(build_v(3, 6, 4), Err(Error::SizeExceeded { .. })));
    }

    #[test]
    fn composed_v_expands_to_flat_v() {
        for (n, m, h) in [(1, 1, 2), (2, 1, 2), (2, 2, 3), (3, 1, 2)] {
            let cw = build_v_composed(n, m, h).unwrap();
            assert_eq!(cw.flatten(), build_v(n, m, h).unwrap());
            assert_eq!(cw.depth(), h);
        }
        let big = build_v_composed(2, 6, 4).unwrap();
        assert_eq!(big.flat_len(), 48u128.pow(4));
        assert_eq!(big.variables().len(), 256);
    }

    #[test]
    fn v_is_image_of_v1_under_shifted_copies() {
        let (n, m) = (2, 2);
        let v1 = build_v(n, m, 1).unwrap();
        let v2 = build_v(n, m, 2).unwrap();
        let map = (1..=2 * n as u32)
            .map(|j| (VariableId::single(j), sigma(&v1, j)))
            .collect();
        assert_eq!(v1.substitute(&map).unwrap(), v2);
    }

    #[test]
    fn u_n1_with_block_gives_u_nk() {
        let (n, k, m) = (2, 3, 2);
        let u1 = build_u(n, 1, m).unwrap();
        let mut map: BTreeMap<VariableId, Word> =
            (1..=n).map(|i| (x(i), Word::var(x(i)))).collect();
        map.insert(
            x(n + 1),
            Word::new((n + 1..=n + k).map(x).collect()).unwrap(),
        );
        assert_eq!(u1.substitute(&map).unwrap(), build_u(n, k, m).unwrap());
    }

    #[test]
    fn w_examples() {
        assert_eq!(
            build_w(2, 1).unwrap().to_string(),
            "x[1] x[2] x[1]^-1 x[2]^-1"
        );
        let w22 = build_w(2, 2).unwrap();
        assert_eq!(
            w22.to_string(),
            "x[1,1] x[2,1] x[1,1]^-1 x[2,1]^-1 x[1,2] x[2,2] x[1,2]^-1 x[2,2]^-1 \
             x[2,1] x[1,1] x[2,1]^-1 x[1,1]^-1 x[2,2] x[1,2] x[2,2]^-1 x[1,2]^-1"
        );
    }

    #[test]
    fn w_lengths_and_occurrences() {
        for n in 1..=3usize {
            for h in 1..=3usize {
                let w = build_w(n, h).unwrap();
                assert_eq!(w.len(), (2 * n).pow(h as u32));
                assert_eq!(w.variables().len(), n.pow(h as u32));
                for v in w.variables() {
                    for inv in [false, true] {
                        let c = w
                            .letters()
                            .iter()
                            .filter(|l| l.var == v && l.inverse == inv)
                            .count();
                        assert_eq!(c, 1 << (h - 1));
                    }
                }
            }
        }
    }

    #[test]
    fn phi_psi_base() {
        let (phi, psi) = phi_psi(2, 1).unwrap();
        let show = |m: &BTreeMap<VariableId, Literal>| {
            m.iter()
                .map(|(k, v)| format!("{}>{}", k, v))
                .collect::<Vec<_>>()
                .join(" ")
        };
        assert_eq!(show(&phi), "x[1]>x[1] x[2]>x[2] x[3]>x[1]^-1 x[4]>x[2]^-1");
        assert_eq!(show(&psi), "x[1]>x[2] x[2]>x[1] x[3]>x[2]^-1 x[4]>x[1]^-1");
    }

    #[test]
    fn phi_psi_are_onto_signed_alphabet() {
        for n in 1..=3 {
            for h in 1..=3 {
                let (phi, psi) = phi_psi(n, h).unwrap();
                let count = (2 * n).pow(h as u32);
                for map in [&phi, &psi] {
                    assert_eq!(map.len(), count);
                    let image: std::collections::BTreeSet<&Literal> = map.values().collect();
                    assert_eq!(image.len(), 2 * n.pow(h as u32));
                    assert!(image.iter().all(|l| l
                        .var
                        .indices()
                        .unwrap()
                        .iter()
                        .all(|&i| i as usize <= n)));
                }
            }
        }
    }

    #[test]
    fn rewrite_plus_examples() {
        let t: SemiringTerm = "x + y".parse().unwrap();
        assert_eq!(rewrite_plus(&t, 2).unwrap().to_string(), "x y^-1 x y^-1 x");
        let t: SemiringTerm = "x * (y + z)".parse().unwrap();
        assert_eq!(
            rewrite_plus(&t, 2).unwrap().to_string(),
            "x y z^-1 y z^-1 y"
        );
        assert!(rewrite_plus(&t, 0).is_err());
    }
}
