//! Terms in three flavors (plain words, unary terms with formal inverses,
//! and `+`/`·` semiring terms), the recursive word families, and the
//! substitutions that relate them.

mod eval;
mod families;
mod parse;

pub use eval::{compile, evaluate, Op, Program, Tables};
pub use families::{
    build_u, build_v, build_v_composed, build_w, phi_psi, rewrite_plus, sigma, MAX_TERM_LETTERS,
    MAX_TERM_VARIABLES,
};
pub use parse::{parse_expr, parse_term, Expr};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A variable: either an index tuple `x[i1,..,ih]` (1-based, nonempty) or
/// a plain identifier such as `x` or `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariableId {
    Indexed(Vec<u32>),
    Named(String),
}

impl VariableId {
    pub fn indexed(indices: Vec<u32>) -> Self {
        debug_assert!(!indices.is_empty() && indices.iter().all(|&i| i >= 1));
        VariableId::Indexed(indices)
    }

    pub fn single(i: u32) -> Self {
        VariableId::indexed(vec![i])
    }

    pub fn named(name: &str) -> Self {
        VariableId::Named(name.to_string())
    }

    pub fn indices(&self) -> Option<&[u32]> {
        match self {
            VariableId::Indexed(ix) => Some(ix),
            VariableId::Named(_) => None,
        }
    }

    /// `σ_j`: the same variable with `j` appended to its index tuple.
    pub fn appended(&self, j: u32) -> Option<VariableId> {
        let mut ix = self.indices()?.to_vec();
        ix.push(j);
        Some(VariableId::Indexed(ix))
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariableId::Indexed(ix) => {
                write!(f, "x[")?;
                for (k, i) in ix.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", i)?;
                }
                write!(f, "]")
            }
            VariableId::Named(s) => write!(f, "{}", s),
        }
    }
}

fn lookup<'a, T>(map: &'a BTreeMap<VariableId, T>, v: &VariableId) -> Result<&'a T> {
    map.get(v)
        .ok_or_else(|| Error::UnboundVariable(v.to_string()))
}

/// Nonempty product of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<VariableId>,
}

impl Word {
    pub fn new(letters: Vec<VariableId>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyTerm);
        }
        Ok(Word { letters })
    }

    pub fn var(v: VariableId) -> Self {
        Word { letters: vec![v] }
    }

    /// `x[i1] x[i2] ...` for the given single indices.
    pub fn from_indices(ix: &[u32]) -> Result<Self> {
        Word::new(ix.iter().map(|&i| VariableId::single(i)).collect())
    }

    pub fn letters(&self) -> &[VariableId] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn pow(&self, k: usize) -> Result<Word> {
        if k == 0 {
            return Err(Error::EmptyTerm);
        }
        Ok(Word {
            letters: (0..k).flat_map(|_| self.letters.iter().cloned()).collect(),
        })
    }

    pub fn variables(&self) -> BTreeSet<VariableId> {
        self.letters.iter().cloned().collect()
    }

    pub fn substitute(&self, map: &BTreeMap<VariableId, Word>) -> Result<Word> {
        let mut letters = Vec::new();
        for v in &self.letters {
            letters.extend_from_slice(&lookup(map, v)?.letters);
        }
        Ok(Word { letters })
    }

    pub fn rename(&self, f: impl Fn(&VariableId) -> VariableId) -> Word {
        Word {
            letters: self.letters.iter().map(f).collect(),
        }
    }

    pub fn to_unary(&self) -> UnaryTerm {
        UnaryTerm {
            letters: self
                .letters
                .iter()
                .map(|v| Literal::plain(v.clone()))
                .collect(),
        }
    }

    pub fn to_semiring(&self) -> SemiringTerm {
        let mut it = self.letters.iter();
        let first = SemiringTerm::Var(it.next().expect("nonempty").clone());
        it.fold(first, |acc, v| {
            SemiringTerm::times(acc, SemiringTerm::Var(v.clone()))
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v)?;
        }
        Ok(())
    }
}

/// A variable or its formal inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: VariableId,
    pub inverse: bool,
}

impl Literal {
    pub fn plain(var: VariableId) -> Self {
        Literal {
            var,
            inverse: false,
        }
    }

    pub fn inv(var: VariableId) -> Self {
        Literal { var, inverse: true }
    }

    pub fn flipped(&self) -> Self {
        Literal {
            var: self.var.clone(),
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.var)
        } else {
            write!(f, "{}", self.var)
        }
    }
}

/// A `(·, ⁻¹)` term kept in normal form: a nonempty sequence of literals.
/// `(uv)⁻¹ = v⁻¹u⁻¹` and `(x⁻¹)⁻¹ = x` are applied on construction;
/// nothing cancels, since `x x⁻¹` is not an identity element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnaryTerm {
    letters: Vec<Literal>,
}

impl UnaryTerm {
    pub fn new(letters: Vec<Literal>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyTerm);
        }
        Ok(UnaryTerm { letters })
    }

    pub fn literal(l: Literal) -> Self {
        UnaryTerm { letters: vec![l] }
    }

    pub fn letters(&self) -> &[Literal] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn concat(&self, other: &UnaryTerm) -> UnaryTerm {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        UnaryTerm { letters }
    }

    pub fn pow(&self, k: usize) -> Result<UnaryTerm> {
        if k == 0 {
            return Err(Error::EmptyTerm);
        }
        Ok(UnaryTerm {
            letters: (0..k).flat_map(|_| self.letters.iter().cloned()).collect(),
        })
    }

    pub fn inverse(&self) -> UnaryTerm {
        UnaryTerm {
            letters: self.letters.iter().rev().map(Literal::flipped).collect(),
        }
    }

    pub fn variables(&self) -> BTreeSet<VariableId> {
        self.letters.iter().map(|l| l.var.clone()).collect()
    }

    /// Homomorphic replacement; an inverted letter receives the inverse of
    /// its assigned term.
    pub fn substitute(&self, map: &BTreeMap<VariableId, UnaryTerm>) -> Result<UnaryTerm> {
        let mut letters = Vec::new();
        for l in &self.letters {
            let t = lookup(map, &l.var)?;
            if l.inverse {
                letters.extend(t.letters.iter().rev().map(Literal::flipped));
            } else {
                letters.extend_from_slice(&t.letters);
            }
        }
        Ok(UnaryTerm { letters })
    }

    pub fn rename(&self, f: impl Fn(&VariableId) -> VariableId) -> UnaryTerm {
        UnaryTerm {
            letters: self
                .letters
                .iter()
                .map(|l| Literal {
                    var: f(&l.var),
                    inverse: l.inverse,
                })
                .collect(),
        }
    }

    /// The underlying word, if no letter is inverted.
    pub fn to_word(&self) -> Option<Word> {
        self.letters
            .iter()
            .map(|l| (!l.inverse).then(|| l.var.clone()))
            .collect::<Option<Vec<_>>>()
            .map(|letters| Word { letters })
    }
}

impl fmt::Display for UnaryTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

/// A `+`/`·` term tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SemiringTerm {
    Var(VariableId),
    Plus(Box<SemiringTerm>, Box<SemiringTerm>),
    Times(Box<SemiringTerm>, Box<SemiringTerm>),
}

impl SemiringTerm {
    pub fn var(v: VariableId) -> Self {
        SemiringTerm::Var(v)
    }

    pub fn plus(a: SemiringTerm, b: SemiringTerm) -> Self {
        SemiringTerm::Plus(Box::new(a), Box::new(b))
    }

    pub fn times(a: SemiringTerm, b: SemiringTerm) -> Self {
        SemiringTerm::Times(Box::new(a), Box::new(b))
    }

    /// `t · t · ... · t`, associated to the left.
    pub fn pow(&self, k: usize) -> Result<SemiringTerm> {
        if k == 0 {
            return Err(Error::EmptyTerm);
        }
        Ok((1..k).fold(self.clone(), |acc, _| {
            SemiringTerm::times(acc, self.clone())
        }))
    }

    pub fn variables(&self) -> BTreeSet<VariableId> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<VariableId>) {
        match self {
            SemiringTerm::Var(v) => {
                out.insert(v.clone());
            }
            SemiringTerm::Plus(a, b) | SemiringTerm::Times(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn has_plus(&self) -> bool {
        match self {
            SemiringTerm::Var(_) => false,
            SemiringTerm::Plus(..) => true,
            SemiringTerm::Times(a, b) => a.has_plus() || b.has_plus(),
        }
    }

    pub fn substitute(&self, map: &BTreeMap<VariableId, SemiringTerm>) -> Result<SemiringTerm> {
        Ok(match self {
            SemiringTerm::Var(v) => lookup(map, v)?.clone(),
            SemiringTerm::Plus(a, b) => SemiringTerm::plus(a.substitute(map)?, b.substitute(map)?),
            SemiringTerm::Times(a, b) => {
                SemiringTerm::times(a.substitute(map)?, b.substitute(map)?)
            }
        })
    }
}

/// `+` binds looser than `*`; a right operand of the same operator is
/// parenthesised so that printing and parsing preserve the tree.
impl fmt::Display for SemiringTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiringTerm::Var(v) => write!(f, "{}", v),
            SemiringTerm::Plus(a, b) => {
                write!(f, "{} + ", a)?;
                match **b {
                    SemiringTerm::Plus(..) => write!(f, "({})", b),
                    _ => write!(f, "{}", b),
                }
            }
            SemiringTerm::Times(a, b) => {
                match **a {
                    SemiringTerm::Plus(..) => write!(f, "({})", a)?,
                    _ => write!(f, "{}", a)?,
                }
                write!(f, " * ")?;
                match **b {
                    SemiringTerm::Var(_) => write!(f, "{}", b),
                    _ => write!(f, "({})", b),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Flavor {
    Word,
    Unary,
    Semiring,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Word => "word",
            Flavor::Unary => "unary",
            Flavor::Semiring => "semiring",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Word(Word),
    Unary(UnaryTerm),
    Semiring(SemiringTerm),
}

impl Term {
    pub fn flavor(&self) -> Flavor {
        match self {
            Term::Word(_) => Flavor::Word,
            Term::Unary(_) => Flavor::Unary,
            Term::Semiring(_) => Flavor::Semiring,
        }
    }

    pub fn variables(&self) -> BTreeSet<VariableId> {
        match self {
            Term::Word(w) => w.variables(),
            Term::Unary(u) => u.variables(),
            Term::Semiring(s) => s.variables(),
        }
    }

    /// Reinterprets the term in a richer flavor. Words embed in both other
    /// flavors; unary and semiring terms do not mix.
    pub fn lift(&self, to: Flavor) -> Result<Term> {
        match (self, to) {
            (t, f) if t.flavor() == f => Ok(t.clone()),
            (Term::Word(w), Flavor::Unary) => Ok(Term::Unary(w.to_unary())),
            (Term::Word(w), Flavor::Semiring) => Ok(Term::Semiring(w.to_semiring())),
            (t, f) => Err(Error::FlavorMismatch(format!(
                "cannot read a {} term as a {} term",
                t.flavor(),
                f
            ))),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Word(w) => w.fmt(f),
            Term::Unary(u) => u.fmt(f),
            Term::Semiring(s) => s.fmt(f),
        }
    }
}

/// Two-level-or-deeper composition: an outer word over slot variables,
/// each slot filled by a further composition. The variable sets of the
/// slots are pairwise disjoint; slot names live in their own namespace and
/// never occur in the flattened word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComposedWord {
    Leaf(Word),
    Node {
        outer: Word,
        inner: BTreeMap<VariableId, ComposedWord>,
    },
}

impl ComposedWord {
    pub fn compose(outer: Word, inner: BTreeMap<VariableId, ComposedWord>) -> Result<Self> {
        for v in outer.variables() {
            if !inner.contains_key(&v) {
                return Err(Error::UnboundVariable(v.to_string()));
            }
        }
        let mut seen: BTreeMap<VariableId, &VariableId> = BTreeMap::new();
        for (slot, cw) in &inner {
            for v in cw.variables() {
                if let Some(prev) = seen.insert(v.clone(), slot) {
                    return Err(Error::DisjointnessViolated(format!(
                        "{} occurs under slots {} and {}",
                        v, prev, slot
                    )));
                }
            }
        }
        Ok(ComposedWord::Node { outer, inner })
    }

    /// Variables of the flattened word.
    pub fn variables(&self) -> BTreeSet<VariableId> {
        match self {
            ComposedWord::Leaf(w) => w.variables(),
            ComposedWord::Node { outer, inner } => outer
                .variables()
                .iter()
                .flat_map(|slot| inner[slot].variables())
                .collect(),
        }
    }

    pub fn flatten(&self) -> Word {
        match self {
            ComposedWord::Leaf(w) => w.clone(),
            ComposedWord::Node { outer, inner } => {
                let flat: BTreeMap<VariableId, Word> = inner
                    .iter()
                    .map(|(k, v)| (k.clone(), v.flatten()))
                    .collect();
                outer
                    .substitute(&flat)
                    .expect("slots checked on construction")
            }
        }
    }

    /// Length of the flattened word, without building it.
    pub fn flat_len(&self) -> u128 {
        match self {
            ComposedWord::Leaf(w) => w.len() as u128,
            ComposedWord::Node { outer, inner } => {
                outer.letters().iter().map(|s| inner[s].flat_len()).sum()
            }
        }
    }

    /// Renames every variable of the flattened word; slots are untouched.
    pub fn rename(&self, f: &impl Fn(&VariableId) -> VariableId) -> ComposedWord {
        match self {
            ComposedWord::Leaf(w) => ComposedWord::Leaf(w.rename(f)),
            ComposedWord::Node { outer, inner } => ComposedWord::Node {
                outer: outer.clone(),
                inner: inner
                    .iter()
                    .map(|(k, v)| (k.clone(), v.rename(f)))
                    .collect(),
            },
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ComposedWord::Leaf(_) => 1,
            ComposedWord::Node { inner, .. } => {
                1 + inner.values().map(|c| c.depth()).max().unwrap_or(0)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> VariableId {
        VariableId::single(i)
    }

    #[test]
    fn variable_rendering() {
        assert_eq!(VariableId::indexed(vec![1, 2]).to_string(), "x[1,2]");
        assert_eq!(VariableId::named("y").to_string(), "y");
        assert_eq!(x(3).appended(1), Some(VariableId::indexed(vec![3, 1])));
        assert!(x(2) < VariableId::indexed(vec![2, 1]));
        assert!(VariableId::indexed(vec![1, 9]) < x(2));
    }

    #[test]
    fn unary_inverse_is_anti_automorphism() {
        let u = UnaryTerm::new(vec![Literal::plain(x(1)), Literal::inv(x(2))]).unwrap();
        assert_eq!(u.inverse().to_string(), "x[2] x[1]^-1");
        assert_eq!(u.inverse().inverse(), u);
        let v = Word::from_indices(&[3]).unwrap().to_unary();
        assert_eq!(u.concat(&v).inverse(), v.inverse().concat(&u.inverse()));
    }

    #[test]
    fn unary_substitution_inverts_images() {
        let t = UnaryTerm::new(vec![Literal::inv(x(1))]).unwrap();
        let image = Word::from_indices(&[1, 2]).unwrap().to_unary();
        let map = BTreeMap::from([(x(1), image)]);
        assert_eq!(t.substitute(&map).unwrap().to_string(), "x[2]^-1 x[1]^-1");
        let missing = BTreeMap::new();
        assert!(matches!(
            t.substitute(&missing),
            Err(Error::UnboundVariable(_))
        ));
    }

    #[test]
    fn semiring_display_keeps_tree() {
        let (a, b, c) = (
            SemiringTerm::var(x(1)),
            SemiringTerm::var(x(2)),
            SemiringTerm::var(x(3)),
        );
        let right = SemiringTerm::plus(a.clone(), SemiringTerm::plus(b.clone(), c.clone()));
        assert_eq!(right.to_string(), "x[1] + (x[2] + x[3])");
        let prod = SemiringTerm::times(SemiringTerm::plus(a.clone(), b.clone()), c.clone());
        assert_eq!(prod.to_string(), "(x[1] + x[2]) * x[3]");
        let nested = SemiringTerm::times(a, SemiringTerm::times(b, c));
        assert_eq!(nested.to_string(), "x[1] * (x[2] * x[3])");
    }

    #[test]
    fn composed_words_reject_shared_variables() {
        let outer = Word::from_indices(&[1, 2]).unwrap();
        let leaf = ComposedWord::Leaf(Word::from_indices(&[5, 6]).unwrap());
        let inner = BTreeMap::from([(x(1), leaf.clone()), (x(2), leaf)]);
        assert!(matches!(
            ComposedWord::compose(outer, inner),
            Err(Error::DisjointnessViolated(_))
        ));
    }

    #[test]
    fn composed_word_flattens() {
        let outer = Word::from_indices(&[1, 2, 1]).unwrap();
        let inner = BTreeMap::from([
            (
                x(1),
                ComposedWord::Leaf(Word::from_indices(&[5, 6]).unwrap()),
            ),
            (x(2), ComposedWord::Leaf(Word::from_indices(&[7]).unwrap())),
        ]);
        let cw = ComposedWord::compose(outer, inner).unwrap();
        assert_eq!(cw.flatten(), Word::from_indices(&[5, 6, 7, 5, 6]).unwrap());
        assert_eq!(cw.flat_len(), 5);
        assert_eq!(cw.variables().len(), 3);
    }

    #[test]
    fn lifting() {
        let w = Term::Word(Word::from_indices(&[1, 2]).unwrap());
        assert_eq!(w.lift(Flavor::Semiring).unwrap().to_string(), "x[1] * x[2]");
        let u = Term::Unary(
            w.lift(Flavor::Unary)
                .unwrap()
                .to_string()
                .parse::<UnaryTerm>()
                .unwrap(),
        );
        assert!(matches!(
            u.lift(Flavor::Semiring),
            Err(Error::FlavorMismatch(_))
        ));
    }
}
