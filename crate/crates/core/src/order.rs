//! Natural partial order of inverse semigroups and the additively
//! idempotent semirings it induces.
//!
//! `x <= y` iff `x = x x⁻¹ y`. When every pair has an infimum, taking the
//! infimum as addition turns the semigroup into an ai-semiring. For
//! aperiodic semigroups the infimum is also given by `(x y⁻¹)^p x`, which
//! is kept here as an independent cross-check rather than the definition.

use std::fmt;
use std::str::FromStr;

use crate::algebra::FiniteSemigroup;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalOrder {
    size: usize,
    le: Vec<bool>,
}

impl NaturalOrder {
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le[x * self.size + y]
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.size;
        (0..n).all(|x| self.le(x, x))
            && (0..n).all(|x| (0..n).all(|y| x == y || !(self.le(x, y) && self.le(y, x))))
            && (0..n).all(|x| {
                (0..n).all(|y| !self.le(x, y) || (0..n).all(|z| !self.le(y, z) || self.le(x, z)))
            })
    }
}

pub fn natural_order(s: &FiniteSemigroup) -> Result<NaturalOrder> {
    let inv = s.inverse_table().ok_or(Error::MissingInverses)?;
    let n = s.size();
    let mut le = vec![false; n * n];
    for x in 0..n {
        let xx = s.mul(x, inv[x]);
        for y in 0..n {
            le[x * n + y] = s.mul(xx, y) == x;
        }
    }
    Ok(NaturalOrder { size: n, le })
}

/// Pairwise infima, or the first pair (in index order) lacking one.
pub fn inf_table(order: &NaturalOrder) -> Result<Vec<usize>> {
    let n = order.size;
    let mut table = vec![0; n * n];
    for x in 0..n {
        for y in x..n {
            let lower: Vec<usize> = (0..n)
                .filter(|&z| order.le(z, x) && order.le(z, y))
                .collect();
            let greatest = lower
                .iter()
                .copied()
                .find(|&g| lower.iter().all(|&z| order.le(z, g)))
                .ok_or(Error::NotASemilattice(x, y))?;
            table[x * n + y] = greatest;
            table[y * n + x] = greatest;
        }
    }
    Ok(table)
}

/// Least `p` with `x^p = x^(p+1)` for every `x`; `None` when some element
/// generates a nontrivial cyclic group.
pub fn aperiodicity_index(s: &FiniteSemigroup) -> Option<usize> {
    let mut p = 1;
    for x in 0..s.size() {
        // powers x^1 .. x^(size+1) are enough to hit the cycle
        let mut pow = x;
        let mut found = None;
        for k in 1..=s.size() {
            let next = s.mul(pow, x);
            if next == pow {
                found = Some(k);
                break;
            }
            pow = next;
        }
        p = p.max(found?);
    }
    Some(p)
}

/// `(x y⁻¹)^p x`.
pub fn nat_sum_formula(s: &FiniteSemigroup, p: usize, x: usize, y: usize) -> Result<usize> {
    if x >= s.size() {
        return Err(Error::IndexInvalid(x));
    }
    if y >= s.size() {
        return Err(Error::IndexInvalid(y));
    }
    if p == 0 {
        return Err(Error::BadParameters("p must be positive".into()));
    }
    let yi = s.inv(y).ok_or(Error::MissingInverses)?;
    let base = s.mul(x, yi);
    Ok(s.mul(s.power(base, p), x))
}

/// An additively idempotent semiring given by two Cayley tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AiSemiring {
    size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl AiSemiring {
    /// Wraps two tables; axioms are not checked (see [`Self::validate`]).
    pub fn new(size: usize, add: Vec<usize>, mul: Vec<usize>) -> Result<Self> {
        if size == 0 || add.len() != size * size || mul.len() != size * size {
            return Err(Error::BadTable(
                "semiring tables have the wrong shape".into(),
            ));
        }
        if let Some(&bad) = add.iter().chain(&mul).find(|&&x| x >= size) {
            return Err(Error::IndexInvalid(bad));
        }
        Ok(AiSemiring {
            size,
            add,
            mul,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::BadTable("label count mismatch".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    /// The multiplicative reduct.
    pub fn multiplicative(&self) -> FiniteSemigroup {
        let s = FiniteSemigroup::from_table(self.size, self.mul.clone()).expect("shape checked");
        match &self.labels {
            Some(l) => s.with_labels(l.clone()).expect("shape checked"),
            None => s,
        }
    }

    pub fn additive(&self) -> FiniteSemigroup {
        FiniteSemigroup::from_table(self.size, self.add.clone()).expect("shape checked")
    }

    pub fn validate(&self) -> AxiomReport {
        validate_ai_semiring(self)
    }
}

/// Outcome of a single axiom; `witness` holds the failing triple (pairs
/// and singletons are padded with zeros).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub witness: Option<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn failure(&self, axiom: &str) -> Option<(usize, usize, usize)> {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .and_then(|c| c.witness)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match c.witness {
                None => writeln!(f, "{:<24} pass", c.axiom)?,
                Some((x, y, z)) => writeln!(f, "{:<24} FAIL at ({}, {}, {})", c.axiom, x, y, z)?,
            }
        }
        Ok(())
    }
}

fn find_triple(
    n: usize,
    pred: impl Fn(usize, usize, usize) -> bool,
) -> Option<(usize, usize, usize)> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !pred(x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn validate_ai_semiring(a: &AiSemiring) -> AxiomReport {
    let n = a.size;
    let checks = vec![
        AxiomCheck {
            axiom: "add-idempotent",
            witness: (0..n).find(|&x| a.add(x, x) != x).map(|x| (x, 0, 0)),
        },
        AxiomCheck {
            axiom: "add-commutative",
            witness: find_triple(n, |x, y, _| a.add(x, y) == a.add(y, x)),
        },
        AxiomCheck {
            axiom: "add-associative",
            witness: find_triple(n, |x, y, z| a.add(a.add(x, y), z) == a.add(x, a.add(y, z))),
        },
        AxiomCheck {
            axiom: "mul-associative",
            witness: find_triple(n, |x, y, z| a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z))),
        },
        AxiomCheck {
            axiom: "left-distributive",
            witness: find_triple(n, |x, y, z| {
                a.mul(x, a.add(y, z)) == a.add(a.mul(x, y), a.mul(x, z))
            }),
        },
        AxiomCheck {
            axiom: "right-distributive",
            witness: find_triple(n, |x, y, z| {
                a.mul(a.add(y, z), x) == a.add(a.mul(y, x), a.mul(z, x))
            }),
        },
    ];
    AxiomReport { checks }
}

/// `(S, +_nat, ·)`; fails when the natural order is not an inf-semilattice
/// or the resulting tables break an axiom.
pub fn make_nat_semiring(s: &FiniteSemigroup) -> Result<AiSemiring> {
    let add = inf_table(&natural_order(s)?)?;
    let mut a = AiSemiring::new(s.size(), add, s.table().to_vec())?;
    if let Some(l) = s.labels() {
        a = a.with_labels(l.to_vec())?;
    }
    let report = a.validate();
    if let Some(bad) = report.checks.iter().find(|c| c.witness.is_some()) {
        return Err(Error::BadTable(format!(
            "natural semiring breaks {}",
            bad.axiom
        )));
    }
    Ok(a)
}

/// Two Cayley-table blocks (addition, then multiplication) separated by a
/// `---` line. Labels travel with the addition block.
impl fmt::Display for AiSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut add = self.additive();
        if let Some(l) = &self.labels {
            add = add.with_labels(l.clone()).expect("shape checked");
        }
        write!(f, "{}", add)?;
        writeln!(f, "---")?;
        write!(
            f,
            "{}",
            FiniteSemigroup::from_table(self.size, self.mul.clone()).expect("shape checked")
        )
    }
}

impl FromStr for AiSemiring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (add, mul) = s
            .split_once("\n---\n")
            .ok_or_else(|| Error::BadTable("missing --- separator".into()))?;
        let add: FiniteSemigroup = add.parse()?;
        let mul: FiniteSemigroup = mul.parse()?;
        if add.size() != mul.size() {
            return Err(Error::BadTable("blocks differ in size".into()));
        }
        let mut a = AiSemiring::new(add.size(), add.table().to_vec(), mul.table().to_vec())?;
        if let Some(l) = add.labels() {
            a = a.with_labels(l.to_vec())?;
        }
        Ok(a)
    }
}
