//! Identity checking over finite algebras.
//!
//! Exhaustive search walks the substitution space as a mixed-radix counter
//! over the sorted variable list (first variable most significant), so the
//! first failing substitution found is the lexicographically least one.
//! The space is cut into fixed-size shards; [`rayon`]'s `find_map_first`
//! keeps the earliest failing shard, which makes the report independent of
//! the worker count.

mod image;
mod transfer;

pub use image::{check_idempotent_image, evaluate_composed, image_set, ImageSet};
pub use transfer::{transfer_spotcheck, TransferReport};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::FiniteSemigroup;
use crate::error::{Error, Result};
use crate::order::AiSemiring;
use crate::terms::{compile, Flavor, Program, Tables, Term, VariableId};

pub const DEFAULT_BUDGET: u128 = 100_000_000;
pub const DEFAULT_TRIALS: u64 = 1_000_000;
/// Substitutions per exhaustive shard.
const SHARD: u128 = 1 << 14;
/// Trials per random stream in sampled mode.
const SAMPLE_BLOCK: u64 = 1 << 12;

#[derive(Debug, Clone, Copy)]
pub enum Algebra<'a> {
    Semigroup(&'a FiniteSemigroup),
    Semiring(&'a AiSemiring),
}

impl<'a> Algebra<'a> {
    pub fn size(&self) -> usize {
        match self {
            Algebra::Semigroup(s) => s.size(),
            Algebra::Semiring(a) => a.size(),
        }
    }

    pub fn tables(&self) -> Tables<'a> {
        match *self {
            Algebra::Semigroup(s) => s.into(),
            Algebra::Semiring(a) => a.into(),
        }
    }

    pub fn label(&self, x: usize) -> String {
        match self {
            Algebra::Semigroup(s) => s.label(x),
            Algebra::Semiring(a) => a.label(x),
        }
    }
}

impl<'a> From<&'a FiniteSemigroup> for Algebra<'a> {
    fn from(s: &'a FiniteSemigroup) -> Self {
        Algebra::Semigroup(s)
    }
}

impl<'a> From<&'a AiSemiring> for Algebra<'a> {
    fn from(a: &'a AiSemiring) -> Self {
        Algebra::Semiring(a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    /// Uniform substitutions from a seeded generator.
    Sampled {
        trials: u64,
        seed: u64,
    },
    /// Only the listed substitutions, in order.
    Candidates(Vec<BTreeMap<VariableId, usize>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    HoldsSampled,
    Fails,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::HoldsSampled => "holds-sampled",
            Verdict::Fails => "fails",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Sorted by variable.
    pub assignment: Vec<(VariableId, usize)>,
    pub lhs: usize,
    pub rhs: usize,
}

impl Counterexample {
    pub fn as_map(&self) -> BTreeMap<VariableId, usize> {
        self.assignment.iter().cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    /// Exhaustive holds: the whole space. Exhaustive fails: position of the
    /// counterexample in enumeration order, plus one. Sampled and candidate
    /// modes: substitutions actually tried.
    pub substitutions_checked: BigUint,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Fails
    }

    /// `VERDICT <v> CHECKED <n> CEX <var=elem,...>|none`
    pub fn machine_line(&self) -> String {
        let cex = match &self.counterexample {
            None => "none".to_string(),
            Some(c) => c
                .assignment
                .iter()
                .map(|(v, a)| format!("{}={}", v, a))
                .collect::<Vec<_>>()
                .join(","),
        };
        format!(
            "VERDICT {} CHECKED {} CEX {}",
            self.verdict, self.substitutions_checked, cex
        )
    }

    /// Human-readable summary followed by the machine line.
    pub fn render(&self, alg: Algebra) -> String {
        let mut out = format!(
            "verdict: {}\nsubstitutions checked: {}\n",
            self.verdict, self.substitutions_checked
        );
        if let Some(c) = &self.counterexample {
            out.push_str("counterexample:\n");
            for (v, a) in &c.assignment {
                out.push_str(&format!("  {} = {} [{}]\n", v, a, alg.label(*a)));
            }
            out.push_str(&format!(
                "  lhs = {} [{}], rhs = {} [{}]\n",
                c.lhs,
                alg.label(c.lhs),
                c.rhs,
                alg.label(c.rhs)
            ));
        }
        out.push_str(&self.machine_line());
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    /// Largest substitution space exhaustive mode will walk.
    pub budget: u128,
    pub workers: usize,
}

impl CheckConfig {
    /// Default budget; workers from `WORKBENCH_THREADS`, else all cores.
    pub fn from_env() -> Self {
        let workers = std::env::var("WORKBENCH_THREADS")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&w| w > 0)
            .unwrap_or_else(|| {
                std::thread::available_parallelism()
                    .map(|n| n.get())
                    .unwrap_or(1)
            });
        CheckConfig {
            budget: DEFAULT_BUDGET,
            workers,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub(crate) fn run<R: Send>(&self, job: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
        {
            Ok(pool) => pool.install(job),
            Err(_) => job(),
        }
    }
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig::from_env()
    }
}

/// Both sides compiled against their joint sorted variable list.
pub struct CompiledIdentity {
    pub vars: Vec<VariableId>,
    pub lhs: Program,
    pub rhs: Program,
}

impl CompiledIdentity {
    pub fn new(lhs: &Term, rhs: &Term, tables: &Tables) -> Result<Self> {
        let flavor = joint_flavor(lhs, rhs)?;
        let (lhs, rhs) = (lhs.lift(flavor)?, rhs.lift(flavor)?);
        let mut vars: Vec<VariableId> = lhs.variables().into_iter().collect();
        vars.extend(rhs.variables());
        vars.sort();
        vars.dedup();
        let l = compile(&lhs, &vars)?;
        let r = compile(&rhs, &vars)?;
        l.check_tables(tables)?;
        r.check_tables(tables)?;
        Ok(CompiledIdentity {
            vars,
            lhs: l,
            rhs: r,
        })
    }

    #[inline]
    pub fn values(&self, t: &Tables, a: &[usize]) -> (usize, usize) {
        (self.lhs.eval(t, a), self.rhs.eval(t, a))
    }
}

fn joint_flavor(lhs: &Term, rhs: &Term) -> Result<Flavor> {
    let (a, b) = (lhs.flavor(), rhs.flavor());
    match (a, b) {
        (Flavor::Unary, Flavor::Semiring) | (Flavor::Semiring, Flavor::Unary) => Err(
            Error::FlavorMismatch(format!("{} term against {} term", a, b)),
        ),
        _ => Ok(a.max(b)),
    }
}

fn space_size(size: usize, vars: usize) -> BigUint {
    BigUint::from(size).pow(vars as u32)
}

/// Decodes `index` into mixed-radix digits, first digit most significant.
fn decode(mut index: u128, size: usize, digits: &mut [usize]) {
    for d in digits.iter_mut().rev() {
        *d = (index % size as u128) as usize;
        index /= size as u128;
    }
}

/// Advances the counter; returns false on wrap-around.
#[inline]
fn increment(digits: &mut [usize], size: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < size {
            return true;
        }
        *d = 0;
    }
    false
}

pub fn check_identity<'a>(
    alg: impl Into<Algebra<'a>>,
    lhs: &Term,
    rhs: &Term,
    mode: &Mode,
    cfg: &CheckConfig,
) -> Result<IdentityReport> {
    let alg = alg.into();
    let tables = alg.tables();
    let id = CompiledIdentity::new(lhs, rhs, &tables)?;
    let k = id.vars.len();
    let size = tables.size;
    let report = |found: Option<(Vec<usize>, usize, usize)>, checked: BigUint, clean: Verdict| {
        let counterexample = found.map(|(a, l, r)| Counterexample {
            assignment: id.vars.iter().cloned().zip(a).collect(),
            lhs: l,
            rhs: r,
        });
        IdentityReport {
            verdict: if counterexample.is_some() {
                Verdict::Fails
            } else {
                clean
            },
            counterexample,
            substitutions_checked: checked,
        }
    };

    match mode {
        Mode::Exhaustive => {
            let total = space_size(size, k);
            let total_small = u128::try_from(&total).ok().filter(|&t| t <= cfg.budget);
            let total = match total_small {
                Some(t) => t,
                None => return Err(Error::BudgetExceeded(format!("{} substitutions", total))),
            };
            let shards = total.div_ceil(SHARD);
            let found = cfg.run(|| {
                (0..shards).into_par_iter().find_map_first(|s| {
                    let start = s * SHARD;
                    let end = (start + SHARD).min(total);
                    let mut digits = vec![0; k];
                    decode(start, size, &mut digits);
                    for idx in start..end {
                        let (l, r) = id.values(&tables, &digits);
                        if l != r {
                            return Some((idx, digits, l, r));
                        }
                        increment(&mut digits, size);
                    }
                    None
                })
            });
            Ok(match found {
                Some((idx, digits, l, r)) => {
                    report(Some((digits, l, r)), BigUint::from(idx + 1), Verdict::Holds)
                }
                None => report(None, BigUint::from(total), Verdict::Holds),
            })
        }
        Mode::Sampled { trials, seed } => {
            let trials = *trials;
            let blocks = trials.div_ceil(SAMPLE_BLOCK);
            let found = cfg.run(|| {
                (0..blocks).into_par_iter().find_map_first(|b| {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    rng.set_stream(b);
                    let mut digits = vec![0; k];
                    let end = ((b + 1) * SAMPLE_BLOCK).min(trials);
                    for t in b * SAMPLE_BLOCK..end {
                        for d in digits.iter_mut() {
                            *d = rng.gen_range(0..size);
                        }
                        let (l, r) = id.values(&tables, &digits);
                        if l != r {
                            return Some((t, digits, l, r));
                        }
                    }
                    None
                })
            });
            Ok(match found {
                Some((t, digits, l, r)) => report(
                    Some((digits, l, r)),
                    BigUint::from(t + 1),
                    Verdict::HoldsSampled,
                ),
                None => report(None, BigUint::from(trials), Verdict::HoldsSampled),
            })
        }
        Mode::Candidates(list) => {
            let mut digits = vec![0; k];
            for (i, tau) in list.iter().enumerate() {
                for (d, v) in digits.iter_mut().zip(&id.vars) {
                    *d = *tau
                        .get(v)
                        .ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
                    if *d >= size {
                        return Err(Error::IndexInvalid(*d));
                    }
                }
                let (l, r) = id.values(&tables, &digits);
                if l != r {
                    return Ok(report(
                        Some((digits, l, r)),
                        BigUint::from(i + 1),
                        Verdict::HoldsSampled,
                    ));
                }
            }
            Ok(report(
                None,
                BigUint::from(list.len()),
                Verdict::HoldsSampled,
            ))
        }
    }
}

/// Re-evaluates a counterexample; true when it still separates the sides.
pub fn confirm_counterexample<'a>(
    alg: impl Into<Algebra<'a>>,
    lhs: &Term,
    rhs: &Term,
    cex: &Counterexample,
) -> Result<bool> {
    let alg = alg.into();
    let tables = alg.tables();
    let id = CompiledIdentity::new(lhs, rhs, &tables)?;
    let tau = cex.as_map();
    let a: Vec<usize> = id
        .vars
        .iter()
        .map(|v| {
            tau.get(v)
                .copied()
                .ok_or_else(|| Error::UnboundVariable(v.to_string()))
        })
        .collect::<Result<_>>()?;
    let (l, r) = id.values(&tables, &a);
    Ok(l != r && l == cex.lhs && r == cex.rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{b21, sigma7};
    use crate::terms::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn cfg(workers: usize) -> CheckConfig {
        CheckConfig::from_env().with_workers(workers)
    }

    #[test]
    fn b21_satisfies_x2_x3() {
        let b = b21().semigroup;
        let r = check_identity(&b, &t("x x"), &t("x x x"), &Mode::Exhaustive, &cfg(2)).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.substitutions_checked, BigUint::from(6u32));
        assert_eq!(r.machine_line(), "VERDICT holds CHECKED 6 CEX none");
    }

    #[test]
    fn least_counterexample_is_reported() {
        let b = b21().semigroup;
        // x = x^2 first fails at E12, index 2
        let r = check_identity(&b, &t("x"), &t("x x"), &Mode::Exhaustive, &cfg(3)).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        let c = r.counterexample.clone().unwrap();
        assert_eq!(c.assignment, vec![(VariableId::named("x"), 2)]);
        assert_eq!((c.lhs, c.rhs), (2, 0));
        assert_eq!(r.substitutions_checked, BigUint::from(3u32));
        assert!(confirm_counterexample(&b, &t("x"), &t("x x"), &c).unwrap());
    }

    #[test]
    fn sigma7_separation() {
        let s = sigma7().unwrap();
        let (l, r) = (t("(x*y+y*x)^2"), t("x^2+y^2"));
        let nat = check_identity(&s.natural, &l, &r, &Mode::Exhaustive, &cfg(1)).unwrap();
        assert_eq!(nat.verdict, Verdict::Holds);
        assert_eq!(nat.substitutions_checked, BigUint::from(49u32));
        let boo = check_identity(&s.boolean, &l, &r, &Mode::Exhaustive, &cfg(1)).unwrap();
        assert_eq!(boo.verdict, Verdict::Fails);
    }

    #[test]
    fn budget_and_flavor_errors() {
        let b = b21().semigroup;
        let small = CheckConfig::from_env().with_budget(10);
        assert!(matches!(
            check_identity(&b, &t("x y"), &t("y x"), &Mode::Exhaustive, &small),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            check_identity(&b, &t("x^-1"), &t("x + x"), &Mode::Exhaustive, &cfg(1)),
            Err(Error::FlavorMismatch(_))
        ));
        assert!(matches!(
            check_identity(&b, &t("x + y"), &t("x"), &Mode::Exhaustive, &cfg(1)),
            Err(Error::FlavorMismatch(_))
        ));
    }

    #[test]
    fn sampled_mode_is_seeded() {
        let b = b21().semigroup;
        let mode = Mode::Sampled {
            trials: 10_000,
            seed: 7,
        };
        let a = check_identity(&b, &t("x y"), &t("y x"), &mode, &cfg(1)).unwrap();
        let c = check_identity(&b, &t("x y"), &t("y x"), &mode, &cfg(4)).unwrap();
        assert_eq!(a, c);
        assert_eq!(a.verdict, Verdict::Fails);
        let h = check_identity(&b, &t("x x"), &t("x x x"), &mode, &cfg(4)).unwrap();
        assert_eq!(h.verdict, Verdict::HoldsSampled);
        assert_eq!(h.substitutions_checked, BigUint::from(10_000u32));
    }

    #[test]
    fn odometer_matches_decoding() {
        let mut d = vec![0; 3];
        let mut e = vec![0; 3];
        for i in 0..60u128 {
            decode(i, 4, &mut e);
            assert_eq!(d, e);
            increment(&mut d, 4);
        }
    }
}
