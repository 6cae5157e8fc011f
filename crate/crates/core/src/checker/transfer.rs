//! Sampled transfer of identities from a small inverse semigroup to small
//! inverse subsemigroups of a large one.
//!
//! Only consequences can be spot-checked here: an identity that holds in
//! `small` is tested on randomly generated inverse subsemigroups of `big`.
//! A violation means the premise that those subsemigroups lie in the
//! variety of `small` is false for this run.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_identity, CheckConfig, Counterexample, Mode, Verdict};
use crate::algebra::FiniteSemigroup;
use crate::error::{Error, Result};
use crate::terms::{Literal, Term, UnaryTerm, VariableId};

/// Most attempts spent looking for identities of `small`.
const SEARCH_ATTEMPTS: usize = 20_000;
/// Trials for subsemigroups too large to check exhaustively.
const FALLBACK_TRIALS: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: usize,
    /// Generators (indices in `big`) of the violating subsemigroup.
    pub generators: Vec<usize>,
    /// Counterexample in the subsemigroup's own indexing.
    pub counterexample: Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferReport {
    pub identities: Vec<(Term, Term)>,
    pub subsemigroups: usize,
    /// Checks decided exhaustively / by sampling.
    pub exhaustive_checks: usize,
    pub sampled_checks: usize,
    pub violations: Vec<Violation>,
}

impl TransferReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn random_term(rng: &mut ChaCha8Rng, vars: &[VariableId], max_len: usize) -> UnaryTerm {
    let len = rng.gen_range(1..=max_len);
    let letters = (0..len)
        .map(|_| Literal {
            var: vars.choose(rng).expect("nonempty").clone(),
            inverse: rng.gen_bool(0.3),
        })
        .collect();
    UnaryTerm::new(letters).expect("nonempty")
}

/// A random candidate identity drawn from a few shapes that often hold in
/// small combinatorial inverse semigroups.
fn candidate(rng: &mut ChaCha8Rng, vars: &[VariableId]) -> (UnaryTerm, UnaryTerm) {
    let u = random_term(rng, vars, 4);
    let v = random_term(rng, vars, 4);
    let pow = |t: &UnaryTerm, k| t.pow(k).expect("k >= 1");
    match rng.gen_range(0..5) {
        0 => (u, v),
        1 => (pow(&u, 2), pow(&u, 3)),
        2 => (
            pow(&u, 2).concat(&pow(&v, 2)),
            pow(&v, 2).concat(&pow(&u, 2)),
        ),
        3 => (u.concat(&v).concat(&u), pow(&u.concat(&v), 2).concat(&u)),
        _ => (pow(&u.concat(&v), 2), pow(&u.concat(&v), 3)),
    }
}

/// Up to `count` nontrivial unary identities of `small`, each verified
/// exhaustively there.
pub fn sample_identities(
    small: &FiniteSemigroup,
    count: usize,
    seed: u64,
    cfg: &CheckConfig,
) -> Result<Vec<(Term, Term)>> {
    if !small.is_inverse() {
        return Err(Error::MissingInverses);
    }
    let vars = [VariableId::named("x"), VariableId::named("y")];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Term, Term)> = Vec::new();
    for _ in 0..SEARCH_ATTEMPTS {
        if out.len() >= count {
            break;
        }
        let (u, v) = candidate(&mut rng, &vars);
        if u == v {
            continue;
        }
        let (u, v) = (Term::Unary(u), Term::Unary(v));
        if out.contains(&(u.clone(), v.clone())) {
            continue;
        }
        if check_identity(small, &u, &v, &Mode::Exhaustive, cfg)?.verdict == Verdict::Holds {
            out.push((u, v));
        }
    }
    Ok(out)
}

/// Checks each identity on `trials` random inverse subsemigroups of `big`,
/// each generated by `gens_count` random elements.
pub fn transfer_identities(
    big: &FiniteSemigroup,
    identities: &[(Term, Term)],
    gens_count: usize,
    trials: usize,
    seed: u64,
    cfg: &CheckConfig,
) -> Result<TransferReport> {
    if !big.is_inverse() {
        return Err(Error::MissingInverses);
    }
    if gens_count == 0 {
        return Err(Error::BadParameters("need at least one generator".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TransferReport {
        identities: identities.to_vec(),
        subsemigroups: 0,
        exhaustive_checks: 0,
        sampled_checks: 0,
        violations: Vec::new(),
    };
    for _ in 0..trials {
        let generators: Vec<usize> = (0..gens_count)
            .map(|_| rng.gen_range(0..big.size()))
            .collect();
        let (sub, _) = big.subsemigroup(&generators, true)?;
        report.subsemigroups += 1;
        for (i, (u, v)) in identities.iter().enumerate() {
            let r = match check_identity(&sub, u, v, &Mode::Exhaustive, cfg) {
                Ok(r) => {
                    report.exhaustive_checks += 1;
                    r
                }
                Err(Error::BudgetExceeded(_)) => {
                    report.sampled_checks += 1;
                    let mode = Mode::Sampled {
                        trials: FALLBACK_TRIALS,
                        seed: rng.gen(),
                    };
                    check_identity(&sub, u, v, &mode, cfg)?
                }
                Err(e) => return Err(e),
            };
            if let Some(c) = r.counterexample {
                report.violations.push(Violation {
                    identity: i,
                    generators: generators.clone(),
                    counterexample: c,
                });
            }
        }
    }
    Ok(report)
}

/// Samples `identities` identities of `small` and transfers them.
pub fn transfer_spotcheck(
    big: &FiniteSemigroup,
    small: &FiniteSemigroup,
    gens_count: usize,
    trials: usize,
    seed: u64,
    identities: usize,
    cfg: &CheckConfig,
) -> Result<TransferReport> {
    let ids = sample_identities(small, identities, seed, cfg)?;
    transfer_identities(big, &ids, gens_count, trials, seed.wrapping_add(1), cfg)
}
