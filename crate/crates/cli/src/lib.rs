//! Command implementations behind the `workbench` binary.

pub mod registry;
pub mod spec;

use std::fs;
use std::time::Instant;

use workbench::checker::{check_identity, CheckConfig, Mode, Verdict, DEFAULT_TRIALS};
use workbench::structure::classify_hm;
use workbench::terms::{parse_term, Flavor};
use workbench::{Error, Result};

use spec::parse_spec;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

/// Builds `spec`, optionally writes it to `output`, and returns the
/// summary line.
pub fn cmd_build(spec: &str, output: Option<&str>) -> Result<String> {
    let built = parse_spec(spec)?;
    if let Some(path) = output {
        fs::write(path, built.to_text()).map_err(|e| Error::BadSpec(format!("{}: {}", path, e)))?;
    }
    Ok(built.summary())
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub sampled: bool,
    pub budget: Option<u128>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub format: Format,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            sampled: false,
            budget: None,
            trials: None,
            seed: None,
            format: Format::Text,
        }
    }
}

/// Exit code and stdout of `check`.
pub fn cmd_check(algebra: &str, lhs: &str, rhs: &str, opts: &CheckOptions) -> (i32, String) {
    match run_check(algebra, lhs, rhs, opts) {
        Ok(r) => r,
        Err(Error::BudgetExceeded(msg)) => (EXIT_BUDGET, format!("budget exceeded: {}\n", msg)),
        Err(e) => (EXIT_ERROR, format!("error: {}\n", e)),
    }
}

fn run_check(algebra: &str, lhs: &str, rhs: &str, opts: &CheckOptions) -> Result<(i32, String)> {
    let (l, r) = (parse_term(lhs)?, parse_term(rhs)?);
    let mut built = parse_spec(algebra)?;
    if l.flavor() == Flavor::Semiring || r.flavor() == Flavor::Semiring {
        built = built.with_addition()?;
    }
    let mode = if opts.sampled {
        let seed = opts
            .seed
            .ok_or_else(|| Error::BadParameters("sampled mode requires --seed".into()))?;
        Mode::Sampled {
            trials: opts.trials.unwrap_or(DEFAULT_TRIALS),
            seed,
        }
    } else {
        Mode::Exhaustive
    };
    let mut cfg = CheckConfig::from_env();
    if let Some(b) = opts.budget {
        cfg = cfg.with_budget(b);
    }
    let start = Instant::now();
    let rep = check_identity(built.as_algebra(), &l, &r, &mode, &cfg)?;
    let code = if rep.verdict == Verdict::Fails {
        EXIT_FAILS
    } else {
        EXIT_HOLDS
    };
    let out = match opts.format {
        Format::Machine => format!("{}\n", rep.machine_line()),
        Format::Text => format!(
            "identity: {} = {}\nalgebra: {} ({} elements)\n{}elapsed: {:.3}s\n",
            l,
            r,
            algebra,
            built.size(),
            rep.render(built.as_algebra()),
            start.elapsed().as_secs_f64()
        ),
    };
    Ok((code, out))
}

/// Principal-series report of the multiplicative semigroup.
pub fn cmd_analyze(algebra: &str) -> Result<String> {
    Ok(classify_hm(&parse_spec(algebra)?.semigroup()).report())
}

/// Exit code and stdout of `verify-paper`.
pub fn cmd_verify(filter: Option<&str>, format: Format) -> (i32, String) {
    match registry::run_suite(filter, &CheckConfig::from_env()) {
        Ok(r) => (
            if r.all_pass() { EXIT_HOLDS } else { EXIT_FAILS },
            r.render(format == Format::Text),
        ),
        Err(e) => (EXIT_ERROR, format!("error: {}\n", e)),
    }
}
