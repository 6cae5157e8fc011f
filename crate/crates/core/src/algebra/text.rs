//! Cayley-table text format.
//!
//! ```text
//! 2
//! 0 0
//! 0 1
//! # label 0 00/00
//! # label 1 10/00
//! inv: 0 1
//! ```
//!
//! Line one is the carrier size, then one row per element (`row a` lists
//! `a·b` for every `b`). Label lines and the `inv:` line are optional and
//! written in that order.

use std::fmt;
use std::str::FromStr;

use super::FiniteSemigroup;
use crate::error::{Error, Result};

impl fmt::Display for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.size)?;
        for a in 0..self.size {
            write_indices(f, self.row(a))?;
            writeln!(f)?;
        }
        if let Some(labels) = &self.labels {
            for (i, l) in labels.iter().enumerate() {
                writeln!(f, "# label {} {}", i, l)?;
            }
        }
        if let Some(inv) = &self.inv {
            write!(f, "inv: ")?;
            write_indices(f, inv)?;
            writeln!(f)?;
        }
        Ok(())
    }
}

fn write_indices(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{}", x)?;
    }
    Ok(())
}

fn parse_indices(line: &str, expect: usize, what: &str) -> Result<Vec<usize>> {
    let xs = line
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::BadTable(format!("bad index {:?} in {}", t, what)))
        })
        .collect::<Result<Vec<_>>>()?;
    if xs.len() != expect {
        return Err(Error::BadTable(format!(
            "{} has {} entries, expected {}",
            what,
            xs.len(),
            expect
        )));
    }
    Ok(xs)
}

impl FromStr for FiniteSemigroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::BadTable("missing size line".into()))?
            .trim()
            .parse()
            .map_err(|_| Error::BadTable("bad size line".into()))?;
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::BadTable(format!("missing row {}", a)))?;
            mul.extend(parse_indices(line, n, &format!("row {}", a))?);
        }
        let mut labels: Option<Vec<Option<String>>> = None;
        let mut inv = None;
        for line in lines {
            if let Some(rest) = line.strip_prefix("# label ") {
                let (idx, text) = rest.split_once(' ').unwrap_or((rest, ""));
                let idx: usize = idx
                    .parse()
                    .map_err(|_| Error::BadTable(format!("bad label line {:?}", line)))?;
                if idx >= n {
                    return Err(Error::IndexInvalid(idx));
                }
                labels.get_or_insert_with(|| vec![None; n])[idx] = Some(text.to_string());
            } else if let Some(rest) = line.strip_prefix("inv:") {
                inv = Some(parse_indices(rest, n, "inv line")?);
            } else if line.starts_with('#') {
                continue;
            } else {
                return Err(Error::BadTable(format!("unexpected line {:?}", line)));
            }
        }
        let mut sg = FiniteSemigroup::from_table(n, mul)?;
        if let Some(labels) = labels {
            let labels = labels
                .into_iter()
                .enumerate()
                .map(|(i, l)| l.ok_or_else(|| Error::BadTable(format!("label {} missing", i))))
                .collect::<Result<Vec<_>>>()?;
            sg = sg.with_labels(labels)?;
        }
        if let Some(inv) = inv {
            sg = sg.with_inverses(inv)?;
        }
        Ok(sg)
    }
}
