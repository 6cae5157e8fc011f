//! Partial one-to-one transformations of `{0, .., N}`.
//!
//! Products compose right-to-left: `(a·b)(q) = a(b(q))`, so the right
//! factor acts first.

use std::fmt;
use std::str::FromStr;

use crate::algebra::CanonicalKey;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialInjection {
    map: Vec<Option<u32>>,
}

impl PartialInjection {
    /// The nowhere-defined map on `points` points.
    pub fn empty(points: usize) -> Self {
        PartialInjection {
            map: vec![None; points],
        }
    }

    pub fn from_pairs(points: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut map = vec![None; points];
        let mut hit = vec![false; points];
        for &(q, r) in pairs {
            if q >= points || r >= points {
                return Err(Error::BadParameters(format!(
                    "pair {} -> {} outside {} points",
                    q, r, points
                )));
            }
            if map[q].is_some() || hit[r] {
                return Err(Error::BadParameters(format!(
                    "pair {} -> {} breaks injectivity",
                    q, r
                )));
            }
            map[q] = Some(r as u32);
            hit[r] = true;
        }
        Ok(PartialInjection { map })
    }

    pub fn points(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, q: usize) -> Option<usize> {
        self.map.get(q).copied().flatten().map(|r| r as usize)
    }

    /// Defined pairs, sorted by source point.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(q, r)| r.map(|r| (q, r as usize)))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.map.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    pub fn compose(&self, right: &PartialInjection) -> Result<PartialInjection> {
        if self.points() != right.points() {
            return Err(Error::GroundSetMismatch(self.points(), right.points()));
        }
        Ok(self.compose_unchecked(right))
    }

    pub(crate) fn compose_unchecked(&self, right: &PartialInjection) -> PartialInjection {
        PartialInjection {
            map: right
                .map
                .iter()
                .map(|r| r.and_then(|mid| self.map[mid as usize]))
                .collect(),
        }
    }

    pub fn invert(&self) -> PartialInjection {
        let mut map = vec![None; self.points()];
        for (q, r) in self.pairs() {
            map[r] = Some(q as u32);
        }
        PartialInjection { map }
    }

    /// One-line form, e.g. `{0->1, 3->2}`.
    pub fn compact(&self) -> String {
        let body: Vec<String> = self
            .pairs()
            .iter()
            .map(|(q, r)| format!("{}->{}", q, r))
            .collect();
        format!("{{{}}}", body.join(", "))
    }
}

impl CanonicalKey for PartialInjection {
    fn canonical_key(&self) -> Vec<u8> {
        let mut k = (self.points() as u32).to_le_bytes().to_vec();
        for (q, r) in self.pairs() {
            k.extend_from_slice(&(q as u32).to_le_bytes());
            k.extend_from_slice(&(r as u32).to_le_bytes());
        }
        k
    }
}

/// `points N+1` followed by one `q -> q'` line per pair, sorted by `q`.
impl fmt::Display for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "points {}", self.points())?;
        for (q, r) in self.pairs() {
            writeln!(f, "{} -> {}", q, r)?;
        }
        Ok(())
    }
}

impl FromStr for PartialInjection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse { pos: 0, msg };
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| bad("missing points line".into()))?;
        let points: usize = header
            .strip_prefix("points ")
            .and_then(|n| n.trim().parse().ok())
            .ok_or_else(|| bad(format!("bad header {:?}", header)))?;
        let mut pairs = Vec::new();
        for line in lines {
            let (q, r) = line
                .split_once("->")
                .ok_or_else(|| bad(format!("bad pair line {:?}", line)))?;
            let q: usize = q
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad point in {:?}", line)))?;
            let r: usize = r
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad point in {:?}", line)))?;
            if pairs.last().is_some_and(|&(p, _)| p >= q) {
                return Err(bad("pairs must be sorted by source".into()));
            }
            pairs.push((q, r));
        }
        PartialInjection::from_pairs(points, &pairs)
    }
}
