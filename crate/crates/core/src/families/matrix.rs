//! Zero-one matrices: general Boolean matrices and rook matrices.
//!
//! Text form is row-major `0`/`1` characters with rows separated by `/`,
//! e.g. `01/00`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::CanonicalKey;
use crate::error::{Error, Result};

fn parse_rows(s: &str) -> Result<Vec<Vec<bool>>> {
    let rows: Vec<Vec<bool>> = s
        .trim()
        .split('/')
        .map(|row| {
            row.chars()
                .enumerate()
                .map(|(i, c)| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::Parse {
                        pos: i,
                        msg: format!("matrix entry {:?}", c),
                    }),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let t = rows.len();
    if t == 0 || rows.iter().any(|r| r.len() != t) {
        return Err(Error::Parse {
            pos: 0,
            msg: "matrix must be square".into(),
        });
    }
    Ok(rows)
}

/// Square Boolean matrix under `or` / `and` arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    dim: usize,
    bits: Vec<bool>,
}

impl BoolMatrix {
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        BoolMatrix {
            dim,
            bits: rows
                .iter()
                .flat_map(|r| r.iter().map(|&x| x != 0))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.dim + j]
    }

    pub fn product(&self, other: &BoolMatrix) -> BoolMatrix {
        let n = self.dim;
        let bits = (0..n * n)
            .map(|ij| {
                let (i, j) = (ij / n, ij % n);
                (0..n).any(|k| self.get(i, k) && other.get(k, j))
            })
            .collect();
        BoolMatrix { dim: n, bits }
    }

    pub fn sum(&self, other: &BoolMatrix) -> BoolMatrix {
        BoolMatrix {
            dim: self.dim,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| *a || *b)
                .collect(),
        }
    }

    pub fn transpose(&self) -> BoolMatrix {
        let n = self.dim;
        BoolMatrix {
            dim: n,
            bits: (0..n * n).map(|ij| self.get(ij % n, ij / n)).collect(),
        }
    }
}

impl CanonicalKey for BoolMatrix {
    fn canonical_key(&self) -> Vec<u8> {
        let mut k = vec![self.dim as u8];
        k.extend(self.bits.iter().map(|&b| b as u8));
        k
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            if i > 0 {
                write!(f, "/")?;
            }
            for j in 0..self.dim {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
        }
        Ok(())
    }
}

impl FromStr for BoolMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = parse_rows(s)?;
        Ok(BoolMatrix {
            dim: rows.len(),
            bits: rows.into_iter().flatten().collect(),
        })
    }
}

/// A zero-one `t × t` matrix with at most one 1 in each row and column,
/// stored as the partial map row -> column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RookMatrix {
    cols: Vec<Option<u8>>,
}

impl RookMatrix {
    pub fn new(cols: Vec<Option<usize>>) -> Result<Self> {
        let t = cols.len();
        let mut seen = vec![false; t];
        for c in cols.iter().flatten() {
            if *c >= t || seen[*c] {
                return Err(Error::BadParameters(format!(
                    "not a rook placement: {:?}",
                    cols
                )));
            }
            seen[*c] = true;
        }
        Ok(RookMatrix {
            cols: cols.into_iter().map(|c| c.map(|c| c as u8)).collect(),
        })
    }

    pub fn zero(t: usize) -> Self {
        RookMatrix {
            cols: vec![None; t],
        }
    }

    pub fn identity(t: usize) -> Self {
        RookMatrix {
            cols: (0..t).map(|i| Some(i as u8)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    /// Column of the 1 in row `i`, if any.
    pub fn col(&self, i: usize) -> Option<usize> {
        self.cols[i].map(|c| c as usize)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.col(i) == Some(j)
    }

    pub fn rank(&self) -> usize {
        self.cols.iter().flatten().count()
    }

    pub fn product(&self, other: &RookMatrix) -> RookMatrix {
        RookMatrix {
            cols: self
                .cols
                .iter()
                .map(|c| c.and_then(|j| other.cols[j as usize]))
                .collect(),
        }
    }

    pub fn transpose(&self) -> RookMatrix {
        let mut cols = vec![None; self.dim()];
        for (i, c) in self.cols.iter().enumerate() {
            if let Some(j) = c {
                cols[*j as usize] = Some(i as u8);
            }
        }
        RookMatrix { cols }
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &RookMatrix) -> RookMatrix {
        RookMatrix {
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| if a == b { *a } else { None })
                .collect(),
        }
    }

    /// Entrywise `<=`, i.e. `other` extends `self` as a partial map.
    pub fn entrywise_le(&self, other: &RookMatrix) -> bool {
        self.cols
            .iter()
            .zip(&other.cols)
            .all(|(a, b)| a.is_none() || a == b)
    }

    /// Determinant of a full-rank (permutation) matrix, `None` otherwise.
    pub fn permutation_sign(&self) -> Option<i8> {
        if self.rank() != self.dim() {
            return None;
        }
        let mut seen = vec![false; self.dim()];
        let mut sign = 1i8;
        for start in 0..self.dim() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.col(i).unwrap();
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        Some(sign)
    }

    pub fn to_bool(&self) -> BoolMatrix {
        let t = self.dim();
        BoolMatrix {
            dim: t,
            bits: (0..t * t).map(|ij| self.get(ij / t, ij % t)).collect(),
        }
    }
}

impl CanonicalKey for RookMatrix {
    fn canonical_key(&self) -> Vec<u8> {
        self.to_bool().canonical_key()
    }
}

impl fmt::Display for RookMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_bool().fmt(f)
    }
}

impl FromStr for RookMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = parse_rows(s)?;
        let mut cols = Vec::with_capacity(rows.len());
        for row in &rows {
            let ones: Vec<usize> = row
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(j, _)| j)
                .collect();
            if ones.len() > 1 {
                return Err(Error::BadParameters(format!("{} is not a rook matrix", s)));
            }
            cols.push(ones.first().copied());
        }
        RookMatrix::new(cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let m: RookMatrix = "010/100/001".parse().unwrap();
        assert_eq!(m.to_string(), "010/100/001");
        assert_eq!(m.permutation_sign(), Some(-1));
        assert!("11/00".parse::<RookMatrix>().is_err());
        let b: BoolMatrix = "11/10".parse().unwrap();
        assert_eq!(b.to_string(), "11/10");
    }

    #[test]
    fn rook_product_matches_boolean_product() {
        let a: RookMatrix = "010/000/100".parse().unwrap();
        let b: RookMatrix = "001/100/000".parse().unwrap();
        assert_eq!(a.product(&b).to_bool(), a.to_bool().product(&b.to_bool()));
        assert_eq!(a.transpose().to_bool(), a.to_bool().transpose());
    }

    #[test]
    fn three_cycles_are_even() {
        let c: RookMatrix = "010/001/100".parse().unwrap();
        assert_eq!(c.permutation_sign(), Some(1));
        assert_eq!(c.product(&c).permutation_sign(), Some(1));
    }
}
