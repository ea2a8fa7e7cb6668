use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{FriezeError, Result};
use crate::rat::Rat;
use crate::subset::{wrap, Shape, Subset};

use super::pattern::FriezePattern;

/// A classical frieze stored as its interior rows over one period: entry
/// `(r, i)` is `p_{i+1, i+r+3}` (0-based `r` and `i`, labels taken mod n),
/// between two implicit border rows of 1s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterArray {
    n: usize,
    rows: Vec<Vec<Rat>>,
}

/// A failed unimodular diamond: `rows[r][i] rows[r][i+1] - below * above`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularViolation {
    pub row: usize,
    pub column: usize,
    pub determinant: Rat,
}

impl CoxeterArray {
    pub fn new(n: usize, rows: Vec<Vec<Rat>>) -> Result<Self> {
        Shape::new(2, n)?;
        if rows.len() != n - 3 || rows.iter().any(|r| r.len() != n) {
            return Err(FriezeError::Parse(format!(
                "a frieze for n = {n} needs {} interior rows of {n} entries",
                n - 3
            )));
        }
        Ok(CoxeterArray { n, rows })
    }

    pub fn from_pattern(p: &FriezePattern) -> Result<Self> {
        if p.k() != 2 {
            return Err(FriezeError::Unsupported(format!("classical arrays need k = 2, got k = {}", p.k())));
        }
        let n = p.n();
        let rows = (0..n - 3)
            .map(|r| (0..n).map(|i| p.get(Self::pair(n, r, i)).clone()).collect())
            .collect();
        Ok(CoxeterArray { n, rows })
    }

    fn pair(n: usize, r: usize, i: usize) -> Subset {
        Subset::EMPTY
            .with(wrap(i as i64 + 1, n))
            .with(wrap((i + r + 3) as i64, n))
    }

    /// Reads the pattern back. Every pair is seen twice per period, and the
    /// two readings must agree.
    pub fn to_pattern(&self) -> Result<FriezePattern> {
        let shape = Shape::new(2, self.n)?;
        let mut values: BTreeMap<Subset, Rat> = shape.intervals().into_iter().map(|s| (s, Rat::one())).collect();
        for (r, row) in self.rows.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                let s = Self::pair(self.n, r, i);
                if let Some(prev) = values.insert(s, v.clone()) {
                    if &prev != v {
                        return Err(FriezeError::Domain(format!(
                            "array is not glide symmetric: p{s} read as {prev} and {v}"
                        )));
                    }
                }
            }
        }
        FriezePattern::new(shape, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn rows_mut(&mut self) -> &mut [Vec<Rat>] {
        &mut self.rows
    }

    fn entry(&self, r: isize, i: usize) -> Rat {
        if r < 0 || r as usize >= self.rows.len() {
            Rat::one()
        } else {
            self.rows[r as usize][i % self.n].clone()
        }
    }

    /// Walks every diamond `b c - a d = 1` of one period, borders included.
    pub fn unimodular_violations(&self) -> Vec<UnimodularViolation> {
        let mut out = Vec::new();
        for r in 0..self.rows.len() as isize {
            for i in 0..self.n {
                let det = self.entry(r, i) * self.entry(r, i + 1) - self.entry(r + 1, i) * self.entry(r - 1, i + 1);
                if !det.is_one() {
                    out.push(UnimodularViolation { row: r as usize, column: i, determinant: det });
                }
            }
        }
        out
    }
}
