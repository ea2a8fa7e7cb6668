//! Subsets of `{1..n}` and the `(k, n)` shape they live in.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{FriezeError, Result};

/// Largest supported `n`; subsets are stored as 64-bit masks.
pub const MAX_N: usize = 64;

/// A subset of `{1..=64}` stored as a bit mask (element `e` is bit `e - 1`).
///
/// Ordering is lexicographic on the increasing element lists, so for subsets
/// of equal size it matches the usual lex order `123 < 124 < ... < 456`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Builds a subset from distinct elements in `1..=n`.
    pub fn from_slice(elements: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n || n > MAX_N {
                return Err(FriezeError::Domain(format!(
                    "element {e} outside 1..={n}"
                )));
            }
            let bit = 1u64 << (e - 1);
            if bits & bit != 0 {
                return Err(FriezeError::Domain(format!("repeated element {e}")));
            }
            bits |= bit;
        }
        Ok(Subset(bits))
    }

    /// Panicking shorthand for literals in tests and fixtures.
    pub fn of(elements: &[usize]) -> Self {
        Self::from_slice(elements, MAX_N).expect("valid subset literal")
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_N).contains(&e) && self.0 & (1u64 << (e - 1)) != 0
    }

    pub fn with(self, e: usize) -> Self {
        Subset(self.0 | (1u64 << (e - 1)))
    }

    pub fn without(self, e: usize) -> Self {
        Subset(self.0 & !(1u64 << (e - 1)))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }
}

/// Increasing iterator over the elements of a [`Subset`].
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements().cmp(other.elements())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems = self.to_vec();
        if elems.iter().all(|&e| e < 10) {
            for e in elems {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = elems.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{self}")
    }
}

/// Maps any integer onto the cyclic label range `1..=n`.
pub fn wrap(i: i64, n: usize) -> usize {
    let n = n as i64;
    ((i - 1).rem_euclid(n) + 1) as usize
}

/// The ambient `(k, n)` with `2 <= k <= n/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    k: usize,
    n: usize,
}

impl Shape {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < 2 || 2 * k > n {
            return Err(FriezeError::Parameters(format!(
                "need 2 <= k <= n/2, got k = {k}, n = {n}"
            )));
        }
        if n > MAX_N {
            return Err(FriezeError::Parameters(format!("n = {n} exceeds {MAX_N}")));
        }
        Ok(Shape { k, n })
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// Cardinality of every maximal weakly separated collection.
    pub fn cluster_size(self) -> usize {
        (self.k - 1) * (self.n - self.k - 1) + self.n
    }

    pub fn subset_count(self) -> usize {
        binomial(self.n, self.k)
    }

    /// All k-subsets of `{1..n}` in lex order.
    pub fn subsets(self) -> Vec<Subset> {
        k_subsets(self.n, self.k)
    }

    /// `{i, i+1, .., i+k-1}` with cyclic wrap.
    pub fn interval(self, start: i64) -> Subset {
        (0..self.k as i64).fold(Subset::EMPTY, |s, t| s.with(wrap(start + t, self.n)))
    }

    /// The n cyclic intervals, listed by starting point `1..=n`.
    pub fn intervals(self) -> Vec<Subset> {
        (1..=self.n as i64).map(|i| self.interval(i)).collect()
    }

    pub fn is_interval(self, s: Subset) -> bool {
        s.len() == self.k && (1..=self.n as i64).any(|i| self.interval(i) == s)
    }

    /// Checks that `s` is a k-subset of `{1..n}`.
    pub fn check(self, s: Subset) -> Result<()> {
        let in_range = s.max_element().is_none_or(|m| m <= self.n);
        if s.len() != self.k || !in_range {
            return Err(FriezeError::Domain(format!(
                "{s} is not a {}-subset of 1..={}",
                self.k, self.n
            )));
        }
        Ok(())
    }

    pub fn subset(self, elements: &[usize]) -> Result<Subset> {
        let s = Subset::from_slice(elements, self.n)?;
        self.check(s)?;
        Ok(s)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.n)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All size-`k` subsets of `{1..n}` in lex order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Subset> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(idx.iter().fold(Subset::EMPTY, |s, &e| s.with(e)));
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - (k - 1 - p)) else {
            break;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
    out
}
