use std::collections::BTreeMap;
use std::fmt;

use crate::error::{FriezeError, Result};
use crate::rat::Rat;
use crate::subset::{wrap, Subset};

use super::pattern::FriezePattern;

/// Values `p_{x i j}` of a (3,n) pattern for `i, j != x`, indexed by the
/// positions of `i` and `j` in the order `x+1 < x+2 < .. < x-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossSection {
    n: usize,
    x: usize,
    /// Keyed by positions `(p, q)` with `1 <= p < q <= n - 1`.
    entries: BTreeMap<(usize, usize), Rat>,
}

impl CrossSection {
    /// Builds a section from rows listed base first: row `r` holds the pairs
    /// of positions `(t, t + r + 1)` for `t = 1, 2, ..`, so the base row is
    /// the adjacent pairs and the last row is the single apex `(1, n - 1)`.
    pub fn from_rows(n: usize, x: usize, rows: &[Vec<Rat>]) -> Result<Self> {
        if n < 4 || !(1..=n).contains(&x) {
            return Err(FriezeError::Parameters(format!("cross-section at {x} for n = {n}")));
        }
        if rows.len() != n - 2 {
            return Err(FriezeError::Parse(format!("expected {} rows, got {}", n - 2, rows.len())));
        }
        let mut entries = BTreeMap::new();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n - 2 - r {
                return Err(FriezeError::Parse(format!(
                    "row {r} has {} entries, expected {}",
                    row.len(),
                    n - 2 - r
                )));
            }
            for (t, v) in row.iter().enumerate() {
                entries.insert((t + 1, t + r + 2), v.clone());
            }
        }
        Ok(CrossSection { n, x, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> usize {
        self.x
    }

    /// The element at position `t` of the order starting after `x`.
    pub fn element(&self, t: usize) -> usize {
        wrap((self.x + t) as i64, self.n)
    }

    pub fn position(&self, e: usize) -> usize {
        (e + self.n - self.x) % self.n
    }

    /// Entry at positions `p < q`.
    pub fn at(&self, p: usize, q: usize) -> &Rat {
        &self.entries[&(p, q)]
    }

    /// `p_{x i j}` for elements `i, j` distinct from `x`.
    pub fn value(&self, i: usize, j: usize) -> Option<&Rat> {
        let (p, q) = (self.position(i), self.position(j));
        self.entries.get(&(p.min(q), p.max(q)))
    }

    pub fn subset(&self, p: usize, q: usize) -> Subset {
        Subset::EMPTY.with(self.x).with(self.element(p)).with(self.element(q))
    }

    /// Rows base first, matching [`CrossSection::from_rows`].
    pub fn rows(&self) -> Vec<Vec<Rat>> {
        (0..self.n - 2)
            .map(|r| (1..self.n - 1 - r).map(|t| self.at(t, t + r + 1).clone()).collect())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Positions of the three interval corners.
    pub fn corners(&self) -> [(usize, usize); 3] {
        [(1, 2), (self.n - 2, self.n - 1), (1, self.n - 1)]
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Rat)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }
}

/// The triangle of all `p_{x i j}`; only defined for k = 3.
pub fn cross_section(p: &FriezePattern, x: usize) -> Result<CrossSection> {
    if p.k() != 3 {
        return Err(FriezeError::Unsupported(format!("cross-sections need k = 3, got k = {}", p.k())));
    }
    let n = p.n();
    if !(1..=n).contains(&x) {
        return Err(FriezeError::Domain(format!("{x} outside 1..={n}")));
    }
    let mut section = CrossSection { n, x, entries: BTreeMap::new() };
    for a in 1..n {
        for b in a + 1..n {
            let value = p.get(section.subset(a, b)).clone();
            section.entries.insert((a, b), value);
        }
    }
    Ok(section)
}

/// An `l x m` diamond on positions `i < j` with `i + m < j - l`:
/// `A = (i, j)`, `B = (i, j-l)`, `C = (i+m, j)`, `D = (i+m, j-l)`,
/// `E = (i, i+m)`, `F = (j-l, j)`, and the relation `BC - AD = EF`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedDiamond {
    pub x: usize,
    /// Elements, not positions.
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub m: usize,
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
    pub e: Rat,
    pub f: Rat,
}

impl GeneralizedDiamond {
    /// `(BC - AD, EF)`.
    pub fn sides(&self) -> (Rat, Rat) {
        (&self.b * &self.c - &self.a * &self.d, &self.e * &self.f)
    }

    pub fn holds(&self) -> bool {
        let (lhs, rhs) = self.sides();
        lhs == rhs
    }
}

impl fmt::Display for GeneralizedDiamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x={} i={} j={} {}x{}: {}*{} - {}*{} vs {}*{}",
            self.x, self.i, self.j, self.l, self.m, self.b, self.c, self.a, self.d, self.e, self.f
        )
    }
}

/// Every diamond of the section, ordered by `(i, j, m, l)` positions.
pub fn diamonds(s: &CrossSection) -> Vec<GeneralizedDiamond> {
    let top = s.n() - 1;
    let mut out = Vec::new();
    for p in 1..=top {
        for q in p + 1..=top {
            for m in 1..q - p {
                for l in 1..q - p {
                    if p + m >= q - l {
                        continue;
                    }
                    out.push(GeneralizedDiamond {
                        x: s.x(),
                        i: s.element(p),
                        j: s.element(q),
                        l,
                        m,
                        a: s.at(p, q).clone(),
                        b: s.at(p, q - l).clone(),
                        c: s.at(p + m, q).clone(),
                        d: s.at(p + m, q - l).clone(),
                        e: s.at(p, p + m).clone(),
                        f: s.at(q - l, q).clone(),
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondViolation {
    pub diamond: GeneralizedDiamond,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl fmt::Display for DiamondViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "diamond {}: {} != {}", self.diamond, self.lhs, self.rhs)
    }
}

pub fn check_diamonds(s: &CrossSection) -> Vec<DiamondViolation> {
    diamonds(s)
        .into_iter()
        .filter_map(|diamond| {
            let (lhs, rhs) = diamond.sides();
            (lhs != rhs).then_some(DiamondViolation { diamond, lhs, rhs })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::subset::Shape;

    fn rows(data: &[&[i64]]) -> Vec<Vec<Rat>> {
        data.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    fn nine() -> CrossSection {
        let data: &[&[i64]] = &[
            &[1, 3, 3, 4, 9, 6, 1],
            &[6, 8, 3, 21, 23, 3],
            &[15, 4, 9, 51, 10],
            &[7, 3, 21, 22],
            &[3, 5, 9],
            &[3, 2],
            &[1],
        ];
        CrossSection::from_rows(9, 9, &rows(data)).unwrap()
    }

    #[test]
    fn layout_and_round_trip() {
        let s = nine();
        assert_eq!(s.len(), 28);
        assert_eq!(s.element(1), 1);
        assert_eq!(s.element(8), 8);
        assert_eq!(s.value(2, 7), Some(&rat(5)));
        assert_eq!(s.value(7, 2), Some(&rat(5)));
        for (p, q) in s.corners() {
            assert_eq!(s.at(p, q), &rat(1));
        }
        assert_eq!(CrossSection::from_rows(9, 9, &s.rows()).unwrap(), s);
        assert!(CrossSection::from_rows(9, 9, &s.rows()[1..]).is_err());
    }

    #[test]
    fn printed_identities_and_full_check() {
        let s = nine();
        let all = diamonds(&s);
        let first = all.iter().find(|d| d.i == 2 && d.j == 7 && d.l == 1 && d.m == 1).unwrap();
        assert_eq!((&first.b, &first.c, &first.a, &first.d, &first.e, &first.f),
            (&rat(3), &rat(21), &rat(5), &rat(9), &rat(3), &rat(6)));
        let second = all.iter().find(|d| d.i == 1 && d.j == 8 && d.l == 5 && d.m == 1).unwrap();
        assert_eq!((&second.b, &second.c, &second.e, &second.f), (&rat(6), &rat(2), &rat(1), &rat(9)));
        assert_eq!(&second.a * &second.d, rat(3));
        assert_eq!(second.sides(), (rat(9), rat(9)));
        assert!(check_diamonds(&s).is_empty());
    }

    #[test]
    fn perturbation_breaks_a_diamond() {
        let mut data = nine().rows();
        data[2][1] += rat(1);
        let bad = CrossSection::from_rows(9, 9, &data).unwrap();
        assert!(!check_diamonds(&bad).is_empty());
    }

    #[test]
    fn sections_of_patterns() {
        let shape = Shape::new(3, 6).unwrap();
        let p = FriezePattern::from_fn(shape, |s| rat(s.bits() as i64));
        let s = cross_section(&p, 4).unwrap();
        assert_eq!(s.len(), 10);
        assert_eq!(s.element(1), 5);
        assert_eq!(s.element(5), 3);
        assert_eq!(s.value(5, 1), Some(&rat(Subset::of(&[1, 4, 5]).bits() as i64)));
        let two = FriezePattern::from_fn(Shape::new(2, 4).unwrap(), |_| rat(1));
        assert!(matches!(cross_section(&two, 1), Err(FriezeError::Unsupported(_))));
    }
}
