use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{FriezeError, Result};
use crate::plucker::{canonicalize, validate_assignment, RelationViolation};
use crate::rat::Rat;
use crate::subset::{Shape, Subset};

use super::cross_section::{check_diamonds, cross_section, DiamondViolation};

/// Values on every k-subset of `{1..n}`.
///
/// Multisets with a repeated entry are never stored; queries for them go
/// through [`canonicalize`] and return 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriezePattern {
    shape: Shape,
    values: BTreeMap<Subset, Rat>,
}

impl FriezePattern {
    /// Requires exactly one value per k-subset.
    pub fn new(shape: Shape, values: BTreeMap<Subset, Rat>) -> Result<Self> {
        for s in shape.subsets() {
            if !values.contains_key(&s) {
                return Err(FriezeError::Missing(s));
            }
        }
        if let Some(extra) = values.keys().find(|s| shape.check(**s).is_err()) {
            return Err(FriezeError::Domain(format!("{extra} is not a {}-subset of 1..={}", shape.k(), shape.n())));
        }
        Ok(FriezePattern { shape, values })
    }

    pub fn from_fn(shape: Shape, mut value: impl FnMut(Subset) -> Rat) -> Self {
        let values = shape.subsets().into_iter().map(|s| (s, value(s))).collect();
        FriezePattern { shape, values }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn k(&self) -> usize {
        self.shape.k()
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn values(&self) -> &BTreeMap<Subset, Rat> {
        &self.values
    }

    pub fn into_values(self) -> BTreeMap<Subset, Rat> {
        self.values
    }

    /// Value at a k-subset. Panics on subsets outside the shape.
    pub fn get(&self, s: Subset) -> &Rat {
        &self.values[&s]
    }

    pub fn try_get(&self, s: Subset) -> Result<&Rat> {
        self.values.get(&s).ok_or(FriezeError::Missing(s))
    }

    /// Value at an arbitrary k-tuple, signed by antisymmetry.
    pub fn value_of_tuple(&self, tuple: &[usize]) -> Result<Rat> {
        if tuple.len() != self.k() {
            return Err(FriezeError::Domain(format!("expected {} indices, got {}", self.k(), tuple.len())));
        }
        let index = canonicalize(tuple, self.n())?;
        Ok(match index.subset() {
            None => Rat::zero(),
            Some(s) if index.sign < 0 => -self.get(s).clone(),
            Some(s) => self.get(s).clone(),
        })
    }

    /// Subsets carrying the value 1, in lex order.
    pub fn ones(&self) -> Vec<Subset> {
        self.values.iter().filter(|(_, v)| v.is_one()).map(|(s, _)| *s).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, &Rat)> {
        self.values.iter().map(|(s, v)| (*s, v))
    }
}

/// Which optional checks [`validate_frieze_with`] runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Checks {
    pub grassmann_plucker: bool,
    /// Generalized diamonds on every cross-section; only meaningful for k = 3.
    pub diamonds: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    /// Interval subsets whose value is not 1.
    pub intervals: Vec<(Subset, Rat)>,
    pub negative: Vec<Subset>,
    pub non_integral: Vec<Subset>,
    pub relations: Vec<RelationViolation>,
    /// `None` when diamond checks were not run.
    pub diamonds: Option<Vec<DiamondViolation>>,
    /// Zero values at genuine subsets; allowed, but worth flagging.
    pub zero_warnings: Vec<Subset>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.intervals.is_empty()
            && self.negative.is_empty()
            && self.non_integral.is_empty()
            && self.relations.is_empty()
            && self.diamonds.as_ref().is_none_or(Vec::is_empty)
    }

    pub fn violation_count(&self) -> usize {
        self.intervals.len()
            + self.negative.len()
            + self.non_integral.len()
            + self.relations.len()
            + self.diamonds.as_ref().map_or(0, Vec::len)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            writeln!(f, "valid")?;
        }
        for (s, v) in &self.intervals {
            writeln!(f, "interval p{s} = {v}, expected 1")?;
        }
        for s in &self.negative {
            writeln!(f, "negative value at p{s}")?;
        }
        for s in &self.non_integral {
            writeln!(f, "non-integral value at p{s}")?;
        }
        for v in &self.relations {
            writeln!(f, "{v}")?;
        }
        for d in self.diamonds.iter().flatten() {
            writeln!(f, "{d}")?;
        }
        for s in &self.zero_warnings {
            writeln!(f, "warning: p{s} = 0")?;
        }
        Ok(())
    }
}

/// Intervals, sign, integrality and three-term relations.
pub fn validate_frieze(p: &FriezePattern) -> ValidationReport {
    validate_frieze_with(p, Checks::default())
}

pub fn validate_frieze_with(p: &FriezePattern, checks: Checks) -> ValidationReport {
    let shape = p.shape();
    let mut report = ValidationReport::default();
    for iv in shape.intervals() {
        let v = p.get(iv);
        if !v.is_one() {
            report.intervals.push((iv, v.clone()));
        }
    }
    for (s, v) in p.iter() {
        if v.is_negative() {
            report.negative.push(s);
        } else if v.is_zero() {
            report.zero_warnings.push(s);
        }
        if !v.is_integer() {
            report.non_integral.push(s);
        }
    }
    report.relations = validate_assignment(p.values(), shape, checks.grassmann_plucker)
        .expect("pattern values are total");
    if checks.diamonds && shape.k() == 3 {
        let mut found = Vec::new();
        for x in 1..=shape.n() {
            let section = cross_section(p, x).expect("k = 3");
            found.extend(check_diamonds(&section));
        }
        report.diamonds = Some(found);
    }
    report
}
