//! Plücker indices, relation generators, matrix minors and relation checking.
//!
//! Values are always evaluated exact rationals keyed by k-subsets. Tuples that
//! are not increasing are brought to a [`Subset`] by [`canonicalize`], which
//! records the parity of the sorting permutation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{FriezeError, Result};
use crate::rat::{determinant, Rat};
use crate::subset::{k_subsets, Shape, Subset};

/// A k-tuple over `{1..n}` reduced to its sorted form and a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PluckerIndex {
    pub n: usize,
    /// Sorted entries; contains a repeat exactly when `sign == 0`.
    pub elements: Vec<usize>,
    pub sign: i8,
}

impl PluckerIndex {
    pub fn k(&self) -> usize {
        self.elements.len()
    }

    /// The underlying subset, unless the tuple had a repeated entry.
    pub fn subset(&self) -> Option<Subset> {
        (self.sign != 0).then(|| self.elements.iter().fold(Subset::EMPTY, |s, &e| s.with(e)))
    }
}

/// Sorts a tuple, tracking the antisymmetry sign; repeated entries give sign 0.
pub fn canonicalize(tuple: &[usize], n: usize) -> Result<PluckerIndex> {
    if let Some(&bad) = tuple.iter().find(|&&e| e == 0 || e > n) {
        return Err(FriezeError::Domain(format!("index {bad} outside 1..={n}")));
    }
    let mut elements = tuple.to_vec();
    let mut sign = 1i8;
    // insertion sort, counting transpositions
    for i in 1..elements.len() {
        let mut j = i;
        while j > 0 && elements[j - 1] > elements[j] {
            elements.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if elements.windows(2).any(|w| w[0] == w[1]) {
        sign = 0;
    }
    Ok(PluckerIndex { n, elements, sign })
}

/// `p_{Iac} p_{Ibd} = p_{Iab} p_{Icd} + p_{Iad} p_{Ibc}` with `a < b < c < d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThreeTermRelation {
    pub base: Subset,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl ThreeTermRelation {
    fn with(&self, x: usize, y: usize) -> Subset {
        self.base.with(x).with(y)
    }

    /// The crossing pair `(Iac, Ibd)` on the left-hand side.
    pub fn crossing(&self) -> (Subset, Subset) {
        (self.with(self.a, self.c), self.with(self.b, self.d))
    }

    /// The two products on the right: `((Iab, Icd), (Iad, Ibc))`.
    pub fn sides(&self) -> ((Subset, Subset), (Subset, Subset)) {
        (
            (self.with(self.a, self.b), self.with(self.c, self.d)),
            (self.with(self.a, self.d), self.with(self.b, self.c)),
        )
    }

    /// Returns `(lhs, rhs)` of the relation under `value`.
    pub fn evaluate<F>(&self, mut value: F) -> Result<(Rat, Rat)>
    where
        F: FnMut(Subset) -> Result<Rat>,
    {
        let (ac, bd) = self.crossing();
        let ((ab, cd), (ad, bc)) = self.sides();
        let lhs = value(ac)? * value(bd)?;
        let rhs = value(ab)? * value(cd)? + value(ad)? * value(bc)?;
        Ok((lhs, rhs))
    }
}

impl fmt::Display for ThreeTermRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ac, bd) = self.crossing();
        let ((ab, cd), (ad, bc)) = self.sides();
        write!(f, "p{ac} p{bd} = p{ab} p{cd} + p{ad} p{bc}")
    }
}

/// Grassmann–Plücker relation
/// `sum_r (-1)^r p_{i_1..i_{k-1} j_r} p_{j_0..^j_r..j_k} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GpRelation {
    pub head: Vec<usize>,
    pub tail: Vec<usize>,
}

/// A non-vanishing term `sign * p_left * p_right` of a [`GpRelation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GpTerm {
    pub sign: i8,
    pub left: Subset,
    pub right: Subset,
}

/// Which sign to place in front of the r-th summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpSign {
    /// `(-1)^r`, alternating with the summation index.
    Alternating,
    /// `(-1)^n`, the same sign for every summand.
    Constant,
}

impl GpRelation {
    pub fn terms(&self, n: usize, convention: GpSign) -> Result<Vec<GpTerm>> {
        let mut out = Vec::new();
        for r in 0..self.tail.len() {
            let mut left = self.head.clone();
            left.push(self.tail[r]);
            let right: Vec<usize> = self
                .tail
                .iter()
                .enumerate()
                .filter_map(|(s, &j)| (s != r).then_some(j))
                .collect();
            let left = canonicalize(&left, n)?;
            let right = canonicalize(&right, n)?;
            let outer = match convention {
                GpSign::Alternating if r % 2 == 1 => -1,
                GpSign::Alternating => 1,
                GpSign::Constant if n % 2 == 1 => -1,
                GpSign::Constant => 1,
            };
            let sign = outer * left.sign * right.sign;
            if sign != 0 {
                out.push(GpTerm {
                    sign,
                    left: left.subset().expect("nonzero sign"),
                    right: right.subset().expect("nonzero sign"),
                });
            }
        }
        Ok(out)
    }

    /// True when every summand vanishes by antisymmetry.
    pub fn is_trivial(&self, n: usize) -> Result<bool> {
        Ok(self.terms(n, GpSign::Alternating)?.is_empty())
    }

    pub fn evaluate<F>(&self, n: usize, convention: GpSign, mut value: F) -> Result<Rat>
    where
        F: FnMut(Subset) -> Result<Rat>,
    {
        let mut total = Rat::zero();
        for t in self.terms(n, convention)? {
            let prod = value(t.left)? * value(t.right)?;
            if t.sign > 0 {
                total += prod;
            } else {
                total -= prod;
            }
        }
        Ok(total)
    }
}

impl fmt::Display for GpRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "GP[{} | {}]", join(&self.head), join(&self.tail))
    }
}

/// One relation per `(k-2)`-subset `I` and `a<b<c<d` disjoint from it, in
/// lex order of `(I, a, b, c, d)`.
pub fn three_term_relations(shape: Shape) -> Vec<ThreeTermRelation> {
    let n = shape.n();
    let mut out = Vec::new();
    for base in k_subsets(n, shape.k() - 2) {
        let free: Vec<usize> = (1..=n).filter(|&e| !base.contains(e)).collect();
        for quad in k_subsets(free.len(), 4) {
            let q: Vec<usize> = quad.elements().map(|i| free[i - 1]).collect();
            out.push(ThreeTermRelation {
                base,
                a: q[0],
                b: q[1],
                c: q[2],
                d: q[3],
            });
        }
    }
    out
}

/// One relation per increasing head `i_1<..<i_{k-1}` and tail `j_0<..<j_k`.
pub fn gp_relations(shape: Shape) -> Vec<GpRelation> {
    let heads = k_subsets(shape.n(), shape.k() - 1);
    let tails = k_subsets(shape.n(), shape.k() + 1);
    let mut out = Vec::with_capacity(heads.len() * tails.len());
    for h in &heads {
        for t in &tails {
            out.push(GpRelation {
                head: h.to_vec(),
                tail: t.to_vec(),
            });
        }
    }
    out
}

/// All maximal minors of a `k x n` matrix, keyed by column set.
pub fn minors(matrix: &[Vec<Rat>]) -> Result<BTreeMap<Subset, Rat>> {
    let k = matrix.len();
    let n = matrix.first().map_or(0, Vec::len);
    if k == 0 || n < k || matrix.iter().any(|row| row.len() != n) {
        return Err(FriezeError::Domain(format!(
            "expected a k x n matrix with k <= n, got {} rows",
            k
        )));
    }
    let mut out = BTreeMap::new();
    for cols in k_subsets(n, k) {
        let block: Vec<Vec<Rat>> = matrix
            .iter()
            .map(|row| cols.elements().map(|c| row[c - 1].clone()).collect())
            .collect();
        out.insert(cols, determinant(&block));
    }
    Ok(out)
}

/// A relation that fails on a value assignment.
#[derive(Clone, Debug, PartialEq)]
pub enum RelationViolation {
    ThreeTerm {
        relation: ThreeTermRelation,
        lhs: Rat,
        rhs: Rat,
    },
    GrassmannPlucker {
        relation: GpRelation,
        residual: Rat,
    },
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationViolation::ThreeTerm { relation, lhs, rhs } => {
                write!(f, "{relation}: {lhs} != {rhs}")
            }
            RelationViolation::GrassmannPlucker { relation, residual } => {
                write!(f, "{relation}: sum is {residual}")
            }
        }
    }
}

/// Checks every three-term relation (and optionally every Grassmann–Plücker
/// relation). An empty result means the assignment satisfies them all.
pub fn validate_assignment(
    values: &BTreeMap<Subset, Rat>,
    shape: Shape,
    with_gp: bool,
) -> Result<Vec<RelationViolation>> {
    for s in shape.subsets() {
        if !values.contains_key(&s) {
            return Err(FriezeError::Missing(s));
        }
    }
    let lookup = |s: Subset| Ok(values[&s].clone());
    let mut out = Vec::new();
    for relation in three_term_relations(shape) {
        let (lhs, rhs) = relation.evaluate(lookup)?;
        if lhs != rhs {
            out.push(RelationViolation::ThreeTerm { relation, lhs, rhs });
        }
    }
    if with_gp {
        for relation in gp_relations(shape) {
            let residual = relation.evaluate(shape.n(), GpSign::Alternating, lookup)?;
            if !residual.is_zero() {
                out.push(RelationViolation::GrassmannPlucker { relation, residual });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use crate::subset::binomial;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, k: usize, n: usize) -> Vec<Vec<Rat>> {
        (0..k)
            .map(|_| {
                (0..n)
                    .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
                    .collect()
            })
            .collect()
    }

    /// Permutation-expansion determinant, independent of the elimination path.
    fn leibniz(m: &[Vec<Rat>]) -> Rat {
        let size = m.len();
        let mut perm: Vec<usize> = (0..size).collect();
        let mut total = Rat::zero();
        fn rec(i: usize, perm: &mut Vec<usize>, m: &[Vec<Rat>], total: &mut Rat) {
            if i == perm.len() {
                let mut inversions = 0;
                for a in 0..perm.len() {
                    for b in a + 1..perm.len() {
                        if perm[a] > perm[b] {
                            inversions += 1;
                        }
                    }
                }
                let mut prod = rat(if inversions % 2 == 0 { 1 } else { -1 });
                for (r, &c) in perm.iter().enumerate() {
                    prod *= &m[r][c];
                }
                *total += prod;
                return;
            }
            for j in i..perm.len() {
                perm.swap(i, j);
                rec(i + 1, perm, m, total);
                perm.swap(i, j);
            }
        }
        rec(0, &mut perm, m, &mut total);
        total
    }

    #[test]
    fn canonicalize_examples() {
        let p = canonicalize(&[1, 3, 2], 6).unwrap();
        assert_eq!((p.elements.clone(), p.sign), (vec![1, 2, 3], -1));
        assert_eq!(canonicalize(&[2, 2, 5], 6).unwrap().sign, 0);
        assert_eq!(canonicalize(&[2, 2, 5], 6).unwrap().subset(), None);
        let id = canonicalize(&[1, 2, 3], 6).unwrap();
        assert_eq!((id.sign, id.subset()), (1, Some(Subset::of(&[1, 2, 3]))));
        assert!(canonicalize(&[1, 7, 2], 6).is_err());
        assert!(canonicalize(&[0, 1, 2], 6).is_err());
    }

    proptest! {
        #[test]
        fn canonicalize_transposition_flips_sign(
            tuple in proptest::collection::vec(1usize..=8, 3),
            i in 0usize..3, j in 0usize..3,
        ) {
            prop_assume!(i != j);
            let base = canonicalize(&tuple, 8).unwrap();
            let mut swapped = tuple.clone();
            swapped.swap(i, j);
            let flipped = canonicalize(&swapped, 8).unwrap();
            prop_assert_eq!(&flipped.elements, &base.elements);
            prop_assert_eq!(flipped.sign, -base.sign);
            let again = canonicalize(&base.elements, 8).unwrap();
            prop_assert_eq!(again.elements, base.elements);
            prop_assert_eq!(again.sign, base.sign.abs());
        }
    }

    #[test]
    fn three_term_counts() {
        let r24 = three_term_relations(Shape::new(2, 4).unwrap());
        assert_eq!(r24.len(), 1);
        assert_eq!(r24[0].to_string(), "p13 p24 = p12 p34 + p14 p23");
        assert_eq!(three_term_relations(Shape::new(2, 5).unwrap()).len(), 5);
        assert_eq!(three_term_relations(Shape::new(3, 6).unwrap()).len(), 30);
        for (k, n) in [(2, 6), (3, 7), (3, 8), (4, 8), (4, 9)] {
            let shape = Shape::new(k, n).unwrap();
            let rels = three_term_relations(shape);
            // direct count: choose the base, then four of the remaining elements
            assert_eq!(rels.len(), binomial(n, k - 2) * binomial(n - k + 2, 4));
            assert!(rels.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn minors_of_identity_prefix() {
        let m = vec![
            vec![rat(1), rat(0), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0), rat(0)],
        ];
        let p = minors(&m).unwrap();
        assert_eq!(p.len(), 6);
        for (s, v) in &p {
            let expected = if *s == Subset::of(&[1, 2]) { 1 } else { 0 };
            assert_eq!(*v, rat(expected), "{s}");
        }
        assert!(minors(&[vec![rat(1)], vec![rat(1), rat(2)]]).is_err());
    }

    #[test]
    fn minors_match_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_matrix(&mut rng, 3, 6);
        for (cols, value) in minors(&m).unwrap() {
            let block: Vec<Vec<Rat>> = m
                .iter()
                .map(|row| cols.elements().map(|c| row[c - 1].clone()).collect())
                .collect();
            assert_eq!(value, leibniz(&block));
        }
    }

    #[test]
    fn gp_sign_convention_on_2x4() {
        // p12 p34 - p13 p24 + p14 p23 = 0 for head (1), tail (2,3,4)
        let rel = GpRelation { head: vec![1], tail: vec![2, 3, 4] };
        let terms = rel.terms(4, GpSign::Alternating).unwrap();
        let described: Vec<(i8, String, String)> = terms
            .iter()
            .map(|t| (t.sign, t.left.to_string(), t.right.to_string()))
            .collect();
        assert_eq!(
            described,
            vec![
                (1, "12".into(), "34".into()),
                (-1, "13".into(), "24".into()),
                (1, "14".into(), "23".into()),
            ]
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&mut rng, 2, 4);
        let p = minors(&m).unwrap();
        let v = rel.evaluate(4, GpSign::Alternating, |s| Ok(p[&s].clone())).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn gp_repeated_head_is_trivial() {
        let rel = GpRelation { head: vec![2, 2], tail: vec![1, 3, 4, 5] };
        assert!(rel.is_trivial(6).unwrap());
        let real = GpRelation { head: vec![1, 2], tail: vec![3, 4, 5, 6] };
        assert!(!real.is_trivial(6).unwrap());
    }

    #[test]
    fn gp_instance_on_3x6() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_matrix(&mut rng, 3, 6);
        let p = minors(&m).unwrap();
        let rel = GpRelation { head: vec![2, 5], tail: vec![1, 3, 4, 6] };
        let v = rel.evaluate(6, GpSign::Alternating, |s| Ok(p[&s].clone())).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn validate_example_frieze_and_perturbation() {
        let shape = Shape::new(2, 4).unwrap();
        let mut values: BTreeMap<Subset, Rat> = shape.subsets().into_iter().map(|s| (s, rat(1))).collect();
        values.insert(Subset::of(&[2, 4]), rat(2));
        assert!(validate_assignment(&values, shape, true).unwrap().is_empty());
        values.insert(Subset::of(&[2, 4]), rat(3));
        let report = validate_assignment(&values, shape, false).unwrap();
        assert_eq!(report.len(), 1);
        values.remove(&Subset::of(&[1, 3]));
        assert_eq!(
            validate_assignment(&values, shape, false),
            Err(FriezeError::Missing(Subset::of(&[1, 3])))
        );
    }

    #[test]
    fn random_minors_satisfy_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for (k, n) in [(2, 5), (3, 6), (3, 7)] {
            let shape = Shape::new(k, n).unwrap();
            for _ in 0..5 {
                let p = minors(&random_matrix(&mut rng, k, n)).unwrap();
                assert!(validate_assignment(&p, shape, true).unwrap().is_empty());
            }
        }
    }
}
