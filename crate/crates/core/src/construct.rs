//! Constructions: the frieze of a cluster, geometric detection, the induced
//! SL_k-frieze, matrix realizations, and rebuilding a (3,n) frieze from one
//! cross-sectional triangle.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{FriezeError, Result};
use crate::frieze::{validate_frieze, CrossSection, FriezePattern, ValidationReport};
use crate::plucker::{canonicalize, minors};
use crate::rat::{determinant, solve_linear, Rat};
use crate::separation::{
    apply_move, available_moves, is_weakly_separated, random_walk_path, SquareMove, WsCollection,
    DEFAULT_CAP,
};
use crate::subset::{wrap, Shape, Subset};

fn exchange(values: &HashMap<Subset, Rat>, mv: &SquareMove) -> Result<Rat> {
    let [ab, cd, ad, bc] = mv.sides().map(|s| values.get(&s).cloned());
    let old = values.get(&mv.removed).cloned();
    match (ab, cd, ad, bc, old) {
        (Some(ab), Some(cd), Some(ad), Some(bc), Some(old)) => {
            if old.is_zero() {
                return Err(FriezeError::Construction {
                    subset: mv.removed,
                    reason: "exchange divides by zero".into(),
                });
            }
            Ok((ab * cd + ad * bc) / old)
        }
        _ => Err(FriezeError::Construction {
            subset: mv.inserted,
            reason: "move uses a subset without a value".into(),
        }),
    }
}

/// The frieze taking the value 1 on every member of the cluster `c`.
///
/// Values spread breadth-first over the square-move graph: each move assigns
/// its inserted subset `(p_ab p_cd + p_ad p_bc) / p_removed`. A subset reached
/// twice must get the same value both times. The result must be a positive
/// integer everywhere.
pub fn frieze_from_cluster(c: &WsCollection) -> Result<FriezePattern> {
    frieze_from_cluster_capped(c, DEFAULT_CAP)
}

pub fn frieze_from_cluster_capped(c: &WsCollection, cap: usize) -> Result<FriezePattern> {
    let shape = c.shape();
    if !c.is_maximal() {
        return Err(FriezeError::Domain(format!(
            "{} subsets do not form a maximal weakly separated collection",
            c.len()
        )));
    }
    let total = shape.subset_count();
    let mut values: HashMap<Subset, Rat> = c.members().iter().map(|&s| (s, Rat::one())).collect();
    let mut seen: HashSet<WsCollection> = HashSet::from([c.clone()]);
    let mut queue = VecDeque::from([c.clone()]);
    while values.len() < total {
        let Some(current) = queue.pop_front() else {
            break;
        };
        for mv in available_moves(&current) {
            let value = exchange(&values, &mv)?;
            match values.get(&mv.inserted) {
                Some(prev) if *prev != value => {
                    return Err(FriezeError::Construction {
                        subset: mv.inserted,
                        reason: format!("paths disagree: {prev} vs {value}"),
                    })
                }
                Some(_) => {}
                None => {
                    values.insert(mv.inserted, value);
                }
            }
            let next = apply_move(&current, &mv);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(FriezeError::SearchExhausted { visited: seen.len() });
                }
                queue.push_back(next);
            }
        }
    }
    if let Some(missing) = shape.subsets().into_iter().find(|s| !values.contains_key(s)) {
        return Err(FriezeError::Construction {
            subset: missing,
            reason: "not reachable by square moves".into(),
        });
    }
    for s in shape.subsets() {
        let v = &values[&s];
        if !v.is_positive() {
            return Err(FriezeError::Construction { subset: s, reason: format!("value {v} is not positive") });
        }
        if !v.is_integer() {
            return Err(FriezeError::Construction { subset: s, reason: format!("value {v} is not an integer") });
        }
    }
    FriezePattern::new(shape, values.into_iter().collect())
}

/// Replays `path` from `c` with every member of `c` set to 1 and returns the
/// value given to `target`.
pub fn evaluate_along_path(c: &WsCollection, path: &[SquareMove], target: Subset) -> Result<Rat> {
    let mut values: HashMap<Subset, Rat> = c.members().iter().map(|&s| (s, Rat::one())).collect();
    let mut current = c.clone();
    for mv in path {
        if !current.contains(mv.removed) {
            return Err(FriezeError::MoveUnavailable(mv.removed));
        }
        let value = exchange(&values, mv)?;
        values.remove(&mv.removed);
        values.insert(mv.inserted, value);
        current = apply_move(&current, mv);
    }
    values.remove(&target).ok_or(FriezeError::Construction {
        subset: target,
        reason: "path does not reach the target".into(),
    })
}

/// Evaluates `target` along a random walk of up to `walk` moves followed by a
/// randomly tie-broken shortest path.
pub fn evaluate_random_path<R: Rng>(
    c: &WsCollection,
    target: Subset,
    walk: usize,
    rng: &mut R,
) -> Result<(Rat, Vec<SquareMove>)> {
    let path = random_walk_path(c, target, walk, DEFAULT_CAP, rng)?;
    Ok((evaluate_along_path(c, &path, target)?, path))
}

/// Why a frieze is or is not geometric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometricWitness {
    /// The 1-valued subsets form this cluster.
    Cluster(WsCollection),
    /// Two 1-valued subsets that are not weakly separated.
    Crossing(Subset, Subset),
    /// The 1-valued subsets are compatible but too few.
    Shortfall { ones: usize, required: usize },
}

impl GeometricWitness {
    pub fn is_geometric(&self) -> bool {
        matches!(self, GeometricWitness::Cluster(_))
    }
}

/// Whether `{I : p_I = 1}` is a maximal weakly separated collection.
pub fn is_geometric(p: &FriezePattern) -> GeometricWitness {
    let shape = p.shape();
    let ones = p.ones();
    for (x, &a) in ones.iter().enumerate() {
        for &b in &ones[x + 1..] {
            if !is_weakly_separated(a, b, shape.n()) {
                return GeometricWitness::Crossing(a, b);
            }
        }
    }
    let count = ones.len();
    match WsCollection::cluster(shape, ones) {
        Ok(c) => GeometricWitness::Cluster(c),
        Err(_) => GeometricWitness::Shortfall { ones: count, required: shape.cluster_size() },
    }
}

/// The SL_k-frieze of a (k,n)-frieze over one period.
///
/// Column `c` (1-based) lists `p_{A_c ∪ {c+k-1+r}}` for `r = 0..=n-k`, where
/// `A_c = {c, .., c+k-2}` cyclically. Rows `0` and `n-k` are the borders of
/// 1s; the `n-k-1` rows in between are the interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlkFrieze {
    k: usize,
    n: usize,
    /// `rows[r][c - 1]`.
    rows: Vec<Vec<Rat>>,
}

/// A `k x k` window `M[s][t] = d(i+s, i+delta+t)` and its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub column: usize,
    pub offset: usize,
    pub matrix: Vec<Vec<Rat>>,
    pub determinant: Rat,
}

impl SlkFrieze {
    pub fn from_rows(k: usize, n: usize, rows: Vec<Vec<Rat>>) -> Result<Self> {
        Shape::new(k, n)?;
        if rows.len() != n - k + 1 || rows.iter().any(|r| r.len() != n) {
            return Err(FriezeError::Parse(format!(
                "an SL_{k} frieze for n = {n} needs {} rows of {n} entries",
                n - k + 1
            )));
        }
        for r in [0, n - k] {
            if let Some(c) = rows[r].iter().position(|v| !v.is_one()) {
                return Err(FriezeError::Domain(format!("border row {r} has {} in column {}", rows[r][c], c + 1)));
            }
        }
        Ok(SlkFrieze { k, n, rows })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.n - self.k - 1
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn interior(&self) -> &[Vec<Rat>] {
        &self.rows[1..self.n - self.k]
    }

    /// `p_{A_a ∪ {b}}`, or 0 when `b` lies in `A_a`. Labels are taken mod n.
    pub fn value(&self, a: i64, b: i64) -> Rat {
        let n = self.n as i64;
        let r = (b - a - self.k as i64 + 1).rem_euclid(n) as usize;
        if r <= self.n - self.k {
            self.rows[r][wrap(a, self.n) - 1].clone()
        } else {
            Rat::zero()
        }
    }

    /// Every window for `i` in `1..=n` and `delta` in `k-1..=n-1`.
    pub fn windows(&self) -> Vec<Window> {
        let k = self.k as i64;
        let mut out = Vec::new();
        for i in 1..=self.n as i64 {
            for delta in k - 1..self.n as i64 {
                let matrix: Vec<Vec<Rat>> = (0..k)
                    .map(|s| (0..k).map(|t| self.value(i + s, i + delta + t)).collect())
                    .collect();
                let det = determinant(&matrix);
                out.push(Window { column: i as usize, offset: delta as usize, matrix, determinant: det });
            }
        }
        out
    }

    pub fn window_violations(&self) -> Vec<Window> {
        self.windows().into_iter().filter(|w| !w.determinant.is_one()).collect()
    }
}

fn tail_subset(k: usize, n: usize, a: i64, b: i64) -> Option<Subset> {
    let mut s = Subset::EMPTY;
    for t in 0..k as i64 - 1 {
        s = s.with(wrap(a + t, n));
    }
    let b = wrap(b, n);
    (!s.contains(b)).then(|| s.with(b))
}

pub fn to_sl_frieze(p: &FriezePattern) -> SlkFrieze {
    let (k, n) = (p.k(), p.n());
    let rows = (0..=n - k)
        .map(|r| {
            (1..=n as i64)
                .map(|c| {
                    let s = tail_subset(k, n, c, c + (k - 1 + r) as i64).expect("outside A_c");
                    p.get(s).clone()
                })
                .collect()
        })
        .collect();
    SlkFrieze { k, n, rows }
}

/// Anchor of the staircase whose first `k` columns form the identity
/// pattern: rows use `A_a` for `a = n-k+2, .., n, 1`.
pub fn default_anchor(k: usize, n: usize) -> usize {
    wrap((n - k + 2) as i64, n)
}

/// The `k x n` matrix whose row `s` reads the frieze along `a = anchor + s`:
/// entry `(s, b)` is `± p_{A_a ∪ {b}}`. The sign is that of the cyclically
/// ordered tuple `(a, .., a+k-2, b)`, relative to the staircase entry
/// `b = a+k-1`; for the default anchor every sign is `+`.
pub fn matrix_from_sl_frieze(f: &SlkFrieze, anchor: usize) -> Result<Vec<Vec<Rat>>> {
    let (k, n) = (f.k(), f.n());
    if !(1..=n).contains(&anchor) {
        return Err(FriezeError::Domain(format!("anchor {anchor} outside 1..={n}")));
    }
    let tuple_sign = |a: i64, b: i64| -> Result<i8> {
        let mut tuple: Vec<usize> = (0..k as i64 - 1).map(|t| wrap(a + t, n)).collect();
        tuple.push(wrap(b, n));
        Ok(canonicalize(&tuple, n)?.sign)
    };
    let mut out = Vec::with_capacity(k);
    for s in 0..k as i64 {
        let a = anchor as i64 + s;
        let reference = tuple_sign(a, a + k as i64 - 1)?;
        let mut row = Vec::with_capacity(n);
        for b in 1..=n as i64 {
            let v = f.value(a, b);
            let sign = tuple_sign(a, b)? * reference;
            row.push(if sign < 0 { -v } else { v });
        }
        out.push(row);
    }
    Ok(out)
}

/// `p_I = ε · minor_I` with `ε` the sign of the minor on `{1..k}`; any other
/// vanishing interval minor is also degenerate. The validation report of the
/// result is returned alongside.
pub fn frieze_from_matrix(matrix: &[Vec<Rat>]) -> Result<(FriezePattern, ValidationReport)> {
    let k = matrix.len();
    let n = matrix.first().map_or(0, Vec::len);
    let shape = Shape::new(k, n)?;
    let values = minors(matrix)?;
    for iv in shape.intervals() {
        if values[&iv].is_zero() {
            return Err(FriezeError::Degenerate(iv));
        }
    }
    let negate = values[&shape.interval(1)].is_negative();
    let values: BTreeMap<Subset, Rat> = values
        .into_iter()
        .map(|(s, v)| (s, if negate { -v } else { v }))
        .collect();
    let pattern = FriezePattern::new(shape, values)?;
    let report = validate_frieze(&pattern);
    Ok((pattern, report))
}

/// Rebuilds the whole (3,n) frieze determined by one cross-sectional
/// triangle.
///
/// The column at `x` is `e_1`. The section's values are the 2x2 minors of
/// the remaining two rows, which are realized from one nonzero pair. The
/// first row is then fixed, up to the two-dimensional row-operation gauge, by
/// the intervals avoiding `x`.
pub fn extend_cross_section(section: &CrossSection) -> Result<FriezePattern> {
    let (n, x) = (section.n(), section.x());
    let shape = Shape::new(3, n)?;
    let others: Vec<usize> = (1..=n).filter(|&e| e != x).collect();
    let q = |i: usize, j: usize| -> Result<Rat> {
        if i == j {
            return Ok(Rat::zero());
        }
        let index = canonicalize(&[x, i, j], n)?;
        let v = section.value(i, j).cloned().ok_or_else(|| FriezeError::Missing(index.subset().unwrap()))?;
        Ok(if index.sign < 0 { -v } else { v })
    };
    let failure = |reason: &str| FriezeError::Construction {
        subset: Subset::EMPTY.with(x),
        reason: reason.to_string(),
    };

    let mut basis = None;
    'search: for &a in &others {
        for &b in &others {
            if !q(a, b)?.is_zero() {
                basis = Some((a, b));
                break 'search;
            }
        }
    }
    let (a, b) = basis.ok_or_else(|| failure("section vanishes identically"))?;
    let qab = q(a, b)?;
    let mut lower: HashMap<usize, [Rat; 2]> = HashMap::new();
    for &i in &others {
        lower.insert(i, [-q(b, i)? / &qab, q(a, i)?]);
    }
    lower.insert(x, [Rat::zero(), Rat::zero()]);
    let det2 = |u: &[Rat; 2], v: &[Rat; 2]| &u[0] * &v[1] - &u[1] * &v[0];
    for &i in &others {
        for &j in &others {
            if det2(&lower[&i], &lower[&j]) != q(i, j)? {
                return Err(failure("section is not a point of Gr(2, n-1)"));
            }
        }
    }

    // unknown first-row entries r_e for e != x, in the order of `others`
    let column = |e: usize| others.iter().position(|&o| o == e);
    let mut system = Vec::new();
    let mut rhs = Vec::new();
    for iv in shape.intervals() {
        if iv.contains(x) {
            continue;
        }
        let [i, j, l]: [usize; 3] = iv.to_vec().try_into().expect("3 elements");
        let mut row = vec![Rat::zero(); others.len()];
        // expansion of det [r; lower] along the first row
        row[column(i).unwrap()] += det2(&lower[&j], &lower[&l]);
        row[column(j).unwrap()] -= det2(&lower[&i], &lower[&l]);
        row[column(l).unwrap()] += det2(&lower[&i], &lower[&j]);
        system.push(row);
        rhs.push(Rat::one());
    }
    let (solution, _) = solve_linear(&system, &rhs).ok_or_else(|| failure("interval conditions are inconsistent"))?;

    let matrix: Vec<Vec<Rat>> = (0..3)
        .map(|row| {
            (1..=n)
                .map(|e| match (row, column(e)) {
                    (0, None) => Rat::one(),
                    (0, Some(c)) => solution[c].clone(),
                    (r, _) => lower[&e][r - 1].clone(),
                })
                .collect()
        })
        .collect();
    let values = minors(&matrix)?;
    let pattern = FriezePattern::new(shape, values)?;
    for iv in shape.intervals() {
        if !pattern.get(iv).is_one() {
            return Err(FriezeError::Construction { subset: iv, reason: "interval is not 1".into() });
        }
    }
    Ok(pattern)
}
