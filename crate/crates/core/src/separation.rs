//! Weak separation, maximal weakly separated collections (clusters of Plücker
//! coordinates) and the square moves connecting them.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{FriezeError, Result};
use crate::plucker::ThreeTermRelation;
use crate::subset::{Shape, Subset};

/// Default cap on enumerated clusters and on collections visited by searches.
pub const DEFAULT_CAP: usize = 1_000_000;

/// True unless `I \ J` and `J \ I` alternate around the circle, i.e. unless
/// there are cyclically ordered `s < t < u < v` with `s, u` in `I \ J` and
/// `t, v` in `J \ I`.
pub fn is_weakly_separated(i: Subset, j: Subset, n: usize) -> bool {
    let only_i = i.difference(j);
    let only_j = j.difference(i);
    // labels of the symmetric difference in cyclic order; count label changes
    let mut first = None;
    let mut last = None;
    let mut changes = 0;
    for e in 1..=n {
        let label = if only_i.contains(e) {
            true
        } else if only_j.contains(e) {
            false
        } else {
            continue;
        };
        if first.is_none() {
            first = Some(label);
        }
        if let Some(prev) = last {
            if prev != label {
                changes += 1;
            }
        }
        last = Some(label);
    }
    if first.is_some() && first != last {
        changes += 1;
    }
    changes < 4
}

/// The n cyclic intervals `{i, .., i+k-1}`.
pub fn interval_subsets(shape: Shape) -> Vec<Subset> {
    shape.intervals()
}

/// A set of pairwise weakly separated k-subsets, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WsCollection {
    shape: Shape,
    members: Vec<Subset>,
}

impl WsCollection {
    /// Validates membership and pairwise weak separation.
    pub fn new(shape: Shape, members: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let mut members: Vec<Subset> = members.into_iter().collect();
        members.sort();
        members.dedup();
        for &m in &members {
            shape.check(m)?;
        }
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                if !is_weakly_separated(a, b, shape.n()) {
                    return Err(FriezeError::Domain(format!("{a} and {b} cross")));
                }
            }
        }
        Ok(WsCollection { shape, members })
    }

    /// Like [`WsCollection::new`] but additionally requires maximality.
    pub fn cluster(shape: Shape, members: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let c = Self::new(shape, members)?;
        if !c.is_maximal() {
            return Err(FriezeError::Domain(format!(
                "collection of {} subsets is not a maximal weakly separated collection (needs {})",
                c.len(),
                shape.cluster_size()
            )));
        }
        Ok(c)
    }

    fn from_sorted(shape: Shape, members: Vec<Subset>) -> Self {
        WsCollection { shape, members }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// No further k-subset is weakly separated from every member.
    pub fn is_maximal(&self) -> bool {
        let n = self.shape.n();
        self.shape.subsets().into_iter().all(|s| {
            self.contains(s) || self.members.iter().any(|&m| !is_weakly_separated(s, m, n))
        })
    }
}

impl fmt::Debug for WsCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

// Fixed-width bit set over candidate indices.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn above(&self, i: usize) -> Bits {
        let mut out = self.clone();
        for (w, word) in out.0.iter_mut().enumerate() {
            let lo = w * 64;
            if lo + 64 <= i + 1 {
                *word = 0;
            } else if lo <= i {
                let keep = i + 1 - lo;
                *word &= !((1u64 << keep) - 1);
            }
        }
        out
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    w * 64 + tz
                })
            })
        })
    }
}

struct Search<'a> {
    target: usize,
    adjacency: &'a [Bits],
    cap: usize,
    found: &'a AtomicUsize,
    stop: &'a AtomicBool,
}

impl Search<'_> {
    fn extend(&self, chosen: &mut Vec<usize>, candidates: &Bits, out: &mut Vec<Vec<usize>>) {
        if self.stop.load(Ordering::Relaxed) {
            return;
        }
        if chosen.len() == self.target {
            if self.found.fetch_add(1, Ordering::Relaxed) >= self.cap {
                self.stop.store(true, Ordering::Relaxed);
                return;
            }
            out.push(chosen.clone());
            return;
        }
        if chosen.len() + candidates.count() < self.target {
            return;
        }
        for i in candidates.ones() {
            chosen.push(i);
            let next = candidates.and(&self.adjacency[i]).above(i);
            self.extend(chosen, &next, out);
            chosen.pop();
            if self.stop.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

/// Every maximal weakly separated collection of k-subsets, in lex order.
///
/// Intervals are weakly separated from everything, so each collection is the
/// n intervals plus a clique of `(k-1)(n-k-1)` pairwise compatible
/// non-interval subsets. Cliques are found by lex-ordered backtracking; the
/// first level fans out over worker threads. Maximality of every result is
/// re-checked before returning.
pub fn enumerate_clusters(shape: Shape, cap: usize) -> Result<Vec<WsCollection>> {
    let n = shape.n();
    let intervals = shape.intervals();
    let candidates: Vec<Subset> = shape
        .subsets()
        .into_iter()
        .filter(|s| !intervals.contains(s))
        .collect();
    let m = candidates.len();
    let adjacency: Vec<Bits> = candidates
        .iter()
        .map(|&a| {
            let mut row = Bits::empty(m);
            for (j, &b) in candidates.iter().enumerate() {
                if a != b && is_weakly_separated(a, b, n) {
                    row.set(j);
                }
            }
            row
        })
        .collect();
    let target = shape.cluster_size() - n;
    let found = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let search = Search {
        target,
        adjacency: &adjacency,
        cap,
        found: &found,
        stop: &stop,
    };

    let cliques: Vec<Vec<usize>> = if target == 0 {
        vec![Vec::new()]
    } else {
        (0..m)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut out = Vec::new();
                let mut chosen = vec![first];
                search.extend(&mut chosen, &adjacency[first].above(first), &mut out);
                out
            })
            .collect()
    };
    if stop.load(Ordering::Relaxed) {
        return Err(FriezeError::CapExceeded { cap });
    }

    let mut clusters: Vec<WsCollection> = cliques
        .into_iter()
        .map(|clique| {
            let mut members: Vec<Subset> = intervals
                .iter()
                .copied()
                .chain(clique.into_iter().map(|i| candidates[i]))
                .collect();
            members.sort();
            WsCollection::from_sorted(shape, members)
        })
        .collect();
    clusters.sort();
    if let Some(bad) = clusters.iter().find(|c| !c.is_maximal()) {
        return Err(FriezeError::Domain(format!(
            "enumeration produced a non-maximal collection {bad:?}"
        )));
    }
    Ok(clusters)
}

/// Exchange of `base ∪ {a,c}` and `base ∪ {b,d}` inside a cluster that
/// contains the four sides `ab, bc, cd, ad` over `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SquareMove {
    pub relation: ThreeTermRelation,
    pub removed: Subset,
    pub inserted: Subset,
}

impl SquareMove {
    pub fn inverse(&self) -> SquareMove {
        SquareMove {
            relation: self.relation,
            removed: self.inserted,
            inserted: self.removed,
        }
    }

    /// The four subsets whose values drive the exchange.
    pub fn sides(&self) -> [Subset; 4] {
        let ((ab, cd), (ad, bc)) = self.relation.sides();
        [ab, cd, ad, bc]
    }
}

/// The square move at `target`, if one exists. Configurations are tried in
/// lex order of the removed pair and then the added pair.
pub fn find_square_move(c: &WsCollection, target: Subset) -> Option<SquareMove> {
    if !c.contains(target) {
        return None;
    }
    let n = c.shape().n();
    let inside = target.to_vec();
    let outside: Vec<usize> = (1..=n).filter(|&e| !target.contains(e)).collect();
    for (p, &x) in inside.iter().enumerate() {
        for &y in &inside[p + 1..] {
            let base = target.without(x).without(y);
            for (q, &u) in outside.iter().enumerate() {
                for &v in &outside[q + 1..] {
                    // {x,y} and {u,v} must interleave around the circle
                    let u_between = x < u && u < y;
                    let v_between = x < v && v < y;
                    if u_between == v_between {
                        continue;
                    }
                    let mut quad = [x, y, u, v];
                    quad.sort_unstable();
                    let relation = ThreeTermRelation {
                        base,
                        a: quad[0],
                        b: quad[1],
                        c: quad[2],
                        d: quad[3],
                    };
                    let ((ab, cd), (ad, bc)) = relation.sides();
                    if [ab, cd, ad, bc].iter().all(|&s| c.contains(s)) {
                        let (ac, bd) = relation.crossing();
                        let inserted = if ac == target { bd } else { ac };
                        return Some(SquareMove {
                            relation,
                            removed: target,
                            inserted,
                        });
                    }
                }
            }
        }
    }
    None
}

/// All square moves available in `c`, ordered by the removed subset.
pub fn available_moves(c: &WsCollection) -> Vec<SquareMove> {
    c.members()
        .iter()
        .filter_map(|&t| find_square_move(c, t))
        .collect()
}

/// Applies a move whose removed subset is a member of `c`.
pub fn apply_move(c: &WsCollection, mv: &SquareMove) -> WsCollection {
    let mut members: Vec<Subset> = c
        .members()
        .iter()
        .copied()
        .filter(|&s| s != mv.removed)
        .collect();
    let pos = members.binary_search(&mv.inserted).unwrap_or_else(|p| p);
    members.insert(pos, mv.inserted);
    WsCollection::from_sorted(c.shape(), members)
}

/// Swaps `target` for its exchange partner, returning the new collection and
/// the three-term relation governing the value exchange.
pub fn apply_square_move(
    c: &WsCollection,
    target: Subset,
) -> Result<(WsCollection, ThreeTermRelation)> {
    let mv = find_square_move(c, target).ok_or(FriezeError::MoveUnavailable(target))?;
    Ok((apply_move(c, &mv), mv.relation))
}

/// Shortest sequence of square moves from `c` to a collection containing
/// `target` (empty if `target` is already present). Breadth-first, neighbors
/// expanded in lex order of the removed subset.
pub fn mutation_distance_path(
    c: &WsCollection,
    target: Subset,
    cap: usize,
) -> Result<Vec<SquareMove>> {
    c.shape().check(target)?;
    search_path(c, target, cap, |moves| moves)
}

/// Like [`mutation_distance_path`], but neighbor order is shuffled so that
/// ties between shortest paths are broken at random.
pub fn randomized_distance_path<R: Rng>(
    c: &WsCollection,
    target: Subset,
    cap: usize,
    rng: &mut R,
) -> Result<Vec<SquareMove>> {
    c.shape().check(target)?;
    search_path(c, target, cap, |mut moves| {
        moves.shuffle(rng);
        moves
    })
}

/// A random walk of `steps` moves followed by a randomized shortest path to
/// `target`. Returns the whole move sequence.
pub fn random_walk_path<R: Rng>(
    c: &WsCollection,
    target: Subset,
    steps: usize,
    cap: usize,
    rng: &mut R,
) -> Result<Vec<SquareMove>> {
    let mut path = Vec::new();
    let mut current = c.clone();
    for _ in 0..steps {
        let moves = available_moves(&current);
        let Some(mv) = moves.choose(rng) else { break };
        current = apply_move(&current, mv);
        path.push(*mv);
    }
    path.extend(randomized_distance_path(&current, target, cap, rng)?);
    Ok(path)
}

fn search_path<F>(
    c: &WsCollection,
    target: Subset,
    cap: usize,
    mut order: F,
) -> Result<Vec<SquareMove>>
where
    F: FnMut(Vec<SquareMove>) -> Vec<SquareMove>,
{
    if c.contains(target) {
        return Ok(Vec::new());
    }
    let mut parent: HashMap<WsCollection, Option<(WsCollection, SquareMove)>> = HashMap::new();
    parent.insert(c.clone(), None);
    let mut queue = VecDeque::from([c.clone()]);
    while let Some(current) = queue.pop_front() {
        for mv in order(available_moves(&current)) {
            let next = apply_move(&current, &mv);
            if parent.contains_key(&next) {
                continue;
            }
            let done = next.contains(target);
            parent.insert(next.clone(), Some((current.clone(), mv)));
            if done {
                let mut path = Vec::new();
                let mut node = next;
                while let Some(Some((prev, step))) = parent.get(&node) {
                    path.push(*step);
                    node = prev.clone();
                }
                path.reverse();
                return Ok(path);
            }
            if parent.len() >= cap {
                return Err(FriezeError::SearchExhausted { visited: parent.len() });
            }
            queue.push_back(next);
        }
    }
    Err(FriezeError::SearchExhausted { visited: parent.len() })
}

/// Summary of the square-move graph on a list of clusters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveGraphSummary {
    pub nodes: usize,
    pub edges: usize,
    pub components: usize,
    /// Moves leading outside the given list (0 for a complete enumeration).
    pub escapes: usize,
}

impl MoveGraphSummary {
    pub fn is_connected(&self) -> bool {
        self.components == 1 && self.escapes == 0
    }
}

pub fn move_graph_summary(clusters: &[WsCollection]) -> MoveGraphSummary {
    let index: HashMap<&WsCollection, usize> =
        clusters.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); clusters.len()];
    let mut edges = HashSet::new();
    let mut escapes = 0;
    for (i, c) in clusters.iter().enumerate() {
        for mv in available_moves(c) {
            match index.get(&apply_move(c, &mv)) {
                Some(&j) => {
                    adjacency[i].push(j);
                    edges.insert((i.min(j), i.max(j)));
                }
                None => escapes += 1,
            }
        }
    }
    let mut seen = vec![false; clusters.len()];
    let mut components = 0;
    for start in 0..clusters.len() {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    MoveGraphSummary {
        nodes: clusters.len(),
        edges: edges.len(),
        components,
        escapes,
    }
}
