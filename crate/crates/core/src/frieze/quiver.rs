use std::collections::BTreeSet;

use crate::error::{FriezeError, Result};
use crate::subset::{Shape, Subset};

/// Arrow `tail -> tail + v_index`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    /// 1-based index of the vector `v_i`.
    pub index: usize,
}

/// The quiver on tuples `(l_1, .., l_{m+1})` with `l_1 >= 1`, `l_i >= 0` and
/// sum at most `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuslanderQuiver {
    pub d: usize,
    pub m: usize,
    /// Lex ordered.
    pub vertices: Vec<Vec<usize>>,
    /// Ordered by tail, then vector index.
    pub arrows: Vec<Arrow>,
}

impl AuslanderQuiver {
    pub fn is_vertex(&self, l: &[usize]) -> bool {
        is_vertex(self.d, self.m, l)
    }
}

fn is_vertex(d: usize, m: usize, l: &[usize]) -> bool {
    l.len() == m + 1 && l[0] >= 1 && l.iter().sum::<usize>() <= d
}

/// `v_1 = -e_1` and `v_i = e_{i-1} - e_i` in dimension `m + 1`.
pub fn quiver_vector(i: usize, m: usize) -> Vec<i64> {
    assert!((1..=m + 1).contains(&i), "vector index {i} outside 1..={}", m + 1);
    let mut v = vec![0; m + 1];
    v[i - 1] = -1;
    if i > 1 {
        v[i - 2] = 1;
    }
    v
}

fn shift(l: &[usize], v: &[i64]) -> Option<Vec<usize>> {
    l.iter()
        .zip(v)
        .map(|(&a, &b)| usize::try_from(a as i64 + b).ok())
        .collect()
}

pub fn build_quiver(d: usize, m: usize) -> Result<AuslanderQuiver> {
    if d == 0 || m == 0 {
        return Err(FriezeError::Parameters(format!("need d, m >= 1, got d = {d}, m = {m}")));
    }
    let mut vertices = Vec::new();
    let mut current = vec![0; m + 1];
    fill(d, m, 0, &mut current, &mut vertices);
    vertices.sort();
    let set: BTreeSet<&Vec<usize>> = vertices.iter().collect();
    let mut arrows = Vec::new();
    for l in &vertices {
        for i in 1..=m + 1 {
            if let Some(head) = shift(l, &quiver_vector(i, m)) {
                if set.contains(&head) {
                    arrows.push(Arrow { tail: l.clone(), head, index: i });
                }
            }
        }
    }
    Ok(AuslanderQuiver { d, m, vertices, arrows })
}

fn fill(budget: usize, m: usize, pos: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if pos == m + 1 {
        out.push(current.clone());
        return;
    }
    let low = usize::from(pos == 0);
    for value in low..=budget {
        current[pos] = value;
        fill(budget - value, m, pos + 1, current, out);
    }
}

/// `(l_1, .., l_k) -> {l_k + 1, l_k + l_{k-1} + 2, .., l_k + .. + l_2 + k - 1,
/// l_k + .. + l_1 + k - 1}` on vertices of the quiver with `d = n - k + 1`,
/// `m = k - 1`.
pub fn phi(l: &[usize], shape: Shape) -> Result<Subset> {
    let (k, n) = (shape.k(), shape.n());
    if !is_vertex(n - k + 1, k - 1, l) {
        return Err(FriezeError::Domain(format!("{l:?} is not a vertex for {shape}")));
    }
    let mut out = Subset::EMPTY;
    let mut partial = 0;
    for t in 1..=k {
        partial += l[k - t];
        out = out.with(partial + t.min(k - 1));
    }
    Ok(out)
}

/// Inverse of [`phi`]: for `I = {x_1 < .. < x_k}`, `l_k = x_1 - 1`,
/// `l_1 = x_k - x_{k-1}` and `l_{k-i} = x_{i+1} - x_i - 1` for `1 <= i <= k-2`.
pub fn phi_inverse(s: Subset, shape: Shape) -> Result<Vec<usize>> {
    shape.check(s)?;
    let k = shape.k();
    let x = s.to_vec();
    let mut l = vec![0; k];
    l[k - 1] = x[0] - 1;
    l[0] = x[k - 1] - x[k - 2];
    for i in 1..=k - 2 {
        l[k - i - 1] = x[i] - x[i - 1] - 1;
    }
    Ok(l)
}
