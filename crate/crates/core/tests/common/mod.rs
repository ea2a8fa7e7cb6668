#![allow(dead_code)]

use std::collections::BTreeMap;

use kn_frieze::rat::ratio;
use kn_frieze::{Rat, Shape, Subset};
use num_traits::Zero;
use rand::Rng;

/// Fills unknown values from three-term relations
/// `p_Iac p_Ibd = p_Iab p_Icd + p_Iad p_Ibc` until no relation has exactly one
/// unknown. Relations are generated here from scratch rather than taken from
/// the library.
pub fn propagate(shape: Shape, mut known: BTreeMap<Subset, Rat>) -> BTreeMap<Subset, Rat> {
    let n = shape.n();
    let mut relations = Vec::new();
    for base in shape_subsets(n, shape.k() - 2) {
        let free: Vec<usize> = (1..=n).filter(|&e| !base.contains(e)).collect();
        for a in 0..free.len() {
            for b in a + 1..free.len() {
                for c in b + 1..free.len() {
                    for d in c + 1..free.len() {
                        let s = |x: usize, y: usize| base.with(free[x]).with(free[y]);
                        relations.push([s(a, c), s(b, d), s(a, b), s(c, d), s(a, d), s(b, c)]);
                    }
                }
            }
        }
    }
    loop {
        let mut progress = false;
        for r in &relations {
            let unknown: Vec<usize> = (0..6).filter(|&i| !known.contains_key(&r[i])).collect();
            if unknown.len() != 1 {
                continue;
            }
            let u = unknown[0];
            let v = |i: usize| known[&r[i]].clone();
            // lhs = x0 x1, rhs = x2 x3 + x4 x5
            let value = match u {
                0 | 1 => {
                    let other = v(1 - u);
                    if other.is_zero() {
                        continue;
                    }
                    (v(2) * v(3) + v(4) * v(5)) / other
                }
                _ => {
                    let partner = u ^ 1;
                    let rest = if u < 4 { v(4) * v(5) } else { v(2) * v(3) };
                    let other = v(partner);
                    if other.is_zero() {
                        continue;
                    }
                    (v(0) * v(1) - rest) / other
                }
            };
            known.insert(r[u], value);
            progress = true;
        }
        if !progress {
            return known;
        }
    }
}

fn shape_subsets(n: usize, k: usize) -> Vec<Subset> {
    (0u64..1 << n)
        .filter(|bits| bits.count_ones() as usize == k)
        .map(|bits| Subset::of(&(1..=n).filter(|e| bits >> (e - 1) & 1 == 1).collect::<Vec<_>>()))
        .collect()
}

/// Entries are small fractions `p/q` with `|p| <= 9`, `1 <= q <= 4`.
pub fn random_matrix<R: Rng>(rng: &mut R, k: usize, n: usize) -> Vec<Vec<Rat>> {
    (0..k)
        .map(|_| (0..n).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect())
        .collect()
}
