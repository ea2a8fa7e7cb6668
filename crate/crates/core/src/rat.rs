//! Exact rational arithmetic helpers.
//!
//! Every coordinate value is a [`Rat`], an arbitrary-precision rational that is
//! always kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::FriezeError;

/// Arbitrary-precision rational in lowest terms.
pub type Rat = BigRational;

pub fn rat(value: i64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"17"`, `"-3"` or `"5/12"`.
pub fn parse_rat(text: &str) -> Result<Rat, FriezeError> {
    let text = text.trim();
    let bad = || FriezeError::Parse(format!("not an exact rational: {text:?}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(num, den))
        }
        None => text
            .parse::<BigInt>()
            .map(Rat::from_integer)
            .map_err(|_| bad()),
    }
}

/// Integer text when the denominator is one, `num/den` otherwise.
pub fn format_rat(value: &Rat) -> String {
    value.to_string()
}

pub fn sign_of(value: &Rat) -> i8 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}

/// Determinant by fraction-exact Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn determinant(matrix: &[Vec<Rat>]) -> Rat {
    let size = matrix.len();
    let mut m: Vec<Vec<Rat>> = matrix.to_vec();
    let mut det = Rat::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..size {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// One particular solution of `A x = b` (free variables set to zero), or
/// `None` when the system is inconsistent. Also returns the rank of `A`.
#[allow(clippy::needless_range_loop)]
pub fn solve_linear(a: &[Vec<Rat>], b: &[Rat]) -> Option<(Vec<Rat>, usize)> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut row = row.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..=cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some((x, pivots.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rat(" -7 ").unwrap(), rat(-7));
        assert_eq!(format_rat(&ratio(3, 2)), "3/2");
        assert_eq!(format_rat(&ratio(8, 4)), "2");
        assert_eq!(format_rat(&ratio(1, -3)), "-1/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn normalized_equality() {
        let a = ratio(10, -4);
        assert_eq!(a, ratio(-5, 2));
        assert!(a.denom().is_positive());
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(7), rat(4)]];
        assert_eq!(determinant(&m), rat(1));
        let singular = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(determinant(&singular), rat(0));
        let swap = vec![
            vec![rat(0), rat(1), rat(0)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(0), ratio(1, 3)],
        ];
        assert_eq!(determinant(&swap), ratio(-1, 3));
    }

    #[test]
    fn solve_underdetermined() {
        let a = vec![vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(1), rat(1)]];
        let b = vec![rat(3), rat(5)];
        let (x, rank) = solve_linear(&a, &b).unwrap();
        assert_eq!(rank, 2);
        assert_eq!(&x[0] + &x[1], rat(3));
        assert_eq!(&x[1] + &x[2], rat(5));
        let inconsistent = vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]];
        assert!(solve_linear(&inconsistent, &[rat(1), rat(3)]).is_none());
    }
}
