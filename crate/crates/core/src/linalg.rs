//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::rational::Rational;

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// Consistent, with `free` degrees of freedom.
    Underdetermined { rank: usize, free: usize },
    Inconsistent,
}

impl Solution {
    pub fn unique(self) -> Option<Vec<Rational>> {
        match self {
            Solution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

/// Solves `a x = b` where `a` has one row per equation. Rows may
/// outnumber unknowns.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Solution {
    assert_eq!(a.len(), b.len(), "one right-hand side per equation");
    let unknowns = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), unknowns, "ragged system");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let pivots = reduce(&mut m, unknowns);
    let rank = pivots.len();
    if m[rank..].iter().any(|row| !row[unknowns].is_zero()) {
        return Solution::Inconsistent;
    }
    if rank < unknowns {
        return Solution::Underdetermined {
            rank,
            free: unknowns - rank,
        };
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = m[row][unknowns].clone();
    }
    Solution::Unique(x)
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    reduce(&mut m, cols).len()
}

/// Brings the first `cols` columns of `m` to reduced row echelon form in
/// place; returns the pivot column of each leading row.
fn reduce(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(found) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, found);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (v, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}
