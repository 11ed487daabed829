//! Exact Gaussian elimination over rationals.

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularSystem;

/// Solves `a · x = b` for square `a`.
///
/// Pivots are chosen per column as the nonzero entry with the smallest
/// `|numerator · denominator|`, which keeps intermediate fractions short.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>, SingularSystem> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n), "system must be square");
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].magnitude())
            .ok_or(SingularSystem)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::one() / &a[col][col];
        for k in col..n {
            a[col][k] = &a[col][k] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for k in col..n {
                if !a[col][k].is_zero() {
                    a[r][k] = &a[r][k] - &(&factor * &a[col][k]);
                }
            }
            b[r] = &b[r] - &(&factor * &b[col]);
        }
    }
    Ok(b)
}
