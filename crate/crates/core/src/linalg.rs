//! Exact linear solves used for basis changes.

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Solves the square system `matrix * x = rhs` by Gaussian elimination with
/// back-substitution. Exact for exact fields.
pub fn solve<T: Field>(matrix: &[Vec<T>], rhs: &[T]) -> Result<Vec<T>> {
    let n = rhs.len();
    if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
        return Err(Error::Precondition("system is not square".into()));
    }
    let mut a: Vec<Vec<T>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Precondition("singular system".into()))?;
        a.swap(col, pivot);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / a[col][col].clone();
            let (top, bottom) = a.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst = dst.clone() - factor.clone() * src.clone();
            }
        }
    }

    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = a[row][n].clone();
        for c in row + 1..n {
            acc = acc - a[row][c].clone() * x[c].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    Ok(x)
}

/// Forward substitution for a lower-triangular system with nonzero diagonal.
pub fn solve_lower_triangular<T: Field>(matrix: &[Vec<T>], rhs: &[T]) -> Result<Vec<T>> {
    let n = rhs.len();
    let mut x: Vec<T> = Vec::with_capacity(n);
    for row in 0..n {
        let diag = matrix[row][row].clone();
        if diag.is_zero() {
            return Err(Error::Precondition("zero on the diagonal".into()));
        }
        let mut acc = rhs[row].clone();
        for (c, xc) in x.iter().enumerate() {
            acc = acc - matrix[row][c].clone() * xc.clone();
        }
        x.push(acc / diag);
    }
    Ok(x)
}

/// Value at `at` of the unique polynomial of degree `< xs.len()` through the
/// points `(xs[i], ys[i])`.
pub fn lagrange_eval<T: Field>(xs: &[T], ys: &[T], at: &T) -> T {
    let mut total = T::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut term = yi.clone();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                term = term * (at.clone() - xj.clone()) / (xi.clone() - xj.clone());
            }
        }
        total = total + term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn solves_small_system_exactly() {
        let m = vec![vec![r(1), r(1)], vec![r(2), r(1)]];
        let x = solve(&m, &[r(3), r(4)]).unwrap();
        assert_eq!(x, vec![r(1), r(2)]);
    }

    #[test]
    fn singular_is_an_error() {
        let m = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert!(solve(&m, &[r(1), r(2)]).is_err());
    }

    #[test]
    fn lagrange_recovers_square() {
        let xs: Vec<_> = (0..3).map(r).collect();
        let ys: Vec<_> = (0..3).map(|s| r((s + 1) * (s + 1))).collect();
        assert_eq!(lagrange_eval(&xs, &ys, &r(-3)), r(4));
        let fx = [0.0f64, 1.0, 2.0];
        let fy = [1.0f64, 4.0, 9.0];
        assert!((lagrange_eval(&fx, &fy, &3.0) - 16.0).abs() < 1e-12);
    }
}
