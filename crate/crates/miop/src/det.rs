//! Cofactor-expansion determinants with minor memoization.

use std::ops::{Add, Mul, Sub};

use crate::error::{MiopError, Result};

/// Determinant of a square matrix over any commutative ring whose operations
/// are available on references. Returns `None` for the empty matrix, whose
/// determinant is the ring's one.
pub fn det<T>(m: &[Vec<T>]) -> Option<T>
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let n = m.len();
    if n == 0 {
        return None;
    }
    assert!(n <= 20, "matrix too large for subset memoization");
    assert!(m.iter().all(|r| r.len() == n), "matrix is not square");
    // memo[mask] = det of the rows n-|mask|.. restricted to the columns in mask
    let mut memo: Vec<Option<T>> = vec![None; 1 << n];
    for c in 0..n {
        memo[1 << c] = Some(m[n - 1][c].clone());
    }
    for size in 2..=n {
        let row = n - size;
        for mask in 1usize..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let mut acc: Option<T> = None;
            let mut sign_pos = true;
            for c in 0..n {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let minor = memo[mask & !(1 << c)].as_ref().unwrap();
                let term = &m[row][c] * minor;
                acc = Some(match acc {
                    None if sign_pos => term,
                    None => {
                        let z = &term - &term;
                        &z - &term
                    }
                    Some(a) if sign_pos => &a + &term,
                    Some(a) => &a - &term,
                });
                sign_pos = !sign_pos;
            }
            memo[mask] = acc;
        }
    }
    memo[(1 << n) - 1].take()
}

/// `det` for untrusted shapes: a non-square or oversized matrix is an error.
pub fn try_det<T>(m: &[Vec<T>]) -> Result<Option<T>>
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(MiopError::Unsupported(format!("determinant of a non-square {n}-row matrix")));
    }
    if n > 20 {
        return Err(MiopError::Unsupported(format!("determinant of size {n}")));
    }
    Ok(det(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Laurent;
    use crate::scalar::{rint, Rational};

    fn c(x: i64) -> Laurent<Rational> {
        Laurent::constant(rint(x))
    }

    #[test]
    fn small_determinants() {
        let m = vec![vec![c(2), c(3)], vec![c(5), c(7)]];
        assert_eq!(det(&m).unwrap(), c(-1));
        let m3 = vec![
            vec![c(1), c(2), c(3)],
            vec![c(0), c(1), c(4)],
            vec![c(5), c(6), c(0)],
        ];
        assert_eq!(det(&m3).unwrap(), c(1));
        assert!(det::<Laurent<Rational>>(&[]).is_none());
        assert!(try_det(&[vec![c(1), c(2)]]).is_err());
        assert_eq!(try_det(&m).unwrap(), Some(c(-1)));
    }
}
