//! Exact Gaussian elimination over the rational-function field.

use crate::scalars::RatFunc;

pub type Matrix = Vec<Vec<RatFunc>>;

/// Reduced row echelon form in place; returns the pivot column of each
/// pivot row, in order.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    m[i][j] = &m[i][j] - &(&f * &m[r][j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// Basis of the right nullspace of `m` (with `cols` columns).
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<RatFunc>> {
    let mut m = m.clone();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![RatFunc::zero(); cols];
        v[free] = RatFunc::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[row][free];
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    RatFunc::one()
                } else {
                    RatFunc::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // invertible iff every pivot of the left block exists, i.e. the first
    // n pivot columns are exactly 0..n
    if pivots.iter().filter(|&&c| c < n).count() < n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Unique solution of `a x = b`; `None` if inconsistent or underdetermined.
pub fn solve_unique(a: &Matrix, b: &[RatFunc]) -> Option<Vec<RatFunc>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None; // inconsistent
    }
    if pivots.len() < cols {
        return None; // underdetermined
    }
    let mut x = vec![RatFunc::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// A particular solution of `a x = b` (free variables set to zero);
/// `None` only if the system is inconsistent.
pub fn solve_any(a: &Matrix, b: &[RatFunc]) -> Option<Vec<RatFunc>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![RatFunc::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// Matrix-vector product.
pub fn mat_vec(m: &Matrix, v: &[RatFunc]) -> Vec<RatFunc> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(RatFunc::zero(), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RatFunc::one()
                    } else {
                        RatFunc::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn invert_small() {
        let m = vec![vec![rf(1), rf(2)], vec![rf(3), rf(4)]];
        let inv = invert(&m).unwrap();
        let prod: Matrix = (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| {
                        (0..2).fold(RatFunc::zero(), |acc, k| &acc + &(&m[i][k] * &inv[k][j]))
                    })
                    .collect()
            })
            .collect();
        assert_eq!(prod, identity(2));
    }

    #[test]
    fn singular_detected() {
        let m = vec![vec![rf(1), rf(2)], vec![rf(2), rf(4)]];
        assert!(invert(&m).is_none());
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn nullspace_line() {
        let m = vec![vec![rf(1), rf(2)]];
        let ns = nullspace(&m, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(mat_vec(&m, &ns[0]), vec![RatFunc::zero()]);
    }

    #[test]
    fn solve_unique_works() {
        let a = vec![vec![rf(2), rf(0)], vec![rf(0), rf(3)]];
        let x = solve_unique(&a, &[rf(4), rf(9)]).unwrap();
        assert_eq!(x, vec![rf(2), rf(3)]);
        // inconsistent
        let b = vec![vec![rf(1), rf(1)], vec![rf(1), rf(1)]];
        assert!(solve_unique(&b, &[rf(1), rf(2)]).is_none());
    }
}
