//! Small exact linear algebra over [`Rational`].

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Row-reduced echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant by Gaussian elimination on a copy.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let v = &f * &a[c][j];
                a[i][j] -= v;
            }
        }
    }
    d
}

/// 4x4 determinant over any commutative ring, by cofactor expansion.
pub fn det4<T>(m: &[[T; 4]; 4]) -> T
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<Output = T>,
{
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
    };
    // Laplace expansion along the first two rows; `true` marks a negative sign.
    let rest = [(0, 2, 1, 3, true), (0, 3, 1, 2, false), (1, 2, 0, 3, false), (1, 3, 0, 2, true), (2, 3, 0, 1, false)];
    let mut acc = minor(0, 1, 0, 1) * minor(2, 3, 2, 3);
    for &(a, b, c, d, neg) in &rest {
        let term = minor(0, 1, a, b) * minor(2, 3, c, d);
        acc = if neg { acc - term } else { acc + term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rint;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rint(v)).collect()).collect()
    }

    #[test]
    fn nullspace_of_rank_two_matrix() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn determinants_agree() {
        let m = q(&[&[2, 0, 1, 3], &[1, -1, 0, 2], &[0, 4, 1, 1], &[3, 1, -2, 0]]);
        let arr: [[Rational; 4]; 4] =
            std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].clone()));
        assert_eq!(det(&m), det4(&arr));
        let f: [[f64; 4]; 4] = std::array::from_fn(|i| {
            std::array::from_fn(|j| crate::scalar::rational_to_f64(&m[i][j]))
        });
        assert!((det4(&f) - crate::scalar::rational_to_f64(&det(&m))).abs() < 1e-9);
    }
}
