//! Gaussian elimination over [`Scalar`]s.
//!
//! Matrices are row-major `Vec<Vec<Scalar>>`. All entries of one matrix are
//! expected to share a field; mixing radicands panics.

use crate::scalar::Scalar;

pub fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    debug_assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(x, y)| x * y).sum()
}

pub fn sub(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(x, y)| x - y).collect()
}

pub fn scale(u: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    u.iter().map(|x| x * c).collect()
}

/// Reduced row echelon form, returning the reduced matrix and its pivot columns.
pub fn rref(matrix: &[Vec<Scalar>], cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut a: Vec<Vec<Scalar>> = matrix.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inverse().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &a[r][j];
                    a[i][j] = &a[i][j] - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(matrix: &[Vec<Scalar>], cols: usize) -> usize {
    rref(matrix, cols).1.len()
}

/// Canonical basis of `{x : A x = 0}`: one vector per free column `f`, with
/// `x_f = 1`, zero on the other free columns.
pub fn nullspace(matrix: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(matrix, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Scalar::zero(); cols];
            x[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -&r[row][free];
            }
            x
        })
        .collect()
}

/// Solves the square system `A x = b`; `None` when `A` is singular.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.len();
    let augmented: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&augmented, n + 1);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(r.into_iter().map(|mut row| row.pop().unwrap()).collect())
}
