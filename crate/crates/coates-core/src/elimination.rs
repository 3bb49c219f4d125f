use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::Result;

/// Outcome of running fraction-free elimination on a working copy.
struct Elimination {
    rank: usize,
    /// Sign flips accumulated from row and column swaps.
    sign: i8,
    /// The final pivot; equals the determinant up to `sign` when the
    /// matrix is square and has full rank.
    last_pivot: Rational,
}

/// Bareiss-style elimination with full pivoting. Each step divides by the
/// previous pivot, which is exact here and keeps integer inputs
/// denominator-free throughout. The pivot is the first nonzero entry of the
/// trailing submatrix in row-major order, so runs are deterministic.
fn eliminate(m: &Matrix) -> Elimination {
    let rows = m.rows();
    let cols = m.cols();
    let mut w: Vec<Vec<Rational>> = (0..rows).map(|i| m.row(i).to_vec()).collect();

    let mut sign = 1i8;
    let mut prev = Rational::one();
    let mut last_pivot = Rational::one();
    let mut k = 0;

    while k < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&w, k) else {
            break;
        };
        if pi != k {
            w.swap(pi, k);
            sign = -sign;
        }
        if pj != k {
            for row in w.iter_mut() {
                row.swap(pj, k);
            }
            sign = -sign;
        }

        let pivot = w[k][k].clone();
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = &w[i][j] * &pivot - &w[i][k] * &w[k][j];
                w[i][j] = num / &prev;
            }
            w[i][k] = Rational::zero();
        }
        prev = pivot.clone();
        last_pivot = pivot;
        k += 1;
    }

    Elimination { rank: k, sign, last_pivot }
}

fn find_pivot(w: &[Vec<Rational>], k: usize) -> Option<(usize, usize)> {
    for i in k..w.len() {
        for j in k..w[i].len() {
            if !w[i][j].is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Exact determinant by fraction-free elimination. The 0x0 determinant is 1
/// (empty product), so minors of the empty index set are well-defined.
pub fn det_oracle(m: &Matrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rational::one());
    }
    let outcome = eliminate(m);
    if outcome.rank < n {
        return Ok(Rational::zero());
    }
    Ok(if outcome.sign < 0 { -outcome.last_pivot } else { outcome.last_pivot })
}

/// Exact rank by the same elimination; works for rectangular matrices.
pub fn rank_exact(m: &Matrix) -> usize {
    eliminate(m).rank
}
