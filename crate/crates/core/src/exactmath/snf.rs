use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;

/// Smith normal form `left · A · right = diag(diagonal)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    /// Invariant factors, `min(rows, cols)` of them, each dividing the next.
    #[serde(with = "crate::serde_str::vec")]
    pub diagonal: Vec<BigInt>,
    /// Unimodular row transform (`rows x rows`).
    pub left: IntMatrix,
    /// Unimodular column transform (`cols x cols`).
    pub right: IntMatrix,
}

impl SnfResult {
    /// The diagonal padded out to the shape of the original matrix.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }

    /// Number of zero invariant factors plus surplus columns: the free rank of
    /// the cokernel `Z^rows / im(A)` when `A` presents a group by columns.
    pub fn free_rank(&self) -> usize {
        let nonzero = self.diagonal.iter().filter(|d| !d.is_zero()).count();
        self.left.rows() - nonzero
    }

    /// Invariant factors greater than one (the torsion of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| d > &&BigInt::from(1))
            .cloned()
            .collect()
    }
}

/// Smith normal form with accumulated transforms.
///
/// Works on any rectangular shape, including empty ones.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let rank_bound = rows.min(cols);
    for t in 0..rank_bound {
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            clear_pivot_cross(&mut a, &mut left, &mut right, t);
            match non_divisible_row(&a, t) {
                // Fold the offending row into the pivot row; the next
                // clearing pass lowers the pivot to a proper divisor.
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diagonal = (0..rank_bound).map(|i| a[(i, i)].clone()).collect();
    SnfResult {
        diagonal,
        left,
        right,
    }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| &v < b) {
                best = Some(((i, j), v));
            }
        }
    }
    best.map(|(idx, _)| idx)
}

/// Zero out column `t` below and row `t` right of the pivot with Euclidean
/// steps, swapping in smaller remainders as they appear.
fn clear_pivot_cross(a: &mut IntMatrix, left: &mut IntMatrix, right: &mut IntMatrix, t: usize) {
    loop {
        for i in t + 1..a.rows() {
            while !a[(i, t)].is_zero() {
                let neg_q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &neg_q);
                left.add_row_multiple(i, t, &neg_q);
                if !a[(i, t)].is_zero() {
                    a.swap_rows(i, t);
                    left.swap_rows(i, t);
                }
            }
        }
        for j in t + 1..a.cols() {
            while !a[(t, j)].is_zero() {
                let neg_q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &neg_q);
                right.add_col_multiple(j, t, &neg_q);
                if !a[(t, j)].is_zero() {
                    a.swap_cols(j, t);
                    right.swap_cols(j, t);
                }
            }
        }
        if (t + 1..a.rows()).all(|i| a[(i, t)].is_zero()) {
            return;
        }
    }
}

fn non_divisible_row(a: &IntMatrix, t: usize) -> Option<usize> {
    let p = &a[(t, t)];
    (t + 1..a.rows()).find(|&i| (t + 1..a.cols()).any(|j| !a[(i, j)].is_multiple_of(p)))
}
