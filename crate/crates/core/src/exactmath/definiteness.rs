use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Rational, SymIntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    Degenerate,
}

impl Definiteness {
    /// Class of the negated form.
    pub fn reversed(self) -> Self {
        match self {
            Definiteness::PositiveDefinite => Definiteness::NegativeDefinite,
            Definiteness::NegativeDefinite => Definiteness::PositiveDefinite,
            other => other,
        }
    }
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Definiteness::PositiveDefinite => "PositiveDefinite",
            Definiteness::NegativeDefinite => "NegativeDefinite",
            Definiteness::Indefinite => "Indefinite",
            Definiteness::Degenerate => "Degenerate",
        };
        f.write_str(s)
    }
}

/// Classifies a symmetric integer form exactly.
///
/// The form is diagonalized by symmetric Gaussian elimination over the
/// rationals. Pivots are taken in leading-principal order, skipping to a later
/// nonzero diagonal entry when the natural pivot vanishes; if every remaining
/// diagonal entry is zero, a nonzero off-diagonal pair `(i, j)` is eliminated
/// as a 2x2 block, which contributes one positive and one negative direction.
/// A remaining block that is entirely zero means the form is singular. By
/// Sylvester's law of inertia the pivot signs are the eigenvalue signs.
///
/// Only nonzero entries are touched, so near-diagonal forms cost `O(n²)`.
/// The 0-dimensional form is reported as `PositiveDefinite` (vacuously).
pub fn definiteness(m: &SymIntMatrix) -> Definiteness {
    let n = m.dimension();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| Rational::from_integer(m[(i, j)].clone())).collect())
        .collect();
    let mut remaining: Vec<usize> = (0..n).collect();
    let (mut positive, mut negative) = (0usize, 0usize);

    while !remaining.is_empty() {
        if let Some(pos) = remaining.iter().position(|&k| !a[k][k].is_zero()) {
            let k = remaining.remove(pos);
            let pivot = a[k][k].clone();
            if pivot.is_positive() {
                positive += 1;
            } else {
                negative += 1;
            }
            for &i in &remaining {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &pivot;
                for &j in &remaining {
                    if a[k][j].is_zero() {
                        continue;
                    }
                    let delta = &factor * &a[k][j];
                    a[i][j] -= delta;
                }
            }
            continue;
        }
        let pair = remaining.iter().enumerate().find_map(|(x, &i)| {
            remaining[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            return Definiteness::Degenerate;
        };
        remaining.retain(|&r| r != i && r != j);
        positive += 1;
        negative += 1;
        // Schur complement of [[0, b], [b, 0]], whose inverse is [[0, 1/b], [1/b, 0]].
        let b = a[i][j].clone();
        for &r in &remaining {
            if a[r][i].is_zero() && a[r][j].is_zero() {
                continue;
            }
            for &s in &remaining {
                let delta = (&a[r][i] * &a[j][s] + &a[r][j] * &a[i][s]) / &b;
                if !delta.is_zero() {
                    a[r][s] -= delta;
                }
            }
        }
    }

    match (positive, negative) {
        (_, 0) => Definiteness::PositiveDefinite,
        (0, _) => Definiteness::NegativeDefinite,
        _ => Definiteness::Indefinite,
    }
}
