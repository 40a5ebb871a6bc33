//! Independent reference implementations used only by tests. Nothing here
//! calls into the library under test except for type conversion.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::BigInt;
use rand::Rng;
use satcert_core::exactmath::{Definiteness, IntMatrix, SymIntMatrix};

pub type Mat = Vec<Vec<i64>>;

/// Seed for randomized suites: `SATCERT_TEST_SEED` if set, else fixed.
pub fn seed() -> u64 {
    std::env::var("SATCERT_TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5A7C_E27)
}

pub fn to_int_matrix(m: &[Vec<i64>]) -> IntMatrix {
    if m.is_empty() {
        return IntMatrix::zeros(0, 0);
    }
    IntMatrix::from_rows(m).unwrap()
}

pub fn to_sym(m: &[Vec<i64>]) -> SymIntMatrix {
    SymIntMatrix::new(to_int_matrix(m)).unwrap()
}

pub fn to_i128_rows(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|v| i128::try_from(v).unwrap()).collect())
        .collect()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i128)> {
    // Heap's algorithm, tracking sign by transposition count.
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1i128;
    out.push((a.clone(), sign));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push((a.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Leibniz expansion; fine up to 8x8.
pub fn leibniz_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    permutations(n)
        .into_iter()
        .map(|(perm, sign)| sign * perm.iter().enumerate().map(|(i, &j)| m[i][j]).product::<i128>())
        .sum()
}

fn widen(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect()
}

/// Sign pattern of `xᵀMx` over all nonzero `x ∈ [-3, 3]ⁿ`, with `det = 0`
/// deciding degeneracy.
pub fn brute_force_definiteness(m: &[Vec<i64>]) -> Definiteness {
    let n = m.len();
    if n == 0 {
        return Definiteness::PositiveDefinite;
    }
    if leibniz_det(&widen(m)) == 0 {
        return Definiteness::Degenerate;
    }
    let mut x = vec![-3i64; n];
    // y = Mx, updated one coordinate at a time.
    let mut y: Vec<i64> = (0..n).map(|i| m[i].iter().map(|&v| -3 * v).sum()).collect();
    let (mut pos, mut neg) = (false, false);
    loop {
        let q: i64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        pos |= q > 0;
        neg |= q < 0;
        if pos && neg {
            return Definiteness::Indefinite;
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == n {
                return if pos { Definiteness::PositiveDefinite } else { Definiteness::NegativeDefinite };
            }
            if x[i] < 3 {
                x[i] += 1;
                for (r, yr) in y.iter_mut().enumerate() {
                    *yr += m[r][i];
                }
                break;
            }
            x[i] = -3;
            for (r, yr) in y.iter_mut().enumerate() {
                *yr -= 6 * m[r][i];
            }
            i += 1;
        }
    }
}

/// Characteristic polynomial coefficients `c₀..cₙ` of `det(λI - M)` by
/// Faddeev–LeVerrier (exact: every division is exact over ℤ).
pub fn char_poly(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let a = widen(m);
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut mk = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s: i128 = (0..n).map(|l| a[i][l] * mk[l][j]).sum();
                if i == j {
                    s += coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        mk = next;
        let trace: i128 = (0..n).map(|i| (0..n).map(|l| a[i][l] * mk[l][i]).sum::<i128>()).sum();
        assert_eq!(trace % k as i128, 0);
        coeffs[n - k] = -trace / k as i128;
    }
    coeffs
}

fn sign_changes(c: impl Iterator<Item = i128>) -> usize {
    let signs: Vec<i128> = c.filter(|&v| v != 0).map(i128::signum).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Eigenvalue signs from the characteristic polynomial. A symmetric matrix
/// has a real-rooted characteristic polynomial, so Descartes' rule counts
/// positive and negative roots exactly.
pub fn eigen_sign_definiteness(m: &[Vec<i64>]) -> Definiteness {
    let n = m.len();
    if n == 0 {
        return Definiteness::PositiveDefinite;
    }
    let c = char_poly(m);
    if c[0] == 0 {
        return Definiteness::Degenerate;
    }
    let positive = sign_changes(c.iter().copied());
    let negative = sign_changes(c.iter().enumerate().map(|(k, &v)| if k % 2 == 1 { -v } else { v }));
    assert_eq!(positive + negative, n);
    match (positive, negative) {
        (_, 0) => Definiteness::PositiveDefinite,
        (0, _) => Definiteness::NegativeDefinite,
        _ => Definiteness::Indefinite,
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Invariant factors from determinantal divisors: `dₖ` is the gcd of all
/// `k x k` minors and `sₖ = dₖ / dₖ₋₁`.
pub fn determinantal_invariant_factors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let a = widen(m);
    let mut factors = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut d = 0i128;
        for r in combinations(rows, k) {
            for c in combinations(cols, k) {
                let minor: Vec<Vec<i128>> = r.iter().map(|&i| c.iter().map(|&j| a[i][j]).collect()).collect();
                d = gcd_i128(d, leibniz_det(&minor));
            }
        }
        if d == 0 {
            factors.resize(rows.min(cols), 0);
            return factors;
        }
        factors.push(d / prev);
        prev = d;
    }
    factors
}

/// `R(a₁, a₂, a₃)` in plain `f64`, reducing each cotangent argument modulo
/// π through the integer `a·k mod aᵢ²`.
pub fn r_f64(a: [u64; 3]) -> f64 {
    let prod = a[0] * a[1] * a[2];
    let mut total = 2.0 / prod as f64;
    for &ai in &a {
        let sq = ai * ai;
        let mut inner = 0.0;
        for k in 1..ai {
            let t = (prod % sq) * k % sq;
            let x = PI * t as f64 / sq as f64;
            let y = PI * k as f64 / ai as f64;
            inner += (x.cos() / x.sin()) * (y.cos() / y.sin()) * y.sin().powi(2);
        }
        total += 2.0 / ai as f64 * inner;
    }
    total
}

/// Values of `R` obtained offline from a 256-bit evaluation of the cotangent
/// sum, independent of this crate.
pub const FROZEN_R: &[([u64; 3], i64)] = &[
    ([2, 3, 5], 1),
    ([2, 3, 7], -1),
    ([2, 3, 11], 1),
    ([2, 3, 13], -1),
    ([2, 5, 9], 1),
    ([3, 5, 14], 1),
];

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Mat {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-bound..=bound);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

/// Strictly diagonally dominant with diagonal of the given sign, hence
/// definite. Entries stay in `[-5, 5]`.
pub fn random_definite<R: Rng>(rng: &mut R, n: usize, sign: i64) -> Mat {
    loop {
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = if rng.gen_bool(0.3) { rng.gen_range(-1..=1) } else { 0 };
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        let mut ok = true;
        for i in 0..n {
            let off: i64 = (0..n).filter(|&j| j != i).map(|j| m[i][j].abs()).sum();
            if off >= 5 {
                ok = false;
            }
            m[i][i] = sign * rng.gen_range(off + 1..=5.max(off + 1));
        }
        if ok {
            return m;
        }
    }
}

/// Symmetric with two equal rows, hence singular.
pub fn random_degenerate<R: Rng>(rng: &mut R, n: usize) -> Mat {
    let mut m = random_symmetric(rng, n, 5);
    if n == 1 {
        m[0][0] = 0;
        return m;
    }
    let last = n - 1;
    for j in 0..last {
        m[last][j] = m[0][j];
        m[j][last] = m[0][j];
    }
    m[0][last] = m[0][0];
    m[last][0] = m[0][0];
    m[last][last] = m[0][0];
    m
}

/// The mix used by the definiteness oracle suites.
pub fn random_form<R: Rng>(rng: &mut R, max_dim: usize) -> Mat {
    let n = rng.gen_range(1..=max_dim);
    match rng.gen_range(0..10) {
        0..=4 => random_symmetric(rng, n, 5),
        5 | 6 => random_definite(rng, n, 1),
        7 | 8 => random_definite(rng, n, -1),
        _ => random_degenerate(rng, n),
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> Mat {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    (0..r).map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn big_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

pub fn big_matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|l| &row[l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

/// Leibniz expansion over `BigInt`, for transforms whose entries may not fit
/// in machine words.
pub fn big_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    permutations(n)
        .into_iter()
        .map(|(perm, sign)| {
            let p: BigInt = perm.iter().enumerate().map(|(i, &j)| m[i][j].clone()).product();
            p * BigInt::from(sign)
        })
        .sum()
}
