//! Brieskorn homology spheres and their Fintushel–Stern invariant.
//!
//! For a Seifert fibered homology sphere `Σ(a₁, a₂, a₃)` with `a = a₁a₂a₃`,
//!
//! ```text
//! R(a₁,a₂,a₃) = 2/a + Σᵢ (2/aᵢ) Σ_{k=1}^{aᵢ-1} cot(πak/aᵢ²) · cot(πk/aᵢ) · sin²(πk/aᵢ)
//! ```
//!
//! The sum is an integer. It is evaluated here in multi-precision floating
//! point and rounded, with the distance to the nearest integer reported as a
//! certificate of the rounding.

use std::fmt;
use std::str::FromStr;

use astro_float::{BigFloat, Consts, RoundingMode, Word};
use num_bigint::{BigInt, BigUint, Sign};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::exactmath::gcd_u64;
use crate::params::{FamilyTriple, InvalidParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FsError {
    #[error(transparent)]
    InvalidParams(#[from] InvalidParams),
    #[error("value is {residual:e} away from an integer at {precision_bits} bits")]
    IntegralityFailure { residual: f64, precision_bits: usize },
}

impl FsError {
    pub fn name(&self) -> &'static str {
        match self {
            FsError::InvalidParams(_) => "InvalidParams",
            FsError::IntegralityFailure { .. } => "IntegralityFailure",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }
}

/// Oriented `Σ(a₁, a₂, a₃)`; multiplicities are pairwise coprime, at least 2,
/// and kept sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSphere", into = "RawSphere")]
pub struct BrieskornSphere {
    a: [u64; 3],
    orientation: Orientation,
}

impl BrieskornSphere {
    pub fn new(a1: u64, a2: u64, a3: u64, orientation: Orientation) -> Result<Self, InvalidParams> {
        let mut a = [a1, a2, a3];
        a.sort_unstable();
        if a[0] < 2 {
            return Err(InvalidParams::new(format!(
                "multiplicities must be at least 2, got ({a1}, {a2}, {a3})"
            )));
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if gcd_u64(a[i], a[j]) != 1 {
                return Err(InvalidParams::new(format!(
                    "multiplicities {} and {} are not coprime",
                    a[i], a[j]
                )));
            }
        }
        Ok(BrieskornSphere { a, orientation })
    }

    pub fn positive(a1: u64, a2: u64, a3: u64) -> Result<Self, InvalidParams> {
        Self::new(a1, a2, a3, Orientation::Positive)
    }

    pub fn multiplicities(&self) -> [u64; 3] {
        self.a
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// The same manifold with the opposite orientation.
    pub fn reverse(&self) -> Self {
        BrieskornSphere {
            a: self.a,
            orientation: self.orientation.reversed(),
        }
    }

    pub fn product(&self) -> BigInt {
        self.a.iter().map(|&x| BigInt::from(x)).product()
    }
}

impl fmt::Display for BrieskornSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.orientation {
            Orientation::Positive => "",
            Orientation::Negative => "-",
        };
        write!(f, "{sign}Σ({},{},{})", self.a[0], self.a[1], self.a[2])
    }
}

#[derive(Serialize, Deserialize)]
struct RawSphere {
    #[serde(with = "crate::serde_str::vec")]
    multiplicities: Vec<u64>,
    orientation: Orientation,
}

impl TryFrom<RawSphere> for BrieskornSphere {
    type Error = InvalidParams;

    fn try_from(r: RawSphere) -> Result<Self, Self::Error> {
        match r.multiplicities[..] {
            [a1, a2, a3] => BrieskornSphere::new(a1, a2, a3, r.orientation),
            _ => Err(InvalidParams::new("expected exactly three multiplicities")),
        }
    }
}

impl From<BrieskornSphere> for RawSphere {
    fn from(s: BrieskornSphere) -> Self {
        RawSphere {
            multiplicities: s.a.to_vec(),
            orientation: s.orientation,
        }
    }
}

/// Parses `"a1,a2,a3"`, optionally prefixed by `-` for the reversed orientation.
impl FromStr for BrieskornSphere {
    type Err = InvalidParams;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (orientation, body) = match s.trim().strip_prefix('-') {
            Some(rest) => (Orientation::Negative, rest),
            None => (Orientation::Positive, s.trim()),
        };
        let parts = body
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| InvalidParams::new(format!("cannot parse multiplicities {s:?}")))?;
        match parts[..] {
            [a1, a2, a3] => BrieskornSphere::new(a1, a2, a3, orientation),
            _ => Err(InvalidParams::new(format!("expected three multiplicities, got {s:?}"))),
        }
    }
}

/// Settings for [`r_invariant`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RInvariantOptions {
    /// Starting precision; raised to [`minimum_precision_bits`] if lower.
    pub precision_bits: usize,
    /// Largest accepted distance between the sum and its nearest integer.
    pub tolerance: f64,
    /// Precision is doubled up to this ceiling before giving up.
    pub max_precision_bits: usize,
}

impl Default for RInvariantOptions {
    fn default() -> Self {
        RInvariantOptions {
            precision_bits: 128,
            tolerance: 1e-6,
            max_precision_bits: 4096,
        }
    }
}

/// Result of evaluating `R`.
#[derive(Debug, Clone)]
pub struct RValue {
    pub numeric: BigFloat,
    pub rounded: BigInt,
    /// `|numeric - rounded|`
    pub residual: f64,
    pub precision_bits: usize,
}

impl RValue {
    /// `numeric` as a decimal string.
    pub fn numeric_string(&self) -> String {
        // astro-float prints an empty fraction as "1.e+0".
        self.numeric.to_string().replacen(".e", ".0e", 1)
    }
}

impl Serialize for RValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            numeric: String,
            #[serde(with = "crate::serde_str")]
            rounded: &'a BigInt,
            residual: String,
            #[serde(with = "crate::serde_str")]
            precision_bits: usize,
        }
        View {
            numeric: self.numeric_string(),
            rounded: &self.rounded,
            residual: format!("{:e}", self.residual),
            precision_bits: self.precision_bits,
        }
        .serialize(serializer)
    }
}

/// `50 + ⌈10·log₁₀(a₁a₂a₃)⌉` bits.
pub fn minimum_precision_bits(s: &BrieskornSphere) -> usize {
    let digits = s.a.iter().map(|&x| (x as f64).log10()).sum::<f64>();
    50 + (10.0 * digits).ceil() as usize
}

/// Fintushel–Stern invariant of a positively oriented `Σ(a₁, a₂, a₃)`.
///
/// Evaluation starts at `max(options.precision_bits, minimum_precision_bits)`
/// and doubles the precision while the residual exceeds the tolerance.
pub fn r_invariant(s: &BrieskornSphere, options: &RInvariantOptions) -> Result<RValue, FsError> {
    if s.orientation != Orientation::Positive {
        return Err(InvalidParams::new(format!("R is evaluated on positively oriented spheres, got {s}")).into());
    }
    let mut bits = options.precision_bits.max(minimum_precision_bits(s));
    loop {
        let value = evaluate_r(s, bits);
        if value.residual <= options.tolerance {
            return Ok(value);
        }
        if bits >= options.max_precision_bits {
            return Err(FsError::IntegralityFailure {
                residual: value.residual,
                precision_bits: bits,
            });
        }
        bits = (bits * 2).min(options.max_precision_bits);
    }
}

/// One evaluation of the cotangent sum at exactly `bits` of precision, with
/// no integrality check. Orientation is ignored.
pub fn evaluate_r(s: &BrieskornSphere, bits: usize) -> RValue {
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().expect("constants cache allocation");
    let pi = cc.pi(bits, rm);
    let int = |v: u64| BigFloat::from_u64(v, bits);

    let [a1, a2, a3] = s.a;
    let mut total = int(2).div(&int(a1), bits, rm).div(&int(a2), bits, rm).div(&int(a3), bits, rm);

    for (i, &ai) in s.a.iter().enumerate() {
        // a/aᵢ reduced mod aᵢ: cot(πak/aᵢ²) = cot(π·((a/aᵢ)·k mod aᵢ)/aᵢ).
        let others = s.a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x as u128);
        let cofactor = others.fold(1u128, |acc, x| acc * x % ai as u128);
        let step = pi.div(&int(ai), bits, rm);
        let mut inner = BigFloat::from_u64(0, bits);
        for k in 1..ai {
            let m = (cofactor * k as u128 % ai as u128) as u64;
            let x = step.mul(&int(m), bits, rm);
            let cot_x = x.cos(bits, rm, &mut cc).div(&x.sin(bits, rm, &mut cc), bits, rm);
            // cot(y)·sin²(y) = sin(y)·cos(y)
            let y = step.mul(&int(k), bits, rm);
            let sin_cos = y.sin(bits, rm, &mut cc).mul(&y.cos(bits, rm, &mut cc), bits, rm);
            inner = inner.add(&cot_x.mul(&sin_cos, bits, rm), bits, rm);
        }
        let weighted = inner.mul(&int(2), bits, rm).div(&int(ai), bits, rm);
        total = total.add(&weighted, bits, rm);
    }

    let nearest = total.round(0, rm);
    let residual_big = total.sub(&nearest, bits, rm).abs();
    RValue {
        rounded: integer_value(&nearest),
        residual: to_f64(&residual_big),
        numeric: total,
        precision_bits: bits,
    }
}

/// The family `Σ(p, q, kpq - 1)` has `R = 1`.
pub fn r_family_closed_form(p: u64, q: u64, k: u64) -> Result<i64, FsError> {
    FamilyTriple::new(p, q, k)?;
    Ok(1)
}

/// Exact conversion of an integer-valued float.
fn integer_value(x: &BigFloat) -> BigInt {
    if x.is_zero() {
        return BigInt::from(0);
    }
    let (words, _, sign, exponent, _) = x.as_raw_parts().expect("finite value");
    let word_bits = Word::BITS as i64;
    let mantissa = words
        .iter()
        .rev()
        .fold(BigUint::from(0u8), |acc, &w| (acc << word_bits) + BigUint::from(w as u64));
    // value = 0.mantissa × 2^exponent
    let shift = exponent as i64 - word_bits * words.len() as i64;
    let magnitude = if shift >= 0 {
        mantissa << shift as u64
    } else {
        mantissa >> (-shift) as u64
    };
    let sign = if sign.is_negative() { Sign::Minus } else { Sign::Plus };
    BigInt::from_biguint(sign, magnitude)
}

fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.to_string().parse().unwrap_or(f64::INFINITY)
}
