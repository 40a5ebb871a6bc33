//! Chern–Simons minima, Pontryagin numbers and the reducible-count parity
//! argument, all as exact rationals for the family `Σ(p, q, kpq - 1)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::Rational;
use crate::params::{FamilyTriple, InvalidParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsError {
    #[error(transparent)]
    InvalidParams(#[from] InvalidParams),
    #[error("reducible count {0} is not an integer")]
    NonIntegerCount(Rational),
}

impl CsError {
    pub fn name(&self) -> &'static str {
        match self {
            CsError::InvalidParams(_) => "InvalidParams",
            CsError::NonIntegerCount(_) => "NonIntegerCount",
        }
    }
}

/// Minimal Chern–Simons gap `τ(Y)`, a rational in `(0, 4]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TauValue(Rational);

impl TauValue {
    pub fn new(value: Rational) -> Option<Self> {
        (value.is_positive() && value <= Rational::from_integer(4.into())).then_some(TauValue(value))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Display for TauValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<String> for TauValue {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        let r: Rational = s.parse().map_err(|_| format!("not a rational: {s:?}"))?;
        TauValue::new(r).ok_or_else(|| format!("{s} is outside (0, 4]"))
    }
}

impl From<TauValue> for String {
    fn from(t: TauValue) -> Self {
        t.0.to_string()
    }
}

/// `|H₁(X; ℤ)|` torsion order `T` and `β = rank H₁(X; ℤ/2) − rank H₁(X; ℤ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Data {
    #[serde(with = "crate::serde_str")]
    torsion_order: BigInt,
    #[serde(with = "crate::serde_str")]
    beta: u32,
}

impl H1Data {
    /// Rejects `T < 1`, and odd `T` with `β > 0` (odd torsion contributes no
    /// ℤ/2 rank, so such data is inconsistent).
    pub fn new(torsion_order: impl Into<BigInt>, beta: u32) -> Result<Self, InvalidParams> {
        let torsion_order = torsion_order.into();
        if !torsion_order.is_positive() {
            return Err(InvalidParams::new(format!("torsion order must be positive, got {torsion_order}")));
        }
        if beta > 0 && torsion_order.is_odd() {
            return Err(InvalidParams::new(format!(
                "beta = {beta} needs even torsion, got T = {torsion_order}"
            )));
        }
        Ok(H1Data { torsion_order, beta })
    }

    pub fn torsion_order(&self) -> &BigInt {
        &self.torsion_order
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }
}

/// `τ(Σ(p, q, kpq - 1)) = 1 / (pq(kpq - 1))`.
pub fn tau_brieskorn_family(t: &FamilyTriple) -> TauValue {
    TauValue::new(Rational::new(BigInt::one(), t.chain_term())).expect("pq(kpq-1) >= 5")
}

/// `p₁(E, α) = 1 / (p_N q_N (k_N p_N q_N - 1))` for the bundle over the
/// cobordism whose terminal end is `Σ(p_N, q_N, k_N p_N q_N - 1)`.
pub fn pontryagin_number(terminal: &FamilyTriple) -> Rational {
    let p1 = Rational::new(BigInt::one(), terminal.chain_term());
    assert!(p1 < Rational::from_integer(4.into()), "p1 must stay below 4");
    p1
}

/// Lower bound `min{1/p, 1/q, 1/(kpq - 1)}` on the Chern–Simons gap of the
/// lens spaces appearing in the boundary of the orbifold cobordism.
pub fn lens_cs_lower_bound(terminal: &FamilyTriple) -> Rational {
    let largest = terminal.p().max(terminal.q()).max(terminal.third());
    Rational::new(BigInt::one(), BigInt::from(largest))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    /// What is being compared, e.g. `p1 < tau(Σ(2,3,5))`.
    pub label: String,
    #[serde(with = "crate::serde_str")]
    pub lhs: Rational,
    #[serde(with = "crate::serde_str")]
    pub rhs: Rational,
    pub holds: bool,
}

impl Comparison {
    fn strict(label: String, lhs: &Rational, rhs: &Rational) -> Self {
        Comparison {
            label,
            holds: lhs < rhs,
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompactnessReport {
    pub terminal: FamilyTriple,
    #[serde(with = "crate::serde_str")]
    pub pontryagin: Rational,
    pub comparisons: Vec<Comparison>,
    pub compact: bool,
}

/// Checks the no-bubbling and no-breaking inequalities:
/// `p₁ < 4`, `p₁ <` the lens-space bound, and `p₁ < τ(Σ_e)` for every
/// boundary entry `e`.
pub fn compactness_check(boundary: &[FamilyTriple], terminal: &FamilyTriple) -> CompactnessReport {
    let p1 = pontryagin_number(terminal);
    let mut comparisons = vec![
        Comparison::strict("p1 < 4 (no bubbling)".into(), &p1, &Rational::from_integer(4.into())),
        Comparison::strict(
            "p1 < lens space Chern-Simons bound".into(),
            &p1,
            &lens_cs_lower_bound(terminal),
        ),
    ];
    for e in boundary {
        let tau = tau_brieskorn_family(e);
        comparisons.push(Comparison::strict(
            format!("p1 < tau({})", e.brieskorn()),
            &p1,
            tau.value(),
        ));
    }
    let compact = comparisons.iter().all(|c| c.holds);
    CompactnessReport {
        terminal: *terminal,
        pontryagin: p1,
        comparisons,
        compact,
    }
}

/// Number of reducible connections `C(e) = T / 2^β`.
pub fn count_reducibles(h: &H1Data) -> Rational {
    let denom = BigInt::one() << h.beta;
    Rational::new(h.torsion_order.clone(), denom)
}

/// Whether the reducible count is odd, which is impossible for the boundary
/// of a compact 1-manifold.
pub fn parity_obstruction(h: &H1Data) -> Result<bool, CsError> {
    let count = count_reducibles(h);
    if !count.is_integer() {
        return Err(CsError::NonIntegerCount(count));
    }
    Ok(count.to_integer().is_odd())
}
