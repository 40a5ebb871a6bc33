//! Validated parameter tuples shared across modules.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::gcd_u64;
use crate::fs_invariant::{BrieskornSphere, Orientation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid parameters: {0}")]
pub struct InvalidParams(pub String);

impl InvalidParams {
    pub(crate) fn new(msg: impl Into<String>) -> Self {
        InvalidParams(msg.into())
    }
}

fn check_torus_pair(p: u64, q: u64) -> Result<(), InvalidParams> {
    if p < 2 || q < 2 {
        return Err(InvalidParams::new(format!("need p, q >= 2, got ({p}, {q})")));
    }
    if gcd_u64(p, q) != 1 {
        return Err(InvalidParams::new(format!("p = {p} and q = {q} are not coprime")));
    }
    Ok(())
}

fn parse_u64_list<const N: usize>(s: &str) -> Result<[u64; N], InvalidParams> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(InvalidParams::new(format!("expected {N} comma-separated integers, got {s:?}")));
    }
    let mut out = [0u64; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .parse()
            .map_err(|_| InvalidParams::new(format!("not a non-negative integer: {part:?}")))?;
    }
    Ok(out)
}

/// Parameters `(p, q, k)` of the Brieskorn sphere `Σ(p, q, kpq - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTriple", into = "RawTriple")]
pub struct FamilyTriple {
    p: u64,
    q: u64,
    k: u64,
}

impl FamilyTriple {
    pub fn new(p: u64, q: u64, k: u64) -> Result<Self, InvalidParams> {
        check_torus_pair(p, q)?;
        if k < 1 {
            return Err(InvalidParams::new(format!("need k >= 1, got {k}")));
        }
        k.checked_mul(p)
            .and_then(|v| v.checked_mul(q))
            .ok_or_else(|| InvalidParams::new(format!("k*p*q overflows for ({p}, {q}, {k})")))?;
        Ok(FamilyTriple { p, q, k })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Third multiplicity `kpq - 1`.
    pub fn third(&self) -> u64 {
        self.k * self.p * self.q - 1
    }

    /// `Σ(p, q, kpq - 1)` with its standard orientation.
    pub fn brieskorn(&self) -> BrieskornSphere {
        BrieskornSphere::new(self.p, self.q, self.third(), Orientation::Positive)
            .expect("p, q and kpq - 1 are pairwise coprime")
    }

    /// `pq(kpq - 1)`, the quantity compared along a Furuta chain.
    pub fn chain_term(&self) -> BigInt {
        let pq = BigInt::from(self.p) * BigInt::from(self.q);
        let third = BigInt::from(self.k) * &pq - 1;
        pq * third
    }
}

impl fmt::Display for FamilyTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.k)
    }
}

/// Parses `"p,q,k"`.
impl FromStr for FamilyTriple {
    type Err = InvalidParams;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let [p, q, k] = parse_u64_list::<3>(s.trim_matches(|c| c == '(' || c == ')'))?;
        FamilyTriple::new(p, q, k)
    }
}

#[derive(Serialize, Deserialize)]
struct RawTriple {
    #[serde(with = "crate::serde_str")]
    p: u64,
    #[serde(with = "crate::serde_str")]
    q: u64,
    #[serde(with = "crate::serde_str")]
    k: u64,
}

impl TryFrom<RawTriple> for FamilyTriple {
    type Error = InvalidParams;

    fn try_from(r: RawTriple) -> Result<Self, Self::Error> {
        FamilyTriple::new(r.p, r.q, r.k)
    }
}

impl From<FamilyTriple> for RawTriple {
    fn from(t: FamilyTriple) -> Self {
        RawTriple { p: t.p, q: t.q, k: t.k }
    }
}

/// The satellite `D_n(T_{p,q})`: `n` positive half twists in the clasp of the
/// pattern, companion the positive `(p, q)` torus knot.
///
/// `n` must be even so the pattern has linking number zero with the axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSatellite", into = "RawSatellite")]
pub struct SatelliteParams {
    n: u64,
    p: u64,
    q: u64,
}

impl SatelliteParams {
    pub fn new(n: u64, p: u64, q: u64) -> Result<Self, InvalidParams> {
        if n < 2 || n % 2 != 0 {
            return Err(InvalidParams::new(format!(
                "n must be a positive even number of half twists, got {n}"
            )));
        }
        check_torus_pair(p, q)?;
        // The largest Brieskorn multiplicity ever formed is 2npq - 1.
        n.checked_mul(2)
            .and_then(|v| v.checked_mul(p))
            .and_then(|v| v.checked_mul(q))
            .ok_or_else(|| InvalidParams::new(format!("2npq overflows for ({n}, {p}, {q})")))?;
        Ok(SatelliteParams { n, p, q })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `(p, q, n)`: indexes `Σ(p, q, npq - 1)`.
    pub fn single_triple(&self) -> FamilyTriple {
        FamilyTriple::new(self.p, self.q, self.n).expect("validated at construction")
    }

    /// `(p, q, 2n)`: indexes `Σ(p, q, 2npq - 1)`.
    pub fn doubled_triple(&self) -> FamilyTriple {
        FamilyTriple::new(self.p, self.q, 2 * self.n).expect("validated at construction")
    }
}

impl fmt::Display for SatelliteParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D_{}(T_{{{},{}}})", self.n, self.p, self.q)
    }
}

/// Parses `"n,p,q"`.
impl FromStr for SatelliteParams {
    type Err = InvalidParams;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let [n, p, q] = parse_u64_list::<3>(s.trim_matches(|c| c == '(' || c == ')'))?;
        SatelliteParams::new(n, p, q)
    }
}

#[derive(Serialize, Deserialize)]
struct RawSatellite {
    #[serde(with = "crate::serde_str")]
    n: u64,
    #[serde(with = "crate::serde_str")]
    p: u64,
    #[serde(with = "crate::serde_str")]
    q: u64,
}

impl TryFrom<RawSatellite> for SatelliteParams {
    type Error = InvalidParams;

    fn try_from(r: RawSatellite) -> Result<Self, Self::Error> {
        SatelliteParams::new(r.n, r.p, r.q)
    }
}

impl From<SatelliteParams> for RawSatellite {
    fn from(s: SatelliteParams) -> Self {
        RawSatellite { n: s.n, p: s.p, q: s.q }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_validation() {
        assert!(FamilyTriple::new(2, 3, 1).is_ok());
        assert!(FamilyTriple::new(2, 3, 0).is_err());
        assert!(FamilyTriple::new(2, 4, 1).is_err());
        assert!(FamilyTriple::new(1, 3, 1).is_err());
        assert!(FamilyTriple::new(u64::MAX / 2, 3, 1).is_err());
    }

    #[test]
    fn triple_values() {
        let t: FamilyTriple = "2,3,1".parse().unwrap();
        assert_eq!(t.third(), 5);
        assert_eq!(t.chain_term(), BigInt::from(30));
        assert_eq!(FamilyTriple::new(2, 5, 2).unwrap().chain_term(), BigInt::from(190));
        assert_eq!(t.brieskorn().multiplicities(), [2, 3, 5]);
        assert!("2,3".parse::<FamilyTriple>().is_err());
        assert!("2,x,1".parse::<FamilyTriple>().is_err());
    }

    #[test]
    fn satellite_validation() {
        assert!(SatelliteParams::new(2, 2, 3).is_ok());
        assert!(SatelliteParams::new(3, 2, 3).is_err());
        assert!(SatelliteParams::new(0, 2, 3).is_err());
        assert!(SatelliteParams::new(2, 3, 6).is_err());
        let s: SatelliteParams = "4,3,5".parse().unwrap();
        assert_eq!(s.single_triple(), FamilyTriple::new(3, 5, 4).unwrap());
        assert_eq!(s.doubled_triple(), FamilyTriple::new(3, 5, 8).unwrap());
        assert_eq!(s.to_string(), "D_4(T_{3,5})");
    }

    #[test]
    fn serde_round_trip_and_validation() {
        let s = SatelliteParams::new(2, 2, 5).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"n":"2","p":"2","q":"5"}"#);
        assert_eq!(serde_json::from_str::<SatelliteParams>(&json).unwrap(), s);
        assert!(serde_json::from_str::<SatelliteParams>(r#"{"n":"3","p":"2","q":"5"}"#).is_err());
    }
}
