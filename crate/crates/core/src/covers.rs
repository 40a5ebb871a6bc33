//! Satellites `D_n(T_{p,q})`, their double branched covers, and the torus
//! gluing calculus used to read off surgery slopes.
//!
//! Homology classes on a boundary torus are column vectors over the ordered
//! basis (meridian, longitude). A gluing map acts by left multiplication; its
//! first column is the image of the source meridian and its second column the
//! image of the source longitude.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::Slope;
use crate::fs_invariant::{BrieskornSphere, Orientation};
use crate::params::{FamilyTriple, InvalidParams, SatelliteParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error(transparent)]
    InvalidParams(#[from] InvalidParams),
    #[error("slope {0} is outside the handled family 1/m (m >= 0)")]
    UnsupportedSlope(Slope),
}

impl CoverError {
    pub fn name(&self) -> &'static str {
        match self {
            CoverError::InvalidParams(_) => "InvalidParams",
            CoverError::UnsupportedSlope(_) => "UnsupportedSlope",
        }
    }
}

/// One of the two basis curves of a boundary torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisCurve {
    Meridian,
    Longitude,
}

impl BasisCurve {
    pub fn vector(self) -> [i64; 2] {
        match self {
            BasisCurve::Meridian => [1, 0],
            BasisCurve::Longitude => [0, 1],
        }
    }
}

/// Unimodular 2x2 map between torus homologies, `matrix[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGluing", into = "RawGluing")]
pub struct TorusGluingMap {
    matrix: [[i64; 2]; 2],
}

impl TorusGluingMap {
    pub fn new(matrix: [[i64; 2]; 2]) -> Result<Self, InvalidParams> {
        let m = TorusGluingMap { matrix };
        match m.determinant() {
            1 | -1 => Ok(m),
            d => Err(InvalidParams::new(format!("gluing matrix has determinant {d}, expected ±1"))),
        }
    }

    /// Map sending the meridian to `meridian_image` and the longitude to
    /// `longitude_image`.
    pub fn from_images(meridian_image: [i64; 2], longitude_image: [i64; 2]) -> Result<Self, InvalidParams> {
        Self::new([
            [meridian_image[0], longitude_image[0]],
            [meridian_image[1], longitude_image[1]],
        ])
    }

    pub fn identity() -> Self {
        TorusGluingMap { matrix: [[1, 0], [0, 1]] }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }

    pub fn determinant(&self) -> i128 {
        let [[a, b], [c, d]] = self.matrix.map(|r| r.map(i128::from));
        a * d - b * c
    }

    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        let [[a, b], [c, d]] = self.matrix;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &TorusGluingMap) -> TorusGluingMap {
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..2).map(|k| self.matrix[i][k] * first.matrix[k][j]).sum();
            }
        }
        TorusGluingMap { matrix: out }
    }

    pub fn inverse(&self) -> TorusGluingMap {
        let [[a, b], [c, d]] = self.matrix;
        let det = self.determinant() as i64;
        // det = ±1, so dividing by det equals multiplying by it.
        TorusGluingMap {
            matrix: [[d * det, -b * det], [-c * det, a * det]],
        }
    }
}

impl fmt::Display for TorusGluingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.matrix;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

#[derive(Serialize, Deserialize)]
struct RawGluing {
    matrix: [[String; 2]; 2],
}

impl TryFrom<RawGluing> for TorusGluingMap {
    type Error = InvalidParams;

    fn try_from(r: RawGluing) -> Result<Self, Self::Error> {
        let mut m = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = r.matrix[i][j]
                    .parse()
                    .map_err(|_| InvalidParams::new(format!("bad matrix entry {:?}", r.matrix[i][j])))?;
            }
        }
        TorusGluingMap::new(m)
    }
}

impl From<TorusGluingMap> for RawGluing {
    fn from(g: TorusGluingMap) -> Self {
        RawGluing {
            matrix: g.matrix.map(|r| r.map(|v| v.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderReport {
    #[serde(with = "crate::serde_str::vec")]
    pub pattern_polynomial: Vec<i64>,
    /// Coefficients of `Δ_{T_{p,q}}(t)`, constant term first.
    #[serde(with = "crate::serde_str::vec")]
    pub companion_polynomial: Vec<i64>,
    #[serde(with = "crate::serde_str")]
    pub winding_number: i64,
    #[serde(with = "crate::serde_str::vec")]
    pub satellite_polynomial: Vec<i64>,
    pub trivial: bool,
    /// Trivial Alexander polynomial implies topological sliceness (Freedman).
    pub topologically_slice: bool,
}

/// Alexander polynomial of the positive torus knot,
/// `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))`, constant term first.
pub fn torus_knot_alexander(p: u64, q: u64) -> Vec<i64> {
    let (p, q) = (p as usize, q as usize);
    let mut numer = poly_mul(&binomial(p * q), &binomial(1));
    for d in [p, q] {
        numer = poly_div_exact(&numer, &binomial(d));
    }
    numer
}

/// `t^d - 1`
fn binomial(d: usize) -> Vec<i64> {
    let mut v = vec![0; d + 1];
    v[0] = -1;
    v[d] = 1;
    v
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Division by a monic polynomial that must leave no remainder.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

/// Alexander polynomial of `D_n(T_{p,q})` via the satellite formula
/// `Δ_{P(K)}(t) = Δ_P(t) · Δ_K(t^w)`. The pattern is unknotted in `S³` and,
/// with `n` even, has linking number zero with the axis, so `w = 0` and the
/// result is the constant `Δ_K(1) = 1`.
pub fn satellite_alexander_trivial(s: &SatelliteParams) -> AlexanderReport {
    let pattern = vec![1i64];
    let companion = torus_knot_alexander(s.p(), s.q());
    let winding_number = 0i64;
    // Δ_K(t^0) collapses to the constant Δ_K(1).
    let companion_at_one: i64 = companion.iter().sum();
    let satellite: Vec<i64> = pattern.iter().map(|c| c * companion_at_one).collect();
    let trivial = satellite == [1];
    AlexanderReport {
        pattern_polynomial: pattern,
        companion_polynomial: companion,
        winding_number,
        satellite_polynomial: satellite,
        trivial,
        topologically_slice: trivial,
    }
}

/// Exterior of the `(2, -2n)` torus link `A₁ ⊔ A₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusLinkExterior {
    #[serde(with = "crate::serde_str")]
    pub p: i64,
    #[serde(with = "crate::serde_str")]
    pub q: i64,
    pub components: [String; 2],
}

/// `Σ₂(D_n(K)) = (S³ ∖ N(T_{2,-2n})) ∪_φ 2(S³ ∖ N(K))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDecomposition {
    pub params: SatelliteParams,
    pub exterior_link: TorusLinkExterior,
    /// Companion torus knot `(p, q)`.
    #[serde(with = "crate::serde_str::vec")]
    pub companion: Vec<u64>,
    #[serde(with = "crate::serde_str")]
    pub companion_copies: u64,
    /// `φᵢ`: `(μ_K, λ_K)` of the i-th companion copy into `(μ_{Aᵢ}, λ_{Aᵢ})`.
    pub gluings: [TorusGluingMap; 2],
}

/// `φ_*(μ_K) = -n·μ_A + λ_A`, `φ_*(λ_K) = μ_A`.
pub fn pattern_gluing(n: u64) -> TorusGluingMap {
    let n = n as i64;
    TorusGluingMap::from_images([-n, 1], [1, 0]).expect("determinant is -1")
}

pub fn double_cover_decomposition(s: &SatelliteParams) -> CoverDecomposition {
    let phi = pattern_gluing(s.n());
    CoverDecomposition {
        params: *s,
        exterior_link: TorusLinkExterior {
            p: 2,
            q: -2 * s.n() as i64,
            components: ["A1".into(), "A2".into()],
        },
        companion: vec![s.p(), s.q()],
        companion_copies: 2,
        gluings: [phi, phi],
    }
}

/// The primitive class `a·μ + b·λ` sent by `g` onto `killed`, which bounds a
/// disk in the filling solid torus; i.e. the surgery slope `a/b`.
pub fn slope_from_filling(g: &TorusGluingMap, killed: BasisCurve) -> Slope {
    let [a, b] = g.inverse().apply(killed.vector());
    assert_eq!(g.apply([a, b]), killed.vector(), "unimodular maps are invertible");
    Slope::new(a, b).expect("a basis vector has a nonzero preimage")
}

/// Which family of crossing-change circles is surgered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingCircles {
    /// `γ⁺`, framing `+1`.
    Plus,
    /// `γ⁻`, framing `-1`.
    Minus,
}

/// `ψ±` on one link component after the `n` crossing changes unlinking
/// `T_{2,-2n}`: `μ_A ↦ μ_U`, `λ_A ↦ (∓n)·μ_U + λ_U`.
pub fn unlinking_map(n: u64, circles: CrossingCircles) -> TorusGluingMap {
    let twist = match circles {
        CrossingCircles::Plus => -(n as i64),
        CrossingCircles::Minus => n as i64,
    };
    TorusGluingMap::from_images([1, 0], [twist, 1]).expect("shear has determinant 1")
}

/// `θ`: the unknot exterior as a solid torus, `μ_U ↦ l = [S¹]`,
/// `λ_U ↦ m = [∂D²]`, written in the `(m, l)` basis.
pub fn solid_torus_identification() -> TorusGluingMap {
    TorusGluingMap::from_images([0, 1], [1, 0]).expect("swap has determinant -1")
}

/// The composite `h± = θ ∘ ψ± ∘ φ`, sending `(μ_K, λ_K)` into `(m, l)`.
pub fn crossing_change_filling(n: u64, circles: CrossingCircles) -> TorusGluingMap {
    solid_torus_identification()
        .after(&unlinking_map(n, circles))
        .after(&pattern_gluing(n))
}

/// Oriented closed 3-manifold produced by a surgery identification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Manifold {
    ThreeSphere,
    Brieskorn { sphere: BrieskornSphere },
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Manifold::ThreeSphere => f.write_str("S³"),
            Manifold::Brieskorn { sphere } => sphere.fmt(f),
        }
    }
}

/// `S³_{1/m}(T_{p,q}) ≅ -Σ(p, q, mpq - 1)` for `m ≥ 1`, and `S³_{1/0}(K) = S³`.
pub fn moser_identify(p: u64, q: u64, slope: &Slope) -> Result<Manifold, CoverError> {
    let pair = FamilyTriple::new(p, q, 1)?;
    let m = slope
        .reciprocal_denominator()
        .ok_or_else(|| CoverError::UnsupportedSlope(slope.clone()))?;
    if m == &BigInt::from(0) {
        return Ok(Manifold::ThreeSphere);
    }
    let third = m
        .to_u64()
        .and_then(|m| m.checked_mul(pair.p()))
        .and_then(|v| v.checked_mul(pair.q()))
        .map(|v| v - 1)
        .ok_or_else(|| InvalidParams::new(format!("m*p*q overflows for slope {slope}")))?;
    let sphere = BrieskornSphere::new(p, q, third, Orientation::Negative)?;
    Ok(Manifold::Brieskorn { sphere })
}
