//! The three definite cobordisms out of `Σ₂(D_n(T_{p,q}))`.
//!
//! * `Z(n,p,q)`: 2-handles along `c` crossing-change circles of the companion
//!   with framing `-1`; negative definite, ends at `-Σ(p,q,npq-1)`.
//! * `R(n,p,q)`: 2-handles along the `n` clasp circles `γ⁻` with framing
//!   `-1`; negative definite, ends at `S³`, which is then capped off.
//! * `P(n,p,q)`: 2-handles along `γ⁺` with framing `+1`; positive definite,
//!   ends at two copies of `-Σ(p,q,2npq-1)`.
//!
//! Records carry boundary data and the intersection form; the surgery slope
//! of each outgoing end is derived through the gluing calculus in
//! [`crate::covers`] rather than written down.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covers::{
    crossing_change_filling, moser_identify, pattern_gluing, slope_from_filling, BasisCurve, CoverError,
    CrossingCircles, Manifold,
};
use crate::exactmath::{definiteness, Definiteness, Slope, SymIntMatrix};
use crate::fs_invariant::{BrieskornSphere, Orientation};
use crate::params::{InvalidParams, SatelliteParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CobordismError {
    #[error(transparent)]
    InvalidParams(#[from] InvalidParams),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

impl CobordismError {
    pub fn name(&self) -> &'static str {
        match self {
            CobordismError::InvalidParams(_) => "InvalidParams",
            CobordismError::Cover(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BoundaryKind {
    Cover {
        params: SatelliteParams,
        orientation: Orientation,
    },
    Brieskorn {
        sphere: BrieskornSphere,
    },
    ThreeSphere,
}

impl BoundaryKind {
    pub fn reversed(&self) -> Self {
        match *self {
            BoundaryKind::Cover { params, orientation } => BoundaryKind::Cover {
                params,
                orientation: orientation.reversed(),
            },
            BoundaryKind::Brieskorn { sphere } => BoundaryKind::Brieskorn { sphere: sphere.reverse() },
            BoundaryKind::ThreeSphere => BoundaryKind::ThreeSphere,
        }
    }
}

impl From<Manifold> for BoundaryKind {
    fn from(m: Manifold) -> Self {
        match m {
            Manifold::ThreeSphere => BoundaryKind::ThreeSphere,
            Manifold::Brieskorn { sphere } => BoundaryKind::Brieskorn { sphere },
        }
    }
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryKind::Cover { params, orientation } => {
                let sign = if *orientation == Orientation::Negative { "-" } else { "" };
                write!(f, "{sign}Σ₂({params})")
            }
            BoundaryKind::Brieskorn { sphere } => sphere.fmt(f),
            BoundaryKind::ThreeSphere => f.write_str("S³"),
        }
    }
}

/// `multiplicity` disjoint copies of one oriented 3-manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub kind: BoundaryKind,
    #[serde(with = "crate::serde_str")]
    pub multiplicity: u64,
}

impl BoundaryComponent {
    pub fn new(kind: BoundaryKind, multiplicity: u64) -> Self {
        assert!(multiplicity >= 1, "boundary multiplicity must be positive");
        BoundaryComponent { kind, multiplicity }
    }

    pub fn reversed(&self) -> Self {
        BoundaryComponent {
            kind: self.kind.reversed(),
            multiplicity: self.multiplicity,
        }
    }
}

impl fmt::Display for BoundaryComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity == 1 {
            self.kind.fmt(f)
        } else {
            write!(f, "{}×{}", self.multiplicity, self.kind)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CobordismLabel {
    Z,
    R,
    P,
}

impl fmt::Display for CobordismLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for CobordismLabel {
    type Err = InvalidParams;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" | "z" => Ok(CobordismLabel::Z),
            "R" | "r" => Ok(CobordismLabel::R),
            "P" | "p" => Ok(CobordismLabel::P),
            _ => Err(InvalidParams::new(format!("unknown cobordism label {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordismRecord {
    pub label: CobordismLabel,
    pub params: SatelliteParams,
    /// True after an odd number of [`reverse_orientation`] calls.
    pub reversed: bool,
    pub incoming: BoundaryComponent,
    pub outgoing: Vec<BoundaryComponent>,
    /// Slope of the Dehn surgery on `T_{p,q}` realized by the outgoing end.
    pub surgery_slope: Slope,
    pub form: SymIntMatrix,
    pub definiteness: Definiteness,
    pub h1_z2_trivial: bool,
    #[serde(with = "crate::serde_str")]
    pub handle_count: u64,
}

/// Linking matrix of `count` unlinked unknots, each with the given framing.
/// The Seifert disks of the attaching circles are disjoint from the other
/// components, so every off-diagonal linking number is zero.
fn framed_unlink_form(count: usize, framing: i64) -> SymIntMatrix {
    if framing < 0 {
        SymIntMatrix::neg_identity(count)
    } else {
        SymIntMatrix::identity(count)
    }
}

fn record(
    label: CobordismLabel,
    params: &SatelliteParams,
    outgoing: Vec<BoundaryComponent>,
    surgery_slope: Slope,
    form: SymIntMatrix,
    handle_count: u64,
) -> CobordismRecord {
    CobordismRecord {
        label,
        params: *params,
        reversed: false,
        incoming: BoundaryComponent::new(
            BoundaryKind::Cover {
                params: *params,
                orientation: Orientation::Positive,
            },
            1,
        ),
        outgoing,
        surgery_slope,
        definiteness: definiteness(&form),
        form,
        // H₁(-; ℤ) vanishes for all three constructions.
        h1_z2_trivial: true,
        handle_count,
    }
}

/// Unknotting number of the positive torus knot, `(p-1)(q-1)/2`.
pub fn torus_unknotting_number(p: u64, q: u64) -> u64 {
    (p - 1) * (q - 1) / 2
}

/// Negative definite `Z(n,p,q)` from `Σ₂(D_n(T_{p,q}))` to `-Σ(p,q,npq-1)`.
///
/// `crossings` is the number of positive-to-negative crossing changes used to
/// unknot the companion; it defaults to the unknotting number.
pub fn build_z(params: &SatelliteParams, crossings: Option<u64>) -> Result<CobordismRecord, CobordismError> {
    let c = crossings.unwrap_or_else(|| torus_unknotting_number(params.p(), params.q()));
    if c == 0 {
        return Err(InvalidParams::new("crossing count must be positive").into());
    }
    // Surgering one companion copy fills A₂, leaving the exterior of the
    // unknot A₁: a solid torus in which λ_{A₁} bounds. Pull back through φ₁.
    let slope = slope_from_filling(&pattern_gluing(params.n()), BasisCurve::Longitude);
    let end = moser_identify(params.p(), params.q(), &slope)?;
    Ok(record(
        CobordismLabel::Z,
        params,
        vec![BoundaryComponent::new(end.into(), 1)],
        slope,
        framed_unlink_form(c as usize, -1),
        c,
    ))
}

fn build_clasp(params: &SatelliteParams, circles: CrossingCircles) -> Result<CobordismRecord, CobordismError> {
    let filling = crossing_change_filling(params.n(), circles);
    let slope = slope_from_filling(&filling, BasisCurve::Meridian);
    let end = moser_identify(params.p(), params.q(), &slope)?;
    let n = params.n();
    let (label, framing, outgoing) = match (circles, end) {
        // S³ # S³ = S³, capped with a 4-ball.
        (CrossingCircles::Minus, Manifold::ThreeSphere) => (CobordismLabel::R, -1, vec![]),
        // A connected sum of two copies, split into a disjoint union by a
        // 3-handle.
        (CrossingCircles::Plus, Manifold::Brieskorn { .. }) => {
            (CobordismLabel::P, 1, vec![BoundaryComponent::new(end.into(), 2)])
        }
        (_, other) => unreachable!("unexpected end {other} for {circles:?}"),
    };
    Ok(record(label, params, outgoing, slope, framed_unlink_form(n as usize, framing), n))
}

/// Negative definite `R(n,p,q)` from `Σ₂(D_n(T_{p,q}))` to `S³`, capped.
pub fn build_r(params: &SatelliteParams) -> Result<CobordismRecord, CobordismError> {
    build_clasp(params, CrossingCircles::Minus)
}

/// Positive definite `P(n,p,q)` from `Σ₂(D_n(T_{p,q}))` to
/// `2·(-Σ(p,q,2npq-1))`.
pub fn build_p(params: &SatelliteParams) -> Result<CobordismRecord, CobordismError> {
    build_clasp(params, CrossingCircles::Plus)
}

pub fn build(label: CobordismLabel, params: &SatelliteParams, crossings: Option<u64>) -> Result<CobordismRecord, CobordismError> {
    match label {
        CobordismLabel::Z => build_z(params, crossings),
        CobordismLabel::R => build_r(params),
        CobordismLabel::P => build_p(params),
    }
}

/// The same cobordism with the opposite orientation.
pub fn reverse_orientation(r: &CobordismRecord) -> CobordismRecord {
    CobordismRecord {
        reversed: !r.reversed,
        incoming: r.incoming.reversed(),
        outgoing: r.outgoing.iter().map(BoundaryComponent::reversed).collect(),
        form: r.form.negated(),
        definiteness: r.definiteness.reversed(),
        ..r.clone()
    }
}

/// Checks the label-specific shape of an unreversed record. Returns the first
/// violated property.
pub fn check_record(r: &CobordismRecord) -> Result<(), String> {
    if r.reversed {
        return check_record(&reverse_orientation(r));
    }
    let s = &r.params;
    let sphere = |k: u64| {
        BrieskornSphere::new(s.p(), s.q(), k * s.p() * s.q() - 1, Orientation::Negative)
            .expect("valid Brieskorn multiplicities")
    };
    let c = r.handle_count as usize;
    let (form, outgoing) = match r.label {
        CobordismLabel::Z => (
            SymIntMatrix::neg_identity(c),
            vec![BoundaryComponent::new(BoundaryKind::Brieskorn { sphere: sphere(s.n()) }, 1)],
        ),
        CobordismLabel::R => (SymIntMatrix::neg_identity(s.n() as usize), vec![]),
        CobordismLabel::P => (
            SymIntMatrix::identity(s.n() as usize),
            vec![BoundaryComponent::new(BoundaryKind::Brieskorn { sphere: sphere(2 * s.n()) }, 2)],
        ),
    };
    let expected_class = match r.label {
        CobordismLabel::P => Definiteness::PositiveDefinite,
        _ => Definiteness::NegativeDefinite,
    };
    if r.form != form {
        return Err(format!("{} form is {}, expected {}", r.label, r.form, form));
    }
    if r.outgoing != outgoing {
        return Err(format!("{} outgoing boundary does not match", r.label));
    }
    if r.definiteness != expected_class || definiteness(&r.form) != expected_class {
        return Err(format!("{} is {}, expected {}", r.label, r.definiteness, expected_class));
    }
    if !r.h1_z2_trivial {
        return Err(format!("{} has nontrivial H1(-; Z/2)", r.label));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sat(n: u64, p: u64, q: u64) -> SatelliteParams {
        SatelliteParams::new(n, p, q).unwrap()
    }

    fn neg_sphere(a: u64, b: u64, c: u64) -> BoundaryKind {
        BoundaryKind::Brieskorn {
            sphere: BrieskornSphere::new(a, b, c, Orientation::Negative).unwrap(),
        }
    }

    #[test]
    fn z_examples() {
        let z = build_z(&sat(2, 2, 3), None).unwrap();
        assert_eq!(z.outgoing, vec![BoundaryComponent::new(neg_sphere(2, 3, 11), 1)]);
        assert_eq!(z.form, SymIntMatrix::neg_identity(1));
        assert_eq!(z.handle_count, 1);
        assert_eq!(z.surgery_slope, Slope::reciprocal(2));
        let z = build_z(&sat(2, 2, 5), None).unwrap();
        assert_eq!(z.outgoing[0].kind, neg_sphere(2, 5, 19));
        assert_eq!(z.handle_count, 2);
        assert_eq!(z.definiteness, Definiteness::NegativeDefinite);
        check_record(&z).unwrap();
    }

    #[test]
    fn z_crossing_override() {
        let z = build_z(&sat(2, 2, 3), Some(3)).unwrap();
        assert_eq!(z.form, SymIntMatrix::neg_identity(3));
        check_record(&z).unwrap();
        assert_eq!(build_z(&sat(2, 2, 3), Some(0)).unwrap_err().name(), "InvalidParams");
    }

    #[test]
    fn r_examples() {
        let r = build_r(&sat(2, 2, 3)).unwrap();
        assert_eq!(r.form, SymIntMatrix::neg_identity(2));
        assert!(r.outgoing.is_empty());
        assert!(r.h1_z2_trivial);
        assert_eq!(r.surgery_slope, Slope::infinity());
        assert_eq!(build_r(&sat(4, 2, 3)).unwrap().form, SymIntMatrix::neg_identity(4));
        check_record(&r).unwrap();
    }

    #[test]
    fn p_examples() {
        let p = build_p(&sat(2, 2, 3)).unwrap();
        assert_eq!(p.outgoing, vec![BoundaryComponent::new(neg_sphere(2, 3, 23), 2)]);
        assert_eq!(p.definiteness, Definiteness::PositiveDefinite);
        let p = build_p(&sat(2, 2, 5)).unwrap();
        assert_eq!(p.outgoing[0].kind, neg_sphere(2, 5, 39));
        assert_eq!(p.surgery_slope, Slope::reciprocal(4));
        check_record(&p).unwrap();
    }

    #[test]
    fn reversal() {
        let p = build_p(&sat(2, 2, 3)).unwrap();
        let rp = reverse_orientation(&p);
        assert_eq!(rp.form, SymIntMatrix::neg_identity(2));
        assert_eq!(
            rp.outgoing,
            vec![BoundaryComponent::new(neg_sphere(2, 3, 23).reversed(), 2)]
        );
        assert_eq!(rp.definiteness, Definiteness::NegativeDefinite);
        assert_eq!(reverse_orientation(&rp), p);
        check_record(&rp).unwrap();
        let r = build_r(&sat(2, 2, 3)).unwrap();
        assert_eq!(reverse_orientation(&r).form, SymIntMatrix::identity(2));
    }

    #[test]
    fn check_record_catches_tampering() {
        let mut z = build_z(&sat(2, 2, 3), None).unwrap();
        z.form = SymIntMatrix::identity(1);
        assert!(check_record(&z).is_err());
    }

    #[test]
    fn label_parsing() {
        assert_eq!("Z".parse::<CobordismLabel>().unwrap(), CobordismLabel::Z);
        assert!("Q".parse::<CobordismLabel>().is_err());
    }
}
