//! Furuta chains, the closed-up negative definite manifold `X`, and
//! independence certificates for families `D_{nᵢ}(T_{pᵢ,qᵢ})`.
//!
//! A relation `Σ cᵢ [Σ₂(D_{nᵢ}(T_{pᵢ,qᵢ}))] = 0` would give a ℤ/2-homology
//! ball `Q`. Capping one copy of the last cover with `Z`, the remaining
//! positive copies with `R`, and the negative copies with `-P` gives a
//! negative definite `X` with `H₁(X; ℤ/2) = 0` whose Seifert fibered ends are
//! ruled out by the instanton obstruction as soon as
//!
//! ```text
//! pᵢqᵢ(2nᵢpᵢqᵢ - 1) < pᵢ₊₁qᵢ₊₁(nᵢ₊₁pᵢ₊₁qᵢ₊₁ - 1)
//! ```
//!
//! holds along the family. Only that inequality depends on the input; the
//! rest of the argument is uniform and is recorded, not re-proved, here.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cobordisms::{
    build_p, build_r, build_z, reverse_orientation, BoundaryComponent, CobordismError, CobordismLabel,
    CobordismRecord,
};
use crate::cs_invariants::{compactness_check, CompactnessReport};
use crate::exactmath::{definiteness, direct_sum, gcd_u64, Definiteness, SymIntMatrix};
use crate::params::{FamilyTriple, InvalidParams, SatelliteParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error(transparent)]
    InvalidParams(#[from] InvalidParams),
    #[error("every coefficient is zero")]
    AllZeroCoefficients,
    #[error(transparent)]
    Cobordism(#[from] CobordismError),
}

impl ObstructionError {
    pub fn name(&self) -> &'static str {
        match self {
            ObstructionError::InvalidParams(_) => "InvalidParams",
            ObstructionError::AllZeroCoefficients => "AllZeroCoefficients",
            ObstructionError::Cobordism(e) => e.name(),
        }
    }
}

/// Nonempty ordered list of satellites.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<SatelliteParams>", into = "Vec<SatelliteParams>")]
pub struct Family {
    members: Vec<SatelliteParams>,
}

impl Family {
    pub fn new(members: Vec<SatelliteParams>) -> Result<Self, InvalidParams> {
        if members.is_empty() {
            return Err(InvalidParams::new("a family needs at least one member"));
        }
        Ok(Family { members })
    }

    pub fn members(&self) -> &[SatelliteParams] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> &SatelliteParams {
        self.members.last().expect("nonempty")
    }

    pub fn push(&mut self, member: SatelliteParams) {
        self.members.push(member);
    }
}

impl TryFrom<Vec<SatelliteParams>> for Family {
    type Error = InvalidParams;

    fn try_from(v: Vec<SatelliteParams>) -> Result<Self, Self::Error> {
        Family::new(v)
    }
}

impl From<Family> for Vec<SatelliteParams> {
    fn from(f: Family) -> Self {
        f.members
    }
}

/// Parses `"n,p,q;n,p,q;..."`.
impl FromStr for Family {
    type Err = InvalidParams;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let members = s
            .split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<SatelliteParams>, _>>()?;
        Family::new(members)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{},{},{}", m.n(), m.p(), m.q())?;
        }
        Ok(())
    }
}

/// One link of a chain: `lhs < rhs` between consecutive members `index` and
/// `index + 1` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCheck {
    #[serde(with = "crate::serde_str")]
    pub index: usize,
    #[serde(with = "crate::serde_str")]
    pub lhs: BigInt,
    #[serde(with = "crate::serde_str")]
    pub rhs: BigInt,
    pub ok: bool,
}

impl ChainCheck {
    fn new(index: usize, lhs: BigInt, rhs: BigInt) -> Self {
        ChainCheck {
            index,
            ok: lhs < rhs,
            lhs,
            rhs,
        }
    }
}

/// Strict growth of `pᵢqᵢ(kᵢpᵢqᵢ - 1)` along a list of Brieskorn parameters.
pub fn furuta_chain(triples: &[FamilyTriple]) -> Vec<ChainCheck> {
    triples
        .windows(2)
        .enumerate()
        .map(|(i, w)| ChainCheck::new(i + 1, w[0].chain_term(), w[1].chain_term()))
        .collect()
}

pub fn furuta_chain_check(triples: &[FamilyTriple]) -> Vec<bool> {
    furuta_chain(triples).into_iter().map(|c| c.ok).collect()
}

/// The satellite chain: `lhsᵢ = pᵢqᵢ(2nᵢpᵢqᵢ - 1)`,
/// `rhsᵢ = pᵢ₊₁qᵢ₊₁(nᵢ₊₁pᵢ₊₁qᵢ₊₁ - 1)`.
pub fn satellite_chain(members: &[SatelliteParams]) -> Vec<ChainCheck> {
    members
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            ChainCheck::new(
                i + 1,
                w[0].doubled_triple().chain_term(),
                w[1].single_triple().chain_term(),
            )
        })
        .collect()
}

/// One kind of cobordism glued onto `copies` boundary pieces of `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachedPiece {
    pub label: CobordismLabel,
    /// 1-based position in the family.
    #[serde(with = "crate::serde_str")]
    pub member: usize,
    pub reversed: bool,
    #[serde(with = "crate::serde_str")]
    pub copies: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssembledManifold {
    /// Coefficients actually used, after normalization.
    #[serde(with = "crate::serde_str::vec")]
    pub coefficients: Vec<i64>,
    /// Set when every coefficient was negated to make the last nonzero one
    /// positive (mirroring the whole relation).
    pub normalized: bool,
    /// 1-based index of the member capped by `Z`.
    #[serde(with = "crate::serde_str")]
    pub terminal_index: usize,
    pub pieces: Vec<AttachedPiece>,
    pub boundary: Vec<BoundaryComponent>,
    pub form: SymIntMatrix,
    pub definiteness: Definiteness,
    pub h1_z2_trivial: bool,
    /// `(p, q, k)` of the Seifert ends: the terminal `-Σ(p_N, q_N, n_N p_N q_N - 1)`
    /// and every `Σ(pᵢ, qᵢ, 2nᵢpᵢqᵢ - 1)` coming from a `-P`.
    pub terminal_triple: FamilyTriple,
    pub doubled_triples: Vec<FamilyTriple>,
}

fn push_boundary(boundary: &mut Vec<BoundaryComponent>, piece: &BoundaryComponent, copies: u64) {
    let add = piece.multiplicity * copies;
    match boundary.iter_mut().find(|b| b.kind == piece.kind) {
        Some(existing) => existing.multiplicity += add,
        None => boundary.push(BoundaryComponent::new(piece.kind, add)),
    }
}

/// Builds `X = Q ∪ Z ∪ (copies of R) ∪ (copies of -P)` for the relation with
/// the given coefficients.
///
/// Members after the last nonzero coefficient take no part. If that last
/// coefficient is negative the whole relation is negated first. `Z` is
/// attached once, for the last member; every member with `cᵢ > 0` gets `cᵢ`
/// copies of `R` (the terminal one included) and every member with `cᵢ < 0`
/// gets `|cᵢ|` copies of `-P`.
pub fn assemble_x(family: &Family, coefficients: &[i64]) -> Result<AssembledManifold, ObstructionError> {
    if coefficients.len() != family.len() {
        return Err(InvalidParams::new(format!(
            "{} coefficients for a family of {}",
            coefficients.len(),
            family.len()
        ))
        .into());
    }
    let last = coefficients
        .iter()
        .rposition(|&c| c != 0)
        .ok_or(ObstructionError::AllZeroCoefficients)?;
    let normalized = coefficients[last] < 0;
    let coefficients: Vec<i64> = if normalized {
        coefficients.iter().map(|&c| -c).collect()
    } else {
        coefficients.to_vec()
    };

    let mut pieces = Vec::new();
    let mut blocks: Vec<SymIntMatrix> = Vec::new();
    let mut boundary: Vec<BoundaryComponent> = Vec::new();
    let mut h1_z2_trivial = true;
    let mut doubled_triples = Vec::new();

    let mut attach = |record: CobordismRecord, member: usize, copies: u64| {
        for _ in 0..copies {
            blocks.push(record.form.clone());
        }
        for end in &record.outgoing {
            push_boundary(&mut boundary, end, copies);
        }
        h1_z2_trivial &= record.h1_z2_trivial;
        pieces.push(AttachedPiece {
            label: record.label,
            member: member + 1,
            reversed: record.reversed,
            copies,
        });
    };

    let members = family.members();
    attach(build_z(&members[last], None)?, last, 1);
    for (i, (m, &c)) in members.iter().zip(&coefficients).enumerate().take(last + 1) {
        if c > 0 {
            attach(build_r(m)?, i, c as u64);
        } else if c < 0 {
            attach(reverse_orientation(&build_p(m)?), i, c.unsigned_abs());
            doubled_triples.push(m.doubled_triple());
        }
    }

    let form = direct_sum(&blocks);
    let class = definiteness(&form);
    assert_eq!(class, Definiteness::NegativeDefinite, "X must be negative definite");
    Ok(AssembledManifold {
        coefficients,
        normalized,
        terminal_index: last + 1,
        pieces,
        boundary,
        form,
        definiteness: class,
        h1_z2_trivial,
        terminal_triple: members[last].single_triple(),
        doubled_triples,
    })
}

/// Compactness inequalities for the Seifert ends of an assembled `X`.
pub fn assembly_compactness(x: &AssembledManifold) -> CompactnessReport {
    compactness_check(&x.doubled_triples, &x.terminal_triple)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Verdict {
    Independent,
    /// The chain inequality between members `index` and `index + 1` fails.
    CriterionFails {
        #[serde(with = "crate::serde_str")]
        index: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceCertificate {
    pub family: Family,
    pub chain_checks: Vec<ChainCheck>,
    #[serde(with = "crate::serde_str::option_vec")]
    pub coefficients_tested: Option<Vec<i64>>,
    pub normalized: bool,
    pub assembled_boundary: Vec<BoundaryComponent>,
    pub total_form: SymIntMatrix,
    pub total_form_definiteness: Definiteness,
    pub h1_z2_trivial: bool,
    pub verdict: Verdict,
}

impl IndependenceCertificate {
    pub fn is_independent(&self) -> bool {
        self.verdict == Verdict::Independent
    }
}

/// Checks the chain inequality along `family` and assembles `X` for the
/// given relation (all coefficients `+1` when none is supplied).
pub fn certify_family(
    family: &Family,
    coefficients: Option<&[i64]>,
) -> Result<IndependenceCertificate, ObstructionError> {
    let chain_checks = satellite_chain(family.members());
    let verdict = chain_checks
        .iter()
        .find(|c| !c.ok)
        .map_or(Verdict::Independent, |c| Verdict::CriterionFails { index: c.index });
    let canonical = vec![1i64; family.len()];
    let x = assemble_x(family, coefficients.unwrap_or(&canonical))?;
    Ok(IndependenceCertificate {
        family: family.clone(),
        chain_checks,
        coefficients_tested: coefficients.map(<[i64]>::to_vec),
        normalized: x.normalized,
        assembled_boundary: x.boundary,
        total_form: x.form,
        total_form_definiteness: x.definiteness,
        h1_z2_trivial: x.h1_z2_trivial,
        verdict,
    })
}

/// Smallest even `n ≥ 2` with `pq(npq - 1) > bound`.
fn minimal_even_n(pq: u64, bound: &BigInt) -> u64 {
    let pq_big = BigInt::from(pq);
    // pq(npq - 1) > bound  <=>  npq > bound/pq + 1  <=>  n > (bound/pq + 1)/pq
    let threshold = bound.div_floor(&pq_big) + BigInt::one();
    let n = threshold.div_floor(&pq_big) + BigInt::one();
    let n: u64 = n.try_into().expect("n fits in u64");
    let n = n.max(2);
    let n = if n % 2 == 0 { n } else { n + 1 };
    debug_assert!(pq_big.clone() * (BigInt::from(n) * &pq_big - 1) > *bound);
    n
}

/// The next satellite extending `prefix` so the chain inequality holds.
///
/// Candidates are ordered by `pq` ascending, then `q - p` ascending (with
/// `p < q`), then `n` ascending; with `fix_n` only that twist count is
/// considered. The search always terminates since the right-hand side grows
/// without bound in `pq`.
pub fn next_member(prefix: &Family, fix_n: Option<u64>) -> Result<SatelliteParams, InvalidParams> {
    if let Some(n) = fix_n {
        SatelliteParams::new(n, 2, 3)?;
    }
    let bound = prefix.last().doubled_triple().chain_term();
    for product in 6u64.. {
        let sqrt = (product as f64).sqrt() as u64 + 1;
        // p descending from sqrt(product) is q - p ascending.
        for p in (2..=sqrt.min(product)).rev() {
            if product % p != 0 {
                continue;
            }
            let q = product / p;
            if q <= p || gcd_u64(p, q) != 1 {
                continue;
            }
            let n = match fix_n {
                Some(n) => {
                    let term = FamilyTriple::new(p, q, n)?.chain_term();
                    if term <= bound {
                        continue;
                    }
                    n
                }
                None => minimal_even_n(product, &bound),
            };
            return SatelliteParams::new(n, p, q);
        }
    }
    unreachable!("product search is unbounded")
}

/// `start` followed by `count - 1` successive [`next_member`] results.
pub fn generate_family(start: SatelliteParams, count: usize, fix_n: Option<u64>) -> Result<Family, InvalidParams> {
    let mut family = Family::new(vec![start])?;
    while family.len() < count {
        let next = next_member(&family, fix_n)?;
        family.push(next);
    }
    Ok(family)
}

/// Row of a generated table: the member, its doubled chain term (`lhs`) and
/// its single chain term (`rhs`). Consecutive rows satisfy
/// `rows[i].lhs < rows[i + 1].rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRow {
    #[serde(with = "crate::serde_str")]
    pub index: usize,
    #[serde(with = "crate::serde_str")]
    pub n: u64,
    #[serde(with = "crate::serde_str")]
    pub p: u64,
    #[serde(with = "crate::serde_str")]
    pub q: u64,
    #[serde(with = "crate::serde_str")]
    pub lhs: BigInt,
    #[serde(with = "crate::serde_str")]
    pub rhs: BigInt,
}

pub fn chain_table(family: &Family) -> Vec<ChainRow> {
    family
        .members()
        .iter()
        .enumerate()
        .map(|(i, m)| ChainRow {
            index: i + 1,
            n: m.n(),
            p: m.p(),
            q: m.q(),
            lhs: m.doubled_triple().chain_term(),
            rhs: m.single_triple().chain_term(),
        })
        .collect()
}

/// Coefficient vector `[-1, ..., -1, +1]`: every earlier member is capped by
/// `-P`, which puts all doubled Seifert ends into the boundary of `X`.
pub fn all_doubled_coefficients(len: usize) -> Vec<i64> {
    let mut c = vec![-1i64; len];
    if let Some(last) = c.last_mut() {
        *last = 1;
    }
    c
}
