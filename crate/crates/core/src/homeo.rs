//! Homeomorphism types of simply connected members of the catalogue and the
//! search for homeomorphic pairs where only one side can be Einstein.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::obstructions::{obstruct, Criterion, ObstructionReport, Verdict};
use crate::rational::serde_int;
use crate::surface::{CharNumbers, Family, SpinStatus, SurfaceSpec};

/// Provenance attached to Kähler-Einstein witnesses.
pub const KE_PROVENANCE: &str = "Aubin/Yau: canonical ample";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormParity {
    Odd,
    Even,
}

/// `a·CP₂ # b·C̄P₂` for odd forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomeoType {
    #[serde(with = "serde_int")]
    pub a: BigInt,
    #[serde(with = "serde_int")]
    pub b: BigInt,
    pub form_parity: FormParity,
}

impl fmt::Display for HomeoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} CP2 # {} CP2bar", self.a, self.b)
    }
}

/// Freedman's classification, restricted to odd forms.
pub fn freedman_type(m: &CharNumbers) -> Result<HomeoType> {
    if !m.simply_connected() {
        return Err(Error::Inapplicable("not simply connected".into()));
    }
    match m.spin_status() {
        SpinStatus::NonSpin => Ok(HomeoType { a: m.b_plus().clone(), b: m.b_minus().clone(), form_parity: FormParity::Odd }),
        SpinStatus::Spin => Err(Error::Unsupported("even intersection forms are not classified".into())),
        SpinStatus::Unknown => Err(Error::Unsupported("parity of the intersection form is unknown".into())),
    }
}

pub fn homeomorphic(m: &CharNumbers, n: &CharNumbers) -> Result<bool> {
    Ok(freedman_type(m)? == freedman_type(n)?)
}

/// A minimal surface on the Noether line `c₁² = 2p_g − 4` with the given numbers:
/// a double cover of the quadric when `c₁² ≡ 0 mod 4`, otherwise the abstract model.
pub fn noether_partner(c1sq: &BigInt, p_g: &BigInt) -> Option<SurfaceSpec> {
    if *c1sq != BigInt::from(2) * p_g - 4 || *p_g < BigInt::from(3) {
        return None;
    }
    let (quarter, rem) = c1sq.div_rem(&BigInt::from(4));
    let b: BigInt = quarter + 2;
    let family = if rem == BigInt::from(0) && b >= BigInt::from(3) {
        Family::QuadricBicover(3, b.to_u64()?)
    } else {
        Family::AbstractNoetherLine { c1sq: c1sq.to_u64()?, p_g: p_g.to_u64()? }
    };
    Some(SurfaceSpec::new(family))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KStrategy {
    /// `k = k_min` of the 25/57 criterion.
    MinThreshold,
    /// `k = c₁²(X) − (2p_g − 4)`, moving the blow-up onto the Noether line.
    NoetherMatch,
}

impl KStrategy {
    pub fn describe(self) -> &'static str {
        match self {
            KStrategy::MinThreshold => "k = smallest blow-up count obstructed by the 25/57 criterion",
            KStrategy::NoetherMatch => "k = c1^2(X) - (2 p_g - 4), chosen so the blow-up has Noether-line numbers; accepted when k >= k_min",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomeoCertificate {
    #[serde(with = "serde_int")]
    pub chi: BigInt,
    #[serde(with = "serde_int")]
    pub tau: BigInt,
    #[serde(with = "serde_int")]
    pub b_plus: BigInt,
    #[serde(with = "serde_int")]
    pub b_minus: BigInt,
    pub parity: FormParity,
    /// `τ mod 16`; nonzero certifies the witness is not spin.
    pub witness_tau_mod_16: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExoticPair {
    pub obstructed: SurfaceSpec,
    pub einstein_witness: SurfaceSpec,
    pub shared_type: HomeoType,
    pub strategy: KStrategy,
    pub k: u64,
    pub obstruction: ObstructionReport,
    pub homeo: HomeoCertificate,
    pub ke_existence: String,
}

/// `k` putting `X # k C̄P₂` on the Noether line; `None` if negative or `p_g` unknown.
pub fn noether_match_k(x: &CharNumbers) -> Option<BigInt> {
    let p_g = x.p_g()?;
    let k: BigInt = x.c1sq() - (BigInt::from(2) * p_g - 4);
    (!k.is_negative()).then_some(k)
}

/// Builds and certifies a pair rooted at `root`, or explains why there is none.
pub fn candidate_pair(root: &Family, strategy: KStrategy) -> Result<ExoticPair> {
    let x = root.evaluate()?;
    if !x.is_minimal_general_type() {
        return Err(Error::Precondition(format!("{root} is not a minimal surface of general type")));
    }
    let base = SurfaceSpec::new(root.clone());
    let k_min = obstruct(&base, false)?
        .check(Criterion::New)
        .map(|c| c.k_min.clone())
        .ok_or_else(|| Error::Invariant("25/57 threshold missing for a general-type root".into()))?;
    let k = match strategy {
        KStrategy::MinThreshold => k_min.clone(),
        KStrategy::NoetherMatch => noether_match_k(&x).ok_or_else(|| Error::Inapplicable(format!("{root}: no Noether-line blow-up")))?,
    };
    if k < k_min {
        return Err(Error::Inapplicable(format!("{root}: k = {k} is below k_min = {k_min}")));
    }
    let k = k.to_u64().ok_or_else(|| Error::OutOfRange(format!("k = {k}")))?;
    let obstructed = base.blown_up(k);
    let report = obstruct(&obstructed, false)?;
    if report.verdict(Criterion::New) != Verdict::Obstructed {
        return Err(Error::Invariant(format!("{obstructed} is not obstructed")));
    }
    let m = &report.invariants;
    let p_g = m.p_g().ok_or_else(|| Error::Invariant("blow-up lost p_g".into()))?;
    let witness = noether_partner(&m.c1sq(), p_g).ok_or_else(|| Error::Inapplicable(format!("{obstructed} is not on the Noether line")))?;
    let w = witness.evaluate()?;
    if !w.complex_structure().is_some_and(|t| t.canonical_ample()) {
        return Err(Error::Invariant(format!("{witness} lacks an ample canonical class")));
    }
    let shared_type = freedman_type(m)?;
    if freedman_type(&w)? != shared_type {
        return Err(Error::Inapplicable(format!("{obstructed} and {witness} are not homeomorphic")));
    }
    let homeo = HomeoCertificate {
        chi: m.chi().clone(),
        tau: m.tau().clone(),
        b_plus: m.b_plus().clone(),
        b_minus: m.b_minus().clone(),
        parity: shared_type.form_parity,
        witness_tau_mod_16: w.tau().mod_floor(&BigInt::from(16)).to_u8().expect("residue below 16"),
    };
    Ok(ExoticPair {
        obstructed,
        einstein_witness: witness,
        shared_type,
        strategy,
        k,
        obstruction: report,
        homeo,
        ke_existence: KE_PROVENANCE.to_string(),
    })
}

/// Parameter ranges of the roots to search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyRanges {
    pub hypersurface: Option<RangeInclusive<u64>>,
    pub double_plane: Option<RangeInclusive<u64>>,
}

impl FamilyRanges {
    pub fn roots(&self) -> Vec<Family> {
        let mut roots: Vec<Family> = Vec::new();
        if let Some(r) = &self.hypersurface {
            roots.extend(r.clone().map(Family::Hypersurface));
        }
        if let Some(r) = &self.double_plane {
            roots.extend(r.clone().map(Family::DoublePlane));
        }
        roots
    }
}

/// All certified pairs, ordered by family, parameter and `k`. Roots outside
/// the general-type range are skipped.
pub fn exotic_pair_search(ranges: &FamilyRanges, strategy: KStrategy) -> Vec<ExoticPair> {
    ranges
        .roots()
        .par_iter()
        .filter_map(|root| candidate_pair(root, strategy).ok())
        .collect()
}
