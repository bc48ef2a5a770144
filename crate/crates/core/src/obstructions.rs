//! Decision procedures for the non-existence of Einstein metrics on blow-ups.
//!
//! A verdict of [`Verdict::NotObstructed`] only means the criterion is silent; it
//! never asserts that an Einstein metric exists.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ceil_int, from_big, int, rat, serde_int, serde_rat, Rat};
use crate::surface::{CharNumbers, SurfaceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Criterion {
    /// `2χ ≥ 3|τ|` for Einstein manifolds.
    #[serde(rename = "HT")]
    HitchinThorpe,
    /// `k ≥ (2/3)(2χ+3τ)(X)`
    #[serde(rename = "LNO_2_3")]
    Lno,
    /// `k ≥ (25/57)(2χ+3τ)(X)`
    #[serde(rename = "New_25_57")]
    New,
    /// anti-self-dual Einstein, `k ≥ (11/27)(2χ+3τ)(X)`
    #[serde(rename = "ASD_11_27")]
    AntiSelfDual,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [Criterion::HitchinThorpe, Criterion::Lno, Criterion::New, Criterion::AntiSelfDual];

    /// Coefficient of `(2χ+3τ)(X)` in the blow-up threshold; `None` for Hitchin-Thorpe.
    pub fn coefficient(self) -> Option<Rat> {
        match self {
            Criterion::HitchinThorpe => None,
            Criterion::Lno => Some(rat(2, 3)),
            Criterion::New => Some(rat(25, 57)),
            Criterion::AntiSelfDual => Some(rat(11, 27)),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Criterion::HitchinThorpe => "HT",
            Criterion::Lno => "LNO_2_3",
            Criterion::New => "New_25_57",
            Criterion::AntiSelfDual => "ASD_11_27",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Obstructed,
    NotObstructed,
    Inapplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SwHypothesis {
    #[serde(rename = "NonzeroSWAssumed")]
    NonzeroSwAssumed,
    NotAssumed,
}

/// Where a nonzero Seiberg-Witten invariant came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SwSource {
    /// Kähler with `c₁·[ω] < 0`, automatic for minimal surfaces of general type.
    MinimalGeneralType,
    /// Asserted by the caller, e.g. for symplectic manifolds.
    CallerAsserted,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitchinThorpe {
    pub verdict: Verdict,
    #[serde(with = "serde_int")]
    pub two_chi: BigInt,
    #[serde(with = "serde_int")]
    pub three_abs_tau: BigInt,
    /// `2χ = 3|τ|`: the inequality holds with equality.
    pub borderline: bool,
}

/// Obstructed exactly on strict violation `2χ < 3|τ|`.
pub fn hitchin_thorpe(m: &CharNumbers) -> HitchinThorpe {
    let two_chi = BigInt::from(2) * m.chi();
    let three_abs_tau = BigInt::from(3) * m.tau().abs();
    let verdict = if two_chi < three_abs_tau { Verdict::Obstructed } else { Verdict::NotObstructed };
    HitchinThorpe { verdict, borderline: two_chi == three_abs_tau, two_chi, three_abs_tau }
}

/// Smallest `k` with `X # k C̄P₂` violating Hitchin-Thorpe, for `X` that satisfies it.
pub fn hitchin_thorpe_k_min(x: &CharNumbers) -> Result<BigInt> {
    if hitchin_thorpe(x).verdict == Verdict::Obstructed {
        return Err(Error::Precondition("X itself violates Hitchin-Thorpe".into()));
    }
    // 2χ − 3τ grows by 5 per blow-up while 2χ + 3τ drops by 1, so the first
    // violation is the first k with c₁²(X) − k < 0.
    Ok(x.c1sq().max(BigInt::from(-1)) + BigInt::one())
}

/// Smallest integer `k` with `k ≥ coefficient · c₁²`.
pub fn k_min(coefficient: &Rat, c1sq: &BigInt) -> BigInt {
    ceil_int(&(coefficient * from_big(c1sq)))
}

/// Outcome of one threshold criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdCheck {
    pub criterion: Criterion,
    pub verdict: Verdict,
    #[serde(with = "serde_rat")]
    pub coefficient: Rat,
    /// `coefficient · (2χ+3τ)(X)`
    #[serde(with = "serde_rat")]
    pub threshold: Rat,
    #[serde(with = "serde_int")]
    pub k_min: BigInt,
    pub k: u64,
}

fn threshold_check(criterion: Criterion, x: &CharNumbers, k: u64, sw: SwHypothesis) -> Result<ThresholdCheck> {
    let coefficient = criterion
        .coefficient()
        .ok_or_else(|| Error::InvalidParameter("Hitchin-Thorpe has no coefficient threshold".into()))?;
    if sw == SwHypothesis::NotAssumed {
        return Err(Error::Inapplicable("needs a nonzero Seiberg-Witten invariant on X".into()));
    }
    let c1sq = x.c1sq();
    if !c1sq.is_positive() {
        return Err(Error::Inapplicable(format!("(2chi + 3tau)(X) = {c1sq} is not positive")));
    }
    let threshold = &coefficient * from_big(&c1sq);
    let k_min = k_min(&coefficient, &c1sq);
    let verdict = if BigInt::from(k) >= k_min { Verdict::Obstructed } else { Verdict::NotObstructed };
    Ok(ThresholdCheck { criterion, verdict, coefficient, threshold, k_min, k })
}

/// `X # k C̄P₂` carries no Einstein metric once `k ≥ (25/57)(2χ+3τ)(X)`.
pub fn new_obstruction(x: &CharNumbers, k: u64, sw: SwHypothesis) -> Result<ThresholdCheck> {
    threshold_check(Criterion::New, x, k, sw)
}

/// The earlier `2/3` criterion.
pub fn lno_obstruction(x: &CharNumbers, k: u64, sw: SwHypothesis) -> Result<ThresholdCheck> {
    threshold_check(Criterion::Lno, x, k, sw)
}

/// No anti-self-dual Einstein metric once `k ≥ (11/27)(2χ+3τ)(X)`.
pub fn asd_einstein_obstruction(x: &CharNumbers, k: u64, sw: SwHypothesis) -> Result<ThresholdCheck> {
    threshold_check(Criterion::AntiSelfDual, x, k, sw)
}

/// [`new_obstruction`] for a minimal surface of general type, where the
/// Seiberg-Witten hypothesis holds automatically.
pub fn minimal_general_type_obstruction(x: &CharNumbers, k: u64) -> Result<ThresholdCheck> {
    if !x.is_minimal_general_type() {
        return Err(Error::Precondition("X must be a minimal surface of general type".into()));
    }
    new_obstruction(x, k, SwHypothesis::NonzeroSwAssumed)
}

/// Blow-up coefficient implied by a curvature floor `(2χ+3τ)(M) > κ (c₁⁺)²` on
/// Einstein metrics, using `(c₁⁺)² ≥ c₁²(X)` and `(2χ+3τ)(M) = c₁²(X) − k`.
pub fn coefficient_from_floor(kappa: &Rat) -> Rat {
    Rat::one() - kappa
}

/// On a hyperbolic manifold the Seiberg-Witten invariant of a spin^c structure
/// must vanish when `(c₁⁺)² ≥ (32/3)χ`.
pub fn sw_vanishing_criterion(c1p_sq: &Rat, chi: &BigInt) -> bool {
    c1p_sq >= &(rat(32, 3) * from_big(chi))
}

/// The sharpest coefficient the anti-self-dual scalar estimate yields on a
/// hyperbolic manifold: with `W± = 0`, `r̊ = 0` and `τ = 0`, Gauss-Bonnet gives
/// `(1/32π²)∫s² = 6χ`, and `6χ > (16/9)(c₁⁺)²` fails once `(c₁⁺)² ≥ (27/8)χ`.
pub fn hyperbolic_vanishing_coefficient() -> Rat {
    let s_sq_over_32pi2_per_chi = int(6);
    s_sq_over_32pi2_per_chi / rat(16, 9)
}

/// Vanishing test with the derived coefficient `27/8`; implied by
/// [`sw_vanishing_criterion`] since `27/8 < 32/3`.
pub fn sw_vanishing_derived(c1p_sq: &Rat, chi: &BigInt) -> bool {
    c1p_sq >= &(hyperbolic_vanishing_coefficient() * from_big(chi))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub manifold: SurfaceSpec,
    /// `M` with its blow-ups removed.
    pub base: SurfaceSpec,
    pub k: u64,
    pub invariants: CharNumbers,
    #[serde(with = "serde_int")]
    pub base_c1sq: BigInt,
    pub hitchin_thorpe_violated: bool,
    pub hitchin_thorpe_borderline: bool,
    #[serde(with = "serde_int::option")]
    pub hitchin_thorpe_k_min: Option<BigInt>,
    #[serde(with = "opt_rat")]
    pub lno_threshold: Option<Rat>,
    #[serde(with = "opt_rat")]
    pub new_threshold: Option<Rat>,
    #[serde(with = "opt_rat")]
    pub asd_threshold: Option<Rat>,
    pub checks: Vec<ThresholdCheck>,
    pub verdicts: BTreeMap<Criterion, Verdict>,
    pub sw_hypothesis: SwHypothesis,
    pub sw_source: SwSource,
    pub notes: Vec<String>,
}

impl ObstructionReport {
    pub fn verdict(&self, criterion: Criterion) -> Verdict {
        self.verdicts[&criterion]
    }

    pub fn check(&self, criterion: Criterion) -> Option<&ThresholdCheck> {
        self.checks.iter().find(|c| c.criterion == criterion)
    }
}

mod opt_rat {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{fmt_rat, parse_rat, Rat};

    pub fn serialize<S: Serializer>(value: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_some(&fmt_rat(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rat>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rat(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Evaluates every criterion on `M = X # k C̄P₂`, where `k` is the blow-up
/// count of `spec` and `X` the remaining surface.
pub fn obstruct(spec: &SurfaceSpec, assert_sw: bool) -> Result<ObstructionReport> {
    let invariants = spec.evaluate()?;
    let base = spec.unblown();
    let x = base.evaluate()?;
    let k = spec.blowups();
    let mut notes = Vec::new();

    let (sw_hypothesis, sw_source) = if x.is_minimal_general_type() {
        (SwHypothesis::NonzeroSwAssumed, SwSource::MinimalGeneralType)
    } else if assert_sw {
        (SwHypothesis::NonzeroSwAssumed, SwSource::CallerAsserted)
    } else {
        notes.push("no nonzero Seiberg-Witten invariant known for the base; threshold criteria inapplicable".into());
        (SwHypothesis::NotAssumed, SwSource::None)
    };

    let ht = hitchin_thorpe(&invariants);
    if ht.borderline {
        notes.push("Hitchin-Thorpe holds with equality".into());
    }
    let mut verdicts = BTreeMap::new();
    verdicts.insert(Criterion::HitchinThorpe, ht.verdict);

    let mut checks = Vec::new();
    for criterion in [Criterion::Lno, Criterion::New, Criterion::AntiSelfDual] {
        match threshold_check(criterion, &x, k, sw_hypothesis) {
            Ok(check) => {
                verdicts.insert(criterion, check.verdict);
                checks.push(check);
            }
            Err(Error::Inapplicable(reason)) => {
                verdicts.insert(criterion, Verdict::Inapplicable);
                let note = format!("{criterion}: {reason}");
                if !notes.contains(&note) {
                    notes.push(note);
                }
            }
            Err(e) => return Err(e),
        }
    }

    let base_c1sq = x.c1sq();
    let positive = base_c1sq.is_positive();
    let threshold = |c: Criterion| positive.then(|| c.coefficient().unwrap() * from_big(&base_c1sq));
    Ok(ObstructionReport {
        manifold: spec.clone(),
        base,
        k,
        hitchin_thorpe_k_min: hitchin_thorpe_k_min(&x).ok(),
        lno_threshold: threshold(Criterion::Lno),
        new_threshold: threshold(Criterion::New),
        asd_threshold: threshold(Criterion::AntiSelfDual),
        hitchin_thorpe_violated: ht.verdict == Verdict::Obstructed,
        hitchin_thorpe_borderline: ht.borderline,
        invariants,
        base_c1sq,
        checks,
        verdicts,
        sw_hypothesis,
        sw_source,
        notes,
    })
}

/// Monotone in `k`: `true` iff `k` meets the inclusive threshold.
pub fn is_obstructed_at(coefficient: &Rat, c1sq: &BigInt, k: u64) -> bool {
    c1sq.is_positive() && BigInt::from(k) >= k_min(coefficient, c1sq)
}
