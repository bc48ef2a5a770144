//! Curvature-integral lower bounds driven by Seiberg-Witten theory.
//!
//! All quantities are carried in π-stripped units: a bound is the rational
//! coefficient of `(c₁⁺)²`, of `π²`, or a plain rational. π never appears as a float.
//! The only irrational input, `√β`, is exact when `β` is a rational square and
//! otherwise a certified rational enclosure of width below `10⁻¹²`.

mod minimize;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, from_big, int, min_rat, rat, serde_rat, sqrt_rat, Rat, RatInterval, RealValue};
use crate::surface::{CharNumbers, Family, KodairaDim, SurfaceSpec};

pub use minimize::{keen_f64, verify_keen_minimum, KeenMinimumCertificate, DEFAULT_GRID_SIZE, MIN_GRID_SIZE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundName {
    WeylL2,
    Sharp,
    #[serde(rename = "ASD")]
    Asd,
    Keen,
    Ricci,
    Ricci1633,
    VolS,
    VolRLower,
    VolRLower3133,
    IEpsilon,
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// What a bound's value multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundUnit {
    /// `(∫|W₊|²)^{1/2} ≥ value · 2π/√3 · |c₁⁺|`
    TwoPiOverSqrt3C1Plus,
    /// value in units of `π²`
    PiSquared,
    /// plain number
    One,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundResult {
    pub name: BoundName,
    /// The characteristic constant of the bound (e.g. `32/57`).
    pub coefficient: RealValue,
    /// The bound evaluated on the supplied inputs.
    pub value: RealValue,
    pub unit: BoundUnit,
    /// `true` for `>` bounds, `false` for `≥`.
    pub strict: bool,
    pub formula: String,
}

/// Upper limit for the width of `√β` enclosures.
pub fn sqrt_width() -> Rat {
    rat(1, 10_000_000_000_000)
}

/// `β = ∫s²dμ / 32π²(c₁⁺)²`, always at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaParam(#[serde(with = "serde_rat")] Rat);

impl BetaParam {
    pub fn new(beta: Rat) -> Result<Self> {
        if beta < Rat::one() {
            return Err(Error::OutOfRange(format!("beta = {} < 1", fmt_rat(&beta))));
        }
        Ok(BetaParam(beta))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn sqrt(&self) -> RealValue {
        sqrt_rat(&self.0, &sqrt_width()).expect("beta >= 1 is nonnegative")
    }

    /// `α = (3/2)(β − 1)`; then `√β ≤ 1 + α/3`.
    pub fn alpha(&self) -> Rat {
        rat(3, 2) * (&self.0 - Rat::one())
    }
}

/// The upper end `16/9` of the nontrivial branch of the Weyl estimate.
pub fn keen_branch_end() -> Rat {
    rat(16, 9)
}

/// Minimizer `(24/19)²` of the Weyl/scalar quadratic.
pub fn keen_argmin() -> Rat {
    rat(576, 361)
}

/// Rational factor of the Weyl estimate: `(∫|W₊|²)^{1/2} ≥ factor · 2π/√3 · |c₁⁺|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylCoefficient {
    /// `4 − 3√β`
    pub factor: RealValue,
}

impl WeylCoefficient {
    /// Lower bound for `(1/4π²)∫|W₊|² / (c₁⁺)²`, i.e. `factor²/3`, valid when `factor ≥ 0`.
    pub fn squared_over_three(&self) -> Option<RealValue> {
        match self.factor.is_negative() {
            Some(false) => Some(self.factor.square().affine(&rat(1, 3), &Rat::zero())),
            _ => None,
        }
    }
}

pub fn weyl_bound_thm2(beta: &BetaParam) -> WeylCoefficient {
    WeylCoefficient { factor: beta.sqrt().affine(&int(-3), &int(4)) }
}

/// Whether `W₊ ≡ 0` is compatible with the Weyl estimate at this `β`: the estimate
/// `0 ≥ (4 − 3√β)·…` needs a negative factor, or a zero factor in the equality
/// case, which only occurs at `β = 1`.
pub fn weyl_allows_vanishing(beta: &BetaParam) -> Option<bool> {
    let w = weyl_bound_thm2(beta);
    match (w.factor.is_negative(), w.factor.exact()) {
        (Some(true), _) => Some(true),
        (Some(false), Some(f)) if f.is_zero() => Some(beta.value().is_one()),
        (Some(false), _) => Some(false),
        (None, _) => None,
    }
}

fn check_keen_range(beta: &BetaParam) -> Result<()> {
    if beta.value() > &keen_branch_end() {
        return Err(Error::OutOfRange(format!(
            "beta = {} exceeds 16/9; the trivial branch applies",
            fmt_rat(beta.value())
        )));
    }
    Ok(())
}

/// `f(β) = [β + 2(4 − 3√β)²]/3` on `1 ≤ β ≤ 16/9`.
pub fn keen_quadratic(beta: &BetaParam) -> Result<RealValue> {
    check_keen_range(beta)?;
    let b = beta.value();
    Ok(match beta.sqrt() {
        RealValue::Exact(s) => {
            let w = int(4) - int(3) * &s;
            RealValue::Exact((b + int(2) * &w * &w) / int(3))
        }
        RealValue::Enclosure(s) => {
            let w = s.scale(&int(-3)).shift(&int(4)).square();
            RealValue::Enclosure(w.scale(&int(2)).shift(b).scale(&rat(1, 3)))
        }
    })
}

/// The same quantity written as `[19(√β − 24/19)² + 32/19]/3`.
pub fn keen_completed_square(beta: &BetaParam) -> Result<RealValue> {
    check_keen_range(beta)?;
    let shift = rat(-24, 19);
    Ok(match beta.sqrt() {
        RealValue::Exact(s) => {
            let d = s + &shift;
            RealValue::Exact((int(19) * &d * &d + rat(32, 19)) / int(3))
        }
        RealValue::Enclosure(s) => {
            RealValue::Enclosure(s.shift(&shift).square().scale(&int(19)).shift(&rat(32, 19)).scale(&rat(1, 3)))
        }
    })
}

/// `(4/9)(c₁⁺)²`, the lower bound for `(1/4π²)∫(|W₊|²/3 + s²/24)dμ`.
pub fn sharp_bound_cor1(c1p_sq: &Rat) -> Result<Rat> {
    if !c1p_sq.is_positive() {
        return Err(Error::Precondition("(c1+)^2 must be positive".into()));
    }
    Ok(rat(4, 9) * c1p_sq)
}

/// A rational multiple of a power of π.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiTerm {
    #[serde(with = "serde_rat")]
    pub coeff: Rat,
    pub pi_power: i32,
}

impl PiTerm {
    fn new(coeff: Rat, pi_power: i32) -> Self {
        PiTerm { coeff, pi_power }
    }
    fn mul(&self, o: &PiTerm) -> PiTerm {
        PiTerm::new(&self.coeff * &o.coeff, self.pi_power + o.pi_power)
    }
    fn div(&self, o: &PiTerm) -> PiTerm {
        PiTerm::new(&self.coeff / &o.coeff, self.pi_power - o.pi_power)
    }
    fn add(&self, o: &PiTerm) -> PiTerm {
        assert_eq!(self.pi_power, o.pi_power, "adding unlike powers of pi");
        PiTerm::new(&self.coeff + &o.coeff, self.pi_power)
    }
    fn scale(&self, r: Rat) -> PiTerm {
        PiTerm::new(&self.coeff * r, self.pi_power)
    }
}

/// Symbolic evaluation on a constant-scalar-curvature Kähler metric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KahlerSaturation {
    /// Constant scalar curvature `s = ∫s dμ / Vol`.
    pub scalar_curvature: PiTerm,
    pub volume: PiTerm,
    /// `(1/4π²)∫(|W₊|²/3 + s²/24)dμ`
    #[serde(with = "serde_rat")]
    pub lhs: Rat,
    /// `(4/9)(c₁·ω)²/ω²`
    #[serde(with = "serde_rat")]
    pub rhs: Rat,
}

/// Kähler identities `∫s dμ = 4π c₁·[ω]`, `∫dμ = [ω]²/2`, `|W₊|² = s²/24`, evaluated
/// symbolically; the π factors cancel and `lhs == rhs`.
pub fn kahler_saturation(c1_dot_omega: &Rat, omega_sq: &Rat) -> Result<KahlerSaturation> {
    if !c1_dot_omega.is_negative() {
        return Err(Error::Precondition("c1 . [omega] must be negative".into()));
    }
    if !omega_sq.is_positive() {
        return Err(Error::Precondition("[omega]^2 must be positive".into()));
    }
    let total_scalar = PiTerm::new(int(4) * c1_dot_omega, 1);
    let volume = PiTerm::new(omega_sq / int(2), 0);
    let s = total_scalar.div(&volume);
    let s_sq_24 = s.mul(&s).scale(rat(1, 24));
    let w_plus_sq = s_sq_24.clone();
    let integrand = w_plus_sq.scale(rat(1, 3)).add(&s_sq_24);
    let integral = integrand.mul(&volume);
    let normalized = integral.div(&PiTerm::new(int(4), 2));
    assert_eq!(normalized.pi_power, 0);
    let rhs = rat(4, 9) * c1_dot_omega * c1_dot_omega / omega_sq;
    Ok(KahlerSaturation { scalar_curvature: s, volume, lhs: normalized.coeff, rhs })
}

/// `(1/8π²)∫|r|² ≥ (8/5)(c₁⁺)² − (3/5)(2χ+3τ)(M)`.
pub fn ricci_bound_lemma5(c1p_sq: &Rat, two_chi_three_tau: &Rat) -> Result<Rat> {
    if !c1p_sq.is_positive() {
        return Err(Error::Precondition("c1+ must be nonzero".into()));
    }
    Ok(rat(8, 5) * c1p_sq - rat(3, 5) * two_chi_three_tau)
}

/// The same bound re-derived from its ingredients: `(1/8π²)∫|r|²` equals
/// `4·(1/4π²)∫(s²/24 + |W₊|²/2) − (2χ+3τ)`, and the integral is at least the
/// `9/10 : 1/10` convex combination of the sharp bound and the Einstein identity.
pub fn ricci_convex_combination(c1p_sq: &Rat, two_chi_three_tau: &Rat) -> Rat {
    let combo = rat(9, 10) * rat(4, 9) * c1p_sq + rat(1, 10) * two_chi_three_tau;
    int(4) * combo - two_chi_three_tau
}

/// Strict refinement: `(1/8π²)∫|r|² > 4·(16/33)(c₁⁺)² − (2χ+3τ)(M)`.
pub fn ricci_bound_1633(c1p_sq: &Rat, two_chi_three_tau: &Rat) -> Result<Rat> {
    if !c1p_sq.is_positive() {
        return Err(Error::Precondition("c1+ must be nonzero".into()));
    }
    Ok(int(4) * rat(16, 33) * c1p_sq - two_chi_three_tau)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    /// `Vol_s + (2/15)k` is the larger lower bound.
    A,
    /// `(31/33)Vol_s + (2/9)k` is the larger lower bound.
    B,
    Equal,
}

/// Minimal-volume data in units of `π²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinVolumes {
    #[serde(with = "serde_rat")]
    pub vol_s: Rat,
    #[serde(with = "serde_rat")]
    pub vol_r_lower_a: Rat,
    #[serde(with = "serde_rat")]
    pub vol_r_lower_b: Rat,
    pub dominant: Dominance,
    /// Blow-up count at which the two lower bounds coincide.
    #[serde(with = "serde_rat")]
    pub crossover_k: Rat,
}

/// For `M = X # k C̄P₂` with `X` minimal of general type.
pub fn min_volumes(x: &CharNumbers, k: u64) -> Result<MinVolumes> {
    if !x.is_minimal_general_type() {
        return Err(Error::Precondition("X must be a minimal surface of general type".into()));
    }
    let c1sq = from_big(&x.c1sq());
    let k = int(k as i64);
    let vol_s = rat(2, 9) * &c1sq;
    let a = &vol_s + rat(2, 15) * &k;
    let b = rat(31, 33) * &vol_s + rat(2, 9) * &k;
    // (2/9 - 2/15) k* = (2/33) vol_s
    let crossover_k = rat(2, 33) * &vol_s / (rat(2, 9) - rat(2, 15));
    let dominant = match a.cmp(&b) {
        std::cmp::Ordering::Greater => Dominance::A,
        std::cmp::Ordering::Less => Dominance::B,
        std::cmp::Ordering::Equal => Dominance::Equal,
    };
    Ok(MinVolumes { vol_s, vol_r_lower_a: a, vol_r_lower_b: b, dominant, crossover_k })
}

/// Value of the weighted energy infimum `I_ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IEpsilonValue {
    Exact {
        #[serde(with = "serde_rat")]
        value: Rat,
    },
    /// Exact value unknown; `positive` is set when the lower bound is positive.
    LowerBound {
        #[serde(with = "serde_rat")]
        lower: Rat,
        positive: bool,
    },
    /// Exact value unknown; bracketed between the two numbers.
    Bracketed {
        #[serde(with = "serde_rat")]
        lower: Rat,
        #[serde(with = "serde_rat")]
        upper: Rat,
    },
}

/// `I_ε(M) = inf_g (1/4π²)∫(s²/24 + ε|W₊|²)dμ` for a complex surface `M`.
///
/// (At `ε = 0` this is `[min(Y(M),0)]²/96π²` with `Y` the Yamabe invariant, which is
/// not computed here.)
pub fn i_epsilon(m: &SurfaceSpec, eps: &Rat) -> Result<IEpsilonValue> {
    if eps.is_negative() {
        return Err(Error::OutOfRange("epsilon must be nonnegative".into()));
    }
    if !m.summands().is_empty() {
        return Err(Error::Unclassified(format!("{m} is a general connected sum")));
    }
    let root = m.root().evaluate()?;
    let tag = root
        .complex_structure()
        .ok_or_else(|| Error::Unclassified(format!("{} carries no complex structure", m.root())))?;
    let zero = || Ok(IEpsilonValue::Exact { value: Rat::zero() });
    match (m.root(), tag.kodaira_dim()) {
        (Family::RationalElliptic, _) => zero(),
        (Family::RuledSurface(g), _) if *g >= 1 => zero(),
        (_, KodairaDim::Zero | KodairaDim::One) => zero(),
        (_, KodairaDim::Two) => {
            if !tag.minimal() {
                return Err(Error::Unclassified("minimal model of a non-minimal root is unknown".into()));
            }
            let c1sq = from_big(&root.c1sq());
            let third = rat(1, 3);
            if eps <= &third {
                Ok(IEpsilonValue::Exact { value: (Rat::one() + eps) / int(3) * c1sq })
            } else {
                Ok(IEpsilonValue::Bracketed {
                    lower: (Rat::one() + &third) / int(3) * &c1sq,
                    upper: (Rat::one() + eps) / int(3) * c1sq,
                })
            }
        }
        (_, KodairaDim::MinusInf) => {
            let c1sq = from_big(&m.evaluate()?.c1sq());
            if c1sq.is_positive() {
                // del Pezzo deformation type
                let lower = min_rat(Rat::one(), eps / int(2)) * c1sq;
                let positive = lower.is_positive();
                Ok(IEpsilonValue::LowerBound { lower, positive })
            } else {
                // diffeomorphic to CP2 # n CP2bar, n >= 9: a blow-up of the rational elliptic surface
                zero()
            }
        }
    }
}

/// Curvature integrals in units of `π²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureIntegrals {
    #[serde(with = "serde_rat")]
    pub w_plus_sq: Rat,
    #[serde(with = "serde_rat")]
    pub w_minus_sq: Rat,
    #[serde(with = "serde_rat")]
    pub s_sq: Rat,
    #[serde(with = "serde_rat")]
    pub ric0_sq: Rat,
}

impl CurvatureIntegrals {
    fn validate(&self) -> Result<()> {
        if [&self.w_plus_sq, &self.w_minus_sq, &self.s_sq, &self.ric0_sq].iter().any(|v| v.is_negative()) {
            return Err(Error::Precondition("curvature integrals must be nonnegative".into()));
        }
        Ok(())
    }

    /// `(1/4π²)∫(2|W±|² + s²/24 − |r̊|²/2)dμ`, returned as `(plus, minus)`.
    pub fn gauss_bonnet(&self) -> (Rat, Rat) {
        let common = &self.s_sq / int(24) - &self.ric0_sq / int(2);
        let plus = (int(2) * &self.w_plus_sq + &common) / int(4);
        let minus = (int(2) * &self.w_minus_sq + &common) / int(4);
        (plus, minus)
    }

    /// Solves the two Gauss-Bonnet identities for `(χ, τ)`.
    pub fn solve_chi_tau(&self) -> (Rat, Rat) {
        let (plus, minus) = self.gauss_bonnet();
        ((&plus + &minus) / int(4), (plus - minus) / int(6))
    }
}

/// Checks `2χ ± 3τ = (1/4π²)∫(2|W±|² + s²/24 − |r̊|²/2)dμ` for both signs.
pub fn gauss_bonnet_check(terms: &CurvatureIntegrals, chi: i64, tau: i64) -> Result<(bool, bool)> {
    terms.validate()?;
    let (plus, minus) = terms.gauss_bonnet();
    Ok((plus == int(2 * chi + 3 * tau), minus == int(2 * chi - 3 * tau)))
}

/// Inputs for [`bounds_table`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsInputs {
    /// `(c₁⁺)²` (or a lower bound for it).
    #[serde(with = "serde_rat")]
    pub c1p_sq: Rat,
    /// `(2χ+3τ)(M)`
    #[serde(with = "serde_rat")]
    pub two_chi_three_tau: Rat,
    /// `c₁²(X)` of the minimal model.
    #[serde(with = "serde_rat")]
    pub c1sq_x: Rat,
    pub k: u64,
    pub beta: BetaParam,
    #[serde(with = "serde_rat")]
    pub eps: Rat,
}

impl BoundsInputs {
    /// Inputs for `X # k C̄P₂` with `X` minimal of general type, using `(c₁⁺)² ≥ c₁²(X)`.
    pub fn for_blow_up(x: &CharNumbers, k: u64, beta: BetaParam, eps: Rat) -> Result<Self> {
        if !x.is_minimal_general_type() {
            return Err(Error::Precondition("X must be a minimal surface of general type".into()));
        }
        let c1sq_x = from_big(&x.c1sq());
        Ok(BoundsInputs {
            c1p_sq: c1sq_x.clone(),
            two_chi_three_tau: &c1sq_x - int(k as i64),
            c1sq_x,
            k,
            beta,
            eps,
        })
    }
}

fn row(name: BoundName, coefficient: Rat, value: RealValue, unit: BoundUnit, strict: bool, formula: &str) -> BoundResult {
    BoundResult { name, coefficient: RealValue::Exact(coefficient), value, unit, strict, formula: formula.into() }
}

/// Every bound evaluated on one set of inputs.
pub fn bounds_table(inputs: &BoundsInputs) -> Result<Vec<BoundResult>> {
    let x = &inputs.c1p_sq;
    let y = &inputs.two_chi_three_tau;
    let weyl = weyl_bound_thm2(&inputs.beta);
    let weyl_value = weyl
        .squared_over_three()
        .map(|v| v.affine(x, &Rat::zero()))
        .unwrap_or(RealValue::Exact(Rat::zero()));
    let vols = rat(2, 9) * &inputs.c1sq_x;
    let k = int(inputs.k as i64);
    let third = rat(1, 3);
    let (ieps_coeff, ieps_formula) = if inputs.eps <= third {
        ((Rat::one() + &inputs.eps) / int(3), "I_eps = (1+eps)/3 c1^2(X)")
    } else {
        (rat(4, 9), "I_eps >= 4/9 c1^2(X); exact value unknown for eps > 1/3")
    };
    use BoundName::*;
    use BoundUnit::*;
    Ok(vec![
        BoundResult {
            name: WeylL2,
            coefficient: weyl.factor.clone(),
            value: weyl_value,
            unit: TwoPiOverSqrt3C1Plus,
            strict: false,
            formula: "(int |W+|^2)^(1/2) >= (4 - 3 beta^(1/2)) 2pi/sqrt3 |c1+|; value = (1/4pi^2) int |W+|^2 lower bound".into(),
        },
        row(Sharp, rat(4, 9), RealValue::Exact(sharp_bound_cor1(x)?), One, false, "(1/4pi^2) int (|W+|^2/3 + s^2/24) >= 4/9 (c1+)^2"),
        row(Asd, rat(16, 9), RealValue::Exact(rat(16, 9) * x), One, true, "W+ = 0: (1/32pi^2) int s^2 > 16/9 (c1+)^2"),
        row(Keen, rat(32, 57), RealValue::Exact(rat(32, 57) * x), One, true, "(1/4pi^2) int (2|W+|^2 + s^2/24) > 32/57 (c1+)^2"),
        row(Ricci, rat(8, 5), RealValue::Exact(ricci_bound_lemma5(x, y)?), One, false, "(1/8pi^2) int |r|^2 >= 8/5 (c1+)^2 - 3/5 (2chi+3tau)(M)"),
        row(Ricci1633, rat(16, 33), RealValue::Exact(ricci_bound_1633(x, y)?), One, true, "(1/8pi^2) int |r|^2 > 4 (16/33) (c1+)^2 - (2chi+3tau)(M)"),
        row(VolS, rat(2, 9), RealValue::Exact(vols.clone()), PiSquared, false, "Vol_s = 2/9 pi^2 c1^2(X)"),
        row(VolRLower, rat(2, 15), RealValue::Exact(&vols + rat(2, 15) * &k), PiSquared, false, "Vol_|r| >= Vol_s + 2/15 pi^2 k"),
        row(VolRLower3133, rat(31, 33), RealValue::Exact(rat(31, 33) * &vols + rat(2, 9) * &k), PiSquared, false, "Vol_|r| >= 31/33 Vol_s + 2/9 pi^2 k"),
        row(IEpsilon, ieps_coeff.clone(), RealValue::Exact(ieps_coeff * &inputs.c1sq_x), One, false, ieps_formula),
    ])
}

/// An interval check used by tests and reports: does `value` enclose `target`?
pub fn encloses(value: &RealValue, target: &Rat) -> bool {
    value.interval().contains(target)
}

/// `RatInterval` of the quadratic's trivial-branch floor `16/27`.
pub fn trivial_branch_floor() -> RatInterval {
    RatInterval::point(rat(16, 27))
}
