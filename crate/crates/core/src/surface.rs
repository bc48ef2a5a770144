//! Characteristic numbers of compact 4-manifolds built from complex surfaces.
//!
//! Everything here is integer arithmetic on `BigInt`. A [`SurfaceSpec`] is a recipe
//! (root family, blow-ups, further connected summands) that evaluates to
//! [`CharNumbers`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::serde_int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KodairaDim {
    MinusInf,
    Zero,
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexTagRepr")]
pub struct ComplexTag {
    kodaira_dim: KodairaDim,
    minimal: bool,
    canonical_ample: bool,
    general_type: bool,
}

#[derive(Deserialize)]
struct ComplexTagRepr {
    kodaira_dim: KodairaDim,
    minimal: bool,
    canonical_ample: bool,
    #[serde(default)]
    general_type: Option<bool>,
}

impl TryFrom<ComplexTagRepr> for ComplexTag {
    type Error = Error;
    fn try_from(r: ComplexTagRepr) -> Result<Self> {
        let tag = ComplexTag::new(r.kodaira_dim, r.minimal, r.canonical_ample)?;
        if r.general_type.is_some_and(|g| g != tag.general_type) {
            return Err(Error::Invariant("general_type must equal (kodaira_dim == two)".into()));
        }
        Ok(tag)
    }
}

impl ComplexTag {
    pub fn new(kodaira_dim: KodairaDim, minimal: bool, canonical_ample: bool) -> Result<Self> {
        let general_type = kodaira_dim == KodairaDim::Two;
        if canonical_ample && !(general_type && minimal) {
            return Err(Error::Invariant("ample canonical bundle requires minimal general type".into()));
        }
        Ok(ComplexTag { kodaira_dim, minimal, canonical_ample, general_type })
    }

    fn minimal_general_type() -> Self {
        ComplexTag { kodaira_dim: KodairaDim::Two, minimal: true, canonical_ample: true, general_type: true }
    }

    fn of(kodaira_dim: KodairaDim, minimal: bool) -> Self {
        ComplexTag::new(kodaira_dim, minimal, false).expect("non-ample tags are always valid")
    }

    pub fn kodaira_dim(&self) -> KodairaDim {
        self.kodaira_dim
    }
    pub fn minimal(&self) -> bool {
        self.minimal
    }
    pub fn canonical_ample(&self) -> bool {
        self.canonical_ample
    }
    pub fn general_type(&self) -> bool {
        self.general_type
    }
    pub fn is_minimal_general_type(&self) -> bool {
        self.general_type && self.minimal
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinStatus {
    Spin,
    NonSpin,
    Unknown,
}

/// Exact characteristic numbers of a closed oriented 4-manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CharNumbersRepr")]
pub struct CharNumbers {
    #[serde(with = "serde_int")]
    chi: BigInt,
    #[serde(with = "serde_int")]
    tau: BigInt,
    #[serde(with = "serde_int")]
    b_plus: BigInt,
    #[serde(with = "serde_int")]
    b_minus: BigInt,
    #[serde(with = "serde_int::option")]
    p_g: Option<BigInt>,
    simply_connected: bool,
    complex_structure: Option<ComplexTag>,
    spin_status: SpinStatus,
    /// Convenience copy of `2χ + 3τ`; ignored on input.
    #[serde(with = "serde_int")]
    c1sq: BigInt,
}

#[derive(Deserialize)]
struct CharNumbersRepr {
    #[serde(with = "serde_int")]
    chi: BigInt,
    #[serde(with = "serde_int")]
    tau: BigInt,
    #[serde(with = "serde_int")]
    b_plus: BigInt,
    #[serde(with = "serde_int")]
    b_minus: BigInt,
    #[serde(default, with = "serde_int::option")]
    p_g: Option<BigInt>,
    simply_connected: bool,
    #[serde(default)]
    complex_structure: Option<ComplexTag>,
    spin_status: SpinStatus,
}

impl TryFrom<CharNumbersRepr> for CharNumbers {
    type Error = Error;
    fn try_from(r: CharNumbersRepr) -> Result<Self> {
        let mut out = CharNumbers::new(r.chi, r.tau, r.b_plus, r.b_minus, r.simply_connected)?;
        if let Some(p_g) = r.p_g {
            out = out.with_geometric_genus(p_g)?;
        }
        if let Some(tag) = r.complex_structure {
            out = out.with_complex_structure(tag);
        }
        out.with_spin_status(r.spin_status)
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

impl CharNumbers {
    /// Validates `τ = b⁺ − b⁻`, nonnegative Betti numbers and, for simply connected
    /// manifolds, `χ = 2 + b⁺ + b⁻`. Rokhlin's parity test is applied immediately.
    pub fn new(chi: BigInt, tau: BigInt, b_plus: BigInt, b_minus: BigInt, simply_connected: bool) -> Result<Self> {
        if b_plus.is_negative() || b_minus.is_negative() {
            return Err(Error::Invariant("Betti numbers must be nonnegative".into()));
        }
        if tau != &b_plus - &b_minus {
            return Err(Error::Invariant(format!("tau = {tau} but b+ - b- = {}", &b_plus - &b_minus)));
        }
        if simply_connected && chi != big(2) + &b_plus + &b_minus {
            return Err(Error::Invariant(format!("chi = {chi} but 2 + b+ + b- = {}", big(2) + &b_plus + &b_minus)));
        }
        let c1sq = big(2) * &chi + big(3) * &tau;
        let mut out = CharNumbers {
            chi,
            tau,
            b_plus,
            b_minus,
            p_g: None,
            simply_connected,
            complex_structure: None,
            spin_status: SpinStatus::Unknown,
            c1sq,
        };
        out.apply_rokhlin();
        Ok(out)
    }

    /// Simply connected manifold from `(χ, τ)` alone.
    pub fn simply_connected_from(chi: BigInt, tau: BigInt) -> Result<Self> {
        let b2 = &chi - big(2);
        let (b_plus, rem) = (&b2 + &tau).div_rem(&big(2));
        if !rem.is_zero() {
            return Err(Error::Invariant("chi - 2 + tau must be even".into()));
        }
        let b_minus = &b2 - &b_plus;
        CharNumbers::new(chi, tau, b_plus, b_minus, true)
    }

    /// Simply connected complex surface with `q = 0` from `(c₁², p_g)` via Noether's formula:
    /// `τ = c₁² − 8(1+p_g)`, `χ = 12(1+p_g) − c₁²`.
    pub fn from_noether(c1sq: &BigInt, p_g: &BigInt, tag: ComplexTag) -> Result<Self> {
        let chi_hol = big(1) + p_g;
        let tau = c1sq - big(8) * &chi_hol;
        let chi = big(12) * &chi_hol - c1sq;
        let b_plus = big(2) * p_g + big(1);
        let b_minus = &chi - big(2) - &b_plus;
        Ok(CharNumbers::new(chi, tau, b_plus, b_minus, true)?
            .with_geometric_genus(p_g.clone())?
            .with_complex_structure(tag))
    }

    pub fn with_geometric_genus(mut self, p_g: BigInt) -> Result<Self> {
        if p_g.is_negative() {
            return Err(Error::Invariant("p_g must be nonnegative".into()));
        }
        if self.simply_connected {
            if self.b_plus != big(2) * &p_g + big(1) {
                return Err(Error::Invariant(format!("b+ = {} but 2 p_g + 1 = {}", self.b_plus, big(2) * &p_g + 1)));
            }
            if &self.c1sq - big(8) * (big(1) + &p_g) != self.tau {
                return Err(Error::Invariant("c1^2 - 8(1 + p_g) must equal tau".into()));
            }
        }
        self.p_g = Some(p_g);
        Ok(self)
    }

    pub fn with_complex_structure(mut self, tag: ComplexTag) -> Self {
        self.complex_structure = Some(tag);
        self
    }

    pub fn with_spin_status(mut self, status: SpinStatus) -> Result<Self> {
        if status == SpinStatus::Spin && self.rokhlin_forbids_spin() {
            return Err(Error::Invariant(format!("tau = {} is not divisible by 16; cannot be spin", self.tau)));
        }
        if status != SpinStatus::Unknown || !self.rokhlin_forbids_spin() {
            self.spin_status = status;
        }
        Ok(self)
    }

    fn rokhlin_forbids_spin(&self) -> bool {
        self.simply_connected && !self.tau.is_multiple_of(&big(16))
    }

    fn apply_rokhlin(&mut self) {
        if self.rokhlin_forbids_spin() {
            self.spin_status = SpinStatus::NonSpin;
        }
    }

    pub fn chi(&self) -> &BigInt {
        &self.chi
    }
    pub fn tau(&self) -> &BigInt {
        &self.tau
    }
    pub fn b_plus(&self) -> &BigInt {
        &self.b_plus
    }
    pub fn b_minus(&self) -> &BigInt {
        &self.b_minus
    }
    pub fn p_g(&self) -> Option<&BigInt> {
        self.p_g.as_ref()
    }
    pub fn simply_connected(&self) -> bool {
        self.simply_connected
    }
    pub fn complex_structure(&self) -> Option<&ComplexTag> {
        self.complex_structure.as_ref()
    }
    pub fn spin_status(&self) -> SpinStatus {
        self.spin_status
    }

    /// `2χ + 3τ`, which equals `c₁²` for complex surfaces.
    pub fn c1sq(&self) -> BigInt {
        self.c1sq.clone()
    }

    pub fn is_minimal_general_type(&self) -> bool {
        self.complex_structure.is_some_and(|t| t.is_minimal_general_type())
    }

    /// `(χ, τ, b⁺, b⁻, simply connected)`; the data preserved by connected sum.
    pub fn topology(&self) -> (BigInt, BigInt, BigInt, BigInt, bool) {
        (self.chi.clone(), self.tau.clone(), self.b_plus.clone(), self.b_minus.clone(), self.simply_connected)
    }

    /// The 4-sphere, neutral element of connected sum.
    pub fn s4() -> Self {
        CharNumbers::new(big(2), big(0), big(0), big(0), true)
            .and_then(|c| c.with_spin_status(SpinStatus::Spin))
            .expect("S4 numbers are consistent")
    }

    pub fn cp2() -> Self {
        CharNumbers::from_noether(&big(9), &big(0), ComplexTag::of(KodairaDim::MinusInf, true))
            .expect("CP2 numbers are consistent")
    }

    /// `CP₂` with reversed orientation; carries no complex structure.
    pub fn cp2bar() -> Self {
        CharNumbers::new(big(3), big(-1), big(0), big(1), true).expect("CP2bar numbers are consistent")
    }

    /// `X # k C̄P₂`. Keeps `p_g` and the complex provenance; the blown-up surface is
    /// no longer minimal and its intersection form becomes odd.
    pub fn blow_up(&self, k: u64) -> CharNumbers {
        if k == 0 {
            return self.clone();
        }
        let k = BigInt::from(k);
        let mut out = self.clone();
        out.chi += &k;
        out.tau -= &k;
        out.b_minus += &k;
        out.c1sq -= &k;
        out.complex_structure = self
            .complex_structure
            .map(|t| ComplexTag::of(t.kodaira_dim, false));
        out.spin_status = SpinStatus::NonSpin;
        out
    }

    /// Connected sum. Geometric genus and complex tags are dropped.
    pub fn connected_sum(&self, other: &CharNumbers) -> CharNumbers {
        let spin_status = match (self.spin_status, other.spin_status) {
            (SpinStatus::NonSpin, _) | (_, SpinStatus::NonSpin) => SpinStatus::NonSpin,
            (SpinStatus::Spin, SpinStatus::Spin) => SpinStatus::Spin,
            _ => SpinStatus::Unknown,
        };
        let chi = &self.chi + &other.chi - big(2);
        let tau = &self.tau + &other.tau;
        let c1sq = big(2) * &chi + big(3) * &tau;
        let mut out = CharNumbers {
            chi,
            tau,
            b_plus: &self.b_plus + &other.b_plus,
            b_minus: &self.b_minus + &other.b_minus,
            p_g: None,
            simply_connected: self.simply_connected && other.simply_connected,
            complex_structure: None,
            spin_status,
            c1sq,
        };
        out.apply_rokhlin();
        out
    }
}

fn binomial3(n: u64) -> BigInt {
    if n < 3 {
        return BigInt::zero();
    }
    let n = BigInt::from(n);
    &n * (&n - 1) * (&n - 2) / big(6)
}

/// Minimal general-type hypersurface of degree `ℓ ≥ 5` in `CP₃`.
pub fn hypersurface_invariants(degree: u64) -> Result<CharNumbers> {
    if degree < 5 {
        return Err(Error::InvalidParameter(format!("hypersurface degree must be >= 5, got {degree}")));
    }
    Family::Hypersurface(degree).evaluate()
}

/// Double cover of `CP₂` branched over a smooth curve of degree `2m`, `m ≥ 5`.
pub fn double_plane_invariants(m: u64) -> Result<CharNumbers> {
    if m < 5 {
        return Err(Error::InvalidParameter(format!("double plane parameter must be >= 5, got {m}")));
    }
    Family::DoublePlane(m).evaluate()
}

/// Double cover of `CP₁×CP₁` branched over a curve of bidegree `(2a, 2b)`, `a, b ≥ 3`.
pub fn quadric_bicover_invariants(a: u64, b: u64) -> Result<CharNumbers> {
    if a < 3 || b < 3 {
        return Err(Error::InvalidParameter(format!("bicover parameters must be >= 3, got ({a},{b})")));
    }
    Family::QuadricBicover(a, b).evaluate()
}

pub fn blow_up(x: &CharNumbers, k: u64) -> CharNumbers {
    x.blow_up(k)
}

pub fn connected_sum(a: &CharNumbers, b: &CharNumbers) -> CharNumbers {
    a.connected_sum(b)
}

pub fn c1sq(x: &CharNumbers) -> BigInt {
    x.c1sq()
}

/// Root constructors of a [`SurfaceSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Smooth hypersurface of degree `ℓ` in `CP₃`.
    Hypersurface(u64),
    /// Double cover of `CP₂` branched along a smooth curve of degree `2m`.
    DoublePlane(u64),
    /// Double cover of `CP₁×CP₁` branched along a curve of bidegree `(2a, 2b)`.
    QuadricBicover(u64, u64),
    Cp2,
    Cp2Bar,
    /// `CP₂ # 9 C̄P₂` with its elliptic fibration.
    RationalElliptic,
    /// Geometrically ruled surface over a curve of the given genus.
    RuledSurface(u64),
    /// Minimal surface on the Noether line `c₁² = 2p_g − 4` known only through its numbers.
    AbstractNoetherLine { c1sq: u64, p_g: u64 },
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match *self {
            Family::Hypersurface(0) => bad("hypersurface degree must be >= 1".into()),
            Family::DoublePlane(0) => bad("double plane parameter must be >= 1".into()),
            Family::QuadricBicover(a, b) if a == 0 || b == 0 => bad("bicover parameters must be >= 1".into()),
            Family::AbstractNoetherLine { c1sq, p_g } => {
                if p_g < 3 || c1sq + 4 != 2 * p_g {
                    bad(format!("({c1sq}, {p_g}) is not on the Noether line c1^2 = 2 p_g - 4 with p_g >= 3"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Characteristic numbers of the root surface.
    pub fn evaluate(&self) -> Result<CharNumbers> {
        self.validate()?;
        use KodairaDim::*;
        match *self {
            Family::Hypersurface(l) => {
                let c1sq = BigInt::from(l) * BigInt::from(l as i64 - 4).pow(2);
                let tag = match l {
                    1 | 2 => ComplexTag::of(MinusInf, true),
                    3 => ComplexTag::of(MinusInf, false),
                    4 => ComplexTag::of(Zero, true),
                    _ => ComplexTag::minimal_general_type(),
                };
                CharNumbers::from_noether(&c1sq, &binomial3(l - 1), tag)
            }
            Family::DoublePlane(m) => {
                let c1sq = big(2) * BigInt::from(m as i64 - 3).pow(2);
                let p_g = BigInt::from(m - 1) * BigInt::from(m as i64 - 2) / big(2);
                let tag = match m {
                    1 => ComplexTag::of(MinusInf, true),
                    2 => ComplexTag::of(MinusInf, false),
                    3 => ComplexTag::of(Zero, true),
                    _ => ComplexTag::minimal_general_type(),
                };
                CharNumbers::from_noether(&c1sq, &p_g, tag)
            }
            Family::QuadricBicover(a, b) => {
                let c1sq = big(4) * BigInt::from(a as i64 - 2) * BigInt::from(b as i64 - 2);
                let p_g = BigInt::from(a - 1) * BigInt::from(b - 1);
                let tag = match (a.min(b), a.max(b)) {
                    (1, _) => ComplexTag::of(MinusInf, false),
                    (2, 2) => ComplexTag::of(Zero, true),
                    (2, _) => ComplexTag::of(One, true),
                    _ => ComplexTag::minimal_general_type(),
                };
                CharNumbers::from_noether(&c1sq, &p_g, tag)
            }
            Family::Cp2 => Ok(CharNumbers::cp2()),
            Family::Cp2Bar => Ok(CharNumbers::cp2bar()),
            Family::RationalElliptic => {
                CharNumbers::from_noether(&big(0), &big(0), ComplexTag::of(MinusInf, false))
            }
            Family::RuledSurface(0) => Ok(CharNumbers::from_noether(&big(8), &big(0), ComplexTag::of(MinusInf, true))?
                .with_spin_status(SpinStatus::Spin)?),
            Family::RuledSurface(g) => {
                // χ = 2 − 2b₁ + b₂ with b₁ = 2g, b₂ = 2.
                let chi = big(4) - big(4) * BigInt::from(g);
                Ok(CharNumbers::new(chi, big(0), big(1), big(1), false)?
                    .with_complex_structure(ComplexTag::of(MinusInf, true)))
            }
            Family::AbstractNoetherLine { c1sq, p_g } => {
                CharNumbers::from_noether(&BigInt::from(c1sq), &BigInt::from(p_g), ComplexTag::minimal_general_type())
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hypersurface(l) => write!(f, "hypersurface({l})"),
            Family::DoublePlane(m) => write!(f, "doubleplane({m})"),
            Family::QuadricBicover(a, b) => write!(f, "quadric_bicover({a},{b})"),
            Family::Cp2 => f.write_str("CP2"),
            Family::Cp2Bar => f.write_str("CP2bar"),
            Family::RationalElliptic => f.write_str("rational_elliptic"),
            Family::RuledSurface(g) => write!(f, "ruled({g})"),
            Family::AbstractNoetherLine { c1sq, p_g } => write!(f, "noether_line({c1sq},{p_g})"),
        }
    }
}

/// A constructive recipe: root family, then further connected summands, then `k` blow-ups.
///
/// Summands equal to a bare `CP2bar` are always folded into the blow-up count, so the
/// canonical text form is unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceSpec {
    root: Family,
    blowups: u64,
    summands: Vec<SurfaceSpec>,
}

impl SurfaceSpec {
    pub fn new(root: Family) -> Self {
        SurfaceSpec { root, blowups: 0, summands: Vec::new() }
    }

    pub fn blown_up(mut self, k: u64) -> Self {
        self.blowups += k;
        self
    }

    pub fn connect(mut self, summand: SurfaceSpec) -> Self {
        if summand.root == Family::Cp2Bar && summand.summands.is_empty() {
            self.blowups += 1 + summand.blowups;
        } else {
            self.summands.push(summand);
        }
        self
    }

    pub fn root(&self) -> &Family {
        &self.root
    }
    pub fn blowups(&self) -> u64 {
        self.blowups
    }
    pub fn summands(&self) -> &[SurfaceSpec] {
        &self.summands
    }

    /// This surface without its blow-ups: the `X` in `X # k C̄P₂`.
    pub fn unblown(&self) -> SurfaceSpec {
        SurfaceSpec { blowups: 0, ..self.clone() }
    }

    fn is_bare(&self) -> bool {
        self.blowups == 0 && self.summands.is_empty()
    }

    /// Deterministic evaluation: blow up the root, then add each summand.
    pub fn evaluate(&self) -> Result<CharNumbers> {
        let mut out = self.root.evaluate()?.blow_up(self.blowups);
        for s in &self.summands {
            out = out.connected_sum(&s.evaluate()?);
        }
        Ok(out)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, count: u64, atom: &str) -> fmt::Result {
    if count == 1 { f.write_str(atom) } else { write!(f, "{count}*{atom}") }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = self.root.to_string();
        let mut rest = &self.summands[..];
        let mut root_count = 1;
        let mut blowups = self.blowups;
        if self.root == Family::Cp2Bar {
            root_count += blowups;
            blowups = 0;
        } else {
            while let Some(first) = rest.first() {
                if first.is_bare() && first.root == self.root {
                    root_count += 1;
                    rest = &rest[1..];
                } else {
                    break;
                }
            }
        }
        write_term(f, root_count, &root)?;
        let mut i = 0;
        while i < rest.len() {
            let mut run = 1;
            while i + run < rest.len() && rest[i + run] == rest[i] {
                run += 1;
            }
            let atom = if rest[i].is_bare() { rest[i].root.to_string() } else { format!("({})", rest[i]) };
            f.write_str(" + ")?;
            write_term(f, run as u64, &atom)?;
            i += run;
        }
        if blowups > 0 {
            f.write_str(" + ")?;
            write_term(f, blowups, "CP2bar")?;
        }
        Ok(())
    }
}

impl FromStr for SurfaceSpec {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let mut p = Parser { text, pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(Error::parse(p.pos, "trailing input"));
        }
        Ok(spec)
    }
}

impl Serialize for SurfaceSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SurfaceSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

enum Atom {
    Family(Family),
    Group(SurfaceSpec),
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) { Ok(()) } else { Err(Error::parse(self.pos, format!("expected '{c}'"))) }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(Error::parse(self.pos, "expected a number"));
        }
        let start = self.pos;
        self.pos += digits;
        self.text[start..self.pos].parse().map_err(|_| Error::parse(start, "number too large"))
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let len = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .count();
        let start = self.pos;
        self.pos += len;
        &self.text[start..self.pos]
    }

    fn args(&mut self, n: usize) -> Result<Vec<u64>> {
        self.expect('(')?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                self.expect(',')?;
            }
            out.push(self.number()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn family(&mut self) -> Result<Family> {
        let start = self.pos;
        let name = self.ident();
        let family = match name {
            "hypersurface" => Family::Hypersurface(self.args(1)?[0]),
            "doubleplane" => Family::DoublePlane(self.args(1)?[0]),
            "quadric_bicover" => {
                let a = self.args(2)?;
                Family::QuadricBicover(a[0], a[1])
            }
            "CP2" => Family::Cp2,
            "CP2bar" => Family::Cp2Bar,
            "rational_elliptic" => Family::RationalElliptic,
            "ruled" => Family::RuledSurface(self.args(1)?[0]),
            "noether_line" => {
                let a = self.args(2)?;
                Family::AbstractNoetherLine { c1sq: a[0], p_g: a[1] }
            }
            "" => return Err(Error::parse(start, "expected a surface")),
            other => return Err(Error::parse(start, format!("unknown family '{other}'"))),
        };
        family.validate().map_err(|e| Error::parse(start, e.to_string()))?;
        Ok(family)
    }

    fn atom(&mut self) -> Result<Atom> {
        if self.eat('(') {
            let inner = self.spec()?;
            self.expect(')')?;
            Ok(Atom::Group(inner))
        } else {
            Ok(Atom::Family(self.family()?))
        }
    }

    fn term(&mut self) -> Result<(u64, Atom, usize)> {
        self.skip_ws();
        let start = self.pos;
        let count = if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            let n = self.number()?;
            self.expect('*')?;
            n
        } else {
            1
        };
        if count == 0 {
            return Err(Error::parse(start, "multiplicity must be positive"));
        }
        Ok((count, self.atom()?, start))
    }

    fn spec(&mut self) -> Result<SurfaceSpec> {
        let (count, atom, start) = self.term()?;
        let Atom::Family(root) = atom else {
            return Err(Error::parse(start, "the first term must be a family, not a group"));
        };
        let mut spec = SurfaceSpec::new(root.clone());
        for _ in 1..count {
            spec = spec.connect(SurfaceSpec::new(root.clone()));
        }
        while self.eat('+') {
            let (count, atom, _) = self.term()?;
            let summand = match atom {
                Atom::Family(f) => SurfaceSpec::new(f),
                Atom::Group(g) => g,
            };
            for _ in 0..count {
                spec = spec.connect(summand.clone());
            }
        }
        Ok(spec)
    }
}
