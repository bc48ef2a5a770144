//! Integer cohomology lattices with their intersection pairing, polarizations
//! (maximal positive subspaces), self-dual projections and the blow-up
//! spin^c-class construction.

// Elimination over symmetric matrices reads best with explicit indices.
#![allow(clippy::needless_range_loop)]

use log::warn;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, from_big, serde_rat, serde_rat_matrix, serde_rat_vec, Rat};
use crate::surface::CharNumbers;

pub mod sampling;

/// Symmetric nondegenerate integer form on `H²(M, Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct IntersectionLattice {
    gram: Vec<Vec<BigInt>>,
    b_plus: usize,
    b_minus: usize,
    determinant: BigInt,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    #[serde(with = "serde_rat_matrix")]
    gram: Vec<Vec<Rat>>,
    #[serde(default)]
    signature: Option<(usize, usize)>,
}

impl From<IntersectionLattice> for LatticeRepr {
    fn from(l: IntersectionLattice) -> Self {
        LatticeRepr {
            gram: l.gram.iter().map(|r| r.iter().map(from_big).collect()).collect(),
            signature: Some((l.b_plus, l.b_minus)),
        }
    }
}

impl TryFrom<LatticeRepr> for IntersectionLattice {
    type Error = Error;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        let gram = r
            .gram
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|q| {
                        if q.is_integer() {
                            Ok(q.to_integer())
                        } else {
                            Err(Error::Invariant(format!("gram entry {} is not an integer", fmt_rat(&q))))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let lattice = IntersectionLattice::new(gram)?;
        if let Some(sig) = r.signature {
            if sig != lattice.signature() {
                return Err(Error::Invariant(format!(
                    "stored signature {sig:?} does not match computed {:?}",
                    lattice.signature()
                )));
            }
        }
        Ok(lattice)
    }
}

/// Signs of the pivots of a congruence diagonalization, and the determinant.
/// Returns `None` when the matrix is singular.
fn inertia(matrix: &[Vec<Rat>]) -> Option<(usize, usize, Rat)> {
    let n = matrix.len();
    let mut a: Vec<Vec<Rat>> = matrix.to_vec();
    let (mut pos, mut neg) = (0, 0);
    let mut det = Rat::one();
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else {
                let j = (i + 1..n).find(|&j| !a[i][j].is_zero())?;
                // Replace e_i by e_i + e_j: the new diagonal entry is 2 a_ij.
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
            }
        }
        let pivot = a[i][i].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        det *= &pivot;
        for r in i + 1..n {
            if a[r][i].is_zero() {
                continue;
            }
            let factor = &a[r][i] / &pivot;
            for c in i..n {
                let v = &factor * &a[i][c];
                a[r][c] -= v;
            }
        }
        for r in i + 1..n {
            a[i][r] = Rat::zero();
            a[r][i] = Rat::zero();
        }
    }
    Some((pos, neg, det))
}

/// Solves `A x = b` exactly; `A` must be nonsingular.
fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &a[col][col];
            for c in col..n {
                let v = &factor * &a[col][c];
                a[r][c] -= v;
            }
            let v = &factor * &b[col];
            b[r] -= v;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

impl IntersectionLattice {
    pub fn new(gram: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::InvalidParameter("lattice rank must be positive".into()));
        }
        if let Some(row) = gram.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension { expected: n, got: row.len() });
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Invariant(format!("gram matrix is not symmetric at ({i},{j})")));
                }
            }
        }
        let rational: Vec<Vec<Rat>> = gram.iter().map(|r| r.iter().map(from_big).collect()).collect();
        let (b_plus, b_minus, det) = inertia(&rational).ok_or(Error::Degenerate)?;
        Ok(IntersectionLattice { gram, b_plus, b_minus, determinant: det.to_integer() })
    }

    /// `⟨1⟩^{b⁺} ⊕ ⟨−1⟩^{b⁻}`, the form of `b⁺ CP₂ # b⁻ C̄P₂`.
    pub fn diagonal(b_plus: usize, b_minus: usize) -> Result<Self> {
        let n = b_plus + b_minus;
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i == j, i < b_plus) {
                        (false, _) => BigInt::zero(),
                        (true, true) => BigInt::one(),
                        (true, false) => -BigInt::one(),
                    })
                    .collect()
            })
            .collect();
        IntersectionLattice::new(gram)
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &IntersectionLattice) -> IntersectionLattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            gram[i][..n].clone_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].clone_from_slice(&other.gram[i]);
        }
        IntersectionLattice {
            gram,
            b_plus: self.b_plus + other.b_plus,
            b_minus: self.b_minus + other.b_minus,
            determinant: &self.determinant * &other.determinant,
        }
    }

    /// The lattice of `X # k C̄P₂`: this lattice followed by `k` classes `E_j` with `E_j² = −1`.
    pub fn blow_up(&self, k: usize) -> IntersectionLattice {
        if k == 0 {
            return self.clone();
        }
        self.direct_sum(&IntersectionLattice::diagonal(0, k).expect("nonempty diagonal"))
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }
    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }
    pub fn signature(&self) -> (usize, usize) {
        (self.b_plus, self.b_minus)
    }
    pub fn b_plus(&self) -> usize {
        self.b_plus
    }
    pub fn determinant(&self) -> &BigInt {
        &self.determinant
    }
    pub fn is_unimodular(&self) -> bool {
        self.determinant.abs().is_one()
    }
    pub fn is_diagonal(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| i == j || self.gram[i][j].is_zero()))
    }

    fn check_len(&self, v: &[Rat]) -> Result<()> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.rank(), got: v.len() })
        }
    }

    pub fn pairing(&self, a: &[Rat], b: &[Rat]) -> Result<Rat> {
        self.check_len(a)?;
        self.check_len(b)?;
        let mut acc = Rat::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() && !self.gram[i][j].is_zero() {
                    acc += ai * bj * from_big(&self.gram[i][j]);
                }
            }
        }
        Ok(acc)
    }

    pub fn square(&self, a: &[Rat]) -> Result<Rat> {
        self.pairing(a, a)
    }

    /// `(2χ + 3τ)` of a simply connected manifold with this form: `4 + 5b⁺ − b⁻`.
    pub fn simply_connected_c1sq(&self) -> BigInt {
        BigInt::from(4 + 5 * self.b_plus as i64 - self.b_minus as i64)
    }
}

/// A class in `H²(M, Q)` written in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohClass {
    #[serde(with = "serde_rat_vec")]
    pub coeffs: Vec<Rat>,
}

impl CohClass {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        CohClass { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        CohClass { coeffs: coeffs.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect() }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn negated(&self) -> CohClass {
        CohClass { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Extends by zeros to `rank` coordinates (pull-back along the collapsing map).
    pub fn padded(&self, rank: usize) -> CohClass {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(rank, Rat::zero());
        CohClass { coeffs }
    }
}

/// A `b⁺`-dimensional subspace on which the pairing is positive definite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polarization {
    #[serde(with = "serde_rat_matrix")]
    basis: Vec<Vec<Rat>>,
}

impl Polarization {
    /// Validates the dimension (`= b⁺`, i.e. maximal) and positive definiteness.
    pub fn new(basis: Vec<Vec<Rat>>, lattice: &IntersectionLattice) -> Result<Self> {
        let h = Polarization { basis };
        h.validate(lattice)?;
        Ok(h)
    }

    /// The coordinate axes with positive diagonal entry of a diagonal lattice.
    pub fn standard(lattice: &IntersectionLattice) -> Result<Self> {
        if !lattice.is_diagonal() {
            return Err(Error::Unsupported("standard polarization needs a diagonal lattice".into()));
        }
        let n = lattice.rank();
        let basis = (0..n)
            .filter(|&i| lattice.gram[i][i].is_positive())
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        Polarization::new(basis, lattice)
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn gram(&self, lattice: &IntersectionLattice) -> Result<Vec<Vec<Rat>>> {
        self.basis
            .iter()
            .map(|u| self.basis.iter().map(|v| lattice.pairing(u, v)).collect())
            .collect()
    }

    pub fn validate(&self, lattice: &IntersectionLattice) -> Result<()> {
        if self.dim() != lattice.b_plus() {
            return Err(Error::Dimension { expected: lattice.b_plus(), got: self.dim() });
        }
        let gram = self.gram(lattice)?;
        match inertia(&gram) {
            Some((p, _, _)) if p == self.dim() => Ok(()),
            _ => Err(Error::NotPositiveDefinite),
        }
    }
}

/// Orthogonal projection onto a polarization and its exact square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projection {
    #[serde(with = "serde_rat_vec")]
    pub vector: Vec<Rat>,
    #[serde(with = "serde_rat")]
    pub square: Rat,
}

/// Projects `c` onto `H` along `H^⊥` (orthogonal complement under the pairing).
pub fn project_plus(c: &CohClass, h: &Polarization, lattice: &IntersectionLattice) -> Result<Projection> {
    h.validate(lattice)?;
    project_validated(c, h, lattice)
}

fn project_validated(c: &CohClass, h: &Polarization, lattice: &IntersectionLattice) -> Result<Projection> {
    lattice.check_len(&c.coeffs)?;
    let gram = h.gram(lattice)?;
    let rhs: Vec<Rat> = h.basis.iter().map(|u| lattice.pairing(u, &c.coeffs)).collect::<Result<_>>()?;
    let weights = solve(gram, rhs.clone()).ok_or(Error::NotPositiveDefinite)?;
    let mut vector = vec![Rat::zero(); lattice.rank()];
    for (w, u) in weights.iter().zip(&h.basis) {
        for (acc, ui) in vector.iter_mut().zip(u) {
            *acc += w * ui;
        }
    }
    let square = weights.iter().zip(&rhs).map(|(w, r)| w * r).sum();
    Ok(Projection { vector, square })
}

/// A spin^c class on `M` with `(c₁⁺)²` relative to a polarization and its virtual dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinCClass {
    pub c1l: CohClass,
    #[serde(with = "serde_rat")]
    pub c1_plus_sq: Rat,
    #[serde(with = "crate::rational::serde_int")]
    pub virtual_dim: BigInt,
}

/// Output of [`lemma_who_class`], with the intermediate quantities of the construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowUpClass {
    pub class: SpinCClass,
    /// `([c₁(X)]⁺)²`, the square of the projection of the pulled-back class.
    #[serde(with = "serde_rat")]
    pub x_plus_sq: Rat,
    /// Chosen orientation `ε_j ∈ {+1, −1}` of each exceptional class.
    pub orientations: Vec<i8>,
    /// Whether the class was negated to make `c₁⁺` future-pointing (`b⁺ = 1` only).
    pub time_normalized: bool,
}

/// Builds `c₁(L) = c₁(X) + Σ ε_j E_j` on `M = X # k C̄P₂` with every `ε_j` chosen so that
/// `[c₁(X)]⁺ · ε_j E_j ≥ 0` (ties resolved to `+1`).
///
/// `h` is a polarization of the blown-up lattice `x_lattice ⊕ ⟨−1⟩^k`. The result satisfies
/// `(c₁⁺)² ≥ ([c₁(X)]⁺)² ≥ (2χ+3τ)(X)` exactly.
pub fn lemma_who_class(
    x_lattice: &IntersectionLattice,
    c1x: &CohClass,
    x_c1sq: &BigInt,
    k: usize,
    h: &Polarization,
) -> Result<BlowUpClass> {
    if !x_c1sq.is_positive() {
        return Err(Error::Precondition(format!("(2chi + 3tau)(X) = {x_c1sq} must be positive")));
    }
    let c1x_sq = x_lattice.square(&c1x.coeffs)?;
    if c1x_sq < from_big(x_c1sq) {
        return Err(Error::Precondition(format!(
            "c1(X)^2 = {} is below (2chi + 3tau)(X) = {x_c1sq}; negative virtual dimension",
            fmt_rat(&c1x_sq)
        )));
    }
    let m = x_lattice.blow_up(k);
    h.validate(&m)?;
    let rank_x = x_lattice.rank();
    let pulled = c1x.padded(m.rank());
    let x_plus = project_validated(&pulled, h, &m)?;

    // E_j has a single -1 on the diagonal, so x⁺·E_j = -(x⁺)_{rank_x + j}.
    let orientations: Vec<i8> = (0..k)
        .map(|j| if x_plus.vector[rank_x + j].is_positive() { -1 } else { 1 })
        .collect();
    let mut c1l = pulled;
    for (j, eps) in orientations.iter().enumerate() {
        c1l.coeffs[rank_x + j] += Rat::from_integer(BigInt::from(*eps));
    }
    let mut projection = project_validated(&c1l, h, &m)?;

    let m_c1sq = x_c1sq - BigInt::from(k);
    let mut time_normalized = false;
    if m.b_plus() == 1 && m_c1sq.is_positive() && m.pairing(&projection.vector, &h.basis[0])?.is_negative() {
        c1l = c1l.negated();
        projection.vector.iter_mut().for_each(|v| *v = -v.clone());
        time_normalized = true;
    }

    let c1l_sq = m.square(&c1l.coeffs)?;
    let excess = &c1l_sq - from_big(&m_c1sq);
    if !excess.is_integer() || !excess.to_integer().is_multiple_of(&BigInt::from(4)) {
        return Err(Error::MalformedClass(format!(
            "c1(L)^2 - (2chi + 3tau)(M) = {} is not divisible by 4",
            fmt_rat(&excess)
        )));
    }
    debug_assert!(projection.square >= x_plus.square && x_plus.square >= from_big(x_c1sq));
    Ok(BlowUpClass {
        class: SpinCClass { c1l, c1_plus_sq: projection.square, virtual_dim: excess.to_integer() / 4 },
        x_plus_sq: x_plus.square,
        orientations,
        time_normalized,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityCheck {
    Characteristic,
    NotCharacteristic,
    /// Non-diagonal lattice: `w₂` is not available, no check performed.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualDimension {
    #[serde(with = "crate::rational::serde_int")]
    pub value: BigInt,
    /// `value ≥ 0` and even; otherwise the invariant is zero by definition.
    pub defined: bool,
    pub parity: ParityCheck,
}

/// `ℓ = [c₁²(L) − (2χ+3τ)(M)]/4`.
pub fn virtual_dimension(c1l: &CohClass, lattice: &IntersectionLattice, m: &CharNumbers) -> Result<VirtualDimension> {
    let sq = lattice.square(&c1l.coeffs)?;
    let excess = sq - from_big(&m.c1sq());
    if !excess.is_integer() || !excess.to_integer().is_multiple_of(&BigInt::from(4)) {
        return Err(Error::MalformedClass(format!(
            "c1(L)^2 - (2chi + 3tau) = {} is not divisible by 4",
            fmt_rat(&excess)
        )));
    }
    let value: BigInt = excess.to_integer() / 4;
    let defined = !value.is_negative() && value.is_even();
    let parity = if lattice.is_diagonal() {
        // On ⟨±1⟩^n the characteristic classes are exactly the all-odd integer vectors.
        let odd = c1l.coeffs.iter().all(|c| c.is_integer() && c.to_integer().is_odd());
        if odd { ParityCheck::Characteristic } else { ParityCheck::NotCharacteristic }
    } else {
        warn!("characteristic-class check skipped for a non-diagonal lattice");
        ParityCheck::Skipped
    };
    Ok(VirtualDimension { value, defined, parity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn signature_of_hyperbolic_plane() {
        let h = IntersectionLattice::new(vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0)],
        ])
        .unwrap();
        assert_eq!(h.signature(), (1, 1));
        assert_eq!(h.determinant(), &BigInt::from(-1));
        assert!(!h.is_diagonal());
    }

    #[test]
    fn degenerate_and_asymmetric_rejected() {
        let zero = IntersectionLattice::new(vec![vec![BigInt::from(0)]]);
        assert_eq!(zero, Err(Error::Degenerate));
        let asym = IntersectionLattice::new(vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(0), BigInt::from(1)],
        ]);
        assert!(asym.is_err());
    }

    #[test]
    fn projection_onto_own_span() {
        let l = IntersectionLattice::diagonal(1, 3).unwrap();
        let c = CohClass::from_ints(&[5, 1, 2, 0]);
        let h = Polarization::new(vec![c.coeffs.clone()], &l).unwrap();
        let p = project_plus(&c, &h, &l).unwrap();
        assert_eq!(p.vector, c.coeffs);
        assert_eq!(p.square, int(20));
    }

    #[test]
    fn projection_on_diagonal_form() {
        let l = IntersectionLattice::diagonal(1, 4).unwrap();
        let c = CohClass::from_ints(&[3, 1, 1, 1, 1]);
        let h = Polarization::standard(&l).unwrap();
        let p = project_plus(&c, &h, &l).unwrap();
        assert_eq!(p.vector, ints(&[3, 0, 0, 0, 0]));
        assert_eq!(p.square, int(9));
    }

    #[test]
    fn non_positive_polarization_rejected() {
        let l = IntersectionLattice::diagonal(1, 1).unwrap();
        assert_eq!(Polarization::new(vec![ints(&[1, 2])], &l), Err(Error::NotPositiveDefinite));
        assert!(matches!(Polarization::new(vec![ints(&[1, 0]), ints(&[0, 1])], &l), Err(Error::Dimension { .. })));
    }

    #[test]
    fn who_class_with_no_blowups() {
        let l = IntersectionLattice::diagonal(1, 0).unwrap();
        let c1x = CohClass::from_ints(&[15]);
        let h = Polarization::standard(&l).unwrap();
        let out = lemma_who_class(&l, &c1x, &BigInt::from(225), 0, &h).unwrap();
        assert_eq!(out.class.c1l, c1x);
        assert_eq!(out.class.c1_plus_sq, out.x_plus_sq);
        assert_eq!(out.class.virtual_dim, BigInt::from(0));
    }

    #[test]
    fn who_class_rank_one_many_blowups() {
        let l = IntersectionLattice::diagonal(1, 0).unwrap();
        let c1x = CohClass::from_ints(&[15]);
        let m = l.blow_up(117);
        // Time-like axis tilted slightly into the exceptional directions.
        let mut axis = vec![Rat::zero(); m.rank()];
        axis[0] = int(1);
        for (j, a) in axis.iter_mut().enumerate().skip(1) {
            *a = rat(if j % 2 == 0 { 1 } else { -1 }, 50);
        }
        let h = Polarization::new(vec![axis], &m).unwrap();
        let out = lemma_who_class(&l, &c1x, &BigInt::from(225), 117, &h).unwrap();
        assert!(out.class.c1_plus_sq >= int(225));
        assert!(out.x_plus_sq >= int(225));
    }

    #[test]
    fn who_class_orthogonal_exceptionals_tie_to_plus() {
        let l = IntersectionLattice::diagonal(1, 0).unwrap();
        let h = Polarization::standard(&l.blow_up(3)).unwrap();
        let out = lemma_who_class(&l, &CohClass::from_ints(&[3]), &BigInt::from(9), 3, &h).unwrap();
        assert_eq!(out.orientations, vec![1, 1, 1]);
        assert_eq!(out.class.c1_plus_sq, out.x_plus_sq);
    }

    #[test]
    fn who_class_preconditions() {
        let l = IntersectionLattice::diagonal(1, 0).unwrap();
        let h = Polarization::standard(&l).unwrap();
        let c = CohClass::from_ints(&[3]);
        assert!(matches!(lemma_who_class(&l, &c, &BigInt::from(0), 0, &h), Err(Error::Precondition(_))));
        assert!(matches!(lemma_who_class(&l, &c, &BigInt::from(10), 0, &h), Err(Error::Precondition(_))));
    }

    #[test]
    fn virtual_dimension_cases() {
        // CP2 # 9 CP2bar has 2chi + 3tau = 0 and the form <1> + 9<-1>.
        let l = IntersectionLattice::diagonal(1, 9).unwrap();
        let m = CharNumbers::simply_connected_from(BigInt::from(12), BigInt::from(-8)).unwrap();
        let c = CohClass::from_ints(&[3, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
        let vd = virtual_dimension(&c, &l, &m).unwrap();
        assert_eq!((vd.value.clone(), vd.defined, vd.parity), (BigInt::from(0), true, ParityCheck::Characteristic));
        // c^2 = 8: l = 2, defined.
        let c = CohClass::from_ints(&[3, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        let vd = virtual_dimension(&c, &l, &m).unwrap();
        assert_eq!((vd.value.clone(), vd.defined), (BigInt::from(2), true));
        // c^2 = 4: l = 1, invariant zero by definition.
        let c = CohClass::from_ints(&[3, 1, 1, 1, 1, 1, 0, 0, 0, 0]);
        let vd = virtual_dimension(&c, &l, &m).unwrap();
        assert_eq!((vd.value.clone(), vd.defined), (BigInt::from(1), false));
        // c^2 = 2: not divisible by 4.
        let c = CohClass::from_ints(&[3, 1, 1, 1, 1, 1, 1, 1, 0, 0]);
        assert!(matches!(virtual_dimension(&c, &l, &m), Err(Error::MalformedClass(_))));
    }

    #[test]
    fn lattice_json_uses_rational_strings() {
        let l = IntersectionLattice::diagonal(1, 1).unwrap();
        let json = serde_json::to_value(&l).unwrap();
        assert_eq!(json["gram"][1][1], "-1/1");
        let back: IntersectionLattice = serde_json::from_value(json).unwrap();
        assert_eq!(back, l);
        let h = Polarization::standard(&l).unwrap();
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(json, r#"{"basis":[["1/1","0/1"]]}"#);
    }
}
