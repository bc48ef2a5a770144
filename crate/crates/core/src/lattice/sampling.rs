//! Seeded random instances for the blow-up class construction.
//!
//! Polarizations are the standard time-like axes of a diagonal form plus small
//! rational perturbations, re-checked for positive definiteness. This does not
//! model the period map; the construction holds for every polarization.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::{CohClass, IntersectionLattice, Polarization};
use crate::rational::{int, Rat};

#[derive(Clone, Debug)]
pub struct LemmaInstance {
    pub x_lattice: IntersectionLattice,
    pub c1x: CohClass,
    /// `(2χ+3τ)(X) = 4 + 5b⁺ − b⁻` for the simply connected `X` with this form.
    pub x_c1sq: BigInt,
    pub k: usize,
    pub h: Polarization,
}

fn odd<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    // uniform over the odd integers in [-bound, bound]
    let half = (bound + 1) / 2;
    2 * rng.gen_range(-half..half) + 1
}

/// Random polarization of a diagonal lattice near its standard one.
pub fn perturbed_polarization<R: Rng>(rng: &mut R, lattice: &IntersectionLattice) -> Polarization {
    let n = lattice.rank();
    let positive: Vec<usize> = (0..n).filter(|&i| lattice.gram()[i][i] == BigInt::one()).collect();
    let mut scale = 1i64;
    loop {
        // one denominator per polarization keeps pairings small
        let denom = BigInt::from(rng.gen_range(4..=40) * scale);
        let basis: Vec<Vec<Rat>> = positive
            .iter()
            .map(|&i| {
                (0..n)
                    .map(|j| {
                        if j == i {
                            Rat::one()
                        } else if rng.gen_bool(0.7) {
                            Rat::new(BigInt::from(rng.gen_range(-3..=3)), denom.clone())
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        if let Ok(h) = Polarization::new(basis, lattice) {
            return h;
        }
        scale *= 2;
    }
}

/// A random instance with `rank(X) + k ≤ max_rank` and `k ≤ max_k`.
pub fn lemma_instance<R: Rng>(rng: &mut R, max_rank: usize, max_k: usize) -> LemmaInstance {
    let k = rng.gen_range(0..=max_k.min(max_rank - 1));
    let room = max_rank - k;
    let p = rng.gen_range(1..=room.min(6));
    // keep (2χ+3τ)(X) = 4 + 5p - q positive
    let q_max = (room - p).min(3 + 5 * p);
    let q = rng.gen_range(0..=q_max);
    let x_lattice = IntersectionLattice::diagonal(p, q).expect("nonempty diagonal form");
    let x_c1sq = x_lattice.simply_connected_c1sq();

    let mut coeffs: Vec<i64> = (0..p).map(|_| odd(rng, 9)).collect();
    coeffs.extend((0..q).map(|_| odd(rng, 3)));
    let square = |c: &[i64]| c[..p].iter().map(|a| a * a).sum::<i64>() - c[p..].iter().map(|b| b * b).sum::<i64>();
    while BigInt::from(square(&coeffs)) < x_c1sq {
        coeffs[0] += 2 * coeffs[0].signum();
    }
    let c1x = CohClass::new(coeffs.iter().map(|&c| int(c)).collect());
    let h = perturbed_polarization(rng, &x_lattice.blow_up(k));
    LemmaInstance { x_lattice, c1x, x_c1sq, k, h }
}
