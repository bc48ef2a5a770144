//! Brute-force check that the Weyl/scalar quadratic bottoms out at `32/57`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{keen_argmin, keen_quadratic, BetaParam};
use crate::error::{Error, Result};
use crate::rational::{rat, serde_rat, to_f64, Rat, RealValue};

pub const MIN_GRID_SIZE: usize = 1_000;
pub const DEFAULT_GRID_SIZE: usize = 1_000_000;

const MIN_TOLERANCE: f64 = 1e-9;
const ARGMIN_TOLERANCE: f64 = 1e-6;
const CHUNK: usize = 4_096;

/// `f(β) = [β + 2(4 − 3√β)²]/3` in floating point.
pub fn keen_f64(beta: f64) -> f64 {
    let w = 4.0 - 3.0 * beta.sqrt();
    (beta + 2.0 * w * w) / 3.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KeenMinimumCertificate {
    pub grid_size: usize,
    /// Best grid point.
    pub grid_argmin: f64,
    pub grid_min: f64,
    /// After golden-section refinement.
    pub refined_argmin: f64,
    pub refined_min: f64,
    #[serde(with = "serde_rat")]
    pub argmin: Rat,
    #[serde(with = "serde_rat")]
    pub min: Rat,
    /// `|refined_min − 32/57|`
    pub min_residual: f64,
    /// `|refined_argmin − (24/19)²|`
    pub argmin_residual: f64,
    /// `f(16/9) = 16/27`, the floor of the trivial branch.
    #[serde(with = "serde_rat")]
    pub trivial_branch_floor: Rat,
    pub trivial_branch_above_min: bool,
    pub passed: bool,
}

fn grid_point(i: usize, n: usize) -> f64 {
    1.0 + (7.0 / 9.0) * (i as f64) / ((n - 1) as f64)
}

/// Deterministic parallel grid minimum: per-chunk minima, reduced by `(value, index)`.
fn grid_minimum(n: usize) -> (usize, f64) {
    (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            (lo..hi)
                .map(|i| (i, keen_f64(grid_point(i, n))))
                .fold((usize::MAX, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
        })
        .reduce(
            || (usize::MAX, f64::INFINITY),
            |a, b| match a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)) {
                std::cmp::Ordering::Greater => b,
                _ => a,
            },
        )
}

fn golden_section(mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    for _ in 0..200 {
        if (b - a).abs() < 1e-15 {
            break;
        }
        if keen_f64(c) < keen_f64(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    (a + b) / 2.0
}

/// Grid search over `β ∈ [1, 16/9]`, local refinement, and the exact check
/// `f((24/19)²) = 32/57`.
pub fn verify_keen_minimum(grid_size: usize) -> Result<KeenMinimumCertificate> {
    if grid_size < MIN_GRID_SIZE {
        return Err(Error::InvalidParameter(format!("grid size {grid_size} < {MIN_GRID_SIZE}")));
    }
    let (idx, grid_min) = grid_minimum(grid_size);
    let step = (7.0 / 9.0) / ((grid_size - 1) as f64);
    let grid_argmin = grid_point(idx, grid_size);
    let lo = (grid_argmin - step).max(1.0);
    let hi = (grid_argmin + step).min(16.0 / 9.0);
    let refined_argmin = golden_section(lo, hi);
    let refined_min = keen_f64(refined_argmin);

    let argmin = keen_argmin();
    let exact = keen_quadratic(&BetaParam::new(argmin.clone())?)?;
    let min = match exact {
        RealValue::Exact(v) => v,
        RealValue::Enclosure(_) => return Err(Error::Invariant("(24/19)^2 has a rational root".into())),
    };
    let floor = match keen_quadratic(&BetaParam::new(rat(16, 9))?)? {
        RealValue::Exact(v) => v,
        RealValue::Enclosure(_) => return Err(Error::Invariant("16/9 has a rational root".into())),
    };
    let min_residual = (refined_min - to_f64(&rat(32, 57))).abs();
    let argmin_residual = (refined_argmin - to_f64(&argmin)).abs();
    let trivial_branch_above_min = floor > min;
    let passed = min == rat(32, 57)
        && min_residual < MIN_TOLERANCE
        && argmin_residual < ARGMIN_TOLERANCE
        && trivial_branch_above_min;
    Ok(KeenMinimumCertificate {
        grid_size,
        grid_argmin,
        grid_min,
        refined_argmin,
        refined_min,
        argmin,
        min,
        min_residual,
        argmin_residual,
        trivial_branch_floor: floor,
        trivial_branch_above_min,
        passed,
    })
}
