use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

use swgeo::obstructions::{
    asd_einstein_obstruction, coefficient_from_floor, hitchin_thorpe, hitchin_thorpe_k_min, hyperbolic_vanishing_coefficient,
    is_obstructed_at, k_min, lno_obstruction, minimal_general_type_obstruction, new_obstruction, obstruct,
    sw_vanishing_criterion, sw_vanishing_derived, Criterion, SwHypothesis, Verdict,
};
use swgeo::rational::{int, rat};
use swgeo::surface::{double_plane_invariants, hypersurface_invariants};
use swgeo::{CharNumbers, SurfaceSpec};

const SW: SwHypothesis = SwHypothesis::NonzeroSwAssumed;

/// Independent oracle: smallest `k` with `k·q ≥ p·c` in machine integers.
fn k_min_oracle(p: i128, q: i128, c: i128) -> i128 {
    (p * c + q - 1).div_euclid(q)
}

fn roots() -> Vec<CharNumbers> {
    let mut v: Vec<CharNumbers> = (5..=40).map(|l| hypersurface_invariants(l).unwrap()).collect();
    v.extend((5..=60).map(|m| double_plane_invariants(m).unwrap()));
    v
}

#[test]
fn thresholds_match_integer_oracle_and_are_ordered() {
    for x in roots() {
        let c = x.c1sq().to_i128().unwrap();
        let asd = asd_einstein_obstruction(&x, 0, SW).unwrap().k_min;
        let new = new_obstruction(&x, 0, SW).unwrap().k_min;
        let lno = lno_obstruction(&x, 0, SW).unwrap().k_min;
        assert_eq!(asd, BigInt::from(k_min_oracle(11, 27, c)));
        assert_eq!(new, BigInt::from(k_min_oracle(25, 57, c)));
        assert_eq!(lno, BigInt::from(k_min_oracle(2, 3, c)));
        assert!(asd <= new && new <= lno);
        // the rational threshold agrees with the float one away from integers
        let f = 25.0 / 57.0 * c as f64;
        if (f - f.round()).abs() > 1e-6 {
            assert_eq!(new.to_f64().unwrap(), f.ceil());
        }
    }
}

#[test]
fn x9_thresholds() {
    let x9 = hypersurface_invariants(9).unwrap();
    assert_eq!(asd_einstein_obstruction(&x9, 0, SW).unwrap().k_min, BigInt::from(92));
    assert_eq!(new_obstruction(&x9, 0, SW).unwrap().k_min, BigInt::from(99));
    assert_eq!(lno_obstruction(&x9, 0, SW).unwrap().k_min, BigInt::from(150));
    assert_eq!(hitchin_thorpe_k_min(&x9).unwrap(), BigInt::from(226));
    assert_eq!(new_obstruction(&x9, 99, SW).unwrap().verdict, Verdict::Obstructed);
    assert_eq!(new_obstruction(&x9, 98, SW).unwrap().verdict, Verdict::NotObstructed);
    assert_eq!(minimal_general_type_obstruction(&x9, 117).unwrap().verdict, Verdict::Obstructed);
    assert_eq!(new_obstruction(&double_plane_invariants(27).unwrap(), 0, SW).unwrap().k_min, BigInt::from(506));
}

#[test]
fn report_for_x9_blown_up_117_times() {
    let spec: SurfaceSpec = "hypersurface(9) + 117*CP2bar".parse().unwrap();
    let r = obstruct(&spec, false).unwrap();
    assert_eq!(r.verdict(Criterion::New), Verdict::Obstructed);
    assert_eq!(r.verdict(Criterion::AntiSelfDual), Verdict::Obstructed);
    assert_eq!(r.verdict(Criterion::Lno), Verdict::NotObstructed);
    assert_eq!(r.verdict(Criterion::HitchinThorpe), Verdict::NotObstructed);
    assert_eq!(r.new_threshold, Some(rat(25 * 225, 57)));
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["new_threshold"], "1875/19");
    assert_eq!(json["verdicts"]["New_25_57"], "Obstructed");
}

#[test]
fn threshold_criteria_need_seiberg_witten() {
    let spec: SurfaceSpec = "CP2 + 20*CP2bar".parse().unwrap();
    let r = obstruct(&spec, false).unwrap();
    for c in [Criterion::New, Criterion::Lno, Criterion::AntiSelfDual] {
        assert_eq!(r.verdict(c), Verdict::Inapplicable);
    }
    assert_eq!(r.verdict(Criterion::HitchinThorpe), Verdict::Obstructed);
    let x = hypersurface_invariants(9).unwrap();
    assert!(new_obstruction(&x, 10, SwHypothesis::NotAssumed).is_err());
    assert!(new_obstruction(&CharNumbers::cp2().blow_up(9), 1, SW).is_err());
    assert!(minimal_general_type_obstruction(&x.blow_up(1), 0).is_err());
}

#[test]
fn hitchin_thorpe_is_strict() {
    // K3-like numbers: χ = 24, τ = −16, 2χ = 48 = 3|τ|.
    let k3 = CharNumbers::simply_connected_from(BigInt::from(24), BigInt::from(-16)).unwrap();
    let ht = hitchin_thorpe(&k3);
    assert_eq!(ht.verdict, Verdict::NotObstructed);
    assert!(ht.borderline);
    assert_eq!(hitchin_thorpe(&k3.blow_up(1)).verdict, Verdict::Obstructed);
    let x9 = hypersurface_invariants(9).unwrap();
    assert_eq!(hitchin_thorpe(&x9.blow_up(225)).verdict, Verdict::NotObstructed);
    assert_eq!(hitchin_thorpe(&x9.blow_up(226)).verdict, Verdict::Obstructed);
}

#[test]
fn coefficients_follow_from_curvature_floors() {
    // New: floor 32/57 from the Weyl/scalar minimum. ASD: floor 16/27 from the trivial branch.
    assert_eq!(coefficient_from_floor(&rat(32, 57)), rat(25, 57));
    assert_eq!(coefficient_from_floor(&rat(16, 27)), rat(11, 27));
    assert_eq!(coefficient_from_floor(&rat(1, 3)), rat(2, 3));
    assert_eq!(Criterion::New.coefficient(), Some(rat(25, 57)));
    assert_eq!(Criterion::HitchinThorpe.coefficient(), None);
    assert!(rat(11, 27) < rat(25, 57) && rat(25, 57) < rat(4, 9) && rat(4, 9) < rat(2, 3));
}

#[test]
fn hyperbolic_vanishing() {
    assert_eq!(hyperbolic_vanishing_coefficient(), rat(27, 8));
    assert!(hyperbolic_vanishing_coefficient() < rat(32, 3));
    let chi = BigInt::from(24);
    assert!(sw_vanishing_derived(&int(81), &chi));
    assert!(!sw_vanishing_derived(&int(80), &chi));
    assert!(sw_vanishing_criterion(&int(256), &chi));
    assert!(!sw_vanishing_criterion(&int(255), &chi));
    // the printed criterion implies the derived one
    for c in 0..400 {
        if sw_vanishing_criterion(&int(c), &chi) {
            assert!(sw_vanishing_derived(&int(c), &chi));
        }
    }
}

proptest! {
    #[test]
    fn verdicts_are_monotone_in_k(l in 5u64..=40, k in 0u64..=2000) {
        let x = hypersurface_invariants(l).unwrap();
        for c in [rat(11, 27), rat(25, 57), rat(2, 3)] {
            if is_obstructed_at(&c, &x.c1sq(), k) {
                prop_assert!(is_obstructed_at(&c, &x.c1sq(), k + 1));
            }
        }
        prop_assert!(!is_obstructed_at(&rat(25, 57), &x.c1sq(), 0));
    }

    #[test]
    fn k_min_is_the_smallest_obstructed_count(c in 1i64..100_000, p in 1i64..60, q in 1i64..60) {
        let coeff = rat(p, q);
        let c1sq = BigInt::from(c);
        let k = k_min(&coeff, &c1sq);
        prop_assert!(int(k.to_i64().unwrap()) >= &coeff * int(c));
        prop_assert!(int(k.to_i64().unwrap() - 1) < &coeff * int(c));
        prop_assert!(!k.is_negative());
    }
}
