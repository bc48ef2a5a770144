use num_bigint::BigInt;
use proptest::prelude::*;

use swgeo::surface::{
    blow_up, c1sq, connected_sum, double_plane_invariants, hypersurface_invariants, quadric_bicover_invariants,
};
use swgeo::{CharNumbers, Family, SpinStatus, SurfaceSpec};

fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

/// Independent oracle: Noether's formula in machine integers.
fn noether_oracle(c1sq: i128, p_g: i128) -> (i128, i128) {
    let chi = 12 * (1 + p_g) - c1sq;
    let tau = c1sq - 8 * (1 + p_g);
    (chi, tau)
}

fn binom3(n: i128) -> i128 {
    n * (n - 1) * (n - 2) / 6
}

fn assert_family_identities(x: &CharNumbers) {
    assert_eq!(c1sq(x), BigInt::from(2) * x.chi() + BigInt::from(3) * x.tau());
    assert_eq!(*x.chi(), BigInt::from(2) + x.b_plus() + x.b_minus());
    assert_eq!(*x.tau(), x.b_plus() - x.b_minus());
    assert_eq!(*x.b_plus(), BigInt::from(2) * x.p_g().unwrap() + 1);
    assert!(x.simply_connected());
    assert!(x.complex_structure().unwrap().canonical_ample());
}

#[test]
fn hypersurfaces_match_oracle() {
    for l in 5..=40i128 {
        let x = hypersurface_invariants(l as u64).unwrap();
        let c = l * (l - 4) * (l - 4);
        let p = binom3(l - 1);
        let (chi, tau) = noether_oracle(c, p);
        assert_eq!((x.c1sq(), x.p_g().cloned(), x.chi().clone(), x.tau().clone()), (big(c), Some(big(p)), big(chi), big(tau)));
        assert_family_identities(&x);
    }
}

#[test]
fn double_planes_match_oracle() {
    for m in 5..=60i128 {
        let x = double_plane_invariants(m as u64).unwrap();
        let c = 2 * (m - 3) * (m - 3);
        let p = (m - 1) * (m - 2) / 2;
        let (chi, tau) = noether_oracle(c, p);
        assert_eq!((x.c1sq(), x.chi().clone(), x.tau().clone()), (big(c), big(chi), big(tau)));
        assert_family_identities(&x);
    }
}

#[test]
fn quadric_bicovers_match_oracle() {
    for a in 3..=10i128 {
        for b in 3..=10i128 {
            let x = quadric_bicover_invariants(a as u64, b as u64).unwrap();
            let c = 4 * (a - 2) * (b - 2);
            let p = (a - 1) * (b - 1);
            let (chi, tau) = noether_oracle(c, p);
            assert_eq!((x.c1sq(), x.chi().clone(), x.tau().clone()), (big(c), big(chi), big(tau)));
            assert_family_identities(&x);
        }
    }
}

#[test]
fn worked_examples() {
    let x9 = hypersurface_invariants(9).unwrap();
    assert_eq!((x9.c1sq(), x9.p_g().cloned()), (big(225), Some(big(56))));
    assert_eq!((x9.tau().clone(), x9.chi().clone()), (big(-231), big(459)));
    let m = blow_up(&x9, 117);
    assert_eq!((m.c1sq(), m.p_g().cloned(), m.tau().clone()), (big(108), Some(big(56)), big(-348)));
    assert_eq!(blow_up(&x9, 0), x9);

    let x5 = hypersurface_invariants(5).unwrap();
    assert_eq!((x5.c1sq(), x5.p_g().cloned(), x5.tau().clone(), x5.chi().clone()), (big(5), Some(big(4)), big(-35), big(55)));

    let y27 = double_plane_invariants(27).unwrap();
    assert_eq!((y27.c1sq(), y27.p_g().cloned()), (big(1152), Some(big(325))));
    let yb = blow_up(&y27, 506);
    assert_eq!((yb.c1sq(), yb.p_g().cloned()), (big(646), Some(big(325))));
    let y5 = double_plane_invariants(5).unwrap();
    assert_eq!((y5.c1sq(), y5.p_g().cloned(), y5.tau().clone()), (big(8), Some(big(6)), big(-48)));

    let q = quadric_bicover_invariants(3, 29).unwrap();
    assert_eq!((q.c1sq(), q.p_g().cloned()), (big(108), Some(big(56))));
    let q33 = quadric_bicover_invariants(3, 3).unwrap();
    assert_eq!((q33.c1sq(), q33.p_g().cloned()), (big(4), Some(big(4))));

    assert_eq!(c1sq(&CharNumbers::s4()), big(4));
}

#[test]
fn out_of_range_parameters_are_rejected() {
    assert!(hypersurface_invariants(4).is_err());
    assert!(double_plane_invariants(4).is_err());
    assert!(quadric_bicover_invariants(2, 5).is_err());
    assert!("hypersurface(0)".parse::<SurfaceSpec>().is_err());
}

#[test]
fn connected_sum_examples() {
    let s = connected_sum(&CharNumbers::cp2(), &CharNumbers::cp2bar());
    assert_eq!(s.topology(), (big(4), big(0), big(1), big(1), true));
    let spec: SurfaceSpec = "113*CP2 + 461*CP2bar".parse().unwrap();
    let n = spec.evaluate().unwrap();
    assert_eq!((n.chi().clone(), n.tau().clone()), (big(576), big(-348)));
    assert_eq!(n.topology(), blow_up(&hypersurface_invariants(9).unwrap(), 117).topology());
    let x9 = hypersurface_invariants(9).unwrap();
    assert_eq!(connected_sum(&x9, &CharNumbers::s4()).topology(), x9.topology());
}

#[test]
fn noether_line_bicovers() {
    for b in 3..=40u64 {
        let x = quadric_bicover_invariants(3, b).unwrap();
        assert_eq!(x.c1sq(), BigInt::from(2) * x.p_g().unwrap() - 4);
        assert_eq!(x.p_g().cloned(), Some(BigInt::from(2 * (b - 1))));
    }
}

#[test]
fn evaluate_is_deterministic_and_round_trips() {
    for text in [
        "hypersurface(9) + 117*CP2bar",
        "doubleplane(27) + 506*CP2bar",
        "quadric_bicover(3,29)",
        "noether_line(646,325)",
        "ruled(2)",
        "3*CP2 + 2*(CP2 + ruled(1)) + 5*CP2bar",
    ] {
        let spec: SurfaceSpec = text.parse().unwrap();
        assert_eq!(spec.to_string().parse::<SurfaceSpec>().unwrap(), spec);
        assert_eq!(spec.evaluate().unwrap(), spec.evaluate().unwrap());
    }
}

#[test]
fn json_has_every_field() {
    let json = serde_json::to_value(hypersurface_invariants(9).unwrap()).unwrap();
    for key in ["chi", "tau", "b_plus", "b_minus", "p_g", "simply_connected", "complex_structure", "spin_status", "c1sq"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    assert_eq!(json["spin_status"], "NonSpin");
}

fn catalogue() -> impl Strategy<Value = CharNumbers> {
    prop_oneof![
        (5u64..=40).prop_map(|l| hypersurface_invariants(l).unwrap()),
        (5u64..=60).prop_map(|m| double_plane_invariants(m).unwrap()),
        (3u64..=10, 3u64..=10).prop_map(|(a, b)| quadric_bicover_invariants(a, b).unwrap()),
        Just(CharNumbers::cp2()),
        Just(CharNumbers::cp2bar()),
        Just(CharNumbers::s4()),
        (0u64..=3).prop_map(|g| Family::RuledSurface(g).evaluate().unwrap()),
    ]
}

proptest! {
    #[test]
    fn blow_up_counts_compose(x in catalogue(), j in 0u64..=50, k in 0u64..=50) {
        prop_assert_eq!(blow_up(&x, j + k), blow_up(&blow_up(&x, j), k));
    }

    #[test]
    fn connected_sum_is_commutative_and_associative(a in catalogue(), b in catalogue(), c in catalogue()) {
        prop_assert_eq!(connected_sum(&a, &b).topology(), connected_sum(&b, &a).topology());
        prop_assert_eq!(
            connected_sum(&connected_sum(&a, &b), &c).topology(),
            connected_sum(&a, &connected_sum(&b, &c)).topology()
        );
        prop_assert_eq!(connected_sum(&a, &CharNumbers::s4()).topology(), a.topology());
    }

    #[test]
    fn blow_up_is_sum_with_cp2bar(x in catalogue(), k in 0u64..=50) {
        let mut sum = x.clone();
        for _ in 0..k {
            sum = connected_sum(&sum, &CharNumbers::cp2bar());
        }
        prop_assert_eq!(blow_up(&x, k).topology(), sum.topology());
    }

    #[test]
    fn rokhlin_forces_non_spin(x in catalogue(), k in 0u64..=20) {
        let m = blow_up(&x, k);
        let residue = m.tau() % BigInt::from(16);
        if m.simply_connected() && residue != BigInt::from(0) {
            prop_assert_eq!(m.spin_status(), SpinStatus::NonSpin);
        }
    }

    #[test]
    fn canonical_text_round_trips(l in 1u64..=30, k in 0u64..=300, extra in 0u64..=4) {
        let mut spec = SurfaceSpec::new(Family::Hypersurface(l)).blown_up(k);
        for _ in 0..extra {
            spec = spec.connect(SurfaceSpec::new(Family::Cp2));
        }
        let text = spec.to_string();
        let back: SurfaceSpec = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back.evaluate().unwrap(), spec.evaluate().unwrap());
    }
}
