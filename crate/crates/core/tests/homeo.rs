use num_bigint::BigInt;
use num_traits::ToPrimitive;

use swgeo::homeo::{
    candidate_pair, exotic_pair_search, freedman_type, homeomorphic, noether_match_k, noether_partner, FamilyRanges,
    FormParity, KStrategy, KE_PROVENANCE,
};
use swgeo::obstructions::{Criterion, Verdict};
use swgeo::surface::{double_plane_invariants, hypersurface_invariants};
use swgeo::{CharNumbers, Family, SpinStatus, SurfaceSpec};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn check_pair(pair: &swgeo::homeo::ExoticPair) {
    let m = pair.obstructed.evaluate().unwrap();
    let w = pair.einstein_witness.evaluate().unwrap();
    assert_eq!(m.topology(), w.topology());
    assert_eq!(freedman_type(&m).unwrap(), freedman_type(&w).unwrap());
    assert_eq!(pair.shared_type.form_parity, FormParity::Odd);
    assert_ne!(pair.homeo.witness_tau_mod_16, 0);
    assert_eq!(pair.obstruction.verdict(Criterion::New), Verdict::Obstructed);
    assert!(w.complex_structure().unwrap().canonical_ample());
    assert_eq!(pair.ke_existence, KE_PROVENANCE);
    assert_eq!(w.c1sq(), BigInt::from(2) * w.p_g().unwrap() - 4);
}

#[test]
fn freedman_type_iff_equal_numbers() {
    let specs = ["hypersurface(9) + 117*CP2bar", "quadric_bicover(3,29)", "113*CP2 + 461*CP2bar", "hypersurface(9)", "CP2 + 3*CP2bar"];
    let numbers: Vec<CharNumbers> = specs.iter().map(|s| s.parse::<SurfaceSpec>().unwrap().evaluate().unwrap()).collect();
    for a in &numbers {
        for b in &numbers {
            let same = (a.b_plus(), a.b_minus()) == (b.b_plus(), b.b_minus());
            assert_eq!(homeomorphic(a, b).unwrap(), same);
        }
    }
    assert_eq!(freedman_type(&numbers[0]).unwrap().to_string(), "113 CP2 # 461 CP2bar");
}

#[test]
fn unsupported_and_inapplicable_inputs() {
    let s2xs2: SurfaceSpec = "ruled(0)".parse().unwrap();
    assert_eq!(s2xs2.evaluate().unwrap().spin_status(), SpinStatus::Spin);
    assert!(freedman_type(&s2xs2.evaluate().unwrap()).is_err());
    let ruled: SurfaceSpec = "ruled(1)".parse().unwrap();
    assert!(freedman_type(&ruled.evaluate().unwrap()).is_err());
}

#[test]
fn noether_partners() {
    assert_eq!(noether_partner(&big(108), &big(56)), Some("quadric_bicover(3,29)".parse().unwrap()));
    assert_eq!(noether_partner(&big(646), &big(325)), Some("noether_line(646,325)".parse().unwrap()));
    assert_eq!(noether_partner(&big(109), &big(56)), None);
    let w = noether_partner(&big(646), &big(325)).unwrap().evaluate().unwrap();
    let m = double_plane_invariants(27).unwrap().blow_up(506);
    assert!(homeomorphic(&m, &w).unwrap());
    assert_eq!(freedman_type(&w).unwrap().to_string(), "651 CP2 # 2613 CP2bar");
}

#[test]
fn noether_match_cutoffs() {
    let k = |l| noether_match_k(&hypersurface_invariants(l).unwrap()).unwrap().to_i64().unwrap();
    assert_eq!((k(5), k(6), k(7), k(8), k(9)), (1, 8, 27, 62, 117));
    for l in 5..=7 {
        assert!(candidate_pair(&Family::Hypersurface(l), KStrategy::NoetherMatch).is_err(), "l = {l}");
    }
    // First hypersurface degree with a certified pair is 8, one below the published range.
    let p8 = candidate_pair(&Family::Hypersurface(8), KStrategy::NoetherMatch).unwrap();
    assert_eq!(p8.k, 62);
    assert_eq!(p8.einstein_witness.to_string(), "noether_line(66,35)");
    assert_eq!((p8.homeo.b_plus.clone(), p8.homeo.b_minus.clone()), (big(71), big(293)));
    check_pair(&p8);

    assert!(candidate_pair(&Family::DoublePlane(26), KStrategy::NoetherMatch).is_err());
    let p27 = candidate_pair(&Family::DoublePlane(27), KStrategy::NoetherMatch).unwrap();
    assert_eq!(p27.k, 506);
    check_pair(&p27);
}

#[test]
fn x9_pair() {
    let p = candidate_pair(&Family::Hypersurface(9), KStrategy::NoetherMatch).unwrap();
    assert_eq!(p.k, 117);
    assert_eq!(p.einstein_witness.to_string(), "quadric_bicover(3,29)");
    assert_eq!((p.homeo.chi.clone(), p.homeo.tau.clone()), (big(576), big(-348)));
    check_pair(&p);
}

#[test]
fn search_is_certified_and_ordered() {
    let ranges = FamilyRanges { hypersurface: Some(5..=20), double_plane: Some(5..=40) };
    let pairs = exotic_pair_search(&ranges, KStrategy::NoetherMatch);
    for p in &pairs {
        check_pair(p);
    }
    let roots: Vec<String> = pairs.iter().map(|p| p.obstruction.base.to_string()).collect();
    assert_eq!(roots.first().map(String::as_str), Some("hypersurface(8)"));
    assert!(roots.contains(&"doubleplane(27)".to_string()));
    assert!(!roots.contains(&"doubleplane(26)".to_string()));
    assert_eq!(pairs, exotic_pair_search(&ranges, KStrategy::NoetherMatch));

    for p in exotic_pair_search(&ranges, KStrategy::MinThreshold) {
        check_pair(&p);
        assert_eq!(BigInt::from(p.k), p.obstruction.check(Criterion::New).unwrap().k_min);
    }
    assert!(exotic_pair_search(&FamilyRanges::default(), KStrategy::NoetherMatch).is_empty());
}

#[test]
fn non_general_type_roots_are_skipped() {
    assert!(candidate_pair(&Family::Hypersurface(3), KStrategy::NoetherMatch).is_err());
    let ranges = FamilyRanges { hypersurface: Some(1..=4), double_plane: None };
    assert!(exotic_pair_search(&ranges, KStrategy::NoetherMatch).is_empty());
}
