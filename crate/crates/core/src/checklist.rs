//! End-to-end reproduction checklist over the worked examples.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::functionals::{
    i_epsilon, min_volumes, ricci_bound_lemma5, ricci_convex_combination, verify_keen_minimum, IEpsilonValue,
};
use crate::homeo::{freedman_type, homeomorphic, noether_partner};
use crate::lattice::lemma_who_class;
use crate::lattice::sampling::lemma_instance;
use crate::obstructions::{lno_obstruction, minimal_general_type_obstruction, Verdict};
use crate::rational::{fmt_rat, from_big, int, rat, Rat};
use crate::surface::{double_plane_invariants, hypersurface_invariants, quadric_bicover_invariants, CharNumbers, SurfaceSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecklistConfig {
    pub grid_size: usize,
    pub seed: u64,
    pub lemma_samples: usize,
}

impl Default for ChecklistConfig {
    fn default() -> Self {
        ChecklistConfig { grid_size: crate::functionals::DEFAULT_GRID_SIZE, seed: 0, lemma_samples: 200 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChecklistReport {
    pub config: ChecklistConfig,
    pub items: Vec<CheckItem>,
    pub passed: bool,
}

impl ChecklistReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}

fn item(name: &str, expected: String, actual: String) -> CheckItem {
    CheckItem { passed: expected == actual, name: name.into(), expected, actual }
}

fn describe(x: &CharNumbers) -> String {
    let p_g = x.p_g().map(|p| p.to_string()).unwrap_or_else(|| "-".into());
    format!("c1sq={} p_g={} tau={} chi={}", x.c1sq(), p_g, x.tau(), x.chi())
}

fn homeo_line(a: &CharNumbers, b: &CharNumbers) -> String {
    match (freedman_type(a), homeomorphic(a, b)) {
        (Ok(t), Ok(h)) => format!("{t}; homeomorphic={h}"),
        (Err(e), _) | (_, Err(e)) => format!("error: {e}"),
    }
}

pub fn run_checklist(config: &ChecklistConfig) -> Result<ChecklistReport> {
    let mut items = Vec::new();

    let x9 = hypersurface_invariants(9)?;
    items.push(item("X_9 invariants", "c1sq=225 p_g=56 tau=-231 chi=459".into(), describe(&x9)));

    let m = x9.blow_up(117);
    items.push(item("X_9 # 117 CP2bar", "c1sq=108 p_g=56 tau=-348 chi=576".into(), describe(&m)));

    let bicover = quadric_bicover_invariants(3, 29)?;
    items.push(item("quadric_bicover(3,29)", "c1sq=108 p_g=56 tau=-348 chi=576".into(), describe(&bicover)));
    items.push(item("Freedman type of the pair", "113 CP2 # 461 CP2bar; homeomorphic=true".into(), homeo_line(&m, &bicover)));

    let new = minimal_general_type_obstruction(&x9, 117)?;
    let lno = lno_obstruction(&x9, 117, crate::obstructions::SwHypothesis::NonzeroSwAssumed)?;
    items.push(item(
        "X_9 thresholds at k = 117",
        "k_min(25/57)=99 obstructed; k_min(2/3)=150 not obstructed".into(),
        format!(
            "k_min(25/57)={} {}; k_min(2/3)={} {}",
            new.k_min,
            if new.verdict == Verdict::Obstructed { "obstructed" } else { "not obstructed" },
            lno.k_min,
            if lno.verdict == Verdict::Obstructed { "obstructed" } else { "not obstructed" },
        ),
    ));

    let y27 = double_plane_invariants(27)?;
    let yb = y27.blow_up(506);
    let y_new = minimal_general_type_obstruction(&y27, 506)?;
    let partner = noether_partner(&yb.c1sq(), yb.p_g().expect("blow-up keeps p_g"));
    let partner_line = match &partner {
        Some(spec) => {
            let w = spec.evaluate()?;
            format!("{spec}; {}", homeo_line(&yb, &w))
        }
        None => "none".into(),
    };
    items.push(item(
        "Y_27 chain",
        "c1sq=1152 p_g=325 -> c1sq=646 p_g=325; k_min=506".into(),
        format!("c1sq={} p_g={} -> c1sq={} p_g={}; k_min={}", y27.c1sq(), y27.p_g().unwrap(), yb.c1sq(), yb.p_g().unwrap(), y_new.k_min),
    ));
    items.push(item(
        "Y_27 # 506 CP2bar partner",
        "noether_line(646,325); 651 CP2 # 2613 CP2bar; homeomorphic=true".into(),
        partner_line,
    ));

    let cert = verify_keen_minimum(config.grid_size)?;
    items.push(item(
        "minimum of [b + 2(4 - 3 sqrt b)^2]/3 on [1, 16/9]",
        "min=32/57 at 576/361; grid within 1e-9/1e-6: true; f(16/9)=16/27 above: true".into(),
        format!(
            "min={} at {}; grid within 1e-9/1e-6: {}; f(16/9)={} above: {}",
            fmt_rat(&cert.min),
            fmt_rat(&cert.argmin),
            cert.min_residual < 1e-9 && cert.argmin_residual < 1e-6,
            fmt_rat(&cert.trivial_branch_floor),
            cert.trivial_branch_above_min
        ),
    ));

    let chain = [rat(11, 27), rat(25, 57), rat(4, 9), rat(2, 3)];
    let floors = [rat(4, 9), rat(32, 57), rat(16, 27), rat(2, 3)];
    let increasing = |v: &[Rat]| v.windows(2).all(|w| w[0] < w[1]);
    items.push(item(
        "constant ordering",
        "11/27 < 25/57 < 4/9 < 2/3: true; 4/9 < 32/57 < 16/27 < 2/3: true".into(),
        format!(
            "11/27 < 25/57 < 4/9 < 2/3: {}; 4/9 < 32/57 < 16/27 < 2/3: {}",
            increasing(&chain),
            increasing(&floors)
        ),
    ));

    let vols = min_volumes(&x9, 0)?;
    items.push(item("Vol_s(X_9) / pi^2", "50/1".into(), fmt_rat(&vols.vol_s)));

    let x9_spec = SurfaceSpec::new(crate::surface::Family::Hypersurface(9));
    let ie = match i_epsilon(&x9_spec, &rat(1, 3))? {
        IEpsilonValue::Exact { value } => fmt_rat(&value),
        other => format!("{other:?}"),
    };
    items.push(item("I_1/3(X_9)", "100/1".into(), ie));

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut identity_holds = true;
    for _ in 0..1000 {
        let x = Rat::new(BigInt::from(rng.gen_range(1..10_000)), BigInt::from(rng.gen_range(1..500)));
        let y = Rat::new(BigInt::from(rng.gen_range(-10_000..10_000)), BigInt::from(rng.gen_range(1..500)));
        identity_holds &= ricci_bound_lemma5(&x, &y)? == ricci_convex_combination(&x, &y);
    }
    let at_x9 = ricci_bound_lemma5(&int(225), &int(108))?;
    items.push(item(
        "Ricci bound 8/5 x - 3/5 y",
        "convex combination identity: true; X_9 # 117: 1476/5 = 225 + 3/5*117: true".into(),
        format!(
            "convex combination identity: {identity_holds}; X_9 # 117: {} = 225 + 3/5*117: {}",
            fmt_rat(&at_x9),
            at_x9 == int(225) + rat(3, 5) * int(117)
        ),
    ));

    let mut failures = 0usize;
    for _ in 0..config.lemma_samples {
        let inst = lemma_instance(&mut rng, 25, 20);
        let ok = match lemma_who_class(&inst.x_lattice, &inst.c1x, &inst.x_c1sq, inst.k, &inst.h) {
            Ok(out) => out.class.c1_plus_sq >= out.x_plus_sq && out.x_plus_sq >= from_big(&inst.x_c1sq),
            Err(_) => false,
        };
        failures += usize::from(!ok);
    }
    items.push(item(
        "blow-up class inequality chain",
        format!("{} instances, 0 failures", config.lemma_samples),
        format!("{} instances, {failures} failures", config.lemma_samples),
    ));

    let passed = items.iter().all(|i| i.passed);
    Ok(ChecklistReport { config: config.clone(), items, passed })
}
