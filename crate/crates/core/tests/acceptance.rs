//! Acceptance suite: one PASS/FAIL line per criterion, each with a runtime
//! limit. Exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use fincat::census::{closed_points, cover_check, enumerate_reps, theta_strata, IsoClassCatalog};
use fincat::ktheory::{dual_basis_matrix, g_class, pairing_object, GClass, KClass};
use fincat::linalg::FieldSpec;
use fincat::presets::{preset_objects, PRESET_NAMES};
use fincat::quiver::Representation;
use fincat::stability::{
    enumerate_subreps, filtration_enumerate_max, hn_filtration, is_semistable, mu_beta, MuValue, SearchConfig,
    StabilityData, WeightedFiltration,
};
use fincat::structure::{gr, jordan_holder, length};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn sd_for(v: &Representation, beta: &[i64]) -> Result<StabilityData, String> {
    StabilityData::canonical(v.algebra(), v.field(), KClass::from_ints(beta), g_class(v)).map_err(|e| e.to_string())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Slopes of the five sl2-block indecomposables against their closed forms.
fn c1_slope_table() -> Outcome {
    let f = f2();
    let mut checked = 0;
    for (b1, b2) in [(3i64, 1i64), (1, 2), (1, 0), (0, 1)] {
        let (x, y) = (int(b1), int(b2));
        let cases: [(&str, BigRational); 4] = [
            ("L0", x.clone()),
            ("L-2", y.clone()),
            ("M0", (&x + &y) / int(2)),
            ("P2", (&x + &y * int(2)) / int(3)),
        ];
        for (o, expected) in cases {
            let v = obj("sl2block", o, f);
            let s = sd_for(&v, &[b1, b2])?.slope(&v).map_err(err)?;
            ensure!(s == expected, "sigma({o}) at beta=({b1},{b2}) is {s}, expected {expected}");
            checked += 1;
        }
    }
    // Slopes are linear in beta for a fixed object, so agreement on the
    // basis vectors (1,0), (0,1) proves the formulas for every beta.
    Ok(format!("{checked} exact slope values"))
}

/// Semistability walls of M(0), M(0)^dual and P(-2).
fn c2_walls() -> Outcome {
    let mut checked = 0;
    for f in [f2(), f3()] {
        for b1 in -2..=2i64 {
            for b2 in -2..=2i64 {
                for (o, expected) in [("M0", b1 >= b2), ("M0dual", b2 >= b1), ("P2", b1 == b2)] {
                    let v = obj("sl2block", o, f);
                    let (ss, _) = is_semistable(&sd_for(&v, &[b1, b2])?, &v, &cfg()).map_err(err)?;
                    ensure!(ss == expected, "{o} over {f} at beta=({b1},{b2}): semistable={ss}");
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (object, field, beta) cases"))
}

/// The pairing matrix <P_i, S_j> is the identity for every preset.
fn c3_dual_bases() -> Outcome {
    for name in PRESET_NAMES {
        let a = alg(name);
        for f in [q(), f2(), f3()] {
            let m = dual_basis_matrix(&a, f).map_err(err)?;
            let n = a.vertex_count();
            for i in 0..n {
                for j in 0..n {
                    let e = &m.entries()[i][j];
                    ensure!(*e == int(i64::from(i == j)), "{name} over {f}: <P_{i}, S_{j}> = {e}");
                }
            }
        }
    }
    Ok(format!("{} presets over Q, F2, F3", PRESET_NAMES.len()))
}

/// A2 census at alpha = (1,1), beta = (1,0).
fn c4_king_surrogate() -> Outcome {
    let a = alg("a2");
    let f = f2();
    let alpha = GClass::new(vec![1, 1]);
    let cat = enumerate_reps(&a, &alpha, f, true, &cfg()).map_err(err)?;
    ensure!(cat.len() == 2, "{} iso classes", cat.len());
    let sd = StabilityData::canonical(&a, f, KClass::from_ints(&[1, 0]), alpha).map_err(err)?;
    let rep = theta_strata(&cat, &sd, &cfg()).map_err(err)?;
    let ss = &rep.strata[rep.semistable.ok_or("no semistable stratum")?];
    ensure!(ss.members.len() == 1, "semistable stratum has {} members", ss.members.len());
    let p1 = obj("a2", "P1", f);
    ensure!(
        fincat::census::are_isomorphic(&cat.representatives[ss.members[0]], &p1, &cfg()).map_err(err)?,
        "semistable member is not P_1"
    );
    let unstable: Vec<_> = rep.strata.iter().filter(|s| !s.is_semistable()).collect();
    ensure!(unstable.len() == 1, "{} unstable strata", unstable.len());
    let expected = vec![(GClass::new(vec![1, 0]), int(1)), (GClass::new(vec![0, 1]), int(0))];
    ensure!(unstable[0].hn_type == expected, "unstable HN type {:?}", unstable[0].hn_type);
    Ok("2 classes, semistable {P_1}, unstable type [((1,0),1),((0,1),0)]".into())
}

/// Semistable exactly when no weighted filtration has positive mu.
fn c5_mu_oracle() -> Outcome {
    let f = f2();
    let mut instances = 0;
    for name in ["a2", "kronecker", "sl2block"] {
        let a = alg(name);
        for dims in dim_vectors(a.vertex_count(), 4) {
            for v in all_reps(&a, 2, &dims) {
                for b1 in -1..=1 {
                    for b2 in -1..=1 {
                        let sd = sd_for(&v, &[b1, b2])?;
                        let (ss, _) = is_semistable(&sd, &v, &cfg()).map_err(err)?;
                        let (_, mu) = filtration_enumerate_max(&sd, &v, 2, &cfg()).map_err(err)?;
                        ensure!(
                            ss == !mu.is_positive(),
                            "{name} {dims:?} over {f} beta=({b1},{b2}): semistable={ss}, max mu = {mu}"
                        );
                        instances += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{instances} (representation, beta) instances, zero exceptions"))
}

/// HN invariants on random representations.
fn c6_hn_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut total = 0;
    for name in PRESET_NAMES {
        let a = alg(name);
        let n = a.vertex_count();
        for k in 0..200 {
            let f = if k % 2 == 0 { f2() } else { f3() };
            let v = random_rep(&a, f, 4, &mut rng);
            let beta: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let sd = sd_for(&v, &beta)?;
            let hn = hn_filtration(&sd, &v, &cfg()).map_err(err)?;
            let slopes: Vec<&BigRational> = hn.hn_type().iter().map(|(_, s)| s).collect();
            ensure!(slopes.windows(2).all(|w| w[0] > w[1]), "{name}: slopes not decreasing {slopes:?}");
            let sum = hn.hn_type().iter().fold(GClass::zero(n), |acc, (c, _)| &acc + c);
            ensure!(sum == g_class(&v), "{name}: classes sum to {sum}");
            for (piece, (c, _)) in hn.graded_pieces(&v).map_err(err)?.iter().zip(hn.hn_type()) {
                let psd = sd.for_class(c.clone()).map_err(err)?;
                ensure!(is_semistable(&psd, piece, &cfg()).map_err(err)?.0, "{name}: unstable graded piece");
            }
            let c = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            let shifted = sd.for_beta(sd.beta() + &sd.gamma().scale(&c)).map_err(err)?;
            let doubled = sd.for_beta(sd.beta().scale(&int(2))).map_err(err)?;
            for other in [shifted, doubled] {
                let h2 = hn_filtration(&other, &v, &cfg()).map_err(err)?;
                ensure!(h2.steps() == hn.steps(), "{name}: filtration moved under a beta transform");
            }
            total += 1;
        }
    }
    Ok(format!("{total} random representations"))
}

fn random_filtration(rng: &mut ChaCha8Rng) -> Result<(StabilityData, WeightedFiltration), String> {
    loop {
        let name = PRESET_NAMES[rng.gen_range(0..PRESET_NAMES.len())];
        let a = alg(name);
        let f = if rng.gen_bool(0.5) { f2() } else { f3() };
        let v = random_rep(&a, f, 4, rng);
        let beta: Vec<i64> = (0..a.vertex_count()).map(|_| rng.gen_range(-3..=3)).collect();
        let sd = sd_for(&v, &beta)?;
        // a random chain: walk upwards through random strictly larger subobjects
        let subs = enumerate_subreps(&v, &cfg()).map_err(err)?;
        let mut steps = Vec::new();
        let mut cur = subs.iter().find(|s| s.is_zero()).unwrap().clone();
        while !cur.is_full() {
            let bigger: Vec<_> = subs.iter().filter(|s| s.contains(&cur) && s.total_dim() > cur.total_dim()).collect();
            cur = bigger[rng.gen_range(0..bigger.len())].clone();
            steps.push(cur.clone());
        }
        let mut weights: Vec<i64> = Vec::new();
        let mut w = rng.gen_range(-2..=4);
        for _ in 0..steps.len() {
            weights.push(w);
            w -= rng.gen_range(1..=3);
        }
        if weights.iter().all(|&x| x == 0) {
            continue;
        }
        let f = WeightedFiltration::new(&v, weights, steps).map_err(err)?;
        return Ok((sd, f));
    }
}

/// Translation invariance of the numerator, scale invariance of the order.
fn c7_mu_equivariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut prev: Option<(MuValue, StabilityData, WeightedFiltration)> = None;
    for k in 0..100 {
        let (sd, f) = random_filtration(&mut rng)?;
        let mu = mu_beta(&sd, &f).map_err(err)?;
        for shift in [-3i64, -1, 1, 2, 5] {
            let g = f.reweighted(1, shift).map_err(err)?;
            if g.weights().iter().all(|&w| w == 0) {
                continue;
            }
            let m2 = mu_beta(&sd, &g).map_err(err)?;
            ensure!(m2.numerator == mu.numerator, "filtration {k}: numerator moved under shift {shift}");
        }
        for scale in [2i64, 3, 7] {
            let m2 = mu_beta(&sd, &f.reweighted(scale, 0).map_err(err)?).map_err(err)?;
            ensure!(m2 == mu, "filtration {k}: mu changed under scale {scale}");
            if let Some((pmu, psd, pf)) = &prev {
                let pm2 = mu_beta(psd, &pf.reweighted(scale, 0).map_err(err)?).map_err(err)?;
                ensure!(mu.cmp(pmu) == m2.cmp(&pm2), "filtration {k}: order flipped under scale {scale}");
            }
        }
        prev = Some((mu, sd, f));
    }
    Ok("100 random weighted filtrations".into())
}

fn catalogs() -> Result<Vec<(&'static str, GClass, IsoClassCatalog)>, String> {
    let mut out = Vec::new();
    for name in PRESET_NAMES {
        let a = alg(name);
        let n = a.vertex_count();
        let mut alphas = vec![vec![0usize; n]];
        alphas.extend(dim_vectors(n, 3));
        for dims in alphas {
            let alpha = GClass::new(dims.iter().map(|&d| d as i64).collect());
            let cat = enumerate_reps(&a, &alpha, f2(), false, &cfg()).map_err(err)?;
            out.push((name, alpha, cat));
        }
    }
    Ok(out)
}

/// One semisimple representative per class; distinct classes, distinct points.
fn c8_closed_points(cats: &[(&'static str, GClass, IsoClassCatalog)]) -> Outcome {
    for name in PRESET_NAMES {
        let mine: Vec<_> = cats.iter().filter(|(n, _, _)| *n == name).collect();
        let mut seen: BTreeSet<GClass> = BTreeSet::new();
        for (_, alpha, cat) in &mine {
            let ss = cat.semisimple_indices();
            ensure!(ss.len() == 1, "{name} alpha={alpha}: {} semisimple representatives", ss.len());
            ensure!(
                cat.representatives.iter().all(|v| g_class(v) == *alpha),
                "{name} alpha={alpha}: a representative has the wrong class"
            );
            ensure!(seen.insert(g_class(&cat.representatives[ss[0]])), "{name}: repeated closed point {alpha}");
        }
        let alphas: Vec<GClass> = mine.iter().map(|(_, a, _)| a.clone()).collect();
        let pts = closed_points(&alg(name), f2(), &alphas).map_err(err)?;
        ensure!(pts.len() == alphas.len(), "{name}: {} points for {} classes", pts.len(), alphas.len());
    }
    Ok(format!("{} catalogs over F2", cats.len()))
}

fn c9_cover(cats: &[(&'static str, GClass, IsoClassCatalog)]) -> Outcome {
    let mut reps = 0;
    for (name, alpha, cat) in cats {
        ensure!(cover_check(cat, &cfg()).map_err(err)?, "{name} alpha={alpha}: cover check failed");
        reps += cat.len();
    }
    Ok(format!("{} catalogs, {reps} representatives", cats.len()))
}

fn c10_dual_numbers() -> Outcome {
    let f = f2();
    let p = obj("dualnumbers", "P1", f);
    let s = obj("dualnumbers", "S1", f);
    ensure!(length(&p) == 2 && jordan_holder(&p).length == 2, "length(P) = {}", length(&p));
    ensure!(gr(&p) == GClass::new(vec![2]), "gr(P) = {}", gr(&p));
    let pairing = pairing_object(&KClass::projective(1, 0), &s).map_err(err)?;
    ensure!(pairing == int(1), "<[P],[S]> = {pairing}");
    let m = dual_basis_matrix(&alg("dualnumbers"), f).map_err(err)?;
    ensure!(m.pairing(&KClass::projective(1, 0), &g_class(&s)).map_err(err)? == int(1), "class route pairing");
    let cat = enumerate_reps(&alg("dualnumbers"), &GClass::new(vec![2]), f, true, &cfg()).map_err(err)?;
    ensure!(cat.len() == 2, "{} classes at alpha = 2", cat.len());
    Ok("length 2, gr = 2[S], pairing 1, 2 classes".into())
}

fn main() {
    // Every preset object must at least build; guards the fixtures used below.
    for name in PRESET_NAMES {
        for o in preset_objects(name) {
            fincat::presets::preset_object(name, &o, FieldSpec::prime(2).unwrap()).expect("preset object");
        }
    }
    let mut failures = 0;
    let mut report = |id: u32, title: &str, limit: Duration, run: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => (false, e),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "{} criterion {id:>2}: {title} [{elapsed:.2?} / {limit:?}] {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    };
    report(1, "sl2-block slope table", Duration::from_secs(1), &c1_slope_table);
    report(2, "sl2-block semistability walls", Duration::from_secs(5), &c2_walls);
    report(3, "dual bases", Duration::from_secs(1), &c3_dual_bases);
    report(4, "A2 census and strata", Duration::from_secs(1), &c4_king_surrogate);
    report(5, "semistable iff max mu <= 0", Duration::from_secs(300), &c5_mu_oracle);
    report(6, "HN invariants on random representations", Duration::from_secs(300), &c6_hn_suite);
    report(7, "mu weight equivariance", Duration::from_secs(10), &c7_mu_equivariance);
    let start = Instant::now();
    let cats = catalogs();
    let build = start.elapsed();
    match cats {
        Ok(cats) => {
            // catalog construction is charged to both criteria
            let c8 = || c8_closed_points(&cats);
            let c9 = || c9_cover(&cats);
            report(8, "closed points", Duration::from_secs(60).saturating_sub(build), &c8);
            report(9, "quot cover", Duration::from_secs(60).saturating_sub(build), &c9);
        }
        Err(e) => {
            let fail = || -> Outcome { Err(format!("catalog construction failed: {e}")) };
            report(8, "closed points", Duration::from_secs(60), &fail);
            report(9, "quot cover", Duration::from_secs(60), &fail);
        }
    }
    report(10, "dual numbers", Duration::from_secs(1), &c10_dual_numbers);
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
