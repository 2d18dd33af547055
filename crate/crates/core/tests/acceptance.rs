//! Acceptance gate: ten end-to-end checks at stated tolerances, each printing
//! one pass/fail line (run with `--nocapture` to see them on success).
//!
//! Every expected value is either produced by an independent oracle inside the
//! check (brute-force enumeration, closed forms, exact rational targets) or is
//! a structural identity verified exactly.

use std::collections::BTreeSet;
use std::time::Instant;

use aperiodic_density::boundary::{
    folner_boundary, strong_folner_boundary, van_hove_boundary,
};
use aperiodic_density::boxes::BoxUnion;
use aperiodic_density::cutproject::{
    almost_periods, density_formula_check, fib_brute_force_count, model_set_patch,
    window_density_targets, AlmostPeriodChecker, CPScheme, IntervalUnion, Window,
};
use aperiodic_density::density::{
    beurling_density, gks_density, gks_product_check, ShiftSpec,
};
use aperiodic_density::folner::{
    comb_strong_ratio_closed_form, ratio_at, thicken, BoundaryKind, FolnerSeq,
};
use aperiodic_density::group::{GElem, GroupCtx};
use aperiodic_density::lattice::{lattice_density, Lattice};
use aperiodic_density::points::PointSet;
use aperiodic_density::rat::{pow10_inv, rat, ratio};
use aperiodic_density::sets::{minkowski, GSet, PMeasure};
use aperiodic_density::verify::run_suite;
use aperiodic_density::zphi::QPhi;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn report(idx: u32, what: &str, ok: bool, start: Instant, budget_s: u64) {
    let dt = start.elapsed();
    let line = format!(
        "[{:2}] {} — {} ({dt:.2?}, budget {budget_s}s)",
        idx,
        what,
        if ok { "PASS" } else { "FAIL" }
    );
    println!("{line}");
    assert!(ok, "{line}");
    assert!(
        dt.as_secs() < budget_s,
        "[{idx}] over time budget: {dt:.2?} ≥ {budget_s}s"
    );
}

/// (1) Lattice densities along Følner sequences are exactly 1/covolume on
/// aligned sets: diag(2,3) ⊂ ℤ² on cubes of side n ∈ 6ℤ gives 1/6, and the
/// congruence subgroup Γ₂ ⊂ H₃(ℤ) on Heisenberg boxes gives 1/16.
#[test]
fn a01_lattice_densities() {
    let t0 = Instant::now();
    let diag = Lattice::int_sublattice(vec![vec![2, 0], vec![0, 3]]).unwrap();
    let cubes = FolnerSeq::CubesZd { d: 2 };
    let mut ok = [6u64, 12, 18]
        .iter()
        .all(|&n| lattice_density(&diag, &cubes, n).unwrap() == ratio(1, 6));
    let gamma2 = Lattice::heisenberg_gamma(2).unwrap();
    let hboxes = FolnerSeq::HeisenbergBoxes;
    ok &= [4u64, 8, 16]
        .iter()
        .all(|&n| lattice_density(&gamma2, &hboxes, n).unwrap() == ratio(1, 16));
    report(1, "lattice densities are exactly 1/covol", ok, t0, 5);
}

/// (2) IntCyclic(5) with window {0,1}: empirical density on aligned intervals
/// is exactly 2/5, and the periodic-certified Beurling densities agree,
/// B⁻ = B⁺ = 2/5 with exact flags.
#[test]
fn a02_int_cyclic_density() {
    let t0 = Instant::now();
    let scheme = CPScheme::int_cyclic(5).unwrap();
    let w = Window::residues(5, [0, 1]);
    let seq = FolnerSeq::CubesZd { d: 1 };
    let mut ok = true;
    for n in [5u64, 50, 500] {
        let c = density_formula_check(&scheme, &w, &seq, n, &pow10_inv(9)).unwrap();
        ok &= c.empirical == ratio(2, 5)
            && c.target_lo == ratio(2, 5)
            && c.target_hi == ratio(2, 5);
    }
    let ctx = GroupCtx::int_lattice(1);
    let nu = PMeasure::comb(PointSet::new(
        (-100..100)
            .filter(|x: &i64| [0, 1].contains(&x.rem_euclid(5)))
            .map(|x| vec![x])
            .collect(),
    ));
    let b = beurling_density(&ctx, &nu, &seq, 50, &ShiftSpec::Periodic(vec![5])).unwrap();
    ok &= b.b_minus == ratio(2, 5)
        && b.b_plus == ratio(2, 5)
        && b.flag_minus.as_str() == "exact"
        && b.flag_plus.as_str() == "exact";
    report(2, "IntCyclic(5), W={0,1}: empirical and Beurling densities = 2/5", ok, t0, 1);
}

/// (3) Fibonacci model set, unit window W = [-1/2, 1/2): the patch count on
/// [0, 10⁴) matches an independent brute-force enumeration over all lattice
/// coordinates |m|, |n| ≤ 2·10⁴ exactly, and the empirical density is within
/// 1e-3 of m_H(W)/√5 = 1/√5.
#[test]
fn a03_fibonacci_density() {
    let t0 = Instant::now();
    let scheme = CPScheme::FibonacciZphi;
    let win = IntervalUnion::interval(
        QPhi::from_rat(ratio(-1, 2)),
        QPhi::from_rat(ratio(1, 2)),
    );
    let w = Window::Intervals(win.clone());
    let region = GSet::Boxes(BoxUnion::interval(rat(0), rat(10_000)));
    let patch = model_set_patch(&scheme, &w, &region).unwrap();
    let count = patch.as_points().unwrap().len() as i64;
    let brute = fib_brute_force_count(&win, 0, 10_000, 20_000);
    let mut ok = count as u64 == brute;
    let (lo, hi) = window_density_targets(&scheme, &w, &pow10_inv(9)).unwrap();
    let empirical = ratio(count, 10_000);
    let tol = pow10_inv(3);
    ok &= empirical <= &hi + &tol && empirical >= &lo - &tol;
    report(3, "Fibonacci patch = brute force, |density − 1/√5| ≤ 1e-3", ok, t0, 30);
}

/// A random nonempty subset of `[-span, span]^d` at the given percent density.
fn rand_points(rng: &mut ChaCha20Rng, d: usize, span: i64, pct: u32) -> PointSet {
    let mut pts = Vec::new();
    for p in PointSet::int_box(&vec![-span; d], &vec![span + 1; d]).iter() {
        if rng.gen_range(0..100) < pct {
            pts.push(p.to_vec());
        }
    }
    if pts.is_empty() {
        pts.push(vec![rng.gen_range(-span..=span); d]);
    }
    PointSet::new(pts)
}

/// Identity plus an inverse-closed random set: a symmetric unit neighborhood.
fn rand_symmetric(rng: &mut ChaCha20Rng, ctx: &GroupCtx, span: i64) -> GSet {
    let d = ctx.dim();
    let mut pts: Vec<Vec<i64>> = vec![vec![0; d]];
    for p in rand_points(rng, d, span, 40).iter() {
        pts.push(p.to_vec());
        let inv = ctx.inverse(&GElem::int(p)).unwrap();
        pts.push(inv.as_int().unwrap().to_vec());
    }
    GSet::Points(PointSet::new(pts))
}

/// (4) The five boundary inclusions hold exactly on 1000 random (K, A) pairs
/// in ℤ² and 1000 in H₃(ℤ):
///   ∂_K A ⊆ ∂^K A ⊆ ∂_{K²} A,  δ^K A ⊆ ∂_K A ⊆ K·δ^K A,  ∂_K(KA) ⊆ δ^{K²} A.
#[test]
fn a04_boundary_inclusions() {
    let t0 = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(41);
    let mut ok = true;
    for i in 0..2000u64 {
        let ctx = if i % 2 == 0 { GroupCtx::int_lattice(2) } else { GroupCtx::heisenberg() };
        let span = if i % 2 == 0 { 4 } else { 2 };
        let k = rand_symmetric(&mut rng, &ctx, 1);
        let a = GSet::Points(rand_points(&mut rng, ctx.dim(), span, 50));
        let k2 = minkowski(&ctx, &k, &k).unwrap();
        let strong = strong_folner_boundary(&ctx, &k, &a).unwrap();
        let vh = van_hove_boundary(&ctx, &k, &a).unwrap();
        let strong_k2 = strong_folner_boundary(&ctx, &k2, &a).unwrap();
        let folner = folner_boundary(&ctx, &k, &a).unwrap();
        let k_folner = minkowski(&ctx, &k, &folner).unwrap();
        let ka = minkowski(&ctx, &k, &a).unwrap();
        let strong_of_ka = strong_folner_boundary(&ctx, &k, &ka).unwrap();
        let folner_k2 = folner_boundary(&ctx, &k2, &a).unwrap();
        ok &= strong.is_subset(&vh)
            && vh.is_subset(&strong_k2)
            && folner.is_subset(&strong)
            && strong.is_subset(&k_folner)
            && strong_of_ka.is_subset(&folner_k2);
        if !ok {
            eprintln!("boundary inclusion failed at case {i}");
            break;
        }
    }
    report(4, "five boundary inclusions on 2000 random (K,A) pairs", ok, t0, 60);
}

/// (5) Greedy maximal packings: disjointness, the B⁻¹B-covering property, and
/// both measure inequalities n·m(B) ≤ m(BA) and m(A) ≤ n·m(B⁻¹B) on 500
/// random cases.
#[test]
fn a05_packing() {
    let t0 = Instant::now();
    let r = run_suite("packing", 500, 42).unwrap();
    report(5, "greedy packing invariants on 500 random cases", r.ok(), t0, 30);
}

/// (6) The transport identity Σ_{a∈A} ν(aB) = Σ_{b∈B} ν(Ab) for weighted
/// combs, on 1000 random cases of which 500 are in ℤ².
#[test]
fn a06_sum_identity() {
    let t0 = Instant::now();
    let r = run_suite("sum-identity", 1000, 43).unwrap();
    report(6, "transport sum identity on 1000 random cases", r.ok(), t0, 30);
}

/// (7) The comb sequence at ε = 1/10: the strong-boundary ratio against
/// K = [-ε, ε] matches the exact closed form (2εn + 1 + 2ε − 1/n)/(n − 1) at
/// n ∈ {10², 10³, 10⁴} (so within 1e-6), while the thickened sequence
/// [-1,1]·A_n has ratio ≤ 3/n.
#[test]
fn a07_comb_thickening() {
    let t0 = Instant::now();
    let eps = ratio(1, 10);
    let seq = FolnerSeq::CombR1 { eps: eps.clone() };
    let k = GSet::Boxes(BoxUnion::interval(-eps.clone(), eps.clone()));
    let l = GSet::Boxes(BoxUnion::interval(rat(-1), rat(1)));
    let thick = thicken(&seq, &l).unwrap();
    let tol = pow10_inv(6);
    let mut ok = true;
    for n in [100u64, 1000, 10_000] {
        let strong = ratio_at(&seq, n, &k, BoundaryKind::Strong).unwrap();
        let closed = comb_strong_ratio_closed_form(&eps, n);
        let diff = if strong >= closed { &strong - &closed } else { &closed - &strong };
        ok &= diff <= tol && strong == closed;
        let tr = ratio_at(&thick, n, &k, BoundaryKind::Strong).unwrap();
        ok &= tr <= ratio(3, n as i64);
    }
    report(7, "comb ratio = closed form at n ≤ 10⁴; thickened ratio ≤ 3/n", ok, t0, 10);
}

/// (8) Almost periods of the Fibonacci model set at ε = 1/10: the shrunken
/// internal window U is nonempty, Λ_U has ≥ 10 points in [0, 10⁴), and for 20
/// sampled periods t the inclusion Λ_W △ (Λ_W + t) ⊆ Λ_E holds exactly with
/// empirical defect density ≤ ε + 1e-3.
#[test]
fn a08_almost_periods() {
    let t0 = Instant::now();
    let scheme = CPScheme::FibonacciZphi;
    let w = Window::Intervals(IntervalUnion::interval(
        QPhi::from_int(-1, 0),
        QPhi::from_int(-1, 1),
    ));
    let eps = ratio(1, 10);
    let region = GSet::Boxes(BoxUnion::interval(rat(0), rat(10_000)));
    let ap = almost_periods(&scheme, &w, &eps, &region, &pow10_inv(9)).unwrap();
    let periods = ap.periods.as_points().unwrap();
    let mut ok = ap.bound <= eps && periods.len() >= 10;
    let mut rng = ChaCha20Rng::seed_from_u64(48);
    let mut picked = BTreeSet::new();
    while picked.len() < 20.min(periods.len()) {
        picked.insert(rng.gen_range(0..periods.len()));
    }
    let max_defect = &eps + &pow10_inv(3);
    let checker = AlmostPeriodChecker::new(&scheme, &w, &ap.u, &region).unwrap();
    for idx in picked {
        let t: Vec<i64> = periods.iter().nth(idx).unwrap().to_vec();
        let c = checker.check(&t).unwrap();
        ok &= c.included && ratio(c.symdiff_count as i64, 10_000) <= max_defect;
        if !ok {
            eprintln!("almost-period check failed at t = {t:?}");
            break;
        }
    }
    report(8, "Fibonacci ε=1/10 almost periods: inclusion and defect bound", ok, t0, 60);
}

/// (9) Lattice-relative densities for the IntCyclic(5) comb over Γ = ℤ:
/// certified d⁻ = d⁺ = 2/5 with a K-certificate per ε, and the product
/// identity Lep_Γ · d⁻ equals the periodic-certified Leptin density exactly.
#[test]
fn a09_gks() {
    let t0 = Instant::now();
    let ctx = GroupCtx::int_lattice(1);
    let lat = Lattice::int_sublattice(vec![vec![1]]).unwrap();
    let nu = PMeasure::comb(PointSet::new(
        (-100..100)
            .filter(|x: &i64| [0, 1].contains(&x.rem_euclid(5)))
            .map(|x| vec![x])
            .collect(),
    ));
    let k_search: Vec<GSet> =
        (1..=5).map(|r| GSet::Points(PointSet::int_box(&[-r], &[r + 1]))).collect();
    let a_family: Vec<GSet> =
        (1..=10).map(|l| GSet::Points(PointSet::int_box(&[0], &[l]))).collect();
    let eps_schedule = vec![ratio(1, 2), ratio(1, 10), ratio(1, 100)];
    let report9 =
        gks_density(&ctx, &nu, &lat, &[5], &eps_schedule, &k_search, &a_family).unwrap();
    let mut ok = report9.d_minus_lo == ratio(2, 5)
        && report9.d_plus_hi == ratio(2, 5)
        && report9.certificates.len() == eps_schedule.len();
    // periodic-certified Leptin density via the exact Beurling reduction
    let b = beurling_density(
        &ctx,
        &nu,
        &FolnerSeq::CubesZd { d: 1 },
        50,
        &ShiftSpec::Periodic(vec![5]),
    )
    .unwrap();
    ok &= b.b_minus == ratio(2, 5) && b.flag_minus.as_str() == "exact";
    ok &= gks_product_check(&lat, &report9, &b.b_minus).unwrap();
    report(9, "certified d⁻ = d⁺ = 2/5 over ℤ and exact product identity", ok, t0, 10);
}

/// (10) The first-fit fundamental-domain construction inside a covering set U:
/// on 50 random (Γ, U) instances in ℤ and ℤ², F_U ⊆ U, m(F_U) = covol(Γ)
/// exactly, and Γ-translates of F_U tile a test patch.
#[test]
fn a10_siegel_domains() {
    let t0 = Instant::now();
    let r = run_suite("lattice-fd", 50, 45).unwrap();
    report(10, "fundamental domains inside covering sets on 50 random cases", r.ok(), t0, 30);
}
