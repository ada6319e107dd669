//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Every comparison is exact (integers or field elements).

use hermitian_curves::curve::{
    curve_on_surface, d_matrix, fermat_curve, j_matrix, scan_low_degree, ScanMode,
};
use hermitian_curves::group::{
    certified_closure_q2, curve_set_size, group_order, gu_rescale, identity_suites,
    incidence_profile, orbit_count, seed_with_identity_gram, stabilizer_order, unitary_check,
    StabilizerMethod,
};
use hermitian_curves::surface::HermitianSurface;
use hermitian_curves::{Fe, FieldCtx};

fn ctx_for(q: u32) -> FieldCtx {
    match q {
        2 => FieldCtx::new(2, 1).unwrap(),
        3 => FieldCtx::new(3, 1).unwrap(),
        4 => FieldCtx::new(2, 2).unwrap(),
        5 => FieldCtx::new(5, 1).unwrap(),
        _ => unreachable!("acceptance covers q in {{2,3,4,5}}"),
    }
}

fn report(number: u32, label: &str, pass: bool) {
    println!("criterion {number} [{}] {label}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {number} failed: {label}");
}

#[test]
fn criterion_1_point_and_line_counts() {
    let mut pass = true;
    for (q, points, lines) in [(2u32, 45usize, 27usize), (3, 280, 112)] {
        let ctx = ctx_for(q);
        let s = HermitianSurface::fermat(&ctx);
        pass &= s.rational_points(&ctx).len() == points;
        pass &= s.lines_on_surface(&ctx).len() == lines;
    }
    report(1, "point/line counts 45/27 (q=2) and 280/112 (q=3)", pass);
}

#[test]
fn criterion_2_fermat_curve_construction() {
    let mut pass = true;
    for q in [2u32, 3, 4, 5] {
        let ctx = ctx_for(q);
        let qe = q as u64;
        let (params, fjstar, fj) = fermat_curve(&ctx).unwrap();
        let m1 = ctx.neg(Fe::ONE);
        pass &= ctx.pow(params.omega, qe + 1) == m1;
        pass &= ctx.pow(params.xi, qe + 1) == Fe::ONE;
        pass &= ctx.mul(params.xi, params.xi) != m1;
        pass &= ctx.pow(params.eta, qe + 1) == ctx.add(ctx.frob(params.xi, 1), params.xi);
        let gram = fjstar
            .mat
            .transpose()
            .mul(&ctx, &fjstar.mat.entrywise_frob(&ctx, 1))
            .unwrap();
        pass &= gram == d_matrix(&ctx, &j_matrix(&ctx)).unwrap();
        let s = HermitianSurface::fermat(&ctx);
        pass &= curve_on_surface(&ctx, &fj, &s).unwrap().contained;
    }
    report(2, "explicit degree-(q+1) curve for q in {2,3,4,5}", pass);
}

#[test]
fn criterion_3_low_degree_nonexistence_scan() {
    let mut pass = true;
    let ctx = ctx_for(2);
    let s = HermitianSurface::fermat(&ctx);
    let out = scan_low_degree(&ctx, &s, 2, ScanMode::Exhaustive).unwrap();
    pass &= out.examined == 256u64.pow(3);
    pass &= out.violations.is_empty();

    let ctx = ctx_for(3);
    let s = HermitianSurface::fermat(&ctx);
    for d in [2usize, 3] {
        let out = scan_low_degree(
            &ctx,
            &s,
            d,
            ScanMode::Random { trials: 1_000_000, seed: 42 },
        )
        .unwrap();
        pass &= out.examined == 1_000_000;
        pass &= out.violations.is_empty();
    }
    report(3, "no contained rank>=3 curve: q=2 exhaustive, q=3 randomized", pass);
}

#[test]
fn criterion_4_orbit_counts() {
    let mut pass = true;
    for (q, want) in [(2u32, 432u64), (3, 18144)] {
        let ctx = ctx_for(q);
        let s = HermitianSurface::fermat(&ctx);
        let r = orbit_count(&ctx, &s).unwrap();
        pass &= r.orbit_size == want && want == curve_set_size(q as u64);
    }
    report(4, "orbit sizes 432 (q=2) and 18144 (q=3)", pass);
}

#[test]
fn criterion_5_stabilizer_orders() {
    let mut pass = true;

    let ctx = ctx_for(2);
    let s = HermitianSurface::fermat(&ctx);
    let f0 = seed_with_identity_gram(&ctx, &s).unwrap();
    let scan = stabilizer_order(&ctx, &s, &f0, StabilizerMethod::ScanGroup).unwrap();
    let pgu2 = stabilizer_order(&ctx, &s, &f0, StabilizerMethod::ViaPgu2).unwrap();
    pass &= scan == 60 && pgu2 == 60;
    pass &= orbit_count(&ctx, &s).unwrap().orbit_size * scan == group_order(4, 2).unwrap();

    let ctx = ctx_for(3);
    let s = HermitianSurface::fermat(&ctx);
    let f0 = seed_with_identity_gram(&ctx, &s).unwrap();
    let pgu2 = stabilizer_order(&ctx, &s, &f0, StabilizerMethod::ViaPgu2).unwrap();
    pass &= pgu2 == 720;
    pass &= orbit_count(&ctx, &s).unwrap().orbit_size * pgu2 == group_order(4, 3).unwrap();

    report(5, "stabilizers 60 (q=2, both methods) and 720 (q=3), orbit x stab = |G|", pass);
}

#[test]
fn criterion_6_q2_incidence() {
    let ctx = ctx_for(2);
    let p = incidence_profile(&ctx).unwrap();
    let mut pass = p.curve_count == 432 && p.points_per_curve == 5;
    for (size, want) in [(0u64, 240u64), (1, 150), (2, 40), (5, 1)] {
        pass &= p.histogram.get(&size).copied().unwrap_or(0) == want;
    }
    pass &= p.histogram.values().sum::<u64>() == 431;
    pass &= p.curves_per_point == 48;
    pass &= p.point_orbit_transitive;
    pass &= p.point_stabilizer_order == 576;
    report(6, "q=2 incidence: 5 points/curve, 150/40/1/240, 48/point, stab 576", pass);
}

#[test]
fn criterion_7_algebraic_identity_suites() {
    let mut pass = true;
    for q in [2u32, 3] {
        let ctx = ctx_for(q);
        match identity_suites(&ctx, 1000, 42) {
            Ok(results) => {
                pass &= results.len() == 6;
                pass &= results.iter().all(|r| r.trials == 1000);
            }
            Err(_) => pass = false,
        }
    }
    report(7, "six identity suites x 1000 seeded trials per q in {2,3}", pass);
}

#[test]
fn criterion_8_rescale_into_gu() {
    let ctx = ctx_for(2);
    let classes = certified_closure_q2(&ctx).unwrap();
    let mut pass = classes.len() == 25920;
    for q_mat in &classes {
        let q_prime = gu_rescale(&ctx, q_mat).unwrap();
        pass &= q_prime.entries().iter().all(|&x| ctx.in_subfield(x, 2));
        pass &= unitary_check(&ctx, &q_prime, 1) == Some(Fe::ONE);
        if !pass {
            break;
        }
    }
    report(8, "all 25920 classes rescale into GU4(F4)", pass);
}
