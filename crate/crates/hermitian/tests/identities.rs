//! Property-based checks of the algebraic laws behind the curve action.

use hermitian_curves::curve::{d_matrix, phi, phi_star, CurveMatrix};
use hermitian_curves::mat::hermitian_decompose;
use hermitian_curves::surface::HermitianSurface;
use hermitian_curves::{Fe, FieldCtx, Mat};
use proptest::prelude::*;

fn ctx_for(q: u32) -> FieldCtx {
    match q {
        2 => FieldCtx::new(2, 1).unwrap(),
        3 => FieldCtx::new(3, 1).unwrap(),
        _ => unreachable!(),
    }
}

fn fe(size: u32) -> impl Strategy<Value = Fe> {
    (0..size).prop_map(|r| Fe(r as u16))
}

fn gl2(size: u32) -> impl Strategy<Value = [Fe; 4]> {
    [fe(size), fe(size), fe(size), fe(size)]
}

fn as_mat(v: [Fe; 4]) -> Mat {
    Mat::from_rows(&[vec![v[0], v[1]], vec![v[2], v[3]]])
}

fn run_for_each_q(check: impl Fn(&FieldCtx, Mat, Mat)) {
    for q in [2u32, 3] {
        let ctx = ctx_for(q);
        let strat = (gl2(ctx.size()), gl2(ctx.size()));
        proptest!(ProptestConfig::with_cases(512), |((gv, hv) in strat)| {
            let g = as_mat(gv);
            let h = as_mat(hv);
            prop_assume!(!g.det(&ctx).unwrap().is_zero());
            prop_assume!(!h.det(&ctx).unwrap().is_zero());
            check(&ctx, g, h);
        });
    }
}

#[test]
fn phi_is_multiplicative() {
    run_for_each_q(|ctx, g, h| {
        let d = ctx.q() as usize + 1;
        let lhs = phi(ctx, &g.mul(ctx, &h).unwrap(), d).unwrap();
        let rhs = phi(ctx, &g, d).unwrap().mul(ctx, &phi(ctx, &h, d).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    });
}

#[test]
fn phi_star_is_multiplicative_with_det_law() {
    run_for_each_q(|ctx, g, h| {
        let lhs = phi_star(ctx, &g.mul(ctx, &h).unwrap()).unwrap();
        let rhs = phi_star(ctx, &g).unwrap().mul(ctx, &phi_star(ctx, &h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let det = phi_star(ctx, &g).unwrap().det(ctx).unwrap();
        assert_eq!(det, ctx.pow(g.det(ctx).unwrap(), 2 * ctx.q() as u64 + 2));
    });
}

#[test]
fn db_transformation_law() {
    run_for_each_q(|ctx, g, b| {
        let db = d_matrix(ctx, &b).unwrap();
        let ps = phi_star(ctx, &g).unwrap();
        let lhs = ps
            .transpose()
            .mul(ctx, &db)
            .unwrap()
            .mul(ctx, &ps.entrywise_frob(ctx, 1))
            .unwrap();
        let conj = g
            .transpose()
            .mul(ctx, &b)
            .unwrap()
            .mul(ctx, &g.entrywise_frob(ctx, 2))
            .unwrap();
        let detq = ctx.frob(g.det(ctx).unwrap(), 1);
        assert_eq!(lhs, d_matrix(ctx, &conj).unwrap().scalar_mul(ctx, detq));
    });
}

#[test]
fn hermitian_decompose_round_trips() {
    for q in [2u32, 3] {
        let ctx = ctx_for(q);
        let fq: Vec<Fe> = ctx.subfield_elements(1).unwrap();
        let fq2: Vec<Fe> = ctx.subfield_elements(2).unwrap();
        let diag = proptest::collection::vec(0..fq.len(), 4);
        let upper = proptest::collection::vec(0..fq2.len(), 6);
        proptest!(ProptestConfig::with_cases(512), |((d, u) in (diag, upper))| {
            let mut a = Mat::zero(4, 4);
            for i in 0..4 {
                a.set(i, i, fq[d[i]]);
            }
            let mut k = 0;
            for i in 0..4 {
                for j in i + 1..4 {
                    a.set(i, j, fq2[u[k]]);
                    a.set(j, i, ctx.frob(fq2[u[k]], 1));
                    k += 1;
                }
            }
            prop_assume!(!a.det(&ctx).unwrap().is_zero());
            let b = hermitian_decompose(&ctx, &a, 1).unwrap();
            prop_assert_eq!(b.transpose().mul(&ctx, &b.entrywise_frob(&ctx, 1)).unwrap(), a);
        });
    }
}

#[test]
fn contained_low_degree_curves_have_low_rank() {
    // Structural claim behind the nonexistence scan: any degree-d map with
    // 2 <= d <= q landing on the surface comes from a matrix of rank <= 2.
    for q in [2u32, 3] {
        let ctx = ctx_for(q);
        let s = HermitianSurface::fermat(&ctx);
        let fq2: Vec<Fe> = ctx.subfield_elements(2).unwrap();
        for d in 2..=q as usize {
            let entries = proptest::collection::vec(0..fq2.len(), 4 * (d + 1));
            proptest!(ProptestConfig::with_cases(2048), |(ev in entries)| {
                let rows: Vec<Vec<Fe>> = (0..4)
                    .map(|i| (0..=d).map(|j| fq2[ev[i * (d + 1) + j]]).collect())
                    .collect();
                let m = Mat::from_rows(&rows);
                prop_assume!(m.rank(&ctx) >= 2);
                let f = CurveMatrix::new(&ctx, m.clone()).unwrap();
                let contained = hermitian_curves::curve::curve_on_surface(&ctx, &f, &s)
                    .unwrap()
                    .contained;
                if contained {
                    prop_assert!(m.rank(&ctx) <= 2);
                }
            });
        }
    }
}
