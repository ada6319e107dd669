//! The projective unitary groups acting on curves: generation and closure,
//! the action on reduced curve matrices, orbit and stabilizer counts, the
//! transformation identity for D_B, and the q = 2 incidence statistics.

use crate::curve::{
    d_matrix, d_matrix_extract, fermat_curve, j_matrix, phi_star, reduced_fingerprint,
    reduced_monomials, Fingerprint, ReducedCurveMatrix,
};
use crate::field::{Fe, FieldCtx};
use crate::mat::{hermitian_decompose, Mat};
use crate::surface::{HermitianSurface, ProjPoint};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet};

/// Orbit-stabilizer certificate for the set of nonplanar degree-(q+1)
/// curves on a smooth Hermitian surface.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub q: u32,
    pub orbit_size: u64,
    pub stabilizer_order: u64,
    pub group_order: u64,
    pub consistency: bool,
}

/// q = 2 incidence statistics for the 432 cubics on the Fermat surface.
#[derive(Clone, Debug, Serialize)]
pub struct IncidenceProfile {
    pub curve_count: u64,
    pub points_per_curve: u64,
    /// Intersection-size histogram shared by every curve: size -> count of
    /// other curves meeting it in that many F_{q²}-points.
    pub histogram: BTreeMap<u64, u64>,
    pub curves_per_point: u64,
    pub point_orbit_transitive: bool,
    pub point_stabilizer_order: u64,
}

/// Returns λ when ᵗm m^{(q^level)} = λI with λ ≠ 0, None otherwise.
pub fn unitary_check(ctx: &FieldCtx, m: &Mat, level: u32) -> Option<Fe> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let prod = m.transpose().mul(ctx, &m.entrywise_frob(ctx, level)).ok()?;
    let lam = prod.get(0, 0);
    if lam.is_zero() {
        return None;
    }
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { lam } else { Fe::ZERO };
            if prod.get(i, j) != want {
                return None;
            }
        }
    }
    Some(lam)
}

/// |PGU_n(F_{q²})| for n = 4 and |PGU₂(F_{q⁴})| for n = 2.
pub fn group_order(n: u32, q: u64) -> Result<u64> {
    match n {
        4 => Ok(q.pow(6) * (q.pow(4) - 1) * (q.pow(3) + 1) * (q.pow(2) - 1)),
        2 => Ok(q.pow(2) * (q.pow(4) - 1)),
        _ => Err(Error::BadSubfield(n)),
    }
}

/// |R| = q⁴(q³+1)(q²-1), the predicted orbit size.
pub fn curve_set_size(q: u64) -> u64 {
    q.pow(4) * (q.pow(3) + 1) * (q.pow(2) - 1)
}

/// Canonical projective representative: scale so the first nonzero entry
/// (row-major) is 1.
pub fn canon_proj(ctx: &FieldCtx, m: &Mat) -> Mat {
    let lead = m.entries().iter().find(|x| !x.is_zero());
    match lead {
        Some(&c) => m.scalar_mul(ctx, ctx.inv(c).expect("nonzero")),
        None => m.clone(),
    }
}

fn mat_key(m: &Mat) -> Vec<u16> {
    m.entries().iter().map(|fe| fe.0).collect()
}

/// A generating set for the unitary similitude classes of the Fermat form:
/// adjacent transpositions, one diagonal μ_{q+1} scaling, and unitary
/// reflections at anisotropic vectors. Every generator passes
/// unitary_check; completeness is certified externally (closure count for
/// q = 2, orbit-stabilizer consistency otherwise).
pub fn generators(ctx: &FieldCtx) -> Result<Vec<Mat>> {
    let q = ctx.q() as u64;
    let mut gens: Vec<Mat> = vec![];
    for k in 0..3 {
        let mut perm = Mat::identity(4);
        perm.set(k, k, Fe::ZERO);
        perm.set(k + 1, k + 1, Fe::ZERO);
        perm.set(k, k + 1, Fe::ONE);
        perm.set(k + 1, k, Fe::ONE);
        gens.push(perm);
    }
    // theta generates μ_{q+1}.
    let theta = Fe((ctx.order() / (q as u32 + 1) + 1) as u16);
    debug_assert_eq!(ctx.mult_order(theta)?, q as u32 + 1);
    let mut diag = Mat::identity(4);
    diag.set(0, 0, theta);
    gens.push(diag);
    // Reflections r(x) = x - (1-θ) h(x,v)/h(v,v) v at anisotropic v over
    // F_{q²}; as a matrix, I - (1-θ)/h(v,v) · v ᵗ(v^{(q)}).
    let zeta = ctx
        .subfield_elements(2)?
        .into_iter()
        .find(|&x| !x.is_zero() && x != Fe::ONE)
        .expect("F_{q²} has more than two elements");
    let candidates: Vec<[Fe; 4]> = vec![
        [Fe::ONE, Fe::ONE, Fe::ZERO, Fe::ZERO],
        [Fe::ONE, Fe::ONE, Fe::ONE, Fe::ZERO],
        [Fe::ONE, zeta, Fe::ONE, Fe::ZERO],
        [Fe::ONE, Fe::ONE, Fe::ONE, Fe::ONE],
        [Fe::ONE, zeta, Fe::ZERO, Fe::ZERO],
    ];
    for v in candidates {
        let mu = v.iter().fold(Fe::ZERO, |acc, &x| ctx.add(acc, ctx.pow(x, q + 1)));
        if mu.is_zero() {
            continue;
        }
        let c = ctx.mul(ctx.sub(Fe::ONE, theta), ctx.inv(mu)?);
        let mut r = Mat::identity(4);
        for i in 0..4 {
            for j in 0..4 {
                let outer = ctx.mul(v[i], ctx.frob(v[j], 1));
                r.set(i, j, ctx.sub(r.get(i, j), ctx.mul(c, outer)));
            }
        }
        gens.push(r);
    }
    for g in &gens {
        debug_assert!(unitary_check(ctx, g, 1).is_some());
        if unitary_check(ctx, g, 1).is_none() {
            return Err(Error::GenerationCertificate { got: 0, want: 0 });
        }
    }
    Ok(gens.into_iter().map(|g| canon_proj(ctx, &g)).collect())
}

/// Full closure of the generated projective group; feasible at q = 2
/// (25920 elements).
pub fn closure(ctx: &FieldCtx, gens: &[Mat]) -> Vec<Mat> {
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut elems = vec![canon_proj(ctx, &Mat::identity(4))];
    seen.insert(mat_key(&elems[0]));
    let mut frontier = elems.clone();
    while !frontier.is_empty() {
        let mut next = vec![];
        for m in &frontier {
            for g in gens {
                let prod = canon_proj(ctx, &g.mul(ctx, m).expect("4x4"));
                if seen.insert(mat_key(&prod)) {
                    next.push(prod);
                }
            }
        }
        elems.extend(next.iter().cloned());
        frontier = next;
    }
    elems
}

/// Certified generating set for q = 2: the closure must reach exactly
/// |PGU₄(F₄)| = 25920 classes.
pub fn certified_closure_q2(ctx: &FieldCtx) -> Result<Vec<Mat>> {
    let gens = generators(ctx)?;
    let elems = closure(ctx, &gens);
    let want = group_order(4, ctx.q() as u64)?;
    if elems.len() as u64 != want {
        return Err(Error::GenerationCertificate { got: elems.len() as u64, want });
    }
    Ok(elems)
}

/// Left action of a surface automorphism on a reduced curve matrix. The
/// result must stay in S*: its Gram against the surface must keep the D_B
/// shape, otherwise the input was not an automorphism.
pub fn act(
    ctx: &FieldCtx,
    s: &HermitianSurface,
    q_mat: &Mat,
    fstar: &ReducedCurveMatrix,
) -> Result<ReducedCurveMatrix> {
    let out = q_mat.mul(ctx, &fstar.mat)?;
    let g = out.transpose().mul(ctx, s.matrix())?.mul(ctx, &out.entrywise_frob(ctx, 1))?;
    d_matrix_extract(ctx, &g)?;
    ReducedCurveMatrix::new(ctx, out)
}

/// Two reduced matrices describe the same curve iff their parameter
/// fingerprints coincide.
pub fn curves_equal(
    ctx: &FieldCtx,
    f1: &ReducedCurveMatrix,
    f2: &ReducedCurveMatrix,
) -> Result<bool> {
    Ok(reduced_fingerprint(ctx, f1)? == reduced_fingerprint(ctx, f2)?)
}

/// Seed curve on X_A with Gram D_J: the explicit Fermat-surface curve,
/// conjugated through P⁻¹ when A = ᵗP P^{(q)} differs from the identity.
pub fn seed_curve(ctx: &FieldCtx, s: &HermitianSurface) -> Result<ReducedCurveMatrix> {
    let (_, fjstar, _) = fermat_curve(ctx)?;
    if *s.matrix() == Mat::identity(4) {
        return Ok(fjstar);
    }
    if !s.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let p = hermitian_decompose(ctx, s.matrix(), 1)?;
    let seeded = p.inv(ctx)?.mul(ctx, &fjstar.mat)?;
    ReducedCurveMatrix::new(ctx, seeded)
}

/// Generators of Aut(X_A), conjugated from the Fermat-form generators.
pub fn surface_generators(ctx: &FieldCtx, s: &HermitianSurface) -> Result<Vec<Mat>> {
    let gens = generators(ctx)?;
    if *s.matrix() == Mat::identity(4) {
        return Ok(gens);
    }
    let p = hermitian_decompose(ctx, s.matrix(), 1)?;
    let pinv = p.inv(ctx)?;
    gens.iter()
        .map(|g| Ok(canon_proj(ctx, &pinv.mul(ctx, g)?.mul(ctx, &p)?)))
        .collect()
}

/// Breadth-first orbit of the seed curve under the generators,
/// deduplicated by fingerprint.
pub fn curve_orbit(
    ctx: &FieldCtx,
    s: &HermitianSurface,
    gens: &[Mat],
    seed: &ReducedCurveMatrix,
) -> Result<Vec<ReducedCurveMatrix>> {
    let mut seen: HashSet<Fingerprint> = HashSet::new();
    seen.insert(reduced_fingerprint(ctx, seed)?);
    let mut orbit = vec![seed.clone()];
    let mut frontier = orbit.clone();
    while !frontier.is_empty() {
        let mut next = vec![];
        for f in &frontier {
            for g in gens {
                let moved = act(ctx, s, g, f)?;
                let fp = reduced_fingerprint(ctx, &moved)?;
                if seen.insert(fp) {
                    next.push(moved);
                }
            }
        }
        orbit.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(orbit)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerMethod {
    /// Scan the fully enumerated group (q = 2 only).
    ScanGroup,
    /// Enumerate the 2×2 unitary similitudes over F_{q⁴} and push them
    /// through F* φ*(g) F*⁻¹.
    ViaPgu2,
}

/// Order of the stabilizer of the seed curve in Aut(X_A); must equal
/// q²(q⁴-1).
pub fn stabilizer_order(
    ctx: &FieldCtx,
    s: &HermitianSurface,
    fstar: &ReducedCurveMatrix,
    method: StabilizerMethod,
) -> Result<u64> {
    match method {
        StabilizerMethod::ScanGroup => {
            if ctx.q() != 2 {
                return Err(Error::Infeasible { command: "stabilizer scan_group".into(), q: ctx.q() });
            }
            let elems = match *s.matrix() == Mat::identity(4) {
                true => certified_closure_q2(ctx)?,
                false => closure(ctx, &surface_generators(ctx, s)?),
            };
            let fp = reduced_fingerprint(ctx, fstar)?;
            let mut count = 0u64;
            for q_mat in &elems {
                let moved = act(ctx, s, q_mat, fstar)?;
                if reduced_fingerprint(ctx, &moved)? == fp {
                    count += 1;
                }
            }
            Ok(count)
        }
        StabilizerMethod::ViaPgu2 => stabilizer_via_pgu2(ctx, s, fstar),
    }
}

/// A reduced matrix on X_A whose Gram is a scalar multiple of D_I,
/// obtained from the D_J seed through the transformation law:
/// pick c with (cJ) Hermitian w.r.t. q² (c = 1 in characteristic 2),
/// decompose cJ = ᵗB B^{(q²)}, and reparametrize by g = B⁻¹; then
/// ᵗφ*(g) D_J φ*(g)^{(q)} = det(g)^q c⁻¹ D_I.
pub fn seed_with_identity_gram(
    ctx: &FieldCtx,
    s: &HermitianSurface,
) -> Result<ReducedCurveMatrix> {
    let seed = seed_curve(ctx, s)?;
    let j = j_matrix(ctx);
    let c = if ctx.p() == 2 {
        Fe::ONE
    } else {
        let q2 = ctx.q() as u64 * ctx.q() as u64;
        let m1 = ctx.neg(Fe::ONE);
        ctx.elements()
            .find(|&x| !x.is_zero() && ctx.pow(x, q2 - 1) == m1)
            .expect("q odd makes -1 a (q²-1)-th power residue target")
    };
    let cj = j.scalar_mul(ctx, c);
    let b = hermitian_decompose(ctx, &cj, 2)?;
    let g = b.inv(ctx)?;
    let f0 = seed.mat.mul(ctx, &phi_star(ctx, &g)?)?;
    let f0 = ReducedCurveMatrix::new(ctx, f0)?;
    // Sanity: the Gram must now be a scalar multiple of D_I.
    let gram = f0.mat.transpose().mul(ctx, s.matrix())?.mul(ctx, &f0.mat.entrywise_frob(ctx, 1))?;
    let bmat = d_matrix_extract(ctx, &gram)?;
    let scale = bmat.get(0, 0);
    if bmat != Mat::identity(2).scalar_mul(ctx, scale) {
        return Err(Error::NotDbShape);
    }
    Ok(f0)
}

fn stabilizer_via_pgu2(
    ctx: &FieldCtx,
    s: &HermitianSurface,
    fstar: &ReducedCurveMatrix,
) -> Result<u64> {
    // Work from a representative with Gram scalar·D_I in the same curve
    // orbit position: the given fstar must already be such a seed.
    let f0 = fstar;
    let f0_inv = f0.mat.inv(ctx)?;
    let fp = reduced_fingerprint(ctx, f0)?;
    let n = ctx.size() as usize;
    let frob2: Vec<Fe> = (0..n).map(|r| ctx.frob(Fe(r as u16), 2)).collect();
    // Enumerate 2x2 similitudes over F_{q⁴}: columns u, v with
    // norm(u) = norm(v) ≠ 0 and cross(u, v) = 0, where
    // norm(u) = Σ u_i^{q²+1} and cross(u, v) = Σ u_i v_i^{q²}.
    let cols: Vec<(Fe, Fe)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (Fe(a as u16), Fe(b as u16))))
        .filter(|&(a, b)| !(a.is_zero() && b.is_zero()))
        .collect();
    let norms: Vec<Fe> = cols
        .iter()
        .map(|&(a, b)| {
            ctx.add(ctx.mul(a, frob2[a.0 as usize]), ctx.mul(b, frob2[b.0 as usize]))
        })
        .collect();
    let sims: Vec<Mat> = cols
        .par_iter()
        .enumerate()
        .filter(|(i, _)| !norms[*i].is_zero())
        .map(|(i, &(u0, u1))| {
            let mut local = vec![];
            for (jx, &(v0, v1)) in cols.iter().enumerate() {
                if norms[jx] != norms[i] {
                    continue;
                }
                let cross = ctx.add(
                    ctx.mul(u0, frob2[v0.0 as usize]),
                    ctx.mul(u1, frob2[v1.0 as usize]),
                );
                if !cross.is_zero() {
                    continue;
                }
                local.push(Mat::from_rows(&[vec![u0, v0], vec![u1, v1]]));
            }
            local
        })
        .flatten()
        .collect();
    let mut classes: HashSet<Vec<u16>> = HashSet::new();
    for g in &sims {
        debug_assert!(unitary_check(ctx, g, 2).is_some());
        let q4 = phi_star(ctx, g)?;
        let q_mat = f0.mat.mul(ctx, &q4)?.mul(ctx, &f0_inv)?;
        // Membership in Aut(X_A): ᵗQ A Q^{(q)} = λA.
        let lhs = q_mat
            .transpose()
            .mul(ctx, s.matrix())?
            .mul(ctx, &q_mat.entrywise_frob(ctx, 1))?;
        let canon = canon_proj(ctx, &q_mat);
        let lam = {
            // scale factor between lhs and A at the first nonzero slot of A
            let (i, j) = (0..4)
                .flat_map(|i| (0..4).map(move |j| (i, j)))
                .find(|&(i, j)| !s.matrix().get(i, j).is_zero())
                .expect("A invertible");
            ctx.mul(lhs.get(i, j), ctx.inv(s.matrix().get(i, j))?)
        };
        if lhs != s.matrix().scalar_mul(ctx, lam) {
            return Err(Error::NotDbShape);
        }
        let moved = act(ctx, s, &canon, f0)?;
        if reduced_fingerprint(ctx, &moved)? == fp {
            classes.insert(mat_key(&canon));
        }
    }
    Ok(classes.len() as u64)
}

/// Full orbit-stabilizer certificate; the consistency identity
/// orbit × stabilizer = |PGU₄(F_{q²})| jointly certifies the generators,
/// the action, and the fingerprint equality test.
pub fn orbit_count(ctx: &FieldCtx, s: &HermitianSurface) -> Result<OrbitReport> {
    let q = ctx.q() as u64;
    let gens = surface_generators(ctx, s)?;
    let seed = seed_curve(ctx, s)?;
    let orbit = curve_orbit(ctx, s, &gens, &seed)?;
    let f0 = seed_with_identity_gram(ctx, s)?;
    let stab = stabilizer_order(ctx, s, &f0, StabilizerMethod::ViaPgu2)?;
    let group = group_order(4, q)?;
    let report = OrbitReport {
        q: ctx.q(),
        orbit_size: orbit.len() as u64,
        stabilizer_order: stab,
        group_order: group,
        consistency: orbit.len() as u64 * stab == group,
    };
    if !report.consistency {
        return Err(Error::OrbitInconsistent {
            orbit: report.orbit_size,
            stabilizer: report.stabilizer_order,
            group,
        });
    }
    Ok(report)
}

/// Checks ᵗφ*(g) D_B φ*(g)^{(q)} = det(g)^q D_{ᵗg B g^{(q²)}} on seeded
/// random pairs over F_{q⁴}.
pub fn verify_transform_lemma(ctx: &FieldCtx, trials: u64, seed: u64) -> Result<bool> {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let n = ctx.size();
    let sample_invertible = |rng: &mut rand_chacha::ChaCha12Rng| loop {
        let m = Mat::from_rows(&[
            vec![Fe(rng.gen_range(0..n) as u16), Fe(rng.gen_range(0..n) as u16)],
            vec![Fe(rng.gen_range(0..n) as u16), Fe(rng.gen_range(0..n) as u16)],
        ]);
        if !m.det(ctx).expect("2x2").is_zero() {
            return m;
        }
    };
    for _ in 0..trials {
        let g = sample_invertible(&mut rng);
        let b = sample_invertible(&mut rng);
        let db = d_matrix(ctx, &b)?;
        let ps = phi_star(ctx, &g)?;
        let lhs = ps.transpose().mul(ctx, &db)?.mul(ctx, &ps.entrywise_frob(ctx, 1))?;
        let conj = g.transpose().mul(ctx, &b)?.mul(ctx, &g.entrywise_frob(ctx, 2))?;
        let detq = ctx.frob(g.det(ctx)?, 1);
        let rhs = d_matrix(ctx, &conj)?.scalar_mul(ctx, detq);
        if lhs != rhs {
            return Err(Error::TransformIdentity);
        }
    }
    Ok(true)
}

/// One named identity suite: how many seeded random trials it passed.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub trials: u64,
}

/// Seeded random verification of the algebraic identities underlying the
/// curve action: φ and φ* are multiplicative, det(φ*(g)) = det(g)^{2q+2},
/// extracting the reduced columns commutes with reparametrization, the D_B
/// transformation law holds, and Hermitian decomposition round-trips.
pub fn identity_suites(ctx: &FieldCtx, trials: u64, seed: u64) -> Result<Vec<SuiteResult>> {
    use crate::curve::phi;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let q = ctx.q() as usize;
    let n = ctx.size();
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    // φ and φ* are defined on GL₂ only, so sample invertible matrices.
    let rand2 = |rng: &mut rand_chacha::ChaCha12Rng| loop {
        let m = Mat::from_rows(&[
            vec![Fe(rng.gen_range(0..n) as u16), Fe(rng.gen_range(0..n) as u16)],
            vec![Fe(rng.gen_range(0..n) as u16), Fe(rng.gen_range(0..n) as u16)],
        ]);
        if !m.det(ctx).expect("2x2").is_zero() {
            return m;
        }
    };
    let mut out = vec![];

    for _ in 0..trials {
        let g = rand2(&mut rng);
        let h = rand2(&mut rng);
        let lhs = phi(ctx, &g.mul(ctx, &h)?, q + 1)?;
        let rhs = phi(ctx, &g, q + 1)?.mul(ctx, &phi(ctx, &h, q + 1)?)?;
        if lhs != rhs {
            return Err(Error::TransformIdentity);
        }
    }
    out.push(SuiteResult { name: "phi_homomorphism".into(), trials });

    for _ in 0..trials {
        let g = rand2(&mut rng);
        let h = rand2(&mut rng);
        let lhs = phi_star(ctx, &g.mul(ctx, &h)?)?;
        let rhs = phi_star(ctx, &g)?.mul(ctx, &phi_star(ctx, &h)?)?;
        if lhs != rhs {
            return Err(Error::TransformIdentity);
        }
    }
    out.push(SuiteResult { name: "phi_star_homomorphism".into(), trials });

    for _ in 0..trials {
        let g = rand2(&mut rng);
        let lhs = phi_star(ctx, &g)?.det(ctx)?;
        let rhs = ctx.pow(g.det(ctx)?, 2 * q as u64 + 2);
        if lhs != rhs {
            return Err(Error::TransformIdentity);
        }
    }
    out.push(SuiteResult { name: "phi_star_determinant".into(), trials });

    let (_, fjstar, fj) = fermat_curve(ctx)?;
    for _ in 0..trials {
        let g = rand2(&mut rng);
        let moved = fj.mat.mul(ctx, &phi(ctx, &g, q + 1)?)?;
        let kept = [0usize, 1, q, q + 1];
        let lhs = Mat::from_cols(&kept.iter().map(|&c| moved.col(c)).collect::<Vec<_>>());
        let rhs = fjstar.mat.mul(ctx, &phi_star(ctx, &g)?)?;
        if lhs != rhs {
            return Err(Error::TransformIdentity);
        }
    }
    out.push(SuiteResult { name: "reduction_commutes_with_phi".into(), trials });

    verify_transform_lemma(ctx, trials, seed ^ 0xd1f2)?;
    out.push(SuiteResult { name: "db_transformation_law".into(), trials });

    let fq = ctx.subfield_elements(1)?;
    let fq2 = ctx.subfield_elements(2)?;
    let mut done = 0u64;
    while done < trials {
        // Random Hermitian A: diagonal in F_q, off-diagonal in F_{q²} with
        // a_{ji} = a_{ij}^q.
        let mut a = Mat::zero(4, 4);
        for i in 0..4 {
            a.set(i, i, fq[rng.gen_range(0..fq.len())]);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                let x = fq2[rng.gen_range(0..fq2.len())];
                a.set(i, j, x);
                a.set(j, i, ctx.frob(x, 1));
            }
        }
        if a.det(ctx)?.is_zero() {
            continue;
        }
        let b = hermitian_decompose(ctx, &a, 1)?;
        if b.transpose().mul(ctx, &b.entrywise_frob(ctx, 1))? != a {
            return Err(Error::TransformIdentity);
        }
        done += 1;
    }
    out.push(SuiteResult { name: "hermitian_decompose_roundtrip".into(), trials });

    Ok(out)
}

/// Rescales a projective unitary-similitude class into GU: Q' = ξ_λ Q with
/// ξ_λ^{q+1} = λ⁻¹ satisfies ᵗQ' Q'^{(q)} = I with entries in F_{q²}.
pub fn gu_rescale(ctx: &FieldCtx, q_mat: &Mat) -> Result<Mat> {
    let lam = unitary_check(ctx, q_mat, 1).ok_or(Error::NotDbShape)?;
    let xi = ctx.solve_norm(ctx.inv(lam)?, 1)?;
    Ok(q_mat.scalar_mul(ctx, xi))
}

/// The full q = 2 incidence profile of the 432 cubics on X_I.
pub fn incidence_profile(ctx: &FieldCtx) -> Result<IncidenceProfile> {
    if ctx.q() != 2 {
        return Err(Error::Infeasible { command: "incidence".into(), q: ctx.q() });
    }
    let s = HermitianSurface::fermat(ctx);
    let gens = generators(ctx)?;
    let seed = seed_curve(ctx, &s)?;
    let orbit = curve_orbit(ctx, &s, &gens, &seed)?;
    let monos = reduced_monomials(ctx);

    // F₄-point set of each curve: fingerprint points with all coordinates
    // in F_{q²} (parametrization injectivity pins them to P¹(F_{q²})
    // parameters).
    let mut point_sets: Vec<Vec<[Fe; 4]>> = vec![];
    for f in &orbit {
        let fp = crate::curve::fingerprint_from_monomials(ctx, &f.mat, &monos)?;
        let pts: Vec<[Fe; 4]> = fp
            .into_iter()
            .filter(|p| p.iter().all(|&c| ctx.in_subfield(c, 2)))
            .collect();
        if pts.len() != 5 {
            return Err(Error::IncidenceMismatch(format!(
                "curve has {} F₄-points, expected 5",
                pts.len()
            )));
        }
        point_sets.push(pts);
    }

    // Shared intersection histogram.
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    for (i, a) in point_sets.iter().enumerate() {
        let mut local: BTreeMap<u64, u64> = BTreeMap::new();
        for (j, b) in point_sets.iter().enumerate() {
            if i == j {
                continue;
            }
            let inter = a.iter().filter(|p| b.contains(p)).count() as u64;
            *local.entry(inter).or_insert(0) += 1;
        }
        if i == 0 {
            histogram = local;
        } else if histogram != local {
            return Err(Error::IncidenceMismatch("histogram differs across curves".into()));
        }
    }

    // Curves through each surface point.
    let mut per_point: HashMap<[Fe; 4], u64> = HashMap::new();
    for pts in &point_sets {
        for p in pts {
            *per_point.entry(*p).or_insert(0) += 1;
        }
    }
    let surface_points = s.rational_points(ctx);
    if per_point.len() != surface_points.len() {
        return Err(Error::IncidenceMismatch(format!(
            "curves cover {} points, surface has {}",
            per_point.len(),
            surface_points.len()
        )));
    }
    let curves_per_point = *per_point.values().next().expect("nonempty");
    if per_point.values().any(|&c| c != curves_per_point) {
        return Err(Error::IncidenceMismatch("uneven curves-per-point".into()));
    }

    // Point action: transitivity and stabilizer order over the full group.
    let elems = certified_closure_q2(ctx)?;
    let base = surface_points[0];
    let mut orbit_pts: HashSet<ProjPoint> = HashSet::new();
    let mut stab = 0u64;
    for q_mat in &elems {
        let img = q_mat.mat_vec(ctx, base.coords())?;
        let img = ProjPoint::normalize(ctx, [img[0], img[1], img[2], img[3]])
            .expect("unitary image nonzero");
        orbit_pts.insert(img);
        if img == base {
            stab += 1;
        }
    }
    Ok(IncidenceProfile {
        curve_count: orbit.len() as u64,
        points_per_curve: 5,
        histogram,
        curves_per_point,
        point_orbit_transitive: orbit_pts.len() == surface_points.len(),
        point_stabilizer_order: stab,
    })
}
