//! Hermitian surfaces in P³: point membership, enumeration of rational
//! points over F_{q²}, and enumeration of the lines lying on the surface.

use crate::field::{Fe, FieldCtx};
use crate::mat::{is_hermitian, Mat};
use crate::{Error, Result};
use std::collections::HashSet;

/// A point of P³, normalized so the first nonzero coordinate is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjPoint(pub [Fe; 4]);

impl ProjPoint {
    /// Canonical projective normalization. Returns None for the zero vector.
    pub fn normalize(ctx: &FieldCtx, coords: [Fe; 4]) -> Option<ProjPoint> {
        let lead = coords.iter().find(|c| !c.is_zero())?;
        let inv = ctx.inv(*lead).ok()?;
        let mut out = [Fe::ZERO; 4];
        for (o, &c) in out.iter_mut().zip(&coords) {
            *o = ctx.mul(inv, c);
        }
        Some(ProjPoint(out))
    }

    pub fn coords(&self) -> &[Fe; 4] {
        &self.0
    }
}

/// The surface X_A = { x : ᵗx A x^{(q)} = 0 } for invertible A.
pub struct HermitianSurface {
    a: Mat,
    hermitian: bool,
}

impl HermitianSurface {
    pub fn new(ctx: &FieldCtx, a: Mat) -> Result<HermitianSurface> {
        if a.rows() != 4 || a.cols() != 4 {
            return Err(Error::Dimension("surface matrix must be 4x4".into()));
        }
        if a.det(ctx)?.is_zero() {
            // Smooth iff A is invertible.
            return Err(Error::Singular);
        }
        let hermitian = is_hermitian(ctx, &a, 1);
        Ok(HermitianSurface { a, hermitian })
    }

    pub fn fermat(ctx: &FieldCtx) -> HermitianSurface {
        HermitianSurface::new(ctx, Mat::identity(4)).expect("identity is invertible")
    }

    pub fn matrix(&self) -> &Mat {
        &self.a
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// ᵗx A x^{(q)}, the defining form evaluated at raw coordinates.
    pub fn form(&self, ctx: &FieldCtx, x: &[Fe; 4]) -> Fe {
        let mut acc = Fe::ZERO;
        for i in 0..4 {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Fe::ZERO;
            for j in 0..4 {
                row = ctx.add(row, ctx.mul(self.a.get(i, j), ctx.frob(x[j], 1)));
            }
            acc = ctx.add(acc, ctx.mul(x[i], row));
        }
        acc
    }

    pub fn contains_point(&self, ctx: &FieldCtx, x: &ProjPoint) -> bool {
        self.form(ctx, x.coords()).is_zero()
    }

    /// The sesquilinear pairing h(u, v) = ᵗu A v^{(q)}.
    pub fn pairing(&self, ctx: &FieldCtx, u: &[Fe; 4], v: &[Fe; 4]) -> Fe {
        let mut acc = Fe::ZERO;
        for i in 0..4 {
            if u[i].is_zero() {
                continue;
            }
            let mut row = Fe::ZERO;
            for j in 0..4 {
                row = ctx.add(row, ctx.mul(self.a.get(i, j), ctx.frob(v[j], 1)));
            }
            acc = ctx.add(acc, ctx.mul(u[i], row));
        }
        acc
    }

    /// All F_{q²}-points of the surface in canonical order. For Hermitian
    /// invertible A the count is (q³+1)(q²+1).
    pub fn rational_points(&self, ctx: &FieldCtx) -> Vec<ProjPoint> {
        enumerate_p3(ctx, 2)
            .into_iter()
            .filter(|pt| self.contains_point(ctx, pt))
            .collect()
    }

    /// Whether the line through independent points u, v lies on the surface:
    /// the full 2x2 Gram matrix of (u, v) must vanish.
    pub fn contains_line(&self, ctx: &FieldCtx, u: &ProjPoint, v: &ProjPoint) -> Result<bool> {
        let m = Mat::from_cols(&[u.coords().to_vec(), v.coords().to_vec()]);
        if m.rank(ctx) < 2 {
            return Err(Error::DependentVectors);
        }
        Ok(self.pairing(ctx, u.coords(), u.coords()).is_zero()
            && self.pairing(ctx, u.coords(), v.coords()).is_zero()
            && self.pairing(ctx, v.coords(), u.coords()).is_zero()
            && self.pairing(ctx, v.coords(), v.coords()).is_zero())
    }

    /// All lines of P³(F_{q²}) on the surface, one canonical representative
    /// each: the two lexicographically-first points of the line. For
    /// Hermitian invertible A the count is (q³+1)(q+1).
    pub fn lines_on_surface(&self, ctx: &FieldCtx) -> Vec<(ProjPoint, ProjPoint)> {
        let pts = self.rational_points(ctx);
        let mut seen: HashSet<(ProjPoint, ProjPoint)> = HashSet::new();
        let mut out = vec![];
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                if !matches!(self.contains_line(ctx, &pts[i], &pts[j]), Ok(true)) {
                    continue;
                }
                let rep = canonical_line(ctx, &pts[i], &pts[j]);
                if seen.insert(rep) {
                    out.push(rep);
                }
            }
        }
        out.sort();
        out
    }
}

/// The F_{q^i}-points of the line through u and v, in canonical order.
pub fn line_points(ctx: &FieldCtx, u: &ProjPoint, v: &ProjPoint, subfield: u32) -> Vec<ProjPoint> {
    let mut pts = vec![*v];
    for lam in ctx.subfield_elements(subfield).expect("valid subfield") {
        let mut c = [Fe::ZERO; 4];
        for k in 0..4 {
            c[k] = ctx.add(u.coords()[k], ctx.mul(lam, v.coords()[k]));
        }
        pts.push(ProjPoint::normalize(ctx, c).expect("u, v independent"));
    }
    pts.sort();
    pts
}

fn canonical_line(ctx: &FieldCtx, u: &ProjPoint, v: &ProjPoint) -> (ProjPoint, ProjPoint) {
    let pts = line_points(ctx, u, v, 2);
    (pts[0], pts[1])
}

/// All points of P³(F_{q^i}) with canonical normalization, in canonical
/// order: leading-one coordinate patterns enumerated lexicographically.
pub fn enumerate_p3(ctx: &FieldCtx, subfield: u32) -> Vec<ProjPoint> {
    let elems = ctx.subfield_elements(subfield).expect("valid subfield");
    let mut out = vec![];
    for lead in 0..4 {
        // coords[0..lead] = 0, coords[lead] = 1, rest free.
        let free = 3 - lead;
        let mut idx = vec![0usize; free];
        loop {
            let mut c = [Fe::ZERO; 4];
            c[lead] = Fe::ONE;
            for (k, &ix) in idx.iter().enumerate() {
                c[lead + 1 + k] = elems[ix];
            }
            out.push(ProjPoint(c));
            let mut pos = free;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    out
}

/// All points of P¹(F_{q^i}) as (s, t) pairs, canonical order.
pub fn enumerate_p1(ctx: &FieldCtx, subfield: u32) -> Vec<[Fe; 2]> {
    let elems = ctx.subfield_elements(subfield).expect("valid subfield");
    let mut out = vec![];
    for &t in &elems {
        out.push([Fe::ONE, t]);
    }
    out.push([Fe::ZERO, Fe::ONE]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn p3_cardinality() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        // |P³(F₄)| = (4⁴-1)/3 = 85
        assert_eq!(enumerate_p3(&ctx, 2).len(), 85);
        let all: HashSet<_> = enumerate_p3(&ctx, 2).into_iter().collect();
        assert_eq!(all.len(), 85);
    }

    #[test]
    fn contains_point_basics() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let s = HermitianSurface::fermat(&ctx);
        let e0 = ProjPoint([Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO]);
        assert!(!s.contains_point(&ctx, &e0));
        let x = ProjPoint([Fe::ONE, Fe::ONE, Fe::ZERO, Fe::ZERO]);
        assert!(s.contains_point(&ctx, &x));
    }

    #[test]
    fn form_scales_by_norm() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let s = HermitianSurface::fermat(&ctx);
        let mut rng = StdRng::seed_from_u64(23);
        let q = ctx.q() as u64;
        for _ in 0..100 {
            let x: [Fe; 4] = std::array::from_fn(|_| Fe(rng.gen_range(0..ctx.size()) as u16));
            if x.iter().all(|c| c.is_zero()) {
                continue;
            }
            let lam = Fe(rng.gen_range(1..ctx.size()) as u16);
            let scaled: [Fe; 4] = std::array::from_fn(|i| ctx.mul(lam, x[i]));
            let lhs = s.form(&ctx, &scaled);
            let rhs = ctx.mul(ctx.pow(lam, q + 1), s.form(&ctx, &x));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fermat_point_counts() {
        for (p, e, want) in [(2u32, 1u32, 45usize), (3, 1, 280)] {
            let ctx = FieldCtx::new(p, e).unwrap();
            let s = HermitianSurface::fermat(&ctx);
            assert_eq!(s.rational_points(&ctx).len(), want);
        }
    }

    #[test]
    fn fermat_line_counts() {
        for (p, e, want) in [(2u32, 1u32, 27usize), (3, 1, 112)] {
            let ctx = FieldCtx::new(p, e).unwrap();
            let s = HermitianSurface::fermat(&ctx);
            let lines = s.lines_on_surface(&ctx);
            assert_eq!(lines.len(), want);
            for (u, v) in &lines {
                assert!(s.contains_line(&ctx, u, v).unwrap());
            }
        }
    }

    #[test]
    fn counts_invariant_under_congruence() {
        // A = ᵗB B^{(q)} for random invertible B over F_{q²} gives the same
        // point count as the Fermat surface.
        let ctx = FieldCtx::new(2, 1).unwrap();
        let mut rng = StdRng::seed_from_u64(31);
        let f4 = ctx.subfield_elements(2).unwrap();
        for _ in 0..5 {
            let b = loop {
                let mut m = Mat::zero(4, 4);
                for i in 0..4 {
                    for j in 0..4 {
                        m.set(i, j, f4[rng.gen_range(0..4)]);
                    }
                }
                if !m.det(&ctx).unwrap().is_zero() {
                    break m;
                }
            };
            let a = b.transpose().mul(&ctx, &b.entrywise_frob(&ctx, 1)).unwrap();
            let s = HermitianSurface::new(&ctx, a).unwrap();
            assert!(s.is_hermitian());
            assert_eq!(s.rational_points(&ctx).len(), 45);
        }
    }

    #[test]
    fn line_specialization() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let s = HermitianSurface::fermat(&ctx);
        let u = ProjPoint([Fe::ONE, Fe::ONE, Fe::ZERO, Fe::ZERO]);
        let v = ProjPoint([Fe::ZERO, Fe::ZERO, Fe::ONE, Fe::ONE]);
        assert!(s.contains_line(&ctx, &u, &v).unwrap());
        for pt in line_points(&ctx, &u, &v, 2) {
            assert!(s.contains_point(&ctx, &pt));
        }
        let e0 = ProjPoint([Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO]);
        let e1 = ProjPoint([Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO]);
        assert!(!s.contains_line(&ctx, &e0, &e1).unwrap());
        assert!(s.contains_line(&ctx, &e0, &e0).is_err());
    }

    #[test]
    fn no_plane_on_fermat_q2() {
        // Planes of P³(F₄) are dual points h; check every plane has a point
        // off the surface.
        let ctx = FieldCtx::new(2, 1).unwrap();
        let s = HermitianSurface::fermat(&ctx);
        let pts = enumerate_p3(&ctx, 2);
        for h in &pts {
            let on_plane_and_surface = pts.iter().all(|x| {
                let dot = (0..4).fold(Fe::ZERO, |acc, k| {
                    ctx.add(acc, ctx.mul(h.coords()[k], x.coords()[k]))
                });
                !dot.is_zero() || s.contains_point(&ctx, x)
            });
            assert!(!on_plane_and_surface, "a plane lies on the surface");
        }
    }

    #[test]
    fn membership_invariant_under_coordinate_change() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let s = HermitianSurface::fermat(&ctx);
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..20 {
            let p = loop {
                let mut m = Mat::zero(4, 4);
                for i in 0..4 {
                    for j in 0..4 {
                        m.set(i, j, Fe(rng.gen_range(0..ctx.size()) as u16));
                    }
                }
                if !m.det(&ctx).unwrap().is_zero() {
                    break m;
                }
            };
            let a2 = p
                .transpose()
                .mul(&ctx, s.matrix())
                .unwrap()
                .mul(&ctx, &p.entrywise_frob(&ctx, 1))
                .unwrap();
            let s2 = HermitianSurface::new(&ctx, a2).unwrap();
            let pinv = p.inv(&ctx).unwrap();
            for x in enumerate_p3(&ctx, 2).iter().take(30) {
                let y = pinv.mat_vec(&ctx, x.coords()).unwrap();
                let y = ProjPoint::normalize(&ctx, [y[0], y[1], y[2], y[3]]).unwrap();
                assert_eq!(s.contains_point(&ctx, x), s2.contains_point(&ctx, &y));
            }
        }
    }

    #[test]
    fn rejects_singular_surface() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        assert!(matches!(
            HermitianSurface::new(&ctx, Mat::zero(4, 4)),
            Err(Error::Singular)
        ));
    }
}
