//! Dense matrix algebra over the field tower: exact Gaussian elimination,
//! entrywise Frobenius, Hermitian predicates, and the constructive
//! decomposition A = ᵗB B^{(Q)} for Hermitian A.

use crate::field::{Fe, FieldCtx};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Fe>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, entries: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c));
        Mat { rows: r, cols: c, entries: rows.concat() }
    }

    pub fn from_cols(cols: &[Vec<Fe>]) -> Mat {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        assert!(cols.iter().all(|v| v.len() == r));
        let mut m = Mat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = ctx.add(out.get(i, j), ctx.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, ctx: &FieldCtx, v: &[Fe]) -> Result<Vec<Fe>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!("{}x{} * {}", self.rows, self.cols, v.len())));
        }
        let mut out = vec![Fe::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = Fe::ZERO;
            for j in 0..self.cols {
                acc = ctx.add(acc, ctx.mul(self.get(i, j), v[j]));
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, ctx: &FieldCtx, c: Fe) -> Mat {
        let entries = self.entries.iter().map(|&x| ctx.mul(c, x)).collect();
        Mat { rows: self.rows, cols: self.cols, entries }
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix addition".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| ctx.add(a, b))
            .collect();
        Ok(Mat { rows: self.rows, cols: self.cols, entries })
    }

    /// Entrywise x ↦ x^{q^i}.
    pub fn entrywise_frob(&self, ctx: &FieldCtx, i: u32) -> Mat {
        let entries = self.entries.iter().map(|&x| ctx.frob(x, i)).collect();
        Mat { rows: self.rows, cols: self.cols, entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    fn elimination(&self, ctx: &FieldCtx) -> (Mat, usize, Fe, Vec<usize>) {
        // Row echelon form; returns (echelon, rank, det-of-leading-minors
        // product with swap signs, pivot columns). det is meaningful only
        // for square full-rank input.
        let mut m = self.clone();
        let mut det = Fe::ONE;
        let mut rank = 0;
        let mut pivots = vec![];
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pr != rank {
                for j in 0..m.cols {
                    let a = m.get(rank, j);
                    let b = m.get(pr, j);
                    m.set(rank, j, b);
                    m.set(pr, j, a);
                }
                det = ctx.neg(det);
            }
            let pivot = m.get(rank, col);
            det = ctx.mul(det, pivot);
            let pinv = ctx.inv(pivot).expect("pivot nonzero");
            for j in col..m.cols {
                m.set(rank, j, ctx.mul(pinv, m.get(rank, j)));
            }
            for r in 0..m.rows {
                if r == rank {
                    continue;
                }
                let f = m.get(r, col);
                if f.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = ctx.sub(m.get(r, j), ctx.mul(f, m.get(rank, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        (m, rank, det, pivots)
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.elimination(ctx).1
    }

    pub fn det(&self, ctx: &FieldCtx) -> Result<Fe> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let (_, rank, det, _) = self.elimination(ctx);
        if rank < self.rows {
            Ok(Fe::ZERO)
        } else {
            Ok(det)
        }
    }

    pub fn inv(&self, ctx: &FieldCtx) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Mat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fe::ONE);
        }
        let (ech, rank, _, _) = aug.elimination(ctx);
        if rank < n {
            return Err(Error::Singular);
        }
        let mut out = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, ech.get(i, n + j));
            }
        }
        Ok(out)
    }
}

/// ᵗA = A^{(Q)} with entries in F_{Q²}, for Q = q^level (level in {1, 2}).
pub fn is_hermitian(ctx: &FieldCtx, a: &Mat, level: u32) -> bool {
    if !a.is_square() {
        return false;
    }
    let subfield = 2 * level;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if !ctx.in_subfield(x, subfield) {
                return false;
            }
            if a.get(j, i) != ctx.frob(x, level) {
                return false;
            }
        }
    }
    true
}

/// The Hermitian form h(u, v) = ᵗu A v^{(Q)}, linear in u.
fn herm_form(ctx: &FieldCtx, a: &Mat, u: &[Fe], v: &[Fe], level: u32) -> Fe {
    let n = a.rows();
    let mut acc = Fe::ZERO;
    for i in 0..n {
        if u[i].is_zero() {
            continue;
        }
        let mut row = Fe::ZERO;
        for j in 0..n {
            row = ctx.add(row, ctx.mul(a.get(i, j), ctx.frob(v[j], level)));
        }
        acc = ctx.add(acc, ctx.mul(u[i], row));
    }
    acc
}

/// Constructive decomposition A = ᵗB B^{(Q)} for invertible Hermitian A
/// with respect to Q = q^level; B has entries in F_{Q²}.
///
/// Orthonormalizes a basis under h(u, v) = ᵗu A v^{(Q)}: find an
/// anisotropic vector among the working basis (single vectors first, then
/// pairs w_i + α w_j under canonical order), rescale it to norm 1 via
/// solve_norm, project the rest onto its orthogonal complement, repeat.
/// The orthonormal columns form P with ᵗP A P^{(Q)} = I, so B = P⁻¹.
pub fn hermitian_decompose(ctx: &FieldCtx, a: &Mat, level: u32) -> Result<Mat> {
    if !a.is_square() {
        return Err(Error::Dimension("decomposition of non-square matrix".into()));
    }
    if !is_hermitian(ctx, a, level) {
        return Err(Error::NotHermitian);
    }
    if a.det(ctx)?.is_zero() {
        return Err(Error::Singular);
    }
    let n = a.rows();
    let subfield = 2 * level;
    let mut basis: Vec<Vec<Fe>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }).collect())
        .collect();
    let mut ortho: Vec<Vec<Fe>> = Vec::with_capacity(n);
    while !basis.is_empty() {
        let v = find_anisotropic(ctx, a, &basis, level)?;
        let s = herm_form(ctx, a, &v, &v, level);
        // s lands in F_Q since A is Hermitian; scale v so its norm is 1.
        let xi = ctx.solve_norm(ctx.inv(s)?, level)?;
        let v: Vec<Fe> = v.iter().map(|&x| ctx.mul(xi, x)).collect();
        // One-sided correction suffices: h(v, w - h(w,v) v) = 0 follows
        // from h(v, w) = h(w, v)^Q.
        let mut next = Vec::with_capacity(basis.len().saturating_sub(1));
        for w in basis {
            let c = herm_form(ctx, a, &w, &v, level);
            let w2: Vec<Fe> = w
                .iter()
                .zip(&v)
                .map(|(&wi, &vi)| ctx.sub(wi, ctx.mul(c, vi)))
                .collect();
            if w2.iter().any(|x| !x.is_zero()) {
                next.push(w2);
            }
        }
        // Keep the complement linearly independent.
        next = independent_subset(ctx, &next);
        ortho.push(v);
        basis = next;
    }
    if ortho.len() != n {
        return Err(Error::Singular);
    }
    let p = Mat::from_cols(&ortho);
    let b = p.inv(ctx)?;
    debug_assert!(b.entries().iter().all(|&x| ctx.in_subfield(x, subfield)));
    Ok(b)
}

fn find_anisotropic(ctx: &FieldCtx, a: &Mat, basis: &[Vec<Fe>], level: u32) -> Result<Vec<Fe>> {
    for v in basis {
        if !herm_form(ctx, a, v, v, level).is_zero() {
            return Ok(v.clone());
        }
    }
    let subfield = 2 * level;
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j {
                continue;
            }
            for alpha in ctx.subfield_elements(subfield)? {
                if alpha.is_zero() {
                    continue;
                }
                let v: Vec<Fe> = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(&x, &y)| ctx.add(x, ctx.mul(alpha, y)))
                    .collect();
                if !herm_form(ctx, a, &v, &v, level).is_zero() {
                    return Ok(v);
                }
            }
        }
    }
    // Unreachable for nondegenerate restrictions.
    Err(Error::Singular)
}

fn independent_subset(ctx: &FieldCtx, vecs: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let mut kept: Vec<Vec<Fe>> = vec![];
    for v in vecs {
        let mut cand = kept.clone();
        cand.push(v.clone());
        let m = Mat::from_cols(&cand);
        if m.rank(ctx) == cand.len() {
            kept = cand;
        }
    }
    kept
}
