//! The field tower F_p ⊂ F_q ⊂ F_{q²} ⊂ F_{q⁴}, realized as a single top
//! field F_{q⁴} with discrete-log tables over a fixed generator. Subfields
//! are carved out by Frobenius fixed-point predicates.
//!
//! Element indices follow the canonical ordering: index 0 is the zero
//! element, index k+1 is g^k for the generator g. Addition uses a Zech
//! logarithm table, so every operation is O(1) after construction.

use crate::{Error, Result};

/// An element of F_{q⁴}, identified by its index in the canonical ordering.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Immutable context for exact arithmetic in F_{q⁴} with q = p^e.
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    size: u32,           // p^{4e}
    order: u32,          // size - 1
    modulus: Vec<u32>,   // monic irreducible of degree 4e, ascending coeffs
    generator: u32,      // packed coefficient vector of g
    #[allow(dead_code)] // read in construction and determinism tests
    exp: Vec<u32>,       // exp[k] = packed value of g^k
    rep_of_packed: Vec<Fe>,
    zech: Vec<Fe>,       // zech[k] = g^k + 1 as an element
    minus_one: Fe,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial arithmetic over F_p used only during table construction.
/// Polynomials are coefficient vectors in ascending degree order.
struct PolyArith {
    p: u32,
}

impl PolyArith {
    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn rem(&self, a: &[u32], m: &[u32]) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        Self::trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = mod_inv(m[dm], self.p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = (r[dr] * lead_inv) % self.p;
            for i in 0..=dm {
                let idx = dr - dm + i;
                r[idx] = (r[idx] + self.p - (c * m[i]) % self.p) % self.p;
            }
            Self::trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    fn mul(&self, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % self.p;
            }
        }
        self.rem(&out, m)
    }

    fn pow(&self, a: &[u32], mut n: u64, m: &[u32]) -> Vec<u32> {
        let mut base = self.rem(a, m);
        let mut acc = vec![1u32];
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base, m);
            }
            base = self.mul(&base, &base, m);
            n >>= 1;
        }
        acc
    }

    fn gcd(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        Self::trim(&mut x);
        Self::trim(&mut y);
        while !y.is_empty() {
            let r = self.rem(&x, &y_monic(&y, self.p));
            x = y;
            y = r;
        }
        x
    }
}

fn y_monic(y: &[u32], p: u32) -> Vec<u32> {
    let inv = mod_inv(*y.last().unwrap(), p);
    y.iter().map(|&c| (c * inv) % p).collect()
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime and small; Fermat.
    let mut r = 1u64;
    let mut b = (a % p) as u64;
    let mut n = p as u64 - 2;
    while n > 0 {
        if n & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        n >>= 1;
    }
    r as u32
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    let mut v = 0u32;
    for &c in coeffs.iter().rev() {
        v = v * p + c;
    }
    v
}

fn unpack(mut v: u32, p: u32, deg: usize) -> Vec<u32> {
    let mut out = vec![0u32; deg];
    for c in out.iter_mut() {
        *c = v % p;
        v /= p;
    }
    out
}

impl FieldCtx {
    /// Builds the arithmetic context for F_{q⁴} with q = p^e.
    ///
    /// The modulus is the lexicographically-first irreducible monic
    /// polynomial of degree 4e over F_p under the packed coefficient
    /// ordering, and the generator is the packed-smallest element of full
    /// multiplicative order, so the element ordering is deterministic
    /// across runs.
    pub fn new(p: u32, e: u32) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = (p as u64).pow(e);
        if e == 0 || q > 9 {
            return Err(Error::FieldTooLarge(q));
        }
        let q = q as u32;
        let deg = (4 * e) as usize;
        let size = p.pow(4 * e);
        let order = size - 1;

        let pa = PolyArith { p };
        let modulus = Self::first_irreducible(&pa, p, deg);

        // Generator: packed-smallest element of multiplicative order size-1.
        let mut generator = 0u32;
        'cand: for v in 2..size {
            let cand = unpack(v, p, deg);
            let mut acc = cand.clone();
            let mut ord = 1u32;
            while acc != vec![1u32] {
                acc = pa.mul(&acc, &cand, &modulus);
                ord += 1;
                if ord > order {
                    continue 'cand;
                }
            }
            if ord == order {
                generator = v;
                break;
            }
        }
        assert!(generator != 0, "multiplicative group has a generator");

        let gen_poly = unpack(generator, p, deg);
        let mut exp = Vec::with_capacity(order as usize);
        let mut rep_of_packed = vec![Fe::ZERO; size as usize];
        let mut acc = vec![1u32];
        for k in 0..order {
            let packed = pack(&acc, p);
            exp.push(packed);
            rep_of_packed[packed as usize] = Fe((k + 1) as u16);
            acc = pa.mul(&acc, &gen_poly, &modulus);
        }
        debug_assert_eq!(acc, vec![1u32], "generator order check");

        // zech[k] = g^k + 1, needed for O(1) addition.
        let mut zech = Vec::with_capacity(order as usize);
        for k in 0..order as usize {
            let mut coeffs = unpack(exp[k], p, deg);
            coeffs[0] = (coeffs[0] + 1) % p;
            zech.push(rep_of_packed[pack(&coeffs, p) as usize]);
        }

        let minus_one = if p == 2 { Fe::ONE } else { Fe((order / 2 + 1) as u16) };

        let ctx = FieldCtx {
            p,
            e,
            q,
            size,
            order,
            modulus,
            generator,
            exp,
            rep_of_packed,
            zech,
            minus_one,
        };
        debug_assert!(ctx.add(ctx.minus_one, Fe::ONE).is_zero());
        Ok(ctx)
    }

    fn first_irreducible(pa: &PolyArith, p: u32, deg: usize) -> Vec<u32> {
        // deg is 4e with q = p^e <= 9, so deg in {4, 8, 12}.
        let prime_factors: Vec<u64> = {
            let mut fs = vec![];
            let mut d = deg as u64;
            let mut f = 2;
            while f * f <= d {
                if d % f == 0 {
                    fs.push(f);
                    while d % f == 0 {
                        d /= f;
                    }
                }
                f += 1;
            }
            if d > 1 {
                fs.push(d);
            }
            fs
        };
        let x = vec![0u32, 1];
        for t in 0..p.pow(deg as u32) {
            let mut f = unpack(t, p, deg);
            f.push(1); // monic
            // x^{p^deg} = x mod f, and x^{p^{deg/l}} - x coprime to f for
            // every prime l | deg.
            let xp = pa.pow(&x, (p as u64).pow(deg as u32), &f);
            if xp != x {
                continue;
            }
            let mut ok = true;
            for &l in &prime_factors {
                let d2 = deg as u64 / l;
                let xp2 = pa.pow(&x, (p as u64).pow(d2 as u32), &f);
                // gcd(x^{p^{deg/l}} - x, f)
                let diff = Self::poly_sub(&xp2, &x, p);
                let g = pa.gcd(&f, &diff);
                if g.len() != 1 {
                    ok = false;
                    break;
                }
            }
            if ok {
                return f;
            }
        }
        unreachable!("an irreducible polynomial of each degree exists");
    }

    fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out = vec![0u32; n];
        for i in 0..n {
            let ai = a.get(i).copied().unwrap_or(0);
            let bi = b.get(i).copied().unwrap_or(0);
            out[i] = (ai + p - bi) % p;
        }
        PolyArith::trim(&mut out);
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// |F_{q⁴}| = p^{4e}.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the multiplicative group.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fe {
        self.rep_of_packed[self.generator as usize]
    }

    pub fn element(&self, rep: u32) -> Result<Fe> {
        if rep < self.size {
            Ok(Fe(rep as u16))
        } else {
            Err(Error::BadElement(rep))
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.size).map(|r| Fe(r as u16))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let i = (a.0 - 1) as u32;
        let j = (b.0 - 1) as u32;
        let d = (j + self.order - i) % self.order;
        let z = self.zech[d as usize];
        if z.is_zero() {
            Fe::ZERO
        } else {
            Fe(((i + (z.0 as u32 - 1)) % self.order) as u16 + 1)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.mul(a, self.minus_one)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        let k = ((a.0 - 1) as u32 + (b.0 - 1) as u32) % self.order;
        Fe(k as u16 + 1)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = (self.order - (a.0 - 1) as u32) % self.order;
        Ok(Fe(k as u16 + 1))
    }

    pub fn pow(&self, a: Fe, n: u64) -> Fe {
        if a.is_zero() {
            return if n == 0 { Fe::ONE } else { Fe::ZERO };
        }
        let k = ((a.0 - 1) as u64 * (n % self.order as u64)) % self.order as u64;
        Fe(k as u16 + 1)
    }

    pub fn minus_one(&self) -> Fe {
        self.minus_one
    }

    /// x ↦ x^{q^i}, a field automorphism fixing F_{q^i} pointwise.
    pub fn frob(&self, a: Fe, i: u32) -> Fe {
        if a.is_zero() {
            return a;
        }
        let qi = (self.q as u64).pow(i) % self.order as u64;
        let k = ((a.0 - 1) as u64 * qi) % self.order as u64;
        Fe(k as u16 + 1)
    }

    /// Whether x lies in F_{q^i}, i.e. x^{q^i} = x.
    pub fn in_subfield(&self, a: Fe, i: u32) -> bool {
        self.frob(a, i) == a
    }

    /// All elements of F_{q^i} for i in {1, 2, 4}, in canonical order.
    pub fn subfield_elements(&self, i: u32) -> Result<Vec<Fe>> {
        if i != 1 && i != 2 && i != 4 {
            return Err(Error::BadSubfield(i));
        }
        Ok(self.elements().filter(|&x| self.in_subfield(x, i)).collect())
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fe) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = (a.0 - 1) as u32;
        let g = gcd(k, self.order);
        Ok(self.order / g)
    }

    /// Canonically-smallest x in F_{Q²} with x^{Q+1} = c, for Q = q^level
    /// with level in {1, 2}. The norm map F_{Q²}^× → F_Q^× is surjective,
    /// so a solution exists for every valid c.
    pub fn solve_norm(&self, c: Fe, level: u32) -> Result<Fe> {
        if level != 1 && level != 2 {
            return Err(Error::BadSubfield(level));
        }
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.in_subfield(c, level) {
            return Err(Error::NotInSubfield);
        }
        let big_q = (self.q as u64).pow(level);
        for x in self.subfield_elements(2 * level)? {
            if !x.is_zero() && self.pow(x, big_q + 1) == c {
                return Ok(x);
            }
        }
        unreachable!("norm is surjective onto the subfield");
    }

    /// Element display in generator-exponent form: "0" or "g^k".
    pub fn fe_to_string(&self, a: Fe) -> String {
        if a.is_zero() {
            "0".into()
        } else {
            format!("g^{}", a.0 - 1)
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f16() -> FieldCtx {
        FieldCtx::new(2, 1).unwrap()
    }

    fn f81() -> FieldCtx {
        FieldCtx::new(3, 1).unwrap()
    }

    #[test]
    fn build_f16_subfields() {
        let ctx = f16();
        assert_eq!(ctx.size(), 16);
        assert_eq!(ctx.subfield_elements(1).unwrap().len(), 2);
        let f4 = ctx.subfield_elements(2).unwrap();
        assert_eq!(f4.len(), 4);
        assert_eq!(f4[0], Fe::ZERO);
        assert_eq!(f4[1], Fe::ONE);
    }

    #[test]
    fn build_f81_subfields() {
        let ctx = f81();
        assert_eq!(ctx.size(), 81);
        let f9: Vec<_> = ctx.elements().filter(|&x| ctx.pow(x, 9) == x).collect();
        assert_eq!(f9.len(), 9);
        assert_eq!(ctx.subfield_elements(2).unwrap().len(), 9);
    }

    #[test]
    fn build_q4_over_f256() {
        let ctx = FieldCtx::new(2, 2).unwrap();
        assert_eq!(ctx.q(), 4);
        assert_eq!(ctx.size(), 256);
        assert_eq!(ctx.subfield_elements(1).unwrap().len(), 4);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldCtx::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(FieldCtx::new(11, 1), Err(Error::FieldTooLarge(11))));
        assert!(matches!(FieldCtx::new(2, 4), Err(Error::FieldTooLarge(16))));
    }

    #[test]
    fn char2_addition() {
        let ctx = f16();
        assert_eq!(ctx.add(Fe::ONE, Fe::ONE), Fe::ZERO);
        for x in ctx.elements() {
            assert_eq!(ctx.add(x, x), Fe::ZERO);
        }
    }

    #[test]
    fn f4_generator_square() {
        // mul(ζ, ζ) = ζ + 1 where ζ generates F₄^× (ζ² + ζ + 1 = 0).
        let ctx = f16();
        let zeta = ctx
            .subfield_elements(2)
            .unwrap()
            .into_iter()
            .find(|&x| ctx.mult_order(x).ok() == Some(3))
            .unwrap();
        assert_eq!(ctx.mul(zeta, zeta), ctx.add(zeta, Fe::ONE));
        assert_eq!(ctx.frob(zeta, 1), ctx.add(zeta, Fe::ONE));
    }

    #[test]
    fn pow_q4_is_identity() {
        for ctx in [f16(), f81(), FieldCtx::new(2, 2).unwrap()] {
            let q4 = (ctx.q() as u64).pow(4);
            for x in ctx.elements() {
                assert_eq!(ctx.pow(x, q4), x);
                assert_eq!(ctx.frob(x, 4), x);
            }
        }
    }

    #[test]
    fn frobenius_is_automorphism() {
        for ctx in [f16(), f81()] {
            for x in ctx.elements() {
                for y in ctx.elements() {
                    assert_eq!(ctx.frob(ctx.mul(x, y), 1), ctx.mul(ctx.frob(x, 1), ctx.frob(y, 1)));
                    assert_eq!(ctx.frob(ctx.add(x, y), 1), ctx.add(ctx.frob(x, 1), ctx.frob(y, 1)));
                }
                assert_eq!(ctx.frob(ctx.frob(x, 1), 1), ctx.frob(x, 2));
            }
        }
    }

    #[test]
    fn frob_fixed_points() {
        let ctx = f16();
        assert_eq!(ctx.frob(Fe::ZERO, 1), Fe::ZERO);
        assert_eq!(ctx.frob(Fe::ONE, 1), Fe::ONE);
    }

    #[test]
    fn field_axioms_exhaustive_f16() {
        let ctx = f16();
        for x in ctx.elements() {
            for y in ctx.elements() {
                assert_eq!(ctx.add(x, y), ctx.add(y, x));
                assert_eq!(ctx.mul(x, y), ctx.mul(y, x));
                for z in ctx.elements() {
                    assert_eq!(ctx.add(ctx.add(x, y), z), ctx.add(x, ctx.add(y, z)));
                    assert_eq!(
                        ctx.mul(x, ctx.add(y, z)),
                        ctx.add(ctx.mul(x, y), ctx.mul(x, z))
                    );
                }
            }
            if !x.is_zero() {
                assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), Fe::ONE);
            }
        }
        assert!(ctx.inv(Fe::ZERO).is_err());
    }

    #[test]
    fn solve_norm_smallest_solution() {
        let ctx = f16();
        // All of {1, ζ, ζ²} cube to 1 in F₄; the canonical smallest is 1.
        assert_eq!(ctx.solve_norm(Fe::ONE, 1).unwrap(), Fe::ONE);
    }

    #[test]
    fn solve_norm_defining_property() {
        for ctx in [f16(), f81()] {
            let q = ctx.q() as u64;
            for c in ctx.subfield_elements(1).unwrap() {
                if c.is_zero() {
                    assert!(ctx.solve_norm(c, 1).is_err());
                    continue;
                }
                let x = ctx.solve_norm(c, 1).unwrap();
                assert_eq!(ctx.pow(x, q + 1), c);
                assert!(ctx.in_subfield(x, 2));
            }
            // Level 2: norm from F_{q⁴} down to F_{q²}.
            for c in ctx.subfield_elements(2).unwrap() {
                if c.is_zero() {
                    continue;
                }
                let x = ctx.solve_norm(c, 2).unwrap();
                assert_eq!(ctx.pow(x, q * q + 1), c);
            }
        }
    }

    #[test]
    fn solve_norm_minus_one_q3() {
        let ctx = f81();
        let m1 = ctx.neg(Fe::ONE);
        let x = ctx.solve_norm(m1, 1).unwrap();
        assert_eq!(ctx.pow(x, 4), m1);
    }

    #[test]
    fn solve_norm_rejects_outside_subfield() {
        let ctx = f16();
        let outside = ctx.elements().find(|&x| !ctx.in_subfield(x, 1) && !x.is_zero()).unwrap();
        assert!(matches!(ctx.solve_norm(outside, 1), Err(Error::NotInSubfield)));
    }

    #[test]
    fn norm_fibers_have_size_q_plus_one() {
        for ctx in [f16(), f81()] {
            let q = ctx.q() as u64;
            for c in ctx.subfield_elements(1).unwrap() {
                if c.is_zero() {
                    continue;
                }
                let fiber = ctx
                    .subfield_elements(2)
                    .unwrap()
                    .into_iter()
                    .filter(|&x| ctx.pow(x, q + 1) == c)
                    .count();
                assert_eq!(fiber as u64, q + 1);
            }
        }
    }

    #[test]
    fn mu_q_plus_one_has_q_plus_one_elements() {
        for ctx in [f16(), f81(), FieldCtx::new(2, 2).unwrap(), FieldCtx::new(5, 1).unwrap()] {
            let q = ctx.q() as u64;
            let mu = ctx.elements().filter(|&x| ctx.pow(x, q + 1) == Fe::ONE).count();
            assert_eq!(mu as u64, q + 1);
        }
    }

    #[test]
    fn subfield_closure_q3() {
        let ctx = f81();
        let f9 = ctx.subfield_elements(2).unwrap();
        for &x in &f9 {
            for &y in &f9 {
                assert!(f9.contains(&ctx.add(x, y)));
                assert!(f9.contains(&ctx.mul(x, y)));
            }
        }
    }

    #[test]
    fn deterministic_construction() {
        let a = f16();
        let b = f16();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.generator(), b.generator());
        assert_eq!(a.exp, b.exp);
    }
}
