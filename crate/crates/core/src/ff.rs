//! Finite fields F_{p^m} presented as F_p[X]/(f), with a chain of subfield
//! embeddings F_p ⊂ F_q ⊂ ... ⊂ F_{p^m}.
//!
//! Every context is a single extension of the prime field; intermediate
//! levels are only remembered through the parent link, which stores the
//! image of the parent's polynomial root. One of the levels on the chain is
//! marked as the base field F_q; `frobenius` and all the linear algebra are
//! relative to that level.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fpoly;
use crate::linalg::CoordinateSystem;
use crate::nt::{self, Factorization};

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u64 = 1 << 16;

/// Handle to an immutable field presentation. Cloning is cheap.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

struct Inner {
    p: u32,
    degree: u32,
    /// Monic defining polynomial, little-endian, length `degree + 1`.
    modulus: Vec<u32>,
    /// Nonzero `(j, p - f_j)` terms of the modulus below the leading one.
    reduction: Vec<(usize, u64)>,
    q_degree: u32,
    parent: Option<Parent>,
    generator: Vec<u32>,
    group_order: BigUint,
    order_factors: Factorization,
    coordinates: OnceLock<CoordinateSystem>,
}

struct Parent {
    ctx: FieldCtx,
    /// Images of `x^i` for `i < parent.degree`, where `x` is the parent's
    /// polynomial root.
    root_powers: Vec<Vec<u32>>,
}

impl FieldCtx {
    /// The prime field F_p, presented by the degree-one polynomial `X`, with
    /// the smallest primitive root as generator.
    pub fn prime_field(p: u64) -> Result<Self> {
        if !nt::is_prime_u64(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::InvalidInput(format!(
                "characteristic {p} exceeds {MAX_CHARACTERISTIC}"
            )));
        }
        let p32 = p as u32;
        let order_factors = nt::factor(&BigUint::from(p - 1))?;
        let group_order = BigUint::from(p - 1);
        let generator = (1..p32)
            .find(|&g| {
                order_factors.keys().all(|r| {
                    let e = (&group_order / r).to_u64().unwrap();
                    fpoly::powmod_p(g, e, p32) != 1
                })
            })
            .expect("every prime field has a primitive root");
        Ok(Self::assemble(
            p32,
            vec![0, 1],
            1,
            None,
            vec![generator],
            group_order,
            order_factors,
        ))
    }

    /// Degree-`degree` extension of `base`. When `defining_poly` is `None`
    /// the lexicographically smallest monic irreducible polynomial over F_p
    /// of the total degree is used. A supplied polynomial is always over
    /// F_p and of the total degree `base.degree() * degree`.
    pub fn extend(&self, degree: u32, defining_poly: Option<&[u32]>) -> Result<Self> {
        self.extend_with(degree, defining_poly, None)
    }

    /// Like [`FieldCtx::extend`], optionally pinning the generator instead of
    /// searching for one. A pinned generator must be primitive.
    pub fn extend_with(
        &self,
        degree: u32,
        defining_poly: Option<&[u32]>,
        generator: Option<&[u32]>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        let p = self.0.p;
        let m = self.0.degree * degree;
        let modulus = match defining_poly {
            Some(poly) => {
                let mut poly = poly.to_vec();
                fpoly::trim(&mut poly);
                if poly.len() != m as usize + 1 {
                    return Err(Error::InvalidInput(format!(
                        "defining polynomial must have degree {m}"
                    )));
                }
                if poly[m as usize] != 1 {
                    return Err(Error::NotMonic);
                }
                if poly.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidInput(format!(
                        "coefficients must lie in [0, {p})"
                    )));
                }
                if !fpoly::is_irreducible(&poly, p) {
                    return Err(Error::ReduciblePolynomial(poly));
                }
                poly
            }
            None if degree == 1 => self.0.modulus.clone(),
            None => fpoly::smallest_irreducible(m as usize, p),
        };

        let order_factors = if degree == 1 && defining_poly.is_none() {
            self.0.order_factors.clone()
        } else {
            nt::factor_pow_minus_one(p as u64, m)?
        };
        let group_order = BigUint::from(p).pow(m) - BigUint::one();
        // Placeholder generator; fixed up below once arithmetic is available.
        let mut ctx = Self::assemble(
            p,
            modulus,
            self.0.q_degree,
            None,
            vec![0; m as usize],
            group_order,
            order_factors,
        );

        let root_powers = if self.0.degree == 1 {
            vec![ctx.one_raw()]
        } else if degree == 1 && ctx.0.modulus == self.0.modulus {
            (0..m as usize).map(|i| unit_vector(m as usize, i)).collect()
        } else {
            let parent_poly: Vec<Vec<u32>> = self
                .0
                .modulus
                .iter()
                .map(|&c| ctx.constant_raw(c))
                .collect();
            let mut roots = split_into_roots(&ctx, parent_poly);
            roots.sort_by(|a, b| ctx.cmp_enumeration(a, b));
            let root = roots.into_iter().next().ok_or_else(|| {
                Error::IncompatibleFields("parent polynomial has no root in extension".into())
            })?;
            let mut powers = Vec::with_capacity(self.0.degree as usize);
            let mut acc = ctx.one_raw();
            for _ in 0..self.0.degree {
                powers.push(acc.clone());
                acc = ctx.mul_raw(&acc, &root);
            }
            powers
        };

        let generator = match generator {
            Some(g) => {
                let g = ctx.pad(g)?;
                if !ctx.is_primitive_raw(&g) {
                    return Err(Error::InvalidInput(format!(
                        "designated generator {g:?} is not primitive"
                    )));
                }
                g
            }
            None if degree == 1 && ctx.0.modulus == self.0.modulus => self.0.generator.clone(),
            None => ctx.find_generator(),
        };

        let inner = Arc::get_mut(&mut ctx.0).expect("context not yet shared");
        inner.generator = generator;
        inner.parent = Some(Parent {
            ctx: self.clone(),
            root_powers,
        });
        Ok(ctx)
    }

    /// Copy of this context that designates itself as the base field F_q.
    pub fn mark_base_level(&self) -> Self {
        let inner = &self.0;
        Self(Arc::new(Inner {
            p: inner.p,
            degree: inner.degree,
            modulus: inner.modulus.clone(),
            reduction: inner.reduction.clone(),
            q_degree: inner.degree,
            parent: inner.parent.as_ref().map(|par| Parent {
                ctx: par.ctx.clone(),
                root_powers: par.root_powers.clone(),
            }),
            generator: inner.generator.clone(),
            group_order: inner.group_order.clone(),
            order_factors: inner.order_factors.clone(),
            coordinates: OnceLock::new(),
        }))
    }

    fn assemble(
        p: u32,
        modulus: Vec<u32>,
        q_degree: u32,
        parent: Option<Parent>,
        generator: Vec<u32>,
        group_order: BigUint,
        order_factors: Factorization,
    ) -> Self {
        let degree = (modulus.len() - 1) as u32;
        let reduction = modulus[..degree as usize]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, (p - c) as u64))
            .collect();
        Self(Arc::new(Inner {
            p,
            degree,
            modulus,
            reduction,
            q_degree,
            parent,
            generator,
            group_order,
            order_factors,
            coordinates: OnceLock::new(),
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn defining_poly(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Degree of the designated base field F_q over F_p.
    pub fn q_degree(&self) -> u32 {
        self.0.q_degree
    }

    /// Order of the designated base field.
    pub fn q(&self) -> u64 {
        (self.0.p as u64).pow(self.0.q_degree)
    }

    /// Degree over the designated base field F_q.
    pub fn degree_over_q(&self) -> u32 {
        self.0.degree / self.0.q_degree
    }

    /// `p^m`.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.0.p).pow(self.0.degree)
    }

    /// `p^m - 1`, the order of the multiplicative group.
    pub fn group_order(&self) -> &BigUint {
        &self.0.group_order
    }

    pub fn group_order_factors(&self) -> &Factorization {
        &self.0.order_factors
    }

    pub fn parent(&self) -> Option<&FieldCtx> {
        self.0.parent.as_ref().map(|p| &p.ctx)
    }

    /// The context on this chain marked as F_q.
    pub fn base_level(&self) -> FieldCtx {
        let mut cur = self.clone();
        while cur.0.degree != self.0.q_degree {
            cur = cur.parent().expect("base level lies on the chain").clone();
        }
        cur
    }

    /// Whether `other` is this context or one of its ancestors.
    pub fn is_on_chain(&self, other: &FieldCtx) -> bool {
        self.chain_to(other).is_some()
    }

    /// Ancestors from `self` (inclusive) up to `ancestor` (exclusive),
    /// nearest first.
    fn chain_to(&self, ancestor: &FieldCtx) -> Option<Vec<FieldCtx>> {
        let mut path = Vec::new();
        let mut cur = self.clone();
        loop {
            if cur == *ancestor {
                return Some(path);
            }
            path.push(cur.clone());
            cur = cur.parent()?.clone();
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::new_unchecked(self.clone(), vec![0; self.0.degree as usize])
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::new_unchecked(self.clone(), self.one_raw())
    }

    /// The element with the given polynomial-basis coefficients (constant
    /// term first). Shorter vectors are zero-padded.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        Ok(FieldElement::new_unchecked(self.clone(), self.pad(coeffs)?))
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, value: i64) -> FieldElement {
        let p = self.0.p as i64;
        let c = value.rem_euclid(p) as u32;
        FieldElement::new_unchecked(self.clone(), self.constant_raw(c))
    }

    /// Class of `X`, the root of the defining polynomial.
    pub fn root(&self) -> FieldElement {
        if self.0.degree == 1 {
            return self.zero();
        }
        let mut c = vec![0; self.0.degree as usize];
        c[1] = 1;
        FieldElement::new_unchecked(self.clone(), c)
    }

    /// The designated primitive element.
    pub fn generator(&self) -> FieldElement {
        FieldElement::new_unchecked(self.clone(), self.0.generator.clone())
    }

    /// Element whose base-`p` digits (constant coefficient least
    /// significant) spell `index`. This fixes the enumeration order.
    pub fn element_from_index(&self, index: u64) -> FieldElement {
        let p = self.0.p as u64;
        let mut t = index;
        let coeffs = (0..self.0.degree)
            .map(|_| {
                let c = (t % p) as u32;
                t /= p;
                c
            })
            .collect();
        FieldElement::new_unchecked(self.clone(), coeffs)
    }

    /// All elements in enumeration order; `None` when there are more than `cap`.
    pub fn elements(&self, cap: u64) -> Option<impl Iterator<Item = FieldElement> + '_> {
        let size = self.size().to_u64().filter(|&s| s <= cap)?;
        Some((0..size).map(move |i| self.element_from_index(i)))
    }

    pub(crate) fn coordinates(&self) -> &CoordinateSystem {
        self.0
            .coordinates
            .get_or_init(|| CoordinateSystem::new(self))
    }

    pub(crate) fn pad(&self, coeffs: &[u32]) -> Result<Vec<u32>> {
        let m = self.0.degree as usize;
        let mut v = coeffs.to_vec();
        fpoly::trim(&mut v);
        if v.len() > m {
            return Err(Error::InvalidInput(format!(
                "coefficient vector longer than field degree {m}"
            )));
        }
        if v.iter().any(|&c| c >= self.0.p) {
            return Err(Error::InvalidInput(format!(
                "coefficients must lie in [0, {})",
                self.0.p
            )));
        }
        v.resize(m, 0);
        Ok(v)
    }

    // ---- raw arithmetic on coefficient vectors of length `degree` ----

    pub(crate) fn one_raw(&self) -> Vec<u32> {
        self.constant_raw(1)
    }

    pub(crate) fn constant_raw(&self, c: u32) -> Vec<u32> {
        let mut v = vec![0; self.0.degree as usize];
        v[0] = c % self.0.p;
        v
    }

    pub(crate) fn add_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.0.p;
        a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect()
    }

    pub(crate) fn sub_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.0.p;
        a.iter()
            .zip(b)
            .map(|(&x, &y)| if x >= y { x - y } else { x + p - y })
            .collect()
    }

    pub(crate) fn neg_raw(&self, a: &[u32]) -> Vec<u32> {
        let p = self.0.p;
        a.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect()
    }

    pub(crate) fn mul_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = self.0.degree as usize;
        let p = self.0.p as u64;
        if m == 1 {
            return vec![((a[0] as u64 * b[0] as u64) % p) as u32];
        }
        let mut acc = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for (slot, &y) in acc[i..i + m].iter_mut().zip(b) {
                *slot += x * y as u64;
            }
        }
        for top in (m..2 * m - 1).rev() {
            let c = acc[top] % p;
            if c == 0 {
                continue;
            }
            let shift = top - m;
            for &(j, neg_fj) in &self.0.reduction {
                acc[shift + j] += c * neg_fj;
            }
        }
        acc[..m].iter().map(|&c| (c % p) as u32).collect()
    }

    pub(crate) fn inv_raw(&self, a: &[u32]) -> Option<Vec<u32>> {
        if a.iter().all(|&c| c == 0) {
            return None;
        }
        if self.0.degree == 1 {
            return Some(vec![fpoly::inv_mod_p(a[0], self.0.p)]);
        }
        let mut inv = fpoly::inv_mod_poly(a, &self.0.modulus, self.0.p)?;
        inv.resize(self.0.degree as usize, 0);
        Some(inv)
    }

    pub(crate) fn pow_raw(&self, a: &[u32], e: &BigUint) -> Vec<u32> {
        let mut result = self.one_raw();
        for bit in (0..e.bits()).rev() {
            result = self.mul_raw(&result, &result);
            if e.bit(bit) {
                result = self.mul_raw(&result, a);
            }
        }
        result
    }

    pub(crate) fn pow_u64_raw(&self, a: &[u32], e: u64) -> Vec<u32> {
        let mut result = self.one_raw();
        for bit in (0..64 - e.leading_zeros()).rev() {
            result = self.mul_raw(&result, &result);
            if (e >> bit) & 1 == 1 {
                result = self.mul_raw(&result, a);
            }
        }
        result
    }

    /// `a^{p^times}`.
    pub(crate) fn frobenius_p_raw(&self, a: &[u32], times: u32) -> Vec<u32> {
        let times = times % self.0.degree;
        let mut r = a.to_vec();
        if self.0.degree == 1 {
            return r;
        }
        for _ in 0..times {
            r = self.pow_u64_raw(&r, self.0.p as u64);
        }
        r
    }

    /// `a^{q^i}` for the designated base field order `q`.
    pub(crate) fn frobenius_raw(&self, a: &[u32], i: u64) -> Vec<u32> {
        let times = ((self.0.q_degree as u64 * i) % self.0.degree as u64) as u32;
        self.frobenius_p_raw(a, times)
    }

    pub(crate) fn is_zero_raw(a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn is_primitive_raw(&self, g: &[u32]) -> bool {
        if Self::is_zero_raw(g) {
            return false;
        }
        let one = self.one_raw();
        self.0.order_factors.keys().all(|r| {
            let e = &self.0.group_order / r;
            self.pow_raw(g, &e) != one
        }) && self.pow_raw(g, &self.0.group_order) == one
    }

    fn find_generator(&self) -> Vec<u32> {
        (1u64..)
            .map(|i| self.element_from_index(i).coeffs)
            .find(|g| self.is_primitive_raw(g))
            .expect("the multiplicative group is cyclic")
    }

    /// Comparison in the fixed enumeration order.
    pub(crate) fn cmp_enumeration(&self, a: &[u32], b: &[u32]) -> std::cmp::Ordering {
        a.iter().rev().cmp(b.iter().rev())
    }

    /// Image of a parent element (coefficients in the parent presentation).
    fn embed_from_parent(&self, coeffs: &[u32]) -> Vec<u32> {
        let parent = self.0.parent.as_ref().expect("context has a parent");
        let m = self.0.degree as usize;
        let p = self.0.p as u64;
        let mut acc = vec![0u64; m];
        for (&c, power) in coeffs.iter().zip(&parent.root_powers) {
            if c == 0 {
                continue;
            }
            for (slot, &v) in acc.iter_mut().zip(power) {
                *slot = (*slot + c as u64 * v as u64) % p;
            }
        }
        acc.into_iter().map(|c| c as u32).collect()
    }

    /// Structural equality of presentations, ignoring which level is marked
    /// as F_q.
    fn same_presentation(&self, other: &FieldCtx) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        let (a, b) = (&self.0, &other.0);
        a.p == b.p
            && a.modulus == b.modulus
            && a.generator == b.generator
            && match (&a.parent, &b.parent) {
                (None, None) => true,
                (Some(x), Some(y)) => x.root_powers == y.root_powers && x.ctx == y.ctx,
                _ => false,
            }
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.same_presentation(other)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) [q = {}^{}, f = {:?}]",
            self.0.p, self.0.degree, self.0.p, self.0.q_degree, self.0.modulus
        )
    }
}

fn unit_vector(m: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}

// ---- polynomials over the field, used only to locate subfield roots ----

type ElemPoly = Vec<Vec<u32>>;

fn ep_trim(a: &mut ElemPoly) {
    while a.last().is_some_and(|c| FieldCtx::is_zero_raw(c)) {
        a.pop();
    }
}

fn ep_mul(ctx: &FieldCtx, a: &ElemPoly, b: &ElemPoly) -> ElemPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let m = ctx.degree() as usize;
    let mut out = vec![vec![0; m]; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if FieldCtx::is_zero_raw(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = ctx.mul_raw(x, y);
            out[i + j] = ctx.add_raw(&out[i + j], &t);
        }
    }
    ep_trim(&mut out);
    out
}

fn ep_divrem(ctx: &FieldCtx, a: &ElemPoly, b: &ElemPoly) -> (ElemPoly, ElemPoly) {
    let db = b.len() - 1;
    let lead_inv = ctx.inv_raw(&b[db]).expect("trimmed divisor");
    let mut r = a.clone();
    ep_trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let m = ctx.degree() as usize;
    let mut q = vec![vec![0; m]; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = ctx.mul_raw(&r[top], &lead_inv);
        let shift = top - db;
        for (j, bj) in b.iter().enumerate() {
            let t = ctx.mul_raw(&c, bj);
            r[shift + j] = ctx.sub_raw(&r[shift + j], &t);
        }
        q[shift] = c;
        ep_trim(&mut r);
    }
    ep_trim(&mut q);
    (q, r)
}

fn ep_monic(ctx: &FieldCtx, a: ElemPoly) -> ElemPoly {
    match a.last() {
        None => a,
        Some(lead) => {
            let inv = ctx.inv_raw(lead).expect("trimmed");
            a.iter().map(|c| ctx.mul_raw(c, &inv)).collect()
        }
    }
}

fn ep_gcd(ctx: &FieldCtx, a: &ElemPoly, b: &ElemPoly) -> ElemPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    ep_trim(&mut a);
    ep_trim(&mut b);
    while !b.is_empty() {
        let (_, r) = ep_divrem(ctx, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    ep_monic(ctx, a)
}

fn ep_mulmod(ctx: &FieldCtx, a: &ElemPoly, b: &ElemPoly, f: &ElemPoly) -> ElemPoly {
    ep_divrem(ctx, &ep_mul(ctx, a, b), f).1
}

/// All roots of a monic polynomial that splits into distinct linear factors
/// over `ctx` (equal-degree splitting, Cantor-Zassenhaus style). The
/// splitting elements follow the enumeration order, so the result does not
/// depend on any randomness.
fn split_into_roots(ctx: &FieldCtx, f: ElemPoly) -> Vec<Vec<u32>> {
    let mut f = f;
    ep_trim(&mut f);
    let f = ep_monic(ctx, f);
    let mut pending = vec![f];
    let mut roots = Vec::new();
    let m = ctx.degree() as usize;
    let p = ctx.characteristic();
    let half = if p == 2 {
        BigUint::zero()
    } else {
        (ctx.size() - BigUint::one()) >> 1
    };
    let mut delta_index = 1u64;
    while let Some(g) = pending.pop() {
        match g.len() {
            0 | 1 => continue,
            2 => {
                roots.push(ctx.neg_raw(&g[0]));
                continue;
            }
            _ => {}
        }
        loop {
            let delta = ctx.element_from_index(delta_index).coeffs;
            delta_index += 1;
            let h = if p == 2 {
                // Trace of delta * X.
                let mut term = ep_divrem(ctx, &vec![vec![0; m], delta], &g).1;
                let mut sum = term.clone();
                for _ in 1..m {
                    term = ep_mulmod(ctx, &term, &term, &g);
                    sum = ep_add(ctx, &sum, &term);
                }
                sum
            } else {
                let base = vec![delta, ctx.one_raw()];
                let mut acc = vec![ctx.one_raw()];
                for bit in (0..half.bits()).rev() {
                    acc = ep_mulmod(ctx, &acc, &acc, &g);
                    if half.bit(bit) {
                        acc = ep_mulmod(ctx, &acc, &base, &g);
                    }
                }
                ep_add(ctx, &acc, &vec![ctx.neg_raw(&ctx.one_raw())])
            };
            let d = ep_gcd(ctx, &h, &g);
            if d.len() > 1 && d.len() < g.len() {
                let (rest, _) = ep_divrem(ctx, &g, &d);
                pending.push(d);
                pending.push(ep_monic(ctx, rest));
                break;
            }
        }
    }
    roots
}

fn ep_add(ctx: &FieldCtx, a: &ElemPoly, b: &ElemPoly) -> ElemPoly {
    let m = ctx.degree() as usize;
    let zero = vec![0; m];
    let n = a.len().max(b.len());
    let mut out: ElemPoly = (0..n)
        .map(|i| ctx.add_raw(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    ep_trim(&mut out);
    out
}

/// An element of a specific [`FieldCtx`], stored by its polynomial-basis
/// coefficients. Arithmetic operators panic when the operands live in
/// different contexts; use [`FieldElement::embed`] to move elements up a chain.
#[derive(Clone)]
pub struct FieldElement {
    ctx: FieldCtx,
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub(crate) fn new_unchecked(ctx: FieldCtx, coeffs: Vec<u32>) -> Self {
        debug_assert_eq!(coeffs.len(), ctx.degree() as usize);
        Self { ctx, coeffs }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        FieldCtx::is_zero_raw(&self.coeffs)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == self.ctx.one_raw()
    }

    /// Index of this element in the fixed enumeration order.
    pub fn enumeration_index(&self) -> BigUint {
        let p = BigUint::from(self.ctx.characteristic());
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &c| acc * &p + BigUint::from(c))
    }

    fn check_same(&self, other: &Self) {
        assert!(
            self.ctx == other.ctx,
            "field elements from different contexts: {:?} vs {:?}",
            self.ctx,
            other.ctx
        );
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::IncompatibleFields(format!(
                "{:?} vs {:?}",
                self.ctx, other.ctx
            )));
        }
        Ok(self * other)
    }

    pub fn inv(&self) -> Result<Self> {
        let inv = self.ctx.inv_raw(&self.coeffs).ok_or(Error::DivisionByZero)?;
        Ok(Self::new_unchecked(self.ctx.clone(), inv))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: &BigUint) -> Self {
        Self::new_unchecked(self.ctx.clone(), self.ctx.pow_raw(&self.coeffs, e))
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        Self::new_unchecked(self.ctx.clone(), self.ctx.pow_u64_raw(&self.coeffs, e))
    }

    /// `self^{q^i}` where `q` is the order of the designated base field.
    pub fn frobenius(&self, i: u64) -> Self {
        Self::new_unchecked(self.ctx.clone(), self.ctx.frobenius_raw(&self.coeffs, i))
    }

    /// Least `t >= 1` with `self^t = 1`, by descent through the prime
    /// factors of `p^m - 1`.
    pub fn multiplicative_order(&self) -> Result<BigUint> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let one = self.ctx.one_raw();
        Ok(nt::order_by_descent(self.ctx.group_order_factors(), |e| {
            self.ctx.pow_raw(&self.coeffs, e) == one
        }))
    }

    /// Image of `self` in `target`, whose parent chain must contain this
    /// element's context.
    pub fn embed(&self, target: &FieldCtx) -> Result<Self> {
        let path = target.chain_to(&self.ctx).ok_or_else(|| {
            Error::IncompatibleFields(format!(
                "{:?} is not a subfield on the chain of {:?}",
                self.ctx, target
            ))
        })?;
        let mut coeffs = self.coeffs.clone();
        for ctx in path.iter().rev() {
            coeffs = ctx.embed_from_parent(&coeffs);
        }
        Ok(Self::new_unchecked(target.clone(), coeffs))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ctx == other.ctx
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.check_same(rhs);
                FieldElement::new_unchecked(self.ctx.clone(), self.ctx.$raw(&self.coeffs, &rhs.coeffs))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, add_raw);
binop!(Sub, sub, sub_raw);
binop!(Mul, mul, mul_raw);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new_unchecked(self.ctx.clone(), self.ctx.neg_raw(&self.coeffs))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
