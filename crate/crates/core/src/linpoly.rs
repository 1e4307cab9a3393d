//! Linearized polynomials `Σ a_i X^{q^i}` over a field context, viewed as
//! elements `Σ a_i Y^i` of the skew polynomial ring where `Y a = a^q Y`.
//! Composition of linearized polynomials is the ring product.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldElement};
use crate::linalg::matrix_of_linear_map;
use crate::nt;
use crate::subspace::Subspace;

/// Default iteration cap for [`LinearizedPoly::splitting_degree`].
pub const DEFAULT_SPLITTING_CAP: u64 = 1_000_000;

/// Default cap on the dimension handed to [`annihilator`].
pub const DEFAULT_ANNIHILATOR_CAP: usize = 20;

#[derive(Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    ctx: FieldCtx,
    /// `coeffs[i]` multiplies `X^{q^i}`; no trailing zeros.
    coeffs: Vec<FieldElement>,
}

/// Quotient and remainder of right division: `f = quotient ∘ divisor + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewQuotRem {
    pub quotient: LinearizedPoly,
    pub remainder: LinearizedPoly,
}

impl LinearizedPoly {
    pub fn new(ctx: &FieldCtx, coeffs: Vec<FieldElement>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.ctx() != ctx) {
            return Err(Error::IncompatibleFields(format!(
                "coefficient from {:?}, expected {:?}",
                bad.ctx(),
                ctx
            )));
        }
        Ok(Self::from_trusted(ctx.clone(), coeffs))
    }

    fn from_trusted(ctx: FieldCtx, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Self { ctx, coeffs }
    }

    /// From sparse `(i, a_i)` terms; repeated indices are summed.
    pub fn from_terms(ctx: &FieldCtx, terms: &[(usize, FieldElement)]) -> Result<Self> {
        let len = terms.iter().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut coeffs = vec![ctx.zero(); len];
        for (i, c) in terms {
            if c.ctx() != ctx {
                return Err(Error::IncompatibleFields("term coefficient".into()));
            }
            coeffs[*i] = &coeffs[*i] + c;
        }
        Ok(Self::from_trusted(ctx.clone(), coeffs))
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Self::from_trusted(ctx.clone(), Vec::new())
    }

    /// The identity polynomial `X`.
    pub fn x(ctx: &FieldCtx) -> Self {
        Self::from_trusted(ctx.clone(), vec![ctx.one()])
    }

    /// `c X^{q^i}`.
    pub fn monomial(i: usize, c: FieldElement) -> Self {
        let ctx = c.ctx().clone();
        let mut coeffs = vec![ctx.zero(); i];
        coeffs.push(c);
        Self::from_trusted(ctx, coeffs)
    }

    /// `X^{q^k} + a_l X^{q^l} + a_0 X`.
    pub fn trinomial(k: usize, l: usize, a_l: &FieldElement, a0: &FieldElement) -> Result<Self> {
        if l == 0 || l >= k {
            return Err(Error::InvalidInput(format!("need 1 <= l < k, got l={l}, k={k}")));
        }
        let ctx = a0.ctx();
        Self::from_terms(
            ctx,
            &[(k, ctx.one()), (l, a_l.clone()), (0, a0.clone())],
        )
    }

    /// `X^{q^k} - a_0 X`.
    pub fn binomial(k: usize, a0: &FieldElement) -> Self {
        let ctx = a0.ctx();
        let mut coeffs = vec![ctx.zero(); k + 1];
        coeffs[k] = ctx.one();
        coeffs[0] = &coeffs[0] - a0;
        Self::from_trusted(ctx.clone(), coeffs)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the leading term, `None` for the zero polynomial.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(FieldElement::is_one)
    }

    /// Same polynomial with coefficients moved into `target`.
    pub fn embed(&self, target: &FieldCtx) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_trusted(target.clone(), coeffs))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Ok(Self::from_trusted(self.ctx.clone(), coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Ok(Self::from_trusted(self.ctx.clone(), coeffs))
    }

    /// `c · f`, i.e. the composition `(cX) ∘ f`.
    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        if c.ctx() != &self.ctx {
            return Err(Error::IncompatibleFields("scalar from another field".into()));
        }
        let coeffs = self.coeffs.iter().map(|a| c * a).collect();
        Ok(Self::from_trusted(self.ctx.clone(), coeffs))
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::IncompatibleFields(format!(
                "{:?} vs {:?}",
                self.ctx, other.ctx
            )));
        }
        Ok(())
    }

    /// `Σ a_i x^{q^i}` with the coefficients embedded into the field of `x`.
    pub fn evaluate(&self, x: &FieldElement) -> Result<FieldElement> {
        let coeffs: Vec<FieldElement> = if x.ctx() == &self.ctx {
            self.coeffs.clone()
        } else {
            self.embed(x.ctx())?.coeffs
        };
        let mut acc = x.ctx().zero();
        let mut power = x.clone();
        for (i, a) in coeffs.iter().enumerate() {
            if i > 0 {
                power = power.frobenius(1);
            }
            if !a.is_zero() {
                acc = &acc + &(a * &power);
            }
        }
        Ok(acc)
    }

    /// Composition `self ∘ other`: coefficient `t` is `Σ_{i+j=t} f_i g_j^{q^i}`.
    pub fn skew_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, g) in other.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(f * &g.frobenius(i as u64));
            }
        }
        Ok(Self::from_trusted(self.ctx.clone(), out))
    }

    /// Right division by `divisor`: `self = quotient ∘ divisor + remainder`
    /// with `q_degree(remainder) < q_degree(divisor)`. Matching a leading
    /// term `c Y^t` against `u Y^s ∘ d` needs `u = c / d_e^{q^s}`, which is
    /// an ordinary field division.
    pub fn skew_divmod(&self, divisor: &Self) -> Result<SkewQuotRem> {
        self.check_ctx(divisor)?;
        let e = divisor.q_degree().ok_or(Error::DivisionByZero)?;
        let lead = &divisor.coeffs[e];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.ctx.zero(); rem.len().saturating_sub(e)];
        while rem.len() > e {
            let t = rem.len() - 1;
            let c = rem[t].clone();
            if !c.is_zero() {
                let s = t - e;
                let u = c.div(&lead.frobenius(s as u64))?;
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[s + j] = &rem[s + j] - &(&u * &d.frobenius(s as u64));
                }
                quot[s] = u;
            }
            rem.pop();
        }
        Ok(SkewQuotRem {
            quotient: Self::from_trusted(self.ctx.clone(), quot),
            remainder: Self::from_trusted(self.ctx.clone(), rem),
        })
    }

    /// A monic linearized polynomial has distinct roots iff its `X`
    /// coefficient is nonzero.
    pub fn is_subspace_polynomial(&self) -> Result<bool> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(!self.coeff(0).is_zero())
    }

    fn monic(&self) -> Result<Self> {
        let lead = self
            .coeffs
            .last()
            .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
        if lead.is_one() {
            return Ok(self.clone());
        }
        self.scale(&lead.inv()?)
    }

    /// Least `N'` such that every root lies in F_{q^{N'}}, i.e. such that
    /// `self` right-divides `X^{q^{N'}} - X`. Walks `Y^t mod self` one step
    /// at a time, never touching F_{q^{N'}} itself.
    pub fn splitting_degree(&self, cap: u64) -> Result<u64> {
        let f = self.monic()?;
        if f.coeff(0).is_zero() {
            return Err(Error::NotSubspacePolynomial);
        }
        let k = f.q_degree().expect("nonzero");
        if k == 0 {
            return Ok(1);
        }
        let ctx = &f.ctx;
        let a: Vec<Vec<u32>> = f.coeffs[..k].iter().map(|c| c.coeffs().to_vec()).collect();
        let zero = vec![0u32; ctx.degree() as usize];
        let mut target = vec![zero.clone(); k];
        target[0] = ctx.one_raw();
        let mut r = target.clone();
        for t in 1..=cap {
            // r <- Y r, then cancel the Y^k term against f.
            let overflow = ctx.frobenius_raw(&r[k - 1], 1);
            for i in (1..k).rev() {
                r[i] = ctx.frobenius_raw(&r[i - 1], 1);
            }
            r[0] = zero.clone();
            if !FieldCtx::is_zero_raw(&overflow) {
                for (ri, ai) in r.iter_mut().zip(&a) {
                    let t = ctx.mul_raw(&overflow, ai);
                    *ri = ctx.sub_raw(ri, &t);
                }
            }
            if r == target {
                return Ok(t);
            }
        }
        Err(Error::CapExceeded {
            what: "splitting degree".into(),
            cap,
            partial: format!("Y^t mod f did not return to 1 for t <= {cap}"),
        })
    }

    /// The F_q-space of roots of `self` inside `ambient`, as the kernel of
    /// `x -> self(x)`.
    pub fn root_space(&self, ambient: &FieldCtx) -> Result<Subspace> {
        if !self.is_subspace_polynomial()? {
            return Err(Error::NotSubspacePolynomial);
        }
        if ambient.q_degree() != self.ctx.q_degree() {
            return Err(Error::IncompatibleFields(
                "ambient and coefficient fields use different base fields".into(),
            ));
        }
        let poly = self.embed(ambient)?;
        let k = poly.q_degree().expect("monic");
        let fq = ambient.base_level();
        let m = matrix_of_linear_map(
            |x| poly.evaluate(x).expect("same context"),
            ambient,
            &fq,
        )?;
        let kernel = m.kernel();
        if kernel.rows() < k {
            let splitting_degree = self.splitting_degree(DEFAULT_SPLITTING_CAP).unwrap_or(0);
            return Err(Error::SplittingFieldNotContained {
                splitting_degree,
                ambient_degree: ambient.degree_over_q() as u64,
            });
        }
        Subspace::from_rref(ambient, kernel)
    }
}

/// Least `N'` with `s (q^k - 1) | q^{N'} - 1`: the splitting degree of
/// `X^{q^k} - a_0 X` when `a_0` has multiplicative order `s`.
pub fn binomial_splitting_degree(q: u64, k: u32, s: u64) -> Result<u64> {
    let (p, e) =
        nt::prime_power(q).ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
    if s == 0 {
        return Err(Error::InvalidInput("order s must be positive".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let s_big = BigUint::from(s);
    let qk_minus_one = nt::factor_pow_minus_one(p, e * k)?;
    let factors = nt::merge(&nt::factor(&s_big)?, &qk_minus_one);
    let modulus = nt::product(&factors);
    let order = nt::multiplicative_order_mod(&BigUint::from(q), &modulus, &factors)?;
    let order = order
        .to_u64()
        .ok_or_else(|| Error::InvalidInput("order does not fit in 64 bits".into()))?;
    debug_assert_eq!(order % k as u64, 0, "k divides the splitting degree");
    Ok(order)
}

/// The subspace polynomial `∏_{v ∈ V} (X - v)`, built one basis vector at a
/// time: `A' = A^q - A(b)^{q-1} A`.
pub fn annihilator(space: &Subspace) -> LinearizedPoly {
    annihilator_with_cap(space, DEFAULT_ANNIHILATOR_CAP).expect("dimension within default cap")
}

pub fn annihilator_with_cap(space: &Subspace, cap: usize) -> Result<LinearizedPoly> {
    if space.dim() > cap {
        return Err(Error::CapExceeded {
            what: "annihilator dimension".into(),
            cap: cap as u64,
            partial: format!("dimension {}", space.dim()),
        });
    }
    let ambient = space.ambient();
    let q_minus_one = ambient.q() - 1;
    let mut a = LinearizedPoly::x(ambient);
    let y = LinearizedPoly::monomial(1, ambient.one());
    for b in space.basis_elements() {
        let v = a.evaluate(&b)?;
        let scaled = a.scale(&v.pow_u64(q_minus_one))?;
        a = y.skew_mul(&a)?.sub(&scaled)?;
    }
    Ok(a)
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.ctx.q();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = match i {
                    0 => "X".to_string(),
                    1 => format!("X^{q}"),
                    i => format!("X^({q}^{i})"),
                };
                if c.is_one() {
                    mono
                } else {
                    format!("({c})*{mono}")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
