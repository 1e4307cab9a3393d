//! Cyclic orbit codes `{αV : α ∈ F_{q^N}^*}` generated by root spaces of
//! trinomial and binomial subspace polynomials, and their certification.
//!
//! Every distance check reduces to a generator against a shift of another
//! generator: `dim(αV_i ∩ βV_j) = dim(V_i ∩ α^{-1}βV_j)`. Shifts by F_q^*
//! fix every F_q-subspace, so `α` runs over the coset representatives
//! `g^t`, `0 <= t < (q^N - 1)/(q - 1)`. Swapping `i` and `j` replaces `α`
//! by `α^{-1}`, so only pairs `i <= j` are visited.

use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldElement};
use crate::linalg::MatrixFq;
use crate::linpoly::{binomial_splitting_degree, LinearizedPoly, DEFAULT_SPLITTING_CAP};
use crate::rng::NonzeroSampler;
use crate::subspace::{Subspace, SubspaceRecord};

/// Default budget for exact certification, in intersection computations.
pub const DEFAULT_PAIR_CAP: u64 = 1_000_000;

/// Parameters of a code: subspace dimension `k`, middle exponent `l`,
/// coefficient field F_{q^n} and ambient degree `N` over F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    /// F_{q^n}, with F_q marked as the base level.
    pub field: FieldCtx,
    pub k: u32,
    pub l: u32,
    #[doc(alias = "N")]
    pub ambient_degree: u32,
    /// `(θ_i, γ_i)` for `X^{q^k} + θ_i X^{q^l} + γ_i X`.
    pub trinomials: Vec<(FieldElement, FieldElement)>,
    /// `a_0` for `X^{q^k} - a_0 X`.
    pub binomial: Option<FieldElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Trinomial,
    Spread,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub space: Subspace,
}

#[derive(Clone, Debug)]
pub struct OrbitCode {
    ambient: FieldCtx,
    k: usize,
    generators: Vec<Generator>,
    claimed_size: BigUint,
    claimed_distance: usize,
    warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Certified,
    Falsified,
    NotFalsified,
}

/// Where a violation was found: `V_i ∩ αV_j` has dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessDetail {
    pub i: usize,
    pub j: usize,
    /// `α` as prime-field digits, constant term first.
    pub alpha: Vec<u32>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertReport {
    pub mode: Mode,
    pub pairs_checked: u64,
    pub max_intersection_dim: usize,
    pub verdict: Verdict,
    pub witness: Option<[SubspaceRecord; 2]>,
    pub wall_ms: u64,
    pub seed: Option<u64>,
    /// Exact mode only: number of distinct subspaces in the union of orbits.
    pub observed_size: Option<u64>,
    /// Exact mode only: `2k - 2·(largest proper intersection)`.
    pub observed_min_distance: Option<usize>,
    pub claimed_size: String,
    pub claimed_distance: usize,
    pub witness_detail: Option<WitnessDetail>,
}

/// `(γ_i/γ_j)^{(q^l-1)/(q-1)} != ((γ_i/γ_j)(θ_i/θ_j)^{-1})^{(q^k-1)/(q-1)}`
/// for the ordered pair `(i, j)`.
pub fn check_union_condition(
    theta_i: &FieldElement,
    gamma_i: &FieldElement,
    theta_j: &FieldElement,
    gamma_j: &FieldElement,
    q: u64,
    l: u32,
    k: u32,
) -> Result<bool> {
    let all = [theta_i, gamma_i, theta_j, gamma_j];
    if all.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroCoefficient);
    }
    let ctx = theta_i.ctx();
    if all.iter().any(|x| x.ctx() != ctx) {
        return Err(Error::IncompatibleFields("coefficients from different fields".into()));
    }
    let q_big = BigUint::from(q);
    let q_minus_one = &q_big - 1u32;
    let e_l = (q_big.pow(l) - 1u32) / &q_minus_one;
    let e_k = (q_big.pow(k) - 1u32) / &q_minus_one;
    let ratio_gamma = gamma_i.div(gamma_j)?;
    let ratio_theta = theta_i.div(theta_j)?;
    let lhs = ratio_gamma.pow(&e_l);
    let rhs = ratio_gamma.div(&ratio_theta)?.pow(&e_k);
    Ok(lhs != rhs)
}

impl CodeSpec {
    /// Shape used by the equal-coefficient corollaries: `θ_i = γ_i`.
    pub fn equal_coefficients(
        field: &FieldCtx,
        k: u32,
        l: u32,
        thetas: &[FieldElement],
        binomial: Option<FieldElement>,
        ambient_degree: u32,
    ) -> Self {
        Self {
            field: field.clone(),
            k,
            l,
            ambient_degree,
            trinomials: thetas.iter().map(|t| (t.clone(), t.clone())).collect(),
            binomial,
        }
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn n(&self) -> u32 {
        self.field.degree_over_q()
    }

    pub fn trinomial_poly(&self, i: usize) -> Result<LinearizedPoly> {
        let (theta, gamma) = &self.trinomials[i];
        LinearizedPoly::trinomial(self.k as usize, self.l as usize, theta, gamma)
    }

    pub fn binomial_poly(&self) -> Option<LinearizedPoly> {
        self.binomial
            .as_ref()
            .map(|a0| LinearizedPoly::binomial(self.k as usize, a0))
    }

    /// Splitting degree of every generator polynomial, trinomials first.
    pub fn splitting_degrees(&self, cap: u64) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        for i in 0..self.trinomials.len() {
            out.push(self.trinomial_poly(i)?.splitting_degree(cap)?);
        }
        if let Some(a0) = &self.binomial {
            let s = a0
                .multiplicative_order()?
                .to_u64()
                .ok_or_else(|| Error::InvalidInput("order of a0 exceeds 64 bits".into()))?;
            out.push(binomial_splitting_degree(self.q(), self.k, s)?);
        }
        Ok(out)
    }

    /// Smallest admissible `N`: the lcm of `n` and all splitting degrees.
    pub fn minimal_ambient_degree(&self, cap: u64) -> Result<u64> {
        Ok(self
            .splitting_degrees(cap)?
            .into_iter()
            .fold(self.n() as u64, |acc, d| acc.lcm(&d)))
    }

    fn validate_shape(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidInput("k must be positive".into()));
        }
        if !self.trinomials.is_empty() {
            if self.l == 0 || self.l >= self.k {
                return Err(Error::InvalidInput(format!(
                    "need 1 <= l < k, got l={}, k={}",
                    self.l, self.k
                )));
            }
            if self.l.gcd(&self.k) != 1 {
                return Err(Error::GcdViolation { l: self.l, k: self.k });
            }
        }
        let coefficients = self
            .trinomials
            .iter()
            .flat_map(|(t, g)| [t, g])
            .chain(self.binomial.iter());
        for c in coefficients {
            if c.ctx() != &self.field {
                return Err(Error::IncompatibleFields(
                    "coefficient outside the coefficient field".into(),
                ));
            }
            if c.is_zero() {
                return Err(Error::ZeroCoefficient);
            }
        }
        if self.ambient_degree == 0 || self.ambient_degree % self.n() != 0 {
            return Err(Error::InvalidInput(format!(
                "N = {} must be a positive multiple of n = {}",
                self.ambient_degree,
                self.n()
            )));
        }
        Ok(())
    }

    fn validate_union_condition(&self) -> Result<()> {
        let r = self.trinomials.len();
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let (ti, gi) = &self.trinomials[i];
                let (tj, gj) = &self.trinomials[j];
                if !check_union_condition(ti, gi, tj, gj, self.q(), self.l, self.k)? {
                    return Err(Error::ConditionViolated { i, j });
                }
            }
        }
        Ok(())
    }

    fn validate_ambient(&self, cap: u64) -> Result<()> {
        for d in self.splitting_degrees(cap)? {
            if self.ambient_degree as u64 % d != 0 {
                return Err(Error::SplittingFieldNotContained {
                    splitting_degree: d,
                    ambient_degree: self.ambient_degree as u64,
                });
            }
        }
        Ok(())
    }

    fn warnings(&self) -> Vec<String> {
        let r = self.trinomials.len() as u64;
        let bound = self.q().saturating_pow(self.n()).saturating_sub(1);
        let mut out = Vec::new();
        if r > bound {
            out.push(format!(
                "r = {r} trinomials exceeds q^n - 1 = {bound}; the equal-coefficient corollaries do not cover this"
            ));
        }
        out
    }

    pub fn ambient(&self) -> Result<FieldCtx> {
        self.field.extend(self.ambient_degree / self.n(), None)
    }
}

fn claimed_parameters(q: u64, k: usize, n_big: u32, kinds: &[GeneratorKind]) -> (BigUint, usize) {
    let q = BigUint::from(q);
    let total = q.pow(n_big) - 1u32;
    let mut size = BigUint::from(0u32);
    for kind in kinds {
        size += match kind {
            GeneratorKind::Trinomial => &total / (&q - 1u32),
            GeneratorKind::Spread => &total / (q.pow(k as u32) - 1u32),
        };
    }
    let pure_spread = kinds.iter().all(|&k| k == GeneratorKind::Spread);
    let distance = if pure_spread { 2 * k } else { 2 * k.saturating_sub(1) };
    (size, distance)
}

/// Union of orbits of trinomial root spaces (single or several generators).
pub fn build_trinomial_code(spec: &CodeSpec) -> Result<OrbitCode> {
    if spec.trinomials.is_empty() || spec.binomial.is_some() {
        return Err(Error::InvalidInput(
            "a trinomial code takes one or more trinomials and no binomial".into(),
        ));
    }
    build_code(spec)
}

/// Orbit of the root space of `X^{q^k} - a_0 X`.
pub fn build_spread_code(spec: &CodeSpec) -> Result<OrbitCode> {
    if !spec.trinomials.is_empty() || spec.binomial.is_none() {
        return Err(Error::InvalidInput(
            "a spread code takes exactly one binomial and no trinomials".into(),
        ));
    }
    build_code(spec)
}

/// Trinomial orbits together with one spread orbit.
pub fn build_combined_code(spec: &CodeSpec) -> Result<OrbitCode> {
    if spec.binomial.is_none() {
        return Err(Error::InvalidInput("a combined code needs a binomial".into()));
    }
    build_code(spec)
}

/// Checks every precondition, then builds whichever shape `spec` has.
pub fn build_code(spec: &CodeSpec) -> Result<OrbitCode> {
    spec.validate_shape()?;
    if spec.trinomials.is_empty() && spec.binomial.is_none() {
        return Err(Error::InvalidInput("no generators".into()));
    }
    spec.validate_union_condition()?;
    spec.validate_ambient(DEFAULT_SPLITTING_CAP)?;
    build_code_unchecked(spec)
}

/// Builds the generator root spaces without checking the union condition or
/// the gcd requirement. Root spaces must still exist in F_{q^N}.
pub fn build_code_unchecked(spec: &CodeSpec) -> Result<OrbitCode> {
    let ambient = spec.ambient()?;
    let mut generators = Vec::new();
    for i in 0..spec.trinomials.len() {
        let space = spec.trinomial_poly(i)?.root_space(&ambient)?;
        generators.push(Generator {
            kind: GeneratorKind::Trinomial,
            space,
        });
    }
    if let Some(poly) = spec.binomial_poly() {
        generators.push(Generator {
            kind: GeneratorKind::Spread,
            space: poly.root_space(&ambient)?,
        });
    }
    let mut code = OrbitCode::from_generators(&ambient, spec.k as usize, generators)?;
    code.warnings = spec.warnings();
    Ok(code)
}

impl OrbitCode {
    /// A code from arbitrary generator subspaces of dimension `k`; claimed
    /// parameters follow the trinomial/spread formulas for the given kinds.
    pub fn from_generators(ambient: &FieldCtx, k: usize, generators: Vec<Generator>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("no generators".into()));
        }
        for g in &generators {
            if g.space.ambient() != ambient {
                return Err(Error::IncompatibleFields("generator in another field".into()));
            }
            if g.space.dim() != k {
                return Err(Error::InvalidInput(format!(
                    "generator of dimension {} in a {k}-dimensional code",
                    g.space.dim()
                )));
            }
        }
        let kinds: Vec<GeneratorKind> = generators.iter().map(|g| g.kind).collect();
        let (claimed_size, claimed_distance) =
            claimed_parameters(ambient.q(), k, ambient.degree_over_q(), &kinds);
        Ok(Self {
            ambient: ambient.clone(),
            k,
            generators,
            claimed_size,
            claimed_distance,
            warnings: Vec::new(),
        })
    }

    pub fn ambient(&self) -> &FieldCtx {
        &self.ambient
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn claimed_size(&self) -> &BigUint {
        &self.claimed_size
    }

    pub fn claimed_distance(&self) -> usize {
        self.claimed_distance
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `(q^N - 1)/(q - 1)`, the number of shifts per generator that can
    /// differ.
    pub fn coset_count(&self) -> BigUint {
        let q = BigUint::from(self.ambient.q());
        (q.pow(self.ambient.degree_over_q()) - 1u32) / (q - 1u32)
    }

    /// Intersection computations an exact certification needs.
    pub fn exact_pair_count(&self) -> BigUint {
        let r = self.generators.len() as u64;
        self.coset_count() * BigUint::from(r * (r + 1) / 2)
    }
}

/// Distinct shifts `αV`, α over the coset representatives `g^t`, in order
/// of first appearance.
pub fn enumerate_orbit(space: &Subspace, cap: u64) -> Result<Vec<Subspace>> {
    let ambient = space.ambient();
    let q = BigUint::from(ambient.q());
    let cosets = (q.pow(ambient.degree_over_q()) - 1u32) / (q - 1u32);
    let count = cosets.to_u64().filter(|&c| c <= cap).ok_or_else(|| Error::CapExceeded {
        what: "orbit enumeration".into(),
        cap,
        partial: format!("{cosets} shifts to visit"),
    })?;
    let g = ambient.generator();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut alpha = ambient.one();
    for _ in 0..count {
        let shifted = space.cyclic_shift(&alpha)?;
        if seen.insert(shifted.clone()) {
            out.push(shifted);
        }
        alpha = &alpha * &g;
    }
    Ok(out)
}

/// Precomputed data for testing `V_i ∩ αV_j` quickly.
struct PairKernel<'a> {
    code: &'a OrbitCode,
    basis_raw: Vec<Vec<Vec<u32>>>,
    pairs: Vec<(usize, usize)>,
}

impl<'a> PairKernel<'a> {
    fn new(code: &'a OrbitCode) -> Self {
        let r = code.generators.len();
        let pairs = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
        let basis_raw = code.generators.iter().map(|g| g.space.basis_raw()).collect();
        Self {
            code,
            basis_raw,
            pairs,
        }
    }

    fn intersection_dim(&self, i: usize, j: usize, alpha: &[u32]) -> usize {
        let vi = &self.code.generators[i].space;
        let vj = &self.code.generators[j].space;
        let shifted: MatrixFq = vj.shifted_rows_raw(&self.basis_raw[j], alpha);
        vj.dim() - vi.basis_matrix().extra_rank(vi.pivots(), &shifted)
    }

    /// Largest allowed `dim(V_i ∩ αV_j)` for a pair that is not a
    /// stabilizer hit.
    fn bound(&self, i: usize, j: usize) -> usize {
        let spread = |x: usize| self.code.generators[x].kind == GeneratorKind::Spread;
        if i == j && spread(i) {
            0
        } else {
            1
        }
    }
}

/// Per-range accumulator for exact certification.
#[derive(Clone, Debug, Default)]
struct ExactAcc {
    pairs_checked: u64,
    max_dim: usize,
    /// Largest intersection among pairs of distinct subspaces.
    max_proper: Option<usize>,
    /// Per generator: coset representatives `t` with `g^t V = V`.
    stabilizer: Vec<u64>,
    /// Pairs `i < j` whose orbits coincide.
    collisions: Vec<(usize, usize)>,
    /// First violation as `(t, i, j, dim)`.
    violation: Option<(u64, usize, usize, usize)>,
}

impl ExactAcc {
    fn new(r: usize) -> Self {
        Self {
            stabilizer: vec![0; r],
            ..Default::default()
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.pairs_checked += other.pairs_checked;
        self.max_dim = self.max_dim.max(other.max_dim);
        self.max_proper = match (self.max_proper, other.max_proper) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        for (s, o) in self.stabilizer.iter_mut().zip(&other.stabilizer) {
            *s += o;
        }
        self.collisions.extend(other.collisions);
        self.collisions.sort_unstable();
        self.collisions.dedup();
        self.violation = match (self.violation, other.violation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

fn ms_since(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn witness_for(
    code: &OrbitCode,
    i: usize,
    j: usize,
    alpha: &FieldElement,
    dim: usize,
) -> (Option<[SubspaceRecord; 2]>, Option<WitnessDetail>) {
    let vi = code.generators[i].space.clone();
    let shifted = code.generators[j]
        .space
        .cyclic_shift(alpha)
        .expect("nonzero shift in the ambient field");
    (
        Some([vi.to_record(), shifted.to_record()]),
        Some(WitnessDetail {
            i,
            j,
            alpha: alpha.coeffs().to_vec(),
            dim,
        }),
    )
}

/// Visits every coset representative against every generator pair.
pub fn certify_exact(code: &OrbitCode, cap: u64) -> Result<CertReport> {
    let start = Instant::now();
    let needed = code.exact_pair_count();
    let cosets = code
        .coset_count()
        .to_u64()
        .filter(|_| needed <= BigUint::from(cap))
        .ok_or_else(|| Error::CapExceeded {
            what: "exact certification".into(),
            cap,
            partial: format!("{needed} intersections needed"),
        })?;
    let kernel = PairKernel::new(code);
    let r = code.generators.len();
    let k = code.k;
    let ambient = &code.ambient;
    let g = ambient.generator();

    const CHUNK: u64 = 256;
    let chunks = cosets.div_ceil(CHUNK);
    let acc = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(cosets);
            let mut acc = ExactAcc::new(r);
            let mut alpha = ambient.pow_u64_raw(g.coeffs(), lo);
            for t in lo..hi {
                for &(i, j) in &kernel.pairs {
                    if i == j && t == 0 {
                        continue;
                    }
                    let dim = kernel.intersection_dim(i, j, &alpha);
                    acc.pairs_checked += 1;
                    if dim == k {
                        if i == j {
                            acc.stabilizer[i] += 1;
                        } else {
                            acc.collisions.push((i, j));
                        }
                    } else {
                        acc.max_proper = Some(acc.max_proper.map_or(dim, |m| m.max(dim)));
                    }
                    let spread_stabilizer = i == j
                        && dim == k
                        && code.generators[i].kind == GeneratorKind::Spread;
                    if spread_stabilizer {
                        continue;
                    }
                    acc.max_dim = acc.max_dim.max(dim);
                    if dim > kernel.bound(i, j) && acc.violation.is_none() {
                        acc.violation = Some((t, i, j, dim));
                    }
                }
                alpha = ambient.mul_raw(&alpha, g.coeffs());
            }
            acc
        })
        .reduce(|| ExactAcc::new(r), ExactAcc::merge);

    // Orbit sizes from stabilizers, then merge coinciding orbits.
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in &acc.collisions {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let q_minus_one = ambient.q() - 1;
    let total = cosets * q_minus_one;
    let mut observed_size = 0u64;
    for i in 0..r {
        if find(&mut parent, i) == i {
            let stab = (acc.stabilizer[i] + 1) * q_minus_one;
            observed_size += total / stab;
        }
    }
    let observed_min_distance = acc.max_proper.map(|m| 2 * k - 2 * m);

    let (verdict, witness, witness_detail) = match acc.violation {
        None => (Verdict::Certified, None, None),
        Some((t, i, j, dim)) => {
            let alpha = g.pow_u64(t);
            let (w, d) = witness_for(code, i, j, &alpha, dim);
            (Verdict::Falsified, w, d)
        }
    };
    Ok(CertReport {
        mode: Mode::Exact,
        pairs_checked: acc.pairs_checked,
        max_intersection_dim: acc.max_dim,
        verdict,
        witness,
        wall_ms: ms_since(start),
        seed: None,
        observed_size: Some(observed_size),
        observed_min_distance,
        claimed_size: code.claimed_size.to_string(),
        claimed_distance: code.claimed_distance,
        witness_detail,
    })
}

/// Checks `samples` pseudo-random shifts drawn from the seeded stream.
pub fn certify_sampled(code: &OrbitCode, samples: u64, seed: u64) -> Result<CertReport> {
    if samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let alphas: Vec<FieldElement> = NonzeroSampler::new(&code.ambient, seed)
        .take(samples as usize)
        .collect();
    let mut report = certify_alphas(code, &alphas)?;
    report.seed = Some(seed);
    Ok(report)
}

/// Checks the given shifts against every generator pair. Shifts that
/// stabilize a generator are skipped for that generator's self-pair.
pub fn certify_alphas(code: &OrbitCode, alphas: &[FieldElement]) -> Result<CertReport> {
    let start = Instant::now();
    if let Some(bad) = alphas.iter().find(|a| a.ctx() != &code.ambient) {
        return Err(Error::IncompatibleFields(format!(
            "shift from {:?}",
            bad.ctx()
        )));
    }
    if alphas.iter().any(FieldElement::is_zero) {
        return Err(Error::ZeroShift);
    }
    let kernel = PairKernel::new(code);
    let q = code.ambient.q();
    let qk = q.checked_pow(code.k as u32);
    let ambient = &code.ambient;

    let per_alpha: Vec<(u64, usize, Option<(usize, usize, usize)>)> = alphas
        .par_iter()
        .map(|alpha| {
            let a = alpha.coeffs();
            let fixes_fq = ambient.pow_u64_raw(a, q - 1) == ambient.one_raw();
            let fixes_spread = match qk {
                Some(qk) => ambient.pow_u64_raw(a, qk - 1) == ambient.one_raw(),
                None => alpha.pow(&(BigUint::from(q).pow(code.k as u32) - 1u32)).is_one(),
            };
            let mut checked = 0;
            let mut max_dim = 0;
            let mut violation = None;
            for &(i, j) in &kernel.pairs {
                if i == j {
                    let stabilizes = match code.generators[i].kind {
                        GeneratorKind::Trinomial => fixes_fq,
                        GeneratorKind::Spread => fixes_spread,
                    };
                    if stabilizes {
                        continue;
                    }
                }
                let dim = kernel.intersection_dim(i, j, a);
                checked += 1;
                max_dim = max_dim.max(dim);
                if dim > kernel.bound(i, j) && violation.is_none() {
                    violation = Some((i, j, dim));
                }
            }
            (checked, max_dim, violation)
        })
        .collect();

    let pairs_checked = per_alpha.iter().map(|x| x.0).sum();
    let max_dim = per_alpha.iter().map(|x| x.1).max().unwrap_or(0);
    let first = per_alpha
        .iter()
        .enumerate()
        .find_map(|(s, x)| x.2.map(|v| (s, v)));
    let (verdict, witness, witness_detail) = match first {
        None => (Verdict::NotFalsified, None, None),
        Some((s, (i, j, dim))) => {
            let (w, d) = witness_for(code, i, j, &alphas[s], dim);
            (Verdict::Falsified, w, d)
        }
    };
    Ok(CertReport {
        mode: Mode::Sampled,
        pairs_checked,
        max_intersection_dim: max_dim,
        verdict,
        witness,
        wall_ms: ms_since(start),
        seed: None,
        observed_size: None,
        observed_min_distance: None,
        claimed_size: code.claimed_size.to_string(),
        claimed_distance: code.claimed_distance,
        witness_detail,
    })
}

impl CertReport {
    /// Zeroes the timing field so reports compare byte for byte.
    pub fn without_timing(mut self) -> Self {
        self.wall_ms = 0;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldCtx {
        FieldCtx::prime_field(2).unwrap()
    }

    #[test]
    fn identical_pairs_fail_the_condition() {
        let f = f2().extend(5, None).unwrap();
        let t = f.generator();
        let g = t.pow_u64(3);
        assert!(!check_union_condition(&t, &g, &t, &g, 2, 2, 5).unwrap());
    }

    #[test]
    fn distinct_equal_coefficients_pass_with_l1() {
        let f = FieldCtx::prime_field(3).unwrap().extend(2, None).unwrap();
        let a = f.generator();
        let b = a.pow_u64(3);
        assert!(check_union_condition(&a, &a, &b, &b, 3, 1, 5).unwrap());
        assert_eq!(
            check_union_condition(&a, &f.zero(), &b, &b, 3, 1, 5).unwrap_err(),
            Error::ZeroCoefficient
        );
    }

    #[test]
    fn binary_corollary_condition_holds() {
        let f = f2().extend(5, None).unwrap();
        let t = f.generator();
        let thetas: Vec<_> = [3u64, 6, 12, 17, 24].iter().map(|&e| t.pow_u64(e)).collect();
        for l in 1..5 {
            for a in &thetas {
                for b in &thetas {
                    if a != b {
                        assert!(check_union_condition(a, a, b, b, 2, l, 5).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn small_spread_code_certifies() {
        let spec = CodeSpec {
            field: f2(),
            k: 2,
            l: 1,
            ambient_degree: 4,
            trinomials: vec![],
            binomial: Some(f2().one()),
        };
        let code = build_spread_code(&spec).unwrap();
        assert_eq!(code.claimed_size(), &BigUint::from(5u32));
        let report = certify_exact(&code, DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(report.verdict, Verdict::Certified);
        assert_eq!(report.max_intersection_dim, 0);
        assert_eq!(report.observed_size, Some(5));
        assert_eq!(report.observed_min_distance, Some(4));
    }

    #[test]
    fn small_trinomial_code_certifies() {
        let one = f2().one();
        let spec = CodeSpec::equal_coefficients(&f2(), 3, 1, &[one], None, 7);
        assert_eq!(spec.minimal_ambient_degree(1000).unwrap(), 7);
        let code = build_trinomial_code(&spec).unwrap();
        let report = certify_exact(&code, DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(report.verdict, Verdict::Certified);
        assert_eq!(report.max_intersection_dim, 1);
        assert_eq!(report.observed_size, Some(127));
        assert_eq!(report.observed_min_distance, Some(4));
    }

    #[test]
    fn preconditions_are_enforced() {
        let one = f2().one();
        let spec = CodeSpec::equal_coefficients(&f2(), 4, 2, &[one.clone()], None, 8);
        assert_eq!(build_code(&spec).unwrap_err(), Error::GcdViolation { l: 2, k: 4 });
        let spec = CodeSpec::equal_coefficients(&f2(), 3, 1, &[one.clone(), one.clone()], None, 7);
        assert_eq!(build_code(&spec).unwrap_err(), Error::ConditionViolated { i: 0, j: 1 });
        let spec = CodeSpec::equal_coefficients(&f2(), 3, 1, &[one], None, 6);
        assert!(matches!(
            build_code(&spec).unwrap_err(),
            Error::SplittingFieldNotContained { splitting_degree: 7, ambient_degree: 6 }
        ));
    }

    #[test]
    fn duplicated_generator_is_falsified() {
        let one = f2().one();
        let spec = CodeSpec::equal_coefficients(&f2(), 3, 1, &[one.clone(), one], None, 7);
        let code = build_code_unchecked(&spec).unwrap();
        let report = certify_exact(&code, DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(report.verdict, Verdict::Falsified);
        assert_eq!(report.max_intersection_dim, 3);
        assert_eq!(report.observed_size, Some(127));
        let detail = report.witness_detail.unwrap();
        assert_eq!((detail.i, detail.j, detail.dim), (0, 1, 3));
    }

    #[test]
    fn orbit_of_subfield() {
        let big = f2().extend(6, None).unwrap();
        let u = LinearizedPoly::binomial(2, &f2().one()).root_space(&big).unwrap();
        assert_eq!(enumerate_orbit(&u, 1000).unwrap().len(), 21);
        assert_eq!(enumerate_orbit(&Subspace::full(&big), 1000).unwrap().len(), 1);
    }
}
