//! F_q-subspaces of F_{q^N}, stored canonically as the RREF of their
//! coordinate rows.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldElement};
use crate::linalg::MatrixFq;
use crate::linpoly::{self, LinearizedPoly};

#[derive(Clone)]
pub struct Subspace {
    ambient: FieldCtx,
    /// RREF with full row rank, entries in F_q.
    basis: MatrixFq,
    pivots: Vec<usize>,
}

/// Serialized form: the RREF rows, each F_q entry written as its
/// enumeration index (base-p digits, constant term least significant).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceRecord {
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u32,
    pub dim: usize,
    pub basis: Vec<Vec<u64>>,
}

impl Subspace {
    pub fn zero(ambient: &FieldCtx) -> Self {
        let n = ambient.degree_over_q() as usize;
        Self {
            ambient: ambient.clone(),
            basis: MatrixFq::zeros(&ambient.base_level(), 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: &FieldCtx) -> Self {
        let n = ambient.degree_over_q() as usize;
        Self {
            ambient: ambient.clone(),
            basis: MatrixFq::identity(&ambient.base_level(), n),
            pivots: (0..n).collect(),
        }
    }

    /// Span of arbitrary elements of `ambient`.
    pub fn span(ambient: &FieldCtx, elements: &[FieldElement]) -> Result<Self> {
        if let Some(bad) = elements.iter().find(|e| e.ctx() != ambient) {
            return Err(Error::IncompatibleFields(format!(
                "element of {:?} in a subspace of {:?}",
                bad.ctx(),
                ambient
            )));
        }
        let raw: Vec<&[u32]> = elements.iter().map(|e| e.coeffs()).collect();
        Ok(Self::span_raw(ambient, &raw))
    }

    pub(crate) fn span_raw(ambient: &FieldCtx, elements: &[&[u32]]) -> Self {
        let cs = ambient.coordinates();
        let rows: Vec<Vec<u32>> = elements.iter().map(|e| cs.to_coords_raw(e)).collect();
        let m = MatrixFq::from_raw_rows(&ambient.base_level(), cs.dim(), &rows);
        Self::from_matrix(ambient, &m).expect("matrix built over the base level")
    }

    /// Row space of a coordinate matrix over F_q.
    pub fn from_matrix(ambient: &FieldCtx, rows: &MatrixFq) -> Result<Self> {
        let fq = ambient.base_level();
        if rows.field() != &fq || rows.cols() != ambient.degree_over_q() as usize {
            return Err(Error::IncompatibleFields(
                "coordinate matrix does not match the ambient field".into(),
            ));
        }
        let rref = rows.rref();
        let basis = truncate_rows(&rref.matrix, rref.rank);
        Ok(Self {
            ambient: ambient.clone(),
            basis,
            pivots: rref.pivots,
        })
    }

    /// `rows` must already be in RREF with full row rank (a kernel, say).
    pub(crate) fn from_rref(ambient: &FieldCtx, rows: MatrixFq) -> Result<Self> {
        Self::from_matrix(ambient, &rows)
    }

    pub fn ambient(&self) -> &FieldCtx {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis_matrix(&self) -> &MatrixFq {
        &self.basis
    }

    pub(crate) fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as field elements, one per RREF row.
    pub fn basis_elements(&self) -> Vec<FieldElement> {
        self.basis_raw()
            .into_iter()
            .map(|c| FieldElement::new_unchecked(self.ambient.clone(), c))
            .collect()
    }

    pub(crate) fn basis_raw(&self) -> Vec<Vec<u32>> {
        let cs = self.ambient.coordinates();
        (0..self.dim())
            .map(|r| cs.from_coords_raw(self.basis.row_raw(r)))
            .collect()
    }

    pub fn contains(&self, x: &FieldElement) -> Result<bool> {
        if x.ctx() != &self.ambient {
            return Err(Error::IncompatibleFields("element from another field".into()));
        }
        let coords = self.ambient.coordinates().to_coords_raw(x.coeffs());
        let row = MatrixFq::from_raw_rows(&self.basis.field().clone(), self.basis.cols(), &[coords]);
        Ok(self.basis.extra_rank(&self.pivots, &row) == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::IncompatibleFields(format!(
                "{:?} vs {:?}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Self::from_matrix(&self.ambient, &self.basis.stack(&other.basis)?)
    }

    /// Zassenhaus: reduce `[U | U ; W | 0]`; rows with zero left half carry
    /// a basis of the intersection in their right half.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let fq = self.basis.field().clone();
        let n = self.basis.cols();
        let mut big = MatrixFq::zeros(&fq, self.dim() + other.dim(), 2 * n);
        for r in 0..self.dim() {
            for c in 0..n {
                let e = self.basis.get(r, c);
                big.set(r, c, &e)?;
                big.set(r, n + c, &e)?;
            }
        }
        for r in 0..other.dim() {
            for c in 0..n {
                big.set(self.dim() + r, c, &other.basis.get(r, c))?;
            }
        }
        let rref = big.rref();
        let mut rows = Vec::new();
        for (r, &pc) in rref.pivots.iter().enumerate() {
            if pc >= n {
                rows.push((n..2 * n).map(|c| rref.matrix.get(r, c)).collect::<Vec<_>>());
            }
        }
        let m = if rows.is_empty() {
            MatrixFq::zeros(&fq, 0, n)
        } else {
            MatrixFq::from_rows(&fq, &rows)?
        };
        Self::from_matrix(&self.ambient, &m)
    }

    /// `dim(U ∩ W) = dim W - (rank of W reduced modulo U)`.
    pub fn intersection_dim(&self, other: &Self) -> Result<usize> {
        self.check_same(other)?;
        Ok(other.dim() - self.basis.extra_rank(&self.pivots, &other.basis))
    }

    /// Subspace distance `dim U + dim W - 2 dim(U ∩ W)`.
    pub fn distance(&self, other: &Self) -> Result<usize> {
        let i = self.intersection_dim(other)?;
        Ok(self.dim() + other.dim() - 2 * i)
    }

    /// `αU = {αu : u ∈ U}`.
    pub fn cyclic_shift(&self, alpha: &FieldElement) -> Result<Self> {
        if alpha.ctx() != &self.ambient {
            return Err(Error::IncompatibleFields("shift from another field".into()));
        }
        if alpha.is_zero() {
            return Err(Error::ZeroShift);
        }
        Ok(self.shift_raw(alpha.coeffs()))
    }

    pub(crate) fn shifted_rows_raw(&self, basis_raw: &[Vec<u32>], alpha: &[u32]) -> MatrixFq {
        let cs = self.ambient.coordinates();
        let rows: Vec<Vec<u32>> = basis_raw
            .iter()
            .map(|b| cs.to_coords_raw(&self.ambient.mul_raw(b, alpha)))
            .collect();
        MatrixFq::from_raw_rows(self.basis.field(), self.basis.cols(), &rows)
    }

    fn shift_raw(&self, alpha: &[u32]) -> Self {
        let rows = self.shifted_rows_raw(&self.basis_raw(), alpha);
        Self::from_matrix(&self.ambient, &rows).expect("same ambient")
    }

    pub fn annihilator(&self) -> LinearizedPoly {
        linpoly::annihilator(self)
    }

    pub fn to_record(&self) -> SubspaceRecord {
        let fq = self.basis.field();
        let p = fq.characteristic() as u64;
        let basis = (0..self.dim())
            .map(|r| {
                self.basis
                    .row_raw(r)
                    .chunks(fq.degree() as usize)
                    .map(|digits| digits.iter().rev().fold(0u64, |acc, &d| acc * p + d as u64))
                    .collect()
            })
            .collect();
        SubspaceRecord {
            q: self.ambient.q(),
            n: self.ambient.degree_over_q(),
            dim: self.dim(),
            basis,
        }
    }

    pub fn from_record(ambient: &FieldCtx, record: &SubspaceRecord) -> Result<Self> {
        if record.q != ambient.q() || record.n != ambient.degree_over_q() {
            return Err(Error::IncompatibleFields(format!(
                "record describes a subspace of F_{}^{}",
                record.q, record.n
            )));
        }
        let fq = ambient.base_level();
        let n = record.n as usize;
        let mut rows = Vec::with_capacity(record.basis.len());
        for row in &record.basis {
            if row.len() != n {
                return Err(Error::InvalidInput(format!("basis row of length {}", row.len())));
            }
            let mut flat = Vec::with_capacity(n * fq.degree() as usize);
            for &v in row {
                if v >= record.q {
                    return Err(Error::InvalidInput(format!("entry {v} is not below q")));
                }
                flat.extend(fq.element_from_index(v).coeffs().iter().copied());
            }
            rows.push(flat);
        }
        let m = MatrixFq::from_raw_rows(&fq, n, &rows);
        Self::from_matrix(ambient, &m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_record()).expect("plain record")
    }
}

fn truncate_rows(m: &MatrixFq, rank: usize) -> MatrixFq {
    let rows: Vec<Vec<u32>> = (0..rank).map(|r| m.row_raw(r).to_vec()).collect();
    MatrixFq::from_raw_rows(m.field(), m.cols(), &rows)
}

/// `T_α(X) = α^{q^k} T(α^{-1} X)` for monic `T` of q-degree `k`: coefficient
/// `i` becomes `a_i α^{q^k - q^i}`, and the roots of `T_α` are `α` times the
/// roots of `T`.
pub fn shift_polynomial(t: &LinearizedPoly, alpha: &FieldElement) -> Result<LinearizedPoly> {
    if alpha.is_zero() {
        return Err(Error::ZeroShift);
    }
    if !t.is_monic() {
        return Err(Error::NotMonic);
    }
    let t = t.embed(alpha.ctx())?;
    let k = t.q_degree().expect("monic") as u64;
    let top = alpha.frobenius(k);
    let mut coeffs = Vec::with_capacity(t.coeffs().len());
    let mut alpha_qi = alpha.clone();
    for (i, a) in t.coeffs().iter().enumerate() {
        if i > 0 {
            alpha_qi = alpha_qi.frobenius(1);
        }
        coeffs.push(a * &top.div(&alpha_qi)?);
    }
    LinearizedPoly::new(alpha.ctx(), coeffs)
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in F_{}^{}, rows {:?})",
            self.dim(),
            self.ambient.q(),
            self.ambient.degree_over_q(),
            self.to_record().basis
        )
    }
}
