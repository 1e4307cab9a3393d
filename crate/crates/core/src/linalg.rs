//! Dense exact linear algebra over the base field F_q, and coordinates of
//! F_{q^N} with respect to the fixed basis `1, g, ..., g^{N-1}` (`g` the
//! designated generator of the big field).

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldElement};
use crate::fpoly;

/// Largest `N` accepted by [`matrix_of_linear_map`].
pub const MAX_DENSE_DIM: usize = 512;

/// Matrix over a finite field, row-major. Each entry occupies `width`
/// consecutive prime-field coefficients (`width` is the field degree).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixFq {
    field: FieldCtxKey,
    rows: usize,
    cols: usize,
    width: usize,
    data: Vec<u32>,
}

/// Wrapper so the matrix can derive `Hash` while comparing contexts
/// structurally.
#[derive(Clone)]
struct FieldCtxKey(FieldCtx);

impl PartialEq for FieldCtxKey {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for FieldCtxKey {}

impl std::hash::Hash for FieldCtxKey {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.characteristic().hash(state);
        self.0.degree().hash(state);
    }
}

/// Result of [`MatrixFq::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixFq,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatrixFq {
    pub fn zeros(field: &FieldCtx, rows: usize, cols: usize) -> Self {
        let width = field.degree() as usize;
        Self {
            field: FieldCtxKey(field.clone()),
            rows,
            cols,
            width,
            data: vec![0; rows * cols * width],
        }
    }

    pub fn identity(field: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        let one = field.one_raw();
        for i in 0..n {
            m.entry_mut(i, i).copy_from_slice(&one);
        }
        m
    }

    /// Build from rows of elements, all of which must live in `field`.
    pub fn from_rows(field: &FieldCtx, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInput("ragged matrix rows".into()));
            }
            for (c, e) in row.iter().enumerate() {
                if e.ctx() != field {
                    return Err(Error::IncompatibleFields(format!(
                        "matrix entry from {:?}, expected {:?}",
                        e.ctx(),
                        field
                    )));
                }
                m.entry_mut(r, c).copy_from_slice(e.coeffs());
            }
        }
        Ok(m)
    }

    /// Build from rows of raw entries (each entry `width` prime-field digits).
    pub(crate) fn from_raw_rows(field: &FieldCtx, cols: usize, rows: &[Vec<u32>]) -> Self {
        let width = field.degree() as usize;
        let mut data = Vec::with_capacity(rows.len() * cols * width);
        for row in rows {
            debug_assert_eq!(row.len(), cols * width);
            data.extend_from_slice(row);
        }
        Self {
            field: FieldCtxKey(field.clone()),
            rows: rows.len(),
            cols,
            width,
            data,
        }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field.0
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        FieldElement::new_unchecked(self.field.0.clone(), self.entry(r, c).to_vec())
    }

    pub fn set(&mut self, r: usize, c: usize, value: &FieldElement) -> Result<()> {
        if value.ctx() != &self.field.0 {
            return Err(Error::IncompatibleFields("entry from another field".into()));
        }
        self.entry_mut(r, c).copy_from_slice(value.coeffs());
        Ok(())
    }

    pub fn row(&self, r: usize) -> Vec<FieldElement> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub(crate) fn row_raw(&self, r: usize) -> &[u32] {
        let stride = self.cols * self.width;
        &self.data[r * stride..(r + 1) * stride]
    }

    /// Entries as integers; only meaningful over a prime field.
    pub fn to_int_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| self.row_raw(r).to_vec())
            .collect()
    }

    fn entry(&self, r: usize, c: usize) -> &[u32] {
        let start = (r * self.cols + c) * self.width;
        &self.data[start..start + self.width]
    }

    fn entry_mut(&mut self, r: usize, c: usize) -> &mut [u32] {
        let start = (r * self.cols + c) * self.width;
        &mut self.data[start..start + self.width]
    }

    fn entry_is_zero(&self, r: usize, c: usize) -> bool {
        self.entry(r, c).iter().all(|&x| x == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let stride = self.cols * self.width;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * stride);
        head[lo * stride..(lo + 1) * stride].swap_with_slice(&mut tail[..stride]);
    }

    /// `row[r] *= s` for a raw scalar `s`.
    fn scale_row(&mut self, r: usize, s: &[u32]) {
        let field = self.field.0.clone();
        let p = field.characteristic();
        for c in 0..self.cols {
            if self.width == 1 {
                let e = self.entry_mut(r, c);
                e[0] = fpoly::mulmod_p(e[0], s[0], p);
            } else {
                let v = field.mul_raw(self.entry(r, c), s);
                self.entry_mut(r, c).copy_from_slice(&v);
            }
        }
    }

    /// `row[dst] -= s * row[src]`, touching columns from `from` on.
    fn sub_scaled_row(&mut self, dst: usize, src: usize, s: &[u32], from: usize) {
        let field = self.field.0.clone();
        let p = field.characteristic();
        for c in from..self.cols {
            if self.entry_is_zero(src, c) {
                continue;
            }
            if self.width == 1 {
                let t = fpoly::mulmod_p(self.entry(src, c)[0], s[0], p);
                let e = self.entry_mut(dst, c);
                e[0] = if e[0] >= t { e[0] - t } else { e[0] + p - t };
            } else {
                let t = field.mul_raw(self.entry(src, c), s);
                let v = field.sub_raw(self.entry(dst, c), &t);
                self.entry_mut(dst, c).copy_from_slice(&v);
            }
        }
    }

    /// Reduced row echelon form, pivoting on the first nonzero entry of each
    /// column in order.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot_row) = (rank..m.rows).find(|&r| !m.entry_is_zero(r, col)) else {
                continue;
            };
            m.swap_rows(rank, pivot_row);
            let inv = m
                .field
                .0
                .inv_raw(m.entry(rank, col))
                .expect("pivot is nonzero");
            m.scale_row(rank, &inv);
            for r in 0..m.rows {
                if r != rank && !m.entry_is_zero(r, col) {
                    let factor = m.entry(r, col).to_vec();
                    m.sub_scaled_row(r, rank, &factor, col);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref {
            matrix: m,
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space `{x : M x = 0}` as rows, in RREF.
    pub fn kernel(&self) -> MatrixFq {
        let Rref { matrix, pivots, .. } = self.rref();
        let field = &self.field.0;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let one = field.one_raw();
        let rows: Vec<Vec<u32>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols * self.width];
                v[free * self.width..(free + 1) * self.width].copy_from_slice(&one);
                for (i, &pc) in pivots.iter().enumerate() {
                    let neg = field.neg_raw(matrix.entry(i, free));
                    v[pc * self.width..(pc + 1) * self.width].copy_from_slice(&neg);
                }
                v
            })
            .collect();
        Self::from_raw_rows(field, self.cols, &rows).rref().matrix
    }

    /// Matrix product.
    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.field != other.field || self.cols != other.rows {
            return Err(Error::IncompatibleFields("matrix shapes or fields differ".into()));
        }
        let field = &self.field.0;
        let mut out = Self::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entry_is_zero(i, k) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = field.mul_raw(self.entry(i, k), other.entry(k, j));
                    let v = field.add_raw(out.entry(i, j), &t);
                    out.entry_mut(i, j).copy_from_slice(&v);
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::InvalidInput("vector length mismatch".into()));
        }
        let col = Self::from_rows(
            &self.field.0,
            &v.iter().map(|e| vec![e.clone()]).collect::<Vec<_>>(),
        )?;
        let out = self.mul(&col)?;
        Ok((0..self.rows).map(|r| out.get(r, 0)).collect())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.field != other.field || self.cols != other.cols {
            return Err(Error::IncompatibleFields("cannot stack matrices".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            width: self.width,
            data,
        })
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut out = Self::zeros(&self.field.0, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entry_mut(c, r).copy_from_slice(self.entry(r, c));
            }
        }
        out
    }

    /// Rank of `rows` after reducing them against `self`, which must be in
    /// RREF with full row rank and pivot columns `pivots`.
    pub(crate) fn extra_rank(&self, pivots: &[usize], rows: &MatrixFq) -> usize {
        let mut rest = rows.clone();
        for r in 0..rest.rows {
            for (i, &pc) in pivots.iter().enumerate() {
                if !rest.entry_is_zero(r, pc) {
                    let factor = rest.entry(r, pc).to_vec();
                    rest.sub_from_other(r, self, i, &factor);
                }
            }
        }
        rest.rank()
    }

    /// `self.row[dst] -= s * other.row[src]`.
    fn sub_from_other(&mut self, dst: usize, other: &MatrixFq, src: usize, s: &[u32]) {
        let field = self.field.0.clone();
        let p = field.characteristic();
        for c in 0..self.cols {
            if other.entry_is_zero(src, c) {
                continue;
            }
            if self.width == 1 {
                let t = fpoly::mulmod_p(other.entry(src, c)[0], s[0], p);
                let e = self.entry_mut(dst, c);
                e[0] = if e[0] >= t { e[0] - t } else { e[0] + p - t };
            } else {
                let t = field.mul_raw(other.entry(src, c), s);
                let v = field.sub_raw(self.entry(dst, c), &t);
                self.entry_mut(dst, c).copy_from_slice(&v);
            }
        }
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFq {}x{} over {:?}", self.rows, self.cols, self.field.0)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Change of basis between the polynomial representation of F_{q^N} and
/// coordinates over F_q in the basis `g^0, ..., g^{N-1}`.
pub(crate) struct CoordinateSystem {
    fq: FieldCtx,
    n: usize,
    width: usize,
    basis: Vec<Vec<u32>>,
    /// `m x m` over F_p, row-major: coordinates = `to_coords * x`.
    to_coords: Vec<u32>,
    /// `m x m` over F_p, row-major: x = `from_coords * coordinates`.
    from_coords: Vec<u32>,
}

impl CoordinateSystem {
    pub(crate) fn new(big: &FieldCtx) -> Self {
        let fq = big.base_level();
        let m = big.degree() as usize;
        let width = fq.degree() as usize;
        let n = m / width;
        let p = big.characteristic();
        let g = big.generator();
        let mut basis = Vec::with_capacity(n);
        let mut acc = big.one();
        for _ in 0..n {
            basis.push(acc.coeffs().to_vec());
            acc = &acc * &g;
        }
        // Images of the F_q polynomial basis 1, y, ..., y^{width-1}.
        let fq_images: Vec<Vec<u32>> = (0..width)
            .map(|j| {
                let mut c = vec![0u32; width];
                c[j] = 1;
                FieldElement::new_unchecked(fq.clone(), c)
                    .embed(big)
                    .expect("base level is on the chain")
                    .coeffs()
                    .to_vec()
            })
            .collect();
        // Column i*width + j of `from_coords` is y_j * g^i.
        let mut from_coords = vec![0u32; m * m];
        for (i, b) in basis.iter().enumerate() {
            for (j, y) in fq_images.iter().enumerate() {
                let col = i * width + j;
                let v = big.mul_raw(y, b);
                for (row, &x) in v.iter().enumerate() {
                    from_coords[row * m + col] = x;
                }
            }
        }
        let to_coords = invert_mod_p(&from_coords, m, p)
            .expect("powers of a primitive element form a basis over the base field");
        Self {
            fq,
            n,
            width,
            basis,
            to_coords,
            from_coords,
        }
    }

    pub(crate) fn base_field(&self) -> &FieldCtx {
        &self.fq
    }

    pub(crate) fn dim(&self) -> usize {
        self.n
    }

    /// Flattened coordinates (`n` entries of `width` digits each).
    pub(crate) fn to_coords_raw(&self, x: &[u32]) -> Vec<u32> {
        mat_vec_mod_p(&self.to_coords, x, self.fq.characteristic())
    }

    pub(crate) fn from_coords_raw(&self, d: &[u32]) -> Vec<u32> {
        mat_vec_mod_p(&self.from_coords, d, self.fq.characteristic())
    }

    pub(crate) fn basis_raw(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub(crate) fn width(&self) -> usize {
        self.width
    }
}

fn mat_vec_mod_p(mat: &[u32], v: &[u32], p: u32) -> Vec<u32> {
    let m = v.len();
    let p = p as u64;
    (0..m)
        .map(|r| {
            let row = &mat[r * m..(r + 1) * m];
            let mut acc = 0u64;
            for (&a, &b) in row.iter().zip(v) {
                if b != 0 {
                    acc += a as u64 * b as u64;
                    if acc >= 1 << 62 {
                        acc %= p;
                    }
                }
            }
            (acc % p) as u32
        })
        .collect()
}

fn invert_mod_p(mat: &[u32], m: usize, p: u32) -> Option<Vec<u32>> {
    let mut a = mat.to_vec();
    let mut inv = vec![0u32; m * m];
    for i in 0..m {
        inv[i * m + i] = 1;
    }
    for col in 0..m {
        let pivot = (col..m).find(|&r| a[r * m + col] != 0)?;
        if pivot != col {
            for c in 0..m {
                a.swap(pivot * m + c, col * m + c);
                inv.swap(pivot * m + c, col * m + c);
            }
        }
        let s = fpoly::inv_mod_p(a[col * m + col], p);
        for c in 0..m {
            a[col * m + c] = fpoly::mulmod_p(a[col * m + c], s, p);
            inv[col * m + c] = fpoly::mulmod_p(inv[col * m + c], s, p);
        }
        for r in 0..m {
            let f = a[r * m + col];
            if r == col || f == 0 {
                continue;
            }
            for c in 0..m {
                let t = fpoly::mulmod_p(f, a[col * m + c], p);
                a[r * m + c] = (a[r * m + c] + p - t) % p;
                let t = fpoly::mulmod_p(f, inv[col * m + c], p);
                inv[r * m + c] = (inv[r * m + c] + p - t) % p;
            }
        }
    }
    Some(inv)
}

/// Coordinates of `x` over the base field, in the basis `1, g, ..., g^{N-1}`.
pub fn coordinates(x: &FieldElement) -> Vec<FieldElement> {
    let cs = x.ctx().coordinates();
    let flat = cs.to_coords_raw(x.coeffs());
    flat.chunks(cs.width())
        .map(|c| FieldElement::new_unchecked(cs.base_field().clone(), c.to_vec()))
        .collect()
}

/// Inverse of [`coordinates`].
pub fn from_coordinates(big: &FieldCtx, coords: &[FieldElement]) -> Result<FieldElement> {
    let cs = big.coordinates();
    if coords.len() != cs.dim() {
        return Err(Error::InvalidInput(format!(
            "expected {} coordinates, got {}",
            cs.dim(),
            coords.len()
        )));
    }
    let mut flat = Vec::with_capacity(big.degree() as usize);
    for c in coords {
        if c.ctx() != cs.base_field() {
            return Err(Error::IncompatibleFields("coordinate outside F_q".into()));
        }
        flat.extend_from_slice(c.coeffs());
    }
    Ok(FieldElement::new_unchecked(big.clone(), cs.from_coords_raw(&flat)))
}

/// The fixed F_q-basis `1, g, ..., g^{N-1}` of `big`.
pub fn basis(big: &FieldCtx) -> Vec<FieldElement> {
    big.coordinates()
        .basis_raw()
        .iter()
        .map(|b| FieldElement::new_unchecked(big.clone(), b.clone()))
        .collect()
}

/// The `N x N` matrix over F_q of an F_q-linear map on `big`, acting on
/// coordinate column vectors.
pub fn matrix_of_linear_map<F>(f: F, big: &FieldCtx, level_q: &FieldCtx) -> Result<MatrixFq>
where
    F: Fn(&FieldElement) -> FieldElement,
{
    if big.base_level() != *level_q || big.degree() % level_q.degree() != 0 {
        return Err(Error::IncompatibleFields(format!(
            "{level_q:?} is not the base level of {big:?}"
        )));
    }
    let cs = big.coordinates();
    let n = cs.dim();
    if n > MAX_DENSE_DIM {
        return Err(Error::CapExceeded {
            what: "dense matrix dimension".into(),
            cap: MAX_DENSE_DIM as u64,
            partial: format!("requested {n}"),
        });
    }
    let width = cs.width();
    let columns: Vec<Vec<u32>> = basis(big)
        .iter()
        .map(|b| {
            let image = f(b);
            cs.to_coords_raw(image.coeffs())
        })
        .collect();
    let mut m = MatrixFq::zeros(level_q, n, n);
    for (c, col) in columns.iter().enumerate() {
        for r in 0..n {
            m.entry_mut(r, c).copy_from_slice(&col[r * width..(r + 1) * width]);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldCtx {
        FieldCtx::prime_field(p).unwrap()
    }

    fn mat(field: &FieldCtx, rows: &[&[i64]]) -> MatrixFq {
        let rows: Vec<Vec<FieldElement>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        MatrixFq::from_rows(field, &rows).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let f5 = fp(5);
        let id = MatrixFq::identity(&f5, 4);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 4);
        assert_eq!(r.pivots, vec![0, 1, 2, 3]);
        let z = MatrixFq::zeros(&f5, 3, 3);
        assert_eq!(z.rref().rank, 0);
        assert_eq!(z.rref().matrix, z);
    }

    #[test]
    fn singular_matrix_over_f3() {
        // det [[1,2],[2,1]] = 1 - 4 = -3 = 0 mod 3.
        let f3 = fp(3);
        let m = mat(&f3, &[&[1, 2], &[2, 1]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, mat(&f3, &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let f2 = fp(2);
        assert_eq!(MatrixFq::identity(&f2, 3).kernel().rows(), 0);
        let k = MatrixFq::zeros(&f2, 3, 3).kernel();
        assert_eq!(k, MatrixFq::identity(&f2, 3));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f7 = fp(7);
        let m = mat(&f7, &[&[1, 2, 3, 4], &[2, 4, 6, 1], &[3, 6, 2, 5]]);
        let k = m.kernel();
        assert_eq!(k.rows() + m.rank(), 4);
        let prod = m.mul(&k.transpose()).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn artin_schreier_kernel_is_the_base_line() {
        // x -> x^q - x on F_{q^2}: exhaustive fixed points form F_q.
        for p in [2u64, 3, 5] {
            let big = fp(p).extend(2, None).unwrap();
            let fq = big.base_level();
            let m = matrix_of_linear_map(|x| &x.frobenius(1) - x, &big, &fq).unwrap();
            let fixed = big
                .elements(1000)
                .unwrap()
                .filter(|x| x.frobenius(1) == *x)
                .count();
            assert_eq!(fixed as u64, p);
            assert_eq!(m.kernel().rows(), 1);
        }
    }

    #[test]
    fn frobenius_matrix_squares_to_identity_on_f4() {
        let f4 = fp(2).extend(2, Some(&[1, 1, 1])).unwrap();
        let f2 = f4.base_level();
        let m = matrix_of_linear_map(|x| x.frobenius(1), &f4, &f2).unwrap();
        assert_ne!(m, MatrixFq::identity(&f2, 2));
        assert_eq!(m.mul(&m).unwrap(), MatrixFq::identity(&f2, 2));
    }

    #[test]
    fn identity_and_zero_maps() {
        let big = fp(3).extend(4, None).unwrap();
        let fq = big.base_level();
        let id = matrix_of_linear_map(|x| x.clone(), &big, &fq).unwrap();
        assert_eq!(id, MatrixFq::identity(&fq, 4));
        let zero = matrix_of_linear_map(|x| x.ctx().zero(), &big, &fq).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn coordinates_round_trip_over_nonprime_base() {
        let f4 = fp(2).extend(2, None).unwrap().mark_base_level();
        let big = f4.extend(3, None).unwrap();
        for x in big.elements(64).unwrap() {
            let c = coordinates(&x);
            assert_eq!(c.len(), 3);
            assert!(c.iter().all(|e| e.ctx() == &f4));
            assert_eq!(from_coordinates(&big, &c).unwrap(), x);
        }
    }

    #[test]
    fn matrix_applies_like_the_map() {
        let big = fp(2).extend(6, None).unwrap();
        let fq = big.base_level();
        let a = big.element_from_index(37);
        let m = matrix_of_linear_map(|x| &a * &x.frobenius(2), &big, &fq).unwrap();
        for x in big.elements(64).unwrap() {
            let lhs = m.apply(&coordinates(&x)).unwrap();
            assert_eq!(lhs, coordinates(&(&a * &x.frobenius(2))));
        }
    }

    #[test]
    fn wrong_level_is_rejected() {
        let f2 = fp(2);
        let f4 = f2.extend(2, None).unwrap();
        let big = f4.extend(2, None).unwrap();
        assert!(matches!(
            matrix_of_linear_map(|x| x.clone(), &big, &f4),
            Err(Error::IncompatibleFields(_))
        ));
    }
}
