//! Small dense helpers on top of faer plus a compressed-sparse-row matrix.

use crate::error::{Error, Result};
pub use faer::c64;
use faer::{Mat, MatRef, Side};

pub type CMat = Mat<c64>;

pub const ZERO: c64 = c64 { re: 0.0, im: 0.0 };
pub const ONE: c64 = c64 { re: 1.0, im: 0.0 };
pub const I: c64 = c64 { re: 0.0, im: 1.0 };

pub fn cx(re: f64, im: f64) -> c64 {
    c64::new(re, im)
}

/// Pauli matrix σ_i, with σ_0 the identity.
pub fn pauli(i: usize) -> CMat {
    let mut m = CMat::zeros(2, 2);
    match i {
        0 => {
            m[(0, 0)] = ONE;
            m[(1, 1)] = ONE;
        }
        1 => {
            m[(0, 1)] = ONE;
            m[(1, 0)] = ONE;
        }
        2 => {
            m[(0, 1)] = -I;
            m[(1, 0)] = I;
        }
        3 => {
            m[(0, 0)] = ONE;
            m[(1, 1)] = -ONE;
        }
        _ => panic!("pauli index {i} out of range"),
    }
    m
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac, br, bc) = (a.nrows(), a.ncols(), b.nrows(), b.ncols());
    CMat::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

pub fn identity(n: usize) -> CMat {
    CMat::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
}

pub fn scale(a: &CMat, s: c64) -> CMat {
    CMat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * s)
}

pub fn add(a: &CMat, b: &CMat) -> CMat {
    CMat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] + b[(i, j)])
}

pub fn sub(a: &CMat, b: &CMat) -> CMat {
    CMat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] - b[(i, j)])
}

pub fn mul(a: &CMat, b: &CMat) -> CMat {
    a * b
}

pub fn adjoint(a: &CMat) -> CMat {
    a.adjoint().to_owned()
}

pub fn conj(a: &CMat) -> CMat {
    CMat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)].conj())
}

/// `U · a · U†`
pub fn conjugate_by(u: &CMat, a: &CMat) -> CMat {
    let ua = u * a;
    &ua * u.adjoint()
}

pub fn max_abs(a: &CMat) -> f64 {
    let mut m = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max(a[(i, j)].norm());
        }
    }
    m
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut m = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    m
}

pub fn hermiticity_defect(a: &CMat) -> f64 {
    let mut m = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    m
}

pub fn unitarity_defect(a: &CMat) -> f64 {
    let p = a.adjoint() * a;
    max_abs_diff(&p, &identity(a.nrows()))
}

pub fn trace(a: &CMat) -> c64 {
    (0..a.nrows().min(a.ncols())).map(|i| a[(i, i)]).sum()
}

/// Determinant via LU.
pub fn det(a: &CMat) -> c64 {
    a.as_ref().determinant()
}

/// Hermitian eigendecomposition, ascending eigenvalues, eigenvectors as columns.
pub fn eigh(a: MatRef<'_, c64>) -> Result<(Vec<f64>, CMat)> {
    let evd = a
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Eigen(format!("{e:?}")))?;
    let s = evd.S().column_vector();
    let vals = (0..a.nrows()).map(|i| s[i].re).collect();
    Ok((vals, evd.U().to_owned()))
}

pub fn eigvalsh(a: MatRef<'_, c64>) -> Result<Vec<f64>> {
    let v = a
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Eigen(format!("{e:?}")))?;
    Ok(v)
}

/// Orthonormal basis of the column span (thin Q factor).
pub fn orthonormalize(a: MatRef<'_, c64>) -> CMat {
    a.qr().compute_thin_Q()
}

pub fn column_norm(a: MatRef<'_, c64>, j: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..a.nrows() {
        s += a[(i, j)].norm_sqr();
    }
    s.sqrt()
}

pub fn dot_col(a: MatRef<'_, c64>, i: usize, b: MatRef<'_, c64>, j: usize) -> c64 {
    let mut s = ZERO;
    for r in 0..a.nrows() {
        s += a[(r, i)].conj() * b[(r, j)];
    }
    s
}

/// Compressed-sparse-row complex matrix.
#[derive(Clone, Debug)]
pub struct CsrMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub vals: Vec<c64>,
}

impl CsrMatrix {
    /// Duplicate entries are summed; explicit zeros are dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, mut t: Vec<(usize, usize, c64)>) -> Self {
        t.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut row_ptr = vec![0usize; nrows + 1];
        let mut col_idx = Vec::with_capacity(t.len());
        let mut vals: Vec<c64> = Vec::with_capacity(t.len());
        let mut rows = Vec::with_capacity(t.len());
        for (r, c, v) in t {
            if let (Some(&lr), Some(&lc)) = (rows.last(), col_idx.last()) {
                if lr == r && lc == c {
                    *vals.last_mut().unwrap() += v;
                    continue;
                }
            }
            rows.push(r);
            col_idx.push(c);
            vals.push(v);
        }
        let keep: Vec<bool> = vals.iter().map(|v| v.norm() > 0.0).collect();
        let mut ci = Vec::with_capacity(col_idx.len());
        let mut vv = Vec::with_capacity(vals.len());
        for k in 0..keep.len() {
            if keep[k] {
                row_ptr[rows[k] + 1] += 1;
                ci.push(col_idx[k]);
                vv.push(vals[k]);
            }
        }
        for r in 0..nrows {
            row_ptr[r + 1] += row_ptr[r];
        }
        CsrMatrix { nrows, ncols, row_ptr, col_idx: ci, vals: vv }
    }

    pub fn from_dense(a: &CMat) -> Self {
        let mut t = Vec::new();
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                if a[(i, j)].norm() > 0.0 {
                    t.push((i, j, a[(i, j)]));
                }
            }
        }
        Self::from_triplets(a.nrows(), a.ncols(), t)
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn to_dense(&self) -> CMat {
        let mut m = CMat::zeros(self.nrows, self.ncols);
        for r in 0..self.nrows {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                m[(r, self.col_idx[k])] += self.vals[k];
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> c64 {
        let lo = self.row_ptr[r];
        let hi = self.row_ptr[r + 1];
        match self.col_idx[lo..hi].binary_search(&c) {
            Ok(k) => self.vals[lo + k],
            Err(_) => ZERO,
        }
    }

    /// `y = A x` for a block of column vectors.
    pub fn apply(&self, x: MatRef<'_, c64>) -> CMat {
        let mut y = CMat::zeros(self.nrows, x.ncols());
        for j in 0..x.ncols() {
            let xc = x.col(j);
            let mut yc = y.col_mut(j);
            for r in 0..self.nrows {
                let mut s = ZERO;
                for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                    s += self.vals[k] * xc[self.col_idx[k]];
                }
                yc[r] = s;
            }
        }
        y
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut m = 0.0f64;
        for r in 0..self.nrows {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let c = self.col_idx[k];
                m = m.max((self.vals[k] - self.get(c, r).conj()).norm());
            }
        }
        m
    }

    /// Upper bound on the spectral norm (max absolute row sum).
    pub fn norm_bound(&self) -> f64 {
        (0..self.nrows)
            .map(|r| (self.row_ptr[r]..self.row_ptr[r + 1]).map(|k| self.vals[k].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Lower bound on the spectral norm (largest row 2-norm).
    pub fn norm_lower(&self) -> f64 {
        (0..self.nrows)
            .map(|r| {
                (self.row_ptr[r]..self.row_ptr[r + 1])
                    .map(|k| self.vals[k].norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let s1 = pauli(1);
        let s2 = pauli(2);
        let s3 = pauli(3);
        let p = mul(&s1, &s2);
        assert!(max_abs_diff(&p, &scale(&s3, I)) < 1e-15);
        assert!(max_abs_diff(&mul(&s2, &s2), &identity(2)) < 1e-15);
    }

    #[test]
    fn kron_shape_and_entries() {
        let k = kron(&pauli(3), &pauli(1));
        assert_eq!(k.nrows(), 4);
        assert_eq!(k[(0, 1)], ONE);
        assert_eq!(k[(2, 3)], -ONE);
    }

    #[test]
    fn csr_roundtrip_and_apply() {
        let a = CMat::from_fn(5, 5, |i, j| {
            if (i + 2 * j) % 3 == 0 {
                cx(i as f64, j as f64 - 1.0)
            } else {
                ZERO
            }
        });
        let s = CsrMatrix::from_dense(&a);
        assert!(max_abs_diff(&s.to_dense(), &a) < 1e-15);
        let x = CMat::from_fn(5, 2, |i, j| cx(1.0 + i as f64, j as f64));
        let y = s.apply(x.as_ref());
        assert!(max_abs_diff(&y, &(&a * &x)) < 1e-12);
    }

    #[test]
    fn triplets_sum_duplicates() {
        let s = CsrMatrix::from_triplets(2, 2, vec![(0, 1, ONE), (0, 1, ONE), (1, 0, cx(2.0, 0.0))]);
        assert_eq!(s.get(0, 1), cx(2.0, 0.0));
        assert_eq!(s.nnz(), 2);
    }
}
