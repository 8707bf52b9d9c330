//! Dense complex linear algebra helpers on top of nalgebra.
//!
//! nalgebra supplies storage and LU. SVD and Hermitian eigendecompositions
//! are Jacobi methods in [`jacobi`]; the QZ iteration lives in [`qz`].

pub mod jacobi;
pub mod qz;

use nalgebra::DMatrix;

use crate::error::Result;
use crate::scalar::{abs, cone, czero, eps, CMat, CVec, Real, C};

pub fn zeros<T: Real>(r: usize, c: usize) -> CMat<T> {
    DMatrix::from_element(r, c, czero())
}

pub fn eye<T: Real>(n: usize) -> CMat<T> {
    DMatrix::identity(n, n)
}

/// Unit vector `e_i` (0-based) of length `n`.
pub fn unit<T: Real>(n: usize, i: usize) -> CVec<T> {
    let mut v = CVec::from_element(n, czero());
    v[i] = cone();
    v
}

pub fn kron<T: Real>(a: &CMat<T>, b: &CMat<T>) -> CMat<T> {
    a.kronecker(b)
}

/// Kronecker product of a column vector with `I_m`.
pub fn kron_vec_eye<T: Real>(v: &CVec<T>, m: usize) -> CMat<T> {
    let mut out = zeros(v.len() * m, m);
    for (i, &vi) in v.iter().enumerate() {
        for d in 0..m {
            out[(i * m + d, d)] = vi;
        }
    }
    out
}

/// Kronecker product of a column vector with a vector: `v ⊗ u`.
pub fn kron_vv<T: Real>(v: &CVec<T>, u: &CVec<T>) -> CVec<T> {
    let m = u.len();
    let mut out = CVec::from_element(v.len() * m, czero());
    for (i, &vi) in v.iter().enumerate() {
        for d in 0..m {
            out[i * m + d] = vi * u[d];
        }
    }
    out
}

pub fn block<T: Real>(m: &CMat<T>, r0: usize, c0: usize, nr: usize, nc: usize) -> CMat<T> {
    m.view((r0, c0), (nr, nc)).clone_owned()
}

pub fn set_block<T: Real>(m: &mut CMat<T>, r0: usize, c0: usize, b: &CMat<T>) {
    m.view_mut((r0, c0), (b.nrows(), b.ncols())).copy_from(b);
}

pub fn fro<T: Real>(m: &CMat<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.hypot(abs(*z)))
}

pub fn vnorm<T: Real>(v: &CVec<T>) -> T {
    v.iter().fold(T::zero(), |acc, z| acc.hypot(abs(*z)))
}

pub fn max_abs<T: Real>(m: &CMat<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(abs(*z)))
}

/// Entrywise transpose without conjugation.
pub fn tr<T: Real>(m: &CMat<T>) -> CMat<T> {
    m.transpose()
}

/// Conjugate transpose.
pub fn ct<T: Real>(m: &CMat<T>) -> CMat<T> {
    m.adjoint()
}

pub fn conj_vec<T: Real>(v: &CVec<T>) -> CVec<T> {
    v.map(|z| z.conj())
}

pub fn is_real_mat<T: Real>(m: &CMat<T>) -> bool {
    m.iter().all(|z| z.im == T::zero())
}

/// Singular value decomposition with full square factors.
///
/// Wide inputs are padded with zero rows so that `v` always spans the whole
/// domain; tall inputs keep a full `u` by padding with zero columns.
pub struct FullSvd<T: Real> {
    pub u: CMat<T>,
    /// Singular values in descending order, length `min(rows, cols)` of the
    /// unpadded input.
    pub s: Vec<T>,
    pub v: CMat<T>,
}

pub fn full_svd<T: Real>(m: &CMat<T>) -> Result<FullSvd<T>> {
    let (p, q) = m.shape();
    let n = p.max(q);
    if n == 0 {
        return Ok(FullSvd { u: zeros(p, p), s: vec![], v: zeros(q, q) });
    }
    let mut sq = zeros(n, n);
    set_block(&mut sq, 0, 0, m);
    let (u, s, v) = jacobi::svd(&sq)?;
    let s: Vec<T> = s.into_iter().take(p.min(q)).collect();
    Ok(FullSvd { u: block(&u, 0, 0, p, p), s, v: block(&v, 0, 0, q, q) })
}

pub fn singular_values<T: Real>(m: &CMat<T>) -> Result<Vec<T>> {
    Ok(full_svd(m)?.s)
}

/// Numerical rank: number of singular values above `rtol * sigma_max`.
pub fn rank<T: Real>(m: &CMat<T>, rtol: T) -> Result<usize> {
    let s = singular_values(m)?;
    Ok(rank_from_sv(&s, rtol))
}

pub fn rank_from_sv<T: Real>(s: &[T], rtol: T) -> usize {
    let smax = s.first().copied().unwrap_or(T::zero());
    if smax == T::zero() {
        return 0;
    }
    s.iter().filter(|&&x| x > rtol * smax).count()
}

/// Ratio `sigma_min / sigma_max` of a square matrix (0 for the zero matrix).
pub fn sv_ratio<T: Real>(m: &CMat<T>) -> Result<T> {
    let s = singular_values(m)?;
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if hi > T::zero() => Ok(lo / hi),
        (None, None) => Ok(T::one()),
        _ => Ok(T::zero()),
    }
}

/// Orthonormal basis (as columns) of the right null space.
pub fn null_space<T: Real>(m: &CMat<T>, rtol: T) -> Result<CMat<T>> {
    let q = m.ncols();
    let svd = full_svd(m)?;
    let r = rank_from_sv(&svd.s, rtol);
    Ok(block(&svd.v, 0, r, q, q - r))
}

/// The `count` right singular vectors belonging to the smallest singular values.
pub fn smallest_right_singular<T: Real>(m: &CMat<T>, count: usize) -> Result<(CMat<T>, Vec<T>)> {
    let q = m.ncols();
    let svd = full_svd(m)?;
    let count = count.min(q);
    let mut s = svd.s.clone();
    s.resize(q, T::zero());
    Ok((block(&svd.v, 0, q - count, q, count), s[q - count..].to_vec()))
}

/// Basis of vectors `y` with `yᵀ M = 0` (transpose convention).
pub fn left_null_space<T: Real>(m: &CMat<T>, rtol: T) -> Result<CMat<T>> {
    null_space(&m.transpose(), rtol)
}

/// Orthonormal basis of the column space.
pub fn orth<T: Real>(m: &CMat<T>, rtol: T) -> Result<CMat<T>> {
    let p = m.nrows();
    let svd = full_svd(m)?;
    let r = rank_from_sv(&svd.s, rtol);
    Ok(block(&svd.u, 0, 0, p, r))
}

/// Moore-Penrose pseudo-inverse with relative cutoff.
pub fn pinv<T: Real>(m: &CMat<T>, rtol: T) -> Result<CMat<T>> {
    let (p, q) = m.shape();
    let svd = full_svd(m)?;
    let r = rank_from_sv(&svd.s, rtol);
    let mut out = zeros(q, p);
    for i in 0..r {
        let vi = svd.v.column(i);
        let ui = svd.u.column(i);
        let inv = C::new(T::one() / svd.s[i], T::zero());
        out += vi * ui.adjoint() * inv;
    }
    Ok(out)
}

/// LU solve `A X = B`; `None` when the smallest pivot falls below
/// `rtol` times the largest.
pub fn lu_solve<T: Real>(a: &CMat<T>, b: &CMat<T>, rtol: T) -> Option<CMat<T>> {
    if a.nrows() == 0 {
        return Some(zeros(0, b.ncols()));
    }
    let lu = a.clone().lu();
    let u = lu.u();
    let mut hi = T::zero();
    let mut lo = T::max_value().unwrap_or(T::one() / eps::<T>());
    for i in 0..u.nrows() {
        let d = abs(u[(i, i)]);
        hi = hi.max(d);
        lo = lo.min(d);
    }
    if hi == T::zero() || lo <= rtol * hi {
        return None;
    }
    lu.solve(b)
}

pub fn lu_solve_vec<T: Real>(a: &CMat<T>, b: &CVec<T>, rtol: T) -> Option<CVec<T>> {
    let bm = CMat::from_column_slice(b.len(), 1, b.as_slice());
    lu_solve(a, &bm, rtol).map(|x| x.column(0).clone_owned())
}

pub fn inverse<T: Real>(a: &CMat<T>, rtol: T) -> Option<CMat<T>> {
    lu_solve(a, &eye(a.nrows()), rtol)
}

/// Determinant through LU (used by the interpolation oracle).
pub fn det<T: Real>(a: &CMat<T>) -> C<T> {
    if a.nrows() == 0 {
        return cone();
    }
    a.clone().lu().determinant()
}

/// Least-squares solution of `A x = b` via the pseudo-inverse.
pub fn lstsq<T: Real>(a: &CMat<T>, b: &CVec<T>, rtol: T) -> Result<CVec<T>> {
    Ok(pinv(a, rtol)? * b)
}

/// Largest entrywise deviation from symmetry, relative to the largest entry.
pub fn symmetry_defect<T: Real>(m: &CMat<T>) -> T {
    let scale = max_abs(m);
    if scale == T::zero() {
        return T::zero();
    }
    max_abs(&(m - m.transpose())) / scale
}

pub fn hermitian_defect<T: Real>(m: &CMat<T>) -> T {
    let scale = max_abs(m);
    if scale == T::zero() {
        return T::zero();
    }
    max_abs(&(m - m.adjoint())) / scale
}

/// Real part as a real matrix, for routines that need real arithmetic.
pub fn real_part<T: Real>(m: &CMat<T>) -> DMatrix<T> {
    m.map(|z| z.re)
}

pub fn from_real<T: Real>(m: &DMatrix<T>) -> CMat<T> {
    m.map(|x| C::new(x, T::zero()))
}

/// Block transpose of an `r x c` grid of `m x m` blocks.
pub fn block_transpose_grid<T: Real>(a: &CMat<T>, m: usize) -> CMat<T> {
    let (rows, cols) = a.shape();
    let (br, bc) = (rows / m, cols / m);
    let mut out = zeros(bc * m, br * m);
    for i in 0..br {
        for j in 0..bc {
            let b = block(a, i * m, j * m, m, m);
            set_block(&mut out, j * m, i * m, &b);
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending. Real
/// symmetric input yields real eigenvectors.
pub fn hermitian_eigen<T: Real>(h: &CMat<T>) -> Result<(Vec<T>, CMat<T>)> {
    jacobi::hermitian_eigen(h)
}
