//! The unique block-symmetric pencil with a given ansatz vector.
//!
//! Writing `L = Σ_i ℓ_i ⊗ D_i`, the defining conditions
//! `L(Φ_k ⊗ I) = v ⊗ D` and `L = L^B` decouple into one scalar problem per
//! basis polynomial: find a symmetric `k x k` pencil `ℓ_i` with
//! `ℓ_i Φ_k = v φ_i`. Each scalar problem is a square `2k² x 2k²` system
//! (coefficient matching in the basis plus symmetry), and the matrix is the
//! same for every `i`, so one factorization serves all right-hand sides.

use crate::basis::PolyBasis;
use crate::error::{Error, Result};
use crate::linalg::{fro, kron, kron_vec_eye, lu_solve, zeros};
use crate::ratmodel::PolyMat;
use crate::scalar::{cone, cx, czero, lit, CMat, CVec, Real, C};

use super::{meta, phi_kron, Family, Pencil};

/// Coefficients of `λ φ_j` in `φ_0, ..., φ_{j+1}`, padded to `len`.
fn lambda_times<T: Real>(basis: &PolyBasis<T>, j: usize, len: usize) -> Vec<C<T>> {
    let mut out = vec![czero(); len];
    match basis {
        PolyBasis::ThreeTerm(b) => {
            out[j + 1] = b.alpha[j];
            out[j] = b.beta[j];
            if j > 0 {
                out[j - 1] = b.gamma[j];
            }
        }
        PolyBasis::DegreeGraded(b) => {
            out[j + 1] = cone();
            out[j] = b.alpha[j];
            for i in 0..j {
                out[i] = -b.b(j + 1, i);
            }
        }
    }
    out
}

/// Scalar pencils `(x_i, y_i)` for `i = 0..=k`.
fn scalar_pencils<T: Real>(basis: &PolyBasis<T>, k: usize, v: &CVec<T>) -> Result<Vec<(CMat<T>, CMat<T>)>> {
    let kk = k * k;
    let size = 2 * kk;
    let xi = |r: usize, c: usize| r * k + c;
    let yi = |r: usize, c: usize| kk + r * k + c;
    let mut sys = zeros(size, size);
    let mut rhs = zeros(size, k + 1);
    let mult: Vec<Vec<C<T>>> = (0..k).map(|j| lambda_times(basis, j, k + 1)).collect();
    let mut row = 0;
    for r in 0..k {
        for d in 0..=k {
            for c in 0..k {
                let t = mult[k - 1 - c][d];
                if t != czero() {
                    sys[(row, xi(r, c))] = t;
                }
            }
            if d < k {
                sys[(row, yi(r, k - 1 - d))] = cone();
            }
            rhs[(row, d)] = v[r];
            row += 1;
        }
    }
    for r in 0..k {
        for c in r + 1..k {
            sys[(row, xi(r, c))] = cone();
            sys[(row, xi(c, r))] = -cone::<T>();
            row += 1;
            sys[(row, yi(r, c))] = cone();
            sys[(row, yi(c, r))] = -cone::<T>();
            row += 1;
        }
    }
    debug_assert_eq!(row, size);
    let sol = lu_solve(&sys, &rhs, lit(1e-13)).ok_or(Error::NumericallySingularSystem)?;
    let real = basis.is_real() && v.iter().all(|z| z.im == T::zero());
    let half = cx::<T>(0.5, 0.0);
    let mut out = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let mut x = CMat::from_fn(k, k, |r, c| sol[(xi(r, c), i)]);
        let mut y = CMat::from_fn(k, k, |r, c| sol[(yi(r, c), i)]);
        if real {
            x.apply(|z| *z = C::new(z.re, T::zero()));
            y.apply(|z| *z = C::new(z.re, T::zero()));
        }
        for r in 0..k {
            for c in r + 1..k {
                let ax = (x[(r, c)] + x[(c, r)]) * half;
                x[(r, c)] = ax;
                x[(c, r)] = ax;
                let ay = (y[(r, c)] + y[(c, r)]) * half;
                y[(r, c)] = ay;
                y[(c, r)] = ay;
            }
        }
        out.push((x, y));
    }
    Ok(out)
}

/// The pencil in the double ansatz space of `D` with ansatz vector `v`.
pub fn solve_dm_pencil<T: Real>(d: &PolyMat<T>, v: &CVec<T>) -> Result<Pencil<T>> {
    let (k, m) = (d.degree(), d.m());
    if k < 2 {
        return Err(Error::DegreeTooLow(k));
    }
    if v.len() != k {
        return Err(Error::ShapeMismatch(format!("ansatz vector must have length {k}")));
    }
    let parts = scalar_pencils(&d.basis, k, v)?;
    let mut x = zeros(k * m, k * m);
    let mut y = zeros(k * m, k * m);
    for ((xs, ys), di) in parts.iter().zip(&d.coeffs) {
        x += kron(xs, di);
        y += kron(ys, di);
    }
    let l = Pencil { x, y, meta: meta(0, d, Family::DM, Some(v.clone())) };
    check_residual(&l, d, v)?;
    Ok(l)
}

/// Guards against a silently wrong solve: the ansatz identity must hold.
fn check_residual<T: Real>(l: &Pencil<T>, d: &PolyMat<T>, v: &CVec<T>) -> Result<()> {
    let (k, m) = (d.degree(), d.m());
    let scale = d.scale().max(lit::<T>(1e-300)) * (T::one() + fro(&CMat::from_column_slice(k, 1, v.as_slice())));
    for lam in [cx::<T>(0.3, 0.7), cx::<T>(-1.1, 0.2)] {
        let phi = phi_kron(&d.basis, k, m, lam)?;
        let r = l.eval(lam) * &phi - kron_vec_eye(v, m) * d.eval(lam);
        let pn = fro(&phi);
        if fro(&r) > lit::<T>(1e-8) * scale * pn.max(T::one()) {
            return Err(Error::NumericallySingularSystem);
        }
    }
    Ok(())
}

/// `[v ⊗ I, H]` for the DM pencil with ansatz vector `v`; `H` is read off the
/// λ-coefficient, since `X_F = diag(D_k/α_{k-1}, I, ..., I)`.
pub fn dm_ansatz_matrix<T: Real>(d: &PolyMat<T>, v: &CVec<T>) -> Result<CMat<T>> {
    let l = solve_dm_pencil(d, v)?;
    let (k, m) = (d.degree(), d.m());
    let mut out = zeros(k * m, k * m);
    out.view_mut((0, 0), (k * m, m)).copy_from(&kron_vec_eye(v, m));
    out.view_mut((0, m), (k * m, (k - 1) * m)).copy_from(&l.x.view((0, m), (k * m, (k - 1) * m)));
    Ok(out)
}
