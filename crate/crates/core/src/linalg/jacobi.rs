//! One-sided (Hestenes) Jacobi SVD and cyclic Jacobi Hermitian eigensolver.
//!
//! nalgebra's complex SVD and Hermitian eigensolver occasionally return
//! factorizations that do not reconstruct their input (errors of order
//! `‖A‖` on rank-deficient matrices), so both are done here instead. Jacobi
//! methods are slower than bidiagonalization but every rotation is exactly
//! unitary up to rounding, which makes the result backward stable.

use crate::error::{Error, Result};
use crate::scalar::{abs, cone, czero, eps, lit, CMat, Real, C};

const MAX_SWEEPS: usize = 100;

fn phase<T: Real>(z: C<T>) -> C<T> {
    let a = abs(z);
    if a == T::zero() {
        cone()
    } else {
        z / C::new(a, T::zero())
    }
}

/// Rotation `(c, s)` of the real Jacobi step that annihilates the off-diagonal
/// entry `g > 0` of `[[a, g], [g, b]]`.
fn rotation<T: Real>(a: T, b: T, g: T) -> (T, T) {
    let zeta = (b - a) / (lit::<T>(2.0) * g);
    let sign = if zeta >= T::zero() { T::one() } else { -T::one() };
    let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
    let c = T::one() / (T::one() + t * t).sqrt();
    (c, c * t)
}

/// Right-multiplies columns `i, j` of `m` by `[[j00, j01], [j10, j11]]`.
fn rotate_cols<T: Real>(m: &mut CMat<T>, i: usize, j: usize, r: [[C<T>; 2]; 2]) {
    for row in 0..m.nrows() {
        let (x, y) = (m[(row, i)], m[(row, j)]);
        m[(row, i)] = x * r[0][0] + y * r[1][0];
        m[(row, j)] = x * r[0][1] + y * r[1][1];
    }
}

/// `A = U Σ Vᴴ` for a square `A`, singular values descending.
pub fn svd<T: Real>(a: &CMat<T>) -> Result<(CMat<T>, Vec<T>, CMat<T>)> {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());
    let mut u = a.clone();
    let mut v = CMat::<T>::identity(n, n);
    let tol = lit::<T>(n as f64) * eps::<T>();
    // Columns below this squared norm are roundoff; rotating them against
    // each other need not settle.
    let negligible = (eps::<T>() * a.norm()).powi(2);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let (ci, cj) = (u.column(i), u.column(j));
                let alpha = ci.norm_squared();
                let beta = cj.norm_squared();
                let gamma = ci.dotc(&cj);
                let g = abs(gamma);
                if alpha <= negligible || beta <= negligible || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s) = rotation(alpha, beta, g);
                let ph = phase(gamma).conj();
                let (c, s) = (C::new(c, T::zero()), C::new(s, T::zero()));
                // Column j is first multiplied by conj(phase) so the pair
                // becomes a real problem, then rotated.
                let r = [[c, s], [-s * ph, c * ph]];
                rotate_cols(&mut u, i, j, r);
                rotate_cols(&mut v, i, j, r);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::BackendFailure("Jacobi SVD did not converge".into()));
    }
    let mut sigma: Vec<T> = (0..n).map(|j| u.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| sigma[y].partial_cmp(&sigma[x]).unwrap_or(std::cmp::Ordering::Equal));
    let u = u.select_columns(&order);
    let v = v.select_columns(&order);
    sigma = order.iter().map(|&j| sigma[j]).collect();
    let floor = sigma.first().copied().unwrap_or(T::zero()) * lit::<T>(n as f64) * eps::<T>();
    let mut basis = CMat::<T>::zeros(n, n);
    let mut filled = 0;
    for (j, &s) in sigma.iter().enumerate() {
        if s > floor && s > T::zero() {
            basis.set_column(filled, &(u.column(j) / C::new(s, T::zero())));
            filled += 1;
        }
    }
    // Complete U for the (numerically) zero singular values.
    complete_orthonormal(&mut basis, filled);
    let mut uu = CMat::<T>::zeros(n, n);
    let mut next_null = filled;
    let mut next_range = 0;
    for (j, &s) in sigma.iter().enumerate() {
        let col = if s > floor && s > T::zero() {
            next_range += 1;
            next_range - 1
        } else {
            next_null += 1;
            next_null - 1
        };
        uu.set_column(j, &basis.column(col));
    }
    Ok((uu, sigma, v))
}

/// Fills columns `filled..` of `q` so that all columns are orthonormal:
/// each new column is the standard basis vector with the largest component
/// outside the current span, orthogonalized twice.
fn complete_orthonormal<T: Real>(q: &mut CMat<T>, mut filled: usize) {
    let n = q.nrows();
    while filled < n {
        let mut best: Option<(T, CMat<T>)> = None;
        for e in 0..n {
            let mut x = CMat::<T>::zeros(n, 1);
            x[(e, 0)] = cone();
            for _ in 0..2 {
                for k in 0..filled {
                    let qk = q.column(k).clone_owned();
                    let proj = qk.dotc(&x.column(0));
                    x -= qk * proj;
                }
            }
            let nx = x.norm();
            if best.as_ref().is_none_or(|(b, _)| nx > *b) {
                best = Some((nx, x));
            }
        }
        let (nx, x) = best.expect("n > 0");
        q.set_column(filled, &(x.column(0) / C::new(nx, T::zero())));
        filled += 1;
    }
}

/// `H = V diag(λ) Vᴴ` for Hermitian `H`, eigenvalues ascending. Only the
/// Hermitian part of `h` is used.
pub fn hermitian_eigen<T: Real>(h: &CMat<T>) -> Result<(Vec<T>, CMat<T>)> {
    let n = h.nrows();
    let mut a = (h + h.adjoint()) * C::new(lit::<T>(0.5), T::zero());
    let mut v = CMat::<T>::identity(n, n);
    let scale = a.norm();
    let tol = lit::<T>(n as f64) * eps::<T>() * scale;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let hpq = a[(p, q)];
                let g = abs(hpq);
                if g == T::zero() || g <= tol {
                    a[(p, q)] = czero();
                    a[(q, p)] = czero();
                    continue;
                }
                rotated = true;
                let (c, s) = rotation(a[(p, p)].re, a[(q, q)].re, g);
                let ph = phase(hpq).conj();
                let (c, s) = (C::new(c, T::zero()), C::new(s, T::zero()));
                let r = [[c, s], [-s * ph, c * ph]];
                rotate_cols(&mut a, p, q, r);
                // Row update with the conjugate transpose.
                for col in 0..n {
                    let (x, y) = (a[(p, col)], a[(q, col)]);
                    a[(p, col)] = r[0][0].conj() * x + r[1][0].conj() * y;
                    a[(q, col)] = r[0][1].conj() * x + r[1][1].conj() * y;
                }
                a[(p, q)] = czero();
                a[(q, p)] = czero();
                a[(p, p)].im = T::zero();
                a[(q, q)].im = T::zero();
                rotate_cols(&mut v, p, q, r);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::BackendFailure("Jacobi eigensolver did not converge".into()));
    }
    let vals: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| vals[x].partial_cmp(&vals[y]).unwrap_or(std::cmp::Ordering::Equal));
    Ok((order.iter().map(|&i| vals[i]).collect(), v.select_columns(&order)))
}
