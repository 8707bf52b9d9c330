//! Single-shift complex QZ iteration.
//!
//! Computes the generalized eigenvalues of `A - λB` as pairs `(α, β)` with
//! `λ = α/β`; `β = 0` marks an infinite eigenvalue. Only eigenvalues are
//! produced; eigenvectors are extracted later from rank-revealing SVDs.
//! The structure follows the classic Moler-Stewart algorithm: Givens-based
//! Hessenberg-triangular reduction, Wilkinson-type shifts from the trailing
//! 2x2 pencil, and zero chasing for vanishing diagonal entries of `B`.

use nalgebra::ComplexField;

use super::fro;
use crate::error::{Error, Result};
use crate::scalar::{abs, creal, czero, eps, lit, CMat, Real, C};

#[derive(Clone, Copy)]
struct Rot<T: Real> {
    c: T,
    s: C<T>,
}

/// Rotation with `[c s; -conj(s) c] [f; g] = [r; 0]`.
fn lartg<T: Real>(f: C<T>, g: C<T>) -> Rot<T> {
    let fa = abs(f);
    let ga = abs(g);
    if ga == T::zero() {
        return Rot { c: T::one(), s: czero() };
    }
    if fa == T::zero() {
        return Rot { c: T::zero(), s: g.conj() * creal(T::one() / ga) };
    }
    let r = fa.hypot(ga);
    let phase = f * creal(T::one() / fa);
    Rot { c: fa / r, s: phase * g.conj() * creal(T::one() / r) }
}

/// Rows `keep` and `kill` are rotated so that column `col` loses its entry
/// in row `kill`. Applied to both matrices over all columns.
fn rows<T: Real>(h: &mut CMat<T>, t: &mut CMat<T>, keep: usize, kill: usize, r: Rot<T>) {
    let c = creal(r.c);
    for m in [h, t] {
        for j in 0..m.ncols() {
            let x = m[(keep, j)];
            let y = m[(kill, j)];
            m[(keep, j)] = c * x + r.s * y;
            m[(kill, j)] = c * y - r.s.conj() * x;
        }
    }
}

/// Columns `keep` and `kill` are rotated over all rows of both matrices;
/// build the rotation with [`col_rot`] from the row entry to annihilate.
fn cols<T: Real>(h: &mut CMat<T>, t: &mut CMat<T>, keep: usize, kill: usize, r: Rot<T>) {
    let c = creal(r.c);
    for m in [h, t] {
        for i in 0..m.nrows() {
            let x = m[(i, keep)];
            let y = m[(i, kill)];
            m[(i, keep)] = x * c + y * r.s.conj();
            m[(i, kill)] = y * c - x * r.s;
        }
    }
}

fn col_rot<T: Real>(f: C<T>, g: C<T>) -> Rot<T> {
    lartg(f.conj(), g.conj())
}

fn csqrt<T: Real>(z: C<T>) -> C<T> {
    <C<T> as ComplexField>::sqrt(z)
}

/// Reduces `(h, t)` to upper Hessenberg / upper triangular form.
fn hessenberg_triangular<T: Real>(h: &mut CMat<T>, t: &mut CMat<T>) {
    let n = h.nrows();
    for j in 0..n {
        for i in (j + 1..n).rev() {
            let r = lartg(t[(i - 1, j)], t[(i, j)]);
            rows(h, t, i - 1, i, r);
            t[(i, j)] = czero();
        }
    }
    for j in 0..n.saturating_sub(2) {
        for i in (j + 2..n).rev() {
            let r = lartg(h[(i - 1, j)], h[(i, j)]);
            rows(h, t, i - 1, i, r);
            h[(i, j)] = czero();
            let r = col_rot(t[(i, i)], t[(i, i - 1)]);
            cols(h, t, i, i - 1, r);
            t[(i, i - 1)] = czero();
        }
    }
}

/// Eigenvalue of the trailing 2x2 pencil closest to `h[l,l]/t[l,l]`.
fn wilkinson_shift<T: Real>(h: &CMat<T>, t: &CMat<T>, l: usize) -> C<T> {
    let (a11, a12, a21, a22) = (h[(l - 1, l - 1)], h[(l - 1, l)], h[(l, l - 1)], h[(l, l)]);
    let (b11, b12, b22) = (t[(l - 1, l - 1)], t[(l - 1, l)], t[(l, l)]);
    let qa = b11 * b22;
    let qb = -(a11 * b22 + a22 * b11 - a21 * b12);
    let qc = a11 * a22 - a12 * a21;
    let target = a22 / b22;
    let disc = csqrt(qb * qb - qa * qc * creal(lit::<T>(4.0)));
    let plus = qb + disc;
    let minus = qb - disc;
    let q = if abs(plus) >= abs(minus) { plus } else { minus } * creal(lit::<T>(-0.5));
    if abs(q) == T::zero() || abs(qa) == T::zero() {
        return target;
    }
    let r1 = q / qa;
    let r2 = qc / q;
    if abs(r1 - target) <= abs(r2 - target) {
        r1
    } else {
        r2
    }
}

/// One implicit single-shift sweep on the active block `f..=l`.
fn sweep<T: Real>(h: &mut CMat<T>, t: &mut CMat<T>, f: usize, l: usize, shift: C<T>) {
    let r = lartg(h[(f, f)] - shift * t[(f, f)], h[(f + 1, f)]);
    rows(h, t, f, f + 1, r);
    for i in f..l {
        if i > f {
            let r = lartg(h[(i, i - 1)], h[(i + 1, i - 1)]);
            rows(h, t, i, i + 1, r);
            h[(i + 1, i - 1)] = czero();
        }
        let r = col_rot(t[(i + 1, i + 1)], t[(i + 1, i)]);
        cols(h, t, i + 1, i, r);
        t[(i + 1, i)] = czero();
    }
}

/// Moves a zero at `t[j,j]` down to `t[l,l]`, keeping the Hessenberg form.
fn chase_zero<T: Real>(h: &mut CMat<T>, t: &mut CMat<T>, j: usize, l: usize) {
    for k in j..l {
        let r = lartg(t[(k, k + 1)], t[(k + 1, k + 1)]);
        rows(h, t, k, k + 1, r);
        t[(k + 1, k + 1)] = czero();
        let r = col_rot(h[(k + 1, k)], h[(k + 1, k - 1)]);
        cols(h, t, k, k - 1, r);
        h[(k + 1, k - 1)] = czero();
    }
}

/// Generalized eigenvalues of `A - λB` as `(α, β)` pairs.
pub fn eigenvalues<T: Real>(a: &CMat<T>, b: &CMat<T>) -> Result<Vec<(C<T>, C<T>)>> {
    let n = a.nrows();
    if a.shape() != (n, n) || b.shape() != (n, n) {
        return Err(Error::ShapeMismatch("QZ needs two square matrices of equal size".into()));
    }
    let mut out = vec![(czero(), czero()); n];
    if n == 0 {
        return Ok(out);
    }
    let mut h = a.clone();
    let mut t = b.clone();
    hessenberg_triangular(&mut h, &mut t);

    let tiny = lit::<T>(f64::MIN_POSITIVE);
    let ulp = eps::<T>();
    let atol = (ulp * fro(&h)).max(tiny);
    let btol = (ulp * fro(&t)).max(tiny);
    let max_iter = 100 * n + 200;
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut l = n - 1;

    loop {
        if l == 0 {
            out[0] = (h[(0, 0)], t[(0, 0)]);
            break;
        }
        if abs(h[(l, l - 1)]) <= atol {
            h[(l, l - 1)] = czero();
            out[l] = (h[(l, l)], t[(l, l)]);
            l -= 1;
            since_deflation = 0;
            continue;
        }
        if abs(t[(l, l)]) <= btol {
            t[(l, l)] = czero();
            let r = col_rot(h[(l, l)], h[(l, l - 1)]);
            cols(&mut h, &mut t, l, l - 1, r);
            h[(l, l - 1)] = czero();
            out[l] = (h[(l, l)], czero());
            l -= 1;
            since_deflation = 0;
            continue;
        }

        // Find the top of the active unreduced block, handling zero
        // diagonal entries of `t` on the way.
        let mut first = None;
        let mut j = l - 1;
        loop {
            let top = j == 0 || abs(h[(j, j - 1)]) <= atol;
            if j > 0 && top {
                h[(j, j - 1)] = czero();
            }
            if abs(t[(j, j)]) <= btol {
                t[(j, j)] = czero();
                if top {
                    let r = lartg(h[(j, j)], h[(j + 1, j)]);
                    rows(&mut h, &mut t, j, j + 1, r);
                    h[(j + 1, j)] = czero();
                } else {
                    chase_zero(&mut h, &mut t, j, l);
                }
                break;
            }
            if top {
                first = Some(j);
                break;
            }
            j -= 1;
        }
        let Some(f) = first else { continue };

        total += 1;
        since_deflation += 1;
        if total > max_iter {
            return Err(Error::BackendFailure(format!("QZ did not converge after {total} sweeps")));
        }
        let shift = if since_deflation.is_multiple_of(10) {
            let bump = h[(l, l - 1)] / t[(l - 1, l - 1)];
            h[(l, l)] / t[(l, l)] + bump * creal(lit::<T>(0.75))
        } else {
            wilkinson_shift(&h, &t, l)
        };
        sweep(&mut h, &mut t, f, l, shift);
    }
    Ok(out)
}

/// Eigenvalues of a square matrix, through the same iteration with `B = I`.
pub fn standard_eigenvalues<T: Real>(a: &CMat<T>) -> Result<Vec<C<T>>> {
    let n = a.nrows();
    let pairs = eigenvalues(a, &CMat::identity(n, n))?;
    Ok(pairs.into_iter().map(|(al, be)| al / be).collect())
}
