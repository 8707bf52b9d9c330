//! Symmetric, Hermitian and odd-degree block Kronecker linearizations.

use crate::error::{Error, Result};
use crate::linalg::{ct, is_real_mat, kron, tr, unit, zeros};
use crate::ratmodel::{HermitianRealization, RationalMatrix, StrictlyProper, Structure, SymmetricRealization};
use crate::realize::{to_hermitian_realization, to_symmetric_realization};
use crate::scalar::{cone, lit, CMat, Real, C};

use super::{is_singular, meta, mirror_hermitian, mirror_symmetric, solve_dm_pencil, Family, Pencil};

fn rank_tol<T: Real>() -> T {
    lit(1e-10)
}

fn symmetric_realization<T: Real>(g: &RationalMatrix<T>) -> Result<SymmetricRealization<T>> {
    let m = g.m();
    match &g.sp {
        StrictlyProper::Zero => Ok(SymmetricRealization { s1: zeros(0, 0), s2: zeros(0, 0), w: zeros(m, 0) }),
        StrictlyProper::Symmetric(s) => Ok(s.clone()),
        StrictlyProper::StateSpace(ss) => to_symmetric_realization(ss, rank_tol()),
        StrictlyProper::Hermitian(_) => Err(Error::NotSymmetric("Hermitian realization given".into())),
    }
}

fn hermitian_realization<T: Real>(g: &RationalMatrix<T>) -> Result<HermitianRealization<T>> {
    let m = g.m();
    match &g.sp {
        StrictlyProper::Zero => Ok(HermitianRealization { h1: zeros(0, 0), h2: zeros(0, 0), w: zeros(m, 0) }),
        StrictlyProper::Hermitian(h) => Ok(h.clone()),
        StrictlyProper::Symmetric(s) if is_real_mat(&s.s1) && is_real_mat(&s.s2) && is_real_mat(&s.w) => {
            Ok(HermitianRealization { h1: s.s1.clone(), h2: s.s2.clone(), w: s.w.clone() })
        }
        StrictlyProper::Symmetric(_) => Err(Error::NotHermitian("complex symmetric realization given".into())),
        StrictlyProper::StateSpace(ss) => to_hermitian_realization(ss, rank_tol()),
    }
}

/// Shared assembly of
/// `[[μZ(S2-λS1)Z^♯, [0 … μZW^♯]], [(0; μWZ^♯), μL_DM(λ)]]`
/// where `♯` is `T` or `*` and `L_DM` has ansatz vector `e_k`.
fn assemble<T: Real>(
    g: &RationalMatrix<T>,
    s1: &CMat<T>,
    s2: &CMat<T>,
    w: &CMat<T>,
    mu: C<T>,
    z: &CMat<T>,
    hermitian: bool,
) -> Result<Pencil<T>> {
    let (k, m, n) = (g.k(), g.m(), s1.nrows());
    if k < 2 {
        return Err(Error::DegreeTooLow(k));
    }
    if is_singular(g.poly.leading())? {
        return Err(Error::SingularLeadingCoefficient);
    }
    if z.shape() != (n, n) {
        return Err(Error::ShapeMismatch(format!("Z must be {n}x{n}")));
    }
    if n > 0 && is_singular(z)? {
        return Err(Error::SingularXY);
    }
    let sharp = |a: &CMat<T>| if hermitian { ct(a) } else { tr(a) };
    let ek = unit(k, k - 1);
    let dm = solve_dm_pencil(&g.poly, &ek)?;
    let p = k * m;
    let mut x = zeros(n + p, n + p);
    let mut y = zeros(n + p, n + p);
    x.view_mut((n, n), (p, p)).copy_from(&(&dm.x * mu));
    y.view_mut((n, n), (p, p)).copy_from(&(&dm.y * mu));
    if n > 0 {
        let zs = sharp(z);
        x.view_mut((0, 0), (n, n)).copy_from(&(-(z * s1 * &zs) * mu));
        y.view_mut((0, 0), (n, n)).copy_from(&(z * s2 * &zs * mu));
        y.view_mut((0, n + p - m), (n, m)).copy_from(&(z * sharp(w) * mu));
        y.view_mut((n + p - m, 0), (m, n)).copy_from(&(w * &zs * mu));
    }
    if hermitian {
        mirror_hermitian(&mut x);
        mirror_hermitian(&mut y);
    } else {
        mirror_symmetric(&mut x);
        mirror_symmetric(&mut y);
    }
    let family = if hermitian { Family::Herm } else { Family::Sym };
    Ok(Pencil { x, y, meta: meta(n, &g.poly, family, Some(ek * mu)) })
}

/// Symmetric strong linearization from the DM pencil with ansatz `e_k`.
/// Needs a nonsingular leading coefficient.
pub fn build_symmetric<T: Real>(g: &RationalMatrix<T>, mu: C<T>, z: &CMat<T>) -> Result<Pencil<T>> {
    if g.structure != Structure::Symmetric {
        return Err(Error::NotSymmetric("rational matrix is not tagged symmetric".into()));
    }
    if mu == C::new(T::zero(), T::zero()) {
        return Err(Error::Input("mu must be nonzero".into()));
    }
    let r = symmetric_realization(g)?;
    assemble(g, &r.s1, &r.s2, &r.w, mu, z, false)
}

/// Hermitian strong linearization; `μ` must be real and the basis real.
pub fn build_hermitian<T: Real>(g: &RationalMatrix<T>, mu: C<T>, z: &CMat<T>) -> Result<Pencil<T>> {
    if mu.im != T::zero() {
        return Err(Error::NonRealMu);
    }
    if mu.re == T::zero() {
        return Err(Error::Input("mu must be nonzero".into()));
    }
    if !g.poly.basis.is_real() {
        return Err(Error::NonRealBasis);
    }
    let eligible = match g.structure {
        Structure::Hermitian => true,
        // Real symmetric data is Hermitian as well.
        Structure::Symmetric => g.poly.coeffs.iter().all(is_real_mat),
        Structure::General => false,
    };
    if !eligible {
        return Err(Error::NotHermitian("rational matrix is not tagged Hermitian".into()));
    }
    let r = hermitian_realization(g)?;
    assemble(g, &r.h1, &r.h2, &r.w, mu, z, true)
}

/// Symmetric block Kronecker pencil for odd degree `k = 2q+1` (monomial basis):
///
/// ```text
/// [ X(S2-λS1)X^T   (0  XW^T)   0          ]
/// [ (0; WX^T)      M(λ)        L_q^T ⊗ I  ]
/// [ 0              L_q ⊗ I     0          ]
/// ```
///
/// with `M(λ) = diag(D_{2q+1}λ + D_{2q}, ..., D_1λ + D_0)` and `L_q` rows `[-1, λ]`.
pub fn build_block_kronecker_symmetric_odd<T: Real>(g: &RationalMatrix<T>, xs: &CMat<T>) -> Result<Pencil<T>> {
    if !g.poly.basis.is_monomial() {
        return Err(Error::InvalidBasis("block Kronecker pencils need the monomial basis".into()));
    }
    let k = g.k();
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::EvenDegree(k));
    }
    if g.structure != Structure::Symmetric {
        return Err(Error::NotSymmetric("rational matrix is not tagged symmetric".into()));
    }
    let r = symmetric_realization(g)?;
    let (n, m, q) = (r.s1.nrows(), g.m(), (k - 1) / 2);
    if xs.shape() != (n, n) {
        return Err(Error::ShapeMismatch(format!("X must be {n}x{n}")));
    }
    if n > 0 && is_singular(xs)? {
        return Err(Error::SingularXY);
    }
    let d = &g.poly.coeffs;
    let p = k * m;
    let mut x = zeros(n + p, n + p);
    let mut y = zeros(n + p, n + p);
    for b in 0..=q {
        let at = n + b * m;
        let hi = 2 * (q - b) + 1;
        x.view_mut((at, at), (m, m)).copy_from(&d[hi]);
        y.view_mut((at, at), (m, m)).copy_from(&d[hi - 1]);
    }
    let mut lx = zeros::<T>(q, q + 1);
    let mut ly = zeros::<T>(q, q + 1);
    for i in 0..q {
        ly[(i, i)] = -cone::<T>();
        lx[(i, i + 1)] = cone();
    }
    let im = crate::linalg::eye::<T>(m);
    let (kx, ky) = (kron(&lx, &im), kron(&ly, &im));
    let (r0, c0) = (n + (q + 1) * m, n);
    x.view_mut((r0, c0), (q * m, (q + 1) * m)).copy_from(&kx);
    y.view_mut((r0, c0), (q * m, (q + 1) * m)).copy_from(&ky);
    x.view_mut((c0, r0), ((q + 1) * m, q * m)).copy_from(&kx.transpose());
    y.view_mut((c0, r0), ((q + 1) * m, q * m)).copy_from(&ky.transpose());
    if n > 0 {
        let xt = xs.transpose();
        x.view_mut((0, 0), (n, n)).copy_from(&(-(xs * &r.s1 * &xt)));
        y.view_mut((0, 0), (n, n)).copy_from(&(xs * &r.s2 * &xt));
        y.view_mut((0, n + q * m), (n, m)).copy_from(&(xs * r.w.transpose()));
        y.view_mut((n + q * m, 0), (m, n)).copy_from(&(&r.w * xt));
    }
    mirror_symmetric(&mut x);
    mirror_symmetric(&mut y);
    Ok(Pencil { x, y, meta: meta(n, &g.poly, Family::BkOdd, None) })
}
