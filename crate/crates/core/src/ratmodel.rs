//! Rational matrices `G(λ) = D(λ) + G_sp(λ)`.
//!
//! The polynomial part is a coefficient list in a [`PolyBasis`]; the strictly
//! proper part is one of the realization forms below. Evaluation, reversal and
//! the polynomial system matrix all work directly from these pieces.

use crate::basis::{to_monomial, PolyBasis};
use crate::error::{Error, Result};
use crate::linalg::{ct, eye, fro, hermitian_defect, lu_solve, max_abs, qz, rank, symmetry_defect, tr, zeros};
use crate::linearize::Pencil;
use crate::scalar::{abs, cone, czero, eps, lit, to_f64, CMat, Real, C};

/// Matrix polynomial `D_0 φ_0 + ... + D_k φ_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMat<T: Real> {
    pub basis: PolyBasis<T>,
    pub coeffs: Vec<CMat<T>>,
}

impl<T: Real> PolyMat<T> {
    /// Trailing zero coefficients are dropped so the degree is sharp.
    pub fn new(basis: PolyBasis<T>, mut coeffs: Vec<CMat<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Input("polynomial part needs at least one coefficient".into()));
        }
        let m = coeffs[0].nrows();
        if coeffs.iter().any(|d| d.shape() != (m, m)) {
            return Err(Error::ShapeMismatch("coefficients must all be m x m".into()));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|d| max_abs(d) == T::zero()) {
            coeffs.pop();
        }
        let k = coeffs.len() - 1;
        if basis.len() < k {
            return Err(Error::InvalidBasis(format!("degree {k} needs {k} recurrence coefficients")));
        }
        Ok(Self { basis, coeffs })
    }

    pub fn zero(m: usize) -> Self {
        Self { basis: PolyBasis::monomial(0), coeffs: vec![zeros(m, m)] }
    }

    pub fn m(&self) -> usize {
        self.coeffs[0].nrows()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|d| max_abs(d) == T::zero())
    }

    pub fn leading(&self) -> &CMat<T> {
        &self.coeffs[self.degree()]
    }

    pub fn eval(&self, lambda: C<T>) -> CMat<T> {
        let vals = self.basis.values_ascending(self.degree(), lambda).expect("basis length checked at construction");
        let m = self.m();
        let mut out = zeros(m, m);
        for (d, v) in self.coeffs.iter().zip(vals) {
            out += d * v;
        }
        out
    }

    pub fn monomial_coeffs(&self) -> Result<Vec<CMat<T>>> {
        to_monomial(&self.basis, &self.coeffs)
    }

    /// Largest relative defect over coefficients.
    pub fn symmetry_defect(&self) -> T {
        self.coeffs.iter().map(symmetry_defect).fold(T::zero(), |a, b| a.max(b))
    }

    pub fn hermitian_defect(&self) -> T {
        self.coeffs.iter().map(hermitian_defect).fold(T::zero(), |a, b| a.max(b))
    }

    pub fn scale(&self) -> T {
        self.coeffs.iter().map(fro).fold(T::zero(), |a, b| a.max(b))
    }
}

/// `G_sp(λ) = C (λI - A)^{-1} B`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateSpace<T: Real> {
    pub a: CMat<T>,
    pub b: CMat<T>,
    pub c: CMat<T>,
}

impl<T: Real> StateSpace<T> {
    pub fn new(a: CMat<T>, b: CMat<T>, c: CMat<T>) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n || b.nrows() != n || c.ncols() != n {
            return Err(Error::ShapeMismatch(format!(
                "A {:?}, B {:?}, C {:?} are inconsistent",
                a.shape(),
                b.shape(),
                c.shape()
            )));
        }
        Ok(Self { a, b, c })
    }

    pub fn empty(m: usize) -> Self {
        Self::empty_rect(m, m)
    }

    /// Zero-state realization of a `p x m` transfer function.
    pub fn empty_rect(p: usize, m: usize) -> Self {
        Self { a: zeros(0, 0), b: zeros(0, m), c: zeros(p, 0) }
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn eval(&self, lambda: C<T>) -> Result<CMat<T>> {
        let n = self.n();
        if n == 0 {
            return Ok(zeros(self.c.nrows(), self.b.ncols()));
        }
        let res = eye::<T>(n) * lambda - &self.a;
        let x = lu_solve(&res, &self.b, pivot_tol::<T>(n)).ok_or_else(|| pole(lambda))?;
        Ok(&self.c * x)
    }

    pub fn controllability(&self) -> CMat<T> {
        let (n, m) = (self.n(), self.b.ncols());
        let mut out = zeros(n, n * m);
        let mut blk = self.b.clone();
        for i in 0..n {
            out.view_mut((0, i * m), (n, m)).copy_from(&blk);
            blk = &self.a * blk;
        }
        out
    }

    pub fn observability(&self) -> CMat<T> {
        let (n, p) = (self.n(), self.c.nrows());
        let mut out = zeros(n * p, n);
        let mut blk = self.c.clone();
        for i in 0..n {
            out.view_mut((i * p, 0), (p, n)).copy_from(&blk);
            blk *= &self.a;
        }
        out
    }
}

/// `G_sp(λ) = W (λS_1 - S_2)^{-1} W^T` with symmetric `S_1`, `S_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricRealization<T: Real> {
    pub s1: CMat<T>,
    pub s2: CMat<T>,
    pub w: CMat<T>,
}

/// `G_sp(λ) = W (λH_1 - H_2)^{-1} W^*` with Hermitian `H_1`, `H_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianRealization<T: Real> {
    pub h1: CMat<T>,
    pub h2: CMat<T>,
    pub w: CMat<T>,
}

/// Strictly proper part in one of the supported forms.
#[derive(Clone, Debug, PartialEq)]
pub enum StrictlyProper<T: Real> {
    Zero,
    StateSpace(StateSpace<T>),
    Symmetric(SymmetricRealization<T>),
    Hermitian(HermitianRealization<T>),
}

impl<T: Real> StrictlyProper<T> {
    pub fn n(&self) -> usize {
        match self {
            StrictlyProper::Zero => 0,
            StrictlyProper::StateSpace(s) => s.n(),
            StrictlyProper::Symmetric(s) => s.s1.nrows(),
            StrictlyProper::Hermitian(h) => h.h1.nrows(),
        }
    }

    /// Equivalent `(A, B, C)`: `A = S_1^{-1} S_2`, `B = S_1^{-1} W^T`, `C = W`
    /// (and the conjugate-transpose analogue for Hermitian forms).
    pub fn to_state_space(&self, m: usize) -> Result<StateSpace<T>> {
        let tol = pivot_tol::<T>(self.n());
        match self {
            StrictlyProper::Zero => Ok(StateSpace::empty(m)),
            StrictlyProper::StateSpace(s) => Ok(s.clone()),
            StrictlyProper::Symmetric(s) => {
                if s.s1.nrows() == 0 {
                    return Ok(StateSpace::empty(m));
                }
                let a = lu_solve(&s.s1, &s.s2, tol).ok_or(Error::SingularTransform("S1"))?;
                let b = lu_solve(&s.s1, &tr(&s.w), tol).ok_or(Error::SingularTransform("S1"))?;
                StateSpace::new(a, b, s.w.clone())
            }
            StrictlyProper::Hermitian(h) => {
                if h.h1.nrows() == 0 {
                    return Ok(StateSpace::empty(m));
                }
                let a = lu_solve(&h.h1, &h.h2, tol).ok_or(Error::SingularTransform("H1"))?;
                let b = lu_solve(&h.h1, &ct(&h.w), tol).ok_or(Error::SingularTransform("H1"))?;
                StateSpace::new(a, b, h.w.clone())
            }
        }
    }

    pub fn eval(&self, lambda: C<T>, m: usize) -> Result<CMat<T>> {
        let n = self.n();
        let tol = pivot_tol::<T>(n);
        match self {
            StrictlyProper::Zero => Ok(zeros(m, m)),
            StrictlyProper::StateSpace(s) => s.eval(lambda),
            StrictlyProper::Symmetric(s) => {
                if n == 0 {
                    return Ok(zeros(m, m));
                }
                let res = &s.s1 * lambda - &s.s2;
                let x = lu_solve(&res, &tr(&s.w), tol).ok_or_else(|| pole(lambda))?;
                Ok(&s.w * x)
            }
            StrictlyProper::Hermitian(h) => {
                if n == 0 {
                    return Ok(zeros(m, m));
                }
                let res = &h.h1 * lambda - &h.h2;
                let x = lu_solve(&res, &ct(&h.w), tol).ok_or_else(|| pole(lambda))?;
                Ok(&h.w * x)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    General,
    Symmetric,
    Hermitian,
}

impl Structure {
    pub fn name(self) -> &'static str {
        match self {
            Structure::General => "general",
            Structure::Symmetric => "symmetric",
            Structure::Hermitian => "hermitian",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix<T: Real> {
    pub poly: PolyMat<T>,
    pub sp: StrictlyProper<T>,
    pub structure: Structure,
}

/// Relative tolerance for structural checks on input data.
fn structure_tol<T: Real>() -> T {
    lit(1e-12)
}

impl<T: Real> RationalMatrix<T> {
    pub fn new(poly: PolyMat<T>, sp: StrictlyProper<T>, structure: Structure) -> Result<Self> {
        let m = poly.m();
        let n = sp.n();
        let shape_ok = match &sp {
            StrictlyProper::Zero => true,
            StrictlyProper::StateSpace(s) => s.b.ncols() == m && s.c.nrows() == m,
            StrictlyProper::Symmetric(s) => s.s1.shape() == (n, n) && s.s2.shape() == (n, n) && s.w.shape() == (m, n),
            StrictlyProper::Hermitian(h) => h.h1.shape() == (n, n) && h.h2.shape() == (n, n) && h.w.shape() == (m, n),
        };
        if !shape_ok {
            return Err(Error::ShapeMismatch("realization does not match the size of D".into()));
        }
        let tol = structure_tol::<T>();
        match structure {
            Structure::General => {}
            Structure::Symmetric => {
                let d = poly.symmetry_defect();
                if d > tol {
                    return Err(Error::NotSymmetric(format!("coefficient defect {:e}", to_f64(d))));
                }
                match &sp {
                    StrictlyProper::Zero | StrictlyProper::StateSpace(_) => {}
                    StrictlyProper::Symmetric(s) => {
                        let d = symmetry_defect(&s.s1).max(symmetry_defect(&s.s2));
                        if d > tol {
                            return Err(Error::NotSymmetric(format!("S1/S2 defect {:e}", to_f64(d))));
                        }
                    }
                    StrictlyProper::Hermitian(_) => {
                        return Err(Error::NotSymmetric("Hermitian realization given".into()))
                    }
                }
            }
            Structure::Hermitian => {
                let d = poly.hermitian_defect();
                if d > tol {
                    return Err(Error::NotHermitian(format!("coefficient defect {:e}", to_f64(d))));
                }
                if !poly.basis.is_real() {
                    return Err(Error::NonRealBasis);
                }
                match &sp {
                    StrictlyProper::Zero | StrictlyProper::StateSpace(_) => {}
                    StrictlyProper::Hermitian(h) => {
                        let d = hermitian_defect(&h.h1).max(hermitian_defect(&h.h2));
                        if d > tol {
                            return Err(Error::NotHermitian(format!("H1/H2 defect {:e}", to_f64(d))));
                        }
                    }
                    StrictlyProper::Symmetric(s) => {
                        let real = |x: &CMat<T>| x.iter().all(|z| z.im == T::zero());
                        if !(real(&s.s1) && real(&s.s2) && real(&s.w)) {
                            return Err(Error::NotHermitian("complex symmetric realization given".into()));
                        }
                    }
                }
            }
        }
        Ok(Self { poly, sp, structure })
    }

    pub fn polynomial(poly: PolyMat<T>) -> Self {
        Self { poly, sp: StrictlyProper::Zero, structure: Structure::General }
    }

    pub fn m(&self) -> usize {
        self.poly.m()
    }

    pub fn k(&self) -> usize {
        self.poly.degree()
    }

    pub fn n(&self) -> usize {
        self.sp.n()
    }

    pub fn state_space(&self) -> Result<StateSpace<T>> {
        self.sp.to_state_space(self.m())
    }

    pub fn eval(&self, lambda: C<T>) -> Result<CMat<T>> {
        Ok(self.poly.eval(lambda) + self.sp.eval(lambda, self.m())?)
    }

    /// Termwise magnitude `Σ_j |φ_j(λ)| ‖D_j‖ + ‖G_sp(λ)‖` (Frobenius), an
    /// upper bound on `‖G(λ)‖` that does not collapse at an eigenvalue.
    /// Residuals of eigenvectors are measured against it.
    pub fn eval_scale(&self, lambda: C<T>) -> Result<T> {
        let phi = self.poly.basis.values_ascending(self.k(), lambda)?;
        let mut acc = T::zero();
        for (p, d) in phi.iter().zip(&self.poly.coeffs) {
            acc += abs(*p) * fro(d);
        }
        Ok(acc + fro(&self.sp.eval(lambda, self.m())?))
    }

    /// `rev G(λ) = λ^d G(1/λ)` with `d = deg D` (0 when `D = 0`).
    pub fn rev_eval(&self, lambda: C<T>) -> Result<CMat<T>> {
        let d = if self.poly.is_zero() { 0 } else { self.k() };
        if lambda == czero() {
            if d == 0 {
                // G_sp vanishes at infinity.
                return Ok(self.poly.coeffs[0].clone());
            }
            let lc = self.poly.basis.leading_coefficient(d)?;
            return Ok(self.poly.leading() * lc);
        }
        let inv = cone::<T>() / lambda;
        Ok(self.eval(inv)? * lambda.powu(d as u32))
    }

    pub fn system_matrix(&self) -> Result<SystemMatrix<T>> {
        Ok(SystemMatrix { ss: self.state_space()?, d: self.poly.clone() })
    }
}

/// `P(λ) = [λI - A, B; -C, D(λ)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemMatrix<T: Real> {
    pub ss: StateSpace<T>,
    pub d: PolyMat<T>,
}

impl<T: Real> SystemMatrix<T> {
    pub fn size(&self) -> usize {
        self.ss.n() + self.d.m()
    }

    pub fn eval(&self, lambda: C<T>) -> CMat<T> {
        let (n, m) = (self.ss.n(), self.d.m());
        let mut p = zeros(n + m, n + m);
        p.view_mut((0, 0), (n, n)).copy_from(&(eye::<T>(n) * lambda - &self.ss.a));
        p.view_mut((0, n), (n, m)).copy_from(&self.ss.b);
        p.view_mut((n, 0), (m, n)).copy_from(&(-&self.ss.c));
        p.view_mut((n, n), (m, m)).copy_from(&self.d.eval(lambda));
        p
    }

    /// Schur complement `D(λ) + C (λI - A)^{-1} B`.
    pub fn transfer(&self, lambda: C<T>) -> Result<CMat<T>> {
        Ok(self.d.eval(lambda) + self.ss.eval(lambda)?)
    }

    /// Upper bound on the degree of `det P`.
    pub fn det_degree_bound(&self) -> usize {
        self.ss.n() + self.d.degree() * self.d.m()
    }
}

/// Pole/residue description `Σ R_i / (λ - p_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleResidue<T: Real> {
    pub poles: Vec<C<T>>,
    pub residues: Vec<CMat<T>>,
}

impl<T: Real> PoleResidue<T> {
    pub fn eval(&self, lambda: C<T>, m: usize) -> CMat<T> {
        let mut out = zeros(m, m);
        for (p, r) in self.poles.iter().zip(&self.residues) {
            out += r * (cone::<T>() / (lambda - p));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    pub minimal: bool,
    pub ctrb_rank: usize,
    pub obsv_rank: usize,
    pub n: usize,
}

/// Rank test on the controllability and observability matrices.
pub fn is_minimal<T: Real>(r: &StateSpace<T>, tol: T) -> Result<MinimalityReport> {
    let n = r.n();
    if n == 0 {
        return Ok(MinimalityReport { minimal: true, ctrb_rank: 0, obsv_rank: 0, n });
    }
    let ctrb_rank = rank(&r.controllability(), tol)?;
    let obsv_rank = rank(&r.observability(), tol)?;
    Ok(MinimalityReport { minimal: ctrb_rank == n && obsv_rank == n, ctrb_rank, obsv_rank, n })
}

/// Least-order test on the state blocks of a pencil.
///
/// With `A_1λ + A_0` the `(1,1)` block, `C_1λ + C_0` the block below it and
/// `B_1λ + B_0` the block to its right, the pencil realizes its transfer
/// function with least order iff `A_1` is invertible and both stacked
/// matrices keep rank `n` at every eigenvalue of `A_1λ + A_0`.
pub fn check_least_order<T: Real>(l: &Pencil<T>, tol: T) -> Result<bool> {
    let n = l.meta.n;
    if n == 0 {
        return Ok(true);
    }
    let big = l.x.nrows();
    let a1 = l.x.view((0, 0), (n, n)).clone_owned();
    let a0 = l.y.view((0, 0), (n, n)).clone_owned();
    if rank(&a1, tol)? < n {
        if a_block_degenerate(&a1, &a0, tol)? {
            return Err(Error::DegenerateABlock);
        }
        return Ok(false);
    }
    let mus = qz::eigenvalues(&(-&a0), &a1)?;
    for (al, be) in mus {
        if abs(be) == T::zero() {
            continue;
        }
        let mu = al / be;
        let at = |r0: usize, c0: usize, nr: usize, nc: usize| {
            l.x.view((r0, c0), (nr, nc)).clone_owned() * mu + l.y.view((r0, c0), (nr, nc))
        };
        let col = {
            let mut s = zeros(big, n);
            s.view_mut((0, 0), (big, n)).copy_from(&at(0, 0, big, n));
            s
        };
        let row = at(0, 0, n, big);
        if rank(&col, tol)? < n || rank(&row, tol)? < n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `det(A_1λ + A_0) ≡ 0`, probed at a few fixed points.
fn a_block_degenerate<T: Real>(a1: &CMat<T>, a0: &CMat<T>, tol: T) -> Result<bool> {
    let n = a1.nrows();
    for (re, im) in [(0.37, 0.11), (-1.3, 0.7), (2.1, -0.4)] {
        let mu = C::new(lit::<T>(re), lit::<T>(im));
        if rank(&(a1 * mu + a0), tol)? == n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pivot cutoff for resolvent solves.
pub(crate) fn pivot_tol<T: Real>(n: usize) -> T {
    eps::<T>() * lit::<T>(10.0 * (n.max(1) as f64))
}

fn pole<T: Real>(lambda: C<T>) -> Error {
    Error::PoleAt(to_f64(lambda.re), to_f64(lambda.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{standard_basis, BasisKind};
    use crate::scalar::cx;

    fn c(x: f64) -> C<f64> {
        cx(x, 0.0)
    }

    fn s(x: f64) -> CMat<f64> {
        CMat::from_element(1, 1, c(x))
    }

    fn mono(k: usize) -> PolyBasis<f64> {
        PolyBasis::monomial(k)
    }

    /// `λ² - 1 + 1/λ`.
    pub(crate) fn scalar_example() -> RationalMatrix<f64> {
        let poly = PolyMat::new(mono(2), vec![s(-1.0), s(0.0), s(1.0)]).unwrap();
        let ss = StateSpace::new(s(0.0), s(1.0), s(1.0)).unwrap();
        RationalMatrix::new(poly, StrictlyProper::StateSpace(ss), Structure::General).unwrap()
    }

    #[test]
    fn eval_examples() {
        let g = scalar_example();
        assert!((g.eval(c(2.0)).unwrap()[(0, 0)] - c(3.5)).norm() < 1e-15);
        let ss = StateSpace::new(s(0.0), s(2.0), s(1.0)).unwrap();
        let g = RationalMatrix::new(PolyMat::zero(1), StrictlyProper::StateSpace(ss), Structure::General).unwrap();
        assert!((g.eval(c(1.0)).unwrap()[(0, 0)] - c(2.0)).norm() < 1e-15);
        assert!(matches!(g.eval(c(0.0)), Err(Error::PoleAt(..))));
    }

    #[test]
    fn rev_eval_examples() {
        let d = PolyMat::new(
            mono(2),
            vec![
                CMat::zeros(2, 2),
                CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.0), c(1.0)])),
                CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(0.0)])),
            ],
        )
        .unwrap();
        let g = RationalMatrix::polynomial(d);
        let r = g.rev_eval(c(0.0)).unwrap();
        assert_eq!(r, CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(0.0)])));

        let cheb = PolyBasis::ThreeTerm(standard_basis(BasisKind::Chebyshev1, 2).unwrap());
        let z = CMat::<f64>::zeros(2, 2);
        let g = RationalMatrix::polynomial(PolyMat::new(cheb, vec![z.clone(), z, CMat::identity(2, 2)]).unwrap());
        assert_eq!(g.rev_eval(c(0.0)).unwrap(), CMat::identity(2, 2) * c(2.0));

        let ss = StateSpace::new(s(0.0), s(1.0), s(1.0)).unwrap();
        let g = RationalMatrix::new(PolyMat::zero(1), StrictlyProper::StateSpace(ss), Structure::General).unwrap();
        assert!((g.rev_eval(c(2.0)).unwrap()[(0, 0)] - c(2.0)).norm() < 1e-15);
    }

    #[test]
    fn rev_matches_definition() {
        let g = scalar_example();
        for l in [c(0.3), cx(1.1, -0.4), c(-2.5)] {
            let lhs = g.rev_eval(l).unwrap();
            let rhs = g.eval(c(1.0) / l).unwrap() * l.powu(2);
            assert!((&lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn system_matrix_example() {
        let p = scalar_example().system_matrix().unwrap();
        let at = p.eval(c(3.0));
        let want = CMat::from_row_slice(2, 2, &[c(3.0), c(1.0), c(-1.0), c(8.0)]);
        assert_eq!(at, want);
        assert!((p.transfer(c(2.0)).unwrap()[(0, 0)] - c(3.5)).norm() < 1e-15);
        assert_eq!(p.det_degree_bound(), 3);
    }

    #[test]
    fn minimality_examples() {
        let ss = StateSpace::new(s(0.0), s(1.0), s(1.0)).unwrap();
        assert!(is_minimal(&ss, 1e-10).unwrap().minimal);
        let ss = StateSpace::new(
            CMat::identity(2, 2),
            CMat::from_row_slice(2, 1, &[c(1.0), c(0.0)]),
            CMat::from_row_slice(1, 2, &[c(1.0), c(0.0)]),
        )
        .unwrap();
        let rep = is_minimal(&ss, 1e-10).unwrap();
        assert!(!rep.minimal);
        assert_eq!(rep.ctrb_rank, 1);
    }

    #[test]
    fn symmetric_input_is_checked() {
        let d = PolyMat::new(mono(1), vec![CMat::from_row_slice(2, 2, &[c(1.0), c(2.0), c(3.0), c(4.0)])]).unwrap();
        assert!(matches!(
            RationalMatrix::new(d, StrictlyProper::Zero, Structure::Symmetric),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn trailing_zero_coefficients_are_trimmed() {
        let d = PolyMat::new(mono(3), vec![s(1.0), s(2.0), s(0.0), s(0.0)]).unwrap();
        assert_eq!(d.degree(), 1);
    }
}
