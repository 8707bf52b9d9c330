//! Generalized eigenproblem of a pencil and the maps between eigenvectors of
//! the pencil and of the rational matrix it linearizes.
//!
//! Every readout is a constant `m x N` matrix `R` applied to a pencil
//! eigenvector. Strict-equivalence transforms are folded into `R`, so the same
//! code serves built and transformed pencils.

use log::{debug, warn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    eye, fro, full_svd, kron_vec_eye, left_null_space, lstsq, lu_solve, lu_solve_vec, null_space, qz, rank,
    smallest_right_singular, unit, vnorm, zeros,
};
use crate::linearize::{build_pencil, phi_kron, BuildOptions, Family, Pencil};
use crate::ratmodel::{RationalMatrix, SystemMatrix};
use crate::scalar::{abs, lit, rel_dist, to_f64, CMat, CVec, Real, C};

/// Relative gap below which two computed eigenvalues are treated as one
/// cluster. Defective eigenvalues split by roughly `eps^{1/j}` for Jordan
/// blocks of size `j`, which sets the floor.
pub fn cluster_tol<T: Real>(tol: T) -> T {
    tol.max(lit(1e-6))
}

/// `|μ| = |α/β|` above this (after norm balancing) counts as infinite.
const INFINITE_RATIO: f64 = 1e7;
/// Relative singular-value level below which a direction counts as null.
const NULL_RTOL: f64 = 1e-8;
const RANK_RTOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteEigen<T: Real> {
    /// Cluster mean.
    pub lambda: C<T>,
    /// Algebraic multiplicity (cluster size).
    pub multiplicity: usize,
    /// Right null vectors `z` of `L(λ)`.
    pub right: Vec<CVec<T>>,
    /// Left null vectors in the transpose convention, `zᵀ L(λ) = 0`.
    pub left: Vec<CVec<T>>,
    /// Eigenvalue coincides with an eigenvalue of the state block.
    pub pole: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InfiniteEigen<T: Real> {
    pub count: usize,
    pub right: Vec<CVec<T>>,
    pub left: Vec<CVec<T>>,
}

impl<T: Real> InfiniteEigen<T> {
    pub fn none() -> Self {
        Self { count: 0, right: vec![], left: vec![] }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenSolution<T: Real> {
    pub finite: Vec<FiniteEigen<T>>,
    pub infinite: InfiniteEigen<T>,
}

impl<T: Real> EigenSolution<T> {
    /// Finite eigenvalues repeated by multiplicity, optionally dropping
    /// pole-flagged clusters.
    pub fn eigenvalues(&self, skip_poles: bool) -> Vec<C<T>> {
        self.finite
            .iter()
            .filter(|e| !(skip_poles && e.pole))
            .flat_map(|e| std::iter::repeat_n(e.lambda, e.multiplicity))
            .collect()
    }

    pub fn pole_candidates(&self) -> Vec<C<T>> {
        self.finite.iter().filter(|e| e.pole).map(|e| e.lambda).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecoveredPair<T: Real> {
    /// Zero when `at_infinity`.
    pub lambda: C<T>,
    pub vector: CVec<T>,
    pub side: Side,
    pub at_infinity: bool,
}

/// Generalized eigenvalues of `λX + Y` with null vectors per cluster.
pub fn solve_gep<T: Real>(l: &Pencil<T>, tol: T) -> Result<EigenSolution<T>> {
    let big = l.size();
    if big == 0 {
        return Ok(EigenSolution { finite: vec![], infinite: InfiniteEigen::none() });
    }
    let (sx, sy) = (fro(&l.x), fro(&l.y));
    if sx == T::zero() {
        return Err(Error::SingularPencil);
    }
    let sy = if sy == T::zero() { T::one() } else { sy };
    // (-Y/sy) z = μ (X/sx) z with λ = μ sy/sx.
    let pairs =
        qz::eigenvalues(&(&l.y * C::new(-T::one() / sy, T::zero())), &(&l.x * C::new(T::one() / sx, T::zero())))?;
    let degenerate = lit::<T>(100.0 * big as f64) * crate::scalar::eps::<T>();
    let mut finite = Vec::new();
    let mut ratios = Vec::new();
    for &(a, b) in &pairs {
        if abs(a) <= degenerate && abs(b) <= degenerate {
            return Err(Error::SingularPencil);
        }
        if abs(b) * lit(INFINITE_RATIO) <= abs(a) {
            continue;
        }
        let mu = a / b;
        finite.push(mu * C::new(sy / sx, T::zero()));
        ratios.push(abs(mu));
    }
    // Geometric multiplicity at infinity bounds the algebraic one from below;
    // hand the largest leftovers to infinity if the threshold missed them.
    let geometric_inf = big - rank(&l.x, lit(RANK_RTOL))?;
    let mut inf_count = big - finite.len();
    if inf_count < geometric_inf {
        let mut order: Vec<usize> = (0..finite.len()).collect();
        order.sort_by(|&i, &j| ratios[j].partial_cmp(&ratios[i]).unwrap_or(std::cmp::Ordering::Equal));
        let drop: Vec<usize> = order.into_iter().take(geometric_inf - inf_count).collect();
        debug!("reclassifying {} large eigenvalues as infinite", drop.len());
        finite = finite.into_iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, v)| v).collect();
        inf_count = geometric_inf;
    }
    let ctol = cluster_tol(tol);
    let poles = state_eigenvalues(l)?;
    let mut out = Vec::new();
    for cluster in cluster(&finite, ctol) {
        let count = cluster.len();
        let mean =
            cluster.iter().fold(C::new(T::zero(), T::zero()), |acc, z| acc + z) / C::new(lit(count as f64), T::zero());
        let lv = l.eval(mean);
        let (right, r) = null_vectors(&lv, count)?;
        let (left, _) = null_vectors(&lv.transpose(), r)?;
        let pole = poles.iter().any(|p| rel_dist(*p, mean) <= ctol);
        let res_scale = abs(mean) * sx + fro(&l.y);
        for z in &right {
            let res = vnorm(&(&lv * z));
            if res > lit::<T>(1e-8) * res_scale * vnorm(z) {
                warn!("eigenvector residual {:.3e} at λ = {:?}", to_f64(res / res_scale), mean);
            }
        }
        out.push(FiniteEigen { lambda: mean, multiplicity: count, right, left, pole });
    }
    let infinite = if inf_count > 0 {
        InfiniteEigen {
            count: inf_count,
            right: cols_of(&null_space(&l.x, lit(RANK_RTOL))?),
            left: cols_of(&left_null_space(&l.x, lit(RANK_RTOL))?),
        }
    } else {
        InfiniteEigen::none()
    };
    Ok(EigenSolution { finite: out, infinite })
}

fn cols_of<T: Real>(m: &CMat<T>) -> Vec<CVec<T>> {
    (0..m.ncols()).map(|j| m.column(j).clone_owned()).collect()
}

/// Up to `max` null vectors of `a`, at least one.
fn null_vectors<T: Real>(a: &CMat<T>, max: usize) -> Result<(Vec<CVec<T>>, usize)> {
    let svd = full_svd(a)?;
    let q = a.ncols();
    let mut s = svd.s.clone();
    s.resize(q, T::zero());
    let smax = s.first().copied().unwrap_or(T::one());
    let count = s[q - max.min(q)..].iter().filter(|&&x| x <= lit::<T>(NULL_RTOL) * smax).count().max(1);
    Ok(((q - count..q).map(|j| svd.v.column(j).clone_owned()).collect(), count))
}

/// Single-linkage clustering under `rel_dist`.
fn cluster<T: Real>(vals: &[C<T>], ctol: T) -> Vec<Vec<C<T>>> {
    let n = vals.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if rel_dist(vals[i], vals[j]) <= ctol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<C<T>>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(vals[i]),
            None => groups.push((r, vec![vals[i]])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Eigenvalues of the state block `λX11 + Y11`.
fn state_eigenvalues<T: Real>(l: &Pencil<T>) -> Result<Vec<C<T>>> {
    let n = l.meta.n;
    if n == 0 {
        return Ok(vec![]);
    }
    let x11 = l.x.view((0, 0), (n, n)).clone_owned();
    let y11 = -l.y.view((0, 0), (n, n)).clone_owned();
    Ok(qz::eigenvalues(&y11, &x11)?.into_iter().filter(|(_, b)| abs(*b) > T::zero()).map(|(a, b)| a / b).collect())
}

fn select_block<T: Real>(big: usize, n: usize, m: usize, b: usize) -> CMat<T> {
    let mut r = zeros(m, big);
    r.view_mut((0, n + b * m), (m, m)).copy_from(&eye(m));
    r
}

fn select_ansatz<T: Real>(big: usize, n: usize, m: usize, v: &CVec<T>) -> CMat<T> {
    let mut r = zeros(m, big);
    let p = v.len() * m;
    r.view_mut((0, n), (m, p)).copy_from(&kron_vec_eye(v, m).transpose());
    r
}

/// The `m x N` readout `u = R z` for the given side, at a finite eigenvalue
/// or at infinity, in the coordinates of the (possibly transformed) pencil.
pub fn readout<T: Real>(l: &Pencil<T>, side: Side, at_infinity: bool) -> CMat<T> {
    let (n, k, m, big) = (l.meta.n, l.meta.k, l.meta.m, l.size());
    let v = l.meta.ansatz.clone().unwrap_or_else(|| unit(k, 0));
    let fam = l.meta.family;
    let base = match (fam, side, at_infinity) {
        (Family::BkOdd, _, false) => select_block(big, n, m, (k - 1) / 2),
        (Family::BkOdd, _, true) => select_block(big, n, m, 0),
        (Family::M2, Side::Right, _) => select_ansatz(big, n, m, &v),
        (Family::M2, Side::Left, false) => select_block(big, n, m, k - 1),
        (Family::M2, Side::Left, true) => select_block(big, n, m, 0),
        (_, Side::Right, false) => select_block(big, n, m, k - 1),
        (_, Side::Right, true) => select_block(big, n, m, 0),
        (_, Side::Left, _) => select_ansatz(big, n, m, &v),
    };
    match (&l.meta.transform, side) {
        (None, _) => base,
        (Some(t), Side::Right) => base * &t.right,
        (Some(t), Side::Left) => base * t.left.transpose(),
    }
}

fn normalized<T: Real>(u: CVec<T>) -> Option<CVec<T>> {
    let nu = vnorm(&u);
    (nu > T::zero()).then(|| u / C::new(nu, T::zero()))
}

fn recover<T: Real>(l: &Pencil<T>, sol: &EigenSolution<T>, side: Side) -> Vec<RecoveredPair<T>> {
    let r = readout(l, side, false);
    let mut out = Vec::new();
    for e in &sol.finite {
        if e.pole {
            debug!("skipping pole-flagged eigenvalue {:?}", e.lambda);
            continue;
        }
        let vecs = if side == Side::Right { &e.right } else { &e.left };
        for z in vecs {
            match normalized(&r * z) {
                Some(u) => out.push(RecoveredPair { lambda: e.lambda, vector: u, side, at_infinity: false }),
                None => warn!("readout vanished at λ = {:?}", e.lambda),
            }
        }
    }
    out
}

/// Right eigenvectors of `G` from right eigenvectors of the pencil.
pub fn recover_right<T: Real>(l: &Pencil<T>, sol: &EigenSolution<T>) -> Vec<RecoveredPair<T>> {
    recover(l, sol, Side::Right)
}

/// Left eigenvectors of `G` (transpose convention) from those of the pencil.
pub fn recover_left<T: Real>(l: &Pencil<T>, sol: &EigenSolution<T>) -> Vec<RecoveredPair<T>> {
    recover(l, sol, Side::Left)
}

/// Right and left null vectors of the leading coefficient, read off the
/// infinite eigenvectors. Empty when there is no infinite eigenvalue.
pub fn recover_infinity<T: Real>(l: &Pencil<T>, sol: &EigenSolution<T>) -> Vec<RecoveredPair<T>> {
    let mut out = Vec::new();
    for (side, vecs) in [(Side::Right, &sol.infinite.right), (Side::Left, &sol.infinite.left)] {
        let r = readout(l, side, true);
        for z in vecs {
            if let Some(u) = normalized(&r * z) {
                out.push(RecoveredPair { lambda: C::new(T::zero(), T::zero()), vector: u, side, at_infinity: true });
            }
        }
    }
    out
}

fn check_eigenpair<T: Real>(g: &RationalMatrix<T>, lambda: C<T>, u: &CVec<T>, side: Side, tol: T) -> Result<()> {
    let pole = || Error::PoleEigenvalue(to_f64(lambda.re), to_f64(lambda.im));
    let gv = g.eval(lambda).map_err(|_| pole())?;
    let r = match side {
        Side::Right => vnorm(&(&gv * u)),
        Side::Left => vnorm(&(gv.transpose() * u)),
    };
    let scale = g.eval_scale(lambda).map_err(|_| pole())? * vnorm(u);
    if r > tol * scale {
        let rel = if scale > T::zero() { to_f64(r / scale) } else { f64::INFINITY };
        return Err(Error::NotAnEigenpair(to_f64(lambda.re), to_f64(lambda.im), rel));
    }
    Ok(())
}

fn pole_guard<T: Real>(l: &Pencil<T>, lambda: C<T>) -> Result<CMat<T>> {
    let n = l.meta.n;
    let l11 = l.eval(lambda).view((0, 0), (n, n)).clone_owned();
    if n > 0 && lu_solve(&l11, &eye(n), crate::ratmodel::pivot_tol(n)).is_none() {
        return Err(Error::PoleEigenvalue(to_f64(lambda.re), to_f64(lambda.im)));
    }
    Ok(l11)
}

/// Pencil null vector `z` with readout `u`, from a basis of the pencil's null
/// space at `λ` (dimension taken from `G(λ)`).
fn lift_generic<T: Real>(
    g: &RationalMatrix<T>,
    l: &Pencil<T>,
    lambda: C<T>,
    u: &CVec<T>,
    side: Side,
) -> Result<CVec<T>> {
    let gv = g.eval(lambda)?;
    let gv = if side == Side::Left { gv.transpose() } else { gv };
    let dim = (g.m() - rank(&gv, lit(NULL_RTOL))?).max(1);
    let lv = l.eval(lambda);
    let lv = if side == Side::Left { lv.transpose() } else { lv };
    let (basis, _) = smallest_right_singular(&lv, dim)?;
    let r = readout(l, side, false);
    let c = lstsq(&(&r * &basis), u, lit(RANK_RTOL))?;
    Ok(basis * c)
}

/// `z = [y; Φ_k(λ) ⊗ u]` with `y` from the first block row, or the null-space
/// construction for families and transforms without a closed form.
pub fn lift_right<T: Real>(g: &RationalMatrix<T>, l: &Pencil<T>, lambda: C<T>, u: &CVec<T>, tol: T) -> Result<CVec<T>> {
    check_eigenpair(g, lambda, u, Side::Right, tol)?;
    let l11 = pole_guard(l, lambda)?;
    if l.meta.transform.is_none() && l.meta.family.is_right_ansatz() {
        let (n, k, m) = (l.meta.n, l.meta.k, l.meta.m);
        let x = phi_kron(&l.meta.basis, k, m, lambda)? * u;
        let mut z = CVec::zeros(n + k * m);
        if n > 0 {
            let l12 = l.eval(lambda).view((0, n), (n, k * m)).clone_owned();
            let y = lu_solve_vec(&l11, &(-(l12 * &x)), lit(0.0))
                .ok_or(Error::SingularABlock(to_f64(lambda.re), to_f64(lambda.im)))?;
            z.rows_mut(0, n).copy_from(&y);
        }
        z.rows_mut(n, k * m).copy_from(&x);
        return Ok(z);
    }
    lift_generic(g, l, lambda, u, Side::Right)
}

/// Mirror of [`lift_right`] for left eigenvectors (transpose convention).
pub fn lift_left<T: Real>(g: &RationalMatrix<T>, l: &Pencil<T>, lambda: C<T>, u: &CVec<T>, tol: T) -> Result<CVec<T>> {
    check_eigenpair(g, lambda, u, Side::Left, tol)?;
    let l11 = pole_guard(l, lambda)?;
    if l.meta.transform.is_none() && l.meta.family == Family::M2 {
        let (n, k, m) = (l.meta.n, l.meta.k, l.meta.m);
        let x = phi_kron(&l.meta.basis, k, m, lambda)? * u;
        let mut z = CVec::zeros(n + k * m);
        if n > 0 {
            let l21 = l.eval(lambda).view((n, 0), (k * m, n)).clone_owned();
            let y = lu_solve_vec(&l11.transpose(), &(-(l21.transpose() * &x)), lit(0.0))
                .ok_or(Error::SingularABlock(to_f64(lambda.re), to_f64(lambda.im)))?;
            z.rows_mut(0, n).copy_from(&y);
        }
        z.rows_mut(n, k * m).copy_from(&x);
        return Ok(z);
    }
    lift_generic(g, l, lambda, u, Side::Left)
}

/// Polynomial system matrix `P(λ) = Σ λ^j P_j` with an `n x n` leading block
/// `A(λ)`, the form shared by pencils and state-space system matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem<T: Real> {
    pub n: usize,
    /// Monomial coefficients, constant term first.
    pub coeffs: Vec<CMat<T>>,
}

impl<T: Real> PolySystem<T> {
    pub fn eval(&self, lambda: C<T>) -> CMat<T> {
        let mut acc = zeros(self.size(), self.size());
        for c in self.coeffs.iter().rev() {
            acc = acc * lambda + c;
        }
        acc
    }

    pub fn size(&self) -> usize {
        self.coeffs.first().map_or(0, |c| c.nrows())
    }

    fn a_block(&self, lambda: C<T>) -> Result<(CMat<T>, CMat<T>)> {
        let n = self.n;
        let pv = self.eval(lambda);
        let a = pv.view((0, 0), (n, n)).clone_owned();
        if n > 0 && crate::linalg::sv_ratio(&a)? <= crate::ratmodel::pivot_tol(n) {
            return Err(Error::SingularABlock(to_f64(lambda.re), to_f64(lambda.im)));
        }
        Ok((a, pv))
    }
}

impl<T: Real> From<&Pencil<T>> for PolySystem<T> {
    fn from(l: &Pencil<T>) -> Self {
        Self { n: l.meta.n, coeffs: vec![l.y.clone(), l.x.clone()] }
    }
}

impl<T: Real> TryFrom<&SystemMatrix<T>> for PolySystem<T> {
    type Error = Error;

    fn try_from(s: &SystemMatrix<T>) -> Result<Self> {
        let (n, m) = (s.ss.n(), s.d.m());
        let d = s.d.monomial_coeffs()?;
        let mut coeffs = Vec::with_capacity(d.len().max(2));
        for j in 0..d.len().max(2) {
            let mut c = zeros(n + m, n + m);
            if let Some(dj) = d.get(j) {
                c.view_mut((n, n), (m, m)).copy_from(dj);
            }
            match j {
                0 => {
                    c.view_mut((0, 0), (n, n)).copy_from(&(-&s.ss.a));
                    c.view_mut((0, n), (n, m)).copy_from(&s.ss.b);
                    c.view_mut((n, 0), (m, n)).copy_from(&(-&s.ss.c));
                }
                1 => c.view_mut((0, 0), (n, n)).copy_from(&eye(n)),
                _ => {}
            }
            coeffs.push(c);
        }
        Ok(Self { n, coeffs })
    }
}

/// `x` part of a null vector `[y; x]` of `P(λ)`.
pub fn system_recover<T: Real>(p: &PolySystem<T>, lambda: C<T>, z: &CVec<T>) -> Result<CVec<T>> {
    p.a_block(lambda)?;
    Ok(z.rows(p.n, p.size() - p.n).clone_owned())
}

/// `[y; x]` with `A(λ)y + B(λ)x = 0`.
pub fn system_lift<T: Real>(p: &PolySystem<T>, lambda: C<T>, x: &CVec<T>) -> Result<CVec<T>> {
    let (a, pv) = p.a_block(lambda)?;
    let n = p.n;
    let b = pv.view((0, n), (n, p.size() - n)).clone_owned();
    stack(n, lu_solve_vec(&a, &(-(b * x)), lit(0.0)), x, lambda)
}

/// Left counterpart: `[y; x]` with `yᵀA(λ) + xᵀP_21(λ) = 0`.
pub fn system_lift_left<T: Real>(p: &PolySystem<T>, lambda: C<T>, x: &CVec<T>) -> Result<CVec<T>> {
    let (a, pv) = p.a_block(lambda)?;
    let n = p.n;
    let p21 = pv.view((n, 0), (p.size() - n, n)).clone_owned();
    stack(n, lu_solve_vec(&a.transpose(), &(-(p21.transpose() * x)), lit(0.0)), x, lambda)
}

fn stack<T: Real>(n: usize, y: Option<CVec<T>>, x: &CVec<T>, lambda: C<T>) -> Result<CVec<T>> {
    let mut z = CVec::zeros(n + x.len());
    if n > 0 {
        let y = y.ok_or(Error::SingularABlock(to_f64(lambda.re), to_f64(lambda.im)))?;
        z.rows_mut(0, n).copy_from(&y);
    }
    z.rows_mut(n, x.len()).copy_from(x);
    Ok(z)
}

/// Relative residual of a recovered pair: against the termwise scale of
/// `G(λ)` for finite pairs, against `‖D_k‖` at infinity.
pub fn pair_residual<T: Real>(g: &RationalMatrix<T>, pair: &RecoveredPair<T>) -> Result<T> {
    let (mat, scale) = if pair.at_infinity {
        let d = g.poly.leading().clone();
        let s = fro(&d);
        (d, s)
    } else {
        (g.eval(pair.lambda)?, g.eval_scale(pair.lambda)?)
    };
    let mat = if pair.side == Side::Left { mat.transpose() } else { mat };
    let scale = scale * vnorm(&pair.vector);
    if scale == T::zero() {
        return Ok(T::zero());
    }
    Ok(vnorm(&(mat * &pair.vector)) / scale)
}

#[derive(Clone, Debug)]
pub struct SolveOptions<T: Real> {
    pub build: BuildOptions<T>,
    pub left: bool,
    pub tol_eig: T,
}

impl<T: Real> Default for SolveOptions<T> {
    fn default() -> Self {
        Self { build: BuildOptions::default(), left: false, tol_eig: lit(1e-8) }
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport<T: Real> {
    pub pencil: Pencil<T>,
    pub solution: EigenSolution<T>,
    pub pairs: Vec<RecoveredPair<T>>,
    /// Eigenvalues of the pencil that sit on a pole of `G`: possibly zeros
    /// cancelled by poles, not eigenvalues of `G`.
    pub pole_candidates: Vec<C<T>>,
}

/// Build, solve and recover in one call.
pub fn solve_rep<T: Real>(g: &RationalMatrix<T>, family: Family, opts: &SolveOptions<T>) -> Result<SolveReport<T>> {
    warn_if_singular(g);
    let pencil = build_pencil(g, family, &opts.build)?;
    let solution = solve_gep(&pencil, opts.tol_eig)?;
    let mut pairs = recover_right(&pencil, &solution);
    if opts.left {
        pairs.extend(recover_left(&pencil, &solution));
    }
    pairs.extend(recover_infinity(&pencil, &solution).into_iter().filter(|p| opts.left || p.side == Side::Right));
    let pole_candidates = solution.pole_candidates();
    Ok(SolveReport { pencil, solution, pairs, pole_candidates })
}

fn warn_if_singular<T: Real>(g: &RationalMatrix<T>) {
    let probe = crate::scalar::cx::<T>(0.618_033_988_7, 1.324_717_957_2);
    if let Ok(gv) = g.eval(probe) {
        if let Ok(r) = rank(&gv, lit(NULL_RTOL)) {
            if r < g.m() {
                warn!("G looks singular (rank {r} < {} at a probe point)", g.m());
            }
        }
    }
}

/// Cosine between `u` and the column space of `basis`; 1 means `u` lies in
/// the span.
pub fn span_alignment<T: Real>(basis: &CMat<T>, u: &CVec<T>) -> T {
    let q = crate::linalg::orth(basis, lit(RANK_RTOL)).unwrap_or_else(|_| basis.clone());
    let proj = q.adjoint() * u;
    let nu = vnorm(u);
    if nu == T::zero() {
        return T::zero();
    }
    vnorm(&proj) / nu
}
