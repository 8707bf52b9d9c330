//! Minimal state-space realizations and their symmetric/Hermitian forms.

use crate::error::{Error, Result};
use crate::linalg::{
    ct, eye, fro, from_real, full_svd, hermitian_eigen, lu_solve, orth, pinv, rank_from_sv, real_part, tr, zeros,
};
use crate::ratmodel::{is_minimal, pivot_tol, HermitianRealization, PoleResidue, StateSpace, SymmetricRealization};
use crate::scalar::{abs, cx, lit, rel_dist, to_f64, CMat, Real, C};

/// Markov parameters `G_1, G_2, ...` of `G_sp(λ) = Σ G_i λ^{-i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovSequence<T: Real> {
    pub markov: Vec<CMat<T>>,
    /// Expected least order.
    pub n: usize,
}

impl<T: Real> MarkovSequence<T> {
    /// `G_i = C A^{i-1} B` for `i = 1..=count`.
    pub fn from_state_space(r: &StateSpace<T>, count: usize, n: usize) -> Self {
        let mut markov = Vec::with_capacity(count);
        let mut ab = r.b.clone();
        for _ in 0..count {
            markov.push(&r.c * &ab);
            ab = &r.a * ab;
        }
        Self { markov, n }
    }

    fn block_hankel(&self, shift: usize) -> CMat<T> {
        let m = self.markov[0].nrows();
        let n = self.n;
        let mut h = zeros(n * m, n * m);
        for i in 0..n {
            for j in 0..n {
                h.view_mut((i * m, j * m), (m, m)).copy_from(&self.markov[i + j + shift]);
            }
        }
        h
    }
}

/// Deterministic probe points spread over a disk of the given radius, kept off
/// the real axis so they avoid real poles.
pub fn probe_points<T: Real>(count: usize, radius: f64) -> Vec<C<T>> {
    (0..count)
        .map(|j| {
            let t = j as f64;
            let theta = 0.7 + 2.399_963 * t;
            let r = radius * (0.55 + 0.45 * (0.618_034 * t).fract());
            cx(r * theta.cos(), r * theta.sin() + if theta.sin() >= 0.0 { 0.05 } else { -0.05 })
        })
        .collect()
}

fn probe_radius<T: Real>(a: &CMat<T>) -> f64 {
    1.5 + 1.2 * to_f64(fro(a))
}

/// Block-diagonal realization `A = diag(p_i I_{r_i})` from rank factorizations
/// `R_i = C_i B_i`.
pub fn from_pole_residue<T: Real>(pr: &PoleResidue<T>, tol: T) -> Result<StateSpace<T>> {
    if pr.poles.len() != pr.residues.len() {
        return Err(Error::ShapeMismatch("one residue per pole is required".into()));
    }
    let Some(first) = pr.residues.first() else {
        return Err(Error::Input("pole-residue data needs at least one residue to fix m".into()));
    };
    let m = first.nrows();
    if pr.residues.iter().any(|r| r.shape() != (m, m)) {
        return Err(Error::ShapeMismatch("residues must all be m x m".into()));
    }
    let cluster = tol.max(lit(1e-12));
    for i in 0..pr.poles.len() {
        for j in 0..i {
            if rel_dist(pr.poles[i], pr.poles[j]) <= cluster {
                return Err(Error::DuplicatePole(to_f64(pr.poles[i].re), to_f64(pr.poles[i].im)));
            }
        }
    }
    let mut cols: Vec<CMat<T>> = vec![];
    let mut rows: Vec<CMat<T>> = vec![];
    let mut diag: Vec<C<T>> = vec![];
    for (p, r) in pr.poles.iter().zip(&pr.residues) {
        let svd = full_svd(r)?;
        let rk = rank_from_sv(&svd.s, tol);
        if rk == 0 {
            log::warn!("dropping zero residue at pole ({}, {})", to_f64(p.re), to_f64(p.im));
            continue;
        }
        for i in 0..rk {
            let mut u = svd.u.column(i).clone_owned();
            let mut v = svd.v.column(i).clone_owned();
            // Fix the phase so the factorization is reproducible.
            let (idx, _) =
                v.iter().enumerate().fold(
                    (0, T::zero()),
                    |best, (j, z)| {
                        if abs(*z) > best.1 {
                            (j, abs(*z))
                        } else {
                            best
                        }
                    },
                );
            let phase = v[idx] / C::new(abs(v[idx]), T::zero());
            v /= phase;
            u /= phase;
            let sigma = C::new(svd.s[i], T::zero());
            cols.push(CMat::from_column_slice(m, 1, (u * sigma).as_slice()));
            rows.push(CMat::from_row_slice(1, m, v.map(|z| z.conj()).as_slice()));
            diag.push(*p);
        }
    }
    let n = diag.len();
    let mut a = zeros(n, n);
    let mut b = zeros(n, m);
    let mut c = zeros(m, n);
    for i in 0..n {
        a[(i, i)] = diag[i];
        b.row_mut(i).copy_from(&rows[i].row(0));
        c.column_mut(i).copy_from(&cols[i].column(0));
    }
    StateSpace::new(a, b, c)
}

fn require_minimal<T: Real>(r: &StateSpace<T>, tol: T) -> Result<()> {
    let rep = is_minimal(r, tol)?;
    if !rep.minimal {
        return Err(Error::NotMinimal { ctrb: rep.ctrb_rank, obsv: rep.obsv_rank, n: rep.n });
    }
    Ok(())
}

/// Largest relative defect of `G(λ) = G(λ)^T` (or `G(λ)^* = G(conj λ)`)
/// over a few probe points.
fn transfer_defect<T: Real>(r: &StateSpace<T>, hermitian: bool) -> Result<T> {
    let mut worst = T::zero();
    for lam in probe_points::<T>(5, probe_radius(&r.a)) {
        let g = r.eval(lam)?;
        let other = if hermitian { ct(&r.eval(lam.conj())?) } else { tr(&g) };
        let scale = fro(&g).max(lit::<T>(1e-300));
        worst = worst.max(fro(&(&g - other)) / scale);
    }
    Ok(worst)
}

fn transfer_tol<T: Real>() -> T {
    lit(1e-8)
}

/// The unique symmetric `S` with `A^T = S^{-1} A S` and `C^T = S^{-1} B`,
/// computed as `O(A,C)^+ 𝒞(A,B)^T`.
pub fn symmetric_similarity<T: Real>(r: &StateSpace<T>, tol: T) -> Result<CMat<T>> {
    require_minimal(r, tol)?;
    let d = transfer_defect(r, false)?;
    if d > transfer_tol() {
        return Err(Error::NotSymmetricTransfer(to_f64(d)));
    }
    let s = pinv(&r.observability(), tol)? * tr(&r.controllability());
    Ok((&s + tr(&s)) * C::new(lit::<T>(0.5), T::zero()))
}

pub fn to_symmetric_realization<T: Real>(r: &StateSpace<T>, tol: T) -> Result<SymmetricRealization<T>> {
    let n = r.n();
    if n == 0 {
        return Ok(SymmetricRealization { s1: zeros(0, 0), s2: zeros(0, 0), w: r.c.clone() });
    }
    let s = symmetric_similarity(r, tol)?;
    let s1 = lu_solve(&s, &eye(n), pivot_tol::<T>(n)).ok_or(Error::SingularTransform("S"))?;
    let s2 = &s1 * &r.a;
    Ok(SymmetricRealization { s1: symmetrize(&s1), s2: symmetrize(&s2), w: r.c.clone() })
}

/// The unique Hermitian `H` with `A^* = H^{-1} A H` and `C^* = H^{-1} B`.
pub fn hermitian_similarity<T: Real>(r: &StateSpace<T>, tol: T) -> Result<CMat<T>> {
    require_minimal(r, tol)?;
    let d = transfer_defect(r, true)?;
    if d > transfer_tol() {
        return Err(Error::NotHermitianTransfer(to_f64(d)));
    }
    let h = pinv(&r.observability(), tol)? * ct(&r.controllability());
    Ok(hermitize(&h))
}

pub fn to_hermitian_realization<T: Real>(r: &StateSpace<T>, tol: T) -> Result<HermitianRealization<T>> {
    let n = r.n();
    if n == 0 {
        return Ok(HermitianRealization { h1: zeros(0, 0), h2: zeros(0, 0), w: r.c.clone() });
    }
    let h = hermitian_similarity(r, tol)?;
    let h1 = lu_solve(&h, &eye(n), pivot_tol::<T>(n)).ok_or(Error::SingularTransform("H"))?;
    let h2 = &h1 * &r.a;
    Ok(HermitianRealization { h1: hermitize(&h1), h2: hermitize(&h2), w: r.c.clone() })
}

/// Symmetric realization read off an orthogonal eigendecomposition of the
/// block Hankel matrix `H_n = [G_{i+j-1}]`.
pub fn symmetric_from_hankel<T: Real>(mk: &MarkovSequence<T>, tol: T) -> Result<SymmetricRealization<T>> {
    let (m, n) = hankel_shape(mk)?;
    if n == 0 || mk.markov.iter().all(|g| fro(g) == T::zero()) {
        if n != 0 {
            return Err(Error::RankMismatch { found: 0, expected: n });
        }
        return Ok(SymmetricRealization { s1: zeros(0, 0), s2: zeros(0, 0), w: zeros(m, 0) });
    }
    if mk.markov.iter().any(|g| g.iter().any(|z| z.im != T::zero())) {
        return Err(Error::Unsupported("complex Markov parameters: use the Hermitian route".into()));
    }
    let h = mk.block_hankel(0);
    let sym = crate::linalg::symmetry_defect(&h);
    if sym > lit(1e-10) {
        return Err(Error::NotSymmetric(format!("Hankel matrix defect {:e}", to_f64(sym))));
    }
    let hr = real_part(&h);
    let hr = (&hr + hr.transpose()) * lit::<T>(0.5);
    let (vals, vecs) = hermitian_eigen(&from_real(&hr))?;
    let (keep, kinv) = leading_eigen(&vals, n, tol)?;
    let p1 = vecs.select_columns(&keep);
    finish_hankel(mk, m, &p1, &kinv, false).map(|(s1, s2, w)| SymmetricRealization { s1, s2, w })
}

/// Hermitian counterpart of [`symmetric_from_hankel`] using a unitary
/// eigendecomposition.
pub fn hermitian_from_hankel<T: Real>(mk: &MarkovSequence<T>, tol: T) -> Result<HermitianRealization<T>> {
    let (m, n) = hankel_shape(mk)?;
    if n == 0 || mk.markov.iter().all(|g| fro(g) == T::zero()) {
        if n != 0 {
            return Err(Error::RankMismatch { found: 0, expected: n });
        }
        return Ok(HermitianRealization { h1: zeros(0, 0), h2: zeros(0, 0), w: zeros(m, 0) });
    }
    let h = mk.block_hankel(0);
    let herm = crate::linalg::hermitian_defect(&h);
    if herm > lit(1e-10) {
        return Err(Error::NotHermitian(format!("Hankel matrix defect {:e}", to_f64(herm))));
    }
    let (vals, vecs) = hermitian_eigen(&hermitize(&h))?;
    let (keep, kinv) = leading_eigen(&vals, n, tol)?;
    let p1 = vecs.select_columns(&keep);
    finish_hankel(mk, m, &p1, &kinv, true).map(|(h1, h2, w)| HermitianRealization { h1, h2, w })
}

fn hankel_shape<T: Real>(mk: &MarkovSequence<T>) -> Result<(usize, usize)> {
    let Some(g1) = mk.markov.first() else {
        if mk.n == 0 {
            return Ok((0, 0));
        }
        return Err(Error::Input("empty Markov sequence".into()));
    };
    let m = g1.nrows();
    if mk.markov.iter().any(|g| g.shape() != (m, m)) {
        return Err(Error::ShapeMismatch("Markov parameters must all be m x m".into()));
    }
    if mk.markov.len() < 2 * mk.n {
        return Err(Error::Input(format!("need {} Markov parameters, got {}", 2 * mk.n, mk.markov.len())));
    }
    Ok((m, mk.n))
}

/// Indices of the `n` eigenvalues of largest modulus and the inverses of those
/// eigenvalues; fails when the numerical rank is not `n`.
fn leading_eigen<T: Real>(vals: &[T], n: usize, tol: T) -> Result<(Vec<usize>, Vec<T>)> {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[b].abs().partial_cmp(&vals[a].abs()).unwrap_or(std::cmp::Ordering::Equal));
    let top = vals[idx[0]].abs();
    let found = idx.iter().filter(|&&i| vals[i].abs() > tol * top).count();
    if found != n {
        return Err(Error::RankMismatch { found, expected: n });
    }
    idx.truncate(n);
    let kinv = idx.iter().map(|&i| T::one() / vals[i]).collect();
    Ok((idx, kinv))
}

type Triple<T> = (CMat<T>, CMat<T>, CMat<T>);

fn finish_hankel<T: Real>(
    mk: &MarkovSequence<T>,
    m: usize,
    p1: &CMat<T>,
    kinv: &[T],
    hermitian: bool,
) -> Result<Triple<T>> {
    let n = kinv.len();
    let mut k = zeros(n, n);
    for (i, &x) in kinv.iter().enumerate() {
        k[(i, i)] = C::new(x, T::zero());
    }
    let shifted = mk.block_hankel(1);
    let p1t = if hermitian { ct(p1) } else { tr(p1) };
    let s2 = &k * p1t * shifted * p1 * &k;
    let w = p1.view((0, 0), (m, n)).clone_owned();
    let s2 = if hermitian { hermitize(&s2) } else { symmetrize(&s2) };
    Ok((k, s2, w))
}

/// Orthonormal staircase: restrict to the reachable subspace, then to the
/// observable part of what remains.
pub fn minimal_reduction<T: Real>(r: &StateSpace<T>, tol: T) -> Result<StateSpace<T>> {
    if r.n() == 0 {
        return Ok(r.clone());
    }
    let v = orth(&r.controllability(), tol)?;
    let vs = ct(&v);
    let reach = StateSpace::new(&vs * &r.a * &v, &vs * &r.b, &r.c * &v)?;
    if reach.n() == 0 {
        return Ok(StateSpace::empty_rect(r.c.nrows(), r.b.ncols()));
    }
    let u = orth(&ct(&reach.observability()), tol)?;
    let us = ct(&u);
    let out = StateSpace::new(&us * &reach.a * &u, &us * &reach.b, &reach.c * &u)?;
    if out.n() == 0 {
        return Ok(StateSpace::empty_rect(r.c.nrows(), r.b.ncols()));
    }
    Ok(out)
}

fn symmetrize<T: Real>(m: &CMat<T>) -> CMat<T> {
    let mut out = m.clone();
    for i in 0..m.nrows() {
        for j in i + 1..m.ncols() {
            let avg = (m[(i, j)] + m[(j, i)]) * C::new(lit::<T>(0.5), T::zero());
            out[(i, j)] = avg;
            out[(j, i)] = avg;
        }
    }
    out
}

fn hermitize<T: Real>(m: &CMat<T>) -> CMat<T> {
    let mut out = m.clone();
    for i in 0..m.nrows() {
        out[(i, i)] = C::new(m[(i, i)].re, T::zero());
        for j in i + 1..m.ncols() {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * C::new(lit::<T>(0.5), T::zero());
            out[(i, j)] = avg;
            out[(j, i)] = avg.conj();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    fn c(x: f64) -> C<f64> {
        cx(x, 0.0)
    }

    fn s(x: f64) -> CMat<f64> {
        CMat::from_element(1, 1, c(x))
    }

    fn close(a: &CMat<f64>, b: &CMat<f64>, tol: f64) -> bool {
        a.shape() == b.shape() && max_abs(&(a - b)) <= tol * (1.0 + max_abs(b))
    }

    fn sym_eval(r: &SymmetricRealization<f64>, l: C<f64>) -> CMat<f64> {
        let res = &r.s1 * l - &r.s2;
        &r.w * lu_solve(&res, &r.w.transpose(), 1e-14).unwrap()
    }

    #[test]
    fn pole_residue_rank_one() {
        let pr = PoleResidue {
            poles: vec![c(1.0)],
            residues: vec![CMat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.0)])],
        };
        let ss = from_pole_residue(&pr, 1e-10).unwrap();
        assert_eq!(ss.n(), 1);
        assert_eq!(ss.a, s(1.0));
        assert!(close(&ss.b, &CMat::from_row_slice(1, 2, &[c(1.0), c(0.0)]), 1e-15));
        assert!(close(&ss.c, &CMat::from_row_slice(2, 1, &[c(1.0), c(0.0)]), 1e-15));
    }

    #[test]
    fn pole_residue_two_poles_is_minimal() {
        let e = CMat::from_row_slice(2, 1, &[c(1.0), c(2.0)]);
        let f = CMat::from_row_slice(2, 1, &[c(-1.0), c(0.5)]);
        let pr = PoleResidue { poles: vec![c(1.0), c(-2.0)], residues: vec![&e * e.transpose(), &f * f.transpose()] };
        let ss = from_pole_residue(&pr, 1e-10).unwrap();
        assert_eq!(ss.n(), 2);
        assert!(is_minimal(&ss, 1e-10).unwrap().minimal);
        for l in probe_points::<f64>(10, 4.0) {
            assert!(close(&ss.eval(l).unwrap(), &pr.eval(l, 2), 1e-12));
        }
    }

    #[test]
    fn duplicate_poles_rejected() {
        let pr = PoleResidue { poles: vec![c(1.0), c(1.0)], residues: vec![s(1.0), s(2.0)] };
        assert!(matches!(from_pole_residue(&pr, 1e-10), Err(Error::DuplicatePole(..))));
    }

    #[test]
    fn similarity_examples() {
        let r = StateSpace::new(s(0.0), s(2.0), s(1.0)).unwrap();
        assert!(close(&symmetric_similarity(&r, 1e-10).unwrap(), &s(2.0), 1e-14));
        let sym = to_symmetric_realization(&r, 1e-10).unwrap();
        assert!(close(&sym.s1, &s(0.5), 1e-14) && close(&sym.s2, &s(0.0), 1e-14) && close(&sym.w, &s(1.0), 0.0));

        let swap = CMat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let r = StateSpace::new(CMat::zeros(2, 2), CMat::identity(2, 2), swap.clone()).unwrap();
        assert!(close(&symmetric_similarity(&r, 1e-10).unwrap(), &swap, 1e-14));

        let a = CMat::from_row_slice(2, 2, &[c(1.0), c(2.0), c(2.0), c(-1.0)]);
        let b = CMat::from_row_slice(2, 1, &[c(1.0), c(3.0)]);
        let r = StateSpace::new(a, b.clone(), b.transpose()).unwrap();
        assert!(close(&symmetric_similarity(&r, 1e-10).unwrap(), &CMat::identity(2, 2), 1e-12));
    }

    #[test]
    fn rank_one_symmetric_core() {
        let e = CMat::from_row_slice(2, 1, &[c(0.6), c(0.8)]);
        let pr = PoleResidue { poles: vec![c(1.0)], residues: vec![&e * e.transpose()] };
        let ss = from_pole_residue(&pr, 1e-10).unwrap();
        let sym = to_symmetric_realization(&ss, 1e-10).unwrap();
        assert!(close(&sym.s1, &s(1.0), 1e-14) && close(&sym.s2, &s(1.0), 1e-14));
        assert!(close(&sym.w, &e, 1e-14));
    }

    #[test]
    fn nonsymmetric_transfer_rejected() {
        let r = StateSpace::new(
            CMat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(2.0)]),
            CMat::identity(2, 2),
            CMat::from_row_slice(2, 2, &[c(1.0), c(1.0), c(0.0), c(1.0)]),
        )
        .unwrap();
        assert!(matches!(symmetric_similarity(&r, 1e-10), Err(Error::NotSymmetricTransfer(_))));
    }

    #[test]
    fn hermitian_scalar_example() {
        let r = StateSpace::new(s(1.0), s(2.0), s(1.0)).unwrap();
        assert!(close(&hermitian_similarity(&r, 1e-10).unwrap(), &s(2.0), 1e-14));
        let h = to_hermitian_realization(&r, 1e-10).unwrap();
        assert!(close(&h.h1, &s(0.5), 1e-14) && close(&h.h2, &s(0.5), 1e-14));
    }

    #[test]
    fn hankel_examples() {
        let mk = MarkovSequence { markov: vec![s(1.0); 2], n: 1 };
        let r = symmetric_from_hankel(&mk, 1e-10).unwrap();
        assert!(close(&r.s1, &s(1.0), 1e-14) && close(&r.s2, &s(1.0), 1e-14) && close(&r.w, &s(1.0), 1e-14));
        let mk = MarkovSequence { markov: vec![s(1.0), s(0.0)], n: 1 };
        let r = symmetric_from_hankel(&mk, 1e-10).unwrap();
        assert!(close(&r.s1, &s(1.0), 1e-14) && close(&r.s2, &s(0.0), 1e-14));
        let mk = MarkovSequence { markov: vec![s(0.0); 4], n: 0 };
        assert_eq!(symmetric_from_hankel(&mk, 1e-10).unwrap().s1.nrows(), 0);
        let mk = MarkovSequence { markov: vec![s(1.0); 4], n: 2 };
        assert!(matches!(symmetric_from_hankel(&mk, 1e-10), Err(Error::RankMismatch { found: 1, expected: 2 })));
    }

    #[test]
    fn hankel_reconstructs_symmetric_transfer() {
        let e = CMat::from_row_slice(2, 1, &[c(1.0), c(-0.5)]);
        let f = CMat::from_row_slice(2, 1, &[c(0.3), c(0.9)]);
        let pr =
            PoleResidue { poles: vec![c(0.5), c(-1.5)], residues: vec![&e * e.transpose(), -(&f * f.transpose())] };
        let ss = from_pole_residue(&pr, 1e-10).unwrap();
        let mk = MarkovSequence::from_state_space(&ss, 4, 2);
        let r = symmetric_from_hankel(&mk, 1e-10).unwrap();
        for l in probe_points::<f64>(10, 3.0) {
            assert!(close(&sym_eval(&r, l), &pr.eval(l, 2), 1e-10));
        }
    }

    #[test]
    fn minimal_reduction_examples() {
        let r = StateSpace::new(
            CMat::identity(2, 2),
            CMat::from_row_slice(2, 1, &[c(1.0), c(0.0)]),
            CMat::from_row_slice(1, 2, &[c(1.0), c(1.0)]),
        )
        .unwrap();
        let red = minimal_reduction(&r, 1e-10).unwrap();
        assert_eq!(red.n(), 1);
        assert!(is_minimal(&red, 1e-10).unwrap().minimal);
        for l in probe_points::<f64>(10, 3.0) {
            assert!(close(&red.eval(l).unwrap(), &r.eval(l).unwrap(), 1e-12));
        }
        let again = minimal_reduction(&red, 1e-10).unwrap();
        assert_eq!(again.n(), 1);
        let zero_c = StateSpace::new(CMat::identity(2, 2), CMat::identity(2, 2), CMat::zeros(2, 2)).unwrap();
        assert_eq!(minimal_reduction(&zero_c, 1e-10).unwrap().n(), 0);
    }
}
