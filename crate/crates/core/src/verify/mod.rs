//! Brute-force oracles and structural certificates.
//!
//! The eigenvalue oracle interpolates `det P(λ)` of the polynomial system
//! matrix on a circle and finds its roots with an independent polynomial
//! root finder, so it shares no eigensolver with [`crate::solve`].

mod roots;

pub use roots::polynomial_roots;

use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::basis::PolyBasis;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{
    block_transpose_grid, det, eye, hermitian_defect, kron, lu_solve, max_abs, rank, sv_ratio, symmetry_defect, zeros,
};
use crate::linearize::{ansatz_residual, Family, Pencil};
use crate::ratmodel::{check_least_order, RationalMatrix};
use crate::scalar::{abs, cone, czero, lit, rel_dist, to_f64, CMat, Real, C};
use crate::solve::{cluster_tol, solve_gep, PolySystem};

/// Polynomial matrix in monomial coefficients, constant term first.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialMatrix<T: Real> {
    pub coeffs: Vec<CMat<T>>,
}

impl<T: Real> MonomialMatrix<T> {
    pub fn new(coeffs: Vec<CMat<T>>) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| Error::ShapeMismatch("no coefficients".into()))?;
        if coeffs.iter().any(|c| c.shape() != first.shape()) {
            return Err(Error::ShapeMismatch("coefficients differ in shape".into()));
        }
        Ok(Self { coeffs })
    }

    /// `λX + Y`.
    pub fn pencil(x: &CMat<T>, y: &CMat<T>) -> Self {
        Self { coeffs: vec![y.clone(), x.clone()] }
    }

    pub fn shape(&self) -> (usize, usize) {
        self.coeffs[0].shape()
    }

    pub fn eval(&self, lambda: C<T>) -> CMat<T> {
        let (p, q) = self.shape();
        let mut acc = zeros(p, q);
        for c in self.coeffs.iter().rev() {
            acc = acc * lambda + c;
        }
        acc
    }

    pub fn derivative_at(&self, lambda: C<T>) -> CMat<T> {
        let (p, q) = self.shape();
        let mut acc = zeros(p, q);
        for (j, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * lambda + c * C::new(lit(j as f64), T::zero());
        }
        acc
    }

    fn max_entry(&self) -> T {
        self.coeffs.iter().map(max_abs).fold(T::zero(), |a, b| a.max(b))
    }

    /// Degree of row `i` (`None` for a zero row).
    fn row_degree(&self, i: usize) -> Option<usize> {
        (0..self.coeffs.len()).rev().find(|&j| self.coeffs[j].row(i).iter().any(|z| *z != czero()))
    }
}

impl<T: Real> From<&PolySystem<T>> for MonomialMatrix<T> {
    fn from(p: &PolySystem<T>) -> Self {
        Self { coeffs: p.coeffs.clone() }
    }
}

/// `M_Φ(λ) ⊗ I_m` (or `M_Ψ`) as a monomial matrix.
pub fn relation_basis<T: Real>(basis: &PolyBasis<T>, k: usize, m: usize) -> Result<MonomialMatrix<T>> {
    let (x, y) = basis.relation_pencil(k)?;
    let im = eye(m);
    Ok(MonomialMatrix::pencil(&kron(&x, &im), &kron(&y, &im)))
}

/// `Φ_k(λ)ᵀ ⊗ I_m` as a monomial matrix of degree `k - 1`.
pub fn basis_row<T: Real>(basis: &PolyBasis<T>, k: usize, m: usize) -> Result<MonomialMatrix<T>> {
    let table = basis.monomial_table(k)?;
    let coeffs = (0..k)
        .map(|d| {
            let mut row = zeros(1, k);
            for c in 0..k {
                row[(0, c)] = table[k - 1 - c][d];
            }
            kron(&row, &eye(m))
        })
        .collect();
    MonomialMatrix::new(coeffs)
}

const CROSS_CHECK_RTOL: f64 = 1e-8;
const MAX_DOUBLINGS: usize = 3;

/// Monomial coefficients of `det P(λ)` by interpolation at scaled roots of
/// unity, cross-checked at three fresh points. The first circle has radius
/// `1 + max |entries|`; later ones sit at the geometric mean root modulus.
/// Trailing coefficients below the interpolation noise are dropped.
pub fn det_poly<T: Real>(p: &MonomialMatrix<T>, degree_bound: usize) -> Result<Vec<C<T>>> {
    let (rows, cols) = p.shape();
    if rows != cols {
        return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
    }
    if rows == 0 {
        return Ok(vec![cone()]);
    }
    let outer = T::one() + p.max_entry();
    let mut coeffs = interpolate_checked(p, outer, degree_bound + 1)?;
    // The enclosing circle gives coefficients with absolute error about
    // eps * max|det| there, which can swamp roots of modulus near 1.
    // Re-interpolate at the geometric mean root modulus until it settles.
    let mut radius = outer;
    for _ in 0..RADIUS_REFINEMENTS {
        let Some(mean) = mean_root_modulus(&coeffs) else { break };
        let next = mean.max(lit::<T>(1e-3) * outer).min(outer);
        if (next / radius).ln().abs() < lit(0.1) {
            break;
        }
        match interpolate_checked(p, next, degree_bound + 1) {
            Ok(c) => {
                coeffs = c;
                radius = next;
            }
            Err(_) => break,
        }
    }
    Ok(coeffs)
}

const RADIUS_REFINEMENTS: usize = 6;

/// `(|c_low| / |c_deg|)^(1/(deg - low))` over the nonzero extreme coefficients.
fn mean_root_modulus<T: Real>(c: &[C<T>]) -> Option<T> {
    let deg = c.len().checked_sub(1)?;
    let low = c.iter().position(|z| *z != czero())?;
    if deg <= low {
        return None;
    }
    let mean = (abs(c[low]) / abs(c[deg])).powf(T::one() / lit((deg - low) as f64));
    (mean.is_finite() && mean > T::zero()).then_some(mean)
}

fn interpolate_checked<T: Real>(p: &MonomialMatrix<T>, radius: T, mut nodes: usize) -> Result<Vec<C<T>>> {
    let mut worst = f64::INFINITY;
    for attempt in 0..=MAX_DOUBLINGS {
        let (coeffs, vmax) = interpolate(p, radius, nodes);
        worst = cross_check(p, &coeffs, radius, vmax);
        if worst <= CROSS_CHECK_RTOL {
            return Ok(trim(coeffs, radius, vmax));
        }
        warn!("det interpolation mismatch {worst:.2e} with {nodes} nodes (attempt {attempt}); doubling");
        nodes *= 2;
    }
    Err(Error::IllConditionedInterpolation(worst))
}

fn interpolate<T: Real>(p: &MonomialMatrix<T>, radius: T, nodes: usize) -> (Vec<C<T>>, T) {
    let two_pi = lit::<T>(2.0 * std::f64::consts::PI);
    let omega = |j: usize| {
        let th = two_pi * lit(j as f64) / lit(nodes as f64);
        C::new(th.cos(), th.sin())
    };
    let vals: Vec<C<T>> = (0..nodes).map(|j| det(&p.eval(omega(j) * radius))).collect();
    let vmax = vals.iter().map(|v| abs(*v)).fold(T::zero(), |a, b| a.max(b));
    let mut coeffs = Vec::with_capacity(nodes);
    let mut rpow = T::one();
    for i in 0..nodes {
        let mut acc = czero::<T>();
        for (j, v) in vals.iter().enumerate() {
            acc += v * omega((i * j) % nodes).conj();
        }
        coeffs.push(acc / C::new(lit::<T>(nodes as f64) * rpow, T::zero()));
        rpow *= radius;
    }
    (coeffs, vmax)
}

fn horner<T: Real>(c: &[C<T>], z: C<T>) -> C<T> {
    c.iter().rev().fold(czero(), |acc, &ci| acc * z + ci)
}

fn cross_check<T: Real>(p: &MonomialMatrix<T>, coeffs: &[C<T>], radius: T, vmax: T) -> f64 {
    let scale = vmax.max(lit(1e-300));
    [(0.71, 0.3), (0.37, 1.9), (0.93, 4.1)]
        .iter()
        .map(|&(f, th)| {
            let z = C::new(lit::<T>(th).cos(), lit::<T>(th).sin()) * radius * lit::<T>(f);
            to_f64(abs(horner(coeffs, z) - det(&p.eval(z))) / scale)
        })
        .fold(0.0, f64::max)
}

fn trim<T: Real>(mut coeffs: Vec<C<T>>, radius: T, vmax: T) -> Vec<C<T>> {
    let noise = lit::<T>(1e-11) * vmax;
    let mut deg = coeffs.len();
    while deg > 0 {
        let contribution = abs(coeffs[deg - 1]) * radius.powi(deg as i32 - 1);
        if contribution > noise {
            break;
        }
        deg -= 1;
    }
    coeffs.truncate(deg);
    coeffs
}

/// Newton on `det P`, using `det'/det = tr(P⁻¹P')`. Steps that would jump
/// far (towards another root) are refused.
fn polish<T: Real>(p: &MonomialMatrix<T>, root: C<T>) -> C<T> {
    let mut z = root;
    for _ in 0..4 {
        let pv = p.eval(z);
        let Some(sol) = lu_solve(&pv, &p.derivative_at(z), T::zero()) else { break };
        let tr = sol.trace();
        if tr == czero() {
            break;
        }
        let step = cone::<T>() / tr;
        if abs(step) > lit::<T>(1e-6) * T::one().max(abs(z)) {
            break;
        }
        z -= step;
        if abs(step) <= lit::<T>(1e-15) * T::one().max(abs(z)) {
            break;
        }
    }
    z
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSpectrum {
    /// Finite eigenvalues as `[re, im]`, repeated by multiplicity.
    pub finite: Vec<[f64; 2]>,
    /// Roots of `det P` matched to poles and removed.
    pub removed_poles: Vec<[f64; 2]>,
    pub infinite_count: usize,
}

impl OracleSpectrum {
    pub fn finite_c<T: Real>(&self) -> Vec<C<T>> {
        self.finite.iter().map(|&[a, b]| crate::scalar::cx(a, b)).collect()
    }
}

/// Finite zeros of `G` that are not poles, plus the number of infinite
/// eigenvectors (`m - rank D_k`).
pub fn oracle_eigenvalues<T: Real>(g: &RationalMatrix<T>, tol: T) -> Result<OracleSpectrum> {
    let sys = g.system_matrix()?;
    let mm = MonomialMatrix::from(&PolySystem::try_from(&sys)?);
    let coeffs = det_poly(&mm, sys.det_degree_bound())?;
    if coeffs.is_empty() {
        return Err(Error::NonRegular);
    }
    let roots: Vec<C<T>> = polynomial_roots(&coeffs)?.into_iter().map(|r| polish(&mm, r)).collect();
    let n = sys.ss.n();
    let poles = if n == 0 {
        vec![]
    } else {
        let resolvent = MonomialMatrix::pencil(&eye(n), &(-&sys.ss.a));
        polynomial_roots(&det_poly(&resolvent, n)?)?
    };
    let (kept, removed) = remove_matches(roots, &poles, cluster_tol(tol));
    let lead = g.rev_eval(czero())?;
    let infinite_count = g.m() - rank(&lead, lit(1e-10))?;
    let pack = |v: &[C<T>]| v.iter().map(|z| [to_f64(z.re), to_f64(z.im)]).collect();
    Ok(OracleSpectrum { finite: pack(&kept), removed_poles: pack(&removed), infinite_count })
}

/// Removes from `values` one nearest entry per pole (greedy) within `ctol`.
fn remove_matches<T: Real>(mut values: Vec<C<T>>, poles: &[C<T>], ctol: T) -> (Vec<C<T>>, Vec<C<T>>) {
    let mut removed = Vec::new();
    for p in poles {
        let best = values
            .iter()
            .enumerate()
            .map(|(i, v)| (i, rel_dist(*v, *p)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        if let Some((i, d)) = best {
            if d <= ctol {
                removed.push(values.remove(i));
            }
        }
    }
    (values, removed)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenMatch {
    pub oracle: [f64; 2],
    pub pencil: [f64; 2],
    pub distance: f64,
}

/// Greedy nearest-pair matching of two multisets under `rel_dist`. Returns
/// matched pairs and the unmatched leftovers of each side.
pub fn match_eigenvalues<T: Real>(
    oracle: &[C<T>],
    pencil: &[C<T>],
    ctol: T,
) -> (Vec<EigenMatch>, Vec<C<T>>, Vec<C<T>>) {
    let mut cand: Vec<(T, usize, usize)> = Vec::new();
    for (i, a) in oracle.iter().enumerate() {
        for (j, b) in pencil.iter().enumerate() {
            let d = rel_dist(*a, *b);
            if d <= ctol {
                cand.push((d, i, j));
            }
        }
    }
    cand.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let (mut used_o, mut used_p) = (vec![false; oracle.len()], vec![false; pencil.len()]);
    let mut matches = Vec::new();
    for (d, i, j) in cand {
        if !used_o[i] && !used_p[j] {
            used_o[i] = true;
            used_p[j] = true;
            let f = |z: C<T>| [to_f64(z.re), to_f64(z.im)];
            matches.push(EigenMatch { oracle: f(oracle[i]), pencil: f(pencil[j]), distance: to_f64(d) });
        }
    }
    let left_o = oracle.iter().zip(&used_o).filter(|(_, u)| !**u).map(|(z, _)| *z).collect();
    let left_p = pencil.iter().zip(&used_p).filter(|(_, u)| !**u).map(|(z, _)| *z).collect();
    (matches, left_o, left_p)
}

/// Minimal-basis certificate for a `p x q` polynomial matrix, `p < q`:
/// row-reduced (highest-row-degree coefficient of full row rank) and of full
/// row rank at every root of `det [K(λ); R]` for a random constant `R`, plus
/// ten random points. The completion only locates candidate points; full
/// rank everywhere is then tested directly there.
pub fn check_minimal_basis<T: Real>(k: &MonomialMatrix<T>, tol: T) -> bool {
    minimal_basis_detail(k, tol, 42).map(|d| d.pass()).unwrap_or(false)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalBasisDetail {
    pub row_reduced: bool,
    pub candidate_points: usize,
    /// First point where the row rank dropped, if any.
    pub rank_drop_at: Option<[f64; 2]>,
}

impl MinimalBasisDetail {
    pub fn pass(&self) -> bool {
        self.row_reduced && self.rank_drop_at.is_none()
    }
}

pub fn minimal_basis_detail<T: Real>(k: &MonomialMatrix<T>, tol: T, seed: u64) -> Result<MinimalBasisDetail> {
    let (p, q) = k.shape();
    if p >= q {
        return Err(Error::ShapeMismatch(format!("minimal basis check needs p < q, got {p}x{q}")));
    }
    let mut highest = zeros(p, q);
    let mut degrees = Vec::with_capacity(p);
    for i in 0..p {
        let Some(d) = k.row_degree(i) else {
            return Ok(MinimalBasisDetail {
                row_reduced: false,
                candidate_points: 0,
                rank_drop_at: Some([f64::NAN, f64::NAN]),
            });
        };
        highest.set_row(i, &k.coeffs[d].row(i));
        degrees.push(d);
    }
    let row_reduced = rank(&highest, tol)? == p;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut completion = zeros(q - p, q);
    for z in completion.iter_mut() {
        *z = C::new(lit(rng.gen_range(-1.0..1.0)), lit(rng.gen_range(-1.0..1.0)));
    }
    let square = MonomialMatrix {
        coeffs: k
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut s = zeros(q, q);
                s.view_mut((0, 0), (p, q)).copy_from(c);
                if j == 0 {
                    s.view_mut((p, 0), (q - p, q)).copy_from(&completion);
                }
                s
            })
            .collect(),
    };
    let bound: usize = degrees.iter().sum();
    let mut points: Vec<C<T>> = match det_poly(&square, bound) {
        Ok(c) if !c.is_empty() => polynomial_roots(&c)?,
        // Identically zero: K is rank deficient everywhere (or R was unlucky);
        // the random points below decide.
        _ => vec![],
    };
    let candidate_points = points.len();
    for _ in 0..10 {
        points.push(C::new(lit(rng.gen_range(-3.0..3.0)), lit(rng.gen_range(-3.0..3.0))));
    }
    let rank_drop_at = points
        .into_iter()
        .find(|&z| {
            let kv = k.eval(z);
            // Scale that stays put as `z -> 0`, so a vanishing row counts as a drop.
            let scale = k
                .coeffs
                .iter()
                .enumerate()
                .fold(T::zero(), |acc, (j, c)| acc + crate::linalg::fro(c) * T::one().max(abs(z)).powi(j as i32));
            let s = crate::linalg::singular_values(&kv).unwrap_or_default();
            s.len() < p || s[p - 1] <= tol * scale
        })
        .map(|z| [to_f64(z.re), to_f64(z.im)]);
    Ok(MinimalBasisDetail { row_reduced, candidate_points, rank_drop_at })
}

/// `K(λ) N(λ)ᵀ = 0` coefficientwise, relative to the coefficient norms.
pub fn check_dual_bases<T: Real>(k: &MonomialMatrix<T>, n: &MonomialMatrix<T>) -> bool {
    let ((pk, q), (pn, qn)) = (k.shape(), n.shape());
    if q != qn || pk + pn != q {
        return false;
    }
    let scale = k.coeffs.iter().map(max_abs).fold(T::zero(), |a, b| a.max(b))
        * n.coeffs.iter().map(max_abs).fold(T::zero(), |a, b| a.max(b))
        * lit(q as f64);
    let mut worst = T::zero();
    for d in 0..k.coeffs.len() + n.coeffs.len() - 1 {
        let mut acc = zeros(pk, pn);
        for (i, ki) in k.coeffs.iter().enumerate() {
            if d >= i && d - i < n.coeffs.len() {
                acc += ki * n.coeffs[d - i].transpose();
            }
        }
        worst = worst.max(max_abs(&acc));
    }
    worst <= lit::<T>(1e-11) * scale.max(lit(1e-300))
}

/// `true` iff the pencil carries a structure and satisfies it:
/// SYM and BK_ODD symmetric, HERM Hermitian, DM block symmetric on the
/// polynomial grid. Families without structure report `false`.
pub fn check_structure<T: Real>(l: &Pencil<T>) -> bool {
    structure_defect(l).is_some_and(|d| d <= lit(1e-13))
}

/// Largest relative structure defect, `None` for unstructured families.
pub fn structure_defect<T: Real>(l: &Pencil<T>) -> Option<T> {
    let rel = |d: T, a: &CMat<T>| d / T::one().max(max_abs(a));
    match l.meta.family {
        Family::Sym | Family::BkOdd => Some(rel(symmetry_defect(&l.x), &l.x).max(rel(symmetry_defect(&l.y), &l.y))),
        Family::Herm => Some(rel(hermitian_defect(&l.x), &l.x).max(rel(hermitian_defect(&l.y), &l.y))),
        Family::DM => {
            let (n, m) = (l.meta.n, l.meta.m);
            let p = l.size() - n;
            let part = |a: &CMat<T>| a.view((n, n), (p, p)).clone_owned();
            let (x, y) = (part(&l.x), part(&l.y));
            let dx = max_abs(&(block_transpose_grid(&x, m) - &x));
            let dy = max_abs(&(block_transpose_grid(&y, m) - &y));
            Some(rel(dx, &x).max(rel(dy, &y)))
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub pass: bool,
    pub value: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub eigen_compare: Vec<EigenMatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, check: &str, value: f64, tol: f64, detail: Option<String>) {
        self.checks.push(Check { check: check.into(), pass: value <= tol, value, tol, detail });
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check == name)
    }
}

/// Spectral, ansatz, least-order and structure checks of `L` against `G`.
pub fn check_strong_linearization<T: Real>(l: &Pencil<T>, g: &RationalMatrix<T>, cfg: &Config) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let tol_eig: T = lit(cfg.tol_eig);
    let ctol = cluster_tol(tol_eig);
    let size_ok = l.size() == l.meta.n + l.meta.k * l.meta.m && l.meta.m == g.m() && l.meta.k == g.k();
    rep.push("size", if size_ok { 0.0 } else { 1.0 }, 0.0, (!size_ok).then(|| format!("pencil size {}", l.size())));
    if !size_ok {
        return rep;
    }

    match (oracle_eigenvalues(g, tol_eig), solve_gep(l, tol_eig)) {
        (Ok(oracle), Ok(sol)) => {
            let (matches, lo, lp) = match_eigenvalues(&oracle.finite_c::<T>(), &sol.eigenvalues(true), ctol);
            let worst = matches.iter().map(|m| m.distance).fold(0.0, f64::max);
            let unmatched = lo.len() + lp.len();
            let detail = (unmatched > 0).then(|| {
                let show = |v: &[C<T>]| {
                    v.iter()
                        .map(|z| format!("{:.6e}{:+.6e}i", to_f64(z.re), to_f64(z.im)))
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                format!("unmatched oracle [{}], unmatched pencil [{}]", show(&lo), show(&lp))
            });
            rep.push("eigenvalues", if unmatched > 0 { f64::INFINITY } else { worst }, to_f64(ctol), detail);
            rep.eigen_compare = matches;
            let geometric = rank(&l.x, lit(1e-10)).map(|r| l.size() - r).unwrap_or(usize::MAX);
            let diff = geometric.abs_diff(oracle.infinite_count) as f64;
            rep.push(
                "infinite_count",
                diff,
                0.0,
                Some(format!("pencil {geometric}, oracle {}", oracle.infinite_count)),
            );
        }
        (Err(e), _) | (_, Err(e)) => rep.push("eigenvalues", f64::INFINITY, to_f64(ctol), Some(e.to_string())),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = T::zero();
    let mut worst_at = None;
    let mut evaluated = 0;
    let mut attempts = 0;
    while evaluated < cfg.sample_points && attempts < 10 * cfg.sample_points.max(1) {
        attempts += 1;
        let r: f64 = rng.gen_range(0.3..2.5);
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = crate::scalar::cx::<T>(r * th.cos(), r * th.sin());
        match ansatz_residual(l, g, z) {
            Ok(res) => {
                evaluated += 1;
                if res >= worst {
                    worst = res;
                    worst_at = Some(z);
                }
            }
            // A sample too close to a pole; draw another.
            Err(_) => continue,
        }
    }
    let detail = worst_at.map(|z| format!("worst at {:.4}{:+.4}i over {evaluated} points", to_f64(z.re), to_f64(z.im)));
    let value = if evaluated == cfg.sample_points { to_f64(worst) } else { f64::INFINITY };
    rep.push("ansatz_identity", value, 1e-9, detail);

    if l.meta.n > 0 {
        let ok = check_least_order(l, lit(cfg.tol_rank)).unwrap_or(false);
        rep.push("least_order", if ok { 0.0 } else { 1.0 }, 0.0, None);
    }

    if l.structure_expected() {
        if let Some(d) = structure_defect(l) {
            rep.push("structure", to_f64(d), 1e-13, Some(l.meta.family.name().to_string()));
        }
    }
    rep
}

/// Smallest-to-largest singular value ratio of `[e_k ⊗ I, H]` for the DM
/// pencil with ansatz `e_k`; small exactly when `D_k` is singular.
pub fn leading_gate_ratio<T: Real>(d: &crate::ratmodel::PolyMat<T>) -> Result<T> {
    let k = d.degree();
    let kmat = crate::linearize::dm_ansatz_matrix(d, &crate::linalg::unit(k, k - 1))?;
    sv_ratio(&kmat)
}

/// Generalized eigenvalues of a pencil through the determinant oracle
/// (used to check transformed pencils without trusting QZ).
pub fn pencil_eigenvalues_by_det<T: Real>(l: &Pencil<T>) -> Result<Vec<C<T>>> {
    let mm = MonomialMatrix::pencil(&l.x, &l.y);
    let coeffs = det_poly(&mm, l.size())?;
    Ok(polynomial_roots(&coeffs)?.into_iter().map(|r| polish(&mm, r)).collect())
}

#[cfg(test)]
mod tests;
