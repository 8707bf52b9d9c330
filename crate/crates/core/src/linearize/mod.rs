//! Pencil families for rational matrices and the strict-equivalence
//! transforms that generate new ones.
//!
//! Every pencil `L(λ) = λX + Y` is laid out as a state block of size `n`
//! followed by a `k x k` grid of `m x m` polynomial blocks. The metadata
//! records how the pencil was built so that eigenvector recovery can read the
//! right blocks back out.

mod dm;
mod structured;

pub use dm::{dm_ansatz_matrix, solve_dm_pencil};
pub use structured::{build_block_kronecker_symmetric_odd, build_hermitian, build_symmetric};

use crate::basis::PolyBasis;
use crate::error::{Error, Result};
use crate::linalg::{block_transpose_grid, eye, fro, kron, kron_vec_eye, lu_solve, sv_ratio, unit, zeros};
use crate::ratmodel::{PolyMat, RationalMatrix, StateSpace};
use crate::scalar::{cone, lit, to_f64, CMat, CVec, Real, C};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    F,
    M1,
    M2,
    DM,
    Sym,
    Herm,
    BkOdd,
    Dg,
}

impl Family {
    pub const ALL: [Family; 8] =
        [Family::F, Family::M1, Family::M2, Family::DM, Family::Sym, Family::Herm, Family::BkOdd, Family::Dg];

    pub fn name(self) -> &'static str {
        match self {
            Family::F => "F",
            Family::M1 => "M1",
            Family::M2 => "M2",
            Family::DM => "DM",
            Family::Sym => "SYM",
            Family::Herm => "HERM",
            Family::BkOdd => "BK_ODD",
            Family::Dg => "DG",
        }
    }

    /// Accepts both the metadata spelling (`BK_ODD`) and the CLI one (`bk-odd`).
    pub fn parse(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        Ok(match key.as_str() {
            "f" => Family::F,
            "m1" => Family::M1,
            "m2" => Family::M2,
            "dm" => Family::DM,
            "sym" => Family::Sym,
            "herm" => Family::Herm,
            "bk_odd" => Family::BkOdd,
            "dg" => Family::Dg,
            _ => return Err(Error::Input(format!("unknown pencil family '{s}'"))),
        })
    }

    /// Families whose right eigenvectors carry `Φ_k(λ) ⊗ u` in the polynomial part.
    pub fn is_right_ansatz(self) -> bool {
        matches!(self, Family::F | Family::M1 | Family::DM | Family::Sym | Family::Herm | Family::Dg)
    }
}

/// Accumulated strict equivalence `L_now = left · L_built · right`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformTrace<T: Real> {
    pub left: CMat<T>,
    pub right: CMat<T>,
    /// True when `right` is the (conjugate) transpose of `left`.
    pub structured: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PencilMeta<T: Real> {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub family: Family,
    /// Right ansatz vector `v` for M1-like families, left ansatz vector `w`
    /// for M2, `None` for block Kronecker pencils.
    pub ansatz: Option<CVec<T>>,
    pub basis: PolyBasis<T>,
    pub transform: Option<TransformTrace<T>>,
}

/// `L(λ) = λX + Y` with construction metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil<T: Real> {
    pub x: CMat<T>,
    pub y: CMat<T>,
    pub meta: PencilMeta<T>,
}

impl<T: Real> Pencil<T> {
    pub fn size(&self) -> usize {
        self.x.nrows()
    }

    pub fn eval(&self, lambda: C<T>) -> CMat<T> {
        &self.x * lambda + &self.y
    }

    /// Blocks `(L11, L12, L21, L22)` of `L(λ)` split after the state rows.
    pub fn blocks(&self, lambda: C<T>) -> (CMat<T>, CMat<T>, CMat<T>, CMat<T>) {
        let l = self.eval(lambda);
        let (n, big) = (self.meta.n, self.size());
        let p = big - n;
        (
            l.view((0, 0), (n, n)).clone_owned(),
            l.view((0, n), (n, p)).clone_owned(),
            l.view((n, 0), (p, n)).clone_owned(),
            l.view((n, n), (p, p)).clone_owned(),
        )
    }

    /// Transfer function `Ĝ(λ) = L22 - L21 L11^{-1} L12`.
    pub fn transfer(&self, lambda: C<T>) -> Result<CMat<T>> {
        let (l11, l12, l21, l22) = self.blocks(lambda);
        if self.meta.n == 0 {
            return Ok(l22);
        }
        let tol = lit::<T>(1e-14);
        let s = lu_solve(&l11, &l12, tol).ok_or_else(|| Error::SingularABlock(to_f64(lambda.re), to_f64(lambda.im)))?;
        Ok(l22 - l21 * s)
    }

    /// Pencil scale used to normalise residuals.
    pub fn scale(&self) -> T {
        fro(&self.x).max(fro(&self.y))
    }

    /// Whether construction-time structure (symmetry, block symmetry) is
    /// expected to hold: untouched pencils and structured congruences only.
    pub fn structure_expected(&self) -> bool {
        self.meta.transform.as_ref().is_none_or(|t| t.structured)
    }
}

/// Ansatz data `(v, H)` for M1-type pencils or `(w, H)` for M2-type pencils.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzSpec<T: Real> {
    pub v: CVec<T>,
    /// `km x (k-1)m`.
    pub h: CMat<T>,
}

impl<T: Real> AnsatzSpec<T> {
    /// `v = e_1`, `H = [0; I]`, which reproduces the unmodified `F` pencil.
    pub fn standard(k: usize, m: usize) -> Self {
        let mut h = zeros(k * m, (k - 1) * m);
        h.view_mut((m, 0), ((k - 1) * m, (k - 1) * m)).copy_from(&eye((k - 1) * m));
        Self { v: unit(k, 0), h }
    }

    /// `[v ⊗ I_m, H]`.
    pub fn right_matrix(&self, m: usize) -> Result<CMat<T>> {
        let k = self.v.len();
        if self.h.shape() != (k * m, (k - 1) * m) {
            return Err(Error::ShapeMismatch(format!("H must be {}x{}", k * m, (k - 1) * m)));
        }
        let mut out = zeros(k * m, k * m);
        out.view_mut((0, 0), (k * m, m)).copy_from(&kron_vec_eye(&self.v, m));
        out.view_mut((0, m), (k * m, (k - 1) * m)).copy_from(&self.h);
        Ok(out)
    }

    /// `[w^T ⊗ I_m; H^B]`.
    pub fn left_matrix(&self, m: usize) -> Result<CMat<T>> {
        let k = self.v.len();
        if self.h.shape() != (k * m, (k - 1) * m) {
            return Err(Error::ShapeMismatch(format!("H must be {}x{}", k * m, (k - 1) * m)));
        }
        let mut out = zeros(k * m, k * m);
        out.view_mut((0, 0), (m, k * m)).copy_from(&kron_vec_eye(&self.v, m).transpose());
        out.view_mut((m, 0), ((k - 1) * m, k * m)).copy_from(&block_transpose_grid(&self.h, m));
        Ok(out)
    }
}

/// Nonsingular multipliers `X`, `Y` applied to the state block `λI - A`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateScaling<T: Real> {
    pub x: CMat<T>,
    pub y: CMat<T>,
}

impl<T: Real> StateScaling<T> {
    pub fn identity(n: usize) -> Self {
        Self { x: eye(n), y: eye(n) }
    }
}

/// Blocks of the strict equivalence `[Q1 0; W Q2] L [Q3 Z; 0 Q4]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformSpec<T: Real> {
    pub q1: CMat<T>,
    pub q2: CMat<T>,
    pub q3: CMat<T>,
    pub q4: CMat<T>,
    pub w: CMat<T>,
    pub z: CMat<T>,
}

/// Which congruence a transform is, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Congruence {
    None,
    Transpose,
    ConjugateTranspose,
}

impl<T: Real> TransformSpec<T> {
    pub fn identity(n: usize, p: usize) -> Self {
        Self { q1: eye(n), q2: eye(p), q3: eye(n), q4: eye(p), w: zeros(p, n), z: zeros(n, p) }
    }

    /// `[Q 0; R P] L [Q 0; R P]^T`.
    pub fn congruence(q: CMat<T>, p: CMat<T>, r: CMat<T>) -> Self {
        Self { q3: q.transpose(), q4: p.transpose(), z: r.transpose(), q1: q, q2: p, w: r }
    }

    /// `[Q 0; R P] L [Q 0; R P]^*`.
    pub fn hermitian_congruence(q: CMat<T>, p: CMat<T>, r: CMat<T>) -> Self {
        Self { q3: q.adjoint(), q4: p.adjoint(), z: r.adjoint(), q1: q, q2: p, w: r }
    }

    pub fn left(&self) -> CMat<T> {
        let (n, p) = (self.q1.nrows(), self.q2.nrows());
        let mut out = zeros(n + p, n + p);
        out.view_mut((0, 0), (n, n)).copy_from(&self.q1);
        out.view_mut((n, 0), (p, n)).copy_from(&self.w);
        out.view_mut((n, n), (p, p)).copy_from(&self.q2);
        out
    }

    pub fn right(&self) -> CMat<T> {
        let (n, p) = (self.q3.nrows(), self.q4.nrows());
        let mut out = zeros(n + p, n + p);
        out.view_mut((0, 0), (n, n)).copy_from(&self.q3);
        out.view_mut((0, n), (n, p)).copy_from(&self.z);
        out.view_mut((n, n), (p, p)).copy_from(&self.q4);
        out
    }

    pub fn kind(&self) -> Congruence {
        let (l, r) = (self.left(), self.right());
        if r == l.transpose() {
            Congruence::Transpose
        } else if r == l.adjoint() {
            Congruence::ConjugateTranspose
        } else {
            Congruence::None
        }
    }
}

/// Smallest-to-largest singular value ratio below which a matrix counts as singular.
pub(crate) fn singular_cutoff<T: Real>() -> T {
    lit(1e-10)
}

pub(crate) fn is_singular<T: Real>(m: &CMat<T>) -> Result<bool> {
    if m.nrows() == 0 {
        return Ok(false);
    }
    Ok(sv_ratio(m)? <= singular_cutoff())
}

/// `(X_F, Y_F)` of `F(λ) = [m(λ); M(λ) ⊗ I_m]` with `F(λ)(Φ_k ⊗ I) = e_1 ⊗ D(λ)`.
pub(crate) fn f_pencil<T: Real>(d: &PolyMat<T>) -> Result<(CMat<T>, CMat<T>)> {
    let k = d.degree();
    if k < 2 {
        return Err(Error::DegreeTooLow(k));
    }
    let m = d.m();
    let dd = &d.coeffs;
    let mut x = zeros(k * m, k * m);
    let mut y = zeros(k * m, k * m);
    match &d.basis {
        PolyBasis::ThreeTerm(b) => {
            let (a, be, g) = (b.alpha[k - 1], b.beta[k - 1], b.gamma[k - 1]);
            x.view_mut((0, 0), (m, m)).copy_from(&(&dd[k] / a));
            y.view_mut((0, 0), (m, m)).copy_from(&(&dd[k - 1] - &dd[k] * (be / a)));
            y.view_mut((0, m), (m, m)).copy_from(&(&dd[k - 2] - &dd[k] * (g / a)));
            for j in 2..k {
                y.view_mut((0, j * m), (m, m)).copy_from(&dd[k - 1 - j]);
            }
        }
        PolyBasis::DegreeGraded(b) => {
            x.view_mut((0, 0), (m, m)).copy_from(&dd[k]);
            y.view_mut((0, 0), (m, m)).copy_from(&(&dd[k - 1] - &dd[k] * b.alpha[k - 1]));
            for j in 1..k {
                let i = k - 1 - j;
                y.view_mut((0, j * m), (m, m)).copy_from(&(&dd[i] + &dd[k] * b.b(k, i)));
            }
        }
    }
    let (mx, my) = d.basis.relation_pencil(k)?;
    let im = eye::<T>(m);
    x.view_mut((m, 0), ((k - 1) * m, k * m)).copy_from(&kron(&mx, &im));
    y.view_mut((m, 0), ((k - 1) * m, k * m)).copy_from(&kron(&my, &im));
    Ok((x, y))
}

fn meta<T: Real>(n: usize, d: &PolyMat<T>, family: Family, ansatz: Option<CVec<T>>) -> PencilMeta<T> {
    PencilMeta { n, k: d.degree(), m: d.m(), family, ansatz, basis: d.basis.clone(), transform: None }
}

/// `F_Φ^D(λ)`: the first companion form for the monomial basis.
pub fn build_f<T: Real>(d: &PolyMat<T>) -> Result<Pencil<T>> {
    let (x, y) = f_pencil(d)?;
    let family = if matches!(d.basis, PolyBasis::DegreeGraded(_)) { Family::Dg } else { Family::F };
    Ok(Pencil { x, y, meta: meta(0, d, family, Some(unit(d.degree(), 0))) })
}

/// Block transpose of the polynomial grid.
///
/// Only defined for polynomial pencils (`n = 0`): the state coupling blocks
/// of a rational linearization do not have a block-transposed counterpart
/// with the same layout. M1-type tags become M2 and vice versa.
pub fn block_transpose<T: Real>(l: &Pencil<T>) -> Result<Pencil<T>> {
    let (k, m) = (l.meta.k, l.meta.m);
    if l.meta.n != 0 {
        return Err(Error::ShapeMismatch("block transpose needs a polynomial pencil (n = 0)".into()));
    }
    if l.size() != k * m {
        return Err(Error::ShapeMismatch(format!("pencil size {} is not k*m = {}", l.size(), k * m)));
    }
    let family = match l.meta.family {
        Family::F | Family::M1 => Family::M2,
        Family::M2 => Family::M1,
        f => f,
    };
    let mut meta = l.meta.clone();
    meta.family = family;
    meta.transform = None;
    Ok(Pencil { x: block_transpose_grid(&l.x, m), y: block_transpose_grid(&l.y, m), meta })
}

fn check_scaling<T: Real>(s: &StateScaling<T>, n: usize) -> Result<()> {
    if s.x.shape() != (n, n) || s.y.shape() != (n, n) {
        return Err(Error::ShapeMismatch(format!("state multipliers must be {n}x{n}")));
    }
    if is_singular(&s.x)? || is_singular(&s.y)? {
        return Err(Error::SingularXY);
    }
    Ok(())
}

fn warn_if_not_minimal<T: Real>(ss: &StateSpace<T>) {
    if let Ok(rep) = crate::ratmodel::is_minimal(ss, lit(1e-10)) {
        if !rep.minimal {
            log::warn!(
                "realization is not minimal (ranks {}/{} of {}); the pencil may not be a strong linearization",
                rep.ctrb_rank,
                rep.obsv_rank,
                rep.n
            );
        }
    }
}

/// `[[X(λI-A)Y, [0 … XB]], [-(v⊗I)CY, K·F(λ)]]` with `K = [v⊗I, H]`.
pub(crate) fn assemble_m1<T: Real>(
    g: &RationalMatrix<T>,
    v: &CVec<T>,
    kmat: &CMat<T>,
    s: &StateScaling<T>,
    family: Family,
) -> Result<Pencil<T>> {
    let (xf, yf) = f_pencil(&g.poly)?;
    let ss = g.state_space()?;
    let (n, k, m) = (ss.n(), g.k(), g.m());
    check_scaling(s, n)?;
    warn_if_not_minimal(&ss);
    let p = k * m;
    let mut x = zeros(n + p, n + p);
    let mut y = zeros(n + p, n + p);
    x.view_mut((n, n), (p, p)).copy_from(&(kmat * xf));
    y.view_mut((n, n), (p, p)).copy_from(&(kmat * yf));
    if n > 0 {
        x.view_mut((0, 0), (n, n)).copy_from(&(&s.x * &s.y));
        y.view_mut((0, 0), (n, n)).copy_from(&(-(&s.x * &ss.a * &s.y)));
        y.view_mut((0, n + p - m), (n, m)).copy_from(&(&s.x * &ss.b));
        y.view_mut((n, 0), (p, n)).copy_from(&(-(kron_vec_eye(v, m) * &ss.c * &s.y)));
    }
    Ok(Pencil { x, y, meta: meta(n, &g.poly, family, Some(v.clone())) })
}

/// M1-type linearization; with a degree-graded basis the result is tagged DG.
pub fn build_m1<T: Real>(g: &RationalMatrix<T>, spec: &AnsatzSpec<T>, s: &StateScaling<T>) -> Result<Pencil<T>> {
    check_degree(g)?;
    let kmat = spec.right_matrix(g.m())?;
    if spec.v.len() != g.k() {
        return Err(Error::ShapeMismatch(format!("ansatz vector must have length {}", g.k())));
    }
    if is_singular(&kmat)? {
        return Err(Error::SingularAnsatz);
    }
    let family = if matches!(g.poly.basis, PolyBasis::DegreeGraded(_)) { Family::Dg } else { Family::M1 };
    assemble_m1(g, &spec.v, &kmat, s, family)
}

/// `F` family for a rational matrix: the M1 pencil with `v = e_1`, `H = [0; I]`.
pub fn build_f_rational<T: Real>(g: &RationalMatrix<T>) -> Result<Pencil<T>> {
    check_degree(g)?;
    let spec = AnsatzSpec::standard(g.k(), g.m());
    let kmat = spec.right_matrix(g.m())?;
    let family = if matches!(g.poly.basis, PolyBasis::DegreeGraded(_)) { Family::Dg } else { Family::F };
    assemble_m1(g, &spec.v, &kmat, &StateScaling::identity(g.n()), family)
}

/// DG family: requires `G` to be written in a degree-graded basis.
pub fn build_degree_graded<T: Real>(
    g: &RationalMatrix<T>,
    spec: &AnsatzSpec<T>,
    s: &StateScaling<T>,
) -> Result<Pencil<T>> {
    if !matches!(g.poly.basis, PolyBasis::DegreeGraded(_)) {
        return Err(Error::InvalidBasis("degree-graded pencils need a degree-graded basis".into()));
    }
    build_m1(g, spec, s)
}

/// `[[X(λI-A)Y, XB(w^T⊗I)], [(0; -CY), F^B(λ)·[w^T⊗I; H^B]]]`.
pub fn build_m2<T: Real>(g: &RationalMatrix<T>, spec: &AnsatzSpec<T>, s: &StateScaling<T>) -> Result<Pencil<T>> {
    check_degree(g)?;
    if matches!(g.poly.basis, PolyBasis::DegreeGraded(_)) {
        return Err(Error::Unsupported("M2 pencils are built for three-term bases only".into()));
    }
    let (n, k, m) = (g.n(), g.k(), g.m());
    if spec.v.len() != k {
        return Err(Error::ShapeMismatch(format!("ansatz vector must have length {k}")));
    }
    let kmat = spec.left_matrix(m)?;
    if is_singular(&kmat)? {
        return Err(Error::SingularAnsatz);
    }
    let (xf, yf) = f_pencil(&g.poly)?;
    let ss = g.state_space()?;
    check_scaling(s, n)?;
    warn_if_not_minimal(&ss);
    let p = k * m;
    let mut x = zeros(n + p, n + p);
    let mut y = zeros(n + p, n + p);
    x.view_mut((n, n), (p, p)).copy_from(&(block_transpose_grid(&xf, m) * &kmat));
    y.view_mut((n, n), (p, p)).copy_from(&(block_transpose_grid(&yf, m) * &kmat));
    if n > 0 {
        let w_row = kron_vec_eye(&spec.v, m).transpose();
        x.view_mut((0, 0), (n, n)).copy_from(&(&s.x * &s.y));
        y.view_mut((0, 0), (n, n)).copy_from(&(-(&s.x * &ss.a * &s.y)));
        y.view_mut((0, n), (n, p)).copy_from(&(&s.x * &ss.b * w_row));
        y.view_mut((n + p - m, 0), (m, n)).copy_from(&(-(&ss.c * &s.y)));
    }
    Ok(Pencil { x, y, meta: meta(n, &g.poly, Family::M2, Some(spec.v.clone())) })
}

/// DM family for a rational matrix: M1 with the unique block-symmetric
/// polynomial part for ansatz vector `v`.
pub fn build_dm<T: Real>(g: &RationalMatrix<T>, v: &CVec<T>, s: &StateScaling<T>) -> Result<Pencil<T>> {
    check_degree(g)?;
    if matches!(g.poly.basis, PolyBasis::DegreeGraded(_)) {
        return Err(Error::Unsupported("DM pencils are built for three-term bases only".into()));
    }
    let kmat = dm_ansatz_matrix(&g.poly, v)?;
    if is_singular(&kmat)? {
        return Err(Error::SingularAnsatz);
    }
    assemble_m1(g, v, &kmat, s, Family::DM)
}

fn check_degree<T: Real>(g: &RationalMatrix<T>) -> Result<()> {
    if g.k() < 2 {
        return Err(Error::DegreeTooLow(g.k()));
    }
    Ok(())
}

/// Optional inputs for [`build_pencil`]; anything left `None` takes the
/// family's default (`v = e_1` and `H = [0; I]` for M1/M2, `v = e_k` for DM,
/// identity multipliers, `μ = 1`).
#[derive(Clone, Debug)]
pub struct BuildOptions<T: Real> {
    pub v: Option<CVec<T>>,
    pub h: Option<CMat<T>>,
    pub mu: C<T>,
    pub state: Option<StateScaling<T>>,
}

impl<T: Real> Default for BuildOptions<T> {
    fn default() -> Self {
        Self { v: None, h: None, mu: cone(), state: None }
    }
}

/// Builds any family from one set of options.
pub fn build_pencil<T: Real>(g: &RationalMatrix<T>, family: Family, opts: &BuildOptions<T>) -> Result<Pencil<T>> {
    let (n, k, m) = (g.n(), g.k(), g.m());
    check_degree(g)?;
    let spec = || {
        let mut spec = AnsatzSpec::standard(k, m);
        if let Some(v) = &opts.v {
            spec.v = v.clone();
        }
        if let Some(h) = &opts.h {
            spec.h = h.clone();
        }
        spec
    };
    let scaling = opts.state.clone().unwrap_or_else(|| StateScaling::identity(n));
    match family {
        Family::F => build_f_rational(g),
        Family::M1 => build_m1(g, &spec(), &scaling),
        Family::M2 => build_m2(g, &spec(), &scaling),
        Family::Dg => build_degree_graded(g, &spec(), &scaling),
        Family::DM => {
            let v = opts.v.clone().unwrap_or_else(|| unit(k, k - 1));
            build_dm(g, &v, &scaling)
        }
        Family::Sym => build_symmetric(g, opts.mu, &scaling.x),
        Family::Herm => build_hermitian(g, opts.mu, &scaling.x),
        Family::BkOdd => build_block_kronecker_symmetric_odd(g, &scaling.x),
    }
}

/// `L_2(λ) = [Q1 0; W Q2] L(λ) [Q3 Z; 0 Q4]`, recorded in the metadata.
pub fn strict_equiv<T: Real>(l: &Pencil<T>, t: &TransformSpec<T>) -> Result<Pencil<T>> {
    let (n, p) = (l.meta.n, l.size() - l.meta.n);
    let shapes = [(&t.q1, (n, n)), (&t.q3, (n, n)), (&t.q2, (p, p)), (&t.q4, (p, p)), (&t.w, (p, n)), (&t.z, (n, p))];
    if shapes.iter().any(|(m, s)| m.shape() != *s) {
        return Err(Error::ShapeMismatch("transform blocks do not match the pencil partition".into()));
    }
    for (name, q) in [("Q1", &t.q1), ("Q2", &t.q2), ("Q3", &t.q3), ("Q4", &t.q4)] {
        if is_singular(q)? {
            return Err(Error::SingularTransform(name));
        }
    }
    let (left, right) = (t.left(), t.right());
    let kind = t.kind();
    let mut x = &left * &l.x * &right;
    let mut y = &left * &l.y * &right;
    let was_structured = l.meta.transform.as_ref().is_none_or(|tr| tr.structured);
    let structured = was_structured
        && match (l.meta.family, kind) {
            (Family::Sym | Family::BkOdd, Congruence::Transpose) => {
                mirror_symmetric(&mut x);
                mirror_symmetric(&mut y);
                true
            }
            (Family::Herm, Congruence::ConjugateTranspose) => {
                mirror_hermitian(&mut x);
                mirror_hermitian(&mut y);
                true
            }
            _ => false,
        };
    let trace = match &l.meta.transform {
        None => TransformTrace { left, right, structured },
        Some(prev) => TransformTrace { left: &left * &prev.left, right: &prev.right * &right, structured },
    };
    let mut meta = l.meta.clone();
    meta.transform = Some(trace);
    Ok(Pencil { x, y, meta })
}

/// Copies the upper triangle onto the lower one.
pub(crate) fn mirror_symmetric<T: Real>(a: &mut CMat<T>) {
    for i in 0..a.nrows() {
        for j in i + 1..a.ncols() {
            a[(j, i)] = a[(i, j)];
        }
    }
}

pub(crate) fn mirror_hermitian<T: Real>(a: &mut CMat<T>) {
    for i in 0..a.nrows() {
        a[(i, i)] = C::new(a[(i, i)].re, T::zero());
        for j in i + 1..a.ncols() {
            a[(j, i)] = a[(i, j)].conj();
        }
    }
}

/// `Φ_k(λ) ⊗ I_m`.
pub(crate) fn phi_kron<T: Real>(basis: &PolyBasis<T>, k: usize, m: usize, lambda: C<T>) -> Result<CMat<T>> {
    Ok(kron_vec_eye(&basis.eval_vec(k, lambda)?, m))
}

/// `Λ_q(λ) = [λ^q, ..., λ, 1]^T`.
pub(crate) fn lambda_powers<T: Real>(q: usize, lambda: C<T>) -> CVec<T> {
    let mut v = CVec::from_element(q + 1, cone());
    for i in (0..q).rev() {
        v[i] = v[i + 1] * lambda;
    }
    v
}

/// Residual of the defining ansatz identity at `λ`, relative to `‖G(λ)‖`.
///
/// M1-type: `Ĝ(Φ_k ⊗ I) = v ⊗ G`. M2: `(Φ_k^T ⊗ I)Ĝ = w^T ⊗ G`. DM checks
/// both. Block Kronecker pencils check `(Λ_q^T ⊗ I, 0) Ĝ (Λ_q ⊗ I; 0) = G`.
/// Transformed pencils are first mapped back with `Ĝ_1 = Q2^{-1} Ĝ_2 Q4^{-1}`.
pub fn ansatz_residual<T: Real>(l: &Pencil<T>, g: &RationalMatrix<T>, lambda: C<T>) -> Result<T> {
    let (n, k, m) = (l.meta.n, l.meta.k, l.meta.m);
    let mut gh = l.transfer(lambda)?;
    if let Some(t) = &l.meta.transform {
        let p = l.size() - n;
        let q2 = t.left.view((n, n), (p, p)).clone_owned();
        let q4 = t.right.view((n, n), (p, p)).clone_owned();
        let tol = lit::<T>(1e-14);
        let tmp = lu_solve(&q2, &gh, tol).ok_or(Error::SingularTransform("Q2"))?;
        gh = lu_solve(&q4.transpose(), &tmp.transpose(), tol).ok_or(Error::SingularTransform("Q4"))?.transpose();
    }
    let gv = g.eval(lambda)?;
    let scale = fro(&gv).max(T::one());
    let mut worst = T::zero();
    match l.meta.family {
        Family::BkOdd => {
            let q = (k - 1) / 2;
            let lam = lambda_powers(q, lambda);
            let mut emb = zeros(k * m, m);
            emb.view_mut((0, 0), ((q + 1) * m, m)).copy_from(&kron_vec_eye(&lam, m));
            let r = emb.transpose() * gh * emb - gv;
            worst = fro(&r) / scale;
        }
        fam => {
            let v = l.meta.ansatz.clone().unwrap_or_else(|| unit(k, 0));
            let phi = phi_kron(&l.meta.basis, k, m, lambda)?;
            let target = kron_vec_eye(&v, m) * &gv;
            if fam.is_right_ansatz() {
                worst = worst.max(fro(&(&gh * &phi - &target)) / scale);
            }
            // With a state block, the DM construction is M1-shaped: only the
            // right ansatz survives.
            if fam == Family::M2 || (fam == Family::DM && n == 0) {
                let r = phi.transpose() * &gh - &gv * kron_vec_eye(&v, m).transpose();
                worst = worst.max(fro(&r) / scale);
            }
        }
    }
    Ok(worst)
}

/// The `U(λ) = [M_Φ(λ) ⊗ I; e_k^T ⊗ I]` completion used for unimodularity checks.
pub fn unimodular_completion<T: Real>(basis: &PolyBasis<T>, k: usize, m: usize, lambda: C<T>) -> Result<CMat<T>> {
    let (mx, my) = basis.relation_pencil(k)?;
    let mut u = zeros(k, k);
    u.view_mut((0, 0), (k - 1, k)).copy_from(&(mx * lambda + my));
    u[(k - 1, k - 1)] = cone();
    Ok(kron(&u, &eye(m)))
}

#[cfg(test)]
mod tests;
