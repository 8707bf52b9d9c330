//! Seeded random instances for tests, acceptance runs and the CLI `oracle`
//! smoke mode. Everything draws from a caller-provided RNG, so a fixed seed
//! gives a fixed instance.

use rand::Rng;

use crate::basis::{standard_basis, BasisKind, PolyBasis};
use crate::error::Result;
use crate::linalg::{eye, singular_values, tr, zeros};
use crate::linearize::TransformSpec;
use crate::ratmodel::{PoleResidue, PolyMat, RationalMatrix, StateSpace, StrictlyProper, Structure};
use crate::realize::from_pole_residue;
use crate::scalar::{lit, CMat, CVec, Real, C};

/// Shape of a random rational matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub basis: BasisKind,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub structure: Structure,
}

fn scalar<T: Real, R: Rng + ?Sized>(rng: &mut R, complex: bool) -> C<T> {
    let re = rng.gen_range(-1.0..1.0);
    let im = if complex { rng.gen_range(-1.0..1.0) } else { 0.0 };
    C::new(lit(re), lit(im))
}

/// Entries uniform in `[-1, 1]` (real and imaginary parts independently).
pub fn random_matrix<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, complex: bool) -> CMat<T> {
    CMat::from_fn(rows, cols, |_, _| scalar(rng, complex))
}

pub fn random_vector<T: Real, R: Rng + ?Sized>(rng: &mut R, len: usize, complex: bool) -> CVec<T> {
    CVec::from_fn(len, |_, _| scalar(rng, complex))
}

pub fn random_symmetric<T: Real, R: Rng + ?Sized>(rng: &mut R, m: usize, complex: bool) -> CMat<T> {
    let a = random_matrix::<T, R>(rng, m, m, complex);
    let mut s = &a + tr(&a);
    s /= C::new(lit(2.0), T::zero());
    s
}

pub fn random_hermitian<T: Real, R: Rng + ?Sized>(rng: &mut R, m: usize) -> CMat<T> {
    let a = random_matrix::<T, R>(rng, m, m, true);
    let mut h = &a + a.adjoint();
    h /= C::new(lit(2.0), T::zero());
    h
}

/// Random matrix whose smallest/largest singular value ratio exceeds `floor`.
fn well_conditioned<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    floor: f64,
    mut draw: impl FnMut(&mut R) -> CMat<T>,
) -> Result<CMat<T>> {
    loop {
        let a = draw(rng);
        let s = singular_values(&a)?;
        let (hi, lo) = (s[0], s[s.len() - 1]);
        if m == 0 || lo > hi * lit(floor) {
            return Ok(a);
        }
    }
}

fn coefficient<T: Real, R: Rng + ?Sized>(rng: &mut R, m: usize, structure: Structure) -> CMat<T> {
    match structure {
        Structure::General => random_matrix(rng, m, m, true),
        Structure::Symmetric => random_symmetric(rng, m, true),
        Structure::Hermitian => random_hermitian(rng, m),
    }
}

/// Random `D_0..D_k` in a standard basis with a leading coefficient kept
/// away from singularity (ratio floor 1e-2).
pub fn random_poly<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    kind: BasisKind,
    k: usize,
    m: usize,
    structure: Structure,
) -> Result<PolyMat<T>> {
    let basis = PolyBasis::ThreeTerm(standard_basis(kind, k.max(1))?);
    let mut coeffs: Vec<CMat<T>> = (0..k).map(|_| coefficient(rng, m, structure)).collect();
    coeffs.push(well_conditioned(rng, m, 1e-2, |r| coefficient(r, m, structure))?);
    PolyMat::new(basis, coeffs)
}

/// General complex `(A, B, C)` with `A` scaled to spectral radius about 1.
pub fn random_state_space<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Result<StateSpace<T>> {
    let scale = C::new(lit(1.0 / (n.max(1) as f64).sqrt()), T::zero());
    let a = random_matrix::<T, R>(rng, n, n, true) * scale;
    let b = random_matrix(rng, n, m, true);
    let c = random_matrix(rng, m, n, true);
    StateSpace::new(a, b, c)
}

/// `Σ R_i/(λ - p_i)` with distinct poles and residues of random rank.
///
/// Symmetric: residues `±U Uᵀ`. Hermitian: real poles, residues `±U U*`.
/// General: residues `U Vᵀ`. With `real` set, poles and residue factors are
/// real (the setting of the Hankel route); otherwise they are complex except
/// for the Hermitian poles.
pub fn random_pole_residue<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    poles: usize,
    m: usize,
    structure: Structure,
    real: bool,
) -> PoleResidue<T> {
    let mut ps: Vec<C<T>> = Vec::with_capacity(poles);
    let real_poles = real || structure == Structure::Hermitian;
    while ps.len() < poles {
        let im = if real_poles { 0.0 } else { rng.gen_range(-2.0..2.0) };
        let p: C<T> = C::new(lit(rng.gen_range(-2.0..2.0)), lit(im));
        // Keep poles separated so minimality is not borderline.
        if ps.iter().all(|q| crate::scalar::abs(*q - p) > lit(0.05)) {
            ps.push(p);
        }
    }
    let residues = (0..poles)
        .map(|_| {
            let r = rng.gen_range(1..=m);
            let u = random_matrix::<T, R>(rng, m, r, !real);
            let sign = C::new(lit(if rng.gen_bool(0.5) { 1.0 } else { -1.0 }), T::zero());
            match structure {
                Structure::Symmetric => &u * tr(&u) * sign,
                Structure::Hermitian => &u * u.adjoint() * sign,
                Structure::General => &u * tr(&random_matrix::<T, R>(rng, m, r, !real)),
            }
        })
        .collect();
    PoleResidue { poles: ps, residues }
}

/// Random rational matrix of the requested shape.
///
/// General instances carry a random state-space part of order `n`.
/// Structured instances get theirs from a structured pole-residue expansion
/// with `n` rank-one residues, realized minimally.
pub fn random_rational<T: Real, R: Rng + ?Sized>(rng: &mut R, spec: &InstanceSpec) -> Result<RationalMatrix<T>> {
    let poly = random_poly(rng, spec.basis, spec.k, spec.m, spec.structure)?;
    if spec.n == 0 {
        return RationalMatrix::new(poly, StrictlyProper::Zero, spec.structure);
    }
    let sp = match spec.structure {
        Structure::General => StrictlyProper::StateSpace(random_state_space(rng, spec.n, spec.m)?),
        s => {
            let pr = structured_pole_residue(rng, spec.n, spec.m, s);
            StrictlyProper::StateSpace(from_pole_residue(&pr, lit(1e-10))?)
        }
    };
    RationalMatrix::new(poly, sp, spec.structure)
}

/// [`random_rational`] from a ChaCha8 stream seeded with `seed`.
pub fn seeded_rational(seed: u64, spec: &InstanceSpec) -> Result<RationalMatrix<f64>> {
    use rand::SeedableRng;
    random_rational(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), spec)
}

/// Structured pole-residue data of total order exactly `n`: rank-one residues
/// at `n` distinct poles.
fn structured_pole_residue<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, s: Structure) -> PoleResidue<T> {
    let mut pr = random_pole_residue::<T, R>(rng, n, m, s, false);
    for r in pr.residues.iter_mut() {
        let u = random_vector::<T, R>(rng, m, true);
        *r = match s {
            Structure::Hermitian => &u * u.adjoint(),
            _ => &u * u.transpose(),
        };
    }
    pr
}

/// Symmetric polynomial instance whose leading coefficient is singular
/// (rank `m - 1`) together with the same instance with a nonsingular one.
pub fn leading_pair<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    kind: BasisKind,
    k: usize,
    m: usize,
) -> Result<(RationalMatrix<T>, RationalMatrix<T>)> {
    let good = random_poly::<T, R>(rng, kind, k, m, Structure::Symmetric)?;
    let mut coeffs = good.coeffs.clone();
    // Rank m-1 symmetric: sum of m-1 rank-one terms u uᵀ.
    let mut dk = zeros::<T>(m, m);
    for _ in 0..m.saturating_sub(1) {
        let u = random_vector::<T, R>(rng, m, true);
        dk += &u * u.transpose();
    }
    if m == 1 {
        dk = zeros(1, 1);
    }
    coeffs[k] = dk;
    // A zero D_k would lower the degree; keep it as a trailing coefficient.
    let bad = PolyMat { basis: good.basis.clone(), coeffs };
    Ok((
        RationalMatrix { poly: bad, sp: StrictlyProper::Zero, structure: Structure::Symmetric },
        RationalMatrix::new(good, StrictlyProper::Zero, Structure::Symmetric)?,
    ))
}

/// Well-conditioned block transform `[Q1 0; W Q2] · [Q3 Z; 0 Q4]` for a
/// pencil with state size `n` and polynomial size `p`.
pub fn random_transform<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, p: usize) -> TransformSpec<T> {
    let mut near_identity = |d: usize| {
        let scale = C::new(lit(0.5 / (d.max(1) as f64).sqrt()), T::zero());
        eye::<T>(d) + random_matrix::<T, R>(rng, d, d, true) * scale
    };
    let (q1, q2, q3, q4) = (near_identity(n), near_identity(p), near_identity(n), near_identity(p));
    let w = random_matrix(rng, p, n, true);
    let z = random_matrix(rng, n, p, true);
    TransformSpec { q1, q2, q3, q4, w, z }
}
