use super::*;
use crate::basis::{standard_basis, BasisKind, DegreeGradedBasis};
use crate::linalg::{max_abs, symmetry_defect};
use crate::ratmodel::{StrictlyProper, Structure, SymmetricRealization};
use crate::scalar::cx;

fn c(x: f64) -> C<f64> {
    cx(x, 0.0)
}

fn s(x: f64) -> CMat<f64> {
    CMat::from_element(1, 1, c(x))
}

fn basis(kind: BasisKind, k: usize) -> PolyBasis<f64> {
    PolyBasis::ThreeTerm(standard_basis(kind, k).unwrap())
}

fn grid(rows: &[&[CMat<f64>]]) -> CMat<f64> {
    let m = rows[0][0].nrows();
    let (br, bc) = (rows.len(), rows[0].len());
    let mut out = CMat::zeros(br * m, bc * m);
    for (i, r) in rows.iter().enumerate() {
        for (j, b) in r.iter().enumerate() {
            out.view_mut((i * m, j * m), (m, m)).copy_from(b);
        }
    }
    out
}

fn scalar_example() -> RationalMatrix<f64> {
    let poly = PolyMat::new(PolyBasis::monomial(2), vec![s(-1.0), s(0.0), s(1.0)]).unwrap();
    let ss = StateSpace::new(s(0.0), s(1.0), s(1.0)).unwrap();
    RationalMatrix::new(poly, StrictlyProper::StateSpace(ss), Structure::General).unwrap()
}

fn cubic_with_singular_constant() -> (PolyMat<f64>, CMat<f64>) {
    let i = CMat::<f64>::identity(2, 2);
    let sm = CMat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.0)]);
    let p = PolyMat::new(PolyBasis::monomial(3), vec![sm.clone(), i.clone(), &i * c(2.0), i]).unwrap();
    (p, sm)
}

#[test]
fn companion_form_of_cubic() {
    let (p, sm) = cubic_with_singular_constant();
    let f = build_f(&p).unwrap();
    let (i, z) = (CMat::<f64>::identity(2, 2), CMat::<f64>::zeros(2, 2));
    let want_x = grid(&[
        &[i.clone(), z.clone(), z.clone()],
        &[z.clone(), i.clone(), z.clone()],
        &[z.clone(), z.clone(), i.clone()],
    ]);
    let want_y =
        grid(&[&[&i * c(2.0), i.clone(), sm.clone()], &[-&i, z.clone(), z.clone()], &[z.clone(), -&i, z.clone()]]);
    assert_eq!(f.x, want_x);
    assert_eq!(f.y, want_y);
}

#[test]
fn ansatz_combination_of_cubic() {
    let (p, sm) = cubic_with_singular_constant();
    let (i, z) = (CMat::<f64>::identity(2, 2), CMat::<f64>::zeros(2, 2));
    let spec = AnsatzSpec {
        v: CVec::from_vec(vec![c(1.0), c(1.0), c(0.0)]),
        h: grid(&[&[z.clone(), z.clone()], &[i.clone(), z.clone()], &[z.clone(), i.clone()]]),
    };
    let g = RationalMatrix::polynomial(p);
    let l = build_m1(&g, &spec, &StateScaling::identity(0)).unwrap();
    let want_x = grid(&[
        &[i.clone(), z.clone(), z.clone()],
        &[i.clone(), i.clone(), z.clone()],
        &[z.clone(), z.clone(), i.clone()],
    ]);
    let want_y =
        grid(&[&[&i * c(2.0), i.clone(), sm.clone()], &[i.clone(), i.clone(), sm.clone()], &[z.clone(), -&i, z]]);
    assert_eq!(l.x, want_x);
    assert_eq!(l.y, want_y);
}

#[test]
fn chebyshev_f_example() {
    let d = PolyMat::new(basis(BasisKind::Chebyshev1, 2), vec![s(1.0), s(1.0), s(1.0)]).unwrap();
    let f = build_f(&d).unwrap();
    assert_eq!(f.eval(c(0.5)), CMat::from_row_slice(2, 2, &[c(2.0), c(0.0), c(-1.0), c(0.5)]));
}

#[test]
fn f_identity_for_all_bases() {
    for kind in [BasisKind::Monomial, BasisKind::Chebyshev1, BasisKind::Chebyshev2] {
        for k in 2..6 {
            let coeffs: Vec<CMat<f64>> =
                (0..=k).map(|j| CMat::from_fn(2, 2, |r, q| cx(j as f64 + r as f64 * 0.5, q as f64 - 0.3))).collect();
            let d = PolyMat::new(basis(kind, k), coeffs).unwrap();
            let f = build_f(&d).unwrap();
            for lam in [cx(0.3, -0.2), cx(1.7, 0.4)] {
                let phi = phi_kron(&d.basis, k, 2, lam).unwrap();
                let r = f.eval(lam) * phi - kron_vec_eye(&unit(k, 0), 2) * d.eval(lam);
                assert!(max_abs(&r) < 1e-12, "{kind:?} {k}");
            }
        }
    }
}

#[test]
fn default_m1_of_scalar_example() {
    let l = build_m1(&scalar_example(), &AnsatzSpec::standard(2, 1), &StateScaling::identity(1)).unwrap();
    let want = |lam: f64| {
        CMat::from_row_slice(3, 3, &[c(lam), c(0.0), c(1.0), c(-1.0), c(lam), c(-1.0), c(0.0), c(-1.0), c(lam)])
    };
    assert_eq!(l.eval(c(2.0)), want(2.0));
    assert_eq!(l.eval(c(-0.5)), want(-0.5));
}

#[test]
fn default_m2_is_block_transposed_counterpart() {
    let l = build_m2(&scalar_example(), &AnsatzSpec::standard(2, 1), &StateScaling::identity(1)).unwrap();
    // [[λ, 1, 0], [0, λ, -1], [-1, -1, λ]]
    let lam = c(2.0);
    let want = CMat::from_row_slice(3, 3, &[lam, c(1.0), c(0.0), c(0.0), lam, c(-1.0), c(-1.0), c(-1.0), lam]);
    assert_eq!(l.eval(lam), want);
}

#[test]
fn singular_ansatz_and_multipliers_rejected() {
    let g = scalar_example();
    let mut spec = AnsatzSpec::standard(2, 1);
    spec.v = CVec::from_vec(vec![c(0.0), c(1.0)]);
    assert!(matches!(build_m1(&g, &spec, &StateScaling::identity(1)), Err(Error::SingularAnsatz)));
    let sc = StateScaling { x: s(0.0), y: s(1.0) };
    assert!(matches!(build_m1(&g, &AnsatzSpec::standard(2, 1), &sc), Err(Error::SingularXY)));
}

#[test]
fn block_transpose_is_an_involution() {
    let (p, _) = cubic_with_singular_constant();
    let f = build_f(&p).unwrap();
    let fb = block_transpose(&f).unwrap();
    assert_eq!(fb.meta.family, Family::M2);
    let back = block_transpose(&fb).unwrap();
    assert_eq!((back.x, back.y), (f.x.clone(), f.y.clone()));
    let m = 2;
    // Top block row of F becomes the first block column.
    assert_eq!(fb.y.view((m, 0), (m, m)).clone_owned(), f.y.view((0, m), (m, m)).clone_owned());
}

fn random_sym(m: usize, seed: u64) -> CMat<f64> {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    let a = CMat::from_fn(m, m, |_, _| c(next()));
    (&a + a.transpose()) * c(0.5)
}

#[test]
fn chebyshev_dm_closed_forms() {
    for m in 1..=3 {
        for (kind, scale) in [(BasisKind::Chebyshev1, 2.0), (BasisKind::Chebyshev2, 1.0)] {
            let d: Vec<CMat<f64>> = (0..3).map(|i| random_sym(m, 10 * m as u64 + i)).collect();
            let poly = PolyMat::new(basis(kind, 2), d.clone()).unwrap();
            let l = solve_dm_pencil(&poly, &unit(2, 1)).unwrap();
            let z = CMat::zeros(m, m);
            let two = if kind == BasisKind::Chebyshev1 { 1.0 } else { 2.0 };
            let want_x = grid(&[&[z.clone(), &d[2] * c(2.0)], &[&d[2] * c(2.0), &d[1] * c(two)]]);
            let want_y = grid(&[&[-&d[2] * c(scale), z.clone()], &[z.clone(), &d[0] - &d[2]]]);
            assert!(max_abs(&(&l.x - want_x)) <= 1e-12, "{kind:?} m={m}");
            assert!(max_abs(&(&l.y - want_y)) <= 1e-12, "{kind:?} m={m}");
        }
    }
}

#[test]
fn chebyshev_cubic_dm_closed_forms() {
    for m in 1..=3 {
        let d: Vec<CMat<f64>> = (0..4).map(|i| random_sym(m, 100 + 10 * m as u64 + i)).collect();
        let z = CMat::<f64>::zeros(m, m);
        // First kind.
        let poly = PolyMat::new(basis(BasisKind::Chebyshev1, 3), d.clone()).unwrap();
        let l = solve_dm_pencil(&poly, &unit(3, 2)).unwrap();
        let t = |a: &CMat<f64>, f: f64| a * c(f);
        let want_x = grid(&[
            &[z.clone(), z.clone(), t(&d[3], 2.0)],
            &[z.clone(), t(&d[3], 4.0), t(&d[2], 2.0)],
            &[t(&d[3], 2.0), t(&d[2], 2.0), &d[1] + &d[3]],
        ]);
        let want_y = grid(&[
            &[z.clone(), t(&d[3], -2.0), z.clone()],
            &[t(&d[3], -2.0), t(&d[2], -2.0), t(&d[3], -2.0)],
            &[z.clone(), t(&d[3], -2.0), &d[0] - &d[2]],
        ]);
        assert!(max_abs(&(&l.x - want_x)) <= 1e-12);
        assert!(max_abs(&(&l.y - want_y)) <= 1e-12);
        // Second kind.
        let poly = PolyMat::new(basis(BasisKind::Chebyshev2, 3), d.clone()).unwrap();
        let l = solve_dm_pencil(&poly, &unit(3, 2)).unwrap();
        let want_x = grid(&[
            &[z.clone(), z.clone(), t(&d[3], 2.0)],
            &[z.clone(), t(&d[3], 2.0), t(&d[2], 2.0)],
            &[t(&d[3], 2.0), t(&d[2], 2.0), t(&d[1], 2.0)],
        ]);
        let want_y =
            grid(&[&[z.clone(), -&d[3], z.clone()], &[-&d[3], -&d[2], -&d[3]], &[z.clone(), -&d[3], &d[0] - &d[2]]]);
        assert!(max_abs(&(&l.x - want_x)) <= 1e-12);
        assert!(max_abs(&(&l.y - want_y)) <= 1e-12);
    }
}

#[test]
fn dm_with_zero_ansatz_is_zero() {
    let d = PolyMat::new(basis(BasisKind::Chebyshev1, 3), (0..4).map(|i| random_sym(2, i)).collect()).unwrap();
    let l = solve_dm_pencil(&d, &CVec::zeros(3)).unwrap();
    assert_eq!(max_abs(&l.x) + max_abs(&l.y), 0.0);
}

#[test]
fn dm_is_block_symmetric_and_symmetric_for_symmetric_data() {
    for kind in [BasisKind::Monomial, BasisKind::Chebyshev1, BasisKind::Chebyshev2] {
        for k in 2..=5 {
            let d = PolyMat::new(basis(kind, k), (0..=k).map(|i| random_sym(2, 7 * k as u64 + i as u64)).collect())
                .unwrap();
            let v = CVec::from_fn(k, |i, _| c(1.0 - 0.3 * i as f64));
            let l = solve_dm_pencil(&d, &v).unwrap();
            assert_eq!(block_transpose_grid(&l.x, 2), l.x);
            assert_eq!(block_transpose_grid(&l.y, 2), l.y);
            assert_eq!(symmetry_defect(&l.x), 0.0);
            assert_eq!(symmetry_defect(&l.y), 0.0);
        }
    }
}

#[test]
fn monomial_dm_matches_closed_form() {
    let d: Vec<CMat<f64>> = (0..3).map(|i| random_sym(2, 40 + i)).collect();
    let poly = PolyMat::new(PolyBasis::monomial(2), d.clone()).unwrap();
    let l = solve_dm_pencil(&poly, &unit(2, 1)).unwrap();
    let z = CMat::zeros(2, 2);
    let want_x = grid(&[&[z.clone(), d[2].clone()], &[d[2].clone(), d[1].clone()]]);
    let want_y = grid(&[&[-&d[2], z.clone()], &[z.clone(), d[0].clone()]]);
    assert!(max_abs(&(&l.x - want_x)) <= 1e-12);
    assert!(max_abs(&(&l.y - want_y)) <= 1e-12);
}

#[test]
fn leading_coefficient_gate() {
    let d2 = CMat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.0)]);
    let poly = PolyMat::new(basis(BasisKind::Chebyshev1, 2), vec![random_sym(2, 1), random_sym(2, 2), d2]).unwrap();
    let k = dm_ansatz_matrix(&poly, &unit(2, 1)).unwrap();
    assert!(is_singular(&k).unwrap());
    let g = RationalMatrix::new(poly, StrictlyProper::Zero, Structure::Symmetric).unwrap();
    assert!(matches!(build_symmetric(&g, c(1.0), &CMat::zeros(0, 0)), Err(Error::SingularLeadingCoefficient)));
}

fn symmetric_example() -> RationalMatrix<f64> {
    let poly = PolyMat::new(
        PolyBasis::monomial(2),
        vec![CMat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]), CMat::zeros(2, 2), CMat::identity(2, 2)],
    )
    .unwrap();
    let sp = SymmetricRealization { s1: s(1.0), s2: s(1.0), w: CMat::from_row_slice(2, 1, &[c(1.0), c(0.0)]) };
    RationalMatrix::new(poly, StrictlyProper::Symmetric(sp), Structure::Symmetric).unwrap()
}

#[test]
fn symmetric_example_pencil() {
    let g = symmetric_example();
    let l = build_symmetric(&g, c(1.0), &s(1.0)).unwrap();
    assert_eq!(l.size(), 5);
    assert_eq!(l.eval(c(3.0))[(0, 0)], c(-2.0));
    assert_eq!(l.y[(0, 3)], c(1.0));
    assert_eq!(l.y[(0, 4)], c(0.0));
    assert_eq!(l.x, l.x.transpose());
    assert_eq!(l.y, l.y.transpose());
    let l2 = build_symmetric(&g, c(2.0), &s(1.0)).unwrap();
    assert_eq!(l2.x, &l.x * c(2.0));
    assert_eq!(l2.y, &l.y * c(2.0));
    for lam in [cx(0.4, 0.3), cx(-2.0, 1.0)] {
        assert!(ansatz_residual(&l, &g, lam).unwrap() < 1e-12);
    }
}

#[test]
fn hermitian_example_pencil() {
    let i = cx(0.0, 1.0);
    let d1 = CMat::from_row_slice(2, 2, &[c(0.0), i, -i, c(0.0)]);
    let id = CMat::<f64>::identity(2, 2);
    let poly = PolyMat::new(PolyBasis::monomial(2), vec![id.clone(), d1.clone(), id.clone()]).unwrap();
    let g = RationalMatrix::new(poly, StrictlyProper::Zero, Structure::Hermitian).unwrap();
    let l = build_hermitian(&g, c(1.0), &CMat::zeros(0, 0)).unwrap();
    let z = CMat::zeros(2, 2);
    assert_eq!(l.x, grid(&[&[z.clone(), id.clone()], &[id.clone(), d1]]));
    assert_eq!(l.y, grid(&[&[-&id, z.clone()], &[z, id]]));
    assert_eq!(l.x, l.x.adjoint());
    assert_eq!(l.y, l.y.adjoint());
    let neg = build_hermitian(&g, c(-1.0), &CMat::zeros(0, 0)).unwrap();
    assert_eq!(neg.x, -&l.x);
    assert!(matches!(build_hermitian(&g, cx(1.0, 1.0), &CMat::zeros(0, 0)), Err(Error::NonRealMu)));
}

#[test]
fn real_symmetric_data_gives_same_pencil_either_way() {
    let g = symmetric_example();
    let a = build_symmetric(&g, c(1.5), &s(2.0)).unwrap();
    let b = build_hermitian(&g, c(1.5), &s(2.0)).unwrap();
    assert_eq!((a.x, a.y), (b.x, b.y));
}

#[test]
fn block_kronecker_example() {
    let poly = PolyMat::new(PolyBasis::monomial(3), vec![s(0.0), s(1.0), s(0.0), s(1.0)]).unwrap();
    let g = RationalMatrix::new(poly, StrictlyProper::Zero, Structure::Symmetric).unwrap();
    let l = build_block_kronecker_symmetric_odd(&g, &CMat::zeros(0, 0)).unwrap();
    let lam = c(2.0);
    let want = CMat::from_row_slice(3, 3, &[lam, c(0.0), c(-1.0), c(0.0), lam, lam, c(-1.0), lam, c(0.0)]);
    assert_eq!(l.eval(lam), want);
    let even = PolyMat::new(PolyBasis::monomial(2), vec![s(1.0), s(0.0), s(1.0)]).unwrap();
    let g = RationalMatrix::new(even, StrictlyProper::Zero, Structure::Symmetric).unwrap();
    assert!(matches!(build_block_kronecker_symmetric_odd(&g, &CMat::zeros(0, 0)), Err(Error::EvenDegree(2))));
}

#[test]
fn block_kronecker_with_state() {
    let mut g = symmetric_example();
    g.poly = PolyMat::new(
        PolyBasis::monomial(3),
        vec![random_sym(2, 1), random_sym(2, 2), random_sym(2, 3), random_sym(2, 4)],
    )
    .unwrap();
    let l = build_block_kronecker_symmetric_odd(&g, &s(1.5)).unwrap();
    assert_eq!(l.x, l.x.transpose());
    for lam in [cx(0.4, 0.3), cx(-2.0, 1.0)] {
        assert!(ansatz_residual(&l, &g, lam).unwrap() < 1e-12);
    }
}

#[test]
fn degree_graded_example() {
    let one = c(1.0);
    let dg = DegreeGradedBasis::new(vec![one; 3], vec![vec![c(0.0)], vec![one, c(0.0)]]).unwrap();
    let poly = PolyMat::new(PolyBasis::DegreeGraded(dg), vec![s(0.0), s(0.0), s(0.0), s(1.0)]).unwrap();
    let g = RationalMatrix::polynomial(poly);
    let l = build_degree_graded(&g, &AnsatzSpec::standard(3, 1), &StateScaling::identity(0)).unwrap();
    assert_eq!(l.meta.family, Family::Dg);
    let lam = c(2.5);
    let want =
        CMat::from_row_slice(3, 3, &[lam - one, c(0.0), one, c(-1.0), lam - one, c(0.0), c(0.0), c(-1.0), lam - one]);
    assert_eq!(l.eval(lam), want);
}

#[test]
fn degenerate_degree_graded_matches_monomial_m1() {
    let z = c(0.0);
    let dg = DegreeGradedBasis::new(vec![z; 3], vec![vec![z], vec![z, z]]).unwrap();
    let coeffs: Vec<CMat<f64>> = (0..4).map(|i| random_sym(2, 60 + i)).collect();
    let ss = StateSpace::new(
        s(0.5),
        CMat::from_row_slice(1, 2, &[c(1.0), c(2.0)]),
        CMat::from_row_slice(2, 1, &[c(1.0), c(-1.0)]),
    )
    .unwrap();
    let g1 = RationalMatrix::new(
        PolyMat::new(PolyBasis::DegreeGraded(dg), coeffs.clone()).unwrap(),
        StrictlyProper::StateSpace(ss.clone()),
        Structure::General,
    )
    .unwrap();
    let g2 = RationalMatrix::new(
        PolyMat::new(PolyBasis::monomial(3), coeffs).unwrap(),
        StrictlyProper::StateSpace(ss),
        Structure::General,
    )
    .unwrap();
    let spec = AnsatzSpec::standard(3, 2);
    let a = build_degree_graded(&g1, &spec, &StateScaling::identity(1)).unwrap();
    let b = build_m1(&g2, &spec, &StateScaling::identity(1)).unwrap();
    assert_eq!((a.x, a.y), (b.x, b.y));
}

#[test]
fn ansatz_identities_hold() {
    let g = scalar_example();
    let mut spec = AnsatzSpec::standard(2, 1);
    spec.v = CVec::from_vec(vec![c(2.0), c(-1.0)]);
    spec.h = CMat::from_row_slice(2, 1, &[c(0.5), c(1.0)]);
    let sc = StateScaling { x: s(2.0), y: s(-0.5) };
    let m1 = build_m1(&g, &spec, &sc).unwrap();
    let m2 = build_m2(&g, &spec, &sc).unwrap();
    let dm = build_dm(&g, &unit(2, 0), &sc).unwrap();
    for lam in [cx(0.4, 0.3), cx(-2.0, 1.0), c(3.0)] {
        for l in [&m1, &m2, &dm] {
            assert!(ansatz_residual(l, &g, lam).unwrap() < 1e-12, "{:?}", l.meta.family);
        }
    }
}

#[test]
fn unimodular_completion_has_constant_determinant() {
    for kind in [BasisKind::Monomial, BasisKind::Chebyshev1, BasisKind::Chebyshev2] {
        let b = basis(kind, 4);
        let d0 = crate::linalg::det(&unimodular_completion(&b, 4, 2, cx(0.1, 0.2)).unwrap());
        for lam in [cx(1.0, -2.0), c(3.0), cx(-0.7, 0.7), c(0.0)] {
            let d = crate::linalg::det(&unimodular_completion(&b, 4, 2, lam).unwrap());
            assert!((d - d0).norm() <= 1e-8 * d0.norm());
        }
    }
}

#[test]
fn strict_equivalence_records_transform() {
    let g = symmetric_example();
    let l = build_symmetric(&g, c(1.0), &s(1.0)).unwrap();
    let p = CMat::from_fn(4, 4, |r, q| if r == q { c(2.0) } else { c(0.1 * (r + 2 * q) as f64) });
    let r = CMat::from_fn(4, 1, |r, _| c(r as f64));
    let t = TransformSpec::congruence(s(3.0), p, r);
    let l2 = strict_equiv(&l, &t).unwrap();
    assert_eq!(l2.x, l2.x.transpose());
    assert!(l2.structure_expected());
    for lam in [cx(0.4, 0.3), cx(-2.0, 1.0)] {
        assert!(ansatz_residual(&l2, &g, lam).unwrap() < 1e-11);
    }
    let id = strict_equiv(&l, &TransformSpec::identity(1, 4)).unwrap();
    assert_eq!((id.x, id.y), (l.x.clone(), l.y.clone()));
    let mut bad = TransformSpec::identity(1, 4);
    bad.q2 = CMat::zeros(4, 4);
    assert!(matches!(strict_equiv(&l, &bad), Err(Error::SingularTransform("Q2"))));
}

#[test]
fn m2_identity_with_matrix_valued_state_space_data() {
    use crate::random::{random_matrix, random_rational, random_vector, InstanceSpec};
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let (k, m) = (3, 2);
    let spec = InstanceSpec { basis: BasisKind::Monomial, k, m, n: 2, structure: Structure::General };
    let g = random_rational::<f64, _>(&mut rng, &spec).unwrap();
    let ansatz =
        AnsatzSpec { v: random_vector(&mut rng, k, true), h: random_matrix(&mut rng, k * m, (k - 1) * m, true) };
    let sc = StateScaling { x: random_matrix(&mut rng, 2, 2, true), y: random_matrix(&mut rng, 2, 2, true) };
    let m2 = build_m2(&g, &ansatz, &sc).unwrap();
    for lam in [cx(0.4, 0.3), cx(-2.0, 1.0), c(3.0)] {
        assert!(ansatz_residual(&m2, &g, lam).unwrap() < 1e-12);
    }
}
