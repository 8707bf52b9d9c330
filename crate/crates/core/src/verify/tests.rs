use super::*;
use crate::basis::{standard_basis, BasisKind, DegreeGradedBasis};
use crate::linearize::{build_m1, build_pencil, strict_equiv, AnsatzSpec, BuildOptions, StateScaling, TransformSpec};
use crate::ratmodel::{PolyMat, StateSpace, StrictlyProper, Structure};
use crate::scalar::cx;

fn c(x: f64) -> C<f64> {
    cx(x, 0.0)
}

fn s(x: f64) -> CMat<f64> {
    CMat::from_element(1, 1, c(x))
}

fn scalar_example() -> RationalMatrix<f64> {
    let poly = PolyMat::new(PolyBasis::monomial(2), vec![s(-1.0), s(0.0), s(1.0)]).unwrap();
    let ss = StateSpace::new(s(0.0), s(1.0), s(1.0)).unwrap();
    RationalMatrix::new(poly, StrictlyProper::StateSpace(ss), Structure::General).unwrap()
}

fn close(a: &[C<f64>], b: &[C<f64>], tol: f64) -> bool {
    let (m, lo, lp) = match_eigenvalues(a, b, tol);
    lo.is_empty() && lp.is_empty() && m.len() == a.len()
}

#[test]
fn det_of_small_system_matrix() {
    // [[λ, 1], [-1, λ² - 1]] -> λ³ - λ + 1
    let p = MonomialMatrix::new(vec![
        CMat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(-1.0), c(-1.0)]),
        CMat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.0)]),
        CMat::from_row_slice(2, 2, &[c(0.0), c(0.0), c(0.0), c(1.0)]),
    ])
    .unwrap();
    let d = det_poly(&p, 4).unwrap();
    assert_eq!(d.len(), 4);
    for (got, want) in d.iter().zip([1.0, -1.0, 0.0, 1.0]) {
        assert!((got - c(want)).norm() < 1e-12);
    }
    let li = MonomialMatrix::<f64>::pencil(&eye(2), &zeros(2, 2));
    let d = det_poly(&li, 2).unwrap();
    assert_eq!(d.len(), 3);
    assert!((d[2] - c(1.0)).norm() < 1e-12 && d[0].norm() < 1e-12);
    let k = MonomialMatrix::new(vec![CMat::from_row_slice(2, 2, &[c(2.0), c(1.0), c(1.0), c(3.0)])]).unwrap();
    let d = det_poly(&k, 0).unwrap();
    assert!((d[0] - c(5.0)).norm() < 1e-12);
}

#[test]
fn oracle_examples() {
    let o = oracle_eigenvalues(&scalar_example(), 1e-8).unwrap();
    assert_eq!(o.finite.len(), 3);
    assert!(o.removed_poles.is_empty());
    let ev = o.finite_c::<f64>();
    assert!(ev.iter().all(|z| (z * z * z - z + c(1.0)).norm() < 1e-12));

    // (λ-1) + 1/(λ-1)
    let poly = PolyMat::new(PolyBasis::monomial(1), vec![s(-1.0), s(1.0)]).unwrap();
    let ss = StateSpace::new(s(1.0), s(1.0), s(1.0)).unwrap();
    let g = RationalMatrix::new(poly, StrictlyProper::StateSpace(ss), Structure::General).unwrap();
    let o = oracle_eigenvalues(&g, 1e-8).unwrap();
    assert!(close(&o.finite_c::<f64>(), &[cx(1.0, 1.0), cx(1.0, -1.0)], 1e-10));

    let dg = |a: f64, b: f64| CMat::from_row_slice(2, 2, &[c(a), c(0.0), c(0.0), c(b)]);
    let poly = PolyMat::new(PolyBasis::monomial(2), vec![dg(0.0, 0.0), dg(0.0, 1.0), dg(1.0, 0.0)]).unwrap();
    let o = oracle_eigenvalues(&RationalMatrix::polynomial(poly), 1e-8).unwrap();
    assert_eq!(o.infinite_count, 1);
}

#[test]
fn oracle_roots_evaluate_back_to_zero() {
    let g = scalar_example();
    let sys = g.system_matrix().unwrap();
    let mm = MonomialMatrix::from(&PolySystem::try_from(&sys).unwrap());
    let coeffs = det_poly(&mm, sys.det_degree_bound()).unwrap();
    let radius = 1.0 + to_f64(mm.max_entry());
    let disk_max = (0..64)
        .map(|j| {
            let th = j as f64 * std::f64::consts::TAU / 64.0;
            det(&mm.eval(cx(radius * th.cos(), radius * th.sin()))).norm()
        })
        .fold(0.0, f64::max);
    for r in polynomial_roots(&coeffs).unwrap() {
        assert!(det(&mm.eval(r)).norm() <= 1e-6 * disk_max);
    }
}

#[test]
fn minimal_basis_certificates() {
    for kind in [BasisKind::Monomial, BasisKind::Chebyshev1, BasisKind::Chebyshev2] {
        let b = PolyBasis::ThreeTerm(standard_basis(kind, 8).unwrap());
        for k in [2, 3, 5, 8] {
            for m in 1..=3 {
                let km = relation_basis(&b, k, m).unwrap();
                let n = basis_row(&b, k, m).unwrap();
                assert!(check_minimal_basis(&km, 1e-8), "{kind:?} k={k} m={m}");
                assert!(check_minimal_basis(&n, 1e-8), "{kind:?} k={k} m={m}");
                assert!(check_dual_bases(&km, &n), "{kind:?} k={k} m={m}");
            }
        }
    }
    let dg = DegreeGradedBasis::new(vec![c(0.5), c(-1.0), c(2.0)], vec![vec![c(0.3)], vec![c(1.0), c(-0.2)]]).unwrap();
    let b = PolyBasis::DegreeGraded(dg);
    assert!(check_dual_bases(&relation_basis(&b, 3, 2).unwrap(), &basis_row(&b, 3, 2).unwrap()));
    assert!(check_minimal_basis(&relation_basis(&b, 3, 2).unwrap(), 1e-8));
}

#[test]
fn minimal_basis_counterexamples() {
    // [λ - 1, λ - 1] is row reduced but vanishes at 1; [λ, λ] vanishes at 0.
    let shifted = MonomialMatrix::new(vec![
        CMat::from_row_slice(1, 2, &[c(-1.0), c(-1.0)]),
        CMat::from_row_slice(1, 2, &[c(1.0), c(1.0)]),
    ])
    .unwrap();
    let detail = minimal_basis_detail(&shifted, 1e-8, 42).unwrap();
    assert!(detail.row_reduced && !detail.pass());
    assert!((detail.rank_drop_at.unwrap()[0] - 1.0).abs() < 1e-8);
    let bad = MonomialMatrix::new(vec![zeros(1, 2), CMat::from_row_slice(1, 2, &[c(1.0), c(1.0)])]).unwrap();
    let detail = minimal_basis_detail(&bad, 1e-8, 42).unwrap();
    assert!(detail.row_reduced && !detail.pass());
    let at = detail.rank_drop_at.unwrap();
    assert!(at[0].abs() < 1e-8 && at[1].abs() < 1e-8);
    // [λ, 1] is minimal.
    let good = MonomialMatrix::new(vec![
        CMat::from_row_slice(1, 2, &[c(0.0), c(1.0)]),
        CMat::from_row_slice(1, 2, &[c(1.0), c(0.0)]),
    ])
    .unwrap();
    assert!(check_minimal_basis(&good, 1e-8));
}

#[test]
fn dual_bases_detect_perturbation() {
    let b = PolyBasis::<f64>::ThreeTerm(standard_basis(BasisKind::Chebyshev1, 4).unwrap());
    let km = relation_basis(&b, 4, 2).unwrap();
    let mut n = basis_row(&b, 4, 2).unwrap();
    assert!(check_dual_bases(&km, &n));
    n.coeffs[1][(0, 0)] += c(1e-3);
    assert!(!check_dual_bases(&km, &n));
}

#[test]
fn block_kronecker_dual_pair() {
    // L_q ⊗ I and Λ_qᵀ ⊗ I for q = 3, m = 2.
    let (q, m) = (3, 2);
    let mut lx = zeros::<f64>(q, q + 1);
    let mut ly = zeros::<f64>(q, q + 1);
    for i in 0..q {
        ly[(i, i)] = c(-1.0);
        lx[(i, i + 1)] = c(1.0);
    }
    let k = MonomialMatrix::pencil(&kron(&lx, &eye(m)), &kron(&ly, &eye(m)));
    let coeffs = (0..=q)
        .map(|d| {
            let mut row = zeros::<f64>(1, q + 1);
            row[(0, q - d)] = c(1.0);
            kron(&row, &eye(m))
        })
        .collect();
    let n = MonomialMatrix::new(coeffs).unwrap();
    assert!(check_dual_bases(&k, &n));
    assert!(check_minimal_basis(&k, 1e-8) && check_minimal_basis(&n, 1e-8));
}

#[test]
fn strong_linearization_report_on_scalar_example() {
    let g = scalar_example();
    let cfg = Config::default();
    for fam in [Family::F, Family::M1, Family::M2, Family::DM] {
        let l = build_pencil(&g, fam, &BuildOptions::default()).unwrap();
        let rep = check_strong_linearization(&l, &g, &cfg);
        assert!(rep.passed(), "{fam:?}: {rep:#?}");
    }
}

#[test]
fn corrupted_pencil_fails_eigenvalue_check() {
    let g = scalar_example();
    let mut l = build_m1(&g, &AnsatzSpec::standard(2, 1), &StateScaling::identity(1)).unwrap();
    l.y[(1, 2)] += c(1.0);
    let rep = check_strong_linearization(&l, &g, &Config::default());
    assert!(!rep.get("eigenvalues").unwrap().pass);
    assert!(!rep.passed());
}

#[test]
fn transformed_pencil_keeps_spectrum() {
    let g = scalar_example();
    let l = build_m1(&g, &AnsatzSpec::standard(2, 1), &StateScaling::identity(1)).unwrap();
    let t = TransformSpec {
        q1: s(2.0),
        q2: CMat::from_row_slice(2, 2, &[c(1.0), c(0.5), c(-0.3), c(2.0)]),
        q3: s(-1.0),
        q4: CMat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.7), c(1.0)]),
        w: CMat::from_row_slice(2, 1, &[c(0.2), c(-0.4)]),
        z: CMat::from_row_slice(1, 2, &[c(1.0), c(0.5)]),
    };
    let tl = strict_equiv(&l, &t).unwrap();
    let rep = check_strong_linearization(&tl, &g, &Config::default());
    assert!(rep.passed(), "{rep:#?}");
    let a = pencil_eigenvalues_by_det(&l).unwrap();
    let b = pencil_eigenvalues_by_det(&tl).unwrap();
    assert!(close(&a, &b, 1e-9));
}

#[test]
fn structure_checks() {
    let g = scalar_example();
    let m1 = build_m1(&g, &AnsatzSpec::standard(2, 1), &StateScaling::identity(1)).unwrap();
    assert!(!check_structure(&m1));
    let sym_d: Vec<CMat<f64>> =
        (0..3).map(|i| CMat::from_row_slice(2, 2, &[c(i as f64), c(1.0), c(1.0), c(2.0 - i as f64)])).collect();
    let poly = PolyMat::new(PolyBasis::ThreeTerm(standard_basis(BasisKind::Chebyshev2, 2).unwrap()), sym_d).unwrap();
    let dm = crate::linearize::solve_dm_pencil(&poly, &crate::linalg::unit(2, 0)).unwrap();
    assert!(check_structure(&dm));
    assert_eq!(symmetry_defect(&dm.x), 0.0);
    let gs = RationalMatrix::new(poly, StrictlyProper::Zero, Structure::Symmetric).unwrap();
    let sym = crate::linearize::build_symmetric(&gs, c(1.0), &zeros(0, 0)).unwrap();
    assert!(check_structure(&sym));
}

#[test]
fn leading_gate_tracks_singularity() {
    let b = PolyBasis::ThreeTerm(standard_basis(BasisKind::Chebyshev1, 2).unwrap());
    let d = |a: f64| CMat::from_row_slice(2, 2, &[c(1.0), c(0.5), c(0.5), c(a)]);
    let singular = PolyMat::new(b.clone(), vec![d(3.0), d(-1.0), d(0.25)]).unwrap();
    let regular = PolyMat::new(b, vec![d(3.0), d(-1.0), d(2.0)]).unwrap();
    assert!(leading_gate_ratio(&singular).unwrap() < 1e-12);
    assert!(leading_gate_ratio(&regular).unwrap() > 1e-3);
}

fn expand(roots: &[C<f64>]) -> Vec<C<f64>> {
    let mut poly = vec![c(1.0)];
    for &r in roots {
        let mut next = vec![c(0.0); poly.len() + 1];
        for (i, &pi) in poly.iter().enumerate() {
            next[i + 1] += pi;
            next[i] -= pi * r;
        }
        poly = next;
    }
    poly
}

#[test]
fn oracle_resolves_unit_roots_next_to_a_far_root() {
    // A large root inflates the enclosing interpolation circle; the roots of
    // modulus below one must still come out to full accuracy.
    let rows: [Vec<C<f64>>; 3] = [
        vec![cx(0.3, 0.2), cx(-0.6, 0.1), c(0.9), cx(0.0, -0.5), c(25.0)],
        vec![cx(-0.2, -0.7), c(0.45), cx(0.8, 0.3), c(-0.95), cx(0.1, 0.1)],
        vec![c(0.05), cx(-0.4, 0.4), c(0.7), cx(0.6, -0.6), c(-0.3)],
    ];
    let mut coeffs = vec![CMat::<f64>::zeros(3, 3); 6];
    for (i, roots) in rows.iter().enumerate() {
        for (d, a) in expand(roots).into_iter().enumerate() {
            coeffs[d][(i, i)] = a * 30.0;
        }
    }
    let g = RationalMatrix::polynomial(PolyMat::new(PolyBasis::monomial(5), coeffs).unwrap());
    let found = oracle_eigenvalues(&g, 1e-8).unwrap().finite_c::<f64>();
    let expected: Vec<C<f64>> = rows.concat();
    let (pairs, lo, lp) = match_eigenvalues(&expected, &found, 1e-6);
    assert!(lo.is_empty() && lp.is_empty());
    assert!(pairs.iter().all(|p| p.distance < 1e-10), "{pairs:?}");
}
