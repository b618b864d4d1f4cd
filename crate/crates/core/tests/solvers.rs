mod common;

use common::*;
use covinv::coeff::inv_factorial;
use covinv::prelude::*;

const N: u32 = 12;

fn o2() -> Center {
    Center::origin(2)
}

#[test]
fn dydx_series_and_terms() {
    let (a, c) = dydx(N);
    let r = solve_homogeneous(&a, &c, &o2()).unwrap();
    assert_eq!(r.solution, dydx_oracle(N));
    assert_eq!(r.series_terms[0], c);
    for k in 1..r.series_terms.len() as u32 {
        assert_eq!(r.series_terms[k as usize], dydx_gamma(N, k), "γ_{k}");
    }
    assert_eq!(r.iterations, 13);
    assert!(r.residual_min_degree >= N);
    assert!(r.checks_pass());
    let dh = ext_d(&homotopy_h(&r.solution, &o2()));
    assert_eq!(dh, c);
}

#[test]
fn dydx_gauge_modes_are_functions_of_y_times_dy() {
    let (a, c) = dydx(N);
    let r = solve_homogeneous(&a, &c, &o2()).unwrap();
    assert_eq!(r.gauge_mode_basis.len(), N as usize + 1);
    for g in &r.gauge_mode_basis {
        assert!(g.coeff(IndexSet::single(0), 0).is_zero());
        let f = g.coeff(IndexSet::single(1), 0);
        assert!(f.partial(0).is_zero());
    }
}

#[test]
fn zero_connection_returns_initial_data() {
    let a = Connection::zero(2, 1, 1, N);
    let r = solve_homogeneous(&a, &Form::dx(2, N, 0), &o2()).unwrap();
    assert_eq!(r.solution, Form::dx(2, N, 0));
    assert_eq!(r.iterations, 1);
}

#[test]
fn homogeneous_rejects_bad_initial_data() {
    let (a, _) = dydx(N);
    let not_closed = Form::dx(2, N, 0).mul_function(&var(2, N, 1));
    assert_eq!(
        solve_homogeneous(&a, &not_closed, &o2()).unwrap_err(),
        Error::InitialDataNotExact
    );
    assert_eq!(
        solve_homogeneous(&a, &Form::dx(2, N, 1), &o2()).unwrap_err(),
        Error::InitialDataInKernel
    );
}

#[test]
fn zero_seed_gives_zero() {
    let (a, _) = dydx(N);
    let r = solve_homogeneous(&a, &Form::zero(2, 1, 1, N), &o2()).unwrap();
    assert!(r.solution.is_zero());
}

#[test]
fn scalar_homogeneous_is_exponential() {
    let (a, _) = dydx(N);
    let phi = solve_scalar_homogeneous(&a, &rat(1, 1), &o2()).unwrap();
    assert_eq!(phi, Form::function(exp_neg_y(N)));
    assert!(cov_d(&a, &phi).unwrap().min_degree().unwrap() >= N);
    assert!(solve_scalar_homogeneous(&a, &rat(0, 1), &o2()).unwrap().is_zero());
    let zero = Connection::zero(2, 1, 1, N);
    let c = solve_scalar_homogeneous(&zero, &rat(3, 2), &o2()).unwrap();
    assert_eq!(c, Form::function(Series::constant(2, N, rat(3, 2))));
}

#[test]
fn inhomogeneous_routes_agree() {
    let (a, _) = dydx(N);
    let j = Form::dx(2, N, 0).mul_function(&var(2, N, 0));
    let zero = Form::zero(2, 1, 0, N);
    let r = solve_inhom_exact(&a, &zero, &j, &o2()).unwrap();
    assert!(r.checks_pass(), "{:?}", r.checks);
    // Σ (-1)^k x² y^k / (k+2)!
    let terms: Vec<_> = (0..=N - 2)
        .map(|k| {
            let c = inv_factorial(k + 2);
            (MultiIndex::new(&[2, k]), if k % 2 == 0 { c } else { -c })
        })
        .collect();
    assert_eq!(r.solution, Form::function(Series::from_terms(2, N, terms)));
    // dφ + φ dy = x dx has no solution: ∂_x φ would have to vanish
    assert!(matches!(r.constraint_status, ConstraintStatus::NoSolution(_)));
}

#[test]
fn inhomogeneous_rejects_non_exact_rhs() {
    let (a, _) = dydx(N);
    let j = Form::dx(2, N, 0).mul_function(&var(2, N, 1));
    let zero = Form::zero(2, 1, 0, N);
    assert_eq!(solve_inhom_exact(&a, &zero, &j, &o2()).unwrap_err(), Error::RhsNotExact);
}

#[test]
fn exact_rhs_general_equals_inhom() {
    let (a, c) = dydx(N);
    let j = wedge(&Form::dx(2, N, 0), &Form::dx(2, N, 1)).unwrap();
    let g = solve_general(&a, &c, &j, &o2()).unwrap();
    let e = solve_inhom_exact(&a, &c, &j, &o2()).unwrap();
    assert_eq!(g.solution, e.solution);
    assert!(g.kernel_branch.is_some());
}

#[test]
fn negative_example_has_no_solution() {
    let (a, _) = dydx(N);
    let half = rat(1, 2);
    let j = &Form::dx(2, N, 1).mul_function(&var(2, N, 0).scale(&half))
        - &Form::dx(2, N, 0).mul_function(&var(2, N, 1).scale(&half));
    let zero = Form::zero(2, 1, 0, N);
    match solve_general(&a, &zero, &j, &o2()).unwrap_err() {
        Error::NoSolution(o) => assert!(o.detail.contains("not in the image of A∧_"), "{}", o.detail),
        e => panic!("{e}"),
    }
    assert!(matches!(solve_wedge_constraint(&a, &j), Err(Error::NoSolution(_))));
}

fn dy3() -> Connection {
    Connection::scalar(Form::dx(3, 8, 1))
}

fn j3() -> Form {
    let (x, y, z) = (var(3, 8, 0), var(3, 8, 1), var(3, 8, 2));
    let b = |i, j| Form::basis(3, 8, IndexSet::new(&[i, j]).unwrap());
    &(&b(1, 2).mul_function(&x) - &b(0, 2).mul_function(&y)) + &b(0, 1).mul_function(&z)
}

#[test]
fn three_d_constraint_reports_unmatched_component() {
    // dy ∧ φ never produces dx∧dz, so the -y dx∧dz term is out of reach
    match solve_wedge_constraint(&dy3(), &j3()).unwrap_err() {
        Error::NoSolution(o) => assert!(o.detail.contains("y*dx^dz"), "{}", o.detail),
        e => panic!("{e}"),
    }
}

#[test]
fn three_d_reachable_components() {
    // -z dx + x dz reproduces the two components dy ∧ _ can reach
    let (x, z) = (var(3, 8, 0), var(3, 8, 2));
    let b = |i, j| Form::basis(3, 8, IndexSet::new(&[i, j]).unwrap());
    let reachable = &b(1, 2).mul_function(&x) + &b(0, 1).mul_function(&z);
    let phi2 = &Form::dx(3, 8, 2).mul_function(&x) - &Form::dx(3, 8, 0).mul_function(&z);
    assert_eq!(conn_wedge(&dy3(), &phi2).unwrap(), reachable);
    // the reachable part alone is not antiexact, so it is not a valid constraint
    assert_eq!(solve_wedge_constraint(&dy3(), &reachable).unwrap_err(), Error::RhsNotAntiexact);
}

#[test]
fn wedge_constraint_zero_rhs() {
    let z = Form::zero(3, 1, 2, 8);
    assert!(solve_wedge_constraint(&dy3(), &z).unwrap().is_zero());
}

#[test]
fn kernel_of_matrix_connection_leaves_second_slot_free() {
    let n = 4;
    let alpha = Form::dx(2, n, 0);
    let a = Connection::diagonal(vec![alpha, Form::zero(2, 1, 1, n)]).unwrap();
    let basis = kernel_basis(&a, 1).unwrap();
    // every one-form in slot 2 is free: 2 basis one-forms times 15 monomials
    let slot2 = basis.iter().filter(|f| f.component(0).is_zero()).count();
    assert_eq!(slot2, 2 * 15);
}

#[test]
fn curvature_examples() {
    assert!(curvature(&dy3()).unwrap().is_zero());
    let n = 6;
    let mut a = Connection::zero(2, 2, 1, n);
    a.set(0, 1, Form::dx(2, n, 1).mul_function(&var(2, n, 0))).unwrap();
    let f = curvature(&a).unwrap();
    let vol = Form::basis(2, n, IndexSet::full(2));
    assert_eq!(f.entry(0, 1), &vol);
    assert!(f.entry(0, 0).is_zero() && f.entry(1, 0).is_zero() && f.entry(1, 1).is_zero());
}

#[test]
fn curvature_solve_with_flat_connection() {
    let n = 6;
    let a = Connection::zero(3, 1, 1, n);
    let c2 = Form::basis(3, n, IndexSet::new(&[0, 1]).unwrap());
    let j = Form::zero(3, 1, 3, n);
    let s = solve_curvature(&a, &j, &Form::zero(3, 1, 1, n), &c2, &Center::origin(3)).unwrap();
    assert_eq!(s.phi2, c2);
    let half = rat(1, 2);
    let want = &Form::dx(3, n, 1).mul_function(&var(3, n, 0).scale(&half))
        - &Form::dx(3, n, 0).mul_function(&var(3, n, 1).scale(&half));
    assert_eq!(s.phi1, want);
    assert_eq!(ext_d(&s.phi1), s.phi2);
}

#[test]
fn curvature_solve_dydx_connection_is_obstructed() {
    // D φ₁ = φ₂ with φ₂ the A = dy, c = dx solution: φ₁ dy cannot produce dx terms
    let (a, c) = dydx(8);
    let j = Form::zero(2, 1, 2, 8);
    match solve_curvature(&a, &j, &Form::zero(2, 1, 0, 8), &c, &o2()).unwrap_err() {
        Error::NoSolution(o) => assert_eq!(o.stage, Some(2)),
        e => panic!("{e}"),
    }
}

#[test]
fn dual_with_zero_connection_returns_initial_data() {
    let a = Connection::zero(2, 1, 1, N);
    let c = Form::dx(2, N, 0);
    let r = solve_dual(&a, &c, &Form::zero(2, 1, 0, N), &o2()).unwrap();
    assert_eq!(r.solution, c);
}

#[test]
fn dual_dydx_is_star_of_primal() {
    // δ + (dy)^♯⌟ acting on ⋆φ mirrors d + _∧dy acting on φ
    let (a, c) = dydx(N);
    let r = solve_dual(&a, &hodge_star(&c), &Form::zero(2, 1, 0, N), &o2()).unwrap();
    assert!(r.residual_min_degree >= N);
    let primal = solve_homogeneous(&a.neg(), &c, &o2()).unwrap();
    assert!(primal.residual_min_degree >= N);
    assert_eq!(r.solution, hodge_star(&primal.solution));
}

#[test]
fn gauge_identity_and_scalar_shift() {
    let (a, _) = dydx(N);
    let id = GaugeElement::identity(2, 1, N);
    assert_eq!(gauge_transform(&a, &id).unwrap(), a);
    let lambda = &var(2, N, 0) * &var(2, N, 1);
    let g = GaugeElement::exp_scalar(&lambda).unwrap();
    let shifted = gauge_transform(&a, &g).unwrap();
    let want = a.entry(0, 0) + &ext_d(&Form::function(lambda));
    assert_eq!(shifted.entry(0, 0), &want);
}

#[test]
fn horizontal_projection_examples() {
    let (a, c) = dydx(N);
    let frame = HorizontalFrame::new(
        vec![Form::dx(2, N, 1)],
        vec![PolyVectorField::coordinate(2, N, 1)],
    )
    .unwrap();
    let phi = solve_homogeneous(&a, &c, &o2()).unwrap().solution;
    let h = horizontal_delta(&frame, &a, &phi, &o2()).unwrap();
    assert_eq!(h.delta, Form::dx(2, N, 0).mul_function(&alt_series(N, N, 1)));
    assert!(h.horizontal);
    assert!(!h.covariantly_constant);
    let phi2 = Form::dx(2, N, 0).mul_function(&exp_neg_y(N));
    let h2 = horizontal_delta(&frame, &a, &phi2, &o2()).unwrap();
    assert_eq!(h2.delta, phi2);
    assert!(h2.covariantly_constant);
}

#[test]
fn frame_duality_is_validated() {
    let err = HorizontalFrame::new(
        vec![Form::dx(2, N, 1)],
        vec![PolyVectorField::coordinate(2, N, 0)],
    )
    .unwrap_err();
    assert!(matches!(err, Error::FrameInvalid(_)));
}

#[test]
fn neumann_matches_series_on_dydx() {
    let (a, c) = dydx(N);
    let zero = Form::zero(2, 1, 1, N);
    let phi = neumann_integral_solve(&a, &zero, &c, &o2()).unwrap();
    assert_eq!(phi, dydx_oracle(N));
    let flat = Connection::zero(2, 1, 1, N);
    let j = Form::basis(2, N, IndexSet::full(2));
    let direct = neumann_integral_solve(&flat, &j, &c, &o2()).unwrap();
    assert_eq!(direct, &homotopy_h(&j, &o2()) + &c);
}

#[test]
fn riemann_graves_scalar_is_exponential() {
    // dφ = φ Γ with Γ = -dy gives e^{-y}
    let gamma = Connection::scalar(-&Form::dx(2, N, 1));
    let phi = riemann_graves_solve(&gamma, &o2()).unwrap();
    assert_eq!(phi.entry(0, 0), &Form::function(exp_neg_y(N)));
}

#[test]
fn radius_examples() {
    let (a, _) = dydx(N);
    assert_eq!(radius_bound(&a, &[0.5, 0.5], &o2(), 1).unwrap(), 1.0);
    assert_eq!(radius_bound(&a, &[0.5, 0.5], &o2(), 2).unwrap(), 2.0);
    let z = Connection::zero(2, 1, 1, N);
    assert!(radius_bound(&z, &[1.0, 1.0], &o2(), 1).unwrap().is_infinite());
}

#[test]
fn shifted_center_matches_translated_problem() {
    let (a, c) = dydx(8);
    let center = Center::new(vec![rat(1, 2), rat(-1, 3)]);
    let r = solve_homogeneous(&a, &c, &center).unwrap();
    assert!(r.residual_min_degree >= 8);
    let local = center.to_local(&r.solution);
    assert_eq!(local, dydx_oracle(8));
}

#[test]
fn pipeline_single_stage_matches_general() {
    let (a, c) = dydx(8);
    let j = wedge(&Form::dx(2, 8, 0), &Form::dx(2, 8, 1)).unwrap();
    let stage = PipelineStage::new(PipelineOp::Covariant(a.clone()), 1).with_initial(vec![c.clone()]);
    let p = solve_pipeline(&[stage], &j, &o2()).unwrap();
    assert_eq!(p.solution, solve_general(&a, &c, &j, &o2()).unwrap().solution);
}

#[test]
fn curvature_rejects_mismatched_initial_data() {
    let a = Connection::scalar(Form::dx(3, 4, 1).mul_function(&var(3, 4, 0)));
    let o = Center::origin(3);
    let j = Form::zero(3, 1, 3, 4);
    let c2 = Form::zero(3, 1, 2, 4);
    let err = solve_curvature(&a, &j, &Form::basis(3, 4, IndexSet::new(&[0, 2]).unwrap()), &c2, &o).unwrap_err();
    assert!(matches!(err, Error::DegreeError(_)), "{err}");
    let s = solve_curvature(&a, &j, &Form::dx(3, 4, 0), &c2, &o).unwrap();
    assert_eq!(s.stage1.residual_min_degree, 5);
}

#[test]
fn exp_form_exact_part_is_closed_unlike_dydx() {
    let phi2 = Form::dx(2, N, 0).mul_function(&exp_neg_y(N));
    let dh = ext_d(&homotopy_h(&phi2, &o2()));
    assert!(ext_d(&dh).is_zero());
    assert!(!ext_d(&dydx_oracle(N)).is_zero());
    assert_ne!(dh, dydx_oracle(N));
}
