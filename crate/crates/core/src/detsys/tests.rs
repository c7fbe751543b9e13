use super::*;
use crate::symexpr::{parse, qi};

fn p(s: &str) -> Expr {
    parse(s).unwrap()
}

fn z() -> Expr {
    Expr::zero()
}

#[test]
fn residual_examples() {
    let dt = VectorField::point(Expr::one(), z(), z());
    assert!(invariance_residual(&dt, Kind::Point).is_zero());
    let dx = VectorField::point(z(), Expr::one(), z());
    let r = invariance_residual(&dx, Kind::Point);
    assert!(!r.is_zero());
    let expected = p("-E_x(x, u)*u_xx - E_xx(x, u)*u_x - E_xu(x, u)*u_x^2 - H_x(x, u)");
    assert!(r.is_equal(&expected), "{r}");
    let y6 = VectorField::equivalence(z(), z(), p("u"), z(), p("H"));
    assert!(invariance_residual(&y6, Kind::Equivalence).is_zero());
}

#[test]
fn point_system_contains_printed_equations() {
    let sys = determining_system(Kind::Point).unwrap();
    let has = |s: &str| {
        let e = p(s);
        sys.equations.iter().any(|q| {
            (q - &e).is_zero() || (q + &e).is_zero() || {
                // equal up to a rational factor
                let r = q.monomials();
                let s = e.monomials();
                r.len() == s.len()
                    && !r.is_empty()
                    && q.is_equal(&e.scale(&(r[0].1.clone() / s[0].1.clone())))
            }
        })
    };
    assert!(
        has("E*xi_x(t, x, u)"),
        "{:?}",
        sys.equations
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
    );
    assert!(has("E*xi_u(t, x, u)"));
    // With xi_x = xi_u = 0 the u_x*u_xx equation reduces to E*tau_u = 0.
    let k = sys.monomial_log[&p("u_x*u_xx")];
    let reduced =
        sys.equations[k].substitute_function("xi", &unknowns(Kind::Point)[0].args, &p("xi(t)"));
    assert!(reduced.is_equal(&p("2*E*tau_u(t, x, u)")), "{reduced}");
}

#[test]
fn equivalence_t_subsystem() {
    let sys = determining_system(Kind::Equivalence).unwrap();
    for s in [
        "tau_t(t, x, u)",
        "phi_t(t, x, u)",
        "chi_1(t, x, u, E, H)",
        "eta_1(t, x, u, E, H)",
    ] {
        let e = p(s);
        assert!(
            sys.equations
                .iter()
                .any(|q| q.is_equal(&e) || q.is_equal(&-e.clone())),
            "{s} missing"
        );
    }
}

#[test]
fn point_kernel_is_time_translation() {
    let sys = determining_system(Kind::Point).unwrap();
    for degree in [0, 1, 2] {
        let sol = solve_polynomial_ansatz(&sys, degree).unwrap();
        assert_eq!(sol.basis.len(), 1, "degree {degree}");
        assert!(sol.basis[0].same(&VectorField::point(Expr::one(), z(), z())));
    }
}

#[test]
fn soundness_and_completeness() {
    let sys = determining_system(Kind::Equivalence).unwrap();
    let sol = solve_polynomial_ansatz(&sys, 1).unwrap();
    assert_eq!(sol.basis.len(), 6);
    for y in &sol.basis {
        assert!(verify_generator(y, Kind::Equivalence).is_valid(), "{y}");
    }
    // a vector with a component outside the kernel
    let n = sol.residual_rank.cols;
    let mut v: Vec<Q> = (0..n).map(|k| qi((k % 5) as i64 - 2)).collect();
    v[0] = qi(7);
    let stacked: Matrix = sol
        .vectors
        .iter()
        .cloned()
        .chain(std::iter::once(v.clone()))
        .collect();
    assert_eq!(linalg::rank(&stacked), 7);
    let y = field_from_vector(Kind::Equivalence, 1, &v);
    assert!(!verify_generator(&y, Kind::Equivalence).is_valid());
}

#[test]
fn split_reassembles_residual() {
    let y = generic_field(Kind::Equivalence);
    let r = invariance_residual(&y, Kind::Equivalence);
    let sys = split_determining(&r, Kind::Equivalence).unwrap();
    let back = sys
        .monomial_log
        .iter()
        .map(|(m, &i)| m * &sys.equations[i])
        .fold(Expr::zero(), |a, b| a + b);
    assert!(back.is_equal(&r));
}

#[test]
fn empty_system_is_an_error() {
    let sys = DeterminingSystem {
        kind: Kind::Point,
        unknowns: unknowns(Kind::Point),
        equations: vec![],
        monomial_log: BTreeMap::new(),
    };
    assert_eq!(solve_polynomial_ansatz(&sys, 1), Err(DetError::EmptySystem));
}

#[test]
fn classified_form_verifies() {
    let y = VectorField::point(z(), z(), p("u"));
    assert!(verify_generator_for(&y, &p("Phi(x)"), &p("u*Psi(x)")).is_valid());
    // u-scaling changes a u-dependent conductivity
    let e = p("exp((2*pm1 - 1)*(Phi(x) + ln(u)))");
    assert!(!verify_generator_for(&y, &e, &p("Psi(x)")).is_valid());
    let y = VectorField::point(p("t"), z(), p("u"));
    assert!(verify_generator_for(&y, &p("exp(Phi(x) - ln(u))"), &p("exp(Psi(x))")).is_valid());
    let dx = VectorField::point(z(), Expr::one(), z());
    assert!(!verify_generator(&dx, Kind::Point).is_valid());
}

#[test]
fn ansatz_coordinates_roundtrip() {
    let y = VectorField::equivalence(p("2*t"), p("x"), z(), z(), p("-2*H"));
    let v = vector_from_field(Kind::Equivalence, 2, &y).unwrap();
    assert!(field_from_vector(Kind::Equivalence, 2, &v).same(&y));
}
