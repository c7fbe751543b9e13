use super::*;
use crate::symexpr::parse;

fn p(s: &str) -> Expr {
    parse(s).unwrap()
}

fn generic_point() -> VectorField {
    VectorField::point(p("xi(t, x, u)"), p("tau(t, x, u)"), p("phi(t, x, u)"))
}

#[test]
fn total_derivative_of_flux() {
    let d = total_derivative(&p("E(x, u)*u_x"), "x").unwrap();
    assert!(d.is_equal(&p("E_x(x, u)*u_x + E_u(x, u)*u_x^2 + E(x, u)*u_xx")));
    assert!(total_derivative(&p("t"), "x").unwrap().is_zero());
    assert_eq!(total_derivative(&p("u"), "t").unwrap(), p("u_t"));
}

#[test]
fn total_derivative_refuses_third_order() {
    assert!(matches!(
        total_derivative(&p("u_xx"), "x"),
        Err(JetError::JetOrderOverflow(_))
    ));
    assert!(total_derivative(&p("u_t*u_x"), "x").is_ok());
}

#[test]
fn mixed_total_derivatives_commute() {
    let a = total_derivative(&total_derivative(&p("u"), "t").unwrap(), "x").unwrap();
    let b = total_derivative(&total_derivative(&p("u"), "x").unwrap(), "t").unwrap();
    assert_eq!(a, b);
    assert_eq!(a, p("u_tx"));
}

#[test]
fn extended_total_derivative_examples() {
    let chi = p("chi(t, x, u, E, H)");
    let d = extended_total_derivative(&chi, "t");
    let expected = p("chi_1(t, x, u, E, H) + E_t*chi_4(t, x, u, E, H) + H_t*chi_5(t, x, u, E, H)");
    assert!(d.is_equal(&expected), "{d}");
    let reduced = d
        .subs(&p("E_t"), &Expr::zero())
        .subs(&p("H_t"), &Expr::zero());
    assert!(reduced.is_equal(&p("chi_1(t, x, u, E, H)")));
    assert_eq!(extended_total_derivative(&p("E"), "x"), p("E_x"));
    assert!(extended_total_derivative(&p("t"), "u").is_zero());
}

#[test]
fn characteristic_examples() {
    let one = Expr::one;
    let z = Expr::zero;
    assert_eq!(
        characteristic(&VectorField::point(one(), z(), z())),
        p("-u_t")
    );
    assert_eq!(
        characteristic(&VectorField::point(z(), z(), p("u"))),
        p("u")
    );
    assert_eq!(
        characteristic(&VectorField::point(one(), one(), one())),
        p("1 - u_t - u_x")
    );
}

#[test]
fn prolongation_examples() {
    let z = Expr::zero;
    assert!(prolong2(&VectorField::point(Expr::one(), z(), z()))
        .jet_coeffs
        .is_empty());
    let scale_u = prolong2(&VectorField::point(z(), z(), p("u")));
    assert_eq!(scale_u.jet_coeff("u_x"), p("u_x"));
    assert_eq!(scale_u.jet_coeff("u_xx"), p("u_xx"));
    let scale_t = prolong2(&VectorField::point(p("t"), z(), z()));
    assert_eq!(scale_t.jet_coeff("u_t"), p("-u_t"));
    assert!(scale_t.jet_coeff("u_xx").is_zero());
}

#[test]
fn routes_agree_on_generic_field() {
    let y = generic_point();
    let a = prolong2(&y);
    let b = prolong2_characteristic(&y);
    for name in ["u_t", "u_x", "u_tt", "u_tx", "u_xx"] {
        assert!(a.jet_coeff(name).is_equal(&b.jet_coeff(name)), "{name}");
    }
}

#[test]
fn first_order_expanded_identity() {
    let y = generic_point();
    let pr = prolong2_characteristic(&y);
    let dx = |e: &Expr| total_derivative(e, "x").unwrap();
    let expanded = dx(&y.get("u")) - p("u_t") * dx(&y.get("t")) - p("u_x") * dx(&y.get("x"));
    assert!(pr.jet_coeff("u_x").is_equal(&expanded));
}

#[test]
fn prolongation_is_linear() {
    let y = VectorField::point(p("t^2"), p("x*u"), p("u + t"));
    let z = VectorField::point(p("x"), p("1"), p("u^2*x"));
    let a = Expr::rat(crate::symexpr::q(3, 2));
    let b = Expr::int(-2);
    let lhs = prolong2(&y.scale(&a).add(&z.scale(&b)));
    let py = prolong2(&y);
    let pz = prolong2(&z);
    for name in ["u_t", "u_x", "u_tt", "u_tx", "u_xx"] {
        let rhs = &a * &py.jet_coeff(name) + &b * &pz.jet_coeff(name);
        assert!(lhs.jet_coeff(name).is_equal(&rhs), "{name}");
    }
}

#[test]
fn equivalence_prolongation_examples() {
    let z = Expr::zero;
    let scale_e = VectorField::equivalence(z(), z(), z(), p("E"), z());
    let pr = prolong_equivalence(&scale_e);
    assert_eq!(pr.jet_coeff("E_x"), p("E_x"));
    assert_eq!(pr.jet_coeff("E_u"), p("E_u"));
    assert_eq!(pr.jet_coeff("E_t"), p("E_t"));
    let shift = VectorField::equivalence(Expr::one(), z(), z(), z(), z());
    let pr = prolong_equivalence(&shift);
    for name in ["E_t", "E_x", "E_u", "H_t"] {
        assert!(pr.jet_coeff(name).is_zero());
    }
}

#[test]
fn equivalence_t_constraint() {
    let y = VectorField::equivalence(
        p("xi(t, x, u)"),
        p("tau(t, x, u)"),
        p("phi(t, x, u)"),
        p("chi(t, x, u, E, H)"),
        p("eta(t, x, u, E, H)"),
    );
    let pr = prolong_equivalence(&y);
    let kill = |e: Expr| {
        e.subs(&p("E_t"), &Expr::zero())
            .subs(&p("H_t"), &Expr::zero())
    };
    let chi_t = kill(pr.jet_coeff("E_t"));
    let expected = p("chi_1(t, x, u, E, H) - E_x*tau_t(t, x, u) - E_u*phi_t(t, x, u)");
    assert!(chi_t.is_equal(&expected), "{chi_t}");
    // Y5 = -t d_t + E d_E + H d_H
    let y5 = VectorField::equivalence(p("-t"), Expr::zero(), Expr::zero(), p("E"), p("H"));
    let pr = prolong_equivalence(&y5);
    assert!(kill(pr.jet_coeff("E_t")).is_zero());
    assert!(kill(pr.jet_coeff("H_t")).is_zero());
}

#[test]
fn dependence_check() {
    assert!(generic_point().check_dependencies().is_ok());
    let bad = VectorField::point(p("E"), Expr::zero(), Expr::zero());
    assert!(bad.check_dependencies().is_err());
    let ok = VectorField::equivalence(Expr::zero(), Expr::zero(), Expr::zero(), p("E*H"), p("H"));
    assert!(ok.check_dependencies().is_ok());
}

#[test]
fn display_of_fields() {
    let y = VectorField::equivalence(p("2*t"), p("x"), Expr::zero(), Expr::zero(), p("-2*H"));
    assert_eq!(y.to_string(), "2*t*d_t + x*d_x - 2*H*d_H");
    let y = VectorField::point(p("-1"), p("t + 1"), Expr::zero());
    assert_eq!(y.to_string(), "-d_t + (t + 1)*d_x");
}
