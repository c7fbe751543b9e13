use super::*;
use crate::symexpr::{parse, q, qi};
use proptest::prelude::*;

fn p(s: &str) -> Expr {
    parse(s).unwrap()
}

fn vecq(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| qi(x)).collect()
}

/// Table 1 as printed: entry (i, j) is [Y_i, Y_j].
pub(crate) fn printed_table() -> Vec<Vec<&'static str>> {
    vec![
        vec!["0", "0", "0", "2*Y1", "-Y1", "0"],
        vec!["0", "0", "0", "Y2", "0", "0"],
        vec!["0", "0", "0", "0", "0", "Y3"],
        vec!["-2*Y1", "-Y2", "0", "0", "0", "0"],
        vec!["Y1", "0", "0", "0", "0", "0"],
        vec!["0", "0", "-Y3", "0", "0", "0"],
    ]
}

#[test]
fn bracket_examples() {
    let y = basis();
    assert!(bracket(&y[0], &y[3]).same(&y[0].scale(&Expr::int(2))));
    assert!(bracket(&y[0], &y[0]).is_zero());
    assert!(bracket(&y[5], &y[2]).same(&y[2].scale(&Expr::int(-1))));
}

#[test]
fn structure_table_matches_print() {
    let alg = LieAlgebra::canonical();
    let table = alg.structure_table();
    for (i, row) in printed_table().iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            assert_eq!(format_vector(&table[i][j]), *want, "({i}, {j})");
        }
    }
}

#[test]
fn printed_y4_breaks_table() {
    let alg = LieAlgebra::from_fields(basis_with(Y4Form::Printed)).unwrap();
    assert_eq!(format_vector(&alg.structure[1][3]), "0");
}

#[test]
fn not_closed_is_reported() {
    let mut b = basis();
    b[5] = b[5].scale(&p("u"));
    assert!(matches!(
        LieAlgebra::from_fields(b),
        Err(LieError::NotClosed(..))
    ));
}

#[test]
fn killing_form_closed_formula() {
    let alg = LieAlgebra::canonical();
    let e = |i| alg.unit(i);
    assert_eq!(alg.killing_form(&e(3), &e(3)), qi(5));
    assert_eq!(alg.killing_form(&e(3), &e(4)), qi(-2));
    for i in 0..6 {
        for j in 0..6 {
            let (a, b) = (e(i), e(j));
            let formula = qi(5) * &a[3] * &b[3] - qi(2) * (&a[3] * &b[4] + &a[4] * &b[3])
                + &a[4] * &b[4]
                + &a[5] * &b[5];
            assert_eq!(alg.killing_form(&a, &b), formula);
        }
        if i < 3 {
            assert!((0..6).all(|j| alg.killing_form(&e(i), &e(j)) == qi(0)));
        }
    }
}

#[test]
fn derived_series_terminates() {
    let alg = LieAlgebra::canonical();
    let series = alg.derived_series();
    assert_eq!(series.len(), 2);
    assert_eq!(
        series[0],
        vec![
            vecq(&[1, 0, 0, 0, 0, 0]),
            vecq(&[0, 1, 0, 0, 0, 0]),
            vecq(&[0, 0, 1, 0, 0, 0])
        ]
    );
    assert!(series[1].is_empty());
    let abelian = LieAlgebra::from_structure(vec![vec![vec![qi(0); 2]; 2]; 2]);
    assert_eq!(abelian.derived_series(), vec![Vec::<Vec<Q>>::new()]);
}

#[test]
fn adjoint_examples() {
    let alg = LieAlgebra::canonical();
    let col = adjoint_action(&alg, 3, 0).unwrap();
    assert_eq!(col[0], ExpPoly::term(qi(1), 0, qi(2)));
    assert!(col[1..].iter().all(|e| e.is_zero()));
    let col = adjoint_action(&alg, 0, 3).unwrap();
    assert_eq!(col[0], ExpPoly::term(qi(-2), 1, qi(0)));
    assert_eq!(col[3], ExpPoly::one());
    let col = adjoint_action(&alg, 2, 5).unwrap();
    assert_eq!(col[2], ExpPoly::term(qi(-1), 1, qi(0)));
    assert_eq!(col[5], ExpPoly::one());
}

#[test]
fn adjoint_derivative_and_group_law() {
    let alg = LieAlgebra::canonical();
    for i in 0..6 {
        let m = adjoint_matrix(&alg, &alg.unit(i)).unwrap();
        assert_eq!(m.at_zero(), crate::linalg::identity(6));
        let d = m.derivative().at_zero();
        let ad = alg.ad(&alg.unit(i));
        for r in 0..6 {
            for c in 0..6 {
                assert_eq!(d[r][c], -ad[r][c].clone());
            }
        }
        let (s, r) = (Expr::sym("s"), Expr::sym("r"));
        let sum = &s + &r;
        for a in 0..6 {
            for b in 0..6 {
                let lhs = (0..6)
                    .map(|k| m.entries[a][k].to_expr_in(&s) * m.entries[k][b].to_expr_in(&r))
                    .fold(Expr::zero(), |x, y| x + y);
                assert!(
                    lhs.is_equal(&m.entries[a][b].to_expr_in(&sum)),
                    "Y{} ({a},{b})",
                    i + 1
                );
            }
        }
    }
}

#[test]
fn non_rational_spectrum_is_an_error() {
    // rotation generator: [e1, e2] = e3-like toy with eigenvalues +-i
    let mut st = vec![vec![vec![qi(0); 3]; 3]; 3];
    st[0][1] = vecq(&[0, 0, 1]);
    st[1][0] = vecq(&[0, 0, -1]);
    st[0][2] = vecq(&[0, -1, 0]);
    st[2][0] = vecq(&[0, 1, 0]);
    let alg = LieAlgebra::from_structure(st);
    assert_eq!(
        adjoint_matrix(&alg, &alg.unit(0)),
        Err(LieError::NonRationalSpectrum)
    );
}

#[test]
fn flows_match_printed_maps() {
    let printed = [
        ["t + s", "x", "u", "E", "H"],
        ["t", "x + s", "u", "E", "H"],
        ["t", "x", "u + s", "E", "H"],
        ["t*exp(2*s)", "x*exp(s)", "u", "E", "H*exp(-2*s)"],
        ["t*exp(-s)", "x", "u", "E*exp(s)", "H*exp(s)"],
        ["t", "x", "u*exp(s)", "E", "H*exp(s)"],
    ];
    for (i, row) in printed.iter().enumerate() {
        let g = flow(i);
        for (c, want) in ["t", "x", "u", "E", "H"].iter().zip(row) {
            assert!(g.image(c).is_equal(&p(want)), "G{} {c}", i + 1);
        }
        assert!(g.is_identity_at_zero());
        assert!(g.group_law_holds());
        assert!(g.generator().same(&basis()[i]));
    }
}

#[test]
fn unsupported_flow_shape() {
    let y = VectorField::equivalence(
        p("x"),
        Expr::zero(),
        Expr::zero(),
        Expr::zero(),
        Expr::zero(),
    );
    assert!(matches!(
        flow_of(&y, "bad"),
        Err(LieError::UnsupportedCoefficientShape(..))
    ));
}

#[test]
fn reflections_are_involutions() {
    let r = reflections();
    assert_eq!(r.len(), 4);
    for g in &r {
        for c in ["t", "x", "u", "E", "H"] {
            let twice = g.image(c).subs(&Expr::sym(c), &g.image(c));
            assert!(twice.is_equal(&Expr::sym(c)));
        }
    }
}

#[test]
fn solution_rules_verify() {
    let printed_u = [
        "f(t + s, x)",
        "f(t, x + s)",
        "f(t, x) - s",
        "f(t*exp(2*s), x*exp(s))",
        "f(t*exp(-s), x)",
        "exp(-s)*f(t, x)",
    ];
    for (i, want) in printed_u.iter().enumerate() {
        let rule = transform_solution(i, &Expr::sym("s"));
        assert!(rule.u.is_equal(&p(want)), "u{}: {}", i + 1, rule.u);
        let res = verify_rule(&rule);
        assert!(res.is_zero(), "u{}: {res}", i + 1);
        let id = transform_solution(i, &Expr::zero());
        assert!(id.u.is_equal(&p("f(t, x)")));
        assert!(id.e_bar.is_equal(&p("E(x, u)")) && id.h_bar.is_equal(&p("H(x, u)")));
    }
    let six = transform_solution(5, &Expr::sym("s"));
    assert!(six.h_bar.is_equal(&p("exp(-s)*H(x, u*exp(s))")));
}

#[test]
fn wrong_rule_fails() {
    let mut rule = transform_solution(5, &Expr::sym("s"));
    rule.h_bar = p("exp(s)*H(x, u)");
    assert!(!verify_rule(&rule).is_zero());
}

#[test]
fn exppoly_arithmetic() {
    let a = &ExpPoly::term(q(1, 2), 1, qi(2)) + &ExpPoly::one();
    let b = ExpPoly::term(qi(3), 0, qi(-2));
    let prod = &a * &b;
    assert_eq!(
        prod,
        &ExpPoly::term(q(3, 2), 1, qi(0)) + &ExpPoly::term(qi(3), 0, qi(-2))
    );
    assert!((&a - &a).is_zero());
    assert_eq!(ExpPoly::term(qi(1), 2, qi(1)).derivative().at_zero(), qi(0));
    assert_eq!(a.to_string(), "s*exp(2*s)/2 + 1");
}

fn small() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-5i64..=5, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn jacobi_holds(a in small(), b in small(), c in small()) {
        let alg = LieAlgebra::canonical();
        let j = alg.jacobi(&vecq(&a), &vecq(&b), &vecq(&c));
        prop_assert!(j.iter().all(|x| *x == qi(0)));
    }

    #[test]
    fn bracket_antisymmetric(a in small(), b in small()) {
        let alg = LieAlgebra::canonical();
        let x = alg.bracket_vec(&vecq(&a), &vecq(&b));
        let y = alg.bracket_vec(&vecq(&b), &vecq(&a));
        prop_assert!(x.iter().zip(&y).all(|(p, q)| p.clone() + q.clone() == qi(0)));
    }
}
