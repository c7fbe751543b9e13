use super::*;
use crate::liealg::{LieAlgebra, Y4Form};
use crate::symexpr::{parse, q, qi, Expr, Q};

fn v(x: &[i64]) -> Vec<Q> {
    x.iter().map(|&k| qi(k)).collect()
}

fn alg() -> LieAlgebra {
    LieAlgebra::canonical()
}

#[test]
fn apply_word_examples() {
    let a = alg();
    let w = AdjointWord {
        steps: vec![Step::Ad {
            gen: 0,
            param: Param::Rational(q(3, 2)),
        }],
    };
    // Y1 step with s = a1 / (2 a4) clears a1 of Y4 + 3 Y1
    assert_eq!(
        apply_word(&a, &v(&[3, 0, 0, 1, 0, 0]), &w).unwrap(),
        v(&[0, 0, 0, 1, 0, 0])
    );
    let any = v(&[1, -2, 3, 4, 5, 6]);
    assert_eq!(apply_word(&a, &any, &AdjointWord::default()).unwrap(), any);
    let w = AdjointWord {
        steps: vec![Step::Ad {
            gen: 3,
            param: Param::Log(qi(2)),
        }],
    };
    assert_eq!(
        apply_word(&a, &v(&[0, 1, 0, 0, 0, 0]), &w).unwrap(),
        v(&[0, 2, 0, 0, 0, 0])
    );
}

#[test]
fn irrational_parameters_are_rejected() {
    let a = alg();
    let w = AdjointWord {
        steps: vec![Step::Ad {
            gen: 3,
            param: Param::Rational(qi(1)),
        }],
    };
    assert!(matches!(
        apply_word(&a, &v(&[0, 1, 0, 0, 0, 0]), &w),
        Err(OptError::IrrationalResult(_))
    ));
    let w = AdjointWord {
        steps: vec![Step::Ad {
            gen: 0,
            param: Param::Log(qi(2)),
        }],
    };
    assert!(matches!(
        apply_word(&a, &v(&[0, 0, 0, 1, 0, 0]), &w),
        Err(OptError::IrrationalResult(_))
    ));
    // a half-integer rate would need a square root
    let w = AdjointWord {
        steps: vec![Step::Ad {
            gen: 0,
            param: Param::Log(qi(2)),
        }],
    };
    assert!(apply_word(&a, &v(&[1, 0, 0, 0, 0, 0]), &w).is_ok());
}

#[test]
fn normalize_examples() {
    let a = alg();
    let n = normalize(&a, &v(&[0, 0, 0, 0, 0, 1])).unwrap();
    assert_eq!(n.representative.index, 6);
    assert!(n.word.steps.is_empty());
    let n = normalize(&a, &v(&[1, 1, 0, 0, 0, 0])).unwrap();
    assert_eq!(n.representative.index, 7);
    assert_eq!(n.branch, "2b-2-2");
    let n = normalize(&a, &v(&[5, 0, 0, 1, 0, 1])).unwrap();
    assert_eq!(n.representative.index, 17);
    assert_eq!(n.values, vec![("alpha2".to_string(), qi(1))]);
    assert_eq!(
        apply_word(&a, &v(&[5, 0, 0, 1, 0, 1]), &n.word).unwrap(),
        n.vector
    );
    let n = normalize(&a, &v(&[0, 3, 0, 0, 0, 2])).unwrap();
    assert_eq!(n.representative.index, 13);
    assert_eq!(n.branch, "1b-2-1");
}

#[test]
fn unlisted_locus_is_reported() {
    let a = alg();
    // a1 != 0 with 2 a4 = a5: Y1 spans an ideal and no step clears a1
    let e = normalize(&a, &v(&[1, 0, 0, 1, 2, 1])).unwrap_err();
    assert!(matches!(e, OptError::Unlisted { branch: "1a", .. }));
    let e = normalize(&a, &[qi(1), qi(0), qi(0), q(1, 2), qi(1), qi(0)]).unwrap_err();
    assert!(matches!(e, OptError::Unlisted { branch: "2a-1", .. }));
    assert_eq!(
        normalize(&a, &v(&[0; 6])).unwrap_err(),
        OptError::ZeroVector
    );
}

#[test]
fn patterns_have_distinct_supports() {
    let reps = representatives();
    assert_eq!(reps.len(), 29);
    for r in &reps {
        let sample: Vec<Q> = r
            .slots
            .iter()
            .map(|s| match s {
                Slot::Zero => qi(0),
                Slot::One | Slot::Sign(_) => qi(1),
                Slot::Param(_) => q(3, 7),
            })
            .collect();
        let hits: Vec<usize> = reps
            .iter()
            .filter(|x| x.matches(&sample))
            .map(|x| x.index)
            .collect();
        assert_eq!(hits, vec![r.index]);
    }
}

#[test]
fn scale_equivariance_and_reflection_closure() {
    let a = alg();
    let base = v(&[2, -3, 5, 0, 0, 7]);
    let n = normalize(&a, &base).unwrap();
    for k in [q(1, 3), qi(4), qi(-2)] {
        let scaled: Vec<Q> = base.iter().map(|x| x * &k).collect();
        assert_eq!(
            normalize(&a, &scaled).unwrap().representative.index,
            n.representative.index
        );
    }
    for axis in [Axis::T, Axis::U] {
        let w = AdjointWord {
            steps: vec![Step::Reflect(axis)],
        };
        let flipped = apply_word(&a, &base, &w).unwrap();
        assert_eq!(
            normalize(&a, &flipped).unwrap().representative.index,
            n.representative.index
        );
    }
}

#[test]
fn inverse_word_round_trip() {
    let a = alg();
    let input = v(&[3, -4, 2, 0, 1, 5]);
    let n = normalize(&a, &input).unwrap();
    let back = apply_word(&a, &n.vector, &inverse_word(&n.word)).unwrap();
    assert_eq!(back, input);
}

#[test]
fn projections_follow_printed_correspondence() {
    let reps = representatives();
    assert!(project(&reps[0].field(Y4Form::Canonical)).is_none());
    let z4 = project(&reps[4].field(Y4Form::Canonical)).unwrap();
    assert!(z4.same(
        &crate::jetcalc::VectorField::equivalence(
            Expr::zero(),
            Expr::zero(),
            Expr::zero(),
            parse("E").unwrap(),
            parse("H").unwrap()
        )
        .restrict(&["x", "u", "E", "H"])
    ));
    let y = reps[6].field(Y4Form::Canonical);
    let z = reps[10].field(Y4Form::Canonical);
    let lin = project(&y.scale(&Expr::int(2)).add(&z.scale(&Expr::int(-3)))).unwrap();
    let sep = project(&y)
        .unwrap()
        .scale(&Expr::int(2))
        .add(&project(&z).unwrap().scale(&Expr::int(-3)));
    assert!(lin.same(&sep));
}
