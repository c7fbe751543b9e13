//! Detectors for misprints in the printed formulas. Each returns evidence
//! computed from scratch; an empty list means the printed formula holds.

use crate::detsys::{verify_generator, Kind};
use crate::invclass::{invariants_of, z_field};
use crate::jetcalc::{jet, prolong2, total_derivative, VectorField};
use crate::liealg::{basis, bracket, LieAlgebra, Y4Form};
use crate::optsys::{apply_step, Param, Step};
use crate::symexpr::{parse, qi, Expr};

use super::golden::{self, parse_field, repeated_operators};
use super::Finding;

fn y4_generator(p: &golden::Printed) -> Vec<String> {
    let y4 = parse_field(&p.y4).expect("golden grammar");
    let mut ev = vec![];
    if !verify_generator(&y4, Kind::Equivalence).is_valid() {
        ev.push(format!(
            "printed Y4 = {y4} fails the equivalence determining system"
        ));
    }
    let b = bracket(&basis()[1], &y4);
    if b.is_zero() {
        ev.push("[Y2, Y4] = 0 with the printed Y4; the commutator table gives Y2".to_string());
    }
    ev
}

fn characteristic_q(p: &golden::Printed) -> Vec<String> {
    // d_t: xi = 1, tau = 0, phi = 0, whose prolongation is trivial
    let q = parse(&p.characteristic)
        .expect("golden grammar")
        .subs(&Expr::sym("xi"), &Expr::one())
        .subs(&Expr::sym("tau"), &Expr::zero());
    let eta_t = total_derivative(&q, "t").expect("first order") + jet("u_tt");
    let dt = VectorField::point(Expr::one(), Expr::zero(), Expr::zero());
    let want = prolong2(&dt).jet_coeff("u_t");
    if eta_t.is_equal(&want) {
        vec![]
    } else {
        vec![format!("for d_t the printed characteristic gives eta^t = {}, the iterated prolongation gives {}", eta_t.normalize(), want)]
    }
}

fn z23_first_invariant(p: &golden::Printed) -> Vec<String> {
    let z = z_field(23, Y4Form::Printed);
    let i1 = parse(&p.i1_z23).expect("golden grammar");
    let defect = z.apply(&i1).normalize();
    if defect.is_zero() {
        return vec![];
    }
    let derived = invariants_of(&z).expect("supported shape").i1;
    vec![format!("Z23 applied to the printed I1 gives {defect}; the characteristic system gives I1 = {derived}")]
}

fn case_1a(p: &golden::Printed) -> Vec<String> {
    let alg = LieAlgebra::canonical();
    let gen: usize = p.case_1a.generator[1..].parse::<usize>().expect("Y<n>") - 1;
    // a generic Case 1a vector: a6 = 1, a4 != 0
    let v = [3, 0, 0, 2, 5, 1].map(qi).to_vec();
    let s = &v[0] / &v[3];
    let w = apply_step(
        &alg,
        &v,
        &Step::Ad {
            gen,
            param: Param::Rational(s),
        },
    )
    .expect("rational step");
    if w[0] == qi(0) {
        vec![]
    } else {
        vec![format!(
            "Ad(exp((a1/a4) Y{})) maps {} to {}; the Y1 coefficient is untouched",
            gen + 1,
            crate::liealg::format_vector(&v),
            crate::liealg::format_vector(&w)
        )]
    }
}

fn unsimplified_dx() -> Vec<String> {
    golden::optimal()
        .representatives
        .iter()
        .filter_map(|r| {
            let rep = repeated_operators(&r.field);
            if rep.is_empty() {
                return None;
            }
            let y = parse_field(&r.field).expect("golden grammar");
            let merged: Vec<String> = rep
                .iter()
                .map(|d| format!("{} = ({})*{d}", d, y.get(&d[2..])))
                .collect();
            Some(format!(
                "{}: {} printed unsimplified; {}",
                r.name,
                r.field,
                merged.join(", ")
            ))
        })
        .collect()
}

/// Every detector, in allowlist order; findings without evidence are dropped.
pub fn detect_all() -> Vec<Finding> {
    let p = golden::printed();
    let allow = golden::allowlist();
    let found = [
        ("y4-generator", y4_generator(&p)),
        ("characteristic-q", characteristic_q(&p)),
        ("z23-first-invariant", z23_first_invariant(&p)),
        ("case-1a-adjoint", case_1a(&p)),
        ("unsimplified-dx", unsimplified_dx()),
    ];
    found
        .into_iter()
        .filter(|(_, ev)| !ev.is_empty())
        .map(|(id, evidence)| {
            let entry = allow.allowlist.iter().find(|a| a.id == id);
            Finding {
                id: id.to_string(),
                site: entry.map(|a| a.site.clone()).unwrap_or_default(),
                evidence,
                allowlisted: entry.is_some(),
            }
        })
        .collect()
}
