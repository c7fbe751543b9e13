//! The acceptance criteria, each computed from scratch against the golden
//! files. `verify-all` and the acceptance test both run these.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::detsys::{
    determining_system, solve_polynomial_ansatz, vector_from_field, verify_generator, Kind,
};
use crate::invclass::{invariants_of, reconstruct_equation, z_field, z_sources, Reconstruction};
use crate::jetcalc::{prolong2, prolong2_characteristic, VectorField};
use crate::liealg::{
    adjoint_matrix, basis, flow, format_vector, transform_solution, verify_rule, LieAlgebra, Y4Form,
};
use crate::linalg::rref;
use crate::optsys::{apply_word, inverse_word, normalize, project, representative, OptError};
use crate::symexpr::{parse, qi, Expr, Q};

use super::golden::{self, parse_field};
use super::{table3, Comparison, CriterionResult};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Seed from `HCECLASS_SEED`, else the fixed default.
pub fn seed() -> u64 {
    std::env::var("HCECLASS_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

pub fn random_q(r: &mut ChaCha8Rng, num: i64) -> Q {
    Q::new(
        BigInt::from(r.gen_range(-num..=num)),
        BigInt::from(r.gen_range(1i64..=9)),
    )
}

fn canon(s: &str) -> String {
    parse(s)
        .map(|e| e.normalize().to_string())
        .unwrap_or_else(|e| format!("<{e}>"))
}

fn result(
    id: u8,
    title: &str,
    detail: Vec<String>,
    comparisons: &[Comparison],
    ok: bool,
) -> CriterionResult {
    let failed = comparisons
        .iter()
        .filter(|c| !c.matched && c.deviation.is_none())
        .count();
    let mut detail = detail;
    if failed > 0 {
        detail.push(format!(
            "{failed} of {} comparisons mismatched",
            comparisons.len()
        ));
    }
    CriterionResult {
        id,
        title: title.to_string(),
        passed: ok && failed == 0,
        detail,
    }
}

fn dt() -> VectorField {
    VectorField::point(Expr::one(), Expr::zero(), Expr::zero())
}

pub fn point_kernel() -> (CriterionResult, Vec<Comparison>) {
    let sys = determining_system(Kind::Point).expect("point system");
    let mut cmp = vec![];
    for d in 0..=2 {
        let sol = solve_polynomial_ansatz(&sys, d).expect("ansatz");
        let got = sol
            .basis
            .iter()
            .map(|y| y.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let ok = sol.basis.len() == 1 && sol.basis[0].same(&dt());
        cmp.push(Comparison::new(
            "point-kernel",
            &format!("degree {d}"),
            "d_t",
            &got,
            ok,
            None,
            "",
        ));
    }
    (
        result(1, "point-symmetry kernel is span{d_t}", vec![], &cmp, true),
        cmp,
    )
}

pub fn equivalence_algebra() -> (CriterionResult, Vec<Comparison>) {
    let sys = determining_system(Kind::Equivalence).expect("equivalence system");
    let sol = solve_polynomial_ansatz(&sys, 2).expect("ansatz");
    let canonical: Vec<Vec<Q>> = basis()
        .iter()
        .map(|y| vector_from_field(Kind::Equivalence, 2, y).expect("polynomial"))
        .collect();
    let same_span = sol.vectors.len() == 6 && rref(&sol.vectors).0 == rref(&canonical).0;
    let mut cmp = vec![Comparison::new(
        "equivalence-algebra",
        "dimension and span",
        "span{Y1..Y6}, dimension 6",
        &format!("dimension {}", sol.basis.len()),
        same_span,
        None,
        "",
    )];
    for (i, y) in basis().iter().enumerate() {
        let ok = verify_generator(y, Kind::Equivalence).is_valid();
        cmp.push(Comparison::new(
            "equivalence-algebra",
            &format!("Y{} verifies", i + 1),
            "Valid",
            if ok { "Valid" } else { "Invalid" },
            ok,
            None,
            "",
        ));
    }
    (
        result(
            2,
            "equivalence algebra is the 6-dimensional span of Y1..Y6",
            vec![],
            &cmp,
            true,
        ),
        cmp,
    )
}

pub fn commutator_table() -> (CriterionResult, Vec<Comparison>) {
    let alg = LieAlgebra::canonical();
    let g = golden::table1();
    let mut cmp = vec![];
    for i in 0..6 {
        for j in 0..6 {
            let got = format_vector(&alg.bracket_vec(&alg.unit(i), &alg.unit(j)));
            cmp.push(Comparison::exact(
                "table1",
                &format!("[Y{}, Y{}]", i + 1, j + 1),
                &canon(&g.entries[i][j]),
                &canon(&got),
            ));
        }
    }
    let mut r = rng(3);
    let mut bad = 0;
    for _ in 0..100 {
        let v: Vec<Vec<Q>> = (0..3)
            .map(|_| (0..6).map(|_| random_q(&mut r, 50)).collect())
            .collect();
        let anti: Vec<Q> = alg
            .bracket_vec(&v[0], &v[1])
            .iter()
            .zip(alg.bracket_vec(&v[1], &v[0]))
            .map(|(a, b)| a + b)
            .collect();
        if alg.jacobi(&v[0], &v[1], &v[2]).iter().any(|q| *q != qi(0))
            || anti.iter().any(|q| *q != qi(0))
        {
            bad += 1;
        }
    }
    let detail = vec![format!(
        "Jacobi and antisymmetry: {} of 100 random cases hold",
        100 - bad
    )];
    (result(3, "commutator table", detail, &cmp, bad == 0), cmp)
}

pub fn killing_form() -> (CriterionResult, Vec<Comparison>) {
    let alg = LieAlgebra::canonical();
    let mut cmp = vec![];
    for i in 0..6 {
        for j in 0..6 {
            let (a, b) = (alg.unit(i), alg.unit(j));
            let want = qi(5) * &a[3] * &b[3] - qi(2) * (&a[3] * &b[4] + &a[4] * &b[3])
                + &a[4] * &b[4]
                + &a[5] * &b[5];
            cmp.push(Comparison::exact(
                "killing",
                &format!("K(Y{}, Y{})", i + 1, j + 1),
                &want.to_string(),
                &alg.killing_form(&a, &b).to_string(),
            ));
        }
    }
    let kernel_ok =
        (0..3).all(|i| (0..6).all(|j| alg.killing_form(&alg.unit(i), &alg.unit(j)) == qi(0)));
    let detail = vec![format!("Y1, Y2, Y3 in the kernel: {kernel_ok}")];
    (result(4, "Killing form", detail, &cmp, kernel_ok), cmp)
}

pub fn derived_series() -> (CriterionResult, Vec<Comparison>) {
    let alg = LieAlgebra::canonical();
    let s = alg.derived_series();
    let show = |sp: &Vec<Vec<Q>>| {
        if sp.is_empty() {
            "0".to_string()
        } else {
            format!(
                "span{{{}}}",
                sp.iter()
                    .map(|v| format_vector(v))
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        }
    };
    let first = s.first().map(show).unwrap_or_default();
    let second = s.get(1).map(show).unwrap_or_default();
    let cmp = vec![
        Comparison::exact("derived-series", "L(1)", "span{Y1, Y2, Y3}", &first),
        Comparison::exact("derived-series", "L(2)", "0", &second),
    ];
    (
        result(
            5,
            "derived series L(1) = span{Y1,Y2,Y3}, L(2) = 0",
            vec![],
            &cmp,
            s.len() == 2,
        ),
        cmp,
    )
}

pub fn adjoint_table() -> (CriterionResult, Vec<Comparison>) {
    let alg = LieAlgebra::canonical();
    let g = golden::table2();
    let s = Expr::sym("s");
    let mut cmp = vec![];
    let mut laws = true;
    for i in 0..6 {
        let m = adjoint_matrix(&alg, &alg.unit(i)).expect("rational spectrum");
        for j in 0..6 {
            let got: Expr = (0..6)
                .map(|k| m.entries[k][j].to_expr_in(&s) * Expr::sym(&format!("Y{}", k + 1)))
                .sum();
            cmp.push(Comparison::exact(
                "table2",
                &format!("Ad(Y{}) Y{}", i + 1, j + 1),
                &canon(&g.entries[i][j]),
                &got.normalize().to_string(),
            ));
        }
        let ad = alg.ad(&alg.unit(i));
        let d = m.derivative().at_zero();
        laws &= m.at_zero() == crate::linalg::identity(6);
        laws &= (0..6).all(|r| (0..6).all(|c| d[r][c] == -ad[r][c].clone()));
        let r = Expr::sym("r");
        let sum = &s + &r;
        laws &= (0..6).all(|a| {
            (0..6).all(|b| {
                let lhs: Expr = (0..6)
                    .map(|k| m.entries[a][k].to_expr_in(&s) * m.entries[k][b].to_expr_in(&r))
                    .sum();
                lhs.is_equal(&m.entries[a][b].to_expr_in(&sum))
            })
        });
    }
    let detail = vec![format!(
        "group law and derivative at zero for all six generators: {laws}"
    )];
    (result(6, "adjoint table", detail, &cmp, laws), cmp)
}

pub fn flows() -> (CriterionResult, Vec<Comparison>) {
    let g = golden::flows();
    let mut cmp = vec![];
    for (i, f) in g.flows.iter().enumerate() {
        let computed = flow(i);
        for (c, want) in g.coordinates.iter().zip(&f.map) {
            cmp.push(Comparison::exact(
                "flows",
                &format!("{} {c}", f.name),
                &canon(want),
                &computed.image(c).normalize().to_string(),
            ));
        }
    }
    let s = Expr::sym("s");
    let mut rules_ok = true;
    for i in 0..6 {
        let residual = verify_rule(&transform_solution(i, &s));
        let ok = residual.is_zero();
        rules_ok &= ok;
        cmp.push(Comparison::new(
            "solution-rules",
            &format!("rule {}", i + 1),
            "0",
            &residual.to_string(),
            ok,
            None,
            "",
        ));
    }
    (
        result(7, "flows and solution rules", vec![], &cmp, rules_ok),
        cmp,
    )
}

/// Outcome of one normalizer run: leaf label, or the failure.
fn run_normalizer(alg: &LieAlgebra, a: &[Q]) -> Result<&'static str, String> {
    match normalize(alg, a) {
        Ok(n) => {
            let image = apply_word(alg, a, &n.word).map_err(|e| e.to_string())?;
            let back =
                apply_word(alg, &n.vector, &inverse_word(&n.word)).map_err(|e| e.to_string())?;
            if image != n.vector || back != a || !n.representative.matches(&n.vector) {
                return Err(format!(
                    "{}: word {} does not round-trip",
                    format_vector(a),
                    n.word
                ));
            }
            Ok(n.branch)
        }
        Err(OptError::Unlisted { branch, vector }) => Err(format!(
            "{} (branch {branch}, reduced to {vector}) matches no listed pattern",
            format_vector(a)
        )),
        Err(e) => Err(format!("{}: {e}", format_vector(a))),
    }
}

pub const LEAVES: [&str; 13] = [
    "1a-1", "1a-2", "1b-1", "1b-2-1", "1b-2-2", "2a-1-1", "2a-1-2", "2a-2-1", "2a-2-2", "2b-1-1",
    "2b-1-2", "2b-2-1", "2b-2-2",
];

/// Grid vectors bucketed by leaf (failures bucketed by the branch they
/// stopped in), at most `per_leaf` each.
pub fn branch_suite(per_leaf: usize) -> Vec<Vec<Q>> {
    let alg = LieAlgebra::canonical();
    let values = [
        qi(0),
        qi(0),
        qi(0),
        qi(1),
        qi(-1),
        qi(2),
        Q::new(BigInt::from(-1), BigInt::from(2)),
        qi(3),
    ];
    let mut r = rng(8);
    let mut buckets: BTreeMap<String, Vec<Vec<Q>>> = BTreeMap::new();
    for _ in 0..20_000 {
        let a: Vec<Q> = (0..6)
            .map(|_| values[r.gen_range(0..values.len())].clone())
            .collect();
        if a.iter().all(|q| *q == qi(0)) {
            continue;
        }
        let label = match normalize(&alg, &a) {
            Ok(n) => n.branch.to_string(),
            Err(OptError::Unlisted { branch, .. }) => format!("unlisted in {branch}"),
            Err(e) => format!("error {e}"),
        };
        let b = buckets.entry(label).or_default();
        if b.len() < per_leaf && !b.contains(&a) {
            b.push(a);
        }
    }
    buckets.into_values().flatten().collect()
}

pub fn normalizer() -> (CriterionResult, Vec<Comparison>) {
    let alg = LieAlgebra::canonical();
    let suite = branch_suite(3);
    let mut leaves: BTreeMap<&str, usize> = BTreeMap::new();
    let mut failures = vec![];
    for a in &suite {
        match run_normalizer(&alg, a) {
            Ok(l) => *leaves.entry(l).or_default() += 1,
            Err(e) => failures.push(e),
        }
    }
    let mut r = rng(9);
    let mut random_fail = 0;
    for _ in 0..1000 {
        let a: Vec<Q> = loop {
            let a: Vec<Q> = (0..6)
                .map(|_| {
                    if r.gen_bool(0.5) {
                        qi(0)
                    } else {
                        random_q(&mut r, 1000)
                    }
                })
                .collect();
            if a.iter().any(|q| *q != qi(0)) {
                break a;
            }
        };
        if let Err(e) = run_normalizer(&alg, &a) {
            random_fail += 1;
            failures.push(e);
        }
    }
    let uncovered: Vec<&str> = LEAVES
        .iter()
        .filter(|l| leaves.get(*l).copied().unwrap_or(0) < 2)
        .copied()
        .collect();
    let mut detail = vec![
        format!(
            "branch suite: {} vectors, {} leaves with at least two",
            suite.len(),
            LEAVES.len() - uncovered.len()
        ),
        format!(
            "random vectors: {} of 1000 reduced (seed {})",
            1000 - random_fail,
            seed()
        ),
    ];
    if !uncovered.is_empty() {
        detail.push(format!(
            "leaves not covered twice: {}",
            uncovered.join(", ")
        ));
    }
    if !failures.is_empty() {
        detail.push(
            "on a4 != 0, a5 = 2 a4 the Y1 coefficient only changes by scaling or sign (Ad(Y1) shifts it by s(a5 - 2a4)), so a1 != 0 is invariant and no listed pattern with these Y4, Y5, Y6 coefficients is reachable".to_string(),
        );
        detail.extend(failures.iter().take(6).cloned());
        if failures.len() > 6 {
            detail.push(format!("... {} failures in total", failures.len()));
        }
    }
    let ok = failures.is_empty() && uncovered.is_empty() && suite.len() >= 40;
    (
        result(8, "normalizer reaches a listed pattern", detail, &[], ok),
        vec![],
    )
}

pub fn projections() -> (CriterionResult, Vec<Comparison>) {
    let g = golden::projections();
    let mut cmp = vec![];
    let mut ok = g.zero.iter().all(|a| {
        project(&representative(a[1..].parse().unwrap()).field(Y4Form::Printed)).is_none()
    });
    for (i, z) in g.projections.iter().enumerate() {
        let want = parse_field(&z.field)
            .expect("golden grammar")
            .restrict(&["x", "u", "E", "H"]);
        let printed = z_field(i + 1, Y4Form::Printed);
        let sources: Vec<String> = z_sources(i + 1).iter().map(|a| format!("A{a}")).collect();
        ok &= sources == z.sources;
        for a in z_sources(i + 1) {
            let p = project(&representative(*a).field(Y4Form::Printed));
            ok &= p.as_ref().is_some_and(|p| p.same(&printed));
        }
        cmp.push(Comparison::new(
            "projections",
            &z.name,
            &want.to_string(),
            &printed.to_string(),
            want.same(&printed),
            None,
            "printed-Y4 route",
        ));
        let canonical = z_field(i + 1, Y4Form::Canonical);
        if !canonical.same(&want) {
            let dev = if [7, 15].contains(&(i + 1)) {
                "unsimplified-dx"
            } else {
                "y4-generator"
            };
            cmp.push(Comparison::new(
                "projections",
                &format!("{} (canonical Y4)", z.name),
                &want.to_string(),
                &canonical.to_string(),
                false,
                Some(dev),
                "differs only through Y4",
            ));
        }
    }
    let o = golden::optimal();
    for (k, rep) in o.representatives.iter().enumerate() {
        let want = parse_field(&rep.field).expect("golden grammar");
        let printed = representative(k + 1).field(Y4Form::Printed);
        cmp.push(Comparison::new(
            "optimal-system",
            &rep.name,
            &rep.field,
            &printed.to_string(),
            want.same(&printed),
            None,
            "printed-Y4 route",
        ));
    }
    let detail = vec!["A1 projects to zero; sources follow the printed correspondence".to_string()];
    (result(9, "projections Z1..Z23", detail, &cmp, ok), cmp)
}

pub fn classification() -> (CriterionResult, Vec<Comparison>) {
    let rows = golden::table3().rows;
    let cmp = table3::compare(&rows);
    let inv = invariants_of(&z_field(4, Y4Form::Printed)).expect("supported");
    let z4 = reconstruct_equation(&inv) == Reconstruction::NoInvariantEquation;
    let canonical = crate::invclass::classify_all(Y4Form::Canonical).expect("supported");
    let canon_ok = canonical.iter().all(|e| e.all_verified());
    let matched = cmp.iter().filter(|c| c.matched).count();
    let explained = cmp
        .iter()
        .filter(|c| !c.matched && c.deviation.is_some())
        .count();
    let detail = vec![
        format!("Z4 yields no invariant equation: {z4}"),
        format!(
            "{} printed rows: {matched} match, {explained} differ only by an allowlisted misprint",
            rows.len()
        ),
        format!(
            "canonical-Y4 route: {} families, all verified: {canon_ok}",
            canonical.len()
        ),
    ];
    (result(10, "classification table", detail, &cmp, z4), cmp)
}

fn random_poly(r: &mut ChaCha8Rng) -> Expr {
    let vars = ["t", "x", "u"];
    let mut e = Expr::zero();
    for _ in 0..r.gen_range(1..=4) {
        let mut m = Expr::rat(random_q(r, 9));
        for _ in 0..r.gen_range(0..=2) {
            m = m * Expr::sym(vars[r.gen_range(0..3)]);
        }
        e = e + m;
    }
    e
}

pub fn prolongation_routes() -> (CriterionResult, Vec<Comparison>) {
    let mut r = rng(12);
    let mut bad = vec![];
    for k in 0..50 {
        let y = VectorField::point(
            random_poly(&mut r),
            random_poly(&mut r),
            random_poly(&mut r),
        );
        let (a, b) = (prolong2(&y), prolong2_characteristic(&y));
        let same = a.jet_coeffs.len() == b.jet_coeffs.len()
            && a.jet_coeffs
                .iter()
                .all(|(s, e)| b.jet_coeffs.get(s).is_some_and(|f| e.is_equal(f)));
        if !same {
            bad.push(format!("generator {k}: {y}"));
        }
    }
    let mut detail = vec![format!(
        "{} of 50 random generators agree (seed {})",
        50 - bad.len(),
        seed()
    )];
    detail.extend(bad.iter().cloned());
    (
        result(12, "prolongation routes agree", detail, &[], bad.is_empty()),
        vec![],
    )
}

/// Criteria 1-10 and 12; the deviations ledger (11) is judged on the
/// finished report.
pub fn run_all() -> Vec<(CriterionResult, Vec<Comparison>)> {
    vec![
        point_kernel(),
        equivalence_algebra(),
        commutator_table(),
        killing_form(),
        derived_series(),
        adjoint_table(),
        flows(),
        normalizer(),
        projections(),
        classification(),
        prolongation_routes(),
    ]
}

/// Criterion 11 on its own terms: the detectors fire on exactly the
/// allowlisted sites.
pub fn ledger(findings: &[super::Finding]) -> CriterionResult {
    let allow: Vec<String> = golden::allowlist()
        .allowlist
        .into_iter()
        .map(|a| a.id)
        .collect();
    let found: Vec<String> = findings.iter().map(|f| f.id.clone()).collect();
    let mut detail = vec![format!("detected: {}", found.join(", "))];
    let missing: Vec<&String> = allow.iter().filter(|a| !found.contains(a)).collect();
    if !missing.is_empty() {
        detail.push(format!("allowlisted but not detected: {missing:?}"));
    }
    let stray: Vec<&String> = found.iter().filter(|f| !allow.contains(f)).collect();
    if !stray.is_empty() {
        detail.push(format!("detected but not allowlisted: {stray:?}"));
    }
    CriterionResult {
        id: 11,
        title: "deviations ledger holds exactly the known misprints".to_string(),
        passed: missing.is_empty() && stray.is_empty(),
        detail,
    }
}

pub fn verify_all() -> super::Report {
    let start = std::time::Instant::now();
    let deviations = super::deviations::detect_all();
    let mut criteria = vec![];
    let mut comparisons = vec![];
    for (c, cmp) in run_all() {
        criteria.push(c);
        comparisons.extend(cmp);
    }
    criteria.insert(10, ledger(&deviations));
    super::Report {
        stage: "verify-all".to_string(),
        criteria,
        comparisons,
        deviations,
        timing_ms: start.elapsed().as_millis() as u64,
    }
}
