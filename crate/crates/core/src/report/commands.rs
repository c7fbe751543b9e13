//! Payloads of the CLI subcommands, rendered as text, JSON or LaTeX.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::detsys::{determining_system, solve_polynomial_ansatz, DetError, Kind};
use crate::invclass::{
    classify_all, invariants_of, reconstruct_equation, z_field, z_sources, ClassificationEntry,
    InvError, Reconstruction, Regime,
};
use crate::liealg::{
    adjoint_matrix, basis, flow, format_combination, format_vector, LieAlgebra, LieError, Y4Form,
};
use crate::optsys::{normalize, representatives, OptError};
use crate::symexpr::{qi, Expr, Symbol, Q};

use super::{BasisEntry, Document};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: vec![],
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Det(#[from] DetError),
    #[error(transparent)]
    Inv(#[from] InvError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Opt(#[from] OptError),
}

pub fn y4_form(printed: bool) -> Y4Form {
    if printed {
        Y4Form::Printed
    } else {
        Y4Form::Canonical
    }
}

fn ansatz(kind: Kind, stage: &str, degree: usize) -> Result<Document, CommandError> {
    let sol = solve_polynomial_ansatz(&determining_system(kind)?, degree)?;
    let mut doc = Document::new(stage);
    doc.basis = sol
        .basis
        .iter()
        .enumerate()
        .map(|(i, y)| BasisEntry::of(&format!("X{}", i + 1), y))
        .collect();
    let mut t = Table::new(&["name", "generator"]);
    for (i, y) in sol.basis.iter().enumerate() {
        t.push(vec![format!("X{}", i + 1), y.to_string()]);
    }
    Ok(doc.table("generators", &t))
}

pub fn symmetries(degree: usize) -> Result<Document, CommandError> {
    ansatz(Kind::Point, "symmetries", degree)
}

pub fn equivalence_algebra(degree: usize) -> Result<Document, CommandError> {
    ansatz(Kind::Equivalence, "equivalence-algebra", degree)
}

fn canonical_basis(stage: &str) -> Document {
    let mut doc = Document::new(stage);
    doc.basis = basis()
        .iter()
        .enumerate()
        .map(|(i, y)| BasisEntry::of(&format!("Y{}", i + 1), y))
        .collect();
    doc
}

fn square(header: &str) -> Table {
    let mut h = vec![header];
    let names = ["Y1", "Y2", "Y3", "Y4", "Y5", "Y6"];
    h.extend(names);
    Table::new(&h)
}

pub fn commutator_table() -> Document {
    let alg = LieAlgebra::canonical();
    let mut t = square("[ , ]");
    for i in 0..6 {
        let mut row = vec![format!("Y{}", i + 1)];
        row.extend((0..6).map(|j| format_vector(&alg.bracket_vec(&alg.unit(i), &alg.unit(j)))));
        t.push(row);
    }
    canonical_basis("commutator-table").table("commutators", &t)
}

pub fn adjoint_table() -> Result<Document, CommandError> {
    let alg = LieAlgebra::canonical();
    let s = Expr::sym("s");
    let mut t = square("Ad");
    for i in 0..6 {
        let m = adjoint_matrix(&alg, &alg.unit(i))?;
        let mut row = vec![format!("Y{}", i + 1)];
        for j in 0..6 {
            let coeffs: Vec<Expr> = (0..6).map(|k| m.entries[k][j].to_expr_in(&s)).collect();
            row.push(format_combination(&coeffs, Some(j)));
        }
        t.push(row);
    }
    Ok(canonical_basis("adjoint-table").table("adjoint", &t))
}

pub fn killing_form() -> Document {
    let alg = LieAlgebra::canonical();
    let mut t = square("K");
    let k = alg.killing_matrix();
    for (i, r) in k.iter().enumerate() {
        let mut row = vec![format!("Y{}", i + 1)];
        row.extend(r.iter().map(|q| q.to_string()));
        t.push(row);
    }
    canonical_basis("killing-form").table("killing", &t)
}

pub fn flows() -> Document {
    let coords = ["t", "x", "u", "E", "H"];
    let mut h = vec!["flow"];
    h.extend(coords);
    let mut t = Table::new(&h);
    for i in 0..6 {
        let f = flow(i);
        let mut row = vec![f.name.clone()];
        row.extend(coords.iter().map(|c| f.image(c).to_string()));
        t.push(row);
    }
    canonical_basis("flows").table("flows", &t)
}

pub fn optimal_system(printed_y4: bool) -> Document {
    let mut t = Table::new(&["name", "combination", "generator"]);
    for r in representatives() {
        t.push(vec![
            r.name(),
            r.formula(),
            r.field(y4_form(printed_y4)).to_string(),
        ]);
    }
    canonical_basis("optimal-system").table("representatives", &t)
}

pub fn normalize_vector(v: &[Q]) -> Result<Document, CommandError> {
    let alg = LieAlgebra::canonical();
    let n = normalize(&alg, v)?;
    let mut t = Table::new(&[
        "input",
        "representative",
        "image",
        "word",
        "branch",
        "values",
    ]);
    let values: Vec<String> = n.values.iter().map(|(k, q)| format!("{k} = {q}")).collect();
    t.push(vec![
        format_vector(v),
        format!(
            "{} = {}",
            n.representative.name(),
            n.representative.formula()
        ),
        format_vector(&n.vector),
        n.word.to_string(),
        n.branch.to_string(),
        values.join(", "),
    ]);
    Ok(canonical_basis("normalize").table("normalized", &t))
}

pub fn invariants(printed_y4: bool) -> Result<Document, CommandError> {
    let mut t = Table::new(&["Z", "sources", "field", "I1", "I2", "I3", "equation"]);
    for i in 1..=23 {
        let z = z_field(i, y4_form(printed_y4));
        let inv = invariants_of(&z)?;
        let [i1, i2, i3] = inv.display();
        let eq = match reconstruct_equation(&inv) {
            Reconstruction::Family { e_form, h_form, .. } => format!("E = {e_form}, H = {h_form}"),
            Reconstruction::NoInvariantEquation => "no invariant equation".to_string(),
        };
        let sources: Vec<String> = z_sources(i).iter().map(|a| format!("A{a}")).collect();
        t.push(vec![
            format!("Z{i}"),
            sources.join(", "),
            z.to_string(),
            i1,
            i2,
            i3,
            eq,
        ]);
    }
    Ok(Document::new("invariants").table("invariants", &t))
}

/// Every `alpha*` parameter bound to `alpha`, when given.
fn bind_alpha(e: &Expr, alpha: Option<&Q>) -> Expr {
    let Some(a) = alpha else { return e.clone() };
    e.free_symbols()
        .iter()
        .filter(|s| s.name.starts_with("alpha"))
        .fold(e.clone(), |acc, s: &Symbol| {
            acc.subs(&s.expr(), &Expr::rat(a.clone()))
        })
        .normalize()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Holds {
    Always,
    Never,
    Open,
}

/// A regime binding `s = v` with alpha fixed: identically true, false for
/// every choice of signs, or a residual condition.
fn binding_status(s: &Symbol, v: &Expr, alpha: &Q) -> Holds {
    let cond = (bind_alpha(&s.expr(), Some(alpha)) - bind_alpha(v, Some(alpha))).normalize();
    if cond.is_zero() {
        return Holds::Always;
    }
    let free = cond.free_symbols();
    if !free.iter().all(|s| s.name.starts_with("pm")) {
        return Holds::Open;
    }
    let signs: Vec<&Symbol> = free.iter().collect();
    let any_zero = (0..1u32 << signs.len()).any(|mask| {
        let env: BTreeMap<Symbol, Q> = signs
            .iter()
            .enumerate()
            .map(|(i, s)| {
                (
                    (*s).clone(),
                    if mask >> i & 1 == 1 { -qi(1) } else { qi(1) },
                )
            })
            .collect();
        cond.eval(&env).is_some_and(|q| q == qi(0))
    });
    if any_zero {
        Holds::Open
    } else {
        Holds::Never
    }
}

/// With a numeric alpha a row survives when none of its conditions fails and
/// no more special regime of the same projection holds outright.
fn applies(e: &ClassificationEntry, all: &[ClassificationEntry], alpha: &Q) -> bool {
    let holds = |r: &Regime, h: Holds| {
        r.bindings
            .iter()
            .any(|(s, v)| binding_status(s, v, alpha) == h)
    };
    let outright = |r: &Regime| {
        !r.bindings.is_empty()
            && r.bindings
                .iter()
                .all(|(s, v)| binding_status(s, v, alpha) == Holds::Always)
    };
    !holds(&e.regime, Holds::Never)
        && !all.iter().any(|o| {
            o.z == e.z
                && o.regime.vanished.len() > e.regime.vanished.len()
                && outright(&o.regime)
                && !outright(&e.regime)
        })
}

fn regime_label(r: &Regime, alpha: Option<&Q>) -> String {
    let Some(a) = alpha else { return r.label() };
    let open: Vec<String> = r
        .bindings
        .iter()
        .filter(|(s, v)| binding_status(s, v, a) == Holds::Open)
        .map(|(s, v)| {
            format!(
                "{} = {}",
                bind_alpha(&s.expr(), alpha),
                bind_alpha(v, alpha)
            )
        })
        .collect();
    if open.is_empty() {
        "generic".to_string()
    } else {
        open.join(", ")
    }
}

pub fn classify(printed_y4: bool, alpha: Option<&Q>) -> Result<Document, CommandError> {
    let entries = classify_all(y4_form(printed_y4))?;
    let mut t = Table::new(&[
        "N",
        "Z",
        "regime",
        "lambda",
        "E",
        "H",
        "operators",
        "verified",
    ]);
    for (n, e) in entries.iter().enumerate() {
        if alpha.is_some_and(|a| !applies(e, &entries, a)) {
            continue;
        }
        let ops: Vec<String> = e
            .operators
            .iter()
            .map(|x| x.map_coeffs(|c| bind_alpha(c, alpha)).to_string())
            .collect();
        let regime = regime_label(&e.regime, alpha);
        t.push(vec![
            (n + 1).to_string(),
            format!("Z{}", e.z),
            regime,
            bind_alpha(&e.lambda, alpha).to_string(),
            bind_alpha(&e.e_form, alpha).to_string(),
            bind_alpha(&e.h_form, alpha).to_string(),
            ops.join(", "),
            e.all_verified().to_string(),
        ]);
    }
    Ok(Document::new("classify").table("classification", &t))
}

pub fn render_text(doc: &Document) -> String {
    let mut out = String::new();
    for (name, v) in &doc.tables {
        let Ok(t) = serde_json::from_value::<Table>(v.clone()) else {
            continue;
        };
        let _ = writeln!(out, "{name}");
        let mut widths: Vec<usize> = t.header.iter().map(|h| h.chars().count()).collect();
        for r in &t.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        for r in std::iter::once(&t.header).chain(&t.rows) {
            let cells: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "  {}", cells.join("  ").trim_end());
        }
    }
    out
}

/// Expression text to LaTeX math.
pub fn latex_expr(s: &str) -> String {
    let mut out = s.to_string();
    for (from, to) in [
        ("d_t", "\\partial_t"),
        ("d_x", "\\partial_x"),
        ("d_u", "\\partial_u"),
        ("d_E", "\\partial_E"),
        ("d_H", "\\partial_H"),
        ("Phi", "\\Phi"),
        ("Psi", "\\Psi"),
        ("alpha", "\\alpha_"),
        ("beta", "\\beta_"),
        ("pm1", "\\epsilon_1"),
        ("pm2", "\\epsilon_2"),
        ("exp", "\\exp"),
        ("ln", "\\ln"),
        ("*", " "),
    ] {
        out = out.replace(from, to);
    }
    out
}

/// Table bodies only: one `a & b & ... \\` line per row.
pub fn render_latex(doc: &Document) -> String {
    let mut out = String::new();
    for v in doc.tables.values() {
        let Ok(t) = serde_json::from_value::<Table>(v.clone()) else {
            continue;
        };
        for r in &t.rows {
            let cells: Vec<String> = r.iter().map(|c| format!("${}$", latex_expr(c))).collect();
            let _ = writeln!(out, "{} \\\\", cells.join(" & "));
        }
    }
    out
}
