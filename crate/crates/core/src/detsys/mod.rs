//! Determining systems: invariance residuals, splitting over jets, and exact
//! solution under a polynomial ansatz.

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::jetcalc::{formal, jet, prolong2, prolong_equivalence, total_derivative, VectorField};
use crate::linalg::{self, Matrix};
use crate::symexpr::{Expr, ExprError, Func, Symbol, SymbolKind, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Point,
    Equivalence,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("determining system has no equations")]
    EmptySystem,
}

/// Unknown coefficient function with its argument list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unknown {
    pub name: String,
    pub coord: String,
    pub args: Vec<Symbol>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminingSystem {
    pub kind: Kind,
    pub unknowns: Vec<Unknown>,
    pub equations: Vec<Expr>,
    /// Split monomial -> index of the equation it produced.
    pub monomial_log: BTreeMap<Expr, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankData {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzSolution {
    pub basis: Vec<VectorField>,
    pub degree: usize,
    pub residual_rank: RankData,
    /// Ansatz coordinates of each basis element.
    pub vectors: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Expr),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

fn sym(name: &str) -> Symbol {
    Symbol::named(name)
}

pub fn unknowns(kind: Kind) -> Vec<Unknown> {
    let base: Vec<Symbol> = ["t", "x", "u"].iter().map(|n| sym(n)).collect();
    let ext: Vec<Symbol> = ["t", "x", "u", "E", "H"].iter().map(|n| sym(n)).collect();
    let mut out = vec![
        Unknown {
            name: "xi".into(),
            coord: "t".into(),
            args: base.clone(),
        },
        Unknown {
            name: "tau".into(),
            coord: "x".into(),
            args: base.clone(),
        },
        Unknown {
            name: "phi".into(),
            coord: "u".into(),
            args: base,
        },
    ];
    if kind == Kind::Equivalence {
        out.push(Unknown {
            name: "chi".into(),
            coord: "E".into(),
            args: ext.clone(),
        });
        out.push(Unknown {
            name: "eta".into(),
            coord: "H".into(),
            args: ext,
        });
    }
    out
}

/// Field whose coefficients are the formal unknowns of `kind`.
pub fn generic_field(kind: Kind) -> VectorField {
    let mut y = match kind {
        Kind::Point => VectorField::new(crate::jetcalc::point_coords()),
        Kind::Equivalence => VectorField::new(crate::jetcalc::equivalence_coords()),
    };
    for uk in unknowns(kind) {
        let args = uk.args.iter().map(|s| Expr::Sym(s.clone())).collect();
        y = y.with(&uk.coord, Expr::apply(&uk.name, args));
    }
    y
}

fn xu() -> Vec<Expr> {
    vec![Expr::sym("x"), Expr::sym("u")]
}

/// Right-hand side `D_x(E u_x) + H` of the equation for given `E`, `H`.
pub fn equation_rhs(e_form: &Expr, h_form: &Expr) -> Expr {
    total_derivative(&(e_form * &jet("u_x")), "x").expect("order-1 flux") + h_form
}

/// Residual of the prolonged point field on the equation with concrete
/// `E(x, u)`, `H(x, u)`, after eliminating `u_t`.
pub fn invariance_residual_with(y: &VectorField, e_form: &Expr, h_form: &Expr) -> Expr {
    let rhs = equation_rhs(e_form, h_form);
    let eq = jet("u_t") - &rhs;
    prolong2(y).apply(&eq).subs(&jet("u_t"), &rhs)
}

fn extended_rhs() -> Expr {
    Expr::sym("E") * jet("u_xx")
        + formal("E_x") * jet("u_x")
        + formal("E_u") * jet("u_x").pow(2)
        + Expr::sym("H")
}

/// Weights that fold the auxiliary conditions `E_t = 0`, `H_t = 0` into the
/// single equivalence residual; the split separates them again.
pub fn auxiliary_weights() -> [Expr; 2] {
    [
        Expr::Sym(Symbol::new(SymbolKind::JetVar, "mu_E")),
        Expr::Sym(Symbol::new(SymbolKind::JetVar, "mu_H")),
    ]
}

pub fn invariance_residual(y: &VectorField, kind: Kind) -> Expr {
    match kind {
        Kind::Point => {
            invariance_residual_with(y, &Expr::apply("E", xu()), &Expr::apply("H", xu()))
        }
        Kind::Equivalence => {
            let pr = prolong_equivalence(y);
            let rhs = extended_rhs();
            let eq = jet("u_t") - &rhs;
            let [we, wh] = auxiliary_weights();
            let total = pr.apply(&eq) + we * pr.jet_coeff("E_t") + wh * pr.jet_coeff("H_t");
            let mut b = crate::symexpr::Bindings::new();
            b.insert(jet("u_t"), rhs);
            b.insert(formal("E_t"), Expr::zero());
            b.insert(formal("H_t"), Expr::zero());
            total.substitute(&b)
        }
    }
}

/// `E(x, u)` and `H(x, u)` kernels up to order two, paired with the plain
/// symbols the split uses for them.
fn kernel_symbols() -> Bindings {
    let mut b = Bindings::new();
    for name in ["E", "H"] {
        for (i, j) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
            let f = Func {
                name: name.into(),
                deriv: vec![i, j],
            };
            let suffix = format!("{}{}", "x".repeat(i as usize), "u".repeat(j as usize));
            let s = if suffix.is_empty() {
                name.to_string()
            } else {
                format!("{name}_{suffix}")
            };
            b.insert(Expr::Apply(f, xu()), Expr::sym(&s));
        }
    }
    b
}

use crate::symexpr::Bindings;

fn split_basis(kind: Kind) -> Vec<Expr> {
    let mut basis = vec![jet("u_x"), jet("u_tx"), jet("u_xx")];
    if kind == Kind::Equivalence {
        basis.extend(["E_x", "E_u", "H_x", "H_u"].iter().map(|n| formal(n)));
        basis.extend(auxiliary_weights());
    }
    basis
}

pub fn split_determining(residual: &Expr, kind: Kind) -> Result<DeterminingSystem, DetError> {
    let r = match kind {
        Kind::Point => residual.substitute(&kernel_symbols()),
        Kind::Equivalence => residual.clone(),
    };
    let groups = r.collect(&split_basis(kind))?;
    let mut equations = Vec::new();
    let mut monomial_log = BTreeMap::new();
    for (m, c) in groups {
        monomial_log.insert(m, equations.len());
        equations.push(c);
    }
    Ok(DeterminingSystem {
        kind,
        unknowns: unknowns(kind),
        equations,
        monomial_log,
    })
}

pub fn determining_system(kind: Kind) -> Result<DeterminingSystem, DetError> {
    split_determining(&invariance_residual(&generic_field(kind), kind), kind)
}

/// Monomials of total degree `<= degree` in `vars`, graded then lexicographic.
pub fn graded_monomials(vars: &[Symbol], degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for d in 0..=degree {
        let mut level = Vec::new();
        exponents(vars.len(), d, &mut Vec::new(), &mut level);
        out.extend(level);
    }
    out
}

fn exponents(n: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() + 1 == n {
        prefix.push(d);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if n == 0 {
        return;
    }
    for k in (0..=d).rev() {
        prefix.push(k);
        exponents(n, d - k, prefix, out);
        prefix.pop();
    }
}

fn monomial_expr(vars: &[Symbol], exps: &[usize]) -> Expr {
    vars.iter()
        .zip(exps)
        .map(|(v, &k)| Expr::Sym(v.clone()).pow(k as i64))
        .fold(Expr::one(), |a, b| a * b)
}

/// Column layout of the ansatz: `(unknown index, monomial)` per column.
pub fn ansatz_columns(unknowns: &[Unknown], degree: usize) -> Vec<(usize, Expr)> {
    let mut cols = Vec::new();
    for (i, uk) in unknowns.iter().enumerate() {
        for m in graded_monomials(&uk.args, degree) {
            cols.push((i, monomial_expr(&uk.args, &m)));
        }
    }
    cols
}

fn coefficient_symbol(k: usize) -> Expr {
    Expr::Sym(Symbol::new(SymbolKind::Constant, format!("k{k}")))
}

/// Field on the system's space from ansatz coordinates.
pub fn field_from_vector(kind: Kind, degree: usize, v: &[Q]) -> VectorField {
    let uks = unknowns(kind);
    let cols = ansatz_columns(&uks, degree);
    let mut y = match kind {
        Kind::Point => VectorField::new(crate::jetcalc::point_coords()),
        Kind::Equivalence => VectorField::new(crate::jetcalc::equivalence_coords()),
    };
    for (i, uk) in uks.iter().enumerate() {
        let c = cols
            .iter()
            .zip(v)
            .filter(|((j, _), _)| *j == i)
            .map(|((_, m), q)| m.scale(q))
            .fold(Expr::zero(), |a, b| a + b);
        y = y.with(&uk.coord, c);
    }
    y
}

/// Ansatz coordinates of a polynomial field, if it fits the degree.
pub fn vector_from_field(kind: Kind, degree: usize, y: &VectorField) -> Option<Vec<Q>> {
    let uks = unknowns(kind);
    let cols = ansatz_columns(&uks, degree);
    let mut v = vec![Q::from_integer(0.into()); cols.len()];
    for (i, uk) in uks.iter().enumerate() {
        let basis: Vec<Expr> = uk.args.iter().map(|s| Expr::Sym(s.clone())).collect();
        let groups = y.get(&uk.coord).collect(&basis).ok()?;
        for (m, c) in groups {
            let k = cols.iter().position(|(j, mm)| *j == i && *mm == m)?;
            v[k] = c.as_rational()?;
        }
    }
    Some(v)
}

pub fn solve_polynomial_ansatz(
    sys: &DeterminingSystem,
    degree: usize,
) -> Result<AnsatzSolution, DetError> {
    if sys.equations.is_empty() {
        return Err(DetError::EmptySystem);
    }
    let cols = ansatz_columns(&sys.unknowns, degree);
    let coef_syms: Vec<Expr> = (0..cols.len()).map(coefficient_symbol).collect();
    let mut bodies: Vec<Expr> = vec![Expr::zero(); sys.unknowns.len()];
    for (k, (i, m)) in cols.iter().enumerate() {
        bodies[*i] = &bodies[*i] + &coef_syms[k] * m;
    }
    let mut rows: BTreeMap<(usize, Expr), Vec<Q>> = BTreeMap::new();
    for (ei, eq) in sys.equations.iter().enumerate() {
        let mut e = eq.clone();
        for (uk, body) in sys.unknowns.iter().zip(&bodies) {
            e = e.substitute_function(&uk.name, &uk.args, body);
        }
        for (mono, coef) in e.collect(&coef_syms)? {
            let k = coef_syms.iter().position(|s| *s == mono).ok_or_else(|| {
                ExprError::NotPolynomialInBasis(format!("nonlinear ansatz term {mono}"))
            })?;
            for (m, q) in coef.monomials() {
                let row = rows
                    .entry((ei, m))
                    .or_insert_with(|| vec![Q::from_integer(0.into()); cols.len()]);
                row[k] += q;
            }
        }
    }
    let matrix: Matrix = rows.into_values().collect();
    let rank = linalg::rank(&matrix);
    let vectors = linalg::nullspace(&matrix, cols.len());
    let basis = vectors
        .iter()
        .map(|v| field_from_vector(sys.kind, degree, v))
        .collect();
    Ok(AnsatzSolution {
        basis,
        degree,
        residual_rank: RankData {
            rows: matrix.len(),
            cols: cols.len(),
            rank,
        },
        vectors,
    })
}

pub fn verify_generator(y: &VectorField, kind: Kind) -> Verdict {
    verdict(invariance_residual(y, kind))
}

/// Check a point field against concrete `E`, `H` forms; formal functions in
/// the forms stay arbitrary.
pub fn verify_generator_for(y: &VectorField, e_form: &Expr, h_form: &Expr) -> Verdict {
    verdict(invariance_residual_with(y, e_form, h_form))
}

fn verdict(r: Expr) -> Verdict {
    if r.is_zero() {
        Verdict::Valid
    } else {
        Verdict::Invalid(r.normalize())
    }
}
