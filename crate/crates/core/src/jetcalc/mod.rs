//! Jet space on `(t, x, u)` up to order two: total derivatives, extended total
//! derivatives on `(t, x, u, E, H)`, characteristics and prolongations.

mod field;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::symexpr::{Expr, Symbol, SymbolKind};

pub use field::{equivalence_coords, point_coords, VectorField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JetError {
    #[error("jet order overflow: {0} would leave the order-2 jet")]
    JetOrderOverflow(String),
    #[error("invalid dependence: {0}")]
    InvalidDependence(String),
}

/// Base or extended coordinate by name.
pub fn coord(name: &str) -> Symbol {
    Symbol::named(name)
}

/// Jet coordinate `u_{t^a x^b}`; `u` itself for `a = b = 0`.
pub fn jet_symbol(a: usize, b: usize) -> Symbol {
    if a + b == 0 {
        return coord("u");
    }
    Symbol::new(
        SymbolKind::JetVar,
        format!("u_{}{}", "t".repeat(a), "x".repeat(b)),
    )
}

pub fn jet(name: &str) -> Expr {
    Expr::Sym(Symbol::named(name))
}

/// Formal partial of `E` or `H` on the extended space, e.g. `E_x`.
pub fn formal(name: &str) -> Expr {
    Expr::Sym(Symbol::named(name))
}

fn jet_order_of(e: &Expr, limit: usize) -> Option<usize> {
    let mut top = None;
    for a in 0..=limit + 1 {
        for b in 0..=limit + 1 - a {
            if a + b > 0 && e.contains_symbol(&jet_symbol(a, b)) {
                top = Some(top.map_or(a + b, |m: usize| m.max(a + b)));
            }
        }
    }
    top
}

/// Total derivative without the order cap; jets of any order are named by
/// [`jet_symbol`].
fn total_derivative_free(e: &Expr, v: &str, order: usize) -> Expr {
    let (da, db) = if v == "t" { (1, 0) } else { (0, 1) };
    let mut out = e.diff(&coord(v));
    for n in 0..=order {
        for a in 0..=n {
            let b = n - a;
            let s = jet_symbol(a, b);
            let d = e.diff(&s);
            if !d.is_zero_literal() {
                out = out + Expr::Sym(jet_symbol(a + da, b + db)) * d;
            }
        }
    }
    out
}

/// `D_t` or `D_x` on the order-2 jet. Formal `E(x, u)`, `H(x, u)` kernels
/// pick up their chain terms through differentiation of the arguments.
pub fn total_derivative(e: &Expr, v: &str) -> Result<Expr, JetError> {
    assert!(
        v == "t" || v == "x",
        "total derivative direction must be t or x"
    );
    let order = jet_order_of(e, 3).unwrap_or(0);
    if order >= 2 {
        let offending = (0..=order)
            .map(|a| jet_symbol(a, order - a))
            .find(|s| !e.diff(s).is_zero_literal());
        if let Some(s) = offending {
            return Err(JetError::JetOrderOverflow(format!("D_{v} of {}", s.name)));
        }
    }
    Ok(total_derivative_free(e, v, order))
}

/// `D~_I = d_I + E_I d_E + H_I d_H` on the extended space.
pub fn extended_total_derivative(e: &Expr, i: &str) -> Expr {
    assert!(
        matches!(i, "t" | "x" | "u"),
        "extended derivative direction must be t, x or u"
    );
    e.diff(&coord(i))
        + formal(&format!("E_{i}")) * e.diff(&coord("E"))
        + formal(&format!("H_{i}")) * e.diff(&coord("H"))
}

/// `Q = phi - xi u_t - tau u_x`.
pub fn characteristic(y: &VectorField) -> Expr {
    y.get("u") - y.get("t") * jet("u_t") - y.get("x") * jet("u_x")
}

/// A field together with its generated jet coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedField {
    pub base: VectorField,
    pub jet_coeffs: BTreeMap<Symbol, Expr>,
}

impl ProlongedField {
    pub fn jet_coeff(&self, name: &str) -> Expr {
        self.jet_coeffs
            .iter()
            .find(|(s, _)| s.name == name)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Expr::zero)
    }

    /// Action on a function of the base and jet coordinates.
    pub fn apply(&self, f: &Expr) -> Expr {
        self.jet_coeffs
            .iter()
            .map(|(s, c)| c * &f.diff(s))
            .fold(self.base.apply(f), |a, b| a + b)
    }
}

const FIRST: [(usize, usize); 2] = [(1, 0), (0, 1)];
const SECOND: [(usize, usize); 3] = [(2, 0), (1, 1), (0, 2)];

fn insert(map: &mut BTreeMap<Symbol, Expr>, s: Symbol, e: Expr) {
    map.insert(s, e.normalize());
}

/// Second prolongation, iterating the first-order rule
/// `phi^{Jv} = D_v(phi^J) - u_{Jt} D_v(xi) - u_{Jx} D_v(tau)`.
pub fn prolong2(y: &VectorField) -> ProlongedField {
    let xi = y.get("t");
    let tau = y.get("x");
    let d = |e: &Expr, v: &str| total_derivative_free(e, v, 1);
    let step = |prev: &Expr, a: usize, b: usize, v: &str| {
        d(prev, v)
            - Expr::Sym(jet_symbol(a + 1, b)) * d(&xi, v)
            - Expr::Sym(jet_symbol(a, b + 1)) * d(&tau, v)
    };
    let mut map = BTreeMap::new();
    let phi = y.get("u");
    let phi_t = step(&phi, 0, 0, "t").normalize();
    let phi_x = step(&phi, 0, 0, "x").normalize();
    insert(&mut map, jet_symbol(2, 0), step(&phi_t, 1, 0, "t"));
    insert(&mut map, jet_symbol(1, 1), step(&phi_t, 1, 0, "x"));
    insert(&mut map, jet_symbol(0, 2), step(&phi_x, 0, 1, "x"));
    insert(&mut map, jet_symbol(1, 0), phi_t);
    insert(&mut map, jet_symbol(0, 1), phi_x);
    map.retain(|_, v| !v.is_zero_literal());
    ProlongedField {
        base: y.clone(),
        jet_coeffs: map,
    }
}

/// Second prolongation through the characteristic,
/// `phi^J = D_J(Q) + xi u_{Jt} + tau u_{Jx}`.
pub fn prolong2_characteristic(y: &VectorField) -> ProlongedField {
    let q = characteristic(y);
    let xi = y.get("t");
    let tau = y.get("x");
    let mut map = BTreeMap::new();
    for &(a, b) in FIRST.iter().chain(SECOND.iter()) {
        let mut dq = q.clone();
        let mut order = 1;
        for _ in 0..a {
            dq = total_derivative_free(&dq, "t", order);
            order += 1;
        }
        for _ in 0..b {
            dq = total_derivative_free(&dq, "x", order);
            order += 1;
        }
        let c = dq + &xi * Expr::Sym(jet_symbol(a + 1, b)) + &tau * Expr::Sym(jet_symbol(a, b + 1));
        insert(&mut map, jet_symbol(a, b), c);
    }
    map.retain(|_, v| !v.is_zero_literal());
    ProlongedField {
        base: y.clone(),
        jet_coeffs: map,
    }
}

/// Prolongation of an equivalence field: the point coefficients of its
/// `(t, x, u)` part plus `chi^t, chi^x, chi^u` and `eta^t`.
pub fn prolong_equivalence(y: &VectorField) -> ProlongedField {
    let mut p = prolong2(&y.restrict(&["t", "x", "u"]));
    p.base = y.clone();
    let chi = y.get("E");
    let eta = y.get("H");
    let lifted = |target: &Expr, f: &str, i: &str| {
        let dd = |e: &Expr| extended_total_derivative(e, i);
        dd(target)
            - formal(&format!("{f}_t")) * dd(&y.get("t"))
            - formal(&format!("{f}_x")) * dd(&y.get("x"))
            - formal(&format!("{f}_u")) * dd(&y.get("u"))
    };
    for i in ["t", "x", "u"] {
        let c = lifted(&chi, "E", i).normalize();
        if !c.is_zero_literal() {
            p.jet_coeffs.insert(Symbol::named(&format!("E_{i}")), c);
        }
    }
    let c = lifted(&eta, "H", "t").normalize();
    if !c.is_zero_literal() {
        p.jet_coeffs.insert(Symbol::named("H_t"), c);
    }
    p
}
