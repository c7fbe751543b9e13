//! The six-dimensional equivalence algebra: structure constants, Killing form,
//! derived series, exact adjoint actions and one-parameter flows.

mod adjoint;
mod exppoly;
mod flow;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::jetcalc::VectorField;
use crate::linalg::{self, Matrix};
use crate::symexpr::{parse, Expr, Q};

pub use adjoint::{adjoint_action, adjoint_matrix, AdjointMatrix};
pub use exppoly::{param_s, ExpPoly};
pub use flow::{flow, flow_of, reflections, transform_solution, verify_rule, Flow, SolutionRule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("bracket [{0}, {1}] is not in the span of the basis")]
    NotClosed(String, String),
    #[error("adjoint spectrum is not rational")]
    NonRationalSpectrum,
    #[error("coefficient of d_{0} has no closed-form flow: {1}")]
    UnsupportedCoefficientShape(String, String),
}

/// Which `Y4` to use: the Table-1-consistent `x d_x` form, or the form with a
/// bare `d_x` as printed next to the generator list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub enum Y4Form {
    #[default]
    Canonical,
    Printed,
}

fn field(spec: [&str; 5]) -> VectorField {
    let p = |s: &str| parse(s).expect("basis literal");
    VectorField::equivalence(p(spec[0]), p(spec[1]), p(spec[2]), p(spec[3]), p(spec[4]))
}

pub fn basis_with(form: Y4Form) -> Vec<VectorField> {
    let y4 = match form {
        Y4Form::Canonical => ["2*t", "x", "0", "0", "-2*H"],
        Y4Form::Printed => ["2*t", "1", "0", "0", "-2*H"],
    };
    vec![
        field(["1", "0", "0", "0", "0"]),
        field(["0", "1", "0", "0", "0"]),
        field(["0", "0", "1", "0", "0"]),
        field(y4),
        field(["-t", "0", "0", "E", "H"]),
        field(["0", "0", "u", "0", "H"]),
    ]
}

/// `Y1 .. Y6` in canonical form.
pub fn basis() -> Vec<VectorField> {
    basis_with(Y4Form::Canonical)
}

pub fn bracket(y: &VectorField, z: &VectorField) -> VectorField {
    y.bracket(z)
}

/// Flat `(coordinate, monomial) -> coefficient` view of a polynomial field.
fn flatten(y: &VectorField) -> BTreeMap<(String, Expr), Q> {
    let mut out = BTreeMap::new();
    for (s, c) in &y.coeffs {
        for (m, q) in c.monomials() {
            out.insert((s.name.clone(), m), q);
        }
    }
    out
}

/// Coordinates of `y` in the span of `basis`, if it lies there.
pub fn coordinates_in(basis: &[VectorField], y: &VectorField) -> Option<Vec<Q>> {
    let flats: Vec<_> = basis.iter().map(flatten).collect();
    let target = flatten(y);
    let mut keys: Vec<(String, Expr)> = flats.iter().flat_map(|f| f.keys().cloned()).collect();
    keys.extend(target.keys().cloned());
    keys.sort();
    keys.dedup();
    let n = basis.len();
    let rows: Matrix = keys
        .iter()
        .map(|k| {
            let mut r: Vec<Q> = flats
                .iter()
                .map(|f| f.get(k).cloned().unwrap_or_else(Q::zero))
                .collect();
            r.push(target.get(k).cloned().unwrap_or_else(Q::zero));
            r
        })
        .collect();
    let (red, pivots) = linalg::rref(&rows);
    if pivots.contains(&n) {
        return None;
    }
    let mut v = vec![Q::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = red[r][n].clone();
    }
    Some(v)
}

/// Structure constants over an ordered basis: `structure[i][j]` holds the
/// coordinates of `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    pub names: Vec<String>,
    pub basis: Vec<VectorField>,
    pub structure: Vec<Vec<Vec<Q>>>,
}

impl LieAlgebra {
    pub fn from_fields(basis: Vec<VectorField>) -> Result<Self, LieError> {
        let names: Vec<String> = (1..=basis.len()).map(|i| format!("Y{i}")).collect();
        let mut structure = Vec::new();
        for (i, a) in basis.iter().enumerate() {
            let mut row = Vec::new();
            for (j, b) in basis.iter().enumerate() {
                let c = coordinates_in(&basis, &a.bracket(b))
                    .ok_or_else(|| LieError::NotClosed(names[i].clone(), names[j].clone()))?;
                row.push(c);
            }
            structure.push(row);
        }
        Ok(LieAlgebra {
            names,
            basis,
            structure,
        })
    }

    /// Algebra given by structure constants alone.
    pub fn from_structure(structure: Vec<Vec<Vec<Q>>>) -> Self {
        let names = (1..=structure.len()).map(|i| format!("Y{i}")).collect();
        LieAlgebra {
            names,
            basis: Vec::new(),
            structure,
        }
    }

    pub fn canonical() -> Self {
        Self::from_fields(basis()).expect("canonical basis is closed")
    }

    pub fn dim(&self) -> usize {
        self.structure.len()
    }

    pub fn unit(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    pub fn bracket_vec(&self, v: &[Q], w: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if w[j].is_zero() {
                    continue;
                }
                let f = &v[i] * &w[j];
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &f * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(v)`; column `j` holds `[v, e_j]`.
    pub fn ad(&self, v: &[Q]) -> Matrix {
        let n = self.dim();
        let mut m = linalg::zeros(n, n);
        for j in 0..n {
            let col = self.bracket_vec(v, &self.unit(j));
            for k in 0..n {
                m[k][j] = col[k].clone();
            }
        }
        m
    }

    pub fn structure_table(&self) -> Vec<Vec<Vec<Q>>> {
        self.structure.clone()
    }

    pub fn killing_form(&self, v: &[Q], w: &[Q]) -> Q {
        linalg::trace(&linalg::mat_mul(&self.ad(v), &self.ad(w)))
    }

    pub fn killing_matrix(&self) -> Matrix {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.killing_form(&self.unit(i), &self.unit(j)))
                    .collect()
            })
            .collect()
    }

    /// Row-reduced span of all brackets of elements of `space`.
    pub fn commutator_span(&self, space: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let mut rows = Vec::new();
        for a in space {
            for b in space {
                rows.push(self.bracket_vec(a, b));
            }
        }
        if rows.is_empty() {
            return rows;
        }
        linalg::rref(&rows).0
    }

    /// `L^(1), L^(2), ...` as row-reduced bases, ending at the first zero
    /// or stationary term.
    pub fn derived_series(&self) -> Vec<Vec<Vec<Q>>> {
        let mut cur: Vec<Vec<Q>> = (0..self.dim()).map(|i| self.unit(i)).collect();
        let mut out = Vec::new();
        loop {
            let next = self.commutator_span(&cur);
            let stop = next.is_empty() || next.len() == cur.len();
            out.push(next.clone());
            if stop {
                return out;
            }
            cur = next;
        }
    }

    /// Jacobi defect for a triple of vectors.
    pub fn jacobi(&self, a: &[Q], b: &[Q], c: &[Q]) -> Vec<Q> {
        let t1 = self.bracket_vec(a, &self.bracket_vec(b, c));
        let t2 = self.bracket_vec(b, &self.bracket_vec(c, a));
        let t3 = self.bracket_vec(c, &self.bracket_vec(a, b));
        t1.iter()
            .zip(&t2)
            .zip(&t3)
            .map(|((x, y), z)| x + y + z)
            .collect()
    }
}

/// `sum c_j Y_j` as text, e.g. `Y4 - 2*s*Y1`; the entry at `lead` comes first.
pub fn format_combination(coeffs: &[Expr], lead: Option<usize>) -> String {
    let mut order: Vec<usize> = (0..coeffs.len()).collect();
    if let Some(l) = lead {
        order.retain(|&i| i != l);
        order.insert(0, l);
    }
    let mut out = String::new();
    for i in order {
        let c = coeffs[i].normalize();
        if c.is_zero_literal() {
            continue;
        }
        let text = c.to_string();
        let single = c.terms().len() == 1;
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) if single => (true, rest.to_string()),
            _ => (false, text),
        };
        let factor = if !single {
            format!("({body})*")
        } else if body == "1" {
            String::new()
        } else {
            format!("{body}*")
        };
        let sep = match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        out.push_str(&format!("{sep}{factor}Y{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_vector(v: &[Q]) -> String {
    let coeffs: Vec<Expr> = v.iter().map(|q| Expr::rat(q.clone())).collect();
    format_combination(&coeffs, None)
}
