use num_traits::{One, Zero};

use crate::jetcalc::VectorField;
use crate::liealg::{basis_with, format_combination, Y4Form};
use crate::symexpr::{Expr, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Zero,
    One,
    /// `+-1`, numbered sign label.
    Sign(u8),
    /// Nonzero free constant.
    Param(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representative {
    pub index: usize,
    pub slots: [Slot; 6],
}

use Slot::{One as I, Param as P, Sign as S, Zero as O};

const TABLE: [[Slot; 6]; 29] = [
    [I, O, O, O, O, O],
    [O, I, O, O, O, O],
    [O, O, I, O, O, O],
    [O, O, O, I, O, O],
    [O, O, O, O, I, O],
    [O, O, O, O, O, I],
    [S(1), I, O, O, O, O],
    [S(1), O, I, O, O, O],
    [S(1), O, O, O, O, I],
    [O, I, I, O, O, O],
    [O, S(1), O, I, O, O],
    [O, S(1), O, O, I, O],
    [O, I, O, O, O, I],
    [O, O, S(1), I, O, O],
    [O, O, S(1), O, I, O],
    [O, O, O, P("alpha1"), I, O],
    [O, O, O, P("alpha2"), O, I],
    [O, O, O, O, P("beta1"), I],
    [S(1), I, I, O, O, O],
    [S(1), I, O, O, O, I],
    [O, S(1), S(2), I, O, O],
    [O, S(1), S(2), O, I, O],
    [O, S(1), O, P("alpha3"), I, O],
    [O, I, O, P("alpha4"), O, I],
    [O, S(1), O, O, P("beta2"), I],
    [O, O, S(1), P("alpha5"), I, O],
    [O, O, O, P("alpha6"), P("beta3"), I],
    [O, S(1), S(2), P("alpha7"), I, O],
    [O, S(1), O, P("alpha8"), P("beta4"), I],
];

pub fn representatives() -> Vec<Representative> {
    TABLE
        .iter()
        .enumerate()
        .map(|(i, s)| Representative {
            index: i + 1,
            slots: *s,
        })
        .collect()
}

pub fn representative(index: usize) -> Representative {
    representatives().swap_remove(index - 1)
}

impl Representative {
    pub fn name(&self) -> String {
        format!("A{}", self.index)
    }

    pub fn matches(&self, v: &[Q]) -> bool {
        self.slots.iter().zip(v).all(|(s, c)| match s {
            Slot::Zero => c.is_zero(),
            Slot::One => c.is_one(),
            Slot::Sign(_) => c.is_one() || (-c.clone()).is_one(),
            Slot::Param(_) => !c.is_zero(),
        })
    }

    /// Symbolic coefficients: `pm1`, `pm2` for signs, parameter names for
    /// free constants.
    pub fn coefficients(&self) -> Vec<Expr> {
        self.slots
            .iter()
            .map(|s| match s {
                Slot::Zero => Expr::zero(),
                Slot::One => Expr::one(),
                Slot::Sign(k) => Expr::sym(&format!("pm{k}")),
                Slot::Param(n) => Expr::sym(n),
            })
            .collect()
    }

    pub fn formula(&self) -> String {
        format_combination(&self.coefficients(), None)
    }

    pub fn field(&self, form: Y4Form) -> VectorField {
        combine(&self.coefficients(), form)
    }

    pub fn params(&self) -> Vec<&'static str> {
        self.slots
            .iter()
            .filter_map(|s| match s {
                Slot::Param(n) => Some(*n),
                _ => None,
            })
            .collect()
    }
}

pub fn combine(coeffs: &[Expr], form: Y4Form) -> VectorField {
    basis_with(form).iter().zip(coeffs).fold(
        VectorField::new(crate::jetcalc::equivalence_coords()),
        |acc, (y, c)| acc.add(&y.scale(c)),
    )
}

pub fn find_representative(v: &[Q]) -> Option<Representative> {
    representatives().into_iter().find(|r| r.matches(v))
}

/// Restriction to `(x, u, E, H)`; `None` when nothing is left.
pub fn project(y: &VectorField) -> Option<VectorField> {
    let z = y.restrict(&["x", "u", "E", "H"]);
    if z.is_zero() {
        None
    } else {
        Some(z)
    }
}
