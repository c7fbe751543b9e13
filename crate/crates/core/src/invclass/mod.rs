//! Invariants of projected generators, reconstruction of invariant equation
//! families, and the classification table.

mod table;
#[cfg(test)]
mod tests;

use thiserror::Error;

use crate::jetcalc::VectorField;
use crate::symexpr::{Expr, Symbol, SymbolKind};

pub use table::{
    additional_operator, classify_all, z_field, z_sources, ClassificationEntry, Regime,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvError {
    #[error("coefficient of d_{0} is not constant, linear or affine in {0}: {1}")]
    UnsupportedCoefficientShape(String, String),
    #[error("field vanishes on (x, u, E, H)")]
    ZeroField,
}

/// Characteristic equation `d zeta / ds = coefficient` for one coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Zero,
    Translation(Expr),
    Scaling(Expr),
    /// `rate * zeta + offset`, both nonzero.
    Affine(Expr, Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordOde {
    pub coord: String,
    pub shape: Shape,
}

pub const PROJECTED: [&str; 4] = ["x", "u", "E", "H"];

fn is_coordinate(s: &Symbol) -> bool {
    matches!(
        s.kind,
        SymbolKind::IndependentVar | SymbolKind::DependentVar
    )
}

fn free_of_coordinates(e: &Expr) -> bool {
    !e.free_symbols().iter().any(is_coordinate)
}

pub fn classify_coordinates(z: &VectorField) -> Result<Vec<CoordOde>, InvError> {
    PROJECTED
        .iter()
        .map(|c| {
            let a = z.get(c);
            let zeta = Symbol::named(c);
            let shape = if a.is_zero() {
                Shape::Zero
            } else if free_of_coordinates(&a) {
                Shape::Translation(a.normalize())
            } else {
                let rate = a.diff(&zeta).normalize();
                let offset = (&a - &rate * &Expr::Sym(zeta.clone())).normalize();
                if !free_of_coordinates(&rate) || !free_of_coordinates(&offset) {
                    return Err(InvError::UnsupportedCoefficientShape(
                        c.to_string(),
                        a.to_string(),
                    ));
                }
                if offset.is_zero() {
                    Shape::Scaling(rate)
                } else {
                    Shape::Affine(rate, offset)
                }
            };
            Ok(CoordOde {
                coord: c.to_string(),
                shape,
            })
        })
        .collect()
}

/// A function `p` with `Z(p) = 1` along one coordinate.
fn potential(ode: &CoordOde) -> Option<Expr> {
    let z = Expr::sym(&ode.coord);
    match &ode.shape {
        Shape::Zero => None,
        Shape::Translation(c) => Some(z / c),
        Shape::Scaling(k) => Some(Expr::ln(z) / k),
        Shape::Affine(k, c) => Some(Expr::ln(k * &z + c) / k),
    }
}

/// Inverse of [`potential`]: the coordinate value with potential `w`.
fn inverse_potential(shape: &Shape, w: &Expr) -> Expr {
    match shape {
        Shape::Zero => w.clone(),
        Shape::Translation(c) => c * w,
        Shape::Scaling(k) => Expr::exp(k * w),
        Shape::Affine(k, c) => (Expr::exp(k * w) - c) / k,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSet {
    pub odes: Vec<CoordOde>,
    pub i1: Expr,
    pub i2: Expr,
    pub i3: Expr,
    /// The invariant in `(x, u)` alone, when there is one.
    pub lambda: Option<Expr>,
}

impl InvariantSet {
    fn ode(&self, c: &str) -> &CoordOde {
        self.odes
            .iter()
            .find(|o| o.coord == c)
            .expect("projected coordinate")
    }

    pub fn all(&self) -> [&Expr; 3] {
        [&self.i1, &self.i2, &self.i3]
    }

    /// Exponentiated forms of the invariants, e.g. `H/E` for `ln(H) - ln(E)`.
    pub fn display(&self) -> [String; 3] {
        self.all().map(|i| exponentiated(i).to_string())
    }
}

/// `exp(i)` when `i` is a combination of logarithms with integer weights,
/// otherwise `i` itself.
fn exponentiated(i: &Expr) -> Expr {
    let mut out = Expr::one();
    for (m, k) in i.monomials() {
        match &m {
            Expr::Log(a) if k.is_integer() => {
                out = out * a.pow(k.to_integer().try_into().unwrap_or(1));
            }
            _ => return i.clone(),
        }
    }
    out
}

/// Reference coordinate for the E and H invariants: the first of `order`
/// with a nonzero coefficient.
fn reference<'a>(odes: &'a [CoordOde], order: [&str; 2]) -> Option<&'a CoordOde> {
    order
        .iter()
        .filter_map(|c| {
            odes.iter()
                .find(|o| o.coord == *c && o.shape != Shape::Zero)
        })
        .next()
}

pub fn invariants_of(z: &VectorField) -> Result<InvariantSet, InvError> {
    let odes = classify_coordinates(z)?;
    if odes.iter().all(|o| o.shape == Shape::Zero) {
        return Err(InvError::ZeroField);
    }
    let get = |c: &str| odes.iter().find(|o| o.coord == c).unwrap();
    let (x, u) = (get("x"), get("u"));
    let lambda = match (&x.shape, &u.shape) {
        (Shape::Zero, Shape::Zero) => None,
        (Shape::Zero, _) => Some(Expr::sym("x")),
        (_, Shape::Zero) => Some(Expr::sym("u")),
        _ => Some((potential(u).unwrap() - potential(x).unwrap()).normalize()),
    };
    let e_inv = |c: &str, order: [&str; 2], multiplied: bool| -> Expr {
        let o = get(c);
        let zeta = Expr::sym(c);
        match (potential(o), reference(&odes, order)) {
            (None, _) => zeta,
            (Some(p), Some(r)) => {
                let pr = potential(r).unwrap();
                match (&o.shape, multiplied) {
                    (Shape::Scaling(k), true) => Expr::ln(zeta) - k * &pr,
                    _ => p - pr,
                }
            }
            (Some(_), None) => unreachable!("handled without lambda"),
        }
        .normalize()
    };
    let (i1, i2, i3) = match &lambda {
        Some(l) => (
            l.clone(),
            e_inv("E", ["u", "x"], false),
            e_inv("H", ["x", "u"], true),
        ),
        // x and u both fixed: E and H pair with each other
        None => {
            let third = match (potential(get("E")), potential(get("H"))) {
                (Some(pe), Some(ph)) => (ph - pe).normalize(),
                (None, _) => Expr::sym("E"),
                (_, None) => Expr::sym("H"),
            };
            (Expr::sym("x"), Expr::sym("u"), third)
        }
    };
    Ok(InvariantSet {
        odes,
        i1,
        i2,
        i3,
        lambda,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    Family {
        e_form: Expr,
        h_form: Expr,
        lambda: Expr,
    },
    NoInvariantEquation,
}

pub fn phi(lambda: &Expr) -> Expr {
    Expr::apply("Phi", vec![lambda.clone()])
}

pub fn psi(lambda: &Expr) -> Expr {
    Expr::apply("Psi", vec![lambda.clone()])
}

/// Solve `I2 = Phi(lambda)`, `I3 = Psi(lambda)` for `E` and `H`.
pub fn reconstruct_equation(inv: &InvariantSet) -> Reconstruction {
    let Some(lambda) = inv.lambda.clone() else {
        return Reconstruction::NoInvariantEquation;
    };
    let odes = &inv.odes;
    let ref_e = reference(odes, ["u", "x"])
        .and_then(potential)
        .unwrap_or_else(Expr::zero);
    let ref_h = reference(odes, ["x", "u"])
        .and_then(potential)
        .unwrap_or_else(Expr::zero);
    let e_shape = &inv.ode("E").shape;
    let e_form = match e_shape {
        Shape::Zero => phi(&lambda),
        s => inverse_potential(s, &(phi(&lambda) + &ref_e)),
    };
    let h_form = match &inv.ode("H").shape {
        Shape::Zero => psi(&lambda),
        Shape::Scaling(k) => {
            let shift = (k * &ref_h).normalize();
            if shift.is_zero() {
                psi(&lambda)
            } else {
                Expr::exp(psi(&lambda) + shift)
            }
        }
        s => inverse_potential(s, &(psi(&lambda) + &ref_h)),
    };
    Reconstruction::Family {
        e_form: e_form.normalize(),
        h_form: h_form.normalize(),
        lambda,
    }
}

/// `Z(F) - Z^c` evaluated on `c = F`: zero when the graph `c = F(x, u)` is
/// invariant.
pub fn annihilation_defect(z: &VectorField, coord: &str, form: &Expr) -> Expr {
    let flow =
        z.get("x") * form.diff(&Symbol::named("x")) + z.get("u") * form.diff(&Symbol::named("u"));
    let target = z.get(coord).subs(&Expr::sym(coord), form);
    (flow - target).normalize()
}

fn split_coordinate_part(m: &Expr) -> (Expr, Expr) {
    let factors = match m {
        Expr::Mul(fs) => fs.clone(),
        other => vec![other.clone()],
    };
    let (dep, free): (Vec<Expr>, Vec<Expr>) =
        factors.into_iter().partition(|f| !free_of_coordinates(f));
    (dep.into_iter().product(), free.into_iter().product())
}

/// Coordinate-dependent terms grouped with their coordinate-free coefficients.
fn coordinate_groups(e: &Expr) -> std::collections::BTreeMap<Expr, Expr> {
    let mut groups: std::collections::BTreeMap<Expr, Expr> = Default::default();
    for (m, q) in e.monomials() {
        let (dep, free) = split_coordinate_part(&m);
        let c = free.scale(&q);
        let slot = groups.entry(dep).or_insert_with(Expr::zero);
        *slot = (&*slot + &c).normalize();
    }
    groups.retain(|_, c| !c.is_zero());
    groups
}

/// Representative of `a * lambda + b` over coordinate-free `a != 0`, `b`:
/// constant part dropped, leading coefficient scaled to one.
pub fn affine_normal(lambda: &Expr) -> Expr {
    let mut groups = coordinate_groups(lambda);
    groups.remove(&Expr::one());
    let Some(lead) = groups.values().next().cloned() else {
        return Expr::zero();
    };
    groups
        .iter()
        .map(|(d, c)| (d * c / &lead).normalize())
        .sum::<Expr>()
        .normalize()
}

/// `a = k * b` for some coordinate-free `k != 0`.
pub fn proportional(a: &VectorField, b: &VectorField) -> bool {
    let names: Vec<String> = a
        .coords
        .iter()
        .chain(&b.coords)
        .map(|s| s.name.clone())
        .collect();
    let Some(first) = names.iter().find(|n| !b.get(n).is_zero()) else {
        return a.is_zero();
    };
    // a = k b with k free of coordinates, checked without dividing
    let (af, bf) = (a.get(first), b.get(first));
    let constant_ratio = ["t", "x", "u", "E", "H"].iter().all(|c| {
        let s = Symbol::named(c);
        (&af.diff(&s) * &bf - &af * &bf.diff(&s)).is_zero()
    });
    !af.is_zero()
        && constant_ratio
        && names
            .iter()
            .all(|n| (&a.get(n) * &bf).is_equal(&(&af * &b.get(n))))
}
