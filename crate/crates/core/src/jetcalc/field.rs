use std::collections::BTreeMap;
use std::fmt;

use crate::symexpr::{Expr, Symbol, SymbolKind};

use super::{coord, JetError};

/// First-order differential operator `sum coeffs[c] * d/dc` on `coords`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct VectorField {
    pub coords: Vec<Symbol>,
    pub coeffs: BTreeMap<Symbol, Expr>,
}

impl VectorField {
    pub fn new(coords: Vec<Symbol>) -> Self {
        VectorField {
            coords,
            coeffs: BTreeMap::new(),
        }
    }

    /// Field on `(t, x, u)`.
    pub fn point(xi: Expr, tau: Expr, phi: Expr) -> Self {
        Self::new(point_coords())
            .with("t", xi)
            .with("x", tau)
            .with("u", phi)
    }

    /// Field on `(t, x, u, E, H)`.
    pub fn equivalence(xi: Expr, tau: Expr, phi: Expr, chi: Expr, eta: Expr) -> Self {
        Self::new(equivalence_coords())
            .with("t", xi)
            .with("x", tau)
            .with("u", phi)
            .with("E", chi)
            .with("H", eta)
    }

    /// Set one coefficient; panics when `name` is not a coordinate.
    pub fn with(mut self, name: &str, c: Expr) -> Self {
        let s = coord(name);
        assert!(
            self.coords.contains(&s),
            "{name} is not a coordinate of this field"
        );
        let c = c.normalize();
        if c.is_zero_literal() {
            self.coeffs.remove(&s);
        } else {
            self.coeffs.insert(s, c);
        }
        self
    }

    pub fn coeff(&self, s: &Symbol) -> Expr {
        self.coeffs.get(s).cloned().unwrap_or_else(Expr::zero)
    }

    pub fn get(&self, name: &str) -> Expr {
        self.coeff(&coord(name))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    /// `Y(f)`.
    pub fn apply(&self, f: &Expr) -> Expr {
        self.coeffs
            .iter()
            .map(|(s, c)| c * &f.diff(s))
            .fold(Expr::zero(), |a, b| a + b)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Expr) -> Expr) -> VectorField {
        let mut out = VectorField::new(self.coords.clone());
        for (s, c) in &self.coeffs {
            let v = f(c).normalize();
            if !v.is_zero_literal() {
                out.coeffs.insert(s.clone(), v);
            }
        }
        out
    }

    pub fn scale(&self, k: &Expr) -> VectorField {
        self.map_coeffs(|c| c * k)
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        let mut coords = self.coords.clone();
        for c in &other.coords {
            if !coords.contains(c) {
                coords.push(c.clone());
            }
        }
        let mut out = VectorField::new(coords);
        for s in out.coords.clone() {
            let v = (self.coeff(&s) + other.coeff(&s)).normalize();
            if !v.is_zero_literal() {
                out.coeffs.insert(s, v);
            }
        }
        out
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        self.add(&other.scale(&Expr::int(-1)))
    }

    /// Lie bracket `[self, other]`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        let mut coords = self.coords.clone();
        for c in &other.coords {
            if !coords.contains(c) {
                coords.push(c.clone());
            }
        }
        let mut out = VectorField::new(coords);
        for s in out.coords.clone() {
            let v = (self.apply(&other.coeff(&s)) - other.apply(&self.coeff(&s))).normalize();
            if !v.is_zero_literal() {
                out.coeffs.insert(s, v);
            }
        }
        out
    }

    /// Same field up to exact equality of every coefficient.
    pub fn same(&self, other: &VectorField) -> bool {
        self.sub(other).is_zero()
    }

    /// Restriction to a sub-list of coordinates.
    pub fn restrict(&self, names: &[&str]) -> VectorField {
        let coords: Vec<Symbol> = names.iter().map(|n| coord(n)).collect();
        let mut out = VectorField::new(coords.clone());
        for s in coords {
            if let Some(c) = self.coeffs.get(&s) {
                out.coeffs.insert(s, c.clone());
            }
        }
        out
    }

    /// Syntactic dependence check. Point coefficients may depend on `t, x, u`;
    /// on an equivalence field `E, H` may also appear in the `E` and `H`
    /// coefficients.
    pub fn check_dependencies(&self) -> Result<(), JetError> {
        let base = ["t", "x", "u"];
        for (s, c) in &self.coeffs {
            let extended = s.name == "E" || s.name == "H";
            for v in c.free_symbols() {
                let ok = match v.kind {
                    SymbolKind::Parameter | SymbolKind::Sign | SymbolKind::Constant => true,
                    SymbolKind::IndependentVar | SymbolKind::DependentVar => {
                        base.contains(&v.name.as_str())
                            || (extended && (v.name == "E" || v.name == "H"))
                    }
                    _ => false,
                };
                if !ok {
                    return Err(JetError::InvalidDependence(format!(
                        "coefficient of d_{} depends on {}",
                        s.name, v.name
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn point_coords() -> Vec<Symbol> {
    ["t", "x", "u"].iter().map(|n| coord(n)).collect()
}

pub fn equivalence_coords() -> Vec<Symbol> {
    ["t", "x", "u", "E", "H"].iter().map(|n| coord(n)).collect()
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.coords {
            let Some(c) = self.coeffs.get(s) else {
                continue;
            };
            let terms = c.terms();
            let text = c.to_string();
            let (neg, body) = if terms.len() == 1 && text.starts_with('-') {
                (true, text[1..].to_string())
            } else {
                (false, text)
            };
            let factor = if terms.len() > 1 {
                format!("({body})*")
            } else if body == "1" {
                String::new()
            } else {
                format!("{body}*")
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            write!(f, "{factor}d_{}", s.name)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
