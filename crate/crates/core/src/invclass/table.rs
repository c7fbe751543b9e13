use crate::detsys::verify_generator_for;
use crate::jetcalc::VectorField;
use crate::liealg::Y4Form;
use crate::optsys::{project, representative};
use crate::symexpr::{Expr, Symbol, SymbolKind};

use super::{classify_coordinates, invariants_of, reconstruct_equation, InvError, Reconstruction};

/// Optimal-system members projecting onto each `Z_i`, first one canonical.
const SOURCES: [&[usize]; 23] = [
    &[2, 7],
    &[3, 8],
    &[4],
    &[5],
    &[6, 9],
    &[10, 19],
    &[11],
    &[12],
    &[13, 20],
    &[14],
    &[15],
    &[16],
    &[17],
    &[18],
    &[21],
    &[22],
    &[23],
    &[24],
    &[25],
    &[26],
    &[27],
    &[28],
    &[29],
];

pub fn z_sources(i: usize) -> &'static [usize] {
    SOURCES[i - 1]
}

pub fn z_field(i: usize, form: Y4Form) -> VectorField {
    project(&representative(z_sources(i)[0]).field(form)).expect("nonzero projection")
}

/// The `(t, x, u)` part of `A_i`: a point symmetry of every equation in the
/// family built from its projection.
pub fn additional_operator(i: usize, form: Y4Form) -> VectorField {
    representative(i).field(form).restrict(&["t", "x", "u"])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regime {
    /// Parameter values making the listed coefficients vanish.
    pub bindings: Vec<(Symbol, Expr)>,
    /// Labels of the vanishing coefficients (`x`, `H`, `x:rate`, ...).
    pub vanished: Vec<String>,
}

impl Regime {
    pub fn generic() -> Self {
        Regime {
            bindings: vec![],
            vanished: vec![],
        }
    }

    pub fn apply(&self, e: &Expr) -> Expr {
        self.bindings
            .iter()
            .fold(e.clone(), |acc, (s, v)| acc.subs(&s.expr(), v))
            .normalize()
    }

    pub fn apply_field(&self, y: &VectorField) -> VectorField {
        y.map_coeffs(|c| self.apply(c))
    }

    pub fn label(&self) -> String {
        if self.vanished.is_empty() {
            "generic".to_string()
        } else {
            self.bindings
                .iter()
                .map(|(s, v)| format!("{s} = {v}"))
                .collect::<Vec<_>>()
                .join(", ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationEntry {
    pub z: usize,
    pub regime: Regime,
    pub field: VectorField,
    pub lambda: Expr,
    pub e_form: Expr,
    pub h_form: Expr,
    /// One operator per source `A_i`, in source order.
    pub operators: Vec<VectorField>,
    /// Whether each operator leaves the family invariant.
    pub verified: Vec<bool>,
    pub time_translation: bool,
}

impl ClassificationEntry {
    pub fn all_verified(&self) -> bool {
        self.time_translation && self.verified.iter().all(|v| *v)
    }
}

/// Rate and offset of each coefficient: `a = rate * zeta + offset`.
fn parts(z: &VectorField) -> Vec<Expr> {
    let mut out = vec![];
    for c in super::PROJECTED {
        let a = z.get(c);
        let zeta = Symbol::named(c);
        let rate = a.diff(&zeta).normalize();
        out.push((&a - &rate * &zeta.expr()).normalize());
        out.push(rate);
    }
    out
}

fn part_label(generic: &[Expr], k: usize) -> String {
    let c = super::PROJECTED[k / 2];
    let (offset, rate) = (&generic[k - k % 2], &generic[k - k % 2 + 1]);
    if offset.is_zero() || rate.is_zero() {
        c.to_string()
    } else if k % 2 == 0 {
        format!("{c}:offset")
    } else {
        format!("{c}:rate")
    }
}

/// A parameter value making `q` vanish, when one is admissible.
fn vanishing_binding(q: &Expr) -> Option<(Symbol, Expr)> {
    if q.monomials().len() < 2 {
        return None;
    }
    let mut syms: Vec<Symbol> = q
        .free_symbols()
        .into_iter()
        .filter(|s| matches!(s.kind, SymbolKind::Parameter | SymbolKind::Sign))
        .collect();
    syms.sort_by_key(|s| (s.kind != SymbolKind::Parameter, s.name.clone()));
    for s in syms {
        let k = q.diff(&s).normalize();
        if k.is_zero() || k.contains_symbol(&s) {
            continue;
        }
        let v = (-(q - &k * &s.expr()) / &k).normalize();
        let admissible = match s.kind {
            SymbolKind::Sign => v
                .as_rational()
                .is_some_and(|r| r.clone() * r == crate::symexpr::qi(1)),
            _ => !v.is_zero(),
        };
        if admissible {
            return Some((s, v));
        }
    }
    None
}

/// Generic regime first, then every consistent set of vanishing coefficients.
pub fn regimes(z: &VectorField) -> Vec<Regime> {
    let generic = parts(z);
    let candidates: Vec<usize> = (0..generic.len())
        .filter(|&k| !generic[k].is_zero() && vanishing_binding(&generic[k]).is_some())
        .collect();
    let n = candidates.len();
    let mut subsets: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|m| {
            (0..n)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| candidates[i])
                .collect()
        })
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    let mut out = vec![];
    'subset: for s in subsets {
        let mut regime = Regime::generic();
        // a sign label that does not cancel a coefficient takes its other value
        for k in candidates.iter().filter(|k| !s.contains(k)) {
            if let Some((sym, v)) = vanishing_binding(&generic[*k]) {
                if sym.kind == SymbolKind::Sign {
                    regime.bindings.push((sym, (-v).normalize()));
                }
            }
        }
        for &k in &s {
            let q = &parts(&regime.apply_field(z))[k];
            let Some(b) = vanishing_binding(q) else {
                continue 'subset;
            };
            regime.bindings.push(b);
            regime.vanished.push(part_label(&generic, k));
        }
        let now = parts(&regime.apply_field(z));
        if candidates
            .iter()
            .all(|k| s.contains(k) || !now[*k].is_zero())
        {
            out.push(regime);
        }
    }
    out
}

fn entry(
    i: usize,
    z: &VectorField,
    regime: Regime,
    form: Y4Form,
) -> Result<Option<ClassificationEntry>, InvError> {
    let field = regime.apply_field(z);
    let inv = invariants_of(&field)?;
    let Reconstruction::Family {
        e_form,
        h_form,
        lambda,
    } = reconstruct_equation(&inv)
    else {
        return Ok(None);
    };
    let operators: Vec<VectorField> = z_sources(i)
        .iter()
        .map(|a| regime.apply_field(&additional_operator(*a, form)))
        .collect();
    let verified = operators
        .iter()
        .map(|x| verify_generator_for(x, &e_form, &h_form).is_valid())
        .collect();
    let dt = VectorField::point(Expr::one(), Expr::zero(), Expr::zero());
    let time_translation = verify_generator_for(&dt, &e_form, &h_form).is_valid();
    Ok(Some(ClassificationEntry {
        z: i,
        regime,
        field,
        lambda,
        e_form,
        h_form,
        operators,
        verified,
        time_translation,
    }))
}

/// Invariant families of every projected generator, one entry per regime.
pub fn classify_all(form: Y4Form) -> Result<Vec<ClassificationEntry>, InvError> {
    let mut out = vec![];
    for i in 1..=SOURCES.len() {
        let z = z_field(i, form);
        classify_coordinates(&z)?;
        for r in regimes(&z) {
            if let Some(e) = entry(i, &z, r, form)? {
                out.push(e);
            }
        }
    }
    Ok(out)
}
