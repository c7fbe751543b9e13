use std::collections::BTreeMap;

use super::{basis, param_s, LieError};
use crate::detsys::equation_rhs;
use crate::jetcalc::{coord, jet, VectorField};
use crate::symexpr::{Bindings, Expr, Func};

/// Coordinate map `(t, x, u, E, H) -> ...` depending on the parameter `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flow {
    pub name: String,
    pub map: BTreeMap<String, Expr>,
}

const COORDS: [&str; 5] = ["t", "x", "u", "E", "H"];

fn s() -> Expr {
    Expr::Sym(param_s())
}

impl Flow {
    pub fn image(&self, c: &str) -> Expr {
        self.map.get(c).cloned().unwrap_or_else(|| Expr::sym(c))
    }

    /// The map at a given parameter value.
    pub fn at(&self, value: &Expr) -> BTreeMap<String, Expr> {
        self.map
            .iter()
            .map(|(k, v)| (k.clone(), v.subs(&s(), value)))
            .collect()
    }

    pub fn is_identity_at_zero(&self) -> bool {
        self.at(&Expr::zero())
            .iter()
            .all(|(k, v)| v.is_equal(&Expr::sym(k)))
    }

    /// `G(s) o G(r) = G(s + r)`, checked symbolically.
    pub fn group_law_holds(&self) -> bool {
        let r = Expr::sym("r");
        let inner: Bindings = self
            .at(&r)
            .into_iter()
            .map(|(k, v)| (Expr::sym(&k), v))
            .collect();
        COORDS.iter().all(|c| {
            let lhs = self.image(c).substitute(&inner);
            let rhs = self.image(c).subs(&s(), &(s() + &r));
            lhs.is_equal(&rhs)
        })
    }

    /// Infinitesimal generator `d/ds` at `s = 0`.
    pub fn generator(&self) -> VectorField {
        let mut y = VectorField::new(crate::jetcalc::equivalence_coords());
        for c in COORDS {
            let d = self.image(c).diff(&param_s()).subs(&s(), &Expr::zero());
            y = y.with(c, d);
        }
        y
    }
}

/// Closed-form flow of a field whose coefficients are constants or
/// `k * coordinate`.
pub fn flow_of(y: &VectorField, name: &str) -> Result<Flow, LieError> {
    let mut map = BTreeMap::new();
    for c in COORDS {
        let z = Expr::sym(c);
        let a = y.get(c);
        let img = if a.is_zero() {
            z.clone()
        } else if a.as_rational().is_some() {
            &z + &a * s()
        } else if let Some(k) = (&a / &z).as_rational() {
            z.clone() * Expr::exp(s().scale(&k))
        } else {
            return Err(LieError::UnsupportedCoefficientShape(
                c.to_string(),
                a.to_string(),
            ));
        };
        map.insert(c.to_string(), img);
    }
    Ok(Flow {
        name: name.to_string(),
        map,
    })
}

/// Flow `G_i` of the canonical generator `Y_i` (`i` from 0).
pub fn flow(i: usize) -> Flow {
    flow_of(&basis()[i], &format!("G{}", i + 1)).expect("canonical generators have closed flows")
}

/// The four discrete reflections.
pub fn reflections() -> Vec<Flow> {
    COORDS
        .iter()
        .filter(|c| **c != "x")
        .map(|c| {
            let map = COORDS
                .iter()
                .map(|k| {
                    let v = if k == c { -Expr::sym(k) } else { Expr::sym(k) };
                    (k.to_string(), v)
                })
                .collect();
            Flow {
                name: format!("{c} -> -{c}"),
                map,
            }
        })
        .collect()
}

/// New solution `u` in terms of a solution `f(t, x)` of the original equation,
/// with the conductivity and source it solves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRule {
    pub u: Expr,
    pub e_bar: Expr,
    pub h_bar: Expr,
}

fn f_of(a: Expr, b: Expr) -> Expr {
    Expr::apply("f", vec![a, b])
}

/// Image of the graph of `f` under `G_i(-s)`.
pub fn transform_solution(i: usize, value: &Expr) -> SolutionRule {
    let g = flow(i);
    let neg = -value.clone();
    let fwd = |c: &str, arg: Expr| {
        let mut b = Bindings::new();
        b.insert(Expr::sym(c), arg);
        b.insert(s(), value.clone());
        g.image(c).substitute(&b)
    };
    let back = |c: &str, arg: Expr| {
        let mut b = Bindings::new();
        b.insert(Expr::sym(c), arg);
        b.insert(s(), neg.clone());
        g.image(c).substitute(&b)
    };
    let f = f_of(fwd("t", Expr::sym("t")), fwd("x", Expr::sym("x")));
    let args = vec![fwd("x", Expr::sym("x")), fwd("u", Expr::sym("u"))];
    SolutionRule {
        u: back("u", f),
        e_bar: back("E", Expr::apply("E", args.clone())),
        h_bar: back("H", Expr::apply("H", args)),
    }
}

fn collect_applies(e: &Expr, f: &Func, out: &mut Vec<Expr>) {
    match e {
        Expr::Apply(g, args) => {
            if g == f && !out.contains(e) {
                out.push(e.clone());
            }
            for a in args {
                collect_applies(a, f, out);
            }
        }
        Expr::Add(v) | Expr::Mul(v) => v.iter().for_each(|a| collect_applies(a, f, out)),
        Expr::Pow(b, _) | Expr::Exp(b) | Expr::Log(b) => collect_applies(b, f, out),
        Expr::Num(_) | Expr::Sym(_) => {}
    }
}

/// Residual of the rule in the new equation after using the original
/// equation for `f_t`; zero when the rule is correct.
pub fn verify_rule(rule: &SolutionRule) -> Expr {
    let u = &rule.u;
    let at_u = |e: &Expr| e.subs(&Expr::sym("u"), u);
    let ux = u.diff(&coord("x"));
    let flux = at_u(&rule.e_bar) * &ux;
    let residual = u.diff(&coord("t")) - flux.diff(&coord("x")) - at_u(&rule.h_bar);
    let rhs = equation_rhs(
        &Expr::apply("E", vec![Expr::sym("x"), Expr::sym("u")]),
        &Expr::apply("H", vec![Expr::sym("x"), Expr::sym("u")]),
    );
    let ft = Func {
        name: "f".into(),
        deriv: vec![1, 0],
    };
    let mut atoms = Vec::new();
    collect_applies(&residual, &ft, &mut atoms);
    let mut b = Bindings::new();
    for atom in atoms {
        let Expr::Apply(_, args) = &atom else {
            unreachable!()
        };
        let (a, x) = (args[0].clone(), args[1].clone());
        let fx = Expr::Apply(
            Func {
                name: "f".into(),
                deriv: vec![0, 1],
            },
            args.clone(),
        );
        let fxx = Expr::Apply(
            Func {
                name: "f".into(),
                deriv: vec![0, 2],
            },
            args.clone(),
        );
        let mut sb = Bindings::new();
        sb.insert(Expr::sym("x"), x.clone());
        sb.insert(Expr::sym("u"), f_of(a, x));
        sb.insert(jet("u_x"), fx);
        sb.insert(jet("u_xx"), fxx);
        b.insert(atom, rhs.substitute(&sb));
    }
    residual.substitute(&b).normalize()
}
