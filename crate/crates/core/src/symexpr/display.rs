//! Pinned infix grammar: `+ - * / ^`, `exp(..)`, `ln(..)`, function
//! applications with derivative suffixes (`E_xu(x, u)`, `Phi''(ln(u) - x)`).

use std::fmt;

use num_traits::{One, Signed};

use super::poly::Poly;
use super::{Expr, Func};

fn func_name(f: &Func, args: &[Expr]) -> String {
    let order = f.order();
    if order == 0 {
        return f.name.clone();
    }
    if args.len() == 1 {
        return format!("{}{}", f.name, "'".repeat(order as usize));
    }
    let names: Option<Vec<&str>> = args
        .iter()
        .map(|a| match a {
            Expr::Sym(s) if s.name.chars().count() == 1 => Some(s.name.as_str()),
            _ => None,
        })
        .collect();
    let distinct = names.as_ref().map_or(false, |n| {
        let mut v = n.clone();
        v.sort();
        v.dedup();
        v.len() == n.len()
    });
    let mut suffix = String::new();
    for (k, n) in f.deriv.iter().enumerate() {
        for _ in 0..*n {
            match (&names, distinct) {
                (Some(names), true) => suffix.push_str(names[k]),
                _ => suffix.push_str(&(k + 1).to_string()),
            }
        }
    }
    format!("{}_{}", f.name, suffix)
}

fn atom_str(a: &Expr) -> String {
    match a {
        Expr::Sym(s) => s.name.clone(),
        Expr::Exp(x) => format!("exp({})", x),
        Expr::Log(x) => format!("ln({})", x),
        Expr::Apply(f, args) => {
            let inner: Vec<String> = args.iter().map(|a| a.to_string()).collect();
            format!("{}({})", func_name(f, args), inner.join(", "))
        }
        other => format!("({})", other),
    }
}

fn factor_str(a: &Expr, e: i64) -> String {
    if e == 1 {
        atom_str(a)
    } else {
        format!("{}^{}", atom_str(a), e)
    }
}

/// Returns (is_negative, magnitude string) for one canonical term.
fn term_str(m: &[(Expr, i64)], c: &super::Q) -> (bool, String) {
    let neg = c.is_negative();
    let c = c.abs();
    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    let numer = c.numer().clone();
    let denom = c.denom().clone();
    let has_num_factors = m.iter().any(|(_, e)| *e > 0);
    if !numer.is_one() || !has_num_factors {
        num.push(numer.to_string());
    }
    if !denom.is_one() {
        den.push(denom.to_string());
    }
    for (a, e) in m {
        if *e > 0 {
            num.push(factor_str(a, *e));
        } else {
            den.push(factor_str(a, -e));
        }
    }
    let mut s = num.join("*");
    match den.len() {
        0 => {}
        1 => {
            s.push('/');
            s.push_str(&den[0]);
        }
        _ => {
            s.push_str("/(");
            s.push_str(&den.join("*"));
            s.push(')');
        }
    }
    (neg, s)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Poly::from_expr(self);
        if p.is_zero() {
            return f.write_str("0");
        }
        // constant term last
        let ordered = p
            .terms
            .iter()
            .filter(|(m, _)| !m.is_empty())
            .chain(p.terms.iter().filter(|(m, _)| m.is_empty()));
        for (i, (m, c)) in ordered.enumerate() {
            let (neg, s) = term_str(m, c);
            match (i, neg) {
                (0, false) => f.write_str(&s)?,
                (0, true) => write!(f, "-{}", s)?,
                (_, false) => write!(f, " + {}", s)?,
                (_, true) => write!(f, " - {}", s)?,
            }
        }
        Ok(())
    }
}
