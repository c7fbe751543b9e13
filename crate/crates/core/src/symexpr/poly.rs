//! Sparse polynomial view used to canonicalize expression trees.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Expr, SymbolKind, Q};

pub(crate) type Mono = Vec<(Expr, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Poly {
    pub terms: BTreeMap<Mono, Q>,
}

fn pow_q(c: &Q, n: i64) -> Q {
    if n >= 0 {
        num_traits::pow(c.clone(), n as usize)
    } else {
        num_traits::pow(c.recip(), n.unsigned_abs() as usize)
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn atom(a: Expr) -> Poly {
        let mut p = Poly::zero();
        p.add_term(vec![(a, 1)], Q::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Q) -> Poly {
        if r.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut atoms: BTreeMap<Expr, i64> = BTreeMap::new();
                for (a, e) in ma.iter().chain(mb.iter()) {
                    *atoms.entry(a.clone()).or_insert(0) += e;
                }
                let prod = canon(ca * cb, atoms);
                for (m, c) in prod.terms {
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: i64) -> Poly {
        if n == 0 {
            return Poly::one();
        }
        if n > 0 {
            let mut acc = self.clone();
            for _ in 1..n {
                acc = acc.mul(self);
            }
            return acc;
        }
        assert!(!self.is_zero(), "division by zero in expression");
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let atoms: BTreeMap<Expr, i64> = m.iter().map(|(a, e)| (a.clone(), e * n)).collect();
            return canon(pow_q(c, n), atoms);
        }
        let lead = self.terms.values().next().unwrap().clone();
        let base = self.scale(&lead.recip()).to_expr();
        let mut atoms = BTreeMap::new();
        atoms.insert(base, n);
        canon(pow_q(&lead, n), atoms)
    }

    pub fn from_expr(e: &Expr) -> Poly {
        match e {
            Expr::Num(c) => Poly::constant(c.clone()),
            Expr::Sym(_) => Poly::atom(e.clone()),
            Expr::Add(v) => v
                .iter()
                .fold(Poly::zero(), |acc, t| acc.add(&Poly::from_expr(t))),
            Expr::Mul(v) => v
                .iter()
                .fold(Poly::one(), |acc, t| acc.mul(&Poly::from_expr(t))),
            Expr::Pow(b, n) => Poly::from_expr(b).pow(*n),
            Expr::Apply(f, args) => Poly::atom(Expr::Apply(
                f.clone(),
                args.iter().map(|a| a.normalize()).collect(),
            )),
            Expr::Exp(a) => exp_of(&Poly::from_expr(a)),
            Expr::Log(a) => log_of(&Poly::from_expr(a)),
        }
    }

    pub fn to_expr(&self) -> Expr {
        let mut terms: Vec<Expr> = self.terms.iter().map(|(m, c)| term_expr(m, c)).collect();
        match terms.len() {
            0 => Expr::zero(),
            1 => terms.pop().unwrap(),
            _ => Expr::Add(terms),
        }
    }
}

pub(crate) fn term_expr(m: &Mono, c: &Q) -> Expr {
    let mut factors: Vec<Expr> = m
        .iter()
        .map(|(a, e)| {
            if *e == 1 {
                a.clone()
            } else {
                Expr::Pow(Box::new(a.clone()), *e)
            }
        })
        .collect();
    if factors.is_empty() {
        return Expr::Num(c.clone());
    }
    if c.is_one() {
        if factors.len() == 1 {
            return factors.pop().unwrap();
        }
        return Expr::Mul(factors);
    }
    let mut v = vec![Expr::Num(c.clone())];
    v.extend(factors);
    Expr::Mul(v)
}

/// Canonical product `coef * prod(atom^exp)`: sign labels reduced mod 2,
/// exponentials merged into one, positive powers of sums expanded.
pub(crate) fn canon(coef: Q, atoms: BTreeMap<Expr, i64>) -> Poly {
    if coef.is_zero() {
        return Poly::zero();
    }
    let mut exp_arg = Poly::zero();
    let mut has_exp = false;
    let mut expand: Vec<(Expr, i64)> = Vec::new();
    let mut mono: Mono = Vec::new();
    for (a, e) in atoms {
        let e = match &a {
            Expr::Sym(s) if s.kind == SymbolKind::Sign => e.rem_euclid(2),
            _ => e,
        };
        if e == 0 {
            continue;
        }
        match &a {
            Expr::Exp(arg) => {
                has_exp = true;
                exp_arg = exp_arg.add(&Poly::from_expr(arg).scale(&Q::from_integer(e.into())));
            }
            Expr::Add(_) if e > 0 => expand.push((a, e)),
            _ => mono.push((a, e)),
        }
    }
    let mut extra = None;
    if has_exp {
        let ex = exp_of(&exp_arg);
        let single_atom = ex.terms.len() == 1 && {
            let (m, c) = ex.terms.iter().next().unwrap();
            c.is_one() && m.len() == 1 && matches!(m[0], (Expr::Exp(_), 1))
        };
        if single_atom {
            let (m, _) = ex.terms.into_iter().next().unwrap();
            mono.extend(m);
            mono.sort();
        } else {
            extra = Some(ex);
        }
    }
    let mut out = Poly::zero();
    out.add_term(mono, coef);
    for (b, e) in expand {
        out = out.mul(&Poly::from_expr(&b).pow(e));
    }
    if let Some(ex) = extra {
        out = out.mul(&ex);
    }
    out
}

pub(crate) fn exp_of(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::one();
    }
    if p.terms.len() == 1 {
        let (m, c) = p.terms.iter().next().unwrap();
        if c.is_one() && m.len() == 1 && m[0].1 == 1 {
            if let Expr::Log(inner) = &m[0].0 {
                return Poly::from_expr(inner);
            }
        }
    }
    Poly::atom(Expr::Exp(Box::new(p.to_expr())))
}

pub(crate) fn log_of(p: &Poly) -> Poly {
    if *p == Poly::one() {
        return Poly::zero();
    }
    if p.terms.len() == 1 {
        let (m, c) = p.terms.iter().next().unwrap();
        if c.is_one() && m.len() == 1 && m[0].1 == 1 {
            if let Expr::Exp(inner) = &m[0].0 {
                return Poly::from_expr(inner);
            }
        }
    }
    Poly::atom(Expr::Log(Box::new(p.to_expr())))
}
