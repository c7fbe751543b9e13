use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::poly::{canon, term_expr, Mono, Poly};
use super::{Expr, ExprError, Symbol, Q};

/// Simultaneous substitution map: symbol or kernel -> replacement.
pub type Bindings = BTreeMap<Expr, Expr>;

pub(crate) fn contains(e: &Expr, k: &Expr) -> bool {
    if e == k {
        return true;
    }
    match e {
        Expr::Num(_) | Expr::Sym(_) => false,
        Expr::Add(v) | Expr::Mul(v) | Expr::Apply(_, v) => v.iter().any(|t| contains(t, k)),
        Expr::Pow(b, _) | Expr::Exp(b) | Expr::Log(b) => contains(b, k),
    }
}

pub(crate) fn free_symbols(e: &Expr, out: &mut BTreeSet<Symbol>) {
    match e {
        Expr::Num(_) => {}
        Expr::Sym(s) => {
            out.insert(s.clone());
        }
        Expr::Add(v) | Expr::Mul(v) | Expr::Apply(_, v) => {
            v.iter().for_each(|t| free_symbols(t, out))
        }
        Expr::Pow(b, _) | Expr::Exp(b) | Expr::Log(b) => free_symbols(b, out),
    }
}

pub(crate) fn diff(e: &Expr, v: &Symbol) -> Expr {
    diff_poly(&Poly::from_expr(e), v).to_expr()
}

fn diff_poly(p: &Poly, v: &Symbol) -> Poly {
    let var = Expr::Sym(v.clone());
    let mut out = Poly::zero();
    for (m, c) in &p.terms {
        for (i, (a, k)) in m.iter().enumerate() {
            if !contains(a, &var) {
                continue;
            }
            let da = diff_atom(a, v);
            if da.is_zero() {
                continue;
            }
            let mut rest: Mono = Vec::with_capacity(m.len());
            for (j, (b, kb)) in m.iter().enumerate() {
                if j == i {
                    if *k != 1 {
                        rest.push((b.clone(), k - 1));
                    }
                } else {
                    rest.push((b.clone(), *kb));
                }
            }
            let mut term = Poly::zero();
            term.add_term(rest, c * Q::from_integer((*k).into()));
            out = out.add(&term.mul(&da));
        }
    }
    out
}

fn diff_atom(a: &Expr, v: &Symbol) -> Poly {
    match a {
        Expr::Sym(s) => {
            if s == v {
                Poly::one()
            } else {
                Poly::zero()
            }
        }
        Expr::Apply(f, args) => {
            let mut out = Poly::zero();
            for (k, arg) in args.iter().enumerate() {
                let d = diff_poly(&Poly::from_expr(arg), v);
                if d.is_zero() {
                    continue;
                }
                let fa = Poly::atom(Expr::Apply(f.derivative(k), args.clone()));
                out = out.add(&fa.mul(&d));
            }
            out
        }
        Expr::Exp(arg) => Poly::atom(a.clone()).mul(&diff_poly(&Poly::from_expr(arg), v)),
        Expr::Log(arg) => {
            let inner = Poly::from_expr(arg);
            diff_poly(&inner, v).mul(&inner.pow(-1))
        }
        // a multi-term base appearing under a negative power
        _ => diff_poly(&Poly::from_expr(a), v),
    }
}

fn subst_tree(e: &Expr, b: &Bindings) -> Expr {
    if let Some(v) = b.get(e) {
        return v.clone();
    }
    match e {
        Expr::Num(_) | Expr::Sym(_) => e.clone(),
        Expr::Add(v) => Expr::Add(v.iter().map(|t| subst_tree(t, b)).collect()),
        Expr::Mul(v) => Expr::Mul(v.iter().map(|t| subst_tree(t, b)).collect()),
        Expr::Apply(f, v) => Expr::Apply(f.clone(), v.iter().map(|t| subst_tree(t, b)).collect()),
        Expr::Pow(x, n) => Expr::Pow(Box::new(subst_tree(x, b)), *n),
        Expr::Exp(x) => Expr::Exp(Box::new(subst_tree(x, b))),
        Expr::Log(x) => Expr::Log(Box::new(subst_tree(x, b))),
    }
}

pub(crate) fn substitute(e: &Expr, bindings: &Bindings) -> Expr {
    if bindings.is_empty() {
        return e.normalize();
    }
    let b: Bindings = bindings
        .iter()
        .map(|(k, v)| (k.normalize(), v.clone()))
        .collect();
    subst_tree(&e.normalize(), &b).normalize()
}

pub(crate) fn substitute_function(e: &Expr, name: &str, params: &[Symbol], body: &Expr) -> Expr {
    let mut cache: HashMap<Vec<u32>, Expr> = HashMap::new();
    fn walk(
        e: &Expr,
        name: &str,
        params: &[Symbol],
        body: &Expr,
        cache: &mut HashMap<Vec<u32>, Expr>,
    ) -> Expr {
        match e {
            Expr::Apply(f, args) if f.name == name && args.len() == params.len() => {
                let args: Vec<Expr> = args
                    .iter()
                    .map(|a| walk(a, name, params, body, cache))
                    .collect();
                let d = cache
                    .entry(f.deriv.clone())
                    .or_insert_with(|| {
                        let mut d = body.clone();
                        for (k, n) in f.deriv.iter().enumerate() {
                            for _ in 0..*n {
                                d = d.diff(&params[k]);
                            }
                        }
                        d
                    })
                    .clone();
                let identity = params
                    .iter()
                    .zip(&args)
                    .all(|(p, a)| matches!(a, Expr::Sym(s) if s == p));
                if identity {
                    return d;
                }
                let b: Bindings = params
                    .iter()
                    .map(|p| Expr::Sym(p.clone()))
                    .zip(args)
                    .collect();
                subst_tree(&d, &b)
            }
            Expr::Num(_) | Expr::Sym(_) => e.clone(),
            Expr::Add(v) => Expr::Add(
                v.iter()
                    .map(|t| walk(t, name, params, body, cache))
                    .collect(),
            ),
            Expr::Mul(v) => Expr::Mul(
                v.iter()
                    .map(|t| walk(t, name, params, body, cache))
                    .collect(),
            ),
            Expr::Apply(f, v) => Expr::Apply(
                f.clone(),
                v.iter()
                    .map(|t| walk(t, name, params, body, cache))
                    .collect(),
            ),
            Expr::Pow(x, n) => Expr::Pow(Box::new(walk(x, name, params, body, cache)), *n),
            Expr::Exp(x) => Expr::Exp(Box::new(walk(x, name, params, body, cache))),
            Expr::Log(x) => Expr::Log(Box::new(walk(x, name, params, body, cache))),
        }
    }
    walk(&e.normalize(), name, params, &body.normalize(), &mut cache).normalize()
}

pub(crate) fn collect(e: &Expr, basis: &[Expr]) -> Result<BTreeMap<Expr, Expr>, ExprError> {
    let basis: Vec<Expr> = basis.iter().map(|b| b.normalize()).collect();
    let set: BTreeSet<&Expr> = basis.iter().collect();
    let p = Poly::from_expr(e);
    let mut groups: BTreeMap<Expr, Poly> = BTreeMap::new();
    for (m, c) in &p.terms {
        let mut key: Mono = Vec::new();
        let mut rest: Mono = Vec::new();
        for (a, k) in m {
            if set.contains(a) {
                if *k < 0 {
                    return Err(ExprError::NotPolynomialInBasis(a.to_string()));
                }
                key.push((a.clone(), *k));
            } else {
                if let Some(b) = basis.iter().find(|b| contains(a, b)) {
                    return Err(ExprError::NotPolynomialInBasis(b.to_string()));
                }
                rest.push((a.clone(), *k));
            }
        }
        let mut coef = Poly::zero();
        coef.add_term(rest, c.clone());
        let k = term_expr(&key, &Q::one());
        let slot = groups.entry(k).or_default();
        *slot = slot.add(&coef);
    }
    Ok(groups
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k, v.to_expr()))
        .collect())
}

pub(crate) fn eval(e: &Expr, values: &BTreeMap<Symbol, Q>) -> Option<Q> {
    match e {
        Expr::Num(c) => Some(c.clone()),
        Expr::Sym(s) => values.get(s).cloned(),
        Expr::Add(v) => v
            .iter()
            .try_fold(Q::zero(), |acc, t| Some(acc + eval(t, values)?)),
        Expr::Mul(v) => v
            .iter()
            .try_fold(Q::one(), |acc, t| Some(acc * eval(t, values)?)),
        Expr::Pow(b, n) => {
            let x = eval(b, values)?;
            if x.is_zero() && *n < 0 {
                return None;
            }
            Some(if *n >= 0 {
                num_traits::pow(x, *n as usize)
            } else {
                num_traits::pow(x.recip(), n.unsigned_abs() as usize)
            })
        }
        Expr::Apply(..) | Expr::Exp(_) | Expr::Log(_) => None,
    }
}

/// Zero test that clears every denominator (negative powers of anything but
/// `exp`) before comparing the numerator against the zero polynomial.
pub fn is_zero(e: &Expr) -> bool {
    let mut p = Poly::from_expr(e);
    for _ in 0..16 {
        if p.is_zero() {
            return true;
        }
        let mut need: BTreeMap<Expr, i64> = BTreeMap::new();
        for m in p.terms.keys() {
            for (a, k) in m {
                if *k < 0 && !matches!(a, Expr::Exp(_)) {
                    let slot = need.entry(a.clone()).or_insert(0);
                    *slot = (*slot).max(-k);
                }
            }
        }
        if need.is_empty() {
            return false;
        }
        let mut out = Poly::zero();
        for (m, c) in &p.terms {
            let mut atoms: BTreeMap<Expr, i64> = m.iter().cloned().collect();
            for (a, k) in &need {
                *atoms.entry(a.clone()).or_insert(0) += k;
            }
            out = out.add(&canon(c.clone(), atoms));
        }
        p = out;
    }
    p.is_zero()
}
