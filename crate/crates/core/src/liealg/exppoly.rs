use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::symexpr::{qi, Expr, Symbol, Q};

/// `sum q * s^k * exp(lambda * s)` with rational `q`, `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ExpPoly {
    terms: BTreeMap<(Q, u32), Q>,
}

pub fn param_s() -> Symbol {
    Symbol::named("s")
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: Q) -> Self {
        Self::term(q, 0, Q::zero())
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn term(q: Q, k: u32, lambda: Q) -> Self {
        let mut p = Self::zero();
        p.push(q, k, lambda);
        p
    }

    fn push(&mut self, q: Q, k: u32, lambda: Q) {
        if q.is_zero() {
            return;
        }
        let key = (lambda, k);
        let v = self.terms.remove(&key).unwrap_or_else(Q::zero) + q;
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    /// `(q, k, lambda)` triples.
    pub fn terms(&self) -> impl Iterator<Item = (&Q, u32, &Q)> {
        self.terms.iter().map(|((l, k), q)| (q, *k, l))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, r: &Q) -> Self {
        let mut out = Self::zero();
        for ((l, k), q) in &self.terms {
            out.push(q * r, *k, l.clone());
        }
        out
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for ((l, k), q) in &self.terms {
            out.push(q * l, *k, l.clone());
            if *k > 0 {
                out.push(q * qi(*k as i64), k - 1, l.clone());
            }
        }
        out
    }

    pub fn at_zero(&self) -> Q {
        self.terms
            .iter()
            .filter(|((_, k), _)| *k == 0)
            .fold(Q::zero(), |a, (_, q)| a + q)
    }

    /// The value as an expression in `param`.
    pub fn to_expr_in(&self, param: &Expr) -> Expr {
        self.terms
            .iter()
            .map(|((l, k), q)| {
                Expr::rat(q.clone()) * param.pow(*k as i64) * Expr::exp(param.scale(l))
            })
            .fold(Expr::zero(), |a, b| a + b)
    }

    pub fn to_expr(&self) -> Expr {
        self.to_expr_in(&Expr::Sym(param_s()))
    }
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, o: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for ((l, k), q) in &o.terms {
            out.push(q.clone(), *k, l.clone());
        }
        out
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, o: &ExpPoly) -> ExpPoly {
        self + &-o
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &ExpPoly {
    type Output = ExpPoly;
    fn mul(self, o: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for ((l1, k1), q1) in &self.terms {
            for ((l2, k2), q2) in &o.terms {
                out.push(q1 * q2, k1 + k2, l1 + l2);
            }
        }
        out
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}
