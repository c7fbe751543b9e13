//! Exact symbolic expressions over the rationals.
//!
//! Every formula in the crate is an [`Expr`]. Expressions are immutable trees;
//! [`Expr::normalize`] maps a tree to its canonical shape (a flattened sum of
//! products of integer powers of atoms), and every arithmetic operator returns
//! a canonical tree. Atoms are symbols, function applications, `exp`, `ln`, and
//! multi-term sums raised to negative powers.

mod display;
mod ops;
mod parse;
mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use ops::{is_zero, Bindings};
pub use parse::{parse, ParseError};

/// Exact rational scalar used throughout.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Parameter,
    /// A sign label `±`; squares to one.
    Sign,
    Constant,
    IndependentVar,
    DependentVar,
    JetVar,
    FormalDerivative,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub name: String,
}

impl Symbol {
    pub fn new(kind: SymbolKind, name: impl Into<String>) -> Self {
        Symbol {
            kind,
            name: name.into(),
        }
    }

    /// Symbol with the kind implied by its name (the convention of the text grammar).
    pub fn named(name: &str) -> Self {
        let kind = match name {
            "t" | "x" => SymbolKind::IndependentVar,
            "u" | "E" | "H" => SymbolKind::DependentVar,
            _ if name.starts_with("pm") => SymbolKind::Sign,
            _ if name.starts_with("u_") => SymbolKind::JetVar,
            _ if name.starts_with("E_") || name.starts_with("H_") => SymbolKind::FormalDerivative,
            _ => SymbolKind::Parameter,
        };
        Symbol::new(kind, name)
    }

    pub fn expr(&self) -> Expr {
        Expr::Sym(self.clone())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A function symbol together with the partial-derivative multi-index applied
/// to it. `deriv[k]` counts derivatives in the k-th argument, so mixed partials
/// are flat: `E_xu` and `E_ux` are the same object.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Func {
    pub name: String,
    pub deriv: Vec<u32>,
}

impl Func {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Func {
            name: name.into(),
            deriv: vec![0; arity],
        }
    }

    pub fn order(&self) -> u32 {
        self.deriv.iter().sum()
    }

    pub fn derivative(&self, arg: usize) -> Func {
        let mut f = self.clone();
        f.deriv[arg] += 1;
        f
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Num(Q),
    Sym(Symbol),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, i64),
    Apply(Func, Vec<Expr>),
    Exp(Box<Expr>),
    Log(Box<Expr>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("expression is not polynomial in the basis kernel `{0}`")]
    NotPolynomialInBasis(String),
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Num(qi(0))
    }

    pub fn one() -> Expr {
        Expr::Num(qi(1))
    }

    pub fn int(n: i64) -> Expr {
        Expr::Num(qi(n))
    }

    pub fn rat(r: Q) -> Expr {
        Expr::Num(r)
    }

    pub fn sym(name: &str) -> Expr {
        Expr::Sym(Symbol::named(name))
    }

    pub fn apply(name: &str, args: Vec<Expr>) -> Expr {
        let f = Func::new(name, args.len());
        Expr::Apply(f, args).normalize()
    }

    pub fn exp(arg: Expr) -> Expr {
        Expr::Exp(Box::new(arg)).normalize()
    }

    pub fn ln(arg: Expr) -> Expr {
        Expr::Log(Box::new(arg)).normalize()
    }

    pub fn pow(&self, n: i64) -> Expr {
        Expr::Pow(Box::new(self.clone()), n).normalize()
    }

    pub fn recip(&self) -> Expr {
        self.pow(-1)
    }

    pub fn scale(&self, r: &Q) -> Expr {
        self * &Expr::Num(r.clone())
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Num(r) if r == &qi(0))
    }

    pub fn as_rational(&self) -> Option<Q> {
        match self.normalize() {
            Expr::Num(r) => Some(r),
            _ => None,
        }
    }

    /// Canonical form. Idempotent.
    pub fn normalize(&self) -> Expr {
        poly::Poly::from_expr(self).to_expr()
    }

    pub fn diff(&self, v: &Symbol) -> Expr {
        ops::diff(self, v)
    }

    /// Simultaneous substitution of symbols or opaque kernels, followed by
    /// normalization. Keys absent from the expression are ignored.
    pub fn substitute(&self, bindings: &Bindings) -> Expr {
        ops::substitute(self, bindings)
    }

    pub fn subs(&self, key: &Expr, value: &Expr) -> Expr {
        let mut b = Bindings::new();
        b.insert(key.clone(), value.clone());
        self.substitute(&b)
    }

    /// Replace every application of the function `name` (and of its formal
    /// derivatives) by the matching derivative of `body`, whose free variables
    /// `params` are bound to the application's arguments.
    pub fn substitute_function(&self, name: &str, params: &[Symbol], body: &Expr) -> Expr {
        ops::substitute_function(self, name, params, body)
    }

    /// Split into `monomial in basis -> coefficient`.
    pub fn collect(
        &self,
        basis: &[Expr],
    ) -> Result<std::collections::BTreeMap<Expr, Expr>, ExprError> {
        ops::collect(self, basis)
    }

    pub fn free_symbols(&self) -> std::collections::BTreeSet<Symbol> {
        let mut out = std::collections::BTreeSet::new();
        ops::free_symbols(self, &mut out);
        out
    }

    pub fn contains_symbol(&self, s: &Symbol) -> bool {
        ops::contains(self, &Expr::Sym(s.clone()))
    }

    pub fn contains(&self, kernel: &Expr) -> bool {
        ops::contains(self, kernel)
    }

    /// Evaluate at rational values; `None` when an opaque kernel or an
    /// unbound symbol remains, or a denominator vanishes.
    pub fn eval(&self, values: &std::collections::BTreeMap<Symbol, Q>) -> Option<Q> {
        ops::eval(self, values)
    }

    /// Terms of the canonical sum (a single term for non-sums).
    pub fn terms(&self) -> Vec<Expr> {
        match self.normalize() {
            Expr::Add(ts) => ts,
            e if e.is_zero_literal() => vec![],
            e => vec![e],
        }
    }

    /// Canonical terms split as `(monomial, rational coefficient)`.
    pub fn monomials(&self) -> Vec<(Expr, Q)> {
        poly::Poly::from_expr(self)
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    poly::term_expr(m, &Q::from_integer(BigInt::from(1))),
                    c.clone(),
                )
            })
            .collect()
    }

    /// Mathematical zero test, exact for rational functions of symbols with
    /// opaque kernels: denominators are cleared before comparison.
    pub fn is_zero(&self) -> bool {
        ops::is_zero(self)
    }

    pub fn is_equal(&self, other: &Expr) -> bool {
        (self - other).is_zero()
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl From<Q> for Expr {
    fn from(r: Q) -> Self {
        Expr::Num(r)
    }
}

impl From<Symbol> for Expr {
    fn from(s: Symbol) -> Self {
        Expr::Sym(s)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl std::ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let a = poly::Poly::from_expr(self);
                let b = poly::Poly::from_expr(rhs);
                let g: fn(&poly::Poly, &poly::Poly) -> poly::Poly = $f;
                g(&a, &b).to_expr()
            }
        }
        impl std::ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
        impl std::ops::$tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                std::ops::$tr::$m(&self, rhs)
            }
        }
        impl std::ops::$tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                std::ops::$tr::$m(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add(b));
binop!(Sub, sub, |a, b| a.sub(b));
binop!(Mul, mul, |a, b| a.mul(b));
binop!(Div, div, |a, b| a.mul(&b.pow(-1)));

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(&qi(-1))
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        let mut acc = poly::Poly::zero();
        for e in iter {
            acc = acc.add(&poly::Poly::from_expr(&e));
        }
        acc.to_expr()
    }
}

impl std::iter::Product for Expr {
    fn product<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        let mut acc = poly::Poly::one();
        for e in iter {
            acc = acc.mul(&poly::Poly::from_expr(&e));
        }
        acc.to_expr()
    }
}

#[cfg(test)]
mod tests;
