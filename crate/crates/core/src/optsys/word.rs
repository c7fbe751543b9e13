use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::OptError;
use crate::liealg::{adjoint_matrix, ExpPoly, LieAlgebra};
use crate::symexpr::Q;

/// Exact group parameter: a rational or the logarithm of a positive rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Rational(Q),
    Log(Q),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Rational(q) => write!(f, "{q}"),
            Param::Log(q) => write!(f, "ln({q})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axis {
    T,
    X,
    U,
}

impl Axis {
    /// Coefficient index negated by the reflection.
    pub fn index(self) -> usize {
        match self {
            Axis::T => 0,
            Axis::X => 1,
            Axis::U => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// `Ad(exp(p Y_gen))`, `gen` counted from 0.
    Ad {
        gen: usize,
        param: Param,
    },
    Scale(Q),
    Reflect(Axis),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Ad { gen, param } => write!(f, "Ad(exp({param}*Y{}))", gen + 1),
            Step::Scale(q) => write!(f, "scale({q})"),
            Step::Reflect(a) => write!(f, "reflect({})", ["t", "x", "u"][a.index()]),
        }
    }
}

/// Steps applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AdjointWord {
    pub steps: Vec<Step>,
}

impl fmt::Display for AdjointWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" ; "))
    }
}

fn pow_int(r: &Q, k: &Q) -> Result<Q, OptError> {
    if !k.is_integer() {
        return Err(OptError::IrrationalResult(format!("{r}^{k}")));
    }
    let n = k
        .to_integer()
        .to_i32()
        .ok_or_else(|| OptError::IrrationalResult(format!("{r}^{k}")))?;
    Ok(if n >= 0 {
        num_traits::pow(r.clone(), n as usize)
    } else {
        num_traits::pow(r.recip(), n.unsigned_abs() as usize)
    })
}

/// Value of an ExpPoly at an exact parameter, when it is rational.
pub fn eval_exppoly(e: &ExpPoly, p: &Param) -> Result<Q, OptError> {
    let mut acc = Q::zero();
    for (q, k, l) in e.terms() {
        let v = match p {
            Param::Rational(s) => {
                if !l.is_zero() && !s.is_zero() {
                    return Err(OptError::IrrationalResult(format!("exp({l}*{s})")));
                }
                num_traits::pow(s.clone(), k as usize)
            }
            Param::Log(r) => {
                if k > 0 && !r.is_one() {
                    return Err(OptError::IrrationalResult(format!("ln({r})^{k}")));
                }
                if k > 0 {
                    Q::zero()
                } else {
                    pow_int(r, l)?
                }
            }
        };
        acc += q * v;
    }
    Ok(acc)
}

pub fn apply_step(alg: &LieAlgebra, a: &[Q], step: &Step) -> Result<Vec<Q>, OptError> {
    match step {
        Step::Scale(q) => Ok(a.iter().map(|x| x * q).collect()),
        Step::Reflect(axis) => {
            let mut v = a.to_vec();
            v[axis.index()] = -v[axis.index()].clone();
            Ok(v)
        }
        Step::Ad { gen, param } => {
            if let Param::Log(r) = param {
                if !r.is_positive() {
                    return Err(OptError::IrrationalResult(format!("ln({r})")));
                }
            }
            let m = adjoint_matrix(alg, &alg.unit(*gen)).map_err(OptError::Lie)?;
            let image = m.apply(a);
            image.iter().map(|e| eval_exppoly(e, param)).collect()
        }
    }
}

pub fn apply_word(alg: &LieAlgebra, a: &[Q], w: &AdjointWord) -> Result<Vec<Q>, OptError> {
    let mut v = a.to_vec();
    for s in &w.steps {
        v = apply_step(alg, &v, s)?;
    }
    Ok(v)
}

/// The inverse word: undoes `w` step by step.
pub fn inverse_word(w: &AdjointWord) -> AdjointWord {
    let steps = w
        .steps
        .iter()
        .rev()
        .map(|s| match s {
            Step::Scale(q) => Step::Scale(q.recip()),
            Step::Reflect(a) => Step::Reflect(*a),
            Step::Ad { gen, param } => Step::Ad {
                gen: *gen,
                param: match param {
                    Param::Rational(q) => Param::Rational(-q.clone()),
                    Param::Log(r) => Param::Log(r.recip()),
                },
            },
        })
        .collect();
    AdjointWord { steps }
}

pub(crate) fn abs_log(q: &Q) -> Param {
    Param::Log(q.abs())
}
