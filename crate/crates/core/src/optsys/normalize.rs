use num_traits::{One, Signed, Zero};

use super::reps::{find_representative, Representative, Slot};
use super::word::{abs_log, apply_step, AdjointWord, Axis, Param, Step};
use super::OptError;
use crate::liealg::{format_vector, LieAlgebra};
use crate::symexpr::{qi, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub representative: Representative,
    /// Image of the input under `word`.
    pub vector: Vec<Q>,
    pub word: AdjointWord,
    /// Leaf of the case tree that produced the result.
    pub branch: &'static str,
    /// Values of the representative's signs and free constants.
    pub values: Vec<(String, Q)>,
}

struct Run<'a> {
    alg: &'a LieAlgebra,
    v: Vec<Q>,
    word: AdjointWord,
}

impl Run<'_> {
    fn a(&self, i: usize) -> Q {
        self.v[i - 1].clone()
    }

    fn nz(&self, i: usize) -> bool {
        !self.v[i - 1].is_zero()
    }

    fn push(&mut self, s: Step) {
        self.v = apply_step(self.alg, &self.v, &s).expect("normalizer steps are exact");
        self.word.steps.push(s);
    }

    fn scale_to_one(&mut self, i: usize) {
        let k = self.a(i);
        if !k.is_one() {
            self.push(Step::Scale(k.recip()));
        }
    }

    /// Zero `a1` with `Y1`, which shifts it by `s (a5 - 2 a4)`.
    fn kill_a1(&mut self, branch: &'static str) -> Result<(), OptError> {
        if !self.nz(1) {
            return Ok(());
        }
        let rate = qi(2) * self.a(4) - self.a(5);
        if rate.is_zero() {
            return Err(OptError::Unlisted {
                branch,
                vector: format_vector(&self.v),
            });
        }
        let s = self.a(1) / rate;
        self.push(Step::Ad {
            gen: 0,
            param: Param::Rational(s),
        });
        Ok(())
    }

    /// Zero `a3` with `Y3`; needs `a6 != 0`.
    fn kill_a3(&mut self) {
        if self.nz(3) {
            let s = self.a(3) / self.a(6);
            self.push(Step::Ad {
                gen: 2,
                param: Param::Rational(s),
            });
        }
    }

    /// `a2 -> +-1` with `Y4`.
    fn unit_a2(&mut self) {
        let a2 = self.a(2);
        if !a2.abs().is_one() {
            self.push(Step::Ad {
                gen: 3,
                param: abs_log(&a2.recip()),
            });
        }
    }

    /// `a3 -> +-1` with `Y6`.
    fn unit_a3(&mut self) {
        let a3 = self.a(3);
        if !a3.abs().is_one() {
            self.push(Step::Ad {
                gen: 5,
                param: abs_log(&a3.recip()),
            });
        }
    }

    /// `a1 -> +-1` with `Y5`.
    fn unit_a1(&mut self) {
        let a1 = self.a(1);
        if !a1.abs().is_one() {
            self.push(Step::Ad {
                gen: 4,
                param: abs_log(&a1),
            });
        }
    }

    /// Make `a2 = 1` with the x-reflection.
    fn positive_a2_by_x(&mut self) {
        if self.a(2).is_negative() {
            self.push(Step::Reflect(Axis::X));
        }
    }

    /// Make `a2 = 1` when `a3 = 1` using the u-reflection and a sign flip.
    fn positive_a2_by_u(&mut self) {
        if self.a(2).is_negative() {
            self.push(Step::Reflect(Axis::U));
            self.push(Step::Scale(-Q::one()));
        }
    }
}

/// Run the case tree of the optimal-system proof on a nonzero vector.
pub fn normalize(alg: &LieAlgebra, a: &[Q]) -> Result<Normalized, OptError> {
    if a.iter().all(|x| x.is_zero()) {
        return Err(OptError::ZeroVector);
    }
    let mut r = Run {
        alg,
        v: a.to_vec(),
        word: AdjointWord::default(),
    };
    let branch = tree(&mut r)?;
    let rep = find_representative(&r.v).ok_or_else(|| OptError::Unlisted {
        branch,
        vector: format_vector(&r.v),
    })?;
    let values = rep
        .slots
        .iter()
        .zip(&r.v)
        .filter_map(|(s, c)| match s {
            Slot::Sign(k) => Some((format!("pm{k}"), c.clone())),
            Slot::Param(n) => Some((n.to_string(), c.clone())),
            _ => None,
        })
        .collect();
    Ok(Normalized {
        representative: rep,
        vector: r.v,
        word: r.word,
        branch,
        values,
    })
}

fn tree(r: &mut Run) -> Result<&'static str, OptError> {
    if r.nz(6) {
        r.scale_to_one(6);
        if r.nz(4) {
            r.kill_a1("1a")?;
            r.kill_a3();
            if r.nz(2) {
                r.unit_a2();
                if r.nz(5) {
                    return Ok("1a-1");
                }
                r.positive_a2_by_x();
                return Ok("1a-1");
            }
            return Ok("1a-2");
        }
        if r.nz(5) {
            r.kill_a1("1b-1")?;
            r.kill_a3();
            if r.nz(2) {
                r.unit_a2();
            }
            return Ok("1b-1");
        }
        r.kill_a3();
        if r.nz(2) {
            r.unit_a2();
            if r.nz(1) {
                r.unit_a1();
            }
            r.positive_a2_by_x();
            return Ok("1b-2-1");
        }
        if r.nz(1) {
            r.unit_a1();
        }
        return Ok("1b-2-2");
    }
    if r.nz(5) {
        r.scale_to_one(5);
        if r.nz(4) {
            r.kill_a1("2a-1")?;
            let leaf = if r.nz(3) {
                r.unit_a3();
                "2a-1-1"
            } else {
                "2a-1-2"
            };
            if r.nz(2) {
                r.unit_a2();
            }
            return Ok(leaf);
        }
        r.kill_a1("2a-2")?;
        let leaf = if r.nz(3) {
            r.unit_a3();
            "2a-2-1"
        } else {
            "2a-2-2"
        };
        if r.nz(2) {
            r.unit_a2();
        }
        return Ok(leaf);
    }
    if r.nz(4) {
        r.scale_to_one(4);
        r.kill_a1("2b-1")?;
        let leaf = if r.nz(3) {
            r.unit_a3();
            "2b-1-1"
        } else {
            "2b-1-2"
        };
        if r.nz(2) {
            r.unit_a2();
        }
        return Ok(leaf);
    }
    if r.nz(3) {
        r.scale_to_one(3);
        if r.nz(2) {
            r.unit_a2();
            if r.nz(1) {
                r.unit_a1();
            }
            r.positive_a2_by_u();
        } else if r.nz(1) {
            r.unit_a1();
        }
        return Ok("2b-2-1");
    }
    if r.nz(2) {
        r.scale_to_one(2);
        if r.nz(1) {
            r.unit_a1();
        }
        return Ok("2b-2-2");
    }
    r.scale_to_one(1);
    Ok("2b-2-2")
}
