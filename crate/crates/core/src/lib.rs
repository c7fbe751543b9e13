//! Lie-symmetry group classification of nonlinear heat conductivity
//! equations `u_t = (E(x,u) u_x)_x + H(x,u)`.

pub mod detsys;
pub mod invclass;
pub mod jetcalc;
pub mod liealg;
pub mod linalg;
pub mod optsys;
pub mod report;
pub mod symexpr;
