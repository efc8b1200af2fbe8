//! Fixed problems used by the benchmarks.

use rxlip_core::derlog::derlog_generators;
use rxlip_core::invariants::DeformationProblem;
use rxlip_core::{parse_poly, VarContext, WeightSystem};

/// `(variables, weights, phi, f, theta)`.
pub type Spec = (&'static [&'static str], &'static [u32], &'static str, &'static str, &'static str);

pub const CROSS_CAP: Spec = (&["u", "v", "w"], &[1, 2, 2], "v^2 - u^2*w", "u^6 + v^3 + w^3", "u^4*w");
pub const THREEFOLD: Spec = (&["u", "v", "w"], &[7, 5, 7], "2*u^5 - v^7 + w^5", "u^5 + v^7 + 2*w^5", "u^3*v^4");
pub const QUADRIC: Spec =
    (&["x", "y", "z", "w"], &[3, 3, 3, 2], "x^2 + y^2 + z^2 + w^3", "2*x^2 - y^2 - 3*z^2 + w^3", "x^2*w");

pub fn problem(spec: Spec) -> DeformationProblem {
    let (vars, w, phi, f, theta) = spec;
    let c = VarContext::new(vars.iter().copied(), false, false).unwrap();
    let dl = derlog_generators(&parse_poly(phi, &c).unwrap(), &WeightSystem::new(w.to_vec()).unwrap()).unwrap();
    DeformationProblem::new(&dl, &parse_poly(f, &c).unwrap(), &[parse_poly(theta, &c).unwrap()]).unwrap()
}
