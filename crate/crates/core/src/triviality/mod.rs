//! Strongly rational bi-Lipschitz triviality: the filtration criterion,
//! exact certificates and numeric checks of the Lipschitz estimates.

mod certificate;
mod numeric;

pub use certificate::{build_certificate, build_certificate_with, Certificate, Multiplier};
pub use numeric::{
    build_certificate_field, build_theorem_field, numeric_lipschitz_check, numeric_sup_hypothesis, BoundKind,
    CertificateField, NumericField, NumericReport, SamplerConfig, TheoremField, Violation,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{bruce_roberts_number, DeformationProblem};
use crate::weights::{is_weighted_homogeneous, weighted_fil, Fil};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeVerdict {
    pub theta: String,
    pub fil: Fil,
    pub threshold: i64,
    pub trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: i64,
    pub w_max: u32,
    pub w_min: u32,
    /// Variable indices by decreasing weight (the internal coordinate order).
    pub permutation: Vec<usize>,
    pub verdicts: Vec<DegreeVerdict>,
}

/// A term `theta` with `fil(theta) >= d + w_max - w_min` gives a strongly
/// rational trivial deformation. Sufficient only: a smaller filtration is
/// reported as inconclusive.
pub fn degree_criterion(prob: &DeformationProblem) -> Result<DegreeReport> {
    let ws = prob.weights();
    let d = prob
        .f_degree()
        .ok_or_else(|| Error::Hypothesis("f is not weighted homogeneous for the given weights".into()))?;
    if !prob.derlog().phi().is_zero() && prob.derlog().phi_degree().is_none() {
        return Err(Error::Hypothesis("X is not weighted homogeneous for the given weights".into()));
    }
    if bruce_roberts_number(prob.f(), prob.derlog())?.is_none() {
        return Err(Error::Hypothesis("f is not R_X-finitely determined (mu_BR infinite)".into()));
    }
    let threshold = d + ws.max_weight() as i64 - ws.min_weight() as i64;
    let verdicts = prob
        .thetas()
        .iter()
        .map(|th| {
            let fil = weighted_fil(th, ws);
            let trivial = match fil {
                Fil::Infinite => true,
                Fil::Finite(v) => v >= threshold,
            };
            DegreeVerdict { theta: th.to_string(), fil, threshold, trivial }
        })
        .collect();
    Ok(DegreeReport {
        degree: d,
        w_max: ws.max_weight(),
        w_min: ws.min_weight(),
        permutation: ws.descending_permutation(),
        verdicts,
    })
}

/// Whether every term of `theta` is weighted homogeneous of the same degree
/// as `f`.
pub fn same_degree(prob: &DeformationProblem, theta: &crate::poly::Poly) -> bool {
    if theta.is_zero() {
        return true;
    }
    match (prob.f_degree(), is_weighted_homogeneous(theta, prob.weights())) {
        (Some(d), Ok(Some(e))) => d == e,
        _ => false,
    }
}
