use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::Certificate;
use crate::error::{Error, Result};
use crate::eval::{eval_scaled, Scaled};
use crate::field::VectorField;
use crate::invariants::DeformationProblem;
use crate::poly::Poly;
use crate::weights::{weighted_fil, WeightSystem};

/// Relative residual above which a field is rejected before any Lipschitz
/// estimate is attempted.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub r_max: f64,
    pub radii: usize,
    pub radius_factor: f64,
    pub points_per_radius: usize,
    pub t_values: Vec<f64>,
    pub tolerance: f64,
    /// Relative step for difference quotients: `h_k = step * r^w_k`.
    pub step: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 20_240_601,
            r_max: 0.5,
            radii: 8,
            radius_factor: 0.5,
            points_per_radius: 256,
            t_values: vec![0.0, 0.5, 1.0],
            tolerance: 0.1,
            step: 1e-6,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::DegenerateSampler(m.into()));
        if self.radii == 0 || self.points_per_radius == 0 || self.t_values.is_empty() {
            return bad("no samples requested");
        }
        if !(self.r_max > 0.0 && self.r_max.is_finite()) {
            return bad("r_max must be positive");
        }
        if !(self.radius_factor > 0.0 && self.radius_factor < 1.0) {
            return bad("radius factor must lie in (0, 1)");
        }
        if !(self.step > 0.0 && self.step < 1.0) || !(self.tolerance >= 0.0) {
            return bad("step and tolerance must be positive");
        }
        Ok(())
    }

    pub fn radius(&self, k: usize) -> f64 {
        self.r_max * self.radius_factor.powi(k as i32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    SupHypothesis,
    ComponentGrowth,
    LipschitzQuotient,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub radius: f64,
    pub t: f64,
    /// Point on the unit weighted sphere; the sample is its scaling by `radius`.
    pub direction: Vec<(f64, f64)>,
    pub value: f64,
    pub growth: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub bound_kind: BoundKind,
    pub config: SamplerConfig,
    pub samples: usize,
    pub max_ratio: f64,
    pub estimated_constant: f64,
    /// Per radius (largest first), the maximum over directions and `t`.
    pub per_radius: Vec<f64>,
    /// Ratios of consecutive entries of `per_radius`.
    pub growth: Vec<f64>,
    /// Per `t`, the maximum over all radii.
    pub per_t: Vec<(f64, f64)>,
    pub spread: f64,
    pub component_constant: Option<f64>,
    pub component_growth: Vec<f64>,
    pub max_residual: Option<f64>,
    pub bounded: bool,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

/// A vector field along which `F` is constant: `dF/dt + dF(V) = 0`.
pub trait NumericField: Sync {
    fn weights(&self) -> &WeightSystem;

    /// `V(x, t)`; zero at the origin.
    fn eval(&self, x: &[Scaled], t: Scaled) -> Vec<Scaled>;

    /// `|dF/dt + dF(V)|` relative to the size of its terms.
    fn residual(&self, x: &[Scaled], t: Scaled) -> f64;
}

fn is_origin(x: &[Scaled]) -> bool {
    x.iter().all(Scaled::is_zero)
}

fn ev(p: &Poly, x: &[Scaled], t: Scaled) -> Scaled {
    eval_scaled(p, x, t).expect("point has one value per variable")
}

fn log2_sum(logs: impl Iterator<Item = f64>) -> f64 {
    let logs: Vec<f64> = logs.filter(|l| l.is_finite()).collect();
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + logs.iter().map(|l| (l - m).exp2()).sum::<f64>().log2()
}

/// `log2 ||x||_w`.
fn log2_weighted_norm(ws: &WeightSystem, x: &[Scaled]) -> f64 {
    let w = ws.product_w() as f64;
    let s = log2_sum(x.iter().enumerate().map(|(i, z)| 2.0 * w / ws.weight(i) as f64 * z.log2_abs()));
    s / (2.0 * w)
}

fn flow_residual(partials: &[Poly], dfdt: &Poly, v: &[Scaled], x: &[Scaled], t: Scaled) -> f64 {
    let th = ev(dfdt, x, t);
    let mut sum = th;
    let mut logs = vec![th.log2_abs()];
    for (p, vk) in partials.iter().zip(v) {
        let term = *vk * ev(p, x, t);
        logs.push(term.log2_abs());
        sum = sum + term;
    }
    let scale = log2_sum(logs.into_iter());
    if scale == f64::NEG_INFINITY {
        return 0.0;
    }
    (sum.log2_abs() - scale).exp2()
}

fn partials(prob: &DeformationProblem) -> Vec<Poly> {
    (0..prob.ctx().n()).map(|k| prob.big_f().derivative(k)).collect()
}

/// The field of the filtration theorem:
/// `V = -(dF/dt / rho^2) sum_i conj(rho_i) ||x||_w^(2 e_i) eta_i` with
/// `rho_i = dF(eta_i)` over generators of `Theta_X^0` and
/// `rho^2 = sum_i |rho_i|^2 ||x||_w^(2 e_i)`.
#[derive(Debug, Clone)]
pub struct TheoremField {
    weights: WeightSystem,
    fields: Vec<VectorField>,
    degrees: Vec<i64>,
    e_list: Vec<i64>,
    s_const: i64,
    rhos: Vec<Poly>,
    partials: Vec<Poly>,
    dfdt: Poly,
}

impl TheoremField {
    pub fn e_list(&self) -> &[i64] {
        &self.e_list
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// The common value of `d_i + e_i`.
    pub fn s_constant(&self) -> i64 {
        self.s_const
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn rho_squared_descriptor(&self) -> String {
        self.e_list
            .iter()
            .enumerate()
            .map(|(i, e)| format!("|rho_{}|^2 ||x||^{}", i + 1, 2 * e))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Values `rho_i(x, t)`.
    pub fn rho_values(&self, x: &[Scaled], t: Scaled) -> Vec<Scaled> {
        self.rhos.iter().map(|r| ev(r, x, t)).collect()
    }
}

pub fn build_theorem_field(prob: &DeformationProblem) -> TheoremField {
    let ws = prob.weights().clone();
    let fields = prob.derlog().vanishing_generators();
    let degrees: Vec<i64> = fields
        .iter()
        .map(|g| g.fil(&ws).ok().and_then(|f| f.finite()).unwrap_or(0))
        .collect();
    let s_const = degrees.iter().cloned().max().unwrap_or(0);
    let e_list = degrees.iter().map(|d| s_const - d).collect();
    let rhos = prob.apply_all(&fields);
    TheoremField {
        weights: ws,
        fields,
        degrees,
        e_list,
        s_const,
        rhos,
        partials: partials(prob),
        dfdt: prob.dfdt().clone(),
    }
}

impl NumericField for TheoremField {
    fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    fn eval(&self, x: &[Scaled], t: Scaled) -> Vec<Scaled> {
        let n = x.len();
        if is_origin(x) {
            return vec![Scaled::ZERO; n];
        }
        let ln = log2_weighted_norm(&self.weights, x);
        let rho = self.rho_values(x, t);
        let mut rho2 = Scaled::ZERO;
        let mut coefs = Vec::with_capacity(rho.len());
        for (r, &e) in rho.iter().zip(&self.e_list) {
            let nw = Scaled::from_log2(2.0 * e as f64 * ln);
            rho2 = rho2 + *r * r.conj() * nw;
            coefs.push(r.conj() * nw);
        }
        if rho2.is_zero() {
            return vec![Scaled::ZERO; n];
        }
        let factor = -(ev(&self.dfdt, x, t) / rho2);
        (0..n)
            .map(|k| {
                let s = self
                    .fields
                    .iter()
                    .zip(&coefs)
                    .fold(Scaled::ZERO, |acc, (g, c)| acc + *c * ev(g.component(k), x, t));
                factor * s
            })
            .collect()
    }

    fn residual(&self, x: &[Scaled], t: Scaled) -> f64 {
        let v = self.eval(x, t);
        flow_residual(&self.partials, &self.dfdt, &v, x, t)
    }
}

/// `V = -sum_j alpha_j eta_j / (D rho)` for a certificate.
#[derive(Debug, Clone)]
pub struct CertificateField {
    weights: WeightSystem,
    numerators: Vec<Poly>,
    denominator: Poly,
    partials: Vec<Poly>,
    dfdt: Poly,
}

pub fn build_certificate_field(prob: &DeformationProblem, cert: &Certificate) -> CertificateField {
    let ctx = cert.ctx();
    let n = ctx.n();
    let numerators = (0..n)
        .map(|k| {
            let s = cert
                .alphas
                .iter()
                .zip(&cert.fields)
                .fold(Poly::zero(ctx), |acc, (a, g)| &acc + &(a * g.component(k)));
            -s
        })
        .collect();
    CertificateField {
        weights: prob.weights().clone(),
        numerators,
        denominator: &cert.denominator * &cert.rho,
        partials: partials(prob),
        dfdt: prob.dfdt().clone(),
    }
}

impl NumericField for CertificateField {
    fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    fn eval(&self, x: &[Scaled], t: Scaled) -> Vec<Scaled> {
        if is_origin(x) {
            return vec![Scaled::ZERO; x.len()];
        }
        let d = ev(&self.denominator, x, t);
        self.numerators.iter().map(|p| ev(p, x, t) / d).collect()
    }

    fn residual(&self, x: &[Scaled], t: Scaled) -> f64 {
        let v = self.eval(x, t);
        flow_residual(&self.partials, &self.dfdt, &v, x, t)
    }
}

/// Unit directions on the weighted sphere and, for each, a Euclidean unit
/// perturbation direction. Drawn once and reused for every radius.
struct Directions {
    points: Vec<Vec<Complex64>>,
    perturb: Vec<Vec<Complex64>>,
}

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect()
}

fn directions(ws: &WeightSystem, cfg: &SamplerConfig) -> Directions {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = ws.n();
    let mut points = Vec::with_capacity(cfg.points_per_radius);
    let mut perturb = Vec::with_capacity(cfg.points_per_radius);
    for _ in 0..cfg.points_per_radius {
        let z = gaussian(&mut rng, n);
        let l = ws.log_weighted_norm(&z);
        points.push(z.iter().enumerate().map(|(i, zi)| zi * (-(ws.weight(i) as f64) * l).exp()).collect());
        let d = gaussian(&mut rng, n);
        let nd = d.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        perturb.push(d.iter().map(|c| c / nd).collect());
    }
    Directions { points, perturb }
}

/// `x_i = z_i * scale^w_i` in extended range.
fn scaled_point(ws: &WeightSystem, z: &[Complex64], log2_scale: f64) -> Vec<Scaled> {
    z.iter()
        .enumerate()
        .map(|(i, zi)| Scaled::new(*zi) * Scaled::from_log2(ws.weight(i) as f64 * log2_scale))
        .collect()
}

/// Per-(radius, t) maxima and the index of the maximizing direction.
#[derive(Debug, Clone)]
struct Grid {
    values: Vec<Vec<(f64, usize)>>,
}

impl Grid {
    fn collect(cfg: &SamplerConfig, dirs: usize, f: impl Fn(usize, usize, usize) -> f64 + Sync) -> Grid {
        let nt = cfg.t_values.len();
        let cells: Vec<(usize, usize)> = (0..cfg.radii).flat_map(|r| (0..nt).map(move |t| (r, t))).collect();
        let flat: Vec<(f64, usize)> = cells
            .par_iter()
            .map(|&(r, t)| {
                let vals: Vec<f64> = (0..dirs).map(|d| f(r, t, d)).collect();
                let mut best = (f64::NEG_INFINITY, 0);
                for (d, v) in vals.into_iter().enumerate() {
                    let v = if v.is_nan() { f64::INFINITY } else { v };
                    if v > best.0 {
                        best = (v, d);
                    }
                }
                best
            })
            .collect();
        Grid { values: flat.chunks(nt).map(|c| c.to_vec()).collect() }
    }

    fn per_radius(&self) -> Vec<f64> {
        self.values.iter().map(|row| row.iter().map(|v| v.0).fold(f64::NEG_INFINITY, f64::max)).collect()
    }

    fn per_t(&self, cfg: &SamplerConfig) -> Vec<(f64, f64)> {
        cfg.t_values
            .iter()
            .enumerate()
            .map(|(j, &t)| (t, self.values.iter().map(|row| row[j].0).fold(f64::NEG_INFINITY, f64::max)))
            .collect()
    }

    fn argmax(&self, r: usize) -> (usize, usize) {
        let row = &self.values[r];
        let j = (0..row.len()).fold(0, |b, j| if row[j].0 > row[b].0 { j } else { b });
        (j, row[j].1)
    }
}

fn growth(per_radius: &[f64]) -> Vec<f64> {
    per_radius.windows(2).map(|w| w[1] / w[0]).collect()
}

/// Growth factors in the second half of the ladder that exceed `1 + tol`.
fn growth_violations(
    cfg: &SamplerConfig,
    dirs: &Directions,
    grid: &Grid,
    growth: &[f64],
) -> Vec<Violation> {
    let start = growth.len() / 2;
    (start..growth.len())
        .filter(|&k| !(growth[k] <= 1.0 + cfg.tolerance))
        .map(|k| {
            let (tj, d) = grid.argmax(k + 1);
            Violation {
                radius: cfg.radius(k + 1),
                t: cfg.t_values[tj],
                direction: dirs.points[d].iter().map(|c| (c.re, c.im)).collect(),
                value: grid.values[k + 1][tj].0,
                growth: growth[k],
            }
        })
        .collect()
}

fn spread(per_t: &[(f64, f64)]) -> f64 {
    let hi = per_t.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let lo = per_t.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    if hi == 0.0 {
        0.0
    } else {
        (hi - lo) / hi
    }
}

/// Samples `|dF/dt| / sup_i |dF(eta_i)| ||x||_w^(-d_i + w_max - w_min)` over
/// generators of `Theta_X^0`. The hypothesis is supported when the maxima
/// per radius stop growing as the radius shrinks.
pub fn numeric_sup_hypothesis(prob: &DeformationProblem, cfg: &SamplerConfig) -> Result<NumericReport> {
    cfg.validate()?;
    let ws = prob.weights();
    let fields = prob.derlog().vanishing_generators();
    let rhos = prob.apply_all(&fields);
    let gap = ws.max_weight() as i64 - ws.min_weight() as i64;
    let exps: Vec<f64> = fields
        .iter()
        .map(|g| (gap - g.fil(ws).ok().and_then(|f| f.finite()).unwrap_or(0)) as f64)
        .collect();
    let dirs = directions(ws, cfg);
    let grid = Grid::collect(cfg, dirs.points.len(), |r, tj, d| {
        let ls = cfg.radius(r).log2();
        let x = scaled_point(ws, &dirs.points[d], ls);
        let t = Scaled::from_f64(cfg.t_values[tj]);
        let ln = log2_weighted_norm(ws, &x);
        let num = ev(prob.dfdt(), &x, t).log2_abs();
        let den = rhos
            .iter()
            .zip(&exps)
            .map(|(p, e)| ev(p, &x, t).log2_abs() + e * ln)
            .fold(f64::NEG_INFINITY, f64::max);
        (num - den).exp2()
    });
    let per_radius = grid.per_radius();
    let growth = growth(&per_radius);
    let violations = growth_violations(cfg, &dirs, &grid, &growth);
    let per_t = grid.per_t(cfg);
    let max_ratio = per_radius.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let bounded = violations.is_empty() && max_ratio.is_finite();
    Ok(NumericReport {
        bound_kind: BoundKind::SupHypothesis,
        config: cfg.clone(),
        samples: cfg.radii * cfg.t_values.len() * cfg.points_per_radius,
        max_ratio,
        estimated_constant: max_ratio,
        spread: spread(&per_t),
        per_radius,
        growth,
        per_t,
        component_constant: None,
        component_growth: Vec::new(),
        max_residual: None,
        bounded,
        violations,
        notes: vec![format!("weighted filtration of dF/dt: {}", weighted_fil(prob.dfdt(), ws))],
    })
}

/// Checks a field numerically: first the flow identity, then the growth of
/// `|V_j| / ||x||_w^(w_j + w_max - w_min)` and of difference quotients
/// `|V(p) - V(q)| / |p - q|` as the radius shrinks, and the spread of the
/// estimated Lipschitz constant across `t`.
pub fn numeric_lipschitz_check(field: &dyn NumericField, cfg: &SamplerConfig) -> Result<NumericReport> {
    cfg.validate()?;
    let ws = field.weights();
    let n = ws.n();
    let gap = ws.max_weight() as f64 - ws.min_weight() as f64;
    let dirs = directions(ws, cfg);
    let samples = cfg.radii * cfg.t_values.len() * cfg.points_per_radius;
    let point = |r: usize, d: usize| scaled_point(ws, &dirs.points[d], cfg.radius(r).log2());
    let tval = |tj: usize| Scaled::from_f64(cfg.t_values[tj]);

    let residuals = Grid::collect(cfg, dirs.points.len(), |r, tj, d| field.residual(&point(r, d), tval(tj)));
    let max_residual = residuals.per_radius().into_iter().fold(0.0, f64::max);
    let mut report = NumericReport {
        bound_kind: BoundKind::LipschitzQuotient,
        config: cfg.clone(),
        samples,
        max_ratio: f64::NAN,
        estimated_constant: f64::NAN,
        per_radius: Vec::new(),
        growth: Vec::new(),
        per_t: Vec::new(),
        spread: f64::NAN,
        component_constant: None,
        component_growth: Vec::new(),
        max_residual: Some(max_residual),
        bounded: false,
        violations: Vec::new(),
        notes: Vec::new(),
    };
    if !(max_residual <= RESIDUAL_TOLERANCE) {
        let r = (0..cfg.radii)
            .max_by(|&a, &b| residuals.per_radius()[a].total_cmp(&residuals.per_radius()[b]))
            .unwrap();
        let (tj, d) = residuals.argmax(r);
        report.violations.push(Violation {
            radius: cfg.radius(r),
            t: cfg.t_values[tj],
            direction: dirs.points[d].iter().map(|c| (c.re, c.im)).collect(),
            value: max_residual,
            growth: f64::NAN,
        });
        report.notes.push(format!("flow identity fails: relative residual {max_residual:e}"));
        return Ok(report);
    }

    let comps = Grid::collect(cfg, dirs.points.len(), |r, tj, d| {
        let x = point(r, d);
        let v = field.eval(&x, tval(tj));
        let lr = cfg.radius(r).log2();
        v.iter()
            .enumerate()
            .map(|(j, vj)| (vj.log2_abs() - (ws.weight(j) as f64 + gap) * lr).exp2())
            .fold(0.0, f64::max)
    });
    let comp_radius = comps.per_radius();
    let comp_growth = growth(&comp_radius);
    let mut violations = growth_violations(cfg, &dirs, &comps, &comp_growth);

    let quotients = Grid::collect(cfg, dirs.points.len(), |r, tj, d| {
        let lr = cfg.radius(r).log2();
        let x = point(r, d);
        let t = tval(tj);
        let h: Vec<Scaled> = (0..n)
            .map(|k| Scaled::new(dirs.perturb[d][k] * cfg.step) * Scaled::from_log2(ws.weight(k) as f64 * lr))
            .collect();
        let y: Vec<Scaled> = x.iter().zip(&h).map(|(a, b)| *a + *b).collect();
        let dist = log2_sum(h.iter().map(|s| 2.0 * s.log2_abs())) / 2.0;
        let (vx, vy) = (field.eval(&x, t), field.eval(&y, t));
        let diff = log2_sum(vx.iter().zip(&vy).map(|(a, b)| 2.0 * (*a - *b).log2_abs())) / 2.0;
        (diff - dist).exp2()
    });
    let per_radius = quotients.per_radius();
    let q_growth = growth(&per_radius);
    violations.extend(growth_violations(cfg, &dirs, &quotients, &q_growth));
    let per_t = quotients.per_t(cfg);
    let spread = spread(&per_t);
    let max_ratio = per_radius.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    report.bounded = violations.is_empty() && max_ratio.is_finite() && spread < cfg.tolerance;
    if spread >= cfg.tolerance {
        report.notes.push(format!("Lipschitz estimate varies with t: spread {spread:.4}"));
    }
    report.max_ratio = max_ratio;
    report.estimated_constant = max_ratio;
    report.component_constant = Some(comp_radius.iter().cloned().fold(0.0, f64::max));
    report.component_growth = comp_growth;
    report.per_radius = per_radius;
    report.growth = q_growth;
    report.per_t = per_t;
    report.spread = spread;
    report.violations = violations;
    Ok(report)
}
