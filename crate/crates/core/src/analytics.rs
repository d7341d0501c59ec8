//! Closed-form predictions from probability generating functions.
//!
//! Near `x = 1` the generating functions are evaluated in terms of
//! `eps = 1 - x` through `ln_1p`/`exp_m1`, so that the extinction fixed point
//! and the susceptibilities stay accurate as a law approaches criticality.

use serde::Serialize;

use crate::degree::{classify, CriticalityClass, DegreeDistribution};
use crate::numeric::compensated_sum;
use crate::{Error, Extended, Result};

/// `|mu - nu|` below which a non-critical law is reported as numerically critical.
pub const NEAR_CRITICAL_GUARD: f64 = 1e-9;

/// Relative agreement required between the two closed forms of the modified susceptibility.
pub const FORM_TOLERANCE: f64 = 1e-9;

const MAX_ITERATIONS: usize = 200;
const INITIAL_GAP: f64 = 1e-3;
const SMALLEST_GAP: f64 = 1e-300;

fn falling(k: usize, order: usize) -> f64 {
    (0..order).map(|i| k.saturating_sub(i) as f64).product()
}

/// `(1 - eps)^j` given `log1m = ln(1 - eps)`.
fn pow_1m(j: usize, log1m: f64) -> f64 {
    if j == 0 {
        1.0
    } else {
        (j as f64 * log1m).exp()
    }
}

/// `(1 - eps)^j - 1` given `log1m = ln(1 - eps)`.
fn pow_1m_minus_one(j: usize, log1m: f64) -> f64 {
    if j == 0 {
        0.0
    } else {
        (j as f64 * log1m).exp_m1()
    }
}

/// Derivative of the given order of the generating function at `x`.
pub fn pgf(dist: &DegreeDistribution, x: f64, order: usize) -> f64 {
    compensated_sum(
        dist.iter_desc()
            .filter(|&(k, _)| k >= order)
            .map(|(k, p)| p * falling(k, order) * x.powi((k - order) as i32)),
    )
}

/// `g^(order)(1 - eps)`.
fn pgf_1m(dist: &DegreeDistribution, eps: f64, order: usize) -> f64 {
    let log1m = (-eps).ln_1p();
    compensated_sum(
        dist.iter_desc()
            .filter(|&(k, _)| k >= order)
            .map(|(k, p)| p * falling(k, order) * pow_1m(k - order, log1m)),
    )
}

/// `g^(order)(1) - g^(order)(1 - eps)`, free of cancellation for small `eps`.
fn pgf_deficit(dist: &DegreeDistribution, eps: f64, order: usize) -> f64 {
    let log1m = (-eps).ln_1p();
    compensated_sum(
        dist.iter_desc()
            .filter(|&(k, _)| k > order)
            .map(|(k, p)| -p * falling(k, order) * pow_1m_minus_one(k - order, log1m)),
    )
}

/// Smallest nonnegative root of `G(s) = s`, kept together with `1 - s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub kappa: f64,
    pub eps: f64,
}

impl FixedPoint {
    const ONE: FixedPoint = FixedPoint { kappa: 1.0, eps: 0.0 };
    const ZERO: FixedPoint = FixedPoint { kappa: 0.0, eps: 1.0 };
}

/// Extinction fixed point of a Galton–Watson offspring law.
pub fn extinction_fixed_point(offspring: &DegreeDistribution) -> Result<FixedPoint> {
    if offspring.p(0) == 0.0 {
        return Ok(FixedPoint::ZERO);
    }
    let (mean, _) = offspring.truncated_moments();
    if mean <= 1.0 + 1e-12 {
        return Ok(FixedPoint::ONE);
    }
    solve_interior(offspring)
}

/// `psi(eps) = G(1 - eps) - (1 - eps)`: negative between 0 and the root, positive above.
fn psi(offspring: &DegreeDistribution, eps: f64) -> f64 {
    if eps >= 1.0 {
        return offspring.p(0);
    }
    let log1m = (-eps).ln_1p();
    compensated_sum(
        offspring
            .iter_desc()
            .map(|(j, q)| q * pow_1m_minus_one(j, log1m))
            .chain(std::iter::once(eps)),
    )
}

fn psi_slope(offspring: &DegreeDistribution, eps: f64) -> f64 {
    1.0 - pgf_1m(offspring, eps, 1)
}

fn solve_interior(offspring: &DegreeDistribution) -> Result<FixedPoint> {
    let (mut lo, mut hi) = if psi(offspring, INITIAL_GAP) < 0.0 {
        (INITIAL_GAP, 1.0)
    } else {
        let mut gap = INITIAL_GAP;
        loop {
            gap *= 0.5;
            if gap < SMALLEST_GAP {
                return Err(Error::NonConvergence {
                    what: "extinction bracket",
                    iterations: 1000,
                });
            }
            if psi(offspring, gap) < 0.0 {
                break (gap, 2.0 * gap);
            }
        }
    };

    // psi is convex in eps, so Newton from the right end stays to the right of the root.
    let mut eps = hi;
    for _ in 0..MAX_ITERATIONS {
        let value = psi(offspring, eps);
        if value == 0.0 {
            return Ok(FixedPoint {
                kappa: 1.0 - eps,
                eps,
            });
        }
        if value < 0.0 {
            lo = eps;
        } else {
            hi = eps;
        }
        let slope = psi_slope(offspring, eps);
        let mut next = eps - value / slope;
        if !(next > lo && next < hi) {
            next = if hi / lo > 4.0 {
                (lo * hi).sqrt()
            } else {
                0.5 * (lo + hi)
            };
        }
        if (next - eps).abs() <= 4.0 * f64::EPSILON * next || hi - lo <= 4.0 * f64::EPSILON * lo {
            return Ok(FixedPoint {
                kappa: 1.0 - next,
                eps: next,
            });
        }
        eps = next;
    }
    Err(Error::NonConvergence {
        what: "extinction fixed point",
        iterations: MAX_ITERATIONS,
    })
}

/// Fixed point of the exploration process of a configuration graph with law `dist`.
pub fn kappa_fixed_point(dist: &DegreeDistribution) -> Result<FixedPoint> {
    let (mu, nu) = dist.moments()?;
    if !(mu > 0.0) {
        return Err(Error::InvalidDistribution("mean degree must be positive".into()));
    }
    if dist.p(1) == 0.0 {
        return Ok(FixedPoint::ZERO);
    }
    if classify(mu, nu) != CriticalityClass::Supercritical {
        return Ok(FixedPoint::ONE);
    }
    solve_interior(&dist.size_biased()?)
}

/// Smallest root of `g'(s) = mu s` on `[0, 1]`.
pub fn solve_kappa(dist: &DegreeDistribution) -> Result<f64> {
    kappa_fixed_point(dist).map(|fp| fp.kappa)
}

/// Survival probability `1 - g(kappa)`, the limiting giant-component fraction.
pub fn survival(dist: &DegreeDistribution) -> Result<f64> {
    let fp = kappa_fixed_point(dist)?;
    if fp.eps == 0.0 {
        return Ok(0.0);
    }
    Ok(pgf_deficit(dist, fp.eps, 0))
}

/// Offspring laws of a two-stage Galton–Watson process: the root draws from
/// `root_law`, everybody else from `general_law`.
#[derive(Debug, Clone)]
pub struct BranchingSpec {
    pub root_law: DegreeDistribution,
    pub general_law: DegreeDistribution,
}

impl BranchingSpec {
    pub fn new(root_law: DegreeDistribution, general_law: DegreeDistribution) -> Self {
        BranchingSpec {
            root_law,
            general_law,
        }
    }

    /// Local-exploration process of a configuration graph: root law `D`,
    /// general law the shifted size-biased `D*`.
    pub fn for_graph(dist: &DegreeDistribution) -> Result<Self> {
        Ok(BranchingSpec {
            root_law: dist.clone(),
            general_law: dist.size_biased()?,
        })
    }
}

/// Expected total progeny `1 + E xi0 / (1 - E xi)+`.
pub fn chi_general(spec: &BranchingSpec) -> Extended {
    let (root_mean, _) = spec.root_law.truncated_moments();
    let (mean, _) = spec.general_law.truncated_moments();
    if root_mean == 0.0 {
        return Extended::Finite(1.0);
    }
    if mean >= 1.0 - 1e-12 {
        return Extended::Infinite;
    }
    Extended::Finite(1.0 + root_mean / (1.0 - mean))
}

/// Expected total progeny on the event of extinction,
/// `G0(kappa) + kappa G0'(kappa) / (1 - G'(kappa))`.
pub fn chi_hat_general(spec: &BranchingSpec) -> Extended {
    if spec.general_law.p(1) == 1.0 {
        // |X| is 1 or infinite
        return Extended::Finite(spec.root_law.p(0));
    }
    let (mean, _) = spec.general_law.truncated_moments();
    if (mean - 1.0).abs() <= 1e-12 {
        return Extended::Infinite;
    }
    let fp = match extinction_fixed_point(&spec.general_law) {
        Ok(fp) => fp,
        Err(_) => return Extended::Infinite,
    };
    if fp.eps == 0.0 {
        return chi_general(spec);
    }
    let root_at = 1.0 - pgf_deficit(&spec.root_law, fp.eps, 0);
    let root_slope = pgf_1m(&spec.root_law, fp.eps, 1);
    let one_minus_slope = (1.0 - mean) + pgf_deficit(&spec.general_law, fp.eps, 1);
    Extended::Finite(root_at + fp.kappa * root_slope / one_minus_slope)
}

/// Limit of the susceptibility, `1 + mu^2 / (mu - nu)+`.
pub fn chi_graph_limit(dist: &DegreeDistribution) -> Result<Extended> {
    let (mu, nu) = dist.moments()?;
    if !(mu > 0.0) {
        return Err(Error::InvalidDistribution("mean degree must be positive".into()));
    }
    Ok(match classify(mu, nu) {
        CriticalityClass::Subcritical => Extended::Finite(1.0 + mu * mu / (mu - nu)),
        _ => Extended::Infinite,
    })
}

/// Both closed forms of the limit of the modified susceptibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiHatForms {
    /// `g(k) + k g'(k)^2 / (g'(k) - k g''(k))`
    pub primary: f64,
    /// `g(k) + k g'(k) / (1 - g''(k) / mu)`
    pub alternate: f64,
}

/// Evaluates both forms of the modified-susceptibility limit. Infinite at criticality.
pub fn chi_hat_forms(dist: &DegreeDistribution) -> Result<Option<ChiHatForms>> {
    let fp = kappa_fixed_point(dist)?;
    chi_hat_forms_at(dist, fp)
}

/// As [`chi_hat_forms`], reusing an already solved fixed point of `dist`.
pub fn chi_hat_forms_at(dist: &DegreeDistribution, fp: FixedPoint) -> Result<Option<ChiHatForms>> {
    let (mu, nu) = dist.moments()?;
    if !(mu > 0.0) {
        return Err(Error::InvalidDistribution("mean degree must be positive".into()));
    }
    match classify(mu, nu) {
        CriticalityClass::Critical => Ok(None),
        CriticalityClass::Subcritical => {
            let chi = 1.0 + mu * mu / (mu - nu);
            Ok(Some(ChiHatForms {
                primary: chi,
                alternate: chi,
            }))
        }
        CriticalityClass::Supercritical => {
            let kappa = fp.kappa;
            let g0 = 1.0 - pgf_deficit(dist, fp.eps, 0);
            let d1 = pgf_deficit(dist, fp.eps, 1);
            let d2 = pgf_deficit(dist, fp.eps, 2);
            let g1 = mu - d1;
            // g'(k) - k g''(k), regrouped so the O(1) parts cancel exactly
            let denom = (mu - nu) + fp.eps * nu - d1 + kappa * d2;
            let primary = g0 + kappa * g1 * g1 / denom;
            let alternate = g0 + kappa * g1 * mu / ((mu - nu) + d2);
            Ok(Some(ChiHatForms { primary, alternate }))
        }
    }
}

/// Checked primary form; errors if the two forms disagree.
pub fn chi_hat_from_forms(forms: Option<ChiHatForms>) -> Result<Extended> {
    match forms {
        None => Ok(Extended::Infinite),
        Some(forms) => {
            let scale = forms.primary.abs().max(1.0);
            if (forms.primary - forms.alternate).abs() > FORM_TOLERANCE * scale {
                return Err(Error::FormMismatch {
                    first: forms.primary,
                    second: forms.alternate,
                });
            }
            Ok(Extended::Finite(forms.primary))
        }
    }
}

/// Limit of the modified susceptibility.
pub fn chi_hat_graph_limit(dist: &DegreeDistribution) -> Result<Extended> {
    chi_hat_from_forms(chi_hat_forms(dist)?)
}

/// Law of the degree of a vertex outside the giant component,
/// `p_k kappa^k / g(kappa)`. Identity for sub- and critical laws.
pub fn dual_distribution(dist: &DegreeDistribution) -> Result<DegreeDistribution> {
    let fp = kappa_fixed_point(dist)?;
    if fp.eps == 0.0 {
        return Ok(dist.clone());
    }
    let g_kappa = 1.0 - pgf_deficit(dist, fp.eps, 0);
    if !(g_kappa > 0.0) {
        return Err(Error::NoFiniteClusters);
    }
    let log1m = (-fp.eps).ln_1p();
    let mut probs = vec![0.0; dist.kmax() + 1];
    for (k, p) in dist.iter_desc() {
        probs[k] = p * pow_1m(k, log1m) / g_kappa;
    }
    DegreeDistribution::from_probs(probs)
}

/// `(mu_hat, nu_hat) = (kappa^2 mu / g(kappa), kappa^2 g''(kappa) / g(kappa))`.
pub fn dual_moments(dist: &DegreeDistribution) -> Result<(f64, f64)> {
    let (mu, nu) = dist.moments()?;
    let fp = kappa_fixed_point(dist)?;
    if fp.eps == 0.0 {
        return Ok((mu, nu));
    }
    let g_kappa = 1.0 - pgf_deficit(dist, fp.eps, 0);
    if !(g_kappa > 0.0) {
        return Err(Error::NoFiniteClusters);
    }
    let k2 = fp.kappa * fp.kappa;
    let g2 = nu - pgf_deficit(dist, fp.eps, 2);
    Ok((k2 * mu / g_kappa, k2 * g2 / g_kappa))
}

/// Finite-n target `1 + mu_n^2 / (mu_n - nu_n)+`.
pub fn finite_n_prediction(mu_n: f64, nu_n: f64) -> Extended {
    if mu_n == 0.0 {
        return Extended::Finite(1.0);
    }
    if nu_n >= mu_n {
        return Extended::Infinite;
    }
    Extended::Finite(1.0 + mu_n * mu_n / (mu_n - nu_n))
}

/// Metric `|1/x - 1/y|` on `[1, inf]`.
pub fn delta_metric(x: Extended, y: Extended) -> f64 {
    (x.recip() - y.recip()).abs()
}

/// Every prediction for one law.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyticsReport {
    pub mu_inf: f64,
    pub nu_inf: f64,
    pub class: CriticalityClass,
    pub numerically_critical: bool,
    pub kappa: f64,
    pub rho_inf: f64,
    pub chi_inf: Extended,
    pub chi_hat_inf: Extended,
    pub dual: Option<DegreeDistribution>,
    pub mu_hat: Option<f64>,
    pub nu_hat: Option<f64>,
}

impl AnalyticsReport {
    pub fn compute(dist: &DegreeDistribution) -> Result<Self> {
        let (mu, nu) = dist.moments()?;
        let class = classify(mu, nu);
        let gap = (mu - nu).abs();
        let numerically_critical = class != CriticalityClass::Critical && gap < NEAR_CRITICAL_GUARD;
        let fp = kappa_fixed_point(dist)?;
        let rho_inf = survival(dist)?;
        let (chi_inf, chi_hat_inf) = if numerically_critical {
            (Extended::Infinite, Extended::Infinite)
        } else {
            (chi_graph_limit(dist)?, chi_hat_graph_limit(dist)?)
        };
        let (dual, mu_hat, nu_hat) = match (dual_distribution(dist), dual_moments(dist)) {
            (Ok(dual), Ok((mh, nh))) => (Some(dual), Some(mh), Some(nh)),
            (Err(Error::NoFiniteClusters), _) | (_, Err(Error::NoFiniteClusters)) => (None, None, None),
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        Ok(AnalyticsReport {
            mu_inf: mu,
            nu_inf: nu,
            class,
            numerically_critical,
            kappa: fp.kappa,
            rho_inf,
            chi_inf,
            chi_hat_inf,
            dual,
            mu_hat,
            nu_hat,
        })
    }
}
