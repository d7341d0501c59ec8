//! Analytic sweeps through the lambda-family toward criticality.
//!
//! Mixing a supercritical base law `h` with degree-1 vertices gives the law
//! with generating function `(1 - lambda) x + lambda h(x)`, which is critical at
//! `lambda_c = 1 / (1 - h'(1) + h''(1))`.

use serde::Serialize;

use super::fit::{fit_exponent, ExponentFit};
use crate::analytics::{chi_graph_limit, chi_hat_forms_at, chi_hat_from_forms, kappa_fixed_point};
use crate::degree::DegreeDistribution;
use crate::{Error, Extended, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub lambda: f64,
    /// `|lambda - lambda_c|`
    pub distance: f64,
    pub mu_lambda: f64,
    pub nu_lambda: f64,
    pub kappa_lambda: f64,
    pub chi_inf: Extended,
    pub chi_hat_inf: Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Subcritical,
    Supercritical,
}

pub fn lambda_family(h: &DegreeDistribution, lambda: f64) -> Result<DegreeDistribution> {
    h.lambda_mix(lambda)
}

/// `lambda_c = 1 / (1 - h'(1) + h''(1))`.
pub fn lambda_critical(h: &DegreeDistribution) -> Result<f64> {
    let (h1, h2) = h.moments()?;
    if !(h2 > h1) {
        return Err(Error::NotSupercritical(format!(
            "base law needs h''(1) > h'(1), got {h2} <= {h1}"
        )));
    }
    Ok(1.0 / (1.0 - h1 + h2))
}

/// `lambda_c mu_c^2`, the prefactor of the `1 / |lambda - lambda_c|` divergence.
pub fn critical_constant(h: &DegreeDistribution) -> Result<f64> {
    let (h1, _) = h.moments()?;
    let lc = lambda_critical(h)?;
    let mu_c = 1.0 - lc + lc * h1;
    Ok(lc * mu_c * mu_c)
}

pub fn sweep_point(h: &DegreeDistribution, lambda: f64) -> Result<SweepPoint> {
    let lc = lambda_critical(h)?;
    let (h1, h2) = h.moments()?;
    let dist = lambda_family(h, lambda)?;
    let fp = kappa_fixed_point(&dist)?;
    Ok(SweepPoint {
        lambda,
        distance: (lambda - lc).abs(),
        mu_lambda: 1.0 - lambda + lambda * h1,
        nu_lambda: lambda * h2,
        kappa_lambda: fp.kappa,
        chi_inf: chi_graph_limit(&dist)?,
        chi_hat_inf: chi_hat_from_forms(chi_hat_forms_at(&dist, fp)?)?,
    })
}

/// Evaluates the limits at each `lambda` (which must avoid `lambda_c`).
pub fn critical_sweep(h: &DegreeDistribution, lambdas: &[f64]) -> Result<Vec<SweepPoint>> {
    let lc = lambda_critical(h)?;
    if let Some(&bad) = lambdas.iter().find(|&&l| l == lc) {
        return Err(Error::InvalidArgument(format!("grid contains lambda_c = {bad}")));
    }
    lambdas.iter().map(|&l| sweep_point(h, l)).collect()
}

/// `points` values of `lambda` on one side of `lambda_c`, with `|lambda - lambda_c|`
/// geometrically spaced over `window`.
pub fn side_grid(lambda_c: f64, side: Side, window: (f64, f64), points: usize) -> Vec<f64> {
    let (lo, hi) = (window.0.ln(), window.1.ln());
    (0..points)
        .map(|i| {
            let t = if points > 1 { i as f64 / (points - 1) as f64 } else { 0.0 };
            let distance = (lo + t * (hi - lo)).exp();
            match side {
                Side::Subcritical => lambda_c - distance,
                Side::Supercritical => lambda_c + distance,
            }
        })
        .collect()
}

/// Sweep on one side with the fitted divergence exponent.
#[derive(Debug, Clone, Serialize)]
pub struct SideFit {
    pub side: Side,
    pub lambda_c: f64,
    pub points: Vec<SweepPoint>,
    pub fit: ExponentFit,
    /// `|lambda - lambda_c| * value` at the point closest to `lambda_c`.
    pub leading_constant: f64,
}

impl SweepPoint {
    /// `chi_inf` below criticality, `chi_hat_inf` above.
    pub fn diverging_value(&self, side: Side) -> Extended {
        match side {
            Side::Subcritical => self.chi_inf,
            Side::Supercritical => self.chi_hat_inf,
        }
    }
}

pub fn sweep_and_fit(
    h: &DegreeDistribution,
    side: Side,
    window: (f64, f64),
    points: usize,
) -> Result<SideFit> {
    let lambda_c = lambda_critical(h)?;
    let lambdas: Vec<f64> = side_grid(lambda_c, side, window, points)
        .into_iter()
        .filter(|l| *l > 0.0 && *l <= 1.0)
        .collect();
    let sweep = critical_sweep(h, &lambdas)?;
    let pairs: Vec<(f64, f64)> = sweep
        .iter()
        .map(|p| (p.distance, p.diverging_value(side).to_f64()))
        .collect();
    let fit = fit_exponent(&pairs)?;
    let closest = sweep
        .iter()
        .min_by(|a, b| a.distance.total_cmp(&b.distance))
        .expect("fit needs points");
    let leading_constant = closest.distance * closest.diverging_value(side).to_f64();
    Ok(SideFit {
        side,
        lambda_c,
        points: sweep,
        fit,
        leading_constant,
    })
}

/// Supercritical exponents fitted over windows `[w / 10, w]` for each `w` in
/// `upper_edges`, for watching the exponent drift as the window shrinks.
pub fn shrinking_window_exponents(
    h: &DegreeDistribution,
    upper_edges: &[f64],
    points: usize,
) -> Result<Vec<ExponentFit>> {
    upper_edges
        .iter()
        .map(|&w| sweep_and_fit(h, Side::Supercritical, (w / 10.0, w), points).map(|f| f.fit))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic() -> DegreeDistribution {
        DegreeDistribution::explicit(&[(3, 1.0)]).unwrap()
    }

    #[test]
    fn lambda_critical_examples() {
        assert_eq!(lambda_critical(&cubic()).unwrap(), 0.25);
        let quartic = DegreeDistribution::explicit(&[(4, 1.0)]).unwrap();
        assert_eq!(lambda_critical(&quartic).unwrap(), 1.0 / 9.0);
        let at_c = lambda_family(&cubic(), 0.25).unwrap();
        let (mu, nu) = at_c.moments().unwrap();
        assert_eq!((mu, nu), (1.5, 1.5));
        assert_eq!(critical_constant(&cubic()).unwrap(), 0.5625);
        let sub = DegreeDistribution::explicit(&[(1, 0.8), (3, 0.2)]).unwrap();
        assert!(lambda_critical(&sub).is_err());
    }

    #[test]
    fn sweep_examples() {
        let pts = critical_sweep(&cubic(), &[0.2, 0.5]).unwrap();
        assert!((pts[0].chi_inf.finite().unwrap() - 10.8).abs() < 1e-12);
        assert_eq!(pts[0].kappa_lambda, 1.0);
        assert!(pts[1].chi_inf.is_infinite());
        assert!((pts[1].chi_hat_inf.finite().unwrap() - 17.0 / 27.0).abs() < 1e-12);
        assert!((pts[1].kappa_lambda - 1.0 / 3.0).abs() < 1e-12);
        assert!(critical_sweep(&cubic(), &[0.25]).is_err());
    }

    #[test]
    fn subcritical_product_approaches_constant() {
        let grid = side_grid(0.25, Side::Subcritical, (1e-6, 1e-1), 12);
        let pts = critical_sweep(&cubic(), &grid).unwrap();
        let products: Vec<f64> = pts.iter().map(|p| p.distance * p.chi_inf.to_f64()).collect();
        // grid runs from nearest to farthest: products decrease away from lambda_c
        for w in products.windows(2) {
            assert!(w[0] >= w[1]);
        }
        assert!((products[0] - 0.5625).abs() < 1e-4);
    }

    #[test]
    fn kappa_nonincreasing_in_lambda() {
        let lambdas: Vec<f64> = (26..=100).map(|i| i as f64 / 100.0).collect();
        let pts = critical_sweep(&cubic(), &lambdas).unwrap();
        for w in pts.windows(2) {
            assert!(w[1].kappa_lambda <= w[0].kappa_lambda);
        }
    }
}
