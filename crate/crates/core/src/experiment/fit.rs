use serde::Serialize;

use crate::{Error, Result};

/// Least-squares power law `value ~ exp(intercept) * distance^(-exponent)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentFit {
    /// Negated log-log slope, positive for a diverging quantity.
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Smallest and largest distance used.
    pub window: (f64, f64),
    pub points: usize,
}

impl ExponentFit {
    /// Prefactor `exp(intercept)`.
    pub fn constant(&self) -> f64 {
        self.intercept.exp()
    }
}

/// Fits `ln value` against `ln distance`. Needs at least four points spanning a decade.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<ExponentFit> {
    if points.len() < 4 {
        return Err(Error::DegenerateFit(format!(
            "need at least 4 points, got {}",
            points.len()
        )));
    }
    if let Some(&(x, y)) = points
        .iter()
        .find(|(x, y)| !(x.is_finite() && *x > 0.0 && y.is_finite() && *y > 0.0))
    {
        return Err(Error::DegenerateFit(format!(
            "point ({x}, {y}) is not positive and finite"
        )));
    }
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(0.0, f64::max);
    // geometric grids land a few ulps short of a full decade
    if hi / lo < 10.0 * (1.0 - 1e-9) {
        return Err(Error::DegenerateFit(format!(
            "window [{lo}, {hi}] spans less than a decade"
        )));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(ExponentFit {
        exponent: -slope,
        intercept,
        r_squared,
        window: (lo, hi),
        points: points.len(),
    })
}
