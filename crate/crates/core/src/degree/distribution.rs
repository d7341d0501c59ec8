use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::numeric::compensated_sum;
use crate::{Error, Result};

/// Truncation degree used when a heavy-tailed spec leaves `kmax` open and no
/// smaller cutoff meets [`TRUNCATION_TOLERANCE`].
pub const DEFAULT_KMAX: u64 = 1_000_000;

/// Discarded `sum k^2 p_k` mass beyond `kmax` that `moments` tolerates for
/// laws whose cutoff was chosen automatically.
pub const TRUNCATION_TOLERANCE: f64 = 1e-10;

const SUM_TOLERANCE: f64 = 1e-6;

fn default_kmin() -> u64 {
    2
}

fn default_loglog_kmin() -> u64 {
    3
}

// Internally tagged enums buffer their content, which loses serde_json's
// string-to-integer key coercion; parse the keys by hand.
fn degree_keys<'de, D: serde::Deserializer<'de>>(de: D) -> Result<BTreeMap<u64, f64>, D::Error> {
    let raw = BTreeMap::<String, f64>::deserialize(de)?;
    raw.into_iter()
        .map(|(k, p)| {
            k.trim()
                .parse::<u64>()
                .map(|k| (k, p))
                .map_err(|_| serde::de::Error::custom(format!("degree key `{k}` is not an integer")))
        })
        .collect()
}

/// Serialized description of a degree law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DistSpec {
    /// Finite table `degree -> probability`.
    Explicit {
        #[serde(deserialize_with = "degree_keys")]
        p: BTreeMap<u64, f64>,
    },
    /// Weights `k^(-3-alpha)` on `[kmin, kmax]` with total mass `1 - p1_floor`,
    /// plus an atom `p1_floor` at degree 1.
    PowerTail {
        alpha: f64,
        #[serde(default = "default_kmin")]
        kmin: u64,
        #[serde(default)]
        kmax: Option<u64>,
        #[serde(default)]
        p1_floor: f64,
    },
    /// Weights `k^-3 (ln k)^(-alpha)` on `[kmin, kmax]`, plus the degree-1 atom.
    PowerLogTail {
        alpha: f64,
        #[serde(default = "default_kmin")]
        kmin: u64,
        #[serde(default)]
        kmax: Option<u64>,
        #[serde(default)]
        p1_floor: f64,
    },
    /// Weights `k^-3 (ln k)^-1 (ln ln k)^-2` on `[kmin, kmax]`, plus the degree-1 atom.
    PowerLoglogTail {
        #[serde(default = "default_loglog_kmin")]
        kmin: u64,
        #[serde(default)]
        kmax: Option<u64>,
        #[serde(default)]
        p1_floor: f64,
    },
    /// Law with generating function `(1 - lambda) x + lambda h(x)`.
    LambdaMix { h: Box<DistSpec>, lambda: f64 },
}

/// A probability law on the nonnegative integers with finite support.
///
/// Laws with infinite support are truncated at `kmax` and renormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    probs: Vec<f64>,
    spec: DistSpec,
    renormalized: bool,
    truncation_error: f64,
    auto_kmax: bool,
}

#[derive(Clone, Copy)]
enum Tail {
    Power(f64),
    PowerLog(f64),
    PowerLoglog,
}

impl Tail {
    fn weight(self, k: f64) -> f64 {
        match self {
            Tail::Power(alpha) => k.powf(-3.0 - alpha),
            Tail::PowerLog(alpha) => k.powi(-3) * k.ln().powf(-alpha),
            Tail::PowerLoglog => {
                let l = k.ln();
                k.powi(-3) / (l * l.ln().powi(2))
            }
        }
    }

    /// Integral of `k^2 w(k)` over `[kmax, inf)`.
    fn k2_tail_integral(self, kmax: f64) -> f64 {
        match self {
            Tail::Power(alpha) => kmax.powf(-alpha) / alpha,
            Tail::PowerLog(alpha) if alpha > 1.0 => kmax.ln().powf(1.0 - alpha) / (alpha - 1.0),
            Tail::PowerLog(_) => f64::INFINITY,
            Tail::PowerLoglog => 1.0 / kmax.ln().ln(),
        }
    }
}

impl DegreeDistribution {
    /// Law from a `(degree, probability)` table.
    pub fn explicit(entries: &[(u64, f64)]) -> Result<Self> {
        let map: BTreeMap<u64, f64> = entries.iter().copied().collect();
        Self::from_spec(&DistSpec::Explicit { p: map })
    }

    /// Law from a dense probability vector indexed by degree.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        let p = probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0.0)
            .map(|(k, &p)| (k as u64, p))
            .collect();
        Self::build(probs, DistSpec::Explicit { p }, 0.0, false)
    }

    pub fn from_spec(spec: &DistSpec) -> Result<Self> {
        match spec {
            DistSpec::Explicit { p } => {
                let kmax = p.keys().copied().max().unwrap_or(0) as usize;
                let mut probs = vec![0.0; kmax + 1];
                for (&k, &pk) in p {
                    probs[k as usize] = pk;
                }
                Self::build(probs, spec.clone(), 0.0, false)
            }
            DistSpec::PowerTail {
                alpha,
                kmin,
                kmax,
                p1_floor,
            } => {
                if !(*alpha > 0.0) {
                    return Err(Error::InvalidDistribution(format!(
                        "power_tail needs alpha > 0, got {alpha}"
                    )));
                }
                Self::tailed(spec, Tail::Power(*alpha), *kmin, *kmax, *p1_floor)
            }
            DistSpec::PowerLogTail {
                alpha,
                kmin,
                kmax,
                p1_floor,
            } => {
                if *kmin < 2 {
                    return Err(Error::InvalidDistribution(
                        "power_log_tail needs kmin >= 2".into(),
                    ));
                }
                Self::tailed(spec, Tail::PowerLog(*alpha), *kmin, *kmax, *p1_floor)
            }
            DistSpec::PowerLoglogTail {
                kmin,
                kmax,
                p1_floor,
            } => {
                if *kmin < 3 {
                    return Err(Error::InvalidDistribution(
                        "power_loglog_tail needs kmin >= 3".into(),
                    ));
                }
                Self::tailed(spec, Tail::PowerLoglog, *kmin, *kmax, *p1_floor)
            }
            DistSpec::LambdaMix { h, lambda } => {
                let base = Self::from_spec(h)?;
                let mut mixed = base.lambda_mix(*lambda)?;
                mixed.spec = spec.clone();
                Ok(mixed)
            }
        }
    }

    fn tailed(
        spec: &DistSpec,
        tail: Tail,
        kmin: u64,
        kmax: Option<u64>,
        p1_floor: f64,
    ) -> Result<Self> {
        if !(0.0..1.0).contains(&p1_floor) {
            return Err(Error::InvalidDistribution(format!(
                "p1_floor must lie in [0, 1), got {p1_floor}"
            )));
        }
        if kmin < 1 {
            return Err(Error::InvalidDistribution("kmin must be >= 1".into()));
        }
        let (kmax, auto) = match kmax {
            Some(k) => (k, false),
            None => (Self::choose_kmax(tail, kmin, p1_floor), true),
        };
        if kmax < kmin {
            return Err(Error::InvalidDistribution(format!(
                "kmax {kmax} below kmin {kmin}"
            )));
        }
        let weights: Vec<f64> = (kmin..=kmax).map(|k| tail.weight(k as f64)).collect();
        let total = compensated_sum(weights.iter().rev().copied());
        let scale = (1.0 - p1_floor) / total;
        let mut probs = vec![0.0; kmax as usize + 1];
        for (k, w) in (kmin..=kmax).zip(&weights) {
            probs[k as usize] = w * scale;
        }
        probs[1] += p1_floor;
        let discarded = scale * tail.k2_tail_integral(kmax as f64);
        let mut dist = Self::build(probs, spec.clone(), discarded, true)?;
        dist.auto_kmax = auto;
        Ok(dist)
    }

    fn choose_kmax(tail: Tail, kmin: u64, p1_floor: f64) -> u64 {
        let mut kmax = kmin.max(16);
        while kmax < DEFAULT_KMAX {
            let total = compensated_sum((kmin..=kmax).rev().map(|k| tail.weight(k as f64)));
            let discarded = (1.0 - p1_floor) / total * tail.k2_tail_integral(kmax as f64);
            if discarded < TRUNCATION_TOLERANCE {
                return kmax;
            }
            kmax *= 2;
        }
        DEFAULT_KMAX
    }

    fn build(
        mut probs: Vec<f64>,
        spec: DistSpec,
        truncation_error: f64,
        mut renormalized: bool,
    ) -> Result<Self> {
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidDistribution(
                "probabilities must be finite and nonnegative".into(),
            ));
        }
        let total = compensated_sum(probs.iter().rev().copied());
        if total <= 0.0 || (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        if total != 1.0 {
            for p in &mut probs {
                *p /= total;
            }
            renormalized = true;
        }
        while probs.len() > 1 && probs.last() == Some(&0.0) {
            probs.pop();
        }
        Ok(DegreeDistribution {
            probs,
            spec,
            renormalized,
            truncation_error,
            auto_kmax: false,
        })
    }

    pub fn spec(&self) -> &DistSpec {
        &self.spec
    }

    /// Largest degree with positive probability.
    pub fn kmax(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn p(&self, k: usize) -> f64 {
        self.probs.get(k).copied().unwrap_or(0.0)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn is_renormalized(&self) -> bool {
        self.renormalized
    }

    /// Estimated `sum k^2 p_k` of the untruncated law beyond `kmax`.
    pub fn truncation_error(&self) -> f64 {
        self.truncation_error
    }

    /// Nonzero `(k, p_k)` pairs in descending degree order.
    pub fn iter_desc(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &p)| p > 0.0)
            .map(|(k, &p)| (k, p))
    }

    /// `(mu, nu)` = `(E D, E D(D-1))`.
    ///
    /// Fails when the cutoff was chosen automatically and the discarded second
    /// moment exceeds [`TRUNCATION_TOLERANCE`].
    pub fn moments(&self) -> Result<(f64, f64)> {
        if self.auto_kmax && !(self.truncation_error < TRUNCATION_TOLERANCE) {
            return Err(Error::NonConvergence {
                what: "second moment under truncation",
                iterations: self.kmax(),
            });
        }
        Ok(self.truncated_moments())
    }

    /// Moments of the truncated law, whatever the discarded tail.
    pub fn truncated_moments(&self) -> (f64, f64) {
        let mu = compensated_sum(self.iter_desc().map(|(k, p)| k as f64 * p));
        let nu = compensated_sum(self.iter_desc().map(|(k, p)| (k * k.saturating_sub(1)) as f64 * p));
        (mu, nu)
    }

    /// The shifted size-biased law `P(D* = k) = (k+1) p_{k+1} / mu`.
    pub fn size_biased(&self) -> Result<Self> {
        let (mu, _) = self.truncated_moments();
        if !(mu > 0.0) {
            return Err(Error::InvalidDistribution(
                "size-biased law needs a positive mean".into(),
            ));
        }
        let probs: Vec<f64> = (0..self.kmax())
            .map(|k| (k + 1) as f64 * self.probs[k + 1] / mu)
            .collect();
        let probs = if probs.is_empty() { vec![1.0] } else { probs };
        Self::from_probs(probs)
    }

    /// Law with generating function `(1 - lambda) x + lambda h(x)`, `h = self`.
    ///
    /// `self` must be supercritical on its own.
    pub fn lambda_mix(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Error::InvalidDistribution(format!(
                "lambda must lie in (0, 1], got {lambda}"
            )));
        }
        let (h1, h2) = self.truncated_moments();
        if !(h2 > h1) {
            return Err(Error::NotSupercritical(format!(
                "base law needs h''(1) > h'(1), got {h2} <= {h1}"
            )));
        }
        let mut probs: Vec<f64> = self.probs.iter().map(|p| lambda * p).collect();
        if probs.len() < 2 {
            probs.resize(2, 0.0);
        }
        probs[1] += 1.0 - lambda;
        let spec = DistSpec::LambdaMix {
            h: Box::new(self.spec.clone()),
            lambda,
        };
        let mut mixed = Self::build(probs, spec, lambda * self.truncation_error, self.renormalized)?;
        mixed.auto_kmax = self.auto_kmax;
        Ok(mixed)
    }

    /// Sparse `degree -> probability` table of the nonzero entries.
    pub fn to_map(&self) -> BTreeMap<u64, f64> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(k, &p)| (k as u64, p))
            .collect()
    }
}

impl Serialize for DegreeDistribution {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DistSpec::Explicit { p: self.to_map() }.serialize(serializer)
    }
}
