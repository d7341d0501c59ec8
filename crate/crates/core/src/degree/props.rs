//! Property tests tying realized sequences to their laws.

use proptest::prelude::*;
use crate::{DegreeDistribution, DegreeSequence};

fn law() -> impl Strategy<Value = DegreeDistribution> {
    prop::collection::vec(0.0f64..1.0, 2..9).prop_filter_map("nonzero", |w| {
        let total: f64 = w.iter().sum();
        if total <= 0.0 {
            return None;
        }
        let probs: Vec<f64> = w.iter().map(|x| x / total).collect();
        DegreeDistribution::from_probs(probs).ok()
    })
}

proptest! {
    #[test]
    fn realized_counts_track_law(dist in law(), n in 1usize..5000) {
        let seq = DegreeSequence::realize(&dist, n).unwrap();
        prop_assert_eq!(seq.n(), n);
        prop_assert_eq!(seq.degrees().iter().sum::<u64>() % 2, 0);
        let total: usize = seq.counts().values().sum();
        prop_assert_eq!(total, n);
        for k in 0..=dist.kmax() + 1 {
            let nk = seq.counts().get(&(k as u64)).copied().unwrap_or(0);
            prop_assert!((nk as f64 / n as f64 - dist.p(k)).abs() <= 2.0 / n as f64);
        }
    }

    #[test]
    fn sequence_invariants(degrees in prop::collection::vec(0u64..20, 1..200)) {
        let mut degrees = degrees;
        if degrees.iter().sum::<u64>() % 2 == 1 {
            degrees[0] += 1;
        }
        let seq = DegreeSequence::new(degrees.clone()).unwrap();
        let weighted: u64 = seq.counts().iter().map(|(k, c)| k * *c as u64).sum();
        prop_assert_eq!(weighted, 2 * seq.m());
        prop_assert_eq!(seq.counts().values().sum::<usize>(), degrees.len());
    }
}

#[test]
fn sequence_moments_converge_to_law_moments() {
    let dist = DegreeDistribution::explicit(&[(0, 0.1), (1, 0.45), (2, 0.2), (4, 0.25)]).unwrap();
    let (mu, nu) = dist.moments().unwrap();
    let kmax = dist.kmax() as f64;
    let c = kmax * kmax + kmax;
    for n in [100usize, 1000, 10_000] {
        let (mu_n, nu_n) = DegreeSequence::realize(&dist, n).unwrap().moments();
        assert!((mu_n - mu).abs() <= c / n as f64, "mu at n={n}");
        assert!((nu_n - nu).abs() <= c / n as f64, "nu at n={n}");
    }
}
