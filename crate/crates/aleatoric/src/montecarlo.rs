//! Seeded simulation oracle for the analytic modules: urn selection
//! schemes, jury verdict generation, ruin walks, uniform sphere poles,
//! and stopping-strategy checks. Results are deterministic for a given
//! seed and independent of how replicates are partitioned over
//! workers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// A simulation scheme with its parameters. Each replicate yields one
/// summary value; what the value means is documented per variant.
#[derive(Clone, PartialEq, Debug)]
pub enum Scheme {
    /// Per draw, pick urn `i` with weight `ks[i]`, then succeed with
    /// chance `ps[i]`. Replicate value: success rate over `draws`.
    UrnMixture {
        ps: Vec<f64>,
        ks: Vec<f64>,
        draws: u64,
    },
    /// Allocate `round(ks[i] * draws)` draws to urn `i` (no random
    /// urn choice). Replicate value: overall success rate.
    FixedAllocation {
        ps: Vec<f64>,
        ks: Vec<f64>,
        draws: u64,
    },
    /// Group draws into series of `series_len`; each series draws its
    /// urn once. Replicate value: success rate over all series.
    SeriesMixture {
        ps: Vec<f64>,
        ks: Vec<f64>,
        series_len: u64,
        series_count: u64,
    },
    /// One accused per replicate: convictable with chance `k1`, each
    /// of 12 jurors votes correctly with chance `v1` (`v2` for the
    /// absolvable). Replicate value: 2 for a conviction by more than
    /// seven votes, 1 for exactly seven, 0 otherwise.
    Jury12 { k1: f64, v1: f64, v2: f64 },
    /// Fair even-money walk from `alpha` stakes over `n` sets.
    /// Replicate value: 1 if never ruined, else 0.
    RuinWalk { alpha: i64, n: u64 },
    /// Uniformly random axis direction. Replicate value: its polar
    /// distance folded into [0, 90] degrees.
    SpherePoles,
}

impl Scheme {
    /// Stable per-scheme stream tag so different schemes under the
    /// same seed never share a random stream.
    fn stream_tag(&self) -> u64 {
        match self {
            Scheme::UrnMixture { .. } => 1,
            Scheme::FixedAllocation { .. } => 2,
            Scheme::SeriesMixture { .. } => 3,
            Scheme::Jury12 { .. } => 4,
            Scheme::RuinWalk { .. } => 5,
            Scheme::SpherePoles => 6,
        }
    }
}

/// A seeded simulation request.
#[derive(Clone, PartialEq, Debug)]
pub struct SimulationConfig {
    pub seed: u64,
    pub replicates: u64,
    pub scheme: Scheme,
}

/// Order statistics and moments of the replicate values.
#[derive(Clone, PartialEq, Debug)]
pub struct SimulationSummary {
    pub replicates: u64,
    pub mean: f64,
    /// Median of |value - median|.
    pub median_abs_deviation: f64,
    /// (probability, quantile) pairs at 1%, 25%, 50%, 75%, 99%.
    pub quantiles: Vec<(f64, f64)>,
    /// For the jury scheme: rates of values 2 and 1 (conviction by
    /// more than seven votes, by exactly seven).
    pub category_rates: Option<(f64, f64)>,
}

/// Errors raised by the simulation driver.
#[derive(Clone, PartialEq, Debug)]
pub enum SimulationError {
    /// Replicates must be at least one.
    NoReplicates,
    /// Scheme parameters out of range.
    InvalidScheme,
}

impl std::fmt::Display for SimulationError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            SimulationError::NoReplicates => write!(f, "at least one replicate required"),
            SimulationError::InvalidScheme => write!(f, "scheme parameters out of range"),
        }
    }
}

impl std::error::Error for SimulationError {}

fn valid_mixture(ps: &[f64], ks: &[f64]) -> bool {
    ps.len() == ks.len()
        && !ps.is_empty()
        && ps.iter().all(|&p| (0.0..=1.0).contains(&p))
        && ks.iter().all(|&k| (0.0..=1.0).contains(&k))
        && (ks.iter().sum::<f64>() - 1.0).abs() < 1e-9
}

fn pick_urn(rng: &mut ChaCha8Rng, ks: &[f64]) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &k) in ks.iter().enumerate() {
        acc += k;
        if u < acc {
            return i;
        }
    }
    ks.len() - 1
}

/// The per-replicate generator. Each replicate owns an independent
/// random stream keyed by `(seed, scheme, replicate index)`, so the
/// sample set never depends on work partitioning.
fn run_replicate(scheme: &Scheme, seed: u64, replicate: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(scheme.stream_tag() ^ replicate.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    match scheme {
        Scheme::UrnMixture { ps, ks, draws } => {
            let mut hits = 0u64;
            for _ in 0..*draws {
                let i = pick_urn(&mut rng, ks);
                hits += u64::from(rng.gen::<f64>() < ps[i]);
            }
            hits as f64 / *draws as f64
        }
        Scheme::FixedAllocation { ps, ks, draws } => {
            let mut hits = 0u64;
            let mut total = 0u64;
            for (i, &k) in ks.iter().enumerate() {
                let quota = (k * *draws as f64).round() as u64;
                for _ in 0..quota {
                    hits += u64::from(rng.gen::<f64>() < ps[i]);
                }
                total += quota;
            }
            hits as f64 / total as f64
        }
        Scheme::SeriesMixture {
            ps,
            ks,
            series_len,
            series_count,
        } => {
            let mut hits = 0u64;
            for _ in 0..*series_count {
                let p = ps[pick_urn(&mut rng, ks)];
                for _ in 0..*series_len {
                    hits += u64::from(rng.gen::<f64>() < p);
                }
            }
            hits as f64 / (*series_len * *series_count) as f64
        }
        Scheme::Jury12 { k1, v1, v2 } => {
            let convictable = rng.gen::<f64>() < *k1;
            let v = if convictable { *v1 } else { *v2 };
            let mut conviction_votes = 0u32;
            for _ in 0..12 {
                let correct = rng.gen::<f64>() < v;
                conviction_votes += u32::from(correct == convictable);
            }
            match conviction_votes {
                8.. => 2.0,
                7 => 1.0,
                _ => 0.0,
            }
        }
        Scheme::RuinWalk { alpha, n } => {
            let mut holdings = *alpha;
            for _ in 0..*n {
                holdings += if rng.gen::<bool>() { 1 } else { -1 };
                if holdings <= 0 {
                    return 0.0;
                }
            }
            1.0
        }
        Scheme::SpherePoles => {
            // Uniform direction: cos(polar) uniform on [-1, 1]; fold
            // the polar distance into [0, 90] degrees.
            let c: f64 = rng.gen_range(-1.0..1.0);
            let degrees = c.acos().to_degrees();
            if degrees > 90.0 {
                180.0 - degrees
            } else {
                degrees
            }
        }
    }
}

/// Runs the configured scheme over all replicates (in parallel) and
/// summarizes the values. Identical configs give bit-identical
/// summaries regardless of worker count.
///
/// # Errors
///
/// Returns an error for empty configs or invalid scheme parameters.
pub fn simulate_scheme(config: &SimulationConfig) -> Result<SimulationSummary, SimulationError> {
    if config.replicates == 0 {
        return Err(SimulationError::NoReplicates);
    }
    match &config.scheme {
        Scheme::UrnMixture { ps, ks, draws }
        | Scheme::FixedAllocation { ps, ks, draws } => {
            if !valid_mixture(ps, ks) || *draws == 0 {
                return Err(SimulationError::InvalidScheme);
            }
        }
        Scheme::SeriesMixture {
            ps,
            ks,
            series_len,
            series_count,
        } => {
            if !valid_mixture(ps, ks) || *series_len == 0 || *series_count == 0 {
                return Err(SimulationError::InvalidScheme);
            }
        }
        Scheme::Jury12 { k1, v1, v2 } => {
            if ![*k1, *v1, *v2].iter().all(|x| (0.0..=1.0).contains(x)) {
                return Err(SimulationError::InvalidScheme);
            }
        }
        Scheme::RuinWalk { alpha, n } => {
            if *alpha <= 0 || *n == 0 {
                return Err(SimulationError::InvalidScheme);
            }
        }
        Scheme::SpherePoles => {}
    }
    let mut values: Vec<f64> = (0..config.replicates)
        .into_par_iter()
        .map(|r| run_replicate(&config.scheme, config.seed, r))
        .collect();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let category_rates = match config.scheme {
        Scheme::Jury12 { .. } => {
            let c1 = values.iter().filter(|&&v| v == 2.0).count() as f64;
            let c2 = values.iter().filter(|&&v| v == 1.0).count() as f64;
            Some((c1 / values.len() as f64, c2 / values.len() as f64))
        }
        _ => None,
    };
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let quantile = |q: f64| {
        let idx = ((values.len() as f64 - 1.0) * q).round() as usize;
        values[idx]
    };
    let median = quantile(0.5);
    let mut deviations: Vec<f64> = values.iter().map(|v| (v - median).abs()).collect();
    deviations.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let mad = deviations[((deviations.len() as f64 - 1.0) * 0.5).round() as usize];
    Ok(SimulationSummary {
        replicates: config.replicates,
        mean,
        median_abs_deviation: mad,
        quantiles: [0.01, 0.25, 0.5, 0.75, 0.99]
            .iter()
            .map(|&q| (q, quantile(q)))
            .collect(),
        category_rates,
    })
}

/// A stopping rule for the fair even-money game.
#[derive(Copy, Clone, PartialEq, Debug)]
pub enum StopRule {
    /// Never play.
    Immediately,
    /// Bet one unit per round; stop at the first win or after
    /// `max_rounds`.
    AfterFirstWin { max_rounds: u64 },
    /// Double the stake after each loss, restart at one unit after a
    /// win; stop when the next stake exceeds the remaining bankroll
    /// or after `max_rounds`.
    MartingaleDoubling { bankroll: f64, max_rounds: u64 },
}

/// Empirical mean net result of a stopping strategy in the fair game.
#[derive(Clone, PartialEq, Debug)]
pub struct StrategyOutcome {
    pub mean_net: f64,
    pub standard_error: f64,
    /// Set when any replicate hit the horizon instead of its rule.
    pub horizon_hit: bool,
}

/// Plays a fair even-money game under `rule` for each replicate and
/// reports the mean net outcome with its standard error. No stopping
/// rule changes the zero expectation.
///
/// # Errors
///
/// Returns an error for empty configs.
pub fn strategy_invariance(
    seed: u64,
    replicates: u64,
    rule: StopRule,
) -> Result<StrategyOutcome, SimulationError> {
    if replicates == 0 {
        return Err(SimulationError::NoReplicates);
    }
    let nets: Vec<(f64, bool)> = (0..replicates)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(7 ^ r.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            match rule {
                StopRule::Immediately => (0.0, false),
                StopRule::AfterFirstWin { max_rounds } => {
                    let mut net = 0.0;
                    for _ in 0..max_rounds {
                        if rng.gen::<bool>() {
                            return (net + 1.0, false);
                        }
                        net -= 1.0;
                    }
                    (net, true)
                }
                StopRule::MartingaleDoubling {
                    bankroll,
                    max_rounds,
                } => {
                    let mut net = 0.0;
                    let mut stake = 1.0;
                    for _ in 0..max_rounds {
                        if stake > bankroll + net {
                            return (net, false);
                        }
                        if rng.gen::<bool>() {
                            net += stake;
                            stake = 1.0;
                        } else {
                            net -= stake;
                            stake *= 2.0;
                        }
                    }
                    (net, true)
                }
            }
        })
        .collect();
    let n = nets.len() as f64;
    let mean = nets.iter().map(|(x, _)| x).sum::<f64>() / n;
    let var = nets.iter().map(|(x, _)| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0).max(1.0);
    Ok(StrategyOutcome {
        mean_net: mean,
        standard_error: (var / n).sqrt(),
        horizon_hit: nets.iter().any(|&(_, h)| h),
    })
}
