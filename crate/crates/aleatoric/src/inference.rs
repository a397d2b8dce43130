//! Inference on unknown chances: posterior rules, confidence-style
//! intervals for a chance, comparison of observed ratios, weights of
//! results, empirical moduli of measurement series, trimmed means,
//! empirical probability tables, and a serial-dependence test.

use crate::deviation::{p_of_t, t_of_p};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Beta, ContinuousCDF};

/// A recorded count of successes out of trials.
#[derive(Clone, PartialEq, Debug)]
pub struct BinomialSeries {
    pub m: u64,
    pub n: u64,
    pub label: String,
}

impl BinomialSeries {
    pub fn new(m: u64, n: u64, label: &str) -> Result<Self, InferenceError> {
        if n > m {
            return Err(InferenceError::CountTooLarge);
        }
        Ok(BinomialSeries {
            m,
            n,
            label: label.to_string(),
        })
    }

    /// Observed ratio `n/m`.
    pub fn ratio(&self) -> f64 {
        self.n as f64 / self.m as f64
    }
}

/// An ordered list of measured values.
#[derive(Clone, PartialEq, Debug)]
pub struct EmpiricalSeries {
    pub values: Vec<f64>,
    pub label: String,
}

impl EmpiricalSeries {
    pub fn new(values: Vec<f64>, label: &str) -> Result<Self, InferenceError> {
        if values.is_empty() {
            return Err(InferenceError::EmptySeries);
        }
        Ok(EmpiricalSeries {
            values,
            label: label.to_string(),
        })
    }
}

/// Outcome of a two-ratio or two-mean comparison.
///
/// `pi` is the posterior-style probability that the underlying
/// difference has the sign (or exceeds the margin) suggested by the
/// data; it equals `(1 + p) / 2` or `(1 - p) / 2` depending on whether
/// the tested margin lies inside the observed difference. The
/// `preregistered` flag records whether the comparison was planned
/// before seeing the data; when false, `pi` has no objective
/// frequency interpretation and should be read as a caution, not a
/// conclusion.
#[derive(Clone, PartialEq, Debug)]
pub struct ComparisonResult {
    pub delta: f64,
    pub t: f64,
    pub p: f64,
    pub pi: f64,
    pub small_sample_warning: bool,
    pub preregistered: bool,
}

impl ComparisonResult {
    /// Marks the comparison as planned in advance of the data.
    pub fn with_preregistration(mut self, preregistered: bool) -> Self {
        self.preregistered = preregistered;
        self
    }
}

/// Errors raised by the inference operations.
#[derive(Clone, PartialEq, Debug)]
pub enum InferenceError {
    /// Success count exceeds trial count.
    CountTooLarge,
    /// A series with zero or all successes has no interior interval.
    DegenerateCounts,
    /// Empty value list.
    EmptySeries,
    /// All prior-likelihood products vanish.
    UndefinedPosterior,
    /// Parallel lists differ in length.
    LengthMismatch,
    /// Probability argument outside `[0, 1)`.
    BadProbability,
    /// A series of identical values has no finite dispersion scale.
    ZeroDispersion,
    /// Trimming would remove every value.
    OverTrimmed,
    /// Too few values for the requested operation.
    TooShort,
    /// The part series must be strictly smaller than the whole.
    PartNotSmaller,
}

impl std::fmt::Display for InferenceError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            InferenceError::CountTooLarge => write!(f, "success count exceeds trial count"),
            InferenceError::DegenerateCounts => {
                write!(f, "series with zero or all successes has no interior interval")
            }
            InferenceError::EmptySeries => write!(f, "series has no values"),
            InferenceError::UndefinedPosterior => {
                write!(f, "all prior-likelihood products are zero")
            }
            InferenceError::LengthMismatch => write!(f, "parallel lists differ in length"),
            InferenceError::BadProbability => write!(f, "probability argument out of range"),
            InferenceError::ZeroDispersion => write!(f, "series has zero dispersion"),
            InferenceError::OverTrimmed => write!(f, "trimming removes every value"),
            InferenceError::TooShort => write!(f, "series too short for this operation"),
            InferenceError::PartNotSmaller => {
                write!(f, "part series must be strictly smaller than the whole")
            }
        }
    }
}

impl std::error::Error for InferenceError {}

/// Posterior chances of hypotheses in proportion to prior times
/// likelihood.
///
/// # Errors
///
/// Returns an error on length mismatch or if every product vanishes.
pub fn bayes_discrete(
    priors: &[f64],
    likelihoods: &[f64],
) -> Result<Vec<f64>, InferenceError> {
    if priors.len() != likelihoods.len() {
        return Err(InferenceError::LengthMismatch);
    }
    let products: Vec<f64> = priors
        .iter()
        .zip(likelihoods)
        .map(|(p, l)| p * l)
        .collect();
    let total: f64 = products.iter().sum();
    if total <= 0.0 {
        return Err(InferenceError::UndefinedPosterior);
    }
    Ok(products.into_iter().map(|x| x / total).collect())
}

/// Predictive chance of a further success: the posterior-weighted mean
/// of the per-hypothesis likelihoods.
pub fn predictive_chance(
    posteriors: &[f64],
    likelihoods: &[f64],
) -> Result<f64, InferenceError> {
    if posteriors.len() != likelihoods.len() {
        return Err(InferenceError::LengthMismatch);
    }
    Ok(posteriors.iter().zip(likelihoods).map(|(p, l)| p * l).sum())
}

/// Posterior summary of a chance after `n` successes in `m` trials
/// under a uniform prior.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct SuccessionRule {
    /// Posterior mean `(n+1)/(m+2)` — the chance of one more success.
    pub mean: f64,
    /// Posterior mode `n/m` (reported as 1/2 for `m = 0`).
    pub mode: f64,
    /// Posterior median.
    pub median: f64,
}

/// See [`SuccessionRule`].
///
/// # Errors
///
/// Returns an error if `n > m`.
pub fn succession_rule(n: u64, m: u64) -> Result<SuccessionRule, InferenceError> {
    if n > m {
        return Err(InferenceError::CountTooLarge);
    }
    let beta = Beta::new(n as f64 + 1.0, (m - n) as f64 + 1.0).unwrap();
    // Bisection on the posterior cumulative: the library inverse is
    // only good to about 1e-5.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if beta.cdf(mid) < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(SuccessionRule {
        mean: (n as f64 + 1.0) / (m as f64 + 2.0),
        mode: if m == 0 { 0.5 } else { n as f64 / m as f64 },
        median: 0.5 * (lo + hi),
    })
}

/// Half-width of the interval containing the unknown chance around the
/// observed ratio with probability `prob`:
/// `l = t sqrt(2 n (m - n)) / (m sqrt(m))`.
///
/// # Errors
///
/// Returns an error for degenerate counts or a bad probability.
pub fn chance_interval(series: &BinomialSeries, prob: f64) -> Result<f64, InferenceError> {
    if series.n == 0 || series.n == series.m {
        return Err(InferenceError::DegenerateCounts);
    }
    let t = t_of_p(prob).map_err(|_| InferenceError::BadProbability)?;
    let m = series.m as f64;
    let n = series.n as f64;
    Ok(t * (2.0 * n * (m - n)).sqrt() / (m * m.sqrt()))
}

/// Standardized deviation `t` at which the chance would sit `l` away
/// from the observed ratio, and the matching interval probability.
pub fn chance_interval_probability(
    series: &BinomialSeries,
    l: f64,
) -> Result<(f64, f64), InferenceError> {
    if series.n == 0 || series.n == series.m {
        return Err(InferenceError::DegenerateCounts);
    }
    let m = series.m as f64;
    let n = series.n as f64;
    let t = l * m * m.sqrt() / (2.0 * n * (m - n)).sqrt();
    Ok((t, p_of_t(t).map_err(|_| InferenceError::BadProbability)?))
}

/// Weight of an observed ratio: `m sqrt(m) / sqrt(2 n (m - n))`, the
/// reciprocal of the interval half-width per unit of `t`.
///
/// # Errors
///
/// Returns an error for degenerate counts.
pub fn weight_of_chance(series: &BinomialSeries) -> Result<f64, InferenceError> {
    if series.n == 0 || series.n == series.m {
        return Err(InferenceError::DegenerateCounts);
    }
    let m = series.m as f64;
    let n = series.n as f64;
    Ok(m * m.sqrt() / (2.0 * n * (m - n)).sqrt())
}

/// Half-width of the window containing a *future* ratio over `m_prime`
/// further trials, around the observed ratio:
/// `l' = t sqrt(2 n (m - n) (m + m')) / (m sqrt(m m'))`.
///
/// As `m_prime` grows without bound this tends to the
/// [`chance_interval`] half-width.
///
/// # Errors
///
/// Returns an error for degenerate counts or a bad probability.
pub fn predict_future_ratio(
    series: &BinomialSeries,
    m_prime: u64,
    prob: f64,
) -> Result<f64, InferenceError> {
    if series.n == 0 || series.n == series.m || m_prime == 0 {
        return Err(InferenceError::DegenerateCounts);
    }
    let t = t_of_p(prob).map_err(|_| InferenceError::BadProbability)?;
    let m = series.m as f64;
    let n = series.n as f64;
    let mp = m_prime as f64;
    Ok(t * (2.0 * n * (m - n) * (m + mp)).sqrt() / (m * (m * mp).sqrt()))
}

fn comparison_from_t(
    delta: f64,
    t: f64,
    inside: bool,
    small: bool,
) -> Result<ComparisonResult, InferenceError> {
    let p = p_of_t(t.abs()).map_err(|_| InferenceError::BadProbability)?;
    let pi = if inside { (1.0 + p) / 2.0 } else { (1.0 - p) / 2.0 };
    Ok(ComparisonResult {
        delta,
        t: t.abs(),
        p,
        pi,
        small_sample_warning: small,
        preregistered: false,
    })
}

/// Compares the ratios of two independent series: is the difference of
/// the underlying chances larger than `alpha` (in the direction
/// observed)?
///
/// The standardized deviation uses both dispersions symmetrically:
/// `t = l' m m' sqrt(m m') / sqrt(2 [m^3 n'(m'-n') + m'^3 n(m-n)])`
/// with `l' = |delta - alpha|`.
///
/// # Errors
///
/// Returns an error for degenerate counts.
pub fn compare_two_series(
    s1: &BinomialSeries,
    s2: &BinomialSeries,
    alpha: f64,
) -> Result<ComparisonResult, InferenceError> {
    let delta = s1.ratio() - s2.ratio();
    compare_two_series_at(s1, s2, (delta.abs() - alpha).abs()).map(|mut r| {
        r.delta = delta;
        if alpha > delta.abs() {
            r.pi = (1.0 - r.p) / 2.0;
        }
        r
    })
}

/// Same standardized comparison as [`compare_two_series`], but
/// evaluated at a caller-supplied deviation `l_prime` instead of the
/// observed difference — useful for asking how surprising a stated
/// margin would be.
pub fn compare_two_series_at(
    s1: &BinomialSeries,
    s2: &BinomialSeries,
    l_prime: f64,
) -> Result<ComparisonResult, InferenceError> {
    for s in [s1, s2] {
        if s.n == 0 || s.n == s.m {
            return Err(InferenceError::DegenerateCounts);
        }
    }
    let (m, n) = (s1.m as f64, s1.n as f64);
    let (mp, np) = (s2.m as f64, s2.n as f64);
    let denom = (2.0 * (m.powi(3) * np * (mp - np) + mp.powi(3) * n * (m - n))).sqrt();
    let t = l_prime * m * mp * (m * mp).sqrt() / denom;
    let small = s1.n.min(s1.m - s1.n).min(s2.n.min(s2.m - s2.n)) < 100;
    comparison_from_t(s1.ratio() - s2.ratio(), t, true, small)
}

/// Compares the rates of two categories partitioning one parent
/// series, under the pooled common chance.
///
/// # Errors
///
/// Returns an error for degenerate pooled counts.
pub fn compare_categories(
    s1: &BinomialSeries,
    s2: &BinomialSeries,
) -> Result<ComparisonResult, InferenceError> {
    let m = (s1.m + s2.m) as f64;
    let n = (s1.n + s2.n) as f64;
    if n == 0.0 || n == m {
        return Err(InferenceError::DegenerateCounts);
    }
    let pq = (n / m) * (1.0 - n / m);
    let delta = s1.ratio() - s2.ratio();
    let t = delta.abs() / (2.0 * pq * (1.0 / s1.m as f64 + 1.0 / s2.m as f64)).sqrt();
    let small = s1.m.min(s2.m) < 100;
    comparison_from_t(delta, t, true, small)
}

/// Half-width at probability `prob` of the fortuitous gap between a
/// nested part of a series and the whole:
/// `l = t sqrt(2 n (m - n) (m - m1) / (m^3 m1))`.
///
/// # Errors
///
/// Returns an error if the part is not strictly smaller, or for
/// degenerate counts.
pub fn partial_vs_total(
    part_m: u64,
    total: &BinomialSeries,
    prob: f64,
) -> Result<f64, InferenceError> {
    if part_m >= total.m || part_m == 0 {
        return Err(InferenceError::PartNotSmaller);
    }
    if total.n == 0 || total.n == total.m {
        return Err(InferenceError::DegenerateCounts);
    }
    let t = t_of_p(prob).map_err(|_| InferenceError::BadProbability)?;
    let m = total.m as f64;
    let n = total.n as f64;
    let m1 = part_m as f64;
    Ok(t * (2.0 * n * (m - n) * (m - m1) / (m.powi(3) * m1)).sqrt())
}

/// Empirical dispersion summary of a measurement series.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct EmpiricalModulus {
    /// Arithmetic mean of the values.
    pub mean: f64,
    /// Estimated modulus `gamma = sqrt(m / (2 sum (x - M)^2))`.
    pub gamma: f64,
    /// Weight of the final mean, `gamma sqrt(m) = m / sqrt(2 sum sq)`.
    pub weight: f64,
    /// Set when the series has (numerically) zero dispersion, making
    /// the weight infinite.
    pub infinite_weight: bool,
}

/// Mean, modulus, and weight of a series of raw values.
///
/// # Errors
///
/// Returns an error for fewer than two values.
pub fn empirical_modulus(series: &EmpiricalSeries) -> Result<EmpiricalModulus, InferenceError> {
    if series.values.len() < 2 {
        return Err(InferenceError::TooShort);
    }
    let m = series.values.len() as f64;
    let mean = series.values.iter().sum::<f64>() / m;
    let sum_sq: f64 = series.values.iter().map(|x| (x - mean) * (x - mean)).sum();
    Ok(modulus_from_sums(mean, sum_sq, series.values.len()))
}

/// Same summary built from the reported mean and sum of squared
/// deviations, for series published only in summary form.
pub fn modulus_from_sums(mean: f64, sum_sq: f64, m: usize) -> EmpiricalModulus {
    let mf = m as f64;
    if sum_sq <= 0.0 {
        return EmpiricalModulus {
            mean,
            gamma: f64::INFINITY,
            weight: f64::INFINITY,
            infinite_weight: true,
        };
    }
    EmpiricalModulus {
        mean,
        gamma: (mf / (2.0 * sum_sq)).sqrt(),
        weight: mf / (2.0 * sum_sq).sqrt(),
        infinite_weight: false,
    }
}

/// Probability that the mean of the series sits within `l` of the true
/// mean: `t = l * weight`.
pub fn mean_within(summary: &EmpiricalModulus, l: f64) -> Result<(f64, f64), InferenceError> {
    if summary.infinite_weight {
        return Err(InferenceError::ZeroDispersion);
    }
    let t = l * summary.weight;
    Ok((t, p_of_t(t).map_err(|_| InferenceError::BadProbability)?))
}

/// Compares the means of two measurement series given their summaries:
/// `t = l' sqrt(m1 m2 / (m1/gamma1^2 + m2/gamma2^2))` at the observed
/// gap `l' = |mean1 - mean2|`.
pub fn compare_two_means_from_summary(
    s1: &EmpiricalModulus,
    m1: usize,
    s2: &EmpiricalModulus,
    m2: usize,
) -> Result<ComparisonResult, InferenceError> {
    if s1.infinite_weight || s2.infinite_weight {
        return Err(InferenceError::ZeroDispersion);
    }
    let l = (s1.mean - s2.mean).abs();
    let (m1f, m2f) = (m1 as f64, m2 as f64);
    let t = l
        * (m1f * m2f / (m1f / (s1.gamma * s1.gamma) + m2f / (s2.gamma * s2.gamma))).sqrt();
    comparison_from_t(s1.mean - s2.mean, t, true, m1.min(m2) < 100)
}

/// Compares the means of two measurement series from raw values.
///
/// # Errors
///
/// Returns an error if either series is shorter than two values or
/// has zero dispersion.
pub fn compare_two_means(
    s1: &EmpiricalSeries,
    s2: &EmpiricalSeries,
) -> Result<ComparisonResult, InferenceError> {
    let e1 = empirical_modulus(s1)?;
    let e2 = empirical_modulus(s2)?;
    if (s1.values == s2.values) || (e1.mean == e2.mean) {
        // An observed gap of zero carries no information either way.
        return comparison_from_t(0.0, 0.0, true, s1.values.len().min(s2.values.len()) < 100);
    }
    compare_two_means_from_summary(&e1, s1.values.len(), &e2, s2.values.len())
}

/// Mean of the order statistics after dropping `drop_each_side` values
/// from each end.
///
/// # Errors
///
/// Returns an error when trimming removes everything.
pub fn trimmed_usual_value(
    series: &EmpiricalSeries,
    drop_each_side: usize,
) -> Result<f64, InferenceError> {
    if 2 * drop_each_side >= series.values.len() {
        return Err(InferenceError::OverTrimmed);
    }
    let mut sorted = series.values.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let kept = &sorted[drop_each_side..sorted.len() - drop_each_side];
    Ok(kept.iter().sum::<f64>() / kept.len() as f64)
}

/// One bin of an empirical probability table.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct TableBin {
    pub midpoint: f64,
    /// Density ordinate `count / (N * width)`.
    pub ordinate: f64,
    /// Set when the bin deviates from its neighbors by more than the
    /// sampling tolerance; `smoothed` then offers the interpolated
    /// replacement.
    pub anomalous: bool,
    pub smoothed: f64,
}

/// Empirical density table of a series over equal-width bins spanning
/// the data range.
///
/// # Errors
///
/// Returns an error for fewer than two bins or an empty series.
pub fn probability_table(
    series: &EmpiricalSeries,
    bins: usize,
) -> Result<Vec<TableBin>, InferenceError> {
    if bins < 1 {
        return Err(InferenceError::TooShort);
    }
    let lo = series.values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = series
        .values
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    if !(hi > lo) {
        return Err(InferenceError::ZeroDispersion);
    }
    let width = (hi - lo) / bins as f64;
    let n = series.values.len() as f64;
    let mut counts = vec![0u64; bins];
    for &x in &series.values {
        let idx = (((x - lo) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let ordinates: Vec<f64> = counts.iter().map(|&c| c as f64 / (n * width)).collect();
    let mut out = Vec::with_capacity(bins);
    for i in 0..bins {
        let neighbor_mean = match (i.checked_sub(1), i + 1 < bins) {
            (Some(l), true) => 0.5 * (ordinates[l] + ordinates[i + 1]),
            (Some(l), false) => ordinates[l],
            (None, true) => ordinates[i + 1],
            (None, false) => ordinates[i],
        };
        // Sampling tolerance: four standard deviations of the bin
        // count under the neighbor-interpolated ordinate.
        let tol = 4.0 * (neighbor_mean.max(1.0 / (n * width)) / (n * width)).sqrt();
        // Only a local extremum counts as anomalous; a bin sitting
        // between two very different neighbors is merely on a slope.
        let extremum = match (i.checked_sub(1), i + 1 < bins) {
            (Some(l), true) => {
                (ordinates[i] > ordinates[l] && ordinates[i] > ordinates[i + 1])
                    || (ordinates[i] < ordinates[l] && ordinates[i] < ordinates[i + 1])
            }
            _ => true,
        };
        let anomalous = bins > 2 && extremum && (ordinates[i] - neighbor_mean).abs() > tol;
        out.push(TableBin {
            midpoint: lo + (i as f64 + 0.5) * width,
            ordinate: ordinates[i],
            anomalous,
            smoothed: if anomalous { neighbor_mean } else { ordinates[i] },
        });
    }
    Ok(out)
}

/// Verdict of the serial-dependence (solidarity) test.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum SolidarityVerdict {
    Independent,
    SolidaritySuspected,
    Degenerate,
}

/// Result of [`solidarity_test`].
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct SolidarityResult {
    /// Mean squared difference over all pairs (twice the variance, up
    /// to the `m/(m-1)` factor).
    pub all_pairs_msd: f64,
    /// Mean squared difference of consecutive values.
    pub lag1_msd: f64,
    pub verdict: SolidarityVerdict,
}

/// Tests for lingering dependence between consecutive values: for an
/// independent series the all-pairs and consecutive mean squared
/// differences agree; solidarity between neighbors depresses the
/// consecutive one.
///
/// Flags when the all-pairs value exceeds 1.5 times the lag-1 value
/// and a 1000-permutation test (deterministic in `seed`) rejects at
/// the 1% level.
///
/// # Errors
///
/// Returns an error for fewer than 30 values.
pub fn solidarity_test(
    series: &EmpiricalSeries,
    seed: u64,
) -> Result<SolidarityResult, InferenceError> {
    let x = &series.values;
    let m = x.len();
    if m < 30 {
        return Err(InferenceError::TooShort);
    }
    let mean = x.iter().sum::<f64>() / m as f64;
    let var = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / m as f64;
    let all_pairs = 2.0 * var * m as f64 / (m as f64 - 1.0);
    let lag1 = |v: &[f64]| {
        v.windows(2).map(|w| (w[1] - w[0]) * (w[1] - w[0])).sum::<f64>() / (v.len() - 1) as f64
    };
    let lag1_msd = lag1(x);
    if var == 0.0 {
        return Ok(SolidarityResult {
            all_pairs_msd: 0.0,
            lag1_msd: 0.0,
            verdict: SolidarityVerdict::Degenerate,
        });
    }
    let mut verdict = SolidarityVerdict::Independent;
    if all_pairs > 1.5 * lag1_msd {
        // Permutation oracle: how often does a reshuffled series show
        // a consecutive MSD at least as depressed?
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut shuffled = x.clone();
        let mut hits = 0u32;
        let reps = 1000;
        for _ in 0..reps {
            shuffled.shuffle(&mut rng);
            if lag1(&shuffled) <= lag1_msd {
                hits += 1;
            }
        }
        if f64::from(hits) / f64::from(reps) < 0.01 {
            verdict = SolidarityVerdict::SolidaritySuspected;
        }
    }
    Ok(SolidarityResult {
        all_pairs_msd: all_pairs,
        lag1_msd,
        verdict,
    })
}

/// Probability that at least one of `s` independent random binary
/// splits of an `m`-trial series at constant chance `p` shows an
/// absolute rate difference above `l`, estimated by seeded simulation.
pub fn multiple_split_hazard(
    m: u64,
    p: f64,
    l: f64,
    s: u32,
    seed: u64,
    replicates: u32,
) -> Result<f64, InferenceError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(InferenceError::BadProbability);
    }
    if l <= 0.0 {
        return Ok(1.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u32;
    for _ in 0..replicates {
        let outcomes: Vec<bool> = (0..m).map(|_| rng.gen::<f64>() < p).collect();
        let mut exceeded = false;
        for _ in 0..s {
            let mut counts = [0u64; 2];
            let mut succ = [0u64; 2];
            for &o in &outcomes {
                let side = usize::from(rng.gen::<bool>());
                counts[side] += 1;
                succ[side] += u64::from(o);
            }
            if counts[0] == 0 || counts[1] == 0 {
                continue;
            }
            let diff =
                succ[0] as f64 / counts[0] as f64 - succ[1] as f64 / counts[1] as f64;
            if diff.abs() > l {
                exceeded = true;
                break;
            }
        }
        hits += u32::from(exceeded);
    }
    Ok(f64::from(hits) / f64::from(replicates))
}
