//! Binomial and hypergeometric repetition laws: exact terms, largest
//! terms, central masses, and deviation limits for repeated trials.

use crate::combinatorics::binomial;
use crate::deviation::{correction_term, p_of_t, t_of_p};
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

/// Trial count above which exact rational summation yields to
/// log-space floating point.
pub const EXACT_SUMMATION_LIMIT: u64 = 2_000;

/// A repeated independent trial: `m` trials at chance `p` each.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct RepeatedTrial {
    pub m: u64,
    pub p: f64,
}

/// An urn sampled without replacement: `a` white, `b` black, `m` draws.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct UrnWithoutReplacement {
    pub a: u64,
    pub b: u64,
    pub m: u64,
}

/// Errors raised by the repetition-law operations.
#[derive(Copy, Clone, PartialEq, Debug)]
pub enum RepetitionError {
    /// Success count exceeds trial count.
    CountTooLarge,
    /// `p` must be a probability.
    InvalidChance,
    /// Draws exceed the urn contents.
    DrawsExceedUrn,
    /// The chance is degenerate (`p` is 0 or 1) where a spread is needed.
    DegenerateChance,
}

impl std::fmt::Display for RepetitionError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            RepetitionError::CountTooLarge => write!(f, "success count exceeds trial count"),
            RepetitionError::InvalidChance => write!(f, "chance must lie in [0, 1]"),
            RepetitionError::DrawsExceedUrn => write!(f, "draws exceed urn contents"),
            RepetitionError::DegenerateChance => write!(f, "chance must lie strictly in (0, 1)"),
        }
    }
}

impl std::error::Error for RepetitionError {}

fn ln_binomial(m: u64, n: u64) -> f64 {
    ln_gamma(m as f64 + 1.0) - ln_gamma(n as f64 + 1.0) - ln_gamma((m - n) as f64 + 1.0)
}

/// Probability of exactly `n` successes in `m` trials at chance `p`.
///
/// Uses exact rational arithmetic (via [`binomial_pmf_rational`]) when
/// `m` is small enough and `p` is exactly representable; this entry
/// point computes in log space, stable for any `m`.
///
/// # Errors
///
/// Returns an error if `n > m` or `p` is not a probability.
pub fn binomial_pmf(trial: RepeatedTrial, n: u64) -> Result<f64, RepetitionError> {
    if n > trial.m {
        return Err(RepetitionError::CountTooLarge);
    }
    if !(0.0..=1.0).contains(&trial.p) {
        return Err(RepetitionError::InvalidChance);
    }
    let (m, p) = (trial.m, trial.p);
    if p == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    if p == 1.0 {
        return Ok(if n == m { 1.0 } else { 0.0 });
    }
    let ln = ln_binomial(m, n) + n as f64 * p.ln() + (m - n) as f64 * (1.0 - p).ln();
    Ok(ln.exp())
}

/// Exact rational binomial term `C(m,n) p^n (1-p)^(m-n)`.
///
/// # Errors
///
/// Returns an error if `n > m`.
pub fn binomial_pmf_rational(
    m: u64,
    n: u64,
    p: &Ratio<BigInt>,
) -> Result<Ratio<BigInt>, RepetitionError> {
    if n > m {
        return Err(RepetitionError::CountTooLarge);
    }
    let c: BigInt = binomial(m, n).unwrap().into();
    let q = Ratio::one() - p;
    Ok(Ratio::from(c) * p.pow(n as i32) * q.pow((m - n) as i32))
}

/// Index of the largest binomial term: the greatest natural number
/// contained in `p(m+1)`. When `p(m+1)` is an integer two terms tie;
/// the smaller index is returned and the tie is flagged.
pub fn largest_term_index(trial: RepeatedTrial) -> (u64, bool) {
    let x = trial.p * (trial.m as f64 + 1.0);
    let k = x.floor();
    let tie = x == k && k >= 1.0 && k <= trial.m as f64;
    let idx = if tie { k - 1.0 } else { k } as u64;
    (idx.min(trial.m), tie)
}

/// Sum of the binomial terms in `[k - halfwidth, k + halfwidth]` around
/// the largest term `k`, exact-rational for desk-scale `m`.
pub fn central_mass(trial: RepeatedTrial, halfwidth: u64) -> Result<f64, RepetitionError> {
    let (k, _) = largest_term_index(trial);
    let lo = k.saturating_sub(halfwidth);
    let hi = (k + halfwidth).min(trial.m);
    interval_mass(trial, lo, hi)
}

/// Sum of the binomial terms over the inclusive count window `[lo, hi]`.
pub fn interval_mass(trial: RepeatedTrial, lo: u64, hi: u64) -> Result<f64, RepetitionError> {
    if hi > trial.m || lo > hi {
        return Err(RepetitionError::CountTooLarge);
    }
    if trial.m <= EXACT_SUMMATION_LIMIT {
        if let Some(p) = rational_chance(trial.p) {
            let mut acc: Ratio<BigInt> = Ratio::zero();
            for n in lo..=hi {
                acc += binomial_pmf_rational(trial.m, n, &p)?;
            }
            return Ok(acc.to_f64().unwrap());
        }
    }
    let mut acc = 0.0;
    for n in lo..=hi {
        acc += binomial_pmf(trial, n)?;
    }
    Ok(acc.min(1.0))
}

/// Reconstructs simple rational chances (denominator up to 10000) so
/// the exact summation path applies to textbook inputs like 2/3 or 1/6.
fn rational_chance(p: f64) -> Option<Ratio<BigInt>> {
    for den in 1..=10_000u64 {
        let num = (p * den as f64).round();
        if num >= 0.0 && (num / den as f64 - p).abs() < 1e-15 {
            return Some(Ratio::new(BigInt::from(num as i64), BigInt::from(den)));
        }
    }
    None
}

/// Deviation limit of the empirical rate and count window at a given
/// interval probability.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct DeviationLimit {
    /// Half-width of the rate window around `p`.
    pub l: f64,
    /// Standardized half-width.
    pub t: f64,
    /// Count window `m p ± m l`.
    pub window: (f64, f64),
    /// Set when `m` is small enough that the asymptotic formula is
    /// doubtful (below 100 trials).
    pub small_sample_warning: bool,
}

/// Rate half-width `l = t_of_p(P) sqrt(2 p (1-p) / m)` and the implied
/// count window.
///
/// # Errors
///
/// Returns an error for degenerate `p`.
pub fn deviation_limit(trial: RepeatedTrial, prob: f64) -> Result<DeviationLimit, RepetitionError> {
    if !(trial.p > 0.0 && trial.p < 1.0) {
        return Err(RepetitionError::DegenerateChance);
    }
    let t = t_of_p(prob).map_err(|_| RepetitionError::InvalidChance)?;
    let m = trial.m as f64;
    let l = t * (2.0 * trial.p * (1.0 - trial.p) / m).sqrt();
    Ok(DeviationLimit {
        l,
        t,
        window: (m * trial.p - m * l, m * trial.p + m * l),
        small_sample_warning: trial.m < 100,
    })
}

/// Interval probability for rate window `±l`: the main term plus the
/// second-order correction, alongside the exact binomial sum.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct CorrectedIntervalProbability {
    /// First (Gaussian) term.
    pub main: f64,
    /// Main term plus `exp(-t^2)/sqrt(2 pi p(1-p) m)`.
    pub corrected: f64,
    /// Exact binomial mass of the same count window.
    pub exact: f64,
}

/// Probability that the empirical rate deviates from `p` by less than
/// `l`, with and without the second-order correction, plus the exact
/// binomial sum over the same count window.
pub fn corrected_interval_probability(
    trial: RepeatedTrial,
    l: f64,
) -> Result<CorrectedIntervalProbability, RepetitionError> {
    if !(trial.p > 0.0 && trial.p < 1.0) {
        return Err(RepetitionError::DegenerateChance);
    }
    let m = trial.m as f64;
    let t = l * (m / (2.0 * trial.p * (1.0 - trial.p))).sqrt();
    let main = p_of_t(t).map_err(|_| RepetitionError::InvalidChance)?;
    let corrected = main + correction_term(t, trial.m, trial.p);
    let lo = ((trial.p - l) * m).ceil().max(0.0) as u64;
    let hi = ((trial.p + l) * m).floor().min(m) as u64;
    let exact = interval_mass(trial, lo, hi)?;
    Ok(CorrectedIntervalProbability {
        main,
        corrected,
        exact,
    })
}

/// Exact probability of drawing `n` white in `m` draws without
/// replacement from an urn of `a` white and `b` black balls.
///
/// Infeasible `n` yields zero rather than an error.
pub fn hypergeometric_pmf(
    urn: UrnWithoutReplacement,
    n: u64,
) -> Result<Ratio<BigInt>, RepetitionError> {
    if urn.m > urn.a + urn.b {
        return Err(RepetitionError::DrawsExceedUrn);
    }
    if n > urn.m || n > urn.a || urn.m - n > urn.b {
        return Ok(Ratio::zero());
    }
    let num: BigInt =
        (binomial(urn.a, n).unwrap() * binomial(urn.b, urn.m - n).unwrap()).into();
    let den: BigInt = binomial(urn.a + urn.b, urn.m).unwrap().into();
    Ok(Ratio::new(num, den))
}

/// Exact upper-tail probability `P(count >= n)` for the urn.
pub fn hypergeometric_tail(
    urn: UrnWithoutReplacement,
    n: u64,
) -> Result<Ratio<BigInt>, RepetitionError> {
    let mut acc = Ratio::zero();
    for k in n..=urn.m {
        acc += hypergeometric_pmf(urn, k)?;
    }
    Ok(acc)
}

/// Real number of trials `m` solving `(1-p)^m = 1/2` — the point at
/// which at least one occurrence becomes an even-money bet — plus the
/// integer betting recommendation.
pub fn repeat_until_even_odds(p: f64) -> Result<(f64, u64), RepetitionError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(RepetitionError::DegenerateChance);
    }
    let m = 2f64.ln() / -(1.0 - p).ln();
    Ok((m, m.ceil() as u64))
}
