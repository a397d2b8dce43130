//! Games of chance: expectations and stake division, punter loss and
//! gain limits, fair-game oscillation, gambler's ruin, and the
//! capped-bank doubling game.

use crate::deviation::{p_of_t, t_of_p};
use crate::repetition::{interval_mass, RepeatedTrial};

/// A repeated game: `m` sets, win chance `p` per set, stake `a` paid
/// per set, payout `b` received on a win.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct GameSpec {
    pub m: u64,
    pub p: f64,
    pub a: f64,
    pub b: f64,
}

/// A ruin problem: a punter holding `alpha` stakes plays `n` fair
/// even-money sets against an unlimited bank.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct RuinSpec {
    pub alpha: u64,
    pub n: u64,
}

/// Errors raised by the game computations.
#[derive(Copy, Clone, PartialEq, Debug)]
pub enum GameError {
    /// `p` must lie strictly in (0, 1); stakes must be positive.
    InvalidSpec,
    /// Probability argument outside `[0, 1)`.
    BadProbability,
    /// Outcome probabilities must sum to one.
    BadWeights,
    LengthMismatch,
}

impl std::fmt::Display for GameError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            GameError::InvalidSpec => write!(f, "game spec must have 0 < p < 1 and positive stakes"),
            GameError::BadProbability => write!(f, "probability argument out of range"),
            GameError::BadWeights => write!(f, "outcome probabilities must sum to one"),
            GameError::LengthMismatch => write!(f, "parallel lists differ in length"),
        }
    }
}

impl std::error::Error for GameError {}

/// Punter's mean loss and its probable window.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct PunterLimits {
    /// Mean loss `m (a - p b)` (negative when the game favors the
    /// punter).
    pub mean_loss: f64,
    /// Loss window `[mean - m b l, mean + m b l]` where `l` is the
    /// win-rate half-width at the given probability.
    pub window: (f64, f64),
}

/// Loss window of a punter over `m` sets at interval probability
/// `prob`.
///
/// # Errors
///
/// Returns an error for an invalid spec or probability.
pub fn punter_limits(spec: &GameSpec, prob: f64) -> Result<PunterLimits, GameError> {
    if !(spec.p > 0.0 && spec.p < 1.0) || spec.a <= 0.0 || spec.b <= 0.0 || spec.m == 0 {
        return Err(GameError::InvalidSpec);
    }
    let t = t_of_p(prob).map_err(|_| GameError::BadProbability)?;
    let m = spec.m as f64;
    let l = t * (2.0 * spec.p * (1.0 - spec.p) / m).sqrt();
    let mean_loss = m * (spec.a - spec.p * spec.b);
    // Loss = m a - b (wins); wins between m(p - l) and m(p + l).
    Ok(PunterLimits {
        mean_loss,
        window: (mean_loss - m * spec.b * l, mean_loss + m * spec.b * l),
    })
}

/// Oscillation of a fair even-money game.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct FairGameOscillation {
    /// Stake-unit limit by the asymptotic formula `t sqrt(2 m)`.
    pub formula: f64,
    /// Smallest even stake count `d` with exact binomial
    /// `P(|2X - m| <= d) >= prob`.
    pub exact: u64,
}

/// Stake-unit deviation of net gain/loss after `m` fair even-money
/// sets, both by the asymptotic formula and by the exact binomial law
/// of `|2X - m|`.
///
/// # Errors
///
/// Returns an error for a bad probability.
pub fn fair_game_oscillation(m: u64, prob: f64) -> Result<FairGameOscillation, GameError> {
    let t = t_of_p(prob).map_err(|_| GameError::BadProbability)?;
    let formula = t * (2.0 * m as f64).sqrt();
    let trial = RepeatedTrial { m, p: 0.5 };
    let mut exact = if m % 2 == 0 { 0 } else { 1 };
    loop {
        let lo = (m - exact.min(m)).div_euclid(2);
        let hi = (m + exact).min(2 * m).div_euclid(2).min(m);
        let mass = interval_mass(trial, lo, hi).map_err(|_| GameError::InvalidSpec)?;
        if mass >= prob || exact >= m {
            break;
        }
        exact += 2;
    }
    Ok(FairGameOscillation { formula, exact })
}

/// Ruin probabilities for a punter with `alpha` stakes over `n` fair
/// sets.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct RuinProbability {
    /// Main-term survival `p_of_t(alpha / sqrt(2n))`.
    pub survival_main: f64,
    /// Survival with the second-order series term added.
    pub survival_corrected: f64,
    /// Main-term ruin probability `1 - survival_main`.
    pub ruin: f64,
}

/// Probability of ruin (losing all `alpha` stakes) within `n` fair
/// even-money sets against an unlimited bank.
pub fn ruin_probability(spec: &RuinSpec) -> Result<RuinProbability, GameError> {
    if spec.alpha == 0 || spec.n == 0 {
        return Err(GameError::InvalidSpec);
    }
    let alpha = spec.alpha as f64;
    let n = spec.n as f64;
    let t = alpha / (2.0 * n).sqrt();
    let main = p_of_t(t).map_err(|_| GameError::BadProbability)?;
    let correction = t * (-t * t).exp() / std::f64::consts::PI.sqrt() * (alpha / (2.0 * n))
        * (1.0 - 2.0 / (3.0 * n));
    Ok(RuinProbability {
        survival_main: main,
        survival_corrected: (main + correction).min(1.0),
        ruin: 1.0 - main,
    })
}

/// Expected value of the doubling game against a bank capped at `cap`:
/// the payout for a first success on throw `k` is
/// `min(unit 2^(k-1), cap)`.
///
/// # Errors
///
/// Returns an error unless `0 < unit <= cap`.
pub fn petersburg_value(cap: f64, unit: f64) -> Result<f64, GameError> {
    if !(unit > 0.0 && cap >= unit) {
        return Err(GameError::InvalidSpec);
    }
    let mut total = 0.0;
    let mut payout = unit;
    let mut chance = 0.5;
    while payout < cap {
        total += payout * chance;
        payout *= 2.0;
        chance *= 0.5;
    }
    // All later throws pay the cap; their chances sum to 2 * chance.
    total += cap * 2.0 * chance;
    Ok(total)
}

/// Mathematical expectation of an outcome list, with the matching
/// division of a pot in proportion to the probabilities.
///
/// # Errors
///
/// Returns an error on length mismatch or probabilities not summing
/// to one.
pub fn expectation_and_division(
    values: &[f64],
    probs: &[f64],
) -> Result<(f64, Vec<f64>), GameError> {
    if values.len() != probs.len() {
        return Err(GameError::LengthMismatch);
    }
    if (probs.iter().sum::<f64>() - 1.0).abs() > 1e-9 || probs.iter().any(|&p| p < 0.0) {
        return Err(GameError::BadWeights);
    }
    let expectation: f64 = values.iter().zip(probs).map(|(v, p)| v * p).sum();
    // Division rule: each claimant's share of the pot (the largest
    // value at stake) is proportional to their chance of it.
    let pot = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let division = probs.iter().map(|p| p * pot).collect();
    Ok((expectation, division))
}

/// Division of a pot between claimants in proportion to their winning
/// chances.
pub fn divide_stakes(pot: f64, probs: &[f64]) -> Result<Vec<f64>, GameError> {
    if (probs.iter().sum::<f64>() - 1.0).abs() > 1e-9 || probs.iter().any(|&p| p < 0.0) {
        return Err(GameError::BadWeights);
    }
    Ok(probs.iter().map(|p| p * pot).collect())
}
