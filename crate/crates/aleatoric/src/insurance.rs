//! Insurance mathematics: aggregate loss and profit windows, the
//! Poisson tail approximation, mutual contributions, deviation-based
//! loss allocation, partial losses, annuities, and discounted long-run
//! profit limits.

use crate::deviation::t_of_p;
use crate::repetition::{interval_mass, RepeatedTrial};

/// One class of insured risks: `m` policies of value `a` each lost
/// with yearly chance `p`.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct RiskClass {
    pub m: u64,
    pub a: f64,
    pub p: f64,
}

/// A book of risk classes.
#[derive(Clone, PartialEq, Debug)]
pub struct Portfolio {
    pub classes: Vec<RiskClass>,
}

/// A life annuity quote: yearly payment `a`, interest rate `r`, and
/// the probabilities of surviving to each payment date.
#[derive(Clone, PartialEq, Debug)]
pub struct AnnuityQuote {
    pub survival: Vec<f64>,
    pub rate: f64,
    pub annuity: f64,
}

/// A symmetric money window `mean ± half_width`.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct MoneyWindow {
    pub mean: f64,
    pub half_width: f64,
}

impl MoneyWindow {
    pub fn low(&self) -> f64 {
        self.mean - self.half_width
    }

    pub fn high(&self) -> f64 {
        self.mean + self.half_width
    }
}

/// Errors raised by the insurance operations.
#[derive(Copy, Clone, PartialEq, Debug)]
pub enum InsuranceError {
    EmptyPortfolio,
    /// Risks must lie strictly in (0, 1) with positive values.
    InvalidClass,
    BadProbability,
    /// Premium rate below the risk rate.
    PremiumBelowRisk,
    /// Partial-loss chances must sum to at most one.
    ChancesExceedOne,
    /// Survival probabilities must be non-increasing in `[0, 1]`.
    BadSurvival,
    /// The discounted limit form needs a positive interest rate.
    NonPositiveRate,
}

impl std::fmt::Display for InsuranceError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            InsuranceError::EmptyPortfolio => write!(f, "portfolio has no classes"),
            InsuranceError::InvalidClass => {
                write!(f, "risk class needs 0 < p < 1 and positive value")
            }
            InsuranceError::BadProbability => write!(f, "probability argument out of range"),
            InsuranceError::PremiumBelowRisk => {
                write!(f, "premium rate must not be below the risk rate")
            }
            InsuranceError::ChancesExceedOne => {
                write!(f, "loss chances must sum to at most one")
            }
            InsuranceError::BadSurvival => {
                write!(f, "survival probabilities must be non-increasing in [0, 1]")
            }
            InsuranceError::NonPositiveRate => {
                write!(f, "the limit form needs a positive interest rate")
            }
        }
    }
}

impl std::error::Error for InsuranceError {}

fn validate(portfolio: &Portfolio) -> Result<(), InsuranceError> {
    if portfolio.classes.is_empty() {
        return Err(InsuranceError::EmptyPortfolio);
    }
    for c in &portfolio.classes {
        if !(c.p > 0.0 && c.p < 1.0) || c.a <= 0.0 || c.m == 0 {
            return Err(InsuranceError::InvalidClass);
        }
    }
    Ok(())
}

/// Window containing the yearly sum of indemnities with probability
/// `prob`: `sum m p a ± t sqrt(2 sum m p (1-p) a^2)`.
///
/// # Errors
///
/// Returns an error for an empty or invalid portfolio.
pub fn aggregate_loss_limits(
    portfolio: &Portfolio,
    prob: f64,
) -> Result<MoneyWindow, InsuranceError> {
    validate(portfolio)?;
    let t = t_of_p(prob).map_err(|_| InsuranceError::BadProbability)?;
    let mean: f64 = portfolio
        .classes
        .iter()
        .map(|c| c.m as f64 * c.p * c.a)
        .sum();
    let var: f64 = portfolio
        .classes
        .iter()
        .map(|c| c.m as f64 * c.p * (1.0 - c.p) * c.a * c.a)
        .sum();
    Ok(MoneyWindow {
        mean,
        half_width: t * (2.0 * var).sqrt(),
    })
}

/// Window containing the yearly profit when each of `m` policies of
/// value `a` pays premium rate `w` against loss chance `p`:
/// `m a (w - p) ± t a sqrt(2 m p (1-p))`.
///
/// # Errors
///
/// Returns an error when `w < p` or the inputs are degenerate.
pub fn boni_limits(
    m: u64,
    p: f64,
    w: f64,
    a: f64,
    prob: f64,
) -> Result<MoneyWindow, InsuranceError> {
    if !(p > 0.0 && p < 1.0) || a <= 0.0 || m == 0 {
        return Err(InsuranceError::InvalidClass);
    }
    if w < p {
        return Err(InsuranceError::PremiumBelowRisk);
    }
    let t = t_of_p(prob).map_err(|_| InsuranceError::BadProbability)?;
    Ok(MoneyWindow {
        mean: m as f64 * a * (w - p),
        half_width: t * a * (2.0 * m as f64 * p * (1.0 - p)).sqrt(),
    })
}

/// Exact chance that the year ends in deficit: losses strictly exceed
/// the premium income `m w a`, i.e. the claim count tops `floor(m w)`.
pub fn boni_deficit_probability(m: u64, p: f64, w: f64) -> Result<f64, InsuranceError> {
    if !(p > 0.0 && p < 1.0) || m == 0 || w < p {
        return Err(InsuranceError::InvalidClass);
    }
    let threshold = (m as f64 * w).floor() as u64;
    if threshold >= m {
        return Ok(0.0);
    }
    let below = interval_mass(RepeatedTrial { m, p }, 0, threshold)
        .map_err(|_| InsuranceError::InvalidClass)?;
    Ok(1.0 - below)
}

/// Cumulative Poisson approximation `e^(-pm) sum_(k<=n) (pm)^k / k!`
/// to the binomial claim-count law.
pub fn poisson_tail(m: u64, p: f64, n: u64) -> Result<f64, InsuranceError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(InsuranceError::BadProbability);
    }
    let lambda = p * m as f64;
    let mut term = (-lambda).exp();
    let mut acc = term;
    for k in 1..=n {
        term *= lambda / k as f64;
        acc += term;
    }
    Ok(acc.min(1.0))
}

/// Window containing each member's contribution in a mutual pool of
/// `m` members insuring value `a` at chance `p`:
/// `p a ± t a sqrt(2 p (1-p) / m)`.
pub fn mutual_contribution_limits(
    m: u64,
    p: f64,
    a: f64,
    prob: f64,
) -> Result<MoneyWindow, InsuranceError> {
    if !(p > 0.0 && p < 1.0) || a <= 0.0 || m < 2 {
        return Err(InsuranceError::InvalidClass);
    }
    let t = t_of_p(prob).map_err(|_| InsuranceError::BadProbability)?;
    Ok(MoneyWindow {
        mean: p * a,
        half_width: t * a * (2.0 * p * (1.0 - p) / m as f64).sqrt(),
    })
}

/// Expected per-class shares of an observed total loss `mu`: the mean
/// part in proportion to `m p a`, the deviation part in proportion to
/// `m p (1-p) a^2`.
///
/// Shares are linear in `mu` and always sum to `mu` exactly.
pub fn bienayme_allocation(
    portfolio: &Portfolio,
    mu: f64,
) -> Result<Vec<f64>, InsuranceError> {
    validate(portfolio)?;
    let mean_weights: Vec<f64> = portfolio
        .classes
        .iter()
        .map(|c| c.m as f64 * c.p * c.a)
        .collect();
    let dev_weights: Vec<f64> = portfolio
        .classes
        .iter()
        .map(|c| c.m as f64 * c.p * (1.0 - c.p) * c.a * c.a)
        .collect();
    let total_mean: f64 = mean_weights.iter().sum();
    let total_dev: f64 = dev_weights.iter().sum();
    Ok(mean_weights
        .iter()
        .zip(&dev_weights)
        .map(|(mw, dw)| total_mean * (mw / total_mean) + (mu - total_mean) * (dw / total_dev))
        .collect())
}

/// Window for total losses when each of `m` policies suffers at most
/// one of several partial losses `(p_i, a_i)` per year (no loss with
/// the residual chance).
///
/// # Errors
///
/// Returns an error when the chances sum above one.
pub fn partial_loss_limits(
    m: u64,
    losses: &[(f64, f64)],
    prob: f64,
) -> Result<MoneyWindow, InsuranceError> {
    if losses.is_empty() || m == 0 {
        return Err(InsuranceError::EmptyPortfolio);
    }
    let total_p: f64 = losses.iter().map(|(p, _)| p).sum();
    if total_p > 1.0 + 1e-12 {
        return Err(InsuranceError::ChancesExceedOne);
    }
    if losses.iter().any(|&(p, a)| p <= 0.0 || a < 0.0) {
        return Err(InsuranceError::InvalidClass);
    }
    let t = t_of_p(prob).map_err(|_| InsuranceError::BadProbability)?;
    let mean_per: f64 = losses.iter().map(|(p, a)| p * a).sum();
    // Per-policy variance written with the no-loss outcome at a = 0:
    // cross terms over distinct loss kinds plus each kind against the
    // no-loss residue.
    let mut var_per = 0.0;
    for (i, &(pi, ai)) in losses.iter().enumerate() {
        for &(pj, aj) in &losses[i + 1..] {
            var_per += pi * pj * (ai - aj) * (ai - aj);
        }
        var_per += pi * (1.0 - total_p) * ai * ai;
    }
    let mf = m as f64;
    Ok(MoneyWindow {
        mean: mf * mean_per,
        half_width: t * (2.0 * mf * var_per).sqrt(),
    })
}

/// Present price of a life annuity and the matching life payment.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct AnnuityPrice {
    /// `A = a sum p_k / (1+r)^k`.
    pub price: f64,
    /// Perpetual-equivalent yearly payment `b = a - r A`.
    pub life_payment: f64,
}

/// Prices the annuity `quote`.
///
/// # Errors
///
/// Returns an error for `r <= -1` or survival probabilities that are
/// not a non-increasing sequence in `[0, 1]`.
pub fn annuity_price(quote: &AnnuityQuote) -> Result<AnnuityPrice, InsuranceError> {
    if quote.rate <= -1.0 {
        return Err(InsuranceError::NonPositiveRate);
    }
    let mut last = 1.0;
    for &p in &quote.survival {
        if !(0.0..=1.0).contains(&p) || p > last + 1e-12 {
            return Err(InsuranceError::BadSurvival);
        }
        last = p;
    }
    let mut price = 0.0;
    let mut discount = 1.0;
    for &p in &quote.survival {
        discount /= 1.0 + quote.rate;
        price += quote.annuity * p * discount;
    }
    Ok(AnnuityPrice {
        price,
        life_payment: quote.annuity - quote.rate * price,
    })
}

/// Discounted profit window over the first `n` years, and its
/// infinite-horizon limit.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct CompoundHorizon {
    /// Window of the discounted profit over `n` years.
    pub finite: MoneyWindow,
    /// Limit window `m a (w-p)/r ± t a sqrt(m p (1-p) / r)`.
    pub limit: MoneyWindow,
}

/// Present-value window of an insurer's profit stream: each year the
/// book earns `m a (w - p)` on average with binomial claim noise, and
/// years are discounted at rate `r`.
///
/// # Errors
///
/// Returns an error for `r <= 0` or degenerate inputs.
pub fn compound_horizon_limits(
    m: u64,
    p: f64,
    w: f64,
    a: f64,
    r: f64,
    n: u32,
    prob: f64,
) -> Result<CompoundHorizon, InsuranceError> {
    if !(p > 0.0 && p < 1.0) || a <= 0.0 || m == 0 || w < p {
        return Err(InsuranceError::InvalidClass);
    }
    if r <= 0.0 {
        return Err(InsuranceError::NonPositiveRate);
    }
    let t = t_of_p(prob).map_err(|_| InsuranceError::BadProbability)?;
    let mf = m as f64;
    let v = 1.0 / (1.0 + r);
    let yearly_mean = mf * a * (w - p);
    let yearly_var = 2.0 * mf * p * (1.0 - p) * a * a;
    let mut sum_v = 0.0;
    let mut sum_v2 = 0.0;
    for k in 1..=n {
        sum_v += v.powi(k as i32);
        sum_v2 += v.powi(2 * k as i32);
    }
    Ok(CompoundHorizon {
        finite: MoneyWindow {
            mean: yearly_mean * sum_v,
            half_width: t * (yearly_var * sum_v2).sqrt(),
        },
        limit: MoneyWindow {
            mean: yearly_mean / r,
            half_width: t * a * (mf * p * (1.0 - p) / r).sqrt(),
        },
    })
}
