//! The shared Gaussian-integral kernel: the deviation probability
//! `P(t) = (2/sqrt(pi)) * integral_0^t exp(-u^2) du`, its inverse, and
//! regeneration of the appendix-style (t, P) table.

use statrs::function::erf;

/// Errors raised by the deviation-function kernel.
#[derive(Copy, Clone, PartialEq, Debug)]
pub enum DeviationError {
    /// `t` must be non-negative.
    NegativeT,
    /// The inverse is only defined for probabilities in `[0, 1)`.
    ProbabilityOutOfRange,
}

impl std::fmt::Display for DeviationError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            DeviationError::NegativeT => write!(f, "t must be non-negative"),
            DeviationError::ProbabilityOutOfRange => {
                write!(f, "probability must lie in [0, 1)")
            }
        }
    }
}

impl std::error::Error for DeviationError {}

/// Probability that a standardized deviation falls inside `±t`.
///
/// # Errors
///
/// Returns an error for negative `t`.
pub fn p_of_t(t: f64) -> Result<f64, DeviationError> {
    if !(t >= 0.0) {
        return Err(DeviationError::NegativeT);
    }
    Ok(erf::erf(t))
}

/// Inverse of [`p_of_t`], accurate to about 1e-14, by an inverse-erf
/// seed polished with bracketed Newton steps.
///
/// # Errors
///
/// Returns an error unless `0 <= p < 1`.
pub fn t_of_p(p: f64) -> Result<f64, DeviationError> {
    if !(0.0..1.0).contains(&p) {
        return Err(DeviationError::ProbabilityOutOfRange);
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    let mut t = erf::erf_inv(p).max(0.0);
    let two_over_sqrt_pi = 2.0 / std::f64::consts::PI.sqrt();
    for _ in 0..4 {
        let f = erf::erf(t) - p;
        let d = two_over_sqrt_pi * (-t * t).exp();
        if d == 0.0 {
            break;
        }
        t -= f / d;
    }
    Ok(t.max(0.0))
}

/// Second-order correction to the interval probability for a binomial
/// mean of `m` trials at chance `p`: `exp(-t^2)/sqrt(2 pi p(1-p) m)`.
pub fn correction_term(t: f64, m: u64, p: f64) -> f64 {
    (-t * t).exp() / (2.0 * std::f64::consts::PI * p * (1.0 - p) * m as f64).sqrt()
}

/// Regenerates the (t, P) table from `t = 0` to `t = 3` with the given
/// step; probabilities are exact to far better than the printed six
/// decimals.
pub fn emit_table(step: f64) -> Vec<(f64, f64)> {
    assert!(step > 0.0, "step must be positive");
    let mut rows = Vec::new();
    let n = (3.0 / step).round() as usize;
    for i in 0..=n {
        let t = (i as f64) * step;
        if t > 3.0 + 1e-12 {
            break;
        }
        rows.push((t, erf::erf(t)));
    }
    rows
}
