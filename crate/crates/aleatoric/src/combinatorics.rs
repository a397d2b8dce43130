//! Exact counting primitives and the Stirling approximation of the
//! factorial, in both arbitrary precision and base-10 logarithmic form.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use std::f64::consts::PI;

/// Errors raised by the counting primitives.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum CombinatoricsError {
    /// Selection size exceeds the set size.
    SelectionTooLarge,
    /// The multiset base must contain at least one element.
    EmptyBase,
}

impl std::fmt::Display for CombinatoricsError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            CombinatoricsError::SelectionTooLarge => {
                write!(f, "selection size exceeds set size")
            }
            CombinatoricsError::EmptyBase => write!(f, "multiset base is empty"),
        }
    }
}

impl std::error::Error for CombinatoricsError {}

/// Exact factorial `x!` as an arbitrary-precision integer.
pub fn factorial(x: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=x {
        acc *= BigUint::from(k);
    }
    acc
}

/// Exact binomial coefficient `C(m, n)`.
///
/// # Errors
///
/// Returns an error if `n > m`.
pub fn binomial(m: u64, n: u64) -> Result<BigUint, CombinatoricsError> {
    if n > m {
        return Err(CombinatoricsError::SelectionTooLarge);
    }
    let n = n.min(m - n);
    let mut acc = BigUint::one();
    for k in 0..n {
        acc = acc * BigUint::from(m - k) / BigUint::from(k + 1);
    }
    Ok(acc)
}

/// Number of multisets of size `n` drawn from `m` distinct elements:
/// `m(m+1)...(m+n-1)/n! = C(m+n-1, n)`.
///
/// # Errors
///
/// Returns an error if `m == 0`.
pub fn multiset_count(m: u64, n: u64) -> Result<BigUint, CombinatoricsError> {
    if m == 0 {
        return Err(CombinatoricsError::EmptyBase);
    }
    binomial(m + n - 1, n)
}

/// How many correction terms of the Stirling series to apply.
///
/// The series is truncated after the second correction term by design;
/// further terms are never added (the tail diverges).
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum StirlingTerms {
    /// `ln sqrt(2 pi) + (x + 1/2) ln x - x` only.
    None,
    /// Adds `1/(12x)`.
    OneCorrection,
    /// Adds `1/(12x) - 1/(360 x^3)`.
    TwoCorrections,
}

/// Natural logarithm of `x!` by the truncated Stirling series.
pub fn ln_factorial_stirling(x: u64, terms: StirlingTerms) -> f64 {
    let x = x as f64;
    let mut v = 0.5 * (2.0 * PI).ln() + (x + 0.5) * x.ln() - x;
    match terms {
        StirlingTerms::None => {}
        StirlingTerms::OneCorrection => v += 1.0 / (12.0 * x),
        StirlingTerms::TwoCorrections => {
            v += 1.0 / (12.0 * x) - 1.0 / (360.0 * x.powi(3));
        }
    }
    v
}

/// Base-10 logarithm of `x!`, exposing the exact sum of logarithms and
/// the Stirling approximation side by side.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct LogFactorial {
    /// Exact base-10 log of `x!` (sum of `log10 k`).
    pub exact_log10: f64,
    /// Stirling series value (two correction terms) in base 10.
    pub stirling_log10: f64,
}

/// Base-10 logarithm of `x!`. For `x = 0` both fields are zero.
pub fn log_factorial(x: u64) -> LogFactorial {
    let exact_log10 = (2..=x).map(|k| (k as f64).log10()).sum();
    let stirling_log10 = if x == 0 {
        0.0
    } else {
        ln_factorial_stirling(x, StirlingTerms::TwoCorrections) / std::f64::consts::LN_10
    };
    LogFactorial {
        exact_log10,
        stirling_log10,
    }
}

/// The probability that a hand of 12 cards from a 32-card deck misses
/// all four aces, exactly and under two Stirling truncations.
#[derive(Clone, PartialEq, Debug)]
pub struct AceFreeHandProbability {
    /// Exact value `(28! 12!)/(32! 8!) = 99/7192`.
    pub exact: Ratio<num_bigint::BigInt>,
    /// Exact value as a float.
    pub exact_f64: f64,
    /// Stirling approximation without correction terms.
    pub stirling_plain: f64,
    /// Stirling approximation with the `1/(12x)` correction.
    pub stirling_corrected: f64,
}

/// Probability of receiving none of the four aces in a 12-card piquet
/// hand, with Stirling approximations of the factorial ratio.
pub fn piquet_aces_probability() -> AceFreeHandProbability {
    let num = factorial(28) * factorial(12);
    let den = factorial(32) * factorial(8);
    let exact = Ratio::new(num.into(), den.into());
    let stirling = |t: StirlingTerms| {
        (ln_factorial_stirling(28, t) + ln_factorial_stirling(12, t)
            - ln_factorial_stirling(32, t)
            - ln_factorial_stirling(8, t))
        .exp()
    };
    AceFreeHandProbability {
        exact_f64: exact.to_f64().unwrap(),
        exact,
        stirling_plain: stirling(StirlingTerms::None),
        stirling_corrected: stirling(StirlingTerms::OneCorrection),
    }
}

#[cfg(test)]
mod test {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_bigint::BigInt;

    #[test]
    fn binomial_lottery_draw() {
        assert_eq!(binomial(90, 3).unwrap(), BigUint::from(117_480u32));
    }

    #[test]
    fn binomial_empty_selection() {
        assert_eq!(binomial(17, 0).unwrap(), BigUint::one());
    }

    #[test]
    fn binomial_seven_of_twelve() {
        // Oracle: exhaustive enumeration of 7-subsets of a 12-set.
        let mut count = 0u64;
        for mask in 0u32..(1 << 12) {
            if mask.count_ones() == 7 {
                count += 1;
            }
        }
        assert_eq!(count, 792);
        assert_eq!(binomial(12, 7).unwrap(), BigUint::from(count));
    }

    #[test]
    fn binomial_rejects_oversized_selection() {
        assert_eq!(
            binomial(3, 4).unwrap_err(),
            CombinatoricsError::SelectionTooLarge
        );
    }

    #[test]
    fn multiset_two_dice() {
        assert_eq!(multiset_count(6, 2).unwrap(), BigUint::from(21u32));
    }

    #[test]
    fn multiset_three_dice() {
        assert_eq!(multiset_count(6, 3).unwrap(), BigUint::from(56u32));
    }

    #[test]
    fn multiset_single_element() {
        assert_eq!(multiset_count(1, 9).unwrap(), BigUint::one());
    }

    #[test]
    fn pascal_identity() {
        for m in 1..=60u64 {
            for n in 1..m {
                assert_eq!(
                    binomial(m, n).unwrap(),
                    binomial(m - 1, n - 1).unwrap() + binomial(m - 1, n).unwrap()
                );
            }
            assert_eq!(binomial(m, m).unwrap(), BigUint::one());
        }
    }

    #[test]
    fn binomial_sums() {
        for m in 1..=20u64 {
            let total: BigUint = (0..=m).map(|n| binomial(m, n).unwrap()).sum();
            assert_eq!(total, BigUint::from(2u32).pow(m as u32));
            let odd: BigUint = (1..=m)
                .step_by(2)
                .map(|n| binomial(m, n).unwrap())
                .sum();
            assert_eq!(odd, BigUint::from(2u32).pow(m as u32 - 1));
            let even: BigUint = (2..=m)
                .step_by(2)
                .map(|n| binomial(m, n).unwrap())
                .sum();
            assert_eq!(even + BigUint::one(), BigUint::from(2u32).pow(m as u32 - 1));
        }
    }

    #[test]
    fn log_factorial_of_ten() {
        let lf = log_factorial(10);
        assert_abs_diff_eq!(lf.exact_log10, 6.5597630, epsilon = 5e-7);
        let one_term =
            ln_factorial_stirling(10, StirlingTerms::OneCorrection) / std::f64::consts::LN_10;
        assert_abs_diff_eq!(one_term, 6.5597642, epsilon = 5e-7);
    }

    #[test]
    fn log_factorial_of_one() {
        assert_eq!(log_factorial(1).exact_log10, 0.0);
    }

    #[test]
    fn log_factorial_large_ratio() {
        // lg(459! / (51!)^9)
        let v = log_factorial(459).stirling_log10 - 9.0 * log_factorial(51).stirling_log10;
        assert_abs_diff_eq!(v, 428.445, epsilon = 1e-3);
        let exact = log_factorial(459).exact_log10 - 9.0 * log_factorial(51).exact_log10;
        assert_abs_diff_eq!(v, exact, epsilon = 1e-5);
    }

    #[test]
    fn stirling_matches_exact_above_ten() {
        for x in 10..=400u64 {
            let lf = log_factorial(x);
            assert_abs_diff_eq!(lf.stirling_log10, lf.exact_log10, epsilon = 1e-6);
        }
    }

    #[test]
    fn exact_and_log_counts_consistent() {
        for m in (10..=170u64).step_by(16) {
            let exact = factorial(m).to_f64().unwrap().log10();
            let lf = log_factorial(m);
            assert_abs_diff_eq!(lf.exact_log10, exact, epsilon = exact.abs() * 1e-9);
        }
    }

    #[test]
    fn piquet_hand_exact_fraction() {
        let p = piquet_aces_probability();
        assert_eq!(
            p.exact,
            Ratio::new(BigInt::from(99), BigInt::from(7192))
        );
        assert_abs_diff_eq!(p.exact_f64, 99.0 / 7192.0, epsilon = 1e-15);
    }

    #[test]
    fn piquet_hand_stirling_plain() {
        let p = piquet_aces_probability();
        assert_abs_diff_eq!(p.stirling_plain, 0.013807, epsilon = 1e-6);
    }

    #[test]
    fn piquet_hand_stirling_corrected() {
        let p = piquet_aces_probability();
        assert_abs_diff_eq!(p.stirling_corrected, 0.0137653, epsilon = 1e-6);
    }
}
