//! Combination of measurements: weighted pooling of series, error
//! propagation through linear relations, empirical sensitivities, and
//! least-squares estimation for one or many unknowns.

use crate::deviation::t_of_p;

/// A series of measurements of one quantity, with its count, mean, and
/// modulus.
#[derive(Clone, PartialEq, Debug)]
pub struct MeasurementSeries {
    pub mean: f64,
    pub m: usize,
    pub gamma: f64,
    pub label: String,
    /// Whether the errors can be assumed symmetric about zero. When
    /// false the probabilistic limits are refused and only point
    /// estimates are reported.
    pub symmetric_errors: bool,
}

/// One condition equation: `sum C_j x_j = observed`.
#[derive(Clone, PartialEq, Debug)]
pub struct ConditionRow {
    pub coefficients: Vec<f64>,
    pub observed: f64,
}

/// Errors raised by the measurement-combination operations.
#[derive(Clone, PartialEq, Debug)]
pub enum MeasurementError {
    EmptyInput,
    LengthMismatch,
    /// All coefficients vanish, or the normal equations are singular.
    SingularSystem,
    /// A modulus or step that must be positive is not.
    NonPositiveScale,
    /// Probabilistic limits are unavailable under asymmetric errors.
    AsymmetricErrors,
    BadProbability,
}

impl std::fmt::Display for MeasurementError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            MeasurementError::EmptyInput => write!(f, "no series or rows supplied"),
            MeasurementError::LengthMismatch => write!(f, "parallel lists differ in length"),
            MeasurementError::SingularSystem => write!(f, "system of conditions is singular"),
            MeasurementError::NonPositiveScale => {
                write!(f, "modulus and step arguments must be positive")
            }
            MeasurementError::AsymmetricErrors => {
                write!(f, "probabilistic limits need the symmetric-error assumption")
            }
            MeasurementError::BadProbability => write!(f, "probability argument out of range"),
        }
    }
}

impl std::error::Error for MeasurementError {}

/// Combined mean of several series and the scale of its error window.
#[derive(Clone, PartialEq, Debug)]
pub struct CombinedMean {
    pub mean: f64,
    /// `sqrt(sum m_i gamma_i^2)`; the half-width at probability `P`
    /// is `t_of_p(P) / combined_weight`.
    pub combined_weight: f64,
    /// Absent when any component declared asymmetric errors.
    pub limits_available: bool,
}

impl CombinedMean {
    /// Half-width of the error window at probability `prob`.
    pub fn limit(&self, prob: f64) -> Result<f64, MeasurementError> {
        if !self.limits_available {
            return Err(MeasurementError::AsymmetricErrors);
        }
        let t = t_of_p(prob).map_err(|_| MeasurementError::BadProbability)?;
        Ok(t / self.combined_weight)
    }
}

/// Pools several series of the same quantity, weighting each mean by
/// `m_i gamma_i^2`.
///
/// # Errors
///
/// Returns an error for an empty list or non-positive moduli.
pub fn combine_weighted_means(
    series: &[MeasurementSeries],
) -> Result<CombinedMean, MeasurementError> {
    if series.is_empty() {
        return Err(MeasurementError::EmptyInput);
    }
    if series.iter().any(|s| s.gamma <= 0.0 || s.m == 0) {
        return Err(MeasurementError::NonPositiveScale);
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for s in series {
        let w = s.m as f64 * s.gamma * s.gamma;
        num += w * s.mean;
        den += w;
    }
    Ok(CombinedMean {
        mean: num / den,
        combined_weight: den.sqrt(),
        limits_available: series.iter().all(|s| s.symmetric_errors),
    })
}

/// Error limit of `sum C_i x_i` from per-quantity limits at the same
/// probability: `sqrt(sum C_i^2 l_i^2)`.
///
/// # Errors
///
/// Returns an error on length mismatch.
pub fn propagate_linear(coeffs: &[f64], limits: &[f64]) -> Result<f64, MeasurementError> {
    if coeffs.len() != limits.len() {
        return Err(MeasurementError::LengthMismatch);
    }
    Ok(coeffs
        .iter()
        .zip(limits)
        .map(|(c, l)| c * c * l * l)
        .sum::<f64>()
        .sqrt())
}

/// Empirical differential coefficients of `f` at `point`:
/// `C_i = (f(point + step_i e_i) - f(point)) / step_i`.
///
/// # Errors
///
/// Returns an error on length mismatch or a zero step.
pub fn numeric_sensitivities<F>(
    f: F,
    point: &[f64],
    steps: &[f64],
) -> Result<Vec<f64>, MeasurementError>
where
    F: Fn(&[f64]) -> f64,
{
    if point.len() != steps.len() {
        return Err(MeasurementError::LengthMismatch);
    }
    if steps.iter().any(|&s| s == 0.0) {
        return Err(MeasurementError::NonPositiveScale);
    }
    let base = f(point);
    let mut out = Vec::with_capacity(point.len());
    let mut x = point.to_vec();
    for i in 0..point.len() {
        x[i] += steps[i];
        out.push((f(&x) - base) / steps[i]);
        x[i] = point[i];
    }
    Ok(out)
}

/// Single-unknown estimate by the sum rule: `x = sum observed / sum C`.
///
/// # Errors
///
/// Returns an error when the coefficients sum to zero.
pub fn cotes_estimate(rows: &[ConditionRow]) -> Result<f64, MeasurementError> {
    if rows.is_empty() {
        return Err(MeasurementError::EmptyInput);
    }
    let sum_c: f64 = rows.iter().map(|r| r.coefficients[0]).sum();
    if sum_c.abs() < 1e-12 {
        return Err(MeasurementError::SingularSystem);
    }
    Ok(rows.iter().map(|r| r.observed).sum::<f64>() / sum_c)
}

/// Single-unknown least-squares estimate with its weight and limit.
#[derive(Clone, PartialEq, Debug)]
pub struct SingleUnknownFit {
    pub x: f64,
    /// `gamma sqrt(sum C^2)`; the half-width at probability `P` is
    /// `t_of_p(P) / weight`.
    pub weight: f64,
    pub gamma: f64,
}

impl SingleUnknownFit {
    /// Half-width of the error window at probability `prob`.
    pub fn limit(&self, prob: f64) -> Result<f64, MeasurementError> {
        let t = t_of_p(prob).map_err(|_| MeasurementError::BadProbability)?;
        Ok(t / self.weight)
    }
}

/// Estimates one unknown from condition rows by minimizing the sum of
/// squared residuals: `x = sum C d / sum C^2`.
///
/// When `gamma` is not supplied it is estimated from the residuals in
/// the same way as the empirical modulus of a measurement series.
///
/// # Errors
///
/// Returns an error when every coefficient vanishes.
pub fn laplace_ls_single(
    rows: &[ConditionRow],
    gamma: Option<f64>,
) -> Result<SingleUnknownFit, MeasurementError> {
    if rows.is_empty() {
        return Err(MeasurementError::EmptyInput);
    }
    let sum_cc: f64 = rows.iter().map(|r| r.coefficients[0].powi(2)).sum();
    if sum_cc < 1e-24 {
        return Err(MeasurementError::SingularSystem);
    }
    let sum_cd: f64 = rows
        .iter()
        .map(|r| r.coefficients[0] * r.observed)
        .sum();
    let x = sum_cd / sum_cc;
    let gamma = match gamma {
        Some(g) if g > 0.0 => g,
        Some(_) => return Err(MeasurementError::NonPositiveScale),
        None => {
            let ssq: f64 = rows
                .iter()
                .map(|r| (r.coefficients[0] * x - r.observed).powi(2))
                .sum();
            if ssq <= 0.0 {
                f64::INFINITY
            } else {
                (rows.len() as f64 / (2.0 * ssq)).sqrt()
            }
        }
    };
    Ok(SingleUnknownFit {
        x,
        weight: gamma * sum_cc.sqrt(),
        gamma,
    })
}

/// Single-unknown fit with per-row moduli:
/// `x = sum g^2 C d / sum g^2 C^2`, window scale `sqrt(sum g^2 C^2)`.
///
/// # Errors
///
/// Returns an error for non-positive moduli or an all-zero system.
pub fn heteroscedastic_ls_single(
    rows: &[ConditionRow],
    gammas: &[f64],
) -> Result<SingleUnknownFit, MeasurementError> {
    if rows.len() != gammas.len() {
        return Err(MeasurementError::LengthMismatch);
    }
    if rows.is_empty() {
        return Err(MeasurementError::EmptyInput);
    }
    if gammas.iter().any(|&g| g <= 0.0) {
        return Err(MeasurementError::NonPositiveScale);
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (r, g) in rows.iter().zip(gammas) {
        let c = r.coefficients[0];
        num += g * g * c * r.observed;
        den += g * g * c * c;
    }
    if den < 1e-24 {
        return Err(MeasurementError::SingularSystem);
    }
    Ok(SingleUnknownFit {
        x: num / den,
        weight: den.sqrt(),
        gamma: 1.0,
    })
}

/// Multi-unknown least-squares solution.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiFit {
    pub x: Vec<f64>,
    pub residual_sum_of_squares: f64,
}

/// Solves for several unknowns by the normal equations with partial
/// pivoting.
///
/// # Errors
///
/// Returns an error for a rank-deficient system or mismatched row
/// widths.
pub fn least_squares_multi(rows: &[ConditionRow]) -> Result<MultiFit, MeasurementError> {
    if rows.is_empty() {
        return Err(MeasurementError::EmptyInput);
    }
    let k = rows[0].coefficients.len();
    if k == 0 || rows.iter().any(|r| r.coefficients.len() != k) {
        return Err(MeasurementError::LengthMismatch);
    }
    if rows.len() < k {
        return Err(MeasurementError::SingularSystem);
    }
    // Normal equations A x = b with A = C'C, b = C'd.
    let mut a = vec![vec![0.0f64; k + 1]; k];
    for r in rows {
        for i in 0..k {
            for j in 0..k {
                a[i][j] += r.coefficients[i] * r.coefficients[j];
            }
            a[i][k] += r.coefficients[i] * r.observed;
        }
    }
    // Gaussian elimination with partial pivoting.
    for col in 0..k {
        let pivot_row = (col..k)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[pivot_row][col].abs() < 1e-12 {
            return Err(MeasurementError::SingularSystem);
        }
        a.swap(col, pivot_row);
        for row in 0..k {
            if row != col {
                let factor = a[row][col] / a[col][col];
                for j in col..=k {
                    a[row][j] -= factor * a[col][j];
                }
            }
        }
    }
    let x: Vec<f64> = (0..k).map(|i| a[i][k] / a[i][i]).collect();
    let rss: f64 = rows
        .iter()
        .map(|r| {
            let fit: f64 = r.coefficients.iter().zip(&x).map(|(c, v)| c * v).sum();
            (fit - r.observed).powi(2)
        })
        .sum();
    Ok(MultiFit {
        x,
        residual_sum_of_squares: rss,
    })
}
