//! Life-table calculus: survival curves from hazards, mean and
//! probable (median) remaining life, yearly danger of death,
//! cause-deleted tables, stationary-population death counts, and a
//! birth sex-ratio report built on the inference operations.

use crate::inference::{
    self, BinomialSeries, ComparisonResult, InferenceError,
};

/// A survival table on an age grid: `survival[i]` is the chance of
/// reaching `ages[i]`, non-increasing with `survival[0] = 1` at age 0.
#[derive(Clone, PartialEq, Debug)]
pub struct LifeTable {
    pub ages: Vec<f64>,
    pub survival: Vec<f64>,
    /// Instantaneous death rate on the same grid, when known.
    pub hazard: Option<Vec<f64>>,
}

/// Errors raised by the life-table computations.
#[derive(Clone, PartialEq, Debug)]
pub enum DemographyError {
    /// Ages must increase strictly from zero.
    BadGrid,
    /// Survival must start at one, stay in [0, 1], and never increase.
    BadSurvival,
    /// Hazards must be non-negative.
    NegativeHazard,
    /// The requested age lies outside the table.
    AgeOutOfRange,
    /// No survivors remain at the requested age.
    NoSurvivors,
    /// The table ends before survival halves.
    TruncatedBeforeHalf,
    /// Cause-specific survival must dominate total survival.
    CauseBelowTotal,
    Inference(InferenceError),
}

impl std::fmt::Display for DemographyError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            DemographyError::BadGrid => write!(f, "ages must increase strictly from zero"),
            DemographyError::BadSurvival => {
                write!(f, "survival must be non-increasing from one")
            }
            DemographyError::NegativeHazard => write!(f, "hazard rates must be non-negative"),
            DemographyError::AgeOutOfRange => write!(f, "age outside the table grid"),
            DemographyError::NoSurvivors => write!(f, "no survivors at the requested age"),
            DemographyError::TruncatedBeforeHalf => {
                write!(f, "table ends before survival halves")
            }
            DemographyError::CauseBelowTotal => {
                write!(f, "cause-specific survival falls below the total")
            }
            DemographyError::Inference(e) => write!(f, "inference step failed: {e}"),
        }
    }
}

impl std::error::Error for DemographyError {}

impl From<InferenceError> for DemographyError {
    fn from(e: InferenceError) -> Self {
        DemographyError::Inference(e)
    }
}

impl LifeTable {
    /// Validates and wraps an age grid and survival column.
    ///
    /// # Errors
    ///
    /// Returns an error when the grid does not increase from zero or
    /// the survival column is not a non-increasing run from one.
    pub fn new(ages: Vec<f64>, survival: Vec<f64>) -> Result<LifeTable, DemographyError> {
        if ages.len() != survival.len() || ages.len() < 2 {
            return Err(DemographyError::BadGrid);
        }
        if ages[0] != 0.0 || ages.windows(2).any(|w| w[1] <= w[0]) {
            return Err(DemographyError::BadGrid);
        }
        if (survival[0] - 1.0).abs() > 1e-12
            || survival.iter().any(|&s| !(0.0..=1.0).contains(&s))
            || survival.windows(2).any(|w| w[1] > w[0] + 1e-12)
        {
            return Err(DemographyError::BadSurvival);
        }
        Ok(LifeTable {
            ages,
            survival,
            hazard: None,
        })
    }

    /// The conventional grid: monthly steps below age one (early
    /// mortality moves too fast for yearly bins), yearly steps up to
    /// `terminal`.
    pub fn standard_grid(terminal: u32) -> Vec<f64> {
        let mut ages: Vec<f64> = (0..12).map(|m| f64::from(m) / 12.0).collect();
        ages.extend((1..=terminal).map(f64::from));
        ages
    }

    /// Survival at an arbitrary age, interpolated linearly in `log F`
    /// (exact for piecewise-exponential survival).
    ///
    /// # Errors
    ///
    /// Returns an error outside the grid.
    pub fn survival_at(&self, age: f64) -> Result<f64, DemographyError> {
        let last = *self.ages.last().expect("validated non-empty");
        if !(0.0..=last).contains(&age) {
            return Err(DemographyError::AgeOutOfRange);
        }
        let i = match self
            .ages
            .binary_search_by(|a| a.partial_cmp(&age).expect("finite ages"))
        {
            Ok(i) => return Ok(self.survival[i]),
            Err(i) => i - 1,
        };
        let (a0, a1) = (self.ages[i], self.ages[i + 1]);
        let (s0, s1) = (self.survival[i], self.survival[i + 1]);
        let w = (age - a0) / (a1 - a0);
        if s1 <= 0.0 || s0 <= 0.0 {
            // Log interpolation breaks at zero; fall back to linear.
            return Ok(s0 + w * (s1 - s0));
        }
        Ok((s0.ln() + w * (s1.ln() - s0.ln())).exp())
    }

    /// Trapezoid integral of survival from `age` to the table end.
    fn tail_integral(&self, age: f64) -> Result<f64, DemographyError> {
        let mut total = 0.0;
        let s_at = self.survival_at(age)?;
        let mut prev_age = age;
        let mut prev_s = s_at;
        for (&a, &s) in self.ages.iter().zip(&self.survival) {
            if a <= age {
                continue;
            }
            total += 0.5 * (prev_s + s) * (a - prev_age);
            prev_age = a;
            prev_s = s;
        }
        Ok(total)
    }
}

/// Builds a survival table from a hazard table on the same grid:
/// `F(x) = exp(-integral of the hazard)`, trapezoid quadrature.
///
/// # Errors
///
/// Returns an error for invalid grids or negative hazards.
pub fn survival_from_hazard(
    ages: Vec<f64>,
    hazard: Vec<f64>,
) -> Result<LifeTable, DemographyError> {
    if ages.len() != hazard.len() || ages.len() < 2 || ages[0] != 0.0 {
        return Err(DemographyError::BadGrid);
    }
    if ages.windows(2).any(|w| w[1] <= w[0]) {
        return Err(DemographyError::BadGrid);
    }
    if hazard.iter().any(|&f| f < 0.0) {
        return Err(DemographyError::NegativeHazard);
    }
    let mut survival = Vec::with_capacity(ages.len());
    let mut cumulative = 0.0;
    survival.push(1.0);
    for i in 1..ages.len() {
        cumulative += 0.5 * (hazard[i - 1] + hazard[i]) * (ages[i] - ages[i - 1]);
        survival.push((-cumulative).exp());
    }
    let mut table = LifeTable::new(ages, survival)?;
    table.hazard = Some(hazard);
    Ok(table)
}

/// Mean remaining life at age `x`: the tail integral of survival
/// divided by survival at `x`.
///
/// # Errors
///
/// Returns an error outside the grid or where no survivors remain.
pub fn mean_life(table: &LifeTable, x: f64) -> Result<f64, DemographyError> {
    let s = table.survival_at(x)?;
    if s <= 0.0 {
        return Err(DemographyError::NoSurvivors);
    }
    Ok(table.tail_integral(x)? / s)
}

/// Probable (median) remaining life at age `x`: the `xi` solving
/// `F(x + xi) = F(x)/2`, interpolated linearly in `log F`.
///
/// # Errors
///
/// Returns an error when the table ends before survival halves.
pub fn probable_life(table: &LifeTable, x: f64) -> Result<f64, DemographyError> {
    let s = table.survival_at(x)?;
    if s <= 0.0 {
        return Err(DemographyError::NoSurvivors);
    }
    let half = s / 2.0;
    for i in 0..table.ages.len() {
        if table.ages[i] <= x || table.survival[i] > half {
            continue;
        }
        if table.survival[i] == half {
            return Ok(table.ages[i] - x);
        }
        // First node at or below half-survival: invert the log-linear
        // segment from the previous node.
        let (a1, s1) = (table.ages[i], table.survival[i]);
        let (a0, s0) = if i == 0 {
            (x, s)
        } else if table.ages[i - 1] < x {
            (x, s)
        } else {
            (table.ages[i - 1], table.survival[i - 1])
        };
        if s1 <= 0.0 {
            // Linear fallback on the terminal segment.
            let w = (s0 - half) / (s0 - s1);
            return Ok(a0 + w * (a1 - a0) - x);
        }
        let w = (s0.ln() - half.ln()) / (s0.ln() - s1.ln());
        return Ok(a0 + w * (a1 - a0) - x);
    }
    Err(DemographyError::TruncatedBeforeHalf)
}

/// One-year death chance at `age`: `(F(age) - F(age+1)) / F(age)`.
///
/// # Errors
///
/// Returns an error at the terminal age or with no survivors.
pub fn yearly_danger(table: &LifeTable, age: f64) -> Result<f64, DemographyError> {
    let s0 = table.survival_at(age)?;
    if s0 <= 0.0 {
        return Err(DemographyError::NoSurvivors);
    }
    let s1 = table.survival_at(age + 1.0)?;
    Ok((s0 - s1) / s0)
}

/// Removes an independent cause of death: the deleted table is the
/// pointwise ratio of total survival to the cause-specific survival.
///
/// # Errors
///
/// Returns an error when the cause table does not dominate the total
/// (ratio above one) or the grids differ.
pub fn delete_cause(
    table: &LifeTable,
    cause: &LifeTable,
) -> Result<LifeTable, DemographyError> {
    if table.ages != cause.ages {
        return Err(DemographyError::BadGrid);
    }
    let mut survival = Vec::with_capacity(table.ages.len());
    for (&total, &part) in table.survival.iter().zip(&cause.survival) {
        if part <= 0.0 {
            survival.push(0.0);
            continue;
        }
        let ratio = total / part;
        if ratio > 1.0 + 1e-9 {
            return Err(DemographyError::CauseBelowTotal);
        }
        survival.push(ratio.min(1.0));
    }
    LifeTable::new(table.ages.clone(), survival)
}

/// Deaths by single year of age in a stationary population with
/// `births` per year: the first-year count is
/// `births * (1 - integral of F over the first year)` and later years
/// follow the telescoping differences of year integrals, so the counts
/// sum back to `births`.
pub fn deaths_by_age(table: &LifeTable, births: f64) -> Vec<f64> {
    let last_age = *table.ages.last().expect("validated non-empty");
    let years = last_age.floor() as u32;
    let year_integral = |k: u32| -> f64 {
        let lo = f64::from(k);
        let hi = (lo + 1.0).min(last_age);
        if lo >= last_age {
            return 0.0;
        }
        table.tail_integral(lo).unwrap_or(0.0) - table.tail_integral(hi).unwrap_or(0.0)
    };
    let mut out = Vec::with_capacity(years as usize + 1);
    let mut prev = 1.0;
    for k in 0..=years {
        let current = year_integral(k);
        out.push(births * (prev - current));
        prev = current;
    }
    out
}

/// One row of the sex-ratio report.
#[derive(Clone, PartialEq, Debug)]
pub struct SexRatioRow {
    pub label: String,
    pub m: u64,
    pub n: u64,
    /// Observed chance of a male birth.
    pub p: f64,
    /// Weight of that chance per the inference module.
    pub weight: f64,
    /// Probability that the true chance lies within `p - 1/2` of the
    /// observed value.
    pub p_confidence: f64,
    /// Chance that the true ratio is actually on the other side of
    /// one half: `(1 - P)/2`.
    pub reversal: f64,
}

/// Pooled figures plus per-series rows and a comparison of the first
/// two series.
#[derive(Clone, PartialEq, Debug)]
pub struct SexRatioReport {
    pub pooled_m: u64,
    pub pooled_n: u64,
    pub pooled_p: f64,
    pub pooled_weight: f64,
    pub rows: Vec<SexRatioRow>,
    pub comparison: Option<ComparisonResult>,
}

/// Builds the birth sex-ratio report: pooled chance and weight,
/// per-series confidence that the majority sex is real, and (when at
/// least two series are given) a two-series difference test.
///
/// # Errors
///
/// Returns an error when any series is degenerate.
pub fn sex_ratio_report(series: &[BinomialSeries]) -> Result<SexRatioReport, DemographyError> {
    if series.is_empty() {
        return Err(DemographyError::Inference(InferenceError::EmptySeries));
    }
    let pooled_m: u64 = series.iter().map(|s| s.m).sum();
    let pooled_n: u64 = series.iter().map(|s| s.n).sum();
    let pooled = BinomialSeries::new(pooled_m, pooled_n, "pooled")?;
    let mut rows = Vec::with_capacity(series.len());
    for s in series {
        let p = s.ratio();
        let l = (p - 0.5).abs();
        let (_, p_confidence) = inference::chance_interval_probability(s, l)?;
        rows.push(SexRatioRow {
            label: s.label.clone(),
            m: s.m,
            n: s.n,
            p,
            weight: inference::weight_of_chance(s)?,
            p_confidence,
            reversal: (1.0 - p_confidence) / 2.0,
        });
    }
    let comparison = if series.len() >= 2 {
        Some(inference::compare_two_series(&series[0], &series[1], 0.0)?)
    } else {
        None
    };
    Ok(SexRatioReport {
        pooled_m,
        pooled_n,
        pooled_p: pooled.ratio(),
        pooled_weight: inference::weight_of_chance(&pooled)?,
        rows,
        comparison,
    })
}
