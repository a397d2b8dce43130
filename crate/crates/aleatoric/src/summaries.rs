//! Summaries of continuous probability laws: mean, median, and modulus
//! of convergence, plus densities of simple functions of random
//! variables and mixtures of laws.

use crate::deviation::t_of_p;

/// A probability density on a bounded interval.
#[derive(Clone, PartialEq, Debug)]
pub enum DensityModel {
    /// Uniform on `[a, b]`.
    Uniform { a: f64, b: f64 },
    /// Density `2x` on `[0, 1]`.
    LinearIncreasing,
    /// Density `3x^2` on `[0, 1]`.
    Quadratic,
    /// Cosine law for a latitude drawn uniformly on the sphere:
    /// density `cos x` on `[0, pi/2]` radians.
    SphereLatitude,
    /// Triangular density of the sum of two uniforms on `[0, 2]`.
    TriangularSum,
    /// Piecewise-linear density through the given `(x, ordinate)`
    /// points; renormalized when the raw integral is within 1e-6 of 1.
    Tabulated(Vec<(f64, f64)>),
    /// Weighted mixture of component laws.
    Mixture(Vec<(DensityModel, f64)>),
}

/// Mean, median, and modulus of convergence of a law.
///
/// The modulus is `g = 1 / sqrt(2 Var)`; larger `g` means empirical
/// means of samples from the law cluster faster around the true mean.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct LawSummary {
    pub mean: f64,
    pub median: f64,
    pub modulus: f64,
}

/// Errors raised by the law-summary operations.
#[derive(Clone, PartialEq, Debug)]
pub enum SummaryError {
    /// A tabulated density did not integrate to 1 (within 1e-6) or had
    /// negative ordinates.
    NotNormalizable,
    /// Tabulated abscissas must strictly increase and number at least two.
    BadTabulation,
    /// Mixture weights must be probabilities summing to 1.
    BadWeights,
    /// Parallel lists differ in length.
    LengthMismatch,
    /// Argument outside its stated domain.
    OutOfDomain,
}

impl std::fmt::Display for SummaryError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            SummaryError::NotNormalizable => {
                write!(f, "tabulated density does not integrate to one")
            }
            SummaryError::BadTabulation => {
                write!(f, "tabulated abscissas must strictly increase (need at least two)")
            }
            SummaryError::BadWeights => write!(f, "mixture weights must sum to one"),
            SummaryError::LengthMismatch => write!(f, "parallel lists differ in length"),
            SummaryError::OutOfDomain => write!(f, "argument outside its domain"),
        }
    }
}

impl std::error::Error for SummaryError {}

/// First and second raw moments together with the normalization mass.
struct Moments {
    mass: f64,
    first: f64,
    second: f64,
}

impl DensityModel {
    /// Support interval of the law.
    pub fn support(&self) -> (f64, f64) {
        match self {
            DensityModel::Uniform { a, b } => (*a, *b),
            DensityModel::LinearIncreasing | DensityModel::Quadratic => (0.0, 1.0),
            DensityModel::SphereLatitude => (0.0, std::f64::consts::FRAC_PI_2),
            DensityModel::TriangularSum => (0.0, 2.0),
            DensityModel::Tabulated(pts) => (pts[0].0, pts[pts.len() - 1].0),
            DensityModel::Mixture(parts) => parts.iter().fold(
                (f64::INFINITY, f64::NEG_INFINITY),
                |(lo, hi), (m, _)| {
                    let (a, b) = m.support();
                    (lo.min(a), hi.max(b))
                },
            ),
        }
    }

    /// Density ordinate at `x` (zero outside the support).
    pub fn pdf(&self, x: f64) -> f64 {
        let (a, b) = self.support();
        if x < a || x > b {
            return 0.0;
        }
        match self {
            DensityModel::Uniform { a, b } => 1.0 / (b - a),
            DensityModel::LinearIncreasing => 2.0 * x,
            DensityModel::Quadratic => 3.0 * x * x,
            DensityModel::SphereLatitude => x.cos(),
            DensityModel::TriangularSum => 1.0 - (x - 1.0).abs(),
            DensityModel::Tabulated(pts) => {
                let norm = tabulated_moments(pts).mass;
                for w in pts.windows(2) {
                    let ((x0, y0), (x1, y1)) = (w[0], w[1]);
                    if x <= x1 {
                        return (y0 + (y1 - y0) * (x - x0) / (x1 - x0)) / norm;
                    }
                }
                0.0
            }
            DensityModel::Mixture(parts) => {
                parts.iter().map(|(m, k)| k * m.pdf(x)).sum()
            }
        }
    }

    /// Cumulative distribution at `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        let (a, b) = self.support();
        if x <= a {
            return 0.0;
        }
        if x >= b {
            return 1.0;
        }
        match self {
            DensityModel::Uniform { a, b } => (x - a) / (b - a),
            DensityModel::LinearIncreasing => x * x,
            DensityModel::Quadratic => x * x * x,
            DensityModel::SphereLatitude => x.sin(),
            DensityModel::TriangularSum => {
                if x <= 1.0 {
                    0.5 * x * x
                } else {
                    1.0 - 0.5 * (2.0 - x) * (2.0 - x)
                }
            }
            DensityModel::Tabulated(pts) => {
                let norm = tabulated_moments(pts).mass;
                let mut acc = 0.0;
                for w in pts.windows(2) {
                    let ((x0, y0), (x1, y1)) = (w[0], w[1]);
                    if x >= x1 {
                        acc += 0.5 * (y0 + y1) * (x1 - x0);
                    } else {
                        let y = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
                        acc += 0.5 * (y0 + y) * (x - x0);
                        break;
                    }
                }
                acc / norm
            }
            DensityModel::Mixture(parts) => {
                parts.iter().map(|(m, k)| k * m.cdf(x)).sum()
            }
        }
    }

    fn moments(&self) -> Moments {
        match self {
            DensityModel::Uniform { a, b } => Moments {
                mass: 1.0,
                first: 0.5 * (a + b),
                second: (a * a + a * b + b * b) / 3.0,
            },
            DensityModel::LinearIncreasing => Moments {
                mass: 1.0,
                first: 2.0 / 3.0,
                second: 0.5,
            },
            DensityModel::Quadratic => Moments {
                mass: 1.0,
                first: 0.75,
                second: 0.6,
            },
            DensityModel::SphereLatitude => {
                let pi = std::f64::consts::PI;
                Moments {
                    mass: 1.0,
                    first: pi / 2.0 - 1.0,
                    second: pi * pi / 4.0 - 2.0,
                }
            }
            DensityModel::TriangularSum => Moments {
                mass: 1.0,
                first: 1.0,
                second: 7.0 / 6.0,
            },
            DensityModel::Tabulated(pts) => tabulated_moments(pts),
            DensityModel::Mixture(parts) => {
                let mut first = 0.0;
                let mut second = 0.0;
                for (m, k) in parts {
                    let mo = m.moments();
                    first += k * mo.first / mo.mass;
                    second += k * mo.second / mo.mass;
                }
                Moments { mass: 1.0, first, second }
            }
        }
    }

    fn validate(&self) -> Result<(), SummaryError> {
        match self {
            DensityModel::Uniform { a, b } => {
                if b > a {
                    Ok(())
                } else {
                    Err(SummaryError::OutOfDomain)
                }
            }
            DensityModel::Tabulated(pts) => {
                if pts.len() < 2 || pts.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return Err(SummaryError::BadTabulation);
                }
                if pts.iter().any(|&(_, y)| y < 0.0) {
                    return Err(SummaryError::NotNormalizable);
                }
                let mass = tabulated_moments(pts).mass;
                if (mass - 1.0).abs() > 1e-6 {
                    return Err(SummaryError::NotNormalizable);
                }
                Ok(())
            }
            DensityModel::Mixture(parts) => {
                let total: f64 = parts.iter().map(|(_, k)| k).sum();
                if (total - 1.0).abs() > 1e-9 || parts.iter().any(|(_, k)| *k < 0.0) {
                    return Err(SummaryError::BadWeights);
                }
                for (m, _) in parts {
                    m.validate()?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Exact piecewise-linear moments of a tabulated density.
fn tabulated_moments(pts: &[(f64, f64)]) -> Moments {
    let mut mass = 0.0;
    let mut first = 0.0;
    let mut second = 0.0;
    for w in pts.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        let h = x1 - x0;
        mass += 0.5 * (y0 + y1) * h;
        // Integrals of x^k times the linear interpolant over [x0, x1].
        first += h * (y0 * (2.0 * x0 + x1) + y1 * (x0 + 2.0 * x1)) / 6.0;
        second += h
            * (y0 * (3.0 * x0 * x0 + 2.0 * x0 * x1 + x1 * x1)
                + y1 * (x0 * x0 + 2.0 * x0 * x1 + 3.0 * x1 * x1))
            / 12.0;
    }
    Moments { mass, first, second }
}

/// Modulus of convergence from raw moments: `1 / sqrt(2 Var)`.
pub fn modulus_from_moments(mean: f64, second_moment: f64) -> f64 {
    1.0 / (2.0 * (second_moment - mean * mean)).sqrt()
}

/// Mean, median, and modulus of the law.
///
/// Built-in laws use closed forms; tabulated laws use exact
/// piecewise-linear integration, with the median found by inverting
/// the piecewise-quadratic cumulative.
///
/// # Errors
///
/// Returns an error for a tabulated density that is negative or does
/// not integrate to one, or mixture weights that do not sum to one.
pub fn summarize(model: &DensityModel) -> Result<LawSummary, SummaryError> {
    model.validate()?;
    let mo = model.moments();
    let mean = mo.first / mo.mass;
    let second = mo.second / mo.mass;
    let (mut lo, mut hi) = model.support();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if model.cdf(mid) < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(LawSummary {
        mean,
        median: 0.5 * (lo + hi),
        modulus: modulus_from_moments(mean, second),
    })
}

/// Summary of the cosine latitude law, reported with the quarter
/// circumference as the unit of the modulus (mean and median stay in
/// radians).
pub fn latitude_law_summary() -> LawSummary {
    let s = summarize(&DensityModel::SphereLatitude).unwrap();
    LawSummary {
        mean: s.mean,
        median: s.median,
        // Rescale from radians to quarter-circumference units:
        // g scales inversely with the unit length pi/2.
        modulus: s.modulus * std::f64::consts::FRAC_PI_2,
    }
}

/// Half-width `l` of the window holding the mean of `m` observations
/// with probability `P`: `l = t_of_p(P) / (g sqrt(m))`, in the same
/// units as the modulus `g`.
pub struct MeanDeviationLimit {
    pub l: f64,
    pub small_sample_warning: bool,
}

/// See [`MeanDeviationLimit`].
///
/// # Errors
///
/// Returns an error if `prob` is not in `[0, 1)`.
pub fn mean_deviation_limit(
    summary: &LawSummary,
    m: u64,
    prob: f64,
) -> Result<MeanDeviationLimit, SummaryError> {
    let t = t_of_p(prob).map_err(|_| SummaryError::OutOfDomain)?;
    Ok(MeanDeviationLimit {
        l: t / (summary.modulus * (m as f64).sqrt()),
        small_sample_warning: m < 100,
    })
}

/// Law of the absolute difference of two independent uniforms on
/// `[0, 1]`: density `2(1 - u)`.
pub fn difference_of_uniforms_law() -> DensityModel {
    DensityModel::Tabulated(vec![(0.0, 2.0), (1.0, 0.0)])
}

/// `P(|x - y| >= a) = (1 - a)^2` for independent uniforms `x`, `y`.
///
/// # Errors
///
/// Returns an error unless `0 <= a <= 1`.
pub fn difference_tail(a: f64) -> Result<f64, SummaryError> {
    if !(0.0..=1.0).contains(&a) {
        return Err(SummaryError::OutOfDomain);
    }
    Ok((1.0 - a) * (1.0 - a))
}

/// Tail of the same difference when each coordinate instead carries
/// the triangular weight `2(1 - x)`: `(1 - a)^3 (1 + a/3)`.
///
/// # Errors
///
/// Returns an error unless `0 <= a <= 1`.
pub fn weighted_difference_tail(a: f64) -> Result<f64, SummaryError> {
    if !(0.0..=1.0).contains(&a) {
        return Err(SummaryError::OutOfDomain);
    }
    Ok((1.0 - a).powi(3) * (1.0 + a / 3.0))
}

/// Law of the sum of two independent uniforms on `[0, 1]`: the
/// triangular density on `[0, 2]`.
pub fn sum_of_uniforms_law() -> DensityModel {
    DensityModel::TriangularSum
}

/// Mean of `b + sum c_i x_i` given the component means.
///
/// # Errors
///
/// Returns an error if the lists differ in length.
pub fn linear_combination_mean(
    b: f64,
    coeffs: &[f64],
    means: &[f64],
) -> Result<f64, SummaryError> {
    if coeffs.len() != means.len() {
        return Err(SummaryError::LengthMismatch);
    }
    Ok(b + coeffs.iter().zip(means).map(|(c, m)| c * m).sum::<f64>())
}

/// Weighted mixture of laws.
///
/// # Errors
///
/// Returns an error if the weights do not sum to one.
pub fn mixture(
    models: Vec<DensityModel>,
    weights: Vec<f64>,
) -> Result<DensityModel, SummaryError> {
    if models.len() != weights.len() {
        return Err(SummaryError::LengthMismatch);
    }
    let m = DensityModel::Mixture(models.into_iter().zip(weights).collect());
    m.validate()?;
    Ok(m)
}

/// Mean chance and variance decomposition of a chance mixture.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct ChanceMixtureStats {
    /// `p_bar = sum k_i p_i`.
    pub p_bar: f64,
    /// `p_bar (1 - p_bar)`, the Bernoulli variance at the mean chance.
    pub mixed_variance: f64,
    /// `sum k_i p_i (1 - p_i)`, the mean of the component variances.
    pub mean_component_variance: f64,
    /// `sum_{i<j} k_i k_j (p_i - p_j)^2`; the identity
    /// `mixed_variance = mean_component_variance + spread_term` holds.
    pub spread_term: f64,
}

/// Decomposes the variance of a mixture of chances `p_i` carrying
/// weights `k_i`.
///
/// # Errors
///
/// Returns an error on length mismatch or weights not summing to one.
pub fn chance_mixture_stats(
    ps: &[f64],
    ks: &[f64],
) -> Result<ChanceMixtureStats, SummaryError> {
    if ps.len() != ks.len() {
        return Err(SummaryError::LengthMismatch);
    }
    if (ks.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(SummaryError::BadWeights);
    }
    let p_bar: f64 = ps.iter().zip(ks).map(|(p, k)| p * k).sum();
    let mean_component_variance: f64 =
        ps.iter().zip(ks).map(|(p, k)| k * p * (1.0 - p)).sum();
    let mut spread_term = 0.0;
    for i in 0..ps.len() {
        for j in (i + 1)..ps.len() {
            spread_term += ks[i] * ks[j] * (ps[i] - ps[j]) * (ps[i] - ps[j]);
        }
    }
    Ok(ChanceMixtureStats {
        p_bar,
        mixed_variance: p_bar * (1.0 - p_bar),
        mean_component_variance,
        spread_term,
    })
}

/// Deviation limit for `m` trials grouped into series of length `m1`,
/// where each series draws its chance from the mixture `(ps, ks)`:
/// `l = t sqrt(2 {p_bar(1-p_bar) + (m1-1) sum k_i (p_bar - p_i)^2} / m)`.
///
/// With `m1 = 1` (chance redrawn every trial) this reduces to the
/// single-chance deviation limit at `p_bar`.
///
/// # Errors
///
/// Returns an error if `m1` is zero or does not divide `m`, or the
/// weights are invalid.
pub fn bienayme_series_limit(
    ps: &[f64],
    ks: &[f64],
    m: u64,
    m1: u64,
    prob: f64,
) -> Result<f64, SummaryError> {
    if m1 == 0 || m % m1 != 0 {
        return Err(SummaryError::OutOfDomain);
    }
    let stats = chance_mixture_stats(ps, ks)?;
    let t = t_of_p(prob).map_err(|_| SummaryError::OutOfDomain)?;
    let spread: f64 = ps
        .iter()
        .zip(ks)
        .map(|(p, k)| k * (stats.p_bar - p) * (stats.p_bar - p))
        .sum();
    let var = stats.mixed_variance + (m1 as f64 - 1.0) * spread;
    Ok(t * (2.0 * var / m as f64).sqrt())
}

#[cfg(test)]
mod test {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn uniform_summary() {
        let s = summarize(&DensityModel::Uniform { a: 0.0, b: 1.0 }).unwrap();
        assert_abs_diff_eq!(s.mean, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(s.median, 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(s.modulus, 6f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(s.modulus, 2.4495, epsilon = 5e-5);
    }

    #[test]
    fn linear_summary() {
        let s = summarize(&DensityModel::LinearIncreasing).unwrap();
        assert_abs_diff_eq!(s.mean, 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.median, 0.5f64.sqrt(), epsilon = 1e-9);
        assert_abs_diff_eq!(s.modulus, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn quadratic_summary() {
        let s = summarize(&DensityModel::Quadratic).unwrap();
        assert_abs_diff_eq!(s.mean, 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(s.median, 2f64.powf(-1.0 / 3.0), epsilon = 1e-9);
        assert_abs_diff_eq!(s.modulus, (40.0f64 / 3.0).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn latitude_summary() {
        let s = latitude_law_summary();
        // 32 degrees 42 minutes 15.2 seconds.
        let expected = (32.0f64 + 42.0 / 60.0 + 15.2 / 3600.0).to_radians();
        assert_abs_diff_eq!(s.mean, expected, epsilon = 1.0f64.to_radians() / 3600.0);
        assert_abs_diff_eq!(s.median, 30.0f64.to_radians(), epsilon = 1e-9);
        assert_abs_diff_eq!(s.modulus, 2.9518, epsilon = 1e-3);
    }

    #[test]
    fn tabulated_matches_closed_form() {
        // The triangular sum law tabulated on a fine grid.
        let pts: Vec<(f64, f64)> = (0..=200)
            .map(|i| {
                let x = i as f64 / 100.0;
                (x, 1.0 - (x - 1.0).abs())
            })
            .collect();
        let s = summarize(&DensityModel::Tabulated(pts)).unwrap();
        assert_abs_diff_eq!(s.mean, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(s.median, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(s.modulus, 3f64.sqrt(), epsilon = 1e-3);
    }

    #[test]
    fn tabulated_rejects_unnormalized() {
        let m = DensityModel::Tabulated(vec![(0.0, 1.0), (1.0, 3.0)]);
        assert_eq!(summarize(&m).unwrap_err(), SummaryError::NotNormalizable);
    }

    #[test]
    fn modulus_variance_relation() {
        // 1/g^2 = 2 Var for every built-in, against a quadrature oracle.
        let models = [
            DensityModel::Uniform { a: 0.0, b: 1.0 },
            DensityModel::LinearIncreasing,
            DensityModel::Quadratic,
            DensityModel::SphereLatitude,
            DensityModel::TriangularSum,
        ];
        for m in models {
            let s = summarize(&m).unwrap();
            let (a, b) = m.support();
            let n = 200_000;
            let h = (b - a) / n as f64;
            let mut var = 0.0;
            for i in 0..n {
                let x0 = a + i as f64 * h;
                let x1 = x0 + h;
                let f = |x: f64| (x - s.mean) * (x - s.mean) * m.pdf(x);
                var += h / 6.0 * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
            }
            assert_abs_diff_eq!(1.0 / (s.modulus * s.modulus), 2.0 * var, epsilon = 1e-9);
        }
    }

    #[test]
    fn two_point_law_modulus() {
        // Equal masses at the interval ends: Var = (b-a)^2/4, the
        // largest possible, giving the minimal modulus sqrt(2)/(b-a).
        let (a, b) = (1.0, 4.0);
        let mean = 0.5 * (a + b);
        let second = 0.5 * (a * a + b * b);
        assert_abs_diff_eq!(
            modulus_from_moments(mean, second),
            2f64.sqrt() / (b - a),
            epsilon = 1e-12
        );
    }

    #[test]
    fn uniform_mean_limit() {
        let s = summarize(&DensityModel::Uniform { a: 0.0, b: 1.0 }).unwrap();
        let l = mean_deviation_limit(&s, 1000, 0.5).unwrap();
        assert_abs_diff_eq!(l.l, 0.006159, epsilon = 5e-6);
        assert!(!l.small_sample_warning);
    }

    #[test]
    fn latitude_mean_limit() {
        let s = latitude_law_summary();
        // Modulus in quarter-circumference units, so l is a fraction
        // of 90 degrees.
        let l = mean_deviation_limit(&s, 1000, 0.5).unwrap();
        assert_abs_diff_eq!(l.l, 0.005111, epsilon = 2e-6);
        let arc_seconds = l.l * 90.0 * 3600.0;
        assert_abs_diff_eq!(arc_seconds, 27.0 * 60.0 + 36.0, epsilon = 1.0);
    }

    #[test]
    fn zero_probability_limit() {
        let s = summarize(&DensityModel::Uniform { a: 0.0, b: 1.0 }).unwrap();
        assert_eq!(mean_deviation_limit(&s, 1000, 0.0).unwrap().l, 0.0);
    }

    #[test]
    fn empirical_means_within_limit() {
        // Seeded sampling oracle: the mean of 1e5 draws from each law
        // stays inside the P = 0.999 window.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 100_000u64;
        let cases: Vec<(DensityModel, Box<dyn Fn(f64, f64) -> f64>)> = vec![
            (
                DensityModel::Uniform { a: 0.0, b: 1.0 },
                Box::new(|u, _| u),
            ),
            (DensityModel::LinearIncreasing, Box::new(|u, _| u.sqrt())),
            (DensityModel::Quadratic, Box::new(|u, _| u.cbrt())),
            (DensityModel::SphereLatitude, Box::new(|u, _| u.asin())),
            (DensityModel::TriangularSum, Box::new(|u, v| u + v)),
        ];
        for (model, draw) in cases {
            let s = summarize(&model).unwrap();
            let limit = mean_deviation_limit(&s, n, 0.999).unwrap().l;
            let mut acc = 0.0;
            for _ in 0..n {
                acc += draw(rng.gen::<f64>(), rng.gen::<f64>());
            }
            let mean = acc / n as f64;
            assert!(
                (mean - s.mean).abs() < limit,
                "{model:?}: |{mean} - {}| >= {limit}",
                s.mean
            );
        }
    }

    #[test]
    fn difference_tail_values() {
        assert_abs_diff_eq!(difference_tail(0.3).unwrap(), 0.49, epsilon = 1e-12);
        assert_eq!(difference_tail(0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(
            weighted_difference_tail(0.3).unwrap(),
            0.3773,
            epsilon = 5e-5
        );
        assert!(difference_tail(1.5).is_err());
    }

    #[test]
    fn difference_law_summary() {
        let s = summarize(&difference_of_uniforms_law()).unwrap();
        assert_abs_diff_eq!(s.mean, 1.0 / 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(s.median, 1.0 - 0.5f64.sqrt(), epsilon = 1e-6);
        assert_abs_diff_eq!(s.modulus, 3.0, epsilon = 1e-9);
    }

    #[test]
    fn sum_law_summary() {
        let m = sum_of_uniforms_law();
        let s = summarize(&m).unwrap();
        assert_abs_diff_eq!(s.modulus, 3f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(m.pdf(1.0), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.cdf(1.0), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn linear_combination_means() {
        assert_eq!(
            linear_combination_mean(0.0, &[1.0, 1.0], &[0.5, 0.5]).unwrap(),
            1.0
        );
        assert_eq!(
            linear_combination_mean(0.0, &[1.0, -1.0], &[2.0 / 3.0, 2.0 / 3.0]).unwrap(),
            0.0
        );
        assert_eq!(
            linear_combination_mean(1.0, &[2.0, 3.0], &[0.5, 1.0 / 3.0]).unwrap(),
            3.0
        );
        assert!(linear_combination_mean(0.0, &[1.0], &[]).is_err());
    }

    #[test]
    fn mixture_of_identical_laws_is_idempotent() {
        let m = mixture(
            vec![
                DensityModel::Uniform { a: 0.0, b: 1.0 },
                DensityModel::Uniform { a: 0.0, b: 1.0 },
            ],
            vec![0.5, 0.5],
        )
        .unwrap();
        let s = summarize(&m).unwrap();
        assert_abs_diff_eq!(s.modulus, 6f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn mixture_modulus_identity() {
        // 1/(2g^2) = sum k/(2g_i^2) + sum_{i<j} k_i k_j (M_i - M_j)^2.
        let parts = [
            (DensityModel::LinearIncreasing, 0.5),
            (DensityModel::Uniform { a: 0.0, b: 1.0 }, 0.5),
        ];
        let m = mixture(
            parts.iter().map(|(m, _)| m.clone()).collect(),
            parts.iter().map(|(_, k)| *k).collect(),
        )
        .unwrap();
        let s = summarize(&m).unwrap();
        let mut rhs = 0.0;
        let summaries: Vec<LawSummary> = parts
            .iter()
            .map(|(m, _)| summarize(m).unwrap())
            .collect();
        for (i, (_, k)) in parts.iter().enumerate() {
            rhs += k / (2.0 * summaries[i].modulus * summaries[i].modulus);
            for j in (i + 1)..parts.len() {
                rhs += k * parts[j].1 * (summaries[i].mean - summaries[j].mean).powi(2);
            }
        }
        assert_abs_diff_eq!(1.0 / (2.0 * s.modulus * s.modulus), rhs, epsilon = 1e-12);
        // And the mixture spreads at least as much as its parts on
        // average: 1/g >= sum k_i/g_i.
        let bound: f64 = parts
            .iter()
            .zip(&summaries)
            .map(|((_, k), s)| k / s.modulus)
            .sum();
        assert!(1.0 / s.modulus >= bound);
        assert!(s.modulus < 0.5 * (summaries[0].modulus + summaries[1].modulus));
    }

    #[test]
    fn mixture_rejects_bad_weights() {
        assert_eq!(
            mixture(
                vec![DensityModel::LinearIncreasing],
                vec![0.9],
            )
            .unwrap_err(),
            SummaryError::BadWeights
        );
    }

    #[test]
    fn chance_mixture_identity() {
        let s = chance_mixture_stats(&[0.6, 0.8], &[0.5, 0.5]).unwrap();
        assert_abs_diff_eq!(s.p_bar, 0.7, epsilon = 1e-12);
        assert_abs_diff_eq!(
            s.mixed_variance,
            s.mean_component_variance + s.spread_term,
            epsilon = 1e-12
        );
    }

    #[test]
    fn chance_mixture_equal_chances() {
        let s = chance_mixture_stats(&[0.4, 0.4, 0.4], &[0.2, 0.3, 0.5]).unwrap();
        assert_eq!(s.spread_term, 0.0);
        assert_abs_diff_eq!(s.mixed_variance, s.mean_component_variance, epsilon = 1e-12);
    }

    #[test]
    fn chance_mixture_spread() {
        let s = chance_mixture_stats(&[0.2, 0.9], &[0.3, 0.7]).unwrap();
        assert_abs_diff_eq!(
            s.mixed_variance - s.mean_component_variance,
            0.10290,
            epsilon = 1e-10
        );
    }

    #[test]
    fn series_limit_reduces_when_degenerate() {
        // m1 = 1, or all chances equal, gives the single-chance limit.
        let single = bienayme_series_limit(&[0.5], &[1.0], 10_000, 100, 0.5).unwrap();
        let redrawn = bienayme_series_limit(&[0.4, 0.6], &[0.5, 0.5], 10_000, 1, 0.5).unwrap();
        assert_abs_diff_eq!(single, redrawn, epsilon = 1e-12);
        let lim = crate::repetition::deviation_limit(
            crate::repetition::RepeatedTrial { m: 10_000, p: 0.5 },
            0.5,
        )
        .unwrap();
        assert_abs_diff_eq!(single, lim.l, epsilon = 1e-12);
    }

    #[test]
    fn series_limit_monte_carlo() {
        // Two-stage scheme: each series of m1 trials draws its chance
        // from the mixture; l should match the empirical median
        // absolute deviation of the overall rate within 3%.
        let l = bienayme_series_limit(&[0.4, 0.6], &[0.5, 0.5], 10_000, 100, 0.5).unwrap();
        assert_abs_diff_eq!(l, 0.0075110, epsilon = 5e-7);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let reps = 4000;
        let mut devs = Vec::with_capacity(reps);
        for _ in 0..reps {
            let mut total = 0u32;
            for _ in 0..100 {
                let p = if rng.gen::<bool>() { 0.4 } else { 0.6 };
                for _ in 0..100 {
                    total += (rng.gen::<f64>() < p) as u32;
                }
            }
            devs.push((total as f64 / 10_000.0 - 0.5).abs());
        }
        devs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = 0.5 * (devs[reps / 2 - 1] + devs[reps / 2]);
        assert!(
            (median - l).abs() / l < 0.03,
            "median {median} vs limit {l}"
        );
    }

    #[test]
    fn series_limit_rejects_bad_grouping() {
        assert!(bienayme_series_limit(&[0.5], &[1.0], 10, 3, 0.5).is_err());
        assert!(bienayme_series_limit(&[0.5], &[1.0], 10, 0, 0.5).is_err());
    }
}
