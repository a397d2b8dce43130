//! Angular statistics of orbit catalogs: transforms from orbital
//! elements to the six axis angles, the uniform-sphere baseline for
//! mean polar distance, significance tests for observed means, and
//! classification splits (threshold, season, motion sense, perihelion
//! distance) over an ingested catalog.
//!
//! A synthetic 125-orbit catalog is bundled for the test suite and the
//! CLI default; it is generated data tuned to reproduce the published
//! summary counts, not a historical record.

use crate::deviation::p_of_t;
use crate::repetition::{binomial_pmf, RepeatedTrial};
use crate::summaries::latitude_law_summary;
use serde::Deserialize;

/// Bundled synthetic catalog (columns: theta,lambda,l,motion,q_AU,epoch).
const CATALOG_CSV: &str = include_str!("../data/orbit_catalog.csv");

/// Sense of orbital motion.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Motion {
    Direct,
    Retrograde,
}

/// One catalog entry: inclination and node/perihelion longitudes in
/// degrees, motion sense, perihelion distance in astronomical units,
/// and the (chronological) epoch string `YYYY-MM-DD`.
#[derive(Clone, PartialEq, Debug)]
pub struct OrbitRecord {
    pub theta: f64,
    pub lambda: f64,
    pub l: f64,
    pub motion: Motion,
    pub q_au: f64,
    pub epoch: String,
}

/// The six signed axis angles of an orbit, each with magnitude folded
/// into [0, 90] degrees: `theta*` measure the orbit pole against the
/// three reference axes, `t*` the perihelion direction.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct AngleSextet {
    pub theta: f64,
    pub theta_p: f64,
    pub theta_pp: f64,
    pub t: f64,
    pub t_p: f64,
    pub t_pp: f64,
}

impl AngleSextet {
    /// The six magnitudes in a fixed order (pole set then perihelion
    /// set).
    pub fn magnitudes(&self) -> [f64; 6] {
        [
            self.theta.abs(),
            self.theta_p.abs(),
            self.theta_pp.abs(),
            self.t.abs(),
            self.t_p.abs(),
            self.t_pp.abs(),
        ]
    }
}

/// Errors raised by the orbit computations.
#[derive(Clone, PartialEq, Debug)]
pub enum OrbitError {
    /// Inclination so close to 0 or 180 degrees that the node (hence
    /// every longitude-dependent angle) is undefined.
    SingularElements,
    /// Angles outside their catalog ranges.
    InvalidRecord,
    /// Catalog parse failure.
    BadCatalog(String),
    /// Empty catalog.
    EmptyCatalog,
}

impl std::fmt::Display for OrbitError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            OrbitError::SingularElements => {
                write!(f, "node undefined at zero inclination")
            }
            OrbitError::InvalidRecord => write!(f, "angles outside catalog ranges"),
            OrbitError::BadCatalog(msg) => write!(f, "catalog parse failure: {msg}"),
            OrbitError::EmptyCatalog => write!(f, "catalog has no records"),
        }
    }
}

impl std::error::Error for OrbitError {}

/// Folds an axis-angle cosine into a signed angle with magnitude in
/// [0, 90] degrees: the sign records which hemisphere the axis points
/// into.
fn fold(cosine: f64) -> f64 {
    let clamped = cosine.clamp(-1.0, 1.0);
    let angle = clamped.abs().acos().to_degrees();
    if clamped < 0.0 {
        -angle
    } else {
        angle
    }
}

/// Transforms orbital elements into the six signed axis angles.
///
/// The orbit pole has direction cosines
/// `(sin theta sin lambda, -sin theta cos lambda, cos theta)` and the
/// perihelion direction follows from the in-plane angle `l - lambda`;
/// each cosine is folded into a signed angle of at most 90 degrees.
///
/// # Errors
///
/// Returns an error when the inclination leaves the node undefined or
/// the element ranges are invalid.
pub fn angles_from_elements(record: &OrbitRecord) -> Result<AngleSextet, OrbitError> {
    if !(0.0..=180.0).contains(&record.theta)
        || !(0.0..360.0).contains(&record.lambda)
        || !(0.0..360.0).contains(&record.l)
    {
        return Err(OrbitError::InvalidRecord);
    }
    let theta = record.theta.to_radians();
    if theta.sin().abs() < 1e-12 {
        return Err(OrbitError::SingularElements);
    }
    let lambda = record.lambda.to_radians();
    let omega = (record.l - record.lambda).to_radians();
    // Pole axis angles.
    let cos_theta_p = theta.sin() * lambda.sin();
    let cos_theta_pp = -theta.sin() * lambda.cos();
    // Perihelion axis angles: cos t = sin(theta) sin(omega), and the
    // in-plane auxiliary angle w with tan w = cos(theta) tan(omega)
    // (taken in the quadrant that keeps sin t >= 0).
    let cos_t = theta.sin() * omega.sin();
    let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
    let w = f64::atan2(theta.cos() * omega.sin(), omega.cos());
    let cos_t_p = sin_t * (lambda + w).cos();
    let cos_t_pp = sin_t * (lambda + w).sin();
    Ok(AngleSextet {
        theta: fold(theta.cos()),
        theta_p: fold(cos_theta_p),
        theta_pp: fold(cos_theta_pp),
        t: fold(cos_t),
        t_p: fold(cos_t_p),
        t_pp: fold(cos_t_pp),
    })
}

#[derive(Deserialize)]
struct RawRecord {
    theta: f64,
    lambda: f64,
    l: f64,
    motion: String,
    q_au: f64,
    epoch: String,
}

/// Parses a catalog from CSV text with header
/// `theta,lambda,l,motion,q_AU,epoch`.
///
/// # Errors
///
/// Returns an error on malformed rows or an empty catalog.
pub fn parse_catalog(csv_text: &str) -> Result<Vec<OrbitRecord>, OrbitError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(csv_text.as_bytes());
    // The bundled header spells the distance column `q_AU`.
    let headers = reader
        .headers()
        .map_err(|e| OrbitError::BadCatalog(e.to_string()))?
        .iter()
        .map(|h| h.to_ascii_lowercase())
        .collect::<csv::StringRecord>();
    reader.set_headers(headers);
    let mut records = Vec::new();
    for row in reader.deserialize::<RawRecord>() {
        let raw = row.map_err(|e| OrbitError::BadCatalog(e.to_string()))?;
        let motion = match raw.motion.as_str() {
            "direct" => Motion::Direct,
            "retrograde" => Motion::Retrograde,
            other => return Err(OrbitError::BadCatalog(format!("unknown motion {other:?}"))),
        };
        records.push(OrbitRecord {
            theta: raw.theta,
            lambda: raw.lambda,
            l: raw.l,
            motion,
            q_au: raw.q_au,
            epoch: raw.epoch,
        });
    }
    if records.is_empty() {
        return Err(OrbitError::EmptyCatalog);
    }
    Ok(records)
}

/// The bundled synthetic 125-orbit catalog.
pub fn bundled_catalog() -> Vec<OrbitRecord> {
    parse_catalog(CATALOG_CSV).expect("bundled catalog is well-formed")
}

/// Uniform-sphere reference values for a folded axis angle.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct SphereBaseline {
    /// Mean folded polar distance in degrees (one radian).
    pub mean_degrees: f64,
    /// Modulus of the folded-angle law, quarter circumference as unit.
    pub modulus: f64,
}

/// Mean and modulus of the folded polar distance of a uniformly
/// random axis: the latitude law reflected to polar distance.
pub fn uniform_sphere_baseline() -> SphereBaseline {
    let latitude = latitude_law_summary();
    SphereBaseline {
        // Folded polar distance = 90 degrees - |latitude|; the mean
        // |latitude| is (pi/2 - 1) radians, so the mean distance is
        // one radian.
        mean_degrees: 1.0f64.to_degrees(),
        modulus: latitude.modulus,
    }
}

/// Formats decimal degrees as a `d°m′s″.s` sexagesimal string.
pub fn format_sexagesimal(degrees: f64) -> String {
    let total_tenths = (degrees.abs() * 36_000.0).round() as u64;
    let d = total_tenths / 36_000;
    let m = total_tenths / 600 % 60;
    let s = total_tenths % 600;
    let sign = if degrees < 0.0 { "-" } else { "" };
    format!("{sign}{d}\u{b0}{m}\u{2032}{}\u{2033}.{}", s / 10, s % 10)
}

/// Probability that the mean folded angle of `n` uniformly oriented
/// orbits deviates from the one-radian baseline by less than the
/// observed deviation. Values near 1 reject the uniform hypothesis.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct MeanAngleTest {
    pub observed_mean: f64,
    pub deviation_degrees: f64,
    pub t: f64,
    pub p: f64,
}

/// See [`MeanAngleTest`]. The deviation is measured in quarter
/// circumferences to match the baseline modulus.
pub fn mean_angle_test(observed_mean_degrees: f64, n: u64) -> MeanAngleTest {
    let baseline = uniform_sphere_baseline();
    let deviation = (observed_mean_degrees - baseline.mean_degrees).abs();
    let l = deviation / 90.0;
    let t = l * baseline.modulus * (n as f64).sqrt();
    MeanAngleTest {
        observed_mean: observed_mean_degrees,
        deviation_degrees: deviation,
        t,
        p: p_of_t(t).unwrap_or(1.0),
    }
}

/// (above, below) counts for each of the six angles at a threshold.
pub type SplitCounts = [(u64, u64); 6];

/// Counts, per angle, how many magnitudes exceed `threshold` degrees.
pub fn split_counts(catalog: &[AngleSextet], threshold: f64) -> SplitCounts {
    let mut out = [(0u64, 0u64); 6];
    for sextet in catalog {
        for (slot, magnitude) in out.iter_mut().zip(sextet.magnitudes()) {
            if magnitude > threshold {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
        }
    }
    out
}

/// Mean magnitude of each of the six angles.
pub fn mean_angles(catalog: &[AngleSextet]) -> [f64; 6] {
    let mut sums = [0.0f64; 6];
    for sextet in catalog {
        for (sum, magnitude) in sums.iter_mut().zip(sextet.magnitudes()) {
            *sum += magnitude;
        }
    }
    for sum in &mut sums {
        *sum /= catalog.len() as f64;
    }
    sums
}

/// Season of the perihelion passage, split at the fixed calendar
/// dates March 22 and September 22.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Season {
    /// September 22 (inclusive) through March 21.
    Winter,
    /// March 22 (inclusive) through September 21.
    Summer,
}

/// Classifies an epoch string `YYYY-MM-DD` by half-year season.
///
/// # Errors
///
/// Returns an error for malformed epochs.
pub fn season_of(epoch: &str) -> Result<Season, OrbitError> {
    let mut parts = epoch.split('-').skip(1);
    let month: u32 = parts
        .next()
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| OrbitError::BadCatalog(format!("bad epoch {epoch:?}")))?;
    let day: u32 = parts
        .next()
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| OrbitError::BadCatalog(format!("bad epoch {epoch:?}")))?;
    if !(1..=12).contains(&month) || !(1..=31).contains(&day) {
        return Err(OrbitError::BadCatalog(format!("bad epoch {epoch:?}")));
    }
    let key = month * 100 + day;
    Ok(if (322..922).contains(&key) {
        Season::Summer
    } else {
        Season::Winter
    })
}

/// Residual of the symmetric split pattern: for splits
/// `(theta: m:n, theta': p:p, theta'': n:m, t: n:m, t': p:p, t'': m:n)`
/// with `p = (m+n)/2`, fits `m` and `n` by the matching averages and
/// reports the largest absolute count deviation from the pattern.
pub fn symmetric_law_check(splits: &SplitCounts) -> f64 {
    // Positions carrying m in the "above" slot: theta and t''; their
    // mirrors carry m below.
    let m_est = (splits[0].0 + splits[5].0 + splits[2].1 + splits[3].1) as f64 / 4.0;
    let n_est = (splits[0].1 + splits[5].1 + splits[2].0 + splits[3].0) as f64 / 4.0;
    let p_est = (m_est + n_est) / 2.0;
    let expected = [
        (m_est, n_est),
        (p_est, p_est),
        (n_est, m_est),
        (n_est, m_est),
        (p_est, p_est),
        (m_est, n_est),
    ];
    splits
        .iter()
        .zip(&expected)
        .flat_map(|(&(above, below), &(ea, eb))| {
            [(above as f64 - ea).abs(), (below as f64 - eb).abs()]
        })
        .fold(0.0, f64::max)
}

/// One row of the running-split table.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct PrefixRow {
    pub size: u64,
    pub hits: u64,
    pub misses: u64,
}

/// Running-split table plus a final significance figure.
#[derive(Clone, PartialEq, Debug)]
pub struct PrefixTable {
    pub rows: Vec<PrefixRow>,
    /// Exact fair-coin probability that a split of the full size shows
    /// a majority strictly smaller than the observed one.
    pub final_probability: f64,
}

/// Splits the catalog by `predicate` over chronological prefixes of
/// 10, 20, ... records and reports, for the full catalog, the exact
/// binomial chance that a fair split would stay below the observed
/// majority.
///
/// # Errors
///
/// Returns an error for an empty catalog.
pub fn proportion_test_over_prefixes<F: Fn(&OrbitRecord) -> bool>(
    catalog: &[OrbitRecord],
    predicate: F,
) -> Result<PrefixTable, OrbitError> {
    if catalog.is_empty() {
        return Err(OrbitError::EmptyCatalog);
    }
    let flags: Vec<bool> = catalog.iter().map(|r| predicate(r)).collect();
    let mut rows = Vec::new();
    let mut hits = 0u64;
    for (i, &flag) in flags.iter().enumerate() {
        hits += u64::from(flag);
        let size = i as u64 + 1;
        if size % 10 == 0 || size == flags.len() as u64 {
            rows.push(PrefixRow {
                size,
                hits,
                misses: size - hits,
            });
        }
    }
    let m = flags.len() as u64;
    let majority = hits.max(m - hits);
    let trial = RepeatedTrial { m, p: 0.5 };
    let mut below = 0.0;
    for k in 0..majority {
        below += binomial_pmf(trial, k).map_err(|e| OrbitError::BadCatalog(e.to_string()))?;
    }
    Ok(PrefixTable {
        rows,
        final_probability: below,
    })
}
