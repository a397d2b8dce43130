//! Reliability of judges, tribunals, appeal chains, twelve-member
//! juries, and witnesses, inferred from observed vote-pattern rates
//! under the independence hypothesis.

/// Observed vote-pattern rates of a three-judge tribunal: `a`, `b`,
/// `c` are the rates of each judge voting alone against the other two,
/// `p` the unanimity rate.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct TribunalTally {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub p: f64,
}

/// Observed conviction rates of a twelve-member jury: `c1` the rate of
/// convictions by more than seven votes, `c2` by exactly seven.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct JuryTally {
    pub c1: f64,
    pub c2: f64,
}

/// Observed reversal rates of an appeal system: `q` the appeal
/// reversal rate, `q_prime` and `q_dprime` the highest court's
/// annulment rates against the two lower levels.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct AppealStats {
    pub q: Option<f64>,
    pub q_prime: f64,
    pub q_dprime: f64,
}

/// Result of inverting a vote-pattern model: either per-judge
/// reliabilities or a structured infeasibility diagnosis.
#[derive(Clone, PartialEq, Debug)]
pub enum TribunalSolution {
    Solved { v: Vec<f64> },
    /// The observed rates admit no real solution; the independence
    /// hypothesis is rejected.
    Infeasible { reason: String },
}

/// Errors raised by the judgement computations.
#[derive(Clone, PartialEq, Debug)]
pub enum JudgementError {
    /// Rates must be probabilities with the stated sum constraints.
    InvalidRates,
    /// The equal-chance model needs `p > 1/4`.
    HypothesisRejected,
    /// No admissible root in `(1/2, 1)`.
    NoRoot,
    LengthMismatch,
    /// Component chances must be at least one half.
    BelowOneHalf,
}

impl std::fmt::Display for JudgementError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            JudgementError::InvalidRates => write!(f, "rates must be consistent probabilities"),
            JudgementError::HypothesisRejected => {
                write!(f, "unanimity rate at or below 1/4 rejects the model")
            }
            JudgementError::NoRoot => write!(f, "no admissible root in (1/2, 1)"),
            JudgementError::LengthMismatch => write!(f, "parallel lists differ in length"),
            JudgementError::BelowOneHalf => {
                write!(f, "component chances must be at least one half")
            }
        }
    }
}

impl std::error::Error for JudgementError {}

/// Bracketed bisection refined by a final secant step.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> Result<f64, JudgementError> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(JudgementError::NoRoot);
    }
    let mut flo = flo;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 || hi - lo < 1e-15 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    // Secant polish inside the final bracket.
    let (fa, fb) = (f(lo), f(hi));
    if (fb - fa).abs() > 0.0 {
        Ok(lo - fa * (hi - lo) / (fb - fa))
    } else {
        Ok(0.5 * (lo + hi))
    }
}

fn binom(n: u32, k: u32) -> f64 {
    let mut out = 1.0;
    for i in 0..k {
        out = out * f64::from(n - i) / f64::from(i + 1);
    }
    out
}

/// Forward model: rates at which each of three independent judges of
/// reliabilities `v` votes alone, plus the unanimity rate.
pub fn three_judge_rates(v: [f64; 3]) -> TribunalTally {
    let [v1, v2, v3] = v;
    let alone = |vi: f64, vj: f64, vk: f64| vi * (1.0 - vj) * (1.0 - vk) + (1.0 - vi) * vj * vk;
    let p = v1 * v2 * v3 + (1.0 - v1) * (1.0 - v2) * (1.0 - v3);
    TribunalTally {
        a: alone(v1, v2, v3),
        b: alone(v2, v1, v3),
        c: alone(v3, v1, v2),
        p,
    }
}

/// Inverts the three-judge vote-pattern model.
///
/// Writing `v_i = 1/2 + z_i`, the lone-vote rates give the pairwise
/// products `z_i z_j` linearly; each `z_i` follows by a square root.
/// The branch with every `v_i >= 1/2` is preferred. Negative radicands
/// or values outside `[0, 1]` are reported as infeasible — evidence
/// against the independence hypothesis.
///
/// # Errors
///
/// Returns an error when the tally is not a probability vector.
pub fn solve_three_judges(tally: &TribunalTally) -> Result<TribunalSolution, JudgementError> {
    let parts = [tally.a, tally.b, tally.c, tally.p];
    if parts.iter().any(|&x| !(0.0..=1.0).contains(&x))
        || (parts.iter().sum::<f64>() - 1.0).abs() > 1e-6
    {
        return Err(JudgementError::InvalidRates);
    }
    // z1 z2 = -(a + b - 1/2)/2, and cyclically.
    let z12 = -(tally.a + tally.b - 0.5) / 2.0;
    let z13 = -(tally.a + tally.c - 0.5) / 2.0;
    let z23 = -(tally.b + tally.c - 0.5) / 2.0;
    let products = [z12, z13, z23];
    let negatives = products.iter().filter(|&&x| x < 0.0).count();
    if negatives == 1 || negatives == 3 {
        return Ok(TribunalSolution::Infeasible {
            reason: "pairwise products have inconsistent signs; independence hypothesis rejected"
                .to_string(),
        });
    }
    let sq1 = z12 * z13 / z23;
    if !sq1.is_finite() || sq1 < 0.0 {
        return Ok(TribunalSolution::Infeasible {
            reason: "negative radicand; independence hypothesis rejected".to_string(),
        });
    }
    for sign in [1.0, -1.0] {
        let z1 = sign * sq1.sqrt();
        if z1 == 0.0 && sign < 0.0 {
            continue;
        }
        let (z2, z3) = if z1 == 0.0 {
            // Degenerate: v1 exactly 1/2; z2 z3 determines the rest.
            let sq2 = z12 * z23 / z13;
            if sq2 < 0.0 {
                continue;
            }
            (sq2.sqrt(), if sq2 > 0.0 { z23 / sq2.sqrt() } else { 0.0 })
        } else {
            (z12 / z1, z13 / z1)
        };
        let v = [0.5 + z1, 0.5 + z2, 0.5 + z3];
        if v.iter().all(|&x| (-1e-9..=1.0 + 1e-9).contains(&x)) {
            if v.iter().all(|&x| x >= 0.5 - 1e-9) || sign < 0.0 {
                return Ok(TribunalSolution::Solved {
                    v: v.iter().map(|&x| x.clamp(0.0, 1.0)).collect(),
                });
            }
        }
    }
    Ok(TribunalSolution::Infeasible {
        reason: "no branch stays within [0, 1]; independence hypothesis rejected".to_string(),
    })
}

/// Common reliability of three equally good judges from their
/// unanimity rate: `v = 1/2 + (1/2) sqrt((4p - 1)/3)`.
///
/// # Errors
///
/// Returns an error when `p <= 1/4` (imaginary root: model rejected).
pub fn laplace_equal_chance(p: f64) -> Result<f64, JudgementError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(JudgementError::InvalidRates);
    }
    if p < 0.25 {
        return Err(JudgementError::HypothesisRejected);
    }
    Ok(0.5 + 0.5 * ((4.0 * p - 1.0) / 3.0).sqrt())
}

/// Chance that a three-judge majority is correct:
/// `V = v1 v2 + v1 v3 + v2 v3 - 2 v1 v2 v3`.
pub fn tribunal_reliability(v1: f64, v2: f64, v3: f64) -> f64 {
    v1 * v2 + v1 * v3 + v2 * v3 - 2.0 * v1 * v2 * v3
}

/// Forward model: rates at which each of four independent judges
/// dissents alone against the other three.
pub fn four_judge_rates(v: [f64; 4]) -> [f64; 4] {
    let alone = |i: usize| {
        let mut correct = 1.0 - v[i];
        let mut wrong = v[i];
        for (j, &vj) in v.iter().enumerate() {
            if j != i {
                correct *= vj;
                wrong *= 1.0 - vj;
            }
        }
        correct + wrong
    };
    [alone(0), alone(1), alone(2), alone(3)]
}

/// Inverts the four-judge lone-dissent model.
///
/// With `v_i = 1/2 + z_i` and `alpha_i = 2 rate_i - 1/4`, each pair
/// sum `alpha_i + alpha_j` fixes `z_k z_l - z_i z_j` and the grand
/// product `Z`; a quadratic then yields the pairwise products, and
/// square-root recombination the individual `z_i`. All sign branches
/// are tried; candidates are kept when the forward model reproduces
/// the rates to 1e-8, preferring a branch with every `v_i >= 1/2`.
pub fn solve_four_judges(rates: [f64; 4]) -> Result<TribunalSolution, JudgementError> {
    if rates.iter().any(|&x| !(0.0..=1.0).contains(&x)) || rates.iter().sum::<f64>() > 1.0 + 1e-9 {
        return Err(JudgementError::InvalidRates);
    }
    let al: Vec<f64> = rates.iter().map(|&r| 2.0 * r - 0.25).collect();
    let total: f64 = al.iter().sum();
    let mut candidates: Vec<[f64; 4]> = Vec::new();
    // Pairings: (z1 z2, z3 z4), (z1 z3, z2 z4), (z1 z4, z2 z3). Each
    // pairing's quadratic has two radical signs; combine them all.
    let pair_opts: Vec<Vec<(f64, f64)>> = (1..=3)
        .map(|i| {
            let s_front = al[0] + al[i];
            let s_back = total - s_front;
            let d = (s_front - s_back).powi(2) - 4.0 * total;
            if d < -1e-12 {
                vec![]
            } else {
                let root = d.max(0.0).sqrt();
                vec![
                    ((s_back - s_front + root) / 8.0, (s_front - s_back + root) / 8.0),
                    ((s_back - s_front - root) / 8.0, (s_front - s_back - root) / 8.0),
                ]
            }
        })
        .collect();
    if pair_opts.iter().any(|v| v.is_empty()) {
        return Ok(TribunalSolution::Infeasible {
            reason: "negative radicand; independence hypothesis rejected".to_string(),
        });
    }
    for &(z12, _z34) in &pair_opts[0] {
        for &(z13, _z24) in &pair_opts[1] {
            for &(z14, z23) in &pair_opts[2] {
                if z23 == 0.0 {
                    continue;
                }
                let sq1 = z12 * z13 / z23;
                if sq1 < 0.0 {
                    continue;
                }
                for sign in [1.0f64, -1.0] {
                    let z1 = sign * sq1.sqrt();
                    if z1 == 0.0 {
                        continue;
                    }
                    let candidate = [
                        0.5 + z1,
                        0.5 + z12 / z1,
                        0.5 + z13 / z1,
                        0.5 + z14 / z1,
                    ];
                    if candidate.iter().all(|&x| (0.0..=1.0).contains(&x)) {
                        let fwd = four_judge_rates(candidate);
                        let residual: f64 = fwd
                            .iter()
                            .zip(&rates)
                            .map(|(f, r)| (f - r).abs())
                            .fold(0.0, f64::max);
                        if residual <= 1e-8 {
                            candidates.push(candidate);
                        }
                    }
                }
            }
        }
    }
    if let Some(best) = candidates
        .iter()
        .find(|c| c.iter().all(|&x| x >= 0.5 - 1e-9))
        .or_else(|| candidates.first())
    {
        return Ok(TribunalSolution::Solved { v: best.to_vec() });
    }
    Ok(TribunalSolution::Infeasible {
        reason: "no sign branch reproduces the rates; independence hypothesis rejected"
            .to_string(),
    })
}

/// Chance that a majority of a panel of `size` (odd) equally reliable
/// judges is correct.
pub fn panel_reliability(v: f64, size: u32) -> f64 {
    let majority = size / 2 + 1;
    (majority..=size)
        .map(|j| binom(size, j) * v.powi(j as i32) * (1.0 - v).powi((size - j) as i32))
        .sum()
}

/// Both solutions of the bare-majority rate equation for a panel of
/// `2m+1` judges: the rate of one-vote majorities is
/// `C(2m+1, m) [v(1-v)]^m`, inverted for `v`.
///
/// For an even panel `2m`, pass the tie rate with `even = true`
/// (`C(2m, m) [v(1-v)]^m`).
///
/// # Errors
///
/// Returns an error when `q` exceeds its feasible maximum.
pub fn v_from_bare_majority(q: f64, m: u32, even: bool) -> Result<(f64, f64), JudgementError> {
    if !(0.0..=1.0).contains(&q) || m == 0 {
        return Err(JudgementError::InvalidRates);
    }
    let c = if even {
        binom(2 * m, m)
    } else {
        binom(2 * m + 1, m)
    };
    let product = (q / c).powf(1.0 / f64::from(m));
    if product > 0.25 + 1e-12 {
        return Err(JudgementError::HypothesisRejected);
    }
    let z = (0.25 - product).max(0.0).sqrt();
    Ok((0.5 + z, 0.5 - z))
}

/// Posterior chance that a verdict carried by a majority of `i` votes
/// is correct: `v^i / (v^i + (1-v)^i)`.
pub fn majority_posterior(v: f64, i: u32) -> f64 {
    let num = v.powi(i as i32);
    num / (num + (1.0 - v).powi(i as i32))
}

/// Solution of the appeal-system model.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct AppealSolution {
    /// Per-judge reliability.
    pub v: f64,
    /// Three-judge first-instance reliability.
    pub v_tribunal: f64,
    /// Seven-judge appeal-court reliability.
    pub v_appeal: f64,
    /// Chance the common verdict is correct given confirmation.
    pub reliability_if_confirmed: f64,
    /// Chance the appeal court is correct given reversal.
    pub reliability_if_reversed: f64,
}

/// Forward disagreement rate of the appeal system at per-judge
/// reliability `v`: `q = V + V' - 2 V V'` with `V` the three-judge and
/// `V'` the seven-judge reliability.
pub fn appeal_forward(v: f64) -> f64 {
    let big_v = tribunal_reliability(v, v, v);
    let big_vp = panel_reliability(v, 7);
    big_v + big_vp - 2.0 * big_v * big_vp
}

/// Inverts the appeal-system model: finds `v` in `(1/2, 1)` from the
/// observed reversal rate `q`.
///
/// # Errors
///
/// Returns an error when no root lies in the bracket.
pub fn appeal_system(q: f64) -> Result<AppealSolution, JudgementError> {
    if !(0.0..0.5).contains(&q) {
        return Err(JudgementError::InvalidRates);
    }
    let v = bisect(|v| appeal_forward(v) - q, 0.5 + 1e-9, 1.0 - 1e-9)?;
    let big_v = tribunal_reliability(v, v, v);
    let big_vp = panel_reliability(v, 7);
    let agree = 1.0 - q;
    Ok(AppealSolution {
        v,
        v_tribunal: big_v,
        v_appeal: big_vp,
        reliability_if_confirmed: big_v * big_vp / agree,
        reliability_if_reversed: big_vp * (1.0 - big_v) / q,
    })
}

/// Interval bounds recovered from the two cassation rates.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct CassationBounds {
    /// Bounds for the first-level reliability `V`.
    pub v_tribunal: (f64, f64),
    /// Bounds for the appeal-level reliability `V'`.
    pub v_appeal: (f64, f64),
    /// Refined upper bound for `V` using the appeal upper bound as the
    /// cassation court's reliability.
    pub v_tribunal_refined: (f64, f64),
    /// Per-judge bounds from inverting `V = 3v^2 - 2v^3` on the
    /// refined tribunal interval.
    pub v_judge: (f64, f64),
}

/// Bounds each court level's reliability from its annulment rate,
/// bracketing the (unknown) cassation-court reliability `V''` between
/// the level's own value and 1.
///
/// For annulment rate `q` against a level of reliability `W`:
/// `q = W + V'' - 2 W V''`; `V'' = 1` gives `W = 1 - q` and
/// `V'' = W` gives `W = (1 + sqrt(1 - 2q))/2`.
///
/// # Errors
///
/// Returns an error when a rate leaves `(0, 1/2)` (imaginary case:
/// model inconsistent).
pub fn cassation_bounds(stats: &AppealStats) -> Result<CassationBounds, JudgementError> {
    let bound = |q: f64| -> Result<(f64, f64), JudgementError> {
        if !(0.0..0.5).contains(&q) {
            return Err(JudgementError::InvalidRates);
        }
        Ok((1.0 - q, (1.0 + (1.0 - 2.0 * q).sqrt()) / 2.0))
    };
    let v_tribunal = bound(stats.q_prime)?;
    let v_appeal = bound(stats.q_dprime)?;
    // Refinement: take the appeal court's upper bound as the cassation
    // reliability in the tribunal equation.
    let v_dprime = v_appeal.1;
    let refined_hi = (stats.q_prime - v_dprime) / (1.0 - 2.0 * v_dprime);
    let v_tribunal_refined = (v_tribunal.0, refined_hi.min(v_tribunal.1));
    if v_tribunal_refined.0 > v_tribunal_refined.1 {
        return Err(JudgementError::NoRoot);
    }
    let invert = |big_v: f64| bisect(|v| tribunal_reliability(v, v, v) - big_v, 0.5, 1.0);
    Ok(CassationBounds {
        v_tribunal,
        v_appeal,
        v_tribunal_refined,
        v_judge: (invert(v_tribunal_refined.0)?, invert(v_tribunal_refined.1)?),
    })
}

/// Tail of the twelve-vote conviction law: chance of at least `from`
/// correct votes among 12 at reliability `v`.
fn jury_tail(v: f64, from: u32) -> f64 {
    (from..=12)
        .map(|j| binom(12, j) * v.powi(j as i32) * (1.0 - v).powi(12 - j as i32))
        .sum()
}

fn jury_term(v: f64, j: u32) -> f64 {
    binom(12, j) * v.powi(j as i32) * (1.0 - v).powi(12 - j as i32)
}

/// Solution under the hypothesis that only convictable accused reach
/// seven-vote margins.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct JuryFitA {
    /// Per-juror reliability.
    pub v1: f64,
    /// Chance a convictable accused gathers at least seven conviction
    /// votes.
    pub big_v1: f64,
    /// Fraction of accused who are convictable.
    pub k1: f64,
}

impl JuryFitA {
    /// Expected number of convictable accused acquitted among `n`
    /// cases, `k1 (1 - V1) n`, at full precision.
    pub fn acquitted_convictable(&self, n: u64) -> f64 {
        self.k1 * (1.0 - self.big_v1) * n as f64
    }

    /// The same count with `k1` and `1 - V1` first rounded to three
    /// decimals, matching hand-computation practice.
    pub fn acquitted_convictable_rounded(&self, n: u64) -> f64 {
        let round3 = |x: f64| (x * 1000.0).round() / 1000.0;
        round3(self.k1) * round3(1.0 - self.big_v1) * n as f64
    }
}

/// Fits the twelve-member jury model assuming every marginal (exactly
/// seven-vote) conviction involves a convictable accused: `v1` is the
/// root in `(1/2, 1)` of
/// `v^5 + 12v^4(1-v) + ... + 495v(1-v)^4 = 792 (c1/c2) (1-v)^5`.
///
/// # Errors
///
/// Returns an error for degenerate rates or when no root is bracketed.
pub fn jury12_hypothesis_a(tally: &JuryTally) -> Result<JuryFitA, JudgementError> {
    if tally.c2 <= 0.0 || tally.c1 < 0.0 || tally.c1 + tally.c2 > 1.0 {
        return Err(JudgementError::InvalidRates);
    }
    let ratio = tally.c1 / tally.c2;
    // c1/c2 = tail(v, 8) / term(v, 7); clearing denominators leaves a
    // degree-5 polynomial equation in v.
    let f = |v: f64| {
        let u = 1.0 - v;
        v.powi(5) + 12.0 * v.powi(4) * u + 66.0 * v.powi(3) * u * u
            + 220.0 * v * v * u.powi(3)
            + 495.0 * v * u.powi(4)
            - 792.0 * ratio * u.powi(5)
    };
    let v1 = bisect(f, 0.5 + 1e-9, 1.0 - 1e-9)?;
    let big_v1 = jury_tail(v1, 7);
    Ok(JuryFitA {
        v1,
        big_v1,
        k1: (tally.c1 + tally.c2) / big_v1,
    })
}

/// Solution under the hypothesis that marginal convictions split
/// between convictable and absolvable accused.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct JuryFitB {
    pub v: f64,
    pub k1: f64,
    /// Chance a convictable accused reaches at least seven votes.
    pub big_v1: f64,
    /// Chance a convictable accused reaches at least six votes.
    pub big_v2: f64,
}

impl JuryFitB {
    /// Expected number of absolvable accused convicted among `n`
    /// cases, `(1 - k1)(1 - V2) n`, at full precision.
    pub fn convicted_absolvable(&self, n: u64) -> f64 {
        (1.0 - self.k1) * (1.0 - self.big_v2) * n as f64
    }

    /// The same count computed from three-decimal displayed values,
    /// matching hand-tabulation practice: the published `V2` is the
    /// truncation of the computed value, so its complement is taken
    /// from the truncated figure.
    pub fn convicted_absolvable_rounded(&self, n: u64) -> f64 {
        let round3 = |x: f64| (x * 1000.0).round() / 1000.0;
        let trunc3 = |x: f64| (x * 1000.0).floor() / 1000.0;
        round3(1.0 - self.k1) * (1.0 - trunc3(self.big_v2)) * n as f64
    }
}

/// Fits the twelve-member jury model letting both populations
/// contribute to every margin: solves the two-equation system
/// `c1 = k1 T8(v) + (1-k1) T8(1-v)` and
/// `c2 = k1 t7(v) + (1-k1) t7(1-v)` for `(k1, v)`, where `T8` is the
/// at-least-eight tail and `t7` the exactly-seven term.
///
/// # Errors
///
/// Returns an error when no admissible root exists.
pub fn jury12_hypothesis_b(tally: &JuryTally) -> Result<JuryFitB, JudgementError> {
    if tally.c2 <= 0.0 || tally.c1 < 0.0 || tally.c1 + tally.c2 > 1.0 {
        return Err(JudgementError::InvalidRates);
    }
    let k_of_v = |v: f64| {
        (tally.c2 - jury_term(1.0 - v, 7)) / (jury_term(v, 7) - jury_term(1.0 - v, 7))
    };
    let f = |v: f64| {
        let k = k_of_v(v);
        k * jury_tail(v, 8) + (1.0 - k) * jury_tail(1.0 - v, 8) - tally.c1
    };
    let v = bisect(f, 0.5 + 1e-6, 1.0 - 1e-9)?;
    let k1 = k_of_v(v);
    if !(0.0..=1.0).contains(&k1) {
        return Err(JudgementError::NoRoot);
    }
    let big_v1 = jury_tail(v, 7);
    Ok(JuryFitB {
        v,
        k1,
        big_v1,
        big_v2: big_v1 + 924.0 * v.powi(6) * (1.0 - v).powi(6),
    })
}

/// Per-category jury fits and their weighted recombination.
#[derive(Clone, PartialEq, Debug)]
pub struct JuryByCategory {
    pub fits_a: Vec<JuryFitA>,
    pub fits_b: Vec<JuryFitB>,
    /// Weight-averaged per-juror reliability.
    pub v1: f64,
    /// Weight-averaged convictable fraction.
    pub k1: f64,
    /// Sum over categories of rounded acquitted-convictable counts at
    /// the category case loads `weight_i * n`.
    pub acquitted_convictable: f64,
    /// Sum over categories of rounded convicted-absolvable counts.
    pub convicted_absolvable: f64,
}

/// Fits each offence category separately and recombines by the case
/// weights.
///
/// # Errors
///
/// Returns an error on length mismatch, weights not summing to one,
/// or any per-category fit failing.
pub fn jury12_by_category(
    tallies: &[JuryTally],
    weights: &[f64],
    n: u64,
) -> Result<JuryByCategory, JudgementError> {
    if tallies.len() != weights.len() {
        return Err(JudgementError::LengthMismatch);
    }
    if (weights.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(JudgementError::InvalidRates);
    }
    let mut fits_a = Vec::with_capacity(tallies.len());
    let mut fits_b = Vec::with_capacity(tallies.len());
    let mut v1 = 0.0;
    let mut k1 = 0.0;
    let mut acquitted = 0.0;
    let mut convicted = 0.0;
    for (tally, &w) in tallies.iter().zip(weights) {
        let fa = jury12_hypothesis_a(tally)?;
        let fb = jury12_hypothesis_b(tally)?;
        let cases = (w * n as f64).round() as u64;
        v1 += w * fa.v1;
        k1 += w * fa.k1;
        acquitted += fa.acquitted_convictable_rounded(cases);
        convicted += fb.convicted_absolvable_rounded(cases);
        fits_a.push(fa);
        fits_b.push(fb);
    }
    Ok(JuryByCategory {
        fits_a,
        fits_b,
        v1,
        k1,
        acquitted_convictable: acquitted,
        convicted_absolvable: convicted,
    })
}

/// Corrected common reliability when the observed rate pools several
/// categories: `v = 1/2 + (1/2) sum k_i sqrt(2 p_i - 1)`.
///
/// # Errors
///
/// Returns an error when any `p_i < 1/2` or the weights are invalid.
pub fn mixture_corrected_v(ps: &[f64], ks: &[f64]) -> Result<f64, JudgementError> {
    if ps.len() != ks.len() {
        return Err(JudgementError::LengthMismatch);
    }
    if (ks.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(JudgementError::InvalidRates);
    }
    if ps.iter().any(|&p| p < 0.5 || p > 1.0) {
        return Err(JudgementError::BelowOneHalf);
    }
    Ok(0.5
        + 0.5
            * ps.iter()
                .zip(ks)
                .map(|(p, k)| k * (2.0 * p - 1.0).sqrt())
                .sum::<f64>())
}

/// Worst-case lower bound for the true reliability given only the
/// pooled excess `z = v_pooled - 1/2`: `1/2 + sqrt(z^2 - 1/16)`.
///
/// # Errors
///
/// Returns an error when `z < 1/4` (the bound degenerates to 1/2).
pub fn mixture_v_lower_bound(pooled_v: f64) -> Result<f64, JudgementError> {
    let z = pooled_v - 0.5;
    if !(0.0..=0.5).contains(&z) {
        return Err(JudgementError::InvalidRates);
    }
    if z < 0.25 {
        return Err(JudgementError::HypothesisRejected);
    }
    Ok(0.5 + (z * z - 1.0 / 16.0).sqrt())
}

/// The four agreement quantities for two independent witnesses of
/// truthfulness `v1`, `v2`.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct WitnessAgreement {
    /// Chance they agree: `v1 v2 + (1-v1)(1-v2)`.
    pub p_agree: f64,
    pub p_disagree: f64,
    /// Chance the common statement is true given agreement.
    pub truth_given_agreement: f64,
    /// Chance the first witness is right given disagreement.
    pub first_right_given_disagreement: f64,
}

/// See [`WitnessAgreement`].
pub fn witness_agreement(v1: f64, v2: f64) -> WitnessAgreement {
    let agree = v1 * v2 + (1.0 - v1) * (1.0 - v2);
    let truth = if agree > 0.0 { v1 * v2 / agree } else { 0.5 };
    let disagree = 1.0 - agree;
    let first = if disagree > 0.0 {
        v1 * (1.0 - v2) / disagree
    } else {
        0.5
    };
    WitnessAgreement {
        p_agree: agree,
        p_disagree: disagree,
        truth_given_agreement: truth,
        first_right_given_disagreement: first,
    }
}

/// Chance a statement is true when all witnesses affirm it:
/// `prod v / (prod v + prod (1-v))`.
pub fn unanimous_witnesses(vs: &[f64]) -> Result<f64, JudgementError> {
    if vs.is_empty() {
        return Err(JudgementError::InvalidRates);
    }
    let yes: f64 = vs.iter().product();
    let no: f64 = vs.iter().map(|v| 1.0 - v).product();
    Ok(yes / (yes + no))
}

/// Chance the first statement is true when witnesses 1 and 2 affirm
/// and witness 3 denies.
pub fn opposed_witnesses(v1: f64, v2: f64, v3: f64) -> f64 {
    let yes = v1 * v2 * (1.0 - v3);
    let no = (1.0 - v1) * (1.0 - v2) * v3;
    yes / (yes + no)
}
