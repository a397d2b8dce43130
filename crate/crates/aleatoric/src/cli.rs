//! Command-line front end: every module exposed as a subcommand with
//! plain-text or JSON output, CSV input for tabular data, and a
//! `reproduce` subcommand that re-runs the pinned reference checks.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::demography::{mean_life, probable_life, sex_ratio_report, yearly_danger, LifeTable};
use crate::deviation::{emit_table, p_of_t, t_of_p};
use crate::games::{
    fair_game_oscillation, petersburg_value, punter_limits, ruin_probability, GameSpec, RuinSpec,
};
use crate::inference::{compare_two_series, compare_two_series_at, BinomialSeries};
use crate::inference::{compare_two_means_from_summary, modulus_from_sums};
use crate::insurance::{boni_deficit_probability, boni_limits};
use crate::judgements::{
    appeal_system, cassation_bounds, jury12_hypothesis_a, jury12_hypothesis_b, solve_three_judges,
    tribunal_reliability, witness_agreement, AppealStats, JuryTally, TribunalSolution,
    TribunalTally,
};
use crate::measurement::{laplace_ls_single, ConditionRow};
use crate::montecarlo::{simulate_scheme, Scheme, SimulationConfig};
use crate::orbits::{
    angles_from_elements, bundled_catalog, mean_angle_test, mean_angles, parse_catalog,
    proportion_test_over_prefixes, season_of, split_counts, uniform_sphere_baseline, AngleSextet,
    OrbitRecord, Season,
};
use crate::reproduce::run_checks;
use crate::summaries::{summarize, DensityModel};

/// Exit codes: 0 success, 1 failed reproduction check, 2 bad input.
#[derive(Parser, Debug)]
#[command(name = "aleatoric", version, about = "Classical probability toolkit")]
pub struct Cli {
    /// Seed for the simulation subcommand.
    #[arg(long, global = true, default_value_t = 1843)]
    pub seed: u64,
    /// Emit machine-readable JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// CSV file: input for `compare`, `lsq`, `life`, `sexratio`,
    /// `comets`; output target for `table`.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the deviation-integral table P(t).
    Table(TableArgs),
    /// Evaluate P(t) or its inverse t(P).
    Deviation(DeviationArgs),
    /// Mean, median, and modulus of a built-in probability law.
    Law(LawArgs),
    /// Compare the ratios of two binomial series.
    Compare(CompareArgs),
    /// Compare two empirical means from summary statistics.
    Means(MeansArgs),
    /// Least-squares fit of a single unknown from condition rows.
    Lsq(LsqArgs),
    /// Punter loss windows, ruin chances, and capped doubling games.
    Game(GameArgs),
    /// Underwriting windows and deficit chance of an insured book.
    Insure(InsureArgs),
    /// Twelve-juror reliability fits from conviction rates.
    Jury(JuryArgs),
    /// Invert three-judge agreement rates into juror reliabilities.
    Tribunal(TribunalArgs),
    /// Appeal-system reliability from reversal rates.
    Appeal(AppealArgs),
    /// Two-witness agreement and credibility chances.
    Witness(WitnessArgs),
    /// Life-table queries: survival, mean and probable life, danger.
    Life(LifeArgs),
    /// Birth sex-ratio report over one or more series.
    Sexratio,
    /// Angular statistics of an orbit catalog.
    Comets(CometsArgs),
    /// Seeded Monte Carlo simulation of a sampling scheme.
    Sim(SimArgs),
    /// Re-run the pinned reference checks.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Tabulation step in t.
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
}

#[derive(Args, Debug)]
pub struct DeviationArgs {
    /// Evaluate P at this t.
    #[arg(long, conflicts_with = "p")]
    pub t: Option<f64>,
    /// Evaluate t at this P.
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum LawName {
    Uniform,
    Linear,
    Quadratic,
    Latitude,
    Sum,
    Difference,
}

#[derive(Args, Debug)]
pub struct LawArgs {
    #[arg(long, value_enum)]
    pub model: LawName,
    /// Lower endpoint for the uniform law.
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    /// Upper endpoint for the uniform law.
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub m1: u64,
    #[arg(long)]
    pub n1: u64,
    #[arg(long)]
    pub m2: u64,
    #[arg(long)]
    pub n2: u64,
    /// Assignable margin subtracted from the observed difference.
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    /// Evaluate at this deviation instead of the observed difference.
    #[arg(long)]
    pub at: Option<f64>,
}

#[derive(Args, Debug)]
pub struct MeansArgs {
    #[arg(long)]
    pub mean1: f64,
    /// Sum of squared deviations of the first series.
    #[arg(long)]
    pub sumsq1: f64,
    #[arg(long)]
    pub count1: usize,
    #[arg(long)]
    pub mean2: f64,
    #[arg(long)]
    pub sumsq2: f64,
    #[arg(long)]
    pub count2: usize,
}

#[derive(Args, Debug)]
pub struct LsqArgs {
    /// Known error modulus; estimated from residuals when omitted.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Probability for the reported error window.
    #[arg(long, default_value_t = 0.5)]
    pub prob: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum GameMode {
    Punter,
    Ruin,
    Petersburg,
    Oscillation,
}

#[derive(Args, Debug)]
pub struct GameArgs {
    #[arg(long, value_enum)]
    pub mode: GameMode,
    /// Number of sets played.
    #[arg(long, default_value_t = 3000)]
    pub sets: u64,
    /// Win chance per set.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Stake paid per set.
    #[arg(long, default_value_t = 1.0)]
    pub stake: f64,
    /// Payout on a win.
    #[arg(long, default_value_t = 2.0)]
    pub payout: f64,
    /// Interval probability for the loss window.
    #[arg(long, default_value_t = 0.5)]
    pub prob: f64,
    /// Starting stakes for the ruin walk.
    #[arg(long, default_value_t = 50)]
    pub alpha: u64,
    /// Bank cap for the doubling game.
    #[arg(long, default_value_t = 5e7)]
    pub cap: f64,
    /// Base unit for the doubling game.
    #[arg(long, default_value_t = 1.0)]
    pub unit: f64,
}

#[derive(Args, Debug)]
pub struct InsureArgs {
    /// Number of insured risks.
    #[arg(long)]
    pub policies: u64,
    /// Chance of a claim per risk.
    #[arg(long)]
    pub p: f64,
    /// Premium rate per risk (same unit as the claim chance).
    #[arg(long)]
    pub premium: f64,
    /// Sum insured per risk.
    #[arg(long, default_value_t = 1.0)]
    pub unit: f64,
    /// Interval probability for the boni window.
    #[arg(long, default_value_t = 0.5)]
    pub prob: f64,
}

#[derive(Args, Debug)]
pub struct JuryArgs {
    /// Rate of convictions by more than seven of twelve votes.
    #[arg(long)]
    pub c1: f64,
    /// Rate of convictions by exactly seven votes.
    #[arg(long)]
    pub c2: f64,
    /// Case load for the projected error counts.
    #[arg(long)]
    pub cases: Option<u64>,
}

#[derive(Args, Debug)]
pub struct TribunalArgs {
    /// Rate of unanimous decisions one way.
    #[arg(long)]
    pub a: f64,
    /// Rate of 2:1 splits against the first judge.
    #[arg(long)]
    pub b: f64,
    /// Rate of 2:1 splits against the second judge.
    #[arg(long)]
    pub c: f64,
    /// Rate of 2:1 splits against the third judge.
    #[arg(long)]
    pub p: f64,
}

#[derive(Args, Debug)]
pub struct AppealArgs {
    /// Observed reversal rate of the appeal court.
    #[arg(long)]
    pub rate: Option<f64>,
    /// Cassation rate against first-instance rulings.
    #[arg(long)]
    pub q_prime: Option<f64>,
    /// Cassation rate against appeal-court rulings.
    #[arg(long)]
    pub q_dprime: Option<f64>,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[arg(long)]
    pub v1: f64,
    #[arg(long)]
    pub v2: f64,
}

#[derive(Args, Debug)]
pub struct LifeArgs {
    /// Age queried.
    #[arg(long)]
    pub age: f64,
}

#[derive(Args, Debug)]
pub struct CometsArgs {
    /// Split threshold in degrees.
    #[arg(long, default_value_t = 60.0)]
    pub threshold: f64,
    /// Restrict to perihelion epochs of one season.
    #[arg(long, value_enum)]
    pub season: Option<SeasonName>,
    /// Also print the running winter/summer prefix table.
    #[arg(long)]
    pub prefixes: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum SeasonName {
    Winter,
    Summer,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum SchemeName {
    Urn,
    Fixed,
    Series,
    Jury,
    Ruin,
    Poles,
}

#[derive(Args, Debug)]
pub struct SimArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeName,
    #[arg(long, default_value_t = 1000)]
    pub replicates: u64,
    /// Mixture success chances (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub ps: Vec<f64>,
    /// Mixture weights (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub ks: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    pub draws: u64,
    #[arg(long, default_value_t = 100)]
    pub series_len: u64,
    #[arg(long, default_value_t = 100)]
    pub series_count: u64,
    #[arg(long, default_value_t = 0.65)]
    pub k1: f64,
    #[arg(long, default_value_t = 0.82)]
    pub v1: f64,
    #[arg(long, default_value_t = 0.82)]
    pub v2: f64,
    #[arg(long, default_value_t = 50)]
    pub alpha: i64,
    #[arg(long, default_value_t = 1000)]
    pub sets: u64,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Restrict to one check group.
    #[arg(long)]
    pub only: Option<String>,
}

/// Parses `args` and runs the selected subcommand, writing output to
/// `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            2
        }
    }
}

type CliResult = Result<i32, Box<dyn std::error::Error>>;

fn emit(cli: &Cli, out: &mut dyn Write, value: &Value, text: &str) -> CliResult {
    if cli.json {
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(0)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Table(args) => cmd_table(cli, args, out),
        Command::Deviation(args) => cmd_deviation(cli, args, out),
        Command::Law(args) => cmd_law(cli, args, out),
        Command::Compare(args) => cmd_compare(cli, args, out),
        Command::Means(args) => cmd_means(cli, args, out),
        Command::Lsq(args) => cmd_lsq(cli, args, out),
        Command::Game(args) => cmd_game(cli, args, out),
        Command::Insure(args) => cmd_insure(cli, args, out),
        Command::Jury(args) => cmd_jury(cli, args, out),
        Command::Tribunal(args) => cmd_tribunal(cli, args, out),
        Command::Appeal(args) => cmd_appeal(cli, args, out),
        Command::Witness(args) => cmd_witness(cli, args, out),
        Command::Life(args) => cmd_life(cli, args, out),
        Command::Sexratio => cmd_sexratio(cli, out),
        Command::Comets(args) => cmd_comets(cli, args, out),
        Command::Sim(args) => cmd_sim(cli, args, out),
        Command::Reproduce(args) => cmd_reproduce(cli, args, out),
    }
}

fn cmd_table(cli: &Cli, args: &TableArgs, out: &mut dyn Write) -> CliResult {
    let rows = emit_table(args.step);
    if let Some(path) = &cli.csv {
        let mut writer = csv::Writer::from_path(path)?;
        writer.write_record(["t", "p"])?;
        for (t, p) in &rows {
            writer.write_record([format!("{t:.4}"), format!("{p:.6}")])?;
        }
        writer.flush()?;
        return emit(
            cli,
            out,
            &json!({"rows": rows.len(), "csv": path.display().to_string()}),
            &format!("wrote {} rows to {}", rows.len(), path.display()),
        );
    }
    if cli.json {
        let rows: Vec<Value> = rows.iter().map(|(t, p)| json!({"t": t, "p": p})).collect();
        writeln!(out, "{}", json!({ "rows": rows }))?;
    } else {
        for (t, p) in rows {
            writeln!(out, "{t:.4}  {p:.6}")?;
        }
    }
    Ok(0)
}

fn cmd_deviation(cli: &Cli, args: &DeviationArgs, out: &mut dyn Write) -> CliResult {
    match (args.t, args.p) {
        (Some(t), None) => {
            let p = p_of_t(t)?;
            emit(cli, out, &json!({"t": t, "p": p}), &format!("P({t}) = {p:.6}"))
        }
        (None, Some(p)) => {
            let t = t_of_p(p)?;
            emit(cli, out, &json!({"t": t, "p": p}), &format!("t({p}) = {t:.6}"))
        }
        _ => Err("pass exactly one of --t or --p".into()),
    }
}

fn cmd_law(cli: &Cli, args: &LawArgs, out: &mut dyn Write) -> CliResult {
    let model = match args.model {
        LawName::Uniform => DensityModel::Uniform { a: args.a, b: args.b },
        LawName::Linear => DensityModel::LinearIncreasing,
        LawName::Quadratic => DensityModel::Quadratic,
        LawName::Latitude => DensityModel::SphereLatitude,
        LawName::Sum => crate::summaries::sum_of_uniforms_law(),
        LawName::Difference => crate::summaries::difference_of_uniforms_law(),
    };
    let s = summarize(&model)?;
    emit(
        cli,
        out,
        &json!({"mean": s.mean, "median": s.median, "modulus": s.modulus}),
        &format!(
            "mean = {:.6}\nmedian = {:.6}\nmodulus = {:.6}",
            s.mean, s.median, s.modulus
        ),
    )
}

fn comparison_json(r: &crate::inference::ComparisonResult) -> Value {
    json!({
        "delta": r.delta,
        "t": r.t,
        "p": r.p,
        "pi": r.pi,
        "small_sample_warning": r.small_sample_warning,
    })
}

fn cmd_compare(cli: &Cli, args: &CompareArgs, out: &mut dyn Write) -> CliResult {
    let s1 = BinomialSeries::new(args.m1, args.n1, "first")?;
    let s2 = BinomialSeries::new(args.m2, args.n2, "second")?;
    let r = match args.at {
        Some(l) => compare_two_series_at(&s1, &s2, l)?,
        None => compare_two_series(&s1, &s2, args.alpha)?,
    };
    let mut text = format!(
        "delta = {:.6}\nt = {:.6}\nP = {:.6}\nPi = {:.6}",
        r.delta, r.t, r.p, r.pi
    );
    if r.small_sample_warning {
        text.push_str("\nwarning: small counts; the limit law is rough");
    }
    emit(cli, out, &comparison_json(&r), &text)
}

fn cmd_means(cli: &Cli, args: &MeansArgs, out: &mut dyn Write) -> CliResult {
    let s1 = modulus_from_sums(args.mean1, args.sumsq1, args.count1);
    let s2 = modulus_from_sums(args.mean2, args.sumsq2, args.count2);
    let r = compare_two_means_from_summary(&s1, args.count1, &s2, args.count2)?;
    emit(
        cli,
        out,
        &comparison_json(&r),
        &format!(
            "delta = {:.6}\nt = {:.6}\nP = {:.6}\nPi = {:.6}",
            r.delta, r.t, r.p, r.pi
        ),
    )
}

fn cmd_lsq(cli: &Cli, args: &LsqArgs, out: &mut dyn Write) -> CliResult {
    let path = cli.csv.as_ref().ok_or("lsq reads condition rows from --csv <path>")?;
    let mut rows = Vec::new();
    let mut reader = csv::Reader::from_path(path)?;
    for record in reader.records() {
        let record = record?;
        if record.len() < 2 {
            return Err("lsq CSV needs columns: coefficient,observed".into());
        }
        rows.push(ConditionRow {
            coefficients: vec![record[0].trim().parse()?],
            observed: record[1].trim().parse()?,
        });
    }
    let fit = laplace_ls_single(&rows, args.gamma)?;
    let limit = fit.limit(args.prob)?;
    emit(
        cli,
        out,
        &json!({"x": fit.x, "weight": fit.weight, "gamma": fit.gamma, "limit": limit, "prob": args.prob}),
        &format!(
            "x = {:.6}\nweight = {:.4}\nwindow at P = {:.6}: x ± {:.6}",
            fit.x, fit.weight, args.prob, limit
        ),
    )
}

fn cmd_game(cli: &Cli, args: &GameArgs, out: &mut dyn Write) -> CliResult {
    match args.mode {
        GameMode::Punter => {
            let spec = GameSpec { m: args.sets, p: args.p, a: args.stake, b: args.payout };
            let r = punter_limits(&spec, args.prob)?;
            emit(
                cli,
                out,
                &json!({"mean_loss": r.mean_loss, "window": [r.window.0, r.window.1]}),
                &format!(
                    "mean loss = {:.2}\nloss window at P = {:.6}: [{:.2}, {:.2}]",
                    r.mean_loss, args.prob, r.window.0, r.window.1
                ),
            )
        }
        GameMode::Ruin => {
            let r = ruin_probability(&RuinSpec { alpha: args.alpha, n: args.sets })?;
            emit(
                cli,
                out,
                &json!({
                    "ruin": r.ruin,
                    "survival_main": r.survival_main,
                    "survival_corrected": r.survival_corrected,
                }),
                &format!(
                    "ruin = {:.6}\nsurvival (main term) = {:.6}\nsurvival (corrected) = {:.6}",
                    r.ruin, r.survival_main, r.survival_corrected
                ),
            )
        }
        GameMode::Petersburg => {
            let v = petersburg_value(args.cap, args.unit)?;
            emit(
                cli,
                out,
                &json!({"value": v, "cap": args.cap, "unit": args.unit}),
                &format!("capped value = {v:.2}"),
            )
        }
        GameMode::Oscillation => {
            let r = fair_game_oscillation(args.sets, args.prob)?;
            emit(
                cli,
                out,
                &json!({"formula": r.formula, "exact": r.exact}),
                &format!("formula = {:.2}\nexact quantile = {}", r.formula, r.exact),
            )
        }
    }
}

fn cmd_insure(cli: &Cli, args: &InsureArgs, out: &mut dyn Write) -> CliResult {
    let window = boni_limits(args.policies, args.p, args.premium, args.unit, args.prob)?;
    let deficit = boni_deficit_probability(args.policies, args.p, args.premium)?;
    emit(
        cli,
        out,
        &json!({
            "mean": window.mean,
            "half_width": window.half_width,
            "window": [window.low(), window.high()],
            "deficit_probability": deficit,
        }),
        &format!(
            "expected margin = {:.2}\nwindow at P = {:.6}: [{:.2}, {:.2}]\ndeficit probability = {:.6}",
            window.mean,
            args.prob,
            window.low(),
            window.high(),
            deficit
        ),
    )
}

fn cmd_jury(cli: &Cli, args: &JuryArgs, out: &mut dyn Write) -> CliResult {
    let tally = JuryTally { c1: args.c1, c2: args.c2 };
    let a = jury12_hypothesis_a(&tally)?;
    let b = jury12_hypothesis_b(&tally)?;
    let mut value = json!({
        "hypothesis_a": {"v1": a.v1, "big_v1": a.big_v1, "k1": a.k1},
        "hypothesis_b": {"v": b.v, "k1": b.k1, "big_v1": b.big_v1, "big_v2": b.big_v2},
    });
    let mut text = format!(
        "twelve of twelve convictable screened (A): v1 = {:.6}, V1 = {:.6}, k1 = {:.6}\n\
         mixed accused (B): v = {:.6}, k1 = {:.6}, V2 = {:.6}",
        a.v1, a.big_v1, a.k1, b.v, b.k1, b.big_v2
    );
    if let Some(n) = args.cases {
        let acquitted = a.acquitted_convictable_rounded(n);
        let convicted = b.convicted_absolvable_rounded(n);
        value["acquitted_convictable"] = json!(acquitted);
        value["convicted_absolvable"] = json!(convicted);
        text.push_str(&format!(
            "\nper {n} cases: ~{acquitted:.0} convictable acquitted, ~{convicted:.0} absolvable convicted"
        ));
    }
    emit(cli, out, &value, &text)
}

fn cmd_tribunal(cli: &Cli, args: &TribunalArgs, out: &mut dyn Write) -> CliResult {
    let tally = TribunalTally { a: args.a, b: args.b, c: args.c, p: args.p };
    match solve_three_judges(&tally)? {
        TribunalSolution::Solved { v } => {
            let reliability = tribunal_reliability(v[0], v[1], v[2]);
            emit(
                cli,
                out,
                &json!({"v": v, "majority_reliability": reliability}),
                &format!(
                    "v = [{:.6}, {:.6}, {:.6}]\nmajority reliability = {:.6}",
                    v[0], v[1], v[2], reliability
                ),
            )
        }
        TribunalSolution::Infeasible { reason } => {
            emit(
                cli,
                out,
                &json!({"infeasible": reason}),
                &format!("infeasible: {reason}"),
            )
        }
    }
}

fn cmd_appeal(cli: &Cli, args: &AppealArgs, out: &mut dyn Write) -> CliResult {
    match (args.rate, args.q_prime, args.q_dprime) {
        (Some(q), None, None) => {
            let s = appeal_system(q)?;
            emit(
                cli,
                out,
                &json!({
                    "v": s.v,
                    "v_tribunal": s.v_tribunal,
                    "v_appeal": s.v_appeal,
                    "reliability_if_confirmed": s.reliability_if_confirmed,
                    "reliability_if_reversed": s.reliability_if_reversed,
                }),
                &format!(
                    "v = {:.6}\nV (three judges) = {:.6}\nV' (seven judges) = {:.6}\n\
                     P(right | confirmed) = {:.6}\nP(right | reversed) = {:.6}",
                    s.v, s.v_tribunal, s.v_appeal, s.reliability_if_confirmed,
                    s.reliability_if_reversed
                ),
            )
        }
        (None, Some(q_prime), Some(q_dprime)) => {
            let stats = AppealStats { q: None, q_prime, q_dprime };
            let b = cassation_bounds(&stats)?;
            emit(
                cli,
                out,
                &json!({
                    "v_tribunal": [b.v_tribunal.0, b.v_tribunal.1],
                    "v_appeal": [b.v_appeal.0, b.v_appeal.1],
                    "v_tribunal_refined": [b.v_tribunal_refined.0, b.v_tribunal_refined.1],
                    "v_judge": [b.v_judge.0, b.v_judge.1],
                }),
                &format!(
                    "{:.6} < V  < {:.6}\n{:.6} < V' < {:.6}\nrefined: {:.6} < V < {:.6}\n\
                     per judge: {:.6} < v < {:.6}",
                    b.v_tribunal.0, b.v_tribunal.1, b.v_appeal.0, b.v_appeal.1,
                    b.v_tribunal_refined.0, b.v_tribunal_refined.1, b.v_judge.0, b.v_judge.1
                ),
            )
        }
        _ => Err("pass either --rate, or both --q-prime and --q-dprime".into()),
    }
}

fn cmd_witness(cli: &Cli, args: &WitnessArgs, out: &mut dyn Write) -> CliResult {
    let w = witness_agreement(args.v1, args.v2);
    emit(
        cli,
        out,
        &json!({
            "p_agree": w.p_agree,
            "p_disagree": w.p_disagree,
            "truth_given_agreement": w.truth_given_agreement,
            "first_right_given_disagreement": w.first_right_given_disagreement,
        }),
        &format!(
            "P(agree) = {:.6}\nP(true | agree) = {:.6}\nP(first right | disagree) = {:.6}",
            w.p_agree, w.truth_given_agreement, w.first_right_given_disagreement
        ),
    )
}

fn load_life_table(path: &std::path::Path) -> Result<LifeTable, Box<dyn std::error::Error>> {
    let mut ages = Vec::new();
    let mut survival = Vec::new();
    let mut reader = csv::Reader::from_path(path)?;
    for record in reader.records() {
        let record = record?;
        if record.len() < 2 {
            return Err("life CSV needs columns: age,survival".into());
        }
        ages.push(record[0].trim().parse()?);
        survival.push(record[1].trim().parse()?);
    }
    Ok(LifeTable::new(ages, survival)?)
}

fn cmd_life(cli: &Cli, args: &LifeArgs, out: &mut dyn Write) -> CliResult {
    let path = cli.csv.as_ref().ok_or("life reads the table from --csv <path>")?;
    let table = load_life_table(path)?;
    let survival = table.survival_at(args.age)?;
    let mean = mean_life(&table, args.age)?;
    let probable = probable_life(&table, args.age)?;
    let danger = yearly_danger(&table, args.age)?;
    emit(
        cli,
        out,
        &json!({
            "age": args.age,
            "survival": survival,
            "mean_life": mean,
            "probable_life": probable,
            "yearly_danger": danger,
        }),
        &format!(
            "survival to {} = {:.6}\nmean remaining life = {:.3}\nprobable remaining life = {:.3}\n\
             danger of the coming year = {:.6}",
            args.age, survival, mean, probable, danger
        ),
    )
}

fn cmd_sexratio(cli: &Cli, out: &mut dyn Write) -> CliResult {
    let path = cli.csv.as_ref().ok_or("sexratio reads series from --csv <path>")?;
    let mut series = Vec::new();
    let mut reader = csv::Reader::from_path(path)?;
    for record in reader.records() {
        let record = record?;
        if record.len() < 3 {
            return Err("sexratio CSV needs columns: label,total,males".into());
        }
        series.push(BinomialSeries::new(
            record[1].trim().parse()?,
            record[2].trim().parse()?,
            record[0].trim(),
        )?);
    }
    let report = sex_ratio_report(&series)?;
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "label": r.label,
                "m": r.m,
                "n": r.n,
                "p": r.p,
                "weight": r.weight,
                "p_confidence": r.p_confidence,
                "reversal": r.reversal,
            })
        })
        .collect();
    let mut text = format!(
        "pooled: {} births, male chance {:.6}, weight {:.1}",
        report.pooled_m, report.pooled_p, report.pooled_weight
    );
    for r in &report.rows {
        text.push_str(&format!(
            "\n{}: p = {:.6}, weight = {:.1}, P = {:.6}, reversal = {:.6}",
            r.label, r.p, r.weight, r.p_confidence, r.reversal
        ));
    }
    let mut value = json!({
        "pooled_m": report.pooled_m,
        "pooled_n": report.pooled_n,
        "pooled_p": report.pooled_p,
        "pooled_weight": report.pooled_weight,
        "rows": rows,
    });
    if let Some(cmp) = &report.comparison {
        value["comparison"] = comparison_json(cmp);
        text.push_str(&format!(
            "\nfirst two series: delta = {:.6}, t = {:.6}, P = {:.6}",
            cmp.delta, cmp.t, cmp.p
        ));
    }
    emit(cli, out, &value, &text)
}

fn cmd_comets(cli: &Cli, args: &CometsArgs, out: &mut dyn Write) -> CliResult {
    let catalog: Vec<OrbitRecord> = match &cli.csv {
        Some(path) => parse_catalog(&fs::read_to_string(path)?)?,
        None => bundled_catalog(),
    };
    let selected: Vec<&OrbitRecord> = match args.season {
        Some(SeasonName::Winter) => catalog
            .iter()
            .filter(|r| season_of(&r.epoch).ok() == Some(Season::Winter))
            .collect(),
        Some(SeasonName::Summer) => catalog
            .iter()
            .filter(|r| season_of(&r.epoch).ok() == Some(Season::Summer))
            .collect(),
        None => catalog.iter().collect(),
    };
    if selected.is_empty() {
        return Err("no records selected".into());
    }
    let sextets: Vec<AngleSextet> = selected
        .iter()
        .map(|r| angles_from_elements(r))
        .collect::<Result<_, _>>()?;
    let splits = split_counts(&sextets, args.threshold);
    let means = mean_angles(&sextets);
    let baseline = uniform_sphere_baseline();
    let tests: Vec<Value> = means
        .iter()
        .map(|&mean| {
            let t = mean_angle_test(mean, sextets.len() as u64);
            json!({"mean": mean, "t": t.t, "p": t.p})
        })
        .collect();
    let mut text = format!(
        "{} records; uniform baseline mean {:.4} deg\nsplits above/below {} deg:",
        sextets.len(),
        baseline.mean_degrees,
        args.threshold
    );
    let names = ["theta", "theta'", "theta''", "t", "t'", "t''"];
    for (name, (above, below)) in names.iter().zip(splits.iter()) {
        text.push_str(&format!("\n  {name}: {above}:{below}"));
    }
    for (name, (mean, test)) in names.iter().zip(means.iter().zip(tests.iter())) {
        text.push_str(&format!(
            "\n  mean {name} = {:.4} deg, P = {:.6}",
            mean,
            test["p"].as_f64().unwrap_or(f64::NAN)
        ));
    }
    let mut value = json!({
        "records": sextets.len(),
        "threshold": args.threshold,
        "splits": splits.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "means": means.to_vec(),
        "mean_tests": tests,
        "baseline_mean": baseline.mean_degrees,
    });
    if args.prefixes {
        let table = proportion_test_over_prefixes(&catalog, |r| {
            season_of(&r.epoch).ok() == Some(Season::Winter)
        })?;
        let rows: Vec<Value> = table
            .rows
            .iter()
            .map(|r| json!({"size": r.size, "winter": r.hits, "summer": r.misses}))
            .collect();
        value["prefixes"] = json!({
            "rows": rows,
            "final_probability": table.final_probability,
        });
        text.push_str("\nwinter counts over prefixes:");
        for r in &table.rows {
            text.push_str(&format!("\n  first {}: {}:{}", r.size, r.hits, r.misses));
        }
        text.push_str(&format!(
            "\nP(fair split stays below the observed majority) = {:.6}",
            table.final_probability
        ));
    }
    emit(cli, out, &value, &text)
}

fn cmd_sim(cli: &Cli, args: &SimArgs, out: &mut dyn Write) -> CliResult {
    let scheme = match args.scheme {
        SchemeName::Urn => Scheme::UrnMixture {
            ps: args.ps.clone(),
            ks: args.ks.clone(),
            draws: args.draws,
        },
        SchemeName::Fixed => Scheme::FixedAllocation {
            ps: args.ps.clone(),
            ks: args.ks.clone(),
            draws: args.draws,
        },
        SchemeName::Series => Scheme::SeriesMixture {
            ps: args.ps.clone(),
            ks: args.ks.clone(),
            series_len: args.series_len,
            series_count: args.series_count,
        },
        SchemeName::Jury => Scheme::Jury12 { k1: args.k1, v1: args.v1, v2: args.v2 },
        SchemeName::Ruin => Scheme::RuinWalk { alpha: args.alpha, n: args.sets },
        SchemeName::Poles => Scheme::SpherePoles,
    };
    let config = SimulationConfig {
        seed: cli.seed,
        replicates: args.replicates,
        scheme,
    };
    let summary = simulate_scheme(&config)?;
    let value = json!({
        "seed": cli.seed,
        "replicates": summary.replicates,
        "mean": summary.mean,
        "median_abs_deviation": summary.median_abs_deviation,
        "quantiles": summary.quantiles.iter().map(|(q, v)| json!([q, v])).collect::<Vec<_>>(),
        "category_rates": summary.category_rates.map(|(c1, c2)| json!([c1, c2])),
    });
    // Simulation reports are always JSON: they are meant for machines.
    writeln!(out, "{value}")?;
    Ok(0)
}

fn cmd_reproduce(cli: &Cli, args: &ReproduceArgs, out: &mut dyn Write) -> CliResult {
    let checks = run_checks(args.only.as_deref());
    if checks.is_empty() {
        return Err(format!(
            "no checks matched {:?}",
            args.only.as_deref().unwrap_or("")
        )
        .into());
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    if cli.json {
        writeln!(
            out,
            "{}",
            json!({
                "checks": checks,
                "passed": checks.len() - failed,
                "failed": failed,
            })
        )?;
    } else {
        for check in &checks {
            writeln!(
                out,
                "{} {}/{}: expected {} computed {:.6} (tolerance {})",
                if check.passed() { "PASS" } else { "FAIL" },
                check.group,
                check.name,
                check.expected,
                check.computed,
                check.tolerance
            )?;
        }
        writeln!(out, "{} passed, {} failed", checks.len() - failed, failed)?;
    }
    Ok(i32::from(failed > 0))
}

#[cfg(test)]
mod test {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(args.iter().map(|s| s.to_string()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn deviation_forward_and_inverse() {
        let (code, text) = run_capture(&["aleatoric", "deviation", "--t", "3"]);
        assert_eq!(code, 0);
        assert!(text.contains("0.999978"), "{text}");
        let (code, text) = run_capture(&["aleatoric", "deviation", "--p", "0.5"]);
        assert_eq!(code, 0);
        assert!(text.contains("0.47693"), "{text}");
    }

    #[test]
    fn deviation_requires_one_argument() {
        let (code, _) = run_capture(&["aleatoric", "deviation"]);
        assert_eq!(code, 2);
        let (code, _) = run_capture(&["aleatoric", "deviation", "--t", "1", "--p", "0.5"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn law_json_roundtrip() {
        let (code, text) = run_capture(&["aleatoric", "--json", "law", "--model", "linear"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!((v["mean"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert!((v["modulus"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn compare_series_output() {
        let (code, text) = run_capture(&[
            "aleatoric", "--json", "compare", "--m1", "1000", "--n1", "600", "--m2", "1000",
            "--n2", "500",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!((v["delta"].as_f64().unwrap() - 0.1).abs() < 1e-12);
        assert!(v["p"].as_f64().unwrap() > 0.99);
    }

    #[test]
    fn game_ruin_values() {
        let (code, text) = run_capture(&[
            "aleatoric", "--json", "game", "--mode", "ruin", "--alpha", "50", "--sets", "1000",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!((v["survival_main"].as_f64().unwrap() - 0.8859).abs() < 2e-3);
    }

    #[test]
    fn jury_with_case_load() {
        let (code, text) = run_capture(&[
            "aleatoric", "--json", "jury", "--c1", "0.619", "--c2", "0.026", "--cases", "39424",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!((v["hypothesis_a"]["v1"].as_f64().unwrap() - 0.816).abs() < 2e-3);
        assert!((v["acquitted_convictable"].as_f64().unwrap() - 335.0).abs() <= 5.0);
    }

    #[test]
    fn appeal_bounds_output() {
        let (code, text) = run_capture(&[
            "aleatoric", "--json", "appeal", "--q-prime", "0.467", "--q-dprime", "0.202",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!((v["v_appeal"][1].as_f64().unwrap() - 0.886).abs() < 1e-3);
    }

    #[test]
    fn witness_output() {
        let (code, text) = run_capture(&["aleatoric", "witness", "--v1", "0.9", "--v2", "0.9"]);
        assert_eq!(code, 0);
        assert!(text.contains("P(agree) = 0.820000"), "{text}");
    }

    #[test]
    fn life_from_csv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("table.csv");
        let mut file = std::fs::File::create(&path).unwrap();
        writeln!(file, "age,survival").unwrap();
        for k in 0..=100u32 {
            writeln!(file, "{},{}", k, (-0.03 * f64::from(k)).exp()).unwrap();
        }
        drop(file);
        let (code, text) = run_capture(&[
            "aleatoric", "--json", "--csv", path.to_str().unwrap(), "life", "--age", "30",
        ]);
        assert_eq!(code, 0, "{text}");
        let v: Value = serde_json::from_str(&text).unwrap();
        // Exponential survival truncated at age 100: the mean remaining
        // life at 30 is (1 - e^(-0.03 * 70)) / 0.03.
        let expected = (1.0 - (-0.03f64 * 70.0).exp()) / 0.03;
        assert!((v["mean_life"].as_f64().unwrap() - expected).abs() < 0.5);
    }

    #[test]
    fn sexratio_from_csv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("births.csv");
        let mut file = std::fs::File::create(&path).unwrap();
        writeln!(file, "label,total,males").unwrap();
        writeln!(file, "first,1000000,515000").unwrap();
        writeln!(file, "second,500000,256000").unwrap();
        drop(file);
        let (code, text) = run_capture(&[
            "aleatoric", "--json", "--csv", path.to_str().unwrap(), "sexratio",
        ]);
        assert_eq!(code, 0, "{text}");
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["pooled_m"].as_u64().unwrap(), 1_500_000);
        assert_eq!(v["rows"].as_array().unwrap().len(), 2);
        assert!(v["comparison"]["p"].as_f64().is_some());
    }

    #[test]
    fn comets_bundled_catalog() {
        let (code, text) = run_capture(&["aleatoric", "--json", "comets", "--prefixes"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["records"].as_u64().unwrap(), 125);
        assert_eq!(v["splits"][0][0].as_u64().unwrap(), 48);
        assert_eq!(v["splits"][0][1].as_u64().unwrap(), 77);
        let p = v["prefixes"]["final_probability"].as_f64().unwrap();
        assert!((p - 0.924).abs() < 2e-3);
    }

    #[test]
    fn comets_winter_subset() {
        let (code, text) = run_capture(&["aleatoric", "--json", "comets", "--season", "winter"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["records"].as_u64().unwrap(), 71);
    }

    #[test]
    fn sim_is_deterministic_in_the_seed() {
        let args = [
            "aleatoric", "--seed", "9", "sim", "--scheme", "jury", "--replicates", "2000",
        ];
        let (code, first) = run_capture(&args);
        assert_eq!(code, 0);
        let (_, second) = run_capture(&args);
        assert_eq!(first, second);
        let v: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(v["replicates"].as_u64().unwrap(), 2000);
        assert!(v["category_rates"].is_array());
    }

    #[test]
    fn table_to_csv_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("table.csv");
        let (code, _) = run_capture(&[
            "aleatoric", "--csv", path.to_str().unwrap(), "table", "--step", "0.5",
        ]);
        assert_eq!(code, 0);
        let body = std::fs::read_to_string(&path).unwrap();
        let mut lines = body.lines();
        assert_eq!(lines.next().unwrap(), "t,p");
        assert!(body.lines().any(|l| l.starts_with("3.0000,0.999978")), "{body}");
    }

    #[test]
    fn reproduce_all_pass() {
        let (code, text) = run_capture(&["aleatoric", "reproduce"]);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("PASS deviation/P(3)"), "{text}");
        assert!(!text.contains("FAIL"), "{text}");
    }

    #[test]
    fn reproduce_filter_and_json() {
        let (code, text) = run_capture(&["aleatoric", "--json", "reproduce", "--only", "games"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["failed"].as_u64().unwrap(), 0);
        assert!(v["checks"].as_array().unwrap().len() >= 5);
        let (code, _) = run_capture(&["aleatoric", "reproduce", "--only", "nothing"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn lsq_from_csv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.csv");
        let mut file = std::fs::File::create(&path).unwrap();
        writeln!(file, "coefficient,observed").unwrap();
        // y = 2.5 x plus small perturbations.
        for (x, y) in [(1.0, 2.4), (2.0, 5.1), (3.0, 7.6), (4.0, 9.9)] {
            writeln!(file, "{x},{y}").unwrap();
        }
        drop(file);
        let (code, text) = run_capture(&[
            "aleatoric", "--json", "--csv", path.to_str().unwrap(), "lsq",
        ]);
        assert_eq!(code, 0, "{text}");
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!((v["x"].as_f64().unwrap() - 2.5).abs() < 0.05);
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, text) = run_capture(&["aleatoric", "--help"]);
        assert_eq!(code, 0);
        assert!(text.contains("reproduce"));
    }
}
