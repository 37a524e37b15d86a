mod config;
mod report;
mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gross_core::det::{self, RoundCount};
use gross_core::linalg::{LinalgError, StationarityParams};
use gross_core::solver::{self, ModelSpec, SolverError};
use gross_core::stoch::{self, StochError};
use gross_core::{GrossScalar, Magnitude, RankGroup};
use thiserror::Error;

use config::{ConfigError, Mode, TournamentConfig};
use report::{RunReport, StationarityReport};
use table::Table;

#[derive(Parser)]
#[command(name = "grosspd", version, about = "Prisoner's Dilemma tournaments with grossone arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an arithmetic expression over gross numbers.
    Eval {
        expression: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Deterministic tournament: closed forms, expectations and ranking.
    Det(RunArgs),
    /// Stochastic tournament through the Markov-chain engine.
    Stoch(RunArgs),
    /// Solve the payoff design model for the configured target player.
    Solve(RunArgs),
    /// Run whatever `mode` the config file names.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    config: PathBuf,
    /// Where to write the report (default: next to the config, `.report.toml`).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Stationarity tolerance.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Largest matrix power tried when looking for stationarity.
    #[arg(long)]
    nmax: Option<usize>,
}

#[derive(Debug, Error)]
enum AppError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// A well-formed problem without an answer.
    #[error("{message}")]
    Analysis { kind: &'static str, message: String },
    #[error("{0}")]
    Failed(String),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Analysis { .. } => 2,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            AppError::Config(_) => "config",
            AppError::Analysis { kind, .. } => kind,
            AppError::Failed(_) => "failed",
        }
    }
}

impl From<StochError> for AppError {
    fn from(e: StochError) -> Self {
        match e {
            StochError::NotConverged { source: LinalgError::NotConverged { .. }, .. } => {
                AppError::Analysis { kind: "not_converged", message: e.to_string() }
            }
            other => AppError::Failed(other.to_string()),
        }
    }
}

impl From<SolverError> for AppError {
    fn from(e: SolverError) -> Self {
        let kind = match &e {
            SolverError::EmptySolution(_) => "empty_solution",
            SolverError::DegenerateBeta => "degenerate_beta",
            SolverError::NoPivot => "no_pivot",
            SolverError::Stoch(inner) => return inner.clone().into(),
            _ => return AppError::Failed(e.to_string()),
        };
        AppError::Analysis { kind, message: e.to_string() }
    }
}

impl From<det::DetError> for AppError {
    fn from(e: det::DetError) -> Self {
        AppError::Failed(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn default_report_path(config: &Path) -> PathBuf {
    let stem = config.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "run".into());
    config.with_file_name(format!("{stem}.report.toml"))
}

fn execute(command: Command) -> Result<(), AppError> {
    let started = Instant::now();
    let (forced, args) = match command {
        Command::Eval { expression, report } => {
            let mut rep = RunReport::new("eval");
            let result = eval(&expression, &mut rep);
            return finish(rep, result, report.as_deref(), started);
        }
        Command::Det(a) => (Some(Mode::Det), a),
        Command::Stoch(a) => (Some(Mode::Stoch), a),
        Command::Solve(a) => (Some(Mode::Solve), a),
        Command::Run(a) => (None, a),
    };
    let mut cfg = TournamentConfig::load(&args.config)?;
    let mode = forced
        .or(cfg.mode)
        .ok_or_else(|| ConfigError::Field { field: "mode".into(), message: "missing; use det, stoch, solve or eval".into() })?;
    cfg.mode = Some(mode);
    let report_path = args.report.clone().unwrap_or_else(|| default_report_path(&args.config));
    let mut rep = RunReport::new(mode.name());
    let result = match mode {
        Mode::Eval => {
            let expr = cfg.expression.clone().ok_or_else(|| ConfigError::Field {
                field: "expression".into(),
                message: "missing for mode eval".into(),
            })?;
            eval(&expr, &mut rep)
        }
        Mode::Det => run_det(&cfg, &mut rep),
        Mode::Stoch | Mode::Solve => {
            let params = cfg.stationarity(args.epsilon, args.nmax)?;
            cfg.epsilon = Some(params.epsilon);
            cfg.n_max = Some(params.n_max);
            if mode == Mode::Stoch {
                run_stoch(&cfg, &params, &mut rep)
            } else {
                run_solve(&cfg, &params, &mut rep)
            }
        }
    };
    if matches!(result, Err(AppError::Config(_))) {
        return result.map(drop);
    }
    rep.input = Some(cfg);
    finish(rep, result, Some(&report_path), started)
}

fn finish(mut rep: RunReport, result: Result<String, AppError>, path: Option<&Path>, started: Instant) -> Result<(), AppError> {
    let outcome = match result {
        Ok(console) => {
            println!("{console}");
            Ok(())
        }
        Err(e) => {
            rep.error = Some(report::ErrorReport { kind: e.kind().to_string(), message: e.to_string() });
            Err(e)
        }
    };
    rep.timings.total_ms = started.elapsed().as_secs_f64() * 1e3;
    if let Some(path) = path {
        std::fs::write(path, rep.to_toml())
            .map_err(|e| AppError::Failed(format!("cannot write report {}: {e}", path.display())))?;
        eprintln!("report written to {}", path.display());
    }
    outcome
}

fn eval(expression: &str, rep: &mut RunReport) -> Result<String, AppError> {
    let value: GrossScalar = expression.parse().map_err(|e| AppError::Failed(format!("{e}")))?;
    rep.result = Some(value.to_string());
    Ok(value.to_string())
}

fn approx(x: &GrossScalar) -> String {
    match x.classify() {
        Magnitude::Finite if !x.is_polynomial() || x.to_rational().is_some() => format!("{:.6}", x.to_f64_finite()),
        _ => String::new(),
    }
}

/// `~ c·g^p` for the dominant term of a non-finite value.
fn leading_term(x: &GrossScalar) -> String {
    let Some(p) = x.leading_power() else { return String::new() };
    let scaled = x * &GrossScalar::grossone_pow(-p.clone());
    let coefficient = scaled.to_f64_finite();
    format!(", ~ {coefficient:.6} g^{}", gross_core::grossnum::rational::format_rational(&p))
}

fn ranking_table(ranking: &[RankGroup], names: &[String]) -> String {
    let mut t = Table::new(["rank", "player", "expectation", "note"]);
    for g in ranking {
        let who: Vec<&str> = g.players.iter().map(|i| names[*i].as_str()).collect();
        t.row([g.position.to_string(), who.join(", "), g.value.to_string(), if g.is_tie() { "ex aequo".into() } else { String::new() }]);
    }
    t.render()
}

fn run_det(cfg: &TournamentConfig, rep: &mut RunReport) -> Result<String, AppError> {
    let players = cfg.strategies()?;
    let names = cfg.names();
    let payoffs = cfg.payoffs()?;
    let n = cfg.rounds()?;
    let count = RoundCount::new(&n)?;
    let closed = det::tournament_closed_form(&players)?;
    let result = det::tournament(&players, &payoffs, &n)?;
    rep.n = Some(n.to_string());

    let mut header = vec![String::from("player")];
    header.extend(names.iter().map(|m| format!("vs {m}")));
    header.push("total".into());
    let mut forms = Table::new(header.clone());
    let mut values = Table::new(header);
    for (i, name) in names.iter().enumerate() {
        let mut form_row = vec![name.clone()];
        let mut value_row = vec![name.clone()];
        for j in 0..names.len() {
            match (&closed.pairs[i][j], &result.pair_expectations[i][j]) {
                (Some(e), Some(v)) => {
                    let text = report::closed_form_text(e);
                    form_row.push(text.clone());
                    value_row.push(v.to_string());
                    rep.pairs.push(report::PairEntry {
                        player: name.clone(),
                        opponent: names[j].clone(),
                        expectation: v.to_string(),
                        closed_form: Some(text),
                    });
                }
                _ => {
                    form_row.push("-".into());
                    value_row.push("-".into());
                }
            }
        }
        let total_form = report::closed_form_text(&closed.totals[i]);
        form_row.push(total_form.clone());
        value_row.push(result.totals[i].to_string());
        rep.totals.push(report::TotalEntry {
            player: name.clone(),
            expectation: result.totals[i].to_string(),
            closed_form: Some(total_form),
        });
        forms.row(form_row);
        values.row(value_row);
    }
    let mut out = vec![
        "Expectations after n rounds".to_string(),
        forms.render(),
        String::new(),
        format!("Expectations at n = {}{}", n, if count.is_infinite() { " (infinite)" } else { "" }),
        values.render(),
    ];
    if let Some(ranking) = &result.ranking {
        rep.ranking = report::ranking_entries(ranking, &names);
        out.extend([String::new(), "Ranking".into(), ranking_table(ranking, &names)]);
    }
    Ok(out.join("\n"))
}

fn run_stoch(cfg: &TournamentConfig, params: &StationarityParams, rep: &mut RunReport) -> Result<String, AppError> {
    let players = cfg.strategies()?;
    let names = cfg.names();
    let payoffs = cfg.payoffs()?;
    let n = cfg.rounds()?;
    let res = stoch::tournament(&players, &payoffs, &n, params)?;
    rep.n = Some(n.to_string());
    rep.stationarity = Some(StationarityReport::new(params, res.n_tilde));
    let mut t = Table::new(["player", "expectation", "approx"]);
    for (name, total) in names.iter().zip(&res.totals) {
        let shown = total.as_scalar().map(|v| approx(&v)).unwrap_or_default();
        t.row([name.clone(), total.to_string(), shown]);
        rep.totals.push(report::TotalEntry { player: name.clone(), expectation: total.to_string(), closed_form: None });
    }
    let how = match res.n_tilde {
        Some(nt) => format!("stationary lines, threshold {nt}"),
        None => "direct summation".to_string(),
    };
    let mut out = vec![format!("Expectations at n = {n} ({how})"), t.render()];
    if res.n_tilde.is_some() && players.len() == 2 {
        let line = stoch::delta_line(&players, 0, 1, params)?;
        rep.line = Some(report::LineReport::new(&line, &names));
        out.push(format!("gap {} - {}: alpha = {}, beta = {}", names[0], names[1], line.alpha, line.beta));
    }
    if let Some(ranking) = &res.ranking {
        rep.ranking = report::ranking_entries(ranking, &names);
        out.extend([String::new(), "Ranking".into(), ranking_table(ranking, &names)]);
    }
    Ok(out.join("\n"))
}

fn run_solve(cfg: &TournamentConfig, params: &StationarityParams, rep: &mut RunReport) -> Result<String, AppError> {
    let players = cfg.strategies()?;
    let names = cfg.names();
    let n = cfg.rounds()?;
    let spec = ModelSpec {
        tau: cfg.tau()?,
        n: n.clone(),
        target: cfg.target()?,
        rival: cfg.rival,
        shifts: cfg.shift_params()?,
        stationarity: *params,
    };
    rep.n = Some(n.to_string());
    let sol = solver::solve_model(&players, &spec);
    let n_tilde = match &sol {
        Ok(s) => s.line.as_ref().map(|l| l.n_tilde),
        Err(_) => None,
    };
    rep.stationarity = Some(StationarityReport::new(params, n_tilde));
    let sol = sol?;
    if let Some(line) = &sol.line {
        rep.line = Some(report::LineReport::new(line, &names));
    }
    let set = &sol.solution;
    let window = set.pivot_interval();
    let mut out = vec![
        format!("Model M({}, {n}): target {}, rival {}", spec.tau, names[spec.target], names[sol.rival.index]),
    ];
    if !sol.rival.tied_with.is_empty() {
        let tied: Vec<&str> = sol.rival.tied_with.iter().map(|i| names[*i].as_str()).collect();
        out.push(format!("rival tied with {}; lowest index kept", tied.join(", ")));
    }
    out.push(format!("gap = {}", sol.model.form()));
    out.push(format!("case {}, pivot {}", set.case, set.pivot));
    let mut t = Table::new(["payoff", "range"]);
    for sym in gross_core::PayoffSymbol::LAW_ORDER {
        t.row([sym.to_string(), set.range(sym).to_string()]);
    }
    out.push(t.render());
    let width_note = match set.magnitude() {
        Magnitude::Finite => format!(" ~ {}", approx(&set.width)),
        m => format!(" ({m}{})", leading_term(&set.width)),
    };
    out.push(format!("interval ({}, {}), width {}{}", window.lower, window.upper, set.width, width_note));
    if let Some(s) = &set.s_interval {
        out.push(format!("S range for the chosen shifts: {s}"));
    }
    for note in &set.notes {
        out.push(format!("note: {note}"));
    }
    let verdict = if sol.check.passed() { "passes" } else { "FAILS" };
    out.push(format!("midpoint {} {verdict} validation", report::payoff_list(&set.midpoint()).join(", ")));
    rep.solution = Some(report::SolutionReport::new(&sol, &names));
    Ok(out.join("\n"))
}
