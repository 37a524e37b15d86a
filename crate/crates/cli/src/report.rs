//! Machine-readable run reports. Every number is written in the gross
//! literal grammar so that it parses back to the same value.

use gross_core::det::AffineExpectation;
use gross_core::grossnum::rational;
use gross_core::linalg::{StationarityParams, Vec4};
use gross_core::solver::{ModelSolution, PayoffRange};
use gross_core::stoch::DeltaLine;
use gross_core::{GrossScalar, PayoffSymbol, Payoffs, RankGroup, Rational};
use serde::Serialize;

use crate::config::TournamentConfig;

#[derive(Debug, Default, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stationarity: Option<StationarityReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub totals: Vec<TotalEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ranking: Vec<RankEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<LineReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<SolutionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<TournamentConfig>,
    pub timings: Timings,
}

impl RunReport {
    pub fn new(mode: &str) -> Self {
        Self {
            tool: "grosspd".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            mode: mode.to_string(),
            ..Self::default()
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }
}

#[derive(Debug, Serialize)]
pub struct StationarityReport {
    pub epsilon: f64,
    pub n_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_tilde: Option<usize>,
}

impl StationarityReport {
    pub fn new(params: &StationarityParams, n_tilde: Option<usize>) -> Self {
        Self { epsilon: params.epsilon, n_max: params.n_max, n_tilde }
    }
}

#[derive(Debug, Serialize)]
pub struct PairEntry {
    pub player: String,
    pub opponent: String,
    pub expectation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct TotalEntry {
    pub player: String,
    pub expectation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct RankEntry {
    pub position: usize,
    pub players: Vec<String>,
    pub value: String,
    pub ex_aequo: bool,
}

pub fn ranking_entries(ranking: &[RankGroup], names: &[String]) -> Vec<RankEntry> {
    ranking
        .iter()
        .map(|g| RankEntry {
            position: g.position,
            players: g.players.iter().map(|i| names[*i].clone()).collect(),
            value: g.value.to_string(),
            ex_aequo: g.is_tie(),
        })
        .collect()
}

/// `E(n)` in symbolic `n`, one form per residue class when the match cycles.
pub fn closed_form_text(e: &AffineExpectation) -> String {
    if e.cycle_len() == 1 {
        return e.describe(0);
    }
    (0..e.cycle_len())
        .map(|r| format!("[(n - {}) mod {} = {r}] {}", e.transient_len(), e.cycle_len(), e.describe(r)))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn vector_text(v: &Vec4<Rational>) -> Vec<String> {
    v.0.iter().map(rational::format_rational).collect()
}

#[derive(Debug, Serialize)]
pub struct LineReport {
    pub player: String,
    pub opponent: String,
    pub n_tilde: usize,
    pub f: Vec<String>,
    pub g: Vec<String>,
    pub alpha: String,
    pub beta: String,
}

impl LineReport {
    pub fn new(line: &DeltaLine, names: &[String]) -> Self {
        Self {
            player: names[line.k].clone(),
            opponent: names[line.j].clone(),
            n_tilde: line.n_tilde,
            f: vector_text(&line.f),
            g: vector_text(&line.g),
            alpha: line.alpha.to_string(),
            beta: line.beta.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GammaReport {
    pub lambda: Vec<String>,
    pub mu: Vec<String>,
    pub gamma1: String,
    pub gamma2: String,
    pub gamma3: String,
    pub gamma4: String,
    pub gamma5: String,
    pub gamma6: String,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub delta: String,
    pub fundamental_law: bool,
    pub positive: bool,
    pub below_tau: bool,
}

#[derive(Debug, Serialize)]
pub struct SolutionReport {
    pub target: String,
    pub rival: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rival_ties: Vec<String>,
    pub delta_source: String,
    pub delta: String,
    pub case: String,
    pub pivot: String,
    pub lower: String,
    pub upper: String,
    pub width: String,
    pub magnitude: String,
    pub ranges: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_interval: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub midpoint: Vec<String>,
    pub gammas: GammaReport,
    pub check: CheckReport,
}

/// `T = …, R = …` in law order.
pub fn payoff_list(p: &Payoffs) -> Vec<String> {
    PayoffSymbol::LAW_ORDER
        .iter()
        .map(|s| match p.get(*s) {
            Some(v) => format!("{s} = {v}"),
            None => format!("{s} free"),
        })
        .collect()
}

pub fn range_text(symbol: PayoffSymbol, range: &PayoffRange) -> String {
    format!("{symbol} {range}")
}

impl SolutionReport {
    pub fn new(sol: &ModelSolution, names: &[String]) -> Self {
        let set = &sol.solution;
        let window = set.pivot_interval();
        let g = &sol.gammas;
        let lit = |x: &GrossScalar| x.to_string();
        let rat = |x: &Rational| rational::format_rational(x);
        Self {
            target: names[sol.model.k].clone(),
            rival: names[sol.rival.index].clone(),
            rival_ties: sol.rival.tied_with.iter().map(|i| names[*i].clone()).collect(),
            delta_source: format!("{:?}", sol.model.source).to_lowercase(),
            delta: sol.model.form().to_string(),
            case: set.case.to_string(),
            pivot: set.pivot.to_string(),
            lower: lit(&window.lower),
            upper: lit(&window.upper),
            width: lit(&set.width),
            magnitude: set.magnitude().to_string(),
            ranges: PayoffSymbol::LAW_ORDER.iter().map(|s| range_text(*s, set.range(*s))).collect(),
            s_interval: set.s_interval.as_ref().map(|i| vec![lit(&i.lower), lit(&i.upper)]),
            notes: set.notes.clone(),
            midpoint: payoff_list(&set.midpoint()),
            gammas: GammaReport {
                lambda: vector_text(&g.lambda),
                mu: vector_text(&g.mu),
                gamma1: rat(&g.gamma1),
                gamma2: rat(&g.gamma2),
                gamma3: lit(&g.gamma3),
                gamma4: lit(&g.gamma4),
                gamma5: lit(&g.gamma5),
                gamma6: lit(&g.gamma6),
            },
            check: CheckReport {
                delta: sol.check.delta.as_ref().map(lit).unwrap_or_default(),
                fundamental_law: sol.check.fundamental_law,
                positive: sol.check.positive,
                below_tau: sol.check.below_tau,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Default, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}
