//! Payoff design for the master's model `M(τ, n)`: find payoffs for which the
//! favored player beats the best rival by a positive amount below `τ`.
//!
//! The gap is written as `Δ = Σ_i (λ_i + n·μ_i)·Q_i`. With the shifts
//! `T = S + δ_T`, `R = S + δ_R`, `P = S + δ_P` it becomes
//! `(γ1·n + γ2)·S + γ3·n + γ4`, which is linear in one free payoff at a time.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::det::{DetError, RoundCount};
use crate::grossnum::{rational, GrossError, GrossScalar, Magnitude, Rational};
use crate::interval::OpenInterval;
use crate::linalg::{StationarityParams, Vec4};
use crate::payoff::{LinearForm, PayoffSymbol, Payoffs};
use crate::stoch::{self, DeltaLine, Precision, StochError, TournamentLines};
use crate::strategy::Strategy;

/// Components closer to zero than this count as zero when choosing a pivot.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("β = 0: the gap does not grow with n")]
    DegenerateBeta,
    #[error("no admissible payoffs: {0}")]
    EmptySolution(String),
    #[error("μ_R, μ_T and μ_P all vanish; no payoff can act as pivot")]
    NoPivot,
    #[error("τ must be positive")]
    NonPositiveTau,
    #[error("target and rival must be two distinct players among {0}")]
    BadPlayers(usize),
    #[error(transparent)]
    Stoch(#[from] StochError),
    #[error(transparent)]
    Round(#[from] DetError),
    #[error(transparent)]
    Arithmetic(#[from] GrossError),
}

/// `S` and the positive offsets of `T`, `R`, `P` above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftParams {
    pub s: GrossScalar,
    pub delta_t: GrossScalar,
    pub delta_r: GrossScalar,
    pub delta_p: GrossScalar,
}

impl Default for ShiftParams {
    fn default() -> Self {
        Self {
            s: GrossScalar::zero(),
            delta_t: GrossScalar::from_integer(5),
            delta_r: GrossScalar::from_integer(3),
            delta_p: GrossScalar::from_integer(1),
        }
    }
}

impl ShiftParams {
    /// Offset of `symbol` above `S` (zero for `S` itself).
    pub fn delta(&self, symbol: PayoffSymbol) -> GrossScalar {
        match symbol {
            PayoffSymbol::S => GrossScalar::zero(),
            PayoffSymbol::T => self.delta_t.clone(),
            PayoffSymbol::R => self.delta_r.clone(),
            PayoffSymbol::P => self.delta_p.clone(),
        }
    }

    pub fn payoffs(&self) -> Payoffs {
        let mut p = Payoffs::symbolic();
        for sym in PayoffSymbol::Q_ORDER {
            p.set(sym, Some(&self.s + &self.delta(sym)));
        }
        p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaSource {
    /// Direct summation over the `n` rounds.
    Exact,
    /// The stationary line `α + n·β`.
    Stationary,
}

/// `Δ(k, j, n) = Σ_i (λ_i + n·μ_i)·Q_i` at a fixed `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaModel {
    pub k: usize,
    pub j: usize,
    pub n: GrossScalar,
    pub lambda: Vec4<Rational>,
    pub mu: Vec4<Rational>,
    pub n_tilde: Option<usize>,
    pub source: DeltaSource,
}

impl DeltaModel {
    /// Uses the stationary line; `n` must exceed `ñ`.
    pub fn from_line(line: &DeltaLine, n: &GrossScalar) -> Result<Self, SolverError> {
        if *n <= GrossScalar::from_integer(line.n_tilde as i64) {
            return Err(StochError::BelowStationarity { n: n.to_string(), n_tilde: line.n_tilde }.into());
        }
        Ok(Self {
            k: line.k,
            j: line.j,
            n: n.clone(),
            lambda: line.lambda(),
            mu: line.mu().clone(),
            n_tilde: Some(line.n_tilde),
            source: DeltaSource::Stationary,
        })
    }

    /// Uses the summed gap `V(n)`. When the stationary increment `G` is known
    /// the split is `μ = G`, `λ = V − n·G`; otherwise `μ = V/n`, `λ = 0`.
    pub fn from_exact(players: &[Strategy], k: usize, j: usize, n: u64, line: Option<&DeltaLine>) -> Result<Self, SolverError> {
        let v = stoch::delta_exact(players, k, j, n, Precision::Float)?;
        let big_n = rational::int(n as i64);
        let (lambda, mu) = match line {
            Some(l) => (v.sub(&l.g.scale(&big_n)), l.g.clone()),
            None => (Vec4::zero(), v.scale(&(rational::int(1) / big_n))),
        };
        Ok(Self {
            k,
            j,
            n: GrossScalar::from_integer(n as i64),
            lambda,
            mu,
            n_tilde: line.map(|l| l.n_tilde),
            source: DeltaSource::Exact,
        })
    }

    /// `λ_i + n·μ_i` for one payoff symbol.
    pub fn coefficient(&self, symbol: PayoffSymbol) -> GrossScalar {
        let i = symbol.index();
        &GrossScalar::from_rational(self.lambda.0[i].clone()) + &(&self.n * &GrossScalar::from_rational(self.mu.0[i].clone()))
    }

    pub fn form(&self) -> LinearForm {
        LinearForm::from_vector(&Vec4(PayoffSymbol::Q_ORDER.map(|s| self.coefficient(s))))
    }

    pub fn delta(&self, payoffs: &Payoffs) -> Option<GrossScalar> {
        self.form().evaluate(payoffs)
    }

    /// A payoff that never enters the gap.
    pub fn is_free(&self, symbol: PayoffSymbol) -> bool {
        let i = symbol.index();
        self.lambda.0[i].is_zero() && self.mu.0[i].is_zero()
    }
}

fn negligible(x: &Rational) -> bool {
    rational::to_f64(&x.abs()) <= PIVOT_TOLERANCE
}

/// The aggregated coefficients of `Δ = (γ1·n + γ2)·S + γ3·n + γ4`, together
/// with `γ5`, `γ6` (the parts of `γ3`, `γ4` without `δ_T`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaCoeffs {
    pub lambda: Vec4<Rational>,
    pub mu: Vec4<Rational>,
    pub shifts: ShiftParams,
    pub gamma1: Rational,
    pub gamma2: Rational,
    pub gamma3: GrossScalar,
    pub gamma4: GrossScalar,
    pub gamma5: GrossScalar,
    pub gamma6: GrossScalar,
}

impl GammaCoeffs {
    pub fn lambda_of(&self, symbol: PayoffSymbol) -> GrossScalar {
        GrossScalar::from_rational(self.lambda.0[symbol.index()].clone())
    }

    pub fn mu_of(&self, symbol: PayoffSymbol) -> GrossScalar {
        GrossScalar::from_rational(self.mu.0[symbol.index()].clone())
    }

    /// `μ_X·n + λ_X`.
    pub fn k_of(&self, symbol: PayoffSymbol, n: &GrossScalar) -> GrossScalar {
        &(&self.mu_of(symbol) * n) + &self.lambda_of(symbol)
    }
}

pub fn gammas(model: &DeltaModel, shifts: &ShiftParams) -> Result<GammaCoeffs, SolverError> {
    if model.mu.0.iter().all(negligible) {
        return Err(SolverError::DegenerateBeta);
    }
    Ok(gammas_from_parts(model.lambda.clone(), model.mu.clone(), shifts))
}

pub fn gammas_from_parts(lambda: Vec4<Rational>, mu: Vec4<Rational>, shifts: &ShiftParams) -> GammaCoeffs {
    use PayoffSymbol::{P, R, T};
    let weighted = |v: &Vec4<Rational>, syms: &[PayoffSymbol]| -> GrossScalar {
        syms.iter()
            .map(|s| &GrossScalar::from_rational(v.0[s.index()].clone()) * &shifts.delta(*s))
            .sum()
    };
    GammaCoeffs {
        gamma1: mu.sum(),
        gamma2: lambda.sum(),
        gamma3: weighted(&mu, &[R, T, P]),
        gamma4: weighted(&lambda, &[R, T, P]),
        gamma5: weighted(&mu, &[R, P]),
        gamma6: weighted(&lambda, &[R, P]),
        lambda,
        mu,
        shifts: shifts.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionCase {
    Gamma1NonZero,
    Gamma1Zero,
}

impl fmt::Display for SolutionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolutionCase::Gamma1NonZero => "gamma1 != 0",
            SolutionCase::Gamma1Zero => "gamma1 = 0",
        })
    }
}

/// What the solution says about one payoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PayoffRange {
    /// Any value strictly inside.
    Interval(OpenInterval),
    Fixed(GrossScalar),
    /// `S + offset`, moving with `S`.
    ShiftOfS(GrossScalar),
    /// Does not enter the gap; chosen at will.
    Free,
}

impl fmt::Display for PayoffRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PayoffRange::Interval(i) => write!(f, "in {i}"),
            PayoffRange::Fixed(v) => write!(f, "= {v}"),
            PayoffRange::ShiftOfS(d) => write!(f, "= S + {d}"),
            PayoffRange::Free => f.write_str("chosen at will"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub case: SolutionCase,
    /// The payoff solved for.
    pub pivot: PayoffSymbol,
    /// Indexed in `Q` order.
    pub ranges: [PayoffRange; 4],
    pub width: GrossScalar,
    /// Bounds on `S` alone; informational in the `γ1 = 0` case.
    pub s_interval: Option<OpenInterval>,
    /// Fundamental-law constraints the intervals do not enforce.
    pub notes: Vec<String>,
}

impl SolutionSet {
    pub fn range(&self, symbol: PayoffSymbol) -> &PayoffRange {
        &self.ranges[symbol.index()]
    }

    pub fn pivot_interval(&self) -> &OpenInterval {
        match self.range(self.pivot) {
            PayoffRange::Interval(i) => i,
            _ => unreachable!("the pivot always carries an interval"),
        }
    }

    pub fn magnitude(&self) -> Magnitude {
        self.width.classify()
    }

    /// A concrete payoff tuple with the pivot at `lower + t·width`. Free
    /// payoffs are spread evenly between their determined neighbours in the
    /// order T > R > P > S.
    pub fn sample(&self, t: &GrossScalar) -> Payoffs {
        let pivot = self.pivot_interval().at(t);
        let s = match self.range(PayoffSymbol::S) {
            PayoffRange::Fixed(v) => v.clone(),
            _ => pivot.clone(),
        };
        let mut values: Vec<Option<GrossScalar>> = PayoffSymbol::LAW_ORDER
            .iter()
            .map(|sym| match self.range(*sym) {
                PayoffRange::Interval(_) => Some(pivot.clone()),
                PayoffRange::Fixed(v) => Some(v.clone()),
                PayoffRange::ShiftOfS(d) => Some(&s + d),
                PayoffRange::Free => None,
            })
            .collect();
        fill_free(&mut values);
        let mut out = Payoffs::symbolic();
        for (sym, v) in PayoffSymbol::LAW_ORDER.iter().zip(values) {
            out.set(*sym, v);
        }
        out
    }

    pub fn midpoint(&self) -> Payoffs {
        self.sample(&GrossScalar::from_rational(rational::ratio(1, 2)))
    }
}

/// Fills gaps in a descending sequence. A gap below a known value and above
/// another is interpolated evenly; a gap at the top climbs in unit steps.
fn fill_free(values: &mut [Option<GrossScalar>]) {
    let mut i = values.len();
    while i > 0 {
        i -= 1;
        if values[i].is_some() {
            continue;
        }
        let mut start = i;
        while start > 0 && values[start - 1].is_none() {
            start -= 1;
        }
        let below = values.get(i + 1).cloned().flatten().unwrap_or_else(GrossScalar::zero);
        let count = (i - start + 1) as i64;
        match start.checked_sub(1).and_then(|a| values[a].clone()) {
            Some(above) => {
                let step = (&above - &below).checked_div(&GrossScalar::from_integer(count + 1)).expect("nonzero");
                for (k, slot) in values[start..=i].iter_mut().rev().enumerate() {
                    *slot = Some(&below + &(&step * &GrossScalar::from_integer(k as i64 + 1)));
                }
            }
            None => {
                for (k, slot) in values[start..=i].iter_mut().rev().enumerate() {
                    *slot = Some(&below + &GrossScalar::from_integer(k as i64 + 1));
                }
            }
        }
        i = start;
    }
}

fn check_tau(tau: &GrossScalar) -> Result<(), SolverError> {
    if tau.is_positive() {
        Ok(())
    } else {
        Err(SolverError::NonPositiveTau)
    }
}

/// Open set of `x` with `0 < a·x + b < τ`, for `a ≠ 0`.
fn linear_window(a: &GrossScalar, b: &GrossScalar, tau: &GrossScalar) -> Result<OpenInterval, SolverError> {
    let lo = (-b).checked_div(a)?;
    let hi = (tau - b).checked_div(a)?;
    Ok(OpenInterval::between(lo, hi))
}

fn shift_ranges(model_free: impl Fn(PayoffSymbol) -> bool, shifts: &ShiftParams) -> [PayoffRange; 4] {
    PayoffSymbol::Q_ORDER.map(|sym| {
        if model_free(sym) {
            PayoffRange::Free
        } else {
            PayoffRange::ShiftOfS(shifts.delta(sym))
        }
    })
}

fn is_free(g: &GammaCoeffs, sym: PayoffSymbol) -> bool {
    let i = sym.index();
    g.lambda.0[i].is_zero() && g.mu.0[i].is_zero()
}

/// `γ1 ≠ 0`: `S` is the pivot and `T`, `R`, `P` follow through the shifts.
pub fn solve_gamma1_nonzero(g: &GammaCoeffs, tau: &GrossScalar, n: &GrossScalar) -> Result<SolutionSet, SolverError> {
    check_tau(tau)?;
    let sigma = &(&GrossScalar::from_rational(g.gamma1.clone()) * n) + &GrossScalar::from_rational(g.gamma2.clone());
    if sigma.is_zero() {
        return Err(SolverError::EmptySolution(format!("γ1·n + γ2 vanishes at n = {n}")));
    }
    let rest = &(&g.gamma3 * n) + &g.gamma4;
    let interval = linear_window(&sigma, &rest, tau)?;
    let mut ranges = shift_ranges(|s| is_free(g, s), &g.shifts);
    ranges[PayoffSymbol::S.index()] = PayoffRange::Interval(interval.clone());
    let mut notes = Vec::new();
    shift_order_notes(&g.shifts, &ranges, &mut notes);
    Ok(SolutionSet {
        case: SolutionCase::Gamma1NonZero,
        pivot: PayoffSymbol::S,
        width: interval.width(),
        s_interval: Some(interval.clone()),
        ranges,
        notes,
    })
}

fn shift_order_notes(shifts: &ShiftParams, ranges: &[PayoffRange; 4], notes: &mut Vec<String>) {
    let shifted: Vec<PayoffSymbol> = PayoffSymbol::LAW_ORDER
        .into_iter()
        .filter(|s| matches!(ranges[s.index()], PayoffRange::ShiftOfS(_)))
        .collect();
    for pair in shifted.windows(2) {
        if shifts.delta(pair[0]) <= shifts.delta(pair[1]) {
            notes.push(format!("δ_{} must exceed δ_{} for {} > {}", pair[0], pair[1], pair[0], pair[1]));
        }
    }
    for sym in shifted {
        if !shifts.delta(sym).is_positive() {
            notes.push(format!("δ_{sym} must be positive for {sym} > S"));
        }
    }
}

/// The pivot payoff for the `γ1 = 0` case: T, then R, then P.
pub fn pivot_symbol(g: &GammaCoeffs) -> Option<PayoffSymbol> {
    [PayoffSymbol::T, PayoffSymbol::R, PayoffSymbol::P]
        .into_iter()
        .find(|s| !negligible(&g.mu.0[s.index()]))
}

/// `γ1 = 0`: `S` is fixed to `shifts.s` and the pivot offset is solved for.
pub fn solve_gamma1_zero(g: &GammaCoeffs, tau: &GrossScalar, n: &GrossScalar) -> Result<SolutionSet, SolverError> {
    check_tau(tau)?;
    let pivot = pivot_symbol(g).ok_or(SolverError::NoPivot)?;
    let s = g.shifts.s.clone();
    let k = g.k_of(pivot, n);
    if k.is_zero() {
        return Err(SolverError::EmptySolution(format!("μ_{pivot}·n + λ_{pivot} vanishes at n = {n}")));
    }
    let mut rest = &GrossScalar::from_rational(g.gamma2.clone()) * &s;
    for sym in [PayoffSymbol::R, PayoffSymbol::T, PayoffSymbol::P] {
        if sym != pivot {
            rest += &(&g.shifts.delta(sym) * &g.k_of(sym, n));
        }
    }
    let window = linear_window(&k, &rest, tau)?;
    let width = window.width();
    if !window.upper.is_positive() {
        return Err(SolverError::EmptySolution(format!("every admissible δ_{pivot} lies at or below 0: {window}")));
    }
    let lower = window.lower.clone().max(GrossScalar::zero());
    let delta_window = OpenInterval::new(lower, window.upper.clone());
    let mut notes = Vec::new();
    if delta_window.width() != width {
        notes.push(format!("δ_{pivot} > 0 cuts the window {window} to {delta_window}"));
    }
    let mut ranges: [PayoffRange; 4] = PayoffSymbol::Q_ORDER.map(|sym| {
        if is_free(g, sym) && sym != PayoffSymbol::S {
            PayoffRange::Free
        } else {
            PayoffRange::Fixed(&s + &g.shifts.delta(sym))
        }
    });
    ranges[pivot.index()] = PayoffRange::Interval(delta_window.shifted(&s));
    law_notes(pivot, &ranges, &mut notes);
    let s_interval = if g.gamma2.is_zero() {
        None
    } else {
        let sigma = GrossScalar::from_rational(g.gamma2.clone());
        let interval = linear_window(&sigma, &(&(&g.gamma3 * n) + &g.gamma4), tau)?;
        if !interval.contains(&s) {
            notes.push(format!("S = {s} lies outside {interval}, the S-range for the chosen shifts"));
        }
        Some(interval)
    };
    Ok(SolutionSet { case: SolutionCase::Gamma1Zero, pivot, ranges, width, s_interval, notes })
}

/// Reports where the pivot interval crosses a fixed neighbour in T > R > P > S.
fn law_notes(pivot: PayoffSymbol, ranges: &[PayoffRange; 4], notes: &mut Vec<String>) {
    let PayoffRange::Interval(window) = &ranges[pivot.index()] else { return };
    let order = PayoffSymbol::LAW_ORDER;
    let at = order.iter().position(|s| *s == pivot).expect("pivot in law order");
    let fixed = |sym: PayoffSymbol| match &ranges[sym.index()] {
        PayoffRange::Fixed(v) => Some(v.clone()),
        _ => None,
    };
    if let Some(v) = order[at + 1..].iter().find_map(|s| fixed(*s)) {
        if window.lower < v {
            notes.push(format!("{pivot} must also exceed {v} for the fundamental law"));
        }
    }
    if let Some(v) = order[..at].iter().rev().find_map(|s| fixed(*s)) {
        if window.upper > v {
            notes.push(format!("{pivot} must also stay below {v} for the fundamental law"));
        }
    }
}

pub fn solve(g: &GammaCoeffs, tau: &GrossScalar, n: &GrossScalar) -> Result<SolutionSet, SolverError> {
    if g.gamma1.is_zero() {
        solve_gamma1_zero(g, tau, n)
    } else {
        solve_gamma1_nonzero(g, tau, n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub delta: Option<GrossScalar>,
    pub fundamental_law: bool,
    pub positive: bool,
    pub below_tau: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.fundamental_law && self.positive && self.below_tau
    }
}

/// Checks T > R > P > S and `0 < Δ < τ` for a concrete payoff tuple.
pub fn validate_solution(sample: &Payoffs, model: &DeltaModel, tau: &GrossScalar) -> ValidationReport {
    let delta = model.delta(sample);
    let fundamental_law = sample.is_concrete() && sample.check_fundamental_law().is_ok();
    let positive = delta.as_ref().is_some_and(GrossScalar::is_positive);
    let below_tau = delta.as_ref().is_some_and(|d| d < tau);
    ValidationReport { delta, fundamental_law, positive, below_tau }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub tau: GrossScalar,
    pub n: GrossScalar,
    pub target: usize,
    /// Fixed rival; chosen by [`select_rival`] when absent.
    pub rival: Option<usize>,
    pub shifts: ShiftParams,
    pub stationarity: StationarityParams,
}

impl ModelSpec {
    pub fn new(tau: GrossScalar, n: GrossScalar, target: usize) -> Self {
        Self { tau, n, target, rival: None, shifts: ShiftParams::default(), stationarity: StationarityParams::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RivalChoice {
    pub index: usize,
    /// Other players sharing the best expectation.
    pub tied_with: Vec<usize>,
    pub reference: Payoffs,
}

/// The strongest opponent of the target, i.e. the one minimizing
/// `Δ(target, j, n)`, judged at the payoffs given by the shift parameters.
/// Ties go to the lowest index.
pub fn select_rival(models: &[DeltaModel], shifts: &ShiftParams) -> RivalChoice {
    let reference = shifts.payoffs();
    let gaps: Vec<(usize, GrossScalar)> =
        models.iter().map(|m| (m.j, m.delta(&reference).expect("concrete reference payoffs"))).collect();
    let best = gaps.iter().map(|(_, d)| d).min().expect("at least one rival").clone();
    let mut tied: Vec<usize> = gaps.iter().filter(|(_, d)| *d == best).map(|(j, _)| *j).collect();
    tied.sort_unstable();
    let index = tied.remove(0);
    RivalChoice { index, tied_with: tied, reference }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSolution {
    pub rival: RivalChoice,
    pub model: DeltaModel,
    pub line: Option<DeltaLine>,
    pub gammas: GammaCoeffs,
    pub solution: SolutionSet,
    pub check: ValidationReport,
}

/// Builds `Δ(target, j, n)` for every candidate rival.
pub fn delta_models(players: &[Strategy], spec: &ModelSpec) -> Result<(Vec<DeltaModel>, Vec<Option<DeltaLine>>), SolverError> {
    let m = players.len();
    if spec.target >= m || m < 2 || spec.rival.is_some_and(|r| r >= m || r == spec.target) {
        return Err(SolverError::BadPlayers(m));
    }
    let count = RoundCount::new(&spec.n)?;
    let lines: Option<TournamentLines> = match stoch::tournament_lines(players, &spec.stationarity) {
        Ok(l) => Some(l),
        Err(e) if count.is_infinite() => return Err(e.into()),
        Err(_) => None,
    };
    let rivals: Vec<usize> = match spec.rival {
        Some(r) => vec![r],
        None => (0..m).filter(|j| *j != spec.target).collect(),
    };
    let mut models = Vec::new();
    let mut out_lines = Vec::new();
    for j in rivals {
        let line = lines.as_ref().map(|l| l.delta_line(spec.target, j));
        let model = match count.as_finite() {
            Some(n) => DeltaModel::from_exact(players, spec.target, j, n, line.as_ref())?,
            None => DeltaModel::from_line(line.as_ref().expect("infinite n has lines"), &spec.n)?,
        };
        models.push(model);
        out_lines.push(line);
    }
    Ok((models, out_lines))
}

pub fn solve_model(players: &[Strategy], spec: &ModelSpec) -> Result<ModelSolution, SolverError> {
    check_tau(&spec.tau)?;
    let (models, lines) = delta_models(players, spec)?;
    let rival = select_rival(&models, &spec.shifts);
    let at = models.iter().position(|m| m.j == rival.index).expect("rival has a model");
    let model = models[at].clone();
    let line = lines[at].clone();
    let gammas = gammas(&model, &spec.shifts)?;
    let solution = solve(&gammas, &spec.tau, &spec.n)?;
    let check = validate_solution(&solution.midpoint(), &model, &spec.tau);
    Ok(ModelSolution { rival, model, line, gammas, solution, check })
}
