//! Deterministic tournaments.
//!
//! Two deterministic memory-one players revisit a joint state after at most
//! four rounds, so every match is a short transient followed by a cycle. The
//! expectation after `n` rounds is then affine in `n` on each residue class
//! of `(n − transient) mod cycle`. For infinite counts the residue is taken
//! from the finite part alone, because ① is divisible by every finite cycle
//! length.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::grossnum::{rational, GrossScalar, Magnitude, Rational};
use crate::interval::{rank, OpenInterval, RankGroup};
use crate::payoff::{render_terms, LinearForm, PayoffError, PayoffSymbol, Payoffs};
use crate::strategy::{State, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetError {
    #[error("strategy {0} is not deterministic")]
    NonDeterministicStrategy(String),
    #[error("round count {0} is not a positive natural number")]
    InvalidRoundCount(String),
    #[error("a tournament needs at least two players")]
    TooFewPlayers,
    #[error("empty interval: {0}")]
    EmptyInterval(String),
    #[error(transparent)]
    Payoff(#[from] PayoffError),
}

/// Joint states of a match: a transient prefix followed by a repeating cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTrace {
    pub transient: Vec<State>,
    pub cycle: Vec<State>,
}

impl PairTrace {
    /// State of round `t` (0-based).
    pub fn state_at(&self, t: usize) -> State {
        if t < self.transient.len() {
            self.transient[t]
        } else {
            self.cycle[(t - self.transient.len()) % self.cycle.len()]
        }
    }

    pub fn mirrored(&self) -> Self {
        Self {
            transient: self.transient.iter().map(|s| s.mirror()).collect(),
            cycle: self.cycle.iter().map(|s| s.mirror()).collect(),
        }
    }
}

fn cooperates(p: &Rational) -> bool {
    p.is_one()
}

fn require_deterministic(s: &Strategy) -> Result<(), DetError> {
    if s.is_deterministic() {
        Ok(())
    } else {
        Err(DetError::NonDeterministicStrategy(s.to_string()))
    }
}

/// Plays until a joint state repeats and splits the history at the repeat.
pub fn play_pair(si: &Strategy, sj: &Strategy) -> Result<PairTrace, DetError> {
    require_deterministic(si)?;
    require_deterministic(sj)?;
    let mut state = State::from_moves(cooperates(si.first_move()), cooperates(sj.first_move()));
    let mut seen: Vec<State> = Vec::with_capacity(4);
    loop {
        if let Some(pos) = seen.iter().position(|&s| s == state) {
            let cycle = seen.split_off(pos);
            return Ok(PairTrace { transient: seen, cycle });
        }
        seen.push(state);
        state = State::from_moves(cooperates(si.after(state)), cooperates(sj.after(state.mirror())));
    }
}

/// A validated round count: a positive natural, possibly ①-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundCount {
    value: GrossScalar,
    finite_part: BigInt,
}

impl RoundCount {
    pub fn finite(n: u64) -> Self {
        Self { value: GrossScalar::from_integer(n as i64), finite_part: BigInt::from(n) }
    }

    /// Accepts `c_k·①^k + … + c_1·① + c_0` with positive integer powers,
    /// integer `c_0`, and a value of at least 1.
    pub fn new(n: &GrossScalar) -> Result<Self, DetError> {
        let invalid = || DetError::InvalidRoundCount(n.to_string());
        if !n.is_polynomial() || *n < GrossScalar::one() {
            return Err(invalid());
        }
        for t in n.numerator().terms() {
            if t.power.is_negative() || !t.power.is_integer() {
                return Err(invalid());
            }
        }
        let c0 = n.finite_part().map_err(|_| invalid())?;
        if !c0.is_integer() {
            return Err(invalid());
        }
        Ok(Self { value: n.clone(), finite_part: c0.to_integer() })
    }

    pub fn value(&self) -> &GrossScalar {
        &self.value
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.value.classify() {
            Magnitude::Finite => self.finite_part.to_u64(),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.value.classify() == Magnitude::Infinite
    }

    /// `(n − offset) mod modulus`, using ① ≡ 0 for the infinite terms.
    pub fn residue(&self, offset: usize, modulus: usize) -> usize {
        let m = BigInt::from(modulus);
        (&self.finite_part - BigInt::from(offset)).mod_floor(&m).to_usize().expect("small residue")
    }
}

/// Closed-form expectation of one player as a function of the round count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineExpectation {
    /// `E(n)` for `n = 0..=transient_len`.
    early: Vec<LinearForm>,
    /// Intercept for each residue `(n − transient_len) mod cycle_len`.
    intercepts: Vec<LinearForm>,
    slope: LinearForm,
}

impl AffineExpectation {
    fn from_trace(trace: &PairTrace) -> Self {
        let payoff = |s: &State| LinearForm::symbol(PayoffSymbol::for_state(*s));
        let mut early = vec![LinearForm::zero()];
        for s in &trace.transient {
            let next = early.last().expect("nonempty") + &payoff(s);
            early.push(next);
        }
        let transient_sum = early.last().expect("nonempty").clone();
        let cycle_len = trace.cycle.len();
        let cycle_sum = trace.cycle.iter().fold(LinearForm::zero(), |acc, s| &acc + &payoff(s));
        let slope = cycle_sum.scale(&GrossScalar::from_rational(rational::ratio(1, cycle_len as i64)));
        let tlen = trace.transient.len();
        let mut prefix = LinearForm::zero();
        let mut intercepts = Vec::with_capacity(cycle_len);
        for r in 0..cycle_len {
            let shift = slope.scale(&GrossScalar::from_integer((tlen + r) as i64));
            intercepts.push(&(&transient_sum - &shift) + &prefix);
            prefix = &prefix + &payoff(&trace.cycle[r]);
        }
        Self { early, intercepts, slope }
    }

    pub fn transient_len(&self) -> usize {
        self.early.len() - 1
    }

    pub fn cycle_len(&self) -> usize {
        self.intercepts.len()
    }

    pub fn slope(&self) -> &LinearForm {
        &self.slope
    }

    /// The intercept `a` in `E(n) = a + b·n` for counts in residue class `r`.
    pub fn intercept(&self, r: usize) -> &LinearForm {
        &self.intercepts[r]
    }

    pub fn eval_finite(&self, n: u64) -> LinearForm {
        let tlen = self.transient_len();
        if (n as usize) <= tlen {
            return self.early[n as usize].clone();
        }
        let r = ((n as usize) - tlen) % self.cycle_len();
        &self.intercepts[r] + &self.slope.scale(&GrossScalar::from_integer(n as i64))
    }

    pub fn eval(&self, n: &RoundCount) -> LinearForm {
        if let Some(k) = n.as_finite() {
            return self.eval_finite(k);
        }
        let r = n.residue(self.transient_len(), self.cycle_len());
        &self.intercepts[r] + &self.slope.scale(n.value())
    }

    /// Pointwise sum; the result cycles with the lcm of both cycle lengths.
    pub fn combine(&self, other: &Self) -> Self {
        let tlen = self.transient_len().max(other.transient_len());
        let cycle = self.cycle_len().lcm(&other.cycle_len());
        let slope = &self.slope + &other.slope;
        let both = |n: u64| &self.eval_finite(n) + &other.eval_finite(n);
        let early = (0..=tlen as u64).map(both).collect();
        let intercepts = (0..cycle)
            .map(|r| {
                let n = (tlen + r) as u64;
                &both(n) - &slope.scale(&GrossScalar::from_integer(n as i64))
            })
            .collect();
        Self { early, intercepts, slope }
    }

    /// Renders `a + b·n` with symbolic `n`, e.g. `T + (n - 1)P`, for the
    /// residue class `r`.
    pub fn describe(&self, r: usize) -> String {
        let a = &self.intercepts[r];
        let b = &self.slope;
        let mut parts: Vec<(String, GrossScalar)> = Vec::new();
        let mut out = String::new();
        for sym in PayoffSymbol::LAW_ORDER {
            let coef = render_terms(&[
                ("n".to_string(), b.coefficient(sym).clone()),
                (String::new(), a.coefficient(sym).clone()),
            ]);
            if coef == "0" {
                continue;
            }
            let term = if coef == "1" {
                sym.name().to_string()
            } else if coef == "-1" {
                format!("-{}", sym.name())
            } else if coef.contains(' ') || coef.starts_with('-') {
                format!("({coef}){}", sym.name())
            } else {
                format!("{coef}{}", sym.name())
            };
            if !out.is_empty() {
                out.push_str(if term.starts_with('-') { " - " } else { " + " });
                out.push_str(term.trim_start_matches('-'));
            } else {
                out.push_str(&term);
            }
        }
        parts.push(("n".to_string(), b.constant.clone()));
        parts.push((String::new(), a.constant.clone()));
        let constant = render_terms(&parts);
        if constant != "0" {
            if out.is_empty() {
                out = constant;
            } else {
                out.push_str(" + ");
                out.push_str(&constant);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

/// Closed forms for both players of a match: `(player i, player j)`.
pub fn pair_closed_form(si: &Strategy, sj: &Strategy) -> Result<(AffineExpectation, AffineExpectation), DetError> {
    let trace = play_pair(si, sj)?;
    Ok((AffineExpectation::from_trace(&trace), AffineExpectation::from_trace(&trace.mirrored())))
}

/// Expectation of `si` after `n` rounds against `sj`, as a form in the payoffs.
pub fn pair_expectation(si: &Strategy, sj: &Strategy, n: &GrossScalar) -> Result<LinearForm, DetError> {
    let n = RoundCount::new(n)?;
    let (mine, _) = pair_closed_form(si, sj)?;
    Ok(mine.eval(&n))
}

/// Per-pair and per-player closed forms of a full round robin.
#[derive(Clone, Debug)]
pub struct ClosedTournament {
    /// `pairs[i][j]` is player i's expectation against j; `None` on the diagonal.
    pub pairs: Vec<Vec<Option<AffineExpectation>>>,
    pub totals: Vec<AffineExpectation>,
}

pub fn tournament_closed_form(players: &[Strategy]) -> Result<ClosedTournament, DetError> {
    if players.len() < 2 {
        return Err(DetError::TooFewPlayers);
    }
    let m = players.len();
    let mut pairs: Vec<Vec<Option<AffineExpectation>>> = vec![vec![None; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = pair_closed_form(&players[i], &players[j])?;
            pairs[i][j] = Some(a);
            pairs[j][i] = Some(b);
        }
    }
    let totals = pairs
        .iter()
        .map(|row| {
            let mut it = row.iter().flatten();
            let first = it.next().expect("at least one opponent").clone();
            it.fold(first, |acc, e| acc.combine(e))
        })
        .collect();
    Ok(ClosedTournament { pairs, totals })
}

#[derive(Clone, Debug)]
pub struct TournamentResult {
    pub pair_expectations: Vec<Vec<Option<LinearForm>>>,
    pub totals: Vec<LinearForm>,
    /// Present when every total reduces to a number.
    pub ranking: Option<Vec<RankGroup>>,
}

pub fn tournament(players: &[Strategy], payoffs: &Payoffs, n: &GrossScalar) -> Result<TournamentResult, DetError> {
    payoffs.check_fundamental_law()?;
    let count = RoundCount::new(n)?;
    let closed = tournament_closed_form(players)?;
    let pair_expectations = closed
        .pairs
        .iter()
        .map(|row| row.iter().map(|e| e.as_ref().map(|e| e.eval(&count).substitute(payoffs))).collect())
        .collect();
    let totals: Vec<LinearForm> = closed.totals.iter().map(|e| e.eval(&count).substitute(payoffs)).collect();
    let values: Option<Vec<GrossScalar>> = totals.iter().map(LinearForm::as_scalar).collect();
    let ranking = values.map(|v| rank(&v));
    Ok(TournamentResult { pair_expectations, totals, ranking })
}

/// Open interval of rewards `R` for which the always-defector beats the
/// trigger player after ① rounds, with its midpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewardInterval {
    pub interval: OpenInterval,
    pub midpoint: GrossScalar,
}

pub fn existence_interval_r(t: &GrossScalar, p: &GrossScalar, s: &GrossScalar) -> Result<RewardInterval, DetError> {
    if !(t > p && p > s) {
        return Err(PayoffError::FundamentalLaw(format!("need T > P > S, got T = {t}, P = {p}, S = {s}")).into());
    }
    let spread = &(&(t + t) - p) - s;
    if !spread.is_positive() {
        return Err(DetError::EmptyInterval(format!("2T - P - S = {spread}")));
    }
    let width = &spread * &GrossScalar::grossone_pow(rational::int(-1));
    let interval = OpenInterval::new(p.clone(), p + &width);
    let midpoint = interval.midpoint();
    Ok(RewardInterval { interval, midpoint })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> GrossScalar {
        text.parse().unwrap()
    }

    fn sym(x: PayoffSymbol) -> LinearForm {
        LinearForm::symbol(x)
    }

    #[test]
    fn defector_against_trigger() {
        let trace = play_pair(&Strategy::always_defect(), &Strategy::trigger()).unwrap();
        assert_eq!(trace.transient, vec![State::DC]);
        assert_eq!(trace.cycle, vec![State::DD]);
    }

    #[test]
    fn tft_mirror_match_stays_cooperative() {
        let tft = Strategy::tit_for_tat();
        let trace = play_pair(&tft, &tft).unwrap();
        assert!(trace.transient.is_empty());
        assert_eq!(trace.cycle, vec![State::CC]);
        // 10-round brute force
        for t in 0..10 {
            assert_eq!(trace.state_at(t), State::CC);
        }
        let du = play_pair(&Strategy::always_defect(), &Strategy::always_defect()).unwrap();
        assert_eq!((du.transient.len(), du.cycle.clone()), (0, vec![State::DD]));
    }

    #[test]
    fn rejects_stochastic_strategies() {
        let noisy = Strategy::parse(&["0.5", "1", "0", "1", "0"]).unwrap();
        assert!(matches!(play_pair(&noisy, &Strategy::trigger()), Err(DetError::NonDeterministicStrategy(_))));
    }

    #[test]
    fn classic_pair_forms() {
        let (du, trig) = pair_closed_form(&Strategy::always_defect(), &Strategy::trigger()).unwrap();
        assert_eq!(du.describe(0), "T + (n - 1)P");
        assert_eq!(trig.describe(0), "(n - 1)P + S");
        let (trig, tft) = pair_closed_form(&Strategy::trigger(), &Strategy::tit_for_tat()).unwrap();
        assert_eq!(trig.describe(0), "nR");
        assert_eq!(tft.describe(0), "nR");
    }

    #[test]
    fn alternating_cycle_at_grossone() {
        let tft = Strategy::tit_for_tat();
        let stft = Strategy::suspicious_tit_for_tat();
        let trace = play_pair(&tft, &stft).unwrap();
        assert!(trace.transient.is_empty());
        assert_eq!(trace.cycle, vec![State::CD, State::DC]);
        let e = pair_expectation(&tft, &stft, &s("g")).unwrap();
        let expected = (&sym(PayoffSymbol::S) + &sym(PayoffSymbol::T)).scale(&s("g/2"));
        assert_eq!(e, expected);
        // 1000 simulated rounds give (1000/2)(S+T)
        let e1000 = pair_expectation(&tft, &stft, &s("1000")).unwrap();
        assert_eq!(e1000, (&sym(PayoffSymbol::S) + &sym(PayoffSymbol::T)).scale(&s("500")));
        // odd counts pick up the extra CD round
        let odd = pair_expectation(&tft, &stft, &s("g+1")).unwrap();
        assert_eq!(odd, &expected + &sym(PayoffSymbol::S));
    }

    #[test]
    fn classic_trio_ranking() {
        let players = [Strategy::always_defect(), Strategy::trigger(), Strategy::tit_for_tat()];
        let payoffs = Payoffs::concrete(s("10"), s("4+8.5g^-1"), s("4"), s("-1"));
        let res = tournament(&players, &payoffs, &s("g")).unwrap();
        let ranking = res.ranking.unwrap();
        assert_eq!(ranking[0].players, vec![0]);
        assert_eq!(ranking[0].value, s("8g+12"));
        assert_eq!(ranking[1].players, vec![1, 2]);
        assert_eq!(ranking[1].value, s("8g+3.5"));
    }

    #[test]
    fn identical_players_tie() {
        let players = [Strategy::tit_for_tat(), Strategy::tit_for_tat()];
        let payoffs = Payoffs::concrete(s("5"), s("3"), s("1"), s("0"));
        let res = tournament(&players, &payoffs, &s("7")).unwrap();
        let ranking = res.ranking.unwrap();
        assert_eq!(ranking.len(), 1);
        assert!(ranking[0].is_tie());
        assert!(matches!(tournament(&players[..1], &payoffs, &s("7")), Err(DetError::TooFewPlayers)));
    }

    #[test]
    fn round_count_validation() {
        assert!(RoundCount::new(&s("0")).is_err());
        assert!(RoundCount::new(&s("1.5")).is_err());
        assert!(RoundCount::new(&s("g^-1")).is_err());
        assert!(RoundCount::new(&s("g^1/2")).is_err());
        assert!(RoundCount::new(&s("1/(g+1)")).is_err());
        let half = RoundCount::new(&s("g/2-3")).unwrap();
        assert!(half.is_infinite());
        assert_eq!(half.residue(0, 4), 1);
        assert_eq!(RoundCount::new(&s("12")).unwrap().as_finite(), Some(12));
    }

    #[test]
    fn reward_interval() {
        let iv = existence_interval_r(&s("10"), &s("4"), &s("-1")).unwrap();
        assert_eq!(iv.interval, OpenInterval::new(s("4"), s("4+17g^-1")));
        assert_eq!(iv.midpoint, s("4+8.5g^-1"));
        assert_eq!(iv.interval.magnitude(), Magnitude::Infinitesimal);
        let sym = existence_interval_r(&s("1"), &s("0"), &s("-1")).unwrap();
        assert_eq!(sym.interval.upper, s("3g^-1"));
        assert!(matches!(existence_interval_r(&s("1"), &s("2"), &s("0")), Err(DetError::Payoff(_))));
    }
}
